use crate::diagnostic::{Diagnostic, DiagnosticKind, Span};
use crate::model::{AgentSpec, ConstraintSpec, EdgeSpec, LocationSpec, Network, Relation};
use crate::zone::{Interval, IntervalError};
use crate::{Time, TimeInterval};

use super::lexer::{tokenize, Cursor, Tok};
use super::property::{Mode, Quantifier, StateFormula, StctlProperty, TemporalObjective, TemporalOp};

/// Parses and validates a model. Errors come back as a list of diagnostics,
/// each with a span into `text`.
pub fn parse_model(text: &str) -> Result<Network, Vec<Diagnostic>> {
    let toks = tokenize(text).map_err(|d| vec![d])?;
    let mut cur = Cursor::new(&toks);
    let mut agents = Vec::new();
    loop {
        agents.push(agent_decl(&mut cur).map_err(|d| vec![d])?);
        if *cur.peek() == Tok::Eof {
            break;
        }
    }
    Network::from_specs(agents)
}

fn agent_decl(cur: &mut Cursor) -> Result<AgentSpec, Diagnostic> {
    cur.keyword("agent")?;
    let (name, span) = cur.ident("an agent name")?;
    cur.expect(Tok::LBrace)?;
    let mut clocks = Vec::new();
    if cur.is_keyword("clock") {
        cur.bump();
        clocks = ident_list(cur, "a clock name")?.into_iter().map(|(n, _)| n).collect();
        cur.expect(Tok::Semi)?;
    }
    cur.keyword("init")?;
    let (initial, _) = cur.ident("an initial location")?;
    cur.expect(Tok::Semi)?;
    let mut locations = Vec::new();
    while cur.is_keyword("loc") {
        locations.push(loc_decl(cur)?);
    }
    if locations.is_empty() {
        return Err(cur.error("`loc`"));
    }
    let mut edges = Vec::new();
    while cur.is_keyword("edge") {
        edges.push(edge_decl(cur)?);
    }
    if *cur.peek() != Tok::RBrace {
        return Err(cur.error("`edge` or `}`"));
    }
    cur.bump();
    Ok(AgentSpec {
        name,
        clocks,
        initial,
        locations,
        edges,
        span: Some(span),
    })
}

fn loc_decl(cur: &mut Cursor) -> Result<LocationSpec, Diagnostic> {
    cur.keyword("loc")?;
    let (name, span) = cur.ident("a location name")?;
    cur.expect(Tok::LBrace)?;
    let mut invariant = Vec::new();
    let mut labels = Vec::new();
    if cur.is_keyword("invariant") {
        cur.bump();
        invariant = guard(cur)?;
        cur.expect(Tok::Semi)?;
    }
    if cur.is_keyword("labels") {
        cur.bump();
        labels = ident_list(cur, "a label")?.into_iter().map(|(n, _)| n).collect();
        cur.expect(Tok::Semi)?;
    }
    if *cur.peek() != Tok::RBrace {
        return Err(cur.error("`invariant`, `labels` or `}`"));
    }
    cur.bump();
    Ok(LocationSpec {
        name,
        invariant,
        labels,
        span: Some(span),
    })
}

fn edge_decl(cur: &mut Cursor) -> Result<EdgeSpec, Diagnostic> {
    let start = cur.keyword("edge")?;
    let (source, _) = cur.ident("a source location")?;
    cur.expect(Tok::Arrow)?;
    let (target, _) = cur.ident("a target location")?;
    cur.keyword("on")?;
    let (action, _) = cur.ident("an action name")?;
    let mut guard_atoms = Vec::new();
    let mut resets = Vec::new();
    if cur.is_keyword("when") {
        cur.bump();
        guard_atoms = guard(cur)?;
    }
    if cur.is_keyword("reset") {
        cur.bump();
        cur.expect(Tok::LBrace)?;
        resets = ident_list(cur, "a clock name")?.into_iter().map(|(n, _)| n).collect();
        cur.expect(Tok::RBrace)?;
    }
    if *cur.peek() != Tok::Semi {
        return Err(cur.error("`when`, `reset` or `;`"));
    }
    let end = cur.bump().span;
    Ok(EdgeSpec {
        source,
        target,
        action,
        guard: guard_atoms,
        resets,
        span: Some(join(start, end)),
    })
}

fn join(a: Span, b: Span) -> Span {
    Span { end: b.end, ..a }
}

fn ident_list(cur: &mut Cursor, what: &str) -> Result<Vec<(String, Span)>, Diagnostic> {
    let mut out = vec![cur.ident(what)?];
    while *cur.peek() == Tok::Comma {
        cur.bump();
        out.push(cur.ident(what)?);
    }
    Ok(out)
}

fn guard(cur: &mut Cursor) -> Result<Vec<ConstraintSpec>, Diagnostic> {
    let mut out = vec![atom(cur)?];
    while *cur.peek() == Tok::Amp {
        cur.bump();
        out.push(atom(cur)?);
    }
    Ok(out)
}

fn atom(cur: &mut Cursor) -> Result<ConstraintSpec, Diagnostic> {
    let (clock, span) = cur.ident("a clock name")?;
    let relation = match cur.peek() {
        Tok::Lt => Relation::Lt,
        Tok::Le => Relation::Le,
        Tok::Eq => Relation::Eq,
        Tok::Ge => Relation::Ge,
        Tok::Gt => Relation::Gt,
        _ => return Err(cur.error("a comparison operator")),
    };
    cur.bump();
    let bound = cur.nat()?;
    Ok(ConstraintSpec {
        clock,
        relation,
        bound,
        span: Some(join(span, cur.prev_span())),
    })
}

/// Parses a property against an already validated network.
pub fn parse_property(text: &str, n: &Network) -> Result<StctlProperty, Vec<Diagnostic>> {
    let toks = tokenize(text).map_err(|d| vec![d])?;
    let mut cur = Cursor::new(&toks);
    let mut p = PropParser { cur: &mut cur, n, errors: Vec::new() };
    let result = p.property();
    let errors = std::mem::take(&mut p.errors);
    match result {
        Err(d) => Err(vec![d]),
        Ok(_) if !errors.is_empty() => Err(errors),
        Ok(prop) => Ok(prop),
    }
}

struct PropParser<'c, 't, 'n> {
    cur: &'c mut Cursor<'t>,
    n: &'n Network,
    /// Resolution errors; parsing continues past them.
    errors: Vec<Diagnostic>,
}

impl PropParser<'_, '_, '_> {
    fn nested(&self) -> Diagnostic {
        Diagnostic::error(DiagnosticKind::NestedStrategic, "nested strategic operators unsupported")
            .with_span(Some(self.cur.span()))
    }

    fn property(&mut self) -> Result<StctlProperty, Diagnostic> {
        let mode = match self.cur.peek() {
            Tok::Directive(d) if d == "check" => Mode::Check,
            Tok::Directive(d) if d == "synth" => Mode::SynthAll,
            _ => return Err(self.cur.error("`#check` or `#synth`")),
        };
        self.cur.bump();
        self.cur.expect(Tok::LtLt)?;
        let mut coalition = std::collections::BTreeSet::new();
        for (name, span) in ident_list(self.cur, "an agent name")? {
            match self.n.find_agent(&name) {
                Some(a) => {
                    coalition.insert(a);
                }
                None => self.errors.push(
                    Diagnostic::error(DiagnosticKind::UnknownAgent, format!("unknown agent `{}`", name))
                        .with_span(Some(span)),
                ),
            }
        }
        self.cur.expect(Tok::GtGt)?;
        if *self.cur.peek() == Tok::LtLt {
            return Err(self.nested());
        }
        let objective = self.objective()?;
        if *self.cur.peek() != Tok::Eof {
            return Err(self.cur.error("end of input"));
        }
        Ok(StctlProperty {
            mode,
            coalition,
            objective,
        })
    }

    fn objective(&mut self) -> Result<TemporalObjective, Diagnostic> {
        let quantifier = match self.cur.peek() {
            Tok::Ident(q) if q == "A" => Quantifier::Forall,
            Tok::Ident(q) if q == "E" => Quantifier::Exists,
            _ => return Err(self.cur.error("a path quantifier `A` or `E`")),
        };
        self.cur.bump();
        let opens_interval = matches!(self.cur.peek_at(1), Tok::LBracket | Tok::LParen);
        if opens_interval && self.cur.is_keyword("F") {
            self.cur.bump();
            let interval = self.interval()?;
            let right = self.formula()?;
            return Ok(TemporalObjective::eventually(quantifier, interval, right));
        }
        if opens_interval && self.cur.is_keyword("G") {
            self.cur.bump();
            let interval = self.interval()?;
            let right = self.formula()?;
            return Ok(TemporalObjective::globally(quantifier, interval, right));
        }
        let left = self.formula()?;
        let op = if self.cur.is_keyword("U") {
            TemporalOp::Until
        } else if self.cur.is_keyword("R") {
            TemporalOp::Release
        } else {
            return Err(self.cur.error("a temporal operator `U` or `R`"));
        };
        self.cur.bump();
        let interval = self.interval()?;
        let right = self.formula()?;
        Ok(TemporalObjective {
            quantifier,
            op,
            interval,
            left,
            right,
        })
    }

    fn interval(&mut self) -> Result<TimeInterval, Diagnostic> {
        let start = self.cur.span();
        let lower_strict = match self.cur.peek() {
            Tok::LBracket => false,
            Tok::LParen => true,
            _ => return Err(self.cur.error("`[` or `(`")),
        };
        self.cur.bump();
        let lower = self.cur.nat()?;
        self.cur.expect(Tok::Semi)?;
        let upper = if self.cur.is_keyword("inf") {
            self.cur.bump();
            None
        } else {
            Some(self.cur.nat()?)
        };
        let upper_strict = match self.cur.peek() {
            Tok::RBracket => false,
            Tok::RParen => true,
            _ => return Err(self.cur.error("`]` or `)`")),
        };
        self.cur.bump();
        let span = join(start, self.cur.prev_span());
        let malformed = |msg: String| {
            Diagnostic::error(DiagnosticKind::MalformedInterval, msg).with_span(Some(span))
        };
        if upper.is_none() && !upper_strict {
            return Err(malformed("an infinite upper bound must be open: write `inf)`".into()));
        }
        Interval::new(lower as Time, lower_strict, upper.map(Time::from), upper_strict).map_err(|e| match e {
            IntervalError::Inverted => malformed(format!(
                "malformed interval: lower bound {} exceeds upper bound {}",
                lower,
                upper.unwrap_or(0)
            )),
            other => malformed(format!("malformed interval: {}", other)),
        })
    }

    fn formula(&mut self) -> Result<StateFormula, Diagnostic> {
        let mut f = self.conjunction()?;
        while *self.cur.peek() == Tok::Bar {
            self.cur.bump();
            f = StateFormula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<StateFormula, Diagnostic> {
        let mut f = self.unary()?;
        while *self.cur.peek() == Tok::Amp {
            self.cur.bump();
            f = StateFormula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<StateFormula, Diagnostic> {
        match self.cur.peek().clone() {
            Tok::Bang => {
                self.cur.bump();
                Ok(StateFormula::negate(self.unary()?))
            }
            Tok::LParen => {
                self.cur.bump();
                let f = self.formula()?;
                self.cur.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::LtLt => Err(self.nested()),
            Tok::Ident(name) => {
                let span = self.cur.bump().span;
                match name.as_str() {
                    "true" => return Ok(StateFormula::True),
                    "false" => return Ok(StateFormula::False),
                    _ => {}
                }
                if *self.cur.peek() == Tok::Dot {
                    self.cur.bump();
                    let (loc, loc_span) = self.cur.ident("a location name")?;
                    return Ok(self.resolve_location(&name, span, &loc, loc_span));
                }
                if !self.n.propositions.contains_key(&name) {
                    self.errors.push(
                        Diagnostic::error(
                            DiagnosticKind::UnknownProposition,
                            format!("unknown proposition `{}`", name),
                        )
                        .with_span(Some(span)),
                    );
                }
                Ok(StateFormula::Prop(name))
            }
            _ => Err(self.cur.error("a state formula")),
        }
    }

    fn resolve_location(&mut self, agent: &str, span: Span, loc: &str, loc_span: Span) -> StateFormula {
        let Some(a) = self.n.find_agent(agent) else {
            self.errors.push(
                Diagnostic::error(DiagnosticKind::UnknownAgent, format!("unknown agent `{}`", agent))
                    .with_span(Some(span)),
            );
            return StateFormula::False;
        };
        match self.n.agent(a).find_location(loc) {
            Some(l) => StateFormula::At(a, l),
            None => {
                self.errors.push(
                    Diagnostic::error(
                        DiagnosticKind::UnknownLocation,
                        format!("agent `{}` has no location `{}`", agent, loc),
                    )
                    .with_span(Some(loc_span)),
                );
                StateFormula::False
            }
        }
    }
}
