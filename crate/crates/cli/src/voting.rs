use std::collections::BTreeSet;
use std::fmt::Write;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VotingError {
    #[error("at least one voter is required")]
    NoVoters,
    #[error("at least one candidate is required")]
    NoCandidates,
    #[error("coalition member {0} is not a voter")]
    NotAVoter(usize),
    #[error("the coalition is empty")]
    EmptyCoalition,
}

/// Voting model with `v` voters and `c` candidates, plus the property asking
/// the coalition to make voter 1 vote for candidate 1 within 8 time units.
///
/// Voter `V{i}` is started by the environment agent `EC` through the shared
/// action `start_{i}`, then picks a candidate `j` with `vote{j}_{i}` while
/// its clock is at most 8.
pub fn generate_voting(v: usize, c: usize, coalition: &BTreeSet<usize>) -> Result<(String, String), VotingError> {
    if v == 0 {
        return Err(VotingError::NoVoters);
    }
    if c == 0 {
        return Err(VotingError::NoCandidates);
    }
    if coalition.is_empty() {
        return Err(VotingError::EmptyCoalition);
    }
    if let Some(&bad) = coalition.iter().find(|&&i| i == 0 || i > v) {
        return Err(VotingError::NotAVoter(bad));
    }
    let mut model = String::new();
    for i in 1..=v {
        writeln!(model, "agent V{} {{", i).unwrap();
        writeln!(model, "  clock x_{};", i).unwrap();
        writeln!(model, "  init idle;").unwrap();
        writeln!(model, "  loc idle {{ }}").unwrap();
        writeln!(model, "  loc deciding {{ }}").unwrap();
        for j in 1..=c {
            writeln!(model, "  loc voted_{} {{ labels voted_{}_{}; }}", j, i, j).unwrap();
        }
        writeln!(model, "  edge idle -> deciding on start_{} reset {{x_{}}};", i, i).unwrap();
        for j in 1..=c {
            writeln!(model, "  edge deciding -> voted_{} on vote{}_{} when x_{} <= 8;", j, j, i, i).unwrap();
        }
        writeln!(model, "}}").unwrap();
    }
    writeln!(model, "agent EC {{").unwrap();
    writeln!(model, "  init ready;").unwrap();
    writeln!(model, "  loc ready {{ }}").unwrap();
    for i in 1..=v {
        writeln!(model, "  edge ready -> ready on start_{};", i).unwrap();
    }
    writeln!(model, "}}").unwrap();
    let members: Vec<String> = coalition.iter().map(|i| format!("V{}", i)).collect();
    let property = format!("#synth <<{}>> E F[0;8] voted_1_1\n", members.join(", "));
    Ok((model, property))
}
