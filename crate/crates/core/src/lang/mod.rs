//! Text formats for models and properties.

mod lexer;
mod parser;
mod printer;
mod property;

pub use parser::{parse_model, parse_property};
pub use printer::{formula_text, interval_text, objective_text, pretty_print_model, pretty_print_property};
pub use property::{Mode, Quantifier, StateFormula, StctlProperty, TemporalObjective, TemporalOp};
