pub mod diagnostic;
pub mod engine;
pub mod lang;
pub mod model;
pub mod oracle;
pub mod scalar;
pub mod semantics;
pub mod strategy;
pub mod zone;

/// Clock values and constants throughout the model and engine.
pub type Time = i64;
pub type Zone = zone::Dbm<Time>;
pub type TimeInterval = zone::Interval<Time>;
