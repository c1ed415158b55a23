//! Formula syntax: AST, parser, printer and a seeded random generator.

mod formula;
mod parser;
mod random;

pub use formula::Formula;
pub use parser::{parse, ParseError, MAX_NESTING};
pub use random::{Connectives, RandomFormulas};
