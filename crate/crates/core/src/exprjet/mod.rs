//! Expressions, truncated Taylor jets and immersions built from them.

mod expr;
mod immersion;
mod jet;
mod parse;

pub use expr::{BinOp, DomainError, Expr, Func};
pub use immersion::{immersion_jet, jet3, Immersion, ImmersionForm, ImmersionJet, Jet3, RANK_TOL};
pub use jet::{Jet, Scalar, MAX_ORDER};
pub use parse::{parse, parse_with, ParseError, Variables};
