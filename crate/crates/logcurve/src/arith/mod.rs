//! Exact arithmetic over the rationals: polynomials, rational functions and
//! 1-forms, Laurent expansions at points of the projective line, residues,
//! partial fractions, and rational root isolation.

pub mod parse;
pub mod partial;
pub mod poly;
pub mod rat;
pub mod ratfunc;
pub mod residue;
pub mod roots;
pub mod series;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("denominator factor {factor} has no rational root")]
    NonRationalPole { factor: String },
    #[error("invalid uniformizer unit: {0}")]
    InvalidUnit(String),
}
