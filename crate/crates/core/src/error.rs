use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("no valid expansion direction found after {0} retries")]
    DegenerateDirection(usize),
    #[error("generating function is not canonicalized under the given direction")]
    NotCanonical,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("cone is not unimodular (|det| = {0})")]
    NotUnimodular(String),
    #[error("denominator {b:?} of term {term} maps to zero")]
    ZeroDenominatorImage { term: usize, b: Vec<String> },
    #[error("coefficient {coeff} at {point:?} is not 0 or 1")]
    NotZeroOne { point: Vec<String>, coeff: String },
    #[error("point {0:?} lies outside the box")]
    OutsideBox(Vec<String>),
    #[error("specialization fails at {x:?}: witnesses {w1:?} and {w2:?}")]
    NotUnique { x: Vec<String>, w1: Vec<String>, w2: Vec<String> },
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("numeric overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
