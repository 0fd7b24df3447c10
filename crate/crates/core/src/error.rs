use std::fmt;

use thiserror::Error;

/// Which group axiom a Cayley table broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Shape,
    Closure,
    Identity,
    Inverse,
    Associativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Shape => "shape",
            Axiom::Closure => "closure",
            Axiom::Identity => "identity",
            Axiom::Inverse => "inverse",
            Axiom::Associativity => "associativity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{kind} axiom violated at witness ({}, {}, {})", witness[0], witness[1], witness[2])]
    AxiomViolation { kind: Axiom, witness: [usize; 3] },

    #[error("unknown group spec `{0}`")]
    UnknownSpec(String),

    #[error("size limit exceeded for {what}: order {order} > cap {cap}")]
    SizeLimit {
        what: String,
        order: usize,
        cap: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("leg count mismatch: {left} vs {right}")]
    LegMismatch { left: usize, right: usize },

    #[error("bad leg specification: {0}")]
    BadLegSpec(String),

    #[error("operation not defined for antilinear operators: {0}")]
    Antilinear(&'static str),

    #[error("element is not in the {algebra} algebra (residual {residual:e})")]
    NotInAlgebra {
        algebra: &'static str,
        residual: f64,
    },

    #[error("identity `{name}` violated at {witness}")]
    IdentityViolation { name: String, witness: String },

    #[error("singular linear system: {0}")]
    SingularSystem(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("unknown computation `{0}`")]
    UnknownWhat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
