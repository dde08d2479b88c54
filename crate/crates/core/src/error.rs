use thiserror::Error;

use crate::exact::Mat;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid lattice: {0}")]
    Lattice(String),

    #[error("glue vector {glue} pairs non-integrally with base vector {base}: {value}")]
    GlueBase {
        glue: usize,
        base: usize,
        value: String,
    },

    #[error("glue vectors {first} and {second} have non-integral pairing {value}")]
    GluePair {
        first: usize,
        second: usize,
        value: String,
    },

    #[error("glue vector {glue} has self-pairing {value}, not in 2Z")]
    GlueEvenness { glue: usize, value: String },

    #[error("rows are not independent: rank {rank} < {rows}")]
    Rank { rank: usize, rows: usize },

    #[error("lattice is not definite: signature ({0}, {1})")]
    Indefinite(usize, usize),

    #[error("matrix does not preserve the Gram form; defect M^T G M - G =\n{defect}")]
    NotIsometry { defect: Mat },

    #[error("isometry order not resolved within cap {0}")]
    OrderCap(u64),

    #[error("group closure exceeded {0} elements")]
    ClosureCap(usize),

    #[error("map is not an involution up to scalar: {0}")]
    NotInvolution(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}
