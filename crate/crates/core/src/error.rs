use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero quaternion has no inverse")]
    ZeroInverse,

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular: estimated rank {rank} of {size}")]
    Singular { rank: usize, size: usize },

    #[error("polynomial degree {found} does not match system order {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("root #{index} is similar to an earlier root but not equal to it")]
    DuplicateClass { index: usize },

    #[error("eigenvalue iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("eigenvalue {re}{im:+}i of the complex adjoint has no conjugate partner")]
    UnpairedEigenvalue { re: f64, im: f64 },

    #[error("pair is not controllable: controllability rank {rank} < {order}")]
    Uncontrollable { rank: usize, order: usize },

    #[error(
        "Ackermann formula is valid only for real target coefficients; \
         use coefficient matching or allow nonreal coefficients explicitly"
    )]
    NonRealTarget,

    #[error("state became non-finite at step {step}")]
    Divergence { step: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
