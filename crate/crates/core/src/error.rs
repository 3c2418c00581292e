// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gram matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("bilinear form is degenerate (determinant 0)")]
    Degenerate,
    #[error("empty lattice")]
    Empty,
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("line {line}: {message} (at `{token}`)")]
    Syntax {
        line: usize,
        token: String,
        message: String,
    },
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero vector has no divisibility")]
    ZeroVector,
    #[error("basis vectors are linearly dependent")]
    Dependent,
    #[error("enumeration budget exceeded ({0} candidates)")]
    BudgetExceeded(u64),
    #[error("lattice is not definite")]
    NotDefinite,
    #[error("rank {0} exceeds the definite isometry bound")]
    RankTooLarge(usize),
    #[error("lattice is odd")]
    OddLattice,
    #[error("invalid finite quadratic form: {0}")]
    InvalidForm(String),
    #[error("glue generator {0} is not in the dual lattice")]
    NotInDual(usize),
    #[error("glue is not isotropic: {0}")]
    NotIsotropic(String),
    #[error("glue mismatch: image of glue generator {0} leaves the target overlattice")]
    GlueMismatch(usize),
    #[error("wrong invariants: {0}")]
    WrongInvariants(String),
    #[error("wrong determinant: expected |det| = {expected}, got {got}")]
    WrongDeterminant { expected: i64, got: String },
    #[error("marked lattice is not projective: NS signature is ({0}, {1})")]
    NotProjective(usize, usize),
    #[error("Mukai vectors live over different NS lattices")]
    MismatchedNSLattice,
    #[error("c1 has odd square {0}")]
    OddSquare(i64),
    #[error("matrix is not an isometry")]
    NotIsometry,
    #[error("isometry has no finite order up to {0}")]
    InfiniteOrderSuspected(u32),
    #[error("isometry is not an involution")]
    NotInvolution,
    #[error("isometry does not preserve the NS sublattice")]
    NSNotPreserved,
    #[error("vector is not in the sublattice")]
    NotInSublattice,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
