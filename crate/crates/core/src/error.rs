use thiserror::Error;

use crate::algebra::JacobiResidual;
use crate::arith::Mat;

#[derive(Debug, Clone, Error)]
pub enum LieError {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operands live over different fields")]
    FieldMismatch,

    #[error("constant polynomial has no irreducibility status")]
    ConstantPolynomial,

    #[error("Jacobi identity fails on {} basis triple(s), first {:?}", .0.len(), .0.first().map(|r| r.triple))]
    JacobiViolation(Vec<JacobiResidual>),

    #[error("index out of range in bracket entry ({i}, {j}) -> {k:?} for dimension {dim}")]
    IndexOutOfRange {
        i: usize,
        j: usize,
        k: Option<usize>,
        dim: usize,
    },

    #[error("bad scalar: {0}")]
    BadScalar(String),

    #[error("not a representation: homomorphism fails on pairs {0:?}")]
    NotARepresentation(Vec<(usize, usize)>),

    #[error("subspace is not an ideal")]
    NotAnIdeal,

    #[error("the Killing-orthogonality radical is only valid in characteristic zero (p = {p})")]
    RadicalUnavailableInPositiveCharacteristic { p: u64, gram: Mat },

    #[error("operation requires characteristic zero, got p = {0}")]
    PositiveCharacteristic(u64),

    #[error("dimension {dim} exceeds the symbolic budget {bound}")]
    DimensionBudgetExceeded { dim: usize, bound: usize },

    #[error("element is not regular (fitting0 dim {fitting0_dim}, rank {rank})")]
    NotRegular { fitting0_dim: usize, rank: usize },

    #[error("quaternion lies in the center")]
    CentralInput,

    #[error("trace {0} is neither 0 nor 1")]
    BadTrace(String),

    #[error("precondition not certified: {0}")]
    PreconditionNotCertified(String),

    #[error("action matrices {0} and {1} do not commute")]
    NonCommutingAction(usize, usize),

    #[error("algebra is not solvable")]
    NotSolvable,

    #[error("structure constant has a denominator divisible by {p}")]
    BadDenominator { p: u64 },

    #[error("enumeration estimate {estimate} exceeds guard {guard}")]
    BudgetGuardExceeded { estimate: u128, guard: u128 },

    #[error("{0} is neither a prime nor infinity")]
    BadPlace(u64),

    #[error("parameter must be nonzero")]
    ZeroParameter,

    #[error("integer too large for this operation: {0}")]
    TooLarge(String),
}

pub type Result<T, E = LieError> = std::result::Result<T, E>;
