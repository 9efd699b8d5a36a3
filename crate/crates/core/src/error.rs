use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("series truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },

    #[error("series constant term must be {expected} for {operation}")]
    ConstantTerm {
        operation: &'static str,
        expected: &'static str,
    },

    #[error("truncation order too small: need x_order >= {need_x} and y_order >= {need_y}, have ({have_x}, {have_y})")]
    TruncationTooSmall {
        need_x: usize,
        need_y: usize,
        have_x: usize,
        have_y: usize,
    },

    #[error("expected an integer but got {0}")]
    NonInteger(String),

    #[error("enumeration needs {required} permutations but the budget is {budget} (raise it with --budget)")]
    BudgetExceeded { required: String, budget: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("expansion unstable: coefficient of t^{power} changed from {before} to {after} when the offset budget was raised")]
    Unstable {
        power: usize,
        before: String,
        after: String,
    },

    #[error("gamma ratio does not cancel: {0}")]
    NonCancelling(String),

    #[error("m = {m} is outside the asymptotic regime for order {order} (need m > order)")]
    Regime { m: u64, order: usize },

    #[error("m = {m} is not divisible by the family index {n}")]
    Divisibility { m: u64, n: u32 },

    #[error("lost series precision: have terms through t^{have}, need t^{need}")]
    Precision { have: i64, need: i64 },

    #[error("malformed reference data: {0}")]
    Reference(String),
}
