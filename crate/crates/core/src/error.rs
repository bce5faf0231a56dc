use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("column {position}: index {index} out of range [1,{rows}]")]
    ColumnOutOfRange {
        position: usize,
        index: usize,
        rows: usize,
    },

    #[error("logical matrix has {actual} columns, expected {expected}")]
    ColumnCount { expected: usize, actual: usize },

    #[error("expected {expected} truth tables, found {actual}")]
    TableCount { expected: usize, actual: usize },

    #[error("truth table {table} has length {actual}, expected {expected}")]
    TableLength {
        table: usize,
        expected: usize,
        actual: usize,
    },

    #[error("{what} index {index} out of range [1,{max}]")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error("unsupported variable count {what}={value} (allowed {min}..={max})")]
    VariableCount {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("Boolean power exponent must be at least 1")]
    ZeroExponent,

    #[error("residue modulus must be positive")]
    ZeroModulus,

    #[error("order {order} exceeds the oracle cap of {cap}")]
    OracleCap { order: usize, cap: usize },

    #[error("length set must be a nonempty list of positive integers")]
    InvalidLengths,
}
