use thiserror::Error;

/// Errors produced by graph construction, spectral computation, solvers and
/// classification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph order {n} is too small (need n >= {min})")]
    InvalidOrder { n: u64, min: u64 },

    #[error("{d} is not a proper divisor of {n}")]
    InvalidDivisor { d: u64, n: u64 },

    #[error("connection element {s} is out of range 1..{n}")]
    ElementOutOfRange { s: u64, n: u64 },

    #[error("connection set is not symmetric mod {n}: contains {s} but not {partner}")]
    AsymmetricSet { s: u64, partner: u64, n: u64 },

    #[error("cannot combine graphs of different orders {left} and {right}")]
    IncompatibleOrder { left: u64, right: u64 },

    #[error("connection sets are not disjoint (shared difference {shared})")]
    NonDisjoint { shared: u64 },

    #[error("order {n} is odd; vertices have no antipode")]
    NoAntipode { n: u64 },

    #[error("vertex {v} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: u64, n: u64 },

    #[error("order {n} is unsupported here (need a power of two >= {min})")]
    UnsupportedOrder { n: u64, min: u64 },

    #[error("invalid factorization m = {m}, p = {p}: need even m >= 2 and odd prime p")]
    InvalidFactorization { m: u64, p: u64 },

    #[error("inconsistent product query: factor times {left} and {right} differ")]
    InconsistentQuery { left: f64, right: f64 },

    #[error("invalid scan grid: start {start}, stop {stop}, step {step}")]
    InvalidGrid { start: f64, stop: f64, step: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("graph is not in a family certified for transfer (status {status}); run classify for details")]
    NotCertified { status: String },
}

pub type Result<T> = std::result::Result<T, Error>;
