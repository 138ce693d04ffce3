use thiserror::Error;

/// Errors raised by the arithmetic substrate and the order pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument outside the domain of the operation (zero polynomial, bad modulus, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("not a perfect square")]
    NotASquare,

    /// `M(x)` has a root in `F_q(T)`; the root is recorded as text.
    #[error("M(x) is reducible over k: root {0}")]
    Reducible(String),

    #[error("constant term of M(x) is not mu * pv^m")]
    BadConstantTerm,

    #[error("M(x) fails the local condition at v: {0}")]
    NotWeilAtV(String),

    #[error("characteristic {0} is not supported (the standard form divides by 2, 3 and 27)")]
    UnsupportedCharacteristic(u32),

    /// A relation that must hold for consistent input did not.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("integral basis congruences have no solution")]
    NoSolution,

    #[error("candidate space has {count} triples, above the bound {bound}")]
    CandidateBound { count: u128, bound: u128 },

    #[error("no candidate order is contained in End(phi)")]
    NoCandidate,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn inconsistent(msg: impl Into<String>) -> Error {
    Error::Inconsistent(msg.into())
}
