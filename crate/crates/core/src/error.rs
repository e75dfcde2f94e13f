use thiserror::Error;

/// Errors raised by the exact and numeric layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in Q(zeta_5)")]
    DivisionByZero,

    #[error("phase e({0}) is not representable in Q(zeta_5): denominator does not divide 10")]
    NotRepresentable(String),

    #[error("constant-power mismatch: (2*pi*i)^{lhs} vs (2*pi*i)^{rhs}")]
    ConstantPowerMismatch { lhs: i32, rhs: i32 },

    #[error("prefactor mismatch cannot be absorbed: {0}")]
    UnabsorbablePrefactor(String),

    #[error("series is not invertible: {0}")]
    NotInvertible(String),

    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),

    #[error("identity `{id}` has no `{variant}` variant")]
    UnknownVariant { id: String, variant: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point outside the upper half plane: {0}")]
    InvalidDomain(String),

    #[error("non-finite sample: {0}")]
    NonFinite(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
