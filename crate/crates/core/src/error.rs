use thiserror::Error;

use crate::exact::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("variable {0} is not in the polynomial's variable list")]
    UnknownVariable(Var),
    #[error("no value assigned to variable {0}")]
    MissingAssignment(Var),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("order parameter m must be at least 1 (got {0})")]
    InvalidOrder(i64),
    #[error("dimension n = {0} is too small; curvature constants need n >= 2")]
    DimensionTooSmall(i64),
    #[error("S^0 factor unsupported; use sphere_specialize")]
    ZeroSphere,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("inconsistent eigenvalue propagation at mode ({j}, {f}): {existing} vs {proposed}")]
    InconsistentPropagation {
        j: i64,
        f: i64,
        existing: String,
        proposed: String,
    },
    #[error("polynomial has odd power {power} of {var}; expected an even polynomial")]
    OddPower { var: Var, power: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
