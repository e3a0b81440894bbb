use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter a = {0} is outside the admissible range a >= -1")]
    InvalidParameter(i64),

    #[error("the signature of zero is undefined")]
    ZeroElement,

    #[error("{0} is neither zero nor totally positive")]
    NotTotallyPositive(String),

    #[error("refinement width must be positive")]
    NonPositiveWidth,

    #[error("cannot parse element {0:?}: expected three comma-separated integers x,y,z")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
