use thiserror::Error;

use crate::rational::Q;

/// Every domain failure the library reports. The variant name is the
/// stable error name surfaced by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ParameterOutOfRange: {0}")]
    ParameterOutOfRange(String),
    #[error("IsotropicCoroot: coroot of an isotropic vector is undefined")]
    IsotropicCoroot,
    #[error("CriticalLevel: k = {0} equals -h^vee")]
    CriticalLevel(Q),
    #[error("CharacterizationMismatch: {0}")]
    CharacterizationMismatch(String),
    #[error("IndexOutOfSet: {0}")]
    IndexOutOfSet(String),
    #[error("NonDominant: {0}")]
    NonDominant(String),
    #[error("PreconditionViolated: {0}")]
    PreconditionViolated(String),
    #[error("UnsupportedD21a: massless characters of D(2,1;a) are only available for nu = 0")]
    UnsupportedD21a,
    #[error("UnsupportedFamily: {0}")]
    UnsupportedFamily(String),
    #[error("NoRationalRoot: l(h) = {0} has no rational solution")]
    NoRationalRoot(Q),
    #[error("WindowTooSmall: {0}")]
    WindowTooSmall(String),
    #[error("IndexOutOfRange: {0}")]
    IndexOutOfRange(String),
    #[error("TruncationIncomplete: orbit enumeration hit the cap of {0} elements")]
    TruncationIncomplete(usize),
    #[error("InvalidWeight: {0}")]
    InvalidWeight(String),
}

impl Error {
    /// The variant name, e.g. `CriticalLevel`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ParameterOutOfRange(_) => "ParameterOutOfRange",
            Error::IsotropicCoroot => "IsotropicCoroot",
            Error::CriticalLevel(_) => "CriticalLevel",
            Error::CharacterizationMismatch(_) => "CharacterizationMismatch",
            Error::IndexOutOfSet(_) => "IndexOutOfSet",
            Error::NonDominant(_) => "NonDominant",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::UnsupportedD21a => "UnsupportedD21a",
            Error::UnsupportedFamily(_) => "UnsupportedFamily",
            Error::NoRationalRoot(_) => "NoRationalRoot",
            Error::WindowTooSmall(_) => "WindowTooSmall",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::TruncationIncomplete(_) => "TruncationIncomplete",
            Error::InvalidWeight(_) => "InvalidWeight",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
