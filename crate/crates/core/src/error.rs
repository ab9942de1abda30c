use thiserror::Error;

use crate::poly::Degree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: Degree, found: Degree },

    #[error("jet bounds disagree: {left} vs {right}")]
    BoundMismatch { left: Degree, right: Degree },

    #[error("jet bound {bound} is below the requested level {level}")]
    InsufficientBound { bound: Degree, level: Degree },

    #[error("map is not a diffeomorphism germ: {0}")]
    NotDiffeomorphism(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// `laplacian^power` of the degree-`degree` component does not vanish.
    #[error("component of degree {degree} is not annihilated by the Laplacian to power {power} (residual {residual})")]
    KernelViolation {
        degree: Degree,
        power: Degree,
        residual: String,
    },

    #[error("component of degree {degree} is not in the span required by the construction")]
    NotInSpan { degree: Degree },

    #[error("leading part is not a nonzero harmonic polynomial of degree {0}")]
    LeadingNotHarmonic(Degree),

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
