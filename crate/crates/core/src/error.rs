use thiserror::Error;

use crate::profile::ParseError;

/// Which lead of a profile an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => f.write_str("left"),
            Side::Right => f.write_str("right"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} outside its domain: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("no states at energy {energy}: both sides are inside their mass gaps")]
    NoStates { energy: f64 },

    #[error("a forbidden mode has no spinor")]
    ForbiddenMode,

    #[error("{side} lead is evanescent at energy {energy}")]
    EvanescentLead { side: Side, energy: f64 },

    #[error("left lead carries no incident current at energy {energy} (band edge)")]
    ZeroIncidentFlux { energy: f64 },

    #[error("region {region} sits exactly on a band edge; its two modes coincide")]
    DegenerateMode { region: usize },

    #[error("segment {segment} exponent {exponent:.3} exceeds the stability cap {cap}")]
    Overflow {
        segment: usize,
        exponent: f64,
        cap: f64,
    },

    #[error("matching system is singular")]
    Singular,

    #[error("quadrature did not converge: estimate {estimate}, error estimate {error}")]
    Quadrature { estimate: f64, error: f64 },

    #[error("no root of u*u' - 1 in the Klein band (largest u*u' found: {max_product})")]
    NoRoot { max_product: f64 },

    #[error("momentum {momentum} is not on the grid of box length {length}")]
    OffGrid { momentum: f64, length: f64 },

    #[error("momenta {k1} and {k2} are distinct but have equal energy")]
    EqualEnergies { k1: f64, k2: f64 },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            what,
            detail: detail.into(),
        }
    }

    /// True for failures of the numerics rather than of the physics or input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Overflow { .. }
                | Error::Singular
                | Error::Quadrature { .. }
                | Error::DegenerateMode { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
