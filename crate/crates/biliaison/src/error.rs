use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element is not a unit")]
    NonUnit,
    #[error("operands live over different base rings")]
    MixedBase,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resolution does not lift over the dual numbers (input not flat)")]
    NotLiftable,
    #[error("module is not of finite length")]
    NotFiniteLength,
    #[error("degree {0} lies outside the certified window")]
    DegreeBoundExceeded(i32),
    #[error("ideal is not saturated")]
    NotSaturated,
    #[error("wrong dimension: the scheme has projective dimension {0}, expected 1")]
    WrongDimension(i32),
    #[error("not locally Cohen-Macaulay of pure dimension one (Ext^3 has positive dimension)")]
    NotPureDimensionOrNotLCM,
    #[error("family is not flat over the dual numbers")]
    NotFlat,
    #[error("internal oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error("forms are not a regular sequence")]
    NotRegularSequence,
    #[error("polynomial not contained in the ideal")]
    NotContained,
    #[error("residual scheme is empty")]
    ResidualEmpty,
    #[error("surface equation vanishes on the closed fiber")]
    SurfaceNotFlat,
    #[error("forms share a common factor")]
    NotCoprime,
    #[error("curves are not biliaison equivalent")]
    NotEquivalent,
    #[error("map is not a pseudo-isomorphism")]
    NotPsi,
    #[error("no lift through the free cover; last degree with H^1(E(n)) != 0 is {n0}, offending degrees {degrees:?}")]
    NoLift { n0: i32, degrees: Vec<i32> },
    #[error("undecided after exhausting random trials: {0}")]
    Undecided(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
