use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value is rational; only irrational quadratic surds are supported")]
    RationalValue,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicands differ: sqrt({0}) vs sqrt({1})")]
    RadicandMismatch(String, String),
    #[error("matrix determinant is {0}, expected +1 or -1")]
    NotUnimodular(String),

    #[error("invalid period: {0}")]
    InvalidPeriod(String),
    #[error("expansion of {0} is not purely periodic")]
    NotPurelyPeriodic(String),
    #[error("{0} and {1} are not equivalent")]
    NotEquivalent(String, String),

    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("angle arms are zero or parallel")]
    DegenerateAngle,
    #[error("arms do not form lattice bases on opposite sides of the vertex line")]
    NotUnimodularArms,
    #[error("sprout reaches the origin")]
    OriginSprout,
    #[error("bad seed: {0}")]
    BadSeed(String),
    #[error("sails are not adjacent: {0}")]
    NotAdjacent(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("coefficient triple did not recur within {0} substitutions")]
    NonConvergence(usize),
    #[error("matrix is not hyperbolic: {0}")]
    NotHyperbolic(String),

    #[error("center {center} cannot witness flag {flag}")]
    IncompatibleCenter { flag: String, center: String },
    #[error("shape violation: {0}")]
    ShapeViolation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An internal invariant failed. Carries the falsifying instance.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors that indicate a bug or a falsified identity rather
    /// than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::Invariant(_) | Error::ShapeViolation(_) | Error::NonConvergence(_)
        )
    }
}
