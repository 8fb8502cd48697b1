use thiserror::Error;

/// Failures reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("series truncated too shallowly (need order {needed}, have {available})")]
    TruncationTooShallow { needed: i32, available: i32 },
    #[error("non-finite sample in quadrature")]
    NonFiniteSample,
    #[error("quadrature did not converge with {nodes} nodes")]
    QuadratureFailure { nodes: usize },
    #[error("degenerate discriminant")]
    DegenerateDiscriminant,
    #[error("invariant A vanishes")]
    AZero,
    #[error("root at zero")]
    RootAtZero,
    #[error("coincident shifts c1 = c2")]
    CoincidentShifts,
    #[error("zero scale")]
    ZeroScale,
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("Riemann bilinear relation violated (residual {0:e})")]
    BilinearRelationViolated(f64),
    #[error("period matrix not in the Siegel upper half space")]
    NotInSiegelSpace,
    #[error("theta constant in a denominator vanishes")]
    DenominatorVanishes,
    #[error("could not resolve theta characteristics: {0}")]
    CharacteristicResolutionFailed(String),
    #[error("integration path passes through a branch point")]
    PathThroughBranchPoint,
    #[error("point lies on the theta divisor")]
    OnThetaDivisor,
    #[error("Weierstrass point: formula degenerates")]
    WeierstrassPointLimit,
    #[error("coincident points")]
    CoincidentPoints,
    #[error("coincident x-coordinates")]
    CoincidentX,
    #[error("ramification point is not simple")]
    NonSimpleRamification,
    #[error("sextic leading coefficient vanishes")]
    LeadingCoefficientZero,
    #[error("log branch point at a ramification point (h(r) = 0)")]
    LogBranchPointAtRamification,
    #[error("ramification point at X = 0")]
    RamificationAtXZero,
    #[error("evaluation point at a ramification point")]
    PointAtRamification,
    #[error("singular matrix")]
    SingularDenominator,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
