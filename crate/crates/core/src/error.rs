use thiserror::Error;

use crate::exprjet::{DomainError, ParseError};

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("at parameter point ({}, {}): {source}", point[0], point[1])]
    Domain {
        point: [f64; 2],
        #[source]
        source: DomainError,
    },
    #[error("not an immersion at ({}, {}): coordinate tangents are dependent", point[0], point[1])]
    NotAnImmersion { point: [f64; 2] },
    #[error("induced metric is non-degenerate; the surface is not lightlike here")]
    NotLightlike,
    #[error("induced metric vanishes identically (co-isotropic point); not supported")]
    CoIsotropic,
    #[error("no transversal vector with g(V, xi) away from zero")]
    TransversalNotFound,
    #[error("pinned `{field}` violates `{relation}` (residual {residual:e})")]
    PinViolation {
        field: &'static str,
        relation: String,
        residual: f64,
    },
    #[error("gauge factor must be nonzero")]
    ZeroGauge,
    #[error("jet order exhausted while differentiating {0}")]
    JetOrderExhausted(&'static str),
    #[error("plane coefficients undefined: D2(xi, xi) = {0:e} is not positive")]
    CoefficientUndefined(f64),
    #[error("continuation stalled at step {step}: corrector residual {residual:e}")]
    ContinuationStall { step: i32, residual: f64 },
    #[error("step {0} is too large for the curve tracer")]
    StepTooLarge(f64),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("config: {0}")]
    Config(String),
}
