use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("points are not collinear (defect {defect:.3e} exceeds tolerance {tol:.3e})")]
    NonCollinear { defect: f64, tol: f64 },

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("point at infinity has no affine-chart image")]
    PointAtInfinity,

    #[error("coincident points")]
    CoincidentPoints,

    #[error("point not interior to the domain")]
    NotInterior,

    #[error("pencil pole lies inside the domain")]
    PoleInsideDomain,

    #[error("sample point fell outside the domain")]
    SampleOutsideDomain,

    #[error("domain has {found} extreme points, at least {needed} required")]
    NotEnoughExtremePoints { found: usize, needed: usize },

    #[error("degenerate quadrilateral: {0}")]
    DegenerateQuadrilateral(String),

    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),

    #[error("barycentric point on or outside the triangle boundary")]
    BoundaryPoint,

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
