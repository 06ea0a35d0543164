use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("path enumeration exceeded the dimension bound {0}")]
    NotFiniteDimensional(usize),
    #[error("overlap completion did not converge: {0}")]
    NonConfluent(String),
    #[error("inhomogeneous relation: {0}")]
    InhomogeneousRelation(String),
    #[error("line {line}: {msg} (at `{token}`)")]
    Parse {
        line: usize,
        token: String,
        msg: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("the associated category is not directed")]
    NotDirected,
    #[error("module is not generated in degree 0")]
    NotGeneratedDegreeZero,
    #[error("chain map lifting failed: {0}")]
    LiftFailure(String),
    #[error("algebra is not quadratic")]
    NotQuadratic,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("algebra is not standardly stratified for the given order")]
    NotStratified,
    #[error("a finite field is required for this check")]
    FieldNotFinite,
    #[error("algebra is not quasi-hereditary for the given order")]
    NotQuasiHereditary,
    #[error("module has no standard filtration")]
    NotFiltered,
    #[error("module is not generated in height {0}")]
    NotGeneratedInHeight(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("search space too large: {0}")]
    SearchTooLarge(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
