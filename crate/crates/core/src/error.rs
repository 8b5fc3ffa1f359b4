use thiserror::Error;

/// Errors raised anywhere in the pipeline, from polynomial arithmetic up to
/// certification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial has a repeated root (gcd with its derivative is nontrivial)")]
    NonSquarefree,
    #[error("polynomial {0} does not have all real roots")]
    NotTotallyReal(String),
    #[error("invalid polynomial: {0}")]
    InvalidPoly(String),
    #[error("duplicate or proportional polynomial in set: {0}")]
    DuplicatePoly(String),

    #[error("invalid support: {0}")]
    InvalidSupport(String),
    #[error("intervals overlap or touch near {0}")]
    OverlappingIntervals(f64),
    #[error("gap ({0}, {1}) contains no root of any polynomial in the set")]
    EmptyGap(f64, f64),
    #[error("root {root} of {poly} lies inside the support")]
    RootInsideSupport { poly: String, root: f64 },

    #[error("integrand is not finite at x = {0}")]
    NonFinite(f64),
    #[error("evaluation point {0} is within 1e-9 of a quadrature node")]
    TooCloseToNode(f64),

    #[error("{what}: linear system is singular (condition number {cond:.3e})")]
    SingularSystem { what: String, cond: f64 },
    #[error("W matrix is singular (condition number {0:.3e})")]
    SingularW(f64),

    #[error("a gap holds several roots and no gap polynomial was supplied")]
    MultiRootGapWithoutP,
    #[error("line search stalled after {0} halvings")]
    StalledLineSearch(usize),
    #[error("descent did not converge within {iters} iterations (objective {objective:.3e})")]
    NotConverged { iters: usize, objective: f64 },
    #[error("Newton iteration diverged: {0}")]
    NewtonDiverged(String),

    #[error("certification checks failed: {0:?}")]
    ChecksFailed(Vec<String>),

    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
