use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument on a branch cut: {0}")]
    BranchCut(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("asymptotic series diverges: {0}")]
    Divergence(String),
    #[error("pole or zero lattice point: {0}")]
    Pole(String),
    #[error("continuous logarithm cannot pass a zero: {0}")]
    BranchTrack(String),
    #[error("point on the wall 2Re(q) = 1: {0}")]
    Wall(String),
    #[error("direction lies on a BPS ray: {0}")]
    OnRay(String),
    #[error("singular instanton sum: {0}")]
    Singularity(String),
    #[error("degenerate metric: {0}")]
    Degenerate(String),
    #[error("Laurent fit rejected: {0}")]
    Fit(String),
    #[error("sign pattern did not stabilise: {0}")]
    Regime(String),
    #[error("product does not converge: {0}")]
    Convergence(String),
    #[error("ambiguous ray ordering: {0}")]
    Ordering(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::BranchCut(_) => "BranchCutError",
            Error::Budget(_) => "BudgetError",
            Error::Domain(_) => "DomainError",
            Error::Divergence(_) => "DivergenceWarning",
            Error::Pole(_) => "PoleError",
            Error::BranchTrack(_) => "BranchTrackError",
            Error::Wall(_) => "WallError",
            Error::OnRay(_) => "OnRayError",
            Error::Singularity(_) => "SingularityError",
            Error::Degenerate(_) => "DegenerateError",
            Error::Fit(_) => "FitError",
            Error::Regime(_) => "RegimeError",
            Error::Convergence(_) => "ConvergenceError",
            Error::Ordering(_) => "OrderingError",
        }
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
