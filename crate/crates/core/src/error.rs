use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("point {0} is not on the hypersurface")]
    PointNotOnHypersurface(String),
    #[error("center {0} is a singular point of the hypersurface")]
    SingularCenter(String),
    #[error("the line is contained in the hypersurface")]
    LineContained,
    #[error("the plane is contained in the hypersurface")]
    PlaneContained,
    #[error("the given points do not span a plane")]
    DegenerateSpan,
    #[error("fibre family is not reduced: discriminant vanishes identically")]
    NonReduced,
    #[error("hypersurface is reducible: {0}")]
    Reducible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("every sampled plane section was reducible or non-reduced ({0} planes tried)")]
    SectionsDegenerate(usize),

    #[error("root finding did not converge (worst residual {worst_residual:e})")]
    NonConvergence { worst_residual: f64 },
    #[error("path tracking failed: {0}")]
    PathFailure(String),
    #[error("ambiguous root matching: {0}")]
    AmbiguousMatching(String),
    #[error("branch points collide: {0}")]
    BranchCollision(String),
    #[error("numeric degeneracy: {0}")]
    Degenerate(String),
    #[error("time budget exceeded")]
    Timeout,

    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code: 2 for malformed input, 3 for geometric
    /// precondition violations, 4 for numeric degeneracy.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            Syntax { .. } | UnknownVariable { .. } | NotHomogeneous | InvalidPoint(_)
            | InvalidInput(_) => 2,
            Dimension(_) | PointNotOnHypersurface(_) | SingularCenter(_) | LineContained
            | PlaneContained | DegenerateSpan | NonReduced | Reducible(_) | Precondition(_)
            | SectionsDegenerate(_) => 3,
            NonConvergence { .. } | PathFailure(_) | AmbiguousMatching(_) | BranchCollision(_)
            | Degenerate(_) | Timeout => 4,
            Io(_) | Json(_) => 1,
        }
    }

    /// Failures that a fresh frame or base point may cure.
    pub(crate) fn is_numeric(&self) -> bool {
        self.exit_code() == 4 && !matches!(self, Error::Timeout)
    }
}
