use thiserror::Error;

/// Errors raised by body construction, validation and the face calculus.
#[derive(Debug, Error)]
pub enum Error {
    #[error("interval gap after piece {piece}: gap {gap:.3e} rad")]
    IntervalGap { piece: usize, gap: f64 },
    #[error("origin not interior: min support {min_support:.3e}")]
    OriginNotInterior { min_support: f64 },
    #[error("nonconvex jump at junction {junction} (angle {angle:.6}): defect {defect:.3e}")]
    NonconvexJump {
        junction: usize,
        angle: f64,
        defect: f64,
    },
    #[error("arc piece {piece} not strictly convex: min h+h'' = {min_curvature:.3e}")]
    ArcNotStrictlyConvex { piece: usize, min_curvature: f64 },
    #[error("root finding failed to converge in {context}")]
    NumericNonconvergence { context: &'static str },
    #[error("point ({x:.6}, {y:.6}) is not on the boundary")]
    NotOnBoundary { x: f64, y: f64 },
    #[error("{what} is not a face of the body")]
    NotAFace { what: String },
    #[error("{what} is not a touching cone of the body")]
    NotATouchingCone { what: String },
    #[error("{what} is not an exposed face")]
    NotExposed { what: String },
    #[error("{body} does not attain its support radially at {side}: |rho - h| = {defect:.3e}")]
    PreconditionExtent {
        body: &'static str,
        side: &'static str,
        defect: f64,
    },
    #[error("glue extents differ at {side}: |c1 - c2| = {defect:.3e}")]
    PreconditionMismatch { side: &'static str, defect: f64 },
    #[error("input body has {count} non-exposed point(s); none allowed")]
    PreconditionNonexposed { count: usize },
    #[error("input body has {count} non-polyhedral corner(s); all corners must be polyhedral")]
    PreconditionCornertype { count: usize },
    #[error("exactly one of the two x-axis extreme points is a smooth extremal point")]
    PreconditionSmoothmatch,
    #[error("unknown gallery name: {name}")]
    UnknownName { name: String },
    #[error("bad parameter: {what}")]
    BadParam { what: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("evaluation error at {path}: {message}")]
    Eval { path: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Attach a body-spec node path to an evaluation error.
    pub fn at_path(self, path: &str) -> Error {
        match self {
            Error::Eval { path: p, message } => Error::Eval {
                path: format!("{path}.{p}"),
                message,
            },
            other => Error::Eval {
                path: path.to_string(),
                message: other.to_string(),
            },
        }
    }
}
