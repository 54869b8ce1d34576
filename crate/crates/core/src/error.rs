use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown generator symbol `{0}`")]
    UnknownGenerator(String),

    #[error("elements belong to different groups")]
    GroupMismatch,

    #[error("{what} exceeds the capacity limit of {limit}")]
    CapacityExceeded { what: &'static str, limit: usize },

    #[error("invalid group model: {0}")]
    InvalidGroup(String),

    /// The candidate generates a finite cyclic subgroup, so its translates of
    /// a fundamental domain cannot partition the carrier.
    #[error("axial candidate `{0}` has finite order")]
    FiniteOrder(String),

    #[error("map is not equivariant: f({h} * {x}) != {h} * f({x})")]
    EquivarianceViolation { h: String, x: String },

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: i64, hi: i64 },

    #[error("invalid truncation parameters: {0}")]
    InvalidTruncation(String),

    #[error("`{0}` is not witnessed wild at this truncation")]
    NotWild(String),

    #[error("no m <= {window} gives coverage for h = `{h}` (witness w = `{w}`)")]
    WindowExhausted { h: String, w: String, window: i64 },

    #[error("`{0}` and `{1}` represent the same coset")]
    SameCoset(String, String),

    #[error("at least 3 distinct cosets are required, found {0}")]
    InsufficientCosets(usize),

    #[error("projection axioms failed: {0}")]
    AxiomsFailed(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("point `{0}` is not a vertex of the graph")]
    PointMissing(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
