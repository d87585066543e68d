use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point index {index} out of range for instance of {n} points")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("instance must contain at least one point")]
    EmptyInstance,

    #[error("k must be at least 1")]
    ZeroK,

    #[error("k = {k} exceeds the number of points n = {n}")]
    KExceedsN { k: usize, n: usize },

    #[error("k = {k} violates k <= n/6 for n = {n}")]
    KTooLargeForSampling { k: usize, n: usize },

    #[error("rank {rank} out of range for {len} values")]
    RankOutOfRange { rank: usize, len: usize },

    #[error("selection input is empty")]
    EmptyValues,

    #[error("selection input contains NaN")]
    NanValue,

    #[error("{name} = {value} is outside its domain ({domain})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("radius assignment has length {got}, instance has {expected} points")]
    RadiiLengthMismatch { expected: usize, got: usize },

    #[error("radius value at index {index} is {value}; radii must be finite and non-negative")]
    InvalidRadius { index: usize, value: f64 },

    #[error("candidate list is empty")]
    EmptyCandidates,

    #[error("brute-force oracle is capped at n <= {max}, got n = {n}")]
    InstanceTooLarge { n: usize, max: usize },

    #[error("row {row} has {got} columns, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        got: usize,
    },

    #[error("points must have dimension >= 1")]
    ZeroDimension,

    #[error("non-finite value {value} at row {row}, column {col}")]
    NonFinite { row: usize, col: usize, value: f64 },

    #[error("negative distance {value} at row {row}, column {col}")]
    NegativeDistance { row: usize, col: usize, value: f64 },

    #[error("diagonal entry {index} is {value}, expected 0")]
    NonzeroDiagonal { index: usize, value: f64 },

    #[error("matrix is not symmetric: entry ({i},{j}) = {a} but ({j},{i}) = {b}")]
    Asymmetric { i: usize, j: usize, a: f64, b: f64 },

    #[error("triangle inequality violated: d({i},{l}) > d({i},{j}) + d({j},{l})")]
    TriangleViolation { i: usize, j: usize, l: usize },

    #[error("{path}: line {line}, column {col}: {msg}")]
    Parse {
        path: String,
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("invalid generator spec: {0}")]
    InvalidGenerator(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures reading or validating external data (files,
    /// matrices, JSON), as opposed to bad parameters.
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::EmptyInstance
                | Error::RaggedRow { .. }
                | Error::ZeroDimension
                | Error::NonFinite { .. }
                | Error::NegativeDistance { .. }
                | Error::NonzeroDiagonal { .. }
                | Error::Asymmetric { .. }
                | Error::TriangleViolation { .. }
                | Error::Parse { .. }
                | Error::Io(_)
                | Error::Json(_)
        )
    }
}
