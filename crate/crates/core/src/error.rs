use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("graph is disconnected: no path between {0} and {1}")]
    Disconnected(usize, usize),

    #[error("graph has {n} vertices, above the all-pairs cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("empty vertex set: {0}")]
    EmptySet(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sets {0} and {1} are not 2r-close (distance {2} > {3})")]
    NotClose(usize, usize, u32, u32),

    #[error("balls {0} and {1} do not intersect")]
    BallsDisjoint(usize, usize),

    #[error("no mutually distant pair within {0} furthest-vertex steps; delta is underestimated")]
    IterationCap(usize),

    #[error("radius {r} is below the required minimum {min}: {why}")]
    RadiusBelowThreshold { r: u32, min: u32, why: &'static str },

    #[error("combinatorial budget of {0} subsets exceeded")]
    BudgetExceeded(u64),

    #[error("linear program is {0}")]
    Lp(&'static str),

    #[error("no member with neighbourhood mass at most {bound}; the fractional packing violates the averaging bound")]
    RoundingStuck { bound: u64 },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
