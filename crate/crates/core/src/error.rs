use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} is out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("{count} vertices exceeds the limit of {limit}")]
    TooManyVertices { count: usize, limit: usize },

    #[error("face count exceeds the limit of {limit}")]
    TooManyFaces { limit: usize },

    #[error("{{{vertex}}} is not a face of the complex")]
    NotAFace { vertex: usize },

    #[error("not a simplicial complex: {0}")]
    NotDownwardClosed(String),

    #[error("fold precondition violated: N({kept}) is not contained in N({removed})")]
    FoldPrecondition { kept: usize, removed: usize },

    #[error("refusing brute-force search on {count} vertices (bound {bound})")]
    RefusedSize { count: usize, bound: usize },

    #[error("cannot take a wedge sum with the empty complex S^-1")]
    WedgeWithJoinIdentity,

    #[error("homotopy type is unknown")]
    UnknownType,
}

pub type Result<T> = std::result::Result<T, Error>;
