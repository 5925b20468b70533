use thiserror::Error;

/// Errors raised by the computation engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("duplicate abscissa {0} in interpolation points")]
    DuplicateAbscissa(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid edge index {index} (graph has {edges} edges)")]
    InvalidEdge { index: usize, edges: usize },
    #[error("invalid vertex {vertex} (graph has {n} vertices)")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line graph restricted to simple graphs")]
    NotSimple,
    #[error("canonicalisation limit exceeded: {n} vertices (limit {limit})")]
    CanonLimit { n: usize, limit: usize },
    #[error("size limit exceeded for {what}: {size} > {limit}")]
    SizeLimit {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("λ-reduction undefined for this element")]
    ReductionUndefined,
    #[error("Q undefined: nonpositive sum inside log")]
    QUndefined,
    #[error("label sets C and U overlap")]
    LabelOverlap,
    #[error("graph must be connected")]
    Disconnected,
    #[error("graph must be loop-free")]
    HasLoops,
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("inadmissible rule application: {0}")]
    Rule(String),
}

pub type Result<T> = std::result::Result<T, Error>;
