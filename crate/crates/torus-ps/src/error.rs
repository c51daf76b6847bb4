use thiserror::Error;

/// Pipeline stage an error is attributed to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Map,
    Orientation,
    Build,
    Lattice,
    Traversal,
    Closure,
    Codec,
    Oracle,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Map => "map",
            Stage::Orientation => "orientation",
            Stage::Build => "build",
            Stage::Lattice => "lattice",
            Stage::Traversal => "traversal",
            Stage::Closure => "closure",
            Stage::Codec => "codec",
            Stage::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("twin not involution")]
    TwinNotInvolution,
    #[error("dart {0} listed twice")]
    DuplicateDart(usize),
    #[error("dart {0} missing")]
    MissingDart(usize),
    #[error("genus is not 1 (euler characteristic {0})")]
    Genus(i64),
    #[error("face {0} is not a triangle")]
    NotTriangle(usize),
    #[error("contractible {0}-cycle")]
    ContractibleCycle(usize),
    #[error("not a 3-orientation")]
    NotThreeOrientation,
    #[error("not a Schnyder wood (vertex {0})")]
    NotSchnyder(usize),
    #[error("internal error: no 3-orientation")]
    NoThreeOrientation,
    #[error("htc search exhausted")]
    HtcExhausted,
    #[error("not admissible")]
    NotAdmissible,
    #[error("root stem absent")]
    RootStemAbsent,
    #[error("not unicellular")]
    NotUnicellular,
    #[error("no spanning tree toward root")]
    NoSpanningTree,
    #[error("invalid word")]
    InvalidWord,
    #[error("rank out of range")]
    RankOutOfRange,
    #[error("weight mismatch")]
    WeightMismatch,
    #[error("invalid container: {0}")]
    Container(String),
    #[error("oracle cap exceeded ({0} edges)")]
    OracleCap(usize),
    #[error("{0}")]
    Other(String),
}

/// An error tagged with the stage that raised it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("stage: {}, error: {source}", stage.name())]
pub struct StageError {
    pub stage: Stage,
    pub source: Error,
}

pub trait AtStage<T> {
    fn at(self, stage: Stage) -> Result<T, StageError>;
}

impl<T> AtStage<T> for Result<T, Error> {
    fn at(self, stage: Stage) -> Result<T, StageError> {
        self.map_err(|source| StageError { stage, source })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
