use thiserror::Error;

/// Errors raised by the measures, conversions and solvers in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exhaustive routine would exceed its iteration or size guard.
    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: String, limit: u64 },

    /// A cover member is not a biclique of the graph.
    #[error("not a biclique: ({a}, {b}) is not an edge")]
    NotABiclique { a: String, b: String },

    /// An edge of the graph is covered by no member.
    #[error("uncovered edge ({a}, {b})")]
    UncoveredEdge { a: String, b: String },

    /// A network's reachability disagrees with the graph on a pair.
    #[error("network does not realize graph: {source_label} -> {sink} is {found} but the graph says {expected}")]
    Unrealized {
        source_label: String,
        sink: String,
        found: &'static str,
        expected: &'static str,
    },

    /// A proposed edge cut leaves a source-to-sink path intact.
    #[error("not an edge cut: path {} avoids the cut", .0.join(" -> "))]
    UncutPath(Vec<String>),

    /// Structurally invalid input (bad index, duplicate label, cycle, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Malformed serialized input.
    #[error("parse error: {0}")]
    Parse(String),

    /// A proven inequality failed. Firing means an implementation bug.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn limit(what: impl Into<String>, limit: u64) -> Self {
        Error::ResourceLimit {
            what: what.into(),
            limit,
        }
    }

    /// True for the errors that reject a candidate object (cover, network,
    /// cut, input file) rather than an operation's arguments or budget.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NotABiclique { .. }
                | Error::UncoveredEdge { .. }
                | Error::Unrealized { .. }
                | Error::UncutPath(_)
                | Error::Invalid(_)
                | Error::Parse(_)
                | Error::Domain(_)
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
