use thiserror::Error;

/// Errors reported by the library.
///
/// `InvalidArgument` and `UnknownVertex` are domain errors (bad input);
/// `ResourceLimit` means a configured cap on an exponential search or an
/// enumeration was exceeded.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown vertex: {0}")]
    UnknownVertex(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

pub(crate) fn unknown_vertex<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::UnknownVertex(msg.into()))
}

pub(crate) fn resource_limit<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::ResourceLimit(msg.into()))
}
