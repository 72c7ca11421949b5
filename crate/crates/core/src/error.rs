use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A request exceeded one of the configured size caps.
    #[error("size limit exceeded: {what} = {got} is above the cap of {cap}")]
    SizeLimit {
        what: &'static str,
        got: usize,
        cap: usize,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("numeric error: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
