use thiserror::Error;

/// Errors raised by the geometry toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    /// An input violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// The pushed-forward frame does not span a nondegenerate tangent space.
    #[error("degenerate frame: {0}")]
    DegenerateFrame(String),
    /// The requested quantity does not exist for this configuration.
    #[error("unavailable: {0}")]
    Unavailable(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(GeometryError::Domain(msg.into()))
}
