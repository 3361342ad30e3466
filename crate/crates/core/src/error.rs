use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: dimension mismatches, bad indices, unparsable values.
    #[error("input error: {0}")]
    Input(String),
    /// Unsupported root system type or rank.
    #[error("configuration error: {0}")]
    Configuration(String),
    /// Problem too large for the brute-force routines.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// A set of cosets has several `<=^w`-minimal elements for some twist `w`.
    #[error("not a Coxeter matroid: {0}")]
    NotAMatroid(String),
    /// A polyhedron has an edge not parallel to any root.
    #[error("not an extended deformation of the permutohedron: {0}")]
    NotADeformation(String),
    /// Objects from different root systems or parabolic quotients were mixed.
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    /// Two independent computations disagreed; this is a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Configuration(_) => "configuration",
            Error::Capacity(_) => "capacity",
            Error::NotAMatroid(_) => "not_a_matroid",
            Error::NotADeformation(_) => "not_a_deformation",
            Error::TypeMismatch(_) => "type_mismatch",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
