use thiserror::Error;

/// Errors raised by complex construction, queries and checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("facet {facet} lists vertex `{label}` more than once")]
    DuplicateVertex { facet: usize, label: String },

    #[error("facet {facet} has {size} vertices; at most {max} are supported")]
    FacetTooLarge { facet: usize, size: usize, max: usize },

    #[error("face {{{}}} is not a face of the complex", .0.join(" "))]
    FaceNotInComplex(Vec<String>),

    #[error("the empty face has no link or star")]
    EmptyFace,

    #[error("{operation} requires a nonempty complex")]
    EmptyComplex { operation: &'static str },

    #[error("{operation} requires an even-dimensional complex, got dimension {dim}")]
    OddDimension { operation: &'static str, dim: i64 },

    #[error("sphere dimension must be at least -1, got {0}")]
    SphereDimension(i64),

    #[error("invalid parameter for {generator}: {reason}")]
    InvalidParameter { generator: &'static str, reason: String },

    #[error("{generator} failed validation: {reason}")]
    Validation { generator: &'static str, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
