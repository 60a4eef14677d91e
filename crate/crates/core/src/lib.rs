//! Finite semigroups, λρ-systems over them, and the λρ-products they define.

pub mod free_construction;
pub mod io;
pub mod lr_product;
pub mod lr_system;
pub mod pre_system;
pub mod semigroup;
mod tuple;

pub use lr_system::{
    Axiom, AxiomViolation, CanonicalSystem, LrSystem, Side, SquareViolation, SystemData, SystemError, Transformation,
    UnitalFailure, UnitalReport,
};

pub use free_construction::{
    build_free_system, free_of_system, free_transformation, verify_divide, DivideReport, FreeError, FreeOfSystem,
    FreeSystem, FreeTransformation, GeneratorData, TruncatedFreeMonoid,
};
pub use lr_product::{
    build_product, induced_hom, multiply, nonassociativity_witness, unit_of_product, ProductElement, ProductError,
    ProductSemigroup,
};
pub use pre_system::{extract_pre, lift, PreError, PreLrSystem, SolutionPair, Solutions};
pub use semigroup::{Congruence, FiniteSemigroup, Homomorphism, NamedSemigroup, SemigroupError};

/// Any error raised by this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Pre(#[from] PreError),
    #[error(transparent)]
    Free(#[from] FreeError),
    #[error(transparent)]
    Io(#[from] io::IoError),
}

impl Error {
    /// A short category for machine-readable reports: `cap_exceeded`,
    /// `read`, `write`, `json`, `schema` or `invalid`.
    pub fn kind(&self) -> &'static str {
        use io::IoError;
        let cap = match self {
            Error::Semigroup(e) | Error::Io(IoError::Semigroup(e)) => matches!(e, SemigroupError::CapExceeded { .. }),
            Error::Product(e) | Error::Free(FreeError::Product(e)) => matches!(
                e,
                ProductError::CapExceeded { .. } | ProductError::Semigroup(SemigroupError::CapExceeded { .. })
            ),
            Error::Pre(e) | Error::Free(FreeError::Pre(e)) => matches!(e, PreError::CapExceeded { .. }),
            Error::Free(e) => matches!(e, FreeError::CapExceeded { .. }),
            _ => false,
        };
        match self {
            _ if cap => "cap_exceeded",
            Error::Io(IoError::Read { .. }) => "read",
            Error::Io(IoError::Write { .. }) => "write",
            Error::Io(IoError::Json(_)) => "json",
            Error::Io(IoError::Schema(_)) => "schema",
            _ => "invalid",
        }
    }
}
