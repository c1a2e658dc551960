//! Exact construction, decomposition and classification of isotropic triples
//! in symplectic vector spaces over the rationals and odd prime fields.

pub mod classify;
pub mod error;
pub mod exactla;
pub mod field;
pub mod hamiltonian;
pub mod normalforms;
pub mod sextuple;
pub mod subspace;
pub mod symplectic;

pub use error::{Error, Result};
pub use exactla::{Mat, Poly};
pub use field::{FieldCtx, Scalar};
pub use sextuple::{DimensionVector, Sextuple};
pub use subspace::Subspace;
pub use symplectic::IsotropicTriple;
