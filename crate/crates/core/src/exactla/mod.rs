//! Exact dense linear algebra and univariate polynomial algebra.

pub mod canon;
pub mod factor;
pub mod jordan;
pub mod mat;
pub mod poly;

pub use canon::{char_poly, fitting, invariant_factors, is_similar, min_poly, vector_min_poly, FittingSplit};
pub use factor::{factor_poly, irreducible_factors, is_irreducible, Factor};
pub use jordan::{generalized_jordan, jordan_normal_form, semisimple_part, GeneralizedJordan};
pub use mat::{Mat, Rref};
pub use poly::Poly;
