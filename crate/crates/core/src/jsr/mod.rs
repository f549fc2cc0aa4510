//! Joint spectral radius of `Σ(D)` and the capacity `log2 ρ(Σ(D))`.
//!
//! Lower bounds come from spectral radii of products, upper bounds from
//! product norms and from polytope norms adapted to the family. When the
//! orbit of a leading eigenvector closes into an invariant polytope the two
//! meet and the capacity is known exactly.

pub mod capacity;
pub mod certify;
pub mod iterate;
pub mod linalg;
pub mod lp;
pub mod orbit;
pub mod polytope;
pub mod products;

pub use capacity::{capacity, capacity_with, CapacityMode, CapacityOptions, CapacityReport};
pub use certify::{certify_candidate, certify_with, Certificate, CertifyOptions, CERT_SLACK};
pub use iterate::{polytope_iterate, polytope_iterate_with, IterateOptions, IterateReport};
pub use linalg::{leading_eigenvector, spectral_radius};
pub use orbit::ADD_TOL;
pub use polytope::{point_in_hull, SymPolytope, PRUNE_TOL};
pub use products::{product_bracket, product_bracket_with, BracketOptions, JsrBracket};
