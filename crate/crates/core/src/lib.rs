//! Exact enumeration of F-triangles of cluster fans (generalized associahedra)
//! and M-triangles of noncrossing partition lattices for finite
//! crystallographic root systems, and an exact check of the change of
//! variables that relates them.
//!
//! ```
//! use ftri_core::{f_triangle, verify_conjecture, RootSystemSpec};
//!
//! let a3: RootSystemSpec = "A3".parse().unwrap();
//! assert_eq!(f_triangle(&a3).unwrap().entry(3, 0), 5.into());
//! assert!(verify_conjecture(&a3).unwrap().passed());
//! ```

pub mod budget;
pub mod cartan;
pub mod conjecture;
pub mod error;
pub mod nc;
pub mod poly;
#[doc(hidden)]
pub mod serde_int;
pub mod triangle;
pub mod weyl;

pub use budget::Budget;
pub use cartan::{CartanType, CoxeterInvariants, DynkinDiagram, Edge, Family, RootSystemSpec};
pub use conjecture::{
    alternative_form_check, conjecture_lhs, conjecture_rhs, m_triangle_transform, verify_conjecture,
    verify_conjecture_with, ConjectureReport, Evidence, Mismatch, Timings, VerifyOptions,
};
pub use error::{Error, Result};
pub use nc::{invariant_formulas, is_self_dual_m_triangle, spec_invariant_formulas, LatticeFormulas, NCLattice};
pub use poly::{BivarPoly, Bivariate, RationalBivarPoly, RationalUniPoly, UniPoly, Univariate};
pub use triangle::{
    closed_form_a, closed_form_b, closed_form_f_vector_a, closed_form_f_vector_b, f_triangle, f_vector,
    h_vector, h_vector_of, natural_f_vector, positive_f_vector, FTriangle, FVector, TriangleMemo,
};
pub use weyl::{GroupElement, ReflectionRep};
