//! Exact and numerical machinery for semigroup *-algebras built from the
//! bicyclic monoid `BC = ⟨p, q : pq = e⟩` and the free *-monoid `S∞`.
//!
//! The centerpiece is the unital *-homomorphism
//! `φ : ℂS∞ → ℂ(BC*S∞)`, `tₙ ↦ δ_p + γₙ δ_{tₙ}`, whose image is a dense,
//! stably finite *-subalgebra of an infinite C*-algebra. The crate provides:
//!
//! * [`words`]: normal forms for `BC`, `S∞`, `BC*S∞` and `F₂`;
//! * [`algebra`]: exact finitely supported elements over Gaussian rationals;
//! * [`embedding`]: `φ`, checks of its support and coordinate properties,
//!   exact injectivity ranks and one-sided inverse searches;
//! * [`states`]: the free-product state, Gram positivity and the trace on `ℂF₂`;
//! * [`oper`]: a truncated shift representation with operator norms;
//! * [`parse`]: the text syntax for elements.

pub mod algebra;
pub mod embedding;
pub mod limits;
pub mod linalg;
pub mod oper;
pub mod parse;
pub mod sample;
pub mod scalar;
pub mod states;
pub mod words;

pub use algebra::{AlgebraError, Element, GroupElement, StarWord};
pub use limits::{LimitError, Limits};
pub use scalar::Scalar;
pub use words::{Bicyclic, FgWord, FreeGen, FreeWord, ProductWord, Universe};
