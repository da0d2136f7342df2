//! Exact matrix factorizations over `Q[x1..xn]` and their Chern character.
//!
//! The Chern character of a matrix factorization `E` of `f` is computed from the
//! Atiyah class `At` of a connection `d + Γ` as `Σ (1/i!) str(At^i)`, read in the
//! homology of `(Ω•, df∧)`. Every identity along the way (strictness of the
//! Atiyah morphism, the cycle condition, additivity on cones, multiplicativity
//! on tensor products, functoriality) has an exact checker.

pub mod chern;
pub mod exterior;
pub mod ideals;
pub mod mf;
pub mod random;
pub mod ring;
