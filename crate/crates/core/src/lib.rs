//! Exact arithmetic for skew polynomial rings `A[X;σ,δ]`, truncated skew power
//! series and truncated skew Laurent series over finite-dimensional algebras
//! over finite fields, together with the correspondence between cyclic
//! convolutional codes and ideal codes.

pub mod action;
pub mod algebra;
pub mod codes;
pub mod field;
pub mod fxpoly;
pub mod laurent;
pub mod matrix;
pub mod modact;
pub mod par;
pub mod polymatrix;
pub mod random;
pub mod series;
pub mod skewmap;
pub mod skewpoly;
pub mod sweeps;
pub mod worked;

pub use algebra::{Algebra, AlgebraElement, LinearMap};
pub use field::{Fe, FieldSpec, GaloisField};
pub use skewmap::{verify_skew_derivation, SkewDerivation};
