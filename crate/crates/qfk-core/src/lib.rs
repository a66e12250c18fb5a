//! Exact-arithmetic engine for a family of finite-dimensional pointed Hopf
//! algebras built from diagonal Yetter-Drinfel'd data: the triangular
//! algebra `H = L (x) kG (x) R`, its dual, its Drinfel'd double, and the
//! classification of simple modules over both, indexed by characters of the
//! grouplike torus.

pub mod datum;
pub mod double;
pub mod files;
pub mod group;
pub mod hopf;
pub mod linalg;
pub mod prenichols;
pub mod repn;
pub mod scalar;
pub mod util;

pub use datum::QlsDatum;
pub use double::DoubleAlgebra;
pub use group::{AbelianGroup, Character, GroupElement, ProductWeight};
pub use hopf::{HElement, HopfAlgebraH};
pub use repn::{Representation, WeightLabel};
pub use scalar::{FieldSpec, Scalar, ScalarField};
