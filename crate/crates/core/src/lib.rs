//! Executable calculus for transitive geometries: exact checks on almost Lie
//! algebras, Pfaffian group data and Cartan-type extensions, a numerical
//! coframe engine deciding flatness and integrability of chart scenarios, and
//! the explicit action-groupoid models with their Pfaffian forms.
//!
//! The crate splits along two arithmetic regimes. Everything algebraic
//! (brackets, ideals, kernels, towers, reductivity) is exact over
//! arbitrary-precision rationals; everything differential (exterior
//! derivatives, curvature, torsion, groupoid residuals) is IEEE double with
//! central differences and explicit tolerances. The groupoid module bridges
//! the two with an FD-then-snap policy.

pub mod algebra;
pub mod chart;
pub mod curvature;
pub mod expr;
pub mod extension;
pub mod form;
pub mod groupoid;
pub mod io;
pub mod jet;
pub mod linalg;
pub mod pfaffian;
pub mod rep;

pub use algebra::AlmostLieAlgebra;
pub use chart::ChartBox;
pub use extension::{CartanTypeExtension, RepExtension, SplittingPair};
pub use form::{FrameField, VForm1};
pub use linalg::{RatMat, Rational, Subspace};
pub use pfaffian::PfaffianGroupData;
pub use rep::LinearRep;
