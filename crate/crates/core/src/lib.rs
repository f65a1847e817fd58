//! Extended real Clifford-Dirac algebra over R-linear operators on C⁴, the
//! Foldy-Wouthuysen picture, Fermi-Bose dual amplitudes and their
//! conservation laws.

pub mod algebra;
pub mod amplitudes;
pub mod bosonic;
pub mod charges;
pub mod error;
pub mod field;
pub mod grid;
pub mod linalg;
pub mod poincare;
pub mod report;
pub mod rlinear;
pub mod spectral;

pub use algebra::{build_gammas, build_spin_tensor, GammaBasis, SpinTensor};
pub use amplitudes::{AmplitudeKind, AmplitudeSet, Picture};
pub use bosonic::{build_breve_basis, build_w, BreveBasis, WPair};
pub use charges::{SpinChoice, SpinLabel};
pub use error::{ErcdError, Result};
pub use field::{Branch, SpinorFieldK};
pub use grid::{GridSpec, MomentumGrid, MomentumSample};
pub use linalg::{CMat4, CVec4, RMat8};
pub use poincare::{GeneratorId, Ordering};
pub use report::RelationReport;
pub use rlinear::RLinOp;
pub use spectral::Equation;
