//! Exact and certified computations for curvature-operator positivity:
//! weights and representation data of orthogonal and unitary groups, spinor
//! tensor decompositions, curvature terms `K(R,π)`, multiplicative genera,
//! q-expansions of Witten and elliptic genera, and vanishing certificates.

pub mod certificate;
pub mod curvops;
pub mod decomp;
pub mod error;
pub mod genera;
pub mod matrix;
pub mod qseries;
pub mod rational;
pub mod symfun;
pub mod weights;

pub use certificate::{Backend, Certificate, Evidence, Verdict};
pub use curvops::{CurvOp, Spectrum};
pub use decomp::Decomposition;
pub use error::{Error, Result};
pub use genera::{Builtin, ManifoldData};
pub use matrix::{GMatrix, QMatrix, SparseMatrix};
pub use qseries::{Group, QSeries};
pub use rational::{Gaussian, Rational};
pub use symfun::{EvenSeries, GenusKind, Partition, PontPoly, PowerSumPoly};
pub use weights::{DominantWeight, LieFamily, LieType, RepKind, Weight};
