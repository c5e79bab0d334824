//! Bergman kernel, Bergman metric and holomorphic sectional curvature of
//! planar annuli, computed from Laurent-series extremal formulas.
//!
//! The crate has three evaluation paths that cross-check each other:
//! a cancellation-free series path ([`series`], [`geometry`]), a
//! quadrature-Gram constrained-optimization oracle ([`oracle`]), and
//! asymptotic rate laws ([`asymptotics`]). The [`zalcman`] module builds a
//! disk-minus-holes domain with certified two-sided curvature bounds per
//! stage.

pub mod annulus;
pub mod asymptotics;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod poly;
pub mod quad;
pub mod series;
pub mod zalcman;

pub use annulus::{alpha_norm, Annulus, Truncation};
pub use error::{Error, Result};
pub use geometry::{bergman_eval, bergman_eval_canonical, curvature_canonical, normalize, BergmanEval};
pub use series::{j_triple_at_one, phi_psi_table, JTriple, PhiTable};
