//! Exact classification of finite-sheeted boundary loop functions for the
//! q-state Potts model on random planar maps.
//!
//! * [`exactnum`]: cyclotomic-field arithmetic and exact trigonometry.
//! * [`sheet`]: sheet coefficients `ρ_K`, `δ_K`, `α_K` by closed form and by
//!   the sixth-order recurrence, plus termination-sheet detection.
//! * [`classify`]: allowed `q`, allowed boundary weights `p`, special values
//!   and the exhaustive integer-`p` scan.
//! * [`criticality`]: discriminant degrees and critical / string exponents.
//! * [`duality`]: Kramers–Wannier parameter maps and the mixed-boundary word
//!   algebra.

pub mod classify;
pub mod criticality;
pub mod duality;
pub mod exactnum;
pub mod param;
pub mod sheet;

pub use exactnum::{CycloNumber, CycloReal, ExactError};
pub use param::{CaseTag, ParamError, ThetaParam};
