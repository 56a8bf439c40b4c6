//! Numerical laboratory for the Nyman-Beurling approximation problem.
//!
//! The crate has three layers:
//!
//! * exact arithmetic — Gaussian rationals, fraction-free Hermitian solves,
//!   closed-form Hilbert inverses, and the circle-model prediction error
//!   ([`exact`], [`linalg`], [`circle`]);
//! * arbitrary-precision analysis — zeta, Gamma, the Tate factor and the
//!   U/V multipliers, contour derivatives, and the phi functions
//!   ([`bigfloat`], [`special`]);
//! * the approximation experiments — fractional-part Gram geometry and
//!   distance estimates, the rescaled Gram asymptotics with the assembled
//!   lower bound, and zero-table ingestion ([`fracgeo`], [`gram`], [`zeros`]).
//!
//! Gram assembly and grid sweeps are data-parallel (rayon) behind the
//! `parallel` feature; outputs are assembled in input order, so results do not
//! depend on the thread count.

pub mod bigfloat;
pub mod circle;
pub mod exact;
pub mod special;
pub mod linalg;
pub(crate) mod par;
