//! Certified large-argument asymptotic expansions of the Hankel, Bessel and
//! modified Bessel functions and their derivatives.
//!
//! The crate evaluates the truncated expansions in any [`Real`] precision,
//! attaches rigorous bounds on the neglected remainders, re-expands those
//! remainders in basic terminants for exponentially improved accuracy, and
//! ships an independent double-double oracle used to validate all of it.
//!
//! ```
//! use besselasym::{evaluate_certified, ExpansionContext, ExpansionKind, Order, SurfaceComplex};
//!
//! let ctx = ExpansionContext::new(SurfaceComplex::new(20.0, 0.5).unwrap(), Order::real(1.0), 20, 0);
//! let cv = evaluate_certified::<f64>(ExpansionKind::K, &ctx).unwrap();
//! assert!(cv.value_bound < 1e-12 * cv.value.norm());
//! ```

pub mod bounds;
pub mod coefficients;
pub mod dd;
pub mod error;
pub mod expansions;
pub mod figures;
pub mod integral_reps;
pub mod oracle;
pub mod quad;
pub mod reexpansion;
pub mod scalar;
pub mod surface;
pub mod terminants;
pub mod validation;

pub use bounds::{
    bound_complex_nu, bound_real_nu, olver_bound, sign_ratio_check, BoundBreakdown, BoundSource,
    Family, SignRatioReport,
};
pub use coefficients::{coeff_a, coeff_b, coeff_table, CoeffTable};
pub use dd::Dd;
pub use error::{Error, Result};
pub use expansions::{
    evaluate_certified, partial_sum, remainder_from_oracle, CertifiedValue, ExpansionContext,
    ExpansionKind,
};
pub use integral_reps::{
    coeff_a_via_integral, remainder_J_via_thm1, remainder_K_via_thm1, remainder_via_boyd,
    IntegralRepConfig,
};
pub use oracle::{reference, OracleValue};
pub use reexpansion::{
    optimal_truncation, reexpand, reexpand_tail_bound, sign_ratio_reexp, ReexpandedRemainder,
    TruncationPair,
};
pub use scalar::Real;
pub use surface::{Order, SurfaceComplex};
pub use terminants::{
    chi, hyp_bound_kernel, lambda_terminant, pi_terminant, solve_meijer_angle, sup_lambda_bound,
    sup_pi_bound, MeijerAngle, TerminantMethod, TerminantResult,
};

/// Complex value in native double precision.
pub type C64 = num_complex::Complex<f64>;
/// Complex value in double-double precision, used by the oracle.
pub type CDd = num_complex::Complex<Dd>;
pub type CoeffTable64 = CoeffTable<f64>;
pub type CoeffTableDd = CoeffTable<Dd>;
pub type CertifiedValue64 = CertifiedValue<f64>;
pub type ReexpandedRemainder64 = ReexpandedRemainder<f64>;
