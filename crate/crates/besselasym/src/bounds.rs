//! Rigorous bounds for the four basic remainders `R_N^(K)`, `R_N^(J)`,
//! `R_N^(K′)`, `R_N^(J′)`, the positive-axis sign/ratio statements, and
//! Olver's differential-equation bounds for comparison.
//!
//! Every bound has the shape (first omitted term) × (terminant sup factor)
//! × (order ratio), which [`BoundBreakdown`] keeps separate.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use crate::coefficients::{
    coeff_a, coeff_b, ln_abs_a, ln_abs_a_real, ln_abs_b_real, vanishes_from,
};
use crate::error::{domain, Error, Result};
use crate::surface::{Order, SurfaceComplex};
use crate::terminants::{chi, sup_lambda_bound, sup_pi_bound};

/// The four remainders everything else reduces to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    K,
    J,
    Kp,
    Jp,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::K, Family::J, Family::Kp, Family::Jp];

    pub fn name(self) -> &'static str {
        match self {
            Family::K => "K",
            Family::J => "J",
            Family::Kp => "Kp",
            Family::Jp => "Jp",
        }
    }

    pub fn is_derivative(self) -> bool {
        matches!(self, Family::Kp | Family::Jp)
    }

    /// J families are bounded through `Π_p`, K families through `Λ_p`.
    pub fn is_oscillatory(self) -> bool {
        matches!(self, Family::J | Family::Jp)
    }

    /// Half-width of the open sector `|arg z| < w` where the bounds hold.
    pub fn sector_half_width(self) -> f64 {
        if self.is_oscillatory() {
            PI
        } else {
            1.5 * PI
        }
    }

    fn check_sector(self, arg: f64) -> Result<()> {
        if arg.abs() < self.sector_half_width() {
            Ok(())
        } else {
            let sector = if self.is_oscillatory() {
                "|arg z| < π"
            } else {
                "|arg z| < 3π/2"
            };
            Err(Error::Sector { arg, sector })
        }
    }

    /// `c_N(ν)`: `a_N` or `b_N` as appropriate.
    pub fn coefficient(self, nu: Order, n: usize) -> Complex64 {
        if self.is_derivative() {
            coeff_b(nu, n)
        } else {
            coeff_a(nu, n)
        }
    }

    /// Sign convention of the first omitted term on the positive axis.
    pub fn positive_axis_sign(self, n: usize) -> f64 {
        if self.is_oscillatory() && n.div_ceil(2) % 2 == 1 {
            -1.0
        } else {
            1.0
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "k" => Ok(Family::K),
            "j" => Ok(Family::J),
            "kp" | "k'" => Ok(Family::Kp),
            "jp" | "j'" => Ok(Family::Jp),
            _ => Err(domain(format!(
                "unknown family '{s}' (expected K, J, Kp, Jp)"
            ))),
        }
    }
}

/// Which estimate produced a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundSource {
    /// Real ν, undifferentiated functions; terminant order `N + max(0, ½−|ν|)`.
    RealOrder,
    /// Real ν, derivatives; terminant order `N`.
    RealOrderDerivative,
    /// Complex ν, undifferentiated; order `N + ½` and the cosine ratio.
    ComplexOrder,
    /// Complex ν, derivatives.
    ComplexOrderDerivative,
    Olver,
    /// 2ν is odd and the expansion is exact.
    ExactTermination,
    /// Outside every sector where a bound is available.
    OutOfSector,
}

impl BoundSource {
    pub fn tag(self) -> &'static str {
        match self {
            BoundSource::RealOrder => "real-order",
            BoundSource::RealOrderDerivative => "real-order-derivative",
            BoundSource::ComplexOrder => "complex-order",
            BoundSource::ComplexOrderDerivative => "complex-order-derivative",
            BoundSource::Olver => "olver",
            BoundSource::ExactTermination => "exact-termination",
            BoundSource::OutOfSector => "none-out-of-sector",
        }
    }
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundBreakdown {
    pub first_term_mag: f64,
    pub sup_factor: f64,
    pub nu_ratio: f64,
    pub total: f64,
    pub theorem: BoundSource,
}

impl BoundBreakdown {
    fn new(first_term_mag: f64, sup_factor: f64, nu_ratio: f64, theorem: BoundSource) -> Self {
        // 0·∞ cannot occur: sup factors are finite, and a vanishing
        // coefficient makes the whole bound zero
        let total = if first_term_mag == 0.0 {
            0.0
        } else {
            first_term_mag * sup_factor * nu_ratio
        };
        BoundBreakdown {
            first_term_mag,
            sup_factor,
            nu_ratio,
            total,
            theorem,
        }
    }

    pub fn exact() -> Self {
        BoundBreakdown::new(0.0, 1.0, 1.0, BoundSource::ExactTermination)
    }
}

fn sup_factor(family: Family, p: f64, arg: f64) -> Result<f64> {
    if family.is_oscillatory() {
        sup_pi_bound(p, arg)
    } else {
        sup_lambda_bound(p, arg)
    }
}

fn precondition(family: Family, x: f64, n: usize) -> Result<()> {
    let ok = if family.is_derivative() {
        n >= 1 && x.abs() < n as f64 - 0.5
    } else {
        x.abs() < n as f64 + 0.5
    };
    if ok {
        Ok(())
    } else {
        let need = if family.is_derivative() {
            "N ≥ 1 and |Re ν| < N − 1/2"
        } else {
            "|Re ν| < N + 1/2"
        };
        Err(Error::NoApplicableBound(format!(
            "{family} bound needs {need}; got Re ν = {x}, N = {n}"
        )))
    }
}

fn ln_abs_coeff_real(family: Family, x: f64, n: usize) -> f64 {
    if family.is_derivative() {
        ln_abs_b_real(x, n)
    } else {
        ln_abs_a_real(x, n)
    }
}

/// Bound for real ν.
pub fn bound_real_nu(
    family: Family,
    z: SurfaceComplex,
    nu_real: f64,
    n: usize,
) -> Result<BoundBreakdown> {
    if !nu_real.is_finite() {
        return Err(domain("order must be finite"));
    }
    precondition(family, nu_real, n)?;
    family.check_sector(z.argument)?;
    let p = if family.is_derivative() {
        n as f64
    } else {
        n as f64 + (0.5 - nu_real.abs()).max(0.0)
    };
    let first = (ln_abs_coeff_real(family, nu_real, n) - n as f64 * z.modulus.ln()).exp();
    let theorem = if family.is_derivative() {
        BoundSource::RealOrderDerivative
    } else {
        BoundSource::RealOrder
    };
    Ok(BoundBreakdown::new(
        first,
        sup_factor(family, p, z.argument)?,
        1.0,
        theorem,
    ))
}

/// `|cos πν|` without forming the complex cosine.
pub fn abs_cos_pi(nu: Order) -> f64 {
    let c = (PI * nu.re).cos();
    let s = (PI * nu.im).sinh();
    (c * c + s * s).sqrt()
}

/// Whether 2x is within `1e-10` of an odd integer, where `cos πx` vanishes
/// and the complex-order bounds need their limiting form.
fn near_odd_half(x: f64) -> bool {
    let two = 2.0 * x;
    let k = two.round();
    (two - k).abs() < 1e-10 && (k as i64).rem_euclid(2) == 1
}

/// `(|cos πν|/|cos πRe ν|)·|c_N(Re ν)|` split as `(magnitude, ratio)`. Near
/// odd `2 Re ν` the product is taken in its finite gamma-function form and
/// reported with ratio 1.
pub(crate) fn order_factor(family: Family, nu: Order, n: usize) -> (f64, f64) {
    let x = nu.re;
    if nu.is_real() {
        return (ln_abs_coeff_real(family, x, n).exp(), 1.0);
    }
    if near_odd_half(x) {
        let nf = n as f64;
        let ln = if family.is_derivative() {
            ln_gamma(nf - 0.5 + x)
                + ln_gamma(nf - 0.5 - x)
                + (4.0 * x * x + 4.0 * nf * nf - 1.0).abs().ln()
                - (nf + 2.0) * 2f64.ln()
        } else {
            ln_gamma(nf + 0.5 + x) + ln_gamma(nf + 0.5 - x) - nf * 2f64.ln()
        };
        let mag = abs_cos_pi(nu) * (ln - PI.ln() - ln_gamma(nf + 1.0)).exp();
        return (mag, 1.0);
    }
    (
        ln_abs_coeff_real(family, x, n).exp(),
        abs_cos_pi(nu) / (PI * x).cos().abs(),
    )
}

/// Bound for arbitrary complex ν, terminant order `N + ½`.
pub fn bound_complex_nu(
    family: Family,
    z: SurfaceComplex,
    nu: Order,
    n: usize,
) -> Result<BoundBreakdown> {
    precondition(family, nu.re, n)?;
    family.check_sector(z.argument)?;
    let (mag, ratio) = order_factor(family, nu, n);
    let first = mag * (-(n as f64) * z.modulus.ln()).exp();
    let theorem = if family.is_derivative() {
        BoundSource::ComplexOrderDerivative
    } else {
        BoundSource::ComplexOrder
    };
    Ok(BoundBreakdown::new(
        first,
        sup_factor(family, n as f64 + 0.5, z.argument)?,
        ratio,
        theorem,
    ))
}

/// Olver's bound for `R_N^(K)`, with the variation of `t^{−N}` replaced by
/// its simple sector-wise estimates. Valid for any ν, `|arg z| < 3π/2`.
pub fn olver_bound(z: SurfaceComplex, nu: Order, n: usize) -> Result<BoundBreakdown> {
    let th = z.argument.abs();
    if th >= 1.5 * PI {
        return Err(Error::Sector {
            arg: z.argument,
            sector: "|arg z| < 3π/2",
        });
    }
    let v = nu.to_complex::<f64>();
    let q = (v * v - 0.25).norm();
    let r = z.modulus;
    // variation of t^{-1}, and of t^{-N} scaled by |z|^N
    let (var1, var_n) = if th <= FRAC_PI_2 {
        (1.0 / r, 1.0)
    } else if th <= PI {
        (chi(1.0) / r, chi(n as f64))
    } else {
        let c = th.cos().abs();
        (
            2.0 * chi(1.0) / (r * c),
            2.0 * chi(n as f64) / c.powi(n as i32),
        )
    };
    let growth = (q * var1).exp();
    if n == 0 {
        return Ok(BoundBreakdown::new(1.0, growth, 1.0, BoundSource::Olver));
    }
    let two = if z.argument == 0.0 && nu.is_real() {
        1.0
    } else {
        2.0
    };
    let first = (ln_abs_a(nu, n) - n as f64 * r.ln()).exp();
    Ok(BoundBreakdown::new(
        first,
        two * var_n * growth,
        1.0,
        BoundSource::Olver,
    ))
}

/// Olver-type bound for `R_N^(J)` through
/// `|R^(J)(z)| ≤ ½(|R^(K)(ze^{iπ/2})| + |R^(K)(ze^{−iπ/2})|)`.
pub fn olver_bound_j(z: SurfaceComplex, nu: Order, n: usize) -> Result<BoundBreakdown> {
    if z.argument.abs() >= PI {
        return Err(Error::Sector {
            arg: z.argument,
            sector: "|arg z| < π",
        });
    }
    let up = olver_bound(z.rotate(FRAC_PI_2), nu, n)?;
    let down = olver_bound(z.rotate(-FRAC_PI_2), nu, n)?;
    let total = 0.5 * (up.total + down.total);
    let first = up.first_term_mag;
    let sup = if first > 0.0 {
        total / first
    } else {
        0.5 * (up.sup_factor + down.sup_factor)
    };
    Ok(BoundBreakdown {
        first_term_mag: first,
        sup_factor: sup,
        nu_ratio: 1.0,
        total,
        theorem: BoundSource::Olver,
    })
}

/// The closed-form complex-order bound used for plotting against Olver's:
/// the cosine ratio times `|a_N(Re ν)|/|z|^N`, times 1 for `|arg z| ≤ π/2`
/// and `min(|csc arg z|, 1 + χ(N+½))` for `π/2 < |arg z| ≤ π`.
pub fn simplified_complex_bound(z: SurfaceComplex, nu: Order, n: usize) -> Result<BoundBreakdown> {
    precondition(Family::K, nu.re, n)?;
    let th = z.argument.abs();
    if th > PI {
        return Err(Error::Sector {
            arg: z.argument,
            sector: "|arg z| ≤ π",
        });
    }
    let factor = if th <= FRAC_PI_2 {
        1.0
    } else {
        (1.0 / th.sin().abs()).min(1.0 + chi(n as f64 + 0.5))
    };
    let (mag, ratio) = order_factor(Family::K, nu, n);
    let first = mag * (-(n as f64) * z.modulus.ln()).exp();
    Ok(BoundBreakdown::new(
        first,
        factor,
        ratio,
        BoundSource::ComplexOrder,
    ))
}

/// The bound used when certifying a value: exact termination when the
/// coefficients vanish, otherwise the real- or complex-order estimate, and
/// for K and J Olver's bound when neither precondition holds.
pub fn best_bound(
    family: Family,
    z: SurfaceComplex,
    nu: Order,
    n: usize,
) -> Result<BoundBreakdown> {
    family.check_sector(z.argument)?;
    if vanishes_from(nu, n, family.is_derivative()) {
        return Ok(BoundBreakdown::exact());
    }
    let theorem = if nu.is_real() {
        bound_real_nu(family, z, nu.re, n)
    } else {
        bound_complex_nu(family, z, nu, n)
    };
    match (theorem, family) {
        (Ok(b), _) => Ok(b),
        (Err(Error::NoApplicableBound(_)), Family::K) => olver_bound(z, nu, n),
        (Err(Error::NoApplicableBound(_)), Family::J) => olver_bound_j(z, nu, n),
        (Err(e), _) => Err(e),
    }
}

/// Outcome of comparing a remainder with its first omitted term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignRatioReport {
    pub theta: f64,
    pub in_unit_interval: bool,
    pub sign_matches: bool,
    /// The first omitted term vanishes, so the expansion is exact and no
    /// ratio exists.
    pub exact: bool,
}

impl SignRatioReport {
    pub(crate) fn from_ratio(theta: f64) -> Self {
        SignRatioReport {
            theta,
            in_unit_interval: theta > 0.0 && theta < 1.0,
            sign_matches: theta > 0.0,
            exact: false,
        }
    }

    pub(crate) fn exact() -> Self {
        SignRatioReport {
            theta: 0.0,
            in_unit_interval: false,
            sign_matches: true,
            exact: true,
        }
    }
}

/// `θ = R_N / (±c_N(ν)/z^N)` on the positive axis, with the sign
/// `(−1)^{⌈N/2⌉}` for the J families.
pub fn sign_ratio_check(
    family: Family,
    z_pos: f64,
    nu_real: f64,
    n: usize,
    oracle_remainder: Complex64,
) -> Result<SignRatioReport> {
    if !(z_pos > 0.0 && z_pos.is_finite()) {
        return Err(domain(format!("z must be positive, got {z_pos}")));
    }
    precondition(family, nu_real, n)?;
    let c = family.coefficient(Order::real(nu_real), n).re;
    if c == 0.0 || vanishes_from(Order::real(nu_real), n, family.is_derivative()) {
        return Ok(SignRatioReport::exact());
    }
    let first = family.positive_axis_sign(n) * c / z_pos.powi(n as i32);
    Ok(SignRatioReport::from_ratio(oracle_remainder.re / first))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(r: f64, a: f64) -> SurfaceComplex {
        SurfaceComplex::new(r, a).unwrap()
    }

    #[test]
    fn positive_axis_is_first_term() {
        let b = bound_real_nu(Family::K, z(10.0, 0.0), 0.0, 5).unwrap();
        let a5 = coeff_a::<f64>(Order::real(0.0), 5).norm() / 1e5;
        assert!((b.total - a5).abs() < 1e-13 * a5);
        assert_eq!(b.sup_factor, 1.0);
        let b = bound_real_nu(Family::Jp, z(8.0, 0.0), 1.0, 3).unwrap();
        let b3 = coeff_b::<f64>(Order::real(1.0), 3).norm() / 512.0;
        assert!((b.total - b3).abs() < 1e-13 * b3);
    }

    #[test]
    fn csc_caps_the_factor() {
        let b = bound_real_nu(Family::K, z(10.0, 0.75 * PI), 0.0, 5).unwrap();
        assert!(b.sup_factor <= 2f64.sqrt() + 1e-12);
    }

    #[test]
    fn preconditions_are_enforced() {
        assert!(matches!(
            bound_real_nu(Family::K, z(5.0, 0.0), 3.0, 2),
            Err(Error::NoApplicableBound(_))
        ));
        assert!(bound_real_nu(Family::Kp, z(5.0, 0.0), 0.0, 0).is_err());
        assert!(bound_real_nu(Family::J, z(5.0, PI), 0.0, 2).is_err());
        assert!(olver_bound(z(5.0, 1.5 * PI), Order::real(0.0), 2).is_err());
    }

    #[test]
    fn complex_bound_reduces_for_real_order() {
        let c = bound_complex_nu(Family::K, z(7.0, 2.0), Order::real(0.3), 6).unwrap();
        let r = bound_real_nu(Family::K, z(7.0, 2.0), 0.3, 6).unwrap();
        assert_eq!(c.nu_ratio, 1.0);
        assert!(c.total >= r.total);
    }

    #[test]
    fn limiting_form_is_continuous() {
        let at = |re: f64| {
            let b = bound_complex_nu(Family::K, z(10.0, 0.0), Order { re, im: 2.0 }, 6).unwrap();
            b.first_term_mag * b.nu_ratio
        };
        let mid = at(0.5);
        for h in [1e-6, -1e-6] {
            assert!((at(0.5 + h) - mid).abs() < 1e-4 * mid);
        }
        let atb = |re: f64| {
            let b = bound_complex_nu(Family::Kp, z(10.0, 0.0), Order { re, im: 2.0 }, 6).unwrap();
            b.first_term_mag * b.nu_ratio
        };
        assert!((atb(1.5 + 1e-6) - atb(1.5)).abs() < 1e-4 * atb(1.5));
    }

    #[test]
    fn olver_special_cases() {
        let b = olver_bound(z(10.0, 0.0), Order::real(0.0), 0).unwrap();
        assert!((b.total - (1.0f64 / 40.0).exp()).abs() < 1e-15);
        // the factor 2 is dropped only on the positive axis with real order
        let real = olver_bound(z(10.0, 0.0), Order::real(1.0), 4).unwrap();
        let off = olver_bound(z(10.0, 1e-9), Order::real(1.0), 4).unwrap();
        assert!((off.total / real.total - 2.0).abs() < 1e-6);
    }

    #[test]
    fn sign_convention() {
        assert_eq!(Family::J.positive_axis_sign(1), -1.0);
        assert_eq!(Family::J.positive_axis_sign(2), -1.0);
        assert_eq!(Family::J.positive_axis_sign(3), 1.0);
        assert_eq!(Family::J.positive_axis_sign(4), 1.0);
        assert_eq!(Family::K.positive_axis_sign(3), 1.0);
        let r = sign_ratio_check(Family::K, 5.0, 0.5, 1, Complex64::new(0.0, 0.0)).unwrap();
        assert!(r.exact);
    }
}
