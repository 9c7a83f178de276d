//! Integral representations of the remainders, used as cross-checks.
//!
//! The terminant form with the free parameter fixed at `λ = ½`, after the
//! substitution `t = sinh² u` turns the hypergeometric kernel into
//! `cosh(2νu)/cosh u`:
//!
//! ```text
//! R_N^K(z) = (−1)^N cos(πν)/π · Γ(N+½)/2^N · z^{−N}
//!            · ∫_0^∞ (2/√π) cosh(2νu)/cosh^{2N+1}u · Λ_{N+½}(2z cosh²u) du
//! ```
//!
//! and the Stieltjes form with `K_ν` itself under the integral:
//!
//! ```text
//! R_N^K(z) = (−1)^N √(2/π) cos(πν)/π · z^{−N} ∫_0^∞ t^{N−½} e^{−t} K_ν(t)/(1 + t/z) dt
//! ```
//!
//! J replaces `Λ` by `Π`, `1/(1 + t/z)` by `1/(1 + t²/z²)` and the sign by
//! `(−1)^{⌊N/2⌋}`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use crate::bounds::Family;
use crate::error::{domain, Error, Result};
use crate::quad::{exp_sinh, QuadOptions, QuadResult};
use crate::surface::{Order, SurfaceComplex};
use crate::terminants::{lambda_terminant, pi_terminant};

const QUAD_TOL_VAR: &str = "BESSELASYM_QUAD_TOL";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralRepConfig {
    /// Only `½` is implemented; other values are rejected.
    pub lambda: f64,
    pub quad_abs_tol: f64,
    /// Upper limit on integrand evaluations of the outer quadrature.
    pub max_nodes: usize,
}

impl Default for IntegralRepConfig {
    /// Tolerance from `BESSELASYM_QUAD_TOL` when set and valid, else `1e-12`.
    fn default() -> Self {
        let tol = std::env::var(QUAD_TOL_VAR)
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|t| *t > 0.0);
        IntegralRepConfig {
            lambda: 0.5,
            quad_abs_tol: tol.unwrap_or(1e-12),
            max_nodes: 20_000,
        }
    }
}

impl IntegralRepConfig {
    fn check(&self) -> Result<()> {
        if self.lambda != 0.5 {
            return Err(domain(format!(
                "only λ = 1/2 is implemented, got {}",
                self.lambda
            )));
        }
        if self.quad_abs_tol.is_nan() || self.quad_abs_tol <= 0.0 {
            return Err(domain("quadrature tolerance must be positive"));
        }
        Ok(())
    }

    fn opts(&self) -> QuadOptions {
        QuadOptions {
            abs_tol: self.quad_abs_tol,
            rel_tol: 1e-14,
            max_level: 12,
        }
    }

    fn accept(&self, r: QuadResult<f64>) -> Result<Complex64> {
        if !r.converged || r.evaluations > self.max_nodes {
            return Err(Error::Accuracy {
                estimate: r.value,
                error_estimate: r.error,
            });
        }
        Ok(r.value)
    }
}

fn parity(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn convergence(nu: Order, n: usize) -> Result<()> {
    if nu.re.abs() < n as f64 + 0.5 {
        Ok(())
    } else {
        Err(domain(format!(
            "the integral needs |Re ν| < N + 1/2; got Re ν = {}, N = {n}",
            nu.re
        )))
    }
}

fn cos_pi(nu: Order) -> Complex64 {
    (nu.to_complex::<f64>() * PI).cos()
}

fn z_pow_neg(z: SurfaceComplex, n: usize) -> Complex64 {
    Complex64::from_polar(z.modulus.powi(-(n as i32)), -(n as f64) * z.argument)
}

/// `(2/√π) cosh(2νu) / cosh^{2N+1} u`, in logarithms.
fn kernel(nu: Complex64, n: usize, u: f64) -> Complex64 {
    // ln cosh u = u + ln(1 + e^{−2u}) − ln 2
    let ln_cosh = u + (-2.0 * u).exp().ln_1p() - 2f64.ln();
    let c = ((2.0 * nu * u).exp() + (-2.0 * nu * u).exp()) * 0.5;
    c * ((2.0 / PI.sqrt()).ln() - (2 * n + 1) as f64 * ln_cosh).exp()
}

fn thm1(
    z: SurfaceComplex,
    nu: Order,
    n: usize,
    cfg: &IntegralRepConfig,
    oscillatory: bool,
) -> Result<Complex64> {
    cfg.check()?;
    convergence(nu, n)?;
    let c = cos_pi(nu);
    if c == Complex64::new(0.0, 0.0) {
        return Ok(c);
    }
    let v = nu.to_complex::<f64>();
    let p = n as f64 + 0.5;
    let mut failure = None;
    let f = |u: f64| {
        let ch = u.cosh();
        let w = z.scale(2.0 * ch * ch);
        let t = if oscillatory {
            pi_terminant::<f64>(p, w)
        } else {
            lambda_terminant::<f64>(p, w)
        };
        match t {
            Ok(t) => kernel(v, n, u) * t.value,
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let r = exp_sinh(f, 1.0, cfg.opts());
    if let Some(e) = failure {
        return Err(e);
    }
    let integral = cfg.accept(r)?;
    let sign = if oscillatory {
        parity(n / 2)
    } else {
        parity(n)
    };
    let pre = (ln_gamma(p) - n as f64 * 2f64.ln()).exp() / PI;
    Ok(integral * c * z_pow_neg(z, n) * (sign * pre))
}

#[allow(non_snake_case)]
pub fn remainder_K_via_thm1(
    z: SurfaceComplex,
    nu: Order,
    n: usize,
    cfg: IntegralRepConfig,
) -> Result<Complex64> {
    if z.argument.abs() >= 1.5 * PI {
        return Err(Error::Sector {
            arg: z.argument,
            sector: "|arg z| < 3π/2",
        });
    }
    thm1(z, nu, n, &cfg, false)
}

#[allow(non_snake_case)]
pub fn remainder_J_via_thm1(
    z: SurfaceComplex,
    nu: Order,
    n: usize,
    cfg: IntegralRepConfig,
) -> Result<Complex64> {
    if z.argument.abs() >= PI {
        return Err(Error::Sector {
            arg: z.argument,
            sector: "|arg z| < π",
        });
    }
    thm1(z, nu, n, &cfg, true)
}

/// `K_ν(t)` and `K′_ν(t)` for `t > 0` from `∫_0^∞ e^{−t cosh s} cosh(νs) ds`.
fn k_real(t: f64, nu: Complex64, opts: QuadOptions) -> (Complex64, Complex64) {
    // e^{-t} is factored out to keep both integrals O(1)-scaled
    let k = exp_sinh(
        |s: f64| (-t * (s.cosh() - 1.0)).exp() * (nu * s).cosh(),
        1.0,
        opts,
    )
    .value;
    let kp = exp_sinh(
        |s: f64| -(-t * (s.cosh() - 1.0)).exp() * s.cosh() * (nu * s).cosh(),
        1.0,
        opts,
    )
    .value;
    (k, kp)
}

/// Stieltjes-type representation with `K_ν` (or `K′_ν` for the derivative
/// families) as the density.
pub fn remainder_via_boyd(
    family: Family,
    z: SurfaceComplex,
    nu: Order,
    n: usize,
    cfg: IntegralRepConfig,
) -> Result<Complex64> {
    cfg.check()?;
    let (w, label) = if family.is_oscillatory() {
        (FRAC_PI_2, "|arg z| < π/2")
    } else {
        (PI, "|arg z| < π")
    };
    if z.argument.abs() >= w {
        return Err(Error::Sector {
            arg: z.argument,
            sector: label,
        });
    }
    if family.is_derivative() {
        if nu.re.abs().is_nan() || nu.re.abs() >= n as f64 - 0.5 {
            return Err(domain(format!(
                "the integral needs |Re ν| < N − 1/2; got Re ν = {}, N = {n}",
                nu.re
            )));
        }
    } else {
        convergence(nu, n)?;
    }
    let c = cos_pi(nu);
    if c == Complex64::new(0.0, 0.0) {
        return Ok(c);
    }
    let v = nu.to_complex::<f64>();
    let zc = z.to_complex::<f64>();
    let inner = QuadOptions {
        abs_tol: 0.0,
        rel_tol: 1e-14,
        max_level: 12,
    };
    let pm = n as f64 - 0.5;
    let f = |t: f64| {
        let (k, kp) = k_real(t, v, inner);
        let dens = if family.is_derivative() { -kp } else { k };
        let q = t / zc;
        let denom = if family.is_oscillatory() {
            1.0 + q * q
        } else {
            1.0 + q
        };
        // t^{N−½} e^{−2t}: one e^{−t} from the density's scaling
        dens * (pm * t.ln() - 2.0 * t).exp() / denom
    };
    let integral = cfg.accept(exp_sinh(f, pm.max(1.0) / 2.0, cfg.opts()))?;
    let sign = match family {
        Family::K => parity(n),
        Family::Kp => parity(n + 1),
        Family::J => parity(n / 2),
        Family::Jp => parity(n / 2 + 1),
    };
    Ok(integral * c * z_pow_neg(z, n) * (sign * (2.0 / PI).sqrt() / PI))
}

/// `a_N(ν)` from the `λ = ½` moment integral, as an independent check on the
/// recurrence.
pub fn coeff_a_via_integral(nu: Order, n: usize, cfg: IntegralRepConfig) -> Result<Complex64> {
    cfg.check()?;
    convergence(nu, n)?;
    let v = nu.to_complex::<f64>();
    let integral = cfg.accept(exp_sinh(|u: f64| kernel(v, n, u), 1.0, cfg.opts()))?;
    let pre = parity(n) * (ln_gamma(n as f64 + 0.5) - n as f64 * 2f64.ln()).exp() / PI;
    Ok(integral * cos_pi(nu) * pre)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::coeff_a;

    #[test]
    fn coefficient_moments() {
        let cfg = IntegralRepConfig::default();
        for &nu in &[
            Order::real(0.0),
            Order::real(0.3),
            Order::new(1.0, 0.5).unwrap(),
        ] {
            for n in 2..6 {
                let a = coeff_a::<f64>(nu, n);
                let b = coeff_a_via_integral(nu, n, cfg).unwrap();
                assert!((a - b).norm() <= 1e-11 * a.norm(), "{nu:?} {n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn kernel_is_positive_for_real_order() {
        for &x in &[0.0, 0.25, 1.7] {
            for i in 0..50 {
                let u = i as f64 * 0.3;
                assert!(kernel(Complex64::new(x, 0.0), 2, u).re > 0.0);
            }
        }
    }

    #[test]
    fn rejects_other_lambda_and_divergent_orders() {
        let z = SurfaceComplex::real(5.0).unwrap();
        let cfg = IntegralRepConfig {
            lambda: 1.0,
            ..Default::default()
        };
        assert!(remainder_K_via_thm1(z, Order::real(0.0), 3, cfg).is_err());
        assert!(coeff_a_via_integral(Order::real(2.0), 1, IntegralRepConfig::default()).is_err());
    }

    #[test]
    fn half_order_vanishes() {
        let z = SurfaceComplex::real(3.0).unwrap();
        let r = remainder_K_via_thm1(z, Order::real(0.5), 1, IntegralRepConfig::default()).unwrap();
        assert!(r.norm() < 1e-15);
    }
}
