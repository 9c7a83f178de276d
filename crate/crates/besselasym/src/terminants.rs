//! The basic terminants
//!
//! ```text
//! Λ_p(w) = wᵖ eʷ Γ(1−p, w) = (1/Γ(p)) ∫_0^∞ t^{p−1} e^{−t} / (1 + t/w) dt
//! Π_p(w) = ½ (Λ_p(we^{iπ/2}) + Λ_p(we^{−iπ/2}))
//! ```
//!
//! on the Riemann surface of the logarithm, and the estimates for `|Λ_p|`,
//! `|Π_p|` that depend only on `p` and `arg w`.

use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use num_complex::Complex;
use statrs::function::gamma::ln_gamma as ln_gamma64;

use crate::error::{domain, Error, Result};
use crate::quad::{exp_sinh, QuadOptions};
use crate::scalar::{cexp, cis, ln_gamma, Real};
use crate::surface::SurfaceComplex;

/// How a terminant value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TerminantMethod {
    /// Quadrature along the positive real axis.
    RealAxis,
    /// Quadrature along the ray `arg t = ±arctan(p^{−1/2})`.
    RotatedContour,
    /// Reduction from `π < |arg w| < 3π/2` by the functional relation
    /// `Λ_p(w) = ±2πi e^{∓πip} wᵖ eʷ/Γ(p) + Λ_p(we^{∓2πi})`.
    Continuation,
    /// `Π_p` from its own real-axis integral with `1 + (t/w)²`.
    PiDirect,
    /// `Π_p` as the average of two `Λ_p` values.
    PiAverage,
}

impl TerminantMethod {
    pub fn tag(self) -> &'static str {
        match self {
            TerminantMethod::RealAxis => "real-axis-quadrature",
            TerminantMethod::RotatedContour => "rotated-contour",
            TerminantMethod::Continuation => "continuation",
            TerminantMethod::PiDirect => "pi-direct-quadrature",
            TerminantMethod::PiAverage => "pi-average",
        }
    }
}

impl fmt::Display for TerminantMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TerminantResult<T> {
    pub value: Complex<T>,
    pub est_abs_err: f64,
    pub method: TerminantMethod,
}

fn quad_opts<T: Real>() -> QuadOptions {
    let rel = (T::EPSILON * 32.0).max(1e-30);
    QuadOptions {
        abs_tol: 0.0,
        rel_tol: rel,
        max_level: 12,
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(domain(format!("terminant order must be positive, got {p}")));
    }
    Ok(())
}

/// `(1/Γ(p)) ∫_0^{∞e^{iφ}} t^{p−1} e^{−t} g(t) dt` for a kernel `g`.
fn ray_integral<T: Real, G>(p: f64, phi: f64, g: G) -> Result<(Complex<T>, f64)>
where
    G: Fn(Complex<T>) -> Complex<T>,
{
    let lg = ln_gamma::<T>(p);
    let pm1 = T::of(p - 1.0);
    let ray = cis(T::of(phi));
    let scale = T::of((p - 1.0).max(1.0) / phi.cos());
    let f = |s: T| {
        let t = ray * s;
        // t^{p−1} e^{−t} / Γ(p), kept in log form so that large p cannot overflow
        let log_mag = Complex::new(pm1 * s.ln() - lg, pm1 * T::of(phi)) - t;
        cexp(log_mag) * g(t)
    };
    let r = exp_sinh(f, scale, quad_opts::<T>());
    let value = r.value * ray;
    if !r.converged {
        return Err(Error::Accuracy {
            estimate: crate::scalar::to_c64(value),
            error_estimate: r.error,
        });
    }
    Ok((value, r.error))
}

/// `Λ_p(w)` for `p > 0`, `|arg w| < 3π/2`.
pub fn lambda_terminant<T: Real>(p: f64, w: SurfaceComplex) -> Result<TerminantResult<T>> {
    check_p(p)?;
    let theta = w.argument;
    if theta.abs() >= 1.5 * PI {
        return Err(Error::Sector {
            arg: theta,
            sector: "|arg w| < 3π/2",
        });
    }
    if theta < 0.0 {
        // Λ_p(w̄) = conj Λ_p(w) for real p
        let r = lambda_terminant::<T>(p, w.conj())?;
        return Ok(TerminantResult {
            value: r.value.conj(),
            ..r
        });
    }
    if theta > PI {
        // Λ_p(w) = 2πi e^{−πip} wᵖ eʷ / Γ(p) + Λ_p(we^{−2πi})
        let base = lambda_terminant::<T>(p, w.rotate(-2.0 * PI))?;
        let wc = w.to_complex::<T>();
        let log_term = Complex::new(
            T::of((2.0 * PI).ln()) - ln_gamma::<T>(p) + T::of(p * w.modulus.ln()) + wc.re,
            T::of(FRAC_PI_2 - PI * p + p * theta) + wc.im,
        );
        let extra = cexp(log_term);
        return Ok(TerminantResult {
            value: extra + base.value,
            est_abs_err: base.est_abs_err + crate::scalar::cabs(extra) * 1e2 * T::EPSILON,
            method: TerminantMethod::Continuation,
        });
    }
    let wc = w.to_complex::<T>();
    let kernel = |t: Complex<T>| Complex::new(T::one(), T::zero()) / (t / wc + T::one());
    let (value, err, method) = if theta <= FRAC_PI_2 {
        let (v, e) = ray_integral::<T, _>(p, 0.0, kernel)?;
        (v, e, TerminantMethod::RealAxis)
    } else {
        let phi = p.powf(-0.5).atan();
        let (v, e) = ray_integral::<T, _>(p, phi, kernel)?;
        (v, e, TerminantMethod::RotatedContour)
    };
    Ok(TerminantResult {
        value,
        est_abs_err: err,
        method,
    })
}

/// `Π_p(w)` for `p > 0`, `|arg w| < π`.
pub fn pi_terminant<T: Real>(p: f64, w: SurfaceComplex) -> Result<TerminantResult<T>> {
    check_p(p)?;
    let theta = w.argument;
    if theta.abs() >= PI {
        return Err(Error::Sector {
            arg: theta,
            sector: "|arg w| < π",
        });
    }
    if theta.abs() <= FRAC_PI_4 {
        // poles at t = ±iw stay at least π/4 away from the real axis
        let wc = w.to_complex::<T>();
        let kernel = |t: Complex<T>| {
            let q = t / wc;
            Complex::new(T::one(), T::zero()) / (q * q + T::one())
        };
        let (value, err) = ray_integral::<T, _>(p, 0.0, kernel)?;
        return Ok(TerminantResult {
            value,
            est_abs_err: err,
            method: TerminantMethod::PiDirect,
        });
    }
    let a = lambda_terminant::<T>(p, w.rotate(FRAC_PI_2))?;
    let b = lambda_terminant::<T>(p, w.rotate(-FRAC_PI_2))?;
    Ok(TerminantResult {
        value: (a.value + b.value) * T::of(0.5),
        est_abs_err: 0.5 * (a.est_abs_err + b.est_abs_err),
        method: TerminantMethod::PiAverage,
    })
}

/// `χ(p) = √π Γ(p/2+1) / Γ(p/2+½)`.
pub fn chi(p: f64) -> f64 {
    (0.5 * PI.ln() + ln_gamma64(0.5 * p + 1.0) - ln_gamma64(0.5 * p + 0.5)).exp()
}

/// `Γ(p/2+1)·F(½, p/2; p/2+1; x)` with the regularized `F`, i.e. the plain
/// Gauss series `₂F₁(½, p/2; p/2+1; x)`, for `0 ≤ x ≤ 1`.
pub fn hyp_bound_kernel(p: f64, x: f64) -> f64 {
    assert!((0.0..=1.0).contains(&x), "kernel argument outside [0, 1]");
    let h = 0.5 * p;
    if x == 1.0 {
        return chi(p);
    }
    if x < 0.999 {
        // Σ (½)_k/k! · h/(h+k) · x^k, all terms positive
        let mut c = 1.0; // (½)_k / k!
        let mut xk = 1.0;
        let mut sum = 1.0;
        let mut k = 0.0;
        loop {
            c *= (k + 0.5) / (k + 1.0);
            xk *= x;
            k += 1.0;
            let term = c * xk * h / (h + k);
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
        }
        return sum;
    }
    // near x = 1: χ(p) x^{−p/2} − p √(1−x) ₂F₁(p/2+½, 1; 3/2; 1−x)
    let y = 1.0 - x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        term *= (h + 0.5 + k) * y / (1.5 + k);
        k += 1.0;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    chi(p) * x.powf(-h) - p * y.sqrt() * sum
}

/// The minimizing angle of the rotated-contour estimates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeijerAngle {
    pub p: f64,
    pub theta: f64,
    pub phi: f64,
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> Result<f64> {
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(domain("no sign change on the bracketing interval"));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// φ solving `(p+1)cos(θ − 2φ) = (p−1)cos θ` on its prescribed interval,
/// for `π/2 < |θ| < 3π/2`.
pub fn solve_meijer_angle(p: f64, theta: f64) -> Result<MeijerAngle> {
    check_p(p)?;
    let t = theta.abs();
    if !(t > FRAC_PI_2 && t < 1.5 * PI) {
        return Err(domain(format!(
            "Meijer angle needs π/2 < |θ| < 3π/2, got {theta}"
        )));
    }
    let (lo, hi) = if t < PI {
        (0.0, t - FRAC_PI_2)
    } else {
        (t - PI, FRAC_PI_2)
    };
    let phi = bisect(
        |f| (p + 1.0) * (t - 2.0 * f).cos() - (p - 1.0) * t.cos(),
        lo,
        hi,
    )?;
    Ok(MeijerAngle {
        p,
        theta,
        phi: phi.copysign(theta),
    })
}

/// φ′ solving `(p+2)cos(2θ − 3φ′) = (p−2)cos(2θ − φ′)` on its prescribed
/// interval, for `π/4 < |θ| < π`.
pub fn solve_meijer_angle_pi(p: f64, theta: f64) -> Result<MeijerAngle> {
    check_p(p)?;
    let t = theta.abs();
    if !(t > FRAC_PI_4 && t < PI) {
        return Err(domain(format!(
            "primed Meijer angle needs π/4 < |θ| < π, got {theta}"
        )));
    }
    let (lo, hi) = if t < FRAC_PI_2 {
        (0.0, t - FRAC_PI_4)
    } else if t < 0.75 * PI {
        (t - FRAC_PI_2, t - FRAC_PI_4)
    } else {
        (t - FRAC_PI_2, FRAC_PI_2)
    };
    let phi = bisect(
        |f| (p + 2.0) * (2.0 * t - 3.0 * f).cos() - (p - 2.0) * (2.0 * t - f).cos(),
        lo,
        hi,
    )?;
    Ok(MeijerAngle {
        p,
        theta,
        phi: phi.copysign(theta),
    })
}

fn meijer_lambda(p: f64, theta: f64) -> Result<f64> {
    let m = solve_meijer_angle(p, theta)?;
    Ok(1.0 / ((theta - m.phi).sin().abs() * m.phi.cos().powf(p)))
}

fn meijer_pi(p: f64, theta: f64) -> Result<f64> {
    let m = solve_meijer_angle_pi(p, theta)?;
    Ok(1.0 / ((2.0 * (theta - m.phi)).sin().abs() * m.phi.cos().powf(p)))
}

fn min_finite(xs: &[f64]) -> f64 {
    xs.iter()
        .copied()
        .filter(|x| x.is_finite() && *x > 0.0)
        .fold(f64::INFINITY, f64::min)
}

/// Upper bound for `sup_{|w|} |Λ_p(w)|` at fixed `arg w = θ`, `|θ| < 3π/2`.
pub fn sup_lambda_bound(p: f64, theta: f64) -> Result<f64> {
    check_p(p)?;
    let t = theta.abs();
    if t >= 1.5 * PI {
        return Err(Error::Sector {
            arg: theta,
            sector: "|arg w| < 3π/2",
        });
    }
    if t <= FRAC_PI_2 {
        return Ok(1.0);
    }
    if t <= PI {
        let csc = 1.0 / t.sin().abs();
        let saddle = (E * (p + 0.5)).sqrt();
        let hyp = 1.0 + hyp_bound_kernel(p, t.cos().powi(2));
        let meijer = meijer_lambda(p, t).unwrap_or(f64::INFINITY);
        return Ok(min_finite(&[csc, saddle, hyp, meijer]));
    }
    let meijer = meijer_lambda(p, t).unwrap_or(f64::INFINITY);
    let reduced =
        (2.0 * PI * p).sqrt() / t.cos().abs().powf(p) + sup_lambda_bound(p, t - 2.0 * PI)?;
    Ok(min_finite(&[meijer, reduced]))
}

/// Upper bound for `sup_{|w|} |Π_p(w)|` at fixed `arg w = θ`, `|θ| < π`.
pub fn sup_pi_bound(p: f64, theta: f64) -> Result<f64> {
    check_p(p)?;
    let t = theta.abs();
    if t >= PI {
        return Err(Error::Sector {
            arg: theta,
            sector: "|arg w| < π",
        });
    }
    if t <= FRAC_PI_4 {
        return Ok(1.0);
    }
    if t <= FRAC_PI_2 {
        let csc = 1.0 / (2.0 * t).sin().abs();
        let saddle = (E / 4.0 * (p + 1.5)).sqrt();
        let hyp = 1.0 + 0.5 * hyp_bound_kernel(p, t.sin().powi(2));
        let meijer = meijer_pi(p, t).unwrap_or(f64::INFINITY);
        return Ok(min_finite(&[csc, saddle, hyp, meijer]));
    }
    let meijer = meijer_pi(p, t).unwrap_or(f64::INFINITY);
    let reduced = (2.0 * PI * p).sqrt() / (2.0 * t.sin().abs().powf(p)) + sup_pi_bound(p, t - PI)?;
    Ok(min_finite(&[meijer, reduced]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::Dd;

    fn w(r: f64, a: f64) -> SurfaceComplex {
        SurfaceComplex::new(r, a).unwrap()
    }

    #[test]
    fn lambda_one_is_scaled_exponential_integral() {
        // e·E₁(1), E₁(1) = 0.21938393439552027368
        let v = lambda_terminant::<f64>(1.0, w(1.0, 0.0)).unwrap().value;
        assert!((v.re - 0.596_347_362_323_194_1).abs() < 1e-14, "{v}");
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn double_double_agrees_with_f64() {
        let a = lambda_terminant::<f64>(3.5, w(2.0, 2.5)).unwrap().value;
        let b = lambda_terminant::<Dd>(3.5, w(2.0, 2.5)).unwrap().value;
        let d = (a - crate::scalar::to_c64(b)).norm();
        assert!(d < 1e-13 * a.norm(), "{a} {b:?} {d}");
    }

    #[test]
    fn chi_small_values() {
        assert!((chi(1.0) - FRAC_PI_2).abs() < 1e-14);
        assert!((chi(2.0) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn meijer_closed_forms_at_pi() {
        assert!((solve_meijer_angle(1.0, PI).unwrap().phi - FRAC_PI_4).abs() < 1e-13);
        assert!((solve_meijer_angle(3.0, PI).unwrap().phi - PI / 6.0).abs() < 1e-13);
        let m = solve_meijer_angle(3.0, -PI).unwrap();
        assert!((m.phi + PI / 6.0).abs() < 1e-13);
    }

    #[test]
    fn kernel_end_points() {
        assert_eq!(hyp_bound_kernel(3.0, 0.0), 1.0);
        assert!((hyp_bound_kernel(7.0, 1.0) - chi(7.0)).abs() < 1e-14);
        // both branches agree where they meet
        let a = hyp_bound_kernel(6.0, 0.998_999_999);
        let b = hyp_bound_kernel(6.0, 0.999);
        assert!((a - b).abs() < 1e-6);
    }

    #[test]
    fn sup_bound_domains() {
        assert!(sup_lambda_bound(2.0, 1.5 * PI).is_err());
        assert!(sup_pi_bound(2.0, PI).is_err());
        assert_eq!(sup_lambda_bound(7.0, PI / 3.0).unwrap(), 1.0);
        assert_eq!(sup_pi_bound(3.0, 0.2).unwrap(), 1.0);
    }
}
