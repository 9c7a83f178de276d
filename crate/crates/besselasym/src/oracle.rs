//! Double-double reference values for the whole Bessel family.
//!
//! Everything is reduced to `K_ν` and `K′_ν`, evaluated from the Laplace
//! integral
//!
//! ```text
//! K_ν(z) = (π/2z)^{1/2} e^{−z} / Γ(ν+½) · ∫_0^∞ e^{−t} t^{ν−½} (1 + t/2z)^{ν−½} dt
//! ```
//!
//! (ℜν ≥ 0 after `K_{−ν} = K_ν`). The integration ray is turned by
//! `φ = (|arg z| − π/2)/2` once `|arg z| > π/2`, which keeps it strictly
//! between the decay limit and the branch point at `t = −2z` and continues
//! the formula to `|arg z| < 3π/2` without cancellation. The other functions
//! follow from the connection formulae. This module deliberately shares no
//! code with the asymptotic machinery.

use std::f64::consts::PI;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::dd::Dd;
use crate::error::{domain, Error, Result};
use crate::expansions::ExpansionKind;
use crate::quad::{exp_sinh, tanh_sinh, QuadOptions};
use crate::scalar::{cabs, cexp, cis, cln, to_c64};
use crate::surface::{Order, SurfaceComplex};

type C = Complex<Dd>;

/// Largest modulus accepted by [`reference`].
pub const MAX_MODULUS: f64 = 60.0;
/// Largest |ν| accepted by [`reference`].
pub const MAX_ORDER: f64 = 8.0;

/// An extended-precision reference value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleValue {
    pub value: C,
    /// Decimal digits the quadrature error estimate vouches for.
    pub guaranteed_digits: u32,
}

impl OracleValue {
    pub fn to_c64(self) -> Complex<f64> {
        to_c64(self.value)
    }

    fn scaled(self, c: C) -> OracleValue {
        OracleValue {
            value: self.value * c,
            guaranteed_digits: self.guaranteed_digits,
        }
    }

    fn combine(a: OracleValue, ca: C, b: OracleValue, cb: C) -> OracleValue {
        let va = a.value * ca;
        let vb = b.value * cb;
        let v = va + vb;
        // absolute errors add; cancellation between the two terms costs digits
        let err = cabs(va) * 10f64.powi(-(a.guaranteed_digits as i32))
            + cabs(vb) * 10f64.powi(-(b.guaranteed_digits as i32));
        OracleValue {
            value: v,
            guaranteed_digits: digits(err, cabs(v)),
        }
    }
}

pub(crate) fn digits(err: f64, mag: f64) -> u32 {
    if mag == 0.0 {
        return 0;
    }
    let rel = (err / mag).max(1e-31);
    (-rel.log10()).floor().clamp(0.0, 31.0) as u32
}

fn dd(x: f64) -> Dd {
    Dd::from_f64(x)
}

fn c(re: f64, im: f64) -> C {
    Complex::new(dd(re), dd(im))
}

fn pi_times(x: f64) -> Dd {
    Dd::PI * dd(x)
}

fn check_envelope(z: SurfaceComplex, nu: Order) -> Result<()> {
    if z.modulus > MAX_MODULUS || nu.abs() > MAX_ORDER {
        return Err(domain(format!(
            "oracle envelope is |z| ≤ {MAX_MODULUS}, |ν| ≤ {MAX_ORDER}; got |z| = {}, |ν| = {}",
            z.modulus,
            nu.abs()
        )));
    }
    Ok(())
}

// ln Γ(w) for ℜw > 0: shift until |w| ≥ 40, then Stirling with B_2..B_24.
const BERNOULLI: [(f64, f64); 12] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
];

/// `Γ(w)` in double-double for `ℜw > 0`.
pub fn gamma_dd(w: C) -> C {
    let mut x = w;
    let mut prod = C::one();
    while cabs(x) < 40.0 {
        prod *= x;
        x += C::one();
    }
    let half = dd(0.5);
    let two_pi = Dd::PI * dd(2.0);
    let lx = cln(x);
    let mut s = (x - half) * lx - x + two_pi.ln() * half;
    let inv = C::one() / x;
    let inv2 = inv * inv;
    let mut p = inv;
    for (k, &(num, den)) in BERNOULLI.iter().enumerate() {
        let k2 = (2 * k + 2) as f64;
        s += p * (dd(num) / (dd(den) * dd(k2 * (k2 - 1.0))));
        p *= inv2;
    }
    cexp(s) / prod
}

fn oracle_quad() -> QuadOptions {
    QuadOptions {
        abs_tol: 0.0,
        rel_tol: 1e-31,
        max_level: 13,
    }
}

/// `K_ν(z)` and `K′_ν(z)` for `|arg z| < 3π/2`.
pub fn bessel_k_pair(z: SurfaceComplex, nu: Order) -> Result<(OracleValue, OracleValue)> {
    k_pair_turned(z, 0, nu)
}

/// The point `z e^{iqπ/2}` with its argument held in double-double, so that
/// rotations by multiples of π/2 cost nothing.
#[derive(Clone, Copy)]
struct Point {
    modulus: f64,
    theta: Dd,
}

impl Point {
    fn approx_arg(self) -> f64 {
        self.theta.to_f64()
    }
    fn to_complex(self) -> C {
        cis(self.theta) * dd(self.modulus)
    }
}

/// `K_ν` and `K′_ν` at `z·e^{iqπ/2}`, with the quarter turns added in
/// double-double rather than to the rounded argument.
pub fn k_pair_turned(
    z: SurfaceComplex,
    quarter_turns: i32,
    nu: Order,
) -> Result<(OracleValue, OracleValue)> {
    check_envelope(z, nu)?;
    let p = Point {
        modulus: z.modulus,
        theta: dd(z.argument) + Dd::FRAC_PI_2 * dd(quarter_turns as f64),
    };
    let theta = p.approx_arg();
    if theta.abs() >= 1.5 * PI {
        return Err(Error::Sector {
            arg: theta,
            sector: "|arg z| < 3π/2",
        });
    }
    let nu = if nu.re < 0.0 { -nu } else { nu };
    if theta < 0.0 {
        // K_ν(z̄) = conj K_ν̄(z)
        let (k, kp) = k_pair_turned(
            z.conj(),
            -quarter_turns,
            Order {
                re: nu.re,
                im: -nu.im,
            },
        )?;
        let cj = |o: OracleValue| OracleValue {
            value: o.value.conj(),
            ..o
        };
        return Ok((cj(k), cj(kp)));
    }

    let v = nu.to_complex::<Dd>();
    let half = dd(0.5);
    let vm = v - half;
    let zc = p.to_complex();
    let two_z = zc * dd(2.0);
    let (f, fd, err_f, err_fd) = laplace_integrals(p, vm)?;

    // (π/2z)^{1/2} on the sheet of z
    let sqrt_pref = cis(-p.theta * half) * (Dd::PI / (dd(2.0) * dd(p.modulus))).sqrt();
    let pref = cexp(-zc) * sqrt_pref / gamma_dd(v + half);
    let k = pref * f;
    // d/dz [(π/2z)^{1/2} e^{−z}] = −(1/2z + 1)(π/2z)^{1/2} e^{−z}
    let kp = k * (-(C::one() / two_z) - C::one()) + pref * fd;

    // the shifted Stirling sum exponentiates ln Γ of size ~150
    const GAMMA_REL: f64 = 1e-29;
    let rel_f = err_f / cabs(f) + GAMMA_REL;
    let kd = digits(rel_f * cabs(k), cabs(k));
    let kp_err = cabs(k) * rel_f * (1.0 + 1.0 / (2.0 * z.modulus))
        + cabs(pref * fd) * (err_fd / cabs(fd).max(1e-300) + GAMMA_REL);
    let kpd = digits(kp_err, cabs(kp));
    Ok((
        OracleValue {
            value: k,
            guaranteed_digits: kd,
        },
        OracleValue {
            value: kp,
            guaranteed_digits: kpd,
        },
    ))
}

/// `∫ e^{−t} t^{ν−½} (1+t/2z)^{ν−½} dt` and its z-derivative, for
/// `0 ≤ arg z < 3π/2`, with their error estimates.
///
/// Up to `arg z = π` a single ray suffices. Beyond, the branch point
/// `B = −2z` drifts towards the imaginary axis and the path instead runs
/// `0 → B + iρe^{iβ} → B + ρe^{iβ} → +∞` (β = arg B), passing round the far
/// side of `B` at distance ρ while `|e^{−t}| ≤ e^ρ` throughout.
fn laplace_integrals(p: Point, vm: C) -> Result<(C, C, f64, f64)> {
    let theta = p.approx_arg();
    let zc = p.to_complex();
    let two_z = zc * dd(2.0);
    let opts = oracle_quad();
    let beta = p.theta - Dd::PI;
    let b = -two_z;
    let ln_b = dd(2.0 * p.modulus).ln();

    // log(1 + t/2z), continuous along whichever path is in use
    let log_w = move |t: C| -> C {
        if theta <= PI {
            cln(C::one() + t / two_z)
        } else {
            let l = cln(b - t);
            Complex::new(l.re - ln_b, l.im - beta)
        }
    };
    let integrand = move |t: C, deriv: bool| -> C {
        let lw = log_w(t);
        let base = -t + vm * cln(t);
        if deriv {
            // ∂/∂z (1+t/2z)^{ν−½} = (ν−½)(1+t/2z)^{ν−3/2} · (−t/2z²)
            cexp(base + (vm - C::one()) * lw) * vm * (-t / (two_z * zc))
        } else {
            cexp(base + vm * lw)
        }
    };

    let scale = vm.re.to_f64().max(0.0) + 1.5;
    let mut out = [C::zero(); 2];
    let mut errs = [0.0f64; 2];
    for deriv in [false, true] {
        let (val, err, ok) = if theta <= 0.5 * PI {
            let r = exp_sinh(
                |s: Dd| integrand(Complex::new(s, Dd::ZERO), deriv),
                dd(scale),
                opts,
            );
            (r.value, r.error, r.converged)
        } else if theta <= PI {
            let phi = (theta - 0.5 * PI) / 2.0;
            let ray = cis(dd(phi));
            let r = exp_sinh(
                |s: Dd| integrand(ray * s, deriv),
                dd(scale / phi.cos()),
                opts,
            );
            (r.value * ray, r.error, r.converged)
        } else {
            let rho = 2.0f64.min(p.modulus);
            let eb = cis(beta);
            let p1 = b + eb * c(0.0, rho);
            let p2 = b + eb * dd(rho);
            let seg = |a: C, e: C| {
                let d = e - a;
                let r = tanh_sinh(|x: Dd| integrand(a + d * x, deriv), Dd::ZERO, Dd::ONE, opts);
                (r.value * d, r.error * cabs(d), r.converged)
            };
            let (v1, e1, c1) = seg(C::zero(), p1);
            let (v2, e2, c2) = seg(p1, p2);
            let r3 = exp_sinh(|s: Dd| integrand(p2 + s, deriv), Dd::ONE, opts);
            (
                v1 + v2 + r3.value,
                e1 + e2 + r3.error,
                c1 && c2 && r3.converged,
            )
        };
        if !ok {
            return Err(Error::Accuracy {
                estimate: to_c64(val),
                error_estimate: err,
            });
        }
        out[deriv as usize] = val;
        errs[deriv as usize] = err;
    }
    Ok((out[0], out[1], errs[0], errs[1]))
}

pub fn bessel_k(z: SurfaceComplex, nu: Order) -> Result<OracleValue> {
    Ok(bessel_k_pair(z, nu)?.0)
}

pub fn bessel_k_prime(z: SurfaceComplex, nu: Order) -> Result<OracleValue> {
    Ok(bessel_k_pair(z, nu)?.1)
}

/// Reference value of the function that `kind` expands, at `(z, ν)`.
pub fn reference(kind: ExpansionKind, z: SurfaceComplex, nu: Order) -> Result<OracleValue> {
    use ExpansionKind::*;
    check_envelope(z, nu)?;
    kind.check_sector(z.argument)?;
    let d = kind.is_derivative();
    let pick = |p: (OracleValue, OracleValue)| if d { p.1 } else { p.0 };
    let i_over_pi = C::new(Dd::ZERO, Dd::ONE / Dd::PI);
    let inv_pi = C::new(Dd::ONE / Dd::PI, Dd::ZERO);
    let e_nu = |s: f64| cis(pi_times(s * nu.re)) * (-pi_times(s * nu.im)).exp();
    match kind {
        K | Kp => Ok(pick(bessel_k_pair(z, nu)?)),
        IUpper | IpUpper => {
            // I = −(i/π) K(ze^{−πi}) + (i/π) e^{πiν} K(z); the derivative
            // flips the sign of the rotated term via the chain rule
            let rot = pick(k_pair_turned(z, -2, nu)?);
            let base = pick(bessel_k_pair(z, nu)?);
            let s = if d { i_over_pi } else { -i_over_pi };
            Ok(OracleValue::combine(rot, s, base, i_over_pi * e_nu(1.0)))
        }
        ILower | IpLower => {
            // I = (i/π) K(ze^{πi}) − (i/π) e^{−πiν} K(z)
            let rot = pick(k_pair_turned(z, 2, nu)?);
            let base = pick(bessel_k_pair(z, nu)?);
            let s = if d { -i_over_pi } else { i_over_pi };
            Ok(OracleValue::combine(rot, s, base, -i_over_pi * e_nu(-1.0)))
        }
        J | Jp | Y | Yp | H1 | H1p | H2 | H2p => {
            let minus = || k_pair_turned(z, -1, nu).map(pick);
            let plus = || k_pair_turned(z, 1, nu).map(pick);
            let em = e_nu(-0.5);
            let ep = e_nu(0.5);
            let i = C::new(Dd::ZERO, Dd::ONE);
            let two_over_pi = inv_pi * dd(2.0);
            Ok(match kind {
                // πi J = e^{−πiν/2} K(ze^{−iπ/2}) − e^{πiν/2} K(ze^{iπ/2})
                J => OracleValue::combine(minus()?, -i_over_pi * em, plus()?, i_over_pi * ep),
                // J′ = −(1/π)(e^{−πiν/2} K′(ze^{−iπ/2}) + e^{πiν/2} K′(ze^{iπ/2}))
                Jp => OracleValue::combine(minus()?, -inv_pi * em, plus()?, -inv_pi * ep),
                // −π Y = e^{−πiν/2} K(ze^{−iπ/2}) + e^{πiν/2} K(ze^{iπ/2})
                Y => OracleValue::combine(minus()?, -inv_pi * em, plus()?, -inv_pi * ep),
                // −π Y′ = −i e^{−πiν/2} K′(ze^{−iπ/2}) + i e^{πiν/2} K′(ze^{iπ/2})
                Yp => OracleValue::combine(minus()?, i_over_pi * em, plus()?, -i_over_pi * ep),
                // H1 = (2/πi) e^{−πiν/2} K(ze^{−iπ/2})
                H1 => minus()?.scaled(-i * two_over_pi * em),
                H1p => minus()?.scaled(-two_over_pi * em),
                // H2 = −(2/πi) e^{πiν/2} K(ze^{iπ/2})
                H2 => plus()?.scaled(i * two_over_pi * ep),
                H2p => plus()?.scaled(-two_over_pi * ep),
                _ => unreachable!(),
            })
        }
    }
}

/// `J_ν(z)` from Schläfli's integral, valid for `|arg z| < π/2`. An
/// independent route used to cross-check the connection formulae.
pub fn bessel_j_schlafli(z: SurfaceComplex, nu: Order) -> Result<OracleValue> {
    check_envelope(z, nu)?;
    if z.argument.abs() >= 0.5 * PI {
        return Err(Error::Sector {
            arg: z.argument,
            sector: "|arg z| < π/2",
        });
    }
    let zc = z.to_complex::<Dd>();
    let v = nu.to_complex::<Dd>();
    let opts = oracle_quad();
    let i = C::new(Dd::ZERO, Dd::ONE);
    // (1/π) ∫_0^π cos(νθ − z sin θ) dθ
    let first = tanh_sinh(
        |th: Dd| {
            let a = v * th - zc * th.sin();
            (cexp(a * i) + cexp(-a * i)) * dd(0.5)
        },
        Dd::ZERO,
        Dd::PI,
        opts,
    );
    // (sin νπ/π) ∫_0^∞ e^{−z sinh t − νt} dt
    let second = exp_sinh(
        |t: Dd| {
            let (sh, _) = crate::scalar::sinh_cosh(t);
            cexp(-(zc * sh) - v * t)
        },
        Dd::ONE,
        opts,
    );
    if !first.converged || !second.converged {
        return Err(Error::Accuracy {
            estimate: to_c64(first.value),
            error_estimate: first.error.max(second.error),
        });
    }
    let a = v * Dd::PI;
    let sin_nu_pi = (cexp(a * i) - cexp(-a * i)) / (i * dd(2.0));
    let part2 = sin_nu_pi * second.value;
    let value = (first.value - part2) / Dd::PI;
    let err = (first.error + cabs(sin_nu_pi) * second.error) / PI;
    Ok(OracleValue {
        value,
        guaranteed_digits: digits(err, cabs(value)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(r: f64, a: f64) -> SurfaceComplex {
        SurfaceComplex::new(r, a).unwrap()
    }

    fn rel(a: C, b: C) -> f64 {
        cabs(a - b) / cabs(b)
    }

    #[test]
    fn gamma_known_values() {
        let g = gamma_dd(c(0.5, 0.0));
        assert!((g.re - Dd::PI.sqrt()).abs().to_f64() < 1e-29, "{g:?}");
        let g = gamma_dd(c(6.0, 0.0));
        assert!(((g.re - dd(120.0)) / dd(120.0)).abs().to_f64() < 1e-29);
        // Γ(1+i)Γ(1−i) = π/sinh π
        let p = gamma_dd(c(1.0, 1.0)) * gamma_dd(c(1.0, -1.0));
        let (sh, _) = crate::scalar::sinh_cosh(Dd::PI);
        assert!(rel(p, C::new(Dd::PI / sh, Dd::ZERO)) < 1e-28);
    }

    #[test]
    fn half_integer_closed_form() {
        let k = bessel_k(sc(3.0, 0.0), Order::real(0.5)).unwrap();
        let expect = (Dd::PI / dd(6.0)).sqrt() * dd(-3.0).exp();
        assert!(rel(k.value, C::new(expect, Dd::ZERO)) < 1e-29, "{k:?}");
        assert!(k.guaranteed_digits >= 25);
    }

    #[test]
    fn j_near_origin_matches_leading_series() {
        let z = 1e-3;
        let j = reference(ExpansionKind::J, sc(z, 0.0), Order::real(0.0)).unwrap();
        let expect = 1.0 - z * z / 4.0 + z.powi(4) / 64.0;
        assert!((j.to_c64().re - expect).abs() < 1e-15, "{j:?}");
    }
}
