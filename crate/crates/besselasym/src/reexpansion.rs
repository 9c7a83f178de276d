//! Re-expansion of the remainders in basic terminants at `2z`:
//!
//! ```text
//! R_N(z) = s · cos(πν)/(2^N π z^N) · Σ_{m<M} 2^m c_m(ν) Γ(N−m) T_{N−m}(2z) + R_{N,M}(z)
//! ```
//!
//! with `(c, T, s)` = `(a, Λ, (−1)^N)` for K, `(b, Λ, (−1)^{N+1})` for K′,
//! `(a, Π, (−1)^{⌊N/2⌋})` for J and `(b, Π, (−1)^{⌊N/2⌋+1})` for J′.
//! Truncating near `N ≈ 4|z|`, `M ≈ 2|z|` brings the error down to the
//! `e^{−4|z|}` scale.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex;
use statrs::function::gamma::ln_gamma as ln_gamma64;

use crate::bounds::{abs_cos_pi, order_factor, Family, SignRatioReport};
use crate::coefficients::{coeff_table, vanishes_from};
use crate::error::{domain, Error, Result};
use crate::scalar::{ccos, cis, ln_gamma, Real};
use crate::surface::{Order, SurfaceComplex};
use crate::terminants::{lambda_terminant, pi_terminant, TerminantResult};

#[allow(non_snake_case)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationPair {
    pub N: usize,
    pub M: usize,
}

impl TruncationPair {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if m >= n {
            return Err(domain(format!(
                "re-expansion needs M < N, got N = {n}, M = {m}"
            )));
        }
        Ok(TruncationPair { N: n, M: m })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReexpandedRemainder<T> {
    pub series_part: Complex<T>,
    /// Bound on `|R_{N,M}|`; `None` when the order condition
    /// `|Re ν| < M + ½` (`M − ½`, `M ≥ 1` for derivatives) fails.
    pub tail_bound: Option<f64>,
    pub pair: TruncationPair,
}

fn sign(family: Family, n: usize) -> f64 {
    let k = match family {
        Family::K => n,
        Family::Kp => n + 1,
        Family::J => n / 2,
        Family::Jp => n / 2 + 1,
    };
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn check_sector(family: Family, z: SurfaceComplex) -> Result<()> {
    let (w, label) = if family.is_oscillatory() {
        (FRAC_PI_2, "|arg z| ≤ π/2")
    } else {
        (PI, "|arg z| ≤ π")
    };
    if z.argument.abs() <= w {
        Ok(())
    } else {
        Err(Error::Sector {
            arg: z.argument,
            sector: label,
        })
    }
}

fn terminant<T: Real>(family: Family, p: f64, w: SurfaceComplex) -> Result<TerminantResult<T>> {
    if family.is_oscillatory() {
        pi_terminant(p, w)
    } else {
        lambda_terminant(p, w)
    }
}

fn order_condition(family: Family, nu: Order, m: usize) -> Result<()> {
    let ok = if family.is_derivative() {
        m >= 1 && nu.re.abs() < m as f64 - 0.5
    } else {
        nu.re.abs() < m as f64 + 0.5
    };
    if ok {
        Ok(())
    } else {
        Err(Error::NoApplicableBound(format!(
            "re-expansion bound for {family} needs |Re ν| < M {} 1/2; got Re ν = {}, M = {m}",
            if family.is_derivative() { "−" } else { "+" },
            nu.re
        )))
    }
}

/// `2^m Γ(N−m) / (2^N |z|^N)` with the phase `e^{−iN arg z}`, formed in
/// logarithms so that large N cannot overflow.
fn scale<T: Real>(z: SurfaceComplex, n: usize, m: usize) -> Complex<T> {
    let ln = T::of((m as f64 - n as f64) * 2f64.ln()) + ln_gamma::<T>((n - m) as f64)
        - T::of(z.modulus).ln() * T::of(n as f64);
    cis(-(T::of(z.argument) * T::of(n as f64))) * ln.exp()
}

/// The terminant sum and, when the order condition holds, its error bound.
pub fn reexpand<T: Real>(
    family: Family,
    z: SurfaceComplex,
    nu: Order,
    pair: TruncationPair,
) -> Result<ReexpandedRemainder<T>> {
    check_sector(family, z)?;
    let TruncationPair { N: n, M: m } = TruncationPair::new(pair.N, pair.M)?;
    let table = coeff_table::<T>(nu, m);
    let c = if family.is_derivative() {
        &table.b
    } else {
        &table.a
    };
    let v = nu.to_complex::<T>();
    let cos_pi_nu = ccos(v * T::PI());
    let two_z = z.scale(2.0);
    let mut sum = Complex::new(T::zero(), T::zero());
    for (k, ck) in c.iter().enumerate().take(m) {
        let t = terminant::<T>(family, (n - k) as f64, two_z)?;
        sum += *ck * t.value * scale::<T>(z, n, k);
    }
    let series_part = sum * cos_pi_nu * T::of(sign(family, n) / PI);
    let tail_bound = reexpand_tail_bound(family, z, nu, pair).ok();
    Ok(ReexpandedRemainder {
        series_part,
        tail_bound,
        pair,
    })
}

/// Bound on `|R_{N,M}|`:
///
/// ```text
/// |cos πν|/(2^N π |z|^N) · 2^M Γ(N−M) · ρ |c_M(Re ν)| · (|T_{N−M}(2z)| + 1)
/// ```
///
/// where `ρ = |cos πν|/|cos π Re ν|` and `ρ|c_M(Re ν)|` also bounds
/// `|z|^M |R_M(|z|, ν)|`, so the bound never consults the remainder it
/// certifies.
pub fn reexpand_tail_bound(
    family: Family,
    z: SurfaceComplex,
    nu: Order,
    pair: TruncationPair,
) -> Result<f64> {
    check_sector(family, z)?;
    let TruncationPair { N: n, M: m } = TruncationPair::new(pair.N, pair.M)?;
    order_condition(family, nu, m)?;
    let (mag, ratio) = order_factor(family, nu, m);
    let f = mag * ratio;
    if f == 0.0 {
        return Ok(0.0);
    }
    let t = terminant::<f64>(family, (n - m) as f64, z.scale(2.0))?;
    // a little slack for the terminant's own quadrature error
    let t_abs = t.value.norm() + t.est_abs_err;
    let ln = abs_cos_pi(nu).ln() - PI.ln()
        + (m as f64 - n as f64) * 2f64.ln()
        + ln_gamma64((n - m) as f64)
        - n as f64 * z.modulus.ln();
    Ok(ln.exp() * f * (t_abs + 1.0))
}

/// `Θ = R_{N,M} / (first omitted re-expansion term)` for positive z and real
/// ν; the first omitted term is the `m = M` summand.
pub fn sign_ratio_reexp(
    family: Family,
    z_pos: f64,
    nu_real: f64,
    pair: TruncationPair,
    oracle_rnm: Complex<f64>,
) -> Result<SignRatioReport> {
    let z = SurfaceComplex::real(z_pos)?;
    let TruncationPair { N: n, M: m } = TruncationPair::new(pair.N, pair.M)?;
    let nu = Order::real(nu_real);
    order_condition(family, nu, m)?;
    let d = family.is_derivative();
    let cm = family.coefficient(nu, m).re;
    if cm == 0.0 || vanishes_from(nu, n, d) || vanishes_from(nu, m, d) {
        return Ok(SignRatioReport::exact());
    }
    let t = terminant::<f64>(family, (n - m) as f64, z.scale(2.0))?
        .value
        .re;
    let first = sign(family, n) * (PI * nu_real).cos() / PI * cm * t * scale::<f64>(z, n, m).re;
    Ok(SignRatioReport::from_ratio(oracle_rnm.re / first))
}

/// `N = round(4|z| + ρ)`, `M = round(2|z| + σ)` (ties to even), with M
/// clamped into `[0, N−1]`.
pub fn optimal_truncation(z_mod: f64, rho: f64, sigma: f64) -> Result<TruncationPair> {
    if !(z_mod > 0.0 && z_mod.is_finite() && rho.is_finite() && sigma.is_finite()) {
        return Err(domain(format!(
            "optimal truncation needs |z| > 0, got {z_mod}"
        )));
    }
    let n = (4.0 * z_mod + rho).round_ties_even();
    if n < 1.0 {
        return Err(domain(format!("N = 4|z| + ρ rounds to {n}; need N ≥ 1")));
    }
    let m = (2.0 * z_mod + sigma).round_ties_even().clamp(0.0, n - 1.0);
    TruncationPair::new(n as usize, m as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_examples() {
        assert_eq!(
            optimal_truncation(5.0, 0.0, 0.0).unwrap(),
            TruncationPair { N: 20, M: 10 }
        );
        assert_eq!(
            optimal_truncation(0.4, 0.0, 0.0).unwrap(),
            TruncationPair { N: 2, M: 1 }
        );
        assert_eq!(
            optimal_truncation(10.0, 1.0, -1.0).unwrap(),
            TruncationPair { N: 41, M: 19 }
        );
        // 4·0.625 = 2.5 rounds to 2
        assert_eq!(optimal_truncation(0.625, 0.0, 0.0).unwrap().N, 2);
        assert!(optimal_truncation(0.05, 0.0, 0.0).is_err());
    }

    #[test]
    fn empty_sum() {
        let z = SurfaceComplex::real(5.0).unwrap();
        let r = reexpand::<f64>(
            Family::K,
            z,
            Order::real(0.25),
            TruncationPair::new(20, 0).unwrap(),
        )
        .unwrap();
        assert_eq!(r.series_part, Complex::new(0.0, 0.0));
        assert!(r.tail_bound.unwrap() > 0.0);
    }

    #[test]
    fn sector_is_closed() {
        let p = TruncationPair::new(12, 6).unwrap();
        let z = SurfaceComplex::new(4.0, FRAC_PI_2).unwrap();
        assert!(reexpand::<f64>(Family::J, z, Order::real(0.0), p)
            .unwrap()
            .tail_bound
            .is_some());
        assert!(reexpand::<f64>(Family::J, z.rotate(0.01), Order::real(0.0), p).is_err());
    }

    #[test]
    fn half_order_is_exact() {
        let p = TruncationPair::new(12, 1).unwrap();
        let r = sign_ratio_reexp(Family::K, 4.0, 0.5, p, Complex::new(0.0, 0.0)).unwrap();
        assert!(r.exact);
    }
}
