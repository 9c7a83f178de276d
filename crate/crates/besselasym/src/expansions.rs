use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::bounds::{best_bound, BoundBreakdown, BoundSource, Family};
use crate::coefficients::{coeff_table, horner};
use crate::dd::Dd;
use crate::error::{domain, Error, Result};
use crate::oracle::{self, OracleValue};
use crate::scalar::{cabs, ccos, cexp, cis, csin, Real};
use crate::surface::{Order, SurfaceComplex};
use crate::CDd;

/// Which of the fourteen expansions to use. `Upper`/`Lower` pick the sign
/// in the two-sided expansions of `I_ν` and `I′_ν`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExpansionKind {
    K,
    Kp,
    IUpper,
    ILower,
    IpUpper,
    IpLower,
    J,
    Jp,
    Y,
    Yp,
    H1,
    H1p,
    H2,
    H2p,
}

impl ExpansionKind {
    pub const ALL: [ExpansionKind; 14] = [
        ExpansionKind::K,
        ExpansionKind::Kp,
        ExpansionKind::IUpper,
        ExpansionKind::ILower,
        ExpansionKind::IpUpper,
        ExpansionKind::IpLower,
        ExpansionKind::J,
        ExpansionKind::Jp,
        ExpansionKind::Y,
        ExpansionKind::Yp,
        ExpansionKind::H1,
        ExpansionKind::H1p,
        ExpansionKind::H2,
        ExpansionKind::H2p,
    ];

    pub fn name(self) -> &'static str {
        use ExpansionKind::*;
        match self {
            K => "K",
            Kp => "Kp",
            IUpper => "I_upper",
            ILower => "I_lower",
            IpUpper => "Ip_upper",
            IpLower => "Ip_lower",
            J => "J",
            Jp => "Jp",
            Y => "Y",
            Yp => "Yp",
            H1 => "H1",
            H1p => "H1p",
            H2 => "H2",
            H2p => "H2p",
        }
    }

    pub fn is_derivative(self) -> bool {
        use ExpansionKind::*;
        matches!(self, Kp | IpUpper | IpLower | Jp | Yp | H1p | H2p)
    }

    /// Open sector `(lo, hi)` of `arg z` on which the expansion holds.
    pub fn sector(self) -> (f64, f64) {
        use ExpansionKind::*;
        match self {
            K | Kp => (-1.5 * PI, 1.5 * PI),
            IUpper | IpUpper => (-0.5 * PI, 1.5 * PI),
            ILower | IpLower => (-1.5 * PI, 0.5 * PI),
            J | Jp | Y | Yp => (-PI, PI),
            H1 | H1p => (-PI, 2.0 * PI),
            H2 | H2p => (-2.0 * PI, PI),
        }
    }

    fn sector_label(self) -> &'static str {
        use ExpansionKind::*;
        match self {
            K | Kp => "|arg z| < 3π/2",
            IUpper | IpUpper => "-π/2 < arg z < 3π/2",
            ILower | IpLower => "-3π/2 < arg z < π/2",
            J | Jp | Y | Yp => "|arg z| < π",
            H1 | H1p => "-π < arg z < 2π",
            H2 | H2p => "-2π < arg z < π",
        }
    }

    pub fn check_sector(self, arg: f64) -> Result<()> {
        let (lo, hi) = self.sector();
        if arg > lo && arg < hi {
            Ok(())
        } else {
            Err(Error::Sector {
                arg,
                sector: self.sector_label(),
            })
        }
    }
}

impl fmt::Display for ExpansionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExpansionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExpansionKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| domain(format!("unknown kind '{s}'")))
    }
}

/// Point, order and truncation indices of an expansion. `n` truncates the
/// (first) sum; `m` truncates the second sum of the two-sided expansions
/// (I, I′, J, J′, Y, Y′) and is ignored elsewhere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpansionContext {
    pub z: SurfaceComplex,
    pub nu: Order,
    pub n: usize,
    pub m: usize,
}

impl ExpansionContext {
    pub fn new(z: SurfaceComplex, nu: Order, n: usize, m: usize) -> Self {
        ExpansionContext { z, nu, n, m }
    }

    /// `ω = z − πν/2 − π/4`, always recomputed from `z` and `ν`.
    pub fn omega<T: Real>(&self) -> Complex<T> {
        let v = self.nu.to_complex::<T>();
        self.z.to_complex::<T>() - v * T::FRAC_PI_2() - Complex::new(T::FRAC_PI_4(), T::zero())
    }
}

/// One bracketed remainder inside an expansion: the expansion equals
/// `Σ weight·(series + sign·R)` over its channels, where `R` is the basic
/// remainder of `family` with index `index` at `z e^{iqπ/2}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Channel {
    pub family: Family,
    pub quarter_turns: i32,
    pub index: usize,
    pub sign: f64,
}

impl Channel {
    pub fn point(&self, z: SurfaceComplex) -> SurfaceComplex {
        z.rotate(self.quarter_turns as f64 * FRAC_PI_2)
    }
}

struct Piece<T> {
    channel: Channel,
    weight: Complex<T>,
    series: Complex<T>,
}

fn ch(family: Family, quarter_turns: i32, index: usize, sign: f64) -> Channel {
    Channel {
        family,
        quarter_turns,
        index,
        sign,
    }
}

/// The channels of `kind`, in the order used by [`CertifiedValue::channels`]
/// and [`remainder_from_oracle`].
pub fn channels(kind: ExpansionKind, ctx: &ExpansionContext) -> Vec<Channel> {
    use ExpansionKind::*;
    let (n, m) = (ctx.n, ctx.m);
    let f = if kind.is_derivative() {
        Family::Kp
    } else {
        Family::K
    };
    let fj = if kind.is_derivative() {
        Family::Jp
    } else {
        Family::J
    };
    match kind {
        K | Kp => vec![ch(f, 0, n, 1.0)],
        H1 | H1p => vec![ch(f, -1, n, 1.0)],
        H2 | H2p => vec![ch(f, 1, n, 1.0)],
        IUpper | IpUpper => vec![ch(f, -2, n, 1.0), ch(f, 0, m, 1.0)],
        ILower | IpLower => vec![ch(f, 2, n, 1.0), ch(f, 0, m, 1.0)],
        J | Jp | Y | Yp => vec![ch(fj, 0, 2 * n, 1.0), ch(fj, 0, 2 * m + 1, -1.0)],
    }
}

/// `Σ_{k<len} c[k]·x^k` over a strided slice of a coefficient table.
fn series<T: Real>(
    c: &[Complex<T>],
    start: usize,
    step: usize,
    len: usize,
    x: Complex<T>,
) -> Complex<T> {
    let picked: Vec<Complex<T>> = (0..len).map(|k| c[start + step * k]).collect();
    horner(&picked, x)
}

fn pieces<T: Real>(kind: ExpansionKind, ctx: &ExpansionContext) -> Result<Vec<Piece<T>>> {
    use ExpansionKind::*;
    kind.check_sector(ctx.z.argument)?;
    let (n, m) = (ctx.n, ctx.m);
    let chans = channels(kind, ctx);
    let top = match kind {
        J | Jp | Y | Yp => (2 * n).max(2 * m + 1),
        _ => n.max(m),
    };
    let table = coeff_table::<T>(ctx.nu, top);
    let c = if kind.is_derivative() {
        &table.b
    } else {
        &table.a
    };
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let z = ctx.z.to_complex::<T>();
    let inv_z = ctx.z.powi_neg::<T>(1);
    let inv_sqrt_z = ctx.z.powf::<T>(-0.5);
    let pi = T::PI();
    let v = ctx.nu.to_complex::<T>();

    // Σ c_n w^{-n} with w = z e^{iqπ/2}, i.e. w^{-1} = z^{-1}·(−i)^q
    let rotated_sum = |q: i32, len: usize| {
        let phase = match q.rem_euclid(4) {
            0 => one,
            1 => -i,
            2 => -one,
            _ => i,
        };
        series(c, 0, 1, len, inv_z * phase)
    };
    let piece = |k: usize, weight: Complex<T>, series: Complex<T>| Piece {
        channel: chans[k],
        weight,
        series,
    };

    let out = match kind {
        K | Kp => {
            let s = if kind == K { one } else { -one };
            let w = cexp(-z) * inv_sqrt_z * (pi * T::of(0.5)).sqrt() * s;
            vec![piece(0, w, rotated_sum(0, n))]
        }
        H1 | H1p | H2 | H2p => {
            let upper = matches!(kind, H1 | H1p);
            let w_om = ctx.omega::<T>();
            let e = if upper {
                cexp(i * w_om)
            } else {
                cexp(-(i * w_om))
            };
            let lead = match kind {
                H1 => one,
                H1p => i,
                H2 => one,
                _ => -i,
            };
            let w = e * inv_sqrt_z * (T::of(2.0) / pi).sqrt() * lead;
            vec![piece(0, w, rotated_sum(if upper { -1 } else { 1 }, n))]
        }
        IUpper | ILower | IpUpper | IpLower => {
            let upper = matches!(kind, IUpper | IpUpper);
            let base = inv_sqrt_z / (pi * T::of(2.0)).sqrt();
            let w1 = cexp(z) * base;
            // ± i e^{±πiν} for I, ∓ i e^{±πiν} for I′
            let s = if upper { T::one() } else { -T::one() };
            let e_nu = cexp(i * v * pi * s);
            let d = if kind.is_derivative() {
                -T::one()
            } else {
                T::one()
            };
            let w2 = cexp(-z) * base * i * e_nu * (s * d);
            vec![
                piece(0, w1, rotated_sum(if upper { -2 } else { 2 }, n)),
                piece(1, w2, rotated_sum(0, m)),
            ]
        }
        J | Jp | Y | Yp => {
            let w_om = ctx.omega::<T>();
            let (cw, sw) = (ccos(w_om), csin(w_om));
            let pref = inv_sqrt_z * (T::of(2.0) / pi).sqrt();
            let x = -(inv_z * inv_z);
            let even = series(c, 0, 2, n, x);
            let odd = series(c, 1, 2, m, x) * inv_z;
            let (we, wo) = match kind {
                J => (cw, -sw),
                Jp => (-sw, -cw),
                Y => (sw, cw),
                _ => (cw, -sw),
            };
            vec![piece(0, pref * we, even), piece(1, pref * wo, odd)]
        }
    };
    Ok(out)
}

/// The truncated expansion of `kind` with every remainder set to zero.
pub fn partial_sum<T: Real>(kind: ExpansionKind, ctx: &ExpansionContext) -> Result<Complex<T>> {
    Ok(pieces::<T>(kind, ctx)?
        .iter()
        .fold(Complex::new(T::zero(), T::zero()), |acc, p| {
            acc + p.weight * p.series
        }))
}

/// A channel's bound and the modulus of the factor multiplying it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelBound {
    pub channel: Channel,
    pub weight_abs: f64,
    pub bound: BoundBreakdown,
}

/// A truncated expansion together with a rigorous bound on what was
/// dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedValue<T> {
    pub value: Complex<T>,
    /// Sum over channels of the bounds on the bracketed remainders.
    pub remainder_bound: f64,
    /// Bound on `|f − value|`: the channel bounds times their prefactors.
    pub value_bound: f64,
    /// Source of the channel bound contributing most to `value_bound`.
    pub bound_source: BoundSource,
    pub sector_ok: bool,
    pub channels: Vec<ChannelBound>,
}

/// [`partial_sum`] plus the certified bound assembled from the channels.
pub fn evaluate_certified<T: Real>(
    kind: ExpansionKind,
    ctx: &ExpansionContext,
) -> Result<CertifiedValue<T>> {
    let ps = pieces::<T>(kind, ctx)?;
    let mut value = Complex::new(T::zero(), T::zero());
    let mut out = Vec::with_capacity(ps.len());
    for p in &ps {
        value += p.weight * p.series;
        let bound = best_bound(
            p.channel.family,
            p.channel.point(ctx.z),
            ctx.nu,
            p.channel.index,
        )?;
        out.push(ChannelBound {
            channel: p.channel,
            weight_abs: cabs(p.weight),
            bound,
        });
    }
    let remainder_bound = out.iter().map(|c| c.bound.total).sum();
    let value_bound = out
        .iter()
        .map(|c| {
            if c.bound.total == 0.0 {
                0.0
            } else {
                c.weight_abs * c.bound.total
            }
        })
        .sum();
    let bound_source = if out
        .iter()
        .all(|c| c.bound.theorem == BoundSource::ExactTermination)
    {
        BoundSource::ExactTermination
    } else {
        out.iter()
            .filter(|c| c.bound.theorem != BoundSource::ExactTermination)
            .max_by(|a, b| {
                (a.weight_abs * a.bound.total).total_cmp(&(b.weight_abs * b.bound.total))
            })
            .map(|c| c.bound.theorem)
            .unwrap_or(BoundSource::ExactTermination)
    };
    Ok(CertifiedValue {
        value,
        remainder_bound,
        value_bound,
        bound_source,
        sector_ok: true,
        channels: out,
    })
}

/// `R_0 … R_{n_max}` of K (or K′) at `z e^{iqπ/2}`, sharing one oracle call.
fn k_remainders_oracle(
    z: SurfaceComplex,
    q: i32,
    nu: Order,
    n_max: usize,
    deriv: bool,
) -> Result<Vec<OracleValue>> {
    let (k, kp) = oracle::k_pair_turned(z, q, nu)?;
    let val = if deriv { kp } else { k };
    let one = CDd::new(Dd::ONE, Dd::ZERO);
    let i = CDd::new(Dd::ZERO, Dd::ONE);
    let turn = match q.rem_euclid(4) {
        0 => one,
        1 => i,
        2 => -one,
        _ => -i,
    };
    let w = z.to_complex::<Dd>() * turn;
    let half_arg =
        Dd::from_f64(z.argument) * Dd::from_f64(0.5) + Dd::FRAC_PI_2 * Dd::from_f64(q as f64 * 0.5);
    let inv_sqrt_w = cis(-half_arg) / Dd::from_f64(z.modulus).sqrt();
    let mut pref = cexp(-w) * inv_sqrt_w * (Dd::PI * Dd::from_f64(0.5)).sqrt();
    if deriv {
        pref = -pref;
    }
    let table = coeff_table::<Dd>(nu, n_max);
    let c = if deriv { &table.b } else { &table.a };
    let base = val.value / pref;
    let err = cabs(val.value) * 10f64.powi(-(val.guaranteed_digits as i32)) / cabs(pref);
    let x = one / w;
    let (mut sum, mut pow) = (CDd::new(Dd::ZERO, Dd::ZERO), one);
    let mut out = Vec::with_capacity(n_max + 1);
    for cn in &c[..=n_max] {
        let r = base - sum;
        // the subtraction adds rounding at the size of the leading term
        out.push(OracleValue {
            value: r,
            guaranteed_digits: oracle::digits(err + 1e-31, cabs(r)),
        });
        sum += *cn * pow;
        pow *= x;
    }
    Ok(out)
}

/// The basic remainder of `family` with index `n` at `z`, from the oracle.
/// The J remainders are assembled from K remainders at `z e^{±iπ/2}`:
/// their half sum for even `n`, their half difference over `i` for odd `n`.
pub fn family_remainder_from_oracle(
    family: Family,
    z: SurfaceComplex,
    nu: Order,
    n: usize,
) -> Result<OracleValue> {
    Ok(family_remainders_from_oracle(family, z, nu, n)?
        .pop()
        .expect("n_max + 1 entries"))
}

/// [`family_remainder_from_oracle`] for every index `0..=n_max`, at the cost
/// of a single oracle evaluation (two for J, J′).
pub fn family_remainders_from_oracle(
    family: Family,
    z: SurfaceComplex,
    nu: Order,
    n_max: usize,
) -> Result<Vec<OracleValue>> {
    let deriv = family.is_derivative();
    if !family.is_oscillatory() {
        return k_remainders_oracle(z, 0, nu, n_max, deriv);
    }
    if z.argument.abs() >= PI {
        return Err(Error::Sector {
            arg: z.argument,
            sector: "|arg z| < π",
        });
    }
    let up = k_remainders_oracle(z, 1, nu, n_max, deriv)?;
    let down = k_remainders_oracle(z, -1, nu, n_max, deriv)?;
    let half = Dd::from_f64(0.5);
    Ok(up
        .iter()
        .zip(&down)
        .enumerate()
        .map(|(n, (u, d))| {
            let value = if n % 2 == 0 {
                (u.value + d.value) * half
            } else {
                (u.value - d.value) * CDd::new(Dd::ZERO, -half)
            };
            let err = 0.5
                * (cabs(u.value) * 10f64.powi(-(u.guaranteed_digits as i32))
                    + cabs(d.value) * 10f64.powi(-(d.guaranteed_digits as i32)));
            OracleValue {
                value,
                guaranteed_digits: oracle::digits(err, cabs(value)),
            }
        })
        .collect())
}

/// The bracketed remainders of `kind`, one per channel (see [`channels`]),
/// computed from oracle values.
pub fn remainder_from_oracle(
    kind: ExpansionKind,
    ctx: &ExpansionContext,
) -> Result<Vec<OracleValue>> {
    kind.check_sector(ctx.z.argument)?;
    channels(kind, ctx)
        .into_iter()
        .map(|c| {
            if c.family.is_oscillatory() {
                family_remainder_from_oracle(c.family, ctx.z, ctx.nu, c.index)
            } else {
                let all = k_remainders_oracle(
                    ctx.z,
                    c.quarter_turns,
                    ctx.nu,
                    c.index,
                    c.family.is_derivative(),
                )?;
                Ok(all[c.index])
            }
        })
        .collect()
}

/// Reassemble `Σ weight·(series + sign·R)` from explicit remainders; used to
/// check the channel wiring against direct oracle values.
pub fn reconstruct(kind: ExpansionKind, ctx: &ExpansionContext, remainders: &[CDd]) -> Result<CDd> {
    let ps = pieces::<Dd>(kind, ctx)?;
    if ps.len() != remainders.len() {
        return Err(domain(format!(
            "{kind} has {} channels, got {} remainders",
            ps.len(),
            remainders.len()
        )));
    }
    Ok(ps
        .iter()
        .zip(remainders)
        .fold(CDd::new(Dd::ZERO, Dd::ZERO), |acc, (p, r)| {
            acc + p.weight * (p.series + *r * Dd::from_f64(p.channel.sign))
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::to_c64;

    fn ctx(r: f64, a: f64, nu: Order, n: usize, m: usize) -> ExpansionContext {
        ExpansionContext::new(SurfaceComplex::new(r, a).unwrap(), nu, n, m)
    }

    #[test]
    fn half_order_k_is_exact() {
        let c = ctx(3.0, 0.0, Order::real(0.5), 1, 0);
        let v: Complex<f64> = partial_sum(ExpansionKind::K, &c).unwrap();
        let exact = (PI / 6.0).sqrt() * (-3.0f64).exp();
        assert!((v.re - exact).abs() < 1e-16);
        let cv = evaluate_certified::<f64>(ExpansionKind::K, &c).unwrap();
        assert_eq!(cv.remainder_bound, 0.0);
        assert_eq!(cv.bound_source, BoundSource::ExactTermination);
    }

    #[test]
    fn empty_sum_is_zero() {
        let c = ctx(4.0, 0.3, Order::real(1.2), 0, 0);
        for kind in ExpansionKind::ALL {
            let v: Complex<f64> = partial_sum(kind, &c).unwrap();
            assert_eq!(v, Complex::new(0.0, 0.0), "{kind}");
        }
    }

    #[test]
    fn sectors_are_checked() {
        let c = ctx(4.0, PI, Order::real(0.0), 3, 3);
        assert!(partial_sum::<f64>(ExpansionKind::J, &c).is_err());
        assert!(partial_sum::<f64>(ExpansionKind::K, &c).is_ok());
        let c = ctx(4.0, 1.9 * PI, Order::real(0.0), 3, 3);
        assert!(partial_sum::<f64>(ExpansionKind::H1, &c).is_ok());
        assert!(partial_sum::<f64>(ExpansionKind::H2, &c).is_err());
    }

    #[test]
    fn channel_layout() {
        let c = ctx(8.0, 0.4, Order::real(0.0), 3, 2);
        let j = channels(ExpansionKind::Y, &c);
        assert_eq!((j[0].index, j[1].index), (6, 5));
        assert_eq!(j[1].sign, -1.0);
        let h = channels(ExpansionKind::H1, &c);
        assert_eq!(h[0].quarter_turns, -1);
    }

    #[test]
    fn precisions_agree() {
        let c = ctx(9.0, 1.1, Order::new(2.0, 1.0).unwrap(), 6, 5);
        for kind in ExpansionKind::ALL {
            if kind.check_sector(c.z.argument).is_err() {
                continue;
            }
            let a: Complex<f64> = partial_sum(kind, &c).unwrap();
            let b: CDd = partial_sum(kind, &c).unwrap();
            assert!((a - to_c64(b)).norm() <= 1e-13 * a.norm(), "{kind}");
        }
    }
}
