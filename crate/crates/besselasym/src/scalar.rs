//! The real scalar abstraction shared by the generic evaluation paths, and
//! a handful of complex elementary functions built on it.
//!
//! `num_complex` only provides transcendental functions for `Float` types,
//! which the double-double type is not, so the few that are needed are
//! written here once for every `Real`.

use std::fmt::Debug;
use std::ops::Neg;

use num_complex::Complex;
use num_traits::{FloatConst, FromPrimitive, Num, NumAssign};

use crate::dd::Dd;

/// Real scalar usable by the generic expansion and quadrature code:
/// `f32`, `f64` and [`Dd`].
pub trait Real:
    Copy
    + Debug
    + PartialOrd
    + Num
    + NumAssign
    + Neg<Output = Self>
    + FromPrimitive
    + FloatConst
    + Send
    + Sync
    + 'static
{
    /// Unit roundoff of the format.
    const EPSILON: f64;

    fn of(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin_cos(self) -> (Self, Self);
    fn abs(self) -> Self;

    fn sin(self) -> Self {
        self.sin_cos().0
    }
    fn cos(self) -> Self {
        self.sin_cos().1
    }
    fn of_usize(n: usize) -> Self {
        Self::of(n as f64)
    }
}

macro_rules! native_real {
    ($t:ty) => {
        impl Real for $t {
            const EPSILON: f64 = <$t>::EPSILON as f64;
            #[inline]
            fn of(x: f64) -> Self {
                x as $t
            }
            #[inline]
            fn to_f64(self) -> f64 {
                self as f64
            }
            #[inline]
            fn sqrt(self) -> Self {
                <$t>::sqrt(self)
            }
            #[inline]
            fn exp(self) -> Self {
                <$t>::exp(self)
            }
            #[inline]
            fn ln(self) -> Self {
                <$t>::ln(self)
            }
            #[inline]
            fn sin_cos(self) -> (Self, Self) {
                <$t>::sin_cos(self)
            }
            #[inline]
            fn abs(self) -> Self {
                <$t>::abs(self)
            }
        }
    };
}
native_real!(f32);
native_real!(f64);

impl Real for Dd {
    const EPSILON: f64 = 4.930380657631324e-32;
    #[inline]
    fn of(x: f64) -> Self {
        Dd::from_f64(x)
    }
    #[inline]
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    fn sqrt(self) -> Self {
        Dd::sqrt(self)
    }
    fn exp(self) -> Self {
        Dd::exp(self)
    }
    fn ln(self) -> Self {
        Dd::ln(self)
    }
    fn sin_cos(self) -> (Self, Self) {
        Dd::sin_cos(self)
    }
    fn abs(self) -> Self {
        Dd::abs(self)
    }
}

pub fn cnorm<T: Real>(z: Complex<T>) -> T {
    (z.re * z.re + z.im * z.im).sqrt()
}

/// Modulus as `f64`, for magnitude bookkeeping.
pub fn cabs<T: Real>(z: Complex<T>) -> f64 {
    let (a, b) = (z.re.to_f64(), z.im.to_f64());
    a.hypot(b)
}

pub fn cexp<T: Real>(z: Complex<T>) -> Complex<T> {
    let m = z.re.exp();
    let (s, c) = z.im.sin_cos();
    Complex::new(m * c, m * s)
}

/// `e^{i x}` for real `x`.
pub fn cis<T: Real>(x: T) -> Complex<T> {
    let (s, c) = x.sin_cos();
    Complex::new(c, s)
}

pub fn ccos<T: Real>(z: Complex<T>) -> Complex<T> {
    let (s, c) = z.re.sin_cos();
    let (sh, ch) = sinh_cosh(z.im);
    Complex::new(c * ch, -(s * sh))
}

pub fn csin<T: Real>(z: Complex<T>) -> Complex<T> {
    let (s, c) = z.re.sin_cos();
    let (sh, ch) = sinh_cosh(z.im);
    Complex::new(s * ch, c * sh)
}

pub fn ccosh<T: Real>(z: Complex<T>) -> Complex<T> {
    let (sh, ch) = sinh_cosh(z.re);
    let (s, c) = z.im.sin_cos();
    Complex::new(ch * c, sh * s)
}

pub fn csinh<T: Real>(z: Complex<T>) -> Complex<T> {
    let (sh, ch) = sinh_cosh(z.re);
    let (s, c) = z.im.sin_cos();
    Complex::new(sh * c, ch * s)
}

/// `(sinh x, cosh x)`; the small-argument branch avoids cancellation.
pub fn sinh_cosh<T: Real>(x: T) -> (T, T) {
    let half = T::of(0.5);
    if x.to_f64().abs() < 0.5 {
        let x2 = x * x;
        let mut term = x;
        let mut s = x;
        let mut n = 1.0;
        while term.to_f64().abs() > T::EPSILON * 1e-3 * s.to_f64().abs() && n < 80.0 {
            term = term * x2 / T::of((n + 1.0) * (n + 2.0));
            s += term;
            n += 2.0;
        }
        let c = (T::one() + s * s).sqrt();
        (s, c)
    } else {
        let e = x.exp();
        let ei = T::one() / e;
        ((e - ei) * half, (e + ei) * half)
    }
}

/// Principal logarithm of a complex number whose argument is supplied by
/// the caller (`arg` may lie on any sheet).
pub fn cln_with_arg<T: Real>(modulus: T, arg: T) -> Complex<T> {
    Complex::new(modulus.ln(), arg)
}

/// Integer power by repeated squaring.
pub fn cpowi<T: Real>(z: Complex<T>, n: usize) -> Complex<T> {
    let mut base = z;
    let mut e = n;
    let mut acc = Complex::new(T::one(), T::zero());
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base = base * base;
        e >>= 1;
    }
    acc
}

/// `atan2(y, x)` to full working precision: the native estimate refined by
/// one Newton step, which squares its error.
pub fn atan2<T: Real>(y: T, x: T) -> T {
    let t0 = y.to_f64().atan2(x.to_f64());
    let t = T::of(t0);
    let (s, c) = t.sin_cos();
    t + (y * c - x * s) / (x * c + y * s)
}

/// Principal argument of `z`.
pub fn carg<T: Real>(z: Complex<T>) -> T {
    atan2(z.im, z.re)
}

/// Principal logarithm of `z`.
pub fn cln<T: Real>(z: Complex<T>) -> Complex<T> {
    Complex::new(cnorm(z).ln(), carg(z))
}

/// `ln Γ(x)` for real `x > 0` in the working precision: upward shift to
/// `x ≥ 40`, then Stirling's series through `B_24`.
pub fn ln_gamma<T: Real>(x: f64) -> T {
    const B: [(f64, f64); 12] = [
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
    debug_assert!(x > 0.0);
    let mut y = T::of(x);
    let mut prod = T::one();
    while y.to_f64() < 40.0 {
        prod *= y;
        y += T::one();
    }
    let half = T::of(0.5);
    let two_pi = T::PI() * T::of(2.0);
    let mut s = (y - half) * y.ln() - y + two_pi.ln() * half;
    let inv = T::one() / y;
    let inv2 = inv * inv;
    let mut pw = inv;
    for (k, &(num, den)) in B.iter().enumerate() {
        let k2 = (2 * k + 2) as f64;
        s += pw * T::of(num) / (T::of(den) * T::of(k2 * (k2 - 1.0)));
        pw *= inv2;
    }
    s - prod.ln()
}

/// Lossy conversion of a complex value to `f64` components.
pub fn to_c64<T: Real>(z: Complex<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

pub fn from_c64<T: Real>(z: Complex<f64>) -> Complex<T> {
    Complex::new(T::of(z.re), T::of(z.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trig_identities_in_every_precision() {
        let z = Complex::new(0.7, -1.3);
        let lhs = csin(z) * csin(z) + ccos(z) * ccos(z);
        assert!((lhs - Complex::new(1.0, 0.0)).norm() < 1e-14);
        let zd: Complex<Dd> = from_c64(z);
        let lhs = csin(zd) * csin(zd) + ccos(zd) * ccos(zd);
        assert!(cabs(lhs - Complex::new(Dd::ONE, Dd::ZERO)) < 1e-30);
        let zf: Complex<f32> = Complex::new(0.7, -1.3);
        let lhs = ccosh(zf) * ccosh(zf) - csinh(zf) * csinh(zf);
        assert!(cabs(lhs - Complex::new(1.0f32, 0.0)) < 1e-5);
    }

    #[test]
    fn sinh_small_argument_is_accurate() {
        let (s, _) = sinh_cosh(Dd::from_f64(1e-12));
        let expect = Dd::from_f64(1e-12) + Dd::from_f64(1e-36) / Dd::from_f64(6.0);
        assert!(((s - expect) / expect).abs().to_f64() < 1e-30);
    }

    #[test]
    fn argument_is_refined_past_native_precision() {
        let z = Complex::new(Dd::from_f64(-3.0), Dd::from_f64(1.0));
        let w = cexp(cln(z));
        assert!(cabs(w - z) < 1e-30);
        assert!(
            (atan2(Dd::ONE, Dd::ONE) * Dd::from_f64(4.0) - Dd::PI)
                .abs()
                .to_f64()
                < 1e-31
        );
    }

    #[test]
    fn log_gamma_in_both_precisions() {
        let l: f64 = ln_gamma(0.5);
        assert!((l - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-13);
        let l: Dd = ln_gamma(11.0);
        assert!((l - Dd::from_f64(3628800.0).ln()).abs().to_f64() < 1e-29);
        let l: f64 = ln_gamma(150.5);
        assert!((l - statrs::function::gamma::ln_gamma(150.5)).abs() < 1e-12);
    }

    #[test]
    fn integer_powers() {
        let z = Complex::new(1.0, 1.0);
        assert!((cpowi(z, 8) - Complex::new(16.0, 0.0)).norm() < 1e-13);
        assert_eq!(cpowi(z, 0), Complex::new(1.0, 0.0));
    }
}
