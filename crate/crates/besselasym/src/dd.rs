//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64`
//! values with `|lo| <= ulp(hi)/2`, giving roughly 31 significant digits.
//!
//! Only what the reference evaluator needs is provided: the four
//! operations, `sqrt`, `exp`, `ln`, `sin`/`cos` and comparisons. The error
//! free transformations rely on a fused multiply-add.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::num::FpCategory;
use std::ops::{
    Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign,
};

use num_traits::{FloatConst, FromPrimitive, Num, One, ToPrimitive, Zero};

/// A double-double number.
#[derive(Clone, Copy, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

// Relative precision of the format, 2^-104.
const DD_EPS: f64 = 4.930380657631324e-32;

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.2246467991473532e-16,
    };
    pub const FRAC_PI_2: Dd = Dd {
        hi: std::f64::consts::FRAC_PI_2,
        lo: 6.123233995736766e-17,
    };
    pub const LN_2: Dd = Dd {
        hi: std::f64::consts::LN_2,
        lo: 2.3190468138462996e-17,
    };

    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Dd {
        Dd { hi, lo }
    }

    /// Builds a normalized value from an arbitrary pair.
    #[inline]
    pub fn from_pair(hi: f64, lo: f64) -> Dd {
        let (h, l) = two_sum(hi, lo);
        Dd { hi: h, lo: l }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn epsilon() -> Dd {
        Dd::from_f64(DD_EPS)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite()
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline]
    fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (h, l) = quick_two_sum(p, e);
        Dd { hi: h, lo: l }
    }

    #[inline]
    fn sqr(self) -> Dd {
        let (p, e) = two_prod(self.hi, self.hi);
        let e = e + 2.0 * self.hi * self.lo + self.lo * self.lo;
        let (h, l) = quick_two_sum(p, e);
        Dd { hi: h, lo: l }
    }

    pub fn floor(self) -> Dd {
        let h = self.hi.floor();
        if h == self.hi {
            Dd::from_pair(h, self.lo.floor())
        } else {
            Dd { hi: h, lo: 0.0 }
        }
    }

    pub fn round(self) -> Dd {
        (self + Dd::from_f64(0.5)).floor()
    }

    pub fn trunc(self) -> Dd {
        if self.hi >= 0.0 {
            self.floor()
        } else {
            -((-self).floor())
        }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                Dd::ZERO
            } else {
                Dd::from_f64(f64::NAN)
            };
        }
        let y = self.hi.sqrt();
        let (p, e) = two_prod(y, y);
        let r = (self - Dd::from_pair(p, e)).to_f64();
        Dd::from_pair(y, r / (2.0 * y))
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        // x = k ln 2 + r, |r| <= ln2/2, then r is scaled by 2^-10 and the
        // Taylor series of expm1 is squared back up.
        let k = (self.hi / std::f64::consts::LN_2).round();
        let r = self - Dd::LN_2.mul_f64(k);
        let s = Dd {
            hi: r.hi / 1024.0,
            lo: r.lo / 1024.0,
        };
        let mut term = s;
        let mut sum = s;
        let mut n = 1.0;
        loop {
            n += 1.0;
            term = term * s / Dd::from_f64(n);
            sum += term;
            if term.hi.abs() < 1e-36 || n > 30.0 {
                break;
            }
        }
        // e^{2s} - 1 = 2m + m^2 with m = e^s - 1
        for _ in 0..10 {
            sum = sum.mul_f64(2.0) + sum.sqr();
        }
        let e = sum + Dd::ONE;
        let scale = 2f64.powi(k as i32);
        Dd {
            hi: e.hi * scale,
            lo: e.lo * scale,
        }
    }

    pub fn ln(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::from_f64(if self.hi == 0.0 {
                f64::NEG_INFINITY
            } else {
                f64::NAN
            });
        }
        // one Newton step on exp(y) = x doubles the digits of the f64 guess
        let y = Dd::from_f64(self.hi.ln());
        y + self * (-y).exp() - Dd::ONE
    }

    /// Returns `(sin x, cos x)`.
    pub fn sin_cos(self) -> (Dd, Dd) {
        if self.hi == 0.0 && self.lo == 0.0 {
            return (Dd::ZERO, Dd::ONE);
        }
        let k = (self.hi / std::f64::consts::FRAC_PI_2).round();
        let r = self - Dd::FRAC_PI_2.mul_f64(k);
        let r2 = r.sqr();
        // Taylor series on |r| <= pi/4
        let mut s = r;
        let mut term = r;
        let mut n = 1.0;
        while term.hi.abs() > 1e-36 && n < 60.0 {
            term = -(term * r2) / Dd::from_f64((n + 1.0) * (n + 2.0));
            s += term;
            n += 2.0;
        }
        let mut c = Dd::ONE;
        let mut term = Dd::ONE;
        let mut n = 0.0;
        while term.hi.abs() > 1e-36 && n < 60.0 {
            term = -(term * r2) / Dd::from_f64((n + 1.0) * (n + 2.0));
            c += term;
            n += 2.0;
        }
        match (k.rem_euclid(4.0)) as i32 {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn sin(self) -> Dd {
        self.sin_cos().0
    }

    pub fn cos(self) -> Dd {
        self.sin_cos().1
    }

    pub fn powi(self, n: i32) -> Dd {
        let mut base = if n < 0 { Dd::ONE / self } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            e >>= 1;
        }
        acc
    }

    pub fn classify(self) -> FpCategory {
        self.hi.classify()
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e}, {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // not a correctly rounded decimal conversion; enough for diagnostics
        if let Some(p) = f.precision() {
            write!(f, "{:.*e}", p, self.hi + self.lo)
        } else {
            write!(f, "{:e}{:+e}", self.hi, self.lo)
        }
    }
}

impl PartialEq for Dd {
    fn eq(&self, other: &Dd) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let e = e + t;
        let (s, e) = quick_two_sum(s, e);
        let e = e + f;
        let (h, l) = quick_two_sum(s, e);
        Dd { hi: h, lo: l }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (h, l) = quick_two_sum(p, e);
        Dd { hi: h, lo: l }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return Dd::from_f64(q1);
        }
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (h, l) = quick_two_sum(q1, q2);
        Dd { hi: h, lo: l } + Dd::from_f64(q3)
    }
}

impl Rem for Dd {
    type Output = Dd;
    fn rem(self, b: Dd) -> Dd {
        self - (self / b).trunc() * b
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for Dd {
            #[inline]
            fn $m(&mut self, b: Dd) {
                *self = *self $op b;
            }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /, RemAssign rem_assign %);

impl Sum for Dd {
    fn sum<I: Iterator<Item = Dd>>(iter: I) -> Dd {
        iter.fold(Dd::ZERO, |a, b| a + b)
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl Zero for Dd {
    fn zero() -> Dd {
        Dd::ZERO
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }
}

impl One for Dd {
    fn one() -> Dd {
        Dd::ONE
    }
}

impl Num for Dd {
    type FromStrRadixErr = std::num::ParseFloatError;
    // decimal only, parsed to f64 precision
    fn from_str_radix(s: &str, _radix: u32) -> Result<Dd, Self::FromStrRadixErr> {
        s.parse::<f64>().map(Dd::from_f64)
    }
}

impl ToPrimitive for Dd {
    fn to_i64(&self) -> Option<i64> {
        (self.hi + self.lo).to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        (self.hi + self.lo).to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.hi + self.lo)
    }
}

impl FromPrimitive for Dd {
    fn from_i64(n: i64) -> Option<Dd> {
        let hi = n as f64;
        let lo = (n - hi as i64) as f64;
        Some(Dd::from_pair(hi, lo))
    }
    fn from_u64(n: u64) -> Option<Dd> {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Some(Dd::from_pair(hi, lo))
    }
    fn from_f64(x: f64) -> Option<Dd> {
        Some(Dd::from_f64(x))
    }
}

macro_rules! consts {
    ($($name:ident = ($hi:expr, $lo:expr)),* $(,)?) => {
        impl FloatConst for Dd {
            $(fn $name() -> Dd { Dd { hi: $hi, lo: $lo } })*
        }
    };
}
consts! {
    PI = (std::f64::consts::PI, 1.2246467991473532e-16),
    FRAC_PI_2 = (std::f64::consts::FRAC_PI_2, 6.123233995736766e-17),
    FRAC_PI_3 = (std::f64::consts::FRAC_PI_3, -1.072081766451091e-16),
    FRAC_PI_4 = (std::f64::consts::FRAC_PI_4, 3.061616997868383e-17),
    FRAC_PI_6 = (std::f64::consts::FRAC_PI_6, -5.360408832255455e-17),
    FRAC_PI_8 = (std::f64::consts::FRAC_PI_8, 1.5308084989341915e-17),
    FRAC_1_PI = (std::f64::consts::FRAC_1_PI, -1.9678676675182486e-17),
    FRAC_2_PI = (std::f64::consts::FRAC_2_PI, -3.935735335036497e-17),
    FRAC_2_SQRT_PI = (std::f64::consts::FRAC_2_SQRT_PI, 1.533545961316588e-17),
    SQRT_2 = (std::f64::consts::SQRT_2, -9.667293313452913e-17),
    FRAC_1_SQRT_2 = (std::f64::consts::FRAC_1_SQRT_2, -4.833646656726457e-17),
    E = (std::f64::consts::E, 1.4456468917292502e-16),
    LN_2 = (std::f64::consts::LN_2, 2.3190468138462996e-17),
    LN_10 = (std::f64::consts::LN_10, -2.1707562233822494e-16),
    LOG2_E = (std::f64::consts::LOG2_E, 2.0355273740931033e-17),
    LOG10_E = (std::f64::consts::LOG10_E, 1.098319650216765e-17),
    TAU = (std::f64::consts::TAU, 2.4492935982947064e-16),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Dd, b: Dd) -> f64 {
        ((a - b) / b).abs().to_f64()
    }

    #[test]
    fn division_round_trips() {
        let a = Dd::from_f64(1.0) / Dd::from_f64(3.0);
        assert!(rel(a * Dd::from_f64(3.0), Dd::ONE) < 1e-31);
    }

    #[test]
    fn exp_ln_inverse() {
        for &x in &[-40.0, -3.3, -0.1, 0.0, 1e-5, 0.7, 12.25, 90.0] {
            let x = Dd::from_f64(x) + Dd::from_f64(1e-20);
            let back = x.exp().ln();
            assert!(
                (back - x).abs().to_f64() < 1e-30 * (1.0 + x.abs().to_f64()),
                "{x:?}"
            );
        }
    }

    #[test]
    fn known_constants() {
        // e and pi/6 compared with the stored pairs
        assert!(rel(Dd::ONE.exp(), Dd::E()) < 4e-32);
        let (s, c) = Dd::FRAC_PI_6().sin_cos();
        assert!(rel(s, Dd::from_f64(0.5)) < 1e-31);
        assert!(rel(c * c, Dd::from_f64(0.75)) < 1e-31);
        assert!(rel(Dd::from_f64(2.0).sqrt(), Dd::SQRT_2()) < 4e-32);
        assert!(rel(Dd::from_f64(10.0).ln(), Dd::LN_10()) < 4e-32);
    }

    #[test]
    fn pythagoras_for_large_arguments() {
        for &x in &[0.3, 2.0, 17.5, -123.456, 1000.1] {
            let (s, c) = Dd::from_f64(x).sin_cos();
            assert!((s * s + c * c - Dd::ONE).abs().to_f64() < 1e-30);
        }
    }

    #[test]
    fn ordering_uses_low_word() {
        let a = Dd::from_pair(1.0, 1e-20);
        assert!(a > Dd::ONE);
        assert!(-a < -Dd::ONE);
    }
}
