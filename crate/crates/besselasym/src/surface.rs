//! Points on the Riemann surface of the logarithm, and the order ν.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex;

use crate::error::{domain, Result};
use crate::scalar::{cis, Real};

/// A nonzero complex number with an unreduced argument. Validity sectors
/// reach past ±π, so `z e^{2πi}` and `z` are different points here.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceComplex {
    pub modulus: f64,
    pub argument: f64,
}

impl SurfaceComplex {
    pub fn new(modulus: f64, argument: f64) -> Result<Self> {
        if !(modulus.is_finite() && modulus > 0.0) {
            return Err(domain(format!(
                "modulus must be finite and positive, got {modulus}"
            )));
        }
        if !argument.is_finite() {
            return Err(domain("argument must be finite"));
        }
        Ok(SurfaceComplex { modulus, argument })
    }

    /// Positive real point.
    pub fn real(x: f64) -> Result<Self> {
        Self::new(x, 0.0)
    }

    /// `self · e^{iδ}`; only the argument moves.
    pub fn rotate(self, delta: f64) -> Self {
        SurfaceComplex {
            modulus: self.modulus,
            argument: self.argument + delta,
        }
    }

    pub fn scale(self, factor: f64) -> Self {
        debug_assert!(factor > 0.0);
        SurfaceComplex {
            modulus: self.modulus * factor,
            argument: self.argument,
        }
    }

    pub fn conj(self) -> Self {
        SurfaceComplex {
            modulus: self.modulus,
            argument: -self.argument,
        }
    }

    /// Projection to the complex plane (the sheet is forgotten).
    pub fn to_complex<T: Real>(self) -> Complex<T> {
        cis(T::of(self.argument)) * T::of(self.modulus)
    }

    /// `z^{1/2}` with the argument halved on this sheet.
    pub fn sqrt<T: Real>(self) -> Complex<T> {
        cis(T::of(self.argument) * T::of(0.5)) * T::of(self.modulus).sqrt()
    }

    /// `z^{-n}` for integer `n`, carried in polar form.
    pub fn powi_neg<T: Real>(self, n: usize) -> Complex<T> {
        let m = T::of(self.modulus).ln() * T::of(-(n as f64));
        cis(T::of(self.argument) * T::of(-(n as f64))) * m.exp()
    }

    /// `z^p` for real `p` on this sheet.
    pub fn powf<T: Real>(self, p: f64) -> Complex<T> {
        let m = (T::of(self.modulus).ln() * T::of(p)).exp();
        cis(T::of(self.argument) * T::of(p)) * m
    }

    pub fn is_positive_real(self) -> bool {
        self.argument == 0.0
    }

    /// Argument reduced to (−π, π], for callers that need the principal
    /// branch explicitly.
    pub fn principal_argument(self) -> f64 {
        let mut a = self.argument % (2.0 * PI);
        if a > PI {
            a -= 2.0 * PI;
        } else if a <= -PI {
            a += 2.0 * PI;
        }
        a
    }
}

impl fmt::Display for SurfaceComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·e^({}i)", self.modulus, self.argument)
    }
}

/// The order ν of the Bessel functions; arbitrary complex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Order {
    pub re: f64,
    pub im: f64,
}

impl std::ops::Neg for Order {
    type Output = Order;

    fn neg(self) -> Order {
        Order {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Order {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(re.is_finite() && im.is_finite()) {
            return Err(domain("order must be finite"));
        }
        Ok(Order { re, im })
    }

    pub const fn real(re: f64) -> Self {
        Order { re, im: 0.0 }
    }

    pub fn is_real(self) -> bool {
        self.im == 0.0
    }

    pub fn to_complex<T: Real>(self) -> Complex<T> {
        Complex::new(T::of(self.re), T::of(self.im))
    }

    pub fn shift(self, by: f64) -> Self {
        Order {
            re: self.re + by,
            im: self.im,
        }
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    /// When 2ν is (numerically) an odd integer, returns |ν| + 1/2, the
    /// index from which every `a_n(ν)` vanishes.
    pub fn termination_index(self) -> Option<usize> {
        if self.im.abs() > 1e-13 {
            return None;
        }
        let two = 2.0 * self.re.abs();
        let odd = two.round();
        if (two - odd).abs() < 1e-13 && odd as i64 % 2 == 1 {
            Some(((odd + 1.0) / 2.0) as usize)
        } else {
            None
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.im < 0.0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl std::str::FromStr for Order {
    type Err = crate::error::Error;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi` (also with `j`).
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || domain(format!("cannot parse order '{s}'"));
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
            let re: f64 = t.parse().map_err(|_| bad())?;
            return Order::new(re, 0.0);
        };
        // split at the last sign that is not the leading one or part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        let coef = |x: &str| -> Result<f64> {
            match x {
                "" | "+" => Ok(1.0),
                "-" => Ok(-1.0),
                _ => x.parse().map_err(|_| bad()),
            }
        };
        match split {
            Some(k) => Order::new(body[..k].parse().map_err(|_| bad())?, coef(&body[k..])?),
            None => Order::new(0.0, coef(body)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_orders() {
        assert_eq!("2+i".parse::<Order>().unwrap(), Order { re: 2.0, im: 1.0 });
        assert_eq!("0.5".parse::<Order>().unwrap(), Order::real(0.5));
        assert_eq!(
            "1-3i".parse::<Order>().unwrap(),
            Order { re: 1.0, im: -3.0 }
        );
        assert_eq!(
            "-2.5i".parse::<Order>().unwrap(),
            Order { re: 0.0, im: -2.5 }
        );
        assert_eq!(
            "1e-3+2e+1i".parse::<Order>().unwrap(),
            Order { re: 1e-3, im: 20.0 }
        );
        assert!("abc".parse::<Order>().is_err());
    }

    #[test]
    fn termination_index_detects_half_odd_orders() {
        assert_eq!(Order::real(0.5).termination_index(), Some(1));
        assert_eq!(Order::real(-2.5).termination_index(), Some(3));
        assert_eq!(Order::real(1.0).termination_index(), None);
        assert_eq!(Order { re: 0.5, im: 0.1 }.termination_index(), None);
    }

    #[test]
    fn square_root_follows_the_sheet() {
        let z = SurfaceComplex::new(4.0, 3.0 * PI / 2.0).unwrap();
        let s: Complex<f64> = z.sqrt();
        assert!((s - Complex::new(-(2f64.sqrt()), 2f64.sqrt())).norm() < 1e-14);
        assert!((z.principal_argument() + PI / 2.0).abs() < 1e-15);
    }
}
