//! The expansion coefficients `a_n(ν)` and `b_n(ν)`.
//!
//! Both are polynomials in ν² of degree n:
//!
//! ```text
//! a_n(ν) = (4ν²−1²)(4ν²−3²)···(4ν²−(2n−1)²) / (8ⁿ n!)
//! b_n(ν) = (4ν²−1²)···(4ν²−(2n−3)²) · (4ν²+4n²−1) / (8ⁿ n!),  b_0 = 1
//! ```
//!
//! `a_n` is built by its ratio recurrence and `b_n` from its own product, so
//! the identity `2 b_n(ν) = a_n(ν+1) + a_n(ν−1)` is a genuine cross-check.

use num_complex::Complex;
use num_traits::{One, Zero};
use statrs::function::gamma::ln_gamma;

use crate::scalar::Real;
use crate::surface::Order;

/// Coefficients `a_0..=a_N` and `b_0..=b_N` at a fixed order.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTable<T> {
    pub nu: Order,
    pub a: Vec<Complex<T>>,
    pub b: Vec<Complex<T>>,
}

impl<T: Real> CoeffTable<T> {
    pub fn n_max(&self) -> usize {
        self.a.len() - 1
    }
}

fn four_nu_sq<T: Real>(nu: Order) -> Complex<T> {
    let v = nu.to_complex::<T>();
    v * v * T::of(4.0)
}

fn factor<T: Real>(four_nu2: Complex<T>, k: usize) -> Complex<T> {
    let odd = T::of((2 * k - 1) as f64);
    four_nu2 - odd * odd
}

pub fn coeff_a<T: Real>(nu: Order, n: usize) -> Complex<T> {
    let f = four_nu_sq::<T>(nu);
    let mut a = Complex::one();
    for k in 1..=n {
        a = a * factor(f, k) / T::of(8.0 * k as f64);
    }
    a
}

pub fn coeff_b<T: Real>(nu: Order, n: usize) -> Complex<T> {
    if n == 0 {
        return Complex::one();
    }
    let f = four_nu_sq::<T>(nu);
    let mut p: Complex<T> = Complex::one();
    for k in 1..n {
        p = p * factor(f, k) / T::of(8.0 * k as f64);
    }
    let nn = T::of((n * n) as f64);
    p * (f + nn * T::of(4.0) - T::one()) / T::of(8.0 * n as f64)
}

pub fn coeff_table<T: Real>(nu: Order, n_max: usize) -> CoeffTable<T> {
    let f = four_nu_sq::<T>(nu);
    let mut a = Vec::with_capacity(n_max + 1);
    let mut b = Vec::with_capacity(n_max + 1);
    a.push(Complex::one());
    b.push(Complex::one());
    for n in 1..=n_max {
        let eight_n = T::of(8.0 * n as f64);
        let prev = a[n - 1];
        a.push(prev * factor(f, n) / eight_n);
        let nn = T::of((n * n) as f64);
        b.push(prev * (f + nn * T::of(4.0) - T::one()) / eight_n);
    }
    CoeffTable { nu, a, b }
}

/// `ln |a_n(x)|` for real `x`, or `-∞` when the coefficient vanishes.
/// Used by the bounds, where `|a_n|` alone may overflow.
pub fn ln_abs_a_real(x: f64, n: usize) -> f64 {
    let f = 4.0 * x * x;
    let mut s = 0.0;
    for k in 1..=n {
        let o = (2 * k - 1) as f64;
        s += (f - o * o).abs().ln();
    }
    s - n as f64 * 8f64.ln() - ln_gamma(n as f64 + 1.0)
}

/// `ln |b_n(x)|` for real `x`.
pub fn ln_abs_b_real(x: f64, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let f = 4.0 * x * x;
    let mut s = 0.0;
    for k in 1..n {
        let o = (2 * k - 1) as f64;
        s += (f - o * o).abs().ln();
    }
    let nn = (n * n) as f64;
    s + (f + 4.0 * nn - 1.0).abs().ln() - n as f64 * 8f64.ln() - ln_gamma(n as f64 + 1.0)
}

/// `|a_n(ν)|` for complex ν as a logarithm.
pub fn ln_abs_a(nu: Order, n: usize) -> f64 {
    let f = four_nu_sq::<f64>(nu);
    let mut s = 0.0;
    for k in 1..=n {
        s += factor(f, k).norm().ln();
    }
    s - n as f64 * 8f64.ln() - ln_gamma(n as f64 + 1.0)
}

/// `|b_n(ν)|` for complex ν as a logarithm.
pub fn ln_abs_b(nu: Order, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let f = four_nu_sq::<f64>(nu);
    let mut s = 0.0;
    for k in 1..n {
        s += factor(f, k).norm().ln();
    }
    let nn = (n * n) as f64;
    s + (f + 4.0 * nn - 1.0).norm().ln() - n as f64 * 8f64.ln() - ln_gamma(n as f64 + 1.0)
}

/// Whether every coefficient from index `n` on is zero (2ν odd, n large).
pub fn vanishes_from(nu: Order, n: usize, derivative: bool) -> bool {
    match nu.termination_index() {
        Some(k) => n >= if derivative { k + 1 } else { k },
        None => false,
    }
}

/// Sum `Σ_{n<N} c_n x^n` by Horner's rule.
pub(crate) fn horner<T: Real>(c: &[Complex<T>], x: Complex<T>) -> Complex<T> {
    c.iter()
        .rev()
        .fold(Complex::zero(), |acc, &cn| acc * x + cn)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(coeff_a::<f64>(Order::real(3.7), 0), Complex::one());
        assert_eq!(coeff_a::<f64>(Order::real(0.5), 1), Complex::zero());
        assert_eq!(
            coeff_a::<f64>(Order::real(1.0), 1),
            Complex::new(0.375, 0.0)
        );
        assert_eq!(
            coeff_b::<f64>(Order::real(0.0), 1),
            Complex::new(0.375, 0.0)
        );
        assert_eq!(coeff_b::<f64>(Order::real(2.0), 0), Complex::one());
        let t = coeff_table::<f64>(Order::real(0.0), 2);
        assert_eq!(
            t.a,
            vec![
                Complex::one(),
                Complex::new(-0.125, 0.0),
                Complex::new(9.0 / 128.0, 0.0)
            ]
        );
    }

    #[test]
    fn table_agrees_with_single_coefficients() {
        let nu = Order { re: 2.0, im: 1.0 };
        let t = coeff_table::<f64>(nu, 30);
        for n in 0..=30 {
            assert!((t.a[n] - coeff_a::<f64>(nu, n)).norm() <= 1e-15 * t.a[n].norm());
            assert!((t.b[n] - coeff_b::<f64>(nu, n)).norm() <= 1e-13 * t.b[n].norm().max(1.0));
        }
    }

    #[test]
    fn half_integer_orders_terminate() {
        let t = coeff_table::<f64>(Order::real(0.5), 4);
        assert!(t.a[1..].iter().all(|c| c.is_zero()));
        assert!(vanishes_from(Order::real(1.5), 2, false));
        assert!(!vanishes_from(Order::real(1.5), 2, true));
        assert!(vanishes_from(Order::real(1.5), 3, true));
        assert!(coeff_b::<f64>(Order::real(1.5), 3).is_zero());
    }

    #[test]
    fn log_magnitudes_match() {
        let nu = Order { re: 1.0, im: 3.0 };
        for n in [1, 5, 17] {
            let a = coeff_a::<f64>(nu, n).norm().ln();
            let b = coeff_b::<f64>(nu, n).norm().ln();
            assert!((a - ln_abs_a(nu, n)).abs() < 1e-12);
            assert!((b - ln_abs_b(nu, n)).abs() < 1e-12);
            assert!(
                (coeff_a::<f64>(Order::real(2.3), n).norm().ln() - ln_abs_a_real(2.3, n)).abs()
                    < 1e-12
            );
            assert!(
                (coeff_b::<f64>(Order::real(2.3), n).norm().ln() - ln_abs_b_real(2.3, n)).abs()
                    < 1e-12
            );
        }
        assert_eq!(ln_abs_a_real(0.5, 3), f64::NEG_INFINITY);
    }
}
