//! The coefficient recurrences against exact rational arithmetic.

use besselasym::{coeff_a, coeff_b, Dd, Order};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `∏_{k=1}^{n} (4ν² − (2k−1)²) / (8ⁿ n!)`.
fn a_exact(nu: &BigRational, n: usize) -> BigRational {
    let f = rat(4, 1) * nu * nu;
    (1..=n).fold(BigRational::one(), |acc, k| {
        let o = rat(2 * k as i64 - 1, 1);
        acc * (&f - &o * &o) / rat(8 * k as i64, 1)
    })
}

/// `∏_{k=1}^{n−1} (4ν² − (2k−1)²) · (4ν² + 4n² − 1) / (8ⁿ n!)`.
fn b_exact(nu: &BigRational, n: usize) -> BigRational {
    if n == 0 {
        return BigRational::one();
    }
    let f = rat(4, 1) * nu * nu;
    let head = (1..n).fold(BigRational::one(), |acc, k| {
        let o = rat(2 * k as i64 - 1, 1);
        acc * (&f - &o * &o) / rat(8 * k as i64, 1)
    });
    head * (&f + rat(4 * (n * n) as i64 - 1, 1)) / rat(8 * n as i64, 1)
}

fn to_dd(r: &BigRational) -> Dd {
    let hi = r.to_f64().unwrap();
    if hi == 0.0 || !hi.is_finite() {
        return Dd::from_f64(hi);
    }
    let rest = r - BigRational::from_float(hi).unwrap();
    Dd::from_pair(hi, rest.to_f64().unwrap())
}

fn rel(a: Dd, b: Dd) -> f64 {
    if b == Dd::ZERO {
        return a.abs().to_f64();
    }
    ((a - b) / b).abs().to_f64()
}

#[test]
fn rational_orders_match_exact_products() {
    for (p, q) in [
        (0, 1),
        (1, 3),
        (1, 2),
        (5, 2),
        (7, 4),
        (-9, 5),
        (13, 1),
        (31, 3),
    ] {
        let nu_r = rat(p, q);
        let nu = Order::real(p as f64 / q as f64);
        for n in 0..=60 {
            let a = coeff_a::<Dd>(nu, n).re;
            let b = coeff_b::<Dd>(nu, n).re;
            let (ea, eb) = (a_exact(&nu_r, n), b_exact(&nu_r, n));
            // ν itself carries a rounding error when q is not a power of two
            let tol = if q & (q - 1) == 0 { 1e-29 } else { 1e-13 };
            if ea.is_zero() {
                assert_eq!(a, Dd::ZERO, "a_{n}({p}/{q})");
            } else {
                assert!(
                    rel(a, to_dd(&ea)) < tol * n.max(1) as f64,
                    "a_{n}({p}/{q}): {a} vs {}",
                    to_dd(&ea)
                );
            }
            assert!(
                rel(b, to_dd(&eb)) < tol * n.max(1) as f64,
                "b_{n}({p}/{q}): {b} vs {}",
                to_dd(&eb)
            );
        }
    }
}

#[test]
fn known_small_values() {
    // a_1(0) = −1/8, a_2(0) = 9/128, b_1(0) = 3/8
    let z = Order::real(0.0);
    assert_eq!(coeff_a::<f64>(z, 1).re, -0.125);
    assert_eq!(coeff_a::<f64>(z, 2).re, 9.0 / 128.0);
    assert_eq!(coeff_b::<f64>(z, 1).re, 0.375);
    assert_eq!(to_dd(&a_exact(&rat(0, 1), 2)), Dd::from_f64(9.0 / 128.0));
}
