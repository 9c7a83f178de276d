use std::f64::consts::PI;

use besselasym::bounds::Family;
use besselasym::terminants::{sup_lambda_bound, sup_pi_bound};
use besselasym::{
    coeff_a, coeff_b, evaluate_certified, optimal_truncation, partial_sum, reexpand_tail_bound,
    ExpansionContext, ExpansionKind, Order, SurfaceComplex,
};
use proptest::prelude::*;

fn order() -> impl Strategy<Value = Order> {
    (-6.0f64..6.0, -3.0f64..3.0).prop_map(|(a, b)| Order::new(a, b).unwrap())
}

fn close(a: num_complex::Complex64, b: num_complex::Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1e-300)
}

proptest! {
    #[test]
    fn coefficients_are_even_in_nu(nu in order(), n in 0usize..40) {
        prop_assert!(close(coeff_a::<f64>(nu, n), coeff_a::<f64>(-nu, n), 1e-13));
        prop_assert!(close(coeff_b::<f64>(nu, n), coeff_b::<f64>(-nu, n), 1e-13));
    }

    // b_n = a_{n−1}(4ν² + 4n² − 1)/(8n)
    #[test]
    fn derivative_coefficients_follow_from_a(nu in order(), n in 1usize..40) {
        let v = nu.to_complex::<f64>();
        let want = coeff_a::<f64>(nu, n - 1) * (4.0 * v * v + (4 * n * n) as f64 - 1.0) / (8 * n) as f64;
        prop_assert!(close(coeff_b::<f64>(nu, n), want, 1e-12));
    }

    #[test]
    fn conjugate_symmetry(nu in order(), r in 2.0f64..30.0, arg in -1.4f64..1.4, n in 1usize..12) {
        for kind in [ExpansionKind::K, ExpansionKind::Kp, ExpansionKind::J, ExpansionKind::Y] {
            let c = ExpansionContext::new(SurfaceComplex::new(r, arg).unwrap(), nu, n, n);
            let cc = ExpansionContext::new(SurfaceComplex::new(r, -arg).unwrap(), Order::new(nu.re, -nu.im).unwrap(), n, n);
            let (a, b) = (partial_sum::<f64>(kind, &c).unwrap(), partial_sum::<f64>(kind, &cc).unwrap());
            prop_assert!(close(a.conj(), b, 1e-12), "{kind}: {a} vs {b}");
            let (ba, bb) = (evaluate_certified::<f64>(kind, &c), evaluate_certified::<f64>(kind, &cc));
            if let (Ok(ba), Ok(bb)) = (ba, bb) {
                prop_assert!((ba.value_bound - bb.value_bound).abs() <= 1e-12 * ba.value_bound.max(1e-300));
            }
        }
    }

    #[test]
    fn sup_bounds_grow_with_order(p in 0.5f64..40.0, dp in 0.0f64..10.0, theta in -PI..PI) {
        let (a, b) = (sup_lambda_bound(p, theta).unwrap(), sup_lambda_bound(p + dp, theta).unwrap());
        prop_assert!(a >= 1.0 && b >= a * (1.0 - 1e-12), "Λ: {a} then {b}");
        let t = theta * 0.99;
        let (a, b) = (sup_pi_bound(p, t).unwrap(), sup_pi_bound(p + dp, t).unwrap());
        prop_assert!(a >= 1.0 && b >= a * (1.0 - 1e-12), "Π: {a} then {b}");
    }

    #[test]
    fn order_text_round_trips(nu in order()) {
        prop_assert_eq!(nu.to_string().parse::<Order>().unwrap(), nu);
    }

    #[test]
    fn tail_bound_is_finite_and_nonnegative(r in 1.0f64..10.0, arg in -PI..PI, x in -3.0f64..3.0) {
        let pair = optimal_truncation(r, 0.0, 0.0).unwrap();
        let z = SurfaceComplex::new(r, arg).unwrap();
        if let Ok(t) = reexpand_tail_bound(Family::K, z, Order::real(x), pair) {
            prop_assert!(t.is_finite() && t >= 0.0);
        }
    }
}
