//! Oracle-backed validation suites. Each runs a fixed grid and collects
//! every violation instead of stopping at the first.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use num_complex::Complex64;

use crate::bounds::{
    bound_complex_nu, bound_real_nu, olver_bound, olver_bound_j, sign_ratio_check, BoundBreakdown,
    Family,
};
use crate::coefficients::{coeff_a, vanishes_from};
use crate::error::{Error, Result};
use crate::expansions::family_remainders_from_oracle;
use crate::integral_reps::{
    coeff_a_via_integral, remainder_J_via_thm1, remainder_K_via_thm1, remainder_via_boyd,
    IntegralRepConfig,
};
use crate::oracle::OracleValue;
use crate::reexpansion::{optimal_truncation, reexpand, sign_ratio_reexp};
use crate::scalar::{cabs, to_c64};
use crate::surface::{Order, SurfaceComplex};
use crate::terminants::{lambda_terminant, pi_terminant, sup_lambda_bound, sup_pi_bound};
use crate::Dd;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Bounds,
    Signs,
    Reexpansion,
    Terminants,
    IntegralReps,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Bounds,
        Suite::Signs,
        Suite::Reexpansion,
        Suite::Terminants,
        Suite::IntegralReps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bounds => "bounds",
            Suite::Signs => "signs",
            Suite::Reexpansion => "reexpansion",
            Suite::Terminants => "terminants",
            Suite::IntegralReps => "integral-reps",
        }
    }

    pub fn run(self) -> SuiteReport {
        match self {
            Suite::Bounds => suite_bounds(),
            Suite::Signs => suite_signs(),
            Suite::Reexpansion => suite_reexpansion(),
            Suite::Terminants => suite_terminants(),
            Suite::IntegralReps => suite_integral_reps(),
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: usize,
    pub violations: Vec<String>,
    /// Failures of the machinery itself (quadrature, sectors), kept apart
    /// from bound violations.
    pub errors: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport {
            name,
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.errors.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} checks, {} violations, {} errors",
            self.name,
            self.checked,
            self.violations.len(),
            self.errors.len()
        )
    }
}

/// Largest absolute error the oracle vouches for.
fn oracle_slack(o: &OracleValue) -> f64 {
    cabs(o.value) * 10f64.powi(-(o.guaranteed_digits as i32))
}

fn orders(list: &[(f64, f64)]) -> Vec<Order> {
    list.iter().map(|&(a, b)| Order { re: a, im: b }).collect()
}

pub const BOUND_ORDERS: [(f64, f64); 6] = [
    (0.0, 0.0),
    (1.0 / 3.0, 0.0),
    (1.0, 0.0),
    (2.7, 0.0),
    (2.0, 1.0),
    (1.0, 3.0),
];
pub const BOUND_MODULI: [f64; 3] = [5.0, 10.0, 20.0];

pub fn bound_args() -> Vec<f64> {
    let mut v = vec![0.0];
    for a in [FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4, PI - 0.01] {
        v.push(a);
        v.push(-a);
    }
    v
}

/// Every theorem that applies at the point, by name.
fn applicable_bounds(
    family: Family,
    z: SurfaceComplex,
    nu: Order,
    n: usize,
) -> Vec<(&'static str, BoundBreakdown)> {
    let mut out = Vec::new();
    if vanishes_from(nu, n, family.is_derivative()) {
        out.push(("exact", BoundBreakdown::exact()));
    }
    if nu.is_real() {
        if let Ok(b) = bound_real_nu(family, z, nu.re, n) {
            out.push(("real-order", b));
        }
    }
    if let Ok(b) = bound_complex_nu(family, z, nu, n) {
        out.push(("complex-order", b));
    }
    let olver = match family {
        Family::K => olver_bound(z, nu, n).ok(),
        Family::J => olver_bound_j(z, nu, n).ok(),
        _ => None,
    };
    if let Some(b) = olver {
        out.push(("olver", b));
    }
    out
}

/// Remainders against every applicable bound over the order, modulus and
/// argument grid, `N = 1..=⌈2|z|⌉`.
pub fn suite_bounds() -> SuiteReport {
    let mut rep = SuiteReport::new("bounds");
    for family in Family::ALL {
        for nu in orders(&BOUND_ORDERS) {
            for r in BOUND_MODULI {
                for arg in bound_args() {
                    let z = SurfaceComplex {
                        modulus: r,
                        argument: arg,
                    };
                    let n_max = (2.0 * r).ceil() as usize;
                    let rems = match family_remainders_from_oracle(family, z, nu, n_max) {
                        Ok(v) => v,
                        Err(e) => {
                            rep.errors
                                .push(format!("{family} ν={nu:?} z={r}e^{{i{arg:.4}}}: {e}"));
                            continue;
                        }
                    };
                    for (n, o) in rems.iter().enumerate().skip(1) {
                        let abs_r = cabs(o.value);
                        let slack = oracle_slack(o);
                        for (name, b) in applicable_bounds(family, z, nu, n) {
                            rep.check(abs_r <= b.total * (1.0 + 1e-12) + slack, || {
                                format!(
                                    "{family} {name} ν={nu:?} |z|={r} arg={arg:.4} N={n}: |R| = {abs_r:e} > bound {:e}",
                                    b.total
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    rep
}

pub const SIGN_POINTS: [f64; 4] = [2.0, 5.0, 10.0, 20.0];
pub const SIGN_ORDERS: [f64; 4] = [0.0, 0.25, 1.0, 2.3];
pub const REEXP_MODULI: [f64; 4] = [4.0, 5.0, 6.0, 8.0];
pub const REEXP_ORDERS: [(f64, f64); 3] = [(0.0, 0.0), (1.0 / 3.0, 0.0), (1.0, 0.5)];

/// On the positive axis the remainder is a fraction in (0, 1) of the first
/// omitted term, both for the plain expansions and the re-expansions.
pub fn suite_signs() -> SuiteReport {
    let mut rep = SuiteReport::new("signs");
    for family in Family::ALL {
        for z in SIGN_POINTS {
            let zs = SurfaceComplex {
                modulus: z,
                argument: 0.0,
            };
            for nu in SIGN_ORDERS {
                let n_max = (2.0 * z).ceil() as usize;
                let rems = match family_remainders_from_oracle(family, zs, Order::real(nu), n_max) {
                    Ok(v) => v,
                    Err(e) => {
                        rep.errors.push(format!("{family} z={z} ν={nu}: {e}"));
                        continue;
                    }
                };
                for (n, o) in rems.iter().enumerate().skip(1) {
                    match sign_ratio_check(family, z, nu, n, to_c64(o.value)) {
                        Ok(s) => rep
                            .check(s.exact || (s.in_unit_interval && s.sign_matches), || {
                                format!("{family} z={z} ν={nu} N={n}: θ = {}", s.theta)
                            }),
                        Err(Error::NoApplicableBound(_)) => {}
                        Err(e) => rep.errors.push(format!("{family} z={z} ν={nu} N={n}: {e}")),
                    }
                }
            }
        }
        for z in REEXP_MODULI {
            for &(nu, im) in &REEXP_ORDERS {
                if im != 0.0 {
                    continue;
                }
                let zs = SurfaceComplex {
                    modulus: z,
                    argument: 0.0,
                };
                let r =
                    reexp_remainder(family, zs, Order::real(nu), z).and_then(|(rnm, pair, _)| {
                        sign_ratio_reexp(family, z, nu, pair, rnm).map(|s| (s, pair))
                    });
                match r {
                    Ok((s, pair)) => rep.check(s.exact || s.in_unit_interval, || {
                        format!(
                            "{family} re-expansion z={z} ν={nu} (N, M)=({}, {}): Θ = {}",
                            pair.N, pair.M, s.theta
                        )
                    }),
                    Err(e) => rep
                        .errors
                        .push(format!("{family} re-expansion z={z} ν={nu}: {e}")),
                }
            }
        }
    }
    rep
}

/// `R_{N,M}` from the oracle at the optimal pair, with the tail bound.
fn reexp_remainder(
    family: Family,
    z: SurfaceComplex,
    nu: Order,
    modulus: f64,
) -> Result<(Complex64, crate::reexpansion::TruncationPair, Option<f64>)> {
    let pair = optimal_truncation(modulus, 0.0, 0.0)?;
    let o = family_remainders_from_oracle(family, z, nu, pair.N)?
        .pop()
        .expect("non-empty");
    let re = reexpand::<Dd>(family, z, nu, pair)?;
    Ok((to_c64(o.value - re.series_part), pair, re.tail_bound))
}

pub fn reexp_args(family: Family) -> Vec<f64> {
    [0.0, PI / 3.0, 0.75 * PI, PI]
        .into_iter()
        .filter(|a| !family.is_oscillatory() || *a <= FRAC_PI_2)
        .collect()
}

/// `|R_{N,M}| ≤ tail bound ≤ 10³|z|^{−½}e^{−4|z|}` at the optimal pair.
pub fn suite_reexpansion() -> SuiteReport {
    let mut rep = SuiteReport::new("reexpansion");
    for family in Family::ALL {
        for r in REEXP_MODULI {
            let target = 1e3 / r.sqrt() * (-4.0 * r).exp();
            for arg in reexp_args(family) {
                for nu in orders(&REEXP_ORDERS) {
                    let z = SurfaceComplex {
                        modulus: r,
                        argument: arg,
                    };
                    match reexp_remainder(family, z, nu, r) {
                        Ok((rnm, pair, Some(tail))) => rep.check(rnm.norm() <= tail && tail <= target, || {
                            format!(
                                "{family} |z|={r} arg={arg:.4} ν={nu:?} (N, M)=({}, {}): |R_NM| = {:e}, tail = {tail:e}, target = {target:e}",
                                pair.N,
                                pair.M,
                                rnm.norm()
                            )
                        }),
                        Ok((_, pair, None)) => rep.errors.push(format!(
                            "{family} |z|={r} ν={nu:?} (N, M)=({}, {}): no tail bound",
                            pair.N, pair.M
                        )),
                        Err(e) => rep.errors.push(format!("{family} |z|={r} arg={arg:.4} ν={nu:?}: {e}")),
                    }
                }
            }
        }
    }
    rep
}

pub const TERMINANT_ORDERS: [f64; 6] = [0.5, 1.0, 2.5, 5.0, 10.5, 20.0];

/// Recurrence, positivity and the sup bounds of the basic terminants.
pub fn suite_terminants() -> SuiteReport {
    let mut rep = SuiteReport::new("terminants");
    // 5 orders × 10 arguments × 10 moduli
    for &p in &[0.5, 1.0, 2.5, 7.0, 15.5] {
        for i in 0..10 {
            let theta = -1.4 * PI + 2.8 * PI * i as f64 / 9.0;
            for j in 0..10 {
                let m = 0.5 * 40f64.powf(j as f64 / 9.0);
                let w = SurfaceComplex {
                    modulus: m,
                    argument: theta,
                };
                match (
                    lambda_terminant::<f64>(p, w),
                    lambda_terminant::<f64>(p + 1.0, w),
                ) {
                    (Ok(a), Ok(b)) => {
                        let wc = w.to_complex::<f64>();
                        let lhs = b.value * p;
                        let rhs = wc * (1.0 - a.value);
                        let scale = lhs.norm().max(rhs.norm()).max(f64::MIN_POSITIVE);
                        rep.check((lhs - rhs).norm() <= 1e-11 * scale, || {
                            format!("recurrence p={p} w={m:.4}e^{{i{theta:.4}}}: {lhs} vs {rhs}")
                        });
                    }
                    (Err(e), _) | (_, Err(e)) => {
                        rep.errors.push(format!("Λ at p={p} θ={theta:.4}: {e}"))
                    }
                }
            }
        }
    }
    for p in TERMINANT_ORDERS {
        for j in 0..40 {
            let x = 0.01 * 1e4f64.powf(j as f64 / 39.0);
            let w = SurfaceComplex {
                modulus: x,
                argument: 0.0,
            };
            for (name, t) in [
                ("Λ", lambda_terminant::<f64>(p, w)),
                ("Π", pi_terminant::<f64>(p, w)),
            ] {
                match t {
                    Ok(t) => rep.check(
                        t.value.re > 0.0 && t.value.re < 1.0 && t.value.im.abs() < 1e-14,
                        || format!("{name}_{p}({x}) = {} not in (0, 1)", t.value),
                    ),
                    Err(e) => rep.errors.push(format!("{name}_{p}({x}): {e}")),
                }
            }
        }
    }
    let lambda_angles = [
        0.0,
        FRAC_PI_4,
        FRAC_PI_2,
        0.75 * PI,
        PI,
        1.25 * PI,
        1.45 * PI,
    ];
    let pi_angles = [0.0, PI / 8.0, FRAC_PI_4, FRAC_PI_2, 0.75 * PI, 0.95 * PI];
    for p in TERMINANT_ORDERS {
        for (name, angles, oscillatory) in [
            ("Λ", &lambda_angles[..], false),
            ("Π", &pi_angles[..], true),
        ] {
            for &theta in angles {
                let sup = if oscillatory {
                    sup_pi_bound(p, theta)
                } else {
                    sup_lambda_bound(p, theta)
                };
                let sup = match sup {
                    Ok(s) => s,
                    Err(e) => {
                        rep.errors
                            .push(format!("sup {name} p={p} θ={theta:.4}: {e}"));
                        continue;
                    }
                };
                let mut worst: f64 = 0.0;
                for k in 0..200 {
                    let w = SurfaceComplex {
                        modulus: 0.02 * 1e4f64.powf(k as f64 / 199.0),
                        argument: theta,
                    };
                    let t = if oscillatory {
                        pi_terminant::<f64>(p, w)
                    } else {
                        lambda_terminant::<f64>(p, w)
                    };
                    match t {
                        Ok(t) => worst = worst.max(t.value.norm()),
                        Err(e) => rep.errors.push(format!("{name}_{p} at θ={theta:.4}: {e}")),
                    }
                }
                rep.check(worst <= sup * (1.0 + 1e-12), || {
                    format!("sup {name} p={p} θ={theta:.4}: sampled {worst} > bound {sup}")
                });
            }
        }
    }
    rep
}

/// The terminant (λ = ½) and Stieltjes representations against each other,
/// and the coefficient moments against the recurrence.
pub fn suite_integral_reps() -> SuiteReport {
    let mut rep = SuiteReport::new("integral-reps");
    let cfg = IntegralRepConfig::default();
    for arg in [0.0, 0.7] {
        let z = SurfaceComplex {
            modulus: 10.0,
            argument: arg,
        };
        for nu in [0.0, 1.0 / 3.0] {
            let nu = Order::real(nu);
            for n in [3usize, 5, 8] {
                for family in [Family::K, Family::J] {
                    let a = if family == Family::K {
                        remainder_K_via_thm1(z, nu, n, cfg)
                    } else {
                        remainder_J_via_thm1(z, nu, n, cfg)
                    };
                    match (a, remainder_via_boyd(family, z, nu, n, cfg)) {
                        (Ok(a), Ok(b)) => rep.check((a - b).norm() <= 1e-8, || {
                            format!("{family} z=10e^{{i{arg}}} ν={nu:?} N={n}: {a} vs {b}")
                        }),
                        (Err(e), _) | (_, Err(e)) => {
                            rep.errors.push(format!("{family} ν={nu:?} N={n}: {e}"))
                        }
                    }
                }
            }
        }
    }
    for nu in orders(&[(0.0, 0.0), (1.0 / 3.0, 0.0), (2.0, 1.0)]) {
        for n in 0..=8usize {
            if nu.re.abs() >= n as f64 + 0.5 {
                rep.notes.push(format!(
                    "a_{n}({nu:?}) skipped: the moment integral diverges"
                ));
                continue;
            }
            let exact = coeff_a::<f64>(nu, n);
            match coeff_a_via_integral(nu, n, cfg) {
                Ok(v) => rep.check((v - exact).norm() <= 1e-10 * exact.norm(), || {
                    format!("a_{n}({nu:?}): integral {v} vs recurrence {exact}")
                }),
                Err(e) => rep.errors.push(format!("a_{n}({nu:?}): {e}")),
            }
        }
    }
    rep
}
