//! Every expansion, rebuilt from oracle remainders through its channels,
//! must reproduce the oracle value of the function itself.

use std::f64::consts::PI;

use besselasym::expansions::{reconstruct, remainder_from_oracle};
use besselasym::oracle::reference;
use besselasym::scalar::cabs;
use besselasym::{ExpansionContext, ExpansionKind, Order, SurfaceComplex};

fn check(kind: ExpansionKind, r: f64, arg: f64, nu: Order, n: usize, m: usize) {
    let ctx = ExpansionContext::new(SurfaceComplex::new(r, arg).unwrap(), nu, n, m);
    let rems: Vec<_> = remainder_from_oracle(kind, &ctx)
        .unwrap()
        .into_iter()
        .map(|o| o.value)
        .collect();
    let rebuilt = reconstruct(kind, &ctx, &rems).unwrap();
    let direct = reference(kind, ctx.z, nu).unwrap();
    let rel = cabs(rebuilt - direct.value) / cabs(direct.value);
    assert!(rel < 1e-24, "{kind} r={r} arg={arg} nu={nu}: rel {rel:e}");
}

#[test]
fn all_kinds_rebuild_from_their_channels() {
    let nus = [
        Order::real(0.0),
        Order::real(1.0 / 3.0),
        Order::new(2.0, 1.0).unwrap(),
    ];
    for kind in ExpansionKind::ALL {
        let (lo, hi) = kind.sector();
        for nu in nus {
            for t in [0.15, 0.5, 0.85] {
                let arg = lo + t * (hi - lo);
                check(kind, 7.0, arg, nu, 4, 3);
            }
        }
    }
}

#[test]
fn hankel_channel_is_rotated_k_remainder() {
    use besselasym::bounds::Family;
    use besselasym::expansions::family_remainder_from_oracle;
    let z = SurfaceComplex::new(8.0, PI / 4.0).unwrap();
    let nu = Order::real(1.0 / 3.0);
    let ctx = ExpansionContext::new(z, nu, 6, 0);
    let h = remainder_from_oracle(ExpansionKind::H1, &ctx).unwrap()[0].value;
    let k = family_remainder_from_oracle(Family::K, z.rotate(-PI / 2.0), nu, 6)
        .unwrap()
        .value;
    assert!(cabs(h - k) < 1e-12 * cabs(k));
}
