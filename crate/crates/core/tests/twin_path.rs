//! The module presentation computed at order D must agree with the lattice
//! computed directly at every order d ≤ D, and the lattice must match the
//! log-derivative decider on a brute-force ball of exponent vectors.

use itertools::Itertools;
use num_bigint::BigInt;
use proptest::prelude::*;

use sigmagal::galois::{combine, jet_functions, Combination, relation_lattice, relation_lattice_multiplicative};
use sigmagal::ratfield::{int, rat, OperatorSpec, Poly, QRatFunc, RatFunc};

#[derive(Clone, Debug)]
struct Instance {
    a: QRatFunc,
    order: usize,
}

fn linear(p: i64) -> Poly<sigmagal::ratfield::Q> {
    Poly::new(vec![int(-p), int(1)])
}

/// Simple poles in −3..3 with residues r/s (r in −4..4, s in 1..3), an
/// optional linear polynomial part and an optional double pole.
fn instance() -> impl Strategy<Value = Instance> {
    (
        prop::collection::vec((-3i64..=3, -4i64..=4), 1..=3),
        1i64..=3,
        prop::option::weighted(0.5, (-2i64..=2, -2i64..=2)),
        prop::option::weighted(0.25, (-3i64..=3, -2i64..=2)),
        0usize..=4,
    )
        .prop_map(|(poles, s, poly, double, order)| {
            let mut a = RatFunc::zero();
            for (p, r) in poles {
                a = a.add(&RatFunc::new(Poly::constant(rat(r, s)), linear(p)));
            }
            if let Some((c0, c1)) = poly {
                a = a.add(&RatFunc::from_poly(Poly::new(vec![int(c0), int(c1)])));
            }
            if let Some((p, c)) = double {
                a = a.add(&RatFunc::new(Poly::constant(int(c)), linear(p).pow(2)));
            }
            Instance { a, order }
        })
}

fn ball(len: usize, radius: i64) -> impl Iterator<Item = Vec<BigInt>> {
    (0..len).map(|_| -radius..=radius).multi_cartesian_product().map(|v| v.into_iter().map(BigInt::from).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn twin_path(inst in instance()) {
        let op = OperatorSpec::shift();
        let rel = relation_lattice_multiplicative(&inst.a, &op, inst.order).unwrap();
        prop_assert!(rel.certificates.iter().all(|c| c.verify(&op)));
        for d in 0..=inst.order {
            let direct = relation_lattice(std::slice::from_ref(&inst.a), &op, d).unwrap();
            prop_assert_eq!(&direct, &rel.group.expand_to_order(d), "a = {}, d = {}", inst.a, d);
        }
        let funcs = jet_functions(std::slice::from_ref(&inst.a), &op, inst.order).unwrap();
        let comb = Combination::new(&funcs);
        for m in ball(inst.order + 1, 2) {
            prop_assert_eq!(comb.is_relation(&op, &m), rel.lattice.contains(&m), "a = {}, m = {:?}", inst.a, m);
        }
    }
}

#[test]
fn monotone_in_the_order_bound() {
    let op = OperatorSpec::shift();
    let a = RatFunc::new(Poly::constant(rat(1, 2)), linear(0)).add(&RatFunc::new(Poly::constant(rat(1, 2)), linear(2)));
    for d in 0..4 {
        let lo = relation_lattice(std::slice::from_ref(&a), &op, d).unwrap();
        let hi = relation_lattice(std::slice::from_ref(&a), &op, d + 1).unwrap();
        assert_eq!(hi.intersect_leading(d + 1), lo);
    }
}

#[test]
fn twin_path_other_operators() {
    let ops = [OperatorSpec::q_dilation(int(2)).unwrap(), OperatorSpec::mahler(2).unwrap()];
    let inputs = [
        RatFunc::new(Poly::constant(rat(1, 2)), linear(1)),
        RatFunc::new(Poly::constant(rat(3, 2)), Poly::x()),
        RatFunc::new(Poly::new(vec![int(1), int(1)]), Poly::new(vec![int(-1), int(0), int(1)])),
        RatFunc::constant(rat(1, 3)),
    ];
    for op in &ops {
        for a in &inputs {
            let rel = relation_lattice_multiplicative(a, op, 3).unwrap();
            for d in 0..=3 {
                let direct = relation_lattice(std::slice::from_ref(a), op, d).unwrap();
                assert_eq!(direct, rel.group.expand_to_order(d), "{op}: a = {a}, d = {d}");
            }
            let funcs = jet_functions(std::slice::from_ref(a), op, 2).unwrap();
            let comb = Combination::new(&funcs);
            let lat = relation_lattice(std::slice::from_ref(a), op, 2).unwrap();
            for m in ball(3, 2) {
                assert_eq!(comb.is_relation(op, &m), lat.contains(&m), "{op}: a = {a}, m = {m:?}");
            }
        }
    }
}

#[test]
fn combination_agrees_with_naive_sum() {
    let op = OperatorSpec::shift();
    let a = RatFunc::new(Poly::constant(rat(1, 2)), linear(1)).add(&RatFunc::new(Poly::constant(int(2)), linear(-1).pow(2)));
    let funcs = jet_functions(std::slice::from_ref(&a), &op, 2).unwrap();
    let comb = Combination::new(&funcs);
    for m in ball(3, 2) {
        assert_eq!(comb.eval(&m), combine(&funcs, &m));
    }
}
