use cclab_core::apps::{product_one_bruteforce, product_one_count, BRUTE_BUDGET};
use cclab_core::bounds::{delta_feasible, gauss_binom, DELTA_A};
use cclab_core::catalog::{embeddings, table_str, DESK_GROUPS};
use cclab_core::classes::{induce, restrict};
use cclab_core::real::rat;
use cclab_core::report::{rational_json, sig_digits};
use cclab_core::suite::{RunConfig, Suite};
use cclab_core::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const FIELDS: [(u32, u32); 8] = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3), (11, 1)];

fn cyclo() -> impl Strategy<Value = Cyclo> {
    (prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]), prop::collection::vec((-3i128..=3, 0i64..24), 0..4)).prop_map(|(e, terms)| {
        terms.into_iter().fold(Cyclo::zero(), |acc, (c, k)| acc + Cyclo::root(e, k).scale_int(c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((p, f) in prop::sample::select(FIELDS.to_vec()), a in 0u32..1331, b in 0u32..1331, c in 0u32..1331) {
        let k = Field::new(p, f).unwrap();
        let q = k.q();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(k.add(a, b), k.add(b, a));
        prop_assert_eq!(k.mul(a, k.mul(b, c)), k.mul(k.mul(a, b), c));
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.sub(k.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(k.mul(a, k.inv(a)), k.from_int(1));
            prop_assert_eq!(k.pow(a, (q - 1) as u64), k.from_int(1));
        }
        prop_assert_eq!(k.pow(a, q as u64), a);
    }

    #[test]
    fn cyclotomic_ring_laws(x in cyclo(), y in cyclo(), z in cyclo()) {
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        let n = &x * &x.conj();
        prop_assert_eq!(n.conj(), n);
    }

    #[test]
    fn gaussian_binomials_symmetric_and_pascal(j in 1u32..7, i in 0u32..7, q in prop::sample::select(vec![2u32, 3, 4, 5, 7])) {
        let i = i % (j + 1);
        prop_assert_eq!(gauss_binom(j, i, q), gauss_binom(j, j - i, q));
        if i >= 1 && i < j {
            let pascal = gauss_binom(j - 1, i - 1, q) + BigInt::from(q).pow(i) * gauss_binom(j - 1, i, q);
            prop_assert_eq!(gauss_binom(j, i, q), pascal);
        }
    }

    #[test]
    fn delta_feasibility_is_downward_closed(g in 81u32..100, d in 1u32..20000, shrink in 1u32..20000) {
        let gamma = rat(g as i64, 100);
        let delta = rat(d as i64, 10_000_000);
        let smaller = rat((d as i64 * shrink as i64) / 20000, 10_000_000);
        if delta_feasible(&gamma, &delta, DELTA_A) && smaller > rat(0, 1) {
            prop_assert!(delta_feasible(&gamma, &smaller, DELTA_A));
        }
    }

    #[test]
    fn rational_encoding_roundtrip(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
        let x = BigRational::new(n.into(), d.into());
        let j = rational_json(&x);
        let back = BigRational::new(j["num"].as_str().unwrap().parse().unwrap(), j["den"].as_str().unwrap().parse().unwrap());
        prop_assert_eq!(back, x.clone());
        let s = sig_digits(&x, 12);
        let approx: f64 = s.parse().unwrap();
        let exact = n as f64 / d as f64;
        prop_assert!((approx - exact).abs() <= exact.abs() * 1e-11 + 1e-300);
    }

    #[test]
    fn unknown_suites_rejected(name in "[a-z0-9-]{1,12}") {
        let known = Suite::ALL.iter().any(|s| s.name() == name);
        prop_assert_eq!(RunConfig::parse(&format!("suites = {name}")).is_ok(), known);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn class_partition_invariants(gi in 0usize..DESK_GROUPS.len(), x in 0u32..u32::MAX) {
        let t = table_str(DESK_GROUPS[gi]).unwrap();
        let cl = t.classes();
        let order = cl.order();
        prop_assert_eq!(cl.sizes().iter().sum::<usize>(), order);
        for c in 0..cl.len() {
            prop_assert_eq!(order % cl.size(c), 0);
            prop_assert_eq!(cl.inverse(cl.inverse(c)), c);
            prop_assert_eq!(cl.size(c) * cl.centralizer_order(c), order);
        }
        // a random element and its inverse sit in mutually inverse classes
        let g = t.group();
        let x = x % order as u32;
        prop_assert_eq!(cl.class_of(g.inv(x)), cl.inverse(cl.class_of(x)));
    }

    #[test]
    fn table_invariants_hold_for_conjugated_values(gi in 0usize..DESK_GROUPS.len(), i in 0usize..64) {
        let t = table_str(DESK_GROUPS[gi]).unwrap();
        let chi = t.character(i % t.len());
        let cl = t.classes();
        prop_assert_eq!(cl.inner(chi, chi).unwrap(), Rational::from_integer(1));
        for c in 0..cl.len() {
            prop_assert_eq!(&chi.values[cl.inverse(c)], &chi.values[c].conj());
        }
        prop_assert_eq!(t.group().order() as u64 % t.degrees()[i % t.len()], 0);
    }

    #[test]
    fn class_multiplication_totals(gi in 0usize..DESK_GROUPS.len(), a in 0usize..64, b in 0usize..64) {
        let t = table_str(DESK_GROUPS[gi]).unwrap();
        let cl = t.classes();
        let (a, b) = (a % cl.len(), b % cl.len());
        let coeffs = cl.class_mult_coeffs(a, b);
        let total: u64 = coeffs.iter().enumerate().map(|(c, &n)| n * cl.size(c) as u64).sum();
        prop_assert_eq!(total, (cl.size(a) * cl.size(b)) as u64);
        let id = cl.class_of(0);
        prop_assert_eq!(cl.class_mult_coeffs(id, b), (0..cl.len()).map(|c| (c == b) as u64).collect::<Vec<_>>());
    }

    #[test]
    fn frobenius_reciprocity(ei in 0usize..7, i in 0usize..64, j in 0usize..64) {
        let embs = embeddings().unwrap();
        let e = &embs[ei % embs.len()];
        let chi = e.g.character(i % e.g.len());
        let phi = e.h.character(j % e.h.len());
        let ind = induce(phi, e.h.classes(), e.g.classes(), &e.fuse);
        let res = restrict(chi, &e.fuse);
        prop_assert_eq!(e.g.classes().inner(&ind, chi).unwrap(), e.h.classes().inner(phi, &res).unwrap());
    }

    #[test]
    fn product_one_formula_matches_enumeration(a in 0usize..9, b in 0usize..9, c in 0usize..9, d in 0usize..9) {
        let t = table_str("SL(2,5)").unwrap();
        let tuple = [a, b, c, d];
        let n = product_one_count(&t, &tuple).unwrap();
        prop_assert_eq!(n.clone(), BigInt::from(product_one_bruteforce(t.classes(), &tuple, BRUTE_BUDGET).unwrap()));
        let rotated = [b, c, d, a];
        prop_assert_eq!(product_one_count(&t, &rotated).unwrap(), n);
    }
}
