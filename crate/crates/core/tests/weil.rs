use std::sync::Arc;

use cclab_core::weil::{tau, theta, weil_pair, zeta};
use cclab_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sp(dim: usize, q: u32) -> Arc<GroupTable> {
    enumerate(&GroupSpec::sp(dim, q)).unwrap()
}

fn check_pairs(g: &GroupTable, psi: Psi, pairs: &[(u32, u32)]) {
    let m = WeilModel::new(g.field().clone(), g.dim() / 2, psi).unwrap();
    for &(x, y) in pairs {
        let lhs = m.operator(&g.mat(g.mul(x, y))).unwrap();
        let rhs = m.operator(&g.mat(x)).unwrap().mul(&m.operator(&g.mat(y)).unwrap());
        assert_eq!(lhs, rhs, "{} {psi:?}: op({x}*{y})", g.label());
    }
}

#[test]
fn homomorphism_sp23_exhaustive() {
    let g = sp(2, 3);
    let n = g.order() as u32;
    let pairs: Vec<(u32, u32)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    for psi in [Psi::Standard, Psi::Twisted] {
        check_pairs(&g, psi, &pairs);
    }
}

#[test]
fn homomorphism_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in [sp(2, 5), sp(4, 3)] {
        let n = g.order() as u32;
        let pairs: Vec<(u32, u32)> = (0..1000).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        for psi in [Psi::Standard, Psi::Twisted] {
            check_pairs(&g, psi, &pairs);
        }
    }
}

#[test]
fn trace_norms_match_fixed_spaces() {
    for g in [sp(2, 3), sp(2, 5), sp(4, 3)] {
        let q = g.field().q() as i128;
        let m = WeilModel::new(g.field().clone(), g.dim() / 2, Psi::Standard).unwrap();
        let ms = WeilModel::new(g.field().clone(), g.dim() / 2, Psi::Twisted).unwrap();
        let bad = (0..g.order() as u32)
            .filter(|&x| {
                let want = Rational::from_integer(q.pow(g.fixed_space_dims(x).0 as u32));
                let mx = g.mat(x);
                m.trace(&mx).unwrap().abs2() != want || ms.trace(&mx).unwrap().abs2() != want
            })
            .count();
        assert_eq!(bad, 0, "{}", g.label());
    }
}

#[test]
fn products_of_weil_characters() {
    for (dim, q) in [(2, 3), (2, 5), (4, 3)] {
        let g = sp(dim, q);
        let c = Classes::new(g);
        let (w, ws) = weil_pair(&c).unwrap();
        let (t, z) = (tau(&c), zeta(&c));
        if q % 4 == 1 {
            assert_eq!(w.conj(), w);
            assert_eq!(ws.conj(), ws);
            assert_eq!(w.mul(&w), t);
            assert_eq!(ws.mul(&ws), t);
            assert_eq!(w.mul(&ws), z);
        } else {
            assert_eq!(ws, w.conj());
            assert_eq!(w.mul(&w), z);
            assert_eq!(ws.mul(&ws), z);
            assert_eq!(w.mul(&ws), t);
        }
        let th = theta(&c).unwrap();
        assert_eq!(th.mul(&th), t.add(&z).scale(&Rational::from_integer(2)));
    }
}
