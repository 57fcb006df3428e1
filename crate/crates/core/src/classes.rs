//! Conjugacy classes, class functions and the class algebra.

use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;

use crate::cyclo::Cyclo;
use crate::groups::{GroupTable, Subgroup};
use crate::Rational;

#[derive(Debug, thiserror::Error)]
pub enum ClassError {
    #[error("class functions live on different groups ({0} vs {1} classes)")]
    Mismatch(usize, usize),
    #[error("value {0} is not rational")]
    NotRational(String),
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }
    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = p;
            x = p;
        }
        x
    }
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Orbits of a permutation action on `0..n` generated by `images[g][x]`.
pub fn orbit_partition(n: usize, images: &[Vec<u32>]) -> Vec<u32> {
    let mut uf = UnionFind::new(n);
    for img in images {
        for (x, &y) in img.iter().enumerate() {
            uf.union(x as u32, y);
        }
    }
    (0..n as u32).map(|x| uf.find(x)).collect()
}

pub struct Classes {
    group: Arc<GroupTable>,
    class_of: Vec<u32>,
    reps: Vec<u32>,
    sizes: Vec<usize>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    exponent: u32,
}

impl std::fmt::Debug for Classes {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Classes({}, {} classes)", self.group.label(), self.len())
    }
}

impl Classes {
    /// Partition by conjugation; classes ordered by (identity first, size, representative code).
    pub fn new(group: Arc<GroupTable>) -> Classes {
        let n = group.order();
        let images: Vec<Vec<u32>> = group
            .generators()
            .par_iter()
            .map(|&s| (0..n as u32).map(|x| group.conj(x, s)).collect())
            .collect();
        let roots = orbit_partition(n, &images);
        // roots are minimal ids of their class, and ids follow code order
        let mut root_ids: Vec<u32> = (0..n as u32).filter(|&x| roots[x as usize] == x).collect();
        let mut size_of = vec![0usize; n];
        for &r in &roots {
            size_of[r as usize] += 1;
        }
        root_ids.sort_by_key(|&r| (r != 0, size_of[r as usize], group.code(r)));
        let mut slot = vec![u32::MAX; n];
        for (c, &r) in root_ids.iter().enumerate() {
            slot[r as usize] = c as u32;
        }
        let class_of: Vec<u32> = roots.iter().map(|&r| slot[r as usize]).collect();
        let reps = root_ids.clone();
        let sizes: Vec<usize> = root_ids.iter().map(|&r| size_of[r as usize]).collect();
        let inverse = reps.iter().map(|&r| class_of[group.inv(r) as usize]).collect();
        let orders: Vec<u32> = reps.iter().map(|&r| group.element_order(r)).collect();
        let exponent = orders.iter().fold(1u32, |a, &b| a.lcm(&b));
        Classes { group, class_of, reps, sizes, inverse, orders, exponent }
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }
    pub fn len(&self) -> usize {
        self.reps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
    pub fn order(&self) -> usize {
        self.group.order()
    }
    pub fn class_of(&self, x: u32) -> usize {
        self.class_of[x as usize] as usize
    }
    pub fn rep(&self, c: usize) -> u32 {
        self.reps[c]
    }
    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }
    pub fn inverse(&self, c: usize) -> usize {
        self.inverse[c] as usize
    }
    pub fn element_order(&self, c: usize) -> u32 {
        self.orders[c]
    }
    pub fn exponent(&self) -> u32 {
        self.exponent
    }
    pub fn centralizer_order(&self, c: usize) -> usize {
        self.order() / self.sizes[c]
    }
    pub fn members(&self, c: usize) -> Vec<u32> {
        (0..self.order() as u32).filter(|&x| self.class_of[x as usize] as usize == c).collect()
    }

    /// Class of rep(c)^k.
    pub fn power_class(&self, c: usize, k: u64) -> usize {
        let m = self.orders[c] as u64;
        let k = k % m;
        let r = self.reps[c];
        let mut acc = 0u32;
        let mut base = r;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.group.mul(acc, base);
            }
            base = self.group.mul(base, base);
            e >>= 1;
        }
        self.class_of(acc)
    }

    /// Map c -> class of rep(c)^k.
    pub fn power_map(&self, k: u64) -> Vec<usize> {
        (0..self.len()).map(|c| self.power_class(c, k)).collect()
    }

    /// a[c3] = #{(x, y) in C1 x C2 : xy = rep(C3)}.
    pub fn class_mult_coeffs(&self, c1: usize, c2: usize) -> Vec<u64> {
        let g = &self.group;
        (0..self.len())
            .into_par_iter()
            .map(|c3| {
                let z = self.reps[c3];
                self.members(c2)
                    .into_iter()
                    .filter(|&y| self.class_of(g.mul(z, g.inv(y))) == c1)
                    .count() as u64
            })
            .collect()
    }

    /// All structure constants: result[(k * r + i) * r + j] = a_{ijk}.
    pub fn structure_constants(&self) -> Vec<u64> {
        let r = self.len();
        let g = &self.group;
        let n = g.order() as u32;
        let per_k: Vec<Vec<u64>> = (0..r)
            .into_par_iter()
            .map(|k| {
                let z = self.reps[k];
                let mut counts = vec![0u64; r * r];
                for y in 0..n {
                    let x = g.mul(z, g.inv(y));
                    counts[self.class_of(x) * r + self.class_of(y)] += 1;
                }
                counts
            })
            .collect();
        per_k.concat()
    }

    fn check_len(&self, f: &ClassFunction) -> Result<(), ClassError> {
        if f.values.len() != self.len() {
            return Err(ClassError::Mismatch(f.values.len(), self.len()));
        }
        Ok(())
    }

    /// (1/|G|) sum_c |c| f(c) conj(g(c)), as an exact cyclotomic.
    pub fn inner_cyclo(&self, f: &ClassFunction, g: &ClassFunction) -> Result<Cyclo, ClassError> {
        self.check_len(f)?;
        self.check_len(g)?;
        let mut acc = Cyclo::zero();
        for c in 0..self.len() {
            let t = &f.values[c] * &g.values[c].conj();
            if !t.is_zero() {
                acc = &acc + &t.scale_int(self.sizes[c] as i128);
            }
        }
        Ok(acc.scale(&Rational::new(1, self.order() as i128)))
    }

    pub fn inner(&self, f: &ClassFunction, g: &ClassFunction) -> Result<Rational, ClassError> {
        let v = self.inner_cyclo(f, g)?;
        v.to_rational().ok_or_else(|| ClassError::NotRational(v.to_string()))
    }

    pub fn trivial(&self) -> ClassFunction {
        ClassFunction::constant(self.len(), Cyclo::one())
    }

    pub fn regular(&self) -> ClassFunction {
        let mut v = vec![Cyclo::zero(); self.len()];
        v[0] = Cyclo::from_int(self.order() as i128);
        ClassFunction::new(v)
    }

    /// Class function from a function on elements (evaluated at representatives).
    pub fn from_element_fn(&self, f: impl Fn(u32) -> Cyclo + Sync) -> ClassFunction {
        ClassFunction::new(self.reps.par_iter().map(|&r| f(r)).collect())
    }

    /// Values at an element id.
    pub fn value_at<'a>(&self, f: &'a ClassFunction, x: u32) -> &'a Cyclo {
        &f.values[self.class_of(x)]
    }
}

/// Fusion of the classes of a subgroup into the classes of its parent.
pub fn fusion(sub: &Subgroup, hc: &Classes, gc: &Classes) -> Vec<usize> {
    (0..hc.len()).map(|d| gc.class_of(sub.embed[hc.rep(d) as usize])).collect()
}

pub fn restrict(f: &ClassFunction, fuse: &[usize]) -> ClassFunction {
    ClassFunction::new(fuse.iter().map(|&c| f.values[c].clone()).collect())
}

/// Ind_H^G f(c) = |G| / (|H| |c|) sum_{d -> c} |d| f(d).
pub fn induce(f: &ClassFunction, hc: &Classes, gc: &Classes, fuse: &[usize]) -> ClassFunction {
    let mut acc = vec![Cyclo::zero(); gc.len()];
    for d in 0..hc.len() {
        let t = f.values[d].scale_int(hc.size(d) as i128);
        acc[fuse[d]] = &acc[fuse[d]] + &t;
    }
    let h = hc.order() as i128;
    let g = gc.order() as i128;
    ClassFunction::new(
        acc.into_iter()
            .enumerate()
            .map(|(c, v)| v.scale(&Rational::new(g, h * gc.size(c) as i128)))
            .collect(),
    )
}

/// Number of (H, H) double cosets in G.
pub fn double_cosets(sub: &Subgroup) -> usize {
    let g = &sub.parent;
    let n = g.order();
    let hgens: Vec<u32> = sub.table.generators().iter().map(|&h| sub.embed[h as usize]).collect();
    let mut images = Vec::new();
    for &h in &hgens {
        images.push((0..n as u32).map(|x| g.mul(h, x)).collect::<Vec<_>>());
        images.push((0..n as u32).map(|x| g.mul(x, h)).collect::<Vec<_>>());
    }
    let roots = orbit_partition(n, &images);
    roots.iter().enumerate().filter(|&(i, &r)| i as u32 == r).count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<Cyclo>,
}

impl ClassFunction {
    pub fn new(values: Vec<Cyclo>) -> Self {
        ClassFunction { values }
    }

    pub fn constant(len: usize, v: Cyclo) -> Self {
        ClassFunction { values: vec![v; len] }
    }

    pub fn from_ints(v: &[i128]) -> Self {
        ClassFunction { values: v.iter().map(|&x| Cyclo::from_int(x)).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn degree(&self) -> &Cyclo {
        &self.values[0]
    }

    pub fn mul(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction::new(self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect())
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction::new(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction::new(self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, r: &Rational) -> ClassFunction {
        ClassFunction::new(self.values.iter().map(|a| a.scale(r)).collect())
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction::new(self.values.iter().map(|a| a.conj()).collect())
    }

    pub fn pow(&self, k: u32) -> ClassFunction {
        ClassFunction::new(self.values.iter().map(|a| a.pow(k)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Integer values, if every value is a rational integer.
    pub fn as_integers(&self) -> Option<Vec<i128>> {
        self.values.iter().map(|v| v.to_integer()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{enumerate, GroupSpec};

    #[test]
    fn sl23_classes() {
        let g = enumerate(&GroupSpec::sl(2, 3)).unwrap();
        let c = Classes::new(g);
        assert_eq!(c.sizes(), &[1, 1, 4, 4, 4, 4, 6]);
        assert_eq!(c.exponent(), 12);
        for k in 0..c.len() {
            assert_eq!(c.inverse(c.inverse(k)), k);
        }
        let one = c.trivial();
        assert_eq!(c.inner(&one, &one).unwrap(), Rational::from_integer(1));
    }

    #[test]
    fn structure_constants_match_pairs() {
        let g = enumerate(&GroupSpec::sl(2, 3)).unwrap();
        let c = Classes::new(g.clone());
        let r = c.len();
        let a = c.structure_constants();
        // order-4 class is the size-6 class
        let c4 = (0..r).find(|&k| c.element_order(k) == 4).unwrap();
        let direct = c.class_mult_coeffs(c4, c4);
        for k in 0..r {
            assert_eq!(a[(k * r + c4) * r + c4], direct[k]);
            let z = c.rep(k);
            let brute = c
                .members(c4)
                .iter()
                .flat_map(|&x| c.members(c4).into_iter().map(move |y| (x, y)))
                .filter(|&(x, y)| g.mul(x, y) == z)
                .count() as u64;
            assert_eq!(brute, direct[k]);
        }
        let id_row = c.class_mult_coeffs(0, c4);
        for k in 0..r {
            assert_eq!(id_row[k], (k == c4) as u64);
        }
        for i in 0..r {
            for j in 0..r {
                let total: u64 = (0..r).map(|k| a[(k * r + i) * r + j] * c.size(k) as u64).sum();
                assert_eq!(total, (c.size(i) * c.size(j)) as u64);
            }
        }
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let g = enumerate(&GroupSpec::gl(1, 7)).unwrap();
        let c = Classes::new(g);
        assert_eq!(c.len(), 6);
        assert!(c.sizes().iter().all(|&s| s == 1));
    }
}
