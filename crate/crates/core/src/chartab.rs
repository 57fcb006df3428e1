//! Character tables by Dixon's modular eigenvector method.
//!
//! The class matrices (M_j)_{ik} = a_{ijk} commute and share the right eigenvectors
//! w_k = |C_k| chi(g_k) / chi(1). They are split over GF(l) for a prime l = 1 mod e,
//! after which every value is lifted to Q(zeta_e) through its eigenvalue multiplicities.

use std::cmp::Ordering;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classes::{ClassFunction, Classes};
use crate::cyclo::{canonical_cmp, Cyclo};
use crate::field::{is_prime, pow_mod};
use crate::groups::GroupTable;
use crate::Rational;

pub const DEFAULT_CLASS_LIMIT: usize = 400;

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error("{classes} classes exceeds the limit {limit}")]
    TooManyClasses { classes: usize, limit: usize },
    #[error("eigenspace splitting stalled with a block of dimension {0}")]
    Stalled(usize),
    #[error("table verification failed: {0}")]
    Verification(String),
}

// ---------------------------------------------------------------- GF(l) helpers

#[derive(Clone, Copy)]
struct Fl(u64);

impl Fl {
    #[inline]
    fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
    #[inline]
    fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }
    #[inline]
    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }
    fn pow(self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.0)
    }
    fn inv(self, a: u64) -> u64 {
        assert!(a != 0);
        self.pow(a, self.0 - 2)
    }
    fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn sqrt(self, a: u64) -> Option<u64> {
        if a == 0 {
            return Some(0);
        }
        if self.pow(a, (self.0 - 1) / 2) != 1 {
            return None;
        }
        // Tonelli-Shanks
        let p = self.0;
        let mut qq = p - 1;
        let mut s = 0;
        while qq % 2 == 0 {
            qq /= 2;
            s += 1;
        }
        let z = (2..p).find(|&z| self.pow(z, (p - 1) / 2) == p - 1).unwrap();
        let mut m = s;
        let mut c = self.pow(z, qq);
        let mut t = self.pow(a, qq);
        let mut r = self.pow(a, (qq + 1) / 2);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let b = self.pow(c, 1 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }
    /// Symmetric lift to (-l/2, l/2).
    fn lift(self, a: u64) -> i128 {
        if a > self.0 / 2 {
            a as i128 - self.0 as i128
        } else {
            a as i128
        }
    }
}

// polynomials low degree first
fn ptrim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn pdeg(a: &[u64]) -> isize {
    if a.iter().all(|&x| x == 0) {
        -1
    } else {
        a.iter().rposition(|&x| x != 0).unwrap() as isize
    }
}

fn prem(a: &[u64], m: &[u64], k: Fl) -> Vec<u64> {
    let mut r = a.to_vec();
    ptrim(&mut r);
    let dm = pdeg(m) as usize;
    let lead_inv = k.inv(m[dm]);
    while pdeg(&r) >= dm as isize {
        let dr = pdeg(&r) as usize;
        let c = k.mul(r[dr], lead_inv);
        for i in 0..=dm {
            let v = k.mul(c, m[i]);
            r[dr - dm + i] = k.sub(r[dr - dm + i], v);
        }
        ptrim(&mut r);
    }
    r
}

fn pmulmod(a: &[u64], b: &[u64], m: &[u64], k: Fl) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(x, y));
        }
    }
    prem(&out, m, k)
}

fn ppowmod(base: &[u64], mut e: u64, m: &[u64], k: Fl) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = prem(base, m, k);
    while e > 0 {
        if e & 1 == 1 {
            r = pmulmod(&r, &b, m, k);
        }
        b = pmulmod(&b, &b, m, k);
        e >>= 1;
    }
    r
}

fn pgcd(a: &[u64], b: &[u64], k: Fl) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    ptrim(&mut a);
    ptrim(&mut b);
    while pdeg(&b) >= 0 {
        let r = prem(&a, &b, k);
        a = b;
        b = r;
    }
    // make monic
    let d = pdeg(&a);
    if d >= 0 {
        let inv = k.inv(a[d as usize]);
        for x in a.iter_mut() {
            *x = k.mul(*x, inv);
        }
    }
    a
}

fn psub(a: &[u64], b: &[u64], k: Fl) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| k.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    ptrim(&mut out);
    out
}

/// Distinct roots of a split polynomial over GF(l).
fn roots(f: &[u64], k: Fl, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    ptrim(&mut f);
    if pdeg(&f) <= 0 {
        return out;
    }
    if f[0] == 0 {
        out.push(0);
        // divide out x^k
        let z = f.iter().position(|&c| c != 0).unwrap();
        f.drain(..z);
    }
    // squarefree part of the split polynomial: gcd with x^l - x
    let xl = ppowmod(&[0, 1], k.0, &f, k);
    let g = pgcd(&f, &psub(&xl, &[0, 1], k), k);
    split(&g, k, rng, &mut out);
    out.sort_unstable();
    out
}

fn split(f: &[u64], k: Fl, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
    let d = pdeg(f);
    if d <= 0 {
        return;
    }
    if d == 1 {
        out.push(k.neg(k.mul(f[0], k.inv(f[1]))));
        return;
    }
    loop {
        let a = rng.gen_range(0..k.0);
        let h = ppowmod(&[a, 1], (k.0 - 1) / 2, f, k);
        let g = pgcd(f, &psub(&h, &[1], k), k);
        let dg = pdeg(&g);
        if dg > 0 && dg < d {
            let (q, _) = pdivrem(f, &g, k);
            split(&g, k, rng, out);
            split(&q, k, rng, out);
            return;
        }
    }
}

fn pdivrem(a: &[u64], m: &[u64], k: Fl) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    ptrim(&mut r);
    let dm = pdeg(m) as usize;
    let lead_inv = k.inv(m[dm]);
    let dr0 = pdeg(&r);
    let mut q = vec![0u64; if dr0 >= dm as isize { dr0 as usize - dm + 1 } else { 1 }];
    while pdeg(&r) >= dm as isize {
        let dr = pdeg(&r) as usize;
        let c = k.mul(r[dr], lead_inv);
        q[dr - dm] = c;
        for i in 0..=dm {
            let v = k.mul(c, m[i]);
            r[dr - dm + i] = k.sub(r[dr - dm + i], v);
        }
        ptrim(&mut r);
    }
    (q, r)
}

/// Characteristic polynomial by Hessenberg reduction.
fn charpoly(a: &[Vec<u64>], k: Fl) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = k.inv(h[m][m - 1]);
        for i in m + 1..n {
            let u = k.mul(h[i][m - 1], inv);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let v = k.mul(u, h[m][j]);
                h[i][j] = k.sub(h[i][j], v);
            }
            for row in h.iter_mut() {
                let v = k.mul(u, row[i]);
                row[m] = k.add(row[m], v);
            }
        }
    }
    // p_0 = 1, p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_{i,m} prod h_{j,j-1} p_{i}
    let mut p: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let mut pm = vec![0u64; m + 1];
        let prev = &p[m - 1];
        for (i, &c) in prev.iter().enumerate() {
            pm[i + 1] = k.add(pm[i + 1], c);
            pm[i] = k.sub(pm[i], k.mul(h[m - 1][m - 1], c));
        }
        let mut t = 1u64;
        for i in 1..m {
            t = k.mul(t, h[m - i][m - i - 1]);
            let coef = k.mul(t, h[m - i - 1][m - 1]);
            for (j, &c) in p[m - i - 1].iter().enumerate() {
                pm[j] = k.sub(pm[j], k.mul(coef, c));
            }
        }
        p.push(pm);
    }
    p.pop().unwrap()
}

/// Basis (as rows) of the null space of a matrix over GF(l).
fn nullspace(a: &[Vec<u64>], cols: usize, k: Fl) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = a.to_vec();
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(p, r);
        let inv = k.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = k.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    let v = k.mul(f, m[r][j]);
                    m[i][j] = k.sub(m[i][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(m[ri][fc]);
            }
            v
        })
        .collect()
}

/// Rows of `b` brought to reduced echelon form; returns pivot columns.
fn rref(b: &mut [Vec<u64>], k: Fl) -> Vec<usize> {
    let rows = b.len();
    let cols = if rows > 0 { b[0].len() } else { 0 };
    let mut piv = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| b[i][c] != 0) else { continue };
        b.swap(p, r);
        let inv = k.inv(b[r][c]);
        for x in b[r].iter_mut() {
            *x = k.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && b[i][c] != 0 {
                let f = b[i][c];
                for j in 0..cols {
                    let v = k.mul(f, b[r][j]);
                    b[i][j] = k.sub(b[i][j], v);
                }
            }
        }
        piv.push(c);
        r += 1;
    }
    piv
}

fn choose_prime(e: u64, order: u64) -> u64 {
    let mut l = e + 1;
    while l <= 2 * order || !is_prime(l as u32) {
        l += e;
    }
    l
}

fn primitive_root(l: u64) -> u64 {
    let k = Fl(l);
    let mut fs = Vec::new();
    let mut n = l - 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            fs.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        fs.push(n);
    }
    (2..l).find(|&g| fs.iter().all(|&f| k.pow(g, (l - 1) / f) != 1)).unwrap()
}

// ---------------------------------------------------------------- table

pub struct CharacterTable {
    classes: Arc<Classes>,
    chars: Vec<ClassFunction>,
    degrees: Vec<u64>,
}

impl std::fmt::Debug for CharacterTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CharacterTable({}, degrees {:?})", self.group().label(), self.degrees)
    }
}

impl CharacterTable {
    pub fn build(classes: Arc<Classes>) -> Result<CharacterTable, TableError> {
        Self::build_with_limit(classes, DEFAULT_CLASS_LIMIT)
    }

    pub fn build_with_limit(classes: Arc<Classes>, limit: usize) -> Result<CharacterTable, TableError> {
        let r = classes.len();
        if r > limit {
            return Err(TableError::TooManyClasses { classes: r, limit });
        }
        let e = classes.exponent() as u64;
        let order = classes.order() as u64;
        let consts = classes.structure_constants();
        let mut l = choose_prime(e, order);
        loop {
            match dixon(&classes, &consts, l) {
                Ok(chars) => {
                    let t = CharacterTable::from_characters(classes.clone(), chars);
                    t.verify()?;
                    return Ok(t);
                }
                Err(_) if l < 1 << 30 => {
                    l += e;
                    while !is_prime(l as u32) {
                        l += e;
                    }
                }
                Err(err) => return Err(err),
            }
        }
    }

    /// Assembles a table from exact characters, sorting them into canonical order.
    pub fn from_characters(classes: Arc<Classes>, mut chars: Vec<ClassFunction>) -> CharacterTable {
        let e = classes.exponent();
        chars.sort_by(|a, b| compare_chars(a, b, e));
        let degrees = chars.iter().map(|c| c.degree().to_integer().expect("integer degree") as u64).collect();
        CharacterTable { classes, chars, degrees }
    }

    pub fn classes(&self) -> &Arc<Classes> {
        &self.classes
    }
    pub fn group(&self) -> &Arc<GroupTable> {
        self.classes.group()
    }
    pub fn len(&self) -> usize {
        self.chars.len()
    }
    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }
    pub fn characters(&self) -> &[ClassFunction] {
        &self.chars
    }
    pub fn character(&self, i: usize) -> &ClassFunction {
        &self.chars[i]
    }
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }
    pub fn exponent(&self) -> u32 {
        self.classes.exponent()
    }
    pub fn centralizer_orders(&self) -> Vec<usize> {
        (0..self.classes.len()).map(|c| self.classes.centralizer_order(c)).collect()
    }

    /// Checks orthogonality of rows and columns, the degree sum and degree divisibility.
    pub fn verify(&self) -> Result<(), TableError> {
        let c = &self.classes;
        let r = c.len();
        if self.chars.len() != r {
            return Err(TableError::Verification(format!("{} characters for {r} classes", self.chars.len())));
        }
        let n = c.order() as u64;
        let sum: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum != n {
            return Err(TableError::Verification(format!("sum of squared degrees {sum} != {n}")));
        }
        if let Some(d) = self.degrees.iter().find(|&&d| n % d != 0) {
            return Err(TableError::Verification(format!("degree {d} does not divide {n}")));
        }
        let conj: Vec<ClassFunction> = self.chars.iter().map(|x| x.conj()).collect();
        let rows_ok = (0..r).into_par_iter().all(|i| {
            (i..r).all(|j| {
                let v = c.inner_cyclo(&self.chars[i], &self.chars[j]).unwrap();
                v == Cyclo::from_int((i == j) as i128)
            })
        });
        if !rows_ok {
            return Err(TableError::Verification("row orthogonality".into()));
        }
        let cols_ok = (0..r).into_par_iter().all(|a| {
            (a..r).all(|b| {
                let s: Cyclo = (0..r).map(|i| &self.chars[i].values[a] * &conj[i].values[b]).sum();
                let want = if a == b { c.centralizer_order(a) as i128 } else { 0 };
                s == Cyclo::from_int(want)
            })
        });
        if !cols_ok {
            return Err(TableError::Verification("column orthogonality".into()));
        }
        Ok(())
    }

    /// Multiplicities [rho, chi] for every irreducible chi.
    pub fn decompose(&self, rho: &ClassFunction) -> Vec<Rational> {
        self.chars
            .par_iter()
            .map(|x| self.classes.inner(rho, x).expect("rational multiplicity"))
            .collect()
    }

    /// Multiplicity profile of a class function; `is_character` is false when some
    /// multiplicity is negative or fractional.
    pub fn profile(&self, rho: &ClassFunction) -> Profile {
        let mult = self.decompose(rho);
        let is_character = mult.iter().all(|m| m.is_integer() && *m.numer() >= 0);
        let ints: Vec<i128> = mult.iter().map(|m| m.to_integer()).collect();
        let sigma = ints.iter().sum();
        let lambda = ints.iter().zip(&self.degrees).filter(|(_, &d)| d == 1).map(|(m, _)| *m).sum();
        Profile { multiplicities: mult, is_character, sigma, lambda }
    }

    pub fn trivial_index(&self) -> usize {
        0
    }
}

#[derive(Clone, Debug)]
pub struct Profile {
    pub multiplicities: Vec<Rational>,
    pub is_character: bool,
    /// Sum of multiplicities.
    pub sigma: i128,
    /// Sum of multiplicities of linear constituents.
    pub lambda: i128,
}

fn compare_chars(a: &ClassFunction, b: &ClassFunction, e: u32) -> Ordering {
    let da = a.degree().to_integer().unwrap();
    let db = b.degree().to_integer().unwrap();
    let ta = a.values.iter().all(|v| *v == Cyclo::one());
    let tb = b.values.iter().all(|v| *v == Cyclo::one());
    da.cmp(&db).then(tb.cmp(&ta)).then_with(|| {
        for (x, y) in a.values.iter().zip(&b.values) {
            let o = canonical_cmp(x, y, e);
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

fn dixon(classes: &Classes, consts: &[u64], l: u64) -> Result<Vec<ClassFunction>, TableError> {
    let k = Fl(l);
    let r = classes.len();
    let e = classes.exponent() as u64;
    let order = classes.order() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(l);

    // M_j as row vectors: (M_j)_{ik} = a_{ijk}
    let mat = |j: usize| -> Vec<Vec<u64>> {
        (0..r).map(|i| (0..r).map(|kk| consts[(kk * r + i) * r + j] % l).collect()).collect()
    };

    // blocks of column-space bases, stored as rows in reduced echelon form
    let mut done: Vec<Vec<u64>> = Vec::new();
    let mut pending: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()];
    for j in 1..r {
        if pending.is_empty() {
            break;
        }
        let m = mat(j);
        let mut next = Vec::new();
        for mut basis in pending.drain(..) {
            let piv = rref(&mut basis, k);
            let s = basis.len();
            // image of each basis vector, expressed in the basis via pivot coordinates
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| {
                    (0..r)
                        .map(|i| m[i].iter().zip(b).fold(0u64, |acc, (&x, &y)| k.add(acc, k.mul(x, y))))
                        .collect()
                })
                .collect();
            // A[t][u]: coefficient of basis u in M b_t
            let a_t: Vec<Vec<u64>> = images.iter().map(|img| piv.iter().map(|&p| img[p]).collect()).collect();
            // matrix of the restricted operator acting on coordinate columns: A = a_t^T
            let a: Vec<Vec<u64>> = (0..s).map(|u| (0..s).map(|t| a_t[t][u]).collect()).collect();
            let cp = charpoly(&a, k);
            let rts = roots(&cp, k, &mut rng);
            for lam in rts {
                let mut shifted = a.clone();
                for (i, row) in shifted.iter_mut().enumerate() {
                    row[i] = k.sub(row[i], lam);
                }
                let ker = nullspace(&shifted, s, k);
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|y| {
                        let mut v = vec![0u64; r];
                        for (t, &c) in y.iter().enumerate() {
                            if c != 0 {
                                for i in 0..r {
                                    v[i] = k.add(v[i], k.mul(c, basis[t][i]));
                                }
                            }
                        }
                        v
                    })
                    .collect();
                if sub.len() == 1 {
                    done.push(sub.into_iter().next().unwrap());
                } else if !sub.is_empty() {
                    next.push(sub);
                }
            }
        }
        pending = next;
    }
    if let Some(b) = pending.first() {
        if r > 1 || b.len() > 1 {
            return Err(TableError::Stalled(b.len()));
        }
        done.extend(pending.drain(..).flatten());
    }
    if r == 1 {
        done = vec![vec![1]];
    }
    if done.len() != r {
        return Err(TableError::Stalled(r - done.len()));
    }

    let g = primitive_root(l);
    let z_e = k.pow(g, (l - 1) / e);
    let sizes: Vec<u64> = classes.sizes().iter().map(|&s| s as u64 % l).collect();
    let power_tables: Vec<Vec<usize>> = (0..r)
        .map(|c| {
            let m = classes.element_order(c) as u64;
            (0..m).map(|s| classes.power_class(c, s)).collect()
        })
        .collect();

    let mut chars = Vec::with_capacity(r);
    for w in done {
        if w[0] == 0 {
            return Err(TableError::Verification("eigenvector vanishes at the identity".into()));
        }
        let inv0 = k.inv(w[0]);
        let w: Vec<u64> = w.iter().map(|&x| k.mul(x, inv0)).collect();
        let mut denom = 0u64;
        for c in 0..r {
            let t = k.mul(k.mul(w[c], w[classes.inverse(c)]), k.inv(sizes[c]));
            denom = k.add(denom, t);
        }
        let d2 = k.mul(order % l, k.inv(denom));
        let d = k.sqrt(d2).ok_or_else(|| TableError::Verification("degree is not a square".into()))?;
        let d = d.min(l - d);
        let vals: Vec<u64> = (0..r).map(|c| k.mul(k.mul(d, w[c]), k.inv(sizes[c]))).collect();
        let mut values = Vec::with_capacity(r);
        for c in 0..r {
            let m = classes.element_order(c) as u64;
            let z_m = k.pow(z_e, e / m);
            let inv_m = k.inv(m % l);
            let mut coeffs = vec![0i128; m as usize];
            for (t, coeff) in coeffs.iter_mut().enumerate() {
                let mut acc = 0u64;
                for s in 0..m {
                    let root = k.pow(z_m, (m - (s * t as u64) % m) % m);
                    acc = k.add(acc, k.mul(vals[power_tables[c][s as usize]], root));
                }
                let a = k.lift(k.mul(acc, inv_m));
                if a < 0 || a > d as i128 {
                    return Err(TableError::Verification("eigenvalue multiplicity out of range".into()));
                }
                *coeff = a;
            }
            values.push(Cyclo::from_exponents(m as u32, &coeffs));
        }
        chars.push(ClassFunction::new(values));
    }
    Ok(chars)
}

/// Builds classes and the character table of a group.
pub fn build_table(group: Arc<GroupTable>) -> Result<CharacterTable, TableError> {
    CharacterTable::build(Arc::new(Classes::new(group)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{enumerate, GroupSpec};

    #[test]
    fn charpoly_and_roots() {
        let k = Fl(101);
        let a = vec![vec![2, 0, 0], vec![0, 3, 0], vec![1, 0, 5]];
        let cp = charpoly(&a, k);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(roots(&cp, k, &mut rng), vec![2, 3, 5]);
        assert_eq!(k.sqrt(4).map(|r| r.min(101 - r)), Some(2));
    }

    #[test]
    fn sl23_degrees() {
        let t = build_table(enumerate(&GroupSpec::sl(2, 3)).unwrap()).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn cyclic_group_is_linear() {
        let t = build_table(enumerate(&GroupSpec::gl(1, 7)).unwrap()).unwrap();
        assert_eq!(t.degrees(), &[1; 6]);
        for x in t.characters() {
            for v in &x.values {
                assert_eq!(v.abs2(), Rational::from_integer(1));
            }
        }
    }
}
