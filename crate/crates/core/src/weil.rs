//! Weil representations of Sp(2N, q), q odd, and the permutation-type characters tau, zeta.
//!
//! Schrodinger model on functions F_q^N -> C, with Sp acting on F_q^{2N} = X + Y in the
//! basis e_1..e_N, f_1..f_N (Gram [[0, I], [-I, 0]]). Delta functions are indexed by the
//! Y-coordinates. Generators act as
//!
//! * n(S) = [[I, S], [0, I]]:      phi(u) -> psi(u^T S u / 2) phi(u)
//! * m(A) = diag(A, A^{-T}):       phi(u) -> chi(det A) phi(A^T u)
//! * w_T (e_i -> -f_i, f_i -> e_i for i in T): partial Fourier transform on the T coordinates,
//!   normalized by gamma = s / G per coordinate, G the quadratic Gauss sum of psi.
//!
//! The sign s is pinned by (w n(1))^3 = 1 and every other element goes through a Bruhat
//! factorization. Entries live in Z[zeta_p] with the gamma power kept aside.

use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::classes::{ClassFunction, Classes};
use crate::cyclo::Cyclo;
use crate::field::Field;
use crate::groups::{Family, FormKind, GroupError, GroupTable};
use crate::matrix::Mat;
use crate::Rational;

pub const DEFAULT_DIM_BUDGET: usize = 2000;

#[derive(Debug, Error)]
pub enum WeilError {
    #[error("Weil model needs odd characteristic (q = {0})")]
    EvenCharacteristic(u32),
    #[error("model dimension {dim} exceeds budget {budget}")]
    Budget { dim: u128, budget: usize },
    #[error("element is not a {0}x{0} symplectic matrix")]
    NotSymplectic(usize),
    #[error("group {0} is not Sp(2N, q) in standard coordinates")]
    WrongGroup(String),
    #[error("dual pair: {0}")]
    DualPair(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Which of the two additive-character classes the model is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Psi {
    /// psi(x) = zeta_p^{Tr x}; gives omega.
    Standard,
    /// psi(x) = zeta_p^{Tr(a x)} with a a nonsquare; gives omega*.
    Twisted,
}

#[derive(Clone, Debug)]
enum Step {
    /// Multiply entry u by zeta_p^{t[u]}.
    Phase(Vec<u32>),
    /// new[u] = sign * old[src[u]].
    Monomial { src: Vec<u32>, negate: bool },
    /// Fourier transform along the listed coordinates.
    Fourier(Vec<usize>),
}

/// A factorization of one group element into model steps (applied first to last).
#[derive(Clone, Debug)]
pub struct Plan {
    steps: Vec<Step>,
    gamma: u32,
}

impl Plan {
    pub fn is_monomial(&self) -> bool {
        self.gamma == 0
    }
}

pub struct WeilModel {
    n: usize,
    field: Arc<Field>,
    psi: Psi,
    a: u32,
    p: usize,
    q: usize,
    dim: usize,
    half: u32,
    /// Coordinates of every index, n per index.
    digits: Vec<u32>,
    pow_q: Vec<usize>,
    /// Tr(a x y) mod p for field codes x, y.
    pair_exp: Vec<u32>,
    gauss: Cyclo,
    sign: i128,
    chi_minus_one: i128,
}

impl std::fmt::Debug for WeilModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "WeilModel(Sp({}, {}), {:?}, dim {})", 2 * self.n, self.q, self.psi, self.dim)
    }
}

impl WeilModel {
    pub fn new(field: Arc<Field>, n: usize, psi: Psi) -> Result<WeilModel, WeilError> {
        Self::with_budget(field, n, psi, DEFAULT_DIM_BUDGET)
    }

    pub fn with_budget(field: Arc<Field>, n: usize, psi: Psi, budget: usize) -> Result<WeilModel, WeilError> {
        let q = field.q() as usize;
        if field.p() == 2 {
            return Err(WeilError::EvenCharacteristic(field.q()));
        }
        let dim = (q as u128).pow(n as u32);
        if dim > budget as u128 {
            return Err(WeilError::Budget { dim, budget });
        }
        let dim = dim as usize;
        let a = match psi {
            Psi::Standard => 1,
            Psi::Twisted => field.nonsquare().expect("odd q has nonsquares"),
        };
        let mut pow_q = vec![1usize; n + 1];
        for i in 1..=n {
            pow_q[i] = pow_q[i - 1] * q;
        }
        let mut digits = vec![0u32; dim * n];
        for u in 0..dim {
            for c in 0..n {
                digits[u * n + c] = ((u / pow_q[c]) % q) as u32;
            }
        }
        let pair_exp = (0..q * q)
            .map(|xy| field.trace(field.mul(a, field.mul((xy / q) as u32, (xy % q) as u32))))
            .collect();
        let gauss: Cyclo = field
            .elements()
            .map(|x| Cyclo::root(field.p(), field.trace(field.mul(a, field.mul(x, x))) as i64))
            .sum();
        let chi_minus_one = field.legendre(field.neg(1)) as i128;
        let half = field.inv(2);
        let mut model = WeilModel {
            n,
            p: field.p() as usize,
            field,
            psi,
            a,
            q,
            dim,
            half,
            digits,
            pow_q,
            pair_exp,
            gauss,
            sign: 1,
            chi_minus_one,
        };
        model.sign = model.pin_sign();
        Ok(model)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn psi(&self) -> Psi {
        self.psi
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// Sign s of the Fourier normalization gamma = s / G.
    pub fn fourier_sign(&self) -> i128 {
        self.sign
    }

    /// gamma^k = s^k G^k / (chi(-1) q)^k, using G^2 = chi(-1) q.
    fn gamma_pow(&self, k: u32) -> Cyclo {
        let s = if k % 2 == 1 { self.sign } else { 1 };
        let den = (self.chi_minus_one * self.q as i128).pow(k);
        self.gauss.pow(k).scale(&Rational::new(s, den))
    }

    fn pin_sign(&self) -> i128 {
        // (w_1 n(E_11))^3 = 1 in Sp; apply the unnormalized steps three times to delta_0.
        let mut s = Mat::zero(self.n, self.n);
        s.set(0, 0, 1);
        let steps = [self.phase_step(&s), Step::Fourier(vec![0])];
        let mut v = self.delta(0);
        for _ in 0..3 {
            for st in &steps {
                v = self.apply_step(st, &v);
            }
        }
        let val = self.entry(&v, 0, 3);
        let others_zero = (1..self.dim).all(|u| self.entry(&v, u, 3).is_zero());
        assert!(others_zero, "Weil model: (w n)^3 is not scalar");
        match val.to_integer() {
            Some(x) if x == 1 || x == -1 => x,
            _ => panic!("Weil model: (w n)^3 scalar {val} is not a sign"),
        }
    }

    fn delta(&self, u: usize) -> Vec<i64> {
        let mut v = vec![0i64; self.dim * self.p];
        v[u * self.p] = 1;
        v
    }

    fn entry(&self, v: &[i64], u: usize, gamma: u32) -> Cyclo {
        let block: Vec<i128> = v[u * self.p..(u + 1) * self.p].iter().map(|&x| x as i128).collect();
        Cyclo::from_exponents(self.p as u32, &block) * self.gamma_pow(gamma)
    }

    fn index_of(&self, coords: &[u32]) -> usize {
        coords.iter().enumerate().map(|(c, &x)| x as usize * self.pow_q[c]).sum()
    }

    fn coords(&self, u: usize) -> &[u32] {
        &self.digits[u * self.n..(u + 1) * self.n]
    }

    fn phase_step(&self, s: &Mat) -> Step {
        let k = &self.field;
        let t = (0..self.dim)
            .map(|u| {
                let x = self.coords(u);
                let mut acc = 0;
                for i in 0..self.n {
                    if x[i] == 0 {
                        continue;
                    }
                    for j in 0..self.n {
                        acc = k.add(acc, k.mul(x[i], k.mul(s.get(i, j), x[j])));
                    }
                }
                k.trace(k.mul(self.a, k.mul(self.half, acc)))
            })
            .collect();
        Step::Phase(t)
    }

    fn monomial_step(&self, m: &Mat) -> Step {
        let k = &self.field;
        let mt = m.transpose();
        let src = (0..self.dim).map(|u| self.index_of(&mt.apply(self.coords(u), k)) as u32).collect();
        Step::Monomial { src, negate: k.legendre(m.det(k)) == -1 }
    }

    fn apply_step(&self, st: &Step, v: &[i64]) -> Vec<i64> {
        let p = self.p;
        match st {
            Step::Phase(t) => {
                let mut out = vec![0i64; v.len()];
                for u in 0..self.dim {
                    let sh = t[u] as usize;
                    for i in 0..p {
                        out[u * p + (i + sh) % p] = v[u * p + i];
                    }
                }
                out
            }
            Step::Monomial { src, negate } => {
                let mut out = vec![0i64; v.len()];
                for u in 0..self.dim {
                    let s = src[u] as usize;
                    for i in 0..p {
                        out[u * p + i] = if *negate { -v[s * p + i] } else { v[s * p + i] };
                    }
                }
                out
            }
            Step::Fourier(cs) => {
                let mut cur = v.to_vec();
                for &c in cs {
                    let mut out = vec![0i64; v.len()];
                    let stride = self.pow_q[c];
                    for u in 0..self.dim {
                        let uc = self.digits[u * self.n + c] as usize;
                        let base = u - uc * stride;
                        for y in 0..self.q {
                            let src = base + y * stride;
                            let blk = &cur[src * p..(src + 1) * p];
                            if blk.iter().all(|&x| x == 0) {
                                continue;
                            }
                            let sh = self.pair_exp[uc * self.q + y] as usize;
                            for i in 0..p {
                                out[u * p + (i + sh) % p] += blk[i];
                            }
                        }
                    }
                    cur = out;
                }
                cur
            }
        }
    }

    fn blocks(&self, g: &Mat) -> (Mat, Mat, Mat, Mat) {
        let n = self.n;
        let lo: Vec<usize> = (0..n).collect();
        let hi: Vec<usize> = (n..2 * n).collect();
        (g.select(&lo, &lo), g.select(&lo, &hi), g.select(&hi, &lo), g.select(&hi, &hi))
    }

    /// The element w_T of the Weyl group.
    pub fn weyl_element(&self, t: &[usize]) -> Mat {
        let n = self.n;
        let k = &self.field;
        let mut w = Mat::identity(2 * n);
        for &i in t {
            w.set(i, i, 0);
            w.set(n + i, n + i, 0);
            w.set(n + i, i, k.neg(1));
            w.set(i, n + i, 1);
        }
        w
    }

    /// Factor g into model steps.
    pub fn plan(&self, g: &Mat) -> Result<Plan, WeilError> {
        let n = self.n;
        let k = &self.field;
        if g.rows != 2 * n || g.cols != 2 * n {
            return Err(WeilError::NotSymplectic(2 * n));
        }
        let (a, b, c, _) = self.blocks(g);
        if c.data.iter().all(|&x| x == 0) {
            // Siegel parabolic: g = m(A) n(A^{-1} B)
            let ainv = a.inverse(k).ok_or(WeilError::NotSymplectic(2 * n))?;
            let s = ainv.mul(&b, k);
            return Ok(Plan { steps: vec![self.phase_step(&s), self.monomial_step(&a)], gamma: 0 });
        }
        if let Some(p) = self.big_cell(g) {
            return Ok(p);
        }
        for mask in 1u32..(1 << n) {
            let t: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let g2 = self.weyl_element(&t).mul(g, k);
            if let Some(mut p) = self.big_cell(&g2) {
                // g = w_T m(d_T) (w_T g), since w_T^{-1} = w_T w_T^2 and w_T^2 = m(d_T)
                let mut d = Mat::identity(n);
                for &i in &t {
                    d.set(i, i, k.neg(1));
                }
                p.steps.push(self.monomial_step(&d));
                p.gamma += t.len() as u32;
                p.steps.push(Step::Fourier(t));
                return Ok(p);
            }
        }
        Err(WeilError::NotSymplectic(2 * n))
    }

    /// g = n(A C^{-1}) m(-C^{-T}) w n(C^{-1} D) when C is invertible.
    fn big_cell(&self, g: &Mat) -> Option<Plan> {
        let k = &self.field;
        let (a, _, c, d) = self.blocks(g);
        let cinv = c.inverse(k)?;
        let s1 = a.mul(&cinv, k);
        let s2 = cinv.mul(&d, k);
        let m = cinv.transpose().map(|x| k.neg(x));
        Some(Plan {
            steps: vec![
                self.phase_step(&s2),
                Step::Fourier((0..self.n).collect()),
                self.monomial_step(&m),
                self.phase_step(&s1),
            ],
            gamma: self.n as u32,
        })
    }

    fn run(&self, plan: &Plan, mut v: Vec<i64>) -> Vec<i64> {
        for st in &plan.steps {
            v = self.apply_step(st, &v);
        }
        v
    }

    pub fn trace_plan(&self, plan: &Plan) -> Cyclo {
        let p = self.p;
        let mut acc = vec![0i128; p];
        for u in 0..self.dim {
            let v = self.run(plan, self.delta(u));
            for i in 0..p {
                acc[i] += v[u * p + i] as i128;
            }
        }
        Cyclo::from_exponents(p as u32, &acc) * self.gamma_pow(plan.gamma)
    }

    pub fn trace(&self, g: &Mat) -> Result<Cyclo, WeilError> {
        Ok(self.trace_plan(&self.plan(g)?))
    }

    /// Full operator matrix (row-major, entry (r, c) = coefficient of delta_r in op(g) delta_c).
    pub fn operator(&self, g: &Mat) -> Result<Operator, WeilError> {
        let plan = self.plan(g)?;
        let gp = self.gamma_pow(plan.gamma);
        let cols: Vec<Vec<Cyclo>> = (0..self.dim)
            .into_par_iter()
            .map(|c| {
                let v = self.run(&plan, self.delta(c));
                (0..self.dim)
                    .map(|r| {
                        let blk: Vec<i128> = v[r * self.p..(r + 1) * self.p].iter().map(|&x| x as i128).collect();
                        if blk.iter().all(|&x| x == 0) {
                            Cyclo::zero()
                        } else {
                            Cyclo::from_exponents(self.p as u32, &blk) * gp.clone()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut entries = vec![Cyclo::zero(); self.dim * self.dim];
        for (c, col) in cols.into_iter().enumerate() {
            for (r, x) in col.into_iter().enumerate() {
                entries[r * self.dim + c] = x;
            }
        }
        Ok(Operator { dim: self.dim, entries })
    }

    /// Image of the delta function at `u` under a monomial element: (target index, phase).
    pub fn monomial_image(&self, g: &Mat, u: usize) -> Result<Option<(usize, Cyclo)>, WeilError> {
        let plan = self.plan(g)?;
        if !plan.is_monomial() {
            return Ok(None);
        }
        let v = self.run(&plan, self.delta(u));
        let hits: Vec<usize> = (0..self.dim).filter(|&r| v[r * self.p..(r + 1) * self.p].iter().any(|&x| x != 0)).collect();
        Ok(match hits.as_slice() {
            [r] => Some((*r, self.entry(&v, *r, 0))),
            _ => None,
        })
    }

    /// The Weil character on the classes of a Sp(2N, q) table in standard coordinates.
    pub fn character(&self, classes: &Classes) -> Result<ClassFunction, WeilError> {
        let g = classes.group();
        check_sp(g, self.n)?;
        let vals: Result<Vec<Cyclo>, WeilError> =
            (0..classes.len()).into_par_iter().map(|c| self.trace(&g.mat(classes.rep(c)))).collect();
        Ok(ClassFunction::new(vals?))
    }
}

fn check_sp(g: &GroupTable, n: usize) -> Result<(), WeilError> {
    let ok = g.spec().is_some_and(|s| s.family == Family::Sp && s.dim == 2 * n)
        && g.form().is_some_and(|f| f.kind == FormKind::Symplectic);
    if ok {
        Ok(())
    } else {
        Err(WeilError::WrongGroup(g.label().to_string()))
    }
}

/// Dense operator with cyclotomic entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    pub dim: usize,
    pub entries: Vec<Cyclo>,
}

impl Operator {
    pub fn get(&self, r: usize, c: usize) -> &Cyclo {
        &self.entries[r * self.dim + c]
    }

    pub fn mul(&self, other: &Operator) -> Operator {
        let d = self.dim;
        let entries = (0..d * d)
            .into_par_iter()
            .map(|rc| {
                let (r, c) = (rc / d, rc % d);
                let mut acc = Cyclo::zero();
                for t in 0..d {
                    let (x, y) = (self.get(r, t), other.get(t, c));
                    if !x.is_zero() && !y.is_zero() {
                        acc = &acc + &(x * y);
                    }
                }
                acc
            })
            .collect();
        Operator { dim: d, entries }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| *self.get(r, c) == Cyclo::from_int((r == c) as i128)))
    }

    pub fn trace(&self) -> Cyclo {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }
}

// ---------------------------------------------------------------- tau, zeta, theta

/// tau_A(g) = q^{dim Ker(g - 1)} on the natural module.
pub fn tau(classes: &Classes) -> ClassFunction {
    let g = classes.group();
    let q = g.field().q() as i128;
    ClassFunction::new(
        (0..classes.len())
            .into_par_iter()
            .map(|c| Cyclo::from_int(q.pow(g.fixed_space_dims(classes.rep(c)).0 as u32)))
            .collect(),
    )
}

/// zeta_A(g) = (-1)^{dim A} (-q)^{dim Ker(g - 1)}.
pub fn zeta(classes: &Classes) -> ClassFunction {
    let g = classes.group();
    let q = g.field().q() as i128;
    let sign = if g.dim() % 2 == 0 { 1 } else { -1 };
    ClassFunction::new(
        (0..classes.len())
            .into_par_iter()
            .map(|c| Cyclo::from_int(sign * (-q).pow(g.fixed_space_dims(classes.rep(c)).0 as u32)))
            .collect(),
    )
}

/// Both reducible Weil characters (omega, omega*) of Sp(2N, q), q odd.
pub fn weil_pair(classes: &Classes) -> Result<(ClassFunction, ClassFunction), WeilError> {
    let g = classes.group();
    let n = g.dim() / 2;
    let w = WeilModel::new(g.field().clone(), n, Psi::Standard)?;
    let ws = WeilModel::new(g.field().clone(), n, Psi::Twisted)?;
    Ok((w.character(classes)?, ws.character(classes)?))
}

/// The generating character of the level filtration: omega + omega* for Sp in odd
/// characteristic, tau + zeta otherwise.
pub fn theta(classes: &Classes) -> Result<ClassFunction, WeilError> {
    let g = classes.group();
    let spec = g.spec().ok_or_else(|| WeilError::WrongGroup(g.label().to_string()))?;
    match spec.family {
        Family::Sp if g.field().p() != 2 => {
            let (w, ws) = weil_pair(classes)?;
            Ok(w.add(&ws))
        }
        Family::Sp | Family::GO | Family::SO | Family::Omega => Ok(tau(classes).add(&zeta(classes))),
        _ => Err(WeilError::WrongGroup(format!("{spec} has no level theory here"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp2(q: u32, rows: [[i64; 2]; 2]) -> Mat {
        let k = Field::new(q, 1).unwrap();
        Mat::from_rows(&rows.map(|r| r.map(|x| k.from_int(x)).to_vec()))
    }

    #[test]
    fn identity_and_weyl() {
        let k = Field::new(3, 1).unwrap();
        let m = WeilModel::new(k.clone(), 1, Psi::Standard).unwrap();
        assert_eq!(m.dimension(), 3);
        assert!(m.operator(&Mat::identity(2)).unwrap().is_identity());
        let w = m.operator(&m.weyl_element(&[0])).unwrap();
        let w4 = w.mul(&w).mul(&w.mul(&w));
        assert!(w4.is_identity());
        let minus = m.operator(&sp2(3, [[-1, 0], [0, -1]])).unwrap();
        assert_eq!(w.mul(&w), minus);
    }

    #[test]
    fn sp23_is_a_homomorphism() {
        let k = Field::new(3, 1).unwrap();
        let m = WeilModel::new(k, 1, Psi::Twisted).unwrap();
        let x = sp2(3, [[1, 1], [0, 1]]);
        let y = sp2(3, [[1, 0], [1, 1]]);
        let kk = m.field().clone();
        let lhs = m.operator(&x.mul(&y, &kk)).unwrap();
        let rhs = m.operator(&x).unwrap().mul(&m.operator(&y).unwrap());
        assert_eq!(lhs, rhs);
    }
}
