//! Dual pairs G x S -> Sp(A (x) B) and the decomposition omega = sum_alpha D_alpha (x) alpha.

use std::sync::Arc;

use rayon::prelude::*;

use crate::chartab::CharacterTable;
use crate::classes::{ClassFunction, Classes};
use crate::cyclo::Cyclo;
use crate::field::Field;
use crate::groups::{Family, FormKind, GroupTable, Sign};
use crate::matrix::Mat;
use crate::weil::{tau, weil_pair, Psi, WeilError, WeilModel, DEFAULT_DIM_BUDGET};
use crate::level::{split_by_level, LevelResult, RankResult};
use crate::parabolic::{parabolic, parameter_matrices};
use crate::report::{BoundReport, Direction, Interval};
use num_traits::Zero;
use crate::Rational;

/// (a): G = Sp(A), S = GO(B).  (b): G = SO(B), S = Sp(A).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

pub struct DualPair {
    pub side: Side,
    pub g: Arc<GroupTable>,
    pub s: Arc<GroupTable>,
    pub model: WeilModel,
    sp: Arc<GroupTable>,
    orth: Arc<GroupTable>,
    /// Columns: a symplectic basis (E | F) of W in tensor coordinates a * dim B + b.
    basis: Mat,
    basis_inv: Mat,
}

impl std::fmt::Debug for DualPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DualPair({:?}: G = {}, S = {}, {:?})", self.side, self.g.label(), self.s.label(), self.model)
    }
}

/// Symplectic Gram-Schmidt: columns e_1..e_N, f_1..f_N with <e_i, f_j> = delta_ij.
pub fn symplectic_basis(gram: &Mat, k: &Field) -> Option<Mat> {
    let d = gram.rows;
    let form = |x: &[u32], y: &[u32]| {
        let gy = gram.apply(y, k);
        x.iter().zip(&gy).fold(0, |acc, (&a, &b)| k.add(acc, k.mul(a, b)))
    };
    let mut pool: Vec<Vec<u32>> = (0..d)
        .map(|i| {
            let mut v = vec![0; d];
            v[i] = 1;
            v
        })
        .collect();
    let (mut es, mut fs) = (Vec::new(), Vec::new());
    while let Some(x) = pool.iter().position(|v| v.iter().any(|&c| c != 0)).map(|i| pool.swap_remove(i)) {
        let j = pool.iter().position(|y| form(&x, y) != 0)?;
        let y0 = pool.swap_remove(j);
        let s = k.inv(form(&x, &y0));
        let y: Vec<u32> = y0.iter().map(|&c| k.mul(c, s)).collect();
        for v in pool.iter_mut() {
            let (vy, vx) = (form(v, &y), form(v, &x));
            for t in 0..d {
                v[t] = k.add(k.sub(v[t], k.mul(vy, x[t])), k.mul(vx, y[t]));
            }
        }
        pool.retain(|v| v.iter().any(|&c| c != 0));
        es.push(x);
        fs.push(y);
    }
    let n = es.len();
    if 2 * n != d {
        return None;
    }
    let mut m = Mat::zero(d, d);
    for (c, v) in es.iter().chain(&fs).enumerate() {
        for r in 0..d {
            m.set(r, c, v[r]);
        }
    }
    Some(m)
}

/// The Witt basis E = (u_i (x) e_j, -u_i (x) f_j), F = (v_i (x) f_j, v_i (x) e_j) for hyperbolic B.
fn hyperbolic_basis(da: usize, db: usize, k: &Field) -> Mat {
    let (r, nb) = (da / 2, db / 2);
    let d = da * db;
    let mut cols: Vec<(usize, u32)> = Vec::new();
    for j in 0..r {
        for i in 0..nb {
            cols.push((j * db + i, 1));
        }
    }
    for j in 0..r {
        for i in 0..nb {
            cols.push(((r + j) * db + i, k.neg(1)));
        }
    }
    for j in 0..r {
        for i in 0..nb {
            cols.push(((r + j) * db + nb + i, 1));
        }
    }
    for j in 0..r {
        for i in 0..nb {
            cols.push((j * db + nb + i, 1));
        }
    }
    let mut m = Mat::zero(d, d);
    for (c, (row, v)) in cols.into_iter().enumerate() {
        m.set(row, c, v);
    }
    m
}

impl DualPair {
    pub fn new(side: Side, sp: Arc<GroupTable>, orth: Arc<GroupTable>, psi: Psi) -> Result<DualPair, WeilError> {
        Self::with_budget(side, sp, orth, psi, DEFAULT_DIM_BUDGET)
    }

    pub fn with_budget(
        side: Side,
        sp: Arc<GroupTable>,
        orth: Arc<GroupTable>,
        psi: Psi,
        budget: usize,
    ) -> Result<DualPair, WeilError> {
        let fa = sp.form().filter(|f| f.kind == FormKind::Symplectic);
        let fb = orth.form().filter(|f| f.kind == FormKind::Quadratic);
        let (Some(fa), Some(fb)) = (fa, fb) else {
            return Err(WeilError::DualPair("need a symplectic and an orthogonal group".into()));
        };
        if sp.field() != orth.field() {
            return Err(WeilError::DualPair("groups over different fields".into()));
        }
        let k = sp.field().clone();
        let (da, db) = (sp.dim(), orth.dim());
        let gram = fa.gram.kron(&fb.gram, &k);
        let hyperbolic = orth.spec().is_some_and(|s| s.sign == Sign::Plus);
        let basis = if hyperbolic {
            hyperbolic_basis(da, db, &k)
        } else {
            symplectic_basis(&gram, &k).ok_or_else(|| WeilError::DualPair("form on A (x) B is degenerate".into()))?
        };
        let n = da * db / 2;
        let std = crate::groups::Form::symplectic(n, &k).gram;
        if basis.transpose().mul(&gram, &k).mul(&basis, &k) != std {
            return Err(WeilError::DualPair("basis is not symplectic".into()));
        }
        let basis_inv = basis.inverse(&k).expect("symplectic basis is invertible");
        let model = WeilModel::with_budget(k, n, psi, budget)?;
        let (g, s) = match side {
            Side::A => (sp.clone(), orth.clone()),
            Side::B => {
                if orth.spec().is_some_and(|s| s.family == Family::GO) {
                    return Err(WeilError::DualPair("side (b) takes SO(B)".into()));
                }
                (orth.clone(), sp.clone())
            }
        };
        Ok(DualPair { side, g, s, model, sp, orth, basis, basis_inv })
    }

    /// The image of (g, s) in Sp(W) in Witt coordinates.
    pub fn gamma_matrix(&self, g: u32, s: u32) -> Mat {
        let k = self.model.field();
        let (a, b) = match self.side {
            Side::A => (self.sp.mat(g), self.orth.mat(s)),
            Side::B => (self.sp.mat(s), self.orth.mat(g)),
        };
        self.basis_inv.mul(&a.kron(&b, k), k).mul(&self.basis, k)
    }

    pub fn trace(&self, g: u32, s: u32) -> Cyclo {
        self.model.trace(&self.gamma_matrix(g, s)).expect("image lies in Sp(W)")
    }

    /// omega(g_c s_d) for class representatives of G (rows) and S (columns).
    pub fn trace_grid(&self, gc: &Classes, sc: &Classes) -> Vec<Vec<Cyclo>> {
        let cells: Vec<(usize, usize)> = (0..gc.len()).flat_map(|a| (0..sc.len()).map(move |b| (a, b))).collect();
        let vals: Vec<Cyclo> = cells.par_iter().map(|&(a, b)| self.trace(gc.rep(a), sc.rep(b))).collect();
        vals.chunks(sc.len()).map(|r| r.to_vec()).collect()
    }

    /// D_alpha(g) = |S|^{-1} sum_s omega(g s) conj(alpha(s)), for every alpha in the S table.
    pub fn decompose(&self, gc: &Classes, s_table: &CharacterTable) -> Vec<ClassFunction> {
        let sc = s_table.classes();
        let grid = self.trace_grid(gc, sc);
        let inv = Rational::new(1, sc.order() as i128);
        s_table
            .characters()
            .iter()
            .map(|alpha| {
                ClassFunction::new(
                    grid.iter()
                        .map(|row| {
                            let s: Cyclo = (0..sc.len())
                                .map(|c| (&row[c] * &alpha.values[c].conj()).scale_int(sc.size(c) as i128))
                                .sum();
                            s.scale(&inv)
                        })
                        .collect(),
                )
            })
            .collect()
    }

    /// omega restricted to G (s = 1).
    pub fn restriction_to_g(&self, gc: &Classes) -> ClassFunction {
        ClassFunction::new((0..gc.len()).into_par_iter().map(|c| self.trace(gc.rep(c), 0)).collect())
    }

    /// Whether the images of the generators of G and S commute in Sp(W).
    pub fn commute(&self) -> bool {
        let k = self.model.field();
        self.g.generators().iter().all(|&x| {
            self.s.generators().iter().all(|&y| {
                let a = self.gamma_matrix(x, 0);
                let b = self.gamma_matrix(0, y);
                a.mul(&b, k) == b.mul(&a, k)
            })
        })
    }
}


/// Witt-coordinate delta index of a vector of W (tensor coordinates) lying in span(F).
impl DualPair {
    pub fn delta_index(&self, v: &[u32]) -> Option<usize> {
        let k = self.model.field();
        let c = self.basis_inv.apply(v, k);
        let n = self.model.rank();
        if c[..n].iter().any(|&x| x != 0) {
            return None;
        }
        let q = k.q() as usize;
        Some(c[n..].iter().rev().fold(0usize, |acc, &x| acc * q + x as usize))
    }
}

fn is_character(m: &[Rational]) -> bool {
    m.iter().all(|x| x.is_integer() && *x >= Rational::zero())
}

/// D_alpha, D'_alpha, D°_alpha for every alpha, with the level and rank assertions of the
/// dual-pair statements. `threshold` is the level cut for D'; `target` the level every
/// constituent of D° should have; `rank` the U-rank some constituent of D° should reach.
pub fn dual_pair_report(
    dp: &DualPair,
    g_table: &CharacterTable,
    s_table: &CharacterTable,
    levels: &[LevelResult],
    ranks: Option<&[RankResult]>,
    threshold: usize,
    target: Option<usize>,
    rank: Option<usize>,
) -> Vec<BoundReport> {
    let label = format!("{} x {}", dp.g.label(), dp.s.label());
    let ds = dp.decompose(g_table.classes(), s_table);
    let res = dp.restriction_to_g(g_table.classes());
    let mut out = Vec::new();
    let mut sum = ClassFunction::constant(g_table.classes().len(), Cyclo::zero());
    for (a, d) in ds.iter().enumerate() {
        let deg = s_table.degrees()[a];
        sum = sum.add(&d.scale(&Rational::from_integer(deg as i128)));
        let (_, high, mults) = split_by_level(g_table, levels, d, threshold);
        let hm = g_table.decompose(&high);
        let params = format!("{label} alpha_{a}");
        let neg = mults.iter().filter(|x| !(x.is_integer() && **x >= Rational::zero())).count();
        out.push(BoundReport::compare("dual-D-is-character", params.clone(), Interval::from_int(neg as i128), Direction::Eq, Interval::from_int(0))
            .with_note(format!("D(1) = {}", d.values[0])));
        out.push(BoundReport::compare(
            "dual-Dcirc-is-character",
            params.clone(),
            Interval::from_int(if is_character(&hm) { 0 } else { 1 }),
            Direction::Eq,
            Interval::from_int(0),
        ));
        let constituents: Vec<usize> = (0..hm.len()).filter(|&i| !hm[i].is_zero()).collect();
        if let Some(t) = target {
            let off = constituents.iter().filter(|&&i| levels[i].level != t).count();
            out.push(
                BoundReport::compare("dual-Dcirc-levels", params.clone(), Interval::from_int(off as i128), Direction::Eq, Interval::from_int(0))
                    .with_note(format!("{} constituents, wanted level {t}", constituents.len())),
            );
        }
        if let (Some(r), Some(rk)) = (rank, ranks) {
            let best = constituents.iter().map(|&i| rk[i].rank).max().unwrap_or(0);
            out.push(BoundReport::compare(
                "dual-Dcirc-rank",
                params,
                Interval::from_int(best as i128),
                Direction::Ge,
                Interval::from_int(r as i128),
            ));
        }
    }
    out.push(BoundReport::compare(
        "dual-sum-identity",
        label.clone(),
        Interval::from_int(if sum == res { 0 } else { 1 }),
        Direction::Eq,
        Interval::from_int(0),
    ).with_note("sum alpha(1) D_alpha = omega|G"));
    out
}

/// omega restricted to G compared against the expected products of tau or Weil characters.
/// Side (b): tau_B^n (n = dim A / 2). Side (a): returns which of omega^m, omega^{m-1} omega*
/// matches, as a note.
pub fn restriction_identity(dp: &DualPair, g_classes: &Classes) -> Result<BoundReport, WeilError> {
    let res = dp.restriction_to_g(g_classes);
    let label = format!("{} x {}", dp.g.label(), dp.s.label());
    match dp.side {
        Side::B => {
            let n = dp.sp.dim() / 2;
            let want = tau(g_classes).pow(n as u32);
            Ok(BoundReport::compare("dual-restriction-tau", label, Interval::from_int((res != want) as i128), Direction::Eq, Interval::from_int(0)))
        }
        Side::A => {
            let (w, ws) = weil_pair(g_classes)?;
            let m = dp.orth.dim() as u32;
            let full = w.pow(m);
            let mixed = w.pow(m - 1).mul(&ws);
            let which = if res == full {
                Some("omega^m")
            } else if res == mixed {
                Some("omega^(m-1) omega*")
            } else {
                None
            };
            Ok(BoundReport::compare(
                "dual-restriction-weil",
                label,
                Interval::from_int(which.is_none() as i128),
                Direction::Eq,
                Interval::from_int(0),
            )
            .with_note(format!("restriction equals {}", which.unwrap_or("neither"))))
        }
    }
}

/// U x S restriction of omega for side (b) with G = SO^+(2n): for every lambda of rank 2r on
/// the Siegel radical U, lambda (x) beta occurs at least beta(1) times for every beta.
pub fn so_regular_check(dp: &DualPair, g_table: &CharacterTable, s_table: &CharacterTable) -> Result<Vec<BoundReport>, WeilError> {
    let g = g_table.group();
    let spec = g.spec().copied().ok_or_else(|| WeilError::DualPair("G needs a spec".into()))?;
    if dp.side != Side::B || spec.sign != Sign::Plus {
        return Err(WeilError::DualPair("needs side (b) with G = SO^+(2n)".into()));
    }
    let n = spec.dim / 2;
    let r = dp.sp.dim() / 2;
    let par = parabolic(g, n)?;
    let label = format!("{} x {}", g.label(), dp.s.label());
    let mut out = Vec::new();
    if par.u.len() != par.center.len() {
        out.push(BoundReport::compare("siegel-radical-abelian", label.clone(), Interval::from_int(par.u.len() as i128), Direction::Eq, Interval::from_int(par.center.len() as i128)));
    }
    let sc = s_table.classes();
    let p = g.field().p();
    // omega(u s_c) for u in U, c a class of S
    let grid: Vec<Vec<Cyclo>> = par.center.par_iter().map(|(u, _)| (0..sc.len()).map(|c| dp.trace(*u, sc.rep(c))).collect()).collect();
    let denom = Rational::from_integer((par.center.len() * sc.order()) as i128);
    for y in parameter_matrices(n, false, g.field()) {
        let rk = y.rank(g.field());
        let params = format!("{label} Y {:?} rank {rk}", y.data);
        if rk != 2 * r {
            if rk == 0 {
                out.push(BoundReport::not_applicable("so-regular", params, "rank-0 lambda is outside the hypothesis"));
            }
            continue;
        }
        let lam: Vec<Cyclo> = par.center.iter().map(|(_, x)| Cyclo::root(p, -(par.lambda_exponent(x, &y) as i64))).collect();
        // multiplicity of lambda in omega|U
        let s: Cyclo = grid.iter().zip(&lam).map(|(row, l)| &row[0] * l).sum();
        let mu = s.to_rational().expect("rational") / Rational::from_integer(par.center.len() as i128);
        out.push(BoundReport::compare(
            "so-regular-lambda-multiplicity",
            params.clone(),
            Interval::from_rational(&mu),
            Direction::Ge,
            Interval::from_int(sc.order() as i128),
        ));
        for (b, beta) in s_table.characters().iter().enumerate() {
            let s: Cyclo = grid
                .iter()
                .zip(&lam)
                .map(|(row, l)| {
                    (0..sc.len()).map(|c| (&(&row[c] * l) * &beta.values[c].conj()).scale_int(sc.size(c) as i128)).sum::<Cyclo>()
                })
                .sum();
            let m = s.to_rational().expect("rational") / denom;
            out.push(BoundReport::compare(
                "so-regular",
                format!("{params} beta_{b}"),
                Interval::from_rational(&m),
                Direction::Ge,
                Interval::from_int(s_table.degrees()[b] as i128),
            ));
        }
    }
    // explicit witness: delta_w with w = sum_i v_{2i-1} (x) e_i + v_{2i} (x) f_i
    let (da, db) = (dp.sp.dim(), dp.orth.dim());
    let mut w = vec![0u32; da * db];
    for i in 0..r {
        w[i * db + n + 2 * i] = 1;
        w[(r + i) * db + n + 2 * i + 1] = 1;
    }
    if let Some(idx) = dp.delta_index(&w) {
        // U acts on delta_w through a single character lambda_Y; find Y and its rank.
        let mut bad = 0;
        let mut phases = Vec::new();
        for (u, _) in &par.center {
            match dp.model.monomial_image(&dp.gamma_matrix(*u, 0), idx)? {
                Some((t, ph)) if t == idx => phases.push(ph),
                _ => bad += 1,
            }
        }
        let found = parameter_matrices(n, false, g.field()).into_iter().find(|y| {
            bad == 0 && par.center.iter().zip(&phases).all(|((_, x), ph)| *ph == Cyclo::root(p, par.lambda_exponent(x, y) as i64))
        });
        let wrank = found.as_ref().map_or(0, |y| y.rank(g.field()));
        out.push(
            BoundReport::compare("so-regular-witness-rank", label.clone(), Interval::from_int(wrank as i128), Direction::Eq, Interval::from_int(2 * r as i128))
                .with_note(match &found {
                    Some(y) => format!("U acts on delta_w by lambda_Y, Y = {:?}", y.data),
                    None => "delta_w is not a U-eigenvector".to_string(),
                }),
        );
        let mut orbit = std::collections::BTreeSet::new();
        for s in 0..dp.s.order() as u32 {
            if let Some((t, _)) = dp.model.monomial_image(&dp.gamma_matrix(0, s), idx)? {
                orbit.insert(t);
            }
        }
        out.push(BoundReport::compare(
            "so-regular-orbit",
            label,
            Interval::from_int(orbit.len() as i128),
            Direction::Eq,
            Interval::from_int(dp.s.order() as i128),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{enumerate, GroupSpec};

    #[test]
    fn gram_schmidt_small() {
        let k = Field::new(3, 1).unwrap();
        let f = crate::groups::Form::symplectic(2, &k);
        let b = symplectic_basis(&f.gram, &k).unwrap();
        assert_eq!(b.transpose().mul(&f.gram, &k).mul(&b, &k), f.gram);
    }

    #[test]
    fn side_b_commutes() {
        let sp = enumerate(&GroupSpec::sp(2, 3)).unwrap();
        let so = enumerate(&"SO+(4,3)".parse::<GroupSpec>().unwrap()).unwrap();
        let d = DualPair::new(Side::B, sp, so, Psi::Standard).unwrap();
        assert_eq!(d.model.dimension(), 81);
        assert!(d.commute());
    }
}
