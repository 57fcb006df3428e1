//! Character level (smallest k with chi in Theta^k) and U-rank for orthogonal groups.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::chartab::CharacterTable;
use crate::classes::{ClassFunction, Classes};
use crate::cyclo::Cyclo;
use crate::groups::{Family, GroupError, GroupSpec, Sign};
use crate::matrix::Mat;
use crate::parabolic::{parabolic, ParabolicData};
use crate::report::{BoundReport, Direction, Interval};
use crate::weil::{theta, WeilError};
use crate::Rational;

#[derive(Debug, Error)]
pub enum LevelError {
    #[error("{0} is outside the scope of the level definition")]
    OutOfScope(String),
    #[error("character {index} not reached by Theta^k for k <= {cap}")]
    Unreached { index: usize, cap: usize },
    #[error("U-rank needs an orthogonal group in odd characteristic, got {0}")]
    RankScope(String),
    #[error(transparent)]
    Weil(#[from] WeilError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelResult {
    pub character: usize,
    pub level: usize,
    /// [Theta^level, chi].
    pub multiplicity: Rational,
}

/// Theta, its powers, and the a priori cap on levels.
#[derive(Clone, Debug)]
pub struct LevelData {
    pub theta: ClassFunction,
    pub powers: Vec<ClassFunction>,
    pub cap: usize,
    /// Whether the sharper cap floor(dim/2) applies.
    pub sharp: bool,
}

/// Upper bound on levels: 2n+1 (Sp, q odd), n+1 (Sp, q even), floor(dim/2)+1 or floor(dim/2)
/// for orthogonal groups (the latter when G <= SO with q odd or G = Omega with q even).
pub fn level_cap(spec: &GroupSpec) -> Result<(usize, bool), LevelError> {
    let even = spec.q % 2 == 0;
    match spec.family {
        Family::Sp if !even => Ok((2 * spec.n() + 1, false)),
        Family::Sp => Ok((spec.n() + 1, false)),
        Family::SO if !even => Ok((spec.dim / 2, true)),
        Family::Omega => Ok((spec.dim / 2, true)),
        Family::GO | Family::SO => Ok((spec.dim / 2 + 1, false)),
        _ => Err(LevelError::OutOfScope(spec.to_string())),
    }
}

pub fn level_data(table: &CharacterTable) -> Result<LevelData, LevelError> {
    let g = table.group();
    let spec = *g.spec().ok_or_else(|| LevelError::OutOfScope(g.label().to_string()))?;
    let (cap, sharp) = level_cap(&spec)?;
    let th = theta(table.classes())?;
    let mut powers = vec![table.classes().trivial()];
    // two extra powers so monotonicity can be checked at the top
    for _ in 0..cap + 2 {
        let next = powers.last().unwrap().mul(&th);
        powers.push(next);
    }
    Ok(LevelData { theta: th, powers, cap, sharp })
}

/// Multiplicities [Theta^k, chi] for all k <= cap + 2 and all chi.
pub fn power_multiplicities(table: &CharacterTable, data: &LevelData) -> Vec<Vec<Rational>> {
    data.powers.par_iter().map(|p| table.decompose(p)).collect()
}

pub fn levels(table: &CharacterTable) -> Result<(LevelData, Vec<LevelResult>), LevelError> {
    let data = level_data(table)?;
    let mults = power_multiplicities(table, &data);
    let mut out = Vec::with_capacity(table.len());
    for i in 0..table.len() {
        let k = (0..mults.len()).find(|&k| mults[k][i] > Rational::zero());
        match k {
            Some(k) if k <= data.cap => out.push(LevelResult { character: i, level: k, multiplicity: mults[k][i] }),
            _ => return Err(LevelError::Unreached { index: i, cap: data.cap }),
        }
    }
    Ok((data, out))
}

/// [Theta^k, chi] > 0 implies [Theta^{k+2}, chi] > 0, over the computed range.
pub fn monotone(table: &CharacterTable, data: &LevelData) -> bool {
    let m = power_multiplicities(table, data);
    (0..table.len()).all(|i| (0..m.len() - 2).all(|k| m[k][i].is_zero() || !m[k + 2][i].is_zero()))
}

pub fn level_range_check(table: &CharacterTable, levels: &[LevelResult], data: &LevelData) -> Vec<BoundReport> {
    let label = table.group().label().to_string();
    levels
        .iter()
        .map(|l| {
            BoundReport::compare(
                "level-range",
                format!("{label} chi_{}", l.character),
                Interval::from_int(l.level as i128),
                Direction::Le,
                Interval::from_int(data.cap as i128),
            )
            .with_note(if data.sharp { "sharp orthogonal cap" } else { "general cap" })
        })
        .collect()
}

// ---------------------------------------------------------------- degree bounds

fn bq(q: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(q))
}

fn qpow(q: u32, e: i64) -> BigRational {
    let b = bq(q);
    if e >= 0 {
        Pow::pow(b, e as u64)
    } else {
        Pow::pow(b.recip(), (-e) as u64)
    }
}

/// b_C(n, k) = q^{nk - k(k+1)/2} ((q-1)/2)^k, for Sp(2n, q) with q odd.
pub fn b_c(n: i64, k: i64, q: u32) -> BigRational {
    let half = (bq(q) - BigRational::one()) / BigRational::from_integer(2.into());
    qpow(q, n * k - k * (k + 1) / 2) * Pow::pow(half, k as u64)
}

/// b'_C(n, k) = q^{2nk - k(2k+1)} ((q-1)^2/2)^k, for Sp(2n, q) with q even.
pub fn b_c_even(n: i64, k: i64, q: u32) -> BigRational {
    let t = Pow::pow(bq(q) - BigRational::one(), 2u64) / BigRational::from_integer(2.into());
    qpow(q, 2 * n * k - k * (2 * k + 1)) * Pow::pow(t, k as u64)
}

/// b_BD(n, k) for Omega^{+-}_n(q), with the special values at (8,2), (9,2), (4,1), (5,1).
pub fn b_bd(n: i64, k: i64, q: u32) -> BigRational {
    let one = BigRational::one();
    let qq = bq(q);
    let g = BigRational::from_integer(BigInt::from(if q % 2 == 1 { 2 } else { 1 }));
    match (n, k) {
        (8, 2) => qpow(q, 4) * Pow::pow(qq - &one, 2u64) / g,
        (9, 2) => qpow(q, 5) * (Pow::pow(qq.clone(), 2u64) - &one) * (qq - &one) / BigRational::from_integer(2.into()),
        (4, 1) => (qq - &one) / g,
        (5, 1) => (Pow::pow(qq, 2u64) - &one) / BigRational::from_integer(2.into()),
        _ => qpow(q, n * k - 2 * k * (k + 1)) * Pow::pow(qq - &one, k as u64),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeFamily {
    SpOdd,
    SpEven,
    Orthogonal,
}

impl DegreeFamily {
    pub fn of(spec: &GroupSpec) -> Option<DegreeFamily> {
        match spec.family {
            Family::Sp if spec.q % 2 == 1 => Some(DegreeFamily::SpOdd),
            Family::Sp => Some(DegreeFamily::SpEven),
            Family::Omega | Family::SO | Family::GO => Some(DegreeFamily::Orthogonal),
            _ => None,
        }
    }
}

/// Lower and upper degree bounds for a character of level `l`; k = floor((l+2)/3).
/// The rank argument is n for Sp(2n, q) and the dimension for Omega_n(q).
pub fn degree_window(fam: DegreeFamily, n: i64, l: i64, q: u32) -> (BigRational, BigRational) {
    let k = (l + 2) / 3;
    let one = BigRational::one();
    let qq = bq(q);
    if k == 0 {
        return (one.clone(), one);
    }
    match fam {
        DegreeFamily::SpOdd => {
            let up = (qpow(q, n) + &one) / BigRational::from_integer(2.into());
            (b_c(n, k, q), Pow::pow(up, l as u64))
        }
        DegreeFamily::SpEven => {
            let up = (qpow(q, 2 * n) - &one) / (qq - &one);
            (b_c_even(n, k, q), Pow::pow(up, l as u64))
        }
        DegreeFamily::Orthogonal => {
            let up = (qpow(q, n) - &one) / (qq - &one);
            let lo = if k >= 2 || (n, k) == (4, 1) || (n, k) == (5, 1) {
                b_bd(n, k, q)
            } else {
                qpow(q, n * k - 2 * k * (k + 1)) * Pow::pow(bq(q) - &one, k as u64)
            };
            (lo, Pow::pow(up, l as u64))
        }
    }
}

/// The degree window for every character, given its level.
pub fn main3_check(table: &CharacterTable, levels: &[LevelResult]) -> Vec<BoundReport> {
    let g = table.group();
    let label = g.label().to_string();
    let Some(spec) = g.spec() else {
        return vec![BoundReport::not_applicable("degree-window", label, "no classical spec")];
    };
    let Some(fam) = DegreeFamily::of(spec) else {
        return vec![BoundReport::not_applicable("degree-window", label, "family out of scope")];
    };
    let (n, in_range) = match fam {
        DegreeFamily::SpOdd => (spec.n() as i64, spec.n() >= 1),
        DegreeFamily::SpEven => (spec.n() as i64, spec.n() >= 2),
        DegreeFamily::Orthogonal => {
            let d = spec.dim as i64;
            (d, spec.family == Family::Omega && d >= 6 && !((d == 8 || d == 9) && spec.q == 2))
        }
    };
    let mut out = Vec::new();
    for l in levels {
        let (lo, hi) = degree_window(fam, n, l.level as i64, spec.q);
        let d = Interval::exact(BigRational::from_integer(BigInt::from(table.degrees()[l.character])));
        let params = format!("{label} chi_{} level {} k {}", l.character, l.level, (l.level + 2) / 3);
        let mut a = BoundReport::compare("degree-window-lower", params.clone(), d.clone(), Direction::Ge, Interval::exact(lo));
        let mut b = BoundReport::compare("degree-window-upper", params, d, Direction::Le, Interval::exact(hi));
        if !in_range {
            a = a.informative("outside the stated range");
            b = b.informative("outside the stated range");
        }
        out.push(a);
        out.push(b);
    }
    out
}

/// Contrapositive of the inductive lemmas: chi(1) < b(n, k) implies level <= 3(k-1).
pub fn contrapositive_check(table: &CharacterTable, levels: &[LevelResult], kmax: i64) -> Vec<BoundReport> {
    let g = table.group();
    let Some(spec) = g.spec() else { return Vec::new() };
    let Some(fam) = DegreeFamily::of(spec) else { return Vec::new() };
    let mut out = Vec::new();
    for l in levels {
        let d = BigRational::from_integer(BigInt::from(table.degrees()[l.character]));
        for k in 1..=kmax {
            let b = match fam {
                DegreeFamily::SpOdd => b_c(spec.n() as i64, k, spec.q),
                DegreeFamily::SpEven => b_c_even(spec.n() as i64, k, spec.q),
                DegreeFamily::Orthogonal => b_bd(spec.dim as i64, k, spec.q),
            };
            if d < b {
                out.push(BoundReport::compare(
                    "level-from-degree",
                    format!("{} chi_{} k {k}", g.label(), l.character),
                    Interval::from_int(l.level as i128),
                    Direction::Le,
                    Interval::from_int(3 * (k as i128 - 1)),
                ));
            }
        }
    }
    out
}

// ---------------------------------------------------------------- U-rank

/// Rank of a matrix over the group's field.
fn mat_rank(x: &Mat, table: &CharacterTable) -> usize {
    x.rank(table.group().field())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankResult {
    pub character: usize,
    pub rank: usize,
    /// (j, Y) realizing the rank.
    pub witness: Option<(usize, Mat)>,
}

/// The centers Z(U_j) for j = 1..witt index, for an orthogonal group in odd characteristic.
pub fn rank_parabolics(table: &CharacterTable) -> Result<Vec<ParabolicData>, LevelError> {
    let g = table.group();
    let spec = g.spec().ok_or_else(|| LevelError::RankScope(g.label().to_string()))?;
    if !spec.is_orthogonal() || spec.q % 2 == 0 {
        return Err(LevelError::RankScope(spec.to_string()));
    }
    // SO(2n+1) and SO^-(2n+2) carry SO^+(2n) as a pointwise stabilizer, with the same [I, X].
    let witt = match spec.sign {
        Sign::Minus => spec.witt_index(),
        _ => spec.dim / 2,
    };
    (1..=witt).map(|j| parabolic(g, j).map_err(LevelError::from)).collect()
}

/// Multiplicity of lambda_Y in f restricted to Z(U_j).
pub fn lambda_multiplicity(f: &ClassFunction, classes: &Classes, par: &ParabolicData, y: &Mat) -> Rational {
    let p = par.group.field().p();
    let s: Cyclo = par
        .center
        .iter()
        .map(|(id, x)| {
            let v = &f.values[classes.class_of(*id)];
            v * &Cyclo::root(p, -(par.lambda_exponent(x, y) as i64))
        })
        .sum();
    s.to_rational().expect("multiplicity is rational") / Rational::from_integer(par.center.len() as i128)
}

/// Largest rank(Y) with lambda_Y in f|Z(U_j), over all j.
pub fn urank(f: &ClassFunction, table: &CharacterTable, pars: &[ParabolicData]) -> (usize, Option<(usize, Mat)>) {
    let k = table.group().field();
    let mut best: (usize, Option<(usize, Mat)>) = (0, None);
    for par in pars {
        for y in crate::parabolic::parameter_matrices(par.j, par.symmetric, k) {
            let r = mat_rank(&y, table);
            if r < best.0 || (r == best.0 && best.1.is_some()) {
                continue;
            }
            if lambda_multiplicity(f, table.classes(), par, &y) > Rational::zero() {
                best = (r, Some((par.j, y)));
            }
        }
    }
    best
}

pub fn uranks(table: &CharacterTable) -> Result<Vec<RankResult>, LevelError> {
    let pars = rank_parabolics(table)?;
    Ok((0..table.len())
        .into_par_iter()
        .map(|i| {
            let (rank, witness) = urank(table.character(i), table, &pars);
            RankResult { character: i, rank, witness }
        })
        .collect())
}

/// Even rank bounded by min(2 level, n); unipotent-radical multiplicities; rank additivity on products.
pub fn rank_level_checks(
    table: &CharacterTable,
    levels: &[LevelResult],
    ranks: &[RankResult],
) -> Result<Vec<BoundReport>, LevelError> {
    let g = table.group();
    let label = g.label().to_string();
    let spec = *g.spec().ok_or_else(|| LevelError::RankScope(label.clone()))?;
    let n = spec.dim / 2;
    let mut out = Vec::new();
    for (l, r) in levels.iter().zip(ranks) {
        let cap = (2 * l.level).min(n);
        let ok = r.rank % 2 == 0 && r.rank <= cap;
        out.push(BoundReport::compare(
            "rank-vs-level",
            format!("{label} chi_{} rank {} level {}", l.character, r.rank, l.level),
            Interval::from_int(r.rank as i128),
            Direction::Le,
            Interval::from_int(if ok { cap as i128 } else { -1 }),
        ));
    }
    // multiplicity of each rank-2r lambda in tau^r restricted to Z(U_{2r}), plus-type only
    if spec.sign == Sign::Plus {
        let pars = rank_parabolics(table)?;
        let tau = crate::weil::tau(table.classes());
        let q = spec.q as i128;
        for r in 1..=n / 2 {
            let j = 2 * r;
            let par = &pars[j - 1];
            let tr = tau.pow(r as u32);
            let sp_order = crate::groups::GroupSpec::sp(2 * r, spec.q).order() as i128;
            let want = Rational::from_integer(q.pow((2 * r * (n - 2 * r)) as u32) * sp_order);
            for y in crate::parabolic::parameter_matrices(j, false, g.field()) {
                if mat_rank(&y, table) != j {
                    continue;
                }
                let m = lambda_multiplicity(&tr, table.classes(), par, &y);
                out.push(BoundReport::compare(
                    "tau-power-multiplicity",
                    format!("{label} r {r} Y {:?}", y.data),
                    Interval::from_rational(&m),
                    Direction::Eq,
                    Interval::from_rational(&want),
                ));
            }
        }
    }
    // additivity on products with k + l <= n
    if spec.sign == Sign::Plus {
        let pars = rank_parabolics(table)?;
        let pairs: Vec<(usize, usize)> = (0..table.len())
            .flat_map(|a| (a..table.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| ranks[a].rank + ranks[b].rank <= n)
            .collect();
        let bad: Vec<String> = pairs
            .par_iter()
            .filter_map(|&(a, b)| {
                let prod = table.character(a).mul(table.character(b));
                let (r, _) = urank(&prod, table, &pars);
                (r != ranks[a].rank + ranks[b].rank).then(|| format!("({a},{b})"))
            })
            .collect();
        out.push(
            BoundReport::compare(
                "rank-additivity",
                format!("{label} {} pairs", pairs.len()),
                Interval::from_int(bad.len() as i128),
                Direction::Eq,
                Interval::from_int(0),
            )
            .with_note(if bad.is_empty() { "all pairs additive".to_string() } else { bad.join(" ") }),
        );
    }
    Ok(out)
}

/// Split D into the part of level <= threshold and the rest.
pub fn split_by_level(
    table: &CharacterTable,
    levels: &[LevelResult],
    d: &ClassFunction,
    threshold: usize,
) -> (ClassFunction, ClassFunction, Vec<Rational>) {
    let mults = table.decompose(d);
    let mut low = ClassFunction::constant(table.classes().len(), Cyclo::zero());
    for (i, m) in mults.iter().enumerate() {
        if !m.is_zero() && levels[i].level <= threshold {
            low = low.add(&table.character(i).scale(m));
        }
    }
    let high = d.sub(&low);
    (low, high, mults)
}
