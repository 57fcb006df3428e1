//! Random walks on conjugacy-class Cayley graphs and point counts of product-one varieties.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::chartab::CharacterTable;
use crate::classes::Classes;
use crate::cyclo::Cyclo;
use crate::field::{Field, FieldError};
use crate::real::{self, int, rat};
use crate::report::{big, BoundReport, Direction, Interval};
use crate::Rational;

#[derive(Debug, Error)]
pub enum AppError {
    #[error("class {0} is central: the walk stays on a coset")]
    Degenerate(usize),
    #[error("t = {0} exceeds the maximum of {MAX_STEPS}")]
    Steps(u32),
    #[error("class index {0} out of range")]
    Class(usize),
    #[error("product-one tuples need m >= 2")]
    Arity,
    #[error("enumeration needs {need} tuples, budget is {budget}")]
    Budget { need: u128, budget: u128 },
    #[error("class sum is not an integer: {0}")]
    NotIntegral(String),
    #[error("{0} is not SL(2, q)")]
    NotSl2(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub const MAX_STEPS: u32 = 64;
/// Threshold on ||P^t - U||_1 defining the mixing time.
pub const MIXING_THRESHOLD: (i64, i64) = (1, 4);
/// Budget for direct enumeration of product-one tuples.
pub const BRUTE_BUDGET: u128 = 1_000_000_000;

fn bq(r: &Rational) -> BigRational {
    big(r)
}

// ---------------------------------------------------------------- walks

/// Per-element probabilities of P^t on each class, t = 0..=t_max, by class-algebra convolution.
pub fn walk_convolution(classes: &Classes, c: usize, t_max: u32) -> Result<Vec<Vec<BigRational>>, AppError> {
    let r = classes.len();
    if c >= r {
        return Err(AppError::Class(c));
    }
    if t_max > MAX_STEPS {
        return Err(AppError::Steps(t_max));
    }
    // m[a][k] = #{y in C : z y^{-1} in class a} for z in class k
    let m: Vec<Vec<u64>> = (0..r).map(|a| classes.class_mult_coeffs(a, c)).collect();
    let step = BigRational::new(BigInt::one(), BigInt::from(classes.size(c)));
    let mut p = vec![BigRational::zero(); r];
    p[classes.class_of(0)] = BigRational::one();
    let mut out = vec![p.clone()];
    for _ in 0..t_max {
        let next: Vec<BigRational> = (0..r)
            .map(|k| {
                let s: BigRational = (0..r).filter(|&a| m[a][k] != 0).map(|a| &p[a] * BigInt::from(m[a][k])).sum();
                s * &step
            })
            .collect();
        p = next;
        out.push(p.clone());
    }
    Ok(out)
}

/// Largest t for which the character inversion stays inside i128 cyclotomic arithmetic.
pub fn fourier_limit(table: &CharacterTable) -> u32 {
    let d = *table.degrees().iter().max().unwrap() as f64;
    let k = table.len() as f64;
    let mut t = 0u32;
    while t < MAX_STEPS && (t as f64 + 2.0) * d.log2() + k.log2() < 80.0 {
        t += 1;
    }
    t
}

/// P^t by character inversion: P^t(z) = |G|^{-1} sum_chi chi(1)^{1-t} chi(s)^t conj(chi(z)).
///
/// Galois conjugate characters share their degree, so each degree block sums to a rational.
pub fn walk_fourier(table: &CharacterTable, c: usize, t: u32) -> Vec<BigRational> {
    let cl = table.classes();
    let mut degs: Vec<u64> = table.degrees().to_vec();
    degs.sort_unstable();
    degs.dedup();
    let order = BigRational::from_integer(BigInt::from(cl.order()));
    (0..cl.len())
        .map(|z| {
            let mut total = BigRational::zero();
            for &d in &degs {
                let block: Cyclo = (0..table.len())
                    .filter(|&i| table.degrees()[i] == d)
                    .map(|i| {
                        let chi = table.character(i);
                        &chi.values[c].pow(t) * &chi.values[z].conj()
                    })
                    .sum();
                let block = block.to_rational().expect("degree block is rational");
                let scale = num_traits::pow(BigRational::from_integer(BigInt::from(d)), t as usize).recip() * BigInt::from(d);
                total += bq(&block) * scale;
            }
            total / &order
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct WalkStep {
    pub t: u32,
    /// Probability of each single element of class k.
    pub dist: Vec<BigRational>,
    pub linf: BigRational,
    pub linf_bound: Interval,
    pub l1: BigRational,
    /// Upper bound for ||P^t - U||_1^2.
    pub ds_bound: Interval,
    pub fourier_checked: bool,
}

#[derive(Clone, Debug)]
pub struct WalkReport {
    pub group: String,
    pub class: usize,
    pub steps: Vec<WalkStep>,
    /// (s, zeta(s)) at s = 2 and s = 3t/4 - 2 where positive.
    pub zeta: Vec<(BigRational, Interval)>,
    pub mixing_time: Option<u32>,
    /// Some nontrivial chi has s in its kernel: the walk never leaves a proper normal subgroup.
    pub confined: bool,
    pub threshold: BigRational,
    pub reports: Vec<BoundReport>,
}

/// Degree blocks of nontrivial characters. Galois conjugates share a degree, so symmetric sums
/// over a block are rational.
fn degree_blocks(table: &CharacterTable) -> Vec<(u64, Vec<usize>)> {
    let mut degs: Vec<u64> = table.degrees().to_vec();
    degs.sort_unstable();
    degs.dedup();
    degs.into_iter()
        .map(|d| (d, (0..table.len()).filter(|&i| i != table.trivial_index() && table.degrees()[i] == d).collect::<Vec<_>>()))
        .filter(|(_, v)| !v.is_empty())
        .collect()
}

/// sum over a block of |chi(s)|^{2k}, exactly, when the powers stay well inside i128.
fn block_power_sum(table: &CharacterTable, block: &[usize], c: usize, k: u32) -> Option<BigRational> {
    let cent = table.classes().centralizer_order(c) as f64;
    if k as f64 * cent.log2() > 80.0 {
        return None;
    }
    let s: Cyclo = block
        .iter()
        .map(|&i| {
            let v = &table.character(i).values[c];
            (v * &v.conj()).pow(k)
        })
        .sum();
    s.to_rational().map(|r| bq(&r))
}

/// sum_{chi != 1} (|chi(s)| / chi(1))^t chi(1)^2, enclosed (exact for even t at moderate size).
pub fn linf_bound(table: &CharacterTable, c: usize, t: u32, prec: u64) -> Interval {
    let mut acc = Interval::from_int(0);
    for (d, block) in degree_blocks(table) {
        let d = int(d as i64);
        let w = &d * &d / num_traits::pow(d.clone(), t as usize);
        if t % 2 == 0 {
            if let Some(s) = block_power_sum(table, &block, c, t / 2) {
                acc = real::add(&acc, &Interval::exact(s * &w));
                continue;
            }
        }
        for &i in &block {
            let a = real::abs2(&table.character(i).values[c], prec);
            let mut term = real::scale_by(&real::powi(&a, t / 2), &w);
            if t % 2 == 1 {
                term = real::mul(&term, &real::sqrt(&a, prec));
            }
            acc = real::add(&acc, &term);
        }
    }
    acc
}

/// sum_{chi != 1} (|chi(s)|^2 / chi(1)^2)^t chi(1)^2, which bounds ||P^t - U||_1^2.
pub fn ds_bound(table: &CharacterTable, c: usize, t: u32, prec: u64) -> Interval {
    let mut acc = Interval::from_int(0);
    for (d, block) in degree_blocks(table) {
        let d2 = int((d * d) as i64);
        let w = d2.clone() / num_traits::pow(d2.clone(), t as usize);
        match block_power_sum(table, &block, c, t) {
            Some(s) => acc = real::add(&acc, &Interval::exact(s * &w)),
            None => {
                for &i in &block {
                    let a = real::abs2(&table.character(i).values[c], prec);
                    acc = real::add(&acc, &real::scale_by(&real::powi(&a, t), &w));
                }
            }
        }
    }
    acc
}

/// zeta(s) = sum_chi chi(1)^{-s}; exact for integer s.
pub fn witten_zeta(table: &CharacterTable, s: &BigRational, prec: u64) -> Interval {
    let e = Interval::exact(-s.clone());
    table.degrees().iter().fold(Interval::from_int(0), |acc, &d| real::add(&acc, &real::pow(&int(d as i64), &e, prec)))
}

/// Exact walk, its norms, the two character-sum bounds and the mixing time.
pub fn walk_report(table: &CharacterTable, c: usize, t_max: u32) -> Result<WalkReport, AppError> {
    let cl = table.classes();
    if c >= cl.len() {
        return Err(AppError::Class(c));
    }
    if cl.size(c) == 1 {
        return Err(AppError::Degenerate(c));
    }
    let label = table.group().label().to_string();
    let dists = walk_convolution(cl, c, t_max)?;
    let flimit = fourier_limit(table);
    let order = BigRational::from_integer(BigInt::from(cl.order()));
    let unif = order.recip();
    let threshold = rat(MIXING_THRESHOLD.0, MIXING_THRESHOLD.1);
    let mut steps = Vec::new();
    let mut reports = Vec::new();
    let mut mixing_time = None;
    for (t, dist) in dists.into_iter().enumerate() {
        let t = t as u32;
        let total: BigRational = (0..cl.len()).map(|k| &dist[k] * BigInt::from(cl.size(k))).sum();
        assert!(total.is_one() && dist.iter().all(|p| !p.is_negative()), "P^{t} is not a distribution");
        let fourier_checked = t <= flimit;
        if fourier_checked {
            assert_eq!(walk_fourier(table, c, t), dist, "convolution and character inversion disagree at t = {t}");
        }
        let dev: Vec<BigRational> = dist.iter().map(|p| (p - &unif).abs()).collect();
        let linf = dev.iter().max().unwrap() * &order;
        let l1: BigRational = (0..cl.len()).map(|k| &dev[k] * BigInt::from(cl.size(k))).sum();
        let params = format!("{label} class {c} t={t}");
        let (lb, dsb) = if t == 0 {
            (Interval::exact(order.clone() - int(1)), Interval::exact(order.clone() - int(1)))
        } else {
            let r1 = real::certify(|p| {
                BoundReport::compare("walk-linf", params.clone(), Interval::exact(linf.clone()), Direction::Le, linf_bound(table, c, t, p))
            });
            let r2 = real::certify(|p| {
                BoundReport::compare("walk-l1-ds", params.clone(), Interval::exact(&l1 * &l1), Direction::Le, ds_bound(table, c, t, p))
            });
            let out = (r1.rhs.clone(), r2.rhs.clone());
            reports.push(r1);
            reports.push(r2);
            out
        };
        if mixing_time.is_none() && l1 < threshold {
            mixing_time = Some(t);
        }
        steps.push(WalkStep { t, dist, linf, linf_bound: lb, l1, ds_bound: dsb, fourier_checked });
    }
    let mut zeta = vec![(int(2), witten_zeta(table, &int(2), 96))];
    for t in [t_max] {
        let s = rat(3 * t as i64, 4) - int(2);
        if s.is_positive() {
            let z = witten_zeta(table, &s, 96);
            let st = &steps[t as usize];
            reports.push(
                BoundReport::compare("walk-zeta", format!("{label} class {c} t={t} s={s}"), st.linf_bound.clone(), Direction::Le, real::sub(&z, &Interval::from_int(1)))
                    .informative("needs |chi(g)| <= chi(1)^{1/4}, not available at this scale"),
            );
            zeta.push((s, z));
        }
    }
    let confined = (0..table.len())
        .any(|i| i != table.trivial_index() && table.character(i).values[c] == Cyclo::from_int(table.degrees()[i] as i128));
    Ok(WalkReport { group: label, class: c, steps, zeta, mixing_time, confined, threshold, reports })
}

// ---------------------------------------------------------------- product-one counts

#[derive(Clone, Debug)]
pub struct ProductOneReport {
    pub group: String,
    pub classes: Vec<usize>,
    pub n: BigInt,
    pub brute: Option<u64>,
    pub reports: Vec<BoundReport>,
}

/// #{(g_1..g_m) in C_1 x .. x C_m : g_1 .. g_m = 1} by the class product formula.
pub fn product_one_count(table: &CharacterTable, tuple: &[usize]) -> Result<BigInt, AppError> {
    let cl = table.classes();
    let m = tuple.len();
    if m < 2 {
        return Err(AppError::Arity);
    }
    if let Some(&c) = tuple.iter().find(|&&c| c >= cl.len()) {
        return Err(AppError::Class(c));
    }
    let s: Cyclo = (0..table.len())
        .map(|i| {
            let chi = table.character(i);
            let prod = tuple.iter().fold(Cyclo::one(), |acc, &c| &acc * &chi.values[c]);
            let d = table.degrees()[i] as i128;
            prod.scale(&Rational::new(1, d.pow((m - 2) as u32)))
        })
        .sum();
    let s = s.to_rational().ok_or_else(|| AppError::NotIntegral(s.to_string()))?;
    let sizes: BigInt = tuple.iter().map(|&c| BigInt::from(cl.size(c))).product();
    let n = bq(&s) * BigRational::new(sizes, BigInt::from(cl.order()));
    if !n.is_integer() || n.is_negative() {
        return Err(AppError::NotIntegral(n.to_string()));
    }
    Ok(n.to_integer())
}

/// Direct enumeration over C_1 x .. x C_{m-1}.
pub fn product_one_bruteforce(classes: &Classes, tuple: &[usize], budget: u128) -> Result<u64, AppError> {
    let m = tuple.len();
    if m < 2 {
        return Err(AppError::Arity);
    }
    let need: u128 = tuple[..m - 1].iter().map(|&c| classes.size(c) as u128).product();
    if need > budget {
        return Err(AppError::Budget { need, budget });
    }
    let g = classes.group();
    let members: Vec<Vec<u32>> = tuple[..m - 1].iter().map(|&c| classes.members(c)).collect();
    let last = tuple[m - 1];
    fn walk(g: &crate::groups::GroupTable, cl: &Classes, members: &[Vec<u32>], acc: u32, last: usize) -> u64 {
        match members.split_first() {
            None => (cl.class_of(g.inv(acc)) == last) as u64,
            Some((head, rest)) => head.iter().map(|&x| walk(g, cl, rest, g.mul(acc, x), last)).sum(),
        }
    }
    Ok(members[0].par_iter().map(|&x| walk(g, classes, &members[1..], x, last)).sum())
}

/// Exact count, optional brute-force oracle, and N <= prod_{j != i} |C_j| for each i.
pub fn product_one_report(table: &CharacterTable, tuple: &[usize], brute_budget: Option<u128>) -> Result<ProductOneReport, AppError> {
    let cl = table.classes();
    let n = product_one_count(table, tuple)?;
    let brute = match brute_budget {
        Some(b) => match product_one_bruteforce(cl, tuple, b) {
            Ok(v) => Some(v),
            Err(AppError::Budget { .. }) => None,
            Err(e) => return Err(e),
        },
        None => None,
    };
    let label = table.group().label().to_string();
    let mut reports = Vec::new();
    if let Some(b) = brute {
        reports.push(BoundReport::compare(
            "product-one-oracle",
            format!("{label} {tuple:?}"),
            Interval::exact(BigRational::from_integer(n.clone())),
            Direction::Eq,
            Interval::from_int(b as i128),
        ));
    }
    for i in 0..tuple.len() {
        let rest: BigInt = tuple.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &c)| BigInt::from(cl.size(c))).product();
        reports.push(BoundReport::compare(
            "product-one-projection",
            format!("{label} {tuple:?} drop {i}"),
            Interval::exact(BigRational::from_integer(n.clone())),
            Direction::Le,
            Interval::exact(BigRational::from_integer(rest)),
        ));
    }
    Ok(ProductOneReport { group: label, classes: tuple.to_vec(), n, brute, reports })
}

// ---------------------------------------------------------------- SL2 dimension experiment

/// Classes of SL(2,q) whose centralizer has order q - 1 or q + 1.
pub fn regular_semisimple(table: &CharacterTable, q: u32) -> Vec<usize> {
    let cl = table.classes();
    (0..cl.len()).filter(|&c| matches!(cl.centralizer_order(c) as i64 - q as i64, -1 | 1)).collect()
}

/// Whether eigenvalues a_i of representatives satisfy a_1^{+-1} .. a_m^{+-1} = 1 (the reducible
/// case, a common fixed line). Evaluated for prime q only.
pub fn eigenvalue_product_one(table: &CharacterTable, tuple: &[usize]) -> Result<Option<bool>, AppError> {
    let g = table.group();
    let k = g.field();
    if g.dim() != 2 {
        return Err(AppError::NotSl2(g.label().to_string()));
    }
    if !k.is_prime_field() {
        return Ok(None);
    }
    let p = k.p();
    let big_k = Field::new(p, 2)?;
    let order = (p * p - 1) as i64;
    let logs: Vec<i64> = tuple
        .iter()
        .map(|&c| {
            let m = g.mat(table.classes().rep(c));
            let tr = big_k.from_int(k.add(m.get(0, 0), m.get(1, 1)) as i64);
            let a = big_k
                .elements()
                .find(|&a| a != 0 && big_k.add(big_k.sub(big_k.mul(a, a), big_k.mul(tr, a)), 1) == 0)
                .expect("characteristic polynomial splits over F_{q^2}");
            big_k.discrete_log(a).unwrap() as i64
        })
        .collect();
    let m = logs.len();
    Ok(Some((0..1u64 << m).any(|signs| {
        let s: i64 = (0..m).map(|i| if signs >> i & 1 == 1 { -logs[i] } else { logs[i] }).sum();
        s.rem_euclid(order) == 0
    })))
}

#[derive(Clone, Debug)]
pub struct Sl2Row {
    pub q: u32,
    pub m: usize,
    pub classes: Vec<usize>,
    pub n: BigInt,
    /// N / q^{2m-3}
    pub ratio: BigRational,
    pub in_window: bool,
    pub reducible: Option<bool>,
}

/// N / q^{2m-3} for every multiset of m regular semisimple classes of SL(2,q).
pub fn sl2_dimension_experiment(qs: &[u32], ms: &[usize]) -> Result<Vec<Sl2Row>, AppError> {
    let mut rows = Vec::new();
    for &q in qs {
        let t = crate::catalog::table(&crate::groups::GroupSpec::sl(2, q)).map_err(|e| AppError::NotSl2(e.to_string()))?;
        let rs = regular_semisimple(&t, q);
        for &m in ms {
            for tuple in multisets(&rs, m) {
                let n = product_one_count(&t, &tuple)?;
                let ratio = BigRational::new(n.clone(), num_traits::pow(BigInt::from(q), 2 * m - 3));
                let in_window = ratio >= rat(1, 2) && ratio <= int(2);
                let reducible = eigenvalue_product_one(&t, &tuple)?;
                rows.push(Sl2Row { q, m, classes: tuple, n, ratio, in_window, reducible });
            }
        }
    }
    Ok(rows)
}

fn multisets(items: &[usize], m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in multisets(&items[i..], m - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

// ---------------------------------------------------------------- m0

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M0 {
    pub m0: u64,
    /// m0 <= 7, asserted only for e >= r and h >= 3.
    pub at_most_seven: Option<bool>,
}

/// Minimal m with m^2 r / (2m - 2) < e (m - 2 - 2/h).
pub fn m0_condition(r: u64, e: u64, h: u64) -> Result<M0, AppError> {
    assert!(r > 0 && e > 0 && h > 0, "r, e, h must be positive");
    let holds = |m: u64| {
        let lhs = BigRational::new(BigInt::from(m * m * r), BigInt::from(2 * m - 2));
        let rhs = int(e as i64) * (int(m as i64) - int(2) - rat(2, h as i64));
        lhs < rhs
    };
    let m0 = (2..1_000_000u64).find(|&m| holds(m)).ok_or_else(|| AppError::NotIntegral("no m0 below 10^6".into()))?;
    let at_most_seven = (e >= r && h >= 3).then_some(m0 <= 7);
    Ok(M0 { m0, at_most_seven })
}

pub fn ratio_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::table_str;

    fn class_of_order(t: &CharacterTable, o: u32) -> usize {
        let cl = t.classes();
        (0..cl.len()).find(|&c| cl.element_order(c) == o).unwrap()
    }

    #[test]
    fn walks_agree_and_bounds_hold() {
        for (s, o) in [("SL(2,3)", 4), ("SL(2,5)", 5), ("SL(2,7)", 7)] {
            let t = table_str(s).unwrap();
            let c = class_of_order(&t, o);
            let w = walk_report(&t, c, 12).unwrap();
            assert!(w.steps[0].dist[0].is_one());
            assert!(w.steps.iter().take(9).all(|s| s.fourier_checked), "{s}");
            assert!(w.reports.iter().all(|r| r.verdict != crate::report::Verdict::Fail), "{s}");
            assert_eq!(w.confined, w.mixing_time.is_none(), "{s}");
        }
        let t = table_str("SL(2,3)").unwrap();
        let z = (0..t.classes().len()).find(|&c| c != 0 && t.classes().size(c) == 1).unwrap();
        assert!(matches!(walk_report(&t, z, 3), Err(AppError::Degenerate(_))));
    }

    #[test]
    fn zeta_values() {
        let t = table_str("SL(2,5)").unwrap();
        let z = witten_zeta(&t, &int(2), 64);
        let expect = int(1) + rat(2, 4) + rat(2, 9) + rat(2, 16) + rat(1, 25) + rat(1, 36);
        assert_eq!(z, Interval::exact(expect));
        assert_eq!(witten_zeta(&t, &int(0), 64), Interval::from_int(9));
    }

    #[test]
    fn product_one_matches_enumeration() {
        let t = table_str("SL(2,3)").unwrap();
        let c = class_of_order(&t, 4);
        assert_eq!(product_one_count(&t, &[c, c, c]).unwrap(), BigInt::from(product_one_bruteforce(t.classes(), &[c, c, c], BRUTE_BUDGET).unwrap()));
        let cl = t.classes();
        for a in 0..cl.len() {
            for b in 0..cl.len() {
                let n = product_one_count(&t, &[a, b]).unwrap();
                let expect = if b == cl.inverse(a) { cl.size(a) } else { 0 };
                assert_eq!(n, BigInt::from(expect));
            }
        }
        let t = table_str("SL(2,5)").unwrap();
        let c = class_of_order(&t, 5);
        let r = product_one_report(&t, &[c, c, c], Some(BRUTE_BUDGET)).unwrap();
        assert_eq!(r.brute.map(BigInt::from), Some(r.n.clone()));
        assert!(r.reports.iter().all(|r| r.passed()));
    }

    #[test]
    fn unipotent_triples_are_reducible() {
        let t = table_str("SL(2,3)").unwrap();
        let u = class_of_order(&t, 3);
        assert_eq!(eigenvalue_product_one(&t, &[u, u, u]).unwrap(), Some(true));
    }

    #[test]
    fn m0_examples() {
        assert_eq!(m0_condition(4, 4, 5).unwrap().at_most_seven, Some(true));
        assert_eq!(m0_condition(8, 29, 30).unwrap().m0, 3);
        assert_eq!(m0_condition(1, 1, 2).unwrap(), M0 { m0: 8, at_most_seven: None });
    }
}
