//! Classical groups as explicitly enumerated matrix groups.
//!
//! Matrices act on column vectors. Elements are stored flat (row-major) and
//! keyed by their base-q code; element id 0 is always the identity and the
//! remaining ids follow the lexicographic order of the entry strings.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::field::{Field, FieldError};
use crate::matrix::{mul_into, Mat};

pub const DEFAULT_BUDGET: u128 = 20_000_000;
const SEED: u64 = 0x636c_6162;

#[derive(Debug, thiserror::Error)]
pub enum GroupError {
    #[error("illegal group: {0}")]
    Illegal(String),
    #[error("cannot parse group spec {input:?} at position {pos}: {msg}")]
    Parse { input: String, pos: usize, msg: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("group order {order} exceeds the enumeration budget {budget}")]
    TooLarge { order: u128, budget: u128 },
    #[error("failed to generate {0} from random elements")]
    Generation(String),
    #[error("j = {j} exceeds the Witt index {witt}")]
    WittIndex { j: usize, witt: usize },
    #[error("requested subspace is degenerate")]
    Degenerate,
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Family {
    GL,
    SL,
    GU,
    SU,
    Sp,
    GO,
    SO,
    Omega,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    Plus,
    Minus,
    None,
}

impl Sign {
    pub fn as_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::None => 0,
        }
    }
}

/// A classical group given by family, matrix dimension, field size and type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    pub dim: usize,
    pub q: u32,
    pub sign: Sign,
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut f = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

fn pow_u128(b: u128, e: u32) -> u128 {
    b.checked_pow(e).expect("order overflow")
}

impl GroupSpec {
    pub fn new(family: Family, dim: usize, q: u32, sign: Sign) -> Result<GroupSpec, GroupError> {
        let s = GroupSpec { family, dim, q, sign };
        s.validate()?;
        Ok(s)
    }

    pub fn gl(n: usize, q: u32) -> GroupSpec {
        GroupSpec::new(Family::GL, n, q, Sign::None).unwrap()
    }
    pub fn sl(n: usize, q: u32) -> GroupSpec {
        GroupSpec::new(Family::SL, n, q, Sign::None).unwrap()
    }
    pub fn sp(dim: usize, q: u32) -> GroupSpec {
        GroupSpec::new(Family::Sp, dim, q, Sign::None).unwrap()
    }

    fn validate(&self) -> Result<(), GroupError> {
        let (p, _) = prime_power(self.q)
            .ok_or_else(|| GroupError::Illegal(format!("{} is not a prime power", self.q)))?;
        let d = self.dim;
        if d == 0 {
            return Err(GroupError::Illegal("dimension must be positive".into()));
        }
        let bad = |m: &str| Err(GroupError::Illegal(format!("{self}: {m}")));
        match self.family {
            Family::GL | Family::SL | Family::GU | Family::SU => {
                if self.sign != Sign::None {
                    return bad("linear and unitary groups carry no type sign");
                }
            }
            Family::Sp => {
                if d % 2 == 1 || self.sign != Sign::None {
                    return bad("symplectic groups need even dimension and no sign");
                }
            }
            Family::GO | Family::SO | Family::Omega => {
                match self.sign {
                    Sign::None => {
                        if d % 2 == 0 {
                            return bad("even-dimensional orthogonal groups need a sign");
                        }
                        if p == 2 {
                            return bad("odd-dimensional orthogonal groups require odd q");
                        }
                    }
                    _ => {
                        if d % 2 == 1 {
                            return bad("odd-dimensional orthogonal groups carry no sign");
                        }
                    }
                }
                if self.family == Family::SO && p == 2 {
                    return bad("SO is not used in characteristic 2; use Omega or O");
                }
                if self.family == Family::Omega && d < 3 {
                    return bad("Omega needs dimension at least 3");
                }
            }
        }
        Ok(())
    }

    /// Characteristic and exponent of q.
    pub fn pf(&self) -> (u32, u32) {
        prime_power(self.q).unwrap()
    }

    pub fn is_unitary(&self) -> bool {
        matches!(self.family, Family::GU | Family::SU)
    }

    pub fn is_orthogonal(&self) -> bool {
        matches!(self.family, Family::GO | Family::SO | Family::Omega)
    }

    /// The rank parameter n of the natural notation (Sp(2n), SO(2n), SO(2n+1), GL(n)).
    pub fn n(&self) -> usize {
        match self.family {
            Family::Sp => self.dim / 2,
            Family::GO | Family::SO | Family::Omega => self.dim / 2,
            _ => self.dim,
        }
    }

    /// Dimension of a maximal totally isotropic (singular) subspace.
    pub fn witt_index(&self) -> usize {
        match (self.family, self.sign) {
            (Family::Sp, _) => self.dim / 2,
            (_, Sign::Plus) => self.dim / 2,
            (_, Sign::Minus) => self.dim / 2 - 1,
            (_, Sign::None) if self.is_orthogonal() => self.dim / 2,
            _ => self.dim / 2,
        }
    }

    /// Field over which the matrices live (GF(q^2) for unitary groups).
    pub fn matrix_field(&self) -> Result<Arc<Field>, GroupError> {
        let (p, f) = self.pf();
        let f = if self.is_unitary() { 2 * f } else { f };
        Ok(Field::new(p, f)?)
    }

    /// Exact group order by closed formula.
    pub fn order(&self) -> u128 {
        let q = self.q as u128;
        let d = self.dim as u32;
        let odd_q = self.q % 2 == 1;
        match self.family {
            Family::GL => pow_u128(q, d * (d - 1) / 2) * (1..=d).map(|i| pow_u128(q, i) - 1).product::<u128>(),
            Family::SL => GroupSpec { family: Family::GL, ..*self }.order() / (q - 1),
            Family::GU => {
                let mut o = pow_u128(q, d * (d - 1) / 2);
                for i in 1..=d {
                    let qi = pow_u128(q, i);
                    o *= if i % 2 == 0 { qi - 1 } else { qi + 1 };
                }
                o
            }
            Family::SU => GroupSpec { family: Family::GU, ..*self }.order() / (q + 1),
            Family::Sp => {
                let n = d / 2;
                pow_u128(q, n * n) * (1..=n).map(|i| pow_u128(q, 2 * i) - 1).product::<u128>()
            }
            Family::GO => match self.sign {
                Sign::None => {
                    let n = d / 2;
                    2 * pow_u128(q, n * n) * (1..=n).map(|i| pow_u128(q, 2 * i) - 1).product::<u128>()
                }
                s => {
                    let n = d / 2;
                    let qn = pow_u128(q, n);
                    let lead = if s == Sign::Plus { qn - 1 } else { qn + 1 };
                    2 * pow_u128(q, n * (n - 1)) * lead * (1..n).map(|i| pow_u128(q, 2 * i) - 1).product::<u128>()
                }
            },
            Family::SO => GroupSpec { family: Family::GO, ..*self }.order() / 2,
            Family::Omega => {
                let go = GroupSpec { family: Family::GO, ..*self }.order();
                if odd_q {
                    go / 4
                } else {
                    go / 2
                }
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::GL => "GL",
            Family::SL => "SL",
            Family::GU => "GU",
            Family::SU => "SU",
            Family::Sp => "Sp",
            Family::GO => "O",
            Family::SO => "SO",
            Family::Omega => "Omega",
        };
        let sign = match self.sign {
            Sign::Plus => "+",
            Sign::Minus => "-",
            Sign::None => "",
        };
        write!(f, "{fam}{sign}({},{})", self.dim, self.q)
    }
}

/// Parses `FAMILY '(' dim ',' q ')'`, e.g. `Sp(4,3)`, `SO+(4,3)`, `Omega-(6,2)`, `O(5,3)`.
pub fn parse_group_spec(input: &str) -> Result<GroupSpec, GroupError> {
    let err = |pos: usize, msg: &str| GroupError::Parse { input: input.to_string(), pos, msg: msg.to_string() };
    let s = input.trim();
    let lead = input.len() - input.trim_start().len();
    let open = s.find('(').ok_or_else(|| err(lead + s.len(), "expected '('"))?;
    let name = &s[..open];
    let (fam_str, sign) = match name.strip_suffix('+') {
        Some(f) => (f, Sign::Plus),
        None => match name.strip_suffix('-') {
            Some(f) => (f, Sign::Minus),
            None => (name, Sign::None),
        },
    };
    let family = match fam_str {
        "GL" => Family::GL,
        "SL" => Family::SL,
        "GU" => Family::GU,
        "SU" => Family::SU,
        "Sp" => Family::Sp,
        "O" | "GO" => Family::GO,
        "SO" => Family::SO,
        "Omega" => Family::Omega,
        _ => return Err(err(lead, "unknown family")),
    };
    if !s.ends_with(')') {
        return Err(err(lead + s.len(), "expected ')'"));
    }
    let inner = &s[open + 1..s.len() - 1];
    let comma = inner.find(',').ok_or_else(|| err(lead + open + 1 + inner.len(), "expected ','"))?;
    let dim: usize = inner[..comma]
        .trim()
        .parse()
        .map_err(|_| err(lead + open + 1, "dimension is not an integer"))?;
    let q: u32 = inner[comma + 1..]
        .trim()
        .parse()
        .map_err(|_| err(lead + open + 2 + comma, "q is not an integer"))?;
    GroupSpec::new(family, dim, q, sign)
}

impl FromStr for GroupSpec {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_group_spec(s)
    }
}

// ---------------------------------------------------------------- forms

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Symplectic,
    Quadratic,
    Hermitian,
}

/// A non-degenerate form on the natural module.
///
/// `gram` is the bilinear (polar) Gram matrix, or the Hermitian Gram matrix.
/// For quadratic forms `quad` is upper triangular with Q(x) = sum_{i<=j} quad_ij x_i x_j.
#[derive(Clone, Debug)]
pub struct Form {
    pub kind: FormKind,
    pub gram: Mat,
    pub quad: Option<Mat>,
}

impl Form {
    pub fn symplectic(n: usize, k: &Field) -> Form {
        let d = 2 * n;
        let mut g = Mat::zero(d, d);
        for i in 0..n {
            g.set(i, n + i, 1);
            g.set(n + i, i, k.neg(1));
        }
        Form { kind: FormKind::Symplectic, gram: g, quad: None }
    }

    /// Quadratic form with hyperbolic pairs (u_i, v_i) at coordinates (i, h+i), followed by an
    /// anisotropic plane (minus type) or one vector z with Q(z) = z^2 (odd dimension).
    pub fn quadratic(dim: usize, sign: Sign, k: &Field) -> Form {
        let mut qm = Mat::zero(dim, dim);
        let h = match sign {
            Sign::Plus => dim / 2,
            Sign::Minus => dim / 2 - 1,
            Sign::None => dim / 2,
        };
        for i in 0..h {
            qm.set(i, h + i, 1);
        }
        match sign {
            Sign::Minus => {
                // a^2 + ab + c b^2 with x^2 + x + c irreducible
                let c = (0..k.q())
                    .find(|&c| k.elements().all(|x| k.add(k.add(k.mul(x, x), x), c) != 0))
                    .expect("irreducible quadratic exists");
                qm.set(dim - 2, dim - 2, 1);
                qm.set(dim - 2, dim - 1, 1);
                qm.set(dim - 1, dim - 1, c);
            }
            Sign::None => {
                qm.set(dim - 1, dim - 1, 1);
            }
            Sign::Plus => {}
        }
        let gram = qm.add(&qm.transpose(), k);
        Form { kind: FormKind::Quadratic, gram, quad: Some(qm) }
    }

    pub fn hermitian(n: usize) -> Form {
        Form { kind: FormKind::Hermitian, gram: Mat::identity(n), quad: None }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows
    }

    pub fn bilinear(&self, x: &[u32], y: &[u32], k: &Field) -> u32 {
        let gy = self.gram.apply(y, k);
        x.iter().zip(&gy).fold(0, |acc, (&a, &b)| k.add(acc, k.mul(a, b)))
    }

    pub fn quad_value(&self, x: &[u32], k: &Field) -> u32 {
        let qm = self.quad.as_ref().expect("quadratic form");
        let n = x.len();
        let mut acc = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in i..n {
                let c = qm.get(i, j);
                if c != 0 {
                    acc = k.add(acc, k.mul(c, k.mul(x[i], x[j])));
                }
            }
        }
        acc
    }

    /// Membership of `g` (acting on columns) in the isometry group.
    pub fn preserves(&self, g: &Mat, k: &Field) -> bool {
        match self.kind {
            FormKind::Symplectic => g.transpose().mul(&self.gram, k).mul(g, k) == self.gram,
            FormKind::Quadratic => {
                if g.transpose().mul(&self.gram, k).mul(g, k) != self.gram {
                    return false;
                }
                let n = g.rows;
                (0..n).all(|c| {
                    let col: Vec<u32> = (0..n).map(|r| g.get(r, c)).collect();
                    let mut e = vec![0; n];
                    e[c] = 1;
                    self.quad_value(&col, k) == self.quad_value(&e, k)
                })
            }
            FormKind::Hermitian => {
                let q = (k.q() as f64).sqrt().round() as u64;
                let gbar = g.map(|x| k.pow(x, q));
                g.transpose().mul(&self.gram, k).mul(&gbar, k) == self.gram
            }
        }
    }

    /// Whether the form restricted to the coordinate span of `idx` is non-degenerate.
    pub fn nondegenerate_on(&self, idx: &[usize], k: &Field) -> bool {
        let sub = self.gram.select(idx, idx);
        let full = sub.rank(k) == idx.len();
        if full || self.kind != FormKind::Quadratic {
            return full;
        }
        // odd-dimensional quadratic subspaces in characteristic 2 have a radical of dimension 1
        false
    }
}

pub fn natural_form(spec: &GroupSpec, k: &Field) -> Option<Form> {
    match spec.family {
        Family::Sp => Some(Form::symplectic(spec.dim / 2, k)),
        Family::GO | Family::SO | Family::Omega => Some(Form::quadratic(spec.dim, spec.sign, k)),
        Family::GU | Family::SU => Some(Form::hermitian(spec.dim)),
        _ => None,
    }
}

// ---------------------------------------------------------------- tables

pub struct GroupTable {
    label: String,
    spec: Option<GroupSpec>,
    field: Arc<Field>,
    form: Option<Form>,
    dim: usize,
    mats: Vec<u32>,
    codes: Vec<u128>,
    index: FxHashMap<u128, u32>,
    inv: Vec<u32>,
    gens: Vec<u32>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupTable({}, order {})", self.label, self.order())
    }
}

fn code_of(m: &[u32], q: u32) -> u128 {
    m.iter().fold(0u128, |acc, &x| acc * q as u128 + x as u128)
}

fn fits(dim: usize, q: u32) -> bool {
    (dim * dim) as f64 * (q as f64).log2() < 127.0
}

/// Breadth-first closure of a set of generating matrices.
fn close(k: &Field, dim: usize, gens: &[Vec<u32>], budget: u128) -> Result<(Vec<u128>, Vec<u32>), GroupError> {
    let q = k.q();
    let dd = dim * dim;
    let id = Mat::identity(dim).data;
    let mut seen: FxHashSet<u128> = FxHashSet::default();
    let mut mats = id.clone();
    let mut codes = vec![code_of(&id, q)];
    seen.insert(codes[0]);
    let mut start = 0usize;
    loop {
        let end = codes.len();
        if start == end {
            break;
        }
        let new: Vec<(u128, Vec<u32>)> = (start..end)
            .into_par_iter()
            .flat_map_iter(|i| {
                let x = &mats[i * dd..(i + 1) * dd];
                gens.iter().map(move |g| {
                    let mut out = vec![0u32; dd];
                    mul_into(x, g, &mut out, dim, dim, dim, k);
                    (code_of(&out, q), out)
                })
            })
            .collect();
        for (c, m) in new {
            if seen.insert(c) {
                codes.push(c);
                mats.extend_from_slice(&m);
                if codes.len() as u128 > budget {
                    return Err(GroupError::TooLarge { order: codes.len() as u128, budget });
                }
            }
        }
        start = end;
    }
    Ok((codes, mats))
}

impl GroupTable {
    /// Builds a table from a complete, closed list of matrices.
    pub fn from_matrices(
        label: String,
        spec: Option<GroupSpec>,
        field: Arc<Field>,
        form: Option<Form>,
        dim: usize,
        codes: Vec<u128>,
        mats: Vec<u32>,
        gens: &[Vec<u32>],
    ) -> GroupTable {
        let dd = dim * dim;
        let q = field.q();
        let id_code = code_of(&Mat::identity(dim).data, q);
        let mut order: Vec<usize> = (0..codes.len()).collect();
        order.sort_unstable_by_key(|&i| (codes[i] != id_code, codes[i]));
        let mut sorted_mats = Vec::with_capacity(mats.len());
        let mut sorted_codes = Vec::with_capacity(codes.len());
        for &i in &order {
            sorted_codes.push(codes[i]);
            sorted_mats.extend_from_slice(&mats[i * dd..(i + 1) * dd]);
        }
        let index: FxHashMap<u128, u32> =
            sorted_codes.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        let mut t = GroupTable {
            label,
            spec,
            field,
            form,
            dim,
            mats: sorted_mats,
            codes: sorted_codes,
            index,
            inv: Vec::new(),
            gens: Vec::new(),
        };
        t.gens = gens.iter().map(|g| t.id_of(g).expect("generator in group")).collect();
        t.gens.sort_unstable();
        t.gens.dedup();
        t.gens.retain(|&g| g != 0);
        let inv: Vec<u32> = (0..t.order())
            .into_par_iter()
            .map(|i| {
                let m = t.mat(i as u32).inverse(&t.field).expect("invertible");
                t.id_of(&m.data).expect("closed under inverses")
            })
            .collect();
        t.inv = inv;
        t
    }

    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn form(&self) -> Option<&Form> {
        self.form.as_ref()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn order(&self) -> usize {
        self.codes.len()
    }
    pub fn generators(&self) -> &[u32] {
        &self.gens
    }
    pub fn code(&self, id: u32) -> u128 {
        self.codes[id as usize]
    }

    /// q of the natural notation (for unitary groups the matrix field has q^2 elements).
    pub fn q(&self) -> u32 {
        match &self.spec {
            Some(s) => s.q,
            None => self.field.q(),
        }
    }

    #[inline]
    pub fn matrix(&self, id: u32) -> &[u32] {
        let dd = self.dim * self.dim;
        &self.mats[id as usize * dd..(id as usize + 1) * dd]
    }

    pub fn mat(&self, id: u32) -> Mat {
        Mat::square(self.dim, self.matrix(id).to_vec())
    }

    pub fn id_of(&self, m: &[u32]) -> Option<u32> {
        if m.len() != self.dim * self.dim {
            return None;
        }
        self.index.get(&code_of(m, self.field.q())).copied()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let dd = self.dim * self.dim;
        let mut out = [0u32; 64];
        let buf: &mut [u32] = if dd <= 64 { &mut out[..dd] } else { return self.mul_slow(a, b) };
        mul_into(self.matrix(a), self.matrix(b), buf, self.dim, self.dim, self.dim, &self.field);
        self.index[&code_of(buf, self.field.q())]
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let m = self.mat(a).mul(&self.mat(b), &self.field);
        self.id_of(&m.data).expect("closed under products")
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// g x g^{-1}
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn element_order(&self, a: u32) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn det(&self, a: u32) -> u32 {
        self.mat(a).det(&self.field)
    }

    /// (dim Ker(g - 1), dim Ker(g + 1)) on the natural module.
    pub fn fixed_space_dims(&self, g: u32) -> (usize, usize) {
        fixed_space_dims(&self.mat(g), &self.field)
    }

    /// Closure of a set of element ids, as a sorted id list.
    pub fn closure_ids(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Subgroup on the given (closed) id set; generators chosen greedily in a seeded order.
    pub fn subgroup(self: &Arc<Self>, label: String, ids: &[u32]) -> Subgroup {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ ids.len() as u64);
        let member: FxHashSet<u32> = ids.iter().copied().collect();
        let mut gens: Vec<u32> = Vec::new();
        let mut have: FxHashSet<u32> = [0u32].into_iter().collect();
        while have.len() < ids.len() {
            let cand = ids[rng.gen_range(0..ids.len())];
            if have.contains(&cand) {
                continue;
            }
            gens.push(cand);
            have = self.closure_ids(&gens).into_iter().collect();
            assert!(have.iter().all(|x| member.contains(x)), "id set is not a subgroup");
        }
        let dd = self.dim * self.dim;
        let mut mats = Vec::with_capacity(ids.len() * dd);
        let mut codes = Vec::with_capacity(ids.len());
        for &i in ids {
            mats.extend_from_slice(self.matrix(i));
            codes.push(self.codes[i as usize]);
        }
        let gen_mats: Vec<Vec<u32>> = gens.iter().map(|&g| self.matrix(g).to_vec()).collect();
        let table = GroupTable::from_matrices(
            label,
            None,
            self.field.clone(),
            self.form.clone(),
            self.dim,
            codes,
            mats,
            &gen_mats,
        );
        let embed = (0..table.order() as u32).map(|i| self.index[&table.code(i)]).collect();
        Subgroup { parent: self.clone(), table: Arc::new(table), embed }
    }

    /// Ids whose matrices satisfy a predicate.
    pub fn filter_ids(&self, pred: impl Fn(&[u32]) -> bool + Sync) -> Vec<u32> {
        (0..self.order() as u32).into_par_iter().filter(|&i| pred(self.matrix(i))).collect()
    }

    /// Normal closure of the commutators of the generators.
    pub fn derived_ids(&self) -> Vec<u32> {
        let g = &self.gens;
        let mut gens: Vec<u32> = Vec::new();
        for &a in g {
            for &b in g {
                let c = self.commutator(a, b);
                if c != 0 {
                    gens.push(c);
                }
            }
        }
        gens.sort_unstable();
        gens.dedup();
        let mut set: FxHashSet<u32> = self.closure_ids(&gens).into_iter().collect();
        loop {
            let mut grew = false;
            for i in 0..gens.len() {
                for &s in g {
                    let c = self.conj(gens[i], s);
                    if !set.contains(&c) {
                        gens.push(c);
                        set = self.closure_ids(&gens).into_iter().collect();
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut v: Vec<u32> = set.into_iter().collect();
        v.sort_unstable();
        v
    }
}

/// (dim Ker(g - 1), dim Ker(g + 1)).
pub fn fixed_space_dims(g: &Mat, k: &Field) -> (usize, usize) {
    let n = g.rows;
    let id = Mat::identity(n);
    let plus = n - g.sub(&id, k).rank(k);
    let minus = if k.p() == 2 { plus } else { n - g.add(&id, k).rank(k) };
    (plus, minus)
}

/// A subgroup with its own table and the embedding of its ids into the parent.
#[derive(Clone)]
pub struct Subgroup {
    pub parent: Arc<GroupTable>,
    pub table: Arc<GroupTable>,
    pub embed: Vec<u32>,
}

impl Subgroup {
    pub fn index(&self) -> usize {
        self.parent.order() / self.table.order()
    }
}

// ---------------------------------------------------------------- enumeration

fn random_vector(rng: &mut ChaCha8Rng, n: usize, q: u32) -> Vec<u32> {
    loop {
        let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..q)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// I + c * v * w^T
fn rank_one_update(v: &[u32], w: &[u32], c: u32, k: &Field) -> Mat {
    let n = v.len();
    let mut m = Mat::identity(n);
    for i in 0..n {
        for j in 0..n {
            let t = k.mul(c, k.mul(v[i], w[j]));
            let x = k.add(m.get(i, j), t);
            m.set(i, j, x);
        }
    }
    m
}

fn random_generator(spec: &GroupSpec, form: Option<&Form>, k: &Field, rng: &mut ChaCha8Rng) -> Mat {
    let n = spec.dim;
    let qk = k.q();
    match spec.family {
        Family::GL | Family::SL => loop {
            let m = Mat::square(n, (0..n * n).map(|_| rng.gen_range(0..qk)).collect());
            if m.det(k) != 0 {
                return m;
            }
        },
        Family::Sp => {
            let form = form.unwrap();
            let v = random_vector(rng, n, qk);
            let a = rng.gen_range(1..qk);
            // x -> x + a (x, v) v, with (x, v) = x^T J v
            let jv = form.gram.apply(&v, k);
            rank_one_update(&v, &jv, a, k)
        }
        Family::GO | Family::SO | Family::Omega => {
            let form = form.unwrap();
            loop {
                let v = random_vector(rng, n, qk);
                let qv = form.quad_value(&v, k);
                if qv == 0 {
                    continue;
                }
                // x -> x - B(x, v)/Q(v) v
                let bv = form.gram.apply(&v, k);
                return rank_one_update(&v, &bv, k.neg(k.inv(qv)), k);
            }
        }
        Family::GU | Family::SU => {
            let q = spec.q as u64;
            let form = form.unwrap();
            let conj = |x: u32| k.pow(x, q);
            loop {
                let v = random_vector(rng, n, qk);
                let vbar: Vec<u32> = v.iter().map(|&x| conj(x)).collect();
                let hv = form.gram.apply(&vbar, k);
                let hvv = v.iter().zip(&hv).fold(0, |acc, (&a, &b)| k.add(acc, k.mul(a, b)));
                let c = if hvv == 0 {
                    let c = rng.gen_range(1..qk);
                    if k.add(c, conj(c)) != 0 {
                        continue;
                    }
                    c
                } else {
                    let lam = rng.gen_range(1..qk);
                    if k.mul(lam, conj(lam)) != 1 || lam == 1 {
                        continue;
                    }
                    k.div(k.sub(lam, 1), hvv)
                };
                return rank_one_update(&v, &hv, c, k);
            }
        }
    }
}

/// Enumerates a classical group from its spec with the default budget.
pub fn enumerate(spec: &GroupSpec) -> Result<Arc<GroupTable>, GroupError> {
    enumerate_with_budget(spec, DEFAULT_BUDGET)
}

pub fn enumerate_with_budget(spec: &GroupSpec, budget: u128) -> Result<Arc<GroupTable>, GroupError> {
    spec.validate()?;
    let target = spec.order();
    if target > budget {
        return Err(GroupError::TooLarge { order: target, budget });
    }
    let k = spec.matrix_field()?;
    if !fits(spec.dim, k.q()) {
        return Err(GroupError::Unsupported(format!("{spec}: matrices too large to encode")));
    }
    let form = natural_form(spec, &k);
    let label = spec.to_string();
    match spec.family {
        Family::SL | Family::SU | Family::SO => {
            let parent_family = match spec.family {
                Family::SL => Family::GL,
                Family::SU => Family::GU,
                _ => Family::GO,
            };
            let parent = enumerate_with_budget(&GroupSpec { family: parent_family, ..*spec }, budget)?;
            let ids = parent.filter_ids(|m| Mat::square(spec.dim, m.to_vec()).det(&k) == 1);
            Ok(rebase(&parent, ids, label, *spec))
        }
        Family::Omega => {
            let parent_family = if spec.q % 2 == 1 { Family::SO } else { Family::GO };
            let parent = enumerate_with_budget(&GroupSpec { family: parent_family, ..*spec }, budget)?;
            let ids = parent.derived_ids();
            if ids.len() as u128 != target {
                return Err(GroupError::Generation(format!(
                    "{label}: derived subgroup has order {} not {target}",
                    ids.len()
                )));
            }
            Ok(rebase(&parent, ids, label, *spec))
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED);
            let mut gens: Vec<Vec<u32>> = Vec::new();
            for _ in 0..40 {
                let g = random_generator(spec, form.as_ref(), &k, &mut rng);
                if let Some(f) = &form {
                    debug_assert!(f.preserves(&g, &k), "generator outside {label}");
                }
                gens.push(g.data);
                if gens.len() < 2 {
                    continue;
                }
                let (codes, mats) = close(&k, spec.dim, &gens, target)?;
                if codes.len() as u128 == target {
                    return Ok(Arc::new(GroupTable::from_matrices(
                        label,
                        Some(*spec),
                        k.clone(),
                        form,
                        spec.dim,
                        codes,
                        mats,
                        &gens,
                    )));
                }
            }
            Err(GroupError::Generation(label))
        }
    }
}

fn rebase(parent: &Arc<GroupTable>, ids: Vec<u32>, label: String, spec: GroupSpec) -> Arc<GroupTable> {
    let sub = parent.subgroup(label, &ids);
    let mut t = Arc::try_unwrap(sub.table).unwrap_or_else(|_| unreachable!());
    t.spec = Some(spec);
    Arc::new(t)
}

// ---------------------------------------------------------------- standard subgroups

/// Pointwise stabilizer of the coordinate vectors with the given indices.
pub fn pointwise_stabilizer(
    g: &Arc<GroupTable>,
    fixed: &[usize],
    require_nondegenerate: bool,
) -> Result<Subgroup, GroupError> {
    if require_nondegenerate {
        if let Some(f) = g.form() {
            if !f.nondegenerate_on(fixed, g.field()) {
                return Err(GroupError::Degenerate);
            }
        }
    }
    let d = g.dim();
    let ids = g.filter_ids(|m| fixed.iter().all(|&c| (0..d).all(|r| m[r * d + c] == (r == c) as u32)));
    Ok(g.subgroup(format!("{}|fix{:?}", g.label(), fixed), &ids))
}

/// Stabilizer of the coordinate subspaces spanned by each index block.
pub fn block_stabilizer(g: &Arc<GroupTable>, blocks: &[Vec<usize>]) -> Subgroup {
    let d = g.dim();
    let ids = g.filter_ids(|m| {
        blocks.iter().all(|b| {
            b.iter().all(|&c| (0..d).all(|r| b.contains(&r) || m[r * d + c] == 0))
        })
    });
    g.subgroup(format!("{}|stab{:?}", g.label(), blocks), &ids)
}

/// Levi subgroup GL_n of the Siegel parabolic of Sp(2n) or SO+(2n).
pub fn siegel_levi(g: &Arc<GroupTable>) -> Result<Subgroup, GroupError> {
    let spec = g.spec().ok_or_else(|| GroupError::Unsupported("levi needs a classical spec".into()))?;
    let n = spec.dim / 2;
    if !(spec.family == Family::Sp || (spec.is_orthogonal() && spec.sign == Sign::Plus)) {
        return Err(GroupError::Unsupported(format!("{spec} has no Siegel parabolic")));
    }
    Ok(block_stabilizer(g, &[(0..n).collect(), (n..2 * n).collect()]))
}

pub fn derived_subgroup(g: &Arc<GroupTable>) -> Subgroup {
    let ids = g.derived_ids();
    g.subgroup(format!("[{0},{0}]", g.label()), &ids)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_by_formula() {
        assert_eq!(GroupSpec::sp(2, 3).order(), 24);
        assert_eq!(GroupSpec::gl(1, 7).order(), 6);
        assert_eq!("SO+(4,3)".parse::<GroupSpec>().unwrap().order(), 576);
        assert_eq!("Omega+(4,3)".parse::<GroupSpec>().unwrap().order(), 288);
        assert_eq!("SO(5,3)".parse::<GroupSpec>().unwrap().order(), 51840);
        assert_eq!("GU(2,2)".parse::<GroupSpec>().unwrap().order(), 18);
        assert_eq!(GroupSpec::sp(4, 2).order(), 720);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_group_spec("SO(5,2)"), Err(GroupError::Illegal(_))));
        assert!(matches!(parse_group_spec("Xy(2,3)"), Err(GroupError::Parse { .. })));
        assert!(matches!(parse_group_spec("Sp(3,3)"), Err(GroupError::Illegal(_))));
        assert!(matches!(parse_group_spec("GL(2,6)"), Err(GroupError::Illegal(_))));
        let s = parse_group_spec("Omega+(4,3)").unwrap();
        assert_eq!((s.family, s.sign, s.dim, s.q), (Family::Omega, Sign::Plus, 4, 3));
        assert_eq!(s.to_string(), "Omega+(4,3)");
    }

    #[test]
    fn small_enumerations() {
        for s in ["SL(2,3)", "Sp(2,3)", "GL(2,3)", "GU(2,2)", "SO+(4,3)", "O-(4,3)", "Sp(4,2)", "Omega+(4,3)"] {
            let spec: GroupSpec = s.parse().unwrap();
            let g = enumerate(&spec).unwrap();
            assert_eq!(g.order() as u128, spec.order(), "{s}");
            assert!(g.matrix(0).chunks(spec.dim).enumerate().all(|(i, r)| r[i] == 1));
            for i in 0..g.order() as u32 {
                assert_eq!(g.inv(g.inv(i)), i);
                assert_eq!(g.mul(i, g.inv(i)), 0);
            }
            if let Some(f) = g.form() {
                for i in 0..g.order() as u32 {
                    assert!(f.preserves(&g.mat(i), g.field()), "{s}");
                }
            }
        }
    }

    #[test]
    fn transvection_fixed_space() {
        let k = Field::new(3, 1).unwrap();
        let f = Form::symplectic(2, &k);
        let v = vec![1, 0, 0, 0];
        let jv = f.gram.apply(&v, &k);
        let t = rank_one_update(&v, &jv, 1, &k);
        assert!(f.preserves(&t, &k));
        assert_eq!(fixed_space_dims(&t, &k), (3, 0));
        assert_eq!(fixed_space_dims(&Mat::identity(4), &k), (4, 0));
        let minus = Mat::identity(4).scale(2, &k);
        assert_eq!(fixed_space_dims(&minus, &k), (0, 4));
    }

    #[test]
    fn standard_subgroups_of_sp43() {
        let g = enumerate(&GroupSpec::sp(4, 3)).unwrap();
        assert_eq!(g.order(), 51840);
        let h = pointwise_stabilizer(&g, &[1, 3], true).unwrap();
        assert_eq!(h.table.order(), 24);
        let l = siegel_levi(&g).unwrap();
        assert_eq!(l.table.order(), 48);
        assert!(pointwise_stabilizer(&g, &[0, 1], true).is_err());
    }
}
