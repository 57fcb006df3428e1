//! Exact elements of cyclotomic fields Q(zeta_e).
//!
//! A value of order `e` is stored in the power basis `1, z, ..., z^{phi(e)-1}`
//! reduced modulo the `e`-th cyclotomic polynomial, as integer numerators over
//! one positive common denominator. Values of different orders are compared and
//! combined inside Q(zeta_lcm).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use rustc_hash::FxHashMap;

use crate::Rational;

struct OrderData {
    phi: usize,
    /// `red[i]` holds z^i reduced mod Phi_e, for 0 <= i < e.
    red: Vec<Vec<i64>>,
}

static ORDERS: Lazy<RwLock<FxHashMap<u32, Arc<OrderData>>>> =
    Lazy::new(|| RwLock::new(FxHashMap::default()));

fn poly_divexact(a: &[i64], b: &[i64]) -> Vec<i64> {
    // b monic
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        if c != 0 {
            for j in 0..=db {
                r[i + j] -= c * b[j];
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

fn cyclotomic_poly(e: u32, memo: &mut FxHashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&e) {
        return p.clone();
    }
    let mut num = vec![0i64; e as usize + 1];
    num[0] = -1;
    num[e as usize] = 1;
    let mut cur = num;
    for d in 1..e {
        if e % d == 0 {
            let pd = cyclotomic_poly(d, memo);
            cur = poly_divexact(&cur, &pd);
        }
    }
    memo.insert(e, cur.clone());
    cur
}

fn order_data(e: u32) -> Arc<OrderData> {
    if let Some(d) = ORDERS.read().get(&e) {
        return d.clone();
    }
    let mut memo = FxHashMap::default();
    let phi_poly = cyclotomic_poly(e, &mut memo);
    let phi = phi_poly.len() - 1;
    let mut red = Vec::with_capacity(e as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..e {
        red.push(cur.clone());
        // multiply by z, then reduce z^phi = -sum_{k<phi} c_k z^k
        let top = cur[phi - 1];
        for k in (1..phi).rev() {
            cur[k] = cur[k - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for k in 0..phi {
                cur[k] -= top * phi_poly[k];
            }
        }
    }
    let data = Arc::new(OrderData { phi, red });
    ORDERS.write().entry(e).or_insert(data).clone()
}

/// Euler's totient of `e`.
pub fn phi(e: u32) -> usize {
    order_data(e).phi
}

#[derive(Clone)]
pub struct Cyclo {
    e: u32,
    num: Vec<i128>,
    den: i128,
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo { e: 1, num: vec![0], den: 1 }
    }

    pub fn one() -> Self {
        Cyclo::from_int(1)
    }

    pub fn from_int(n: i128) -> Self {
        Cyclo { e: 1, num: vec![n], den: 1 }
    }

    pub fn from_rational(r: &Rational) -> Self {
        Cyclo::from_frac(*r.numer(), *r.denom())
    }

    pub fn from_frac(n: i128, d: i128) -> Self {
        assert!(d != 0, "zero denominator");
        let mut c = Cyclo { e: 1, num: vec![n], den: d };
        c.normalize();
        c
    }

    /// zeta_e^k.
    pub fn root(e: u32, k: i64) -> Self {
        assert!(e >= 1);
        let data = order_data(e);
        let k = k.rem_euclid(e as i64) as usize;
        let mut c = Cyclo {
            e,
            num: data.red[k].iter().map(|&x| x as i128).collect(),
            den: 1,
        };
        c.normalize();
        c
    }

    /// Builds sum_k coeffs[k] zeta_e^k from integer coefficients indexed by exponent.
    pub fn from_exponents(e: u32, coeffs: &[i128]) -> Self {
        assert_eq!(coeffs.len(), e as usize);
        let data = order_data(e);
        let mut num = vec![0i128; data.phi];
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &r) in data.red[k].iter().enumerate() {
                if r != 0 {
                    num[j] = num[j].checked_add(c.checked_mul(r as i128).expect("overflow")).expect("overflow");
                }
            }
        }
        let mut out = Cyclo { e, num, den: 1 };
        out.normalize();
        out
    }

    pub fn order(&self) -> u32 {
        self.e
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    /// Numerators in the reduced power basis of Q(zeta_e).
    pub fn numerators(&self) -> &[i128] {
        &self.num
    }

    fn normalize(&mut self) {
        if self.den < 0 {
            self.den = -self.den;
            for x in self.num.iter_mut() {
                *x = -*x;
            }
        }
        let mut g = self.den;
        for &x in &self.num {
            if g == 1 {
                break;
            }
            g = g.gcd(&x);
        }
        if g > 1 {
            self.den /= g;
            for x in self.num.iter_mut() {
                *x /= g;
            }
        }
        if self.num.iter().all(|&x| x == 0) {
            self.den = 1;
        }
        // drop to order 1 when the value is rational
        if self.e > 1 && self.num[1..].iter().all(|&x| x == 0) {
            self.e = 1;
            self.num.truncate(1);
        } else if self.e % 2 == 0 && self.e % 4 != 0 && self.e > 2 {
            // Q(zeta_{2m}) = Q(zeta_m) for odd m; keep the smaller order
            let m = self.e / 2;
            *self = self.embed(self.e).reorder_odd(m);
        }
    }

    // rewrite a value of order 2m (m odd) in order m using zeta_{2m} = -zeta_m^{(m+1)/2}
    fn reorder_odd(&self, m: u32) -> Cyclo {
        let data = order_data(m);
        let mut num = vec![0i128; data.phi];
        for (i, &a) in self.num.iter().enumerate() {
            if a == 0 {
                continue;
            }
            // zeta_{2m}^i = (-1)^i zeta_m^{i (m+1)/2}
            let k = (i as u64 * ((m as u64 + 1) / 2)) % m as u64;
            let sign: i128 = if i % 2 == 0 { 1 } else { -1 };
            for (j, &r) in data.red[k as usize].iter().enumerate() {
                if r != 0 {
                    num[j] += sign * a * r as i128;
                }
            }
        }
        let mut out = Cyclo { e: m, num, den: self.den };
        out.normalize_basic();
        out
    }

    fn normalize_basic(&mut self) {
        let mut g = self.den;
        for &x in &self.num {
            if g == 1 {
                break;
            }
            g = g.gcd(&x);
        }
        if g > 1 {
            self.den /= g;
            for x in self.num.iter_mut() {
                *x /= g;
            }
        }
        if self.e > 1 && self.num[1..].iter().all(|&x| x == 0) {
            self.e = 1;
            self.num.truncate(1);
        }
        if self.num.iter().all(|&x| x == 0) {
            self.den = 1;
        }
    }

    /// Re-expresses the value in Q(zeta_target); `self.e` must divide `target`.
    pub fn embed(&self, target: u32) -> Cyclo {
        if target == self.e {
            return self.clone();
        }
        assert!(target % self.e == 0, "order {} does not divide {}", self.e, target);
        let data = order_data(target);
        let step = (target / self.e) as usize;
        let mut num = vec![0i128; data.phi];
        for (i, &a) in self.num.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &r) in data.red[i * step].iter().enumerate() {
                if r != 0 {
                    num[j] = num[j].checked_add(a.checked_mul(r as i128).expect("overflow")).expect("overflow");
                }
            }
        }
        Cyclo { e: target, num, den: self.den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&x| x == 0)
    }

    pub fn is_rational(&self) -> bool {
        self.e == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.e == 1 {
            Some(Rational::new(self.num[0], self.den))
        } else {
            None
        }
    }

    /// Integer value if this is a rational integer.
    pub fn to_integer(&self) -> Option<i128> {
        if self.e == 1 && self.den == 1 {
            Some(self.num[0])
        } else {
            None
        }
    }

    pub fn conj(&self) -> Cyclo {
        if self.e <= 2 {
            return self.clone();
        }
        let data = order_data(self.e);
        let e = self.e as usize;
        let mut num = vec![0i128; data.phi];
        for (i, &a) in self.num.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &r) in data.red[(e - i) % e].iter().enumerate() {
                if r != 0 {
                    num[j] += a * r as i128;
                }
            }
        }
        Cyclo { e: self.e, num, den: self.den }
    }

    /// |x|^2 when it is rational.
    pub fn abs2_exact(&self) -> Option<Rational> {
        (self * &self.conj()).to_rational()
    }

    /// |x|^2 as an exact rational; panics when it is irrational.
    pub fn abs2(&self) -> Rational {
        (self * &self.conj()).to_rational().expect("x * conj(x) is rational")
    }

    pub fn scale(&self, r: &Rational) -> Cyclo {
        if r.numer() == &0 {
            return Cyclo::zero();
        }
        let mut out = Cyclo {
            e: self.e,
            num: self.num.iter().map(|&x| x.checked_mul(*r.numer()).expect("overflow")).collect(),
            den: self.den.checked_mul(*r.denom()).expect("overflow"),
        };
        out.normalize();
        out
    }

    pub fn scale_int(&self, k: i128) -> Cyclo {
        self.scale(&Rational::from_integer(k))
    }

    pub fn pow(&self, k: u32) -> Cyclo {
        let mut r = Cyclo::one();
        let mut b = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = &r * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        r
    }

    /// Floating point projection with zeta_e = exp(2 pi i / e); reporting only.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, &a) in self.num.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * i as f64 / self.e as f64;
            re += a as f64 * t.cos();
            im += a as f64 * t.sin();
        }
        (re / self.den as f64, im / self.den as f64)
    }

    /// Numerator vector in Q(zeta_target) (denominator folded in by scaling by `den_lcm`).
    pub fn key_in(&self, target: u32) -> (Vec<i128>, i128) {
        let v = self.embed(target);
        (v.num, v.den)
    }

    fn add_same(a: &Cyclo, b: &Cyclo, sign: i128) -> Cyclo {
        debug_assert_eq!(a.e, b.e);
        let l = a.den.lcm(&b.den);
        let fa = l / a.den;
        let fb = l / b.den;
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(&x, &y)| {
                x.checked_mul(fa)
                    .and_then(|u| y.checked_mul(fb * sign).and_then(|v| u.checked_add(v)))
                    .expect("cyclotomic overflow")
            })
            .collect();
        let mut out = Cyclo { e: a.e, num, den: l };
        out.normalize();
        out
    }

    fn combine(a: &Cyclo, b: &Cyclo, sign: i128) -> Cyclo {
        if a.e == b.e {
            return Cyclo::add_same(a, b, sign);
        }
        let l = a.e.lcm(&b.e);
        Cyclo::add_same(&a.embed(l), &b.embed(l), sign)
    }

    fn mul_same(a: &Cyclo, b: &Cyclo) -> Cyclo {
        let e = a.e;
        let data = order_data(e);
        let eu = e as usize;
        let mut raw = vec![0i128; eu];
        for (i, &x) in a.num.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.num.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let k = (i + j) % eu;
                raw[k] = raw[k]
                    .checked_add(x.checked_mul(y).expect("cyclotomic overflow"))
                    .expect("cyclotomic overflow");
            }
        }
        let mut num = raw[..data.phi].to_vec();
        for k in data.phi..eu {
            let c = raw[k];
            if c == 0 {
                continue;
            }
            for (j, &r) in data.red[k].iter().enumerate() {
                if r != 0 {
                    num[j] = num[j]
                        .checked_add(c.checked_mul(r as i128).expect("cyclotomic overflow"))
                        .expect("cyclotomic overflow");
                }
            }
        }
        let mut out = Cyclo {
            e,
            num,
            den: a.den.checked_mul(b.den).expect("cyclotomic overflow"),
        };
        out.normalize();
        out
    }
}

impl Default for Cyclo {
    fn default() -> Self {
        Cyclo::zero()
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.e == other.e {
            return self.den == other.den && self.num == other.num;
        }
        let l = self.e.lcm(&other.e);
        let a = self.embed(l);
        let b = other.embed(l);
        a.den == b.den && a.num == b.num
    }
}
impl Eq for Cyclo {}

impl<'a> Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        Cyclo::combine(self, rhs, 1)
    }
}

impl<'a> Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        if rhs.is_zero() {
            return self.clone();
        }
        Cyclo::combine(self, rhs, -1)
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        if self.is_zero() || rhs.is_zero() {
            return Cyclo::zero();
        }
        if self.e == 1 {
            return rhs.scale(&Rational::new(self.num[0], self.den));
        }
        if rhs.e == 1 {
            return self.scale(&Rational::new(rhs.num[0], rhs.den));
        }
        if self.e == rhs.e {
            return Cyclo::mul_same(self, rhs);
        }
        let l = self.e.lcm(&rhs.e);
        Cyclo::mul_same(&self.embed(l), &rhs.embed(l))
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { e: self.e, num: self.num.iter().map(|&x| -x).collect(), den: self.den }
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: Cyclo) -> Cyclo {
        &self + &rhs
    }
}
impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: Cyclo) -> Cyclo {
        &self - &rhs
    }
}
impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: Cyclo) -> Cyclo {
        &self * &rhs
    }
}
impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl std::iter::Sum for Cyclo {
    fn sum<I: Iterator<Item = Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |a, b| &a + &b)
    }
}

impl From<i128> for Cyclo {
    fn from(n: i128) -> Self {
        Cyclo::from_int(n)
    }
}

/// Total order used only for deterministic sorting: by (order, den, numerators).
pub fn canonical_cmp(a: &Cyclo, b: &Cyclo, e: u32) -> Ordering {
    let (na, da) = a.key_in(e);
    let (nb, db) = b.key_in(e);
    na.cmp(&nb).then(da.cmp(&db))
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            return if self.den == 1 {
                write!(f, "{}", self.num[0])
            } else {
                write!(f, "{}/{}", self.num[0], self.den)
            };
        }
        let mut terms = Vec::new();
        for (i, &a) in self.num.iter().enumerate() {
            if a == 0 {
                continue;
            }
            terms.push(match i {
                0 => format!("{}", a),
                _ => format!("{}*z{}^{}", a, self.e, i),
            });
        }
        let body = terms.join(" + ");
        if self.den == 1 {
            write!(f, "{}", body)
        } else {
            write!(f, "({})/{}", body, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_values() {
        assert_eq!(phi(1), 1);
        assert_eq!(phi(12), 4);
        assert_eq!(phi(360), 96);
    }

    #[test]
    fn root_identities() {
        for e in [1u32, 2, 3, 4, 5, 6, 8, 9, 12, 15, 24] {
            assert_eq!(Cyclo::root(e, e as i64), Cyclo::one());
            let s: Cyclo = (0..e as i64).map(|k| Cyclo::root(e, k)).sum();
            if e == 1 {
                assert_eq!(s, Cyclo::one());
            } else {
                assert!(s.is_zero(), "sum of {e}-th roots");
            }
            assert_eq!(Cyclo::root(2 * e, 2), Cyclo::root(e, 1));
            assert_eq!(Cyclo::root(e, 1).abs2(), Rational::from_integer(1));
        }
    }

    #[test]
    fn gauss_sum_mod3() {
        // psi(0) + 2 psi(1) = 1 + 2 z3, |.|^2 = 3
        let g = &Cyclo::one() + &Cyclo::root(3, 1).scale_int(2);
        assert_eq!(g.abs2(), Rational::from_integer(3));
        assert_eq!(&g * &g, Cyclo::from_int(-3));
    }

    #[test]
    fn mixed_orders() {
        let i = Cyclo::root(4, 1);
        let w = Cyclo::root(3, 1);
        let p = &i * &w;
        assert_eq!(p, Cyclo::root(12, 7));
        assert_eq!(&p * &p.conj(), Cyclo::one());
    }
}
