//! Finite fields GF(p^f) with elements packed as base-p digit integers.
//!
//! Element `x` encodes the polynomial `sum_i c_i t^i` with `x = sum_i c_i p^i`.
//! The modulus is the lexicographically smallest irreducible monic polynomial
//! of degree `f`; prime fields use the convention modulus `t`.

use std::fmt;
use std::sync::Arc;

use crate::cyclo::Cyclo;

pub const MAX_ORDER: u64 = 1 << 20;
const TABLE_LIMIT: u32 = 256;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("field order {p}^{f} exceeds 2^20")]
    TooLarge { p: u32, f: u32 },
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub struct Field {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_tab: Vec<u8>,
    mul_tab: Vec<u8>,
    neg_tab: Vec<u32>,
    inv_tab: Vec<u32>,
    trace_tab: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.f)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f
    }
}
impl Eq for Field {}

// ---- polynomial helpers over Z/p, coefficient vectors low degree first ----

fn poly_trim(a: &mut Vec<u32>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn poly_is_zero(a: &[u32]) -> bool {
    a.iter().all(|&c| c == 0)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm && !poly_is_zero(&r) {
        let dr = r.len() - 1;
        let c = r[dr] as u64 * lead_inv as u64 % p as u64;
        for i in 0..=dm {
            let sub = c * m[i] as u64 % p as u64;
            let idx = dr - dm + i;
            r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    poly_rem(&out, m, p)
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !poly_is_zero(&b) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let f = m.len() - 1;
    if f == 1 {
        return true;
    }
    // x^{p^i} mod m for i = 1..f-1; gcd(x^{p^i} - x, m) must be 1
    let mut xp = poly_rem(&[0, 1], m, p);
    for _ in 1..f {
        let mut t = vec![1u32];
        let mut base = xp.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                t = poly_mulmod(&t, &base, m, p);
            }
            base = poly_mulmod(&base, &base, m, p);
            e >>= 1;
        }
        xp = t;
        let mut d = xp.clone();
        d.resize(d.len().max(2), 0);
        d[1] = (d[1] + p - 1) % p;
        let g = poly_gcd(m, &d, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn lowest_irreducible(p: u32, f: u32) -> Vec<u32> {
    if f == 1 {
        return vec![0, 1];
    }
    // numeric order of idx = lexicographic order of (c_{f-1}, ..., c_0)
    let count = (p as u64).pow(f);
    for idx in 0..count {
        let mut poly: Vec<u32> = (0..f)
            .map(|j| ((idx / (p as u64).pow(j)) % p as u64) as u32)
            .collect();
        poly.push(1);
        if poly[0] == 0 {
            continue;
        }
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

fn factor_small(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    pub fn new(p: u32, f: u32) -> Result<Arc<Field>, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if f == 0 {
            return Err(FieldError::ZeroExponent);
        }
        if (p as u64).checked_pow(f).map_or(true, |q| q > MAX_ORDER) {
            return Err(FieldError::TooLarge { p, f });
        }
        let q = p.pow(f);
        let modulus = lowest_irreducible(p, f);

        let to_poly = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(f as usize);
            let mut x = x;
            for _ in 0..f {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let from_poly = |v: &[u32]| -> u32 {
            let mut x = 0u32;
            for i in (0..f as usize).rev() {
                x = x * p + v.get(i).copied().unwrap_or(0);
            }
            x
        };

        // primitive element: smallest generator of the multiplicative group
        let order = (q - 1) as u64;
        let primes = factor_small(order);
        let poly_pow = |x: u32, e: u64| -> Vec<u32> {
            let mut r = vec![1u32];
            let mut b = to_poly(x);
            let mut e = e;
            while e > 0 {
                if e & 1 == 1 {
                    r = poly_mulmod(&r, &b, &modulus, p);
                }
                b = poly_mulmod(&b, &b, &modulus, p);
                e >>= 1;
            }
            r
        };
        let is_one = |v: &[u32]| from_poly(v) == 1;
        let gen = if q == 2 {
            1
        } else {
            (2..q)
                .find(|&g| primes.iter().all(|&r| !is_one(&poly_pow(g, order / r))))
                .expect("multiplicative group is cyclic")
        };
        let mut exp = vec![0u32; q as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![1u32];
        let gpoly = to_poly(gen);
        for k in 0..(q - 1) {
            let x = from_poly(&cur);
            exp[k as usize] = x;
            log[x as usize] = k;
            cur = poly_mulmod(&cur, &gpoly, &modulus, p);
        }

        let mut fld = Field {
            p,
            f,
            q,
            modulus,
            exp,
            log,
            add_tab: Vec::new(),
            mul_tab: Vec::new(),
            neg_tab: Vec::new(),
            inv_tab: Vec::new(),
            trace_tab: Vec::new(),
        };
        fld.neg_tab = (0..q).map(|x| fld.neg_slow(x)).collect();
        fld.inv_tab = (0..q).map(|x| if x == 0 { 0 } else { fld.mul_slow_inv(x) }).collect();
        if q <= TABLE_LIMIT {
            let n = q as usize;
            let mut add = vec![0u8; n * n];
            let mut mul = vec![0u8; n * n];
            for a in 0..q {
                for b in 0..q {
                    add[a as usize * n + b as usize] = fld.add_slow(a, b) as u8;
                    mul[a as usize * n + b as usize] = fld.mul_slow(a, b) as u8;
                }
            }
            fld.add_tab = add;
            fld.mul_tab = mul;
        }
        fld.trace_tab = (0..q).map(|x| fld.trace_slow(x)).collect();
        Ok(Arc::new(fld))
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn f(&self) -> u32 {
        self.f
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn is_prime_field(&self) -> bool {
        self.f == 1
    }

    /// The generator of the multiplicative group used for log/exp tables.
    pub fn primitive(&self) -> u32 {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        if self.f == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.f {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn neg_slow(&self, a: u32) -> u32 {
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.f {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.f == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let k = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[k as usize]
    }

    fn mul_slow_inv(&self, a: u32) -> u32 {
        if self.f == 1 {
            return inv_mod(a, self.p);
        }
        let k = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
        self.exp[k as usize]
    }

    fn trace_slow(&self, x: u32) -> u32 {
        let mut acc = 0u32;
        let mut y = x;
        for _ in 0..self.f {
            acc = self.add_slow(acc, y);
            y = self.pow(y, self.p as u64);
        }
        debug_assert!(acc < self.p, "trace must land in the prime field");
        acc
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if !self.add_tab.is_empty() {
            self.add_tab[(a * self.q + b) as usize] as u32
        } else {
            self.add_slow(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg_tab[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if !self.mul_tab.is_empty() {
            self.mul_tab[(a * self.q + b) as usize] as u32
        } else {
            self.mul_slow(a, b)
        }
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        self.inv_tab[a as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if self.f == 1 {
            return pow_mod(a as u64, e, self.p as u64) as u32;
        }
        let k = (self.log[a as usize] as u64 * (e % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.exp[k as usize]
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    /// Tr_{F_q/F_p}(x) as a residue in 0..p.
    #[inline]
    pub fn trace(&self, x: u32) -> u32 {
        self.trace_tab[x as usize]
    }

    /// Quadratic character: 1 on nonzero squares, -1 on nonsquares, 0 at 0.
    pub fn legendre(&self, x: u32) -> i32 {
        if x == 0 {
            return 0;
        }
        if self.p == 2 {
            return 1;
        }
        if self.log[x as usize] % 2 == 0 || self.q == 2 {
            1
        } else {
            -1
        }
    }

    pub fn is_square(&self, x: u32) -> bool {
        self.legendre(x) >= 0
    }

    /// Smallest nonsquare (odd characteristic only).
    pub fn nonsquare(&self) -> Option<u32> {
        (1..self.q).find(|&x| self.legendre(x) == -1)
    }

    /// psi(x) = eps^{Tr x} with eps = exp(2 pi i / p).
    pub fn additive_character(&self, x: u32) -> Cyclo {
        Cyclo::root(self.p, self.trace(x) as i64)
    }

    pub fn discrete_log(&self, x: u32) -> Option<u32> {
        if x == 0 {
            None
        } else {
            Some(self.log[x as usize])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_modulus_is_x2_x_1() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn prime_field_modulus_convention() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.q(), 3);
    }

    #[test]
    fn gf9_frobenius_fixed_field() {
        let f = Field::new(3, 2).unwrap();
        for x in f.elements() {
            assert_eq!(f.pow(x, 9), x);
        }
    }

    #[test]
    fn traces() {
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.trace(0), 0);
        assert_eq!(f9.trace(1), 2);
        let f4 = Field::new(2, 2).unwrap();
        let g = f4.primitive();
        assert_eq!(f4.trace(g), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Field::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(Field::new(2, 0).unwrap_err(), FieldError::ZeroExponent);
        assert!(matches!(Field::new(2, 21), Err(FieldError::TooLarge { .. })));
    }

    #[test]
    fn inverse_law_whole_field() {
        for (p, f) in [(2, 1), (2, 3), (3, 2), (5, 1), (7, 2), (2, 10), (31, 2)] {
            let fld = Field::new(p, f).unwrap();
            let q = fld.q() as u64;
            for x in 1..fld.q() {
                assert_eq!(fld.mul(x, fld.pow(x, q - 2)), 1);
                assert_eq!(fld.mul(x, fld.inv(x)), 1);
            }
        }
    }

    #[test]
    fn additive_character_sums() {
        for (p, f) in [(3, 1), (2, 2), (5, 1), (3, 2)] {
            let fld = Field::new(p, f).unwrap();
            let s = fld
                .elements()
                .map(|x| fld.additive_character(x))
                .fold(Cyclo::zero(), |a, b| &a + &b);
            assert!(s.is_zero());
        }
        let f3 = Field::new(3, 1).unwrap();
        let g = f3
            .elements()
            .map(|x| f3.additive_character(f3.mul(x, x)))
            .fold(Cyclo::zero(), |a, b| &a + &b);
        assert_eq!(g.abs2(), crate::Rational::from_integer(3));
    }
}
