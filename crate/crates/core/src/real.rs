//! Certified real arithmetic: every quantity is a rational interval that provably contains it.
//!
//! Precision is a bit count; results are rounded outward to multiples of 2^-prec.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclo::Cyclo;
use crate::report::{BoundReport, Interval, Verdict};

/// Working precisions tried in order by [`certify`].
pub const PRECISIONS: [u64; 5] = [64, 128, 256, 512, 1024];

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parse a plain decimal such as "0.0011" into an exact rational.
pub fn decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, s) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let (ip, fp) = s.split_once('.').unwrap_or((s, ""));
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{}{}", if ip.is_empty() { "0" } else { ip }, fp).parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), fp.len());
    let r = BigRational::new(digits, den);
    Some(if neg { -r } else { r })
}

fn scale(prec: u64) -> BigInt {
    BigInt::one() << prec
}

pub fn round_down(x: &BigRational, prec: u64) -> BigRational {
    let s = scale(prec);
    BigRational::new((x * BigRational::from_integer(s.clone())).floor().to_integer(), s)
}

pub fn round_up(x: &BigRational, prec: u64) -> BigRational {
    let s = scale(prec);
    BigRational::new((x * BigRational::from_integer(s.clone())).ceil().to_integer(), s)
}

fn outward(lo: BigRational, hi: BigRational, prec: u64) -> Interval {
    Interval { lo: round_down(&lo, prec), hi: round_up(&hi, prec) }
}

pub fn add(a: &Interval, b: &Interval) -> Interval {
    Interval { lo: &a.lo + &b.lo, hi: &a.hi + &b.hi }
}

pub fn sub(a: &Interval, b: &Interval) -> Interval {
    Interval { lo: &a.lo - &b.hi, hi: &a.hi - &b.lo }
}

pub fn neg(a: &Interval) -> Interval {
    Interval { lo: -a.hi.clone(), hi: -a.lo.clone() }
}

pub fn mul(a: &Interval, b: &Interval) -> Interval {
    let p = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
    let lo = p.iter().min().unwrap().clone();
    let hi = p.iter().max().unwrap().clone();
    Interval { lo, hi }
}

pub fn scale_by(a: &Interval, c: &BigRational) -> Interval {
    mul(a, &Interval::exact(c.clone()))
}

/// Quotient; the divisor must not contain zero.
pub fn div(a: &Interval, b: &Interval) -> Interval {
    assert!(b.lo.is_positive() || b.hi.is_negative(), "division by an interval containing 0");
    let inv = Interval { lo: b.hi.recip(), hi: b.lo.recip() };
    mul(a, &inv)
}

pub fn round(a: &Interval, prec: u64) -> Interval {
    outward(a.lo.clone(), a.hi.clone(), prec)
}

fn sqrt_down(x: &BigRational, prec: u64) -> BigRational {
    if !x.is_positive() {
        return BigRational::zero();
    }
    let s4 = BigRational::from_integer(scale(2 * prec));
    let n = (x * s4).floor().to_integer();
    BigRational::new(n.sqrt(), scale(prec))
}

fn sqrt_up(x: &BigRational, prec: u64) -> BigRational {
    if !x.is_positive() {
        return BigRational::zero();
    }
    let s4 = BigRational::from_integer(scale(2 * prec));
    let n = (x * s4).ceil().to_integer();
    let r = n.sqrt();
    let r = if &r * &r == n { r } else { r + 1 };
    BigRational::new(r, scale(prec))
}

/// Square root of a nonnegative interval (negative parts are clamped to 0).
pub fn sqrt(a: &Interval, prec: u64) -> Interval {
    Interval { lo: sqrt_down(&a.lo, prec), hi: sqrt_up(&a.hi, prec) }
}

/// 2 atanh(z) for 0 <= z <= 1/2, enclosed.
fn two_atanh(z: &BigRational, prec: u64) -> Interval {
    let wp = prec + 16;
    let z2 = z * z;
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    let mut p_lo = z.clone();
    let mut p_hi = z.clone();
    let eps = BigRational::new(BigInt::one(), scale(wp));
    let mut k: i64 = 1;
    loop {
        let d = int(k);
        lo += round_down(&(&p_lo / &d), wp);
        hi += round_up(&(&p_hi / &d), wp);
        // remaining terms sum to at most p z^2 / ((k+2)(1-z^2))
        p_lo = round_down(&(&p_lo * &z2), wp);
        p_hi = round_up(&(&p_hi * &z2), wp);
        let tail = &p_hi / (int(k + 2) * (BigRational::one() - &z2));
        if tail < eps || p_hi.is_zero() {
            hi += tail;
            break;
        }
        k += 2;
    }
    outward(lo * int(2), hi * int(2), prec)
}

/// atan(1/k) for an integer k >= 2, by its alternating series.
fn atan_inv(k: i64, prec: u64) -> Interval {
    let wp = prec + 16;
    let eps = BigRational::new(BigInt::one(), scale(wp));
    let k2 = int(k * k);
    let mut p = rat(1, k);
    let mut sum = BigRational::zero();
    let mut n: i64 = 0;
    loop {
        let term = &p / int(2 * n + 1);
        if term < eps {
            // alternating with decreasing terms: the tail lies between 0 and the next term
            let (lo, hi) = if n % 2 == 0 { (sum.clone(), &sum + &term) } else { (&sum - &term, sum.clone()) };
            return outward(lo, hi, prec);
        }
        if n % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        p /= &k2;
        n += 1;
    }
}

static PI: once_cell::sync::Lazy<parking_lot::Mutex<rustc_hash::FxHashMap<u64, Interval>>> =
    once_cell::sync::Lazy::new(Default::default);

/// Enclosure of pi (Machin), memoized per precision.
pub fn pi(prec: u64) -> Interval {
    if let Some(p) = PI.lock().get(&prec) {
        return p.clone();
    }
    let p = pi_uncached(prec);
    PI.lock().insert(prec, p.clone());
    p
}

fn pi_uncached(prec: u64) -> Interval {
    let a = scale_by(&atan_inv(5, prec + 8), &int(16));
    let b = scale_by(&atan_inv(239, prec + 8), &int(4));
    round(&sub(&a, &b), prec)
}

/// cos of an exact rational with |x| <= 8.
fn cos_point(x: &BigRational, prec: u64) -> Interval {
    let wp = prec + 16;
    let eps = BigRational::new(BigInt::one(), scale(wp));
    let x2 = round_down(&(x * x), wp + 8);
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    let mut n: i64 = 0;
    loop {
        // terms decrease in size once 2n exceeds |x|
        if n > 6 && term.abs() < eps {
            // x^2 was rounded by at most eps/256; cos moves by at most half that
            let t = term.abs() + &eps;
            return outward(&sum - &t, &sum + &t, prec);
        }
        sum += &term;
        term = -(term * &x2) / int((2 * n + 1) * (2 * n + 2));
        n += 1;
    }
}

/// cos over an interval of width well below 1, using the 1-Lipschitz bound around the midpoint.
pub fn cos(a: &Interval, prec: u64) -> Interval {
    let wp = prec + 8;
    let m = round_down(&((&a.lo + &a.hi) / int(2)), wp);
    let r = (&a.hi - &m).max(&m - &a.lo);
    let c = cos_point(&m, wp);
    let lo = (&c.lo - &r).max(int(-1));
    let hi = (&c.hi + &r).min(int(1));
    outward(lo, hi, prec)
}

/// Enclosure of the real part of a cyclotomic number, with zeta_e = exp(2 pi i / e).
pub fn cyclo_re(z: &Cyclo, prec: u64) -> Interval {
    if let Some(r) = z.to_rational() {
        return Interval::from_rational(&r);
    }
    let wp = prec + 16 + 2 * z.numerators().iter().map(|c| (c.unsigned_abs() as f64).log2().ceil() as u64 + 1).max().unwrap_or(0);
    let two_pi = scale_by(&pi(wp), &int(2));
    let e = z.order() as i64;
    let mut acc = Interval::from_int(0);
    for (i, &c) in z.numerators().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let ang = scale_by(&two_pi, &rat(i as i64 % e, e));
        let term = scale_by(&cos(&ang, wp), &BigRational::from_integer(BigInt::from(c)));
        acc = add(&acc, &term);
    }
    round(&scale_by(&acc, &BigRational::new(BigInt::one(), BigInt::from(z.denominator()))), prec)
}

/// |z|^2, exact when rational.
pub fn abs2(z: &Cyclo, prec: u64) -> Interval {
    let w = z * &z.conj();
    let mut iv = cyclo_re(&w, prec);
    if iv.lo.is_negative() {
        iv.lo = BigRational::zero();
    }
    iv
}

/// a^k for a nonnegative interval.
pub fn powi(a: &Interval, k: u32) -> Interval {
    Interval { lo: num_traits::pow(a.lo.clone(), k as usize), hi: num_traits::pow(a.hi.clone(), k as usize) }
}

/// Enclosure of ln 2.
pub fn ln2(prec: u64) -> Interval {
    two_atanh(&rat(1, 3), prec)
}

/// Enclosure of ln x for rational x > 0.
pub fn ln(x: &BigRational, prec: u64) -> Interval {
    assert!(x.is_positive(), "ln of nonpositive number");
    if x.is_one() {
        return Interval::exact(BigRational::zero());
    }
    // x = 2^k y with 2/3 <= y < 4/3, so |(y-1)/(y+1)| <= 1/7
    let mut k: i64 = (x.numer().bits() as i64) - (x.denom().bits() as i64);
    let two = int(2);
    let pow2 = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(BigInt::one() << e as u64)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-e) as u64)
        }
    };
    let mut y = x / pow2(k);
    while y >= rat(4, 3) {
        y /= &two;
        k += 1;
    }
    while y < rat(2, 3) {
        y *= &two;
        k -= 1;
    }
    let z = (&y - BigRational::one()) / (&y + BigRational::one());
    let wp = prec + 8 + (64 - k.unsigned_abs().leading_zeros() as u64);
    let tail = if z.is_negative() { neg(&two_atanh(&-z, wp)) } else { two_atanh(&z, wp) };
    let l2 = ln2(wp);
    round(&add(&scale_by(&l2, &int(k)), &tail), prec)
}

/// exp(x) for rational x, enclosed.
fn exp_point(x: &BigRational, prec: u64) -> Interval {
    if x.is_zero() {
        return Interval::exact(BigRational::one());
    }
    if x.is_negative() {
        let e = exp_point(&-x, prec + 4);
        let one = Interval::exact(BigRational::one());
        return round(&div(&one, &e), prec);
    }
    // halve until x / 2^s <= 1/2, then square back up
    let mut s: u64 = 0;
    let mut r = x.clone();
    while r > rat(1, 2) {
        r /= int(2);
        s += 1;
    }
    // squaring s times magnifies relative error by about 2^s; integer part of x costs bits too
    let mag = x.to_integer().bits();
    let wp = prec + s + 2 * mag + 24;
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    let mut t_lo = BigRational::one();
    let mut t_hi = BigRational::one();
    let eps = BigRational::new(BigInt::one(), scale(wp));
    let mut k: i64 = 0;
    loop {
        lo += &t_lo;
        hi += &t_hi;
        k += 1;
        t_lo = round_down(&(&t_lo * &r / int(k)), wp);
        t_hi = round_up(&(&t_hi * &r / int(k)), wp);
        // tail <= term / (1 - r/(k+1)) <= 2 term since r <= 1/2
        if t_hi <= eps {
            hi += &t_hi * int(2);
            break;
        }
    }
    let mut iv = Interval { lo, hi };
    for _ in 0..s {
        iv = Interval { lo: round_down(&(&iv.lo * &iv.lo), wp), hi: round_up(&(&iv.hi * &iv.hi), wp) };
    }
    round(&iv, prec)
}

/// exp over an interval (monotone).
pub fn exp(a: &Interval, prec: u64) -> Interval {
    let lo = exp_point(&a.lo, prec).lo;
    let hi = if a.is_exact() { exp_point(&a.lo, prec).hi } else { exp_point(&a.hi, prec).hi };
    Interval { lo, hi }
}

/// base^e for rational base > 0 and an interval exponent.
pub fn pow(base: &BigRational, e: &Interval, prec: u64) -> Interval {
    if e.is_exact() && e.lo.is_integer() {
        let k = e.lo.to_integer();
        if k.bits() < 32 {
            let k: i64 = k.try_into().unwrap();
            let b = if k >= 0 { base.clone() } else { base.recip() };
            return Interval::exact(num_traits::pow(b, k.unsigned_abs() as usize));
        }
    }
    let wp = prec + 16 + e.lo.abs().max(e.hi.abs()).ceil().to_integer().bits() * 2;
    let l = ln(base, wp);
    exp(&round(&mul(e, &l), wp), prec)
}

/// q^x for integer q >= 2.
pub fn qpow(q: u32, e: &Interval, prec: u64) -> Interval {
    pow(&int(q as i64), e, prec)
}

/// log_q x enclosed, for x > 0 rational.
pub fn log_q(q: u32, x: &BigRational, prec: u64) -> Interval {
    let wp = prec + 16;
    round(&div(&ln(x, wp), &ln(&int(q as i64), wp)), prec)
}

/// Evaluate a report at increasing precision until its verdict is a pass or a proven fail.
///
/// A fail is proven when the two enclosures separate in the wrong direction; if they still
/// overlap at the highest precision, the fail stands with a note saying so.
pub fn certify(build: impl Fn(u64) -> BoundReport) -> BoundReport {
    let mut last = None;
    for &p in &PRECISIONS {
        let r = build(p);
        if r.verdict != Verdict::Fail || r.proven_fail() {
            return r;
        }
        last = Some(r);
    }
    let r = last.unwrap();
    let note = match &r.note {
        Some(n) => format!("{n}; undecided at {} bits", PRECISIONS[PRECISIONS.len() - 1]),
        None => format!("undecided at {} bits", PRECISIONS[PRECISIONS.len() - 1]),
    };
    r.with_note(note)
}

/// Exact integer power as a rational.
pub fn ipow(q: u32, e: u32) -> BigRational {
    BigRational::from_integer(num_traits::pow(BigInt::from(q), e as usize))
}

/// floor(log2) helper for sizing precision from magnitudes.
pub fn bits_of(x: &BigRational) -> u64 {
    x.abs().ceil().to_integer().bits()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::to_f64;

    fn close(iv: &Interval, want: f64) {
        let (lo, hi) = (to_f64(&iv.lo), to_f64(&iv.hi));
        assert!(lo <= want + 1e-12 && want - 1e-12 <= hi, "{lo} {want} {hi}");
        assert!(hi - lo < 1e-12 * want.abs().max(1.0), "too wide: {lo} {hi}");
    }

    #[test]
    fn elementary_functions() {
        close(&ln2(64), std::f64::consts::LN_2);
        close(&ln(&int(3), 64), 3f64.ln());
        close(&ln(&rat(1, 10), 64), 0.1f64.ln());
        close(&exp(&Interval::exact(int(1)), 64), std::f64::consts::E);
        close(&exp(&Interval::exact(rat(-7, 3)), 64), (-7f64 / 3.0).exp());
        close(&sqrt(&Interval::exact(int(2)), 64), 2f64.sqrt());
        close(&qpow(3, &Interval::exact(rat(1, 4)), 64), 3f64.powf(0.25));
        close(&log_q(3, &int(10), 64), 10f64.ln() / 3f64.ln());
    }

    #[test]
    fn big_exponent_stays_tight() {
        let e = sqrt(&Interval::exact(int(705 * 9)), 128);
        let v = qpow(3, &e, 64);
        let want = (6345f64.sqrt() * 3f64.ln()).exp();
        let rel = (to_f64(&v.hi) - to_f64(&v.lo)) / want;
        assert!(rel < 1e-15);
        assert!(to_f64(&v.lo) <= want * (1.0 + 1e-12) && want <= to_f64(&v.hi) * (1.0 + 1e-12));
    }

    #[test]
    fn trig() {
        let p = pi(200);
        assert!(p.lo < rat(314159265358979324, 100000000000000000) && p.hi > rat(314159265358979323, 100000000000000000));
        assert!(&p.hi - &p.lo < rat(1, 1 << 60));
        // zeta_5 + zeta_5^{-1} = (sqrt 5 - 1) / 2
        let z = &Cyclo::root(5, 1) + &Cyclo::root(5, 4);
        let v = cyclo_re(&z, 128);
        let s5 = sqrt(&Interval::from_int(5), 140);
        let expect = scale_by(&sub(&s5, &Interval::from_int(1)), &rat(1, 2));
        assert!(v.lo <= expect.hi && expect.lo <= v.hi);
        assert!(&v.hi - &v.lo < rat(1, 1 << 60));
        assert_eq!(abs2(&Cyclo::root(7, 3), 64), Interval::from_int(1));
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal("0.0011"), Some(rat(11, 10000)));
        assert_eq!(decimal("-2.5"), Some(rat(-5, 2)));
        assert_eq!(decimal("7"), Some(int(7)));
        assert_eq!(decimal("x"), None);
    }
}
