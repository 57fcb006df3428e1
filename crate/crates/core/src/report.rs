//! Pass/fail records binding an inequality to computed quantities.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "n/a",
        })
    }
}

/// Closed rational interval [lo, hi] containing a real number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn exact(x: BigRational) -> Interval {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_int(n: i128) -> Interval {
        Interval::exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: &Rational) -> Interval {
        Interval::exact(big(r))
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        (to_f64(&self.lo) + to_f64(&self.hi)) / 2.0
    }
}

impl Interval {
    /// Exact endpoints plus a display string.
    pub fn to_json(&self) -> serde_json::Value {
        if self.is_exact() {
            serde_json::json!({ "exact": rational_json(&self.lo), "text": self.to_string() })
        } else {
            serde_json::json!({ "lo": rational_json(&self.lo), "hi": rational_json(&self.hi), "text": self.to_string() })
        }
    }
}

/// {"num", "den", "decimal"} with a 12 significant digit decimal.
pub fn rational_json(x: &BigRational) -> serde_json::Value {
    serde_json::json!({ "num": x.numer().to_string(), "den": x.denom().to_string(), "decimal": sig_digits(x, 12) })
}

/// Scientific notation with `digits` significant digits, rounded half up, computed exactly.
pub fn sig_digits(x: &BigRational, digits: u32) -> String {
    use num_traits::Signed;
    if x.is_zero() {
        return "0".to_string();
    }
    let a = x.abs();
    let ten = BigInt::from(10);
    // first guess at floor(log10 a) from decimal lengths, then correct
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            BigRational::from_integer(num_traits::pow(ten.clone(), (-k) as usize)).recip()
        }
    };
    while a < pow10(e) {
        e -= 1;
    }
    while a >= pow10(e + 1) {
        e += 1;
    }
    let scaled = &a * pow10(digits as i64 - 1 - e);
    let mut m = (scaled + BigRational::new(BigInt::from(1), BigInt::from(2))).floor().to_integer();
    if m >= num_traits::pow(ten.clone(), digits as usize) {
        m /= &ten;
        e += 1;
    }
    let s = m.to_string();
    let sign = if x.is_negative() { "-" } else { "" };
    format!("{sign}{}.{}e{e}", &s[..1], &s[1..])
}

pub fn big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

fn show(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else if r.numer().bits() + r.denom().bits() <= 96 {
        format!("{}/{}", r.numer(), r.denom())
    } else {
        format!("{:.9e}", to_f64(r))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            f.write_str(&show(&self.lo))
        } else {
            write!(f, "[{}, {}]", show(&self.lo), show(&self.hi))
        }
    }
}

/// One instance of an inequality `lhs <= rhs` (or `lhs >= rhs` when `direction` is `Ge`).
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub id: String,
    pub params: String,
    pub lhs: Interval,
    pub rhs: Interval,
    pub direction: Direction,
    pub verdict: Verdict,
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "==")]
    Eq,
}

impl Direction {
    fn symbol(self) -> &'static str {
        match self {
            Direction::Le => "<=",
            Direction::Lt => "<",
            Direction::Ge => ">=",
            Direction::Eq => "==",
        }
    }
}

impl BoundReport {
    /// Decide `lhs dir rhs`. A pass is only declared when it holds for every point of both
    /// intervals; anything else is a fail.
    pub fn compare(id: impl Into<String>, params: impl Into<String>, lhs: Interval, dir: Direction, rhs: Interval) -> Self {
        let ok = match dir {
            Direction::Le => lhs.hi <= rhs.lo,
            Direction::Lt => lhs.hi < rhs.lo,
            Direction::Ge => lhs.lo >= rhs.hi,
            Direction::Eq => lhs.is_exact() && rhs.is_exact() && lhs.lo == rhs.lo,
        };
        BoundReport {
            id: id.into(),
            params: params.into(),
            lhs,
            rhs,
            direction: dir,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            note: None,
        }
    }

    pub fn exact_le(id: impl Into<String>, params: impl Into<String>, lhs: Rational, rhs: Rational) -> Self {
        Self::compare(id, params, Interval::from_rational(&lhs), Direction::Le, Interval::from_rational(&rhs))
    }

    pub fn not_applicable(id: impl Into<String>, params: impl Into<String>, why: impl Into<String>) -> Self {
        BoundReport {
            id: id.into(),
            params: params.into(),
            lhs: Interval::from_int(0),
            rhs: Interval::from_int(0),
            direction: Direction::Le,
            verdict: Verdict::NotApplicable,
            note: Some(why.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Demote to informative: keep the numbers, drop the verdict.
    pub fn informative(mut self, why: impl Into<String>) -> Self {
        let was = self.verdict;
        self.verdict = Verdict::NotApplicable;
        self.note = Some(format!("{} (would be {was})", why.into()));
        self
    }

    /// The enclosures separate on the wrong side, so more precision cannot rescue the claim.
    pub fn proven_fail(&self) -> bool {
        match self.direction {
            Direction::Le => self.lhs.lo > self.rhs.hi,
            Direction::Lt => self.lhs.lo >= self.rhs.hi,
            Direction::Ge => self.lhs.hi < self.rhs.lo,
            Direction::Eq => self.lhs.is_exact() && self.rhs.is_exact() && self.lhs.lo != self.rhs.lo,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    /// rhs - lhs at the interval midpoints, signed so that positive means slack.
    pub fn margin(&self) -> f64 {
        let d = self.rhs.midpoint_f64() - self.lhs.midpoint_f64();
        if self.direction == Direction::Ge {
            -d
        } else {
            d
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "id": self.id,
            "params": self.params,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "relation": self.direction,
            "verdict": self.verdict,
            "margin": if self.verdict == Verdict::NotApplicable && self.lhs.is_exact() && self.lhs.lo.is_zero() { None } else { Some(self.margin()) },
            "note": self.note,
        })
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} {}: {} {} {}", self.verdict, self.id, self.params, self.lhs, self.direction.symbol(), self.rhs)?;
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

pub fn all_pass(reports: &[BoundReport]) -> bool {
    reports.iter().all(BoundReport::passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certified_direction() {
        let half = BigRational::new(1.into(), 2.into());
        let one = BigRational::from_integer(1.into());
        let r = BoundReport::compare("t", "", Interval::exact(half.clone()), Direction::Le, Interval { lo: half.clone(), hi: one.clone() });
        assert_eq!(r.verdict, Verdict::Pass);
        let r = BoundReport::compare("t", "", Interval::exact(one), Direction::Le, Interval { lo: half.clone(), hi: BigRational::from_integer(2.into()) });
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(BoundReport::not_applicable("t", "", "n < 9").passed());
        assert_eq!(sig_digits(&BigRational::new(11.into(), 10000.into()), 12), "1.10000000000e-3");
        assert_eq!(sig_digits(&BigRational::new((-2).into(), 3.into()), 4), "-6.667e-1");
        assert_eq!(sig_digits(&BigRational::from_integer(999999.into()), 3), "1.00e6");
    }
}
