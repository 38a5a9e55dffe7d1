//! Fuchsian signatures and exact measure arithmetic.
//!
//! A signature (g; m1, ..., mk) determines the normalized hyperbolic measure
//! mu/2pi = 2g - 2 + sum(1 - 1/mj). For a finite group G acting on a surface
//! with this signature, |G| * (mu/4pi) = genus - 1, so everything downstream
//! rides on the reduced fraction q = mu/4pi = r/s. All arithmetic here is
//! exact (BigRational); nothing is ever rounded.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, BigUint, One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, Serializer};
use thiserror::Error;

use crate::arith;

#[derive(Debug, Error)]
pub enum SignatureError {
    #[error("elliptic period {0} is out of range (each period must be at least 2)")]
    BadPeriod(u64),
    #[error("{sig} is not cocompact hyperbolic: normalized measure {measure} is not positive")]
    NotHyperbolic { sig: String, measure: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("1 + {order}*({q}) = {value} is not an integer, so no action with this signature exists")]
    NonIntegralGenus { order: u64, q: String, value: String },
    #[error("genus {0} is below 2; the quotient is not a hyperbolic surface group")]
    GenusTooSmall(String),
    #[error("lambda = {0} is unsupported: the tail analysis implemented here needs lambda > 6")]
    LambdaOutOfRange(String),
    #[error("unsupported tail family (2,{0},n)")]
    UnknownFamily(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// An orbifold signature (g; m1, ..., mk) with periods stored sorted
/// ascending. Periods are the orders of the elliptic generators; g is the
/// orbit genus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    genus: u32,
    periods: Vec<u64>,
}

impl Signature {
    /// Build a signature, sorting the periods. Rejects periods below 2.
    pub fn new(genus: u32, mut periods: Vec<u64>) -> Result<Self, SignatureError> {
        if let Some(&bad) = periods.iter().find(|&&m| m < 2) {
            return Err(SignatureError::BadPeriod(bad));
        }
        periods.sort_unstable();
        Ok(Signature { genus, periods })
    }

    /// Genus-zero triangle signature (l, m, n).
    pub fn triangle(l: u64, m: u64, n: u64) -> Result<Self, SignatureError> {
        Signature::new(0, vec![l, m, n])
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn periods(&self) -> &[u64] {
        &self.periods
    }

    pub fn k(&self) -> usize {
        self.periods.len()
    }

    /// Normalized measure mu/2pi = 2g - 2 + sum(1 - 1/mj), exact.
    pub fn normalized_measure(&self) -> BigRational {
        let mut acc = BigRational::from_integer(BigInt::from(2 * i64::from(self.genus) - 2));
        for &m in &self.periods {
            acc += BigRational::one() - big_ratio(1, m as i64);
        }
        acc
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.normalized_measure().is_positive()
    }

    /// The reduced fraction q = mu/4pi = r/s. Errors out on non-hyperbolic
    /// signatures.
    pub fn q_fraction(&self) -> Result<QFraction, SignatureError> {
        let measure = self.normalized_measure();
        if !measure.is_positive() {
            return Err(SignatureError::NotHyperbolic {
                sig: self.to_string(),
                measure: measure.to_string(),
            });
        }
        let q = measure / BigRational::from_integer(BigInt::from(2));
        Ok(QFraction {
            r: q.numer().to_biguint().expect("positive numerator"),
            s: q.denom().to_biguint().expect("positive denominator"),
        })
    }

    /// Riemann-Hurwitz: genus of the surface on which a group of the given
    /// order acts with this signature, g = 1 + order * q. Errors if the
    /// result is not an integer >= 2 (then no such action exists).
    pub fn rh_genus(&self, order: u64) -> Result<u64, SignatureError> {
        let q = self.q_fraction()?;
        let val = BigRational::one()
            + BigRational::from_integer(BigInt::from(order)) * q.value();
        if !val.is_integer() {
            return Err(SignatureError::NonIntegralGenus {
                order,
                q: q.to_string(),
                value: val.to_string(),
            });
        }
        let g = val.to_integer();
        if g < BigInt::from(2) {
            return Err(SignatureError::GenusTooSmall(g.to_string()));
        }
        Ok(g.to_u64().expect("genus fits in u64"))
    }
}

/// Canonical order: by number of periods, then periods lexicographically,
/// then genus. This is the order used for enumerations and reports.
impl Ord for Signature {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.periods.len(), &self.periods, self.genus).cmp(&(
            other.periods.len(),
            &other.periods,
            other.genus,
        ))
    }
}

impl PartialOrd for Signature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.periods.iter().map(|m| m.to_string()).collect();
        if self.genus == 0 {
            write!(f, "({})", ps.join(","))
        } else if ps.is_empty() {
            write!(f, "({};-)", self.genus)
        } else {
            write!(f, "({};{})", self.genus, ps.join(","))
        }
    }
}

impl FromStr for Signature {
    type Err = SignatureError;

    /// Accepts "(2,6,6)", "(1; 2,3)", "(2;-)" and unparenthesized variants.
    fn from_str(s: &str) -> Result<Self, SignatureError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        let (genus, rest) = match inner.split_once(';') {
            Some((g, rest)) => {
                let g: u32 = g.trim().parse().map_err(|_| SignatureError::Parse {
                    pos: 0,
                    msg: format!("bad genus {:?}", g.trim()),
                })?;
                (g, rest.trim())
            }
            None => (0, inner),
        };
        let mut periods = Vec::new();
        if !(rest.is_empty() || rest == "-") {
            for part in rest.split(',') {
                let m: u64 = part.trim().parse().map_err(|_| SignatureError::Parse {
                    pos: s.find(part.trim()).unwrap_or(0),
                    msg: format!("bad period {:?}", part.trim()),
                })?;
                periods.push(m);
            }
        }
        Signature::new(genus, periods)
    }
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

/// The reduced fraction q = r/s (coprime, both positive).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFraction {
    r: BigUint,
    s: BigUint,
}

impl QFraction {
    pub fn r(&self) -> &BigUint {
        &self.r
    }

    pub fn s(&self) -> &BigUint {
        &self.s
    }

    pub fn r_u64(&self) -> Option<u64> {
        self.r.to_u64()
    }

    pub fn s_u64(&self) -> Option<u64> {
        self.s.to_u64()
    }

    pub fn value(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.r.clone()),
            BigInt::from(self.s.clone()),
        )
    }

    /// Renders the reciprocal s/r, as an integer when r = 1 (the form used
    /// in the appendix table, where s/r is the measure normalizer).
    pub fn inverted_string(&self) -> String {
        if self.r.is_one() {
            self.s.to_string()
        } else {
            format!("{}/{}", self.s, self.r)
        }
    }
}

impl fmt::Display for QFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.is_one() {
            write!(f, "{}", self.r)
        } else {
            write!(f, "{}/{}", self.r, self.s)
        }
    }
}

impl Serialize for QFraction {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

/// One infinite family (m1, m2, n) for all n >= min_n inside a SigmaSet.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TailFamily {
    pub prefix: Vec<u64>,
    pub min_n: u64,
}

impl fmt::Display for TailFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.prefix.iter().map(|m| m.to_string()).collect();
        write!(f, "({},n) for n >= {}", ps.join(","), self.min_n)
    }
}

/// Sigma_lambda: all signatures with 0 < mu/2pi <= 2/lambda, split into an
/// explicit finite list and infinite tail families.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SigmaSet {
    pub lambda: String,
    pub finite: Vec<Signature>,
    pub tails: Vec<TailFamily>,
}

impl SigmaSet {
    pub fn contains(&self, sig: &Signature) -> bool {
        if self.finite.binary_search(sig).is_ok() {
            return true;
        }
        sig.genus() == 0
            && sig.k() == 3
            && self.tails.iter().any(|t| {
                sig.periods()[..2] == t.prefix[..] && sig.periods()[2] >= t.min_n
            })
    }
}

/// Bound constants read off a SigmaSet: the largest prime dividing any r,
/// the largest s among members with r = 1, and the largest prime period
/// among members with r = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BoundConstants {
    pub p_max_r: u64,
    pub p_max_period: u64,
    pub s_max: u64,
}

/// Enumerate Sigma_lambda for lambda > 6 exactly.
///
/// For lambda > 6 the bound 2/lambda < 1/3 forces genus 0 and k <= 4 (the
/// code checks rather than assumes this: the minimal positive measure in
/// genus >= 1 is 1/2). A prefix (m1, m2) whose limiting measure
/// (1 - 1/m1 - 1/m2) is <= 2/lambda contributes an infinite tail; every
/// other branch is cut off by exact rational comparisons. At lambda = 8 the
/// two tails are split at the conventional points n = 79 and n = 37, so the
/// finite list carries (2,3,7..78) and (2,4,5..36) explicitly.
pub fn enumerate_sigma(lambda: &BigRational) -> Result<SigmaSet, SignatureError> {
    let six = BigRational::from_integer(BigInt::from(6));
    if *lambda <= six {
        return Err(SignatureError::LambdaOutOfRange(lambda.to_string()));
    }
    let bound = big_ratio(2, 1) / lambda.clone();
    // Positive-genus emptiness is asserted, not assumed: with g >= 1 the
    // smallest positive normalized measure is 2g - 2 + k/2 >= 1/2 (k >= 1,
    // all periods 2), and measure 0 (g = 1, k = 0) is excluded.
    assert!(
        big_ratio(1, 2) > bound,
        "positive-genus signatures would enter Sigma_lambda"
    );
    let lambda_is_8 = *lambda == big_ratio(8, 1);

    let mut finite: Vec<Signature> = Vec::new();
    let mut tails: Vec<TailFamily> = Vec::new();

    for k in 3usize.. {
        // All-2s measure (k - 4)/2 must stay within the bound for this k to
        // contribute anything.
        let min_measure = big_ratio(k as i64 - 4, 2);
        if min_measure > bound {
            break;
        }
        let mut prefix = Vec::with_capacity(k);
        extend_periods(
            k,
            &mut prefix,
            &BigRational::zero(),
            &bound,
            lambda_is_8,
            &mut finite,
            &mut tails,
        );
    }

    finite.sort();
    finite.dedup();
    tails.sort_by(|a, b| a.prefix.cmp(&b.prefix));
    Ok(SigmaSet {
        lambda: lambda.to_string(),
        finite,
        tails,
    })
}

fn extend_periods(
    k: usize,
    prefix: &mut Vec<u64>,
    inv_sum: &BigRational,
    bound: &BigRational,
    lambda_is_8: bool,
    finite: &mut Vec<Signature>,
    tails: &mut Vec<TailFamily>,
) {
    let slot = prefix.len();
    let lo = prefix.last().copied().unwrap_or(2);
    if slot + 1 == k {
        // Last slot: measure(n) = c - 1/n with c = (k - 2) - inv_sum.
        let c = big_ratio(k as i64 - 2, 1) - inv_sum;
        if lambda_is_8 && k == 3 && (prefix[..] == [2, 3] || prefix[..] == [2, 4]) {
            // Conventional split points for the two genuinely infinite
            // families at lambda = 8.
            let (last_finite, tail_from) = if prefix[1] == 3 { (78, 79) } else { (36, 37) };
            for n in lo.max(if prefix[1] == 3 { 7 } else { 5 })..=last_finite {
                finite.push(Signature::new(0, with_last(prefix, n)).unwrap());
            }
            tails.push(TailFamily {
                prefix: prefix.clone(),
                min_n: tail_from,
            });
            return;
        }
        if !c.is_positive() {
            return; // measure cannot become positive for any n
        }
        // Smallest n with positive measure: n > 1/c.
        let n_min = lo.max(floor_big(&(c.recip())) + 1);
        if c <= *bound {
            // Limiting measure already within the bound: infinite tail.
            tails.push(TailFamily {
                prefix: prefix.clone(),
                min_n: n_min,
            });
            return;
        }
        // measure(n) <= bound  <=>  n <= 1/(c - bound).
        let n_max = floor_big(&(c.clone() - bound).recip());
        for n in n_min..=n_max {
            finite.push(Signature::new(0, with_last(prefix, n)).unwrap());
        }
        return;
    }
    let mut m = lo;
    loop {
        // Best case: every remaining slot also takes period m.
        let remaining = (k - slot) as i64;
        let optimistic = big_ratio(k as i64 - 2, 1)
            - inv_sum
            - big_ratio(remaining, m as i64);
        if optimistic > *bound {
            break;
        }
        prefix.push(m);
        let next_sum = inv_sum + big_ratio(1, m as i64);
        extend_periods(k, prefix, &next_sum, bound, lambda_is_8, finite, tails);
        prefix.pop();
        m += 1;
    }
}

fn with_last(prefix: &[u64], n: u64) -> Vec<u64> {
    let mut v = prefix.to_vec();
    v.push(n);
    v
}

/// Extract the three bound constants from an enumerated SigmaSet. Tail
/// members have r | (a fixed integer) with bounded s and periods, so the
/// finite list together with the tail prefixes determines all three values.
pub fn bound_constants(sigma: &SigmaSet) -> BoundConstants {
    let mut p_max_r = 1u64;
    let mut p_max_period = 1u64;
    let mut s_max = 1u64;
    for sig in &sigma.finite {
        let q = sig.q_fraction().expect("members are hyperbolic");
        let r = q.r_u64().expect("r fits u64");
        let s = q.s_u64().expect("s fits u64");
        if let Some(&p) = arith::prime_divisors(r).last() {
            p_max_r = p_max_r.max(p);
        }
        if r == 1 {
            s_max = s_max.max(s);
            for &m in sig.periods() {
                if let Some(&p) = arith::prime_divisors(m).last() {
                    p_max_period = p_max_period.max(p);
                }
            }
        }
    }
    BoundConstants {
        p_max_r,
        p_max_period,
        s_max,
    }
}

/// Which of the genuinely infinite lambda = 8 families a triple belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum TailPrefix {
    /// (2,3,n)
    TwoThree,
    /// (2,4,n)
    TwoFour,
    /// (2,5,n) - finite at lambda = 8 but handled by the same divisibility
    /// pattern, with key 3n - 10.
    TwoFive,
}

impl TailPrefix {
    pub fn second_period(self) -> u64 {
        match self {
            TailPrefix::TwoThree => 3,
            TailPrefix::TwoFour => 4,
            TailPrefix::TwoFive => 5,
        }
    }

    fn from_second(m: u64) -> Result<Self, SignatureError> {
        match m {
            3 => Ok(TailPrefix::TwoThree),
            4 => Ok(TailPrefix::TwoFour),
            5 => Ok(TailPrefix::TwoFive),
            other => Err(SignatureError::UnknownFamily(other)),
        }
    }
}

/// What the divisibility screen says about one member (2, m, n) of a family
/// relative to a fixed prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum FamilyVerdict {
    /// r = 1: the key divides the family modulus.
    Smooth,
    /// r = p: n is one of the finitely many candidates for this prime.
    CandidateRp,
    /// Neither r = 1 nor r = p: p cannot divide |G| appropriately.
    Excluded,
}

/// Divisibility constraints for the (2,3,n) / (2,4,n) / (2,5,n) families at
/// lambda = 8, relative to a prime p in the genus range.
///
/// For (2,3,n): q = (n-6)/12n, so r = 1 iff (n-6) | 72, and the r = p
/// members have n - 6 in {p, 2p, ...} capped by n <= 78. For (2,4,n) the key
/// is n - 4 with modulus 32 and cap 36; for (2,5,n) the key is 3n - 10 with
/// modulus 200 and cap 70.
#[derive(Clone, Debug, serde::Serialize)]
pub struct FamilyConstraints {
    pub family: TailPrefix,
    pub p: u64,
    pub modulus: u64,
    pub ceiling: u64,
    pub candidates_r_eq_p: Vec<u64>,
}

impl FamilyConstraints {
    /// The divisibility key for a given n (n - 6, n - 4, or 3n - 10).
    pub fn key(&self, n: u64) -> u64 {
        match self.family {
            TailPrefix::TwoThree => n - 6,
            TailPrefix::TwoFour => n - 4,
            TailPrefix::TwoFive => 3 * n - 10,
        }
    }

    pub fn verdict(&self, n: u64) -> FamilyVerdict {
        let sig = Signature::triangle(2, self.family.second_period(), n);
        let q = match sig.and_then(|s| s.q_fraction()) {
            Ok(q) => q,
            Err(_) => return FamilyVerdict::Excluded,
        };
        let r = q.r_u64().unwrap_or(u64::MAX);
        if r == 1 {
            FamilyVerdict::Smooth
        } else if r == self.p {
            FamilyVerdict::CandidateRp
        } else {
            FamilyVerdict::Excluded
        }
    }
}

/// Constraints table for one family at a prime p (lambda = 8).
pub fn family_constraints(second: u64, p: u64) -> Result<FamilyConstraints, SignatureError> {
    if !arith::is_prime(p) {
        return Err(SignatureError::NotPrime(p));
    }
    let family = TailPrefix::from_second(second)?;
    let (modulus, ceiling, n_lo) = match family {
        TailPrefix::TwoThree => (72u64, 78u64, 7u64),
        TailPrefix::TwoFour => (32, 36, 5),
        TailPrefix::TwoFive => (200, 70, 5),
    };
    let mut candidates = Vec::new();
    for n in n_lo..=ceiling {
        if let Ok(q) = Signature::triangle(2, second, n).and_then(|s| s.q_fraction()) {
            if q.r_u64() == Some(p) {
                candidates.push(n);
            }
        }
    }
    Ok(FamilyConstraints {
        family,
        p,
        modulus,
        ceiling,
        candidates_r_eq_p: candidates,
    })
}

fn big_ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// floor(x) for positive x, as u64.
fn floor_big(x: &BigRational) -> u64 {
    x.floor().to_integer().to_u64().expect("positive and small")
}
