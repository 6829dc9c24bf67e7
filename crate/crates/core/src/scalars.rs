//! Exact coefficient rings with complex conjugation.
//!
//! Every value is stored as a pair of arbitrary-precision rationals
//! `(re, im)`; the ring tag restricts which pairs are legal. No floating
//! point is used anywhere.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: ScalarRing, right: ScalarRing },
    #[error("{value} is not an element of {ring}")]
    NotInRing { value: String, ring: ScalarRing },
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
    #[error("unknown ring `{0}` (expected Z, Zi, Q or Z-half)")]
    UnknownRing(String),
    #[error("{0} is not flagged as a *-subring of C")]
    NotStarSubring(ScalarRing),
    #[error("kindness witness needs at least one scalar")]
    EmptyWitness,
}

/// The supported coefficient rings, all unital *-subrings of ℂ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScalarRing {
    Integers,
    GaussianIntegers,
    Rationals,
    DyadicRationals,
}

impl ScalarRing {
    pub const ALL: [ScalarRing; 4] = [
        ScalarRing::Integers,
        ScalarRing::GaussianIntegers,
        ScalarRing::Rationals,
        ScalarRing::DyadicRationals,
    ];

    pub fn is_star_subring_of_c(self) -> bool {
        true
    }

    /// Stored kindness flag; `None` would mean the ring is not a *-subring of ℂ.
    pub fn is_kind(self) -> Option<bool> {
        if !self.is_star_subring_of_c() {
            return None;
        }
        Some(matches!(self, ScalarRing::Integers | ScalarRing::GaussianIntegers))
    }

    /// Short name used on the command line.
    pub fn short_name(self) -> &'static str {
        match self {
            ScalarRing::Integers => "Z",
            ScalarRing::GaussianIntegers => "Zi",
            ScalarRing::Rationals => "Q",
            ScalarRing::DyadicRationals => "Z-half",
        }
    }

    pub fn contains(self, re: &BigRational, im: &BigRational) -> bool {
        match self {
            ScalarRing::Integers => im.is_zero() && re.is_integer(),
            ScalarRing::GaussianIntegers => re.is_integer() && im.is_integer(),
            ScalarRing::Rationals => im.is_zero(),
            ScalarRing::DyadicRationals => im.is_zero() && is_power_of_two(re.denom()),
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar::from_parts_unchecked(self, BigRational::zero(), BigRational::zero())
    }

    pub fn one(self) -> Scalar {
        Scalar::from_parts_unchecked(self, BigRational::one(), BigRational::zero())
    }

    pub fn from_int(self, n: i64) -> Scalar {
        Scalar::from_parts_unchecked(self, BigRational::from_integer(n.into()), BigRational::zero())
    }

    /// Whether `to` contains `self` via the obvious inclusion.
    pub fn includes_into(self, to: ScalarRing) -> bool {
        use ScalarRing::*;
        match (self, to) {
            (a, b) if a == b => true,
            (Integers, _) => true,
            (DyadicRationals, Rationals) => true,
            _ => false,
        }
    }
}

impl fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for ScalarRing {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Z" | "ZZ" | "integers" => Ok(ScalarRing::Integers),
            "Zi" | "Z[i]" | "gaussian" => Ok(ScalarRing::GaussianIntegers),
            "Q" | "QQ" | "rationals" => Ok(ScalarRing::Rationals),
            "Z-half" | "Z[1/2]" | "dyadic" => Ok(ScalarRing::DyadicRationals),
            other => Err(ScalarError::UnknownRing(other.to_string())),
        }
    }
}

fn is_power_of_two(n: &BigInt) -> bool {
    n.is_positive() && (n & (n - BigInt::one())).is_zero()
}

/// An exact element of a [`ScalarRing`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    ring: ScalarRing,
    re: BigRational,
    im: BigRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Mul,
    Neg,
    Conj,
}

impl Scalar {
    pub fn new(ring: ScalarRing, re: BigRational, im: BigRational) -> Result<Self, ScalarError> {
        if !ring.contains(&re, &im) {
            return Err(ScalarError::NotInRing {
                value: Scalar::from_parts_unchecked(ring, re, im).to_string(),
                ring,
            });
        }
        Ok(Scalar { ring, re, im })
    }

    fn from_parts_unchecked(ring: ScalarRing, re: BigRational, im: BigRational) -> Self {
        Scalar { ring, re, im }
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    fn same_ring(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(ScalarError::RingMismatch { left: self.ring, right: other.ring })
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_ring(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn neg(&self) -> Scalar {
        Scalar::from_parts_unchecked(self.ring, -&self.re, -&self.im)
    }

    pub fn conj(&self) -> Scalar {
        Scalar::from_parts_unchecked(self.ring, self.re.clone(), -&self.im)
    }

    /// `|x|²`, which lies in the same ring for every supported ring.
    pub fn norm_squared(&self) -> Scalar {
        let n = &self.re * &self.re + &self.im * &self.im;
        Scalar::from_parts_unchecked(self.ring, n, BigRational::zero())
    }

    /// Unary or binary arithmetic selected by `op`; unary ops ignore `b`.
    pub fn arith(a: &Scalar, b: &Scalar, op: ScalarOp) -> Result<Scalar, ScalarError> {
        a.same_ring(b)?;
        Ok(match op {
            ScalarOp::Add => a.add_unchecked(b),
            ScalarOp::Mul => a.mul_unchecked(b),
            ScalarOp::Neg => a.neg(),
            ScalarOp::Conj => a.conj(),
        })
    }

    pub(crate) fn add_unchecked(&self, other: &Scalar) -> Scalar {
        debug_assert_eq!(self.ring, other.ring);
        Scalar::from_parts_unchecked(self.ring, &self.re + &other.re, &self.im + &other.im)
    }

    pub(crate) fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        debug_assert_eq!(self.ring, other.ring);
        if self.im.is_zero() && other.im.is_zero() {
            return Scalar::from_parts_unchecked(self.ring, &self.re * &other.re, BigRational::zero());
        }
        let re = &self.re * &other.re - &self.im * &other.im;
        let im = &self.re * &other.im + &self.im * &other.re;
        Scalar::from_parts_unchecked(self.ring, re, im)
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Scalar) {
        debug_assert_eq!(self.ring, other.ring);
        self.re += &other.re;
        if !other.im.is_zero() {
            self.im += &other.im;
        }
    }

    /// Image under the inclusion `self.ring() -> target`.
    pub fn include_into(&self, target: ScalarRing) -> Result<Scalar, ScalarError> {
        if !self.ring.includes_into(target) {
            return Err(ScalarError::NotInRing { value: self.to_string(), ring: target });
        }
        Scalar::new(target, self.re.clone(), self.im.clone())
    }

    /// Parses the literal grammar `-3`, `5/4`, `2+3i`, `-i`, `7/8` into `ring`.
    pub fn parse(text: &str, ring: ScalarRing) -> Result<Scalar, ScalarError> {
        let (re, im) = parse_complex_rational(text)?;
        Scalar::new(ring, re, im)
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if t.is_empty() || t.starts_with('+') && t.len() == 1 {
        return None;
    }
    let t = t.strip_prefix('+').unwrap_or(t);
    let r = BigRational::from_str(t).ok()?;
    Some(r)
}

fn parse_complex_rational(text: &str) -> Result<(BigRational, BigRational), ScalarError> {
    let err = || ScalarError::Parse(text.to_string());
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(&t);
    if t.is_empty() {
        return Err(err());
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok((parse_rational(t).ok_or_else(err)?, BigRational::zero()));
    };
    // split at the last sign that is not the leading one
    let split = body
        .char_indices()
        .rev()
        .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
        .map(|(i, _)| i);
    let (re_text, im_text) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re_text.is_empty() {
        BigRational::zero()
    } else {
        parse_rational(re_text).ok_or_else(err)?
    };
    let im = match im_text {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        s => parse_rational(s).ok_or_else(err)?,
    };
    Ok((re, im))
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&fmt_rational(&self.re));
        }
        let im = if self.im.is_one() {
            String::new()
        } else if (-&self.im).is_one() {
            "-".to_string()
        } else {
            fmt_rational(&self.im)
        };
        if self.re.is_zero() {
            write!(f, "{im}i")
        } else if self.im.is_positive() {
            write!(f, "{}+{im}i", fmt_rational(&self.re))
        } else {
            write!(f, "{}{im}i", fmt_rational(&self.re))
        }
    }
}

/// Outcome of checking one tuple against the defining implication of kindness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KindWitness {
    ConsistentWithKind,
    KindnessViolated,
    EquationFails,
}

/// Checks whether `λ0 = |λ0|² + Σ_{i≥1} |λi|²` holds and, if so, whether
/// some `λi` with `i ≥ 1` is nonzero.
pub fn verify_kind_witness(ring: ScalarRing, lambdas: &[Scalar]) -> Result<KindWitness, ScalarError> {
    if !ring.is_star_subring_of_c() {
        return Err(ScalarError::NotStarSubring(ring));
    }
    let (first, rest) = lambdas.split_first().ok_or(ScalarError::EmptyWitness)?;
    for l in lambdas {
        if l.ring != ring {
            return Err(ScalarError::RingMismatch { left: ring, right: l.ring });
        }
    }
    let mut rhs = first.norm_squared();
    for l in rest {
        rhs.add_assign_unchecked(&l.norm_squared());
    }
    if &rhs != first {
        Ok(KindWitness::EquationFails)
    } else if rest.iter().any(|l| !l.is_zero()) {
        Ok(KindWitness::KindnessViolated)
    } else {
        Ok(KindWitness::ConsistentWithKind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str, ring: ScalarRing) -> Scalar {
        Scalar::parse(text, ring).unwrap()
    }

    #[test]
    fn gaussian_norm_identity() {
        let r = ScalarRing::GaussianIntegers;
        let p = s("1+i", r).try_mul(&s("1-i", r)).unwrap();
        assert_eq!(p, r.from_int(2));
    }

    #[test]
    fn conj_fixes_integers() {
        let r = ScalarRing::Integers;
        assert_eq!(s("3", r).conj(), s("3", r));
    }

    #[test]
    fn dyadic_halves_sum_to_one() {
        let r = ScalarRing::DyadicRationals;
        assert_eq!(s("1/2", r).try_add(&s("1/2", r)).unwrap(), r.one());
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = ScalarRing::Integers.one();
        let b = ScalarRing::Rationals.one();
        assert!(matches!(a.try_add(&b), Err(ScalarError::RingMismatch { .. })));
        assert!(Scalar::arith(&a, &b, ScalarOp::Mul).is_err());
    }

    #[test]
    fn ring_membership_enforced() {
        assert!(Scalar::parse("5/4", ScalarRing::Integers).is_err());
        assert!(Scalar::parse("1/3", ScalarRing::DyadicRationals).is_err());
        assert!(Scalar::parse("7/8", ScalarRing::DyadicRationals).is_ok());
        assert!(Scalar::parse("2+3i", ScalarRing::Rationals).is_err());
        assert!(Scalar::parse("1/2i", ScalarRing::GaussianIntegers).is_err());
    }

    #[test]
    fn literal_round_trip() {
        let r = ScalarRing::GaussianIntegers;
        for text in ["0", "-3", "2+3i", "2-3i", "i", "-i", "4i", "-7-i"] {
            assert_eq!(s(text, r).to_string(), text);
        }
        assert_eq!(s("5/4", ScalarRing::Rationals).to_string(), "5/4");
        assert_eq!(s("(2+3i)", r).to_string(), "2+3i");
    }

    #[test]
    fn kind_witness_examples() {
        let z = ScalarRing::Integers;
        assert_eq!(verify_kind_witness(z, &[z.one()]).unwrap(), KindWitness::ConsistentWithKind);
        assert_eq!(
            verify_kind_witness(z, &[z.from_int(2), z.one()]).unwrap(),
            KindWitness::EquationFails
        );
        let d = ScalarRing::DyadicRationals;
        let half = s("1/2", d);
        assert_eq!(
            verify_kind_witness(d, &[half.clone(), half]).unwrap(),
            KindWitness::KindnessViolated
        );
        assert_eq!(verify_kind_witness(z, &[]), Err(ScalarError::EmptyWitness));
    }

    #[test]
    fn kindness_flags() {
        assert_eq!(ScalarRing::Integers.is_kind(), Some(true));
        assert_eq!(ScalarRing::GaussianIntegers.is_kind(), Some(true));
        assert_eq!(ScalarRing::Rationals.is_kind(), Some(false));
        assert_eq!(ScalarRing::DyadicRationals.is_kind(), Some(false));
    }

    #[test]
    fn integers_are_kind_on_small_tuples() {
        let z = ScalarRing::Integers;
        for n in 0..=3usize {
            let len = n + 1;
            let total = 7usize.pow(len as u32);
            for code in 0..total {
                let mut c = code;
                let lambdas: Vec<Scalar> = (0..len)
                    .map(|_| {
                        let v = (c % 7) as i64 - 3;
                        c /= 7;
                        z.from_int(v)
                    })
                    .collect();
                assert_ne!(
                    verify_kind_witness(z, &lambdas).unwrap(),
                    KindWitness::KindnessViolated,
                    "{lambdas:?}"
                );
            }
        }
    }
}
