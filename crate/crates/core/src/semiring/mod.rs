//! Commutative bipotent semirings with exact arithmetic.
//!
//! Every semiring here is additively a total order: `a ⊕ b` is the larger of
//! `a` and `b`, so a semiring is determined by its carrier, the order and the
//! multiplication. Elements are [`Scalar`]s: a rational value, an index into a
//! finite carrier, the bottom element `-∞`, or the purely notational
//! identity adjoined to build unitriangular matrices.

mod axioms;
mod json;
mod order;
mod table;

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub use axioms::{noidentity_obstruction, Axiom, AxiomCheck, AxiomMode, AxiomReport, ObstructionReport, Placement, PlacementReport};
pub use order::{Monogenic, OrderResult};
pub use table::FiniteSemiringTable;

/// One semiring element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    /// The least element: native in the tropical and truncated families,
    /// otherwise the adjoined zero of `S^0`.
    NegInf,
    /// The adjoined identity of `S^1`; only meaningful on unitriangular diagonals.
    AdjoinedId,
    Rat(Rational),
    Atom(usize),
}

impl Scalar {
    pub fn int(n: i64) -> Self {
        Scalar::Rat(Rational::from(n))
    }

    pub fn rat(p: i64, q: i64) -> Self {
        Scalar::Rat(Rational::new(p, q))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::NegInf => f.write_str("-inf"),
            Scalar::AdjoinedId => f.write_str("id"),
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Atom(i) => write!(f, "#{i}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Family {
    /// Rationals with `-∞`, max and classical addition.
    Tropical,
    /// Positive integers under max and addition.
    NatMax,
    /// Negative integers under max and addition.
    NegNatMax,
    /// `{-∞, 0} ∪ [x, y]` with max and `min(a + b, y)`.
    Trunc { x: Rational, y: Rational },
    /// `{1, …, k}` with max and `min(a + b, k)`.
    TruncNat { k: u64 },
    /// `{-k, …, -1}` with max and `max(a + b, -k)`.
    TruncNegNat { k: u64 },
    /// Atoms `0 < 1 < … < size-1` with max and min.
    Chain { size: usize },
    /// The two-element chain.
    Boolean,
    Table(FiniteSemiringTable),
}

/// A bipotent semiring, optionally with a zero adjoined.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Semiring {
    family: Family,
    adjoined_zero: bool,
}

impl Semiring {
    pub fn new(family: Family) -> Result<Self> {
        match &family {
            Family::Trunc { x, y } => {
                if x.is_negative() || x >= y {
                    return Err(Error::InvalidSemiring(format!("truncated interval needs 0 <= x < y, got [{x}, {y}]")));
                }
            }
            Family::TruncNat { k } | Family::TruncNegNat { k } if *k == 0 => {
                return Err(Error::InvalidSemiring("truncation bound k must be at least 1".into()));
            }
            Family::Chain { size } if *size == 0 => {
                return Err(Error::InvalidSemiring("chain must have at least one element".into()));
            }
            _ => {}
        }
        Ok(Semiring { family, adjoined_zero: false })
    }

    pub fn tropical() -> Self {
        Semiring { family: Family::Tropical, adjoined_zero: false }
    }

    pub fn nat_max() -> Self {
        Semiring { family: Family::NatMax, adjoined_zero: false }
    }

    pub fn neg_nat_max() -> Self {
        Semiring { family: Family::NegNatMax, adjoined_zero: false }
    }

    pub fn boolean() -> Self {
        Semiring { family: Family::Boolean, adjoined_zero: false }
    }

    pub fn trunc(x: Rational, y: Rational) -> Result<Self> {
        Self::new(Family::Trunc { x, y })
    }

    pub fn trunc_nat(k: u64) -> Result<Self> {
        Self::new(Family::TruncNat { k })
    }

    pub fn trunc_neg_nat(k: u64) -> Result<Self> {
        Self::new(Family::TruncNegNat { k })
    }

    pub fn chain(size: usize) -> Result<Self> {
        Self::new(Family::Chain { size })
    }

    pub fn table(table: FiniteSemiringTable) -> Self {
        Semiring { family: Family::Table(table), adjoined_zero: false }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn adjoined_zero(&self) -> bool {
        self.adjoined_zero
    }

    /// `S^0`: unchanged when a zero already exists, otherwise `-∞` is admitted
    /// as a least absorbing element.
    pub fn adjoin_zero(&self) -> Semiring {
        if self.zero().is_some() {
            return self.clone();
        }
        Semiring { family: self.family.clone(), adjoined_zero: true }
    }

    /// The zero element (least and multiplicatively absorbing), if any.
    pub fn zero(&self) -> Option<Scalar> {
        if self.adjoined_zero {
            return Some(Scalar::NegInf);
        }
        match &self.family {
            Family::Tropical | Family::Trunc { .. } => Some(Scalar::NegInf),
            Family::Chain { .. } | Family::Boolean => Some(Scalar::Atom(0)),
            Family::TruncNat { k } if *k == 1 => Some(Scalar::int(1)),
            Family::TruncNegNat { k } => Some(Scalar::Rat(-Rational::from_integer(*k))),
            Family::Table(t) => t.zero().map(Scalar::Atom),
            _ => None,
        }
    }

    /// The genuine multiplicative identity, if any.
    pub fn identity(&self) -> Option<Scalar> {
        match &self.family {
            Family::Tropical | Family::Trunc { .. } => Some(Scalar::int(0)),
            Family::Chain { size } => Some(Scalar::Atom(size - 1)),
            Family::Boolean => Some(Scalar::Atom(1)),
            Family::TruncNat { k } if *k == 1 => Some(Scalar::int(1)),
            Family::TruncNegNat { k } if *k == 1 => Some(Scalar::int(-1)),
            Family::Table(t) => t.identity().map(Scalar::Atom),
            _ => None,
        }
    }

    fn has_neg_inf(&self) -> bool {
        self.adjoined_zero || matches!(self.family, Family::Tropical | Family::Trunc { .. })
    }

    fn is_zero(&self, s: &Scalar) -> bool {
        self.zero().as_ref() == Some(s)
    }

    /// True when `s` lies in the carrier (the adjoined identity never does).
    pub fn contains(&self, s: &Scalar) -> bool {
        match s {
            Scalar::NegInf => self.has_neg_inf(),
            Scalar::AdjoinedId => false,
            Scalar::Rat(r) => match &self.family {
                Family::Tropical => true,
                Family::NatMax => r.is_integer() && r.is_positive(),
                Family::NegNatMax => r.is_integer() && r.is_negative(),
                Family::Trunc { x, y } => r.is_zero() || (x <= r && r <= y),
                Family::TruncNat { k } => r.is_integer() && r.is_positive() && *r <= Rational::from_integer(*k),
                Family::TruncNegNat { k } => {
                    r.is_integer() && r.is_negative() && *r >= -Rational::from_integer(*k)
                }
                _ => false,
            },
            Scalar::Atom(i) => match &self.family {
                Family::Chain { size } => i < size,
                Family::Boolean => *i < 2,
                Family::Table(t) => *i < t.size(),
                _ => false,
            },
        }
    }

    fn check(&self, s: &Scalar) -> Result<()> {
        if matches!(s, Scalar::AdjoinedId) || self.contains(s) {
            Ok(())
        } else {
            Err(self.domain_error(s))
        }
    }

    pub(crate) fn domain_error(&self, s: &Scalar) -> Error {
        Error::Domain { scalar: s.clone(), semiring: self.to_string() }
    }

    /// Compare two carrier elements in the semiring order. The adjoined
    /// identity compares only with itself, the zero, or a genuine identity.
    pub fn compare(&self, a: &Scalar, b: &Scalar) -> Result<Ordering> {
        self.check(a)?;
        self.check(b)?;
        self.compare_unchecked(a, b)
    }

    fn compare_unchecked(&self, a: &Scalar, b: &Scalar) -> Result<Ordering> {
        use Scalar::*;
        Ok(match (a, b) {
            (AdjoinedId, AdjoinedId) => Ordering::Equal,
            (AdjoinedId, x) => return self.compare_with_adjoined_id(x).map(Ordering::reverse),
            (x, AdjoinedId) => return self.compare_with_adjoined_id(x),
            (NegInf, NegInf) => Ordering::Equal,
            (NegInf, _) => Ordering::Less,
            (_, NegInf) => Ordering::Greater,
            (Rat(p), Rat(q)) => p.cmp(q),
            (Atom(i), Atom(j)) => match &self.family {
                Family::Table(t) => t.compare(*i, *j),
                _ => i.cmp(j),
            },
            _ => return Err(Error::Domain { scalar: a.clone(), semiring: self.to_string() }),
        })
    }

    /// Ordering of `x` relative to the adjoined identity.
    fn compare_with_adjoined_id(&self, x: &Scalar) -> Result<Ordering> {
        if self.is_zero(x) {
            return Ok(Ordering::Less);
        }
        match self.identity() {
            Some(e) => self.compare_unchecked(x, &e),
            None => Err(Error::UndefinedPartialSum(format!("id vs {x}"))),
        }
    }

    pub fn leq(&self, a: &Scalar, b: &Scalar) -> Result<bool> {
        Ok(self.compare(a, b)? != Ordering::Greater)
    }

    /// `a ⊕ b`: the larger operand, returned as one of the inputs.
    pub fn add(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        self.check(b)?;
        self.add_unchecked(a, b)
    }

    /// `add` for operands already known to be valid.
    pub(crate) fn add_unchecked(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        match self.compare_unchecked(a, b) {
            Ok(Ordering::Less) => Ok(b.clone()),
            Ok(_) => Ok(a.clone()),
            Err(Error::UndefinedPartialSum(_)) => Err(Error::UndefinedPartialSum(format!("{a} + {b}"))),
            Err(e) => Err(e),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &Scalar, b: &Scalar) -> Scalar {
        use Scalar::*;
        match (a, b) {
            (AdjoinedId, x) | (x, AdjoinedId) => x.clone(),
            (NegInf, _) | (_, NegInf) => NegInf,
            (Rat(p), Rat(q)) => Rat(match &self.family {
                Family::Trunc { y, .. } => (p + q).min(y.clone()),
                Family::TruncNat { k } => (p + q).min(Rational::from_integer(*k)),
                Family::TruncNegNat { k } => (p + q).max(-Rational::from_integer(*k)),
                _ => p + q,
            }),
            (Atom(i), Atom(j)) => match &self.family {
                Family::Table(t) => Atom(t.mul(*i, *j)),
                _ => Atom(*i.min(j)),
            },
            // Mixed tags never pass `check`.
            _ => unreachable!("mixed scalar kinds in {self}"),
        }
    }

    /// `a^e` for `e >= 1`.
    pub fn pow(&self, a: &Scalar, e: u64) -> Result<Scalar> {
        assert!(e >= 1, "powers start at 1");
        self.check(a)?;
        let mut p = a.clone();
        for _ in 1..e {
            p = self.mul_unchecked(&p, a);
        }
        Ok(p)
    }

    /// Enumerate the carrier of a finite semiring (including an adjoined zero).
    pub fn carrier(&self) -> Option<Vec<Scalar>> {
        let mut out: Vec<Scalar> = match &self.family {
            Family::Boolean => (0..2).map(Scalar::Atom).collect(),
            Family::Chain { size } => (0..*size).map(Scalar::Atom).collect(),
            Family::Table(t) => (0..t.size()).map(Scalar::Atom).collect(),
            Family::TruncNat { k } => (1..=*k as i64).map(Scalar::int).collect(),
            Family::TruncNegNat { k } => (1..=*k as i64).rev().map(|i| Scalar::int(-i)).collect(),
            _ => return None,
        };
        if self.adjoined_zero {
            out.insert(0, Scalar::NegInf);
        }
        Some(out)
    }

    pub fn is_finite(&self) -> bool {
        self.carrier().is_some()
    }

    /// Draw a random carrier element. Sentinels (`-∞`, and the isolated `0`
    /// of a truncated semiring) each get weight 1/8; interval values are
    /// drawn from the grid `x + (y - x) t / 64`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        if let Some(carrier) = self.carrier() {
            return carrier[rng.gen_range(0..carrier.len())].clone();
        }
        if self.has_neg_inf() && rng.gen_ratio(1, 8) {
            return Scalar::NegInf;
        }
        match &self.family {
            Family::Tropical => {
                let q = rng.gen_range(1..=6i64);
                Scalar::rat(rng.gen_range(-60..=60), q)
            }
            Family::NatMax => Scalar::int(rng.gen_range(1..=40)),
            Family::NegNatMax => Scalar::int(-rng.gen_range(1..=40)),
            Family::Trunc { x, y } => {
                if rng.gen_ratio(1, 7) {
                    return Scalar::int(0);
                }
                sample_interval(x, y, 64, rng)
            }
            _ => unreachable!("finite families handled above"),
        }
    }

    /// Short name used in messages and JSON.
    pub fn family_name(&self) -> &'static str {
        match self.family {
            Family::Tropical => "tropical",
            Family::NatMax => "nat_max",
            Family::NegNatMax => "neg_nat_max",
            Family::Trunc { .. } => "trunc",
            Family::TruncNat { .. } => "trunc_nat",
            Family::TruncNegNat { .. } => "trunc_neg_nat",
            Family::Chain { .. } => "chain",
            Family::Boolean => "boolean",
            Family::Table(_) => "table",
        }
    }

    /// Whether the multiplication is commutative by construction.
    pub fn claims_commutative(&self) -> bool {
        !matches!(self.family, Family::Table(_))
    }
}

/// Uniform draw from `{x + (y - x) t / d : 0 <= t <= d}`.
pub fn sample_interval<R: Rng + ?Sized>(x: &Rational, y: &Rational, d: i64, rng: &mut R) -> Scalar {
    let t = rng.gen_range(0..=d);
    Scalar::Rat(x + &((y - x) * Rational::new(t, d)))
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Tropical => write!(f, "T")?,
            Family::NatMax => write!(f, "N_max")?,
            Family::NegNatMax => write!(f, "(-N)_max")?,
            Family::Trunc { x, y } => write!(f, "T[{x},{y}]")?,
            Family::TruncNat { k } => write!(f, "[{k}]_max")?,
            Family::TruncNegNat { k } => write!(f, "[-{k}]_max")?,
            Family::Chain { size } => write!(f, "Chain({size})")?,
            Family::Boolean => write!(f, "B")?,
            Family::Table(t) => write!(f, "Table({})", t.size())?,
        }
        if self.adjoined_zero {
            write!(f, "^0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Scalar {
        Scalar::rat(p, d)
    }

    fn t(x: (i64, i64), y: (i64, i64)) -> Semiring {
        Semiring::trunc(Rational::new(x.0, x.1), Rational::new(y.0, y.1)).unwrap()
    }

    #[test]
    fn add_examples() {
        let s = t((1, 1), (3, 1));
        assert_eq!(s.add(&q(3, 2), &Scalar::int(2)).unwrap(), Scalar::int(2));
        assert_eq!(Semiring::nat_max().add(&Scalar::int(5), &Scalar::int(5)).unwrap(), Scalar::int(5));
        assert_eq!(Semiring::tropical().add(&Scalar::NegInf, &Scalar::int(-7)).unwrap(), Scalar::int(-7));
    }

    #[test]
    fn mul_examples() {
        let s = t((1, 1), (3, 1));
        assert_eq!(s.mul(&q(3, 2), &Scalar::int(2)).unwrap(), Scalar::int(3));
        let n = Semiring::trunc_neg_nat(4).unwrap();
        assert_eq!(n.mul(&Scalar::int(-3), &Scalar::int(-2)).unwrap(), Scalar::int(-4));
        let c = Semiring::chain(5).unwrap();
        assert_eq!(c.mul(&Scalar::Atom(1), &Scalar::Atom(3)).unwrap(), Scalar::Atom(1));
    }

    #[test]
    fn leq_examples() {
        assert!(Semiring::tropical().leq(&Scalar::NegInf, &Scalar::int(0)).unwrap());
        assert!(t((1, 1), (2, 1)).leq(&Scalar::int(0), &Scalar::int(1)).unwrap());
        assert!(Semiring::chain(3).unwrap().leq(&Scalar::Atom(2), &Scalar::Atom(2)).unwrap());
    }

    #[test]
    fn domain_errors() {
        let s = t((1, 1), (2, 1));
        assert!(matches!(s.add(&q(1, 2), &Scalar::int(1)), Err(Error::Domain { .. })));
        assert!(matches!(Semiring::nat_max().mul(&Scalar::int(0), &Scalar::int(1)), Err(Error::Domain { .. })));
        assert!(matches!(Semiring::nat_max().add(&Scalar::NegInf, &Scalar::int(1)), Err(Error::Domain { .. })));
        assert!(Semiring::chain(3).unwrap().add(&Scalar::Atom(3), &Scalar::Atom(0)).is_err());
        assert!(Semiring::tropical().add(&Scalar::Atom(0), &Scalar::int(0)).is_err());
    }

    #[test]
    fn invalid_descriptors() {
        assert!(Semiring::trunc(Rational::from(2), Rational::from(2)).is_err());
        assert!(Semiring::trunc(Rational::from(-1), Rational::from(2)).is_err());
        assert!(Semiring::trunc_nat(0).is_err());
        assert!(Semiring::trunc_neg_nat(0).is_err());
        assert!(Semiring::chain(0).is_err());
    }

    #[test]
    fn adjoined_identity_partial_sums() {
        let s = Semiring::nat_max().adjoin_zero();
        assert_eq!(s.add(&Scalar::AdjoinedId, &Scalar::AdjoinedId).unwrap(), Scalar::AdjoinedId);
        assert_eq!(s.add(&Scalar::AdjoinedId, &Scalar::NegInf).unwrap(), Scalar::AdjoinedId);
        assert_eq!(s.add(&Scalar::NegInf, &Scalar::AdjoinedId).unwrap(), Scalar::AdjoinedId);
        assert_eq!(s.mul(&Scalar::AdjoinedId, &Scalar::int(4)).unwrap(), Scalar::int(4));
        assert!(matches!(s.add(&Scalar::AdjoinedId, &Scalar::int(4)), Err(Error::UndefinedPartialSum(_))));

        // With a genuine identity the adjoined one behaves like it.
        let c = Semiring::chain(4).unwrap();
        assert_eq!(c.add(&Scalar::AdjoinedId, &Scalar::Atom(2)).unwrap(), Scalar::AdjoinedId);
        let trop = Semiring::tropical();
        assert_eq!(trop.add(&Scalar::AdjoinedId, &Scalar::int(3)).unwrap(), Scalar::int(3));
        assert_eq!(trop.add(&Scalar::AdjoinedId, &Scalar::int(-3)).unwrap(), Scalar::AdjoinedId);
    }

    #[test]
    fn adjoin_zero_cases() {
        let n = Semiring::nat_max().adjoin_zero();
        assert!(n.adjoined_zero());
        assert_eq!(n.zero(), Some(Scalar::NegInf));
        assert!(n.contains(&Scalar::NegInf));
        assert_eq!(n.mul(&Scalar::NegInf, &Scalar::int(3)).unwrap(), Scalar::NegInf);
        assert!(n.leq(&Scalar::NegInf, &Scalar::int(1)).unwrap());

        assert_eq!(Semiring::tropical().adjoin_zero(), Semiring::tropical());
        let c = Semiring::chain(4).unwrap();
        assert_eq!(c.adjoin_zero(), c);
        assert_eq!(c.zero(), Some(Scalar::Atom(0)));
        // Adjoining is idempotent.
        assert_eq!(n.adjoin_zero(), n);
    }

    #[test]
    fn trunc_with_zero_left_endpoint() {
        let s = t((0, 1), (1, 1));
        assert_eq!(s.mul(&q(1, 4), &q(1, 2)).unwrap(), q(3, 4));
        assert_eq!(s.mul(&q(3, 4), &q(1, 2)).unwrap(), Scalar::int(1));
        assert_eq!(s.identity(), Some(Scalar::int(0)));
    }

    #[test]
    fn finite_carriers() {
        assert_eq!(Semiring::trunc_neg_nat(3).unwrap().carrier().unwrap(), vec![Scalar::int(-3), Scalar::int(-2), Scalar::int(-1)]);
        assert_eq!(Semiring::trunc_nat(2).unwrap().adjoin_zero().carrier().unwrap(), vec![Scalar::NegInf, Scalar::int(1), Scalar::int(2)]);
        assert!(Semiring::tropical().carrier().is_none());
    }

    #[test]
    fn samples_stay_in_carrier() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for s in [
            Semiring::tropical(),
            Semiring::nat_max().adjoin_zero(),
            Semiring::neg_nat_max(),
            t((1, 1), (2, 1)),
            t((0, 1), (7, 3)),
            Semiring::chain(6).unwrap(),
        ] {
            for _ in 0..200 {
                let a = s.sample(&mut rng);
                assert!(s.contains(&a), "{a} not in {s}");
            }
        }
    }
}
