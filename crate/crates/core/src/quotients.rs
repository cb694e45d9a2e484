//! Finite congruence quotients that isolate a chosen finite set of elements,
//! and the permutation finders built on them.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{seq_product, Matrix, MatrixFamily};
use crate::permutability::{apply_perm_product, Permutation, PermutationWitness, Strategy};
use crate::rational::Rational;
use crate::semiring::{Family, FiniteSemiringTable, Scalar, Semiring};

/// One congruence class, described as a set of carrier elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassDescriptor {
    Singleton { value: Scalar },
    /// All carrier elements between `lo` and `hi`.
    Interval { lo: Scalar, hi: Scalar, lo_open: bool, hi_open: bool },
}

impl ClassDescriptor {
    fn contains(&self, s: &Semiring, a: &Scalar) -> Result<bool> {
        Ok(match self {
            ClassDescriptor::Singleton { value } => a == value,
            ClassDescriptor::Interval { lo, hi, lo_open, hi_open } => {
                let above = match s.compare(lo, a)? {
                    Ordering::Less => true,
                    Ordering::Equal => !lo_open,
                    Ordering::Greater => false,
                };
                let below = match s.compare(a, hi)? {
                    Ordering::Less => true,
                    Ordering::Equal => !hi_open,
                    Ordering::Greater => false,
                };
                above && below
            }
        })
    }

    /// The least member when there is one, otherwise the midpoint of the
    /// (rational) endpoints.
    fn representative(&self) -> Scalar {
        match self {
            ClassDescriptor::Singleton { value } => value.clone(),
            ClassDescriptor::Interval { lo, lo_open: false, .. } => lo.clone(),
            ClassDescriptor::Interval { lo, hi, .. } => match (lo.as_rational(), hi.as_rational()) {
                (Some(l), Some(h)) => Scalar::Rat((l + h) / Rational::from(2)),
                _ => hi.clone(),
            },
        }
    }
}

/// A partition of the carrier into classes listed in increasing order, with
/// the operation tables induced on class indices through representatives.
#[derive(Debug, Clone, Serialize)]
pub struct CongruenceQuotient {
    #[serde(skip)]
    source: Semiring,
    classes: Vec<ClassDescriptor>,
    #[serde(skip)]
    representatives: Vec<Scalar>,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

impl CongruenceQuotient {
    /// Build the induced tables for an arbitrary ordered partition. Nothing
    /// guarantees the partition is a congruence; see [`verify_congruence`].
    pub fn from_classes(source: Semiring, classes: Vec<ClassDescriptor>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::BadParams("a partition needs at least one class".into()));
        }
        let representatives: Vec<Scalar> = classes.iter().map(ClassDescriptor::representative).collect();
        let mut q = CongruenceQuotient { source, classes, representatives, add: Vec::new(), mul: Vec::new() };
        let reps = q.representatives.clone();
        for r in &reps {
            q.class_of(r)?;
        }
        let k = reps.len();
        let mut add = vec![vec![0; k]; k];
        let mut mul = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                add[i][j] = q.class_of(&q.source.add(&reps[i], &reps[j])?)?;
                mul[i][j] = q.class_of(&q.source.mul(&reps[i], &reps[j])?)?;
            }
        }
        q.add = add;
        q.mul = mul;
        Ok(q)
    }

    pub fn source(&self) -> &Semiring {
        &self.source
    }

    pub fn classes(&self) -> &[ClassDescriptor] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representatives(&self) -> &[Scalar] {
        &self.representatives
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    /// The quotient as a finite semiring, validated against the laws.
    pub fn table(&self) -> Result<FiniteSemiringTable> {
        FiniteSemiringTable::new(self.add.clone(), self.mul.clone())
    }

    pub fn class_of(&self, a: &Scalar) -> Result<usize> {
        if !self.source.contains(a) {
            return Err(self.source.domain_error(a));
        }
        for (i, c) in self.classes.iter().enumerate() {
            if c.contains(&self.source, a)? {
                return Ok(i);
            }
        }
        Err(Error::BadParams(format!("{a} lies in no class of the partition")))
    }

    /// The induced matrix map `ψ`: each entry replaced by its class index.
    pub fn psi(&self, m: &Matrix) -> Result<Vec<usize>> {
        m.entries().iter().map(|x| self.class_of(x)).collect()
    }

    /// Product of class-index matrices over the quotient tables.
    pub fn psi_mul(&self, n: usize, a: &[usize], b: &[usize]) -> Vec<usize> {
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.mul[a[i * n]][b[j]];
                for k in 1..n {
                    acc = self.add[acc][self.mul[a[i * n + k]][b[k * n + j]]];
                }
                out.push(acc);
            }
        }
        out
    }
}

fn chain_size(s: &Semiring) -> Option<usize> {
    if s.adjoined_zero() {
        return None;
    }
    match s.family() {
        Family::Chain { size } => Some(*size),
        Family::Boolean => Some(2),
        _ => None,
    }
}

/// Singletons for the elements of `X` and maximal runs between them.
pub fn chain_congruence(semiring: &Semiring, x: &[Scalar]) -> Result<CongruenceQuotient> {
    let size = chain_size(semiring).ok_or_else(|| Error::BadParams(format!("{semiring} is not a finite chain")))?;
    let mut protected = BTreeSet::new();
    for a in x {
        match a {
            Scalar::Atom(i) if *i < size => {
                protected.insert(*i);
            }
            other => return Err(semiring.domain_error(other)),
        }
    }
    let mut classes = Vec::new();
    let mut run_start: Option<usize> = None;
    for i in 0..size {
        if protected.contains(&i) {
            if let Some(lo) = run_start.take() {
                classes.push(ClassDescriptor::Interval { lo: Scalar::Atom(lo), hi: Scalar::Atom(i - 1), lo_open: false, hi_open: false });
            }
            classes.push(ClassDescriptor::Singleton { value: Scalar::Atom(i) });
        } else if run_start.is_none() {
            run_start = Some(i);
        }
    }
    if let Some(lo) = run_start {
        classes.push(ClassDescriptor::Interval { lo: Scalar::Atom(lo), hi: Scalar::Atom(size - 1), lo_open: false, hi_open: false });
    }
    CongruenceQuotient::from_classes(semiring.clone(), classes)
}

/// For `T_[x,y]` with `0 < x` and `y <= 2x` (any product of interval
/// elements saturates at `y`): singletons for `X ∪ {0, -∞}` and the open
/// pieces of `[x, y]` between them.
pub fn trunc12_congruence(semiring: &Semiring, x: &[Scalar]) -> Result<CongruenceQuotient> {
    let (lo, hi) = match (semiring.family(), semiring.adjoined_zero()) {
        (Family::Trunc { x, y }, false) if x.is_positive() && *y <= x * &Rational::from(2) => (x.clone(), y.clone()),
        _ => return Err(Error::BadParams(format!("{semiring} is not a truncated semiring with y <= 2x"))),
    };
    let mut points = BTreeSet::new();
    for a in x {
        if !semiring.contains(a) {
            return Err(semiring.domain_error(a));
        }
        if let Scalar::Rat(r) = a {
            if !r.is_zero() {
                points.insert(r.clone());
            }
        }
    }
    let mut classes = vec![ClassDescriptor::Singleton { value: Scalar::NegInf }, ClassDescriptor::Singleton { value: Scalar::int(0) }];
    let mut cursor = (lo, false);
    for p in points.iter() {
        if *p > cursor.0 || (*p == cursor.0 && cursor.1) {
            classes.push(ClassDescriptor::Interval { lo: cursor.0.clone().into(), hi: p.clone().into(), lo_open: cursor.1, hi_open: true });
        }
        classes.push(ClassDescriptor::Singleton { value: p.clone().into() });
        cursor = (p.clone(), true);
    }
    if cursor.0 < hi || !cursor.1 {
        classes.push(ClassDescriptor::Interval { lo: cursor.0.into(), hi: hi.into(), lo_open: cursor.1, hi_open: false });
    }
    CongruenceQuotient::from_classes(semiring.clone(), classes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CongruenceMode {
    Exhaustive,
    Sampled { seed: u64, trials: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: &'static str,
    pub passed: bool,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub mode: CongruenceMode,
    pub classes: usize,
    pub passed: bool,
    pub laws: Vec<LawCheck>,
}

/// Check that the class of `a ⊕ c` and `a ⊗ c` depends only on the classes
/// of `a` and `c`, by comparing against the tables built from representatives.
pub fn verify_congruence(q: &CongruenceQuotient, mode: CongruenceMode) -> Result<CongruenceReport> {
    let s = &q.source;
    let mut add = LawCheck { law: "add_compatible", passed: true, cases: 0, counterexample: None };
    let mut mul = LawCheck { law: "mul_compatible", passed: true, cases: 0, counterexample: None };
    let mut check = |a: &Scalar, c: &Scalar| -> Result<()> {
        let (ia, ic) = (q.class_of(a)?, q.class_of(c)?);
        let (ra, rc) = (&q.representatives[ia], &q.representatives[ic]);
        for (law, value, expected) in [(&mut add, s.add(a, c)?, q.add[ia][ic]), (&mut mul, s.mul(a, c)?, q.mul[ia][ic])] {
            law.cases += 1;
            if law.passed && q.class_of(&value)? != expected {
                law.passed = false;
                law.counterexample = Some(vec![a.clone(), c.clone(), ra.clone(), rc.clone()]);
            }
        }
        Ok(())
    };
    match mode {
        CongruenceMode::Exhaustive => {
            let carrier = s.carrier().ok_or_else(|| Error::InfeasibleExhaustive(s.to_string()))?;
            for a in &carrier {
                for c in &carrier {
                    check(a, c)?;
                }
            }
        }
        CongruenceMode::Sampled { seed, trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for r in &q.representatives.clone() {
                for t in &q.representatives.clone() {
                    check(r, t)?;
                }
            }
            for _ in 0..trials {
                let (a, c) = (s.sample(&mut rng), s.sample(&mut rng));
                check(&a, &c)?;
            }
        }
    }
    let lawful = LawCheck { law: "quotient_is_semiring", passed: q.table().is_ok(), cases: 1, counterexample: None };
    let laws = vec![add, mul, lawful];
    Ok(CongruenceReport { mode, classes: q.len(), passed: laws.iter().all(|l| l.passed), laws })
}

/// `q^(n²) + 1`: any longer sequence has two matrices with equal images in
/// `M_n` of a `q`-element quotient.
pub fn kerperm_bound(quot_size: u64, n: u32) -> BigUint {
    BigUint::from(quot_size).pow(n * n) + BigUint::one()
}

/// Outcome of [`kerperm_find_swap`] with the data behind it.
#[derive(Debug, Clone, Serialize)]
pub struct KernelSwap {
    pub witness: PermutationWitness,
    /// Distinct entries of the full product, each isolated in its own class.
    pub protected: Vec<Scalar>,
    pub classes: usize,
    /// Class-count bound from the construction (`2|X| + 1` or `2|X| + 3`).
    pub class_bound: u64,
    pub required_length: String,
}

/// Isolate the entries of the full product in a finite quotient, map every
/// matrix through it, and swap the first pair with equal images.
pub fn kerperm_find_swap(seq: &[Matrix]) -> Result<KernelSwap> {
    let total = seq_product(seq)?;
    if total.family() != MatrixFamily::Full {
        return Err(Error::UnsupportedFamily("the quotient argument is stated for full matrices".into()));
    }
    let s = total.semiring();
    let protected: Vec<Scalar> = total.entries().iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let (q, class_bound) = if chain_size(s).is_some() {
        (chain_congruence(s, &protected)?, 2 * protected.len() as u64 + 1)
    } else {
        let x: Vec<Scalar> = protected.iter().filter(|a| !matches!(a, Scalar::NegInf) && **a != Scalar::int(0)).cloned().collect();
        (trunc12_congruence(s, &protected)?, 2 * x.len() as u64 + 3)
    };
    let n = total.n();
    let required = kerperm_bound(q.len() as u64, n as u32);
    if BigUint::from(seq.len()) < required {
        return Err(Error::LengthTooShort { len: seq.len(), required: required.to_string() });
    }
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut pair = None;
    for (j, m) in seq.iter().enumerate() {
        let image = q.psi(m)?;
        if let Some(&i) = seen.get(&image) {
            pair = Some((i, j));
            break;
        }
        seen.insert(image, j);
    }
    let (i, j) = pair.ok_or(Error::NoPairFound)?;
    let perm = Permutation::transposition(seq.len(), i, j);
    if apply_perm_product(seq, &perm)? != total {
        return Err(Error::VerificationFailed(format!("swapping {i} and {j} changed the product")));
    }
    Ok(KernelSwap {
        witness: PermutationWitness::found(perm, Strategy::Kernel),
        protected,
        classes: q.len(),
        class_bound,
        required_length: required.to_string(),
    })
}

/// Which of the two pattern subsemigroups a sequence lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum XPattern {
    /// `[[0, a], [-∞, b]]`.
    Upper,
    /// `[[0, -∞], [a, b]]`, the transpose of `Upper`.
    Lower,
}

/// Which step of the case analysis produced the swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum XCase {
    RightZero,
    AdjacentDiagonal,
    AdjacentUnitriangular,
    LeftZero,
}

#[derive(Debug, Clone, Serialize)]
pub struct XPermResult {
    pub witness: PermutationWitness,
    pub pattern: XPattern,
    pub case: XCase,
}

fn matches_upper(m: &Matrix) -> bool {
    m.n() == 2 && *m.get(0, 0) == Scalar::int(0) && *m.get(1, 0) == Scalar::NegInf
}

fn trunc_one_z(s: &Semiring) -> bool {
    matches!(s.family(), Family::Trunc { x, .. } if *x == Rational::one()) && !s.adjoined_zero()
}

/// Find a product-preserving transposition for matrices of `M_2(T_[1,z])`
/// all of the form `[[0, a], [-∞, b]]` (or all of the transposed form).
pub fn xperm_find(seq: &[Matrix]) -> Result<XPermResult> {
    let first = seq.first().ok_or(Error::EmptySequence)?;
    if !trunc_one_z(first.semiring()) || first.family() != MatrixFamily::Full {
        return Err(Error::PatternMismatch { index: 0, reason: format!("expected full matrices over T[1,z], found {first:?}") });
    }
    // Diagonal matrices fit both shapes; the first one that does not decides.
    let pattern = match seq.iter().find(|m| !matches_upper(m) || m.transpose().map_or(true, |t| !matches_upper(&t))) {
        Some(m) if !matches_upper(m) => XPattern::Lower,
        _ => XPattern::Upper,
    };
    let upper: Vec<Matrix> = match pattern {
        XPattern::Upper => seq.to_vec(),
        // Reversing and transposing turns products into transposed products.
        XPattern::Lower => seq.iter().rev().map(Matrix::transpose).collect::<Result<_>>()?,
    };
    for (t, m) in upper.iter().enumerate() {
        if m.semiring() != first.semiring() || !matches_upper(m) {
            let index = match pattern {
                XPattern::Upper => t,
                XPattern::Lower => seq.len() - 1 - t,
            };
            let reason = match pattern {
                XPattern::Upper => "expected [[0, a], [-inf, b]]",
                XPattern::Lower => "expected [[0, -inf], [a, b]]",
            };
            return Err(Error::PatternMismatch { index, reason: reason.into() });
        }
    }
    let (perm, case) = xperm_upper(&upper)?;
    let perm = match pattern {
        XPattern::Upper => perm,
        XPattern::Lower => {
            let k = seq.len();
            let images = (0..k).map(|s| k - 1 - perm.images()[k - 1 - s]).collect();
            Permutation::new(images)?
        }
    };
    if apply_perm_product(seq, &perm)? != seq_product(seq)? {
        return Err(Error::CaseFallthrough(format!("{case:?} swap {perm} did not preserve the product")));
    }
    Ok(XPermResult { witness: PermutationWitness::found(perm, Strategy::Pattern), pattern, case })
}

fn xperm_upper(seq: &[Matrix]) -> Result<(Permutation, XCase)> {
    let k = seq.len();
    if k < 3 {
        return Err(Error::CaseFallthrough(format!("a sequence of length {k} is too short for the case analysis")));
    }
    let (ni, zero) = (Scalar::NegInf, Scalar::int(0));
    if seq[2..].iter().any(|m| *m.get(1, 1) == ni) {
        return Ok((Permutation::transposition(k, 0, 1), XCase::RightZero));
    }
    if let Some(t) = (0..k - 1).find(|&t| *seq[t].get(0, 1) == ni && *seq[t + 1].get(0, 1) == ni) {
        return Ok((Permutation::transposition(k, t, t + 1), XCase::AdjacentDiagonal));
    }
    if let Some(t) = (0..k - 1).find(|&t| *seq[t].get(1, 1) == zero && *seq[t + 1].get(1, 1) == zero) {
        return Ok((Permutation::transposition(k, t, t + 1), XCase::AdjacentUnitriangular));
    }
    let perm = Permutation::transposition(k, k - 2, k - 1);
    if apply_perm_product(seq, &perm)? != seq_product(seq)? {
        return Err(Error::CaseFallthrough("the prefix does not act as a left zero".into()));
    }
    Ok((perm, XCase::LeftZero))
}

/// `2⌈z⌉ + 5`.
pub fn xperm_length(z: &Rational) -> BigUint {
    let c = z.ceil().to_biguint().expect("z is positive");
    c * 2u32 + 5u32
}

/// `17(16⌈z⌉ + 45)`.
pub fn mideal_bound(z: &Rational) -> BigUint {
    let c = z.ceil().to_biguint().expect("z is positive");
    (c * 16u32 + 45u32) * 17u32
}

/// `17(4⌈z⌉ + 1)(16⌈z⌉ + 45)`.
pub fn truncperm_bound(z: &Rational) -> BigUint {
    let c = z.ceil().to_biguint().expect("z is positive");
    (&c * 4u32 + 1u32) * (c * 16u32 + 45u32) * 17u32
}

/// Uniform sampler over `M_n` of a semiring, entrywise via [`Semiring::sample`].
pub fn random_matrix<R: rand::Rng + ?Sized>(s: &Arc<Semiring>, n: usize, rng: &mut R) -> Matrix {
    let entries = (0..n * n).map(|_| s.sample(rng)).collect();
    Matrix::new(s.clone(), MatrixFamily::Full, n, entries).expect("sampled entries lie in the carrier")
}

/// A random element of the upper pattern subsemigroup `[[0, a], [-∞, b]]`.
pub fn random_upper_pattern<R: rand::Rng + ?Sized>(s: &Arc<Semiring>, rng: &mut R) -> Matrix {
    let rows = vec![vec![Scalar::int(0), s.sample(rng)], vec![Scalar::NegInf, s.sample(rng)]];
    Matrix::from_rows(s.clone(), MatrixFamily::Full, rows).expect("sampled entries lie in the carrier")
}
