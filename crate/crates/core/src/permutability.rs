//! Products under reordering, searches for product-preserving permutations,
//! and the path assignment `π` used in the weak permutability argument.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{prefix_suffix_products, seq_product, Matrix, MatrixFamily, PrefixSuffix};
use crate::Scalar;

/// Seed used whenever the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5EED_0B1F;

/// A bijection on `0..k`. The permuted product is `M_{σ(0)} M_{σ(1)} ⋯ M_{σ(k-1)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection on 0..{}", images.len())));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(k: usize) -> Self {
        Permutation((0..k).collect())
    }

    /// The permutation exchanging positions `i` and `j`.
    pub fn transposition(k: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(k);
        p.0.swap(i, j);
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn kind(&self) -> WitnessKind {
        let moved: Vec<usize> = (0..self.0.len()).filter(|&i| self.0[i] != i).collect();
        match moved[..] {
            [a, b] if b == a + 1 => WitnessKind::AdjacentTransposition,
            [_, _] => WitnessKind::Transposition,
            _ => WitnessKind::General,
        }
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    AdjacentTransposition,
    Transposition,
    General,
}

/// Which search found a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    EqualPair,
    Adjacent,
    Transposition,
    Random,
    Exhaustive,
    /// Pigeonhole on images in a finite congruence quotient.
    Kernel,
    /// Case analysis for the two-by-two subsemigroups with a fixed pattern.
    Pattern,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermutationWitness {
    /// Exhaustive enumeration showed only the identity preserves the product.
    IdentityOnly { k: usize },
    Found { perm: Permutation, kind: WitnessKind, strategy: Strategy },
    NoneFound { policy: SearchPolicy },
}

impl PermutationWitness {
    pub fn found(perm: Permutation, strategy: Strategy) -> Self {
        PermutationWitness::Found { kind: perm.kind(), perm, strategy }
    }

    pub fn perm(&self) -> Option<&Permutation> {
        match self {
            PermutationWitness::Found { perm, .. } => Some(perm),
            _ => None,
        }
    }

    pub fn strategy(&self) -> Option<Strategy> {
        match self {
            PermutationWitness::Found { strategy, .. } => Some(*strategy),
            PermutationWitness::IdentityOnly { .. } => Some(Strategy::Exhaustive),
            PermutationWitness::NoneFound { .. } => None,
        }
    }
}

impl Serialize for PermutationWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PermutationWitness", 4)?;
        match self {
            PermutationWitness::IdentityOnly { k } => {
                st.serialize_field("kind", "identity_only")?;
                st.serialize_field("k", k)?;
                st.serialize_field("strategy", &Strategy::Exhaustive)?;
            }
            PermutationWitness::Found { perm, kind, strategy } => {
                st.serialize_field("kind", "found")?;
                st.serialize_field("perm", perm)?;
                st.serialize_field("strategy", strategy)?;
                st.serialize_field("shape", kind)?;
            }
            PermutationWitness::NoneFound { policy } => {
                st.serialize_field("kind", "none")?;
                st.serialize_field("policy", policy)?;
            }
        }
        st.end()
    }
}

/// Which searches to run, in their fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchPolicy {
    pub exhaustive_cap: usize,
    pub try_equal_pair: bool,
    pub try_adjacent: bool,
    pub try_all_transpositions: bool,
    pub random_trials: u64,
    pub seed: u64,
}

impl Default for SearchPolicy {
    fn default() -> Self {
        SearchPolicy {
            exhaustive_cap: 8,
            try_equal_pair: true,
            try_adjacent: true,
            try_all_transpositions: true,
            random_trials: 1000,
            seed: DEFAULT_SEED,
        }
    }
}

impl SearchPolicy {
    /// Only the linear-time strategies.
    pub fn cheap() -> Self {
        SearchPolicy { exhaustive_cap: 0, try_all_transpositions: false, random_trials: 0, ..Self::default() }
    }
}

/// Beyond this length the all-transpositions search is skipped.
pub const TRANSPOSITION_SEARCH_LIMIT: usize = 2048;

pub fn apply_perm_product(seq: &[Matrix], sigma: &Permutation) -> Result<Matrix> {
    if sigma.len() != seq.len() {
        return Err(Error::LengthMismatch { expected: seq.len(), found: sigma.len() });
    }
    let ordered: Vec<Matrix> = sigma.images().iter().map(|&i| seq[i].clone()).collect();
    seq_product(&ordered)
}

/// Whether `sigma` preserves the product, compared against a known total.
fn preserves(seq: &[Matrix], sigma: &Permutation, total: &Matrix) -> Result<bool> {
    Ok(apply_perm_product(seq, sigma)? == *total)
}

pub fn find_preserving_permutation(seq: &[Matrix], policy: &SearchPolicy) -> Result<PermutationWitness> {
    let k = seq.len();
    if k < 2 {
        return Err(Error::LengthMismatch { expected: 2, found: k });
    }
    let total = seq_product(seq)?;
    let verified = |perm: Permutation, strategy: Strategy| -> Result<Option<PermutationWitness>> {
        if preserves(seq, &perm, &total)? {
            Ok(Some(PermutationWitness::found(perm, strategy)))
        } else {
            Ok(None)
        }
    };

    if policy.try_equal_pair {
        if let Some((i, j)) = first_equal_pair(seq) {
            if let Some(w) = verified(Permutation::transposition(k, i, j), Strategy::EqualPair)? {
                return Ok(w);
            }
        }
    }

    let ps = if policy.try_adjacent || (policy.try_all_transpositions && k <= TRANSPOSITION_SEARCH_LIMIT) {
        Some(prefix_suffix_products(seq)?)
    } else {
        None
    };

    if policy.try_adjacent {
        let ps = ps.as_ref().expect("computed above");
        for t in 0..k - 1 {
            let middle = seq[t + 1].mul(&seq[t])?;
            if ps.splice(t, &middle, t + 2)? == total {
                if let Some(w) = verified(Permutation::transposition(k, t, t + 1), Strategy::Adjacent)? {
                    return Ok(w);
                }
            }
        }
    }

    if policy.try_all_transpositions && k <= TRANSPOSITION_SEARCH_LIMIT {
        let ps = ps.as_ref().expect("computed above");
        let hit = (0..k - 1).into_par_iter().find_map_first(|i| match first_transposition_from(seq, ps, &total, i) {
            Ok(Some(j)) => Some(Ok((i, j))),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        });
        if let Some(pair) = hit {
            let (i, j) = pair?;
            if let Some(w) = verified(Permutation::transposition(k, i, j), Strategy::Transposition)? {
                return Ok(w);
            }
        }
    }

    if policy.random_trials > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
        let mut images: Vec<usize> = (0..k).collect();
        for _ in 0..policy.random_trials {
            images.shuffle(&mut rng);
            let perm = Permutation(images.clone());
            if perm.is_identity() {
                continue;
            }
            if let Some(w) = verified(perm, Strategy::Random)? {
                return Ok(w);
            }
        }
    }

    if k <= policy.exhaustive_cap {
        return Ok(match exhaustive_search(seq, &total)? {
            Some(perm) => PermutationWitness::found(perm, Strategy::Exhaustive),
            None => PermutationWitness::IdentityOnly { k },
        });
    }

    Ok(PermutationWitness::NoneFound { policy: policy.clone() })
}

/// Least `j > i + 1` such that swapping `i` and `j` preserves the product.
fn first_transposition_from(seq: &[Matrix], ps: &PrefixSuffix, total: &Matrix, i: usize) -> Result<Option<usize>> {
    // `inner` is the product of seq[i+1..j].
    let mut inner = seq[i + 1].clone();
    for j in i + 2..seq.len() {
        let middle = seq[j].mul(&inner)?.mul(&seq[i])?;
        if ps.splice(i, &middle, j + 1)? == *total {
            return Ok(Some(j));
        }
        inner = inner.mul(&seq[j])?;
    }
    Ok(None)
}

/// First pair `i < j` with `seq[i] == seq[j]`, ordered by `j` then `i`.
pub fn first_equal_pair(seq: &[Matrix]) -> Option<(usize, usize)> {
    let mut seen: HashMap<&Matrix, usize> = HashMap::with_capacity(seq.len());
    for (j, m) in seq.iter().enumerate() {
        if let Some(&i) = seen.get(m) {
            return Some((i, j));
        }
        seen.insert(m, j);
    }
    None
}

/// Lexicographically first non-identity permutation preserving the product.
fn exhaustive_search(seq: &[Matrix], total: &Matrix) -> Result<Option<Permutation>> {
    let k = seq.len();
    let results: Vec<Result<Option<Vec<usize>>>> = (0..k)
        .into_par_iter()
        .map(|first| {
            let mut used = vec![false; k];
            used[first] = true;
            let mut order = vec![first];
            dfs(seq, total, &mut used, &mut order, &seq[first].clone())
        })
        .collect();
    for r in results {
        if let Some(images) = r? {
            return Ok(Some(Permutation(images)));
        }
    }
    Ok(None)
}

fn dfs(seq: &[Matrix], total: &Matrix, used: &mut [bool], order: &mut Vec<usize>, prefix: &Matrix) -> Result<Option<Vec<usize>>> {
    let k = seq.len();
    if order.len() == k {
        let identity = order.iter().enumerate().all(|(i, &j)| i == j);
        return Ok((!identity && prefix == total).then(|| order.clone()));
    }
    for next in 0..k {
        if used[next] {
            continue;
        }
        used[next] = true;
        order.push(next);
        let extended = prefix.mul(&seq[next])?;
        let found = dfs(seq, total, used, order, &extended)?;
        order.pop();
        used[next] = false;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// True iff no non-identity permutation preserves the product.
pub fn exhaustive_identity_only(seq: &[Matrix], cap: usize) -> Result<bool> {
    if seq.len() > cap {
        return Err(Error::CapExceeded { k: seq.len(), cap });
    }
    let total = seq_product(seq)?;
    Ok(exhaustive_search(seq, &total)?.is_none())
}

/// Lexicographic enumeration of all permutations of `0..k`.
pub fn all_permutations(k: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..k).collect();
    loop {
        out.push(Permutation(images.clone()));
        // Next permutation in lexicographic order.
        let Some(i) = (1..k).rev().find(|&i| images[i - 1] < images[i]) else { break };
        let j = (i..k).rev().find(|&j| images[j] > images[i - 1]).expect("successor exists");
        images.swap(i - 1, j);
        images[i..].reverse();
    }
    out
}

/// For each position `i` of the original sequence, the edge of `Γ_n`
/// (a pair of node indices) contributed by `M_i` to each target entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PathAssignment {
    n: usize,
    /// `edges[i][x * n + y]`.
    edges: Vec<Vec<(usize, usize)>>,
}

impl PathAssignment {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, position: usize, x: usize, y: usize) -> (usize, usize) {
        self.edges[position][x * self.n + y]
    }
}

/// For every entry `(x, y)` of `M_σ`, pick the lexicographically least path
/// of intermediate nodes realizing it and hand each edge back to the
/// position of the matrix it was read from.
pub fn path_assignment(seq: &[Matrix], sigma: &Permutation) -> Result<PathAssignment> {
    let k = seq.len();
    if sigma.len() != k {
        return Err(Error::LengthMismatch { expected: k, found: sigma.len() });
    }
    let first = seq.first().ok_or(Error::EmptySequence)?;
    if first.family() != MatrixFamily::Full {
        return Err(Error::UnsupportedFamily("path assignments are defined for full matrices".into()));
    }
    seq_product(seq)?;
    let n = first.n();
    let s = first.semiring();
    let ordered: Vec<&Matrix> = sigma.images().iter().map(|&i| &seq[i]).collect();
    let mut edges = vec![vec![(0, 0); n * n]; k];

    for y in 0..n {
        // best[t][v]: largest weight of a path from v through steps t..k ending at y.
        let mut best: Vec<Vec<Scalar>> = vec![Vec::new(); k + 1];
        best[k] = Vec::new();
        let mut last = Vec::with_capacity(n);
        for v in 0..n {
            last.push(ordered[k - 1].get(v, y).clone());
        }
        best[k - 1] = last;
        for t in (0..k - 1).rev() {
            let mut row = Vec::with_capacity(n);
            for u in 0..n {
                let mut acc = s.mul_unchecked(ordered[t].get(u, 0), &best[t + 1][0]);
                for v in 1..n {
                    acc = s.add_unchecked(&acc, &s.mul_unchecked(ordered[t].get(u, v), &best[t + 1][v]))?;
                }
                row.push(acc);
            }
            best[t] = row;
        }
        for x in 0..n {
            let target = &best[0][x];
            let mut prefix: Option<Scalar> = None;
            let mut u = x;
            for t in 0..k {
                let v = if t == k - 1 {
                    y
                } else {
                    (0..n)
                        .find(|&v| {
                            let step = s.mul_unchecked(ordered[t].get(u, v), &best[t + 1][v]);
                            let whole = match &prefix {
                                Some(p) => s.mul_unchecked(p, &step),
                                None => step,
                            };
                            whole == *target
                        })
                        .expect("an argmax successor always exists")
                };
                let w = ordered[t].get(u, v);
                prefix = Some(match prefix {
                    Some(p) => s.mul_unchecked(&p, w),
                    None => w.clone(),
                });
                edges[sigma.images()[t]][x * n + y] = (u, v);
                u = v;
            }
        }
    }
    Ok(PathAssignment { n, edges })
}

/// Entry `(x, y)` is the product over positions `i` of `M_i` at the edge
/// assigned to `i`.
pub fn reconstruct_from_assignment(seq: &[Matrix], pa: &PathAssignment) -> Result<Matrix> {
    let first = seq.first().ok_or(Error::EmptySequence)?;
    if pa.k() != seq.len() || pa.n() != first.n() {
        return Err(Error::ShapeMismatch(format!(
            "assignment for {} matrices of size {}, sequence has {} of size {}",
            pa.k(),
            pa.n(),
            seq.len(),
            first.n()
        )));
    }
    let n = first.n();
    let s = first.semiring();
    let mut entries = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let mut acc: Option<Scalar> = None;
            for (i, m) in seq.iter().enumerate() {
                let (u, v) = pa.edge(i, x, y);
                let w = m.get(u, v);
                acc = Some(match acc {
                    Some(a) => s.mul_unchecked(&a, w),
                    None => w.clone(),
                });
            }
            entries.push(acc.expect("nonempty sequence"));
        }
    }
    Matrix::new(first.semiring_arc().clone(), first.family(), n, entries)
}

/// Least `k` with `k! > c^k` where `c = n^(2n²)` is the number of edge
/// matrices, found by an exact big-integer scan.
///
/// The scan runs to roughly `e·c`, which is only practical for `n <= 2`; the
/// `limit` guards against runaway loops and yields `None` when reached.
pub fn weak_bound(n: u32, limit: u64) -> Option<BigUint> {
    assert!(n >= 1, "dimension must be positive");
    let c = BigUint::from(n).pow(2 * n * n);
    let mut factorial = BigUint::one();
    let mut power = BigUint::one();
    for k in 1..=limit {
        factorial *= k;
        power *= &c;
        if factorial > power {
            return Some(BigUint::from(k));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::rational::Rational;
    use crate::Semiring;

    fn full(s: &Arc<Semiring>, rows: Vec<Vec<Scalar>>) -> Matrix {
        Matrix::from_rows(s.clone(), MatrixFamily::Full, rows).unwrap()
    }

    fn trunc13() -> Arc<Semiring> {
        Arc::new(Semiring::trunc(Rational::from(1), Rational::from(3)).unwrap())
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(p.inverse().images(), &[1, 2, 0]);
        assert_eq!(Permutation::transposition(4, 1, 2).kind(), WitnessKind::AdjacentTransposition);
        assert_eq!(Permutation::transposition(4, 0, 2).kind(), WitnessKind::Transposition);
        assert_eq!(p.kind(), WitnessKind::General);
        assert_eq!(all_permutations(4).len(), 24);
        assert_eq!(all_permutations(3)[1].images(), &[0, 2, 1]);
    }

    #[test]
    fn diagonal_matrices_commute() {
        let s = trunc13();
        let ni = Scalar::NegInf;
        let a = full(&s, vec![vec![Scalar::int(1), ni.clone()], vec![ni.clone(), Scalar::int(2)]]);
        let b = full(&s, vec![vec![Scalar::rat(3, 2), ni.clone()], vec![ni.clone(), Scalar::int(0)]]);
        let seq = [a, b];
        let swapped = apply_perm_product(&seq, &Permutation::new(vec![1, 0]).unwrap()).unwrap();
        assert_eq!(swapped, seq_product(&seq).unwrap());
        assert!(matches!(apply_perm_product(&seq, &Permutation::identity(3)), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn equal_pair_found_first() {
        let s = trunc13();
        let a = full(&s, vec![vec![Scalar::int(1), Scalar::int(2)], vec![Scalar::NegInf, Scalar::int(0)]]);
        let b = full(&s, vec![vec![Scalar::int(0), Scalar::NegInf], vec![Scalar::int(1), Scalar::int(1)]]);
        let w = find_preserving_permutation(&[a.clone(), a.clone(), b.clone()], &SearchPolicy::default()).unwrap();
        assert_eq!(w, PermutationWitness::found(Permutation::transposition(3, 0, 1), Strategy::EqualPair));
        assert!(!exhaustive_identity_only(&[a.clone(), a], 8).unwrap());
    }

    #[test]
    fn all_transpositions_agree_with_exhaustive() {
        // Tropical 1x1 matrices always commute, so every transposition works.
        let s = Arc::new(Semiring::tropical());
        let seq: Vec<Matrix> = [3, 1, 4].iter().map(|&v| full(&s, vec![vec![Scalar::int(v)]])).collect();
        let policy = SearchPolicy { try_equal_pair: false, try_adjacent: false, ..SearchPolicy::default() };
        let w = find_preserving_permutation(&seq, &policy).unwrap();
        assert_eq!(w.perm().unwrap(), &Permutation::transposition(3, 0, 2));
        assert_eq!(w.strategy(), Some(Strategy::Transposition));
        let only_exhaustive = SearchPolicy { try_equal_pair: false, try_adjacent: false, try_all_transpositions: false, random_trials: 0, ..SearchPolicy::default() };
        let w = find_preserving_permutation(&seq, &only_exhaustive).unwrap();
        assert_eq!(w.perm().unwrap().images(), &[0, 2, 1]);
    }

    #[test]
    fn cap_exceeded() {
        let s = Arc::new(Semiring::boolean());
        let seq = vec![full(&s, vec![vec![Scalar::Atom(1)]]); 9];
        assert!(matches!(exhaustive_identity_only(&seq, 8), Err(Error::CapExceeded { k: 9, cap: 8 })));
    }

    #[test]
    fn path_assignment_small_cases() {
        let s = Arc::new(Semiring::chain(4).unwrap());
        let a = full(&s, vec![vec![Scalar::Atom(3), Scalar::Atom(1)], vec![Scalar::Atom(2), Scalar::Atom(0)]]);
        let pa = path_assignment(std::slice::from_ref(&a), &Permutation::identity(1)).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(pa.edge(0, x, y), (x, y));
            }
        }
        let one = Arc::new(Semiring::tropical());
        let seq: Vec<Matrix> = [2, -1, 5].iter().map(|&v| full(&one, vec![vec![Scalar::int(v)]])).collect();
        let pa = path_assignment(&seq, &Permutation::new(vec![2, 0, 1]).unwrap()).unwrap();
        assert!((0..3).all(|i| pa.edge(i, 0, 0) == (0, 0)));
    }

    #[test]
    fn reconstruction_on_small_chain_instance() {
        let s = Arc::new(Semiring::chain(4).unwrap());
        let at = |v: usize| Scalar::Atom(v);
        let seq = vec![
            full(&s, vec![vec![at(3), at(1)], vec![at(2), at(0)]]),
            full(&s, vec![vec![at(0), at(2)], vec![at(3), at(1)]]),
            full(&s, vec![vec![at(1), at(3)], vec![at(2), at(2)]]),
        ];
        for sigma in all_permutations(3) {
            let pa = path_assignment(&seq, &sigma).unwrap();
            assert_eq!(reconstruct_from_assignment(&seq, &pa).unwrap(), apply_perm_product(&seq, &sigma).unwrap());
        }
    }

    #[test]
    fn weak_bound_values() {
        assert_eq!(weak_bound(1, 10), Some(BigUint::from(2u32)));
        let k = weak_bound(2, 10_000).unwrap();
        // Independent check via exact factorials.
        let k_u: u64 = k.to_string().parse().unwrap();
        let c = BigUint::from(256u32);
        let fact = |m: u64| (1..=m).fold(BigUint::one(), |acc, i| acc * i);
        assert!(fact(k_u) > c.pow(k_u as u32));
        assert!(fact(k_u - 1) <= c.pow(k_u as u32 - 1));
    }

    #[test]
    fn witness_json() {
        let w = PermutationWitness::found(Permutation::transposition(3, 0, 1), Strategy::EqualPair);
        let v = serde_json::to_value(&w).unwrap();
        assert_eq!(v["kind"], "found");
        assert_eq!(v["perm"], serde_json::json!([1, 0, 2]));
        assert_eq!(v["strategy"], "equal_pair");
        let v = serde_json::to_value(PermutationWitness::IdentityOnly { k: 5 }).unwrap();
        assert_eq!(v["kind"], "identity_only");
    }
}
