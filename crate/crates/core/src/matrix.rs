//! Square matrices over a bipotent semiring in three families: full `M_n`,
//! upper triangular `UT_n` and unitriangular `U_n`.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::semiring::{Scalar, Semiring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixFamily {
    #[serde(rename = "full")]
    Full,
    /// Zero below the diagonal, elements of `S` on and above it.
    #[serde(rename = "ut")]
    UpperTriangular,
    /// Zero below, the (adjoined) identity on, and elements of `S` above the diagonal.
    #[serde(rename = "uni")]
    Unitriangular,
}

impl fmt::Display for MatrixFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixFamily::Full => "full",
            MatrixFamily::UpperTriangular => "ut",
            MatrixFamily::Unitriangular => "uni",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    semiring: Arc<Semiring>,
    family: MatrixFamily,
    entries: Vec<Scalar>,
}

impl Matrix {
    /// Build and validate an `n x n` matrix from row-major entries.
    ///
    /// Triangular families live over `S^0`, so a zero is adjoined when the
    /// semiring lacks one.
    pub fn new(semiring: Arc<Semiring>, family: MatrixFamily, n: usize, entries: Vec<Scalar>) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadDimension("matrices must be at least 1x1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::InvalidMatrix(format!("expected {} entries, found {}", n * n, entries.len())));
        }
        let semiring = match family {
            MatrixFamily::Full => semiring,
            _ if semiring.zero().is_some() => semiring,
            _ => Arc::new(semiring.adjoin_zero()),
        };
        let m = Matrix { n, semiring, family, entries };
        m.validate()?;
        Ok(m)
    }

    pub fn from_rows(semiring: Arc<Semiring>, family: MatrixFamily, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("rows must form a square".into()));
        }
        Self::new(semiring, family, n, rows.into_iter().flatten().collect())
    }

    fn validate(&self) -> Result<()> {
        let s = &self.semiring;
        let zero = s.zero();
        let proper = |x: &Scalar| s.contains(x) && !(s.adjoined_zero() && *x == Scalar::NegInf);
        for i in 0..self.n {
            for j in 0..self.n {
                let x = self.get(i, j);
                let ok = match self.family {
                    MatrixFamily::Full => s.contains(x),
                    _ if i > j => Some(x) == zero.as_ref(),
                    MatrixFamily::Unitriangular if i == j => *x == Scalar::AdjoinedId,
                    _ => proper(x),
                };
                if !ok {
                    return Err(Error::InvalidMatrix(format!("entry ({i}, {j}) = {x} is not allowed in a {} matrix over {s}", self.family)));
                }
            }
        }
        Ok(())
    }

    /// The unitriangular matrix with zero everywhere off the diagonal. Only
    /// exists when the zero belongs to `S` itself.
    pub fn unit(semiring: Arc<Semiring>, n: usize) -> Result<Self> {
        let zero = match semiring.zero() {
            Some(z) if !semiring.adjoined_zero() => z,
            _ => return Err(Error::UnsupportedFamily(format!("{semiring} has no zero to place above the diagonal"))),
        };
        let entries = (0..n * n).map(|k| if k / n == k % n { Scalar::AdjoinedId } else { zero.clone() }).collect();
        Self::new(semiring, MatrixFamily::Unitriangular, n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn semiring(&self) -> &Semiring {
        &self.semiring
    }

    pub fn semiring_arc(&self) -> &Arc<Semiring> {
        &self.semiring
    }

    pub fn family(&self) -> MatrixFamily {
        self.family
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    fn check_compatible(&self, other: &Matrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        if !Arc::ptr_eq(&self.semiring, &other.semiring) && self.semiring != other.semiring {
            return Err(Error::SemiringMismatch);
        }
        if self.family != other.family {
            return Err(Error::FamilyMismatch(self.family.to_string(), other.family.to_string()));
        }
        Ok(())
    }

    /// `(AB)_ij = ⊕_k A_ik ⊗ B_kj`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        let n = self.n;
        let s = &*self.semiring;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = s.mul_unchecked(self.get(i, 0), other.get(0, j));
                for k in 1..n {
                    let term = s.mul_unchecked(self.get(i, k), other.get(k, j));
                    acc = s.add_unchecked(&acc, &term)?;
                }
                entries.push(acc);
            }
        }
        Ok(Matrix { n, semiring: self.semiring.clone(), family: self.family, entries })
    }

    /// Entrywise `⊕`.
    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        let s = &*self.semiring;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| s.add_unchecked(a, b)).collect::<Result<_>>()?;
        Ok(Matrix { n: self.n, semiring: self.semiring.clone(), family: self.family, entries })
    }

    pub fn transpose(&self) -> Result<Matrix> {
        if self.family != MatrixFamily::Full {
            return Err(Error::UnsupportedFamily(format!("transpose of a {} matrix", self.family)));
        }
        let n = self.n;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        Ok(Matrix { n, semiring: self.semiring.clone(), family: self.family, entries })
    }

    /// Top-left `m x m` corner; a homomorphism on the triangular families.
    pub fn project_topleft(&self, m: usize) -> Result<Matrix> {
        if self.family == MatrixFamily::Full {
            return Err(Error::UnsupportedFamily("corner projection is only a homomorphism on triangular matrices".into()));
        }
        if m == 0 || m > self.n {
            return Err(Error::BadDimension(format!("cannot project a {0}x{0} matrix to {m}x{m}", self.n)));
        }
        let entries = (0..m * m).map(|k| self.get(k / m, k % m).clone()).collect();
        Ok(Matrix { n: m, semiring: self.semiring.clone(), family: self.family, entries })
    }

    /// Replace every entry with `f(entry)` and revalidate against a new semiring and family.
    pub fn map_entries(&self, semiring: Arc<Semiring>, family: MatrixFamily, f: impl FnMut(&Scalar) -> Scalar) -> Result<Matrix> {
        Matrix::new(semiring, family, self.n, self.entries.iter().map(f).collect())
    }
}

fn check_uniform(seq: &[Matrix]) -> Result<&Matrix> {
    let first = seq.first().ok_or(Error::EmptySequence)?;
    for m in &seq[1..] {
        first.check_compatible(m)?;
    }
    Ok(first)
}

/// Left-associated product `seq[0] seq[1] ⋯ seq[k-1]`.
pub fn seq_product(seq: &[Matrix]) -> Result<Matrix> {
    check_uniform(seq)?;
    let mut acc = seq[0].clone();
    for m in &seq[1..] {
        acc = acc.mul(m)?;
    }
    Ok(acc)
}

/// Same value as [`seq_product`], computed as chunk products in parallel.
pub fn seq_product_parallel(seq: &[Matrix]) -> Result<Matrix> {
    const CHUNK: usize = 512;
    if seq.len() <= CHUNK {
        return seq_product(seq);
    }
    check_uniform(seq)?;
    let partials = seq.par_chunks(CHUNK).map(seq_product).collect::<Result<Vec<_>>>()?;
    seq_product(&partials)
}

/// Prefix and suffix products of a sequence.
///
/// `prefixes[i]` is the product of `seq[..i]` (`None` for the empty product
/// at `i = 0`); `suffixes[i]` is the product of `seq[i..]`.
#[derive(Debug, Clone)]
pub struct PrefixSuffix {
    pub prefixes: Vec<Option<Matrix>>,
    pub suffixes: Vec<Matrix>,
}

impl PrefixSuffix {
    pub fn total(&self) -> &Matrix {
        &self.suffixes[0]
    }

    /// The prefix before `i` times `middle` times the suffix from `j`, with
    /// absent ends treated as the identity.
    pub fn splice(&self, i: usize, middle: &Matrix, j: usize) -> Result<Matrix> {
        let left = match &self.prefixes[i] {
            Some(p) => p.mul(middle)?,
            None => middle.clone(),
        };
        match self.suffixes.get(j) {
            Some(s) => left.mul(s),
            None => Ok(left),
        }
    }
}

pub fn prefix_suffix_products(seq: &[Matrix]) -> Result<PrefixSuffix> {
    check_uniform(seq)?;
    let k = seq.len();
    let mut prefixes: Vec<Option<Matrix>> = Vec::with_capacity(k);
    prefixes.push(None);
    for i in 1..k {
        let next = match &prefixes[i - 1] {
            Some(p) => p.mul(&seq[i - 1])?,
            None => seq[i - 1].clone(),
        };
        prefixes.push(Some(next));
    }
    let mut suffixes = vec![seq[k - 1].clone(); k];
    for i in (0..k - 1).rev() {
        suffixes[i] = seq[i].mul(&suffixes[i + 1])?;
    }
    Ok(PrefixSuffix { prefixes, suffixes })
}

/// Embed full `m x m` matrices into `n x n` ones by filling the new rows and
/// columns with the least entry `z` found anywhere in the sequence. The
/// top-left corner of any product of the padded matrices is the product of
/// the originals.
pub fn pad_sequence(seq: &[Matrix], n: usize) -> Result<Vec<Matrix>> {
    let first = check_uniform(seq)?;
    if first.family != MatrixFamily::Full {
        return Err(Error::UnsupportedFamily("padding applies to full matrices".into()));
    }
    let m = first.n;
    if n <= m {
        return Err(Error::BadDimension(format!("padding target {n} must exceed the current dimension {m}")));
    }
    let s = &*first.semiring;
    let mut z = first.get(0, 0).clone();
    for x in seq.iter().flat_map(|a| a.entries.iter()) {
        if s.compare(x, &z)? == std::cmp::Ordering::Less {
            z = x.clone();
        }
    }
    seq.iter()
        .map(|a| {
            let entries = (0..n * n)
                .map(|k| {
                    let (i, j) = (k / n, k % n);
                    if i < m && j < m { a.get(i, j).clone() } else { z.clone() }
                })
                .collect();
            Matrix::new(first.semiring.clone(), MatrixFamily::Full, n, entries)
        })
        .collect()
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} over {}", self.family, self, self.semiring)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    family: MatrixFamily,
    semiring: Semiring,
    entries: Vec<Vec<Scalar>>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixRepr { n: self.n, family: self.family, semiring: (*self.semiring).clone(), entries: self.rows() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.entries.len() != repr.n {
            return Err(D::Error::custom(format!("expected {} rows, found {}", repr.n, repr.entries.len())));
        }
        Matrix::from_rows(Arc::new(repr.semiring), repr.family, repr.entries).map_err(D::Error::custom)
    }
}
