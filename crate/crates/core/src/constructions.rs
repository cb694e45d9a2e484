//! Explicit witness families: the bicyclic monoid inside `UT_2(T)`, the
//! lifts of tropical sequences into `ℕ_max`, and the sequences whose only
//! product-preserving permutation is the identity.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, MatrixFamily};
use crate::rational::Rational;
use crate::semiring::{Scalar, Semiring};

/// The bicyclic element `q^i p^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BicyclicElement {
    pub i: u64,
    pub j: u64,
}

impl BicyclicElement {
    pub const IDENTITY: BicyclicElement = BicyclicElement { i: 0, j: 0 };

    pub fn new(i: u64, j: u64) -> Self {
        BicyclicElement { i, j }
    }

    /// `q^i p^j · q^k p^l`, cancelling `pq = 1` in the middle.
    pub fn mul(self, other: BicyclicElement) -> BicyclicElement {
        let (j, k) = (self.j, other.i);
        BicyclicElement { i: self.i + k.saturating_sub(j), j: other.j + j.saturating_sub(k) }
    }

    /// `q^i p^j ↦ [[i - j, i + j], [-∞, j - i]]` in `UT_2(T)`.
    pub fn rho(self) -> Matrix {
        let (i, j) = (self.i as i64, self.j as i64);
        Matrix::from_rows(
            Arc::new(Semiring::tropical()),
            MatrixFamily::UpperTriangular,
            vec![vec![Scalar::int(i - j), Scalar::int(i + j)], vec![Scalar::NegInf, Scalar::int(j - i)]],
        )
        .expect("image lies in UT_2(T)")
    }
}

fn integer_entry(x: &Scalar) -> Result<Option<i64>> {
    match x {
        Scalar::NegInf => Ok(None),
        Scalar::Rat(r) => r.to_i64().filter(|_| r.is_integer()).map(Some).ok_or_else(|| Error::BadScale(format!("entry {r} is not an integer"))),
        other => Err(Error::BadScale(format!("entry {other} is not a tropical integer"))),
    }
}

fn check_tropical_ut2(seq: &[Matrix]) -> Result<()> {
    for (t, m) in seq.iter().enumerate() {
        if m.n() != 2 || m.family() != MatrixFamily::UpperTriangular || *m.semiring() != Semiring::tropical() {
            return Err(Error::BadParams(format!("matrix {t} is not in UT_2 over the tropical semiring")));
        }
    }
    Ok(())
}

fn shift(seq: &[Matrix], target: Semiring, offset: i64) -> Result<Vec<Matrix>> {
    check_tropical_ut2(seq)?;
    let target = Arc::new(target.adjoin_zero());
    seq.iter()
        .map(|m| {
            let entries = m
                .entries()
                .iter()
                .map(|x| {
                    Ok(match integer_entry(x)? {
                        None => Scalar::NegInf,
                        Some(e) => {
                            let v = Scalar::int(e + offset);
                            if !target.contains(&v) {
                                return Err(Error::BadScale(format!("{e} shifts to {v}, outside {target}")));
                            }
                            v
                        }
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Matrix::new(target.clone(), MatrixFamily::UpperTriangular, 2, entries)
        })
        .collect()
}

/// Tropically scale by `-λ` into `UT_2(ℕ_max)`: finite entries become
/// `e - λ`, and `-∞` becomes the adjoined zero. Needs `λ` below every entry.
pub fn lift_scale_ut2(seq: &[Matrix], lambda: i64) -> Result<Vec<Matrix>> {
    shift(seq, Semiring::nat_max(), -lambda)
}

/// Tropically scale by `-λ` into `UT_2((-ℕ)_max)`. Needs `λ` above every entry.
pub fn lift_scale_ut2_negative(seq: &[Matrix], lambda: i64) -> Result<Vec<Matrix>> {
    shift(seq, Semiring::neg_nat_max(), -lambda)
}

/// Least `μ` for which [`lift_to_full_nmax`] keeps upper-triangular paths
/// dominant: `(2k - 1) E + 2` with `E` the largest absolute entry.
pub fn min_full_lift_scale(seq: &[Matrix]) -> Result<i64> {
    check_tropical_ut2(seq)?;
    let mut e = 0i64;
    for m in seq {
        for x in m.entries() {
            if let Some(v) = integer_entry(x)? {
                e = e.max(v.abs());
            }
        }
    }
    Ok((2 * seq.len() as i64 - 1) * e + 2)
}

/// Scale an integer `UT_2(T)` sequence tropically by `μ` and replace the
/// `-∞` below the diagonal by `1`, giving full matrices over `ℕ_max` whose
/// permuted products agree with `kμ + M_σ` away from the lower-left corner.
pub fn lift_to_full_nmax(seq: &[Matrix], mu: i64) -> Result<Vec<Matrix>> {
    let required = min_full_lift_scale(seq)?;
    if mu < required {
        return Err(Error::BadScale(format!("scale {mu} is below the dominance bound {required}")));
    }
    let target = Arc::new(Semiring::nat_max());
    seq.iter()
        .map(|m| {
            let mut entries = Vec::with_capacity(4);
            for (idx, x) in m.entries().iter().enumerate() {
                entries.push(match (idx, integer_entry(x)?) {
                    (2, None) => Scalar::int(1),
                    (_, Some(e)) => Scalar::int(e + mu),
                    (_, None) => return Err(Error::BadScale("-∞ on or above the diagonal has no image in ℕ_max".into())),
                });
            }
            Matrix::new(target.clone(), MatrixFamily::Full, 2, entries)
        })
        .collect()
}

/// A generated sequence with the closed form of its full product.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessSequence {
    pub matrices: Vec<Matrix>,
    pub metadata: WitnessMetadata,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessMetadata {
    pub family: String,
    pub params: serde_json::Value,
    pub closed_form: Matrix,
}

fn check_length(m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::BadParams(format!("sequence length {m} must be at least 2")));
    }
    Ok(())
}

fn u3(semiring: &Arc<Semiring>, a: i64, b: i64, c: i64) -> Matrix {
    let (id, z) = (Scalar::AdjoinedId, Scalar::NegInf);
    Matrix::from_rows(
        semiring.clone(),
        MatrixFamily::Unitriangular,
        vec![vec![id.clone(), Scalar::int(a), Scalar::int(b)], vec![z.clone(), id.clone(), Scalar::int(c)], vec![z.clone(), z, id]],
    )
    .expect("entries lie in the semiring")
}

/// `B_i = [[1, i, m], [0, 1, m+1-i], [0, 0, 1]]` in `U_3(ℕ_max)`, `i = 1..m`.
pub fn witness_u3_nmax(m: u64) -> Result<Vec<Matrix>> {
    check_length(m)?;
    let s = Arc::new(Semiring::nat_max().adjoin_zero());
    let m = m as i64;
    Ok((1..=m).map(|i| u3(&s, i, m, m + 1 - i)).collect())
}

/// Product of the first `k` matrices of [`witness_u3_nmax`].
pub fn witness_u3_nmax_partial(m: u64, k: u64) -> Matrix {
    let s = Arc::new(Semiring::nat_max().adjoin_zero());
    u3(&s, k as i64, m as i64, m as i64)
}

/// `C_i = [[1, i-m-1, -m-2], [0, 1, -i], [0, 0, 1]]` in `U_3((-ℕ)_max)`.
pub fn witness_u3_negnmax(m: u64) -> Result<Vec<Matrix>> {
    check_length(m)?;
    let s = Arc::new(Semiring::neg_nat_max().adjoin_zero());
    let m = m as i64;
    Ok((1..=m).map(|i| u3(&s, i - m - 1, -m - 2, -i)).collect())
}

/// Product of the first `k` matrices of [`witness_u3_negnmax`].
pub fn witness_u3_negnmax_partial(m: u64, k: u64) -> Matrix {
    let s = Arc::new(Semiring::neg_nat_max().adjoin_zero());
    let (m, k) = (m as i64, k as i64);
    u3(&s, k - m - 1, -m - 2, -1)
}

/// The midpoint `(z - 2) / 2` of the admissible range for `ε`.
pub fn default_epsilon(z: &Rational) -> Rational {
    (z - &Rational::from(2)) / Rational::from(2)
}

fn m3(semiring: &Arc<Semiring>, a: Rational, b: Rational, c: Rational) -> Matrix {
    let (zero, ni) = (Scalar::int(0), Scalar::NegInf);
    Matrix::from_rows(
        semiring.clone(),
        MatrixFamily::Full,
        vec![vec![zero.clone(), a.into(), b.into()], vec![ni.clone(), zero.clone(), c.into()], vec![ni.clone(), ni, zero]],
    )
    .expect("entries lie in the truncated interval")
}

fn trunc_family_semiring(z: &Rational, eps: &Rational) -> Result<Arc<Semiring>> {
    let two = Rational::from(2);
    if *z <= two {
        return Err(Error::BadParams(format!("truncation point {z} must exceed 2")));
    }
    if !eps.is_positive() || *eps >= z - &two {
        return Err(Error::BadEpsilon(format!("ε = {eps} must lie strictly between 0 and z - 2 = {}", z - &two)));
    }
    Ok(Arc::new(Semiring::trunc(Rational::one(), z.clone())?))
}

/// `B_i = [[0, 1 + (i/m)ε, 2 + ε], [-∞, 0, 1 + ε - ((i-1)/m)ε], [-∞, -∞, 0]]`
/// in `M_3(T_[1,z])`.
pub fn witness_m3_trunc(z: &Rational, eps: &Rational, m: u64) -> Result<Vec<Matrix>> {
    check_length(m)?;
    let s = trunc_family_semiring(z, eps)?;
    let one = Rational::one();
    let mm = Rational::from(m as i64);
    Ok((1..=m as i64)
        .map(|i| {
            let i = Rational::from(i);
            let a = &one + &(&i / &mm * eps);
            let b = Rational::from(2) + eps.clone();
            let c = &one + eps - (&i - &one) / mm.clone() * eps.clone();
            m3(&s, a, b, c)
        })
        .collect())
}

/// Product of the first `k` matrices of [`witness_m3_trunc`].
pub fn witness_m3_trunc_partial(z: &Rational, eps: &Rational, m: u64, k: u64) -> Result<Matrix> {
    let s = trunc_family_semiring(z, eps)?;
    let one = Rational::one();
    let a = &one + &(Rational::new(k as i64, m as i64) * eps.clone());
    Ok(m3(&s, a, Rational::from(2) + eps.clone(), one + eps.clone()))
}

pub fn u3_nmax_sequence(m: u64) -> Result<WitnessSequence> {
    Ok(WitnessSequence {
        matrices: witness_u3_nmax(m)?,
        metadata: WitnessMetadata { family: "u3_nmax".into(), params: serde_json::json!({ "m": m }), closed_form: witness_u3_nmax_partial(m, m) },
    })
}

pub fn u3_negnmax_sequence(m: u64) -> Result<WitnessSequence> {
    Ok(WitnessSequence {
        matrices: witness_u3_negnmax(m)?,
        metadata: WitnessMetadata { family: "u3_negnmax".into(), params: serde_json::json!({ "m": m }), closed_form: witness_u3_negnmax_partial(m, m) },
    })
}

pub fn m3_trunc_sequence(z: &Rational, eps: &Rational, m: u64) -> Result<WitnessSequence> {
    Ok(WitnessSequence {
        matrices: witness_m3_trunc(z, eps, m)?,
        metadata: WitnessMetadata {
            family: "m3_trunc".into(),
            params: serde_json::json!({ "m": m, "z": z, "epsilon": eps }),
            closed_form: witness_m3_trunc_partial(z, eps, m, m)?,
        },
    })
}

/// `ρ(q^i p^j)` for the given exponent pairs, with the image of their product.
pub fn bicyclic_sequence(elements: &[BicyclicElement]) -> Result<WitnessSequence> {
    let product = elements.iter().fold(BicyclicElement::IDENTITY, |acc, &u| acc.mul(u));
    if elements.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(WitnessSequence {
        matrices: elements.iter().map(|u| u.rho()).collect(),
        metadata: WitnessMetadata {
            family: "bicyclic_rho".into(),
            params: serde_json::json!({ "elements": elements }),
            closed_form: product.rho(),
        },
    })
}
