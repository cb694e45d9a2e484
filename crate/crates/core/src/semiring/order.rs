use std::cmp::Ordering;
use std::collections::HashMap;

use serde::Serialize;

use super::{Family, Scalar, Semiring};
use crate::error::{Error, Result};

/// Multiplicative order of an element: the number of distinct positive powers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrderResult {
    /// `order` distinct powers; `a^stabilization_index` is the first power
    /// that reappears as a later power.
    Finite { order: u64, stabilization_index: u64 },
    Infinite { certificate: String },
    Unknown { cap: u64 },
}

impl OrderResult {
    pub fn finite(&self) -> Option<u64> {
        match self {
            OrderResult::Finite { order, .. } => Some(*order),
            _ => None,
        }
    }
}

/// Isomorphism type of the monogenic subsemiring `<a>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "k", rename_all = "snake_case")]
pub enum Monogenic {
    NMax,
    NegNMax,
    TruncNat(u64),
    TruncNegNat(u64),
    Unknown(u64),
}

impl Semiring {
    pub fn element_order(&self, a: &Scalar, cap: u64) -> Result<OrderResult> {
        if matches!(a, Scalar::AdjoinedId) || !self.contains(a) {
            return Err(self.domain_error(a));
        }
        let square = self.mul_unchecked(a, a);
        if matches!(self.family, Family::Tropical | Family::NatMax | Family::NegNatMax) && *a != Scalar::NegInf && square != *a {
            // Powers move by a fixed nonzero offset each step and never return.
            let direction = if self.compare_unchecked(a, &square)? == Ordering::Less { "increasing" } else { "decreasing" };
            return Ok(OrderResult::Infinite {
                certificate: format!("{self} has no truncation and a^2 = {square} != a = {a}, so powers are strictly {direction}"),
            });
        }
        let mut seen: HashMap<Scalar, u64> = HashMap::new();
        let mut power = a.clone();
        let mut exponent = 1u64;
        loop {
            if let Some(&first) = seen.get(&power) {
                return Ok(OrderResult::Finite { order: exponent - 1, stabilization_index: first });
            }
            if exponent > cap {
                return Ok(OrderResult::Unknown { cap });
            }
            seen.insert(power.clone(), exponent);
            power = self.mul_unchecked(&power, a);
            exponent += 1;
        }
    }

    /// Whether the last distinct power `p` satisfies `p ⊗ a = p`.
    pub fn period_one_check(&self, a: &Scalar, cap: u64) -> Result<bool> {
        let order = self.element_order(a, cap)?.finite().ok_or_else(|| Error::NotFiniteOrder(a.clone()))?;
        let top = self.pow(a, order)?;
        Ok(self.mul_unchecked(&top, a) == top)
    }

    pub fn classify_monogenic(&self, a: &Scalar, cap: u64) -> Result<Monogenic> {
        let order = self.element_order(a, cap)?;
        let square = self.mul_unchecked(a, a);
        let rising = self.compare_unchecked(a, &square)?;
        Ok(match (order, rising) {
            (OrderResult::Unknown { cap }, _) => Monogenic::Unknown(cap),
            (OrderResult::Infinite { .. }, Ordering::Less) => Monogenic::NMax,
            (OrderResult::Infinite { .. }, _) => Monogenic::NegNMax,
            (OrderResult::Finite { .. }, Ordering::Equal) => Monogenic::TruncNat(1),
            (OrderResult::Finite { order, .. }, Ordering::Less) => Monogenic::TruncNat(order),
            (OrderResult::Finite { order, .. }, Ordering::Greater) => Monogenic::TruncNegNat(order),
        })
    }
}
