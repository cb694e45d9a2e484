use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{FiniteSemiringTable, Scalar, Semiring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum AxiomMode {
    Exhaustive,
    Sampled { seed: u64, trials: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    AddAssociative,
    AddCommutative,
    AddBipotent,
    MulAssociative,
    MulCommutative,
    LeftDistributive,
    RightDistributive,
    OrderCompatible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub semiring: String,
    pub mode: AxiomMode,
    pub passed: bool,
    pub checks: Vec<AxiomCheck>,
}

struct Tally {
    checks: Vec<AxiomCheck>,
}

impl Tally {
    fn new(axioms: &[Axiom]) -> Self {
        Tally { checks: axioms.iter().map(|&axiom| AxiomCheck { axiom, passed: true, cases: 0, counterexample: None }).collect() }
    }

    fn record(&mut self, axiom: Axiom, ok: bool, witness: &[&Scalar]) {
        let check = self.checks.iter_mut().find(|c| c.axiom == axiom).expect("axiom registered");
        check.cases += 1;
        if !ok && check.passed {
            check.passed = false;
            check.counterexample = Some(witness.iter().map(|s| (*s).clone()).collect());
        }
    }
}

impl Semiring {
    /// Check the bipotent semiring laws, exhaustively over a finite carrier or
    /// on seeded random triples.
    pub fn check_axioms(&self, mode: AxiomMode) -> Result<AxiomReport> {
        let mut axioms = vec![
            Axiom::AddAssociative,
            Axiom::AddCommutative,
            Axiom::AddBipotent,
            Axiom::MulAssociative,
            Axiom::LeftDistributive,
            Axiom::RightDistributive,
            Axiom::OrderCompatible,
        ];
        if self.claims_commutative() {
            axioms.insert(4, Axiom::MulCommutative);
        }
        let mut tally = Tally::new(&axioms);
        match mode {
            AxiomMode::Exhaustive => {
                let carrier = self.carrier().ok_or_else(|| Error::InfeasibleExhaustive(self.to_string()))?;
                for a in &carrier {
                    for b in &carrier {
                        for c in &carrier {
                            self.check_triple(a, b, c, &mut tally)?;
                        }
                    }
                }
            }
            AxiomMode::Sampled { seed, trials } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..trials {
                    let (a, b, c) = (self.sample(&mut rng), self.sample(&mut rng), self.sample(&mut rng));
                    self.check_triple(&a, &b, &c, &mut tally)?;
                }
            }
        }
        let passed = tally.checks.iter().all(|c| c.passed);
        Ok(AxiomReport { semiring: self.to_string(), mode, passed, checks: tally.checks })
    }

    fn check_triple(&self, a: &Scalar, b: &Scalar, c: &Scalar, tally: &mut Tally) -> Result<()> {
        let add = |x: &Scalar, y: &Scalar| self.add(x, y);
        let mul = |x: &Scalar, y: &Scalar| self.mul(x, y);
        let w = [a, b, c];

        tally.record(Axiom::AddAssociative, add(&add(a, b)?, c)? == add(a, &add(b, c)?)?, &w);
        let ab = add(a, b)?;
        tally.record(Axiom::AddCommutative, ab == add(b, a)?, &w[..2]);
        tally.record(Axiom::AddBipotent, ab == *a || ab == *b, &w[..2]);
        tally.record(Axiom::MulAssociative, mul(&mul(a, b)?, c)? == mul(a, &mul(b, c)?)?, &w);
        if self.claims_commutative() {
            tally.record(Axiom::MulCommutative, mul(a, b)? == mul(b, a)?, &w[..2]);
        }
        tally.record(Axiom::LeftDistributive, mul(a, &add(b, c)?)? == add(&mul(a, b)?, &mul(a, c)?)?, &w);
        tally.record(Axiom::RightDistributive, mul(&add(b, c)?, a)? == add(&mul(b, a)?, &mul(c, a)?)?, &w);
        // a <= b implies ac <= bc and ca <= cb.
        let compatible = !self.leq(a, b)? || (self.leq(&mul(a, c)?, &mul(b, c)?)? && self.leq(&mul(c, a)?, &mul(c, b)?)?);
        tally.record(Axiom::OrderCompatible, compatible, &w);
        Ok(())
    }
}

/// Where an identity `1` is placed relative to `a < b < c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    BelowA,
    BetweenAB,
    BetweenBC,
    AboveC,
}

impl Placement {
    pub const ALL: [Placement; 4] = [Placement::BelowA, Placement::BetweenAB, Placement::BetweenBC, Placement::AboveC];

    /// Rank of the identity among the ranks 1, 3, 5 of `a`, `b`, `c`.
    fn rank(self) -> u8 {
        match self {
            Placement::BelowA => 0,
            Placement::BetweenAB => 2,
            Placement::BetweenBC => 4,
            Placement::AboveC => 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlacementReport {
    pub placement: Placement,
    /// The element `x` multiplied into `1 ⊕ b` (named `a`, `b` or `c`).
    pub multiplier: String,
    /// `x ⊗ (1 ⊕ b)` evaluated directly.
    pub lhs: String,
    /// `(x ⊗ 1) ⊕ (x ⊗ b)` as distributivity demands.
    pub rhs: String,
    pub disagree: bool,
    /// Number of triples of the extended structure violating left distributivity.
    pub violations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub identity_in_carrier: bool,
    pub placements: Vec<PlacementReport>,
    pub all_placements_inconsistent: bool,
}

/// Extended element: `Some(i)` is atom `i` of `{a, b, c}`, `None` the identity.
type Ext = Option<usize>;

fn ext_name(x: Ext) -> String {
    match x {
        Some(i) => ["a", "b", "c"][i].to_string(),
        None => "1".to_string(),
    }
}

/// Show that the semiring `{a < b < c}` with all elements idempotent and all
/// other products `b` admits no identity in any order position.
pub fn noidentity_obstruction() -> ObstructionReport {
    let table = FiniteSemiringTable::no_identity_example();
    let identity_in_carrier = table.identity().is_some();
    let placements = Placement::ALL
        .iter()
        .map(|&placement| {
            let rank = |x: Ext| match x {
                Some(i) => 2 * i as u8 + 1,
                None => placement.rank(),
            };
            let add = |x: Ext, y: Ext| if rank(x).cmp(&rank(y)) == Ordering::Less { y } else { x };
            let mul = |x: Ext, y: Ext| match (x, y) {
                (None, z) | (z, None) => z,
                (Some(i), Some(j)) => Some(table.mul(i, j)),
            };
            let b = Some(1);
            // Above b the witness multiplier is a, below it is c.
            let x = if placement.rank() > 3 { Some(0) } else { Some(2) };
            let lhs = mul(x, add(None, b));
            let rhs = add(mul(x, None), mul(x, b));
            let all: [Ext; 4] = [Some(0), Some(1), Some(2), None];
            let mut violations = 0;
            for &u in &all {
                for &v in &all {
                    for &w in &all {
                        if mul(u, add(v, w)) != add(mul(u, v), mul(u, w)) {
                            violations += 1;
                        }
                    }
                }
            }
            PlacementReport {
                placement,
                multiplier: ext_name(x),
                lhs: ext_name(lhs),
                rhs: ext_name(rhs),
                disagree: lhs != rhs,
                violations,
            }
        })
        .collect::<Vec<_>>();
    let all_placements_inconsistent = placements.iter().all(|p| p.disagree && p.violations > 0);
    ObstructionReport { identity_in_carrier, placements, all_placements_inconsistent }
}
