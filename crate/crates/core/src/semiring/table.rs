use std::cmp::Ordering;

use crate::error::{Error, Result};

/// A finite bipotent semiring given by Cayley tables over `0..size`.
///
/// Construction checks every law exhaustively, so a value of this type is
/// always a lawful bipotent semiring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSemiringTable {
    size: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

impl FiniteSemiringTable {
    pub fn new(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let table = Self::new_unchecked(add, mul)?;
        if let Some(violation) = table.first_violation() {
            return Err(Error::InvalidSemiring(violation));
        }
        Ok(table)
    }

    /// Shape-checked only; the laws are not verified.
    pub fn new_unchecked(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let size = add.len();
        if size == 0 {
            return Err(Error::InvalidSemiring("empty table".into()));
        }
        let square = |t: &Vec<Vec<usize>>| t.len() == size && t.iter().all(|row| row.len() == size && row.iter().all(|&v| v < size));
        if !square(&add) || !square(&mul) {
            return Err(Error::InvalidSemiring(format!("tables must be {size}x{size} with entries below {size}")));
        }
        Ok(FiniteSemiringTable { size, add, mul })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    /// Order induced by the addition: `a <= b` iff `a + b = b`.
    pub fn compare(&self, a: usize, b: usize) -> Ordering {
        if a == b {
            Ordering::Equal
        } else if self.add[a][b] == b {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn zero(&self) -> Option<usize> {
        (0..self.size).find(|&z| (0..self.size).all(|x| self.add[z][x] == x && self.mul[z][x] == z && self.mul[x][z] == z))
    }

    pub fn identity(&self) -> Option<usize> {
        (0..self.size).find(|&e| (0..self.size).all(|x| self.mul[e][x] == x && self.mul[x][e] == x))
    }

    /// Description of the first failed law, if any.
    pub fn first_violation(&self) -> Option<String> {
        let n = self.size;
        let (add, mul) = (&self.add, &self.mul);
        for a in 0..n {
            for b in 0..n {
                if add[a][b] != add[b][a] {
                    return Some(format!("addition not commutative at ({a}, {b})"));
                }
                if add[a][b] != a && add[a][b] != b {
                    return Some(format!("addition not bipotent at ({a}, {b})"));
                }
                for c in 0..n {
                    if add[add[a][b]][c] != add[a][add[b][c]] {
                        return Some(format!("addition not associative at ({a}, {b}, {c})"));
                    }
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Some(format!("multiplication not associative at ({a}, {b}, {c})"));
                    }
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                        return Some(format!("left distributivity fails at ({a}, {b}, {c})"));
                    }
                    if mul[add[b][c]][a] != add[mul[b][a]][mul[c][a]] {
                        return Some(format!("right distributivity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        None
    }

    /// The three-element semiring `a < b < c`, all idempotent, with every
    /// product of distinct elements equal to `b`. It has no identity and
    /// cannot be embedded in a bipotent semiring with one.
    pub fn no_identity_example() -> Self {
        let add = (0..3).map(|i| (0..3).map(|j| i.max(j)).collect()).collect();
        let mul = (0..3).map(|i| (0..3).map(|j| if i == j { i } else { 1 }).collect()).collect();
        FiniteSemiringTable::new(add, mul).expect("example table is lawful")
    }
}
