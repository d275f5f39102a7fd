use std::fmt;

use crate::error::{Error, Result};
use crate::polycore::{Matrix, Polynomial};
use crate::scalar::Field;

/// A bounded complex of free modules `C^lo -> ... -> C^hi`; the differential
/// `d^k : C^k -> C^(k+1)` is a `rank(k+1) x rank(k)` matrix. Shifts follow
/// `(C[s])^k = C^(k+s)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeComplex<F> {
    nvars: usize,
    lo: i64,
    ranks: Vec<usize>,
    differentials: Vec<Matrix<F>>,
}

/// First failure found by [`FreeComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub degree: i64,
    pub row: Option<usize>,
    pub col: Option<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {}: {}", self.degree, self.message)?;
        if let (Some(r), Some(c)) = (self.row, self.col) {
            write!(f, " (entry {r},{c})")?;
        }
        Ok(())
    }
}

impl<F: Field> FreeComplex<F> {
    /// `ranks[i]` is the rank in degree `lo + i`; `differentials[i]` leaves
    /// degree `lo + i`. Shapes are checked by [`validate`](Self::validate).
    pub fn new(nvars: usize, lo: i64, ranks: Vec<usize>, differentials: Vec<Matrix<F>>) -> Result<Self> {
        if differentials.len() != ranks.len().saturating_sub(1) {
            return Err(Error::InvalidComplex(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                differentials.len()
            )));
        }
        if let Some(d) = differentials.iter().find(|d| d.nvars() != nvars) {
            return Err(Error::VariableMismatch {
                expected: nvars,
                found: d.nvars(),
            });
        }
        Ok(FreeComplex {
            nvars,
            lo,
            ranks,
            differentials,
        })
    }

    pub fn zero(nvars: usize) -> Self {
        FreeComplex {
            nvars,
            lo: 0,
            ranks: Vec::new(),
            differentials: Vec::new(),
        }
    }

    /// The free module `S^rank` placed in `degree`.
    pub fn free(nvars: usize, rank: usize, degree: i64) -> Self {
        FreeComplex {
            nvars,
            lo: degree,
            ranks: vec![rank],
            differentials: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Top degree; `lo - 1` for the empty complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differentials(&self) -> &[Matrix<F>] {
        &self.differentials
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn rank(&self, k: i64) -> usize {
        if k < self.lo || k > self.hi() {
            0
        } else {
            self.ranks[(k - self.lo) as usize]
        }
    }

    /// `d^k`, or a zero matrix of the right shape outside the stored range.
    pub fn differential(&self, k: i64) -> Matrix<F> {
        if k >= self.lo && k < self.hi() {
            self.differentials[(k - self.lo) as usize].clone()
        } else {
            Matrix::zero(self.nvars, self.rank(k + 1), self.rank(k))
        }
    }

    pub fn is_zero_complex(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    /// `C[s]`. Differentials are not sign-twisted; cohomology modules are
    /// unaffected.
    pub fn shift(&self, s: i64) -> Self {
        FreeComplex {
            lo: self.lo - s,
            ..self.clone()
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        if self.ranks.is_empty() {
            return other.clone();
        }
        if other.ranks.is_empty() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let ranks = (lo..=hi).map(|k| self.rank(k) + other.rank(k)).collect();
        let differentials = (lo..hi)
            .map(|k| self.differential(k).direct_sum(&other.differential(k)))
            .collect();
        FreeComplex {
            nvars: self.nvars,
            lo,
            ranks,
            differentials,
        }
    }

    /// Checks shapes and that every composite `d^(k+1) d^k` vanishes.
    pub fn validate(&self) -> Result<(), Violation> {
        for (i, d) in self.differentials.iter().enumerate() {
            let k = self.lo + i as i64;
            let (rows, cols) = (self.rank(k + 1), self.rank(k));
            if d.rows() != rows || d.cols() != cols {
                return Err(Violation {
                    degree: k,
                    row: None,
                    col: None,
                    message: format!(
                        "d^{k} is {}x{}, expected {rows}x{cols}",
                        d.rows(),
                        d.cols()
                    ),
                });
            }
        }
        for i in 1..self.differentials.len() {
            let k = self.lo + i as i64 - 1;
            let comp = self.differentials[i]
                .mul(&self.differentials[i - 1])
                .expect("shapes checked above");
            for r in 0..comp.rows() {
                for c in 0..comp.cols() {
                    if !comp.get(r, c).is_zero() {
                        return Err(Violation {
                            degree: k,
                            row: Some(r),
                            col: Some(c),
                            message: format!("d^{} d^{k} is nonzero", k + 1),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `D C = Hom(C, S)[n]`: the term `C^k` becomes the dual term in degree
    /// `-k - n` and each differential is transposed.
    pub fn dualize(&self, dual: &DualizingData) -> Self {
        if self.ranks.is_empty() {
            return self.clone();
        }
        let n = dual.shift as i64;
        let mut ranks = self.ranks.clone();
        ranks.reverse();
        let differentials = self.differentials.iter().rev().map(Matrix::transpose).collect();
        FreeComplex {
            nvars: self.nvars,
            lo: -self.hi() - n,
            ranks,
            differentials,
        }
    }

    /// Every differential entry as text, for serialization (row-major).
    pub fn entry_texts(&self, names: &[String]) -> Vec<Vec<String>> {
        self.differentials
            .iter()
            .map(|d| d.entries().iter().map(|e: &Polynomial<F>| e.to_text(names)).collect())
            .collect()
    }
}

/// Normalization of the dualizing object of the ambient affine space: the
/// free rank-one module shifted by the number of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualizingData {
    pub shift: usize,
}

impl DualizingData {
    pub fn for_ring(nvars: usize) -> Self {
        DualizingData { shift: nvars }
    }
}
