use std::fmt;
use std::sync::OnceLock;

use super::groebner::{module_groebner_basis, module_normal_form};
use super::{MonomialOrder, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// An element of the free module `S^rank`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FreeElement<F> {
    components: Vec<Polynomial<F>>,
}

impl<F: Field> FreeElement<F> {
    pub fn new(components: Vec<Polynomial<F>>) -> Self {
        assert!(!components.is_empty(), "free elements have positive rank");
        let n = components[0].nvars();
        assert!(components.iter().all(|c| c.nvars() == n));
        FreeElement { components }
    }

    pub fn zero(rank: usize, nvars: usize) -> Self {
        Self::new(vec![Polynomial::zero(nvars); rank])
    }

    /// The `i`-th coordinate vector.
    pub fn basis(rank: usize, nvars: usize, i: usize) -> Self {
        let mut v = Self::zero(rank, nvars);
        v.components[i] = Polynomial::one(nvars);
        v
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn nvars(&self) -> usize {
        self.components[0].nvars()
    }

    pub fn components(&self) -> &[Polynomial<F>] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Polynomial<F>> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, f: &Polynomial<F>) -> Self {
        Self::new(self.components.iter().map(|a| a * f).collect())
    }

    /// Concatenation `(self, other)` in `S^(r+s)`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut c = self.components.clone();
        c.extend(other.components.iter().cloned());
        Self::new(c)
    }

    /// Coordinates `range` as an element of the smaller free module.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        Self::new(self.components[range].to_vec())
    }
}

/// A submodule of `S^ambient_rank` given by generators; the Gröbner basis for
/// the default grevlex order is computed on first use.
#[derive(Debug)]
pub struct Submodule<F> {
    nvars: usize,
    ambient_rank: usize,
    generators: Vec<FreeElement<F>>,
    cache: OnceLock<Vec<FreeElement<F>>>,
}

impl<F: Clone> Clone for Submodule<F> {
    fn clone(&self) -> Self {
        Submodule {
            nvars: self.nvars,
            ambient_rank: self.ambient_rank,
            generators: self.generators.clone(),
            cache: self.cache.clone(),
        }
    }
}

impl<F: Field> Submodule<F> {
    pub fn new(nvars: usize, ambient_rank: usize, generators: Vec<FreeElement<F>>) -> Result<Self> {
        for g in &generators {
            if g.rank() != ambient_rank {
                return Err(Error::RankMismatch {
                    expected: ambient_rank,
                    found: g.rank(),
                });
            }
            if g.nvars() != nvars {
                return Err(Error::VariableMismatch {
                    expected: nvars,
                    found: g.nvars(),
                });
            }
        }
        Ok(Submodule {
            nvars,
            ambient_rank,
            generators,
            cache: OnceLock::new(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[FreeElement<F>] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        MonomialOrder::grevlex(self.nvars)
    }

    pub fn groebner_basis(&self) -> &[FreeElement<F>] {
        self.cache.get_or_init(|| {
            module_groebner_basis(&self.generators, self.ambient_rank, &self.order())
                .expect("generator ranks checked at construction")
        })
    }

    pub fn normal_form(&self, v: &FreeElement<F>) -> Result<FreeElement<F>> {
        if v.rank() != self.ambient_rank {
            return Err(Error::RankMismatch {
                expected: self.ambient_rank,
                found: v.rank(),
            });
        }
        module_normal_form(v, self.groebner_basis(), &self.order())
    }

    pub fn contains(&self, v: &FreeElement<F>) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    pub fn contains_submodule(&self, other: &Submodule<F>) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_as(&self, other: &Submodule<F>) -> Result<bool> {
        Ok(self.contains_submodule(other)? && other.contains_submodule(self)?)
    }

    /// `true` when the submodule is the whole free module.
    pub fn is_everything(&self) -> bool {
        (0..self.ambient_rank).all(|i| {
            self.contains(&FreeElement::basis(self.ambient_rank, self.nvars, i))
                .unwrap()
        })
    }
}

/// A matrix of polynomials, stored row-major. Column `j` is the image of the
/// `j`-th basis vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<F> {
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(nvars: usize, rows: usize, cols: usize) -> Self {
        Matrix {
            nvars,
            rows,
            cols,
            entries: vec![Polynomial::zero(nvars); rows * cols],
        }
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        let mut m = Self::zero(nvars, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(nvars));
        }
        m
    }

    pub fn from_row_major(nvars: usize, rows: usize, cols: usize, entries: Vec<Polynomial<F>>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|e| e.nvars() != nvars) {
            return Err(Error::VariableMismatch {
                expected: nvars,
                found: e.nvars(),
            });
        }
        Ok(Matrix {
            nvars,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_columns(nvars: usize, rows: usize, columns: &[FreeElement<F>]) -> Self {
        let mut m = Self::zero(nvars, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.rank(), rows);
            for (i, e) in c.components().iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Polynomial<F>) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Polynomial<F>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn column(&self, j: usize) -> FreeElement<F> {
        FreeElement::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    /// Columns as free elements; empty when the matrix has no rows.
    pub fn columns(&self) -> Vec<FreeElement<F>> {
        if self.rows == 0 {
            return Vec::new();
        }
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.nvars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zero(self.nvars, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Polynomial::zero(self.nvars);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), rhs.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &FreeElement<F>) -> Result<FreeElement<F>> {
        if v.rank() != self.cols {
            return Err(Error::RankMismatch {
                expected: self.cols,
                found: v.rank(),
            });
        }
        Ok(FreeElement::new(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols).fold(Polynomial::zero(self.nvars), |acc, k| {
                        &acc + &(self.get(i, k) * &v.components()[k])
                    })
                })
                .collect(),
        ))
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Matrix<F>) -> Matrix<F> {
        let mut out = Self::zero(self.nvars, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }
}

/// A finitely presented module: the cokernel of `matrix`, a map
/// `S^cols -> S^rank`.
#[derive(Clone, Debug)]
pub struct PresentedModule<F> {
    matrix: Matrix<F>,
    provenance: String,
    relations: Submodule<F>,
}

impl<F: Field> PresentedModule<F> {
    pub fn new(matrix: Matrix<F>, provenance: impl Into<String>) -> Self {
        let relations = Submodule::new(matrix.nvars(), matrix.rows(), matrix.columns())
            .expect("columns have the row count as rank");
        PresentedModule {
            matrix,
            provenance: provenance.into(),
            relations,
        }
    }

    /// `S / I` for an ideal given by generators.
    pub fn quotient_ring(nvars: usize, gens: &[Polynomial<F>], provenance: impl Into<String>) -> Self {
        Self::new(
            Matrix::from_row_major(nvars, 1, gens.len(), gens.to_vec()).expect("row of generators"),
            provenance,
        )
    }

    pub fn free(nvars: usize, rank: usize) -> Self {
        Self::new(Matrix::zero(nvars, rank, 0), "free")
    }

    pub fn nvars(&self) -> usize {
        self.matrix.nvars()
    }

    /// Number of generators (the presentation matrix's row count).
    pub fn ambient_rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn relations(&self) -> &Submodule<F> {
        &self.relations
    }

    /// Every generator lies in the relation module.
    pub fn is_zero(&self) -> bool {
        self.relations.is_everything()
    }
}

impl<F: Field> fmt::Display for PresentedModule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coker({}x{} matrix) [{}]",
            self.matrix.rows(),
            self.matrix.cols(),
            self.provenance
        )
    }
}
