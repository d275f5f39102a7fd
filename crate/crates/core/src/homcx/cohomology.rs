use super::{DualizingData, FreeComplex};
use crate::polycore::{
    annihilator, syzygy_module, DegreeBound, Dimension, FreeElement, Ideal, Matrix, PresentedModule, Submodule,
};
use crate::scalar::Field;

impl<F: Field> FreeComplex<F> {
    /// `H^k = ker d^k / im d^(k-1)` as a presented module on the kernel
    /// generators.
    pub fn cohomology(&self, k: i64) -> PresentedModule<F> {
        let nvars = self.nvars();
        let r = self.rank(k);
        let tag = format!("H^{k}");
        if r == 0 {
            return PresentedModule::new(Matrix::zero(nvars, 0, 0), tag);
        }
        let out = self.differential(k);
        let kernel: Vec<FreeElement<F>> = if out.is_zero() {
            (0..r).map(|i| FreeElement::basis(r, nvars, i)).collect()
        } else {
            let cols = Submodule::new(nvars, out.rows(), out.columns()).expect("columns of d^k");
            syzygy_module(&cols).generators().to_vec()
        };
        if kernel.is_empty() {
            return PresentedModule::new(Matrix::zero(nvars, 0, 0), tag);
        }
        let image: Vec<FreeElement<F>> = self
            .differential(k - 1)
            .columns()
            .into_iter()
            .filter(|c| !c.is_zero())
            .collect();
        let p = kernel.len();
        let mut gens = kernel;
        gens.extend(image);
        let relations = syzygy_module(&Submodule::new(nvars, r, gens).expect("elements of C^k"));
        let cols: Vec<FreeElement<F>> = relations
            .generators()
            .iter()
            .map(|v| v.slice(0..p))
            .filter(|v| !v.is_zero())
            .collect();
        PresentedModule::new(Matrix::from_columns(nvars, p, &cols), tag)
    }
}

/// `H^k(C)` for every degree of `C`.
pub fn cohomology_module<F: Field>(c: &FreeComplex<F>, k: i64) -> PresentedModule<F> {
    c.cohomology(k)
}

/// `dim(V(ann M) ∩ V(extra))`.
pub fn support_dimension<F: Field>(m: &PresentedModule<F>, extra: Option<&Ideal<F>>) -> Dimension {
    let ann = annihilator(m);
    match extra {
        Some(e) => ann.sum(e).dimension(),
        None => ann.dimension(),
    }
}

/// A nonzero cohomology module together with its annihilator.
#[derive(Clone, Debug)]
pub struct CohomologySheaf<F> {
    pub degree: i64,
    pub module: PresentedModule<F>,
    pub annihilator: Ideal<F>,
}

impl<F: Field> CohomologySheaf<F> {
    pub fn support_dimension(&self, extra: Option<&Ideal<F>>) -> Dimension {
        match extra {
            Some(e) => self.annihilator.sum(e).dimension(),
            None => self.annihilator.dimension(),
        }
    }
}

/// All nonzero cohomology modules of `c`, in increasing degree.
pub fn nonzero_cohomology<F: Field>(c: &FreeComplex<F>) -> Vec<CohomologySheaf<F>> {
    c.degrees()
        .filter_map(|k| {
            let module = c.cohomology(k);
            if module.ambient_rank() == 0 || module.is_zero() {
                return None;
            }
            let annihilator = annihilator(&module);
            Some(CohomologySheaf {
                degree: k,
                module,
                annihilator,
            })
        })
        .collect()
}

/// Largest `n` with `dim(Z ∩ supp H^k(D C)) <= -k - n` for all `k`: the best
/// lower bound on the degrees of local cohomology of `C` along `V(z)`.
pub fn local_cohomology_min_degree<F: Field>(z: &Ideal<F>, c: &FreeComplex<F>, dual: &DualizingData) -> DegreeBound {
    min_degree_from_dual(z, &nonzero_cohomology(&c.dualize(dual)))
}

/// Same as [`local_cohomology_min_degree`] for precomputed `H^*(D C)`.
pub fn min_degree_from_dual<F: Field>(z: &Ideal<F>, dual_cohomology: &[CohomologySheaf<F>]) -> DegreeBound {
    dual_cohomology
        .iter()
        .filter_map(|h| match h.support_dimension(Some(z)) {
            Dimension::MinusInfinity => None,
            Dimension::Finite(d) => Some(DegreeBound::Finite(-h.degree - d)),
        })
        .min()
        .unwrap_or(DegreeBound::PlusInfinity)
}
