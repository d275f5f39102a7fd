//! Syzygies, intersections, annihilators and free resolutions, all by
//! elimination of a leading block of coordinates in a position-over-term
//! Gröbner basis.

use super::groebner::module_groebner_basis;
use super::{FreeElement, Ideal, Matrix, MonomialOrder, Polynomial, PresentedModule, Submodule};
use crate::error::{Error, Result};
use crate::homcx::FreeComplex;
use crate::scalar::Field;

/// Gröbner basis of `gens` (in `S^(head + tail)`) restricted to elements whose
/// first `head` coordinates vanish, projected onto the last `tail`.
fn eliminate_head<F: Field>(nvars: usize, head: usize, tail: usize, gens: &[FreeElement<F>]) -> Vec<FreeElement<F>> {
    let gb = module_groebner_basis(gens, head + tail, &MonomialOrder::grevlex(nvars))
        .expect("augmented generators have matching ranks");
    gb.into_iter()
        .filter(|v| v.components()[..head].iter().all(Polynomial::is_zero))
        .map(|v| v.slice(head..head + tail))
        .collect()
}

/// Drops generators lying in the span of the others, scanning from the end.
/// For homogeneous generators the result is a minimal generating set.
pub fn minimize_generators<F: Field>(nvars: usize, rank: usize, gens: &[FreeElement<F>]) -> Vec<FreeElement<F>> {
    let mut kept: Vec<FreeElement<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut i = kept.len();
    while i > 0 {
        i -= 1;
        if kept.len() == 1 {
            break;
        }
        let others: Vec<FreeElement<F>> = kept
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let span = Submodule::new(nvars, rank, others).expect("same rank");
        if span.contains(&kept[i]).expect("same rank") {
            kept.remove(i);
        }
    }
    kept
}

/// Kernel of the map `S^m -> S^r` sending the `i`-th basis vector to the
/// `i`-th generator of `module`, as a submodule of `S^m`.
pub fn syzygy_module<F: Field>(module: &Submodule<F>) -> Submodule<F> {
    let nvars = module.nvars();
    let r = module.ambient_rank();
    let m = module.generators().len();
    if m == 0 {
        return Submodule::new(nvars, 0, Vec::new()).unwrap();
    }
    let augmented: Vec<FreeElement<F>> = module
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| g.concat(&FreeElement::basis(m, nvars, i)))
        .collect();
    let syz = eliminate_head(nvars, r, m, &augmented);
    Submodule::new(nvars, m, minimize_generators(nvars, m, &syz)).unwrap()
}

/// `a ∩ b` inside a common free module.
pub fn intersect_submodules<F: Field>(a: &Submodule<F>, b: &Submodule<F>) -> Submodule<F> {
    let nvars = a.nvars();
    let r = a.ambient_rank();
    assert_eq!(r, b.ambient_rank(), "intersection inside one free module");
    if a.generators().is_empty() || b.generators().is_empty() {
        return Submodule::new(nvars, r, Vec::new()).unwrap();
    }
    let zero = FreeElement::zero(r, nvars);
    let gens: Vec<FreeElement<F>> = a
        .generators()
        .iter()
        .map(|g| g.concat(g))
        .chain(b.generators().iter().map(|g| g.concat(&zero)))
        .collect();
    Submodule::new(nvars, r, eliminate_head(nvars, r, r, &gens)).unwrap()
}

/// `(N : v) = { f : f v ∈ N }`.
pub fn submodule_quotient<F: Field>(n: &Submodule<F>, v: &FreeElement<F>) -> Result<Ideal<F>> {
    let nvars = n.nvars();
    let r = n.ambient_rank();
    if v.rank() != r {
        return Err(Error::RankMismatch {
            expected: r,
            found: v.rank(),
        });
    }
    let zero = FreeElement::zero(1, nvars);
    let one = FreeElement::new(vec![Polynomial::one(nvars)]);
    let mut gens: Vec<FreeElement<F>> = n.generators().iter().map(|g| g.concat(&zero)).collect();
    gens.push(v.concat(&one));
    let q = eliminate_head(nvars, r, 1, &gens);
    Ideal::new(nvars, q.into_iter().map(|e| e.components()[0].clone()).collect())
}

/// Annihilator of a presented module: the intersection over generators `e_i`
/// of the quotients `(N : e_i)`, `N` the relation module.
pub fn annihilator<F: Field>(m: &PresentedModule<F>) -> Ideal<F> {
    let nvars = m.nvars();
    let r = m.ambient_rank();
    let mut acc = Ideal::unit(nvars);
    for i in 0..r {
        let q = submodule_quotient(m.relations(), &FreeElement::basis(r, nvars, i))
            .expect("basis vector of the ambient rank");
        acc = if i == 0 { q } else { acc.intersection(&q) };
        if acc.generators().iter().all(Polynomial::is_zero) {
            return Ideal::zero(nvars);
        }
    }
    acc
}

/// A finite free resolution `0 -> F_len -> ... -> F_0 -> M -> 0`, returned as a
/// complex in cohomological degrees `[-len, 0]`. Each step takes a minimized
/// syzygy module of the previous map's columns.
pub fn free_resolution<F: Field>(m: &PresentedModule<F>) -> Result<FreeComplex<F>> {
    let nvars = m.nvars();
    let rank0 = m.ambient_rank();
    if rank0 == 0 {
        return Ok(FreeComplex::zero(nvars));
    }
    let limit = 2 * nvars + 2;
    let mut current = minimize_generators(nvars, rank0, &m.matrix().columns());
    let mut current_rank = rank0;
    let mut maps: Vec<Matrix<F>> = Vec::new();
    while !current.is_empty() {
        if maps.len() >= limit {
            return Err(Error::ResolutionTooLong(limit));
        }
        maps.push(Matrix::from_columns(nvars, current_rank, &current));
        let module = Submodule::new(nvars, current_rank, current.clone())?;
        let next_rank = current.len();
        current = syzygy_module(&module).generators().to_vec();
        current_rank = next_rank;
    }
    // maps[j] : F_{j+1} -> F_j
    let len = maps.len();
    let mut ranks = Vec::with_capacity(len + 1);
    ranks.push(maps.last().map_or(rank0, Matrix::cols));
    for j in (0..len).rev() {
        ranks.push(maps[j].rows());
    }
    maps.reverse();
    FreeComplex::new(nvars, -(len as i64), ranks, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_polynomial;
    use crate::Q;

    fn names() -> Vec<String> {
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }

    fn p(s: &str) -> Polynomial<Q> {
        parse_polynomial(s, &names(), "t").unwrap()
    }

    fn elem(v: &[&str]) -> FreeElement<Q> {
        FreeElement::new(v.iter().map(|s| p(s)).collect())
    }

    fn row(v: &[&str]) -> Submodule<Q> {
        Submodule::new(3, 1, v.iter().map(|s| elem(&[s])).collect()).unwrap()
    }

    #[test]
    fn koszul_syzygy() {
        let s = syzygy_module(&row(&["x", "y"]));
        let expected = Submodule::new(3, 2, vec![elem(&["y", "-x"])]).unwrap();
        assert!(s.same_as(&expected).unwrap());
        assert_eq!(s.generators().len(), 1);
    }

    #[test]
    fn single_generator_has_no_syzygies() {
        assert!(syzygy_module(&row(&["x^2+y*z"])).generators().is_empty());
    }

    #[test]
    fn syzygies_of_monomials_with_common_factor() {
        let s = syzygy_module(&row(&["x^2", "x*y"]));
        let expected = Submodule::new(3, 2, vec![elem(&["y", "-x"])]).unwrap();
        assert!(s.same_as(&expected).unwrap());
    }

    #[test]
    fn zero_generator_is_its_own_syzygy() {
        let s = syzygy_module(&row(&["0", "x"]));
        let expected = Submodule::new(3, 2, vec![elem(&["1", "0"])]).unwrap();
        assert!(s.same_as(&expected).unwrap());
    }

    #[test]
    fn annihilator_examples() {
        let m = PresentedModule::quotient_ring(3, &[p("x")], "S/(x)");
        assert!(annihilator(&m).same_as(&Ideal::new(3, vec![p("x")]).unwrap()));
        assert!(annihilator(&PresentedModule::<Q>::free(3, 2)).same_as(&Ideal::zero(3)));
        let mut d = Matrix::zero(3, 2, 2);
        d.set(0, 0, p("x"));
        d.set(1, 1, p("y"));
        let ann = annihilator(&PresentedModule::new(d, "diag"));
        assert!(ann.same_as(&Ideal::new(3, vec![p("x*y")]).unwrap()));
        let zero_module = PresentedModule::quotient_ring(3, &[p("1")], "0");
        assert!(annihilator(&zero_module).is_unit_ideal());
    }

    #[test]
    fn resolution_ranks() {
        let koszul = free_resolution(&PresentedModule::quotient_ring(3, &[p("x"), p("y")], "S/(x,y)")).unwrap();
        assert_eq!(koszul.ranks(), &[1, 2, 1]);
        assert_eq!(koszul.lo(), -2);
        let free = free_resolution(&PresentedModule::<Q>::free(3, 3)).unwrap();
        assert_eq!(free.ranks(), &[3]);
        assert_eq!(free.lo(), 0);
        let principal = free_resolution(&PresentedModule::quotient_ring(3, &[p("x^2+y*z")], "O_X")).unwrap();
        assert_eq!(principal.ranks(), &[1, 1]);
        let point = free_resolution(&PresentedModule::quotient_ring(3, &[p("x"), p("y"), p("z")], "k")).unwrap();
        assert_eq!(point.ranks(), &[1, 3, 3, 1]);
        assert!(point.validate().is_ok());
    }
}
