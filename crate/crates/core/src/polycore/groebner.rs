//! Buchberger's algorithm over free modules.
//!
//! Ideals are rank-one submodules, so a single engine serves both. Module
//! terms are compared position-over-term: a smaller position index is larger,
//! then the monomial order decides. With that convention the first block of
//! coordinates is eliminated first, which is what the syzygy and intersection
//! constructions rely on.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};


use super::{FreeElement, Monomial, MonomialOrder, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub pos: usize,
    pub mono: Monomial,
}

/// Sparse module vector, terms sorted increasingly; the leading term is last.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Vector<F> {
    pub terms: Vec<(Term, F)>,
}

pub(crate) fn cmp_terms(order: &MonomialOrder, a: &Term, b: &Term) -> Ordering {
    b.pos
        .cmp(&a.pos)
        .then_with(|| order.cmp(&a.mono, &b.mono))
}

impl<F: Field> Vector<F> {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Term, F)> {
        self.terms.last()
    }

    pub fn from_components(components: &[Polynomial<F>], order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Term, F)> = components
            .iter()
            .enumerate()
            .flat_map(|(pos, p)| {
                p.terms().map(move |(m, c)| {
                    (
                        Term {
                            pos,
                            mono: m.clone(),
                        },
                        c.clone(),
                    )
                })
            })
            .collect();
        terms.sort_by(|a, b| cmp_terms(order, &a.0, &b.0));
        Vector { terms }
    }

    pub fn to_components(&self, rank: usize, nvars: usize) -> Vec<Polynomial<F>> {
        let mut out = vec![Polynomial::zero(nvars); rank];
        for (t, c) in &self.terms {
            out[t.pos].add_term(t.mono.clone(), c.clone());
        }
        out
    }

    pub fn scale(&mut self, c: &F) {
        for (_, a) in &mut self.terms {
            *a = a.clone() * c.clone();
        }
    }

    pub fn make_monic(&mut self) {
        if let Some((_, lc)) = self.lead() {
            if !lc.is_one() {
                let inv = F::one() / lc.clone();
                self.scale(&inv);
            }
        }
    }

    /// `self - c * m * other`.
    pub fn sub_scaled(&self, c: &F, m: &Monomial, other: &Vector<F>, order: &MonomialOrder) -> Vector<F> {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(t, x)| {
                (
                    Term {
                        pos: t.pos,
                        mono: t.mono.mul(m),
                    },
                    -(x.clone() * c.clone()),
                )
            })
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match cmp_terms(order, &x.0, &y.0) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (t, ca) = a.next().unwrap().clone();
                        let (_, cb) = b.next().unwrap();
                        let s = ca + cb;
                        if !s.is_zero() {
                            out.push((t, s));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        Vector { terms: out }
    }
}

fn find_reducer<'a, F: Field>(t: &Term, basis: &'a [Vector<F>]) -> Option<&'a Vector<F>> {
    basis.iter().find(|g| {
        let (lt, _) = g.lead().expect("basis elements are nonzero");
        lt.pos == t.pos && lt.mono.divides(&t.mono)
    })
}

/// Full reduction of `v` by `basis`: the result has no term divisible by a
/// leading term of the basis.
pub(crate) fn reduce<F: Field>(v: &Vector<F>, basis: &[Vector<F>], order: &MonomialOrder) -> Vector<F> {
    let mut p = v.clone();
    let mut rem: Vec<(Term, F)> = Vec::new();
    while let Some((t, c)) = p.terms.last() {
        match find_reducer(t, basis) {
            Some(g) => {
                let (lt, lc) = g.lead().unwrap();
                let m = lt.mono.quotient_of(&t.mono);
                let coef = c.clone() / lc.clone();
                p = p.sub_scaled(&coef, &m, g, order);
            }
            None => rem.push(p.terms.pop().unwrap()),
        }
    }
    rem.reverse();
    Vector { terms: rem }
}

fn s_vector<F: Field>(f: &Vector<F>, g: &Vector<F>, order: &MonomialOrder) -> Vector<F> {
    let (tf, cf) = f.lead().unwrap();
    let (tg, cg) = g.lead().unwrap();
    let l = tf.mono.lcm(&tg.mono);
    let mf = tf.mono.quotient_of(&l);
    let mg = tg.mono.quotient_of(&l);
    let scaled_f = Vector::zero().sub_scaled(&(-(F::one() / cf.clone())), &mf, f, order);
    scaled_f.sub_scaled(&(F::one() / cg.clone()), &mg, g, order)
}

/// Pair queue key: lcm degree, then pair indices.
type PairKey = (u32, usize, usize);

struct PairQueue {
    queue: BTreeSet<PairKey>,
    pending: HashSet<(usize, usize)>,
}

impl PairQueue {
    fn push(&mut self, deg: u32, i: usize, j: usize) {
        let (i, j) = (i.min(j), i.max(j));
        self.queue.insert((deg, i, j));
        self.pending.insert((i, j));
    }

    fn pop(&mut self) -> Option<(usize, usize)> {
        let (_, i, j) = self.queue.pop_first()?;
        self.pending.remove(&(i, j));
        Some((i, j))
    }

    fn is_pending(&self, i: usize, j: usize) -> bool {
        self.pending.contains(&(i.min(j), i.max(j)))
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
///
/// `rank_one` enables the coprime-leading-term criterion, which is only
/// valid for ideals.
pub(crate) fn buchberger<F: Field>(gens: &[Vector<F>], order: &MonomialOrder, rank_one: bool) -> Vec<Vector<F>> {
    let mut basis: Vec<Vector<F>> = Vec::new();
    let mut pairs = PairQueue {
        queue: BTreeSet::new(),
        pending: HashSet::new(),
    };

    let add = |basis: &mut Vec<Vector<F>>, pairs: &mut PairQueue, mut v: Vector<F>| {
        v.make_monic();
        let n = basis.len();
        let (tn, _) = v.lead().unwrap().clone();
        for (k, g) in basis.iter().enumerate() {
            let (tk, _) = g.lead().unwrap();
            if tk.pos == tn.pos {
                pairs.push(tk.mono.lcm(&tn.mono).degree(), k, n);
            }
        }
        basis.push(v);
    };

    for g in gens {
        let r = reduce(g, &basis, order);
        if !r.is_zero() {
            add(&mut basis, &mut pairs, r);
        }
    }

    while let Some((i, j)) = pairs.pop() {
        let ti = basis[i].lead().unwrap().0.clone();
        let tj = basis[j].lead().unwrap().0.clone();
        if rank_one && ti.mono.is_coprime(&tj.mono) {
            continue;
        }
        let l = ti.mono.lcm(&tj.mono);
        let chain = basis.iter().enumerate().any(|(k, g)| {
            if k == i || k == j {
                return false;
            }
            let (tk, _) = g.lead().unwrap();
            tk.pos == ti.pos
                && tk.mono.divides(&l)
                && !pairs.is_pending(i, k)
                && !pairs.is_pending(j, k)
        });
        if chain {
            continue;
        }
        let s = s_vector(&basis[i], &basis[j], order);
        let r = reduce(&s, &basis, order);
        if !r.is_zero() {
            add(&mut basis, &mut pairs, r);
        }
    }

    interreduce(basis, order)
}

/// Minimal, monic, tail-reduced basis sorted by decreasing leading term.
fn interreduce<F: Field>(basis: Vec<Vector<F>>, order: &MonomialOrder) -> Vec<Vector<F>> {
    let keep: Vec<bool> = (0..basis.len())
        .map(|i| {
            let (ti, _) = basis[i].lead().unwrap();
            !basis.iter().enumerate().any(|(k, g)| {
                let (tk, _) = g.lead().unwrap();
                k != i
                    && tk.pos == ti.pos
                    && tk.mono.divides(&ti.mono)
                    && (tk.mono != ti.mono || k < i)
            })
        })
        .collect();
    let mut minimal: Vec<Vector<F>> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(v, k)| k.then_some(v))
        .collect();
    for i in 0..minimal.len() {
        let (head, rest) = minimal.split_at_mut(i);
        let (cur, tail) = rest.split_first_mut().unwrap();
        let others: Vec<Vector<F>> = head.iter().chain(tail.iter()).cloned().collect();
        let lead = cur.terms.pop().unwrap();
        let tail_part = reduce(cur, &others, order);
        let mut terms = tail_part.terms;
        terms.push(lead);
        *cur = Vector { terms };
        cur.make_monic();
    }
    minimal.sort_by(|a, b| cmp_terms(order, &b.lead().unwrap().0, &a.lead().unwrap().0));
    minimal
}

fn to_vectors<F: Field>(elems: &[FreeElement<F>], rank: usize, order: &MonomialOrder) -> Result<Vec<Vector<F>>> {
    elems
        .iter()
        .map(|e| {
            if e.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: e.rank(),
                });
            }
            Ok(Vector::from_components(e.components(), order))
        })
        .collect()
}

fn check_order(order: &MonomialOrder, nvars: usize) -> Result<()> {
    if order.nvars() != nvars {
        return Err(Error::VariableMismatch {
            expected: nvars,
            found: order.nvars(),
        });
    }
    Ok(())
}

/// Reduced Gröbner basis of an ideal.
pub fn groebner_basis<F: Field>(gens: &[Polynomial<F>], order: &MonomialOrder) -> Vec<Polynomial<F>> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let nvars = first.nvars();
    check_order(order, nvars).expect("order over the ring's variables");
    let vs: Vec<Vector<F>> = gens
        .iter()
        .map(|p| Vector::from_components(std::slice::from_ref(p), order))
        .collect();
    buchberger(&vs, order, true)
        .into_iter()
        .map(|v| v.to_components(1, nvars).pop().unwrap())
        .collect()
}

/// Reduced Gröbner basis of a submodule of the free module of rank `rank`.
pub fn module_groebner_basis<F: Field>(
    gens: &[FreeElement<F>],
    rank: usize,
    order: &MonomialOrder,
) -> Result<Vec<FreeElement<F>>> {
    let vs = to_vectors(gens, rank, order)?;
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let nvars = first.nvars();
    check_order(order, nvars)?;
    Ok(buchberger(&vs, order, rank == 1)
        .into_iter()
        .map(|v| FreeElement::new(v.to_components(rank, nvars)))
        .collect())
}

/// Normal form of `f` modulo a Gröbner basis.
pub fn normal_form<F: Field>(f: &Polynomial<F>, basis: &[Polynomial<F>], order: &MonomialOrder) -> Polynomial<F> {
    let bv: Vec<Vector<F>> = basis
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| Vector::from_components(std::slice::from_ref(p), order))
        .collect();
    let v = Vector::from_components(std::slice::from_ref(f), order);
    reduce(&v, &bv, order)
        .to_components(1, f.nvars())
        .pop()
        .unwrap()
}

/// Normal form of a module element modulo a module Gröbner basis.
pub fn module_normal_form<F: Field>(
    v: &FreeElement<F>,
    basis: &[FreeElement<F>],
    order: &MonomialOrder,
) -> Result<FreeElement<F>> {
    let rank = v.rank();
    let bv: Vec<Vector<F>> = to_vectors(basis, rank, order)?
        .into_iter()
        .filter(|b| !b.is_zero())
        .collect();
    let vv = Vector::from_components(v.components(), order);
    Ok(FreeElement::new(reduce(&vv, &bv, order).to_components(rank, v.nvars())))
}

/// Re-checks Buchberger's criterion: every S-vector of `basis` reduces to zero.
pub fn is_groebner_basis<F: Field>(basis: &[FreeElement<F>], order: &MonomialOrder) -> bool {
    let Some(first) = basis.first() else {
        return true;
    };
    let Ok(bv) = to_vectors(basis, first.rank(), order) else {
        return false;
    };
    let bv: Vec<_> = bv.into_iter().filter(|b| !b.is_zero()).collect();
    for i in 0..bv.len() {
        for j in i + 1..bv.len() {
            if bv[i].lead().unwrap().0.pos != bv[j].lead().unwrap().0.pos {
                continue;
            }
            if !reduce(&s_vector(&bv[i], &bv[j], order), &bv, order).is_zero() {
                return false;
            }
        }
    }
    true
}
