#![allow(dead_code)]

use std::path::PathBuf;

use pervcoh::homcx::FreeComplex;
use pervcoh::polycore::{Dimension, Ideal, Matrix, Monomial, MonomialOrder, OrderKind, Polynomial};
use pervcoh::{Poly, QScenario, Q};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn scenario(name: &str) -> QScenario {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name);
    QScenario::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn names(n: usize) -> Vec<String> {
    ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
}

pub fn p(n: usize, text: &str) -> Poly {
    pervcoh::polycore::parse_polynomial(text, &names(n), "test").unwrap()
}

pub fn ideal(n: usize, gens: &[&str]) -> Ideal<Q> {
    Ideal::new(n, gens.iter().map(|g| p(n, g)).collect()).unwrap()
}

pub fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

/// A random polynomial with at most `terms` terms of degree at most `deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, deg: u32, terms: usize) -> Poly {
    let mut f = Polynomial::zero(n);
    for _ in 0..rng.gen_range(1..=terms) {
        let mut e = vec![0u32; n];
        let mut left = rng.gen_range(0..=deg);
        for slot in e.iter_mut() {
            let k = rng.gen_range(0..=left);
            *slot = k;
            left -= k;
        }
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            f = &f + &Polynomial::term(n, Monomial::from_exponents(e), q(c));
        }
    }
    f
}

/// A random form of degree `deg` (zero is possible).
pub fn random_form(rng: &mut ChaCha8Rng, n: usize, deg: u32, terms: usize) -> Poly {
    let mut f = Polynomial::zero(n);
    for _ in 0..rng.gen_range(1..=terms) {
        let mut e = vec![0u32; n];
        let mut left = deg;
        for slot in e.iter_mut().take(n - 1) {
            let k = rng.gen_range(0..=left);
            *slot = k;
            left -= k;
        }
        e[n - 1] = left;
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            f = &f + &Polynomial::term(n, Monomial::from_exponents(e), q(c));
        }
    }
    f
}

/// Textbook division by a list, leading terms only.
pub fn divide(f: &Poly, by: &[Poly], order: &MonomialOrder) -> Poly {
    let n = f.nvars();
    let mut rest = f.clone();
    let mut rem = Polynomial::zero(n);
    while let Some((m, c)) = rest.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        let hit = by.iter().find_map(|g| {
            let (gm, gc) = g.leading_term(order)?;
            gm.divides(&m).then(|| (g, gm.quotient_of(&m), gc.clone()))
        });
        match hit {
            Some((g, quot, gc)) => {
                let t = Polynomial::term(n, quot, c / gc);
                rest = &rest - &(&t * g);
            }
            None => {
                let t = Polynomial::term(n, m, c);
                rest = &rest - &t;
                rem = &rem + &t;
            }
        }
    }
    rem
}

pub fn s_polynomial(f: &Poly, g: &Poly, order: &MonomialOrder) -> Poly {
    let n = f.nvars();
    let (fm, fc) = f.leading_term(order).unwrap();
    let (gm, gc) = g.leading_term(order).unwrap();
    let l = fm.lcm(gm);
    let a = Polynomial::term(n, fm.quotient_of(&l), Q::from_integer(1.into()) / fc.clone());
    let b = Polynomial::term(n, gm.quotient_of(&l), Q::from_integer(1.into()) / gc.clone());
    &(&a * f) - &(&b * g)
}

/// Buchberger's criterion checked with [`divide`].
pub fn all_s_pairs_vanish(basis: &[Poly], order: &MonomialOrder) -> bool {
    (0..basis.len()).all(|i| (i + 1..basis.len()).all(|j| divide(&s_polynomial(&basis[i], &basis[j], order), basis, order).is_zero()))
}

/// Dimension by elimination: the largest variable set `U` with
/// `I ∩ k[U] = 0`, read off lex bases eliminating the complement first.
pub fn dimension_by_elimination(i: &Ideal<Q>) -> Dimension {
    let n = i.nvars();
    if i.is_unit_ideal() {
        return Dimension::MinusInfinity;
    }
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as i64;
        if size <= best {
            continue;
        }
        let mut priority: Vec<usize> = (0..n).filter(|v| mask & (1 << v) == 0).collect();
        priority.extend((0..n).filter(|v| mask & (1 << v) != 0));
        let order = MonomialOrder::with_priority(OrderKind::Lex, priority).unwrap();
        let gb = i.groebner_basis_for(&order);
        let meets = gb.iter().any(|g| (g.support_mask() as u32) & !mask == 0 && !g.is_zero());
        if !meets {
            best = size;
        }
    }
    Dimension::Finite(best)
}

/// Determinant by cofactor expansion.
pub fn det(m: &[Vec<Poly>], n: usize) -> Poly {
    if m.is_empty() {
        return Polynomial::one(n);
    }
    let mut acc = Polynomial::zero(n);
    for j in 0..m.len() {
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = &m[0][j] * &det(&minor, n);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// `Fitt_0` of the cokernel of `a`: the maximal minors of size `rows`.
pub fn fitting_ideal(a: &Matrix<Q>) -> Ideal<Q> {
    let (r, c, n) = (a.rows(), a.cols(), a.nvars());
    let mut minors = Vec::new();
    let mut choose = |cols: &[usize]| {
        let m: Vec<Vec<Poly>> = (0..r).map(|i| cols.iter().map(|&j| a.get(i, j).clone()).collect()).collect();
        minors.push(det(&m, n));
    };
    fn subsets(c: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for j in start..c {
            cur.push(j);
            subsets(c, k, j + 1, cur, f);
            cur.pop();
        }
    }
    if r <= c {
        subsets(c, r, 0, &mut Vec::new(), &mut choose);
    }
    Ideal::new(n, minors).unwrap()
}

/// The Koszul complex of `gens`, in degrees `[-len, 0]`.
pub fn koszul(n: usize, gens: &[Poly]) -> FreeComplex<Q> {
    let k = gens.len();
    let subsets: Vec<Vec<Vec<usize>>> = (0..=k)
        .map(|size| {
            let mut out = Vec::new();
            for mask in 0u32..(1 << k) {
                if mask.count_ones() as usize == size {
                    out.push((0..k).filter(|i| mask & (1 << i) != 0).collect());
                }
            }
            out
        })
        .collect();
    let ranks: Vec<usize> = (0..=k).rev().map(|s| subsets[s].len()).collect();
    let mut maps = Vec::new();
    for size in (1..=k).rev() {
        let (src, dst) = (&subsets[size], &subsets[size - 1]);
        let mut m = Matrix::zero(n, dst.len(), src.len());
        for (j, s) in src.iter().enumerate() {
            for (pos, &v) in s.iter().enumerate() {
                let t: Vec<usize> = s.iter().copied().filter(|&u| u != v).collect();
                let i = dst.iter().position(|d| *d == t).unwrap();
                let e = if pos % 2 == 0 { gens[v].clone() } else { -gens[v].clone() };
                m.set(i, j, e);
            }
        }
        maps.push(m);
    }
    FreeComplex::new(n, -(k as i64), ranks, maps).unwrap()
}
