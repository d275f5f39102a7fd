use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::{Monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// A multivariate polynomial with exact coefficients. No stored coefficient is
/// zero and every exponent vector has length `nvars`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::term(nvars, Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::term(nvars, Monomial::var(nvars, index), F::one())
    }

    pub fn term(nvars: usize, m: Monomial, c: F) -> Self {
        assert_eq!(m.nvars(), nvars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, F)>,
    {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Terms sorted decreasingly for `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &F)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &F)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        assert_eq!(m.nvars(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient for `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&(F::one() / c.clone())),
            None => self.clone(),
        }
    }

    /// Embeds into a ring with `extra` new variables appended.
    pub fn extend_vars(&self, extra: usize) -> Self {
        Polynomial {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.extend(extra), c.clone()))
                .collect(),
        }
    }

    /// Bit mask of variables that occur.
    pub fn support_mask(&self) -> u64 {
        self.terms.keys().fold(0, |acc, m| acc | m.support_mask())
    }

    /// Evaluates at a point.
    pub fn eval(&self, point: &[F]) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes polynomials for the variables.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::VariableMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let target = images.first().map_or(0, |p| p.nvars);
        let mut acc = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (img, &e) in images.iter().zip(m.exponents()) {
                t = &t * &img.pow(e);
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials from rings with different variable counts"
        );
    }

    /// Canonical text using the given variable names: terms in decreasing
    /// grevlex order, e.g. `x^2+y*z-3/4*z`.
    pub fn to_text(&self, names: &[String]) -> String {
        let mut out = String::new();
        if self.is_zero() {
            out.push('0');
            return out;
        }
        let order = MonomialOrder::grevlex(self.nvars);
        for (i, (m, c)) in self.sorted_terms(&order).into_iter().enumerate() {
            let negative = c.clone() < F::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if negative {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                m.fmt_with(names, &mut out).expect("writing to a String");
            }
        }
        out
    }
}

pub(crate) fn default_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("x{i}")).collect()
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&default_names(self.nvars)))
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        self.check_vars(rhs);
        let mut out = Polynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&-F::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}
