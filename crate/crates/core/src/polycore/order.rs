use std::cmp::Ordering;

use super::Monomial;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Grevlex,
    Lex,
}

/// A monomial order: grevlex or lex with respect to a variable priority.
/// `priority[0]` is the most significant variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Grevlex,
            priority: (0..nvars).collect(),
        }
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            priority: (0..nvars).collect(),
        }
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &p in &priority {
            if p >= priority.len() || seen[p] {
                return Err(Error::InvalidOrder(format!(
                    "{priority:?} is not a permutation"
                )));
            }
            seen[p] = true;
        }
        Ok(MonomialOrder { kind, priority })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.priority {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
                if da != db {
                    return da.cmp(&db);
                }
                for &v in self.priority.iter().rev() {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        let o = MonomialOrder::grevlex(3);
        // x^2 > xy > y^2 > xz > yz > z^2
        let chain = [m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0]), m(&[1, 0, 1]), m(&[0, 1, 1]), m(&[0, 0, 2])];
        for w in chain.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater, "{w:?}");
        }
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[1, 1, 0])), Ordering::Less);
    }

    #[test]
    fn lex_respects_priority() {
        let o = MonomialOrder::with_priority(OrderKind::Lex, vec![2, 0, 1]).unwrap();
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
        assert!(MonomialOrder::with_priority(OrderKind::Lex, vec![0, 0]).is_err());
    }

    #[test]
    fn order_is_multiplicative() {
        let o = MonomialOrder::grevlex(3);
        let (a, b, c) = (m(&[2, 0, 1]), m(&[1, 2, 0]), m(&[0, 1, 4]));
        assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
    }
}
