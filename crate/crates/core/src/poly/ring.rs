//! Ring descriptors and monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::monomial::{Monomial, MAX_VARS};
use crate::error::{Error, Result};

/// Monomial order of a ring. All orders honour the ring's weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MonomialOrder {
    /// Weighted degree, ties broken reverse-lexicographically.
    Grevlex,
    /// Pure lexicographic, first variable largest.
    Lex,
    /// Weighted grevlex on the variables `0..split`, then weighted grevlex on the rest.
    /// Any monomial involving the first block beats every monomial free of it.
    Elimination { split: usize },
}

/// Variable names, order and grading of a polynomial ring over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    names: Vec<String>,
    order: MonomialOrder,
    weights: Vec<u32>,
}

/// Shared ring handle carried by every polynomial.
pub type Ring = Arc<RingDescriptor>;

#[inline]
fn grevlex_block(a: &Monomial, b: &Monomial, w: &[u32], lo: usize, hi: usize) -> Ordering {
    let (ea, eb) = (a.exps(), b.exps());
    let mut da = 0i64;
    let mut db = 0i64;
    for i in lo..hi {
        da += ea[i] as i64 * w[i] as i64;
        db += eb[i] as i64 * w[i] as i64;
    }
    if da != db {
        return da.cmp(&db);
    }
    for i in (lo..hi).rev() {
        if ea[i] != eb[i] {
            // smaller exponent in the last differing variable wins
            return eb[i].cmp(&ea[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Compare two monomials of a ring with `n` variables and weights `w`.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial, w: &[u32], n: usize) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex_block(a, b, w, 0, n),
            MonomialOrder::Lex => a.exps()[..n].cmp(&b.exps()[..n]),
            MonomialOrder::Elimination { split } => {
                grevlex_block(a, b, w, 0, *split).then_with(|| grevlex_block(a, b, w, *split, n))
            }
        }
    }
}

impl RingDescriptor {
    /// Standard graded ring with the given variable names and order.
    pub fn new<S: AsRef<str>>(names: &[S], order: MonomialOrder) -> Result<Ring> {
        let n = names.len();
        Self::with_weights(names, order, vec![1; n])
    }

    pub fn with_weights<S: AsRef<str>>(names: &[S], order: MonomialOrder, weights: Vec<u32>) -> Result<Ring> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.len() > MAX_VARS {
            return Err(Error::InvalidArgument(format!("at most {MAX_VARS} variables are supported")));
        }
        if weights.len() != names.len() || weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidArgument("weights must be positive, one per variable".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::InvalidArgument("empty variable name".into()));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidArgument(format!("duplicate variable name `{a}`")));
            }
        }
        if let MonomialOrder::Elimination { split } = order {
            if split > names.len() {
                return Err(Error::InvalidArgument("elimination split exceeds arity".into()));
            }
        }
        Ok(Arc::new(RingDescriptor { names, order, weights }))
    }

    /// Grevlex ring; panics on invalid names (for tests and constructors with literal names).
    pub fn grevlex<S: AsRef<str>>(names: &[S]) -> Ring {
        Self::new(names, MonomialOrder::Grevlex).expect("valid ring")
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, &self.weights, self.names.len())
    }

    #[inline]
    pub fn degree(&self, m: &Monomial) -> i64 {
        m.weighted_degree(&self.weights)
    }

    /// Same variables and weights, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring> {
        Self::with_weights(&self.names, order, self.weights.clone())
    }

    /// Same variables and order, different grading.
    pub fn reweighted(&self, weights: Vec<u32>) -> Result<Ring> {
        Self::with_weights(&self.names, self.order.clone(), weights)
    }

    /// True when both rings have identical variable lists (order and grading may differ).
    pub fn same_variables(&self, o: &RingDescriptor) -> bool {
        self.names == o.names
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QQ[{}]", self.names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_basics() {
        let r = RingDescriptor::grevlex(&["x", "y", "z"]);
        // x^2 > xy > y^2 > xz > yz > z^2
        let chain = [m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0]), m(&[1, 0, 1]), m(&[0, 1, 1]), m(&[0, 0, 2])];
        for w in chain.windows(2) {
            assert_eq!(r.cmp(&w[0], &w[1]), Ordering::Greater);
        }
        assert_eq!(r.cmp(&m(&[0, 0, 1]), &m(&[2, 0, 0])), Ordering::Less);
    }

    #[test]
    fn elimination_order_eliminates() {
        let r = RingDescriptor::new(&["t", "x", "y"], MonomialOrder::Elimination { split: 1 }).unwrap();
        assert_eq!(r.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(r.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(RingDescriptor::new(&["x", "x"], MonomialOrder::Grevlex).is_err());
        assert!(RingDescriptor::with_weights(&["x"], MonomialOrder::Grevlex, vec![0]).is_err());
    }
}
