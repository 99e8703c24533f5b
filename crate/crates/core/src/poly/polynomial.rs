//! Sparse distributed polynomials over the rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::monomial::Monomial;
use super::rational::Rational;
use super::ring::{Ring, RingDescriptor};
use crate::error::{Error, Result};

/// A polynomial: nonzero terms sorted strictly descending in the ring's order.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Rational)>,
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for Polynomial {
    fn eq(&self, o: &Self) -> bool {
        same_ring(&self.ring, &o.ring) && self.terms == o.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn from_int(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, Rational::from_int(c))
    }

    pub fn one(ring: &Ring) -> Self {
        Self::from_int(ring, 1)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rational) -> Self {
        let terms = if c.is_zero() { vec![] } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// The i-th variable; panics on a bad index.
    pub fn var(ring: &Ring, i: usize) -> Self {
        assert!(i < ring.arity(), "variable index out of range");
        Self::monomial(ring, Monomial::var(i), Rational::one())
    }

    /// The variable called `name`; panics if absent (constructor convenience).
    pub fn var_named(ring: &Ring, name: &str) -> Self {
        let i = ring.index_of(name).unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var(ring, i)
    }

    /// Normalize an arbitrary term list (any order, duplicates, zeros).
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, Rational)>) -> Self {
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = &last.1 + &c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if matches!(out.last(), Some(l) if l.1.is_zero()) {
            out.pop();
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Trusted constructor: terms already sorted descending with no zeros.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Scalar value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    /// Maximal weighted degree of a term (`None` for zero).
    pub fn degree(&self) -> Option<i64> {
        self.terms.iter().map(|(m, _)| self.ring.degree(m)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some() || self.is_zero()
    }

    /// Common degree of all terms, `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let d = self.ring.degree(&self.terms.first()?.0);
        self.terms.iter().all(|(m, _)| self.ring.degree(m) == d).then_some(d)
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|t| self.ring.cmp(m, &t.0))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    fn check_ring(&self, o: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &o.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, o: &Polynomial, negate: bool) -> Polynomial {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn try_add(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check_ring(o)?;
        Ok(self.merge(o, false))
    }

    pub fn try_sub(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check_ring(o)?;
        Ok(self.merge(o, true))
    }

    pub fn try_mul(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check_ring(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return Ok(big.mul_term(m, c));
        }
        let mut prods = Vec::with_capacity(self.len() * o.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                prods.push((ma.mul(mb), ca * cb));
            }
        }
        Ok(Polynomial::from_terms(&self.ring, prods))
    }

    /// Multiply by the term `c*m` (keeps the order, no re-sorting).
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc * c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Divide by the leading coefficient (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        assert!(i < self.ring.arity(), "variable index out of range");
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                let mut nm = *m;
                nm.set_exp(i, e - 1);
                terms.push((nm, c * &Rational::from_int(e as i64)));
            }
        }
        // differentiation can break the order for non-degree orders, so normalize
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Evaluate at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.arity(), "point dimension");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, p) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = &t * &p.pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Ring homomorphism sending variable i to `images[i]` (all in one target ring).
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.arity() {
            return Err(Error::InvalidArgument(format!(
                "substitution needs {} images, got {}",
                self.ring.arity(),
                images.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => self.ring.clone(),
        };
        if images.iter().any(|p| !same_ring(&p.ring, &target)) {
            return Err(Error::RingMismatch);
        }
        let mut cache: Vec<Vec<Polynomial>> = vec![Vec::new(); images.len()];
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, img) in images.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                let pw = &mut cache[i];
                if pw.is_empty() {
                    pw.push(Polynomial::one(&target));
                }
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * img;
                    pw.push(next);
                }
                t = &t * &pw[e];
                if t.is_zero() {
                    break;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitute by variable name; unnamed variables map to themselves.
    pub fn substitute_named(&self, assignment: &[(&str, Polynomial)]) -> Result<Polynomial> {
        let mut images: Vec<Polynomial> = (0..self.ring.arity()).map(|i| Polynomial::var(&self.ring, i)).collect();
        for (name, img) in assignment {
            let i = self
                .ring
                .index_of(name)
                .ok_or_else(|| Error::InvalidArgument(format!("undefined variable `{name}`")))?;
            if !same_ring(&img.ring, &self.ring) {
                return Err(Error::RingMismatch);
            }
            images[i] = img.clone();
        }
        self.substitute(&images)
    }

    /// Move to a ring with the same variables in another order or grading.
    pub fn with_ring(&self, ring: &Ring) -> Result<Polynomial> {
        if !self.ring.same_variables(ring) {
            return Err(Error::RingMismatch);
        }
        if **ring == *self.ring {
            return Ok(Polynomial { ring: ring.clone(), terms: self.terms.clone() });
        }
        Ok(Polynomial::from_terms(ring, self.terms.clone()))
    }

    /// Rename variables into another ring: variable i goes to `map[i]`.
    pub fn embed(&self, ring: &Ring, map: &[usize]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.remap(map), c.clone())).collect();
        Polynomial::from_terms(ring, terms)
    }

    /// Embed into a ring by matching variable names.
    pub fn embed_by_name(&self, ring: &Ring) -> Result<Polynomial> {
        let map = self
            .ring
            .names()
            .iter()
            .map(|n| ring.index_of(n).ok_or_else(|| Error::InvalidArgument(format!("variable `{n}` missing"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.embed(ring, &map))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = d.terms.first()?;
        let inv = lc.recip();
        let mut rem = self.clone();
        let mut q: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let qm = lm.quotient_of(m)?;
            let qc = c * &inv;
            rem = rem.merge(&d.mul_term(&qm, &qc), true);
            q.push((qm, qc));
        }
        Some(Polynomial::from_sorted(&self.ring, q))
    }

    /// Variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        let mask = self.terms.iter().fold(0u32, |acc, (m, _)| acc | m.support_mask());
        (0..self.ring.arity()).filter(|i| mask >> i & 1 == 1).collect()
    }

    /// Canonical expression string (parsable by the cli expression grammar).
    pub fn to_expr_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(a.to_string());
            }
            for i in 0..self.ring.arity() {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(self.ring.name(i).to_string()),
                    e => factors.push(format!("{}^{}", self.ring.name(i), e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    /// Panics on ring mismatch; use [`Polynomial::try_add`] for a fallible version.
    fn add(self, o: &Polynomial) -> Polynomial {
        self.try_add(o).expect("ring mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        self.try_sub(o).expect("ring mismatch")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        self.try_mul(o).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Rational::from_int(-1))
    }
}

macro_rules! forward_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: &Polynomial) -> Polynomial {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                self.$m(&o)
            }
        }
    };
}
forward_poly!(Add, add);
forward_poly!(Sub, sub);
forward_poly!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Convenience: the variables of a ring as polynomials.
pub fn variables(ring: &Ring) -> Vec<Polynomial> {
    (0..ring.arity()).map(|i| Polynomial::var(ring, i)).collect()
}

/// Check that ∑ x_i ∂f/∂x_i = deg(f)·f (weighted Euler identity).
pub fn euler_check(f: &Polynomial) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let d = f.homogeneous_degree().ok_or(Error::NonHomogeneous)?;
    let ring = f.ring();
    let mut lhs = Polynomial::zero(ring);
    for i in 0..ring.arity() {
        let w = Rational::from_int(ring.weights()[i] as i64);
        lhs = &lhs + &(&Polynomial::var(ring, i) * &f.partial_derivative(i)).scale(&w);
    }
    Ok(lhs == f.scale(&Rational::from_int(d)))
}

/// Ring with the same description (convenience for tests and constructors).
pub fn ring_of(names: &[&str]) -> Ring {
    RingDescriptor::grevlex(names)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> (Ring, Polynomial, Polynomial, Polynomial) {
        let r = ring_of(&["x", "y", "z"]);
        let v = variables(&r);
        (r, v[0].clone(), v[1].clone(), v[2].clone())
    }

    #[test]
    fn difference_of_squares() {
        let (_, x, y, _) = xyz();
        let p = (&x + &y) * (&x - &y);
        assert_eq!(p, &x * &x - &y * &y);
        assert_eq!(p.to_string(), "x^2 - y^2");
        assert_eq!(&p + &Polynomial::zero(p.ring()), p);
    }

    #[test]
    fn expansion_family3_small() {
        let (_, x, y, z) = xyz();
        // (x^2 - y z)^2 + y^4
        let b = &x.pow(2) - &(&y * &z);
        let f = &b.pow(2) + &y.pow(4);
        let expected = &(&x.pow(4) - &(&x.pow(2) * &(&y * &z)).scale(&Rational::from_int(2))) + &(&y.pow(2) * &z.pow(2));
        assert_eq!(f, &expected + &y.pow(4));
    }

    #[test]
    fn derivatives() {
        let (_, x, y, z) = xyz();
        let f = &(&x * &y) * &z;
        assert_eq!(f.partial_derivative(0), &y * &z);
        let r = ring_of(&["x", "y", "z", "w", "t"]);
        let v = variables(&r);
        let gn = &(&(&v[0] * &v[3].pow(2)) + &(&v[1] * &(&v[4] * &v[3]))) + &(&v[2] * &v[4].pow(2));
        let expected = &(&v[1] * &v[3]) + &(&v[2] * &v[4]).scale(&Rational::from_int(2));
        assert_eq!(gn.partial_derivative(4), expected);
    }

    #[test]
    fn euler() {
        let (_, x, y, z) = xyz();
        assert!(euler_check(&(&(&x * &y) * &z)).unwrap());
        assert!(euler_check(&(&x.pow(2) + &(&x * &y))).unwrap());
        assert_eq!(euler_check(&(&x.pow(2) + &x)), Err(Error::NonHomogeneous));
    }

    #[test]
    fn substitution_and_division() {
        let (r, x, y, _) = xyz();
        let p = &x + &y;
        let q = p.substitute_named(&[("x", Polynomial::zero(&r))]).unwrap();
        assert_eq!(q, y);
        let s = (&x + &y).pow(3);
        assert_eq!(s.exact_div(&(&x + &y)).unwrap(), (&x + &y).pow(2));
        assert!(s.exact_div(&(&x - &y)).is_none());
        assert!(p.substitute_named(&[("w", x.clone())]).is_err());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let (_, x, _, _) = xyz();
        let other = ring_of(&["a"]);
        assert_eq!(x.try_add(&Polynomial::var(&other, 0)), Err(Error::RingMismatch));
    }
}
