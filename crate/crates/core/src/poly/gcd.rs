//! Multivariate gcd through ideal intersection.

use super::polynomial::{same_ring, Polynomial};
use crate::error::{Deadline, Error, Result};
use crate::groebner::{intersect, Ideal};

/// Monic gcd of `f` and `g`: `f·g / lcm`, with the lcm generating `(f) ∩ (g)`.
pub fn multivariate_gcd(f: &Polynomial, g: &Polynomial, deadline: Deadline) -> Result<Polynomial> {
    if !same_ring(f.ring(), g.ring()) {
        return Err(Error::RingMismatch);
    }
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(Error::ZeroInput),
        (true, false) => return Ok(g.monic()),
        (false, true) => return Ok(f.monic()),
        _ => {}
    }
    if f.is_constant() || g.is_constant() {
        return Ok(Polynomial::one(f.ring()));
    }
    if let Some(q) = f.exact_div(g) {
        drop(q);
        return Ok(g.monic());
    }
    if let Some(q) = g.exact_div(f) {
        drop(q);
        return Ok(f.monic());
    }
    let ring = f.ring();
    let a = Ideal::new(ring, vec![f.clone()])?;
    let b = Ideal::new(ring, vec![g.clone()])?;
    let meet = intersect(&a, &b, deadline)?;
    let gb = meet.groebner_basis(deadline)?;
    if gb.len() != 1 {
        return Err(Error::Internal("intersection of principal ideals is not principal".into()));
    }
    let prod = f * g;
    let q = prod
        .exact_div(&gb[0])
        .ok_or_else(|| Error::Internal("lcm does not divide the product".into()))?;
    Ok(q.monic())
}

/// `f / gcd(f, ∂f/∂x_1, …, ∂f/∂x_n)`, monic.
pub fn squarefree_part(f: &Polynomial, deadline: Deadline) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut g = f.clone();
    for i in 0..f.ring().arity() {
        let d = f.partial_derivative(i);
        if d.is_zero() {
            continue;
        }
        g = multivariate_gcd(&g, &d, deadline)?;
        if g.is_constant() {
            break;
        }
    }
    let q = f.exact_div(&g).ok_or_else(|| Error::Internal("gcd does not divide f".into()))?;
    Ok(q.monic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ring_of, variables};

    #[test]
    fn gcd_examples() {
        let r = ring_of(&["x", "y"]);
        let v = variables(&r);
        let (x, y) = (&v[0], &v[1]);
        let dl = Deadline::none();
        assert_eq!(multivariate_gcd(&(&x.pow(2) * y), &(x * &y.pow(2)), dl).unwrap(), x * y);
        assert_eq!(multivariate_gcd(&(x + y), &Polynomial::one(&r), dl).unwrap(), Polynomial::one(&r));
        let a = &x.pow(2) - &y.pow(2);
        let b = (x + y).pow(2);
        let g = multivariate_gcd(&a, &b, dl).unwrap();
        assert_eq!(g, x + y);
        assert!(a.exact_div(&g).is_some() && b.exact_div(&g).is_some());
        assert_eq!(multivariate_gcd(&Polynomial::zero(&r), &Polynomial::zero(&r), dl), Err(Error::ZeroInput));
    }

    #[test]
    fn squarefree() {
        let r = ring_of(&["x", "y"]);
        let v = variables(&r);
        let dl = Deadline::none();
        let f = &v[0].pow(2) * &v[1];
        assert_eq!(squarefree_part(&f, dl).unwrap(), &v[0] * &v[1]);
        let p = &(&v[0] + &v[1]) * &(&v[0] - &v[1]);
        let s = squarefree_part(&p.pow(3), dl).unwrap();
        assert_eq!(s, p.monic());
        assert_eq!(squarefree_part(&s, dl).unwrap(), s);
    }
}
