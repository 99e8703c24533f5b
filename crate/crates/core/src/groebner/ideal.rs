//! Ideals with a cached reduced Gröbner basis.

use std::sync::OnceLock;

use super::dimension::{monomial_dimension, DimensionReport};
use super::kernel::{self, FreeModule, ModuleKind, Vector};
use crate::error::{Deadline, Error, Result};
use crate::poly::{same_ring, Monomial, MonomialOrder, Polynomial, Rational, Ring, RingDescriptor};

/// An ideal given by generators; the reduced Gröbner basis is computed once on demand.
#[derive(Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb }
    }
}

fn rank_one(ring: &Ring) -> FreeModule {
    FreeModule::new(ring, &[0], ModuleKind::Top)
}

/// Reduced Gröbner basis of the ideal generated by `gens` under the ring's order.
pub fn groebner_basis(ring: &Ring, gens: &[Polynomial], deadline: Deadline) -> Result<Vec<Polynomial>> {
    for g in gens {
        if !same_ring(g.ring(), ring) {
            return Err(Error::RingMismatch);
        }
    }
    let module = rank_one(ring);
    let vs = gens.iter().map(|g| Vector::from_poly(&module, g, 0)).collect();
    let gb = kernel::groebner(&module, vs, deadline)?;
    Ok(gb.iter().map(|v| v.to_poly(ring)).collect())
}

/// Remainder of `f` under full division by `basis` (the basis need not be a Gröbner basis).
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring();
    let module = rank_one(ring);
    let bs: Vec<Vector> = basis.iter().map(|b| Vector::from_poly(&module, b, 0)).collect();
    kernel::normal_form(&module, Vector::from_poly(&module, f, 0), &bs).to_poly(ring)
}

/// Buchberger criterion: all S-polynomials of `basis` reduce to zero against it.
pub fn is_groebner_basis(basis: &[Polynomial]) -> bool {
    let Some(first) = basis.first() else { return true };
    let module = rank_one(first.ring());
    let bs: Vec<Vector> = basis.iter().map(|b| Vector::from_poly(&module, b, 0)).collect();
    kernel::is_groebner(&module, &bs)
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, gb: OnceLock::new() })
    }

    /// Ideal whose generators are already a reduced Gröbner basis.
    fn from_gb(ring: &Ring, gb: Vec<Polynomial>) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(gb.clone());
        Ideal { ring: ring.clone(), gens: gb, gb: cell }
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal::from_gb(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal::from_gb(ring, vec![Polynomial::one(ring)])
    }

    /// The ideal generated by all variables with indices in `vars`.
    pub fn of_variables(ring: &Ring, vars: &[usize]) -> Self {
        Ideal::new(ring, vars.iter().map(|&i| Polynomial::var(ring, i)).collect()).expect("same ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    /// Reduced Gröbner basis, computing it under `deadline` if not cached yet.
    pub fn groebner_basis(&self, deadline: Deadline) -> Result<&[Polynomial]> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let gb = groebner_basis(&self.ring, &self.gens, deadline)?;
        let _ = self.gb.set(gb);
        Ok(self.gb.get().expect("just set"))
    }

    /// The cached basis, if already computed.
    pub fn cached_basis(&self) -> Option<&[Polynomial]> {
        self.gb.get().map(|v| v.as_slice())
    }

    pub fn normal_form(&self, f: &Polynomial, deadline: Deadline) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(normal_form(f, self.groebner_basis(deadline)?))
    }

    pub fn contains(&self, f: &Polynomial, deadline: Deadline) -> Result<bool> {
        Ok(self.normal_form(f, deadline)?.is_zero())
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal, deadline: Deadline) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g, deadline)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self, deadline: Deadline) -> Result<bool> {
        Ok(self.groebner_basis(deadline)?.iter().any(Polynomial::is_constant))
    }

    pub fn leading_monomials(&self, deadline: Deadline) -> Result<Vec<Monomial>> {
        Ok(self.groebner_basis(deadline)?.iter().map(|g| *g.leading_monomial().unwrap()).collect())
    }

    /// Krull dimension of R/I and height of I.
    pub fn dimension(&self, deadline: Deadline) -> Result<DimensionReport> {
        let n = self.ring.arity();
        let lms = self.leading_monomials(deadline)?;
        let d = if lms.iter().any(Monomial::is_one) { 0 } else { monomial_dimension(&lms, n) };
        let height = if lms.iter().any(Monomial::is_one) { n } else { n - d };
        Ok(DimensionReport { krull_dimension: d, height })
    }

    pub fn height(&self, deadline: Deadline) -> Result<usize> {
        Ok(self.dimension(deadline)?.height)
    }

    /// Equality via reduced Gröbner bases.
    pub fn equals(&self, other: &Ideal, deadline: Deadline) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.groebner_basis(deadline)? == other.groebner_basis(deadline)?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        Ideal::new(&self.ring, g)
    }

    /// Minimal homogeneous generators (graded Nakayama); errors on inhomogeneous input.
    pub fn minimal_generators(&self, deadline: Deadline) -> Result<Vec<Polynomial>> {
        minimal_generators(&self.gens, deadline)
    }

    /// Same ideal viewed in a ring with the same variables and another order.
    pub fn with_ring(&self, ring: &Ring) -> Result<Ideal> {
        let g = self.gens.iter().map(|p| p.with_ring(ring)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, g)
    }
}

/// Minimal generators of a homogeneous ideal, as a subset of `gens` in input order.
pub fn minimal_generators(gens: &[Polynomial], deadline: Deadline) -> Result<Vec<Polynomial>> {
    let gens: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let Some(first) = gens.first() else { return Ok(Vec::new()) };
    let ring = first.ring().clone();
    let degs: Vec<Option<i64>> = gens.iter().map(|g| g.homogeneous_degree()).collect();
    if degs.iter().any(Option::is_none) {
        return Err(Error::NonHomogeneous);
    }
    if degs.windows(2).all(|w| w[0] == w[1]) {
        return Ok(linear_basis(&gens));
    }
    let module = rank_one(&ring);
    let vs: Vec<Vector> = gens.iter().map(|g| Vector::from_poly(&module, g, 0)).collect();
    let idx = kernel::minimal_generator_indices(&module, &vs, deadline)?;
    Ok(idx.into_iter().map(|i| gens[i].clone()).collect())
}

/// A maximal linearly independent subset (greedy, input order) of equal-degree forms.
fn linear_basis(gens: &[Polynomial]) -> Vec<Polynomial> {
    // echelon rows keyed by pivot monomial
    let mut rows: Vec<Polynomial> = Vec::new();
    let mut kept = Vec::new();
    for g in gens {
        let mut r = g.clone();
        loop {
            let Some(lm) = r.leading_monomial().copied() else { break };
            match rows.iter().find(|row| row.leading_monomial() == Some(&lm)) {
                Some(row) => {
                    let c = r.leading_coefficient().unwrap().clone();
                    r = &r - &row.scale(&c);
                }
                None => break,
            }
        }
        if !r.is_zero() {
            // fully reduce older rows is unnecessary: pivots stay distinct
            rows.push(r.monic());
            kept.push(g.clone());
        }
    }
    kept
}

fn fresh_name(ring: &Ring, base: &str) -> String {
    let mut name = base.to_string();
    while ring.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

/// Generators of `I ∩ k[keep]`, computed with an elimination block order.
pub fn eliminate(ideal: &Ideal, keep: &[usize], deadline: Deadline) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.arity();
    if keep.iter().any(|&i| i >= n) {
        return Err(Error::InvalidArgument("variable index out of range".into()));
    }
    let elim: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    if elim.is_empty() {
        return Ok(ideal.clone());
    }
    let mut kept_sorted: Vec<usize> = keep.to_vec();
    kept_sorted.sort_unstable();
    kept_sorted.dedup();
    let perm: Vec<usize> = elim.iter().chain(kept_sorted.iter()).copied().collect();
    let names: Vec<&str> = perm.iter().map(|&i| ring.name(i)).collect();
    let weights: Vec<u32> = perm.iter().map(|&i| ring.weights()[i]).collect();
    let er = RingDescriptor::with_weights(&names, MonomialOrder::Elimination { split: elim.len() }, weights)?;
    // map original index -> position in the elimination ring
    let mut to_new = vec![0usize; n];
    for (pos, &i) in perm.iter().enumerate() {
        to_new[i] = pos;
    }
    let gens: Vec<Polynomial> = ideal.generators().iter().map(|g| g.embed(&er, &to_new)).collect();
    let gb = groebner_basis(&er, &gens, deadline)?;
    let elim_mask: u32 = (1u32 << elim.len()) - 1;
    let back: Vec<usize> = perm.clone();
    let out: Vec<Polynomial> = gb
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.support_mask() & elim_mask == 0))
        .map(|g| g.embed(ring, &back))
        .collect();
    Ideal::new(ring, out)
}

/// Eliminate the variables with indices `vars`.
pub fn eliminate_variables(ideal: &Ideal, vars: &[usize], deadline: Deadline) -> Result<Ideal> {
    let keep: Vec<usize> = (0..ideal.ring().arity()).filter(|i| !vars.contains(i)).collect();
    eliminate(ideal, &keep, deadline)
}

/// `I : g^∞` by the auxiliary-variable method.
pub fn saturate_principal(ideal: &Ideal, g: &Polynomial, deadline: Deadline) -> Result<Ideal> {
    let ring = ideal.ring();
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if g.is_constant() {
        return Ok(ideal.clone());
    }
    let t = fresh_name(ring, "_t");
    let mut names: Vec<String> = ring.names().to_vec();
    names.push(t);
    let mut weights = ring.weights().to_vec();
    weights.push(1);
    let ext = RingDescriptor::with_weights(&names, ring.order().clone(), weights)?;
    let n = ring.arity();
    let id: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Polynomial> = ideal.generators().iter().map(|p| p.embed(&ext, &id)).collect();
    let tv = Polynomial::var(&ext, n);
    gens.push(&Polynomial::one(&ext) - &(&tv * &g.embed(&ext, &id)));
    let j = Ideal::new(&ext, gens)?;
    let e = eliminate_variables(&j, &[n], deadline)?;
    let back: Vec<Polynomial> = e
        .generators()
        .iter()
        .map(|p| {
            let mut images: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(ring, i)).collect();
            images.push(Polynomial::zero(ring));
            p.substitute(&images)
        })
        .collect::<Result<_>>()?;
    let gb = groebner_basis(ring, &back, deadline)?;
    Ok(Ideal::from_gb(ring, gb))
}

/// `I : J^∞`, one generator of J at a time.
pub fn saturate(ideal: &Ideal, by: &Ideal, deadline: Deadline) -> Result<Ideal> {
    if !same_ring(ideal.ring(), by.ring()) {
        return Err(Error::RingMismatch);
    }
    if by.is_zero_ideal() {
        return Err(Error::ZeroInput);
    }
    // I : J^∞ = ∩_g (I : g^∞)
    let mut acc: Option<Ideal> = None;
    for g in by.generators() {
        let s = saturate_principal(ideal, g, deadline)?;
        acc = Some(match acc {
            None => s,
            Some(a) => intersect(&a, &s, deadline)?,
        });
    }
    Ok(acc.expect("nonempty"))
}

fn twist_of(p: &Polynomial) -> i64 {
    p.homogeneous_degree().unwrap_or(0)
}

/// `I : g` via a position-over-term module Gröbner basis in R².
pub fn colon_principal(ideal: &Ideal, g: &Polynomial, deadline: Deadline) -> Result<Ideal> {
    let ring = ideal.ring();
    if g.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    let module = FreeModule::new(ring, &[0, twist_of(g)], ModuleKind::Pot);
    let mut gens = vec![Vector::from_polys(&module, &[g.clone(), Polynomial::one(ring)])];
    for i in ideal.generators() {
        gens.push(Vector::from_poly(&module, i, 0));
    }
    let gb = kernel::groebner(&module, gens, deadline)?;
    let out: Vec<Polynomial> = gb
        .iter()
        .filter(|v| v.lead().unwrap().c == 1)
        .map(|v| v.to_polys(ring, 2).pop().unwrap())
        .collect();
    let gb = groebner_basis(ring, &out, deadline)?;
    Ok(Ideal::from_gb(ring, gb))
}

/// `I : J = ∩_g (I : g)`.
pub fn colon(ideal: &Ideal, by: &Ideal, deadline: Deadline) -> Result<Ideal> {
    if !same_ring(ideal.ring(), by.ring()) {
        return Err(Error::RingMismatch);
    }
    let mut acc = Ideal::unit(ideal.ring());
    for g in by.generators() {
        let c = colon_principal(ideal, g, deadline)?;
        acc = intersect(&acc, &c, deadline)?;
    }
    Ok(acc)
}

/// `I ∩ K` via a module Gröbner basis of `{(i,0)} ∪ {(k,k)}` in R².
pub fn intersect(a: &Ideal, b: &Ideal, deadline: Deadline) -> Result<Ideal> {
    let ring = a.ring();
    if !same_ring(ring, b.ring()) {
        return Err(Error::RingMismatch);
    }
    if a.is_unit(deadline)? {
        return Ok(b.clone());
    }
    if b.is_unit(deadline)? {
        return Ok(a.clone());
    }
    let module = FreeModule::new(ring, &[0, 0], ModuleKind::Pot);
    let mut gens: Vec<Vector> = a.generators().iter().map(|p| Vector::from_poly(&module, p, 0)).collect();
    for k in b.generators() {
        gens.push(Vector::from_polys(&module, &[k.clone(), k.clone()]));
    }
    let gb = kernel::groebner(&module, gens, deadline)?;
    let out: Vec<Polynomial> = gb
        .iter()
        .filter(|v| v.lead().unwrap().c == 1)
        .map(|v| v.to_polys(ring, 2).pop().unwrap())
        .collect();
    let gb = groebner_basis(ring, &out, deadline)?;
    Ok(Ideal::from_gb(ring, gb))
}

/// `I^m`, generated by all m-fold products; minimalized when homogeneous.
pub fn ideal_power(ideal: &Ideal, m: u32, deadline: Deadline) -> Result<Ideal> {
    if m < 1 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let ring = ideal.ring();
    let gens = ideal.generators();
    // products indexed by non-decreasing index sequences
    let mut layer: Vec<(usize, Polynomial)> = gens.iter().enumerate().map(|(i, g)| (i, g.clone())).collect();
    for _ in 1..m {
        deadline.check()?;
        let mut next = Vec::new();
        for (last, p) in &layer {
            for (j, g) in gens.iter().enumerate().skip(*last) {
                next.push((j, p * g));
            }
        }
        layer = next;
    }
    let mut prods: Vec<Polynomial> = layer.into_iter().map(|(_, p)| p).collect();
    if ideal.is_homogeneous() {
        prods = minimal_generators(&prods, deadline)?;
    } else {
        prods.sort_by(|a, b| a.terms().len().cmp(&b.terms().len()));
        prods.dedup();
    }
    Ideal::new(ring, prods)
}

/// Scalar multiple test: `a = λ b` for a nonzero rational λ (returned).
pub fn scalar_ratio(a: &Polynomial, b: &Polynomial) -> Option<Rational> {
    if a.is_zero() || b.is_zero() || a.len() != b.len() {
        return None;
    }
    let lambda = a.leading_coefficient()? / b.leading_coefficient()?;
    (b.scale(&lambda) == *a).then_some(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ring_of, variables};
    use proptest::prelude::*;

    fn dl() -> Deadline {
        Deadline::none()
    }

    #[test]
    fn small_bases() {
        let r = ring_of(&["x", "y", "z"]);
        let v = variables(&r);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let gb = groebner_basis(&r, &[x + y, x - y], dl()).unwrap();
        assert_eq!(gb, vec![y.clone(), x.clone()]);
        let i = Ideal::new(&r, vec![y * z, x * z, x * y]).unwrap();
        assert_eq!(i.groebner_basis(dl()).unwrap().len(), 3);
        assert!(is_groebner_basis(i.generators()));
        let d = i.dimension(dl()).unwrap();
        assert_eq!((d.krull_dimension, d.height), (1, 2));
        assert_eq!(Ideal::zero(&r).dimension(dl()).unwrap().krull_dimension, 3);
    }

    #[test]
    fn membership_and_normal_form() {
        let r = ring_of(&["x", "y", "z"]);
        let v = variables(&r);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        assert!(normal_form(&x.pow(2), &[x.clone()]).is_zero());
        assert_eq!(normal_form(&(x + y), &[]), x + y);
        let f = &(x * y) * z;
        let jf = Ideal::new(&r, (0..3).map(|i| f.partial_derivative(i)).collect()).unwrap();
        assert!(jf.contains(&f, dl()).unwrap());
        assert!(!Ideal::new(&r, vec![y.clone()]).unwrap().contains(x, dl()).unwrap());
    }

    #[test]
    fn elimination() {
        let r = ring_of(&["t", "x", "y"]);
        let v = variables(&r);
        let i = Ideal::new(&r, vec![&v[0] - &v[1], &v[0] - &v[2]]).unwrap();
        let e = eliminate(&i, &[1, 2], dl()).unwrap();
        let expect = Ideal::new(&r, vec![&v[1] - &v[2]]).unwrap();
        assert!(e.equals(&expect, dl()).unwrap());
    }

    #[test]
    fn colon_and_saturation() {
        let r = ring_of(&["x", "y"]);
        let v = variables(&r);
        let (x, y) = (&v[0], &v[1]);
        let i = Ideal::new(&r, vec![x.pow(2), x * y]).unwrap();
        let c = colon_principal(&i, x, dl()).unwrap();
        assert!(c.equals(&Ideal::new(&r, vec![x.clone(), y.clone()]).unwrap(), dl()).unwrap());
        let s = saturate(&Ideal::new(&r, vec![&x.pow(2) * y]).unwrap(), &Ideal::new(&r, vec![x.clone()]).unwrap(), dl()).unwrap();
        assert!(s.equals(&Ideal::new(&r, vec![y.clone()]).unwrap(), dl()).unwrap());
        let xx = Ideal::new(&r, vec![x.clone()]).unwrap();
        assert!(colon(&xx, &xx, dl()).unwrap().is_unit(dl()).unwrap());
        let i2 = Ideal::new(&r, vec![x * y]).unwrap();
        assert!(colon(&i2, &xx, dl()).unwrap().equals(&Ideal::new(&r, vec![y.clone()]).unwrap(), dl()).unwrap());
    }

    #[test]
    fn powers() {
        let r = ring_of(&["x", "y"]);
        let m = Ideal::of_variables(&r, &[0, 1]);
        let m2 = ideal_power(&m, 2, dl()).unwrap();
        assert_eq!(m2.generators().len(), 3);
        assert!(ideal_power(&m, 0, dl()).is_err());
    }

    fn small_poly(r: &Ring, coeffs: &[(i64, [u32; 3])]) -> Polynomial {
        Polynomial::from_terms(r, coeffs.iter().map(|(c, e)| (Monomial::from_exponents(e), Rational::from_int(*c))).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn buchberger_output_is_groebner(
            raw in proptest::collection::vec(proptest::collection::vec((-3i64..=3, [0u32..3, 0u32..3, 0u32..3]), 1..4), 1..4)
        ) {
            let r = ring_of(&["x", "y", "z"]);
            let gens: Vec<Polynomial> = raw.iter().map(|c| small_poly(&r, c)).collect();
            let gb = groebner_basis(&r, &gens, dl()).unwrap();
            prop_assert!(is_groebner_basis(&gb));
            for g in &gens {
                prop_assert!(normal_form(g, &gb).is_zero());
            }
        }
    }
}
