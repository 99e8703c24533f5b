//! Algebraic invariants on random small inputs.

use freediv_core::groebner::{
    colon_principal, eliminate, groebner_basis, ideal_power, is_groebner_basis, normal_form, saturate, Ideal,
};
use freediv_core::homalg::{minimal_free_resolution, GradedModulePresentation};
use freediv_core::poly::{hessian, multivariate_gcd, ring_of, squarefree_part, variables, GradedMatrix};
use freediv_core::{Deadline, Polynomial, Rational, Ring};
use proptest::prelude::*;

fn dl() -> Deadline {
    Deadline::none()
}

fn xyz() -> Ring {
    ring_of(&["x", "y", "z"])
}

type Terms = Vec<(i64, [u8; 3])>;

fn terms(max_terms: usize, max_exp: u8) -> impl Strategy<Value = Terms> {
    prop::collection::vec((-5i64..6, [0..=max_exp, 0..=max_exp, 0..=max_exp]), 0..=max_terms)
}

fn build(r: &Ring, t: &Terms) -> Polynomial {
    let v = variables(r);
    t.iter().fold(Polynomial::zero(r), |acc, (c, e)| {
        let m = e.iter().enumerate().fold(Polynomial::from_int(r, *c), |m, (i, &k)| &m * &v[i].pow(k as u32));
        &acc + &m
    })
}

/// Homogeneous polynomial of degree d with small coefficients.
fn homogeneous(r: &Ring, d: u32, coeffs: &[i64]) -> Polynomial {
    let v = variables(r);
    let mut out = Polynomial::zero(r);
    let mut k = 0;
    for a in 0..=d {
        for b in 0..=d - a {
            let c = coeffs[k % coeffs.len()];
            k += 1;
            let m = &(&v[0].pow(a) * &v[1].pow(b)) * &v[2].pow(d - a - b);
            out = &out + &m.scale(&Rational::from_int(c));
        }
    }
    out
}

/// S-polynomial computed from leading terms, independent of the kernel.
fn s_poly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (mf, mg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = mf.lcm(mg);
    let a = f.mul_term(&l.div(mf), &f.leading_coefficient().unwrap().recip());
    let b = g.mul_term(&l.div(mg), &g.leading_coefficient().unwrap().recip());
    &a - &b
}

/// Plain multivariate division, leading term by leading term.
fn naive_remainder(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let r = f.ring();
    let mut p = f.clone();
    let mut rem = Polynomial::zero(r);
    while let Some(m) = p.leading_monomial().cloned() {
        let c = p.leading_coefficient().unwrap().clone();
        match basis.iter().find(|g| g.leading_monomial().is_some_and(|gm| gm.divides(&m))) {
            Some(g) => {
                let q = &c / g.leading_coefficient().unwrap();
                p = &p - &g.mul_term(&m.div(g.leading_monomial().unwrap()), &q);
            }
            None => {
                let t = Polynomial::monomial(r, m, c);
                rem = &rem + &t;
                p = &p - &t;
            }
        }
    }
    rem
}

fn assert_buchberger_closed(gb: &[Polynomial]) {
    for i in 0..gb.len() {
        for j in i + 1..gb.len() {
            assert!(naive_remainder(&s_poly(&gb[i], &gb[j]), gb).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in terms(4, 2), b in terms(4, 2), c in terms(4, 2)) {
        let r = xyz();
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn mixed_partials_commute(a in terms(6, 3)) {
        let r = xyz();
        let f = build(&r, &a);
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(
                    f.partial_derivative(i).partial_derivative(j),
                    f.partial_derivative(j).partial_derivative(i)
                );
            }
        }
        let g = homogeneous(&r, 3, &a.iter().map(|t| t.0).chain([1]).collect::<Vec<_>>());
        if !g.is_zero() {
            let h = hessian(&g).unwrap();
            prop_assert_eq!(h.transpose().rows(), h.rows());
        }
    }

    #[test]
    fn determinant_matches_cofactor(size in 1usize..=4, coeffs in prop::collection::vec(prop::collection::vec(-3i64..4, 3), 16)) {
        let r = xyz();
        let rows: Vec<Vec<Polynomial>> =
            (0..size).map(|i| (0..size).map(|j| homogeneous(&r, 1, &coeffs[i * 4 + j])).collect()).collect();
        let m = GradedMatrix::new(&r, rows, vec![0; size], vec![1; size]).unwrap();
        prop_assert_eq!(m.determinant().unwrap(), m.determinant_cofactor().unwrap());
    }

    #[test]
    fn squarefree_part_is_idempotent_and_ignores_powers(a in terms(3, 2), b in terms(3, 1), k in 1u32..3) {
        let r = xyz();
        let f = &build(&r, &a) * &build(&r, &b);
        prop_assume!(!f.is_zero());
        let s = squarefree_part(&f, dl()).unwrap();
        let ss = squarefree_part(&s, dl()).unwrap();
        prop_assert!(freediv_core::groebner::scalar_ratio(&s, &ss).is_some());
        let sp = squarefree_part(&f.pow(k + 1), dl()).unwrap();
        prop_assert!(freediv_core::groebner::scalar_ratio(&s, &sp).is_some());
    }

    #[test]
    fn gcd_divides_both(a in terms(3, 2), b in terms(3, 2), c in terms(2, 1)) {
        let r = xyz();
        let common = build(&r, &c);
        let f = &build(&r, &a) * &common;
        let g = &build(&r, &b) * &common;
        prop_assume!(!f.is_zero() && !g.is_zero());
        let d = multivariate_gcd(&f, &g, dl()).unwrap();
        prop_assert!(f.exact_div(&d).is_some());
        prop_assert!(g.exact_div(&d).is_some());
        prop_assert!(d.exact_div(&common).is_some() || common.is_constant());
    }

    #[test]
    fn buchberger_closure_and_normal_form(gens in prop::collection::vec(terms(3, 2), 1..4), probe in terms(4, 3)) {
        let r = xyz();
        let gens: Vec<Polynomial> = gens.iter().map(|t| build(&r, t)).filter(|p| !p.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let gb = groebner_basis(&r, &gens, dl()).unwrap();
        assert_buchberger_closed(&gb);
        prop_assert!(is_groebner_basis(&gb));
        for g in &gens {
            prop_assert!(naive_remainder(g, &gb).is_zero());
        }
        let f = build(&r, &probe);
        let nf = normal_form(&f, &gb);
        prop_assert!(normal_form(&(&f - &nf), &gb).is_zero());
        prop_assert_eq!(naive_remainder(&f, &gb), nf);
    }

    #[test]
    fn saturation_contains_and_is_idempotent(c in prop::collection::vec(-3i64..4, 6), d in 1u32..3, k in 1u32..3) {
        let r = xyz();
        let v = variables(&r);
        let g = homogeneous(&r, d, &c);
        prop_assume!(!g.is_zero());
        let i = Ideal::new(&r, vec![&g * &v[0].pow(k), &v[1] * &v[0]]).unwrap();
        let j = Ideal::new(&r, vec![v[0].clone()]).unwrap();
        let s = saturate(&i, &j, dl()).unwrap();
        prop_assert!(s.contains_ideal(&i, dl()).unwrap());
        let s2 = saturate(&s, &j, dl()).unwrap();
        prop_assert!(s2.equals(&s, dl()).unwrap());
        let col = colon_principal(&i, &v[0], dl()).unwrap();
        prop_assert!(s.contains_ideal(&col, dl()).unwrap());
    }

    #[test]
    fn elimination_stays_in_ideal(gens in prop::collection::vec(terms(3, 2), 1..4)) {
        let r = xyz();
        let gens: Vec<Polynomial> = gens.iter().map(|t| build(&r, t)).filter(|p| !p.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let i = Ideal::new(&r, gens).unwrap();
        let e = eliminate(&i, &[1, 2], dl()).unwrap();
        for g in e.generators() {
            let back = g.embed_by_name(&r).unwrap();
            prop_assert!(i.contains(&back, dl()).unwrap());
            prop_assert_eq!(back.support_vars().contains(&0), false);
        }
    }

    #[test]
    fn powers_multiply(c in prop::collection::vec(-3i64..4, 6), a in 1u32..3, b in 1u32..3) {
        let r = xyz();
        let v = variables(&r);
        let i = Ideal::new(&r, vec![homogeneous(&r, 2, &c), v[0].pow(2), &v[1] * &v[2]]).unwrap();
        let pa = ideal_power(&i, a, dl()).unwrap();
        let pb = ideal_power(&i, b, dl()).unwrap();
        let pab = ideal_power(&i, a + b, dl()).unwrap();
        prop_assert!(pab.contains_ideal(&pa.product(&pb).unwrap(), dl()).unwrap());
    }
}

fn quotient_presentation(r: &Ring, gens: &[Polynomial]) -> GradedModulePresentation {
    GradedModulePresentation::quotient_ring(r, gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn resolution_maps_compose_to_zero(c in prop::collection::vec(-3i64..4, 10), d in 2u32..4) {
        let r = xyz();
        let v = variables(&r);
        let gens = vec![homogeneous(&r, d, &c), v[0].pow(d), &v[1].pow(d - 1) * &v[2]];
        let res = minimal_free_resolution(&quotient_presentation(&r, &gens), dl()).unwrap();
        for w in res.maps.windows(2) {
            prop_assert!(w[0].mul(&w[1]).unwrap().is_zero());
        }
        for m in &res.maps {
            for row in m.rows() {
                prop_assert!(row.iter().all(|e| e.is_zero() || !e.is_constant()), "unit entry after pruning");
            }
        }
        let inv = freediv_core::homalg::quotient_invariants(&Ideal::new(&r, gens).unwrap(), dl()).unwrap();
        prop_assert_eq!(inv.depth() + inv.projective_dimension(), 3);
    }

    #[test]
    fn betti_numbers_ignore_the_generating_set(c in prop::collection::vec(-3i64..4, 10), s in -3i64..4) {
        let r = xyz();
        let v = variables(&r);
        let g1 = homogeneous(&r, 2, &c);
        let g2 = &v[0] * &v[1];
        let g3 = v[2].pow(2);
        let base = minimal_free_resolution(&quotient_presentation(&r, &[g1.clone(), g2.clone(), g3.clone()]), dl()).unwrap();
        // Unimodular change: (g1 + s·g2, g2 + g3, g3).
        let changed = [&g1 + &g2.scale(&Rational::from_int(s)), &g2 + &g3, g3.clone()];
        let other = minimal_free_resolution(&quotient_presentation(&r, &changed), dl()).unwrap();
        prop_assert_eq!(base.betti, other.betti);
    }

    #[test]
    fn hilbert_coefficients_count_standard_monomials(c in prop::collection::vec(-3i64..4, 10)) {
        let r = xyz();
        let v = variables(&r);
        let gens = vec![homogeneous(&r, 2, &c), &v[0] * &v[2], v[1].pow(3)];
        let res = minimal_free_resolution(&quotient_presentation(&r, &gens), dl()).unwrap();
        let gb = groebner_basis(&r, &gens, dl()).unwrap();
        let leads: Vec<_> = gb.iter().map(|g| *g.leading_monomial().unwrap()).collect();
        for deg in 0..=5u32 {
            let mut count = 0i64;
            for a in 0..=deg {
                for b in 0..=deg - a {
                    let m = freediv_core::Monomial::from_exponents(&[a, b, deg - a - b]);
                    if !leads.iter().any(|l| l.divides(&m)) {
                        count += 1;
                    }
                }
            }
            prop_assert_eq!(res.hilbert_series().coefficient(deg as i64), count, "degree {}", deg);
        }
    }
}
