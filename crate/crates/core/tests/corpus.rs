//! Invariants checked on every fixture of the regression corpus.

use freediv_core::blowup::BlowupContext;
use freediv_core::divisor::{
    der_regularity, derivations_from_syzygies, gradient, is_free_divisor, is_linear_free, jacobian_ideal, saito_check,
    LogDerivation,
};
use freediv_core::families::{build, corpus_specs, example, family1, FamilySpec, Fixture};
use freediv_core::groebner::{colon_principal, Ideal};
use freediv_core::homalg::quotient_invariants;
use freediv_core::maxspread::{cokernel_cf, depth_power_table, homaloidal_sufficient, max_spread_check};
use freediv_core::{Deadline, Polynomial, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dl() -> Deadline {
    Deadline::none()
}

fn fixtures() -> Vec<Fixture> {
    corpus_specs()
        .iter()
        .map(|s| build(s, false).unwrap())
        .filter(|fx| fx.rejected.is_none() && !fx.slow)
        .collect()
}

fn stated_degree(spec: &FamilySpec) -> Option<i64> {
    Some(match spec {
        FamilySpec::Family1 { n } => *n as i64,
        FamilySpec::Family2 { n } => 2 * *n as i64,
        FamilySpec::Family3 { alpha, beta } => (alpha * beta) as i64,
        FamilySpec::Family3g { alpha, beta } => (alpha * beta - alpha) as i64,
        FamilySpec::Family4 { .. } => 3,
        FamilySpec::NormalCrossing { n } => *n as i64,
        FamilySpec::Example { .. } => return None,
    })
}

/// depth R/I as the length of a maximal regular sequence of seeded random
/// linear forms, each tested by a colon ideal.
fn depth_by_regular_sequence(i: &Ideal, seed: u64) -> usize {
    let r = i.ring().clone();
    let n = r.arity();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = i.clone();
    let mut depth = 0;
    while depth < n {
        let l = (0..n).fold(Polynomial::zero(&r), |acc, k| {
            &acc + &Polynomial::var(&r, k).scale(&Rational::from_int(rng.random_range(-9..=9)))
        });
        if l.is_zero() {
            continue;
        }
        let col = colon_principal(&cur, &l, dl()).unwrap();
        if !cur.equals(&col, dl()).unwrap() {
            break;
        }
        let mut gens = cur.generators().to_vec();
        gens.push(l);
        cur = Ideal::new(&r, gens).unwrap();
        depth += 1;
    }
    depth
}

#[test]
fn degrees_follow_the_family_law() {
    for fx in fixtures() {
        let d = fx.polynomial.homogeneous_degree().unwrap();
        if let Some(want) = stated_degree(&fx.spec) {
            assert_eq!(d, want, "{}", fx.name);
        }
    }
}

#[test]
fn depth_plus_projdim_is_arity() {
    for fx in fixtures() {
        let j = jacobian_ideal(&fx.polynomial).unwrap();
        let inv = quotient_invariants(&j, dl()).unwrap();
        let n = fx.polynomial.ring().arity();
        assert_eq!(depth_by_regular_sequence(&j, 7) + inv.projective_dimension(), n, "{}", fx.name);
    }
}

#[test]
fn blowup_invariants() {
    for fx in fixtures() {
        let f = &fx.polynomial;
        let n = f.ring().arity();
        let ctx = BlowupContext::new(gradient(f), dl()).unwrap();
        let sym = ctx.symmetric_ideal().unwrap();
        let rees = ctx.rees_ideal(dl()).unwrap();
        assert!(rees.contains_ideal(&sym, dl()).unwrap(), "{}: Sym ⊄ Rees", fx.name);
        for g in rees.groebner_basis(dl()).unwrap() {
            assert!(ctx.vanishes_on_rees_map(g).unwrap(), "{}: {g}", fx.name);
        }
        let fiber = ctx.fiber_from_rees(&rees, dl()).unwrap();
        if n <= 5 && fx.polynomial.homogeneous_degree().unwrap() <= 5 {
            assert!(fiber.equals(&ctx.fiber_ideal(dl()).unwrap(), dl()).unwrap(), "{}: fiber routes", fx.name);
        }
        let a = fiber.dimension(dl()).unwrap().krull_dimension;
        assert_eq!(a, ctx.jacobian_rank().unwrap(), "{}: spread methods", fx.name);
        assert_eq!(rees.dimension(dl()).unwrap().krull_dimension, n + 1, "{}: dim Rees", fx.name);
        if sym.equals(&rees, dl()).unwrap() {
            assert_eq!(a, n, "{}: linear type forces ℓ = n", fx.name);
            let (cm, r) = freediv_core::blowup::fiber_verdict(&fiber, dl()).unwrap();
            assert!(cm && r == Some(0), "{}", fx.name);
        }
    }
}

#[test]
fn freeness_routes_agree() {
    for fx in fixtures() {
        let f = &fx.polynomial;
        let n = f.ring().arity();
        let v = is_free_divisor(f, dl()).unwrap();
        let mut basis = derivations_from_syzygies(f, &v.syzygy_matrix).unwrap();
        basis.push(LogDerivation::euler(f));
        let saito = if basis.len() == n { saito_check(f, &basis).unwrap() } else { None };
        assert_eq!(v.free, saito.is_some(), "{}", fx.name);
        assert_eq!(v.free, v.jacobian_height == 2 && v.jacobian_pd == 1, "{}", fx.name);
        if v.free {
            let j = jacobian_ideal(f).unwrap();
            let minors = Ideal::new(f.ring(), v.syzygy_matrix.minors(n - 1)).unwrap();
            assert!(minors.equals(&j, dl()).unwrap(), "{}: Hilbert–Burch", fx.name);
            let d = f.homogeneous_degree().unwrap();
            assert_eq!(der_regularity(f, dl()).unwrap(), Some(d - 2), "{}", fx.name);
        }
        if is_linear_free(f, dl()).unwrap() {
            assert_eq!(f.homogeneous_degree().unwrap(), n as i64, "{}", fx.name);
        }
    }
}

#[test]
fn max_spread_verdicts_coincide() {
    for fx in fixtures() {
        let f = &fx.polynomial;
        let n = f.ring().arity();
        let v = max_spread_check(f, None, dl()).unwrap();
        assert_eq!(v.dim_cf, v.dim_cf_by_fitting, "{}", fx.name);
        assert_eq!(v.hessian_det_nonzero, v.dim_cf < n, "{}", fx.name);
        assert_eq!(v.hessian_det_nonzero, v.analytic_spread == n, "{}", fx.name);
        let h = cokernel_cf(f).unwrap();
        assert_eq!(h.matrix().transpose().rows(), h.matrix().rows(), "{}: Hessian not symmetric", fx.name);
    }
}

#[test]
fn depth_zero_persists_when_rees_is_cm() {
    for fx in fixtures() {
        let f = &fx.polynomial;
        let n = f.ring().arity();
        if n > 5 {
            continue;
        }
        let ctx = BlowupContext::new(gradient(f), dl()).unwrap();
        if !freediv_core::blowup::rees_is_cm(&ctx.rees_ideal(dl()).unwrap(), dl()).unwrap() {
            continue;
        }
        let t = depth_power_table(f, n.min(4) as u32, dl()).unwrap();
        if t.zero_witness().is_some() {
            assert!(t.zero_persists(), "{}: {:?}", fx.name, t.depths());
        }
    }
}

#[test]
fn homaloidal_certificate_needs_maximal_spread() {
    for f in [example("gordan-noether").unwrap(), family1(5).unwrap()] {
        let n = f.ring().arity() as u32;
        let t = depth_power_table(&f, n, dl()).unwrap();
        let h = homaloidal_sufficient(&f, &t, Some(true), dl()).unwrap();
        assert!(!h.verdict, "{f}");
    }
}

#[test]
fn non_free_counterexamples() {
    // Fermat cubic: ht J = 3; xyz + w³: pd J > 1.
    let r = freediv_core::poly::ring_of(&["x", "y", "z"]);
    let f = freediv_core::poly::parse_polynomial("x^3 + y^3 + z^3", &r).unwrap();
    let v = is_free_divisor(&f, dl()).unwrap();
    assert!(!v.free);
    assert_eq!(v.jacobian_height, 3);
    let g = example("xyz-plus-cube").unwrap();
    let v = is_free_divisor(&g, dl()).unwrap();
    assert!(!v.free);
    assert!(v.jacobian_height != 2 || v.jacobian_pd != 1);
}
