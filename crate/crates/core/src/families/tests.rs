use super::*;
use crate::blowup::BlowupContext;
use crate::divisor::gradient;
use crate::error::Deadline;
use crate::poly::hessian;
use proptest::prelude::*;

fn p(text: &str, r: &Ring) -> Polynomial {
    parse_polynomial(text, r).unwrap()
}

fn rat(n: i64) -> Rational {
    Rational::from_int(n)
}

/// Naive Laplace expansion along the first row.
fn laplace(m: &[Vec<Polynomial>], r: &Ring) -> Polynomial {
    if m.is_empty() {
        return Polynomial::one(r);
    }
    let mut acc = Polynomial::zero(r);
    for j in 0..m.len() {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, e)| e.clone()).collect()).collect();
        let term = &m[0][j] * &laplace(&minor, r);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Σ x_i ∂f/∂x_i, written out term by term.
fn euler_sum(f: &Polynomial) -> Polynomial {
    let r = f.ring();
    (0..r.arity()).fold(Polynomial::zero(r), |acc, i| &acc + &(&Polynomial::var(r, i) * &f.partial_derivative(i)))
}

#[test]
fn family1_small_case_matches_literal() {
    let f = family1(4).unwrap();
    assert_eq!(f, p("2*w^3*u + x1*u^3 + x2*w*u^2", f.ring()));
    let f5 = family1(5).unwrap();
    assert_eq!(f5, p("2*w^4*u + x1*u^4 + x2*w*u^3 + x3*w^2*u^2", f5.ring()));
}

#[test]
fn family2_is_product_of_linear_and_binomial_factors() {
    let f = family2(3).unwrap();
    let r = f.ring();
    assert_eq!(f, p("w*u*(x1*u - x2*w)*(x3*u - x4*w)", r));
}

#[test]
fn family3_and_its_factor() {
    let f = family3(3, 2).unwrap();
    assert_eq!(f, p("x^6 - 2*x^3*y^2*z + y^4*z^2 + y^6", f.ring()));
    for (a, b) in [(2, 3), (3, 3), (2, 5)] {
        let g = family3g(a, b).unwrap();
        let fab = family3(a, b).unwrap();
        assert_eq!(&family3_b(a) * &g, fab, "B·g = f for α={a}, β={b}");
    }
    let g = family3g(2, 3).unwrap();
    assert_eq!(g, p("x^4 - 2*x^2*y*z - x^2*y^2 + y^2*z^2 + y^3*z + y^4", g.ring()));
}

#[test]
fn family4_samples_match_hand_expansions() {
    let f0 = family4(&FAMILY4_SAMPLES[0]).unwrap();
    assert_eq!(f0, p("2*(x+y)*(x-y)*(z-y)", f0.ring()));
    let f1 = family4(&FAMILY4_SAMPLES[1]).unwrap();
    assert_eq!(f1, p("-2*x*(x^2+x*y-y^2+3*x*z-y*z+z^2)", f1.ring()));
    let f5 = family4(&FAMILY4_SAMPLES[5]).unwrap();
    assert_eq!(f5, p("-2*(x+z)^3", f5.ring()));
    assert!(family4(&FAMILY4_SAMPLES[6]).unwrap().is_zero());
    // f is the Jacobian determinant of the three quadrics.
    for a in &FAMILY4_SAMPLES[..5] {
        let q = family4_quadrics(a);
        let r = q[0].ring().clone();
        let jac: Vec<Vec<Polynomial>> = (0..3).map(|i| q.iter().map(|qj| qj.partial_derivative(i)).collect()).collect();
        assert_eq!(laplace(&jac, &r), family4(a).unwrap());
    }
}

#[test]
fn euler_identity_on_every_fixture() {
    for spec in corpus_specs() {
        let f = polynomial(&spec).unwrap();
        if f.is_zero() {
            continue;
        }
        let d = f.homogeneous_degree().expect("homogeneous");
        assert_eq!(euler_sum(&f), f.scale(&rat(d)), "{spec}");
    }
}

#[test]
fn reference_matrices_annihilate_or_are_logarithmic() {
    for spec in corpus_specs() {
        let f = polynomial(&spec).unwrap();
        if f.is_zero() {
            continue;
        }
        for m in reference_matrices(&spec, &f).unwrap() {
            match m.role {
                MatrixRole::Syzygies | MatrixRole::PartialSyzygies => {
                    for (j, col) in m.matrix.columns().iter().enumerate() {
                        let s = col.iter().zip(&m.generators).fold(Polynomial::zero(m.matrix.ring()), |acc, (a, g)| &acc + &(a * g));
                        assert!(s.is_zero(), "{spec}: column {j} of {} is not a syzygy", m.name);
                    }
                }
                MatrixRole::Derivations => {
                    let grad = gradient(&f);
                    for (j, col) in m.matrix.columns().iter().enumerate() {
                        let s = col.iter().zip(&grad).fold(Polynomial::zero(f.ring()), |acc, (a, g)| &acc + &(a * g));
                        assert!(s.exact_div(&f).is_some(), "{spec}: column {j} of {} is not logarithmic", m.name);
                    }
                }
            }
        }
    }
}

#[test]
fn phi_r_annihilates_descending_powers_of_u() {
    for r in 1..5usize {
        let m = phi_r(r).unwrap();
        let ring = m.matrix.ring().clone();
        let (w, u) = (Polynomial::var(&ring, 0), Polynomial::var(&ring, 1));
        let gens: Vec<Polynomial> = (0..=r).map(|i| &u.pow((r - i) as u32) * &w.pow(i as u32)).collect();
        assert_eq!(m.generators, gens);
        assert!(m.matrix.row_times(&gens).iter().all(Polynomial::is_zero));
    }
}

#[test]
fn saito_determinants_by_laplace() {
    // 𝓜 for the second family: det = (−1)^n (n+1) f.
    for n in 2..=3usize {
        let spec = FamilySpec::Family2 { n };
        let f = polynomial(&spec).unwrap();
        let m = reference_matrices(&spec, &f).unwrap().into_iter().find(|m| m.name == "M").unwrap();
        let sign = if n % 2 == 0 { 1 } else { -1 };
        assert_eq!(laplace(&m.matrix.rows(), f.ring()), f.scale(&rat(sign * (n as i64 + 1))), "n = {n}");
    }
    // Φ for the fourth family: det = ½ f.
    for a in &FAMILY4_SAMPLES[..5] {
        let spec = FamilySpec::Family4 { a: *a };
        let f = polynomial(&spec).unwrap();
        let m = reference_matrices(&spec, &f).unwrap().into_iter().find(|m| m.name == "Phi").unwrap();
        assert_eq!(laplace(&m.matrix.rows(), f.ring()), f.scale(&Rational::new(1, 2)), "{spec}");
    }
}

#[test]
fn quoted_rees_generators_vanish_under_rescaled_gradient() {
    // P(x, c·∇f) = 0 checked by substitution, without any Gröbner basis.
    let cases: [(&str, &str, Vec<Rational>); 2] = [
        (
            "sextic",
            "3*x*y*T1*T2 + 2*x*z*T1*T3 - 3*y*z*T2*T3 - 3*y^2*T3^2 - 2*z^2*T3^2",
            vec![rat(1), rat(1), rat(-3)],
        ),
        ("quartic", "4*x*T2^2 - 4*z*T1*T4 - y*T4^2", vec![Rational::new(1, 4), rat(1), rat(1), rat(1)]),
    ];
    for (name, text, scales) in cases {
        let f = example(name).unwrap();
        let ctx = BlowupContext::new(gradient(&f), Deadline::none()).unwrap();
        let q = p(text, ctx.extended_ring());
        let n = f.ring().arity();
        let mut images: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(f.ring(), i)).collect();
        for (g, c) in gradient(&f).iter().zip(&scales) {
            images.push(g.scale(c));
        }
        assert!(q.substitute(&images).unwrap().is_zero(), "{name}");
        // Without the rescaling it does not vanish.
        images.truncate(n);
        images.extend(gradient(&f));
        assert!(!q.substitute(&images).unwrap().is_zero(), "{name} unscaled");
    }
}

#[test]
fn family3_rees_candidate_vanishes_on_gradient() {
    for alpha in 3..=4 {
        let f = family3(alpha, 2).unwrap();
        let ctx = BlowupContext::new(gradient(&f), Deadline::none()).unwrap();
        let mut images: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(f.ring(), i)).collect();
        images.extend(gradient(&f));
        for g in family3_rees_candidate(&ctx, alpha) {
            assert!(g.substitute(&images).unwrap().is_zero(), "α = {alpha}: {g}");
        }
    }
}

#[test]
fn family2_regular_sequence_forms() {
    // L₁, L₂ vanish on (f_x1, f_x2, f_w, f_u); L₃ does not.
    let f = family2(2).unwrap();
    let ctx = BlowupContext::new(gradient(&f), Deadline::none()).unwrap();
    let mut images: Vec<Polynomial> = (0..4).map(|i| Polynomial::var(f.ring(), i)).collect();
    images.extend(gradient(&f));
    let e = ctx.extended_ring();
    assert!(p("3*x1*T1 + 3*x2*T2 - w*T3 - u*T4", e).substitute(&images).unwrap().is_zero());
    assert!(p("w*T1 + u*T2", e).substitute(&images).unwrap().is_zero());
    assert!(!p("x2*T1 + x1*T2 + u*T3 + w*T4", e).substitute(&images).unwrap().is_zero());
}

#[test]
fn hessian_of_hyperplane_quadric_by_laplace() {
    let f = example("hyperplane-quadric").unwrap();
    let h = laplace(&hessian(&f).unwrap().rows(), f.ring());
    assert_eq!(h, p("3*x^2*w^2*(x*w*(y*z + z*t + t*u))^2", f.ring()));
}

#[test]
fn circulant_hessian_is_multiple_of_square() {
    let g = example("circulant").unwrap();
    let h = laplace(&hessian(&g).unwrap().rows(), g.ring());
    let sq = g.pow(2);
    let ratio = crate::groebner::scalar_ratio(&h, &sq);
    assert!(ratio.is_some_and(|l| !l.is_zero()), "h(g) is not λg²");
}

#[test]
fn few_linear_syzygies_example_has_three_linear_relations() {
    // Three explicit linear relations among w², zw, 3z²+yw, yz+2xw.
    let f = example("few-linear-syzygies").unwrap();
    let r = f.ring();
    let grad = gradient(&f);
    let cols = [["z", "-w", "0", "0"], ["y", "3*z", "-w", "0"], ["2*x", "y", "0", "-w"]];
    let mut rows = vec![Vec::new(); 4];
    for col in cols {
        let c: Vec<Polynomial> = col.iter().map(|t| p(t, r)).collect();
        let s = c.iter().zip(&grad).fold(Polynomial::zero(r), |acc, (a, g)| &acc + &(a * g));
        assert!(s.is_zero());
        for (i, e) in c.into_iter().enumerate() {
            rows[i].push(e);
        }
    }
    // The minor on rows 2..4 is a nonzero multiple of w³.
    let minor: Vec<Vec<Polynomial>> = rows[1..].to_vec();
    assert_eq!(laplace(&minor, r), p("-w^3", r));
}

#[test]
fn fiber_from_rees_agrees_with_elimination() {
    let dl = Deadline::none();
    for spec in ["family1:n=5", "family2:n=3", "normal_crossing:n=4", "example:gordan-noether", "family3:alpha=3,beta=2"] {
        let f = polynomial(&spec.parse().unwrap()).unwrap();
        let ctx = BlowupContext::new(gradient(&f), dl).unwrap();
        let rees = ctx.rees_ideal(dl).unwrap();
        let a = ctx.fiber_from_rees(&rees, dl).unwrap();
        let b = ctx.fiber_ideal(dl).unwrap();
        assert!(a.equals(&b, dl).unwrap(), "{spec}");
    }
}

#[test]
fn hankel_minors_are_two_by_two() {
    let r = crate::poly::ring_of(&["a", "b", "c", "d"]);
    let v = crate::poly::variables(&r);
    let m = hankel_minors(&v);
    assert_eq!(m.len(), 3);
    assert!(m.contains(&p("a*c - b^2", &r)));
    assert!(m.contains(&p("b*d - c^2", &r)));
    assert!(m.contains(&p("a*d - b*c", &r)));
}

#[test]
fn caps_and_rejections() {
    assert!(build(&FamilySpec::Family1 { n: 7 }, false).is_err());
    assert!(build(&FamilySpec::Family3 { alpha: 5, beta: 3 }, false).is_err());
    assert!(build(&FamilySpec::Family1 { n: 3 }, true).is_err());
    assert!(build(&FamilySpec::Family3g { alpha: 2, beta: 4 }, true).is_err());
    assert!("family9:n=2".parse::<FamilySpec>().is_err());
    assert!("family4:a=1,2".parse::<FamilySpec>().is_err());
    let fx = build(&FamilySpec::Family4 { a: FAMILY4_SAMPLES[5] }, false).unwrap();
    assert!(fx.rejected.is_some());
    let fx = build(&FamilySpec::Family4 { a: FAMILY4_SAMPLES[0] }, false).unwrap();
    assert!(fx.rejected.is_none());
}

#[test]
fn manifest_round_trips_and_detects_tampering() {
    let fixtures = example_catalog().unwrap();
    let text = manifest_text(&fixtures);
    let back = parse_manifest(&text).unwrap();
    assert_eq!(back.len(), fixtures.len());
    for (a, b) in fixtures.iter().zip(&back) {
        assert_eq!(a.name, b.name);
        assert_eq!(a.polynomial, b.polynomial);
        assert_eq!(a.claims, b.claims);
    }
    assert_eq!(manifest_text(&back), text);
    let tampered = text.replacen("x1*u^3", "x1*u^3 + x1^4", 1);
    assert!(parse_manifest(&tampered).is_err());
    let wrong_version = text.replacen("\"manifest_version\":1", "\"manifest_version\":9", 1);
    assert!(parse_manifest(&wrong_version).is_err());
}

#[test]
fn corrupted_claim_is_reported() {
    let mut fx = build(&FamilySpec::NormalCrossing { n: 3 }, false).unwrap();
    fx.claims = vec![Claim {
        statement: "ℓ(J_f) = 2".into(),
        check: Check::AnalyticSpread { value: 2 },
    }];
    let out = check_fixture(&fx, Deadline::none()).unwrap();
    assert!(!out[0].passed);
    assert_eq!(out[0].observed, "3");
}

#[test]
fn quick_fixtures_pass_their_claims() {
    for spec in ["family1:n=4", "family2:n=2", "family3:alpha=2,beta=2", "family4:a=0,1,0,1,0,0,1,0,0", "normal_crossing:n=3"] {
        let fx = build(&spec.parse().unwrap(), false).unwrap();
        for o in check_fixture(&fx, Deadline::none()).unwrap() {
            assert!(o.passed, "{spec}: {} ({})", o.statement, o.observed);
        }
    }
}

fn spec_strategy() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        (0usize..20).prop_map(|n| FamilySpec::Family1 { n }),
        (0usize..20).prop_map(|n| FamilySpec::Family2 { n }),
        (0u32..20, 0u32..20).prop_map(|(alpha, beta)| FamilySpec::Family3 { alpha, beta }),
        (0u32..20, 0u32..20).prop_map(|(alpha, beta)| FamilySpec::Family3g { alpha, beta }),
        prop::array::uniform9(-5i64..6).prop_map(|a| FamilySpec::Family4 { a }),
        (0usize..20).prop_map(|n| FamilySpec::NormalCrossing { n }),
        prop::sample::select(EXAMPLES.iter().map(|e| e.0.to_string()).collect::<Vec<_>>())
            .prop_map(|name| FamilySpec::Example { name }),
    ]
}

proptest! {
    #[test]
    fn spec_display_parses_back(spec in spec_strategy()) {
        let text = spec.to_string();
        prop_assert_eq!(text.parse::<FamilySpec>().unwrap(), spec);
    }

    #[test]
    fn check_display_parses_back(v in 0usize..9, b in any::<bool>()) {
        for c in [Check::AnalyticSpread { value: v }, Check::ReesCm { value: b }, Check::DepthTable { depths: vec![v, v] }] {
            let back: Check = serde_json::from_str(&c.to_string()).unwrap();
            prop_assert_eq!(back, c);
        }
    }
}
