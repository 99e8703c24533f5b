//! Expected results attached to fixtures, and their evaluation.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrices::{family3_rees_candidate, reference_matrices, MatrixRole};
use super::{family3_b, hankel_minors, Fixture, FamilySpec, FAMILY4_SAMPLES};
use crate::blowup::{complete_intersection_check, fiber_verdict, BlowupContext};
use crate::divisor::{
    der_regularity, gradient, is_cone, is_free_divisor, jacobian_ideal, saito_check,
    FreenessVerdict, LogDerivation,
};
use crate::error::{Deadline, Error, Result};
use crate::groebner::{scalar_ratio, Ideal};
use crate::homalg::{column_span_contains, quotient_invariants, same_column_span, syzygies_of_row, ModuleInvariants};
use crate::maxspread::{
    ext_consistency_check, hessian_experiment, homaloidal_sufficient, linear_part, max_spread_check, DepthEntry,
    DepthTable, HessianExperiment, HomaloidalEvidence, MaxSpreadVerdict,
};
use crate::poly::{euler_check, parse_polynomial, squarefree_part, Polynomial, Rational, Ring};

/// One checkable expectation. Polynomials are stored as expression text and
/// parsed in the ring the check refers to: the base ring, the Rees ring
/// (base variables then T1..Tν) or the fiber ring (T1..Tν).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Check {
    Degree { value: i64 },
    EulerIdentity,
    NotCone,
    /// The construction yields no valid input (zero or non-reduced).
    Rejected { value: bool },
    PolynomialEquals { expr: String },
    /// factor · f = product.
    ProductIdentity { factor: String, product: String },
    Free { value: bool },
    LinearFree { value: bool },
    LinearlyPresented { value: bool },
    JacobianHeight { value: usize },
    /// Projective dimension of J_f as a module.
    JacobianProjdim { value: usize },
    JacobianPerfect { value: bool },
    /// Twists of the minimal resolution F₁ → F₀ → J_f.
    ResolutionTwists { generators: Vec<i64>, syzygies: Vec<i64> },
    HilbertBurch,
    ReferenceMatrix { name: String },
    Saito { matrix: String, lambda: String },
    DerRegularity { value: i64 },
    LinearType { value: bool },
    AnalyticSpread { value: usize },
    ReductionNumber { value: i64 },
    ReesCm { value: bool },
    ReesDimension { value: usize },
    ReesDepthDeficit { value: usize },
    FiberCm { value: bool },
    FiberEquals { generators: Vec<String> },
    ReesEquals { generators: Vec<String> },
    /// Part of a minimal generating set: in the Rees ideal but not in 𝔪 times it.
    /// With `scales` = (c₁..c_ν) the Rees ideal is taken for the generators
    /// cᵢ·∂f/∂xᵢ, which amounts to substituting Tᵢ ↦ cᵢTᵢ.
    ReesMinimalGenerator {
        expr: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        scales: Vec<String>,
    },
    /// A scalar multiple appears in the reduced Gröbner basis of the Rees ideal
    /// (after the same rescaling).
    ReesBasisContains {
        expr: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        scales: Vec<String>,
    },
    SymCompleteIntersection { value: bool },
    SymInvariants { dimension: usize, depth: usize },
    ReesCompleteIntersection { height: usize },
    RegularSequence { forms: Vec<String> },
    /// Saturating the symmetric ideal by the ideal of I_{ν−1}(φ) gives the Rees ideal.
    NonPrincipalSaturation,
    SaturationGivesRees { by: Vec<String> },
    GCondition { s: usize, heights: Option<Vec<usize>> },
    DepthTable { depths: Vec<usize> },
    /// pd J_f^m as a module.
    ProjdimPower { m: u32, value: usize },
    MaxSpread { value: bool },
    DimCf { value: usize },
    ExtConsistent { value: bool },
    Homaloidal { value: bool },
    LinearMinorsNonzero { value: bool },
    LinearSyzygyColumns { value: usize },
    HessianEquals { expr: String },
    /// h(f) = λ·f^power, with λ checked when given.
    HessianPower { power: u32, lambda: Option<String> },
    HessianAlreadyReduced { value: bool },
    /// h(f)_red is a scalar multiple of expr.
    HessianReducedEquals { expr: String },
    HessianReducedFree { value: bool },
    HessianReducedLinearFree { value: bool },
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

/// A claim in words plus the check that decides it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub statement: String,
    pub check: Check,
}

fn claim(statement: impl Into<String>, check: Check) -> Claim {
    Claim { statement: statement.into(), check }
}

/// Result of evaluating one claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimOutcome {
    pub statement: String,
    pub check: String,
    pub passed: bool,
    pub observed: String,
}

fn poly_list(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(Polynomial::to_string).collect()
}

/// Claims for a freshly built fixture.
pub(super) fn expected_claims(fx: &Fixture) -> Result<Vec<Claim>> {
    let f = &fx.polynomial;
    let mut c = Vec::new();
    if let Some(reason) = &fx.rejected {
        c.push(claim(format!("the construction is degenerate: {reason}"), Check::Rejected { value: true }));
        if let FamilySpec::Family4 { a } = &fx.spec {
            if *a == FAMILY4_SAMPLES[5] {
                c.push(claim("f = −2(x+z)³, which is not reduced", Check::PolynomialEquals { expr: "-2*(x+z)^3".into() }));
            }
            if *a == FAMILY4_SAMPLES[6] {
                c.push(claim("f = 0 because Q₃ = −Q₂", Check::PolynomialEquals { expr: "0".into() }));
            }
        }
        return Ok(c);
    }
    let n = f.ring().arity();
    let d = f.degree().unwrap_or(0);
    c.push(claim(format!("f is homogeneous of degree {d}"), Check::Degree { value: d }));
    c.push(claim("Σ xᵢ ∂f/∂xᵢ = deg(f)·f", Check::EulerIdentity));
    c.push(claim("the partial derivatives of f are linearly independent, so f is not a cone", Check::NotCone));
    let refs = reference_matrices(&fx.spec, f)?;
    for m in &refs {
        let s = match m.role {
            MatrixRole::Syzygies => format!("the explicit matrix {} is a syzygy matrix of its generators", m.name),
            MatrixRole::PartialSyzygies => format!("the columns of the explicit matrix {} are syzygies of J_f", m.name),
            MatrixRole::Derivations => format!("the columns of the explicit matrix {} are logarithmic derivations", m.name),
        };
        c.push(claim(s, Check::ReferenceMatrix { name: m.name.clone() }));
    }
    let free_block = |c: &mut Vec<Claim>, linear: bool| {
        c.push(claim(
            if linear { "f is a linear free divisor" } else { "f is a free divisor" },
            Check::Free { value: true },
        ));
        c.push(claim(
            if linear { "J_f is linearly presented" } else { "J_f is not linearly presented" },
            Check::LinearFree { value: linear },
        ));
        c.push(claim("J_f is a perfect ideal of height 2", Check::JacobianHeight { value: 2 }));
        c.push(claim("J_f has projective dimension 1", Check::JacobianProjdim { value: 1 }));
        c.push(claim("the maximal minors of the syzygy matrix of J_f generate J_f", Check::HilbertBurch));
        c.push(claim(format!("reg Der_k(R/(f)) = deg f − 2 = {}", d - 2), Check::DerRegularity { value: d - 2 }));
    };
    let t = |i: usize| format!("T{i}");
    match &fx.spec {
        FamilySpec::Family1 { n: nn } => {
            let nn = *nn;
            free_block(&mut c, true);
            c.push(claim(
                format!("the minimal free resolution of J_f is 0 → R(−{nn})^{} → R(−{})^{nn} → J_f → 0", nn - 1, nn - 1),
                Check::ResolutionTwists { generators: vec![nn as i64 - 1; nn], syzygies: vec![nn as i64; nn - 1] },
            ));
            c.push(claim(format!("dim R(J_f) = dim R + 1 = {}", nn + 1), Check::ReesDimension { value: nn + 1 }));
            c.push(claim("R(J_f) is Cohen–Macaulay", Check::ReesCm { value: true }));
            if nn == 4 {
                c.push(claim("J_f is of linear type", Check::LinearType { value: true }));
                c.push(claim("ℓ(J_f) = 4", Check::AnalyticSpread { value: 4 }));
                c.push(claim("r(J_f) = 0", Check::ReductionNumber { value: 0 }));
            } else {
                let tv: Vec<Polynomial> = {
                    let ctx = BlowupContext::with_syzygies(gradient(f), crate::poly::GradedMatrix::zero(f.ring(), vec![0; n], vec![]))?;
                    (0..nn - 2).map(|i| Polynomial::var(ctx.fiber_ring(), i)).collect()
                };
                c.push(claim(
                    format!("F(J_f) ≅ T/I₂ of the 2×{} Hankel matrix in T1..T{}", nn - 3, nn - 2),
                    Check::FiberEquals { generators: poly_list(&hankel_minors(&tv)) },
                ));
                c.push(claim("F(J_f) is Cohen–Macaulay", Check::FiberCm { value: true }));
                c.push(claim("ℓ(J_f) = 4", Check::AnalyticSpread { value: 4 }));
                c.push(claim("r(J_f) = 1", Check::ReductionNumber { value: 1 }));
                c.push(claim("r(J_f) = 1 ≠ 0, so J_f is not of linear type", Check::LinearType { value: false }));
                c.push(claim("ℓ(J_f) = 4 < n, so J_f does not have maximal analytic spread", Check::MaxSpread { value: false }));
                c.push(claim("the polar map is not birational, so no homaloidness certificate exists", Check::Homaloidal { value: false }));
            }
            if nn == 5 {
                c.push(claim("depth R/J_f^m = 3, 2, 1, 1 for m = 1..4", Check::DepthTable { depths: vec![3, 2, 1, 1] }));
            }
        }
        FamilySpec::Family2 { n: nn } => {
            let nn = *nn;
            free_block(&mut c, true);
            let sign = if nn % 2 == 0 { 1 } else { -1 };
            c.push(claim(
                format!("det 𝓜 = (−1)^n (n+1)·f with n = {nn}"),
                Check::Saito { matrix: "M".into(), lambda: (sign * (nn as i64 + 1)).to_string() },
            ));
            c.push(claim(
                format!("the minimal free resolution of J_f is 0 → R(−{})^{} → R(−{})^{} → J_f → 0", 2 * nn, 2 * nn - 1, 2 * nn - 1, 2 * nn),
                Check::ResolutionTwists {
                    generators: vec![2 * nn as i64 - 1; 2 * nn],
                    syzygies: vec![2 * nn as i64; 2 * nn - 1],
                },
            ));
            c.push(claim("Sym_R J_f is a complete intersection", Check::SymCompleteIntersection { value: true }));
            if nn == 2 {
                c.push(claim("J_f is of linear type", Check::LinearType { value: true }));
                c.push(claim("r(J_f) = 0", Check::ReductionNumber { value: 0 }));
                let forms = vec![
                    "3*x1*T1 + 3*x2*T2 - w*T3 - u*T4".to_string(),
                    "w*T1 + u*T2".to_string(),
                    "x2*T1 + x1*T2 + u*T3 + w*T4".to_string(),
                ];
                c.push(claim(
                    "L₁ = 3x₁z₁+3x₂z₂−ws−ut, L₂ = wz₁+uz₂, L₃ = x₂z₁+x₁z₂+us+wt form a regular sequence",
                    Check::RegularSequence { forms },
                ));
            } else {
                let tv: Vec<String> = (1..=2 * nn - 2).map(t).collect();
                let top: Vec<&String> = tv.iter().step_by(2).collect();
                let bottom: Vec<&String> = tv.iter().skip(1).step_by(2).collect();
                let mut gens = Vec::new();
                for i in 0..top.len() {
                    for j in i + 1..top.len() {
                        gens.push(format!("{}*{} - {}*{}", top[i], bottom[j], top[j], bottom[i]));
                    }
                }
                c.push(claim(
                    format!("F(J_f) ≅ T/I₂ of the generic 2×{} matrix [T1 T3 …; T2 T4 …]", nn - 1),
                    Check::FiberEquals { generators: gens },
                ));
                c.push(claim(format!("ℓ(J_f) = n + 2 = {}", nn + 2), Check::AnalyticSpread { value: nn + 2 }));
                c.push(claim("r(J_f) = 1", Check::ReductionNumber { value: 1 }));
                c.push(claim("F(J_f) is Cohen–Macaulay", Check::FiberCm { value: true }));
                c.push(claim("R(J_f) is Cohen–Macaulay", Check::ReesCm { value: true }));
                c.push(claim("r(J_f) = 1 ≠ 0, so J_f is not of linear type", Check::LinearType { value: false }));
            }
        }
        FamilySpec::Family3 { alpha, beta } => {
            let (a, b) = (*alpha, *beta);
            free_block(&mut c, false);
            if (a, b) == (2, 2) {
                c.push(claim("J_f is of linear type when α = β = 2", Check::LinearType { value: true }));
            }
            if (a, b) == (2, 3) || b == 2 {
                c.push(claim("R(J_f) is Cohen–Macaulay", Check::ReesCm { value: true }));
            }
            if (a == 2 && b >= 3) || (a >= 3 && b == 2) {
                c.push(claim("J_f is not of linear type", Check::LinearType { value: false }));
                c.push(claim("F(J_f) is a polynomial ring over k", Check::FiberEquals { generators: vec![] }));
                c.push(claim("ℓ(J_f) = 3", Check::AnalyticSpread { value: 3 }));
                c.push(claim("r(J_f) = 0", Check::ReductionNumber { value: 0 }));
                c.push(claim("J_f has maximal analytic spread", Check::MaxSpread { value: true }));
            }
            if a >= 3 && b == 2 {
                let ctx = BlowupContext::with_syzygies(gradient(f), crate::poly::GradedMatrix::zero(f.ring(), vec![0; 3], vec![]))?;
                c.push(claim(
                    "the Rees ideal is (sy^{α−1}+αux^{α−1}, y^{α−2}H+αx^αt, xyst−uH), perfect of height 2",
                    Check::ReesEquals { generators: poly_list(&family3_rees_candidate(&ctx, a)) },
                ));
            }
        }
        FamilySpec::Family3g { alpha, beta } => {
            let (a, b) = (*alpha, *beta);
            free_block(&mut c, false);
            let fab = super::family3(a, b)?;
            c.push(claim(
                "B·g = f_{α,β} with B = x^α − y^{α−1}z + y^α",
                Check::ProductIdentity { factor: family3_b(a).to_string(), product: fab.to_string() },
            ));
            if b == 3 {
                c.push(claim(
                    "g = x^{2α} − 2x^αy^{α−1}z − x^αy^α + y^{2α−2}z² + y^{2α−1}z + y^{2α}",
                    Check::PolynomialEquals {
                        expr: format!(
                            "x^{0} - 2*x^{1}*y^{2}*z - x^{1}*y^{1} + y^{3}*z^2 + y^{4}*z + y^{0}",
                            2 * a,
                            a,
                            a - 1,
                            2 * a - 2,
                            2 * a - 1
                        ),
                    },
                ));
                c.push(claim("R(J_g) is Cohen–Macaulay", Check::ReesCm { value: true }));
                c.push(claim("r(J_g) = 0", Check::ReductionNumber { value: 0 }));
                c.push(claim("J_g is of linear type if and only if α = 2", Check::LinearType { value: a == 2 }));
                c.push(claim(
                    "saturating the symmetric ideal by (x^{α−1}, y^{α−2}) gives the Rees ideal",
                    Check::SaturationGivesRees { by: vec![format!("x^{}", a - 1), format!("y^{}", a - 2)] },
                ));
            }
            if b == 5 {
                c.push(claim("R(J_g) is almost Cohen–Macaulay: depth = dim − 1", Check::ReesDepthDeficit { value: 1 }));
                c.push(claim("r(J_g) = 0", Check::ReductionNumber { value: 0 }));
            }
        }
        FamilySpec::Family4 { a } => {
            free_block(&mut c, true);
            c.push(claim("det Φ = ½ f", Check::Saito { matrix: "Phi".into(), lambda: "1/2".into() }));
            c.push(claim("J_f is of linear type", Check::LinearType { value: true }));
            c.push(claim("r(J_f) = 0", Check::ReductionNumber { value: 0 }));
            c.push(claim("R(J_f) is a complete intersection of height 2", Check::ReesCompleteIntersection { height: 2 }));
            c.push(claim("J_f satisfies the G₃ condition", Check::GCondition { s: 3, heights: None }));
            if *a == FAMILY4_SAMPLES[0] {
                c.push(claim("½f = (x+y)(x−y)(z−y)", Check::PolynomialEquals { expr: "2*(x+y)*(x-y)*(z-y)".into() }));
                c.push(claim(
                    "R(J_f) ≅ R[s,t,u]/(ys + x(t+u), xs + yt + (3y−2z)u)",
                    Check::ReesEquals { generators: vec!["y*T1 + x*(T2+T3)".into(), "x*T1 + y*T2 + (3*y-2*z)*T3".into()] },
                ));
            }
            if *a == FAMILY4_SAMPLES[1] {
                c.push(claim(
                    "f = −2x(x²+xy−y²+3xz−yz+z²)",
                    Check::PolynomialEquals { expr: "-2*x*(x^2+x*y-y^2+3*x*z-y*z+z^2)".into() },
                ));
            }
        }
        FamilySpec::NormalCrossing { n: nn } => {
            let nn = *nn;
            free_block(&mut c, true);
            let depths: Vec<usize> = (1..=nn).map(|m| nn.saturating_sub(m + 1)).collect();
            c.push(claim("depth R/J_f^m = max{0, n−m−1}", Check::DepthTable { depths }));
            c.push(claim(
                "ht I_{n−j}(φ) = j+1 for j = 1..n−1, so J_f satisfies G_n",
                Check::GCondition { s: nn, heights: Some((2..=nn).collect()) },
            ));
            c.push(claim("J_f is of linear type", Check::LinearType { value: true }));
            c.push(claim(format!("ℓ(J_f) = n = {nn}"), Check::AnalyticSpread { value: nn }));
            c.push(claim("R(J_f) is Cohen–Macaulay", Check::ReesCm { value: true }));
            c.push(claim("J_f has maximal analytic spread", Check::MaxSpread { value: true }));
            c.push(claim("dim 𝒞_f = n − 1", Check::DimCf { value: nn - 1 }));
            c.push(claim(format!("Ext¹(𝒞_f, R) ≅ 𝒞_f({})", d - 2), Check::ExtConsistent { value: true }));
            c.push(claim(
                "f is homaloidal (powers of J_f are integrally closed, so ordinary powers stand in for integral closures)",
                Check::Homaloidal { value: true },
            ));
        }
        FamilySpec::Example { name } => example_claims(name, d, &mut c),
    }
    Ok(c)
}

fn sextic_scales() -> Vec<String> {
    vec!["1".into(), "1".into(), "-3".into()]
}

fn example_claims(name: &str, d: i64, c: &mut Vec<Claim>) {
    match name {
        "xyz-plus-cube" => {
            c.push(claim("f is not free", Check::Free { value: false }));
            c.push(claim("J_f is of linear type", Check::LinearType { value: true }));
            c.push(claim("ℓ(J_f) = 4", Check::AnalyticSpread { value: 4 }));
            c.push(claim("J_f has maximal analytic spread", Check::MaxSpread { value: true }));
        }
        "gordan-noether" => {
            c.push(claim("Sym_R J_f has dimension 6 and depth 5", Check::SymInvariants { dimension: 6, depth: 5 }));
            c.push(claim("R(J_f) is Cohen–Macaulay", Check::ReesCm { value: true }));
            c.push(claim("the saturation of the symmetric ideal by I₄(φ) defines R(J_f)", Check::NonPrincipalSaturation));
            c.push(claim("depth R/J_f = 2 and depth R/J_f^m = 1 for m ≥ 2", Check::DepthTable { depths: vec![2, 1, 1] }));
            c.push(claim("F(J_f) = k[T1..T5]/(T2² − T1T3)", Check::FiberEquals { generators: vec!["T2^2 - T1*T3".into()] }));
            c.push(claim("ℓ(J_f) = 4", Check::AnalyticSpread { value: 4 }));
            c.push(claim("ℓ(J_f) < 5", Check::MaxSpread { value: false }));
            c.push(claim("Ext¹(𝒞_f, R) is not isomorphic to 𝒞_f(d−2)", Check::ExtConsistent { value: false }));
            c.push(claim("no homaloidness certificate exists when ℓ(J_f) < n", Check::Homaloidal { value: false }));
        }
        "quintic" => {
            c.push(claim("f is a linear free divisor", Check::LinearFree { value: true }));
            c.push(claim("ℓ(J_f) = 4 < 5", Check::AnalyticSpread { value: 4 }));
            c.push(claim("R(J_f) is Cohen–Macaulay", Check::ReesCm { value: true }));
            c.push(claim("depth R/J_f = 3, depth R/J_f² = 2, depth R/J_f^m = 1 for m ≥ 3", Check::DepthTable { depths: vec![3, 2, 1, 1] }));
            c.push(claim("J_f does not have maximal analytic spread", Check::MaxSpread { value: false }));
            c.push(claim("no homaloidness certificate exists when ℓ(J_f) < n", Check::Homaloidal { value: false }));
        }
        "sextic" => {
            c.push(claim("f is a free divisor", Check::Free { value: true }));
            c.push(claim("R(J_f) is Cohen–Macaulay", Check::ReesCm { value: true }));
            c.push(claim("depth R/J_f^m = 0 for m ≥ 2", Check::DepthTable { depths: vec![1, 0, 0] }));
            c.push(claim("ℓ(J_f) = 3", Check::AnalyticSpread { value: 3 }));
            c.push(claim("J_f is not of linear type", Check::LinearType { value: false }));
            let g = "3*x*y*T1*T2 + 2*x*z*T1*T3 - 3*y*z*T2*T3 - 3*y^2*T3^2 - 2*z^2*T3^2".to_string();
            c.push(claim(
                "3xyt₁t₂ + 2xzt₁t₃ − 3yzt₂t₃ − 3y²t₃² − 2z²t₃² is a minimal generator of the Rees ideal for the generators f_x, f_y, −3f_z",
                Check::ReesMinimalGenerator { expr: g.clone(), scales: sextic_scales() },
            ));
            c.push(claim(
                "3xyt₁t₂ + 2xzt₁t₃ − 3yzt₂t₃ − 3y²t₃² − 2z²t₃² lies in the reduced Gröbner basis of the Rees ideal up to scalar, for the generators f_x, f_y, −3f_z",
                Check::ReesBasisContains { expr: g, scales: sextic_scales() },
            ));
            c.push(claim("dim 𝒞_f = 2", Check::DimCf { value: 2 }));
            c.push(claim(format!("Ext¹(𝒞_f, R) ≅ 𝒞_f({})", d - 2), Check::ExtConsistent { value: true }));
            c.push(claim("J_f has maximal analytic spread", Check::MaxSpread { value: true }));
        }
        "quartic" => {
            c.push(claim("f is not free because J_f is not perfect", Check::Free { value: false }));
            c.push(claim("J_f is not of linear type", Check::LinearType { value: false }));
            c.push(claim(
                "4xt₂² − 4zt₁t₄ − yt₄² is a minimal generator of the Rees ideal for the generators f_x/4, f_y, f_z, f_w",
                Check::ReesMinimalGenerator {
                    expr: "4*x*T2^2 - 4*z*T1*T4 - y*T4^2".into(),
                    scales: vec!["1/4".into(), "1".into(), "1".into(), "1".into()],
                },
            ));
            c.push(claim("R(J_f) is Cohen–Macaulay", Check::ReesCm { value: true }));
            c.push(claim("depth R/J_f^i = 1 for i = 1, 2, 3 and 0 for i = 4", Check::DepthTable { depths: vec![1, 1, 1, 0] }));
            c.push(claim("ℓ(J_f) = 4", Check::AnalyticSpread { value: 4 }));
            c.push(claim("J_f has maximal analytic spread", Check::MaxSpread { value: true }));
            c.push(claim(format!("Ext¹(𝒞_f, R) ≅ 𝒞_f({})", d - 2), Check::ExtConsistent { value: true }));
        }
        "hyperplane-quadric" => {
            c.push(claim("f is not free because J_f is not perfect", Check::JacobianPerfect { value: false }));
            c.push(claim("J_f is linearly presented", Check::LinearlyPresented { value: true }));
            c.push(claim("I₅(φ₁) ≠ 0", Check::LinearMinorsNonzero { value: true }));
            c.push(claim("projdim J_f³ = 5", Check::ProjdimPower { m: 3, value: 5 }));
            c.push(claim("f is homaloidal", Check::Homaloidal { value: true }));
            c.push(claim(
                "h(f) = 3x²w²f²",
                Check::HessianEquals { expr: "3*x^2*w^2*(x*w*(y*z + z*t + t*u))^2".into() },
            ));
            c.push(claim("h(f)_red = 3f", Check::HessianReducedEquals { expr: "x*w*(y*z + z*t + t*u)".into() }));
            c.push(claim("h(f)_red is not free", Check::HessianReducedFree { value: false }));
        }
        "irreducible-cubic" => {
            c.push(claim("J_f is perfect", Check::JacobianPerfect { value: true }));
            c.push(claim("ht J_f = 3, so f is not free", Check::JacobianHeight { value: 3 }));
            c.push(claim("I₄(φ₁) ≠ 0", Check::LinearMinorsNonzero { value: true }));
            c.push(claim("projdim J_f³ = 4", Check::ProjdimPower { m: 3, value: 4 }));
            c.push(claim("f is homaloidal", Check::Homaloidal { value: true }));
        }
        "few-linear-syzygies" => {
            c.push(claim("J_f is not linearly presented", Check::LinearlyPresented { value: false }));
            c.push(claim("3 columns of a minimal presentation matrix are linear", Check::LinearSyzygyColumns { value: 3 }));
            c.push(claim("I₃(φ₁) ≠ 0", Check::LinearMinorsNonzero { value: true }));
            c.push(claim("J_f is of linear type", Check::LinearType { value: true }));
            c.push(claim("R(J_f) is Cohen–Macaulay", Check::ReesCm { value: true }));
            c.push(claim("f is homaloidal", Check::Homaloidal { value: true }));
        }
        "circulant" => {
            c.push(claim("g is a linear free divisor", Check::LinearFree { value: true }));
            c.push(claim("h(g) = λg² for some nonzero λ", Check::HessianPower { power: 2, lambda: None }));
            c.push(claim("h(g)_red is free", Check::HessianReducedFree { value: true }));
        }
        "catalecticant" => {
            c.push(claim("h(f) is already reduced", Check::HessianAlreadyReduced { value: true }));
            c.push(claim("h(f) is a linear free divisor", Check::HessianReducedLinearFree { value: true }));
        }
        _ => {}
    }
}

/// Lazily computed invariants of one fixture.
struct Evaluator<'a> {
    fx: &'a Fixture,
    dl: Deadline,
    freeness: Option<FreenessVerdict>,
    jacobian_inv: Option<ModuleInvariants>,
    ctx: Option<BlowupContext>,
    sym: Option<Ideal>,
    rees: Option<Ideal>,
    fiber: Option<Ideal>,
    rees_inv: Option<ModuleInvariants>,
    powers: BTreeMap<u32, usize>,
    last_power: Option<(u32, Ideal)>,
    spread: Option<usize>,
    max_spread: Option<MaxSpreadVerdict>,
    homaloidal: Option<HomaloidalEvidence>,
    hessian: Option<HessianExperiment>,
}

impl<'a> Evaluator<'a> {
    fn new(fx: &'a Fixture, dl: Deadline) -> Self {
        Evaluator {
            fx,
            dl,
            freeness: None,
            jacobian_inv: None,
            ctx: None,
            sym: None,
            rees: None,
            fiber: None,
            rees_inv: None,
            powers: BTreeMap::new(),
            last_power: None,
            spread: None,
            max_spread: None,
            homaloidal: None,
            hessian: None,
        }
    }

    fn f(&self) -> &'a Polynomial {
        &self.fx.polynomial
    }

    fn parse(&self, text: &str, ring: &Ring) -> Result<Polynomial> {
        Ok(parse_polynomial(text, ring)?)
    }

    fn freeness(&mut self) -> Result<&FreenessVerdict> {
        if self.freeness.is_none() {
            self.freeness = Some(is_free_divisor(self.f(), self.dl)?);
        }
        Ok(self.freeness.as_ref().expect("set above"))
    }

    fn jacobian_inv(&mut self) -> Result<&ModuleInvariants> {
        if self.jacobian_inv.is_none() {
            self.jacobian_inv = Some(quotient_invariants(&jacobian_ideal(self.f())?, self.dl)?);
        }
        Ok(self.jacobian_inv.as_ref().expect("set above"))
    }

    fn ctx(&mut self) -> Result<&BlowupContext> {
        if self.ctx.is_none() {
            let phi = self.freeness()?.syzygy_matrix.clone();
            self.ctx = Some(BlowupContext::with_syzygies(gradient(self.f()), phi)?);
        }
        Ok(self.ctx.as_ref().expect("set above"))
    }

    fn sym(&mut self) -> Result<Ideal> {
        if self.sym.is_none() {
            self.sym = Some(self.ctx()?.symmetric_ideal()?);
        }
        Ok(self.sym.clone().expect("set above"))
    }

    fn rees(&mut self) -> Result<Ideal> {
        if self.rees.is_none() {
            let dl = self.dl;
            self.rees = Some(self.ctx()?.rees_ideal(dl)?);
        }
        Ok(self.rees.clone().expect("set above"))
    }

    fn fiber(&mut self) -> Result<Ideal> {
        if self.fiber.is_none() {
            let dl = self.dl;
            let rees = self.rees()?;
            self.fiber = Some(self.ctx()?.fiber_from_rees(&rees, dl)?);
        }
        Ok(self.fiber.clone().expect("set above"))
    }

    fn rees_inv(&mut self) -> Result<&ModuleInvariants> {
        if self.rees_inv.is_none() {
            let rees = self.rees()?;
            self.rees_inv = Some(quotient_invariants(&rees, self.dl)?);
        }
        Ok(self.rees_inv.as_ref().expect("set above"))
    }

    fn rees_cm(&mut self) -> Result<bool> {
        let rees = self.rees()?;
        let ht = rees.height(self.dl)?;
        Ok(self.rees_inv()?.projective_dimension() == ht)
    }

    fn spread(&mut self) -> Result<usize> {
        if self.spread.is_none() {
            let fiber = self.fiber()?;
            let dl = self.dl;
            self.spread = Some(self.ctx()?.analytic_spread(&fiber, dl)?);
        }
        Ok(self.spread.expect("set above"))
    }

    /// depth R/J_f^m, computing powers successively.
    fn power_depth(&mut self, m: u32) -> Result<usize> {
        if let Some(&d) = self.powers.get(&m) {
            return Ok(d);
        }
        let j = jacobian_ideal(self.f())?;
        let mut cur = match self.last_power.take() {
            Some((k, p)) if k < m => (k, p),
            _ => (1, j.clone()),
        };
        loop {
            if !self.powers.contains_key(&cur.0) {
                let depth = quotient_invariants(&cur.1, self.dl)?.depth();
                self.powers.insert(cur.0, depth);
            }
            if cur.0 == m {
                break;
            }
            let gens = cur.1.product(&j)?.minimal_generators(self.dl)?;
            cur = (cur.0 + 1, Ideal::new(j.ring(), gens)?);
        }
        let d = self.powers[&m];
        self.last_power = Some(cur);
        Ok(d)
    }

    fn max_spread(&mut self) -> Result<&MaxSpreadVerdict> {
        if self.max_spread.is_none() {
            let spread = self.spread()?;
            self.max_spread = Some(max_spread_check(self.f(), Some(spread), self.dl)?);
        }
        Ok(self.max_spread.as_ref().expect("set above"))
    }

    fn homaloidal(&mut self) -> Result<&HomaloidalEvidence> {
        if self.homaloidal.is_none() {
            let n = self.f().ring().arity() as u32;
            let phi = syzygies_of_row(&gradient(self.f()), self.dl)?;
            let phi1 = linear_part(&phi);
            let minors_ok = phi1.ncols() + 1 >= n as usize && phi1.rank() + 1 >= n as usize;
            let mut entries = Vec::new();
            let mut rees_cm = None;
            if minors_ok {
                rees_cm = Some(self.rees_cm()?);
                for m in 1..=self.fx.m_max.max(1) {
                    let depth = self.power_depth(m)?;
                    entries.push(DepthEntry { m, depth });
                    if depth == 0 {
                        break;
                    }
                }
            }
            let table = DepthTable { entries, truncated: false };
            self.homaloidal = Some(homaloidal_sufficient(self.f(), &table, rees_cm, self.dl)?);
        }
        Ok(self.homaloidal.as_ref().expect("set above"))
    }

    fn hessian(&mut self) -> Result<&HessianExperiment> {
        if self.hessian.is_none() {
            self.hessian = Some(hessian_experiment(self.f(), self.dl)?);
        }
        Ok(self.hessian.as_ref().expect("set above"))
    }

    fn eq_bool(observed: bool, want: bool) -> (bool, String) {
        (observed == want, observed.to_string())
    }

    fn eq_num<T: PartialEq + fmt::Display>(observed: T, want: T) -> (bool, String) {
        let s = observed.to_string();
        (observed == want, s)
    }

    fn evaluate(&mut self, check: &Check) -> Result<(bool, String)> {
        let f = self.f();
        let dl = self.dl;
        Ok(match check {
            Check::Degree { value } => {
                let d = f.homogeneous_degree();
                (d == Some(*value), format!("{d:?}"))
            }
            Check::EulerIdentity => Self::eq_bool(euler_check(f)?, true),
            Check::NotCone => Self::eq_bool(!is_cone(f)?, true),
            Check::Rejected { value } => {
                let rejected = f.is_zero() || squarefree_part(f, dl)?.degree() != f.degree();
                Self::eq_bool(rejected, *value)
            }
            Check::PolynomialEquals { expr } => {
                let want = self.parse(expr, f.ring())?;
                (want == *f, f.to_string())
            }
            Check::ProductIdentity { factor, product } => {
                let a = self.parse(factor, f.ring())?;
                let b = self.parse(product, f.ring())?;
                let lhs = &a * f;
                (lhs == b, lhs.to_string())
            }
            Check::Free { value } => Self::eq_bool(self.freeness()?.free, *value),
            Check::LinearFree { value } => {
                let v = self.freeness()?;
                let linear = v.free && v.syzygy_matrix.max_entry_degree().is_none_or(|d| d <= 1);
                Self::eq_bool(linear, *value)
            }
            Check::LinearlyPresented { value } => {
                let phi = syzygies_of_row(&gradient(f), dl)?;
                Self::eq_bool(phi.max_entry_degree().is_none_or(|d| d <= 1), *value)
            }
            Check::JacobianHeight { value } => Self::eq_num(jacobian_ideal(f)?.height(dl)?, *value),
            Check::JacobianProjdim { value } => {
                Self::eq_num(self.jacobian_inv()?.projective_dimension().saturating_sub(1), *value)
            }
            Check::JacobianPerfect { value } => {
                let ht = jacobian_ideal(f)?.height(dl)?;
                Self::eq_bool(self.jacobian_inv()?.projective_dimension() == ht, *value)
            }
            Check::ResolutionTwists { generators, syzygies } => {
                let betti = &self.jacobian_inv()?.betti;
                let g = betti.twists(1);
                let s = betti.twists(2);
                let ok = &g == generators && &s == syzygies && betti.projective_dimension() == 2;
                (ok, format!("generators {g:?}, syzygies {s:?}"))
            }
            Check::HilbertBurch => {
                let hb = self.freeness()?.hilbert_burch;
                (hb == Some(true), format!("{hb:?}"))
            }
            Check::ReferenceMatrix { name } => {
                let refs = reference_matrices(&self.fx.spec, f)?;
                let m = refs
                    .iter()
                    .find(|m| &m.name == name)
                    .ok_or_else(|| Error::InvalidArgument(format!("no reference matrix `{name}`")))?;
                match m.role {
                    MatrixRole::Syzygies | MatrixRole::PartialSyzygies => {
                        let annihilates = m.matrix.row_times(&m.generators).iter().all(Polynomial::is_zero);
                        let engine = syzygies_of_row(&m.generators, dl)?;
                        let span = if m.role == MatrixRole::Syzygies {
                            same_column_span(&m.matrix, &engine, dl)?
                        } else {
                            column_span_contains(&engine, &m.matrix, dl)?
                        };
                        (annihilates && span, format!("annihilates row: {annihilates}, span agrees: {span}"))
                    }
                    MatrixRole::Derivations => {
                        let thetas = derivations(f, &m.matrix.columns())?;
                        let ok = thetas.is_some();
                        (ok, format!("logarithmic: {ok}"))
                    }
                }
            }
            Check::Saito { matrix, lambda } => {
                let want: Rational = lambda.parse().map_err(|_| Error::InvalidArgument(format!("bad scalar `{lambda}`")))?;
                let refs = reference_matrices(&self.fx.spec, f)?;
                let m = refs
                    .iter()
                    .find(|m| &m.name == matrix)
                    .ok_or_else(|| Error::InvalidArgument(format!("no reference matrix `{matrix}`")))?;
                match derivations(f, &m.matrix.columns())? {
                    Some(thetas) => {
                        let got = saito_check(f, &thetas)?;
                        (got.as_ref() == Some(&want), format!("{got:?}"))
                    }
                    None => (false, "columns are not logarithmic".into()),
                }
            }
            Check::DerRegularity { value } => {
                let r = der_regularity(f, dl)?;
                (r == Some(*value), format!("{r:?}"))
            }
            Check::LinearType { value } => {
                let (sym, rees) = (self.sym()?, self.rees()?);
                Self::eq_bool(sym.equals(&rees, dl)?, *value)
            }
            Check::AnalyticSpread { value } => Self::eq_num(self.spread()?, *value),
            Check::ReductionNumber { value } => {
                let (cm, r) = fiber_verdict(&self.fiber()?, dl)?;
                (cm && r == Some(*value), format!("fiber CM {cm}, regularity {r:?}"))
            }
            Check::ReesCm { value } => Self::eq_bool(self.rees_cm()?, *value),
            Check::ReesDimension { value } => Self::eq_num(self.rees()?.dimension(dl)?.krull_dimension, *value),
            Check::ReesDepthDeficit { value } => {
                let dim = self.rees()?.dimension(dl)?.krull_dimension;
                let depth = self.rees_inv()?.depth();
                (dim.checked_sub(depth) == Some(*value), format!("dim {dim}, depth {depth}"))
            }
            Check::FiberCm { value } => Self::eq_bool(fiber_verdict(&self.fiber()?, dl)?.0, *value),
            Check::FiberEquals { generators } => {
                let fiber = self.fiber()?;
                let ring = fiber.ring().clone();
                let want = Ideal::new(&ring, generators.iter().map(|g| self.parse(g, &ring)).collect::<Result<_>>()?)?;
                let ok = fiber.equals(&want, dl)?;
                (ok, poly_list(fiber.groebner_basis(dl)?).join(", "))
            }
            Check::ReesEquals { generators } => {
                let rees = self.rees()?;
                let ring = rees.ring().clone();
                let want = Ideal::new(&ring, generators.iter().map(|g| self.parse(g, &ring)).collect::<Result<_>>()?)?;
                let ok = rees.equals(&want, dl)?;
                (ok, format!("{} generators in the reduced basis", rees.groebner_basis(dl)?.len()))
            }
            Check::ReesMinimalGenerator { expr, scales } => {
                let rees = self.rees()?;
                let ring = rees.ring().clone();
                let p = rescale_t(&self.parse(expr, &ring)?, scales, f.ring().arity())?;
                let member = rees.contains(&p, dl)?;
                let all_vars: Vec<usize> = (0..ring.arity()).collect();
                let m_rees = Ideal::of_variables(&ring, &all_vars).product(&rees)?;
                let minimal = member && !m_rees.contains(&p, dl)?;
                (minimal, format!("in ideal: {member}, minimal: {minimal}"))
            }
            Check::ReesBasisContains { expr, scales } => {
                let rees = self.rees()?;
                let ring = rees.ring().clone();
                let p = rescale_t(&self.parse(expr, &ring)?, scales, f.ring().arity())?;
                let gb = rees.groebner_basis(dl)?;
                let found = gb.iter().any(|g| scalar_ratio(g, &p).is_some());
                (found, format!("{} basis elements searched", gb.len()))
            }
            Check::SymCompleteIntersection { value } => Self::eq_bool(complete_intersection_check(&self.sym()?, dl)?, *value),
            Check::SymInvariants { dimension, depth } => {
                let sym = self.sym()?;
                let dim = sym.dimension(dl)?.krull_dimension;
                let dep = quotient_invariants(&sym, dl)?.depth();
                ((dim, dep) == (*dimension, *depth), format!("dim {dim}, depth {dep}"))
            }
            Check::ReesCompleteIntersection { height } => {
                let rees = self.rees()?;
                let ht = rees.height(dl)?;
                let ci = complete_intersection_check(&rees, dl)?;
                (ci && ht == *height, format!("complete intersection {ci}, height {ht}"))
            }
            Check::RegularSequence { forms } => {
                let ring = self.ctx()?.extended_ring().clone();
                let ps: Vec<Polynomial> = forms.iter().map(|g| self.parse(g, &ring)).collect::<Result<_>>()?;
                let k = ps.len();
                let ht = Ideal::new(&ring, ps)?.height(dl)?;
                (ht == k, format!("height {ht} for {k} forms"))
            }
            Check::NonPrincipalSaturation => {
                let nu = f.ring().arity();
                let phi = self.freeness()?.syzygy_matrix.clone();
                let by = Ideal::new(f.ring(), phi.minors(nu - 1))?;
                let rees = self.rees()?;
                let sat = self.ctx()?.rees_via_saturation(&by, dl)?;
                Self::eq_bool(sat.equals(&rees, dl)?, true)
            }
            Check::SaturationGivesRees { by } => {
                let gens: Vec<Polynomial> = by.iter().map(|g| self.parse(g, f.ring())).collect::<Result<_>>()?;
                let by = Ideal::new(f.ring(), gens)?;
                let rees = self.rees()?;
                let sat = self.ctx()?.rees_via_saturation(&by, dl)?;
                Self::eq_bool(sat.equals(&rees, dl)?, true)
            }
            Check::GCondition { s, heights } => {
                let hs = self.ctx()?.fitting_heights(*s, dl)?;
                let g = hs.iter().enumerate().all(|(k, &h)| h >= k + 2);
                let exact = heights.as_ref().is_none_or(|want| want == &hs);
                (g && exact, format!("heights {hs:?}"))
            }
            Check::DepthTable { depths } => {
                let mut got = Vec::new();
                for m in 1..=depths.len() as u32 {
                    got.push(self.power_depth(m)?);
                }
                (&got == depths, format!("{got:?}"))
            }
            Check::ProjdimPower { m, value } => {
                let n = f.ring().arity();
                let pd = n - self.power_depth(*m)? - 1;
                Self::eq_num(pd, *value)
            }
            Check::MaxSpread { value } => Self::eq_bool(self.max_spread()?.max_spread, *value),
            Check::DimCf { value } => Self::eq_num(self.max_spread()?.dim_cf, *value),
            Check::ExtConsistent { value } => Self::eq_bool(ext_consistency_check(f, dl)?, *value),
            Check::Homaloidal { value } => {
                let h = self.homaloidal()?;
                (h.verdict == *value, format!("{} via {}", h.verdict, h.route))
            }
            Check::LinearMinorsNonzero { value } => Self::eq_bool(self.homaloidal()?.linear_minors_nonzero, *value),
            Check::LinearSyzygyColumns { value } => {
                let phi = syzygies_of_row(&gradient(f), dl)?;
                Self::eq_num(linear_part(&phi).ncols(), *value)
            }
            Check::HessianEquals { expr } => {
                let want = self.parse(expr, f.ring())?;
                let h = &self.hessian()?.hessian_det;
                (h == &want, h.to_string())
            }
            Check::HessianPower { power, lambda } => {
                let got = self.hessian()?.power_of_f.clone();
                let ok = match (&got, lambda) {
                    (Some((l, k)), Some(want)) => *k == *power && l.to_string() == *want,
                    (Some((_, k)), None) => *k == *power,
                    (None, _) => false,
                };
                (ok, format!("{got:?}"))
            }
            Check::HessianAlreadyReduced { value } => {
                let r = self.hessian()?.already_reduced;
                (r == Some(*value), format!("{r:?}"))
            }
            Check::HessianReducedEquals { expr } => {
                let want = self.parse(expr, f.ring())?;
                let red = self.hessian()?.reduced_part.clone();
                let ok = red.as_ref().is_some_and(|r| scalar_ratio(r, &want).is_some());
                (ok, red.map_or("none".into(), |r| r.to_string()))
            }
            Check::HessianReducedFree { value } => {
                let r = self.hessian()?.reduced_part_free;
                (r == Some(*value), format!("{r:?}"))
            }
            Check::HessianReducedLinearFree { value } => {
                let r = self.hessian()?.reduced_part_linear_free;
                (r == Some(*value), format!("{r:?}"))
            }
        })
    }
}

/// Substitute T_i ↦ c_i·T_i in a polynomial over the Rees ring with `n` base variables.
fn rescale_t(p: &Polynomial, scales: &[String], n: usize) -> Result<Polynomial> {
    if scales.is_empty() {
        return Ok(p.clone());
    }
    let ring = p.ring();
    let mut images: Vec<Polynomial> = (0..ring.arity()).map(|i| Polynomial::var(ring, i)).collect();
    for (i, c) in scales.iter().enumerate() {
        let c: Rational = c.parse().map_err(|_| Error::InvalidArgument(format!("bad scalar `{c}`")))?;
        let slot = images.get_mut(n + i).ok_or_else(|| Error::InvalidArgument("too many scales".into()))?;
        *slot = slot.scale(&c);
    }
    p.substitute(&images)
}

/// The columns as logarithmic derivations, or `None` if one is not logarithmic.
fn derivations(f: &Polynomial, columns: &[Vec<Polynomial>]) -> Result<Option<Vec<LogDerivation>>> {
    let mut out = Vec::new();
    for col in columns {
        match LogDerivation::new(f, col.clone()) {
            Ok(t) => out.push(t),
            Err(Error::InvalidArgument(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(Some(out))
}

/// Evaluate every claim of a fixture. Errors other than an exhausted deadline
/// become failed outcomes carrying the message.
pub fn check_fixture(fx: &Fixture, deadline: Deadline) -> Result<Vec<ClaimOutcome>> {
    let mut ev = Evaluator::new(fx, deadline);
    let mut out = Vec::with_capacity(fx.claims.len());
    for c in &fx.claims {
        let (passed, observed) = match ev.evaluate(&c.check) {
            Ok(v) => v,
            Err(Error::ResourceExhausted) => return Err(Error::ResourceExhausted),
            Err(e) => (false, format!("error: {e}")),
        };
        out.push(ClaimOutcome { statement: c.statement.clone(), check: c.check.to_string(), passed, observed });
    }
    Ok(out)
}
