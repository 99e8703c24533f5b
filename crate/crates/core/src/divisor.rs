//! Freeness of a single homogeneous polynomial and its logarithmic derivations.

use serde::Serialize;

use crate::blowup::BlowupReport;
use crate::error::{Deadline, Error, Result};
use crate::groebner::{scalar_ratio, Ideal};
use crate::homalg::{module_invariants, quotient_invariants, syzygies, syzygies_of_row, GradedModulePresentation};
use crate::maxspread::MaxSpreadReport;
use crate::poly::{rational_rank, GradedMatrix, Monomial, Polynomial, Rational};

fn check_input(f: &Polynomial) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    f.homogeneous_degree().ok_or(Error::NonHomogeneous)
}

/// The n partial derivatives of f.
pub fn gradient(f: &Polynomial) -> Vec<Polynomial> {
    (0..f.ring().arity()).map(|i| f.partial_derivative(i)).collect()
}

/// J_f = (∂f/∂x₁, …, ∂f/∂x_n).
pub fn jacobian_ideal(f: &Polynomial) -> Result<Ideal> {
    check_input(f)?;
    Ideal::new(f.ring(), gradient(f))
}

/// Partials linearly dependent over the coefficient field.
pub fn is_cone(f: &Polynomial) -> Result<bool> {
    check_input(f)?;
    let parts = gradient(f);
    let mut monos: Vec<Monomial> = parts.iter().flat_map(|p| p.terms().iter().map(|(m, _)| *m)).collect();
    monos.sort_unstable();
    monos.dedup();
    let rows: Vec<Vec<Rational>> = parts.iter().map(|p| monos.iter().map(|m| p.coefficient(m)).collect()).collect();
    Ok(rational_rank(rows) < parts.len())
}

/// Reducedness via ht J_f ≥ 2.
pub fn is_reduced(f: &Polynomial, deadline: Deadline) -> Result<bool> {
    if is_cone(f)? {
        return Err(Error::InvalidArgument("input is a cone".into()));
    }
    Ok(jacobian_ideal(f)?.height(deadline)? >= 2)
}

/// Outcome of the freeness test.
#[derive(Clone, Debug)]
pub struct FreenessVerdict {
    pub free: bool,
    pub jacobian_height: usize,
    /// Projective dimension of J_f as a module.
    pub jacobian_pd: usize,
    /// Minimal syzygy matrix φ of the gradient.
    pub syzygy_matrix: GradedMatrix,
    /// For free f: I_{n−1}(φ) = J_f was verified.
    pub hilbert_burch: Option<bool>,
}

/// Freeness: ht J_f = 2 and pd J_f = 1, with the Hilbert–Burch certificate.
pub fn is_free_divisor(f: &Polynomial, deadline: Deadline) -> Result<FreenessVerdict> {
    if !is_reduced(f, deadline)? {
        return Err(Error::InvalidArgument("input is not reduced".into()));
    }
    freeness_unchecked(f, deadline)
}

fn freeness_unchecked(f: &Polynomial, deadline: Deadline) -> Result<FreenessVerdict> {
    let n = f.ring().arity();
    let j = jacobian_ideal(f)?;
    let ht = j.height(deadline)?;
    let inv = quotient_invariants(&j, deadline)?;
    let pd = inv.projective_dimension().saturating_sub(1);
    let phi = syzygies_of_row(&gradient(f), deadline)?;
    let free = ht == 2 && pd == 1;
    let hilbert_burch = if free {
        let minors = Ideal::new(f.ring(), phi.minors(n - 1))?;
        Some(minors.equals(&j, deadline)?)
    } else {
        None
    };
    Ok(FreenessVerdict { free, jacobian_height: ht, jacobian_pd: pd, syzygy_matrix: phi, hilbert_burch })
}

/// Free with a linearly presented Jacobian ideal.
pub fn is_linear_free(f: &Polynomial, deadline: Deadline) -> Result<bool> {
    let v = is_free_divisor(f, deadline)?;
    Ok(v.free && linear_entries(&v.syzygy_matrix))
}

fn linear_entries(m: &GradedMatrix) -> bool {
    m.max_entry_degree().is_none_or(|d| d <= 1)
}

/// θ = Σ gᵢ ∂/∂xᵢ with θ(f) ∈ (f).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogDerivation {
    coefficients: Vec<Polynomial>,
    degree: i64,
}

impl LogDerivation {
    /// Certified construction: errors unless θ(f) is a multiple of f.
    pub fn new(f: &Polynomial, coefficients: Vec<Polynomial>) -> Result<Self> {
        let n = f.ring().arity();
        if coefficients.len() != n {
            return Err(Error::InvalidArgument(format!("expected {n} coefficients, got {}", coefficients.len())));
        }
        let mut deg = None;
        for g in coefficients.iter().filter(|g| !g.is_zero()) {
            let d = g.homogeneous_degree().ok_or(Error::NonHomogeneous)?;
            if deg.is_some_and(|e| e != d) {
                return Err(Error::NonHomogeneous);
            }
            deg = Some(d);
        }
        let theta = Self { degree: deg.map_or(0, |d| d - 1), coefficients };
        if !theta.is_logarithmic(f) {
            return Err(Error::InvalidArgument("derivation is not logarithmic".into()));
        }
        Ok(theta)
    }

    /// The Euler derivation Σ xᵢ ∂/∂xᵢ.
    pub fn euler(f: &Polynomial) -> Self {
        let ring = f.ring();
        Self { coefficients: (0..ring.arity()).map(|i| Polynomial::var(ring, i)).collect(), degree: 0 }
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coefficients
    }

    /// Coefficients have degree `degree + 1`.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(p.ring());
        for (i, g) in self.coefficients.iter().enumerate() {
            if !g.is_zero() {
                acc = &acc + &(g * &p.partial_derivative(i));
            }
        }
        acc
    }

    pub fn is_logarithmic(&self, f: &Polynomial) -> bool {
        let v = self.apply(f);
        v.is_zero() || v.exact_div(f).is_some()
    }
}

/// Saito's criterion: det [θⱼ(xᵢ)] = λ·f with λ a nonzero scalar.
pub fn saito_check(f: &Polynomial, thetas: &[LogDerivation]) -> Result<Option<Rational>> {
    let n = f.ring().arity();
    if thetas.len() != n {
        return Err(Error::InvalidArgument(format!("expected {n} derivations, got {}", thetas.len())));
    }
    if let Some(i) = thetas.iter().position(|t| !t.is_logarithmic(f)) {
        return Err(Error::InvalidArgument(format!("derivation {} is not logarithmic", i + 1)));
    }
    let m = coefficient_matrix(f, thetas)?;
    let det = m.determinant()?;
    Ok(scalar_ratio(&det, f).filter(|l| !l.is_zero()))
}

/// n × m matrix whose columns are the coefficient vectors; rows are ∂ᵢ of degree −1.
pub fn coefficient_matrix(f: &Polynomial, thetas: &[LogDerivation]) -> Result<GradedMatrix> {
    let n = f.ring().arity();
    let rows: Vec<Vec<Polynomial>> =
        (0..n).map(|i| thetas.iter().map(|t| t.coefficients[i].clone()).collect()).collect();
    GradedMatrix::new(f.ring(), rows, vec![-1; n], thetas.iter().map(|t| t.degree).collect())
}

/// Derivations from the columns of a syzygy matrix of the gradient.
pub fn derivations_from_syzygies(f: &Polynomial, phi: &GradedMatrix) -> Result<Vec<LogDerivation>> {
    phi.columns().into_iter().map(|c| LogDerivation::new(f, c)).collect()
}

/// Generators of T(f) (syzygies of J_f, then Euler) and the presentation of T(f).
pub fn log_derivation_module(
    f: &Polynomial,
    deadline: Deadline,
) -> Result<(Vec<LogDerivation>, GradedModulePresentation)> {
    check_input(f)?;
    let phi = syzygies_of_row(&gradient(f), deadline)?;
    let mut gens = derivations_from_syzygies(f, &phi)?;
    gens.push(LogDerivation::euler(f));
    let g = coefficient_matrix(f, &gens)?;
    let rel = syzygies(&g, deadline)?;
    Ok((gens, GradedModulePresentation::new(rel)))
}

/// Generators of T(f) as projections of the syzygies of [∇f | f].
pub fn log_derivations_by_projection(f: &Polynomial, deadline: Deadline) -> Result<Vec<LogDerivation>> {
    let d = check_input(f)?;
    let n = f.ring().arity();
    let mut row = gradient(f);
    row.push(f.clone());
    let degs: Vec<i64> = (0..n).map(|_| d - 1).chain(std::iter::once(d)).collect();
    let m = GradedMatrix::new(f.ring(), vec![row], vec![0], degs)?;
    let syz = syzygies(&m, deadline)?;
    syz.columns()
        .into_iter()
        .map(|mut c| {
            c.truncate(n);
            LogDerivation::new(f, c)
        })
        .collect()
}

/// Presentation of Der_k(R/(f)) = T(f) / f·Der_k(R).
pub fn der_module_presentation(f: &Polynomial, deadline: Deadline) -> Result<GradedModulePresentation> {
    let d = check_input(f)?;
    let n = f.ring().arity();
    let (gens, _) = log_derivation_module(f, deadline)?;
    let g = coefficient_matrix(f, &gens)?;
    let m = gens.len();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut r = g.row(i);
        r.extend((0..n).map(|k| if k == i { f.clone() } else { Polynomial::zero(f.ring()) }));
        rows.push(r);
    }
    let mut col_tw: Vec<i64> = g.col_twists().to_vec();
    col_tw.extend(std::iter::repeat(d - 1).take(n));
    let stacked = GradedMatrix::new(f.ring(), rows, vec![-1; n], col_tw)?;
    let rel = syzygies(&stacked, deadline)?;
    let keep: Vec<usize> = (0..m).collect();
    let cols: Vec<usize> = (0..rel.ncols()).collect();
    Ok(GradedModulePresentation::new(rel.submatrix(&keep, &cols)))
}

/// reg Der_k(R/(f)), with ε of degree 0.
pub fn der_regularity(f: &Polynomial, deadline: Deadline) -> Result<Option<i64>> {
    let p = der_module_presentation(f, deadline)?;
    Ok(module_invariants(&p, deadline)?.regularity())
}

/// Full verdict for one polynomial; blowup and max-spread parts are filled on request.
#[derive(Clone, Debug, Serialize)]
pub struct DivisorReport {
    pub degree: i64,
    pub arity: usize,
    pub is_cone: bool,
    pub is_reduced: Option<bool>,
    pub jacobian_height: Option<usize>,
    pub jacobian_pd: Option<usize>,
    pub is_free: Option<bool>,
    pub is_linear_free: Option<bool>,
    pub hilbert_burch: Option<bool>,
    pub saito_lambda: Option<Rational>,
    pub syzygy_degrees: Vec<i64>,
    pub der_regularity: Option<i64>,
    /// For free f: the computed regularity equals d − 2.
    pub der_regularity_matches: Option<bool>,
    pub blowup: Option<BlowupReport>,
    pub maxspread: Option<MaxSpreadReport>,
}

/// Cone, reducedness, freeness, Saito and Der checks.
pub fn analyze(f: &Polynomial, deadline: Deadline) -> Result<DivisorReport> {
    let d = check_input(f)?;
    let n = f.ring().arity();
    let cone = is_cone(f)?;
    let mut rep = DivisorReport {
        degree: d,
        arity: n,
        is_cone: cone,
        is_reduced: None,
        jacobian_height: None,
        jacobian_pd: None,
        is_free: None,
        is_linear_free: None,
        hilbert_burch: None,
        saito_lambda: None,
        syzygy_degrees: Vec::new(),
        der_regularity: None,
        der_regularity_matches: None,
        blowup: None,
        maxspread: None,
    };
    if cone {
        return Ok(rep);
    }
    let reduced = is_reduced(f, deadline)?;
    rep.is_reduced = Some(reduced);
    let v = freeness_unchecked(f, deadline)?;
    rep.jacobian_height = Some(v.jacobian_height);
    rep.jacobian_pd = Some(v.jacobian_pd);
    rep.syzygy_degrees = v.syzygy_matrix.col_twists().to_vec();
    if reduced {
        rep.is_free = Some(v.free);
        rep.is_linear_free = Some(v.free && linear_entries(&v.syzygy_matrix));
        rep.hilbert_burch = v.hilbert_burch;
        if v.free {
            let mut basis = derivations_from_syzygies(f, &v.syzygy_matrix)?;
            basis.push(LogDerivation::euler(f));
            rep.saito_lambda = saito_check(f, &basis)?;
        }
    }
    let reg = der_regularity(f, deadline)?;
    rep.der_regularity = reg;
    if rep.is_free == Some(true) {
        rep.der_regularity_matches = Some(reg == Some(d - 2));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ring_of, variables};

    fn dl() -> Deadline {
        Deadline::none()
    }

    #[test]
    fn normal_crossing_three() {
        let r = ring_of(&["x", "y", "z"]);
        let v = variables(&r);
        let f = &(&v[0] * &v[1]) * &v[2];
        assert!(!is_cone(&f).unwrap());
        assert!(is_reduced(&f, dl()).unwrap());
        let verdict = is_free_divisor(&f, dl()).unwrap();
        assert!(verdict.free);
        assert_eq!(verdict.hilbert_burch, Some(true));
        assert!(is_linear_free(&f, dl()).unwrap());
        assert_eq!(der_regularity(&f, dl()).unwrap(), Some(1));
        let (gens, pres) = log_derivation_module(&f, dl()).unwrap();
        assert_eq!(gens.len(), 3);
        assert_eq!(pres.matrix().ncols(), 0);
        let lambda = saito_check(&f, &gens).unwrap().unwrap();
        assert!(!lambda.is_zero());
    }

    #[test]
    fn cone_and_fermat() {
        let r = ring_of(&["x", "y", "z"]);
        let v = variables(&r);
        let g = &(&v[0] * &v[0]) * &v[1];
        assert!(is_cone(&g).unwrap());
        let fermat = &(&v[0].pow(3) + &v[1].pow(3)) + &v[2].pow(3);
        let verdict = is_free_divisor(&fermat, dl()).unwrap();
        assert!(!verdict.free);
        assert_eq!(verdict.jacobian_height, 3);
    }

    #[test]
    fn non_logarithmic_rejected() {
        let r = ring_of(&["x", "y"]);
        let v = variables(&r);
        let f = &v[0] * &v[1];
        assert!(LogDerivation::new(&f, vec![v[1].clone(), Polynomial::zero(&r)]).is_err());
        let e = LogDerivation::euler(&f);
        let err = saito_check(&f, &[e.clone()]).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }

    #[test]
    fn projection_route_spans_same_module() {
        let r = ring_of(&["x", "y", "z"]);
        let v = variables(&r);
        let f = &(&v[0] * &v[1]) * &(&v[0] + &v[2]);
        let (gens, _) = log_derivation_module(&f, dl()).unwrap();
        let proj = log_derivations_by_projection(&f, dl()).unwrap();
        let a = coefficient_matrix(&f, &gens).unwrap();
        let b = coefficient_matrix(&f, &proj).unwrap();
        assert!(crate::homalg::same_column_span(&a, &b, dl()).unwrap());
    }
}
