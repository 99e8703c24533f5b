//! The Hessian cokernel 𝒞_f, maximal analytic spread, depth of Jacobian powers
//! and sufficient conditions for homaloidness.

use serde::Serialize;

use crate::blowup::{rees_is_cm, BlowupContext};
use crate::divisor::{gradient, is_free_divisor, is_linear_free, jacobian_ideal};
use crate::error::{Deadline, Error, Result};
use crate::groebner::{ideal_power, scalar_ratio, Ideal};
use crate::homalg::{ext1_against_ring, module_invariants, quotient_invariants, syzygies_of_row, GradedModulePresentation};
use crate::poly::{hessian, squarefree_part, GradedMatrix, Polynomial, Rational};

/// 𝒞_f = coker(R^n(−(d−2)) → R^n) given by the Hessian.
pub fn cokernel_cf(f: &Polynomial) -> Result<GradedModulePresentation> {
    if f.homogeneous_degree().is_none() {
        return Err(Error::NonHomogeneous);
    }
    Ok(GradedModulePresentation::new(hessian(f)?))
}

/// One row of the depth table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DepthEntry {
    pub m: u32,
    pub depth: usize,
}

/// Depths of R/J_f^m for m = 1..m_max; `truncated` marks a deadline hit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthTable {
    pub entries: Vec<DepthEntry>,
    pub truncated: bool,
}

impl DepthTable {
    pub fn depths(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.depth).collect()
    }

    /// First m with depth 0.
    pub fn zero_witness(&self) -> Option<u32> {
        self.entries.iter().find(|e| e.depth == 0).map(|e| e.m)
    }

    /// Once zero, the depth stays zero for every later computed m.
    pub fn zero_persists(&self) -> bool {
        match self.zero_witness() {
            Some(m0) => self.entries.iter().filter(|e| e.m > m0).all(|e| e.depth == 0),
            None => true,
        }
    }
}

/// depth R/J_f^m by Auslander–Buchsbaum.
pub fn depth_power_table(f: &Polynomial, m_max: u32, deadline: Deadline) -> Result<DepthTable> {
    if m_max == 0 {
        return Err(Error::InvalidArgument("m_max must be positive".into()));
    }
    let j = jacobian_ideal(f)?;
    let mut entries = Vec::new();
    for m in 1..=m_max {
        let step = ideal_power(&j, m, deadline).and_then(|jm| quotient_invariants(&jm, deadline));
        match step {
            Ok(inv) => entries.push(DepthEntry { m, depth: inv.depth() }),
            Err(Error::ResourceExhausted) => return Ok(DepthTable { entries, truncated: true }),
            Err(e) => return Err(e),
        }
    }
    Ok(DepthTable { entries, truncated: false })
}

/// The three independent maximal-spread computations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxSpreadVerdict {
    pub hessian_det_nonzero: bool,
    pub dim_cf: usize,
    pub dim_cf_by_fitting: usize,
    pub analytic_spread: usize,
    pub max_spread: bool,
}

/// Hessian determinant, dim 𝒞_f and ℓ(J_f) = n must agree.
pub fn max_spread_check(f: &Polynomial, analytic_spread: Option<usize>, deadline: Deadline) -> Result<MaxSpreadVerdict> {
    let n = f.ring().arity();
    let h = hessian(f)?.determinant()?;
    let nonzero = !h.is_zero();
    let cf = module_invariants(&cokernel_cf(f)?, deadline)?;
    let by_fitting = if nonzero { Ideal::new(f.ring(), vec![h])?.dimension(deadline)?.krull_dimension } else { n };
    if cf.dimension != by_fitting {
        return Err(Error::Internal(format!("dim C_f: resolution {} vs Fitting {by_fitting}", cf.dimension)));
    }
    let spread = match analytic_spread {
        Some(s) => s,
        None => {
            let ctx = BlowupContext::new(gradient(f), deadline)?;
            let rees = ctx.rees_ideal(deadline)?;
            let fiber = ctx.fiber_from_rees(&rees, deadline)?;
            ctx.analytic_spread(&fiber, deadline)?
        }
    };
    let (a, b, c) = (spread == n, cf.dimension + 1 == n, nonzero);
    if a != b || b != c {
        return Err(Error::Internal(format!(
            "maximal spread disagreement: spread {spread}, dim C_f {}, Hessian nonzero {nonzero}",
            cf.dimension
        )));
    }
    Ok(MaxSpreadVerdict {
        hessian_det_nonzero: nonzero,
        dim_cf: cf.dimension,
        dim_cf_by_fitting: by_fitting,
        analytic_spread: spread,
        max_spread: a,
    })
}

/// Betti table and Hilbert series of Ext¹(𝒞_f, R) equal those of 𝒞_f(d−2).
pub fn ext_consistency_check(f: &Polynomial, deadline: Deadline) -> Result<bool> {
    let d = f.homogeneous_degree().ok_or(Error::NonHomogeneous)?;
    let cf = cokernel_cf(f)?;
    let ext = ext1_against_ring(&cf, deadline)?;
    let a = module_invariants(&ext, deadline)?;
    let b = module_invariants(&cf, deadline)?;
    Ok(a.betti == b.betti.shifted(d - 2) && a.hilbert == b.hilbert.shifted(d - 2))
}

/// Which parts of the homaloidness criterion were established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomaloidalEvidence {
    pub linear_syzygy_columns: usize,
    /// I_{n−1}(φ₁) ≠ 0.
    pub linear_minors_nonzero: bool,
    pub rees_cm: Option<bool>,
    pub depth_zero_at: Option<u32>,
    /// "linear-minors", "rees-cm-depth-zero", or "inconclusive".
    pub route: String,
    pub verdict: bool,
    pub note: String,
}

/// Columns of a syzygy matrix whose entries all have degree at most 1.
pub fn linear_part(phi: &GradedMatrix) -> GradedMatrix {
    let rows: Vec<usize> = (0..phi.nrows()).collect();
    let cols: Vec<usize> = (0..phi.ncols())
        .filter(|&j| (0..phi.nrows()).all(|i| phi.get(i, j).degree().is_none_or(|d| d <= 1)))
        .collect();
    phi.submatrix(&rows, &cols)
}

/// Sufficient homaloidness test from linear syzygies, Rees CM and a depth-zero power.
pub fn homaloidal_sufficient(
    f: &Polynomial,
    table: &DepthTable,
    rees_cm: Option<bool>,
    deadline: Deadline,
) -> Result<HomaloidalEvidence> {
    let n = f.ring().arity();
    let phi = syzygies_of_row(&gradient(f), deadline)?;
    let phi1 = linear_part(&phi);
    let minors_ok = phi1.ncols() + 1 >= n && phi1.rank() + 1 >= n;
    let rees_cm = match rees_cm {
        Some(v) => Some(v),
        None if minors_ok => {
            let ctx = BlowupContext::new(gradient(f), deadline)?;
            Some(rees_is_cm(&ctx.rees_ideal(deadline)?, deadline)?)
        }
        None => None,
    };
    let witness = table.zero_witness();
    let (route, verdict) = if !minors_ok {
        ("linear-minors", false)
    } else if rees_cm == Some(true) && witness.is_some() {
        ("rees-cm-depth-zero", true)
    } else {
        ("inconclusive", false)
    };
    Ok(HomaloidalEvidence {
        linear_syzygy_columns: phi1.ncols(),
        linear_minors_nonzero: minors_ok,
        rees_cm,
        depth_zero_at: witness,
        route: route.to_string(),
        verdict,
        note: "certifies the hypotheses over the rationals; birationality holds after extending to an algebraically closed field"
            .to_string(),
    })
}

/// Hessian determinant, its reduced part and the freeness of that part.
#[derive(Clone, Debug, Serialize)]
pub struct HessianExperiment {
    pub hessian_det: Polynomial,
    pub is_zero: bool,
    pub reduced_part: Option<Polynomial>,
    pub already_reduced: Option<bool>,
    /// λ with h = λ·fᵏ for the smallest such k ≥ 1, if any.
    pub power_of_f: Option<(Rational, u32)>,
    pub reduced_part_is_cone: Option<bool>,
    pub reduced_part_free: Option<bool>,
    pub reduced_part_linear_free: Option<bool>,
}

pub fn hessian_experiment(f: &Polynomial, deadline: Deadline) -> Result<HessianExperiment> {
    let h = hessian(f)?.determinant()?;
    let mut out = HessianExperiment {
        hessian_det: h.clone(),
        is_zero: h.is_zero(),
        reduced_part: None,
        already_reduced: None,
        power_of_f: None,
        reduced_part_is_cone: None,
        reduced_part_free: None,
        reduced_part_linear_free: None,
    };
    if h.is_zero() || h.is_constant() {
        return Ok(out);
    }
    let red = squarefree_part(&h, deadline)?;
    out.already_reduced = Some(red.degree() == h.degree());
    if let (Some(dh), Some(df)) = (h.degree(), f.degree()) {
        if df > 0 && dh % df == 0 && dh > 0 {
            let k = (dh / df) as u32;
            out.power_of_f = scalar_ratio(&h, &f.pow(k)).map(|l| (l, k));
        }
    }
    let cone = crate::divisor::is_cone(&red)?;
    out.reduced_part_is_cone = Some(cone);
    if !cone && red.degree().is_some_and(|d| d >= 2) {
        let v = is_free_divisor(&red, deadline)?;
        out.reduced_part_free = Some(v.free);
        out.reduced_part_linear_free = Some(v.free && is_linear_free(&red, deadline)?);
    }
    out.reduced_part = Some(red);
    Ok(out)
}

/// Everything the max-spread analysis reports for one polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct MaxSpreadReport {
    pub hessian_det_nonzero: bool,
    pub dim_cf: usize,
    pub max_spread: bool,
    pub analytic_spread: usize,
    pub ext_consistency: Option<bool>,
    pub depth_table: DepthTable,
    pub depth_zero_witness: Option<u32>,
    pub homaloidal: Option<HomaloidalEvidence>,
}

/// Max-spread verdict, Ext consistency, depth table and homaloidness evidence.
pub fn analyze(
    f: &Polynomial,
    m_max: u32,
    analytic_spread: Option<usize>,
    rees_cm: Option<bool>,
    with_homaloidal: bool,
    deadline: Deadline,
) -> Result<MaxSpreadReport> {
    let v = max_spread_check(f, analytic_spread, deadline)?;
    let ext = match ext_consistency_check(f, deadline) {
        Ok(b) => Some(b),
        Err(Error::ResourceExhausted) => None,
        Err(e) => return Err(e),
    };
    let table = depth_power_table(f, m_max, deadline)?;
    let homaloidal = if with_homaloidal { Some(homaloidal_sufficient(f, &table, rees_cm, deadline)?) } else { None };
    if homaloidal.as_ref().is_some_and(|h| h.verdict) && !v.max_spread {
        return Err(Error::Internal("homaloidness certified without maximal spread".into()));
    }
    Ok(MaxSpreadReport {
        hessian_det_nonzero: v.hessian_det_nonzero,
        dim_cf: v.dim_cf,
        max_spread: v.max_spread,
        analytic_spread: v.analytic_spread,
        ext_consistency: ext,
        depth_zero_witness: table.zero_witness(),
        depth_table: table,
        homaloidal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ring_of, variables};

    fn dl() -> Deadline {
        Deadline::none()
    }

    fn xyz() -> Polynomial {
        let r = ring_of(&["x", "y", "z"]);
        let v = variables(&r);
        &(&v[0] * &v[1]) * &v[2]
    }

    #[test]
    fn normal_crossing_cf() {
        let f = xyz();
        let inv = module_invariants(&cokernel_cf(&f).unwrap(), dl()).unwrap();
        assert_eq!(inv.projective_dimension(), 1);
        assert_eq!(inv.dimension, 2);
        assert!(inv.is_cohen_macaulay());
        let v = max_spread_check(&f, None, dl()).unwrap();
        assert!(v.max_spread);
        assert!(ext_consistency_check(&f, dl()).unwrap());
    }

    #[test]
    fn normal_crossing_depths_and_homaloidal() {
        let f = xyz();
        let t = depth_power_table(&f, 3, dl()).unwrap();
        assert_eq!(t.depths(), vec![1, 0, 0]);
        assert!(t.zero_persists());
        let h = homaloidal_sufficient(&f, &t, None, dl()).unwrap();
        assert!(h.verdict);
        assert_eq!(h.route, "rees-cm-depth-zero");
    }

    #[test]
    fn degenerate_hessian() {
        let r = ring_of(&["x", "y", "z"]);
        let v = variables(&r);
        let f = &v[0].pow(2) * &v[1];
        let inv = module_invariants(&cokernel_cf(&f).unwrap(), dl()).unwrap();
        assert_eq!(inv.dimension, 3);
    }
}
