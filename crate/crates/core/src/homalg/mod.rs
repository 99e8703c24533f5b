//! Graded homological algebra over the standard graded polynomial ring.

mod betti;
mod presentation;
mod resolution;

pub use betti::{BettiTable, HilbertSeries};
pub use presentation::{
    column_span_contains, minimal_columns, same_column_span, syzygies, syzygies_of_row, GradedModulePresentation,
};
pub use resolution::{minimal_free_resolution, Resolution, SchreyerResolution};

use crate::error::{Deadline, Error, Result};
use crate::groebner::Ideal;
use crate::poly::GradedMatrix;

/// Betti table, Hilbert series and dimension without building explicit minimal maps.
#[derive(Clone, Debug)]
pub struct ModuleInvariants {
    pub betti: BettiTable,
    pub hilbert: HilbertSeries,
    pub dimension: usize,
    pub arity: usize,
}

impl ModuleInvariants {
    pub fn projective_dimension(&self) -> usize {
        self.betti.projective_dimension()
    }

    /// Auslander–Buchsbaum depth (the zero module reports the arity).
    pub fn depth(&self) -> usize {
        self.arity - self.projective_dimension()
    }

    pub fn regularity(&self) -> Option<i64> {
        self.betti.regularity()
    }

    pub fn is_cohen_macaulay(&self) -> bool {
        self.depth() == self.dimension
    }
}

/// Invariants of `coker(P)` from its Schreyer resolution.
pub fn module_invariants(p: &GradedModulePresentation, deadline: Deadline) -> Result<ModuleInvariants> {
    if !p.ring().is_standard_graded() {
        return Err(Error::InvalidArgument("homological invariants need the standard grading".into()));
    }
    let sr = SchreyerResolution::compute(p, deadline)?;
    Ok(ModuleInvariants {
        betti: sr.betti(),
        hilbert: sr.hilbert_series(),
        dimension: sr.module_dimension(),
        arity: p.ring().arity(),
    })
}

/// Invariants of R/I.
pub fn quotient_invariants(ideal: &Ideal, deadline: Deadline) -> Result<ModuleInvariants> {
    let p = GradedModulePresentation::quotient_ring(ideal.ring(), ideal.generators())?;
    module_invariants(&p, deadline)
}

pub fn projective_dimension(p: &GradedModulePresentation, deadline: Deadline) -> Result<usize> {
    Ok(module_invariants(p, deadline)?.projective_dimension())
}

pub fn depth_ab(p: &GradedModulePresentation, deadline: Deadline) -> Result<usize> {
    Ok(module_invariants(p, deadline)?.depth())
}

/// reg of the module resolved by `res`.
pub fn regularity(res: &Resolution) -> Option<i64> {
    res.regularity()
}

pub fn hilbert_series(res: &Resolution) -> HilbertSeries {
    res.hilbert_series().clone()
}

/// R/I is Cohen–Macaulay: pd(R/I) = ht(I).
pub fn is_cohen_macaulay(ideal: &Ideal, deadline: Deadline) -> Result<bool> {
    if !ideal.is_homogeneous() {
        return Err(Error::NonHomogeneous);
    }
    let inv = quotient_invariants(ideal, deadline)?;
    let ht = ideal.height(deadline)?;
    Ok(inv.projective_dimension() == ht)
}

/// Presentation of Ext¹(P, R) as the homology of the dual resolution at step 1.
pub fn ext1_against_ring(p: &GradedModulePresentation, deadline: Deadline) -> Result<GradedModulePresentation> {
    let ring = p.ring().clone();
    let res = minimal_free_resolution(p, deadline)?;
    let Some(d1) = res.maps.first() else {
        return Ok(GradedModulePresentation::free(&ring, Vec::new()));
    };
    let d1t = d1.transpose(); // F_0* → F_1*
    let f1_dual: Vec<i64> = d1t.row_twists().to_vec();
    // kernel of d2ᵀ : F_1* → F_2*
    let kernel = match res.maps.get(1) {
        Some(d2) => syzygies(&d2.transpose(), deadline)?,
        None => {
            let mut id = GradedMatrix::identity(&ring, f1_dual.len());
            id = GradedMatrix::new(&ring, id.rows(), f1_dual.clone(), f1_dual.clone())?;
            id
        }
    };
    if kernel.ncols() == 0 {
        return Ok(GradedModulePresentation::free(&ring, Vec::new()));
    }
    // relations among kernel generators modulo im d1ᵀ: kernel of [K | d1ᵀ], first block
    let k = kernel.ncols();
    let mut rows = Vec::with_capacity(f1_dual.len());
    for i in 0..f1_dual.len() {
        let mut r = kernel.row(i);
        r.extend(d1t.row(i));
        rows.push(r);
    }
    let mut col_tw: Vec<i64> = kernel.col_twists().to_vec();
    col_tw.extend_from_slice(d1t.col_twists());
    let stacked = GradedMatrix::new(&ring, rows, f1_dual, col_tw)?;
    let rel = syzygies(&stacked, deadline)?;
    let keep_rows: Vec<usize> = (0..k).collect();
    let cols: Vec<usize> = (0..rel.ncols()).collect();
    let presentation = rel.submatrix(&keep_rows, &cols);
    Ok(GradedModulePresentation::new(presentation))
}
