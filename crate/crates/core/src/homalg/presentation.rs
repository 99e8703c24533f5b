//! Graded module presentations and syzygies.

use crate::error::{Deadline, Error, Result};
use crate::groebner::kernel::{self, FreeModule, ModuleKind, Vector};
use crate::poly::{same_ring, GradedMatrix, Polynomial, Ring};

/// The cokernel of a homogeneous matrix `F_1 → F_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModulePresentation {
    ring: Ring,
    matrix: GradedMatrix,
}

impl GradedModulePresentation {
    pub fn new(matrix: GradedMatrix) -> Self {
        GradedModulePresentation { ring: matrix.ring().clone(), matrix }
    }

    /// `R/(gens)` presented by the row of generators.
    pub fn quotient_ring(ring: &Ring, gens: &[Polynomial]) -> Result<Self> {
        let gens: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        let m = GradedMatrix::from_rows(ring, vec![gens], vec![0])?;
        Ok(Self::new(m))
    }

    /// Free module `⊕ R(-d)`.
    pub fn free(ring: &Ring, degrees: Vec<i64>) -> Self {
        Self::new(GradedMatrix::zero(ring, degrees, Vec::new()))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn matrix(&self) -> &GradedMatrix {
        &self.matrix
    }

    /// Degrees of the presented generators.
    pub fn generator_degrees(&self) -> &[i64] {
        self.matrix.row_twists()
    }

    /// The twisted module M(s): every degree drops by s.
    pub fn shifted(&self, s: i64) -> Self {
        Self::new(self.matrix.shifted(-s))
    }
}

/// Minimal homogeneous generators of the kernel of `m`, as columns.
pub fn syzygies(m: &GradedMatrix, deadline: Deadline) -> Result<GradedMatrix> {
    let ring = m.ring();
    let (nr, nc) = (m.nrows(), m.ncols());
    // (column_j, e_j) in F_0 ⊕ F_1 with the F_0 part dominating
    let mut degs: Vec<i64> = m.row_twists().to_vec();
    degs.extend_from_slice(m.col_twists());
    let ext = FreeModule::new(ring, &degs, ModuleKind::Pot);
    let mut gens = Vec::with_capacity(nc);
    for j in 0..nc {
        let mut parts = m.column(j);
        for k in 0..nc {
            parts.push(if k == j { Polynomial::one(ring) } else { Polynomial::zero(ring) });
        }
        gens.push(Vector::from_polys(&ext, &parts));
    }
    let gb = kernel::groebner(&ext, gens, deadline)?;
    let syz_module = FreeModule::new(ring, m.col_twists(), ModuleKind::Top);
    let mut syz: Vec<Vector> = Vec::new();
    for v in gb.iter().filter(|v| v.lead().unwrap().c as usize >= nr) {
        let parts = v.to_polys(ring, nr + nc);
        syz.push(Vector::from_polys(&syz_module, &parts[nr..]));
    }
    let keep = kernel::minimal_generator_indices(&syz_module, &syz, deadline)?;
    let cols: Vec<Vec<Polynomial>> = keep.iter().map(|&i| syz[i].to_polys(ring, nc)).collect();
    let degs: Vec<i64> = keep.iter().map(|&i| syz[i].degree(&syz_module).unwrap()).collect();
    if cols.is_empty() {
        return Ok(GradedMatrix::zero(ring, m.col_twists().to_vec(), Vec::new()));
    }
    let mut rows = vec![Vec::with_capacity(cols.len()); nc];
    for c in &cols {
        for (i, p) in c.iter().enumerate() {
            rows[i].push(p.clone());
        }
    }
    GradedMatrix::new(ring, rows, m.col_twists().to_vec(), degs)
}

/// Syzygies of a row of homogeneous polynomials.
pub fn syzygies_of_row(gens: &[Polynomial], deadline: Deadline) -> Result<GradedMatrix> {
    let ring = gens.first().ok_or(Error::ZeroInput)?.ring().clone();
    let degs: Vec<i64> = gens.iter().map(|g| g.homogeneous_degree().unwrap_or(0)).collect();
    let m = GradedMatrix::new(&ring, vec![gens.to_vec()], vec![0], degs)?;
    syzygies(&m, deadline)
}

/// Minimal generators of the column span of a homogeneous matrix.
pub fn minimal_columns(m: &GradedMatrix, deadline: Deadline) -> Result<GradedMatrix> {
    let module = FreeModule::new(m.ring(), m.row_twists(), ModuleKind::Top);
    let vs: Vec<Vector> = m.columns().iter().map(|c| Vector::from_polys(&module, c)).collect();
    let keep = kernel::minimal_generator_indices(&module, &vs, deadline)?;
    Ok(m.submatrix(&(0..m.nrows()).collect::<Vec<_>>(), &keep))
}

/// Equality of the column spans of two matrices with the same target.
pub fn same_column_span(a: &GradedMatrix, b: &GradedMatrix, deadline: Deadline) -> Result<bool> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    if a.nrows() != b.nrows() {
        return Ok(false);
    }
    let module = FreeModule::new(a.ring(), a.row_twists(), ModuleKind::Top);
    let va: Vec<Vector> = a.columns().iter().map(|c| Vector::from_polys(&module, c)).collect();
    let vb: Vec<Vector> = b.columns().iter().map(|c| Vector::from_polys(&module, c)).collect();
    let ga = kernel::groebner(&module, va, deadline)?;
    let gb = kernel::groebner(&module, vb, deadline)?;
    Ok(ga == gb)
}

/// Column span of `a` contained in that of `b`.
pub fn column_span_contains(b: &GradedMatrix, a: &GradedMatrix, deadline: Deadline) -> Result<bool> {
    let module = FreeModule::new(b.ring(), b.row_twists(), ModuleKind::Top);
    let vb: Vec<Vector> = b.columns().iter().map(|c| Vector::from_polys(&module, c)).collect();
    let gb = kernel::groebner(&module, vb, deadline)?;
    for c in a.columns() {
        let v = Vector::from_polys(&module, &c);
        if !kernel::normal_form(&module, v, &gb).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ring_of, variables};

    #[test]
    fn koszul_syzygy() {
        let r = ring_of(&["x", "y"]);
        let v = variables(&r);
        let s = syzygies_of_row(&[v[0].clone(), v[1].clone()], Deadline::none()).unwrap();
        assert_eq!(s.ncols(), 1);
        assert_eq!(s.column(0), vec![v[1].clone(), -&v[0]]);
        assert_eq!(s.col_twists(), &[2]);
    }

    #[test]
    fn normal_crossing_syzygies() {
        let r = ring_of(&["x", "y", "z"]);
        let v = variables(&r);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let row = [y * z, x * z, x * y];
        let s = syzygies_of_row(&row, Deadline::none()).unwrap();
        assert_eq!(s.ncols(), 2);
        let m = GradedMatrix::new(&r, vec![row.to_vec()], vec![0], vec![2, 2, 2]).unwrap();
        assert!(m.mul(&s).unwrap().is_zero());
        let expected = GradedMatrix::from_columns(
            &r,
            vec![vec![x.clone(), -y, Polynomial::zero(&r)], vec![x.clone(), Polynomial::zero(&r), -z]],
            3,
        )
        .unwrap()
        .shifted(2);
        assert!(same_column_span(&s, &expected, Deadline::none()).unwrap());
    }
}
