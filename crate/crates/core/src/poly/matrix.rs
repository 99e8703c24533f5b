//! Homogeneous polynomial matrices.

use std::fmt;

use super::polynomial::{same_ring, Polynomial};
use super::rational::Rational;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Polynomial matrix read as a graded map `⊕ R(-col_twists[j]) → ⊕ R(-row_twists[i])`.
///
/// A nonzero entry (i, j) is homogeneous of degree `col_twists[j] - row_twists[i]`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    ring: Ring,
    nrows: usize,
    ncols: usize,
    entries: Vec<Polynomial>,
    row_twists: Vec<i64>,
    col_twists: Vec<i64>,
}

impl GradedMatrix {
    /// Checked constructor from row-major entries.
    pub fn new(ring: &Ring, rows: Vec<Vec<Polynomial>>, row_twists: Vec<i64>, col_twists: Vec<i64>) -> Result<Self> {
        let nrows = row_twists.len();
        let ncols = col_twists.len();
        if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidArgument("matrix dimensions do not match twists".into()));
        }
        let entries: Vec<Polynomial> = rows.into_iter().flatten().collect();
        let m = GradedMatrix { ring: ring.clone(), nrows, ncols, entries, row_twists, col_twists };
        m.validate()?;
        Ok(m)
    }

    /// Build from rows, inferring column twists from the first nonzero entry in each column.
    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Polynomial>>, row_twists: Vec<i64>) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut col_twists = vec![0i64; ncols];
        for (j, ct) in col_twists.iter_mut().enumerate() {
            let mut found = None;
            for (i, r) in rows.iter().enumerate() {
                if let Some(p) = r.get(j) {
                    if !p.is_zero() {
                        let d = p.homogeneous_degree().ok_or(Error::NonHomogeneous)?;
                        found = Some(d + row_twists.get(i).copied().unwrap_or(0));
                        break;
                    }
                }
            }
            *ct = found.unwrap_or(0);
        }
        Self::new(ring, rows, row_twists, col_twists)
    }

    /// Build from columns with all row twists zero.
    pub fn from_columns(ring: &Ring, cols: Vec<Vec<Polynomial>>, nrows: usize) -> Result<Self> {
        Self::from_columns_twisted(ring, cols, vec![0; nrows])
    }

    pub fn from_columns_twisted(ring: &Ring, cols: Vec<Vec<Polynomial>>, row_twists: Vec<i64>) -> Result<Self> {
        let nrows = row_twists.len();
        let mut rows = vec![Vec::with_capacity(cols.len()); nrows];
        for c in cols {
            if c.len() != nrows {
                return Err(Error::InvalidArgument("column length mismatch".into()));
            }
            for (i, p) in c.into_iter().enumerate() {
                rows[i].push(p);
            }
        }
        Self::from_rows(ring, rows, row_twists)
    }

    pub fn zero(ring: &Ring, row_twists: Vec<i64>, col_twists: Vec<i64>) -> Self {
        let entries = vec![Polynomial::zero(ring); row_twists.len() * col_twists.len()];
        GradedMatrix { ring: ring.clone(), nrows: row_twists.len(), ncols: col_twists.len(), entries, row_twists, col_twists }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zero(ring, vec![0; n], vec![0; n]);
        for i in 0..n {
            m.entries[i * n + i] = Polynomial::one(ring);
        }
        m
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                let p = self.get(i, j);
                if !same_ring(p.ring(), &self.ring) {
                    return Err(Error::RingMismatch);
                }
                if p.is_zero() {
                    continue;
                }
                let want = self.col_twists[j] - self.row_twists[i];
                if p.homogeneous_degree() != Some(want) {
                    return Err(Error::NonHomogeneous);
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row_twists(&self) -> &[i64] {
        &self.row_twists
    }

    pub fn col_twists(&self) -> &[i64] {
        &self.col_twists
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.ncols + j]
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.nrows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        self.entries[i * self.ncols..(i + 1) * self.ncols].to_vec()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.ncols).map(|j| self.column(j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.nrows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// Transpose, read as the dual map: twists are negated and swapped.
    pub fn transpose(&self) -> GradedMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.ncols {
            for i in 0..self.nrows {
                entries.push(self.get(i, j).clone());
            }
        }
        GradedMatrix {
            ring: self.ring.clone(),
            nrows: self.ncols,
            ncols: self.nrows,
            entries,
            row_twists: self.col_twists.iter().map(|t| -t).collect(),
            col_twists: self.row_twists.iter().map(|t| -t).collect(),
        }
    }

    /// Shift every twist by `s` (the matrix of the map tensored with R(-s)).
    pub fn shifted(&self, s: i64) -> GradedMatrix {
        let mut m = self.clone();
        m.row_twists.iter_mut().for_each(|t| *t += s);
        m.col_twists.iter_mut().for_each(|t| *t += s);
        m
    }

    /// Matrix product `self * o`; the inner twists must agree where entries are nonzero.
    pub fn mul(&self, o: &GradedMatrix) -> Result<GradedMatrix> {
        if self.ncols != o.nrows {
            return Err(Error::InvalidArgument("matrix product dimension mismatch".into()));
        }
        let mut rows = Vec::with_capacity(self.nrows);
        for i in 0..self.nrows {
            let mut row = Vec::with_capacity(o.ncols);
            for j in 0..o.ncols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.ncols {
                    let (a, b) = (self.get(i, k), o.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                row.push(acc);
            }
            rows.push(row);
        }
        GradedMatrix::new(&self.ring, rows, self.row_twists.clone(), o.col_twists.clone())
    }

    /// Product of a row vector with this matrix.
    pub fn row_times(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        assert_eq!(v.len(), self.nrows);
        (0..self.ncols)
            .map(|j| {
                let mut acc = Polynomial::zero(&self.ring);
                for (i, vi) in v.iter().enumerate() {
                    let e = self.get(i, j);
                    if !e.is_zero() && !vi.is_zero() {
                        acc = &acc + &(vi * e);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> GradedMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        GradedMatrix {
            ring: self.ring.clone(),
            nrows: rows.len(),
            ncols: cols.len(),
            entries,
            row_twists: rows.iter().map(|&i| self.row_twists[i]).collect(),
            col_twists: cols.iter().map(|&j| self.col_twists[j]).collect(),
        }
    }

    /// Move to a ring with the same variable names (different order).
    pub fn with_ring(&self, ring: &Ring) -> Result<GradedMatrix> {
        let entries = self.entries.iter().map(|p| p.with_ring(ring)).collect::<Result<Vec<_>>>()?;
        Ok(GradedMatrix { ring: ring.clone(), entries, ..self.clone() })
    }

    /// Determinant (fraction-free elimination).
    pub fn determinant(&self) -> Result<Polynomial> {
        if self.nrows != self.ncols {
            return Err(Error::NotSquare);
        }
        Ok(bareiss_determinant(&self.ring, self.rows()))
    }

    /// Determinant by Laplace expansion along the first row (oracle for small sizes).
    pub fn determinant_cofactor(&self) -> Result<Polynomial> {
        if self.nrows != self.ncols {
            return Err(Error::NotSquare);
        }
        Ok(cofactor(&self.ring, &self.rows()))
    }

    /// Rank over the fraction field.
    pub fn rank(&self) -> usize {
        bareiss_rank(&self.ring, self.rows())
    }

    /// All r×r minors, rows and columns in lexicographic subset order.
    pub fn minors(&self, r: usize) -> Vec<Polynomial> {
        if r == 0 {
            return vec![Polynomial::one(&self.ring)];
        }
        if r > self.nrows || r > self.ncols {
            return Vec::new();
        }
        let rs = subsets(self.nrows, r);
        let cs = subsets(self.ncols, r);
        let mut out = Vec::with_capacity(rs.len() * cs.len());
        for ri in &rs {
            for ci in &cs {
                let sub = self.submatrix(ri, ci);
                out.push(bareiss_determinant(&self.ring, sub.rows()));
            }
        }
        out
    }

    /// Evaluate every entry at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        (0..self.nrows).map(|i| (0..self.ncols).map(|j| self.get(i, j).evaluate(point)).collect()).collect()
    }

    /// Largest degree among the nonzero entries.
    pub fn max_entry_degree(&self) -> Option<i64> {
        self.entries.iter().filter_map(|p| p.degree()).max()
    }
}

impl fmt::Debug for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GradedMatrix {}x{} rows {:?} cols {:?}", self.nrows, self.ncols, self.row_twists, self.col_twists)?;
        for i in 0..self.nrows {
            let row: Vec<String> = (0..self.ncols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// k-subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn bareiss_determinant(ring: &Ring, mut a: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = a.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    let mut sign = false;
    let mut prev = Polynomial::one(ring);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // prefer the sparsest available pivot
            let p = (k + 1..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].len());
            match p {
                Some(p) => {
                    a.swap(k, p);
                    sign = !sign;
                }
                None => return Polynomial::zero(ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

fn bareiss_rank(ring: &Ring, mut a: Vec<Vec<Polynomial>>) -> usize {
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut prev = Polynomial::one(ring);
    let mut rank = 0;
    let mut col = 0;
    while rank < nrows && col < ncols {
        let p = (rank..nrows).filter(|&i| !a[i][col].is_zero()).min_by_key(|&i| a[i][col].len());
        let Some(p) = p else {
            col += 1;
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..nrows {
            for j in col + 1..ncols {
                let num = &(&a[i][j] * &a[rank][col]) - &(&a[i][col] * &a[rank][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][col] = Polynomial::zero(ring);
        }
        prev = a[rank][col].clone();
        rank += 1;
        col += 1;
    }
    rank
}

fn cofactor(ring: &Ring, a: &[Vec<Polynomial>]) -> Polynomial {
    let n = a.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    if n == 1 {
        return a[0][0].clone();
    }
    let mut acc = Polynomial::zero(ring);
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = a[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let t = &a[0][j] * &cofactor(ring, &minor);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// Rank of a dense rational matrix (Gaussian elimination).
pub fn rational_rank(mut a: Vec<Vec<Rational>>) -> usize {
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = a[rank][col].recip();
        for i in rank + 1..nrows {
            if a[i][col].is_zero() {
                continue;
            }
            let factor = &a[i][col] * &inv;
            for j in col..ncols {
                let v = a[i][j].sub_mul(&factor, &a[rank][j]);
                a[i][j] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// Hessian matrix as the degree-0 map R^n(-(d-2)) → R^n.
pub fn hessian(f: &Polynomial) -> Result<GradedMatrix> {
    let ring = f.ring().clone();
    let n = ring.arity();
    let d = if f.is_zero() { 2 } else { f.homogeneous_degree().ok_or(Error::NonHomogeneous)? };
    let grads: Vec<Polynomial> = (0..n).map(|i| f.partial_derivative(i)).collect();
    let mut rows = vec![Vec::with_capacity(n); n];
    for (i, row) in rows.iter_mut().enumerate() {
        for j in 0..n {
            row.push(grads[j].partial_derivative(i));
        }
    }
    let shift = ring.weights().iter().all(|&w| w == 1);
    if !shift {
        return Err(Error::InvalidArgument("hessian needs the standard grading".into()));
    }
    GradedMatrix::new(&ring, rows, vec![0; n], vec![d - 2; n])
}

/// Hessian determinant h(f).
pub fn hessian_determinant(f: &Polynomial) -> Result<Polynomial> {
    hessian(f)?.determinant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::polynomial::{ring_of, variables};

    #[test]
    fn identity_and_cofactor() {
        let r = ring_of(&["x", "y", "z"]);
        let i3 = GradedMatrix::identity(&r, 3);
        assert_eq!(i3.determinant().unwrap(), Polynomial::one(&r));
        let v = variables(&r);
        let m = GradedMatrix::from_rows(
            &r,
            vec![vec![v[0].clone(), v[1].clone()], vec![v[2].clone(), v[0].clone()]],
            vec![0, 0],
        )
        .unwrap();
        assert_eq!(m.determinant().unwrap(), m.determinant_cofactor().unwrap());
        assert_eq!(m.rank(), 2);
        assert_eq!(m.minors(1).len(), 4);
    }

    #[test]
    fn hessian_of_xyz() {
        let r = ring_of(&["x", "y", "z"]);
        let v = variables(&r);
        let f = &(&v[0] * &v[1]) * &v[2];
        let h = hessian(&f).unwrap();
        assert!(h.get(0, 0).is_zero());
        assert_eq!(h.get(0, 1), &v[2]);
        assert_eq!(h.get(1, 2), &v[0]);
        assert_eq!(h.col_twists(), &[1, 1, 1]);
        // det = 2xyz
        assert_eq!(h.determinant().unwrap(), f.scale(&Rational::from_int(2)));
        let x2 = v[0].pow(2);
        let hx = hessian(&x2).unwrap();
        assert_eq!(hx.get(0, 0), &Polynomial::from_int(&r, 2));
        assert!(hx.get(1, 1).is_zero());
    }

    #[test]
    fn rejects_inhomogeneous_entries() {
        let r = ring_of(&["x", "y"]);
        let v = variables(&r);
        let bad = GradedMatrix::new(&r, vec![vec![&v[0] + &Polynomial::one(&r)]], vec![0], vec![1]);
        assert_eq!(bad.err(), Some(Error::NonHomogeneous));
        let sq = GradedMatrix::zero(&r, vec![0, 0], vec![0]);
        assert_eq!(sq.determinant().err(), Some(Error::NotSquare));
    }

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }
}
