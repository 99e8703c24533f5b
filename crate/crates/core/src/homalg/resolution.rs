//! Schreyer resolutions, minimal Betti numbers and pruning to minimal maps.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::betti::{BettiTable, HilbertSeries};
use super::presentation::GradedModulePresentation;
use crate::error::{Deadline, Error, Result};
use crate::groebner::kernel::{self, BasisInfo, FreeModule, ModuleKind, Term, Vector};
use crate::poly::{GradedMatrix, Monomial, Polynomial, Rational, Ring};

/// One level of a Schreyer frame: basis of F_k and the images in F_{k-1}.
#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub module: FreeModule,
    /// d_k(e_c) as vectors of F_{k-1}.
    pub images: Vec<Vector>,
    /// Lead data (monomial, component in F_{k-1}).
    lead: Vec<(Monomial, u32)>,
}

/// A (usually non-minimal) free resolution built from a Schreyer frame.
#[derive(Clone, Debug)]
pub struct SchreyerResolution {
    ring: Ring,
    /// levels[0] holds only the module F_0; levels[k] holds F_k and d_k.
    levels: Vec<Level>,
    /// Dimension of the presented module read off the level-1 lead terms.
    module_dimension: usize,
}

fn lex_desc(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    b.exps().cmp(a.exps())
}

impl SchreyerResolution {
    /// Resolve `coker(presentation)`.
    pub fn compute(p: &GradedModulePresentation, deadline: Deadline) -> Result<Self> {
        let ring = p.ring().clone();
        let m = p.matrix();
        let n = ring.arity();
        let f0_degrees = m.row_twists().to_vec();
        let plain = FreeModule::new(&ring, &f0_degrees, ModuleKind::Top);
        let gens: Vec<Vector> = m.columns().iter().map(|c| Vector::from_polys(&plain, c)).collect();
        for g in &gens {
            if !g.is_homogeneous(&plain) {
                return Err(Error::NonHomogeneous);
            }
        }
        let mut gb = kernel::groebner(&plain, gens, deadline)?;
        gb.sort_by(|a, b| {
            let (ta, tb) = (a.lead().unwrap(), b.lead().unwrap());
            ta.c.cmp(&tb.c).then_with(|| lex_desc(&ta.m, &tb.m))
        });

        // module dimension from lead terms, per component
        let mut per_comp: Vec<Vec<Monomial>> = vec![Vec::new(); f0_degrees.len()];
        for g in &gb {
            let t = g.lead().unwrap();
            per_comp[t.c as usize].push(t.m);
        }
        let module_dimension = per_comp
            .iter()
            .map(|lms| {
                if lms.iter().any(Monomial::is_one) {
                    None
                } else {
                    Some(crate::groebner::monomial_dimension(lms, n))
                }
            })
            .flatten()
            .max()
            .unwrap_or(0);

        let f0 = FreeModule::schreyer(
            &ring,
            f0_degrees
                .iter()
                .enumerate()
                .map(|(i, &d)| BasisInfo { degree: d, frame: Monomial::one(), root: i as u32 })
                .collect(),
        );
        let mut levels = vec![Level { module: f0, images: Vec::new(), lead: Vec::new() }];
        if !gb.is_empty() {
            let basis = gb
                .iter()
                .map(|g| {
                    let t = g.lead().unwrap();
                    BasisInfo { degree: levels[0].module.term_degree(&t.m, t.c), frame: t.m, root: t.c }
                })
                .collect();
            let lead = gb.iter().map(|g| (g.lead().unwrap().m, g.lead().unwrap().c)).collect();
            levels.push(Level { module: FreeModule::schreyer(&ring, basis), images: gb, lead });
        }
        loop {
            let k = levels.len() - 1;
            if k == 0 || levels[k].images.is_empty() {
                break;
            }
            if k > n + 1 {
                return Err(Error::Internal("resolution longer than the syzygy bound".into()));
            }
            let next = next_level(&ring, &levels[k - 1], &levels[k], deadline)?;
            if next.images.is_empty() {
                break;
            }
            levels.push(next);
        }
        Ok(SchreyerResolution { ring, levels, module_dimension })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Length of the (non-minimal) frame.
    pub fn frame_length(&self) -> usize {
        self.levels.len() - 1
    }

    /// Ranks of the frame modules F_0, F_1, …
    pub fn frame_ranks(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.module.rank()).collect()
    }

    pub fn module_dimension(&self) -> usize {
        self.module_dimension
    }

    /// Hilbert series of the resolved module.
    pub fn hilbert_series(&self) -> HilbertSeries {
        let mut num = BTreeMap::new();
        for (k, l) in self.levels.iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            for b in &l.module.basis {
                *num.entry(b.degree).or_insert(0) += sign;
            }
        }
        HilbertSeries::new(num, self.ring.arity())
    }

    /// Minimal graded Betti numbers from the ranks of the scalar parts of the differentials.
    pub fn betti(&self) -> BettiTable {
        let len = self.levels.len();
        // rank of the scalar block of d_k in each degree
        let mut ranks: Vec<HashMap<i64, usize>> = vec![HashMap::new(); len + 1];
        for k in 1..len {
            ranks[k] = scalar_ranks(&self.levels[k - 1].module, &self.levels[k]);
        }
        let mut table = BettiTable::new();
        for k in 0..len {
            let mut by_deg: BTreeMap<i64, usize> = BTreeMap::new();
            for b in &self.levels[k].module.basis {
                *by_deg.entry(b.degree).or_insert(0) += 1;
            }
            for (d, cnt) in by_deg {
                let r_in = ranks[k].get(&d).copied().unwrap_or(0);
                let r_out = ranks[k + 1].get(&d).copied().unwrap_or(0);
                table.add(k, d, cnt - r_in - r_out);
            }
        }
        table
    }

    /// The differentials as polynomial matrices d_1, d_2, … (not minimal).
    pub fn matrices(&self) -> Vec<GradedMatrix> {
        let mut out = Vec::new();
        for k in 1..self.levels.len() {
            let src = &self.levels[k];
            let tgt = &self.levels[k - 1].module;
            let rows: Vec<i64> = tgt.basis.iter().map(|b| b.degree).collect();
            let cols: Vec<i64> = src.module.basis.iter().map(|b| b.degree).collect();
            let mut m = SparseMap::new(rows, cols);
            for (j, v) in src.images.iter().enumerate() {
                for (i, p) in v.to_polys(&self.ring, tgt.rank()).into_iter().enumerate() {
                    if !p.is_zero() {
                        m.cols[j].insert(i, p);
                    }
                }
            }
            out.push(m.to_matrix(&self.ring));
        }
        out
    }
}

/// Build level k+1 from level k (elements of F_k mapping into F_{k-1}).
fn next_level(ring: &Ring, below: &Level, cur: &Level, deadline: Deadline) -> Result<Level> {
    let fk1 = &below.module;
    // reducers grouped by the component of their lead term
    let mut by_comp: HashMap<u32, Vec<usize>> = HashMap::new();
    for (i, (_, c)) in cur.lead.iter().enumerate() {
        by_comp.entry(*c).or_default().push(i);
    }
    struct Spec {
        parent: usize,
        partner: usize,
        u: Monomial,
        v: Monomial,
    }
    let mut specs: Vec<Spec> = Vec::new();
    for (a, (ma, ca)) in cur.lead.iter().enumerate() {
        let sibs = &by_comp[ca];
        let mut cands: Vec<(Monomial, usize, Monomial)> = Vec::new();
        for &b in sibs.iter().filter(|&&b| b > a) {
            let mb = &cur.lead[b].0;
            let l = ma.lcm(mb);
            cands.push((ma.quotient_of(&l).unwrap(), b, mb.quotient_of(&l).unwrap()));
        }
        // keep minimal generators of the monomial ideal (first occurrence of equal ones)
        let mut keep: Vec<(Monomial, usize, Monomial)> = Vec::new();
        for (idx, c) in cands.iter().enumerate() {
            let dominated = cands.iter().enumerate().any(|(jdx, o)| {
                jdx != idx && o.0.divides(&c.0) && (o.0 != c.0 || jdx < idx)
            });
            if !dominated {
                keep.push(*c);
            }
        }
        keep.sort_by(|x, y| lex_desc(&x.0, &y.0));
        for (u, b, v) in keep {
            specs.push(Spec { parent: a, partner: b, u, v });
        }
    }
    let basis: Vec<BasisInfo> = specs
        .iter()
        .map(|s| {
            let pb = &cur.module.basis[s.parent];
            BasisInfo { degree: cur.module.mono_degree(&s.u) + pb.degree, frame: s.u.mul(&pb.frame), root: pb.root }
        })
        .collect();
    let fk = &cur.module;
    let next_module = FreeModule::schreyer(ring, basis);
    let one = Rational::one();
    let mut images = Vec::with_capacity(specs.len());
    let mut lead = Vec::with_capacity(specs.len());
    for (idx, s) in specs.iter().enumerate() {
        if idx % 16 == 0 {
            deadline.check()?;
        }
        // r = u·τ_a − v·τ_b, reduced to zero by the τ's while recording quotients
        let ta = &cur.images[s.parent];
        let tb = &cur.images[s.partner];
        let a_tail: Vec<Term> = ta.terms[1..].iter().map(|t| Term { m: t.m.mul(&s.u), c: t.c, k: t.k.clone() }).collect();
        let mut r = kernel::sub_mul_slices(&a_tail, fk1, &one, &s.v, &tb.terms[1..]);
        let mut terms: Vec<Term> = vec![
            Term { m: s.u, c: s.parent as u32, k: one.clone() },
            Term { m: s.v, c: s.partner as u32, k: -one.clone() },
        ];
        let mut steps = 0usize;
        while let Some(t) = r.first() {
            steps += 1;
            if steps % 256 == 0 {
                deadline.check()?;
            }
            let cands = by_comp.get(&t.c).ok_or_else(|| Error::Internal("frame reduction stuck".into()))?;
            let j = cands
                .iter()
                .copied()
                .find(|&j| cur.lead[j].0.divides(&t.m))
                .ok_or_else(|| Error::Internal("frame reduction stuck".into()))?;
            let q = cur.lead[j].0.quotient_of(&t.m).unwrap();
            let k = t.k.clone();
            terms.push(Term { m: q, c: j as u32, k: -k.clone() });
            r = kernel::sub_mul_slices(&r[1..], fk1, &k, &q, &cur.images[j].terms[1..]);
        }
        let v = Vector::from_terms(fk, terms);
        let lt = v.lead().ok_or_else(|| Error::Internal("vanishing frame element".into()))?;
        if lt.m != s.u || lt.c != s.parent as u32 {
            return Err(Error::Internal("unexpected frame lead term".into()));
        }
        lead.push((s.u, s.parent as u32));
        images.push(v);
    }
    Ok(Level { module: next_module, images, lead })
}

/// Rank of the scalar part of d_k, per internal degree.
fn scalar_ranks(target: &FreeModule, level: &Level) -> HashMap<i64, usize> {
    let mut by_deg: BTreeMap<i64, Vec<Vec<(usize, Rational)>>> = BTreeMap::new();
    for (j, v) in level.images.iter().enumerate() {
        let d = level.module.basis[j].degree;
        let mut col: Vec<(usize, Rational)> = v
            .terms
            .iter()
            .filter(|t| t.m.is_one())
            .map(|t| (t.c as usize, t.k.clone()))
            .collect();
        if col.is_empty() {
            continue;
        }
        col.sort_by_key(|e| e.0);
        debug_assert!(col.iter().all(|(c, _)| target.basis[*c].degree == d));
        by_deg.entry(d).or_default().push(col);
    }
    by_deg.into_iter().map(|(d, cols)| (d, sparse_rank(cols))).collect()
}

/// Rank of a sparse rational matrix given by columns (entries sorted by row).
pub(crate) fn sparse_rank(cols: Vec<Vec<(usize, Rational)>>) -> usize {
    let mut pivots: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
    for mut v in cols {
        loop {
            let Some((r0, c0)) = v.first().cloned() else { break };
            match pivots.get(&r0) {
                None => {
                    let inv = c0.recip();
                    let nv: Vec<(usize, Rational)> = v.iter().map(|(r, c)| (*r, c * &inv)).collect();
                    pivots.insert(r0, nv);
                    break;
                }
                Some(p) => {
                    v = axpy_sparse(&v, &c0, p);
                }
            }
        }
    }
    pivots.len()
}

/// `a − c·b` for sorted sparse vectors.
fn axpy_sparse(a: &[(usize, Rational)], c: &Rational, b: &[(usize, Rational)]) -> Vec<(usize, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = a[i].1.sub_mul(c, &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Column-sparse polynomial matrix used while pruning.
#[derive(Clone, Debug)]
struct SparseMap {
    rows: Vec<i64>,
    colsdeg: Vec<i64>,
    cols: Vec<BTreeMap<usize, Polynomial>>,
}

impl SparseMap {
    fn new(rows: Vec<i64>, colsdeg: Vec<i64>) -> Self {
        let cols = vec![BTreeMap::new(); colsdeg.len()];
        SparseMap { rows, colsdeg, cols }
    }

    fn from_matrix(m: &GradedMatrix) -> Self {
        let mut s = SparseMap::new(m.row_twists().to_vec(), m.col_twists().to_vec());
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                let p = m.get(i, j);
                if !p.is_zero() {
                    s.cols[j].insert(i, p.clone());
                }
            }
        }
        s
    }

    fn to_matrix(&self, ring: &Ring) -> GradedMatrix {
        let mut rows = vec![vec![Polynomial::zero(ring); self.colsdeg.len()]; self.rows.len()];
        for (j, c) in self.cols.iter().enumerate() {
            for (&i, p) in c {
                rows[i][j] = p.clone();
            }
        }
        GradedMatrix::new(ring, rows, self.rows.clone(), self.colsdeg.clone()).expect("homogeneous by construction")
    }

    fn find_unit(&self) -> Option<(usize, usize)> {
        // prefer the sparsest column for less fill-in
        let mut best: Option<(usize, usize, usize)> = None;
        for (j, c) in self.cols.iter().enumerate() {
            for (&i, p) in c {
                if p.is_constant() && !p.is_zero() {
                    let cost = c.len();
                    if best.is_none_or(|b| cost < b.2) {
                        best = Some((i, j, cost));
                    }
                    break;
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn delete_row(&mut self, a: usize) {
        self.rows.remove(a);
        for c in self.cols.iter_mut() {
            let old = std::mem::take(c);
            *c = old.into_iter().filter(|(i, _)| *i != a).map(|(i, p)| (if i > a { i - 1 } else { i }, p)).collect();
        }
    }

    fn delete_col(&mut self, b: usize) {
        self.colsdeg.remove(b);
        self.cols.remove(b);
    }
}

/// Minimal graded free resolution with explicit maps.
#[derive(Clone, Debug, Serialize)]
pub struct Resolution {
    #[serde(skip)]
    pub maps: Vec<GradedMatrix>,
    pub betti: BettiTable,
    #[serde(skip)]
    pub(crate) hilbert: HilbertSeries,
}

impl Resolution {
    pub fn projective_dimension(&self) -> usize {
        self.betti.projective_dimension()
    }

    pub fn regularity(&self) -> Option<i64> {
        self.betti.regularity()
    }

    pub fn hilbert_series(&self) -> &HilbertSeries {
        &self.hilbert
    }

    /// Twists of F_0 (the minimal generators).
    pub fn generator_degrees(&self) -> Vec<i64> {
        self.betti.twists(0)
    }
}

/// Minimal graded free resolution of `coker(P)` with explicit pruned maps.
pub fn minimal_free_resolution(p: &GradedModulePresentation, deadline: Deadline) -> Result<Resolution> {
    let sr = SchreyerResolution::compute(p, deadline)?;
    let ring = sr.ring.clone();
    let mut maps: Vec<SparseMap> = sr.matrices().iter().map(SparseMap::from_matrix).collect();
    // strip units level by level
    for k in 0..maps.len() {
        while let Some((a, b)) = maps[k].find_unit() {
            deadline.check()?;
            let u = maps[k].cols[b][&a].constant_value().unwrap();
            let inv = u.recip();
            let col_b = maps[k].cols[b].clone();
            for c in 0..maps[k].cols.len() {
                if c == b {
                    continue;
                }
                let Some(factor) = maps[k].cols[c].get(&a).cloned() else { continue };
                let factor = factor.scale(&inv);
                for (r, p) in &col_b {
                    let delta = &factor * p;
                    let entry = maps[k].cols[c].remove(r).unwrap_or_else(|| Polynomial::zero(&ring));
                    let ne = &entry - &delta;
                    if !ne.is_zero() {
                        maps[k].cols[c].insert(*r, ne);
                    }
                }
            }
            maps[k].delete_row(a);
            maps[k].delete_col(b);
            if k + 1 < maps.len() {
                maps[k + 1].delete_row(b);
            }
            if k > 0 {
                maps[k - 1].delete_col(a);
            }
        }
    }
    let f0 = maps.first().map(|m| m.rows.clone()).unwrap_or_else(|| p.matrix().row_twists().to_vec());
    while matches!(maps.last(), Some(m) if m.colsdeg.is_empty()) {
        maps.pop();
    }
    let mut betti = BettiTable::new();
    for d in &f0 {
        betti.add(0, *d, 1);
    }
    for (k, m) in maps.iter().enumerate() {
        for d in &m.colsdeg {
            betti.add(k + 1, *d, 1);
        }
    }
    debug_assert_eq!(betti, sr.betti());
    let maps = maps.iter().map(|m| m.to_matrix(&ring)).collect();
    Ok(Resolution { maps, betti, hilbert: sr.hilbert_series() })
}
