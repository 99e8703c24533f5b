//! Vectors in graded free modules and the Buchberger engine behind every
//! ideal and module computation.

use std::cmp::Ordering;

use crate::error::{Deadline, Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational, Ring};

/// How components are weighed against monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    /// Term over position: monomial first (after the frame multiplier), then component.
    Top,
    /// Position over term: smaller component index is always larger.
    Pot,
}

/// `a - k * m * b` for sorted term slices.
pub fn sub_mul_slices(a: &[Term], module: &FreeModule, k: &Rational, m: &Monomial, b: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bm = b.first().map(|t| t.m.mul(m));
    while i < a.len() && j < b.len() {
        let cur = bm.unwrap();
        match module.cmp(&a[i].m, a[i].c, &cur, b[j].c) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(Term { m: cur, c: b[j].c, k: -(k * &b[j].k) });
                j += 1;
                bm = b.get(j).map(|t| t.m.mul(m));
            }
            Ordering::Equal => {
                let v = a[i].k.sub_mul(k, &b[j].k);
                if !v.is_zero() {
                    out.push(Term { m: a[i].m, c: a[i].c, k: v });
                }
                i += 1;
                j += 1;
                bm = b.get(j).map(|t| t.m.mul(m));
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while j < b.len() {
        out.push(Term { m: b[j].m.mul(m), c: b[j].c, k: -(k * &b[j].k) });
        j += 1;
    }
    out
}

/// Data attached to a basis element of a free module.
#[derive(Clone, Debug)]
pub struct BasisInfo {
    /// Degree of the basis element (`R(-degree)`).
    pub degree: i64,
    /// Schreyer multiplier: the total leading monomial of the image in the level below.
    pub frame: Monomial,
    /// Component of the level-0 ancestor.
    pub root: u32,
}

/// A graded free module with a module monomial order.
#[derive(Clone, Debug)]
pub struct FreeModule {
    pub nvars: usize,
    pub weights: Vec<u32>,
    pub order: MonomialOrder,
    pub kind: ModuleKind,
    pub basis: Vec<BasisInfo>,
    framed: bool,
}

impl FreeModule {
    /// Free module over `ring` with plain TOP/POT order and the given basis degrees.
    pub fn new(ring: &Ring, degrees: &[i64], kind: ModuleKind) -> Self {
        let basis = degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| BasisInfo { degree: d, frame: Monomial::one(), root: i as u32 })
            .collect();
        FreeModule {
            nvars: ring.arity(),
            weights: ring.weights().to_vec(),
            order: ring.order().clone(),
            kind,
            basis,
            framed: false,
        }
    }

    /// Free module carrying a Schreyer order (TOP on frame-multiplied monomials).
    pub fn schreyer(ring: &Ring, basis: Vec<BasisInfo>) -> Self {
        FreeModule {
            nvars: ring.arity(),
            weights: ring.weights().to_vec(),
            order: ring.order().clone(),
            kind: ModuleKind::Top,
            basis,
            framed: true,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    #[inline]
    pub fn mono_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, &self.weights, self.nvars)
    }

    #[inline]
    pub fn cmp(&self, am: &Monomial, ac: u32, bm: &Monomial, bc: u32) -> Ordering {
        match self.kind {
            ModuleKind::Pot => bc.cmp(&ac).then_with(|| self.mono_cmp(am, bm)),
            ModuleKind::Top if !self.framed => self.mono_cmp(am, bm).then_with(|| bc.cmp(&ac)),
            ModuleKind::Top => {
                let (ia, ib) = (&self.basis[ac as usize], &self.basis[bc as usize]);
                let fa = am.mul(&ia.frame);
                let fb = bm.mul(&ib.frame);
                self.mono_cmp(&fa, &fb).then_with(|| ib.root.cmp(&ia.root)).then_with(|| bc.cmp(&ac))
            }
        }
    }

    #[inline]
    pub fn term_degree(&self, m: &Monomial, c: u32) -> i64 {
        m.weighted_degree(&self.weights) + self.basis[c as usize].degree
    }

    #[inline]
    pub fn mono_degree(&self, m: &Monomial) -> i64 {
        m.weighted_degree(&self.weights)
    }
}

/// One term `k * m * e_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub m: Monomial,
    pub c: u32,
    pub k: Rational,
}

/// A module element, terms strictly descending in the module order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Normalize an unsorted term list.
    pub fn from_terms(module: &FreeModule, mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| module.cmp(&b.m, b.c, &a.m, a.c));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.m == t.m && last.c == t.c {
                    last.k = &last.k + &t.k;
                    continue;
                }
                if last.k.is_zero() {
                    out.pop();
                }
            }
            out.push(t);
        }
        if matches!(out.last(), Some(l) if l.k.is_zero()) {
            out.pop();
        }
        Vector { terms: out }
    }

    /// Embed a polynomial into component `c`.
    pub fn from_poly(module: &FreeModule, p: &Polynomial, c: u32) -> Self {
        let terms = p.terms().iter().map(|(m, k)| Term { m: *m, c, k: k.clone() }).collect();
        if module.kind == ModuleKind::Top && !module.framed || module.kind == ModuleKind::Pot {
            // order restricted to one component is the monomial order: already sorted
            Vector { terms }
        } else {
            Vector::from_terms(module, terms)
        }
    }

    /// Build from one polynomial per component.
    pub fn from_polys(module: &FreeModule, ps: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (c, p) in ps.iter().enumerate() {
            terms.extend(p.terms().iter().map(|(m, k)| Term { m: *m, c: c as u32, k: k.clone() }));
        }
        Vector::from_terms(module, terms)
    }

    /// Split into one polynomial per component.
    pub fn to_polys(&self, ring: &Ring, rank: usize) -> Vec<Polynomial> {
        let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            parts[t.c as usize].push((t.m, t.k.clone()));
        }
        parts.into_iter().map(|ts| Polynomial::from_terms(ring, ts)).collect()
    }

    /// Polynomial of a rank-one vector.
    pub fn to_poly(&self, ring: &Ring) -> Polynomial {
        let ts = self.terms.iter().map(|t| (t.m, t.k.clone())).collect();
        Polynomial::from_terms(ring, ts)
    }

    pub fn scale(&self, k: &Rational) -> Vector {
        if k.is_zero() {
            return Vector::zero();
        }
        Vector { terms: self.terms.iter().map(|t| Term { m: t.m, c: t.c, k: &t.k * k }).collect() }
    }

    pub fn monic(&self) -> Vector {
        match self.lead() {
            Some(t) if !t.k.is_one() => self.scale(&t.k.recip()),
            _ => self.clone(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, k: &Rational) -> Vector {
        Vector { terms: self.terms.iter().map(|t| Term { m: t.m.mul(m), c: t.c, k: &t.k * k }).collect() }
    }

    /// Homogeneous degree of the lead term.
    pub fn degree(&self, module: &FreeModule) -> Option<i64> {
        self.lead().map(|t| module.term_degree(&t.m, t.c))
    }

    pub fn is_homogeneous(&self, module: &FreeModule) -> bool {
        match self.degree(module) {
            None => true,
            Some(d) => self.terms.iter().all(|t| module.term_degree(&t.m, t.c) == d),
        }
    }

    /// `self[start..] - k * m * g` (terms before `start` are dropped).
    pub fn sub_mul_from(&self, start: usize, module: &FreeModule, k: &Rational, m: &Monomial, g: &Vector) -> Vector {
        Vector { terms: sub_mul_slices(&self.terms[start..], module, k, m, &g.terms) }
    }

    pub fn sub_mul(&self, module: &FreeModule, k: &Rational, m: &Monomial, g: &Vector) -> Vector {
        self.sub_mul_from(0, module, k, m, g)
    }

    pub fn add(&self, module: &FreeModule, g: &Vector) -> Vector {
        self.sub_mul(module, &Rational::from_int(-1), &Monomial::one(), g)
    }
}

/// Basis element of a Gröbner basis under construction.
#[derive(Clone, Debug)]
struct Elem {
    v: Vector,
    lm: Monomial,
    comp: u32,
    mask: u32,
    sugar: i64,
    redundant: bool,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    sugar: i64,
}

/// Incremental Buchberger completion with the product and chain criteria.
pub struct Engine<'a> {
    module: &'a FreeModule,
    elems: Vec<Elem>,
    pairs: Vec<Pair>,
    deadline: Deadline,
    product_criterion: bool,
    steps: u64,
    exclude: usize,
}

impl<'a> Engine<'a> {
    pub fn new(module: &'a FreeModule, deadline: Deadline) -> Self {
        Engine {
            module,
            elems: Vec::new(),
            pairs: Vec::new(),
            deadline,
            // the product criterion is only valid for ideals
            product_criterion: module.rank() == 1,
            steps: 0,
            exclude: usize::MAX,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps % 64 == 0 {
            self.deadline.check()?;
        }
        Ok(())
    }

    fn find_reducer(&self, m: &Monomial, c: u32, mask: u32) -> Option<usize> {
        self.elems
            .iter()
            .enumerate()
            .position(|(i, e)| i != self.exclude && e.comp == c && e.mask & !mask == 0 && e.lm.divides(m))
    }

    /// Fully reduce `p` by the current basis; returns the remainder and its sugar.
    pub fn reduce(&mut self, p: Vector, mut sugar: i64) -> Result<(Vector, i64)> {
        let module = self.module;
        let mut p = p;
        let mut start = 0usize;
        let mut done: Vec<Term> = Vec::new();
        while start < p.terms.len() {
            let t = &p.terms[start];
            let mask = t.m.support_mask();
            match self.find_reducer(&t.m, t.c, mask) {
                Some(r) => {
                    self.tick()?;
                    let e = &self.elems[r];
                    let q = e.lm.quotient_of(&t.m).expect("divisible");
                    sugar = sugar.max(module.mono_degree(&q) + e.sugar);
                    let k = t.k.clone();
                    p.terms = sub_mul_slices(&p.terms[start + 1..], module, &k, &q, &e.v.terms[1..]);
                    start = 0;
                }
                None => {
                    done.push(p.terms[start].clone());
                    start += 1;
                    // compact: drop the consumed prefix lazily
                    if start > 64 && start * 2 > p.terms.len() {
                        p.terms.drain(..start);
                        start = 0;
                    }
                }
            }
        }
        Ok((Vector { terms: done }, sugar))
    }

    /// Add a nonzero, already reduced element and update the pair set.
    fn add_element(&mut self, v: Vector, sugar: i64) {
        let v = v.monic();
        let lead = v.lead().expect("nonzero").clone();
        let t = self.elems.len();
        let lm = lead.m;
        let comp = lead.c;
        self.elems.push(Elem { v, lm, comp, mask: lm.support_mask(), sugar, redundant: false });

        // chain criterion on old pairs
        let elems = &self.elems;
        self.pairs.retain(|p| {
            !(p.comp == comp
                && lm.divides(&p.lcm)
                && elems[p.i].lm.lcm(&lm) != p.lcm
                && elems[p.j].lm.lcm(&lm) != p.lcm)
        });

        // candidate new pairs
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for (i, e) in self.elems[..t].iter().enumerate() {
            if e.redundant || e.comp != comp {
                continue;
            }
            let coprime = self.product_criterion && e.lm.is_coprime(&lm);
            cands.push((i, e.lm.lcm(&lm), coprime));
        }
        // Gebauer–Möller: keep a candidate if coprime or no other candidate's lcm divides it
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for idx in 0..cands.len() {
            let (i, l, cp) = cands[idx];
            let dominated = !cp
                && (cands[idx + 1..].iter().any(|(_, l2, _)| l2.divides(&l))
                    || kept.iter().any(|(_, l2, _)| l2.divides(&l)));
            if !dominated {
                kept.push((i, l, cp));
            }
        }
        for (i, l, cp) in kept {
            if cp {
                continue;
            }
            let e = &self.elems[i];
            let su = (self.module.mono_degree(&l) - self.module.mono_degree(&e.lm) + e.sugar)
                .max(self.module.mono_degree(&l) - self.module.mono_degree(&lm) + sugar);
            self.pairs.push(Pair { i, j: t, lcm: l, comp, sugar: su });
        }
        for e in self.elems[..t].iter_mut() {
            if !e.redundant && e.comp == comp && lm.divides(&e.lm) {
                e.redundant = true;
            }
        }
    }

    /// Reduce `v` and add it if nonzero; returns whether it was added.
    pub fn insert(&mut self, v: Vector) -> Result<bool> {
        let sugar = v.terms.iter().map(|t| self.module.term_degree(&t.m, t.c)).max().unwrap_or(0);
        let (r, s) = self.reduce(v, sugar)?;
        if r.is_zero() {
            return Ok(false);
        }
        self.add_element(r, s);
        Ok(true)
    }

    fn pick_pair(&mut self, max_sugar: Option<i64>) -> Option<Pair> {
        let module = self.module;
        let mut best: Option<usize> = None;
        for (idx, p) in self.pairs.iter().enumerate() {
            if matches!(max_sugar, Some(ms) if p.sugar > ms) {
                continue;
            }
            best = match best {
                None => Some(idx),
                Some(b) => {
                    let q = &self.pairs[b];
                    let better = p.sugar < q.sugar
                        || (p.sugar == q.sugar && module.cmp(&p.lcm, p.comp, &q.lcm, q.comp) == Ordering::Less);
                    if better {
                        Some(idx)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best.map(|b| self.pairs.swap_remove(b))
    }

    /// Process pairs (all of them, or those of sugar ≤ `max_sugar`).
    pub fn run(&mut self, max_sugar: Option<i64>) -> Result<()> {
        while let Some(p) = self.pick_pair(max_sugar) {
            self.deadline.check()?;
            let (ei, ej) = (&self.elems[p.i], &self.elems[p.j]);
            let qi = ei.lm.quotient_of(&p.lcm).expect("lcm");
            let qj = ej.lm.quotient_of(&p.lcm).expect("lcm");
            let one = Rational::one();
            let a: Vec<Term> = ei.v.terms[1..].iter().map(|t| Term { m: t.m.mul(&qi), c: t.c, k: t.k.clone() }).collect();
            let s = Vector { terms: sub_mul_slices(&a, self.module, &one, &qj, &ej.v.terms[1..]) };
            let (r, su) = self.reduce(s, p.sugar)?;
            if !r.is_zero() {
                self.add_element(r, su);
            }
        }
        Ok(())
    }

    /// Current non-redundant elements (not interreduced).
    pub fn basis(&self) -> impl Iterator<Item = &Vector> {
        self.elems.iter().filter(|e| !e.redundant).map(|e| &e.v)
    }

    /// Finish: reduced basis, monic, sorted by (degree, leading term).
    pub fn finish(self) -> Result<Vec<Vector>> {
        let module = self.module;
        let keep: Vec<Elem> = self.elems.into_iter().filter(|e| !e.redundant).collect();
        // tail-reduce each element against the others
        let mut out: Vec<Vector> = Vec::with_capacity(keep.len());
        let mut tail_engine = Engine::new(module, self.deadline);
        tail_engine.elems = keep.clone();
        for (idx, e) in keep.iter().enumerate() {
            tail_engine.exclude = idx;
            let lead = e.v.terms[0].clone();
            let rest = Vector { terms: e.v.terms[1..].to_vec() };
            let (r, _) = tail_engine.reduce(rest, 0)?;
            let mut terms = vec![lead];
            terms.extend(r.terms);
            out.push(Vector { terms });
        }
        out.sort_by(|a, b| {
            let (ta, tb) = (&a.terms[0], &b.terms[0]);
            module
                .term_degree(&ta.m, ta.c)
                .cmp(&module.term_degree(&tb.m, tb.c))
                .then_with(|| module.cmp(&ta.m, ta.c, &tb.m, tb.c))
        });
        Ok(out)
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn groebner(module: &FreeModule, gens: Vec<Vector>, deadline: Deadline) -> Result<Vec<Vector>> {
    let mut gens: Vec<Vector> = gens.into_iter().filter(|v| !v.is_zero()).collect();
    gens.sort_by_key(|v| v.terms.iter().map(|t| module.term_degree(&t.m, t.c)).max().unwrap_or(0));
    let mut eng = Engine::new(module, deadline);
    for g in gens {
        eng.insert(g)?;
    }
    eng.run(None)?;
    eng.finish()
}

/// Indices of a minimal generating subset of homogeneous generators.
pub fn minimal_generator_indices(module: &FreeModule, gens: &[Vector], deadline: Deadline) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect();
    for &i in &order {
        if !gens[i].is_homogeneous(module) {
            return Err(Error::NonHomogeneous);
        }
    }
    order.sort_by_key(|&i| gens[i].degree(module).unwrap());
    let mut eng = Engine::new(module, deadline);
    let mut kept = Vec::new();
    let mut pos = 0;
    while pos < order.len() {
        let d = gens[order[pos]].degree(module).unwrap();
        eng.run(Some(d))?;
        while pos < order.len() && gens[order[pos]].degree(module).unwrap() == d {
            let i = order[pos];
            if eng.insert(gens[i].clone())? {
                kept.push(i);
            }
            pos += 1;
        }
    }
    kept.sort_unstable();
    Ok(kept)
}

/// Full normal form of `v` with respect to `basis` (any list, not necessarily a Gröbner basis).
pub fn normal_form(module: &FreeModule, v: Vector, basis: &[Vector]) -> Vector {
    let mut eng = Engine::new(module, Deadline::none());
    for b in basis.iter().filter(|b| !b.is_zero()) {
        let b = b.monic();
        let lead = b.terms[0].clone();
        eng.elems.push(Elem { lm: lead.m, comp: lead.c, mask: lead.m.support_mask(), sugar: 0, redundant: false, v: b });
    }
    eng.reduce(v, 0).expect("no deadline").0
}

/// Buchberger criterion check: every S-vector of `basis` reduces to zero.
pub fn is_groebner(module: &FreeModule, basis: &[Vector]) -> bool {
    let monic: Vec<Vector> = basis.iter().filter(|b| !b.is_zero()).map(|b| b.monic()).collect();
    for i in 0..monic.len() {
        for j in i + 1..monic.len() {
            let (a, b) = (&monic[i].terms[0], &monic[j].terms[0]);
            if a.c != b.c {
                continue;
            }
            let l = a.m.lcm(&b.m);
            let s = monic[i]
                .mul_term(&a.m.quotient_of(&l).unwrap(), &Rational::one())
                .sub_mul(module, &Rational::one(), &b.m.quotient_of(&l).unwrap(), &monic[j]);
            if !normal_form(module, s, &monic).is_zero() {
                return false;
            }
        }
    }
    true
}
