//! Symmetric algebra, Rees algebra and special fiber of a homogeneous ideal.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Deadline, Error, Result};
use crate::groebner::{eliminate_variables, groebner_basis, saturate, DimensionReport, Ideal};
use crate::homalg::{quotient_invariants, syzygies_of_row, ModuleInvariants};
use crate::poly::{rational_rank, GradedMatrix, Monomial, MonomialOrder, Polynomial, Rational, Ring, RingDescriptor};

/// Seed for the randomized rank lower bound.
const RANK_SEED: u64 = 0x5eed_0f_5ca1e;

/// Rings, generators and syzygies of an ideal whose blowup algebras are studied.
#[derive(Clone, Debug)]
pub struct BlowupContext {
    base: Ring,
    ext: Ring,
    fiber_ring: Ring,
    gens: Vec<Polynomial>,
    phi: GradedMatrix,
}

/// Verdicts on the blowup algebras of one ideal.
#[derive(Clone, Debug, Serialize)]
pub struct BlowupReport {
    pub sym_ideal: Vec<Polynomial>,
    pub rees_ideal: Vec<Polynomial>,
    pub fiber_ideal: Vec<Polynomial>,
    pub analytic_spread: usize,
    pub linear_type: bool,
    pub rees_cm: bool,
    pub rees_depth: usize,
    pub rees_dimension: usize,
    pub fiber_cm: bool,
    /// `None` when the fiber is not Cohen–Macaulay (reported as "unknown").
    pub reduction_number: Option<i64>,
    pub rees_complete_intersection: bool,
}

fn fresh_t_names(base: &Ring, count: usize) -> Vec<String> {
    let mut prefix = "T".to_string();
    while (1..=count).any(|i| base.index_of(&format!("{prefix}{i}")).is_some()) {
        prefix.push('T');
    }
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

impl BlowupContext {
    /// Context for the ideal generated by `gens` (homogeneous, nonzero).
    pub fn new(gens: Vec<Polynomial>, deadline: Deadline) -> Result<Self> {
        gens.first().ok_or(Error::ZeroInput)?;
        if gens.iter().any(|g| g.is_zero() || !g.is_homogeneous()) {
            return Err(Error::NonHomogeneous);
        }
        let phi = syzygies_of_row(&gens, deadline)?;
        Self::with_syzygies(gens, phi)
    }

    /// Context with a caller-supplied syzygy matrix (must satisfy row·φ = 0).
    pub fn with_syzygies(gens: Vec<Polynomial>, phi: GradedMatrix) -> Result<Self> {
        let base = gens.first().ok_or(Error::ZeroInput)?.ring().clone();
        if !phi.row_times(&gens).iter().all(Polynomial::is_zero) {
            return Err(Error::InvalidArgument("matrix columns are not syzygies of the generators".into()));
        }
        let tnames = fresh_t_names(&base, gens.len());
        let mut names: Vec<String> = base.names().to_vec();
        names.extend(tnames.iter().cloned());
        let ext = RingDescriptor::new(&names, MonomialOrder::Grevlex)?;
        let fiber_ring = RingDescriptor::new(&tnames, MonomialOrder::Grevlex)?;
        Ok(BlowupContext { base, ext, fiber_ring, gens, phi })
    }

    pub fn base_ring(&self) -> &Ring {
        &self.base
    }

    /// Base variables followed by T₁..T_ν, standard grading.
    pub fn extended_ring(&self) -> &Ring {
        &self.ext
    }

    pub fn fiber_ring(&self) -> &Ring {
        &self.fiber_ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn syzygy_matrix(&self) -> &GradedMatrix {
        &self.phi
    }

    fn n(&self) -> usize {
        self.base.arity()
    }

    fn nu(&self) -> usize {
        self.gens.len()
    }

    /// T_i as an element of the extended ring.
    pub fn t_var(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.ext, self.n() + i)
    }

    fn to_ext(&self, p: &Polynomial) -> Polynomial {
        let map: Vec<usize> = (0..self.n()).collect();
        p.embed(&self.ext, &map)
    }

    /// Bidegree (x-degree, T-degree) of a bihomogeneous element of the extended ring.
    pub fn bidegree(&self, p: &Polynomial) -> Option<(i64, i64)> {
        let n = self.n();
        let bi = |m: &Monomial| {
            let dx: i64 = (0..n).map(|i| m.exp(i) as i64).sum();
            let dt: i64 = (n..n + self.nu()).map(|i| m.exp(i) as i64).sum();
            (dx, dt)
        };
        let first = bi(&p.terms().first()?.0);
        p.terms().iter().all(|(m, _)| bi(m) == first).then_some(first)
    }

    /// Entries of (T₁ … T_ν)·φ.
    pub fn symmetric_ideal(&self) -> Result<Ideal> {
        let tv: Vec<Polynomial> = (0..self.nu()).map(|i| self.t_var(i)).collect();
        let mut out = Vec::with_capacity(self.phi.ncols());
        for j in 0..self.phi.ncols() {
            let mut acc = Polynomial::zero(&self.ext);
            for (i, t) in tv.iter().enumerate() {
                let e = self.phi.get(i, j);
                if !e.is_zero() {
                    acc = &acc + &(t * &self.to_ext(e));
                }
            }
            out.push(acc);
        }
        Ideal::new(&self.ext, out)
    }

    /// Kernel of R[T] → R[t], T_i ↦ t·g_i, by eliminating t from (T_i − t·g_i).
    pub fn rees_ideal(&self, deadline: Deadline) -> Result<Ideal> {
        let n = self.n();
        let nu = self.nu();
        let mut names: Vec<String> = self.ext.names().to_vec();
        let mut aux = "_t".to_string();
        while names.contains(&aux) {
            aux.push('_');
        }
        names.push(aux);
        let mut weights = vec![1u32; n];
        for g in &self.gens {
            let d = g.homogeneous_degree().ok_or(Error::NonHomogeneous)?;
            weights.push(u32::try_from(d + 1).map_err(|_| Error::InvalidArgument("negative degree".into()))?);
        }
        weights.push(1);
        let ring = RingDescriptor::with_weights(&names, MonomialOrder::Grevlex, weights)?;
        let id: Vec<usize> = (0..n).collect();
        let t = Polynomial::var(&ring, n + nu);
        let gens: Vec<Polynomial> = self
            .gens
            .iter()
            .enumerate()
            .map(|(i, g)| &Polynomial::var(&ring, n + i) - &(&t * &g.embed(&ring, &id)))
            .collect();
        let elim = eliminate_variables(&Ideal::new(&ring, gens)?, &[n + nu], deadline)?;
        let map: Vec<usize> = (0..n + nu).collect();
        let back: Vec<Polynomial> = elim.generators().iter().map(|p| p.embed(&self.ext, &map)).collect();
        let gb = groebner_basis(&self.ext, &back, deadline)?;
        Ideal::new(&self.ext, gb)
    }

    /// Kernel of k[T] → k[g], T_i ↦ g_i, by eliminating the base variables.
    pub fn fiber_ideal(&self, deadline: Deadline) -> Result<Ideal> {
        let d = self.common_degree()?;
        let n = self.n();
        let nu = self.nu();
        let mut weights = vec![1u32; n];
        weights.extend(std::iter::repeat(d as u32).take(nu));
        let ring = RingDescriptor::with_weights(self.ext.names(), MonomialOrder::Grevlex, weights)?;
        let id: Vec<usize> = (0..n).collect();
        let gens: Vec<Polynomial> = self
            .gens
            .iter()
            .enumerate()
            .map(|(i, g)| &Polynomial::var(&ring, n + i) - &g.embed(&ring, &id))
            .collect();
        let elim = eliminate_variables(&Ideal::new(&ring, gens)?, &id, deadline)?;
        let to_fiber: Vec<usize> = (0..n + nu).map(|i| i.saturating_sub(n)).collect();
        let out: Vec<Polynomial> = elim.generators().iter().map(|p| p.embed(&self.fiber_ring, &to_fiber)).collect();
        let gb = groebner_basis(&self.fiber_ring, &out, deadline)?;
        Ideal::new(&self.fiber_ring, gb)
    }

    /// Fiber ideal read off the Rees ideal: its generators of x-degree 0.
    pub fn fiber_from_rees(&self, rees: &Ideal, deadline: Deadline) -> Result<Ideal> {
        let n = self.n();
        let to_fiber: Vec<usize> = (0..n + self.nu()).map(|i| i.saturating_sub(n)).collect();
        let base_mask: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
        let gb = rees.groebner_basis(deadline)?;
        let out: Vec<Polynomial> = gb
            .iter()
            .filter(|p| p.terms().iter().all(|(m, _)| m.support_mask() & base_mask == 0))
            .map(|p| p.embed(&self.fiber_ring, &to_fiber))
            .collect();
        let gb = groebner_basis(&self.fiber_ring, &out, deadline)?;
        Ideal::new(&self.fiber_ring, gb)
    }

    fn common_degree(&self) -> Result<i64> {
        let d = self.gens[0].homogeneous_degree().ok_or(Error::NonHomogeneous)?;
        if self.gens.iter().any(|g| g.homogeneous_degree() != Some(d)) {
            return Err(Error::InvalidArgument("generators of mixed degrees".into()));
        }
        Ok(d)
    }

    /// Jacobian matrix Θ of the generators (ν × n).
    pub fn jacobian_matrix(&self) -> Result<GradedMatrix> {
        let d = self.common_degree()?;
        let rows: Vec<Vec<Polynomial>> =
            self.gens.iter().map(|g| (0..self.n()).map(|i| g.partial_derivative(i)).collect()).collect();
        GradedMatrix::new(&self.base, rows, vec![0; self.nu()], vec![d - 1; self.n()])
    }

    /// Rank of Θ over the fraction field: randomized lower bound, exact confirmation.
    pub fn jacobian_rank(&self) -> Result<usize> {
        let theta = self.jacobian_matrix()?;
        let mut rng = ChaCha8Rng::seed_from_u64(RANK_SEED);
        let mut lower = 0;
        for _ in 0..3 {
            let pt: Vec<Rational> = (0..self.n()).map(|_| Rational::from_int(rng.random_range(-50..=50))).collect();
            lower = lower.max(rational_rank(theta.evaluate(&pt)));
        }
        let max_rank = self.nu().min(self.n());
        if lower == max_rank {
            return Ok(lower);
        }
        let exact = theta.rank();
        if exact < lower {
            return Err(Error::Internal("exact rank below a specialization rank".into()));
        }
        Ok(exact)
    }

    /// Both analytic-spread computations; they must agree.
    pub fn analytic_spread(&self, fiber: &Ideal, deadline: Deadline) -> Result<usize> {
        let a = fiber.dimension(deadline)?.krull_dimension;
        let b = self.jacobian_rank()?;
        if a != b {
            return Err(Error::Internal(format!("analytic spread mismatch: fiber dimension {a}, Jacobian rank {b}")));
        }
        Ok(a)
    }

    /// Fitting-ideal heights ht I_{ν−j}(φ) for j = 1..s−1.
    pub fn fitting_heights(&self, s: usize, deadline: Deadline) -> Result<Vec<usize>> {
        let nu = self.nu();
        let mut out = Vec::new();
        for j in 1..s {
            if j > nu {
                out.push(self.n());
                continue;
            }
            let minors = self.phi.minors(nu - j);
            let ideal = Ideal::new(&self.base, minors)?;
            out.push(if ideal.is_zero_ideal() { 0 } else { ideal.height(deadline)? });
        }
        Ok(out)
    }

    /// G_s: ht I_{ν−j}(φ) ≥ j + 1 for j = 1..s−1.
    pub fn g_condition(&self, s: usize, deadline: Deadline) -> Result<bool> {
        Ok(self.fitting_heights(s, deadline)?.iter().enumerate().all(|(k, &h)| h >= k + 2))
    }

    /// Extend an ideal of the base ring to the extended ring.
    pub fn extend_ideal(&self, i: &Ideal) -> Result<Ideal> {
        Ideal::new(&self.ext, i.generators().iter().map(|p| self.to_ext(p)).collect())
    }

    /// Rees ideal by saturating the symmetric ideal with an ideal of the base ring.
    pub fn rees_via_saturation(&self, by: &Ideal, deadline: Deadline) -> Result<Ideal> {
        let sym = self.symmetric_ideal()?;
        let s = saturate(&sym, &self.extend_ideal(by)?, deadline)?;
        let gb = s.groebner_basis(deadline)?.to_vec();
        Ideal::new(&self.ext, gb)
    }

    /// Every generator vanishes under T_i ↦ t·g_i.
    pub fn vanishes_on_rees_map(&self, p: &Polynomial) -> Result<bool> {
        let n = self.n();
        let nu = self.nu();
        let mut names: Vec<String> = self.base.names().to_vec();
        names.push("_t".into());
        let ring = RingDescriptor::new(&names, MonomialOrder::Grevlex)?;
        let id: Vec<usize> = (0..n).collect();
        let t = Polynomial::var(&ring, n);
        let mut images: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&ring, i)).collect();
        for g in &self.gens {
            images.push(&t * &g.embed(&ring, &id));
        }
        debug_assert_eq!(images.len(), n + nu);
        Ok(p.substitute(&images)?.is_zero())
    }

    /// Full analysis of the blowup algebras.
    pub fn report(&self, deadline: Deadline) -> Result<BlowupReport> {
        let sym = self.symmetric_ideal()?;
        let rees = self.rees_ideal(deadline)?;
        let fiber = self.fiber_from_rees(&rees, deadline)?;
        let spread = self.analytic_spread(&fiber, deadline)?;
        let linear_type = sym.equals(&rees, deadline)?;
        let rees_inv = quotient_invariants(&rees, deadline)?;
        let rees_dim: DimensionReport = rees.dimension(deadline)?;
        let rees_cm = rees_inv.projective_dimension() == rees_dim.height;
        let (fiber_cm, reduction_number) = fiber_verdict(&fiber, deadline)?;
        let mingens = rees.minimal_generators(deadline)?;
        Ok(BlowupReport {
            sym_ideal: sym.generators().to_vec(),
            rees_ideal: rees.groebner_basis(deadline)?.to_vec(),
            fiber_ideal: fiber.groebner_basis(deadline)?.to_vec(),
            analytic_spread: spread,
            linear_type,
            rees_cm,
            rees_depth: rees_inv.depth(),
            rees_dimension: rees_dim.krull_dimension,
            fiber_cm,
            reduction_number,
            rees_complete_intersection: mingens.len() == rees_dim.height,
        })
    }
}

/// (fiber CM, reduction number if CM).
pub fn fiber_verdict(fiber: &Ideal, deadline: Deadline) -> Result<(bool, Option<i64>)> {
    if fiber.is_zero_ideal() {
        return Ok((true, Some(0)));
    }
    let inv: ModuleInvariants = quotient_invariants(fiber, deadline)?;
    let cm = inv.projective_dimension() == fiber.height(deadline)?;
    Ok((cm, if cm { inv.regularity() } else { None }))
}

/// Rees algebra CM test: pd(S/𝒦) = ht 𝒦.
pub fn rees_is_cm(rees: &Ideal, deadline: Deadline) -> Result<bool> {
    Ok(quotient_invariants(rees, deadline)?.projective_dimension() == rees.height(deadline)?)
}

/// Number of minimal generators equals the height.
pub fn complete_intersection_check(ideal: &Ideal, deadline: Deadline) -> Result<bool> {
    Ok(ideal.minimal_generators(deadline)?.len() == ideal.height(deadline)?)
}
