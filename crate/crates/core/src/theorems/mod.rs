//! One checker per lemma, corollary and theorem about how `λ₂` and `ρ(𝓛)`
//! respond to the three graph operations.
//!
//! A checker evaluates the eigenfunction hypothesis on every basis function
//! of the relevant eigenspace, computes both sides of the claimed inequality
//! and folds everything into a [`Verdict`]. When the hypothesis fails the
//! verdict passes vacuously but still records both sides, which is what the
//! case tallies in [`crate::search`] are built from.

mod instance;
pub mod replay;
mod verdict;

pub use instance::{Instance, InstanceKind};
pub use replay::{replay_proof, ProofStep, ProofTrace, StepKind};
pub use verdict::{
    BasisReport, Direction, Judgement, Operation, PreconditionState, Relation, TheoremId, Tolerances, Verdict,
};

use std::borrow::Cow;

use crate::eigen::dot;
use crate::error::{Error, Result};
use crate::graph::{star, Graph};
use crate::perturb::{identify, subdivide_edge, subdivision_graph, transfer_edges};
use crate::spectral::{
    canonical_sign, check_neighbor_sum_zero, spectrum, sup_norm, HarmonicEigenfunction, Spectrum, Which, HARMONIC_TOL,
};

/// A connected base graph with its spectrum and both harmonic bases.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub spectrum: Spectrum,
    pub fiedler: Vec<HarmonicEigenfunction>,
    pub top: Vec<HarmonicEigenfunction>,
}

impl Prepared {
    pub fn new(g: &Graph) -> Result<Self> {
        if g.order() < 2 {
            return Err(Error::TooSmall { need: 2, have: g.order() });
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Self::from_spectrum(spectrum(g)?)
    }

    pub fn from_spectrum(spectrum: Spectrum) -> Result<Self> {
        let fiedler = spectrum.harmonic_eigenfunctions(Which::SecondSmallest)?;
        let top = spectrum.harmonic_eigenfunctions(Which::Largest)?;
        Ok(Prepared { spectrum, fiedler, top })
    }

    pub fn graph(&self) -> &Graph {
        self.spectrum.graph()
    }

    pub fn lambda2(&self) -> f64 {
        self.spectrum.values()[1]
    }

    pub fn rho(&self) -> f64 {
        self.spectrum.rho()
    }

    pub fn value(&self, which: Which) -> f64 {
        match which {
            Which::SecondSmallest => self.lambda2(),
            Which::Largest => self.rho(),
        }
    }

    pub fn basis(&self, which: Which) -> &[HarmonicEigenfunction] {
        match which {
            Which::SecondSmallest => &self.fiedler,
            Which::Largest => &self.top,
        }
    }

    /// Same spectrum with every harmonic eigenfunction replaced by `−f`.
    pub fn negated(&self) -> Self {
        Prepared {
            spectrum: self.spectrum.clone(),
            fiedler: self.fiedler.iter().map(HarmonicEigenfunction::negated).collect(),
            top: self.top.iter().map(HarmonicEigenfunction::negated).collect(),
        }
    }
}

/// Vertex-value predicates used as theorem hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Pred {
    /// `f(u) f(v) ≠ 0`
    BothNonzero,
    /// `f(u) f(v) ≥ 0`
    ProductNonneg,
    /// `f(u) f(v) > 0`, beyond the vertex-zero threshold
    ProductPositive,
    /// `f(u) = 0`
    ZeroAt,
    /// `f(u) ≠ 0`
    NonzeroAt,
    /// `f(u) = f(v)`
    Equal,
}

impl Pred {
    pub(crate) fn holds(self, f: &[f64], u: usize, v: usize, tol: &Tolerances) -> bool {
        match self {
            Pred::BothNonzero => f[u].abs() > tol.vertex_zero && f[v].abs() > tol.vertex_zero,
            Pred::ProductNonneg => f[u] * f[v] >= -tol.sign_product,
            Pred::ProductPositive => f[u] * f[v] > tol.vertex_zero,
            Pred::ZeroAt => f[u].abs() <= tol.vertex_zero,
            Pred::NonzeroAt => f[u].abs() > tol.vertex_zero,
            Pred::Equal => (f[u] - f[v]).abs() <= tol.equal_values * sup_norm(f),
        }
    }

    /// The linear functional whose kernel the adapted basis is built around.
    fn functional(self, f: &[f64], u: usize, v: usize) -> f64 {
        match self {
            Pred::Equal => f[u] - f[v],
            _ => f[u],
        }
    }

    /// Rotates `basis` so that all functions but at most one lie in the kernel
    /// of [`Pred::functional`]. Predicate outcomes then no longer depend on
    /// which orthonormal basis the eigensolver returned.
    pub(crate) fn adapt(self, basis: &[HarmonicEigenfunction], u: usize, v: usize) -> Cow<'_, [HarmonicEigenfunction]> {
        adapt_basis(basis, |f| self.functional(f, u, v))
    }

    fn single_vertex(self) -> bool {
        matches!(self, Pred::ZeroAt | Pred::NonzeroAt)
    }

    pub(crate) fn state(self, basis: &[HarmonicEigenfunction], u: usize, v: usize, tol: &Tolerances) -> PreconditionState {
        PreconditionState::from_basis(basis.iter().map(|h| self.holds(&h.f, u, v, tol)))
    }

    pub(crate) fn all(self, basis: &[HarmonicEigenfunction], u: usize, v: usize, tol: &Tolerances) -> bool {
        basis.iter().all(|h| self.holds(&h.f, u, v, tol))
    }

    fn reports(self, basis: &[HarmonicEigenfunction], u: usize, v: usize, tol: &Tolerances) -> Vec<BasisReport> {
        basis
            .iter()
            .enumerate()
            .map(|(index, h)| BasisReport {
                index,
                values: if self.single_vertex() { vec![h.f[u]] } else { vec![h.f[u], h.f[v]] },
                satisfied: self.holds(&h.f, u, v, tol),
            })
            .collect()
    }
}

pub(crate) fn adapt_basis(
    basis: &[HarmonicEigenfunction],
    phi: impl Fn(&[f64]) -> f64,
) -> Cow<'_, [HarmonicEigenfunction]> {
    let k = basis.len();
    if k < 2 {
        return Cow::Borrowed(basis);
    }
    let mut a: Vec<f64> = basis.iter().map(|h| phi(&h.f)).collect();
    let norm = dot(&a, &a).sqrt();
    if norm == 0.0 {
        return Cow::Borrowed(basis);
    }
    a.iter_mut().for_each(|x| *x /= norm);
    let mut coeffs: Vec<Vec<f64>> = Vec::with_capacity(k);
    for i in 0..k {
        if coeffs.len() == k - 1 {
            break;
        }
        let mut c: Vec<f64> = (0..k).map(|j| f64::from(u8::from(i == j)) - a[i] * a[j]).collect();
        for q in &coeffs {
            let d = dot(&c, q);
            c.iter_mut().zip(q).for_each(|(x, y)| *x -= d * y);
        }
        let nc = dot(&c, &c).sqrt();
        if nc > 1e-6 {
            c.iter_mut().for_each(|x| *x /= nc);
            coeffs.push(c);
        }
    }
    coeffs.push(a);
    let adapted = coeffs
        .iter()
        .map(|c| {
            let n = basis[0].f.len();
            let mut f = vec![0.0; n];
            for (ci, h) in c.iter().zip(basis) {
                f.iter_mut().zip(&h.f).for_each(|(x, y)| *x += ci * y);
            }
            canonical_sign(&mut f);
            HarmonicEigenfunction { f, lambda: basis[0].lambda, graph: basis[0].graph.clone() }
        })
        .collect();
    Cow::Owned(adapted)
}

// Decision kernels. They take the prepared base graph plus the eigenvalue of
// the perturbed graph, so exhaustive scans can feed cached values.

pub(crate) fn judge_subdivide_lambda2(base: &Prepared, u: usize, v: usize, after: f64, tol: &Tolerances) -> Judgement {
    let basis = Pred::BothNonzero.adapt(&base.fiedler, u, v);
    let strict = Pred::BothNonzero.all(&basis, u, v, tol);
    Judgement::new(PreconditionState::Unconditional, base.lambda2(), after, Relation::Ge, strict, tol)
}

pub(crate) fn judge_subdivide_rho(base: &Prepared, u: usize, v: usize, after: f64, tol: &Tolerances) -> Judgement {
    let basis = Pred::ProductNonneg.adapt(&base.top, u, v);
    let pre = Pred::ProductNonneg.state(&basis, u, v, tol);
    let strict = pre == PreconditionState::Holds && Pred::ProductPositive.all(&basis, u, v, tol);
    Judgement::new(pre, base.rho(), after, Relation::Le, strict, tol)
}

/// `g2_volume` is `Vol(G₂)`; a single-vertex `G₂` leaves `G₁` unchanged, so
/// strictness is only expected when it is positive.
pub(crate) fn judge_identify_lambda2(base1: &Prepared, u: usize, g2_volume: usize, glued: f64, tol: &Tolerances) -> Judgement {
    let strict = g2_volume > 0 && Pred::NonzeroAt.all(&Pred::NonzeroAt.adapt(&base1.fiedler, u, u), u, u, tol);
    Judgement::new(PreconditionState::Unconditional, base1.lambda2(), glued, Relation::Ge, strict, tol)
}

pub(crate) fn judge_identify_rho(base1: &Prepared, u: usize, glued: f64, tol: &Tolerances) -> Judgement {
    let pre = Pred::ZeroAt.state(&Pred::ZeroAt.adapt(&base1.top, u, u), u, u, tol);
    Judgement::new(pre, base1.rho(), glued, Relation::Le, false, tol)
}

pub(crate) fn transfer_state(base: &Prepared, which: Which, u: usize, v: usize, tol: &Tolerances) -> PreconditionState {
    Pred::Equal.state(&Pred::Equal.adapt(base.basis(which), u, v), u, v, tol)
}

pub(crate) fn judge_transfer(base: &Prepared, which: Which, u: usize, v: usize, after: f64, tol: &Tolerances) -> Judgement {
    judge_transfer_state(transfer_state(base, which, u, v, tol), base, which, after, tol)
}

pub(crate) fn judge_transfer_state(
    pre: PreconditionState,
    base: &Prepared,
    which: Which,
    after: f64,
    tol: &Tolerances,
) -> Judgement {
    let relation = match which {
        Which::SecondSmallest => Relation::Ge,
        Which::Largest => Relation::Le,
    };
    Judgement::new(pre, base.value(which), after, relation, false, tol)
}

/// Runs checkers with a fixed set of tolerances.
#[derive(Debug, Clone, Copy, Default)]
pub struct Checker {
    pub tol: Tolerances,
}

fn connected_base(g: &Graph) -> Result<Prepared> {
    Prepared::new(g)
}

fn value_of(g: &Graph, which: Which) -> Result<f64> {
    let s = spectrum(g)?;
    match which {
        Which::SecondSmallest => s.lambda2(),
        Which::Largest => Ok(s.rho()),
    }
}

impl Checker {
    pub fn new(tol: Tolerances) -> Self {
        Checker { tol }
    }

    fn verdict(&self, theorem: TheoremId, instance: &Instance, j: Judgement, basis: Vec<BasisReport>) -> Verdict {
        self.verdict_tol(theorem, instance, j, basis, self.tol.eigen)
    }

    fn verdict_tol(
        &self,
        theorem: TheoremId,
        instance: &Instance,
        j: Judgement,
        basis: Vec<BasisReport>,
        tolerance: f64,
    ) -> Verdict {
        Verdict {
            theorem,
            precondition: j.precondition,
            lhs: j.lhs,
            rhs: j.rhs,
            relation: j.relation,
            strict_expected: j.strict_expected,
            pass: j.pass,
            tolerance,
            graph6: instance.primary_graph6(),
            params: instance.params(),
            basis,
        }
    }

    /// Dispatches on the theorem id; the instance must be of the matching kind.
    pub fn check(&self, theorem: TheoremId, instance: &Instance) -> Result<Verdict> {
        if theorem.instance_kind() != instance.kind() {
            return Err(Error::Precondition(format!(
                "{theorem} expects a {:?} instance, got {:?}",
                theorem.instance_kind(),
                instance.kind()
            )));
        }
        match (theorem, instance) {
            (TheoremId::L2_4, Instance::Graph(g)) => self.check_lemma_2_4(g),
            (TheoremId::C2_2, Instance::Graph(g)) => self.check_cor_2_2(g),
            (TheoremId::C2_3, Instance::Star(n)) => self.check_cor_2_3(*n),
            (TheoremId::T3_1, Instance::Edge { g, u, v }) => self.check_thm_3_1(g, *u, *v),
            (TheoremId::T4_1, Instance::Edge { g, u, v }) => self.check_thm_4_1(g, *u, *v),
            (TheoremId::C3_2, Instance::Subdivision { g, edges }) => self.check_cor_3_2(g, edges),
            (TheoremId::T3_3, Instance::Identify { g1, u, g2, v }) => self.check_thm_3_3(g1, *u, g2, *v),
            (TheoremId::C3_4, Instance::Identify { g1, u, g2, v }) => self.check_cor_3_4(g1, *u, g2, *v),
            (TheoremId::T4_2, Instance::Identify { g1, u, g2, v }) => self.check_thm_4_2(g1, *u, g2, *v),
            (TheoremId::C3_5, Instance::Subtree { t, vertices }) => self.check_cor_3_5(t, vertices),
            (TheoremId::T3_6, Instance::Transfer { g, u, v, targets }) => self.check_thm_3_6(g, *u, *v, targets),
            (TheoremId::T4_3, Instance::Transfer { g, u, v, targets }) => self.check_thm_4_3(g, *u, *v, targets),
            _ => unreachable!("instance kind already matched"),
        }
    }

    /// `λ₂ ≤ 1` for a connected graph that is not complete.
    pub fn check_lemma_2_4(&self, g: &Graph) -> Result<Verdict> {
        let base = connected_base(g)?;
        if g.is_complete() {
            return Err(Error::Precondition("graph is complete".into()));
        }
        let j = Judgement::new(PreconditionState::Unconditional, base.lambda2(), 1.0, Relation::Le, false, &self.tol);
        Ok(self.verdict(TheoremId::L2_4, &Instance::Graph(g.clone()), j, Vec::new()))
    }

    /// When `λ₂ = 1`, every harmonic eigenfunction sums to zero over each
    /// neighbourhood. `lhs` is the worst neighbourhood sum over the basis.
    pub fn check_cor_2_2(&self, g: &Graph) -> Result<Verdict> {
        let base = connected_base(g)?;
        let unit = (base.lambda2() - 1.0).abs() <= self.tol.eigen;
        let precondition = if unit { PreconditionState::Holds } else { PreconditionState::Fails };
        let mut worst = 0.0f64;
        let mut reports = Vec::new();
        for (index, h) in base.fiedler.iter().enumerate() {
            let r = check_neighbor_sum_zero(g, &h.f)?;
            worst = worst.max(r);
            reports.push(BasisReport { index, values: vec![r], satisfied: r <= HARMONIC_TOL });
        }
        let loose = Tolerances { eigen: HARMONIC_TOL, ..self.tol };
        let j = Judgement::new(precondition, worst, 0.0, Relation::Le, false, &loose);
        Ok(self.verdict_tol(TheoremId::C2_2, &Instance::Graph(g.clone()), j, reports, HARMONIC_TOL))
    }

    /// `λ₂(S_n) = 1` and every `λ₂` harmonic eigenfunction vanishes at the centre.
    pub fn check_cor_2_3(&self, n: usize) -> Result<Verdict> {
        if n < 3 {
            return Err(Error::TooSmall { need: 3, have: n });
        }
        let base = connected_base(&star(n)?)?;
        let reports = Pred::ZeroAt.reports(&base.fiedler, 0, 0, &self.tol);
        let mut j = Judgement::new(PreconditionState::Unconditional, base.lambda2(), 1.0, Relation::Eq, false, &self.tol);
        j.pass &= reports.iter().all(|r| r.satisfied);
        Ok(self.verdict(TheoremId::C2_3, &Instance::Star(n), j, reports))
    }

    /// Subdividing an edge never raises `λ₂`; strictly lowers it when
    /// `f(u) f(v) ≠ 0` for every basis function.
    pub fn check_thm_3_1(&self, g: &Graph, u: usize, v: usize) -> Result<Verdict> {
        let base = connected_base(g)?;
        let after = value_of(&subdivide_edge(g, u, v)?.result, Which::SecondSmallest)?;
        let j = judge_subdivide_lambda2(&base, u, v, after, &self.tol);
        let reports = Pred::BothNonzero.reports(&Pred::BothNonzero.adapt(&base.fiedler, u, v), u, v, &self.tol);
        Ok(self.verdict(TheoremId::T3_1, &Instance::Edge { g: g.clone(), u, v }, j, reports))
    }

    pub fn check_cor_3_2(&self, g: &Graph, edges: &[(usize, usize)]) -> Result<Verdict> {
        let base = connected_base(g)?;
        let after = value_of(&subdivision_graph(g, edges)?.result, Which::SecondSmallest)?;
        let j = Judgement::new(PreconditionState::Unconditional, base.lambda2(), after, Relation::Ge, false, &self.tol);
        let inst = Instance::Subdivision { g: g.clone(), edges: edges.to_vec() };
        Ok(self.verdict(TheoremId::C3_2, &inst, j, Vec::new()))
    }

    /// Gluing any connected graph onto `G₁` never raises `λ₂`; `lhs = λ₂(G₁)`.
    pub fn check_thm_3_3(&self, g1: &Graph, u: usize, g2: &Graph, v: usize) -> Result<Verdict> {
        let base1 = connected_base(g1)?;
        let glued = value_of(&identify(g1, u, g2, v)?.result, Which::SecondSmallest)?;
        let j = judge_identify_lambda2(&base1, u, g2.volume(), glued, &self.tol);
        let reports = Pred::NonzeroAt.reports(&Pred::NonzeroAt.adapt(&base1.fiedler, u, u), u, u, &self.tol);
        let inst = Instance::Identify { g1: g1.clone(), u, g2: g2.clone(), v };
        Ok(self.verdict(TheoremId::T3_3, &inst, j, reports))
    }

    /// `λ₂(G) ≤ min(λ₂(G₁), λ₂(G₂))`; a single-vertex factor is skipped in
    /// the minimum.
    pub fn check_cor_3_4(&self, g1: &Graph, u: usize, g2: &Graph, v: usize) -> Result<Verdict> {
        let glued = identify(g1, u, g2, v)?.result;
        let mut bound = f64::INFINITY;
        for g in [g1, g2] {
            if g.order() >= 2 {
                bound = bound.min(value_of(g, Which::SecondSmallest)?);
            }
        }
        if glued.order() < 2 {
            return Err(Error::TooSmall { need: 2, have: glued.order() });
        }
        let lhs = value_of(&glued, Which::SecondSmallest)?;
        let j = Judgement::new(PreconditionState::Unconditional, lhs, bound, Relation::Le, false, &self.tol);
        let inst = Instance::Identify { g1: g1.clone(), u, g2: g2.clone(), v };
        Ok(self.verdict(TheoremId::C3_4, &inst, j, Vec::new()))
    }

    /// `λ₂(T) ≤ λ₂(T')` for the subtree `T'` induced by `vertices`.
    pub fn check_cor_3_5(&self, t: &Graph, vertices: &[usize]) -> Result<Verdict> {
        if !t.is_tree() {
            return Err(Error::Precondition("not a tree".into()));
        }
        let (sub, _) = t.induced_subgraph(vertices)?;
        if sub.order() < 2 {
            return Err(Error::TooSmall { need: 2, have: sub.order() });
        }
        if !sub.is_connected() {
            return Err(Error::Precondition("vertex subset does not induce a subtree".into()));
        }
        let lhs = value_of(t, Which::SecondSmallest)?;
        let rhs = value_of(&sub, Which::SecondSmallest)?;
        let j = Judgement::new(PreconditionState::Unconditional, lhs, rhs, Relation::Le, false, &self.tol);
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let inst = Instance::Subtree { t: t.clone(), vertices: sorted };
        Ok(self.verdict(TheoremId::C3_5, &inst, j, Vec::new()))
    }

    /// Edge transfer with `f(u) = f(v)` never raises `λ₂`.
    pub fn check_thm_3_6(&self, g: &Graph, u: usize, v: usize, targets: &[usize]) -> Result<Verdict> {
        self.check_transfer(TheoremId::T3_6, g, u, v, targets)
    }

    /// Subdivision with `f(u) f(v) ≥ 0` on a `ρ` eigenfunction never lowers `ρ`.
    pub fn check_thm_4_1(&self, g: &Graph, u: usize, v: usize) -> Result<Verdict> {
        let base = connected_base(g)?;
        let after = value_of(&subdivide_edge(g, u, v)?.result, Which::Largest)?;
        let j = judge_subdivide_rho(&base, u, v, after, &self.tol);
        let reports = Pred::ProductNonneg.reports(&Pred::ProductNonneg.adapt(&base.top, u, v), u, v, &self.tol);
        Ok(self.verdict(TheoremId::T4_1, &Instance::Edge { g: g.clone(), u, v }, j, reports))
    }

    /// Gluing onto `G₁` at a zero of a `ρ` eigenfunction never lowers `ρ`;
    /// `lhs = ρ(G₁)`, `rhs = ρ(G)`.
    pub fn check_thm_4_2(&self, g1: &Graph, u: usize, g2: &Graph, v: usize) -> Result<Verdict> {
        let base1 = connected_base(g1)?;
        let glued = value_of(&identify(g1, u, g2, v)?.result, Which::Largest)?;
        let j = judge_identify_rho(&base1, u, glued, &self.tol);
        let reports = Pred::ZeroAt.reports(&Pred::ZeroAt.adapt(&base1.top, u, u), u, u, &self.tol);
        let inst = Instance::Identify { g1: g1.clone(), u, g2: g2.clone(), v };
        Ok(self.verdict(TheoremId::T4_2, &inst, j, reports))
    }

    /// Edge transfer with `f(u) = f(v)` on a `ρ` eigenfunction never lowers `ρ`.
    pub fn check_thm_4_3(&self, g: &Graph, u: usize, v: usize, targets: &[usize]) -> Result<Verdict> {
        self.check_transfer(TheoremId::T4_3, g, u, v, targets)
    }

    fn check_transfer(&self, theorem: TheoremId, g: &Graph, u: usize, v: usize, targets: &[usize]) -> Result<Verdict> {
        let base = connected_base(g)?;
        let which = theorem.target();
        let after = value_of(&transfer_edges(g, u, v, targets)?.result, which)?;
        let j = judge_transfer(&base, which, u, v, after, &self.tol);
        let reports = Pred::Equal.reports(&Pred::Equal.adapt(base.basis(which), u, v), u, v, &self.tol);
        let inst = Instance::Transfer { g: g.clone(), u, v, targets: targets.to_vec() };
        Ok(self.verdict(theorem, &inst, j, reports))
    }
}

pub fn check(theorem: TheoremId, instance: &Instance) -> Result<Verdict> {
    Checker::default().check(theorem, instance)
}

pub fn check_lemma_2_4(g: &Graph) -> Result<Verdict> {
    Checker::default().check_lemma_2_4(g)
}

pub fn check_cor_2_2(g: &Graph) -> Result<Verdict> {
    Checker::default().check_cor_2_2(g)
}

pub fn check_cor_2_3(n: usize) -> Result<Verdict> {
    Checker::default().check_cor_2_3(n)
}

pub fn check_thm_3_1(g: &Graph, u: usize, v: usize) -> Result<Verdict> {
    Checker::default().check_thm_3_1(g, u, v)
}

pub fn check_cor_3_2(g: &Graph, edges: &[(usize, usize)]) -> Result<Verdict> {
    Checker::default().check_cor_3_2(g, edges)
}

pub fn check_thm_3_3(g1: &Graph, u: usize, g2: &Graph, v: usize) -> Result<Verdict> {
    Checker::default().check_thm_3_3(g1, u, g2, v)
}

pub fn check_cor_3_4(g1: &Graph, u: usize, g2: &Graph, v: usize) -> Result<Verdict> {
    Checker::default().check_cor_3_4(g1, u, g2, v)
}

pub fn check_cor_3_5(t: &Graph, vertices: &[usize]) -> Result<Verdict> {
    Checker::default().check_cor_3_5(t, vertices)
}

pub fn check_thm_3_6(g: &Graph, u: usize, v: usize, targets: &[usize]) -> Result<Verdict> {
    Checker::default().check_thm_3_6(g, u, v, targets)
}

pub fn check_thm_4_1(g: &Graph, u: usize, v: usize) -> Result<Verdict> {
    Checker::default().check_thm_4_1(g, u, v)
}

pub fn check_thm_4_2(g1: &Graph, u: usize, g2: &Graph, v: usize) -> Result<Verdict> {
    Checker::default().check_thm_4_2(g1, u, g2, v)
}

pub fn check_thm_4_3(g: &Graph, u: usize, v: usize, targets: &[usize]) -> Result<Verdict> {
    Checker::default().check_thm_4_3(g, u, v, targets)
}
