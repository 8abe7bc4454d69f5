//! Cuspidal weight modules for `W_μ`: the tensor modules `T(α, β)`, the
//! quotient `T̄(0,0)`, the trivial module, and window-scale structure checks.
//!
//! Basis vectors are indexed by a lattice offset `m` (weight `β + μ·m`, or
//! `μ·m` on the integral coset) and a fiber index for modules whose weight
//! spaces have dimension > 1.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{box_points, LatticePoint};
use crate::linear::LinComb;
use crate::scalar::{Bindings, Scalar};
use crate::solalg::AlgebraElement;
use crate::uea::{differentiator, signed_binomial, UeaElement};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisVector {
    pub offset: LatticePoint,
    pub fiber: usize,
}

impl BasisVector {
    pub fn new(offset: LatticePoint, fiber: usize) -> Self {
        BasisVector { offset, fiber }
    }

    pub fn line(offset: LatticePoint) -> Self {
        BasisVector { offset, fiber: 0 }
    }
}

impl fmt::Debug for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.fiber == 0 {
            write!(f, "v({})", self.offset)
        } else {
            write!(f, "v({};{})", self.offset, self.fiber)
        }
    }
}

/// `Σ c · v_{offset, fiber}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ModuleVector(pub LinComb<BasisVector>);

impl ModuleVector {
    pub fn zero() -> Self {
        ModuleVector(LinComb::zero())
    }

    /// `v` at `offset` in a multiplicity-free module.
    pub fn basis(offset: LatticePoint) -> Self {
        ModuleVector(LinComb::basis(BasisVector::line(offset)))
    }

    pub fn basis_fiber(offset: LatticePoint, fiber: usize) -> Self {
        ModuleVector(LinComb::basis(BasisVector::new(offset, fiber)))
    }

    pub fn term(offset: LatticePoint, c: Scalar) -> Self {
        ModuleVector(LinComb::term(BasisVector::line(offset), c))
    }

    pub fn terms(&self) -> &LinComb<BasisVector> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn coeff(&self, offset: &LatticePoint) -> Scalar {
        self.0.coeff(&BasisVector::line(offset.clone()))
    }

    pub fn add(&self, other: &Self) -> Self {
        ModuleVector(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        ModuleVector(self.0.sub(&other.0))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        ModuleVector(self.0.scale(c))
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        self.0.add_scaled(&other.0, c);
    }

    /// The common offset if every term lies in a single weight space.
    pub fn homogeneous_offset(&self) -> Option<&LatticePoint> {
        let mut it = self.0.keys().map(|b| &b.offset);
        let first = it.next()?;
        it.all(|o| o == first).then_some(first)
    }

    pub fn specialize(&self, bindings: &Bindings) -> Result<Self> {
        self.0.try_map_coeffs(|c| c.specialize(bindings)).map(ModuleVector)
    }
}

/// A `W_μ`-module with uniformly bounded weight multiplicities.
pub trait WeightModule: Sync {
    /// Rank `n` of the lattice.
    fn rank(&self) -> usize;

    /// Dimension of every nonzero weight space.
    fn fiber_dim(&self) -> usize;

    /// Whether the weight space at `offset` is nonzero.
    fn supports(&self, offset: &LatticePoint) -> bool;

    /// Weight of the vectors at `offset`.
    fn weight(&self, offset: &LatticePoint) -> Scalar;

    /// `e_k · v` for a single basis vector.
    fn act_basis(&self, k: &LatticePoint, v: &BasisVector) -> ModuleVector;

    fn name(&self) -> String;

    fn act(&self, k: &LatticePoint, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (b, c) in v.terms() {
            out.add_scaled(&self.act_basis(k, b), c);
        }
        out
    }

    fn act_element(&self, x: &AlgebraElement, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (k, c) in x.terms() {
            out.add_scaled(&self.act(k, v), c);
        }
        out
    }

    /// Applies each PBW word right to left.
    fn act_uea(&self, u: &UeaElement, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (mono, c) in u.terms() {
            let mut w = v.clone();
            for k in mono.word().iter().rev() {
                if w.is_zero() {
                    break;
                }
                w = self.act(k, &w);
            }
            out.add_scaled(&w, c);
        }
        out
    }

    /// Basis of the weight spaces at the given offsets.
    fn basis_in(&self, offsets: &[LatticePoint]) -> Vec<BasisVector> {
        offsets
            .iter()
            .filter(|o| self.supports(o))
            .flat_map(|o| (0..self.fiber_dim()).map(move |f| BasisVector::new(o.clone(), f)))
            .collect()
    }
}

/// The coset carrying the module: `β` an indeterminate, or `β = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BetaMode {
    Generic,
    Integral,
}

impl BetaMode {
    pub fn beta(self) -> Scalar {
        match self {
            BetaMode::Generic => Scalar::beta(),
            BetaMode::Integral => Scalar::zero(),
        }
    }

    pub fn weight(self, offset: &LatticePoint) -> Scalar {
        &self.beta() + &offset.mu_dot()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleParams {
    pub alpha: Scalar,
    pub beta_mode: BetaMode,
}

impl ModuleParams {
    /// Symbolic `α` on the generic coset.
    pub fn generic() -> Self {
        ModuleParams {
            alpha: Scalar::alpha(),
            beta_mode: BetaMode::Generic,
        }
    }

    pub fn new(alpha: Scalar, beta_mode: BetaMode) -> Self {
        ModuleParams { alpha, beta_mode }
    }

    /// `T(a, 0)` for a rational `a`.
    pub fn integral(alpha: i64) -> Self {
        ModuleParams::new(Scalar::from_int(alpha), BetaMode::Integral)
    }
}

/// `T(α, β)`: `e_k v_s = (s + αk) v_{s+k}`.
#[derive(Clone, Debug)]
pub struct TensorModule {
    pub n: usize,
    pub params: ModuleParams,
}

impl TensorModule {
    pub fn new(n: usize, params: ModuleParams) -> Self {
        TensorModule { n, params }
    }

    pub fn generic(n: usize) -> Self {
        TensorModule::new(n, ModuleParams::generic())
    }

    /// Coefficient of `e_k v_m` at offset `m + k`: `β + μ·m + α μ·k`.
    pub fn coefficient(&self, k: &LatticePoint, m: &LatticePoint) -> Scalar {
        &self.params.beta_mode.weight(m) + &(&self.params.alpha * &k.mu_dot())
    }
}

impl WeightModule for TensorModule {
    fn rank(&self) -> usize {
        self.n
    }

    fn fiber_dim(&self) -> usize {
        1
    }

    fn supports(&self, _offset: &LatticePoint) -> bool {
        true
    }

    fn weight(&self, offset: &LatticePoint) -> Scalar {
        self.params.beta_mode.weight(offset)
    }

    fn act_basis(&self, k: &LatticePoint, v: &BasisVector) -> ModuleVector {
        ModuleVector::term(k + &v.offset, self.coefficient(k, &v.offset))
    }

    fn name(&self) -> String {
        let beta = match self.params.beta_mode {
            BetaMode::Generic => "b",
            BetaMode::Integral => "0",
        };
        format!("T({}, {})", self.params.alpha, beta)
    }
}

/// `e_k · v` in `T(α, β)`.
pub fn tensor_act(k: &LatticePoint, v: &ModuleVector, params: &ModuleParams) -> ModuleVector {
    let n = k.dim();
    TensorModule::new(n, params.clone()).act(k, v)
}

/// `T̄(0,0) = T(0,0) / ℂv₀`; the offset-0 line is absent.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    inner: TensorModule,
}

impl QuotientModule {
    pub fn new(n: usize) -> Self {
        QuotientModule {
            inner: TensorModule::new(n, ModuleParams::integral(0)),
        }
    }
}

impl WeightModule for QuotientModule {
    fn rank(&self) -> usize {
        self.inner.n
    }

    fn fiber_dim(&self) -> usize {
        1
    }

    fn supports(&self, offset: &LatticePoint) -> bool {
        !offset.is_zero()
    }

    fn weight(&self, offset: &LatticePoint) -> Scalar {
        offset.mu_dot()
    }

    fn act_basis(&self, k: &LatticePoint, v: &BasisVector) -> ModuleVector {
        if v.offset.is_zero() {
            return ModuleVector::zero();
        }
        let target = k + &v.offset;
        if target.is_zero() {
            return ModuleVector::zero();
        }
        self.inner.act_basis(k, v)
    }

    fn name(&self) -> String {
        "Tbar(0, 0)".into()
    }
}

/// The one-dimensional trivial module, spanned by `v` at offset 0.
#[derive(Clone, Debug)]
pub struct TrivialModule {
    pub n: usize,
}

impl WeightModule for TrivialModule {
    fn rank(&self) -> usize {
        self.n
    }

    fn fiber_dim(&self) -> usize {
        1
    }

    fn supports(&self, offset: &LatticePoint) -> bool {
        offset.is_zero()
    }

    fn weight(&self, _offset: &LatticePoint) -> Scalar {
        Scalar::zero()
    }

    fn act_basis(&self, _k: &LatticePoint, _v: &BasisVector) -> ModuleVector {
        ModuleVector::zero()
    }

    fn name(&self) -> String {
        "trivial".into()
    }
}

/// `θ: T(0, β) → T(1, β)`, `θ(v_s) = s v'_s`.
pub fn theta_map(v: &ModuleVector, beta_mode: BetaMode) -> ModuleVector {
    ModuleVector(
        v.terms()
            .iter()
            .map(|(b, c)| (b.clone(), c * &beta_mode.weight(&b.offset)))
            .collect(),
    )
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct InvariantSubspace {
    pub dimension: usize,
    pub codimension: usize,
    /// Window offsets spanning it, when fewer than those outside it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<LatticePoint>>,
    /// Window offsets outside it, otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complement: Option<Vec<LatticePoint>>,
    /// Offsets whose generated subspace is exactly this one.
    pub generated_by: Vec<LatticePoint>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WindowReport {
    pub module: String,
    pub n: usize,
    pub radius: i64,
    pub window_dim: usize,
    /// Every window vector generates the whole window.
    pub full_cyclic: bool,
    /// Distinct proper subspaces generated by a single window vector.
    pub invariant_subspaces: Vec<InvariantSubspace>,
}

impl WindowReport {
    pub fn has_invariant_line_at_origin(&self) -> bool {
        self.invariant_subspaces.iter().any(|s| {
            s.dimension == 1 && s.members.as_deref() == Some(&[LatticePoint::zero(self.n)][..])
        })
    }

    pub fn has_codim_one_missing_origin(&self) -> bool {
        self.invariant_subspaces.iter().any(|s| {
            s.codimension == 1 && s.complement.as_deref() == Some(&[LatticePoint::zero(self.n)][..])
        })
    }
}

/// One-step reachability closure of every window basis vector under the
/// generators `e_k`, `k ∈ [-K, K]ⁿ`, keeping only targets inside the window.
///
/// Reports the absence of proper invariant subspaces met inside the window,
/// not simplicity of the module.
pub fn window_structure(module: &dyn WeightModule, radius: i64) -> Result<WindowReport> {
    if radius < 2 {
        return Err(Error::InvalidArgument(format!("window radius must be >= 2, got {radius}")));
    }
    let n = module.rank();
    let pts = box_points(n, radius);
    let basis = module.basis_in(&pts);
    let index: BTreeMap<&BasisVector, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();

    let edges: Vec<Vec<usize>> = basis
        .par_iter()
        .map(|b| {
            let mut out = BTreeSet::new();
            for k in &pts {
                for (target, _) in module.act_basis(k, b).terms() {
                    if let Some(&j) = index.get(target) {
                        out.insert(j);
                    }
                }
            }
            out.into_iter().collect()
        })
        .collect();

    let closures: Vec<BTreeSet<usize>> = (0..basis.len())
        .into_par_iter()
        .map(|start| {
            let mut seen = BTreeSet::from([start]);
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for &j in &edges[i] {
                    if seen.insert(j) {
                        stack.push(j);
                    }
                }
            }
            seen
        })
        .collect();

    let total = basis.len();
    let mut grouped: BTreeMap<Vec<usize>, Vec<LatticePoint>> = BTreeMap::new();
    for (i, c) in closures.iter().enumerate() {
        if c.len() < total {
            grouped
                .entry(c.iter().copied().collect())
                .or_default()
                .push(basis[i].offset.clone());
        }
    }
    let invariant_subspaces = grouped
        .into_iter()
        .map(|(members, generated_by)| {
            let dim = members.len();
            let codim = total - dim;
            let member_set: BTreeSet<usize> = members.iter().copied().collect();
            let offsets = |keep: bool| -> Vec<LatticePoint> {
                (0..total)
                    .filter(|i| member_set.contains(i) == keep)
                    .map(|i| basis[i].offset.clone())
                    .collect()
            };
            InvariantSubspace {
                dimension: dim,
                codimension: codim,
                members: (dim <= codim).then(|| offsets(true)),
                complement: (dim > codim).then(|| offsets(false)),
                generated_by,
            }
        })
        .collect::<Vec<_>>();

    Ok(WindowReport {
        module: module.name(),
        n,
        radius,
        window_dim: total,
        full_cyclic: invariant_subspaces.is_empty(),
        invariant_subspaces,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AnnihilationReport {
    pub module: String,
    pub h: LatticePoint,
    pub k: LatticePoint,
    pub s: LatticePoint,
    /// Least `m` with `Ω^{(m,h)}_{k,s} M = 0`.
    pub order: u32,
    /// Degree in `i` of the coefficient of `e_{k−ih} e_{s+ih} v_p`, plus one.
    pub order_from_degree: u32,
    /// For each `m < order`, a window vector with `Ω^{(m,h)}_{k,s} v ≠ 0`.
    pub nonzero_witnesses: Vec<(u32, String)>,
}

/// Offsets the annihilation check runs on: the symbolic origin on the
/// generic coset, plus a window around it.
fn probe_vectors(module: &dyn WeightModule, radius: i64) -> Vec<ModuleVector> {
    module
        .basis_in(&box_points(module.rank(), radius))
        .into_iter()
        .map(|b| ModuleVector(LinComb::basis(b)))
        .collect()
}

/// First nonzero value of `Ω^{(m,h)}_{k,s} v` over the probes.
fn differentiator_residual(
    module: &dyn WeightModule,
    omega: &UeaElement,
    probes: &[ModuleVector],
) -> Option<(ModuleVector, ModuleVector)> {
    probes.iter().find_map(|v| {
        let w = module.act_uea(omega, v);
        (!w.is_zero()).then(|| (v.clone(), w))
    })
}

/// `e_{k−ih} e_{s+ih} v`, acting word-by-word without normalization.
fn shifted_pair_action(
    module: &dyn WeightModule,
    i: i64,
    h: &LatticePoint,
    k: &LatticePoint,
    s: &LatticePoint,
    v: &ModuleVector,
) -> ModuleVector {
    let shift = h.scaled(i);
    module.act(&(k - &shift), &module.act(&(s + &shift), v))
}

/// Degree in `i` of `i ↦ e_{k−ih} e_{s+ih} v` for each probe (maximum),
/// found from forward differences at `i = 0, …, samples − 1`. `None` for ≡ 0.
fn coefficient_degree(
    module: &dyn WeightModule,
    h: &LatticePoint,
    k: &LatticePoint,
    s: &LatticePoint,
    probes: &[ModuleVector],
    samples: usize,
) -> Option<u32> {
    let mut best: Option<u32> = None;
    for v in probes {
        let mut row: Vec<ModuleVector> = (0..samples as i64)
            .map(|i| shifted_pair_action(module, i, h, k, s, v))
            .collect();
        let mut deg = None;
        for d in 0..samples {
            if row.iter().any(|x| !x.is_zero()) {
                deg = Some(d as u32);
            }
            row = row.windows(2).map(|w| w[1].sub(&w[0])).collect();
        }
        // The last nonzero difference order is the degree; a polynomial of
        // degree d has a constant, nonzero d-th difference row.
        best = best.max(deg);
    }
    best
}

/// Least order `m ≤ m_max` of a differentiator `Ω^{(m,h)}_{k,s}` that kills
/// the module, cross-checked against the degree of the `i`-coefficient.
pub fn min_annihilation_order(
    module: &dyn WeightModule,
    h: &LatticePoint,
    k: &LatticePoint,
    s: &LatticePoint,
    m_max: u32,
) -> Result<AnnihilationReport> {
    if h.is_zero() {
        return Err(Error::InvalidArgument(
            "differentiator step h must be nonzero".into(),
        ));
    }
    let probes = probe_vectors(module, 2);
    let mut witnesses = Vec::new();
    let mut order = None;
    for m in 0..=m_max {
        let omega = differentiator(m, h, k, s);
        match differentiator_residual(module, &omega, &probes) {
            None => {
                order = Some(m);
                break;
            }
            Some((v, w)) => witnesses.push((m, format!("{:?} -> {:?}", v, w))),
        }
    }
    let order = order.ok_or(Error::NotFound { m_max })?;
    let degree = coefficient_degree(module, h, k, s, &probes, m_max as usize + 2);
    Ok(AnnihilationReport {
        module: module.name(),
        h: h.clone(),
        k: k.clone(),
        s: s.clone(),
        order,
        order_from_degree: degree.map_or(0, |d| d + 1),
        nonzero_witnesses: witnesses,
    })
}

/// `Σ_i (−1)^i C(m,i) e_{k−ih} e_{s+ih} v`, straight from the definition.
pub fn differentiator_action_unnormalized(
    module: &dyn WeightModule,
    m: u32,
    h: &LatticePoint,
    k: &LatticePoint,
    s: &LatticePoint,
    v: &ModuleVector,
) -> ModuleVector {
    let mut out = ModuleVector::zero();
    for i in 0..=m {
        out.add_scaled(&shifted_pair_action(module, i as i64, h, k, s, v), &signed_binomial(m, i));
    }
    out
}
