//! The A-cover `M̂ ⊆ Hom(A, M)` spanned by `ψ(x, u): f ↦ (f x) u`, its
//! projection `π(φ) = φ(1)`, and weight-space ranks by evaluation.
//!
//! Cover elements are kept as formal combinations of generators; equality
//! is functional and is decided on a window of monomials `t^f`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{box_points, LatticePoint};
use crate::linalg::rank;
use crate::linear::LinComb;
use crate::modules::{BasisVector, ModuleVector, WeightModule};
use crate::scalar::Scalar;
use crate::solalg::{bracket_basis, AlgebraElement, TorusFunction};
use crate::uea::signed_binomial;

/// `ψ(e_x, v)` for a basis vector `v`; general `ψ(x, u)` expand bilinearly.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverGenerator {
    pub x: LatticePoint,
    pub u: BasisVector,
}

impl CoverGenerator {
    pub fn new(x: LatticePoint, u: BasisVector) -> Self {
        CoverGenerator { x, u }
    }

    /// Offset of `wt(x) + wt(u)`.
    pub fn weight_offset(&self) -> LatticePoint {
        &self.x + &self.u.offset
    }
}

impl fmt::Debug for CoverGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "psi(e({}), {:?})", self.x, self.u)
    }
}

/// A combination of generators; every generator has the same weight.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CoverElement(pub LinComb<CoverGenerator>);

impl CoverElement {
    pub fn zero() -> Self {
        CoverElement(LinComb::zero())
    }

    /// `ψ(x, u)` for homogeneous `x` and `u`.
    pub fn psi(x: &AlgebraElement, u: &ModuleVector) -> Self {
        let mut out = LinComb::zero();
        for (r, a) in x.terms() {
            for (b, c) in u.terms() {
                out.add_term(CoverGenerator::new(r.clone(), b.clone()), a * c);
            }
        }
        let e = CoverElement(out);
        debug_assert!(e.weight_offset().is_some() || e.is_zero(), "psi of inhomogeneous data");
        e
    }

    pub fn generator(x: LatticePoint, u: BasisVector) -> Self {
        CoverElement(LinComb::basis(CoverGenerator::new(x, u)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        CoverElement(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        CoverElement(self.0.sub(&other.0))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        CoverElement(self.0.scale(c))
    }

    /// Common weight offset, `None` if empty or mixed.
    pub fn weight_offset(&self) -> Option<LatticePoint> {
        let mut it = self.0.keys().map(CoverGenerator::weight_offset);
        let first = it.next()?;
        it.all(|o| o == first).then_some(first)
    }
}

/// `ψ(x, u)(f) = (f x) u`, extended linearly.
pub fn psi_eval(module: &dyn WeightModule, e: &CoverElement, f: &TorusFunction) -> ModuleVector {
    let mut out = ModuleVector::zero();
    for (g, c) in &e.0 {
        let u = ModuleVector(LinComb::basis(g.u.clone()));
        for (a, d) in f.terms() {
            out.add_scaled(&module.act(&(a + &g.x), &u), &(c * d));
        }
    }
    out
}

/// `ψ(t^a x, u)` at a single monomial, the common case.
fn psi_eval_monomial(module: &dyn WeightModule, e: &CoverElement, a: &LatticePoint) -> ModuleVector {
    let mut out = ModuleVector::zero();
    for (g, c) in &e.0 {
        out.add_scaled(&module.act_basis(&(a + &g.x), &g.u), c);
    }
    out
}

/// `π(φ) = φ(1)`.
pub fn pi(module: &dyn WeightModule, e: &CoverElement) -> ModuleVector {
    psi_eval_monomial(module, e, &LatticePoint::zero(module.rank()))
}

/// `y ψ(x, u) = ψ([y, x], u) + ψ(x, y u)`.
pub fn cover_act(module: &dyn WeightModule, y: &AlgebraElement, e: &CoverElement) -> CoverElement {
    let mut out = LinComb::zero();
    for (k, a) in y.terms() {
        for (g, c) in &e.0 {
            let ac = a * c;
            let (sum, b) = bracket_basis(k, &g.x);
            out.add_term(CoverGenerator::new(sum, g.u.clone()), &ac * &b);
            for (v, d) in module.act_basis(k, &g.u).terms() {
                out.add_term(CoverGenerator::new(g.x.clone(), v.clone()), &ac * d);
            }
        }
    }
    CoverElement(out)
}

/// `(y φ)(f) = y(φ(f)) − φ(y f)`, the coinduced action evaluated at `f`.
pub fn coinduced_act_eval(
    module: &dyn WeightModule,
    y: &AlgebraElement,
    e: &CoverElement,
    f: &TorusFunction,
) -> ModuleVector {
    let first = module.act_element(y, &psi_eval(module, e, f));
    let yf = crate::solalg::derivation_action(y, f);
    first.sub(&psi_eval(module, e, &yf))
}

/// `g ψ(x, u) = ψ(g x, u)`.
pub fn cover_a_act(g: &TorusFunction, e: &CoverElement) -> CoverElement {
    let mut out = LinComb::zero();
    for (a, d) in g.terms() {
        for (gen, c) in &e.0 {
            out.add_term(CoverGenerator::new(a + &gen.x, gen.u.clone()), d * c);
        }
    }
    CoverElement(out)
}

/// `φ(t^f)` for every `f ∈ [−K', K']ⁿ`, flattened over offset and fiber.
fn evaluation_row(module: &dyn WeightModule, e: &CoverElement, target: &LatticePoint, eval_radius: i64) -> Vec<Scalar> {
    let d = module.fiber_dim();
    let mut row = Vec::new();
    for f in box_points(module.rank(), eval_radius) {
        let v = psi_eval_monomial(module, e, &f);
        let offset = target + &f;
        for j in 0..d {
            row.push(v.0.coeff(&BasisVector::new(offset.clone(), j)));
        }
    }
    row
}

/// Functional equality on the window `[−K', K']ⁿ`.
pub fn equal_on_window(module: &dyn WeightModule, a: &CoverElement, b: &CoverElement, eval_radius: i64) -> bool {
    let n = module.rank();
    box_points(n, eval_radius)
        .iter()
        .all(|f| psi_eval_monomial(module, a, f) == psi_eval_monomial(module, b, f))
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RankReport {
    pub lambda: LatticePoint,
    pub gen_window: i64,
    /// The evaluation window at which the rank first repeated.
    pub eval_window: i64,
    pub generators: usize,
    pub rank: usize,
}

/// Rank of `{ψ(e_{λ−w}, v_w) : w ∈ [−K, K]ⁿ}` as functions on monomials,
/// growing the evaluation window from `K'` until the rank repeats.
pub fn weight_space_rank(
    module: &dyn WeightModule,
    lambda: &LatticePoint,
    gen_radius: i64,
    eval_radius: i64,
    eval_cap: i64,
) -> Result<RankReport> {
    let gens: Vec<CoverElement> = module
        .basis_in(&box_points(module.rank(), gen_radius))
        .into_iter()
        .map(|u| CoverElement::generator(lambda - &u.offset, u))
        .collect();
    let rank_at = |k: i64| -> usize {
        let rows: Vec<Vec<Scalar>> = gens.par_iter().map(|g| evaluation_row(module, g, lambda, k)).collect();
        rank(rows.iter().map(Vec::as_slice))
    };
    let mut k = eval_radius;
    let mut prev = rank_at(k);
    while k < eval_cap {
        let next = rank_at(k + 1);
        if next == prev {
            return Ok(RankReport {
                lambda: lambda.clone(),
                gen_window: gen_radius,
                eval_window: k,
                generators: gens.len(),
                rank: prev,
            });
        }
        prev = next;
        k += 1;
    }
    Err(Error::RankUnstable { cap: eval_cap as u32 })
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub module: String,
    pub window: i64,
    /// Supported target offsets checked.
    pub targets: usize,
    /// Targets whose weight space is not spanned by `π(ψ(e_k, v_w))`.
    pub missed: Vec<LatticePoint>,
    /// Sum over targets of the rank of the image.
    pub image_dim: usize,
}

impl SurjectivityReport {
    pub fn surjective(&self) -> bool {
        self.missed.is_empty()
    }
}

/// For each supported target `t ∈ [−K, K]ⁿ`, the span of `e_{t−w} v_w` over
/// supported `w ∈ [−K, K]ⁿ` against the weight space at `t`.
pub fn pi_surjectivity_report(module: &dyn WeightModule, window: i64) -> SurjectivityReport {
    let n = module.rank();
    let pts = box_points(n, window);
    let sources = module.basis_in(&pts);
    let d = module.fiber_dim();
    let targets: Vec<&LatticePoint> = pts.iter().filter(|t| module.supports(t)).collect();
    let ranks: Vec<(LatticePoint, usize)> = targets
        .par_iter()
        .map(|&t| {
            let rows: Vec<Vec<Scalar>> = sources
                .iter()
                .map(|u| {
                    let img = pi(module, &CoverElement::generator(t - &u.offset, u.clone()));
                    (0..d).map(|j| img.0.coeff(&BasisVector::new(t.clone(), j))).collect()
                })
                .collect();
            (t.clone(), rank(rows.iter().map(Vec::as_slice)))
        })
        .collect();
    SurjectivityReport {
        module: module.name(),
        window,
        targets: targets.len(),
        missed: ranks.iter().filter(|(_, r)| *r < d).map(|(t, _)| t.clone()).collect(),
        image_dim: ranks.iter().map(|(_, r)| r).sum(),
    }
}

/// `Σ_i (−1)^i C(m,i) ψ(e_{k−ih}, e_{s+ih} u)`.
///
/// Its value at `t^f` is `Ω^{(m,h)}_{k+f,s} u`, so it vanishes as a function
/// exactly when the differentiators of order `m` kill `u`.
pub fn differentiator_generator(
    module: &dyn WeightModule,
    m: u32,
    h: &LatticePoint,
    k: &LatticePoint,
    s: &LatticePoint,
    u: &ModuleVector,
) -> CoverElement {
    let mut out = CoverElement::zero();
    for i in 0..=m {
        let shift = h.scaled(i as i64);
        let x = AlgebraElement::generator(k - &shift);
        let yu = module.act(&(s + &shift), u);
        out = out.add(&CoverElement::psi(&x, &yu).scale(&signed_binomial(m, i)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{BetaMode, ModuleParams, TensorModule, TrivialModule};
    use crate::random::Sampler;

    fn lp(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c.iter().copied())
    }

    fn generic(n: usize) -> TensorModule {
        TensorModule::generic(n)
    }

    #[test]
    fn psi_examples() {
        let m = generic(2);
        let (k, s, f) = (lp(&[1, -1]), lp(&[2, 0]), lp(&[0, 3]));
        let e = CoverElement::psi(&AlgebraElement::generator(k.clone()), &ModuleVector::basis(s.clone()));
        let expect = &(&Scalar::beta() + &s.mu_dot()) + &(&Scalar::alpha() * &(&k + &f).mu_dot());
        assert_eq!(
            psi_eval(&m, &e, &TorusFunction::monomial(f.clone())),
            ModuleVector::term(&(&s + &k) + &f, expect)
        );
        assert_eq!(pi(&m, &e), m.act(&k, &ModuleVector::basis(s)));
        let zero = CoverElement::psi(&AlgebraElement::generator(k), &ModuleVector::zero());
        assert!(psi_eval(&m, &zero, &TorusFunction::one(2)).is_zero());
    }

    #[test]
    fn weight_operator_scales_by_weight() {
        let m = generic(1);
        let e = CoverElement::generator(lp(&[2]), BasisVector::line(lp(&[-1])));
        let w = m.weight(&lp(&[1]));
        let acted = cover_act(&m, &AlgebraElement::d_mu(1), &e);
        assert!(equal_on_window(&m, &acted, &e.scale(&w), 3));
    }

    #[test]
    fn action_routes_agree_and_pi_is_equivariant() {
        let m = generic(2);
        let mut smp = Sampler::new(21);
        for _ in 0..20 {
            let y = AlgebraElement::generator(smp.point(2, 2));
            let e = CoverElement::generator(smp.point(2, 2), BasisVector::line(smp.point(2, 2)));
            let acted = cover_act(&m, &y, &e);
            for f in box_points(2, 1) {
                let tf = TorusFunction::monomial(f.clone());
                assert_eq!(psi_eval(&m, &acted, &tf), coinduced_act_eval(&m, &y, &e, &tf));
            }
            assert_eq!(pi(&m, &acted), m.act_element(&y, &pi(&m, &e)));

            // x (g φ) = (x g) φ + g (x φ)
            let g = TorusFunction::monomial(smp.point(2, 2));
            let lhs = cover_act(&m, &y, &cover_a_act(&g, &e));
            let xg = crate::solalg::derivation_action(&y, &g);
            let rhs = cover_a_act(&xg, &e).add(&cover_a_act(&g, &cover_act(&m, &y, &e)));
            assert!(equal_on_window(&m, &lhs, &rhs, 2));
        }
    }

    #[test]
    fn ranks() {
        let lambda = lp(&[1, -1]);
        let r = weight_space_rank(&generic(2), &lambda, 2, 1, 6).unwrap();
        assert_eq!(r.rank, 2);
        let t0 = TensorModule::new(2, ModuleParams::new(Scalar::zero(), BetaMode::Generic));
        assert_eq!(weight_space_rank(&t0, &lambda, 2, 1, 6).unwrap().rank, 1);
        assert_eq!(weight_space_rank(&TrivialModule { n: 2 }, &lambda, 2, 1, 6).unwrap().rank, 0);
        assert!(matches!(
            weight_space_rank(&generic(1), &lp(&[0]), 2, 0, 0),
            Err(Error::RankUnstable { cap: 0 })
        ));
    }

    #[test]
    fn surjectivity() {
        assert!(pi_surjectivity_report(&generic(2), 2).surjective());
        let t10 = pi_surjectivity_report(&TensorModule::new(2, ModuleParams::integral(1)), 2);
        assert_eq!(t10.missed, vec![lp(&[0, 0])]);
        let triv = pi_surjectivity_report(&TrivialModule { n: 2 }, 2);
        assert_eq!(triv.image_dim, 0);
    }

    #[test]
    fn differentiator_generators() {
        let m = generic(1);
        let (h, k, s) = (lp(&[1]), lp(&[2]), lp(&[-1]));
        let u = ModuleVector::basis(lp(&[0]));
        let zero = CoverElement::zero();
        assert!(equal_on_window(&m, &differentiator_generator(&m, 3, &h, &k, &s, &u), &zero, 3));
        assert!(!equal_on_window(&m, &differentiator_generator(&m, 2, &h, &k, &s, &u), &zero, 3));
    }
}
