//! `AW_μ`-modules `A ⊗ U` built from jet-algebra representations, the
//! operators `D(s) = t^{−s} ∘ (t^s d_μ)` and their polynomial structure.

mod commutant;
mod jet;
mod poly;

use std::collections::BTreeMap;

pub use commutant::{commutant_check, CommutantReport};
pub use jet::{abs_degree, jet_bracket_terms, multi_factorial, multi_indices, mu_power, samples, JetRep};
pub use poly::{first_jet_bracket_failure, fit_polynomial, verify_jet_brackets, OperatorPolynomial};

use crate::lattice::LatticePoint;
use crate::linalg::Matrix;
use crate::modules::{BasisVector, BetaMode, ModuleVector, WeightModule};
use crate::scalar::Scalar;

/// `M = A ⊗ U` with `t^s d_μ (t^m ⊗ u) = t^{m+s} ⊗ ((μ·m + β) Id + Σ_k s^k/k! ρ(x^k∂_μ)) u`.
///
/// Basis vector `(m, j)` is `t^m ⊗ u_j`.
#[derive(Clone, Debug)]
pub struct AwModule {
    rep: JetRep,
    beta_mode: BetaMode,
    /// `D(s) − β Id` as a polynomial in `s`.
    jet_part: OperatorPolynomial,
}

/// Builds the `AW_μ`-module of a validated representation.
pub fn aw_construct(rep: &JetRep, beta_mode: BetaMode) -> AwModule {
    let jet_part = OperatorPolynomial::from_derivatives(rep.n(), rep.dim(), rep.generators().clone());
    AwModule {
        rep: rep.clone(),
        beta_mode,
        jet_part,
    }
}

impl AwModule {
    pub fn rep(&self) -> &JetRep {
        &self.rep
    }

    pub fn beta_mode(&self) -> BetaMode {
        self.beta_mode
    }

    /// `D(s)` as a polynomial, constant term `β Id`.
    pub fn d_polynomial(&self) -> OperatorPolynomial {
        let mut coeffs = self.jet_part.coefficients().clone();
        let n = self.rep.n();
        coeffs.insert(LatticePoint::zero(n), Matrix::scalar(self.rep.dim(), &self.beta_mode.beta()));
        OperatorPolynomial::new(n, self.rep.dim(), coeffs)
    }

    /// `Σ_k s^k/k! ρ(x^k∂_μ)`.
    fn jet_operator(&self, s: &LatticePoint) -> Matrix {
        self.jet_part.evaluate(s)
    }

    /// `t^g · v`.
    pub fn a_act(&self, g: &LatticePoint, v: &ModuleVector) -> ModuleVector {
        ModuleVector(
            v.terms()
                .iter()
                .map(|(b, c)| (BasisVector::new(&b.offset + g, b.fiber), c.clone()))
                .collect(),
        )
    }
}

impl WeightModule for AwModule {
    fn rank(&self) -> usize {
        self.rep.n()
    }

    fn fiber_dim(&self) -> usize {
        self.rep.dim()
    }

    fn supports(&self, _offset: &LatticePoint) -> bool {
        true
    }

    fn weight(&self, offset: &LatticePoint) -> Scalar {
        self.beta_mode.weight(offset)
    }

    fn act_basis(&self, s: &LatticePoint, v: &BasisVector) -> ModuleVector {
        let target = s + &v.offset;
        let diag = self.weight(&v.offset);
        let jet = self.jet_operator(s);
        let d = self.rep.dim();
        ModuleVector(
            (0..d)
                .map(|i| {
                    let mut c = jet[(i, v.fiber)].clone();
                    if i == v.fiber {
                        c += diag.clone();
                    }
                    (BasisVector::new(target.clone(), i), c)
                })
                .collect(),
        )
    }

    fn name(&self) -> String {
        let beta = match self.beta_mode {
            BetaMode::Generic => "b",
            BetaMode::Integral => "0",
        };
        format!("AW(dim {}, degree {}, beta {})", self.rep.dim(), self.rep.degree_bound(), beta)
    }
}

/// `D(s)`: acts by `t^s d_μ` on `t^0 ⊗ U` and strips `t^s`.
#[allow(non_snake_case)]
pub fn extract_D(module: &dyn WeightModule, s: &LatticePoint) -> Matrix {
    let d = module.fiber_dim();
    let origin = LatticePoint::zero(module.rank());
    let mut out = Matrix::zeros(d, d);
    for j in 0..d {
        let image = module.act(s, &ModuleVector::basis_fiber(origin.clone(), j));
        for (b, c) in image.terms() {
            debug_assert_eq!(&b.offset, s);
            out[(b.fiber, j)] = c.clone();
        }
    }
    out
}

/// `[D(s), D(m)] = μ·m (D(m+s) − D(m)) − μ·s (D(m+s) − D(s))`.
pub fn verify_deform(module: &dyn WeightModule, s: &LatticePoint, m: &LatticePoint) -> bool {
    let (ds, dm, dms) = (extract_D(module, s), extract_D(module, m), extract_D(module, &(s + m)));
    let lhs = ds.commutator(&dm);
    let rhs = dms.sub(&dm).scale(&m.mu_dot()).sub(&dms.sub(&ds).scale(&s.mu_dot()));
    lhs == rhs
}

/// Fits `D` from `extract_D` samples on `[−K, K]ⁿ` with the representation's
/// degree bound as cap.
pub fn fit_from_module(module: &AwModule, radius: i64) -> crate::Result<OperatorPolynomial> {
    fit_polynomial(
        module.rank(),
        module.fiber_dim(),
        radius,
        module.rep().degree_bound(),
        |s| extract_D(module, s),
    )
}

/// `k ↦ ∂^k D` for `k ≠ 0`, the representation recovered from a fit.
pub fn recovered_rho(fit: &OperatorPolynomial) -> BTreeMap<LatticePoint, Matrix> {
    fit.coefficients()
        .keys()
        .filter(|k| !k.is_zero())
        .map(|k| (k.clone(), fit.derivative(k)))
        .filter(|(_, m)| !m.is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::box_points;
    use crate::modules::{ModuleParams, TensorModule};
    use crate::random::Sampler;
    use crate::solalg::bracket_basis;

    fn lp(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c.iter().copied())
    }

    #[test]
    fn tensor_rep_gives_tensor_module() {
        for mode in [BetaMode::Generic, BetaMode::Integral] {
            let aw = aw_construct(&samples::tensor(2), mode);
            let t = TensorModule::new(2, ModuleParams::new(Scalar::alpha(), mode));
            for s in box_points(2, 3) {
                for m in box_points(2, 2) {
                    let v = ModuleVector::basis(m.clone());
                    assert_eq!(aw.act(&s, &v), t.act(&s, &v));
                }
                assert_eq!(extract_D(&aw, &s), Matrix::scalar(1, &(&mode.beta() + &(&Scalar::alpha() * &s.mu_dot()))));
            }
        }
    }

    #[test]
    fn zero_rep_is_t0() {
        let rep = JetRep::new(1, 1, 1, BTreeMap::new()).unwrap();
        let aw = aw_construct(&rep, BetaMode::Generic);
        let t = TensorModule::new(1, ModuleParams::new(Scalar::zero(), BetaMode::Generic));
        let v = ModuleVector::basis(lp(&[2]));
        assert_eq!(aw.act(&lp(&[-3]), &v), t.act(&lp(&[-3]), &v));
    }

    #[test]
    fn extract_examples() {
        let aw = aw_construct(&samples::jordan(2, 2), BetaMode::Generic);
        assert_eq!(extract_D(&aw, &lp(&[0, 0])), Matrix::scalar(2, &Scalar::beta()));
        let s = lp(&[2, -1]);
        let mut expect = Matrix::scalar(2, &(&Scalar::beta() + &(&Scalar::alpha() * &s.mu_dot())));
        expect[(0, 1)] = s.mu_dot();
        assert_eq!(extract_D(&aw, &s), expect);
    }

    #[test]
    fn module_axioms_and_leibniz() {
        let mut smp = Sampler::new(4);
        for n in 1..=2 {
            for (name, rep) in samples::all(n) {
                let aw = aw_construct(&rep, BetaMode::Generic);
                for _ in 0..10 {
                    let (a, b, g) = (smp.point(n, 2), smp.point(n, 2), smp.point(n, 2));
                    let v = ModuleVector::basis_fiber(smp.point(n, 2), smp.int(0, rep.dim() as i64 - 1) as usize);
                    let lhs = aw.act(&a, &aw.act(&b, &v)).sub(&aw.act(&b, &aw.act(&a, &v)));
                    let (sum, c) = bracket_basis(&a, &b);
                    assert_eq!(lhs, aw.act(&sum, &v).scale(&c), "{name}");
                    // e_a (t^g v) = (e_a t^g) v + t^g (e_a v)
                    let lhs = aw.act(&a, &aw.a_act(&g, &v));
                    let rhs = aw.a_act(&(&a + &g), &v).scale(&g.mu_dot()).add(&aw.a_act(&g, &aw.act(&a, &v)));
                    assert_eq!(lhs, rhs, "{name}");
                }
            }
        }
    }

    #[test]
    fn deform_fit_and_jet_brackets() {
        for n in 1..=2 {
            for (name, rep) in samples::all(n) {
                let aw = aw_construct(&rep, BetaMode::Generic);
                for s in box_points(n, 1) {
                    for m in box_points(n, 1) {
                        assert!(verify_deform(&aw, &s, &m), "{name} {s} {m}");
                    }
                }
                let fit = fit_from_module(&aw, 2).unwrap();
                assert_eq!(fit, aw.d_polynomial(), "{name}");
                assert_eq!(fit.coefficient(&LatticePoint::zero(n)), Matrix::scalar(rep.dim(), &Scalar::beta()));
                assert_eq!(&recovered_rho(&fit), rep.generators(), "{name}");
                assert!(verify_jet_brackets(&fit), "{name}");
            }
        }
    }

    #[test]
    fn degree_two_plant_needs_cap_two() {
        let aw = aw_construct(&samples::graded_pair(1), BetaMode::Generic);
        assert!(matches!(
            fit_polynomial(1, 2, 2, 1, |s| extract_D(&aw, s)),
            Err(crate::Error::FitMismatch { degree_cap: 1, .. })
        ));
    }
}
