//! The solenoidal Lie algebra `W_μ = A d_μ` and the torus functions `A`.
//!
//! `t^r d_μ` is the basis element indexed by `r ∈ ℤⁿ`; with the identification
//! `t^r d_μ = e_{μ·r}` the bracket is the Witt bracket over `Γ_μ`:
//! `[t^r d_μ, t^s d_μ] = μ·(s − r) t^{r+s} d_μ`.

use crate::lattice::LatticePoint;
use crate::linear::LinComb;
use crate::scalar::Scalar;

/// `Σ c_r t^r d_μ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct AlgebraElement(pub LinComb<LatticePoint>);

/// `Σ c_r t^r ∈ A = ℂ[t_1^{±1}, …, t_n^{±1}]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct TorusFunction(pub LinComb<LatticePoint>);

macro_rules! lincomb_newtype {
    ($ty:ident) => {
        impl $ty {
            pub fn zero() -> Self {
                $ty(LinComb::zero())
            }

            pub fn term(r: LatticePoint, c: Scalar) -> Self {
                $ty(LinComb::term(r, c))
            }

            pub fn terms(&self) -> &LinComb<LatticePoint> {
                &self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.is_zero()
            }

            pub fn add(&self, other: &Self) -> Self {
                $ty(self.0.add(&other.0))
            }

            pub fn sub(&self, other: &Self) -> Self {
                $ty(self.0.sub(&other.0))
            }

            pub fn scale(&self, c: &Scalar) -> Self {
                $ty(self.0.scale(c))
            }

            /// The single term, if the element is homogeneous and nonzero.
            pub fn as_homogeneous(&self) -> Option<(&LatticePoint, &Scalar)> {
                let mut it = self.0.iter();
                match (it.next(), it.next()) {
                    (Some(t), None) => Some(t),
                    _ => None,
                }
            }
        }

        impl FromIterator<(LatticePoint, Scalar)> for $ty {
            fn from_iter<I: IntoIterator<Item = (LatticePoint, Scalar)>>(iter: I) -> Self {
                $ty(iter.into_iter().collect())
            }
        }
    };
}

lincomb_newtype!(AlgebraElement);
lincomb_newtype!(TorusFunction);

impl AlgebraElement {
    /// `e_r = t^r d_μ`.
    pub fn generator(r: LatticePoint) -> Self {
        Self::term(r, Scalar::one())
    }

    /// `d_μ` itself, the weight operator.
    pub fn d_mu(n: usize) -> Self {
        Self::generator(LatticePoint::zero(n))
    }
}

impl TorusFunction {
    /// `t^r`.
    pub fn monomial(r: LatticePoint) -> Self {
        Self::term(r, Scalar::one())
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(LatticePoint::zero(n))
    }
}

/// Bracket of basis elements: `[t^r d_μ, t^s d_μ] = μ·(s−r) t^{r+s} d_μ`.
pub fn bracket_basis(r: &LatticePoint, s: &LatticePoint) -> (LatticePoint, Scalar) {
    ((r + s), (s - r).mu_dot())
}

/// Bilinear extension of the basis bracket.
pub fn bracket(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    let mut out = LinComb::zero();
    for (r, a) in x.terms() {
        for (s, b) in y.terms() {
            if r == s {
                continue;
            }
            let (sum, c) = bracket_basis(r, s);
            out.add_term(sum, &(a * b) * &c);
        }
    }
    AlgebraElement(out)
}

/// `f · (g d_μ) = (fg) d_μ`.
pub fn a_action(f: &TorusFunction, x: &AlgebraElement) -> AlgebraElement {
    let mut out = LinComb::zero();
    for (a, c) in f.terms() {
        for (s, d) in x.terms() {
            out.add_term(a + s, c * d);
        }
    }
    AlgebraElement(out)
}

/// Product in `A`.
pub fn torus_mul(f: &TorusFunction, g: &TorusFunction) -> TorusFunction {
    let mut out = LinComb::zero();
    for (a, c) in f.terms() {
        for (b, d) in g.terms() {
            out.add_term(a + b, c * d);
        }
    }
    TorusFunction(out)
}

/// `x` acting on `A` as a derivation: `t^s d_μ · t^m = (μ·m) t^{m+s}`.
pub fn derivation_action(x: &AlgebraElement, f: &TorusFunction) -> TorusFunction {
    let mut out = LinComb::zero();
    for (s, a) in x.terms() {
        for (m, b) in f.terms() {
            if m.is_zero() {
                continue;
            }
            out.add_term(s + m, &(a * b) * &m.mu_dot());
        }
    }
    TorusFunction(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Sampler;

    fn lp(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c.iter().copied())
    }

    fn e(c: &[i64]) -> AlgebraElement {
        AlgebraElement::generator(lp(c))
    }

    fn t(c: &[i64]) -> TorusFunction {
        TorusFunction::monomial(lp(c))
    }

    #[test]
    fn bracket_examples() {
        assert!(bracket(&e(&[1, 2]), &e(&[1, 2])).is_zero());
        assert_eq!(
            bracket(&e(&[1, 0]), &e(&[0, 1])),
            AlgebraElement::term(lp(&[1, 1]), Scalar::mu(2) - Scalar::mu(1))
        );
        // Witt form in rank one: [e_1, e_2] = μ_1 e_3.
        assert_eq!(
            bracket(&e(&[1]), &e(&[2])),
            AlgebraElement::term(lp(&[3]), Scalar::mu(1))
        );
    }

    #[test]
    fn a_action_examples() {
        let x = e(&[2, -1]).scale(&Scalar::alpha());
        assert_eq!(a_action(&TorusFunction::one(2), &x), x);
        assert_eq!(a_action(&t(&[1, 1]), &e(&[0, 2])), e(&[1, 3]));
        let f = t(&[1, 0]).add(&t(&[0, 1]));
        assert_eq!(a_action(&f, &e(&[1, 1])), e(&[2, 1]).add(&e(&[1, 2])));
    }

    #[test]
    fn derivation_examples() {
        assert!(derivation_action(&e(&[3, 1]), &TorusFunction::one(2)).is_zero());
        assert_eq!(
            derivation_action(&e(&[1, 0]), &t(&[2, -1])),
            TorusFunction::term(lp(&[3, -1]), lp(&[2, -1]).mu_dot())
        );
        assert_eq!(
            derivation_action(&AlgebraElement::d_mu(2), &t(&[0, 4])),
            TorusFunction::term(lp(&[0, 4]), Scalar::mu(2) * Scalar::from_int(4))
        );
    }

    #[test]
    fn lie_and_leibniz_laws_on_random_inputs() {
        for n in 1..=3 {
            let mut s = Sampler::new(7 + n as u64);
            for _ in 0..40 {
                let x = s.algebra_element(n, 2, 3);
                let y = s.algebra_element(n, 2, 3);
                let z = s.algebra_element(n, 2, 3);
                let f = s.torus_function(n, 2, 3);
                assert_eq!(bracket(&x, &y), bracket(&y, &x).scale(&Scalar::from_int(-1)));
                let jac = bracket(&x, &bracket(&y, &z))
                    .add(&bracket(&y, &bracket(&z, &x)))
                    .add(&bracket(&z, &bracket(&x, &y)));
                assert!(jac.is_zero());
                let lhs = bracket(&x, &a_action(&f, &y));
                let rhs = a_action(&derivation_action(&x, &f), &y).add(&a_action(&f, &bracket(&x, &y)));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
