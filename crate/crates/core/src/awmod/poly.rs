//! End(U)-valued polynomials `D(s) = Σ_k c_k s^k` and their recovery from
//! samples on an integer box.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::jet::{abs_degree, jet_bracket_terms, lattice_power, multi_factorial, multi_indices};
use crate::error::{Error, Result};
use crate::lattice::{box_points, LatticePoint};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// `D(s) = Σ_k c_k s^k`, so `∂^k D = k! c_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorPolynomial {
    n: usize,
    dim: usize,
    coeffs: BTreeMap<LatticePoint, Matrix>,
}

impl OperatorPolynomial {
    /// Drops zero coefficients.
    pub fn new(n: usize, dim: usize, coeffs: BTreeMap<LatticePoint, Matrix>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        OperatorPolynomial { n, dim, coeffs }
    }

    /// From Taylor data `k ↦ ∂^k D`.
    pub fn from_derivatives(n: usize, dim: usize, derivs: BTreeMap<LatticePoint, Matrix>) -> Self {
        let coeffs = derivs
            .into_iter()
            .map(|(k, m)| {
                let c = multi_factorial(&k).inv().expect("k! is nonzero");
                (k, m.scale(&c))
            })
            .collect();
        OperatorPolynomial::new(n, dim, coeffs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficients(&self) -> &BTreeMap<LatticePoint, Matrix> {
        &self.coeffs
    }

    /// `c_k`, zero when absent.
    pub fn coefficient(&self, k: &LatticePoint) -> Matrix {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Matrix::zeros(self.dim, self.dim))
    }

    /// `∂^k D = k! c_k`.
    pub fn derivative(&self, k: &LatticePoint) -> Matrix {
        self.coefficient(k).scale(&multi_factorial(k))
    }

    /// Largest `|k|` with `c_k ≠ 0`; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.coeffs.keys().map(|k| abs_degree(k) as u32).max().unwrap_or(0)
    }

    pub fn evaluate(&self, s: &LatticePoint) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (k, c) in &self.coeffs {
            let w = lattice_power(s, k);
            if !w.is_zero() {
                out = out.add(&c.scale(&w));
            }
        }
        out
    }
}

/// Coefficients in `1, s, …, s^c` of the Lagrange basis on `nodes`:
/// row `j` holds the coefficients of `L_j`.
fn lagrange_basis(nodes: &[i64]) -> Vec<Vec<BigRational>> {
    let int = |x: i64| BigRational::from_integer(BigInt::from(x));
    nodes
        .iter()
        .enumerate()
        .map(|(j, &xj)| {
            let mut poly = vec![BigRational::one()];
            let mut denom = BigRational::one();
            for (i, &xi) in nodes.iter().enumerate() {
                if i == j {
                    continue;
                }
                // poly *= (s − xi)
                let mut next = vec![BigRational::zero(); poly.len() + 1];
                for (d, c) in poly.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= c * int(xi);
                }
                poly = next;
                denom *= int(xj - xi);
            }
            poly.into_iter().map(|c| c / &denom).collect()
        })
        .collect()
}

/// `0, 1, −1, 2, −2, …`, the first `count` of them.
fn central_nodes(count: usize) -> Vec<i64> {
    (0..count as i64).map(|i| if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) }).collect()
}

/// Interpolates `sample` with degree at most `degree_cap` in each variable,
/// using the `degree_cap + 1` nodes nearest 0 on each axis of `[−K, K]ⁿ`,
/// then checks the fit on every point of `[−K−2, K+2]ⁿ`.
pub fn fit_polynomial<F>(n: usize, dim: usize, radius: i64, degree_cap: u32, sample: F) -> Result<OperatorPolynomial>
where
    F: Fn(&LatticePoint) -> Matrix + Sync,
{
    if 2 * radius + 1 <= degree_cap as i64 {
        return Err(Error::InvalidArgument(format!(
            "box [-{radius}, {radius}] too small for degree {degree_cap}"
        )));
    }
    let nodes = central_nodes(degree_cap as usize + 1);
    let basis = lagrange_basis(&nodes);
    let grid: Vec<Vec<usize>> = multi_indices_box(n, nodes.len());

    // values[g] = sample at node tuple g; iterated axis transforms turn the
    // node index along each axis into an exponent.
    let mut values: BTreeMap<Vec<usize>, Matrix> = grid
        .par_iter()
        .map(|g| {
            let p = LatticePoint::new(g.iter().map(|&i| nodes[i]));
            (g.clone(), sample(&p))
        })
        .collect();
    for axis in 0..n {
        let mut next = BTreeMap::new();
        for g in &grid {
            let mut acc = Matrix::zeros(dim, dim);
            for (j, row) in basis.iter().enumerate() {
                let c = &row[g[axis]];
                if c.is_zero() {
                    continue;
                }
                let mut src = g.clone();
                src[axis] = j;
                acc = acc.add(&values[&src].scale(&Scalar::from_rational(c.clone())));
            }
            next.insert(g.clone(), acc);
        }
        values = next;
    }
    let coeffs = values
        .into_iter()
        .map(|(g, m)| (LatticePoint::new(g.into_iter().map(|e| e as i64)), m))
        .collect();
    let fit = OperatorPolynomial::new(n, dim, coeffs);

    let check = box_points(n, radius + 2);
    let bad = check.par_iter().find_first(|p| fit.evaluate(p) != sample(p));
    match bad {
        Some(p) => Err(Error::FitMismatch {
            degree_cap,
            point: p.to_string(),
        }),
        None => Ok(fit),
    }
}

/// `{0, …, side−1}ⁿ` in lex order.
fn multi_indices_box(n: usize, side: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..side).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    out
}

/// Checks `[∂^k D, ∂^r D] = Σ_i μ_i (r_i − k_i) ∂^{k+r−ε_i} D` for nonzero
/// `k, r`, and `[∂^k D, ∂^r D] = 0` when either is zero, over every pair
/// with `|k| + |r| ≤ deg D + 1`.
pub fn verify_jet_brackets(d: &OperatorPolynomial) -> bool {
    first_jet_bracket_failure(d).is_none()
}

pub fn first_jet_bracket_failure(d: &OperatorPolynomial) -> Option<(LatticePoint, LatticePoint)> {
    let top = d.total_degree() + 1;
    let all: Vec<LatticePoint> = (0..=top).flat_map(|t| multi_indices(d.n, t)).collect();
    let derivs: BTreeMap<&LatticePoint, Matrix> = all.iter().map(|k| (k, d.derivative(k))).collect();
    for (a, k) in all.iter().enumerate() {
        for r in &all[a..] {
            if abs_degree(k) + abs_degree(r) > top as i64 {
                continue;
            }
            let lhs = derivs[k].commutator(&derivs[r]);
            let mut rhs = Matrix::zeros(d.dim, d.dim);
            if !k.is_zero() && !r.is_zero() {
                for (t, c) in jet_bracket_terms(k, r) {
                    rhs = rhs.add(&d.derivative(&t).scale(&c));
                }
            }
            if lhs != rhs {
                return Some((k.clone(), r.clone()));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c.iter().copied())
    }

    #[test]
    fn lagrange_basis_is_dual_to_nodes() {
        let nodes = central_nodes(4);
        assert_eq!(nodes, vec![0, 1, -1, 2]);
        let basis = lagrange_basis(&nodes);
        for (j, row) in basis.iter().enumerate() {
            for (i, &x) in nodes.iter().enumerate() {
                let v: BigRational = row
                    .iter()
                    .enumerate()
                    .map(|(e, c)| c * BigRational::from_integer(BigInt::from(x).pow(e as u32)))
                    .sum();
                assert_eq!(v, if i == j { BigRational::one() } else { BigRational::zero() });
            }
        }
    }

    #[test]
    fn fits_a_planted_polynomial() {
        // D(s) = [[b, s1*s2], [a*s2^2, 0]]
        let plant = |s: &LatticePoint| {
            let (x, y) = (Scalar::from_int(s.coords()[0]), Scalar::from_int(s.coords()[1]));
            Matrix::from_rows(vec![
                vec![Scalar::beta(), &x * &y],
                vec![&Scalar::alpha() * &(&y * &y), Scalar::zero()],
            ])
        };
        let fit = fit_polynomial(2, 2, 2, 2, plant).unwrap();
        assert_eq!(fit.coefficient(&lp(&[0, 0]))[(0, 0)], Scalar::beta());
        assert_eq!(fit.coefficient(&lp(&[1, 1]))[(0, 1)], Scalar::one());
        assert_eq!(fit.derivative(&lp(&[0, 2]))[(1, 0)], &Scalar::alpha() * &Scalar::from_int(2));
        assert_eq!(fit.coefficients().len(), 3);

        assert!(matches!(
            fit_polynomial(2, 2, 2, 1, plant),
            Err(Error::FitMismatch { degree_cap: 1, .. })
        ));
        assert!(fit_polynomial(1, 1, 1, 3, |_| Matrix::identity(1)).is_err());
    }

    #[test]
    fn constant_term_must_be_central() {
        let e12 = Matrix::from_rows(vec![vec![Scalar::zero(), Scalar::one()], vec![Scalar::zero(), Scalar::zero()]]);
        let diag = Matrix::from_rows(vec![vec![Scalar::one(), Scalar::zero()], vec![Scalar::zero(), Scalar::zero()]]);
        let ok = OperatorPolynomial::new(1, 2, BTreeMap::from([(lp(&[0]), Matrix::identity(2)), (lp(&[1]), diag.clone())]));
        assert!(verify_jet_brackets(&ok));
        let bad = OperatorPolynomial::new(1, 2, BTreeMap::from([(lp(&[0]), e12), (lp(&[1]), diag)]));
        assert_eq!(first_jet_bracket_failure(&bad), Some((lp(&[0]), lp(&[1]))));
    }
}
