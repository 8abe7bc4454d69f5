//! The commutant `[𝓛₊, 𝓛₊]` inside the truncation `𝓛₊ / Σ_{j≥p} 𝓛_j`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::jet::{abs_degree, jet_bracket_terms, multi_indices};
use crate::lattice::LatticePoint;
use crate::linalg::rank;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CommutantReport {
    pub n: usize,
    pub p: u32,
    /// Number of `x^k∂_μ` with `1 ≤ |k| ≤ p`.
    pub truncation_dim: usize,
    pub bracket_rank: usize,
    pub codimension: usize,
    /// Rank of `[𝓛₀, 𝓛₀]`, the degree-0 part of the commutant.
    pub degree0_rank: usize,
    /// Every degree-0 bracket `Σ c_i x_i∂_μ` has `Σ μ_i c_i = 0`.
    pub degree0_in_hyperplane: bool,
    /// `[x_i∂_μ, x_j∂_μ]` for `i < j`, as `Σ c_i x_i∂_μ`.
    pub degree0_spanning: Vec<String>,
}

impl CommutantReport {
    /// Codimension one, and the degree-0 part is the whole hyperplane.
    pub fn passes(&self) -> bool {
        self.codimension == 1 && self.degree0_in_hyperplane && self.degree0_rank == self.n - 1
    }
}

fn render(n: usize, coeffs: &[Scalar]) -> String {
    let parts: Vec<String> = (0..n)
        .filter(|&i| !coeffs[i].is_zero())
        .map(|i| format!("({})*x{}d", coeffs[i], i + 1))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Requires `n ≥ 1`, `p ≥ 2`.
pub fn commutant_check(n: usize, p: u32) -> crate::Result<CommutantReport> {
    if n == 0 || p < 2 {
        return Err(crate::Error::InvalidArgument(format!("commutant check needs n >= 1 and p >= 2, got n={n}, p={p}")));
    }
    let basis: Vec<LatticePoint> = (1..=p).flat_map(|d| multi_indices(n, d)).collect();
    let index: BTreeMap<&LatticePoint, usize> = basis.iter().enumerate().map(|(i, k)| (k, i)).collect();

    let bracket_row = |k: &LatticePoint, r: &LatticePoint| -> Vec<Scalar> {
        let mut row = vec![Scalar::zero(); basis.len()];
        for (t, c) in jet_bracket_terms(k, r) {
            if abs_degree(&t) <= p as i64 {
                row[index[&t]] += c;
            }
        }
        row
    };

    let mut rows = Vec::new();
    for (a, k) in basis.iter().enumerate() {
        for r in &basis[a + 1..] {
            rows.push(bracket_row(k, r));
        }
    }
    let bracket_rank = rank(rows.iter().map(Vec::as_slice));

    // Coordinates on 𝓛₀ indexed by variable: c[i] multiplies x_{i+1}∂_μ.
    let eps: Vec<LatticePoint> = (1..=n).map(|i| LatticePoint::basis(n, i)).collect();
    let mut degree0 = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let row = bracket_row(&eps[i], &eps[j]);
            degree0.push(eps.iter().map(|e| row[index[e]].clone()).collect::<Vec<_>>());
        }
    }
    let degree0_rank = rank(degree0.iter().map(Vec::as_slice));
    let degree0_in_hyperplane = degree0.iter().all(|c| {
        c.iter()
            .enumerate()
            .fold(Scalar::zero(), |acc, (i, ci)| &acc + &(&Scalar::mu(i + 1) * ci))
            .is_zero()
    });

    Ok(CommutantReport {
        n,
        p,
        truncation_dim: basis.len(),
        bracket_rank,
        codimension: basis.len() - bracket_rank,
        degree0_rank,
        degree0_in_hyperplane,
        degree0_spanning: degree0.iter().map(|c| render(n, c)).collect(),
    })
}
