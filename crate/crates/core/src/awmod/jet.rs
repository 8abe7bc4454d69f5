//! Finite-dimensional representations of the jet algebra `𝓛₊`, spanned by
//! `x^k ∂_μ` for `k ∈ ℤ₊ⁿ \ {0}`, truncated at a degree bound.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// All `k ∈ ℤ₊ⁿ` with `|k| = total`, in lex order.
pub fn multi_indices(n: usize, total: u32) -> Vec<LatticePoint> {
    fn rec(n: usize, left: i64, prefix: &mut Vec<i64>, out: &mut Vec<LatticePoint>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(LatticePoint::new(prefix.iter().copied()));
            prefix.pop();
            return;
        }
        for c in 0..=left {
            prefix.push(c);
            rec(n, left - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, total as i64, &mut Vec::with_capacity(n), &mut out);
    }
    out.sort();
    out
}

/// `|k|` for a multi-index.
pub fn abs_degree(k: &LatticePoint) -> i64 {
    k.coords().iter().sum()
}

pub fn is_multi_index(k: &LatticePoint) -> bool {
    k.coords().iter().all(|&c| c >= 0)
}

/// `k! = Π k_i!`
pub fn multi_factorial(k: &LatticePoint) -> Scalar {
    let mut out = 1i64;
    for &c in k.coords() {
        out *= (1..=c).product::<i64>();
    }
    Scalar::from_int(out)
}

/// `s^k = Π s_i^{k_i}` for an integer point `s`.
pub fn lattice_power(s: &LatticePoint, k: &LatticePoint) -> Scalar {
    s.coords()
        .iter()
        .zip(k.coords())
        .fold(Scalar::one(), |acc, (&si, &ki)| &acc * &Scalar::from_int(si).pow(ki as u32))
}

/// `μ^k = Π μ_i^{k_i}`.
pub fn mu_power(k: &LatticePoint) -> Scalar {
    k.coords()
        .iter()
        .enumerate()
        .fold(Scalar::one(), |acc, (i, &ki)| &acc * &Scalar::mu(i + 1).pow(ki as u32))
}

/// Right side of `[x^k∂_μ, x^r∂_μ] = Σ_i μ_i (r_i − k_i) x^{k+r−ε_i}∂_μ`.
pub fn jet_bracket_terms(k: &LatticePoint, r: &LatticePoint) -> Vec<(LatticePoint, Scalar)> {
    let n = k.dim();
    let sum = k + r;
    (1..=n)
        .filter_map(|i| {
            let c = r.coords()[i - 1] - k.coords()[i - 1];
            let target = &sum - &LatticePoint::basis(n, i);
            (c != 0 && is_multi_index(&target)).then(|| (target, &Scalar::mu(i) * &Scalar::from_int(c)))
        })
        .collect()
}

/// `ρ: 𝓛₊ → End(U)` with `ρ(x^k∂_μ) = 0` for `|k| > degree_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetRep {
    n: usize,
    dim: usize,
    degree_bound: u32,
    rho: BTreeMap<LatticePoint, Matrix>,
}

impl JetRep {
    /// Validates shapes, index ranges and every bracket relation.
    pub fn new(n: usize, dim: usize, degree_bound: u32, rho: BTreeMap<LatticePoint, Matrix>) -> Result<Self> {
        if n == 0 || dim == 0 {
            return Err(Error::InvalidRep("rank and dimension must be positive".into()));
        }
        for (k, m) in &rho {
            if k.dim() != n || !is_multi_index(k) {
                return Err(Error::InvalidRep(format!("bad multi-index {k}")));
            }
            let deg = abs_degree(k);
            if deg < 1 || deg > degree_bound as i64 {
                return Err(Error::InvalidRep(format!("multi-index {k} outside 1..={degree_bound}")));
            }
            if (m.rows(), m.cols()) != (dim, dim) {
                return Err(Error::InvalidRep(format!("matrix at {k} is not {dim}x{dim}")));
            }
        }
        let rho = rho.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        let rep = JetRep {
            n,
            dim,
            degree_bound,
            rho,
        };
        if let Some((k, r)) = rep.first_bracket_failure() {
            return Err(Error::InvalidRep(format!("bracket relation fails for ({k}) and ({r})")));
        }
        Ok(rep)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// Nonzero generators only.
    pub fn generators(&self) -> &BTreeMap<LatticePoint, Matrix> {
        &self.rho
    }

    /// `ρ(x^k∂_μ)`, zero outside the stored range.
    pub fn rho(&self, k: &LatticePoint) -> Matrix {
        self.rho.get(k).cloned().unwrap_or_else(|| Matrix::zeros(self.dim, self.dim))
    }

    /// All pairs with `1 ≤ |k|, |r| ≤ degree_bound`; zero generators are
    /// included since their brackets still constrain the stored ones.
    fn first_bracket_failure(&self) -> Option<(LatticePoint, LatticePoint)> {
        let all: Vec<LatticePoint> = (1..=self.degree_bound).flat_map(|d| multi_indices(self.n, d)).collect();
        for (a, k) in all.iter().enumerate() {
            for r in &all[a + 1..] {
                if !self.rho.contains_key(k) && !self.rho.contains_key(r) {
                    if abs_degree(k) + abs_degree(r) - 1 > self.degree_bound as i64 {
                        continue;
                    }
                }
                let lhs = self.rho(k).commutator(&self.rho(r));
                let mut rhs = Matrix::zeros(self.dim, self.dim);
                for (t, c) in jet_bracket_terms(k, r) {
                    if let Some(m) = self.rho.get(&t) {
                        rhs = rhs.add(&m.scale(&c));
                    }
                }
                if lhs != rhs {
                    return Some((k.clone(), r.clone()));
                }
            }
        }
        None
    }

    /// Text form accepted by [`JetRep::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\ndim {}\ndegree_bound {}\n", self.n, self.dim, self.degree_bound);
        for (k, m) in &self.rho {
            let _ = writeln!(out, "rho {k}");
            for i in 0..m.rows() {
                let row: Vec<String> = m.row(i).iter().map(|c| c.to_string()).collect();
                let _ = writeln!(out, "{}", row.join(", "));
            }
        }
        out
    }

    /// Parses
    ///
    /// ```text
    /// n 2
    /// dim 2
    /// degree_bound 1
    /// rho 1,0
    /// a*m1, m1
    /// 0, a*m1
    /// ```
    ///
    /// with one `rho` block per stored multi-index, rows comma-separated.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let mut header = |key: &str| -> Result<usize> {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing `{key}` line")))?;
            let rest = line
                .strip_prefix(key)
                .ok_or_else(|| Error::Parse(format!("expected `{key}`, found `{line}`")))?;
            rest.trim().parse().map_err(|_| Error::Parse(format!("bad value in `{line}`")))
        };
        let n = header("n")?;
        let dim = header("dim")?;
        let degree_bound = header("degree_bound")? as u32;
        let mut rho = BTreeMap::new();
        while let Some(line) = lines.next() {
            let idx = line
                .strip_prefix("rho")
                .ok_or_else(|| Error::Parse(format!("expected `rho <k>`, found `{line}`")))?;
            let k: LatticePoint = idx.trim().parse()?;
            let mut rows = Vec::with_capacity(dim);
            for _ in 0..dim {
                let row = lines.next().ok_or_else(|| Error::Parse(format!("matrix at {k} is short")))?;
                let entries = row.split(',').map(|e| e.trim().parse::<Scalar>()).collect::<Result<Vec<_>>>()?;
                if entries.len() != dim {
                    return Err(Error::Parse(format!("row `{row}` does not have {dim} entries")));
                }
                rows.push(entries);
            }
            if rho.insert(k.clone(), Matrix::from_rows(rows)).is_some() {
                return Err(Error::Parse(format!("duplicate rho block for {k}")));
            }
        }
        JetRep::new(n, dim, degree_bound, rho)
    }
}

/// Shipped representations used by the checks.
pub mod samples {
    use super::*;

    fn nilpotent(d: usize) -> Matrix {
        let mut m = Matrix::zeros(d, d);
        for i in 0..d.saturating_sub(1) {
            m[(i, i + 1)] = Scalar::one();
        }
        m
    }

    /// `ρ(x_i∂_μ) = αμ_i · Id + μ_i · N` with `N` one nilpotent Jordan block.
    pub fn jordan(n: usize, d: usize) -> JetRep {
        let id = Matrix::identity(d);
        let rho = (1..=n)
            .map(|i| {
                let mu = Scalar::mu(i);
                let m = id.scale(&(&Scalar::alpha() * &mu)).add(&nilpotent(d).scale(&mu));
                (LatticePoint::basis(n, i), m)
            })
            .collect();
        JetRep::new(n, d, 1, rho).expect("sample rep is valid")
    }

    /// The one-dimensional family `ρ(x_i∂_μ) = αμ_i`.
    pub fn tensor(n: usize) -> JetRep {
        jordan(n, 1)
    }

    /// `ρ(x_i∂_μ) = μ_i diag(α, α − 1)`, `ρ(x^k∂_μ) = μ^k E_12` for `|k| = 2`.
    pub fn graded_pair(n: usize) -> JetRep {
        let alpha = Scalar::alpha();
        let diag = Matrix::from_rows(vec![
            vec![alpha.clone(), Scalar::zero()],
            vec![Scalar::zero(), &alpha - &Scalar::one()],
        ]);
        let mut rho: BTreeMap<_, _> = (1..=n)
            .map(|i| (LatticePoint::basis(n, i), diag.scale(&Scalar::mu(i))))
            .collect();
        for k in multi_indices(n, 2) {
            let m = nilpotent(2).scale(&mu_power(&k));
            rho.insert(k, m);
        }
        JetRep::new(n, 2, 2, rho).expect("sample rep is valid")
    }

    /// The sample library, with names.
    pub fn all(n: usize) -> Vec<(&'static str, JetRep)> {
        vec![
            ("tensor", tensor(n)),
            ("jordan2", jordan(n, 2)),
            ("jordan3", jordan(n, 3)),
            ("graded-pair", graded_pair(n)),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c.iter().copied())
    }

    #[test]
    fn multi_index_enumeration() {
        assert_eq!(multi_indices(2, 2), vec![lp(&[0, 2]), lp(&[1, 1]), lp(&[2, 0])]);
        assert_eq!(multi_indices(3, 2).len(), 6);
        assert_eq!(multi_indices(1, 0), vec![lp(&[0])]);
        assert_eq!(multi_factorial(&lp(&[2, 3])), Scalar::from_int(12));
        assert_eq!(lattice_power(&lp(&[-2, 3]), &lp(&[3, 1])), Scalar::from_int(-24));
    }

    #[test]
    fn samples_validate() {
        for n in 1..=3 {
            for (_, rep) in samples::all(n) {
                assert!(rep.first_bracket_failure().is_none());
            }
        }
    }

    #[test]
    fn broken_reps_are_rejected() {
        // Two non-commuting degree-0 generators whose bracket is not the
        // prescribed combination.
        let e12 = Matrix::from_rows(vec![vec![Scalar::zero(), Scalar::one()], vec![Scalar::zero(), Scalar::zero()]]);
        let e21 = Matrix::from_rows(vec![vec![Scalar::zero(), Scalar::zero()], vec![Scalar::one(), Scalar::zero()]]);
        let rho = BTreeMap::from([(lp(&[1, 0]), e12), (lp(&[0, 1]), e21)]);
        assert!(matches!(JetRep::new(2, 2, 1, rho), Err(Error::InvalidRep(_))));

        // Degree-2 generator without the degree-0 action that must grade it.
        let rho = BTreeMap::from([(lp(&[1]), Matrix::identity(1)), (lp(&[2]), Matrix::identity(1))]);
        assert!(JetRep::new(1, 1, 2, rho).is_err());

        let rho = BTreeMap::from([(lp(&[2]), Matrix::identity(1))]);
        assert!(JetRep::new(1, 1, 1, rho).is_err());
        let rho = BTreeMap::from([(lp(&[1]), Matrix::identity(2))]);
        assert!(JetRep::new(1, 1, 1, rho).is_err());
    }

    #[test]
    fn text_round_trip() {
        for n in 1..=2 {
            for (_, rep) in samples::all(n) {
                assert_eq!(JetRep::parse(&rep.to_text()).unwrap(), rep);
            }
        }
        let text = "# self-extension\nn 1\ndim 2\ndegree_bound 1\n\nrho 1\na*m1, m1\n0, a*m1\n";
        assert_eq!(JetRep::parse(text).unwrap(), samples::jordan(1, 2));
        assert!(JetRep::parse("n 1\ndim 2\ndegree_bound 1\nrho 1\n1, 0\n").is_err());
        assert!(JetRep::parse("dim 1\n").is_err());
    }
}
