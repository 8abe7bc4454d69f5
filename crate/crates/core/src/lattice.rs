//! `ℤⁿ` index arithmetic for the lattice `Γ_μ = {μ·r}`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::{Polynomial, Scalar, Var};

/// A point `r ∈ ℤⁿ`, standing for `μ·r ∈ Γ_μ`. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticePoint(SmallVec<[i64; 4]>);

impl LatticePoint {
    pub fn new(coords: impl IntoIterator<Item = i64>) -> Self {
        LatticePoint(coords.into_iter().collect())
    }

    pub fn zero(n: usize) -> Self {
        LatticePoint(SmallVec::from_elem(0, n))
    }

    /// `ε_i`, 1-based.
    pub fn basis(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i));
        let mut p = Self::zero(n);
        p.0[i - 1] = 1;
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The linear form `μ·r = Σ μ_i r_i`.
    pub fn mu_dot(&self) -> Scalar {
        let mut p = Polynomial::zero();
        for (i, &c) in self.0.iter().enumerate() {
            if c != 0 {
                p = p.add(&Polynomial::var(Var::Mu(i + 1)).scale(&Polynomial::from_int(c).constant_term()));
            }
        }
        Scalar::from_poly(p)
    }

    pub fn scaled(&self, k: i64) -> Self {
        LatticePoint(self.0.iter().map(|&c| c * k).collect())
    }

    /// Max-norm, used for box membership.
    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn in_box(&self, radius: i64) -> bool {
        self.max_abs() <= radius
    }
}

/// Total lexicographic order; identical to `Ord`.
pub fn lex_compare(a: &LatticePoint, b: &LatticePoint) -> Ordering {
    a.cmp(b)
}

/// Every point of `[-radius, radius]ⁿ`, in lexicographic order.
pub fn box_points(n: usize, radius: i64) -> Vec<LatticePoint> {
    let side = (2 * radius + 1) as usize;
    let total = side.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut coords = SmallVec::from_elem(0, n);
            for slot in (0..n).rev() {
                coords[slot] = (idx % side) as i64 - radius;
                idx /= side;
            }
            LatticePoint(coords)
        })
        .collect()
}

fn zip_with(a: &LatticePoint, b: &LatticePoint, f: impl Fn(i64, i64) -> i64) -> LatticePoint {
    assert_eq!(a.dim(), b.dim(), "lattice dimension mismatch");
    LatticePoint(a.0.iter().zip(&b.0).map(|(&x, &y)| f(x, y)).collect())
}

impl Add for &LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: LatticePoint) -> LatticePoint {
        &self + &rhs
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: LatticePoint) -> LatticePoint {
        &self - &rhs
    }
}

impl Neg for &LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        self.scaled(-1)
    }
}

impl Mul<&LatticePoint> for i64 {
    type Output = LatticePoint;
    fn mul(self, rhs: &LatticePoint) -> LatticePoint {
        rhs.scaled(self)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses comma-separated integers, e.g. `"2,-3"`.
impl FromStr for LatticePoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad lattice point {s:?}")))
            })
            .collect::<Result<SmallVec<[i64; 4]>>>()?;
        Ok(LatticePoint(coords))
    }
}
