//! Exact rank over `ℚ(μ, α, β)` by fraction-free (Bareiss) elimination.

use crate::scalar::{gcd, Polynomial, Scalar};

/// Dense row-major matrix of scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Matrix::zeros(d, d);
        for i in 0..d {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn scalar(d: usize, c: &Scalar) -> Self {
        Matrix::identity(d).scale(c)
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn rank(&self) -> usize {
        rank(self.data.chunks(self.cols.max(1)).take(self.rows))
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

fn lcm(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() || a == b {
        return a.clone();
    }
    let g = gcd(a, b);
    a.mul(&b.div_exact(&g).expect("gcd divides"))
}

/// Row scaled by the lcm of its denominators, so every entry is polynomial.
fn clear_denominators(row: &[Scalar]) -> Vec<Polynomial> {
    let l = row
        .iter()
        .filter(|c| !c.is_zero())
        .fold(Polynomial::one(), |acc, c| lcm(&acc, c.denominator()));
    row.iter()
        .map(|c| {
            if c.is_zero() {
                Polynomial::zero()
            } else if c.denominator().is_one() {
                c.numerator().mul(&l)
            } else {
                let cof = l.div_exact(c.denominator()).expect("lcm divisible");
                c.numerator().mul(&cof)
            }
        })
        .collect()
}

/// Rank of the matrix with the given rows.
///
/// After step `k` every remaining entry is a `(k+1)`-minor of the cleared
/// matrix, so the division by the previous pivot is exact.
pub fn rank<'a>(rows: impl IntoIterator<Item = &'a [Scalar]>) -> usize {
    let mut a: Vec<Vec<Polynomial>> = rows
        .into_iter()
        .map(clear_denominators)
        .filter(|r| r.iter().any(|p| !p.is_zero()))
        .collect();
    let m = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = Polynomial::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        let Some(piv) = (r..m)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| (a[i][col].total_degree(), a[i][col].num_terms()))
        else {
            continue;
        };
        a.swap(r, piv);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let p = &pivot_row[col];
        for row in tail.iter_mut() {
            let f = row[col].clone();
            for j in col + 1..ncols {
                let v = Polynomial::mul_sub(p, &row[j], &f, &pivot_row[j]);
                row[j] = if prev.is_one() {
                    v
                } else {
                    v.div_exact(&prev).expect("Bareiss division is exact")
                };
            }
            row[col] = Polynomial::zero();
        }
        prev = head[r][col].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Sampler;

    /// Plain Gaussian elimination with field division.
    fn rank_by_division(m: &Matrix) -> usize {
        let mut a: Vec<Vec<Scalar>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        let mut r = 0;
        for col in 0..m.cols() {
            let Some(piv) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(r, piv);
            let inv = a[r][col].inv().unwrap();
            for i in r + 1..a.len() {
                let f = &a[i][col] * &inv;
                for j in col..m.cols() {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
            r += 1;
        }
        r
    }

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(Matrix::zeros(3, 4).rank(), 0);
        assert_eq!(Matrix::identity(3).rank(), 3);
        let m = Matrix::from_rows(vec![
            vec![s("m1"), s("m2")],
            vec![s("m1^2"), s("m1*m2")],
        ]);
        assert_eq!(m.rank(), 1);
        let m = Matrix::from_rows(vec![
            vec![s("1/(a - 1)"), s("b")],
            vec![s("a - 1"), s("b*(a - 1)^2")],
            vec![s("m1"), s("0")],
        ]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn agrees_with_division_route() {
        let mut smp = Sampler::new(11);
        let atoms = ["m1", "m2", "a", "b", "m1 - m2", "1/(a + 1)", "a*b", "2", "0", "0"];
        for _ in 0..40 {
            let (r, c) = (smp.int(1, 4) as usize, smp.int(1, 4) as usize);
            let base: Vec<Vec<Scalar>> = (0..r)
                .map(|_| (0..c).map(|_| s(atoms[smp.int(0, 9) as usize])).collect())
                .collect();
            // Append a combination of existing rows to force dependencies.
            let mut rows = base.clone();
            let w = s(atoms[smp.int(0, 6) as usize]);
            rows.push(base[0].iter().zip(base.last().unwrap()).map(|(x, y)| x + &(&w * y)).collect());
            let m = Matrix::from_rows(rows);
            assert_eq!(m.rank(), rank_by_division(&m));
        }
    }

    #[test]
    fn products_and_commutators() {
        let n = Matrix::from_rows(vec![vec![s("0"), s("1")], vec![s("0"), s("0")]]);
        assert!(n.mul(&n).is_zero());
        let d = Matrix::from_rows(vec![vec![s("a"), s("0")], vec![s("0"), s("a - 1")]]);
        assert_eq!(d.commutator(&n), n);
        assert!(Matrix::scalar(2, &s("b")).commutator(&n).is_zero());
    }
}
