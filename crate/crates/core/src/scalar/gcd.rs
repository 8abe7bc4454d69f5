//! Multivariate polynomial GCD by recursive content / primitive-part
//! reduction and a primitive pseudo-remainder sequence in the main variable.

use num_traits::One;

use super::poly::Polynomial;

/// Greatest common divisor, normalized to be monic under graded-lex order.
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    gcd_rec(a, b).monic()
}

fn gcd_rec(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    if a == b {
        return a.clone();
    }
    if a.total_degree() <= b.total_degree() {
        if b.div_exact(a).is_some() {
            return a.clone();
        }
    } else if a.div_exact(b).is_some() {
        return b.clone();
    }
    let var = main_variable(a, b);
    let ua = a.to_univariate(var);
    let ub = b.to_univariate(var);
    if ua.len() == 1 {
        return gcd_with_content(a, &ub);
    }
    if ub.len() == 1 {
        return gcd_with_content(b, &ua);
    }

    let ca = content(&ua);
    let cb = content(&ub);
    let c = gcd_rec(&ca, &cb);
    let pa = divide_coeffs(&ua, &ca);
    let pb = divide_coeffs(&ub, &cb);

    let (mut f, mut g) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
    loop {
        let r = trim(pseudo_rem(&f, &g));
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            // Nonzero remainder free of the main variable: primitive gcd is 1.
            g = vec![Polynomial::one()];
            break;
        }
        f = g;
        g = primitive_part(&r);
    }
    let g = primitive_part(&g);
    c.mul(&Polynomial::from_univariate(&g, var))
}

/// A variable present in only one argument if any (the gcd is then a gcd of
/// coefficients), else the one of least joint degree.
fn main_variable(a: &Polynomial, b: &Polynomial) -> usize {
    let top = a.max_var().max(b.max_var()).expect("non-constant");
    (0..=top)
        .filter_map(|v| {
            let (da, db) = (a.degree_in(v), b.degree_in(v));
            match (da, db) {
                (0, 0) => None,
                (0, _) | (_, 0) => Some((0, v)),
                _ => Some((da.max(db), v)),
            }
        })
        .min()
        .expect("non-constant")
        .1
}

/// gcd of `free` (independent of the main variable) with every coefficient.
fn gcd_with_content(free: &Polynomial, coeffs: &[Polynomial]) -> Polynomial {
    let mut g = free.clone();
    for c in coeffs {
        if g.is_constant() {
            break;
        }
        g = gcd_rec(&g, c);
    }
    g
}

fn content(coeffs: &[Polynomial]) -> Polynomial {
    let mut g = Polynomial::zero();
    for c in coeffs {
        g = gcd_rec(&g, c);
        if g.is_constant() && !g.is_zero() {
            return Polynomial::one();
        }
    }
    g.monic()
}

fn divide_coeffs(coeffs: &[Polynomial], by: &Polynomial) -> Vec<Polynomial> {
    coeffs
        .iter()
        .map(|c| c.div_exact(by).expect("content divides every coefficient"))
        .collect()
}

fn primitive_part(coeffs: &[Polynomial]) -> Vec<Polynomial> {
    let c = content(coeffs);
    let mut out = divide_coeffs(coeffs, &c);
    // Keep rational coefficient growth in check.
    if let Some(lead) = out.last() {
        let lc = lead.leading_coefficient();
        if !lc.is_one() {
            let inv = lc.recip();
            out = out.iter().map(|p| p.scale(&inv)).collect();
        }
    }
    out
}

fn trim(mut coeffs: Vec<Polynomial>) -> Vec<Polynomial> {
    while coeffs.last().is_some_and(Polynomial::is_zero) {
        coeffs.pop();
    }
    coeffs
}

/// Sparse pseudo-remainder: `lc(g)^e · f mod g` for some `e`.
fn pseudo_rem(f: &[Polynomial], g: &[Polynomial]) -> Vec<Polynomial> {
    let dg = g.len() - 1;
    let lc = &g[dg];
    let mut r = f.to_vec();
    while r.len() > dg && !r.is_empty() {
        let dr = r.len() - 1;
        let t = r[dr].clone();
        let shift = dr - dg;
        for c in r.iter_mut() {
            *c = c.mul(lc);
        }
        for (i, gc) in g.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&t.mul(gc));
        }
        debug_assert!(r[dr].is_zero());
        r = trim(r);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Var;

    fn v(var: Var) -> Polynomial {
        Polynomial::var(var)
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        let m1 = v(Var::Mu(1));
        let m2 = v(Var::Mu(2));
        let a = m1.mul(&m1).sub(&m2.mul(&m2));
        let b = m1.sub(&m2);
        assert_eq!(gcd(&a, &b), b.monic());
    }

    #[test]
    fn gcd_recovers_planted_common_factor() {
        let a_ = v(Var::Alpha);
        let b_ = v(Var::Beta);
        let m1 = v(Var::Mu(1));
        let common = a_.mul(&m1).add(&b_).sub(&Polynomial::from_int(2));
        let p = common.mul(&m1.add(&a_));
        let q = common.mul(&b_.mul(&b_).add(&m1));
        assert_eq!(gcd(&p, &q), common.monic());
    }

    #[test]
    fn coprime_and_constant_cases() {
        let m1 = v(Var::Mu(1));
        let m2 = v(Var::Mu(2));
        assert!(gcd(&m1, &m2).is_one());
        assert!(gcd(&Polynomial::from_int(6), &m1).is_one());
        assert_eq!(gcd(&Polynomial::zero(), &m1.scale(&Polynomial::from_int(-3).constant_term())), m1);
    }
}
