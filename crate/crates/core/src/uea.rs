//! The universal enveloping algebra `U(W_μ)` in PBW normal form.
//!
//! PBW monomials are words of generator indices sorted non-decreasingly in
//! lexicographic order. Any word is straightened with the rewrite
//! `e_a e_b → e_b e_a + μ·(b − a) e_{a+b}` applied at the first adjacent
//! inversion `a > b`. Each rewrite strictly lowers the measure
//! `(length, inversions)`, so a worklist that always expands the largest
//! pending word first touches every word at most once.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::linear::LinComb;
use crate::scalar::{binomial, Scalar};
use crate::solalg::bracket_basis;

/// A sorted word `e_{a_1} ⋯ e_{a_k}`, `a_1 ≤ … ≤ a_k`. The empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PbwMonomial(Vec<LatticePoint>);

impl PbwMonomial {
    pub fn unit() -> Self {
        PbwMonomial(Vec::new())
    }

    /// Sorts the word; only valid as a PBW monomial when the letters commute,
    /// so this is reserved for words that are already sorted.
    pub fn from_sorted(word: Vec<LatticePoint>) -> Option<Self> {
        word.windows(2)
            .all(|w| w[0] <= w[1])
            .then_some(PbwMonomial(word))
    }

    pub fn word(&self) -> &[LatticePoint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "E({})", p)?;
        }
        Ok(())
    }
}

/// A canonical element of `U(W_μ)`: PBW monomials with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UeaElement(LinComb<PbwMonomial>);

impl UeaElement {
    pub fn zero() -> Self {
        UeaElement(LinComb::zero())
    }

    pub fn unit() -> Self {
        UeaElement(LinComb::basis(PbwMonomial::unit()))
    }

    /// `E_r`, the image of `t^r d_μ`.
    pub fn generator(r: LatticePoint) -> Self {
        UeaElement(LinComb::basis(PbwMonomial(vec![r])))
    }

    pub fn terms(&self) -> &LinComb<PbwMonomial> {
        &self.0
    }

    pub fn num_terms(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        UeaElement(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        UeaElement(self.0.sub(&other.0))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        UeaElement(self.0.scale(c))
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        self.0.add_scaled(&other.0, c);
    }

    /// Longest PBW word present.
    pub fn max_len(&self) -> usize {
        self.0.keys().map(PbwMonomial::len).max().unwrap_or(0)
    }
}

fn inversions(word: &[LatticePoint]) -> usize {
    let mut count = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                count += 1;
            }
        }
    }
    count
}

/// Pending words keyed by their rewrite measure so the largest pops first.
#[derive(Default)]
struct Worklist {
    pending: BTreeMap<(usize, usize, Vec<LatticePoint>), Scalar>,
}

impl Worklist {
    fn push(&mut self, word: Vec<LatticePoint>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (word.len(), inversions(&word), word);
        use std::collections::btree_map::Entry;
        match self.pending.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn run(mut self) -> UeaElement {
        let mut out = LinComb::zero();
        while let Some(((_, inv, word), c)) = self.pending.pop_last() {
            if inv == 0 {
                out.add_term(PbwMonomial(word), c);
                continue;
            }
            let i = word
                .windows(2)
                .position(|w| w[0] > w[1])
                .expect("word with inversions has an adjacent one");
            let (a, b) = (&word[i], &word[i + 1]);
            let (sum, coeff) = bracket_basis(a, b);

            let mut swapped = word.clone();
            swapped.swap(i, i + 1);

            let mut contracted = Vec::with_capacity(word.len() - 1);
            contracted.extend_from_slice(&word[..i]);
            contracted.push(sum);
            contracted.extend_from_slice(&word[i + 2..]);

            let contracted_coeff = &c * &coeff;
            self.push(swapped, c);
            self.push(contracted, contracted_coeff);
        }
        UeaElement(out)
    }
}

/// Rewrites an arbitrary word of generators into PBW normal form.
pub fn pbw_normalize(word: &[LatticePoint]) -> UeaElement {
    let mut wl = Worklist::default();
    wl.push(word.to_vec(), Scalar::one());
    wl.run()
}

/// Normalizes a formal combination of words in one pass.
pub fn pbw_normalize_sum<I>(words: I) -> UeaElement
where
    I: IntoIterator<Item = (Vec<LatticePoint>, Scalar)>,
{
    let mut wl = Worklist::default();
    for (w, c) in words {
        wl.push(w, c);
    }
    wl.run()
}

pub fn uea_mul(a: &UeaElement, b: &UeaElement) -> UeaElement {
    let mut wl = Worklist::default();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let mut w = Vec::with_capacity(ma.len() + mb.len());
            w.extend_from_slice(ma.word());
            w.extend_from_slice(mb.word());
            wl.push(w, ca * cb);
        }
    }
    wl.run()
}

/// `{X, Y} = XY + YX`.
pub fn anticommutator(a: &UeaElement, b: &UeaElement) -> UeaElement {
    uea_mul(a, b).add(&uea_mul(b, a))
}

pub fn commutator(a: &UeaElement, b: &UeaElement) -> UeaElement {
    uea_mul(a, b).sub(&uea_mul(b, a))
}

/// `(−1)^i C(m, i)`.
pub fn signed_binomial(m: u32, i: u32) -> Scalar {
    let c = binomial(m, i);
    Scalar::from_rational(if i % 2 == 0 { c } else { -c })
}

/// The terms `(−1)^i C(m,i) · [k − ih, s + ih]` of a differentiator, as raw words.
pub fn differentiator_words(
    m: u32,
    h: &LatticePoint,
    k: &LatticePoint,
    s: &LatticePoint,
) -> Vec<(Vec<LatticePoint>, Scalar)> {
    (0..=m)
        .map(|i| {
            let shift = h.scaled(i as i64);
            (vec![k - &shift, s + &shift], signed_binomial(m, i))
        })
        .collect()
}

/// `Ω^{(m,h)}_{k,s} = Σ_{i=0}^m (−1)^i C(m,i) e_{k−ih} e_{s+ih}`, normalized.
pub fn differentiator(m: u32, h: &LatticePoint, k: &LatticePoint, s: &LatticePoint) -> UeaElement {
    pbw_normalize_sum(differentiator_words(m, h, k, s))
}

#[derive(Debug, Clone, Serialize)]
pub struct OmegaReport {
    pub r: u32,
    pub k: LatticePoint,
    pub s: LatticePoint,
    pub p: LatticePoint,
    pub q: LatticePoint,
    pub h: LatticePoint,
    pub equal: bool,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
}

/// Evaluates both sides of the order-raising differentiator identity
///
/// `Σ_{i,j} (−1)^{i+j} C(r,i) C(r,j) ( {Ω_{k−ih,s−jh}, Ω_{q+ih,p+jh}} − {Ω_{k−ih,q−jh}, Ω_{s+ih,p+jh}} )
///   = μ·(q−s) · μ·(p−k+2rh) · Ω^{(4r,h)}_{k+p+2rh, s+q−2rh}`
///
/// (all `Ω` on the left of order `r` and step `h`) and compares them as
/// canonical elements.
pub fn verify_omega_identity(
    r: u32,
    k: &LatticePoint,
    s: &LatticePoint,
    p: &LatticePoint,
    q: &LatticePoint,
    h: &LatticePoint,
) -> Result<OmegaReport> {
    if r < 2 {
        return Err(Error::InvalidOrder(r));
    }
    let lhs = omega_lhs(r, k, s, p, q, h);
    let rhs = omega_rhs(r, k, s, p, q, h);
    Ok(OmegaReport {
        r,
        k: k.clone(),
        s: s.clone(),
        p: p.clone(),
        q: q.clone(),
        h: h.clone(),
        equal: lhs == rhs,
        lhs_terms: lhs.num_terms(),
        rhs_terms: rhs.num_terms(),
    })
}

pub fn omega_lhs(
    r: u32,
    k: &LatticePoint,
    s: &LatticePoint,
    p: &LatticePoint,
    q: &LatticePoint,
    h: &LatticePoint,
) -> UeaElement {
    let om = |a: &LatticePoint, b: &LatticePoint| differentiator(r, h, a, b);
    let mut lhs = UeaElement::zero();
    for i in 0..=r {
        let ih = h.scaled(i as i64);
        for j in 0..=r {
            let jh = h.scaled(j as i64);
            let c = &signed_binomial(r, i) * &signed_binomial(r, j);
            let first = anticommutator(&om(&(k - &ih), &(s - &jh)), &om(&(q + &ih), &(p + &jh)));
            let second = anticommutator(&om(&(k - &ih), &(q - &jh)), &om(&(s + &ih), &(p + &jh)));
            lhs.add_scaled(&first.sub(&second), &c);
        }
    }
    lhs
}

pub fn omega_rhs(
    r: u32,
    k: &LatticePoint,
    s: &LatticePoint,
    p: &LatticePoint,
    q: &LatticePoint,
    h: &LatticePoint,
) -> UeaElement {
    let two_rh = h.scaled(2 * r as i64);
    let factor = &(q - s).mu_dot() * &(&(p - k) + &two_rh).mu_dot();
    differentiator(4 * r, h, &(&(k + p) + &two_rh), &(&(s + q) - &two_rh)).scale(&factor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Sampler;
    use crate::solalg::{bracket, AlgebraElement};

    fn lp(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c.iter().copied())
    }

    fn mono(words: &[&[i64]]) -> PbwMonomial {
        PbwMonomial::from_sorted(words.iter().map(|w| lp(w)).collect()).unwrap()
    }

    fn elem(terms: Vec<(PbwMonomial, Scalar)>) -> UeaElement {
        UeaElement(terms.into_iter().collect())
    }

    /// Image of a Lie algebra element in `U(W_μ)`.
    fn embed(x: &AlgebraElement) -> UeaElement {
        let mut out = UeaElement::zero();
        for (r, c) in x.terms() {
            out.add_scaled(&UeaElement::generator(r.clone()), c);
        }
        out
    }

    #[test]
    fn normalize_trivial_words() {
        assert_eq!(pbw_normalize(&[]), UeaElement::unit());
        let w = vec![lp(&[-1]), lp(&[0]), lp(&[0]), lp(&[3])];
        assert_eq!(pbw_normalize(&w), elem(vec![(PbwMonomial(w.clone()), Scalar::one())]));
    }

    #[test]
    fn normalize_single_swap() {
        // E_1 E_0 = E_0 E_1 + μ·(0 − 1) E_1
        let got = pbw_normalize(&[lp(&[1]), lp(&[0])]);
        let expect = elem(vec![
            (mono(&[&[0], &[1]]), Scalar::one()),
            (mono(&[&[1]]), -Scalar::mu(1)),
        ]);
        assert_eq!(got, expect);
        let e1 = UeaElement::generator(lp(&[1]));
        let e0 = UeaElement::generator(lp(&[0]));
        assert_eq!(uea_mul(&e1, &e0), got);
    }

    #[test]
    fn multiplication_examples() {
        let e0 = UeaElement::generator(lp(&[0]));
        assert_eq!(uea_mul(&UeaElement::unit(), &e0), e0);
        assert_eq!(uea_mul(&e0, &e0), elem(vec![(mono(&[&[0], &[0]]), Scalar::one())]));
    }

    #[test]
    fn anticommutator_examples() {
        let e0 = UeaElement::generator(lp(&[0]));
        let e1 = UeaElement::generator(lp(&[1]));
        let a = e1.scale(&Scalar::beta());
        assert_eq!(anticommutator(&a, &UeaElement::unit()), a.scale(&Scalar::from_int(2)));
        assert_eq!(
            anticommutator(&e0, &e0),
            elem(vec![(mono(&[&[0], &[0]]), Scalar::from_int(2))])
        );
        assert_eq!(
            anticommutator(&e1, &e0),
            elem(vec![
                (mono(&[&[0], &[1]]), Scalar::from_int(2)),
                (mono(&[&[1]]), -Scalar::mu(1)),
            ])
        );
    }

    #[test]
    fn differentiator_low_orders() {
        let (h, k, s) = (lp(&[1, 0]), lp(&[2, 1]), lp(&[-1, 1]));
        assert_eq!(differentiator(0, &h, &k, &s), pbw_normalize(&[k.clone(), s.clone()]));
        let one = pbw_normalize(&[k.clone(), s.clone()])
            .sub(&pbw_normalize(&[&k - &h, &s + &h]));
        assert_eq!(differentiator(1, &h, &k, &s), one);
        let two = pbw_normalize(&[k.clone(), s.clone()])
            .sub(&pbw_normalize(&[&k - &h, &s + &h]).scale(&Scalar::from_int(2)))
            .add(&pbw_normalize(&[&k - &h.scaled(2), &s + &h.scaled(2)]));
        assert_eq!(differentiator(2, &h, &k, &s), two);
    }

    #[test]
    fn commutator_matches_lie_bracket() {
        for n in 1..=2 {
            for a in crate::lattice::box_points(n, 2) {
                for b in crate::lattice::box_points(n, 2) {
                    let ea = UeaElement::generator(a.clone());
                    let eb = UeaElement::generator(b.clone());
                    let br = bracket(&AlgebraElement::generator(a.clone()), &AlgebraElement::generator(b.clone()));
                    assert_eq!(commutator(&ea, &eb), embed(&br));
                }
            }
        }
    }

    #[test]
    fn multiplication_is_associative() {
        let mut s = Sampler::new(3);
        for _ in 0..30 {
            let n = 2;
            let pick = |s: &mut Sampler| {
                let w = s.word(n, 2, 2);
                pbw_normalize(&w).scale(&s.small_rational())
            };
            let (a, b, c) = (pick(&mut s), pick(&mut s), pick(&mut s));
            assert_eq!(uea_mul(&uea_mul(&a, &b), &c), uea_mul(&a, &uea_mul(&b, &c)));
        }
    }

    #[test]
    fn normalization_agrees_with_stepwise_products() {
        let mut s = Sampler::new(11);
        for _ in 0..20 {
            let w = s.word(2, 2, 4);
            let stepwise = w.iter().fold(UeaElement::unit(), |acc, g| {
                uea_mul(&acc, &UeaElement::generator(g.clone()))
            });
            assert_eq!(pbw_normalize(&w), stepwise);
        }
    }

    #[test]
    fn omega_identity_rejects_low_order() {
        let z = lp(&[0]);
        assert!(matches!(
            verify_omega_identity(1, &z, &z, &z, &z, &z),
            Err(Error::InvalidOrder(1))
        ));
    }

    #[test]
    fn omega_identity_degenerate_and_oracle_tuple() {
        let z = lp(&[0]);
        let rep = verify_omega_identity(2, &lp(&[1]), &z, &z, &lp(&[1]), &z).unwrap();
        assert!(rep.equal);
        assert_eq!(rep.rhs_terms, 0);
        let rep = verify_omega_identity(2, &lp(&[1]), &z, &z, &lp(&[1]), &lp(&[1])).unwrap();
        assert!(rep.equal);
        assert!(rep.rhs_terms > 0);
    }
}
