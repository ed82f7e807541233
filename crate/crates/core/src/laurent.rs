//! Exact Laurent arithmetic in group algebras of lattices.
//!
//! [`GroupPoly`] is a finitely supported integer-coefficient map on an
//! exponent lattice. Instantiated at [`Weight`](crate::weight::Weight) it is
//! the representation ring of the covering torus; at
//! [`BiWeight`](crate::weight::BiWeight) it is the doubled ring used for the
//! two-variable localization picture. Zero coefficients are never stored, so
//! equality is structural.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::weight::{BiWeight, Weight};

/// Exponent lattices: totally ordered abelian groups with componentwise
/// extras needed by exact division.
pub trait Exponent: Clone + Ord + std::fmt::Debug {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn component_min(&self, other: &Self) -> Self;
    fn leq_componentwise(&self, other: &Self) -> bool;
}

/// A finitely supported map `exponent -> nonzero coefficient`.
///
/// Terms are kept in the canonical monomial order of the exponent type, so
/// derived equality and serialization order agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPoly<E: Exponent> {
    terms: BTreeMap<E, BigInt>,
}

/// Elements of the representation ring of the covering torus.
pub type LaurentElement = GroupPoly<Weight>;

/// Elements of the doubled ring; the factors are never mixed.
pub type TensorElement = GroupPoly<BiWeight>;

impl<E: Exponent> Default for GroupPoly<E> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<E: Exponent> GroupPoly<E> {
    pub fn zero() -> Self {
        GroupPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exp: E, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        GroupPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (E, BigInt)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&E, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &E) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, exp: E, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        GroupPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * k))
                .collect(),
        }
    }

    /// Shift every exponent by `m` (multiplication by the monomial `e^m`).
    pub fn shift(&self, m: &E) -> Self {
        GroupPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.add(m), c.clone()))
                .collect(),
        }
    }

    /// Apply a lattice map to every exponent. The map must be injective on
    /// the support (lattice automorphisms always are).
    pub fn map_exponents<F: Fn(&E) -> E>(&self, f: F) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Sum of coefficients (the augmentation).
    pub fn augment(&self) -> BigInt {
        let mut s = BigInt::zero();
        for c in self.terms.values() {
            s += c;
        }
        s
    }

    fn leading(&self) -> Option<(&E, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn support_min(&self) -> Option<E> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.component_min(e)))
    }

    /// Exact division: `Some(q)` with `self = q * g` when `g` divides
    /// `self`, `None` otherwise. Panics when `g` is zero.
    ///
    /// Both operands are first normalized by monomial units so that their
    /// supports have componentwise minimum zero; divisibility of the
    /// normalized parts is then ordinary polynomial divisibility, which long
    /// division along the monomial order decides.
    pub fn divide_exact(&self, g: &Self) -> Option<Self> {
        assert!(!g.is_zero(), "division by the zero element");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mf = self.support_min().unwrap();
        let mg = g.support_min().unwrap();
        let origin = mf.sub(&mf);
        let num = self.shift(&origin.sub(&mf)); // self * e^{-mf}
        let den = g.shift(&origin.sub(&mg)); // g * e^{-mg}

        let mut rem = num;
        let mut quot = Self::zero();
        let (lead_e, lead_c) = {
            let (e, c) = den.leading().unwrap();
            (e.clone(), c.clone())
        };
        while let Some((re, rc)) = rem.leading() {
            if !lead_e.leq_componentwise(re) {
                return None;
            }
            let (q, r) = rc.div_rem(&lead_c);
            if !r.is_zero() {
                return None;
            }
            let qe = re.sub(&lead_e);
            let t = Self::monomial(qe, q);
            rem = rem.sub(&t.mul(&den));
            quot = quot.add(&t);
        }
        // self = e^{mf} num = e^{mf} quot den = e^{mf - mg} quot g
        Some(quot.shift(&mf.sub(&mg)))
    }
}

impl LaurentElement {
    /// The unit for a lattice of the given block ranks.
    pub fn one(ss_rank: usize, central_rank: usize) -> Self {
        Self::monomial(Weight::zero(ss_rank, central_rank), BigInt::one())
    }

    /// `e^{w}`.
    pub fn exp(w: Weight) -> Self {
        Self::monomial(w, BigInt::one())
    }

    /// `1 - e^{w}`.
    pub fn one_minus_exp(w: Weight) -> Self {
        let one = Self::one(w.ss.len(), w.central.len());
        one.sub(&Self::exp(w))
    }

    /// `true` when every exponent is fixed by the given lattice action.
    pub fn is_invariant_under<F: Fn(&Weight) -> Weight>(&self, act: F) -> bool {
        self.map_exponents(act) == *self
    }
}

/// Public entry point for exact division with the zero-divisor error of the
/// operation contract surfaced as a `Result`.
pub fn divide_exact(
    f: &LaurentElement,
    g: &LaurentElement,
) -> Result<Option<LaurentElement>, crate::Error> {
    if g.is_zero() {
        return Err(crate::Error::ZeroDivisor);
    }
    Ok(f.divide_exact(g))
}

/// `true` iff `f` is divisible by `1 - e^{chi}`; equivalent to divisibility
/// by `1 - e^{-chi}` since the two differ by the unit `-e^{chi}`.
pub fn divisible_by_binomial(f: &LaurentElement, chi: &Weight) -> bool {
    if f.is_zero() {
        return true;
    }
    f.divide_exact(&LaurentElement::one_minus_exp(chi.clone()))
        .is_some()
}

/// Serialize as the canonical `[[exponent...], coeff]` list, sorted by the
/// monomial order. Coefficients are decimal strings so that arbitrary
/// precision survives JSON.
pub fn laurent_to_json(f: &LaurentElement) -> serde_json::Value {
    serde_json::Value::Array(
        f.terms()
            .map(|(e, c)| {
                let mut exps: Vec<serde_json::Value> = Vec::new();
                for x in e.ss.iter().chain(e.central.iter()) {
                    exps.push(serde_json::json!(x));
                }
                serde_json::json!([exps, c.to_string()])
            })
            .collect(),
    )
}

/// Serialize a doubled-ring element as `[[u...], [v...], coeff]` triples.
pub fn tensor_to_json(f: &TensorElement) -> serde_json::Value {
    let flat = |w: &Weight| -> Vec<i64> { w.ss.iter().chain(w.central.iter()).cloned().collect() };
    serde_json::Value::Array(
        f.terms()
            .map(|(e, c)| serde_json::json!([flat(&e.u), flat(&e.v), c.to_string()]))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ss: Vec<i64>) -> Weight {
        Weight::new(ss, vec![])
    }

    fn e(k: i64) -> LaurentElement {
        LaurentElement::exp(w(vec![k]))
    }

    #[test]
    fn difference_of_squares_divides() {
        // (1 - e^{-2w}) / (1 - e^{-w}) = 1 + e^{-w}
        let f = LaurentElement::one(1, 0).sub(&e(-2));
        let g = LaurentElement::one(1, 0).sub(&e(-1));
        let q = f.divide_exact(&g).expect("divisible");
        assert_eq!(q, LaurentElement::one(1, 0).add(&e(-1)));
        assert_eq!(q.mul(&g), f);
    }

    #[test]
    fn non_divisible_is_detected() {
        let f = LaurentElement::one(1, 0).sub(&e(-1));
        let g = LaurentElement::one(1, 0).sub(&e(-2));
        assert!(f.divide_exact(&g).is_none());
    }

    #[test]
    fn zero_dividend() {
        let g = LaurentElement::one(1, 0).sub(&e(-1));
        assert_eq!(
            LaurentElement::zero().divide_exact(&g),
            Some(LaurentElement::zero())
        );
    }

    #[test]
    fn zero_divisor_is_an_error() {
        assert!(matches!(
            divide_exact(&e(1), &LaurentElement::zero()),
            Err(crate::Error::ZeroDivisor)
        ));
    }

    #[test]
    fn binomial_sign_symmetry() {
        let chi = w(vec![2]);
        let f = LaurentElement::one(1, 0).sub(&e(2)).mul(&e(-3).add(&e(5)));
        assert!(divisible_by_binomial(&f, &chi));
        let negchi = w(vec![-2]);
        assert!(divisible_by_binomial(&f, &negchi));
        let g = LaurentElement::one(1, 0).add(&e(1));
        assert!(!divisible_by_binomial(&g, &chi));
    }
}
