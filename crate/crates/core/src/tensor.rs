//! Operations on the doubled ring that respect the two tensor factors: the
//! first factor carries the `u` variables (restriction to the left torus),
//! the second the `v` variables (the diagonal).

use std::collections::BTreeMap;

use crate::laurent::{LaurentElement, TensorElement};
use crate::root::WeylElement;
use crate::weight::{BiWeight, Weight};

/// `f tensor 1`.
pub fn embed_u(f: &LaurentElement, v_ss: usize, v_central: usize) -> TensorElement {
    let zero = Weight::zero(v_ss, v_central);
    TensorElement::from_terms(
        f.terms()
            .map(|(e, c)| (BiWeight::new(e.clone(), zero.clone()), c.clone())),
    )
}

/// `1 tensor f`.
pub fn embed_v(f: &LaurentElement, u_ss: usize, u_central: usize) -> TensorElement {
    let zero = Weight::zero(u_ss, u_central);
    TensorElement::from_terms(
        f.terms()
            .map(|(e, c)| (BiWeight::new(zero.clone(), e.clone()), c.clone())),
    )
}

/// `f tensor g`.
pub fn tensor_of(f: &LaurentElement, g: &LaurentElement) -> TensorElement {
    let mut out = TensorElement::zero();
    for (eu, cu) in f.terms() {
        for (ev, cv) in g.terms() {
            out.add_term(BiWeight::new(eu.clone(), ev.clone()), cu * cv);
        }
    }
    out
}

/// Apply a Weyl element to the second factor only.
pub fn act_right(w: &WeylElement, f: &TensorElement) -> TensorElement {
    f.map_exponents(|e| BiWeight::new(e.u.clone(), w.act_weight(&e.v)))
}

/// Apply a Weyl element to the first factor only.
pub fn act_left(w: &WeylElement, f: &TensorElement) -> TensorElement {
    f.map_exponents(|e| BiWeight::new(w.act_weight(&e.u), e.v.clone()))
}

/// Group the terms by their `v` exponent; each bucket is a Laurent element
/// in the `u` variables.
pub fn split_by_v(f: &TensorElement) -> BTreeMap<Weight, LaurentElement> {
    let mut out: BTreeMap<Weight, LaurentElement> = BTreeMap::new();
    for (e, c) in f.terms() {
        out.entry(e.v.clone())
            .or_default()
            .add_term(e.u.clone(), c.clone());
    }
    out
}

/// Divisibility by `(1 - e^{-mu}) tensor 1`: every `v`-bucket of the first
/// factor must be divisible. Sign of `mu` is immaterial (unit multiple).
pub fn divisible_by_u_binomial(f: &TensorElement, mu: &Weight) -> bool {
    let divisor = LaurentElement::one_minus_exp(crate::laurent::Exponent::sub(
        &Weight::zero(mu.ss.len(), mu.central.len()),
        mu,
    ));
    split_by_v(f)
        .values()
        .all(|part| part.divide_exact(&divisor).is_some())
}

/// Exact division of the first factor by a Laurent element living in the
/// `u` variables; `None` when some `v`-bucket is not divisible.
pub fn divide_u_exact(f: &TensorElement, g: &LaurentElement) -> Option<TensorElement> {
    let mut out = TensorElement::zero();
    for (v_exp, part) in split_by_v(f) {
        let q = part.divide_exact(g)?;
        for (eu, c) in q.terms() {
            out.add_term(BiWeight::new(eu.clone(), v_exp.clone()), c.clone());
        }
    }
    Some(out)
}

/// `true` when the second factor is invariant under every generator listed.
pub fn v_invariant(rs: &crate::root::RootSystem, f: &TensorElement, gens: &[usize]) -> bool {
    gens.iter().all(|&i| {
        let s = WeylElement::generator(rs, i);
        act_right(&s, f) == *f
    })
}
