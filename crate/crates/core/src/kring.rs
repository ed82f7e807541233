//! The equivariant Grothendieck ring of a compactification instance in its
//! `(I, v)` coordinates, with two independent multiplication routes (the
//! structure-constant rule and pointwise multiplication of localized
//! tuples), the induced ordinary ring over the toric-bundle ring, the
//! two-path cross-check of the ordinary multiplication, and the relation
//! checks of the presentation over the wonderful sub-instance.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::fan::Fan;
use crate::laurent::{LaurentElement, TensorElement};
use crate::root::{RootSystem, SubsetMask};
use crate::steinberg::{FlagKClass, SteinbergData};
use crate::tensor;
use crate::toric::{GkmTuple, ToricModel, WallViolation};
use crate::weight::Weight;
use crate::Error;

/// Coordinate key of the equivariant basis: the subset mask `I` and the
/// index of an element of `C^I`.
pub type CoordKey = (SubsetMask, usize);

/// An element of the equivariant K-ring in basis coordinates; each
/// coefficient is a localized tuple over the doubled ring with
/// Weyl-invariant second factor.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EquivariantClass {
    pub coords: BTreeMap<CoordKey, GkmTuple<TensorElement>>,
}

impl EquivariantClass {
    pub fn zero() -> Self {
        Self::default()
    }

    fn add_coord(&mut self, key: CoordKey, t: GkmTuple<TensorElement>) {
        if t.is_zero() {
            return;
        }
        match self.coords.remove(&key) {
            None => {
                self.coords.insert(key, t);
            }
            Some(old) => {
                let sum = old.add(&t);
                if !sum.is_zero() {
                    self.coords.insert(key, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, t) in &other.coords {
            out.add_coord(*k, t.clone());
        }
        out
    }
}

/// An element of the ordinary K-ring: for each basis index `v` and each
/// orbit position `i`, a flag-ring coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinaryClass {
    pub coords: Vec<Vec<FlagKClass>>,
}

impl OrdinaryClass {
    pub fn zero(order: usize, m: usize) -> Self {
        OrdinaryClass {
            coords: vec![vec![FlagKClass::zero(order); m]; order],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords
            .iter()
            .all(|row| row.iter().all(|f| f.is_zero()))
    }
}

/// Report of the localization membership conditions.
#[derive(Clone, Debug, serde::Serialize)]
pub struct MembershipReport {
    pub ok: bool,
    /// Failures of the reflection congruence: (cone, simple-root index).
    pub reflection_failures: Vec<(usize, usize)>,
    /// Failures of the wall congruence.
    pub wall_failures: Vec<WallViolation>,
}

/// The multiplication tables of the ordinary ring model.
pub struct OrdinaryModel {
    /// `gamma_v * gamma_v'` for all pairs.
    pub gamma_table: Vec<Vec<OrdinaryClass>>,
    /// `xbar_i * xbar_j = sum_k coeff * xbar_k`.
    pub toric_table: Vec<Vec<Vec<FlagKClass>>>,
    /// Free rank over the integers.
    pub z_rank: usize,
}

/// A full compactification instance: root system, Steinberg data, the
/// chamber subdivision with its toric model, and the wonderful sub-instance
/// on the undivided chamber.
pub struct KringModel {
    pub sd: SteinbergData,
    pub toric: ToricModel,
    pub wonderful: ToricModel,
}

impl KringModel {
    pub fn new(rs: &RootSystem, fan: Fan, psi: Vec<i64>, direction: Vec<i64>) -> Result<Self, Error> {
        let sd = SteinbergData::new(rs)?;
        let toric = ToricModel::new(rs, fan, psi, direction)?;
        let chamber = crate::fan::positive_chamber_fan(rs)?;
        let n = rs.ss_rank;
        let wdir: Vec<i64> = (0..n).map(|k| 1i64 << k).collect();
        let wonderful = ToricModel::new(rs, chamber, vec![0; n], wdir)?;
        Ok(KringModel {
            sd,
            toric,
            wonderful,
        })
    }

    pub fn order(&self) -> usize {
        self.sd.order()
    }

    pub fn cone_count(&self) -> usize {
        self.toric.cone_count()
    }

    fn u_rank(&self) -> (usize, usize) {
        (self.sd.rs.ss_rank, self.sd.rs.central_rank)
    }

    /// The constant tuple `1 tensor 1`.
    pub fn unit_coefficient(&self) -> GkmTuple<TensorElement> {
        let (r, c) = self.u_rank();
        let one = TensorElement::monomial(
            crate::weight::BiWeight::new(Weight::zero(r, c), Weight::zero(r, c)),
            BigInt::one(),
        );
        GkmTuple::constant(self.cone_count(), one)
    }

    /// The localized tuple of the basis element indexed by `(I, v)`:
    /// the constant `prod_{alpha in I}(1 - e^{alpha(u)}) tensor f_v`.
    pub fn basis_tuple(&self, mask: SubsetMask, v: usize) -> GkmTuple<TensorElement> {
        let t = tensor::tensor_of(&self.sd.boundary_product_pos(mask), &self.sd.f[v]);
        GkmTuple::constant(self.cone_count(), t)
    }

    /// The basis element `(I, v)` in coordinates; `v` must lie in `C^I`.
    pub fn basis_element(&self, mask: SubsetMask, v: usize) -> Result<EquivariantClass, Error> {
        if self.sd.cset_mask[v] != mask {
            return Err(Error::Validation(format!(
                "element {v} does not lie in the partition piece of mask {mask:#b}"
            )));
        }
        let mut out = EquivariantClass::zero();
        out.add_coord((mask, v), self.unit_coefficient());
        Ok(out)
    }

    pub fn unit(&self) -> EquivariantClass {
        self.basis_element(0, 0).expect("identity lies in C^empty")
    }

    /// Lift of an orbit-basis class as an equivariant class supported on
    /// the `(empty, identity)` coordinate.
    pub fn orbit_lift(&self, i: usize) -> EquivariantClass {
        let (r, c) = self.u_rank();
        let t = GkmTuple {
            entries: self.toric.orbit_classes[i]
                .entries
                .iter()
                .map(|e| tensor::embed_u(e, r, c))
                .collect(),
        };
        let mut out = EquivariantClass::zero();
        out.add_coord((0, 0), t);
        out
    }

    /// The localized tuple of a coordinate class.
    pub fn tuple_of(&self, e: &EquivariantClass) -> GkmTuple<TensorElement> {
        let mut out = GkmTuple::zero(self.cone_count());
        for (&(mask, v), coeff) in &e.coords {
            out = out.add(&coeff.mul(&self.basis_tuple(mask, v)));
        }
        out
    }

    /// Recover coordinates from a localized tuple: per cone, expand in the
    /// Steinberg basis placed in the diagonal variables, then divide the
    /// resulting tuples by the boundary products. Failure of any exact
    /// division is an internal inconsistency.
    pub fn coords_of(&self, t: &GkmTuple<TensorElement>) -> Result<EquivariantClass, Error> {
        let n = self.order();
        let m = self.cone_count();
        let mut per_w: Vec<Vec<TensorElement>> = vec![Vec::with_capacity(m); n];
        for s in 0..m {
            let coeffs = self.sd.expand_tensor(&t.entries[s])?;
            for (w, c) in coeffs.into_iter().enumerate() {
                per_w[w].push(c);
            }
        }
        let mut out = EquivariantClass::zero();
        for w in 0..n {
            let mask = self.sd.cset_mask[w];
            let divisor = self.sd.boundary_product_pos(mask);
            let tuple = GkmTuple {
                entries: per_w[w].clone(),
            };
            if tuple.is_zero() {
                continue;
            }
            let divided: Vec<TensorElement> = tuple
                .entries
                .iter()
                .map(|e| {
                    tensor::divide_u_exact(e, &divisor).ok_or_else(|| {
                        Error::Internal(format!(
                            "coordinate solve: boundary product does not divide at w = {w}"
                        ))
                    })
                })
                .collect::<Result<_, _>>()?;
            out.add_coord((mask, w), GkmTuple { entries: divided });
        }
        // round trip
        if self.tuple_of(&out) != *t {
            return Err(Error::Internal(
                "coordinate solve failed to reconstruct the tuple".into(),
            ));
        }
        Ok(out)
    }

    /// Pointwise multiplication through the localized tuples.
    pub fn multiply_pointwise(
        &self,
        a: &EquivariantClass,
        b: &EquivariantClass,
    ) -> Result<EquivariantClass, Error> {
        let ta = self.tuple_of(a);
        let tb = self.tuple_of(b);
        self.coords_of(&ta.mul(&tb))
    }

    /// Multiplication through the structure constants: the bilinear
    /// extension of the basis product rule.
    pub fn multiply_structural(
        &self,
        a: &EquivariantClass,
        b: &EquivariantClass,
    ) -> EquivariantClass {
        let mut out = EquivariantClass::zero();
        for (&(mi, v), ca) in &a.coords {
            for (&(mip, vp), cb) in &b.coords {
                let base = ca.mul(cb);
                let union = mi | mip;
                let inter = mi & mip;
                for w in 0..self.order() {
                    let aw = &self.sd.a[v][vp][w];
                    if aw.is_zero() {
                        continue;
                    }
                    let j = self.sd.cset_mask[w];
                    debug_assert_eq!(j & !union, 0, "structure-constant support");
                    let u_factor = self
                        .sd
                        .boundary_product_pos(inter)
                        .mul(&self.sd.boundary_product_pos(union & !j));
                    let factor = tensor::tensor_of(&u_factor, aw);
                    out.add_coord((j, w), base.scale(&factor));
                }
            }
        }
        out
    }

    /// The localization membership conditions on a tuple: the reflection
    /// congruence at root-orthogonal facets and the wall congruences.
    pub fn check_membership(&self, t: &GkmTuple<TensorElement>) -> MembershipReport {
        let mut reflection_failures = Vec::new();
        for (s, cone) in self.toric.fan.max_cones.iter().enumerate() {
            for i in 0..self.sd.rs.ss_rank {
                let alpha_char: Vec<i64> = (0..self.toric.fan.dim)
                    .map(|k| i64::from(k == i))
                    .collect();
                if !crate::fan::facet_orthogonal_to(&self.toric.fan, cone, &alpha_char) {
                    continue;
                }
                let refl = crate::root::WeylElement::generator(&self.sd.rs, i);
                let diff = tensor::act_right(&refl, &t.entries[s]).sub(&t.entries[s]);
                if !tensor::divisible_by_u_binomial(&diff, &self.sd.rs.simple_root(i)) {
                    reflection_failures.push((s, i));
                }
            }
        }
        let wall_failures = self.toric.congruence_violations(t);
        MembershipReport {
            ok: reflection_failures.is_empty() && wall_failures.is_empty(),
            reflection_failures,
            wall_failures,
        }
    }

    // -----------------------------------------------------------------
    // Ordinary ring
    // -----------------------------------------------------------------

    /// Collapse the diagonal variables by their augmentation and take the
    /// characteristic image of the remaining factor.
    fn specialize_coefficient(&self, t: &TensorElement) -> Result<FlagKClass, Error> {
        let mut u_part = LaurentElement::zero();
        for (e, c) in t.terms() {
            u_part.add_term(e.u.clone(), c.clone());
        }
        self.sd.characteristic_image(&u_part)
    }

    /// Ordinary coordinates of an equivariant class: expand each
    /// coefficient tuple in the orbit basis, then specialize both factors.
    pub fn ordinary_coords(&self, e: &EquivariantClass) -> Result<OrdinaryClass, Error> {
        let mut out = OrdinaryClass::zero(self.order(), self.cone_count());
        for (&(_, w), coeff) in &e.coords {
            let rs = self.toric.expand_in_orbit_basis(coeff)?;
            for (i, r) in rs.iter().enumerate() {
                let flag = self.specialize_coefficient(r)?;
                out.coords[w][i] = out.coords[w][i].add(&flag);
            }
        }
        Ok(out)
    }

    /// The ordinary model built from the structure-constant route: the
    /// basis multiplication table of Theorem `main`'s rule and the orbit
    /// product table of the toric-bundle ring.
    pub fn ordinary_ring(&self) -> Result<OrdinaryModel, Error> {
        let n = self.order();
        let m = self.cone_count();
        let mut toric_table = vec![vec![Vec::new(); m]; m];
        for i in 0..m {
            for j in 0..m {
                let prod = self.toric.orbit_classes[i].mul(&self.toric.orbit_classes[j]);
                let coeffs = self.toric.expand_in_orbit_basis(&prod)?;
                toric_table[i][j] = coeffs
                    .iter()
                    .map(|r| self.sd.characteristic_image(r))
                    .collect::<Result<_, _>>()?;
            }
        }
        let mut gamma_table = Vec::with_capacity(n);
        for v in 0..n {
            let mut row = Vec::with_capacity(n);
            for vp in 0..n {
                let mi = self.sd.cset_mask[v];
                let mip = self.sd.cset_mask[vp];
                let union = mi | mip;
                let inter = mi & mip;
                let mut cls = OrdinaryClass::zero(n, m);
                for w in 0..n {
                    let cw = &self.sd.c[v][vp][w];
                    if cw.is_zero() {
                        continue;
                    }
                    let j = self.sd.cset_mask[w];
                    debug_assert_eq!(j & !union, 0);
                    let lam = self.sd.flag_multiply(
                        &self.sd.lambda_bar_positive(inter)?,
                        &self.sd.lambda_bar_positive(union & !j)?,
                    );
                    cls.coords[w][0] = cls.coords[w][0].add(&lam.scale(cw));
                }
                row.push(cls);
            }
            gamma_table.push(row);
        }
        Ok(OrdinaryModel {
            gamma_table,
            toric_table,
            z_rank: n * n * m,
        })
    }

    /// Multiplication of two ordinary classes through the model tables.
    pub fn ordinary_multiply(
        &self,
        model: &OrdinaryModel,
        a: &OrdinaryClass,
        b: &OrdinaryClass,
    ) -> OrdinaryClass {
        let n = self.order();
        let m = self.cone_count();
        // product in the toric-bundle coefficient ring
        let rp_mul = |x: &Vec<FlagKClass>, y: &Vec<FlagKClass>| -> Vec<FlagKClass> {
            let mut out = vec![FlagKClass::zero(n); m];
            for i in 0..m {
                if x[i].is_zero() {
                    continue;
                }
                for j in 0..m {
                    if y[j].is_zero() {
                        continue;
                    }
                    let f = self.sd.flag_multiply(&x[i], &y[j]);
                    for k in 0..m {
                        let t = &model.toric_table[i][j][k];
                        if !t.is_zero() {
                            out[k] = out[k].add(&self.sd.flag_multiply(&f, t));
                        }
                    }
                }
            }
            out
        };
        let mut out = OrdinaryClass::zero(n, m);
        for v in 0..n {
            if a.coords[v].iter().all(|f| f.is_zero()) {
                continue;
            }
            for vp in 0..n {
                if b.coords[vp].iter().all(|f| f.is_zero()) {
                    continue;
                }
                let coeff = rp_mul(&a.coords[v], &b.coords[vp]);
                let gamma = &model.gamma_table[v][vp];
                for w in 0..n {
                    if gamma.coords[w].iter().all(|f| f.is_zero()) {
                        continue;
                    }
                    let term = rp_mul(&coeff, &gamma.coords[w]);
                    for i in 0..m {
                        out.coords[w][i] = out.coords[w][i].add(&term[i]);
                    }
                }
            }
        }
        out
    }

    /// Generator list of the ordinary ring for table comparisons:
    /// the `gamma_v` and the orbit classes.
    fn generator_lifts(&self) -> Vec<EquivariantClass> {
        let mut out = Vec::new();
        for v in 0..self.order() {
            out.push(
                self.basis_element(self.sd.cset_mask[v], v)
                    .expect("basis element"),
            );
        }
        for i in 0..self.cone_count() {
            out.push(self.orbit_lift(i));
        }
        out
    }

    /// Path-one ordinary product of two generators, straight from the
    /// model tables.
    fn generator_product_structural(
        &self,
        model: &OrdinaryModel,
        a: usize,
        b: usize,
    ) -> OrdinaryClass {
        let n = self.order();
        let m = self.cone_count();
        let gen_class = |g: usize| -> OrdinaryClass {
            let mut c = OrdinaryClass::zero(n, m);
            if g < n {
                c.coords[g][0] = FlagKClass::unit(n);
            } else {
                c.coords[0][g - n] = FlagKClass::unit(n);
            }
            c
        };
        self.ordinary_multiply(model, &gen_class(a), &gen_class(b))
    }

    /// Two-path comparison of the ordinary multiplication tables on all
    /// generator pairs. Returns the list of disagreeing pairs.
    pub fn two_path_mismatches(&self, model: &OrdinaryModel) -> Result<Vec<(usize, usize)>, Error> {
        let lifts = self.generator_lifts();
        let pairs: Vec<(usize, usize)> = (0..lifts.len())
            .flat_map(|a| (0..lifts.len()).map(move |b| (a, b)))
            .collect();
        let results: Vec<bool> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let pointwise = self.multiply_pointwise(&lifts[a], &lifts[b])?;
                let oracle = self.ordinary_coords(&pointwise)?;
                let structural = self.generator_product_structural(model, a, b);
                Ok(oracle == structural)
            })
            .collect::<Result<_, Error>>()?;
        Ok(pairs
            .into_iter()
            .zip(results)
            .filter(|(_, ok)| !ok)
            .map(|(p, _)| p)
            .collect())
    }

    /// Structural-versus-pointwise comparison in the equivariant ring over
    /// all basis pairs. Returns disagreeing pairs.
    pub fn equivariant_oracle_mismatches(&self) -> Result<Vec<(usize, usize)>, Error> {
        let n = self.order();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|v| (0..n).map(move |vp| (v, vp)))
            .collect();
        let results: Vec<bool> = pairs
            .par_iter()
            .map(|&(v, vp)| {
                let a = self.basis_element(self.sd.cset_mask[v], v)?;
                let b = self.basis_element(self.sd.cset_mask[vp], vp)?;
                let st = self.multiply_structural(&a, &b);
                let pw = self.multiply_pointwise(&a, &b)?;
                Ok(st == pw)
            })
            .collect::<Result<_, Error>>()?;
        Ok(pairs
            .into_iter()
            .zip(results)
            .filter(|(_, ok)| !ok)
            .map(|(p, _)| p)
            .collect())
    }

    // -----------------------------------------------------------------
    // Presentation over the wonderful sub-instance
    // -----------------------------------------------------------------

    /// Verify the presentation of the instance over its wonderful
    /// sub-instance; `corrupt_exponent` flips one exponent in the first
    /// character relation, as a negative control.
    pub fn verify_presentation(&self, corrupt_exponent: bool) -> Result<PresentationReport, Error> {
        let (r, c) = self.u_rank();
        let mut failures = Vec::new();

        // (a) minimal non-face products vanish, through the equivariant lift
        for nf in self.toric.minimal_nonfaces() {
            let mut prod = self.unit_coefficient();
            for &j in &nf {
                let x = self.toric.ray_generator(j)?;
                let lifted = GkmTuple {
                    entries: x.entries.iter().map(|e| tensor::embed_u(e, r, c)).collect(),
                };
                prod = prod.mul(&self.unit_coefficient().sub(&lifted));
            }
            if !prod.is_zero() {
                failures.push(format!("non-face relation fails for rays {nf:?}"));
            }
        }

        // (b) character relations: the ray monomial of alpha equals the
        // pullback line-bundle class, restriction by restriction
        for i in 0..self.sd.rs.ss_rank {
            let alpha_char: Vec<i64> = (0..self.toric.fan.dim)
                .map(|k| i64::from(k == i))
                .collect();
            let mut exps: Vec<i64> = self
                .toric
                .fan
                .rays
                .iter()
                .map(|v| alpha_char.iter().zip(v).map(|(a, b)| a * b).sum())
                .collect();
            if corrupt_exponent && i == 0 {
                exps[0] -= 1;
            }
            let lhs = self.toric.ray_monomial(&exps)?;
            let rhs = GkmTuple::constant(
                self.cone_count(),
                self.sd
                    .rs
                    .exp(self.sd.rs.char_to_weight(&alpha_char)),
            );
            if lhs != rhs {
                failures.push(format!("character relation fails for simple root {i}"));
            }
            // ordinary specialization of the same relation
            let lift = |t: &GkmTuple<LaurentElement>| -> EquivariantClass {
                let mut e = EquivariantClass::zero();
                e.add_coord(
                    (0, 0),
                    GkmTuple {
                        entries: t.entries.iter().map(|x| tensor::embed_u(x, r, c)).collect(),
                    },
                );
                e
            };
            let lhs_ord = self.ordinary_coords(&lift(&lhs))?;
            let rhs_ord = self.ordinary_coords(&lift(&rhs))?;
            if lhs_ord != rhs_ord {
                failures.push(format!(
                    "ordinary character relation fails for simple root {i}"
                ));
            }
        }

        // (c) spanning: every product of a basis element with an orbit
        // class decomposes through the triangular solve
        for v in 0..self.order() {
            let mask = self.sd.cset_mask[v];
            for i in 0..self.cone_count() {
                let prod = self
                    .basis_tuple(mask, v)
                    .mul(&GkmTuple {
                        entries: self.toric.orbit_classes[i]
                            .entries
                            .iter()
                            .map(|e| tensor::embed_u(e, r, c))
                            .collect(),
                    });
                if self.toric.expand_in_orbit_basis(&prod).is_err() {
                    failures.push(format!(
                        "orbit expansion fails for basis ({mask:#b}, {v}) times x({i})"
                    ));
                }
            }
        }

        // (d) rank bookkeeping
        let rank_over_wonderful = self.cone_count();
        let z_rank = self.order() * self.order() * self.cone_count();
        if z_rank % (self.order() * self.order()) != 0
            || z_rank / (self.order() * self.order()) != rank_over_wonderful
        {
            failures.push("rank bookkeeping failed".into());
        }

        Ok(PresentationReport {
            ok: failures.is_empty(),
            rank_over_wonderful,
            failures,
        })
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct PresentationReport {
    pub ok: bool,
    pub rank_over_wonderful: usize,
    pub failures: Vec<String>,
}

/// Convenience: the wonderful instance of a root system (undivided
/// chamber).
pub fn wonderful_model(rs: &RootSystem) -> Result<KringModel, Error> {
    let chamber = crate::fan::positive_chamber_fan(rs)?;
    let n = rs.ss_rank;
    let dir: Vec<i64> = (0..n).map(|k| 1i64 << k).collect();
    KringModel::new(rs, chamber, vec![0; n], dir)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wonderful_a1() -> KringModel {
        wonderful_model(&RootSystem::a1()).unwrap()
    }

    fn quadrant_a1xa1() -> KringModel {
        let rs = RootSystem::a1xa1();
        let fan = Fan::new(
            2,
            vec![vec![1, 0], vec![1, 1], vec![0, 1]],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        KringModel::new(&rs, fan, vec![0, 1, 0], vec![1, 2]).unwrap()
    }

    #[test]
    fn basis_elements_pass_membership() {
        for model in [wonderful_a1(), quadrant_a1xa1()] {
            for v in 0..model.order() {
                let b = model
                    .basis_element(model.sd.cset_mask[v], v)
                    .unwrap();
                let t = model.tuple_of(&b);
                let rep = model.check_membership(&t);
                assert!(rep.ok, "membership fails for basis {v}: {rep:?}");
            }
        }
    }

    #[test]
    fn invalid_basis_pair_rejected() {
        let model = wonderful_a1();
        assert!(model.basis_element(1, 0).is_err());
    }

    #[test]
    fn membership_negative_example() {
        // 1 tensor e^{omega} on the rank-one wonderful instance fails the
        // reflection congruence.
        let model = wonderful_a1();
        let t = GkmTuple::constant(
            1,
            tensor::embed_v(&model.sd.rs.exp(model.sd.rs.fundamental_weight(0)), 1, 0),
        );
        let rep = model.check_membership(&t);
        assert!(!rep.ok);
        assert_eq!(rep.reflection_failures, vec![(0, 0)]);
    }

    #[test]
    fn membership_wall_example() {
        // f = 1 tensor 1 on one cone and e^{chi} tensor 1 on the other
        // passes the wall congruence on the subdivided quadrant.
        let model = quadrant_a1xa1();
        let chi = model.toric.walls[0].chi.clone();
        let e_chi = model.sd.rs.exp(model.sd.rs.char_to_weight(&chi));
        let mut t = model.unit_coefficient();
        t.entries[model.toric.walls[0].cone_a] = tensor::embed_u(&e_chi, 2, 0);
        let rep = model.check_membership(&t);
        assert!(rep.wall_failures.is_empty(), "{rep:?}");
    }

    #[test]
    fn coords_roundtrip_on_products() {
        let model = wonderful_a1();
        let b = model.basis_element(1, 1).unwrap();
        let sq = model.multiply_structural(&b, &b);
        let t = model.tuple_of(&sq);
        let back = model.coords_of(&t).unwrap();
        assert_eq!(back, sq);
    }

    #[test]
    fn structural_equals_pointwise_wonderful_a1() {
        let model = wonderful_a1();
        assert!(model.equivariant_oracle_mismatches().unwrap().is_empty());
    }

    #[test]
    fn structural_equals_pointwise_quadrant() {
        let model = quadrant_a1xa1();
        assert!(model.equivariant_oracle_mismatches().unwrap().is_empty());
    }

    #[test]
    fn a1_squared_matches_hand_computation() {
        // (1 tensor f_s)^2 = (1-e^alpha)^2 tensor (-1) f_e-part
        //                   + (1-e^alpha) tensor (e^w + e^{-w}) f_s-part
        let model = wonderful_a1();
        let b = model.basis_element(1, 1).unwrap();
        let sq = model.multiply_structural(&b, &b);
        let alpha = model.sd.rs.simple_root(0);
        let one_minus = LaurentElement::one_minus_exp(alpha);
        let sum = model
            .sd
            .rs
            .exp(Weight::new(vec![1], vec![]))
            .add(&model.sd.rs.exp(Weight::new(vec![-1], vec![])));
        let expect_e = tensor::tensor_of(
            &one_minus.mul(&one_minus).neg(),
            &model.sd.rs.one(),
        );
        let expect_s = tensor::tensor_of(&one_minus, &sum);
        assert_eq!(sq.coords[&(0, 0)].entries[0], expect_e);
        assert_eq!(sq.coords[&(1, 1)].entries[0], expect_s);
        // products pass membership
        let rep = model.check_membership(&model.tuple_of(&sq));
        assert!(rep.ok);
    }

    #[test]
    fn unit_laws() {
        for model in [wonderful_a1(), quadrant_a1xa1()] {
            let unit = model.unit();
            for v in 0..model.order() {
                let b = model.basis_element(model.sd.cset_mask[v], v).unwrap();
                assert_eq!(model.multiply_structural(&unit, &b), b);
                assert_eq!(model.multiply_structural(&b, &unit), b);
                assert_eq!(model.multiply_pointwise(&unit, &b).unwrap(), b);
            }
        }
    }

    #[test]
    fn ordinary_ranks() {
        assert_eq!(wonderful_a1().ordinary_ring().unwrap().z_rank, 4);
        assert_eq!(quadrant_a1xa1().ordinary_ring().unwrap().z_rank, 32);
    }

    #[test]
    fn ordinary_two_path_wonderful_a1() {
        let model = wonderful_a1();
        let ord = model.ordinary_ring().unwrap();
        assert!(model.two_path_mismatches(&ord).unwrap().is_empty());
    }

    #[test]
    fn ordinary_two_path_quadrant() {
        let model = quadrant_a1xa1();
        let ord = model.ordinary_ring().unwrap();
        assert!(model.two_path_mismatches(&ord).unwrap().is_empty());
    }

    #[test]
    fn gamma_s_squared_in_k_p3() {
        // lambda_alpha^2 = 0 in the flag model, so gamma_s^2 has no
        // gamma_e component; its gamma_s coefficient is 2 lambda_alpha.
        let model = wonderful_a1();
        let ord = model.ordinary_ring().unwrap();
        let entry = &ord.gamma_table[1][1];
        assert!(entry.coords[0][0].is_zero());
        let lam = model.sd.lambda_bar_positive(1).unwrap();
        assert_eq!(entry.coords[1][0], lam.scale(&BigInt::from(2)));
    }

    #[test]
    fn presentation_checks() {
        let model = quadrant_a1xa1();
        let rep = model.verify_presentation(false).unwrap();
        assert!(rep.ok, "{:?}", rep.failures);
        assert_eq!(rep.rank_over_wonderful, 2);
        let bad = model.verify_presentation(true).unwrap();
        assert!(!bad.ok);
        // wonderful instance: vacuous pass
        let rep = wonderful_a1().verify_presentation(false).unwrap();
        assert!(rep.ok);
        assert_eq!(rep.rank_over_wonderful, 1);
    }

    #[test]
    fn specialization_of_unit_is_unit() {
        for model in [wonderful_a1(), quadrant_a1xa1()] {
            let ord = model.ordinary_coords(&model.unit()).unwrap();
            for (v, row) in ord.coords.iter().enumerate() {
                for (i, f) in row.iter().enumerate() {
                    if v == 0 && i == 0 {
                        assert_eq!(*f, FlagKClass::unit(model.order()));
                    } else {
                        assert!(f.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn structural_associativity_on_basis_elements() {
        for model in [wonderful_a1(), quadrant_a1xa1()] {
            let n = model.order();
            for v in 0..n {
                for vp in 0..n {
                    for vpp in [0, n - 1] {
                        let a = model.basis_element(model.sd.cset_mask[v], v).unwrap();
                        let b = model.basis_element(model.sd.cset_mask[vp], vp).unwrap();
                        let c = model.basis_element(model.sd.cset_mask[vpp], vpp).unwrap();
                        let ab_c =
                            model.multiply_structural(&model.multiply_structural(&a, &b), &c);
                        let a_bc =
                            model.multiply_structural(&a, &model.multiply_structural(&b, &c));
                        assert_eq!(ab_c, a_bc);
                    }
                }
            }
        }
    }
}
