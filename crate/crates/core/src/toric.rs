//! The localized model of the torus-equivariant K-ring of a smooth
//! semi-projective toric variety: tuples of characters indexed by the
//! maximal cones, subject to divisibility across walls. Provides the ray
//! generator classes, orbit-closure classes, the triangular restriction
//! matrix certifying freeness, expansion in the orbit basis, and the
//! Stanley-Reisner style relation checks.

use num_bigint::BigInt;
use num_traits::One;

use crate::fan::{walls, Fan, MomentOrder, Wall};
use crate::laurent::{divisible_by_binomial, LaurentElement, TensorElement};
use crate::linalg::{ExactDomain, Mat64};
use crate::root::RootSystem;
use crate::tensor;
use crate::weight::Weight;
use crate::Error;

/// Coefficients a localized tuple can carry: the plain Laurent ring or the
/// doubled ring with the wall divisibility read on the first factor.
pub trait GkmCoeff: ExactDomain {
    fn embed(l: &LaurentElement) -> Self;
    fn divide_by_laurent(&self, l: &LaurentElement) -> Option<Self>;
    /// Divisibility by `1 - e^{-chi}` (in the first factor for the doubled
    /// ring); the sign of `chi` does not matter.
    fn wall_divisible(&self, chi: &Weight) -> bool;
}

impl GkmCoeff for LaurentElement {
    fn embed(l: &LaurentElement) -> Self {
        l.clone()
    }
    fn divide_by_laurent(&self, l: &LaurentElement) -> Option<Self> {
        self.divide_exact(l)
    }
    fn wall_divisible(&self, chi: &Weight) -> bool {
        divisible_by_binomial(self, chi)
    }
}

impl GkmCoeff for TensorElement {
    fn embed(l: &LaurentElement) -> Self {
        match l.terms().next() {
            None => TensorElement::zero(),
            Some((w, _)) => tensor::embed_u(l, w.ss.len(), w.central.len()),
        }
    }
    fn divide_by_laurent(&self, l: &LaurentElement) -> Option<Self> {
        tensor::divide_u_exact(self, l)
    }
    fn wall_divisible(&self, chi: &Weight) -> bool {
        tensor::divisible_by_u_binomial(self, chi)
    }
}

/// A tuple of restrictions indexed by the maximal cones of a fixed fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmTuple<R: GkmCoeff> {
    pub entries: Vec<R>,
}

impl<R: GkmCoeff> GkmTuple<R> {
    pub fn zero(m: usize) -> Self {
        GkmTuple {
            entries: vec![R::zero(); m],
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        GkmTuple {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        GkmTuple {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        GkmTuple {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        GkmTuple {
            entries: self.entries.iter().map(|a| a.neg()).collect(),
        }
    }

    /// Multiply every entry by the same element.
    pub fn scale(&self, c: &R) -> Self {
        GkmTuple {
            entries: self.entries.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|a| a.is_zero())
    }

    /// Constant tuple.
    pub fn constant(m: usize, c: R) -> Self {
        GkmTuple {
            entries: vec![c; m],
        }
    }
}

/// One violated wall congruence.
#[derive(Clone, Debug, serde::Serialize)]
pub struct WallViolation {
    pub cone_a: usize,
    pub cone_b: usize,
    pub chi: Vec<i64>,
}

/// The toric side of an instance: the validated chamber subdivision, dual
/// bases, walls, the moment ordering, and the orbit-class basis.
pub struct ToricModel {
    pub rs: RootSystem,
    pub fan: Fan,
    pub psi: Vec<i64>,
    pub direction: Vec<i64>,
    /// Dual basis rows per maximal cone, in character coordinates.
    pub duals: Vec<Mat64>,
    pub walls: Vec<Wall>,
    pub morder: MomentOrder,
    /// Orbit classes `x(tau_i)` in moment order.
    pub orbit_classes: Vec<GkmTuple<LaurentElement>>,
    /// Restriction matrix `[ordered cone][basis element]`, lower triangular
    /// with nonzero diagonal.
    pub basis_matrix: Vec<Vec<LaurentElement>>,
}

impl ToricModel {
    pub fn new(rs: &RootSystem, fan: Fan, psi: Vec<i64>, direction: Vec<i64>) -> Result<Self, Error> {
        let ample = crate::fan::check_ample(&fan, &psi)?;
        if !ample.ample {
            return Err(Error::Validation(format!(
                "psi values are not ample: {:?}",
                ample.failures
            )));
        }
        let morder = crate::fan::moment_order(&fan, &psi, &direction)?;
        let mut duals = Vec::with_capacity(fan.max_cones.len());
        for cone in &fan.max_cones {
            duals.push(fan.dual_basis(cone).ok_or_else(|| {
                Error::Validation(format!("cone {cone:?} is not unimodular of full dimension"))
            })?);
        }
        let walls = walls(&fan)?;
        let mut model = ToricModel {
            rs: rs.clone(),
            fan,
            psi,
            direction,
            duals,
            walls,
            morder,
            orbit_classes: Vec::new(),
            basis_matrix: Vec::new(),
        };
        let m = model.fan.max_cones.len();
        let mut orbit = Vec::with_capacity(m);
        for i in 0..m {
            let tau = model.morder.tau[i].clone();
            orbit.push(model.orbit_class(&tau)?);
        }
        model.orbit_classes = orbit;
        // Triangularity certificate for the restriction matrix.
        let mut matrix = Vec::with_capacity(m);
        for j in 0..m {
            let cone_j = model.morder.order[j];
            let mut row = Vec::with_capacity(m);
            for i in 0..m {
                row.push(model.orbit_classes[i].entries[cone_j].clone());
            }
            matrix.push(row);
        }
        for (j, row) in matrix.iter().enumerate() {
            for (i, entry) in row.iter().enumerate() {
                if i > j && !entry.is_zero() {
                    return Err(Error::Internal(format!(
                        "restriction matrix is not triangular at ({j},{i})"
                    )));
                }
                if i == j && entry.is_zero() {
                    return Err(Error::Internal(format!(
                        "restriction matrix has a zero diagonal entry at {j}"
                    )));
                }
            }
        }
        model.basis_matrix = matrix;
        for x in &model.orbit_classes {
            let bad = model.congruence_violations(x);
            if !bad.is_empty() {
                return Err(Error::Internal(format!(
                    "orbit class violates wall congruences: {bad:?}"
                )));
            }
        }
        Ok(model)
    }

    pub fn cone_count(&self) -> usize {
        self.fan.max_cones.len()
    }

    /// Dual-basis form of a ray inside a maximal cone, in character
    /// coordinates.
    fn dual_form(&self, cone_idx: usize, ray: usize) -> Option<&Vec<i64>> {
        let cone = &self.fan.max_cones[cone_idx];
        cone.iter()
            .position(|&i| i == ray)
            .map(|k| &self.duals[cone_idx][k])
    }

    pub fn unit_class(&self) -> GkmTuple<LaurentElement> {
        GkmTuple::constant(self.cone_count(), self.rs.one())
    }

    /// The generator class of a ray: `e^{u_{rho, sigma}}` on cones containing
    /// the ray, `1` elsewhere.
    pub fn ray_generator(&self, j: usize) -> Result<GkmTuple<LaurentElement>, Error> {
        if j >= self.fan.rays.len() {
            return Err(Error::Validation(format!("ray index {j} out of range")));
        }
        let entries = (0..self.cone_count())
            .map(|s| match self.dual_form(s, j) {
                Some(u) => self.rs.exp(self.rs.char_to_weight(u)),
                None => self.rs.one(),
            })
            .collect();
        Ok(GkmTuple { entries })
    }

    /// The orbit-closure class of a cone: the product of `1 - X_rho` over
    /// its rays; restriction vanishes off the stars of the cone.
    pub fn orbit_class(&self, tau: &[usize]) -> Result<GkmTuple<LaurentElement>, Error> {
        let mut sorted = tau.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if !self
            .fan
            .max_cones
            .iter()
            .any(|c| sorted.iter().all(|r| c.contains(r)))
        {
            return Err(Error::Validation(format!(
                "{tau:?} is not a cone of the fan"
            )));
        }
        let entries = (0..self.cone_count())
            .map(|s| {
                let cone = &self.fan.max_cones[s];
                if !sorted.iter().all(|r| cone.contains(r)) {
                    return LaurentElement::zero();
                }
                let mut prod = self.rs.one();
                for &r in &sorted {
                    let u = self.dual_form(s, r).expect("ray of the cone");
                    prod = prod.mul(&LaurentElement::one_minus_exp(
                        self.rs.char_to_weight(u),
                    ));
                }
                prod
            })
            .collect();
        Ok(GkmTuple { entries })
    }

    /// The class of the line bundle attached to a piecewise linear function
    /// with the given ray values: `e^{h_sigma}` per cone.
    pub fn line_bundle_class(&self, values: &[i64]) -> Result<GkmTuple<LaurentElement>, Error> {
        let forms = crate::fan::pl_forms(&self.fan, values)?;
        Ok(GkmTuple {
            entries: forms
                .iter()
                .map(|h| self.rs.exp(self.rs.char_to_weight(h)))
                .collect(),
        })
    }

    /// The monomial `prod_j X_j^{k_j}` as a tuple (negative powers allowed:
    /// restrictions are monomials, hence units).
    pub fn ray_monomial(&self, exponents: &[i64]) -> Result<GkmTuple<LaurentElement>, Error> {
        if exponents.len() != self.fan.rays.len() {
            return Err(Error::Validation(
                "one exponent per ray is required".into(),
            ));
        }
        let entries = (0..self.cone_count())
            .map(|s| {
                let cone = &self.fan.max_cones[s];
                let mut w = vec![0i64; self.fan.dim];
                for (k, &r) in cone.iter().enumerate() {
                    for (j, u) in self.duals[s][k].iter().enumerate() {
                        w[j] += exponents[r] * u;
                    }
                }
                self.rs.exp(self.rs.char_to_weight(&w))
            })
            .collect();
        Ok(GkmTuple { entries })
    }

    /// Wall congruences violated by a tuple.
    pub fn congruence_violations<R: GkmCoeff>(&self, t: &GkmTuple<R>) -> Vec<WallViolation> {
        self.walls
            .iter()
            .filter(|w| {
                let diff = t.entries[w.cone_a].sub(&t.entries[w.cone_b]);
                !diff.wall_divisible(&self.rs.char_to_weight(&w.chi))
            })
            .map(|w| WallViolation {
                cone_a: w.cone_a,
                cone_b: w.cone_b,
                chi: w.chi.clone(),
            })
            .collect()
    }

    /// Expand a tuple in the orbit-class basis by forward substitution
    /// through the triangular restriction matrix; exact-division failures
    /// surface as errors. Reconstruction is verified.
    pub fn expand_in_orbit_basis<R: GkmCoeff>(&self, g: &GkmTuple<R>) -> Result<Vec<R>, Error> {
        let m = self.cone_count();
        let mut coeffs: Vec<R> = Vec::with_capacity(m);
        for i in 0..m {
            let cone_i = self.morder.order[i];
            let mut acc = g.entries[cone_i].clone();
            for (k, ck) in coeffs.iter().enumerate() {
                acc = acc.sub(&ck.mul(&R::embed(&self.basis_matrix[i][k])));
            }
            let r = acc
                .divide_by_laurent(&self.basis_matrix[i][i])
                .ok_or_else(|| {
                    Error::Internal(format!(
                        "orbit-basis expansion: division failed at position {i}"
                    ))
                })?;
            coeffs.push(r);
        }
        // reconstruction across every cone
        let mut recon = GkmTuple::zero(m);
        for (i, c) in coeffs.iter().enumerate() {
            recon = recon.add(&GkmTuple {
                entries: self.orbit_classes[i]
                    .entries
                    .iter()
                    .map(|e| c.mul(&R::embed(e)))
                    .collect(),
            });
        }
        if recon != *g {
            return Err(Error::Internal(
                "orbit-basis expansion failed to reconstruct its input".into(),
            ));
        }
        Ok(coeffs)
    }

    /// Minimal sets of rays spanning no cone of the fan: every proper
    /// subset is a face but the set itself is not.
    pub fn minimal_nonfaces(&self) -> Vec<Vec<usize>> {
        let d = self.fan.rays.len();
        assert!(d < 26, "ray count too large for subset enumeration");
        let cone_masks: Vec<u32> = self
            .fan
            .max_cones
            .iter()
            .map(|c| c.iter().fold(0u32, |m, &i| m | (1 << i)))
            .collect();
        let is_face = |mask: u32| cone_masks.iter().any(|&c| mask & !c == 0);
        let mut out = Vec::new();
        for mask in 1u32..(1 << d) {
            if is_face(mask) {
                continue;
            }
            let minimal = (0..d)
                .filter(|&b| mask & (1 << b) != 0)
                .all(|b| is_face(mask & !(1 << b)));
            if minimal {
                out.push((0..d).filter(|&b| mask & (1 << b) != 0).collect());
            }
        }
        out
    }

    /// Stanley-Reisner vanishing: the product of `1 - X_rho` over every
    /// minimal non-face restricts to zero everywhere.
    pub fn sr_vanishing_failures(&self) -> Result<Vec<Vec<usize>>, Error> {
        let mut failures = Vec::new();
        for nf in self.minimal_nonfaces() {
            let mut prod = self.unit_class();
            for &r in &nf {
                let x = self.ray_generator(r)?;
                prod = prod.mul(&self.unit_class().sub(&x));
            }
            if !prod.is_zero() {
                failures.push(nf);
            }
        }
        Ok(failures)
    }

    /// The lattice-character relation: `prod_j X_j^{<u, v_j>} = e^{u}` for a
    /// character `u`, exactly, restriction by restriction.
    pub fn character_relation_holds(&self, u: &[i64]) -> Result<bool, Error> {
        let exps: Vec<i64> = self
            .fan
            .rays
            .iter()
            .map(|v| u.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect();
        let lhs = self.ray_monomial(&exps)?;
        let rhs = GkmTuple::constant(self.cone_count(), self.rs.exp(self.rs.char_to_weight(u)));
        Ok(lhs == rhs)
    }

    /// Point-base instantiation of the toric-bundle presentation: verify the
    /// character relations for a lattice basis and all simple roots, their
    /// augmentation specialization, and report the certified rank.
    pub fn verify_srpres_point(&self) -> Result<SrPointReport, Error> {
        let mut failures = Vec::new();
        let n = self.fan.dim;
        for k in 0..n {
            let u: Vec<i64> = (0..n).map(|j| i64::from(j == k)).collect();
            if !self.character_relation_holds(&u)? {
                failures.push(format!("character relation fails for basis vector {k}"));
            }
        }
        for i in 0..self.rs.ss_rank.min(n) {
            let alpha: Vec<i64> = (0..n).map(|j| i64::from(j == i)).collect();
            if !self.character_relation_holds(&alpha)? {
                failures.push(format!("character relation fails for simple root {i}"));
            }
            // augmentation specialization: both sides have augmentation 1
            let exps: Vec<i64> = self
                .fan
                .rays
                .iter()
                .map(|v| alpha.iter().zip(v).map(|(a, b)| a * b).sum())
                .collect();
            let lhs = self.ray_monomial(&exps)?;
            if lhs.entries.iter().any(|e| e.augment() != BigInt::one()) {
                failures.push(format!(
                    "augmentation specialization fails for simple root {i}"
                ));
            }
        }
        let sr = self.sr_vanishing_failures()?;
        for nf in sr {
            failures.push(format!("Stanley-Reisner product does not vanish: {nf:?}"));
        }
        Ok(SrPointReport {
            rank: self.cone_count(),
            ok: failures.is_empty(),
            failures,
        })
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SrPointReport {
    pub rank: usize,
    pub ok: bool,
    pub failures: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Fan;

    fn quadrant_model() -> ToricModel {
        let rs = RootSystem::a1xa1();
        let fan = Fan::new(
            2,
            vec![vec![1, 0], vec![1, 1], vec![0, 1]],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        ToricModel::new(&rs, fan, vec![0, 1, 0], vec![1, 2]).unwrap()
    }

    fn w(ss: Vec<i64>) -> Weight {
        Weight::new(ss, vec![])
    }

    #[test]
    fn ray_generator_example() {
        let t = quadrant_model();
        // X for ray (1,0): 1 on cone((1,1),(0,1)); e^{(1,-1) in root coords}
        // = e^{(2,-2) in weight coords} on cone((1,0),(1,1))
        let x = t.ray_generator(0).unwrap();
        assert_eq!(x.entries[0], t.rs.exp(w(vec![2, -2])));
        assert_eq!(x.entries[1], t.rs.one());
        assert!(t.congruence_violations(&x).is_empty());
    }

    #[test]
    fn orbit_class_examples() {
        let t = quadrant_model();
        // tau = origin: unit class
        assert_eq!(t.orbit_class(&[]).unwrap(), t.unit_class());
        // tau = ray(1,0): zero off its star, 1 - e^{(2,-2)} on it
        let x = t.orbit_class(&[0]).unwrap();
        assert_eq!(x.entries[0], t.rs.one().sub(&t.rs.exp(w(vec![2, -2]))));
        assert!(x.entries[1].is_zero());
        // not a cone
        assert!(t.orbit_class(&[0, 2]).is_err());
    }

    #[test]
    fn basis_matrix_is_triangular() {
        let t = quadrant_model();
        // moment order: cone 1 first, then cone 0
        assert_eq!(t.morder.order, vec![1, 0]);
        assert_eq!(t.basis_matrix[0][0], t.rs.one());
        assert!(t.basis_matrix[0][1].is_zero());
        assert_eq!(t.basis_matrix[1][0], t.rs.one());
        assert_eq!(
            t.basis_matrix[1][1],
            t.rs.one().sub(&t.rs.exp(w(vec![2, -2])))
        );
    }

    #[test]
    fn orbit_expansion_roundtrip() {
        let t = quadrant_model();
        // indicator on basis elements
        for i in 0..t.cone_count() {
            let c = t.expand_in_orbit_basis(&t.orbit_classes[i].clone()).unwrap();
            for (k, ck) in c.iter().enumerate() {
                if k == i {
                    assert_eq!(*ck, t.rs.one());
                } else {
                    assert!(ck.is_zero());
                }
            }
        }
        // a ray generator expands and reconstructs
        let x = t.ray_generator(1).unwrap();
        let c = t.expand_in_orbit_basis(&x).unwrap();
        let mut recon = GkmTuple::zero(2);
        for (i, ci) in c.iter().enumerate() {
            recon = recon.add(&t.orbit_classes[i].scale(ci));
        }
        assert_eq!(recon, x);
        // scalar times the unit has the scalar at the first position
        let r = t.rs.exp(w(vec![1, -1]));
        let g = t.unit_class().scale(&r);
        let c = t.expand_in_orbit_basis(&g).unwrap();
        assert_eq!(c[0], r);
        assert!(c[1].is_zero());
    }

    #[test]
    fn nonfaces_and_sr_vanishing() {
        let t = quadrant_model();
        assert_eq!(t.minimal_nonfaces(), vec![vec![0, 2]]);
        assert!(t.sr_vanishing_failures().unwrap().is_empty());
    }

    #[test]
    fn character_relations() {
        let t = quadrant_model();
        for u in [[1i64, 0], [0, 1], [2, -1]] {
            assert!(t.character_relation_holds(&u).unwrap());
        }
        let report = t.verify_srpres_point().unwrap();
        assert!(report.ok, "{:?}", report.failures);
        assert_eq!(report.rank, 2);
    }

    #[test]
    fn srpres_single_cone_and_square() {
        let rs = RootSystem::a1xa1();
        let chamber = crate::fan::positive_chamber_fan(&rs).unwrap();
        let t = ToricModel::new(&rs, chamber, vec![0, 0], vec![1, 2]).unwrap();
        let report = t.verify_srpres_point().unwrap();
        assert!(report.ok);
        assert_eq!(report.rank, 1);

        let sq = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
        )
        .unwrap();
        let t = ToricModel::new(&rs, sq, vec![0, 0, -1, -1], vec![1, 2]).unwrap();
        let report = t.verify_srpres_point().unwrap();
        assert!(report.ok, "{:?}", report.failures);
        assert_eq!(report.rank, 4);
    }

    #[test]
    fn products_preserve_congruences() {
        let t = quadrant_model();
        let x = t.ray_generator(0).unwrap();
        let y = t.ray_generator(1).unwrap();
        let p = x.mul(&y);
        assert!(t.congruence_violations(&p).is_empty());
        let q = t.expand_in_orbit_basis(&p).unwrap();
        let mut recon = GkmTuple::zero(2);
        for (i, ci) in q.iter().enumerate() {
            recon = recon.add(&t.orbit_classes[i].scale(ci));
        }
        assert_eq!(recon, p);
    }

    #[test]
    fn expansion_inverts_combination() {
        // expanding a known combination returns its coefficient vector
        let t = quadrant_model();
        let r0 = t.rs.exp(w(vec![1, 0])).add(&t.rs.one().neg());
        let r1 = t.rs.exp(w(vec![-2, 2]));
        let g = t.orbit_classes[0]
            .scale(&r0)
            .add(&t.orbit_classes[1].scale(&r1));
        let c = t.expand_in_orbit_basis(&g).unwrap();
        assert_eq!(c, vec![r0, r1]);
    }

    #[test]
    fn line_bundle_class_is_congruent() {
        let t = quadrant_model();
        let l = t.line_bundle_class(&[0, 1, 0]).unwrap();
        assert!(t.congruence_violations(&l).is_empty());
    }
}
