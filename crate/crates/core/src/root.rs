//! Root systems with an optional central torus block, Weyl group
//! enumeration, lengths, parabolic subgroups, minimal coset representatives,
//! and the partition of the group indexed by subsets of simple roots.
//!
//! Coordinate conventions (adjoint-lattice throughout):
//! - weights of the covering torus in fundamental-weight coordinates,
//! - characters of the compactified torus in simple-root coordinates,
//! - cocharacters in fundamental-coweight coordinates.
//!
//! The last two are dual lattices under the standard dot product, and a
//! character embeds into the weight lattice through the Cartan matrix.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;

use crate::laurent::LaurentElement;
use crate::linalg::{mat_identity, mat_mul, mat_transpose, mat_vec, Mat64};
use crate::weight::Weight;
use crate::Error;

/// A subset of the simple roots, as a bitmask.
pub type SubsetMask = u32;

pub fn subset_from_indices(indices: &[usize]) -> SubsetMask {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn subset_indices(mask: SubsetMask) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// All submasks of `mask`, including the empty set and `mask` itself,
/// in increasing numeric order.
pub fn submasks(mask: SubsetMask) -> Vec<SubsetMask> {
    let mut out = Vec::new();
    let mut s: SubsetMask = 0;
    loop {
        out.push(s);
        if s == mask {
            break;
        }
        s = (s.wrapping_sub(mask)) & mask;
    }
    out.sort_unstable();
    out
}

/// A finite root system of semisimple rank `r` with `c` extra central
/// directions that every Weyl operation fixes.
#[derive(Clone, Debug)]
pub struct RootSystem {
    /// `cartan[j][i]` is the coefficient of the `j`-th fundamental weight in
    /// the `i`-th simple root; column `i` is the simple root in weight
    /// coordinates.
    pub cartan: Mat64,
    pub ss_rank: usize,
    pub central_rank: usize,
    /// Positive roots in simple-root coordinates.
    pub positive_roots: Vec<Vec<i64>>,
    /// Simple reflections acting on the weight lattice (weight coordinates).
    refl_weight: Vec<Mat64>,
    /// Simple reflections acting on the character lattice (root coordinates).
    refl_char: Vec<Mat64>,
    /// Simple reflections acting on the cocharacter lattice (coweight
    /// coordinates); contragredient to `refl_char`.
    refl_cochar: Vec<Mat64>,
}

impl RootSystem {
    pub fn from_cartan(cartan: Mat64, central_rank: usize) -> Result<Self, Error> {
        let r = cartan.len();
        if cartan.iter().any(|row| row.len() != r) {
            return Err(Error::Validation("Cartan matrix must be square".into()));
        }
        for i in 0..r {
            if cartan[i][i] != 2 {
                return Err(Error::Validation(format!(
                    "Cartan diagonal entry ({i},{i}) must be 2"
                )));
            }
            for j in 0..r {
                if i != j {
                    if cartan[i][j] > 0 {
                        return Err(Error::Validation(format!(
                            "Cartan off-diagonal entry ({i},{j}) must be <= 0"
                        )));
                    }
                    if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                        return Err(Error::Validation(format!(
                            "Cartan zero pattern must be symmetric at ({i},{j})"
                        )));
                    }
                }
            }
        }
        check_finite_type(&cartan)?;

        // Reflection s_i on weight coordinates: lambda -> lambda - lambda_i * alpha_i,
        // so the matrix is I - (column i of the Cartan matrix) * e_i^T.
        let mut refl_weight = Vec::with_capacity(r);
        let mut refl_char = Vec::with_capacity(r);
        let mut refl_cochar = Vec::with_capacity(r);
        for i in 0..r {
            let mut mw = mat_identity(r);
            for j in 0..r {
                mw[j][i] -= cartan[j][i];
            }
            // On root coordinates: alpha_j -> alpha_j - cartan[i][j] alpha_i,
            // the matrix I - e_i * (row i of the Cartan matrix).
            let mut mc = mat_identity(r);
            for j in 0..r {
                mc[i][j] -= cartan[i][j];
            }
            refl_cochar.push(mat_transpose(&mc));
            refl_weight.push(mw);
            refl_char.push(mc);
        }

        let positive_roots = positive_roots_closure(&refl_char, r)?;

        Ok(RootSystem {
            cartan,
            ss_rank: r,
            central_rank,
            positive_roots,
            refl_weight,
            refl_char,
            refl_cochar,
        })
    }

    pub fn a1() -> Self {
        Self::from_cartan(vec![vec![2]], 0).unwrap()
    }

    pub fn a2() -> Self {
        Self::from_cartan(vec![vec![2, -1], vec![-1, 2]], 0).unwrap()
    }

    pub fn a1xa1() -> Self {
        Self::from_cartan(vec![vec![2, 0], vec![0, 2]], 0).unwrap()
    }

    pub fn b2() -> Self {
        Self::from_cartan(vec![vec![2, -1], vec![-2, 2]], 0).unwrap()
    }

    /// Total lattice dimension `r + c`.
    pub fn dim(&self) -> usize {
        self.ss_rank + self.central_rank
    }

    pub fn full_mask(&self) -> SubsetMask {
        ((1u64 << self.ss_rank) - 1) as SubsetMask
    }

    /// Simple root `alpha_i` as a weight (column `i` of the Cartan matrix).
    pub fn simple_root(&self, i: usize) -> Weight {
        let ss = (0..self.ss_rank).map(|j| self.cartan[j][i]).collect();
        Weight::new(ss, vec![0; self.central_rank])
    }

    /// Fundamental weight `omega_i`.
    pub fn fundamental_weight(&self, i: usize) -> Weight {
        Weight::fundamental(i, self.ss_rank, self.central_rank)
    }

    /// Embed a character of the compactified torus into the weight lattice:
    /// the semisimple block is in root coordinates and is rewritten in
    /// fundamental-weight coordinates through the Cartan matrix, the central
    /// block passes through unchanged.
    pub fn char_to_weight(&self, m: &[i64]) -> Weight {
        assert_eq!(m.len(), self.dim(), "character has the wrong length");
        Weight::new(
            mat_vec(&self.cartan, &m[..self.ss_rank]),
            m[self.ss_rank..].to_vec(),
        )
    }

    /// `e^{lambda}` for a weight.
    pub fn exp(&self, w: Weight) -> LaurentElement {
        LaurentElement::exp(w)
    }

    pub fn one(&self) -> LaurentElement {
        LaurentElement::one(self.ss_rank, self.central_rank)
    }
}

fn check_finite_type(cartan: &Mat64) -> Result<(), Error> {
    let r = cartan.len();
    // Symmetrize: find positive rationals d_i with d_i c_ij = d_j c_ji.
    let mut d: Vec<Option<BigRational>> = vec![None; r];
    for start in 0..r {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(BigRational::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..r {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                let ratio = BigRational::new(BigInt::from(cartan[j][i]), BigInt::from(cartan[i][j]));
                let dj = d[i].clone().unwrap() * ratio;
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(old) => {
                        if *old != dj {
                            return Err(Error::Validation(
                                "Cartan matrix is not symmetrizable".into(),
                            ));
                        }
                    }
                }
            }
        }
    }
    // Positive-definiteness of (d_i c_ij) via leading principal minors.
    let sym: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| d[i].clone().unwrap() * BigRational::from(BigInt::from(cartan[i][j])))
                .collect()
        })
        .collect();
    for k in 1..=r {
        let minor = rational_det(&sym, k);
        if minor <= BigRational::zero() {
            return Err(Error::Validation(
                "Cartan matrix is not of finite type (symmetrization not positive definite)"
                    .into(),
            ));
        }
    }
    Ok(())
}

fn rational_det(m: &[Vec<BigRational>], k: usize) -> BigRational {
    let mut a: Vec<Vec<BigRational>> = (0..k).map(|i| m[i][..k].to_vec()).collect();
    let mut det = BigRational::one();
    for col in 0..k {
        let pivot = (col..k).find(|&i| !a[i][col].is_zero());
        let Some(p) = pivot else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= a[col][col].clone();
        for i in col + 1..k {
            let f = a[i][col].clone() / a[col][col].clone();
            for j in col..k {
                let sub = f.clone() * a[col][j].clone();
                a[i][j] -= sub;
            }
        }
    }
    det
}

fn positive_roots_closure(refl_char: &[Mat64], r: usize) -> Result<Vec<Vec<i64>>, Error> {
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut seen: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    let mut queue: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    while let Some(root) = queue.pop() {
        if !seen.insert(root.clone()) {
            continue;
        }
        if seen.len() > 100_000 {
            return Err(Error::Validation("root closure did not terminate".into()));
        }
        for refl in refl_char {
            queue.push(mat_vec(refl, &root));
        }
    }
    for root in seen {
        if root.iter().all(|&x| x >= 0) && root.iter().any(|&x| x > 0) {
            roots.push(root);
        }
    }
    roots.sort_unstable();
    Ok(roots)
}

/// An element of the Weyl group: a reduced word together with its action on
/// the three lattices. Elements are canonicalized (and compared) by the
/// weight-lattice matrix; words are bookkeeping only.
#[derive(Clone, Debug)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub mat_weight: Mat64,
    pub mat_char: Mat64,
    pub mat_cochar: Mat64,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat_weight == other.mat_weight
    }
}
impl Eq for WeylElement {}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        WeylElement {
            word: Vec::new(),
            mat_weight: mat_identity(rs.ss_rank),
            mat_char: mat_identity(rs.ss_rank),
            mat_cochar: mat_identity(rs.ss_rank),
        }
    }

    pub fn generator(rs: &RootSystem, i: usize) -> Self {
        WeylElement {
            word: vec![i],
            mat_weight: rs.refl_weight[i].clone(),
            mat_char: rs.refl_char[i].clone(),
            mat_cochar: rs.refl_cochar[i].clone(),
        }
    }

    /// Right multiplication by a simple reflection.
    fn extend(&self, rs: &RootSystem, i: usize) -> Self {
        let mut word = self.word.clone();
        word.push(i);
        WeylElement {
            word,
            mat_weight: mat_mul(&self.mat_weight, &rs.refl_weight[i]),
            mat_char: mat_mul(&self.mat_char, &rs.refl_char[i]),
            mat_cochar: mat_mul(&self.mat_cochar, &rs.refl_cochar[i]),
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement {
            word,
            mat_weight: mat_mul(&self.mat_weight, &other.mat_weight),
            mat_char: mat_mul(&self.mat_char, &other.mat_char),
            mat_cochar: mat_mul(&self.mat_cochar, &other.mat_cochar),
        }
    }

    /// The inverse element, rebuilt from the reversed word (generators are
    /// involutions, so the reversed word inverts the product).
    pub fn inverse(&self, rs: &RootSystem) -> Self {
        let mut w = WeylElement::identity(rs);
        for &i in self.word.iter().rev() {
            w = w.extend(rs, i);
        }
        w
    }

    pub fn is_identity(&self) -> bool {
        self.mat_weight == mat_identity(self.mat_weight.len())
    }

    /// Apply to a weight; the central block is fixed pointwise.
    pub fn act_weight(&self, w: &Weight) -> Weight {
        assert_eq!(
            w.ss.len(),
            self.mat_weight.len(),
            "weight rank does not match this Weyl element"
        );
        Weight::new(mat_vec(&self.mat_weight, &w.ss), w.central.clone())
    }

    /// Apply to a character in root coordinates.
    pub fn act_char(&self, m: &[i64]) -> Vec<i64> {
        mat_vec(&self.mat_char, m)
    }

    /// Apply to a cocharacter in coweight coordinates (the semisimple
    /// block); central block fixed.
    pub fn act_cochar(&self, v: &[i64]) -> Vec<i64> {
        let r = self.mat_cochar.len();
        let mut out = mat_vec(&self.mat_cochar, &v[..r]);
        out.extend_from_slice(&v[r..]);
        out
    }

    /// Apply to every exponent of a Laurent element.
    pub fn act_laurent(&self, f: &LaurentElement) -> LaurentElement {
        f.map_exponents(|w| self.act_weight(w))
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, rs: &RootSystem) -> usize {
        rs.positive_roots
            .iter()
            .filter(|root| {
                let img = self.act_char(root);
                img.iter().all(|&x| x <= 0)
            })
            .count()
    }
}

/// `true` iff `f` is fixed by every listed generator.
pub fn is_invariant(rs: &RootSystem, f: &LaurentElement, gens: &[usize]) -> bool {
    gens.iter().all(|&i| {
        let s = WeylElement::generator(rs, i);
        s.act_laurent(f) == *f
    })
}

/// The full Weyl group, enumerated breadth-first so the element list is
/// sorted by length and the first word found for each element is reduced.
/// Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
    index: HashMap<Vec<i64>, usize>,
}

fn matrix_key(m: &Mat64) -> Vec<i64> {
    m.iter().flatten().cloned().collect()
}

pub const DEFAULT_WEYL_BOUND: usize = 1_000_000;

impl WeylGroup {
    pub fn enumerate(rs: &RootSystem) -> Result<Self, Error> {
        Self::enumerate_bounded(rs, DEFAULT_WEYL_BOUND)
    }

    pub fn enumerate_bounded(rs: &RootSystem, bound: usize) -> Result<Self, Error> {
        let mut elements: Vec<WeylElement> = Vec::new();
        let mut index = HashMap::new();
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(WeylElement::identity(rs));
        while let Some(w) = queue.pop_front() {
            let key = matrix_key(&w.mat_weight);
            if index.contains_key(&key) {
                continue;
            }
            if elements.len() >= bound {
                return Err(Error::Validation(format!(
                    "Weyl group exceeds the configured bound {bound}"
                )));
            }
            index.insert(key, elements.len());
            for i in 0..rs.ss_rank {
                queue.push_back(w.extend(rs, i));
            }
            elements.push(w);
        }
        Ok(WeylGroup { elements, index })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, w: &WeylElement) -> usize {
        *self
            .index
            .get(&matrix_key(&w.mat_weight))
            .expect("element belongs to this group")
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    /// Index of the product of two elements given by index.
    pub fn mul(&self, rs: &RootSystem, a: usize, b: usize) -> usize {
        let _ = rs;
        let m = mat_mul(
            &self.elements[a].mat_weight,
            &self.elements[b].mat_weight,
        );
        *self.index.get(&matrix_key(&m)).expect("closed under products")
    }

    /// Index of the inverse element.
    pub fn inverse(&self, rs: &RootSystem, a: usize) -> usize {
        self.index_of(&self.elements[a].inverse(rs))
    }

    /// Indices of the longest elements (unique for irreducible finite type;
    /// the maximum-length element is unique for any finite Weyl group).
    pub fn longest(&self) -> usize {
        self.elements.len() - 1
    }
}

/// `W^I`: minimal length coset representatives, identified by the root
/// condition `w(Phi_I^+) subset Phi^+`.
pub fn minimal_coset_reps(rs: &RootSystem, wg: &WeylGroup, mask: SubsetMask) -> Vec<usize> {
    let phi_i_plus: Vec<&Vec<i64>> = rs
        .positive_roots
        .iter()
        .filter(|root| {
            root.iter()
                .enumerate()
                .all(|(j, &x)| x == 0 || mask & (1 << j) != 0)
        })
        .collect();
    (0..wg.order())
        .filter(|&wi| {
            let w = wg.element(wi);
            phi_i_plus.iter().all(|root| {
                let img = w.act_char(root);
                img.iter().all(|&x| x >= 0)
            })
        })
        .collect()
}

/// `W_I`: the parabolic subgroup generated by the reflections in `mask`.
pub fn parabolic_elements(rs: &RootSystem, wg: &WeylGroup, mask: SubsetMask) -> Vec<usize> {
    let gens: Vec<usize> = subset_indices(mask)
        .into_iter()
        .filter(|&i| i < rs.ss_rank)
        .map(|i| wg.index_of(&WeylElement::generator(rs, i)))
        .collect();
    let mut seen = vec![false; wg.order()];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut out = Vec::new();
    while let Some(x) = stack.pop() {
        out.push(x);
        for &g in &gens {
            let y = wg.mul(rs, x, g);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// The partition pieces `C^I = W^{complement I} minus the union of
/// `W^{complement J}` over proper subsets `J` of `I`, for all `I`.
/// Returned as a vector indexed by the mask `I`.
pub fn c_sets(rs: &RootSystem, wg: &WeylGroup) -> Vec<Vec<usize>> {
    let full = rs.full_mask();
    let n_masks = 1usize << rs.ss_rank;
    let w_upper: Vec<Vec<usize>> = (0..n_masks)
        .map(|i| minimal_coset_reps(rs, wg, full & !(i as SubsetMask)))
        .collect();
    let mut out = Vec::with_capacity(n_masks);
    for i in 0..n_masks {
        let mut member = vec![false; wg.order()];
        for &w in &w_upper[i] {
            member[w] = true;
        }
        for j in submasks(i as SubsetMask) {
            if j as usize == i {
                continue;
            }
            for &w in &w_upper[j as usize] {
                member[w] = false;
            }
        }
        out.push((0..wg.order()).filter(|&w| member[w]).collect());
    }
    out
}

/// For every element index, the unique mask `I` with the element in `C^I`.
pub fn c_set_of(rs: &RootSystem, wg: &WeylGroup) -> Vec<SubsetMask> {
    let sets = c_sets(rs, wg);
    let mut out = vec![u32::MAX; wg.order()];
    for (mask, set) in sets.iter().enumerate() {
        for &w in set {
            assert_eq!(out[w], u32::MAX, "partition pieces must be disjoint");
            out[w] = mask as SubsetMask;
        }
    }
    assert!(
        out.iter().all(|&m| m != u32::MAX),
        "partition pieces must cover the group"
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_orders() {
        let cases = [
            (RootSystem::a1(), 2),
            (RootSystem::a2(), 6),
            (RootSystem::a1xa1(), 4),
            (RootSystem::b2(), 8),
        ];
        for (rs, order) in cases {
            let wg = WeylGroup::enumerate(&rs).unwrap();
            assert_eq!(wg.order(), order);
        }
    }

    #[test]
    fn a2_lengths_sorted() {
        let rs = RootSystem::a2();
        let wg = WeylGroup::enumerate(&rs).unwrap();
        let lengths: Vec<usize> = wg.elements.iter().map(|w| w.word.len()).collect();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3]);
        // word length equals inversion count for every element
        for w in &wg.elements {
            assert_eq!(w.word.len(), w.length(&rs));
        }
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(RootSystem::a1().positive_roots.len(), 1);
        assert_eq!(RootSystem::a2().positive_roots.len(), 3);
        assert_eq!(RootSystem::a1xa1().positive_roots.len(), 2);
        assert_eq!(RootSystem::b2().positive_roots.len(), 4);
    }

    #[test]
    fn a2_simple_reflection_on_weights() {
        // s_1(omega_1) = omega_2 - omega_1 via the Cartan matrix action.
        let rs = RootSystem::a2();
        let s1 = WeylElement::generator(&rs, 0);
        let w = s1.act_weight(&rs.fundamental_weight(0));
        assert_eq!(w, Weight::new(vec![-1, 1], vec![]));
    }

    #[test]
    fn a1_reflection_negates_omega() {
        let rs = RootSystem::a1();
        let s = WeylElement::generator(&rs, 0);
        assert_eq!(
            s.act_weight(&rs.fundamental_weight(0)),
            Weight::new(vec![-1], vec![])
        );
    }

    #[test]
    fn minimal_reps_a2() {
        let rs = RootSystem::a2();
        let wg = WeylGroup::enumerate(&rs).unwrap();
        // I = {alpha_2}: W^I = {e, s_1, s_2 s_1}
        let reps = minimal_coset_reps(&rs, &wg, 0b10);
        assert_eq!(reps.len(), 3);
        let words: Vec<Vec<usize>> =
            reps.iter().map(|&i| wg.element(i).word.clone()).collect();
        assert!(words.contains(&vec![]));
        assert!(words.contains(&vec![0]));
        assert!(words.contains(&vec![1, 0]));
        // I = empty: all of W
        assert_eq!(minimal_coset_reps(&rs, &wg, 0).len(), 6);
    }

    #[test]
    fn parabolic_sizes() {
        let rs = RootSystem::b2();
        let wg = WeylGroup::enumerate(&rs).unwrap();
        assert_eq!(parabolic_elements(&rs, &wg, 0).len(), 1);
        assert_eq!(parabolic_elements(&rs, &wg, 0b11).len(), 8);
        for mask in [0b01u32, 0b10] {
            let wi = parabolic_elements(&rs, &wg, mask).len();
            let reps = minimal_coset_reps(&rs, &wg, mask).len();
            assert_eq!(wi * reps, wg.order());
        }
    }

    #[test]
    fn c_sets_sizes() {
        let rs = RootSystem::a2();
        let wg = WeylGroup::enumerate(&rs).unwrap();
        let sets = c_sets(&rs, &wg);
        let sizes: Vec<usize> = sets.iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![1, 2, 2, 1]);
        // C^empty = {e}
        assert_eq!(sets[0], vec![0]);
        let rs = RootSystem::a1();
        let wg = WeylGroup::enumerate(&rs).unwrap();
        let sets = c_sets(&rs, &wg);
        assert_eq!(sets[0], vec![0]);
        assert_eq!(sets[1], vec![1]);
    }

    #[test]
    fn coset_factorization_unique_and_additive() {
        let rs = RootSystem::b2();
        let wg = WeylGroup::enumerate(&rs).unwrap();
        for mask in 0..4u32 {
            let reps = minimal_coset_reps(&rs, &wg, mask);
            let par = parabolic_elements(&rs, &wg, mask);
            for w in 0..wg.order() {
                let mut found = 0;
                for &a in &reps {
                    for &b in &par {
                        if wg.mul(&rs, a, b) == w {
                            found += 1;
                            assert_eq!(
                                wg.element(a).word.len() + wg.element(b).word.len(),
                                wg.element(w).word.len(),
                                "lengths must add in the coset factorization"
                            );
                        }
                    }
                }
                assert_eq!(found, 1, "factorization must be unique");
            }
        }
    }

    #[test]
    fn enumeration_bound_is_enforced() {
        let rs = RootSystem::b2();
        assert!(WeylGroup::enumerate_bounded(&rs, 3).is_err());
    }

    #[test]
    fn invalid_cartan_rejected() {
        assert!(RootSystem::from_cartan(vec![vec![2, -1], vec![0, 2]], 0).is_err());
        assert!(RootSystem::from_cartan(vec![vec![2, -2], vec![-2, 2]], 0).is_err());
        assert!(RootSystem::from_cartan(vec![vec![1]], 0).is_err());
    }
}
