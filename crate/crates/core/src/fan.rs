//! Rational polyhedral cones and fans over the cocharacter lattice, with
//! every computation in exact integer or rational arithmetic: Weyl-chamber
//! fans and their subdivisions, adjacency and wall characters, piecewise
//! linear functions and ampleness, the moment ordering with its
//! distinguished faces and star property, and GIT invariants through the
//! Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

use crate::linalg::{integer_kernel, mat_det, mat_inverse_unimodular, smith_normal_form, Mat64};
use crate::root::{RootSystem, WeylGroup};
use crate::Error;

/// A cone, as a sorted list of indices into the ambient fan's ray list.
pub type Cone = Vec<usize>;

/// A fan given by primitive rays and its maximal cones. Faces of simplicial
/// cones are exactly the subsets of their ray sets, so the face closure is
/// derived rather than stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Cone>,
}

/// One violated condition of a fan validity check, with a witness.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FanViolation {
    pub kind: String,
    pub witness: String,
}

impl Fan {
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Cone>) -> Result<Self, Error> {
        for r in &rays {
            if r.len() != dim {
                return Err(Error::Validation(format!(
                    "ray {r:?} does not have dimension {dim}"
                )));
            }
        }
        for c in &max_cones {
            for &i in c {
                if i >= rays.len() {
                    return Err(Error::Validation(format!(
                        "cone {c:?} references a ray index out of range"
                    )));
                }
            }
        }
        let max_cones = max_cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        Ok(Fan {
            dim,
            rays,
            max_cones,
        })
    }

    pub fn ray(&self, i: usize) -> &[i64] {
        &self.rays[i]
    }

    /// All cones (the face closure of the maximal cones), the zero cone
    /// included, in a deterministic order.
    pub fn all_cones(&self) -> Vec<Cone> {
        let mut set: BTreeSet<Cone> = BTreeSet::new();
        for c in &self.max_cones {
            for mask in 0..(1u64 << c.len()) {
                let face: Cone = c
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) != 0)
                    .map(|(_, &i)| i)
                    .collect();
                set.insert(face);
            }
        }
        set.into_iter().collect()
    }

    /// Ray matrix of a cone, columns indexed by the cone's rays.
    fn ray_columns(&self, cone: &[usize]) -> Mat64 {
        (0..self.dim)
            .map(|row| cone.iter().map(|&i| self.rays[i][row]).collect())
            .collect()
    }

    /// Absolute determinant of a full-dimensional cone's ray matrix.
    pub fn cone_det(&self, cone: &[usize]) -> BigInt {
        mat_det(&self.ray_columns(cone)).abs()
    }

    /// Dual basis forms of a unimodular full-dimensional cone, one row per
    /// ray, in character coordinates.
    pub fn dual_basis(&self, cone: &[usize]) -> Option<Mat64> {
        if cone.len() != self.dim {
            return None;
        }
        mat_inverse_unimodular(&self.ray_columns(cone))
    }

    /// Halfspace description of a full-dimensional simplicial cone: rows
    /// pairing nonnegatively on the cone, zero exactly on the facets.
    fn hrep(&self, cone: &[usize]) -> Option<Vec<Vec<BigInt>>> {
        if cone.len() != self.dim {
            return None;
        }
        let b = self.ray_columns(cone);
        let det = mat_det(&b);
        if det.is_zero() {
            return None;
        }
        let n = self.dim;
        // adjugate rows scaled to pair positively with the cone's own rays
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let minor: Mat64 = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| (0..n).filter(|&c| c != i).map(|c| b[r][c]).collect())
                    .collect();
                let m = if n == 1 { BigInt::one() } else { mat_det(&minor) };
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                row.push(m * sign * if det.is_negative() { -1 } else { 1 });
            }
            rows.push(row);
        }
        Some(rows)
    }

    /// `true` when `v` lies in the (full-dimensional simplicial) cone.
    pub fn cone_contains(&self, cone: &[usize], v: &[i64]) -> bool {
        let h = self.hrep(cone).expect("full-dimensional cone");
        h.iter().all(|row| !dot_big(row, v).is_negative())
    }
}

fn dot_big(a: &[BigInt], b: &[i64]) -> BigInt {
    a.iter()
        .zip(b)
        .map(|(x, y)| x * BigInt::from(*y))
        .sum::<BigInt>()
}

fn primitive(v: &[BigInt]) -> Vec<i64> {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.iter().map(|_| 0).collect();
    }
    v.iter()
        .map(|x| i64::try_from(x / &g).expect("primitive ray entry fits i64"))
        .collect()
}

fn is_primitive(v: &[i64]) -> bool {
    let mut g: i64 = 0;
    for &x in v {
        g = g.gcd(&x);
    }
    g == 1
}

// ---------------------------------------------------------------------------
// Cone intersection via the double description method
// ---------------------------------------------------------------------------

/// Extreme rays of the intersection of two full-dimensional simplicial
/// cones, as primitive vectors. The halfspaces of the second cone are added
/// one at a time to the ray description of the first.
pub fn cone_intersection_rays(fan: &Fan, c1: &[usize], c2: &[usize]) -> Vec<Vec<i64>> {
    let h1 = fan.hrep(c1).expect("full-dimensional simplicial cone");
    let h2 = fan.hrep(c2).expect("full-dimensional simplicial cone");
    let mut constraints: Vec<Vec<BigInt>> = h1;
    // current extreme rays with their tight constraint sets
    let mut rays: Vec<(Vec<BigInt>, BTreeSet<usize>)> = c1
        .iter()
        .map(|&i| {
            let v: Vec<BigInt> = fan.rays[i].iter().map(|&x| BigInt::from(x)).collect();
            let tight = constraints
                .iter()
                .enumerate()
                .filter(|(_, row)| {
                    row.iter()
                        .zip(&v)
                        .map(|(a, b)| a * b)
                        .sum::<BigInt>()
                        .is_zero()
                })
                .map(|(k, _)| k)
                .collect();
            (v, tight)
        })
        .collect();

    for h in h2 {
        let idx = constraints.len();
        let eval = |v: &[BigInt]| -> BigInt { h.iter().zip(v).map(|(a, b)| a * b).sum() };
        let mut plus = Vec::new();
        let mut zero = Vec::new();
        let mut minus = Vec::new();
        for (k, (v, _)) in rays.iter().enumerate() {
            let s = eval(v);
            if s.is_zero() {
                zero.push(k);
            } else if s.is_positive() {
                plus.push(k);
            } else {
                minus.push(k);
            }
        }
        let mut next: Vec<(Vec<BigInt>, BTreeSet<usize>)> = Vec::new();
        for &k in &plus {
            next.push(rays[k].clone());
        }
        for &k in &zero {
            let mut r = rays[k].clone();
            r.1.insert(idx);
            next.push(r);
        }
        for &p in &plus {
            for &m in &minus {
                // combinatorial adjacency: no third ray is tight on the
                // common tight set of the pair
                let common: BTreeSet<usize> = rays[p].1.intersection(&rays[m].1).cloned().collect();
                let adjacent = rays.iter().enumerate().all(|(k, (_, t))| {
                    k == p || k == m || !common.is_subset(t)
                });
                if !adjacent {
                    continue;
                }
                let sp = eval(&rays[p].0);
                let sm = eval(&rays[m].0);
                let combo: Vec<BigInt> = rays[p]
                    .0
                    .iter()
                    .zip(&rays[m].0)
                    .map(|(a, b)| &sp * b - &sm * a)
                    .collect();
                let prim: Vec<BigInt> = primitive(&combo).iter().map(|&x| BigInt::from(x)).collect();
                let mut tight: BTreeSet<usize> = common;
                tight.insert(idx);
                // recompute tight set exactly against all constraints so far
                let mut full_tight = BTreeSet::new();
                for (ci, row) in constraints.iter().enumerate() {
                    if row
                        .iter()
                        .zip(&prim)
                        .map(|(a, b)| a * b)
                        .sum::<BigInt>()
                        .is_zero()
                    {
                        full_tight.insert(ci);
                    }
                }
                full_tight.insert(idx);
                let _ = tight;
                next.push((prim, full_tight));
            }
        }
        // dedup primitive rays
        let mut seen = BTreeSet::new();
        rays = next
            .into_iter()
            .filter(|(v, _)| seen.insert(primitive(v)))
            .collect();
        constraints.push(h);
    }
    rays.into_iter().map(|(v, _)| primitive(&v)).collect()
}

/// Check that the intersection of two full-dimensional simplicial cones is
/// exactly the cone spanned by their common rays.
pub fn intersection_is_common_face(fan: &Fan, c1: &[usize], c2: &[usize]) -> bool {
    let common: Vec<usize> = c1.iter().filter(|i| c2.contains(i)).cloned().collect();
    let h1 = fan.hrep(c1).expect("full-dimensional cone");
    // positions of the common rays inside c1
    let keep: Vec<usize> = c1
        .iter()
        .enumerate()
        .filter(|(_, i)| common.contains(i))
        .map(|(k, _)| k)
        .collect();
    for r in cone_intersection_rays(fan, c1, c2) {
        // coordinates of r in the ray basis of c1 are its pairings with the
        // scaled dual rows; membership in the common face needs the
        // complementary coordinates to vanish
        for (k, row) in h1.iter().enumerate() {
            let coord = dot_big(row, &r);
            if keep.contains(&k) {
                if coord.is_negative() {
                    return false;
                }
            } else if !coord.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Pairwise fan condition over all maximal cones.
pub fn pairwise_fan_violations(fan: &Fan) -> Vec<FanViolation> {
    let mut out = Vec::new();
    for (a, ca) in fan.max_cones.iter().enumerate() {
        for (b, cb) in fan.max_cones.iter().enumerate().skip(a + 1) {
            if !intersection_is_common_face(fan, ca, cb) {
                out.push(FanViolation {
                    kind: "intersection-not-common-face".into(),
                    witness: format!("maximal cones {a} and {b}"),
                });
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Chamber fans
// ---------------------------------------------------------------------------

/// The complete Weyl-chamber fan: all translates of the positive chamber
/// (the standard orthant in coweight coordinates). The positive chamber is
/// the first maximal cone. Central rank must be zero.
pub fn chamber_fan(rs: &RootSystem, wg: &WeylGroup) -> Result<Fan, Error> {
    if rs.central_rank != 0 {
        return Err(Error::Validation(
            "chamber fans are only constructed for semisimple (central rank 0) systems".into(),
        ));
    }
    let n = rs.ss_rank;
    let mut rays: Vec<Vec<i64>> = Vec::new();
    let mut ray_index = std::collections::HashMap::new();
    let mut max_cones: Vec<Cone> = Vec::new();
    let mut seen = BTreeSet::new();
    for w in &wg.elements {
        let mut cone: Cone = Vec::with_capacity(n);
        for j in 0..n {
            let e: Vec<i64> = (0..n).map(|k| i64::from(k == j)).collect();
            let img = w.act_cochar(&e);
            let idx = *ray_index.entry(img.clone()).or_insert_with(|| {
                rays.push(img.clone());
                rays.len() - 1
            });
            cone.push(idx);
        }
        cone.sort_unstable();
        if seen.insert(cone.clone()) {
            max_cones.push(cone);
        }
    }
    Fan::new(n, rays, max_cones)
}

/// The positive chamber as a one-cone fan (the wonderful case).
pub fn positive_chamber_fan(rs: &RootSystem) -> Result<Fan, Error> {
    if rs.central_rank != 0 {
        return Err(Error::Validation(
            "chamber fans are only constructed for semisimple (central rank 0) systems".into(),
        ));
    }
    let n = rs.ss_rank;
    let rays: Vec<Vec<i64>> = (0..n)
        .map(|j| (0..n).map(|k| i64::from(k == j)).collect())
        .collect();
    Fan::new(n, rays, vec![(0..n).collect()])
}

/// Validation report for a subdivision of the positive chamber.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SubdivisionReport {
    pub valid: bool,
    pub maximal_cone_count: usize,
    pub violations: Vec<FanViolation>,
}

/// Check that `fan_plus` is a smooth subdivision of the positive Weyl
/// chamber and that its Weyl translates glue into a complete fan.
pub fn validate_positive_subdivision(
    rs: &RootSystem,
    wg: &WeylGroup,
    fan_plus: &Fan,
) -> Result<SubdivisionReport, Error> {
    if rs.central_rank != 0 {
        return Err(Error::Validation(
            "subdivision validation requires central rank 0".into(),
        ));
    }
    let n = rs.ss_rank;
    let mut violations = Vec::new();
    if fan_plus.dim != n {
        return Err(Error::Validation(format!(
            "fan dimension {} does not match the rank {}",
            fan_plus.dim, n
        )));
    }
    for (i, r) in fan_plus.rays.iter().enumerate() {
        if !is_primitive(r) {
            violations.push(FanViolation {
                kind: "ray-not-primitive".into(),
                witness: format!("ray {i} = {r:?}"),
            });
        }
        if r.iter().any(|&x| x < 0) {
            violations.push(FanViolation {
                kind: "ray-outside-chamber".into(),
                witness: format!("ray {i} = {r:?}"),
            });
        }
    }
    for (k, cone) in fan_plus.max_cones.iter().enumerate() {
        if cone.len() != n {
            violations.push(FanViolation {
                kind: "maximal-cone-not-full-dimensional".into(),
                witness: format!("cone {k} = {cone:?}"),
            });
            continue;
        }
        let det = fan_plus.cone_det(cone);
        if det != BigInt::one() {
            violations.push(FanViolation {
                kind: "maximal-cone-not-unimodular".into(),
                witness: format!("cone {k} = {cone:?} has determinant {det}"),
            });
        }
    }
    violations.extend(pairwise_fan_violations(fan_plus));

    // Support = positive chamber: compare truncated volumes, exact.
    if violations.is_empty() {
        let theta: Vec<i64> = vec![1; n]; // sum of simple roots, pairing = sum of coords
        let mut total = BigRational::zero();
        for cone in &fan_plus.max_cones {
            let cols = fan_plus.ray_columns(cone);
            let det = mat_det(&cols).abs();
            let mut denom = BigInt::one();
            for &i in cone {
                let t: i64 = fan_plus.rays[i]
                    .iter()
                    .zip(&theta)
                    .map(|(a, b)| a * b)
                    .sum();
                denom *= BigInt::from(t);
            }
            total += BigRational::new(det, denom);
        }
        if total != BigRational::one() {
            violations.push(FanViolation {
                kind: "support-not-equal-to-chamber".into(),
                witness: format!("truncated volume ratio {total}"),
            });
        }
    }

    // Weyl translates must glue into a fan.
    if violations.is_empty() {
        let full = translate_fan(rs, wg, fan_plus)?;
        violations.extend(
            pairwise_fan_violations(&full)
                .into_iter()
                .map(|v| FanViolation {
                    kind: format!("translates-{}", v.kind),
                    witness: v.witness,
                }),
        );
    }

    Ok(SubdivisionReport {
        valid: violations.is_empty(),
        maximal_cone_count: fan_plus.max_cones.len(),
        violations,
    })
}

/// The complete fan of Weyl translates of a chamber subdivision.
pub fn translate_fan(rs: &RootSystem, wg: &WeylGroup, fan_plus: &Fan) -> Result<Fan, Error> {
    let _ = rs;
    let mut rays: Vec<Vec<i64>> = Vec::new();
    let mut ray_index = std::collections::HashMap::new();
    let mut max_cones: Vec<Cone> = Vec::new();
    let mut seen = BTreeSet::new();
    for w in &wg.elements {
        for cone in &fan_plus.max_cones {
            let mut img: Cone = Vec::with_capacity(cone.len());
            for &i in cone {
                let r = w.act_cochar(&fan_plus.rays[i]);
                let idx = *ray_index.entry(r.clone()).or_insert_with(|| {
                    rays.push(r.clone());
                    rays.len() - 1
                });
                img.push(idx);
            }
            img.sort_unstable();
            if seen.insert(img.clone()) {
                max_cones.push(img);
            }
        }
    }
    Fan::new(fan_plus.dim, rays, max_cones)
}

// ---------------------------------------------------------------------------
// Walls and root-orthogonal facets
// ---------------------------------------------------------------------------

/// A shared facet between two maximal cones, with its primitive character,
/// sign-normalized to be nonnegative on the first cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub cone_a: usize,
    pub cone_b: usize,
    /// Primitive character vanishing on the facet, in root coordinates of
    /// the character lattice dual to the ray lattice.
    pub chi: Vec<i64>,
}

/// All adjacent pairs of maximal cones with their wall characters. Call on
/// validated fans only: adjacency is read off the shared ray sets.
pub fn walls(fan: &Fan) -> Result<Vec<Wall>, Error> {
    let n = fan.dim;
    let mut out = Vec::new();
    for a in 0..fan.max_cones.len() {
        for b in a + 1..fan.max_cones.len() {
            let common: Vec<usize> = fan.max_cones[a]
                .iter()
                .filter(|i| fan.max_cones[b].contains(i))
                .cloned()
                .collect();
            if common.len() != n - 1 {
                continue;
            }
            let chi = wall_character(fan, &fan.max_cones[a], &fan.max_cones[b])?;
            out.push(Wall {
                cone_a: a,
                cone_b: b,
                chi,
            });
        }
    }
    Ok(out)
}

/// The primitive character vanishing on the common facet of two adjacent
/// maximal cones, nonnegative on the first.
pub fn wall_character(fan: &Fan, c1: &[usize], c2: &[usize]) -> Result<Vec<i64>, Error> {
    let n = fan.dim;
    let common: Vec<usize> = c1.iter().filter(|i| c2.contains(i)).cloned().collect();
    if common.len() != n - 1 {
        return Err(Error::Validation(format!(
            "cones {c1:?} and {c2:?} are not adjacent"
        )));
    }
    let rows: Vec<Vec<i64>> = common.iter().map(|&i| fan.rays[i].clone()).collect();
    let kernel = integer_kernel(&rows, n);
    if kernel.len() != 1 {
        return Err(Error::Validation(format!(
            "facet {common:?} does not span a hyperplane"
        )));
    }
    let mut chi: Vec<i64> = kernel[0]
        .iter()
        .map(|x| i64::try_from(x).expect("wall character entry fits i64"))
        .collect();
    // normalize nonnegative on c1 using a ray of c1 off the facet
    let extra = c1
        .iter()
        .find(|i| !common.contains(i))
        .expect("adjacent cones differ in one ray");
    let s: i64 = chi
        .iter()
        .zip(&fan.rays[*extra])
        .map(|(a, b)| a * b)
        .sum();
    if s < 0 {
        for x in &mut chi {
            *x = -*x;
        }
    }
    Ok(chi)
}

/// `true` iff some facet of the (full-dimensional simplicial) cone lies in
/// the hyperplane orthogonal to the given character.
pub fn facet_orthogonal_to(fan: &Fan, cone: &[usize], chi: &[i64]) -> bool {
    (0..cone.len()).any(|drop| {
        cone.iter()
            .enumerate()
            .filter(|(k, _)| *k != drop)
            .all(|(_, &i)| {
                fan.rays[i]
                    .iter()
                    .zip(chi)
                    .map(|(a, b)| a * b)
                    .sum::<i64>()
                    == 0
            })
    })
}

// ---------------------------------------------------------------------------
// Piecewise linear functions and ampleness
// ---------------------------------------------------------------------------

/// Per-maximal-cone linear forms of the piecewise linear function with the
/// given ray values, in character coordinates. Requires unimodular cones.
pub fn pl_forms(fan: &Fan, psi: &[i64]) -> Result<Vec<Vec<i64>>, Error> {
    if psi.len() != fan.rays.len() {
        return Err(Error::Validation(format!(
            "psi has {} values but the fan has {} rays",
            psi.len(),
            fan.rays.len()
        )));
    }
    let mut forms = Vec::with_capacity(fan.max_cones.len());
    for cone in &fan.max_cones {
        let dual = fan.dual_basis(cone).ok_or_else(|| {
            Error::Validation(format!("cone {cone:?} is not unimodular of full dimension"))
        })?;
        // h_sigma = sum psi_rho * u_rho
        let mut h = vec![0i64; fan.dim];
        for (k, &i) in cone.iter().enumerate() {
            for j in 0..fan.dim {
                h[j] += psi[i] * dual[k][j];
            }
        }
        forms.push(h);
    }
    Ok(forms)
}

/// Ampleness report: the forms and whether the vertex conditions hold.
#[derive(Clone, Debug, serde::Serialize)]
pub struct AmpleReport {
    pub ample: bool,
    pub forms: Vec<Vec<i64>>,
    pub failures: Vec<String>,
}

/// Ample iff every per-cone form is a vertex of the polyhedron
/// `{ m : <m, v_rho> >= psi_rho for all rho }`, with equality exactly on
/// the cone's own rays.
pub fn check_ample(fan: &Fan, psi: &[i64]) -> Result<AmpleReport, Error> {
    let forms = pl_forms(fan, psi)?;
    let mut failures = Vec::new();
    for (k, cone) in fan.max_cones.iter().enumerate() {
        for (i, ray) in fan.rays.iter().enumerate() {
            let val: i64 = forms[k].iter().zip(ray).map(|(a, b)| a * b).sum();
            let on_cone = cone.contains(&i);
            if on_cone && val != psi[i] {
                failures.push(format!(
                    "form of cone {k} does not interpolate its ray {i}"
                ));
            }
            if !on_cone {
                if val < psi[i] {
                    failures.push(format!(
                        "vertex inequality fails at cone {k}, ray {i}: {val} < {}",
                        psi[i]
                    ));
                } else if val == psi[i] {
                    failures.push(format!(
                        "strictness fails at cone {k}, ray {i} (equal linear forms across a wall)"
                    ));
                }
            }
        }
    }
    Ok(AmpleReport {
        ample: failures.is_empty(),
        forms,
        failures,
    })
}

/// Search for some ample ray values by exact rational Fourier-Motzkin
/// feasibility on the strict vertex inequalities.
pub fn find_ample(fan: &Fan) -> Result<Option<Vec<i64>>, Error> {
    let d = fan.rays.len();
    // Constraints: for every maximal cone sigma and ray rho not in sigma,
    //   sum_{rho' in sigma} <u_{rho'}, v_rho> psi_{rho'} - psi_rho >= 1.
    let mut constraints: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    for cone in &fan.max_cones {
        let dual = fan.dual_basis(cone).ok_or_else(|| {
            Error::Validation(format!("cone {cone:?} is not unimodular of full dimension"))
        })?;
        for (i, ray) in fan.rays.iter().enumerate() {
            if cone.contains(&i) {
                continue;
            }
            let mut row = vec![BigRational::zero(); d];
            for (k, &j) in cone.iter().enumerate() {
                let c: i64 = dual[k].iter().zip(ray).map(|(a, b)| a * b).sum();
                row[j] += BigRational::from(BigInt::from(c));
            }
            row[i] -= BigRational::one();
            constraints.push((row, BigRational::one()));
        }
    }
    Ok(fourier_motzkin_feasible(constraints, d).map(|sol| {
        // scale to integers
        let mut denom = BigInt::one();
        for x in &sol {
            denom = denom.lcm(x.denom());
        }
        sol.iter()
            .map(|x| {
                i64::try_from((x * BigRational::from(denom.clone())).to_integer())
                    .expect("ample values fit i64")
            })
            .collect()
    }))
}

/// Find any rational solution of `a . x >= b` constraints, or `None`.
fn fourier_motzkin_feasible(
    constraints: Vec<(Vec<BigRational>, BigRational)>,
    nvars: usize,
) -> Option<Vec<BigRational>> {
    // Eliminate variables from the back; keep the constraint systems at
    // every level for back-substitution.
    let mut levels: Vec<Vec<(Vec<BigRational>, BigRational)>> = vec![constraints];
    for var in (0..nvars).rev() {
        let cur = levels.last().unwrap();
        let mut next = Vec::new();
        let mut lowers = Vec::new(); // a_var > 0: x_var >= (b - rest)/a
        let mut uppers = Vec::new(); // a_var < 0
        for (row, b) in cur {
            if row[var].is_zero() {
                next.push((row.clone(), b.clone()));
            } else if row[var].is_positive() {
                lowers.push((row.clone(), b.clone()));
            } else {
                uppers.push((row.clone(), b.clone()));
            }
        }
        for (lr, lb) in &lowers {
            for (ur, ub) in &uppers {
                // combine to eliminate var: multiply lower by -a_u, upper by a_l
                let al = lr[var].clone();
                let au = ur[var].clone(); // negative
                let mut row = vec![BigRational::zero(); nvars];
                for j in 0..nvars {
                    row[j] = lr[j].clone() * (-au.clone()) + ur[j].clone() * al.clone();
                }
                let b = lb.clone() * (-au.clone()) + ub.clone() * al.clone();
                row[var] = BigRational::zero();
                next.push((row, b));
            }
        }
        levels.push(next);
    }
    // Constant level: rows must have 0 >= b.
    for (row, b) in levels.last().unwrap() {
        debug_assert!(row.iter().all(|x| x.is_zero()));
        if b.is_positive() {
            return None;
        }
    }
    // Back-substitute.
    let mut x = vec![BigRational::zero(); nvars];
    for var in 0..nvars {
        let level = &levels[nvars - var - 1]; // constraints before eliminating `var`
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for (row, b) in level {
            if row[var].is_zero() {
                continue;
            }
            let mut rest = b.clone();
            for j in 0..nvars {
                if j != var && !row[j].is_zero() {
                    rest -= row[j].clone() * x[j].clone();
                }
            }
            let bound = rest / row[var].clone();
            if row[var].is_positive() {
                lo = Some(match lo {
                    None => bound,
                    Some(l) => l.max(bound),
                });
            } else {
                hi = Some(match hi {
                    None => bound,
                    Some(h) => h.min(bound),
                });
            }
        }
        x[var] = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / BigRational::from(BigInt::from(2)),
            (Some(l), None) => l,
            (None, Some(h)) => h,
            (None, None) => BigRational::zero(),
        };
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// Moment ordering and the Bialynicki-Birula data
// ---------------------------------------------------------------------------

/// The ordering of the maximal cones by the moment pairing against a
/// generic direction, with the distinguished face and cell dimension of
/// each position.
#[derive(Clone, Debug, serde::Serialize)]
pub struct MomentOrder {
    /// Maximal-cone indices in ascending moment order.
    pub order: Vec<usize>,
    /// Moment values in the same order.
    pub mu: Vec<i64>,
    /// Distinguished face of each ordered cone, as ray indices.
    pub tau: Vec<Vec<usize>>,
    /// Cell dimension `n - dim(tau)` per position.
    pub cell_dims: Vec<usize>,
}

pub fn moment_order(fan: &Fan, psi: &[i64], v: &[i64]) -> Result<MomentOrder, Error> {
    let n = fan.dim;
    if v.len() != n {
        return Err(Error::Validation(format!(
            "direction {v:?} does not have dimension {n}"
        )));
    }
    // v must lie in the support
    if !fan
        .max_cones
        .iter()
        .any(|cone| fan.cone_contains(cone, v))
    {
        return Err(Error::NonGeneric(format!(
            "direction {v:?} lies outside the support of the fan"
        )));
    }
    // v must avoid every hyperplane spanned by a facet of a maximal cone
    for cone in &fan.max_cones {
        for drop in 0..cone.len() {
            let mut m: Mat64 = cone
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != drop)
                .map(|(_, &i)| fan.rays[i].clone())
                .collect();
            m.push(v.to_vec());
            if mat_det(&m).is_zero() {
                return Err(Error::NonGeneric(format!(
                    "direction {v:?} lies on the hyperplane spanned by a facet of {cone:?}"
                )));
            }
        }
    }
    let forms = pl_forms(fan, psi)?;
    let mut mu: Vec<i64> = Vec::with_capacity(fan.max_cones.len());
    for h in &forms {
        mu.push(h.iter().zip(v).map(|(a, b)| a * b).sum());
    }
    let mut order: Vec<usize> = (0..fan.max_cones.len()).collect();
    order.sort_by_key(|&i| mu[i]);
    for w in order.windows(2) {
        if mu[w[0]] == mu[w[1]] {
            return Err(Error::NonGeneric(format!(
                "moment values tie between maximal cones {} and {}",
                w[0], w[1]
            )));
        }
    }
    // Distinguished faces: coordinates of v in each cone's ray basis; the
    // face collects the rays with negative coefficient.
    let mut tau = Vec::with_capacity(order.len());
    let mut cell_dims = Vec::with_capacity(order.len());
    for &ci in &order {
        let cone = &fan.max_cones[ci];
        let dual = fan.dual_basis(cone).ok_or_else(|| {
            Error::Validation(format!("cone {cone:?} is not unimodular of full dimension"))
        })?;
        let mut face = Vec::new();
        for (k, &i) in cone.iter().enumerate() {
            let c: i64 = dual[k].iter().zip(v).map(|(a, b)| a * b).sum();
            if c == 0 {
                return Err(Error::NonGeneric(format!(
                    "direction {v:?} lies on a facet hyperplane of cone {cone:?}"
                )));
            }
            if c < 0 {
                face.push(i);
            }
        }
        cell_dims.push(n - face.len());
        tau.push(face);
    }
    // Star property: tau_i inside sigma_j implies i <= j.
    for (i, t) in tau.iter().enumerate() {
        for (j, &cj) in order.iter().enumerate() {
            let cone = &fan.max_cones[cj];
            if t.iter().all(|r| cone.contains(r)) && i > j {
                return Err(Error::Internal(format!(
                    "star property violated: tau_{i} lies in ordered cone {j}"
                )));
            }
        }
    }
    let mu_sorted = order.iter().map(|&i| mu[i]).collect();
    Ok(MomentOrder {
        order,
        mu: mu_sorted,
        tau,
        cell_dims,
    })
}

// ---------------------------------------------------------------------------
// GIT invariants
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, serde::Serialize)]
pub struct GitInvariants {
    pub pic_rank: usize,
    /// Torsion invariants of the cokernel; empty iff the cokernel is free.
    pub torsion: Vec<String>,
    /// Gale dual vectors, one per ray, when the cokernel is free.
    pub gale_duals: Vec<Vec<String>>,
}

/// Build the ray matrix, certify that its cokernel is free of rank
/// `d - n`, and return the Gale duals (images of the standard basis).
pub fn git_invariants(fan: &Fan) -> Result<GitInvariants, Error> {
    let d = fan.rays.len();
    let n = fan.dim;
    let q: Vec<Vec<BigInt>> = fan
        .rays
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let snf = smith_normal_form(&q);
    if snf.rank != n {
        return Err(Error::Validation(format!(
            "rays span a sublattice of rank {} < {}",
            snf.rank, n
        )));
    }
    let torsion: Vec<String> = (0..n)
        .filter(|&i| snf.d[i][i] != BigInt::one())
        .map(|i| snf.d[i][i].to_string())
        .collect();
    let mut gale = Vec::with_capacity(d);
    for i in 0..d {
        gale.push(
            (n..d)
                .map(|row| snf.u[row][i].to_string())
                .collect::<Vec<_>>(),
        );
    }
    Ok(GitInvariants {
        pic_rank: d - n,
        torsion,
        gale_duals: gale,
    })
}
