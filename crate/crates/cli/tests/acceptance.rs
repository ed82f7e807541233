//! Acceptance suite: one test per criterion, each printing a pass line and
//! enforcing its runtime budget. All arithmetic checks are exact.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kreg_core::fan::Fan;
use kreg_core::kring::{wonderful_model, KringModel};
use kreg_core::laurent::LaurentElement;
use kreg_core::root::{c_sets, RootSystem, WeylGroup};
use kreg_core::steinberg::{FlagKClass, SteinbergData};
use kreg_core::toric::ToricModel;
use kreg_core::weight::Weight;

fn instance_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../instances/{name}.json"))
}

fn quadrant_model() -> KringModel {
    let rs = RootSystem::a1xa1();
    let fan = Fan::new(
        2,
        vec![vec![1, 0], vec![1, 1], vec![0, 1]],
        vec![vec![0, 1], vec![1, 2]],
    )
    .unwrap();
    KringModel::new(&rs, fan, vec![0, 1, 0], vec![1, 2]).unwrap()
}

fn finish(criterion: u32, what: &str, start: Instant, budget: Duration) {
    let dt = start.elapsed();
    assert!(
        dt < budget,
        "criterion {criterion} exceeded its budget: {dt:?} >= {budget:?}"
    );
    println!("[criterion {criterion:2}] PASS {what} ({dt:.2?})");
}

#[test]
fn criterion_01_steinberg_partition() {
    let start = Instant::now();
    for rs in [
        RootSystem::a1(),
        RootSystem::a2(),
        RootSystem::a1xa1(),
        RootSystem::b2(),
    ] {
        let wg = WeylGroup::enumerate(&rs).unwrap();
        let sets = c_sets(&rs, &wg);
        let total: usize = sets.iter().map(|s| s.len()).sum();
        assert_eq!(total, wg.order(), "partition must cover the group");
        let mut seen = vec![false; wg.order()];
        for set in &sets {
            for &w in set {
                assert!(!seen[w], "partition pieces must be disjoint");
                seen[w] = true;
            }
        }
    }
    let rs = RootSystem::a2();
    let wg = WeylGroup::enumerate(&rs).unwrap();
    let sizes: Vec<usize> = c_sets(&rs, &wg).iter().map(|s| s.len()).collect();
    assert_eq!(sizes, vec![1, 2, 2, 1]);
    finish(
        1,
        "partition sums and disjointness on A1, A2, A1xA1, B2; A2 sizes (1,2,2,1)",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_02_expansion_roundtrip() {
    let start = Instant::now();
    let sd = SteinbergData::new(&RootSystem::a2()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let mut g = LaurentElement::zero();
        for _ in 0..5 {
            let ss: Vec<i64> = (0..2).map(|_| rng.gen_range(-3..=3)).collect();
            g.add_term(Weight::new(ss, vec![]), BigInt::from(rng.gen_range(-9i64..=9)));
        }
        // expand() verifies exact reconstruction and the Weyl invariance of
        // every coefficient; failure is an error.
        sd.expand(&g).unwrap();
    }
    finish(
        2,
        "100 random expansions on A2 reconstruct exactly with invariant coefficients",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_03_rank_one_structure_constants() {
    let start = Instant::now();
    let sd = SteinbergData::new(&RootSystem::a1()).unwrap();
    assert_eq!(sd.a[1][1][0], sd.rs.one().neg());
    assert_eq!(
        sd.a[1][1][1],
        sd.rs
            .exp(Weight::new(vec![1], vec![]))
            .add(&sd.rs.exp(Weight::new(vec![-1], vec![])))
    );
    let x = FlagKClass::basis(2, 0).sub(&FlagKClass::basis(2, 1));
    assert!(sd.flag_multiply(&x, &x).is_zero());
    finish(
        3,
        "rank-one structure constants and the projective-line relation",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_04_toric_freeness_certificate() {
    let start = Instant::now();
    let rs = RootSystem::a1xa1();
    let fan = Fan::new(
        2,
        vec![vec![1, 0], vec![1, 1], vec![0, 1]],
        vec![vec![0, 1], vec![1, 2]],
    )
    .unwrap();
    let t = ToricModel::new(&rs, fan, vec![0, 1, 0], vec![1, 2]).unwrap();
    assert_eq!(t.morder.cell_dims, vec![2, 1]);
    // star property, independently of the construction
    for (i, tau) in t.morder.tau.iter().enumerate() {
        for (j, &cj) in t.morder.order.iter().enumerate() {
            if tau.iter().all(|r| t.fan.max_cones[cj].contains(r)) {
                assert!(i <= j);
            }
        }
    }
    // triangular with nonzero diagonal (also enforced at construction)
    for (j, row) in t.basis_matrix.iter().enumerate() {
        for (i, entry) in row.iter().enumerate() {
            if i > j {
                assert!(entry.is_zero());
            }
            if i == j {
                assert!(!entry.is_zero());
            }
        }
    }
    assert_eq!(t.cone_count(), 2);
    finish(
        4,
        "moment cells (2,1), star property, triangular basis matrix, rank 2",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_05_multiplication_oracle_agreement() {
    let start = Instant::now();
    for (name, model) in [
        ("wonderful A1", wonderful_model(&RootSystem::a1()).unwrap()),
        ("quadrant A1xA1", quadrant_model()),
    ] {
        let bad = model.equivariant_oracle_mismatches().unwrap();
        assert!(bad.is_empty(), "{name}: mismatching pairs {bad:?}");
    }
    finish(
        5,
        "structure-constant products equal pointwise products on all basis pairs",
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_06_ordinary_ranks() {
    let start = Instant::now();
    let a1 = wonderful_model(&RootSystem::a1()).unwrap();
    assert_eq!(a1.ordinary_ring().unwrap().z_rank, 4);
    let quad = quadrant_model();
    assert_eq!(quad.ordinary_ring().unwrap().z_rank, 32);
    finish(
        6,
        "ordinary ranks 4 (rank-one wonderful) and 32 (subdivided quadrant)",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_07_two_path_ordinary_agreement() {
    let start = Instant::now();
    for (name, model) in [
        ("wonderful A1", wonderful_model(&RootSystem::a1()).unwrap()),
        ("quadrant A1xA1", quadrant_model()),
    ] {
        let ord = model.ordinary_ring().unwrap();
        let bad = model.two_path_mismatches(&ord).unwrap();
        assert!(bad.is_empty(), "{name}: mismatching generator pairs {bad:?}");
    }
    finish(
        7,
        "ordinary multiplication tables agree between the two computation paths",
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_08_presentation_verification() {
    let start = Instant::now();
    let model = quadrant_model();
    let rep = model.verify_presentation(false).unwrap();
    assert!(rep.ok, "{:?}", rep.failures);
    assert_eq!(rep.rank_over_wonderful, 2);
    let control = model.verify_presentation(true).unwrap();
    assert!(!control.ok, "corrupted relation must be detected");
    finish(
        8,
        "presentation over the wonderful sub-instance, with negative control",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_09_git_invariants() {
    let start = Instant::now();
    let p1 = Fan::new(1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap();
    assert_eq!(kreg_core::fan::git_invariants(&p1).unwrap().pic_rank, 1);
    let quad = Fan::new(
        2,
        vec![vec![1, 0], vec![1, 1], vec![0, 1]],
        vec![vec![0, 1], vec![1, 2]],
    )
    .unwrap();
    assert_eq!(kreg_core::fan::git_invariants(&quad).unwrap().pic_rank, 1);
    let square = Fan::new(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
    )
    .unwrap();
    assert_eq!(kreg_core::fan::git_invariants(&square).unwrap().pic_rank, 2);

    // point-base presentation rank equals the number of maximal cones
    let torus1 = RootSystem::from_cartan(vec![], 1).unwrap();
    let torus2 = RootSystem::from_cartan(vec![], 2).unwrap();
    let a1xa1 = RootSystem::a1xa1();
    for (rs, fan, psi, dir, m) in [
        (&torus1, p1, vec![0, -1], vec![1], 2),
        (&a1xa1, quad, vec![0, 1, 0], vec![1, 2], 2),
        (&torus2, square, vec![0, 0, -1, -1], vec![1, 2], 4),
    ] {
        let t = ToricModel::new(rs, fan, psi, dir).unwrap();
        let rep = t.verify_srpres_point().unwrap();
        assert!(rep.ok, "{:?}", rep.failures);
        assert_eq!(rep.rank, m);
    }
    finish(
        9,
        "Picard ranks 1, 1, 2 and point-base ranks equal to maximal cone counts",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_10_determinism_across_parallelism() {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_kreg");
    for name in ["wonderful_a1", "quadrant_a1xa1"] {
        let path = instance_path(name);
        let run = |threads: &str| {
            let out = std::process::Command::new(bin)
                .args([
                    "verify-all",
                    "--instance",
                    path.to_str().unwrap(),
                    "--parallel",
                    threads,
                ])
                .output()
                .expect("run binary");
            assert!(out.status.success(), "verify-all failed on {name}");
            out.stdout
        };
        let seq = run("1");
        let par = run("4");
        assert_eq!(seq, par, "{name}: output differs across parallelism");
        let again = run("4");
        assert_eq!(par, again, "{name}: output differs across repeated runs");
    }
    finish(
        10,
        "verify-all output byte-identical across runs and thread counts",
        start,
        Duration::from_secs(120),
    );
}
