//! Command-line front end: parse an instance file, dispatch computations,
//! emit JSON tables and verification reports on standard output. Errors are
//! structured JSON on standard error; exit codes are 0 for success, 1 for
//! verification failures, 2 for schema or validation problems, 3 for
//! internal inconsistencies.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kreg_core::instance::InstanceFile;
use kreg_core::kring::KringModel;
use kreg_core::laurent::{laurent_to_json, tensor_to_json};
use kreg_core::root::{c_sets, minimal_coset_reps, parabolic_elements, subset_indices, WeylGroup};
use kreg_core::steinberg::FlagKClass;
use kreg_core::toric::ToricModel;
use kreg_core::Error;

#[derive(Parser)]
#[command(name = "kreg", about = "Exact K-ring computations for group compactifications")]
struct Cli {
    /// Path to the JSON instance file.
    #[arg(long, global = true)]
    instance: Option<String>,
    /// Worker threads for table computations (results are independent of
    /// this setting). Overrides the instance option; defaults to 1.
    #[arg(long, global = true)]
    parallel: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Equivariant,
    Ordinary,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Membership,
    Oracle,
    Presentation,
}

#[derive(Subcommand)]
enum Command {
    /// Weyl group data: orders, coset representatives, the partition.
    Weyl,
    /// Steinberg basis, structure constants and their integer images.
    Steinberg,
    /// Fan validation, ampleness, moment ordering, GIT invariants.
    Fan,
    /// The localized toric model: generators, basis matrix, relation checks.
    ToricK,
    /// Equivariant and ordinary multiplication tables and verifications.
    Kring {
        #[arg(long)]
        table: Option<TableKind>,
        #[arg(long)]
        verify: Option<VerifyKind>,
    },
    /// Run every verification this instance supports.
    VerifyAll,
}

fn main() {
    let cli = Cli::parse();
    let outcome = load_instance(&cli).and_then(|inst| {
        let threads = cli.parallel.or(inst.options.parallel).unwrap_or(1).max(1);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(|| run(&cli, &inst))
    });
    match outcome {
        Ok(ok) => {
            if !ok {
                std::process::exit(1);
            }
        }
        Err(e) => {
            let (kind, code) = match &e {
                Error::Validation(_) | Error::ZeroDivisor => ("validation", 2),
                Error::NonGeneric(_) => ("non-generic", 2),
                Error::Internal(_) => ("internal", 3),
            };
            eprintln!(
                "{}",
                serde_json::to_string(&json!({"error": kind, "message": e.to_string()}))
                    .expect("error serialization")
            );
            std::process::exit(code);
        }
    }
}

fn load_instance(cli: &Cli) -> Result<InstanceFile, Error> {
    let path = cli
        .instance
        .as_ref()
        .ok_or_else(|| Error::Validation("--instance <file> is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {path}: {e}")))?;
    InstanceFile::parse(&text)
}

/// Runs the requested command; `Ok(false)` means a verification failed.
fn run(cli: &Cli, inst: &InstanceFile) -> Result<bool, Error> {
    let doc: (Value, bool) = match &cli.command {
        Command::Weyl => weyl_doc(inst)?,
        Command::Steinberg => steinberg_doc(inst)?,
        Command::Fan => fan_doc(inst)?,
        Command::ToricK => toric_doc(inst)?,
        Command::Kring { table, verify } => kring_doc(inst, *table, *verify)?,
        Command::VerifyAll => verify_all_doc(inst)?,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&doc.0).expect("output serialization")
    );
    Ok(doc.1)
}

fn word_key(word: &[usize]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter().map(|i| (i + 1).to_string()).collect()
    }
}

fn subset_key(mask: u32) -> String {
    let idx = subset_indices(mask);
    if idx.is_empty() {
        "{}".to_string()
    } else {
        format!(
            "{{{}}}",
            idx.iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

fn flag_json(f: &FlagKClass) -> Value {
    Value::Array(
        f.coeffs
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

fn weyl_doc(inst: &InstanceFile) -> Result<(Value, bool), Error> {
    let rs = &inst.root_system;
    let wg = WeylGroup::enumerate_bounded(rs, inst.options.weyl_bound)?;
    let elements: Vec<Value> = wg
        .elements
        .iter()
        .map(|w| json!({"word": word_key(&w.word), "length": w.word.len()}))
        .collect();
    let n_masks = 1u32 << rs.ss_rank;
    let mut reps = serde_json::Map::new();
    let mut parab = serde_json::Map::new();
    for mask in 0..n_masks {
        reps.insert(
            subset_key(mask),
            Value::Array(
                minimal_coset_reps(rs, &wg, mask)
                    .iter()
                    .map(|&i| Value::String(word_key(&wg.element(i).word)))
                    .collect(),
            ),
        );
        parab.insert(
            subset_key(mask),
            json!(parabolic_elements(rs, &wg, mask).len()),
        );
    }
    let sets = c_sets(rs, &wg);
    let mut csets = serde_json::Map::new();
    let mut sizes = serde_json::Map::new();
    let mut total = 0usize;
    for (mask, set) in sets.iter().enumerate() {
        total += set.len();
        csets.insert(
            subset_key(mask as u32),
            Value::Array(
                set.iter()
                    .map(|&i| Value::String(word_key(&wg.element(i).word)))
                    .collect(),
            ),
        );
        sizes.insert(subset_key(mask as u32), json!(set.len()));
    }
    let partition_ok = total == wg.order();
    let doc = json!({
        "group_order": wg.order(),
        "positive_root_count": rs.positive_roots.len(),
        "elements": elements,
        "coset_representatives": reps,
        "parabolic_orders": parab,
        "c_sets": csets,
        "c_set_sizes": sizes,
        "partition_ok": partition_ok,
    });
    Ok((doc, partition_ok))
}

fn steinberg_doc(inst: &InstanceFile) -> Result<(Value, bool), Error> {
    let sd = kreg_core::steinberg::SteinbergData::new(&inst.root_system)?;
    let key = |i: usize| word_key(&sd.wg.element(i).word);
    let mut f = serde_json::Map::new();
    for v in 0..sd.order() {
        f.insert(key(v), laurent_to_json(&sd.f[v]));
    }
    let mut a = serde_json::Map::new();
    let mut c = serde_json::Map::new();
    for v in 0..sd.order() {
        for vp in 0..sd.order() {
            let mut arow = serde_json::Map::new();
            let mut crow = serde_json::Map::new();
            for w in 0..sd.order() {
                if !sd.a[v][vp][w].is_zero() {
                    arow.insert(key(w), laurent_to_json(&sd.a[v][vp][w]));
                }
                if !num_traits::Zero::is_zero(&sd.c[v][vp][w]) {
                    crow.insert(key(w), Value::String(sd.c[v][vp][w].to_string()));
                }
            }
            a.insert(format!("{}|{}", key(v), key(vp)), Value::Object(arow));
            c.insert(format!("{}|{}", key(v), key(vp)), Value::Object(crow));
        }
    }
    let mut lambda = serde_json::Map::new();
    let mut lambda_pos = serde_json::Map::new();
    for mask in 0..(1u32 << inst.root_system.ss_rank) {
        lambda.insert(subset_key(mask), flag_json(&sd.lambda_bar(mask)?));
        lambda_pos.insert(subset_key(mask), flag_json(&sd.lambda_bar_positive(mask)?));
    }
    let det = sd.basis_determinant();
    let doc = json!({
        "f": f,
        "a": a,
        "c": c,
        "lambda_bar": lambda,
        "lambda_bar_positive": lambda_pos,
        "basis_determinant": laurent_to_json(&det),
        "basis_certificate": !det.is_zero(),
    });
    Ok((doc, !det.is_zero()))
}

fn subdivision_value(inst: &InstanceFile) -> Result<(Value, bool), Error> {
    if inst.root_system.central_rank != 0 {
        return Ok((
            json!({"skipped": "torus-only instance (nonzero central rank)"}),
            true,
        ));
    }
    let wg = WeylGroup::enumerate_bounded(&inst.root_system, inst.options.weyl_bound)?;
    let report =
        kreg_core::fan::validate_positive_subdivision(&inst.root_system, &wg, &inst.fan)?;
    let ok = report.valid;
    Ok((serde_json::to_value(&report).expect("report"), ok))
}

fn fan_doc(inst: &InstanceFile) -> Result<(Value, bool), Error> {
    let (subdivision, sub_ok) = subdivision_value(inst)?;
    let psi = inst.psi_or_search()?;
    let ample = kreg_core::fan::check_ample(&inst.fan, &psi)?;
    let moment = if ample.ample {
        let m = kreg_core::fan::moment_order(&inst.fan, &psi, &inst.direction_or_default())?;
        serde_json::to_value(&m).expect("moment")
    } else {
        json!({"skipped": "psi is not ample"})
    };
    let git = kreg_core::fan::git_invariants(&inst.fan)?;
    let walls: Vec<Value> = kreg_core::fan::walls(&inst.fan)?
        .iter()
        .map(|w| json!({"cone_a": w.cone_a, "cone_b": w.cone_b, "chi": w.chi}))
        .collect();
    let ok = sub_ok && ample.ample;
    let doc = json!({
        "subdivision": subdivision,
        "psi": psi,
        "ample": serde_json::to_value(&ample).expect("ample"),
        "moment": moment,
        "walls": walls,
        "git": serde_json::to_value(&git).expect("git"),
    });
    Ok((doc, ok))
}

fn build_toric(inst: &InstanceFile) -> Result<ToricModel, Error> {
    ToricModel::new(
        &inst.root_system,
        inst.fan.clone(),
        inst.psi_or_search()?,
        inst.direction_or_default(),
    )
}

fn toric_doc(inst: &InstanceFile) -> Result<(Value, bool), Error> {
    let t = build_toric(inst)?;
    let basis_matrix: Vec<Value> = t
        .basis_matrix
        .iter()
        .map(|row| Value::Array(row.iter().map(laurent_to_json).collect()))
        .collect();
    let gens: Vec<Value> = (0..t.fan.rays.len())
        .map(|j| {
            let g = t.ray_generator(j)?;
            Ok(Value::Array(g.entries.iter().map(laurent_to_json).collect()))
        })
        .collect::<Result<_, Error>>()?;
    let orbits: Vec<Value> = t
        .orbit_classes
        .iter()
        .map(|x| Value::Array(x.entries.iter().map(laurent_to_json).collect()))
        .collect();
    let sr = t.sr_vanishing_failures()?;
    let srpres = t.verify_srpres_point()?;
    let ok = sr.is_empty() && srpres.ok;
    let doc = json!({
        "moment": serde_json::to_value(&t.morder).expect("moment"),
        "basis_matrix": basis_matrix,
        "ray_generators": gens,
        "orbit_classes": orbits,
        "minimal_nonfaces": t.minimal_nonfaces(),
        "sr_vanishing_failures": sr,
        "srpres_point": serde_json::to_value(&srpres).expect("report"),
    });
    Ok((doc, ok))
}

fn build_kring(inst: &InstanceFile) -> Result<KringModel, Error> {
    KringModel::new(
        &inst.root_system,
        inst.fan.clone(),
        inst.psi_or_search()?,
        inst.direction_or_default(),
    )
}

fn eqclass_json(model: &KringModel, e: &kreg_core::kring::EquivariantClass) -> Value {
    let mut map = serde_json::Map::new();
    for (&(mask, v), coeff) in &e.coords {
        let key = format!(
            "{}|{}",
            subset_key(mask),
            word_key(&model.sd.wg.element(v).word)
        );
        map.insert(
            key,
            Value::Array(coeff.entries.iter().map(tensor_to_json).collect()),
        );
    }
    Value::Object(map)
}

fn ordclass_json(model: &KringModel, o: &kreg_core::kring::OrdinaryClass) -> Value {
    let mut map = serde_json::Map::new();
    for (v, row) in o.coords.iter().enumerate() {
        if row.iter().all(|f| f.is_zero()) {
            continue;
        }
        map.insert(
            word_key(&model.sd.wg.element(v).word),
            Value::Array(row.iter().map(flag_json).collect()),
        );
    }
    Value::Object(map)
}

fn kring_doc(
    inst: &InstanceFile,
    table: Option<TableKind>,
    verify: Option<VerifyKind>,
) -> Result<(Value, bool), Error> {
    let model = build_kring(inst)?;
    let key = |i: usize| word_key(&model.sd.wg.element(i).word);
    let mut doc = serde_json::Map::new();
    let mut ok = true;

    let basis: Vec<Value> = (0..model.order())
        .map(|v| json!({"mask": subset_key(model.sd.cset_mask[v]), "word": key(v)}))
        .collect();
    doc.insert("basis".into(), Value::Array(basis));

    match table {
        Some(TableKind::Equivariant) | None => {
            let mut tbl = serde_json::Map::new();
            for v in 0..model.order() {
                for vp in 0..model.order() {
                    let a = model.basis_element(model.sd.cset_mask[v], v)?;
                    let b = model.basis_element(model.sd.cset_mask[vp], vp)?;
                    let prod = model.multiply_structural(&a, &b);
                    tbl.insert(
                        format!("{}|{}", key(v), key(vp)),
                        eqclass_json(&model, &prod),
                    );
                }
            }
            doc.insert("equivariant_table".into(), Value::Object(tbl));
        }
        Some(TableKind::Ordinary) => {}
    }
    if matches!(table, Some(TableKind::Ordinary)) {
        let ord = model.ordinary_ring()?;
        let mut gamma = serde_json::Map::new();
        for v in 0..model.order() {
            for vp in 0..model.order() {
                gamma.insert(
                    format!("{}|{}", key(v), key(vp)),
                    ordclass_json(&model, &ord.gamma_table[v][vp]),
                );
            }
        }
        let mut toric_tbl = serde_json::Map::new();
        for i in 0..model.cone_count() {
            for j in 0..model.cone_count() {
                toric_tbl.insert(
                    format!("{i}|{j}"),
                    Value::Array(ord.toric_table[i][j].iter().map(flag_json).collect()),
                );
            }
        }
        doc.insert("gamma_table".into(), Value::Object(gamma));
        doc.insert("toric_table".into(), Value::Object(toric_tbl));
        doc.insert("z_rank".into(), json!(ord.z_rank));
    }

    match verify {
        None => {}
        Some(VerifyKind::Membership) => {
            let mut failures = Vec::new();
            for v in 0..model.order() {
                let b = model.basis_element(model.sd.cset_mask[v], v)?;
                let rep = model.check_membership(&model.tuple_of(&b));
                if !rep.ok {
                    failures.push(key(v));
                }
            }
            ok &= failures.is_empty();
            doc.insert(
                "membership".into(),
                json!({"ok": failures.is_empty(), "failing_basis_elements": failures}),
            );
        }
        Some(VerifyKind::Oracle) => {
            let eq = model.equivariant_oracle_mismatches()?;
            let ord = model.ordinary_ring()?;
            let two = model.two_path_mismatches(&ord)?;
            ok &= eq.is_empty() && two.is_empty();
            doc.insert(
                "oracle".into(),
                json!({
                    "equivariant_mismatches": eq,
                    "ordinary_mismatches": two,
                    "ok": eq.is_empty() && two.is_empty(),
                }),
            );
        }
        Some(VerifyKind::Presentation) => {
            let rep = model.verify_presentation(false)?;
            let control = model.verify_presentation(true)?;
            ok &= rep.ok && !control.ok;
            doc.insert(
                "presentation".into(),
                json!({
                    "report": serde_json::to_value(&rep).expect("report"),
                    "negative_control_detected": !control.ok,
                }),
            );
        }
    }
    Ok((Value::Object(doc), ok))
}

fn verify_all_doc(inst: &InstanceFile) -> Result<(Value, bool), Error> {
    let mut doc = serde_json::Map::new();
    let mut ok = true;

    let (weyl, weyl_ok) = weyl_doc(inst)?;
    doc.insert(
        "weyl".into(),
        json!({"group_order": weyl["group_order"], "c_set_sizes": weyl["c_set_sizes"],
               "partition_ok": weyl["partition_ok"]}),
    );
    ok &= weyl_ok;

    let (subdivision, sub_ok) = subdivision_value(inst)?;
    doc.insert("subdivision".into(), subdivision);
    ok &= sub_ok;

    let psi = inst.psi_or_search()?;
    let ample = kreg_core::fan::check_ample(&inst.fan, &psi)?;
    doc.insert("ample".into(), json!(ample.ample));
    ok &= ample.ample;

    let toric = build_toric(inst)?;
    let sr = toric.sr_vanishing_failures()?;
    let srpres = toric.verify_srpres_point()?;
    doc.insert(
        "toric".into(),
        json!({
            "moment": serde_json::to_value(&toric.morder).expect("moment"),
            "sr_vanishing_ok": sr.is_empty(),
            "srpres_point": serde_json::to_value(&srpres).expect("report"),
        }),
    );
    ok &= sr.is_empty() && srpres.ok;

    let git = kreg_core::fan::git_invariants(&inst.fan)?;
    doc.insert("git".into(), serde_json::to_value(&git).expect("git"));
    ok &= git.torsion.is_empty();

    if inst.root_system.central_rank == 0 && inst.root_system.ss_rank > 0 {
        let model = build_kring(inst)?;
        let mut membership_ok = true;
        for v in 0..model.order() {
            let b = model.basis_element(model.sd.cset_mask[v], v)?;
            membership_ok &= model.check_membership(&model.tuple_of(&b)).ok;
        }
        doc.insert("membership_ok".into(), json!(membership_ok));
        ok &= membership_ok;

        let eq = model.equivariant_oracle_mismatches()?;
        doc.insert("equivariant_oracle_ok".into(), json!(eq.is_empty()));
        ok &= eq.is_empty();

        let ord = model.ordinary_ring()?;
        doc.insert(
            "ordinary".into(),
            json!({"z_rank": ord.z_rank, "expected_rank": model.order() * model.order() * model.cone_count()}),
        );
        ok &= ord.z_rank == model.order() * model.order() * model.cone_count();

        let two = model.two_path_mismatches(&ord)?;
        doc.insert("two_path_ok".into(), json!(two.is_empty()));
        ok &= two.is_empty();

        let pres = model.verify_presentation(false)?;
        let control = model.verify_presentation(true)?;
        doc.insert(
            "presentation".into(),
            json!({
                "report": serde_json::to_value(&pres).expect("report"),
                "negative_control_detected": !control.ok,
            }),
        );
        ok &= pres.ok && !control.ok;
    } else {
        doc.insert(
            "kring".into(),
            json!({"skipped": "torus-only instance (no semisimple part)"}),
        );
    }

    doc.insert("ok".into(), json!(ok));
    Ok((Value::Object(doc), ok))
}
