mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bohme_core::cert::{
    bundled_certificate, bundled_certificates, search_certificates, single_deletion_mutants,
    solve_p10_labeling, verify_certificate, Schema, SearchBounds,
};
use bohme_core::cycle::{enumerate_cycles, is_bohme_system, Cycle};
use bohme_core::family::{
    generate_petersen_family, identify_family_member, standard_petersen, FamilyName,
};
use bohme_core::linking::{
    disjoint_cycle_pairs, linking_number, omega_trials, random_embedding, DisjointMode,
};
use bohme_core::par::Execution;
use bohme_core::sphere::{euler_characteristic, is_combinatorial_sphere};
use common::{brute_force_cycles, gauss_linking, graph_from_mask, to_f64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FAMILY_LIMIT: Duration = Duration::from_secs(5);
const CERTIFICATE_LIMIT: Duration = Duration::from_secs(30);
const SPHERE_LIMIT: Duration = Duration::from_secs(5);
const PARITY_LIMIT: Duration = Duration::from_secs(120);
const SEARCH_LIMIT: Duration = Duration::from_secs(600);

const K6_TRIALS: u64 = 100;
const MEMBER_TRIALS: u64 = 20;
const EMBEDDING_RADIUS: i64 = 100;

const ORACLE_PAIRS: usize = 50;
const LK_RESIDUAL: f64 = 0.1;

const RANDOM_GRAPHS: usize = 200;
const RANDOM_GRAPH_MAX_VERTICES: usize = 8;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn FnOnce() -> Outcome>);

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let r = f();
    let el = t.elapsed();
    match r {
        Ok(msg) if el <= limit => Ok(format!("{msg} in {el:.2?}")),
        Ok(msg) => Err(format!("{msg}, but took {el:.2?} (limit {limit:?})")),
        Err(msg) => Err(format!("{msg} ({el:.2?})")),
    }
}

fn family_closure() -> Outcome {
    let fam = generate_petersen_family();
    if fam.len() != 7 {
        return Err(format!("{} classes", fam.len()));
    }
    let mut counts: Vec<usize> = fam.iter().map(|m| m.graph.vertex_count()).collect();
    counts.sort();
    if counts != [6, 7, 7, 8, 8, 9, 10] {
        return Err(format!("vertex counts {counts:?}"));
    }
    if let Some(m) = fam.iter().find(|m| m.graph.edge_count() != 15) {
        return Err(format!("{} has {} edges", m.name, m.graph.edge_count()));
    }
    let mut names: Vec<FamilyName> = Vec::new();
    for m in &fam {
        match identify_family_member(&m.graph) {
            Some(n) if n == m.name => names.push(n),
            other => return Err(format!("{} identified as {other:?}", m.name)),
        }
    }
    names.sort();
    let mut all = FamilyName::ALL.to_vec();
    all.sort();
    if names != all {
        return Err(format!("names {names:?}"));
    }
    Ok("7 classes, 15 edges each, vertex counts 6,7,7,8,8,9,10".into())
}

fn bundled_verify() -> Outcome {
    let mut failed = Vec::new();
    let mut mutants = 0;
    let mut survivors = Vec::new();
    for (name, cert) in bundled_certificates() {
        let g = name.graph();
        match verify_certificate(&g, cert) {
            Ok(r) if r.pass => {}
            Ok(r) => {
                let c = r
                    .first_failure()
                    .expect("failing report has a failed check");
                failed.push(format!(
                    "{name} fails {}: {}",
                    c.name,
                    c.witness.clone().unwrap_or_default()
                ));
            }
            Err(e) => failed.push(format!("{name}: {e}")),
        }
        for (what, m) in single_deletion_mutants(cert) {
            mutants += 1;
            if verify_certificate(&g, &m).is_ok_and(|r| r.pass) {
                survivors.push(format!("{name}: {what}"));
            }
        }
    }
    let mutation = format!("{mutants} mutants, {} survive", survivors.len());
    if failed.is_empty() && survivors.is_empty() {
        Ok(format!("7 certificates verify; {mutation}"))
    } else {
        failed.extend(survivors);
        Err(format!("{mutation}; {}", failed.join("; ")))
    }
}

fn sphere_checks() -> Outcome {
    let mut problems = Vec::new();
    let mut systems = 0;
    for (name, cert) in bundled_certificates() {
        for (i, s) in cert.systems.iter().enumerate() {
            systems += 1;
            let v = is_combinatorial_sphere(s);
            if euler_characteristic(s) != 2 || !v.is_closed_surface {
                problems.push(format!(
                    "{name} system {}: chi {}",
                    i + 1,
                    euler_characteristic(s)
                ));
            }
        }
        let faces: Vec<Cycle> = cert
            .systems
            .iter()
            .flat_map(|s| s.faces().iter().cloned())
            .collect();
        let verdict = is_bohme_system(&faces, &name.graph()).map_err(|e| e.to_string())?;
        if let Some((a, b)) = verdict.witness {
            problems.push(format!("{name} faces not a Bohme system: {a} and {b}"));
        }
    }
    if problems.is_empty() {
        Ok(format!(
            "{systems} systems are spheres, 7 face unions are Bohme systems"
        ))
    } else {
        Err(problems.join("; "))
    }
}

fn parity() -> Outcome {
    let mut summary = Vec::new();
    for name in FamilyName::ALL {
        let (trials, mode) = match name {
            FamilyName::K6 => (K6_TRIALS, DisjointMode::TrianglesOnly),
            _ => (MEMBER_TRIALS, DisjointMode::AllDisjointCycles),
        };
        let seeds: Vec<u64> = (1..=trials).collect();
        let runs = omega_trials(
            &name.graph(),
            &seeds,
            EMBEDDING_RADIUS,
            mode,
            Execution::default(),
        )
        .map_err(|e| format!("{name}: {e}"))?;
        if let Some(t) = runs.iter().find(|t| t.report.parity != 1) {
            return Err(format!(
                "{name} seed {} has parity {}",
                t.seed, t.report.parity
            ));
        }
        if let Some(t) = runs.iter().find(|t| !t.report.has_nonzero_pair()) {
            return Err(format!("{name} seed {} has no linked pair", t.seed));
        }
        summary.push(format!("{name} x{trials}"));
    }
    Ok(format!(
        "parity 1 with a linked pair in every embedding ({})",
        summary.join(", ")
    ))
}

fn gauss_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    let mut nonzero = 0;
    for k in 0..ORACLE_PAIRS {
        let name = FamilyName::ALL[k % FamilyName::ALL.len()];
        let g = name.graph();
        let e = random_embedding(&g, rng.gen(), EMBEDDING_RADIUS).map_err(|e| e.to_string())?;
        let pairs = disjoint_cycle_pairs(&g, DisjointMode::AllDisjointCycles);
        let (a, b) = &pairs[rng.gen_range(0..pairs.len())];
        let lk = linking_number(&e, a, b).map_err(|e| e.to_string())?;
        let pa: Vec<[i64; 3]> = a.vertices().iter().map(|v| e.point(v).unwrap()).collect();
        let pb: Vec<[i64; 3]> = b.vertices().iter().map(|v| e.point(v).unwrap()).collect();
        let est = gauss_linking(&to_f64(&pa), &to_f64(&pb));
        let residual = (lk as f64 - est).abs();
        worst = worst.max(residual);
        if lk != 0 {
            nonzero += 1;
        }
        if est.round() as i64 != lk || residual >= LK_RESIDUAL {
            return Err(format!("{name} {a} {b}: lk {lk}, Gauss estimate {est:.6}"));
        }
    }
    Ok(format!(
        "{ORACLE_PAIRS} pairs ({nonzero} linked), worst residual {worst:.2e}"
    ))
}

fn search() -> Outcome {
    let k6 = FamilyName::K6.graph();
    let bounds = SearchBounds {
        max_base_len: 3,
        schemas: vec![Schema::TriangleConnector],
        max_results: 100,
    };
    let found = search_certificates(&k6, &bounds).map_err(|e| e.to_string())?;
    if !found
        .iter()
        .any(|c| c.is_equivalent(bundled_certificate(FamilyName::K6)))
    {
        return Err(format!(
            "K6 search returned {} certificates without the base (b,e,f) one",
            found.len()
        ));
    }
    let mut counts = BTreeMap::new();
    for name in FamilyName::ALL {
        let g = name.graph();
        let found = search_certificates(&g, &SearchBounds::default())
            .map_err(|e| format!("{name}: {e}"))?;
        let verified = found
            .iter()
            .filter(|c| verify_certificate(&g, c).is_ok_and(|r| r.pass))
            .count();
        if verified == 0 {
            return Err(format!("{name}: no verified certificate"));
        }
        counts.insert(name, verified);
    }
    let list: Vec<String> = counts.iter().map(|(n, c)| format!("{n} {c}")).collect();
    Ok(format!(
        "K6 triangle bases include (b,e,f); verified finds: {}",
        list.join(", ")
    ))
}

fn p10_labeling() -> Outcome {
    let labelings = solve_p10_labeling();
    if labelings.is_empty() {
        return Err("no labeling".into());
    }
    let std = standard_petersen();
    let cert = bundled_certificate(FamilyName::P10);
    for l in &labelings {
        let g = std.relabel(|v| l[v].clone()).map_err(|e| e.to_string())?;
        let r = verify_certificate(&g, cert).map_err(|e| e.to_string())?;
        if !r.pass {
            let c = r
                .first_failure()
                .expect("failing report has a failed check");
            return Err(format!(
                "{} labelings; certificate fails {}: {}",
                labelings.len(),
                c.name,
                c.witness.clone().unwrap_or_default()
            ));
        }
    }
    Ok(format!(
        "{} labelings, certificate verifies under each",
        labelings.len()
    ))
}

fn cycle_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut total = 0;
    for k in 0..RANDOM_GRAPHS {
        let n = rng.gen_range(0..=RANDOM_GRAPH_MAX_VERTICES);
        let density: f64 = rng.gen_range(0.2..0.9);
        let mask: Vec<bool> = (0..n * n.saturating_sub(1) / 2)
            .map(|_| rng.gen_bool(density))
            .collect();
        let g = graph_from_mask(n, &mask);
        let got = enumerate_cycles(&g, None, false);
        let want: Vec<Cycle> = brute_force_cycles(&g, None, false).into_iter().collect();
        if got != want {
            return Err(format!(
                "graph {k} ({n} vertices): {} cycles vs {} from brute force",
                got.len(),
                want.len()
            ));
        }
        total += got.len();
    }
    Ok(format!("{RANDOM_GRAPHS} graphs, {total} cycles, all equal"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "family closure",
            Box::new(|| timed(FAMILY_LIMIT, family_closure)),
        ),
        (
            "bundled certificates and mutants",
            Box::new(|| timed(CERTIFICATE_LIMIT, bundled_verify)),
        ),
        (
            "sphere and Bohme checks",
            Box::new(|| timed(SPHERE_LIMIT, sphere_checks)),
        ),
        (
            "Conway-Gordon parity",
            Box::new(|| timed(PARITY_LIMIT, parity)),
        ),
        ("linking number vs Gauss integral", Box::new(gauss_oracle)),
        (
            "certificate search",
            Box::new(|| timed(SEARCH_LIMIT, search)),
        ),
        ("P10 labeling", Box::new(p10_labeling)),
        ("cycle enumeration vs brute force", Box::new(cycle_oracle)),
    ];
    let mut failures = 0;
    for (i, (label, run)) in criteria.into_iter().enumerate() {
        match run() {
            Ok(msg) => println!("criterion {} {label}: PASS ({msg})", i + 1),
            Err(msg) => {
                failures += 1;
                println!("criterion {} {label}: FAIL ({msg})", i + 1);
            }
        }
    }
    println!("acceptance: {} of 8 criteria pass", 8 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
