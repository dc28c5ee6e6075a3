//! Acceptance suite: one PASS/FAIL line per criterion; exits nonzero if any criterion fails.

use std::time::Instant;

use hms_cli::selftest::{run_selftest, SelftestOptions};
use hms_cli::verify::{glue_suite, verify_model, verify_with_glue, VerifyOptions};
use hms_core::ainfinity::fixtures::random_functor;
use hms_core::ainfinity::{check_ainf, limit_category, FiniteAInfCategory};
use hms_core::fukaya::{chain_generators, glue_identify, min_weight, FukayaError, GeneratorLabel, LagrangianObject};
use hms_core::linalg::Parity;
use hms_core::tropical::{fixtures, Leg, TropicalModel};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn model(m: Vec<([i64; 2], i64)>) -> TropicalModel {
    TropicalModel::from_monomials(&m).expect("fixture builds")
}

/// F1, F2, F2' and the bounded-component fixtures.
fn sweep_fixtures() -> Vec<(&'static str, TropicalModel)> {
    vec![
        ("F1", model(fixtures::pants())),
        ("F2", model(fixtures::square())),
        ("F2'", model(fixtures::tall_square())),
        ("pentagon", model(fixtures::pentagon())),
        ("hexagon", model(fixtures::hexagon())),
    ]
}

fn sweep_options() -> VerifyOptions {
    VerifyOptions { truncation: 8, k_window: 2, seed: 0, arity: None }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let f2 = model(fixtures::square());
    let id = |p| f2.points.id_of(p).unwrap();
    let (a, b) = (LagrangianObject::new(id([1, 0]), 0), LagrangianObject::new(id([0, 1]), 0));
    let same = chain_generators(&f2, Leg::Edge(0), a, a, 2).map_err(|e| e.to_string())?;
    let cross = chain_generators(&f2, Leg::Edge(0), a, b, 2).map_err(|e| e.to_string())?;
    ensure(same.len() == 5 && cross.len() == 4, || format!("n = 2 counts {} / {}", same.len(), cross.len()))?;
    ensure(f2.curve.bounded_edges[0].degree_from(a.component) == -1, || "F2 edge has d != -1".into())?;
    let mut checked = 0;
    for (name, m) in sweep_fixtures().into_iter().chain([("local P2", model(fixtures::local_p2()))]) {
        for (ei, e) in m.curve.bounded_edges.iter().enumerate() {
            let ne = e.lattice_length;
            for &x in &e.components {
                for &y in &e.components {
                    let d = if x == y { 0 } else { e.degree_from(x) };
                    for k in -2..=2i64 {
                        for l in -2..=2i64 {
                            let (s, t) = (LagrangianObject::new(x, k), LagrangianObject::new(y, l));
                            for n in 1..=10i64 {
                                let got = chain_generators(&m, Leg::Edge(ei), s, t, n);
                                let min = min_weight(&m, ei, s, t);
                                if n < min {
                                    ensure(got == Err(FukayaError::WeightTooSmall { n, min }), || {
                                        format!("{name}: weight {n} below {min} accepted")
                                    })?;
                                    continue;
                                }
                                let want = 2 * n + ne * (l - k) + d + 1;
                                let got = got.map_err(|e| e.to_string())?.len() as i64;
                                ensure(got == want, || format!("{name} e{ei} ({x},{k})->({y},{l}) n={n}: {got} != {want}"))?;
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("5 + 4 labels at n = 2; {checked} counts match 2n+n(l-k)(+d)+1"))
}

fn criterion_2() -> Outcome {
    let mut edges = 0;
    for (name, m) in sweep_fixtures() {
        for (i, e) in m.curve.bounded_edges.iter().enumerate() {
            let [a, b] = e.components;
            let [d_ab, d_ba] = e.degrees;
            ensure(d_ab + d_ba == -2, || format!("{name} e{i}: {d_ab} + {d_ba}"))?;
            // Oracle: the xy-part of the wall relation g + h + d_ab a + d_ba b = 0.
            let g = m.points.point(m.third_point(e.ends[0], a, b).unwrap());
            let h = m.points.point(m.third_point(e.ends[1], a, b).unwrap());
            let (pa, pb) = (m.points.point(a), m.points.point(b));
            for c in 0..2 {
                ensure(g[c] + h[c] + d_ab * pa[c] + d_ba * pb[c] == 0, || format!("{name} e{i}: wall relation fails"))?;
            }
            edges += 1;
        }
    }
    let hex = model(fixtures::hexagon());
    ensure(hex.curve.components.iter().any(|c| c.bounded), || "hexagon has no bounded component".into())?;
    Ok(format!("d_ab + d_ba = -2 on all {edges} bounded edges"))
}

struct Sweep {
    reports: Vec<(&'static str, hms_cli::verify::VerificationReport)>,
}

fn run_sweep() -> Sweep {
    Sweep { reports: sweep_fixtures().into_iter().map(|(n, m)| (n, verify_model(&m, &sweep_options()))).collect() }
}

fn criterion_3(s: &Sweep) -> Outcome {
    let mut pairs = 0;
    let mut zero_homs = 0;
    for (name, r) in &s.reports {
        for p in &r.pairs {
            ensure(p.matched, || {
                format!("{name} {:?}({}) -> {:?}({}): A {:?} B {:?}", p.source.alpha, p.source.twist, p.target.alpha, p.target.twist, p.a_side, p.b_side)
            })?;
            zero_homs += usize::from(p.a_side == [0, 0]);
        }
        pairs += r.pairs.len();
    }
    ensure(zero_homs > 0, || "no zero homs in the sweep".into())?;
    Ok(format!("{pairs} pairs agree in both degrees ({zero_homs} zero homs)"))
}

fn suite_criterion(s: &Sweep, names: &[&str]) -> Outcome {
    let mut checked = 0;
    for (fixture, r) in &s.reports {
        for name in names {
            let suite = r.suite(name).ok_or_else(|| format!("missing suite {name}"))?;
            ensure(suite.passed, || format!("{fixture} {name}: {:?}", suite.failures))?;
            checked += suite.checked;
        }
    }
    ensure(checked > 0, || "nothing checked".into())?;
    Ok(format!("{} passed ({checked} checks)", names.join(" + ")))
}

fn criterion_7() -> Outcome {
    let opts = SelftestOptions::new(0, 4);
    let results = run_selftest(&opts);
    let mut parts = Vec::new();
    for r in &results {
        ensure(r.passed(), || format!("{}: {:?}", r.name, r.failures))?;
        parts.push(format!("{} x{}", r.name, r.cases));
    }
    let expected = [opts.limit_fixtures as usize, opts.hochschild_chains, opts.functor_pairs as usize, opts.kernel_fixtures as usize, opts.transport_fixtures as usize];
    let counts: Vec<usize> = results.iter().map(|r| r.cases).collect();
    ensure(counts == expected, || format!("case counts {counts:?} != {expected:?}"))?;
    Ok(parts.join(", "))
}

/// Toggles one generator in an existing mu^1 or mu^2 entry.
fn perturbations(cat: &FiniteAInfCategory, rng: &mut ChaCha8Rng, count: usize) -> Vec<FiniteAInfCategory> {
    let mut candidates = Vec::new();
    for k in [1usize, 2] {
        let Some(table) = cat.mu.get(&k) else { continue };
        for inputs in table.keys() {
            let want = inputs.iter().fold(Parity::of(k as i64), |acc, &g| acc + cat.degree(g));
            let (s, t) = (inputs[inputs.len() - 1].src, inputs[0].tgt);
            for h in cat.basis(s, t).into_iter().filter(|&h| cat.degree(h) == want) {
                candidates.push((k, inputs.clone(), h));
            }
        }
    }
    candidates.shuffle(rng);
    candidates
        .into_iter()
        .take(count)
        .map(|(k, inputs, h)| {
            let mut c = cat.clone();
            let mut v = c.mu[&k][&inputs].clone();
            if !v.remove(&h) {
                v.insert(h);
            }
            c.set_mu(inputs, v);
            c
        })
        .collect()
}

fn criterion_8() -> Outcome {
    let opts = VerifyOptions { truncation: 4, k_window: 1, seed: 0, arity: None };
    // d values: every bounded edge, both sides.
    let mut d_faults = 0;
    for (name, m) in sweep_fixtures().into_iter().chain([("local P2", model(fixtures::local_p2()))]) {
        for e in 0..m.curve.bounded_edges.len() {
            for side in 0..2 {
                let mut bad = m.clone();
                bad.curve.bounded_edges[e].degrees[side] += 1;
                let r = verify_model(&bad, &opts);
                let cy = r.suite("cy_relation").map(|s| s.passed);
                ensure(!r.passed && cy == Some(false), || format!("{name} e{e}: perturbed d not caught"))?;
                d_faults += 1;
            }
        }
    }
    // Glue indices: shift the image of one label.
    let mut glue_faults = 0;
    for (name, m) in sweep_fixtures() {
        for e in 0..m.curve.bounded_edges.len() {
            let ends = m.curve.bounded_edges[e].ends;
            for (side, index) in [(ends[0], 0), (ends[1], 1)] {
                let faulty = move |m: &TropicalModel, edge: usize, s: LagrangianObject, t: LagrangianObject, l: GeneratorLabel| {
                    let g = glue_identify(m, edge, s, t, l)?;
                    let hit = edge == e && l.side == Some(side) && l.index == index && s.twist == 0 && t.twist == 1;
                    Ok(if hit { GeneratorLabel { index: g.index + 1, ..g } } else { g })
                };
                let suite = glue_suite(&m, &opts, &faulty);
                ensure(!suite.passed, || format!("{name} e{e}: perturbed glue index not caught"))?;
                let report = verify_with_glue(&m, &opts, &faulty);
                ensure(!report.passed, || format!("{name} e{e}: report passed with faulty glue"))?;
                glue_faults += 1;
            }
        }
    }
    // mu entries: seeded single-entry toggles in limit categories.
    let mu_faults: Result<usize, String> = (0..20u64)
        .into_par_iter()
        .map(|seed| {
            let l = limit_category(&random_functor(seed, 3), 3);
            ensure(check_ainf(&l, 3).is_empty(), || format!("seed {seed}: unperturbed limit fails"))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let faults = perturbations(&l, &mut rng, 10);
            for (i, c) in faults.iter().enumerate() {
                ensure(!check_ainf(c, 3).is_empty(), || format!("seed {seed}: toggle {i} not caught"))?;
            }
            Ok(faults.len())
        })
        .try_reduce(|| 0, |a, b| Ok(a + b));
    let mu_faults = mu_faults?;
    ensure(d_faults > 0 && glue_faults > 0 && mu_faults > 0, || "no faults injected".into())?;
    Ok(format!("caught {d_faults} d faults (cy_relation), {glue_faults} glue faults (glue_involution), {mu_faults} mu faults (check_ainf)"))
}

fn main() {
    let start = Instant::now();
    let sweep = run_sweep();
    let sweep_time = start.elapsed();
    let criteria: Vec<(u32, &str, Box<dyn Fn() -> Outcome>)> = vec![
        (1, "chain-level counts", Box::new(criterion_1)),
        (2, "CY relation", Box::new(criterion_2)),
        (3, "HMS dimension equality", Box::new(|| criterion_3(&sweep))),
        (4, "Cech vs global", Box::new(|| suite_criterion(&sweep, &["cech_vs_global"]))),
        (5, "gluing consistency", Box::new(|| suite_criterion(&sweep, &["glue_involution"]))),
        (6, "mirror-restriction agreement", Box::new(|| suite_criterion(&sweep, &["restriction_agreement"]))),
        (7, "A-infinity property suite", Box::new(criterion_7)),
        (8, "negative controls", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (n, title, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let mut secs = t.elapsed().as_secs_f64();
        if (3..=6).contains(&n) {
            secs += sweep_time.as_secs_f64();
        }
        match outcome {
            Ok(msg) => println!("criterion {n} PASS [{secs:.1}s] {title}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n} FAIL [{secs:.1}s] {title}: {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
