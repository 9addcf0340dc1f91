//! Acceptance gate: one line per criterion, non-zero exit if any fails.
//!
//! Every tolerance and time budget is fixed here. Run with
//! `cargo test -p qsub-core --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{limits, random_state, CORPUS};
use qsub_core::rng::trial_stream;
use qsub_core::{
    apply_uc, emit_report, enumerate_solutions, evaluate, grover_success_probability, ideal_interfere, measure_flag,
    optimal_grover_iterations, parse, phase_oracle, run_classical, run_paper_algorithm, singleton_witnesses,
    uniform_superposition, InterferenceMode, Oracle, RegisterLayout, ReportFormat, SolutionSet, StateVector64,
    SubtractionCircuit,
};

type Outcome = Result<String, String>;

struct Criterion {
    id: &'static str,
    title: &'static str,
    budget: Duration,
    check: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_sets(text: &str, k: u32) -> SolutionSet {
    enumerate_solutions(&parse(text).unwrap(), k, &limits()).unwrap()
}

fn register(k: u32) -> RegisterLayout {
    RegisterLayout::register(k, &limits()).unwrap()
}

fn to_idx(v: &[u64]) -> Vec<usize> {
    v.iter().map(|&x| x as usize).collect()
}

// 1. flag probability matches n / 2^k
fn flag_probability() -> Outcome {
    let cases = [("x*x - 4 = 0", 3, 1u64, 7u64), ("x = 1 or x = 3", 2, 2, 11), ("x = 3 or x = 5 or x = 250", 8, 3, 1)];
    let trials = 100_000u64;
    let mut detail = Vec::new();
    for (text, k, n, seed) in cases {
        let start = Instant::now();
        let ast = parse(text).unwrap();
        let r = run_paper_algorithm(&ast, k, InterferenceMode::IdealRejection, trials, seed, &limits())
            .map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let p = n as f64 / (1u64 << k) as f64;
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        let dev = (r.empirical_p_flag1 - p).abs();
        ensure(r.n == n, || format!("{text}: n = {} (want {n})", r.n))?;
        ensure(dev <= 3.0 * sigma, || format!("{text}: |{} - {p}| = {dev:.3e} > 3σ = {:.3e}", r.empirical_p_flag1, 3.0 * sigma))?;
        ensure(elapsed < Duration::from_secs(10), || format!("{text}: {elapsed:?} exceeds 10 s"))?;
        ensure(r.records.iter().all(|t| t.solution_found.is_none_or(|x| evaluate(&ast, x))), || {
            format!("{text}: invalid solution reported")
        })?;
        detail.push(format!("{text}: {:.5} vs {p:.5} ({:.1}σ, {:.2}s)", r.empirical_p_flag1, dev / sigma, elapsed.as_secs_f64()));
    }
    Ok(detail.join("; "))
}

// 2. ideal rejection reproduces the uniform solution state exactly
fn ideal_exactness() -> Outcome {
    let mut checked = 0;
    let mut worst = 0.0f64;
    for &(text, k) in CORPUS {
        let set = exact_sets(text, k);
        if set.is_empty() || set.is_full() || k > 10 {
            continue;
        }
        let x_tilde = StateVector64::uniform_over(register(k), to_idx(&set.complement())).unwrap();
        let want = StateVector64::uniform_over(register(k), to_idx(set.members())).unwrap();
        let got = ideal_interfere(&x_tilde, k).map_err(|e| format!("{text}: {e}"))?;
        let diff = got.max_abs_diff(&want).unwrap();
        ensure(diff <= 1e-12, || format!("{text} (k={k}): max amplitude error {diff:.3e}"))?;
        worst = worst.max(diff);
        checked += 1;
    }
    ensure(checked >= 10, || format!("only {checked} corpus predicates qualified"))?;
    Ok(format!("{checked} predicates, worst amplitude error {worst:.2e}"))
}

// 3. no fixed unitary implements the interference step
fn unitarity_certificate() -> Outcome {
    let mut pairs = 0;
    let mut least = f64::INFINITY;
    for k in [2, 3] {
        for w in singleton_witnesses::<f64>(k, &limits()).map_err(|e| e.to_string())? {
            ensure(w.verdict && w.mismatch >= 0.5, || {
                format!("k={k} {:?} vs {:?}: mismatch {}", w.set_a.members(), w.set_b.members(), w.mismatch)
            })?;
            least = least.min(w.mismatch);
            pairs += 1;
        }
    }
    let a = SolutionSet::from_members(2, &limits(), [0]).unwrap();
    let b = SolutionSet::from_members(2, &limits(), [1]).unwrap();
    let w = qsub_core::unitarity_witness::<f64>(2, &a, &b).map_err(|e| e.to_string())?;
    ensure((w.mismatch - 2.0 / 3.0).abs() <= 1e-12, || format!("k=2 {{0}} vs {{1}}: mismatch {}", w.mismatch))?;
    ensure(pairs == 6 + 28, || format!("scanned {pairs} pairs"))?;
    Ok(format!("{pairs} pairs certified, smallest mismatch {least:.4}"))
}

// 4. post-selected subtraction costs ~2^k/n attempts per success
fn postselection_cost() -> Outcome {
    let text = "x = 3 or x = 5 or x = 250";
    let (k, n) = (8u32, 3.0f64);
    let size = 256.0;
    let p = (1.0 - (1.0 - n / size).sqrt()) / 2.0;

    let ast = parse(text).unwrap();
    let oracle = Oracle::compile(&ast, k, &limits()).unwrap();
    let x_tilde = StateVector64::uniform_over(register(k), oracle.unmarked()).unwrap();
    let circuit = SubtractionCircuit::prepare(&oracle, &x_tilde).map_err(|e| e.to_string())?;
    ensure((circuit.success_probability() - p).abs() <= 1e-12, || {
        format!("circuit success probability {} vs {p}", circuit.success_probability())
    })?;

    let attempts = 100_000u64;
    let hits = (0..attempts).filter(|&i| circuit.attempt(&mut trial_stream(2, i)).succeeded).count() as f64;
    let freq = hits / attempts as f64;
    let sigma = (p * (1.0 - p) / attempts as f64).sqrt();
    ensure((freq - p).abs() <= 3.0 * sigma, || format!("ancilla frequency {freq} vs {p} (3σ = {})", 3.0 * sigma))?;

    let r = run_paper_algorithm(&ast, k, InterferenceMode::PostselectedSubtraction, 100_000, 1, &limits())
        .map_err(|e| e.to_string())?;
    let made = r.interference_attempts() as f64;
    let mean = r.mean_interference_attempts_per_success.ok_or("no heralded successes")?;
    // delta method on attempts / Binomial(attempts, p)
    let mean_sigma = ((1.0 - p) / (made * p)).sqrt() / p;
    ensure((mean - 1.0 / p).abs() <= 3.0 * mean_sigma, || {
        format!("attempts per success {mean:.1} vs {:.1} (3σ = {:.1})", 1.0 / p, 3.0 * mean_sigma)
    })?;

    // simulated cost per success climbs with 2^k / n (three solutions each width)
    let costs = [4u32, 6, 8, 10]
        .iter()
        .map(|&k| {
            let oracle = Oracle::compile(&parse("x = 3 or x = 5 or x = 9").unwrap(), k, &limits()).unwrap();
            let x_tilde = StateVector64::uniform_over(register(k), oracle.unmarked()).unwrap();
            SubtractionCircuit::prepare(&oracle, &x_tilde).map(|c| 1.0 / c.success_probability())
        })
        .collect::<Result<Vec<f64>, _>>()
        .map_err(|e| e.to_string())?;
    ensure(costs.windows(2).all(|w| w[1] > 3.5 * w[0]), || format!("costs {costs:?} do not scale with 2^k"))?;

    Ok(format!(
        "ancilla frequency {freq:.5} vs {p:.5}; attempts/success {mean:.1} vs {:.1} over {made} attempts",
        1.0 / p
    ))
}

// 5. Grover simulation follows sin^2((2j+1)θ)
fn grover_baseline() -> Outcome {
    let mut worst = 0.0f64;
    let mut runs = 0;
    for &(text, k) in CORPUS {
        let ast = parse(text).unwrap();
        let oracle = Oracle::compile(&ast, k, &limits()).unwrap();
        let n = oracle.n() as u64;
        if n == 0 || k > 10 {
            continue;
        }
        let optimal = optimal_grover_iterations(n, k).unwrap();
        let mut state = uniform_superposition::<f64>(register(k));
        for j in 0..=2 * optimal {
            let simulated = oracle.marked_mass(&state).unwrap();
            let err = (simulated - grover_success_probability(n, k, j)).abs();
            ensure(err <= 1e-9, || format!("{text} j={j}: error {err:.3e}"))?;
            worst = worst.max(err);
            state = oracle.grover_step(&state).unwrap();
            runs += 1;
        }
    }
    let ast = parse("x = 11").unwrap();
    let oracle = Oracle::compile(&ast, 4, &limits()).unwrap();
    let mut state = uniform_superposition::<f64>(register(4));
    for _ in 0..3 {
        state = oracle.grover_step(&state).unwrap();
    }
    let p = oracle.marked_mass(&state).unwrap();
    ensure((p - 0.9613).abs() < 5e-5, || format!("k=4 n=1 j=3: {p}"))?;
    Ok(format!("{runs} (predicate, j) points, worst error {worst:.2e}; k=4 n=1 j=3 → {p:.4}"))
}

// 6. classical search averages (2^k + 1)/(n + 1) probes
fn classical_baseline() -> Outcome {
    let (k, n) = (3u32, 1u64);
    let size = 1u64 << k;
    // exact law of the first solution's position in a random order
    let choose = |a: u64, b: u64| -> f64 { (0..b).fold(1.0, |acc, i| acc * (a - i) as f64 / (i + 1) as f64) };
    let law: Vec<(f64, f64)> = (1..=size - n + 1).map(|t| (t as f64, choose(size - t, n - 1) / choose(size, n))).collect();
    let mean: f64 = law.iter().map(|(t, p)| t * p).sum();
    let var: f64 = law.iter().map(|(t, p)| (t - mean).powi(2) * p).sum();
    ensure((mean - 4.5).abs() < 1e-12, || format!("exact mean {mean}"))?;

    let runs = 100_000u64;
    let r = run_classical(&parse("x*x - 4 = 0").unwrap(), k, runs, 5, &limits()).map_err(|e| e.to_string())?;
    let sigma = (var / runs as f64).sqrt();
    ensure((r.mean_checks - 4.5).abs() <= 3.0 * sigma, || format!("mean checks {} vs 4.5 (3σ = {})", r.mean_checks, 3.0 * sigma))?;
    ensure(r.expected_checks == Some(4.5), || format!("closed form {:?}", r.expected_checks))?;
    ensure(r.records.iter().all(|c| c.solution == Some(2)), || "classical search missed the root".into())?;
    Ok(format!("mean checks {:.4} vs 4.5 (σ = {sigma:.4})", r.mean_checks))
}

// 7. property suites (deterministic sweep; proptest versions live in tests/properties.rs)
fn property_suites() -> Outcome {
    let mut rng = trial_stream(99, 0);
    let mut count = 0;
    for &(text, k) in CORPUS.iter().filter(|(_, k)| *k <= 8) {
        let ast = parse(text).unwrap();
        let set = exact_sets(text, k);
        let flagged = RegisterLayout::with_flag(k, &limits()).unwrap();
        for _ in 0..4 {
            let s = random_state(flagged, &mut rng);
            let once = apply_uc(&s, &ast).unwrap();
            ensure((once.norm() - 1.0).abs() <= 1e-12, || format!("{text}: Uc norm {}", once.norm()))?;
            ensure(apply_uc(&once, &ast).unwrap().max_abs_diff(&s).unwrap() == 0.0, || format!("{text}: Uc not an involution"))?;

            let bare = random_state(register(k), &mut rng);
            let phased = phase_oracle(&bare, &ast);
            ensure((phased.norm() - 1.0).abs() <= 1e-12, || format!("{text}: phase norm"))?;
            ensure(phase_oracle(&phased, &ast) == bare, || format!("{text}: phase not an involution"))?;

            let (p0, p1) = qsub_core::statevec::flag_masses(&once).unwrap();
            ensure((p0 + p1 - 1.0).abs() <= 1e-12, || format!("{text}: Born sum {}", p0 + p1))?;

            let m = measure_flag(&once, &mut rng).unwrap();
            let mass = if m.observed_bit == 1 { p1 } else { p0 };
            for x in 0..(1usize << k) {
                let want = once.amplitudes()[flagged.index_of(x, m.observed_bit as usize, 0)] / mass.sqrt();
                let got = m.posterior.amplitudes()[x];
                ensure((got - want).norm() <= 1e-12, || format!("{text}: posterior amplitude {x}"))?;
            }
            count += 1;
        }
        let reparsed = parse(&ast.to_string()).map_err(|e| e.to_string())?;
        ensure(reparsed == ast, || format!("{text}: round trip changed the tree"))?;
        for x in 0..(1u64 << k) {
            ensure(set.contains(x) == evaluate(&ast, x), || format!("{text}: enumeration disagrees at {x}"))?;
        }
    }
    let render = || {
        let ast = parse("x = 3 or x = 5 or x = 250").unwrap();
        let r = run_paper_algorithm(&ast, 8, InterferenceMode::PostselectedSubtraction, 5_000, 42, &limits()).unwrap();
        let (mut json, mut csv) = (Vec::new(), Vec::new());
        emit_report(&r, ReportFormat::Json, &mut json).unwrap();
        emit_report(&r, ReportFormat::Csv, &mut csv).unwrap();
        (json, csv)
    };
    ensure(render() == render(), || "reports differ under a fixed seed".into())?;
    Ok(format!("{count} random states across corpus; round trip, enumeration and reproducibility hold"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: "AC1", title: "flag probability n/2^k", budget: Duration::from_secs(30), check: flag_probability },
        Criterion { id: "AC2", title: "ideal interference exactness", budget: Duration::from_secs(5), check: ideal_exactness },
        Criterion { id: "AC3", title: "no-fixed-unitary certificate", budget: Duration::from_secs(1), check: unitarity_certificate },
        Criterion { id: "AC4", title: "post-selection cost", budget: Duration::from_secs(30), check: postselection_cost },
        Criterion { id: "AC5", title: "Grover baseline", budget: Duration::from_secs(5), check: grover_baseline },
        Criterion { id: "AC6", title: "classical baseline", budget: Duration::from_secs(5), check: classical_baseline },
        Criterion { id: "AC7", title: "property suites", budget: Duration::from_secs(60), check: property_suites },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.check)();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|d| {
            if elapsed <= c.budget {
                Ok(d)
            } else {
                Err(format!("took {elapsed:?}, budget {:?}", c.budget))
            }
        });
        match outcome {
            Ok(detail) => println!("[PASS] {} {} ({:.2}s): {detail}", c.id, c.title, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {} {} ({:.2}s): {why}", c.id, c.title, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
