//! Acceptance suite: eight exact-math / property criteria, one test each,
//! every tolerance pinned in code. Each test prints a `[PASS]`/`[FAIL]`
//! line (run with `--nocapture` to see them alongside the test harness
//! output).

use std::time::Instant;

use walksearch::attack::{
    plan_attack, run_attack, speedup_report, AttackPlan, AttackScenario, KeySubset,
    SearchPolicy, ToyCipher,
};
use walksearch::grover::{closed_form_success, optimal_iterations, GroverState, OracleSpec};
use walksearch::markov::{absorption_stats, MarkedWalk, UniformWalkLaw};
use walksearch::qwalk::{ExactWalkState, InitialState, QuantumWalkState};

fn verdict(id: u32, name: &str, ok: bool, detail: &str, started: Instant) -> bool {
    let flag = if ok { "PASS" } else { "FAIL" };
    println!(
        "[{flag}] criterion {id}: {name} ({detail}; {:.2}s)",
        started.elapsed().as_secs_f64()
    );
    ok
}

#[test]
fn criterion_1_quantum_walk_table_reproduction() {
    let started = Instant::now();
    let table: [&[(i64, u64, u64)]; 4] = [
        &[(-1, 1, 2), (1, 1, 2)],
        &[(-2, 1, 4), (0, 1, 2), (2, 1, 4)],
        &[(-3, 1, 8), (-1, 1, 8), (1, 5, 8), (3, 1, 8)],
        &[(-4, 1, 16), (-2, 2, 16), (0, 2, 16), (2, 10, 16), (4, 1, 16)],
    ];
    let mut ok = true;
    let mut worst_float: f64 = 0.0;
    for (row, entries) in table.iter().enumerate() {
        let n = row + 1;
        let exact0 = ExactWalkState::new(InitialState::Coin0, n).unwrap().evolve(n).unwrap();
        let exact1 = ExactWalkState::new(InitialState::Coin1, n).unwrap().evolve(n).unwrap();
        let float0 = QuantumWalkState::new(InitialState::Coin0, n).unwrap().evolve(n).unwrap().distribution();
        let float1 = QuantumWalkState::new(InitialState::Coin1, n).unwrap().evolve(n).unwrap().distribution();
        for &(pos, num, den) in *entries {
            // Zero error in exact-rational mode, mirrored for the coin1 start.
            ok &= exact0.probability(pos).equals_fraction(num, den);
            ok &= exact1.probability(-pos).equals_fraction(num, den);
            let expect = num as f64 / den as f64;
            worst_float = worst_float
                .max((float0.probability(pos) - expect).abs())
                .max((float1.probability(-pos) - expect).abs());
        }
    }
    ok &= worst_float < 1e-12;
    let detail = format!("exact tables match, float deviation {worst_float:.2e}");
    assert!(verdict(1, "quantum-walk table reproduction", ok, &detail, started));
}

#[test]
fn criterion_2_edge_and_parity_laws() {
    let started = Instant::now();
    let mut ok = true;
    for n in 1..=20usize {
        let s = ExactWalkState::new(InitialState::Coin0, n).unwrap().evolve(n).unwrap();
        ok &= s.probability(n as i64).equals_fraction(1, 1u64 << n);
        ok &= s.probability(-(n as i64)).equals_fraction(1, 1u64 << n);
        for i in -(n as i64)..=(n as i64) {
            if (n as i64 + i) % 2 != 0 {
                ok &= s.probability(i).is_zero();
            }
        }
    }
    assert!(verdict(
        2,
        "edge probability 1/2^n and exact parity zeros, n <= 20",
        ok,
        "exact arithmetic",
        started
    ));
}

#[test]
fn criterion_3_solver_vs_analytics_and_monte_carlo() {
    let started = Instant::now();
    let mut ok = true;
    let mut detail = String::new();
    for &n in &[10usize, 100, 1000] {
        for &m in &[1usize, 5] {
            let marked: Vec<usize> = (0..m).collect();
            let w = MarkedWalk::uniform(n, marked).unwrap();
            let law = UniformWalkLaw::new(n as u64, m as u64).unwrap();

            let all = w.absorption_probabilities_all().unwrap();
            for r in 0..w.transient_count() {
                for c in 0..m {
                    ok &= (all[(r, c)] - law.absorption_probability()).abs() < 1e-9;
                }
            }
            for t in w.expected_absorption_time().unwrap() {
                ok &= (t - law.expected_absorption_time()).abs() < 1e-9;
            }

            let stats = absorption_stats(&w, w.marked_count(), usize::MAX / 2, 100_000, 1809);
            let expect = law.expected_absorption_time();
            let rel = (stats.mean_steps - expect).abs() / expect;
            ok &= stats.absorbed == stats.trials;
            ok &= rel < 0.01;
            // Probabilities agree within 1%, i.e. one probability point.
            for f in &stats.target_fractions {
                ok &= (f - law.absorption_probability()).abs() < 0.01;
            }
            detail.push_str(&format!("(n={n},m={m}: MC off {:.3}%) ", rel * 100.0));
        }
    }
    assert!(verdict(3, "fundamental-matrix solver vs closed forms vs Monte Carlo", ok, detail.trim(), started));
}

#[test]
fn criterion_4_stationary_limit_of_the_absorbing_walk() {
    let started = Instant::now();
    let w = MarkedWalk::uniform(50, [0]).unwrap();
    let pi = w.transition().stationary_distribution().unwrap();
    let p500 = w.transition().power(500);
    let mut worst: f64 = 0.0;
    for r in 0..50 {
        for c in 0..50 {
            worst = worst.max((p500.get(r, c) - pi[c]).abs());
        }
    }
    let ok = worst < 1e-8;
    let detail = format!("max |P^500 - pi| = {worst:.3e} (tolerance 1e-8)");
    assert!(verdict(4, "P^500 rows reach the marked-state indicator", ok, &detail, started));
}

#[test]
fn criterion_5_grover_closed_form_equivalence() {
    let started = Instant::now();
    let mut ok = true;
    let mut worst: f64 = 0.0;
    let mut n = 4u64;
    while n <= 4096 {
        for m in [1u64, 2, 4] {
            if m >= n {
                continue;
            }
            let oracle = OracleSpec::from_predicate(n as usize, |x| (x as u64) < m).unwrap();
            let mut state = GroverState::uniform(n as usize).unwrap();
            let kmax = 2 * optimal_iterations(n, m);
            for k in 0..=kmax {
                let diff = (state.success_probability(&oracle) - closed_form_success(n, m, k)).abs();
                worst = worst.max(diff);
                state = state.iterate(&oracle, 1);
            }
        }
        n *= 2;
    }
    ok &= worst < 1e-9;

    // The textbook instant-hit instance.
    let oracle = OracleSpec::from_predicate(4, |x| x == 1).unwrap();
    let p = GroverState::uniform(4).unwrap().iterate(&oracle, 1).success_probability(&oracle);
    ok &= (p - 1.0).abs() < 1e-12;

    let detail = format!("max |statevector - sin^2| = {worst:.2e}; N=4 one-shot p = {p}");
    assert!(verdict(5, "statevector equals the rotation closed form", ok, &detail, started));
}

#[test]
fn criterion_6_attack_reconciliation_on_the_full_key_space() {
    let started = Instant::now();
    let cipher = ToyCipher::Xor16;
    let scenario = AttackScenario::KnownPlaintext {
        pairs: vec![(0x1234, 0xACDB)],
    };
    let report = speedup_report(&cipher, &scenario, KeySubset::full_space(&cipher), 1952, 1000).unwrap();
    let mut ok = true;

    // Classical: mean steps against (|A|-1)/m = 65535 within 3 SE.
    let se = report.classical.stderr_steps_or_queries();
    let classical_dev = (report.classical_mean_steps - 65535.0).abs();
    ok &= classical_dev <= 3.0 * se;

    // Grover: exactly 201 queries per trial, >= 99.9% per-trial success.
    ok &= report.quantum.steps_or_queries_per_trial.iter().all(|&q| q == 201);
    ok &= report.quantum.empirical_success_rate >= 0.999;
    ok &= report.quantum.found_key == Some(0xBEEF);

    // Speedup ratio ~ 65535/201 = 326.04, within the classical noise.
    let expect_ratio = 65535.0 / 201.0;
    let ratio_dev = (report.speedup_ratio - expect_ratio).abs();
    ok &= ratio_dev <= 3.0 * se / 201.0;

    let detail = format!(
        "classical mean {:.0} (3se {:.0}), grover success {:.3}, ratio {:.1}",
        report.classical_mean_steps,
        3.0 * se,
        report.quantum.empirical_success_rate,
        report.speedup_ratio
    );
    assert!(verdict(6, "classical/Grover attack reconciliation at |A| = 2^16", ok, &detail, started));
}

#[test]
fn criterion_7_iteration_law_at_one_percent_success() {
    let started = Instant::now();
    let cipher = ToyCipher::Xor16;
    let scenario = AttackScenario::KnownPlaintext {
        pairs: vec![(0x1234, 0xACDB)],
    };
    // 1024 keys around the solution; 10 steps per iteration gives a
    // per-iteration success of ~0.0097.
    let subset = KeySubset::range(0xBC00, 0xBFFF).unwrap();
    assert!(subset.contains(0xBEEF));
    let law = UniformWalkLaw::new(1024, 1).unwrap();
    let p = law.hit_within(10);
    let iterations = (1.0 / p).ceil() as u64;
    let plan = AttackPlan {
        space_size: cipher.key_count(),
        subset,
        start: 0xBD11, // unmarked
        step_budget: 10,
        iterations,
        walker: SearchPolicy::ClassicalUniform,
        seed: 77,
    };
    let report = run_attack(&cipher, &scenario, &plan, 1000).unwrap();
    let predicted = -f64::exp_m1(iterations as f64 * f64::ln_1p(-p));
    let sigma = (predicted * (1.0 - predicted) / 1000.0).sqrt();
    let dev = (report.empirical_success_rate - predicted).abs();
    let ok = dev <= 3.0 * sigma;
    let detail = format!(
        "p = {p:.4}, ceil(1/p) = {iterations}, empirical {:.4} vs predicted {predicted:.4} (3sigma {:.4})",
        report.empirical_success_rate,
        3.0 * sigma
    );
    assert!(verdict(7, "ceil(1/p) repetitions reach the predicted overall rate", ok, &detail, started));
}

#[test]
fn criterion_8_symmetry_audit_of_the_balanced_starts() {
    let started = Instant::now();
    let mut ok = true;

    // The imaginary-balanced start is symmetric at every step to n = 100.
    let mut s = QuantumWalkState::new(InitialState::BalancedImag, 100).unwrap();
    let mut worst: f64 = 0.0;
    for n in 1..=100usize {
        s = s.step().unwrap();
        let d = s.distribution();
        for i in 1..=(n as i64) {
            worst = worst.max((d.probability(i) - d.probability(-i)).abs());
        }
    }
    ok &= worst < 1e-12;

    // The real-balanced start is not: two steps in, all mass on {-2, 0}.
    let d = QuantumWalkState::new(InitialState::BalancedReal, 2)
        .unwrap()
        .evolve(2)
        .unwrap()
        .distribution();
    ok &= (d.probability(-2) - 0.5).abs() < 1e-12;
    ok &= (d.probability(0) - 0.5).abs() < 1e-12;
    ok &= d.probability(2).abs() < 1e-12;

    let detail = format!(
        "balanced-imag asymmetry {worst:.2e}; balanced-real at n=2: (-2) {:.3}, (0) {:.3}",
        d.probability(-2),
        d.probability(0)
    );
    assert!(verdict(8, "balanced-start symmetry audit", ok, &detail, started));
}
