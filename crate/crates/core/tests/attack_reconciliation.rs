//! The harness against the theory it is supposed to reproduce: measured
//! hit times vs the fundamental-matrix value, Grover trials vs the rotation
//! closed form, and the designer-decision laws.

use walksearch::attack::{
    marked_keys, plan_attack, run_attack, AttackPlan, AttackScenario, Key, KeySubset,
    PlaintextModel, SearchPolicy, ToyCipher,
};
use walksearch::markov::UniformWalkLaw;

fn xor_scenario() -> AttackScenario {
    AttackScenario::KnownPlaintext {
        pairs: vec![(0x1234, 0xACDB)], // key 0xBEEF
    }
}

/// Subsets of the four prediction-grid shapes, all containing at least one
/// consistent key.
fn grid_instance(size: u64, m: u64) -> (ToyCipher, AttackScenario, KeySubset) {
    let cipher = ToyCipher::Xor16;
    if m == 1 {
        // A range around the xor16 solution 0xBEEF, clamped to the key space.
        let subset = if size >= 1 << 16 {
            KeySubset::full_space(&cipher)
        } else {
            let lo = (0xBEEFu32 - size as u32 / 2).min((1 << 16) - size as u32);
            KeySubset::range(lo, lo + size as u32 - 1).unwrap()
        };
        assert!(subset.contains(0xBEEF));
        (cipher, xor_scenario(), subset)
    } else {
        // Ciphertext-only: with ciphertext 0x0000, key k decrypts to k, so
        // the plausibility of k is just "high byte printable". Four keys
        // with high byte 'A', the rest with unprintable high bytes.
        let scenario = AttackScenario::CiphertextOnly {
            ciphertexts: vec![0x0000],
            plaintext_model: PlaintextModel::PrintableHighByte,
        };
        let mut keys: Vec<Key> = (0..m as Key).map(|i| 0x4100 + i).collect();
        keys.extend((0..(size - m) as Key).map(|i| i % 0x2000));
        let subset = KeySubset::explicit(keys).unwrap();
        (cipher, scenario, subset)
    }
}

#[test]
fn empirical_hit_times_match_the_fundamental_matrix_value_across_the_grid() {
    for (size, m, seed) in [
        (1u64 << 8, 1u64, 11u64),
        (1 << 12, 1, 12),
        (1 << 16, 1, 13),
        (1 << 10, 4, 14),
    ] {
        let (cipher, scenario, subset) = grid_instance(size, m);
        assert_eq!(marked_keys(&cipher, &scenario, &subset).len() as u64, m);
        let plan = plan_attack(
            &cipher,
            &scenario,
            subset,
            SearchPolicy::ClassicalUniform,
            0.999,
            seed,
        )
        .unwrap();
        // The comparison below conditions on an unmarked start.
        let start_idx = plan.subset.index_of(plan.start).unwrap();
        assert!(
            !scenario.key_consistent(&cipher, plan.subset.get(start_idx)),
            "pick another seed: start landed on a marked key"
        );
        let report = run_attack(&cipher, &scenario, &plan, 1000).unwrap();
        let expect = UniformWalkLaw::new(size, m).unwrap().expected_absorption_time();
        assert_eq!(report.predicted_mean_steps, Some(expect));
        let mean = report.mean_steps_or_queries();
        let leeway = 3.0 * report.stderr_steps_or_queries();
        assert!(
            (mean - expect).abs() <= leeway,
            "size {size}, m {m}: mean {mean} vs {expect} (3se {leeway})"
        );
        assert!(report.empirical_success_rate >= 0.99);
    }
}

#[test]
fn grover_success_rate_matches_its_prediction() {
    let (cipher, scenario, subset) = grid_instance(1 << 10, 1);
    let plan = plan_attack(&cipher, &scenario, subset, SearchPolicy::Grover, 0.9, 3).unwrap();
    assert_eq!(plan.step_budget, 25);
    let report = run_attack(&cipher, &scenario, &plan, 1000).unwrap();
    let p = report.predicted_success_rate;
    let sigma = (p * (1.0 - p) / 1000.0).sqrt();
    assert!(
        (report.empirical_success_rate - p).abs() <= 4.0 * sigma + 5e-3,
        "empirical {} vs predicted {p}",
        report.empirical_success_rate
    );
    assert_eq!(report.found_key, Some(0xBEEF));
}

#[test]
fn within_budget_success_shrinks_as_the_subset_grows() {
    // The planner's own exact law: m and budget fixed, success strictly
    // decreasing in |A|; equivalently the planned budget for a fixed
    // confidence strictly grows.
    let budget = 100;
    let mut last = f64::INFINITY;
    for size in [64u64, 128, 256, 1024, 4096, 65536] {
        let p = UniformWalkLaw::new(size, 1).unwrap().hit_within(budget);
        assert!(p < last, "size {size}: {p} !< {last}");
        last = p;
    }

    let mut last_budget = 0u64;
    for size in [256u64, 1024, 4096, 65536] {
        let (cipher, scenario, subset) = grid_instance(size, 1);
        let plan = plan_attack(
            &cipher,
            &scenario,
            subset,
            SearchPolicy::ClassicalUniform,
            0.9,
            5,
        )
        .unwrap();
        assert!(plan.step_budget > last_budget);
        last_budget = plan.step_budget;
    }
}

#[test]
fn repeating_one_over_p_times_lifts_the_success_rate_as_predicted() {
    // A deliberately starved budget: |A| = 1024, 10 steps per iteration
    // gives p ~ 0.0097 per iteration; ceil(1/p) = 103 iterations must land
    // the overall rate at 1 - (1-p)^103 within Monte Carlo noise.
    let (cipher, scenario, subset) = grid_instance(1 << 10, 1);
    let law = UniformWalkLaw::new(1 << 10, 1).unwrap();
    let p = law.hit_within(10);
    assert!((p - 0.01).abs() < 3e-3, "constructed p = {p}");
    let iterations = (1.0 / p).ceil() as u64;
    assert_eq!(iterations, 103);

    let start: Key = 0xBEEF - 100; // unmarked on purpose
    let plan = AttackPlan {
        space_size: cipher.key_count(),
        subset,
        start,
        step_budget: 10,
        iterations,
        walker: SearchPolicy::ClassicalUniform,
        seed: 21,
    };
    let report = run_attack(&cipher, &scenario, &plan, 1000).unwrap();
    let overall = law.hit_within(10 * iterations);
    assert_eq!(report.predicted_success_rate, overall);
    let sigma = (overall * (1.0 - overall) / 1000.0).sqrt();
    assert!(
        (report.empirical_success_rate - overall).abs() <= 3.0 * sigma,
        "empirical {} vs predicted {overall} (3sigma {})",
        report.empirical_success_rate,
        3.0 * sigma
    );
}

#[test]
fn found_keys_always_satisfy_every_scenario_constraint() {
    // spn16 with a single pair usually leaves several consistent keys; any
    // reported key must encrypt the pair correctly even when it is not the
    // key that generated the scenario.
    let cipher = ToyCipher::Spn16;
    let secret: Key = 0x5A31;
    let x = 0x0F0F;
    let scenario = AttackScenario::KnownPlaintext {
        pairs: vec![(x, cipher.encrypt(secret, x))],
    };
    let subset = KeySubset::full_space(&cipher);
    let consistent = marked_keys(&cipher, &scenario, &subset);
    assert!(consistent.contains(&secret));

    let plan = plan_attack(
        &cipher,
        &scenario,
        subset,
        SearchPolicy::ClassicalUniform,
        0.99,
        8,
    )
    .unwrap();
    let report = run_attack(&cipher, &scenario, &plan, 20).unwrap();
    let found = report.found_key.expect("high-confidence plan should hit");
    assert!(scenario.key_consistent(&cipher, found));
    assert!(consistent.contains(&found));
    assert_eq!(report.marked_count, consistent.len() as u64);
}

#[test]
fn chosen_scenarios_check_keys_the_same_way_as_known_plaintext() {
    let cipher = ToyCipher::Xor16;
    let pairs = vec![(0x1234u32, 0xACDBu32), (0x0000, 0xBEEF)];
    for scenario in [
        AttackScenario::KnownPlaintext { pairs: pairs.clone() },
        AttackScenario::ChosenPlaintext { pairs: pairs.clone() },
        AttackScenario::ChosenCiphertext { pairs: pairs.clone() },
    ] {
        let subset = KeySubset::full_space(&cipher);
        assert_eq!(marked_keys(&cipher, &scenario, &subset), vec![0xBEEF]);
    }
}

#[test]
fn ciphertext_only_attack_recovers_a_plausible_key_end_to_end() {
    let cipher = ToyCipher::Xor16;
    let secret: Key = 0x1407;
    let plains: Vec<u32> = vec![0x5468, 0x6520, 0x706C]; // printable high bytes
    let scenario = AttackScenario::CiphertextOnly {
        ciphertexts: plains.iter().map(|&x| cipher.encrypt(secret, x)).collect(),
        plaintext_model: PlaintextModel::PrintableHighByte,
    };
    let subset = KeySubset::range(0x1000, 0x1FFF).unwrap();
    let marked = marked_keys(&cipher, &scenario, &subset);
    assert!(marked.contains(&secret));
    let plan = plan_attack(&cipher, &scenario, subset, SearchPolicy::Grover, 0.9, 17).unwrap();
    let report = run_attack(&cipher, &scenario, &plan, 40).unwrap();
    let found = report.found_key.expect("marked set is reachable");
    assert!(scenario.key_consistent(&cipher, found));
}
