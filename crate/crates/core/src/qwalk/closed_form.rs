//! Closed-form amplitudes of the Hadamard walk started in `|0> (x) |0>`.
//!
//! A coin path is a sign sequence; its weight picks up `-1` for every
//! adjacent `|1>|1>` pair under the Hadamard coin, and all weights share the
//! factor `2^(-n/2)`. Grouping the `l = (n - i)/2` left-steps of a path into
//! `b` maximal blocks among the `r = (n + i)/2` right-steps counts the paths
//! of each sign exactly:
//!
//! * amplitude on coin |0> (path ends in a right-step):
//!   `u(n, i) = 2^(-n/2) * sum_b C(l-1, b-1) C(r, b) (-1)^(l-b)`
//! * amplitude on coin |1> (path ends in a left-step):
//!   `v(n, i) = 2^(-n/2) * sum_b C(l-1, b-1) C(r, b-1) (-1)^(l-b)`
//!
//! Both vanish when `n + i` is odd or `|i| > n`, and the direct simulator
//! (which is the source of truth for these expressions) confirms them
//! term-for-term; see the closed-form agreement tests.

/// Largest supported step count; binomials stay exact in `u128` well past
/// this, the cap just keeps the sums obviously safe.
pub const MAX_CLOSED_FORM_STEPS: u32 = 120;

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        // Partial products are themselves binomials, so the division is exact.
        acc = acc * (n - k + i) as u128 / i as u128;
    }
    acc
}

/// Coin-|0> and coin-|1> amplitudes at `position` after `n` steps from
/// `|0> (x) |0>`. Real-valued for this start.
pub fn closed_form_amplitudes(n: u32, position: i64) -> (f64, f64) {
    assert!(
        n <= MAX_CLOSED_FORM_STEPS,
        "closed form supports at most {MAX_CLOSED_FORM_STEPS} steps"
    );
    let steps = n as i64;
    if position.abs() > steps || (steps + position) % 2 != 0 {
        return (0.0, 0.0);
    }
    let norm = 2f64.powi(-(n as i32)).sqrt();
    let left = ((steps - position) / 2) as u64;
    let right = ((steps + position) / 2) as u64;
    if left == 0 {
        // All right-steps: a single all-|0> path.
        return (norm, 0.0);
    }
    let mut u = 0.0f64;
    let mut v = 0.0f64;
    for blocks in 1..=left {
        let ways = binomial(left - 1, blocks - 1) as f64;
        if ways == 0.0 {
            continue;
        }
        let sign = if (left - blocks) % 2 == 0 { 1.0 } else { -1.0 };
        u += sign * ways * binomial(right, blocks) as f64;
        v += sign * ways * binomial(right, blocks - 1) as f64;
    }
    (u * norm, v * norm)
}

/// `p(S_n = position)` for the `|0> (x) |0>` start: zero off the reachable
/// lattice, `1/2^n` at the extremes, `u^2 + v^2` elsewhere.
pub fn closed_form_distribution(n: u32, position: i64) -> f64 {
    let steps = n as i64;
    if position.abs() > steps || (steps + position) % 2 != 0 {
        return 0.0;
    }
    if position.abs() == steps {
        return 2f64.powi(-(n as i32));
    }
    let (u, v) = closed_form_amplitudes(n, position);
    u * u + v * v
}
