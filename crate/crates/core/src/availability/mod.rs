//! Crash probability: exact enumeration, Monte Carlo estimation, and the
//! analytic bounds for each construction.

mod bounds;

pub use bounds::*;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{check_probability, fill_crash_set, ElementSet, LivePredicate, Rng};

/// Largest universe enumerated exactly.
pub const EXACT_MAX_N: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    Exact,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimateResult {
    pub value: f64,
    pub kind: EstimateKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// `profile[k]` is the number of crash sets of size `k` that leave no live
/// quorum. Enumerates all `2^n` alive sets.
pub fn crash_profile<P: LivePredicate + ?Sized>(system: &P) -> Result<Vec<u64>> {
    let n = system.universe_size();
    if n > EXACT_MAX_N {
        return Err(Error::size(
            "universe for exact enumeration (use Monte Carlo)",
            n as u128,
            EXACT_MAX_N as u128,
        ));
    }
    const CHUNK: u64 = 1 << 14;
    let total: u64 = 1 << n;
    let chunks = total.div_ceil(CHUNK);
    let profile = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut hist = vec![0u64; n + 1];
            let mut alive = ElementSet::empty(n);
            let end = ((chunk + 1) * CHUNK).min(total);
            for mask in chunk * CHUNK..end {
                alive.set_mask(mask);
                if !system.is_live(&alive) {
                    hist[n - mask.count_ones() as usize] += 1;
                }
            }
            hist
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(profile)
}

/// `sum_k profile[k] p^k (1-p)^(n-k)`.
pub fn crash_prob_from_profile(profile: &[u64], p: f64) -> f64 {
    let n = profile.len() - 1;
    let value: f64 = profile
        .iter()
        .enumerate()
        .filter(|(_, &count)| count > 0)
        .map(|(k, &count)| count as f64 * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32))
        .sum();
    value.clamp(0.0, 1.0)
}

fn exact_result(value: f64) -> EstimateResult {
    EstimateResult {
        value,
        kind: EstimateKind::Exact,
        trials: None,
        std_error: None,
        seed: None,
    }
}

/// Exact crash probability by enumerating every crash set (n <= 25).
pub fn crash_prob_exact<P: LivePredicate + ?Sized>(system: &P, p: f64) -> Result<EstimateResult> {
    check_probability(p, "p")?;
    let profile = crash_profile(system)?;
    Ok(exact_result(crash_prob_from_profile(&profile, p)))
}

/// Exact crash probability at several values of `p` from one enumeration.
pub fn crash_prob_exact_many<P: LivePredicate + ?Sized>(
    system: &P,
    ps: &[f64],
) -> Result<Vec<EstimateResult>> {
    for &p in ps {
        check_probability(p, "p")?;
    }
    let profile = crash_profile(system)?;
    Ok(ps
        .iter()
        .map(|&p| exact_result(crash_prob_from_profile(&profile, p)))
        .collect())
}

fn count_failures<P: LivePredicate + ?Sized>(system: &P, p: f64, trials: u64, seed: u64) -> u64 {
    let n = system.universe_size();
    (0..trials)
        .into_par_iter()
        .map_init(
            || ElementSet::empty(n),
            |crashed, t| {
                let mut rng = Rng::for_trial(seed, t);
                fill_crash_set(crashed, p, &mut rng);
                u64::from(!system.is_live(&crashed.complement()))
            },
        )
        .sum()
}

fn mc_result(failures: u64, trials: u64, seed: u64) -> EstimateResult {
    let value = failures as f64 / trials as f64;
    EstimateResult {
        value,
        kind: EstimateKind::MonteCarlo,
        trials: Some(trials),
        std_error: Some((value * (1.0 - value) / trials as f64).sqrt()),
        seed: Some(seed),
    }
}

fn check_mc_args(p: f64, trials: u64) -> Result<()> {
    check_probability(p, "p")?;
    if trials == 0 {
        return Err(Error::param("Monte Carlo needs at least one trial"));
    }
    Ok(())
}

/// Monte Carlo crash probability. Trial `t` draws its crash set from
/// `Rng::for_trial(seed, t)`, so the estimate does not depend on scheduling.
pub fn crash_prob_mc<P: LivePredicate + ?Sized>(
    system: &P,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<EstimateResult> {
    check_mc_args(p, trials)?;
    Ok(mc_result(
        count_failures(system, p, trials, seed),
        trials,
        seed,
    ))
}

/// As [`crash_prob_mc`], on a dedicated pool of `threads` workers.
pub fn crash_prob_mc_threads<P: LivePredicate + ?Sized>(
    system: &P,
    p: f64,
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<EstimateResult> {
    check_mc_args(p, trials)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::param(format!("cannot start worker pool: {e}")))?;
    let failures = pool.install(|| count_failures(system, p, trials, seed));
    Ok(mc_result(failures, trials, seed))
}
