//! Closed-form bounds on the crash probability.

use serde::Serialize;

use crate::combinatorics::{binomial, binomial_f64, ceil_sqrt};
use crate::error::{Error, Result};
use crate::model::{check_probability, SystemParams};

fn clamp01(x: f64) -> f64 {
    if x.is_nan() {
        1.0
    } else {
        x.clamp(0.0, 1.0)
    }
}

fn pow_u64(p: f64, e: u64) -> f64 {
    if e <= i32::MAX as u64 {
        p.powi(e as i32)
    } else {
        p.powf(e as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FpLowerBounds {
    /// `p^a_min`: every element of a smallest transversal crashes.
    pub p_mt: f64,
    /// `p^(c - 2b)`; `None` when the system masks nothing.
    pub p_c2f: Option<f64>,
    /// `p^(b + 1)`; `None` unless `a_min <= (i_min + 1) / 2`.
    pub p_f: Option<f64>,
}

pub fn fp_lower_bounds(params: &SystemParams, p: f64) -> Result<FpLowerBounds> {
    check_probability(p, "p")?;
    let p_c2f = (params.b >= 0).then(|| pow_u64(p, params.c - 2 * params.b as u64));
    let p_f = (params.b >= 0 && 2 * params.a_min <= params.i_min + 1)
        .then(|| pow_u64(p, params.b as u64 + 1));
    Ok(FpLowerBounds {
        p_mt: pow_u64(p, params.a_min),
        p_c2f,
        p_f,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdG {
    /// Probability that at least `k - ell + 1` of `k` elements crash.
    pub exact: f64,
    /// `C(k, ell - 1) p^(k - ell + 1)`, clamped to 1.
    pub lemma_upper: f64,
}

fn check_threshold(k: u64, ell: u64) -> Result<()> {
    if !(k > ell && 2 * ell > k) {
        return Err(Error::param(format!(
            "threshold needs k > ell > k/2, got k = {k}, ell = {ell}"
        )));
    }
    Ok(())
}

fn threshold_crash(k: u64, ell: u64, p: f64) -> f64 {
    let d = k - ell + 1;
    let sum: f64 = (d..=k)
        .map(|j| binomial_f64(k, j) * pow_u64(p, j) * pow_u64(1.0 - p, k - j))
        .sum();
    clamp01(sum)
}

pub fn threshold_g(k: u64, ell: u64, p: f64) -> Result<ThresholdG> {
    check_threshold(k, ell)?;
    check_probability(p, "p")?;
    Ok(ThresholdG {
        exact: threshold_crash(k, ell, p),
        lemma_upper: clamp01(binomial_f64(k, ell - 1) * pow_u64(p, k - ell + 1)),
    })
}

/// `F(0) = p`, `F(h) = g(F(h - 1))`.
pub fn rt_fp_recurrence(k: u64, ell: u64, h: u32, p: f64) -> Result<f64> {
    check_threshold(k, ell)?;
    check_probability(p, "p")?;
    Ok((0..h).fold(p, |f, _| threshold_crash(k, ell, f)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalProbability {
    pub value: f64,
    /// Whether the fixed point lies strictly below 1/2.
    pub below_half: bool,
}

/// Root of `g(p) = p` in `(0, 1)` by bisection.
pub fn rt_critical_probability(k: u64, ell: u64, tol: f64) -> Result<CriticalProbability> {
    check_threshold(k, ell)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::param("tolerance must be positive"));
    }
    let h = |p: f64| threshold_crash(k, ell, p) - p;
    let (mut lo, mut hi) = (1e-6, 1.0 - 1e-6);
    if !(h(lo) < 0.0 && h(hi) > 0.0) {
        return Err(Error::Numerical(format!(
            "g(p) - p does not change sign on [{lo}, {hi}] for k = {k}, ell = {ell}"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let value = 0.5 * (lo + hi);
    Ok(CriticalProbability {
        value,
        below_half: value + tol < 0.5,
    })
}

/// `[C(k, ell - 1) p]^((k - ell + 1)^h)`, or 1 once the base reaches 1.
pub fn rt_fp_upper(k: u64, ell: u64, h: u32, p: f64) -> Result<f64> {
    check_threshold(k, ell)?;
    check_probability(p, "p")?;
    let base = binomial_f64(k, ell - 1) * p;
    if base >= 1.0 {
        return Ok(1.0);
    }
    let exponent = ((k - ell + 1) as f64).powi(h as i32);
    Ok(clamp01(base.powf(exponent)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoostFppBound {
    /// `(q + 1) e^(-b (1 - 4p)^2 / 2)`.
    pub paper_form: f64,
    /// `(q + 1) e^(-2 (4b + 1) gamma^2)` with `gamma = (b + 1)/(4b + 1) - p`.
    pub chernoff_form: f64,
}

pub fn boostfpp_fp_upper(q: u64, b: u64, p: f64) -> Result<BoostFppBound> {
    check_probability(p, "p")?;
    if p >= 0.25 {
        return Err(Error::Applicability(format!(
            "boostFPP bound needs p < 1/4, got {p}"
        )));
    }
    let lines = (q + 1) as f64;
    let bf = b as f64;
    let rounded = lines * (-bf * (1.0 - 4.0 * p).powi(2) / 2.0).exp();
    let width = 4.0 * bf + 1.0;
    let gamma = (bf + 1.0) / width - p;
    let chernoff = lines * (-2.0 * width * gamma * gamma).exp();
    Ok(BoostFppBound {
        paper_form: clamp01(rounded),
        chernoff_form: clamp01(chernoff),
    })
}

/// Probability that every row holds a crash: `(1 - (1 - p)^side)^side`.
pub fn mgrid_fp_lower(side: u64, p: f64) -> Result<f64> {
    check_probability(p, "p")?;
    Ok(clamp01(pow_u64(1.0 - pow_u64(1.0 - p, side), side)))
}

/// Upper bound on the probability of no open left-right path:
/// `side (3p)^side / (1 - 3p)`.
pub fn mpath_lr_failure_upper(side: u64, p: f64) -> Result<f64> {
    check_probability(p, "p")?;
    if 3.0 * p >= 1.0 {
        return Err(Error::Applicability(format!(
            "path counting bound needs p < 1/3, got {p}"
        )));
    }
    Ok(clamp01(
        side as f64 * pow_u64(3.0 * p, side) / (1.0 - 3.0 * p),
    ))
}

/// `((1 - p) / (p' - p))^r * tail`: the failure bound for the depth-`r`
/// interior of an increasing event whose failure at `p'` is at most `tail`.
pub fn interior_bound(r: u64, p: f64, p_prime: f64, tail: f64) -> Result<f64> {
    check_probability(p, "p")?;
    check_probability(p_prime, "p_prime")?;
    check_probability(tail, "tail")?;
    if p >= p_prime {
        return Err(Error::param(format!(
            "interior bound needs p < p_prime, got {p} >= {p_prime}"
        )));
    }
    if r == 0 {
        return Ok(tail);
    }
    let multiplier = (1.0 - p) / (p_prime - p);
    Ok(clamp01(pow_u64(multiplier, r) * tail))
}

pub fn mpath_fp_upper(side: u64, b: u64, p: f64, p_prime: f64) -> Result<f64> {
    check_probability(p, "p")?;
    check_probability(p_prime, "p_prime")?;
    if !(p < p_prime && 3.0 * p_prime < 1.0) {
        return Err(Error::Applicability(format!(
            "M-Path bound needs p < p_prime < 1/3, got p = {p}, p_prime = {p_prime}"
        )));
    }
    let r = ceil_sqrt(2 * b + 1);
    let tail = mpath_lr_failure_upper(side, p_prime)?;
    Ok(clamp01(2.0 * interior_bound(r - 1, p, p_prime, tail)?))
}

/// `C(k, d + i) <= C(k - d, i) C(k, d)`, in exact integers.
pub fn binom_ratio_check(k: u64, d: u64, i: u64) -> Result<bool> {
    if d.checked_add(i).is_none_or(|s| s > k) {
        return Err(Error::param(format!(
            "need d + i <= k, got k = {k}, d = {d}, i = {i}"
        )));
    }
    let lhs = binomial(k, d + i);
    let rhs = binomial(k - d, i).checked_mul(binomial(k, d));
    Ok(match rhs {
        Some(rhs) if lhs != u128::MAX => lhs <= rhs,
        // overflow: fall back to logarithms
        _ => {
            let ln = |n, m| binomial_f64(n, m).ln();
            ln(k, d + i) <= ln(k - d, i) + ln(k, d) + 1e-12
        }
    })
}
