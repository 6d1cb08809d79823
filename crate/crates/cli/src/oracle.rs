//! Brute-force cross-checks of a construction's analytic claims.

use crate::format::emit;
use maskquorum::analysis::{
    check_masking, combinatorial_params, is_fair, load_lower_bounds, load_lp, DEFINITIONAL_MAX_N,
    LP_MAX_N, LP_MAX_QUORUMS,
};
use maskquorum::availability::{crash_prob_exact, fp_lower_bounds, EXACT_MAX_N};
use maskquorum::model::validate_explicit;
use maskquorum::{build, ConstructionSpec, ElementSet, Error, Rng};

const GRID: [f64; 4] = [0.1, 0.3, 0.5, 0.7];

struct Report {
    failures: usize,
}

impl Report {
    fn check(&mut self, name: &str, ok: bool, detail: String) -> anyhow::Result<()> {
        if ok {
            emit(&format!("ok       {name}: {detail}\n"))
        } else {
            self.failures += 1;
            emit(&format!("MISMATCH {name}: {detail}\n"))
        }
    }

    fn skip(&self, name: &str, why: impl std::fmt::Display) -> anyhow::Result<()> {
        emit(&format!("skipped  {name}: {why}\n"))
    }
}

/// Runs every applicable check and returns the number of mismatches.
pub fn run(spec: &ConstructionSpec, cap: u128) -> anyhow::Result<usize> {
    let handle = build(spec)?;
    let params = *handle.params();
    let n = handle.n();
    let mut report = Report { failures: 0 };

    let sys = handle.materialize(cap)?;
    let complete = handle.materializes_all_quorums();
    let what = if complete {
        "quorums"
    } else {
        "straight-path quorums"
    };
    report.check(
        "intersection",
        validate_explicit(&sys).is_ok(),
        format!("{} {what} pairwise intersect", sys.len()),
    )?;

    let mut rng = Rng::new(0);
    let sampled_ok = (0..200).all(|_| {
        let q = handle.sample_quorum(&mut rng);
        handle.live(&q).unwrap_or(false) && (!complete || sys.quorums().contains(&q))
    });
    report.check(
        "sampler",
        sampled_ok,
        "200 sampled quorums are live quorums".into(),
    )?;
    report.check(
        "extremes",
        handle.live(&ElementSet::full(n))? && !handle.live(&ElementSet::empty(n))?,
        "full universe live, empty universe dead".into(),
    )?;

    if complete {
        match combinatorial_params(&sys) {
            Ok(found) => report.check(
                "params",
                (found.c, found.i_min, found.a_min) == (params.c, params.i_min, params.a_min),
                format!(
                    "brute force (c, i_min, a_min) = ({}, {}, {}), analytic ({}, {}, {})",
                    found.c, found.i_min, found.a_min, params.c, params.i_min, params.a_min
                ),
            ),
            Err(e @ Error::Size { .. }) => report.skip("params", e),
            Err(e) => Err(e.into()),
        }?;
    } else {
        report.skip("params", "not every quorum can be listed")?;
    }

    if complete && n <= DEFINITIONAL_MAX_N && params.b >= 0 {
        let b = params.b as u64;
        let at = check_masking(&sys, b)?.holds;
        let above = check_masking(&sys, b + 1)?.holds;
        report.check(
            "masking",
            at && !above,
            format!("{b}-masking: {at}, {}-masking: {above}", b + 1),
        )?;
    } else {
        report.skip(
            "masking",
            format!("needs a complete system with n <= {DEFINITIONAL_MAX_N}"),
        )?;
    }

    if complete && n <= LP_MAX_N && sys.len() <= LP_MAX_QUORUMS {
        let (lp, _) = load_lp(&sys)?;
        report.check(
            "load",
            (lp - params.load).abs() <= 1e-6,
            format!("LP {lp:.9}, analytic {:.9}", params.load),
        )?;
        if let Some((s, _)) = is_fair(&sys) {
            let cn = s as f64 / n as f64;
            report.check(
                "fair load",
                (lp - cn).abs() <= 1e-6,
                format!("LP {lp:.9}, c/n {cn:.9}"),
            )?;
        }
        if params.b >= 0 {
            let lb = load_lower_bounds(params.n, params.b as u64, params.c)?;
            report.check(
                "load bound",
                lp + 1e-9 >= lb.general,
                format!("LP {lp:.9} >= {:.9}", lb.general),
            )?;
        }
    } else if !complete {
        report.skip("load", "not every quorum can be listed")?;
    } else {
        report.skip("load", "system too large for the LP")?;
    }

    if n <= EXACT_MAX_N {
        let mut agree = true;
        let mut above = true;
        for p in GRID {
            let exact = crash_prob_exact(&handle, p)?.value;
            if complete {
                agree &= (exact - crash_prob_exact(&sys, p)?.value).abs() <= 1e-12;
            }
            let lb = fp_lower_bounds(&params, p)?;
            above &= [Some(lb.p_mt), lb.p_c2f, lb.p_f]
                .into_iter()
                .flatten()
                .all(|bound| exact + 1e-12 >= bound);
        }
        if complete {
            report.check(
                "crash probability",
                agree,
                "handle and explicit system agree".into(),
            )?;
        }
        report.check(
            "lower bounds",
            above,
            "exact F_p above every applicable lower bound".into(),
        )?;
    } else {
        report.skip("crash probability", format!("n > {EXACT_MAX_N}"))?;
    }

    Ok(report.failures)
}
