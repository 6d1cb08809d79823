use serde_json::{json, Map, Value};

use maskquorum::analysis::{combinatorial_params, is_fair, load_lower_bounds, load_lp, LP_MAX_N};
use maskquorum::availability::{
    boostfpp_fp_upper, crash_prob_exact, crash_prob_mc, crash_prob_mc_threads, fp_lower_bounds,
    mgrid_fp_lower, mpath_fp_upper, rt_fp_recurrence, rt_fp_upper, threshold_g, EstimateResult,
    EXACT_MAX_N,
};
use maskquorum::composition::{compose_explicit_with_cap, composed_quorum_count};
use maskquorum::{build, ConstructionSpec, Error, QuorumSystemHandle, SystemParams};

use crate::format::{emit, print_json, prob};

pub fn params(spec: &ConstructionSpec) -> anyhow::Result<()> {
    let handle = build(spec)?;
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(handle.params())?
    ))
}

fn lower_bounds_json(params: &SystemParams) -> anyhow::Result<Value> {
    if params.b < 0 {
        return Ok(Value::Null);
    }
    let lb = load_lower_bounds(params.n, params.b as u64, params.c)?;
    Ok(json!({ "general": lb.general, "sqrt_form": lb.sqrt_form }))
}

pub fn load(spec: &ConstructionSpec, cap: u128) -> anyhow::Result<()> {
    let handle = build(spec)?;
    let params = handle.params();
    let count = handle.quorum_count();
    let mut out = Map::new();
    out.insert("spec".into(), serde_json::to_value(spec)?);
    if !handle.materializes_all_quorums() {
        out.insert("method".into(), json!("analytic"));
        out.insert("load".into(), json!(params.load));
        out.insert(
            "reason".into(),
            json!("load of the straight-path strategy, c/n; not every quorum can be listed"),
        );
    } else if count > cap || handle.n() > LP_MAX_N {
        out.insert("method".into(), json!("analytic"));
        out.insert("load".into(), json!(params.load));
        out.insert(
            "reason".into(),
            json!(format!(
                "{count} quorums over {} elements exceed the LP limits (cap {cap})",
                handle.n()
            )),
        );
    } else {
        let sys = handle.materialize(cap)?;
        let (value, _) = load_lp(&sys)?;
        out.insert("method".into(), json!("lp"));
        out.insert("load".into(), json!(value));
        out.insert("quorums".into(), json!(sys.len()));
        out.insert("fair".into(), json!(is_fair(&sys).is_some()));
        out.insert("analytic_load".into(), json!(params.load));
    }
    out.insert("lower_bounds".into(), lower_bounds_json(params)?);
    print_json(&Value::Object(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Auto,
    Exact,
    MonteCarlo,
}

pub struct FpOptions {
    pub p: f64,
    pub method: Method,
    pub trials: u64,
    pub seed: u64,
    pub bounds: bool,
    pub p_prime: Option<f64>,
    pub threads: Option<usize>,
}

fn estimate(handle: &QuorumSystemHandle, opts: &FpOptions) -> maskquorum::Result<EstimateResult> {
    let exact = match opts.method {
        Method::Exact => true,
        Method::MonteCarlo => false,
        Method::Auto => handle.n() <= EXACT_MAX_N,
    };
    if exact {
        return crash_prob_exact(handle, opts.p);
    }
    match opts.threads {
        Some(t) => crash_prob_mc_threads(handle, opts.p, opts.trials, opts.seed, t),
        None => crash_prob_mc(handle, opts.p, opts.trials, opts.seed),
    }
}

fn estimate_json(e: &EstimateResult) -> anyhow::Result<Value> {
    let mut v = serde_json::to_value(e)?;
    v["value"] = prob(e.value);
    if let Some(se) = e.std_error {
        v["std_error"] = prob(se);
    }
    Ok(v)
}

/// A bound, or the reason it does not apply.
fn bound_value(r: maskquorum::Result<f64>) -> anyhow::Result<Value> {
    match r {
        Ok(x) => Ok(prob(x)),
        Err(e @ (Error::Applicability(_) | Error::Parameter(_))) => {
            Ok(json!(format!("not applicable: {e}")))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn bounds_json(
    spec: &ConstructionSpec,
    params: &SystemParams,
    p: f64,
    p_prime: Option<f64>,
) -> anyhow::Result<Value> {
    let lb = fp_lower_bounds(params, p)?;
    let opt = |x: Option<f64>| x.map(prob).unwrap_or_else(|| json!("not applicable"));
    let mut out = Map::new();
    out.insert("lower_min_transversal".into(), prob(lb.p_mt));
    out.insert("lower_c_minus_2b".into(), opt(lb.p_c2f));
    out.insert("lower_b_plus_1".into(), opt(lb.p_f));
    match *spec {
        ConstructionSpec::MGrid { side, .. } => {
            out.insert("mgrid_lower".into(), bound_value(mgrid_fp_lower(side, p))?);
        }
        ConstructionSpec::Threshold { k, ell } => match threshold_g(k, ell, p) {
            Ok(g) => {
                out.insert("threshold_exact".into(), prob(g.exact));
                out.insert("threshold_lemma_upper".into(), prob(g.lemma_upper));
            }
            Err(e) => {
                out.insert("threshold".into(), bound_value(Err(e))?);
            }
        },
        ConstructionSpec::RT { k, ell, h } => {
            let h =
                u32::try_from(h).map_err(|_| Error::Parameter(format!("depth {h} too large")))?;
            out.insert(
                "rt_recurrence".into(),
                bound_value(rt_fp_recurrence(k, ell, h, p))?,
            );
            out.insert("rt_upper".into(), bound_value(rt_fp_upper(k, ell, h, p))?);
        }
        ConstructionSpec::BoostFPP { q, b } => match boostfpp_fp_upper(q, b, p) {
            Ok(bound) => {
                out.insert("boostfpp_upper".into(), prob(bound.paper_form));
                out.insert("boostfpp_upper_chernoff".into(), prob(bound.chernoff_form));
            }
            Err(e) => {
                out.insert("boostfpp_upper".into(), bound_value(Err(e))?);
            }
        },
        ConstructionSpec::MPath { side, b } => {
            let p_prime = p_prime.unwrap_or((p + 1.0 / 3.0) / 2.0);
            out.insert("p_prime".into(), json!(p_prime));
            out.insert(
                "mpath_upper".into(),
                bound_value(mpath_fp_upper(side, b, p, p_prime))?,
            );
        }
        ConstructionSpec::FPP { .. } | ConstructionSpec::Composed { .. } => {}
    }
    Ok(Value::Object(out))
}

pub fn fp(spec: &ConstructionSpec, opts: &FpOptions) -> anyhow::Result<()> {
    let handle = build(spec)?;
    let est = estimate(&handle, opts)?;
    let mut out = Map::new();
    out.insert("spec".into(), serde_json::to_value(spec)?);
    out.insert("n".into(), json!(handle.n()));
    out.insert("p".into(), json!(opts.p));
    out.insert("estimate".into(), estimate_json(&est)?);
    if opts.bounds {
        out.insert(
            "bounds".into(),
            bounds_json(spec, handle.params(), opts.p, opts.p_prime)?,
        );
    }
    print_json(&Value::Object(out))
}

fn explicit_check(
    outer: &QuorumSystemHandle,
    inner: &QuorumSystemHandle,
    params: &SystemParams,
    cap: u128,
) -> anyhow::Result<Value> {
    if !outer.materializes_all_quorums() || !inner.materializes_all_quorums() {
        return Ok(json!({ "skipped": "a component cannot list all its quorums" }));
    }
    let (o, i) = match (outer.materialize(cap), inner.materialize(cap)) {
        (Ok(o), Ok(i)) => (o, i),
        (Err(e), _) | (_, Err(e)) => return Ok(json!({ "skipped": e.to_string() })),
    };
    let count = composed_quorum_count(&o, &i);
    if count > cap {
        return Ok(json!({ "skipped": format!("{count} composed quorums exceed cap {cap}") }));
    }
    let sys = compose_explicit_with_cap(&o, &i, cap)?;
    match combinatorial_params(&sys) {
        Ok(found) => Ok(json!({
            "quorums": sys.len(),
            "c": found.c,
            "i_min": found.i_min,
            "a_min": found.a_min,
            "matches_params": (found.c, found.i_min, found.a_min) == (params.c, params.i_min, params.a_min),
        })),
        Err(e @ Error::Size { .. }) => {
            Ok(json!({ "quorums": sys.len(), "skipped": e.to_string() }))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn compose(
    outer: &ConstructionSpec,
    inner: &ConstructionSpec,
    cap: u128,
) -> anyhow::Result<()> {
    let spec = ConstructionSpec::Composed {
        outer: Box::new(outer.clone()),
        inner: Box::new(inner.clone()),
    };
    let handle = build(&spec)?;
    let (o, i) = (build(outer)?, build(inner)?);
    let params = *handle.params();
    let out = json!({
        "spec": spec,
        "params": params,
        "explicit": explicit_check(&o, &i, &params, cap)?,
    });
    print_json(&out)
}
