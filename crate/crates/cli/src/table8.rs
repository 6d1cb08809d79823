//! The four-way comparison at a fixed universe size and crash probability.

use serde::Serialize;

use maskquorum::availability::{boostfpp_fp_upper, mgrid_fp_lower, mpath_fp_upper, rt_fp_upper};
use maskquorum::{build, ConstructionSpec, Error, SystemParams};

use crate::format::{fmt_g, sig6};

pub const NOTES: [&str; 2] = [
    "M-Path f is a_min - 1 = side - r = 28 at side 32, b = 7; the published table prints 29",
    "boostFPP fp_value uses the rounded exponent (q+1)e^(-b(1-4p)^2/2); the unrounded Chernoff form is fp_value_chernoff in JSON",
];

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub system: String,
    pub n: u64,
    pub b: i64,
    pub f: u64,
    pub load: f64,
    pub fp_kind: &'static str,
    pub fp_value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fp_value_chernoff: Option<f64>,
    pub paper_value: &'static str,
}

fn row(
    system: String,
    params: &SystemParams,
    fp_kind: &'static str,
    fp_value: f64,
    paper_value: &'static str,
) -> Row {
    Row {
        system,
        n: params.n,
        b: params.b,
        f: params.f,
        load: sig6(params.load),
        fp_kind,
        fp_value: sig6(fp_value),
        fp_value_chernoff: None,
        paper_value,
    }
}

/// `n` must be a power of 4 so that the grid side and the RT depth are whole.
pub fn rows(p: f64, n: u64, p_prime: f64) -> anyhow::Result<Vec<Row>> {
    let h = (1..32u32)
        .find(|&h| 4u64.checked_pow(h) == Some(n))
        .ok_or_else(|| {
            Error::Parameter(format!(
                "n must be a power of 4 (n = 4^h, side = 2^h), got {n}"
            ))
        })?;
    let side = 1u64 << h;
    let params =
        |spec: &ConstructionSpec| -> anyhow::Result<SystemParams> { Ok(*build(spec)?.params()) };

    let grid = params(&ConstructionSpec::MGrid { side, b: 15 })?;
    let rt = params(&ConstructionSpec::RT {
        k: 4,
        ell: 3,
        h: h as u64,
    })?;
    let boost = params(&ConstructionSpec::BoostFPP { q: 3, b: 19 })?;
    let path = params(&ConstructionSpec::MPath { side, b: 7 })?;
    let boost_fp = boostfpp_fp_upper(3, 19, p)?;

    let mut boost_row = row(
        "boostFPP(3,19)".into(),
        &boost,
        "upper",
        boost_fp.paper_form,
        "0.372",
    );
    boost_row.fp_value_chernoff = Some(sig6(boost_fp.chernoff_form));
    Ok(vec![
        row(
            format!("M-Grid({side},15)"),
            &grid,
            "lower",
            mgrid_fp_lower(side, p)?,
            "0.638",
        ),
        row(
            format!("RT(4,3,{h})"),
            &rt,
            "upper",
            rt_fp_upper(4, 3, h, p)?,
            "0.0001",
        ),
        boost_row,
        row(
            format!("M-Path({side},7)"),
            &path,
            "upper",
            mpath_fp_upper(side, 7, p, p_prime)?,
            "0.001",
        ),
    ])
}

pub fn to_csv(rows: &[Row]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "system",
        "n",
        "b",
        "f",
        "load",
        "fp_kind",
        "fp_value",
        "paper_value",
    ])?;
    for r in rows {
        w.write_record([
            r.system.clone(),
            r.n.to_string(),
            r.b.to_string(),
            r.f.to_string(),
            fmt_g(r.load),
            r.fp_kind.to_string(),
            fmt_g(r.fp_value),
            r.paper_value.to_string(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn to_json(rows: &[Row], p: f64, n: u64, p_prime: f64) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(&serde_json::json!({
        "p": p,
        "n": n,
        "p_prime": p_prime,
        "rows": rows,
        "notes": NOTES,
    }))?)
}
