//! JSON and CSV rendering. Exact values are `"num/den"` strings.

use interlace_majorize::harness::CampaignReport;
use interlace_majorize::homotopy::{MonotoneVerdict, TrajectoryBundle};
use interlace_majorize::rational::{decimal_digits_for, format_rational, to_decimal};
use interlace_majorize::{
    Certificate, InterlaceVerdict, Interval, MajorizationVerdict, PolyPair, Rational, ResidueReport,
};
use serde_json::{json, Value};

use crate::instance::Instance;

pub fn rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rationals<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Value {
    Value::Array(values.into_iter().map(rational).collect())
}

pub fn interval(iv: &Interval) -> Value {
    json!([rational(iv.lo()), rational(iv.hi())])
}

/// Sorted keys, two-space indent, trailing newline.
pub fn canonical(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    out.push('\n');
    out
}

pub fn instance(inst: &Instance, pair: &PolyPair) -> Value {
    json!({
        "name": inst.name,
        "lambda": rationals(pair.lam().iter()),
        "mu": rationals(pair.mu().iter()),
    })
}

pub fn pair(pair: &PolyPair) -> Value {
    json!({
        "lambda": rationals(pair.lam().iter()),
        "mu": rationals(pair.mu().iter()),
    })
}

pub fn interlace(v: &InterlaceVerdict) -> Value {
    json!({
        "common_interlacer": v.has_common_interlacer,
        "first_crossing": v.first_crossing.map(|(i, j)| json!([i, j])),
        "pair_intervals": v.pair_intervals.iter().map(interval).collect::<Vec<_>>(),
        "properly_interlacing": v.properly_interlacing,
    })
}

pub fn majorization(v: &MajorizationVerdict) -> Value {
    json!({
        "holds": v.holds,
        "partial_sum_gaps": rationals(&v.partial_sum_gaps),
        "first_violation": v.first_violation,
        "sums_equal": v.sums_equal,
    })
}

pub fn residues(r: &ResidueReport) -> Value {
    json!({
        "direction": r.direction.as_str(),
        "residues": rationals(&r.residues),
        "partial_sums": rationals(&r.partial_sums),
        "total": rational(&r.total),
        "sums_equal": r.sums_equal,
    })
}

pub fn certificate(c: &Certificate) -> Value {
    json!({
        "kind": c.kind.as_str(),
        "witness_k": c.witness_k,
        "value": c.witness_value().map(rational),
        "boundary": c.boundary,
        "residues": residues(&c.detail),
    })
}

pub fn verdict(k: usize, v: &MonotoneVerdict) -> Value {
    match v {
        MonotoneVerdict::Increasing => json!({"k": k, "verdict": "Increasing"}),
        MonotoneVerdict::Nondecreasing => json!({"k": k, "verdict": "Nondecreasing"}),
        MonotoneVerdict::ViolatedAt { from, to } => {
            json!({"k": k, "verdict": "ViolatedAt", "from": rational(from), "to": rational(to)})
        }
    }
}

/// Header `t,lambda_1..lambda_n,S_1..S_n`; each value is the midpoint of its
/// enclosure, printed with enough decimals to stay within `tol`.
pub fn trajectory_csv(bundle: &TrajectoryBundle) -> String {
    let n = bundle.roots_at.first().map_or(0, Vec::len);
    let digits = decimal_digits_for(&bundle.tol);
    let mut header = vec!["t".to_string()];
    header.extend((1..=n).map(|i| format!("lambda_{i}")));
    header.extend((1..=n).map(|k| format!("S_{k}")));
    let mut out = header.join(",");
    out.push('\n');
    for ((t, roots), sums) in bundle.t_grid.iter().zip(&bundle.roots_at).zip(&bundle.partial_sums) {
        let mut row = vec![to_decimal(t, digits)];
        row.extend(roots.iter().map(|r| to_decimal(&r.midpoint(), digits)));
        row.extend(sums.iter().map(|s| to_decimal(&s.midpoint(), digits)));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn campaign(report: &CampaignReport, grid: Option<usize>) -> Value {
    let counterexamples: Vec<Value> = report
        .counterexamples
        .iter()
        .map(|c| {
            json!({
                "trial": c.trial,
                "lambda": rationals(c.pair.lam().iter()),
                "mu": rationals(c.pair.mu().iter()),
                "detail": c.detail,
                "certificate": c.certificate.as_ref().map(certificate),
            })
        })
        .collect();
    json!({
        "theorem": report.theorem.as_str(),
        "rng": report.rng,
        "seed": report.seed,
        "degree": report.degree,
        "trials": report.trials,
        "grid": grid,
        "applicable": report.applicable,
        "vacuous": report.vacuous,
        "counterexamples": counterexamples,
        "statistics": report.statistics,
        "runtime_ms": report.runtime.as_millis() as u64,
    })
}
