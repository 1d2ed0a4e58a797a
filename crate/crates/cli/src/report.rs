use clap::ValueEnum;
use serde_json::{json, Value};

use currentlab_core::affine::{AffineWeight, GramReport, ModuleLimits};
use currentlab_core::currentalg::Flavor;
use currentlab_core::liealg::MatrixLieAlgebra;
use currentlab_core::looprestrict::{self, Direction, RestrictError};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

pub struct Outcome {
    pub ok: bool,
    pub report: Value,
}

impl Outcome {
    pub fn new(ok: bool, report: Value) -> Self {
        Outcome { ok, report }
    }

    pub fn ok(report: Value) -> Self {
        Outcome { ok: true, report }
    }
}

pub fn algebra_info(alg: &MatrixLieAlgebra) -> Value {
    let n = alg.dim();
    let mut f = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for (c, v) in alg.bracket_terms(a, b) {
                f.push(json!({ "a": alg.label(a), "b": alg.label(b), "c": alg.label(*c), "value": v }));
            }
        }
    }
    let d = alg.d_tensor_full();
    let mut d_entries = Vec::new();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                let v = d.get(a, b, c);
                if !v.is_zero() {
                    d_entries.push(json!({ "a": alg.label(a), "b": alg.label(b), "c": alg.label(c), "value": v }));
                }
            }
        }
    }
    let inertia = alg.kappa_inertia().map(|i| json!([i.positive, i.zero, i.negative]));
    json!({
        "algebra": alg.name(),
        "dim": n,
        "rep_size": alg.rep_size(),
        "labels": alg.labels(),
        "kappa_normalization": "kappa^{ab} = tr(T^a T^b) in the defining representation",
        "kappa": alg.kappa(),
        "kappa_inertia": inertia,
        "structure_constants": f,
        "d_tensor": d_entries,
        "d_nonzero_components": d.nonzero_count(),
        "warnings": alg.warnings(),
    })
}

/// Report for one restricted bracket and whether its contract held: the
/// loop part equals `f^{ab}_c` and the extension part its closed form.
#[allow(clippy::too_many_arguments)]
pub fn restrict(
    alg: &MatrixLieAlgebra,
    flavor: &Flavor,
    flavor_name: &str,
    a: usize,
    b: usize,
    m: i64,
    n: i64,
    e: &Direction,
) -> Result<(Value, bool), RestrictError> {
    let r = looprestrict::restricted_bracket(a, b, m, n, e, flavor, alg)?;
    let expected = looprestrict::expected_extension(a, b, m, n, e, flavor, alg);
    let loop_ok = r
        .loop_part
        .iter()
        .map(|(c, v)| (*c, v.clone()))
        .eq(alg.bracket_terms(a, b).iter().cloned());
    let ok = loop_ok && r.extension_part == expected;
    let loop_part: Vec<Value> = r
        .loop_part
        .iter()
        .map(|(c, v)| json!({ "color": alg.label(*c), "coeff": v }))
        .collect();
    let body = json!({
        "algebra": alg.name(),
        "flavor": flavor_name,
        "e": e.vector().0,
        "a": alg.label(a),
        "b": alg.label(b),
        "m": m,
        "n": n,
        "loop_mode": r.loop_mode,
        "loop_part": loop_part,
        "extension_part": r.extension_part.display_with(alg).to_string(),
        "extension_zero": r.matches_loop_algebra,
        "expected_extension": expected.display_with(alg).to_string(),
        "central_element": looprestrict::central_element(e).display_with(alg).to_string(),
        "contract_holds": ok,
    });
    Ok((body, ok))
}

pub fn gram(w: &AffineWeight, grade: u32, limits: &ModuleLimits, blocks: &[GramReport]) -> Value {
    let blocks: Vec<Value> = blocks
        .iter()
        .map(|b| {
            json!({
                "grade": b.grade,
                "charge": b.charge,
                "basis": b.basis.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                "matrix": b.matrix,
                "inertia": [b.inertia.positive, b.inertia.zero, b.inertia.negative],
                "null_basis": b.null_basis,
            })
        })
        .collect();
    json!({
        "k": w.k,
        "h": w.h,
        "grade": grade,
        "max_f0": limits.max_f0,
        "blocks": blocks,
    })
}

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("serializable"),
        Format::Table => table(report),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn table(report: &Value) -> String {
    let mut out = String::new();
    if let Some(rows) = report.get("rows").and_then(Value::as_array) {
        out.push_str(&format!(
            "{:>8} {:>8} {:>5} {:>18} {:>9} {:>12}  {}\n",
            "k", "h", "grade", "verdict", "all_null", "norm", "witness"
        ));
        for r in rows {
            let wit = &r["witness"];
            let vector = wit["vector"]
                .as_array()
                .map(|terms| {
                    terms
                        .iter()
                        .map(|t| format!("{}·{}", scalar(&t["coeff"]), scalar(&t["monomial"])))
                        .collect::<Vec<_>>()
                        .join(" + ")
                })
                .unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "{:>8} {:>8} {:>5} {:>18} {:>9} {:>12}  {}\n",
                scalar(&r["k"]),
                scalar(&r["h"]),
                scalar(&r["max_grade"]),
                scalar(&r["verdict"]),
                scalar(&r["all_null"]),
                scalar(&wit["norm"]),
                vector
            ));
        }
        return out;
    }
    flatten("", report, &mut out);
    out
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, val, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            for (i, val) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), val, out);
            }
        }
        Value::Array(_) => out.push_str(&format!("{prefix}: {}\n", v)),
        other => out.push_str(&format!("{prefix}: {}\n", scalar(other))),
    }
}
