//! Deterministic report serialization.
//!
//! Reports must be byte-identical across runs of the same request: objects
//! keep their keys sorted (BTreeMap) and every float is printed with 17
//! significant digits, so the emitter is a small hand-rolled JSON writer
//! rather than a general serializer.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::asymptotics::AsymptoticsReport;
use crate::signed_log::SignedLogValue;
use crate::topology::IndexReport;
use crate::zero_modes::ZeroModeReport;

#[derive(Debug, Clone)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Array(Vec<Json>),
    Object(BTreeMap<String, Json>),
}

impl Json {
    pub fn object(entries: Vec<(&str, Json)>) -> Json {
        Json::Object(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn write(&self, out: &mut String, indent: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => out.push_str(&i.to_string()),
            Json::Float(x) => out.push_str(&format_float(*x)),
            Json::Str(s) => {
                out.push('"');
                for ch in s.chars() {
                    match ch {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        '\t' => out.push_str("\\t"),
                        '\r' => out.push_str("\\r"),
                        c if (c as u32) < 0x20 => {
                            out.push_str(&format!("\\u{:04x}", c as u32))
                        }
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Json::Array(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&" ".repeat(indent + 2));
                    item.write(out, indent + 2);
                }
                out.push('\n');
                out.push_str(&" ".repeat(indent));
                out.push(']');
            }
            Json::Object(map) => {
                if map.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (i, (k, v)) in map.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&" ".repeat(indent + 2));
                    out.push('"');
                    out.push_str(k);
                    out.push_str("\": ");
                    v.write(out, indent + 2);
                }
                out.push('\n');
                out.push_str(&" ".repeat(indent));
                out.push('}');
            }
        }
    }

    pub fn to_string_pretty(&self) -> String {
        let mut s = String::new();
        self.write(&mut s, 0);
        s.push('\n');
        s
    }
}

/// 17 significant digits; enough to round-trip any f64 and deterministic.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "null".to_string();
    }
    if x.is_infinite() {
        // JSON has no infinities; log-magnitudes of exact zeros land here
        return if x > 0.0 { "1e999".to_string() } else { "-1e999".to_string() };
    }
    format!("{:.16e}", x)
}

pub fn json_complex(z: Complex64) -> Json {
    Json::object(vec![("re", Json::Float(z.re)), ("im", Json::Float(z.im))])
}

pub fn json_signed_log(v: &SignedLogValue) -> Json {
    Json::object(vec![
        ("log_abs", Json::Float(v.log_abs)),
        ("phase_re", Json::Float(v.phase.re)),
        ("phase_im", Json::Float(v.phase.im)),
    ])
}

pub fn json_asymptotics(r: &AsymptoticsReport) -> Json {
    let ratio_trace = Json::Array(
        r.ratio_trace
            .iter()
            .map(|(n, e)| {
                Json::object(vec![
                    ("n", Json::Int(*n as i64)),
                    ("ratio", json_signed_log(e)),
                ])
            })
            .collect(),
    );
    let prefactors = Json::Array(
        r.modified_prefactors
            .iter()
            .map(|(n, p)| {
                Json::object(vec![
                    ("n", Json::Int(*n as i64)),
                    ("prefactor", json_signed_log(p)),
                ])
            })
            .collect(),
    );
    let t_trace = Json::Array(
        r.t_trace
            .iter()
            .map(|(n, t)| {
                Json::object(vec![("n", Json::Int(*n as i64)), ("t", json_complex(*t))])
            })
            .collect(),
    );
    Json::object(vec![
        ("G", json_signed_log(&r.g)),
        ("winding_det", Json::Int(r.winding_det)),
        ("E_class", Json::Str(r.e_class.as_str().to_string())),
        ("E_estimate", json_complex(r.e_estimate)),
        ("tail_ratio", Json::Float(r.tail_ratio)),
        ("ratio_trace", ratio_trace),
        ("modified_prefactors", prefactors),
        (
            "E_tilde_estimate",
            r.e_tilde_estimate.map(json_complex).unwrap_or(Json::Null),
        ),
        (
            "modified_tail_deviation",
            r.modified_tail_deviation.map(Json::Float).unwrap_or(Json::Null),
        ),
        ("t_trace", t_trace),
    ])
}

pub fn json_topology(r: &IndexReport) -> Json {
    Json::object(vec![
        ("class", Json::Str(r.class.tag.as_str().to_string())),
        (
            "I_D",
            r.i_d.map(|v| Json::Int(v as i64)).unwrap_or(Json::Null),
        ),
        (
            "I_winding",
            r.i_winding.map(Json::Int).unwrap_or(Json::Null),
        ),
        (
            "predicted_pairs",
            r.predicted_pairs
                .map(|v| Json::Int(v as i64))
                .unwrap_or(Json::Null),
        ),
    ])
}

pub fn json_zero_modes(r: &ZeroModeReport) -> Json {
    let eps = Json::Array(
        r.n_values
            .iter()
            .zip(r.epsilons.iter())
            .zip(r.circulant_gaps.iter())
            .map(|((n, row), gap)| {
                Json::object(vec![
                    ("n", Json::Int(*n as i64)),
                    (
                        "eps",
                        Json::Array(row.iter().map(|&e| Json::Float(e)).collect()),
                    ),
                    ("gap_circulant", Json::Float(*gap)),
                ])
            })
            .collect(),
    );
    Json::object(vec![
        ("scan", eps),
        ("pair_count", Json::Int(r.pair_count as i64)),
        (
            "fitted_rate",
            r.fitted_rate.map(Json::Float).unwrap_or(Json::Null),
        ),
        (
            "coeff_decay_rate",
            r.coeff_decay_rate.map(Json::Float).unwrap_or(Json::Null),
        ),
        ("root_gap", r.root_gap.map(Json::Float).unwrap_or(Json::Null)),
        (
            "wavefunction",
            r.wavefunction
                .as_ref()
                .map(|w| Json::Array(w.iter().map(|z| json_complex(*z)).collect()))
                .unwrap_or(Json::Null),
        ),
    ])
}

/// CSV of an asymptotics scan:
/// `n, log_abs_detTn, phase, ratio_re, ratio_im, prefactor_log_abs, t_n_re, t_n_im`.
/// `phase` is the argument of the determinant phase in radians; columns that
/// were not computed print `nan`.
pub fn csv_asymptotics(r: &AsymptoticsReport) -> String {
    let mut out =
        String::from("n,log_abs_detTn,phase,ratio_re,ratio_im,prefactor_log_abs,t_n_re,t_n_im\n");
    for (i, (n, e_n)) in r.ratio_trace.iter().enumerate() {
        let det = e_n.mul(&r.g.powi(*n as i64));
        let ratio = e_n.value();
        let pref = r.modified_prefactors.iter().find(|(m, _)| m == n);
        let t = r.t_trace.iter().find(|(m, _)| m == n);
        let _ = i;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            n,
            format_float(det.log_abs),
            format_float(det.phase.arg()),
            format_float(ratio.re),
            format_float(ratio.im),
            pref.map(|(_, p)| format_float(p.log_abs)).unwrap_or_else(|| "nan".into()),
            t.map(|(_, v)| format_float(v.re)).unwrap_or_else(|| "nan".into()),
            t.map(|(_, v)| format_float(v.im)).unwrap_or_else(|| "nan".into()),
        ));
    }
    out
}

/// CSV of a zero-mode scan: `n, eps_1, …, eps_K, gap_circulant`.
pub fn csv_zero_modes(r: &ZeroModeReport) -> String {
    let k = r.epsilons.iter().map(|row| row.len()).max().unwrap_or(0);
    let mut header = String::from("n");
    for i in 1..=k {
        header.push_str(&format!(",eps_{i}"));
    }
    header.push_str(",gap_circulant\n");
    let mut out = header;
    for ((n, row), gap) in r
        .n_values
        .iter()
        .zip(r.epsilons.iter())
        .zip(r.circulant_gaps.iter())
    {
        out.push_str(&n.to_string());
        for i in 0..k {
            out.push(',');
            out.push_str(
                &row.get(i)
                    .map(|&e| format_float(e))
                    .unwrap_or_else(|| "nan".into()),
            );
        }
        out.push(',');
        out.push_str(&format_float(*gap));
        out.push('\n');
    }
    out
}
