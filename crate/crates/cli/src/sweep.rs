//! Degree-threshold sweeps over fixed instance lists per family.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use vcchrom::hypergraph::{neighborhood_paired, paired_vc_dimension, PairedVcOptions};
use vcchrom::io::FORMAT_VERSION;
use vcchrom::rational::{self, Rational};
use vcchrom::registry::Registry;
use vcchrom::solvers::{chromatic_number_exact, greedy_clique};
use vcchrom::{graph, Error, Graph};

use crate::{csv_text, CliError};

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub format_version: u32,
    #[serde(with = "rational::serde_rational")]
    pub c: Rational,
    pub instance: String,
    pub n: Option<usize>,
    /// Weighted minimum degree for weighted graphs, `min_degree / n` otherwise.
    #[serde(with = "rational::serde_rational::option")]
    pub min_degree_ratio: Option<Rational>,
    pub chi: String,
    /// Largest of a greedy clique and the exact chromatic number of the
    /// sphere part, when that part is labeled.
    pub chi_lower: String,
    pub paired_vc: String,
    pub error: String,
}

struct Instance {
    id: String,
    generator: &'static str,
    params: Value,
}

fn inst(id: String, generator: &'static str, params: Value) -> Instance {
    Instance {
        id,
        generator,
        params,
    }
}

fn instances(family: &str) -> Result<Vec<Instance>, CliError> {
    let mut out = Vec::new();
    match family {
        "kneser" => {
            for n in 1..=3usize {
                for k in 0..=3usize {
                    if vcchrom::constructions::binomial(2 * n + k, n) <= 64 {
                        out.push(inst(format!("kneser-n{n}-k{k}"), "kneser", json!({"n": n, "k": k})));
                    }
                }
            }
        }
        "hajnal" => {
            for (k, n, l) in [(1, 1, 3), (1, 1, 6), (1, 2, 5), (2, 1, 4), (1, 2, 10)] {
                out.push(inst(format!("hajnal-k{k}-n{n}-l{l}"), "hajnal", json!({"k": k, "n": n, "l": l})));
            }
        }
        "zykov" => {
            for k in 1..=4 {
                out.push(inst(format!("zykov-k{k}"), "zykov", json!({"k": k})));
            }
        }
        "borsuk" => {
            for (pts, eps) in [(21, "1/20"), (31, "1/30"), (61, "1/60")] {
                out.push(inst(
                    format!("borsuk-p{pts}"),
                    "borsuk",
                    json!({"d": 1, "eps_pi": eps, "num_points": pts}),
                ));
            }
        }
        "borsuk-hajnal" => {
            for (pts, eps, delta) in [(21, "1/20", "1/10"), (31, "1/30", "1/15"), (61, "1/60", "1/30")] {
                out.push(inst(
                    format!("borsuk-hajnal-p{pts}"),
                    "borsuk-hajnal",
                    json!({"d": 1, "eps_pi": eps, "delta_pi": delta, "num_points": pts}),
                ));
            }
        }
        "bicap" => {
            for (pts, eps, delta) in [(21, "1/20", "1/30"), (31, "1/30", "1/45")] {
                out.push(inst(
                    format!("bicap-p{pts}"),
                    "bicap",
                    json!({"d": 1, "eps_pi": eps, "delta_pi": delta, "num_points": pts}),
                ));
            }
        }
        other => {
            return Err(CliError::from(Error::validation(format!(
                "unknown sweep family {other:?} (known: bicap, borsuk, borsuk-hajnal, hajnal, kneser, zykov)"
            ))))
        }
    }
    Ok(out)
}

fn marker<T: ToString>(r: vcchrom::Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) if e.is_guard() => "guard-exceeded".into(),
        Err(e) => format!("error: {e}"),
    }
}

struct Measured {
    n: usize,
    ratio: Rational,
    chi: String,
    chi_lower: String,
    paired_vc: String,
}

fn measure(g: &Graph, labels: Option<&[String]>) -> vcchrom::Result<Measured> {
    let ratio = if g.weights().is_some() {
        graph::min_weighted_degree(g)?
    } else {
        rational::from_usize(graph::min_degree(g)?) / rational::from_usize(g.n())
    };
    let chi = chromatic_number_exact(g).map(|r| r.0);
    let mut lower = greedy_clique(g).len();
    if let Ok(k) = &chi {
        lower = lower.max(*k);
    } else if let Some(labels) = labels {
        let sphere: Vec<usize> = (0..g.n())
            .filter(|&v| labels[v] == "B'" || labels[v] == "B")
            .collect();
        if let Ok((k, _)) = chromatic_number_exact(&g.induced(&sphere)) {
            lower = lower.max(k);
        }
    }
    let pvc = paired_vc_dimension(&neighborhood_paired(g), PairedVcOptions::default()).map(|r| r.0);
    Ok(Measured {
        n: g.n(),
        ratio,
        chi: marker(chi),
        chi_lower: lower.to_string(),
        paired_vc: marker(pvc),
    })
}

/// One row per (c, instance) with `min_degree_ratio >= c`; instances that
/// fail to build or measure get an error row for every `c`. Instances are
/// measured in parallel, rows sorted by `(c, instance)`.
pub fn sweep(
    reg: &Registry,
    family: &str,
    grid: &[Rational],
    seed: u64,
) -> Result<Vec<SweepRow>, CliError> {
    let list = instances(family)?;
    let measured: Vec<(String, vcchrom::Result<Measured>)> = list
        .par_iter()
        .map(|i| {
            let m = reg.generator(i.generator).and_then(|g| {
                let doc = g.generate(&i.params, Some(seed))?;
                measure(&doc.graph()?, doc.labels.as_deref())
            });
            (i.id.clone(), m)
        })
        .collect();
    let mut rows = Vec::new();
    for c in grid {
        for (id, m) in &measured {
            let row = match m {
                Ok(m) if m.ratio >= *c => SweepRow {
                    format_version: FORMAT_VERSION,
                    c: c.clone(),
                    instance: id.clone(),
                    n: Some(m.n),
                    min_degree_ratio: Some(m.ratio.clone()),
                    chi: m.chi.clone(),
                    chi_lower: m.chi_lower.clone(),
                    paired_vc: m.paired_vc.clone(),
                    error: String::new(),
                },
                Ok(_) => continue,
                Err(e) => SweepRow {
                    format_version: FORMAT_VERSION,
                    c: c.clone(),
                    instance: id.clone(),
                    n: None,
                    min_degree_ratio: None,
                    chi: String::new(),
                    chi_lower: String::new(),
                    paired_vc: String::new(),
                    error: e.to_string(),
                },
            };
            rows.push(row);
        }
    }
    rows.sort_by(|a, b| (&a.c, &a.instance).cmp(&(&b.c, &b.instance)));
    Ok(rows)
}

pub const CSV_HEADER: [&str; 9] = [
    "format_version",
    "c",
    "instance",
    "n",
    "min_degree_ratio",
    "chi",
    "chi_lower",
    "paired_vc",
    "error",
];

pub fn to_csv(rows: &[SweepRow]) -> Result<String, CliError> {
    let header: Vec<String> = CSV_HEADER.iter().map(|s| s.to_string()).collect();
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.format_version.to_string(),
                rational::format_rational(&r.c),
                r.instance.clone(),
                r.n.map(|n| n.to_string()).unwrap_or_default(),
                r.min_degree_ratio
                    .as_ref()
                    .map(rational::format_rational)
                    .unwrap_or_default(),
                r.chi.clone(),
                r.chi_lower.clone(),
                r.paired_vc.clone(),
                r.error.clone(),
            ]
        })
        .collect();
    csv_text(&header, &body)
}
