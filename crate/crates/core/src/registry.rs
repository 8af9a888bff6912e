//! Named strategies selected at runtime: graph generators, metrics and
//! pipelines, each behind a trait and registered by name.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bitset::VertexSet;
use crate::constructions::{
    self, BicapParams, BorsukHajnalParams, BorsukParams, HajnalParams, KneserParams, Part,
};
use crate::error::{Error, Result};
use crate::graph::{self, Cut, Graph};
use crate::hypergraph::{
    self, neighborhood_hypergraph, neighborhood_paired, PairedVcOptions, PairedVcWitness,
};
use crate::io::{GraphDocument, FORMAT_VERSION};
use crate::pipelines::{self, BoosterConfig, BoosterTree, TricubeReport};
use crate::rational::{self, Rational};
use crate::search;
use crate::solvers;

pub trait GraphGenerator: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    /// Builds the graph; `params` is a JSON object, echoed back resolved.
    fn generate(&self, params: &Value, seed: Option<u64>) -> Result<GraphDocument>;
}

pub trait Metric: Send + Sync {
    fn name(&self) -> &'static str;
    fn compute(&self, g: &Graph) -> Result<Value>;
}

pub trait Pipeline: Send + Sync {
    fn name(&self) -> &'static str;
    /// Runs and re-verifies; the returned report has passed [`Pipeline::verify`].
    fn run(&self, g: &Graph, config: &Value, seed: u64) -> Result<Value>;
    /// Independent check of a report against the graph.
    fn verify(&self, g: &Graph, report: &Value) -> Result<()>;
}

#[derive(Default)]
pub struct Registry {
    generators: BTreeMap<&'static str, Box<dyn GraphGenerator>>,
    metrics: BTreeMap<&'static str, Box<dyn Metric>>,
    pipelines: BTreeMap<&'static str, Box<dyn Pipeline>>,
}

impl Registry {
    pub fn standard() -> Self {
        let mut r = Registry::default();
        r.add_generator(Box::new(Kneser));
        r.add_generator(Box::new(Hajnal));
        r.add_generator(Box::new(Zykov));
        r.add_generator(Box::new(Borsuk));
        r.add_generator(Box::new(BorsukHajnal));
        r.add_generator(Box::new(Bicap));
        for m in standard_metrics() {
            r.add_metric(m);
        }
        r.add_pipeline(Box::new(Tricube));
        r.add_pipeline(Box::new(Booster));
        r.add_pipeline(Box::new(ZykovHom));
        r.add_pipeline(Box::new(Subfree));
        r
    }

    pub fn add_generator(&mut self, g: Box<dyn GraphGenerator>) {
        self.generators.insert(g.name(), g);
    }

    pub fn add_metric(&mut self, m: Box<dyn Metric>) {
        self.metrics.insert(m.name(), m);
    }

    pub fn add_pipeline(&mut self, p: Box<dyn Pipeline>) {
        self.pipelines.insert(p.name(), p);
    }

    pub fn generator(&self, name: &str) -> Result<&dyn GraphGenerator> {
        self.generators
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| unknown("generator", name, self.generators.keys()))
    }

    pub fn metric(&self, name: &str) -> Result<&dyn Metric> {
        self.metrics
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| unknown("metric", name, self.metrics.keys()))
    }

    pub fn pipeline(&self, name: &str) -> Result<&dyn Pipeline> {
        self.pipelines
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| unknown("pipeline", name, self.pipelines.keys()))
    }

    pub fn generator_names(&self) -> Vec<&'static str> {
        self.generators.keys().copied().collect()
    }

    pub fn metric_names(&self) -> Vec<&'static str> {
        self.metrics.keys().copied().collect()
    }

    pub fn pipeline_names(&self) -> Vec<&'static str> {
        self.pipelines.keys().copied().collect()
    }
}

fn unknown<'a>(kind: &str, name: &str, known: impl Iterator<Item = &'a &'static str>) -> Error {
    let known: Vec<&str> = known.copied().collect();
    Error::validation(format!(
        "unknown {kind} {name:?} (known: {})",
        known.join(", ")
    ))
}

/// Deserializes params and rejects keys the params type does not know.
fn parse_params<T: DeserializeOwned + Serialize>(params: &Value) -> Result<(T, Value)> {
    let obj = params
        .as_object()
        .ok_or_else(|| Error::validation("params must be a JSON object"))?;
    let t: T =
        serde_json::from_value(params.clone()).map_err(|e| Error::validation(e.to_string()))?;
    let echo = serde_json::to_value(&t).map_err(|e| Error::validation(e.to_string()))?;
    let known = echo.as_object().expect("params serialize as objects");
    if let Some(k) = obj.keys().find(|k| !known.contains_key(*k)) {
        return Err(Error::validation(format!("unknown parameter {k:?}")));
    }
    Ok((t, echo))
}

/// Fills in `seed`, which randomized sampling cannot do without.
fn with_seed(params: &Value, seed: Option<u64>) -> Result<Value> {
    let mut p = params.clone();
    let obj = p
        .as_object_mut()
        .ok_or_else(|| Error::validation("params must be a JSON object"))?;
    if !obj.contains_key("seed") {
        match seed {
            Some(s) => {
                obj.insert("seed".into(), json!(s));
            }
            None if obj.get("sampling").and_then(Value::as_str) == Some("random") => {
                return Err(Error::validation(
                    "a seed is mandatory for randomized generators",
                ));
            }
            None => {
                obj.insert("seed".into(), json!(0));
            }
        }
    }
    Ok(p)
}

fn subset_label(set: VertexSet) -> String {
    let items: Vec<String> = set.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn part_labels(labels: &[Part]) -> Vec<String> {
    labels
        .iter()
        .map(|p| {
            serde_json::to_value(p)
                .unwrap()
                .as_str()
                .unwrap()
                .to_string()
        })
        .collect()
}

fn document(g: &Graph, labels: Vec<String>, echo: Value, generator: &str) -> GraphDocument {
    GraphDocument::from_graph(g)
        .with_labels(labels)
        .with_params(json!({ "generator": generator, "params": echo }))
}

struct Kneser;

impl GraphGenerator for Kneser {
    fn name(&self) -> &'static str {
        "kneser"
    }
    fn describe(&self) -> &'static str {
        "n-subsets of [2n+k], disjoint subsets adjacent (params n, k)"
    }
    fn generate(&self, params: &Value, _seed: Option<u64>) -> Result<GraphDocument> {
        let (p, echo): (KneserParams, _) = parse_params(params)?;
        let g = constructions::kneser(&p)?;
        let labels = constructions::kneser_vertices(&p)?
            .into_iter()
            .map(subset_label)
            .collect();
        Ok(document(&g, labels, echo, self.name()))
    }
}

struct Hajnal;

impl GraphGenerator for Hajnal {
    fn name(&self) -> &'static str {
        "hajnal"
    }
    fn describe(&self) -> &'static str {
        "Kneser graph with the stable sets S and S' attached (params k, n, l)"
    }
    fn generate(&self, params: &Value, _seed: Option<u64>) -> Result<GraphDocument> {
        let (p, echo): (HajnalParams, _) = parse_params(params)?;
        let g = constructions::hajnal(&p)?;
        let lay = p.layout()?;
        let kn = KneserParams { n: p.n, k: p.k };
        let mut labels: Vec<String> = constructions::kneser_vertices(&kn)?
            .into_iter()
            .map(subset_label)
            .collect();
        labels.extend(
            lay.parts
                .iter()
                .flat_map(|r| r.clone())
                .map(|_| "S".to_string()),
        );
        labels.extend(lay.s_prime.map(|_| "S'".to_string()));
        Ok(document(&g, labels, echo, self.name()))
    }
}

#[derive(Serialize, Deserialize)]
struct ZykovParams {
    k: usize,
}

struct Zykov;

impl GraphGenerator for Zykov {
    fn name(&self) -> &'static str {
        "zykov"
    }
    fn describe(&self) -> &'static str {
        "k-edge matching plus one apex per endpoint choice (param k)"
    }
    fn generate(&self, params: &Value, _seed: Option<u64>) -> Result<GraphDocument> {
        let (p, echo): (ZykovParams, _) = parse_params(params)?;
        let g = constructions::zykov_matching(p.k)?;
        let labels = (0..g.n())
            .map(|v| if v < 2 * p.k { "M" } else { "apex" }.to_string())
            .collect();
        Ok(document(&g, labels, echo, self.name()))
    }
}

struct Borsuk;

impl GraphGenerator for Borsuk {
    fn name(&self) -> &'static str {
        "borsuk"
    }
    fn describe(&self) -> &'static str {
        "sphere points joined when nearly antipodal (params d, eps_pi, num_points, sampling)"
    }
    fn generate(&self, params: &Value, seed: Option<u64>) -> Result<GraphDocument> {
        let (p, echo): (BorsukParams, _) = parse_params(&with_seed(params, seed)?)?;
        let pg = constructions::borsuk_discrete(&p)?;
        let labels = vec!["B".to_string(); pg.graph.n()];
        Ok(document(&pg.graph, labels, echo, self.name()))
    }
}

struct BorsukHajnal;

impl GraphGenerator for BorsukHajnal {
    fn name(&self) -> &'static str {
        "borsuk-hajnal"
    }
    fn describe(&self) -> &'static str {
        "weighted Borsuk graph with caps S' and apex v (params d, eps_pi, delta_pi, num_points, cap_centers, sampling)"
    }
    fn generate(&self, params: &Value, seed: Option<u64>) -> Result<GraphDocument> {
        let (p, echo): (BorsukHajnalParams, _) = parse_params(&with_seed(params, seed)?)?;
        let lg = constructions::borsuk_hajnal(&p)?;
        Ok(document(
            &lg.graph,
            part_labels(&lg.labels),
            echo,
            self.name(),
        ))
    }
}

struct Bicap;

impl GraphGenerator for Bicap {
    fn name(&self) -> &'static str {
        "bicap"
    }
    fn describe(&self) -> &'static str {
        "Borsuk graph with a stable set of bicaps (params d, eps_pi, delta_pi, num_points, num_bicaps, sampling)"
    }
    fn generate(&self, params: &Value, seed: Option<u64>) -> Result<GraphDocument> {
        let (p, echo): (BicapParams, _) = parse_params(&with_seed(params, seed)?)?;
        let lg = constructions::bicap_graph(&p)?;
        Ok(document(
            &lg.graph,
            part_labels(&lg.labels),
            echo,
            self.name(),
        ))
    }
}

// ---------------------------------------------------------------------------
// metrics

type MetricFn = fn(&Graph) -> Result<Value>;

struct FnMetric {
    name: &'static str,
    f: MetricFn,
}

impl Metric for FnMetric {
    fn name(&self) -> &'static str {
        self.name
    }
    fn compute(&self, g: &Graph) -> Result<Value> {
        (self.f)(g)
    }
}

fn r(x: &Rational) -> Value {
    json!(rational::format_rational(x))
}

fn standard_metrics() -> Vec<Box<dyn Metric>> {
    let table: [(&'static str, MetricFn); 18] = [
        ("n", |g| Ok(json!(g.n()))),
        ("edges", |g| Ok(json!(g.edge_count()))),
        ("min-degree", |g| Ok(json!(graph::min_degree(g)?))),
        ("max-degree", |g| Ok(json!(g.max_degree()))),
        ("min-degree-ratio", |g| {
            let d = graph::min_degree(g)?;
            Ok(r(&(rational::from_usize(d) / rational::from_usize(g.n()))))
        }),
        ("weighted-min-degree", |g| {
            Ok(r(&graph::min_weighted_degree(g)?))
        }),
        ("triangle-free", |g| Ok(json!(graph::is_triangle_free(g)))),
        ("cube-free", |g| Ok(json!(!search::has_induced_cube(g)?))),
        ("odd-girth", |g| Ok(json!(graph::odd_girth(g)))),
        ("chi", |g| Ok(json!(solvers::chromatic_number_exact(g)?.0))),
        ("chistar", |g| Ok(r(&solvers::fractional_chromatic(g)?.0))),
        ("alpha", |g| Ok(json!(solvers::independence_number(g)?.0))),
        ("tau", |g| {
            Ok(json!(
                hypergraph::transversality_exact(&neighborhood_hypergraph(g))?.size
            ))
        }),
        ("taustar", |g| {
            let t = hypergraph::fractional_transversality(&neighborhood_hypergraph(g))?;
            Ok(r(t.value()))
        }),
        ("vc", |g| {
            Ok(json!(
                hypergraph::vc_dimension(&neighborhood_hypergraph(g))?.dimension
            ))
        }),
        ("dual-vc", |g| {
            Ok(json!(
                hypergraph::dual_vc_dimension(&neighborhood_hypergraph(g))?.dimension
            ))
        }),
        ("paired-vc", |g| {
            Ok(json!(
                hypergraph::paired_vc_dimension(
                    &neighborhood_paired(g),
                    PairedVcOptions::default()
                )?
                .0
            ))
        }),
        ("near-bipartite", |g| {
            Ok(json!(graph::is_near_bipartite(g)?.is_some()))
        }),
    ];
    table
        .into_iter()
        .map(|(name, f)| Box::new(FnMetric { name, f }) as Box<dyn Metric>)
        .collect()
}

/// Metric value, or the `"guard-exceeded"` marker when a size guard trips.
pub fn metric_value(m: &dyn Metric, g: &Graph) -> Result<Value> {
    match m.compute(g) {
        Ok(v) => Ok(v),
        Err(e) if e.is_guard() => Ok(json!("guard-exceeded")),
        Err(e) => Err(e),
    }
}

// ---------------------------------------------------------------------------
// pipelines

fn envelope(name: &str, config: Value, report: Value) -> Value {
    json!({
        "format_version": FORMAT_VERSION,
        "pipeline": name,
        "config": config,
        "report": report,
    })
}

fn report_part<T: DeserializeOwned>(report: &Value, name: &str) -> Result<T> {
    if report.get("pipeline").and_then(Value::as_str) != Some(name) {
        return Err(Error::verification(format!(
            "report is not a {name} report"
        )));
    }
    let inner = report
        .get("report")
        .ok_or_else(|| Error::verification("report body missing"))?;
    serde_json::from_value(inner.clone()).map_err(|e| Error::parse(e.to_string()))
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn default_c(g: &Graph) -> Result<Rational> {
    Ok(rational::from_usize(graph::min_degree(g)?) / rational::from_usize(g.n()))
}

#[derive(Serialize, Deserialize)]
struct TricubeConfig {
    #[serde(default, with = "rational::serde_rational::option")]
    c: Option<Rational>,
}

struct Tricube;

impl Pipeline for Tricube {
    fn name(&self) -> &'static str {
        "tricube"
    }
    fn run(&self, g: &Graph, config: &Value, seed: u64) -> Result<Value> {
        let (cfg, _): (TricubeConfig, _) = parse_params(config)?;
        let c = match cfg.c {
            Some(c) => c,
            None => default_c(g)?,
        };
        let rep = pipelines::tricube_color(g, &c, seed)?;
        let out = envelope(
            self.name(),
            json!({ "c": r(&c), "seed": seed }),
            to_value(&rep),
        );
        self.verify(g, &out)?;
        Ok(out)
    }
    fn verify(&self, g: &Graph, report: &Value) -> Result<()> {
        let rep: TricubeReport = report_part(report, self.name())?;
        rep.verify(g)
    }
}

#[derive(Serialize, Deserialize)]
struct BoosterSettings {
    #[serde(default, with = "rational::serde_rational::option")]
    c: Option<Rational>,
    #[serde(default, with = "rational::serde_rational::option")]
    eps: Option<Rational>,
    #[serde(default)]
    d: Option<usize>,
    #[serde(default)]
    p: Option<usize>,
    #[serde(default)]
    force: bool,
}

struct Booster;

impl Pipeline for Booster {
    fn name(&self) -> &'static str {
        "booster"
    }
    fn run(&self, g: &Graph, config: &Value, _seed: u64) -> Result<Value> {
        let (s, _): (BoosterSettings, _) = parse_params(config)?;
        let c = match s.c {
            Some(c) => c,
            None => default_c(g)?,
        };
        let eps = s.eps.unwrap_or_else(|| rational::rat(1, 10));
        let d = s.d.unwrap_or(2);
        let mut cfg = match s.p {
            Some(p) => BoosterConfig::with_arity(c, eps, d, p),
            None => BoosterConfig::new(c, eps, d),
        };
        cfg.force = s.force;
        let tree = pipelines::booster_tree(&neighborhood_paired(g), &cfg)?;
        let out = envelope(self.name(), to_value(&cfg), to_value(&tree));
        self.verify(g, &out)?;
        Ok(out)
    }
    fn verify(&self, g: &Graph, report: &Value) -> Result<()> {
        let tree: BoosterTree = report_part(report, self.name())?;
        tree.verify(&neighborhood_paired(g))
    }
}

#[derive(Serialize, Deserialize)]
struct HomConfig {
    #[serde(default = "two")]
    max_dim: usize,
}

fn two() -> usize {
    2
}

#[derive(Serialize, Deserialize)]
struct HomReport {
    dimension: usize,
    witness: PairedVcWitness,
    /// Image of each Zykov vertex, matching first, then apexes.
    map: Vec<usize>,
}

struct ZykovHom;

impl Pipeline for ZykovHom {
    fn name(&self) -> &'static str {
        "zykov-hom"
    }
    fn run(&self, g: &Graph, config: &Value, _seed: u64) -> Result<Value> {
        let (cfg, echo): (HomConfig, _) = parse_params(config)?;
        let p = neighborhood_paired(g);
        let (dimension, witness) =
            hypergraph::paired_vc_dimension(&p, PairedVcOptions::matched(cfg.max_dim))?;
        let map = pipelines::zykov_witness_to_hom(g, &witness)?;
        let out = envelope(
            self.name(),
            echo,
            to_value(&HomReport {
                dimension,
                witness,
                map,
            }),
        );
        self.verify(g, &out)?;
        Ok(out)
    }
    fn verify(&self, g: &Graph, report: &Value) -> Result<()> {
        let rep: HomReport = report_part(report, self.name())?;
        rep.witness.verify(&neighborhood_paired(g), true)?;
        let z = constructions::zykov_matching(rep.dimension)?;
        if rep.witness.dimension() != rep.dimension || !search::is_homomorphism(&z, g, &rep.map) {
            return Err(Error::verification(
                "map is not a homomorphism from the Zykov graph",
            ));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SubfreeConfig {
    #[serde(default = "one")]
    k: usize,
    /// Vertices of the `Y` side; a seeded flip-stable cut when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    y: Option<Vec<usize>>,
}

fn one() -> usize {
    1
}

#[derive(Serialize, Deserialize)]
struct SubfreeReport {
    k: usize,
    cut: Cut,
    witness: PairedVcWitness,
    /// Injective image of each Zykov vertex.
    map: Vec<usize>,
}

struct Subfree;

impl Pipeline for Subfree {
    fn name(&self) -> &'static str {
        "subfree"
    }
    fn run(&self, g: &Graph, config: &Value, seed: u64) -> Result<Value> {
        let (cfg, echo): (SubfreeConfig, _) = parse_params(config)?;
        let cut = match &cfg.y {
            Some(y) => {
                let mut side = vec![false; g.n()];
                for &v in y {
                    *side
                        .get_mut(v)
                        .ok_or_else(|| Error::validation(format!("vertex {v} out of range")))? =
                        true;
                }
                Cut { side }
            }
            None => graph::max_cut_local(g, seed),
        };
        let lift = pipelines::subfree_lift(g, &cut, cfg.k)?;
        let (dim, witness) =
            hypergraph::paired_vc_dimension(&lift.paired, PairedVcOptions::matched(cfg.k))?;
        if dim < cfg.k {
            return Err(Error::precondition(format!(
                "lifted hypergraph has matched paired VC-dimension {dim} < {}",
                cfg.k
            )));
        }
        let map = pipelines::lift_witness_to_zykov_subgraph(g, &lift, &witness)?;
        let out = envelope(
            self.name(),
            json!({ "config": echo, "seed": seed }),
            to_value(&SubfreeReport {
                k: cfg.k,
                cut,
                witness,
                map,
            }),
        );
        self.verify(g, &out)?;
        Ok(out)
    }
    fn verify(&self, g: &Graph, report: &Value) -> Result<()> {
        let rep: SubfreeReport = report_part(report, self.name())?;
        let lift = pipelines::subfree_lift(g, &rep.cut, rep.k)?;
        rep.witness.verify(&lift.paired, true)?;
        let z = constructions::zykov_matching(rep.k)?;
        if !search::is_subgraph_embedding(&z, g, &rep.map) {
            return Err(Error::verification("map is not a Zykov subgraph embedding"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn generators_by_name() {
        let reg = Registry::standard();
        let doc = reg
            .generator("kneser")
            .unwrap()
            .generate(&json!({"n": 2, "k": 1}), None)
            .unwrap();
        assert_eq!(doc.n, 10);
        assert_eq!(doc.labels.as_ref().unwrap()[0], "{0,1}");
        let doc = reg
            .generator("zykov")
            .unwrap()
            .generate(&json!({"k": 2}), None)
            .unwrap();
        assert_eq!(doc.n, 8);
        let err = reg
            .generator("hajnal")
            .unwrap()
            .generate(&json!({"k": 1, "n": 2, "l": 4}), None);
        assert!(err.unwrap_err().to_string().contains("2n+k must divide ℓ"));
        assert!(reg
            .generator("kneser")
            .unwrap()
            .generate(&json!({"n": 2, "k": 1, "x": 0}), None)
            .is_err());
        assert!(reg.generator("nope").is_err());
        let random = json!({"d": 2, "eps_pi": "1/10", "num_points": 10, "sampling": "random"});
        assert!(reg
            .generator("borsuk")
            .unwrap()
            .generate(&random, None)
            .is_err());
        let doc = reg
            .generator("borsuk")
            .unwrap()
            .generate(&random, Some(3))
            .unwrap();
        assert_eq!(doc.params.unwrap()["params"]["seed"], json!(3));
    }

    #[test]
    fn metrics_and_guard_marker() {
        let reg = Registry::standard();
        let p = named::petersen();
        assert_eq!(reg.metric("chi").unwrap().compute(&p).unwrap(), json!(3));
        assert_eq!(
            reg.metric("chistar").unwrap().compute(&p).unwrap(),
            json!("5/2")
        );
        let big = named::cycle(70);
        assert_eq!(
            metric_value(reg.metric("chi").unwrap(), &big).unwrap(),
            json!("guard-exceeded")
        );
    }

    #[test]
    fn pipelines_round_trip() {
        let reg = Registry::standard();
        let g = named::cycle(5);
        for name in ["tricube", "booster", "zykov-hom"] {
            let pipe = reg.pipeline(name).unwrap();
            let out = pipe.run(&g, &json!({}), 1).unwrap();
            pipe.verify(&g, &out).unwrap();
            let mut bad = out.clone();
            bad["pipeline"] = json!("other");
            assert!(pipe.verify(&g, &bad).is_err());
        }
        let err = reg
            .pipeline("booster")
            .unwrap()
            .run(&g, &json!({"p": 9}), 0)
            .unwrap_err();
        assert!(err.to_string().contains("2^d+1"));
        assert!(reg
            .pipeline("subfree")
            .unwrap()
            .run(&g, &json!({}), 1)
            .is_err());
        let z = graph::blow_up_sizes(
            &constructions::zykov_matching(2).unwrap(),
            &[1, 1, 1, 1, 4, 4, 4, 4],
        )
        .unwrap();
        let sub = reg.pipeline("subfree").unwrap();
        let out = sub
            .run(&z, &json!({"k": 2, "y": (4..20).collect::<Vec<_>>()}), 0)
            .unwrap();
        sub.verify(&z, &out).unwrap();
        assert_eq!(out["report"]["map"].as_array().unwrap().len(), 8);
    }
}
