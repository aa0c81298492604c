//! Experiment runner: builds instances from a seeded spec, runs the engines,
//! checks every result and reports one record per instance.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::checks::{check_biconnected, check_duality, check_sandwich};
use super::gen::{self, WeightScheme};
use super::HarnessError;
use crate::congest::{Network, PaBackend, Partition, SimConfig, Widths};
use crate::dist::{dist_multi, relabel_result, DistConfig, DistError, DistOutcome};
use crate::planar::{induced_subgraph, EmbeddedPlanarGraph, VertexId};
use crate::separator::{
    compute_separator_detailed, verify_separator, write_record, ClosingEdge, FacePolicy, SeparatorCase, SeparatorResult,
};
use crate::tree::{bfs_tree, to_dot, RootedTree};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    Grid { rows: u32, cols: u32 },
    Cylinder { rings: u32, width: u32 },
    RandomTriangulation { n: u32, seed: u64 },
    CycleChords { n: u32, chords: u32, seed: u64 },
    TwoLevelParts { side: u32, block: u32 },
    CutVertexBlocks { blocks: u32, seed: u64 },
    CriticalFan,
    File { path: PathBuf },
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Grid { rows, cols } => write!(f, "grid {rows}x{cols}"),
            GeneratorSpec::Cylinder { rings, width } => write!(f, "cylinder {rings}x{width}"),
            GeneratorSpec::RandomTriangulation { n, seed } => write!(f, "random-triangulation n={n} seed={seed}"),
            GeneratorSpec::CycleChords { n, chords, seed } => {
                write!(f, "cycle-chords n={n} chords={chords} seed={seed}")
            }
            GeneratorSpec::TwoLevelParts { side, block } => write!(f, "two-level-parts {side}/{block}"),
            GeneratorSpec::CutVertexBlocks { blocks, seed } => write!(f, "cut-vertex-blocks {blocks} seed={seed}"),
            GeneratorSpec::CriticalFan => write!(f, "critical-fan"),
            GeneratorSpec::File { path } => write!(f, "file {}", path.display()),
        }
    }
}

impl GeneratorSpec {
    /// The graph with unit weights and, for partitioned families, the part
    /// of every vertex.
    pub fn build(&self) -> Result<(EmbeddedPlanarGraph, Option<Vec<u32>>), HarnessError> {
        let g = match self {
            GeneratorSpec::Grid { rows, cols } => gen::grid(*rows, *cols)?,
            GeneratorSpec::Cylinder { rings, width } => gen::cylinder(*rings, *width)?,
            GeneratorSpec::RandomTriangulation { n, seed } => gen::random_triangulation(*n, *seed)?,
            GeneratorSpec::CycleChords { n, chords, seed } => gen::cycle_chords(*n, *chords, *seed)?,
            GeneratorSpec::TwoLevelParts { side, block } => {
                let (g, parts) = gen::two_level_parts(*side, *block)?;
                return Ok((g, Some(parts)));
            }
            GeneratorSpec::CutVertexBlocks { blocks, seed } => gen::cut_vertex_blocks(*blocks, *seed)?,
            GeneratorSpec::CriticalFan => return Ok((gen::critical_fan_example()?, None)),
            GeneratorSpec::File { path } => crate::planar::io::parse_graph(&fs::read_to_string(path)?)?,
        };
        Ok((g, None))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Sequential,
    Distributed,
    #[default]
    Both,
}

impl Engine {
    fn sequential(self) -> bool {
        self != Engine::Distributed
    }

    fn distributed(self) -> bool {
        self != Engine::Sequential
    }
}

fn default_weights() -> Vec<WeightScheme> {
    vec![WeightScheme::Unit]
}

fn one() -> u32 {
    1
}

fn default_check_n() -> usize {
    200
}

/// Everything a run depends on. Instances are the cross product of
/// generators, weight schemes and repetitions, numbered in that order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub generators: Vec<GeneratorSpec>,
    #[serde(default = "default_weights")]
    pub weights: Vec<WeightScheme>,
    #[serde(default)]
    pub engine: Engine,
    #[serde(default)]
    pub pa_backend: PaBackend,
    /// Repetition `r` uses weight seed `seed + id` and BFS root `r·n/repetitions`.
    #[serde(default = "one")]
    pub repetitions: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub bit_budget: Option<u32>,
    #[serde(default)]
    pub max_rounds: Option<u32>,
    /// Duality and sandwich checks run on parts with at most this many vertices.
    #[serde(default = "default_check_n")]
    pub check_max_n: usize,
    #[serde(default)]
    pub report: Option<PathBuf>,
    #[serde(default)]
    pub dot_dir: Option<PathBuf>,
}

impl ExperimentSpec {
    pub fn new(generators: Vec<GeneratorSpec>) -> Self {
        ExperimentSpec {
            generators,
            weights: default_weights(),
            engine: Engine::Both,
            pa_backend: PaBackend::Honest,
            repetitions: 1,
            seed: 0,
            bit_budget: None,
            max_rounds: None,
            check_max_n: default_check_n(),
            report: None,
            dot_dir: None,
        }
    }

    /// Grids 4..64, random triangulations up to 5000 vertices, cycles with
    /// chords, cut-vertex block chains, a partitioned grid and the critical
    /// fan instance.
    pub fn standard_suite() -> Self {
        let mut generators = Vec::new();
        for side in [4, 5, 6, 8, 10, 12, 16, 20, 24, 32, 48, 64] {
            generators.push(GeneratorSpec::Grid { rows: side, cols: side });
        }
        for (i, n) in [20u32, 35, 50, 80, 120, 160, 200, 300, 500, 800, 1200, 2000, 3000, 5000].into_iter().enumerate()
        {
            generators.push(GeneratorSpec::RandomTriangulation { n, seed: i as u64 });
        }
        for i in 0..20u32 {
            generators.push(GeneratorSpec::CycleChords { n: 12 + 3 * i, chords: i % 6, seed: u64::from(i) });
        }
        for i in 0..16u32 {
            generators.push(GeneratorSpec::CutVertexBlocks { blocks: 6 + i, seed: u64::from(i) });
        }
        for width in [6, 12, 24] {
            generators.push(GeneratorSpec::Cylinder { rings: 3, width });
        }
        generators.push(GeneratorSpec::TwoLevelParts { side: 24, block: 8 });
        generators.push(GeneratorSpec::CriticalFan);
        ExperimentSpec {
            weights: vec![WeightScheme::Unit, WeightScheme::RandomProper],
            repetitions: 2,
            ..ExperimentSpec::new(generators)
        }
    }

    pub fn instance_count(&self) -> usize {
        self.generators.len() * self.weights.len() * self.repetitions as usize
    }

    fn dist_config(&self) -> DistConfig {
        let mut sim = SimConfig::default();
        if let Some(max) = self.max_rounds {
            sim.max_rounds = max;
        }
        DistConfig { sim, backend: self.pa_backend, bit_budget: self.bit_budget, ..DistConfig::default() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PartReport {
    pub part: u32,
    pub n: usize,
    pub case: Option<String>,
    /// Closed by a chord through the critical face.
    pub virtual_chord: bool,
    pub path_len: usize,
    pub tree_depth: u32,
    /// `|P| ≤ 2·depth(T) + 1`.
    pub size_ok: bool,
    pub max_component: u64,
    pub total: u64,
    pub ratio: f64,
    pub balance_ok: bool,
    pub augmented_edges: usize,
    pub biconnected_ok: Option<bool>,
    pub duality_ok: Option<bool>,
    pub sandwich_ok: Option<bool>,
    pub engines_equal: Option<bool>,
    pub face_size: Option<u64>,
    pub probes: Option<usize>,
    pub error: Option<String>,
}

impl PartReport {
    fn passed(&self) -> bool {
        self.error.is_none()
            && self.size_ok
            && self.balance_ok
            && [self.biconnected_ok, self.duality_ok, self.sandwich_ok, self.engines_equal]
                .iter()
                .all(|c| c.unwrap_or(true))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub id: u64,
    pub generator: String,
    pub weights: String,
    pub root: VertexId,
    pub n: usize,
    pub m: usize,
    pub diameter: u32,
    pub parts: Vec<PartReport>,
    pub honest_rounds: Option<u64>,
    pub charged_rounds: Option<u64>,
    pub pa_calls: Option<u32>,
    pub max_bits: Option<u32>,
    pub bit_budget: Option<u32>,
    pub error: Option<String>,
    pub passed: bool,
    #[serde(skip)]
    pub dot: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coverage {
    pub balanced: u64,
    pub critical_with_children: u64,
    pub leaf_critical: u64,
    pub augmented: u64,
    pub multi_part: u64,
}

impl Coverage {
    pub fn complete(&self) -> bool {
        [self.balanced, self.critical_with_children, self.leaf_critical, self.augmented, self.multi_part]
            .iter()
            .all(|&c| c > 0)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub instances: u64,
    pub passed: u64,
    pub failed: Vec<u64>,
    pub coverage: Coverage,
    pub max_ratio: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub records: Vec<InstanceReport>,
    pub summary: Summary,
}

impl ExperimentReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed.is_empty()
    }

    /// One JSON object per instance, then `{"summary": …}`.
    pub fn to_ndjson(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("report serializes"));
            out.push('\n');
        }
        let summary = serde_json::json!({ "summary": self.summary });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }

    /// Instance records from NDJSON text; the summary line is skipped.
    pub fn parse_records(text: &str) -> Result<Vec<InstanceReport>, HarnessError> {
        let mut records = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let value: serde_json::Value = serde_json::from_str(line)?;
            if value.get("summary").is_none() {
                records.push(serde_json::from_value(value)?);
            }
        }
        Ok(records)
    }

    /// Writes the report and DOT files to the paths named in `spec`.
    pub fn write_outputs(&self, spec: &ExperimentSpec) -> Result<(), HarnessError> {
        if let Some(path) = &spec.report {
            fs::write(path, self.to_ndjson())?;
        }
        if let Some(dir) = &spec.dot_dir {
            fs::create_dir_all(dir)?;
            for r in &self.records {
                if let Some(dot) = &r.dot {
                    fs::write(dot_path(dir, r.id), dot)?;
                }
            }
        }
        Ok(())
    }
}

fn dot_path(dir: &Path, id: u64) -> PathBuf {
    dir.join(format!("instance-{id:04}.dot"))
}

/// Runs every instance (concurrently when enabled) and assembles the report
/// in instance order.
pub fn run(spec: &ExperimentSpec) -> ExperimentReport {
    let mut jobs = Vec::with_capacity(spec.instance_count());
    for generator in &spec.generators {
        for &scheme in &spec.weights {
            for rep in 0..spec.repetitions {
                jobs.push((jobs.len() as u64, generator, scheme, rep));
            }
        }
    }
    let records =
        crate::par::map_slice(&jobs, |&(id, generator, scheme, rep)| run_instance(spec, id, generator, scheme, rep));
    let summary = summarize(&records);
    ExperimentReport { records, summary }
}

fn summarize(records: &[InstanceReport]) -> Summary {
    let mut s = Summary { instances: records.len() as u64, ..Summary::default() };
    for r in records {
        if r.passed {
            s.passed += 1;
        } else {
            s.failed.push(r.id);
        }
        if r.parts.len() > 1 && r.error.is_none() {
            s.coverage.multi_part += 1;
        }
        for p in &r.parts {
            match p.case.as_deref() {
                Some("balanced") => s.coverage.balanced += 1,
                Some("critical") if p.virtual_chord => s.coverage.critical_with_children += 1,
                Some("leaf-critical") => s.coverage.leaf_critical += 1,
                _ => {}
            }
            if p.augmented_edges > 0 && p.biconnected_ok == Some(true) {
                s.coverage.augmented += 1;
            }
            s.max_ratio = s.max_ratio.max(p.ratio);
        }
    }
    s
}

fn failed(id: u64, generator: &GeneratorSpec, scheme: WeightScheme, error: String) -> InstanceReport {
    InstanceReport {
        id,
        generator: generator.to_string(),
        weights: scheme_name(scheme).to_string(),
        error: Some(error),
        ..InstanceReport::default()
    }
}

fn scheme_name(scheme: WeightScheme) -> &'static str {
    match scheme {
        WeightScheme::Unit => "unit",
        WeightScheme::RandomProper => "random-proper",
        WeightScheme::HeavyVertex => "heavy-vertex",
    }
}

struct PartSetup {
    vertices: Vec<VertexId>,
    graph: EmbeddedPlanarGraph,
    tree: RootedTree,
}

fn run_instance(
    spec: &ExperimentSpec,
    id: u64,
    generator: &GeneratorSpec,
    scheme: WeightScheme,
    rep: u32,
) -> InstanceReport {
    let (g, parts) = match generator.build() {
        Ok(built) => built,
        Err(e) => return failed(id, generator, scheme, e.to_string()),
    };
    let g = g.with_weights(gen::weights(g.n(), scheme, spec.seed.wrapping_add(id)));
    let n = g.n();
    let part_of = parts.unwrap_or_else(|| vec![0; n]);
    let partition = Partition { part_of: part_of.clone() };
    let part_count = partition.part_count();
    let mut members = vec![Vec::new(); part_count];
    for (v, &p) in part_of.iter().enumerate() {
        members[p as usize].push(v as VertexId);
    }

    let mut setups = Vec::with_capacity(part_count);
    let mut forest = vec![None; n];
    for vertices in members {
        let graph = if part_count == 1 {
            g.clone()
        } else {
            match induced_subgraph(&g, &vertices) {
                Ok(sub) => sub,
                Err(e) => return failed(id, generator, scheme, e.to_string()),
            }
        };
        let root = (u64::from(rep) * graph.n() as u64 / u64::from(spec.repetitions.max(1))) as VertexId;
        let tree = match bfs_tree(&graph, root) {
            Ok(t) => t,
            Err(e) => return failed(id, generator, scheme, e.to_string()),
        };
        for (local, parent) in tree.parents().iter().enumerate() {
            forest[vertices[local] as usize] = parent.map(|p| vertices[p as usize]);
        }
        setups.push(PartSetup { vertices, graph, tree });
    }

    let mut report = InstanceReport {
        id,
        generator: generator.to_string(),
        weights: scheme_name(scheme).to_string(),
        root: setups[0].vertices[setups[0].tree.root() as usize],
        n,
        m: g.m(),
        diameter: Network::from_system(g.system(), Widths::new(n, 0, 1, 1, None)).diameter(),
        ..InstanceReport::default()
    };

    let mut sequential: Vec<Option<Result<SeparatorResult, String>>> = vec![None; part_count];
    let mut parts: Vec<PartReport> = Vec::with_capacity(part_count);
    for (p, setup) in setups.iter().enumerate() {
        let mut pr =
            PartReport { part: p as u32, n: setup.graph.n(), tree_depth: setup.tree.height(), ..PartReport::default() };
        if spec.engine.sequential() {
            match compute_separator_detailed(&setup.graph, &setup.tree, FacePolicy::MinFaceId) {
                Ok(run) => {
                    let aug = &run.augmentation.graph;
                    pr.augmented_edges = run.augmentation.virtual_edges.len();
                    pr.biconnected_ok = Some(check_biconnected(aug));
                    if setup.graph.n() <= spec.check_max_n {
                        pr.duality_ok = Some(check_duality(aug, &run.pair).is_ok());
                        pr.sandwich_ok = Some(check_sandwich(aug, &run.pair, &run.weighting).is_ok());
                    }
                    fill_result(&mut pr, setup, &run.result);
                    if spec.dot_dir.is_some() && part_count == 1 {
                        report.dot = Some(dot_with_path(aug, &run.pair, &run.result.path));
                    }
                    sequential[p] = Some(Ok(relabel_result(&run.result, &setup.vertices)));
                }
                Err(e) => {
                    pr.error = Some(e.to_string());
                    sequential[p] = Some(Err(e.to_string()));
                }
            }
        }
        parts.push(pr);
    }

    if spec.engine.distributed() {
        match dist_multi(&g, &partition, &forest, spec.dist_config()) {
            Ok(outcome) => absorb_distributed(spec, &mut report, &mut parts, &setups, &sequential, &outcome),
            Err(DistError::Part { part, source }) => {
                let pr = &mut parts[part as usize];
                let msg = source.to_string();
                match &sequential[part as usize] {
                    Some(Err(seq)) => pr.engines_equal = Some(*seq == msg),
                    Some(Ok(_)) => pr.engines_equal = Some(false),
                    None => {}
                }
                pr.error.get_or_insert(msg);
            }
            Err(e) => report.error = Some(e.to_string()),
        }
    }

    report.passed = report.error.is_none() && parts.iter().all(PartReport::passed);
    report.parts = parts;
    report
}

fn absorb_distributed(
    spec: &ExperimentSpec,
    report: &mut InstanceReport,
    parts: &mut [PartReport],
    setups: &[PartSetup],
    sequential: &[Option<Result<SeparatorResult, String>>],
    outcome: &DistOutcome,
) {
    report.honest_rounds = Some(outcome.trace.honest_rounds());
    report.charged_rounds = Some(outcome.trace.charged_rounds());
    report.pa_calls = Some(outcome.trace.pa_calls());
    report.max_bits = Some(outcome.trace.max_bits());
    report.bit_budget = Some(spec.bit_budget.unwrap_or_else(|| crate::congest::default_budget(report.n)));
    for po in &outcome.parts {
        let p = po.part as usize;
        let pr = &mut parts[p];
        pr.face_size = Some(po.face_size);
        pr.probes = Some(po.probes.len());
        match &sequential[p] {
            Some(Ok(seq)) => pr.engines_equal = Some(write_record(seq) == write_record(&po.result)),
            Some(Err(_)) => pr.engines_equal = Some(false),
            None => {
                let local = to_local(&po.result, &setups[p].vertices);
                fill_result(pr, &setups[p], &local);
            }
        }
    }
}

fn to_local(r: &SeparatorResult, vertices: &[VertexId]) -> SeparatorResult {
    let local = |x: VertexId| vertices.binary_search(&x).expect("member of part") as VertexId;
    SeparatorResult { path: r.path.iter().map(|&x| local(x)).collect(), u: local(r.u), v: local(r.v), ..r.clone() }
}

fn fill_result(pr: &mut PartReport, setup: &PartSetup, r: &SeparatorResult) {
    pr.case = Some(r.case.as_str().to_string());
    pr.virtual_chord = r.case == SeparatorCase::Critical && matches!(r.closing, ClosingEdge::Virtual { .. });
    pr.path_len = r.path.len();
    pr.size_ok = r.path.len() as u64 <= 2 * u64::from(setup.tree.height()) + 1;
    let balance = verify_separator(&setup.graph, &r.path);
    pr.max_component = balance.max_component;
    pr.total = balance.total;
    pr.ratio = balance.ratio();
    pr.balance_ok = balance.passes;
}

/// DOT of `G`, `T` and `T*` with the separator path drawn in red.
pub fn dot_with_path(g: &EmbeddedPlanarGraph, pair: &crate::tree::TreeCotreePair, path: &[VertexId]) -> String {
    let mut dot = to_dot(g.system(), pair);
    let close = dot.rfind('}').unwrap_or(dot.len());
    let mut extra = String::new();
    for w in path.windows(2) {
        extra.push_str(&format!("  v{} -- v{} [kind=separator color=red penwidth=3];\n", w[0], w[1]));
    }
    dot.insert_str(close, &extra);
    dot
}
