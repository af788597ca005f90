//! Scenario configuration, multi-trial orchestration, aggregate reports,
//! and graph export for the equilibrium experiments.
//!
//! A scenario draws both networks and the edge costs from seeded
//! generators, constructs the equilibrium, verifies it (a verification
//! failure is a hard error, not a statistic), and aggregates per-trial
//! statistics. Trials run on a worker pool; every trial derives its own
//! seed from the scenario seed and trial index, so results are identical
//! regardless of scheduling.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::best_response::{is_nash_equilibrium, NashMode};
use crate::error::{Error, Result};
use crate::game::{
    classify, BenefitFunction, CostClass, GameInstance, Player, ProfileEvaluator,
    StrategyProfile,
};
use crate::graph::{diameter, parse_edge_list, Graph};
use crate::io::parse_dependency_list;
use crate::random_graphs::{
    add_hub, derive_stream_seed, derive_trial_seed, erdos_renyi, geometric_random,
    preferential_attachment, sample_costs,
};

/// Graph family for one side of the instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilyConfig {
    /// Preferential attachment with a complete seed graph.
    Sf { init: usize, attach: usize },
    /// Independent edges with a fixed probability.
    Er { p: f64 },
    /// Geometric threshold graph on a square.
    Gr { side: f64, radius: f64 },
    /// Fixed graph loaded from an edge-list file.
    File { path: PathBuf },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum CostMode {
    Uniform { low: f64, high: f64 },
    Constant { value: f64 },
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum DependencyMode {
    #[default]
    Complete,
    File {
        path: PathBuf,
    },
}

fn default_g2() -> FamilyConfig {
    FamilyConfig::Sf { init: 5, attach: 1 }
}

fn default_true() -> bool {
    true
}

/// Everything needed to run one scenario. Deserializes from TOML.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioConfig {
    /// First-network node count (one player per node).
    pub n: usize,
    /// Second-network node count.
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
    /// Benefit table shared by all players.
    pub benefits: Vec<f64>,
    pub g1: FamilyConfig,
    #[serde(default = "default_g2")]
    pub g2: FamilyConfig,
    /// Wire g2 node 0 to all other g2 nodes after generation.
    #[serde(default = "default_true")]
    pub g2_hub: bool,
    pub cost: CostMode,
    #[serde(default)]
    pub dependency: DependencyMode,
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::parse(0, format!("scenario config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text)
    }
}

/// Statistics of a single trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialStats {
    pub trial: usize,
    pub trial_seed: u64,
    pub edge_count_g1: usize,
    /// `None` when g1 is disconnected.
    pub diameter_g1: Option<u32>,
    pub total_interconnection_edges: usize,
    pub high_cost_interconnection_edges: usize,
    pub low_cost_players: usize,
    /// Mean distance over dependency pairs with a finite distance.
    pub avg_distance_interdependent: f64,
    pub infinite_dependency_pairs: usize,
    pub social_welfare: f64,
}

/// Means over all trials. Infinite diameters are excluded from the finite
/// mean and show up in the disconnected fraction instead.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeanStats {
    pub edge_count_g1: f64,
    pub diameter_g1_finite_mean: Option<f64>,
    pub disconnected_fraction: f64,
    pub total_interconnection_edges: f64,
    pub high_cost_interconnection_edges: f64,
    pub low_cost_players: f64,
    pub avg_distance_interdependent: f64,
    pub infinite_dependency_pairs: f64,
    pub social_welfare: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub trials: Vec<TrialStats>,
    pub mean: MeanStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    PrettyTable,
}

fn generate_family(
    family: &FamilyConfig,
    nodes: usize,
    seed: u64,
    fixed: Option<&Graph>,
) -> Result<Graph> {
    match family {
        FamilyConfig::Sf { init, attach } => preferential_attachment(nodes, *init, *attach, seed),
        FamilyConfig::Er { p } => erdos_renyi(nodes, *p, seed),
        FamilyConfig::Gr { side, radius } => geometric_random(nodes, *side, *radius, seed),
        FamilyConfig::File { .. } => Ok(fixed.expect("file-backed graph preloaded").clone()),
    }
}

fn load_fixed(family: &FamilyConfig, nodes: usize, side: &str) -> Result<Option<Graph>> {
    let FamilyConfig::File { path } = family else {
        return Ok(None);
    };
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    let g = parse_edge_list(&text)?;
    if g.node_count() != nodes {
        return Err(Error::invalid(format!(
            "{side} file graph has {} nodes, config says {nodes}",
            g.node_count()
        )));
    }
    Ok(Some(g))
}

/// Runs every trial of the scenario and aggregates the report. Each trial
/// generates its graphs and costs, constructs the equilibrium, verifies it
/// (failure aborts the run), and measures the combined network.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    if cfg.trials < 1 || cfg.n < 1 || cfg.m < 1 {
        return Err(Error::invalid(
            "trials, n, and m must all be at least 1".to_string(),
        ));
    }
    let benefit = BenefitFunction::new(cfg.benefits.clone())?;
    if let CostMode::Uniform { low, high } = cfg.cost {
        if !(low > 0.0 && high > low) {
            return Err(Error::invalid(format!(
                "uniform cost range must satisfy 0 < low < high, got [{low}, {high}]"
            )));
        }
    }
    let g1_fixed = load_fixed(&cfg.g1, cfg.n, "g1")?;
    let g2_fixed = load_fixed(&cfg.g2, cfg.m, "g2")?;
    let deps: Option<Vec<(usize, usize)>> = match &cfg.dependency {
        DependencyMode::Complete => None,
        DependencyMode::File { path } => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            Some(parse_dependency_list(&text)?)
        }
    };

    let trials: Vec<TrialStats> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            run_trial(
                cfg,
                &benefit,
                g1_fixed.as_ref(),
                g2_fixed.as_ref(),
                deps.as_deref(),
                trial,
            )
        })
        .collect::<Result<_>>()?;

    let mean = aggregate(&trials);
    Ok(ScenarioReport { trials, mean })
}

fn run_trial(
    cfg: &ScenarioConfig,
    benefit: &BenefitFunction,
    g1_fixed: Option<&Graph>,
    g2_fixed: Option<&Graph>,
    deps: Option<&[(usize, usize)]>,
    trial: usize,
) -> Result<TrialStats> {
    let trial_seed = derive_trial_seed(cfg.seed, trial as u64);
    let g1 = generate_family(&cfg.g1, cfg.n, derive_stream_seed(trial_seed, 0), g1_fixed)?;
    let mut g2 = generate_family(&cfg.g2, cfg.m, derive_stream_seed(trial_seed, 1), g2_fixed)?;
    if cfg.g2_hub {
        g2 = add_hub(&g2, 0)?;
    }
    let costs: Vec<f64> = match cfg.cost {
        CostMode::Uniform { low, high } => {
            sample_costs(cfg.n, low, high, derive_stream_seed(trial_seed, 2))?
        }
        CostMode::Constant { value } => vec![value; cfg.n],
    };
    let players: Vec<Player> = costs
        .iter()
        .map(|&c| Player::new(benefit.clone(), c))
        .collect::<Result<_>>()?;
    let inst = match deps {
        None => GameInstance::with_complete_dependencies(g1, g2, players)?,
        Some(edges) => GameInstance::new(g1, g2, edges, players)?,
    };

    let (profile, _trace) = crate::equilibrium::star_nash_equilibrium(&inst)
        .map_err(|e| Error::invalid(format!("trial {trial}: {e}")))?;
    let check = is_nash_equilibrium(&inst, &profile, NashMode::StarRestricted)?;
    if !check.is_equilibrium {
        return Err(Error::Verification(format!(
            "trial {trial}: constructed profile admits a deviation: {:?}",
            check.deviation
        )));
    }

    measure(&inst, &profile, trial, trial_seed)
}

/// Combined-graph statistics for a verified profile.
fn measure(
    inst: &GameInstance,
    profile: &StrategyProfile,
    trial: usize,
    trial_seed: u64,
) -> Result<TrialStats> {
    let eval = ProfileEvaluator::new(inst, profile)?;
    let mut welfare = 0.0;
    let mut finite_sum = 0u64;
    let mut finite_count = 0u64;
    let mut infinite_pairs = 0usize;
    let mut high_cost_edges = 0usize;
    let mut low_cost_players = 0usize;
    for i in 0..inst.n() {
        let action = profile.action(i);
        let dist = eval.distances_with_action(i, action);
        welfare += eval.utility_from_distances(i, action.len(), &dist);
        for &j in inst.dependencies(i) {
            match dist.get(inst.combined_v2(j)) {
                Some(d) => {
                    finite_sum += d as u64;
                    finite_count += 1;
                }
                None => infinite_pairs += 1,
            }
        }
        match classify(inst.player(i)) {
            CostClass::HighCost => high_cost_edges += action.len(),
            CostClass::LowCost => low_cost_players += 1,
        }
    }
    let diameter_g1 = if inst.n() >= 2 {
        diameter(inst.g1())?
    } else {
        Some(0)
    };
    Ok(TrialStats {
        trial,
        trial_seed,
        edge_count_g1: inst.g1().edge_count(),
        diameter_g1,
        total_interconnection_edges: profile.edge_count(),
        high_cost_interconnection_edges: high_cost_edges,
        low_cost_players,
        avg_distance_interdependent: if finite_count > 0 {
            finite_sum as f64 / finite_count as f64
        } else {
            0.0
        },
        infinite_dependency_pairs: infinite_pairs,
        social_welfare: welfare,
    })
}

fn aggregate(trials: &[TrialStats]) -> MeanStats {
    let count = trials.len() as f64;
    let mean_of = |f: &dyn Fn(&TrialStats) -> f64| trials.iter().map(|t| f(t)).sum::<f64>() / count;
    let finite_diams: Vec<f64> = trials
        .iter()
        .filter_map(|t| t.diameter_g1.map(|d| d as f64))
        .collect();
    MeanStats {
        edge_count_g1: mean_of(&|t| t.edge_count_g1 as f64),
        diameter_g1_finite_mean: if finite_diams.is_empty() {
            None
        } else {
            Some(finite_diams.iter().sum::<f64>() / finite_diams.len() as f64)
        },
        disconnected_fraction: mean_of(&|t| if t.diameter_g1.is_none() { 1.0 } else { 0.0 }),
        total_interconnection_edges: mean_of(&|t| t.total_interconnection_edges as f64),
        high_cost_interconnection_edges: mean_of(&|t| t.high_cost_interconnection_edges as f64),
        low_cost_players: mean_of(&|t| t.low_cost_players as f64),
        avg_distance_interdependent: mean_of(&|t| t.avg_distance_interdependent),
        infinite_dependency_pairs: mean_of(&|t| t.infinite_dependency_pairs as f64),
        social_welfare: mean_of(&|t| t.social_welfare),
    }
}

const CSV_HEADER: &str = "trial,trial_seed,edge_count_g1,diameter_g1,disconnected,\
total_interconnection_edges,high_cost_interconnection_edges,low_cost_players,\
avg_distance_interdependent,infinite_dependency_pairs,social_welfare";

/// Renders the report: CSV with one row per trial plus a `mean` row, or an
/// aligned table of the means.
pub fn emit_report(report: &ScenarioReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for t in &report.trials {
                let diam = t
                    .diameter_g1
                    .map_or_else(|| "inf".to_string(), |d| d.to_string());
                let disconnected = if t.diameter_g1.is_none() { 1 } else { 0 };
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    t.trial,
                    t.trial_seed,
                    t.edge_count_g1,
                    diam,
                    disconnected,
                    t.total_interconnection_edges,
                    t.high_cost_interconnection_edges,
                    t.low_cost_players,
                    t.avg_distance_interdependent,
                    t.infinite_dependency_pairs,
                    t.social_welfare
                )
                .unwrap();
            }
            let m = &report.mean;
            let diam = m
                .diameter_g1_finite_mean
                .map_or_else(|| "inf".to_string(), |d| d.to_string());
            writeln!(
                out,
                "mean,,{},{},{},{},{},{},{},{},{}",
                m.edge_count_g1,
                diam,
                m.disconnected_fraction,
                m.total_interconnection_edges,
                m.high_cost_interconnection_edges,
                m.low_cost_players,
                m.avg_distance_interdependent,
                m.infinite_dependency_pairs,
                m.social_welfare
            )
            .unwrap();
            out
        }
        ReportFormat::PrettyTable => {
            let m = &report.mean;
            let rows: Vec<(&str, String)> = vec![
                ("trials", report.trials.len().to_string()),
                ("edges in g1", format!("{:.1}", m.edge_count_g1)),
                (
                    "diameter of g1 (finite mean)",
                    m.diameter_g1_finite_mean
                        .map_or_else(|| "inf".to_string(), |d| format!("{d:.2}")),
                ),
                (
                    "disconnected fraction",
                    format!("{:.2}", m.disconnected_fraction),
                ),
                (
                    "total interconnection edges",
                    format!("{:.1}", m.total_interconnection_edges),
                ),
                (
                    "interconnection edges by high-cost players",
                    format!("{:.1}", m.high_cost_interconnection_edges),
                ),
                ("low-cost players", format!("{:.2}", m.low_cost_players)),
                (
                    "average distance between interdependent nodes",
                    format!("{:.4}", m.avg_distance_interdependent),
                ),
                (
                    "infinite dependency pairs",
                    format!("{:.1}", m.infinite_dependency_pairs),
                ),
                ("social welfare", format!("{:.1}", m.social_welfare)),
            ];
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            let mut out = String::new();
            for (k, v) in rows {
                writeln!(out, "{k:<width$}  {v}").unwrap();
            }
            out
        }
    }
}

/// DOT rendering of the combined network with the three edge classes in
/// distinct styles: plain for g1, dashed for g2, bold red for the
/// interconnections.
pub fn render_dot(inst: &GameInstance, profile: &StrategyProfile) -> String {
    let mut out = String::from("graph interconnection {\n");
    for i in 0..inst.n() {
        writeln!(out, "  x{i} [shape=circle];").unwrap();
    }
    for j in 0..inst.m() {
        writeln!(out, "  y{j} [shape=box];").unwrap();
    }
    for (u, v) in inst.g1().edges() {
        writeln!(out, "  x{u} -- x{v};").unwrap();
    }
    for (u, v) in inst.g2().edges() {
        writeln!(out, "  y{u} -- y{v} [style=dashed];").unwrap();
    }
    for (i, action) in profile.actions().iter().enumerate() {
        for &j in action {
            writeln!(out, "  x{i} -- y{j} [style=bold, color=red];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Writes the DOT rendering to `path`.
pub fn export_dot(inst: &GameInstance, profile: &StrategyProfile, path: &Path) -> Result<()> {
    std::fs::write(path, render_dot(inst, profile)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Scenario presets mirroring the two headline experiments: heterogeneous
/// uniform costs and their homogeneous mean-cost counterpart.
pub fn preset_configs() -> BTreeMap<&'static str, ScenarioConfig> {
    let base = ScenarioConfig {
        n: 500,
        m: 5000,
        trials: 100,
        seed: 1,
        benefits: vec![1.2, 0.7, 0.6, 0.5, 0.3, 0.2],
        g1: FamilyConfig::Sf { init: 5, attach: 6 },
        g2: FamilyConfig::Sf { init: 5, attach: 1 },
        g2_hub: true,
        cost: CostMode::Uniform {
            low: 0.01,
            high: 2500.0,
        },
        dependency: DependencyMode::Complete,
    };
    let mut homogeneous = base.clone();
    homogeneous.cost = CostMode::Constant { value: 1250.0 };
    BTreeMap::from([("heterogeneous", base), ("homogeneous", homogeneous)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn tiny_config() -> ScenarioConfig {
        ScenarioConfig {
            n: 12,
            m: 30,
            trials: 3,
            seed: 99,
            benefits: vec![1.2, 0.7, 0.6, 0.5, 0.3, 0.2],
            g1: FamilyConfig::Er { p: 0.3 },
            g2: FamilyConfig::Sf { init: 5, attach: 1 },
            g2_hub: true,
            cost: CostMode::Uniform {
                low: 0.01,
                high: 3.0,
            },
            dependency: DependencyMode::Complete,
        }
    }

    #[test]
    fn config_toml_round_trip() {
        let text = r#"
            n = 12
            m = 30
            trials = 3
            seed = 99
            benefits = [1.2, 0.7, 0.6, 0.5, 0.3, 0.2]

            [g1]
            family = "er"
            p = 0.3

            [g2]
            family = "sf"
            init = 5
            attach = 1

            [cost]
            mode = "uniform"
            low = 0.01
            high = 3.0
        "#;
        let cfg = ScenarioConfig::from_toml(text).unwrap();
        assert_eq!(cfg.n, 12);
        assert!(cfg.g2_hub);
        assert!(matches!(cfg.dependency, DependencyMode::Complete));
        assert!(matches!(cfg.cost, CostMode::Uniform { .. }));

        let rendered = toml::to_string(&cfg).unwrap();
        let reparsed = ScenarioConfig::from_toml(&rendered).unwrap();
        assert_eq!(toml::to_string(&reparsed).unwrap(), rendered);
    }

    #[test]
    fn bad_config_is_rejected() {
        assert!(ScenarioConfig::from_toml("n = 1").is_err());
        let mut cfg = tiny_config();
        cfg.trials = 0;
        assert_eq!(run_scenario(&cfg).unwrap_err().category(), "argument");
        let mut cfg = tiny_config();
        cfg.benefits = vec![0.5, 0.9];
        assert_eq!(run_scenario(&cfg).unwrap_err().category(), "argument");
        let mut cfg = tiny_config();
        cfg.cost = CostMode::Uniform {
            low: 2.0,
            high: 1.0,
        };
        assert_eq!(run_scenario(&cfg).unwrap_err().category(), "argument");
    }

    #[test]
    fn reports_are_reproducible() {
        let cfg = tiny_config();
        let a = run_scenario(&cfg).unwrap();
        let b = run_scenario(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            emit_report(&a, ReportFormat::Csv),
            emit_report(&b, ReportFormat::Csv)
        );
    }

    #[test]
    fn csv_has_trial_rows_plus_mean() {
        let mut cfg = tiny_config();
        cfg.trials = 1;
        let report = run_scenario(&cfg).unwrap();
        let csv = emit_report(&report, ReportFormat::Csv);
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        // Header, one trial, one mean row.
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("trial,"));
        assert!(lines[2].starts_with("mean,"));

        cfg.trials = 5;
        let report = run_scenario(&cfg).unwrap();
        let csv = emit_report(&report, ReportFormat::Csv);
        assert_eq!(csv.trim_end().lines().count(), 1 + 5 + 1);
    }

    #[test]
    fn mean_row_is_the_arithmetic_mean() {
        let cfg = tiny_config();
        let report = run_scenario(&cfg).unwrap();
        let csv = emit_report(&report, ReportFormat::Csv);
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        let mean_fields: Vec<&str> = lines.last().unwrap().split(',').collect();
        // Column 10: social welfare; column 5: total interconnection edges.
        let welfare_mean: f64 = mean_fields[10].parse().unwrap();
        let edges_mean: f64 = mean_fields[5].parse().unwrap();
        let trials = &lines[1..lines.len() - 1];
        let recomputed_welfare: f64 = trials
            .iter()
            .map(|l| l.split(',').nth(10).unwrap().parse::<f64>().unwrap())
            .sum::<f64>()
            / trials.len() as f64;
        let recomputed_edges: f64 = trials
            .iter()
            .map(|l| l.split(',').nth(5).unwrap().parse::<f64>().unwrap())
            .sum::<f64>()
            / trials.len() as f64;
        assert!((welfare_mean - recomputed_welfare).abs() < 1e-9);
        assert!((edges_mean - recomputed_edges).abs() < 1e-9);
    }

    #[test]
    fn pretty_table_mentions_every_metric() {
        let cfg = tiny_config();
        let report = run_scenario(&cfg).unwrap();
        let table = emit_report(&report, ReportFormat::PrettyTable);
        for key in [
            "edges in g1",
            "diameter of g1",
            "social welfare",
            "average distance",
        ] {
            assert!(table.contains(key), "missing {key} in:\n{table}");
        }
    }

    #[test]
    fn dot_export_styles_the_three_edge_classes() {
        let inst = crate::game::tests::nine_player_instance();
        let mut profile = StrategyProfile::empty(9);
        profile.set_action(6, (0..7).collect());
        for i in [1, 4, 5] {
            profile.set_action(i, BTreeSet::from([0]));
        }
        let dot = render_dot(&inst, &profile);
        assert_eq!(dot.matches("[style=dashed]").count(), 6);
        assert_eq!(dot.matches("[style=bold, color=red]").count(), 10);
        let plain_g1 = dot
            .lines()
            .filter(|l| l.contains(" -- ") && !l.contains("style"))
            .count();
        assert_eq!(plain_g1, 8);
        assert_eq!(dot.matches("shape=circle").count(), 9);
        assert_eq!(dot.matches("shape=box").count(), 7);

        // Empty profile: no interconnection-styled edges.
        let dot = render_dot(&inst, &StrategyProfile::empty(9));
        assert_eq!(dot.matches("color=red").count(), 0);
    }

    #[test]
    fn dot_edge_counts_match_the_profile() {
        let inst = crate::game::tests::nine_player_instance();
        let mut profile = StrategyProfile::empty(9);
        profile.set_action(0, BTreeSet::from([2, 3]));
        profile.set_action(4, BTreeSet::from([1]));
        let dot = render_dot(&inst, &profile);
        assert_eq!(
            dot.matches("color=red").count(),
            profile.edge_count()
        );
    }

    #[test]
    fn presets_are_valid_and_distinct() {
        let presets = preset_configs();
        assert_eq!(presets.len(), 2);
        assert!(matches!(
            presets["heterogeneous"].cost,
            CostMode::Uniform { .. }
        ));
        assert!(matches!(
            presets["homogeneous"].cost,
            CostMode::Constant { value } if value == 1250.0
        ));
        for cfg in presets.values() {
            assert!(BenefitFunction::new(cfg.benefits.clone()).is_ok());
        }
    }

    #[test]
    fn file_backed_graphs_run() {
        let dir = std::env::temp_dir().join(format!("indg-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let g1 = erdos_renyi(10, 0.4, 7).unwrap();
        let g1_path = dir.join("g1.edges");
        std::fs::write(&g1_path, crate::graph::write_edge_list(&g1)).unwrap();

        let mut cfg = tiny_config();
        cfg.n = 10;
        cfg.m = 20;
        cfg.trials = 2;
        cfg.g1 = FamilyConfig::File {
            path: g1_path.clone(),
        };
        let report = run_scenario(&cfg).unwrap();
        assert_eq!(report.trials.len(), 2);
        assert!(report
            .trials
            .iter()
            .all(|t| t.edge_count_g1 == g1.edge_count()));

        // Node-count mismatch is an argument error.
        cfg.n = 11;
        assert_eq!(run_scenario(&cfg).unwrap_err().category(), "argument");
        std::fs::remove_dir_all(&dir).ok();
    }
}
