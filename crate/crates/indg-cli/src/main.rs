use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use indg::{
    best_response, equilibrium, hardness, io as game_io, scenario, welfare, Error, NashMode,
    PlayerStatus, ReportFormat, ScenarioConfig,
};

#[derive(Parser)]
#[command(
    name = "indg",
    version,
    about = "Interconnection network design game: equilibria, best responses, and experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Table,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Brute,
    Star,
}

impl From<ModeArg> for NashMode {
    fn from(value: ModeArg) -> Self {
        match value {
            ModeArg::Brute => NashMode::BruteForce,
            ModeArg::Star => NashMode::StarRestricted,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a multi-trial scenario from a TOML config and report statistics.
    Simulate {
        config: PathBuf,
        /// Override the config's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the config's trial count.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct the hub equilibrium for an instance file.
    Equilibrium {
        instance: PathBuf,
        /// Write the equilibrium profile here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also export the combined network as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compute one player's best response against a fixed profile.
    BestResponse {
        instance: PathBuf,
        #[arg(long)]
        player: usize,
        /// Fixed actions of the other players (defaults to all empty).
        #[arg(long)]
        profile: Option<PathBuf>,
        /// Use the star-restricted two-action search instead of the
        /// exhaustive one.
        #[arg(long)]
        star: bool,
    },
    /// Check whether a profile is a Nash equilibrium. Exits 6 when not.
    VerifyNe {
        instance: PathBuf,
        profile: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Brute)]
        mode: ModeArg,
    },
    /// Exhaustive price-of-anarchy analysis of a small instance.
    Poa { instance: PathBuf },
    /// Build the single-player threshold instance for a dominating-set
    /// question and print it in instance format.
    ReduceDs {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// Also run both brute-force deciders and check they agree.
        #[arg(long)]
        verify: bool,
    },
    /// Generate a random graph and write it in edge-list format.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
}

#[derive(Args, Debug)]
struct GenCommon {
    #[arg(long)]
    nodes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Wire node 0 to every other node after generation.
    #[arg(long)]
    hub: bool,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GenFamily {
    /// Preferential attachment with a complete seed graph.
    Sf {
        #[command(flatten)]
        common: GenCommon,
        #[arg(long, default_value_t = 5)]
        init: usize,
        #[arg(long, default_value_t = 1)]
        attach: usize,
    },
    /// Independent edges with probability p.
    Er {
        #[command(flatten)]
        common: GenCommon,
        #[arg(long)]
        p: f64,
    },
    /// Geometric threshold graph on a square.
    Gr {
        #[command(flatten)]
        common: GenCommon,
        #[arg(long, default_value_t = 2.0)]
        side: f64,
        #[arg(long, default_value_t = 0.18)]
        radius: f64,
    },
}

fn exit_code(err: &Error) -> i32 {
    match err.category() {
        "argument" => 2,
        "capacity" => 3,
        "parse" => 4,
        "io" => 5,
        "verification" => 6,
        _ => 1,
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_output(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load_instance(path: &Path) -> Result<indg::GameInstance, Error> {
    game_io::parse_instance(&read_file(path)?)
}

fn action_display(action: &BTreeSet<usize>) -> String {
    if action.is_empty() {
        "(empty)".to_string()
    } else {
        action
            .iter()
            .map(|j| format!("y{j}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Simulate {
            config,
            seed,
            trials,
            format,
            out,
        } => {
            let mut cfg = ScenarioConfig::load(&config)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(trials) = trials {
                cfg.trials = trials;
            }
            let report = scenario::run_scenario(&cfg)?;
            let fmt = match format {
                FormatArg::Csv => ReportFormat::Csv,
                FormatArg::Table => ReportFormat::PrettyTable,
            };
            write_output(out.as_deref(), &scenario::emit_report(&report, fmt))?;
            Ok(0)
        }
        Command::Equilibrium { instance, out, dot } => {
            let inst = load_instance(&instance)?;
            let (profile, trace) = equilibrium::star_nash_equilibrium(&inst)?;
            let report = equilibrium::free_rider_report(&trace);
            write_output(out.as_deref(), &game_io::write_profile(&profile))?;
            if out.is_some() {
                println!("profile written");
            }
            println!("trace: {}", serde_json::to_string_pretty(&trace)?);
            for (i, status) in report.iter().enumerate() {
                let label = match status {
                    PlayerStatus::Builder => "builder (hub edge)".to_string(),
                    PlayerStatus::FullWiring => "full wiring (low cost)".to_string(),
                    PlayerStatus::FreeRider { via } => format!("free rider via player {via}"),
                    PlayerStatus::OptOut => "opted out (edges never pay)".to_string(),
                };
                println!("player {i}: {label}");
            }
            if let Some(dot_path) = dot {
                scenario::export_dot(&inst, &profile, &dot_path)?;
                println!("dot written to {}", dot_path.display());
            }
            Ok(0)
        }
        Command::BestResponse {
            instance,
            player,
            profile,
            star,
        } => {
            let inst = load_instance(&instance)?;
            let fixed = match profile {
                Some(path) => game_io::parse_profile(&read_file(&path)?, inst.n(), inst.m())?,
                None => indg::StrategyProfile::empty(inst.n()),
            };
            let result = if star {
                let hub = indg::find_hub(inst.g2()).ok_or_else(|| {
                    Error::InvalidArgument("g2 has no hub for --star mode".to_string())
                })?;
                best_response::star_best_response(&inst, &fixed, player, hub)?
            } else {
                best_response::brute_force_best_response(&inst, &fixed, player)?
            };
            println!("player {player} best response: {}", action_display(&result.action));
            println!("utility: {}", result.utility);
            println!("pruning: {}", serde_json::to_string(&result.pruning_trace)?);
            Ok(0)
        }
        Command::VerifyNe {
            instance,
            profile,
            mode,
        } => {
            let inst = load_instance(&instance)?;
            let profile = game_io::parse_profile(&read_file(&profile)?, inst.n(), inst.m())?;
            let check = best_response::is_nash_equilibrium(&inst, &profile, mode.into())?;
            if check.is_equilibrium {
                println!("equilibrium: yes");
                Ok(0)
            } else {
                let dev = check.deviation.expect("non-equilibrium carries a witness");
                println!("equilibrium: no");
                println!(
                    "player {} improves from {} to {} with {}",
                    dev.player,
                    dev.current_utility,
                    dev.improved_utility,
                    action_display(&dev.action)
                );
                Ok(6)
            }
        }
        Command::Poa { instance } => {
            let inst = load_instance(&instance)?;
            let result = welfare::price_of_anarchy(&inst)?;
            println!("optimal welfare: {}", result.optimal_welfare);
            println!("equilibria found: {}", result.equilibrium_count);
            match result.min_equilibrium_welfare {
                Some(w) => println!("worst equilibrium welfare: {w}"),
                None => println!("worst equilibrium welfare: n/a"),
            }
            let poa = match result.poa {
                welfare::PoaValue::Finite(v) => format!("{v}"),
                welfare::PoaValue::Infinite => "infinite".to_string(),
                welfare::PoaValue::Undefined => "undefined".to_string(),
                welfare::PoaValue::NoEquilibrium => "no equilibrium".to_string(),
            };
            println!("price of anarchy: {poa}");
            println!("socially optimal profile:");
            print!("{}", game_io::write_profile(&result.optimal_profile));
            Ok(0)
        }
        Command::ReduceDs { graph, k, verify } => {
            let g = indg::graph::parse_edge_list(&read_file(&graph)?)?;
            let bri = hardness::reduce_dominating_set(&g, k)?;
            print!("{}", game_io::write_instance(&bri.game));
            println!("# threshold {}", bri.threshold);
            if verify {
                let agree = hardness::verify_reduction(&g, k)?;
                let ds = hardness::decide_dominating_set_brute(&g, k)?;
                println!("# dominating set of size <= {k}: {}", if ds { "yes" } else { "no" });
                println!("# deciders agree: {}", if agree { "yes" } else { "no" });
                if !agree {
                    return Err(Error::Verification(
                        "reduction deciders disagree".to_string(),
                    )
                    .into());
                }
            }
            Ok(0)
        }
        Command::Gen { family } => {
            let (common, graph) = match family {
                GenFamily::Sf {
                    common,
                    init,
                    attach,
                } => {
                    let g = indg::random_graphs::preferential_attachment(
                        common.nodes,
                        init,
                        attach,
                        common.seed,
                    )?;
                    let header = format!(
                        "# gen sf nodes={} init={init} attach={attach} seed={}\n",
                        common.nodes, common.seed
                    );
                    (common, (g, header))
                }
                GenFamily::Er { common, p } => {
                    let g = indg::random_graphs::erdos_renyi(common.nodes, p, common.seed)?;
                    let header = format!(
                        "# gen er nodes={} p={p} seed={}\n",
                        common.nodes, common.seed
                    );
                    (common, (g, header))
                }
                GenFamily::Gr {
                    common,
                    side,
                    radius,
                } => {
                    let g = indg::random_graphs::geometric_random(
                        common.nodes,
                        side,
                        radius,
                        common.seed,
                    )?;
                    let header = format!(
                        "# gen gr nodes={} side={side} radius={radius} seed={}\n",
                        common.nodes, common.seed
                    );
                    (common, (g, header))
                }
            };
            let (mut g, mut header) = graph;
            if common.hub {
                g = indg::random_graphs::add_hub(&g, 0)?;
                header = header.trim_end().to_string() + " hub=0\n";
            }
            let text = header + &indg::graph::write_edge_list(&g);
            write_output(common.out.as_deref(), &text)?;
            Ok(0)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = err
                .downcast_ref::<Error>()
                .map(exit_code)
                .unwrap_or(1);
            std::process::exit(code);
        }
    }
}
