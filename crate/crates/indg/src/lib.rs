//! Interconnection network design game with distance utilities.
//!
//! Players sit on the nodes of one network and buy edges into a second
//! network to shorten their paths to the nodes they depend on, trading hop
//! benefits against per-edge costs. The crate provides:
//!
//! - [`graph`]: simple graphs, BFS distances, diameter, hub detection, and
//!   exact/greedy minimum dominating sets;
//! - [`game`]: instances, strategy profiles, the distance utility, cost
//!   classification, and the per-player radius thresholds;
//! - [`best_response`]: exhaustive lemma-pruned best responses, Nash
//!   verification, sequential dynamics, and the disjoint-paths check;
//! - [`equilibrium`]: the constructive equilibrium for hub-and-spoke
//!   second networks with complete dependencies;
//! - [`hardness`]: the dominating-set reduction with brute-force deciders;
//! - [`welfare`]: socially optimal profiles and the price of anarchy;
//! - [`random_graphs`]: seeded scale-free, Erdős–Rényi, and geometric
//!   generators plus cost samplers;
//! - [`scenario`]: multi-trial experiment orchestration and reporting;
//! - [`io`]: text formats for instances and profiles.

pub mod best_response;
pub mod equilibrium;
mod error;
pub mod game;
pub mod graph;
pub mod hardness;
pub mod io;
mod numeric;
pub mod random_graphs;
pub mod scenario;
pub mod welfare;

pub use best_response::{
    brute_force_best_response, check_disjoint_shortest_paths, is_nash_equilibrium,
    sequential_brd, star_best_response, BestResponseResult, DisjointnessMode, NashCheck,
    NashMode, PruneRule,
};
pub use equilibrium::{free_rider_report, star_nash_equilibrium, EquilibriumTrace, PlayerStatus};
pub use error::{Error, Result};
pub use game::{
    big_r_radius, classify, combine, l_radius, player_utility, r_neighborhood, r_radius,
    social_welfare, BenefitFunction, CostClass, GameInstance, Player, Radius, StrategyProfile,
};
pub use graph::{
    bfs_distances, diameter, find_hub, min_dominating_set, DistanceMap, DominatingSet,
    DominatingSetMode, Graph,
};
pub use hardness::{
    decide_bri_brute, decide_dominating_set_brute, reduce_dominating_set, verify_reduction,
    BriInstance,
};
pub use scenario::{
    emit_report, export_dot, render_dot, run_scenario, ReportFormat, ScenarioConfig,
    ScenarioReport,
};
pub use welfare::{enumerate_equilibria, price_of_anarchy, socially_optimal, PoaResult, PoaValue};
