//! The interconnection game itself: two fixed networks, a bipartite
//! dependency relation between them, heterogeneous players sitting on the
//! first network, and the distance-based utility they maximize.
//!
//! Player `i` lives on node `i` of `g1` and buys edges from its node into
//! `g2`. In the combined graph, `g1` nodes keep their indices and `g2`
//! node `j` becomes `n + j`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, bfs_with_source_neighbors, DistanceMap, Graph};
use crate::numeric::{approx_ge, approx_le, strictly_greater};

/// Finite benefit table `b(1)..b(K)` with an implicit zero tail; lookups at
/// distances beyond the horizon, and at unreachable (`None`), return 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenefitFunction {
    table: Vec<f64>,
}

impl BenefitFunction {
    /// Validates nonnegativity and the nonincreasing property.
    pub fn new(table: Vec<f64>) -> Result<Self> {
        if table.is_empty() {
            return Err(Error::invalid("benefit table must have at least one entry"));
        }
        for (k, &b) in table.iter().enumerate() {
            if !b.is_finite() || b < 0.0 {
                return Err(Error::invalid(format!(
                    "benefit b({}) = {b} must be finite and nonnegative",
                    k + 1
                )));
            }
            if k > 0 && b > table[k - 1] {
                return Err(Error::invalid(format!(
                    "benefit table must be nonincreasing, but b({}) = {} < b({}) = {b}",
                    k,
                    table[k - 1],
                    k + 1
                )));
            }
        }
        Ok(BenefitFunction { table })
    }

    /// Horizon `K` of the explicit table.
    pub fn horizon(&self) -> usize {
        self.table.len()
    }

    /// `b(k)` for 1-based `k`, zero beyond the horizon.
    pub fn value_at(&self, k: usize) -> f64 {
        if k == 0 {
            return self.table[0];
        }
        self.table.get(k - 1).copied().unwrap_or(0.0)
    }

    /// Benefit of a node at the given distance; unreachable contributes 0.
    pub fn eval(&self, distance: Option<u32>) -> f64 {
        match distance {
            None => 0.0,
            Some(d) => self.value_at(d as usize),
        }
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }
}

/// Per-player benefit function and edge cost. The player's home node and
/// dependency set live on the [`GameInstance`], keyed by player index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Player {
    pub benefit: BenefitFunction,
    pub edge_cost: f64,
}

impl Player {
    pub fn new(benefit: BenefitFunction, edge_cost: f64) -> Result<Self> {
        if !edge_cost.is_finite() || edge_cost <= 0.0 {
            return Err(Error::invalid(format!(
                "edge cost must be positive, got {edge_cost}"
            )));
        }
        Ok(Player { benefit, edge_cost })
    }
}

/// Whether building a first direct edge pays for itself against the best
/// indirect alternative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CostClass {
    /// `b(1) - b(2) < c`: direct edges are individually unprofitable.
    HighCost,
    /// `b(1) - b(2) >= c`: wiring every dependency directly is optimal.
    LowCost,
}

/// Classifies a player by comparing `b(1) - b(2)` against its edge cost.
/// The boundary case counts as low-cost.
pub fn classify(player: &Player) -> CostClass {
    let diff = player.benefit.value_at(1) - player.benefit.value_at(2);
    if approx_ge(diff, player.edge_cost) {
        CostClass::LowCost
    } else {
        CostClass::HighCost
    }
}

/// A distance threshold that may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Radius {
    Finite(u32),
    Infinite,
}

impl Radius {
    pub fn is_finite(&self) -> bool {
        matches!(self, Radius::Finite(_))
    }

    pub fn finite(&self) -> Option<u32> {
        match self {
            Radius::Finite(r) => Some(*r),
            Radius::Infinite => None,
        }
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Finite(r) => write!(f, "{r}"),
            Radius::Infinite => write!(f, "inf"),
        }
    }
}

/// Largest `L` with `b(1) - c + (m-1) b(2) <= m b(L+1)`: within this
/// distance of a fully wired player, staying unwired beats building.
/// Infinite when the left-hand side is negative (building never pays).
pub fn l_radius(player: &Player, m: usize) -> Radius {
    debug_assert!(m >= 1);
    let b = &player.benefit;
    let lhs = b.value_at(1) - player.edge_cost + (m as f64 - 1.0) * b.value_at(2);
    // The condition is monotone: once it fails it fails for all larger L.
    // At L = K the right side is zero, so a pass there means it holds forever.
    for l in 0..=b.horizon() {
        if !approx_le(lhs, m as f64 * b.value_at(l + 1)) {
            debug_assert!(l > 0, "L-radius condition cannot fail at L = 0");
            return Radius::Finite(l as u32 - 1);
        }
    }
    Radius::Infinite
}

/// Largest `r` with `b(1) - c + (m-1) b(2) <= b(r+1) + (m-1) b(r+2)`:
/// within this distance of a node wired to a hub, staying unwired beats
/// building. Infinite exactly when the left-hand side is negative.
pub fn r_radius(player: &Player, m: usize) -> Radius {
    debug_assert!(m >= 1);
    let b = &player.benefit;
    let lhs = b.value_at(1) - player.edge_cost + (m as f64 - 1.0) * b.value_at(2);
    for r in 0..=b.horizon() {
        let rhs = b.value_at(r + 1) + (m as f64 - 1.0) * b.value_at(r + 2);
        if !approx_le(lhs, rhs) {
            debug_assert!(r > 0, "r-radius condition cannot fail at r = 0");
            return Radius::Finite(r as u32 - 1);
        }
    }
    Radius::Infinite
}

/// Smallest `R > 0` with `b(1) - c > b(R+1)`, defined only when
/// `b(1) - c > 0` (returns `None` otherwise). The zero tail guarantees a
/// finite value whenever defined.
pub fn big_r_radius(player: &Player) -> Option<Radius> {
    let b = &player.benefit;
    let gain = b.value_at(1) - player.edge_cost;
    if !strictly_greater(gain, 0.0) {
        return None;
    }
    for r in 1..=b.horizon() + 1 {
        if strictly_greater(gain, b.value_at(r + 1)) {
            return Some(Radius::Finite(r as u32));
        }
    }
    Some(Radius::Infinite)
}

/// A full game instance: the two fixed networks, the dependency relation,
/// and the players. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GameInstance {
    g1: Graph,
    g2: Graph,
    /// Sorted dependency targets in `g2` per player (its neighborhood in
    /// the bipartite dependency network).
    deps: Vec<Vec<usize>>,
    players: Vec<Player>,
}

impl GameInstance {
    /// Builds an instance from explicit dependency edges `(i, j)` meaning
    /// player `i` depends on `g2` node `j`.
    pub fn new(
        g1: Graph,
        g2: Graph,
        dependency_edges: &[(usize, usize)],
        players: Vec<Player>,
    ) -> Result<Self> {
        let n = g1.node_count();
        let m = g2.node_count();
        if players.len() != n {
            return Err(Error::invalid(format!(
                "expected {n} players (one per g1 node), got {}",
                players.len()
            )));
        }
        let mut deps: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(i, j) in dependency_edges {
            if i >= n {
                return Err(Error::invalid(format!(
                    "dependency edge ({i}, {j}): player {i} out of range"
                )));
            }
            if j >= m {
                return Err(Error::invalid(format!(
                    "dependency edge ({i}, {j}): g2 node {j} out of range"
                )));
            }
            deps[i].insert(j);
        }
        Ok(GameInstance {
            g1,
            g2,
            deps: deps.into_iter().map(|s| s.into_iter().collect()).collect(),
            players,
        })
    }

    /// Instance where every player depends on every `g2` node.
    pub fn with_complete_dependencies(g1: Graph, g2: Graph, players: Vec<Player>) -> Result<Self> {
        let n = g1.node_count();
        let m = g2.node_count();
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
        GameInstance::new(g1, g2, &edges, players)
    }

    pub fn g1(&self) -> &Graph {
        &self.g1
    }

    pub fn g2(&self) -> &Graph {
        &self.g2
    }

    pub fn n(&self) -> usize {
        self.g1.node_count()
    }

    pub fn m(&self) -> usize {
        self.g2.node_count()
    }

    pub fn player(&self, i: usize) -> &Player {
        &self.players[i]
    }

    pub fn players(&self) -> &[Player] {
        &self.players
    }

    /// Sorted dependency targets of player `i`.
    pub fn dependencies(&self, i: usize) -> &[usize] {
        &self.deps[i]
    }

    pub fn dependency_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.deps
            .iter()
            .enumerate()
            .flat_map(|(i, ds)| ds.iter().map(move |&j| (i, j)))
    }

    pub fn is_complete_bipartite(&self) -> bool {
        let m = self.m();
        self.deps.iter().all(|d| d.len() == m)
    }

    /// Index of `g2` node `j` in the combined graph.
    pub fn combined_v2(&self, j: usize) -> usize {
        self.n() + j
    }

    pub fn check_player(&self, i: usize) -> Result<()> {
        if i >= self.n() {
            return Err(Error::invalid(format!(
                "player {i} out of range for {}-player instance",
                self.n()
            )));
        }
        Ok(())
    }
}

/// One action per player: the set of `g2` node indices its home node is
/// wired to. Incidence to the player's own node is structural, so the
/// strategy-space invariants hold by construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrategyProfile {
    actions: Vec<BTreeSet<usize>>,
}

impl StrategyProfile {
    pub fn empty(n: usize) -> Self {
        StrategyProfile {
            actions: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_actions(actions: Vec<BTreeSet<usize>>) -> Self {
        StrategyProfile { actions }
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn action(&self, i: usize) -> &BTreeSet<usize> {
        &self.actions[i]
    }

    pub fn actions(&self) -> &[BTreeSet<usize>] {
        &self.actions
    }

    pub fn set_action(&mut self, i: usize, action: BTreeSet<usize>) {
        self.actions[i] = action;
    }

    /// Total number of interconnection edges across all players.
    pub fn edge_count(&self) -> usize {
        self.actions.iter().map(BTreeSet::len).sum()
    }

    fn validate_for(&self, inst: &GameInstance) -> Result<()> {
        if self.actions.len() != inst.n() {
            return Err(Error::invalid(format!(
                "profile has {} actions but instance has {} players",
                self.actions.len(),
                inst.n()
            )));
        }
        for (i, action) in self.actions.iter().enumerate() {
            if let Some(&j) = action.iter().next_back() {
                if j >= inst.m() {
                    return Err(Error::invalid(format!(
                        "player {i} wires to g2 node {j}, out of range for m = {}",
                        inst.m()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The combined graph on `V1 ∪ V2`: `g1` edges, `g2` edges, and every
/// interconnection edge of the profile. `g1` nodes keep indices `0..n`;
/// `g2` node `j` becomes `n + j`.
pub fn combine(inst: &GameInstance, profile: &StrategyProfile) -> Result<Graph> {
    profile.validate_for(inst)?;
    let n = inst.n();
    let mut g = Graph::new(n + inst.m());
    for (u, v) in inst.g1.edges() {
        g.add_edge(u, v)?;
    }
    for (u, v) in inst.g2.edges() {
        g.add_edge(n + u, n + v)?;
    }
    for (i, action) in profile.actions.iter().enumerate() {
        for &j in action {
            g.add_edge(i, n + j)?;
        }
    }
    Ok(g)
}

/// Evaluates player utilities against a fixed profile, including unilateral
/// deviations, without rebuilding the combined graph per candidate action.
///
/// A shortest path from a node never revisits it, so swapping player `i`'s
/// interconnection edges only changes the neighbor list used when expanding
/// its own node: one BFS with an overridden source row per candidate action.
pub struct ProfileEvaluator<'a> {
    inst: &'a GameInstance,
    combined: Graph,
}

impl<'a> ProfileEvaluator<'a> {
    pub fn new(inst: &'a GameInstance, profile: &StrategyProfile) -> Result<Self> {
        let combined = combine(inst, profile)?;
        Ok(ProfileEvaluator { inst, combined })
    }

    pub fn combined(&self) -> &Graph {
        &self.combined
    }

    /// Distances from player `i`'s node when it deviates to `action`
    /// (everyone else keeps the profile the evaluator was built with).
    pub fn distances_with_action(&self, i: usize, action: &BTreeSet<usize>) -> DistanceMap {
        let mut row: Vec<usize> = self.inst.g1.neighbors(i).to_vec();
        row.extend(action.iter().map(|&j| self.inst.combined_v2(j)));
        bfs_with_source_neighbors(&self.combined, i, &row)
    }

    /// Utility of player `i` deviating to `action` against the fixed rest.
    pub fn utility_of(&self, i: usize, action: &BTreeSet<usize>) -> f64 {
        let dist = self.distances_with_action(i, action);
        self.utility_from_distances(i, action.len(), &dist)
    }

    /// Benefit sum minus edge cost, given precomputed distances for the
    /// candidate action.
    pub fn utility_from_distances(&self, i: usize, action_size: usize, dist: &DistanceMap) -> f64 {
        let player = &self.inst.players[i];
        let benefit: f64 = self
            .inst
            .dependencies(i)
            .iter()
            .map(|&j| player.benefit.eval(dist.get(self.inst.combined_v2(j))))
            .sum();
        benefit - player.edge_cost * action_size as f64
    }
}

/// Utility of player `i` under the profile: the benefit of each dependency
/// at its combined-graph distance, minus cost times edges built.
pub fn player_utility(inst: &GameInstance, profile: &StrategyProfile, i: usize) -> Result<f64> {
    inst.check_player(i)?;
    let eval = ProfileEvaluator::new(inst, profile)?;
    Ok(eval.utility_of(i, profile.action(i)))
}

/// Sum of all player utilities under the profile.
pub fn social_welfare(inst: &GameInstance, profile: &StrategyProfile) -> Result<f64> {
    let eval = ProfileEvaluator::new(inst, profile)?;
    Ok((0..inst.n())
        .map(|i| eval.utility_of(i, profile.action(i)))
        .sum())
}

/// Home nodes of high-cost players within `g1` distance `r_i` of player
/// `i`'s home (includes the home itself when the player is high-cost). An
/// infinite radius admits every high-cost home in the component.
pub fn r_neighborhood(inst: &GameInstance, i: usize, radii: &[Radius]) -> Result<BTreeSet<usize>> {
    inst.check_player(i)?;
    if radii.len() != inst.n() {
        return Err(Error::invalid(format!(
            "expected {} radii, got {}",
            inst.n(),
            radii.len()
        )));
    }
    let dist = bfs_distances(&inst.g1, i)?;
    let mut out = BTreeSet::new();
    for j in 0..inst.n() {
        if classify(inst.player(j)) != CostClass::HighCost {
            continue;
        }
        let within = match (dist.get(j), radii[i]) {
            (None, _) => false,
            (Some(_), Radius::Infinite) => true,
            (Some(d), Radius::Finite(r)) => d <= r,
        };
        if within {
            out.insert(j);
        }
    }
    Ok(out)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::Graph;

    pub(crate) fn bf(table: &[f64]) -> BenefitFunction {
        BenefitFunction::new(table.to_vec()).unwrap()
    }

    pub(crate) fn player(table: &[f64], cost: f64) -> Player {
        Player::new(bf(table), cost).unwrap()
    }

    fn star(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (0, v))).unwrap()
    }

    /// Example instance used across modules: a 9-player network wired to a
    /// 7-node star, all dependencies present, unit edge costs.
    pub(crate) fn nine_player_instance() -> GameInstance {
        let g1 = Graph::from_edges(
            9,
            [
                (0, 7),
                (6, 7),
                (2, 6),
                (2, 4),
                (2, 5),
                (1, 2),
                (3, 5),
                (1, 8),
            ],
        )
        .unwrap();
        let g2 = star(7);
        let tables: [&[f64]; 9] = [
            &[1.5, 1.3, 1.2, 1.1, 0.2],
            &[1.2, 0.8, 0.5, 0.2, 0.0],
            &[1.1, 0.9, 0.1, 0.0, 0.0],
            &[0.9, 0.8, 0.7, 0.5, 0.2],
            &[1.2, 1.1, 0.9, 0.2, 0.1],
            &[1.3, 1.0, 0.5, 0.4, 0.3],
            &[3.0, 1.0, 0.5, 0.5, 0.4],
            &[1.2, 0.8, 0.7, 0.5, 0.4],
            &[1.2, 1.1, 1.1, 1.0, 0.2],
        ];
        let players = tables.iter().map(|t| player(t, 1.0)).collect();
        GameInstance::with_complete_dependencies(g1, g2, players).unwrap()
    }

    #[test]
    fn benefit_rejects_increasing_table() {
        assert!(BenefitFunction::new(vec![1.0, 1.2]).is_err());
        assert!(BenefitFunction::new(vec![]).is_err());
        assert!(BenefitFunction::new(vec![1.0, -0.1]).is_err());
        assert!(BenefitFunction::new(vec![1.0, 1.0, 0.5]).is_ok());
    }

    #[test]
    fn benefit_zero_tail_and_unreachable() {
        let b = bf(&[1.2, 0.7]);
        assert_eq!(b.eval(Some(1)), 1.2);
        assert_eq!(b.eval(Some(2)), 0.7);
        assert_eq!(b.eval(Some(3)), 0.0);
        assert_eq!(b.eval(Some(100)), 0.0);
        assert_eq!(b.eval(None), 0.0);
    }

    #[test]
    fn classify_examples() {
        // Low-cost: b(1) - b(2) = 2 >= 1.
        assert_eq!(
            classify(&player(&[3.0, 1.0, 0.5, 0.5, 0.4], 1.0)),
            CostClass::LowCost
        );
        // High-cost: 0.2 < 1.
        assert_eq!(
            classify(&player(&[1.5, 1.3, 1.2, 1.1, 0.2], 1.0)),
            CostClass::HighCost
        );
        // Exact boundary counts as low-cost.
        assert_eq!(classify(&player(&[2.0, 1.0], 1.0)), CostClass::LowCost);
    }

    #[test]
    fn radii_match_nine_player_table() {
        let inst = nine_player_instance();
        let expected: [(Radius, Radius); 9] = [
            (Radius::Finite(2), Radius::Finite(1)),
            (Radius::Finite(1), Radius::Finite(0)),
            (Radius::Finite(1), Radius::Finite(0)),
            (Radius::Finite(2), Radius::Finite(1)),
            (Radius::Finite(1), Radius::Finite(0)),
            (Radius::Finite(1), Radius::Finite(0)),
            (Radius::Finite(0), Radius::Finite(0)), // low-cost: values unused
            (Radius::Finite(1), Radius::Finite(1)),
            (Radius::Finite(3), Radius::Finite(2)),
        ];
        for i in 0..9 {
            if i == 6 {
                assert_eq!(classify(inst.player(i)), CostClass::LowCost);
                continue;
            }
            assert_eq!(l_radius(inst.player(i), 7), expected[i].0, "L for player {i}");
            assert_eq!(r_radius(inst.player(i), 7), expected[i].1, "r for player {i}");
        }
    }

    #[test]
    fn radii_full_scale_homogeneous() {
        let p = player(&[1.2, 0.7, 0.6, 0.5, 0.3, 0.2], 1250.0);
        assert_eq!(r_radius(&p, 5000), Radius::Finite(2));
        assert_eq!(l_radius(&p, 5000), Radius::Finite(3));
    }

    #[test]
    fn radii_infinite_when_building_never_pays() {
        // b(1) - c + (m-1) b(2) = 1 - 2.1 + 1 = -0.1 < 0.
        let p = player(&[1.0, 1.0, 1.0], 2.1);
        assert_eq!(l_radius(&p, 2), Radius::Infinite);
        assert_eq!(r_radius(&p, 2), Radius::Infinite);
    }

    #[test]
    fn big_r_radius_cases() {
        // b(3) > b(1) - c > b(4) gives R = 3.
        let p = player(&[1.0, 0.9, 0.8, 0.3, 0.2], 0.25);
        assert_eq!(big_r_radius(&p), Some(Radius::Finite(3)));
        // b(1) - c > b(2): first index qualifies.
        let p = player(&[1.0, 0.2], 0.5);
        assert_eq!(big_r_radius(&p), Some(Radius::Finite(1)));
        // Not defined when the first edge does not pay at distance one.
        let p = player(&[1.0, 0.9], 1.0);
        assert_eq!(big_r_radius(&p), None);
    }

    #[test]
    fn radius_ordering_random_tables() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(0xA1);
        for _ in 0..1000 {
            let k = rng.gen_range(1..=6);
            let mut t: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..3.0)).collect();
            t.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let p = player(&t, rng.gen_range(0.01..4.0));
            let m = rng.gen_range(1..=9);
            let (l, r) = (l_radius(&p, m), r_radius(&p, m));
            // Infinite exactly when the shared left-hand side is negative.
            let lhs = t[0] - p.edge_cost + (m as f64 - 1.0) * p.benefit.value_at(2);
            assert_eq!(l == Radius::Infinite, lhs < 0.0, "table {t:?} m {m}");
            assert_eq!(r == Radius::Infinite, lhs < 0.0);
            if let (Radius::Finite(lf), Radius::Finite(rf)) = (l, r) {
                assert!(rf <= lf, "r {rf} > L {lf} for table {t:?}");
            }
        }
    }

    #[test]
    fn combine_empty_profile_is_disjoint_union() {
        let inst = nine_player_instance();
        let g = combine(&inst, &StrategyProfile::empty(9)).unwrap();
        assert_eq!(g.node_count(), 16);
        assert_eq!(g.edge_count(), 8 + 6);
        // No edge crosses the partition.
        assert!(g.edges().all(|(u, v)| (u < 9) == (v < 9)));
    }

    #[test]
    fn combine_single_edge_makes_a_path() {
        let inst = GameInstance::with_complete_dependencies(
            Graph::new(1),
            Graph::new(1),
            vec![player(&[1.0], 0.5)],
        )
        .unwrap();
        let mut profile = StrategyProfile::empty(1);
        profile.set_action(0, BTreeSet::from([0]));
        let g = combine(&inst, &profile).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn combine_rejects_size_mismatch() {
        let inst = nine_player_instance();
        let err = combine(&inst, &StrategyProfile::empty(4)).unwrap_err();
        assert_eq!(err.category(), "argument");
    }

    #[test]
    fn utility_zero_without_dependencies_or_edges() {
        let inst = GameInstance::new(
            Graph::new(2),
            Graph::new(2),
            &[],
            vec![player(&[1.0], 0.5), player(&[1.0], 0.5)],
        )
        .unwrap();
        let u = player_utility(&inst, &StrategyProfile::empty(2), 0).unwrap();
        assert_eq!(u, 0.0);
    }

    #[test]
    fn utility_star_to_star_single_edge() {
        // Two star networks joined center-to-center by the center player's
        // single edge: u = b(1) - c + (m-1) b(2).
        let (n, m) = (4, 3);
        let players: Vec<Player> = (0..n)
            .map(|_| player(&[1.0, 0.5, 0.5], 2.1))
            .collect();
        let inst =
            GameInstance::with_complete_dependencies(star(n), star(m), players).unwrap();
        let mut profile = StrategyProfile::empty(n);
        profile.set_action(0, BTreeSet::from([0]));
        let u0 = player_utility(&inst, &profile, 0).unwrap();
        assert!((u0 - (1.0 - 2.1 + 2.0 * 0.5)).abs() < 1e-12);
        // Leaf players reach the far hub in 2 and its leaves in 3.
        let u1 = player_utility(&inst, &profile, 1).unwrap();
        assert!((u1 - (0.5 + 2.0 * 0.5)).abs() < 1e-12);
        // Social welfare matches the closed form -0.1 + (n-1) m / (m-1).
        let t = social_welfare(&inst, &profile).unwrap();
        let expected = -0.1 + ((n - 1) * m) as f64 / (m as f64 - 1.0);
        assert!((t - expected).abs() < 1e-9, "welfare {t} vs {expected}");
    }

    #[test]
    fn welfare_zero_when_networks_disconnected() {
        let players = vec![player(&[1.0], 1.0), player(&[1.0], 1.0)];
        let inst =
            GameInstance::with_complete_dependencies(Graph::new(2), Graph::new(3), players)
                .unwrap();
        assert_eq!(
            social_welfare(&inst, &StrategyProfile::empty(2)).unwrap(),
            0.0
        );
    }

    /// Floyd–Warshall oracle, independent of the BFS path: recompute a
    /// player's utility from an explicit dense distance matrix.
    pub(crate) fn oracle_utility(
        inst: &GameInstance,
        profile: &StrategyProfile,
        i: usize,
    ) -> f64 {
        let n = inst.n();
        let total = n + inst.m();
        const INF: u32 = u32::MAX / 4;
        let mut d = vec![vec![INF; total]; total];
        for (v, row) in d.iter_mut().enumerate() {
            row[v] = 0;
        }
        let set = |d: &mut Vec<Vec<u32>>, u: usize, v: usize| {
            d[u][v] = 1;
            d[v][u] = 1;
        };
        for (u, v) in inst.g1.edges() {
            set(&mut d, u, v);
        }
        for (u, v) in inst.g2.edges() {
            set(&mut d, n + u, n + v);
        }
        for (p, action) in profile.actions().iter().enumerate() {
            for &j in action {
                set(&mut d, p, n + j);
            }
        }
        for k in 0..total {
            for u in 0..total {
                for v in 0..total {
                    let via = d[u][k].saturating_add(d[k][v]);
                    if via < d[u][v] {
                        d[u][v] = via;
                    }
                }
            }
        }
        let pl = inst.player(i);
        let benefit: f64 = inst
            .dependencies(i)
            .iter()
            .map(|&j| {
                let dist = d[i][n + j];
                if dist >= INF {
                    0.0
                } else {
                    pl.benefit.value_at(dist as usize)
                }
            })
            .sum();
        benefit - pl.edge_cost * profile.action(i).len() as f64
    }

    #[test]
    fn utility_matches_independent_recomputation() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(0xA2);
        for _ in 0..50 {
            let (n, m) = (2, 3);
            let g1 = Graph::from_edges(n, rng.gen_bool(0.5).then_some((0, 1))).unwrap();
            let mut g2 = Graph::new(m);
            for u in 0..m {
                for v in u + 1..m {
                    if rng.gen_bool(0.5) {
                        g2.add_edge(u, v).unwrap();
                    }
                }
            }
            let mut dep_edges = Vec::new();
            for i in 0..n {
                for j in 0..m {
                    if rng.gen_bool(0.6) {
                        dep_edges.push((i, j));
                    }
                }
            }
            let players: Vec<Player> = (0..n)
                .map(|_| {
                    let mut t: Vec<f64> = (0..4).map(|_| rng.gen_range(0.0..2.0)).collect();
                    t.sort_by(|a, b| b.partial_cmp(a).unwrap());
                    player(&t, rng.gen_range(0.05..2.0))
                })
                .collect();
            let inst = GameInstance::new(g1, g2, &dep_edges, players).unwrap();
            let mut profile = StrategyProfile::empty(n);
            for i in 0..n {
                let action: BTreeSet<usize> =
                    (0..m).filter(|_| rng.gen_bool(0.4)).collect();
                profile.set_action(i, action);
            }
            let mut total = 0.0;
            for i in 0..n {
                let fast = player_utility(&inst, &profile, i).unwrap();
                let slow = oracle_utility(&inst, &profile, i);
                assert!((fast - slow).abs() < 1e-12, "player {i}: {fast} vs {slow}");
                total += fast;
            }
            // Welfare is exactly the sum of the per-player values.
            assert_eq!(social_welfare(&inst, &profile).unwrap(), total);
        }
    }

    #[test]
    fn r_neighborhood_cases() {
        let inst = nine_player_instance();
        let radii: Vec<Radius> = (0..9)
            .map(|i| {
                if classify(inst.player(i)) == CostClass::LowCost {
                    Radius::Finite(0)
                } else {
                    r_radius(inst.player(i), 7)
                }
            })
            .collect();
        // Neighbor at distance 1 with r = 1 is inside the neighborhood.
        let n3 = r_neighborhood(&inst, 3, &radii).unwrap();
        assert!(n3.contains(&5), "expected node 5 in N_3, got {n3:?}");
        assert!(n3.contains(&3));

        // Radius 0 keeps only the player's own (high-cost) home.
        let n1 = r_neighborhood(&inst, 1, &radii).unwrap();
        assert_eq!(n1, BTreeSet::from([1]));
    }

    #[test]
    fn r_neighborhood_matches_bfs_on_path() {
        let g1 = Graph::from_edges(5, (0..4).map(|i| (i, i + 1))).unwrap();
        let players: Vec<Player> = (0..5).map(|_| player(&[1.0, 0.5], 2.0)).collect();
        let inst =
            GameInstance::with_complete_dependencies(g1, Graph::new(2), players).unwrap();
        let radii = vec![Radius::Finite(2); 5];
        let n2 = r_neighborhood(&inst, 2, &radii).unwrap();
        let dist = bfs_distances(inst.g1(), 2).unwrap();
        let expected: BTreeSet<usize> =
            (0..5).filter(|&j| dist.get(j).unwrap() <= 2).collect();
        assert_eq!(n2, expected);
    }
}
