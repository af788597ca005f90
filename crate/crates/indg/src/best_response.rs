//! Best-response search, Nash-equilibrium verification, sequential
//! best-response dynamics, and the disjoint-shortest-paths property check.
//!
//! The exhaustive search never enumerates blindly: the action size is
//! capped by the dependency count, tightened by the exact minimum
//! dominating set of `g2` for high-cost players, and short-circuited
//! entirely for players whose cost structure pins the optimum. Every rule
//! that fires is recorded so callers can audit what pruned the search.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{
    classify, combine, CostClass, GameInstance, ProfileEvaluator, StrategyProfile,
};
use crate::graph::{bfs_distances, find_hub, min_dominating_set, DominatingSetMode, Graph};
use crate::numeric::strictly_greater;

/// Search-space pruning rules that can apply to one best-response call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PruneRule {
    /// Action size capped at the dependency count.
    Lemma1Cap,
    /// Strictly low-cost player: full dependency wiring returned outright.
    Lemma2LowCost,
    /// High-cost player: size cap tightened to the exact minimum
    /// dominating set of `g2`.
    Lemma3DomCap,
    /// Cost exceeds the best case of a single edge: empty action returned.
    Lemma4Empty,
    /// Star restriction: only the empty action and the single hub edge
    /// were compared.
    Cor2StarPair,
}

/// Outcome of a best-response computation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BestResponseResult {
    pub action: BTreeSet<usize>,
    /// Utility of `action` against the fixed actions of everyone else.
    pub utility: f64,
    pub pruning_trace: Vec<PruneRule>,
}

/// Budgets for the exhaustive search.
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Maximum number of candidate actions to enumerate.
    pub max_candidates: u128,
    /// Node-count cap for computing the exact dominating set of `g2`.
    pub dominating_exact_cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_candidates: 1 << 20,
            dominating_exact_cap: 30,
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u128::MAX / 2 {
            return u128::MAX / 2;
        }
    }
    acc
}

/// Exhaustive lemma-pruned best response of player `i` against the other
/// players' actions in `profile`. Ties resolve to the action with fewer
/// edges, then lexicographically smallest target list.
pub fn brute_force_best_response(
    inst: &GameInstance,
    profile: &StrategyProfile,
    i: usize,
) -> Result<BestResponseResult> {
    brute_force_best_response_with(inst, profile, i, &SearchOptions::default())
}

pub fn brute_force_best_response_with(
    inst: &GameInstance,
    profile: &StrategyProfile,
    i: usize,
    options: &SearchOptions,
) -> Result<BestResponseResult> {
    inst.check_player(i)?;
    let eval = ProfileEvaluator::new(inst, profile)?;
    best_response_inner(inst, &eval, i, options)
}

fn best_response_inner(
    inst: &GameInstance,
    eval: &ProfileEvaluator<'_>,
    i: usize,
    options: &SearchOptions,
) -> Result<BestResponseResult> {
    let player = inst.player(i);
    let b = &player.benefit;
    let deps = inst.dependencies(i);
    let m = inst.m();

    // Strictly low-cost: the full dependency wiring is the unique optimum.
    if strictly_greater(b.value_at(1) - b.value_at(2), player.edge_cost) {
        let action: BTreeSet<usize> = deps.iter().copied().collect();
        let utility = eval.utility_of(i, &action);
        return Ok(BestResponseResult {
            action,
            utility,
            pruning_trace: vec![PruneRule::Lemma2LowCost],
        });
    }

    // Cost above the single-edge best case: the empty action is optimal.
    if !deps.is_empty()
        && strictly_greater(
            player.edge_cost,
            b.value_at(1) + (deps.len() as f64 - 1.0) * b.value_at(2),
        )
    {
        let action = BTreeSet::new();
        let utility = eval.utility_of(i, &action);
        return Ok(BestResponseResult {
            action,
            utility,
            pruning_trace: vec![PruneRule::Lemma4Empty],
        });
    }

    let mut trace = vec![PruneRule::Lemma1Cap];
    let mut cap = deps.len();
    if classify(player) == CostClass::HighCost && m <= options.dominating_exact_cap {
        let dom = min_dominating_set(
            inst.g2(),
            DominatingSetMode::Exact {
                cap: options.dominating_exact_cap,
            },
        )?;
        if dom.nodes.len() < cap {
            cap = dom.nodes.len();
            trace.push(PruneRule::Lemma3DomCap);
        }
    }

    let candidate_count: u128 = (0..=cap).map(|s| binomial(m, s)).sum();
    if candidate_count > options.max_candidates {
        return Err(Error::capacity(format!(
            "best-response search for player {i} has {candidate_count} candidates \
             (subsets of {m} targets up to size {cap}), over the budget of {}",
            options.max_candidates
        )));
    }

    let mut best_action = BTreeSet::new();
    let mut best_utility = eval.utility_of(i, &best_action);
    for size in 1..=cap {
        for combo in (0..m).combinations(size) {
            let action: BTreeSet<usize> = combo.into_iter().collect();
            let utility = eval.utility_of(i, &action);
            if strictly_greater(utility, best_utility) {
                best_utility = utility;
                best_action = action;
            }
        }
    }
    Ok(BestResponseResult {
        action: best_action,
        utility: best_utility,
        pruning_trace: trace,
    })
}

fn require_star_preconditions(inst: &GameInstance) -> Result<usize> {
    let hub = find_hub(inst.g2()).ok_or_else(|| {
        Error::invalid("g2 has no hub node adjacent to all others (no star subgraph)")
    })?;
    if !inst.is_complete_bipartite() {
        return Err(Error::invalid(
            "dependency network is not complete bipartite",
        ));
    }
    Ok(hub)
}

/// Best response under the star restriction: a low-cost player wires to
/// everything; a high-cost player only ever compares the empty action with
/// the single hub edge. Scales to thousands of `g2` nodes.
pub fn star_best_response(
    inst: &GameInstance,
    profile: &StrategyProfile,
    i: usize,
    hub: usize,
) -> Result<BestResponseResult> {
    inst.check_player(i)?;
    let canonical = require_star_preconditions(inst)?;
    if hub >= inst.m() || inst.g2().degree(hub) != inst.m() - 1 {
        return Err(Error::invalid(format!(
            "node {hub} is not a hub of g2 (canonical hub is {canonical})"
        )));
    }
    let eval = ProfileEvaluator::new(inst, profile)?;
    Ok(star_best_response_inner(inst, &eval, i, hub))
}

fn star_best_response_inner(
    inst: &GameInstance,
    eval: &ProfileEvaluator<'_>,
    i: usize,
    hub: usize,
) -> BestResponseResult {
    let player = inst.player(i);
    if classify(player) == CostClass::LowCost {
        let action: BTreeSet<usize> = (0..inst.m()).collect();
        let utility = eval.utility_of(i, &action);
        return BestResponseResult {
            action,
            utility,
            pruning_trace: vec![PruneRule::Lemma2LowCost],
        };
    }
    let empty = BTreeSet::new();
    let hub_only = BTreeSet::from([hub]);
    let u_empty = eval.utility_of(i, &empty);
    let u_hub = eval.utility_of(i, &hub_only);
    let (action, utility) = if strictly_greater(u_hub, u_empty) {
        (hub_only, u_hub)
    } else {
        (empty, u_empty)
    };
    BestResponseResult {
        action,
        utility,
        pruning_trace: vec![PruneRule::Cor2StarPair],
    }
}

/// Which candidate set Nash verification searches per player.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NashMode {
    /// Full lemma-pruned enumeration; subject to the search budget.
    BruteForce,
    /// Star-restricted two-action comparison; requires a hub in `g2` and
    /// complete dependencies.
    StarRestricted,
}

/// A strictly profitable unilateral deviation, as evidence against
/// equilibrium.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deviation {
    pub player: usize,
    pub action: BTreeSet<usize>,
    pub current_utility: f64,
    pub improved_utility: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NashCheck {
    pub is_equilibrium: bool,
    /// The lowest-index deviating player, when one exists.
    pub deviation: Option<Deviation>,
}

/// Checks whether `profile` is a pure Nash equilibrium: no player can
/// strictly improve (beyond the relative tolerance) by deviating.
pub fn is_nash_equilibrium(
    inst: &GameInstance,
    profile: &StrategyProfile,
    mode: NashMode,
) -> Result<NashCheck> {
    let hub = match mode {
        NashMode::StarRestricted => Some(require_star_preconditions(inst)?),
        NashMode::BruteForce => None,
    };
    let eval = ProfileEvaluator::new(inst, profile)?;
    let options = SearchOptions::default();
    for i in 0..inst.n() {
        let current = eval.utility_of(i, profile.action(i));
        let best = match mode {
            NashMode::BruteForce => best_response_inner(inst, &eval, i, &options)?,
            NashMode::StarRestricted => star_best_response_inner(inst, &eval, i, hub.unwrap()),
        };
        if strictly_greater(best.utility, current) {
            return Ok(NashCheck {
                is_equilibrium: false,
                deviation: Some(Deviation {
                    player: i,
                    action: best.action,
                    current_utility: current,
                    improved_utility: best.utility,
                }),
            });
        }
    }
    Ok(NashCheck {
        is_equilibrium: true,
        deviation: None,
    })
}

/// Result of running sequential best-response dynamics.
#[derive(Debug, Clone, PartialEq)]
pub struct BrdOutcome {
    pub profile: StrategyProfile,
    /// True when a full pass over the order produced no change.
    pub converged: bool,
    pub rounds_run: usize,
}

/// Repeatedly replaces each player's action (in the given order) with a
/// best response, keeping the current action on ties so equilibria are
/// fixed points. Stops after a no-change round or `max_rounds`.
pub fn sequential_brd(
    inst: &GameInstance,
    start: &StrategyProfile,
    order: &[usize],
    max_rounds: usize,
    mode: NashMode,
) -> Result<BrdOutcome> {
    let n = inst.n();
    let mut seen = vec![false; n];
    let is_permutation = order.len() == n
        && order
            .iter()
            .all(|&i| i < n && !std::mem::replace(&mut seen[i], true));
    if !is_permutation {
        return Err(Error::invalid(
            "order must be a permutation of all player indices",
        ));
    }
    if start.len() != n {
        return Err(Error::invalid(format!(
            "start profile has {} actions but instance has {n} players",
            start.len()
        )));
    }
    let hub = match mode {
        NashMode::StarRestricted => Some(require_star_preconditions(inst)?),
        NashMode::BruteForce => None,
    };
    let options = SearchOptions::default();
    let mut profile = start.clone();
    let mut rounds_run = 0;
    for _ in 0..max_rounds {
        rounds_run += 1;
        let mut changed = false;
        for &i in order {
            let eval = ProfileEvaluator::new(inst, &profile)?;
            let current = eval.utility_of(i, profile.action(i));
            let best = match mode {
                NashMode::BruteForce => best_response_inner(inst, &eval, i, &options)?,
                NashMode::StarRestricted => {
                    star_best_response_inner(inst, &eval, i, hub.unwrap())
                }
            };
            if strictly_greater(best.utility, current) {
                profile.set_action(i, best.action);
                changed = true;
            }
        }
        if !changed {
            return Ok(BrdOutcome {
                profile,
                converged: true,
                rounds_run,
            });
        }
    }
    Ok(BrdOutcome {
        profile,
        converged: false,
        rounds_run,
    })
}

/// Quantifier used for the disjoint-shortest-paths check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisjointnessMode {
    /// There exists a choice of shortest paths (one per dependency and
    /// player) whose interior `g1` nodes are disjoint across the players.
    SomeSelection,
    /// Every `g1` node on any shortest path of one player avoids every
    /// shortest path of the other.
    AllPaths,
}

/// Budgets for the explicit path enumeration fallback.
#[derive(Debug, Clone, Copy)]
pub struct PathBudget {
    pub max_paths_per_dependency: usize,
    pub max_selections: usize,
}

impl Default for PathBudget {
    fn default() -> Self {
        PathBudget {
            max_paths_per_dependency: 4096,
            max_selections: 65536,
        }
    }
}

/// Whether players `i` and `j` can route to their dependencies along
/// shortest paths whose interior `g1` nodes do not overlap across the two
/// players (the interiors exclude each path's own endpoints). Uses the
/// some-selection reading; see [`check_disjoint_shortest_paths_mode`] for
/// the strict all-paths variant.
pub fn check_disjoint_shortest_paths(
    inst: &GameInstance,
    profile: &StrategyProfile,
    i: usize,
    j: usize,
) -> Result<bool> {
    check_disjoint_shortest_paths_mode(
        inst,
        profile,
        i,
        j,
        DisjointnessMode::SomeSelection,
        &PathBudget::default(),
    )
}

pub fn check_disjoint_shortest_paths_mode(
    inst: &GameInstance,
    profile: &StrategyProfile,
    i: usize,
    j: usize,
    mode: DisjointnessMode,
    budget: &PathBudget,
) -> Result<bool> {
    inst.check_player(i)?;
    inst.check_player(j)?;
    if i == j {
        return Err(Error::invalid("players must be distinct"));
    }
    for p in [i, j] {
        if inst.dependencies(p).is_empty() {
            return Err(Error::invalid(format!(
                "player {p} has no dependencies, disjointness is vacuous"
            )));
        }
    }
    let combined = combine(inst, profile)?;
    let n = inst.n();

    let mut target_dist: BTreeMap<usize, crate::graph::DistanceMap> = BTreeMap::new();
    let mut membership = |player: usize| -> Result<(Vec<(usize, u32)>, BTreeSet<usize>)> {
        let from_home = bfs_distances(&combined, player)?;
        let mut reachable = Vec::new();
        let mut union = BTreeSet::new();
        for &dep in inst.dependencies(player) {
            let t = inst.combined_v2(dep);
            let Some(dt) = from_home.get(t) else { continue };
            reachable.push((t, dt));
            if !target_dist.contains_key(&t) {
                target_dist.insert(t, bfs_distances(&combined, t)?);
            }
            let back = &target_dist[&t];
            for v in 0..n {
                if v == player {
                    continue;
                }
                if let (Some(a), Some(b)) = (from_home.get(v), back.get(v)) {
                    if a + b == dt {
                        union.insert(v);
                    }
                }
            }
        }
        Ok((reachable, union))
    };

    let (deps_i, union_i) = membership(i)?;
    let (deps_j, union_j) = membership(j)?;
    let contested: BTreeSet<usize> = union_i.intersection(&union_j).copied().collect();
    if contested.is_empty() {
        return Ok(true);
    }
    if mode == DisjointnessMode::AllPaths {
        return Ok(false);
    }

    // Fall back to explicit enumeration, projected onto the contested
    // nodes: only those can collide across the players.
    let options_for = |player: usize, deps: &[(usize, u32)]| -> Result<Vec<Vec<BTreeSet<usize>>>> {
        let from_home = bfs_distances(&combined, player)?;
        deps.iter()
            .map(|&(t, _)| {
                interior_options(
                    &combined,
                    n,
                    player,
                    t,
                    &from_home,
                    &target_dist[&t],
                    &contested,
                    budget.max_paths_per_dependency,
                )
            })
            .collect()
    };
    let options_i = options_for(i, &deps_i)?;
    let options_j = options_for(j, &deps_j)?;

    // All achievable unions of player i's projected interiors.
    let mut unions: BTreeSet<BTreeSet<usize>> = BTreeSet::from([BTreeSet::new()]);
    for dep_options in &options_i {
        let mut next = BTreeSet::new();
        for base in &unions {
            for opt in dep_options {
                let mut u = base.clone();
                u.extend(opt.iter().copied());
                next.insert(u);
            }
        }
        if next.len() > budget.max_selections {
            return Err(Error::capacity(format!(
                "disjoint-path search exceeded {} distinct selections",
                budget.max_selections
            )));
        }
        unions = next;
    }

    // Player j's choices are independent per dependency once i's union is
    // fixed: each dependency just needs one option avoiding it.
    'outer: for taken in &unions {
        for dep_options in &options_j {
            if !dep_options.iter().any(|opt| opt.is_disjoint(taken)) {
                continue 'outer;
            }
        }
        return Ok(true);
    }
    Ok(false)
}

/// Distinct interior-node sets (projected onto `contested`) over all
/// shortest paths from `source` to `target`, by DFS through the
/// shortest-path DAG.
fn interior_options(
    combined: &Graph,
    n: usize,
    source: usize,
    target: usize,
    from_source: &crate::graph::DistanceMap,
    from_target: &crate::graph::DistanceMap,
    contested: &BTreeSet<usize>,
    max_paths: usize,
) -> Result<Vec<BTreeSet<usize>>> {
    let mut walker = PathWalker {
        combined,
        n,
        target,
        total: from_source.get(target).expect("target checked reachable"),
        from_source,
        from_target,
        contested,
        max_paths,
        walked: 0,
        options: BTreeSet::new(),
    };
    let mut interior = Vec::new();
    walker.walk(source, &mut interior)?;
    Ok(walker.options.into_iter().collect())
}

struct PathWalker<'a> {
    combined: &'a Graph,
    n: usize,
    target: usize,
    total: u32,
    from_source: &'a crate::graph::DistanceMap,
    from_target: &'a crate::graph::DistanceMap,
    contested: &'a BTreeSet<usize>,
    max_paths: usize,
    walked: usize,
    options: BTreeSet<BTreeSet<usize>>,
}

impl PathWalker<'_> {
    fn walk(&mut self, v: usize, interior: &mut Vec<usize>) -> Result<()> {
        if v == self.target {
            self.walked += 1;
            if self.walked > self.max_paths {
                return Err(Error::capacity(format!(
                    "shortest-path enumeration exceeded {} paths",
                    self.max_paths
                )));
            }
            self.options.insert(interior.iter().copied().collect());
            return Ok(());
        }
        let dv = self.from_source.get(v).unwrap();
        for &w in self.combined.neighbors(v) {
            let on_dag = self.from_source.get(w) == Some(dv + 1)
                && self.from_target.get(w).is_some_and(|b| dv + 1 + b == self.total);
            if !on_dag {
                continue;
            }
            // Interior g1 nodes only; the source never reappears on a
            // shortest path and the target is a g2 node.
            let tracked = w < self.n && self.contested.contains(&w);
            if tracked {
                interior.push(w);
            }
            self.walk(w, interior)?;
            if tracked {
                interior.pop();
            }
        }
        Ok(())
    }
}
