//! Constructive pure Nash equilibrium for instances whose far-side network
//! contains a hub and whose dependency relation is complete.
//!
//! The construction wires low-cost players to everything, silences players
//! for whom building can never pay or who sit near a low-cost player, and
//! then grows a set of hub builders in ascending r-radius order, emptying
//! every not-yet-decided player that ends up inside a new builder's radius.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{
    classify, l_radius, r_radius, CostClass, GameInstance, Radius, StrategyProfile,
};
use crate::graph::{bfs_distances, find_hub};

/// Audit trail of the constructor: which rule decided each player. The
/// five groups partition the player set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumTrace {
    pub hub: usize,
    /// Low-cost players, wired to every far-side node.
    pub s_low: BTreeSet<usize>,
    /// Players with infinite r-radius: building never pays, action empty.
    pub s_h_inf: BTreeSet<usize>,
    /// High-cost players emptied because a low-cost player sits within
    /// their L-radius, keyed to the lowest-index such low-cost player.
    pub s_h_l: BTreeMap<usize, usize>,
    /// Players assigned the single hub edge, in selection order.
    pub builders: Vec<usize>,
    /// Players emptied because a builder landed inside their r-radius,
    /// keyed to that builder.
    pub suppressed: BTreeMap<usize, usize>,
    /// Per-player radii used by the run (`None` for low-cost players).
    pub radii_l: Vec<Option<Radius>>,
    pub radii_r: Vec<Option<Radius>>,
}

impl EquilibriumTrace {
    pub fn player_count(&self) -> usize {
        self.radii_r.len()
    }

    /// Player order realized by the construction: low-cost first, then the
    /// always-empty groups, then each builder followed by the players it
    /// suppressed. Sequential best-response dynamics in this order
    /// reproduces the constructed profile from an empty start.
    pub fn algorithm_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = self.s_low.iter().copied().collect();
        order.extend(self.s_h_inf.iter());
        order.extend(self.s_h_l.keys());
        for &b in &self.builders {
            order.push(b);
            order.extend(self.suppressed.iter().filter(|&(_, &by)| by == b).map(|(&p, _)| p));
        }
        order
    }
}

/// Per-player label derived from the construction trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PlayerStatus {
    /// Built the single hub edge.
    Builder,
    /// Low-cost player wired to every far-side node.
    FullWiring,
    /// Built nothing; reaches the far side through `via`'s edges.
    FreeRider { via: usize },
    /// Built nothing because no edge can ever pay for itself.
    OptOut,
}

/// Constructs a pure Nash equilibrium. Requires a hub in `g2` and a
/// complete dependency relation; `g1`, benefit tables, and costs are
/// arbitrary.
pub fn star_nash_equilibrium(
    inst: &GameInstance,
) -> Result<(StrategyProfile, EquilibriumTrace)> {
    let hub = find_hub(inst.g2()).ok_or_else(|| {
        Error::invalid("g2 has no hub node adjacent to all others (no star subgraph)")
    })?;
    if !inst.is_complete_bipartite() {
        return Err(Error::invalid(
            "dependency network is not complete bipartite",
        ));
    }

    let n = inst.n();
    let m = inst.m();
    let mut profile = StrategyProfile::empty(n);
    let mut s_low = BTreeSet::new();
    let mut s_h_inf = BTreeSet::new();
    let mut s_h_l = BTreeMap::new();
    let mut radii_l = vec![None; n];
    let mut radii_r = vec![None; n];

    let full_wiring: BTreeSet<usize> = (0..m).collect();
    for i in 0..n {
        match classify(inst.player(i)) {
            CostClass::LowCost => {
                s_low.insert(i);
                profile.set_action(i, full_wiring.clone());
            }
            CostClass::HighCost => {
                radii_l[i] = Some(l_radius(inst.player(i), m));
                radii_r[i] = Some(r_radius(inst.player(i), m));
            }
        }
    }

    let high_cost: Vec<usize> = (0..n).filter(|i| !s_low.contains(i)).collect();

    // Building can never pay: empty action regardless of everyone else.
    for &i in &high_cost {
        if radii_r[i] == Some(Radius::Infinite) {
            s_h_inf.insert(i);
        }
    }

    // A low-cost player within the L-radius makes free riding optimal.
    // Scanning low-cost players in ascending index fixes the witness.
    for &j in &s_low {
        let dist = bfs_distances(inst.g1(), j)?;
        for &i in &high_cost {
            if s_h_inf.contains(&i) || s_h_l.contains_key(&i) {
                continue;
            }
            let Some(Radius::Finite(l)) = radii_l[i] else {
                continue;
            };
            if dist.get(i).is_some_and(|d| d <= l) {
                s_h_l.insert(i, j);
            }
        }
    }

    // Remaining high-cost players, decided in ascending (r-radius, index)
    // order: the chosen one builds a hub edge, then everyone whose
    // r-neighborhood now contains the new builder is emptied.
    let mut queue: BTreeSet<usize> = high_cost
        .iter()
        .copied()
        .filter(|i| !s_h_inf.contains(i) && !s_h_l.contains_key(i))
        .collect();
    let mut builders = Vec::new();
    let mut suppressed = BTreeMap::new();
    while let Some(&builder) = queue
        .iter()
        .min_by_key(|&&i| (radii_r[i].expect("queued players have radii"), i))
    {
        queue.remove(&builder);
        profile.set_action(builder, BTreeSet::from([hub]));
        builders.push(builder);

        let dist = bfs_distances(inst.g1(), builder)?;
        let silenced: Vec<usize> = queue
            .iter()
            .copied()
            .filter(|&p| {
                let Some(Radius::Finite(r)) = radii_r[p] else {
                    return false;
                };
                dist.get(p).is_some_and(|d| d <= r)
            })
            .collect();
        for p in silenced {
            queue.remove(&p);
            suppressed.insert(p, builder);
        }
    }

    let trace = EquilibriumTrace {
        hub,
        s_low,
        s_h_inf,
        s_h_l,
        builders,
        suppressed,
        radii_l,
        radii_r,
    };
    Ok((profile, trace))
}

/// Labels every player from the construction trace. Free riders carry the
/// player whose edges they ride on.
pub fn free_rider_report(trace: &EquilibriumTrace) -> Vec<PlayerStatus> {
    let n = trace.player_count();
    let mut statuses = vec![None; n];
    for &i in &trace.s_low {
        statuses[i] = Some(PlayerStatus::FullWiring);
    }
    for &i in &trace.s_h_inf {
        statuses[i] = Some(PlayerStatus::OptOut);
    }
    for (&i, &via) in &trace.s_h_l {
        statuses[i] = Some(PlayerStatus::FreeRider { via });
    }
    for &i in &trace.builders {
        statuses[i] = Some(PlayerStatus::Builder);
    }
    for (&i, &via) in &trace.suppressed {
        statuses[i] = Some(PlayerStatus::FreeRider { via });
    }
    statuses
        .into_iter()
        .map(|s| s.expect("trace groups partition the players"))
        .collect()
}
