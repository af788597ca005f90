//! Reduction from the dominating-set decision problem to the single-player
//! best-response threshold problem, plus brute-force deciders so the
//! equivalence can be checked exhaustively on small inputs.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::game::{BenefitFunction, GameInstance, Player, ProfileEvaluator, StrategyProfile};
use crate::graph::Graph;

/// Node-count cap for the exhaustive deciders (both run in `2^n`).
pub const DECIDER_NODE_CAP: usize = 20;

/// Absolute slack on the accept side of the threshold comparison; the
/// default constants make every utility integral, so this only absorbs
/// floating-point dust.
pub const THRESHOLD_SLACK: f64 = 1e-9;

/// Constants for the constructed single-player instance. They must satisfy
/// `b(3) < b(1) - c < b(2)` with a zero tail after `b(3)`.
#[derive(Debug, Clone, Copy)]
pub struct ReductionConstants {
    pub edge_cost: f64,
    pub benefits: [f64; 3],
}

impl Default for ReductionConstants {
    fn default() -> Self {
        ReductionConstants {
            edge_cost: 2.0,
            benefits: [4.0, 3.0, 1.0],
        }
    }
}

impl ReductionConstants {
    fn validate(&self) -> Result<()> {
        let [b1, b2, b3] = self.benefits;
        let gain = b1 - self.edge_cost;
        if !(b3 < gain && gain < b2 && b2 <= b1 && b3 >= 0.0 && self.edge_cost > 0.0) {
            return Err(Error::invalid(format!(
                "reduction constants must satisfy b(3) < b(1) - c < b(2) <= b(1), got \
                 b = {:?}, c = {}",
                self.benefits, self.edge_cost
            )));
        }
        Ok(())
    }
}

/// A single-player best-response threshold instance: does some action reach
/// utility at least `threshold`? The rest of the (one-player) profile is
/// vacuously empty.
#[derive(Debug, Clone)]
pub struct BriInstance {
    pub game: GameInstance,
    pub threshold: f64,
}

/// Builds the threshold instance for a dominating-set question `(g_d, k)`:
/// a lone player fully dependent on every node of `g_d`, with constants
/// chosen so reaching the threshold is exactly a size-`k` domination.
pub fn reduce_dominating_set(g_d: &Graph, k: usize) -> Result<BriInstance> {
    reduce_dominating_set_with(g_d, k, &ReductionConstants::default())
}

pub fn reduce_dominating_set_with(
    g_d: &Graph,
    k: usize,
    constants: &ReductionConstants,
) -> Result<BriInstance> {
    constants.validate()?;
    let nodes = g_d.node_count();
    if k == 0 || k > nodes {
        return Err(Error::invalid(format!(
            "k = {k} must be between 1 and the node count {nodes}"
        )));
    }
    let [b1, b2, b3] = constants.benefits;
    let player = Player::new(BenefitFunction::new(vec![b1, b2, b3])?, constants.edge_cost)?;
    let game =
        GameInstance::with_complete_dependencies(Graph::new(1), g_d.clone(), vec![player])?;
    let threshold =
        k as f64 * (b1 - constants.edge_cost) + (nodes - k) as f64 * b2;
    Ok(BriInstance { game, threshold })
}

/// Exhaustively decides the threshold instance: true iff some subset of
/// far-side targets achieves utility at least the threshold.
pub fn decide_bri_brute(inst: &BriInstance) -> Result<bool> {
    let m = inst.game.m();
    if m > DECIDER_NODE_CAP {
        return Err(Error::capacity(format!(
            "brute-force threshold decider capped at {DECIDER_NODE_CAP} nodes, got {m}"
        )));
    }
    let empty = StrategyProfile::empty(1);
    let eval = ProfileEvaluator::new(&inst.game, &empty)?;
    for mask in 0u64..1 << m {
        let action: BTreeSet<usize> = (0..m).filter(|&j| mask >> j & 1 == 1).collect();
        if eval.utility_of(0, &action) >= inst.threshold - THRESHOLD_SLACK {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Exhaustively decides whether `g` has a dominating set of size at most
/// `k`.
pub fn decide_dominating_set_brute(g: &Graph, k: usize) -> Result<bool> {
    let n = g.node_count();
    if n > DECIDER_NODE_CAP {
        return Err(Error::capacity(format!(
            "brute-force dominating-set decider capped at {DECIDER_NODE_CAP} nodes, got {n}"
        )));
    }
    if k == 0 || k > n {
        return Err(Error::invalid(format!(
            "k = {k} must be between 1 and the node count {n}"
        )));
    }
    for mask in 0u64..1 << n {
        if (mask.count_ones() as usize) > k {
            continue;
        }
        let dominates = (0..n).all(|v| {
            mask >> v & 1 == 1 || g.neighbors(v).iter().any(|&w| mask >> w & 1 == 1)
        });
        if dominates {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Checks the reduction on one input: the two deciders must agree.
pub fn verify_reduction(g_d: &Graph, k: usize) -> Result<bool> {
    let direct = decide_dominating_set_brute(g_d, k)?;
    let via_reduction = decide_bri_brute(&reduce_dominating_set(g_d, k)?)?;
    Ok(direct == via_reduction)
}
