//! Socially optimal profiles and the price of anarchy on small instances,
//! by exhaustive enumeration of the joint strategy space.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::best_response::{is_nash_equilibrium, NashCheck, NashMode};
use crate::error::{Error, Result};
use crate::game::{GameInstance, ProfileEvaluator, StrategyProfile};
use crate::numeric::strictly_greater;

/// Maximum value of `n * m` (the exponent of the joint space size) that
/// exhaustive enumeration will accept.
pub const JOINT_EXPONENT_BUDGET: usize = 16;

/// Price-of-anarchy value, with the degenerate welfare signs spelled out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum PoaValue {
    Finite(f64),
    /// Some equilibrium has welfare at or below zero while the optimum is
    /// positive.
    Infinite,
    /// The optimum itself is at or below zero; the ratio is meaningless.
    Undefined,
    /// No pure equilibrium exists within the enumerated space.
    NoEquilibrium,
}

#[derive(Debug, Clone, Serialize)]
pub struct PoaResult {
    pub optimal_welfare: f64,
    pub optimal_profile: StrategyProfile,
    /// Welfare of the worst equilibrium, when any equilibrium exists.
    pub min_equilibrium_welfare: Option<f64>,
    pub poa: PoaValue,
    pub equilibrium_count: usize,
}

fn check_budget(inst: &GameInstance) -> Result<()> {
    let exponent = inst.n() * inst.m();
    if exponent > JOINT_EXPONENT_BUDGET {
        return Err(Error::capacity(format!(
            "joint strategy space has 2^{exponent} profiles, over the 2^{JOINT_EXPONENT_BUDGET} \
             enumeration budget"
        )));
    }
    Ok(())
}

/// All actions for one player, ordered by size then lexicographically, so
/// enumeration order (and therefore tie-breaking) is reproducible.
fn ordered_actions(m: usize) -> Vec<BTreeSet<usize>> {
    let mut actions: Vec<BTreeSet<usize>> = (0u64..1 << m)
        .map(|mask| (0..m).filter(|&j| mask >> j & 1 == 1).collect())
        .collect();
    actions.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.iter().cmp(b.iter()))
    });
    actions
}

fn enumerate_profiles(
    inst: &GameInstance,
    mut visit: impl FnMut(&StrategyProfile) -> Result<()>,
) -> Result<()> {
    let n = inst.n();
    let actions = ordered_actions(inst.m());
    let mut indices = vec![0usize; n];
    loop {
        let profile = StrategyProfile::from_actions(
            indices.iter().map(|&k| actions[k].clone()).collect(),
        );
        visit(&profile)?;
        // Mixed-radix odometer, last player fastest.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < actions.len() {
                break;
            }
            indices[pos] = 0;
        }
    }
}

/// Exhaustive maximizer of social welfare over the joint strategy space.
/// The first profile attaining the maximum (in enumeration order) wins.
pub fn socially_optimal(inst: &GameInstance) -> Result<(StrategyProfile, f64)> {
    check_budget(inst)?;
    let mut best: Option<(StrategyProfile, f64)> = None;
    enumerate_profiles(inst, |profile| {
        let eval = ProfileEvaluator::new(inst, profile)?;
        let welfare: f64 = (0..inst.n())
            .map(|i| eval.utility_of(i, profile.action(i)))
            .sum();
        match &best {
            Some((_, incumbent)) if !strictly_greater(welfare, *incumbent) => {}
            _ => best = Some((profile.clone(), welfare)),
        }
        Ok(())
    })?;
    Ok(best.expect("joint space is never empty"))
}

/// All pure Nash equilibria in the joint space, in enumeration order.
pub fn enumerate_equilibria(inst: &GameInstance) -> Result<Vec<StrategyProfile>> {
    check_budget(inst)?;
    let mut found = Vec::new();
    enumerate_profiles(inst, |profile| {
        let NashCheck { is_equilibrium, .. } =
            is_nash_equilibrium(inst, profile, NashMode::BruteForce)?;
        if is_equilibrium {
            found.push(profile.clone());
        }
        Ok(())
    })?;
    Ok(found)
}

/// Ratio of the optimal welfare to the worst equilibrium welfare, with the
/// sign conventions of [`PoaValue`].
pub fn price_of_anarchy(inst: &GameInstance) -> Result<PoaResult> {
    let (optimal_profile, optimal_welfare) = socially_optimal(inst)?;
    let equilibria = enumerate_equilibria(inst)?;
    let equilibrium_count = equilibria.len();
    let mut min_welfare: Option<f64> = None;
    for profile in &equilibria {
        let w = crate::game::social_welfare(inst, profile)?;
        min_welfare = Some(min_welfare.map_or(w, |m: f64| m.min(w)));
    }
    let poa = match min_welfare {
        None => PoaValue::NoEquilibrium,
        Some(min) => {
            if !strictly_greater(optimal_welfare, 0.0) {
                PoaValue::Undefined
            } else if strictly_greater(min, 0.0) {
                PoaValue::Finite(optimal_welfare / min)
            } else {
                PoaValue::Infinite
            }
        }
    };
    Ok(PoaResult {
        optimal_welfare,
        optimal_profile,
        min_equilibrium_welfare: min_welfare,
        poa,
        equilibrium_count,
    })
}
