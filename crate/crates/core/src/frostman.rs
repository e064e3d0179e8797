//! Frostman measures on named closed sets via capacity trees.

use crate::dyadic::{Rat, Word};
use crate::error::{Error, Result};
use crate::flows::{nonzero_flow_search, truncated_max_flow_with, CapacityTree, FlowSearch, Splitter};
use crate::measures::{flow_to_measure, DyadicMeasure};
use crate::sets::{closed_name, CantorScheme, ClosedSetName};

fn check_exponent(s: &Rat) -> Result<()> {
    if s.is_negative() || *s > Rat::one() {
        return Err(Error::InvalidArgument(format!("exponent {s} is outside [0, 1]")));
    }
    Ok(())
}

/// `cap(w) = 2^{-⌈s·|w|⌉}` unless `w` is excluded by stage `stage`, in which
/// case `cap(w) = 0`.
pub fn capacity_tree(set: &dyn ClosedSetName, s: &Rat, depth: usize, stage: usize) -> Result<CapacityTree> {
    check_exponent(s)?;
    let mut entries = Vec::new();
    let mut stack = vec![Word::root()];
    while let Some(v) = stack.pop() {
        if set.excludes(&v, stage) {
            continue;
        }
        if v.depth() < depth {
            stack.extend(v.children());
        }
        let c = Rat::dyadic(s.ceil_mul(v.depth() as u64));
        entries.push((v, c));
    }
    CapacityTree::new(depth, entries)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrostmanTask {
    pub s: Rat,
    pub depth: usize,
    pub stage: usize,
    pub k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrostVerdict {
    /// Total mass `2^{-k}`, carried by words not excluded, with
    /// `mass(w) ≤ 2^{-⌈s·|w|⌉}`.
    Found(DyadicMeasure),
    /// Maximal flow of the capacity tree, below `2^{-k}`. It bounds the
    /// depth-`n` dyadic `s`-content of the stage-`t` approximation.
    Refuted(Rat),
}

pub fn frost(set: &dyn ClosedSetName, task: &FrostmanTask) -> Result<FrostVerdict> {
    let cap = capacity_tree(set, &task.s, task.depth, task.stage)?;
    Ok(match nonzero_flow_search(&cap, task.k, Splitter::Proportional) {
        FlowSearch::Found(g) => FrostVerdict::Found(flow_to_measure(&g)),
        FlowSearch::Refuted(bound) => FrostVerdict::Refuted(bound),
    })
}

/// An `s`-Frostman measure positive on every word the scheme does not
/// exclude at stage `depth`, for schemes whose first `depth` ratios are
/// powers of two.
pub fn strict_frost(scheme: &CantorScheme, s: &Rat, depth: usize) -> Result<DyadicMeasure> {
    if !scheme.is_dyadic_aligned(depth) {
        return Err(Error::InvalidArgument(
            "strict support needs every ratio to be a power of two".into(),
        ));
    }
    let set = closed_name(scheme);
    let cap = capacity_tree(&set, s, depth, depth)?;
    let (value, g) = truncated_max_flow_with(&cap, Splitter::Proportional);
    if value.is_zero() {
        return Err(Error::NoFrostmanMeasure);
    }
    if let Some(w) = cap.entries().keys().find(|w| !g.get(w).is_positive()) {
        return Err(Error::Invariant(format!("word {w:?} survives but carries no mass")));
    }
    Ok(flow_to_measure(&g))
}
