use std::fmt;
use std::str::FromStr;

use super::tree::{CapacityTree, Labelling, TreeFlow};
use crate::dyadic::{Rat, Word};
use crate::error::{Error, Result};

/// How a vertex's flow is divided between its children when a witness is
/// read off the bottleneck values `F`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Splitter {
    /// `g(v0) = min(F(v0), g(v))`, the rest to the right.
    #[default]
    LeftGreedy,
    /// `g(v0) = g(v)·F(v0) / (F(v0) + F(v1))`.
    Proportional,
}

impl FromStr for Splitter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Splitter> {
        match s {
            "left-greedy" | "left" => Ok(Splitter::LeftGreedy),
            "proportional" => Ok(Splitter::Proportional),
            _ => Err(Error::Parse(format!("unknown splitting strategy {s:?}"))),
        }
    }
}

impl fmt::Display for Splitter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Splitter::LeftGreedy => "left-greedy",
            Splitter::Proportional => "proportional",
        })
    }
}

/// The bottom-up values `F(v) = cap(v)` at leaves and
/// `F(v) = min(cap(v), F(v0) + F(v1))` above them, at every vertex. Zero
/// values are omitted.
pub fn bottleneck(cap: &CapacityTree) -> Labelling {
    let mut out = Labelling::new();
    // reverse breadth-first order sees both children before their parent
    for (v, c) in cap.entries().iter().rev() {
        let f = if v.depth() == cap.depth() {
            c.clone()
        } else {
            let [l, r] = v.children();
            let below: Rat = [l, r].iter().filter_map(|u| out.get(u)).sum();
            c.clone().min(below)
        };
        if !f.is_zero() {
            out.insert(v.clone(), f);
        }
    }
    out
}

/// Sends `value ≤ F(ε)` down the tree, never exceeding `F`.
pub fn route(f: &Labelling, depth: usize, value: &Rat, splitter: Splitter) -> TreeFlow {
    let get = |w: &Word| f.get(w).cloned().unwrap_or_else(Rat::zero);
    let mut flow = Labelling::new();
    let mut stack = vec![(Word::root(), value.clone())];
    while let Some((v, g)) = stack.pop() {
        if g.is_zero() {
            continue;
        }
        if v.depth() < depth {
            let [l, r] = v.children();
            let (fl, fr) = (get(&l), get(&r));
            let gl = match splitter {
                Splitter::LeftGreedy => fl.min(g.clone()),
                Splitter::Proportional => &g * &fl / (&fl + &fr),
            };
            let gr = &g - &gl;
            stack.push((r, gr));
            stack.push((l, gl));
        }
        flow.insert(v, g);
    }
    TreeFlow::from_labelling_unchecked(depth, flow)
}

/// Maximal root value of a flow below `cap` on the truncated tree, with a
/// left-greedy witness.
pub fn truncated_max_flow(cap: &CapacityTree) -> (Rat, TreeFlow) {
    truncated_max_flow_with(cap, Splitter::LeftGreedy)
}

pub fn truncated_max_flow_with(cap: &CapacityTree, splitter: Splitter) -> (Rat, TreeFlow) {
    let f = bottleneck(cap);
    let value = f.get(&Word::root()).cloned().unwrap_or_else(Rat::zero);
    let witness = route(&f, cap.depth(), &value, splitter);
    (value, witness)
}

/// `a_0 = cap`, `a_{k+1}(v) = min(a_k(v), a_k(v0) + a_k(v1))` with leaves
/// held fixed.
pub fn max_flow_iterate(cap: &CapacityTree, iterations: usize) -> Labelling {
    let depth = cap.depth();
    let mut a = cap.entries().clone();
    for _ in 0..iterations {
        let get = |w: &Word| a.get(w).cloned().unwrap_or_else(Rat::zero);
        let next: Labelling = a
            .iter()
            .filter_map(|(v, x)| {
                let y = if v.depth() < depth {
                    let [l, r] = v.children();
                    x.clone().min(get(&l) + get(&r))
                } else {
                    x.clone()
                };
                (!y.is_zero()).then(|| (v.clone(), y))
            })
            .collect();
        if next == a {
            break;
        }
        a = next;
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlowSearch {
    /// A flow below the capacities with root value exactly `2^{-k}`.
    Found(TreeFlow),
    /// The truncated maximum, which is below `2^{-k}` and bounds every flow
    /// below the capacities.
    Refuted(Rat),
}

pub fn nonzero_flow_search(cap: &CapacityTree, k: u64, splitter: Splitter) -> FlowSearch {
    let f = bottleneck(cap);
    let value = f.get(&Word::root()).cloned().unwrap_or_else(Rat::zero);
    let target = Rat::dyadic(k);
    if value >= target {
        FlowSearch::Found(route(&f, cap.depth(), &target, splitter))
    } else {
        FlowSearch::Refuted(value)
    }
}
