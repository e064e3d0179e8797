use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use super::{ClosedOvertName, ClosedSetName, OvertSetName};
use crate::dyadic::{Rat, Word};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    /// `I ∩ B ≠ ∅` because `I` already holds a point of `X`.
    HoldsPoint,
    /// `I ∩ B ≠ ∅` while the input still allows `I ∩ A ≠ ∅`; `I` is monitored.
    Monitored,
    /// `I ∩ B = ∅` because the input excludes `I`.
    Excluded,
    /// `I ∩ B = ∅` because `I` is an open half flanking an added point.
    Flank,
}

impl Decision {
    pub fn is_positive(self) -> bool {
        matches!(self, Decision::HoldsPoint | Decision::Monitored)
    }
}

/// A point of `X`: the midpoint of a refuted monitored interval, isolated in
/// `B` by the two excluded halves of that interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedPoint {
    pub x: Rat,
    pub host: Word,
    pub flanks: [Word; 2],
    pub step: usize,
}

/// Outcome of [`perfect_core`]: the decisions made within the stage budget,
/// the added isolated points, and the closed-and-overt name of `B = A ∪ X`.
#[derive(Clone, Debug)]
pub struct PerfectCore {
    decisions: BTreeMap<Word, (Decision, usize)>,
    points: Vec<IsolatedPoint>,
    budget: usize,
}

/// Runs the interval-deciding procedure for `stage_budget` steps.
///
/// Step `t` reads the input at stage `t`. It first answers every monitored
/// interval the input now excludes, deepest first: unless the interval
/// already holds a point of `X`, its midpoint joins `X` and both open halves
/// are decided empty. Then it decides the next undecided word in
/// breadth-first order, so an interval is always decided before the smaller
/// intervals inside it. Words inside an interval decided empty are never
/// visited again.
pub fn perfect_core(input: &dyn ClosedSetName, stage_budget: usize) -> Result<PerfectCore> {
    if stage_budget == 0 {
        return Err(Error::InvalidArgument("stage budget must be at least 1".into()));
    }
    let mut core = PerfectCore {
        decisions: BTreeMap::new(),
        points: Vec::new(),
        budget: stage_budget,
    };
    let mut queue = VecDeque::from([Word::root()]);
    let mut monitored: BTreeSet<Word> = BTreeSet::new();

    for step in 0..stage_budget {
        let refuted: Vec<Word> = monitored.iter().filter(|w| input.excludes(w, step)).cloned().collect();
        for host in refuted.into_iter().rev() {
            monitored.remove(&host);
            if core.holds_point(&host) {
                continue;
            }
            let flanks = host.children();
            for f in &flanks {
                if !core.excluded_now(f) {
                    core.decisions.insert(f.clone(), (Decision::Flank, step));
                }
            }
            core.points.push(IsolatedPoint {
                x: host.interval().midpoint(),
                host,
                flanks,
                step,
            });
        }

        while let Some(v) = queue.pop_front() {
            if core.excluded_now(&v) {
                continue;
            }
            let decision = if core.holds_point(&v) {
                Decision::HoldsPoint
            } else if input.excludes(&v, step) {
                Decision::Excluded
            } else {
                monitored.insert(v.clone());
                Decision::Monitored
            };
            if decision.is_positive() {
                queue.extend(v.children());
            }
            core.decisions.insert(v, (decision, step));
            break;
        }
    }
    Ok(core)
}

impl PerfectCore {
    fn holds_point(&self, w: &Word) -> bool {
        let d = w.interval();
        self.points.iter().any(|p| d.interior_contains(&p.x))
    }

    fn excluded_now(&self, w: &Word) -> bool {
        w.prefixes()
            .any(|p| self.decisions.get(&p).is_some_and(|(d, _)| !d.is_positive()))
    }

    pub fn points(&self) -> &[IsolatedPoint] {
        &self.points
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Every decision as `(word, decision, step)`, in word order.
    pub fn decisions(&self) -> impl Iterator<Item = (&Word, Decision, usize)> {
        self.decisions.iter().map(|(w, &(d, s))| (w, d, s))
    }

    pub fn decision(&self, w: &Word) -> Option<(Decision, usize)> {
        self.decisions.get(w).copied()
    }

    pub fn name(&self) -> ClosedOvertName {
        let shared = Arc::new(self.clone());
        ClosedOvertName {
            closed: shared.clone(),
            overt: shared,
        }
    }

    /// Checks the isolation witnesses and the consistency of all decisions.
    pub fn verify(&self) -> Result<()> {
        let last = self.budget;
        for p in &self.points {
            let [l, r] = &p.flanks;
            if p.x != p.host.interval().midpoint()
                || l.parent().as_ref() != Some(&p.host)
                || r.parent().as_ref() != Some(&p.host)
            {
                return Err(Error::Invariant(format!(
                    "point {} is not the midpoint of its flanks",
                    p.x
                )));
            }
            if !self.excludes(l, last) || !self.excludes(r, last) {
                return Err(Error::Invariant(format!("point {} is not isolated", p.x)));
            }
            if self.excludes(&p.host, last) {
                return Err(Error::Invariant(format!("host of point {} is excluded", p.x)));
            }
        }
        for (w, &(d, _)) in &self.decisions {
            if d.is_positive() && self.excludes(w, last) {
                return Err(Error::Invariant(format!("word {w:?} is both certified and excluded")));
            }
        }
        Ok(())
    }
}

impl ClosedSetName for PerfectCore {
    fn excludes(&self, w: &Word, stage: usize) -> bool {
        w.prefixes().any(|p| {
            self.decisions
                .get(&p)
                .is_some_and(|&(d, s)| !d.is_positive() && s <= stage)
        })
    }
}

impl OvertSetName for PerfectCore {
    fn certifies(&self, w: &Word, stage: usize) -> bool {
        self.decisions
            .get(w)
            .is_some_and(|&(d, s)| d.is_positive() && s <= stage)
    }
}
