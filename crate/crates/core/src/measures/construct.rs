use std::collections::BTreeSet;
use std::sync::Arc;

use super::dyadic_measure::{flow_to_measure, DyadicMeasure, MeasureName};
use crate::dyadic::{Rat, Word};
use crate::error::{Error, Result};
use crate::flows::{concentrate_flow, Labelling, TreeFlow};
use crate::sets::{ClosedOvertName, ClosedSetName, OvertSetName};

/// Certifies `w` at stage `t` when `lower(w, t) > 0`.
pub struct SupportOvert<M> {
    measure: M,
}

pub fn support_overt<M: MeasureName>(measure: M) -> SupportOvert<M> {
    SupportOvert { measure }
}

impl<M: MeasureName> OvertSetName for SupportOvert<M> {
    fn certifies(&self, w: &Word, stage: usize) -> bool {
        self.measure.lower(w, stage).is_positive()
    }
}

/// A measure whose support is the set named by `overt`, truncated at depth
/// `k` and built from the certifications available at stage `k`.
///
/// Round `r` lists the `m` level-`r` words certified by stage `k` in word
/// order and enumerates them round-robin; the `j`-th enumerated word gets
/// `2^{-j-1}`, scaled so the round adds `2^{-r}` in total. Listed word `p`
/// thus receives `2^{-r}·2^{m-p-1}/(2^m-1)`. Mass gathered on a level-`r-1`
/// word moves to its first certified child. The total is
/// `1/2 + … + 2^{-k}`.
pub fn measure_from_overt(overt: &dyn OvertSetName, k: usize) -> Result<DyadicMeasure> {
    if k == 0 {
        return Err(Error::InvalidArgument("the stage must be at least 1".into()));
    }
    let mut carried = Labelling::new();
    for r in 1..=k {
        let certified: Vec<Word> = Word::all_of_depth(r).filter(|w| overt.certifies(w, k)).collect();
        if certified.is_empty() {
            return Err(Error::NoWitness(format!(
                "no word of length {r} certified by stage {k}"
            )));
        }
        let m = certified.len() as i64;
        let denom = Rat::pow2(m) - Rat::one();
        let round = Rat::dyadic(r as u64);
        let mut level: Labelling = certified
            .iter()
            .enumerate()
            .map(|(p, w)| {
                let x = &round * Rat::pow2(m - p as i64 - 1) / &denom;
                (w.clone(), x)
            })
            .collect();
        let members: BTreeSet<&Word> = certified.iter().collect();
        for (v, c) in carried {
            let Some(child) = v.children().into_iter().find(|u| members.contains(u)) else {
                return Err(Error::NoWitness(format!(
                    "certified word {v} has no certified child by stage {k}"
                )));
            };
            *level.get_mut(&child).expect("certified child has fresh weight") += c;
        }
        carried = level;
    }
    DyadicMeasure::completed(k, carried)
}

/// A word of length `n` every prefix of which had positive lower bound when
/// it was chosen. Each step scans stages from the previous decision on and
/// takes the first child (left before right) whose bound turns positive.
pub fn point_from_measure(measure: &dyn MeasureName, n: usize, stage_budget: usize) -> Result<Word> {
    let mut w = Word::root();
    let mut stage = 0;
    for level in 0..n {
        loop {
            if let Some(u) = w.children().into_iter().find(|u| measure.lower(u, stage).is_positive()) {
                w = u;
                break;
            }
            stage += 1;
            if stage > stage_budget {
                return Err(Error::StageBudgetExhausted {
                    budget: stage_budget,
                    level,
                });
            }
        }
    }
    Ok(w)
}

/// `(ν, k)` with `ν ≤ μ`, `ν(ε) = 2^{-k-1}` and every `ν(D_w°)` either 0 or
/// at least `2^{-k}·2^{-2|w|-1}`, where `k` is least with `μ(ε) ≥ 2^{-k}`.
pub fn concentrate(mu: &DyadicMeasure) -> Result<(DyadicMeasure, u64)> {
    let total = mu.total();
    if !total.is_positive() {
        return Err(Error::InvalidArgument("cannot concentrate the zero measure".into()));
    }
    let mut k = 0u64;
    while total < Rat::dyadic(k) {
        k += 1;
    }
    let scale = Rat::dyadic(k);
    let depth = mu.depth();
    let mut f = Labelling::new();
    let mut stack = vec![(Word::root(), scale.clone())];
    while let Some((v, fv)) = stack.pop() {
        if v.depth() < depth {
            let [l, r] = v.children();
            let fl = mu.mass(&l).min(fv.clone());
            let fr = &fv - &fl;
            for (u, x) in [(r, fr), (l, fl)] {
                if !x.is_zero() {
                    stack.push((u, x));
                }
            }
        }
        f.insert(v, fv);
    }
    let f = TreeFlow::new(depth, f)?;
    let g = concentrate_flow(&f)?;
    Ok((flow_to_measure(&g).scale(&scale), k))
}

/// `C·(2^{-|w|-1})²`.
pub fn concentration_threshold(c: &Rat, w: &Word) -> Rat {
    c * Rat::dyadic(2 * w.depth() as u64 + 2)
}

/// The support of a `C`-concentrated measure as a closed and overt set.
pub struct ConcentratedSupport {
    nu: DyadicMeasure,
    c: Rat,
}

impl ConcentratedSupport {
    pub fn into_name(self) -> ClosedOvertName {
        let shared = Arc::new(self);
        ClosedOvertName {
            closed: shared.clone(),
            overt: shared,
        }
    }
}

/// Checks that every mass is 0 or at least `C·(2^{-|w|-1})²`.
pub fn concentrated_support(nu: &DyadicMeasure, c: &Rat) -> Result<ConcentratedSupport> {
    if !c.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "concentration constant {c} is not positive"
        )));
    }
    if let Some((w, m)) = nu.entries().iter().find(|(w, m)| **m < concentration_threshold(c, w)) {
        return Err(Error::Concentration {
            word: w.clone(),
            detail: format!("mass {m} is positive but below {}", concentration_threshold(c, w)),
        });
    }
    Ok(ConcentratedSupport {
        nu: nu.clone(),
        c: c.clone(),
    })
}

impl ClosedSetName for ConcentratedSupport {
    fn excludes(&self, w: &Word, _: usize) -> bool {
        w.prefixes()
            .filter(|p| p.depth() <= self.nu.depth())
            .any(|p| self.nu.mass(&p) < concentration_threshold(&self.c, &p))
    }
}

impl OvertSetName for ConcentratedSupport {
    fn certifies(&self, w: &Word, _: usize) -> bool {
        self.nu.mass(w).is_positive()
    }
}
