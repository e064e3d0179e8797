//! Stage-indexed names for subsets of `[0, 1]`.
//!
//! A name is a pull-based oracle. Closed names answer "is the open dyadic
//! interval `D_w°` certified disjoint from the set by stage `t`?", overt names
//! answer "is `D_w°` certified to meet the set by stage `t`?". Both answers are
//! monotone in the stage. Exclusion is inherited by every extension of an
//! excluded word; certification is inherited by every prefix of a certified
//! word.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::dyadic::Word;

mod cantor;
mod perfect_core;
mod rescale;

pub use cantor::{cantor_cells, closed_name, overt_name, CantorClosed, CantorOvert, CantorScheme};
pub use perfect_core::{perfect_core, Decision, IsolatedPoint, PerfectCore};
pub use rescale::{assemble, assemble_lazy, block_word, rescale, Assembled, Rescaled};

/// Negative information about a closed set.
pub trait ClosedSetName: Send + Sync {
    /// `D_w° ∩ A = ∅` has been certified by stage `stage`, either for `w`
    /// itself or for one of its prefixes.
    fn excludes(&self, w: &Word, stage: usize) -> bool;
}

/// Positive information about an overt set.
pub trait OvertSetName: Send + Sync {
    /// `D_w° ∩ A ≠ ∅` has been certified by stage `stage`.
    fn certifies(&self, w: &Word, stage: usize) -> bool;
}

impl<T: ClosedSetName + ?Sized> ClosedSetName for Arc<T> {
    fn excludes(&self, w: &Word, stage: usize) -> bool {
        (**self).excludes(w, stage)
    }
}

impl<T: OvertSetName + ?Sized> OvertSetName for Arc<T> {
    fn certifies(&self, w: &Word, stage: usize) -> bool {
        (**self).certifies(w, stage)
    }
}

/// A set known both as a closed and as an overt set.
#[derive(Clone)]
pub struct ClosedOvertName {
    pub closed: Arc<dyn ClosedSetName>,
    pub overt: Arc<dyn OvertSetName>,
}

impl ClosedOvertName {
    pub fn new(closed: impl ClosedSetName + 'static, overt: impl OvertSetName + 'static) -> ClosedOvertName {
        ClosedOvertName {
            closed: Arc::new(closed),
            overt: Arc::new(overt),
        }
    }

    /// The whole interval: nothing excluded, everything certified at stage 0.
    pub fn unit_interval() -> ClosedOvertName {
        ClosedOvertName::new(NothingExcluded, EverythingCertified)
    }

    /// Looks for a word that is both certified and excluded at `stage`,
    /// among all words of depth at most `depth`.
    pub fn find_inconsistency(&self, depth: usize, stage: usize) -> Option<Word> {
        Word::all_up_to_depth(depth).find(|w| self.closed.excludes(w, stage) && self.overt.certifies(w, stage))
    }
}

impl ClosedSetName for ClosedOvertName {
    fn excludes(&self, w: &Word, stage: usize) -> bool {
        self.closed.excludes(w, stage)
    }
}

impl OvertSetName for ClosedOvertName {
    fn certifies(&self, w: &Word, stage: usize) -> bool {
        self.overt.certifies(w, stage)
    }
}

impl fmt::Debug for ClosedOvertName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ClosedOvertName { .. }")
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct NothingExcluded;

impl ClosedSetName for NothingExcluded {
    fn excludes(&self, _: &Word, _: usize) -> bool {
        false
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EverythingCertified;

impl OvertSetName for EverythingCertified {
    fn certifies(&self, _: &Word, _: usize) -> bool {
        true
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct NothingCertified;

impl OvertSetName for NothingCertified {
    fn certifies(&self, _: &Word, _: usize) -> bool {
        false
    }
}

/// Closed name given by a finite list of `(stage, word)` exclusions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExplicitClosed {
    /// Earliest stage at which each listed word is excluded.
    first_stage: BTreeMap<Word, usize>,
}

impl ExplicitClosed {
    pub fn new(entries: impl IntoIterator<Item = (usize, Word)>) -> ExplicitClosed {
        let mut first_stage = BTreeMap::new();
        for (stage, w) in entries {
            first_stage
                .entry(w)
                .and_modify(|s: &mut usize| *s = (*s).min(stage))
                .or_insert(stage);
        }
        ExplicitClosed { first_stage }
    }

    /// The name of `∅` that excludes the root from `stage` on.
    pub fn empty_from(stage: usize) -> ExplicitClosed {
        ExplicitClosed::new([(stage, Word::root())])
    }

    /// Excludes, at stage 0, every word off the chain `bit^n` up to `depth`.
    /// This is the finite name of the endpoint `0` (or `1`) used by the
    /// tree constructions.
    pub fn chain(bit: bool, depth: usize) -> ExplicitClosed {
        ExplicitClosed::new((1..=depth).map(|n| {
            let mut w = Word::repeat(bit, n - 1);
            w = w.child(!bit);
            (0, w)
        }))
    }

    /// Listed entries grouped by stage, sorted.
    pub fn by_stage(&self) -> Vec<(usize, Vec<Word>)> {
        group_by_stage(&self.first_stage)
    }
}

impl ClosedSetName for ExplicitClosed {
    fn excludes(&self, w: &Word, stage: usize) -> bool {
        w.prefixes()
            .any(|p| self.first_stage.get(&p).is_some_and(|&s| s <= stage))
    }
}

/// Overt name given by a finite list of `(stage, word)` certifications.
/// Every prefix of a listed word is certified from the same stage on.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExplicitOvert {
    listed: BTreeMap<Word, usize>,
    closure: BTreeMap<Word, usize>,
}

impl ExplicitOvert {
    pub fn new(entries: impl IntoIterator<Item = (usize, Word)>) -> ExplicitOvert {
        let mut listed = BTreeMap::new();
        for (stage, w) in entries {
            listed
                .entry(w)
                .and_modify(|s: &mut usize| *s = (*s).min(stage))
                .or_insert(stage);
        }
        let mut closure: BTreeMap<Word, usize> = BTreeMap::new();
        for (w, &stage) in &listed {
            for p in w.prefixes() {
                closure.entry(p).and_modify(|s| *s = (*s).min(stage)).or_insert(stage);
            }
        }
        ExplicitOvert { listed, closure }
    }

    /// Certifies the chain `bit^n` for `n ≤ depth` at stage 0.
    pub fn chain(bit: bool, depth: usize) -> ExplicitOvert {
        ExplicitOvert::new([(0, Word::repeat(bit, depth))])
    }

    pub fn by_stage(&self) -> Vec<(usize, Vec<Word>)> {
        group_by_stage(&self.listed)
    }
}

impl OvertSetName for ExplicitOvert {
    fn certifies(&self, w: &Word, stage: usize) -> bool {
        self.closure.get(w).is_some_and(|&s| s <= stage)
    }
}

fn group_by_stage(map: &BTreeMap<Word, usize>) -> Vec<(usize, Vec<Word>)> {
    let mut grouped: BTreeMap<usize, Vec<Word>> = BTreeMap::new();
    for (w, &s) in map {
        grouped.entry(s).or_default().push(w.clone());
    }
    grouped.into_iter().collect()
}

/// The chain name of the endpoint `0`, cut at `depth`: off-chain words are
/// excluded and the chain `0^n` is certified.
pub fn left_endpoint(depth: usize) -> ClosedOvertName {
    ClosedOvertName::new(ExplicitClosed::chain(false, depth), ExplicitOvert::chain(false, depth))
}

/// Adapter that slows a closed name down: stage `t` answers with the inner
/// stage `t / lag`. Useful for exercising constructions that react to late
/// negative information.
pub struct Lagged<N> {
    pub inner: N,
    pub lag: usize,
}

impl<N: ClosedSetName> ClosedSetName for Lagged<N> {
    fn excludes(&self, w: &Word, stage: usize) -> bool {
        self.inner.excludes(w, stage / self.lag.max(1))
    }
}
