use std::collections::BTreeSet;
use std::sync::Arc;

use crate::dyadic::{Rat, Word};
use crate::error::{Error, Result};
use crate::flows::{Labelling, TreeFlow};

/// A measure known through its values `μ(D_w°)` for `|w| ≤ depth`.
/// Dyadic endpoints carry no mass, so `mass(v) = mass(v0) + mass(v1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicMeasure {
    inner: TreeFlow,
}

impl DyadicMeasure {
    pub fn new(depth: usize, entries: impl IntoIterator<Item = (Word, Rat)>) -> Result<DyadicMeasure> {
        let inner = TreeFlow::new(depth, entries).map_err(|e| match e {
            Error::Conservation { word, detail } => Error::Additivity { word, detail },
            other => other,
        })?;
        Ok(DyadicMeasure { inner })
    }

    /// Fills every unlisted word above a listed one with the sum of its
    /// children, then checks additivity.
    pub fn completed(depth: usize, entries: impl IntoIterator<Item = (Word, Rat)>) -> Result<DyadicMeasure> {
        let mut given = Labelling::new();
        for (w, x) in entries {
            if given.insert(w.clone(), x).is_some() {
                return Err(Error::Invariant(format!("word {w:?} listed twice")));
            }
        }
        let mut all = given.clone();
        // popping the largest word in breadth-first order visits children
        // before their parents
        let mut frontier: BTreeSet<Word> = given.keys().filter_map(|w| w.parent()).collect();
        while let Some(v) = frontier.pop_last() {
            if !given.contains_key(&v) {
                let [l, r] = v.children();
                let sum =
                    all.get(&l).cloned().unwrap_or_else(Rat::zero) + all.get(&r).cloned().unwrap_or_else(Rat::zero);
                all.insert(v.clone(), sum);
            }
            if let Some(p) = v.parent() {
                frontier.insert(p);
            }
        }
        DyadicMeasure::new(depth, all)
    }

    pub fn from_flow(f: TreeFlow) -> DyadicMeasure {
        DyadicMeasure { inner: f }
    }

    pub fn to_flow(&self) -> TreeFlow {
        self.inner.clone()
    }

    pub fn zero(depth: usize) -> DyadicMeasure {
        DyadicMeasure::from_flow(TreeFlow::zero(depth))
    }

    /// `mass(w) = 2^{-|w|}`.
    pub fn lebesgue(depth: usize) -> DyadicMeasure {
        DyadicMeasure::from_flow(TreeFlow::uniform(depth))
    }

    pub fn depth(&self) -> usize {
        self.inner.depth()
    }

    pub fn mass(&self, w: &Word) -> Rat {
        self.inner.get(w)
    }

    pub fn total(&self) -> Rat {
        self.inner.value()
    }

    /// Nonzero masses, in word order.
    pub fn entries(&self) -> &Labelling {
        self.inner.entries()
    }

    pub fn scale(&self, c: &Rat) -> DyadicMeasure {
        DyadicMeasure::from_flow(self.inner.scale(c))
    }

    /// First word where `self` exceeds `other`.
    pub fn exceeds(&self, other: &DyadicMeasure) -> Option<Word> {
        self.inner.scaled_exceeds(&Rat::one(), &other.inner)
    }

    pub fn into_name(self) -> Arc<dyn MeasureName> {
        Arc::new(self)
    }
}

pub fn flow_to_measure(f: &TreeFlow) -> DyadicMeasure {
    DyadicMeasure::from_flow(f.clone())
}

pub fn measure_to_flow(mu: &DyadicMeasure) -> TreeFlow {
    mu.to_flow()
}

/// Stage-indexed lower bounds for the values `μ(D_w°)`.
pub trait MeasureName: Send + Sync {
    /// Nondecreasing in `stage`.
    fn lower(&self, w: &Word, stage: usize) -> Rat;
    fn total_upper(&self) -> Rat;
}

impl<T: MeasureName + ?Sized> MeasureName for Arc<T> {
    fn lower(&self, w: &Word, stage: usize) -> Rat {
        (**self).lower(w, stage)
    }

    fn total_upper(&self) -> Rat {
        (**self).total_upper()
    }
}

/// Exact below the truncation depth; deeper words get the trivial bound 0.
impl MeasureName for DyadicMeasure {
    fn lower(&self, w: &Word, _: usize) -> Rat {
        self.mass(w)
    }

    fn total_upper(&self) -> Rat {
        self.total()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Lebesgue;

impl MeasureName for Lebesgue {
    fn lower(&self, w: &Word, _: usize) -> Rat {
        Rat::dyadic(w.depth() as u64)
    }

    fn total_upper(&self) -> Rat {
        Rat::one()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroMeasure;

impl MeasureName for ZeroMeasure {
    fn lower(&self, _: &Word, _: usize) -> Rat {
        Rat::zero()
    }

    fn total_upper(&self) -> Rat {
        Rat::zero()
    }
}

/// The point mass at a rational `x ∈ [0, 1]`.
///
/// The pieces `D_v` are taken half-open as `(lo, hi]`, except that `0`
/// belongs to every leftmost piece. A non-dyadic `x` then sits in exactly the
/// pieces whose interior contains it; a dyadic `x` follows a chain such as
/// `0111…` for `1/2`, and is flagged as a boundary atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMeasure {
    x: Rat,
}

impl PointMeasure {
    pub fn new(x: Rat) -> Result<PointMeasure> {
        if x.is_negative() || x > Rat::one() {
            return Err(Error::InvalidArgument(format!("point {x} is outside [0, 1]")));
        }
        Ok(PointMeasure { x })
    }

    pub fn x(&self) -> &Rat {
        &self.x
    }

    pub fn boundary_atom(&self) -> bool {
        self.x.has_dyadic_denominator()
    }

    pub fn holds(&self, w: &Word) -> bool {
        let d = w.interval();
        (d.lo < self.x && self.x <= d.hi) || (d.lo.is_zero() && self.x.is_zero())
    }

    pub fn to_dyadic(&self, depth: usize) -> DyadicMeasure {
        let mut w = Word::root();
        let mut chain = vec![(w.clone(), Rat::one())];
        for _ in 0..depth {
            let [l, r] = w.children();
            w = if self.holds(&l) { l } else { r };
            chain.push((w.clone(), Rat::one()));
        }
        DyadicMeasure::new(depth, chain).expect("a chain is additive")
    }
}

impl MeasureName for PointMeasure {
    fn lower(&self, w: &Word, _: usize) -> Rat {
        if self.holds(w) {
            Rat::one()
        } else {
            Rat::zero()
        }
    }

    fn total_upper(&self) -> Rat {
        Rat::one()
    }
}

/// Every `|w| ≤ depth` with `mass(w) > 2^{-⌈s·|w|⌉}`.
pub fn frostman_check(mu: &DyadicMeasure, s: &Rat, depth: usize) -> Result<Vec<Word>> {
    if s.is_negative() || *s > Rat::one() {
        return Err(Error::InvalidArgument(format!("exponent {s} is outside [0, 1]")));
    }
    Ok(mu
        .entries()
        .iter()
        .filter(|(w, m)| w.depth() <= depth && **m > Rat::dyadic(s.ceil_mul(w.depth() as u64)))
        .map(|(w, _)| w.clone())
        .collect())
}
