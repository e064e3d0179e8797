use crate::dyadic::{Rat, Word};
use crate::error::{Error, Result};
use crate::sets::ClosedSetName;

/// Dyadic `s`-content of the stage-`stage` approximation, truncated at
/// `depth`: the least `Σ 2^{-⌈s·|w|⌉}` over antichains of words covering
/// every word of length `depth` not yet excluded.
pub fn dyadic_content(set: &dyn ClosedSetName, s: &Rat, depth: usize, stage: usize) -> Result<Rat> {
    if s.is_negative() || *s > Rat::one() {
        return Err(Error::InvalidArgument(format!("exponent {s} is outside [0, 1]")));
    }
    fn go(set: &dyn ClosedSetName, s: &Rat, depth: usize, stage: usize, v: Word) -> Rat {
        if set.excludes(&v, stage) {
            return Rat::zero();
        }
        let here = Rat::dyadic(s.ceil_mul(v.depth() as u64));
        if v.depth() == depth {
            return here;
        }
        let [l, r] = v.children();
        let below = go(set, s, depth, stage, l) + go(set, s, depth, stage, r);
        here.min(below)
    }
    Ok(go(set, s, depth, stage, Word::root()))
}

/// Thresholds turning a content table into a dimension bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketRule {
    /// `lo` is the largest grid exponent whose content is at least this.
    pub lo_content: Rat,
    /// `hi` is the least grid exponent whose content is below
    /// `2^{-⌊depth / hi_divisor⌋}`.
    pub hi_divisor: usize,
}

impl Default for BracketRule {
    fn default() -> BracketRule {
        BracketRule {
            lo_content: Rat::new(1, 2),
            hi_divisor: 4,
        }
    }
}

impl BracketRule {
    pub fn hi_threshold(&self, depth: usize) -> Rat {
        Rat::dyadic((depth / self.hi_divisor.max(1)) as u64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimEstimate {
    pub lo: Rat,
    pub hi: Rat,
    pub depth: usize,
    pub stage: usize,
}

impl DimEstimate {
    pub fn contains(&self, x: &Rat) -> bool {
        self.lo <= *x && *x <= self.hi
    }
}

/// `(s, content)` for `s = 0, 1/grid, …, 1`.
pub fn content_table(set: &dyn ClosedSetName, depth: usize, stage: usize, grid: usize) -> Result<Vec<(Rat, Rat)>> {
    if grid == 0 {
        return Err(Error::InvalidArgument("the grid needs at least one step".into()));
    }
    (0..=grid)
        .map(|i| {
            let s = Rat::new(i as i64, grid as i64);
            let c = dyadic_content(set, &s, depth, stage)?;
            Ok((s, c))
        })
        .collect()
}

pub fn dim_interval(set: &dyn ClosedSetName, depth: usize, stage: usize, grid: usize) -> Result<DimEstimate> {
    dim_interval_with(set, depth, stage, grid, &BracketRule::default())
}

pub fn dim_interval_with(
    set: &dyn ClosedSetName,
    depth: usize,
    stage: usize,
    grid: usize,
    rule: &BracketRule,
) -> Result<DimEstimate> {
    let table = content_table(set, depth, stage, grid)?;
    Ok(bracket(&table, depth, stage, rule))
}

/// Reads a bracket off a content table sorted by exponent.
pub fn bracket(table: &[(Rat, Rat)], depth: usize, stage: usize, rule: &BracketRule) -> DimEstimate {
    let small = rule.hi_threshold(depth);
    let hi = table
        .iter()
        .find(|(_, c)| *c < small)
        .map(|(s, _)| s.clone())
        .unwrap_or_else(Rat::one);
    let lo = table
        .iter()
        .rev()
        .find(|(_, c)| *c >= rule.lo_content)
        .map(|(s, _)| s.clone())
        .unwrap_or_else(Rat::zero);
    DimEstimate {
        lo: lo.min(hi.clone()),
        hi,
        depth,
        stage,
    }
}
