use std::fmt;
use std::sync::Arc;

use super::{ClosedSetName, OvertSetName};
use crate::dyadic::{Interval, Rat, Word};
use crate::error::{Error, Result};

#[derive(Clone)]
enum Ratios {
    /// Explicit prefix of the sequence; the last entry repeats forever.
    Sequence(Vec<Rat>),
    Generated(Arc<dyn Fn(usize) -> Rat + Send + Sync>),
}

/// Ratio sequence `(d_i)` generating nested interval families: a cell
/// `[a, b]` at level `i` has children `[a, a + (b-a)/d_i]` and
/// `[b - (b-a)/d_i, b]`.
#[derive(Clone)]
pub struct CantorScheme {
    ratios: Ratios,
}

/// Levels checked eagerly when a scheme is built from a closure.
const GENERATED_CHECK_LEVELS: usize = 64;

impl CantorScheme {
    pub fn constant(d: Rat) -> Result<CantorScheme> {
        CantorScheme::from_sequence(vec![d])
    }

    /// Uses `ratios` for the first levels and repeats the last entry.
    pub fn from_sequence(ratios: Vec<Rat>) -> Result<CantorScheme> {
        if ratios.is_empty() {
            return Err(Error::InvalidArgument("empty ratio sequence".into()));
        }
        for (i, d) in ratios.iter().enumerate() {
            check_ratio(i, d)?;
        }
        Ok(CantorScheme {
            ratios: Ratios::Sequence(ratios),
        })
    }

    /// Ratios produced on demand. The first levels are validated here, later
    /// ones whenever cells are built.
    pub fn from_fn(f: impl Fn(usize) -> Rat + Send + Sync + 'static) -> Result<CantorScheme> {
        let scheme = CantorScheme {
            ratios: Ratios::Generated(Arc::new(f)),
        };
        scheme.validate(GENERATED_CHECK_LEVELS)?;
        Ok(scheme)
    }

    pub fn ratio(&self, level: usize) -> Rat {
        match &self.ratios {
            Ratios::Sequence(v) => v.get(level).unwrap_or_else(|| v.last().unwrap()).clone(),
            Ratios::Generated(f) => f(level),
        }
    }

    /// The explicit ratio list, when the scheme was built from one.
    pub fn sequence(&self) -> Option<&[Rat]> {
        match &self.ratios {
            Ratios::Sequence(v) => Some(v),
            Ratios::Generated(_) => None,
        }
    }

    pub fn validate(&self, levels: usize) -> Result<()> {
        (0..levels).try_for_each(|i| check_ratio(i, &self.ratio(i)))
    }

    /// The two children of a level-`level` cell.
    pub fn split(&self, cell: &Interval, level: usize) -> [Interval; 2] {
        let part = cell.length() / self.ratio(level);
        [
            Interval::new(cell.lo.clone(), &cell.lo + &part),
            Interval::new(&cell.hi - &part, cell.hi.clone()),
        ]
    }

    /// The cell `[a_w, b_w]`.
    pub fn cell(&self, w: &Word) -> Interval {
        w.bits()
            .iter()
            .enumerate()
            .fold(Interval::unit(), |cell, (level, &bit)| {
                let [l, r] = self.split(&cell, level);
                if bit {
                    r
                } else {
                    l
                }
            })
    }

    /// Whether every cell down to `levels` is a dyadic interval: true when
    /// each of the first `levels` ratios is a power of two.
    pub fn is_dyadic_aligned(&self, levels: usize) -> bool {
        (0..levels).all(|i| self.ratio(i).power_of_two_exponent().is_some())
    }
}

impl fmt::Debug for CantorScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.ratios {
            Ratios::Sequence(v) => f.debug_tuple("CantorScheme").field(v).finish(),
            Ratios::Generated(_) => f.write_str("CantorScheme(<generated>)"),
        }
    }
}

fn check_ratio(level: usize, d: &Rat) -> Result<()> {
    if *d < Rat::integer(2) {
        return Err(Error::InvalidArgument(format!("ratio d_{level} = {d} is below 2")));
    }
    Ok(())
}

/// All cells `[a_w, b_w]` with `|w| = n`, in word order.
pub fn cantor_cells(scheme: &CantorScheme, n: usize) -> Result<Vec<(Word, Interval)>> {
    scheme.validate(n)?;
    let mut level = vec![(Word::root(), Interval::unit())];
    for i in 0..n {
        level = level
            .into_iter()
            .flat_map(|(w, cell)| {
                let [l, r] = scheme.split(&cell, i);
                [(w.child(false), l), (w.child(true), r)]
            })
            .collect();
    }
    Ok(level)
}

/// Closed name of the Cantor set: `v` is excluded at stage `t` once `D_v°`
/// misses every level-`t` cell.
#[derive(Clone, Debug)]
pub struct CantorClosed {
    scheme: CantorScheme,
}

pub fn closed_name(scheme: &CantorScheme) -> CantorClosed {
    CantorClosed { scheme: scheme.clone() }
}

impl CantorClosed {
    pub fn scheme(&self) -> &CantorScheme {
        &self.scheme
    }
}

impl ClosedSetName for CantorClosed {
    fn excludes(&self, w: &Word, stage: usize) -> bool {
        let target = w.interval();
        // depth-first search for a level-`stage` cell meeting the interior
        let mut stack = vec![(Interval::unit(), 0usize)];
        while let Some((cell, level)) = stack.pop() {
            if !target.interior_meets_closed(&cell) {
                continue;
            }
            if level == stage {
                return false;
            }
            let [l, r] = self.scheme.split(&cell, level);
            stack.push((r, level + 1));
            stack.push((l, level + 1));
        }
        true
    }
}

/// Overt name of the Cantor set witnessed by left endpoints: `v` is
/// certified at stage `t` once some `a_w` with `|w| ≤ t` lies in `D_v°`.
/// Every `a_w` belongs to the set since `a_{w0} = a_w`.
#[derive(Clone, Debug)]
pub struct CantorOvert {
    scheme: CantorScheme,
}

pub fn overt_name(scheme: &CantorScheme) -> CantorOvert {
    CantorOvert { scheme: scheme.clone() }
}

impl CantorOvert {
    /// The shallowest witness `a_w` in `D_v°` with `|w| ≤ stage`, if any.
    pub fn witness(&self, v: &Word, stage: usize) -> Option<(Word, Rat)> {
        let target = v.interval();
        let mut frontier = vec![(Word::root(), Interval::unit())];
        for level in 0..=stage {
            if let Some((w, cell)) = frontier.iter().find(|(_, cell)| target.interior_contains(&cell.lo)) {
                return Some((w.clone(), cell.lo.clone()));
            }
            if level == stage {
                break;
            }
            frontier = frontier
                .into_iter()
                .flat_map(|(w, cell)| {
                    let [l, r] = self.scheme.split(&cell, level);
                    [(w.child(false), l), (w.child(true), r)]
                })
                .filter(|(_, cell)| target.interior_meets_closed(cell))
                .collect();
            if frontier.is_empty() {
                break;
            }
        }
        None
    }
}

impl OvertSetName for CantorOvert {
    fn certifies(&self, w: &Word, stage: usize) -> bool {
        self.witness(w, stage).is_some()
    }
}
