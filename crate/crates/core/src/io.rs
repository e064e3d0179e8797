//! JSON file formats. Rationals are strings such as `"3/8"`, words are bit
//! strings with `""` for the root, and entries are listed breadth-first.

use serde::{Deserialize, Serialize};

use crate::dyadic::{Rat, Word};
use crate::error::{Error, Result};
use crate::flows::{CapacityTree, Labelling, TreeFlow};
use crate::measures::DyadicMeasure;
use crate::sets::{
    closed_name, overt_name, CantorScheme, ClosedOvertName, ExplicitClosed, ExplicitOvert, NothingCertified,
};

/// A named set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SetFile {
    /// The Cantor set of a ratio sequence; the last ratio repeats.
    Cantor { ratios: Vec<Rat> },
    /// Finite lists of `[stage, [words]]`.
    Explicit {
        #[serde(default)]
        excluded: Vec<(usize, Vec<Word>)>,
        #[serde(default)]
        certified: Vec<(usize, Vec<Word>)>,
    },
    /// `[0, 1]`.
    Unit,
    /// `∅`, excluded from stage 0.
    Empty,
}

impl SetFile {
    pub fn name(&self) -> Result<ClosedOvertName> {
        Ok(match self {
            SetFile::Cantor { .. } => {
                let s = self.scheme().expect("cantor kind")?;
                ClosedOvertName::new(closed_name(&s), overt_name(&s))
            }
            SetFile::Explicit { excluded, certified } => {
                let flat = |v: &[(usize, Vec<Word>)]| -> Vec<(usize, Word)> {
                    v.iter()
                        .flat_map(|(t, ws)| ws.iter().map(move |w| (*t, w.clone())))
                        .collect()
                };
                let name =
                    ClosedOvertName::new(ExplicitClosed::new(flat(excluded)), ExplicitOvert::new(flat(certified)));
                for (t, _) in excluded.iter().chain(certified) {
                    if let Some(w) = name.find_inconsistency(max_depth(excluded, certified), *t) {
                        return Err(Error::Invariant(format!(
                            "word {w:?} is both certified and excluded at stage {t}"
                        )));
                    }
                }
                name
            }
            SetFile::Unit => ClosedOvertName::unit_interval(),
            SetFile::Empty => ClosedOvertName::new(ExplicitClosed::empty_from(0), NothingCertified),
        })
    }

    pub fn scheme(&self) -> Option<Result<CantorScheme>> {
        match self {
            SetFile::Cantor { ratios } => Some(CantorScheme::from_sequence(ratios.clone())),
            _ => None,
        }
    }

    pub fn from_closed_overt(excluded: Vec<(usize, Vec<Word>)>, certified: Vec<(usize, Vec<Word>)>) -> SetFile {
        SetFile::Explicit { excluded, certified }
    }
}

fn max_depth(a: &[(usize, Vec<Word>)], b: &[(usize, Vec<Word>)]) -> usize {
    a.iter()
        .chain(b)
        .flat_map(|(_, ws)| ws.iter().map(Word::depth))
        .max()
        .unwrap_or(0)
}

/// Capacities or a flow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeFile {
    pub depth: usize,
    pub entries: Vec<(Word, Rat)>,
}

impl TreeFile {
    pub fn from_labelling(depth: usize, l: &Labelling) -> TreeFile {
        TreeFile {
            depth,
            entries: l.iter().map(|(w, x)| (w.clone(), x.clone())).collect(),
        }
    }

    pub fn capacities(&self) -> Result<CapacityTree> {
        CapacityTree::new(self.depth, self.entries.clone())
    }

    pub fn flow(&self) -> Result<TreeFlow> {
        TreeFlow::new(self.depth, self.entries.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub s: Rat,
    pub depth: usize,
    pub k: u64,
    pub verdict: String,
    pub bound: Rat,
}

/// A measure; unlisted words above listed ones are filled in by
/// additivity, other unlisted words carry 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureFile {
    pub depth: usize,
    pub total: Rat,
    pub mass: Vec<(Word, Rat)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl MeasureFile {
    pub fn from_measure(mu: &DyadicMeasure) -> MeasureFile {
        MeasureFile {
            depth: mu.depth(),
            total: mu.total(),
            mass: mu.entries().iter().map(|(w, x)| (w.clone(), x.clone())).collect(),
            certificate: None,
        }
    }

    pub fn measure(&self) -> Result<DyadicMeasure> {
        let mu = DyadicMeasure::completed(self.depth, self.mass.clone())?;
        if mu.total() != self.total {
            return Err(Error::Additivity {
                word: Word::root(),
                detail: format!("declared total {} but the masses sum to {}", self.total, mu.total()),
            });
        }
        Ok(mu)
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
