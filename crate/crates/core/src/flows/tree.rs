use std::collections::BTreeMap;

use crate::dyadic::{Rat, Word};
use crate::error::{Error, Result};

/// Sparse labelling of the words of length at most `depth`; absent words
/// carry 0.
pub type Labelling = BTreeMap<Word, Rat>;

fn sparse(depth: usize, entries: impl IntoIterator<Item = (Word, Rat)>) -> Result<Labelling> {
    let mut out = Labelling::new();
    for (w, x) in entries {
        if w.depth() > depth {
            return Err(Error::Invariant(format!(
                "word {w:?} is deeper than the truncation depth {depth}"
            )));
        }
        if x.is_negative() {
            return Err(Error::Invariant(format!("negative label {x} at {w:?}")));
        }
        if out.contains_key(&w) {
            return Err(Error::Invariant(format!("word {w:?} listed twice")));
        }
        if !x.is_zero() {
            out.insert(w, x);
        }
    }
    Ok(out)
}

/// Capacities on the edges of the binary tree truncated at `depth`. The
/// capacity of `w` bounds the flow through the edge into `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapacityTree {
    depth: usize,
    cap: Labelling,
}

impl CapacityTree {
    pub fn new(depth: usize, entries: impl IntoIterator<Item = (Word, Rat)>) -> Result<CapacityTree> {
        Ok(CapacityTree {
            depth,
            cap: sparse(depth, entries)?,
        })
    }

    /// Evaluates `f` on every word of length at most `depth`.
    pub fn from_fn(depth: usize, f: impl Fn(&Word) -> Rat) -> Result<CapacityTree> {
        CapacityTree::new(
            depth,
            Word::all_up_to_depth(depth).map(|w| {
                let x = f(&w);
                (w, x)
            }),
        )
    }

    pub fn zero(depth: usize) -> CapacityTree {
        CapacityTree {
            depth,
            cap: Labelling::new(),
        }
    }

    /// `cap(w) = 2^{-|w|}`.
    pub fn uniform(depth: usize) -> CapacityTree {
        CapacityTree::from_fn(depth, |w| Rat::dyadic(w.depth() as u64)).expect("valid capacities")
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn get(&self, w: &Word) -> Rat {
        self.cap.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    /// Nonzero capacities, in word order.
    pub fn entries(&self) -> &Labelling {
        &self.cap
    }
}

/// A flow on the truncated tree: `f(v) = f(v0) + f(v1)` for `|v| < depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeFlow {
    depth: usize,
    flow: Labelling,
}

impl TreeFlow {
    pub fn new(depth: usize, entries: impl IntoIterator<Item = (Word, Rat)>) -> Result<TreeFlow> {
        let flow = TreeFlow {
            depth,
            flow: sparse(depth, entries)?,
        };
        flow.check_conservation()?;
        Ok(flow)
    }

    pub(crate) fn from_labelling_unchecked(depth: usize, flow: Labelling) -> TreeFlow {
        debug_assert!(TreeFlow {
            depth,
            flow: flow.clone()
        }
        .check_conservation()
        .is_ok());
        TreeFlow { depth, flow }
    }

    pub fn zero(depth: usize) -> TreeFlow {
        TreeFlow {
            depth,
            flow: Labelling::new(),
        }
    }

    /// `f(v) = 2^{-|v|}`.
    pub fn uniform(depth: usize) -> TreeFlow {
        let flow = Word::all_up_to_depth(depth)
            .map(|w| {
                let x = Rat::dyadic(w.depth() as u64);
                (w, x)
            })
            .collect();
        TreeFlow { depth, flow }
    }

    /// The flow carrying `value` along the path `bit^n`.
    pub fn chain(bit: bool, depth: usize, value: Rat) -> TreeFlow {
        TreeFlow::new(depth, (0..=depth).map(|n| (Word::repeat(bit, n), value.clone()))).expect("a chain is a flow")
    }

    fn check_conservation(&self) -> Result<()> {
        // only nonzero words and their parents can be out of balance
        let mut to_check: Vec<Word> = Vec::new();
        for w in self.flow.keys() {
            if w.depth() < self.depth {
                to_check.push(w.clone());
            }
            if let Some(p) = w.parent() {
                to_check.push(p);
            }
        }
        to_check.sort();
        to_check.dedup();
        for v in to_check {
            let [l, r] = v.children();
            let sum = self.get(&l) + self.get(&r);
            let here = self.get(&v);
            if sum != here {
                return Err(Error::Conservation {
                    word: v,
                    detail: format!("f(v) = {here} but f(v0) + f(v1) = {sum}"),
                });
            }
        }
        Ok(())
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn get(&self, w: &Word) -> Rat {
        self.flow.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn value(&self) -> Rat {
        self.get(&Word::root())
    }

    pub fn entries(&self) -> &Labelling {
        &self.flow
    }

    pub fn scale(&self, c: &Rat) -> TreeFlow {
        if c.is_zero() {
            return TreeFlow::zero(self.depth);
        }
        assert!(c.is_positive(), "flows scale by nonnegative factors");
        TreeFlow {
            depth: self.depth,
            flow: self.flow.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// First word where the flow exceeds the capacity.
    pub fn exceeds(&self, cap: &CapacityTree) -> Option<Word> {
        self.flow.iter().find(|(w, x)| **x > cap.get(w)).map(|(w, _)| w.clone())
    }

    /// First word where `c·self > other`.
    pub fn scaled_exceeds(&self, c: &Rat, other: &TreeFlow) -> Option<Word> {
        self.flow
            .iter()
            .find(|(w, x)| *x * c > other.get(w))
            .map(|(w, _)| w.clone())
    }
}
