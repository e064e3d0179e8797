use std::sync::Arc;

use super::{ClosedOvertName, ClosedSetName, OvertSetName};
use crate::dyadic::{Interval, Rat, Word};
use crate::error::{Error, Result};

/// The affine image `{a + x(b - a) : x ∈ A}` of a named set.
///
/// Exclusion is read off the deepest source word whose interval contains the
/// preimage of `D_v°`; certification searches, down to the query stage, for
/// a certified source word whose image lies inside `D_v°`.
#[derive(Clone, Debug)]
pub struct Rescaled {
    inner: ClosedOvertName,
    target: Interval,
}

pub fn rescale(name: &ClosedOvertName, target: Interval) -> Result<Rescaled> {
    if target.lo >= target.hi {
        return Err(Error::InvalidArgument(format!("degenerate rescaling target {target}")));
    }
    Ok(Rescaled {
        inner: name.clone(),
        target,
    })
}

impl Rescaled {
    pub fn target(&self) -> &Interval {
        &self.target
    }

    pub fn into_name(self) -> ClosedOvertName {
        let shared = Arc::new(self);
        ClosedOvertName {
            closed: shared.clone(),
            overt: shared,
        }
    }

    /// Preimage of `D_v° ∩ (a, b)` as an open interval, or `None` when the
    /// intersection is empty.
    fn preimage(&self, v: &Word) -> Option<Interval> {
        let d = v.interval();
        let lo = d.lo.clone().max(self.target.lo.clone());
        let hi = d.hi.clone().min(self.target.hi.clone());
        if lo >= hi {
            return None;
        }
        let width = self.target.length();
        Some(Interval::new(
            (lo - &self.target.lo) / &width,
            (hi - &self.target.lo) / &width,
        ))
    }
}

/// The deepest word whose closed interval contains `j`.
fn deepest_container(j: &Interval) -> Word {
    let mut w = Word::root();
    loop {
        let mid = w.interval().midpoint();
        if j.hi <= mid {
            w = w.child(false);
        } else if j.lo >= mid {
            w = w.child(true);
        } else {
            return w;
        }
    }
}

impl ClosedSetName for Rescaled {
    fn excludes(&self, v: &Word, stage: usize) -> bool {
        match self.preimage(v) {
            None => true,
            Some(j) => self.inner.closed.excludes(&deepest_container(&j), stage),
        }
    }
}

impl OvertSetName for Rescaled {
    fn certifies(&self, v: &Word, stage: usize) -> bool {
        let Some(j) = self.preimage(v) else {
            return false;
        };
        let mut stack = vec![Word::root()];
        while let Some(u) = stack.pop() {
            let d = u.interval();
            if j.contains_interval(&d) {
                if self.inner.overt.certifies(&u, stage) {
                    return true;
                }
                continue;
            }
            if d.interiors_meet(&j) && u.depth() < stage {
                let [l, r] = u.children();
                stack.push(r);
                stack.push(l);
            }
        }
        false
    }
}

/// The word `0^{2i+1}1`, whose interval is `[2^{-2i-2}, 2^{-2i-1}]`.
pub fn block_word(i: usize) -> Word {
    Word::repeat(false, 2 * i + 1).child(true)
}

#[derive(Clone)]
enum Sequence {
    Finite(Vec<ClosedOvertName>),
    Lazy(Arc<dyn Fn(usize) -> ClosedOvertName + Send + Sync>),
}

/// `{0} ∪ ⋃_i A_i` with `A_i` rescaled into `[2^{-2i-2}, 2^{-2i-1}]`.
/// Stage `t` consults the names `0..=t`; while later names remain, nothing
/// meeting the region reserved for them is excluded.
#[derive(Clone)]
pub struct Assembled {
    names: Sequence,
}

pub fn assemble(names: Vec<ClosedOvertName>) -> Assembled {
    Assembled {
        names: Sequence::Finite(names),
    }
}

pub fn assemble_lazy(f: impl Fn(usize) -> ClosedOvertName + Send + Sync + 'static) -> Assembled {
    Assembled {
        names: Sequence::Lazy(Arc::new(f)),
    }
}

impl Assembled {
    pub fn into_name(self) -> ClosedOvertName {
        let shared = Arc::new(self);
        ClosedOvertName {
            closed: shared.clone(),
            overt: shared,
        }
    }

    /// Number of names consulted at `stage`, and whether more remain.
    fn known(&self, stage: usize) -> (usize, bool) {
        match &self.names {
            Sequence::Finite(v) => {
                let k = v.len().min(stage + 1);
                (k, k < v.len())
            }
            Sequence::Lazy(_) => (stage + 1, true),
        }
    }

    fn block(&self, i: usize) -> Rescaled {
        let name = match &self.names {
            Sequence::Finite(v) => v[i].clone(),
            Sequence::Lazy(f) => f(i),
        };
        Rescaled {
            inner: name,
            target: block_word(i).interval(),
        }
    }
}

impl ClosedSetName for Assembled {
    fn excludes(&self, v: &Word, stage: usize) -> bool {
        let d = v.interval();
        let (known, more) = self.known(stage);
        // later blocks all live in [0, 2^{-2 known - 1}]
        if more && d.lo < Rat::dyadic(2 * known as u64 + 1) {
            return false;
        }
        (0..known).all(|i| !d.interiors_meet(&block_word(i).interval()) || self.block(i).excludes(v, stage))
    }
}

impl OvertSetName for Assembled {
    fn certifies(&self, v: &Word, stage: usize) -> bool {
        let d = v.interval();
        let (known, _) = self.known(stage);
        (0..known).any(|i| d.interiors_meet(&block_word(i).interval()) && self.block(i).certifies(v, stage))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{closed_name, left_endpoint, overt_name, CantorScheme, ExplicitClosed};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn iv(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::new(Rat::new(a.0, a.1), Rat::new(b.0, b.1))
    }

    fn middle_thirds() -> ClosedOvertName {
        let s = CantorScheme::constant(Rat::integer(3)).unwrap();
        ClosedOvertName::new(closed_name(&s), overt_name(&s))
    }

    #[test]
    fn degenerate_target_rejected() {
        let r = rescale(&ClosedOvertName::unit_interval(), iv((1, 2), (1, 2)));
        assert!(r.is_err());
    }

    #[test]
    fn full_interval_into_quarter_block() {
        let r = rescale(&ClosedOvertName::unit_interval(), iv((1, 4), (1, 2))).unwrap();
        for v in Word::all_up_to_depth(6) {
            let d = v.interval();
            let outside = !d.interiors_meet(&iv((1, 4), (1, 2)));
            assert_eq!(r.excludes(&v, 0), outside, "{v:?}");
            assert_eq!(r.certifies(&v, 8), !outside, "{v:?}");
        }
    }

    #[test]
    fn endpoint_chain_moves_to_one_half() {
        let r = rescale(&left_endpoint(8), iv((1, 2), (3, 4))).unwrap();
        assert!(!r.excludes(&w("1000"), 0));
        assert!(r.excludes(&w("1001"), 0));
        assert!(r.excludes(&w("0"), 0));
        assert!(r.excludes(&w("11"), 0));
        assert!(r.certifies(&w("100"), 3));
    }

    #[test]
    fn identity_rescale_agrees_in_the_limit() {
        let a = middle_thirds();
        let r = rescale(&a, Interval::unit()).unwrap();
        for v in Word::all_up_to_depth(6) {
            assert_eq!(r.excludes(&v, 6), a.excludes(&v, 6));
            assert_eq!(r.certifies(&v, 6), a.certifies(&v, 6));
        }
    }

    #[test]
    fn round_trip_through_the_left_half() {
        let a = middle_thirds();
        let half = rescale(&a, iv((0, 1), (1, 2))).unwrap().into_name();
        let back = rescale(&half, iv((0, 1), (2, 1))).unwrap();
        for v in Word::all_up_to_depth(7) {
            for t in [1, 3, 6] {
                assert_eq!(back.excludes(&v, t), a.excludes(&v, t), "{v:?} {t}");
            }
        }
    }

    #[test]
    fn non_dyadic_target_stays_consistent() {
        let a = middle_thirds();
        let r = rescale(&a, iv((1, 3), (5, 7))).unwrap().into_name();
        assert_eq!(r.find_inconsistency(8, 10), None);
    }

    #[test]
    fn assemble_single_full_interval() {
        let asm = assemble(vec![ClosedOvertName::unit_interval()]);
        assert!(asm.excludes(&w("1"), 0));
        assert!(!asm.excludes(&w("01"), 0));
        assert!(asm.excludes(&w("00"), 0));
        assert!(asm.certifies(&w("01"), 2));
        assert!(!asm.certifies(&w("00"), 9));
    }

    #[test]
    fn assemble_empty_sequence_keeps_only_zero() {
        let asm = assemble(Vec::new());
        for v in Word::all_up_to_depth(5) {
            assert!(asm.excludes(&v, 0));
            assert!(!asm.certifies(&v, 5));
        }
    }

    #[test]
    fn assemble_all_full_intervals_lazily() {
        let asm = assemble_lazy(|_| ClosedOvertName::unit_interval());
        assert!(asm.excludes(&w("11"), 1));
        assert!(!asm.excludes(&w("0000"), 1));
        assert!(asm.certifies(&w("0001"), 3));
        assert!(asm.excludes(&w("001"), 1));
        assert!(!asm.excludes(&w("000001"), 1));
        assert!(!asm.excludes(&w("000001"), 9));
        let name = asm.into_name();
        assert_eq!(name.find_inconsistency(8, 6), None);
    }

    #[test]
    fn assemble_blocks_hold_rescaled_sets() {
        let empty = ClosedOvertName::new(ExplicitClosed::empty_from(0), crate::sets::NothingCertified);
        let asm = assemble(vec![empty, ClosedOvertName::unit_interval()]);
        assert!(asm.excludes(&w("01"), 5));
        assert!(!asm.excludes(&w("0001"), 5));
    }
}
