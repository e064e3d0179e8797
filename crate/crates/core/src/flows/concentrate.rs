use super::tree::{Labelling, TreeFlow};
use crate::dyadic::{Rat, Word};
use crate::error::{Error, Result};

/// `2^{-2|v|-1}`, the least nonzero value a concentrated flow may take at `v`.
pub fn concentration_floor(v: &Word) -> Rat {
    Rat::dyadic(2 * v.depth() as u64 + 1)
}

/// A concentrated flow `g` with `g(ε) = 1/2` and `f(ε)·g ≤ f`.
///
/// Works on `f / f(ε)` and keeps, on the support of `g`,
/// `g(v) + 2^{-2|v|-1} ≤ f(v)` and `2^{-2|v|-1} ≤ g(v)`. With
/// `t = 2^{-2|v|-3}` each vertex splits its value in both children when both
/// carry at least `2t`; otherwise all of it goes to a child carrying at
/// least `3t`.
pub fn concentrate_flow(f: &TreeFlow) -> Result<TreeFlow> {
    let total = f.value();
    if !total.is_positive() {
        return Err(Error::InvalidArgument("cannot concentrate the zero flow".into()));
    }
    let norm = |w: &Word| f.get(w) / &total;
    let depth = f.depth();
    let mut g = Labelling::new();
    let mut stack = vec![(Word::root(), Rat::new(1, 2))];
    while let Some((v, gv)) = stack.pop() {
        if v.depth() < depth {
            let [l, r] = v.children();
            let (fl, fr) = (norm(&l), norm(&r));
            let t = Rat::dyadic(2 * v.depth() as u64 + 3);
            let two_t = &t + &t;
            let three_t = &two_t + &t;
            let (gl, gr) = if fl >= two_t && fr >= two_t {
                let gl = (&fl - &t).min(&gv - &t);
                let gr = &gv - &gl;
                (gl, gr)
            } else if fl >= three_t {
                (gv.clone(), Rat::zero())
            } else if fr >= three_t {
                (Rat::zero(), gv.clone())
            } else {
                return Err(Error::Concentration {
                    word: v,
                    detail: "no case applies; the input is not a flow".into(),
                });
            };
            if !gr.is_zero() {
                stack.push((r, gr));
            }
            if !gl.is_zero() {
                stack.push((l, gl));
            }
        }
        g.insert(v, gv);
    }
    Ok(TreeFlow::from_labelling_unchecked(depth, g))
}

/// First word where `g` is nonzero but below `2^{-2|v|-1}`.
pub fn concentration_violation(g: &TreeFlow) -> Option<Word> {
    g.entries()
        .iter()
        .find(|(w, x)| **x < concentration_floor(w))
        .map(|(w, _)| w.clone())
}
