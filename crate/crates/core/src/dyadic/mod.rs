//! Exact substrate: rationals, dyadic words and their intervals, lower reals.

mod lower;
mod rat;
mod word;

pub use lower::{LowerRealApprox, AUDIT_STAGES};
pub use rat::Rat;
pub use word::{Interval, Word};

/// The closed dyadic interval labelled by `w`.
pub fn interval_of_word(w: &Word) -> Interval {
    w.interval()
}

/// Stage `t` of a lower real.
pub fn lower_real_value(x: &LowerRealApprox, t: usize) -> Rat {
    x.value(t)
}

/// `2^{-⌈s·n⌉}`, the ceiling capacity used for depth-`n` vertices.
pub fn ceiling_capacity(s: &Rat, n: usize) -> Rat {
    Rat::dyadic(s.ceil_mul(n as u64))
}
