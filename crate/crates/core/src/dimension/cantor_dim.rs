use crate::error::{Error, Result};
use crate::sets::CantorScheme;

/// Approximate values of `ln 2 / ln d_i` for `i < n`, and the minima of
/// their tails: `tail_min[i] = min_{i ≤ j < n} terms[j]`. The dimension of
/// the scheme's set is the liminf of the terms.
#[derive(Clone, Debug, PartialEq)]
pub struct CantorDimPartial {
    pub terms: Vec<f64>,
    pub tail_min: Vec<f64>,
}

pub fn cantor_dim_partial(scheme: &CantorScheme, n: usize) -> Result<CantorDimPartial> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one level".into()));
    }
    scheme.validate(n)?;
    let terms: Vec<f64> = (0..n).map(|i| 1.0 / scheme.ratio(i).log2_approx()).collect();
    let mut tail_min = terms.clone();
    for i in (0..n - 1).rev() {
        tail_min[i] = tail_min[i].min(tail_min[i + 1]);
    }
    Ok(CantorDimPartial { terms, tail_min })
}
