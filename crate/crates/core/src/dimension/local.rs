use super::shmerkin::{CellMeasure, ShmerkinMeasure};
use crate::dyadic::{Rat, Word};
use crate::error::{Error, Result};
use crate::measures::DyadicMeasure;
use crate::sets::CantorScheme;

/// A measure on a nested family of cells indexed by words.
pub trait LocalMass {
    fn cell_mass(&self, w: &Word) -> Result<Rat>;
    /// Approximate `log₂` of the length of the level-`m` cells.
    fn log2_length(&self, m: usize) -> f64;
}

/// `Σ_{i<m} log₂ d_i`.
pub fn scheme_log2_shrink(scheme: &CantorScheme, m: usize) -> f64 {
    (0..m).map(|i| scheme.ratio(i).log2_approx()).sum()
}

impl LocalMass for DyadicMeasure {
    fn cell_mass(&self, w: &Word) -> Result<Rat> {
        if w.depth() > self.depth() {
            return Err(Error::InvalidArgument(format!(
                "level {} is below the truncation depth {}",
                w.depth(),
                self.depth()
            )));
        }
        Ok(self.mass(w))
    }

    fn log2_length(&self, m: usize) -> f64 {
        -(m as f64)
    }
}

impl LocalMass for CellMeasure {
    fn cell_mass(&self, w: &Word) -> Result<Rat> {
        if w.depth() > self.depth() {
            return Err(Error::InvalidArgument(format!(
                "level {} is below the materialized depth {}",
                w.depth(),
                self.depth()
            )));
        }
        Ok(self.mass(w))
    }

    fn log2_length(&self, m: usize) -> f64 {
        -scheme_log2_shrink(self.scheme(), m)
    }
}

impl LocalMass for ShmerkinMeasure {
    fn cell_mass(&self, w: &Word) -> Result<Rat> {
        self.mass(w)
    }

    fn log2_length(&self, m: usize) -> f64 {
        -scheme_log2_shrink(self.scheme(), m)
    }
}

/// `(m, log₂ mass(chain_{<m}) / log₂ length_m)` for each requested level.
pub fn local_dimension(mu: &dyn LocalMass, chain: &Word, levels: &[usize]) -> Result<Vec<(usize, f64)>> {
    levels
        .iter()
        .map(|&m| {
            if m == 0 || m > chain.depth() {
                return Err(Error::InvalidArgument(format!(
                    "level {m} is outside 1..={}",
                    chain.depth()
                )));
            }
            let mass = mu.cell_mass(&chain.prefix(m))?;
            if !mass.is_positive() {
                return Err(Error::ZeroMass(m));
            }
            Ok((m, mass.log2_approx() / mu.log2_length(m)))
        })
        .collect()
}
