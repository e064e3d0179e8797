use std::fmt;
use std::sync::Arc;

use super::Rat;
use crate::error::Error;

/// A lower real: known only through a nondecreasing sequence of rational
/// lower bounds, queried by stage.
#[derive(Clone)]
pub struct LowerRealApprox {
    stages: Arc<dyn Fn(usize) -> Rat + Send + Sync>,
}

/// Number of stages inspected by [`LowerRealApprox::audit`].
pub const AUDIT_STAGES: usize = 100;

impl LowerRealApprox {
    pub fn from_fn(f: impl Fn(usize) -> Rat + Send + Sync + 'static) -> LowerRealApprox {
        LowerRealApprox { stages: Arc::new(f) }
    }

    pub fn constant(q: Rat) -> LowerRealApprox {
        LowerRealApprox::from_fn(move |_| q.clone())
    }

    /// Builds an approximant and rejects it unless the first
    /// [`AUDIT_STAGES`] stages are monotone.
    pub fn checked(f: impl Fn(usize) -> Rat + Send + Sync + 'static) -> Result<LowerRealApprox, Error> {
        let x = LowerRealApprox::from_fn(f);
        x.audit(AUDIT_STAGES)?;
        Ok(x)
    }

    pub fn value(&self, t: usize) -> Rat {
        (self.stages)(t)
    }

    /// Checks `stages(t) ≤ stages(t+1)` for `t < n`.
    pub fn audit(&self, n: usize) -> Result<(), Error> {
        let mut prev = self.value(0);
        for t in 1..=n {
            let next = self.value(t);
            if next < prev {
                return Err(Error::Invariant(format!(
                    "lower real decreases at stage {t}: {prev} > {next}"
                )));
            }
            prev = next;
        }
        Ok(())
    }
}

impl fmt::Debug for LowerRealApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LowerRealApprox")
            .field("stage0", &self.value(0))
            .finish_non_exhaustive()
    }
}
