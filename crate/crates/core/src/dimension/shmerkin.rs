use crate::dyadic::{Rat, Word};
use crate::error::{Error, Result};
use crate::flows::{Labelling, TreeFlow};
use crate::sets::CantorScheme;

/// Masses of the scheme cells `[a_w, b_w]`, additive over children.
#[derive(Clone, Debug)]
pub struct CellMeasure {
    scheme: CantorScheme,
    mass: TreeFlow,
}

impl CellMeasure {
    pub fn new(
        scheme: CantorScheme,
        depth: usize,
        entries: impl IntoIterator<Item = (Word, Rat)>,
    ) -> Result<CellMeasure> {
        let mass = TreeFlow::new(depth, entries).map_err(|e| match e {
            Error::Conservation { word, detail } => Error::Additivity { word, detail },
            other => other,
        })?;
        Ok(CellMeasure { scheme, mass })
    }

    pub fn scheme(&self) -> &CantorScheme {
        &self.scheme
    }

    pub fn depth(&self) -> usize {
        self.mass.depth()
    }

    pub fn mass(&self, w: &Word) -> Rat {
        self.mass.get(w)
    }

    /// Nonzero masses, in word order.
    pub fn entries(&self) -> &Labelling {
        self.mass.entries()
    }

    pub fn level_total(&self, m: usize) -> Rat {
        self.entries()
            .iter()
            .filter(|(w, _)| w.depth() == m)
            .map(|(_, x)| x)
            .sum()
    }
}

/// The fibre measure `μ_p` over a bit sequence `p = p(1) p(2) …`: at level
/// `k²` all of a cell's mass goes to the child chosen by `p(k)`, at every
/// other level it is halved between the children.
#[derive(Clone, Debug)]
pub struct ShmerkinMeasure {
    bits: Vec<bool>,
    scheme: CantorScheme,
}

pub fn shmerkin_measure(bits: Vec<bool>, scheme: CantorScheme) -> ShmerkinMeasure {
    ShmerkinMeasure { bits, scheme }
}

/// `⌊√n⌋`.
pub fn isqrt(n: usize) -> usize {
    let mut k = (n as f64).sqrt() as usize;
    while k * k > n {
        k -= 1;
    }
    while (k + 1) * (k + 1) <= n {
        k += 1;
    }
    k
}

impl ShmerkinMeasure {
    pub fn scheme(&self) -> &CantorScheme {
        &self.scheme
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    fn check_depth(&self, n: usize) -> Result<()> {
        let needed = isqrt(n);
        if self.bits.len() < needed {
            let k = self.bits.len() + 1;
            return Err(Error::InvalidArgument(format!(
                "bit sequence too short: p({k}) is needed for level {}",
                k * k
            )));
        }
        Ok(())
    }

    /// The bit forced on the step into level `level`, if `level = k²`.
    pub fn forced_bit(&self, level: usize) -> Option<bool> {
        let k = isqrt(level);
        (k >= 1 && k * k == level).then(|| self.bits[k - 1])
    }

    /// `μ_p([a_w, b_w])` in closed form.
    pub fn mass(&self, w: &Word) -> Result<Rat> {
        self.check_depth(w.depth())?;
        let mut halvings = 0u64;
        for (i, &b) in w.bits().iter().enumerate() {
            match self.forced_bit(i + 1) {
                Some(p) if p != b => return Ok(Rat::zero()),
                Some(_) => {}
                None => halvings += 1,
            }
        }
        Ok(Rat::dyadic(halvings))
    }

    /// The cells of positive mass up to `depth`.
    pub fn materialize(&self, depth: usize) -> Result<CellMeasure> {
        self.check_depth(depth)?;
        let mut entries = vec![(Word::root(), Rat::one())];
        let mut level = vec![(Word::root(), Rat::one())];
        for m in 1..=depth {
            let forced = self.forced_bit(m);
            level = level
                .into_iter()
                .flat_map(|(w, x)| match forced {
                    Some(b) => vec![(w.child(b), x)],
                    None => {
                        let half = x * Rat::new(1, 2);
                        vec![(w.child(false), half.clone()), (w.child(true), half)]
                    }
                })
                .collect();
            entries.extend(level.iter().cloned());
        }
        CellMeasure::new(self.scheme.clone(), depth, entries)
    }

    /// A word of length `n` with positive mass, following `free` off the
    /// square levels.
    pub fn chain(&self, n: usize, free: impl Fn(usize) -> bool) -> Result<Word> {
        self.check_depth(n)?;
        Ok(Word::from_bits(
            (1..=n).map(|m| self.forced_bit(m).unwrap_or_else(|| free(m))).collect(),
        ))
    }
}
