//! Functions of unitation: fitness depends only on the number of one-bits.

use std::fmt;
use std::str::FromStr;

use crate::engine::Bitstring;
use crate::error::{Error, Result};

/// A fitness function that depends only on the number of one-bits.
///
/// The engine only ever passes one-counts, so any implementor is a valid
/// cGA objective.
pub trait Unitation {
    fn n(&self) -> usize;

    /// Fitness of any string with `ones` one-bits.
    fn value(&self, ones: usize) -> f64;

    /// Whether strings with `ones` one-bits are global optima.
    fn is_optimal(&self, ones: usize) -> bool {
        ones == self.n()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FitnessKind {
    OneMax,
    Cliff,
}

impl FitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            FitnessKind::OneMax => "onemax",
            FitnessKind::Cliff => "cliff",
        }
    }
}

impl fmt::Display for FitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FitnessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "onemax" | "one-max" | "om" => Ok(FitnessKind::OneMax),
            "cliff" => Ok(FitnessKind::Cliff),
            other => Err(Error::param(format!("unknown fitness function '{other}'"))),
        }
    }
}

/// Which side of the cliff a one-count lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slope {
    /// At most 2n/3 ones.
    First,
    /// More than 2n/3 ones.
    Second,
}

/// OneMax or Cliff as a table of `n + 1` values indexed by one-count.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitationFunction {
    kind: FitnessKind,
    n: usize,
    values: Vec<f64>,
}

impl UnitationFunction {
    pub fn new(kind: FitnessKind, n: usize) -> Result<Self> {
        match kind {
            FitnessKind::OneMax => Self::onemax(n),
            FitnessKind::Cliff => Self::cliff(n),
        }
    }

    pub fn onemax(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("n must be positive"));
        }
        Ok(Self {
            kind: FitnessKind::OneMax,
            n,
            values: (0..=n).map(|j| j as f64).collect(),
        })
    }

    /// Cliff: `j` on the first slope (`j <= 2n/3`), `j - n/3 + 1/2` beyond.
    pub fn cliff(n: usize) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(3) {
            return Err(Error::param(format!(
                "n must be divisible by 3 for cliff (got n={n})"
            )));
        }
        let top = 2 * n / 3;
        let drop = (n / 3) as f64 - 0.5;
        let values = (0..=n)
            .map(|j| if j <= top { j as f64 } else { j as f64 - drop })
            .collect();
        Ok(Self {
            kind: FitnessKind::Cliff,
            n,
            values,
        })
    }

    pub fn kind(&self) -> FitnessKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Location of the cliff, `2n/3` (floored for OneMax).
    pub fn cliff_threshold(&self) -> usize {
        2 * self.n / 3
    }

    pub fn evaluate(&self, x: &Bitstring) -> Result<f64> {
        self.check_len(x)?;
        Ok(self.values[x.ones()])
    }

    pub fn is_global_optimum(&self, x: &Bitstring) -> Result<bool> {
        self.check_len(x)?;
        Ok(x.ones() == self.n)
    }

    pub fn slope_of(&self, ones: usize) -> Result<Slope> {
        if self.kind != FitnessKind::Cliff {
            return Err(Error::param("slopes are only defined for cliff"));
        }
        if ones > self.n {
            return Err(Error::param(format!("ones={ones} exceeds n={}", self.n)));
        }
        Ok(if ones <= self.cliff_threshold() {
            Slope::First
        } else {
            Slope::Second
        })
    }

    fn check_len(&self, x: &Bitstring) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::param(format!(
                "bitstring has length {}, function expects {}",
                x.len(),
                self.n
            )));
        }
        Ok(())
    }
}

impl Unitation for UnitationFunction {
    fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn value(&self, ones: usize) -> f64 {
        self.values[ones]
    }
}
