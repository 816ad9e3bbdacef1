//! Tuning parameters for the partitioning pipeline.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::matching::MatchingPolicy;

/// Imbalance parameter epsilon, kept as an exact decimal rational so balance
/// checks never depend on float rounding. `num / den` with `den` a power of
/// ten.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Imbalance {
    pub num: u64,
    pub den: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ImbalanceParseError {
    #[error("invalid decimal {0:?}")]
    Invalid(String),
    #[error("at most 9 fractional digits supported, got {0}")]
    TooPrecise(usize),
}

impl Imbalance {
    pub const fn new(num: u64, den: u64) -> Self {
        Imbalance { num, den }
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl FromStr for Imbalance {
    type Err = ImbalanceParseError;

    /// Parse a non-negative decimal like "0.1", "0.03", or "1".
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ImbalanceParseError::Invalid(s.to_string());
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if frac_part.len() > 9 {
            return Err(ImbalanceParseError::TooPrecise(frac_part.len()));
        }
        let digits = |t: &str| t.is_empty() || t.bytes().all(|b| b.is_ascii_digit());
        if !digits(int_part) || !digits(frac_part) {
            return Err(bad());
        }
        let int_val: u64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| bad())?
        };
        let den = 10u64.pow(frac_part.len() as u32);
        let frac_val: u64 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().map_err(|_| bad())?
        };
        Ok(Imbalance::new(int_val * den + frac_val, den))
    }
}

impl fmt::Display for Imbalance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            let digits = self.den.ilog10() as usize;
            write!(
                f,
                "{}.{:0width$}",
                self.num / self.den,
                self.num % self.den,
                width = digits
            )
        }
    }
}

/// Pipeline configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    pub policy: MatchingPolicy,
    /// Maximum number of coarsening levels.
    pub coarse_to: u32,
    /// Refinement rounds per level.
    pub refine_iters: u32,
    pub epsilon: Imbalance,
    /// Number of parts to produce.
    pub k: u32,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            policy: MatchingPolicy::Ldh,
            coarse_to: 25,
            refine_iters: 2,
            epsilon: Imbalance::new(1, 10),
            k: 2,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamsError {
    #[error("coarse_to must be >= 1")]
    CoarseTo,
    #[error("k must be >= 1")]
    K,
}

impl Params {
    pub fn check(&self) -> Result<(), ParamsError> {
        if self.coarse_to < 1 {
            return Err(ParamsError::CoarseTo);
        }
        if self.k < 1 {
            return Err(ParamsError::K);
        }
        Ok(())
    }
}
