use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A path from the root: `false` forks left, `true` forks right.
///
/// Displayed as a 0/1 string, with `ε` for the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Address(Vec<bool>);

impl Address {
    pub fn root() -> Self {
        Address(Vec::new())
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        Address(bits.into_iter().collect())
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn pop(&mut self) -> Option<bool> {
        self.0.pop()
    }

    /// The address extended by one more step.
    pub fn child(&self, bit: bool) -> Self {
        let mut a = self.clone();
        a.0.push(bit);
        a
    }

    /// Concatenation `self · suffix`.
    pub fn concat(&self, suffix: &Address) -> Self {
        let mut a = self.clone();
        a.0.extend_from_slice(&suffix.0);
        a
    }

    /// `self ⊑ other`.
    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn comparable(&self, other: &Address) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// Longest common prefix.
    pub fn meet(&self, other: &Address) -> Address {
        Address(
            self.0
                .iter()
                .zip(&other.0)
                .take_while(|(x, y)| x == y)
                .map(|(x, _)| *x)
                .collect(),
        )
    }

    pub fn count_zeros(&self) -> usize {
        self.0.iter().filter(|b| !**b).count()
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }

    /// Number of occurrences of the factor `10`.
    pub fn count_ten(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] && !w[1]).count()
    }

    /// Number of trailing `1`s.
    pub fn trailing_ones(&self) -> usize {
        self.0.iter().rev().take_while(|b| **b).count()
    }

    /// Number of trailing `0`s.
    pub fn trailing_zeros(&self) -> usize {
        self.0.iter().rev().take_while(|b| !**b).count()
    }

    /// True when every bit is `1` (the empty address included).
    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|b| *b)
    }

    /// Shape `1^p 0^q`: returns `(p, q)`.
    pub fn as_ones_then_zeros(&self) -> Option<(usize, usize)> {
        let p = self.0.iter().take_while(|b| **b).count();
        if self.0[p..].iter().all(|b| !*b) {
            Some((p, self.0.len() - p))
        } else {
            None
        }
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for b in &self.0 {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Address {
    type Err = Error;

    /// Accepts a 0/1 string; `ε`, `e` and the empty string denote the root.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "ε" || s == "e" {
            return Ok(Address::root());
        }
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::parse(i, format!("unexpected {c:?} in address"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Address)
    }
}
