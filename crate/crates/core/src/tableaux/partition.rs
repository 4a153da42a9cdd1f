//! Integer partitions and their cell statistics.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Cell-count cap for operations that materialize one value per cell
/// (hooks, contents, conjugates).
pub const CELL_GUARD: u64 = 1_000_000;

/// A partition: weakly decreasing positive parts. Parts are big integers
/// because scan families multiply rows by factors like 10^1000; per-cell
/// operations are guarded instead of assuming small parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<BigUint>,
}

impl Partition {
    /// Builds from any weakly decreasing list; trailing zeros are padding
    /// and are dropped (inputs like "8,4,3,1,1,0,0" are accepted).
    pub fn new(mut parts: Vec<BigUint>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        while parts.last().map_or(false, |p| p.is_zero()) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn from_u64(parts: &[u64]) -> Result<Self> {
        Partition::new(parts.iter().map(|&p| BigUint::from(p)).collect())
    }

    /// Parses "8,4,3,1,1"; the empty string is the empty partition.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<BigUint>()
                    .map_err(|e| Error::parse(format!("bad partition part {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[BigUint] {
        &self.parts
    }

    /// Number of (positive) parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// i-th part, 0-indexed, zero beyond the length.
    pub fn part(&self, i: usize) -> BigUint {
        self.parts.get(i).cloned().unwrap_or_else(BigUint::zero)
    }

    /// |lambda|: sum of the parts.
    pub fn size(&self) -> BigUint {
        self.parts.iter().sum()
    }

    /// All parts multiplied by a positive factor.
    pub fn scaled(&self, factor: &BigUint) -> Result<Partition> {
        if factor.is_zero() {
            return Err(Error::Domain("scale factor must be positive".into()));
        }
        Ok(Partition {
            parts: self.parts.iter().map(|p| p * factor).collect(),
        })
    }

    /// The reduction that deletes the first lambda_m columns: every part
    /// becomes lambda_i - lambda_m (a no-op when the padded length exceeds
    /// the number of parts). Exposed explicitly, never applied silently.
    pub fn first_column_reduced(&self, m: u64) -> Partition {
        let min = match usize::try_from(m) {
            Ok(m) if m >= 1 && m <= self.parts.len() => self.part(m.saturating_sub(1)),
            _ => return self.clone(),
        };
        let parts = self
            .parts
            .iter()
            .map(|p| p - &min)
            .take_while(|p| !p.is_zero())
            .collect();
        Partition { parts }
    }

    fn cell_dims(&self) -> Result<(usize, usize)> {
        let cols = self
            .part(0)
            .to_u64()
            .filter(|&c| c <= CELL_GUARD)
            .ok_or_else(|| {
                Error::InstanceTooLarge(format!(
                    "partition with first part {} exceeds the {CELL_GUARD}-cell guard",
                    self.part(0)
                ))
            })?;
        if self.size() > BigUint::from(CELL_GUARD) {
            return Err(Error::InstanceTooLarge(format!(
                "partition with {} cells exceeds the {CELL_GUARD}-cell guard",
                self.size()
            )));
        }
        Ok((self.parts.len(), cols as usize))
    }

    /// Lengths of the columns (the conjugate partition).
    pub fn conjugate(&self) -> Result<Partition> {
        let (_, cols) = self.cell_dims()?;
        let mut parts = Vec::with_capacity(cols);
        for j in 0..cols as u64 {
            let col = self.parts.iter().take_while(|p| **p > BigUint::from(j)).count();
            parts.push(BigUint::from(col));
        }
        Ok(Partition { parts })
    }

    /// Hook lengths (arm + leg + 1) of all cells, sorted decreasing.
    pub fn hooks(&self) -> Result<Vec<u64>> {
        self.cell_dims()?;
        let rows: Vec<u64> = self.parts.iter().map(|p| p.to_u64().unwrap()).collect();
        let cols = rows.first().copied().unwrap_or(0);
        let mut col_len = vec![0u64; cols as usize];
        for &r in &rows {
            for c in col_len.iter_mut().take(r as usize) {
                *c += 1;
            }
        }
        let mut hooks = Vec::with_capacity(self.size().to_usize().unwrap());
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..r {
                let arm = r - 1 - j;
                let leg = col_len[j as usize] - 1 - i as u64;
                hooks.push(arm + leg + 1);
            }
        }
        hooks.sort_unstable_by(|a, b| b.cmp(a));
        Ok(hooks)
    }

    /// Contents j - i (1-indexed cell in row i, column j), sorted decreasing.
    pub fn contents(&self) -> Result<Vec<i64>> {
        self.cell_dims()?;
        let mut contents = Vec::with_capacity(self.size().to_usize().unwrap());
        for (i, p) in self.parts.iter().enumerate() {
            let r = p.to_u64().unwrap();
            for j in 0..r {
                contents.push(j as i64 - i as i64);
            }
        }
        contents.sort_unstable_by(|a, b| b.cmp(a));
        Ok(contents)
    }

    /// Minimal rank of a semistandard filling: sum of (i-1) * lambda_i.
    pub fn rank_min(&self) -> BigUint {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, p)| p * BigUint::from(i))
            .sum()
    }

    /// |lambda| - max(lambda_1, number of parts); needs no cell guard.
    pub fn aft(&self) -> Result<BigUint> {
        if self.is_empty() {
            return Err(Error::EmptyPartition);
        }
        let ell = BigUint::from(self.parts.len());
        let max = self.part(0).max(ell);
        Ok(self.size() - max)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}
