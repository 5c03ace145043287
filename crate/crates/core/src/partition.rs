//! Strict partitions and shifted skew shapes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A strictly decreasing sequence of positive integers.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct StrictPartition {
    parts: Vec<u32>,
}

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse { what: "strict partition", reason: format!("{parts:?} has a zero part") });
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Parse {
                what: "strict partition",
                reason: format!("{parts:?} is not strictly decreasing"),
            });
        }
        Ok(StrictPartition { parts })
    }

    pub(crate) fn new_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] > w[1]) && parts.iter().all(|&p| p > 0));
        StrictPartition { parts }
    }

    pub fn empty() -> Self {
        StrictPartition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Whether `SD_other ⊆ SD_self`.
    pub fn contains(&self, other: &StrictPartition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(m, l)| m <= l)
    }

    /// Cells `(i, j)` of the shifted diagram, row by row.
    pub fn cells(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (r, &p) in self.parts.iter().enumerate() {
            let i = r as u32 + 1;
            for j in i..i + p {
                out.push((i, j));
            }
        }
        out
    }

    pub fn contains_cell(&self, (i, j): (u32, u32)) -> bool {
        i >= 1 && (i as usize) <= self.len() && j >= i && j < i + self.parts[i as usize - 1]
    }

    /// All strict partitions of `n`, in decreasing lexicographic order.
    pub fn of_size(n: u32) -> Vec<StrictPartition> {
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<StrictPartition>) {
            if rem == 0 {
                out.push(StrictPartition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All strict partitions contained in `self`, including `∅` and `self`.
    pub fn subpartitions(&self) -> Vec<StrictPartition> {
        fn rec(outer: &[u32], k: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<StrictPartition>) {
            out.push(StrictPartition { parts: cur.clone() });
            if k == outer.len() {
                return;
            }
            for p in 1..=outer[k].min(max) {
                cur.push(p);
                rec(outer, k + 1, p - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(&self.parts, 0, u32::MAX, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for StrictPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .or_else(|| t.strip_prefix('(').and_then(|s| s.strip_suffix(')')))
            .unwrap_or(t)
            .trim();
        if t.is_empty() {
            return Ok(StrictPartition::empty());
        }
        let parts = t
            .split(',')
            .map(|tok| {
                tok.trim().parse::<u32>().map_err(|_| Error::Parse {
                    what: "strict partition",
                    reason: format!("{:?} is not a nonnegative integer", tok.trim()),
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        StrictPartition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for StrictPartition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        StrictPartition::new(parts)
    }
}

impl From<StrictPartition> for Vec<u32> {
    fn from(p: StrictPartition) -> Vec<u32> {
        p.parts
    }
}

/// The shifted skew diagram `SD_{λ/μ}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShiftedSkewShape {
    pub outer: StrictPartition,
    pub inner: StrictPartition,
}

impl ShiftedSkewShape {
    pub fn new(outer: StrictPartition, inner: StrictPartition) -> Self {
        ShiftedSkewShape { outer, inner }
    }

    pub fn straight(outer: StrictPartition) -> Self {
        ShiftedSkewShape { outer, inner: StrictPartition::empty() }
    }

    pub fn is_valid(&self) -> bool {
        self.outer.contains(&self.inner)
    }

    pub fn check(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::NotContained { outer: self.outer.to_string(), inner: self.inner.to_string() })
        }
    }

    pub fn size(&self) -> u32 {
        self.outer.size().saturating_sub(self.inner.size())
    }

    /// Cells of `SD_λ \ SD_μ` in row-major order; empty if `μ ⊄ λ`.
    pub fn cells(&self) -> Vec<(u32, u32)> {
        if !self.is_valid() {
            return Vec::new();
        }
        self.outer.cells().into_iter().filter(|&c| !self.inner.contains_cell(c)).collect()
    }
}

impl fmt::Display for ShiftedSkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "outer={} inner={}", self.outer, self.inner)
    }
}

impl FromStr for ShiftedSkewShape {
    type Err = Error;

    /// Accepts `outer=[5,3,1] inner=[2]`, `outer=[5,3,1]`, or a bare
    /// partition such as `[5,3,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if !t.contains('=') {
            return Ok(ShiftedSkewShape::straight(t.parse()?));
        }
        let mut outer = None;
        let mut inner = None;
        let mut rest = t;
        while !rest.is_empty() {
            let (key, after) = rest.split_once('=').ok_or_else(|| Error::Parse {
                what: "shape",
                reason: format!("expected key=value in {t:?}"),
            })?;
            let after = after.trim_start();
            let end = after.find(']').map(|e| e + 1).ok_or_else(|| Error::Parse {
                what: "shape",
                reason: format!("unterminated list in {t:?}"),
            })?;
            let value: StrictPartition = after[..end].parse()?;
            match key.trim() {
                "outer" => outer = Some(value),
                "inner" => inner = Some(value),
                other => {
                    return Err(Error::Parse { what: "shape", reason: format!("unknown key {other:?}") });
                }
            }
            rest = after[end..].trim_start();
        }
        let outer = outer.ok_or_else(|| Error::Parse { what: "shape", reason: "missing outer".into() })?;
        Ok(ShiftedSkewShape::new(outer, inner.unwrap_or_default()))
    }
}
