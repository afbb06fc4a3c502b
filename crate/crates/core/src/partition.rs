//! Integer partitions: the labels of multiprojective spaces.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A partition of `n` into positive parts, kept sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("empty partition")]
    Empty,
    #[error("invalid part `{0}`: parts must be positive integers")]
    InvalidPart(String),
}

impl Partition {
    /// Canonicalizes `parts` to descending order.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.is_empty() {
            return Err(PartitionError::Empty);
        }
        if parts.contains(&0) {
            return Err(PartitionError::InvalidPart("0".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Sum of the parts, i.e. the dimension of the multiprojective space.
    pub fn n(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        f.write_str(&text.join(","))
    }
}

/// Comma- and/or whitespace-separated positive integers, any order.
impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = Vec::new();
        for tok in s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            match tok.parse::<u32>() {
                Ok(v) if v > 0 => parts.push(v),
                _ => return Err(PartitionError::InvalidPart(tok.to_string())),
            }
        }
        Self::new(parts)
    }
}

/// Iterator over all partitions of `n` as descending vectors, in reverse
/// lexicographic order starting from `[n]`. For `n == 0` it yields the empty
/// partition once.
#[derive(Clone, Debug)]
pub struct Partitions {
    next: Option<Vec<u32>>,
}

pub fn partitions(n: u32) -> Partitions {
    Partitions {
        next: Some(if n == 0 { Vec::new() } else { vec![n] }),
    }
}

impl Iterator for Partitions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        // rightmost part greater than one; everything after it is ones
        if let Some(k) = current.iter().rposition(|&p| p > 1) {
            let mut succ = current[..k].to_vec();
            let v = current[k] - 1;
            let mut rem = (current.len() - k - 1) as u32 + 1;
            succ.push(v);
            while rem > v {
                succ.push(v);
                rem -= v;
            }
            if rem > 0 {
                succ.push(rem);
            }
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// Every partition of every `n` in `1..=max_n`, as `Partition` values.
pub fn partitions_up_to(max_n: u32) -> impl Iterator<Item = Partition> {
    (1..=max_n).flat_map(|n| partitions(n).map(|p| Partition { parts: p }))
}
