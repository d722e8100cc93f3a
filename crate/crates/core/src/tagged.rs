//! Combining `(lambda'; lambda'')` into a single tagged partition.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::partition::{OperatorPair, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Origin {
    Prime,
    DPrime,
}

/// How the two sides of a pair are merged.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CombineMode {
    /// Union of the part lists (rows of `lambda'` inserted among rows of `lambda''`).
    #[default]
    Interleave,
    /// Index-wise sum `lambda'_i + lambda''_i`.
    #[serde(rename = "sum")]
    Componentwise,
}

/// Which origin goes first among rows of equal length when interleaving.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    #[default]
    Prime,
    #[serde(rename = "dprime")]
    DPrime,
}

impl CombineMode {
    pub const ALL: [CombineMode; 2] = [CombineMode::Interleave, CombineMode::Componentwise];
}

impl TieBreak {
    pub const ALL: [TieBreak; 2] = [TieBreak::Prime, TieBreak::DPrime];
}

impl fmt::Display for CombineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CombineMode::Interleave => "interleave",
            CombineMode::Componentwise => "sum",
        })
    }
}

impl FromStr for CombineMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "interleave" => Ok(CombineMode::Interleave),
            "sum" | "componentwise" => Ok(CombineMode::Componentwise),
            other => Err(Error::MalformedToken(other.to_string())),
        }
    }
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TieBreak::Prime => "prime",
            TieBreak::DPrime => "dprime",
        })
    }
}

impl FromStr for TieBreak {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "prime" => Ok(TieBreak::Prime),
            "dprime" => Ok(TieBreak::DPrime),
            other => Err(Error::MalformedToken(other.to_string())),
        }
    }
}

/// What a merged row remembers about `lambda'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RowTag {
    /// Interleaved row: which side it came from.
    Origin(Origin),
    /// Summed row: the `lambda'_i` summand (0 past the end of `lambda'`).
    PrimePart(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TaggedRow {
    pub value: u32,
    pub tag: RowTag,
}

impl TaggedRow {
    /// The `lambda'` datum whose parity condition (iii) inspects, if the row carries one.
    pub fn prime_datum(&self) -> Option<u32> {
        match self.tag {
            RowTag::Origin(Origin::Prime) => Some(self.value),
            RowTag::Origin(Origin::DPrime) => None,
            RowTag::PrimePart(p) => Some(p),
        }
    }

    pub fn origin(&self) -> Option<Origin> {
        match self.tag {
            RowTag::Origin(o) => Some(o),
            RowTag::PrimePart(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TaggedPartition {
    pub rows: Vec<TaggedRow>,
    pub mode: CombineMode,
}

impl TaggedPartition {
    pub fn values(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.value).collect()
    }

    pub fn total(&self) -> u32 {
        self.rows.iter().map(|r| r.value).sum()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Adds `k` to every row (and to the recorded `lambda'` summand in sum mode).
    pub fn shifted(&self, k: u32) -> TaggedPartition {
        let rows = self
            .rows
            .iter()
            .map(|r| TaggedRow {
                value: r.value + k,
                tag: match r.tag {
                    RowTag::PrimePart(p) => RowTag::PrimePart(p + k),
                    t => t,
                },
            })
            .collect();
        TaggedPartition { rows, mode: self.mode }
    }
}

/// Merges the two sides of `pair` into one tagged partition.
pub fn combine(pair: &OperatorPair, mode: CombineMode, tie_break: TieBreak) -> TaggedPartition {
    let a = pair.lambda_prime.parts();
    let b = pair.lambda_dprime.parts();
    let rows = match mode {
        CombineMode::Interleave => interleave(a, b, tie_break),
        CombineMode::Componentwise => (0..a.len().max(b.len()))
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                TaggedRow { value: x + y, tag: RowTag::PrimePart(x) }
            })
            .collect(),
    };
    TaggedPartition { rows, mode }
}

fn interleave(a: &[u32], b: &[u32], tie_break: TieBreak) -> Vec<TaggedRow> {
    let mut rows = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_prime = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => tie_break == TieBreak::Prime,
            (Some(x), Some(y)) => x > y,
            (Some(_), None) => true,
            (None, _) => false,
        };
        if take_prime {
            rows.push(TaggedRow { value: a[i], tag: RowTag::Origin(Origin::Prime) });
            i += 1;
        } else {
            rows.push(TaggedRow { value: b[j], tag: RowTag::Origin(Origin::DPrime) });
            j += 1;
        }
    }
    rows
}

/// Origin-free view of a tagged partition.
pub fn as_partition(tp: &TaggedPartition) -> Partition {
    Partition::from_unsorted(tp.values())
}
