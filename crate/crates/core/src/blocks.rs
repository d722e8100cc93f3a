//! Block decomposition of an interleaved pair and the block-by-block route to `mu`.
//!
//! A cut is placed after row `i` when the rows up to `i` hold an even number of boxes and row
//! `i + 1` has a different value. Inside each block the running sign then agrees with the
//! global one, and the comparisons with neighbouring rows that `Sp` makes never look across a
//! cut with an equal value, so each block can be mapped on its own.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::engine::{evaluate_trace, sp_map_with_entry, FingerprintOptions, FingerprintResult, Sign, SpTrace};
use crate::error::Error;
use crate::partition::{OperatorPair, Theory};
use crate::tagged::{combine, CombineMode, Origin, TaggedPartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    I,
    II,
    III,
    S,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockKind::I => "I",
            BlockKind::II => "II",
            BlockKind::III => "III",
            BlockKind::S => "S",
        })
    }
}

/// Named block operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OperatorLabel {
    E11,
    E12,
    E21,
    E22,
    O11,
    O12,
    O21,
    O22,
    E1,
    E2,
    O1,
    O2,
    II,
}

impl fmt::Display for OperatorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OperatorLabel::E11 => "mu_e11",
            OperatorLabel::E12 => "mu_e12",
            OperatorLabel::E21 => "mu_e21",
            OperatorLabel::E22 => "mu_e22",
            OperatorLabel::O11 => "mu_o11",
            OperatorLabel::O12 => "mu_o12",
            OperatorLabel::O21 => "mu_o21",
            OperatorLabel::O22 => "mu_o22",
            OperatorLabel::E1 => "mu_e1",
            OperatorLabel::E2 => "mu_e2",
            OperatorLabel::O1 => "mu_o1",
            OperatorLabel::O2 => "mu_o2",
            OperatorLabel::II => "mu_II",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    /// Half-open row range `[start, end)`.
    pub start: usize,
    pub end: usize,
    pub kind: BlockKind,
    pub operator: Option<OperatorLabel>,
    /// Parity of the boxes above the block.
    pub entry_odd: bool,
    pub boxes: u32,
}

impl Block {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

struct Group {
    value: u32,
    count: usize,
    primes: usize,
    dprimes: usize,
}

fn groups_of(tp: &TaggedPartition, start: usize, end: usize) -> Vec<Group> {
    let mut out: Vec<Group> = Vec::new();
    for row in &tp.rows[start..end] {
        if out.last().is_none_or(|g| g.value != row.value) {
            out.push(Group { value: row.value, count: 0, primes: 0, dprimes: 0 });
        }
        let g = out.last_mut().unwrap();
        g.count += 1;
        match row.origin() {
            Some(Origin::Prime) => g.primes += 1,
            Some(Origin::DPrime) => g.dprimes += 1,
            None => {}
        }
    }
    out
}

/// Splits an interleaved partition into blocks and classifies each one.
pub fn decompose_blocks(tp: &TaggedPartition, theory: Theory) -> Result<Vec<Block>, Error> {
    if tp.mode != CombineMode::Interleave {
        return Err(Error::RequiresInterleave);
    }
    let values = tp.values();
    let mut blocks = Vec::new();
    let mut start = 0;
    let mut above = 0u32;
    let mut running = 0u32;
    for i in 0..values.len() {
        running += values[i];
        let last = i + 1 == values.len();
        if last || (running.is_multiple_of(2) && values[i] != values[i + 1]) {
            let boxes = running - above;
            let (kind, operator) = classify(tp, theory, start, i + 1, boxes);
            blocks.push(Block { start, end: i + 1, kind, operator, entry_odd: above % 2 == 1, boxes });
            start = i + 1;
            above = running;
        }
    }
    Ok(blocks)
}

fn classify(
    tp: &TaggedPartition,
    theory: Theory,
    start: usize,
    end: usize,
    boxes: u32,
) -> (BlockKind, Option<OperatorLabel>) {
    let groups = groups_of(tp, start, end);
    let mixed = |g: &Group| g.primes > 0 && g.dprimes > 0;
    let top_mixed = groups.first().is_some_and(mixed);
    let bottom_mixed = groups.last().is_some_and(mixed);

    if theory != Theory::C && end == tp.len() {
        let label = match (boxes % 2 == 1, top_mixed) {
            (true, false) => OperatorLabel::O2,
            (true, true) => OperatorLabel::O1,
            (false, false) => OperatorLabel::E1,
            (false, true) => OperatorLabel::E2,
        };
        return (BlockKind::I, Some(label));
    }
    if groups.iter().all(|g| g.count % 2 == 0) {
        return (BlockKind::II, Some(OperatorLabel::II));
    }

    let primes: usize = groups.iter().map(|g| g.primes).sum();
    let dprimes: usize = groups.iter().map(|g| g.dprimes).sum();
    if primes > 0 && dprimes > 0 {
        let minority_is_prime = primes <= dprimes;
        let minority_values: Vec<u32> = groups
            .iter()
            .filter(|g| if minority_is_prime { g.primes > 0 } else { g.dprimes > 0 })
            .map(|g| g.value)
            .collect();
        let spread = minority_values.first().unwrap() - minority_values.last().unwrap();
        if spread <= 1 {
            let top_boxes = groups[0].value as usize * groups[0].count;
            let label = match (top_boxes % 2 == 1, top_mixed, bottom_mixed) {
                (false, false, true) => OperatorLabel::E11,
                (false, false, false) => OperatorLabel::E12,
                (false, true, true) => OperatorLabel::E21,
                (false, true, false) => OperatorLabel::E22,
                (true, false, true) => OperatorLabel::O11,
                (true, false, false) => OperatorLabel::O12,
                (true, true, true) => OperatorLabel::O21,
                (true, true, false) => OperatorLabel::O22,
            };
            return (BlockKind::III, Some(label));
        }
    }
    (BlockKind::S, None)
}

/// `Sp` restricted to one block.
///
/// Labelled blocks go through the group rule (only the first or last row of an odd-valued
/// group can move, and only by the sign on either side of the group); `S` blocks are mapped
/// row by row.
pub fn block_sp(block: &Block, tp: &TaggedPartition) -> SpTrace {
    let values = &tp.values()[block.start..block.end];
    match block.kind {
        BlockKind::S => sp_map_with_entry(values, block.entry_odd),
        _ => group_rule(values, block.entry_odd),
    }
}

fn group_rule(values: &[u32], entry_odd: bool) -> SpTrace {
    let n = values.len();
    let mut mu = values.to_vec();
    let mut sign = Vec::with_capacity(n);
    let mut count = u64::from(entry_odd);
    let mut a = 0;
    while a < n {
        let v = values[a];
        let mut b = a;
        while b + 1 < n && values[b + 1] == v {
            b += 1;
        }
        let before = Sign::of_count(count);
        for _ in a..=b {
            count += u64::from(v);
            sign.push(Sign::of_count(count));
        }
        if v % 2 == 1 {
            if before == Sign::Minus {
                mu[a] = v + 1;
            }
            if Sign::of_count(count) == Sign::Minus {
                mu[b] = v - 1;
            }
        }
        a = b + 1;
    }
    let mut delta = 0i64;
    let partial_sum_delta = mu
        .iter()
        .zip(values)
        .map(|(&m, &l)| {
            delta += i64::from(m) - i64::from(l);
            delta
        })
        .collect();
    SpTrace { lambda: values.to_vec(), mu, sign, partial_sum_delta }
}

/// Checks the tiling properties of a decomposition; returns a description of the first failure.
pub fn verify_tiling(blocks: &[Block], tp: &TaggedPartition, theory: Theory) -> Result<(), String> {
    let values = tp.values();
    let mut expected_start = 0;
    let mut above = 0u32;
    let mut odd_blocks = 0;
    for (k, b) in blocks.iter().enumerate() {
        if b.start != expected_start || b.end <= b.start {
            return Err(format!("block {k} does not continue the tiling at row {expected_start}"));
        }
        if k > 0 {
            if values[b.start - 1] == values[b.start] {
                return Err(format!("block {k} starts inside a value group"));
            }
            if above % 2 == 1 {
                return Err(format!("block {k} has {above} boxes above it"));
            }
        }
        let boxes: u32 = values[b.start..b.end].iter().sum();
        if boxes != b.boxes {
            return Err(format!("block {k} box count {} != {boxes}", b.boxes));
        }
        if boxes % 2 == 1 {
            odd_blocks += 1;
        }
        if theory == Theory::C && b.kind == BlockKind::I {
            return Err(format!("block {k} is type I in C"));
        }
        above += boxes;
        expected_start = b.end;
    }
    if expected_start != values.len() {
        return Err(format!("blocks cover {expected_start} of {} rows", values.len()));
    }
    let want_odd = usize::from(theory == Theory::B && !values.is_empty());
    if odd_blocks != want_odd {
        return Err(format!("{odd_blocks} odd-size blocks, expected {want_odd}"));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockFingerprint {
    pub blocks: Vec<Block>,
    pub fragments: Vec<SpTrace>,
    pub result: FingerprintResult,
}

/// Fingerprint with `mu` assembled block by block; `tau` and extraction run on the joined trace.
pub fn block_fingerprint(pair: &OperatorPair, opts: &FingerprintOptions) -> Result<BlockFingerprint, Error> {
    if opts.combine_mode != CombineMode::Interleave {
        return Err(Error::RequiresInterleave);
    }
    let tagged = combine(pair, opts.combine_mode, opts.tie_break);
    let blocks = decompose_blocks(&tagged, pair.theory)?;
    let fragments: Vec<SpTrace> = blocks.iter().map(|b| block_sp(b, &tagged)).collect();
    let mut trace = SpTrace::default();
    for f in &fragments {
        trace.extend(f);
    }
    let eval = evaluate_trace(trace, &tagged, pair.rank(), opts);
    let result = FingerprintResult::assemble(pair, opts, tagged, eval);
    Ok(BlockFingerprint { blocks, fragments, result })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{fingerprint, sp_map};
    use crate::partition::parse_partition;
    use crate::tagged::{RowTag, TaggedRow, TieBreak};

    fn interleaved(values: &[u32], origins: &str) -> TaggedPartition {
        let rows = values
            .iter()
            .zip(origins.chars())
            .map(|(&value, o)| TaggedRow {
                value,
                tag: RowTag::Origin(if o == 'P' { Origin::Prime } else { Origin::DPrime }),
            })
            .collect();
        TaggedPartition { rows, mode: CombineMode::Interleave }
    }

    fn pair(a: &str, b: &str, t: Theory) -> OperatorPair {
        OperatorPair::new(parse_partition(a).unwrap(), parse_partition(b).unwrap(), t).unwrap()
    }

    #[test]
    fn all_ones_is_one_block() {
        let tp = interleaved(&[1, 1, 1, 1, 1], "PPPDD");
        let blocks = decompose_blocks(&tp, Theory::B).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!((blocks[0].start, blocks[0].end, blocks[0].kind), (0, 5, BlockKind::I));
    }

    #[test]
    fn cut_after_even_prefix() {
        let tp = interleaved(&[2, 2, 1, 1, 1], "PPPDD");
        let blocks = decompose_blocks(&tp, Theory::B).unwrap();
        let ranges: Vec<_> = blocks.iter().map(|b| (b.start, b.end)).collect();
        assert_eq!(ranges, vec![(0, 2), (2, 5)]);
        assert_eq!(blocks[0].operator, Some(OperatorLabel::II));
        verify_tiling(&blocks, &tp, Theory::B).unwrap();
    }

    #[test]
    fn empty_input() {
        let tp = interleaved(&[], "");
        assert!(decompose_blocks(&tp, Theory::D).unwrap().is_empty());
    }

    #[test]
    fn sum_mode_rejected() {
        let q = pair("2 1^2", "1^2", Theory::C);
        let tp = combine(&q, CombineMode::Componentwise, TieBreak::Prime);
        assert_eq!(decompose_blocks(&tp, Theory::C), Err(Error::RequiresInterleave));
    }

    #[test]
    fn fragments() {
        let block = |kind| Block { start: 0, end: 3, kind, operator: None, entry_odd: false, boxes: 0 };
        for kind in [BlockKind::S, BlockKind::III] {
            let tp = interleaved(&[1, 1, 1], "PPP");
            assert_eq!(block_sp(&block(kind), &tp).mu, vec![1, 1, 0]);
            let tp = interleaved(&[3, 2, 2], "PPP");
            assert_eq!(block_sp(&block(kind), &tp).mu, vec![2, 2, 2]);
        }
        let tp = interleaved(&[2, 2], "PP");
        let b = Block { start: 0, end: 2, kind: BlockKind::II, operator: None, entry_odd: false, boxes: 4 };
        assert_eq!(block_sp(&b, &tp).mu, vec![2, 2]);
    }

    #[test]
    fn group_rule_matches_row_rule_with_odd_entry() {
        for values in [&[1u32, 1, 1][..], &[3, 2, 2, 1], &[3, 3, 2, 2, 1, 1, 1]] {
            for entry_odd in [false, true] {
                assert_eq!(group_rule(values, entry_odd), sp_map_with_entry(values, entry_odd));
            }
        }
        assert_eq!(group_rule(&[3, 2, 2, 1, 1, 1, 1], false), sp_map(&[3, 2, 2, 1, 1, 1, 1]));
    }

    #[test]
    fn agrees_with_direct_path() {
        let cases =
            [pair("2^2 1", "1^2", Theory::B), pair("2 1^2", "1^2", Theory::C), pair("3 2^2 1^4", "", Theory::B)];
        for q in cases {
            let opts = FingerprintOptions::default_for(q.theory);
            let direct = fingerprint(&q, &opts);
            let blocked = block_fingerprint(&q, &opts).unwrap();
            assert_eq!(blocked.result, direct);
        }
    }
}
