//! ASCII Young diagrams.

use crate::engine::SpTrace;
use crate::tagged::{Origin, TaggedPartition};

/// One line per row: `#` for `lambda'` rows (and summed rows), `*` for `lambda''` rows.
pub fn render_tagged(tp: &TaggedPartition) -> String {
    let mut out = String::new();
    for row in &tp.rows {
        let glyph = if row.origin() == Some(Origin::DPrime) { "*" } else { "#" };
        out.push_str(&glyph.repeat(row.value as usize));
        out.push('\n');
    }
    out
}

/// The image `mu` next to the row it came from: `+` marks an appended box, `-` a deleted one.
pub fn render_trace(trace: &SpTrace) -> String {
    let mut out = String::new();
    for (&l, &m) in trace.lambda.iter().zip(&trace.mu) {
        let line = if m > l {
            format!("{}+", "#".repeat(l as usize))
        } else if m < l {
            format!("{}-", "#".repeat(m as usize))
        } else {
            "#".repeat(l as usize)
        };
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::sp_map;
    use crate::partition::{parse_partition, OperatorPair, Theory};
    use crate::tagged::{combine, CombineMode, TieBreak};

    #[test]
    fn tagged_rows() {
        let q =
            OperatorPair::new(parse_partition("2^2 1").unwrap(), parse_partition("1^2").unwrap(), Theory::B).unwrap();
        let tp = combine(&q, CombineMode::Interleave, TieBreak::Prime);
        assert_eq!(render_tagged(&tp), "##\n##\n#\n*\n*\n");
    }

    #[test]
    fn trace_marks() {
        assert_eq!(render_trace(&sp_map(&[3, 2, 2, 1])), "##-\n##\n##\n#+\n");
    }
}
