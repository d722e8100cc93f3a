//! Catalog records (one JSON object per line) and fingerprint fibers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::blocks::decompose_blocks;
use crate::engine::{fingerprint, ConditionSet, FingerprintOptions, FingerprintResult, IiiVariant, Unpaired};
use crate::partition::{enumerate_rigid_pairs, OperatorPair, Partition, Theory};
use crate::sweep;
use crate::tagged::{CombineMode, TieBreak};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRecord {
    pub start: usize,
    pub end: usize,
    pub kind: String,
    pub operator_label: Option<String>,
}

/// One fingerprint computation, flattened for JSONL.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub theory: Theory,
    pub rank: u32,
    pub lambda_prime: Partition,
    pub lambda_dprime: Partition,
    pub combine_mode: CombineMode,
    pub iii_variant: IiiVariant,
    pub tie_break: TieBreak,
    pub conditions: ConditionSet,
    pub mu: Partition,
    pub alpha: Option<Partition>,
    pub beta: Option<Partition>,
    pub diagnostics: Vec<Unpaired>,
    pub blocks: Vec<BlockRecord>,
}

impl CatalogRecord {
    pub fn from_result(r: &FingerprintResult) -> Self {
        let blocks = if r.options.combine_mode == CombineMode::Interleave {
            decompose_blocks(&r.tagged, r.pair.theory)
                .unwrap_or_default()
                .into_iter()
                .map(|b| BlockRecord {
                    start: b.start,
                    end: b.end,
                    kind: b.kind.to_string(),
                    operator_label: b.operator.map(|l| l.to_string()),
                })
                .collect()
        } else {
            Vec::new()
        };
        let (alpha, beta, diagnostics) = match &r.weyl {
            Ok(w) => (Some(w.alpha.clone()), Some(w.beta.clone()), Vec::new()),
            Err(d) => (None, None, d.unpaired.clone()),
        };
        CatalogRecord {
            theory: r.pair.theory,
            rank: r.rank,
            lambda_prime: r.pair.lambda_prime.clone(),
            lambda_dprime: r.pair.lambda_dprime.clone(),
            combine_mode: r.options.combine_mode,
            iii_variant: r.options.iii_variant,
            tie_break: r.options.tie_break,
            conditions: r.options.conditions,
            mu: r.trace.mu_partition(),
            alpha,
            beta,
            diagnostics,
            blocks,
        }
    }

    pub fn compute(pair: &OperatorPair, opts: &FingerprintOptions) -> Self {
        CatalogRecord::from_result(&fingerprint(pair, opts))
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("catalog records always serialize")
    }

    pub fn from_json_line(line: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(line)
    }
}

/// Rigid pairs sharing one fingerprint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fiber {
    pub alpha: Partition,
    pub beta: Partition,
    pub members: Vec<OperatorPair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub theory: Theory,
    pub rank: u32,
    pub pairs: usize,
    /// Pairs whose extraction produced a diagnostic; they belong to no fiber.
    pub diagnostics: usize,
    /// Fibers with at least two members, ordered by `(alpha, beta)`.
    pub fibers: Vec<Fiber>,
}

/// Groups every rigid pair of the given theory and rank by its fingerprint.
pub fn fibers(theory: Theory, rank: u32, opts: &FingerprintOptions) -> FiberReport {
    let pairs = enumerate_rigid_pairs(theory, rank);
    let results = sweep::map(&pairs, |p| fingerprint(p, opts).weyl.ok());
    let mut grouped: BTreeMap<(Partition, Partition), Vec<OperatorPair>> = BTreeMap::new();
    let mut diagnostics = 0;
    for (pair, w) in pairs.iter().zip(results) {
        match w {
            Some(w) => grouped.entry((w.alpha, w.beta)).or_default().push(pair.clone()),
            None => diagnostics += 1,
        }
    }
    let fibers = grouped
        .into_iter()
        .filter(|(_, m)| m.len() >= 2)
        .map(|((alpha, beta), members)| Fiber { alpha, beta, members })
        .collect();
    FiberReport { theory, rank, pairs: pairs.len(), diagnostics, fibers }
}
