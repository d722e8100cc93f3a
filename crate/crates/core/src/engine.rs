//! The fingerprint pipeline: prefix signs, the `Sp` map, the `tau` table, and extraction
//! of the Weyl pair `[alpha; beta]`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::partition::{OperatorPair, Partition, Theory};
use crate::tagged::{combine, CombineMode, TaggedPartition, TieBreak};

/// Parity of a running box count, read as `p(i) = (-1)^(sum_{k<=i} lambda_k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn of_count(count: u64) -> Sign {
        if count.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// `sign[i]` is `+` when the first `i+1` values sum to an even number.
pub fn prefix_signs(values: &[u32]) -> Vec<Sign> {
    let mut acc = 0u64;
    values
        .iter()
        .map(|&v| {
            acc += u64::from(v);
            Sign::of_count(acc)
        })
        .collect()
}

/// Index-aligned record of `mu = Sp(lambda)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpTrace {
    pub lambda: Vec<u32>,
    /// Zero marks a deleted part.
    pub mu: Vec<u32>,
    pub sign: Vec<Sign>,
    /// `sum_{k<=i} mu_k - sum_{k<=i} lambda_k`.
    pub partial_sum_delta: Vec<i64>,
}

impl SpTrace {
    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    /// `mu` with deleted parts dropped.
    pub fn mu_partition(&self) -> Partition {
        Partition::from_unsorted(self.mu.clone())
    }

    pub fn changed(&self, i: usize) -> bool {
        self.mu[i] != self.lambda[i]
    }

    /// Appends `other`, carrying the running delta across the seam.
    pub fn extend(&mut self, other: &SpTrace) {
        let carry = self.partial_sum_delta.last().copied().unwrap_or(0);
        self.lambda.extend_from_slice(&other.lambda);
        self.mu.extend_from_slice(&other.mu);
        self.sign.extend_from_slice(&other.sign);
        self.partial_sum_delta.extend(other.partial_sum_delta.iter().map(|d| d + carry));
    }
}

/// Applies `mu_i = lambda_i + p(i)` when `lambda_i` is odd and `lambda_i != lambda_{i - p(i)}`.
///
/// `lambda_{l+1}` is read as 0. `lambda_0` is never needed: an odd first part always has `p = -1`.
pub fn sp_map(values: &[u32]) -> SpTrace {
    sp_map_with_entry(values, false)
}

/// [`sp_map`] on a segment whose preceding rows hold an odd (`entry_odd`) or even number of
/// boxes. Neighbours outside the segment are taken to differ from its boundary rows.
pub fn sp_map_with_entry(values: &[u32], entry_odd: bool) -> SpTrace {
    let n = values.len();
    let mut trace = SpTrace {
        lambda: values.to_vec(),
        mu: Vec::with_capacity(n),
        sign: Vec::with_capacity(n),
        partial_sum_delta: Vec::with_capacity(n),
    };
    let mut count = u64::from(entry_odd);
    let mut delta = 0i64;
    for i in 0..n {
        let v = values[i];
        count += u64::from(v);
        let sign = Sign::of_count(count);
        let mu = if v % 2 == 1 {
            match sign {
                Sign::Minus if values.get(i + 1).copied().unwrap_or(0) != v => v - 1,
                Sign::Plus if i == 0 || values[i - 1] != v => v + 1,
                _ => v,
            }
        } else {
            v
        };
        delta += i64::from(mu) - i64::from(v);
        trace.mu.push(mu);
        trace.sign.push(sign);
        trace.partial_sum_delta.push(delta);
    }
    trace
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Condition {
    /// `mu_i != lambda_i`
    #[serde(rename = "i")]
    I,
    /// partial sums of `mu` and `lambda` differ at `i`
    #[serde(rename = "ii")]
    II,
    /// parity of the `lambda'` datum at `i`
    #[serde(rename = "iii")]
    III,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::I => "i",
            Condition::II => "ii",
            Condition::III => "iii",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ConditionSet {
    pub i: bool,
    pub ii: bool,
    pub iii: bool,
}

impl ConditionSet {
    pub const ALL: ConditionSet = ConditionSet { i: true, ii: true, iii: true };

    pub fn contains(&self, c: Condition) -> bool {
        match c {
            Condition::I => self.i,
            Condition::II => self.ii,
            Condition::III => self.iii,
        }
    }

    pub fn without(mut self, c: Condition) -> Self {
        match c {
            Condition::I => self.i = false,
            Condition::II => self.ii = false,
            Condition::III => self.iii = false,
        }
        self
    }
}

impl Default for ConditionSet {
    fn default() -> Self {
        ConditionSet::ALL
    }
}

impl fmt::Display for ConditionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = [Condition::I, Condition::II, Condition::III]
            .into_iter()
            .filter(|c| self.contains(*c))
            .map(|c| c.to_string())
            .collect();
        f.write_str(&names.join(","))
    }
}

impl FromStr for ConditionSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut set = ConditionSet { i: false, ii: false, iii: false };
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok.to_ascii_lowercase().as_str() {
                "i" | "1" => set.i = true,
                "ii" | "2" => set.ii = true,
                "iii" | "3" => set.iii = true,
                _ => return Err(Error::MalformedToken(tok.to_string())),
            }
        }
        Ok(set)
    }
}

/// Which reading of condition (iii) is in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IiiVariant {
    /// `lambda'_i` is odd.
    So,
    /// `lambda'_i` is even.
    Sp,
    /// Never holds.
    Vacuous,
}

impl IiiVariant {
    pub const ALL: [IiiVariant; 3] = [IiiVariant::So, IiiVariant::Sp, IiiVariant::Vacuous];

    pub fn default_for(theory: Theory) -> Self {
        match theory {
            Theory::B | Theory::D => IiiVariant::So,
            Theory::C => IiiVariant::Sp,
        }
    }

    fn holds(self, datum: Option<u32>) -> bool {
        match (self, datum) {
            (IiiVariant::So, Some(v)) => v % 2 == 1,
            (IiiVariant::Sp, Some(v)) => v % 2 == 0,
            _ => false,
        }
    }
}

impl fmt::Display for IiiVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IiiVariant::So => "so",
            IiiVariant::Sp => "sp",
            IiiVariant::Vacuous => "vacuous",
        })
    }
}

impl FromStr for IiiVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "so" => Ok(IiiVariant::So),
            "sp" => Ok(IiiVariant::Sp),
            "vacuous" | "none" => Ok(IiiVariant::Vacuous),
            other => Err(Error::MalformedToken(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FingerprintOptions {
    pub combine_mode: CombineMode,
    pub tie_break: TieBreak,
    pub conditions: ConditionSet,
    pub iii_variant: IiiVariant,
}

impl FingerprintOptions {
    pub fn default_for(theory: Theory) -> Self {
        FingerprintOptions {
            combine_mode: CombineMode::Interleave,
            tie_break: TieBreak::Prime,
            conditions: ConditionSet::ALL,
            iii_variant: IiiVariant::default_for(theory),
        }
    }

    pub fn with_mode(mut self, mode: CombineMode) -> Self {
        self.combine_mode = mode;
        self
    }

    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }

    pub fn with_conditions(mut self, conditions: ConditionSet) -> Self {
        self.conditions = conditions;
        self
    }

    pub fn with_variant(mut self, variant: IiiVariant) -> Self {
        self.iii_variant = variant;
        self
    }
}

/// First index (0-based) and condition that forced `tau = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub index: usize,
    pub condition: Condition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TauEntry {
    pub tau: i8,
    pub witness: Option<Witness>,
}

/// `tau` on the distinct positive even values of `mu`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TauTable(pub BTreeMap<u32, TauEntry>);

impl TauTable {
    pub fn get(&self, m: u32) -> Option<TauEntry> {
        self.0.get(&m).copied()
    }

    /// `tau(m)`; odd values and values absent from `mu` read as `+1`.
    pub fn tau(&self, m: u32) -> i8 {
        self.0.get(&m).map_or(1, |e| e.tau)
    }
}

/// Evaluates `tau` for every positive even value of `trace.mu`.
pub fn tau_table(trace: &SpTrace, tagged: &TaggedPartition, opts: &FingerprintOptions) -> TauTable {
    let mut table = BTreeMap::new();
    for i in 0..trace.len() {
        let m = trace.mu[i];
        if m == 0 || m % 2 == 1 {
            continue;
        }
        let entry = table.entry(m).or_insert(TauEntry { tau: 1, witness: None });
        if entry.tau == -1 {
            continue;
        }
        let conds = opts.conditions;
        let hit = if conds.i && trace.changed(i) {
            Some(Condition::I)
        } else if conds.ii && trace.partial_sum_delta[i] != 0 {
            Some(Condition::II)
        } else if conds.iii && opts.iii_variant.holds(tagged.rows[i].prime_datum()) {
            Some(Condition::III)
        } else {
            None
        };
        if let Some(condition) = hit {
            *entry = TauEntry { tau: -1, witness: Some(Witness { index: i, condition }) };
        }
    }
    TauTable(table)
}

/// The fingerprint `[alpha; beta]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeylPair {
    pub alpha: Partition,
    pub beta: Partition,
    pub rank: u32,
}

impl WeylPair {
    pub fn size(&self) -> u32 {
        self.alpha.total() + self.beta.total()
    }

    pub fn is_rank_consistent(&self) -> bool {
        self.size() == self.rank
    }
}

impl fmt::Display for WeylPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; {}]", self.alpha, self.beta)
    }
}

/// A value of `mu` that could not be paired off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Unpaired {
    pub value: u32,
    pub multiplicity: usize,
    pub tau: i8,
}

/// Extraction failed: some odd value, or an even value with `tau = +1`, has odd multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtractionDiagnostic {
    pub unpaired: Vec<Unpaired>,
}

impl fmt::Display for ExtractionDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .unpaired
            .iter()
            .map(|u| {
                let kind = if u.value % 2 == 0 { "even" } else { "odd" };
                format!("unpaired {kind} value {} (multiplicity {}, tau {:+})", u.value, u.multiplicity, u.tau)
            })
            .collect();
        f.write_str(&items.join("; "))
    }
}

/// Pairs off `mu` into `alpha` and sends `tau = -1` values `2b` to `beta` as `b`.
pub fn extract_weyl_pair(trace: &SpTrace, tau: &TauTable, rank: u32) -> Result<WeylPair, ExtractionDiagnostic> {
    let mu = trace.mu_partition();
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let mut unpaired = Vec::new();
    for (value, mult) in mu.groups() {
        let t = if value % 2 == 0 { tau.tau(value) } else { 1 };
        if t == -1 {
            beta.extend(std::iter::repeat_n(value / 2, mult));
        } else if mult % 2 == 1 {
            unpaired.push(Unpaired { value, multiplicity: mult, tau: t });
        } else {
            alpha.extend(std::iter::repeat_n(value, mult / 2));
        }
    }
    if !unpaired.is_empty() {
        return Err(ExtractionDiagnostic { unpaired });
    }
    Ok(WeylPair { alpha: Partition::from_unsorted(alpha), beta: Partition::from_unsorted(beta), rank })
}

/// `Sp`, `tau` and extraction for an already combined partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluation {
    pub trace: SpTrace,
    pub tau: TauTable,
    pub weyl: Result<WeylPair, ExtractionDiagnostic>,
}

/// Runs `tau` and extraction over a trace computed from `tagged`.
pub fn evaluate_trace(trace: SpTrace, tagged: &TaggedPartition, rank: u32, opts: &FingerprintOptions) -> Evaluation {
    let tau = tau_table(&trace, tagged, opts);
    let weyl = extract_weyl_pair(&trace, &tau, rank);
    Evaluation { trace, tau, weyl }
}

/// Full pipeline on an already combined partition of the given theory.
pub fn evaluate_tagged(tagged: &TaggedPartition, theory: Theory, opts: &FingerprintOptions) -> Evaluation {
    let rank = (tagged.total() - theory.theta()) / 2;
    evaluate_trace(sp_map(&tagged.values()), tagged, rank, opts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FingerprintResult {
    pub pair: OperatorPair,
    pub rank: u32,
    pub options: FingerprintOptions,
    pub tagged: TaggedPartition,
    pub trace: SpTrace,
    pub tau: TauTable,
    pub weyl: Result<WeylPair, ExtractionDiagnostic>,
    pub rigid_prime: bool,
    pub rigid_dprime: bool,
}

impl FingerprintResult {
    pub fn weyl_pair(&self) -> Option<&WeylPair> {
        self.weyl.as_ref().ok()
    }

    pub fn diagnostic(&self) -> Option<&ExtractionDiagnostic> {
        self.weyl.as_ref().err()
    }

    pub(crate) fn assemble(
        pair: &OperatorPair,
        opts: &FingerprintOptions,
        tagged: TaggedPartition,
        eval: Evaluation,
    ) -> Self {
        let (rigid_prime, rigid_dprime) = pair.is_rigid();
        FingerprintResult {
            pair: pair.clone(),
            rank: pair.rank(),
            options: *opts,
            tagged,
            trace: eval.trace,
            tau: eval.tau,
            weyl: eval.weyl,
            rigid_prime,
            rigid_dprime,
        }
    }
}

/// combine, then `Sp`, then `tau`, then extraction. Rigidity is recorded, not required.
pub fn fingerprint(pair: &OperatorPair, opts: &FingerprintOptions) -> FingerprintResult {
    let tagged = combine(pair, opts.combine_mode, opts.tie_break);
    let eval = evaluate_trace(sp_map(&tagged.values()), &tagged, pair.rank(), opts);
    FingerprintResult::assemble(pair, opts, tagged, eval)
}
