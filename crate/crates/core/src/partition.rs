//! Partitions, classical theories, rigidity, and enumeration.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A weakly decreasing sequence of positive integers (rows of a Young diagram).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition from parts that must already be weakly decreasing and positive.
    pub fn new(parts: Vec<u32>) -> Result<Self, Error> {
        for (i, &p) in parts.iter().enumerate() {
            if p == 0 {
                return Err(Error::NonPositive(p.to_string()));
            }
            if i > 0 && parts[i - 1] < p {
                return Err(Error::NotDescending(p.to_string()));
            }
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary values into a partition, dropping zeros.
    pub fn from_unsorted(mut values: Vec<u32>) -> Self {
        values.retain(|&v| v > 0);
        values.sort_unstable_by(|a, b| b.cmp(a));
        Partition(values)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn multiplicity(&self, value: u32) -> usize {
        self.0.iter().filter(|&&p| p == value).count()
    }

    /// Distinct values with their multiplicities, largest value first.
    pub fn groups(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((v, n)) if *v == p => *n += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Row `r` of the result counts the parts that are at least `r`.
    pub fn transpose(&self) -> Partition {
        let rows = (1..=self.largest()).map(|r| self.0.iter().take_while(|&&p| p >= r).count() as u32).collect();
        Partition(rows)
    }

    /// Multiset union of the parts of both partitions.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::from_unsorted(v)
    }

    /// Compact exponent form, e.g. `2^4 1^2`. Empty partitions render as `()`.
    pub fn to_exponent_string(&self) -> String {
        if self.is_empty() {
            return "()".to_string();
        }
        self.groups()
            .iter()
            .map(|&(v, n)| if n == 1 { v.to_string() } else { format!("{v}^{n}") })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exponent_string())
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self, Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        parse_partition(s)
    }
}

/// Parses either a descending list (`3,2,2,1` or `3 2 2 1`) or exponent form (`2^4 1^2`).
///
/// The empty partition is written as an empty string, `()`, `-` or `∅`.
pub fn parse_partition(text: &str) -> Result<Partition, Error> {
    let trimmed = text.trim();
    if matches!(trimmed, "" | "()" | "-" | "∅") {
        return Ok(Partition::empty());
    }
    let mut parts = Vec::new();
    for token in trimmed.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let (value, count) = match token.split_once('^') {
            Some((v, e)) => (parse_int(v, token)?, parse_int(e, token)?),
            None => (parse_int(token, token)?, 1),
        };
        if value == 0 || count == 0 {
            return Err(Error::NonPositive(token.to_string()));
        }
        if let Some(&last) = parts.last() {
            if last < value {
                return Err(Error::NotDescending(token.to_string()));
            }
        }
        parts.extend(std::iter::repeat_n(value, count as usize));
    }
    Ok(Partition(parts))
}

fn parse_int(s: &str, token: &str) -> Result<u32, Error> {
    if s.starts_with('-') {
        return Err(Error::NonPositive(token.to_string()));
    }
    s.parse::<u32>().map_err(|_| Error::MalformedToken(token.to_string()))
}

/// Classical series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Theory {
    B,
    C,
    D,
}

impl Theory {
    pub const ALL: [Theory; 3] = [Theory::B, Theory::C, Theory::D];

    /// Boxes of a rank-`n` partition: `2n+1` for B, `2n` otherwise.
    pub fn boxes(self, rank: u32) -> u32 {
        2 * rank + self.theta()
    }

    pub fn theta(self) -> u32 {
        match self {
            Theory::B => 1,
            Theory::C | Theory::D => 0,
        }
    }

    /// Theories required for `(lambda', lambda'')` in a semisimple pair.
    pub fn pair_sides(self) -> (Theory, Theory) {
        match self {
            Theory::B => (Theory::B, Theory::D),
            Theory::C => (Theory::C, Theory::C),
            Theory::D => (Theory::D, Theory::D),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Theory::B => "B",
            Theory::C => "C",
            Theory::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Theory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "B" | "b" => Ok(Theory::B),
            "C" | "c" => Ok(Theory::C),
            "D" | "d" => Ok(Theory::D),
            other => Err(Error::UnknownTheory(other.to_string())),
        }
    }
}

/// Does `p` label a unipotent class of theory `t`?
pub fn is_theory_member(p: &Partition, t: Theory) -> bool {
    let total = p.total();
    let restricted_parity = match t {
        Theory::B => {
            if total.is_multiple_of(2) {
                return false;
            }
            0
        }
        Theory::D => {
            if total % 2 == 1 {
                return false;
            }
            0
        }
        Theory::C => {
            if total % 2 == 1 {
                return false;
            }
            1
        }
    };
    p.groups().iter().all(|&(v, n)| v % 2 != restricted_parity || n % 2 == 0)
}

/// Rigidity: no gaps down to zero, and no odd (B/D) or even (C) value of multiplicity exactly two.
///
/// `(1,1)` in D is the one exception: the whole of `so(2)` is a torus, so its zero class
/// has no proper Levi to be induced from.
pub fn is_rigid(p: &Partition, t: Theory) -> bool {
    if p.is_empty() {
        return true;
    }
    if t == Theory::D && p.parts() == [1, 1] {
        return true;
    }
    let parts = p.parts();
    let no_gaps = parts.iter().zip(parts.iter().skip(1).chain(std::iter::once(&0))).all(|(a, b)| a - b <= 1);
    if !no_gaps {
        return false;
    }
    let forbidden_parity = match t {
        Theory::B | Theory::D => 1,
        Theory::C => 0,
    };
    p.groups().iter().all(|&(v, n)| !(v % 2 == forbidden_parity && n == 2))
}

/// All partitions of `total`, in lexicographically ascending order.
pub fn all_partitions(total: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for k in 1..=rest.min(max) {
            prefix.push(k);
            go(rest - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Rigid partitions of theory `t` and rank `n`, in lexicographically ascending order.
///
/// Built directly from multiplicity vectors: a gap-free partition with largest value `m`
/// is determined by `n_1, ..., n_m >= 1`.
pub fn enumerate_rigid(t: Theory, n: u32) -> Vec<Partition> {
    let target = t.boxes(n);
    if target == 0 {
        return vec![Partition::empty()];
    }
    let mut out = Vec::new();
    let mut mults = Vec::new();
    build_rigid(t, target, 1, &mut mults, &mut out);
    if t == Theory::D && target == 2 {
        out.push(Partition(vec![1, 1]));
    }
    out.sort();
    out
}

fn build_rigid(t: Theory, rest: u32, value: u32, mults: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        let mut parts = Vec::new();
        for (i, &n) in mults.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i as u32 + 1, n as usize));
        }
        out.push(Partition(parts));
        return;
    }
    let (even_mult_parity, forbid_two_parity) = match t {
        Theory::B | Theory::D => (0, 1),
        Theory::C => (1, 0),
    };
    for n in 1..=rest / value {
        if value % 2 == even_mult_parity && n % 2 == 1 {
            continue;
        }
        if value % 2 == forbid_two_parity && n == 2 {
            continue;
        }
        mults.push(n);
        build_rigid(t, rest - n * value, value + 1, mults, out);
        mults.pop();
    }
}

/// A semisimple pair `(lambda'; lambda'')`; unipotent classes have one side empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OperatorPair {
    pub lambda_prime: Partition,
    pub lambda_dprime: Partition,
    pub theory: Theory,
}

impl OperatorPair {
    pub fn new(lambda_prime: Partition, lambda_dprime: Partition, theory: Theory) -> Result<Self, Error> {
        let (tp, tdp) = theory.pair_sides();
        if !is_theory_member(&lambda_prime, tp) {
            return Err(Error::NotInTheory { partition: lambda_prime.to_string(), theory: tp });
        }
        if !is_theory_member(&lambda_dprime, tdp) {
            return Err(Error::NotInTheory { partition: lambda_dprime.to_string(), theory: tdp });
        }
        Ok(OperatorPair { lambda_prime, lambda_dprime, theory })
    }

    /// Unipotent class encoded as `(p; ())`.
    pub fn unipotent(p: Partition, theory: Theory) -> Result<Self, Error> {
        OperatorPair::new(p, Partition::empty(), theory)
    }

    pub fn total(&self) -> u32 {
        self.lambda_prime.total() + self.lambda_dprime.total()
    }

    pub fn rank(&self) -> u32 {
        (self.total() - self.theory.theta()) / 2
    }

    pub fn is_rigid(&self) -> (bool, bool) {
        let (tp, tdp) = self.theory.pair_sides();
        (is_rigid(&self.lambda_prime, tp), is_rigid(&self.lambda_dprime, tdp))
    }
}

impl fmt::Display for OperatorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ({}; {})", self.theory, self.lambda_prime, self.lambda_dprime)
    }
}

/// Every pair with both sides rigid and `n' + n'' = n`; `n'` descending, then each side in
/// [`enumerate_rigid`] order.
pub fn enumerate_rigid_pairs(t: Theory, n: u32) -> Vec<OperatorPair> {
    let (tp, tdp) = t.pair_sides();
    let mut out = Vec::new();
    for n_prime in (0..=n).rev() {
        let primes = enumerate_rigid(tp, n_prime);
        let dprimes = enumerate_rigid(tdp, n - n_prime);
        for a in &primes {
            for b in &dprimes {
                out.push(OperatorPair { lambda_prime: a.clone(), lambda_dprime: b.clone(), theory: t });
            }
        }
    }
    out
}
