//! Configurations of the one-dimensional sand pile, the FALL and SLIDE rules,
//! the two partial orders on partitions, and the forbidden-pattern checks.
//!
//! A configuration is a partition stored without its tail of zeros. Every
//! read past the stored parts yields 0.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Configuration {
    parts: Vec<u32>,
}

impl Configuration {
    /// Builds a configuration from column heights, trimming trailing zeros.
    /// Fails if the heights are not non-increasing.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if let Some(i) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::InvalidConfiguration(format!(
                "heights increase between columns {} and {}",
                i,
                i + 1
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Configuration { parts })
    }

    /// Caller guarantees `parts` is non-increasing; trailing zeros are trimmed.
    pub(crate) fn from_sorted(mut parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Configuration { parts }
    }

    /// The initial configuration `(n)`: every grain in the first column.
    pub fn single_column(n: usize) -> Self {
        Self::from_sorted(vec![n as u32])
    }

    pub fn empty() -> Self {
        Configuration { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }

    /// Height of column `i`; zero past the last non-empty column.
    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of non-empty columns.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Moves one grain from column `l` to column `l + 1`.
    pub fn apply_fall(&self, l: usize) -> Result<Configuration> {
        if !self.can_fall(l) {
            return Err(Error::RuleNotApplicable { column: l });
        }
        let mut parts = self.parts.clone();
        if parts.len() == l + 1 {
            parts.push(0);
        }
        parts[l] -= 1;
        parts[l + 1] += 1;
        Ok(Configuration::from_sorted(parts))
    }

    #[inline]
    pub fn can_fall(&self, l: usize) -> bool {
        self.get(l) >= self.get(l + 1) + 2
    }

    /// Plateau length `k'` for a SLIDE from column `l`, if the heights allow one
    /// with `1 <= k' < k`.
    pub fn slide_span(&self, l: usize, k: usize) -> Option<usize> {
        let top = self.get(l);
        if top < 2 {
            return None;
        }
        let level = top - 1;
        let mut run = 0;
        while run < k && self.get(l + 1 + run) == level {
            run += 1;
        }
        if run >= 1 && run < k && self.get(l + 1 + run) == level - 1 {
            Some(run)
        } else {
            None
        }
    }

    /// Moves one grain from column `l` across a plateau of length `k'` to column
    /// `l + k' + 1`. Returns the new configuration together with `k'`.
    pub fn apply_slide(&self, l: usize, k: usize) -> Result<(Configuration, usize)> {
        let span = self
            .slide_span(l, k)
            .ok_or(Error::RuleNotApplicable { column: l })?;
        let target = l + span + 1;
        let mut parts = self.parts.clone();
        if parts.len() <= target {
            parts.resize(target + 1, 0);
        }
        parts[l] -= 1;
        parts[target] += 1;
        Ok((Configuration::from_sorted(parts), span))
    }

    /// Columns where FALL applies.
    pub fn fall_targets(&self) -> Vec<usize> {
        (0..self.parts.len()).filter(|&l| self.can_fall(l)).collect()
    }

    /// Columns where SLIDE_k applies, each with its plateau length.
    pub fn slide_targets(&self, k: usize) -> Vec<(usize, usize)> {
        (0..self.parts.len())
            .filter_map(|l| self.slide_span(l, k).map(|span| (l, span)))
            .collect()
    }

    /// Componentwise comparison, `self[i] <= other[i]` for every column.
    pub fn sequence_leq(&self, other: &Configuration) -> bool {
        sequence_leq(&self.parts, &other.parts)
    }
}

/// Componentwise order on finite sequences padded with zeros.
pub fn sequence_leq(s: &[u32], t: &[u32]) -> bool {
    (0..s.len().max(t.len()))
        .all(|i| s.get(i).copied().unwrap_or(0) <= t.get(i).copied().unwrap_or(0))
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", p)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for Configuration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_list::<u32>(s)?;
        Configuration::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Configuration {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Configuration::new(parts)
    }
}

pub(crate) fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<T>()
                .map_err(|_| Error::Parse(format!("not a non-negative integer: {:?}", tok)))
        })
        .collect()
}

/// A list of column indices; replaying FALL at each index in turn from `(n)`
/// certifies that the final configuration is reachable.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GeneratingSequence(pub Vec<usize>);

impl GeneratingSequence {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for GeneratingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", a)?;
        }
        Ok(())
    }
}

impl fmt::Debug for GeneratingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

impl FromStr for GeneratingSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_list::<usize>(s).map(GeneratingSequence)
    }
}

/// The unique FALL fixed point with `n` grains:
/// `(k, k-1, ..., l+1, l, l, l-1, ..., 1)` where `n = k(k+1)/2 + l`, `0 <= l <= k`.
pub fn phi(n: usize) -> Configuration {
    let mut k = 0usize;
    while (k + 1) * (k + 2) / 2 <= n {
        k += 1;
    }
    let l = n - k * (k + 1) / 2;
    let mut parts: Vec<u32> = (1..=k as u32).rev().collect();
    if l > 0 {
        // insert the repeated height l right after the column holding l
        parts.insert(k - l + 1, l as u32);
    }
    Configuration::from_sorted(parts)
}

/// Outcome of comparing two partitions of the same weight in dominance order.
/// `Below` means `s` precedes `t`: every prefix sum of `s` is at least the
/// corresponding prefix sum of `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Below,
    Above,
    Equal,
    Incomparable,
}

pub fn dominance_leq(s: &Configuration, t: &Configuration) -> Result<Dominance> {
    let (ws, wt) = (s.weight(), t.weight());
    if ws != wt {
        return Err(Error::WeightMismatch {
            left: ws,
            right: wt,
        });
    }
    let (mut ge, mut le) = (true, true);
    let (mut ps, mut pt) = (0u64, 0u64);
    for i in 0..s.len().max(t.len()) {
        ps += s.get(i) as u64;
        pt += t.get(i) as u64;
        match ps.cmp(&pt) {
            Ordering::Greater => le = false,
            Ordering::Less => ge = false,
            Ordering::Equal => {}
        }
    }
    Ok(match (ge, le) {
        (true, true) => Dominance::Equal,
        (true, false) => Dominance::Below,
        (false, true) => Dominance::Above,
        (false, false) => Dominance::Incomparable,
    })
}

/// Kinds of forbidden local shapes. For the sand pile (`k = 1`) the plateau
/// has length 3 and the bridged form is `p,p,p-1,...,q+1,q,q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// `p` repeated `len` times, `p > 0`.
    Plateau { len: usize },
    /// `(p+1)^[k+1] . p^[k+1]`.
    AdjacentPlateaux,
    /// `(p+h)^[k+1] . (p+h-1)^[k] ... (p+1)^[k] . p^[k+1]` with `h > 1`.
    BridgedPlateaux,
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Plateau { len } => write!(f, "plateau{}", len),
            Pattern::AdjacentPlateaux => f.write_str("plateaux"),
            Pattern::BridgedPlateaux => f.write_str("staircase"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validity {
    Valid,
    /// Leftmost forbidden pattern, by start column.
    Invalid { start: usize, pattern: Pattern },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Validity::Valid => f.write_str("valid"),
            Validity::Invalid { start, pattern } => write!(f, "invalid {} @ {}", pattern, start),
        }
    }
}

/// Checks a partition against the sand pile forbidden patterns.
pub fn is_valid_spm(c: &Configuration) -> Validity {
    find_forbidden(c, 1)
}

/// Checks a partition against the ice pile forbidden patterns for `SLIDE_k`.
pub fn is_valid_ipm(c: &Configuration, k: usize) -> Validity {
    assert!(k >= 1, "ice pile parameter must be positive");
    find_forbidden(c, k)
}

fn find_forbidden(c: &Configuration, k: usize) -> Validity {
    let len = c.len();
    let run_of = |start: usize, count: usize, value: u32| -> bool {
        (start..start + count).all(|i| c.get(i) == value)
    };
    for start in 0..len {
        let top = c.get(start);
        if run_of(start, k + 2, top) {
            return Validity::Invalid {
                start,
                pattern: Pattern::Plateau { len: k + 2 },
            };
        }
        if !run_of(start, k + 1, top) {
            continue;
        }
        let mut pos = start + k + 1;
        let mut level = top - 1;
        let mut drops = 1;
        while level > 0 {
            if run_of(pos, k + 1, level) {
                let pattern = if drops == 1 {
                    Pattern::AdjacentPlateaux
                } else {
                    Pattern::BridgedPlateaux
                };
                return Validity::Invalid { start, pattern };
            }
            if !run_of(pos, k, level) {
                break;
            }
            pos += k;
            level -= 1;
            drops += 1;
        }
    }
    Validity::Valid
}
