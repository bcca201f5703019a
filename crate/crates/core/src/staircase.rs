//! Staircase bases `s(k) = (k, k-1, ..., 1)`, staircase width, and the
//! reduced-form bijection between `SPM(n, w)` and `R(n, w)`.

use std::fmt;

use crate::configuration::{is_valid_spm, Configuration};
use crate::error::{Error, Result};

pub fn staircase(k: usize) -> Configuration {
    Configuration::from_sorted((1..=k as u32).rev().collect())
}

/// Grains in `s(w)`.
#[inline]
pub fn socle_weight(w: usize) -> usize {
    w * (w + 1) / 2
}

/// Largest `w` with `s(w) <= c` componentwise.
///
/// `s(w) <= c` holds iff `c[i] + i >= w` for every `i < w`, so a single scan
/// with a running minimum suffices.
pub fn staircase_width(c: &Configuration) -> usize {
    let mut w = 0;
    let mut floor = usize::MAX;
    loop {
        floor = floor.min(c.get(w) as usize + w);
        if floor < w + 1 {
            return w;
        }
        w += 1;
    }
}

/// A `(w+1)`-tuple obtained by removing the socle `s(w)` from a configuration
/// of staircase width `w`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedForm {
    entries: Vec<u32>,
}

/// Why a tuple fails to be a reduced form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormDefect {
    WrongLength { expected: usize, found: usize },
    /// No entry equals zero.
    NoZero,
    /// `entries[i] < entries[j] - 1` for some `i < j`.
    Rise { i: usize, j: usize },
}

impl fmt::Display for FormDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormDefect::WrongLength { expected, found } => {
                write!(f, "length {} where {} was expected", found, expected)
            }
            FormDefect::NoZero => f.write_str("no zero entry"),
            FormDefect::Rise { i, j } => write!(f, "entry {} exceeds entry {} by more than one", j, i),
        }
    }
}

/// Checks the two structural conditions on a would-be reduced form of width
/// `w`: some entry is zero, and no later entry exceeds an earlier one by more
/// than one. On success returns the number of grains of the configuration it
/// encodes.
pub fn is_reduced_form(entries: &[u32], w: usize) -> std::result::Result<usize, FormDefect> {
    if entries.len() != w + 1 {
        return Err(FormDefect::WrongLength {
            expected: w + 1,
            found: entries.len(),
        });
    }
    if !entries.contains(&0) {
        return Err(FormDefect::NoZero);
    }
    let mut min_at = 0;
    for j in 1..entries.len() {
        if entries[j] > entries[min_at] + 1 {
            return Err(FormDefect::Rise { i: min_at, j });
        }
        if entries[j] < entries[min_at] {
            min_at = j;
        }
    }
    Ok(entries.iter().map(|&e| e as usize).sum::<usize>() + socle_weight(w))
}

impl ReducedForm {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::NotAReducedForm("empty tuple".into()));
        }
        let w = entries.len() - 1;
        is_reduced_form(&entries, w).map_err(|d| Error::NotAReducedForm(d.to_string()))?;
        Ok(ReducedForm { entries })
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(!entries.is_empty());
        ReducedForm { entries }
    }

    /// The all-zero tuple of width `w`, i.e. the reduced form of `s(w)`.
    pub fn zero(w: usize) -> Self {
        ReducedForm {
            entries: vec![0; w + 1],
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn width(&self) -> usize {
        self.entries.len() - 1
    }

    /// Grains above the socle.
    pub fn weight(&self) -> usize {
        self.entries.iter().map(|&e| e as usize).sum()
    }

    /// Grains of the configuration this form encodes.
    pub fn grains(&self) -> usize {
        self.weight() + socle_weight(self.width())
    }
}

impl fmt::Debug for ReducedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
}

/// Reduced form of a sand pile configuration; validates reachability first.
pub fn reduce(c: &Configuration) -> Result<ReducedForm> {
    if let v @ crate::configuration::Validity::Invalid { .. } = is_valid_spm(c) {
        return Err(Error::InvalidConfiguration(v.to_string()));
    }
    Ok(reduce_unchecked(c))
}

/// Reduced form without the reachability check. The caller guarantees `c` is
/// a sand pile configuration, so `c[w+1] = 0` holds.
pub fn reduce_unchecked(c: &Configuration) -> ReducedForm {
    let w = staircase_width(c);
    debug_assert!(c.len() <= w + 1);
    let entries = (0..=w).map(|i| c.get(i) - (w - i) as u32).collect();
    ReducedForm { entries }
}

/// Adds the socle back.
pub fn expand(r: &ReducedForm) -> Configuration {
    let w = r.width();
    Configuration::from_sorted(
        r.entries
            .iter()
            .enumerate()
            .map(|(i, &e)| e + (w - i) as u32)
            .collect(),
    )
}
