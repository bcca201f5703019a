//! Generating sequences: lists of FALL indices that build a configuration
//! from the initial column `(n)`.
//!
//! The certificate of a configuration of width `w` first raises the socle
//! with `beta(1) ... beta(w-1)`, then places the reduced form with `path`.
//! `path` works on reduced tuples through `fall_prime`, the image of FALL
//! under removal of the socle.

use crate::configuration::{Configuration, GeneratingSequence};
use crate::decompose::decompose_step;
use crate::error::{Error, Result};
use crate::staircase::{reduce, ReducedForm};

/// `(0, 1, ..., i-1)`: carries one grain from column 0 to column `i`.
pub fn alpha(i: usize) -> GeneratingSequence {
    GeneratingSequence((0..i).collect())
}

/// `alpha(i) . alpha(i-1) ... alpha(1)`.
pub fn beta(i: usize) -> GeneratingSequence {
    let mut out = Vec::with_capacity(i * (i + 1) / 2);
    for j in (1..=i).rev() {
        out.extend(0..j);
    }
    GeneratingSequence(out)
}

/// `beta(1) ... beta(w-1)`. Replayed from `(n)` it gives
/// `(n - w(w-1)/2, w-1, ..., 1)`.
pub fn socle_prefix(w: usize) -> GeneratingSequence {
    let mut out = Vec::new();
    for i in 1..w {
        out.extend(beta(i).0);
    }
    GeneratingSequence(out)
}

/// FALL on a reduced tuple of width `w = len - 1`, at an index `l < w`:
/// one grain moves from `l` to `l + 1`, allowed when `t[l] >= t[l+1] + 1`.
pub fn fall_prime(t: &[u32], l: usize) -> Result<Vec<u32>> {
    if l + 1 >= t.len() || t[l] < t[l + 1] + 1 {
        return Err(Error::RuleNotApplicable { column: l });
    }
    let mut out = t.to_vec();
    out[l] -= 1;
    out[l + 1] += 1;
    Ok(out)
}

/// Replays `seq` with `fall_prime` from `(p, 0, ..., 0)` of width `w`.
pub fn replay_reduced(p: u32, w: usize, seq: &GeneratingSequence) -> Result<Vec<u32>> {
    let mut t = vec![0; w + 1];
    t[0] = p;
    for (pos, &l) in seq.0.iter().enumerate() {
        if l + 1 > w || t[l] < t[l + 1] + 1 {
            return Err(Error::InvalidStep(pos));
        }
        t[l] -= 1;
        t[l + 1] += 1;
    }
    Ok(t)
}

/// FALL' indices turning `(p, 0, ..., 0)` into `r`, where `p = weight(r)`.
pub fn path(r: &ReducedForm) -> GeneratingSequence {
    let mut out = Vec::new();
    let mut current = r.clone();
    loop {
        let (step, residual) = decompose_step(&current);
        // seq_0: dust after the zero, farthest grain first
        for (j, _) in step.u.iter().enumerate().rev().filter(|(_, &b)| b == 1) {
            out.extend(0..step.l + 1 + j);
        }
        // seq_1: m layers over columns 0..l
        for _ in 0..step.m {
            for j in (1..step.l).rev() {
                out.extend(0..j);
            }
        }
        match residual {
            Some(next) => current = next,
            None => break,
        }
    }
    GeneratingSequence(out)
}

/// Certificate of a sand pile configuration: replaying it from `(n)` with
/// FALL gives `c`.
pub fn generating_sequence(c: &Configuration) -> Result<GeneratingSequence> {
    let r = reduce(c)?;
    let mut seq = socle_prefix(r.width()).0;
    seq.extend(path(&r).0);
    Ok(GeneratingSequence(seq))
}

/// Replays FALL from `(n)`. Fails with the position of the first index whose
/// move is not allowed.
pub fn verify_sequence(n: usize, seq: &GeneratingSequence) -> Result<Configuration> {
    let mut parts: Vec<u32> = if n == 0 { vec![] } else { vec![n as u32] };
    for (pos, &l) in seq.0.iter().enumerate() {
        let here = parts.get(l).copied().unwrap_or(0);
        let next = parts.get(l + 1).copied().unwrap_or(0);
        if here < next + 2 {
            return Err(Error::InvalidStep(pos));
        }
        parts[l] -= 1;
        if l + 1 == parts.len() {
            parts.push(1);
        } else {
            parts[l + 1] += 1;
        }
    }
    Ok(Configuration::from_sorted(parts))
}
