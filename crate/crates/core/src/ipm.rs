//! The ice pile model `IPM_k`: staircase bases `s(w, l)`, reduced forms
//! relative to them, the peeling map `pl`, its inverse `Aug`, and the
//! decomposition that drives counting and generation.
//!
//! `s(w, l)` has `l` columns of height `w` followed by `k` columns of each
//! height `w-1, ..., 1`. Reduced forms of basis `(w, l)` have length
//! `l + k(w-1) + 1`; the staircase drops at the indices `l, l+k, ...`, which
//! are exactly the indices congruent to `l` mod `k`. Every condition on a
//! tuple at basis `(w, l)` depends on the basis only through that residue,
//! called the class of the basis.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

use crate::configuration::{is_valid_ipm, Configuration};
use crate::error::{Error, Result};
use crate::generation::{gen_fixed_weight_binary, GenStats};

/// A staircase basis `(w, l)` of `IPM_k`, `w >= 1`, `1 <= l <= k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IpmBasis {
    pub k: usize,
    pub w: usize,
    pub l: usize,
}

impl IpmBasis {
    pub fn new(k: usize, w: usize, l: usize) -> Result<Self> {
        if k == 0 || w == 0 || l == 0 || l > k {
            return Err(Error::InvalidBasis { k, w, l });
        }
        Ok(IpmBasis { k, w, l })
    }

    /// The smallest basis, `s(1, 1) = (1)`.
    pub fn first(k: usize) -> Self {
        IpmBasis { k, w: 1, l: 1 }
    }

    /// Residue mod `k` of the staircase drop positions.
    #[inline]
    pub fn class(&self) -> usize {
        self.l % self.k
    }

    /// Next basis in the linear order.
    pub fn successor(&self) -> Self {
        if self.l == self.k {
            IpmBasis { w: self.w + 1, l: 1, ..*self }
        } else {
            IpmBasis { l: self.l + 1, ..*self }
        }
    }

    /// The basis reached after `c` successor steps.
    pub fn advance(&self, c: usize) -> Self {
        let idx = (self.w - 1) * self.k + (self.l - 1) + c;
        IpmBasis {
            k: self.k,
            w: idx / self.k + 1,
            l: idx % self.k + 1,
        }
    }

    /// Number of columns of `s(w, l)`.
    pub fn staircase_len(&self) -> usize {
        self.l + self.k * (self.w - 1)
    }

    /// Length of reduced forms at this basis: the staircase plus the
    /// first empty column.
    pub fn natural_len(&self) -> usize {
        self.staircase_len() + 1
    }

    pub fn staircase_weight(&self) -> usize {
        self.l * self.w + self.k * self.w * (self.w - 1) / 2
    }

    /// Height of column `i` of `s(w, l)`.
    #[inline]
    pub fn staircase_entry(&self, i: usize) -> u32 {
        if i < self.l {
            self.w as u32
        } else if i < self.staircase_len() {
            (self.w - 1 - (i - self.l) / self.k) as u32
        } else {
            0
        }
    }

    fn fits_under(&self, c: &Configuration) -> bool {
        (0..self.staircase_len()).all(|i| c.get(i) >= self.staircase_entry(i))
    }
}

impl PartialOrd for IpmBasis {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IpmBasis {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.k, self.w, self.l).cmp(&(other.k, other.w, other.l))
    }
}

impl fmt::Display for IpmBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.w, self.l)
    }
}

pub fn ipm_staircase(b: &IpmBasis) -> Configuration {
    Configuration::from_sorted((0..b.staircase_len()).map(|i| b.staircase_entry(i)).collect())
}

/// Largest basis whose staircase lies under `c` componentwise.
pub fn ipm_staircase_width(c: &Configuration, k: usize) -> Result<IpmBasis> {
    let v = is_valid_ipm(c, k);
    if !v.is_valid() {
        return Err(Error::InvalidConfiguration(v.to_string()));
    }
    if c.is_empty() {
        return Err(Error::InvalidConfiguration(
            "the empty configuration has no staircase basis".into(),
        ));
    }
    Ok(staircase_width_unchecked(c, k))
}

fn staircase_width_unchecked(c: &Configuration, k: usize) -> IpmBasis {
    let n = c.weight();
    let mut b = IpmBasis::first(k);
    loop {
        let next = b.successor();
        if next.staircase_weight() > n || !next.fits_under(c) {
            return b;
        }
        b = next;
    }
}

/// Indices `< len` congruent to `res` mod `k`.
#[inline]
fn residue_count(len: usize, res: usize, k: usize) -> usize {
    if res < len {
        (len - 1 - res) / k + 1
    } else {
        0
    }
}

/// First pair `(i, j)` breaking the augmented conditions at class `cls`:
/// `t[j] <= t[j-1] + [j = cls mod k]`, and for `j = i + k*p + 1`, `p >= 1`,
/// `t[j] <= t[i] + d(i, j) - p` with `d(i, j)` the class indices in `(i, j]`.
pub fn augmented_defect(t: &[u32], k: usize, cls: usize) -> Option<(usize, usize)> {
    let is_class = |j: usize| (j % k == cls) as u32;
    for j in 1..t.len() {
        if t[j] > t[j - 1] + is_class(j) {
            return Some((j - 1, j));
        }
        let mut p = 1;
        while k * p < j {
            let i = j - k * p - 1;
            let drops = residue_count(j + 1, cls, k) - residue_count(i + 1, cls, k);
            if t[j] as usize + p > t[i] as usize + drops {
                return Some((i, j));
            }
            p += 1;
        }
    }
    None
}

/// First zero entry at an index congruent to `cls`.
pub fn class_zero(t: &[u32], k: usize, cls: usize) -> Option<usize> {
    (cls..t.len()).step_by(k).find(|&i| t[i] == 0)
}

/// Membership level of a tuple at a basis, strongest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IpmClassification {
    /// Extended, of the basis' natural length; carries the grain count of
    /// the configuration it encodes.
    Reduced(usize),
    /// Augmented with a zero at an index of the basis' class.
    Extended,
    Augmented,
    /// Entries `i < j` break the augmented conditions.
    Invalid { i: usize, j: usize },
}

impl fmt::Display for IpmClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IpmClassification::Reduced(n) => write!(f, "reduced({})", n),
            IpmClassification::Extended => f.write_str("extended"),
            IpmClassification::Augmented => f.write_str("augmented"),
            IpmClassification::Invalid { i, j } => write!(f, "invalid @ {},{}", i, j),
        }
    }
}

pub fn is_ipm_reduced(t: &[u32], basis: &IpmBasis) -> IpmClassification {
    let (k, cls) = (basis.k, basis.class());
    if let Some((i, j)) = augmented_defect(t, k, cls) {
        return IpmClassification::Invalid { i, j };
    }
    if class_zero(t, k, cls).is_none() {
        return IpmClassification::Augmented;
    }
    if t.len() != basis.natural_len() {
        return IpmClassification::Extended;
    }
    let weight: usize = t.iter().map(|&x| x as usize).sum();
    IpmClassification::Reduced(weight + basis.staircase_weight())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormClass {
    Augmented,
    Extended,
    Reduced,
}

/// A tuple that is at least augmented at its basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IpmReducedForm {
    entries: Vec<u32>,
    basis: IpmBasis,
    class: FormClass,
}

impl IpmReducedForm {
    pub fn new(entries: Vec<u32>, basis: IpmBasis) -> Result<Self> {
        let class = match is_ipm_reduced(&entries, &basis) {
            IpmClassification::Reduced(_) => FormClass::Reduced,
            IpmClassification::Extended => FormClass::Extended,
            IpmClassification::Augmented => FormClass::Augmented,
            bad => {
                return Err(Error::NotAReducedForm(format!(
                    "{:?} at {}: {}",
                    entries, basis, bad
                )))
            }
        };
        Ok(IpmReducedForm {
            entries,
            basis,
            class,
        })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn basis(&self) -> &IpmBasis {
        &self.basis
    }

    pub fn class(&self) -> FormClass {
        self.class
    }

    pub fn is_extended(&self) -> bool {
        self.class >= FormClass::Extended
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.entries.iter().map(|&x| x as usize).sum()
    }
}

impl fmt::Debug for IpmReducedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ") at {}", self.basis)
    }
}

pub fn ipm_reduce(c: &Configuration, k: usize) -> Result<IpmReducedForm> {
    let basis = ipm_staircase_width(c, k)?;
    let entries = (0..basis.natural_len())
        .map(|i| c.get(i) - basis.staircase_entry(i))
        .collect();
    Ok(IpmReducedForm {
        entries,
        basis,
        class: FormClass::Reduced,
    })
}

/// Adds the staircase back. Fails if the sum is not a partition, which can
/// only happen for tuples longer than the natural length.
pub fn ipm_expand(r: &IpmReducedForm) -> Result<Configuration> {
    let b = &r.basis;
    let len = r.entries.len().max(b.staircase_len());
    let parts = (0..len)
        .map(|i| r.entries.get(i).copied().unwrap_or(0) + b.staircase_entry(i))
        .collect();
    Configuration::new(parts)
}

/// Decrements every entry of the basis' class and moves to the successor
/// basis. Undefined when one of those entries is zero.
pub fn pl(r: &IpmReducedForm) -> Result<IpmReducedForm> {
    let (entries, basis) = pl_tuple(&r.entries, &r.basis)?;
    IpmReducedForm::new(entries, basis)
}

/// `pl` on a raw tuple, without checking that it is augmented.
pub fn pl_tuple(t: &[u32], basis: &IpmBasis) -> Result<(Vec<u32>, IpmBasis)> {
    let (k, cls) = (basis.k, basis.class());
    if let Some(i) = class_zero(t, k, cls) {
        return Err(Error::Undefined(i));
    }
    let mut entries = t.to_vec();
    for i in (cls..entries.len()).step_by(k) {
        entries[i] -= 1;
    }
    Ok((entries, basis.successor()))
}

/// Applies `pl` until it becomes undefined. Returns the extended form reached
/// and the number of steps. The empty tuple is returned as is with `c = 0`.
pub fn peel_to_extended(r: &IpmReducedForm) -> (IpmReducedForm, usize) {
    if r.entries.is_empty() {
        return (r.clone(), 0);
    }
    let k = r.basis.k;
    let mut entries = r.entries.clone();
    let mut basis = r.basis;
    let mut c = 0;
    while class_zero(&entries, k, basis.class()).is_none() {
        for i in (basis.class()..entries.len()).step_by(k) {
            entries[i] -= 1;
        }
        basis = basis.successor();
        c += 1;
    }
    let t = IpmReducedForm::new(entries, basis).expect("peeling preserves augmented forms");
    (t, c)
}

/// Times index `i` is incremented when undoing `c` peelings that started at
/// class `cls`.
#[inline]
fn aug_increment(i: usize, cls: usize, c: usize, k: usize) -> u32 {
    let offset = (i + k - cls) % k;
    (c / k + (offset < c % k) as usize) as u32
}

/// Grains added when undoing `c` peelings of a length-`len` tuple that
/// started at class `cls`.
pub fn aug_weight(len: usize, cls: usize, c: usize, k: usize) -> usize {
    let full = len * (c / k);
    full + (0..c % k)
        .map(|s| residue_count(len, (cls + s) % k, k))
        .sum::<usize>()
}

/// Inverse of `peel_to_extended`: rebuilds the form at `target` whose
/// peeling stops at `t_prime` after `c` steps.
pub fn aug(t_prime: &IpmReducedForm, c: usize, target: &IpmBasis) -> Result<IpmReducedForm> {
    let reached = target.advance(c);
    if reached != t_prime.basis {
        return Err(Error::TrajectoryMismatch {
            expected: reached.to_string(),
            found: t_prime.basis.to_string(),
        });
    }
    if c > 0 && !t_prime.is_empty() && !t_prime.is_extended() {
        return Err(Error::NotExtended);
    }
    let (k, cls) = (target.k, target.class());
    let entries = t_prime
        .entries
        .iter()
        .enumerate()
        .map(|(i, &x)| x + aug_increment(i, cls, c, k))
        .collect();
    IpmReducedForm::new(entries, *target)
}

/// `r = t . 0 . u` with the zero at index `z`, the first zero of the
/// basis' class, and `t = Aug(t_prime, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpmDecomp {
    pub basis: IpmBasis,
    pub t_prime: IpmReducedForm,
    pub c: usize,
    pub z: usize,
    /// Entries after the zero; 0 or 1 at indices of the class, 0 elsewhere.
    pub u: Vec<u8>,
}

impl IpmDecomp {
    /// Offset `p` with `z = l + k*p`. It is `-1` when `l = k` and the zero
    /// sits at index 0.
    pub fn p(&self) -> isize {
        (self.z as isize - self.basis.l as isize).div_euclid(self.basis.k as isize)
    }
}

pub fn ipm_decompose(r: &IpmReducedForm) -> Result<IpmDecomp> {
    let (k, cls) = (r.basis.k, r.basis.class());
    let z = class_zero(&r.entries, k, cls).ok_or(Error::NotExtended)?;
    let t = IpmReducedForm::new(r.entries[..z].to_vec(), r.basis)?;
    let (t_prime, c) = peel_to_extended(&t);
    let mut u = Vec::with_capacity(r.entries.len() - z - 1);
    for (j, &x) in r.entries[z + 1..].iter().enumerate() {
        let pos = z + 1 + j;
        if x > 1 || (x == 1 && pos % k != cls) {
            return Err(Error::InconsistentStep(format!(
                "entry {} after the zero at {} is {}",
                pos, z, x
            )));
        }
        u.push(x as u8);
    }
    Ok(IpmDecomp {
        basis: r.basis,
        t_prime,
        c,
        z,
        u,
    })
}

pub fn ipm_recompose(d: &IpmDecomp, basis: &IpmBasis) -> Result<IpmReducedForm> {
    let (k, cls) = (basis.k, basis.class());
    let t = aug(&d.t_prime, d.c, basis)?;
    if t.len() != d.z || d.z % k != cls {
        return Err(Error::InconsistentStep(format!(
            "prefix of length {} cannot end at a zero of class {} at index {}",
            t.len(),
            cls,
            d.z
        )));
    }
    if let Some(j) = d
        .u
        .iter()
        .enumerate()
        .position(|(j, &b)| b > 1 || (b == 1 && (d.z + 1 + j) % k != cls))
    {
        return Err(Error::InconsistentStep(format!("tail entry {} is not admissible", j)));
    }
    let mut entries = t.entries;
    entries.push(0);
    entries.extend(d.u.iter().map(|&b| b as u32));
    let r = IpmReducedForm::new(entries, *basis)?;
    if class_zero(&r.entries, k, cls) != Some(d.z) {
        return Err(Error::InconsistentStep("prefix holds an earlier zero of the class".into()));
    }
    Ok(r)
}

/// A random augmented tuple at `basis`, drawn left to right with each entry
/// uniform below the bound its predecessors impose (and below `cap`).
pub fn random_augmented<R: Rng>(basis: &IpmBasis, len: usize, cap: u32, rng: &mut R) -> IpmReducedForm {
    let (k, cls) = (basis.k, basis.class());
    let mut t: Vec<u32> = Vec::with_capacity(len);
    for j in 0..len {
        let mut bound = cap as usize;
        if j > 0 {
            bound = bound.min(t[j - 1] as usize + (j % k == cls) as usize);
        }
        let mut p = 1;
        while k * p < j {
            let i = j - k * p - 1;
            let drops = residue_count(j + 1, cls, k) - residue_count(i + 1, cls, k);
            bound = bound.min(t[i] as usize + drops - p);
            p += 1;
        }
        t.push(rng.gen_range(0..=bound as u32));
    }
    IpmReducedForm::new(t, *basis).expect("sequential bounds keep the tuple augmented")
}

/// Counts of extended and of augmented-but-not-extended tuples, indexed by
/// length, class and weight:
///
/// ```text
/// E(len, cls, q) = sum_{z < len, z = cls mod k} sum_j C(f, j) * A(z, cls, q - j)
/// A(0, cls, q)   = [q = 0]
/// A(z, cls, q)   = sum_{c >= 1} E(z, cls + c, q - aug_weight(z, cls, c))
/// ```
///
/// where `f` is the number of class indices in `(z, len)`. `|IPM_k(n)|` sums
/// `E` over the bases whose staircase weighs at most `n`.
#[derive(Debug, Clone)]
pub struct IpmCountTable {
    k: usize,
    n_max: usize,
    len_max: usize,
    // [len][cls][weight]
    ext: Vec<Vec<Vec<BigUint>>>,
    aug: Vec<Vec<Vec<BigUint>>>,
}

impl IpmCountTable {
    pub fn new(n_max: usize, k: usize) -> Self {
        assert!(k >= 1, "ice pile parameter must be positive");
        let mut len_max = 0;
        let mut b = IpmBasis::first(k);
        while b.staircase_weight() <= n_max {
            len_max = len_max.max(b.natural_len());
            b = b.successor();
        }

        let mut binom: Vec<Vec<BigUint>> = Vec::with_capacity(len_max + 1);
        for a in 0..=len_max {
            let mut row = vec![BigUint::one(); a + 1];
            for j in 1..a {
                row[j] = &binom[a - 1][j - 1] + &binom[a - 1][j];
            }
            binom.push(row);
        }

        let zero_plane = || vec![vec![BigUint::zero(); n_max + 1]; k];
        let mut ext: Vec<Vec<Vec<BigUint>>> = Vec::with_capacity(len_max + 1);
        let mut aug: Vec<Vec<Vec<BigUint>>> = Vec::with_capacity(len_max + 1);
        for len in 0..=len_max {
            let mut e = zero_plane();
            for (cls, row) in e.iter_mut().enumerate() {
                for z in (cls..len).step_by(k) {
                    let f = residue_count(len, cls, k) - residue_count(z + 1, cls, k);
                    for q in 0..=n_max {
                        for j in 0..=f.min(q) {
                            let a = &aug[z][cls][q - j];
                            if !a.is_zero() {
                                row[q] += &binom[f][j] * a;
                            }
                        }
                    }
                }
            }
            ext.push(e);

            let mut a = zero_plane();
            for (cls, row) in a.iter_mut().enumerate() {
                if len == 0 {
                    row[0] = BigUint::one();
                    continue;
                }
                for (q, slot) in row.iter_mut().enumerate() {
                    let mut c = 1;
                    let mut grains = residue_count(len, cls, k);
                    while grains <= q {
                        *slot += &ext[len][(cls + c) % k][q - grains];
                        grains += residue_count(len, (cls + c) % k, k);
                        c += 1;
                    }
                }
            }
            aug.push(a);
        }

        IpmCountTable {
            k,
            n_max,
            len_max,
            ext,
            aug,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn check(&self, len: usize, cls: usize, q: usize) -> Result<()> {
        if len > self.len_max || q > self.n_max || cls >= self.k {
            return Err(Error::CapacityExceeded {
                requested: len.max(q),
                capacity: self.n_max,
            });
        }
        Ok(())
    }

    /// Extended tuples of length `len` and weight `q` at class `cls`.
    pub fn extended(&self, len: usize, cls: usize, q: usize) -> Result<&BigUint> {
        self.check(len, cls, q)?;
        Ok(&self.ext[len][cls][q])
    }

    /// Augmented, non-extended tuples of length `len` and weight `q`.
    pub fn augmented_only(&self, len: usize, cls: usize, q: usize) -> Result<&BigUint> {
        self.check(len, cls, q)?;
        Ok(&self.aug[len][cls][q])
    }

    /// `|IPM_k(n)|` restricted to configurations of basis `b`.
    pub fn count_basis(&self, n: usize, b: &IpmBasis) -> Result<BigUint> {
        if b.staircase_weight() > n {
            return Ok(BigUint::zero());
        }
        Ok(self
            .extended(b.natural_len(), b.class(), n - b.staircase_weight())?
            .clone())
    }

    /// `|IPM_k(n)|`; the empty configuration makes `|IPM_k(0)| = 1`.
    pub fn count(&self, n: usize) -> Result<BigUint> {
        if n > self.n_max {
            return Err(Error::CapacityExceeded {
                requested: n,
                capacity: self.n_max,
            });
        }
        if n == 0 {
            return Ok(BigUint::one());
        }
        let mut total = BigUint::zero();
        let mut b = IpmBasis::first(self.k);
        while b.staircase_weight() <= n {
            total += self.count_basis(n, &b)?;
            b = b.successor();
        }
        Ok(total)
    }
}

/// One-shot `|IPM_k(n)|`.
pub fn ipm_count(n: usize, k: usize) -> BigUint {
    IpmCountTable::new(n, k).count(n).expect("table covers n")
}

struct IpmGen<'t> {
    table: &'t IpmCountTable,
    k: usize,
    buf: Vec<u32>,
    // grains added to each index by the Aug levels currently open
    lift: Vec<u32>,
    stats: GenStats,
}

impl IpmGen<'_> {
    fn extended<F: FnMut(&[u32])>(&mut self, len: usize, cls: usize, q: usize, emit: &mut F) {
        self.stats.nodes += 1;
        let k = self.k;
        for z in (cls..len).step_by(k) {
            let f = residue_count(len, cls, k) - residue_count(z + 1, cls, k);
            for j in 0..=f.min(q) {
                self.stats.work += 1;
                if self.table.aug[z][cls][q - j].is_zero() {
                    continue;
                }
                self.buf[z] = self.lift[z];
                gen_fixed_weight_binary(f, j, |bits| {
                    self.stats.work += 1;
                    for pos in z + 1..len {
                        self.buf[pos] = self.lift[pos];
                    }
                    for (slot, &b) in bits.iter().enumerate() {
                        self.buf[z + k * (slot + 1)] += b as u32;
                    }
                    self.augmented(z, cls, q - j, emit);
                });
            }
        }
    }

    fn augmented<F: FnMut(&[u32])>(&mut self, z: usize, cls: usize, q: usize, emit: &mut F) {
        if z == 0 {
            self.stats.yields += 1;
            emit(&self.buf);
            return;
        }
        let k = self.k;
        let mut grains = 0;
        let mut c = 0;
        loop {
            let res = (cls + c) % k;
            for i in (res..z).step_by(k) {
                self.lift[i] += 1;
            }
            grains += residue_count(z, res, k);
            c += 1;
            self.stats.work += 1;
            if grains > q {
                break;
            }
            let next = (cls + c) % k;
            if !self.table.ext[z][next][q - grains].is_zero() {
                self.extended(z, next, q - grains, emit);
            }
        }
        for s in 0..c {
            for i in ((cls + s) % k..z).step_by(k) {
                self.lift[i] -= 1;
            }
        }
    }
}

/// Visits every reduced form of basis `b` and weight `q` (as a slice of the
/// basis' natural length).
pub fn ipm_generate_basis<F: FnMut(&[u32])>(
    table: &IpmCountTable,
    b: &IpmBasis,
    q: usize,
    mut visitor: F,
) -> Result<GenStats> {
    let len = b.natural_len();
    table.check(len, b.class(), q)?;
    let mut g = IpmGen {
        table,
        k: b.k,
        buf: vec![0; len],
        lift: vec![0; len],
        stats: GenStats {
            buffer_cells: 2 * len,
            ..GenStats::default()
        },
    };
    if !table.ext[len][b.class()][q].is_zero() {
        g.extended(len, b.class(), q, &mut visitor);
    }
    Ok(g.stats)
}

/// Visits every configuration of `IPM_k(n)` once, basis by basis.
pub fn ipm_generate<F: FnMut(&Configuration)>(
    n: usize,
    k: usize,
    table: &IpmCountTable,
    mut visitor: F,
) -> Result<GenStats> {
    if n > table.n_max() || k != table.k() {
        return Err(Error::CapacityExceeded {
            requested: n,
            capacity: table.n_max(),
        });
    }
    let mut stats = GenStats::default();
    if n == 0 {
        visitor(&Configuration::empty());
        stats.yields = 1;
        return Ok(stats);
    }
    let mut b = IpmBasis::first(k);
    while b.staircase_weight() <= n {
        let basis = b;
        let s = ipm_generate_basis(table, &basis, n - basis.staircase_weight(), |r| {
            let parts = r
                .iter()
                .enumerate()
                .map(|(i, &x)| x + basis.staircase_entry(i))
                .collect();
            visitor(&Configuration::from_sorted(parts));
        })?;
        stats.merge(&s);
        b = b.successor();
    }
    Ok(stats)
}
