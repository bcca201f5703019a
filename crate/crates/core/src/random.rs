//! Uniform random sand pile configurations by exact unranking.
//!
//! A rank drawn uniformly below `|SPM(n)|` is walked down the counting
//! recurrence: first the width, then the `(l, i)` cell, then the tail `u`
//! (combinatorial number system), the layer count `m` and the residual.
//! Every step is exact integer arithmetic, so each configuration is hit by
//! exactly one rank.

use num_bigint::BigUint;
use num_traits::Zero;
use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::configuration::Configuration;
use crate::counting::{max_width, CountTable};
use crate::error::{Error, Result};
use crate::staircase::{expand, socle_weight, ReducedForm};

/// Uniform integer in `[0, bound)` by rejection on whole bytes. The byte
/// stream, and hence the result, does not depend on the platform word size.
pub fn random_below<R: RngCore>(bound: &BigUint, rng: &mut R) -> Result<BigUint> {
    if bound.is_zero() {
        return Err(Error::EmptyDomain);
    }
    let bits = bound.bits();
    let nbytes = bits.div_ceil(8) as usize;
    let top_mask = match bits % 8 {
        0 => 0xff,
        r => (1u8 << r) - 1,
    };
    let mut buf = vec![0u8; nbytes];
    loop {
        rng.fill_bytes(&mut buf);
        buf[nbytes - 1] &= top_mask;
        let x = BigUint::from_bytes_le(&buf);
        if &x < bound {
            return Ok(x);
        }
    }
}

/// Read-only helper over a count table with the strided sums
/// `S(l, q) = sum_{m>=1} c(q - l*m, l - 1)` precomputed.
#[derive(Debug, Clone)]
pub struct Sampler<'a> {
    table: &'a CountTable,
    // strided[l][q]
    strided: Vec<Vec<BigUint>>,
}

impl<'a> Sampler<'a> {
    pub fn new(table: &'a CountTable) -> Self {
        let n_max = table.n_max();
        let mut strided = vec![Vec::new()];
        for l in 1..=table.w_max() {
            let mut row: Vec<BigUint> = Vec::with_capacity(n_max + 1);
            for q in 0..=n_max {
                let s = if q >= l {
                    table.c_ref(q - l, l - 1) + &row[q - l]
                } else {
                    BigUint::zero()
                };
                row.push(s);
            }
            strided.push(row);
        }
        Sampler { table, strided }
    }

    fn binom(&self, a: usize, b: usize) -> BigUint {
        if b > a {
            BigUint::zero()
        } else {
            self.table.binom_ref(a, b).clone()
        }
    }

    /// Writes the tail of rank `rank` among 0/1 strings of length `out.len()`
    /// with `ones` ones (lexicographic order), each entry lifted by `offset`.
    fn unrank_tail(&self, out: &mut [u32], mut ones: usize, mut rank: BigUint, offset: u32) {
        let len = out.len();
        for (j, slot) in out.iter_mut().enumerate() {
            let zeros_here = self.binom(len - j - 1, ones);
            if ones > 0 && rank >= zeros_here {
                rank -= zeros_here;
                ones -= 1;
                *slot = offset + 1;
            } else {
                *slot = offset;
            }
        }
        debug_assert!(ones == 0 && rank.is_zero());
    }

    /// The reduced form of width `w` and weight `p` with rank `rank`.
    pub fn unrank_reduced(&self, p: usize, w: usize, rank: &BigUint) -> Result<ReducedForm> {
        let total = self.table.c(p, w)?;
        if rank >= total {
            return Err(Error::CapacityExceeded {
                requested: p,
                capacity: self.table.n_max(),
            });
        }
        let mut out = vec![0u32; w + 1];
        let (mut p, mut w, mut rank, mut offset) = (p, w, rank.clone(), 0u32);
        'level: loop {
            if p == 0 {
                out[..=w].fill(offset);
                break;
            }
            if p <= w {
                let block = self.binom(w, p);
                if rank < block {
                    out[0] = offset;
                    self.unrank_tail(&mut out[1..=w], p, rank, offset);
                    break;
                }
                rank -= block;
            }
            for l in 1..=w.min(p) {
                for i in 0..=(w - l).min(p - l) {
                    let layers = &self.strided[l][p - i];
                    let block = self.binom(w - l, i) * layers;
                    if rank >= block {
                        rank -= block;
                        continue;
                    }
                    let u_rank = &rank / layers;
                    let mut sub = &rank % layers;
                    let mut m = 1;
                    loop {
                        let cell = self.table.c_ref(p - i - l * m, l - 1);
                        if &sub < cell {
                            break;
                        }
                        sub -= cell;
                        m += 1;
                    }
                    out[l] = offset;
                    self.unrank_tail(&mut out[l + 1..=w], i, u_rank, offset);
                    offset += m as u32;
                    p -= i + l * m;
                    w = l - 1;
                    rank = sub;
                    continue 'level;
                }
            }
            unreachable!("rank below c(p, w) always lands in a cell");
        }
        Ok(ReducedForm::from_entries_unchecked(out))
    }

    /// The configuration of `SPM(n)` with rank `rank`, widths in increasing
    /// order.
    pub fn unrank_spm(&self, n: usize, rank: &BigUint) -> Result<Configuration> {
        let total = self.table.count_spm(n)?;
        if rank >= &total {
            return Err(Error::CapacityExceeded {
                requested: n,
                capacity: self.table.n_max(),
            });
        }
        if n == 0 {
            return Ok(Configuration::empty());
        }
        let mut rank = rank.clone();
        for w in 1..=max_width(n) {
            let p = n - socle_weight(w);
            let fiber = self.table.c_ref(p, w);
            if &rank < fiber {
                return Ok(expand(&self.unrank_reduced(p, w, &rank)?));
            }
            rank -= fiber;
        }
        unreachable!("rank below |SPM(n)| always lands in a fiber")
    }

    pub fn sample<R: RngCore>(&self, n: usize, rng: &mut R) -> Result<Configuration> {
        let total = self.table.count_spm(n)?;
        let rank = random_below(&total, rng)?;
        self.unrank_spm(n, &rank)
    }
}

/// `count` uniform samples from `SPM(n)` driven by one seeded stream.
pub fn uniform_random_spm_many(
    n: usize,
    table: &CountTable,
    seed: u64,
    count: usize,
) -> Result<Vec<Configuration>> {
    let sampler = Sampler::new(table);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sampler.sample(n, &mut rng)).collect()
}

/// One uniform sample from `SPM(n)`.
pub fn uniform_random_spm(n: usize, table: &CountTable, seed: u64) -> Result<Configuration> {
    Ok(uniform_random_spm_many(n, table, seed, 1)?.remove(0))
}
