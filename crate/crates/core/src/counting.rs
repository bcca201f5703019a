//! Exact counting of sand pile configurations.
//!
//! `c(p, w)` is the number of reduced forms of width `w` carrying `p` grains
//! above the socle. It satisfies
//!
//! ```text
//! c(0, w) = 1,  c(p, 0) = 0 for p > 0,
//! c(p, w) = C(w, p) + sum_{l=1..w} sum_{i=0..min(w-l, p-l)} sum_{m=1..(p-i)/l}
//!                        C(w-l, i) * c(p - i - l*m, l - 1)
//! ```
//!
//! where `l` is the first zero, `i` the number of ones after it and `m` the
//! number of layers under the prefix. `|SPM(n)|` is the sum of
//! `c(n - w(w+1)/2, w)` over admissible widths.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::staircase::socle_weight;

/// Largest width `w` with `w(w+1)/2 <= n`.
pub fn max_width(n: usize) -> usize {
    let mut w = 0;
    while socle_weight(w + 1) <= n {
        w += 1;
    }
    w
}

/// Memoized `c(p, w)` for `p <= n_max`, `w <= w_max`, plus Pascal's triangle
/// up to row `w_max`. Built once, read-only afterwards.
#[derive(Debug, Clone)]
pub struct CountTable {
    n_max: usize,
    w_max: usize,
    binom: Vec<Vec<BigUint>>,
    // c[w][p]
    c: Vec<Vec<BigUint>>,
    ops: u64,
}

impl CountTable {
    pub fn new(n_max: usize) -> Self {
        let w_max = max_width(n_max);
        let mut ops = 0u64;

        let mut binom: Vec<Vec<BigUint>> = Vec::with_capacity(w_max + 1);
        for a in 0..=w_max {
            let mut row = Vec::with_capacity(a + 1);
            for b in 0..=a {
                if b == 0 || b == a {
                    row.push(BigUint::one());
                } else {
                    ops += 1;
                    row.push(&binom[a - 1][b - 1] + &binom[a - 1][b]);
                }
            }
            binom.push(row);
        }

        let mut c: Vec<Vec<BigUint>> = Vec::with_capacity(w_max + 1);
        let mut base = vec![BigUint::zero(); n_max + 1];
        base[0] = BigUint::one();
        c.push(base);
        for w in 1..=w_max {
            let mut column = Vec::with_capacity(n_max + 1);
            column.push(BigUint::one());
            for p in 1..=n_max {
                let mut total = if p <= w {
                    binom[w][p].clone()
                } else {
                    BigUint::zero()
                };
                let mut inner = BigUint::zero();
                for l in 1..=w.min(p) {
                    let prev = &c[l - 1];
                    for i in 0..=(w - l).min(p - l) {
                        inner.set_zero();
                        let mut q = p - i;
                        while q >= l {
                            q -= l;
                            debug_assert!(q < p || l - 1 < w);
                            inner += &prev[q];
                            ops += 1;
                        }
                        total += &binom[w - l][i] * &inner;
                        ops += 2;
                    }
                }
                column.push(total);
            }
            c.push(column);
        }

        CountTable {
            n_max,
            w_max,
            binom,
            c,
            ops,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn w_max(&self) -> usize {
        self.w_max
    }

    /// Additions and multiplications spent building the table.
    pub fn arithmetic_ops(&self) -> u64 {
        self.ops
    }

    pub fn binomial(&self, a: usize, b: usize) -> Result<BigUint> {
        if a > self.w_max {
            return Err(Error::CapacityExceeded {
                requested: a,
                capacity: self.w_max,
            });
        }
        Ok(self.binom[a].get(b).cloned().unwrap_or_default())
    }

    pub(crate) fn binom_ref(&self, a: usize, b: usize) -> &BigUint {
        &self.binom[a][b]
    }

    /// `c(p, w)`, the number of reduced forms of width `w` and weight `p`.
    pub fn c(&self, p: usize, w: usize) -> Result<&BigUint> {
        if w > self.w_max {
            return Err(Error::CapacityExceeded {
                requested: w,
                capacity: self.w_max,
            });
        }
        if p > self.n_max {
            return Err(Error::CapacityExceeded {
                requested: p,
                capacity: self.n_max,
            });
        }
        Ok(&self.c[w][p])
    }

    pub(crate) fn c_ref(&self, p: usize, w: usize) -> &BigUint {
        &self.c[w][p]
    }

    /// `|SPM(n, w)|`.
    pub fn count_spm_width(&self, n: usize, w: usize) -> Result<BigUint> {
        if w == 0 || socle_weight(w) > n {
            return Err(Error::InvalidWidth { n, w });
        }
        self.c(n - socle_weight(w), w).cloned()
    }

    /// `|SPM(n)|`; the empty configuration makes `|SPM(0)| = 1`.
    pub fn count_spm(&self, n: usize) -> Result<BigUint> {
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
        for w in 1..=max_width(n) {
            total += self.c_ref(n - socle_weight(w), w);
        }
        Ok(total)
    }
}

/// One-shot `|SPM(n)|`.
pub fn count_spm(n: usize) -> BigUint {
    CountTable::new(n).count_spm(n).expect("table covers n")
}
