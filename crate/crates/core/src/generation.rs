//! Constant amortized time generation of reduced forms and sand pile
//! configurations.
//!
//! The recursion walks the decomposition `(l, u, m)` level by level:
//! `l = 0` and `l = 1` cells are emitted directly, `l >= 2` cells recurse on
//! the residual of width `l - 1` with `p - i - l*m` grains. Every call emits at
//! least one object before returning, so the number of calls never exceeds
//! the number of objects.
//!
//! The tails `u` of all levels share one buffer of `w + 1` cells: level `d`
//! owns positions `l_d + 1 ..= w_d` of the reduced form it describes, and
//! these ranges are disjoint along any chain. Tails are enumerated in
//! cool-lex order, so consecutive tails differ by at most four writes. All-0
//! and all-1 tails are flagged instead of written.
//!
//! Visitors see the frame in place and must copy whatever they keep.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::configuration::Configuration;
use crate::counting::{max_width, CountTable};
use crate::decompose::{recompose_full, DecompChain, DecompStep};
use crate::error::{Error, Result};
use crate::staircase::{socle_weight, ReducedForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Fill {
    Zeros,
    Ones,
    /// Cool-lex cursor, 1-based as in the published loopless form.
    Bits { x: usize, y: usize },
}

/// Writes the first string of weight `ones` into `seg` (or flags a constant one).
fn begin_tail(seg: &mut [u8], ones: usize) -> (Fill, u64) {
    if ones == 0 {
        (Fill::Zeros, 1)
    } else if ones == seg.len() {
        (Fill::Ones, 1)
    } else {
        seg[..ones].fill(1);
        seg[ones..].fill(0);
        (Fill::Bits { x: ones, y: ones }, seg.len() as u64)
    }
}

/// Cool-lex successor. Returns false once the last string has been visited.
#[inline]
fn advance_tail(seg: &mut [u8], fill: &mut Fill) -> bool {
    let Fill::Bits { x, y } = fill else {
        return false;
    };
    let n = seg.len();
    if *x >= n {
        return false;
    }
    seg[*x - 1] = 0;
    seg[*y - 1] = 1;
    *x += 1;
    *y += 1;
    if seg[*x - 1] == 0 {
        seg[*x - 1] = 1;
        seg[0] = 0;
        if *y > 2 {
            *x = 2;
        }
        *y = 1;
    }
    true
}

/// Visits every 0/1 sequence of length `len` with `ones` ones exactly once.
/// Successive sequences differ in at most four positions. Returns the number
/// of visits.
pub fn gen_fixed_weight_binary<F: FnMut(&[u8])>(len: usize, ones: usize, mut visitor: F) -> u64 {
    assert!(ones <= len, "weight exceeds length");
    let mut buf = vec![0u8; len];
    let (mut fill, _) = begin_tail(&mut buf, ones);
    if fill == Fill::Ones {
        buf.fill(1);
    }
    let mut visits = 1;
    visitor(&buf);
    while advance_tail(&mut buf, &mut fill) {
        visits += 1;
        visitor(&buf);
    }
    visits
}

/// Counters collected during one traversal.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GenStats {
    /// Calls of the recursive procedure (recursion-tree nodes).
    pub nodes: u64,
    /// Objects emitted.
    pub yields: u64,
    /// Constant-time work units: loop iterations, tail transitions, tail
    /// initialisations (charged per written cell) and emissions.
    pub work: u64,
    /// Deepest recursion level reached.
    pub max_depth: usize,
    /// Cells of the shared tail buffer.
    pub buffer_cells: usize,
}

impl GenStats {
    /// Scalar cells held by one recursion level.
    pub const CELLS_PER_LEVEL: usize = 12;

    pub fn merge(&mut self, other: &GenStats) {
        self.nodes += other.nodes;
        self.yields += other.yields;
        self.work += other.work;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.buffer_cells = self.buffer_cells.max(other.buffer_cells);
    }

    /// Peak auxiliary memory in cells: recursion levels plus the tail buffer.
    pub fn peak_cells(&self) -> usize {
        self.max_depth * Self::CELLS_PER_LEVEL + self.buffer_cells
    }
}

#[derive(Debug, Clone, Copy)]
struct Level {
    l: usize,
    m: u32,
    width: usize,
    fill: Fill,
}

fn tail_bit(level: &Level, bits: &[u8], pos: usize) -> u8 {
    match level.fill {
        Fill::Zeros => 0,
        Fill::Ones => 1,
        Fill::Bits { .. } => bits[pos],
    }
}

fn materialize_levels<'a>(
    levels: impl Iterator<Item = &'a Level>,
    bits: &[u8],
    top_width: usize,
    out: &mut Vec<u32>,
) {
    out.clear();
    out.resize(top_width + 1, 0);
    let mut offset = 0u32;
    let mut open = top_width + 1;
    for level in levels {
        out[level.l] = offset;
        for pos in level.l + 1..=level.width {
            out[pos] = offset + tail_bit(level, bits, pos) as u32;
        }
        offset += level.m;
        open = level.l;
    }
    // anything left of the last zero is an all-zero residual lifted by `offset`
    for e in &mut out[..open] {
        *e = offset;
    }
}

fn chain_of_levels<'a>(
    levels: impl Iterator<Item = &'a Level>,
    bits: &[u8],
    top_width: usize,
) -> DecompChain {
    let mut steps = Vec::new();
    let mut open = Some(top_width);
    for level in levels {
        let u = (level.l + 1..=level.width)
            .map(|pos| tail_bit(level, bits, pos))
            .collect();
        steps.push(DecompStep {
            l: level.l,
            u,
            m: level.m,
        });
        open = level.l.checked_sub(1);
    }
    if let Some(w) = open {
        steps.push(DecompStep {
            l: 0,
            u: vec![0; w],
            m: 0,
        });
    }
    DecompChain { steps, top_width }
}

/// The generator state as seen by a visitor at an emission.
pub struct GenView<'a> {
    levels: &'a [Level],
    bits: &'a [u8],
    top_width: usize,
}

impl GenView<'_> {
    /// Number of decomposition triples currently on the frame.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn width(&self) -> usize {
        self.top_width
    }

    /// `(l, m)` of level `d`.
    pub fn step_lm(&self, d: usize) -> (usize, u32) {
        (self.levels[d].l, self.levels[d].m)
    }

    /// The tail `u` of level `d`.
    pub fn tail(&self, d: usize) -> impl Iterator<Item = u8> + '_ {
        let level = &self.levels[d];
        (level.l + 1..=level.width).map(move |pos| tail_bit(level, self.bits, pos))
    }

    /// Canonical decomposition chain of the current reduced form, including
    /// the terminal `l = 0` step that the generator leaves implicit.
    pub fn chain(&self) -> DecompChain {
        chain_of_levels(self.levels.iter(), self.bits, self.top_width)
    }

    pub fn write_reduced(&self, out: &mut Vec<u32>) {
        materialize_levels(self.levels.iter(), self.bits, self.top_width, out);
    }

    pub fn reduced_form(&self) -> ReducedForm {
        let mut out = Vec::with_capacity(self.top_width + 1);
        self.write_reduced(&mut out);
        ReducedForm::from_entries_unchecked(out)
    }

    pub fn configuration(&self) -> Configuration {
        let mut out = Vec::with_capacity(self.top_width + 1);
        self.write_reduced(&mut out);
        add_socle(&mut out);
        Configuration::from_sorted(out)
    }
}

fn add_socle(entries: &mut [u32]) {
    let w = entries.len() - 1;
    for (i, e) in entries.iter_mut().enumerate() {
        *e += (w - i) as u32;
    }
}

struct Recursion {
    levels: Vec<Level>,
    bits: Vec<u8>,
    top_width: usize,
    stats: GenStats,
}

impl Recursion {
    fn new(w: usize) -> Self {
        Recursion {
            levels: Vec::with_capacity(w + 1),
            bits: vec![0; w + 1],
            top_width: w,
            stats: GenStats {
                buffer_cells: w + 1,
                ..GenStats::default()
            },
        }
    }

    #[inline]
    fn emit<F: FnMut(&GenView)>(&mut self, visitor: &mut F) {
        self.stats.yields += 1;
        self.stats.work += 1;
        visitor(&GenView {
            levels: &self.levels,
            bits: &self.bits,
            top_width: self.top_width,
        });
    }

    /// Runs `body` once per tail of weight `ones` on positions `l+1..=w` of the
    /// current (top) level.
    #[inline]
    fn for_each_tail<F, B>(&mut self, l: usize, w: usize, ones: usize, visitor: &mut F, mut body: B)
    where
        F: FnMut(&GenView),
        B: FnMut(&mut Self, &mut F),
    {
        let d = self.levels.len() - 1;
        let (fill, cost) = begin_tail(&mut self.bits[l + 1..=w], ones);
        self.stats.work += cost;
        self.levels[d].fill = fill;
        loop {
            body(self, visitor);
            let mut fill = self.levels[d].fill;
            let more = advance_tail(&mut self.bits[l + 1..=w], &mut fill);
            self.levels[d].fill = fill;
            if !more {
                break;
            }
            self.stats.work += 1;
        }
    }

    fn generate<F: FnMut(&GenView)>(&mut self, p: usize, w: usize, visitor: &mut F) {
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(self.levels.len());
        if p == 0 {
            self.emit(visitor);
            return;
        }
        if w == 0 {
            return;
        }
        self.levels.push(Level {
            l: 0,
            m: 0,
            width: w,
            fill: Fill::Zeros,
        });
        let d = self.levels.len() - 1;

        // l = 0: every grain is dust on the w columns after the zero
        if p <= w {
            self.levels[d].l = 0;
            self.levels[d].m = 0;
            self.for_each_tail(0, w, p, visitor, |g, v| g.emit(v));
        }

        // l = 1: column 0 holds m = p - i >= 1 grains, the residual is (0)
        for i in 0..=(w - 1).min(p - 1) {
            self.stats.work += 1;
            self.levels[d].l = 1;
            self.levels[d].m = (p - i) as u32;
            self.for_each_tail(1, w, i, visitor, |g, v| g.emit(v));
        }

        // l >= 2: recurse on the residual of width l - 1
        for l in 2..=w.min(p) {
            for i in 0..=(w - l).min(p - l) {
                self.stats.work += 1;
                self.levels[d].l = l;
                self.for_each_tail(l, w, i, visitor, |g, v| {
                    for m in 1..=(p - i) / l {
                        g.stats.work += 1;
                        g.levels[d].m = m as u32;
                        g.generate(p - i - l * m, l - 1, v);
                    }
                });
            }
        }
        self.levels.pop();
    }
}

/// Visits every reduced form of width `w` with `p` grains above the socle,
/// i.e. every element of `R(p + w(w+1)/2, w)`, exactly once.
pub fn generate_reduced<F: FnMut(&GenView)>(p: usize, w: usize, mut visitor: F) -> GenStats {
    let mut rec = Recursion::new(w);
    rec.generate(p, w, &mut visitor);
    rec.stats
}

/// Visits every configuration of `SPM(n, w)`.
pub fn generate_spm_width<F: FnMut(&Configuration)>(n: usize, w: usize, mut visitor: F) -> GenStats {
    if w == 0 || socle_weight(w) > n {
        return GenStats::default();
    }
    let mut buf = Vec::with_capacity(w + 1);
    generate_reduced(n - socle_weight(w), w, |view| {
        view.write_reduced(&mut buf);
        add_socle(&mut buf);
        visitor(&Configuration::from_sorted(buf.clone()));
    })
}

/// Visits every configuration of `SPM(n)`, fiber by fiber in increasing width.
pub fn generate_spm<F: FnMut(&Configuration)>(n: usize, mut visitor: F) -> GenStats {
    if n == 0 {
        visitor(&Configuration::empty());
        return GenStats {
            yields: 1,
            work: 1,
            ..GenStats::default()
        };
    }
    let mut stats = GenStats::default();
    for w in 1..=max_width(n) {
        stats.merge(&generate_spm_width(n, w, &mut visitor));
    }
    stats
}

/// Rebuilds the reduced form of a chain. Accepts canonical chains and the
/// truncated chains held by the generator, whose residual after the last
/// step is implicitly all-zero.
pub fn materialize(chain: &DecompChain) -> Result<ReducedForm> {
    let mut steps = chain.steps.clone();
    let open = match steps.last() {
        None => Some(chain.top_width),
        Some(last) if last.l > 0 => Some(last.l - 1),
        Some(_) => None,
    };
    if let Some(w) = open {
        steps.push(DecompStep {
            l: 0,
            u: vec![0; w],
            m: 0,
        });
    }
    recompose_full(&DecompChain {
        steps,
        top_width: chain.top_width,
    })
    .map_err(|e| match e {
        Error::InconsistentStep(_) => e,
        other => Error::InconsistentStep(other.to_string()),
    })
}

/// Exact number of calls `generate_reduced(p, w, ..)` makes, computed by
/// replaying the shape of the recursion over the count table's binomials:
///
/// ```text
/// N(0, w) = 1,  N(p, 0) = 1,
/// N(p, w) = 1 + sum_{l=2..min(w,p)} sum_i C(w-l, i) sum_{m>=1} N(p - i - l*m, l - 1)
/// ```
///
/// Lets the node bound be checked on fibers too large to traverse.
#[derive(Debug, Clone)]
pub struct NodeTable {
    n_max: usize,
    // nodes[w][p]
    nodes: Vec<Vec<BigUint>>,
}

impl NodeTable {
    pub fn new(table: &CountTable) -> Self {
        let (n_max, w_max) = (table.n_max(), table.w_max());
        let mut nodes: Vec<Vec<BigUint>> = vec![vec![BigUint::one(); n_max + 1]];
        let mut inner = BigUint::zero();
        for w in 1..=w_max {
            let mut column = Vec::with_capacity(n_max + 1);
            column.push(BigUint::one());
            for p in 1..=n_max {
                let mut total = BigUint::one();
                for l in 2..=w.min(p) {
                    let prev = &nodes[l - 1];
                    for i in 0..=(w - l).min(p - l) {
                        inner.set_zero();
                        let mut q = p - i;
                        while q >= l {
                            q -= l;
                            inner += &prev[q];
                        }
                        total += table.binom_ref(w - l, i) * &inner;
                    }
                }
                column.push(total);
            }
            nodes.push(column);
        }
        NodeTable { n_max, nodes }
    }

    pub fn nodes(&self, p: usize, w: usize) -> Result<&BigUint> {
        if w >= self.nodes.len() || p > self.n_max {
            return Err(Error::CapacityExceeded {
                requested: p.max(w),
                capacity: self.n_max,
            });
        }
        Ok(&self.nodes[w][p])
    }

    /// Nodes of the traversal of `SPM(n, w)`.
    pub fn nodes_spm_width(&self, n: usize, w: usize) -> Result<&BigUint> {
        if w == 0 || socle_weight(w) > n {
            return Err(Error::InvalidWidth { n, w });
        }
        self.nodes(n - socle_weight(w), w)
    }
}

#[derive(Debug, Clone)]
struct Frame {
    p: usize,
    w: usize,
    started: bool,
    i: usize,
    level: Level,
}

enum Event {
    /// `p = 0`: the frame's own residual is all-zero; emit and drop the frame.
    Leaf,
    Emit,
    Spawn(usize, usize),
    Exhausted,
}

/// External iterator over `R(p + w(w+1)/2, w)`, driven by an explicit stack
/// that replays the recursive traversal in the same order.
pub struct ReducedForms {
    stack: Vec<Frame>,
    bits: Vec<u8>,
    top_width: usize,
    stats: GenStats,
}

impl ReducedForms {
    pub fn new(p: usize, w: usize) -> Self {
        ReducedForms {
            stack: vec![Frame::new(p, w)],
            bits: vec![0; w + 1],
            top_width: w,
            stats: GenStats {
                buffer_cells: w + 1,
                ..GenStats::default()
            },
        }
    }

    pub fn stats(&self) -> &GenStats {
        &self.stats
    }

    fn current(&self, include_top: bool) -> ReducedForm {
        let n = if include_top {
            self.stack.len()
        } else {
            self.stack.len() - 1
        };
        let mut out = Vec::with_capacity(self.top_width + 1);
        materialize_levels(
            self.stack[..n].iter().map(|f| &f.level),
            &self.bits,
            self.top_width,
            &mut out,
        );
        ReducedForm::from_entries_unchecked(out)
    }
}

impl Frame {
    fn new(p: usize, w: usize) -> Self {
        Frame {
            p,
            w,
            started: false,
            i: 0,
            level: Level {
                l: 0,
                m: 0,
                width: w,
                fill: Fill::Zeros,
            },
        }
    }

    fn first_cell(&self) -> (usize, usize) {
        if self.p <= self.w {
            (0, self.p)
        } else {
            (1, 0)
        }
    }

    fn next_cell(&self) -> Option<(usize, usize)> {
        let (p, w, l, i) = (self.p, self.w, self.level.l, self.i);
        match l {
            0 => Some((1, 0)),
            1 if i < (w - 1).min(p - 1) => Some((1, i + 1)),
            1 => (w.min(p) >= 2).then_some((2, 0)),
            _ if i < (w - l).min(p - l) => Some((l, i + 1)),
            _ => (l < w.min(p)).then_some((l + 1, 0)),
        }
    }

    fn enter_cell(&mut self, l: usize, i: usize, bits: &mut [u8], stats: &mut GenStats) {
        self.level.l = l;
        self.i = i;
        self.level.m = match l {
            0 => 0,
            1 => (self.p - i) as u32,
            _ => 1,
        };
        let (fill, cost) = begin_tail(&mut bits[l + 1..=self.w], i);
        self.level.fill = fill;
        stats.work += cost + 1;
    }

    fn event(&self) -> Event {
        let l = self.level.l;
        if l <= 1 {
            Event::Emit
        } else {
            Event::Spawn(self.p - self.i - l * self.level.m as usize, l - 1)
        }
    }

    fn advance(&mut self, bits: &mut [u8], stats: &mut GenStats) -> Event {
        if !self.started {
            self.started = true;
            stats.nodes += 1;
            if self.p == 0 {
                return Event::Leaf;
            }
            if self.w == 0 {
                return Event::Exhausted;
            }
            let (l, i) = self.first_cell();
            self.enter_cell(l, i, bits, stats);
            return self.event();
        }
        let l = self.level.l;
        if l >= 2 && (self.level.m as usize) < (self.p - self.i) / l {
            self.level.m += 1;
            stats.work += 1;
            return self.event();
        }
        if advance_tail(&mut bits[l + 1..=self.w], &mut self.level.fill) {
            if l >= 2 {
                self.level.m = 1;
            }
            stats.work += 1;
            return self.event();
        }
        match self.next_cell() {
            Some((l, i)) => {
                self.enter_cell(l, i, bits, stats);
                self.event()
            }
            None => Event::Exhausted,
        }
    }
}

impl Iterator for ReducedForms {
    type Item = ReducedForm;

    fn next(&mut self) -> Option<ReducedForm> {
        loop {
            let depth = self.stack.len();
            self.stats.max_depth = self.stats.max_depth.max(depth.saturating_sub(1));
            let top = self.stack.last_mut()?;
            match top.advance(&mut self.bits, &mut self.stats) {
                Event::Leaf => {
                    let item = self.current(false);
                    self.stack.pop();
                    self.stats.yields += 1;
                    return Some(item);
                }
                Event::Emit => {
                    self.stats.yields += 1;
                    return Some(self.current(true));
                }
                Event::Spawn(p, w) => self.stack.push(Frame::new(p, w)),
                Event::Exhausted => {
                    self.stack.pop();
                }
            }
        }
    }
}

/// External iterator over `SPM(n)`.
pub struct SpmConfigurations {
    n: usize,
    w: usize,
    inner: Option<ReducedForms>,
    empty_pending: bool,
}

impl SpmConfigurations {
    pub fn new(n: usize) -> Self {
        SpmConfigurations {
            n,
            w: 0,
            inner: None,
            empty_pending: n == 0,
        }
    }
}

impl Iterator for SpmConfigurations {
    type Item = Configuration;

    fn next(&mut self) -> Option<Configuration> {
        if self.empty_pending {
            self.empty_pending = false;
            return Some(Configuration::empty());
        }
        loop {
            if let Some(r) = self.inner.as_mut().and_then(Iterator::next) {
                return Some(crate::staircase::expand(&r));
            }
            if self.n == 0 || self.w >= max_width(self.n) {
                return None;
            }
            self.w += 1;
            self.inner = Some(ReducedForms::new(self.n - socle_weight(self.w), self.w));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::CountTable;
    use crate::decompose::decompose_full;
    use crate::staircase::{is_reduced_form, reduce};
    use std::collections::HashSet;

    fn binom(n: usize, k: usize) -> u64 {
        (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
    }

    #[test]
    fn fixed_weight_examples() {
        let mut seen = Vec::new();
        gen_fixed_weight_binary(2, 1, |b| seen.push(b.to_vec()));
        seen.sort();
        assert_eq!(seen, vec![vec![0, 1], vec![1, 0]]);

        let mut seen = Vec::new();
        assert_eq!(gen_fixed_weight_binary(3, 3, |b| seen.push(b.to_vec())), 1);
        assert_eq!(seen, vec![vec![1, 1, 1]]);

        assert_eq!(gen_fixed_weight_binary(5, 2, |_| {}), 10);
        assert_eq!(gen_fixed_weight_binary(0, 0, |b| assert!(b.is_empty())), 1);
    }

    #[test]
    fn fixed_weight_is_exhaustive_with_bounded_changes() {
        for len in 0..=12 {
            for ones in 0..=len {
                let mut seen = HashSet::new();
                let mut prev: Option<Vec<u8>> = None;
                gen_fixed_weight_binary(len, ones, |b| {
                    assert_eq!(b.iter().filter(|&&x| x == 1).count(), ones);
                    if let Some(p) = &prev {
                        let changed = p.iter().zip(b).filter(|(a, b)| a != b).count();
                        assert!(changed <= 4);
                    }
                    prev = Some(b.to_vec());
                    assert!(seen.insert(b.to_vec()));
                });
                assert_eq!(seen.len() as u64, binom(len, ones));
            }
        }
    }

    fn collect_reduced(p: usize, w: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        generate_reduced(p, w, |v| out.push(v.reduced_form().entries().to_vec()));
        out
    }

    #[test]
    fn generate_reduced_examples() {
        assert_eq!(collect_reduced(0, 4), vec![vec![0, 0, 0, 0, 0]]);
        let mut got = collect_reduced(1, 2);
        got.sort();
        assert_eq!(got, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(collect_reduced(3, 1), vec![vec![3, 0]]);
        assert!(collect_reduced(2, 0).is_empty());
    }

    #[test]
    fn generated_forms_match_counts_and_decompositions() {
        let table = CountTable::new(40);
        for w in 0..=8 {
            for p in 0..=12 {
                let mut seen = HashSet::new();
                let stats = generate_reduced(p, w, |v| {
                    let r = v.reduced_form();
                    assert!(is_reduced_form(r.entries(), w).is_ok());
                    assert_eq!(r.weight(), p);
                    assert_eq!(v.chain(), decompose_full(&r));
                    assert!(seen.insert(r));
                });
                assert_eq!(seen.len() as u64, stats.yields);
                assert_eq!(
                    num_bigint::BigUint::from(stats.yields),
                    *table.c(p, w).unwrap(),
                    "p={} w={}",
                    p,
                    w
                );
                assert!(stats.nodes <= stats.yields.max(1));
            }
        }
    }

    #[test]
    fn iterator_replays_the_recursion() {
        for w in 0..=7 {
            for p in 0..=11 {
                let recursive = collect_reduced(p, w);
                let mut it = ReducedForms::new(p, w);
                let iterated: Vec<Vec<u32>> = it.by_ref().map(|r| r.entries().to_vec()).collect();
                assert_eq!(recursive, iterated, "p={} w={}", p, w);
                let stats = generate_reduced(p, w, |_| {});
                assert_eq!(it.stats().nodes, stats.nodes);
                assert_eq!(it.stats().yields, stats.yields);
            }
        }
    }

    #[test]
    fn spm_examples() {
        let mut got = Vec::new();
        generate_spm(4, |c| got.push(c.clone()));
        got.sort();
        let mut want: Vec<Configuration> = ["4", "3,1", "2,2", "2,1,1"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        want.sort();
        assert_eq!(got, want);

        let mut got = Vec::new();
        generate_spm(1, |c| got.push(c.clone()));
        assert_eq!(got, vec!["1".parse::<Configuration>().unwrap()]);

        let target: Configuration = "6,6,3,3,1,1".parse().unwrap();
        let mut found = false;
        generate_spm_width(20, 5, |c| found |= *c == target);
        assert!(found);

        let mut got = Vec::new();
        generate_spm(0, |c| got.push(c.clone()));
        assert_eq!(got, vec![Configuration::empty()]);
    }

    #[test]
    fn spm_iterator_matches_visitor() {
        for n in 0..=25 {
            let mut visited = Vec::new();
            generate_spm(n, |c| visited.push(c.clone()));
            let iterated: Vec<Configuration> = SpmConfigurations::new(n).collect();
            assert_eq!(visited, iterated);
        }
    }

    #[test]
    fn node_table_matches_instrumented_counts() {
        let table = CountTable::new(45);
        let nodes = NodeTable::new(&table);
        for w in 0..=table.w_max() {
            for p in 0..=20 {
                let stats = generate_reduced(p, w, |_| {});
                assert_eq!(*nodes.nodes(p, w).unwrap(), BigUint::from(stats.nodes));
            }
        }
        let stats = generate_spm_width(45, 6, |_| {});
        assert_eq!(*nodes.nodes_spm_width(45, 6).unwrap(), BigUint::from(stats.nodes));
    }

    #[test]
    fn materialize_examples() {
        let chain = DecompChain {
            steps: vec![
                DecompStep { l: 2, u: vec![1, 0, 1], m: 1 },
                DecompStep { l: 0, u: vec![1], m: 0 },
            ],
            top_width: 5,
        };
        assert_eq!(materialize(&chain).unwrap().entries(), &[1, 2, 0, 1, 0, 1]);

        let chain = DecompChain {
            steps: vec![DecompStep { l: 0, u: vec![0; 4], m: 0 }],
            top_width: 4,
        };
        assert_eq!(materialize(&chain).unwrap(), ReducedForm::zero(4));
        let chain = DecompChain { steps: vec![], top_width: 4 };
        assert_eq!(materialize(&chain).unwrap(), ReducedForm::zero(4));

        let fig = ReducedForm::new(vec![4, 4, 3, 2, 2, 3, 3, 2, 3, 0, 0, 1, 1]).unwrap();
        assert_eq!(materialize(&decompose_full(&fig)).unwrap(), fig);

        // truncated chain: a trailing l = 1 step leaves the residual (0) implicit
        let chain = DecompChain {
            steps: vec![DecompStep { l: 1, u: vec![1], m: 2 }],
            top_width: 2,
        };
        assert_eq!(materialize(&chain).unwrap().entries(), &[2, 0, 1]);

        let bad = DecompChain {
            steps: vec![DecompStep { l: 1, u: vec![1, 1], m: 2 }],
            top_width: 2,
        };
        assert!(matches!(materialize(&bad), Err(Error::InconsistentStep(_))));
    }

    #[test]
    fn view_configuration_matches_expand() {
        generate_spm_width(30, 4, |c| {
            assert_eq!(crate::staircase::expand(&reduce(c).unwrap()), *c);
        });
    }
}
