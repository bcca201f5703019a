//! Brute-force reachability from `(n)`, used as ground truth by the tests.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::configuration::Configuration;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Fall,
    /// SLIDE across a plateau of the given length.
    Slide { span: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: Configuration,
    pub to: Configuration,
    pub column: usize,
    pub rule: Rule,
}

/// Everything reachable from `(n)`, with the number of moves to reach each
/// member. Reachability is reflexive, so `(n)` itself is a member.
#[derive(Debug, Clone, Default)]
pub struct ReachabilitySet {
    pub members: HashSet<Configuration>,
    pub depth: HashMap<Configuration, usize>,
    /// Empty unless edges were requested.
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    pub keep_edges: bool,
    /// Largest set the search may build before giving up.
    pub max_members: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            keep_edges: true,
            max_members: 2_000_000,
        }
    }
}

/// Breadth-first closure under FALL, plus SLIDE_k when `k` is given.
pub fn bfs(n: usize, k: Option<usize>, opts: OracleOptions) -> Result<ReachabilitySet> {
    let start = if n == 0 {
        Configuration::empty()
    } else {
        Configuration::single_column(n)
    };
    let mut out = ReachabilitySet::default();
    let mut queue = VecDeque::new();
    out.members.insert(start.clone());
    out.depth.insert(start.clone(), 0);
    queue.push_back(start);
    while let Some(c) = queue.pop_front() {
        let d = out.depth[&c];
        let mut moves: Vec<(usize, Rule, Configuration)> = c
            .fall_targets()
            .into_iter()
            .map(|l| (l, Rule::Fall, c.apply_fall(l).expect("target applies")))
            .collect();
        if let Some(k) = k {
            for (l, _) in c.slide_targets(k) {
                let (to, span) = c.apply_slide(l, k).expect("target applies");
                moves.push((l, Rule::Slide { span }, to));
            }
        }
        for (column, rule, to) in moves {
            if opts.keep_edges {
                out.edges.push(Edge {
                    from: c.clone(),
                    to: to.clone(),
                    column,
                    rule,
                });
            }
            if out.members.insert(to.clone()) {
                if out.members.len() > opts.max_members {
                    return Err(Error::CapacityExceeded {
                        requested: out.members.len(),
                        capacity: opts.max_members,
                    });
                }
                out.depth.insert(to.clone(), d + 1);
                queue.push_back(to);
            }
        }
    }
    Ok(out)
}

pub fn bfs_spm(n: usize) -> Result<ReachabilitySet> {
    bfs(n, None, OracleOptions::default())
}

pub fn bfs_ipm(n: usize, k: usize) -> Result<ReachabilitySet> {
    assert!(k >= 1, "ice pile parameter must be positive");
    bfs(n, Some(k), OracleOptions::default())
}

/// Visits every partition of `n` (parts non-increasing) once.
pub fn partitions<F: FnMut(&[u32])>(n: usize, mut visitor: F) {
    fn rec<F: FnMut(&[u32])>(rest: u32, cap: u32, parts: &mut Vec<u32>, visitor: &mut F) {
        if rest == 0 {
            visitor(parts);
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            parts.push(p);
            rec(rest - p, p, parts, visitor);
            parts.pop();
        }
    }
    let mut parts = Vec::new();
    rec(n as u32, n as u32, &mut parts, &mut visitor);
}
