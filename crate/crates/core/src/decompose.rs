//! Recursive decomposition of reduced forms.
//!
//! A reduced form splits at its first zero `l` into a strictly positive
//! prefix `t`, the zero, and a 0/1 tail `u`. Removing `m = min(t)` layers from
//! the prefix leaves a reduced form of width `l - 1`, which decomposes again.
//! Steps are always written `(l, u, m)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::staircase::{is_reduced_form, ReducedForm};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DecompStep {
    /// Index of the first zero.
    pub l: usize,
    /// Entries after the first zero, each 0 or 1.
    pub u: Vec<u8>,
    /// Minimum of the prefix; 0 exactly when `l = 0`.
    pub m: u32,
}

impl DecompStep {
    pub fn ones(&self) -> usize {
        self.u.iter().filter(|&&b| b == 1).count()
    }

    /// Grains this step accounts for: its dust plus `l` columns of `m` layers.
    pub fn weight(&self) -> usize {
        self.ones() + self.l * self.m as usize
    }
}

impl fmt::Display for DecompStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.l)?;
        for b in &self.u {
            write!(f, "{}", b)?;
        }
        write!(f, ";{})", self.m)
    }
}

impl fmt::Debug for DecompStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Full recursive decomposition, outermost step first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DecompChain {
    pub steps: Vec<DecompStep>,
    pub top_width: usize,
}

impl DecompChain {
    pub fn weight(&self) -> usize {
        self.steps.iter().map(DecompStep::weight).sum()
    }
}

pub fn decompose_step(r: &ReducedForm) -> (DecompStep, Option<ReducedForm>) {
    let e = r.entries();
    let l = e
        .iter()
        .position(|&x| x == 0)
        .expect("reduced forms contain a zero");
    let u = e[l + 1..].iter().map(|&x| x as u8).collect();
    if l == 0 {
        return (DecompStep { l, u, m: 0 }, None);
    }
    let m = *e[..l].iter().min().unwrap();
    let residual = ReducedForm::from_entries_unchecked(e[..l].iter().map(|&x| x - m).collect());
    (DecompStep { l, u, m }, Some(residual))
}

/// Checked variant for tuples that have not yet been validated.
pub fn try_decompose_step(entries: &[u32]) -> Result<(DecompStep, Option<ReducedForm>)> {
    let r = ReducedForm::new(entries.to_vec())?;
    Ok(decompose_step(&r))
}

/// Rebuilds `t . 0 . u` with `t = residual + m`.
pub fn recompose_step(
    step: &DecompStep,
    residual: Option<&ReducedForm>,
    w: usize,
) -> Result<ReducedForm> {
    let inconsistent = |msg: String| Err(Error::InconsistentStep(msg));
    if step.l > w {
        return inconsistent(format!("first zero {} beyond width {}", step.l, w));
    }
    if step.u.len() != w - step.l {
        return inconsistent(format!(
            "tail has length {} but width {} with first zero {} needs {}",
            step.u.len(),
            w,
            step.l,
            w - step.l
        ));
    }
    if let Some(pos) = step.u.iter().position(|&b| b > 1) {
        return inconsistent(format!("tail entry {} is not 0 or 1", pos));
    }
    let mut entries = Vec::with_capacity(w + 1);
    match (step.l, residual) {
        (0, None) => {
            if step.m != 0 {
                return inconsistent("empty prefix must carry m = 0".into());
            }
        }
        (0, Some(_)) => return inconsistent("empty prefix cannot carry a residual".into()),
        (_, None) => return inconsistent("non-empty prefix needs a residual".into()),
        (l, Some(res)) => {
            if step.m == 0 {
                return inconsistent("non-empty prefix needs m >= 1".into());
            }
            if res.entries().len() != l {
                return inconsistent(format!(
                    "residual has width {} but first zero {} needs {}",
                    res.width(),
                    l,
                    l - 1
                ));
            }
            if is_reduced_form(res.entries(), l - 1).is_err() {
                return inconsistent("residual is not a reduced form".into());
            }
            entries.extend(res.entries().iter().map(|&x| x + step.m));
        }
    }
    entries.push(0);
    entries.extend(step.u.iter().map(|&b| b as u32));
    Ok(ReducedForm::from_entries_unchecked(entries))
}

pub fn decompose_full(r: &ReducedForm) -> DecompChain {
    let top_width = r.width();
    let mut steps = Vec::new();
    let mut current = r.clone();
    loop {
        let (step, residual) = decompose_step(&current);
        steps.push(step);
        match residual {
            Some(next) => current = next,
            None => break,
        }
    }
    DecompChain { steps, top_width }
}

pub fn recompose_full(chain: &DecompChain) -> Result<ReducedForm> {
    let steps = &chain.steps;
    if steps.is_empty() {
        return Err(Error::InconsistentStep("empty chain".into()));
    }
    if steps.last().unwrap().l != 0 {
        return Err(Error::InconsistentStep("chain must end with l = 0".into()));
    }
    // width of each level: top, then l_i - 1
    let mut widths = Vec::with_capacity(steps.len());
    widths.push(chain.top_width);
    for pair in steps.windows(2) {
        if pair[1].l >= pair[0].l {
            return Err(Error::InconsistentStep("l values must strictly decrease".into()));
        }
        widths.push(pair[0].l - 1);
    }
    let mut current: Option<ReducedForm> = None;
    for (step, &w) in steps.iter().zip(&widths).rev() {
        current = Some(recompose_step(step, current.as_ref(), w)?);
    }
    Ok(current.unwrap())
}
