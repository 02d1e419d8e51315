use serde::Serialize;

use crate::error::{Error, Result};

/// Estimated rate of growth of a dimension sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthEstimate {
    /// γ, when the finite differences settle inside the window.
    pub gamma: Option<usize>,
    pub stable: bool,
    /// Residue classes used (1 for plain polynomial growth).
    pub period: usize,
    /// Length of the tail window the decision was based on.
    pub window: usize,
    /// Finite-difference table of the tail window: row t holds the t-th differences.
    pub differences: Vec<Vec<i64>>,
    pub sequence: Vec<usize>,
}

impl GrowthEstimate {
    pub fn value(&self) -> Option<usize> {
        self.gamma
    }

    pub fn label(&self) -> String {
        match self.gamma {
            Some(g) => g.to_string(),
            None => "unstable".into(),
        }
    }
}

pub const MIN_SEQUENCE: usize = 6;
const MAX_PERIOD: usize = 4;

fn differences(seq: &[i64]) -> Vec<Vec<i64>> {
    let mut rows = vec![seq.to_vec()];
    while rows.last().is_some_and(|r| r.len() > 1) {
        let r = rows.last().expect("nonempty");
        rows.push(r.windows(2).map(|w| w[1] - w[0]).collect());
    }
    rows
}

/// γ of one residue class: the least t whose t-th differences vanish on a
/// tail of max(base, t + 2) entries, with positive (t−1)-th differences.
fn class_gamma(class: &[i64], base: usize) -> Option<usize> {
    let n = class.len();
    for t in 0.. {
        let w = base.max(t + 2);
        if w > n {
            return None;
        }
        let rows = differences(&class[n - w..]);
        if rows[t].iter().all(|&x| x == 0) {
            return match t {
                0 => Some(0),
                _ if rows[t - 1][0] > 0 => Some(t),
                _ => None,
            };
        }
    }
    None
}

/// γ of a sequence from the tail: the smallest t whose t-th finite differences
/// vanish on the last ⌈len/2⌉ entries (or t + 2 entries, if more), so that
/// the sequence grows like n^{t−1}. Sequences that are polynomial only on each
/// residue class modulo a small period are accepted with that period.
pub fn estimate_gamma(dims: &[usize]) -> Result<GrowthEstimate> {
    if dims.len() < MIN_SEQUENCE {
        return Err(Error::SequenceTooShort(dims.len()));
    }
    let seq: Vec<i64> = dims.iter().map(|&d| d as i64).collect();
    let len = seq.len();
    let half = len.div_ceil(2);
    for period in 1..=MAX_PERIOD {
        let base = half.div_ceil(period).max(3);
        let classes: Vec<Option<usize>> = (0..period)
            .map(|r| {
                let class: Vec<i64> = seq.iter().skip(r).step_by(period).copied().collect();
                class_gamma(&class, base)
            })
            .collect();
        let ok = classes.iter().all(Option::is_some);
        let gammas: Vec<usize> = classes.into_iter().flatten().collect();
        if ok {
            let gamma = gammas.into_iter().max().unwrap_or(0);
            let window = half.max(gamma + 2).min(len);
            return Ok(GrowthEstimate {
                gamma: Some(gamma),
                stable: true,
                period,
                window,
                differences: differences(&seq[len - window..]),
                sequence: dims.to_vec(),
            });
        }
    }
    Ok(GrowthEstimate {
        gamma: None,
        stable: false,
        period: 1,
        window: half,
        differences: differences(&seq[len - half..]),
        sequence: dims.to_vec(),
    })
}
