use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// Representative of one distinct kernel subsequence: the values
/// (a_{k^level * n + offset}) for n below the comparison window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KernelClass {
    pub level: usize,
    pub offset: usize,
}

/// Outcome of an empirical k-kernel probe. Saturation on a finite window is
/// evidence, never a proof.
#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub k: usize,
    pub depth: usize,
    /// Number of terms compared per subsequence.
    pub comparison_length: usize,
    /// One representative (level, offset) per distinct subsequence, in
    /// first-seen order (by level, then offset).
    pub classes: Vec<KernelClass>,
    /// Cumulative distinct-class count after exploring each level 0..=depth.
    pub level_counts: Vec<usize>,
    /// True when the final level introduced no new class.
    pub saturated: bool,
}

impl KernelReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// True when every deeper level added at least one new class.
    pub fn strictly_growing(&self) -> bool {
        self.level_counts.windows(2).all(|w| w[1] > w[0])
    }
}

/// Probe the k-kernel of `values`: collect the distinct subsequences
/// (a_{k^i n + j}) for i <= depth, 0 <= j < k^i, compared on the first
/// `window` terms each.
pub fn kernel_estimate(
    values: &[i64],
    k: usize,
    depth: usize,
    window: usize,
) -> Result<KernelReport> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("kernel base must be >= 2, got {k}")));
    }
    if window == 0 {
        return Err(Error::InvalidArgument("comparison window must be positive".into()));
    }
    let needed = k
        .checked_pow(depth as u32)
        .and_then(|p| p.checked_mul(window))
        .ok_or_else(|| Error::InvalidArgument("kernel probe size overflows".into()))?;
    if needed > values.len() {
        return Err(Error::PrefixTooShort { needed, have: values.len() });
    }

    let mut seen: HashMap<Vec<i64>, KernelClass> = HashMap::new();
    let mut classes = Vec::new();
    let mut level_counts = Vec::with_capacity(depth + 1);
    for level in 0..=depth {
        let step = k.pow(level as u32);
        for offset in 0..step {
            let window_vals: Vec<i64> =
                (0..window).map(|t| values[step * t + offset]).collect();
            seen.entry(window_vals).or_insert_with(|| {
                let class = KernelClass { level, offset };
                classes.push(class);
                class
            });
        }
        level_counts.push(seen.len());
    }
    let saturated = depth == 0 || level_counts[depth] == level_counts[depth - 1];
    Ok(KernelReport { k, depth, comparison_length: window, classes, level_counts, saturated })
}
