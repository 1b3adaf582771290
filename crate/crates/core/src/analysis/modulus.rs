//! Grid estimates of the modulus of continuity and of the second-order
//! Ditzian-Totik modulus with weight `phi(x) = sqrt(x(1-x))`.

use std::collections::VecDeque;

use serde::Serialize;

use super::uniform_nodes;
use super::{GridConfig, Interval, RealFunction};
use crate::error::{Error, Result};

/// Number of step sizes `h` sampled in `(t/100, t]`.
pub const PHI_STEPS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum ModulusKind {
    Omega1,
    Omega1OnInterval { lo: f64, hi: f64 },
    OmegaPhi2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModulusEstimate {
    pub t: f64,
    pub value: f64,
    pub kind: ModulusKind,
    pub grid_points: usize,
    /// Step sizes examined (`omega_phi2` only).
    pub h_count: usize,
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::invalid(format!("modulus step must be positive, got {t}")));
    }
    Ok(())
}

/// `sup |F(x) - F(y)|` over `x, y` in `j`, `|x - y| <= t`.
pub fn omega1<F: RealFunction + ?Sized>(
    f: &F,
    t: f64,
    j: Interval,
    grid: &GridConfig,
) -> Result<ModulusEstimate> {
    Ok(omega1_sweep(f, &[t], j, grid)?.remove(0))
}

/// [`omega1`] for several steps on one shared uniform grid, so the values
/// are non-decreasing in `t`.
pub fn omega1_sweep<F: RealFunction + ?Sized>(
    f: &F,
    ts: &[f64],
    j: Interval,
    grid: &GridConfig,
) -> Result<Vec<ModulusEstimate>> {
    for &t in ts {
        check_t(t)?;
    }
    let nodes = uniform_nodes(j, grid.points);
    let values: Vec<f64> = nodes.iter().map(|&x| f.value(x)).collect();
    let spacing = j.len() / (grid.points - 1) as f64;
    let kind = if j.is_unit() {
        ModulusKind::Omega1
    } else {
        ModulusKind::Omega1OnInterval { lo: j.lo, hi: j.hi }
    };
    Ok(ts
        .iter()
        .map(|&t| {
            let ratio = t / spacing;
            // Steps that are an integer multiple of the spacing up to
            // rounding keep their last node.
            let window = if (ratio - ratio.round()).abs() < 1e-9 {
                ratio.round()
            } else {
                ratio.floor()
            };
            let window = (window as usize).min(values.len() - 1);
            ModulusEstimate {
                t,
                value: max_window_range(&values, window),
                kind,
                grid_points: grid.points,
                h_count: 0,
            }
        })
        .collect())
}

/// Largest `max - min` over all windows `values[i..=i+window]`.
fn max_window_range(values: &[f64], window: usize) -> f64 {
    let mut max_q: VecDeque<usize> = VecDeque::new();
    let mut min_q: VecDeque<usize> = VecDeque::new();
    let mut best: f64 = 0.0;
    for (i, &v) in values.iter().enumerate() {
        while max_q.back().is_some_and(|&b| values[b] <= v) {
            max_q.pop_back();
        }
        max_q.push_back(i);
        while min_q.back().is_some_and(|&b| values[b] >= v) {
            min_q.pop_back();
        }
        min_q.push_back(i);
        let start = i.saturating_sub(window);
        while max_q.front().is_some_and(|&f| f < start) {
            max_q.pop_front();
        }
        while min_q.front().is_some_and(|&f| f < start) {
            min_q.pop_front();
        }
        let range = values[max_q[0]] - values[min_q[0]];
        if range > best {
            best = range;
        }
    }
    best
}

/// `t * 100^(-j/64)`, `j = 0..64`: log-spaced, largest first.
pub fn phi_steps(t: f64) -> Vec<f64> {
    (0..PHI_STEPS)
        .map(|j| {
            if j == 0 {
                t
            } else {
                t * 100f64.powf(-(j as f64) / PHI_STEPS as f64)
            }
        })
        .collect()
}

fn weighted_second_difference<F: RealFunction + ?Sized>(f: &F, nodes: &[f64], h: f64) -> f64 {
    let mut best: f64 = 0.0;
    for &x in nodes {
        let d = h * (x * (1.0 - x)).sqrt();
        // Outside [0, 1] the difference is defined to be 0.
        if x - d < 0.0 || x + d > 1.0 {
            continue;
        }
        let v = f.second_difference(x, d).abs();
        if v > best {
            best = v;
        }
    }
    best
}

/// `sup_{0 < h <= t} ||Δ²_{h phi} f||` over `h` in [`phi_steps`] and `x` on
/// the grid.
pub fn omega_phi2<F: RealFunction + ?Sized>(
    f: &F,
    t: f64,
    grid: &GridConfig,
) -> Result<ModulusEstimate> {
    Ok(omega_phi2_sweep(f, &[t], grid)?.remove(0))
}

/// [`omega_phi2`] for several `t` with the union of their step grids, so the
/// values are non-decreasing in `t`.
pub fn omega_phi2_sweep<F: RealFunction + ?Sized>(
    f: &F,
    ts: &[f64],
    grid: &GridConfig,
) -> Result<Vec<ModulusEstimate>> {
    for &t in ts {
        check_t(t)?;
        if t > 1.0 {
            return Err(Error::invalid(format!("omega_phi2 step must be at most 1, got {t}")));
        }
    }
    let nodes = grid.nodes(Interval::unit());
    let mut steps: Vec<f64> = ts.iter().flat_map(|&t| phi_steps(t)).collect();
    steps.sort_by(f64::total_cmp);
    steps.dedup();
    let per_step: Vec<(f64, f64)> = steps
        .iter()
        .map(|&h| (h, weighted_second_difference(f, &nodes, h)))
        .collect();
    Ok(ts
        .iter()
        .map(|&t| {
            let mut value: f64 = 0.0;
            let mut count = 0;
            for &(_, v) in per_step.iter().filter(|(h, _)| *h <= t) {
                value = value.max(v);
                count += 1;
            }
            ModulusEstimate {
                t,
                value,
                kind: ModulusKind::OmegaPhi2,
                grid_points: grid.points,
                h_count: count,
            }
        })
        .collect())
}
