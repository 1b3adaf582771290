use serde::{Deserialize, Serialize};

use super::RealFunction;
use crate::error::{Error, Result};

pub const MIN_GRID_POINTS: usize = 33;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridDistribution {
    Uniform,
    /// Chebyshev-like clustering `sin^2`-spaced toward both ends.
    Clustered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridConfig {
    pub points: usize,
    pub distribution: GridDistribution,
    pub refine: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            points: 4097,
            distribution: GridDistribution::Clustered,
            refine: 30,
        }
    }
}

impl GridConfig {
    pub fn new(points: usize, distribution: GridDistribution, refine: usize) -> Result<Self> {
        if points < MIN_GRID_POINTS {
            return Err(Error::invalid(format!(
                "grid needs at least {MIN_GRID_POINTS} points, got {points}"
            )));
        }
        Ok(GridConfig {
            points,
            distribution,
            refine,
        })
    }

    /// Grid nodes on `j`, endpoints included. The grid with `2M - 1` points
    /// contains the grid with `M` points.
    pub fn nodes(&self, j: Interval) -> Vec<f64> {
        match self.distribution {
            GridDistribution::Uniform => uniform_nodes(j, self.points),
            GridDistribution::Clustered => {
                let last = self.points - 1;
                let width = j.hi - j.lo;
                (0..self.points)
                    .map(|i| {
                        if 2 * i == last {
                            j.lo + 0.5 * width
                        } else if 2 * i < last {
                            let s = (std::f64::consts::PI * i as f64 / (2 * last) as f64).sin();
                            j.lo + width * s * s
                        } else {
                            let s = (std::f64::consts::PI * (last - i) as f64 / (2 * last) as f64)
                                .sin();
                            j.hi - width * s * s
                        }
                    })
                    .collect()
            }
        }
    }
}

pub(crate) fn uniform_nodes(j: Interval, points: usize) -> Vec<f64> {
    let last = (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i == points - 1 {
                j.hi
            } else {
                j.lo + (j.hi - j.lo) * (i as f64 / last)
            }
        })
        .collect()
}

/// Closed subinterval of `[0, 1]` with positive length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo >= hi {
            return Err(Error::invalid(format!(
                "[{lo}, {hi}] is not a nondegenerate subinterval of [0, 1]"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn unit() -> Self {
        Interval { lo: 0.0, hi: 1.0 }
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_unit(&self) -> bool {
        self.lo == 0.0 && self.hi == 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupEstimate {
    /// Largest `|F|` actually evaluated: a lower bound for the true sup.
    pub value: f64,
    pub argmax: f64,
    pub evaluations: usize,
}

impl SupEstimate {
    pub fn exact_zero() -> Self {
        SupEstimate {
            value: 0.0,
            argmax: 0.0,
            evaluations: 0,
        }
    }
}

/// Grid maximum of `|F|` on `j`, followed by `grid.refine` rounds of ternary
/// search on the bracket around the best node.
pub fn sup_norm<F: RealFunction + ?Sized>(
    f: &F,
    j: Interval,
    grid: &GridConfig,
) -> Result<SupEstimate> {
    if !(j.lo < j.hi) {
        return Err(Error::invalid("sup_norm: empty or inverted interval"));
    }
    let nodes = grid.nodes(j);
    let mut best = (f64::NEG_INFINITY, 0usize);
    for (i, &x) in nodes.iter().enumerate() {
        let v = f.value(x).abs();
        if v.is_nan() {
            return Err(Error::invalid(format!("sup_norm: function is NaN at {x}")));
        }
        if v > best.0 {
            best = (v, i);
        }
    }
    let mut estimate = SupEstimate {
        value: best.0,
        argmax: nodes[best.1],
        evaluations: nodes.len(),
    };
    let mut lo = nodes[best.1.saturating_sub(1)];
    let mut hi = nodes[(best.1 + 1).min(nodes.len() - 1)];
    for _ in 0..grid.refine {
        let third = (hi - lo) / 3.0;
        if third <= 0.0 {
            break;
        }
        let (m1, m2) = (lo + third, hi - third);
        let (v1, v2) = (f.value(m1).abs(), f.value(m2).abs());
        estimate.evaluations += 2;
        for (v, x) in [(v1, m1), (v2, m2)] {
            if v > estimate.value {
                estimate.value = v;
                estimate.argmax = x;
            }
        }
        if v1 < v2 {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    Ok(estimate)
}
