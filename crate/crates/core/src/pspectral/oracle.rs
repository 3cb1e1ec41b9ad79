//! Grid-search oracle for λ^(p) on graphs with at most six vertices.
//!
//! Works in simplex coordinates y_i = x_i^p, where the objective reads
//! F(y) = 2 Σ_{ij∈E} (y_i y_j)^{1/p}. A full grid of step 1/60 is scanned
//! (60 is divisible by every clique size up to 6, so the p = 1 optimum lies on
//! the grid), the best grid points seed a pairwise mass-transfer pattern
//! search, and the step is halved until it falls below the resolution.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{invalid, Result};
use crate::graph::Graph;

pub const ORACLE_MAX_ORDER: usize = 6;

const GRID: usize = 60;
const SEEDS: usize = 32;

struct Scored(f64, [u8; ORACLE_MAX_ORDER]);

impl PartialEq for Scored {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for Scored {}

impl PartialOrd for Scored {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scored {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0).then_with(|| self.1.cmp(&other.1))
    }
}

/// Lower bound on λ^(p)(G) from grid search plus local refinement, for
/// n ≤ 6 and p ≥ 1. The returned value is attained by an explicit unit
/// p-norm vector.
pub fn brute_force_lambda(g: &Graph, p: f64, resolution: f64) -> Result<f64> {
    let n = g.order();
    if n > ORACLE_MAX_ORDER {
        return Err(invalid(format!("brute_force_lambda supports n <= {ORACLE_MAX_ORDER}, got {n}")));
    }
    if !(p >= 1.0) || !p.is_finite() {
        return Err(invalid(format!("brute_force_lambda needs p >= 1, got {p}")));
    }
    if !(resolution > 0.0) {
        return Err(invalid("resolution must be positive"));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if n == 0 || edges.is_empty() {
        return Ok(0.0);
    }
    let root: Vec<f64> = (0..=GRID).map(|k| (k as f64 / GRID as f64).powf(1.0 / p)).collect();

    let mut heap: BinaryHeap<Reverse<Scored>> = BinaryHeap::new();
    let mut comp = [0u8; ORACLE_MAX_ORDER];
    scan(n, 0, GRID, &mut comp, &mut |c| {
        let value = 2.0 * edges.iter().map(|&(i, j)| root[c[i] as usize] * root[c[j] as usize]).sum::<f64>();
        if heap.len() < SEEDS {
            heap.push(Reverse(Scored(value, *c)));
        } else if value > heap.peek().expect("nonempty").0 .0 {
            heap.pop();
            heap.push(Reverse(Scored(value, *c)));
        }
    });

    let objective = |y: &[f64]| 2.0 * edges.iter().map(|&(i, j)| (y[i] * y[j]).powf(1.0 / p)).sum::<f64>();
    let min_step = resolution * 1e-3;
    let mut best = f64::NEG_INFINITY;
    for Reverse(Scored(_, c)) in heap.into_sorted_vec() {
        let mut y: Vec<f64> = c[..n].iter().map(|&k| k as f64 / GRID as f64).collect();
        let mut value = objective(&y);
        let mut step = 1.0 / GRID as f64;
        while step >= min_step {
            let mut improved = false;
            for i in 0..n {
                for j in 0..n {
                    if i == j || y[j] == 0.0 {
                        continue;
                    }
                    let t = step.min(y[j]);
                    let (yi, yj) = (y[i], y[j]);
                    y[i] = yi + t;
                    y[j] = if t == yj { 0.0 } else { yj - t };
                    let v = objective(&y);
                    if v > value {
                        value = v;
                        improved = true;
                    } else {
                        y[i] = yi;
                        y[j] = yj;
                    }
                }
            }
            if !improved {
                step /= 2.0;
            }
        }
        // re-evaluate on the exactly renormalized point
        let total: f64 = y.iter().sum();
        let y: Vec<f64> = y.iter().map(|v| v / total).collect();
        best = best.max(objective(&y));
    }
    Ok(best)
}

fn scan(n: usize, idx: usize, left: usize, comp: &mut [u8; ORACLE_MAX_ORDER], visit: &mut impl FnMut(&[u8; ORACLE_MAX_ORDER])) {
    if idx == n - 1 {
        comp[idx] = left as u8;
        visit(comp);
        return;
    }
    for k in 0..=left {
        comp[idx] = k as u8;
        scan(n, idx + 1, left - k, comp, visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn examples() {
        let k2 = Graph::complete(2).unwrap();
        assert_abs_diff_eq!(brute_force_lambda(&k2, 2.0, 1e-3).unwrap(), 1.0, epsilon = 1e-3);
        let k3 = Graph::complete(3).unwrap();
        assert_abs_diff_eq!(brute_force_lambda(&k3, 1.0, 1e-3).unwrap(), 2.0 / 3.0, epsilon = 1e-3);
        let c5 = Graph::cycle(5).unwrap();
        assert_abs_diff_eq!(brute_force_lambda(&c5, 2.0, 1e-3).unwrap(), 2.0, epsilon = 1e-3);
    }

    #[test]
    fn p1_hits_the_clique_value_exactly_on_the_grid() {
        let g = crate::graph::kr_plus(2, 2, 2).unwrap();
        assert_abs_diff_eq!(brute_force_lambda(&g, 1.0, 1e-3).unwrap(), 2.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn never_exceeds_absolute_maximum() {
        for n in 2..=6 {
            let g = Graph::complete(n).unwrap();
            for p in [1.0, 1.5, 2.0, 3.0] {
                let bound = (n as f64 - 1.0) * (n as f64).powf(1.0 - 2.0 / p);
                let v = brute_force_lambda(&g, p, 1e-3).unwrap();
                assert!(v <= bound + 1e-12);
                assert!(v >= bound - 1e-3);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(brute_force_lambda(&Graph::complete(7).unwrap(), 2.0, 1e-3).is_err());
        assert!(brute_force_lambda(&Graph::complete(3).unwrap(), 0.5, 1e-3).is_err());
        assert_eq!(brute_force_lambda(&Graph::empty(3).unwrap(), 2.0, 1e-3).unwrap(), 0.0);
    }
}
