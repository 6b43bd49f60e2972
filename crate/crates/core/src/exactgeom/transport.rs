//! Exact optimal transport on a finite metric space.

use num_traits::{Signed, Zero};

use super::rational::{Rational, Vector};
use super::GeomError;

/// Cost of moving the positive part of `supply` onto its negative part, where
/// one unit moved from `x` to `y` costs `cost[x][y]`. For a metric cost this
/// is the Kantorovich-Rubinstein norm of `supply`.
///
/// Successive shortest paths over the bipartite residual network; shortest
/// paths by Bellman-Ford since reverse arcs carry negative costs.
pub fn min_cost_transport(supply: &Vector, cost: &[Vec<Rational>]) -> Result<Rational, GeomError> {
    let n = supply.dim();
    if cost.len() != n || cost.iter().any(|row| row.len() != n) {
        return Err(GeomError::DimensionMismatch {
            expected: n,
            found: cost.len(),
        });
    }
    if !supply.sum().is_zero() {
        return Err(GeomError::UnbalancedSupply);
    }
    let sources: Vec<usize> = (0..n).filter(|&i| supply[i].is_positive()).collect();
    let sinks: Vec<usize> = (0..n).filter(|&i| supply[i].is_negative()).collect();
    let mut left: Vec<Rational> = sources.iter().map(|&i| supply[i].clone()).collect();
    let mut need: Vec<Rational> = sinks.iter().map(|&j| -&supply[j]).collect();
    let mut flow = vec![vec![Rational::zero(); sinks.len()]; sources.len()];
    let c = |s: usize, t: usize| &cost[sources[s]][sinks[t]];

    while left.iter().any(Signed::is_positive) {
        // Nodes 0..S are sources, S..S+T are sinks.
        let ns = sources.len();
        let total = ns + sinks.len();
        let mut dist: Vec<Option<Rational>> = (0..total)
            .map(|v| (v < ns && left[v].is_positive()).then(Rational::zero))
            .collect();
        let mut pred: Vec<Option<usize>> = vec![None; total];
        for _ in 0..total {
            let mut changed = false;
            for s in 0..ns {
                for t in 0..sinks.len() {
                    if let Some(ds) = dist[s].clone() {
                        let cand = ds + c(s, t);
                        if dist[ns + t].as_ref().is_none_or(|dt| cand < *dt) {
                            dist[ns + t] = Some(cand);
                            pred[ns + t] = Some(s);
                            changed = true;
                        }
                    }
                    if flow[s][t].is_positive() {
                        if let Some(dt) = dist[ns + t].clone() {
                            let cand = dt - c(s, t);
                            if dist[s].as_ref().is_none_or(|d| cand < *d) {
                                dist[s] = Some(cand);
                                pred[s] = Some(ns + t);
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let target = (0..sinks.len())
            .filter(|&t| need[t].is_positive())
            .filter_map(|t| dist[ns + t].clone().map(|d| (d, t)))
            .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)))
            .map(|(_, t)| t)
            .expect("complete bipartite network always has a path");

        // Walk back to the originating source, collecting arcs.
        let mut arcs = Vec::new();
        let mut v = ns + target;
        while let Some(p) = pred[v] {
            arcs.push((p, v));
            v = p;
            if v < ns && pred[v].is_none() {
                break;
            }
        }
        let origin = v;
        let mut amount = left[origin].clone().min(need[target].clone());
        for &(from, to) in &arcs {
            if from >= ns {
                // reverse arc sink -> source
                amount = amount.min(flow[to][from - ns].clone());
            }
        }
        for &(from, to) in &arcs {
            if from < ns {
                flow[from][to - ns] += &amount;
            } else {
                flow[to][from - ns] -= &amount;
            }
        }
        left[origin] -= &amount;
        need[target] -= &amount;
    }

    let mut total = Rational::zero();
    for (s, row) in flow.iter().enumerate() {
        for (t, f) in row.iter().enumerate() {
            if !f.is_zero() {
                total += f * c(s, t);
            }
        }
    }
    Ok(total)
}
