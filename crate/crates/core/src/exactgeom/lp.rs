//! Exact feasibility for `{x >= 0 : A x = b}` by phase-one simplex.
//!
//! Dense tableau with Bland's rule, so it terminates on degenerate instances.

use num_traits::{Signed, Zero};

use super::rational::Rational;

/// Returns a nonnegative solution of `a x = b`, or `None` if there is none.
///
/// `a` is given by rows; every row must have the same length.
pub fn find_feasible(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    debug_assert_eq!(m, b.len());
    if m == 0 {
        return Some(vec![Rational::zero(); n]);
    }
    // Columns: n structural variables, m artificials, then the right-hand side.
    let width = n + m + 1;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut t = Vec::with_capacity(width);
        t.extend(row.iter().map(|x| if flip { -x } else { x.clone() }));
        t.extend((0..m).map(|k| {
            if k == i {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        }));
        t.push(if flip { -rhs } else { rhs.clone() });
        tab.push(t);
    }
    // Reduced costs of "minimize the sum of artificials".
    let mut cost = vec![Rational::zero(); width];
    for row in &tab {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[width - 1] / &row[enter];
            let better = match &leave {
                None => true,
                Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero.
        let (r, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tab, &mut cost, r, enter);
        basis[r] = enter;
    }

    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = tab[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], r: usize, c: usize) {
    let inv = tab[r][c].recip();
    for x in tab[r].iter_mut() {
        if !x.is_zero() {
            *x *= &inv;
        }
    }
    let pivot_row = tab[r].clone();
    let eliminate = |row: &mut Vec<Rational>| {
        let f = row[c].clone();
        if f.is_zero() {
            return;
        }
        for (x, p) in row.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
    };
    for (i, row) in tab.iter_mut().enumerate() {
        if i != r {
            eliminate(row);
        }
    }
    let mut cost_row = cost.to_vec();
    eliminate(&mut cost_row);
    cost.clone_from_slice(&cost_row);
}
