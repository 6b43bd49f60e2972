//! Dense exact linear algebra over [`Rational`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::rational::{Rational, Vector};

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// columns. Zero rows end up at the bottom.
pub fn rref(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut().skip(c) {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(vectors: &[Vector]) -> usize {
    let mut rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.to_vec()).collect();
    rref(&mut rows).len()
}

/// Determinant of a square matrix given by rows.
pub fn determinant(rows: &[Vector]) -> Rational {
    let n = rows.len();
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|v| v.to_vec()).collect();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Coefficients `c` with `sum_k c_k basis[k] = target`, or `None` when the
/// target is outside the span. The basis vectors must be linearly independent.
pub fn coordinates_in(basis: &[Vector], target: &Vector) -> Option<Vec<Rational>> {
    let k = basis.len();
    let dim = target.dim();
    // Augmented system: one row per ambient coordinate, one column per basis vector.
    let mut rows: Vec<Vec<Rational>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.contains(&k) || pivots.len() != k {
        return None;
    }
    Some((0..k).map(|r| rows[r][k].clone()).collect())
}

/// Solves the square system `a x = b`; `None` when `a` is singular.
pub fn solve(a: &[Vector], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.to_vec();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    Some(rows.into_iter().map(|r| r[n].clone()).collect())
}

/// Smallest positive integer multiple of `v` with coprime integer entries.
/// The sign is preserved, so the result is a positive rescaling of `v`.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return scaled;
    }
    scaled.into_iter().map(|x| x / &g).collect()
}

/// Determinant of a small integer matrix by fraction-free Bareiss elimination.
/// Runs in `i128` and falls back to big integers on overflow.
pub fn integer_determinant(rows: &[&[BigInt]]) -> BigInt {
    let small: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().map(i128::from)).collect())
        .collect();
    if let Some(mut m) = small {
        if let Some(d) = bareiss_i128(&mut m) {
            return BigInt::from(d);
        }
    }
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.to_vec()).collect();
    bareiss_big(&mut m)
}

pub(crate) fn bareiss_i128(m: &mut [Vec<i128>]) -> Option<i128> {
    let n = m.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return Some(0);
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[k][k].checked_mul(m[i][j])?;
                let b = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
        }
        prev = m[k][k];
    }
    if n == 0 {
        return Some(1);
    }
    m[n - 1][n - 1].checked_mul(sign)
}

fn bareiss_big(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// For `d` integer rows of length `d + 1`, the vector of signed maximal minors.
/// It is orthogonal to every row and is zero iff the rows are dependent.
pub fn integer_cross_product(rows: &[&[BigInt]]) -> Vec<BigInt> {
    let d = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == d + 1));
    (0..=d)
        .map(|skip| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != skip)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let refs: Vec<&[BigInt]> = minor.iter().map(Vec::as_slice).collect();
            let det = integer_determinant(&refs);
            if skip % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::{int, ratio};

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn rank_of_hexagon_differences() {
        // Differences of the points +-3(e_{i+1} - e_i) in R^3 span H_0.
        let pts = [[-3, 3, 0], [0, -3, 3], [3, 0, -3]];
        let mut diffs = Vec::new();
        let all: Vec<Vector> = pts
            .iter()
            .flat_map(|p| [Vector::from_ints(p), Vector::from_ints(p).neg()])
            .collect();
        for p in &all[1..] {
            diffs.push(p.sub(&all[0]));
        }
        assert_eq!(rank(&diffs), 2);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = [
            Vector::from_ints(&[2, -1, 0]),
            Vector::from_ints(&[1, 3, 4]),
            Vector::from_ints(&[0, 5, -2]),
        ];
        // 2*(3*-2 - 4*5) - (-1)*(1*-2 - 0) + 0 = -52 - 2
        assert_eq!(determinant(&m), int(-54));
        let b = big(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        let refs: Vec<&[BigInt]> = b.iter().map(Vec::as_slice).collect();
        assert_eq!(integer_determinant(&refs), BigInt::from(-54));
    }

    #[test]
    fn bareiss_overflow_falls_back_to_big_integers() {
        let x = i64::MAX / 3;
        let b = big(&[&[x, 1, 0], &[1, x, 1], &[0, 1, x]]);
        let refs: Vec<&[BigInt]> = b.iter().map(Vec::as_slice).collect();
        let xb = BigInt::from(x);
        let expected = &xb * &xb * &xb - &xb - &xb;
        assert_eq!(integer_determinant(&refs), expected);
    }

    #[test]
    fn cross_product_is_orthogonal() {
        let b = big(&[&[1, 2, 3, 1], &[0, -1, 4, 1], &[5, 0, 1, 1]]);
        let refs: Vec<&[BigInt]> = b.iter().map(Vec::as_slice).collect();
        let w = integer_cross_product(&refs);
        for r in &b {
            let dot: BigInt = r.iter().zip(&w).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        assert!(w.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn solve_and_coordinates() {
        let a = [Vector::from_ints(&[1, 1]), Vector::from_ints(&[1, -1])];
        assert_eq!(solve(&a, &[int(3), int(1)]).unwrap(), vec![int(2), int(1)]);
        let basis = [
            Vector::from_ints(&[1, 0, -1]),
            Vector::from_ints(&[0, 1, -1]),
        ];
        let t = Vector::new(vec![ratio(1, 2), int(2), ratio(-5, 2)]);
        assert_eq!(
            coordinates_in(&basis, &t).unwrap(),
            vec![ratio(1, 2), int(2)]
        );
        assert!(coordinates_in(&basis, &Vector::from_ints(&[1, 1, 1])).is_none());
    }

    #[test]
    fn primitive_vector_keeps_sign() {
        let v = [ratio(-2, 3), ratio(4, 9), int(0)];
        let p = primitive_integer_vector(&v);
        assert_eq!(p, vec![BigInt::from(-3), BigInt::from(2), BigInt::from(0)]);
    }
}
