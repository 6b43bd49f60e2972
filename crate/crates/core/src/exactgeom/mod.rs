//! Exact rational geometry: linear algebra, hulls, volumes and transport.

mod hull;
pub mod linalg;
pub mod lp;
mod rational;
mod transport;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

pub use hull::{
    affine_dimension, extreme_points, facet_enumeration, polytope_contains, FacetDescription,
    Hyperplane, PointConfiguration,
};
pub use rational::{
    format_rational, int, parse_rational, ratio, rational_string, rational_strings,
    ParseRationalError, Rational, Vector,
};
pub use transport::min_cost_transport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("all points coincide; the hull has no facets")]
    DegenerateInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point configuration is empty")]
    EmptyConfiguration,
    #[error("duplicate label at position {index}")]
    DuplicateLabel { index: usize },
    #[error("basis vectors are linearly dependent")]
    NotABasis,
    #[error("supply does not sum to zero")]
    UnbalancedSupply,
}

/// Volume of `Conv(0, rays)` measured in the coordinates of `basis`, i.e.
/// `|det M| / d!` where the rows of `M` are the rays written in the basis.
pub fn cone_simplex_volume(rays: &[Vector], basis: &[Vector]) -> Result<Rational, GeomError> {
    let d = basis.len();
    if rays.len() != d {
        return Err(GeomError::DimensionMismatch {
            expected: d,
            found: rays.len(),
        });
    }
    if let Some(first) = basis.first() {
        if let Some(bad) = basis.iter().chain(rays).find(|v| v.dim() != first.dim()) {
            return Err(GeomError::DimensionMismatch {
                expected: first.dim(),
                found: bad.dim(),
            });
        }
    }
    if linalg::rank(basis) != d {
        return Err(GeomError::NotABasis);
    }
    let rows = rays
        .iter()
        .map(|r| linalg::coordinates_in(basis, r).map(Vector::new))
        .collect::<Option<Vec<_>>>()
        .ok_or(GeomError::DimensionMismatch {
            expected: d,
            found: d + 1,
        })?;
    let factorial: BigInt = (1..=d).map(BigInt::from).product();
    Ok(linalg::determinant(&rows).abs() / Rational::from_integer(factorial))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_triangle() {
        let basis = [Vector::unit(2, 0), Vector::unit(2, 1)];
        let rays = [Vector::from_ints(&[1, 0]), Vector::from_ints(&[0, 1])];
        assert_eq!(cone_simplex_volume(&rays, &basis).unwrap(), ratio(1, 2));
        let rays = [Vector::from_ints(&[1, 0]), Vector::from_ints(&[1, 1])];
        assert_eq!(cone_simplex_volume(&rays, &basis).unwrap(), ratio(1, 2));
    }

    #[test]
    fn basis_itself_has_volume_one_over_d_factorial() {
        for d in 1..=5 {
            let basis: Vec<Vector> = (0..d).map(|i| Vector::unit(d, i)).collect();
            let fact: i64 = (1..=d as i64).product();
            assert_eq!(cone_simplex_volume(&basis, &basis).unwrap(), ratio(1, fact));
        }
    }

    #[test]
    fn volume_in_a_skew_basis_of_a_subspace() {
        // delta basis of H_0 in R^3: delta_i = e_i - u/3
        let delta = |i: usize| {
            let mut v = vec![ratio(-1, 3); 3];
            v[i] = ratio(2, 3);
            Vector::new(v)
        };
        let basis = [delta(0), delta(1)];
        let rays = [delta(0), delta(2).neg()];
        // -delta_3 = delta_1 + delta_2 -> rows (1,0), (1,1)
        assert_eq!(cone_simplex_volume(&rays, &basis).unwrap(), ratio(1, 2));
    }

    #[test]
    fn mismatched_inputs() {
        let basis = [Vector::unit(2, 0), Vector::unit(2, 1)];
        assert!(matches!(
            cone_simplex_volume(&[Vector::unit(2, 0)], &basis),
            Err(GeomError::DimensionMismatch { .. })
        ));
        let dependent = [Vector::unit(2, 0), Vector::unit(2, 0)];
        assert_eq!(
            cone_simplex_volume(&dependent, &dependent),
            Err(GeomError::NotABasis)
        );
    }
}
