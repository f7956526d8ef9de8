use crate::error::{invalid, Result};
use crate::poly::{ord_p_int, IntPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// One edge of the lower convex hull of `{(i, ord_p(a_i))}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub slope: BigRational,
    pub length: usize,
}

/// Newton polygon of an integer polynomial at `p`. Slopes are taken on the
/// points `(i, ord_p(a_i))`; a segment of slope `s` and length `l` accounts
/// for `l` roots of valuation `-s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub prime: u64,
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Root valuations with multiplicities, in increasing order of slope
    /// (so decreasing valuation).
    pub fn root_valuations(&self) -> Vec<(BigRational, usize)> {
        self.segments
            .iter()
            .map(|s| (-s.slope.clone(), s.length))
            .collect()
    }

    pub fn total_length(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum()
    }

    /// Some root has a valuation outside `Z`, which forces ramification.
    pub fn has_fractional_slope(&self) -> bool {
        self.segments.iter().any(|s| !s.slope.denom().is_one())
    }

    /// Number of roots with negative valuation (non-integral roots).
    pub fn nonintegral_roots(&self) -> usize {
        self.segments
            .iter()
            .filter(|s| s.slope.is_positive())
            .map(|s| s.length)
            .sum()
    }
}

pub fn newton_polygon(f: &IntPoly, p: u64) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return invalid("Newton polygon of the zero polynomial");
    }
    if f.constant_term() == BigInt::from(0) {
        return invalid("Newton polygon needs a nonzero constant term");
    }
    let pb = BigInt::from(p);
    let points: Vec<(i64, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| *c != &BigInt::from(0))
        .map(|(i, c)| Ok((i as i64, ord_p_int(c, &pb)? as i64)))
        .collect::<Result<_>>()?;

    // monotone chain, lower hull
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| Segment {
            slope: BigRational::new(BigInt::from(w[1].1 - w[0].1), BigInt::from(w[1].0 - w[0].0)),
            length: (w[1].0 - w[0].0) as usize,
        })
        .collect();
    Ok(NewtonPolygon { prime: p, segments })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vals(c: &[i64], p: u64) -> Vec<(BigRational, usize)> {
        newton_polygon(&IntPoly::from_i64s(c), p)
            .unwrap()
            .root_valuations()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn polygon_examples() {
        assert_eq!(vals(&[-2, 0, 1], 2), vec![(q(1, 2), 2)]);
        assert_eq!(vals(&[-1, -1, 1], 5), vec![(q(0, 1), 2)]);
        assert_eq!(vals(&[2, 1, 1], 2), vec![(q(1, 1), 1), (q(0, 1), 1)]);
        assert!(newton_polygon(&IntPoly::from_i64s(&[0, 1]), 2).is_err());
    }

    #[test]
    fn segment_lengths_are_multiples_of_denominators() {
        // 8x^3 + 2 at p = 2: one slope 2/3
        let poly = newton_polygon(&IntPoly::from_i64s(&[2, 0, 0, 8]), 2).unwrap();
        assert_eq!(poly.segments.len(), 1);
        assert_eq!(poly.segments[0].slope, q(2, 3));
        assert_eq!(poly.nonintegral_roots(), 3);
        for s in &poly.segments {
            assert_eq!(s.length % s.slope.denom().to_string().parse::<usize>().unwrap(), 0);
        }
    }
}
