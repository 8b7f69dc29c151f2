//! h*-polynomials, degree and the volume relation for degree-2 polytopes.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice_count::{
    count_interior_points_in_dilate, count_points_in_dilate, ehrhart_vector,
};
use crate::polytope::{binomial, LatticePolytope};

/// Coefficients `h*_0, ..., h*_n` of the h*-polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HStarPolynomial {
    coeffs: Vec<BigInt>,
}

impl HStarPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        HStarPolynomial { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        HStarPolynomial {
            coeffs: c.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    /// All `n + 1` coefficients, trailing zeros included.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Largest index with a nonzero coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Sum of coefficients; the normalized volume.
    pub fn volume(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn leading(&self) -> &BigInt {
        &self.coeffs[self.degree()]
    }

    /// Coefficients up to the degree, dropping trailing zeros.
    pub fn trimmed(&self) -> &[BigInt] {
        &self.coeffs[..=self.degree()]
    }
}

impl fmt::Display for HStarPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Binomial transform `h*_j = Σ_k (-1)^(j-k) C(n+1, j-k) L(k)` for
/// `j = 0..=n`, where `n + 1 = counts.len()`.
pub fn h_star_from_counts(counts: &[u64]) -> Vec<BigInt> {
    let n1 = counts.len() as u64;
    (0..counts.len())
        .map(|j| {
            (0..=j).fold(BigInt::zero(), |acc, k| {
                let term = binomial(n1, (j - k) as u64) * BigInt::from(counts[k]);
                if (j - k) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect()
}

/// h*-polynomial of a full-dimensional polytope.
///
/// The result is cross-checked against the triangulated volume and an
/// interior-point count of the appropriate dilate; a mismatch is reported as
/// [`Error::Internal`].
pub fn h_star(p: &LatticePolytope) -> Result<HStarPolynomial> {
    let ev = ehrhart_vector(p)?;
    let h = HStarPolynomial::new(h_star_from_counts(&ev.counts));
    let n = p.ambient_dim();

    if !h.coeffs[0].is_one() {
        return Err(Error::Internal(format!("h*_0 = {} for {h}", h.coeffs[0])));
    }
    if h.coeffs.iter().any(Signed::is_negative) {
        return Err(Error::Internal(format!("negative h* coefficient in {h}")));
    }
    let vol = p.normalized_volume()?;
    if h.volume() != vol {
        return Err(Error::Internal(format!(
            "h* = {h} sums to {} but the triangulation gives {vol}",
            h.volume()
        )));
    }
    let d = h.degree();
    let leading = count_interior_points_in_dilate(p, (n + 1 - d) as u64)?;
    if *h.leading() != BigInt::from(leading) {
        return Err(Error::Internal(format!(
            "leading coefficient {} of {h} differs from {leading} interior points of {}P",
            h.leading(),
            n + 1 - d
        )));
    }
    Ok(h)
}

/// h*-polynomial of any polytope, computed in lattice coordinates on its
/// affine hull. A single point has h* = 1.
pub fn h_star_in_affine_hull(p: &LatticePolytope) -> Result<HStarPolynomial> {
    match p.affine_dim() {
        0 => Ok(HStarPolynomial::from_i64s(&[1])),
        _ if p.is_full_dimensional() => h_star(p),
        _ => h_star(&p.project_to_affine_hull()?.0),
    }
}

/// Degree of the h*-polynomial.
pub fn degree(p: &LatticePolytope) -> Result<usize> {
    Ok(h_star(p)?.degree())
}

/// Smallest `m >= 1` such that `mP` has an interior lattice point, searched up
/// to `n + 1`.
pub fn codegree(p: &LatticePolytope) -> Result<Option<usize>> {
    p.require_full_dimensional()?;
    let n = p.ambient_dim();
    for m in 1..=n + 1 {
        if count_interior_points_in_dilate(p, m as u64)? > 0 {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Degree computed as `n + 1 - codegree`, independently of the h* transform.
pub fn degree_via_interior(p: &LatticePolytope) -> Result<usize> {
    let n = p.ambient_dim();
    Ok(codegree(p)?.map_or(0, |m| n + 1 - m))
}

/// Inputs and outcome of `Vol(P) = b + i - n` for a degree-2 polytope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VolumePickRecord {
    pub n: usize,
    pub b: u64,
    pub i: u64,
    #[serde(serialize_with = "crate::checks::serialize_bigint")]
    pub vol: BigInt,
    pub holds: bool,
}

/// Checks `Vol(P) = b + i - n` with `b = |P ∩ Z^n|` and
/// `i = |((n-1)P)° ∩ Z^n|`, both counted directly.
pub fn vpick_check(p: &LatticePolytope) -> Result<VolumePickRecord> {
    let d = degree(p)?;
    if d != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: d,
        });
    }
    let n = p.ambient_dim();
    let b = count_points_in_dilate(p, 1)?;
    let i = count_interior_points_in_dilate(p, (n - 1) as u64)?;
    let vol = p.normalized_volume()?;
    let holds = vol == BigInt::from(b) + BigInt::from(i) - BigInt::from(n);
    Ok(VolumePickRecord {
        n,
        b,
        i,
        vol,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::LatticePoint;

    fn poly(raw: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::hull(
            &raw.iter()
                .map(|c| LatticePoint::from_i64s(c))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn cube() -> LatticePolytope {
        poly(&[
            &[0, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[1, 1, 0],
            &[1, 0, 1],
            &[0, 1, 1],
            &[1, 1, 1],
        ])
    }

    fn box221() -> LatticePolytope {
        poly(&[
            &[0, 0, 0],
            &[2, 0, 0],
            &[0, 2, 0],
            &[0, 0, 1],
            &[2, 2, 0],
            &[2, 0, 1],
            &[0, 2, 1],
            &[2, 2, 1],
        ])
    }

    #[test]
    fn transform_of_known_counts() {
        let h = h_star_from_counts(&[1, 10, 28]);
        assert_eq!(h, vec![BigInt::from(1), BigInt::from(7), BigInt::from(1)]);
        let h = h_star_from_counts(&[1, 8, 27, 64]);
        assert_eq!(h, [1, 4, 1, 0].map(BigInt::from).to_vec());
    }

    #[test]
    fn three_simplex() {
        let t = poly(&[&[0, 0], &[3, 0], &[0, 3]]);
        let h = h_star(&t).unwrap();
        assert_eq!(h, HStarPolynomial::from_i64s(&[1, 7, 1]));
        assert_eq!(h.degree(), 2);
        assert_eq!(h.volume(), BigInt::from(9));
        assert_eq!(degree_via_interior(&t).unwrap(), 2);
    }

    #[test]
    fn cube_and_box() {
        let h = h_star(&cube()).unwrap();
        assert_eq!(h.to_string(), "1 4 1 0");
        assert_eq!(h.trimmed().len(), 3);
        assert_eq!(degree_via_interior(&cube()).unwrap(), 2);
        assert_eq!(
            h_star(&box221()).unwrap(),
            HStarPolynomial::from_i64s(&[1, 14, 9, 0])
        );
    }

    #[test]
    fn basic_simplices_have_degree_zero() {
        let d2 = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(h_star(&d2).unwrap(), HStarPolynomial::from_i64s(&[1, 0, 0]));
        assert_eq!(degree_via_interior(&d2).unwrap(), 0);
        assert_eq!(codegree(&d2).unwrap(), Some(3));
    }

    #[test]
    fn two_simplex_doubled_has_degree_one() {
        let t = poly(&[&[0, 0], &[2, 0], &[0, 2]]);
        assert_eq!(h_star(&t).unwrap(), HStarPolynomial::from_i64s(&[1, 3, 0]));
        assert_eq!(degree(&t).unwrap(), 1);
    }

    #[test]
    fn volume_pick_records() {
        let r = vpick_check(&poly(&[&[0, 0], &[3, 0], &[0, 3]])).unwrap();
        assert_eq!(
            (r.b, r.i, r.vol.clone(), r.holds),
            (10, 1, BigInt::from(9), true)
        );
        let r = vpick_check(&cube()).unwrap();
        assert_eq!(
            (r.b, r.i, r.vol.clone(), r.holds),
            (8, 1, BigInt::from(6), true)
        );
        let r = vpick_check(&box221()).unwrap();
        assert_eq!(
            (r.b, r.i, r.vol.clone(), r.holds),
            (18, 9, BigInt::from(24), true)
        );
    }

    #[test]
    fn vpick_requires_degree_two() {
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(
            vpick_check(&sq).unwrap_err(),
            Error::DegreeMismatch {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn affine_hull_h_star() {
        let seg = poly(&[&[0, 0, 0], &[2, 2, 0]]);
        assert_eq!(
            h_star_in_affine_hull(&seg).unwrap(),
            HStarPolynomial::from_i64s(&[1, 1])
        );
        let pt = poly(&[&[4, 4]]);
        assert_eq!(
            h_star_in_affine_hull(&pt).unwrap(),
            HStarPolynomial::from_i64s(&[1])
        );
    }
}
