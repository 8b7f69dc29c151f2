//! Named polytopes and seeded random generators.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::point::LatticePoint;
use crate::polytope::LatticePolytope;

/// Rejection attempts before [`random_polytope`] gives up.
pub const DEFAULT_RETRY_LIMIT: usize = 1000;

/// `conv(0, e_1, ..., e_n)`, the unimodular simplex.
pub fn basic_simplex(n: usize) -> Result<LatticePolytope> {
    if n < 1 {
        return Err(Error::InvalidArgument("basic simplex needs n >= 1".into()));
    }
    let mut pts = vec![LatticePoint::origin(n)];
    pts.extend((0..n).map(|i| LatticePoint::unit(n, i)));
    LatticePolytope::hull(&pts)
}

/// The `k`-fold `kP`.
pub fn dilate(p: &LatticePolytope, k: u64) -> Result<LatticePolytope> {
    if k < 1 {
        return Err(Error::InvalidArgument(
            "dilation factor must be at least 1".into(),
        ));
    }
    let k = BigInt::from(k);
    Ok(LatticePolytope::from_vertices_unchecked(
        p.vertices().iter().map(|v| v.scaled(&k)).collect(),
    ))
}

/// Standard pyramid `conv((P, 0), e_{n+1})`.
pub fn pyramid(p: &LatticePolytope) -> Result<LatticePolytope> {
    p.require_full_dimensional()?;
    let n = p.ambient_dim();
    let mut pts: Vec<LatticePoint> = p
        .vertices()
        .iter()
        .map(|v| v.lifted(BigInt::zero()))
        .collect();
    pts.push(LatticePoint::unit(n + 1, n));
    LatticePolytope::hull(&pts)
}

/// The `k`-fold iterated standard pyramid; `k = 0` returns a copy of `P`.
pub fn pyramid_k(p: &LatticePolytope, k: usize) -> Result<LatticePolytope> {
    let mut q = p.clone();
    for _ in 0..k {
        q = pyramid(&q)?;
    }
    Ok(q)
}

/// Lawrence prism over the basic simplex with the given heights.
///
/// With `m = heights.len()` the result lives in `R^m` and is
/// `conv(0, h_1 e_1, e_l, e_l + h_l e_1 : l = 2..m)`.
pub fn lawrence_prism(heights: &[u64]) -> Result<LatticePolytope> {
    let m = heights.len();
    if m < 1 {
        return Err(Error::InvalidArgument(
            "at least one height is required".into(),
        ));
    }
    if heights.iter().all(|&h| h == 0) {
        return Err(Error::InvalidArgument("all heights are zero".into()));
    }
    let e1 = LatticePoint::unit(m, 0);
    let mut pts = vec![
        LatticePoint::origin(m),
        e1.scaled(&BigInt::from(heights[0])),
    ];
    for (l, &h) in heights.iter().enumerate().skip(1) {
        let el = LatticePoint::unit(m, l);
        pts.push(&el + &e1.scaled(&BigInt::from(h)));
        pts.push(el);
    }
    LatticePolytope::hull(&pts)
}

/// Non-increasing height vectors of length `m` with the given sum; up to
/// equivalence these are all Lawrence prisms of dimension `m` and volume
/// `total`.
pub fn lawrence_heights(m: usize, total: u64) -> Vec<Vec<u64>> {
    fn go(left: usize, total: u64, cap: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if left == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for h in (0..=cap.min(total)).rev() {
            cur.push(h);
            go(left - 1, total - h, h, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, total, total, &mut Vec::new(), &mut out);
    out
}

/// `2Δ₂ = conv((0,0), (2,0), (0,2))`.
pub fn exceptional_2d2() -> LatticePolytope {
    dilate(&basic_simplex(2).expect("n = 2"), 2).expect("k = 2")
}

/// `3Δ₂ = conv((0,0), (3,0), (0,3))`.
pub fn exceptional_3d2() -> LatticePolytope {
    dilate(&basic_simplex(2).expect("n = 2"), 3).expect("k = 3")
}

/// Axis-parallel box `[0, l_1] × ... × [0, l_n]`.
pub fn lattice_box(lengths: &[u64]) -> Result<LatticePolytope> {
    let n = lengths.len();
    let corners = (0..1usize << n)
        .map(|mask| {
            LatticePoint::new(
                (0..n)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            BigInt::from(lengths[i])
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect(),
            )
        })
        .collect::<Vec<_>>();
    LatticePolytope::hull(&corners)
}

/// The unit cube `[0, 1]^n`.
pub fn unit_cube(n: usize) -> Result<LatticePolytope> {
    lattice_box(&vec![1; n])
}

/// Hull of `m` points drawn uniformly from `{0..B}^n`, redrawn until the hull
/// is full-dimensional.
pub fn random_polytope(n: usize, box_size: u64, m: usize, seed: u64) -> Result<LatticePolytope> {
    random_polytope_with_limit(n, box_size, m, seed, DEFAULT_RETRY_LIMIT)
}

pub fn random_polytope_with_limit(
    n: usize,
    box_size: u64,
    m: usize,
    seed: u64,
    retries: usize,
) -> Result<LatticePolytope> {
    if !(1..=4).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "random polytopes support 1 <= n <= 4, got {n}"
        )));
    }
    if !(1..=6).contains(&box_size) {
        return Err(Error::InvalidArgument(format!(
            "box size must be in 1..=6, got {box_size}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retries {
        let pts: Vec<LatticePoint> = (0..m)
            .map(|_| {
                LatticePoint::new(
                    (0..n)
                        .map(|_| BigInt::from(rng.gen_range(0..=box_size)))
                        .collect(),
                )
            })
            .collect();
        if pts.is_empty() {
            break;
        }
        let p = LatticePolytope::hull(&pts)?;
        if p.is_full_dimensional() {
            return Ok(p);
        }
    }
    Err(Error::RetryLimit(retries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehrhart::{degree, h_star, HStarPolynomial};
    use crate::lattice_count::{count_interior_points_in_dilate, count_points_in_dilate};

    #[test]
    fn basic_simplices() {
        let s1 = basic_simplex(1).unwrap();
        assert_eq!(
            s1.vertices(),
            &[LatticePoint::from_i64s(&[0]), LatticePoint::from_i64s(&[1])]
        );
        assert_eq!(
            h_star(&basic_simplex(2).unwrap()).unwrap(),
            HStarPolynomial::from_i64s(&[1, 0, 0])
        );
        let s3 = basic_simplex(3).unwrap();
        assert_eq!(s3.normalized_volume().unwrap(), BigInt::from(1));
        assert_eq!(count_points_in_dilate(&s3, 1).unwrap(), 4);
        assert!(basic_simplex(0).is_err());
    }

    #[test]
    fn dilates() {
        let d2 = basic_simplex(2).unwrap();
        assert_eq!(dilate(&d2, 3).unwrap(), exceptional_3d2());
        assert_eq!(dilate(&d2, 1).unwrap(), d2);
        assert_eq!(
            exceptional_2d2().normalized_volume().unwrap(),
            BigInt::from(4)
        );
        assert!(dilate(&d2, 0).is_err());
    }

    #[test]
    fn pyramid_keeps_h_star() {
        let t = exceptional_3d2();
        let pt = pyramid(&t).unwrap();
        assert_eq!(pt.ambient_dim(), 3);
        assert_eq!(
            h_star(&pt).unwrap().trimmed(),
            h_star(&t).unwrap().trimmed()
        );
    }

    #[test]
    fn pyramid_interior_identity_on_cube() {
        let c = unit_cube(3).unwrap();
        let pc = pyramid(&c).unwrap();
        // n = 3, d = 2: (n+2-d) = 3 for the pyramid, (n+1-d) = 2 for the cube
        assert_eq!(count_interior_points_in_dilate(&pc, 3).unwrap(), 1);
        assert_eq!(count_interior_points_in_dilate(&c, 2).unwrap(), 1);
    }

    #[test]
    fn iterated_pyramid_point_count() {
        let p = pyramid_k(&exceptional_3d2(), 2).unwrap();
        assert_eq!(p.ambient_dim(), 4);
        assert_eq!(count_points_in_dilate(&p, 1).unwrap(), 12);
    }

    #[test]
    fn lawrence_prisms() {
        let sq = lawrence_prism(&[1, 1]).unwrap();
        assert_eq!(sq.vertices().len(), 4);
        assert_eq!(sq.normalized_volume().unwrap(), BigInt::from(2));
        assert_eq!(degree(&sq).unwrap(), 1);

        let tri = lawrence_prism(&[2, 0]).unwrap();
        assert_eq!(tri.vertices().len(), 3);
        assert_eq!(tri.normalized_volume().unwrap(), BigInt::from(2));
        assert_eq!(degree(&tri).unwrap(), 1);

        assert!(lawrence_prism(&[0, 0]).is_err());
        assert_eq!(lawrence_heights(2, 2), vec![vec![2, 0], vec![1, 1]]);
        assert_eq!(lawrence_heights(3, 1), vec![vec![1, 0, 0]]);
    }

    #[test]
    fn exceptional_simplices() {
        let t2 = exceptional_2d2();
        assert_eq!(degree(&t2).unwrap(), 1);
        assert_eq!(count_points_in_dilate(&t2, 1).unwrap(), 6);
        let t3 = exceptional_3d2();
        assert_eq!(degree(&t3).unwrap(), 2);
        assert_eq!(t3.normalized_volume().unwrap(), BigInt::from(9));
        assert_eq!(count_interior_points_in_dilate(&t3, 1).unwrap(), 1);
        for k in 0..=3 {
            assert_eq!(degree(&pyramid_k(&t2, k).unwrap()).unwrap(), 1);
        }
    }

    #[test]
    fn random_is_deterministic_and_full_dimensional() {
        let a = random_polytope(2, 3, 5, 1).unwrap();
        let b = random_polytope(2, 3, 5, 1).unwrap();
        assert_eq!(a, b);
        let c = random_polytope(3, 2, 8, 7).unwrap();
        assert_eq!(c.affine_dim(), 3);
        assert!(random_polytope(5, 2, 8, 0).is_err());
        assert!(random_polytope(2, 7, 8, 0).is_err());
        assert_eq!(
            random_polytope_with_limit(3, 2, 3, 0, 10).unwrap_err(),
            Error::RetryLimit(10)
        );
    }
}
