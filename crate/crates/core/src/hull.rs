//! Incremental convex hull of a full-dimensional integer point set.
//!
//! Points are inserted one at a time. The current facet list is updated as in
//! the double description method: facets that see the new point are dropped,
//! and every adjacent (visible, hidden) facet pair contributes the hyperplane
//! through their common ridge and the new point. Adjacency uses the
//! combinatorial test on incidence sets, which is exact for non-simplicial
//! hulls as well.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{dot, gcd_all, rank, rational_nullspace};

#[derive(Debug, Clone)]
pub(crate) struct RawFacet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
    /// Indices of all input points lying on the facet hyperplane, sorted.
    pub tight: Vec<usize>,
}

#[derive(Debug, Clone)]
pub(crate) struct RawHull {
    /// Indices into the input slice, sorted.
    pub vertices: Vec<usize>,
    pub facets: Vec<RawFacet>,
}

fn diff(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn insert_sorted(v: &mut Vec<usize>, x: usize) {
    if let Err(pos) = v.binary_search(&x) {
        v.insert(pos, x);
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    intersect(small, big).len() == small.len()
}

/// Normalizes `(normal, offset)` so that the normal is primitive.
fn reduce(normal: Vec<BigInt>, offset: BigInt) -> (Vec<BigInt>, BigInt) {
    let g = gcd_all(&normal);
    if g.is_zero() || g == BigInt::from(1) {
        return (normal, offset);
    }
    let normal = normal.iter().map(|x| x / &g).collect();
    (normal, offset / g)
}

/// Computes the hull of `points`, which must be pairwise distinct and span
/// their ambient space affinely. Dimension must be at least 1.
pub(crate) fn full_dimensional_hull(points: &[Vec<BigInt>]) -> RawHull {
    let d = points[0].len();
    if d == 1 {
        return hull_1d(points);
    }

    // initial simplex, greedily
    let mut simplex = vec![0usize];
    let mut diffs: Vec<Vec<BigInt>> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        if simplex.len() == d + 1 {
            break;
        }
        let v = diff(p, &points[0]);
        diffs.push(v);
        if rank(&diffs) == diffs.len() {
            simplex.push(i);
        } else {
            diffs.pop();
        }
    }
    assert_eq!(simplex.len(), d + 1, "input is not full-dimensional");

    let mut facets: Vec<RawFacet> = Vec::with_capacity(d + 1);
    for &omit in &simplex {
        let on: Vec<usize> = simplex.iter().copied().filter(|&x| x != omit).collect();
        let base = &points[on[0]];
        let rows: Vec<Vec<BigInt>> = on[1..].iter().map(|&k| diff(&points[k], base)).collect();
        let mut normal = rational_nullspace(&rows, d)
            .pop()
            .expect("hyperplane normal");
        let mut offset = dot(&normal, base);
        if dot(&normal, &points[omit]) > offset {
            normal.iter_mut().for_each(|x| *x = -x.clone());
            offset = -offset;
        }
        let mut tight = on;
        tight.sort_unstable();
        facets.push(RawFacet {
            normal,
            offset,
            tight,
        });
    }

    for (idx, p) in points.iter().enumerate() {
        if simplex.contains(&idx) {
            continue;
        }
        let vals: Vec<BigInt> = facets
            .iter()
            .map(|f| dot(&f.normal, p) - &f.offset)
            .collect();
        if vals.iter().all(|v| !v.is_positive()) {
            for (f, v) in facets.iter_mut().zip(&vals) {
                if v.is_zero() {
                    insert_sorted(&mut f.tight, idx);
                }
            }
            continue;
        }

        let mut created: Vec<RawFacet> = Vec::new();
        for (fi, fv) in vals.iter().enumerate() {
            if !fv.is_positive() {
                continue;
            }
            for (gi, gv) in vals.iter().enumerate() {
                if !gv.is_negative() {
                    continue;
                }
                let ridge = intersect(&facets[fi].tight, &facets[gi].tight);
                if ridge.len() + 1 < d {
                    continue;
                }
                let blocked = facets
                    .iter()
                    .enumerate()
                    .any(|(hi, h)| hi != fi && hi != gi && is_subset(&ridge, &h.tight));
                if blocked {
                    continue;
                }
                // positive combination vanishing at p
                let (f, g) = (&facets[fi], &facets[gi]);
                let neg_gv = -gv;
                let normal: Vec<BigInt> = f
                    .normal
                    .iter()
                    .zip(&g.normal)
                    .map(|(a, b)| fv * b + &neg_gv * a)
                    .collect();
                let offset = fv * &g.offset + &neg_gv * &f.offset;
                let (normal, offset) = reduce(normal, offset);
                if created.iter().any(|c| c.normal == normal) {
                    continue;
                }
                let mut tight = ridge;
                insert_sorted(&mut tight, idx);
                created.push(RawFacet {
                    normal,
                    offset,
                    tight,
                });
            }
        }

        let mut next: Vec<RawFacet> = Vec::with_capacity(facets.len() + created.len());
        for (mut f, v) in facets.into_iter().zip(&vals) {
            if v.is_positive() {
                continue;
            }
            if v.is_zero() {
                insert_sorted(&mut f.tight, idx);
            }
            next.push(f);
        }
        next.extend(created);
        facets = next;
    }

    // a point is a vertex iff the facets through it meet in that point alone
    let mut vertices = Vec::new();
    for idx in 0..points.len() {
        let mut common: Option<Vec<usize>> = None;
        for f in facets
            .iter()
            .filter(|f| f.tight.binary_search(&idx).is_ok())
        {
            common = Some(match common {
                None => f.tight.clone(),
                Some(c) => intersect(&c, &f.tight),
            });
        }
        if let Some(c) = common {
            if c.len() == 1 {
                vertices.push(idx);
            }
        }
    }
    RawHull { vertices, facets }
}

fn hull_1d(points: &[Vec<BigInt>]) -> RawHull {
    let lo = (0..points.len())
        .min_by(|&a, &b| points[a][0].cmp(&points[b][0]))
        .unwrap();
    let hi = (0..points.len())
        .max_by(|&a, &b| points[a][0].cmp(&points[b][0]))
        .unwrap();
    let mut vertices = vec![lo, hi];
    vertices.sort_unstable();
    RawHull {
        vertices,
        facets: vec![
            RawFacet {
                normal: vec![BigInt::from(1)],
                offset: points[hi][0].clone(),
                tight: vec![hi],
            },
            RawFacet {
                normal: vec![BigInt::from(-1)],
                offset: -points[lo][0].clone(),
                tight: vec![lo],
            },
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(raw: &[&[i64]]) -> Vec<Vec<BigInt>> {
        raw.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn square_with_interior_and_edge_points() {
        let p = pts(&[&[1, 1], &[0, 0], &[2, 0], &[1, 0], &[0, 2], &[2, 2]]);
        let h = full_dimensional_hull(&p);
        assert_eq!(h.vertices, vec![1, 2, 4, 5]);
        assert_eq!(h.facets.len(), 4);
    }

    #[test]
    fn cube_facets_are_quadrilaterals() {
        let mut p = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    p.push(vec![BigInt::from(x), BigInt::from(y), BigInt::from(z)]);
                }
            }
        }
        let h = full_dimensional_hull(&p);
        assert_eq!(h.vertices.len(), 8);
        assert_eq!(h.facets.len(), 6);
        assert!(h.facets.iter().all(|f| f.tight.len() == 4));
    }

    #[test]
    fn segment() {
        let h = full_dimensional_hull(&pts(&[&[3], &[-1], &[0]]));
        assert_eq!(h.vertices, vec![0, 1]);
    }
}
