//! Exhaustive lattice polygons in a box, and seeded 3-polytope corpora.
//!
//! A convex lattice polygon is determined up to translation by its edge
//! vectors taken counterclockwise from the lexicographically least vertex.
//! Those vectors have strictly increasing angles in `(-90°, 270°]`, so the
//! enumerator walks over increasing sequences of primitive directions (each
//! with a positive multiplicity), pruning whenever the partial path leaves
//! the box, and keeps the walks that close at the origin.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_integer::Integer;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::checks::{
    check_deg2, check_remark_bounds, check_scott, check_star_all_faces, check_vpick, Status,
    VerificationReport,
};
use crate::constructions::random_polytope;
use crate::ehrhart::degree;
use crate::equivalence::dedup_classes;
use crate::error::{Error, Result};
use crate::point::LatticePoint;
use crate::polytope::LatticePolytope;

pub const MAX_BOX: u64 = 6;

/// 0 for angles in `(-90°, 90°]`, 1 for `(90°, 270°]`.
fn half(v: (i64, i64)) -> u8 {
    if v.0 > 0 || (v.0 == 0 && v.1 > 0) {
        0
    } else {
        1
    }
}

/// Order of directions by angle in `(-90°, 270°]`.
pub fn angle_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let cross = a.0 * b.1 - a.1 * b.0;
        0.cmp(&cross)
    })
}

/// Primitive vectors with both coordinates in `[-b, b]`, sorted by angle.
fn primitive_directions(b: i64) -> Vec<(i64, i64)> {
    let mut dirs = Vec::new();
    for dx in -b..=b {
        for dy in -b..=b {
            if (dx, dy) != (0, 0) && dx.gcd(&dy) == 1 {
                dirs.push((dx, dy));
            }
        }
    }
    dirs.sort_by(|&a, &b| angle_cmp(a, b));
    dirs
}

/// Counterclockwise edge vectors of a polygon starting at its
/// lexicographically least vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeWalk {
    pub edges: Vec<(i64, i64)>,
}

impl EdgeWalk {
    /// Vertices visited from the origin, shifted so that the least `y` is 0.
    pub fn vertices(&self) -> Vec<(i64, i64)> {
        let mut pts = vec![(0i64, 0i64)];
        for &(dx, dy) in &self.edges[..self.edges.len() - 1] {
            let (x, y) = *pts.last().expect("nonempty");
            pts.push((x + dx, y + dy));
        }
        let ymin = pts.iter().map(|p| p.1).min().expect("nonempty");
        pts.iter().map(|&(x, y)| (x, y - ymin)).collect()
    }

    pub fn polytope(&self) -> Result<LatticePolytope> {
        let pts: Vec<LatticePoint> = self
            .vertices()
            .iter()
            .map(|&(x, y)| LatticePoint::from_i64s(&[x, y]))
            .collect();
        LatticePolytope::hull(&pts)
    }
}

fn check_box(b: u64) -> Result<()> {
    if !(1..=MAX_BOX).contains(&b) {
        return Err(Error::InvalidArgument(format!(
            "box size must be in 1..={MAX_BOX}, got {b}"
        )));
    }
    Ok(())
}

struct Walker<'a> {
    dirs: &'a [(i64, i64)],
    b: i64,
}

impl Walker<'_> {
    fn extend(
        &self,
        edges: &mut Vec<(i64, i64)>,
        pos: (i64, i64),
        ylo: i64,
        yhi: i64,
        next: usize,
        out: &mut Vec<EdgeWalk>,
    ) {
        for d in next..self.dirs.len() {
            let (dx, dy) = self.dirs[d];
            for m in 1..=self.b {
                let p = (pos.0 + m * dx, pos.1 + m * dy);
                let (lo, hi) = (ylo.min(p.1), yhi.max(p.1));
                if p.0 < 0 || p.0 > self.b || hi - lo > self.b {
                    break;
                }
                // the start is the lexicographically least vertex
                if p.0 == 0 && p.1 < 0 {
                    break;
                }
                edges.push((m * dx, m * dy));
                if p == (0, 0) {
                    if edges.len() >= 3 {
                        out.push(EdgeWalk {
                            edges: edges.clone(),
                        });
                    }
                } else {
                    self.extend(edges, p, lo, hi, d + 1, out);
                }
                edges.pop();
            }
        }
    }
}

/// Every closed walk of at least three edges, i.e. every convex lattice
/// polygon fitting in `[0, B]²`, once per translation class.
pub fn polygon_walks(b: u64) -> Result<Vec<EdgeWalk>> {
    check_box(b)?;
    let bi = b as i64;
    let dirs = primitive_directions(bi);
    let walker = Walker { dirs: &dirs, b: bi };
    let starts: Vec<(usize, i64)> = (0..dirs.len())
        .flat_map(|d| (1..=bi).map(move |m| (d, m)))
        .collect();
    let mut walks: Vec<EdgeWalk> = starts
        .par_iter()
        .flat_map_iter(|&(d, m)| {
            let (dx, dy) = dirs[d];
            let p = (m * dx, m * dy);
            let mut out = Vec::new();
            if p.0 >= 0 && p.0 <= bi && p.1.abs() <= bi && !(p.0 == 0 && p.1 < 0) {
                let mut edges = vec![p];
                walker.extend(&mut edges, p, p.1.min(0), p.1.max(0), d + 1, &mut out);
            }
            out
        })
        .collect();
    walks.sort();
    Ok(walks)
}

/// Convex lattice polygons in `[0, B]²`, one per unimodular equivalence
/// class.
pub fn enumerate_polygons(b: u64) -> Result<Vec<LatticePolytope>> {
    let polys: Vec<LatticePolytope> = polygon_walks(b)?
        .par_iter()
        .map(EdgeWalk::polytope)
        .collect::<Result<_>>()?;
    dedup_classes(polys)
}

/// Independent oracle: hulls of all subsets of `{0..B}²` with at least three
/// points, deduplicated. Exponential in `(B+1)²`; intended for `B <= 3`.
pub fn subset_hull_classes(b: u64) -> Result<Vec<LatticePolytope>> {
    if !(1..=3).contains(&b) {
        return Err(Error::InvalidArgument(format!(
            "subset oracle supports 1 <= B <= 3, got {b}"
        )));
    }
    let grid: Vec<LatticePoint> = (0..=b as i64)
        .flat_map(|x| (0..=b as i64).map(move |y| LatticePoint::from_i64s(&[x, y])))
        .collect();
    let total = 1u64 << grid.len();
    let hulls: BTreeSet<Vec<LatticePoint>> = (0..total)
        .into_par_iter()
        .filter(|mask| mask.count_ones() >= 3)
        .filter_map(|mask| {
            let pts: Vec<LatticePoint> = grid
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| p.clone())
                .collect();
            let h = LatticePolytope::hull(&pts).ok()?;
            h.is_full_dimensional().then(|| h.vertices().to_vec())
        })
        .collect();
    let polys = hulls
        .into_iter()
        .map(|v| LatticePolytope::hull(&v))
        .collect::<Result<Vec<_>>>()?;
    dedup_classes(polys)
}

#[derive(Debug, Clone, Serialize)]
pub struct ScottSummary {
    pub box_size: u64,
    pub classes: usize,
    /// Classes with an interior lattice point.
    pub examined: usize,
    pub holds: usize,
    pub exceptional: usize,
    pub violations: Vec<VerificationReport>,
    pub exceptional_ids: Vec<String>,
}

/// Scott reports for the given polygons, in input order.
pub fn scott_reports(polys: &[LatticePolytope]) -> Result<Vec<VerificationReport>> {
    polys.par_iter().map(check_scott).collect()
}

pub fn summarize_scott(box_size: u64, reports: &[VerificationReport]) -> ScottSummary {
    let mut s = ScottSummary {
        box_size,
        classes: reports.len(),
        examined: 0,
        holds: 0,
        exceptional: 0,
        violations: Vec::new(),
        exceptional_ids: Vec::new(),
    };
    for r in reports {
        if r.status != Status::NotApplicable {
            s.examined += 1;
        }
        match r.status {
            Status::Holds => s.holds += 1,
            Status::Exceptional => {
                s.exceptional += 1;
                s.exceptional_ids.push(r.polytope_id.clone());
            }
            Status::Violated => s.violations.push(r.clone()),
            Status::NotApplicable => {}
        }
    }
    s
}

/// Checks Scott's bound on every polygon class in `[0, B]²`.
pub fn verify_scott_exhaustive(b: u64) -> Result<ScottSummary> {
    let polys = enumerate_polygons(b)?;
    Ok(summarize_scott(b, &scott_reports(&polys)?))
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub sampled: usize,
    /// Samples of degree 2 before deduplication.
    pub degree_two: usize,
    pub members: Vec<LatticePolytope>,
}

/// Seeded degree-2 3-polytopes inside `[0, B]³`, one per equivalence class.
///
/// Each sample picks side lengths `l_1, l_2, l_3` in `1..=B` and takes the
/// hull of 4 to 10 distinct points of `[0, l_1] × [0, l_2] × [0, l_3]`; small
/// sub-boxes make polytopes with few lattice points, such as the unit cube,
/// reachable.
pub fn sample_3d_corpus(b: u64, m: usize, seed: u64) -> Result<Corpus> {
    if !(1..=3).contains(&b) {
        return Err(Error::InvalidArgument(format!(
            "corpus box size must be in 1..=3, got {b}"
        )));
    }
    if m > 10_000 {
        return Err(Error::InvalidArgument(format!(
            "corpus size is capped at 10000, got {m}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let plans: Vec<([u64; 3], usize, u64)> = (0..m)
        .map(|_| {
            let sides = [
                rng.gen_range(1..=b),
                rng.gen_range(1..=b),
                rng.gen_range(1..=b),
            ];
            (sides, rng.gen_range(4..=10), rng.gen())
        })
        .collect();
    let sampled: Vec<Option<LatticePolytope>> = plans
        .par_iter()
        .map(|&(sides, k, sub)| {
            let grid: Vec<LatticePoint> = (0..=sides[0] as i64)
                .flat_map(|x| {
                    (0..=sides[1] as i64).flat_map(move |y| {
                        (0..=sides[2] as i64).map(move |z| LatticePoint::from_i64s(&[x, y, z]))
                    })
                })
                .collect();
            let mut r = ChaCha8Rng::seed_from_u64(sub);
            let pts: Vec<LatticePoint> = sample(&mut r, grid.len(), k.min(grid.len()))
                .into_iter()
                .map(|i| grid[i].clone())
                .collect();
            let p = LatticePolytope::hull(&pts)?;
            if !p.is_full_dimensional() || degree(&p)? != 2 {
                return Ok(None);
            }
            Ok(Some(p))
        })
        .collect::<Result<_>>()?;
    let deg2: Vec<LatticePolytope> = sampled.into_iter().flatten().collect();
    let degree_two = deg2.len();
    Ok(Corpus {
        sampled: m,
        degree_two,
        members: dedup_classes(deg2)?,
    })
}

/// A seeded mix of 2- and 3-polytopes from [`random_polytope`] with boxes of
/// size 2 or 3, alternating dimensions.
pub fn mixed_corpus(count: usize, seed: u64) -> Result<Vec<LatticePolytope>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let plans: Vec<(usize, u64, usize, u64)> = (0..count)
        .map(|k| {
            let n = 2 + k % 2;
            (n, rng.gen_range(2..=3), rng.gen_range(n + 1..=8), rng.gen())
        })
        .collect();
    plans
        .par_iter()
        .map(|&(n, b, m, s)| random_polytope(n, b, m, s))
        .collect()
}

/// Aggregated outcomes of the degree-2 checks over a corpus.
#[derive(Debug, Clone, Default, Serialize)]
pub struct CorpusSummary {
    pub members: usize,
    pub deg2_holds: usize,
    pub deg2_exceptional: usize,
    pub deg2_violations: Vec<VerificationReport>,
    /// Faces where the star inequality applies and is asserted.
    pub star_applicable: usize,
    pub star_violations: usize,
    pub star_zero_dilate: usize,
    pub remark_holds: usize,
    pub remark_not_applicable: usize,
    pub remark_violations: Vec<VerificationReport>,
    pub vpick_holds: usize,
    pub vpick_violations: Vec<VerificationReport>,
}

impl CorpusSummary {
    pub fn is_clean(&self) -> bool {
        self.deg2_violations.is_empty()
            && self.star_violations == 0
            && self.remark_violations.is_empty()
            && self.vpick_violations.is_empty()
    }
}

/// Reports produced for one corpus member.
#[derive(Debug, Clone, Serialize)]
pub struct MemberReports {
    pub deg2: VerificationReport,
    pub remark: VerificationReport,
    pub vpick: VerificationReport,
    pub star_applicable: usize,
    pub star_violations: usize,
    pub star_zero_dilate: usize,
}

pub fn check_member(p: &LatticePolytope) -> Result<MemberReports> {
    let stars = check_star_all_faces(p)?;
    Ok(MemberReports {
        deg2: check_deg2(p)?,
        remark: check_remark_bounds(p)?,
        vpick: check_vpick(p)?,
        star_applicable: stars.iter().filter(|r| r.asserted()).count(),
        star_violations: stars
            .iter()
            .filter(|r| r.status == Status::Violated)
            .count(),
        star_zero_dilate: stars.iter().filter(|r| r.zero_dilate).count(),
    })
}

pub fn summarize_corpus(reports: &[MemberReports]) -> CorpusSummary {
    let mut s = CorpusSummary {
        members: reports.len(),
        ..Default::default()
    };
    for r in reports {
        match r.deg2.status {
            Status::Holds => s.deg2_holds += 1,
            Status::Exceptional => s.deg2_exceptional += 1,
            _ => s.deg2_violations.push(r.deg2.clone()),
        }
        match r.remark.status {
            Status::Holds => s.remark_holds += 1,
            Status::NotApplicable => s.remark_not_applicable += 1,
            _ => s.remark_violations.push(r.remark.clone()),
        }
        match r.vpick.status {
            Status::Holds => s.vpick_holds += 1,
            _ => s.vpick_violations.push(r.vpick.clone()),
        }
        s.star_applicable += r.star_applicable;
        s.star_violations += r.star_violations;
        s.star_zero_dilate += r.star_zero_dilate;
    }
    s
}

/// Runs every degree-2 check on each member of a corpus.
pub fn verify_corpus(members: &[LatticePolytope]) -> Result<CorpusSummary> {
    let reports: Vec<MemberReports> = members
        .par_iter()
        .map(check_member)
        .collect::<Result<_>>()?;
    Ok(summarize_corpus(&reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::exceptional_3d2;
    use crate::equivalence::equivalent;

    #[test]
    fn angle_order() {
        let dirs = primitive_directions(1);
        assert_eq!(
            dirs,
            vec![
                (1, -1),
                (1, 0),
                (1, 1),
                (0, 1),
                (-1, 1),
                (-1, 0),
                (-1, -1),
                (0, -1)
            ]
        );
    }

    #[test]
    fn unit_box_walks() {
        let walks = polygon_walks(1).unwrap();
        // four triangles and the square, up to translation
        assert_eq!(walks.len(), 5);
        assert_eq!(enumerate_polygons(1).unwrap().len(), 2);
    }

    #[test]
    fn walks_close_with_increasing_angles() {
        for w in polygon_walks(2).unwrap() {
            let (sx, sy) = w.edges.iter().fold((0, 0), |a, e| (a.0 + e.0, a.1 + e.1));
            assert_eq!((sx, sy), (0, 0));
            assert!(w
                .edges
                .windows(2)
                .all(|p| angle_cmp(p[0], p[1]) == Ordering::Less));
            for (x, y) in w.vertices() {
                assert!((0..=2).contains(&x) && (0..=2).contains(&y));
            }
        }
    }

    #[test]
    fn matches_subset_oracle_on_small_boxes() {
        for b in 1..=2 {
            assert_eq!(
                enumerate_polygons(b).unwrap().len(),
                subset_hull_classes(b).unwrap().len()
            );
        }
    }

    #[test]
    fn three_box_contains_three_simplex() {
        let t = exceptional_3d2();
        let polys = enumerate_polygons(3).unwrap();
        assert_eq!(
            polys
                .iter()
                .filter(|p| equivalent(p, &t).unwrap().is_some())
                .count(),
            1
        );
    }

    #[test]
    fn scott_on_small_boxes() {
        let s = verify_scott_exhaustive(2).unwrap();
        assert_eq!(s.exceptional, 0);
        assert!(s.violations.is_empty());
        let s = verify_scott_exhaustive(3).unwrap();
        assert_eq!(s.exceptional, 1);
        assert!(s.violations.is_empty());
    }

    #[test]
    fn box_range() {
        assert!(polygon_walks(0).is_err());
        assert!(polygon_walks(7).is_err());
        assert!(sample_3d_corpus(4, 10, 0).is_err());
        assert!(sample_3d_corpus(2, 10_001, 0).is_err());
    }

    #[test]
    fn corpus_is_deterministic_and_degree_two() {
        let a = sample_3d_corpus(2, 60, 5).unwrap();
        let b = sample_3d_corpus(2, 60, 5).unwrap();
        assert_eq!(a.members, b.members);
        assert!(!a.members.is_empty());
        for p in &a.members {
            assert_eq!(degree(p).unwrap(), 2);
        }
        let s = verify_corpus(&a.members).unwrap();
        assert!(s.is_clean(), "{s:?}");
    }
}
