//! Lattice points of dilates `kP`, their interiors, and faces of dilates.
//!
//! All counting goes through one scanner: a region is a list of integer
//! inequalities `a·x <= r` together with a bounding box, and coordinates are
//! fixed one at a time in lexicographic order. At each level the remaining
//! box bounds tighten the admissible interval of the next coordinate, and the
//! last coordinate is solved for directly. Scans split into slabs along the
//! first coordinate and the slabs run in parallel.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::Result;
use crate::point::LatticePoint;
use crate::polytope::{Face, LatticePolytope};

/// Integer points of a box satisfying `a·x <= r` for every constraint.
#[derive(Debug, Clone)]
pub(crate) struct Region {
    constraints: Vec<(Vec<BigInt>, BigInt)>,
    lo: Vec<BigInt>,
    hi: Vec<BigInt>,
}

/// How facet inequalities of a dilate are imposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rel {
    Closed,
    Strict,
    Equal,
}

impl Region {
    fn new(dim: usize, lo: Vec<BigInt>, hi: Vec<BigInt>) -> Self {
        debug_assert_eq!(lo.len(), dim);
        Region {
            constraints: Vec::new(),
            lo,
            hi,
        }
    }

    fn push(&mut self, normal: &[BigInt], rhs: BigInt, rel: Rel) {
        match rel {
            Rel::Closed => self.constraints.push((normal.to_vec(), rhs)),
            Rel::Strict => self.constraints.push((normal.to_vec(), rhs - 1)),
            Rel::Equal => {
                self.constraints
                    .push((normal.iter().map(|a| -a).collect(), -&rhs));
                self.constraints.push((normal.to_vec(), rhs));
            }
        }
    }

    /// Bounding box of `k` times the given points.
    fn scaled_box(points: &[LatticePoint], k: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
        let n = points[0].dim();
        let lo = (0..n)
            .map(|i| points.iter().map(|p| &p[i] * k).min().unwrap())
            .collect();
        let hi = (0..n)
            .map(|i| points.iter().map(|p| &p[i] * k).max().unwrap())
            .collect();
        (lo, hi)
    }

    /// `kP` (closed) or its interior.
    fn dilate(p: &LatticePolytope, k: u64, interior: bool) -> Result<Self> {
        let facets = p.facets()?;
        let k = BigInt::from(k);
        let (lo, hi) = Self::scaled_box(p.vertices(), &k);
        let mut region = Region::new(p.ambient_dim(), lo, hi);
        let rel = if interior { Rel::Strict } else { Rel::Closed };
        for h in facets {
            region.push(&h.normal, &h.offset * &k, rel);
        }
        Ok(region)
    }

    /// `k·s` for a face `s`, closed or relatively open.
    fn face_dilate(
        p: &LatticePolytope,
        face: &Face,
        k: u64,
        relative_interior: bool,
    ) -> Result<Self> {
        let facets = p.facets()?;
        let containing = p.facets_containing(face)?;
        let k = BigInt::from(k);
        let (lo, hi) = Self::scaled_box(&p.face_vertices(face), &k);
        let mut region = Region::new(p.ambient_dim(), lo, hi);
        for (i, h) in facets.iter().enumerate() {
            let rel = if containing.contains(&i) {
                Rel::Equal
            } else if relative_interior {
                Rel::Strict
            } else {
                Rel::Closed
            };
            region.push(&h.normal, &h.offset * &k, rel);
        }
        Ok(region)
    }

    fn compile_i64(&self) -> Option<Compiled<i64>> {
        const LIMIT: i64 = 1 << 60;
        let bound: Vec<BigInt> = self
            .lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| l.abs().max(h.abs()))
            .collect();
        for (a, r) in &self.constraints {
            let total: BigInt = a
                .iter()
                .zip(&bound)
                .map(|(x, b)| x.abs() * b)
                .sum::<BigInt>()
                + r.abs();
            if total > BigInt::from(LIMIT) {
                return None;
            }
        }
        let conv = |v: &[BigInt]| v.iter().map(|x| x.to_i64()).collect::<Option<Vec<i64>>>();
        Some(Compiled::new(
            self.constraints
                .iter()
                .map(|(a, _)| conv(a))
                .collect::<Option<_>>()?,
            self.constraints
                .iter()
                .map(|(_, r)| r.to_i64())
                .collect::<Option<_>>()?,
            conv(&self.lo)?,
            conv(&self.hi)?,
        ))
    }

    fn compile_big(&self) -> Compiled<BigInt> {
        Compiled::new(
            self.constraints.iter().map(|(a, _)| a.clone()).collect(),
            self.constraints.iter().map(|(_, r)| r.clone()).collect(),
            self.lo.clone(),
            self.hi.clone(),
        )
    }

    pub(crate) fn count(&self) -> u64 {
        match self.compile_i64() {
            Some(c) => c.count_parallel(),
            None => self.compile_big().count_parallel(),
        }
    }

    /// Per-slab counts keyed by the first coordinate, in increasing order.
    pub(crate) fn slab_counts(&self) -> Vec<(BigInt, u64)> {
        match self.compile_i64() {
            Some(c) => c
                .slab_counts()
                .into_iter()
                .map(|(x, n)| (BigInt::from(x), n))
                .collect(),
            None => self.compile_big().slab_counts(),
        }
    }

    /// All points, in lexicographic order.
    pub(crate) fn points(&self) -> Vec<LatticePoint> {
        match self.compile_i64() {
            Some(c) => c
                .collect_parallel()
                .into_iter()
                .map(|v| LatticePoint::new(v.into_iter().map(BigInt::from).collect()))
                .collect(),
            None => self
                .compile_big()
                .collect_parallel()
                .into_iter()
                .map(LatticePoint::new)
                .collect(),
        }
    }
}

trait Scalar: Integer + Signed + Clone + Send + Sync + std::fmt::Debug {
    fn to_count(&self) -> u64;
    fn range_inclusive(lo: &Self, hi: &Self) -> Vec<Self> {
        let mut out = Vec::new();
        let mut x = lo.clone();
        while &x <= hi {
            out.push(x.clone());
            x = x + Self::one();
        }
        out
    }
}

impl Scalar for i64 {
    fn to_count(&self) -> u64 {
        *self as u64
    }
}

impl Scalar for BigInt {
    fn to_count(&self) -> u64 {
        self.to_u64().expect("lattice point count fits in u64")
    }
}

struct Compiled<T> {
    a: Vec<Vec<T>>,
    r: Vec<T>,
    lo: Vec<T>,
    hi: Vec<T>,
    /// rest_min[i][j] = sum over l >= j of min(a_il * lo_l, a_il * hi_l)
    rest_min: Vec<Vec<T>>,
}

impl<T: Scalar> Compiled<T> {
    fn new(a: Vec<Vec<T>>, r: Vec<T>, lo: Vec<T>, hi: Vec<T>) -> Self {
        let n = lo.len();
        let rest_min = a
            .iter()
            .map(|row| {
                let mut acc = vec![T::zero(); n + 1];
                for j in (0..n).rev() {
                    let x = row[j].clone() * lo[j].clone();
                    let y = row[j].clone() * hi[j].clone();
                    acc[j] = acc[j + 1].clone() + if x < y { x } else { y };
                }
                acc
            })
            .collect();
        Compiled {
            a,
            r,
            lo,
            hi,
            rest_min,
        }
    }

    fn dim(&self) -> usize {
        self.lo.len()
    }

    /// Admissible interval for coordinate `j` given partial sums `s`.
    fn interval(&self, j: usize, s: &[T]) -> Option<(T, T)> {
        let mut lo = self.lo[j].clone();
        let mut hi = self.hi[j].clone();
        for (i, row) in self.a.iter().enumerate() {
            let t = self.r[i].clone() - s[i].clone() - self.rest_min[i][j + 1].clone();
            let c = &row[j];
            if c.is_zero() {
                if t.is_negative() {
                    return None;
                }
            } else if c.is_positive() {
                let b = t.div_floor(c);
                if b < hi {
                    hi = b;
                }
            } else {
                let b = ceil_div_negative(t, c);
                if b > lo {
                    lo = b;
                }
            }
            if lo > hi {
                return None;
            }
        }
        Some((lo, hi))
    }

    fn walk(&self, j: usize, x: &mut Vec<T>, s: &mut Vec<T>, visit: &mut dyn FnMut(&[T])) {
        let Some((lo, hi)) = self.interval(j, s) else {
            return;
        };
        for v in T::range_inclusive(&lo, &hi) {
            for (i, row) in self.a.iter().enumerate() {
                s[i] = s[i].clone() + row[j].clone() * v.clone();
            }
            x.push(v.clone());
            if j + 1 == self.dim() {
                visit(x);
            } else {
                self.walk(j + 1, x, s, visit);
            }
            x.pop();
            for (i, row) in self.a.iter().enumerate() {
                s[i] = s[i].clone() - row[j].clone() * v.clone();
            }
        }
    }

    fn count_from(&self, j: usize, s: &mut Vec<T>) -> u64 {
        let Some((lo, hi)) = self.interval(j, s) else {
            return 0;
        };
        if j + 1 == self.dim() {
            return (hi - lo + T::one()).to_count();
        }
        let mut total = 0;
        for v in T::range_inclusive(&lo, &hi) {
            for (i, row) in self.a.iter().enumerate() {
                s[i] = s[i].clone() + row[j].clone() * v.clone();
            }
            total += self.count_from(j + 1, s);
            for (i, row) in self.a.iter().enumerate() {
                s[i] = s[i].clone() - row[j].clone() * v.clone();
            }
        }
        total
    }

    fn slab_partial(&self, x0: &T) -> Vec<T> {
        self.a
            .iter()
            .map(|row| row[0].clone() * x0.clone())
            .collect()
    }

    fn first_coordinates(&self) -> Vec<T> {
        let zero = vec![T::zero(); self.a.len()];
        match self.interval(0, &zero) {
            Some((lo, hi)) => T::range_inclusive(&lo, &hi),
            None => Vec::new(),
        }
    }

    fn slab_count(&self, x0: &T) -> u64 {
        if self.dim() == 1 {
            return 1;
        }
        let mut s = self.slab_partial(x0);
        self.count_from(1, &mut s)
    }

    fn slab_counts(&self) -> Vec<(T, u64)> {
        self.first_coordinates()
            .into_par_iter()
            .map(|x0| {
                let c = self.slab_count(&x0);
                (x0, c)
            })
            .collect()
    }

    fn count_parallel(&self) -> u64 {
        self.first_coordinates()
            .into_par_iter()
            .map(|x0| self.slab_count(&x0))
            .sum()
    }

    fn collect_parallel(&self) -> Vec<Vec<T>> {
        let slabs: Vec<Vec<Vec<T>>> = self
            .first_coordinates()
            .into_par_iter()
            .map(|x0| {
                if self.dim() == 1 {
                    return vec![vec![x0]];
                }
                let mut out = Vec::new();
                let mut s = self.slab_partial(&x0);
                let mut x = vec![x0];
                self.walk(1, &mut x, &mut s, &mut |p| out.push(p.to_vec()));
                out
            })
            .collect();
        slabs.into_iter().flatten().collect()
    }
}

/// `ceil(t / c)` for `c < 0`.
fn ceil_div_negative<T: Scalar>(t: T, c: &T) -> T {
    let (q, rem) = (-t).div_mod_floor(&-c.clone());
    if rem.is_zero() {
        q
    } else {
        q + T::one()
    }
}

/// Lattice points of `kP`, in lexicographic order. `0P` is the origin.
pub fn points_in_dilate(p: &LatticePolytope, k: u64) -> Result<Vec<LatticePoint>> {
    Ok(Region::dilate(p, k, false)?.points())
}

/// Lattice points in the interior of `kP`, in lexicographic order.
pub fn interior_points_in_dilate(p: &LatticePolytope, k: u64) -> Result<Vec<LatticePoint>> {
    Ok(Region::dilate(p, k, true)?.points())
}

/// `|kP ∩ Z^n|`.
pub fn count_points_in_dilate(p: &LatticePolytope, k: u64) -> Result<u64> {
    Ok(Region::dilate(p, k, false)?.count())
}

/// `|(kP)° ∩ Z^n|`.
pub fn count_interior_points_in_dilate(p: &LatticePolytope, k: u64) -> Result<u64> {
    Ok(Region::dilate(p, k, true)?.count())
}

/// `|∂(kP) ∩ Z^n|`.
pub fn count_boundary_points_in_dilate(p: &LatticePolytope, k: u64) -> Result<u64> {
    Ok(count_points_in_dilate(p, k)? - count_interior_points_in_dilate(p, k)?)
}

/// Point counts of `kP` per first-coordinate slab, as `(x_1, count)` pairs.
pub fn slab_counts_in_dilate(
    p: &LatticePolytope,
    k: u64,
    interior: bool,
) -> Result<Vec<(BigInt, u64)>> {
    Ok(Region::dilate(p, k, interior)?.slab_counts())
}

/// Lattice points of `k·s` for a face `s`, counted in the ambient lattice.
pub fn count_face_points_in_dilate(p: &LatticePolytope, face: &Face, k: u64) -> Result<u64> {
    p.require_proper_face(face).or_else(|e| {
        if face.dim == p.ambient_dim() {
            Ok(())
        } else {
            Err(e)
        }
    })?;
    Ok(Region::face_dilate(p, face, k, false)?.count())
}

/// Lattice points in the relative interior of `k·s`, counted in the ambient
/// lattice. When `k·s` is a single point (a vertex, or `k = 0`) its relative
/// interior is that point.
pub fn count_face_relative_interior(p: &LatticePolytope, face: &Face, k: u64) -> Result<u64> {
    p.require_proper_face(face).or_else(|e| {
        if face.dim == p.ambient_dim() {
            Ok(())
        } else {
            Err(e)
        }
    })?;
    if k == 0 || face.dim == 0 {
        return Ok(1);
    }
    Ok(Region::face_dilate(p, face, k, true)?.count())
}

/// Lattice points of `P` on some facet containing `face`; these are exactly
/// the lattice points of the proper faces containing `face`.
pub fn star_points(p: &LatticePolytope, face: &Face) -> Result<BTreeSet<LatticePoint>> {
    p.require_proper_face(face)?;
    let facets = p.facets()?;
    let containing = p.facets_containing(face)?;
    Ok(points_in_dilate(p, 1)?
        .into_iter()
        .filter(|x| containing.iter().any(|&i| facets[i].slack(x).is_zero()))
        .collect())
}

/// `|(P \ st(s)) ∩ Z^n|`.
pub fn count_outside_star(p: &LatticePolytope, face: &Face) -> Result<u64> {
    let star = star_points(p, face)?.len() as u64;
    Ok(count_points_in_dilate(p, 1)? - star)
}

/// Ehrhart counts `L(0..=n)` and, when requested, interior counts
/// `L°(1..=n+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrhartVector {
    pub dim: usize,
    pub counts: Vec<u64>,
    pub interior_counts: Option<Vec<u64>>,
}

impl EhrhartVector {
    /// Interpolates the Ehrhart polynomial through `L(0..=n)` and evaluates it
    /// at `t`.
    pub fn evaluate(&self, t: i64) -> BigRational {
        let t = BigInt::from(t);
        let mut total = BigRational::zero();
        for (k, &lk) in self.counts.iter().enumerate() {
            let mut term = BigRational::from_integer(BigInt::from(lk));
            for m in 0..self.counts.len() {
                if m != k {
                    let num = &t - BigInt::from(m);
                    let den = BigInt::from(k as i64 - m as i64);
                    term *= BigRational::new(num, den);
                }
            }
            total += term;
        }
        total
    }

    /// `(-1)^n E(-k)`, which reciprocity says equals `L°(k)`.
    pub fn reciprocal(&self, k: u64) -> BigRational {
        let v = self.evaluate(-(k as i64));
        if self.dim.is_multiple_of(2) {
            v
        } else {
            -v
        }
    }

    /// Checks reciprocity `L°(k) = (-1)^n E(-k)` for every stored interior
    /// count. Returns `None` if no interior counts were computed.
    pub fn reciprocity_holds(&self) -> Option<bool> {
        let interior = self.interior_counts.as_ref()?;
        Some(interior.iter().enumerate().all(|(idx, &c)| {
            self.reciprocal(idx as u64 + 1) == BigRational::from_integer(BigInt::from(c))
        }))
    }
}

/// `L(k) = |kP ∩ Z^n|` for `k = 0..=n`.
pub fn ehrhart_vector(p: &LatticePolytope) -> Result<EhrhartVector> {
    p.require_full_dimensional()?;
    let n = p.ambient_dim();
    let counts = (0..=n as u64)
        .map(|k| count_points_in_dilate(p, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(EhrhartVector {
        dim: n,
        counts,
        interior_counts: None,
    })
}

/// As [`ehrhart_vector`], also filling `L°(k)` for `k = 1..=n+1`.
pub fn ehrhart_vector_with_interior(p: &LatticePolytope) -> Result<EhrhartVector> {
    let mut ev = ehrhart_vector(p)?;
    let n = p.ambient_dim() as u64;
    ev.interior_counts = Some(
        (1..=n + 1)
            .map(|k| count_interior_points_in_dilate(p, k))
            .collect::<Result<Vec<_>>>()?,
    );
    Ok(ev)
}
