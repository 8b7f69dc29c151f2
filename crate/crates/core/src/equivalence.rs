//! Affine unimodular equivalence of lattice polytopes.
//!
//! Cheap invariants ([`Fingerprint`]) reject most pairs. The remaining pairs
//! are decided by matching a fixed affinely independent tuple of vertices of
//! `P` against ordered tuples of vertices of `Q` and testing whether the
//! interpolating affine map is integral, unimodular and sends vertices onto
//! vertices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice_count::{count_face_points_in_dilate, ehrhart_vector};
use crate::linalg::{determinant, gcd_all, inverse, rank};
use crate::point::LatticePoint;
use crate::polytope::LatticePolytope;

/// The map `x ↦ Ux + t` with `U` integral and `|det U| = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnimodularMap {
    #[serde(serialize_with = "crate::checks::serialize_bigint_matrix")]
    pub matrix: Vec<Vec<BigInt>>,
    #[serde(serialize_with = "crate::checks::serialize_bigint_vec")]
    pub translation: Vec<BigInt>,
}

impl UnimodularMap {
    pub fn new(matrix: Vec<Vec<BigInt>>, translation: Vec<BigInt>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) || translation.len() != n {
            return Err(Error::InvalidArgument(
                "matrix must be square and match the translation".into(),
            ));
        }
        if !determinant(&matrix).abs().is_one() {
            return Err(Error::InvalidArgument("matrix is not unimodular".into()));
        }
        Ok(UnimodularMap {
            matrix,
            translation,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::translation(vec![BigInt::zero(); n])
    }

    pub fn translation(t: Vec<BigInt>) -> Self {
        let n = t.len();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        UnimodularMap {
            matrix,
            translation: t,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.matrix)
    }

    pub fn apply(&self, x: &LatticePoint) -> LatticePoint {
        LatticePoint::new(
            self.matrix
                .iter()
                .zip(&self.translation)
                .map(|(row, t)| x.dot(row) + t)
                .collect(),
        )
    }

    pub fn apply_polytope(&self, p: &LatticePolytope) -> LatticePolytope {
        LatticePolytope::from_vertices_unchecked(
            p.vertices().iter().map(|v| self.apply(v)).collect(),
        )
    }
}

/// A unimodular map built from a seeded product of elementary integer row
/// operations, sign flips and permutations, with a small translation.
pub fn random_unimodular(n: usize, seed: u64) -> UnimodularMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m: Vec<Vec<BigInt>> = UnimodularMap::identity(n).matrix;
    if n > 1 {
        for _ in 0..3 * n {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            match rng.gen_range(0..3) {
                0 => {
                    let f = BigInt::from(rng.gen_range(-2i64..=2));
                    let src = m[j].clone();
                    for (a, b) in m[i].iter_mut().zip(&src) {
                        *a += &f * b;
                    }
                }
                1 => m.swap(i, j),
                _ => m[i].iter_mut().for_each(|a| *a = -a.clone()),
            }
        }
    } else if rng.gen_bool(0.5) {
        m[0][0] = -BigInt::one();
    }
    let t = (0..n)
        .map(|_| BigInt::from(rng.gen_range(-3i64..=3)))
        .collect();
    UnimodularMap {
        matrix: m,
        translation: t,
    }
}

/// Invariants of a full-dimensional polytope under affine unimodular maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub dim: usize,
    pub vertex_count: usize,
    pub volume: BigInt,
    pub ehrhart: Vec<u64>,
    /// Lattice points on each facet, sorted.
    pub facet_point_counts: Vec<u64>,
    /// Lattice lengths of the edges, sorted.
    pub edge_lengths: Vec<BigInt>,
}

pub fn fingerprint(p: &LatticePolytope) -> Result<Fingerprint> {
    let n = p.ambient_dim();
    let faces = p.faces()?;
    let mut facet_point_counts = Vec::new();
    let mut edge_lengths = Vec::new();
    for f in faces {
        if f.dim + 1 == n {
            facet_point_counts.push(count_face_points_in_dilate(p, f, 1)?);
        }
        if f.dim == 1 {
            let v = p.face_vertices(f);
            edge_lengths.push(gcd_all((&v[1] - &v[0]).coords()));
        }
    }
    facet_point_counts.sort_unstable();
    edge_lengths.sort();
    Ok(Fingerprint {
        dim: n,
        vertex_count: p.vertices().len(),
        volume: p.normalized_volume()?,
        ehrhart: ehrhart_vector(p)?.counts,
        facet_point_counts,
        edge_lengths,
    })
}

/// Searches for a unimodular map sending `p` onto `q`.
pub fn equivalent(p: &LatticePolytope, q: &LatticePolytope) -> Result<Option<UnimodularMap>> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim(),
            found: q.ambient_dim(),
        });
    }
    p.require_full_dimensional()?;
    q.require_full_dimensional()?;
    if fingerprint(p)? != fingerprint(q)? {
        return Ok(None);
    }
    Ok(search(p, q))
}

/// Vertex adjacency lists from the edges of the face lattice.
fn adjacency(p: &LatticePolytope) -> Option<Vec<Vec<usize>>> {
    let mut adj = vec![Vec::new(); p.vertices().len()];
    for f in p.faces().ok()?.iter().filter(|f| f.dim == 1) {
        let (a, b) = (f.vertex_indices[0], f.vertex_indices[1]);
        adj[a].push(b);
        adj[b].push(a);
    }
    Some(adj)
}

fn columns_matrix(cols: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = cols.len();
    (0..n)
        .map(|r| (0..n).map(|c| cols[c][r].clone()).collect())
        .collect()
}

/// Tuple search without the fingerprint pre-check; both polytopes must be
/// full-dimensional of the same dimension.
///
/// Unimodular maps send edges to edges, so the base tuple of `P` is a vertex
/// together with `n` neighbours spanning independent edge directions, and
/// only tuples of the same shape in `Q` are tried.
pub(crate) fn search(p: &LatticePolytope, q: &LatticePolytope) -> Option<UnimodularMap> {
    let n = p.ambient_dim();
    let pv = p.vertices();
    let qv = q.vertices();
    if pv.len() != qv.len() || q.ambient_dim() != n {
        return None;
    }
    let padj = adjacency(p)?;
    let qadj = adjacency(q)?;

    let mut base = Vec::with_capacity(n);
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for &nb in &padj[0] {
        rows.push((&pv[nb] - &pv[0]).into_coords());
        if rank(&rows) == rows.len() {
            base.push(nb);
        } else {
            rows.pop();
        }
        if base.len() == n {
            break;
        }
    }
    if base.len() < n {
        return None;
    }
    let dp = columns_matrix(&rows);
    let dp_inv = inverse(&dp)?;
    let dp_det = determinant(&dp).abs();
    let lengths: Vec<BigInt> = rows.iter().map(|r| gcd_all(r)).collect();
    let mut pdeg: Vec<usize> = padj.iter().map(Vec::len).collect();
    pdeg.sort_unstable();
    let mut qdeg: Vec<usize> = qadj.iter().map(Vec::len).collect();
    qdeg.sort_unstable();
    if pdeg != qdeg {
        return None;
    }

    let try_tuple = |q0: usize, nbs: &[usize]| -> Option<UnimodularMap> {
        let cols: Vec<Vec<BigInt>> = nbs
            .iter()
            .map(|&i| (&qv[i] - &qv[q0]).into_coords())
            .collect();
        let dq = columns_matrix(&cols);
        if determinant(&dq).abs() != dp_det {
            return None;
        }
        let mut u = vec![vec![BigInt::zero(); n]; n];
        for r in 0..n {
            for c in 0..n {
                let v: BigRational = (0..n)
                    .map(|k| BigRational::from_integer(dq[r][k].clone()) * &dp_inv[k][c])
                    .sum();
                if !v.is_integer() {
                    return None;
                }
                u[r][c] = v.to_integer();
            }
        }
        let t: Vec<BigInt> = (0..n).map(|r| &qv[q0][r] - pv[0].dot(&u[r])).collect();
        let map = UnimodularMap {
            matrix: u,
            translation: t,
        };
        if !map.determinant().abs().is_one() {
            return None;
        }
        let mut image: Vec<LatticePoint> = pv.iter().map(|v| map.apply(v)).collect();
        image.sort();
        (image == qv).then_some(map)
    };

    let mut chosen = Vec::with_capacity(n);
    for (q0, nbrs) in qadj.iter().enumerate() {
        if nbrs.len() != padj[0].len() {
            continue;
        }
        if let Some(m) = pick_neighbours(q0, nbrs, qv, &lengths, &mut chosen, &try_tuple) {
            return Some(m);
        }
    }
    None
}

/// Ordered choices of distinct neighbours of `q0` whose edges have the
/// required lattice lengths, handed to `visit` once complete.
fn pick_neighbours(
    q0: usize,
    nbs: &[usize],
    qv: &[LatticePoint],
    lengths: &[BigInt],
    chosen: &mut Vec<usize>,
    visit: &dyn Fn(usize, &[usize]) -> Option<UnimodularMap>,
) -> Option<UnimodularMap> {
    if chosen.len() == lengths.len() {
        return visit(q0, chosen);
    }
    for &nb in nbs {
        if chosen.contains(&nb) || gcd_all((&qv[nb] - &qv[q0]).coords()) != lengths[chosen.len()] {
            continue;
        }
        chosen.push(nb);
        let found = pick_neighbours(q0, nbs, qv, lengths, chosen, visit);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Keeps one representative per equivalence class, preserving input order.
///
/// Polytopes are bucketed by fingerprint and the tuple search runs only
/// within a bucket; buckets are processed in parallel.
pub fn dedup_classes(polys: Vec<LatticePolytope>) -> Result<Vec<LatticePolytope>> {
    let prints: Vec<Fingerprint> = polys.par_iter().map(fingerprint).collect::<Result<_>>()?;
    let mut buckets: BTreeMap<&Fingerprint, Vec<usize>> = BTreeMap::new();
    for (i, f) in prints.iter().enumerate() {
        buckets.entry(f).or_default().push(i);
    }
    let groups: Vec<Vec<usize>> = buckets.into_values().collect();
    let mut keep: Vec<usize> = groups
        .par_iter()
        .flat_map_iter(|members| {
            let mut reps: Vec<usize> = Vec::new();
            for &m in members {
                if !reps.iter().any(|&r| search(&polys[r], &polys[m]).is_some()) {
                    reps.push(m);
                }
            }
            reps
        })
        .collect();
    keep.sort_unstable();
    let mut polys: Vec<Option<LatticePolytope>> = polys.into_iter().map(Some).collect();
    Ok(keep
        .into_iter()
        .map(|i| polys[i].take().expect("distinct index"))
        .collect())
}
