//! Lattice polytopes: hull construction, H-representation, face lattice,
//! triangulation and normalized volume.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hull::full_dimensional_hull;
use crate::linalg::{self, determinant, saturated_basis};
use crate::point::LatticePoint;
use crate::MAX_DIM;

/// The closed halfspace `{x : normal·x <= offset}` with a primitive normal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl Halfspace {
    /// `normal·x - offset`; nonpositive exactly on the halfspace.
    pub fn slack(&self, x: &LatticePoint) -> BigInt {
        x.dot(&self.normal) - &self.offset
    }
}

/// A nonempty face, given by the polytope vertices it contains.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub vertex_indices: Vec<usize>,
    pub dim: usize,
}

#[derive(Debug)]
struct HRep {
    facets: Vec<Halfspace>,
    /// vertex indices on each facet, sorted
    incidence: Vec<Vec<usize>>,
}

/// A convex lattice polytope stored by its vertex set.
///
/// Vertices are kept sorted lexicographically. The H-representation and face
/// lattice are filled on first use and cached.
#[derive(Debug)]
pub struct LatticePolytope {
    vertices: Vec<LatticePoint>,
    ambient_dim: usize,
    affine_dim: usize,
    hrep: OnceLock<HRep>,
    faces: OnceLock<Vec<Face>>,
}

impl Clone for LatticePolytope {
    fn clone(&self) -> Self {
        let hrep = OnceLock::new();
        if let Some(h) = self.hrep.get() {
            let _ = hrep.set(HRep {
                facets: h.facets.clone(),
                incidence: h.incidence.clone(),
            });
        }
        let faces = OnceLock::new();
        if let Some(f) = self.faces.get() {
            let _ = faces.set(f.clone());
        }
        LatticePolytope {
            vertices: self.vertices.clone(),
            ambient_dim: self.ambient_dim,
            affine_dim: self.affine_dim,
            hrep,
            faces,
        }
    }
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl std::hash::Hash for LatticePolytope {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
    }
}

fn check_points(points: &[LatticePoint]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let n = first.dim();
    if n == 0 || n > MAX_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    if let Some(bad) = points.iter().find(|p| p.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }
    Ok(n)
}

/// Affine rank of a nonempty point set.
pub fn affine_dim(points: &[LatticePoint]) -> usize {
    let Some(base) = points.first() else { return 0 };
    let rows: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .map(|p| (p - base).into_coords())
        .collect();
    linalg::rank(&rows)
}

/// Convex hull of a point set. See [`LatticePolytope::hull`].
pub fn hull(points: &[LatticePoint]) -> Result<LatticePolytope> {
    LatticePolytope::hull(points)
}

/// The affine lattice `origin + span_Z(basis)` of all integer points in the
/// affine hull of a point set.
#[derive(Debug, Clone)]
pub struct AffineLattice {
    origin: LatticePoint,
    basis: Vec<Vec<BigInt>>,
    pivot_rows: Vec<usize>,
    pivot_inverse: Vec<Vec<BigRational>>,
}

impl AffineLattice {
    /// Affine hull of `points` intersected with the ambient lattice.
    pub fn spanned_by(points: &[LatticePoint]) -> Result<Self> {
        let n = check_points(points)?;
        let origin = points[0].clone();
        let rows: Vec<Vec<BigInt>> = points[1..]
            .iter()
            .map(|p| (p - &origin).into_coords())
            .collect();
        let basis = if rows.is_empty() {
            Vec::new()
        } else {
            saturated_basis(&rows, n)
        };
        let r = basis.len();
        // pick r coordinates on which the basis is invertible
        let mut pivot_rows = Vec::new();
        let mut sub: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..n {
            if pivot_rows.len() == r {
                break;
            }
            sub.push(basis.iter().map(|b| b[i].clone()).collect());
            if linalg::rank(&sub) == sub.len() {
                pivot_rows.push(i);
            } else {
                sub.pop();
            }
        }
        let pivot_inverse = if r == 0 {
            Vec::new()
        } else {
            linalg::inverse(&sub).expect("invertible")
        };
        Ok(AffineLattice {
            origin,
            basis,
            pivot_rows,
            pivot_inverse,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn origin(&self) -> &LatticePoint {
        &self.origin
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Lattice coordinates of `x`, or `None` if `x` is not in the lattice.
    pub fn coordinates(&self, x: &LatticePoint) -> Option<Vec<BigInt>> {
        let d = x - &self.origin;
        let rhs: Vec<BigRational> = self
            .pivot_rows
            .iter()
            .map(|&i| BigRational::from_integer(d[i].clone()))
            .collect();
        let mut y = Vec::with_capacity(self.dim());
        for row in &self.pivot_inverse {
            let v: BigRational = row.iter().zip(&rhs).map(|(a, b)| a * b).sum();
            if !v.is_integer() {
                return None;
            }
            y.push(v.to_integer());
        }
        if self.embed(&y) != *x {
            return None;
        }
        Some(y)
    }

    pub fn embed(&self, y: &[BigInt]) -> LatticePoint {
        let mut v = self.origin.coords().to_vec();
        for (coef, b) in y.iter().zip(&self.basis) {
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi += coef * bi;
            }
        }
        LatticePoint::new(v)
    }
}

impl LatticePolytope {
    /// Convex hull of `points`, with the vertex list reduced to the actual
    /// vertices. Lower-dimensional inputs are hulled inside their affine
    /// lattice.
    pub fn hull(points: &[LatticePoint]) -> Result<Self> {
        let n = check_points(points)?;
        let mut pts: Vec<LatticePoint> = points.to_vec();
        pts.sort();
        pts.dedup();
        let lattice = AffineLattice::spanned_by(&pts)?;
        let r = lattice.dim();

        if r == 0 {
            return Ok(Self::from_parts(pts, n, 0));
        }
        if r == n {
            let raw: Vec<Vec<BigInt>> = pts.iter().map(|p| p.coords().to_vec()).collect();
            let h = full_dimensional_hull(&raw);
            let vertices: Vec<LatticePoint> = h.vertices.iter().map(|&i| pts[i].clone()).collect();
            let position: HashMap<usize, usize> = h
                .vertices
                .iter()
                .enumerate()
                .map(|(vi, &pi)| (pi, vi))
                .collect();
            let mut facets = Vec::with_capacity(h.facets.len());
            let mut incidence = Vec::with_capacity(h.facets.len());
            for f in h.facets {
                let inc: Vec<usize> = f
                    .tight
                    .iter()
                    .filter_map(|i| position.get(i).copied())
                    .collect();
                facets.push(Halfspace {
                    normal: f.normal,
                    offset: f.offset,
                });
                incidence.push(inc);
            }
            let poly = Self::from_parts(vertices, n, n);
            let _ = poly.hrep.set(HRep { facets, incidence });
            return Ok(poly);
        }

        let coords: Vec<Vec<BigInt>> = pts
            .iter()
            .map(|p| {
                lattice
                    .coordinates(p)
                    .expect("point lies in its own affine hull")
            })
            .collect();
        let h = full_dimensional_hull(&coords);
        let mut vertices: Vec<LatticePoint> = h.vertices.iter().map(|&i| pts[i].clone()).collect();
        vertices.sort();
        Ok(Self::from_parts(vertices, n, r))
    }

    fn from_parts(vertices: Vec<LatticePoint>, ambient_dim: usize, affine_dim: usize) -> Self {
        LatticePolytope {
            vertices,
            ambient_dim,
            affine_dim,
            hrep: OnceLock::new(),
            faces: OnceLock::new(),
        }
    }

    /// Builds a polytope from a list already known to be exactly its vertex
    /// set (for instance the image of a vertex set under an affine lattice
    /// isomorphism). The H-representation is computed on demand.
    pub(crate) fn from_vertices_unchecked(mut vertices: Vec<LatticePoint>) -> Self {
        vertices.sort();
        let n = vertices[0].dim();
        let r = affine_dim(&vertices);
        Self::from_parts(vertices, n, r)
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.ambient_dim
    }

    pub(crate) fn require_full_dimensional(&self) -> Result<()> {
        if self.is_full_dimensional() {
            Ok(())
        } else {
            Err(Error::NotFullDimensional {
                affine: self.affine_dim,
                ambient: self.ambient_dim,
            })
        }
    }

    fn hrep(&self) -> Result<&HRep> {
        self.require_full_dimensional()?;
        Ok(self.hrep.get_or_init(|| {
            let fresh = Self::hull(&self.vertices).expect("vertex set is valid");
            fresh
                .hrep
                .into_inner()
                .expect("full-dimensional hull carries facets")
        }))
    }

    /// Facet inequalities with primitive integer normals.
    pub fn facets(&self) -> Result<&[Halfspace]> {
        Ok(&self.hrep()?.facets)
    }

    /// Vertex indices on each facet, parallel to [`Self::facets`].
    pub fn facet_incidence(&self) -> Result<&[Vec<usize>]> {
        Ok(&self.hrep()?.incidence)
    }

    pub fn contains(&self, x: &LatticePoint) -> Result<bool> {
        Ok(self.facets()?.iter().all(|h| !h.slack(x).is_positive()))
    }

    /// Every face, from vertices up to the polytope itself, sorted by
    /// dimension and then vertex set.
    pub fn faces(&self) -> Result<&[Face]> {
        let h = self.hrep()?;
        Ok(self.faces.get_or_init(|| {
            let all: Vec<usize> = (0..self.vertices.len()).collect();
            let mut seen: HashSet<Vec<usize>> = HashSet::new();
            let mut queue = VecDeque::new();
            seen.insert(all.clone());
            queue.push_back(all);
            while let Some(face) = queue.pop_front() {
                for inc in &h.incidence {
                    let meet: Vec<usize> = face
                        .iter()
                        .copied()
                        .filter(|i| inc.binary_search(i).is_ok())
                        .collect();
                    if !meet.is_empty() && meet.len() < face.len() && seen.insert(meet.clone()) {
                        queue.push_back(meet);
                    }
                }
            }
            let mut faces: Vec<Face> = seen
                .into_iter()
                .map(|vi| {
                    let pts: Vec<LatticePoint> =
                        vi.iter().map(|&i| self.vertices[i].clone()).collect();
                    Face {
                        dim: affine_dim(&pts),
                        vertex_indices: vi,
                    }
                })
                .collect();
            faces.sort_by(|a, b| (a.dim, &a.vertex_indices).cmp(&(b.dim, &b.vertex_indices)));
            faces
        }))
    }

    /// Faces other than the polytope itself.
    pub fn proper_faces(&self) -> Result<Vec<Face>> {
        let n = self.ambient_dim;
        Ok(self
            .faces()?
            .iter()
            .filter(|f| f.dim < n)
            .cloned()
            .collect())
    }

    /// Face counts `(f_0, ..., f_{n-1})`.
    pub fn f_vector(&self) -> Result<Vec<usize>> {
        let n = self.ambient_dim;
        let mut f = vec![0; n];
        for face in self.faces()? {
            if face.dim < n {
                f[face.dim] += 1;
            }
        }
        Ok(f)
    }

    /// The face with exactly these vertices, if there is one.
    pub fn face_by_vertices(&self, vertex_indices: &[usize]) -> Result<Option<&Face>> {
        let mut key = vertex_indices.to_vec();
        key.sort_unstable();
        key.dedup();
        Ok(self.faces()?.iter().find(|f| f.vertex_indices == key))
    }

    /// Indices of the facets containing `face`.
    pub fn facets_containing(&self, face: &Face) -> Result<Vec<usize>> {
        let inc = self.facet_incidence()?;
        Ok((0..inc.len())
            .filter(|&k| {
                face.vertex_indices
                    .iter()
                    .all(|v| inc[k].binary_search(v).is_ok())
            })
            .collect())
    }

    /// Checks that `face` is one of this polytope's proper faces.
    pub(crate) fn require_proper_face(&self, face: &Face) -> Result<()> {
        let known = self.faces()?.iter().any(|f| f == face);
        if !known || face.dim >= self.ambient_dim {
            return Err(Error::NotAFace);
        }
        Ok(())
    }

    pub fn face_vertices(&self, face: &Face) -> Vec<LatticePoint> {
        face.vertex_indices
            .iter()
            .map(|&i| self.vertices[i].clone())
            .collect()
    }

    /// Pulling triangulation: each face is coned from its lexicographically
    /// smallest vertex over the triangulations of its facets missing that
    /// vertex. Simplices are returned as vertex index lists.
    pub fn triangulation(&self) -> Result<Vec<Vec<usize>>> {
        let faces = self.faces()?;
        let top = faces.last().expect("polytope is a face of itself");
        let mut memo: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
        Ok(pull(faces, faces.len() - 1, top, &mut memo))
    }

    /// `n!` times the Euclidean volume.
    pub fn normalized_volume(&self) -> Result<BigInt> {
        let simplices = self.triangulation()?;
        let mut total = BigInt::zero();
        for s in simplices {
            let apex = &self.vertices[s[0]];
            let rows: Vec<Vec<BigInt>> = s[1..]
                .iter()
                .map(|&i| (&self.vertices[i] - apex).into_coords())
                .collect();
            total += determinant(&rows).abs();
        }
        Ok(total)
    }

    /// Lattice-preserving coordinates on the affine hull: the image is a
    /// full-dimensional polytope in `Z^r` with the same lattice point counts.
    pub fn project_to_affine_hull(&self) -> Result<(LatticePolytope, AffineLattice)> {
        if self.affine_dim == 0 {
            return Err(Error::InvalidArgument(
                "a single point has no lattice coordinates".into(),
            ));
        }
        let lattice = AffineLattice::spanned_by(&self.vertices)?;
        let image: Vec<LatticePoint> = self
            .vertices
            .iter()
            .map(|v| LatticePoint::new(lattice.coordinates(v).expect("vertex lies in affine hull")))
            .collect();
        Ok((LatticePolytope::hull(&image)?, lattice))
    }

    /// The translate `P + t`.
    pub fn translated(&self, t: &LatticePoint) -> LatticePolytope {
        LatticePolytope::from_vertices_unchecked(self.vertices.iter().map(|v| v + t).collect())
    }

    /// The union of all lattice points of proper faces containing `face`.
    pub fn star(&self, face: &Face) -> Result<BTreeSet<LatticePoint>> {
        crate::lattice_count::star_points(self, face)
    }
}

fn pull(
    faces: &[Face],
    idx: usize,
    face: &Face,
    memo: &mut HashMap<usize, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if let Some(t) = memo.get(&idx) {
        return t.clone();
    }
    let apex = face.vertex_indices[0];
    let result = if face.dim == 0 {
        vec![vec![apex]]
    } else {
        let mut out = Vec::new();
        for (sub_idx, sub) in faces.iter().enumerate() {
            if sub.dim + 1 != face.dim
                || sub.vertex_indices.binary_search(&apex).is_ok()
                || !sub
                    .vertex_indices
                    .iter()
                    .all(|v| face.vertex_indices.binary_search(v).is_ok())
            {
                continue;
            }
            for mut s in pull(faces, sub_idx, sub, memo) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        out
    };
    memo.insert(idx, result.clone());
    result
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}
