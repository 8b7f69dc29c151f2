//! Executable checks of the volume and lattice-point bounds for polytopes of
//! degree at most two, with machine-readable reports.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::constructions::{exceptional_3d2, pyramid_k};
use crate::ehrhart::{degree, vpick_check, HStarPolynomial};
use crate::equivalence::equivalent;
use crate::error::{Error, Result};
use crate::lattice_count::{
    count_face_relative_interior, count_interior_points_in_dilate, count_outside_star,
    count_points_in_dilate,
};
use crate::polytope::{binomial, Face, LatticePolytope};

/// Serializes as a JSON number when the value fits in `i64`, else as a
/// decimal string.
pub fn serialize_bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub fn serialize_bigint_vec<S: Serializer>(
    v: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&Wrapped(x))?;
    }
    seq.end()
}

pub fn serialize_bigint_matrix<S: Serializer>(
    m: &[Vec<BigInt>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for row in m {
        seq.serialize_element(&row.iter().map(Wrapped).collect::<Vec<_>>())?;
    }
    seq.end()
}

struct Wrapped<'a>(&'a BigInt);

impl Serialize for Wrapped<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_bigint(self.0, s)
    }
}

/// Exact decimal form of a rational when its denominator has only the prime
/// factors 2 and 5, otherwise `p/q`.
pub fn exact_decimal(q: &BigRational) -> String {
    if q.is_integer() {
        return q.to_integer().to_string();
    }
    let mut den = q.denom().clone();
    let (mut twos, mut fives) = (0u32, 0u32);
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while den.is_multiple_of(&two) {
        den /= &two;
        twos += 1;
    }
    while den.is_multiple_of(&five) {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", q.numer(), q.denom());
    }
    let places = twos.max(fives);
    let scaled = (q * BigRational::from_integer(BigInt::from(10).pow(places))).to_integer();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let digits = format!(
        "{:0>width$}",
        scaled.abs().to_string(),
        width = places as usize + 1
    );
    let (int, frac) = digits.split_at(digits.len() - places as usize);
    format!("{sign}{int}.{frac}")
}

fn serialize_rational<S: Serializer>(
    q: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&exact_decimal(q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Exceptional,
    Violated,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Exceptional => "exceptional",
            Status::Violated => "violated",
            Status::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    Scott,
    Deg2,
    Star,
    Remark,
    Vpick,
}

impl Theorem {
    pub const ALL: [Theorem; 5] = [
        Theorem::Scott,
        Theorem::Deg2,
        Theorem::Star,
        Theorem::Remark,
        Theorem::Vpick,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Scott => "scott",
            Theorem::Deg2 => "deg2",
            Theorem::Star => "star",
            Theorem::Remark => "remark",
            Theorem::Vpick => "vpick",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown theorem '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportInputs {
    pub n: usize,
    /// `|P ∩ Z^n|`
    pub b: u64,
    /// `|((n-1)P)° ∩ Z^n|`, counted directly.
    pub i: u64,
    #[serde(serialize_with = "serialize_bigint")]
    pub vol: BigInt,
    pub degree: usize,
}

impl ReportInputs {
    pub fn of(p: &LatticePolytope) -> Result<Self> {
        p.require_full_dimensional()?;
        let n = p.ambient_dim();
        Ok(ReportInputs {
            n,
            b: count_points_in_dilate(p, 1)?,
            i: count_interior_points_in_dilate(p, (n - 1) as u64)?,
            vol: p.normalized_volume()?,
            degree: degree(p)?,
        })
    }

    fn is_exceptional_shape(&self) -> bool {
        self.vol == BigInt::from(9) && self.b == 8 + self.n as u64 && self.i == 1
    }
}

/// One inequality `lhs <= rhs` (or equation, by name) with both sides exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub name: String,
    #[serde(serialize_with = "serialize_rational")]
    pub lhs: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub rhs: BigRational,
    pub holds: bool,
}

impl Inequality {
    pub fn le(name: &str, lhs: BigRational, rhs: BigRational) -> Self {
        let holds = lhs <= rhs;
        Inequality {
            name: name.to_string(),
            lhs,
            rhs,
            holds,
        }
    }

    pub fn lt(name: &str, lhs: BigRational, rhs: BigRational) -> Self {
        let holds = lhs < rhs;
        Inequality {
            name: name.to_string(),
            lhs,
            rhs,
            holds,
        }
    }

    pub fn eq(name: &str, lhs: BigRational, rhs: BigRational) -> Self {
        let holds = lhs == rhs;
        Inequality {
            name: name.to_string(),
            lhs,
            rhs,
            holds,
        }
    }
}

fn q<T: Into<BigInt>>(x: T) -> BigRational {
    BigRational::from_integer(x.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub polytope_id: String,
    pub theorem: Theorem,
    pub inputs: ReportInputs,
    pub inequalities: Vec<Inequality>,
    pub status: Status,
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn new(p: &LatticePolytope, theorem: Theorem, inputs: ReportInputs) -> Self {
        VerificationReport {
            polytope_id: default_id(p),
            theorem,
            inputs,
            inequalities: Vec::new(),
            status: Status::NotApplicable,
            notes: Vec::new(),
        }
    }

    /// A not-applicable report for a polytope outside a check's
    /// preconditions, with the reason as a note.
    pub fn not_applicable(
        p: &LatticePolytope,
        theorem: Theorem,
        reason: impl Into<String>,
    ) -> Result<Self> {
        let mut r = VerificationReport::new(p, theorem, ReportInputs::of(p)?);
        r.notes.push(reason.into());
        Ok(r)
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.polytope_id = id.into();
        self
    }

    /// Holds when every recorded inequality holds, violated otherwise.
    fn settle(&mut self) {
        self.status = if self.inequalities.iter().all(|e| e.holds) {
            Status::Holds
        } else {
            Status::Violated
        };
    }
}

/// The vertex list, e.g. `[(0, 0), (3, 0), (0, 3)]`.
pub fn default_id(p: &LatticePolytope) -> String {
    let v: Vec<String> = p.vertices().iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(", "))
}

fn require_degree_two(inputs: &ReportInputs) -> Result<()> {
    if inputs.degree != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: inputs.degree,
        });
    }
    Ok(())
}

/// Whether `p` is equivalent to the `(n-2)`-fold pyramid over `3Δ₂`.
pub fn is_exceptional(p: &LatticePolytope) -> Result<bool> {
    let n = p.ambient_dim();
    if n < 2 {
        return Ok(false);
    }
    Ok(equivalent(p, &pyramid_k(&exceptional_3d2(), n - 2)?)?.is_some())
}

fn exceptional_given(p: &LatticePolytope, inputs: &ReportInputs) -> Result<bool> {
    Ok(inputs.is_exceptional_shape() && is_exceptional(p)?)
}

/// Scott's bound for a lattice polygon with an interior lattice point.
pub fn check_scott(p: &LatticePolytope) -> Result<VerificationReport> {
    if p.ambient_dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.ambient_dim(),
        });
    }
    let inputs = ReportInputs::of(p)?;
    let mut r = VerificationReport::new(p, Theorem::Scott, inputs.clone());
    if inputs.i == 0 {
        r.notes.push("no interior lattice point".into());
        return Ok(r);
    }
    let (b, i, vol) = (
        q(inputs.b),
        q(inputs.i),
        BigRational::from_integer(inputs.vol.clone()),
    );
    r.inequalities = vec![
        Inequality::le("Vol <= 4(i+1)", vol.clone(), q(4) * (&i + q(1))),
        Inequality::le("b <= 3i+6", b.clone(), q(3) * &i + q(6)),
        Inequality::le(
            "b <= 3/4 Vol + 3",
            b,
            BigRational::new(3.into(), 4.into()) * vol + q(3),
        ),
    ];
    if exceptional_given(p, &inputs)? {
        r.status = Status::Exceptional;
        r.notes.push("equivalent to 3Δ₂".into());
    } else {
        r.settle();
    }
    Ok(r)
}

/// The three equivalent bounds for degree-2 polytopes in any dimension.
///
/// Besides each bound, the report is marked violated when the bounds
/// disagree with one another.
pub fn check_deg2(p: &LatticePolytope) -> Result<VerificationReport> {
    let inputs = ReportInputs::of(p)?;
    require_degree_two(&inputs)?;
    let n = q(inputs.n as u64);
    let (b, i, vol) = (
        q(inputs.b),
        q(inputs.i),
        BigRational::from_integer(inputs.vol.clone()),
    );
    let mut r = VerificationReport::new(p, Theorem::Deg2, inputs.clone());
    r.inequalities = vec![
        Inequality::le("Vol <= 4(i+1)", vol.clone(), q(4) * (&i + q(1))),
        Inequality::le("b <= 3i+n+4", b.clone(), q(3) * &i + &n + q(4)),
        Inequality::le(
            "b <= 3/4 Vol + n + 1",
            b,
            BigRational::new(3.into(), 4.into()) * vol + &n + q(1),
        ),
    ];
    let agree = r.inequalities.iter().all(|e| e.holds) || r.inequalities.iter().all(|e| !e.holds);
    if exceptional_given(p, &inputs)? {
        r.status = Status::Exceptional;
        r.notes.push(format!(
            "equivalent to the {}-fold pyramid over 3Δ₂",
            inputs.n - 2
        ));
    } else {
        r.settle();
    }
    if !agree {
        r.status = Status::Violated;
        r.notes.push("the three bounds disagree".into());
    }
    Ok(r)
}

/// Outcome of the star inequality `0 < j + z - 1 <= i` for one face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarRecord {
    pub face: Vec<usize>,
    pub face_dim: usize,
    /// Relative interior points of `(n-2)s`.
    pub j: u64,
    /// Lattice points of `P` outside the star of `s`.
    pub z: u64,
    pub i: u64,
    pub status: Status,
    /// Set when `n = 2`, where `(n-2)s` is a single point and the count `j`
    /// rests on the point-is-its-own-interior convention.
    pub zero_dilate: bool,
}

impl StarRecord {
    /// Whether this record is an applicable case outside the zero-dilate
    /// convention.
    pub fn asserted(&self) -> bool {
        !self.zero_dilate && self.j >= 1 && self.z >= 1
    }

    pub fn bound_holds(&self) -> bool {
        let s = self.j + self.z;
        s > 1 && s - 1 <= self.i
    }
}

pub fn check_star_inequality(p: &LatticePolytope, s: &Face) -> Result<StarRecord> {
    let d = degree(p)?;
    if d != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: d,
        });
    }
    p.require_proper_face(s)?;
    let n = p.ambient_dim();
    let i = count_interior_points_in_dilate(p, (n - 1) as u64)?;
    star_record(p, s, i)
}

fn star_record(p: &LatticePolytope, s: &Face, i: u64) -> Result<StarRecord> {
    let n = p.ambient_dim();
    let j = count_face_relative_interior(p, s, (n - 2) as u64)?;
    let z = count_outside_star(p, s)?;
    let zero_dilate = n == 2;
    let mut rec = StarRecord {
        face: s.vertex_indices.clone(),
        face_dim: s.dim,
        j,
        z,
        i,
        status: Status::NotApplicable,
        zero_dilate,
    };
    if rec.asserted() {
        rec.status = if rec.bound_holds() {
            Status::Holds
        } else {
            Status::Violated
        };
    }
    Ok(rec)
}

/// Star records for every proper face of a degree-2 polytope.
pub fn check_star_all_faces(p: &LatticePolytope) -> Result<Vec<StarRecord>> {
    let d = degree(p)?;
    if d != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: d,
        });
    }
    let n = p.ambient_dim();
    let i = count_interior_points_in_dilate(p, (n - 1) as u64)?;
    p.proper_faces()?
        .iter()
        .map(|s| star_record(p, s, i))
        .collect()
}

/// Star inequality over all proper faces, as one report.
pub fn check_star_report(p: &LatticePolytope) -> Result<VerificationReport> {
    let inputs = ReportInputs::of(p)?;
    require_degree_two(&inputs)?;
    let records = check_star_all_faces(p)?;
    let mut r = VerificationReport::new(p, Theorem::Star, inputs);
    let mut conventional = 0;
    for rec in &records {
        if rec.zero_dilate && rec.j >= 1 && rec.z >= 1 {
            conventional += 1;
        }
        if !rec.asserted() {
            continue;
        }
        let sum = q(rec.j + rec.z) - q(1);
        let label = format!("{:?}", rec.face);
        r.inequalities.push(Inequality::lt(
            &format!("face {label}: 0 < j+z-1"),
            q(0),
            sum.clone(),
        ));
        r.inequalities.push(Inequality::le(
            &format!("face {label}: j+z-1 <= i"),
            sum,
            q(rec.i),
        ));
    }
    if conventional > 0 {
        r.notes.push(format!(
            "{conventional} face(s) rely on the zero-dilate convention and are not asserted"
        ));
    }
    if r.inequalities.is_empty() {
        r.notes.push("no face with j >= 1 and z >= 1".into());
    } else {
        r.settle();
    }
    Ok(r)
}

fn positive(name: &str, x: u64) -> Result<()> {
    if x < 1 {
        return Err(Error::InvalidArgument(format!("{name} must be at least 1")));
    }
    Ok(())
}

/// `4d·C(2d + vol - 1, 2d)`: from this dimension on, a polytope of degree
/// `d` and the given volume is a standard pyramid (Batyrev).
pub fn pyramid_threshold_batyrev(d: u64, vol: u64) -> Result<BigInt> {
    positive("degree", d)?;
    positive("volume", vol)?;
    Ok(BigInt::from(4 * d) * binomial(2 * d + vol - 1, 2 * d))
}

/// `(vol - 1)(2d + 1)`, the sharper threshold (Nill).
pub fn pyramid_threshold_nill(d: u64, vol: u64) -> Result<BigInt> {
    positive("degree", d)?;
    positive("volume", vol)?;
    Ok(BigInt::from(vol - 1) * BigInt::from(2 * d + 1))
}

pub fn forced_pyramid_batyrev(n: u64, d: u64, vol: u64) -> Result<bool> {
    Ok(BigInt::from(n) >= pyramid_threshold_batyrev(d, vol)?)
}

pub fn forced_pyramid_nill(n: u64, d: u64, vol: u64) -> Result<bool> {
    Ok(BigInt::from(n) >= pyramid_threshold_nill(d, vol)?)
}

/// All `(1, h1, i)` allowed by `Vol <= 4(i+1)`, i.e. `h1 <= 3i + 3`, plus
/// `(1, 7, 1)` when `i = 1`.
pub fn candidate_quadratics(i: u64) -> Result<Vec<HStarPolynomial>> {
    positive("leading coefficient", i)?;
    let ii = BigInt::from(i);
    let mut out: Vec<HStarPolynomial> = (0..=3 * i + 3)
        .map(|h1| HStarPolynomial::new(vec![BigInt::one(), BigInt::from(h1), ii.clone()]))
        .collect();
    if i == 1 {
        out.push(HStarPolynomial::from_i64s(&[1, 7, 1]));
    }
    Ok(out)
}

/// The two lattice-point reformulations of the degree-2 volume bound.
pub fn check_remark_bounds(p: &LatticePolytope) -> Result<VerificationReport> {
    let inputs = ReportInputs::of(p)?;
    require_degree_two(&inputs)?;
    let mut r = VerificationReport::new(p, Theorem::Remark, inputs.clone());
    if exceptional_given(p, &inputs)? {
        r.notes.push("exceptional polytope".into());
        return Ok(r);
    }
    let n = inputs.n as u64;
    let i = q(inputs.i);
    let interior_n = count_interior_points_in_dilate(p, n)?;
    let double = count_points_in_dilate(p, 2)?;
    r.inequalities = vec![
        Inequality::le("|(nP)°| <= (n+4)i+3", q(interior_n), q(n + 4) * &i + q(3)),
        Inequality::le(
            "|2P| <= (4+3n)(i+1)+n(n+3)/2",
            q(double),
            q(4 + 3 * n) * (&i + q(1)) + q(n * (n + 3) / 2),
        ),
    ];
    r.settle();
    Ok(r)
}

/// `Vol = b + i - n` as a report.
pub fn check_vpick(p: &LatticePolytope) -> Result<VerificationReport> {
    let rec = vpick_check(p)?;
    let inputs = ReportInputs {
        n: rec.n,
        b: rec.b,
        i: rec.i,
        vol: rec.vol.clone(),
        degree: 2,
    };
    let mut r = VerificationReport::new(p, Theorem::Vpick, inputs);
    r.inequalities = vec![Inequality::eq(
        "Vol = b+i-n",
        BigRational::from_integer(rec.vol),
        q(rec.b) + q(rec.i) - q(rec.n as u64),
    )];
    r.settle();
    Ok(r)
}

/// Runs the check named by `theorem`.
pub fn check(p: &LatticePolytope, theorem: Theorem) -> Result<VerificationReport> {
    match theorem {
        Theorem::Scott => check_scott(p),
        Theorem::Deg2 => check_deg2(p),
        Theorem::Star => check_star_report(p),
        Theorem::Remark => check_remark_bounds(p),
        Theorem::Vpick => check_vpick(p),
    }
}
