use std::fmt;
use std::ops::{Add, Index, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// A point of the integer lattice with arbitrary-precision coordinates.
///
/// Points order lexicographically by coordinates, which is the order used for
/// vertex lists throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(Vec<BigInt>);

/// Integer vectors share the representation of lattice points.
pub type IntVector = LatticePoint;

impl LatticePoint {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticePoint(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        LatticePoint(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        LatticePoint(vec![BigInt::zero(); dim])
    }

    /// The `i`-th standard unit vector in `dim` dimensions.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![BigInt::zero(); dim];
        v[i] = BigInt::from(1);
        LatticePoint(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        LatticePoint(self.0.iter().map(|c| c * k).collect())
    }

    pub fn dot(&self, other: &[BigInt]) -> BigInt {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    /// Appends one coordinate, lifting the point into the next dimension.
    pub fn lifted(&self, last: BigInt) -> Self {
        let mut v = self.0.clone();
        v.push(last);
        LatticePoint(v)
    }

    /// Coordinates as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| c.to_i64()).collect()
    }
}

impl From<Vec<BigInt>> for LatticePoint {
    fn from(v: Vec<BigInt>) -> Self {
        LatticePoint(v)
    }
}

impl Index<usize> for LatticePoint {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl<'a> Sub for &'a LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: &'a LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl<'a> Add for &'a LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: &'a LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order() {
        let a = LatticePoint::from_i64s(&[0, 5]);
        let b = LatticePoint::from_i64s(&[1, -3]);
        let c = LatticePoint::from_i64s(&[1, 0]);
        let mut v = vec![c.clone(), b.clone(), a.clone()];
        v.sort();
        assert_eq!(v, vec![a, b, c]);
    }

    #[test]
    fn arithmetic() {
        let a = LatticePoint::from_i64s(&[1, 2, 3]);
        let b = LatticePoint::from_i64s(&[4, 5, 6]);
        assert_eq!(&b - &a, LatticePoint::from_i64s(&[3, 3, 3]));
        assert_eq!(&a + &b, LatticePoint::from_i64s(&[5, 7, 9]));
        assert_eq!(a.dot(b.coords()), BigInt::from(32));
        assert_eq!(
            a.scaled(&BigInt::from(-2)),
            LatticePoint::from_i64s(&[-2, -4, -6])
        );
        assert_eq!(a.to_string(), "(1, 2, 3)");
    }
}
