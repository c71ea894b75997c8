//! Finitely supported rational vectors on `ω^k`: elements of `c_00(ω^k)`.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

use crate::combinatorics::Vertex;
use crate::error::{Error, Result};

/// A finitely supported function `ω^k → ℚ`. Only nonzero coefficients are
/// stored; iteration order is the well-order `≺`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    k: usize,
    coords: BTreeMap<Vertex, BigRational>,
}

impl Vector {
    pub fn zero(k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::BadDimension);
        }
        Ok(Vector {
            k,
            coords: BTreeMap::new(),
        })
    }

    /// The basis vector `e_v`.
    pub fn basis(v: Vertex) -> Self {
        let k = v.dim();
        let mut coords = BTreeMap::new();
        coords.insert(v, BigRational::from_integer(1.into()));
        Vector { k, coords }
    }

    pub fn from_pairs(k: usize, pairs: Vec<(Vertex, BigRational)>) -> Result<Self> {
        let mut x = Vector::zero(k)?;
        for (v, q) in pairs {
            let cur = x.coefficient(&v) + q;
            x.set(v, cur)?;
        }
        Ok(x)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn set(&mut self, v: Vertex, q: BigRational) -> Result<()> {
        v.check_dim(self.k)?;
        if q.is_zero() {
            self.coords.remove(&v);
        } else {
            self.coords.insert(v, q);
        }
        Ok(())
    }

    pub fn coefficient(&self, v: &Vertex) -> BigRational {
        self.coords
            .get(v)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Support size.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vertex, &BigRational)> {
        self.coords.iter()
    }

    /// Support in `≺` order.
    pub fn support(&self) -> Vec<Vertex> {
        self.coords.keys().cloned().collect()
    }

    pub fn min_support(&self) -> Option<&Vertex> {
        self.coords.keys().next()
    }

    pub fn max_support(&self) -> Option<&Vertex> {
        self.coords.keys().next_back()
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        if other.k != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                got: other.k,
            });
        }
        let mut out = self.clone();
        for (v, q) in &other.coords {
            let cur = out.coefficient(v) + q;
            out.set(v.clone(), cur)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.add(&other.scale(&BigRational::from_integer((-1).into())))
    }

    pub fn scale(&self, q: &BigRational) -> Vector {
        if q.is_zero() {
            return Vector {
                k: self.k,
                coords: BTreeMap::new(),
            };
        }
        Vector {
            k: self.k,
            coords: self
                .coords
                .iter()
                .map(|(v, a)| (v.clone(), a * q))
                .collect(),
        }
    }

    /// Coordinate restriction `E x` to the vertices satisfying `keep`.
    pub fn restrict<F: Fn(&Vertex) -> bool>(&self, keep: F) -> Vector {
        Vector {
            k: self.k,
            coords: self
                .coords
                .iter()
                .filter(|(v, _)| keep(v))
                .map(|(v, q)| (v.clone(), q.clone()))
                .collect(),
        }
    }

    pub fn restrict_to_sorted(&self, keep: &[Vertex]) -> Vector {
        self.restrict(|v| keep.binary_search(v).is_ok())
    }

    /// `max_v |x_v|`; 0 for the zero vector.
    pub fn sup_norm(&self) -> BigRational {
        self.coords
            .values()
            .map(|q| q.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn l1_norm(&self) -> BigRational {
        self.coords
            .values()
            .map(|q| q.abs())
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Floating-point `ℓ_p` norm of the coefficient multiset; `p ≥ 1`.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::BadExponent(p));
        }
        let mut sum = 0.0f64;
        for q in self.coords.values() {
            let a = q.abs().to_f64().expect("coefficient fits in f64");
            sum += a.powf(p);
        }
        Ok(sum.powf(1.0 / p))
    }

    /// Canonical memoization key: support/coefficient pairs in `≺` order.
    pub fn canonical_key(&self) -> Vec<(Vertex, BigRational)> {
        self.coords
            .iter()
            .map(|(v, q)| (v.clone(), q.clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{big_int, big_rational};

    fn v(e: &[u32]) -> Vertex {
        Vertex::new(e.to_vec()).unwrap()
    }

    #[test]
    fn sup_norm_of_the_zero_vector_is_zero() {
        assert!(Vector::zero(2).unwrap().sup_norm().is_zero());
    }

    #[test]
    fn sup_norm_takes_absolute_values() {
        let mut x = Vector::zero(2).unwrap();
        x.set(v(&[0, 0]), big_int(3)).unwrap();
        x.set(v(&[1, 1]), big_int(-4)).unwrap();
        assert_eq!(x.sup_norm(), big_int(4));
        assert_eq!(x.l1_norm(), big_int(7));
    }

    #[test]
    fn lp_norm_of_a_singleton_is_the_magnitude() {
        let mut x = Vector::zero(2).unwrap();
        x.set(v(&[0, 1]), big_rational(-3, 2)).unwrap();
        assert!((x.lp_norm(1.7).unwrap() - 1.5).abs() < 1e-12);
        assert_eq!(x.l1_norm(), big_rational(3, 2));
    }

    #[test]
    fn lp_norm_of_two_units_is_sqrt_two() {
        let mut x = Vector::zero(1).unwrap();
        x.set(v(&[0]), big_int(1)).unwrap();
        x.set(v(&[1]), big_int(1)).unwrap();
        assert!((x.lp_norm(2.0).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(x.lp_norm(5.0).unwrap(), 2f64.powf(0.2));
        assert!(x.lp_norm(0.5).is_err());
    }

    #[test]
    fn zero_coefficients_vanish_from_the_support() {
        let mut x = Vector::zero(2).unwrap();
        x.set(v(&[0, 1]), big_rational(1, 2)).unwrap();
        x.set(v(&[0, 1]), big_int(0)).unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let mut x = Vector::zero(2).unwrap();
        assert!(x.set(v(&[0, 0, 1]), big_int(1)).is_err());
    }
}
