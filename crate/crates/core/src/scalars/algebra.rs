//! The base field and the three kinds of division algebra over it.
//!
//! Elements are coordinate vectors in the basis `{1}`, `{1, √δ}` or
//! `{1, i, j, ij}` with `i² = a`, `j² = b`, `ij = -ji`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

/// Coordinates of a division-algebra element. Unused slots stay zero.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Coords(pub [Rational; 4]);

impl Coords {
    pub fn zero() -> Self {
        Coords::default()
    }

    pub fn scalar(x: Rational) -> Self {
        let mut c = Coords::zero();
        c.0[0] = x;
        c
    }

    pub fn one() -> Self {
        Coords::scalar(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.0[0].is_one() && self.0[1..].iter().all(Rational::is_zero)
    }

    /// Scalar part when the element lies in `k·1`.
    pub fn as_scalar(&self) -> Option<&Rational> {
        self.0[1..].iter().all(Rational::is_zero).then_some(&self.0[0])
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Coords::zero();
        }
        Coords([&self.0[0] * s, &self.0[1] * s, &self.0[2] * s, &self.0[3] * s])
    }

    pub fn add_assign(&mut self, o: &Coords) {
        for (a, b) in self.0.iter_mut().zip(o.0.iter()) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl Add for &Coords {
    type Output = Coords;
    fn add(self, o: &Coords) -> Coords {
        let mut c = self.clone();
        c.add_assign(o);
        c
    }
}

impl Sub for &Coords {
    type Output = Coords;
    fn sub(self, o: &Coords) -> Coords {
        self + &(-o)
    }
}

impl Neg for &Coords {
    type Output = Coords;
    fn neg(self) -> Coords {
        Coords([-&self.0[0], -&self.0[1], -&self.0[2], -&self.0[3]])
    }
}

impl fmt::Debug for Coords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// Which division algebra the entries live in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraSpec {
    Field,
    Quadratic { delta: Rational },
    Quaternion { a: Rational, b: Rational },
}

impl AlgebraSpec {
    /// `k(√δ)`; rejects rational squares (including zero).
    pub fn quadratic(delta: Rational) -> Result<Self> {
        if delta.is_square() {
            return Err(Error::InvalidAlgebra(format!("delta = {delta} is a rational square")));
        }
        Ok(AlgebraSpec::Quadratic { delta })
    }

    /// `(a, b | k)`. Division-ness is not certified.
    pub fn quaternion(a: Rational, b: Rational) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::InvalidAlgebra("quaternion structure constants must be nonzero".into()));
        }
        Ok(AlgebraSpec::Quaternion { a, b })
    }

    /// Hamilton-type `(-1, -1 | k)`.
    pub fn hamilton() -> Self {
        AlgebraSpec::Quaternion { a: Rational::from_int(-1), b: Rational::from_int(-1) }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            AlgebraSpec::Field => Ok(()),
            AlgebraSpec::Quadratic { delta } => Self::quadratic(delta.clone()).map(|_| ()),
            AlgebraSpec::Quaternion { a, b } => Self::quaternion(a.clone(), b.clone()).map(|_| ()),
        }
    }

    /// `dim_k D`.
    pub fn dim(&self) -> usize {
        match self {
            AlgebraSpec::Field => 1,
            AlgebraSpec::Quadratic { .. } => 2,
            AlgebraSpec::Quaternion { .. } => 4,
        }
    }

    /// The k-basis `e_0 = 1, e_1, ...` of D.
    pub fn basis(&self) -> Vec<Coords> {
        (0..self.dim())
            .map(|i| {
                let mut c = Coords::zero();
                c.0[i] = Rational::one();
                c
            })
            .collect()
    }

    pub(crate) fn mul(&self, x: &Coords, y: &Coords) -> Coords {
        let [x0, x1, x2, x3] = &x.0;
        let [y0, y1, y2, y3] = &y.0;
        match self {
            AlgebraSpec::Field => Coords::scalar(x0 * y0),
            AlgebraSpec::Quadratic { delta } => {
                if x1.is_zero() && y1.is_zero() {
                    return Coords::scalar(x0 * y0);
                }
                let mut c = Coords::zero();
                c.0[0] = x0 * y0 + &(delta * &(x1 * y1));
                c.0[1] = x0 * y1 + x1 * y0;
                c
            }
            AlgebraSpec::Quaternion { a, b } => {
                if x.as_scalar().is_some() {
                    return y.scale(x0);
                }
                if y.as_scalar().is_some() {
                    return x.scale(y0);
                }
                let ab = a * b;
                Coords([
                    x0 * y0 + a * &(x1 * y1) + b * &(x2 * y2) - &ab * &(x3 * y3),
                    x0 * y1 + x1 * y0 - b * &(x2 * y3) + b * &(x3 * y2),
                    x0 * y2 + x2 * y0 + a * &(x1 * y3) - a * &(x3 * y1),
                    x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
                ])
            }
        }
    }

    pub(crate) fn conj(&self, x: &Coords) -> Coords {
        match self {
            AlgebraSpec::Field => x.clone(),
            AlgebraSpec::Quadratic { .. } => {
                let mut c = x.clone();
                c.0[1] = -&c.0[1];
                c
            }
            AlgebraSpec::Quaternion { .. } => {
                Coords([x.0[0].clone(), -&x.0[1], -&x.0[2], -&x.0[3]])
            }
        }
    }

    /// Reduced norm `x · conj(x)` (a scalar).
    pub(crate) fn norm(&self, x: &Coords) -> Rational {
        let [x0, x1, x2, x3] = &x.0;
        match self {
            AlgebraSpec::Field => x0 * x0,
            AlgebraSpec::Quadratic { delta } => x0 * x0 - delta * &(x1 * x1),
            AlgebraSpec::Quaternion { a, b } => {
                x0 * x0 - a * &(x1 * x1) - b * &(x2 * x2) + &(a * b) * &(x3 * x3)
            }
        }
    }

    pub(crate) fn inv(&self, x: &Coords) -> Result<Coords> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm(x);
        let n_inv = n.recip().ok_or(Error::NonInvertible)?;
        Ok(self.conj(x).scale(&n_inv))
    }

    /// Trace of left multiplication by `x` on D as a k-vector space.
    pub(crate) fn trace_k(&self, x: &Coords) -> Rational {
        match self {
            AlgebraSpec::Field => x.0[0].clone(),
            AlgebraSpec::Quadratic { .. } => &x.0[0] * &Rational::from_int(2),
            AlgebraSpec::Quaternion { .. } => &x.0[0] * &Rational::from_int(4),
        }
    }

    /// Matrix of `y ↦ x·y` in the standard k-basis (column `b` holds `x·e_b`).
    pub(crate) fn left_mul_matrix(&self, x: &Coords) -> Vec<Vec<Rational>> {
        let d = self.dim();
        let mut m = vec![vec![Rational::zero(); d]; d];
        for (col, e) in self.basis().iter().enumerate() {
            let p = self.mul(x, e);
            for (row, line) in m.iter_mut().enumerate() {
                line[col] = p.0[row].clone();
            }
        }
        m
    }

    /// A nonzero element with `conj(u) = -u`, if D has one.
    pub fn imaginary_unit(&self) -> Option<Coords> {
        match self {
            AlgebraSpec::Field => None,
            _ => Some(self.basis()[1].clone()),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, AlgebraSpec::Field)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum AlgebraJson {
    Field,
    Quadratic { delta: Rational },
    Quaternion { a: Rational, b: Rational },
}

impl Serialize for AlgebraSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let j = match self.clone() {
            AlgebraSpec::Field => AlgebraJson::Field,
            AlgebraSpec::Quadratic { delta } => AlgebraJson::Quadratic { delta },
            AlgebraSpec::Quaternion { a, b } => AlgebraJson::Quaternion { a, b },
        };
        j.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = match AlgebraJson::deserialize(d)? {
            AlgebraJson::Field => AlgebraSpec::Field,
            AlgebraJson::Quadratic { delta } => AlgebraSpec::Quadratic { delta },
            AlgebraJson::Quaternion { a, b } => AlgebraSpec::Quaternion { a, b },
        };
        spec.validate().map_err(serde::de::Error::custom)?;
        Ok(spec)
    }
}

/// An element of D together with the algebra it belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionAlgebraElement {
    algebra: AlgebraSpec,
    coords: Coords,
}

impl DivisionAlgebraElement {
    pub fn new(algebra: AlgebraSpec, coords: &[Rational]) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(Error::Shape(format!(
                "expected {} coordinates, got {}",
                algebra.dim(),
                coords.len()
            )));
        }
        let mut c = Coords::zero();
        for (slot, v) in c.0.iter_mut().zip(coords) {
            *slot = v.clone();
        }
        Ok(DivisionAlgebraElement { algebra, coords: c })
    }

    pub fn from_coords(algebra: AlgebraSpec, coords: Coords) -> Self {
        DivisionAlgebraElement { algebra, coords }
    }

    pub fn scalar(algebra: AlgebraSpec, x: Rational) -> Self {
        DivisionAlgebraElement { algebra, coords: Coords::scalar(x) }
    }

    pub fn one(algebra: AlgebraSpec) -> Self {
        Self::scalar(algebra, Rational::one())
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords.0[..self.algebra.dim()]
    }

    pub fn raw(&self) -> &Coords {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn mul(&self, y: &Self) -> Result<Self> {
        if self.algebra != y.algebra {
            return Err(Error::SpecMismatch);
        }
        Ok(Self::from_coords(self.algebra.clone(), self.algebra.mul(&self.coords, &y.coords)))
    }

    pub fn add(&self, y: &Self) -> Result<Self> {
        if self.algebra != y.algebra {
            return Err(Error::SpecMismatch);
        }
        Ok(Self::from_coords(self.algebra.clone(), &self.coords + &y.coords))
    }

    pub fn neg(&self) -> Self {
        Self::from_coords(self.algebra.clone(), -&self.coords)
    }

    pub fn conj(&self) -> Self {
        Self::from_coords(self.algebra.clone(), self.algebra.conj(&self.coords))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(Self::from_coords(self.algebra.clone(), self.algebra.inv(&self.coords)?))
    }

    pub fn norm(&self) -> Rational {
        self.algebra.norm(&self.coords)
    }

    pub fn trace_k(&self) -> Rational {
        self.algebra.trace_k(&self.coords)
    }
}

/// A sign `ε = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i32(v: i32) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn rational(self) -> Rational {
        Rational::from_int(self.value() as i64)
    }

    /// `(-1)^n`.
    pub fn parity(n: usize) -> Sign {
        if n.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, o: Sign) -> Sign {
        if self == o {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i32(self.value())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i32::deserialize(d)?;
        Sign::from_i32(v).ok_or_else(|| serde::de::Error::custom(format!("sign must be 1 or -1, got {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Coords {
        let mut c = Coords::zero();
        for (s, x) in c.0.iter_mut().zip(v) {
            *s = Rational::from_int(*x);
        }
        c
    }

    #[test]
    fn quaternion_products() {
        let h = AlgebraSpec::hamilton();
        // (1+i)(1+j) = 1 + i + j + ij
        assert_eq!(h.mul(&q(&[1, 1, 0, 0]), &q(&[1, 0, 1, 0])), q(&[1, 1, 1, 1]));
        let i = q(&[0, 1, 0, 0]);
        let j = q(&[0, 0, 1, 0]);
        assert_eq!(h.mul(&i, &j), -&h.mul(&j, &i));
        assert_eq!(h.mul(&i, &i), q(&[-1, 0, 0, 0]));
        let x = q(&[2, -3, 5, 7]);
        assert_eq!(h.mul(&x, &Coords::one()), x);
    }

    #[test]
    fn conjugation_examples() {
        let f = AlgebraSpec::Field;
        let x = Coords::scalar(Rational::new(3, 2));
        assert_eq!(f.conj(&x), x);
        let qd = AlgebraSpec::quadratic(Rational::from_int(5)).unwrap();
        assert_eq!(qd.conj(&q(&[1, 2])), q(&[1, -2]));
        let h = AlgebraSpec::hamilton();
        let ij = h.mul(&q(&[0, 1, 0, 0]), &q(&[0, 0, 1, 0]));
        assert_eq!(h.conj(&ij), q(&[0, 0, 0, -1]));
    }

    #[test]
    fn inverse_examples() {
        let f = AlgebraSpec::Field;
        assert_eq!(f.inv(&q(&[2])).unwrap(), Coords::scalar(Rational::new(1, 2)));
        let qd = AlgebraSpec::quadratic(Rational::from_int(5)).unwrap();
        let s = q(&[0, 1]);
        let mut expect = Coords::zero();
        expect.0[1] = Rational::new(1, 5);
        assert_eq!(qd.inv(&s).unwrap(), expect);
        let h = AlgebraSpec::hamilton();
        assert_eq!(h.inv(&q(&[0, 1, 0, 0])).unwrap(), q(&[0, -1, 0, 0]));
        assert!(matches!(f.inv(&Coords::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn split_quaternion_zero_norm() {
        let split = AlgebraSpec::quaternion(Rational::one(), Rational::one()).unwrap();
        assert!(matches!(split.inv(&q(&[1, 1, 0, 0])), Err(Error::NonInvertible)));
    }

    #[test]
    fn trace_examples() {
        let f = AlgebraSpec::Field;
        assert_eq!(f.trace_k(&q(&[5])), Rational::from_int(5));
        let qd = AlgebraSpec::quadratic(Rational::from_int(-1)).unwrap();
        assert_eq!(qd.trace_k(&q(&[3, 4])), Rational::from_int(6));
    }

    #[test]
    fn quaternion_trace_matches_left_multiplication_matrix() {
        // oracle: trace of the explicit 4x4 left-multiplication matrix of 2 + i
        let h = AlgebraSpec::hamilton();
        let x = q(&[2, 1, 0, 0]);
        let m = h.left_mul_matrix(&x);
        let tr: Rational = (0..4).map(|i| m[i][i].clone()).sum();
        assert_eq!(tr, Rational::from_int(8));
        assert_eq!(h.trace_k(&x), tr);
    }

    #[test]
    fn rejects_square_delta() {
        assert!(AlgebraSpec::quadratic(Rational::from_int(4)).is_err());
        assert!(AlgebraSpec::quadratic(Rational::new(9, 16)).is_err());
        assert!(AlgebraSpec::quadratic(Rational::from_int(-1)).is_ok());
        assert!(AlgebraSpec::quaternion(Rational::zero(), Rational::one()).is_err());
    }

    #[test]
    fn mismatched_specs() {
        let a = DivisionAlgebraElement::one(AlgebraSpec::Field);
        let b = DivisionAlgebraElement::one(AlgebraSpec::hamilton());
        assert!(matches!(a.mul(&b), Err(Error::SpecMismatch)));
    }

    #[test]
    fn json_forms() {
        let s = serde_json::to_string(&AlgebraSpec::Field).unwrap();
        assert_eq!(s, r#"{"kind":"field"}"#);
        let q: AlgebraSpec = serde_json::from_str(r#"{"kind":"quadratic","delta":"-1"}"#).unwrap();
        assert_eq!(q, AlgebraSpec::quadratic(Rational::from_int(-1)).unwrap());
        let h: AlgebraSpec = serde_json::from_str(r#"{"kind":"quaternion","a":"-1","b":"-1"}"#).unwrap();
        assert_eq!(h, AlgebraSpec::hamilton());
        assert!(serde_json::from_str::<AlgebraSpec>(r#"{"kind":"quadratic","delta":"4"}"#).is_err());
    }
}
