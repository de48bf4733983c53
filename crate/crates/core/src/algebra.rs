//! The normed division algebras R, C and H.
//!
//! All three algebras share one four-slot layout `(1, i, j, k)`. Elements of
//! R use only slot 0 and elements of C slots 0 and 1, so the tower
//! R ⊂ C ⊂ H is the identity on coefficients.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, GeometryError, Result};
use crate::scalar::Scalar;

/// Tolerance on `|λ| = 1` for the unit group action.
pub const UNIT_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldTag {
    R,
    C,
    H,
}

impl FieldTag {
    pub const ALL: [FieldTag; 3] = [FieldTag::R, FieldTag::C, FieldTag::H];

    /// Real dimension of the algebra.
    pub fn dim_r(self) -> usize {
        match self {
            FieldTag::R => 1,
            FieldTag::C => 2,
            FieldTag::H => 4,
        }
    }

    /// Manifold dimension of the unit group: 0 for {±1}, 1 for the circle, 3 for S³.
    pub fn fiber_dim(self) -> usize {
        match self {
            FieldTag::R => 0,
            FieldTag::C => 1,
            FieldTag::H => 3,
        }
    }

    /// True when `self ⊆ other` in the tower R ⊂ C ⊂ H.
    pub fn is_subfield_of(self, other: FieldTag) -> bool {
        self.dim_r() <= other.dim_r()
    }

    /// Unit imaginary elements `i` (C) or `i, j, k` (H).
    pub fn imaginary_units(self) -> Vec<AlgebraElement> {
        (1..self.dim_r())
            .map(|slot| {
                let mut coeffs = [0.0; 4];
                coeffs[slot] = 1.0;
                AlgebraElement { tag: self, coeffs }
            })
            .collect()
    }

    pub fn symbol(self) -> &'static str {
        match self {
            FieldTag::R => "R",
            FieldTag::C => "C",
            FieldTag::H => "H",
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for FieldTag {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" | "real" => Ok(FieldTag::R),
            "C" | "c" | "complex" => Ok(FieldTag::C),
            "H" | "h" | "quaternion" => Ok(FieldTag::H),
            other => domain(format!("unknown field `{other}` (expected R, C or H)")),
        }
    }
}

/// Orientation of the quaternion multiplication table.
///
/// `LeftHanded` is the opposite algebra (`ij = -k`); products are computed as
/// `y·x` in the right-handed table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    #[default]
    RightHanded,
    LeftHanded,
}

/// An element of R, C or H with coefficients in the scalar ring `T`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgebraElement<T = f64> {
    tag: FieldTag,
    coeffs: [T; 4],
}

impl AlgebraElement<f64> {
    /// Builds an element from all four coefficients, rejecting nonzero slots
    /// beyond the field's real dimension.
    pub fn new(tag: FieldTag, coeffs: [f64; 4]) -> Result<Self> {
        if coeffs[tag.dim_r()..].iter().any(|c| *c != 0.0) {
            return domain(format!("coefficients {coeffs:?} do not lie in {tag}"));
        }
        Ok(Self { tag, coeffs })
    }

    pub fn real(tag: FieldTag, x: f64) -> Self {
        Self::from_components(tag, &[x])
    }

    /// Embeds into a larger field of the tower.
    pub fn include(self, to: FieldTag) -> Result<Self> {
        if !self.tag.is_subfield_of(to) {
            return domain(format!("{} is not a subfield of {to}", self.tag));
        }
        Ok(Self { tag: to, coeffs: self.coeffs })
    }

    pub fn norm(&self) -> f64 {
        self.norm2().sqrt()
    }
}

impl<T: Scalar> AlgebraElement<T> {
    /// Builds an element from its first `components.len() <= dim_r` coefficients;
    /// the rest are zero.
    pub fn from_components(tag: FieldTag, components: &[T]) -> Self {
        assert!(components.len() <= tag.dim_r(), "too many components for {tag}");
        let mut coeffs = [T::zero(); 4];
        coeffs[..components.len()].copy_from_slice(components);
        Self { tag, coeffs }
    }

    pub fn zero(tag: FieldTag) -> Self {
        Self { tag, coeffs: [T::zero(); 4] }
    }

    pub fn one(tag: FieldTag) -> Self {
        Self::from_components(tag, &[T::constant(1.0)])
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn coeffs(&self) -> &[T; 4] {
        &self.coeffs
    }

    /// Real coordinates in the order (1, i, j, k), truncated to `dim_r`.
    pub fn components(&self) -> &[T] {
        &self.coeffs[..self.tag.dim_r()]
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = self.coeffs;
        Self { tag: self.tag, coeffs: [a, -b, -c, -d] }
    }

    pub fn norm2(&self) -> T {
        let [a, b, c, d] = self.coeffs;
        a * a + b * b + c * c + d * d
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.tag, other.tag);
        let mut coeffs = self.coeffs;
        for (c, o) in coeffs.iter_mut().zip(other.coeffs) {
            *c = *c + o;
        }
        Self { tag: self.tag, coeffs }
    }

    pub fn scale(&self, s: T) -> Self {
        Self { tag: self.tag, coeffs: self.coeffs.map(|c| s * c) }
    }

    /// Product in the right-handed table. Panics on tag mismatch; see
    /// [`alg_mul`] for the checked form.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.tag, other.tag, "algebra tag mismatch");
        Self { tag: self.tag, coeffs: hamilton(&self.coeffs, &other.coeffs) }
    }

    pub fn mul_with(&self, other: &Self, convention: Convention) -> Self {
        match convention {
            Convention::RightHanded => self.mul(other),
            Convention::LeftHanded => other.mul(self),
        }
    }
}

fn hamilton<T: Scalar>(x: &[T; 4], y: &[T; 4]) -> [T; 4] {
    let [a0, a1, a2, a3] = *x;
    let [b0, b1, b2, b3] = *y;
    [
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]
}

/// Checked product; the tags must agree.
pub fn alg_mul(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    if x.tag != y.tag {
        return domain(format!("cannot multiply {} by {}", x.tag, y.tag));
    }
    Ok(x.mul(y))
}

/// Returns `(x̄, x·x̄)`, the latter as a real number.
pub fn alg_conj_norm2(x: &AlgebraElement) -> (AlgebraElement, f64) {
    (x.conj(), x.norm2())
}

/// A vector of homogeneous coordinates `(v_0, …, v_n)` in F^{n+1}.
#[derive(Clone, Debug, PartialEq)]
pub struct HVector<T = f64> {
    tag: FieldTag,
    entries: Vec<AlgebraElement<T>>,
}

impl<T: Scalar> HVector<T> {
    pub fn new(tag: FieldTag, entries: Vec<AlgebraElement<T>>) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|e| e.tag != tag) {
            return domain(format!("entry of field {} in an {tag}-vector", bad.tag));
        }
        Ok(Self { tag, entries })
    }

    /// Reassembles from flattened real coordinates, `dim_r` per entry.
    pub fn from_real_coords(tag: FieldTag, coords: &[T]) -> Result<Self> {
        let d = tag.dim_r();
        if coords.is_empty() || !coords.len().is_multiple_of(d) {
            return domain(format!(
                "{} real coordinates do not split into {tag}-entries",
                coords.len()
            ));
        }
        let entries = coords.chunks(d).map(|c| AlgebraElement::from_components(tag, c)).collect();
        Ok(Self { tag, entries })
    }

    pub fn to_real_coords(&self) -> Vec<T> {
        self.entries.iter().flat_map(|e| e.components().iter().copied()).collect()
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn entries(&self) -> &[AlgebraElement<T>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm2(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, e| acc + e.norm2())
    }

    /// Entrywise left multiplication `λ·v` (right multiplication under the
    /// left-handed convention), without the unit check.
    pub fn act(&self, lambda: &AlgebraElement<T>, convention: Convention) -> Self {
        let entries = self.entries.iter().map(|e| lambda.mul_with(e, convention)).collect();
        Self { tag: self.tag, entries }
    }
}

/// The unit-group action `v ↦ λv` of F₁ on homogeneous coordinates.
pub fn scalar_action(lambda: &AlgebraElement, v: &HVector) -> Result<HVector> {
    scalar_action_with(lambda, v, Convention::RightHanded)
}

pub fn scalar_action_with(
    lambda: &AlgebraElement,
    v: &HVector,
    convention: Convention,
) -> Result<HVector> {
    if lambda.tag != v.tag {
        return domain(format!("scalar of field {} acting on an {}-vector", lambda.tag, v.tag));
    }
    let norm = lambda.norm();
    if (norm - 1.0).abs() > UNIT_TOLERANCE {
        return domain(format!("|λ| = {norm} is not a unit"));
    }
    Ok(v.act(lambda, convention))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(c: [f64; 4]) -> AlgebraElement {
        AlgebraElement::new(FieldTag::H, c).unwrap()
    }

    #[test]
    fn quaternion_table() {
        let [i, j, k] = [h([0., 1., 0., 0.]), h([0., 0., 1., 0.]), h([0., 0., 0., 1.])];
        assert_eq!(i.mul(&j), k);
        assert_eq!(j.mul(&k), i);
        assert_eq!(k.mul(&i), j);
        assert_eq!(j.mul(&i), k.scale(-1.0));
        assert_eq!(i.mul(&i), h([-1., 0., 0., 0.]));
        assert_eq!(i.mul_with(&j, Convention::LeftHanded), k.scale(-1.0));
    }

    #[test]
    fn complex_and_real_products() {
        let i = AlgebraElement::new(FieldTag::C, [0., 1., 0., 0.]).unwrap();
        assert_eq!(alg_mul(&i, &i).unwrap().coeffs(), &[-1., 0., 0., 0.]);
        let two = AlgebraElement::real(FieldTag::R, 2.0);
        let three = AlgebraElement::real(FieldTag::R, 3.0);
        assert_eq!(alg_mul(&two, &three).unwrap().coeffs()[0], 6.0);
    }

    #[test]
    fn tag_mismatch_is_rejected() {
        let x = AlgebraElement::real(FieldTag::R, 1.0);
        let y = AlgebraElement::real(FieldTag::C, 1.0);
        assert!(matches!(alg_mul(&x, &y), Err(GeometryError::Domain(_))));
        assert!(AlgebraElement::new(FieldTag::C, [1., 1., 1., 0.]).is_err());
    }

    #[test]
    fn conjugate_and_norm() {
        let (c, n) = alg_conj_norm2(&h([1., 2., 3., 4.]));
        assert_eq!(c.coeffs(), &[1., -2., -3., -4.]);
        assert_eq!(n, 30.0);
        let z = AlgebraElement::new(FieldTag::C, [3., 4., 0., 0.]).unwrap();
        let (c, n) = alg_conj_norm2(&z);
        assert_eq!(c.coeffs(), &[3., -4., 0., 0.]);
        assert_eq!(n, 25.0);
        let (c, n) = alg_conj_norm2(&AlgebraElement::real(FieldTag::R, -2.0));
        assert_eq!(c.coeffs()[0], -2.0);
        assert_eq!(n, 4.0);
        // x·x̄ is real
        let x = h([0.3, -1.2, 2.5, 0.7]);
        let p = x.mul(&x.conj());
        assert!(p.coeffs()[1..].iter().all(|c| c.abs() < 1e-15));
    }

    #[test]
    fn scalar_action_examples() {
        let c = |a: f64, b: f64| AlgebraElement::new(FieldTag::C, [a, b, 0., 0.]).unwrap();
        let v = HVector::new(FieldTag::C, vec![c(1., 0.), c(0., 1.)]).unwrap();
        let out = scalar_action(&c(0., 1.), &v).unwrap();
        assert_eq!(out.entries(), &[c(0., 1.), c(-1., 0.)]);
        assert_eq!(scalar_action(&AlgebraElement::one(FieldTag::C), &v).unwrap(), v);
        assert!(matches!(scalar_action(&c(2., 0.), &v), Err(GeometryError::Domain(_))));
    }

    #[test]
    fn real_coordinate_round_trip() {
        let coords = [1., 2., 3., 4., 5., 6.];
        let v = HVector::from_real_coords(FieldTag::C, &coords).unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v.to_real_coords(), coords);
        assert!(HVector::<f64>::from_real_coords(FieldTag::H, &coords).is_err());
    }

    #[test]
    fn field_metadata() {
        for f in FieldTag::ALL {
            if f != FieldTag::R {
                assert_eq!(f.dim_r() - 1, f.fiber_dim());
            }
            assert_eq!(f.imaginary_units().len(), f.fiber_dim());
            assert_eq!(f.to_string().parse::<FieldTag>().unwrap(), f);
        }
        assert_eq!(FieldTag::R.fiber_dim(), 0);
        assert!(FieldTag::R.is_subfield_of(FieldTag::H));
        assert!(!FieldTag::H.is_subfield_of(FieldTag::C));
    }
}
