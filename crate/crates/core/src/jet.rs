//! Second-order truncated Taylor arithmetic in one curve parameter.
//!
//! A [`Jet2`] `(a0, a1, a2)` stands for `a0 + a1·t + a2·t²` modulo `t³`, so
//! evaluating a smooth map on jets yields its value together with exact first
//! and second derivatives along a curve.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{domain, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Jet2 {
    /// Value.
    pub a0: f64,
    /// First derivative.
    pub a1: f64,
    /// Half the second derivative.
    pub a2: f64,
}

impl Jet2 {
    pub const fn new(a0: f64, a1: f64, a2: f64) -> Self {
        Self { a0, a1, a2 }
    }

    /// The curve parameter itself, lifted at `t0`.
    pub const fn variable(t0: f64) -> Self {
        Self::new(t0, 1.0, 0.0)
    }

    pub fn d1(&self) -> f64 {
        self.a1
    }

    pub fn d2(&self) -> f64 {
        2.0 * self.a2
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        if rhs.a0 == 0.0 {
            return domain("jet division by a zero value slot");
        }
        let z0 = self.a0 / rhs.a0;
        let z1 = (self.a1 - z0 * rhs.a1) / rhs.a0;
        let z2 = (self.a2 - z0 * rhs.a2 - z1 * rhs.a1) / rhs.a0;
        Ok(Self::new(z0, z1, z2))
    }

    /// Square root; the value slot must be positive.
    pub fn checked_sqrt(self) -> Result<Self> {
        if self.a0 <= 0.0 {
            return domain(format!("jet sqrt of nonpositive value {}", self.a0));
        }
        let z0 = self.a0.sqrt();
        let z1 = self.a1 / (2.0 * z0);
        let z2 = (self.a2 - z1 * z1) / (2.0 * z0);
        Ok(Self::new(z0, z1, z2))
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.a0.sin_cos();
        Self::new(s, c * self.a1, c * self.a2 - 0.5 * s * self.a1 * self.a1)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.a0.sin_cos();
        Self::new(c, -s * self.a1, -s * self.a2 - 0.5 * c * self.a1 * self.a1)
    }
}

impl Add for Jet2 {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a0 + rhs.a0, self.a1 + rhs.a1, self.a2 + rhs.a2)
    }
}

impl Sub for Jet2 {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a0 - rhs.a0, self.a1 - rhs.a1, self.a2 - rhs.a2)
    }
}

impl Neg for Jet2 {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.a0, -self.a1, -self.a2)
    }
}

impl Mul for Jet2 {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.a0 * rhs.a0,
            self.a0 * rhs.a1 + self.a1 * rhs.a0,
            self.a0 * rhs.a2 + self.a1 * rhs.a1 + self.a2 * rhs.a0,
        )
    }
}

impl Scalar for Jet2 {
    #[inline]
    fn constant(c: f64) -> Self {
        Self::new(c, 0.0, 0.0)
    }

    #[inline]
    fn value(&self) -> f64 {
        self.a0
    }

    #[inline]
    fn scale(self, c: f64) -> Self {
        Self::new(c * self.a0, c * self.a1, c * self.a2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum JetOp {
    Add,
    Sub,
    Mul,
    Div,
    Sqrt,
    Scale(f64),
}

/// Applies one truncated-Taylor operation. Binary operations require `y`.
pub fn jet_arith(op: JetOp, x: Jet2, y: Option<Jet2>) -> Result<Jet2> {
    let rhs = || y.ok_or_else(|| crate::GeometryError::Domain(format!("{op:?} needs two operands")));
    match op {
        JetOp::Add => Ok(x + rhs()?),
        JetOp::Sub => Ok(x - rhs()?),
        JetOp::Mul => Ok(x * rhs()?),
        JetOp::Div => x.checked_div(rhs()?),
        JetOp::Sqrt => x.checked_sqrt(),
        JetOp::Scale(c) => Ok(x.scale(c)),
    }
}

/// A fixed-length vector of jets: a curve through a point, to second order.
#[derive(Clone, Debug, PartialEq)]
pub struct JetVector(pub Vec<Jet2>);

impl JetVector {
    pub fn constant(point: &[f64]) -> Self {
        Self(point.iter().map(|&c| Jet2::constant(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Jet2] {
        &self.0
    }

    pub fn values(&self) -> Vec<f64> {
        self.0.iter().map(|j| j.a0).collect()
    }

    pub fn first(&self) -> Vec<f64> {
        self.0.iter().map(Jet2::d1).collect()
    }

    pub fn second(&self) -> Vec<f64> {
        self.0.iter().map(Jet2::d2).collect()
    }
}

/// The great circle of the sphere of radius `radius` through `base` with
/// initial velocity `velocity` (tangent, any speed), as a jet at `t = 0`.
pub fn great_circle(base: &[f64], velocity: &[f64], radius: f64) -> JetVector {
    let speed = velocity.iter().map(|v| v * v).sum::<f64>().sqrt();
    if speed == 0.0 {
        return JetVector::constant(base);
    }
    let angle = Jet2::variable(0.0).scale(speed / radius);
    let (c, s) = (angle.cos(), angle.sin());
    let reach = radius / speed;
    JetVector(
        base.iter()
            .zip(velocity)
            .map(|(&p, &w)| c.scale(p) + s.scale(reach * w))
            .collect(),
    )
}

/// A smooth map between Euclidean spaces that can be evaluated on jets.
pub trait JetMap {
    fn input_dim(&self) -> usize;
    fn eval_jets(&self, x: &[Jet2]) -> Vec<Jet2>;
}

/// Adapter turning a closure into a [`JetMap`].
pub struct FnMap<F> {
    pub dim: usize,
    pub f: F,
}

impl<F: Fn(&[Jet2]) -> Vec<Jet2>> JetMap for FnMap<F> {
    fn input_dim(&self) -> usize {
        self.dim
    }

    fn eval_jets(&self, x: &[Jet2]) -> Vec<Jet2> {
        (self.f)(x)
    }
}

/// Value and derivatives of `map ∘ curve` at `t = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveDerivatives {
    pub value: Vec<f64>,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
}

pub fn curve_jet<M: JetMap + ?Sized>(map: &M, curve: &JetVector) -> Result<CurveDerivatives> {
    if curve.len() != map.input_dim() {
        return domain(format!(
            "curve has {} coordinates, map expects {}",
            curve.len(),
            map.input_dim()
        ));
    }
    let out = JetVector(map.eval_jets(curve.as_slice()));
    Ok(CurveDerivatives { value: out.values(), d1: out.first(), d2: out.second() })
}
