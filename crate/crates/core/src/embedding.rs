//! The explicit embeddings: the linear product-sphere hypersurface and the
//! recursive maps `ι_n^F` of projective spaces, together with sampled base
//! points, fiber frames and horizontal frames.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Convention, FieldTag, HVector};
use crate::error::{domain, GeometryError, Result};
use crate::jet::{great_circle, Jet2, JetMap, JetVector};
use crate::linalg::{dot, norm, push_orthonormal, scaled};
use crate::scalar::Scalar;
use crate::special::ln_factorial;

/// Radius tolerance for points handed to the embeddings.
pub const RADIUS_TOLERANCE: f64 = 1e-10;

/// `S^k(r1) × S^{n−k}(r2) ⊂ S^{n+1}` with `r1² + r2² = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductSphereSpec {
    pub n: usize,
    pub k: usize,
    pub r1: f64,
}

impl ProductSphereSpec {
    pub fn new(n: usize, k: usize, r1: f64) -> Result<Self> {
        if n < 3 {
            return domain(format!("product dimension n = {n} must be at least 3"));
        }
        if k == 0 || k >= n {
            return domain(format!("factor dimension k = {k} must satisfy 1 <= k <= n-1"));
        }
        if !(r1 > 0.0 && r1 < 1.0) {
            return domain(format!("radius r1 = {r1} must lie in (0, 1)"));
        }
        Ok(Self { n, k, r1 })
    }

    /// The configuration `S^{n,k}` with `r1 = √(k/n)`.
    pub fn minimal(n: usize, k: usize) -> Result<Self> {
        Self::new(n, k, (k as f64 / n as f64).sqrt())
    }

    pub fn r2(&self) -> f64 {
        (1.0 - self.r1 * self.r1).sqrt()
    }

    pub fn is_minimal_configuration(&self) -> bool {
        (self.r1 - (self.k as f64 / self.n as f64).sqrt()).abs() < 1e-12
    }

    /// Length of the first factor's coordinate block.
    pub fn split(&self) -> usize {
        self.k + 1
    }

    pub fn ambient_len(&self) -> usize {
        self.n + 2
    }

    pub fn domain(&self) -> Domain {
        Domain::Product { split: self.split(), len: self.ambient_len(), r1: self.r1, r2: self.r2() }
    }
}

/// `P^n(F)`, presented as the quotient of `S(r_n) ⊂ F^{n+1}` by the unit group.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectiveSpec {
    pub field: FieldTag,
    pub n: usize,
    #[serde(default)]
    pub convention: Convention,
}

impl ProjectiveSpec {
    pub fn new(field: FieldTag, n: usize) -> Result<Self> {
        if n == 0 {
            return domain("projective dimension must be at least 1");
        }
        Ok(Self { field, n, convention: Convention::RightHanded })
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    /// Real dimension `n' = n·dim_R F`.
    pub fn real_dim(&self) -> usize {
        self.n * self.field.dim_r()
    }

    /// Real coordinates of the total space `F^{n+1}`.
    pub fn domain_len(&self) -> usize {
        (self.n + 1) * self.field.dim_r()
    }

    /// Dimension of the total-space sphere.
    pub fn total_space_dim(&self) -> usize {
        self.real_dim() + self.field.fiber_dim()
    }

    pub fn radius(&self) -> f64 {
        radius(self.n)
    }

    /// Target sphere dimension `L_n^F`.
    pub fn target_dim(&self) -> usize {
        target_dim_closed(self.field, self.n)
    }

    /// Codimension `p = L_n^F − n'` inside the target sphere.
    pub fn codimension(&self) -> usize {
        self.target_dim() - self.real_dim()
    }

    pub fn domain(&self) -> Domain {
        Domain::Sphere { len: self.domain_len(), radius: self.radius() }
    }
}

/// `r_n⁴ = ((n+1)/2)²·(n−1)!`
pub fn radius4(n: usize) -> f64 {
    assert!(n >= 1);
    (2.0 * ((n as f64 + 1.0) / 2.0).ln() + ln_factorial(n as u64 - 1)).exp()
}

pub fn radius(n: usize) -> f64 {
    radius4(n).powf(0.25)
}

/// Radius of the total-space sphere and, for `n >= 2`, the recursion constants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusConstants {
    pub r_n: f64,
    pub a: Option<f64>,
    pub b: Option<f64>,
}

/// `b² = 1/((n²−1)·r_{n−1}⁴)`, `a² = 2n(n+1)·b²`.
fn recursion_constants(n: usize) -> (f64, f64) {
    let nf = n as f64;
    let b2 = 1.0 / ((nf * nf - 1.0) * radius4(n - 1));
    let a2 = 2.0 * nf * (nf + 1.0) * b2;
    (a2.sqrt(), b2.sqrt())
}

/// The constants do not depend on the field; it is accepted for symmetry with
/// the rest of the atlas.
pub fn radius_and_constants(_field: FieldTag, n: usize) -> Result<RadiusConstants> {
    if n == 0 {
        return domain("r_n is defined for n >= 1");
    }
    let (a, b) = if n >= 2 {
        let (a, b) = recursion_constants(n);
        (Some(a), Some(b))
    } else {
        (None, None)
    };
    Ok(RadiusConstants { r_n: radius(n), a, b })
}

/// Closed forms `L^R = n(n+3)/2 − 1`, `L^C = (n+1)² − 2`, `L^H = (n+1)(2n+1) − 2`.
pub fn target_dim_closed(field: FieldTag, n: usize) -> usize {
    match field {
        FieldTag::R => n * (n + 3) / 2 - 1,
        FieldTag::C => (n + 1) * (n + 1) - 2,
        FieldTag::H => (n + 1) * (2 * n + 1) - 2,
    }
}

/// `L_1 = dim_R F`, `L_n = L_{n−1} + n·dim_R F + 1`.
pub fn target_dim_recursive(field: FieldTag, n: usize) -> usize {
    let d = field.dim_r();
    (2..=n).fold(d, |l, m| l + m * d + 1)
}

/// A point of the ambient Euclidean space of a target sphere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmbientPoint {
    pub coords: Vec<f64>,
}

impl AmbientPoint {
    pub fn norm(&self) -> f64 {
        norm(&self.coords)
    }
}

/// The linear embedding `(x1, x2) ↦ (x1, x2)`.
pub fn embed_product(spec: &ProductSphereSpec, x1: &[f64], x2: &[f64]) -> Result<AmbientPoint> {
    if x1.len() != spec.k + 1 || x2.len() != spec.n - spec.k + 1 {
        return domain(format!(
            "factor lengths ({}, {}) do not match S^{} x S^{}",
            x1.len(),
            x2.len(),
            spec.k,
            spec.n - spec.k
        ));
    }
    for (x, r, which) in [(x1, spec.r1, 1), (x2, spec.r2(), 2)] {
        if (norm(x) - r).abs() > RADIUS_TOLERANCE {
            return domain(format!("factor {which} has radius {} instead of {r}", norm(x)));
        }
    }
    Ok(AmbientPoint { coords: x1.iter().chain(x2).copied().collect() })
}

/// Evaluates `ι_n^F` on homogeneous coordinates; arbitrary (off-sphere) input is allowed.
pub fn iota(field: FieldTag, n: usize, v: &HVector) -> Result<AmbientPoint> {
    iota_with(&ProjectiveSpec::new(field, n)?, v)
}

pub fn iota_with(spec: &ProjectiveSpec, v: &HVector) -> Result<AmbientPoint> {
    if v.tag() != spec.field {
        return domain(format!("{}-vector passed to the {} embedding", v.tag(), spec.field));
    }
    if v.len() != spec.n + 1 {
        return domain(format!("ι_{} needs {} entries, got {}", spec.n, spec.n + 1, v.len()));
    }
    Ok(AmbientPoint { coords: iota_entries(spec.n, v.entries(), spec.convention) })
}

/// `ι_1(v) = (2 v̄_1 v_0, |v_0|² − |v_1|²)` and
/// `ι_n(v) = (ι_{n−1}(v'), a v̄_n v_0, …, a v̄_n v_{n−1}, b(Σ_{i<n}|v_i|² − n|v_n|²)) / √(n+1)`.
///
/// Every off-diagonal block is `v̄_n v_i` (conjugate on the left), so the map is
/// invariant under `v ↦ λv`.
pub fn iota_entries<T: Scalar>(n: usize, v: &[AlgebraElement<T>], convention: Convention) -> Vec<T> {
    debug_assert_eq!(v.len(), n + 1);
    if n == 1 {
        let cross = v[1].conj().mul_with(&v[0], convention);
        let mut out: Vec<T> = cross.components().iter().map(|c| c.scale(2.0)).collect();
        out.push(v[0].norm2() - v[1].norm2());
        return out;
    }
    let (a, b) = recursion_constants(n);
    let head = &v[..n];
    let last_bar = v[n].conj();
    let mut out = iota_entries(n - 1, head, convention);
    for vi in head {
        let block = last_bar.mul_with(vi, convention);
        out.extend(block.components().iter().map(|c| c.scale(a)));
    }
    let head_norm2 = head.iter().fold(T::zero(), |acc, e| acc + e.norm2());
    out.push((head_norm2 - v[n].norm2().scale(n as f64)).scale(b));
    let s = 1.0 / ((n + 1) as f64).sqrt();
    out.iter_mut().for_each(|c| *c = c.scale(s));
    out
}

/// Index injection realizing `S^{L_n^from} ⊂ S^{L_n^to}`: coordinate `m` of
/// `ι_n^from(v)` is coordinate `map[m]` of `ι_n^to(v)` for `v` with entries in
/// the smaller field; the other coordinates vanish.
pub fn inclusion_map(from: FieldTag, to: FieldTag, n: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return domain("projective dimension must be at least 1");
    }
    if !from.is_subfield_of(to) {
        return domain(format!("{from} is not contained in {to}"));
    }
    let (df, dt) = (from.dim_r(), to.dim_r());
    let mut map: Vec<usize> = (0..df).chain([dt]).collect();
    for m in 2..=n {
        let offset = target_dim_closed(to, m - 1) + 1;
        for i in 0..m {
            map.extend((0..df).map(|c| offset + i * dt + c));
        }
        map.push(offset + m * dt);
    }
    debug_assert_eq!(map.len(), target_dim_closed(from, n) + 1);
    Ok(map)
}

/// The domain of an embedding: a round sphere or a product of two round spheres,
/// both sitting in a Euclidean space of `len` coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    Sphere { len: usize, radius: f64 },
    Product { split: usize, len: usize, r1: f64, r2: f64 },
}

impl Domain {
    pub fn len(&self) -> usize {
        match *self {
            Domain::Sphere { len, .. } | Domain::Product { len, .. } => len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.len() {
            return false;
        }
        match *self {
            Domain::Sphere { radius, .. } => (norm(x) - radius).abs() <= tol,
            Domain::Product { split, r1, r2, .. } => {
                (norm(&x[..split]) - r1).abs() <= tol && (norm(&x[split..]) - r2).abs() <= tol
            }
        }
    }

    /// Largest normalized radial component of `w` at `base`.
    pub fn tangency_defect(&self, base: &[f64], w: &[f64]) -> f64 {
        let scale = norm(w).max(f64::MIN_POSITIVE);
        match *self {
            Domain::Sphere { radius, .. } => dot(base, w).abs() / (radius * scale),
            Domain::Product { split, r1, r2, .. } => {
                let d1 = dot(&base[..split], &w[..split]).abs() / r1;
                let d2 = dot(&base[split..], &w[split..]).abs() / r2;
                d1.max(d2) / scale
            }
        }
    }

    /// Geodesic through `base` with initial velocity `velocity`, to second order.
    /// On products this is the product of the factor great circles.
    pub fn geodesic(&self, base: &[f64], velocity: &[f64]) -> JetVector {
        match *self {
            Domain::Sphere { radius, .. } => great_circle(base, velocity, radius),
            Domain::Product { split, r1, r2, .. } => {
                let mut jets = great_circle(&base[..split], &velocity[..split], r1).0;
                jets.extend(great_circle(&base[split..], &velocity[split..], r2).0);
                JetVector(jets)
            }
        }
    }
}

/// Declarative description of an embedded manifold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EmbeddingSpec {
    Product(ProductSphereSpec),
    Projective(ProjectiveSpec),
}

impl EmbeddingSpec {
    pub fn domain(&self) -> Domain {
        match self {
            EmbeddingSpec::Product(p) => p.domain(),
            EmbeddingSpec::Projective(p) => p.domain(),
        }
    }

    /// Intrinsic dimension of the embedded manifold.
    pub fn manifold_dim(&self) -> usize {
        match self {
            EmbeddingSpec::Product(p) => p.n,
            EmbeddingSpec::Projective(p) => p.real_dim(),
        }
    }

    /// Number of coordinates of the target Euclidean space.
    pub fn target_len(&self) -> usize {
        match self {
            EmbeddingSpec::Product(p) => p.ambient_len(),
            EmbeddingSpec::Projective(p) => p.target_dim() + 1,
        }
    }

    /// Evaluates the embedding on domain coordinates over any scalar ring.
    pub fn eval<T: Scalar>(&self, x: &[T]) -> Vec<T> {
        match self {
            EmbeddingSpec::Product(_) => x.to_vec(),
            EmbeddingSpec::Projective(p) => {
                let d = p.field.dim_r();
                let entries: Vec<AlgebraElement<T>> =
                    x.chunks(d).map(|c| AlgebraElement::from_components(p.field, c)).collect();
                iota_entries(p.n, &entries, p.convention)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            EmbeddingSpec::Product(p) => format!("product(n={},k={},r1={})", p.n, p.k, p.r1),
            EmbeddingSpec::Projective(p) => format!("P^{}({})", p.n, p.field),
        }
    }
}

impl JetMap for EmbeddingSpec {
    fn input_dim(&self) -> usize {
        self.domain().len()
    }

    fn eval_jets(&self, x: &[Jet2]) -> Vec<Jet2> {
        self.eval(x)
    }
}

/// A base point with an orthonormal frame of the directions the embedded
/// manifold sees (`horizontal_frame`) and the collapsed group directions
/// (`fiber_frame`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FramePoint {
    pub base: Vec<f64>,
    pub horizontal_frame: Vec<Vec<f64>>,
    pub fiber_frame: Vec<Vec<f64>>,
}

impl FramePoint {
    pub fn dim(&self) -> usize {
        self.horizontal_frame.len()
    }

    /// `max |⟨e_i, e_j⟩ − δ_ij|` over the horizontal frame.
    pub fn orthonormality_defect(&self) -> f64 {
        let f = &self.horizontal_frame;
        let mut worst: f64 = 0.0;
        for i in 0..f.len() {
            for j in i..f.len() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot(&f[i], &f[j]) - target).abs());
            }
        }
        worst
    }
}

/// Per-point seeded generator.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

/// Uniform random point on the sphere of radius `radius` in `R^len`.
pub fn random_sphere_point<R: Rng + ?Sized>(rng: &mut R, len: usize, radius: f64) -> Vec<f64> {
    loop {
        let g = gaussian_vector(rng, len);
        let n = norm(&g);
        if n > 1e-8 {
            return scaled(&g, radius / n);
        }
    }
}

/// Random homogeneous coordinates on `S(r_n)`.
pub fn random_projective_point<R: Rng + ?Sized>(spec: &ProjectiveSpec, rng: &mut R) -> HVector {
    let coords = random_sphere_point(rng, spec.domain_len(), spec.radius());
    HVector::from_real_coords(spec.field, &coords).expect("length is a multiple of dim_R")
}

const MAX_COMPLETION_ATTEMPTS: usize = 1000;

/// Completes `basis` (already orthonormal) with random vectors until it has
/// `target` elements. Only vectors past `keep_from` are returned.
fn complete_randomly<R: Rng + ?Sized>(
    rng: &mut R,
    mut basis: Vec<Vec<f64>>,
    len: usize,
    target: usize,
    keep_from: usize,
) -> Result<Vec<Vec<f64>>> {
    let mut attempts = 0;
    while basis.len() < target {
        attempts += 1;
        if attempts > MAX_COMPLETION_ATTEMPTS {
            return Err(GeometryError::Internal("random frame completion did not converge".into()));
        }
        push_orthonormal(&mut basis, gaussian_vector(rng, len), 1e-6);
    }
    Ok(basis.split_off(keep_from))
}

/// Fiber directions `u·v/r_n` and a random orthonormal horizontal frame at `v`.
pub fn fiber_and_horizontal<R: Rng + ?Sized>(
    spec: &ProjectiveSpec,
    v: &HVector,
    rng: &mut R,
) -> Result<FramePoint> {
    frame_with_leading(spec, v, &[], rng)
}

/// Like [`fiber_and_horizontal`], but the horizontal frame starts with the
/// orthonormalization of `leading` (which must be horizontal).
pub fn frame_with_leading<R: Rng + ?Sized>(
    spec: &ProjectiveSpec,
    v: &HVector,
    leading: &[Vec<f64>],
    rng: &mut R,
) -> Result<FramePoint> {
    if v.tag() != spec.field || v.len() != spec.n + 1 {
        return domain(format!("point is not in {}^{}", spec.field, spec.n + 1));
    }
    let r = spec.radius();
    let base = v.to_real_coords();
    if (norm(&base) - r).abs() > RADIUS_TOLERANCE {
        return domain(format!("|v| = {} but the total space has radius {r}", norm(&base)));
    }
    let fiber_frame: Vec<Vec<f64>> = spec
        .field
        .imaginary_units()
        .iter()
        .map(|u| scaled(&v.act(u, spec.convention).to_real_coords(), 1.0 / r))
        .collect();
    let mut basis = vec![scaled(&base, 1.0 / r)];
    basis.extend(fiber_frame.iter().cloned());
    let keep_from = basis.len();
    for w in leading {
        if !push_orthonormal(&mut basis, w.clone(), 1e-6) {
            return domain("leading frame vector is not horizontal or is linearly dependent");
        }
        // the direction must already be horizontal, not merely independent
        let projected = &basis[basis.len() - 1];
        if dot(projected, w) < (1.0 - 1e-9) * norm(w) {
            return domain("leading frame vector has a vertical or radial component");
        }
    }
    let horizontal_frame = complete_randomly(
        rng,
        basis,
        spec.domain_len(),
        keep_from + spec.real_dim(),
        keep_from,
    )?;
    Ok(FramePoint { base, horizontal_frame, fiber_frame })
}

/// Random projective frame point, fully determined by `seed`.
pub fn projective_frame(spec: &ProjectiveSpec, seed: u64) -> Result<(HVector, FramePoint)> {
    let mut rng = rng_from_seed(seed);
    let v = random_projective_point(spec, &mut rng);
    let frame = fiber_and_horizontal(spec, &v, &mut rng)?;
    Ok((v, frame))
}

/// Random base point of `S^k(r1) × S^{n−k}(r2)` with `k` factor-1 directions
/// followed by `n−k` factor-2 directions.
pub fn product_frame(spec: &ProductSphereSpec, seed: u64) -> FramePoint {
    let mut rng = rng_from_seed(seed);
    let split = spec.split();
    let len = spec.ambient_len();
    let x1 = random_sphere_point(&mut rng, split, spec.r1);
    let x2 = random_sphere_point(&mut rng, len - split, spec.r2());
    let mut frame = Vec::with_capacity(spec.n);
    for (x, r, count) in [(&x1, spec.r1, spec.k), (&x2, spec.r2(), spec.n - spec.k)] {
        let block = complete_randomly(&mut rng, vec![scaled(x, 1.0 / r)], x.len(), count + 1, 1)
            .expect("factor tangent spaces are nondegenerate");
        frame.push(block);
    }
    let pad = |w: &Vec<f64>, first: bool| -> Vec<f64> {
        let mut out = vec![0.0; len];
        if first {
            out[..split].copy_from_slice(w);
        } else {
            out[split..].copy_from_slice(w);
        }
        out
    };
    let mut horizontal_frame: Vec<Vec<f64>> = frame[0].iter().map(|w| pad(w, true)).collect();
    horizontal_frame.extend(frame[1].iter().map(|w| pad(w, false)));
    let base = x1.into_iter().chain(x2).collect();
    FramePoint { base, horizontal_frame, fiber_frame: Vec::new() }
}
