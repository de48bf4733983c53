//! Measured extrinsic and intrinsic geometry of an embedded submanifold of the
//! unit sphere at a sampled frame point.
//!
//! Derivatives come from second-order jets along domain geodesics. The second
//! fundamental form is relative to the unit ambient sphere: Euclidean second
//! derivatives are projected off the position vector and the image tangent
//! space. All curvature quantities refer to the induced metric, evaluated in
//! the gram-orthonormalized frame.

use nalgebra::DMatrix;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{FieldTag, HVector};
use crate::embedding::{frame_with_leading, gaussian_vector, Domain, EmbeddingSpec, FramePoint, ProjectiveSpec};
use crate::error::{domain, GeometryError, Result};
use crate::jet::{curve_jet, JetMap};
use crate::linalg::{add, axpy, dot, norm, project_out, push_orthonormal, scaled, sub};

/// Maximum admissible normalized radial component of a frame vector.
pub const TANGENCY_TOLERANCE: f64 = 1e-9;
/// Maximum admissible `| |ι(p)| − 1 |`.
pub const SPHERE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtrinsicReport {
    /// Image point `ι(p)`.
    pub image: Vec<f64>,
    /// `⟨dι(e_i), dι(e_j)⟩` on the supplied frame.
    pub gram: Vec<Vec<f64>>,
    /// Mean diagonal of the gram matrix.
    pub conformal_factor: f64,
    /// `max |gram − c·Id|`.
    pub conformal_defect: f64,
    /// `α(ê_i, ê_j)` in the gram-orthonormalized frame.
    pub alpha: Vec<Vec<Vec<f64>>>,
    pub mean_curvature: Vec<f64>,
    pub mean_curvature_norm2: f64,
    pub alpha_norm2: f64,
    /// `K_ij = 1 + ⟨α_ii, α_jj⟩ − |α_ij|²`; the diagonal is zero.
    pub sectional: Vec<Vec<f64>>,
    /// `m(m−1) + |H|² − |α|²`
    pub scalar_gauss: f64,
    /// `Σ_{i≠j} K_ij`
    pub scalar_sum: f64,
    /// Largest normalized component of any `α_ij` along the image point or
    /// image tangent space.
    pub normal_defect: f64,
}

impl ExtrinsicReport {
    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn mean_curvature_norm(&self) -> f64 {
        self.mean_curvature_norm2.sqrt()
    }

    pub fn gauss_residual(&self) -> f64 {
        (self.scalar_sum - self.scalar_gauss).abs()
    }

    /// Largest asymmetry `|α_ij − α_ji|`; zero by construction.
    pub fn alpha_asymmetry(&self) -> f64 {
        let m = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..m {
            for j in 0..m {
                let d = sub(&self.alpha[i][j], &self.alpha[j][i]);
                worst = worst.max(norm(&d));
            }
        }
        worst
    }
}

/// Measures the embedding at `point`.
pub fn measure(embedding: &EmbeddingSpec, point: &FramePoint) -> Result<ExtrinsicReport> {
    measure_with(embedding, embedding.domain(), point)
}

/// Measures an arbitrary jet-evaluable map defined on `domain`.
pub fn measure_with<M: JetMap + ?Sized>(
    map: &M,
    domain_: Domain,
    point: &FramePoint,
) -> Result<ExtrinsicReport> {
    let frame = &point.horizontal_frame;
    let m = frame.len();
    if m == 0 {
        return domain("empty frame");
    }
    if !domain_.contains(&point.base, 1e-10) {
        return domain("base point is not on the domain");
    }
    for (i, e) in frame.iter().enumerate() {
        if e.len() != domain_.len() || domain_.tangency_defect(&point.base, e) > TANGENCY_TOLERANCE {
            return domain(format!("frame vector {i} is not tangent to the domain"));
        }
    }

    // second derivative along the geodesic with velocity w; quadratic in w
    let along = |w: &[f64]| curve_jet(map, &domain_.geodesic(&point.base, w));

    let mut tangents = Vec::with_capacity(m);
    let mut diag = Vec::with_capacity(m);
    let mut image = Vec::new();
    for e in frame {
        let d = along(e)?;
        image = d.value;
        tangents.push(d.d1);
        diag.push(d.d2);
    }
    let radius = norm(&image);
    if (radius - 1.0).abs() > SPHERE_TOLERANCE {
        return domain(format!("image point has norm {radius}, not on the unit sphere"));
    }

    let mut hessian = vec![vec![Vec::new(); m]; m];
    for i in 0..m {
        hessian[i][i] = diag[i].clone();
        for j in (i + 1)..m {
            let both = along(&add(&frame[i], &frame[j]))?.d2;
            let mixed = scaled(&sub(&sub(&both, &diag[i]), &diag[j]), 0.5);
            hessian[j][i] = mixed.clone();
            hessian[i][j] = mixed;
        }
    }

    let gram = DMatrix::from_fn(m, m, |i, j| dot(&tangents[i], &tangents[j]));
    let conformal_factor = gram.trace() / m as f64;
    let conformal_defect = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| {
            let target = if i == j { conformal_factor } else { 0.0 };
            (gram[(i, j)] - target).abs()
        })
        .fold(0.0, f64::max);

    let chol = gram
        .clone()
        .cholesky()
        .ok_or_else(|| GeometryError::DegenerateFrame("induced metric is not positive definite".into()))?;
    let l_inv = chol
        .l()
        .try_inverse()
        .ok_or_else(|| GeometryError::DegenerateFrame("induced metric is singular".into()))?;

    // orthonormal basis of span{image} ⊕ image tangent space
    let mut span = vec![scaled(&image, 1.0 / radius)];
    for t in &tangents {
        if !push_orthonormal(&mut span, t.clone(), 1e-10) {
            return Err(GeometryError::DegenerateFrame("pushed-forward frame is rank deficient".into()));
        }
    }

    let len = image.len();
    let mut alpha = vec![vec![vec![0.0; len]; m]; m];
    for a in 0..m {
        for b in a..m {
            let mut v = vec![0.0; len];
            for i in 0..m {
                for j in 0..m {
                    let c = l_inv[(a, i)] * l_inv[(b, j)];
                    if c != 0.0 {
                        axpy(c, &hessian[i][j], &mut v);
                    }
                }
            }
            project_out(&mut v, &span);
            alpha[b][a] = v.clone();
            alpha[a][b] = v;
        }
    }

    let mut normal_defect: f64 = 0.0;
    for row in &alpha {
        for v in row {
            let scale = norm(v).max(1.0);
            normal_defect = normal_defect.max(dot(v, &image).abs() / (radius * scale));
            for t in &tangents {
                normal_defect = normal_defect.max(dot(v, t).abs() / (norm(t) * scale));
            }
        }
    }

    let mut mean_curvature = vec![0.0; len];
    for (a, row) in alpha.iter().enumerate() {
        axpy(1.0, &row[a], &mut mean_curvature);
    }
    let mean_curvature_norm2 = dot(&mean_curvature, &mean_curvature);
    let alpha_norm2: f64 = alpha.iter().flatten().map(|v| dot(v, v)).sum();

    let mut sectional = vec![vec![0.0; m]; m];
    let mut scalar_sum = 0.0;
    for i in 0..m {
        for j in 0..m {
            if i != j {
                let k = 1.0 + dot(&alpha[i][i], &alpha[j][j]) - dot(&alpha[i][j], &alpha[i][j]);
                sectional[i][j] = k;
                scalar_sum += k;
            }
        }
    }
    let mf = m as f64;
    let scalar_gauss = mf * (mf - 1.0) + mean_curvature_norm2 - alpha_norm2;

    Ok(ExtrinsicReport {
        image,
        gram: (0..m).map(|i| (0..m).map(|j| gram[(i, j)]).collect()).collect(),
        conformal_factor,
        conformal_defect,
        alpha,
        mean_curvature,
        mean_curvature_norm2,
        alpha_norm2,
        sectional,
        scalar_gauss,
        scalar_sum,
        normal_defect,
    })
}

/// Ricci curvature `Σ_{j≠i} K_ij` in frame direction `i`.
pub fn ricci_direction(report: &ExtrinsicReport, i: usize) -> f64 {
    report.sectional[i].iter().enumerate().filter(|&(j, _)| j != i).map(|(_, k)| k).sum()
}

/// Partners of a unit horizontal vector `e` for plane sampling.
#[derive(Clone, Debug, PartialEq)]
pub struct HolomorphicPlane {
    /// `u·e` for each imaginary unit `u` (one for C, three for H).
    pub holomorphic: Vec<Vec<f64>>,
    /// A unit horizontal `f ⟂ {e, u·e}`, spanning a totally real plane with `e`.
    pub totally_real: Option<Vec<f64>>,
}

/// Holomorphic partners of `e` and, when `want_real`, a totally real partner.
pub fn holomorphic_plane<R: Rng + ?Sized>(
    spec: &ProjectiveSpec,
    v: &HVector,
    e: &[f64],
    want_real: bool,
    rng: &mut R,
) -> Result<HolomorphicPlane> {
    if spec.field == FieldTag::R {
        return Err(GeometryError::Unavailable("real projective space has no complex structure".into()));
    }
    if want_real && spec.n < 2 {
        return Err(GeometryError::Unavailable(format!(
            "P^1({}) has no totally real plane",
            spec.field
        )));
    }
    let d = spec.field.dim_r();
    let e_vec = HVector::from_real_coords(spec.field, e)?;
    if e_vec.len() != spec.n + 1 {
        return domain("direction has the wrong length");
    }
    let holomorphic: Vec<Vec<f64>> = spec
        .field
        .imaginary_units()
        .iter()
        .map(|u| e_vec.act(u, spec.convention).to_real_coords())
        .collect();
    let totally_real = if want_real {
        let r = spec.radius();
        let base = v.to_real_coords();
        let mut basis = vec![scaled(&base, 1.0 / r)];
        for u in spec.field.imaginary_units() {
            push_orthonormal(&mut basis, v.act(&u, spec.convention).to_real_coords(), 1e-8);
        }
        push_orthonormal(&mut basis, e.to_vec(), 1e-8);
        for w in &holomorphic {
            push_orthonormal(&mut basis, w.clone(), 1e-8);
        }
        if basis.len() != 2 * d {
            return domain("direction is not a horizontal vector");
        }
        let mut f = None;
        for _ in 0..100 {
            if push_orthonormal(&mut basis, gaussian_vector(rng, spec.domain_len()), 1e-6) {
                f = basis.pop();
                break;
            }
        }
        Some(f.ok_or_else(|| GeometryError::Internal("could not sample a totally real partner".into()))?)
    } else {
        None
    };
    Ok(HolomorphicPlane { holomorphic, totally_real })
}

/// Sectional curvatures of holomorphic planes `(e, u·e)` and, when one
/// exists, of a totally real plane `(e, f)` at a random point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlaneCurvatures {
    pub holomorphic: Vec<f64>,
    pub totally_real: Option<f64>,
    pub report: ExtrinsicReport,
}

/// Samples `v`, a horizontal unit `e`, its partners, and measures with a frame
/// whose leading vectors are `e, u·e…, f`.
pub fn sample_planes(spec: &ProjectiveSpec, seed: u64) -> Result<PlaneCurvatures> {
    let mut rng = crate::embedding::rng_from_seed(seed);
    let v = crate::embedding::random_projective_point(spec, &mut rng);
    let plain = frame_with_leading(spec, &v, &[], &mut rng)?;
    let e = plain.horizontal_frame[0].clone();
    let embedding = EmbeddingSpec::Projective(*spec);

    if spec.field == FieldTag::R {
        if spec.n < 2 {
            return Err(GeometryError::Unavailable("P^1(R) has no 2-planes".into()));
        }
        let report = measure(&embedding, &plain)?;
        let k = report.sectional[0][1];
        return Ok(PlaneCurvatures { holomorphic: Vec::new(), totally_real: Some(k), report });
    }

    let plane = holomorphic_plane(spec, &v, &e, spec.n >= 2, &mut rng)?;
    let mut leading = vec![e];
    leading.extend(plane.holomorphic.iter().cloned());
    leading.extend(plane.totally_real.iter().cloned());
    let frame = frame_with_leading(spec, &v, &leading, &mut rng)?;
    let report = measure(&embedding, &frame)?;
    let holomorphic = (1..=plane.holomorphic.len()).map(|j| report.sectional[0][j]).collect();
    let totally_real = plane.totally_real.as_ref().map(|_| report.sectional[0][plane.holomorphic.len() + 1]);
    Ok(PlaneCurvatures { holomorphic, totally_real, report })
}
