//! Sampled measurement campaigns against the closed-form catalog.
//!
//! Every campaign returns a [`DiscrepancyLedger`] of [`InequalityRecord`]s.
//! Sampled points fan out over rayon with per-point seeds derived from the
//! campaign seed and the point index; results are collected in index order,
//! so ledgers do not depend on the number of worker threads.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Convention, FieldTag, HVector};
use crate::closed_forms::{
    a_n, aubin_and_simons, aubin_value, besse_comparison, catalog_alpha_scalar, f_profile, homothety_identity,
    appendix_part_a, appendix_part_b, product_geometry, product_yamabe, projective_closed_forms, bisect,
    InequalityRecord, Relation,
};
use crate::embedding::{
    gaussian_vector, inclusion_map, iota_with, product_frame, projective_frame, radius4, rng_from_seed,
    target_dim_closed, target_dim_recursive, EmbeddingSpec, ProductSphereSpec, ProjectiveSpec,
};
use crate::error::{domain, GeometryError, Result};
use crate::extrinsic::{measure, sample_planes, ExtrinsicReport};
use crate::jet::curve_jet;
use crate::linalg::{norm, scaled, sub};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Largest admissible `|H|`.
    pub mean_curvature: f64,
    /// Measured versus catalogued values.
    pub closed_form: f64,
    /// `|s_sum − s_gauss|`.
    pub gauss: f64,
    /// Relative error of the norm identity.
    pub norm_identity: f64,
    /// Unit-group invariance of `ι`.
    pub invariance: f64,
    /// First derivative of `ι` along fiber directions.
    pub fiber_collapse: f64,
    /// Inclusion commutativity.
    pub inclusion: f64,
    /// `max |gram − c·Id|`.
    pub conformal_defect: f64,
    /// Cross-convention agreement of sampled invariants.
    pub convention: f64,
    /// Numerical minimizer of `f_k` versus `r̄`.
    pub minimizer: f64,
    /// `f_k(√(k/n))` versus `n(n−2)`.
    pub endpoint: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            mean_curvature: 1e-8,
            closed_form: 1e-6,
            gauss: 1e-7,
            norm_identity: 1e-10,
            invariance: 1e-12,
            fiber_collapse: 1e-9,
            inclusion: 1e-14,
            conformal_defect: 1e-8,
            convention: 1e-8,
            minimizer: 1e-6,
            endpoint: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    /// Embedding to sample; parameter-sweep campaigns ignore it.
    pub target: Option<EmbeddingSpec>,
    pub samples: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl CampaignConfig {
    pub fn new(target: Option<EmbeddingSpec>, samples: usize, seed: u64) -> Self {
        Self { target, samples, seed, tolerances: Tolerances::default() }
    }

    pub fn for_target(target: EmbeddingSpec, samples: usize, seed: u64) -> Self {
        Self::new(Some(target), samples, seed)
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return domain("samples must be at least 1");
        }
        Ok(())
    }

    fn require_target(&self) -> Result<EmbeddingSpec> {
        self.validate()?;
        let target = self.target.ok_or_else(|| GeometryError::Domain("campaign needs a target embedding".into()))?;
        if let EmbeddingSpec::Projective(p) = target {
            check_cap(p.field, p.n)?;
        }
        Ok(target)
    }
}

/// Largest projective dimension sampled for each field.
pub fn sampling_cap(field: FieldTag) -> usize {
    match field {
        FieldTag::R => 6,
        FieldTag::C => 4,
        FieldTag::H => 3,
    }
}

fn check_cap(field: FieldTag, n: usize) -> Result<()> {
    if n > sampling_cap(field) {
        return domain(format!(
            "P^{n}({field}) is beyond the sampling cap n <= {}",
            sampling_cap(field)
        ));
    }
    Ok(())
}

/// Every `(F, n)` within the sampling caps.
pub fn sampled_projective_specs() -> Vec<ProjectiveSpec> {
    FieldTag::ALL
        .iter()
        .flat_map(|&f| (1..=sampling_cap(f)).map(move |n| ProjectiveSpec::new(f, n).expect("n >= 1")))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LedgerSummary {
    /// Largest `|lhs − rhs|` over value comparisons; zero when there are none.
    pub max_abs_error: f64,
    /// Record with the smallest margin, as `name[params]`.
    pub worst_case: String,
    pub pass_count: usize,
    pub fail_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyLedger {
    pub campaign: String,
    pub records: Vec<InequalityRecord>,
    pub summary: LedgerSummary,
}

impl DiscrepancyLedger {
    pub fn new(campaign: impl Into<String>, records: Vec<InequalityRecord>) -> Result<Self> {
        let campaign = campaign.into();
        if records.is_empty() {
            return Err(GeometryError::Internal(format!("campaign {campaign} produced no records")));
        }
        let pass_count = records.iter().filter(|r| r.pass).count();
        let max_abs_error = records
            .iter()
            .filter(|r| matches!(r.relation, Relation::ApproxEq { .. }))
            .map(|r| if r.abs_error().is_nan() { f64::INFINITY } else { r.abs_error() })
            .fold(0.0, f64::max);
        let worst = records
            .iter()
            .min_by(|a, b| {
                let key = |r: &InequalityRecord| if r.margin.is_nan() { f64::NEG_INFINITY } else { r.margin };
                key(a).total_cmp(&key(b))
            })
            .expect("nonempty");
        let summary = LedgerSummary {
            max_abs_error,
            worst_case: format!("{}[{}]", worst.name, worst.params),
            pass_count,
            fail_count: records.len() - pass_count,
        };
        Ok(Self { campaign, records, summary })
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail_count == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &InequalityRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    /// Records whose name starts with `prefix`.
    pub fn named<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a InequalityRecord> + 'a {
        self.records.iter().filter(move |r| r.name.starts_with(prefix))
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of sample `index` in a campaign seeded with `seed`.
pub fn point_seed(seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ index)
}

fn stream_seed(seed: u64, spec: &ProjectiveSpec, salt: u64) -> u64 {
    let field = spec.field.dim_r() as u64;
    point_seed(seed, (salt << 32) | (field << 16) | spec.n as u64)
}

/// Evaluates `per_point` for every sample index in parallel and concatenates
/// the records in index order.
fn fan_out<F>(samples: usize, seed: u64, per_point: F) -> Vec<InequalityRecord>
where
    F: Fn(usize, u64) -> Vec<InequalityRecord> + Sync,
{
    (0..samples)
        .into_par_iter()
        .map(|i| per_point(i, point_seed(seed, i as u64)))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn error_record(name: &str, params: String, err: &GeometryError) -> InequalityRecord {
    InequalityRecord::new(name, params, f64::NAN, 0.0, Relation::ApproxEq { tol: 0.0 }).with_note(err.to_string())
}

fn measure_target(target: &EmbeddingSpec, seed: u64) -> Result<ExtrinsicReport> {
    match target {
        EmbeddingSpec::Product(p) => measure(target, &product_frame(p, seed)),
        EmbeddingSpec::Projective(p) => {
            let (_, frame) = projective_frame(p, seed)?;
            measure(target, &frame)
        }
    }
}

fn gauss_record(report: &ExtrinsicReport, params: &str, tol: f64) -> InequalityRecord {
    InequalityRecord::new("gauss_identity", params, report.scalar_sum, report.scalar_gauss, Relation::ApproxEq { tol })
}

/// `|H| < tol` at every sampled point, with the Gauss identity alongside.
pub fn campaign_minimality(config: &CampaignConfig) -> Result<DiscrepancyLedger> {
    let target = config.require_target()?;
    let tol = config.tolerances;
    let label = target.label();
    let records = fan_out(config.samples, config.seed, |i, seed| {
        let params = format!("{label};point={i}");
        match measure_target(&target, seed) {
            Ok(r) => vec![
                InequalityRecord::new("mean_curvature_norm", &params, r.mean_curvature_norm(), tol.mean_curvature, Relation::Lt)
                    .with_note(format!("h_norm2={:e}", r.mean_curvature_norm2)),
                gauss_record(&r, &params, tol.gauss),
            ],
            Err(e) => vec![error_record("mean_curvature_norm", params, &e)],
        }
    });
    DiscrepancyLedger::new(format!("minimality:{label}"), records)
}

/// Measured `|H|², |α|², s, K_real, K_hol` against the catalog at every
/// sampled point; projective targets also record the pullback factor.
pub fn campaign_closed_form_match(config: &CampaignConfig) -> Result<DiscrepancyLedger> {
    let target = config.require_target()?;
    let tol = config.tolerances;
    let label = target.label();
    let approx = Relation::ApproxEq { tol: tol.closed_form };
    let records = match target {
        EmbeddingSpec::Product(spec) => {
            let cat = product_geometry(&spec);
            fan_out(config.samples, config.seed, |i, seed| {
                let params = format!("{label};point={i}");
                match measure(&target, &product_frame(&spec, seed)) {
                    Ok(r) => vec![
                        InequalityRecord::new("h_norm2", &params, r.mean_curvature_norm2, cat.entries["h_norm2"], approx),
                        InequalityRecord::new("alpha_norm2", &params, r.alpha_norm2, cat.entries["alpha_norm2"], approx),
                        InequalityRecord::new("scalar", &params, r.scalar_sum, cat.entries["scalar"], approx),
                        gauss_record(&r, &params, tol.gauss),
                    ],
                    Err(e) => vec![error_record("measurement", params, &e)],
                }
            })
        }
        EmbeddingSpec::Projective(spec) => {
            let cat = projective_closed_forms(spec.field, spec.n)?;
            fan_out(config.samples, config.seed, |i, seed| {
                let params = format!("{label};point={i}");
                projective_match_point(&spec, &cat, seed, &params, &tol).unwrap_or_else(|e| vec![error_record("measurement", params, &e)])
            })
        }
    };
    DiscrepancyLedger::new(format!("closed_form_match:{label}"), records)
}

fn projective_match_point(
    spec: &ProjectiveSpec,
    cat: &crate::closed_forms::ClosedFormReport,
    seed: u64,
    params: &str,
    tol: &Tolerances,
) -> Result<Vec<InequalityRecord>> {
    let approx = Relation::ApproxEq { tol: tol.closed_form };
    let (report, holomorphic, real) = if spec.field == FieldTag::R && spec.n == 1 {
        (measure_target(&EmbeddingSpec::Projective(*spec), seed)?, Vec::new(), None)
    } else {
        let p = sample_planes(spec, seed)?;
        (p.report, p.holomorphic, p.totally_real)
    };
    let mut out = vec![
        InequalityRecord::new("h_norm2", params, report.mean_curvature_norm2, 0.0, approx),
        InequalityRecord::new("alpha_norm2", params, report.alpha_norm2, cat.value("alpha_norm2")?, approx),
        InequalityRecord::new("scalar", params, report.scalar_sum, cat.value("scalar")?, approx),
        gauss_record(&report, params, tol.gauss),
        InequalityRecord::new("conformal_defect", params, report.conformal_defect, tol.conformal_defect, Relation::Lt),
        InequalityRecord::new(
            "pullback_factor",
            params,
            report.conformal_factor,
            cat.value("pullback_factor_expected")?,
            approx,
        ),
    ];
    if let (Some(k), Some(expected)) = (real, cat.get("k_real")) {
        out.push(InequalityRecord::new("k_real", params, k, expected, approx));
    }
    if let Some(expected) = cat.get("k_hol") {
        for (u, k) in holomorphic.iter().enumerate() {
            out.push(InequalityRecord::new(format!("k_hol[{u}]"), params, *k, expected, approx));
        }
    }
    if let (Some(k), Some(first)) = (real, holomorphic.first()) {
        out.push(InequalityRecord::new("k_hol_over_k_real", params, first / k, 4.0, approx));
    }
    for k in holomorphic.iter().skip(1) {
        out.push(InequalityRecord::new("k_hol_isotropy", params, *k, holomorphic[0], Relation::ApproxEq { tol: tol.mean_curvature }));
    }
    Ok(out)
}

fn random_hvector<R: Rng + ?Sized>(rng: &mut R, field: FieldTag, n: usize) -> HVector {
    let scale = rng.random_range(-2.0f64..2.0).exp();
    let coords = scaled(&gaussian_vector(rng, (n + 1) * field.dim_r()), scale);
    HVector::from_real_coords(field, &coords).expect("length is a multiple of dim_R")
}

fn random_unit<R: Rng + ?Sized>(rng: &mut R, field: FieldTag) -> AlgebraElement {
    let g = gaussian_vector(rng, field.dim_r());
    let g = scaled(&g, 1.0 / norm(&g));
    let mut c = [0.0; 4];
    c[..g.len()].copy_from_slice(&g);
    AlgebraElement::new(field, c).expect("padded")
}

fn identity_records(spec: &ProjectiveSpec, config: &CampaignConfig) -> Result<Vec<InequalityRecord>> {
    let tol = config.tolerances;
    let params = format!("field={};n={}", spec.field, spec.n);
    let mut rng = rng_from_seed(stream_seed(config.seed, spec, 1));
    let r4 = radius4(spec.n);

    let mut norm_err: f64 = 0.0;
    for _ in 0..config.samples {
        let v = random_hvector(&mut rng, spec.field, spec.n);
        let lhs = iota_with(spec, &v)?.norm().powi(2) * r4;
        let rhs = v.norm2().powi(2);
        norm_err = norm_err.max((lhs - rhs).abs() / rhs);
    }

    let mut invariance: f64 = 0.0;
    let mut collapse: f64 = 0.0;
    let mut conv_spec = *spec;
    for convention in [Convention::RightHanded, Convention::LeftHanded] {
        conv_spec.convention = convention;
        let embedding = EmbeddingSpec::Projective(conv_spec);
        for s in 0..config.samples.min(100) {
            let (v, frame) = projective_frame(&conv_spec, point_seed(stream_seed(config.seed, spec, 2), s as u64))?;
            let lambda = random_unit(&mut rng, spec.field);
            let moved = iota_with(&conv_spec, &v.act(&lambda, convention))?;
            let here = iota_with(&conv_spec, &v)?;
            invariance = invariance.max(norm(&sub(&moved.coords, &here.coords)));
            for u in &frame.fiber_frame {
                let d = curve_jet(&embedding, &embedding.domain().geodesic(&frame.base, u))?;
                collapse = collapse.max(norm(&d.d1));
            }
        }
    }

    let mut out = vec![
        InequalityRecord::new("norm_identity", &params, norm_err, tol.norm_identity, Relation::Lt)
            .with_note(format!("max relative error over {} vectors", config.samples)),
        InequalityRecord::new("unit_invariance", &params, invariance, tol.invariance, Relation::Le),
        InequalityRecord::new("ladder", &params, target_dim_recursive(spec.field, spec.n) as f64, target_dim_closed(spec.field, spec.n) as f64, Relation::ApproxEq { tol: 0.0 }),
    ];
    if spec.field != FieldTag::R {
        out.push(InequalityRecord::new("fiber_collapse", &params, collapse, tol.fiber_collapse, Relation::Le));
    }
    if spec.field == FieldTag::H {
        let seed = stream_seed(config.seed, spec, 3);
        let right = measure_target(&EmbeddingSpec::Projective(spec.with_convention(Convention::RightHanded)), seed)?;
        let left = measure_target(&EmbeddingSpec::Projective(spec.with_convention(Convention::LeftHanded)), seed)?;
        let rel = Relation::ApproxEq { tol: tol.convention };
        out.push(InequalityRecord::new("convention_alpha_norm2", &params, left.alpha_norm2, right.alpha_norm2, rel));
        out.push(InequalityRecord::new("convention_scalar", &params, left.scalar_sum, right.scalar_sum, rel));
    }
    Ok(out)
}

/// Largest deviation of `ι^to ∘ include` from `ι^from` over random vectors.
pub fn inclusion_defect(from: FieldTag, to: FieldTag, n: usize, samples: usize, seed: u64) -> Result<f64> {
    let map = inclusion_map(from, to, n)?;
    let small = ProjectiveSpec::new(from, n)?;
    let big = ProjectiveSpec::new(to, n)?;
    let mut rng = rng_from_seed(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let v = random_hvector(&mut rng, from, n);
        let lifted: Vec<AlgebraElement> = v.entries().iter().map(|e| e.include(to)).collect::<Result<_>>()?;
        let image_small = iota_with(&small, &v)?.coords;
        let mut image_big = iota_with(&big, &HVector::new(to, lifted)?)?.coords;
        for (m, &j) in map.iter().enumerate() {
            worst = worst.max((image_big[j] - image_small[m]).abs());
            image_big[j] = 0.0;
        }
        worst = worst.max(image_big.iter().fold(0.0f64, |a, c| a.max(c.abs())));
    }
    Ok(worst)
}

/// Norm identity, unit-group invariance, fiber collapse, convention
/// independence, inclusion commutativity and the dimension ladder.
pub fn campaign_algebraic_identities(config: &CampaignConfig) -> Result<DiscrepancyLedger> {
    config.validate()?;
    let tol = config.tolerances;
    let specs = sampled_projective_specs();
    let mut records: Vec<InequalityRecord> = specs
        .par_iter()
        .map(|spec| identity_records(spec, config))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let pairs = [(FieldTag::R, FieldTag::C), (FieldTag::C, FieldTag::H), (FieldTag::R, FieldTag::H)];
    for (p, (from, to)) in pairs.iter().enumerate() {
        for n in 1..=4 {
            let seed = point_seed(config.seed, ((p as u64 + 10) << 32) | n as u64);
            let defect = inclusion_defect(*from, *to, n, config.samples.min(500), seed)?;
            records.push(InequalityRecord::new(
                "inclusion",
                format!("from={from};to={to};n={n}"),
                defect,
                tol.inclusion,
                Relation::Le,
            ));
        }
    }
    for field in FieldTag::ALL {
        for n in (sampling_cap(field) + 1)..=12 {
            records.push(InequalityRecord::new(
                "ladder",
                format!("field={field};n={n}"),
                target_dim_recursive(field, n) as f64,
                target_dim_closed(field, n) as f64,
                Relation::ApproxEq { tol: 0.0 },
            ));
        }
    }
    DiscrepancyLedger::new("algebraic_identities", records)
}

/// Projective dimension ranges of the comparison-lemma sweep.
pub fn appendix_range(field: FieldTag) -> std::ops::RangeInclusive<usize> {
    match field {
        FieldTag::R => 3..=30,
        FieldTag::C => 2..=20,
        FieldTag::H => 2..=15,
    }
}

/// Closed-form sweeps: the comparison lemma, Aubin dominance, Simons
/// thresholds, the Besse comparison, `a_n < 2` and the homothety bound.
pub fn campaign_inequalities(n_max: usize) -> Result<DiscrepancyLedger> {
    if n_max < 4 {
        return domain("n_max must be at least 4");
    }
    let mut records: Vec<InequalityRecord> = (3..=n_max)
        .into_par_iter()
        .map(|n| -> Result<Vec<InequalityRecord>> {
            let mut out = Vec::new();
            let nf = n as f64;
            for k in 1..n {
                out.extend(appendix_part_a(n, k)?);
                out.push(InequalityRecord::new(
                    "aubin_dominance",
                    format!("n={n};k={k}"),
                    product_yamabe(n, k),
                    aubin_value(n),
                    Relation::Lt,
                ));
                if (2..=n - 2).contains(&k) && n != 2 * k {
                    out.push(besse_comparison(n, k)?);
                }
            }
            out.push(InequalityRecord::new("a_n_below_two", format!("n={n}"), a_n(n), 2.0, Relation::Lt));
            let bound = (1.0 + a_n(n)) * nf;
            let (lo, hi) = (nf * (nf - 2.0), nf * (nf - 1.0));
            for step in 0..=10 {
                let s = lo + (hi - lo) * step as f64 / 10.0;
                let h = homothety_identity(n, 0.0, nf * (nf - 1.0) - s, 0.0)?;
                out.push(InequalityRecord::new(
                    "homothety_bound",
                    format!("n={n};s={s}"),
                    h.forced_alpha2prime,
                    bound,
                    Relation::Le,
                ));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    for field in FieldTag::ALL {
        for n in appendix_range(field) {
            if n > n_max {
                break;
            }
            records.extend(appendix_part_b(field, n)?);
        }
        for n in 1..=*appendix_range(field).end().min(&n_max) {
            let nprime = n * field.dim_r();
            let p = target_dim_closed(field, n) - nprime;
            if p == 0 || (field == FieldTag::R && n == 2) {
                continue;
            }
            let (alpha, _) = catalog_alpha_scalar(field, n);
            let threshold = aubin_and_simons(nprime, p)?.threshold.expect("p >= 1");
            records.push(InequalityRecord::new(
                "simons_threshold",
                format!("field={field};n={n};p={p}"),
                alpha,
                threshold,
                Relation::Gt,
            ));
        }
    }
    DiscrepancyLedger::new(format!("inequalities:n_max={n_max}"), records)
}

/// Grid analysis of `f_k` on `(0, 1)`: endpoint identity, minimizer, unique
/// critical point and monotonicity past `√(k/n)`.
pub fn campaign_fk(n: usize, k: usize, grid: usize) -> Result<DiscrepancyLedger> {
    if n < 4 || k < 2 || k > n - 2 {
        return domain(format!("need 2 <= k <= n-2, got n={n}, k={k}"));
    }
    if grid < 10 {
        return domain("grid must have at least 10 points");
    }
    let tol = Tolerances::default();
    let (nf, kf) = (n as f64, k as f64);
    let params = format!("n={n};k={k};grid={grid}");
    let rs: Vec<f64> = (1..grid).map(|i| i as f64 / grid as f64).collect();
    let profile: Vec<_> = rs.iter().map(|&r| f_profile(n, k, r)).collect::<Result<_>>()?;

    let endpoint = f_profile(n, k, (kf / nf).sqrt())?.f;
    let r_bar = ((kf - 1.0) / (nf - 2.0)).sqrt();

    let imin = (0..profile.len()).min_by(|&a, &b| profile[a].f.total_cmp(&profile[b].f)).expect("grid");
    let lo = rs[imin.saturating_sub(1)];
    let hi = rs[(imin + 1).min(rs.len() - 1)];
    let df = |r: f64| f_profile(n, k, r).map(|p| p.df).unwrap_or(f64::NAN);
    let minimizer = bisect(df, lo, hi, 1e-15)?;

    let sign_changes = profile.windows(2).filter(|w| (w[0].df < 0.0) != (w[1].df < 0.0)).count();

    // past √(k/n) only the smaller factor index is increasing; the other case
    // is the same manifold with the factors swapped
    let kk = k.min(n - k);
    let start = (kk as f64 / nf).sqrt();
    let tail: Vec<f64> = rs
        .iter()
        .filter(|&&r| r >= start)
        .map(|&r| f_profile(n, kk, r).map(|p| p.f))
        .collect::<Result<_>>()?;
    let descents = tail.windows(2).filter(|w| w[1] < w[0]).count();

    let mut mono = InequalityRecord::new("fk_monotone_tail", &params, descents as f64, 0.0, Relation::ApproxEq { tol: 0.0 });
    if kk != k {
        mono = mono.with_note(format!("checked as f_{kk} on [sqrt({kk}/{n}), 1)"));
    }
    let records = vec![
        InequalityRecord::new("fk_endpoint", &params, endpoint, nf * (nf - 2.0), Relation::ApproxEq { tol: tol.endpoint }),
        InequalityRecord::new("fk_minimizer", &params, minimizer, r_bar, Relation::ApproxEq { tol: tol.minimizer }),
        InequalityRecord::new("fk_critical_points", &params, sign_changes as f64, 1.0, Relation::ApproxEq { tol: 0.0 }),
        mono,
    ];
    DiscrepancyLedger::new(format!("fk:n={n};k={k}"), records)
}

/// `f_k` campaigns for every `2 <= k <= n−2`, `4 <= n <= n_max`.
pub fn campaign_fk_sweep(n_max: usize, grid: usize) -> Result<DiscrepancyLedger> {
    let pairs: Vec<(usize, usize)> = (4..=n_max).flat_map(|n| (2..=n - 2).map(move |k| (n, k))).collect();
    let records = pairs
        .par_iter()
        .map(|&(n, k)| campaign_fk(n, k, grid).map(|l| l.records))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    DiscrepancyLedger::new(format!("fk_sweep:n_max={n_max}"), records)
}

/// Minimal product configuration as an embedding target.
pub fn minimal_product(n: usize, k: usize) -> Result<EmbeddingSpec> {
    Ok(EmbeddingSpec::Product(ProductSphereSpec::minimal(n, k)?))
}
