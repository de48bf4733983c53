//! Closed-form catalog: product spheres, the scalar curvature profile `f_k`,
//! the embedded projective spaces, Yamabe and sigma values, the Aubin and
//! Simons bounds, and the inequality chains of the scalar curvature
//! comparison lemma.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::FieldTag;
use crate::embedding::{radius, radius4, target_dim_closed, ProductSphereSpec};
use crate::error::{domain, GeometryError, Result};
use crate::special::{ln_factorial, ln_sphere_volume};

/// Slack used when deciding whether a relation holds.
pub const MARGIN_EPS: f64 = 1e-12;

/// `ω_n`, the volume of the unit round `S^n`.
pub fn sphere_volume(n: usize) -> f64 {
    crate::special::sphere_volume(n as u32)
}

fn ln_omega(n: usize) -> f64 {
    ln_sphere_volume(n as u32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportContext {
    Product,
    Projective,
    Appendix,
    Sigma,
}

/// Named closed-form values for one configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormReport {
    pub context: ReportContext,
    pub label: String,
    pub params: String,
    pub entries: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ClosedFormReport {
    fn new(context: ReportContext, label: impl Into<String>, params: impl Into<String>) -> Self {
        Self { context, label: label.into(), params: params.into(), entries: BTreeMap::new(), notes: Vec::new() }
    }

    fn set(&mut self, name: &str, value: f64) {
        debug_assert!(value.is_finite(), "{name} = {value}");
        self.entries.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries.get(name).copied()
    }

    /// Value of a required entry.
    pub fn value(&self, name: &str) -> Result<f64> {
        self.get(name)
            .ok_or_else(|| GeometryError::Unavailable(format!("{} has no entry {name}", self.label)))
    }

    pub fn all_finite(&self) -> bool {
        self.entries.values().all(|v| v.is_finite())
    }

    /// `|s − (dim(dim−1) + |H|² − |α|²)|` when all four entries are present.
    pub fn gauss_residual(&self) -> Option<f64> {
        let m = self.get("dim")?;
        let s = self.get("scalar")?;
        let h2 = self.get("h_norm2")?;
        let a2 = self.get("alpha_norm2")?;
        Some((s - (m * (m - 1.0) + h2 - a2)).abs())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Lt,
    Le,
    Gt,
    Ge,
    ApproxEq { tol: f64 },
}

impl Relation {
    /// Signed margin, positive when the relation holds.
    pub fn margin(&self, lhs: f64, rhs: f64) -> f64 {
        match *self {
            Relation::Lt | Relation::Le => rhs - lhs,
            Relation::Gt | Relation::Ge => lhs - rhs,
            Relation::ApproxEq { tol } => tol - (lhs - rhs).abs(),
        }
    }

    pub fn holds(&self, margin: f64) -> bool {
        if !margin.is_finite() {
            return false;
        }
        match self {
            Relation::Lt | Relation::Gt => margin > MARGIN_EPS,
            Relation::Le | Relation::Ge => margin >= -MARGIN_EPS,
            Relation::ApproxEq { .. } => margin >= 0.0,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Lt => f.write_str("<"),
            Relation::Le => f.write_str("<="),
            Relation::Gt => f.write_str(">"),
            Relation::Ge => f.write_str(">="),
            Relation::ApproxEq { tol } => write!(f, "~({tol:e})"),
        }
    }
}

/// One checked relation `lhs ⋈ rhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityRecord {
    pub name: String,
    pub params: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub margin: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl InequalityRecord {
    pub fn new(name: impl Into<String>, params: impl Into<String>, lhs: f64, rhs: f64, relation: Relation) -> Self {
        let margin = relation.margin(lhs, rhs);
        Self {
            name: name.into(),
            params: params.into(),
            lhs,
            rhs,
            relation,
            margin,
            pass: relation.holds(margin),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Absolute discrepancy `|lhs − rhs|`.
    pub fn abs_error(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

/// Root of `f` in `[lo, hi]` by bisection; `f(lo)` and `f(hi)` must differ in sign.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return domain(format!("no sign change on [{lo}, {hi}]"));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n < 3 || k == 0 || k >= n {
        return domain(format!("need n >= 3 and 1 <= k <= n-1, got n={n}, k={k}"));
    }
    Ok(())
}

/// `ln((k/n)^{k/2}((n−k)/n)^{(n−k)/2} ω_k ω_{n−k})`, the log volume of `S^{n,k}`.
fn ln_product_volume(n: usize, k: usize) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    0.5 * kf * (kf / nf).ln() + 0.5 * (nf - kf) * ((nf - kf) / nf).ln() + ln_omega(k) + ln_omega(n - k)
}

/// `μ(S^{n,k})`.
pub fn product_volume(n: usize, k: usize) -> f64 {
    ln_product_volume(n, k).exp()
}

/// `λ(S^{n,k}) = n(n−2) μ(S^{n,k})^{2/n}`.
pub fn product_yamabe(n: usize, k: usize) -> f64 {
    let nf = n as f64;
    nf * (nf - 2.0) * (2.0 / nf * ln_product_volume(n, k)).exp()
}

/// `n(n−1)ω_n^{2/n}`, the round-sphere value.
pub fn aubin_value(n: usize) -> f64 {
    let nf = n as f64;
    nf * (nf - 1.0) * (2.0 / nf * ln_omega(n)).exp()
}

/// Values for `S^k(r1) × S^{n−k}(r2) ⊂ S^{n+1}`.
pub fn product_geometry(spec: &ProductSphereSpec) -> ClosedFormReport {
    let (n, k) = (spec.n, spec.k);
    let (nf, kf) = (n as f64, k as f64);
    let (r1, r2) = (spec.r1, spec.r2());
    let (t, u) = (r2 / r1, r1 / r2);
    let mut rep = ClosedFormReport::new(
        ReportContext::Product,
        format!("S^{k}({r1}) x S^{}({r2})", n - k),
        format!("n={n};k={k};r1={r1}"),
    );
    rep.set("dim", nf);
    rep.set("omega_k", sphere_volume(k));
    rep.set("omega_n_minus_k", sphere_volume(n - k));
    rep.set("volume", sphere_volume(k) * sphere_volume(n - k) * r1.powi(k as i32) * r2.powi((n - k) as i32));
    rep.set("h_norm2", kf * kf * t * t - 2.0 * kf * (nf - kf) + (nf - kf) * (nf - kf) * u * u);
    rep.set("alpha_norm2", kf * t * t + (nf - kf) * u * u);
    rep.set("scalar", kf * (kf - 1.0) / (r1 * r1) + (nf - kf) * (nf - kf - 1.0) / (r2 * r2));
    rep.set("ricci_infimum", ((kf - 1.0) / (r1 * r1)).min((nf - kf - 1.0) / (r2 * r2)));
    rep.set("lambda_minimal_configuration", product_yamabe(n, k));
    rep.set("aubin", aubin_value(n));
    if (2..=n - 2).contains(&k) {
        rep.set("sigma", product_yamabe(n, k));
        if let Ok(e) = einstein_data(n, k) {
            rep.set("einstein_radius", e.r_bar);
            rep.set("einstein_volume", e.mu_einstein);
            rep.set("lambda_einstein", e.lambda_einstein());
        }
    } else {
        rep.set("sigma", aubin_value(n));
    }
    if !spec.is_minimal_configuration() {
        rep.notes.push("not the minimal configuration r1 = sqrt(k/n)".into());
    }
    rep
}

/// Einstein product radius and volumes for `S^k × S^{n−k}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EinsteinData {
    pub n: usize,
    pub k: usize,
    /// `√((k−1)/(n−2))`
    pub r_bar: f64,
    pub mu_einstein: f64,
    pub mu_product: f64,
    /// `n = 2k`: the Einstein metric is the minimal configuration.
    pub equality: bool,
}

impl EinsteinData {
    /// `((k−x)/(n−2x))^{k/2}((n−k−x)/(n−2x))^{(n−k)/2}`, `x ∈ [0, 1]`.
    pub fn ratio(&self, x: f64) -> f64 {
        let (nf, kf) = (self.n as f64, self.k as f64);
        let d = nf - 2.0 * x;
        (0.5 * kf * ((kf - x) / d).ln() + 0.5 * (nf - kf) * ((nf - kf - x) / d).ln()).exp()
    }

    /// `n(n−2) μ_E^{2/n}`
    pub fn lambda_einstein(&self) -> f64 {
        let nf = self.n as f64;
        nf * (nf - 2.0) * self.mu_einstein.powf(2.0 / nf)
    }

    /// `λ(S^{n,k})`
    pub fn lambda_product(&self) -> f64 {
        product_yamabe(self.n, self.k)
    }
}

pub fn einstein_data(n: usize, k: usize) -> Result<EinsteinData> {
    check_nk(n, k)?;
    if k < 2 || k > n - 2 {
        return domain(format!("Einstein products need 2 <= k <= n-2, got n={n}, k={k}"));
    }
    let (nf, kf) = (n as f64, k as f64);
    let mut e = EinsteinData {
        n,
        k,
        r_bar: ((kf - 1.0) / (nf - 2.0)).sqrt(),
        mu_einstein: 0.0,
        mu_product: product_volume(n, k),
        equality: n == 2 * k,
    };
    e.mu_einstein = e.ratio(1.0) * sphere_volume(k) * sphere_volume(n - k);
    Ok(e)
}

/// Normalized scalar curvature of the product metric of radii `(r, √(1−r²))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FProfile {
    pub f: f64,
    /// `df/dr`
    pub df: f64,
    /// `(ω_k ω_{n−k} / μ(S^{n,k}))^{2/n}`
    pub omega: f64,
}

pub fn f_profile(n: usize, k: usize, r: f64) -> Result<FProfile> {
    check_nk(n, k)?;
    if !(r > 0.0 && r < 1.0) {
        return domain(format!("r = {r} must lie in (0, 1)"));
    }
    let (nf, kf) = (n as f64, k as f64);
    let omega = (2.0 / nf * (ln_omega(k) + ln_omega(n - k) - ln_product_volume(n, k))).exp();
    let q = (1.0 - r * r) / (r * r);
    let first = q.powf((nf - kf) / nf);
    let second = q.recip().powf(kf / nf);
    let f = (kf * (kf - 1.0) * first + (nf - kf) * (nf - kf - 1.0) * second) * omega;
    let df = 2.0 * kf * (nf - kf) / (r * (1.0 - r * r) * nf)
        * ((nf - kf - 1.0) * second - (kf - 1.0) * first)
        * omega;
    Ok(FProfile { f, df, omega })
}

/// Minimizer of `f_k` on `(0, 1)`, located by bisection on `f_k'`.
pub fn f_minimizer(n: usize, k: usize) -> Result<f64> {
    check_nk(n, k)?;
    if k < 2 || k > n - 2 {
        return domain("f_k has an interior critical point only for 2 <= k <= n-2");
    }
    let df = |r: f64| f_profile(n, k, r).map(|p| p.df).unwrap_or(f64::NAN);
    bisect(df, 1e-6, 1.0 - 1e-9, 1e-15)
}

/// `K^{n,R} = 1/(2^{2/n} r_n²)` as catalogued.
pub fn catalog_k_real(n: usize) -> f64 {
    1.0 / ((2.0f64).powf(2.0 / n as f64) * radius(n).powi(2))
}

/// Catalogued volume of the embedded `P^n(F)`, in log form.
fn ln_catalog_volume(field: FieldTag, n: usize) -> f64 {
    let nf = n as f64;
    let ln_t = 2.0 / nf * 2f64.ln() + 0.5 * radius4(n).ln();
    match field {
        FieldTag::R => ln_omega(n) + 0.25 * nf * radius4(n).ln(),
        FieldTag::C => nf * ln_t + nf * PI.ln() - ln_factorial(n as u64),
        FieldTag::H => 2.0 * nf * ln_t + 2.0 * nf * PI.ln() - ln_factorial(2 * n as u64 + 1),
    }
}

pub fn catalog_volume(field: FieldTag, n: usize) -> f64 {
    ln_catalog_volume(field, n).exp()
}

/// `(2^{2/n})^{n'/2} · vol S(r_n) / vol(fiber)`, with fibers `S^0`, `S^1(r_n)`, `S^3(r_n)`.
pub fn fibration_volume(field: FieldTag, n: usize) -> f64 {
    let d = field.dim_r();
    let nprime = (n * d) as f64;
    let ln_r = 0.25 * radius4(n).ln();
    let total = n * d + d - 1;
    let ln_total = ln_omega(total) + total as f64 * ln_r;
    let ln_fiber = ln_omega(d - 1) + (d - 1) as f64 * ln_r;
    (nprime / n as f64 * 2f64.ln() + ln_total - ln_fiber).exp()
}

/// `(|α|², s)` as catalogued.
pub fn catalog_alpha_scalar(field: FieldTag, n: usize) -> (f64, f64) {
    let nf = n as f64;
    let k = catalog_k_real(n);
    let nprime = nf * field.dim_r() as f64;
    let s = match field {
        FieldTag::R => nf * (nf - 1.0) * k,
        FieldTag::C => 4.0 * nf * (nf + 1.0) * k,
        FieldTag::H => 16.0 * nf * (nf + 2.0) * k,
    };
    let alpha = match field {
        FieldTag::R => nf * (nf - 1.0) * (1.0 - k),
        FieldTag::C => 2.0 * nf * (2.0 * nf - 1.0) * (1.0 - 2.0 * (nf + 1.0) / (2.0 * nf - 1.0) * k),
        FieldTag::H => 4.0 * nf * (4.0 * nf - 1.0) * (1.0 - 4.0 * (nf + 2.0) / (4.0 * nf - 1.0) * k),
    };
    debug_assert!((s - (nprime * (nprime - 1.0) - alpha)).abs() <= 1e-9 * s.abs().max(1.0));
    (alpha, s)
}

/// Yamabe invariant of the embedded projective space, defined for
/// `n >= 3` over R, `n >= 2` over C and `n >= 1` over H.
pub fn projective_sigma(field: FieldTag, n: usize) -> Option<f64> {
    let nf = n as f64;
    match field {
        FieldTag::R if n >= 3 => Some(nf * (nf - 1.0) / 2f64.powf(2.0 / nf) * (2.0 / nf * ln_omega(n)).exp()),
        FieldTag::C if n >= 2 => {
            Some(4.0 * nf * (nf + 1.0) * ((nf * PI.ln() - ln_factorial(n as u64)) / nf).exp())
        }
        FieldTag::H if n >= 1 => Some(
            16.0 * nf * (nf + 2.0) * ((2.0 * nf * PI.ln() - ln_factorial(2 * n as u64 + 1)) / (2.0 * nf)).exp(),
        ),
        _ => None,
    }
}

/// Catalog entries for `ι_n^F(P^n(F)) ⊂ S^{L_n^F}`.
pub fn projective_closed_forms(field: FieldTag, n: usize) -> Result<ClosedFormReport> {
    if n == 0 {
        return domain("projective dimension must be at least 1");
    }
    let nprime = n * field.dim_r();
    let mut rep = ClosedFormReport::new(ReportContext::Projective, format!("P^{n}({field})"), format!("field={field};n={n}"));
    let (alpha, s) = catalog_alpha_scalar(field, n);
    let target = target_dim_closed(field, n);
    let p = target - nprime;
    rep.set("dim", nprime as f64);
    rep.set("target_dim", target as f64);
    rep.set("codimension", p as f64);
    rep.set("radius", radius(n));
    rep.set("volume", catalog_volume(field, n));
    rep.set("h_norm2", 0.0);
    rep.set("alpha_norm2", alpha);
    rep.set("scalar", s);
    rep.set("pullback_factor_expected", 2f64.powf(2.0 / n as f64));
    let k = catalog_k_real(n);
    if n >= 2 {
        rep.set("k_real", k);
    } else {
        rep.notes.push("no totally real planes".into());
    }
    if field != FieldTag::R {
        rep.set("k_hol", 4.0 * k);
    }
    let bounds = aubin_and_simons(nprime, p)?;
    rep.set("aubin", bounds.aubin);
    if let Some(t) = bounds.threshold {
        rep.set("simons_threshold", t);
    } else {
        rep.notes.push("codimension zero: Simons threshold undefined".into());
    }
    if let Some(sigma) = projective_sigma(field, n) {
        rep.set("lambda", sigma);
        rep.set("sigma", sigma);
    }
    Ok(rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AubinSimons {
    pub aubin: f64,
    /// `n'p/(2p−1)`; absent in codimension zero.
    pub threshold: Option<f64>,
}

pub fn aubin_and_simons(nprime: usize, p: usize) -> Result<AubinSimons> {
    if nprime == 0 {
        return domain("dimension must be positive");
    }
    let threshold = (p >= 1).then(|| (nprime * p) as f64 / (2 * p - 1) as f64);
    Ok(AubinSimons { aubin: aubin_value(nprime), threshold })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomothetyIdentity {
    /// `(n'(n'−1) + H2 − A2) − (n'(n'−1) − A2')·e^{2/n'}`
    pub residual: f64,
    /// The `A2'` that makes the residual vanish.
    pub forced_alpha2prime: f64,
}

pub fn homothety_identity(nprime: usize, h2: f64, a2: f64, a2prime: f64) -> Result<HomothetyIdentity> {
    if nprime == 0 {
        return domain("dimension must be positive");
    }
    for (name, v) in [("H2", h2), ("A2", a2), ("A2prime", a2prime)] {
        if !v.is_finite() || v < 0.0 {
            return domain(format!("{name} = {v} must be finite and nonnegative"));
        }
    }
    let m = nprime as f64;
    let base = m * (m - 1.0);
    let grow = (2.0 / m).exp();
    Ok(HomothetyIdentity {
        residual: (base + h2 - a2) - (base - a2prime) * grow,
        forced_alpha2prime: base - (base + h2 - a2) / grow,
    })
}

/// `a_n = (n−2)(1 − e^{−2/n})`
pub fn a_n(n: usize) -> f64 {
    let nf = n as f64;
    (nf - 2.0) * (1.0 - (-2.0 / nf).exp())
}

/// `c_{n,k} = (ω_n / μ(S^{n,k}))^{2/n} / (n−2)`
pub fn c_nk(n: usize, k: usize) -> f64 {
    let nf = n as f64;
    (2.0 / nf * (ln_omega(n) - ln_product_volume(n, k))).exp() / (nf - 2.0)
}

/// Records for the product-sphere half of the comparison lemma.
pub fn appendix_part_a(n: usize, k: usize) -> Result<Vec<InequalityRecord>> {
    check_nk(n, k)?;
    let nf = n as f64;
    let params = format!("n={n};k={k}");
    let c = c_nk(n, k);
    let x = c * (nf - 2.0);
    let decay = (-2.0 / nf).exp();
    let defining = (nf * (nf - 1.0) * (1.0 - decay * x) - nf) / nf;
    let displayed = (nf - 2.0) * (1.0 - c * decay);
    let a = a_n(n);
    let reading = "n' read as n";
    Ok(vec![
        InequalityRecord::new("appendix_a_c_positive", &params, c, 0.0, Relation::Gt),
        InequalityRecord::new("appendix_a_c_below_one", &params, c, 1.0, Relation::Lt),
        InequalityRecord::new("appendix_a_b_defining[exp=n]", &params, defining, a, Relation::Ge),
        InequalityRecord::new("appendix_a_b_defining[exp=n']", &params, defining, a, Relation::Ge).with_note(reading),
        InequalityRecord::new("appendix_a_b_displayed[exp=n]", &params, displayed, a, Relation::Ge),
        InequalityRecord::new("appendix_a_b_displayed[exp=n']", &params, displayed, a, Relation::Ge).with_note(reading),
        InequalityRecord::new("appendix_a_b_displayed_positive", &params, displayed, 0.0, Relation::Gt),
    ])
}

/// Records for the projective half of the comparison lemma.
pub fn appendix_part_b(field: FieldTag, n: usize) -> Result<Vec<InequalityRecord>> {
    if n < 2 {
        return domain("the projective comparison needs n >= 2");
    }
    let nf = n as f64;
    let d = field.dim_r();
    let np = (n * d) as f64;
    let params = format!("field={field};n={n}");
    let (alpha, s) = catalog_alpha_scalar(field, n);
    let ln_x = 2.0 / np * (ln_omega(n * d) - ln_catalog_volume(field, n));
    let decay = (-2.0 / np).exp();
    let defining = (np * (np - 1.0) * (1.0 - decay * ln_x.exp()) - alpha) / alpha;
    let a_nprime = s / alpha * (1.0 - decay);
    let a_n_exp = s / alpha * (1.0 - (-2.0 / nf).exp());
    let displayed_factor = match field {
        FieldTag::R => 2f64.powf(2.0 / nf) / (nf * (nf - 1.0)),
        FieldTag::C => {
            let ln_q = (2.0 * PI).ln() + ln_omega(2 * n) - ln_omega(2 * n + 1);
            (2.0 / np * ln_q).exp() / (4.0 * nf * (nf + 1.0))
        }
        FieldTag::H => {
            let ln_q = (2.0 * PI * PI).ln() + ln_omega(4 * n) - ln_omega(4 * n + 3);
            (2.0 / np * ln_q).exp() / (16.0 * nf * (nf + 2.0))
        }
    };
    let displayed = s / alpha * (1.0 - decay * displayed_factor);
    Ok(vec![
        InequalityRecord::new("appendix_b_defining[exp=n']", &params, defining, a_nprime, Relation::Ge),
        InequalityRecord::new("appendix_b_defining[exp=n]", &params, defining, a_n_exp, Relation::Ge),
        InequalityRecord::new("appendix_b_displayed", &params, displayed, a_nprime, Relation::Ge),
    ])
}

/// Comparison-lemma records: part (a) when `k` is given, part (b) when `field` is given.
pub fn appendix_ledger(n: usize, k: Option<usize>, field: Option<FieldTag>) -> Result<Vec<InequalityRecord>> {
    if k.is_none() && field.is_none() {
        return domain("give k for the product part or a field for the projective part");
    }
    let mut out = Vec::new();
    if let Some(k) = k {
        out.extend(appendix_part_a(n, k)?);
    }
    if let Some(f) = field {
        out.extend(appendix_part_b(f, n)?);
    }
    Ok(out)
}

fn sigma_report(label: String, params: String, dim: usize, sigma: f64) -> ClosedFormReport {
    let mut rep = ClosedFormReport::new(ReportContext::Sigma, label, params);
    let aubin = aubin_value(dim);
    rep.set("dim", dim as f64);
    rep.set("sigma", sigma);
    rep.set("aubin", aubin);
    rep.set("ratio_to_aubin", sigma / aubin);
    rep
}

/// Sigma values of every catalogued manifold of dimension `3..=max_n`.
pub fn sigma_table(max_n: usize) -> Vec<ClosedFormReport> {
    let mut out = Vec::new();
    for dim in 3..=max_n {
        out.push(sigma_report(format!("S^1xS^{}", dim - 1), format!("n={dim};k=1"), dim, aubin_value(dim)));
        for k in 2..=dim / 2 {
            out.push(sigma_report(
                format!("S^{k}xS^{}", dim - k),
                format!("n={dim};k={k}"),
                dim,
                product_yamabe(dim, k),
            ));
        }
        for field in FieldTag::ALL {
            let d = field.dim_r();
            if dim % d != 0 {
                continue;
            }
            let n = dim / d;
            if let Some(sigma) = projective_sigma(field, n) {
                out.push(sigma_report(format!("{field}P^{n}"), format!("field={field};n={n}"), dim, sigma));
            }
        }
    }
    out
}

/// `λ_Einstein < σ` for `S^k × S^{n−k}`.
pub fn besse_comparison(n: usize, k: usize) -> Result<InequalityRecord> {
    if n == 2 * k {
        return domain("n = 2k is the equality case");
    }
    let e = einstein_data(n, k)?;
    let ratio = e.lambda_einstein() / e.lambda_product();
    Ok(InequalityRecord::new("besse", format!("n={n};k={k}"), e.lambda_einstein(), e.lambda_product(), Relation::Lt)
        .with_note(format!("ratio={ratio:.8}")))
}

/// `r(S^{n,k}) = ((k−1)/k)·n` after arranging `k <= n/2`.
pub fn ricci_infimum_product(n: usize, k: usize) -> Result<f64> {
    check_nk(n, k)?;
    let k = k.min(n - k) as f64;
    Ok((k - 1.0) / k * n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn sphere_volumes() {
        assert!(close(sphere_volume(1), 2.0 * PI, 1e-14));
        assert!(close(sphere_volume(2), 4.0 * PI, 1e-14));
        assert!(close(sphere_volume(4), 8.0 * PI * PI / 3.0, 1e-13));
    }

    #[test]
    fn clifford_product_values() {
        let rep = product_geometry(&ProductSphereSpec::minimal(4, 2).unwrap());
        assert!(close(rep.value("h_norm2").unwrap(), 0.0, 1e-13));
        assert!(close(rep.value("alpha_norm2").unwrap(), 4.0, 1e-13));
        assert!(close(rep.value("scalar").unwrap(), 8.0, 1e-13));
        assert!(close(rep.value("sigma").unwrap(), 16.0 * PI, 1e-12));
        assert!(rep.gauss_residual().unwrap() < 1e-12);

        let rep = product_geometry(&ProductSphereSpec::new(3, 1, 0.6).unwrap());
        assert!(close(rep.value("h_norm2").unwrap(), 1.0 / 36.0, 1e-13));
        assert!(close(rep.value("alpha_norm2").unwrap(), 2.902_777_777_777_778, 1e-12));
        assert!(close(rep.value("scalar").unwrap(), 3.125, 1e-13));
        assert!(rep.gauss_residual().unwrap() < 1e-12);
        assert_eq!(rep.notes.len(), 1);
    }

    #[test]
    fn minimal_products_have_alpha_n() {
        for n in 3..20 {
            for k in 1..n {
                let rep = product_geometry(&ProductSphereSpec::minimal(n, k).unwrap());
                assert!(close(rep.value("alpha_norm2").unwrap(), n as f64, 1e-11));
                assert!(rep.all_finite());
            }
        }
    }

    #[test]
    fn einstein_ratio_values() {
        let e = einstein_data(5, 2).unwrap();
        assert!(close(e.ratio(0.0), 0.18590, 1e-5));
        assert!(close(e.ratio(1.0), 0.18144, 1e-5));
        let h = 1e-4;
        assert!(((e.ratio(h) - e.ratio(0.0)) / h).abs() < 1e-3);
        let sym = (e.ratio(h) - e.ratio(-h)) / (2.0 * h);
        assert!(sym.abs() < 1e-6);
        let e = einstein_data(6, 3).unwrap();
        assert!(e.equality);
        assert!(close(e.r_bar, 0.5f64.sqrt(), 1e-15));
        assert!(close(e.mu_einstein, e.mu_product, 1e-12));
        assert!(einstein_data(5, 1).is_err());
    }

    #[test]
    fn f_profile_values() {
        let p = f_profile(4, 2, 0.5f64.sqrt()).unwrap();
        assert!(close(p.omega, 2.0, 1e-13));
        assert!(close(p.f, 8.0, 1e-12));
        let r = f_minimizer(7, 3).unwrap();
        assert!(close(r, 0.4f64.sqrt(), 1e-9));
        let rb = (2.0f64 / 5.0).sqrt();
        assert!(f_profile(7, 3, rb).unwrap().df.abs() < 1e-12);
        assert!(f_profile(7, 3, 0.0).is_err());
        assert!(f_profile(7, 3, 1.0).is_err());
    }

    #[test]
    fn f_derivative_matches_difference_quotient() {
        for (n, k, r) in [(7, 3, 0.3), (7, 3, 0.8), (10, 2, 0.55), (5, 4, 0.2)] {
            let h = 1e-6;
            let fd = (f_profile(n, k, r + h).unwrap().f - f_profile(n, k, r - h).unwrap().f) / (2.0 * h);
            let df = f_profile(n, k, r).unwrap().df;
            assert!(close(fd, df, 1e-6 * df.abs().max(1.0)), "{n} {k} {r}: {fd} vs {df}");
        }
    }

    #[test]
    fn projective_catalog_examples() {
        let rp2 = projective_closed_forms(FieldTag::R, 2).unwrap();
        assert!(close(rp2.value("k_real").unwrap(), 1.0 / 3.0, 1e-14));
        assert!(close(rp2.value("volume").unwrap(), 6.0 * PI, 1e-12));
        assert!(close(rp2.value("alpha_norm2").unwrap(), 4.0 / 3.0, 1e-14));
        assert!(close(rp2.value("scalar").unwrap(), 2.0 / 3.0, 1e-14));
        assert!(rp2.get("sigma").is_none());

        let cp2 = projective_closed_forms(FieldTag::C, 2).unwrap();
        assert!(close(cp2.value("volume").unwrap(), 4.5 * PI * PI, 1e-11));
        assert!(close(cp2.value("alpha_norm2").unwrap(), 4.0, 1e-13));
        assert!(close(cp2.value("scalar").unwrap(), 8.0, 1e-13));
        assert!(close(cp2.value("sigma").unwrap(), 24.0 * PI / 2f64.sqrt(), 1e-12));
        assert!(close(cp2.value("simons_threshold").unwrap(), 2.4, 1e-14));

        let hp1 = projective_closed_forms(FieldTag::H, 1).unwrap();
        assert!(close(hp1.value("volume").unwrap(), 8.0 * PI * PI / 3.0, 1e-12));
        assert!(close(hp1.value("alpha_norm2").unwrap(), 0.0, 1e-13));
        assert!(close(hp1.value("scalar").unwrap(), 12.0, 1e-13));
        assert!(close(hp1.value("sigma").unwrap(), 48.0 * PI / 6f64.sqrt(), 1e-12));
        assert!(hp1.get("simons_threshold").is_none());
        assert!(hp1.get("k_real").is_none());
    }

    #[test]
    fn catalog_is_gauss_coherent() {
        for f in FieldTag::ALL {
            for n in 1..=15 {
                let rep = projective_closed_forms(f, n).unwrap();
                assert!(rep.gauss_residual().unwrap() < 1e-12 * rep.value("dim").unwrap().powi(2));
            }
        }
    }

    #[test]
    fn aubin_simons_and_homothety() {
        let b = aubin_and_simons(4, 0).unwrap();
        assert!(close(b.aubin, 12.0 * (8.0 * PI * PI / 3.0f64).sqrt(), 1e-12));
        assert!(b.threshold.is_none());
        assert_eq!(aubin_and_simons(7, 1).unwrap().threshold, Some(7.0));
        let h = homothety_identity(4, 0.0, 4.0, 0.0).unwrap();
        assert!(close(h.forced_alpha2prime, 12.0 - 8.0 * (-0.5f64).exp(), 1e-13));
        assert!(close(h.forced_alpha2prime, 7.1478, 1e-4));
        let again = homothety_identity(4, 0.0, 4.0, h.forced_alpha2prime).unwrap();
        assert!(again.residual.abs() < 1e-13);
        assert!(homothety_identity(4, -1.0, 4.0, 0.0).is_err());
    }

    #[test]
    fn appendix_values() {
        assert!(close(c_nk(4, 2), (2.0f64 / 3.0).sqrt() / 2.0, 1e-13));
        assert!(close(a_n(4), 2.0 * (1.0 - (-0.5f64).exp()), 1e-15));
        assert!(close(a_n(4), 0.78694, 1e-5));
        let recs = appendix_part_a(4, 2).unwrap();
        let by = |name: &str| recs.iter().find(|r| r.name == name).unwrap().clone();
        assert!(by("appendix_a_c_below_one").pass);
        assert!(by("appendix_a_b_displayed[exp=n]").pass);
        assert!(!by("appendix_a_b_defining[exp=n]").pass);
        for r in appendix_part_b(FieldTag::R, 5).unwrap() {
            if r.name == "appendix_b_displayed" {
                assert!(r.pass && r.margin > 0.0);
            }
        }
        assert!(appendix_ledger(4, None, None).is_err());
    }

    #[test]
    fn bisection() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-15).unwrap();
        assert!(close(r, 2f64.sqrt(), 1e-14));
        assert!(bisect(|x| x * x + 1.0, 0.0, 2.0, 1e-12).is_err());
    }

    #[test]
    fn relations_and_margins() {
        let r = InequalityRecord::new("x", "", 1.0, 2.0, Relation::Lt);
        assert_eq!(r.margin, 1.0);
        assert!(r.pass);
        let r = InequalityRecord::new("x", "", 2.0, 2.0, Relation::Gt);
        assert!(!r.pass);
        let r = InequalityRecord::new("x", "", 2.0, 2.0, Relation::Ge);
        assert!(r.pass);
        let r = InequalityRecord::new("x", "", 1.0, 1.0 + 1e-9, Relation::ApproxEq { tol: 1e-8 });
        assert!(r.pass && r.margin > 0.0);
        let r = InequalityRecord::new("x", "", f64::NAN, 1.0, Relation::Le);
        assert!(!r.pass);
    }

    #[test]
    fn sigma_table_entries() {
        let table = sigma_table(4);
        let find = |l: &str| table.iter().find(|r| r.label == l).unwrap().value("sigma").unwrap();
        assert!(close(find("RP^3"), 6.0 * PI.powf(4.0 / 3.0), 1e-11));
        assert!(close(find("S^2xS^2"), 16.0 * PI, 1e-12));
        assert!(close(find("CP^2"), 24.0 * PI / 2f64.sqrt(), 1e-12));
        assert!(close(find("HP^1"), 12.0 * sphere_volume(4).sqrt(), 1e-12));
        assert!(close(find("S^1xS^3"), aubin_value(4), 1e-15));
    }

    #[test]
    fn besse_and_ricci() {
        let r = besse_comparison(5, 2).unwrap();
        assert!(r.pass);
        assert!(close(r.lhs / r.rhs, 0.99033, 1e-4));
        assert!(besse_comparison(6, 2).unwrap().pass);
        assert!(besse_comparison(6, 3).is_err());
        assert!(close(ricci_infimum_product(7, 3).unwrap(), 14.0 / 3.0, 1e-15));
        assert!(close(ricci_infimum_product(7, 4).unwrap(), 14.0 / 3.0, 1e-15));
        assert!(close(ricci_infimum_product(4, 2).unwrap(), 2.0, 1e-15));
    }

    #[test]
    fn volume_consistency_small_cases() {
        assert!(close(fibration_volume(FieldTag::C, 2), 4.5 * PI * PI, 1e-11));
        assert!(close(fibration_volume(FieldTag::H, 1), 8.0 * PI * PI / 3.0, 1e-12));
    }
}
