//! Factorials and sphere volumes in log space.

use std::f64::consts::PI;

/// `ln(m!)`, summed exactly in floating point for the small arguments used here.
pub fn ln_factorial(m: u64) -> f64 {
    (2..=m).map(|i| (i as f64).ln()).sum()
}

pub fn factorial(m: u64) -> f64 {
    (2..=m).map(|i| i as f64).product()
}

/// `ln ω_n`, where `ω_n = 2π^{(n+1)/2}/Γ((n+1)/2)` is the volume of the unit
/// n-sphere, via `ω_n = ω_{n−2}·2π/(n−1)` from `ω_0 = 2`, `ω_1 = 2π`.
pub fn ln_sphere_volume(n: u32) -> f64 {
    let (mut acc, start) = if n.is_multiple_of(2) { (2f64.ln(), 2) } else { ((2.0 * PI).ln(), 3) };
    let mut m = start;
    while m <= n {
        acc += (2.0 * PI / f64::from(m - 1)).ln();
        m += 2;
    }
    acc
}

pub fn sphere_volume(n: u32) -> f64 {
    ln_sphere_volume(n).exp()
}
