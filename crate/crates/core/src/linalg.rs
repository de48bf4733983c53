//! Small dense-vector helpers on `&[f64]`.

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

pub fn scaled(x: &[f64], s: f64) -> Vec<f64> {
    x.iter().map(|a| a * s).collect()
}

pub fn add(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// `y += s·x`
pub fn axpy(s: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += s * xi;
    }
}

pub fn max_abs(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, a| m.max(a.abs()))
}

/// Removes the components of `v` along an orthonormal `basis`, twice
/// (classical Gram–Schmidt with one reorthogonalization pass).
pub fn project_out(v: &mut [f64], basis: &[Vec<f64>]) {
    for _ in 0..2 {
        for b in basis {
            let c = dot(v, b);
            axpy(-c, b, v);
        }
    }
}

/// Orthonormalizes `v` against `basis` and appends it. Returns `false` (and
/// leaves `basis` untouched) when the residual norm drops below
/// `rel_floor · |v|`.
pub fn push_orthonormal(basis: &mut Vec<Vec<f64>>, mut v: Vec<f64>, rel_floor: f64) -> bool {
    let original = norm(&v);
    project_out(&mut v, basis);
    let residual = norm(&v);
    if original == 0.0 || residual <= rel_floor * original {
        return false;
    }
    basis.push(scaled(&v, 1.0 / residual));
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthonormalization() {
        let mut basis = vec![vec![1.0, 0.0, 0.0]];
        assert!(push_orthonormal(&mut basis, vec![1.0, 1.0, 0.0], 1e-8));
        assert!(!push_orthonormal(&mut basis, vec![2.0, -3.0, 0.0], 1e-8));
        assert_eq!(basis.len(), 2);
        assert!(dot(&basis[0], &basis[1]).abs() < 1e-15);
        assert!((norm(&basis[1]) - 1.0).abs() < 1e-15);
    }
}
