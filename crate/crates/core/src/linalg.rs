//! Dense complex matrix helpers shared by the verification paths.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `exp(i·t·H)` by scaling and squaring Padé.
pub fn expm_i(h: &CMatrix, t: f64) -> CMatrix {
    (h * Complex64::new(0.0, t)).exp()
}

pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0, |acc: f64, &s| acc.max(s))
}

/// Global phase `e^{iφ}` that best aligns `b` onto `a` (maximizes `Re tr(a† e^{iφ} b)`).
pub fn aligning_phase(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let overlap: Complex64 = a
        .iter()
        .zip(b.iter())
        .map(|(x, y)| x.conj() * y)
        .sum();
    if overlap.norm() < 1e-300 {
        Complex64::new(1.0, 0.0)
    } else {
        (overlap / overlap.norm()).conj()
    }
}

/// Operator-norm distance between two unitaries with the global phase quotiented out.
pub fn distance_up_to_phase(a: &CMatrix, b: &CMatrix) -> f64 {
    let phase = aligning_phase(a, b);
    spectral_norm(&(a - b * phase))
}

/// Largest absolute entry of `m - other`.
pub fn max_abs_diff(m: &CMatrix, other: &CMatrix) -> f64 {
    m.iter()
        .zip(other.iter())
        .fold(0.0, |acc: f64, (x, y)| acc.max((x - y).norm()))
}

/// Frobenius norm of `M†M - I`.
pub fn unitarity_deviation(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    let n = m.nrows();
    (m.adjoint() * m - CMatrix::identity(n, n)).norm()
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// Restrict an operator to the listed basis indices.
pub fn project(m: &CMatrix, basis: &[usize]) -> CMatrix {
    CMatrix::from_fn(basis.len(), basis.len(), |r, col| m[(basis[r], basis[col])])
}

/// Build a complex matrix from rows of `[re, im]` pairs.
pub fn from_pairs(rows: &[Vec<[f64; 2]>]) -> Option<CMatrix> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != m) {
        return None;
    }
    Some(CMatrix::from_fn(n, m, |r, col| {
        let [re, im] = rows[r][col];
        Complex64::new(re, im)
    }))
}

pub fn to_pairs(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|col| [m[(r, col)].re, m[(r, col)].im]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm_of_pauli_x_is_rotation() {
        let x = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let u = expm_i(&x, 0.3);
        assert!((u[(0, 0)] - c(0.3f64.cos(), 0.0)).norm() < 1e-14);
        assert!((u[(1, 0)] - c(0.0, 0.3f64.sin())).norm() < 1e-14);
    }

    #[test]
    fn phase_is_quotiented_out() {
        let x = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let u = expm_i(&x, 0.7);
        let shifted = &u * c(0.2f64.cos(), 0.2f64.sin());
        assert!(distance_up_to_phase(&u, &shifted) < 1e-14);
        assert!(spectral_norm(&(&u - &shifted)) > 0.1);
    }
}
