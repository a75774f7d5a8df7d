//! Triangular (Reck-style) factorization of interferometer unitaries and
//! seeded Haar-random unitaries.
//!
//! A layer `(i, j, θ, φ)` is the two-mode matrix
//! `[[cos θ, i·e^{iφ}·sin θ], [i·e^{-iφ}·sin θ, cos θ]]` on modes `(i, j)`,
//! the single-particle image of `exp(iθ(e^{iφ} b_i†b_j + h.c.))`.
//! The factorization reads `R = D · L_K ··· L_1`, so compiling the layers in
//! list order followed by the output phases `D` reproduces `R`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{unitarity_deviation, CMatrix};

pub const UNITARY_TOLERANCE: f64 = 1e-10;
pub const MAX_RECK_MODES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReckLayer {
    pub i: usize,
    pub j: usize,
    pub theta: f64,
    pub phi: f64,
}

impl ReckLayer {
    /// Single-particle matrix of this layer embedded in `modes` modes.
    pub fn matrix(&self, modes: usize) -> CMatrix {
        let mut m = CMatrix::identity(modes, modes);
        let (s, co) = self.theta.sin_cos();
        let i = Complex64::new(0.0, 1.0);
        m[(self.i, self.i)] = Complex64::new(co, 0.0);
        m[(self.j, self.j)] = Complex64::new(co, 0.0);
        m[(self.i, self.j)] = i * Complex64::from_polar(s, self.phi);
        m[(self.j, self.i)] = i * Complex64::from_polar(s, -self.phi);
        m
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterferometerSpec {
    pub unitary: CMatrix,
    pub layers: Vec<ReckLayer>,
    pub output_phases: Vec<f64>,
}

impl InterferometerSpec {
    pub fn modes(&self) -> usize {
        self.unitary.nrows()
    }

    pub fn reconstruct(&self) -> CMatrix {
        let n = self.modes();
        let mut acc = CMatrix::identity(n, n);
        for layer in &self.layers {
            acc = layer.matrix(n) * acc;
        }
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            n,
            self.output_phases.iter().map(|&p| Complex64::from_polar(1.0, p)),
        ));
        d * acc
    }

    /// Frobenius norm of `reconstruct() − R`.
    pub fn reconstruction_error(&self) -> f64 {
        (self.reconstruct() - &self.unitary).norm()
    }
}

pub fn check_unitary(r: &CMatrix) -> Result<()> {
    let deviation = unitarity_deviation(r);
    if deviation.is_nan() || deviation >= UNITARY_TOLERANCE {
        return Err(Error::NonUnitary { deviation });
    }
    Ok(())
}

pub fn reck_decompose(r: &CMatrix) -> Result<InterferometerSpec> {
    check_unitary(r)?;
    let n = r.nrows();
    if n > MAX_RECK_MODES {
        return Err(Error::DimensionTooLarge {
            what: "interferometer modes",
            size: n,
            limit: MAX_RECK_MODES,
        });
    }
    let mut w = r.clone();
    let mut layers = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for row in (1..n).rev() {
        for col in 0..row {
            let x = w[(row, col)];
            let y = w[(row, row)];
            let (theta, phi) = if x.norm() == 0.0 {
                (0.0, 0.0)
            } else if y.norm() == 0.0 {
                (std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2 - x.arg())
            } else {
                (
                    x.norm().atan2(y.norm()),
                    std::f64::consts::FRAC_PI_2 + y.arg() - x.arg(),
                )
            };
            let layer = ReckLayer {
                i: col,
                j: row,
                theta,
                phi,
            };
            apply_inverse_on_right(&mut w, &layer);
            layers.push(layer);
        }
    }
    let output_phases = (0..n).map(|k| w[(k, k)].arg()).collect();
    Ok(InterferometerSpec {
        unitary: r.clone(),
        layers,
        output_phases,
    })
}

/// `w ← w · L†`, touching only columns `i` and `j`.
fn apply_inverse_on_right(w: &mut CMatrix, layer: &ReckLayer) {
    let (s, co) = layer.theta.sin_cos();
    let minus_i = Complex64::new(0.0, -1.0);
    let to_i = minus_i * Complex64::from_polar(s, -layer.phi);
    let to_j = minus_i * Complex64::from_polar(s, layer.phi);
    for k in 0..w.nrows() {
        let wi = w[(k, layer.i)];
        let wj = w[(k, layer.j)];
        w[(k, layer.i)] = wi * co + wj * to_i;
        w[(k, layer.j)] = wi * to_j + wj * co;
    }
}

/// Haar-distributed unitary from the QR factorization of a seeded complex
/// Gaussian matrix, with the triangular factor's diagonal made real positive.
pub fn haar_random_unitary(modes: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let z = DMatrix::from_fn(modes, modes, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        Complex64::new(re * scale, im * scale)
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for col in 0..modes {
        let d = r[(col, col)];
        let phase = if d.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            d / d.norm()
        };
        for row in 0..modes {
            q[(row, col)] *= phase;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{expm_i, max_abs_diff};

    #[test]
    fn identity_has_trivial_layers() {
        let spec = reck_decompose(&CMatrix::identity(4, 4)).unwrap();
        assert_eq!(spec.layers.len(), 6);
        assert!(spec.layers.iter().all(|l| l.theta == 0.0 && l.phi == 0.0));
        assert!(spec.output_phases.iter().all(|&p| p == 0.0));
        assert!(spec.reconstruction_error() < 1e-14);
    }

    #[test]
    fn single_beam_splitter_is_one_layer() {
        let eps: f64 = 0.37;
        // single-particle block of exp(iε(b†a + a†b))
        let h = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        );
        let r = expm_i(&h, eps);
        let spec = reck_decompose(&r).unwrap();
        assert_eq!(spec.layers.len(), 1);
        let l = spec.layers[0];
        assert_eq!((l.i, l.j), (0, 1));
        assert!((l.theta - eps).abs() < 1e-12);
        assert!(l.phi.abs() < 1e-12);
        assert!(spec.output_phases.iter().all(|p| p.abs() < 1e-12));
    }

    #[test]
    fn haar_reconstruction() {
        for seed in 0..20 {
            let m = 2 + (seed as usize % 5);
            let r = haar_random_unitary(m, seed);
            let spec = reck_decompose(&r).unwrap();
            assert_eq!(spec.layers.len(), m * (m - 1) / 2);
            assert!(spec.reconstruction_error() < 1e-10, "seed {seed}");
        }
    }

    #[test]
    fn haar_is_unitary_and_deterministic() {
        let r = haar_random_unitary(3, 11);
        assert!(unitarity_deviation(&r) < 1e-12);
        assert!(max_abs_diff(&r, &haar_random_unitary(3, 11)) == 0.0);
        assert!(max_abs_diff(&r, &haar_random_unitary(3, 12)) > 1e-3);
        let one = haar_random_unitary(1, 5);
        assert!((one[(0, 0)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_unitary_rejected() {
        let m = CMatrix::from_element(2, 2, Complex64::new(1.0, 0.0));
        assert!(matches!(reck_decompose(&m), Err(Error::NonUnitary { .. })));
    }

    #[test]
    fn zero_pivot_permutation() {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let swap = CMatrix::from_row_slice(2, 2, &[zero, one, one, zero]);
        let spec = reck_decompose(&swap).unwrap();
        assert!(spec.reconstruction_error() < 1e-14);
    }
}
