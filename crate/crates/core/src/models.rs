//! Bosonic model constructors, emitted as Pauli sums on the encoded register.
//!
//! Every model describes a Hermitian generator `H`; the compiled evolution is
//! `exp(iHt)`.

use num_complex::Complex64;

use crate::encoding::{map_annihilation, map_creation, map_number, map_number_squared, ModeLayout};
use crate::error::{Error, Result};
use crate::interferometer::{check_unitary, reck_decompose};
use crate::linalg::CMatrix;
use crate::pauli::PauliSum;

/// Tolerance on `αα† − ββ† = I` and `αβᵀ = βαᵀ`.
pub const BOGOLIUBOV_TOLERANCE: f64 = 1e-8;

const NEGLIGIBLE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum ModelKind {
    /// `ε(e^{iφ} b_i†b_j + h.c.)`
    BeamSplitter {
        i: usize,
        j: usize,
        epsilon: f64,
        phase: f64,
    },
    /// `iβ(a_i a_j − a_i†a_j†)`
    TwoModeSqueezer { i: usize, j: usize, beta: f64 },
    /// Beam splitter plus two-mode squeezer on the same pair.
    Bilinear {
        i: usize,
        j: usize,
        g_bs: f64,
        g_tms: f64,
    },
    /// `Σ_j ω_j n_j + χ_j n_j²`
    Molecular { omega: Vec<f64>, chi: Vec<f64> },
    /// `Σ (b_j† R_ji a_i + h.c.) + ω Σ (b_j†b_j + a_j†a_j)`; modes `0..M` are
    /// the inputs `a`, modes `M..2M` the outputs `b`.
    BosonSampling { unitary: CMatrix, omega: f64 },
    /// `â_i = Σ_j α_ij a_j + β_ij a_j†`, realized as a network of the other kinds.
    Bogoliubov { alpha: CMatrix, beta: CMatrix },
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::BeamSplitter { .. } => "beam_splitter",
            ModelKind::TwoModeSqueezer { .. } => "two_mode_squeezer",
            ModelKind::Bilinear { .. } => "bilinear",
            ModelKind::Molecular { .. } => "molecular",
            ModelKind::BosonSampling { .. } => "boson_sampling",
            ModelKind::Bogoliubov { .. } => "bogoliubov",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BosonicModelSpec {
    pub modes: usize,
    pub cutoff: usize,
    pub kind: ModelKind,
}

impl BosonicModelSpec {
    pub fn new(modes: usize, cutoff: usize, kind: ModelKind) -> Result<Self> {
        let spec = BosonicModelSpec {
            modes,
            cutoff,
            kind,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn layout(&self) -> Result<ModeLayout> {
        ModeLayout::new(self.modes, self.cutoff)
    }

    pub fn num_qubits(&self) -> usize {
        self.modes * (self.cutoff + 1)
    }

    pub fn validate(&self) -> Result<()> {
        let layout = self.layout()?;
        match &self.kind {
            ModelKind::BeamSplitter { i, j, .. }
            | ModelKind::TwoModeSqueezer { i, j, .. }
            | ModelKind::Bilinear { i, j, .. } => check_pair(*i, *j, layout),
            ModelKind::Molecular { omega, chi } => {
                if omega.len() != self.modes || chi.len() != self.modes {
                    return Err(Error::ShapeMismatch(format!(
                        "molecular model needs {} frequencies and anharmonicities, got {} and {}",
                        self.modes,
                        omega.len(),
                        chi.len()
                    )));
                }
                Ok(())
            }
            ModelKind::BosonSampling { unitary, .. } => {
                if !unitary.is_square() || 2 * unitary.nrows() != self.modes {
                    return Err(Error::ShapeMismatch(format!(
                        "boson sampling over {} modes needs a {}x{} unitary",
                        self.modes,
                        self.modes / 2,
                        self.modes / 2
                    )));
                }
                check_unitary(unitary)
            }
            ModelKind::Bogoliubov { alpha, beta } => {
                if alpha.shape() != (self.modes, self.modes) || beta.shape() != alpha.shape() {
                    return Err(Error::ShapeMismatch(format!(
                        "Bogoliubov coefficients must be {0}x{0}",
                        self.modes
                    )));
                }
                check_bogoliubov(alpha, beta)
            }
        }
    }

    /// The generator as a simplified Pauli sum.
    pub fn hamiltonian(&self) -> Result<PauliSum> {
        let layout = self.layout()?;
        match &self.kind {
            ModelKind::BeamSplitter {
                i,
                j,
                epsilon,
                phase,
            } => beam_splitter_phased(*i, *j, *epsilon, *phase, layout),
            ModelKind::TwoModeSqueezer { i, j, beta } => two_mode_squeezer(*i, *j, *beta, layout),
            ModelKind::Bilinear { i, j, g_bs, g_tms } => bilinear(*i, *j, *g_bs, *g_tms, layout),
            ModelKind::Molecular { omega, chi } => molecular(omega, chi, layout),
            ModelKind::BosonSampling { unitary, omega } => {
                boson_sampling_hamiltonian(unitary, *omega, self.cutoff)
            }
            ModelKind::Bogoliubov { .. } => Err(Error::Unsupported(
                "a Bogoliubov transformation is a network, not a single generator".into(),
            )),
        }
    }
}

fn check_pair(i: usize, j: usize, layout: ModeLayout) -> Result<()> {
    layout.check_mode(i)?;
    layout.check_mode(j)?;
    if i == j {
        return Err(Error::ShapeMismatch(format!(
            "two-mode element needs distinct modes, got {i} twice"
        )));
    }
    Ok(())
}

/// `b_i† b_j`
fn hopping(i: usize, j: usize, layout: ModeLayout) -> Result<PauliSum> {
    map_creation(i, layout)?.mul(&map_annihilation(j, layout)?)
}

/// `ε(b_i†b_j + b_i b_j†)`
pub fn beam_splitter(i: usize, j: usize, epsilon: f64, layout: ModeLayout) -> Result<PauliSum> {
    beam_splitter_phased(i, j, epsilon, 0.0, layout)
}

/// `ε(e^{iφ} b_i†b_j + e^{−iφ} b_i b_j†)`
pub fn beam_splitter_phased(
    i: usize,
    j: usize,
    epsilon: f64,
    phase: f64,
    layout: ModeLayout,
) -> Result<PauliSum> {
    check_pair(i, j, layout)?;
    let forward = hopping(i, j, layout)?.scale(Complex64::from_polar(epsilon, phase));
    forward.add(&forward.adjoint())
}

/// `iβ(a_i a_j − a_i†a_j†)`: pair creation from vacuum with amplitude `sin β`
/// at cutoff 1, and Heisenberg map `a_i → cosh β·a_i + sinh β·a_j†`.
pub fn two_mode_squeezer(i: usize, j: usize, beta: f64, layout: ModeLayout) -> Result<PauliSum> {
    check_pair(i, j, layout)?;
    let pair = map_creation(i, layout)?.mul(&map_creation(j, layout)?)?;
    let create = pair.scale(Complex64::new(0.0, -beta));
    create.add(&create.adjoint())
}

pub fn bilinear(
    i: usize,
    j: usize,
    g_bs: f64,
    g_tms: f64,
    layout: ModeLayout,
) -> Result<PauliSum> {
    beam_splitter(i, j, g_bs, layout)?.add(&two_mode_squeezer(i, j, g_tms, layout)?)
}

/// `Σ_j ω_j n_j + χ_j n_j²`
pub fn molecular(omega: &[f64], chi: &[f64], layout: ModeLayout) -> Result<PauliSum> {
    let (linear, quadratic) = molecular_parts(omega, chi, layout)?;
    linear.add(&quadratic)
}

/// The `ω·n` and `χ·n²` parts of the molecular Hamiltonian, kept apart so
/// each compiles to its own gate block.
pub fn molecular_parts(
    omega: &[f64],
    chi: &[f64],
    layout: ModeLayout,
) -> Result<(PauliSum, PauliSum)> {
    if omega.len() != layout.modes || chi.len() != layout.modes {
        return Err(Error::ShapeMismatch(format!(
            "expected {} frequencies and anharmonicities, got {} and {}",
            layout.modes,
            omega.len(),
            chi.len()
        )));
    }
    let width = layout.num_qubits();
    let mut linear = PauliSum::zero(width);
    let mut quadratic = PauliSum::zero(width);
    for mode in 0..layout.modes {
        if omega[mode] != 0.0 {
            linear = linear.add(&map_number(mode, layout)?.scale_real(omega[mode]))?;
        }
        if chi[mode] != 0.0 {
            quadratic = quadratic.add(&map_number_squared(mode, layout)?.scale_real(chi[mode]))?;
        }
    }
    Ok((linear, quadratic))
}

/// Hopping Hamiltonian between input modes `a` (`0..M`) and output modes `b`
/// (`M..2M`) weighted by the interferometer matrix.
pub fn boson_sampling_hamiltonian(r: &CMatrix, omega: f64, cutoff: usize) -> Result<PauliSum> {
    if !r.is_square() {
        return Err(Error::ShapeMismatch("interferometer matrix must be square".into()));
    }
    check_unitary(r)?;
    let m = r.nrows();
    let layout = ModeLayout::new(2 * m, cutoff)?;
    let mut total = PauliSum::zero(layout.num_qubits());
    for out in 0..m {
        for inp in 0..m {
            let w = r[(out, inp)];
            if w.norm() < NEGLIGIBLE {
                continue;
            }
            let forward = hopping(m + out, inp, layout)?.scale(w);
            total = total.add(&forward)?.add(&forward.adjoint())?;
        }
    }
    if omega != 0.0 {
        for mode in 0..2 * m {
            total = total.add(&map_number(mode, layout)?.scale_real(omega))?;
        }
    }
    Ok(total)
}

fn check_bogoliubov(alpha: &CMatrix, beta: &CMatrix) -> Result<()> {
    let n = alpha.nrows();
    let norm = alpha * alpha.adjoint() - beta * beta.adjoint() - CMatrix::identity(n, n);
    let sym = alpha * beta.transpose() - beta * alpha.transpose();
    let deviation = norm.norm().max(sym.norm());
    if deviation.is_nan() || deviation >= BOGOLIUBOV_TOLERANCE {
        return Err(Error::NotSymplectic { deviation });
    }
    Ok(())
}

/// Sequence of two-mode operations realizing `â_i = Σ_j α_ij a_j + β_ij a_j†`
/// when compiled in list order at unit time.
///
/// Two families are supported: passive transformations (`β = 0`), which go
/// through the triangular mesh with phase shifts expressed as a linear
/// molecular term, and pairwise squeezing with `α` real diagonal and `β` a
/// symmetric matching. Anything else reports `Unsupported`.
pub fn bogoliubov_network(
    alpha: &CMatrix,
    beta: &CMatrix,
    cutoff: usize,
) -> Result<Vec<BosonicModelSpec>> {
    let n = alpha.nrows();
    if !alpha.is_square() || beta.shape() != alpha.shape() {
        return Err(Error::ShapeMismatch(
            "Bogoliubov coefficients must be square and equally sized".into(),
        ));
    }
    check_bogoliubov(alpha, beta)?;
    let mut specs = Vec::new();
    if beta.iter().all(|b| b.norm() < NEGLIGIBLE) {
        let mesh = reck_decompose(alpha)?;
        for layer in &mesh.layers {
            if layer.theta.abs() > NEGLIGIBLE {
                specs.push(BosonicModelSpec::new(
                    n,
                    cutoff,
                    ModelKind::BeamSplitter {
                        i: layer.i,
                        j: layer.j,
                        epsilon: layer.theta,
                        phase: layer.phi,
                    },
                )?);
            }
        }
        if mesh.output_phases.iter().any(|p| p.abs() > NEGLIGIBLE) {
            specs.push(BosonicModelSpec::new(
                n,
                cutoff,
                ModelKind::Molecular {
                    omega: mesh.output_phases.clone(),
                    chi: vec![0.0; n],
                },
            )?);
        }
        return Ok(specs);
    }

    let unsupported = || {
        Error::Unsupported(
            "only passive or pairwise two-mode-squeezing Bogoliubov transformations are supported"
                .into(),
        )
    };
    let mut partner = vec![None; n];
    for i in 0..n {
        for j in 0..n {
            if beta[(i, j)].norm() < BOGOLIUBOV_TOLERANCE {
                continue;
            }
            if i == j || partner[i].is_some_and(|p| p != j) {
                return Err(unsupported());
            }
            partner[i] = Some(j);
        }
        for j in 0..n {
            if i != j && alpha[(i, j)].norm() >= BOGOLIUBOV_TOLERANCE {
                return Err(unsupported());
            }
        }
    }
    for i in 0..n {
        let a = alpha[(i, i)];
        match partner[i] {
            None => {
                if (a - Complex64::new(1.0, 0.0)).norm() >= BOGOLIUBOV_TOLERANCE {
                    return Err(unsupported());
                }
            }
            Some(j) => {
                let b = beta[(i, j)];
                if partner[j] != Some(i)
                    || b.im.abs() >= BOGOLIUBOV_TOLERANCE
                    || a.im.abs() >= BOGOLIUBOV_TOLERANCE
                    || (a.re - b.re.asinh().cosh()).abs() >= BOGOLIUBOV_TOLERANCE
                    || (alpha[(j, j)] - a).norm() >= BOGOLIUBOV_TOLERANCE
                {
                    return Err(unsupported());
                }
                if i < j {
                    specs.push(BosonicModelSpec::new(
                        n,
                        cutoff,
                        ModelKind::TwoModeSqueezer {
                            i,
                            j,
                            beta: b.re.asinh(),
                        },
                    )?);
                }
            }
        }
    }
    Ok(specs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{code_space_projector, map_total_number, truncated_creation};
    use crate::linalg::{c, commutator, expm_i, max_abs_diff, project};
    use crate::pauli::{Pauli, PauliString};

    fn layout(m: usize, np: usize) -> ModeLayout {
        ModeLayout::new(m, np).unwrap()
    }

    #[test]
    fn beam_splitter_cutoff_one_matches_printed_expansion() {
        let eps = 0.9;
        let h = beam_splitter(0, 1, eps, layout(2, 1)).unwrap();
        assert_eq!(h.len(), 8);
        for (label, sign) in crate::verify::BEAM_SPLITTER_EXPANSION {
            let axes = PauliString::parse(label).unwrap();
            let coeff = h.coefficient_of(&axes);
            assert!((coeff - c(sign * eps / 8.0, 0.0)).norm() < 1e-14, "{label}");
        }
    }

    #[test]
    fn zero_coupling_is_empty() {
        assert!(beam_splitter(0, 1, 0.0, layout(2, 1)).unwrap().is_empty());
        assert!(two_mode_squeezer(0, 1, 0.0, layout(2, 1)).unwrap().is_empty());
    }

    /// `ε(b†a + ab†)` on two truncated modes, built from Kronecker products.
    fn truncated_hopping(cutoff: usize, eps: f64) -> CMatrix {
        let bd = truncated_creation(cutoff);
        let b = bd.adjoint();
        let id = CMatrix::identity(cutoff + 1, cutoff + 1);
        // mode 0 is the slow index, matching fock_states ordering
        let a0d = bd.kronecker(&id);
        let a1 = id.kronecker(&b);
        let x = &a0d * &a1;
        (&x + x.adjoint()) * c(eps, 0.0)
    }

    fn code_space_in_fock_order(l: ModeLayout) -> Vec<usize> {
        crate::encoding::fock_states(l.modes, l.cutoff)
            .iter()
            .map(|occ| l.index_of(occ).unwrap())
            .collect()
    }

    #[test]
    fn beam_splitter_matches_truncated_bosons() {
        for cutoff in 1..=2 {
            let l = layout(2, cutoff);
            let h = beam_splitter(0, 1, 0.7, l).unwrap();
            let p = project(&h.to_matrix().unwrap(), &code_space_in_fock_order(l));
            assert!(max_abs_diff(&p, &truncated_hopping(cutoff, 0.7)) < 1e-12);
        }
    }

    #[test]
    fn squeezer_has_odd_y_strings() {
        let h = two_mode_squeezer(0, 1, 0.5, layout(2, 1)).unwrap();
        assert!(!h.is_empty());
        for t in h.iter() {
            assert_eq!(t.axes.count(Pauli::Y) % 2, 1, "{t}");
            assert!(t.coefficient.im.abs() < 1e-15);
        }
        assert!(h.coefficient_of(&PauliString::parse("XXXY").unwrap()).norm() > 1e-3);
        let bs = beam_splitter(0, 1, 0.5, layout(2, 1)).unwrap();
        assert!(bs.iter().all(|t| t.axes.count(Pauli::Y) % 2 == 0));
    }

    #[test]
    fn squeezer_pair_creation_probability() {
        let l = layout(2, 1);
        let beta = 0.5;
        let h = two_mode_squeezer(0, 1, beta, l).unwrap().to_matrix().unwrap();
        let (vac, pair) = (l.index_of(&[0, 0]).unwrap(), l.index_of(&[1, 1]).unwrap());
        assert!((h[(pair, vac)].norm() - beta).abs() < 1e-14);
        let u = expm_i(&h, 1.0);
        assert!((u[(pair, vac)].norm_sqr() - beta.sin().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn bilinear_reductions_and_count() {
        let l = layout(2, 1);
        assert_eq!(
            bilinear(0, 1, 0.4, 0.0, l).unwrap(),
            beam_splitter(0, 1, 0.4, l).unwrap()
        );
        assert_eq!(
            bilinear(0, 1, 0.0, 0.4, l).unwrap(),
            two_mode_squeezer(0, 1, 0.4, l).unwrap()
        );
        assert_eq!(bilinear(0, 1, 0.4, 0.3, l).unwrap().len(), 16);
    }

    #[test]
    fn molecular_eigenvalues() {
        let l = layout(1, 4);
        let h = molecular(&[1.0], &[0.1], l).unwrap();
        let m = h.to_matrix().unwrap();
        let idx = l.index_of(&[2]).unwrap();
        assert!((m[(idx, idx)].re - 2.4).abs() < 1e-12);
        assert_eq!(h.commuting_groups().len(), 1);
        let l2 = layout(2, 4);
        let h2 = molecular(&[1.0, 0.5], &[0.1, -0.2], l2).unwrap();
        assert_eq!(h2.commuting_groups().len(), 1);
        assert!(matches!(
            molecular(&[1.0], &[0.1], l2),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn number_conservation() {
        let l = layout(2, 2);
        let n = map_total_number(l).unwrap().to_matrix().unwrap();
        let bs = beam_splitter(0, 1, 0.3, l).unwrap().to_matrix().unwrap();
        assert!(commutator(&bs, &n).norm() < 1e-10);
        let diff = map_number(0, l)
            .unwrap()
            .add(&map_number(1, l).unwrap().scale_real(-1.0))
            .unwrap()
            .to_matrix()
            .unwrap();
        let tms = two_mode_squeezer(0, 1, 0.3, l).unwrap().to_matrix().unwrap();
        assert!(commutator(&tms, &diff).norm() < 1e-10);
    }

    #[test]
    fn boson_sampling_single_mode_reduces_to_beam_splitter() {
        let r = CMatrix::identity(1, 1);
        let h = boson_sampling_hamiltonian(&r, 0.0, 1).unwrap();
        assert_eq!(h, beam_splitter(1, 0, 1.0, layout(2, 1)).unwrap());
    }

    #[test]
    fn boson_sampling_random_is_hermitian_and_conserving() {
        let r = crate::interferometer::haar_random_unitary(2, 3);
        let h = boson_sampling_hamiltonian(&r, 0.2, 1).unwrap();
        assert!(h.is_hermitian(1e-12));
        let m = h.to_matrix().unwrap();
        assert!((&m - m.adjoint()).norm() < 1e-12);
        let n = map_total_number(layout(4, 1)).unwrap().to_matrix().unwrap();
        assert!(commutator(&m, &n).norm() < 1e-10);
        let bad = CMatrix::from_element(2, 2, c(1.0, 0.0));
        assert!(matches!(
            boson_sampling_hamiltonian(&bad, 0.0, 1),
            Err(Error::NonUnitary { .. })
        ));
    }

    #[test]
    fn bogoliubov_identity_is_empty() {
        let id = CMatrix::identity(3, 3);
        let zero = CMatrix::zeros(3, 3);
        assert!(bogoliubov_network(&id, &zero, 1).unwrap().is_empty());
    }

    #[test]
    fn bogoliubov_rotation_is_one_beam_splitter() {
        let th: f64 = 0.4;
        let alpha = CMatrix::from_row_slice(
            2,
            2,
            &[c(th.cos(), 0.), c(th.sin(), 0.), c(-th.sin(), 0.), c(th.cos(), 0.)],
        );
        let net = bogoliubov_network(&alpha, &CMatrix::zeros(2, 2), 1).unwrap();
        assert_eq!(net.len(), 1);
        match net[0].kind {
            ModelKind::BeamSplitter { epsilon, .. } => assert!((epsilon - th).abs() < 1e-12),
            ref other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bogoliubov_squeeze_is_one_squeezer() {
        let r: f64 = 0.3;
        let alpha = CMatrix::identity(2, 2) * c(r.cosh(), 0.0);
        let beta = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(r.sinh(), 0.), c(r.sinh(), 0.), c(0., 0.)]);
        let net = bogoliubov_network(&alpha, &beta, 1).unwrap();
        assert_eq!(net.len(), 1);
        match net[0].kind {
            ModelKind::TwoModeSqueezer { i, j, beta } => {
                assert_eq!((i, j), (0, 1));
                assert!((beta - r).abs() < 1e-12);
            }
            ref other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bogoliubov_rejects_invalid() {
        let alpha = CMatrix::identity(2, 2) * c(2.0, 0.0);
        assert!(matches!(
            bogoliubov_network(&alpha, &CMatrix::zeros(2, 2), 1),
            Err(Error::NotSymplectic { .. })
        ));
    }

    #[test]
    fn squeezer_code_space_matrix() {
        let l = layout(2, 1);
        let code = code_space_projector(2, 1).unwrap();
        let h = two_mode_squeezer(0, 1, 0.2, l).unwrap().to_matrix().unwrap();
        let p = project(&h, &code);
        // only vacuum and pair states couple
        let nonzero = p.iter().filter(|v| v.norm() > 1e-12).count();
        assert_eq!(nonzero, 2);
    }
}
