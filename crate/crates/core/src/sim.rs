//! Dense statevector execution of compiled circuits.
//!
//! Amplitude index bit `k` is qubit `k`, the same layout used by the encoding
//! and by [`PauliSum::to_matrix`](crate::pauli::PauliSum::to_matrix).

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate};
use crate::encoding::{code_space_projector, index_to_bitstring, EncodedBasisState, ModeLayout};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::pauli::{PauliSum, MAX_MATRIX_QUBITS};

pub const MAX_STATE_QUBITS: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        check_state_width(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::IndexOutOfRange {
                index,
                width: dim,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            num_qubits,
            amplitudes,
        })
    }

    pub fn from_encoded(state: &EncodedBasisState) -> Result<Self> {
        Self::basis(state.num_qubits(), state.index())
    }

    /// Wraps raw amplitudes; the length must be a power of two. Not renormalized.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if !dim.is_power_of_two() {
            return Err(Error::ShapeMismatch(format!(
                "amplitude count {dim} is not a power of two"
            )));
        }
        let num_qubits = dim.trailing_zeros() as usize;
        check_state_width(num_qubits)?;
        Ok(StateVector {
            num_qubits,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        for q in gate.qubits() {
            if q >= self.num_qubits {
                return Err(Error::IndexOutOfRange {
                    index: q,
                    width: self.num_qubits,
                });
            }
        }
        match *gate {
            Gate::Rx { qubit, angle } => self.rx(qubit, angle, None),
            Gate::Rz { qubit, angle } => {
                let (s, c) = (angle / 2.0).sin_cos();
                let low = Complex64::new(c, -s);
                let high = Complex64::new(c, s);
                let bit = 1usize << qubit;
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    *a *= if i & bit == 0 { low } else { high };
                }
            }
            Gate::Rzx {
                control,
                target,
                angle,
            } => self.rx(target, angle, Some(control)),
            Gate::Cnot { control, target } => {
                let (cb, tb) = (1usize << control, 1usize << target);
                for i in 0..self.amplitudes.len() {
                    if i & cb != 0 && i & tb == 0 {
                        self.amplitudes.swap(i, i | tb);
                    }
                }
            }
        }
        Ok(())
    }

    /// `RX(angle)` on `target`, with the angle negated where `z_control` is 1.
    fn rx(&mut self, target: usize, angle: f64, z_control: Option<usize>) {
        let (s, c) = (angle / 2.0).sin_cos();
        let tb = 1usize << target;
        for i in 0..self.amplitudes.len() {
            if i & tb != 0 {
                continue;
            }
            let s = match z_control {
                Some(ctrl) if i >> ctrl & 1 == 1 => -s,
                _ => s,
            };
            let j = i | tb;
            let (a, b) = (self.amplitudes[i], self.amplitudes[j]);
            self.amplitudes[i] = a * c + b * Complex64::new(0.0, -s);
            self.amplitudes[j] = a * Complex64::new(0.0, -s) + b * c;
        }
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.width() != self.num_qubits {
            return Err(Error::WidthMismatch {
                expected: self.num_qubits,
                found: circuit.width(),
            });
        }
        for g in circuit.gates() {
            self.apply_gate(g)?;
        }
        let phase = Complex64::from_polar(1.0, circuit.global_phase());
        for a in &mut self.amplitudes {
            *a *= phase;
        }
        Ok(())
    }

    pub fn marginal_probability(&self, qubit: usize, outcome: bool) -> Result<f64> {
        if qubit >= self.num_qubits {
            return Err(Error::IndexOutOfRange {
                index: qubit,
                width: self.num_qubits,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| (i >> qubit & 1 == 1) == outcome)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Multinomial shot histogram keyed by slot-0-first bitstrings.
    pub fn sample_counts(&self, shots: usize, seed: u64) -> BTreeMap<String, usize> {
        let mut cdf = Vec::with_capacity(self.amplitudes.len());
        let mut acc = 0.0;
        for a in &self.amplitudes {
            acc += a.norm_sqr();
            cdf.push(acc);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut hist = vec![0usize; cdf.len()];
        for _ in 0..shots {
            let u: f64 = rng.random::<f64>() * acc;
            let idx = cdf.partition_point(|&c| c <= u).min(cdf.len() - 1);
            hist[idx] += 1;
        }
        hist.into_iter()
            .enumerate()
            .filter(|&(_, n)| n > 0)
            .map(|(i, n)| (index_to_bitstring(i, self.num_qubits), n))
            .collect()
    }

    /// Probability outside the unary code space.
    pub fn leakage(&self, modes: usize, cutoff: usize) -> Result<f64> {
        let layout = ModeLayout { modes, cutoff };
        if layout.num_qubits() != self.num_qubits {
            return Err(Error::WidthMismatch {
                expected: self.num_qubits,
                found: layout.num_qubits(),
            });
        }
        let inside: f64 = code_space_projector(modes, cutoff)?
            .into_iter()
            .map(|i| self.amplitudes[i].norm_sqr())
            .sum();
        Ok((1.0 - inside).max(0.0))
    }

    /// Probability of every code word, keyed by occupations.
    pub fn fock_distribution(&self, modes: usize, cutoff: usize) -> Result<BTreeMap<Vec<usize>, f64>> {
        let layout = ModeLayout { modes, cutoff };
        if layout.num_qubits() != self.num_qubits {
            return Err(Error::WidthMismatch {
                expected: self.num_qubits,
                found: layout.num_qubits(),
            });
        }
        code_space_projector(modes, cutoff)?
            .into_iter()
            .map(|i| Ok((layout.occupations_of(i)?, self.amplitudes[i].norm_sqr())))
            .collect()
    }

    pub fn expectation_complex(&self, h: &PauliSum) -> Result<Complex64> {
        if h.width() != self.num_qubits {
            return Err(Error::WidthMismatch {
                expected: self.num_qubits,
                found: h.width(),
            });
        }
        let mut total = Complex64::new(0.0, 0.0);
        for t in h.iter() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (col, amp) in self.amplitudes.iter().enumerate() {
                if amp.norm_sqr() == 0.0 {
                    continue;
                }
                let (row, value) = t.axes.apply_to_basis(col);
                acc += self.amplitudes[row].conj() * value * amp;
            }
            total += t.coefficient * acc;
        }
        Ok(total)
    }

    /// `⟨v|H|v⟩` for Hermitian `H`.
    pub fn expectation(&self, h: &PauliSum) -> Result<f64> {
        let e = self.expectation_complex(h)?;
        if e.im.abs() > 1e-10 {
            return Err(Error::Unsupported(format!(
                "expectation has imaginary part {:.3e}; operator is not Hermitian",
                e.im
            )));
        }
        Ok(e.re)
    }
}

fn check_state_width(num_qubits: usize) -> Result<()> {
    if num_qubits > MAX_STATE_QUBITS {
        return Err(Error::DimensionTooLarge {
            what: "statevector qubits",
            size: num_qubits,
            limit: MAX_STATE_QUBITS,
        });
    }
    Ok(())
}

/// Execute `circuit` from `initial`, returning the final state.
pub fn run(circuit: &Circuit, initial: &StateVector) -> Result<StateVector> {
    let mut state = initial.clone();
    state.apply_circuit(circuit)?;
    Ok(state)
}

pub fn run_encoded(circuit: &Circuit, initial: &EncodedBasisState) -> Result<StateVector> {
    run(circuit, &StateVector::from_encoded(initial)?)
}

/// Dense unitary of a circuit, global phase included.
pub fn unitary_of(circuit: &Circuit) -> Result<CMatrix> {
    let q = circuit.width();
    if q > MAX_MATRIX_QUBITS {
        return Err(Error::DimensionTooLarge {
            what: "dense unitary qubits",
            size: q,
            limit: MAX_MATRIX_QUBITS,
        });
    }
    let dim = 1usize << q;
    let mut u = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let out = run(circuit, &StateVector::basis(q, col)?)?;
        for (row, a) in out.amplitudes.iter().enumerate() {
            u[(row, col)] = *a;
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{encode_fock, map_number, FockRegister};
    use crate::linalg::{c, expm_i, max_abs_diff};
    use crate::pauli::{PauliString, PauliTerm};

    fn pauli_matrix(label: &str) -> CMatrix {
        PauliSum::single(PauliTerm::real(1.0, PauliString::parse(label).unwrap()))
            .to_matrix()
            .unwrap()
    }

    #[test]
    fn gate_kernels_match_exponentials() {
        let cases = [
            (Gate::Rx { qubit: 1, angle: 0.7 }, "IX"),
            (Gate::Rz { qubit: 0, angle: -0.4 }, "ZI"),
            (
                Gate::Rzx {
                    control: 1,
                    target: 0,
                    angle: 1.3,
                },
                "XZ",
            ),
        ];
        for (gate, label) in cases {
            let circ = Circuit::from_gates(2, vec![gate], 0.0).unwrap();
            let u = unitary_of(&circ).unwrap();
            let expected = expm_i(&pauli_matrix(label), -gate.angle().unwrap() / 2.0);
            assert!(max_abs_diff(&u, &expected) < 1e-14, "{gate}");
        }
    }

    #[test]
    fn cnot_is_permutation() {
        let circ = Circuit::from_gates(
            2,
            vec![Gate::Cnot {
                control: 0,
                target: 1,
            }],
            0.0,
        )
        .unwrap();
        let u = unitary_of(&circ).unwrap();
        // control is bit 0: |01⟩(index 1) ↔ |11⟩(index 3)
        let perm = [0usize, 3, 2, 1];
        for (col, &row) in perm.iter().enumerate() {
            assert_eq!(u[(row, col)], c(1.0, 0.0));
        }
        assert_eq!(u.iter().filter(|v| v.norm() > 0.0).count(), 4);
    }

    #[test]
    fn empty_circuit_keeps_state() {
        let enc = encode_fock(&FockRegister::new(vec![1, 0], 1).unwrap()).unwrap();
        let out = run_encoded(&Circuit::new(4), &enc).unwrap();
        assert_eq!(out.amplitude(0b1001), c(1.0, 0.0));
        assert_eq!(out.marginal_probability(0, true).unwrap(), 1.0);
    }

    #[test]
    fn marginals() {
        let v = StateVector::from_amplitudes(vec![c(0.5, 0.), c(0.5, 0.), c(0.5, 0.), c(0.5, 0.)])
            .unwrap();
        assert!((v.marginal_probability(1, false).unwrap() - 0.5).abs() < 1e-15);
        assert!(v.marginal_probability(2, false).is_err());
    }

    #[test]
    fn sampling() {
        let basis = StateVector::basis(4, 0b1001).unwrap();
        let counts = basis.sample_counts(2048, 1);
        assert_eq!(counts.len(), 1);
        assert_eq!(counts["1001"], 2048);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = StateVector::from_amplitudes(vec![c(s, 0.), c(0., 0.), c(0., 0.), c(0., s)]).unwrap();
        let shots = 1_000_000usize;
        let counts = v.sample_counts(shots, 42);
        assert_eq!(counts.values().sum::<usize>(), shots);
        let sigma = (shots as f64 * 0.25).sqrt();
        for key in ["00", "11"] {
            assert!((counts[key] as f64 - 5e5).abs() < 3.0 * sigma, "{key}");
        }
        assert_eq!(v.sample_counts(2048, 9), v.sample_counts(2048, 9));
    }

    #[test]
    fn leakage_and_expectation() {
        let layout = ModeLayout::new(1, 4).unwrap();
        let enc = encode_fock(&FockRegister::new(vec![3], 4).unwrap()).unwrap();
        let v = StateVector::from_encoded(&enc).unwrap();
        assert_eq!(v.leakage(1, 4).unwrap(), 0.0);
        let n = map_number(0, layout).unwrap();
        assert!((v.expectation(&n).unwrap() - 3.0).abs() < 1e-12);
        let outside = StateVector::basis(5, 0b11111).unwrap();
        assert!((outside.leakage(1, 4).unwrap() - 1.0).abs() < 1e-15);
        assert!(v.leakage(2, 4).is_err());
    }

    #[test]
    fn norm_preserved_over_many_gates() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut v = StateVector::basis(6, 5).unwrap();
        for _ in 0..10_000 {
            let a = rng.random_range(0..6);
            let b = (a + rng.random_range(1..6)) % 6;
            let angle = rng.random_range(-4.0..4.0);
            let g = match rng.random_range(0..4) {
                0 => Gate::Rx { qubit: a, angle },
                1 => Gate::Rz { qubit: a, angle },
                2 => Gate::Rzx {
                    control: a,
                    target: b,
                    angle,
                },
                _ => Gate::Cnot {
                    control: a,
                    target: b,
                },
            };
            v.apply_gate(&g).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn width_checks() {
        let v = StateVector::basis(2, 0).unwrap();
        assert!(run(&Circuit::new(3), &v).is_err());
        assert!(matches!(
            StateVector::basis(25, 0),
            Err(Error::DimensionTooLarge { .. })
        ));
    }
}
