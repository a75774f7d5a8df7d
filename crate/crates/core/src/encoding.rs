//! Unary boson-to-qubit mapping.
//!
//! Mode `j` with cutoff `N_P` owns the block of `N_P + 1` qubits starting at
//! `j·(N_P+1)`. Fock level `n` is the block state whose only `0` bit sits at
//! slot `n`. Bitstrings are written slot-0-first, so the two-mode states
//! `|1⟩⊗|0⟩` and `|0⟩⊗|1⟩` at cutoff 1 read `1001` and `0110`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::PauliSum;

/// Largest supported photon cutoff per mode.
pub const MAX_CUTOFF: usize = 7;

/// Largest register for which code-space index lists are enumerated.
pub const MAX_REGISTER_QUBITS: usize = 24;

/// Placement of `(mode, slot)` pairs on global qubit indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeLayout {
    pub modes: usize,
    pub cutoff: usize,
}

impl ModeLayout {
    pub fn new(modes: usize, cutoff: usize) -> Result<Self> {
        if cutoff > MAX_CUTOFF {
            return Err(Error::Unsupported(format!(
                "cutoff {cutoff} exceeds the supported maximum {MAX_CUTOFF}"
            )));
        }
        if cutoff == 0 {
            return Err(Error::Unsupported("cutoff must be at least 1".into()));
        }
        Ok(ModeLayout { modes, cutoff })
    }

    pub fn block_len(&self) -> usize {
        self.cutoff + 1
    }

    pub fn num_qubits(&self) -> usize {
        self.modes * self.block_len()
    }

    pub fn qubit(&self, mode: usize, slot: usize) -> usize {
        debug_assert!(mode < self.modes && slot <= self.cutoff);
        mode * self.block_len() + slot
    }

    pub fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.modes {
            return Err(Error::ModeIndexOutOfRange {
                index: mode,
                modes: self.modes,
            });
        }
        Ok(())
    }

    /// Basis index of the code word for the given occupations.
    pub fn index_of(&self, occupations: &[usize]) -> Result<usize> {
        Ok(encode_fock(&FockRegister::new(occupations.to_vec(), self.cutoff)?)?.index())
    }

    /// Occupations of a basis index, or `LeakageState` outside the code space.
    pub fn occupations_of(&self, index: usize) -> Result<Vec<usize>> {
        let bits: Vec<bool> = (0..self.num_qubits()).map(|q| index >> q & 1 == 1).collect();
        Ok(decode_basis(&bits, self.modes, self.cutoff)?.occupations)
    }
}

/// Photon occupations of `M` modes, each at most `cutoff`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockRegister {
    occupations: Vec<usize>,
    cutoff: usize,
}

impl FockRegister {
    pub fn new(occupations: Vec<usize>, cutoff: usize) -> Result<Self> {
        if let Some((mode, &occupation)) =
            occupations.iter().enumerate().find(|(_, &n)| n > cutoff)
        {
            return Err(Error::CutoffExceeded {
                mode,
                occupation,
                cutoff,
            });
        }
        Ok(FockRegister {
            occupations,
            cutoff,
        })
    }

    pub fn vacuum(modes: usize, cutoff: usize) -> Self {
        FockRegister {
            occupations: vec![0; modes],
            cutoff,
        }
    }

    pub fn occupations(&self) -> &[usize] {
        &self.occupations
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn modes(&self) -> usize {
        self.occupations.len()
    }

    pub fn total(&self) -> usize {
        self.occupations.iter().sum()
    }

    pub fn num_qubits(&self) -> usize {
        self.modes() * (self.cutoff + 1)
    }
}

/// A computational basis state of the encoded register.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EncodedBasisState {
    bits: Vec<bool>,
    layout: ModeLayout,
}

impl EncodedBasisState {
    pub fn from_bits(bits: Vec<bool>, modes: usize, cutoff: usize) -> Result<Self> {
        let layout = ModeLayout { modes, cutoff };
        if bits.len() != layout.num_qubits() {
            return Err(Error::WidthMismatch {
                expected: layout.num_qubits(),
                found: bits.len(),
            });
        }
        Ok(EncodedBasisState { bits, layout })
    }

    pub fn parse(bitstring: &str, modes: usize, cutoff: usize) -> Result<Self> {
        let bits = parse_bitstring(bitstring)?;
        Self::from_bits(bits, modes, cutoff)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn layout(&self) -> ModeLayout {
        self.layout
    }

    pub fn num_qubits(&self) -> usize {
        self.bits.len()
    }

    /// Basis index with qubit `k` at bit `k`.
    pub fn index(&self) -> usize {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .fold(0, |acc, (k, _)| acc | 1 << k)
    }

    pub fn in_code_space(&self) -> bool {
        self.bits
            .chunks(self.layout.block_len())
            .all(|block| block.iter().filter(|&&b| !b).count() == 1)
    }
}

impl fmt::Display for EncodedBasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub fn parse_bitstring(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|ch| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Parse(format!("invalid bit {other:?}"))),
        })
        .collect()
}

/// Slot-0-first bitstring of a basis index.
pub fn index_to_bitstring(index: usize, num_qubits: usize) -> String {
    (0..num_qubits)
        .map(|q| if index >> q & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn encode_fock(reg: &FockRegister) -> Result<EncodedBasisState> {
    let reg = FockRegister::new(reg.occupations.clone(), reg.cutoff)?;
    let layout = ModeLayout {
        modes: reg.modes(),
        cutoff: reg.cutoff,
    };
    let mut bits = vec![true; layout.num_qubits()];
    for (mode, &n) in reg.occupations.iter().enumerate() {
        bits[layout.qubit(mode, n)] = false;
    }
    Ok(EncodedBasisState { bits, layout })
}

pub fn decode_basis(bits: &[bool], modes: usize, cutoff: usize) -> Result<FockRegister> {
    let state = EncodedBasisState::from_bits(bits.to_vec(), modes, cutoff)?;
    let block = state.layout.block_len();
    let mut occupations = Vec::with_capacity(modes);
    for (mode, chunk) in state.bits.chunks(block).enumerate() {
        let mut zeros = chunk.iter().enumerate().filter(|(_, &b)| !b);
        match (zeros.next(), zeros.next()) {
            (Some((slot, _)), None) => occupations.push(slot),
            _ => return Err(Error::LeakageState { mode }),
        }
    }
    FockRegister::new(occupations, cutoff)
}

/// `b_j† = Σ_{n<N_P} √(n+1) σ₋^{(n,j)} σ₊^{(n+1,j)}`, expanded into Pauli strings.
pub fn map_creation(mode: usize, layout: ModeLayout) -> Result<PauliSum> {
    layout.check_mode(mode)?;
    let width = layout.num_qubits();
    let mut total = PauliSum::zero(width);
    for n in 0..layout.cutoff {
        let lower = PauliSum::sigma_minus(width, layout.qubit(mode, n))?;
        let upper = PauliSum::sigma_plus(width, layout.qubit(mode, n + 1))?;
        let hop = lower.mul(&upper)?.scale_real(((n + 1) as f64).sqrt());
        total = total.add(&hop)?;
    }
    Ok(total)
}

pub fn map_annihilation(mode: usize, layout: ModeLayout) -> Result<PauliSum> {
    Ok(map_creation(mode, layout)?.adjoint().simplify())
}

/// `n_j = Σ_n n·(σz^{(n,j)} + 1)/2`.
pub fn map_number(mode: usize, layout: ModeLayout) -> Result<PauliSum> {
    layout.check_mode(mode)?;
    let width = layout.num_qubits();
    let mut total = PauliSum::zero(width);
    for n in 1..=layout.cutoff {
        let proj = PauliSum::zero_projector(width, layout.qubit(mode, n))?;
        total = total.add(&proj.scale_real(n as f64))?;
    }
    Ok(total)
}

/// Symbolic square of [`map_number`].
pub fn map_number_squared(mode: usize, layout: ModeLayout) -> Result<PauliSum> {
    let n = map_number(mode, layout)?;
    n.mul(&n)
}

/// `Σ_j n_j` over all modes.
pub fn map_total_number(layout: ModeLayout) -> Result<PauliSum> {
    let mut total = PauliSum::zero(layout.num_qubits());
    for mode in 0..layout.modes {
        total = total.add(&map_number(mode, layout)?)?;
    }
    Ok(total)
}

/// Sorted basis indices of every valid code word.
pub fn code_space_projector(modes: usize, cutoff: usize) -> Result<Vec<usize>> {
    let layout = ModeLayout { modes, cutoff };
    if layout.num_qubits() > MAX_REGISTER_QUBITS {
        return Err(Error::DimensionTooLarge {
            what: "encoded register qubits",
            size: layout.num_qubits(),
            limit: MAX_REGISTER_QUBITS,
        });
    }
    let mut indices: Vec<usize> = fock_states(modes, cutoff)
        .into_iter()
        .map(|occ| layout.index_of(&occ).expect("occupations within cutoff"))
        .collect();
    indices.sort_unstable();
    Ok(indices)
}

/// Every occupation list with entries in `0..=cutoff`, mode 0 varying slowest.
pub fn fock_states(modes: usize, cutoff: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(modes)];
    for _ in 0..modes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=cutoff).map(move |n| {
                    let mut next = prefix.clone();
                    next.push(n);
                    next
                })
            })
            .collect();
    }
    out
}

/// Truncated creation operator `⟨n+1|b†|n⟩ = √(n+1)` on `cutoff + 1` levels.
pub fn truncated_creation(cutoff: usize) -> crate::linalg::CMatrix {
    let dim = cutoff + 1;
    crate::linalg::CMatrix::from_fn(dim, dim, |r, col| {
        if r == col + 1 {
            Complex64::new((r as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}
