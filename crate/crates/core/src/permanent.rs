//! Matrix permanents and exact few-photon interferometer statistics, used as an
//! independent reference for compiled-circuit simulation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::compiler::{compile_interferometer, CompileOptions};
use crate::encoding::{encode_fock, fock_states, FockRegister};
use crate::error::{Error, Result};
use crate::interferometer::check_unitary;
use crate::linalg::CMatrix;
use crate::sim::run_encoded;

pub const MAX_PERMANENT_SIZE: usize = 16;
pub const MAX_ORACLE_PHOTONS: usize = 4;
pub const MAX_ORACLE_MODES: usize = 6;

/// Ryser's formula, visiting column subsets in Gray-code order.
pub fn permanent(a: &CMatrix) -> Result<Complex64> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::ShapeMismatch(format!(
            "permanent needs a square matrix, got {}x{}",
            n,
            a.ncols()
        )));
    }
    if n > MAX_PERMANENT_SIZE {
        return Err(Error::DimensionTooLarge {
            what: "permanent size",
            size: n,
            limit: MAX_PERMANENT_SIZE,
        });
    }
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut row_sums = vec![Complex64::new(0.0, 0.0); n];
    let mut total = Complex64::new(0.0, 0.0);
    let mut gray = 0usize;
    for k in 1..(1usize << n) {
        let next = k ^ (k >> 1);
        let col = (gray ^ next).trailing_zeros() as usize;
        let sign = if next & (1 << col) != 0 { 1.0 } else { -1.0 };
        for (r, sum) in row_sums.iter_mut().enumerate() {
            *sum += a[(r, col)] * sign;
        }
        gray = next;
        let product: Complex64 = row_sums.iter().product();
        if (n - next.count_ones() as usize).is_multiple_of(2) {
            total += product;
        } else {
            total -= product;
        }
    }
    Ok(total)
}

/// Exact output statistics of an interferometer for a Fock input.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputDistribution {
    pub input: Vec<usize>,
    pub unitary: CMatrix,
    pub entries: BTreeMap<Vec<usize>, f64>,
}

impl OutputDistribution {
    pub fn probability(&self, output: &[usize]) -> f64 {
        self.entries.get(output).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.entries.values().sum()
    }

    /// Header `m0,…,m{M−1},probability`, one row per output pattern.
    pub fn to_csv(&self) -> String {
        distribution_csv(self.input.len(), &self.entries)
    }
}

pub fn distribution_csv(modes: usize, entries: &BTreeMap<Vec<usize>, f64>) -> String {
    let mut out = String::new();
    let header: Vec<String> = (0..modes).map(|m| format!("m{m}")).collect();
    writeln!(out, "{},probability", header.join(",")).unwrap();
    for (occ, p) in entries {
        let cells: Vec<String> = occ.iter().map(usize::to_string).collect();
        writeln!(out, "{},{p:?}", cells.join(",")).unwrap();
    }
    out
}

fn repeated_indices(occupations: &[usize]) -> Vec<usize> {
    occupations
        .iter()
        .enumerate()
        .flat_map(|(mode, &n)| std::iter::repeat_n(mode, n))
        .collect()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// A photon entering mode `k` leaves in mode `l` with amplitude `R_lk`.
pub fn output_distribution(r: &CMatrix, input: &[usize]) -> Result<OutputDistribution> {
    let modes = r.nrows();
    if !r.is_square() || input.len() != modes {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} interferometer with {} input occupations",
            r.nrows(),
            r.ncols(),
            input.len()
        )));
    }
    check_unitary(r)?;
    if modes > MAX_ORACLE_MODES {
        return Err(Error::DimensionTooLarge {
            what: "oracle modes",
            size: modes,
            limit: MAX_ORACLE_MODES,
        });
    }
    let photons: usize = input.iter().sum();
    if photons > MAX_ORACLE_PHOTONS {
        return Err(Error::DimensionTooLarge {
            what: "oracle photons",
            size: photons,
            limit: MAX_ORACLE_PHOTONS,
        });
    }
    let cols = repeated_indices(input);
    let input_norm: f64 = input.iter().map(|&n| factorial(n)).product();
    let mut entries = BTreeMap::new();
    for output in fock_states(modes, photons) {
        if output.iter().sum::<usize>() != photons {
            continue;
        }
        let rows = repeated_indices(&output);
        let sub = CMatrix::from_fn(photons, photons, |a, b| r[(rows[a], cols[b])]);
        let output_norm: f64 = output.iter().map(|&n| factorial(n)).product();
        let p = permanent(&sub)?.norm_sqr() / (input_norm * output_norm);
        entries.insert(output, p);
    }
    Ok(OutputDistribution {
        input: input.to_vec(),
        unitary: r.clone(),
        entries,
    })
}

pub fn total_variation(a: &BTreeMap<Vec<usize>, f64>, b: &BTreeMap<Vec<usize>, f64>) -> f64 {
    let mut keys: Vec<&Vec<usize>> = a.keys().chain(b.keys()).collect();
    keys.sort();
    keys.dedup();
    0.5 * keys
        .into_iter()
        .map(|k| (a.get(k).unwrap_or(&0.0) - b.get(k).unwrap_or(&0.0)).abs())
        .sum::<f64>()
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleComparison {
    pub oracle: OutputDistribution,
    /// Code-space distribution of the simulated circuit, renormalized by `1 − leakage`.
    pub simulated: BTreeMap<Vec<usize>, f64>,
    pub total_variation: f64,
    pub leakage: f64,
    pub steps: usize,
}

/// Compile the mesh of `r`, run it on the encoded input and compare with the
/// permanent oracle.
pub fn compare_with_circuit(
    r: &CMatrix,
    input: &[usize],
    cutoff: usize,
    steps: usize,
) -> Result<OracleComparison> {
    let oracle = output_distribution(r, input)?;
    let photons: usize = input.iter().sum();
    if cutoff < photons {
        return Err(Error::Unsupported(format!(
            "cutoff {cutoff} cannot hold all {photons} photons in one mode"
        )));
    }
    let options = CompileOptions {
        steps,
        ..CompileOptions::default()
    };
    let compiled = compile_interferometer(r, cutoff, &options)?;
    let initial = encode_fock(&FockRegister::new(input.to_vec(), cutoff)?)?;
    let state = run_encoded(&compiled.circuit, &initial)?;
    let modes = r.nrows();
    let leakage = state.leakage(modes, cutoff)?;
    let kept = 1.0 - leakage;
    let simulated: BTreeMap<Vec<usize>, f64> = state
        .fock_distribution(modes, cutoff)?
        .into_iter()
        .filter(|(_, p)| *p > 0.0)
        .map(|(occ, p)| (occ, if kept > 0.0 { p / kept } else { p }))
        .collect();
    Ok(OracleComparison {
        total_variation: total_variation(&oracle.entries, &simulated),
        oracle,
        simulated,
        leakage,
        steps: compiled.steps,
    })
}
