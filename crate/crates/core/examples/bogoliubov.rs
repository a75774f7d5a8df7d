//! Bogoliubov transformations as sequences of two-mode blocks.

use boqc::compiler::{compile, CompileOptions};
use boqc::encoding::{encode_fock, FockRegister};
use boqc::linalg::CMatrix;
use boqc::models::bogoliubov_network;
use boqc::sim::{run, StateVector};
use num_complex::Complex64;

fn real(rows: usize, values: &[f64]) -> CMatrix {
    CMatrix::from_iterator(rows, rows, values.iter().map(|&v| Complex64::new(v, 0.0))).transpose()
}

fn main() -> Result<(), boqc::error::Error> {
    let r: f64 = 0.4;
    let alpha = real(2, &[r.cosh(), 0.0, 0.0, r.cosh()]);
    let beta = real(2, &[0.0, r.sinh(), r.sinh(), 0.0]);
    let network = bogoliubov_network(&alpha, &beta, 1)?;
    let mut state = StateVector::from_encoded(&encode_fock(&FockRegister::vacuum(2, 1))?)?;
    for spec in &network {
        println!("block: {}", spec.kind.name());
        let compiled = compile(spec, &CompileOptions::default())?;
        state = run(&compiled.circuit, &state)?;
    }
    let pair = state.fock_distribution(2, 1)?[&vec![1, 1]];
    println!("squeezing r={r}: truncated P(1,1) {pair:.6}");

    let s = 0.6f64;
    let c = (1.0 - s * s).sqrt();
    let passive = real(3, &[c, s, 0.0, -s, c, 0.0, 0.0, 0.0, 1.0]);
    let network = bogoliubov_network(&passive, &CMatrix::zeros(3, 3), 1)?;
    let initial = encode_fock(&FockRegister::new(vec![1, 0, 0], 1)?)?;
    let mut state = StateVector::from_encoded(&initial)?;
    for spec in &network {
        let compiled = compile(spec, &CompileOptions::default())?;
        state = run(&compiled.circuit, &state)?;
    }
    println!("\npassive 3-mode map, {} blocks, photon from mode 0:", network.len());
    for (occ, p) in state.fock_distribution(3, 1)? {
        if p > 1e-12 {
            println!("  {occ:?} {p:.6}");
        }
    }
    Ok(())
}
