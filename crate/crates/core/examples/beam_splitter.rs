//! Compile a two-mode beam splitter and follow the single-photon transfer.

use std::f64::consts::PI;

use boqc::compiler::{compile, CompileOptions};
use boqc::encoding::{encode_fock, FockRegister};
use boqc::models::{BosonicModelSpec, ModelKind};
use boqc::sim::run_encoded;

fn main() -> Result<(), boqc::error::Error> {
    let initial = encode_fock(&FockRegister::new(vec![1, 0], 1)?)?;
    println!("initial {initial}");
    for k in 0..=8 {
        let epsilon = k as f64 * PI / 16.0;
        let spec = BosonicModelSpec::new(
            2,
            1,
            ModelKind::BeamSplitter { i: 0, j: 1, epsilon, phase: 0.0 },
        )?;
        let compiled = compile(&spec, &CompileOptions::default())?;
        let state = run_encoded(&compiled.circuit, &initial)?;
        let moved = state.fock_distribution(2, 1)?[&vec![0, 1]];
        println!("epsilon {epsilon:.4}  P(0,1) {moved:.6}  sin^2 {:.6}", epsilon.sin().powi(2));
    }

    let spec = BosonicModelSpec::new(
        2,
        1,
        ModelKind::BeamSplitter { i: 0, j: 1, epsilon: 0.5, phase: 0.0 },
    )?;
    for optimize in [false, true] {
        let compiled = compile(&spec, &CompileOptions { optimize, ..CompileOptions::default() })?;
        let n = compiled.final_counts;
        println!(
            "optimize={optimize}: {} single-qubit, {} RZX, {} gates",
            n.single_qubit(),
            n.rzx,
            n.total()
        );
    }
    Ok(())
}
