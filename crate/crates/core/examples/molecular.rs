//! Anharmonic single-mode vibration compiled exactly and lowered to CNOT.

use boqc::compiler::{compile, CompileOptions, Target};
use boqc::encoding::{encode_fock, FockRegister};
use boqc::linalg::{expm_i, max_abs_diff};
use boqc::models::{BosonicModelSpec, ModelKind};
use boqc::sim::{run_encoded, unitary_of};

fn main() -> Result<(), boqc::error::Error> {
    let spec = BosonicModelSpec::new(
        1,
        4,
        ModelKind::Molecular { omega: vec![1.0], chi: vec![-0.05] },
    )?;
    let options = CompileOptions { time: 0.5, target: Target::Cnot, optimize: true, ..CompileOptions::default() };
    let compiled = compile(&spec, &options)?;
    for block in &compiled.blocks {
        println!("{:<10} weight {}  {}", block.part, block.weight, block.term);
    }
    let exact = expm_i(&spec.hamiltonian()?.to_matrix()?, options.time);
    println!("exact: {}, error {:.2e}", compiled.exact, max_abs_diff(&unitary_of(&compiled.circuit)?, &exact));
    println!("gates: {:?}", compiled.final_counts);

    // a Fock state only picks up a phase
    let state = run_encoded(&compiled.circuit, &encode_fock(&FockRegister::new(vec![2], 4)?)?)?;
    println!("P(n=2) after evolution {:.12}", state.fock_distribution(1, 4)?[&vec![2]]);
    Ok(())
}
