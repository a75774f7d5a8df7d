//! Lower a compiled circuit to CNOT form and print it as OpenQASM.

use boqc::compiler::{compile, CompileOptions, Target};
use boqc::linalg::max_abs_diff;
use boqc::models::{BosonicModelSpec, ModelKind};
use boqc::sim::unitary_of;

fn main() -> Result<(), boqc::error::Error> {
    let spec = BosonicModelSpec::new(2, 1, ModelKind::TwoModeSqueezer { i: 0, j: 1, beta: 0.3 })?;
    let zx = compile(&spec, &CompileOptions { optimize: true, ..CompileOptions::default() })?;
    let cnot = compile(&spec, &CompileOptions { target: Target::Cnot, optimize: true, ..CompileOptions::default() })?;
    println!("// zx form:   {:?}", zx.final_counts);
    println!("// cnot form: {:?}", cnot.final_counts);
    println!(
        "// unitaries agree to {:.2e}, global phase {:+.6}",
        max_abs_diff(&unitary_of(&zx.circuit)?, &unitary_of(&cnot.circuit)?),
        cnot.circuit.global_phase()
    );
    print!("{}", cnot.circuit.to_qasm());
    Ok(())
}
