//! First-order Trotter error of the two-photon beam splitter.

use boqc::compiler::{compile, CompileOptions};
use boqc::linalg::{expm_i, spectral_norm};
use boqc::models::{BosonicModelSpec, ModelKind};
use boqc::sim::unitary_of;

fn main() -> Result<(), boqc::error::Error> {
    let spec = BosonicModelSpec::new(
        2,
        2,
        ModelKind::BeamSplitter { i: 0, j: 1, epsilon: 1.0, phase: 0.0 },
    )?;
    let exact = expm_i(&spec.hamiltonian()?.to_matrix()?, 1.0);
    let mut previous: Option<f64> = None;
    for steps in [1, 2, 4, 8, 16, 32, 64] {
        let compiled = compile(&spec, &CompileOptions { steps, ..CompileOptions::default() })?;
        let err = spectral_norm(&(unitary_of(&compiled.circuit)? - &exact));
        match previous {
            Some(p) => println!("s={steps:<3} error {err:.4e}  ratio {:.3}", p / err),
            None => println!("s={steps:<3} error {err:.4e}"),
        }
        previous = Some(err);
    }
    Ok(())
}
