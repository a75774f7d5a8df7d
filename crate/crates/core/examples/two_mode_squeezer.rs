//! Pair creation from vacuum with the truncated two-mode squeezer.

use boqc::compiler::{compile, CompileOptions};
use boqc::encoding::{encode_fock, FockRegister};
use boqc::models::{BosonicModelSpec, ModelKind};
use boqc::sim::run_encoded;

fn main() -> Result<(), boqc::error::Error> {
    let vacuum = encode_fock(&FockRegister::vacuum(2, 1))?;
    println!("beta    P(1,1)    sin^2     untruncated");
    for k in 1..=10 {
        let beta = 0.1 * k as f64;
        let spec = BosonicModelSpec::new(2, 1, ModelKind::TwoModeSqueezer { i: 0, j: 1, beta })?;
        let compiled = compile(&spec, &CompileOptions::default())?;
        let state = run_encoded(&compiled.circuit, &vacuum)?;
        let pair = state.fock_distribution(2, 1)?[&vec![1, 1]];
        let exact = beta.tanh().powi(2) / beta.cosh().powi(2);
        println!("{beta:.1}     {pair:.6}  {:.6}  {exact:.6}", beta.sin().powi(2));
    }
    Ok(())
}
