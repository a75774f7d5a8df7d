//! Reck factorization, permanent statistics and Hong-Ou-Mandel interference.

use std::f64::consts::FRAC_1_SQRT_2;

use boqc::interferometer::{haar_random_unitary, reck_decompose};
use boqc::linalg::CMatrix;
use boqc::permanent::{compare_with_circuit, output_distribution};
use num_complex::Complex64;

fn main() -> Result<(), boqc::error::Error> {
    let r = haar_random_unitary(4, 7);
    let mesh = reck_decompose(&r)?;
    println!("4-mode Haar unitary: {} layers, error {:.2e}", mesh.layers.len(), mesh.reconstruction_error());
    for l in &mesh.layers {
        println!("  modes ({}, {})  theta {:+.4}  phi {:+.4}", l.i, l.j, l.theta, l.phi);
    }

    let dist = output_distribution(&r, &[1, 1, 0, 0])?;
    println!("\ntwo photons in a 4-mode network, {} outcomes, total {:.12}", dist.entries.len(), dist.total());
    print!("{}", dist.to_csv());

    let h = FRAC_1_SQRT_2;
    let balanced = CMatrix::from_row_slice(
        2,
        2,
        &[Complex64::new(h, 0.0), Complex64::new(0.0, h), Complex64::new(0.0, h), Complex64::new(h, 0.0)],
    );
    println!("\nHong-Ou-Mandel, exact P(1,1) = {:.3e}", output_distribution(&balanced, &[1, 1])?.probability(&[1, 1]));
    for steps in [4, 16, 64] {
        let cmp = compare_with_circuit(&balanced, &[1, 1], 2, steps)?;
        let coincidence = cmp.simulated.get(&vec![1, 1]).copied().unwrap_or(0.0);
        println!("  circuit s={steps:<3} P(1,1) {coincidence:.3e}  TV {:.3e}", cmp.total_variation);
    }
    Ok(())
}
