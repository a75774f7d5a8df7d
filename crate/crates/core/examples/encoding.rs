//! Unary encoding of Fock states and the qubit images of ladder operators.

use boqc::encoding::{encode_fock, fock_states, map_creation, map_number, FockRegister, ModeLayout};
use boqc::linalg::project;

fn main() -> Result<(), boqc::error::Error> {
    let cutoff = 2;
    println!("two modes, cutoff {cutoff}: {} qubits", ModeLayout::new(2, cutoff)?.num_qubits());
    for occ in fock_states(2, cutoff) {
        let enc = encode_fock(&FockRegister::new(occ.clone(), cutoff)?)?;
        println!("  {occ:?} -> {enc}");
    }

    let layout = ModeLayout::new(1, 3)?;
    let number = map_number(0, layout)?;
    println!("\nn for one mode at cutoff 3:");
    for term in number.iter() {
        println!("  {:+.3} {}", term.coefficient.re, term.axes.label());
    }

    // b† restricted to the code words reproduces sqrt(n+1) above the diagonal
    let words: Vec<usize> = (0..=3).map(|n| layout.index_of(&[n]).unwrap()).collect();
    let dagger = project(&map_creation(0, layout)?.to_matrix()?, &words);
    println!("\nb† on the code space:");
    for r in 0..4 {
        let row: Vec<String> = (0..4).map(|c| format!("{:6.3}", dagger[(r, c)].re)).collect();
        println!("  [{}]", row.join(" "));
    }
    Ok(())
}
