//! Pauli string products, commutation and simplification.

use boqc::encoding::ModeLayout;
use boqc::models::beam_splitter;
use boqc::pauli::{PauliString, PauliSum, PauliTerm};

fn main() -> Result<(), boqc::error::Error> {
    let a = PauliTerm::real(1.0, PauliString::parse("XYZ")?);
    let b = PauliTerm::real(1.0, PauliString::parse("ZYX")?);
    let ab = a.multiply(&b)?;
    println!("XYZ * ZYX = {} {}", ab.coefficient, ab.axes.label());
    println!("XYZ and ZYX commute: {}", a.commutes(&b)?);

    let sum = PauliSum::from_terms(3, vec![a, b, a])?;
    println!("XYZ + ZYX + XYZ simplifies to {} terms", sum.simplify().len());
    println!("[XYZ + ZYX, XYZ] has {} terms", sum.commutator(&PauliSum::single(a))?.simplify().len());

    let eps = 1.0;
    let h = beam_splitter(0, 1, eps, ModeLayout::new(2, 1)?)?;
    println!("\nbeam splitter, one photon cutoff, in units of epsilon/8:");
    for term in h.iter() {
        println!("  {:+.0} {}", term.coefficient.re * 8.0 / eps, term.axes.label());
    }
    println!("commuting groups: {}", h.commuting_groups().len());
    Ok(())
}
