//! Bosonic Hamiltonians mapped to qubits with a unary Fock encoding, compiled
//! into RX/RZ/RZX or CNOT circuits, and checked against exact statevector and
//! permanent calculations.

pub mod circuit;
pub mod cli;
pub mod compiler;
pub mod encoding;
pub mod error;
pub mod interferometer;
pub mod linalg;
pub mod model_file;
pub mod models;
pub mod pauli;
pub mod permanent;
pub mod report;
pub mod sim;
pub mod verify;
