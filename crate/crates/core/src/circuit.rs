//! Gate-level circuits, their line-oriented text format, and OpenQASM 2.0 export.
//!
//! Rotation gates use the half-angle convention: `RX(θ) = e^{−iθX/2}`,
//! `RZ(θ) = e^{−iθZ/2}`, `RZX(θ) = e^{−iθ Z_c X_t/2}`. The entangler
//! `e^{iπ/4 Z X}` is therefore `RZX(−π/2)`.

use std::f64::consts::PI;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};

pub const CIRCUIT_FORMAT: &str = "boqc-circuit/1";

/// Angles closer than this (mod 2π or 4π as appropriate) are treated as equal.
pub const ANGLE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    Rx { qubit: usize, angle: f64 },
    Rz { qubit: usize, angle: f64 },
    Rzx { control: usize, target: usize, angle: f64 },
    Cnot { control: usize, target: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    Rx,
    Rz,
    Rzx,
    Cnot,
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::Rx { .. } => GateKind::Rx,
            Gate::Rz { .. } => GateKind::Rz,
            Gate::Rzx { .. } => GateKind::Rzx,
            Gate::Cnot { .. } => GateKind::Cnot,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Rx { qubit, .. } | Gate::Rz { qubit, .. } => vec![qubit],
            Gate::Rzx {
                control, target, ..
            }
            | Gate::Cnot { control, target } => vec![control, target],
        }
    }

    pub fn qubit_mask(&self) -> u64 {
        self.qubits().iter().fold(0, |m, &q| m | 1 << q)
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Rx { angle, .. } | Gate::Rz { angle, .. } | Gate::Rzx { angle, .. } => {
                Some(angle)
            }
            Gate::Cnot { .. } => None,
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Rzx { .. } | Gate::Cnot { .. })
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::Rx { qubit, angle } => Gate::Rx {
                qubit,
                angle: -angle,
            },
            Gate::Rz { qubit, angle } => Gate::Rz {
                qubit,
                angle: -angle,
            },
            Gate::Rzx {
                control,
                target,
                angle,
            } => Gate::Rzx {
                control,
                target,
                angle: -angle,
            },
            g @ Gate::Cnot { .. } => g,
        }
    }

    /// Pauli generators as `(x_mask, z_mask)`. Two gates commute when every
    /// pair of their generators does.
    pub fn generators(&self) -> Vec<(u64, u64)> {
        match *self {
            Gate::Rx { qubit, .. } => vec![(1 << qubit, 0)],
            Gate::Rz { qubit, .. } => vec![(0, 1 << qubit)],
            Gate::Rzx {
                control, target, ..
            } => vec![(1 << target, 1 << control)],
            Gate::Cnot { control, target } => vec![(0, 1 << control), (1 << target, 0)],
        }
    }

    pub fn commutes_with(&self, other: &Gate) -> bool {
        if self.qubit_mask() & other.qubit_mask() == 0 {
            return true;
        }
        self.generators().iter().all(|&(ax, az)| {
            other
                .generators()
                .iter()
                .all(|&(bx, bz)| ((ax & bz) ^ (az & bx)).count_ones() % 2 == 0)
        })
    }

    fn text(&self) -> String {
        match *self {
            Gate::Rx { qubit, angle } => format!("rx {qubit} {angle:?}"),
            Gate::Rz { qubit, angle } => format!("rz {qubit} {angle:?}"),
            Gate::Rzx {
                control,
                target,
                angle,
            } => format!("rzx {control} {target} {angle:?}"),
            Gate::Cnot { control, target } => format!("cnot {control} {target}"),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct GateCounts {
    pub rx: usize,
    pub rz: usize,
    pub rzx: usize,
    pub cnot: usize,
}

impl GateCounts {
    pub fn single_qubit(&self) -> usize {
        self.rx + self.rz
    }

    pub fn two_qubit(&self) -> usize {
        self.rzx + self.cnot
    }

    pub fn total(&self) -> usize {
        self.single_qubit() + self.two_qubit()
    }

    pub fn add(&mut self, gate: &Gate) {
        match gate.kind() {
            GateKind::Rx => self.rx += 1,
            GateKind::Rz => self.rz += 1,
            GateKind::Rzx => self.rzx += 1,
            GateKind::Cnot => self.cnot += 1,
        }
    }
}

/// Ordered gate list on a fixed register; the first gate acts first.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
    global_phase: f64,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Circuit {
            width,
            gates: Vec::new(),
            global_phase: 0.0,
        }
    }

    pub fn from_gates(width: usize, gates: Vec<Gate>, global_phase: f64) -> Result<Self> {
        let mut c = Circuit::new(width);
        c.global_phase = global_phase;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }

    pub fn add_phase(&mut self, phase: f64) {
        self.global_phase += phase;
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        for q in gate.qubits() {
            if q >= self.width {
                return Err(Error::IndexOutOfRange {
                    index: q,
                    width: self.width,
                });
            }
        }
        if let Gate::Rzx {
            control, target, ..
        }
        | Gate::Cnot { control, target } = gate
        {
            if control == target {
                return Err(Error::ShapeMismatch(format!(
                    "two-qubit gate on a single qubit {control}"
                )));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.width != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: other.width,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        self.global_phase += other.global_phase;
        Ok(())
    }

    pub fn inverse(&self) -> Circuit {
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            global_phase: -self.global_phase,
        }
    }

    pub fn counts(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for g in &self.gates {
            counts.add(g);
        }
        counts
    }

    /// Line-oriented text serialization, exact for every `f64` angle.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{CIRCUIT_FORMAT}").unwrap();
        writeln!(out, "qubits {}", self.width).unwrap();
        writeln!(out, "global_phase {:?}", self.global_phase).unwrap();
        for g in &self.gates {
            writeln!(out, "{}", g.text()).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some(CIRCUIT_FORMAT) => {}
            other => {
                return Err(Error::Parse(format!(
                    "expected header {CIRCUIT_FORMAT:?}, found {other:?}"
                )))
            }
        }
        let width = match lines.next().and_then(|l| l.strip_prefix("qubits ")) {
            Some(w) => parse_num::<usize>(w)?,
            None => return Err(Error::Parse("missing qubit count".into())),
        };
        let mut circuit = Circuit::new(width);
        for line in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let gate = match fields.as_slice() {
                ["global_phase", p] => {
                    circuit.global_phase = parse_num(p)?;
                    continue;
                }
                ["rx", q, a] => Gate::Rx {
                    qubit: parse_num(q)?,
                    angle: parse_num(a)?,
                },
                ["rz", q, a] => Gate::Rz {
                    qubit: parse_num(q)?,
                    angle: parse_num(a)?,
                },
                ["rzx", c, t, a] => Gate::Rzx {
                    control: parse_num(c)?,
                    target: parse_num(t)?,
                    angle: parse_num(a)?,
                },
                ["cnot", c, t] => Gate::Cnot {
                    control: parse_num(c)?,
                    target: parse_num(t)?,
                },
                _ => return Err(Error::Parse(format!("unrecognized gate line {line:?}"))),
            };
            circuit.push(gate)?;
        }
        Ok(circuit)
    }

    /// OpenQASM 2.0 program. `rzx` is declared in the header since it is not
    /// part of `qelib1.inc`; the global phase is carried as a comment.
    pub fn to_qasm(&self) -> String {
        let mut out = String::new();
        out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
        if self.gates.iter().any(|g| g.kind() == GateKind::Rzx) {
            out.push_str("gate rzx(theta) a,b { h b; cx a,b; rz(theta) b; cx a,b; h b; }\n");
        }
        writeln!(out, "// global phase: {:?}", self.global_phase).unwrap();
        writeln!(out, "qreg q[{}];", self.width).unwrap();
        for g in &self.gates {
            match *g {
                Gate::Rx { qubit, angle } => writeln!(out, "rx({angle:?}) q[{qubit}];"),
                Gate::Rz { qubit, angle } => writeln!(out, "rz({angle:?}) q[{qubit}];"),
                Gate::Rzx {
                    control,
                    target,
                    angle,
                } => writeln!(out, "rzx({angle:?}) q[{control}],q[{target}];"),
                Gate::Cnot { control, target } => {
                    writeln!(out, "cx q[{control}],q[{target}];")
                }
            }
            .unwrap();
        }
        out
    }
}

fn parse_num<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Parse(format!("invalid number {s:?}")))
}

/// Reduce an angle to `(−π, π]`.
pub fn wrap_angle(angle: f64) -> f64 {
    let r = angle.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// True when two angles agree modulo 2π within [`ANGLE_TOLERANCE`].
pub fn angles_equal(a: f64, b: f64) -> bool {
    wrap_angle(a - b).abs() < ANGLE_TOLERANCE
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn sample() -> Circuit {
        Circuit::from_gates(
            3,
            vec![
                Gate::Rzx {
                    control: 0,
                    target: 2,
                    angle: -FRAC_PI_2,
                },
                Gate::Rx {
                    qubit: 0,
                    angle: 0.1,
                },
                Gate::Rz {
                    qubit: 1,
                    angle: -1e-17,
                },
                Gate::Cnot {
                    control: 1,
                    target: 0,
                },
            ],
            0.25,
        )
        .unwrap()
    }

    #[test]
    fn text_format() {
        let text = sample().to_text();
        assert_eq!(
            text,
            "boqc-circuit/1\nqubits 3\nglobal_phase 0.25\nrzx 0 2 -1.5707963267948966\nrx 0 0.1\nrz 1 -1e-17\ncnot 1 0\n"
        );
        assert_eq!(Circuit::from_text(&text).unwrap(), sample());
    }

    #[test]
    fn rejects_bad_gates() {
        let mut c = Circuit::new(2);
        assert!(c.push(Gate::Rx { qubit: 2, angle: 0.0 }).is_err());
        assert!(c
            .push(Gate::Cnot {
                control: 1,
                target: 1
            })
            .is_err());
        assert!(Circuit::from_text("boqc-circuit/1\nqubits 2\nry 0 1.0\n").is_err());
        assert!(Circuit::from_text("qubits 2\n").is_err());
    }

    #[test]
    fn qasm_export() {
        let q = sample().to_qasm();
        assert!(q.starts_with("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n"));
        assert!(q.contains("gate rzx(theta) a,b"));
        assert!(q.contains("qreg q[3];"));
        assert!(q.contains("rzx(-1.5707963267948966) q[0],q[2];"));
        assert!(q.contains("cx q[1],q[0];"));
    }

    #[test]
    fn commutation_rules() {
        let zx01 = Gate::Rzx {
            control: 0,
            target: 1,
            angle: 0.3,
        };
        let zx02 = Gate::Rzx {
            control: 0,
            target: 2,
            angle: 0.3,
        };
        assert!(zx01.commutes_with(&zx02));
        assert!(zx01.commutes_with(&Gate::Rz { qubit: 0, angle: 1.0 }));
        assert!(zx01.commutes_with(&Gate::Rx { qubit: 1, angle: 1.0 }));
        assert!(!zx01.commutes_with(&Gate::Rx { qubit: 0, angle: 1.0 }));
        assert!(!zx01.commutes_with(&Gate::Rz { qubit: 1, angle: 1.0 }));
        let cx = Gate::Cnot {
            control: 0,
            target: 1,
        };
        assert!(cx.commutes_with(&zx01));
        assert!(!cx.commutes_with(&Gate::Rzx {
            control: 1,
            target: 0,
            angle: 0.2
        }));
    }

    #[test]
    fn wrapping() {
        assert!(angles_equal(0.1, 0.1 + 2.0 * PI));
        assert!(!angles_equal(0.1, 0.1 + PI));
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-12);
    }
}
