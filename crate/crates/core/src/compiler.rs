//! Lowering of Pauli-sum generators to gate circuits.
//!
//! Each string exponential `exp(iθP)` is built as `V† · R · V` where the
//! Clifford `V` (π/2 rotations and ZX entanglers anchored on the lowest
//! non-identity qubit) maps `P` onto a single-qubit axis and `R` is one
//! rotation on the anchor. A first-order product formula strings the blocks
//! together.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::circuit::{wrap_angle, Circuit, Gate, GateCounts, ANGLE_TOLERANCE};
use crate::encoding::{map_number, ModeLayout};
use crate::error::{Error, Result};
use crate::models::{bogoliubov_network, molecular_parts, BosonicModelSpec, ModelKind};
use crate::pauli::{Pauli, PauliString, PauliSum, PauliTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    /// Native gate set `{RX, RZ, RZX}`.
    #[default]
    Zx,
    /// `{RX, RZ, CNOT}` after rewriting every entangler.
    Cnot,
}

impl std::str::FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "zx" | "rzx" => Ok(Target::Zx),
            "cnot" | "cx" => Ok(Target::Cnot),
            other => Err(Error::Parse(format!("unknown target {other:?}; use zx or cnot"))),
        }
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Target::Zx => "zx",
            Target::Cnot => "cnot",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompileOptions {
    pub time: f64,
    pub steps: usize,
    pub target: Target,
    pub optimize: bool,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            time: 1.0,
            steps: 1,
            target: Target::Zx,
            optimize: false,
        }
    }
}

/// First-order product-formula schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct TrotterSchedule {
    pub width: usize,
    /// `(term, angle)` with `angle = Re(coefficient)·t/s`, in execution order.
    pub entries: Vec<(PauliTerm, f64)>,
    pub steps: usize,
    /// Set when all terms commute, in which case a single step is exact.
    pub exact: bool,
    /// Contribution of the identity term, `Re(c₀)·t`.
    pub global_phase: f64,
}

impl TrotterSchedule {
    /// Distinct non-identity terms of one step, in order.
    pub fn step_terms(&self) -> &[(PauliTerm, f64)] {
        &self.entries[..self.entries.len() / self.steps.max(1)]
    }
}

/// Schedule `exp(iHt)` as `s` repetitions of the simplified term list.
///
/// The imaginary parts of coefficients are ignored; callers pass Hermitian sums.
pub fn trotterize(h: &PauliSum, t: f64, s: usize) -> TrotterSchedule {
    let simplified = h.simplify();
    let mut global_phase = 0.0;
    let mut terms = Vec::new();
    for term in simplified.iter() {
        if term.axes.is_identity() {
            global_phase += term.coefficient.re * t;
        } else {
            terms.push(*term);
        }
    }
    let exact = PauliSum::from_terms(simplified.width(), terms.clone())
        .map(|sum| sum.commuting_groups().len() <= 1)
        .unwrap_or(false);
    let steps = if exact { 1 } else { s.max(1) };
    let dt = t / steps as f64;
    let mut entries = Vec::with_capacity(terms.len() * steps);
    for _ in 0..steps {
        entries.extend(terms.iter().map(|term| (*term, term.coefficient.re * dt)));
    }
    TrotterSchedule {
        width: simplified.width(),
        entries,
        steps,
        exact,
        global_phase,
    }
}

/// Clifford `V` with `V P V† = sign · axis_{anchor}`, `axis ∈ {X, Z}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Conjugation {
    pub gates: Vec<Gate>,
    pub anchor: usize,
    pub axis: Pauli,
    pub sign: f64,
}

impl Conjugation {
    pub fn counts(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for g in &self.gates {
            counts.add(g);
        }
        counts
    }

    /// The rotation `exp(iθ · sign · axis_anchor)`.
    pub fn core(&self, theta: f64) -> Gate {
        let angle = -2.0 * self.sign * theta;
        match self.axis {
            Pauli::X => Gate::Rx {
                qubit: self.anchor,
                angle,
            },
            _ => Gate::Rz {
                qubit: self.anchor,
                angle,
            },
        }
    }
}

fn generator(gate: &Gate, width: usize) -> PauliString {
    let ops: Vec<(usize, Pauli)> = match *gate {
        Gate::Rx { qubit, .. } => vec![(qubit, Pauli::X)],
        Gate::Rz { qubit, .. } => vec![(qubit, Pauli::Z)],
        Gate::Rzx {
            control, target, ..
        } => vec![(control, Pauli::Z), (target, Pauli::X)],
        Gate::Cnot { .. } => unreachable!("conjugators use rotations only"),
    };
    PauliString::from_sparse(width, &ops).expect("gate qubits lie inside the string")
}

/// `G P G†` for a quarter-turn rotation `G = e^{−iφQ/2}`, `φ = ±π/2`.
fn conjugate(gate: &Gate, p: &PauliTerm) -> PauliTerm {
    let q = generator(gate, p.width());
    if p.axes.commutes_with(&q) {
        return *p;
    }
    let phi = gate.angle().expect("rotation gate");
    let rotated = p
        .multiply(&PauliTerm::real(1.0, q))
        .expect("widths agree");
    PauliTerm::new(rotated.coefficient * crate::linalg::I * phi.sin(), rotated.axes)
}

/// Build the conjugating Clifford for a non-identity string.
pub fn conjugation(axes: &PauliString) -> Result<Conjugation> {
    let support = axes.support();
    let Some(&anchor) = support.first() else {
        return Err(Error::IdentityString);
    };
    let quarter = -FRAC_PI_2;
    let mut current = PauliTerm::real(1.0, *axes);
    let mut gates = Vec::new();
    let mut apply = |gate: Gate, current: &mut PauliTerm| {
        *current = conjugate(&gate, current);
        gates.push(gate);
    };

    // X-type partners (X first, then Y) and Z-type partners, largest index first.
    let mut x_type: Vec<usize> = Vec::new();
    for wanted in [Pauli::X, Pauli::Y] {
        x_type.extend(support.iter().rev().filter(|&&k| k != anchor && axes.get(k) == wanted));
    }
    let mut z_type: Vec<usize> = support
        .iter()
        .rev()
        .copied()
        .filter(|&k| k != anchor && axes.get(k) == Pauli::Z)
        .collect();
    x_type.reverse();
    z_type.reverse();

    loop {
        let a = current.axes.get(anchor);
        if a != Pauli::Z && !x_type.is_empty() {
            let k = x_type.pop().unwrap();
            if current.axes.get(k) == Pauli::Y {
                apply(Gate::Rz { qubit: k, angle: quarter }, &mut current);
            }
            apply(
                Gate::Rzx {
                    control: anchor,
                    target: k,
                    angle: quarter,
                },
                &mut current,
            );
        } else if a != Pauli::X && !z_type.is_empty() {
            let k = z_type.pop().unwrap();
            apply(
                Gate::Rzx {
                    control: k,
                    target: anchor,
                    angle: quarter,
                },
                &mut current,
            );
        } else if x_type.is_empty() && z_type.is_empty() {
            break;
        } else if a == Pauli::Z {
            apply(Gate::Rx { qubit: anchor, angle: quarter }, &mut current);
        } else {
            apply(Gate::Rz { qubit: anchor, angle: quarter }, &mut current);
        }
    }
    if current.axes.get(anchor) == Pauli::Y {
        apply(Gate::Rx { qubit: anchor, angle: quarter }, &mut current);
    }
    debug_assert_eq!(current.axes.weight(), 1);
    debug_assert!(current.coefficient.im.abs() < 1e-12);
    Ok(Conjugation {
        gates,
        anchor,
        axis: current.axes.get(anchor),
        sign: current.coefficient.re.signum(),
    })
}

/// Circuit for `exp(iθP)`, exact including global phase.
pub fn string_to_gates(axes: &PauliString, theta: f64) -> Result<Circuit> {
    let conj = conjugation(axes)?;
    let mut gates = conj.gates.clone();
    gates.push(conj.core(theta));
    gates.extend(conj.gates.iter().rev().map(Gate::inverse));
    Circuit::from_gates(axes.width(), gates, 0.0)
}

/// Concatenate the string circuits of a schedule.
pub fn schedule_circuit(schedule: &TrotterSchedule) -> Result<Circuit> {
    let mut circuit = Circuit::new(schedule.width);
    circuit.add_phase(schedule.global_phase);
    for (term, angle) in &schedule.entries {
        circuit.append(&string_to_gates(&term.axes, *angle)?)?;
    }
    Ok(circuit)
}

/// Replace each `RZX(∓π/2)` by `CNOT · RZ(∓π/2) · RX(∓π/2)` and track the `e^{∓iπ/4}` phase.
///
/// Any angle that is a multiple of π/2 is accepted; others are rejected.
pub fn lower_to_cnot(c: &Circuit) -> Result<Circuit> {
    let mut out = Circuit::new(c.width());
    out.add_phase(c.global_phase());
    for gate in c.gates() {
        let Gate::Rzx {
            control,
            target,
            angle,
        } = *gate
        else {
            out.push(*gate)?;
            continue;
        };
        let quarters = (angle / FRAC_PI_2).round();
        if (angle - quarters * FRAC_PI_2).abs() > 1e-9 {
            return Err(Error::UnsupportedAngle { angle });
        }
        // RZX(2π) = −I
        let turns = quarters.div_euclid(4.0);
        out.add_phase(PI * turns);
        let (count, sign) = match quarters.rem_euclid(4.0) as u8 {
            0 => (0, 0.0),
            1 => (1, 1.0),
            2 => (2, 1.0),
            _ => {
                out.add_phase(PI);
                (1, -1.0)
            }
        };
        for _ in 0..count {
            out.push(Gate::Cnot { control, target })?;
            out.push(Gate::Rz {
                qubit: control,
                angle: sign * FRAC_PI_2,
            })?;
            out.push(Gate::Rx {
                qubit: target,
                angle: sign * FRAC_PI_2,
            })?;
            out.add_phase(sign * PI / 4.0);
        }
    }
    Ok(out)
}

fn same_slot(a: &Gate, b: &Gate) -> bool {
    a.kind() == b.kind() && a.qubits() == b.qubits()
}

/// Merge `a` with a later `b` on the same slot. `None` means the pair vanished.
fn merge(a: &Gate, b: &Gate, phase: &mut f64) -> Option<Gate> {
    let Some(sum) = a.angle().zip(b.angle()).map(|(x, y)| x + y) else {
        return None; // CNOT · CNOT = I
    };
    let merged = match *a {
        Gate::Rx { qubit, .. } => Gate::Rx { qubit, angle: sum },
        Gate::Rz { qubit, .. } => Gate::Rz { qubit, angle: sum },
        Gate::Rzx {
            control, target, ..
        } => Gate::Rzx {
            control,
            target,
            angle: sum,
        },
        Gate::Cnot { .. } => unreachable!(),
    };
    reduce_trivial(merged, phase)
}

/// Drop rotations by multiples of 2π, folding `R(2π) = −I` into the phase.
fn reduce_trivial(gate: Gate, phase: &mut f64) -> Option<Gate> {
    let Some(angle) = gate.angle() else {
        return Some(gate);
    };
    if wrap_angle(angle).abs() >= ANGLE_TOLERANCE {
        return Some(gate);
    }
    let turns = (angle / (2.0 * PI)).round();
    if turns.rem_euclid(2.0) == 1.0 {
        *phase += PI;
    }
    None
}

/// Cancel and merge rotations that meet through commuting gates, to a fixpoint.
pub fn peephole_optimize(c: &Circuit) -> Circuit {
    let mut phase = c.global_phase();
    let mut gates: Vec<Option<Gate>> = c
        .gates()
        .iter()
        .map(|g| reduce_trivial(*g, &mut phase))
        .collect();
    loop {
        let mut changed = false;
        for i in 0..gates.len() {
            let Some(head) = gates[i] else { continue };
            for j in i + 1..gates.len() {
                let Some(other) = gates[j] else { continue };
                if same_slot(&head, &other) {
                    gates[i] = merge(&head, &other, &mut phase);
                    gates[j] = None;
                    changed = true;
                    break;
                }
                if !head.commutes_with(&other) {
                    break;
                }
            }
        }
        gates.retain(Option::is_some);
        if !changed {
            break;
        }
    }
    Circuit::from_gates(c.width(), gates.into_iter().flatten().collect(), phase)
        .expect("optimization keeps qubit indices")
}

/// Gate cost of one string block in the first step.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct TermBlock {
    pub part: String,
    pub term: String,
    pub weight: usize,
    pub counts: GateCounts,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompiledCircuit {
    pub circuit: Circuit,
    pub exact: bool,
    pub steps: usize,
    pub term_order: Vec<String>,
    pub blocks: Vec<TermBlock>,
    /// Gates of the conjugators `V` alone (one side), summed over one step.
    pub conjugator_counts: GateCounts,
    pub naive_counts: GateCounts,
    pub final_counts: GateCounts,
}

/// Assembles the naive circuit part by part before the shared finishing passes.
struct Assembly {
    circuit: Circuit,
    exact: bool,
    steps: usize,
    term_order: Vec<String>,
    blocks: Vec<TermBlock>,
    conjugator_counts: GateCounts,
}

impl Assembly {
    fn new(width: usize) -> Self {
        Assembly {
            circuit: Circuit::new(width),
            exact: true,
            steps: 1,
            term_order: Vec::new(),
            blocks: Vec::new(),
            conjugator_counts: GateCounts::default(),
        }
    }

    fn add(&mut self, part: &str, h: &PauliSum, time: f64, steps: usize) -> Result<()> {
        if h.width() != self.circuit.width() {
            return Err(Error::WidthMismatch {
                expected: self.circuit.width(),
                found: h.width(),
            });
        }
        if !h.is_hermitian(1e-10) {
            return Err(Error::Unsupported(format!("{part} generator is not Hermitian")));
        }
        let schedule = trotterize(h, time, steps);
        self.exact &= schedule.exact;
        self.steps = self.steps.max(schedule.steps);
        for (term, angle) in schedule.step_terms() {
            let conj = conjugation(&term.axes)?;
            let single = string_to_gates(&term.axes, *angle)?;
            self.term_order.push(term.axes.to_string());
            self.blocks.push(TermBlock {
                part: part.to_string(),
                term: term.axes.to_string(),
                weight: term.axes.weight(),
                counts: single.counts(),
            });
            let c = conj.counts();
            self.conjugator_counts.rx += c.rx;
            self.conjugator_counts.rz += c.rz;
            self.conjugator_counts.rzx += c.rzx;
        }
        self.circuit.append(&schedule_circuit(&schedule)?)
    }

    fn add_spec(&mut self, spec: &BosonicModelSpec, time: f64, steps: usize) -> Result<()> {
        let layout = spec.layout()?;
        match &spec.kind {
            ModelKind::BeamSplitter {
                i,
                j,
                epsilon,
                phase,
            } if phase.abs() > 0.0 => {
                // e^{iφ n_i} rotates the hopping phase onto a real beam splitter.
                let n_i = map_number(*i, layout)?;
                let real = BosonicModelSpec::new(
                    spec.modes,
                    spec.cutoff,
                    ModelKind::BeamSplitter {
                        i: *i,
                        j: *j,
                        epsilon: *epsilon,
                        phase: 0.0,
                    },
                )?;
                self.add("phase", &n_i, -phase, 1)?;
                self.add("beam_splitter", &real.hamiltonian()?, time, steps)?;
                self.add("phase", &n_i, *phase, 1)
            }
            ModelKind::Molecular { omega, chi } => {
                let (linear, quadratic) = molecular_parts(omega, chi, layout)?;
                self.add("linear", &linear, time, steps)?;
                self.add("quadratic", &quadratic, time, steps)
            }
            ModelKind::Bogoliubov { alpha, beta } => {
                for sub in bogoliubov_network(alpha, beta, spec.cutoff)? {
                    self.add_spec(&sub, time, steps)?;
                }
                Ok(())
            }
            kind => self.add(kind.name(), &spec.hamiltonian()?, time, steps),
        }
    }

    fn finish(self, options: &CompileOptions) -> Result<CompiledCircuit> {
        let naive_counts = self.circuit.counts();
        let mut circuit = self.circuit;
        if options.optimize {
            circuit = peephole_optimize(&circuit);
        }
        if options.target == Target::Cnot {
            circuit = lower_to_cnot(&circuit)?;
            if options.optimize {
                circuit = peephole_optimize(&circuit);
            }
        }
        Ok(CompiledCircuit {
            final_counts: circuit.counts(),
            circuit,
            exact: self.exact,
            steps: self.steps,
            term_order: self.term_order,
            blocks: self.blocks,
            conjugator_counts: self.conjugator_counts,
            naive_counts,
        })
    }
}

fn check_steps(options: &CompileOptions) -> Result<()> {
    if options.steps == 0 {
        return Err(Error::ShapeMismatch("Trotter steps must be at least 1".into()));
    }
    if !options.time.is_finite() {
        return Err(Error::ShapeMismatch("evolution time must be finite".into()));
    }
    Ok(())
}

/// Compile `exp(iHt)` for a model.
pub fn compile(spec: &BosonicModelSpec, options: &CompileOptions) -> Result<CompiledCircuit> {
    check_steps(options)?;
    spec.validate()?;
    let mut assembly = Assembly::new(spec.num_qubits());
    assembly.add_spec(spec, options.time, options.steps)?;
    assembly.finish(options)
}

/// Compile `exp(iHt)` for an arbitrary Hermitian Pauli sum.
pub fn compile_hamiltonian(h: &PauliSum, options: &CompileOptions) -> Result<CompiledCircuit> {
    check_steps(options)?;
    let mut assembly = Assembly::new(h.width());
    assembly.add("hamiltonian", h, options.time, options.steps)?;
    assembly.finish(options)
}

/// Compile the passive mesh implementing the single-particle unitary `r`.
/// `options.time` is ignored; every layer is applied once.
pub fn compile_interferometer(
    r: &crate::linalg::CMatrix,
    cutoff: usize,
    options: &CompileOptions,
) -> Result<CompiledCircuit> {
    check_steps(options)?;
    let modes = r.nrows();
    let layout = ModeLayout::new(modes, cutoff)?;
    let zeros = crate::linalg::CMatrix::zeros(modes, modes);
    let mut assembly = Assembly::new(layout.num_qubits());
    for spec in bogoliubov_network(r, &zeros, cutoff)? {
        assembly.add_spec(&spec, 1.0, options.steps)?;
    }
    assembly.finish(options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::ModeLayout;
    use crate::linalg::{distance_up_to_phase, expm_i, max_abs_diff, CMatrix};
    use crate::models::beam_splitter;
    use crate::sim::unitary_of;

    fn string_matrix(axes: &PauliString) -> CMatrix {
        PauliSum::single(PauliTerm::real(1.0, *axes)).to_matrix().unwrap()
    }

    fn check_string(label: &str, theta: f64) {
        let axes = PauliString::parse(label).unwrap();
        let u = unitary_of(&string_to_gates(&axes, theta).unwrap()).unwrap();
        let expected = expm_i(&string_matrix(&axes), theta);
        assert!(max_abs_diff(&u, &expected) < 1e-10, "{label} θ={theta}");
    }

    #[test]
    fn all_three_qubit_strings() {
        let letters = ['I', 'X', 'Y', 'Z'];
        for code in 1..64usize {
            let label: String = (0..3).map(|k| letters[code >> (2 * k) & 3]).collect();
            check_string(&label, 0.37);
            check_string(&label, -1.2);
        }
    }

    #[test]
    fn beam_splitter_block_shape() {
        let conj = conjugation(&PauliString::parse("XXXX").unwrap()).unwrap();
        let expected = vec![
            Gate::Rzx {
                control: 0,
                target: 3,
                angle: -FRAC_PI_2,
            },
            Gate::Rzx {
                control: 0,
                target: 2,
                angle: -FRAC_PI_2,
            },
            Gate::Rzx {
                control: 0,
                target: 1,
                angle: -FRAC_PI_2,
            },
            Gate::Rx {
                qubit: 0,
                angle: -FRAC_PI_2,
            },
        ];
        assert_eq!(conj.gates, expected);
        // V XXXX V† = −Z₀, so the core is e^{−iθZ}
        assert_eq!((conj.axis, conj.sign), (Pauli::Z, -1.0));
        let c = string_to_gates(&PauliString::parse("XXXX").unwrap(), 0.1).unwrap();
        assert_eq!(c.len(), 9);
        assert_eq!(c.gates()[4], Gate::Rz { qubit: 0, angle: 0.2 });
    }

    #[test]
    fn squeezer_block_adds_z_rotation_pair() {
        let conj = conjugation(&PauliString::parse("XXXY").unwrap()).unwrap();
        let rz = Gate::Rz {
            qubit: 3,
            angle: -FRAC_PI_2,
        };
        let at = conj.gates.iter().position(|g| *g == rz).unwrap();
        // placed just before the entangler that consumes it
        assert_eq!(
            conj.gates[at + 1],
            Gate::Rzx {
                control: 0,
                target: 3,
                angle: -FRAC_PI_2
            }
        );
        assert_eq!(conj.counts().rzx, 3);
        assert_eq!(conj.counts().single_qubit(), 2);
    }

    #[test]
    fn zz_block() {
        let conj = conjugation(&PauliString::parse("IZZ").unwrap()).unwrap();
        assert_eq!(
            conj.gates,
            vec![
                Gate::Rzx {
                    control: 2,
                    target: 1,
                    angle: -FRAC_PI_2
                },
                Gate::Rx {
                    qubit: 1,
                    angle: -FRAC_PI_2
                }
            ]
        );
        check_string("IZZ", 0.3);
    }

    #[test]
    fn identity_string_rejected() {
        assert_eq!(
            string_to_gates(&PauliString::identity(3), 0.1),
            Err(Error::IdentityString)
        );
    }

    #[test]
    fn trotter_schedule_shape() {
        let layout = ModeLayout::new(2, 1).unwrap();
        let h = beam_splitter(0, 1, 0.8, layout).unwrap();
        let sched = trotterize(&h, 0.5, 7);
        assert!(sched.exact);
        assert_eq!(sched.steps, 1);
        assert_eq!(sched.entries.len(), 8);
        assert!(sched.entries.iter().all(|(_, a)| (a.abs() - 0.05).abs() < 1e-15));

        let layout = ModeLayout::new(2, 2).unwrap();
        let h = beam_splitter(0, 1, 0.8, layout).unwrap();
        let m = h.simplify().len();
        let sched = trotterize(&h, 0.5, 4);
        assert!(!sched.exact);
        assert_eq!(sched.entries.len(), 4 * m);
        assert_eq!(sched.entries[..m], sched.entries[m..2 * m]);
    }

    #[test]
    fn lowering_identity() {
        for angle in [-FRAC_PI_2, FRAC_PI_2, PI, 1.5 * PI, -2.5 * PI, 4.0 * PI] {
            let c = Circuit::from_gates(
                2,
                vec![Gate::Rzx {
                    control: 1,
                    target: 0,
                    angle,
                }],
                0.0,
            )
            .unwrap();
            let lowered = lower_to_cnot(&c).unwrap();
            assert_eq!(lowered.counts().rzx, 0);
            let d = max_abs_diff(&unitary_of(&c).unwrap(), &unitary_of(&lowered).unwrap());
            assert!(d < 1e-12, "angle {angle}: {d}");
        }
        let bad = Circuit::from_gates(
            2,
            vec![Gate::Rzx {
                control: 0,
                target: 1,
                angle: 0.3,
            }],
            0.0,
        )
        .unwrap();
        assert!(matches!(
            lower_to_cnot(&bad),
            Err(Error::UnsupportedAngle { .. })
        ));
    }

    #[test]
    fn peephole_cancellations() {
        let c = Circuit::from_gates(
            2,
            vec![
                Gate::Rx { qubit: 0, angle: 0.4 },
                Gate::Rx {
                    qubit: 0,
                    angle: -0.4,
                },
                Gate::Rzx {
                    control: 0,
                    target: 1,
                    angle: FRAC_PI_2,
                },
                Gate::Rz { qubit: 0, angle: 0.3 },
                Gate::Rzx {
                    control: 0,
                    target: 1,
                    angle: -FRAC_PI_2,
                },
            ],
            0.0,
        )
        .unwrap();
        let opt = peephole_optimize(&c);
        assert_eq!(opt.gates(), &[Gate::Rz { qubit: 0, angle: 0.3 }]);

        let full_turn = Circuit::from_gates(
            1,
            vec![Gate::Rz { qubit: 0, angle: PI }, Gate::Rz { qubit: 0, angle: PI }],
            0.0,
        )
        .unwrap();
        let opt = peephole_optimize(&full_turn);
        assert!(opt.is_empty());
        let d = max_abs_diff(&unitary_of(&full_turn).unwrap(), &unitary_of(&opt).unwrap());
        assert!(d < 1e-12);
    }

    #[test]
    fn exact_beam_splitter_compile() {
        let spec = BosonicModelSpec::new(
            2,
            1,
            ModelKind::BeamSplitter {
                i: 0,
                j: 1,
                epsilon: 0.9,
                phase: 0.0,
            },
        )
        .unwrap();
        let opts = CompileOptions {
            time: 0.7,
            ..Default::default()
        };
        let compiled = compile(&spec, &opts).unwrap();
        assert!(compiled.exact);
        assert_eq!(compiled.naive_counts.rzx, 48);
        let h = spec.hamiltonian().unwrap().to_matrix().unwrap();
        let d = distance_up_to_phase(&unitary_of(&compiled.circuit).unwrap(), &expm_i(&h, 0.7));
        assert!(d < 1e-9);
    }

    #[test]
    fn phased_beam_splitter_compile() {
        let spec = BosonicModelSpec::new(
            2,
            1,
            ModelKind::BeamSplitter {
                i: 0,
                j: 1,
                epsilon: 0.6,
                phase: 0.8,
            },
        )
        .unwrap();
        let compiled = compile(&spec, &CompileOptions::default()).unwrap();
        let h = spec.hamiltonian().unwrap().to_matrix().unwrap();
        let u = unitary_of(&compiled.circuit).unwrap();
        assert!(max_abs_diff(&u, &expm_i(&h, 1.0)) < 1e-10);
    }

    #[test]
    fn zero_time_optimizes_away() {
        let spec = BosonicModelSpec::new(
            2,
            2,
            ModelKind::Bilinear {
                i: 0,
                j: 1,
                g_bs: 0.3,
                g_tms: 0.2,
            },
        )
        .unwrap();
        let opts = CompileOptions {
            time: 0.0,
            steps: 3,
            target: Target::Cnot,
            optimize: true,
        };
        let compiled = compile(&spec, &opts).unwrap();
        assert!(compiled.circuit.is_empty());
        assert!(compiled.naive_counts.total() > 0);
    }
}
