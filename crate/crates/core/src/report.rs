//! Structured results of the command pipelines. Each report renders as pretty
//! JSON (the machine-readable form) and as plain text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::circuit::GateCounts;
use crate::compiler::{CompileOptions, CompiledCircuit, Target};
use crate::encoding::{index_to_bitstring, EncodedBasisState};
use crate::error::Result;
use crate::interferometer::InterferometerSpec;
use crate::models::BosonicModelSpec;
use crate::permanent::{distribution_csv, OracleComparison};
use crate::sim::StateVector;

/// Probabilities below this are left out of listings.
pub const PROBABILITY_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountSummary {
    pub rx: usize,
    pub rz: usize,
    pub rzx: usize,
    pub cnot: usize,
    pub single_qubit: usize,
    pub two_qubit: usize,
    pub total: usize,
}

impl From<GateCounts> for CountSummary {
    fn from(c: GateCounts) -> Self {
        CountSummary {
            rx: c.rx,
            rz: c.rz,
            rzx: c.rzx,
            cnot: c.cnot,
            single_qubit: c.single_qubit(),
            two_qubit: c.two_qubit(),
            total: c.total(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelSummary {
    pub kind: &'static str,
    pub modes: usize,
    pub cutoff: usize,
    pub qubits: usize,
}

impl From<&BosonicModelSpec> for ModelSummary {
    fn from(spec: &BosonicModelSpec) -> Self {
        ModelSummary {
            kind: spec.kind.name(),
            modes: spec.modes,
            cutoff: spec.cutoff,
            qubits: spec.num_qubits(),
        }
    }
}

/// Number of string blocks per generator part, by support size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockSummary {
    pub part: String,
    pub single_qubit: usize,
    pub two_qubit: usize,
    pub multi_qubit: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompileReport {
    pub format: &'static str,
    pub model: ModelSummary,
    pub time: f64,
    pub steps_requested: usize,
    pub steps: usize,
    pub target: Target,
    pub optimize: bool,
    pub exact: bool,
    pub global_phase: f64,
    pub term_order: Vec<String>,
    pub blocks: Vec<BlockSummary>,
    pub naive: CountSummary,
    pub optimized: CountSummary,
    /// One side of every conjugation in a single step.
    pub conjugators: CountSummary,
}

impl CompileReport {
    pub fn new(spec: &BosonicModelSpec, options: &CompileOptions, compiled: &CompiledCircuit) -> Self {
        let mut blocks: Vec<BlockSummary> = Vec::new();
        for b in &compiled.blocks {
            let entry = match blocks.iter_mut().find(|s| s.part == b.part) {
                Some(entry) => entry,
                None => {
                    blocks.push(BlockSummary {
                        part: b.part.clone(),
                        single_qubit: 0,
                        two_qubit: 0,
                        multi_qubit: 0,
                    });
                    blocks.last_mut().unwrap()
                }
            };
            match b.weight {
                1 => entry.single_qubit += 1,
                2 => entry.two_qubit += 1,
                _ => entry.multi_qubit += 1,
            }
        }
        CompileReport {
            format: "boqc-compile-report/1",
            model: spec.into(),
            time: options.time,
            steps_requested: options.steps,
            steps: compiled.steps,
            target: options.target,
            optimize: options.optimize,
            exact: compiled.exact,
            global_phase: compiled.circuit.global_phase(),
            term_order: compiled.term_order.clone(),
            blocks,
            naive: compiled.naive_counts.into(),
            optimized: compiled.final_counts.into(),
            conjugators: compiled.conjugator_counts.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let m = &self.model;
        writeln!(
            out,
            "model {} ({} modes, cutoff {}, {} qubits)",
            m.kind, m.modes, m.cutoff, m.qubits
        )
        .unwrap();
        writeln!(
            out,
            "time {} in {} step(s), target {}, {}",
            self.time,
            self.steps,
            self.target,
            if self.exact { "exact (all terms commute)" } else { "product formula" }
        )
        .unwrap();
        writeln!(out, "{} distinct terms", self.term_order.len()).unwrap();
        for b in &self.blocks {
            writeln!(
                out,
                "  {}: {} single-qubit, {} two-qubit, {} wider blocks",
                b.part, b.single_qubit, b.two_qubit, b.multi_qubit
            )
            .unwrap();
        }
        for (label, c) in [
            ("naive", &self.naive),
            ("final", &self.optimized),
            ("conjugators", &self.conjugators),
        ] {
            writeln!(
                out,
                "{label:<12} {:>5} single-qubit  {:>5} two-qubit  (rx {}, rz {}, rzx {}, cnot {})",
                c.single_qubit, c.two_qubit, c.rx, c.rz, c.rzx, c.cnot
            )
            .unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OccupationProbability {
    pub occupations: Vec<usize>,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisProbability {
    pub bitstring: String,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulateReport {
    pub format: &'static str,
    pub model: ModelSummary,
    pub time: f64,
    pub steps: usize,
    pub target: Target,
    pub initial: Vec<usize>,
    pub initial_bitstring: String,
    pub shots: usize,
    pub seed: u64,
    pub norm: f64,
    pub leakage: f64,
    /// Probability of reading 1 on each qubit.
    pub marginals: Vec<f64>,
    pub fock: Vec<OccupationProbability>,
    pub probabilities: Vec<BasisProbability>,
    pub counts: BTreeMap<String, usize>,
}

impl SimulateReport {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        spec: &BosonicModelSpec,
        options: &CompileOptions,
        compiled: &CompiledCircuit,
        initial: &EncodedBasisState,
        occupations: &[usize],
        state: &StateVector,
        shots: usize,
        seed: u64,
    ) -> Result<Self> {
        let q = state.num_qubits();
        let marginals = (0..q)
            .map(|k| state.marginal_probability(k, true))
            .collect::<Result<Vec<_>>>()?;
        let fock = state
            .fock_distribution(spec.modes, spec.cutoff)?
            .into_iter()
            .filter(|(_, p)| *p > PROBABILITY_FLOOR)
            .map(|(occupations, probability)| OccupationProbability {
                occupations,
                probability,
            })
            .collect();
        let probabilities = state
            .probabilities()
            .into_iter()
            .enumerate()
            .filter(|(_, p)| *p > PROBABILITY_FLOOR)
            .map(|(i, probability)| BasisProbability {
                bitstring: index_to_bitstring(i, q),
                probability,
            })
            .collect();
        Ok(SimulateReport {
            format: "boqc-simulate-report/1",
            model: spec.into(),
            time: options.time,
            steps: compiled.steps,
            target: options.target,
            initial: occupations.to_vec(),
            initial_bitstring: initial.to_string(),
            shots,
            seed,
            norm: state.norm(),
            leakage: state.leakage(spec.modes, spec.cutoff)?,
            marginals,
            fock,
            probabilities,
            counts: state.sample_counts(shots, seed),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{} on {} qubits from {:?} ({})",
            self.model.kind, self.model.qubits, self.initial, self.initial_bitstring
        )
        .unwrap();
        writeln!(out, "leakage {:.3e}, norm {:.12}", self.leakage, self.norm).unwrap();
        writeln!(out, "occupation probabilities:").unwrap();
        for f in &self.fock {
            writeln!(out, "  {:?}  {:.9}", f.occupations, f.probability).unwrap();
        }
        let marg: Vec<String> = self.marginals.iter().map(|p| format!("{p:.4}")).collect();
        writeln!(out, "P(qubit = 1): [{}]", marg.join(", ")).unwrap();
        writeln!(out, "{} shots, seed {}:", self.shots, self.seed).unwrap();
        for (bits, n) in &self.counts {
            writeln!(out, "  {bits}  {n}").unwrap();
        }
        out
    }
}

/// `bitstring,count` rows in bitstring order.
pub fn histogram_csv(counts: &BTreeMap<String, usize>) -> String {
    let mut out = String::from("bitstring,count\n");
    for (bits, n) in counts {
        writeln!(out, "{bits},{n}").unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayerRow {
    pub i: usize,
    pub j: usize,
    pub theta: f64,
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReckReport {
    pub format: &'static str,
    pub modes: usize,
    pub layers: Vec<LayerRow>,
    pub output_phases: Vec<f64>,
    pub reconstruction_error: f64,
}

impl ReckReport {
    pub fn new(spec: &InterferometerSpec) -> Self {
        ReckReport {
            format: "boqc-reck-report/1",
            modes: spec.modes(),
            layers: spec
                .layers
                .iter()
                .map(|l| LayerRow {
                    i: l.i,
                    j: l.j,
                    theta: l.theta,
                    phi: l.phi,
                })
                .collect(),
            output_phases: spec.output_phases.clone(),
            reconstruction_error: spec.reconstruction_error(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} modes, {} layers", self.modes, self.layers.len()).unwrap();
        for l in &self.layers {
            writeln!(out, "  ({}, {})  theta {:+.12}  phi {:+.12}", l.i, l.j, l.theta, l.phi).unwrap();
        }
        let phases: Vec<String> = self.output_phases.iter().map(|p| format!("{p:+.12}")).collect();
        writeln!(out, "output phases [{}]", phases.join(", ")).unwrap();
        writeln!(out, "reconstruction error {:.3e}", self.reconstruction_error).unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub format: &'static str,
    pub input: Vec<usize>,
    pub cutoff: usize,
    pub steps: usize,
    pub total_variation: f64,
    pub leakage: f64,
    pub oracle: Vec<OccupationProbability>,
    pub simulated: Vec<OccupationProbability>,
}

fn listing(entries: &BTreeMap<Vec<usize>, f64>) -> Vec<OccupationProbability> {
    entries
        .iter()
        .map(|(occupations, &probability)| OccupationProbability {
            occupations: occupations.clone(),
            probability,
        })
        .collect()
}

impl OracleReport {
    pub fn new(cmp: &OracleComparison, cutoff: usize) -> Self {
        OracleReport {
            format: "boqc-oracle-report/1",
            input: cmp.oracle.input.clone(),
            cutoff,
            steps: cmp.steps,
            total_variation: cmp.total_variation,
            leakage: cmp.leakage,
            oracle: listing(&cmp.oracle.entries),
            simulated: listing(&cmp.simulated),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "input {:?}, cutoff {}, {} step(s) per layer",
            self.input, self.cutoff, self.steps
        )
        .unwrap();
        writeln!(out, "{:<16} {:>14} {:>14}", "output", "permanent", "circuit").unwrap();
        for o in &self.oracle {
            let sim = self
                .simulated
                .iter()
                .find(|s| s.occupations == o.occupations)
                .map_or(0.0, |s| s.probability);
            writeln!(
                out,
                "{:<16} {:>14.9} {:>14.9}",
                format!("{:?}", o.occupations),
                o.probability,
                sim
            )
            .unwrap();
        }
        writeln!(
            out,
            "total variation {:.3e}, leakage {:.3e}",
            self.total_variation, self.leakage
        )
        .unwrap();
        out
    }

    /// Oracle distribution as `m0,…,probability` rows.
    pub fn to_csv(&self) -> String {
        let entries: BTreeMap<Vec<usize>, f64> = self
            .oracle
            .iter()
            .map(|o| (o.occupations.clone(), o.probability))
            .collect();
        distribution_csv(self.input.len(), &entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_rows_sorted() {
        let mut counts = BTreeMap::new();
        counts.insert("10".to_string(), 3);
        counts.insert("01".to_string(), 5);
        assert_eq!(histogram_csv(&counts), "bitstring,count\n01,5\n10,3\n");
    }

    #[test]
    fn count_summary_totals() {
        let c = GateCounts {
            rx: 1,
            rz: 2,
            rzx: 3,
            cnot: 4,
        };
        let s = CountSummary::from(c);
        assert_eq!((s.single_qubit, s.two_qubit, s.total), (3, 7, 10));
    }
}
