//! Self-checks grouped into suites, each comparing the library against an
//! independent reference (brute force, dense exponentials, printed tables).

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circuit::{Circuit, Gate};
use crate::compiler::{
    compile, compile_hamiltonian, lower_to_cnot, peephole_optimize, string_to_gates,
    CompileOptions, Target,
};
use crate::encoding::{
    decode_basis, encode_fock, fock_states, map_creation, FockRegister,
    ModeLayout, truncated_creation,
};
use crate::error::{Error, Result};
use crate::interferometer::{haar_random_unitary, reck_decompose};
use crate::linalg::{distance_up_to_phase, expm_i, max_abs_diff, project, spectral_norm, CMatrix};
use crate::models::{beam_splitter, BosonicModelSpec, ModelKind};
use crate::pauli::{PauliString, PauliSum, PauliTerm};
use crate::permanent::{compare_with_circuit, permanent};
use crate::sim::unitary_of;

/// Strings of the cutoff-1 beam splitter `ε(b_0†b_1 + h.c.)` with the sign of
/// their `ε/8` coefficient.
pub const BEAM_SPLITTER_EXPANSION: [(&str, f64); 8] = [
    ("XXXX", 1.0),
    ("XYYX", -1.0),
    ("XYXY", 1.0),
    ("XXYY", 1.0),
    ("YYXX", 1.0),
    ("YXYX", 1.0),
    ("YXXY", -1.0),
    ("YYYY", 1.0),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Encoding,
    Algebra,
    Compiler,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Encoding, Suite::Algebra, Suite::Compiler, Suite::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Encoding => "encoding",
            Suite::Algebra => "algebra",
            Suite::Compiler => "compiler",
            Suite::Oracle => "oracle",
        }
    }

    /// Parse a suite name; `all` expands to every suite.
    pub fn parse_selection(s: &str) -> Result<Vec<Suite>> {
        match s {
            "all" => Ok(Suite::ALL.to_vec()),
            _ => Suite::ALL
                .into_iter()
                .find(|suite| suite.name() == s)
                .map(|suite| vec![suite])
                .ok_or_else(|| {
                    Error::Parse(format!(
                        "unknown suite {s:?}; use encoding, algebra, compiler, oracle or all"
                    ))
                }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub format: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn suite_passed(&self, suite: Suite) -> bool {
        self.checks.iter().filter(|c| c.suite == suite).all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(out, "{mark} {}/{}: {}", c.suite.name(), c.name, c.detail).unwrap();
        }
        let failed = self.failures().count();
        writeln!(
            out,
            "{} checks, {} failed",
            self.checks.len(),
            failed
        )
        .unwrap();
        out
    }
}

/// Inputs the suites check. The defaults come from the library's own model
/// constructors; tests substitute altered copies.
#[derive(Debug, Clone, PartialEq)]
pub struct Fixtures {
    /// Cutoff-1 two-mode beam splitter.
    pub beam_splitter: PauliSum,
    pub epsilon: f64,
}

impl Default for Fixtures {
    fn default() -> Self {
        let epsilon = 1.0;
        let layout = ModeLayout::new(2, 1).expect("valid layout");
        Fixtures {
            beam_splitter: beam_splitter(0, 1, epsilon, layout).expect("valid beam splitter"),
            epsilon,
        }
    }
}

struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    fn record(&mut self, name: &str, outcome: Result<(bool, String)>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            suite: self.suite,
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

pub fn run(suites: &[Suite], fixtures: &Fixtures) -> VerifyReport {
    let mut checks = Vec::new();
    for &suite in suites {
        let mut rec = Recorder {
            suite,
            checks: Vec::new(),
        };
        match suite {
            Suite::Encoding => encoding_suite(&mut rec),
            Suite::Algebra => algebra_suite(&mut rec, fixtures),
            Suite::Compiler => compiler_suite(&mut rec, fixtures),
            Suite::Oracle => oracle_suite(&mut rec),
        }
        checks.extend(rec.checks);
    }
    VerifyReport {
        format: "boqc-verify-report/1",
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn encoding_suite(rec: &mut Recorder) {
    rec.record("round_trip", (|| {
        let mut count = 0;
        for modes in 1..=3 {
            for cutoff in 1..=4 {
                for occ in fock_states(modes, cutoff) {
                    let reg = FockRegister::new(occ, cutoff)?;
                    let enc = encode_fock(&reg)?;
                    if decode_basis(enc.bits(), modes, cutoff)? != reg {
                        return Ok((false, format!("{:?} does not round trip", reg.occupations())));
                    }
                    count += 1;
                }
            }
        }
        Ok((true, format!("{count} registers")))
    })());

    rec.record("printed_code_words", (|| {
        let a = encode_fock(&FockRegister::new(vec![1, 0], 1)?)?.to_string();
        let b = encode_fock(&FockRegister::new(vec![0, 1], 1)?)?.to_string();
        Ok((a == "1001" && b == "0110", format!("[1,0] -> {a}, [0,1] -> {b}")))
    })());

    rec.record("creation_matrix_elements", (|| {
        let mut worst: f64 = 0.0;
        for cutoff in 1..=3 {
            let layout = ModeLayout::new(1, cutoff)?;
            let full = map_creation(0, layout)?.to_matrix()?;
            let basis = (0..=cutoff)
                .map(|n| layout.index_of(&[n]))
                .collect::<Result<Vec<_>>>()?;
            let restricted = project(&full, &basis);
            worst = worst.max(max_abs_diff(&restricted, &truncated_creation(cutoff)));
        }
        Ok((worst < 1e-12, format!("max deviation {worst:.2e}")))
    })());
}

fn algebra_suite(rec: &mut Recorder, fx: &Fixtures) {
    let h = fx.beam_splitter.simplify();
    rec.record(
        "beam_splitter_string_count",
        Ok((h.len() == 8, format!("{} strings", h.len()))),
    );
    rec.record("beam_splitter_signs", (|| {
        let expected = fx.epsilon / 8.0;
        let mut mismatched = Vec::new();
        for (label, sign) in BEAM_SPLITTER_EXPANSION {
            let coeff = h.coefficient_of(&PauliString::parse(label)?);
            if (coeff - Complex64::new(sign * expected, 0.0)).norm() > 1e-12 {
                mismatched.push(format!("{label}={coeff}"));
            }
        }
        Ok(if mismatched.is_empty() {
            (true, "8 coefficients match ±ε/8".to_string())
        } else {
            (false, format!("mismatched: {}", mismatched.join(", ")))
        })
    })());
    rec.record("beam_splitter_pairs_commute", (|| {
        let terms = h.terms();
        let mut pairs = 0;
        for (k, a) in terms.iter().enumerate() {
            for b in &terms[k + 1..] {
                if !a.commutes(b)? {
                    return Ok((false, format!("{} and {} anticommute", a.axes, b.axes)));
                }
                pairs += 1;
            }
        }
        Ok((pairs == 28, format!("{pairs} pairs commute")))
    })());
    rec.record("symplectic_commutation", (|| {
        // every pair of 2-qubit strings against the dense commutator
        let labels: Vec<String> = (0..16)
            .map(|k| {
                let l = ['I', 'X', 'Y', 'Z'];
                format!("{}{}", l[k & 3], l[k >> 2])
            })
            .collect();
        let mats: Vec<CMatrix> = labels
            .iter()
            .map(|l| {
                PauliSum::single(PauliTerm::real(1.0, PauliString::parse(l).unwrap()))
                    .to_matrix()
                    .unwrap()
            })
            .collect();
        for a in 0..16 {
            for b in 0..16 {
                let sym = PauliString::parse(&labels[a])?.commutes_with(&PauliString::parse(&labels[b])?);
                let dense = (&mats[a] * &mats[b] - &mats[b] * &mats[a]).norm() < 1e-12;
                if sym != dense {
                    return Ok((false, format!("{} vs {}", labels[a], labels[b])));
                }
            }
        }
        Ok((true, "256 pairs".to_string()))
    })());
}

fn string_error(label: &str, theta: f64) -> Result<f64> {
    let axes = PauliString::parse(label)?;
    let u = unitary_of(&string_to_gates(&axes, theta)?)?;
    let p = PauliSum::single(PauliTerm::real(1.0, axes)).to_matrix()?;
    Ok(distance_up_to_phase(&u, &expm_i(&p, theta)))
}

fn compiler_suite(rec: &mut Recorder, fx: &Fixtures) {
    rec.record("string_decomposition", (|| {
        let mut labels: Vec<String> = fx.beam_splitter.iter().map(|t| t.axes.label()).collect();
        labels.extend(["XXXY", "ZZ", "IZIZ", "XZYI"].map(String::from));
        let mut worst: f64 = 0.0;
        for label in &labels {
            for theta in [0.125, -0.7, 2.9] {
                worst = worst.max(string_error(label, theta)?);
            }
        }
        Ok((worst < 1e-10, format!("{} strings, max error {worst:.2e}", labels.len())))
    })());

    rec.record("cnot_identity", (|| {
        let zx = Circuit::from_gates(
            2,
            vec![Gate::Rzx {
                control: 0,
                target: 1,
                angle: -FRAC_PI_2,
            }],
            0.0,
        )?;
        let lowered = lower_to_cnot(&zx)?;
        let d = max_abs_diff(&unitary_of(&zx)?, &unitary_of(&lowered)?);
        let phase_ok = (lowered.global_phase() + FRAC_PI_4).abs() < 1e-15;
        Ok((d < 1e-12 && phase_ok, format!("deviation {d:.2e}, phase {}", lowered.global_phase())))
    })());

    let options = CompileOptions {
        time: 0.7,
        ..CompileOptions::default()
    };
    rec.record("exact_commuting_compile", (|| {
        let compiled = compile_hamiltonian(&fx.beam_splitter, &options)?;
        let exact = expm_i(&fx.beam_splitter.to_matrix()?, options.time);
        let d = distance_up_to_phase(&unitary_of(&compiled.circuit)?, &exact);
        Ok((compiled.exact && d < 1e-9, format!("error {d:.2e}")))
    })());

    rec.record("lowering_and_optimizer_preserve_unitary", (|| {
        let compiled = compile_hamiltonian(&fx.beam_splitter, &options)?;
        let reference = unitary_of(&compiled.circuit)?;
        let lowered = lower_to_cnot(&compiled.circuit)?;
        let optimized = peephole_optimize(&compiled.circuit);
        let d1 = max_abs_diff(&reference, &unitary_of(&lowered)?);
        let d2 = max_abs_diff(&reference, &unitary_of(&optimized)?);
        let fewer = optimized.counts().rzx < compiled.circuit.counts().rzx;
        Ok((
            d1 < 1e-10 && d2 < 1e-10 && fewer,
            format!(
                "lowered {d1:.2e}, optimized {d2:.2e}, RZX {} -> {}",
                compiled.circuit.counts().rzx,
                optimized.counts().rzx
            ),
        ))
    })());

    rec.record("trotter_first_order", (|| {
        let spec = BosonicModelSpec::new(
            2,
            2,
            ModelKind::BeamSplitter {
                i: 0,
                j: 1,
                epsilon: 1.0,
                phase: 0.0,
            },
        )?;
        let exact = expm_i(&spec.hamiltonian()?.to_matrix()?, 1.0);
        let mut errors = Vec::new();
        for steps in [4, 8, 16, 32] {
            let c = compile(
                &spec,
                &CompileOptions {
                    steps,
                    ..CompileOptions::default()
                },
            )?;
            errors.push(spectral_norm(&(unitary_of(&c.circuit)? - &exact)));
        }
        let ratios: Vec<f64> = errors.windows(2).map(|w| w[0] / w[1]).collect();
        let ok = ratios.iter().all(|r| (1.7..=2.3).contains(r));
        Ok((ok, format!("ratios {ratios:.3?}")))
    })());

    rec.record("molecular_exact", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut worst: f64 = 0.0;
        for _ in 0..3 {
            let omega = rng.random_range(-2.0..2.0);
            let chi = rng.random_range(-1.0..1.0);
            let t = rng.random_range(-2.0..2.0);
            let spec = BosonicModelSpec::new(
                1,
                4,
                ModelKind::Molecular {
                    omega: vec![omega],
                    chi: vec![chi],
                },
            )?;
            let c = compile(
                &spec,
                &CompileOptions {
                    time: t,
                    target: Target::Cnot,
                    optimize: true,
                    ..CompileOptions::default()
                },
            )?;
            let exact = expm_i(&spec.hamiltonian()?.to_matrix()?, t);
            worst = worst.max(max_abs_diff(&unitary_of(&c.circuit)?, &exact));
        }
        Ok((worst < 1e-9, format!("max error {worst:.2e}")))
    })());
}

fn brute_force_permanent(a: &CMatrix) -> Complex64 {
    fn rec(a: &CMatrix, row: usize, used: u32) -> Complex64 {
        if row == a.nrows() {
            return Complex64::new(1.0, 0.0);
        }
        (0..a.ncols())
            .filter(|c| used & (1 << c) == 0)
            .map(|c| a[(row, c)] * rec(a, row + 1, used | 1 << c))
            .sum()
    }
    rec(a, 0, 0)
}

fn oracle_suite(rec: &mut Recorder) {
    rec.record("permanent_brute_force", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut worst: f64 = 0.0;
        for n in 1..=6 {
            let a = CMatrix::from_fn(n, n, |_, _| {
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            });
            worst = worst.max((permanent(&a)? - brute_force_permanent(&a)).norm());
        }
        Ok((worst < 1e-10, format!("max deviation {worst:.2e}")))
    })());

    rec.record("reck_reconstruction", (|| {
        let mut worst: f64 = 0.0;
        for seed in 0..20u64 {
            let r = haar_random_unitary(2 + (seed as usize % 5), seed);
            worst = worst.max(reck_decompose(&r)?.reconstruction_error());
        }
        Ok((worst < 1e-10, format!("20 unitaries, max error {worst:.2e}")))
    })());

    rec.record("hong_ou_mandel", (|| {
        let h = FRAC_1_SQRT_2;
        let r = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(h, 0.0),
                Complex64::new(0.0, h),
                Complex64::new(0.0, h),
                Complex64::new(h, 0.0),
            ],
        );
        let cmp = compare_with_circuit(&r, &[1, 1], 2, 64)?;
        let coincidence = cmp.simulated.get(&vec![1, 1]).copied().unwrap_or(0.0);
        Ok((
            coincidence < 1e-3 && cmp.total_variation < 1e-3,
            format!(
                "s=64: P(1,1) {coincidence:.2e}, TV {:.2e}, leakage {:.2e}",
                cmp.total_variation, cmp.leakage
            ),
        ))
    })());

    rec.record("single_photon_mesh", (|| {
        let r = haar_random_unitary(3, 7);
        let cmp = compare_with_circuit(&r, &[1, 0, 0], 1, 1)?;
        Ok((cmp.total_variation < 1e-6, format!("TV {:.2e}", cmp.total_variation)))
    })());
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_selection() {
        assert_eq!(Suite::parse_selection("all").unwrap().len(), 4);
        assert_eq!(Suite::parse_selection("oracle").unwrap(), vec![Suite::Oracle]);
        assert!(Suite::parse_selection("everything").is_err());
    }

    #[test]
    fn algebra_suite_passes_on_library_fixture() {
        let report = run(&[Suite::Algebra, Suite::Encoding], &Fixtures::default());
        assert!(report.passed, "{}", report.to_text());
    }

    #[test]
    fn flipped_sign_fails_only_the_algebra_suite() {
        let good = Fixtures::default();
        let mut terms: Vec<PauliTerm> = good.beam_splitter.terms().to_vec();
        let k = terms
            .iter()
            .position(|t| t.axes.label() == "XXYY")
            .unwrap();
        terms[k].coefficient = -terms[k].coefficient;
        let bad = Fixtures {
            beam_splitter: PauliSum::from_terms(4, terms).unwrap(),
            ..good.clone()
        };
        let suites = [Suite::Encoding, Suite::Algebra, Suite::Compiler];
        let before = run(&suites, &good);
        let after = run(&suites, &bad);
        assert!(!after.suite_passed(Suite::Algebra));
        for (b, a) in before.checks.iter().zip(&after.checks) {
            if b.passed != a.passed {
                assert_eq!(a.suite, Suite::Algebra, "{}", a.name);
            }
        }
        let failing: Vec<_> = after.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(failing, ["beam_splitter_signs"]);
    }
}
