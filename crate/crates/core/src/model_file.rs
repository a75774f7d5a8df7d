//! The `boqc-model/1` TOML document: a model plus evolution and run settings.
//!
//! ```toml
//! format = "boqc-model/1"
//!
//! [model]
//! kind = "beam_splitter"
//! modes = 2
//! cutoff = 1
//! i = 0
//! j = 1
//! epsilon = 1.5707963267948966
//!
//! [evolution]
//! time = 1.0
//! steps = 1
//! target = "zx"
//!
//! [run]
//! initial = [1, 0]
//! shots = 2048
//! seed = 7
//! ```
//!
//! Complex numbers are `[re, im]` pairs and matrices are arrays of rows.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::compiler::{CompileOptions, Target};
use crate::encoding::FockRegister;
use crate::error::{Error, Result};
use crate::interferometer::haar_random_unitary;
use crate::linalg::{from_pairs, to_pairs, CMatrix};
use crate::models::{BosonicModelSpec, ModelKind};

pub const MODEL_FORMAT: &str = "boqc-model/1";
pub const DEFAULT_SHOTS: usize = 2048;

type Pairs = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub format: String,
    pub model: ModelSection,
    #[serde(default)]
    pub evolution: EvolutionSection,
    #[serde(default)]
    pub run: RunSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSection {
    BeamSplitter {
        modes: usize,
        cutoff: usize,
        i: usize,
        j: usize,
        epsilon: f64,
        #[serde(default)]
        phase: f64,
    },
    TwoModeSqueezer {
        modes: usize,
        cutoff: usize,
        i: usize,
        j: usize,
        beta: f64,
    },
    Bilinear {
        modes: usize,
        cutoff: usize,
        i: usize,
        j: usize,
        g_bs: f64,
        g_tms: f64,
    },
    Molecular {
        modes: usize,
        cutoff: usize,
        omega: Vec<f64>,
        chi: Vec<f64>,
    },
    /// `modes` counts inputs and outputs together, so the unitary is `modes/2` square.
    /// Give either `unitary` or `haar_seed`.
    BosonSampling {
        modes: usize,
        cutoff: usize,
        #[serde(default)]
        omega: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unitary: Option<Pairs>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        haar_seed: Option<u64>,
    },
    Bogoliubov {
        modes: usize,
        cutoff: usize,
        alpha: Pairs,
        beta: Pairs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvolutionSection {
    pub time: f64,
    pub steps: usize,
    pub target: Target,
    pub optimize: bool,
}

impl Default for EvolutionSection {
    fn default() -> Self {
        let o = CompileOptions::default();
        EvolutionSection {
            time: o.time,
            steps: o.steps,
            target: o.target,
            optimize: o.optimize,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    /// Fock occupations; vacuum when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial: Option<Vec<usize>>,
    pub shots: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Default for RunSection {
    fn default() -> Self {
        RunSection {
            initial: None,
            shots: DEFAULT_SHOTS,
            seed: None,
        }
    }
}

fn matrix(pairs: &Pairs, what: &str) -> Result<CMatrix> {
    from_pairs(pairs).ok_or_else(|| Error::Parse(format!("{what}: rows have unequal lengths")))
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<ModelFile> {
        let file: ModelFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.format != MODEL_FORMAT {
            return Err(Error::Parse(format!(
                "unsupported format {:?}, expected {MODEL_FORMAT:?}",
                file.format
            )));
        }
        file.validate()?;
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<ModelFile> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("model files always serialize")
    }

    pub fn from_spec(spec: &BosonicModelSpec) -> ModelFile {
        let (modes, cutoff) = (spec.modes, spec.cutoff);
        let model = match &spec.kind {
            ModelKind::BeamSplitter {
                i,
                j,
                epsilon,
                phase,
            } => ModelSection::BeamSplitter {
                modes,
                cutoff,
                i: *i,
                j: *j,
                epsilon: *epsilon,
                phase: *phase,
            },
            ModelKind::TwoModeSqueezer { i, j, beta } => ModelSection::TwoModeSqueezer {
                modes,
                cutoff,
                i: *i,
                j: *j,
                beta: *beta,
            },
            ModelKind::Bilinear { i, j, g_bs, g_tms } => ModelSection::Bilinear {
                modes,
                cutoff,
                i: *i,
                j: *j,
                g_bs: *g_bs,
                g_tms: *g_tms,
            },
            ModelKind::Molecular { omega, chi } => ModelSection::Molecular {
                modes,
                cutoff,
                omega: omega.clone(),
                chi: chi.clone(),
            },
            ModelKind::BosonSampling { unitary, omega } => ModelSection::BosonSampling {
                modes,
                cutoff,
                omega: *omega,
                unitary: Some(to_pairs(unitary)),
                haar_seed: None,
            },
            ModelKind::Bogoliubov { alpha, beta } => ModelSection::Bogoliubov {
                modes,
                cutoff,
                alpha: to_pairs(alpha),
                beta: to_pairs(beta),
            },
        };
        ModelFile {
            format: MODEL_FORMAT.to_string(),
            model,
            evolution: EvolutionSection::default(),
            run: RunSection::default(),
        }
    }

    /// Checks the model, the evolution settings and the initial state.
    pub fn validate(&self) -> Result<()> {
        let spec = self.spec()?;
        if self.evolution.steps == 0 {
            return Err(Error::Parse("evolution.steps must be at least 1".into()));
        }
        if !self.evolution.time.is_finite() {
            return Err(Error::Parse("evolution.time must be finite".into()));
        }
        self.initial_register(&spec)?;
        Ok(())
    }

    pub fn spec(&self) -> Result<BosonicModelSpec> {
        let (modes, cutoff, kind) = match &self.model {
            ModelSection::BeamSplitter {
                modes,
                cutoff,
                i,
                j,
                epsilon,
                phase,
            } => (
                *modes,
                *cutoff,
                ModelKind::BeamSplitter {
                    i: *i,
                    j: *j,
                    epsilon: *epsilon,
                    phase: *phase,
                },
            ),
            ModelSection::TwoModeSqueezer {
                modes,
                cutoff,
                i,
                j,
                beta,
            } => (
                *modes,
                *cutoff,
                ModelKind::TwoModeSqueezer {
                    i: *i,
                    j: *j,
                    beta: *beta,
                },
            ),
            ModelSection::Bilinear {
                modes,
                cutoff,
                i,
                j,
                g_bs,
                g_tms,
            } => (
                *modes,
                *cutoff,
                ModelKind::Bilinear {
                    i: *i,
                    j: *j,
                    g_bs: *g_bs,
                    g_tms: *g_tms,
                },
            ),
            ModelSection::Molecular {
                modes,
                cutoff,
                omega,
                chi,
            } => (
                *modes,
                *cutoff,
                ModelKind::Molecular {
                    omega: omega.clone(),
                    chi: chi.clone(),
                },
            ),
            ModelSection::BosonSampling {
                modes,
                cutoff,
                omega,
                unitary,
                haar_seed,
            } => {
                let unitary = match (unitary, haar_seed) {
                    (Some(pairs), None) => matrix(pairs, "model.unitary")?,
                    (None, Some(seed)) => {
                        if modes % 2 != 0 {
                            return Err(Error::Parse(
                                "boson_sampling needs an even number of modes".into(),
                            ));
                        }
                        haar_random_unitary(modes / 2, *seed)
                    }
                    _ => {
                        return Err(Error::Parse(
                            "boson_sampling needs exactly one of unitary or haar_seed".into(),
                        ))
                    }
                };
                (
                    *modes,
                    *cutoff,
                    ModelKind::BosonSampling {
                        unitary,
                        omega: *omega,
                    },
                )
            }
            ModelSection::Bogoliubov {
                modes,
                cutoff,
                alpha,
                beta,
            } => (
                *modes,
                *cutoff,
                ModelKind::Bogoliubov {
                    alpha: matrix(alpha, "model.alpha")?,
                    beta: matrix(beta, "model.beta")?,
                },
            ),
        };
        BosonicModelSpec::new(modes, cutoff, kind)
    }

    pub fn initial_register(&self, spec: &BosonicModelSpec) -> Result<FockRegister> {
        match &self.run.initial {
            None => Ok(FockRegister::vacuum(spec.modes, spec.cutoff)),
            Some(occ) => {
                if occ.len() != spec.modes {
                    return Err(Error::ShapeMismatch(format!(
                        "run.initial lists {} occupations for {} modes",
                        occ.len(),
                        spec.modes
                    )));
                }
                FockRegister::new(occ.clone(), spec.cutoff)
            }
        }
    }

    pub fn compile_options(&self) -> CompileOptions {
        CompileOptions {
            time: self.evolution.time,
            steps: self.evolution.steps,
            target: self.evolution.target,
            optimize: self.evolution.optimize,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BEAM_SPLITTER: &str = r#"
format = "boqc-model/1"

[model]
kind = "beam_splitter"
modes = 2
cutoff = 1
i = 0
j = 1
epsilon = 0.5

[evolution]
target = "cnot"

[run]
initial = [1, 0]
seed = 3
"#;

    #[test]
    fn parses_with_defaults() {
        let file = ModelFile::parse(BEAM_SPLITTER).unwrap();
        assert_eq!(file.evolution.steps, 1);
        assert_eq!(file.evolution.target, Target::Cnot);
        assert_eq!(file.run.shots, DEFAULT_SHOTS);
        let spec = file.spec().unwrap();
        assert_eq!(spec.num_qubits(), 4);
        assert_eq!(file.initial_register(&spec).unwrap().occupations(), &[1, 0]);
    }

    #[test]
    fn unknown_fields_rejected() {
        let extra = BEAM_SPLITTER.replace("epsilon = 0.5", "epsilon = 0.5\nfoo = 1");
        assert!(matches!(ModelFile::parse(&extra), Err(Error::Parse(_))));
        let extra = BEAM_SPLITTER.replace("seed = 3", "seed = 3\nverbose = true");
        assert!(matches!(ModelFile::parse(&extra), Err(Error::Parse(_))));
        let wrong = BEAM_SPLITTER.replace("boqc-model/1", "boqc-model/2");
        assert!(matches!(ModelFile::parse(&wrong), Err(Error::Parse(_))));
    }

    #[test]
    fn occupation_above_cutoff() {
        let bad = BEAM_SPLITTER.replace("initial = [1, 0]", "initial = [2, 0]");
        assert!(matches!(
            ModelFile::parse(&bad),
            Err(Error::CutoffExceeded { .. })
        ));
    }

    #[test]
    fn round_trip_through_toml() {
        let file = ModelFile::parse(BEAM_SPLITTER).unwrap();
        assert_eq!(ModelFile::parse(&file.to_toml()).unwrap(), file);

        let haar = r#"
format = "boqc-model/1"
[model]
kind = "boson_sampling"
modes = 4
cutoff = 1
haar_seed = 5
"#;
        let file = ModelFile::parse(haar).unwrap();
        let spec = file.spec().unwrap();
        let explicit = ModelFile::from_spec(&spec);
        assert_eq!(explicit.spec().unwrap(), spec);
        assert_eq!(ModelFile::parse(&explicit.to_toml()).unwrap(), explicit);
    }

    #[test]
    fn boson_sampling_needs_one_source() {
        let none = r#"
format = "boqc-model/1"
[model]
kind = "boson_sampling"
modes = 4
cutoff = 1
"#;
        assert!(matches!(ModelFile::parse(none), Err(Error::Parse(_))));
    }
}
