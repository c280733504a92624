//! End-to-end certification runs: equations, tropicalization,
//! hypersurfaces, common refinement, face census, pointedness, and the
//! certificate files.

use std::time::Instant;

use num_bigint::BigInt;

use crate::certificate::{
    self, certificate, complex_dump, equations_dump, equation_digest, Certificate, ComplexDump,
    ConfigEcho, EquationsDump, PhaseTiming, RunMeta,
};
use crate::components::certify_complex;
use crate::equations::{build_system, EquationFamily};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::num::{catch_overflow, Int, Rat};
use crate::prevariety::compute_prevariety;
use crate::tropical::{build_hypersurface, tropicalize, MassValuation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithmeticMode {
    /// 64-bit integers with overflow detection; overflow escalates the
    /// whole run to big-integer mode.
    Checked64,
    /// Arbitrary-precision integers.
    Big,
}

impl ArithmeticMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "checked64" => Some(ArithmeticMode::Checked64),
            "big" => Some(ArithmeticMode::Big),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ArithmeticMode::Checked64 => "checked64",
            ArithmeticMode::Big => "big",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: usize,
    /// Rational valuations as strings ("p" or "p/q"), one per body.
    pub valuations: Vec<String>,
    pub equations: Vec<EquationFamily>,
    pub mode: ArithmeticMode,
    pub jobs: usize,
    pub unsafe_valuations: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::UnsupportedBodyCount(self.n));
        }
        if self.valuations.len() != self.n {
            return Err(Error::InvalidConfig(format!(
                "{} valuations for {} bodies",
                self.valuations.len(),
                self.n
            )));
        }
        if self.equations.is_empty() {
            return Err(Error::InvalidConfig("equation selection is empty".into()));
        }
        // Parse and distinctness-check once, in exact arithmetic.
        let parsed: Option<Vec<Rat<BigInt>>> =
            self.valuations.iter().map(|s| Rat::parse(s)).collect();
        let parsed = parsed
            .ok_or_else(|| Error::InvalidConfig("valuations must be rationals p/q".into()))?;
        MassValuation::new(parsed, self.unsafe_valuations)?;
        Ok(())
    }

    fn echo(&self) -> ConfigEcho {
        // Canonical form of the valuations so the echo is
        // representation-independent ("4" and "8/2" print alike).
        let valuations = self
            .valuations
            .iter()
            .map(|s| Rat::<BigInt>::parse(s).expect("validated").to_string())
            .collect();
        ConfigEcho {
            n: self.n,
            valuations,
            equations: certificate::selection_strings(&self.equations),
            unsafe_valuations: self.unsafe_valuations,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunArtifacts {
    pub certificate: Certificate,
    pub complex: ComplexDump,
    pub equations: EquationsDump,
    pub meta: RunMeta,
}

struct PhaseClock {
    phases: Vec<PhaseTiming>,
    last: Instant,
}

impl PhaseClock {
    fn new() -> Self {
        PhaseClock {
            phases: Vec::new(),
            last: Instant::now(),
        }
    }

    fn lap(&mut self, name: &str) {
        let now = Instant::now();
        self.phases.push(PhaseTiming {
            phase: name.to_string(),
            seconds: now.duration_since(self.last).as_secs_f64(),
        });
        self.last = now;
    }
}

/// Runs the full pipeline in the configured arithmetic mode, escalating
/// checked64 to big on overflow.
pub fn run_certify(config: &RunConfig) -> Result<RunArtifacts> {
    config.validate()?;
    let lp0 = crate::lp::lp_stats();
    match config.mode {
        ArithmeticMode::Big => finish::<BigInt>(config, false, lp0),
        ArithmeticMode::Checked64 => {
            match catch_overflow(|| run_generic::<i64>(config)) {
                Some(result) => {
                    let (cert, complex, eqs, phases) = result?;
                    assemble(config, false, lp0, cert, complex, eqs, phases)
                }
                None => {
                    log::warn!("checked64 overflow: escalating the whole run to big integers");
                    finish::<BigInt>(config, true, lp0)
                }
            }
        }
    }
}

fn finish<I: Int>(
    config: &RunConfig,
    escalated: bool,
    lp0: (u64, u64, u64),
) -> Result<RunArtifacts> {
    let (cert, complex, eqs, phases) = run_generic::<I>(config)?;
    assemble(config, escalated, lp0, cert, complex, eqs, phases)
}

fn assemble(
    config: &RunConfig,
    escalated: bool,
    lp0: (u64, u64, u64),
    cert: Certificate,
    complex: ComplexDump,
    equations: EquationsDump,
    phases: Vec<PhaseTiming>,
) -> Result<RunArtifacts> {
    let lp1 = crate::lp::lp_stats();
    let meta = RunMeta {
        schema_version: certificate::SCHEMA_VERSION.into(),
        mode: config.mode.as_str().into(),
        jobs: config.jobs,
        escalated_to_big: escalated,
        phases,
        lp_solves: lp1.0 - lp0.0,
        lp_pivots: lp1.1 - lp0.1,
    };
    Ok(RunArtifacts {
        certificate: cert,
        complex,
        equations,
        meta,
    })
}

type GenericOutput = (Certificate, ComplexDump, EquationsDump, Vec<PhaseTiming>);

fn run_generic<I: Int>(config: &RunConfig) -> Result<GenericOutput> {
    let exec = Executor::new(config.jobs);
    let mut clock = PhaseClock::new();

    let system = build_system(config.n, &config.equations)?;
    let eq_dump = equations_dump(config.n, &system);
    let digest = equation_digest(&eq_dump);
    clock.lap("equations");

    let valuations: Vec<Rat<I>> = config
        .valuations
        .iter()
        .map(|s| Rat::parse(s).ok_or_else(|| Error::InvalidConfig(format!("valuation {s:?}"))))
        .collect::<Result<_>>()?;
    let mass = MassValuation::new(valuations, config.unsafe_valuations)?;
    let tropical: Vec<_> = system
        .iter()
        .map(|p| tropicalize(p, &mass))
        .collect::<Result<_>>()?;
    clock.lap("tropicalize");

    let hypersurfaces: Vec<_> = tropical
        .iter()
        .map(|tp| build_hypersurface(tp, &exec))
        .collect::<Result<_>>()?;
    log::info!(
        "built {} hypersurfaces, cell counts {:?}",
        hypersurfaces.len(),
        hypersurfaces.iter().map(|h| h.cells.len()).collect::<Vec<_>>()
    );
    clock.lap("hypersurfaces");

    let complex = compute_prevariety(&hypersurfaces, &exec)?;
    log::info!("prevariety has {} maximal cells", complex.cells.len());
    clock.lap("prevariety");

    let (fv, faces) = crate::prevariety::face_census(&complex, &exec);
    log::info!("f-vector {:?}", fv.0);
    clock.lap("face_census");

    let certification = certify_complex(&complex, &exec, false);
    clock.lap("certify");

    let cert = certificate(
        config.echo(),
        digest,
        complex.ambient,
        &fv,
        complex.cells.len(),
        &certification,
    );
    let dump = complex_dump(&complex, &faces);
    Ok((cert, dump, eq_dump, clock.phases))
}

/// Writes the four run files into `dir`.
pub fn write_artifacts(dir: &std::path::Path, artifacts: &RunArtifacts) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(
        dir.join("certificate.json"),
        certificate::to_canonical_json(&artifacts.certificate)?,
    )?;
    std::fs::write(
        dir.join("complex.json"),
        certificate::to_canonical_json(&artifacts.complex)?,
    )?;
    std::fs::write(
        dir.join("equations.json"),
        certificate::to_canonical_json(&artifacts.equations)?,
    )?;
    std::fs::write(
        dir.join("run_meta.json"),
        certificate::to_canonical_json(&artifacts.meta)?,
    )?;
    Ok(())
}
