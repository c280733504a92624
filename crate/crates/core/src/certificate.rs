//! Machine-checkable run records.
//!
//! The certificate and the complex dump are canonical JSON: every
//! integer and rational is serialized as a decimal string ("p/q" for
//! rationals), field order is fixed, and nothing mode- or
//! timing-dependent is included, so byte-identical files mean
//! identical mathematical content. Telemetry (timings, worker count,
//! arithmetic mode, escalations) lives in a separate run-meta file.

use serde::{Deserialize, Serialize};
use sha2::{Digest as _, Sha256};

use crate::cell::Cell;
use crate::components::{Certification, Verdict};
use crate::equations::{EquationFamily, LaurentPolynomial, VariableOrder};
use crate::error::{Error, Result};
use crate::num::{Int, Rat};
use crate::polyhedron::Constraint;
use crate::prevariety::{Complex, FVector};
use crate::rays::{PointednessVerdict, RaySet};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq, Hash)]
pub struct ConstraintDto {
    pub normal: Vec<String>,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellDto {
    pub dim: usize,
    pub equalities: Vec<ConstraintDto>,
    pub inequalities: Vec<ConstraintDto>,
    pub sample: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexDump {
    pub schema_version: String,
    pub ambient_dim: usize,
    pub maximal_cells: Vec<CellDto>,
    /// Deduplicated faces of all maximal cells (the maximal cells
    /// themselves included); the f-vector counts these by dimension.
    pub faces: Vec<CellDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointednessDto {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lineality: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GlobalStageDto {
    pub rays: Vec<Vec<String>>,
    #[serde(flatten)]
    pub pointedness: PointednessDto,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentDto {
    pub id: usize,
    pub cell_ids: Vec<usize>,
    pub rays: Vec<Vec<String>>,
    #[serde(flatten)]
    pub pointedness: PointednessDto,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub n: usize,
    pub valuations: Vec<String>,
    pub equations: Vec<String>,
    pub unsafe_valuations: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: String,
    pub config: ConfigEcho,
    pub equation_digest: String,
    pub ambient_dim: usize,
    pub maximal_cell_count: usize,
    pub f_vector: Vec<usize>,
    pub global_stage: GlobalStageDto,
    /// Present only when the global stage is not pointed.
    pub components: Option<Vec<ComponentDto>>,
    pub offending_components: Vec<usize>,
    pub verdict: String,
}

/// Non-canonical telemetry; excluded from byte comparisons.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunMeta {
    pub schema_version: String,
    pub mode: String,
    pub jobs: usize,
    pub escalated_to_big: bool,
    pub phases: Vec<PhaseTiming>,
    pub lp_solves: u64,
    pub lp_pivots: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhaseTiming {
    pub phase: String,
    pub seconds: f64,
}

fn rat_strings<I: Int>(xs: &[Rat<I>]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn int_strings<I: Int>(xs: &[I]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

pub fn constraint_dto<I: Int>(c: &Constraint<I>) -> ConstraintDto {
    ConstraintDto {
        normal: int_strings(&c.normal),
        rhs: c.rhs.to_string(),
    }
}

pub fn cell_dto<I: Int>(cell: &Cell<I>) -> CellDto {
    CellDto {
        dim: cell.dim,
        equalities: cell.equalities.iter().map(constraint_dto).collect(),
        inequalities: cell.inequalities.iter().map(constraint_dto).collect(),
        sample: rat_strings(&cell.sample),
    }
}

fn rays_dto<I: Int>(rays: &RaySet<I>) -> Vec<Vec<String>> {
    rays.rays.iter().map(|r| int_strings(r)).collect()
}

fn pointedness_dto<I: Int>(
    cert: &crate::rays::PointednessCertificate<I>,
) -> PointednessDto {
    PointednessDto {
        verdict: match cert.verdict {
            PointednessVerdict::Pointed => "pointed".into(),
            PointednessVerdict::NotPointed => "not_pointed".into(),
        },
        witness: cert.witness.as_ref().map(|w| rat_strings(w)),
        lineality: cert.lineality.as_ref().map(|l| rat_strings(l)),
    }
}

pub fn complex_dump<I: Int>(complex: &Complex<I>, faces: &[Cell<I>]) -> ComplexDump {
    ComplexDump {
        schema_version: SCHEMA_VERSION.into(),
        ambient_dim: complex.ambient,
        maximal_cells: complex.cells.iter().map(cell_dto).collect(),
        faces: faces.iter().map(cell_dto).collect(),
    }
}

pub fn certificate<I: Int>(
    config: ConfigEcho,
    equation_digest: String,
    ambient_dim: usize,
    f_vector: &FVector,
    cell_count: usize,
    certification: &Certification<I>,
) -> Certificate {
    let components = certification.components.as_ref().map(|reports| {
        reports
            .iter()
            .map(|r| ComponentDto {
                id: r.component.id,
                cell_ids: r.component.cell_ids.clone(),
                rays: rays_dto(&r.certificate.rays),
                pointedness: pointedness_dto(&r.certificate),
            })
            .collect()
    });
    Certificate {
        schema_version: SCHEMA_VERSION.into(),
        config,
        equation_digest,
        ambient_dim,
        maximal_cell_count: cell_count,
        f_vector: f_vector.0.clone(),
        global_stage: GlobalStageDto {
            rays: rays_dto(&certification.global.rays),
            pointedness: pointedness_dto(&certification.global),
        },
        components,
        offending_components: certification.offending.clone(),
        verdict: match certification.verdict {
            Verdict::Certified => "certified".into(),
            Verdict::Inconclusive => "inconclusive".into(),
        },
    }
}

// --- equations dump -------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquationTermDto {
    pub exponents: Vec<i64>,
    pub q0: String,
    pub q: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquationDto {
    pub label: String,
    pub terms: Vec<EquationTermDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquationsDump {
    pub schema_version: String,
    pub n: usize,
    pub variables: Vec<String>,
    pub equations: Vec<EquationDto>,
}

pub fn equations_dump(n: usize, system: &[LaurentPolynomial]) -> EquationsDump {
    let order = VariableOrder::new(n);
    EquationsDump {
        schema_version: SCHEMA_VERSION.into(),
        n,
        variables: (0..order.var_count()).map(|k| order.var_name(k)).collect(),
        equations: system
            .iter()
            .map(|p| EquationDto {
                label: p.label.clone(),
                terms: p
                    .terms
                    .iter()
                    .map(|t| EquationTermDto {
                        exponents: t.exponents.clone(),
                        q0: t.coefficient.constant.to_string(),
                        q: t.coefficient.mass.iter().map(|q| q.to_string()).collect(),
                    })
                    .collect(),
            })
            .collect(),
    }
}

/// SHA-256 over the canonical JSON text of the equations dump.
pub fn equation_digest(dump: &EquationsDump) -> String {
    let json = to_canonical_json(dump).expect("equations serialize");
    let mut hasher = Sha256::new();
    hasher.update(json.as_bytes());
    hex_string(&hasher.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Pretty JSON with a trailing newline; field order is declaration
/// order, so output is canonical.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn selection_strings(selection: &[EquationFamily]) -> Vec<String> {
    selection.iter().map(|f| f.as_str().to_string()).collect()
}

pub fn parse_selection(names: &[String]) -> Result<Vec<EquationFamily>> {
    let mut out = Vec::new();
    for name in names {
        let f = EquationFamily::parse(name)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown equation family {name:?}")))?;
        if !out.contains(&f) {
            out.push(f);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidConfig("equation selection is empty".into()));
    }
    out.sort();
    Ok(out)
}
