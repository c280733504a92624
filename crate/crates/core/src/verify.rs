//! Independent certificate audit.
//!
//! Re-checks a certificate and complex dump by exact substitution
//! only: no LP is solved and no polyhedral geometry is recomputed.
//! Equations are regenerated from the config echo and compared by
//! digest; samples are substituted into their cells and into every
//! tropical polynomial; witnesses are re-verified arithmetically; the
//! f-vector is recounted from the dumped face census with dimensions
//! recomputed by rank (plain elimination).

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::certificate::{
    equation_digest, equations_dump, parse_selection, CellDto, Certificate, ComplexDump,
    ConstraintDto, PointednessDto, SCHEMA_VERSION,
};
use crate::equations::build_system;
use crate::error::{Error, Result};
use crate::linalg::{dot_int_rat, Rref};
use crate::num::Rat;
use crate::tropical::{min_evaluate, tropicalize, MassValuation, TropicalPolynomial};

type B = BigInt;
type Q = Rat<B>;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Auditor {
    checks: Vec<Check>,
}

impl Auditor {
    fn record(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }

    fn fail(&mut self, name: &str, detail: impl Into<String>) {
        self.record(name, false, detail.into());
    }
}

fn parse_rat(s: &str) -> Result<Q> {
    Rat::parse(s).ok_or_else(|| Error::Schema(format!("bad rational {s:?}")))
}

fn parse_vec(strings: &[String]) -> Result<Vec<Q>> {
    strings.iter().map(|s| parse_rat(s)).collect()
}

fn parse_int_vec(strings: &[String]) -> Result<Vec<B>> {
    strings
        .iter()
        .map(|s| {
            s.parse::<B>()
                .map_err(|_| Error::Schema(format!("bad integer {s:?}")))
        })
        .collect()
}

struct ParsedConstraint {
    normal: Vec<B>,
    rhs: Q,
}

fn parse_constraint(c: &ConstraintDto) -> Result<ParsedConstraint> {
    Ok(ParsedConstraint {
        normal: parse_int_vec(&c.normal)?,
        rhs: parse_rat(&c.rhs)?,
    })
}

struct ParsedCell {
    dim: usize,
    equalities: Vec<ParsedConstraint>,
    inequalities: Vec<ParsedConstraint>,
    sample: Vec<Q>,
}

fn parse_cell(c: &CellDto) -> Result<ParsedCell> {
    Ok(ParsedCell {
        dim: c.dim,
        equalities: c.equalities.iter().map(parse_constraint).collect::<Result<_>>()?,
        inequalities: c
            .inequalities
            .iter()
            .map(parse_constraint)
            .collect::<Result<_>>()?,
        sample: parse_vec(&c.sample)?,
    })
}

/// Sample lies in the relative interior: equalities exact, facet
/// inequalities strict.
fn sample_in_relative_interior(cell: &ParsedCell, ambient: usize) -> bool {
    cell.sample.len() == ambient
        && cell
            .equalities
            .iter()
            .all(|c| dot_int_rat(&c.normal, &cell.sample) == c.rhs)
        && cell
            .inequalities
            .iter()
            .all(|c| dot_int_rat(&c.normal, &cell.sample) < c.rhs)
}

fn rank_dimension(cell: &ParsedCell, ambient: usize) -> usize {
    let rows: Vec<(Vec<B>, Q)> = cell
        .equalities
        .iter()
        .map(|c| (c.normal.clone(), c.rhs.clone()))
        .collect();
    match Rref::eliminate(ambient, &rows) {
        Some(r) => ambient - r.rank(),
        None => usize::MAX, // inconsistent equalities cannot happen in honest dumps
    }
}

fn membership_count(tps: &[TropicalPolynomial<B>], w: &[Q]) -> bool {
    tps.iter().all(|tp| min_evaluate(tp, w).1.len() >= 2)
}

fn verify_pointedness(
    auditor: &mut Auditor,
    name: &str,
    rays: &[Vec<String>],
    p: &PointednessDto,
) -> Result<()> {
    let rays: Vec<Vec<B>> = rays
        .iter()
        .map(|r| parse_int_vec(r))
        .collect::<Result<_>>()?;
    match p.verdict.as_str() {
        "pointed" => {
            let Some(witness) = &p.witness else {
                auditor.fail(name, "pointed verdict without witness");
                return Ok(());
            };
            let c = parse_vec(witness)?;
            let one = Q::one();
            let ok = rays.iter().all(|v| dot_int_rat(v, &c) >= one);
            auditor.record(
                name,
                ok,
                format!("witness over {} rays", rays.len()),
            );
        }
        "not_pointed" => {
            let Some(lineality) = &p.lineality else {
                auditor.fail(name, "not_pointed verdict without lineality witness");
                return Ok(());
            };
            let l = parse_vec(lineality)?;
            if l.len() != rays.len()
                || l.iter().any(|m| m.is_negative())
                || !l.iter().any(|m| m.is_positive())
            {
                auditor.fail(name, "lineality multipliers malformed");
                return Ok(());
            }
            let dim = rays.first().map(|r| r.len()).unwrap_or(0);
            let mut combo = vec![Q::zero(); dim];
            for (m, v) in l.iter().zip(&rays) {
                for (acc, x) in combo.iter_mut().zip(v) {
                    *acc = acc.add(&m.mul(&Rat::from_int(x.clone())));
                }
            }
            let ok = combo.iter().all(|c| c.is_zero());
            auditor.record(name, ok, "lineality combination".into());
        }
        other => auditor.fail(name, format!("unknown verdict {other:?}")),
    }
    Ok(())
}

/// Audits a certificate against its complex dump. Parse/schema errors
/// abort with `Err`; semantic mismatches are reported as failed checks.
pub fn run_verify(cert: &Certificate, complex: &ComplexDump) -> Result<VerificationReport> {
    let mut auditor = Auditor { checks: Vec::new() };

    if cert.schema_version != SCHEMA_VERSION || complex.schema_version != SCHEMA_VERSION {
        return Err(Error::Schema(format!(
            "unsupported schema versions {} / {}",
            cert.schema_version, complex.schema_version
        )));
    }

    // 1. Equations regenerate to the recorded digest.
    let selection = parse_selection(&cert.config.equations)?;
    let system = build_system(cert.config.n, &selection)?;
    let digest = equation_digest(&equations_dump(cert.config.n, &system));
    auditor.record(
        "equation_digest",
        digest == cert.equation_digest,
        format!("{} equations", system.len()),
    );

    // 2. Tropical polynomials from the config echo.
    let valuations = parse_vec(&cert.config.valuations)?;
    let mass = MassValuation::new(valuations, true)?;
    let tps: Vec<TropicalPolynomial<B>> = system
        .iter()
        .map(|p| tropicalize(p, &mass))
        .collect::<Result<_>>()?;

    let ambient = complex.ambient_dim;
    auditor.record(
        "ambient_dimension",
        cert.ambient_dim == ambient
            && system
                .first()
                .is_none_or(|p| p.terms.first().is_none_or(|t| t.exponents.len() == ambient)),
        format!("dim {ambient}"),
    );

    // 3. Maximal cells: relative-interior samples on every hypersurface.
    let cells: Vec<ParsedCell> = complex
        .maximal_cells
        .iter()
        .map(parse_cell)
        .collect::<Result<_>>()?;
    let bad_interior = cells
        .iter()
        .filter(|c| !sample_in_relative_interior(c, ambient))
        .count();
    auditor.record(
        "cell_samples_interior",
        bad_interior == 0,
        format!("{} maximal cells, {} bad", cells.len(), bad_interior),
    );
    let bad_membership = cells
        .iter()
        .filter(|c| !membership_count(&tps, &c.sample))
        .count();
    auditor.record(
        "cell_samples_on_all_hypersurfaces",
        bad_membership == 0,
        format!("{} bad", bad_membership),
    );
    auditor.record(
        "maximal_cell_count",
        cert.maximal_cell_count == cells.len(),
        format!("{} cells", cells.len()),
    );

    // 4. Face census: dimensions recomputed by rank, samples checked,
    //    f-vector recounted.
    let faces: Vec<ParsedCell> = complex.faces.iter().map(parse_cell).collect::<Result<_>>()?;
    let mut face_ok = true;
    let mut counts: Vec<usize> = Vec::new();
    for f in &faces {
        let d = rank_dimension(f, ambient);
        if d != f.dim || !sample_in_relative_interior(f, ambient) || !membership_count(&tps, &f.sample)
        {
            face_ok = false;
            continue;
        }
        if counts.len() <= d {
            counts.resize(d + 1, 0);
        }
        counts[d] += 1;
    }
    auditor.record(
        "face_census_sound",
        face_ok,
        format!("{} faces", faces.len()),
    );
    auditor.record(
        "f_vector_recount",
        counts == cert.f_vector,
        format!("recounted {:?}", counts),
    );
    // Every maximal cell appears in the census (as its improper face).
    let face_keys: HashSet<(Vec<ConstraintDto>, Vec<ConstraintDto>)> = complex
        .faces
        .iter()
        .map(|f| (f.equalities.clone(), f.inequalities.clone()))
        .collect();
    let missing = complex
        .maximal_cells
        .iter()
        .filter(|c| !face_keys.contains(&(c.equalities.clone(), c.inequalities.clone())))
        .count();
    auditor.record(
        "maximal_cells_in_census",
        missing == 0,
        format!("{missing} missing"),
    );

    // 5. Global stage witness.
    verify_pointedness(
        &mut auditor,
        "global_stage_witness",
        &cert.global_stage.rays,
        &cert.global_stage.pointedness,
    )?;

    // 6. Components: partition, witnesses, ray-union coherence, verdict.
    match &cert.components {
        None => {
            auditor.record(
                "verdict_consistency",
                cert.global_stage.pointedness.verdict == "pointed"
                    && cert.verdict == "certified"
                    && cert.offending_components.is_empty(),
                "certified at the global stage".into(),
            );
        }
        Some(components) => {
            let mut seen = vec![false; cells.len()];
            let mut partition_ok = true;
            for (k, comp) in components.iter().enumerate() {
                if comp.id != k {
                    partition_ok = false;
                }
                for &id in &comp.cell_ids {
                    if id >= cells.len() || seen[id] {
                        partition_ok = false;
                    } else {
                        seen[id] = true;
                    }
                }
            }
            partition_ok &= seen.iter().all(|s| *s);
            auditor.record(
                "component_partition",
                partition_ok,
                format!("{} components", components.len()),
            );

            for comp in components {
                verify_pointedness(
                    &mut auditor,
                    &format!("component_{}_witness", comp.id),
                    &comp.rays,
                    &comp.pointedness,
                )?;
            }

            let mut union: HashSet<Vec<String>> = HashSet::new();
            for comp in components {
                union.extend(comp.rays.iter().cloned());
            }
            let global: HashSet<Vec<String>> = cert.global_stage.rays.iter().cloned().collect();
            auditor.record(
                "global_rays_are_component_union",
                union == global,
                format!("{} rays", global.len()),
            );

            let offending: Vec<usize> = components
                .iter()
                .filter(|c| c.pointedness.verdict == "not_pointed")
                .map(|c| c.id)
                .collect();
            let verdict_ok = if offending.is_empty() {
                cert.verdict == "certified" && cert.offending_components.is_empty()
            } else {
                cert.verdict == "inconclusive" && cert.offending_components == offending
            };
            auditor.record(
                "verdict_consistency",
                verdict_ok,
                format!("verdict {}", cert.verdict),
            );
        }
    }

    Ok(VerificationReport {
        checks: auditor.checks,
    })
}
