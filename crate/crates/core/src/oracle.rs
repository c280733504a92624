//! Naive prevariety oracle for tiny systems.
//!
//! Enumerates every tuple of term pairs across the polynomials, builds
//! the candidate polyhedron `min attained at pair_i for polynomial i`,
//! and keeps the feasible ones. Exponential and only suitable for tiny
//! systems, but entirely independent of the refinement engine, so the
//! two can be compared by mutual containment of sample points.

use crate::error::{Error, Result};
use crate::num::{Int, Rat};
use crate::polyhedron::HPolyhedron;
use crate::prevariety::Complex;
use crate::tropical::{min_evaluate, TropicalPolynomial};

pub const MAX_POLYS: usize = 3;
pub const MAX_TERMS: usize = 6;

/// One feasible pair-choice region with a relative interior sample.
#[derive(Clone, Debug)]
pub struct OracleRegion<I: Int> {
    pub pairs: Vec<(usize, usize)>,
    pub polyhedron: HPolyhedron<I>,
    pub sample: Vec<Rat<I>>,
}

/// Enforces the documented size limits, then enumerates.
pub fn run_oracle<I: Int>(polys: &[TropicalPolynomial<I>]) -> Result<Vec<OracleRegion<I>>> {
    if polys.len() > MAX_POLYS {
        return Err(Error::OracleTooLarge(format!(
            "{} polynomials (limit {MAX_POLYS})",
            polys.len()
        )));
    }
    if let Some(p) = polys.iter().find(|p| p.terms.len() > MAX_TERMS) {
        return Err(Error::OracleTooLarge(format!(
            "{} has {} terms (limit {MAX_TERMS})",
            p.label,
            p.terms.len()
        )));
    }
    Ok(enumerate(polys))
}

/// The unchecked enumeration (tests may exceed the public limits).
pub fn enumerate<I: Int>(polys: &[TropicalPolynomial<I>]) -> Vec<OracleRegion<I>> {
    assert!(!polys.is_empty());
    let ambient = polys[0].terms[0].exponents.len();
    let mut regions = Vec::new();
    let mut choice = Vec::with_capacity(polys.len());
    enumerate_rec(polys, ambient, 0, &mut choice, &mut regions);
    regions
}

fn enumerate_rec<I: Int>(
    polys: &[TropicalPolynomial<I>],
    ambient: usize,
    level: usize,
    choice: &mut Vec<(usize, usize)>,
    out: &mut Vec<OracleRegion<I>>,
) {
    if level == polys.len() {
        if let Some(region) = build_region(polys, ambient, choice) {
            out.push(region);
        }
        return;
    }
    let t = polys[level].terms.len();
    for a in 0..t {
        for b in a + 1..t {
            choice.push((a, b));
            enumerate_rec(polys, ambient, level + 1, choice, out);
            choice.pop();
        }
    }
}

fn build_region<I: Int>(
    polys: &[TropicalPolynomial<I>],
    ambient: usize,
    choice: &[(usize, usize)],
) -> Option<OracleRegion<I>> {
    let mut poly = HPolyhedron::new(ambient);
    for (tp, &(a, b)) in polys.iter().zip(choice) {
        let ta = &tp.terms[a];
        let tb = &tp.terms[b];
        let diff = |x: &crate::tropical::TropicalTerm<I>, y: &crate::tropical::TropicalTerm<I>| {
            x.exponents
                .iter()
                .zip(&y.exponents)
                .map(|(p, q)| I::from_i64(p - q))
                .collect::<Vec<I>>()
        };
        poly.push_equality(diff(ta, tb), tb.valuation.sub(&ta.valuation))
            .ok()?;
        for (c, tc) in tp.terms.iter().enumerate() {
            if c == a || c == b {
                continue;
            }
            poly.push_inequality(diff(ta, tc), tc.valuation.sub(&ta.valuation))
                .ok()?;
        }
    }
    let (sample, _) = poly.analyze()?;
    Some(OracleRegion {
        pairs: choice.to_vec(),
        polyhedron: poly,
        sample,
    })
}

/// Mutual containment of samples: the engine's support and the
/// oracle's union agree on every witness point.
pub fn support_matches<I: Int>(
    polys: &[TropicalPolynomial<I>],
    engine: &Complex<I>,
    oracle: &[OracleRegion<I>],
) -> bool {
    let on_all = |w: &[Rat<I>]| polys.iter().all(|tp| min_evaluate(tp, w).1.len() >= 2);
    for cell in &engine.cells {
        if !oracle.iter().any(|r| r.polyhedron.contains(&cell.sample)) {
            return false;
        }
        if !on_all(&cell.sample) {
            return false;
        }
    }
    for region in oracle {
        if !engine.contains_point(&region.sample) {
            return false;
        }
    }
    true
}
