//! Static coordinate projections of a dumped complex.
//!
//! Emits the 0- and 1-skeleton as CSV rows suitable for plotting:
//! vertices, bounded segments (two endpoints), and rays (base point
//! plus direction). Coordinates are projected onto the chosen 2 or 3
//! axes and printed as floats.

use std::io::Write;

use anyhow::{bail, Context as _};
use num_bigint::BigInt;

use comet_core::certificate::{CellDto, ComplexDump};
use comet_core::linalg::{dot_int_rat, Rref};
use comet_core::num::Rat;

type Q = Rat<BigInt>;

pub fn emit_csv(complex: &ComplexDump, proj: &[usize], out: &mut impl Write) -> anyhow::Result<()> {
    if proj.len() != 2 && proj.len() != 3 {
        bail!("--proj needs 2 or 3 coordinate indices");
    }
    for &k in proj {
        if k >= complex.ambient_dim {
            bail!("projection index {k} out of range (ambient {})", complex.ambient_dim);
        }
    }
    let axes = |label: &str| -> Vec<String> {
        proj.iter().map(|k| format!("{label}{k}")).collect()
    };
    writeln!(out, "kind,{},{}", axes("p").join(","), axes("q").join(","))?;

    for face in &complex.faces {
        match face.dim {
            0 => {
                let p = parse_point(&face.sample)?;
                write_row(out, "vertex", Some(&project(&p, proj)), None)?;
            }
            1 => emit_edge(face, complex.ambient_dim, proj, out)?,
            _ => {}
        }
    }
    Ok(())
}

fn emit_edge(
    face: &CellDto,
    ambient: usize,
    proj: &[usize],
    out: &mut impl Write,
) -> anyhow::Result<()> {
    let sample = parse_point(&face.sample)?;
    let rows: Vec<(Vec<BigInt>, Q)> = face
        .equalities
        .iter()
        .map(|c| {
            Ok((
                parse_ints(&c.normal)?,
                parse_rat(&c.rhs)?,
            ))
        })
        .collect::<anyhow::Result<_>>()?;
    let rref = Rref::eliminate(ambient, &rows).context("inconsistent edge equalities")?;
    let kernel = rref.kernel_basis();
    if kernel.len() != 1 {
        bail!("edge with kernel dimension {}", kernel.len());
    }
    let direction = &kernel[0];

    // Parametrize x = sample + t * direction and bound t by the facets.
    let mut lo: Option<Q> = None;
    let mut hi: Option<Q> = None;
    for c in &face.inequalities {
        let normal = parse_ints(&c.normal)?;
        let rhs = parse_rat(&c.rhs)?;
        let slope = dot_int_rat(&normal, &direction.iter().map(|x| Rat::from_int(x.clone())).collect::<Vec<_>>());
        if slope.is_zero() {
            continue;
        }
        let room = rhs.sub(&dot_int_rat(&normal, &sample)).div(&slope);
        if slope.is_positive() {
            hi = Some(match hi {
                Some(h) if h <= room => h,
                _ => room,
            });
        } else {
            lo = Some(match lo {
                Some(l) if l >= room => l,
                _ => room,
            });
        }
    }
    let at = |t: &Q| -> Vec<Q> {
        sample
            .iter()
            .zip(direction)
            .map(|(s, d)| s.add(&t.mul(&Rat::from_int(d.clone()))))
            .collect()
    };
    let dir_f: Vec<f64> = proj.iter().map(|&k| int_to_f64(&direction[k])).collect();
    let neg_dir: Vec<f64> = dir_f.iter().map(|x| -x).collect();
    match (lo, hi) {
        (Some(lo), Some(hi)) => {
            write_row(out, "segment", Some(&project(&at(&lo), proj)), Some(&project(&at(&hi), proj)))?;
        }
        (Some(lo), None) => {
            write_row(out, "ray", Some(&project(&at(&lo), proj)), Some(&dir_f))?;
        }
        (None, Some(hi)) => {
            write_row(out, "ray", Some(&project(&at(&hi), proj)), Some(&neg_dir))?;
        }
        (None, None) => {
            let base = project(&sample, proj);
            write_row(out, "ray", Some(&base), Some(&dir_f))?;
            write_row(out, "ray", Some(&base), Some(&neg_dir))?;
        }
    }
    Ok(())
}

fn write_row(
    out: &mut impl Write,
    kind: &str,
    p: Option<&[f64]>,
    q: Option<&[f64]>,
) -> anyhow::Result<()> {
    let fmt = |v: Option<&[f64]>| -> String {
        match v {
            Some(xs) => xs.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(","),
            None => String::new(),
        }
    };
    let width = p.map_or(0, |v| v.len()).max(q.map_or(0, |v| v.len()));
    let pad = |s: String| -> String {
        let have = if s.is_empty() { 0 } else { s.split(',').count() };
        let mut s = s;
        for _ in have..width {
            s.push(',');
        }
        s
    };
    writeln!(out, "{kind},{},{}", pad(fmt(p)), pad(fmt(q)))?;
    Ok(())
}

fn project(point: &[Q], proj: &[usize]) -> Vec<f64> {
    proj.iter().map(|&k| rat_to_f64(&point[k])).collect()
}

fn parse_point(strings: &[String]) -> anyhow::Result<Vec<Q>> {
    strings.iter().map(|s| parse_rat(s)).collect()
}

fn parse_rat(s: &str) -> anyhow::Result<Q> {
    Rat::parse(s).with_context(|| format!("bad rational {s:?}"))
}

fn parse_ints(strings: &[String]) -> anyhow::Result<Vec<BigInt>> {
    strings
        .iter()
        .map(|s| s.parse::<BigInt>().with_context(|| format!("bad integer {s:?}")))
        .collect()
}

fn rat_to_f64(q: &Q) -> f64 {
    int_to_f64(q.numer()) / int_to_f64(q.denom())
}

fn int_to_f64(x: &BigInt) -> f64 {
    x.to_string().parse().unwrap_or(f64::NAN)
}
