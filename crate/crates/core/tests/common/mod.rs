//! Shared test oracles, all independent of the library's LP and
//! double-description code paths: Fourier-Motzkin elimination decides
//! feasibility and projects cones, and a subset-enumeration oracle
//! produces candidate extreme rays.

use comet_core::num::Rat;

pub type Q = Rat<i64>;

#[derive(Clone, Debug)]
pub struct FmRow {
    pub coeffs: Vec<Q>,
    pub rhs: Q,
    pub strict: bool,
}

impl FmRow {
    pub fn le(coeffs: Vec<i64>, rhs: i64) -> Self {
        FmRow {
            coeffs: coeffs.into_iter().map(Rat::from_i64).collect(),
            rhs: Rat::from_i64(rhs),
            strict: false,
        }
    }

    pub fn lt(coeffs: Vec<i64>, rhs: i64) -> Self {
        FmRow { strict: true, ..Self::le(coeffs, rhs) }
    }
}

/// Adds an equality as a pair of opposite non-strict rows.
pub fn push_eq(rows: &mut Vec<FmRow>, coeffs: Vec<Q>, rhs: Q) {
    rows.push(FmRow {
        coeffs: coeffs.iter().map(|c| c.neg()).collect(),
        rhs: rhs.neg(),
        strict: false,
    });
    rows.push(FmRow { coeffs, rhs, strict: false });
}

/// Fourier-Motzkin feasibility over the rationals with strict rows.
pub fn fm_feasible(ambient: usize, mut rows: Vec<FmRow>) -> bool {
    for var in 0..ambient {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut zero = Vec::new();
        for row in rows {
            if row.coeffs[var].is_positive() {
                pos.push(row);
            } else if row.coeffs[var].is_negative() {
                neg.push(row);
            } else {
                zero.push(row);
            }
        }
        let mut next = zero;
        for p in &pos {
            let pa = p.coeffs[var].clone();
            for n in &neg {
                let na = n.coeffs[var].neg();
                // p/pa + n/na eliminates the variable.
                let coeffs: Vec<Q> = p
                    .coeffs
                    .iter()
                    .zip(&n.coeffs)
                    .map(|(a, b)| a.div(&pa).add(&b.div(&na)))
                    .collect();
                let rhs = p.rhs.div(&pa).add(&n.rhs.div(&na));
                next.push(FmRow {
                    coeffs,
                    rhs,
                    strict: p.strict || n.strict,
                });
            }
        }
        dedup_rows(&mut next);
        rows = next;
    }
    rows.iter().all(|row| {
        debug_assert!(row.coeffs.iter().all(|c| c.is_zero()));
        if row.strict {
            row.rhs.is_positive()
        } else {
            !row.rhs.is_negative()
        }
    })
}

fn dedup_rows(rows: &mut Vec<FmRow>) {
    // Scale-normalize and drop exact duplicates to keep FM growth sane.
    for row in rows.iter_mut() {
        let lead = row.coeffs.iter().find(|c| !c.is_zero()).cloned();
        let scale = match lead {
            Some(l) => {
                let mut a = l;
                if a.is_negative() {
                    a = a.neg();
                }
                a
            }
            None => continue,
        };
        for c in row.coeffs.iter_mut() {
            *c = c.div(&scale);
        }
        row.rhs = row.rhs.div(&scale);
    }
    rows.sort_by(|a, b| {
        a.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .cmp(&b.coeffs.iter().map(|c| c.to_string()).collect())
            .then_with(|| a.rhs.cmp(&b.rhs))
            .then_with(|| a.strict.cmp(&b.strict))
    });
    rows.dedup_by(|a, b| a.coeffs == b.coeffs && a.rhs == b.rhs && a.strict == b.strict);
}

/// H-representation (rows `d . x <= 0`) of the conic hull of `rays`,
/// obtained by Fourier-Motzkin projection of `{(x, l): x = sum l_i r_i,
/// l >= 0}` onto x. Entirely independent of the double description
/// implementation.
pub fn fm_cone_hull(ambient: usize, rays: &[Vec<i64>]) -> Vec<Vec<Q>> {
    // Variables: x_0..x_{ambient-1}, l_0..l_{k-1}.
    let k = rays.len();
    let total = ambient + k;
    let mut rows: Vec<FmRow> = Vec::new();
    for d in 0..ambient {
        let mut coeffs = vec![Q::zero(); total];
        coeffs[d] = Q::one();
        for (j, r) in rays.iter().enumerate() {
            coeffs[ambient + j] = Rat::from_i64(-r[d]);
        }
        push_eq(&mut rows, coeffs, Q::zero());
    }
    for j in 0..k {
        let mut coeffs = vec![Q::zero(); total];
        coeffs[ambient + j] = Rat::from_i64(-1);
        rows.push(FmRow { coeffs, rhs: Q::zero(), strict: false });
    }
    // Eliminate the multipliers (the last k variables).
    let mut rows = rows;
    for var in (ambient..total).rev() {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut zero = Vec::new();
        for row in rows {
            if row.coeffs[var].is_positive() {
                pos.push(row);
            } else if row.coeffs[var].is_negative() {
                neg.push(row);
            } else {
                zero.push(row);
            }
        }
        let mut next = zero;
        for p in &pos {
            let pa = p.coeffs[var].clone();
            for n in &neg {
                let na = n.coeffs[var].neg();
                let coeffs: Vec<Q> = p
                    .coeffs
                    .iter()
                    .zip(&n.coeffs)
                    .map(|(a, b)| a.div(&pa).add(&b.div(&na)))
                    .collect();
                let rhs = p.rhs.div(&pa).add(&n.rhs.div(&na));
                next.push(FmRow { coeffs, rhs, strict: false });
            }
        }
        dedup_rows(&mut next);
        rows = next;
    }
    rows.into_iter()
        .map(|row| row.coeffs[..ambient].to_vec())
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Candidate extreme-ray directions by active-subset enumeration:
/// kernels of row subsets, kept when they satisfy every constraint.
/// Includes opposite pairs for the full lineality space.
pub fn brute_force_rays(ambient: usize, eqs: &[Vec<i64>], ineqs: &[Vec<i64>]) -> Vec<Vec<i64>> {
    use comet_core::linalg::{dot_int, Rref};
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut push = |v: Vec<i64>| {
        let ok = eqs.iter().all(|e| dot_int(e, &v) == 0)
            && ineqs.iter().all(|c| dot_int(c, &v) <= 0);
        if ok && !out.contains(&v) {
            out.push(v);
        }
    };
    let subsets = 1usize << ineqs.len();
    for mask in 0..subsets {
        let mut rows: Vec<(Vec<i64>, Q)> = eqs.iter().map(|e| (e.clone(), Q::zero())).collect();
        for (j, c) in ineqs.iter().enumerate() {
            if mask & (1 << j) != 0 {
                rows.push((c.clone(), Q::zero()));
            }
        }
        let rref = Rref::eliminate(ambient, &rows).expect("homogeneous");
        let kernel = rref.kernel_basis();
        if kernel.len() == 1 {
            let v = kernel.into_iter().next().unwrap();
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            push(v);
            push(neg);
        }
    }
    // Lineality directions.
    let mut rows: Vec<(Vec<i64>, Q)> = eqs.iter().map(|e| (e.clone(), Q::zero())).collect();
    rows.extend(ineqs.iter().map(|c| (c.clone(), Q::zero())));
    let rref = comet_core::linalg::Rref::eliminate(ambient, &rows).expect("homogeneous");
    for v in rref.kernel_basis() {
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        push(v);
        push(neg);
    }
    out.sort();
    out
}
