//! Tropicalization (min convention) and tropical hypersurfaces as
//! polyhedral complexes.
//!
//! The valuation of a Puiseux series is its lowest exponent, so the
//! min convention is used throughout: a point w lies on the
//! hypersurface of a tropical polynomial iff the minimum of
//! `valuation + exponents . w` is attained at least twice.

use crate::cell::{self, Cell};
use crate::equations::{LaurentPolynomial, MassLinearCoefficient};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::num::{Int, Rat};
use crate::polyhedron::Constraint;

/// Valuations of the masses, one rational per body.
#[derive(Clone, Debug)]
pub struct MassValuation<I: Int> {
    pub values: Vec<Rat<I>>,
}

impl<I: Int> MassValuation<I> {
    /// Distinct valuations keep the prevariety independent of the
    /// actual mass series; repeats are rejected unless explicitly
    /// allowed (leading terms could then cancel).
    pub fn new(values: Vec<Rat<I>>, allow_repeated: bool) -> Result<Self> {
        if !allow_repeated {
            let mut sorted = values.clone();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DistinctValuationsRequired);
            }
        }
        Ok(MassValuation { values })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalTerm<I: Int> {
    pub valuation: Rat<I>,
    pub exponents: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPolynomial<I: Int> {
    pub label: String,
    pub terms: Vec<TropicalTerm<I>>,
}

/// Valuation of a mass-linear coefficient under distinct mass
/// valuations: the min over the support (0 stands in for the constant).
pub fn coefficient_valuation<I: Int>(
    c: &MassLinearCoefficient,
    v: &MassValuation<I>,
) -> Result<Rat<I>> {
    let mut best: Option<Rat<I>> = None;
    if !c.constant.is_zero() {
        best = Some(Rat::zero());
    }
    for (q, val) in c.mass.iter().zip(&v.values) {
        if q.is_zero() {
            continue;
        }
        best = Some(match best {
            None => val.clone(),
            Some(b) => b.min(val.clone()),
        });
    }
    best.ok_or(Error::ZeroCoefficient)
}

pub fn tropicalize<I: Int>(
    p: &LaurentPolynomial,
    v: &MassValuation<I>,
) -> Result<TropicalPolynomial<I>> {
    let terms = p
        .terms
        .iter()
        .map(|t| {
            Ok(TropicalTerm {
                valuation: coefficient_valuation(&t.coefficient, v)?,
                exponents: t.exponents.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TropicalPolynomial {
        label: p.label.clone(),
        terms,
    })
}

/// Minimum of `valuation + exponents . w` and all indices attaining it.
pub fn min_evaluate<I: Int>(tp: &TropicalPolynomial<I>, w: &[Rat<I>]) -> (Rat<I>, Vec<usize>) {
    debug_assert!(!tp.terms.is_empty());
    let mut best: Option<Rat<I>> = None;
    let mut argmin: Vec<usize> = Vec::new();
    for (i, t) in tp.terms.iter().enumerate() {
        let mut v = t.valuation.clone();
        for (e, wj) in t.exponents.iter().zip(w) {
            if *e != 0 && !wj.is_zero() {
                v = v.add(&wj.mul(&Rat::from_i64(*e)));
            }
        }
        match &best {
            Some(b) if v > *b => {}
            Some(b) if v == *b => argmin.push(i),
            _ => {
                best = Some(v);
                argmin.clear();
                argmin.push(i);
            }
        }
    }
    (best.expect("nonempty"), argmin)
}

/// One cell of a tropical hypersurface together with the set of terms
/// attaining the minimum on its relative interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperCell<I: Int> {
    pub cell: Cell<I>,
    pub argmin: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Hypersurface<I: Int> {
    pub label: String,
    pub ambient: usize,
    pub cells: Vec<HyperCell<I>>,
    /// All term valuations equal: the hypersurface is a fan (a cone
    /// complex through one point).
    pub is_fan: bool,
    /// The defining tropical polynomial.
    pub poly: TropicalPolynomial<I>,
}

/// Builds the tropical hypersurface as the set of codimension-1 cells
/// on which the minimum is attained at least twice: for each unordered
/// term pair the locus `val_a + a.w = val_b + b.w <= val_c + c.w` is
/// kept iff it has dimension N-1.
pub fn build_hypersurface<I: Int>(
    tp: &TropicalPolynomial<I>,
    exec: &Executor,
) -> Result<Hypersurface<I>> {
    if tp.terms.len() < 2 {
        return Err(Error::EmptyHypersurface(tp.label.clone()));
    }
    let ambient = tp.terms[0].exponents.len();
    let mut pairs = Vec::new();
    for a in 0..tp.terms.len() {
        for b in a + 1..tp.terms.len() {
            pairs.push((a, b));
        }
    }
    let candidates = exec.map(pairs, |(a, b)| pair_cell(tp, ambient, a, b));
    let mut cells: Vec<Cell<I>> = Vec::new();
    for cand in candidates.into_iter().flatten() {
        if !cells.contains(&cand) {
            cells.push(cand);
        }
    }
    cells.sort();
    let cells = cells
        .into_iter()
        .map(|cell| {
            let (_, argmin) = min_evaluate(tp, &cell.sample);
            debug_assert!(argmin.len() >= 2);
            HyperCell { cell, argmin }
        })
        .collect();
    let is_fan = tp.terms.windows(2).all(|w| w[0].valuation == w[1].valuation);
    Ok(Hypersurface {
        label: tp.label.clone(),
        ambient,
        cells,
        is_fan,
        poly: tp.clone(),
    })
}

fn pair_cell<I: Int>(
    tp: &TropicalPolynomial<I>,
    ambient: usize,
    a: usize,
    b: usize,
) -> Option<Cell<I>> {
    let ta = &tp.terms[a];
    let tb = &tp.terms[b];
    let diff = |x: &TropicalTerm<I>, y: &TropicalTerm<I>| -> Vec<I> {
        x.exponents
            .iter()
            .zip(&y.exponents)
            .map(|(p, q)| I::from_i64(p - q))
            .collect()
    };
    let eq = Constraint::equality(diff(ta, tb), tb.valuation.sub(&ta.valuation)).ok()?;
    let mut ineqs = Vec::with_capacity(tp.terms.len() - 2);
    for (c, tc) in tp.terms.iter().enumerate() {
        if c == a || c == b {
            continue;
        }
        let row = Constraint::inequality(diff(ta, tc), tc.valuation.sub(&ta.valuation)).ok()?;
        ineqs.push(row);
    }
    let cell = cell::canonicalize(ambient, vec![eq], ineqs)?;
    (cell.dim + 1 == ambient).then_some(cell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::Coef;
    use crate::rays::recession_rays;

    type Q = Rat<i64>;

    fn val(values: Vec<i64>) -> MassValuation<i64> {
        MassValuation::new(values.into_iter().map(Rat::from_i64).collect(), false).unwrap()
    }

    fn mass_coef(n: usize, entries: &[(usize, i64)]) -> MassLinearCoefficient {
        let mut c = MassLinearCoefficient::zero(n);
        for (k, v) in entries {
            c.mass[k - 1] = Coef::from_i64(*v);
        }
        c
    }

    /// Tropical polynomial with explicit terms (valuation, exponents).
    fn tp(terms: Vec<(i64, Vec<i64>)>) -> TropicalPolynomial<i64> {
        TropicalPolynomial {
            label: "test".into(),
            terms: terms
                .into_iter()
                .map(|(v, exponents)| TropicalTerm {
                    valuation: Rat::from_i64(v),
                    exponents,
                })
                .collect(),
        }
    }

    #[test]
    fn coefficient_valuation_examples() {
        // m1 + m2 under v = (1,4) -> 1.
        let c = mass_coef(2, &[(1, 1), (2, 1)]);
        assert_eq!(coefficient_valuation(&c, &val(vec![1, 4])).unwrap(), Q::one());
        // Constant 5 -> 0.
        let c = MassLinearCoefficient::constant(3, Coef::from_i64(5));
        assert_eq!(
            coefficient_valuation(&c, &val(vec![1, 4, 9])).unwrap(),
            Q::zero()
        );
        // 3 m2 - m3 under (1,4,9) -> 4.
        let c = mass_coef(3, &[(2, 3), (3, -1)]);
        assert_eq!(
            coefficient_valuation(&c, &val(vec![1, 4, 9])).unwrap(),
            Rat::from_i64(4)
        );
        // Zero form errors.
        let c = MassLinearCoefficient::zero(2);
        assert!(matches!(
            coefficient_valuation(&c, &val(vec![1, 4])),
            Err(Error::ZeroCoefficient)
        ));
    }

    #[test]
    fn repeated_valuations_are_rejected_by_default() {
        let vs: Vec<Q> = vec![Rat::from_i64(1), Rat::from_i64(1)];
        assert!(matches!(
            MassValuation::new(vs.clone(), false),
            Err(Error::DistinctValuationsRequired)
        ));
        assert!(MassValuation::new(vs, true).is_ok());
    }

    #[test]
    fn min_evaluate_examples() {
        // x + y + 1 with zero valuations; terms: x, y, const.
        let p = tp(vec![(0, vec![1, 0]), (0, vec![0, 1]), (0, vec![0, 0])]);
        let at = |x: i64, y: i64| {
            let w = vec![Rat::from_i64(x), Rat::from_i64(y)];
            min_evaluate(&p, &w)
        };
        assert_eq!(at(3, 5), (Q::zero(), vec![2]));
        assert_eq!(at(0, 0), (Q::zero(), vec![0, 1, 2]));
        assert_eq!(at(-2, -2), (Rat::from_i64(-2), vec![0, 1]));
    }

    #[test]
    fn tropical_line_has_three_rays() {
        let p = tp(vec![(0, vec![1, 0]), (0, vec![0, 1]), (0, vec![0, 0])]);
        let h = build_hypersurface(&p, &Executor::sequential()).unwrap();
        assert_eq!(h.cells.len(), 3);
        let mut directions: Vec<Vec<i64>> = Vec::new();
        for hc in &h.cells {
            assert_eq!(hc.cell.dim, 1);
            assert!(hc.argmin.len() >= 2);
            let (eqs, ineqs) = hc.cell.homogeneous();
            let rays = recession_rays(2, &eqs, &ineqs);
            assert_eq!(rays.len(), 1);
            directions.push(rays.rays[0].clone());
        }
        directions.sort();
        assert_eq!(
            directions,
            vec![vec![-1, -1], vec![0, 1], vec![1, 0]]
        );
        // Balancing: primitive directions sum to zero.
        let sum: Vec<i64> = (0..2).map(|k| {
            directions.iter().map(|d| d[k]).sum()
        }).collect();
        assert_eq!(sum, vec![0, 0]);
    }

    #[test]
    fn univariate_parabola_gives_single_point() {
        // 1 + x + x^2, valuations zero: min attained twice only at 0.
        let p = tp(vec![(0, vec![0]), (0, vec![1]), (0, vec![2])]);
        let h = build_hypersurface(&p, &Executor::sequential()).unwrap();
        assert_eq!(h.cells.len(), 1);
        assert_eq!(h.cells[0].cell.dim, 0);
        assert_eq!(h.cells[0].cell.sample, vec![Q::zero()]);
        assert_eq!(h.cells[0].argmin, vec![0, 1, 2]);
    }

    #[test]
    fn shifted_line_has_apex_one_one() {
        // x + y + (valuation-1 constant): apex at (1,1).
        let p = tp(vec![(0, vec![1, 0]), (0, vec![0, 1]), (1, vec![0, 0])]);
        let h = build_hypersurface(&p, &Executor::sequential()).unwrap();
        assert_eq!(h.cells.len(), 3);
        let apex = vec![Rat::from_i64(1), Rat::from_i64(1)];
        for hc in &h.cells {
            assert!(hc.cell.contains(&apex));
        }
        let (_, argmin) = min_evaluate(&p, &apex);
        assert_eq!(argmin, vec![0, 1, 2]);
    }

    #[test]
    fn single_term_polynomial_has_empty_hypersurface() {
        let p = tp(vec![(0, vec![1, 0])]);
        assert!(matches!(
            build_hypersurface(&p, &Executor::sequential()),
            Err(Error::EmptyHypersurface(_))
        ));
    }

    #[test]
    fn monomial_shift_leaves_hypersurface_unchanged() {
        let p = tp(vec![(0, vec![1, 0]), (2, vec![0, 1]), (1, vec![1, 1])]);
        let shifted = tp(vec![(5, vec![3, 1]), (7, vec![2, 2]), (6, vec![3, 2])]);
        let exec = Executor::sequential();
        let h1 = build_hypersurface(&p, &exec).unwrap();
        let h2 = build_hypersurface(&shifted, &exec).unwrap();
        let c1: Vec<_> = h1.cells.iter().map(|c| &c.cell).collect();
        let c2: Vec<_> = h2.cells.iter().map(|c| &c.cell).collect();
        assert_eq!(c1, c2);
    }

    #[test]
    fn membership_matches_argmin_count() {
        // Random-ish probes against the tropical line.
        let p = tp(vec![(0, vec![1, 0]), (0, vec![0, 1]), (0, vec![0, 0])]);
        let h = build_hypersurface(&p, &Executor::sequential()).unwrap();
        let probes = [(0i64, 0i64), (1, 0), (0, 3), (-1, -1), (-2, -1), (2, 5), (-1, 2)];
        for (x, y) in probes {
            let w = vec![Rat::from_i64(x), Rat::from_i64(y)];
            let (_, argmin) = min_evaluate(&p, &w);
            let on_surface = h.cells.iter().any(|hc| hc.cell.contains(&w));
            assert_eq!(argmin.len() >= 2, on_surface, "probe ({x},{y})");
        }
    }
}
