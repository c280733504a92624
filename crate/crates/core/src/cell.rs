//! Canonical polyhedral cells.
//!
//! A cell's canonical form is unique per point set: implicit
//! equalities are promoted, the equality system is put in primitive
//! reduced echelon form, inequalities are reduced modulo the equality
//! span, scaled primitive, stripped of redundant rows (leaving exactly
//! the facet inequalities), and sorted. Two cells are equal iff their
//! canonical forms are identical, which makes deduplication exact.
//!
//! Reduction modulo the span can blow up coefficients, so the
//! canonical rows never enter an LP. Each cell also keeps a working
//! representation made of original (small) constraint rows describing
//! the same point set; all further exact computation runs on those, so
//! simplex tableau entries stay subdeterminants of small matrices.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::linalg::{self, Rref};
use crate::num::{Int, Rat};
use crate::polyhedron::{Constraint, HPolyhedron};

#[derive(Clone, Debug)]
pub struct Cell<I: Int> {
    pub ambient: usize,
    /// Canonical equality rows (primitive RREF, sorted by pivot).
    pub equalities: Vec<Constraint<I>>,
    /// Canonical facet rows (reduced modulo the span, primitive,
    /// sorted). Position k corresponds to `work_ineqs[k]`.
    pub inequalities: Vec<Constraint<I>>,
    pub dim: usize,
    pub sample: Vec<Rat<I>>,
    /// Rank-spanning subset of the original equality rows.
    pub work_eqs: Vec<Constraint<I>>,
    /// Original facet rows, aligned with `inequalities`.
    pub work_ineqs: Vec<Constraint<I>>,
}

impl<I: Int> PartialEq for Cell<I> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.equalities == other.equalities
            && self.inequalities == other.inequalities
    }
}

impl<I: Int> Eq for Cell<I> {}

impl<I: Int> Hash for Cell<I> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.equalities.hash(state);
        self.inequalities.hash(state);
    }
}

impl<I: Int> PartialOrd for Cell<I> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<I: Int> Ord for Cell<I> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.equalities
            .cmp(&other.equalities)
            .then_with(|| self.inequalities.cmp(&other.inequalities))
    }
}

impl<I: Int> Cell<I> {
    pub fn contains(&self, x: &[Rat<I>]) -> bool {
        self.work_eqs.iter().all(|c| c.eval(x) == c.rhs)
            && self.work_ineqs.iter().all(|c| c.eval(x) <= c.rhs)
    }

    /// Working-representation polyhedron (small rows, same point set).
    pub fn to_polyhedron(&self) -> HPolyhedron<I> {
        HPolyhedron {
            ambient: self.ambient,
            equalities: self.work_eqs.clone(),
            inequalities: self.work_ineqs.clone(),
        }
    }

    /// Homogeneous parts of the working rows, defining the recession
    /// cone `{x : E x = 0, C x <= 0}`.
    pub fn homogeneous(&self) -> (Vec<Vec<I>>, Vec<Vec<I>>) {
        (
            self.work_eqs.iter().map(|c| c.normal.clone()).collect(),
            self.work_ineqs.iter().map(|c| c.normal.clone()).collect(),
        )
    }

    /// The full ambient space as a cell.
    pub fn full_space(ambient: usize) -> Self {
        Cell {
            ambient,
            equalities: Vec::new(),
            inequalities: Vec::new(),
            dim: ambient,
            sample: vec![Rat::zero(); ambient],
            work_eqs: Vec::new(),
            work_ineqs: Vec::new(),
        }
    }
}

/// Canonicalizes an arbitrary constraint system into a [`Cell`].
/// Returns None when the system is infeasible.
pub fn canonicalize<I: Int>(
    ambient: usize,
    equalities: Vec<Constraint<I>>,
    inequalities: Vec<Constraint<I>>,
) -> Option<Cell<I>> {
    let raw = HPolyhedron { ambient, equalities, inequalities };
    let (_, implicit) = raw.analyze()?;

    // Promote implicit inequalities to equalities.
    let mut eq_rows: Vec<Constraint<I>> = raw.equalities.clone();
    for &i in &implicit {
        let c = &raw.inequalities[i];
        eq_rows.push(Constraint::equality(c.normal.clone(), c.rhs.clone()).expect("facet normal"));
    }
    let rref_input: Vec<(Vec<I>, Rat<I>)> = eq_rows
        .iter()
        .map(|c| (c.normal.clone(), c.rhs.clone()))
        .collect();
    let rref = Rref::eliminate(ambient, &rref_input).expect("promoted equalities are consistent");

    // Rank-spanning subset of the raw equality rows (small entries).
    let work_eqs = rank_pruned(ambient, eq_rows);

    // Key the remaining inequalities by their unique representative
    // modulo the span; duplicates collapse, span-constant rows drop.
    let implicit_set: Vec<bool> = {
        let mut s = vec![false; raw.inequalities.len()];
        for &i in &implicit {
            s[i] = true;
        }
        s
    };
    let mut facets: Vec<(Constraint<I>, Constraint<I>)> = Vec::new(); // (key, raw)
    for (idx, c) in raw.inequalities.iter().enumerate() {
        if implicit_set[idx] {
            continue;
        }
        let (coeffs, rhs) = rref.reduce_row(&c.normal, &c.rhs);
        let Some((normal, rhs)) = linalg::primitive_row(&coeffs, &rhs) else {
            continue; // constant on the span, necessarily slack here
        };
        let key = Constraint { normal, rhs };
        // Parallel keys: only the tightest bound can be a facet.
        match facets.iter().position(|(k, _)| k.normal == key.normal) {
            Some(p) => {
                if key.rhs < facets[p].0.rhs {
                    facets[p] = (key, c.clone());
                }
            }
            None => facets.push((key, c.clone())),
        }
    }

    // Redundancy elimination, LPs over the raw rows only.
    let keep = irredundant(ambient, &work_eqs, &facets);
    let mut kept: Vec<(Constraint<I>, Constraint<I>)> = facets
        .into_iter()
        .zip(keep)
        .filter_map(|(f, k)| k.then_some(f))
        .collect();
    kept.sort_by(|a, b| a.0.cmp(&b.0));
    let (inequalities, work_ineqs): (Vec<_>, Vec<_>) = kept.into_iter().unzip();

    let equalities: Vec<Constraint<I>> = rref
        .canonical_rows()
        .into_iter()
        .map(|(normal, rhs)| Constraint { normal, rhs })
        .collect();

    let dim = ambient - rref.rank();
    let working = HPolyhedron {
        ambient,
        equalities: work_eqs.clone(),
        inequalities: work_ineqs.clone(),
    };
    let sample = working
        .relative_interior_point()
        .expect("canonical cell is nonempty");
    debug_assert!(working.inequalities.iter().all(|c| c.eval(&sample) < c.rhs));
    Some(Cell {
        ambient,
        equalities,
        inequalities,
        dim,
        sample,
        work_eqs,
        work_ineqs,
    })
}

/// Greedy rank-spanning subset, in input order.
fn rank_pruned<I: Int>(ambient: usize, rows: Vec<Constraint<I>>) -> Vec<Constraint<I>> {
    let mut selected: Vec<Constraint<I>> = Vec::new();
    let mut selected_rows: Vec<(Vec<I>, Rat<I>)> = Vec::new();
    let mut rank = 0usize;
    for c in rows {
        selected_rows.push((c.normal.clone(), c.rhs.clone()));
        let r = Rref::eliminate(ambient, &selected_rows)
            .expect("consistent by construction")
            .rank();
        if r > rank {
            rank = r;
            selected.push(c);
        } else {
            selected_rows.pop();
        }
    }
    selected
}

/// Which facet candidates are irredundant: maximize each row subject to
/// the others; redundant iff the optimum stays within its bound. With
/// implicit equalities already promoted the survivors are exactly the
/// facets, independent of test order.
fn irredundant<I: Int>(
    ambient: usize,
    work_eqs: &[Constraint<I>],
    facets: &[(Constraint<I>, Constraint<I>)],
) -> Vec<bool> {
    let mut keep = vec![true; facets.len()];
    if facets.len() <= 1 {
        return keep;
    }
    let eq_rows: Vec<crate::lp::Row<I>> = work_eqs
        .iter()
        .map(|c| (c.normal.clone(), c.rhs.clone()))
        .collect();
    // One row per live facet; the facet under test is swapped to the
    // back and sliced off.
    let mut rows: Vec<crate::lp::Row<I>> = Vec::with_capacity(facets.len());
    let mut slot: Vec<usize> = Vec::with_capacity(facets.len());
    for (i, (_, c)) in facets.iter().enumerate() {
        slot.push(i);
        rows.push((c.normal.clone(), c.rhs.clone()));
    }
    for i in 0..facets.len() {
        let last = rows.len() - 1;
        debug_assert!(slot[i] <= last);
        if slot[i] != last {
            rows.swap(slot[i], last);
            if let Some(j) = slot.iter().position(|&r| r == last) {
                slot[j] = slot[i];
            }
            slot[i] = last;
        }
        let raw = &facets[i].1;
        let outcome = crate::lp::maximize(ambient, &eq_rows, &rows[..last], &raw.normal);
        let redundant = match outcome {
            crate::lp::MaxOutcome::Optimal { value, .. } => value <= raw.rhs,
            crate::lp::MaxOutcome::Unbounded => false,
            crate::lp::MaxOutcome::Infeasible(_) => unreachable!("cell is nonempty"),
        };
        if redundant {
            keep[i] = false;
            rows.pop();
            slot[i] = usize::MAX;
        }
    }
    keep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedron::Constraint;

    type Q = Rat<i64>;

    fn ineq(normal: Vec<i64>, rhs: i64) -> Constraint<i64> {
        Constraint::inequality(normal, Rat::from_i64(rhs)).unwrap()
    }

    fn eq(normal: Vec<i64>, rhs: i64) -> Constraint<i64> {
        Constraint::equality(normal, Rat::from_i64(rhs)).unwrap()
    }

    #[test]
    fn square_cell_canonicalizes() {
        let cell = canonicalize(
            2,
            vec![],
            vec![ineq(vec![1, 0], 1), ineq(vec![0, 1], 1), ineq(vec![-1, 0], 0), ineq(vec![0, -1], 0)],
        )
        .unwrap();
        assert_eq!(cell.dim, 2);
        assert_eq!(cell.inequalities.len(), 4);
        assert!(cell.equalities.is_empty());
        assert!(cell.contains(&cell.sample));
    }

    #[test]
    fn redundant_row_is_dropped() {
        let a = canonicalize(1, vec![], vec![ineq(vec![1], 1), ineq(vec![-1], 0)]).unwrap();
        let b = canonicalize(
            1,
            vec![],
            vec![ineq(vec![1], 1), ineq(vec![-1], 0), ineq(vec![1], 2), ineq(vec![2], 2)],
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(b.work_ineqs.len(), 2);
    }

    #[test]
    fn implicit_inequalities_become_equalities() {
        let cell = canonicalize(
            2,
            vec![],
            vec![ineq(vec![1, 1], 0), ineq(vec![-1, -1], 0), ineq(vec![1, 0], 5)],
        )
        .unwrap();
        assert_eq!(cell.dim, 1);
        assert_eq!(cell.equalities, vec![eq(vec![1, 1], 0)]);
        // x <= 5 reduced modulo x + y = 0 and kept as the only facet.
        assert_eq!(cell.inequalities.len(), 1);
        assert!(cell.contains(&cell.sample));
    }

    #[test]
    fn same_point_set_same_canonical_form() {
        // The diagonal ray {(-t,-t): t >= 0} written two ways.
        let a = canonicalize(
            2,
            vec![eq(vec![1, -1], 0)],
            vec![ineq(vec![1, 0], 0)],
        )
        .unwrap();
        let b = canonicalize(
            2,
            vec![eq(vec![-2, 2], 0)],
            vec![ineq(vec![0, 3], 0), ineq(vec![1, 1], 0)],
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim, 1);
        assert_eq!(a.sample[0], a.sample[1]);
        assert!(a.sample[0].is_negative());
        // Hash agreement follows from key-only equality.
        use std::collections::HashSet;
        let mut set = HashSet::new();
        set.insert(a);
        assert!(!set.insert(b));
    }

    #[test]
    fn infeasible_systems_yield_none() {
        assert!(canonicalize(1, vec![], vec![ineq(vec![1], -1), ineq(vec![-1], 0)]).is_none());
        assert!(canonicalize(1, vec![eq(vec![1], 0), eq(vec![1], 1)], vec![]).is_none());
    }

    #[test]
    fn point_cell_from_inequalities() {
        let cell = canonicalize(
            2,
            vec![],
            vec![ineq(vec![1, 0], 0), ineq(vec![-1, 0], 0), ineq(vec![0, 1], 0), ineq(vec![0, -1], 0)],
        )
        .unwrap();
        assert_eq!(cell.dim, 0);
        assert_eq!(cell.equalities.len(), 2);
        assert!(cell.inequalities.is_empty());
        assert_eq!(cell.sample, vec![Q::zero(), Q::zero()]);
        // The working equalities span rank 2 out of the promoted rows.
        assert_eq!(cell.work_eqs.len(), 2);
    }

    #[test]
    fn full_space_cell() {
        let cell: Cell<i64> = canonicalize(3, vec![], vec![]).unwrap();
        assert_eq!(cell, Cell::full_space(3));
    }

    #[test]
    fn working_rows_describe_the_same_set() {
        let cell = canonicalize(
            3,
            vec![eq(vec![1, 1, 1], 3)],
            vec![ineq(vec![1, -1, 0], 0), ineq(vec![-1, 0, 0], 0), ineq(vec![2, -2, 0], 1)],
        )
        .unwrap();
        // Canonical inequality count matches working rows.
        assert_eq!(cell.inequalities.len(), cell.work_ineqs.len());
        // The sample satisfies the canonical rows too.
        let canon = HPolyhedron {
            ambient: 3,
            equalities: cell.equalities.clone(),
            inequalities: cell.inequalities.clone(),
        };
        assert!(canon.contains(&cell.sample));
    }
}
