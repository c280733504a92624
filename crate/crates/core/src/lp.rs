//! Exact linear programming over the rationals.
//!
//! The solver is a tableau simplex with integer pivoting: the tableau
//! holds integers plus one positive denominator, and every entry is a
//! subdeterminant of the starting tableau (Cramer), which bounds entry
//! growth and makes the checked 64-bit mode viable.
//!
//! Equality rows are pre-pivoted once onto structural columns and their
//! slack columns are banned from ever entering the basis; their Farkas
//! multipliers are sign-free. Feasibility then runs a dual-simplex
//! phase from the resulting basis, optimization a primal phase. Pivot
//! selection is largest-coefficient / ratio-test with deterministic
//! ties, falling back to Bland's rule after a pivot budget so that
//! termination is guaranteed. All decisions are exact; infeasibility
//! yields Farkas multipliers.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::num::{Int, Rat};

/// Global LP counters (diagnostics only).
pub static LP_SOLVES: AtomicU64 = AtomicU64::new(0);
pub static LP_PIVOTS: AtomicU64 = AtomicU64::new(0);
pub static LP_NANOS: AtomicU64 = AtomicU64::new(0);

pub fn lp_stats() -> (u64, u64, u64) {
    (
        LP_SOLVES.load(AtomicOrdering::Relaxed),
        LP_PIVOTS.load(AtomicOrdering::Relaxed),
        LP_NANOS.load(AtomicOrdering::Relaxed),
    )
}

pub type Row<I> = (Vec<I>, Rat<I>);

#[derive(Clone, Debug)]
pub enum FeasOutcome<I: Int> {
    /// A point satisfying every row exactly.
    Feasible(Vec<Rat<I>>),
    /// Multipliers combining the rows into `0 <= negative`:
    /// nonnegative on inequalities, sign-free on equalities.
    Infeasible(FarkasRows<I>),
}

#[derive(Clone, Debug)]
pub struct FarkasRows<I: Int> {
    pub ineq: Vec<Rat<I>>,
    pub eq: Vec<Rat<I>>,
}

#[derive(Clone, Debug)]
pub enum MaxOutcome<I: Int> {
    Optimal { point: Vec<Rat<I>>, value: Rat<I> },
    Unbounded,
    Infeasible(FarkasRows<I>),
}

struct Tableau<I: Int> {
    n: usize,
    /// Equality row count (rows 0..e, slack columns 2n..2n+e, banned).
    e: usize,
    /// Inequality row count (rows e..e+m).
    m: usize,
    width: usize,
    /// (e + m + 1) x width, row-major; last row is the objective.
    entries: Vec<I>,
    den: I,
    basis: Vec<usize>,
    row_scale: Vec<I>,
    pivots: usize,
    bland_after: usize,
}

impl<I: Int> Tableau<I> {
    /// Columns: 0..n positive parts, n..2n negative parts, 2n..2n+e
    /// equality slacks (banned), 2n+e..2n+e+m inequality slacks, rhs.
    fn new(ambient: usize, eq_rows: &[Row<I>], ineq_rows: &[Row<I>], objective: &[I]) -> Self {
        let n = ambient;
        let e = eq_rows.len();
        let m = ineq_rows.len();
        let width = 2 * n + e + m + 1;
        let mut entries = vec![I::zero(); (e + m + 1) * width];
        let mut row_scale = Vec::with_capacity(e + m);
        for (i, (normal, rhs)) in eq_rows.iter().chain(ineq_rows).enumerate() {
            let scale = rhs.denom().clone();
            let row = &mut entries[i * width..(i + 1) * width];
            for (j, a) in normal.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let v = a.mul(&scale);
                row[n + j] = v.neg();
                row[j] = v;
            }
            row[2 * n + i] = I::one();
            row[2 * n + e + m] = rhs.numer().clone();
            row_scale.push(scale);
        }
        let zbase = (e + m) * width;
        for (j, c) in objective.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            entries[zbase + j] = c.neg();
            entries[zbase + n + j] = c.clone();
        }
        Tableau {
            n,
            e,
            m,
            width,
            entries,
            den: I::one(),
            basis: (2 * n..2 * n + e + m).collect(),
            row_scale,
            pivots: 0,
            bland_after: 6 * (e + m + 2 * n) + 40,
        }
    }

    #[inline]
    fn at(&self, row: usize, col: usize) -> &I {
        &self.entries[row * self.width + col]
    }

    #[inline]
    fn banned(&self, col: usize) -> bool {
        col >= 2 * self.n && col < 2 * self.n + self.e
    }

    fn pivot(&mut self, r: usize, c: usize) {
        LP_PIVOTS.fetch_add(1, AtomicOrdering::Relaxed);
        self.pivots += 1;
        let p = self.at(r, c).clone();
        debug_assert!(!p.is_zero());
        let div = I::divisor(&self.den);
        let zero = I::zero();
        let width = self.width;
        let (before, rest) = self.entries.split_at_mut(r * width);
        let (pivot_row, after) = rest.split_at_mut(width);
        for chunk in [before, after] {
            for row in chunk.chunks_exact_mut(width) {
                let factor = row[c].clone();
                if factor.is_zero() {
                    for x in row.iter_mut() {
                        if !x.is_zero() {
                            *x = I::fused_pivot(x, &p, &zero, &zero, &div);
                        }
                    }
                } else {
                    for (x, pv) in row.iter_mut().zip(pivot_row.iter()) {
                        if x.is_zero() && pv.is_zero() {
                            continue;
                        }
                        *x = I::fused_pivot(x, &p, &factor, pv, &div);
                    }
                }
            }
        }
        if p.is_negative() {
            for x in self.entries.iter_mut() {
                if !x.is_zero() {
                    *x = x.neg();
                }
            }
            self.den = p.neg();
        } else {
            self.den = p;
        }
        self.basis[r] = c;
    }

    /// Pivots every equality row onto a structural column (its slack can
    /// then never re-enter). Returns the index of an inconsistent row
    /// if one reduces to `0 = nonzero`.
    fn equality_phase(&mut self) -> Result<(), usize> {
        let rhs = self.width - 1;
        for r in 0..self.e {
            let mut col = None;
            for j in 0..2 * self.n {
                if !self.at(r, j).is_zero() {
                    col = Some(j);
                    break;
                }
            }
            match col {
                Some(c) => self.pivot(r, c),
                None => {
                    if !self.at(r, rhs).is_zero() {
                        return Err(r);
                    }
                    // 0 = 0: redundant equality row, stays inert.
                }
            }
        }
        Ok(())
    }

    /// Dual simplex until primal feasible. Returns the offending row on
    /// infeasibility.
    fn dual_phase(&mut self) -> Result<(), usize> {
        let rhs = self.width - 1;
        loop {
            let mut leave: Option<usize> = None;
            for i in 0..self.e + self.m {
                if self.at(i, rhs).is_negative()
                    && leave.is_none_or(|best| self.basis[i] < self.basis[best])
                {
                    leave = Some(i);
                }
            }
            let Some(r) = leave else { return Ok(()) };
            let bland = self.pivots >= self.bland_after;
            let mut enter: Option<usize> = None;
            for j in 0..self.width - 1 {
                if self.banned(j) || !self.at(r, j).is_negative() {
                    continue;
                }
                if bland {
                    enter = Some(j);
                    break;
                }
                // Largest magnitude entry, smallest index on ties.
                match enter {
                    Some(best) if self.at(r, best) <= self.at(r, j) => {}
                    _ => enter = Some(j),
                }
            }
            let Some(c) = enter else { return Err(r) };
            self.pivot(r, c);
        }
    }

    /// Primal simplex from a primal-feasible basis; maximizes the
    /// objective. Returns false on unboundedness.
    fn primal_phase(&mut self) -> bool {
        let rhs = self.width - 1;
        loop {
            let zbase = (self.e + self.m) * self.width;
            let bland = self.pivots >= self.bland_after;
            let mut enter: Option<usize> = None;
            for j in 0..self.width - 1 {
                if self.banned(j) || !self.entries[zbase + j].is_negative() {
                    continue;
                }
                if bland {
                    enter = Some(j);
                    break;
                }
                match enter {
                    Some(best) if self.entries[zbase + best] <= self.entries[zbase + j] => {}
                    _ => enter = Some(j),
                }
            }
            let Some(c) = enter else { return true };
            let mut leave: Option<usize> = None;
            for i in 0..self.e + self.m {
                if !self.at(i, c).is_positive() {
                    continue;
                }
                let better = match leave {
                    None => true,
                    Some(best) => match I::cross_cmp(
                        self.at(i, rhs),
                        self.at(best, c),
                        self.at(best, rhs),
                        self.at(i, c),
                    ) {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => self.basis[i] < self.basis[best],
                    },
                };
                if better {
                    leave = Some(i);
                }
            }
            let Some(r) = leave else { return false };
            self.pivot(r, c);
        }
    }

    fn point(&self) -> Vec<Rat<I>> {
        let rhs = self.width - 1;
        let mut plus = vec![Rat::zero(); self.n];
        let mut minus = vec![Rat::zero(); self.n];
        for i in 0..self.e + self.m {
            let b = self.basis[i];
            if b < self.n {
                plus[b] = Rat::new(self.at(i, rhs).clone(), self.den.clone());
            } else if b < 2 * self.n {
                minus[b - self.n] = Rat::new(self.at(i, rhs).clone(), self.den.clone());
            }
        }
        plus.iter().zip(&minus).map(|(p, q)| p.sub(q)).collect()
    }

    fn objective_value(&self) -> Rat<I> {
        Rat::new(
            self.at(self.e + self.m, self.width - 1).clone(),
            self.den.clone(),
        )
    }

    /// Farkas multipliers read off the slack columns of an infeasible
    /// row, rescaled to the caller's rows and normalized primitive.
    /// `flip` negates the certificate (pre-phase rows may need it).
    fn farkas(&self, row: usize, flip: bool) -> FarkasRows<I> {
        let mut mult: Vec<I> = (0..self.e + self.m)
            .map(|k| {
                let v = self.at(row, 2 * self.n + k).clone();
                if flip {
                    v.neg()
                } else {
                    v
                }
            })
            .collect();
        crate::linalg::make_primitive(&mut mult);
        let rats: Vec<Rat<I>> = mult
            .iter()
            .zip(&self.row_scale)
            .map(|(y, s)| Rat::from_int(y.clone()).mul_int(s))
            .collect();
        FarkasRows {
            eq: rats[..self.e].to_vec(),
            ineq: rats[self.e..].to_vec(),
        }
    }

    /// New tableau with extra inequality rows appended, expressed in
    /// the current basis: new slack columns are inserted before the
    /// rhs; each appended row r becomes `den * r - sum_i r[basis_i] * T_i`.
    fn extend(&self, extra: &[Row<I>]) -> Tableau<I> {
        let k = extra.len();
        let n = self.n;
        let old_width = self.width;
        let width = old_width + k;
        let old_rows = self.e + self.m;
        let mut entries = vec![I::zero(); (old_rows + k + 1) * width];
        // Copy old rows (objective row last), shifting the rhs column.
        for (i, src) in self.entries.chunks_exact(old_width).enumerate() {
            // Objective row moves to the very end.
            let dst_row = if i == old_rows { old_rows + k } else { i };
            let dst = &mut entries[dst_row * width..dst_row * width + width];
            dst[..old_width - 1].clone_from_slice(&src[..old_width - 1]);
            dst[width - 1] = src[old_width - 1].clone();
        }
        let mut row_scale = self.row_scale.clone();
        let mut basis = self.basis.clone();
        for (j, (normal, rhs)) in extra.iter().enumerate() {
            let scale = rhs.denom().clone();
            // Raw row over old columns (structural only) and rhs.
            let mut raw = vec![I::zero(); width];
            for (col, a) in normal.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let v = a.mul(&scale).mul(&self.den);
                raw[n + col] = v.neg();
                raw[col] = v;
            }
            raw[width - 1] = rhs.numer().mul(&self.den);
            // Subtract basic contributions: alpha_i = (den*raw_orig)[basis_i] / den
            // equals the original coefficient at the basis column.
            for (i, &b) in basis.iter().enumerate().take(old_rows) {
                if b >= old_width - 1 {
                    continue; // new slack columns cannot be basic yet
                }
                // Original (unscaled-by-den) coefficient of the appended
                // row at column b: structural or slack (slack -> zero).
                let alpha = if b < n {
                    normal[b].mul(&scale)
                } else if b < 2 * n {
                    normal[b - n].mul(&scale).neg()
                } else {
                    I::zero()
                };
                if alpha.is_zero() {
                    continue;
                }
                let trow = if i == old_rows { old_rows + k } else { i };
                let (head, tail) = if trow * width < (old_rows + j) * width {
                    let (a, bpart) = entries.split_at((old_rows + j) * width);
                    (&a[trow * width..trow * width + width], bpart)
                } else {
                    unreachable!("basis rows precede appended rows")
                };
                let _ = tail;
                for (x, t) in raw.iter_mut().zip(head.iter()) {
                    if !t.is_zero() {
                        *x = x.sub(&alpha.mul(t));
                    }
                }
            }
            // raw now equals den times the row's true values in the
            // current basis, matching the tableau invariant.
            raw[old_width - 1 + j] = self.den.clone();
            let dst = (self.e + self.m + j) * width;
            entries[dst..dst + width].clone_from_slice(&raw);
            basis.push(old_width - 1 + j);
            row_scale.push(scale);
        }
        Tableau {
            n,
            e: self.e,
            m: self.m + k,
            width,
            entries,
            den: self.den.clone(),
            basis,
            row_scale,
            pivots: 0,
            bland_after: self.bland_after + 6 * k,
        }
    }

    fn run_feasibility(&mut self) -> Result<(), FarkasRows<I>> {
        let rhs = self.width - 1;
        if let Err(r) = self.equality_phase() {
            let flip = self.at(r, rhs).is_positive();
            return Err(self.farkas(r, flip));
        }
        match self.dual_phase() {
            Ok(()) => Ok(()),
            Err(r) => Err(self.farkas(r, false)),
        }
    }
}

/// A solved feasible tableau kept for incremental reuse: appending
/// extra inequality rows and resuming the dual simplex is much cheaper
/// than solving the combined system from scratch.
pub struct WarmBase<I: Int> {
    tableau: Tableau<I>,
}

/// Builds a warm base from a feasible system. Returns None when the
/// base system is infeasible.
pub fn warm_base<I: Int>(
    ambient: usize,
    eq_rows: &[Row<I>],
    ineq_rows: &[Row<I>],
) -> Option<WarmBase<I>> {
    let t0 = std::time::Instant::now();
    LP_SOLVES.fetch_add(1, AtomicOrdering::Relaxed);
    let zero_obj = vec![I::zero(); ambient];
    let mut t = Tableau::new(ambient, eq_rows, ineq_rows, &zero_obj);
    let out = match t.run_feasibility() {
        Ok(()) => Some(WarmBase { tableau: t }),
        Err(_) => None,
    };
    LP_NANOS.fetch_add(t0.elapsed().as_nanos() as u64, AtomicOrdering::Relaxed);
    out
}

impl<I: Int> WarmBase<I> {
    /// Feasibility of the base system plus `extra` inequality rows,
    /// resumed from the solved base. No certificates.
    pub fn feasible_with(&self, extra: &[Row<I>]) -> Option<Vec<Rat<I>>> {
        let t0 = std::time::Instant::now();
        LP_SOLVES.fetch_add(1, AtomicOrdering::Relaxed);
        let mut t = self.tableau.extend(extra);
        let out = match t.dual_phase() {
            Ok(()) => Some(t.point()),
            Err(_) => None,
        };
        LP_NANOS.fetch_add(t0.elapsed().as_nanos() as u64, AtomicOrdering::Relaxed);
        out
    }
}

/// Decides feasibility of `{x : eq_rows hold with =, ineq_rows with <=}`.
pub fn feasibility<I: Int>(
    ambient: usize,
    eq_rows: &[Row<I>],
    ineq_rows: &[Row<I>],
) -> FeasOutcome<I> {
    let t0 = std::time::Instant::now();
    LP_SOLVES.fetch_add(1, AtomicOrdering::Relaxed);
    let zero_obj = vec![I::zero(); ambient];
    let mut t = Tableau::new(ambient, eq_rows, ineq_rows, &zero_obj);
    let out = match t.run_feasibility() {
        Ok(()) => FeasOutcome::Feasible(t.point()),
        Err(f) => FeasOutcome::Infeasible(f),
    };
    LP_NANOS.fetch_add(t0.elapsed().as_nanos() as u64, AtomicOrdering::Relaxed);
    out
}

/// Maximizes `objective . x` over the same system.
pub fn maximize<I: Int>(
    ambient: usize,
    eq_rows: &[Row<I>],
    ineq_rows: &[Row<I>],
    objective: &[I],
) -> MaxOutcome<I> {
    let t0 = std::time::Instant::now();
    LP_SOLVES.fetch_add(1, AtomicOrdering::Relaxed);
    debug_assert_eq!(objective.len(), ambient);
    let mut t = Tableau::new(ambient, eq_rows, ineq_rows, objective);
    let out = match t.run_feasibility() {
        Ok(()) => {
            if t.primal_phase() {
                MaxOutcome::Optimal {
                    point: t.point(),
                    value: t.objective_value(),
                }
            } else {
                MaxOutcome::Unbounded
            }
        }
        Err(f) => MaxOutcome::Infeasible(f),
    };
    LP_NANOS.fetch_add(t0.elapsed().as_nanos() as u64, AtomicOrdering::Relaxed);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dot_int_rat;

    type Q = Rat<i64>;

    fn rows(data: Vec<(Vec<i64>, i64)>) -> Vec<Row<i64>> {
        data.into_iter()
            .map(|(normal, rhs)| (normal, Rat::from_i64(rhs)))
            .collect()
    }

    fn verify_feasible(eqs: &[Row<i64>], ineqs: &[Row<i64>], point: &[Q]) {
        for (normal, rhs) in eqs {
            assert_eq!(dot_int_rat(normal, point), *rhs, "equality violated");
        }
        for (normal, rhs) in ineqs {
            assert!(dot_int_rat(normal, point) <= *rhs, "inequality violated");
        }
    }

    fn verify_farkas(eqs: &[Row<i64>], ineqs: &[Row<i64>], f: &FarkasRows<i64>) {
        let n = eqs
            .first()
            .or(ineqs.first())
            .map(|(v, _)| v.len())
            .unwrap_or(0);
        let mut combo = vec![Q::zero(); n];
        let mut rhs = Q::zero();
        for (m, (normal, b)) in f.eq.iter().zip(eqs) {
            for (acc, a) in combo.iter_mut().zip(normal) {
                *acc = acc.add(&m.mul(&Rat::from_int(*a)));
            }
            rhs = rhs.add(&m.mul(b));
        }
        for (m, (normal, b)) in f.ineq.iter().zip(ineqs) {
            assert!(!m.is_negative(), "negative inequality multiplier");
            for (acc, a) in combo.iter_mut().zip(normal) {
                *acc = acc.add(&m.mul(&Rat::from_int(*a)));
            }
            rhs = rhs.add(&m.mul(b));
        }
        assert!(combo.iter().all(|c| c.is_zero()), "nonzero combination");
        assert!(rhs.is_negative(), "rhs not negative");
    }

    #[test]
    fn interval_is_feasible() {
        let ineqs = rows(vec![(vec![1], 1), (vec![-1], 0)]);
        match feasibility(1, &[], &ineqs) {
            FeasOutcome::Feasible(p) => verify_feasible(&[], &ineqs, &p),
            FeasOutcome::Infeasible(_) => panic!("interval must be feasible"),
        }
    }

    #[test]
    fn contradictory_bounds_yield_farkas() {
        let ineqs = rows(vec![(vec![1], -1), (vec![-1], -1)]);
        match feasibility(1, &[], &ineqs) {
            FeasOutcome::Feasible(_) => panic!("must be infeasible"),
            FeasOutcome::Infeasible(f) => {
                verify_farkas(&[], &ineqs, &f);
                assert_eq!(f.ineq, vec![Q::one(), Q::one()]);
            }
        }
    }

    #[test]
    fn equality_rows_participate_in_certificates() {
        // x + y = 3, x <= 0, y <= 0.
        let eqs = rows(vec![(vec![1, 1], 3)]);
        let ineqs = rows(vec![(vec![1, 0], 0), (vec![0, 1], 0)]);
        match feasibility(2, &eqs, &ineqs) {
            FeasOutcome::Infeasible(f) => verify_farkas(&eqs, &ineqs, &f),
            FeasOutcome::Feasible(_) => panic!(),
        }
    }

    #[test]
    fn inconsistent_equalities_detected_in_prephase() {
        let eqs = rows(vec![(vec![1, 1], 1), (vec![2, 2], 3)]);
        match feasibility(2, &eqs, &[]) {
            FeasOutcome::Infeasible(f) => verify_farkas(&eqs, &[], &f),
            FeasOutcome::Feasible(_) => panic!(),
        }
    }

    #[test]
    fn redundant_equalities_are_inert() {
        let eqs = rows(vec![(vec![1, 1], 2), (vec![2, 2], 4)]);
        match feasibility(2, &eqs, &[]) {
            FeasOutcome::Feasible(p) => verify_feasible(&eqs, &[], &p),
            FeasOutcome::Infeasible(_) => panic!(),
        }
    }

    #[test]
    fn maximize_over_triangle() {
        let ineqs = rows(vec![(vec![1, 1], 2), (vec![-1, 0], 0), (vec![0, -1], 0)]);
        match maximize(2, &[], &ineqs, &[1, 2]) {
            MaxOutcome::Optimal { point, value } => {
                assert_eq!(value, Rat::from_i64(4));
                verify_feasible(&[], &ineqs, &point);
                assert_eq!(point, vec![Q::zero(), Rat::from_i64(2)]);
            }
            _ => panic!("bounded feasible"),
        }
    }

    #[test]
    fn maximize_on_affine_subspace() {
        // x + y = 2, maximize x with x <= 5.
        let eqs = rows(vec![(vec![1, 1], 2)]);
        let ineqs = rows(vec![(vec![1, 0], 5)]);
        match maximize(2, &eqs, &ineqs, &[1, 0]) {
            MaxOutcome::Optimal { point, value } => {
                assert_eq!(value, Rat::from_i64(5));
                verify_feasible(&eqs, &ineqs, &point);
            }
            _ => panic!(),
        }
        assert!(matches!(
            maximize(2, &eqs, &[], &[1, 0]),
            MaxOutcome::Unbounded
        ));
    }

    #[test]
    fn unbounded_direction_detected() {
        let ineqs = rows(vec![(vec![-1, 0], 0)]);
        assert!(matches!(maximize(2, &[], &ineqs, &[1, 0]), MaxOutcome::Unbounded));
        assert!(matches!(
            maximize(2, &[], &ineqs, &[-1, 0]),
            MaxOutcome::Optimal { .. }
        ));
    }

    #[test]
    fn fractional_data_stays_exact() {
        let ineqs = vec![
            (vec![3], Q::new(1, 3)),
            (vec![-3], Q::new(-1, 3)),
        ];
        match feasibility(1, &[], &ineqs) {
            FeasOutcome::Feasible(p) => assert_eq!(p[0], Q::new(1, 9)),
            _ => panic!(),
        }
    }

    #[test]
    fn empty_system_is_feasible_at_origin() {
        match feasibility::<i64>(3, &[], &[]) {
            FeasOutcome::Feasible(p) => assert!(p.iter().all(|c| c.is_zero())),
            _ => panic!(),
        }
    }

    #[test]
    fn zero_ambient_infeasibility() {
        let ineqs = rows(vec![(vec![], -1)]);
        match feasibility(0, &[], &ineqs) {
            FeasOutcome::Infeasible(f) => verify_farkas(&[], &ineqs, &f),
            _ => panic!("0 <= -1 must be infeasible"),
        }
    }

    #[test]
    fn warm_extension_matches_from_scratch() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut tested_feasible = 0;
        for _ in 0..400 {
            let n = 1 + (next() % 4) as usize;
            let base_m = 1 + (next() % 6) as usize;
            let extra_m = 1 + (next() % 5) as usize;
            let ne = (next() % 2) as usize;
            let mut gen_row = |n: usize| -> Option<Row<i64>> {
                let normal: Vec<i64> = (0..n).map(|_| (next() % 9) as i64 - 4).collect();
                if normal.iter().all(|x| *x == 0) {
                    return None;
                }
                Some((normal, Rat::from_i64((next() % 9) as i64 - 4)))
            };
            let eqs: Vec<Row<i64>> = (0..ne).filter_map(|_| gen_row(n)).collect();
            let base: Vec<Row<i64>> = (0..base_m).filter_map(|_| gen_row(n)).collect();
            let extra: Vec<Row<i64>> = (0..extra_m).filter_map(|_| gen_row(n)).collect();
            let Some(warm) = warm_base(n, &eqs, &base) else {
                continue;
            };
            tested_feasible += 1;
            let mut all = base.clone();
            all.extend(extra.iter().cloned());
            let scratch = matches!(feasibility(n, &eqs, &all), FeasOutcome::Feasible(_));
            match warm.feasible_with(&extra) {
                Some(point) => {
                    assert!(scratch, "warm feasible but scratch infeasible");
                    for (normal, rhs) in eqs.iter() {
                        assert_eq!(dot_int_rat(normal, &point), *rhs);
                    }
                    for (normal, rhs) in all.iter() {
                        assert!(dot_int_rat(normal, &point) <= *rhs);
                    }
                }
                None => assert!(!scratch, "warm infeasible but scratch feasible"),
            }
        }
        assert!(tested_feasible > 100);
    }

    #[test]
    fn random_systems_have_verified_outcomes() {
        // Deterministic pseudo-random small systems; every witness and
        // every certificate must re-verify exactly.
        let mut state = 0x243f6a8885a308d3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..500 {
            let n = 1 + (next() % 4) as usize;
            let ne = (next() % 3) as usize;
            let mi = 1 + (next() % 8) as usize;
            let mut eqs = Vec::new();
            for _ in 0..ne {
                let normal: Vec<i64> = (0..n).map(|_| (next() % 11) as i64 - 5).collect();
                if normal.iter().all(|x| *x == 0) {
                    continue;
                }
                eqs.push((normal, Rat::from_i64((next() % 9) as i64 - 4)));
            }
            let mut ineqs = Vec::new();
            for _ in 0..mi {
                let normal: Vec<i64> = (0..n).map(|_| (next() % 11) as i64 - 5).collect();
                if normal.iter().all(|x| *x == 0) {
                    continue;
                }
                ineqs.push((normal, Rat::from_i64((next() % 9) as i64 - 4)));
            }
            match feasibility(n, &eqs, &ineqs) {
                FeasOutcome::Feasible(p) => verify_feasible(&eqs, &ineqs, &p),
                FeasOutcome::Infeasible(f) => verify_farkas(&eqs, &ineqs, &f),
            }
        }
    }
}
