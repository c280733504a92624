//! Rational H-representation polyhedra and the exact queries on them:
//! feasibility with certificates, implicit equalities, dimension, and
//! relative interior points.

use crate::error::{Error, Result};
use crate::linalg::{self, Rref};
use crate::lp::{self, FeasOutcome, MaxOutcome};
use crate::num::{Int, Rat};

/// One affine constraint `normal . x (= | <=) rhs` with a primitive
/// integer normal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Constraint<I: Int> {
    pub normal: Vec<I>,
    pub rhs: Rat<I>,
}

impl<I: Int> Constraint<I> {
    /// Scales to a primitive normal. Positive scaling only, so the
    /// constraint direction is preserved. Errors on the zero normal.
    pub fn inequality(normal: Vec<I>, rhs: Rat<I>) -> Result<Self> {
        let coeffs: Vec<Rat<I>> = normal.into_iter().map(Rat::from_int).collect();
        let (normal, rhs) = linalg::primitive_row(&coeffs, &rhs).ok_or(Error::ZeroNormal)?;
        Ok(Constraint { normal, rhs })
    }

    /// Scales to a primitive normal with the first nonzero entry
    /// positive (sign is free for equalities).
    pub fn equality(normal: Vec<I>, rhs: Rat<I>) -> Result<Self> {
        let mut c = Self::inequality(normal, rhs)?;
        let lead = c.normal.iter().find(|x| !x.is_zero()).expect("nonzero");
        if lead.is_negative() {
            for x in c.normal.iter_mut() {
                *x = x.neg();
            }
            c.rhs = c.rhs.neg();
        }
        Ok(c)
    }

    pub fn eval<'a>(&self, x: &[Rat<I>]) -> Rat<I> {
        linalg::dot_int_rat(&self.normal, x)
    }
}

/// `{ x : E x = f, C x <= d }` in a fixed ambient dimension.
#[derive(Clone, Debug)]
pub struct HPolyhedron<I: Int> {
    pub ambient: usize,
    pub equalities: Vec<Constraint<I>>,
    pub inequalities: Vec<Constraint<I>>,
}

/// Farkas-style infeasibility certificate: nonnegative multipliers on
/// the inequalities, sign-free multipliers on the equalities, combining
/// the system into `0 <= negative`.
#[derive(Clone, Debug)]
pub struct FarkasCertificate<I: Int> {
    pub inequality_multipliers: Vec<Rat<I>>,
    pub equality_multipliers: Vec<Rat<I>>,
}

impl<I: Int> FarkasCertificate<I> {
    /// Exact re-verification against the polyhedron, no LP involved.
    pub fn verify(&self, poly: &HPolyhedron<I>) -> bool {
        if self.inequality_multipliers.len() != poly.inequalities.len()
            || self.equality_multipliers.len() != poly.equalities.len()
        {
            return false;
        }
        if self.inequality_multipliers.iter().any(|m| m.is_negative()) {
            return false;
        }
        let mut combo = vec![Rat::<I>::zero(); poly.ambient];
        let mut rhs = Rat::zero();
        let mut accumulate = |mult: &Rat<I>, c: &Constraint<I>| {
            for (acc, a) in combo.iter_mut().zip(&c.normal) {
                if !a.is_zero() && !mult.is_zero() {
                    *acc = acc.add(&mult.mul(&Rat::from_int(a.clone())));
                }
            }
            rhs = rhs.add(&mult.mul(&c.rhs));
        };
        for (m, c) in self.inequality_multipliers.iter().zip(&poly.inequalities) {
            accumulate(m, c);
        }
        for (m, c) in self.equality_multipliers.iter().zip(&poly.equalities) {
            accumulate(m, c);
        }
        combo.iter().all(|c| c.is_zero()) && rhs.is_negative()
    }
}

#[derive(Clone, Debug)]
pub enum LpOutcome<I: Int> {
    Feasible { witness: Vec<Rat<I>> },
    Infeasible { farkas: FarkasCertificate<I> },
}

impl<I: Int> HPolyhedron<I> {
    pub fn new(ambient: usize) -> Self {
        HPolyhedron {
            ambient,
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    pub fn push_equality(&mut self, normal: Vec<I>, rhs: Rat<I>) -> Result<()> {
        debug_assert_eq!(normal.len(), self.ambient);
        self.equalities.push(Constraint::equality(normal, rhs)?);
        Ok(())
    }

    pub fn push_inequality(&mut self, normal: Vec<I>, rhs: Rat<I>) -> Result<()> {
        debug_assert_eq!(normal.len(), self.ambient);
        self.inequalities.push(Constraint::inequality(normal, rhs)?);
        Ok(())
    }

    pub fn contains(&self, x: &[Rat<I>]) -> bool {
        self.equalities.iter().all(|c| c.eval(x) == c.rhs)
            && self.inequalities.iter().all(|c| c.eval(x) <= c.rhs)
    }

    /// Exact feasibility with witness or Farkas certificate.
    pub fn lp_feasible(&self) -> LpOutcome<I> {
        match lp::feasibility(self.ambient, &self.eq_rows(), &self.ineq_rows()) {
            FeasOutcome::Feasible(witness) => LpOutcome::Feasible { witness },
            FeasOutcome::Infeasible(f) => LpOutcome::Infeasible {
                farkas: FarkasCertificate {
                    inequality_multipliers: f.ineq,
                    equality_multipliers: f.eq,
                },
            },
        }
    }

    fn eq_rows(&self) -> Vec<lp::Row<I>> {
        self.equalities
            .iter()
            .map(|c| (c.normal.clone(), c.rhs.clone()))
            .collect()
    }

    fn ineq_rows(&self) -> Vec<lp::Row<I>> {
        self.inequalities
            .iter()
            .map(|c| (c.normal.clone(), c.rhs.clone()))
            .collect()
    }

    /// Feasibility without certificates.
    pub fn feasible(&self) -> bool {
        matches!(
            lp::feasibility(self.ambient, &self.eq_rows(), &self.ineq_rows()),
            FeasOutcome::Feasible(_)
        )
    }

    /// Emptiness, implicit inequalities, and a relative interior point.
    ///
    /// One feasibility check rejects empty systems, then a
    /// slack-maximization LP (maximize t s.t. `a_i . x + t <= b_i`,
    /// equalities, `t <= 1`) decides implicit-freeness: t* > 0 means no
    /// inequality is implicit. At t* = 0 only rows tight at the optimum
    /// can be implicit; those are settled one LP each, with every LP
    /// optimum kept as a strictness witness for the remaining rows.
    pub fn analyze(&self) -> Option<(Vec<Rat<I>>, Vec<usize>)> {
        let eqs = self.eq_rows();
        let ineqs = self.ineq_rows();
        let start = match lp::feasibility(self.ambient, &eqs, &ineqs) {
            FeasOutcome::Feasible(p) => p,
            FeasOutcome::Infeasible(_) => return None,
        };
        if self.inequalities.is_empty() {
            return Some((start, Vec::new()));
        }
        let (point, t) = self.max_t(&eqs, &[]);
        if t.is_positive() {
            return Some((point, Vec::new()));
        }
        debug_assert!(!t.is_negative(), "max_t negative on a feasible set");
        let mut pool: Vec<Vec<Rat<I>>> = vec![point, start];
        let mut implicit = Vec::new();
        for (i, c) in self.inequalities.iter().enumerate() {
            if pool.iter().any(|p| c.eval(p) < c.rhs) {
                continue;
            }
            let obj: Vec<I> = c.normal.iter().map(|x| x.neg()).collect();
            match lp::maximize(self.ambient, &eqs, &ineqs, &obj) {
                MaxOutcome::Optimal { point, value } => {
                    if value.neg() == c.rhs {
                        implicit.push(i);
                    } else {
                        pool.push(point);
                    }
                }
                MaxOutcome::Unbounded => {}
                MaxOutcome::Infeasible(_) => unreachable!("t* = 0 implies nonempty"),
            }
        }
        let (point, t) = self.max_t(&eqs, &implicit);
        debug_assert!(t.is_positive() || self.inequalities.len() == implicit.len());
        Some((point, implicit))
    }

    /// Maximizes the common slack t over the polyhedron; inequalities
    /// listed in `fixed` (known implicit) get a zero t-coefficient.
    fn max_t(&self, eqs: &[lp::Row<I>], fixed: &[usize]) -> (Vec<Rat<I>>, Rat<I>) {
        let n = self.ambient;
        let mut eq_t: Vec<lp::Row<I>> = Vec::with_capacity(eqs.len());
        for (normal, rhs) in eqs {
            let mut row = normal.clone();
            row.push(I::zero());
            eq_t.push((row, rhs.clone()));
        }
        let mut ineq_t: Vec<lp::Row<I>> = Vec::with_capacity(self.inequalities.len() + 1);
        for (i, c) in self.inequalities.iter().enumerate() {
            let mut row = c.normal.clone();
            let is_fixed = fixed.binary_search(&i).is_ok();
            row.push(if is_fixed { I::zero() } else { I::one() });
            ineq_t.push((row, c.rhs.clone()));
        }
        let mut cap = vec![I::zero(); n + 1];
        cap[n] = I::one();
        ineq_t.push((cap, Rat::one()));
        let mut obj = vec![I::zero(); n + 1];
        obj[n] = I::one();
        match lp::maximize(n + 1, &eq_t, &ineq_t, &obj) {
            MaxOutcome::Optimal { point, value } => (point[..n].to_vec(), value),
            MaxOutcome::Unbounded => unreachable!("t is capped"),
            MaxOutcome::Infeasible(_) => unreachable!("caller checked feasibility"),
        }
    }

    /// Indices of inequalities holding with equality at every feasible
    /// point.
    pub fn implicit_equalities(&self) -> Result<Vec<usize>> {
        let (_, implicit) = self.analyze().ok_or(Error::InfeasiblePolyhedron)?;
        Ok(implicit)
    }

    /// A point satisfying the equalities exactly and every non-implicit
    /// inequality strictly.
    pub fn relative_interior_point(&self) -> Result<Vec<Rat<I>>> {
        let (point, _) = self.analyze().ok_or(Error::InfeasiblePolyhedron)?;
        Ok(point)
    }

    /// Ambient dimension minus the rank of stated plus implicit equalities.
    pub fn dimension(&self) -> Result<usize> {
        let (_, implicit) = self.analyze().ok_or(Error::InfeasiblePolyhedron)?;
        let mut rows: Vec<(Vec<I>, Rat<I>)> = self
            .equalities
            .iter()
            .map(|c| (c.normal.clone(), c.rhs.clone()))
            .collect();
        for &i in &implicit {
            let c = &self.inequalities[i];
            rows.push((c.normal.clone(), c.rhs.clone()));
        }
        let rref = Rref::eliminate(self.ambient, &rows)
            .expect("implicit equalities are consistent on a nonempty set");
        Ok(self.ambient - rref.rank())
    }
}
