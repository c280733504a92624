//! The distance-based polynomial system for planar central
//! configurations: Albouy–Chenciner equations, their symmetrizations,
//! and Cayley–Menger determinants, as Laurent polynomials in the
//! pairwise distances with coefficients linear in the masses.
//!
//! Equations are constructed once, in big-integer arithmetic, and are
//! identical regardless of the arithmetic mode used downstream.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::num::Rat;

pub type Coef = Rat<BigInt>;

/// Bijection between unordered body pairs and variable positions:
/// `r_12, r_13, ..., r_(n-1)n` in lexicographic order.
#[derive(Clone, Copy, Debug)]
pub struct VariableOrder {
    pub n: usize,
}

impl VariableOrder {
    pub fn new(n: usize) -> Self {
        VariableOrder { n }
    }

    pub fn var_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Position of `r_ij` (bodies are 1-based; order of i, j is free).
    pub fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i != j && i >= 1 && j >= 1 && i <= self.n && j <= self.n);
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        // Pairs (1,2)..(1,n), (2,3)..(2,n), ...
        (i - 1) * self.n - i * (i - 1) / 2 + (j - i) - 1
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
    }

    pub fn var_name(&self, pos: usize) -> String {
        let (i, j) = self.pairs().nth(pos).expect("position in range");
        format!("r{i}{j}")
    }
}

/// A coefficient of the form `q0 + q1 m_1 + ... + qn m_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassLinearCoefficient {
    pub constant: Coef,
    pub mass: Vec<Coef>,
}

impl MassLinearCoefficient {
    pub fn zero(n: usize) -> Self {
        MassLinearCoefficient {
            constant: Coef::zero(),
            mass: vec![Coef::zero(); n],
        }
    }

    pub fn constant(n: usize, value: Coef) -> Self {
        let mut c = Self::zero(n);
        c.constant = value;
        c
    }

    pub fn mass_term(n: usize, k: usize, value: Coef) -> Self {
        let mut c = Self::zero(n);
        c.mass[k - 1] = value;
        c
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.mass.iter().all(|q| q.is_zero())
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.constant = self.constant.add(&other.constant);
        for (a, b) in self.mass.iter_mut().zip(&other.mass) {
            *a = a.add(b);
        }
    }

    pub fn scale(&self, factor: &Coef) -> Self {
        MassLinearCoefficient {
            constant: self.constant.mul(factor),
            mass: self.mass.iter().map(|q| q.mul(factor)).collect(),
        }
    }

    pub fn eval(&self, masses: &[Coef]) -> Coef {
        let mut acc = self.constant.clone();
        for (q, m) in self.mass.iter().zip(masses) {
            if !q.is_zero() {
                acc = acc.add(&q.mul(m));
            }
        }
        acc
    }

    fn render(&self) -> String {
        let mut parts = Vec::new();
        if !self.constant.is_zero() {
            parts.push(self.constant.to_string());
        }
        for (k, q) in self.mass.iter().enumerate() {
            if !q.is_zero() {
                parts.push(format!("{q}*m{}", k + 1));
            }
        }
        parts.join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTerm {
    pub coefficient: MassLinearCoefficient,
    pub exponents: Vec<i64>,
}

/// Terms sorted by exponent vector, like terms combined, no zero
/// coefficients retained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    pub label: String,
    pub n: usize,
    pub terms: Vec<LaurentTerm>,
}

impl LaurentPolynomial {
    pub fn eval(&self, r: &[Coef], masses: &[Coef]) -> Coef {
        let mut acc = Coef::zero();
        for term in &self.terms {
            let mut mono = Coef::one();
            for (e, v) in term.exponents.iter().zip(r) {
                mono = mono.mul(&pow(v, *e));
            }
            acc = acc.add(&term.coefficient.eval(masses).mul(&mono));
        }
        acc
    }

    pub fn min_exponents(&self) -> Vec<i64> {
        let width = self.terms.first().map_or(0, |t| t.exponents.len());
        let mut min = vec![i64::MAX; width];
        for t in &self.terms {
            for (m, e) in min.iter_mut().zip(&t.exponents) {
                *m = (*m).min(*e);
            }
        }
        min
    }

    pub fn render_text(&self, order: &VariableOrder) -> String {
        let mut out = format!("{}: ", self.label);
        let mut first = true;
        for term in &self.terms {
            if !first {
                out.push_str(" + ");
            }
            first = false;
            write!(out, "({})", term.coefficient.render()).unwrap();
            for (pos, e) in term.exponents.iter().enumerate() {
                if *e != 0 {
                    write!(out, "*{}^{}", order.var_name(pos), e).unwrap();
                }
            }
        }
        out
    }
}

/// Accumulator with like-term merging keyed on exponent vectors.
struct Builder {
    n: usize,
    width: usize,
    terms: BTreeMap<Vec<i64>, MassLinearCoefficient>,
}

impl Builder {
    fn new(n: usize, width: usize) -> Self {
        Builder { n, width, terms: BTreeMap::new() }
    }

    fn add(&mut self, exponents: Vec<i64>, coefficient: &MassLinearCoefficient) {
        debug_assert_eq!(exponents.len(), self.width);
        let slot = self
            .terms
            .entry(exponents)
            .or_insert_with(|| MassLinearCoefficient::zero(self.n));
        slot.add_assign(coefficient);
    }

    fn add_poly(&mut self, other: &Builder) {
        for (e, c) in &other.terms {
            self.add(e.clone(), c);
        }
    }

    /// Multiplies by a monomial (shifts every exponent vector).
    fn shift(&mut self, shift: &[i64]) {
        let old = std::mem::take(&mut self.terms);
        for (mut e, c) in old {
            for (x, s) in e.iter_mut().zip(shift) {
                *x += s;
            }
            self.terms.insert(e, c);
        }
    }

    fn mul(&self, other: &Builder) -> Builder {
        let mut out = Builder::new(self.n, self.width);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                // Products only arise with at least one constant factor
                // here (mass-linearity is preserved by construction).
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let c = if cb.mass.iter().all(|q| q.is_zero()) {
                    ca.scale(&cb.constant)
                } else {
                    debug_assert!(ca.mass.iter().all(|q| q.is_zero()));
                    cb.scale(&ca.constant)
                };
                out.add(e, &c);
            }
        }
        out
    }

    fn finish(self, label: String) -> LaurentPolynomial {
        let terms = self
            .terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exponents, coefficient)| LaurentTerm { coefficient, exponents })
            .collect();
        LaurentPolynomial { label, n: self.n, terms }
    }
}

fn pow(base: &Coef, e: i64) -> Coef {
    let mut acc = Coef::one();
    let b = if e >= 0 { base.clone() } else { Coef::one().div(base) };
    for _ in 0..e.unsigned_abs() {
        acc = acc.mul(&b);
    }
    acc
}

/// The Laurent polynomial `g_ij = sum_k m_k S_ik (r_jk^2 - r_ik^2 - r_ij^2)`
/// with `S_ik = r_ik^-3 - 1`, `S_ii = 0`, `r_kk = 0`, cleared by the
/// monomial `prod_{k != i} r_ik^3`.
pub fn build_g(i: usize, j: usize, order: &VariableOrder) -> Result<LaurentPolynomial> {
    if i == j || i < 1 || j < 1 || i > order.n || j > order.n {
        return Err(Error::InvalidIndexPair(i, j));
    }
    let mut acc = laurent_g(i, j, order);
    acc.shift(&g_clearing_monomial(i, order));
    Ok(acc.finish(format!("g_{{{i},{j}}}")))
}

/// Uncleared g with negative exponents.
fn laurent_g(i: usize, j: usize, order: &VariableOrder) -> Builder {
    let n = order.n;
    let width = order.var_count();
    let mut acc = Builder::new(n, width);
    let one = Coef::one();
    for k in 1..=n {
        if k == i {
            continue;
        }
        // S_ik = r_ik^-3 - 1
        let mut s = Builder::new(n, width);
        let mut e = vec![0i64; width];
        e[order.index(i, k)] = -3;
        s.add(e, &MassLinearCoefficient::constant(n, one.clone()));
        s.add(vec![0; width], &MassLinearCoefficient::constant(n, one.neg()));
        // r_jk^2 - r_ik^2 - r_ij^2 with r_jj = 0.
        let mut d = Builder::new(n, width);
        if k != j {
            let mut e = vec![0i64; width];
            e[order.index(j, k)] = 2;
            d.add(e, &MassLinearCoefficient::mass_term(n, k, one.clone()));
        }
        let mut e = vec![0i64; width];
        e[order.index(i, k)] = 2;
        d.add(e, &MassLinearCoefficient::mass_term(n, k, one.neg()));
        let mut e = vec![0i64; width];
        e[order.index(i, j)] = 2;
        d.add(e, &MassLinearCoefficient::mass_term(n, k, one.neg()));
        acc.add_poly(&s.mul(&d));
    }
    acc
}

fn g_clearing_monomial(i: usize, order: &VariableOrder) -> Vec<i64> {
    let mut shift = vec![0i64; order.var_count()];
    for k in 1..=order.n {
        if k != i {
            shift[order.index(i, k)] = 3;
        }
    }
    shift
}

/// The symmetric equation `f_ij = g_ij + g_ji`, cleared by the least
/// common monomial multiple of the two g-clearing monomials.
pub fn build_f(i: usize, j: usize, order: &VariableOrder) -> Result<LaurentPolynomial> {
    if i >= j {
        return Err(Error::InvalidIndexPair(i, j));
    }
    if j > order.n || i < 1 {
        return Err(Error::InvalidIndexPair(i, j));
    }
    let mut acc = laurent_g(i, j, order);
    acc.add_poly(&laurent_g(j, i, order));
    let a = g_clearing_monomial(i, order);
    let b = g_clearing_monomial(j, order);
    let lcm: Vec<i64> = a.iter().zip(&b).map(|(x, y)| (*x).max(*y)).collect();
    acc.shift(&lcm);
    Ok(acc.finish(format!("f_{{{i},{j}}}")))
}

/// The bordered 5x5 determinant in the squared distances of four
/// bodies, whose vanishing makes them coplanar.
pub fn build_cm(quad: [usize; 4], order: &VariableOrder) -> Result<LaurentPolynomial> {
    let mut sorted = quad;
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted[0] < 1 || sorted[3] > order.n {
        return Err(Error::InvalidQuadruple);
    }
    let n = order.n;
    let width = order.var_count();
    let one = MassLinearCoefficient::constant(n, Coef::one());
    // 5x5 matrix of tiny polynomials.
    let entry = |a: usize, b: usize| -> Builder {
        let mut p = Builder::new(n, width);
        match (a, b) {
            (0, 0) => {}
            (0, _) | (_, 0) => p.add(vec![0; width], &one),
            (a, b) if a == b => {}
            (a, b) => {
                let mut e = vec![0i64; width];
                e[order.index(sorted[a - 1], sorted[b - 1])] = 2;
                p.add(e, &one);
            }
        }
        p
    };
    let matrix: Vec<Vec<Builder>> =
        (0..5).map(|a| (0..5).map(|b| entry(a, b)).collect()).collect();
    let det = determinant(&matrix, &(0..5).collect::<Vec<_>>(), &(0..5).collect::<Vec<_>>(), n, width);
    let label = format!(
        "CM_{{{}{}{}{}}}",
        sorted[0], sorted[1], sorted[2], sorted[3]
    );
    Ok(det.finish(label))
}

fn determinant(
    matrix: &[Vec<Builder>],
    rows: &[usize],
    cols: &[usize],
    n: usize,
    width: usize,
) -> Builder {
    if rows.len() == 1 {
        let mut out = Builder::new(n, width);
        out.add_poly(&matrix[rows[0]][cols[0]]);
        return out;
    }
    let mut out = Builder::new(n, width);
    let sub_rows: Vec<usize> = rows[1..].to_vec();
    for (t, &c) in cols.iter().enumerate() {
        let cell = &matrix[rows[0]][c];
        if cell.terms.is_empty() {
            continue;
        }
        let sub_cols: Vec<usize> =
            cols.iter().copied().filter(|&x| x != c).collect();
        let minor = determinant(matrix, &sub_rows, &sub_cols, n, width);
        let signed = if t % 2 == 0 {
            cell.mul(&minor)
        } else {
            let mut neg = Builder::new(n, width);
            for (e, coef) in &minor.terms {
                neg.add(e.clone(), &coef.scale(&Coef::one().neg()));
            }
            cell.mul(&neg)
        };
        out.add_poly(&signed);
    }
    out
}

/// Equation families in the system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EquationFamily {
    /// Nonsymmetric Albouy-Chenciner equations g_ij, ordered pairs.
    Ac,
    /// Symmetric equations f_ij = g_ij + g_ji, i < j.
    Sac,
    /// Cayley-Menger determinants per 4-subset.
    Cm,
}

impl EquationFamily {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ac" => Some(EquationFamily::Ac),
            "sac" => Some(EquationFamily::Sac),
            "cm" => Some(EquationFamily::Cm),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            EquationFamily::Ac => "ac",
            EquationFamily::Sac => "sac",
            EquationFamily::Cm => "cm",
        }
    }
}

/// Builds the selected families for n bodies, in the fixed order:
/// AC by ordered pair (i,j), SAC by pair i<j, CM by sorted quadruple.
pub fn build_system(n: usize, selection: &[EquationFamily]) -> Result<Vec<LaurentPolynomial>> {
    if n < 3 {
        return Err(Error::UnsupportedBodyCount(n));
    }
    let order = VariableOrder::new(n);
    let mut out = Vec::new();
    if selection.contains(&EquationFamily::Ac) {
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    out.push(build_g(i, j, &order)?);
                }
            }
        }
    }
    if selection.contains(&EquationFamily::Sac) {
        for (i, j) in order.pairs() {
            out.push(build_f(i, j, &order)?);
        }
    }
    if selection.contains(&EquationFamily::Cm) {
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    for d in c + 1..=n {
                        out.push(build_cm([a, b, c, d], &order)?);
                    }
                }
            }
        }
    }
    Ok(out)
}
