//! Exact linear algebra over rationals: reduced row echelon forms,
//! kernels, and primitive integer scaling of constraint rows.

use crate::num::{Int, Rat};

pub fn dot_int<I: Int>(a: &[I], b: &[I]) -> I {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = I::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = acc.add(&x.mul(y));
    }
    acc
}

pub fn dot_int_rat<I: Int>(a: &[I], x: &[Rat<I>]) -> Rat<I> {
    debug_assert_eq!(a.len(), x.len());
    let mut acc = Rat::zero();
    for (c, v) in a.iter().zip(x) {
        if c.is_zero() || v.is_zero() {
            continue;
        }
        acc = acc.add(&v.mul_int(c));
    }
    acc
}

/// Divides an integer vector by the gcd of its entries.
/// Returns false (leaving the vector untouched) when all entries are zero.
pub fn make_primitive<I: Int>(v: &mut [I]) -> bool {
    let mut g = I::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
        }
    }
    if g.is_zero() {
        return false;
    }
    if g != I::one() {
        for x in v.iter_mut() {
            *x = x.div_exact(&g);
        }
    }
    true
}

/// Scales a rational row `(coeffs, rhs)` by the unique positive factor
/// making the coefficients a primitive integer vector.
/// Returns None when all coefficients are zero.
pub fn primitive_row<I: Int>(coeffs: &[Rat<I>], rhs: &Rat<I>) -> Option<(Vec<I>, Rat<I>)> {
    let mut lcm = I::one();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        let d = c.denom();
        lcm = lcm.div_exact(&lcm.gcd(d)).mul(d);
    }
    let mut normal: Vec<I> = coeffs
        .iter()
        .map(|c| c.numer().mul(&lcm.div_exact(c.denom())))
        .collect();
    if !make_primitive(&mut normal) {
        return None;
    }
    // scale = lcm / gcd; recover it from any nonzero coordinate.
    let k = normal.iter().position(|x| !x.is_zero()).unwrap();
    let scale = Rat::new(normal[k].clone(), I::one()).div(&coeffs[k]);
    debug_assert!(scale.is_positive());
    Some((normal, rhs.mul(&scale)))
}

/// Reduced row echelon form of an affine system `normal . x = rhs`.
#[derive(Clone, Debug)]
pub struct Rref<I: Int> {
    pub ambient: usize,
    /// Pivot column of each row, strictly increasing.
    pub pivots: Vec<usize>,
    /// Rows with pivot entry 1, fully reduced. Length = pivots.len().
    pub rows: Vec<(Vec<Rat<I>>, Rat<I>)>,
}

impl<I: Int> Rref<I> {
    /// Eliminates a system of affine equalities. Returns None when the
    /// system is inconsistent (reduces to 0 = nonzero).
    pub fn eliminate(ambient: usize, eqs: &[(Vec<I>, Rat<I>)]) -> Option<Self> {
        let mut rows: Vec<(Vec<Rat<I>>, Rat<I>)> = eqs
            .iter()
            .map(|(normal, rhs)| {
                let coeffs = normal.iter().map(|c| Rat::from_int(c.clone())).collect();
                (coeffs, rhs.clone())
            })
            .collect();
        let mut pivots = Vec::new();
        let mut done = 0usize;
        for col in 0..ambient {
            let Some(r) = (done..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else {
                continue;
            };
            rows.swap(done, r);
            let inv = Rat::one().div(&rows[done].0[col].clone());
            scale_row(&mut rows[done], &inv);
            for i in 0..rows.len() {
                if i != done && !rows[i].0[col].is_zero() {
                    let factor = rows[i].0[col].clone();
                    sub_scaled(&mut rows, i, done, &factor);
                }
            }
            pivots.push(col);
            done += 1;
            if done == rows.len() {
                break;
            }
        }
        // Remaining rows are all-zero normals; a nonzero rhs is a contradiction.
        for (normal, rhs) in rows.iter().skip(done) {
            debug_assert!(normal.iter().all(|c| c.is_zero()));
            if !rhs.is_zero() {
                return None;
            }
        }
        rows.truncate(done);
        Some(Rref { ambient, pivots, rows })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Canonical primitive-integer form of the equality system:
    /// unique per affine span, rows sorted by pivot column, leading
    /// (pivot) coefficient positive.
    pub fn canonical_rows(&self) -> Vec<(Vec<I>, Rat<I>)> {
        self.rows
            .iter()
            .map(|(coeffs, rhs)| primitive_row(coeffs, rhs).expect("pivot row is nonzero"))
            .collect()
    }

    /// Reduces an affine row modulo the row space: zeroes out the pivot
    /// columns, leaving the unique representative of `(coeffs, rhs)`
    /// modulo the equalities.
    pub fn reduce_row(&self, normal: &[I], rhs: &Rat<I>) -> (Vec<Rat<I>>, Rat<I>) {
        let mut coeffs: Vec<Rat<I>> = normal.iter().map(|c| Rat::from_int(c.clone())).collect();
        let mut rhs = rhs.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if coeffs[p].is_zero() {
                continue;
            }
            let factor = coeffs[p].clone();
            for (c, rc) in coeffs.iter_mut().zip(&row.0) {
                if !rc.is_zero() {
                    *c = c.sub(&factor.mul(rc));
                }
            }
            rhs = rhs.sub(&factor.mul(&row.1));
        }
        (coeffs, rhs)
    }

    /// The particular solution with all free variables set to zero.
    pub fn particular_solution(&self) -> Vec<Rat<I>> {
        let mut x = vec![Rat::zero(); self.ambient];
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            x[p] = row.1.clone();
        }
        x
    }

    /// Primitive integer basis of the kernel of the homogeneous part,
    /// one vector per free column, in ascending column order.
    pub fn kernel_basis(&self) -> Vec<Vec<I>> {
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.ambient];
            for &p in &self.pivots {
                s[p] = true;
            }
            s
        };
        let mut basis = Vec::new();
        for free in 0..self.ambient {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![Rat::zero(); self.ambient];
            v[free] = Rat::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row.0[free].is_zero() {
                    v[p] = row.0[free].neg();
                }
            }
            let (mut ints, _) = primitive_row(&v, &Rat::zero()).expect("kernel vector is nonzero");
            if ints[free].is_negative() {
                for x in ints.iter_mut() {
                    *x = x.neg();
                }
            }
            basis.push(ints);
        }
        basis
    }
}

fn scale_row<I: Int>(row: &mut (Vec<Rat<I>>, Rat<I>), factor: &Rat<I>) {
    for c in row.0.iter_mut() {
        if !c.is_zero() {
            *c = c.mul(factor);
        }
    }
    row.1 = row.1.mul(factor);
}

fn sub_scaled<I: Int>(rows: &mut [(Vec<Rat<I>>, Rat<I>)], target: usize, source: usize, factor: &Rat<I>) {
    let (a, b) = if target < source {
        let (lo, hi) = rows.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (c, rc) in a.0.iter_mut().zip(&b.0) {
        if !rc.is_zero() {
            *c = c.sub(&factor.mul(rc));
        }
    }
    a.1 = a.1.sub(&factor.mul(&b.1));
}

/// Rank of a set of integer vectors.
pub fn rank_int<I: Int>(ambient: usize, rows: &[Vec<I>]) -> usize {
    let eqs: Vec<(Vec<I>, Rat<I>)> = rows.iter().map(|r| (r.clone(), Rat::zero())).collect();
    Rref::eliminate(ambient, &eqs).expect("homogeneous system is consistent").rank()
}
