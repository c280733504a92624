//! Recession-cone ray enumeration and pointedness certificates.
//!
//! Cones arrive as homogenized cells `{x : A x = 0, C x <= 0}`. The
//! lineality space is split off first, the pointed remainder is
//! enumerated with the double description method, and lineality
//! directions are emitted as opposite ray pairs. Pointedness of a ray
//! set is decided by an exact LP whose Farkas certificate is precisely
//! a lineality witness.

use crate::linalg::{self, Rref};
use crate::lp::{self, FeasOutcome};
use crate::num::{Int, Rat};

/// Primitive integer ray directions, pairwise non-parallel, sorted.
/// Opposite pairs are allowed (they encode lineality).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaySet<I: Int> {
    pub rays: Vec<Vec<I>>,
}

impl<I: Int> RaySet<I> {
    pub fn empty() -> Self {
        RaySet { rays: Vec::new() }
    }

    pub fn from_vectors(mut rays: Vec<Vec<I>>) -> Self {
        rays.retain_mut(|r| linalg::make_primitive(r));
        rays.sort();
        rays.dedup();
        RaySet { rays }
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn merge(&mut self, other: &RaySet<I>) {
        self.rays.extend(other.rays.iter().cloned());
        self.rays.sort();
        self.rays.dedup();
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointednessVerdict {
    Pointed,
    NotPointed,
}

/// Outcome of the pointedness LP together with the ray set it refers
/// to. Both branches carry an exactly re-verifiable witness.
#[derive(Clone, Debug)]
pub struct PointednessCertificate<I: Int> {
    pub verdict: PointednessVerdict,
    /// `witness . v >= 1` for every ray (Pointed).
    pub witness: Option<Vec<Rat<I>>>,
    /// Nonnegative multipliers, not all zero, with `sum l_i v_i = 0`
    /// (NotPointed).
    pub lineality: Option<Vec<Rat<I>>>,
    pub rays: RaySet<I>,
}

impl<I: Int> PointednessCertificate<I> {
    /// Re-checks the stored witness by substitution alone.
    pub fn verify(&self) -> bool {
        match self.verdict {
            PointednessVerdict::Pointed => {
                let Some(c) = &self.witness else { return false };
                if c.len() != ray_dim(&self.rays).unwrap_or(c.len()) {
                    return false;
                }
                self.rays
                    .rays
                    .iter()
                    .all(|v| linalg::dot_int_rat(v, c) >= Rat::one())
            }
            PointednessVerdict::NotPointed => {
                let Some(l) = &self.lineality else { return false };
                if l.len() != self.rays.len() || l.iter().any(|m| m.is_negative()) {
                    return false;
                }
                if !l.iter().any(|m| m.is_positive()) {
                    return false;
                }
                let Some(dim) = ray_dim(&self.rays) else { return false };
                let mut combo = vec![Rat::<I>::zero(); dim];
                for (m, v) in l.iter().zip(&self.rays.rays) {
                    for (acc, x) in combo.iter_mut().zip(v) {
                        if !x.is_zero() && !m.is_zero() {
                            *acc = acc.add(&m.mul_int(x));
                        }
                    }
                }
                combo.iter().all(|c| c.is_zero())
            }
        }
    }
}

fn ray_dim<I: Int>(rays: &RaySet<I>) -> Option<usize> {
    rays.rays.first().map(|r| r.len())
}

/// Decides whether the conic hull of the rays is pointed.
///
/// Pointed means some linear functional is >= 1 on every generator;
/// infeasibility of that system yields nonnegative multipliers summing
/// the rays to zero, i.e. a line in the cone.
pub fn check_pointed<I: Int>(rays: &RaySet<I>) -> PointednessCertificate<I> {
    let Some(dim) = ray_dim(rays) else {
        return PointednessCertificate {
            verdict: PointednessVerdict::Pointed,
            witness: Some(Vec::new()),
            lineality: None,
            rays: rays.clone(),
        };
    };
    let rows: Vec<(Vec<I>, Rat<I>)> = rays
        .rays
        .iter()
        .map(|v| {
            let neg: Vec<I> = v.iter().map(|x| x.neg()).collect();
            (neg, Rat::from_i64(-1))
        })
        .collect();
    match lp::feasibility(dim, &[], &rows) {
        FeasOutcome::Feasible(c) => PointednessCertificate {
            verdict: PointednessVerdict::Pointed,
            witness: Some(c),
            lineality: None,
            rays: rays.clone(),
        },
        FeasOutcome::Infeasible(f) => PointednessCertificate {
            verdict: PointednessVerdict::NotPointed,
            witness: None,
            lineality: Some(f.ineq),
            rays: rays.clone(),
        },
    }
}

/// Extreme rays of the recession cone `{x : A x = 0, C x <= 0}` given by
/// the homogeneous parts of a cell's constraints.
///
/// The lineality space contributes opposite ray pairs; the pointed
/// quotient is enumerated by double description. The conic hull of the
/// output equals the input cone.
pub fn recession_rays<I: Int>(
    ambient: usize,
    eq_normals: &[Vec<I>],
    ineq_normals: &[Vec<I>],
) -> RaySet<I> {
    let span = kernel_of(ambient, eq_normals);
    if span.is_empty() {
        return RaySet::empty();
    }
    let k = span.len();
    // Inequalities restricted to the span (z-coordinates).
    let c1: Vec<Vec<I>> = ineq_normals
        .iter()
        .filter_map(|c| {
            let mut row: Vec<I> = span.iter().map(|b| linalg::dot_int(c, b)).collect();
            linalg::make_primitive(&mut row).then_some(row)
        })
        .collect();

    let lineality = kernel_of(k, &c1);
    let mut out: Vec<Vec<I>> = Vec::new();
    for l in &lineality {
        let v = lift(&span, l);
        out.push(v.iter().map(|x| x.neg()).collect());
        out.push(v);
    }
    if lineality.len() < k {
        // Quotient by the lineality space: z = B2 u with B2 spanning the
        // orthogonal complement of the lineality inside the span.
        let (b2, d) = if lineality.is_empty() {
            (None, c1.clone())
        } else {
            let b2 = kernel_of(k, &lineality);
            let d: Vec<Vec<I>> = c1
                .iter()
                .filter_map(|c| {
                    let mut row: Vec<I> = b2.iter().map(|b| linalg::dot_int(c, b)).collect();
                    linalg::make_primitive(&mut row).then_some(row)
                })
                .collect();
            (Some(b2), d)
        };
        let m = b2.as_ref().map_or(k, |b| b.len());
        for u in pointed_cone_rays(m, &d) {
            let z = match &b2 {
                Some(b2) => lift(b2, &u),
                None => u,
            };
            out.push(lift(&span, &z));
        }
    }
    RaySet::from_vectors(out)
}

fn kernel_of<I: Int>(ambient: usize, rows: &[Vec<I>]) -> Vec<Vec<I>> {
    let eqs: Vec<(Vec<I>, Rat<I>)> = rows.iter().map(|r| (r.clone(), Rat::zero())).collect();
    Rref::eliminate(ambient, &eqs)
        .expect("homogeneous system is consistent")
        .kernel_basis()
}

fn lift<I: Int>(basis: &[Vec<I>], coords: &[I]) -> Vec<I> {
    debug_assert_eq!(basis.len(), coords.len());
    let n = basis[0].len();
    let mut v = vec![I::zero(); n];
    for (b, c) in basis.iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        for (acc, x) in v.iter_mut().zip(b) {
            if !x.is_zero() {
                *acc = acc.add(&c.mul(x));
            }
        }
    }
    v
}

/// Double description on a pointed cone `{u : D u <= 0}` of full rank.
fn pointed_cone_rays<I: Int>(dim: usize, rows: &[Vec<I>]) -> Vec<Vec<I>> {
    if dim == 0 {
        return Vec::new();
    }
    // Pick dim linearly independent rows for the simplicial start.
    let mut chosen: Vec<usize> = Vec::new();
    let mut picked: Vec<Vec<I>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if picked.len() == dim {
            break;
        }
        picked.push(row.clone());
        if linalg::rank_int(dim, &picked) == picked.len() {
            chosen.push(i);
        } else {
            picked.pop();
        }
    }
    assert_eq!(chosen.len(), dim, "cone must be pointed here");

    // Initial extreme rays: columns of -inverse(D0), cleared to integers.
    let mut rays: Vec<Ray<I>> = Vec::new();
    for j in 0..dim {
        let mut eqs: Vec<(Vec<I>, Rat<I>)> = Vec::with_capacity(dim);
        for (t, row) in picked.iter().enumerate() {
            let rhs = if t == j { Rat::from_i64(-1) } else { Rat::zero() };
            eqs.push((row.clone(), rhs));
        }
        let rref = Rref::eliminate(dim, &eqs).expect("independent rows");
        let solution = rref.particular_solution();
        let (mut vector, _) =
            linalg::primitive_row(&solution, &Rat::zero()).expect("nonzero ray");
        // Orient into the cone: picked[j] . vector must be negative.
        if linalg::dot_int(&picked[j], &vector).is_positive() {
            for x in vector.iter_mut() {
                *x = x.neg();
            }
        }
        let mut zero = ZeroSet::new(rows.len());
        for (t, &row_idx) in chosen.iter().enumerate() {
            if t != j {
                zero.insert(row_idx);
            }
        }
        rays.push(Ray { vector, zero });
    }

    let mut processed: Vec<usize> = chosen.clone();
    for (idx, row) in rows.iter().enumerate() {
        if chosen.contains(&idx) {
            continue;
        }
        let signs: Vec<I> = rays.iter().map(|r| linalg::dot_int(row, &r.vector)).collect();
        for (ray, s) in rays.iter_mut().zip(&signs) {
            if s.is_zero() {
                ray.zero.insert(idx);
            }
        }
        if signs.iter().all(|s| !s.is_positive()) {
            processed.push(idx);
            continue;
        }
        let mut next: Vec<Ray<I>> = Vec::new();
        for (r, s) in rays.iter().zip(&signs) {
            if !s.is_positive() {
                next.push(r.clone());
            }
        }
        for (pi, sp) in signs.iter().enumerate() {
            if !sp.is_positive() {
                continue;
            }
            for (qi, sq) in signs.iter().enumerate() {
                if !sq.is_negative() {
                    continue;
                }
                if !adjacent(&rays, pi, qi) {
                    continue;
                }
                // w = sp * q - sq * p lies on the hyperplane, inside the cone.
                let p = &rays[pi];
                let q = &rays[qi];
                let mut vector: Vec<I> = q
                    .vector
                    .iter()
                    .zip(&p.vector)
                    .map(|(qv, pv)| sp.mul(qv).sub(&sq.mul(pv)))
                    .collect();
                let ok = linalg::make_primitive(&mut vector);
                debug_assert!(ok, "combined ray cannot vanish in a pointed cone");
                let mut zero = p.zero.intersection(&q.zero);
                zero.insert(idx);
                next.push(Ray { vector, zero });
            }
        }
        rays = next;
        processed.push(idx);
    }

    let mut out: Vec<Vec<I>> = rays.into_iter().map(|r| r.vector).collect();
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug)]
struct Ray<I: Int> {
    vector: Vec<I>,
    zero: ZeroSet,
}

/// Rays `p, q` are adjacent iff no third ray's zero set contains the
/// intersection of theirs (combinatorial test; valid for pointed cones).
fn adjacent<I: Int>(rays: &[Ray<I>], pi: usize, qi: usize) -> bool {
    let common = rays[pi].zero.intersection(&rays[qi].zero);
    rays.iter()
        .enumerate()
        .all(|(i, r)| i == pi || i == qi || !r.zero.contains_all(&common))
}

#[derive(Clone, Debug)]
struct ZeroSet {
    words: Vec<u64>,
}

impl ZeroSet {
    fn new(domain: usize) -> Self {
        ZeroSet { words: vec![0; domain.div_ceil(64)] }
    }
    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }
    fn intersection(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }
    fn contains_all(&self, other: &ZeroSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == *b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rays_of(ambient: usize, eqs: Vec<Vec<i64>>, ineqs: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
        recession_rays(ambient, &eqs, &ineqs).rays
    }

    #[test]
    fn negative_quadrant() {
        let r = rays_of(2, vec![], vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(r, vec![vec![-1, 0], vec![0, -1]]);
    }

    #[test]
    fn line_gives_opposite_pair() {
        let r = rays_of(2, vec![vec![1, 0]], vec![]);
        assert_eq!(r, vec![vec![0, -1], vec![0, 1]]);
    }

    #[test]
    fn zero_cone_is_empty() {
        let r = rays_of(2, vec![vec![1, 0], vec![0, 1]], vec![]);
        assert!(r.is_empty());
        let pinched = rays_of(2, vec![], vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]);
        assert!(pinched.is_empty());
    }

    #[test]
    fn halfplane_has_lineality_and_ray() {
        // {y <= 0} in dim 2: lineality x-axis, pointed part -e2.
        let r = rays_of(2, vec![], vec![vec![0, 1]]);
        assert_eq!(r, vec![vec![-1, 0], vec![0, -1], vec![1, 0]]);
    }

    #[test]
    fn simplicial_cone_in_dim3() {
        let r = rays_of(3, vec![], vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(r.len(), 3);
        for v in &r {
            assert!(v.iter().all(|x| *x <= 0));
        }
    }

    #[test]
    fn square_cone_has_four_rays() {
        // {u : x <= z, -x <= z, y <= z, -y <= z, z >= 0} rotated: use
        // the cone over a square: -z <= x <= z, -z <= y <= z needs z >= 0.
        let ineqs = vec![
            vec![1, 0, -1],
            vec![-1, 0, -1],
            vec![0, 1, -1],
            vec![0, -1, -1],
        ];
        let r = rays_of(3, vec![], ineqs);
        assert_eq!(r.len(), 4);
        for v in &r {
            assert_eq!(v[2].abs(), 1);
            assert_eq!(v[0].abs(), 1);
            assert_eq!(v[1].abs(), 1);
            assert!(v[2] > 0);
        }
    }

    #[test]
    fn pointed_pair_has_witness() {
        let rs = RaySet::from_vectors(vec![vec![1, 0], vec![0, 1]]);
        let cert = check_pointed(&rs);
        assert_eq!(cert.verdict, PointednessVerdict::Pointed);
        assert!(cert.verify());
        let c = cert.witness.unwrap();
        assert_eq!(c, vec![Rat::from_i64(1), Rat::from_i64(1)]);
    }

    #[test]
    fn opposite_pair_is_not_pointed() {
        let rs = RaySet::from_vectors(vec![vec![1, 0], vec![-1, 0]]);
        let cert = check_pointed(&rs);
        assert_eq!(cert.verdict, PointednessVerdict::NotPointed);
        assert!(cert.verify());
        let l = cert.lineality.unwrap();
        assert_eq!(l, vec![Rat::from_i64(1), Rat::from_i64(1)]);
    }

    #[test]
    fn plane_spanning_rays_are_not_pointed() {
        // (1,1) + (1,-1) + 2(-1,0) = 0.
        let rs = RaySet::from_vectors(vec![vec![1, 1], vec![1, -1], vec![-1, 0]]);
        let cert = check_pointed(&rs);
        assert_eq!(cert.verdict, PointednessVerdict::NotPointed);
        assert!(cert.verify());
    }

    #[test]
    fn empty_ray_set_is_pointed_with_zero_witness() {
        let cert = check_pointed(&RaySet::<i64>::empty());
        assert_eq!(cert.verdict, PointednessVerdict::Pointed);
        assert_eq!(cert.witness.as_deref(), Some(&[][..]));
        assert!(cert.verify());
    }
}
