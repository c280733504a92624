//! Connected components of the prevariety and pointedness
//! certification of their recession cones.
//!
//! A component whose recession cone is pointed cannot contain a
//! balanced tropical curve, so a complex in which every component is
//! pointed certifies zero-dimensionality. The converse does not hold
//! (the prevariety only contains the tropical variety), so the verdict
//! vocabulary is Certified / Inconclusive.

use crate::cell::Cell;
use crate::exec::Executor;
use crate::num::Int;
use crate::prevariety::{interval_reject, Complex};
use crate::rays::{check_pointed, recession_rays, PointednessCertificate, PointednessVerdict, RaySet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub id: usize,
    /// Indices into the complex's canonical maximal-cell list, sorted.
    pub cell_ids: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    fn find(&mut self, mut id: usize) -> usize {
        while self.parent[id] != id {
            self.parent[id] = self.parent[self.parent[id]];
            id = self.parent[id];
        }
        id
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            self.parent[ra] = rb;
            self.size[rb] += self.size[ra];
        } else {
            self.parent[rb] = ra;
            self.size[ra] += self.size[rb];
        }
    }
}

/// Two maximal cells are adjacent iff their closed intersection is
/// nonempty (decided by exact LP on the combined constraints, behind a
/// cheap interval prefilter).
pub fn components<I: Int>(complex: &Complex<I>, exec: &Executor) -> Vec<Component> {
    let n = complex.cells.len();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    // One warm LP base per cell; pair tests append the partner's rows.
    let bases: Vec<_> = exec.map(complex.cells.clone(), |c| {
        let eqs: Vec<crate::lp::Row<I>> = c
            .work_eqs
            .iter()
            .map(|x| (x.normal.clone(), x.rhs.clone()))
            .collect();
        let ineqs: Vec<crate::lp::Row<I>> = c
            .work_ineqs
            .iter()
            .map(|x| (x.normal.clone(), x.rhs.clone()))
            .collect();
        crate::lp::warm_base(c.ambient, &eqs, &ineqs).expect("cells are nonempty")
    });
    let adjacent = exec.map(pairs.clone(), |(i, j)| {
        let a = &complex.cells[i];
        let b = &complex.cells[j];
        if b.contains(&a.sample) || a.contains(&b.sample) {
            return true;
        }
        if interval_reject(a, b) {
            return false;
        }
        let mut extra: Vec<crate::lp::Row<I>> =
            Vec::with_capacity(2 * b.work_eqs.len() + b.work_ineqs.len());
        for c in &b.work_eqs {
            extra.push((c.normal.clone(), c.rhs.clone()));
            let neg: Vec<I> = c.normal.iter().map(|x| x.neg()).collect();
            extra.push((neg, c.rhs.neg()));
        }
        for c in &b.work_ineqs {
            extra.push((c.normal.clone(), c.rhs.clone()));
        }
        bases[i].feasible_with(&extra).is_some()
    });
    let mut uf = UnionFind::new(n);
    for ((i, j), adj) in pairs.into_iter().zip(adjacent) {
        if adj {
            uf.union(i, j);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_slot: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = uf.find(i);
        match root_slot[r] {
            Some(slot) => groups[slot].push(i),
            None => {
                root_slot[r] = Some(groups.len());
                groups.push(vec![i]);
            }
        }
    }
    // Cells are canonically sorted in the complex, so ordering groups
    // by least member is canonical.
    groups.sort_by_key(|g| g[0]);
    groups
        .into_iter()
        .enumerate()
        .map(|(id, cell_ids)| Component { id, cell_ids })
        .collect()
}

pub fn cells_touch<I: Int>(a: &Cell<I>, b: &Cell<I>) -> bool {
    if b.contains(&a.sample) || a.contains(&b.sample) {
        return true;
    }
    if interval_reject(a, b) {
        return false;
    }
    let mut eqs = a.equalities.clone();
    eqs.extend(b.equalities.iter().cloned());
    let mut ineqs = a.inequalities.clone();
    ineqs.extend(b.inequalities.iter().cloned());
    let poly = crate::polyhedron::HPolyhedron {
        ambient: a.ambient,
        equalities: eqs,
        inequalities: ineqs,
    };
    poly.feasible()
}

/// Recession-cone generators of every maximal cell (deduplicated per
/// cell by construction).
pub fn cell_recession_rays<I: Int>(complex: &Complex<I>, exec: &Executor) -> Vec<RaySet<I>> {
    exec.map(complex.cells.clone(), |c| {
        let (eqs, ineqs) = c.homogeneous();
        recession_rays(c.ambient, &eqs, &ineqs)
    })
}

/// Union of the member cells' recession rays, primitive and
/// deduplicated.
pub fn component_recession_rays<I: Int>(
    comp: &Component,
    per_cell: &[RaySet<I>],
) -> RaySet<I> {
    let mut rays = RaySet::empty();
    for &i in &comp.cell_ids {
        rays.merge(&per_cell[i]);
    }
    rays
}

pub fn certify_component<I: Int>(rays: &RaySet<I>) -> PointednessCertificate<I> {
    check_pointed(rays)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct ComponentReport<I: Int> {
    pub component: Component,
    pub certificate: PointednessCertificate<I>,
}

/// Two-stage certification result.
#[derive(Clone, Debug)]
pub struct Certification<I: Int> {
    /// Stage 1: pointedness of the union of all cells' rays. When this
    /// is Pointed, component decomposition is unnecessary.
    pub global: PointednessCertificate<I>,
    /// Stage 2 (only when the global cone is not pointed).
    pub components: Option<Vec<ComponentReport<I>>>,
    pub verdict: Verdict,
    /// Ids of non-pointed components.
    pub offending: Vec<usize>,
}

/// Certifies the complex: global recession cone first, per-component
/// decomposition only when needed. `force_components` skips the global
/// shortcut (used by tests that compare both stages).
pub fn certify_complex<I: Int>(
    complex: &Complex<I>,
    exec: &Executor,
    force_components: bool,
) -> Certification<I> {
    let per_cell = cell_recession_rays(complex, exec);
    let mut global_rays = RaySet::empty();
    for r in &per_cell {
        global_rays.merge(r);
    }
    let global = check_pointed(&global_rays);
    if global.verdict == PointednessVerdict::Pointed && !force_components {
        return Certification {
            global,
            components: None,
            verdict: Verdict::Certified,
            offending: Vec::new(),
        };
    }
    let comps = components(complex, exec);
    let reports: Vec<ComponentReport<I>> = exec.map(comps, |component| {
        let rays = component_recession_rays(&component, &per_cell);
        let certificate = certify_component(&rays);
        ComponentReport { component, certificate }
    });
    let offending: Vec<usize> = reports
        .iter()
        .filter(|r| r.certificate.verdict == PointednessVerdict::NotPointed)
        .map(|r| r.component.id)
        .collect();
    let verdict = if offending.is_empty() {
        Verdict::Certified
    } else {
        Verdict::Inconclusive
    };
    Certification {
        global,
        components: Some(reports),
        verdict,
        offending,
    }
}
