//! Representations of a ℤⁿ-quiver in finite-dimensional vector spaces on
//! a window: axiom checks, generation, class maps, decomposition into
//! simple summands, shadow nets and the polygon kernel-dimension identity.

use crate::linalg::{Field, Matrix, Subspace};
use crate::zquiver::{
    admissible_path, argmin, hull, neighbor_type, shadow_unchecked, window, ArrowType, Path, Polygon,
    Vertex, VertexWindow, ZquiverError,
};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetError {
    #[error("no admissible path from {0} to {1} inside the window")]
    PathLeavesWindow(Vertex, Vertex),
    #[error("{0} and {1} are not neighbors")]
    NotNeighbors(Vertex, Vertex),
    #[error("net is not 1-generated by any window subset: {0} is uncovered")]
    NotOneGenerated(Vertex),
    #[error("candidate generator {0} touches the window boundary")]
    WindowTooSmall(Vertex),
    #[error("decomposition into simple summands failed: {0}")]
    DecompositionFailed(String),
    #[error("vertex {0} is not in the window")]
    NotInWindow(Vertex),
    #[error(transparent)]
    Quiver(#[from] ZquiverError),
    #[error("arrow ({0}, type {1}) has shape {2}x{3}, expected {4}x{5}")]
    BadShape(Vertex, ArrowType, usize, usize, usize, usize),
    #[error("missing arrow ({0}, type {1})")]
    MissingArrow(Vertex, ArrowType),
    #[error("presentation cross maps are incompatible: {0}")]
    BadPresentation(String),
}

/// Outcome of one bounded axiom check. The bound string records how far
/// the window allowed the verification to go, so a pass is never
/// silently global.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: &'static str,
    pub passed: bool,
    pub bound: String,
    pub violations: Vec<String>,
}

impl CheckReport {
    fn new(check: &'static str, bound: String, violations: Vec<String>) -> CheckReport {
        CheckReport {
            check,
            passed: violations.is_empty(),
            bound,
            violations,
        }
    }
}

/// A finite materialization of a quiver representation: a dimension per
/// window vertex and a matrix per arrow with both ends in the window.
#[derive(Debug, Clone)]
pub struct WindowNet<K: Field> {
    field: K,
    n: usize,
    window: VertexWindow,
    verts: Vec<Vertex>,
    index: BTreeMap<Vertex, usize>,
    dims: Vec<usize>,
    arrows: BTreeMap<(usize, ArrowType), Matrix<K>>,
}

impl<K: Field> WindowNet<K> {
    pub fn new(
        field: K,
        n: usize,
        window: VertexWindow,
        dims: BTreeMap<Vertex, usize>,
        arrows: BTreeMap<(Vertex, ArrowType), Matrix<K>>,
    ) -> Result<Self, NetError> {
        let verts: Vec<Vertex> = window.members().iter().cloned().collect();
        let index: BTreeMap<Vertex, usize> =
            verts.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let dim_vec: Vec<usize> = verts
            .iter()
            .map(|v| dims.get(v).copied().unwrap_or(0))
            .collect();
        let mut amap = BTreeMap::new();
        for (v, vi) in &index {
            for a in 0..=n {
                let tgt = v.arrow_target(a);
                let Some(&ti) = index.get(&tgt) else { continue };
                let m = arrows
                    .get(&(v.clone(), a))
                    .ok_or_else(|| NetError::MissingArrow(v.clone(), a))?;
                if m.rows() != dim_vec[ti] || m.cols() != dim_vec[*vi] {
                    return Err(NetError::BadShape(
                        v.clone(),
                        a,
                        m.rows(),
                        m.cols(),
                        dim_vec[ti],
                        dim_vec[*vi],
                    ));
                }
                amap.insert((*vi, a), m.clone());
            }
        }
        Ok(WindowNet {
            field,
            n,
            window,
            verts,
            index,
            dims: dim_vec,
            arrows: amap,
        })
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn window(&self) -> &VertexWindow {
        &self.window
    }
    pub fn vertices(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.index.contains_key(v)
    }

    pub fn dim_at(&self, v: &Vertex) -> usize {
        self.dims[self.index[v]]
    }

    /// The matrix of the type-`a` arrow leaving `v`, if its target is
    /// inside the window.
    pub fn arrow(&self, v: &Vertex, a: ArrowType) -> Option<&Matrix<K>> {
        let vi = *self.index.get(v)?;
        self.arrows.get(&(vi, a))
    }

    /// Composite matrix along a path; `None` if the path leaves the window.
    pub fn path_map(&self, path: &Path) -> Option<Matrix<K>> {
        let mut acc = Matrix::identity(self.field.clone(), self.dim_at(&path.source));
        let mut cur = path.source.clone();
        for &a in &path.steps {
            let m = self.arrow(&cur, a)?;
            acc = m.compose(&acc).expect("consistent shapes along a path");
            cur = cur.arrow_target(a);
        }
        Some(acc)
    }

    /// A representative of the class φ^u_v: the composite along an
    /// admissible path from u to v inside the window. The canonical
    /// ascending-type path is preferred; any in-window admissible
    /// ordering is accepted as fallback, which is harmless for weakly
    /// linked nets since all of them are proportional.
    pub fn class_map(&self, u: &Vertex, v: &Vertex) -> Result<Matrix<K>, NetError> {
        if !self.contains(u) {
            return Err(NetError::NotInWindow(u.clone()));
        }
        if !self.contains(v) {
            return Err(NetError::NotInWindow(v.clone()));
        }
        if u == v {
            return Ok(Matrix::identity(self.field.clone(), self.dim_at(u)));
        }
        let canonical = admissible_path(u, v);
        if let Some(m) = self.path_map(&canonical) {
            return Ok(m);
        }
        let counts = v.diff_from(u);
        self.search_admissible(u, &counts)
            .ok_or_else(|| NetError::PathLeavesWindow(u.clone(), v.clone()))
    }

    fn search_admissible(&self, from: &Vertex, remaining: &[i64]) -> Option<Matrix<K>> {
        if remaining.iter().all(|&c| c == 0) {
            return Some(Matrix::identity(self.field.clone(), self.dim_at(from)));
        }
        for a in 0..=self.n {
            if remaining[a] == 0 {
                continue;
            }
            let next = from.arrow_target(a);
            if !self.contains(&next) {
                continue;
            }
            let mut rem = remaining.to_vec();
            rem[a] -= 1;
            if let Some(tail) = self.search_admissible(&next, &rem) {
                let head = self.arrow(from, a).expect("target is in window");
                return Some(tail.compose(head).expect("shapes"));
            }
        }
        None
    }

    /// All in-window paths leaving `from` of length at most `max_len`,
    /// together with their composite matrices.
    pub(crate) fn paths_from(&self, from: &Vertex, max_len: usize) -> Vec<(Path, Matrix<K>)> {
        let mut out = Vec::new();
        let id = Matrix::identity(self.field.clone(), self.dim_at(from));
        let mut stack = vec![(Path::trivial(from.clone()), id)];
        while let Some((path, acc)) = stack.pop() {
            if path.len() < max_len {
                let tip = path.target();
                for a in 0..=self.n {
                    let next = tip.arrow_target(a);
                    if !self.contains(&next) {
                        continue;
                    }
                    let m = self.arrow(&tip, a).expect("target in window");
                    let comp = m.compose(&acc).expect("shapes");
                    let mut steps = path.steps.clone();
                    steps.push(a);
                    stack.push((Path::new(from.clone(), steps), comp));
                }
            }
            out.push((path, acc));
        }
        out
    }

    /// Weakly-linked axioms over the window: every composite is a scalar
    /// multiple of each admissible composite with the same endpoints
    /// (paths up to length n+1), and minimal circuits compose to zero.
    pub fn check_weakly_linked(&self) -> CheckReport {
        let max_len = self.n + 1;
        let mut violations = Vec::new();
        for v in &self.verts {
            let paths = self.paths_from(v, max_len);
            let mut by_target: BTreeMap<Vertex, Vec<&(Path, Matrix<K>)>> = BTreeMap::new();
            for entry in &paths {
                by_target.entry(entry.0.target()).or_default().push(entry);
            }
            // Condition (1) holds for all pairs against admissible paths
            // iff it holds against one nonzero admissible representative
            // (or, failing that, every composite in the group is zero).
            for group in by_target.values() {
                let reference = group
                    .iter()
                    .find(|(p, m)| p.classify().admissible && !m.is_zero());
                match reference {
                    Some((pref, mref)) => {
                        for (p1, m1) in group.iter() {
                            if m1.scalar_multiple_of(mref).is_none() {
                                violations.push(format!(
                                    "composites from {} via {:?} and {:?} are not proportional",
                                    v, p1.steps, pref.steps
                                ));
                            }
                        }
                        // A zero admissible path forbids nonzero ones.
                        for (p2, m2) in group.iter() {
                            if p2.classify().admissible && m2.is_zero() {
                                violations.push(format!(
                                    "composites from {} via {:?} and {:?} are not proportional",
                                    v, pref.steps, p2.steps
                                ));
                            }
                        }
                    }
                    None => {
                        // All admissible composites are zero, so every
                        // composite with these endpoints must vanish.
                        let any_admissible =
                            group.iter().any(|(p, _)| p.classify().admissible);
                        if any_admissible {
                            for (p1, m1) in group.iter() {
                                if !m1.is_zero() {
                                    violations.push(format!(
                                        "composite from {} via {:?} is nonzero while admissible composites vanish",
                                        v, p1.steps
                                    ));
                                }
                            }
                        }
                    }
                }
            }
            for (p, m) in &paths {
                if p.classify().is_minimal_circuit() && !m.is_zero() {
                    violations.push(format!(
                        "minimal circuit at {} with steps {:?} has nonzero composite",
                        v, p.steps
                    ));
                }
            }
        }
        violations.sort();
        violations.dedup();
        CheckReport::new(
            "weakly_linked",
            format!(
                "paths up to length {} on {} window vertices",
                max_len,
                self.verts.len()
            ),
            violations,
        )
    }

    /// Linked-net condition (3): admissible paths leaving one vertex
    /// with disjoint essential types have trivially intersecting
    /// kernels. Simple paths suffice, so we test canonical simple paths
    /// for every disjoint pair of nonempty type sets.
    pub fn check_linked(&self) -> CheckReport {
        let mut violations = Vec::new();
        let mut skipped = 0usize;
        let type_sets = nonempty_subsets(self.n + 1);
        for v in &self.verts {
            for (i, s1) in type_sets.iter().enumerate() {
                for s2 in type_sets.iter().skip(i + 1) {
                    if !s1.is_disjoint(s2) {
                        continue;
                    }
                    let t1 = simple_path(v, s1).target();
                    let t2 = simple_path(v, s2).target();
                    let (Ok(m1), Ok(m2)) = (self.class_map(v, &t1), self.class_map(v, &t2))
                    else {
                        skipped += 1;
                        continue;
                    };
                    let inter = m1.kernel().intersect(&m2.kernel());
                    if inter.dim() > 0 {
                        violations.push(format!(
                            "kernels at {} for type sets {:?} and {:?} intersect in dim {}",
                            v,
                            s1,
                            s2,
                            inter.dim()
                        ));
                    }
                }
            }
        }
        violations.sort();
        CheckReport::new(
            "linked",
            format!(
                "simple path pairs on {} window vertices ({} pairs skipped at the boundary)",
                self.verts.len(),
                skipped
            ),
            violations,
        )
    }

    /// Exactness: Im(φ^u_v) = Ker(φ^v_u) for neighbors u, v in both
    /// orientations, wherever both class maps exist in the window.
    pub fn check_exact(&self) -> CheckReport {
        let mut violations = Vec::new();
        let mut skipped = 0usize;
        let mut checked = 0usize;
        for (i, u) in self.verts.iter().enumerate() {
            for v in self.verts.iter().skip(i + 1) {
                if neighbor_type(u, v).is_none() {
                    continue;
                }
                let (Ok(muv), Ok(mvu)) = (self.class_map(u, v), self.class_map(v, u)) else {
                    skipped += 1;
                    continue;
                };
                checked += 1;
                if muv.image() != mvu.kernel() {
                    violations.push(format!(
                        "Im(phi^{}_{}) != Ker(phi^{}_{})",
                        u, v, v, u
                    ));
                }
                if mvu.image() != muv.kernel() {
                    violations.push(format!(
                        "Im(phi^{}_{}) != Ker(phi^{}_{})",
                        v, u, u, v
                    ));
                }
            }
        }
        violations.sort();
        CheckReport::new(
            "exact",
            format!("{checked} neighbor pairs checked ({skipped} skipped at the boundary)"),
            violations,
        )
    }

    /// Purity for vector spaces: all window dimensions equal and positive.
    pub fn check_pure(&self) -> CheckReport {
        let mut violations = Vec::new();
        let d0 = self.dims.first().copied().unwrap_or(0);
        if d0 == 0 {
            violations.push("net is trivial (dimension 0)".to_string());
        }
        for (v, &d) in self.verts.iter().zip(&self.dims) {
            if d != d0 {
                violations.push(format!("dim at {} is {}, expected {}", v, d, d0));
            }
        }
        violations.sort();
        CheckReport::new(
            "pure",
            format!("{} window vertices", self.verts.len()),
            violations,
        )
    }

    /// The largest admissible-path length between window vertices; a
    /// sensible finiteness bound, since longer in-window paths must wrap
    /// around a circuit.
    pub fn admissible_diameter(&self) -> usize {
        let mut best = 0usize;
        for u in &self.verts {
            for v in &self.verts {
                let total: i64 = v.diff_from(u).iter().sum();
                best = best.max(total as usize);
            }
        }
        best
    }

    /// Bounded local finiteness: every in-window path of length
    /// `bound + 1` composes to zero. Longer paths factor through these.
    /// The search prunes branches whose composite already vanished, so
    /// valid nets are cheap regardless of the bound; witness output is
    /// capped to keep reports readable.
    pub fn check_locally_finite(&self, bound: usize) -> CheckReport {
        const WITNESS_CAP: usize = 20;
        let mut violations = Vec::new();
        'outer: for v in &self.verts {
            let id = Matrix::identity(self.field.clone(), self.dim_at(v));
            let mut stack = vec![(Path::trivial(v.clone()), id)];
            while let Some((path, acc)) = stack.pop() {
                if path.len() == bound + 1 {
                    violations.push(format!(
                        "path of length {} from {} with steps {:?} has nonzero composite",
                        path.len(),
                        v,
                        path.steps
                    ));
                    if violations.len() >= WITNESS_CAP {
                        break 'outer;
                    }
                    continue;
                }
                let tip = path.target();
                for a in 0..=self.n {
                    let next = tip.arrow_target(a);
                    if !self.contains(&next) {
                        continue;
                    }
                    let m = self.arrow(&tip, a).expect("target in window");
                    let comp = m.compose(&acc).expect("shapes");
                    if comp.is_zero() {
                        continue;
                    }
                    let mut steps = path.steps.clone();
                    steps.push(a);
                    stack.push((Path::new(v.clone(), steps), comp));
                }
            }
        }
        violations.sort();
        let capped = violations.len() >= WITNESS_CAP;
        CheckReport::new(
            "locally_finite",
            format!(
                "paths of length {} inside a window of {} vertices{}",
                bound + 1,
                self.verts.len(),
                if capped { ", witness list capped" } else { "" }
            ),
            violations,
        )
    }

    /// Nearby targets of admissible paths of length at most n+1; the
    /// hop alphabet for bounded generation checks.
    fn short_hop_targets(&self, u: &Vertex) -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut counts = vec![0i64; self.n + 1];
        fn rec<K: Field>(
            net: &WindowNet<K>,
            u: &Vertex,
            pos: usize,
            left: usize,
            counts: &mut Vec<i64>,
            out: &mut Vec<Vertex>,
        ) {
            if pos == counts.len() {
                if counts.iter().any(|&c| c > 0) && counts.iter().any(|&c| c == 0) {
                    let raw: Vec<i64> = u
                        .coords()
                        .iter()
                        .zip(counts.iter())
                        .map(|(a, b)| a + b)
                        .collect();
                    let v = Vertex::normalize(&raw);
                    if net.contains(&v) {
                        out.push(v);
                    }
                }
                return;
            }
            for c in 0..=left {
                counts[pos] = c as i64;
                rec(net, u, pos + 1, left - c, counts, out);
            }
            counts[pos] = 0;
        }
        rec(self, u, 0, self.n + 1, &mut counts, &mut out);
        out
    }

    /// All window vertices reachable from H by chains of admissible
    /// class-map epimorphisms (a chain composite is a path composite,
    /// so reached vertices are genuinely 1-generated witnesses).
    fn epi_reachable(&self, h: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
        let mut reached: BTreeSet<Vertex> = h
            .iter()
            .filter(|u| self.contains(u))
            .cloned()
            .collect();
        let mut frontier: Vec<Vertex> = reached.iter().cloned().collect();
        while let Some(u) = frontier.pop() {
            for v in self.short_hop_targets(&u) {
                if reached.contains(&v) {
                    continue;
                }
                let epi = self
                    .class_map(&u, &v)
                    .map(|m| m.is_epimorphism())
                    .unwrap_or(false);
                if epi {
                    reached.insert(v.clone());
                    frontier.push(v);
                }
            }
        }
        reached
    }

    /// Is the net generated by H over the verifiable core: at every
    /// core vertex the images of path composites from H must span.
    /// Spans are propagated along arrows so that long admissible paths
    /// are not required to fit inside the window.
    pub fn is_generated_by(&self, h: &BTreeSet<Vertex>) -> bool {
        let mut spans: BTreeMap<usize, Subspace<K>> = (0..self.verts.len())
            .map(|i| {
                let v = &self.verts[i];
                let init = if h.contains(v) {
                    Subspace::full(self.field.clone(), self.dims[i])
                } else {
                    Subspace::zero(self.field.clone(), self.dims[i])
                };
                (i, init)
            })
            .collect();
        let mut changed = true;
        while changed {
            changed = false;
            for (i, v) in self.verts.iter().enumerate() {
                for a in 0..=self.n {
                    let tgt = v.arrow_target(a);
                    let Some(&ti) = self.index.get(&tgt) else { continue };
                    let m = self.arrows.get(&(i, a)).expect("validated arrows");
                    let image = spans[&i].map_through(m);
                    let combined = spans[&ti].sum(&image);
                    if combined.dim() > spans[&ti].dim() {
                        spans.insert(ti, combined);
                        changed = true;
                    }
                }
            }
        }
        self.window
            .core()
            .iter()
            .all(|v| spans[&self.index[v]].dim() == self.dim_at(v))
    }

    /// Is the net 1-generated by H: every vertex of the verifiable core
    /// is reached from H by a chain of class-map epimorphisms.
    pub fn is_one_generated_by(&self, h: &BTreeSet<Vertex>) -> bool {
        let reached = self.epi_reachable(h);
        self.window.core().iter().all(|v| reached.contains(v))
    }

    /// The unique minimal 1-generating set: vertices not covered by an
    /// epimorphism from any other vertex (a short incoming hop suffices,
    /// because the final stretch of an epi composite is epi). Errors if
    /// a candidate touches the boundary (the criterion is unreliable
    /// there) or if the candidates fail to 1-generate the window.
    pub fn minimal_one_generators(&self) -> Result<BTreeSet<Vertex>, NetError> {
        let core = self.window.core();
        let mut incoming: BTreeMap<&Vertex, Vec<&Vertex>> = BTreeMap::new();
        for u in &self.verts {
            for t in self.short_hop_targets(u) {
                let slot = incoming.entry(self.index_key(&t)).or_default();
                slot.push(u);
            }
        }
        let mut gens = BTreeSet::new();
        for v in &core {
            let covered = incoming.get(v).map_or(false, |sources| {
                sources.iter().any(|u| {
                    self.class_map(u, v)
                        .map(|m| m.is_epimorphism())
                        .unwrap_or(false)
                })
            });
            if !covered {
                // Candidates at the edge of the core may only look
                // uncovered because incoming paths were clipped.
                let clipped = self
                    .window
                    .dist(v)
                    .map(|d| d + 2 * self.n > self.window.radius())
                    .unwrap_or(true);
                if clipped {
                    return Err(NetError::WindowTooSmall(v.clone()));
                }
                gens.insert(v.clone());
            }
        }
        let reached = self.epi_reachable(&gens);
        if let Some(v) = core.iter().find(|v| !reached.contains(*v)) {
            return Err(NetError::NotOneGenerated(v.clone()));
        }
        Ok(gens)
    }

    fn index_key(&self, v: &Vertex) -> &Vertex {
        let i = self.index[v];
        &self.verts[i]
    }

    /// Neighbors are related when a class map in one direction is nonzero.
    pub fn related(&self, u: &Vertex, v: &Vertex) -> Result<bool, NetError> {
        if neighbor_type(u, v).is_none() {
            return Err(NetError::NotNeighbors(u.clone(), v.clone()));
        }
        let uv = self.class_map(u, v)?;
        let vu = self.class_map(v, u)?;
        Ok(!uv.is_zero() || !vu.is_zero())
    }

    /// Kernel-dimension identity around an oriented polygon with at
    /// least two vertices: the kernels of the consecutive class maps
    /// (cyclically) have total dimension equal to dim V.
    pub fn polygon_kernel_dimension_identity(&self, delta: &Polygon) -> Result<bool, NetError> {
        assert!(delta.len() >= 2, "identity needs a polygon with >= 2 vertices");
        let start = delta.iter().next().unwrap().clone();
        let (ordered, _) = delta.orient(&start)?;
        let mut total = 0usize;
        for i in 0..ordered.len() {
            let u = &ordered[i];
            let v = &ordered[(i + 1) % ordered.len()];
            total += self.class_map(u, v)?.kernel().dim();
        }
        Ok(total == self.dim_at(&start))
    }

    /// The subnet generated by a single vector: admissible class maps
    /// suffice for weakly linked nets.
    pub fn subnet_generated(&self, v: &Vertex, s: &[K::E]) -> Result<Subnet<K>, NetError> {
        assert!(
            s.iter().any(|e| !self.field.is_zero(e)),
            "generating vector must be nonzero"
        );
        let mut spaces = BTreeMap::new();
        for u in &self.verts {
            let m = self.class_map(v, u)?;
            let img = m.apply(s);
            spaces.insert(
                u.clone(),
                Subspace::from_vectors(self.field.clone(), self.dim_at(u), vec![img]),
            );
        }
        Ok(Subnet { spaces })
    }

    /// The shadow net 𝔙_H: spaces are copied from shadows, an arrow is
    /// zero unless an admissible path from the source's shadow through
    /// the source reaches the target, in which case it is a class-map
    /// representative between the shadows.
    pub fn shadow_net(&self, h: &BTreeSet<Vertex>) -> Result<WindowNet<K>, NetError> {
        if hull(h) != *h {
            return Err(ZquiverError::HullNotClosed.into());
        }
        for w in h {
            if !self.contains(w) {
                return Err(NetError::NotInWindow(w.clone()));
            }
        }
        let mut shadows: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        for v in &self.verts {
            shadows.insert(v.clone(), shadow_unchecked(v, h)?);
        }
        let mut dims = BTreeMap::new();
        for v in &self.verts {
            dims.insert(v.clone(), self.dim_at(&shadows[v]));
        }
        let mut arrows = BTreeMap::new();
        for v in &self.verts {
            let w1 = &shadows[v];
            for a in 0..=self.n {
                let tgt = v.arrow_target(a);
                if !self.contains(&tgt) {
                    continue;
                }
                let w2 = &shadows[&tgt];
                let mut counts = v.diff_from(w1);
                counts[a] += 1;
                let admissible_through = counts.iter().any(|&c| c == 0);
                let m = if admissible_through {
                    self.class_map(w1, w2)?
                } else {
                    Matrix::zero(self.field.clone(), self.dim_at(w2), self.dim_at(w1))
                };
                arrows.insert((v.clone(), a), m);
            }
        }
        WindowNet::new(self.field.clone(), self.n, self.window.clone(), dims, arrows)
    }

    /// Exercise the expected properties of a shadow net 𝔙_H and return
    /// the reports: weakly linked and generated by H always; purity and
    /// exactness inherited; linked when every bridge between weakly
    /// neighboring members of H lies in H.
    pub fn check_shadow_net(&self, h: &BTreeSet<Vertex>) -> Result<Vec<CheckReport>, NetError> {
        let sh = self.shadow_net(h)?;
        let mut reports = vec![sh.check_weakly_linked()];
        reports.push(CheckReport::new(
            "shadow_generated_by_h",
            format!("window of {} vertices", sh.verts.len()),
            if sh.is_generated_by(h) {
                vec![]
            } else {
                vec!["shadow net is not generated by H".to_string()]
            },
        ));
        if self.check_pure().passed {
            reports.push(sh.check_pure());
        }
        if self.check_exact().passed {
            reports.push(sh.check_exact());
        }
        let bridges_closed = {
            let hv: Vec<&Vertex> = h.iter().collect();
            let mut closed = true;
            'outer: for i in 0..hv.len() {
                for j in (i + 1)..hv.len() {
                    let b = crate::zquiver::bridges(hv[i], hv[j], &self.window);
                    if !b.iter().all(|v| h.contains(v)) {
                        closed = false;
                        break 'outer;
                    }
                }
            }
            closed
        };
        if self.check_linked().passed && bridges_closed {
            reports.push(sh.check_linked());
        }
        Ok(reports)
    }

    /// Decompose a pure exact net generated by the polygon Δ into
    /// simple summands: choose a canonical complement of the incoming
    /// image at each polygon vertex, push the pieces around by class
    /// maps, and verify that every window arrow is diagonal in the
    /// resulting basis.
    pub fn decompose_polygon_generated(
        &self,
        delta: &Polygon,
    ) -> Result<Decomposition<K>, NetError> {
        if !self.check_pure().passed {
            return Err(NetError::DecompositionFailed("net is not pure".to_string()));
        }
        let f = self.field.clone();
        let start = delta.iter().next().unwrap().clone();
        let (ordered, _) = delta.orient(&start)?;
        let m = ordered.len();
        let r = self.dim_at(&start);

        // Summand generators: at each polygon vertex, a canonical
        // complement of the image of the class map from the previous one.
        let mut summands: Vec<(usize, Vec<K::E>)> = Vec::new(); // (polygon position, seed vector)
        let mut counts = vec![0usize; m];
        for (i, vi) in ordered.iter().enumerate() {
            let prev = &ordered[(i + m - 1) % m];
            let incoming = if m == 1 {
                Subspace::zero(f.clone(), r)
            } else {
                self.class_map(prev, vi)?.image()
            };
            let comp = echelon_complement(&f, &incoming, self.dim_at(vi));
            counts[i] = comp.len();
            for vec in comp {
                summands.push((i, vec));
            }
        }
        if summands.len() != r {
            return Err(NetError::DecompositionFailed(format!(
                "summand count {} does not match dimension {}",
                summands.len(),
                r
            )));
        }

        // Adapted basis at the polygon vertices, extended over the
        // window through the shadows.
        let delta_set: BTreeSet<Vertex> = ordered.iter().cloned().collect();
        if hull(&delta_set) != delta_set {
            return Err(ZquiverError::HullNotClosed.into());
        }
        let mut basis: BTreeMap<Vertex, Matrix<K>> = BTreeMap::new();
        for z in &self.verts {
            let w = shadow_unchecked(z, &delta_set)?;
            let cols: Result<Vec<Vec<K::E>>, NetError> = summands
                .iter()
                .map(|(q, seed)| {
                    let to_w = self.class_map(&ordered[*q], &w)?;
                    let to_z = self.class_map(&w, z)?;
                    Ok(to_z.apply(&to_w.apply(seed)))
                })
                .collect();
            let cols = cols?;
            let mat = Matrix::from_fn(f.clone(), self.dim_at(z), r, |row, col| {
                cols[col][row].clone()
            });
            if mat.rank() != r {
                return Err(NetError::DecompositionFailed(format!(
                    "adapted vectors at {} are dependent",
                    z
                )));
            }
            basis.insert(z.clone(), mat);
        }

        // Every window arrow must be diagonal in the adapted basis.
        let mut adapted_arrows = BTreeMap::new();
        for z in &self.verts {
            for a in 0..=self.n {
                let tgt = z.arrow_target(a);
                if !self.contains(&tgt) {
                    continue;
                }
                let arrow = self.arrow(z, a).unwrap();
                let rhs = arrow.compose(&basis[z]).expect("shapes");
                let x = basis[&tgt]
                    .solve(&rhs)
                    .ok_or_else(|| NetError::DecompositionFailed(format!("basis at {tgt} singular")))?;
                let mut diag = Vec::with_capacity(r);
                for i in 0..r {
                    for j in 0..r {
                        if i != j && !f.is_zero(x.at(i, j)) {
                            return Err(NetError::DecompositionFailed(format!(
                                "arrow ({z}, type {a}) is not diagonal in the adapted basis"
                            )));
                        }
                    }
                    diag.push(x.at(i, i).clone());
                }
                adapted_arrows.insert((z.clone(), a), diag);
            }
        }

        // The simple subnets themselves, one per adapted basis column.
        let subnets: Vec<Subnet<K>> = (0..r)
            .map(|j| {
                let spaces = self
                    .verts
                    .iter()
                    .map(|z| {
                        let col: Vec<K::E> =
                            (0..self.dim_at(z)).map(|row| basis[z].at(row, j).clone()).collect();
                        (
                            z.clone(),
                            Subspace::from_vectors(f.clone(), self.dim_at(z), vec![col]),
                        )
                    })
                    .collect();
                Subnet { spaces }
            })
            .collect();

        Ok(Decomposition {
            polygon: ordered,
            generator_position: summands.iter().map(|(q, _)| *q).collect(),
            multiplicities: counts,
            basis,
            adapted_arrows,
            subnets,
        })
    }
}

/// A subrepresentation: one subspace per window vertex, closed under
/// the arrow maps of the parent.
#[derive(Debug, Clone)]
pub struct Subnet<K: Field> {
    pub spaces: BTreeMap<Vertex, Subspace<K>>,
}

impl<K: Field> Subnet<K> {
    /// Check the subnet invariant against its parent.
    pub fn validate(&self, parent: &WindowNet<K>) -> bool {
        self.spaces.iter().all(|(v, space)| {
            (0..=parent.n()).all(|a| {
                let tgt = v.arrow_target(a);
                match (parent.arrow(v, a), self.spaces.get(&tgt)) {
                    (Some(m), Some(tspace)) => space.map_through(m).is_subspace_of(tspace),
                    _ => true,
                }
            })
        })
    }

    pub fn dim_at(&self, v: &Vertex) -> usize {
        self.spaces[v].dim()
    }
}

/// Result of decomposing a polygon-generated exact pure net.
#[derive(Debug, Clone)]
pub struct Decomposition<K: Field> {
    /// The oriented polygon the net is generated by.
    pub polygon: Vec<Vertex>,
    /// For each summand, the polygon position of its generator.
    pub generator_position: Vec<usize>,
    /// Number of summands generated at each polygon position.
    pub multiplicities: Vec<usize>,
    /// Adapted basis at each window vertex, columns in summand order.
    pub basis: BTreeMap<Vertex, Matrix<K>>,
    /// Diagonal entries of every window arrow in the adapted basis.
    pub adapted_arrows: BTreeMap<(Vertex, ArrowType), Vec<K::E>>,
    /// The simple subnets, one per summand.
    pub subnets: Vec<Subnet<K>>,
}

/// Finite presentation of a pure net generated by a hull-closed set:
/// dimensions on H and one cross-map representative per ordered pair.
#[derive(Debug, Clone)]
pub struct NetPresentation<K: Field> {
    pub field: K,
    pub n: usize,
    pub hull: Vec<Vertex>,
    pub dims: Vec<usize>,
    pub cross: BTreeMap<(usize, usize), Matrix<K>>,
}

impl<K: Field> NetPresentation<K> {
    pub fn new(
        field: K,
        n: usize,
        hull_vertices: Vec<Vertex>,
        dims: Vec<usize>,
        cross: BTreeMap<(usize, usize), Matrix<K>>,
    ) -> Result<Self, NetError> {
        let mut sorted = hull_vertices.clone();
        sorted.sort();
        let hset: BTreeSet<Vertex> = sorted.iter().cloned().collect();
        if hull(&hset).len() != hset.len() {
            return Err(ZquiverError::HullNotClosed.into());
        }
        let p = NetPresentation {
            field,
            n,
            hull: hull_vertices,
            dims,
            cross,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn hull_set(&self) -> BTreeSet<Vertex> {
        self.hull.iter().cloned().collect()
    }

    pub fn cross_map(&self, from: usize, to: usize) -> Matrix<K> {
        if from == to {
            return Matrix::identity(self.field.clone(), self.dims[from]);
        }
        self.cross
            .get(&(from, to))
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.field.clone(), self.dims[to], self.dims[from]))
    }

    /// Cross maps must compose compatibly: when an admissible path from
    /// z to v through u exists, cross[u][v] · cross[z][u] is a scalar
    /// multiple of cross[z][v].
    fn validate(&self) -> Result<(), NetError> {
        let k = self.hull.len();
        for ((f, t), m) in &self.cross {
            if m.rows() != self.dims[*t] || m.cols() != self.dims[*f] {
                return Err(NetError::BadPresentation(format!(
                    "cross map {}->{} has wrong shape",
                    self.hull[*f], self.hull[*t]
                )));
            }
        }
        for z in 0..k {
            for u in 0..k {
                for v in 0..k {
                    if z == u || u == v || z == v {
                        continue;
                    }
                    let leg1 = argmin(&raw_diff(&self.hull[u], &self.hull[z]));
                    let leg2 = argmin(&raw_diff(&self.hull[v], &self.hull[u]));
                    if leg1.is_disjoint(&leg2) {
                        continue;
                    }
                    let comp = self
                        .cross_map(u, v)
                        .compose(&self.cross_map(z, u))
                        .expect("validated shapes");
                    if comp.scalar_multiple_of(&self.cross_map(z, v)).is_none() {
                        return Err(NetError::BadPresentation(format!(
                            "composite {}->{}->{} is not proportional to the direct map",
                            self.hull[z], self.hull[u], self.hull[v]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Materialize the presented net on a window of the given radius,
    /// by the shadow-net arrow rule: identity within a shadow region
    /// along admissible flow, cross maps across regions, zero otherwise.
    pub fn expand(&self, radius: usize) -> Result<WindowNet<K>, NetError> {
        let hset = self.hull_set();
        let win = window(&hset, radius);
        let pos: BTreeMap<&Vertex, usize> =
            self.hull.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut shadows: BTreeMap<Vertex, usize> = BTreeMap::new();
        for v in win.members() {
            let w = shadow_unchecked(v, &hset)?;
            shadows.insert(v.clone(), pos[&w]);
        }
        let mut dims = BTreeMap::new();
        for v in win.members() {
            dims.insert(v.clone(), self.dims[shadows[v]]);
        }
        let mut arrows = BTreeMap::new();
        for v in win.members() {
            let w1 = shadows[v];
            for a in 0..=self.n {
                let tgt = v.arrow_target(a);
                if !win.contains(&tgt) {
                    continue;
                }
                let w2 = shadows[&tgt];
                let mut counts = v.diff_from(&self.hull[w1]);
                counts[a] += 1;
                let admissible_through = counts.iter().any(|&c| c == 0);
                let m = if admissible_through {
                    self.cross_map(w1, w2)
                } else {
                    Matrix::zero(self.field.clone(), self.dims[w2], self.dims[w1])
                };
                arrows.insert((v.clone(), a), m);
            }
        }
        WindowNet::new(self.field.clone(), self.n, win, dims, arrows)
    }
}

fn raw_diff(a: &Vertex, b: &Vertex) -> Vec<i64> {
    a.coords().iter().zip(b.coords()).map(|(x, y)| x - y).collect()
}

/// Canonical simple path from `v` using each type of `types` once, in
/// ascending order.
fn simple_path(v: &Vertex, types: &BTreeSet<ArrowType>) -> Path {
    Path::new(v.clone(), types.iter().copied().collect())
}

fn nonempty_subsets(n1: usize) -> Vec<BTreeSet<ArrowType>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n1) {
        out.push((0..n1).filter(|i| mask & (1 << i) != 0).collect());
    }
    out
}

/// Standard-basis vectors extending an echelon subspace to the full
/// space: the unit vectors at the non-pivot coordinates.
fn echelon_complement<K: Field>(
    field: &K,
    space: &Subspace<K>,
    ambient: usize,
) -> Vec<Vec<K::E>> {
    let pivot_rows: BTreeSet<usize> = space
        .basis_vectors()
        .iter()
        .map(|v| {
            v.iter()
                .position(|e| !field.is_zero(e))
                .expect("echelon basis vectors are nonzero")
        })
        .collect();
    (0..ambient)
        .filter(|row| !pivot_rows.contains(row))
        .map(|row| {
            let mut v = vec![field.zero(); ambient];
            v[row] = field.one();
            v
        })
        .collect()
}
