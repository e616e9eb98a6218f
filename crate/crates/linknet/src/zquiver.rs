//! Pure combinatorics of ℤⁿ-quivers: vertices, arrows, paths, polygons,
//! hulls, shadows, bridges and finite vertex windows. No linear algebra.
//!
//! Vertices of the quiver are modeled by ℤ^{n+1}/ℤ·(1,…,1); the canonical
//! representative of a class is the tuple whose minimum entry is 0. There
//! are n+1 arrow types and exactly one arrow of each type leaving each
//! vertex: the type-a arrow moves a vertex by the a-th unit tuple.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

/// Index of an arrow type, in `0..=n`.
pub type ArrowType = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZquiverError {
    #[error("vertex set is not a polygon: {0} and {1} are not neighbors")]
    NotAPolygon(Vertex, Vertex),
    #[error("polygon ordering from {0} is inconsistent")]
    OrderingInconsistent(Vertex),
    #[error("hull is not closed: P(H) != H")]
    HullNotClosed,
    #[error("no unique shadow for {0} (found {1} candidates)")]
    NonUniqueShadow(Vertex, usize),
    #[error("vertex {0} has {1} coordinates, expected {2}")]
    ArityMismatch(Vertex, usize, usize),
}

/// Canonical vertex of a ℤⁿ-quiver: an (n+1)-tuple of nonnegative
/// integers with minimum entry 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(Vec<i64>);

impl Vertex {
    /// Canonical representative: subtract the minimum entry.
    pub fn normalize(raw: &[i64]) -> Vertex {
        assert!(!raw.is_empty(), "vertex needs at least one coordinate");
        let min = *raw.iter().min().unwrap();
        Vertex(raw.iter().map(|&x| x - min).collect())
    }

    pub fn origin(n: usize) -> Vertex {
        Vertex(vec![0; n + 1])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Number of arrow types minus one; coordinates are (n+1)-tuples.
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    /// Target of the unique type-`a` arrow leaving this vertex.
    pub fn arrow_target(&self, a: ArrowType) -> Vertex {
        let mut raw = self.0.clone();
        raw[a] += 1;
        Vertex::normalize(&raw)
    }

    /// Source of the unique type-`a` arrow arriving at this vertex.
    pub fn arrow_source(&self, a: ArrowType) -> Vertex {
        let mut raw = self.0.clone();
        raw[a] -= 1;
        Vertex::normalize(&raw)
    }

    /// Componentwise difference `self - other`, normalized to min 0.
    /// These are the arrow-type counts of any minimal admissible path
    /// from `other` to `self`.
    pub fn diff_from(&self, other: &Vertex) -> Vec<i64> {
        assert_eq!(self.0.len(), other.0.len());
        let raw: Vec<i64> = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a - b)
            .collect();
        let min = *raw.iter().min().unwrap();
        raw.iter().map(|&x| x - min).collect()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Indices of the minimal entries of an (unnormalized) difference.
pub fn argmin(diff: &[i64]) -> BTreeSet<usize> {
    let min = *diff.iter().min().unwrap();
    diff.iter()
        .enumerate()
        .filter(|(_, &x)| x == min)
        .map(|(i, _)| i)
        .collect()
}

/// A path: a source vertex and an ordered list of arrow types. The
/// target is determined because there is one arrow per type per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub source: Vertex,
    pub steps: Vec<ArrowType>,
}

/// Flags classifying a path by its type counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathClass {
    /// Some arrow type does not occur at all.
    pub admissible: bool,
    /// Every arrow type occurs at most once.
    pub simple: bool,
}

impl PathClass {
    /// Simple and non-admissible: every type exactly once.
    pub fn is_minimal_circuit(&self) -> bool {
        self.simple && !self.admissible
    }
}

impl Path {
    pub fn new(source: Vertex, steps: Vec<ArrowType>) -> Path {
        let n = source.n();
        assert!(steps.iter().all(|&a| a <= n), "arrow type out of range");
        Path { source, steps }
    }

    pub fn trivial(source: Vertex) -> Path {
        Path {
            source,
            steps: vec![],
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn target(&self) -> Vertex {
        let mut raw = self.source.coords().to_vec();
        for &a in &self.steps {
            raw[a] += 1;
        }
        Vertex::normalize(&raw)
    }

    /// Vertices visited, source first, target last.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = vec![self.source.clone()];
        let mut cur = self.source.clone();
        for &a in &self.steps {
            cur = cur.arrow_target(a);
            out.push(cur.clone());
        }
        out
    }

    /// Number of arrows of each type.
    pub fn path_type(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.source.n() + 1];
        for &a in &self.steps {
            counts[a] += 1;
        }
        counts
    }

    /// Arrow types that actually occur.
    pub fn essential_type(&self) -> BTreeSet<ArrowType> {
        self.steps.iter().copied().collect()
    }

    pub fn classify(&self) -> PathClass {
        let counts = self.path_type();
        PathClass {
            admissible: counts.iter().any(|&c| c == 0),
            simple: counts.iter().all(|&c| c <= 1),
        }
    }

    /// Concatenation self then `next` (which must start at our target).
    pub fn then(&self, next: &Path) -> Path {
        assert_eq!(self.target(), next.source, "paths do not concatenate");
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&next.steps);
        Path {
            source: self.source.clone(),
            steps,
        }
    }
}

/// The canonical admissible path from `u` to `v`: type counts are the
/// normalized difference, steps in ascending type order.
pub fn admissible_path(u: &Vertex, v: &Vertex) -> Path {
    let d = v.diff_from(u);
    let mut steps = Vec::new();
    for (a, &count) in d.iter().enumerate() {
        for _ in 0..count {
            steps.push(a);
        }
    }
    Path::new(u.clone(), steps)
}

/// If `u` and `v` are neighbors, the essential type I with v = I·u;
/// `None` otherwise. Requires u ≠ v.
pub fn neighbor_type(u: &Vertex, v: &Vertex) -> Option<BTreeSet<ArrowType>> {
    assert_ne!(u, v, "neighbor_type needs distinct vertices");
    let d = v.diff_from(u);
    if d.iter().all(|&x| x == 0 || x == 1) && d.iter().any(|&x| x == 1) {
        Some(
            d.iter()
                .enumerate()
                .filter(|(_, &x)| x == 1)
                .map(|(i, _)| i)
                .collect(),
        )
    } else {
        None
    }
}

/// A nonempty set of pairwise-neighboring vertices (at most n+1 of them).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    vertices: BTreeSet<Vertex>,
}

impl Polygon {
    pub fn new(vertices: BTreeSet<Vertex>) -> Result<Polygon, ZquiverError> {
        assert!(!vertices.is_empty(), "polygon must be nonempty");
        let vs: Vec<&Vertex> = vertices.iter().collect();
        for i in 0..vs.len() {
            for j in (i + 1)..vs.len() {
                if neighbor_type(vs[i], vs[j]).is_none() {
                    return Err(ZquiverError::NotAPolygon(vs[i].clone(), vs[j].clone()));
                }
            }
        }
        Ok(Polygon { vertices })
    }

    pub fn from_slice(vertices: &[Vertex]) -> Result<Polygon, ZquiverError> {
        Polygon::new(vertices.iter().cloned().collect())
    }

    pub fn singleton(v: Vertex) -> Polygon {
        Polygon {
            vertices: std::iter::once(v).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.vertices.contains(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.iter()
    }

    /// The unique ordering v_1,…,v_m with v_1 = start and
    /// v_{i+1} = I_i · v_i for pairwise disjoint nonempty type sets I_i.
    /// Returns the ordered vertices together with the I_i sequence.
    pub fn orient(
        &self,
        start: &Vertex,
    ) -> Result<(Vec<Vertex>, Vec<BTreeSet<ArrowType>>), ZquiverError> {
        assert!(self.contains(start), "start vertex not in polygon");
        let mut ordered: Vec<Vertex> = self.vertices.iter().cloned().collect();
        // Sorting by the size of the difference support from `start`
        // recovers the orientation: partial unions of the I_i nest.
        ordered.sort_by_key(|v| {
            if v == start {
                0
            } else {
                neighbor_type(start, v).map(|i| i.len()).unwrap_or(usize::MAX)
            }
        });
        let mut types = Vec::new();
        let mut covered: BTreeSet<ArrowType> = BTreeSet::new();
        for i in 0..ordered.len() - 1 {
            let step = neighbor_type(&ordered[i], &ordered[i + 1])
                .ok_or_else(|| ZquiverError::NotAPolygon(ordered[i].clone(), ordered[i + 1].clone()))?;
            if !covered.is_disjoint(&step) {
                return Err(ZquiverError::OrderingInconsistent(start.clone()));
            }
            covered.extend(step.iter().copied());
            // The partial union must be exactly the difference support
            // from the start, otherwise the ordering does not nest.
            if i + 2 <= ordered.len() {
                let expect = neighbor_type(start, &ordered[i + 1])
                    .ok_or_else(|| ZquiverError::NotAPolygon(start.clone(), ordered[i + 1].clone()))?;
                if expect != covered {
                    return Err(ZquiverError::OrderingInconsistent(start.clone()));
                }
            }
            types.push(step);
        }
        Ok((ordered, types))
    }
}

/// Does the (cyclic) sequence step through pairwise-disjoint simple
/// moves? Repeated consecutive vertices are allowed (empty steps), per
/// the relaxed notion used for shadows of polygons.
pub fn is_oriented_polygon_sequence(seq: &[Vertex]) -> bool {
    if seq.is_empty() {
        return false;
    }
    let mut covered: BTreeSet<ArrowType> = BTreeSet::new();
    for i in 0..seq.len() - 1 {
        let (a, b) = (&seq[i], &seq[i + 1]);
        if a == b {
            continue;
        }
        match neighbor_type(a, b) {
            None => return false,
            Some(step) => {
                if !covered.is_disjoint(&step) {
                    return false;
                }
                covered.extend(step);
            }
        }
    }
    // Distinct vertices must be pairwise neighbors.
    let distinct: BTreeSet<&Vertex> = seq.iter().collect();
    let vs: Vec<&&Vertex> = distinct.iter().collect();
    for i in 0..vs.len() {
        for j in (i + 1)..vs.len() {
            if neighbor_type(vs[i], vs[j]).is_none() {
                return false;
            }
        }
    }
    true
}

/// Hull P(H): all vertices v such that for every arrow type some member
/// of H reaches v by a path avoiding that type. Candidates are scanned
/// in the coordinate bounding box of the normalized members: if v is
/// normalized and z in H witnesses type i, then taking a coordinate j
/// with v_j = 0 gives (v-z)_i <= -z_j <= 0, so v_i <= z_i.
pub fn hull(h: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
    assert!(!h.is_empty(), "hull of the empty set");
    let n1 = h.iter().next().unwrap().coords().len();
    let mut upper = vec![0i64; n1];
    for z in h {
        for (i, &c) in z.coords().iter().enumerate() {
            upper[i] = upper[i].max(c);
        }
    }
    let mut out = BTreeSet::new();
    let mut cur = vec![0i64; n1];
    scan_box(&upper, 0, &mut cur, &mut |coords| {
        if coords.iter().min() != Some(&0) {
            return;
        }
        let v = Vertex(coords.to_vec());
        if in_hull(&v, h) {
            out.insert(v);
        }
    });
    out
}

fn scan_box(upper: &[i64], pos: usize, cur: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if pos == upper.len() {
        f(cur);
        return;
    }
    for x in 0..=upper[pos] {
        cur[pos] = x;
        scan_box(upper, pos + 1, cur, f);
    }
}

/// Membership test straight from the definition.
pub fn in_hull(v: &Vertex, h: &BTreeSet<Vertex>) -> bool {
    let n1 = v.coords().len();
    (0..n1).all(|arrow_type| {
        h.iter().any(|z| {
            let diff: Vec<i64> = v
                .coords()
                .iter()
                .zip(z.coords())
                .map(|(a, b)| a - b)
                .collect();
            argmin(&diff).contains(&arrow_type)
        })
    })
}

/// The shadow of `v` in a hull-closed set `H`: the unique w in H such
/// that every member of H reaches v admissibly through w.
pub fn shadow(v: &Vertex, h: &BTreeSet<Vertex>) -> Result<Vertex, ZquiverError> {
    if hull(h) != *h {
        return Err(ZquiverError::HullNotClosed);
    }
    shadow_unchecked(v, h)
}

/// Shadow lookup without re-verifying P(H) = H; for callers that have
/// already checked closure once.
pub fn shadow_unchecked(v: &Vertex, h: &BTreeSet<Vertex>) -> Result<Vertex, ZquiverError> {
    let candidates: Vec<&Vertex> = h.iter().filter(|w| is_shadow_candidate(v, w, h)).collect();
    match candidates.len() {
        1 => Ok(candidates[0].clone()),
        k => Err(ZquiverError::NonUniqueShadow(v.clone(), k)),
    }
}

fn is_shadow_candidate(v: &Vertex, w: &Vertex, h: &BTreeSet<Vertex>) -> bool {
    // For each z in H the concatenation z -> w -> v must be admissible:
    // the minimal type counts of the two legs must share a zero.
    let leg2 = argmin(
        &v.coords()
            .iter()
            .zip(w.coords())
            .map(|(a, b)| a - b)
            .collect::<Vec<_>>(),
    );
    h.iter().all(|z| {
        let leg1 = argmin(
            &w.coords()
                .iter()
                .zip(z.coords())
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>(),
        );
        !leg1.is_disjoint(&leg2)
    })
}

/// Partition of a window by shadows in H. Requires P(H) = H and H ⊆ W.
pub fn shadow_regions(
    h: &BTreeSet<Vertex>,
    window: &VertexWindow,
) -> Result<BTreeMap<Vertex, BTreeSet<Vertex>>, ZquiverError> {
    if hull(h) != *h {
        return Err(ZquiverError::HullNotClosed);
    }
    let mut regions: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    for w in h {
        regions.insert(w.clone(), BTreeSet::new());
    }
    for v in window.members() {
        let w = shadow_unchecked(v, h)?;
        regions.get_mut(&w).expect("shadow lies in H").insert(v.clone());
    }
    Ok(regions)
}

/// All window vertices admitting simple admissible paths to both v1 and
/// v2 with disjoint essential types. Trivial paths are allowed, so two
/// neighbors are bridges of themselves.
pub fn bridges(v1: &Vertex, v2: &Vertex, window: &VertexWindow) -> BTreeSet<Vertex> {
    assert_ne!(v1, v2, "bridges of a vertex with itself");
    let mut out = BTreeSet::new();
    for v in window.members() {
        let d1 = v1.diff_from(v);
        let d2 = v2.diff_from(v);
        let simple = |d: &[i64]| d.iter().all(|&x| x == 0 || x == 1);
        if !simple(&d1) || !simple(&d2) {
            continue;
        }
        let s1: BTreeSet<usize> = d1
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == 1)
            .map(|(i, _)| i)
            .collect();
        let s2: BTreeSet<usize> = d2
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == 1)
            .map(|(i, _)| i)
            .collect();
        if s1.is_disjoint(&s2) {
            out.insert(v.clone());
        }
    }
    out
}

/// A finite set of vertices closed enough for bounded verification,
/// remembering how it was built. Vertices near the boundary exist to
/// support path composites for the inner ones: a window of radius R
/// verifies generation statements on its core, the sub-ball of radius
/// R - n, because admissible paths between core vertices can bulge up
/// to n steps beyond a mixed-step geodesic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexWindow {
    members: BTreeSet<Vertex>,
    dist: BTreeMap<Vertex, usize>,
    seed: BTreeSet<Vertex>,
    radius: usize,
}

impl VertexWindow {
    pub fn members(&self) -> &BTreeSet<Vertex> {
        &self.members
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.members.contains(v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn seed(&self) -> &BTreeSet<Vertex> {
        &self.seed
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vertex> {
        self.members.iter()
    }

    /// Mixed-step distance from the hull of the seed.
    pub fn dist(&self, v: &Vertex) -> Option<usize> {
        self.dist.get(v).copied()
    }

    /// The verifiable core: vertices whose distance to the hull leaves
    /// n steps of slack before the boundary.
    pub fn core(&self) -> BTreeSet<Vertex> {
        let n = self
            .members
            .iter()
            .next()
            .map(|v| v.coords().len() - 1)
            .unwrap_or(0);
        let depth = self.radius.saturating_sub(n);
        self.members
            .iter()
            .filter(|v| self.dist[*v] <= depth)
            .cloned()
            .collect()
    }

    /// A vertex all of whose in- and out-neighbors are in the window.
    pub fn is_interior(&self, v: &Vertex) -> bool {
        let n1 = v.coords().len();
        (0..n1).all(|a| self.contains(&v.arrow_target(a)) && self.contains(&v.arrow_source(a)))
    }
}

/// Ball of the given radius around the hull of the seed: all vertices
/// reachable from P(seed) by at most `radius` forward or backward arrow
/// steps, in any mixture. Radius 0 gives P(seed) itself.
pub fn window(seed: &BTreeSet<Vertex>, radius: usize) -> VertexWindow {
    assert!(!seed.is_empty(), "window needs a nonempty seed");
    let core = hull(seed);
    let n1 = seed.iter().next().unwrap().coords().len();
    let mut members = core.clone();
    let mut dist: BTreeMap<Vertex, usize> = core.iter().map(|v| (v.clone(), 0)).collect();
    let mut frontier: VecDeque<(Vertex, usize)> =
        core.iter().map(|v| (v.clone(), 0)).collect();
    while let Some((v, d)) = frontier.pop_front() {
        if d == radius {
            continue;
        }
        for a in 0..n1 {
            for next in [v.arrow_target(a), v.arrow_source(a)] {
                if members.insert(next.clone()) {
                    dist.insert(next.clone(), d + 1);
                    frontier.push_back((next, d + 1));
                }
            }
        }
    }
    VertexWindow {
        members,
        dist,
        seed: seed.clone(),
        radius,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(coords: &[i64]) -> Vertex {
        Vertex::normalize(coords)
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(v(&[2, 2, 2]), Vertex(vec![0, 0, 0]));
        assert_eq!(v(&[3, 1, 2]), Vertex(vec![2, 0, 1]));
        assert_eq!(v(&[-1, 0, 0]), Vertex(vec![0, 1, 1]));
    }

    #[test]
    fn arrow_target_examples() {
        assert_eq!(v(&[0, 0, 0]).arrow_target(0), v(&[1, 0, 0]));
        assert_eq!(v(&[0, 1, 1]).arrow_target(0), v(&[0, 0, 0]));
        assert_eq!(v(&[2, 0, 1]).arrow_target(2), v(&[2, 0, 2]));
    }

    #[test]
    fn path_class_examples() {
        let p = Path::new(v(&[0, 0, 0]), vec![0, 1]);
        let c = p.classify();
        assert!(c.admissible && c.simple && !c.is_minimal_circuit());
        let p = Path::new(v(&[0, 0, 0]), vec![0, 1, 2]);
        let c = p.classify();
        assert!(c.is_minimal_circuit());
        assert_eq!(p.target(), p.source);
        let p = Path::new(v(&[0, 0, 0]), vec![0, 0, 1, 2]);
        let c = p.classify();
        assert!(!c.admissible && !c.simple);
    }

    #[test]
    fn admissible_path_examples() {
        assert_eq!(admissible_path(&v(&[0, 0, 0]), &v(&[1, 0, 0])).steps, vec![0]);
        assert_eq!(admissible_path(&v(&[1, 0, 0]), &v(&[0, 0, 0])).steps, vec![1, 2]);
        assert!(admissible_path(&v(&[0, 0, 0]), &v(&[0, 0, 0])).is_empty());
        // Targets check out.
        let p = admissible_path(&v(&[1, 0, 0]), &v(&[0, 0, 0]));
        assert_eq!(p.target(), v(&[0, 0, 0]));
    }

    #[test]
    fn neighbor_type_examples() {
        assert_eq!(
            neighbor_type(&v(&[0, 0, 0]), &v(&[1, 1, 0])),
            Some(BTreeSet::from([0, 1]))
        );
        assert_eq!(neighbor_type(&v(&[0, 0, 0]), &v(&[2, 0, 0])), None);
        assert_eq!(
            neighbor_type(&v(&[1, 1, 0]), &v(&[0, 0, 0])),
            Some(BTreeSet::from([2]))
        );
    }

    #[test]
    fn orient_polygon_examples() {
        let delta = Polygon::from_slice(&[v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[1, 1, 0])]).unwrap();
        let (ordered, types) = delta.orient(&v(&[0, 0, 0])).unwrap();
        assert_eq!(ordered, vec![v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[1, 1, 0])]);
        assert_eq!(types, vec![BTreeSet::from([0]), BTreeSet::from([1])]);

        let single = Polygon::singleton(v(&[0, 0, 0]));
        let (ordered, types) = single.orient(&v(&[0, 0, 0])).unwrap();
        assert_eq!(ordered.len(), 1);
        assert!(types.is_empty());

        let seg = Polygon::from_slice(&[v(&[0, 0, 0]), v(&[1, 0, 0])]).unwrap();
        let (ordered, types) = seg.orient(&v(&[1, 0, 0])).unwrap();
        assert_eq!(ordered, vec![v(&[1, 0, 0]), v(&[0, 0, 0])]);
        assert_eq!(types, vec![BTreeSet::from([1, 2])]);

        assert!(Polygon::from_slice(&[v(&[0, 0, 0]), v(&[2, 0, 0])]).is_err());
    }

    #[test]
    fn hull_examples() {
        let single: BTreeSet<_> = [v(&[3, 0, 1])].into();
        assert_eq!(hull(&single), single);

        let h: BTreeSet<_> = [v(&[0, 0]), v(&[2, 0])].into();
        let expect: BTreeSet<_> = [v(&[0, 0]), v(&[1, 0]), v(&[2, 0])].into();
        assert_eq!(hull(&h), expect);

        let h: BTreeSet<_> = [v(&[0, 0, 0]), v(&[1, 1, 0])].into();
        let p = hull(&h);
        assert!(p.is_superset(&h));
        assert_eq!(hull(&p), p);
    }

    #[test]
    fn shadow_examples() {
        let h: BTreeSet<_> = [v(&[0, 0]), v(&[1, 0])].into();
        assert_eq!(shadow(&v(&[0, 0]), &h).unwrap(), v(&[0, 0]));
        assert_eq!(shadow(&v(&[3, 0]), &h).unwrap(), v(&[1, 0]));
        assert_eq!(shadow(&v(&[0, 2]), &h).unwrap(), v(&[0, 0]));

        // Unclosed hull is reported as such.
        let open: BTreeSet<_> = [v(&[0, 0]), v(&[2, 0])].into();
        assert_eq!(shadow(&v(&[5, 0]), &open), Err(ZquiverError::HullNotClosed));
    }

    #[test]
    fn shadow_regions_partition_triangle() {
        let h: BTreeSet<_> = [v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[1, 1, 0])].into();
        assert_eq!(hull(&h), h);
        let w = window(&h, 3);
        let regions = shadow_regions(&h, &w).unwrap();
        assert_eq!(regions.len(), 3);
        let mut total = 0;
        for (g, region) in &regions {
            assert!(region.contains(g));
            let inter: Vec<_> = region.intersection(&h).collect();
            assert_eq!(inter, vec![g]);
            total += region.len();
        }
        assert_eq!(total, w.len());
    }

    #[test]
    fn bridges_examples() {
        let seed: BTreeSet<_> = [v(&[0, 0, 0])].into();
        let w = window(&seed, 3);
        // Neighbors are their own bridges.
        let b = bridges(&v(&[0, 0, 0]), &v(&[1, 0, 0]), &w);
        assert_eq!(b, BTreeSet::from([v(&[0, 0, 0]), v(&[1, 0, 0])]));
        // Weak neighbors that are not neighbors have outside bridges.
        let b = bridges(&v(&[1, 0, 0]), &v(&[0, 1, 0]), &w);
        assert!(b.contains(&v(&[0, 0, 0])));
    }

    #[test]
    fn window_examples() {
        let seed: BTreeSet<_> = [v(&[0, 0])].into();
        assert_eq!(window(&seed, 0).members(), &seed);
        let w1 = window(&seed, 1);
        let expect: BTreeSet<_> = [v(&[0, 0]), v(&[1, 0]), v(&[0, 1])].into();
        assert_eq!(w1.members(), &expect);

        let seed: BTreeSet<_> = [v(&[0, 0, 0])].into();
        assert_eq!(window(&seed, 2).len(), 19);
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent_and_translation_invariant(
            raw in prop::collection::vec(-5i64..5, 2..5),
            shift in -5i64..5,
        ) {
            let a = Vertex::normalize(&raw);
            let shifted: Vec<i64> = raw.iter().map(|x| x + shift).collect();
            prop_assert_eq!(&a, &Vertex::normalize(&shifted));
            prop_assert_eq!(a.coords().iter().min(), Some(&0));
        }

        #[test]
        fn circuits_close_up(raw in prop::collection::vec(0i64..4, 2..5)) {
            let start = Vertex::normalize(&raw);
            let n1 = start.coords().len();
            let mut cur = start.clone();
            for a in 0..n1 {
                let next = cur.arrow_target(a);
                prop_assert_ne!(&next, &cur);
                cur = next;
            }
            prop_assert_eq!(cur, start);
        }

        #[test]
        fn hull_is_idempotent_and_monotone(
            pick in prop::collection::vec(prop::collection::vec(0i64..3, 3), 1..4),
        ) {
            let h: BTreeSet<Vertex> = pick.iter().map(|c| Vertex::normalize(c)).collect();
            let p = hull(&h);
            prop_assert!(p.is_superset(&h));
            prop_assert_eq!(&hull(&p), &p);
            // Monotone: drop one element.
            if h.len() > 1 {
                let smaller: BTreeSet<Vertex> = h.iter().skip(1).cloned().collect();
                prop_assert!(hull(&smaller).is_subset(&p));
            }
        }
    }
}
