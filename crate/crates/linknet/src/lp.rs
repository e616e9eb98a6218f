//! The linked projective space LP(V) through its finite model: minor
//! equations in a product of projective spaces, transition maps between
//! generating sets, exhaustive point enumeration over prime fields,
//! stratification by minimal generating polygon, local
//! complete-intersection charts, Jacobian ranks and multigraded Hilbert
//! tables.

use crate::linalg::{Field, Matrix, PrimeField};
use crate::net::{NetError, WindowNet};
use crate::zquiver::{hull, shadow_unchecked, ArrowType, Polygon, Vertex};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("enumeration size {size} exceeds the budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("class map from the shadow of {0} kills the point (input is not 1-generated)")]
    ZeroImage(Vertex),
    #[error("point does not satisfy the system")]
    PointNotOnVariety,
    #[error("stratum key is not a polygon: {0}")]
    StratumNotPolygon(String),
    #[error("net is not generated by the given polygon: {0}")]
    NotPolygonGenerated(String),
    #[error(transparent)]
    Net(#[from] NetError),
}

/// One multihomogeneous quadric of bidegree (1,1) in the blocks `v` and
/// `w`: sum of coeffs[g][d] * s_v[g] * s_w[d].
#[derive(Debug, Clone, PartialEq)]
pub struct MinorEquation<K: Field> {
    pub v: usize,
    pub w: usize,
    pub coeffs: Matrix<K>,
}

/// The 2x2-minor equations cutting LP_H(V) inside the product of the
/// P(V_v) for v in H.
#[derive(Debug, Clone)]
pub struct MinorSystem<K: Field> {
    pub field: K,
    pub hull: Vec<Vertex>,
    pub dims: Vec<usize>,
    pub equations: Vec<MinorEquation<K>>,
}

/// A point of the ambient product of projective spaces: one coordinate
/// vector per block, scaled so the first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct LPPoint<K: Field> {
    pub coords: Vec<Vec<K::E>>,
}

impl<K: Field> LPPoint<K> {
    pub fn new(field: &K, coords: Vec<Vec<K::E>>) -> LPPoint<K> {
        let mut p = LPPoint { coords };
        p.canonicalize(field);
        p
    }

    /// Scale every block so its first nonzero coordinate is 1.
    pub fn canonicalize(&mut self, field: &K) {
        for block in &mut self.coords {
            let lead = block.iter().find(|e| !field.is_zero(e)).cloned();
            if let Some(lead) = lead {
                let inv = field.inv(&lead).expect("nonzero leading coordinate");
                for e in block.iter_mut() {
                    *e = field.mul(e, &inv);
                }
            }
        }
    }
}

impl<K: Field> MinorEquation<K> {
    pub fn eval(&self, field: &K, p: &LPPoint<K>) -> K::E {
        let sv = &p.coords[self.v];
        let sw = &p.coords[self.w];
        let mut acc = field.zero();
        for g in 0..self.coeffs.rows() {
            if field.is_zero(&sv[g]) {
                continue;
            }
            for d in 0..self.coeffs.cols() {
                let t = field.mul(&field.mul(self.coeffs.at(g, d), &sv[g]), &sw[d]);
                acc = field.add(&acc, &t);
            }
        }
        acc
    }

    /// Canonical key for deduplication: blocks ordered, coefficients
    /// scaled so the first nonzero one is 1.
    fn canonical_key(&self, field: &K) -> (usize, usize, Vec<String>) {
        let (a, b, m) = if self.v <= self.w {
            (self.v, self.w, self.coeffs.clone())
        } else {
            (self.w, self.v, self.coeffs.transpose())
        };
        let lead = m.entries().iter().find(|e| !field.is_zero(e)).cloned();
        let scaled = match lead {
            Some(l) => m.scale(&field.inv(&l).expect("nonzero")),
            None => m,
        };
        let strings = scaled.entries().iter().map(|e| field.format(e)).collect();
        (a, b, strings)
    }
}

impl<K: Field> MinorSystem<K> {
    pub fn satisfied(&self, p: &LPPoint<K>) -> bool {
        self.equations
            .iter()
            .all(|eq| self.field.is_zero(&eq.eval(&self.field, p)))
    }

    pub fn block_index(&self, v: &Vertex) -> Option<usize> {
        self.hull.iter().position(|u| u == v)
    }
}

/// Build the minor system of LP_H(V): for every ordered pair (v,w) in H
/// with nonzero class map A, the 2x2 minors of [A s_v | s_w]. Both
/// orientations are generated and duplicates (up to scalar) removed.
pub fn lp_equations<K: Field>(
    net: &WindowNet<K>,
    h: &[Vertex],
) -> Result<MinorSystem<K>, LpError> {
    let field = net.field().clone();
    let dims: Vec<usize> = h.iter().map(|v| net.dim_at(v)).collect();
    let mut equations = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, u) in h.iter().enumerate() {
        for (j, w) in h.iter().enumerate() {
            if i == j {
                continue;
            }
            let a = net.class_map(u, w)?;
            if a.is_zero() {
                continue;
            }
            // Minor over rows (al, be) of the 2-column matrix [A s | t]:
            // sum_g A[al][g] s[g] * t[be] - sum_g A[be][g] s[g] * t[al].
            for al in 0..dims[j] {
                for be in (al + 1)..dims[j] {
                    let mut coeffs = Matrix::zero(field.clone(), dims[i], dims[j]);
                    for g in 0..dims[i] {
                        let c1 = field.add(coeffs.at(g, be), a.at(al, g));
                        coeffs.set(g, be, c1);
                        let c2 = field.sub(coeffs.at(g, al), a.at(be, g));
                        coeffs.set(g, al, c2);
                    }
                    if coeffs.is_zero() {
                        continue;
                    }
                    let eq = MinorEquation { v: i, w: j, coeffs };
                    if seen.insert(eq.canonical_key(&field)) {
                        equations.push(eq);
                    }
                }
            }
        }
    }
    Ok(MinorSystem {
        field,
        hull: h.to_vec(),
        dims,
        equations,
    })
}

/// The transition map between generating sets: the H2 coordinate at v
/// is the image of the H1 coordinate at the shadow of v in H1.
pub fn psi<K: Field>(
    net: &WindowNet<K>,
    h1: &[Vertex],
    h2: &[Vertex],
    p: &LPPoint<K>,
) -> Result<LPPoint<K>, LpError> {
    let field = net.field().clone();
    let h1set: BTreeSet<Vertex> = h1.iter().cloned().collect();
    if hull(&h1set) != h1set {
        return Err(NetError::from(crate::zquiver::ZquiverError::HullNotClosed).into());
    }
    let mut coords = Vec::with_capacity(h2.len());
    for v in h2 {
        let w = shadow_unchecked(v, &h1set).map_err(NetError::from)?;
        let pos = h1.iter().position(|u| *u == w).expect("shadow lies in H1");
        let m = net.class_map(&w, v)?;
        let t = m.apply(&p.coords[pos]);
        if t.iter().all(|e| field.is_zero(e)) {
            return Err(LpError::ZeroImage(v.clone()));
        }
        coords.push(t);
    }
    Ok(LPPoint::new(&field, coords))
}

/// Exhaustively enumerate the F_q points of LP_H(V): scan the product
/// of projective spaces in canonical order and keep the points
/// satisfying the minor system.
pub fn enumerate_points(
    net: &WindowNet<PrimeField>,
    h: &[Vertex],
    budget: u128,
) -> Result<Vec<LPPoint<PrimeField>>, LpError> {
    let field = *net.field();
    let q = field.modulus() as u128;
    let system = lp_equations(net, h)?;
    let mut size: u128 = 1;
    for d in &system.dims {
        let mut block: u128 = 0;
        for k in 0..*d {
            block += q.pow(k as u32);
        }
        size = size.saturating_mul(block);
    }
    if size > budget {
        return Err(LpError::BudgetExceeded { size, budget });
    }
    let blocks: Vec<Vec<Vec<u64>>> = system
        .dims
        .iter()
        .map(|&d| projective_reps(&field, d))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; blocks.len()];
    loop {
        let coords: Vec<Vec<u64>> = choice
            .iter()
            .enumerate()
            .map(|(b, &i)| blocks[b][i].clone())
            .collect();
        let p = LPPoint { coords };
        if system.satisfied(&p) {
            out.push(p);
        }
        // Odometer increment over the product space.
        let mut pos = blocks.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < blocks[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Canonical representatives of P^{d-1}(F_q): first nonzero coordinate
/// equal to 1, ordered by position of the leading 1 then
/// lexicographically.
pub fn projective_reps(field: &PrimeField, d: usize) -> Vec<Vec<u64>> {
    let q = field.modulus();
    let mut out = Vec::new();
    for lead in 0..d {
        for tail in tuples(q, d - lead - 1) {
            let mut v = vec![0u64; d];
            v[lead] = 1;
            v[lead + 1..].clone_from_slice(&tail);
            out.push(v);
        }
    }
    out
}

fn tuples(q: u64, len: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * q as usize);
        for prefix in &out {
            for x in 0..q {
                let mut t = prefix.clone();
                t.push(x);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Group the enumerated points by the minimal 1-generating subset of H
/// of the subnet each point corresponds to. Every key must be a
/// polygon and must 1-generate the point's subnet.
pub fn stratify<K: Field>(
    net: &WindowNet<K>,
    h: &[Vertex],
    points: &[LPPoint<K>],
) -> Result<BTreeMap<Vec<Vertex>, Vec<LPPoint<K>>>, LpError> {
    let field = net.field().clone();
    // Cache the class maps among the members of H.
    let mut maps: BTreeMap<(usize, usize), Matrix<K>> = BTreeMap::new();
    for i in 0..h.len() {
        for j in 0..h.len() {
            if i != j {
                maps.insert((i, j), net.class_map(&h[i], &h[j])?);
            }
        }
    }
    let mut strata: BTreeMap<Vec<Vertex>, Vec<LPPoint<K>>> = BTreeMap::new();
    for p in points {
        let mut key = Vec::new();
        for (j, v) in h.iter().enumerate() {
            let hit = (0..h.len()).any(|i| {
                i != j && {
                    let img = maps[&(i, j)].apply(&p.coords[i]);
                    img.iter().any(|e| !field.is_zero(e))
                }
            });
            if !hit {
                key.push(v.clone());
            }
        }
        // The key must 1-generate the subnet within H.
        for (j, _) in h.iter().enumerate() {
            let covered = key.iter().any(|g| {
                let i = h.iter().position(|u| u == g).unwrap();
                i == j || {
                    let img = maps[&(i, j)].apply(&p.coords[i]);
                    img.iter().any(|e| !field.is_zero(e))
                }
            });
            if !covered {
                return Err(LpError::StratumNotPolygon(format!(
                    "key {:?} does not 1-generate the subnet",
                    key
                )));
            }
        }
        if Polygon::from_slice(&key).is_err() {
            return Err(LpError::StratumNotPolygon(format!("{:?}", key)));
        }
        strata.entry(key).or_default().push(p.clone());
    }
    Ok(strata)
}

/// |LP(V)*_v(F_q)|: the number of lines [s] in P(V_v) whose class-map
/// images at every member of H are nonzero.
pub fn stratum_param_count(
    net: &WindowNet<PrimeField>,
    v: &Vertex,
    h: &[Vertex],
) -> Result<usize, LpError> {
    let field = *net.field();
    let d = net.dim_at(v);
    let mut maps = Vec::new();
    for u in h {
        if u != v {
            maps.push(net.class_map(v, u)?);
        }
    }
    let mut count = 0;
    for s in projective_reps(&field, d) {
        let ok = maps.iter().all(|m| {
            let img = m.apply(&s);
            img.iter().any(|e| !field.is_zero(e))
        });
        if ok {
            count += 1;
        }
    }
    Ok(count)
}

/// Jacobian rank of the minor system at a point of the variety: the
/// rank of the matrix of partial derivatives with respect to all
/// homogeneous coordinates.
pub fn jacobian_rank<K: Field>(
    system: &MinorSystem<K>,
    p: &LPPoint<K>,
) -> Result<usize, LpError> {
    if !system.satisfied(p) {
        return Err(LpError::PointNotOnVariety);
    }
    let f = &system.field;
    let total: usize = system.dims.iter().sum();
    let offsets: Vec<usize> = system
        .dims
        .iter()
        .scan(0usize, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let mut jac = Matrix::zero(f.clone(), system.equations.len(), total);
    for (row, eq) in system.equations.iter().enumerate() {
        let sv = &p.coords[eq.v];
        let sw = &p.coords[eq.w];
        for g in 0..eq.coeffs.rows() {
            let mut dv = f.zero();
            for d in 0..eq.coeffs.cols() {
                dv = f.add(&dv, &f.mul(eq.coeffs.at(g, d), &sw[d]));
            }
            jac.set(row, offsets[eq.v] + g, dv);
        }
        for d in 0..eq.coeffs.cols() {
            let mut dw = f.zero();
            for g in 0..eq.coeffs.rows() {
                dw = f.add(&dw, &f.mul(eq.coeffs.at(g, d), &sv[g]));
            }
            jac.set(row, offsets[eq.w] + d, dw);
        }
    }
    Ok(jac.rank())
}

/// The Jacobian rank certifying a smooth point of LP(V) for a net of
/// pure dimension `net_dim`: the tangent space of the product drops by
/// one scaling per block, and a smooth point of the (net_dim - 1)-
/// dimensional variety needs exactly this corank.
pub fn smooth_rank_threshold<K: Field>(system: &MinorSystem<K>, net_dim: usize) -> usize {
    let total: usize = system.dims.iter().sum();
    total - system.dims.len() - (net_dim - 1)
}

// ---------------------------------------------------------------------------
// Local complete-intersection charts
// ---------------------------------------------------------------------------

/// Sparse polynomial in the chart coordinates; a variable is addressed
/// by (position, flat coordinate index).
#[derive(Debug, Clone)]
pub struct SparsePoly<K: Field> {
    pub terms: Vec<(K::E, Vec<(usize, usize)>)>,
}

impl<K: Field> SparsePoly<K> {
    pub fn eval(&self, field: &K, coords: &[Vec<K::E>]) -> K::E {
        let mut acc = field.zero();
        for (c, vars) in &self.terms {
            let mut t = c.clone();
            for &(pos, idx) in vars {
                t = field.mul(&t, &coords[pos][idx]);
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Partial derivative with respect to the variable (pos, idx),
    /// evaluated at the given coordinates.
    pub fn partial_eval(
        &self,
        field: &K,
        coords: &[Vec<K::E>],
        var: (usize, usize),
    ) -> K::E {
        let mut acc = field.zero();
        for (c, vars) in &self.terms {
            for (k, &v) in vars.iter().enumerate() {
                if v != var {
                    continue;
                }
                let mut t = c.clone();
                for (j, &u) in vars.iter().enumerate() {
                    if j != k {
                        t = field.mul(&t, &coords[u.0][u.1]);
                    }
                }
                acc = field.add(&acc, &t);
            }
        }
        acc
    }
}

/// One local chart of LP(V) for a polygon-generated net: the open set
/// where one coordinate per position is nonzero, the substitution
/// equations and the single product equation, a total of n·r − n.
#[derive(Debug, Clone)]
pub struct ChartSystem<K: Field> {
    /// For each position i, the (flat) coordinate normalized to 1.
    pub unit_coords: Vec<(usize, usize)>,
    pub equations: Vec<SparsePoly<K>>,
}

impl<K: Field> ChartSystem<K> {
    /// Is the ambient product point inside this chart's open set?
    pub fn contains(&self, field: &K, p: &LPPoint<K>) -> bool {
        self.unit_coords
            .iter()
            .all(|&(pos, idx)| !field.is_zero(&p.coords[pos][idx]))
    }

    /// Normalize a point of the open set so the chart coordinates are 1.
    pub fn normalize(&self, field: &K, p: &LPPoint<K>) -> Vec<Vec<K::E>> {
        self.unit_coords
            .iter()
            .enumerate()
            .map(|(pos, &(p_pos, idx))| {
                debug_assert_eq!(pos, p_pos);
                let inv = field
                    .inv(&p.coords[pos][idx])
                    .expect("chart coordinate is nonzero");
                p.coords[pos].iter().map(|e| field.mul(e, &inv)).collect()
            })
            .collect()
    }

    pub fn satisfied(&self, field: &K, p: &LPPoint<K>) -> bool {
        let coords = self.normalize(field, p);
        self.equations
            .iter()
            .all(|eq| field.is_zero(&eq.eval(field, &coords)))
    }

    /// Rank of the chart Jacobian at a chart point, with respect to the
    /// non-normalized affine coordinates. Full rank n·r − n certifies a
    /// smooth point of a local complete intersection of dimension r−1.
    pub fn jacobian_rank(&self, field: &K, p: &LPPoint<K>) -> Result<usize, LpError> {
        let coords = self.normalize(field, p);
        for eq in &self.equations {
            if !field.is_zero(&eq.eval(field, &coords)) {
                return Err(LpError::PointNotOnVariety);
            }
        }
        let mut vars = Vec::new();
        for (pos, block) in coords.iter().enumerate() {
            for idx in 0..block.len() {
                if self.unit_coords[pos] != (pos, idx) {
                    vars.push((pos, idx));
                }
            }
        }
        let mut jac = Matrix::zero(field.clone(), self.equations.len(), vars.len());
        for (row, eq) in self.equations.iter().enumerate() {
            for (col, &var) in vars.iter().enumerate() {
                jac.set(row, col, eq.partial_eval(field, &coords, var));
            }
        }
        Ok(jac.rank())
    }
}

/// The full chart atlas of a polygon-generated exact pure net, plus the
/// diagonal matrices of the cyclic maps in the adapted basis and the
/// padded-position data.
#[derive(Debug, Clone)]
pub struct ChartAtlas<K: Field> {
    /// The n+1 positions around the padded polygon cycle.
    pub positions: Vec<Vertex>,
    /// Arrow type from position i to position i+1 (cyclically).
    pub step_types: Vec<ArrowType>,
    /// Summands generated at each position (padding has zero).
    pub multiplicities: Vec<usize>,
    /// Diagonal entries of the cyclic maps M_0..M_n in the adapted basis.
    pub cycle_diagonals: Vec<Vec<K::E>>,
    /// The net dimension r.
    pub r: usize,
    pub charts: Vec<ChartSystem<K>>,
}

/// Build the chart atlas: decompose, pad the polygon to an (n+1)-gon
/// with intermediate vertices along canonical admissible paths, rotate
/// so position 1 carries a summand, and emit one chart per leaf of the
/// proof's case tree postponing a block choice at every position.
pub fn charts<K: Field>(net: &WindowNet<K>, delta: &Polygon) -> Result<ChartAtlas<K>, LpError> {
    let f = net.field().clone();
    let n = net.n();
    if !net.is_generated_by(delta.vertices()) {
        return Err(LpError::NotPolygonGenerated(format!(
            "{:?}",
            delta.vertices()
        )));
    }
    let dec = net
        .decompose_polygon_generated(delta)
        .map_err(LpError::Net)?;
    let r = dec.subnets.len();

    // Pad the oriented polygon: walk each side along the canonical
    // ascending-type path; every vertex on the cycle becomes a position.
    // A 1-gon pads to the full minimal circuit at its vertex.
    let m = dec.polygon.len();
    let mut positions: Vec<Vertex> = Vec::new();
    let mut step_types: Vec<ArrowType> = Vec::new();
    let mut mult: Vec<usize> = Vec::new();
    for i in 0..m {
        let from = &dec.polygon[i];
        let to = &dec.polygon[(i + 1) % m];
        let side = if m == 1 {
            crate::zquiver::Path::new(from.clone(), (0..=n).collect())
        } else {
            crate::zquiver::admissible_path(from, to)
        };
        let mut cur = from.clone();
        for (k, &a) in side.steps.iter().enumerate() {
            positions.push(cur.clone());
            mult.push(if k == 0 { dec.multiplicities[i] } else { 0 });
            step_types.push(a);
            cur = cur.arrow_target(a);
        }
    }
    debug_assert_eq!(positions.len(), n + 1);

    // The summand order must follow the positions: remap the adapted
    // basis columns so summands are grouped by padded position.
    // Decomposition already orders summands by polygon position, and
    // padded positions preserve that order, so the grouping is the
    // identity; offsets follow from the multiplicities.
    let offsets: Vec<usize> = mult
        .iter()
        .scan(0usize, |acc, &k| {
            let o = *acc;
            *acc += k;
            Some(o)
        })
        .collect();

    // Rotate so that position 1 carries at least one summand.
    let rot = (0..=n)
        .find(|&k| mult[(k + 1) % (n + 1)] > 0)
        .expect("some position carries a summand");
    positions.rotate_left(rot);
    step_types.rotate_left(rot);
    mult.rotate_left(rot);
    // Summand indices must be rotated consistently: summand j sits in
    // the block of its generator position. Build the permutation taking
    // old flat indices to new flat indices.
    let old_offsets = offsets;
    let mut new_offsets: Vec<usize> = Vec::with_capacity(n + 1);
    {
        let mut acc = 0;
        for &k in &mult {
            new_offsets.push(acc);
            acc += k;
        }
    }
    let mut perm = vec![0usize; r];
    for old_pos in 0..=n {
        let new_pos = (old_pos + (n + 1) - rot) % (n + 1);
        let old_start = old_offsets[old_pos];
        let block = if old_pos < n {
            old_offsets[old_pos + 1] - old_start
        } else {
            r - old_start
        };
        for k in 0..block {
            perm[old_start + k] = new_offsets[new_pos] + k;
        }
    }

    // Diagonals of the cyclic maps in the rotated, permuted basis.
    let mut cycle_diagonals = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let from = &positions[i];
        let a = step_types[i];
        let diag_old = dec
            .adapted_arrows
            .get(&(from.clone(), a))
            .ok_or_else(|| NetError::NotInWindow(from.clone()))?;
        let mut diag = vec![f.zero(); r];
        for (old, e) in diag_old.iter().enumerate() {
            diag[perm[old]] = e.clone();
        }
        cycle_diagonals.push(diag);
    }

    // The zero pattern of the cyclic maps: M_i vanishes exactly on the
    // block of summands generated at position i+1.
    for i in 0..=n {
        let next = (i + 1) % (n + 1);
        for (k, e) in cycle_diagonals[i].iter().enumerate() {
            let in_next_block =
                k >= new_offsets[next] && k < new_offsets[next] + mult[next];
            if f.is_zero(e) != in_next_block {
                return Err(LpError::NotPolygonGenerated(format!(
                    "cyclic map {} does not vanish exactly on the block of position {}",
                    i, next
                )));
            }
        }
    }

    // Chart tree, anchored at every position whose successor block is
    // nonempty: at the anchor the successor block is normalized, the
    // remaining positions are processed backwards with the block choice
    // p_s in {s+1, p_{s+1}} (indices cyclic), pruned to nonempty
    // blocks. Equal unit-coordinate sets across anchors are the same
    // chart and are emitted once.
    let mut charts_out: Vec<ChartSystem<K>> = Vec::new();
    let mut seen_units: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    for anchor in 0..=n {
        if mult[(anchor + 1) % (n + 1)] == 0 {
            continue;
        }
        let mut p_choice = vec![usize::MAX; n + 1];
        p_choice[anchor] = (anchor + 1) % (n + 1);
        build_charts(
            &f,
            n,
            r,
            &mult,
            &new_offsets,
            &cycle_diagonals,
            anchor,
            n,
            &mut p_choice,
            &mut seen_units,
            &mut charts_out,
        );
    }

    Ok(ChartAtlas {
        positions,
        step_types,
        multiplicities: mult,
        cycle_diagonals,
        r,
        charts: charts_out,
    })
}

#[allow(clippy::too_many_arguments)]
fn build_charts<K: Field>(
    f: &K,
    n: usize,
    r: usize,
    mult: &[usize],
    offsets: &[usize],
    diagonals: &[Vec<K::E>],
    anchor: usize,
    level: usize,
    p_choice: &mut Vec<usize>,
    seen_units: &mut BTreeSet<Vec<(usize, usize)>>,
    out: &mut Vec<ChartSystem<K>>,
) {
    let n1 = n + 1;
    if level == 0 {
        let index_ranges: Vec<(usize, usize)> = (0..n1)
            .map(|s| (p_choice[s], mult[p_choice[s]]))
            .collect();
        let mut j_choice = vec![0usize; n1];
        emit_charts(
            f,
            n,
            r,
            offsets,
            diagonals,
            &index_ranges,
            0,
            &mut j_choice,
            seen_units,
            out,
        );
        return;
    }
    // Process position s = anchor + level (cyclically); its options are
    // its successor's block or the block inherited from the successor.
    let s = (anchor + level) % n1;
    let succ = (s + 1) % n1;
    let mut options: Vec<usize> = if level == n {
        vec![succ, (succ + 1) % n1]
    } else {
        vec![succ, p_choice[succ]]
    };
    options.dedup();
    for p in options {
        if mult[p] == 0 {
            continue;
        }
        p_choice[s] = p;
        build_charts(
            f, n, r, mult, offsets, diagonals, anchor, level - 1, p_choice, seen_units, out,
        );
    }
}

#[allow(clippy::too_many_arguments)]
fn emit_charts<K: Field>(
    f: &K,
    n: usize,
    r: usize,
    offsets: &[usize],
    diagonals: &[Vec<K::E>],
    index_ranges: &[(usize, usize)],
    level: usize,
    j_choice: &mut Vec<usize>,
    seen_units: &mut BTreeSet<Vec<(usize, usize)>>,
    out: &mut Vec<ChartSystem<K>>,
) {
    if level > n {
        let chart = make_chart(f, n, r, offsets, diagonals, index_ranges, j_choice);
        if seen_units.insert(chart.unit_coords.clone()) {
            out.push(chart);
        }
        return;
    }
    for j in 0..index_ranges[level].1 {
        j_choice[level] = j;
        emit_charts(
            f,
            n,
            r,
            offsets,
            diagonals,
            index_ranges,
            level + 1,
            j_choice,
            seen_units,
            out,
        );
    }
}

fn make_chart<K: Field>(
    f: &K,
    n: usize,
    r: usize,
    offsets: &[usize],
    diagonals: &[Vec<K::E>],
    index_ranges: &[(usize, usize)],
    j_choice: &[usize],
) -> ChartSystem<K> {
    // Flat coordinate fixed to 1 at each position.
    let unit_coords: Vec<(usize, usize)> = (0..=n)
        .map(|i| (i, offsets[index_ranges[i].0] + j_choice[i]))
        .collect();
    // y_i is the coordinate (i, flat(p_{i+1}, j_{i+1})) with the wrap
    // (p_{n+1}, j_{n+1}) := (position-0 block, j_0).
    let y_var = |i: usize| -> (usize, usize) {
        let (blk, jj) = if i == n {
            (index_ranges[0].0, j_choice[0])
        } else {
            (index_ranges[i + 1].0, j_choice[i + 1])
        };
        (i, offsets[blk] + jj)
    };
    let mut equations = Vec::new();
    // Substitution equations from the minor M_i x_i ~ x_{i+1}: on the
    // chart x_{i+1}[un] = 1, so the proportionality scalar is pinned to
    // lambda_i = d[un] x_i[un], and the remaining components read
    //   d[c] x_i[c] = lambda_i x_{i+1}[c],
    // skipping the block killed by M_i (handled by the product
    // equation) and the component c = un (holds identically). When
    // d[un] = 0 the scalar vanishes identically and the row degenerates
    // to the linear equations d[c] x_i[c] = 0; in that case the product
    // equation is already forced and is not emitted.
    let mut all_lambdas_nonzero = true;
    for i in 0..=n {
        let d = &diagonals[i];
        let tgt = if i == n { 0 } else { i + 1 };
        let un = unit_coords[tgt].1;
        let lambda_coeff = d[un].clone();
        if f.is_zero(&lambda_coeff) {
            all_lambdas_nonzero = false;
        }
        for c in 0..r {
            if f.is_zero(&d[c]) || c == un {
                continue;
            }
            let mut terms = vec![(d[c].clone(), vec![(i, c)])];
            if !f.is_zero(&lambda_coeff) {
                terms.push((f.neg(&lambda_coeff), vec![(i, un), (tgt, c)]));
            }
            equations.push(SparsePoly { terms });
        }
    }
    if all_lambdas_nonzero {
        let prod_vars: Vec<(usize, usize)> = (0..=n).map(y_var).collect();
        equations.push(SparsePoly {
            terms: vec![(f.one(), prod_vars)],
        });
    }
    ChartSystem {
        unit_coords,
        equations,
    }
}

// ---------------------------------------------------------------------------
// Multigraded Hilbert tables
// ---------------------------------------------------------------------------

/// Map multidegree -> dimension of the graded piece of the coordinate
/// ring of LP_H(V).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertTable {
    pub entries: BTreeMap<Vec<usize>, usize>,
}

/// Dimension of each multigraded piece with total degree at most
/// `bound`: the number of monomials minus the rank of the span of the
/// products (monomial times equation) of matching multidegree.
pub fn hilbert_table<K: Field>(
    system: &MinorSystem<K>,
    bound: usize,
    budget: usize,
) -> Result<HilbertTable, LpError> {
    let mut entries = BTreeMap::new();
    for d in multidegrees(system.dims.len(), bound) {
        entries.insert(d.clone(), graded_dimension(system, &d, budget)?);
    }
    Ok(HilbertTable { entries })
}

fn graded_dimension<K: Field>(
    system: &MinorSystem<K>,
    d: &[usize],
    budget: usize,
) -> Result<usize, LpError> {
    let f = &system.field;
    let monomials = block_monomials(&system.dims, d);
    let n_mon = monomials.len();
    if n_mon > budget {
        return Err(LpError::BudgetExceeded {
            size: n_mon as u128,
            budget: budget as u128,
        });
    }
    let index: BTreeMap<&Vec<Vec<usize>>, usize> =
        monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Vec<Vec<K::E>> = Vec::new();
    for eq in &system.equations {
        // Multidegree of the equation: 1 in blocks v and w.
        let mut rem = d.to_vec();
        if rem[eq.v] == 0 || rem[eq.w] == 0 {
            continue;
        }
        rem[eq.v] -= 1;
        rem[eq.w] -= 1;
        for m in block_monomials(&system.dims, &rem) {
            let mut row = vec![f.zero(); n_mon];
            for g in 0..system.dims[eq.v] {
                for dd in 0..system.dims[eq.w] {
                    let c = eq.coeffs.at(g, dd);
                    if f.is_zero(c) {
                        continue;
                    }
                    let mut mm = m.clone();
                    mm[eq.v][g] += 1;
                    mm[eq.w][dd] += 1;
                    let col = index[&mm];
                    row[col] = f.add(&row[col], c);
                }
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(n_mon);
    }
    let rank = Matrix::from_rows(f.clone(), rows).rank();
    Ok(n_mon - rank)
}

/// All multidegrees over `blocks` blocks with total degree <= bound.
pub fn multidegrees(blocks: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; blocks];
    fn rec(pos: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[pos] = k;
            rec(pos + 1, left - k, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, bound, &mut cur, &mut out);
    out.sort();
    out
}

/// Monomials of the given multidegree: per block, exponent vectors of
/// the prescribed total degree.
fn block_monomials(dims: &[usize], d: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let per_block: Vec<Vec<Vec<usize>>> = dims
        .iter()
        .zip(d)
        .map(|(&nv, &deg)| exponents(nv, deg))
        .collect();
    let mut out: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for block in per_block {
        let mut next = Vec::with_capacity(out.len() * block.len());
        for prefix in &out {
            for e in &block {
                let mut m = prefix.clone();
                m.push(e.clone());
                next.push(m);
            }
        }
        out = next;
    }
    out
}

fn exponents(vars: usize, deg: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; vars];
    fn rec(pos: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[pos] = k;
            rec(pos + 1, left - k, cur, out);
        }
        cur[pos] = 0;
    }
    if vars == 0 {
        if deg == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(0, deg, &mut cur, &mut out);
    out.sort();
    out
}

/// Binomial coefficient as usize; small arguments only.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
    }
    (num / den) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{exact_simple, seg2, tri3, v};
    use crate::linalg::{PrimeField, Rationals};
    use crate::net::NetPresentation;
    use std::collections::BTreeMap;

    use crate::fixtures::presentation_mod_p;

    fn seg2_fp(p: u64) -> WindowNet<PrimeField> {
        let f = PrimeField::new(p).unwrap();
        presentation_mod_p(&seg2(), f).expand(3).unwrap()
    }

    fn tri3_fp(p: u64) -> WindowNet<PrimeField> {
        let f = PrimeField::new(p).unwrap();
        presentation_mod_p(&tri3(), f).expand(3).unwrap()
    }

    #[test]
    fn seg2_minor_system_is_a0b1() {
        let net = seg2().expand(3).unwrap();
        let h = vec![v(&[0, 0]), v(&[1, 0])];
        let sys = lp_equations(&net, &h).unwrap();
        // Both orientations produce the same bidegree-(1,1) minor, so
        // after deduplication a single equation a0*b1 remains.
        assert_eq!(sys.equations.len(), 1);
        let eq = &sys.equations[0];
        let q = Rationals;
        use crate::linalg::Field as _;
        let nonzero: Vec<(usize, usize)> = (0..2)
            .flat_map(|g| (0..2).map(move |d| (g, d)))
            .filter(|&(g, d)| !q.is_zero(eq.coeffs.at(g, d)))
            .collect();
        assert_eq!(nonzero, vec![(0, 1)]);
    }

    #[test]
    fn singleton_h_gives_empty_system() {
        let net = exact_simple(2, &[0, 0, 0]).expand(3).unwrap();
        let sys = lp_equations(&net, &[v(&[0, 0, 0])]).unwrap();
        assert!(sys.equations.is_empty());
    }

    #[test]
    fn seg2_point_counts_are_2q_plus_1() {
        for q in [2u64, 3, 5] {
            let net = seg2_fp(q);
            let h = vec![v(&[0, 0]), v(&[1, 0])];
            let pts = enumerate_points(&net, &h, 1 << 20).unwrap();
            assert_eq!(pts.len(), (2 * q + 1) as usize, "q = {q}");
        }
    }

    #[test]
    fn p1_of_f3_has_four_points() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(projective_reps(&f, 2).len(), 4);
        // A singleton hull with dimension 2 enumerates P^1 itself.
        let pres = presentation_mod_p(&exact_simple(1, &[0, 0]), f);
        let mut pres2 = pres.clone();
        pres2.dims = vec![2];
        let pres2 =
            NetPresentation::new(f, 1, pres2.hull.clone(), pres2.dims.clone(), BTreeMap::new())
                .unwrap();
        let net = pres2.expand(2).unwrap();
        let pts = enumerate_points(&net, &[v(&[0, 0])], 1 << 20).unwrap();
        assert_eq!(pts.len(), 4);
    }

    #[test]
    fn seg2_strata_counts() {
        let net = seg2_fp(3);
        let h = vec![v(&[0, 0]), v(&[1, 0])];
        let pts = enumerate_points(&net, &h, 1 << 20).unwrap();
        assert_eq!(pts.len(), 7);
        let strata = stratify(&net, &h, &pts).unwrap();
        let sizes: BTreeMap<usize, usize> =
            strata.iter().map(|(k, pts)| (k.len(), pts.len())).fold(
                BTreeMap::new(),
                |mut acc, (k, n)| {
                    *acc.entry(k).or_insert(0) += n;
                    acc
                },
            );
        assert_eq!(sizes[&1], 6); // two singleton strata with 3 points each
        assert_eq!(sizes[&2], 1);
        for (key, pts) in &strata {
            if key.len() == 1 {
                assert_eq!(pts.len(), 3);
                let param = stratum_param_count(&net, &key[0], &h).unwrap();
                assert_eq!(param, pts.len());
            }
        }
    }

    #[test]
    fn enumeration_budget_is_enforced() {
        let net = seg2_fp(5);
        let h = vec![v(&[0, 0]), v(&[1, 0])];
        let err = enumerate_points(&net, &h, 3).unwrap_err();
        assert!(matches!(err, LpError::BudgetExceeded { .. }));
    }

    #[test]
    fn psi_identity_and_inverse() {
        let net = seg2_fp(3);
        let u = v(&[0, 0]);
        let w = v(&[1, 0]);
        let h = vec![u.clone(), w.clone()];
        let pts = enumerate_points(&net, &h, 1 << 20).unwrap();
        // Identity on the same H.
        for p in &pts {
            assert_eq!(&psi(&net, &h, &h, p).unwrap(), p);
        }
        // Enlarging H by a hull vertex in between and coming back is
        // the identity on points.
        let h2 = vec![u.clone(), v(&[1, 0]), v(&[2, 0])];
        let h2set: std::collections::BTreeSet<Vertex> = h2.iter().cloned().collect();
        assert_eq!(crate::zquiver::hull(&h2set), h2set);
        let mut images = Vec::new();
        for p in &pts {
            let q2 = psi(&net, &h, &h2, p).unwrap();
            let back = psi(&net, &h2, &h, &q2).unwrap();
            assert_eq!(&back, p);
            images.push(q2);
        }
        // The images are pairwise distinct (bijection onto the image).
        for i in 0..images.len() {
            for j in (i + 1)..images.len() {
                assert_ne!(images[i], images[j]);
            }
        }
        // And they exhaust LP_{H2}.
        let pts2 = enumerate_points(&net, &h2, 1 << 20).unwrap();
        assert_eq!(pts2.len(), images.len());
        for img in &images {
            assert!(pts2.contains(img));
        }
    }

    #[test]
    fn seg2_jacobian_smooth_and_singular() {
        let net = seg2().expand(3).unwrap();
        let h = vec![v(&[0, 0]), v(&[1, 0])];
        let sys = lp_equations(&net, &h).unwrap();
        let q = Rationals;
        use crate::linalg::Field as _;
        let one = q.one();
        let zero = q.zero();
        // ([1:0],[1:0]) lies on the stratum of u and is smooth.
        let p = LPPoint::new(
            &q,
            vec![vec![one.clone(), zero.clone()], vec![one.clone(), zero.clone()]],
        );
        let rank = jacobian_rank(&sys, &p).unwrap();
        assert_eq!(rank, 1);
        assert_eq!(smooth_rank_threshold(&sys, 2), 1);
        // ([0:1],[1:0]) is the two-generator point and is singular.
        let p = LPPoint::new(
            &q,
            vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]],
        );
        assert_eq!(jacobian_rank(&sys, &p).unwrap(), 0);
        // A point off the variety errors.
        let p = LPPoint::new(&q, vec![vec![one.clone(), zero], vec![one.clone(), one]]);
        assert_eq!(jacobian_rank(&sys, &p), Err(LpError::PointNotOnVariety));
    }

    #[test]
    fn tri3_charts_have_four_equations() {
        let net = tri3().expand(3).unwrap();
        let delta = Polygon::from_slice(&[v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[1, 1, 0])]).unwrap();
        let atlas = charts(&net, &delta).unwrap();
        assert_eq!(atlas.r, 3);
        assert!(atlas.charts.len() >= 4);
        for chart in &atlas.charts {
            assert_eq!(chart.equations.len(), 2 * 3 - 2, "n r - n");
        }
        // The M-matrix zero pattern: diag(1,0,1), diag(1,1,0), diag(0,1,1)
        // in the adapted summand order.
        use crate::linalg::Field as _;
        let q = Rationals;
        let pattern: Vec<Vec<bool>> = atlas
            .cycle_diagonals
            .iter()
            .map(|d| d.iter().map(|e| q.is_zero(e)).collect())
            .collect();
        assert_eq!(
            pattern,
            vec![
                vec![false, true, false],
                vec![false, false, true],
                vec![true, false, false],
            ]
        );
    }

    #[test]
    fn seg2_charts_single_equation() {
        let net = seg2().expand(3).unwrap();
        let delta = Polygon::from_slice(&[v(&[0, 0]), v(&[1, 0])]).unwrap();
        let atlas = charts(&net, &delta).unwrap();
        assert!(atlas.charts.len() >= 2);
        for chart in &atlas.charts {
            assert_eq!(chart.equations.len(), 1);
        }
    }

    #[test]
    fn chart_loci_match_minor_loci_tri3_f3() {
        let net = tri3_fp(3);
        let delta = Polygon::from_slice(&[v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[1, 1, 0])]).unwrap();
        let atlas = charts(&net, &delta).unwrap();
        let h: Vec<Vertex> = atlas.positions.clone();
        let sys = lp_equations(&net, &h).unwrap();
        let f = *net.field();
        // Exhaust the ambient product space.
        let blocks: Vec<Vec<Vec<u64>>> = (0..h.len()).map(|_| projective_reps(&f, 3)).collect();
        let mut idx = vec![0usize; blocks.len()];
        let mut on_variety = 0usize;
        loop {
            let p = LPPoint {
                coords: idx
                    .iter()
                    .enumerate()
                    .map(|(b, &i)| blocks[b][i].clone())
                    .collect(),
            };
            let on_minors = sys.satisfied(&p);
            if on_minors {
                on_variety += 1;
                // Coverage: every variety point lies in some chart.
                assert!(
                    atlas.charts.iter().any(|c| c.contains(&f, &p)),
                    "variety point escapes the atlas"
                );
            }
            for chart in &atlas.charts {
                if chart.contains(&f, &p) {
                    assert_eq!(chart.satisfied(&f, &p), on_minors);
                }
            }
            let mut pos = blocks.len();
            loop {
                if pos == 0 {
                    assert!(on_variety > 0);
                    return;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < blocks[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    #[test]
    fn perturbed_chart_disagrees() {
        // Negative control: changing one chart coefficient must break
        // the agreement with the minor system.
        let net = tri3_fp(3);
        let delta = Polygon::from_slice(&[v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[1, 1, 0])]).unwrap();
        let mut atlas = charts(&net, &delta).unwrap();
        let h: Vec<Vertex> = atlas.positions.clone();
        let sys = lp_equations(&net, &h).unwrap();
        let f = *net.field();
        let chart = &mut atlas.charts[0];
        let c0 = chart.equations[0].terms[0].0;
        chart.equations[0].terms[0].0 = f.add(&c0, &1);
        let blocks: Vec<Vec<Vec<u64>>> = (0..h.len()).map(|_| projective_reps(&f, 3)).collect();
        let mut idx = vec![0usize; blocks.len()];
        let mut mismatch = false;
        'outer: loop {
            let p = LPPoint {
                coords: idx
                    .iter()
                    .enumerate()
                    .map(|(b, &i)| blocks[b][i].clone())
                    .collect(),
            };
            if chart.contains(&f, &p) && chart.satisfied(&f, &p) != sys.satisfied(&p) {
                mismatch = true;
                break 'outer;
            }
            let mut pos = blocks.len();
            loop {
                if pos == 0 {
                    break 'outer;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < blocks[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
        assert!(mismatch);
    }

    #[test]
    fn seg2_hilbert_table_is_the_diagonal() {
        let net = seg2().expand(3).unwrap();
        let h = vec![v(&[0, 0]), v(&[1, 0])];
        let sys = lp_equations(&net, &h).unwrap();
        let table = hilbert_table(&sys, 3, 100_000).unwrap();
        for (d, dim) in &table.entries {
            let total: usize = d.iter().sum();
            assert_eq!(*dim, total + 1, "multidegree {:?}", d);
            assert_eq!(*dim, binomial(total + 1, 1));
        }
        // Degree zero piece is the constants.
        assert_eq!(table.entries[&vec![0, 0]], 1);
        assert_eq!(table.entries[&vec![1, 1]], 3);
    }


    #[test]
    fn psi_zero_image_signals_not_one_generated() {
        // SEG2 is not 1-generated by a single hull vertex; pushing the
        // killed line through reports the zero image.
        let net = seg2_fp(3);
        let h1 = vec![v(&[0, 0])];
        let h2 = vec![v(&[1, 0])];
        let f = *net.field();
        let p = LPPoint::new(&f, vec![vec![0, 1]]);
        assert_eq!(
            psi(&net, &h1, &h2, &p),
            Err(LpError::ZeroImage(v(&[1, 0])))
        );
    }

    #[test]
    fn hilbert_budget_is_enforced() {
        let net = seg2().expand(3).unwrap();
        let h = vec![v(&[0, 0]), v(&[1, 0])];
        let sys = lp_equations(&net, &h).unwrap();
        assert!(matches!(
            hilbert_table(&sys, 3, 2),
            Err(LpError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn tri3_singleton_strata_have_q_squared_points() {
        for q in [2u64, 3] {
            let net = tri3_fp(q);
            let h = vec![v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[1, 1, 0])];
            let pts = enumerate_points(&net, &h, 1 << 22).unwrap();
            let strata = stratify(&net, &h, &pts).unwrap();
            let mut singleton_total = 0usize;
            for (key, points) in &strata {
                if key.len() == 1 {
                    assert_eq!(points.len(), (q * q) as usize, "q={q} key={key:?}");
                    singleton_total += points.len();
                    let param = stratum_param_count(&net, &key[0], &h).unwrap();
                    assert_eq!(param, points.len());
                }
            }
            // Three irreducible components contribute the leading term.
            assert_eq!(singleton_total, 3 * (q * q) as usize);
            assert!(pts.len() > singleton_total);
        }
    }

    #[test]
    fn r1_charts_are_trivial() {
        let net = exact_simple(2, &[0, 0, 0]).expand(3).unwrap();
        let delta = Polygon::singleton(v(&[0, 0, 0]));
        let atlas = charts(&net, &delta).unwrap();
        assert_eq!(atlas.r, 1);
        assert_eq!(atlas.charts.len(), 1);
        assert!(atlas.charts[0].equations.is_empty());
    }
}
