//! Cubic planar graphs as combinatorial maps with first-homology labels on
//! edges, edge-flip mutation, admissibility of mutation sequences, the
//! necklace graph, and the genus-2 five-term mutation paths.
//!
//! Labels are the classes of the oriented closed curves associated to edges,
//! one vector in Z^{2g} per edge, written in the standard necklace basis
//! (U_1..U_g, V_1..V_g). Each face of the graph satisfies the relation that
//! the labels of its adjacent edges (counted with adjacency multiplicity) sum
//! to zero, and every operation here preserves that relation.
//!
//! Convention notes, frozen once against the genus-2 five-term mutation
//! sequences and their quantum-torus identity (see
//! `five_term_convention_search`):
//! - a flip negates the flipped edge's label and adds the old label to one
//!   neighbor at each endpoint: the counterclockwise predecessors for negative
//!   mutation, the successors for positive mutation;
//! - the class a sign-ε mutation uses (the surgery disk boundary) is
//!   `-ε·[edge]`, so a negative mutation uses the edge's stored label itself;
//! - the intersection form is ⟨U_i, V_j⟩ = -δ_ij;
//! - the dilogarithm scale carried by every negative mutation factor in the
//!   five-term identity is -q^{-1/2}.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coeff::{LaurentSA, RationalSA};
use crate::torus::{
    wavefunction, GradeFunctional, QTElement, SkewLattice, TorusAlgebra, TorusError,
};

/// Global sign of the intersection form: ⟨U_i, V_j⟩ = FORM_SIGN · δ_ij.
pub const FORM_SIGN: i64 = -1;

/// The class used by a sign-ε mutation is (USED_SIGN · ε) · [edge].
pub const USED_SIGN: i64 = -1;

/// Dilogarithm scale of a negative mutation factor: -q^{-1/2}.
pub fn negative_mutation_scale() -> LaurentSA {
    -LaurentSA::s_pow(-1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    InvalidGenus(usize),
    UnknownEdge(usize),
    LoopEdge(usize),
    UnknownFace(usize),
    NotBigon(usize),
    NoEdgeWithLabel(Vec<i64>),
    AmbiguousLabel(Vec<i64>),
    BadMap(String),
    InvariantViolation(String),
    Torus(TorusError),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::InvalidGenus(g) => write!(f, "genus must be >= 1, got {g}"),
            GraphError::UnknownEdge(e) => write!(f, "no edge with id {e}"),
            GraphError::LoopEdge(e) => write!(f, "edge {e} is a loop and cannot be flipped"),
            GraphError::UnknownFace(i) => write!(f, "no face with index {i}"),
            GraphError::NotBigon(i) => write!(f, "face {i} is not a bigon"),
            GraphError::NoEdgeWithLabel(v) => write!(f, "no edge labelled {v:?}"),
            GraphError::AmbiguousLabel(v) => write!(f, "several edges labelled {v:?}"),
            GraphError::BadMap(msg) => write!(f, "malformed combinatorial map: {msg}"),
            GraphError::InvariantViolation(msg) => write!(f, "invariant violated: {msg}"),
            GraphError::Torus(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for GraphError {}

impl From<TorusError> for GraphError {
    fn from(e: TorusError) -> Self {
        GraphError::Torus(e)
    }
}

/// Mutation sign. Positive and negative mutations perform the same edge flip
/// but transform labels differently and use opposite disk orientations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn as_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// One mutation: an edge id with a sign. The edge must not be a loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationStep {
    pub edge: usize,
    pub sign: Sign,
}

/// Orientable combinatorial map: `alpha` pairs darts into edges, `sigma` is
/// the counterclockwise successor at each vertex. Faces are the orbits of
/// sigma^{-1}∘alpha (boundary walked with the face on the left).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialMap {
    alpha: Vec<usize>,
    sigma: Vec<usize>,
}

impl CombinatorialMap {
    pub fn new(alpha: Vec<usize>, sigma: Vec<usize>) -> Result<Self, GraphError> {
        let n = alpha.len();
        if sigma.len() != n {
            return Err(GraphError::BadMap("alpha/sigma length mismatch".into()));
        }
        let map = CombinatorialMap { alpha, sigma };
        map.check()?;
        Ok(map)
    }

    fn check(&self) -> Result<(), GraphError> {
        let n = self.alpha.len();
        let in_range = |v: &[usize]| v.iter().all(|&d| d < n);
        if !in_range(&self.alpha) || !in_range(&self.sigma) {
            return Err(GraphError::BadMap("dart index out of range".into()));
        }
        let mut seen = vec![false; n];
        for &d in &self.sigma {
            if seen[d] {
                return Err(GraphError::BadMap("sigma is not a permutation".into()));
            }
            seen[d] = true;
        }
        for d in 0..n {
            if self.alpha[d] == d || self.alpha[self.alpha[d]] != d {
                return Err(GraphError::BadMap(
                    "alpha is not a fixed-point-free involution".into(),
                ));
            }
        }
        for orbit in orbits(&self.sigma) {
            if orbit.len() != 3 {
                return Err(GraphError::BadMap("vertex of degree != 3".into()));
            }
        }
        // connectivity under the group generated by sigma and alpha
        if n > 0 {
            let mut visited = vec![false; n];
            let mut stack = vec![0usize];
            visited[0] = true;
            while let Some(d) = stack.pop() {
                for next in [self.alpha[d], self.sigma[d]] {
                    if !visited[next] {
                        visited[next] = true;
                        stack.push(next);
                    }
                }
            }
            if visited.iter().any(|&v| !v) {
                return Err(GraphError::BadMap("map is not connected".into()));
            }
        }
        Ok(())
    }

    pub fn dart_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self, d: usize) -> usize {
        self.alpha[d]
    }

    pub fn sigma(&self, d: usize) -> usize {
        self.sigma[d]
    }

    pub fn sigma_inv(&self, d: usize) -> usize {
        // vertices are trivalent, so sigma^{-1} = sigma∘sigma
        self.sigma[self.sigma[d]]
    }

    /// Edge id of a dart: the smaller dart of the alpha-pair.
    pub fn edge_of(&self, d: usize) -> usize {
        d.min(self.alpha[d])
    }

    pub fn edges(&self) -> Vec<usize> {
        (0..self.dart_count())
            .filter(|&d| d < self.alpha[d])
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        orbits(&self.sigma).len()
    }

    pub fn edge_count(&self) -> usize {
        self.dart_count() / 2
    }

    /// Faces as orbits of sigma^{-1}∘alpha, listed by smallest dart.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let n = self.dart_count();
        let phi: Vec<usize> = (0..n).map(|d| self.sigma_inv(self.alpha[d])).collect();
        orbits(&phi)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.faces().len() as i64
    }

    /// True when both darts of the edge meet the same vertex.
    pub fn is_loop(&self, edge: usize) -> bool {
        let other = self.alpha[edge];
        let mut d = self.sigma[edge];
        while d != edge {
            if d == other {
                return true;
            }
            d = self.sigma[d];
        }
        false
    }
}

/// Orbits of a permutation, each starting at its minimum element, sorted by
/// that minimum.
fn orbits(perm: &[usize]) -> Vec<Vec<usize>> {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut d = perm[start];
        while d != start {
            seen[d] = true;
            orbit.push(d);
            d = perm[d];
        }
        out.push(orbit);
    }
    out
}

/// Canonical encoding of a labelled map: per dart (in traversal order), the
/// renumbered sigma- and alpha-images, plus the edge label on first visit.
pub type CanonicalForm = Vec<(usize, usize, Option<Vec<i64>>)>;

/// Cubic planar graph with an H_1 class on every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    genus: usize,
    map: CombinatorialMap,
    labels: BTreeMap<usize, Vec<i64>>,
}

impl LabeledGraph {
    pub fn new(
        genus: usize,
        map: CombinatorialMap,
        labels: BTreeMap<usize, Vec<i64>>,
    ) -> Result<Self, GraphError> {
        let graph = LabeledGraph { genus, map, labels };
        graph.validate()?;
        Ok(graph)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn map(&self) -> &CombinatorialMap {
        &self.map
    }

    pub fn label(&self, edge: usize) -> Result<&Vec<i64>, GraphError> {
        self.labels.get(&edge).ok_or(GraphError::UnknownEdge(edge))
    }

    pub fn labels(&self) -> &BTreeMap<usize, Vec<i64>> {
        &self.labels
    }

    /// Structural and homological invariants: spherical Euler characteristic,
    /// V = 2g + 2, all face relations, and label span of rank 2g.
    pub fn validate(&self) -> Result<(), GraphError> {
        let map = &self.map;
        let expect_v = 2 * self.genus + 2;
        if map.vertex_count() != expect_v {
            return Err(GraphError::InvariantViolation(format!(
                "expected {expect_v} vertices, found {}",
                map.vertex_count()
            )));
        }
        if map.euler_characteristic() != 2 {
            return Err(GraphError::InvariantViolation(format!(
                "Euler characteristic {} != 2",
                map.euler_characteristic()
            )));
        }
        let edges = map.edges();
        if edges.len() != self.labels.len() || edges.iter().any(|e| !self.labels.contains_key(e)) {
            return Err(GraphError::InvariantViolation(
                "labels do not match the edge set".into(),
            ));
        }
        let dim = 2 * self.genus;
        for v in self.labels.values() {
            if v.len() != dim {
                return Err(GraphError::InvariantViolation(
                    "label length differs from 2g".into(),
                ));
            }
        }
        for (i, face) in map.faces().iter().enumerate() {
            let mut total = vec![0i64; dim];
            for &d in face {
                let label = &self.labels[&map.edge_of(d)];
                for (t, x) in total.iter_mut().zip(label) {
                    *t += x;
                }
            }
            if total.iter().any(|&x| x != 0) {
                return Err(GraphError::InvariantViolation(format!(
                    "face {i} labels sum to {total:?}"
                )));
            }
        }
        if label_rank(self.labels.values()) != dim {
            return Err(GraphError::InvariantViolation(
                "labels do not span a rank-2g sublattice".into(),
            ));
        }
        Ok(())
    }

    /// Per-edge labels with a sign normalization (first nonzero coordinate
    /// positive), sorted. Comparisons of mutation results happen up to the
    /// per-edge orientation choice, which this normalization quotients out.
    pub fn label_multiset(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self.labels.values().map(|v| lex_normalize(v)).collect();
        out.sort();
        out
    }

    /// The unique edge carrying exactly this label (not up to sign).
    pub fn edge_with_label(&self, class: &[i64]) -> Result<usize, GraphError> {
        let mut found = None;
        for (&e, v) in &self.labels {
            if v == class {
                if found.is_some() {
                    return Err(GraphError::AmbiguousLabel(class.to_vec()));
                }
                found = Some(e);
            }
        }
        found.ok_or_else(|| GraphError::NoEdgeWithLabel(class.to_vec()))
    }

    /// The class a sign-ε mutation at `edge` uses as its surgery disk
    /// boundary: (USED_SIGN · ε) · [edge].
    pub fn used_class(&self, step: MutationStep) -> Result<Vec<i64>, GraphError> {
        let label = self.label(step.edge)?;
        let s = USED_SIGN * step.sign.as_int();
        Ok(label.iter().map(|&x| s * x).collect())
    }

    /// Edge flip with the homology transformation law.
    ///
    /// The flipped edge's label is negated. One neighbor at each endpoint
    /// gains the old label: the counterclockwise predecessors of the edge for
    /// a negative mutation, the successors for a positive one. All face
    /// relations are re-checked afterwards; a failure there means the frozen
    /// conventions were broken and is reported as an internal error.
    pub fn flip(&self, step: MutationStep) -> Result<LabeledGraph, GraphError> {
        let map = &self.map;
        let h = step.edge;
        if !self.labels.contains_key(&h) {
            return Err(GraphError::UnknownEdge(h));
        }
        if map.is_loop(h) {
            return Err(GraphError::LoopEdge(h));
        }
        let h2 = map.alpha(h);
        let x1 = map.sigma(h);
        let x2 = map.sigma(x1);
        let y1 = map.sigma(h2);
        let y2 = map.sigma(y1);

        let mut sigma = map.sigma.clone();
        // new vertex (y2, x1, h) and new vertex (x2, y1, h2), both counterclockwise
        sigma[y2] = x1;
        sigma[x1] = h;
        sigma[h] = y2;
        sigma[x2] = y1;
        sigma[y1] = h2;
        sigma[h2] = x2;
        let new_map = CombinatorialMap::new(map.alpha.clone(), sigma)?;

        let gain = self.labels[&h].clone();
        let gainers = match step.sign {
            Sign::Minus => [map.edge_of(x2), map.edge_of(y2)],
            Sign::Plus => [map.edge_of(x1), map.edge_of(y1)],
        };
        let mut labels = self.labels.clone();
        labels.insert(h, gain.iter().map(|&x| -x).collect());
        for e in gainers {
            let entry = labels.get_mut(&e).expect("gaining edge exists");
            for (t, x) in entry.iter_mut().zip(&gain) {
                *t += x;
            }
        }
        let flipped = LabeledGraph {
            genus: self.genus,
            map: new_map,
            labels,
        };
        flipped
            .validate()
            .map_err(|e| GraphError::InvariantViolation(format!("flip broke an invariant: {e}")))?;
        Ok(flipped)
    }

    /// Canonical encoding of the labelled map, minimal over start darts;
    /// equal encodings mean label-respecting isomorphism.
    pub fn canonical_form(&self) -> CanonicalForm {
        let map = &self.map;
        let n = map.dart_count();
        let mut best: Option<CanonicalForm> = None;
        for start in 0..n {
            let mut number = vec![usize::MAX; n];
            let mut order = Vec::with_capacity(n);
            number[start] = 0;
            order.push(start);
            let mut next_idx = 0;
            while next_idx < order.len() {
                let d = order[next_idx];
                next_idx += 1;
                for nb in [map.sigma(d), map.alpha(d)] {
                    if number[nb] == usize::MAX {
                        number[nb] = order.len();
                        order.push(nb);
                    }
                }
            }
            let mut enc = Vec::with_capacity(n);
            let mut edge_seen = vec![false; n];
            for &d in &order {
                let label = if edge_seen[map.edge_of(d)] {
                    None
                } else {
                    edge_seen[map.edge_of(d)] = true;
                    Some(self.labels[&map.edge_of(d)].clone())
                };
                enc.push((number[map.sigma(d)], number[map.alpha(d)], label));
            }
            if best.as_ref().is_none_or(|b| &enc < b) {
                best = Some(enc);
            }
        }
        best.unwrap_or_default()
    }

    pub fn is_isomorphic_labeled(&self, other: &LabeledGraph) -> bool {
        self.genus == other.genus && self.canonical_form() == other.canonical_form()
    }
}

fn lex_normalize(v: &[i64]) -> Vec<i64> {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => v.iter().map(|&y| -y).collect(),
        _ => v.to_vec(),
    }
}

/// Rank over Q of the span of integer vectors, by fraction-free elimination.
fn label_rank<'a>(rows: impl Iterator<Item = &'a Vec<i64>>) -> usize {
    let mut mat: Vec<Vec<BigInt>> = rows
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut rank = 0;
    let cols = mat.first().map_or(0, |r| r.len());
    for col in 0..cols {
        let Some(pivot) = (rank..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pivot);
        let (head, tail) = mat.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let p = pivot_row[col].clone();
        for row in tail {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for c in 0..cols {
                row[c] = &row[c] * &p - &pivot_row[c] * &factor;
            }
        }
        rank += 1;
    }
    rank
}

/// Basis unit vector: U_k ↦ index k-1, V_k ↦ index g+k-1.
fn unit(dim: usize, idx: usize, sign: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[idx] = sign;
    v
}

/// The necklace graph of genus g: a cyclic string of g+1 bigon beads.
///
/// Bead i < g carries ±V_{i+1} on its arcs, the last bead carries
/// ±(V_1+..+V_g); the string edge after bead i < g carries U_{i+1} and the
/// closing string edge carries -(U_1+..+U_g). The label orientations are the
/// solution of the face-relation constraints under which a negative flip at
/// the U_1 edge starts the five-term mutation sequences.
pub fn necklace(genus: usize) -> Result<LabeledGraph, GraphError> {
    if genus < 1 {
        return Err(GraphError::InvalidGenus(genus));
    }
    let g = genus;
    let beads = g + 1;
    let dim = 2 * g;
    let n_darts = 6 * beads;
    let mut alpha = vec![0usize; n_darts];
    let mut sigma = vec![0usize; n_darts];
    // bead i darts: top arc (6i @a_i, 6i+1 @b_i), bottom arc (6i+2, 6i+3),
    // string to the next bead (6i+4 @b_i, 6i+5 @a_{i+1})
    for i in 0..beads {
        let t = 6 * i;
        alpha[t] = t + 1;
        alpha[t + 1] = t;
        alpha[t + 2] = t + 3;
        alpha[t + 3] = t + 2;
        alpha[t + 4] = t + 5;
        alpha[t + 5] = t + 4;
        let prev = 6 * ((i + beads - 1) % beads);
        // at a_i (counterclockwise): top arc, incoming string, bottom arc
        sigma[t] = prev + 5;
        sigma[prev + 5] = t + 2;
        sigma[t + 2] = t;
        // at b_i (counterclockwise): outgoing string, top arc, bottom arc
        sigma[t + 4] = t + 1;
        sigma[t + 1] = t + 3;
        sigma[t + 3] = t + 4;
    }
    let map = CombinatorialMap::new(alpha, sigma)?;

    let mut labels = BTreeMap::new();
    let sum_v: Vec<i64> = (0..dim).map(|k| i64::from(k >= g)).collect();
    let sum_u: Vec<i64> = (0..dim).map(|k| i64::from(k < g)).collect();
    for i in 0..beads {
        let t = 6 * i;
        if i < g {
            labels.insert(t, unit(dim, g + i, -1)); // top arc: -V_{i+1}
            labels.insert(t + 2, unit(dim, g + i, 1)); // bottom arc: V_{i+1}
            labels.insert(t + 4, unit(dim, i, 1)); // string: U_{i+1}
        } else {
            labels.insert(t, sum_v.clone()); // top arc: V_1+..+V_g
            labels.insert(t + 2, sum_v.iter().map(|&x| -x).collect());
            labels.insert(t + 4, sum_u.iter().map(|&x| -x).collect()); // closing string
        }
    }
    LabeledGraph::new(genus, map, labels)
}

/// The symplectic intersection form in the basis (U_1..U_g, V_1..V_g), with
/// the frozen global sign: ⟨U_i, V_j⟩ = FORM_SIGN·δ_ij, U and V isotropic.
pub fn intersection_form(genus: usize) -> Result<SkewLattice, GraphError> {
    if genus < 1 {
        return Err(GraphError::InvalidGenus(genus));
    }
    let g = genus;
    let mut gram = vec![vec![0i64; 2 * g]; 2 * g];
    for i in 0..g {
        gram[i][g + i] = FORM_SIGN;
        gram[g + i][i] = -FORM_SIGN;
    }
    SkewLattice::new(gram).map_err(GraphError::Torus)
}

/// The standard controlling functional: 1 on every U_j, 0 on every V_j.
pub fn standard_weights(genus: usize) -> GradeFunctional {
    let g = genus;
    GradeFunctional::new((0..2 * g).map(|k| i64::from(k < g)).collect())
}

/// The torus algebra every graph-level quantum computation runs in.
pub fn graph_algebra(genus: usize) -> Result<TorusAlgebra, GraphError> {
    TorusAlgebra::new(intersection_form(genus)?, standard_weights(genus))
        .map_err(GraphError::Torus)
}

/// Per-step admissibility data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepReport {
    pub edge: usize,
    pub sign: Sign,
    pub used_class: Vec<i64>,
    pub u_coefficients: Vec<i64>,
    pub admissible: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdmissibleReport {
    pub admissible: bool,
    pub steps: Vec<StepReport>,
}

/// Check a mutation sequence from the necklace graph: every used class must
/// have no negative U-coordinates and at least one positive.
pub fn admissible_check(
    genus: usize,
    steps: &[MutationStep],
) -> Result<AdmissibleReport, GraphError> {
    let mut graph = necklace(genus)?;
    let mut reports = Vec::with_capacity(steps.len());
    let mut all = true;
    for &step in steps {
        let used = graph.used_class(step)?;
        let u: Vec<i64> = used[..genus].to_vec();
        let ok = u.iter().all(|&c| c >= 0) && u.iter().any(|&c| c > 0);
        all &= ok;
        reports.push(StepReport {
            edge: step.edge,
            sign: step.sign,
            used_class: used,
            u_coefficients: u,
            admissible: ok,
        });
        graph = graph.flip(step)?;
    }
    Ok(AdmissibleReport {
        admissible: all,
        steps: reports,
    })
}

/// True when every step's used class has strictly positive grade under the
/// given functional (the sequence of surgery cobordisms is composable and
/// controlled by it).
pub fn composable_check(
    start: &LabeledGraph,
    steps: &[MutationStep],
    weights: &GradeFunctional,
) -> Result<bool, GraphError> {
    let mut graph = start.clone();
    for &step in steps {
        let used = graph.used_class(step)?;
        if weights.grade(&used) <= 0 {
            return Ok(false);
        }
        graph = graph.flip(step)?;
    }
    Ok(true)
}

/// The two genus-2 mutation paths of the five-term relation.
#[derive(Debug, Clone)]
pub struct FiveTermPaths {
    /// class used by the shared first mutation (U_1)
    pub prefix_class: Vec<i64>,
    /// classes used by the three further mutations of the long path
    pub long_classes: Vec<Vec<i64>>,
    /// classes used by the two further mutations of the short path
    pub short_classes: Vec<Vec<i64>>,
    pub long_final: LabeledGraph,
    pub short_final: LabeledGraph,
    /// the long path's middle mutation class as the engine computes it; two
    /// readings of this label circulate (U_1+U_2-V_2 and U_1+U_2-V_1), and
    /// `middle_is_u1u2_minus_v2` records which one actually occurs
    pub long_middle_class: Vec<i64>,
    pub middle_is_u1u2_minus_v2: bool,
}

/// Basis coordinates for genus 2: (U_1, U_2, V_1, V_2).
fn class4(u1: i64, u2: i64, v1: i64, v2: i64) -> Vec<i64> {
    vec![u1, u2, v1, v2]
}

/// Run both five-term mutation sequences. All mutations are negative and each
/// mutation edge is located by its label. Errors unless both paths end in the
/// same labelled graph.
pub fn five_term_paths() -> Result<FiveTermPaths, GraphError> {
    let start = necklace(2)?;
    let flip_at =
        |g: &LabeledGraph, class: Vec<i64>| -> Result<(LabeledGraph, Vec<i64>), GraphError> {
            let edge = g.edge_with_label(&class)?;
            let step = MutationStep {
                edge,
                sign: Sign::Minus,
            };
            let used = g.used_class(step)?;
            Ok((g.flip(step)?, used))
        };

    let (gamma, e0) = flip_at(&start, class4(1, 0, 0, 0))?;

    // short path: U_2, then U_1 - V_2
    let (s1, es1) = flip_at(&gamma, class4(0, 1, 0, 0))?;
    let (short_final, es2) = flip_at(&s1, class4(1, 0, 0, -1))?;

    // long path: U_1 - V_2, then whichever of the two circulating readings of
    // the middle label the engine actually produced, then U_2
    let (l1, el1) = flip_at(&gamma, class4(1, 0, 0, -1))?;
    let reading_a = class4(1, 1, 0, -1);
    let reading_b = class4(1, 1, -1, 0);
    let middle_edge = if l1.edge_with_label(&reading_a).is_ok() {
        reading_a.clone()
    } else {
        reading_b
    };
    let (l2, el2) = flip_at(&l1, middle_edge)?;
    let (long_final, el3) = flip_at(&l2, class4(0, 1, 0, 0))?;

    if !long_final.is_isomorphic_labeled(&short_final) {
        return Err(GraphError::InvariantViolation(
            "five-term paths end in different labelled graphs".into(),
        ));
    }
    Ok(FiveTermPaths {
        prefix_class: e0,
        long_classes: vec![el1.clone(), el2.clone(), el3.clone()],
        short_classes: vec![es1, es2],
        long_final,
        short_final,
        middle_is_u1u2_minus_v2: el2 == reading_a,
        long_middle_class: el2,
    })
}

/// Ordered product E(v_n)···E(v_1) of dilogarithm factors at a common scale.
fn dilog_product(
    algebra: &TorusAlgebra,
    classes: &[Vec<i64>],
    scale: &LaurentSA,
    cutoff: i64,
) -> Result<QTElement<RationalSA>, GraphError> {
    let scales = vec![scale.clone(); classes.len()];
    Ok(wavefunction(algebra, classes, &scales, cutoff)?)
}

/// Both sides of the five-term identity in the genus-2 quantum torus:
/// E(e3)E(e2)E(e1)E(e0) and E(e'2)E(e'1)E(e0), every factor at the frozen
/// negative-mutation scale.
pub fn five_term_sides(
    cutoff: i64,
) -> Result<(QTElement<RationalSA>, QTElement<RationalSA>), GraphError> {
    let paths = five_term_paths()?;
    let algebra = graph_algebra(2)?;
    let scale = negative_mutation_scale();
    let mut long = vec![paths.prefix_class.clone()];
    long.extend(paths.long_classes.iter().cloned());
    let mut short = vec![paths.prefix_class.clone()];
    short.extend(paths.short_classes.iter().cloned());
    Ok((
        dilog_product(&algebra, &long, &scale, cutoff)?,
        dilog_product(&algebra, &short, &scale, cutoff)?,
    ))
}

pub fn five_term_check(cutoff: i64) -> Result<bool, GraphError> {
    let (lhs, rhs) = five_term_sides(cutoff)?;
    Ok(lhs == rhs)
}

/// Enumerate the candidate convention pairs (intersection-form sign,
/// dilogarithm scale over ±q^{±1/2}) and return those for which the five-term
/// identity holds at cutoff 4. Exactly one passes; it is frozen in FORM_SIGN
/// and `negative_mutation_scale`.
pub fn five_term_convention_search() -> Result<Vec<(i64, LaurentSA)>, GraphError> {
    let paths = five_term_paths()?;
    let mut long = vec![paths.prefix_class.clone()];
    long.extend(paths.long_classes.iter().cloned());
    let mut short = vec![paths.prefix_class.clone()];
    short.extend(paths.short_classes.iter().cloned());
    let mut passing = Vec::new();
    for form_sign in [1i64, -1] {
        let g = 2usize;
        let mut gram = vec![vec![0i64; 2 * g]; 2 * g];
        for i in 0..g {
            gram[i][g + i] = form_sign;
            gram[g + i][i] = -form_sign;
        }
        let lattice = SkewLattice::new(gram).map_err(GraphError::Torus)?;
        let algebra =
            TorusAlgebra::new(lattice, standard_weights(g)).map_err(GraphError::Torus)?;
        for exp in [1i64, -1] {
            for neg in [false, true] {
                let scale = if neg {
                    -LaurentSA::s_pow(exp)
                } else {
                    LaurentSA::s_pow(exp)
                };
                let lhs = dilog_product(&algebra, &long, &scale, 4)?;
                let rhs = dilog_product(&algebra, &short, &scale, 4)?;
                if lhs == rhs {
                    passing.push((form_sign, scale));
                }
            }
        }
    }
    Ok(passing)
}

/// The linking-skein shadow of the operator attached to a bigon face:
/// q^{-1/2}·1 + e_{[E_i]}, where E_i is the bigon edge whose label is
/// lexicographically positive (the two edges carry opposite classes).
pub fn bigon_operator(
    graph: &LabeledGraph,
    face_index: usize,
) -> Result<QTElement<LaurentSA>, GraphError> {
    let faces = graph.map().faces();
    let face = faces
        .get(face_index)
        .ok_or(GraphError::UnknownFace(face_index))?;
    if face.len() != 2 {
        return Err(GraphError::NotBigon(face_index));
    }
    let class = lex_normalize(graph.label(graph.map().edge_of(face[0]))?);
    let algebra = graph_algebra(graph.genus())?;
    let cutoff = algebra.grade(&class).max(0);
    let one = QTElement::one(algebra.clone(), cutoff);
    let term = QTElement::monomial(algebra, cutoff, class, LaurentSA::one())?;
    Ok(one.scale(&LaurentSA::s_pow(-1)).add(&term)?)
}

/// Whether substituting e_{[E_i]} ↦ -q^{-1/2} annihilates the bigon operator.
pub fn bigon_annihilation_check(
    graph: &LabeledGraph,
    face_index: usize,
) -> Result<bool, GraphError> {
    let op = bigon_operator(graph, face_index)?;
    let mut total = LaurentSA::zero();
    for (v, c) in op.terms() {
        if v.iter().all(|&x| x == 0) {
            total = total + c.clone();
        } else {
            total = total + c.clone() * (-LaurentSA::s_pow(-1));
        }
    }
    Ok(total.is_zero())
}

/// JSON form of a labelled graph. Labels are listed per edge, keyed by the
/// edge's representative dart, in the basis order (U_1..U_g, V_1..V_g).
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    genus: usize,
    darts: usize,
    alpha: Vec<usize>,
    sigma: Vec<usize>,
    labels: Vec<(usize, Vec<i64>)>,
}

impl Serialize for LabeledGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphRepr {
            genus: self.genus,
            darts: self.map.dart_count(),
            alpha: self.map.alpha.clone(),
            sigma: self.map.sigma.clone(),
            labels: self.labels.iter().map(|(&e, v)| (e, v.clone())).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LabeledGraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let repr = GraphRepr::deserialize(deserializer)?;
        if repr.alpha.len() != repr.darts {
            return Err(D::Error::custom("dart count disagrees with alpha length"));
        }
        let map = CombinatorialMap::new(repr.alpha, repr.sigma).map_err(D::Error::custom)?;
        let labels: BTreeMap<usize, Vec<i64>> = repr.labels.into_iter().collect();
        LabeledGraph::new(repr.genus, map, labels).map_err(D::Error::custom)
    }
}
