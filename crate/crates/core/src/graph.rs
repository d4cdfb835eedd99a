//! Exhaustive analytics of the orthogonality graph `O(M_n(R))`.
//!
//! Vertices are the nonzero matrices whose determinant is a zero-divisor of
//! `R`. A candidate matrix is identified by the row-major base-`|R|` number
//! formed by its entry indices, the `(1,1)` entry being the most significant
//! digit; vertices are numbered densely in increasing order of that id.
//!
//! Neighbours are generated rather than searched: `B ⊥ A` means every column
//! of `B` lies in the right kernel of `A` and every row in the left kernel,
//! so it suffices to combine kernel vectors. Small graphs additionally cache
//! their adjacency lists.

use std::borrow::Cow;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::limits::Limits;
use crate::matrix::{det_entries, Matrix};
use crate::par::{flat_map_chunks, map_range, Execution};
use crate::ring::{Element, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("|R|^(n^2) = {candidates} candidate matrices exceed the cap {cap}")]
    TooLarge { candidates: u128, cap: u64 },
    #[error("matrix size must be at least 1")]
    ZeroSize,
    #[error("{0} is not a vertex of the graph")]
    NotAVertex(String),
    #[error("matrix does not match the graph's ring or size")]
    Mismatch,
    #[error("the graph has no scalar vertices (R has no nonzero zero-divisors)")]
    NoScalarVertices,
    #[error("{vertices} vertices exceed the export cap {cap}")]
    ExportTooLarge { vertices: usize, cap: usize },
}

/// A graph distance; disconnected pairs are infinitely far apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => serializer.serialize_u32(*d),
            Distance::Infinite => serializer.serialize_str("infinite"),
        }
    }
}

const UNREACHED: u32 = u32::MAX;

struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

/// The orthogonality graph of `M_n(R)` with its vertex codec.
pub struct GraphHandle {
    ring: Ring,
    n: usize,
    limits: Limits,
    exec: Execution,
    candidates: u64,
    vertex_ids: Vec<u64>,
    /// Candidate id -> vertex index, `UNREACHED` for non-vertices.
    index_of: Vec<u32>,
    /// All of `R^n`, first coordinate most significant.
    vectors: Vec<Vec<Element>>,
    adjacency: Option<Adjacency>,
}

impl fmt::Debug for GraphHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GraphHandle")
            .field("ring", &self.ring.to_string())
            .field("n", &self.n)
            .field("vertices", &self.vertex_ids.len())
            .finish()
    }
}

impl GraphHandle {
    pub fn new(ring: &Ring, n: usize) -> Result<Self, GraphError> {
        Self::with_options(ring, n, Limits::default(), Execution::default())
    }

    pub fn with_options(
        ring: &Ring,
        n: usize,
        limits: Limits,
        exec: Execution,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::ZeroSize);
        }
        let q = ring.order() as u128;
        let candidates = (0..n * n).fold(1u128, |acc, _| acc.saturating_mul(q));
        if candidates > limits.max_candidates as u128 {
            return Err(GraphError::TooLarge {
                candidates,
                cap: limits.max_candidates,
            });
        }
        let candidates = candidates as u64;

        let mut handle = GraphHandle {
            ring: ring.clone(),
            n,
            limits,
            exec,
            candidates,
            vertex_ids: Vec::new(),
            index_of: Vec::new(),
            vectors: Vec::new(),
            adjacency: None,
        };
        handle.vectors = (0..(q as usize).pow(n as u32))
            .map(|i| handle.decode_digits(i as u64, n))
            .collect();

        let this = &handle;
        handle.vertex_ids = flat_map_chunks(exec, candidates, 4096, |range| {
            let mut found = Vec::new();
            let mut entries = Vec::with_capacity(n * n);
            for id in range {
                this.decode_into(id, &mut entries);
                if id != 0 && this.ring.is_zero_divisor(det_entries(&this.ring, n, &entries)) {
                    found.push(id);
                }
            }
            found
        });
        let mut index_of = vec![UNREACHED; candidates as usize];
        for (i, &id) in handle.vertex_ids.iter().enumerate() {
            index_of[id as usize] = i as u32;
        }
        handle.index_of = index_of;

        if handle.vertex_ids.len() <= limits.adjacency_cache {
            let this = &handle;
            let lists = map_range(exec, 0..this.vertex_ids.len(), |v| this.generate_neighbors(v));
            let mut offsets = Vec::with_capacity(lists.len() + 1);
            offsets.push(0);
            let mut targets = Vec::new();
            for list in lists {
                targets.extend_from_slice(&list);
                offsets.push(targets.len());
            }
            handle.adjacency = Some(Adjacency { offsets, targets });
        }
        Ok(handle)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn execution(&self) -> Execution {
        self.exec
    }

    pub fn set_execution(&mut self, exec: Execution) {
        self.exec = exec;
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    /// `|R|^(n^2)`.
    pub fn candidate_count(&self) -> u64 {
        self.candidates
    }

    fn decode_digits(&self, mut id: u64, len: usize) -> Vec<Element> {
        let q = self.ring.order() as u64;
        let mut out = vec![Element::ZERO; len];
        for slot in out.iter_mut().rev() {
            *slot = Element::from_index((id % q) as usize);
            id /= q;
        }
        out
    }

    fn decode_into(&self, mut id: u64, out: &mut Vec<Element>) {
        let q = self.ring.order() as u64;
        let len = self.n * self.n;
        out.clear();
        out.resize(len, Element::ZERO);
        for slot in out.iter_mut().rev() {
            *slot = Element::from_index((id % q) as usize);
            id /= q;
        }
    }

    fn encode(&self, entries: &[Element]) -> u64 {
        let q = self.ring.order() as u64;
        entries.iter().fold(0, |acc, e| acc * q + e.index() as u64)
    }

    fn vector_index(&self, v: impl Iterator<Item = Element>) -> usize {
        let q = self.ring.order();
        v.fold(0, |acc, e| acc * q + e.index())
    }

    /// Vertex `v` as a matrix.
    pub fn matrix(&self, v: usize) -> Matrix {
        let entries = self.decode_digits(self.vertex_ids[v], self.n * self.n);
        Matrix::from_parts_unchecked(&self.ring, self.n, self.n, entries)
    }

    /// Codec id of vertex `v`.
    pub fn vertex_id(&self, v: usize) -> u64 {
        self.vertex_ids[v]
    }

    /// Dense index of `a`, if it is a vertex.
    pub fn index(&self, a: &Matrix) -> Result<usize, GraphError> {
        if a.ring() != &self.ring || a.rows() != self.n || a.cols() != self.n {
            return Err(GraphError::Mismatch);
        }
        match self.index_of[self.encode(a.entries()) as usize] {
            UNREACHED => Err(GraphError::NotAVertex(a.literal())),
            v => Ok(v as usize),
        }
    }

    /// Every vertex, in id order.
    pub fn vertices(&self) -> impl Iterator<Item = Matrix> + '_ {
        (0..self.vertex_count()).map(|v| self.matrix(v))
    }

    fn is_scalar_vertex(&self, v: usize) -> bool {
        self.matrix(v).scalar_value().is_some()
    }

    /// Kernel-combination neighbour generation; sorted, without `v` itself.
    fn generate_neighbors(&self, v: usize) -> Vec<u32> {
        let n = self.n;
        let r = &self.ring;
        let a = self.decode_digits(self.vertex_ids[v], n * n);
        let at = |i: usize, j: usize| a[i * n + j];

        let mut right = Vec::new();
        let mut left_flags = vec![false; self.vectors.len()];
        let mut left = Vec::new();
        let mut right_flags = vec![false; self.vectors.len()];
        for (idx, vec) in self.vectors.iter().enumerate() {
            let kills_right = (0..n).all(|i| {
                (0..n).fold(r.zero(), |acc, k| r.add(acc, r.mul(at(i, k), vec[k]))) == r.zero()
            });
            let kills_left = (0..n).all(|j| {
                (0..n).fold(r.zero(), |acc, k| r.add(acc, r.mul(vec[k], at(k, j)))) == r.zero()
            });
            if kills_right {
                right.push(idx);
                right_flags[idx] = true;
            }
            if kills_left {
                left.push(idx);
                left_flags[idx] = true;
            }
        }

        // enumerate the smaller side, filter by the other
        let by_columns = right.len() <= left.len();
        let (pool, check) = if by_columns {
            (&right, &left_flags)
        } else {
            (&left, &right_flags)
        };
        let mut out = Vec::new();
        let mut choice = vec![0usize; n];
        let mut b = vec![Element::ZERO; n * n];
        'outer: loop {
            for (slot, &c) in choice.iter().enumerate() {
                let vec = &self.vectors[pool[c]];
                for (k, &e) in vec.iter().enumerate() {
                    if by_columns {
                        b[k * n + slot] = e;
                    } else {
                        b[slot * n + k] = e;
                    }
                }
            }
            let fits = (0..n).all(|k| {
                let idx = if by_columns {
                    self.vector_index((0..n).map(|j| b[k * n + j]))
                } else {
                    self.vector_index((0..n).map(|i| b[i * n + k]))
                };
                check[idx]
            });
            if fits {
                let id = self.encode(&b);
                if id != 0 && id != self.vertex_ids[v] {
                    let w = self.index_of[id as usize];
                    debug_assert_ne!(w, UNREACHED);
                    out.push(w);
                }
            }
            for slot in (0..n).rev() {
                choice[slot] += 1;
                if choice[slot] < pool.len() {
                    continue 'outer;
                }
                choice[slot] = 0;
            }
            break;
        }
        out.sort_unstable();
        out
    }

    fn neighbor_indices(&self, v: usize) -> Cow<'_, [u32]> {
        match &self.adjacency {
            Some(adj) => Cow::Borrowed(&adj.targets[adj.offsets[v]..adj.offsets[v + 1]]),
            None => Cow::Owned(self.generate_neighbors(v)),
        }
    }

    /// `O_S(A)`: vertices orthogonal to `a`, excluding `a`.
    pub fn neighbors(&self, a: &Matrix) -> Result<Vec<Matrix>, GraphError> {
        let v = self.index(a)?;
        Ok(self
            .neighbor_indices(v)
            .iter()
            .map(|&w| self.matrix(w as usize))
            .collect())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbor_indices(v).len()
    }

    /// Breadth-first search from `source`, stopping early once `stop` accepts
    /// a reached vertex. Returns the distances and the stopping vertex.
    fn bfs(&self, source: usize, stop: impl Fn(usize) -> bool) -> (Vec<u32>, Option<usize>) {
        let mut dist = vec![UNREACHED; self.vertex_count()];
        dist[source] = 0;
        if stop(source) {
            return (dist, Some(source));
        }
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let next = dist[u] + 1;
            for &w in self.neighbor_indices(u).iter() {
                let w = w as usize;
                if dist[w] == UNREACHED {
                    dist[w] = next;
                    if stop(w) {
                        return (dist, Some(w));
                    }
                    queue.push_back(w);
                }
            }
        }
        (dist, None)
    }

    fn eccentricity(&self, source: usize) -> (u32, usize) {
        let (dist, _) = self.bfs(source, |_| false);
        dist.iter()
            .filter(|&&d| d != UNREACHED)
            .fold((0, 0), |(ecc, reached), &d| (ecc.max(d), reached + 1))
    }

    pub fn distance(&self, a: &Matrix, b: &Matrix) -> Result<Distance, GraphError> {
        let (s, t) = (self.index(a)?, self.index(b)?);
        let (dist, _) = self.bfs(s, |w| w == t);
        Ok(match dist[t] {
            UNREACHED => Distance::Infinite,
            d => Distance::Finite(d),
        })
    }

    /// `min_b d(A, bE)` over the scalar vertices `bE`, `b ∈ Z_R*`.
    pub fn distance_to_scalars(&self, a: &Matrix) -> Result<Distance, GraphError> {
        let s = self.index(a)?;
        if self.ring.nonzero_zero_divisors().is_empty() {
            return Err(GraphError::NoScalarVertices);
        }
        let (dist, hit) = self.bfs(s, |w| self.is_scalar_vertex(w));
        Ok(match hit {
            Some(w) => Distance::Finite(dist[w]),
            None => Distance::Infinite,
        })
    }

    /// All-sources BFS: exact diameter, radius and connectivity.
    pub fn analyze(&self) -> GraphReport {
        let count = self.vertex_count();
        let per_source = map_range(self.exec, 0..count, |s| self.eccentricity(s));
        let eccentricities: Vec<u32> = per_source.iter().map(|&(e, _)| e).collect();
        let edge_count = map_range(self.exec, 0..count, |v| self.degree(v))
            .into_iter()
            .sum::<usize>()
            / 2;

        // connected components by repeated BFS, labelled in vertex order
        let mut component = vec![UNREACHED; count];
        let mut components = Vec::new();
        for s in 0..count {
            if component[s] != UNREACHED {
                continue;
            }
            let label = components.len() as u32;
            let (dist, _) = self.bfs(s, |_| false);
            let mut size = 0;
            let (mut diam, mut rad) = (0, u32::MAX);
            for (v, &d) in dist.iter().enumerate() {
                if d != UNREACHED {
                    component[v] = label;
                    size += 1;
                    diam = diam.max(eccentricities[v]);
                    rad = rad.min(eccentricities[v]);
                }
            }
            components.push(ComponentSummary {
                representative: self.matrix(s).literal(),
                size,
                diameter: diam,
                radius: rad,
            });
        }

        let connected = components.len() <= 1;
        let mut histogram = BTreeMap::new();
        for &e in &eccentricities {
            *histogram.entry(e).or_insert(0usize) += 1;
        }

        let (diameter, radius, diameter_witness, center_witness) = if count == 0 {
            (None, None, None, None)
        } else if connected {
            let diam = *eccentricities.iter().max().unwrap();
            let rad = *eccentricities.iter().min().unwrap();
            let u = eccentricities.iter().position(|&e| e == diam).unwrap();
            let (dist, _) = self.bfs(u, |_| false);
            let w = dist.iter().position(|&d| d == diam).unwrap();
            let c = eccentricities.iter().position(|&e| e == rad).unwrap();
            (
                Some(Distance::Finite(diam)),
                Some(Distance::Finite(rad)),
                Some((self.matrix(u).literal(), self.matrix(w).literal())),
                Some(self.matrix(c).literal()),
            )
        } else {
            let other = component.iter().position(|&c| c == 1).unwrap();
            (
                Some(Distance::Infinite),
                Some(Distance::Infinite),
                Some((self.matrix(0).literal(), self.matrix(other).literal())),
                None,
            )
        };

        GraphReport {
            ring: self.ring.to_string(),
            n: self.n,
            vertex_count: count,
            edge_count,
            connected,
            diameter,
            radius,
            diameter_witness,
            center_witness,
            eccentricity_histogram: histogram,
            components,
        }
    }

    /// Sorted edge list over dense vertex indices, lower index first.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let lists = map_range(self.exec, 0..self.vertex_count(), |v| {
            self.neighbor_indices(v)
                .iter()
                .filter(|&&w| w as usize > v)
                .map(|&w| (v as u32, w))
                .collect::<Vec<_>>()
        });
        lists.into_iter().flatten().collect()
    }

    pub fn export(&self, format: ExportFormat) -> Result<String, GraphError> {
        if self.vertex_count() > self.limits.export_vertices {
            return Err(GraphError::ExportTooLarge {
                vertices: self.vertex_count(),
                cap: self.limits.export_vertices,
            });
        }
        let literals: Vec<String> = self.vertices().map(|m| m.literal()).collect();
        let edges = self.edges();
        Ok(match format {
            ExportFormat::Dot => {
                let mut out = format!("graph \"O(M_{}({}))\" {{\n", self.n, self.ring);
                for (i, lit) in literals.iter().enumerate() {
                    out.push_str(&format!("  v{i} [label=\"{lit}\"];\n"));
                }
                for (u, w) in &edges {
                    out.push_str(&format!("  v{u} -- v{w};\n"));
                }
                out.push_str("}\n");
                out
            }
            ExportFormat::Json => {
                let doc = ExportDocument {
                    ring: self.ring.to_string(),
                    n: self.n,
                    vertices: literals,
                    edges: edges.into_iter().map(|(u, w)| [u, w]).collect(),
                };
                let mut s = serde_json::to_string(&doc).expect("serializable export");
                s.push('\n');
                s
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

#[derive(Serialize)]
struct ExportDocument {
    ring: String,
    n: usize,
    vertices: Vec<String>,
    edges: Vec<[u32; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    /// Lowest-id vertex of the component.
    pub representative: String,
    pub size: usize,
    pub diameter: u32,
    pub radius: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphReport {
    pub ring: String,
    pub n: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub connected: bool,
    /// `None` for the empty graph.
    pub diameter: Option<Distance>,
    pub radius: Option<Distance>,
    pub diameter_witness: Option<(String, String)>,
    pub center_witness: Option<String>,
    /// Eccentricity (within the vertex's component) -> number of vertices.
    pub eccentricity_histogram: BTreeMap<u32, usize>,
    pub components: Vec<ComponentSummary>,
}

impl GraphReport {
    /// `rad ≤ diam ≤ 2 rad` whenever both are finite.
    pub fn radius_bounds_hold(&self) -> bool {
        match (self.radius.and_then(Distance::finite), self.diameter.and_then(Distance::finite)) {
            (Some(r), Some(d)) => r <= d && d <= 2 * r,
            _ => true,
        }
    }
}

impl fmt::Display for GraphReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "O(M_{}({})): {} vertices, {} edges, ",
            self.n, self.ring, self.vertex_count, self.edge_count
        )?;
        match (self.diameter, self.radius) {
            (None, _) | (_, None) => write!(f, "empty graph"),
            (Some(d), Some(r)) if self.connected => {
                write!(f, "connected, diameter={d}, radius={r}")
            }
            _ => {
                let worst = self.components.iter().map(|c| c.diameter).max().unwrap_or(0);
                write!(
                    f,
                    "disconnected, {} components, max component diameter={worst}",
                    self.components.len()
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_ring, RingSpec};

    fn z(m: u64) -> Ring {
        build_ring(&RingSpec::modular(m)).unwrap()
    }

    fn mat(r: &Ring, rows: &[&[usize]]) -> Matrix {
        Matrix::from_indices(r, rows).unwrap()
    }

    /// Neighbours by scanning every vertex.
    fn scan_neighbors(g: &GraphHandle, a: &Matrix) -> Vec<Matrix> {
        g.vertices()
            .filter(|b| b != a && a.is_orthogonal_to(b).unwrap())
            .collect()
    }

    #[test]
    fn vertex_sets() {
        let g = GraphHandle::new(&z(2), 1).unwrap();
        assert_eq!(g.vertex_count(), 0);
        let z4 = z(4);
        let g = GraphHandle::new(&z4, 1).unwrap();
        let v: Vec<String> = g.vertices().map(|m| m.literal()).collect();
        assert_eq!(v, ["2"]);
        let g = GraphHandle::new(&z4, 2).unwrap();
        let filtered = (0..256u64)
            .filter(|&id| {
                let e: Vec<usize> = (0..4).rev().map(|k| ((id >> (2 * k)) & 3) as usize).collect();
                let m = mat(&z4, &[&e[..2], &e[2..]]);
                !m.is_zero() && z4.is_zero_divisor(m.determinant().unwrap())
            })
            .count();
        assert_eq!(g.vertex_count(), filtered);
    }

    #[test]
    fn vertex_ids_are_row_major() {
        let z4 = z(4);
        let g = GraphHandle::new(&z4, 2).unwrap();
        // [[0,0],[0,1]] is the smallest nonzero candidate and a vertex
        assert_eq!(g.vertex_id(0), 1);
        assert_eq!(g.matrix(0), mat(&z4, &[&[0, 0], &[0, 1]]));
        let ids: Vec<u64> = (0..g.vertex_count()).map(|v| g.vertex_id(v)).collect();
        assert!(ids.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn neighbor_examples() {
        let z6 = z(6);
        let g = GraphHandle::new(&z6, 2).unwrap();
        let a = mat(&z6, &[&[0, 1], &[2, 0]]);
        assert_eq!(g.neighbors(&a).unwrap(), vec![mat(&z6, &[&[0, 3], &[0, 0]])]);

        let z4 = z(4);
        let g = GraphHandle::new(&z4, 2).unwrap();
        let two_e = mat(&z4, &[&[2, 0], &[0, 2]]);
        let nb = g.neighbors(&two_e).unwrap();
        assert_eq!(nb.len(), 14); // 15 nonzero {0,2}-matrices minus 2E itself
        assert!(nb.iter().all(|b| b.entries().iter().all(|e| e.index() % 2 == 0)));
        let e11 = Matrix::matrix_unit(&z4, 1, 1, 2).unwrap();
        let e22 = Matrix::matrix_unit(&z4, 2, 2, 2).unwrap();
        assert!(g.neighbors(&e11).unwrap().contains(&e22));
        assert!(matches!(
            g.neighbors(&Matrix::identity(&z4, 2)),
            Err(GraphError::NotAVertex(_))
        ));
    }

    #[test]
    fn generated_neighbors_match_scan() {
        for (m, n) in [(4, 2), (6, 2), (2, 3), (9, 1)] {
            let r = z(m);
            let g = GraphHandle::new(&r, n).unwrap();
            for a in g.vertices() {
                assert_eq!(g.neighbors(&a).unwrap(), scan_neighbors(&g, &a), "{a:?}");
            }
        }
    }

    #[test]
    fn uncached_adjacency_agrees() {
        let z4 = z(4);
        let cached = GraphHandle::new(&z4, 2).unwrap();
        let limits = Limits {
            adjacency_cache: 0,
            ..Limits::default()
        };
        let lazy = GraphHandle::with_options(&z4, 2, limits, Execution::Sequential).unwrap();
        assert!(lazy.adjacency.is_none());
        assert_eq!(cached.analyze(), lazy.analyze());
    }

    #[test]
    fn distances() {
        let z4 = z(4);
        let g = GraphHandle::new(&z4, 2).unwrap();
        let a = mat(&z4, &[&[0, 1], &[2, 0]]);
        assert_eq!(g.distance(&a, &a).unwrap(), Distance::Finite(0));
        assert_eq!(g.distance(&a, &a.transpose()).unwrap(), Distance::Finite(3));
        let two_e = Matrix::scalar(&z4, z4.element(2).unwrap(), 2);
        assert_eq!(g.distance_to_scalars(&two_e).unwrap(), Distance::Finite(0));
        let b = mat(&z4, &[&[2, 0], &[0, 0]]);
        assert_eq!(g.distance_to_scalars(&b).unwrap(), Distance::Finite(1));

        let z6 = z(6);
        let g = GraphHandle::new(&z6, 2).unwrap();
        let a = mat(&z6, &[&[0, 1], &[2, 0]]);
        assert_eq!(g.distance(&a, &a.transpose()).unwrap(), Distance::Finite(4));
    }

    #[test]
    fn analyze_small_cases() {
        let report = GraphHandle::new(&z(4), 2).unwrap().analyze();
        assert!(report.connected);
        assert_eq!(report.diameter, Some(Distance::Finite(3)));
        assert_eq!(report.radius, Some(Distance::Finite(2)));
        assert!(report.radius_bounds_hold());

        let report = GraphHandle::new(&z(2), 2).unwrap().analyze();
        assert!(!report.connected);
        assert_eq!(report.diameter, Some(Distance::Infinite));
        assert!(report.components.iter().all(|c| c.diameter <= 2));

        let report = GraphHandle::new(&z(5), 1).unwrap().analyze();
        assert_eq!(report.vertex_count, 0);
        assert_eq!(report.diameter, None);
    }

    #[test]
    fn sequential_and_parallel_reports_agree() {
        let z6 = z(6);
        let seq = GraphHandle::with_options(&z6, 2, Limits::default(), Execution::Sequential)
            .unwrap()
            .analyze();
        let par = GraphHandle::with_options(&z6, 2, Limits::default(), Execution::Parallel)
            .unwrap()
            .analyze();
        assert_eq!(seq, par);
    }

    #[test]
    fn caps() {
        let limits = Limits {
            max_candidates: 100,
            ..Limits::default()
        };
        assert!(matches!(
            GraphHandle::with_options(&z(4), 2, limits, Execution::Sequential),
            Err(GraphError::TooLarge { .. })
        ));
        let limits = Limits {
            export_vertices: 10,
            ..Limits::default()
        };
        let g = GraphHandle::with_options(&z(4), 2, limits, Execution::Sequential).unwrap();
        assert!(matches!(
            g.export(ExportFormat::Dot),
            Err(GraphError::ExportTooLarge { .. })
        ));
    }

    #[test]
    fn exports() {
        let g = GraphHandle::new(&z(4), 1).unwrap();
        assert_eq!(
            g.export(ExportFormat::Dot).unwrap(),
            "graph \"O(M_1(Z4))\" {\n  v0 [label=\"2\"];\n}\n"
        );
        assert_eq!(
            g.export(ExportFormat::Json).unwrap(),
            "{\"ring\":\"Z4\",\"n\":1,\"vertices\":[\"2\"],\"edges\":[]}\n"
        );
        let empty = GraphHandle::new(&z(5), 1).unwrap();
        assert_eq!(
            empty.export(ExportFormat::Json).unwrap(),
            "{\"ring\":\"Z5\",\"n\":1,\"vertices\":[],\"edges\":[]}\n"
        );

        let g = GraphHandle::new(&z(4), 2).unwrap();
        let dot = g.export(ExportFormat::Dot).unwrap();
        let degree_sum: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
        assert_eq!(dot.matches(" -- ").count() * 2, degree_sum);
        assert_eq!(dot, g.export(ExportFormat::Dot).unwrap());
    }
}
