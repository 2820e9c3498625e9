//! Exhaustive enumeration of the polyhedral complexes `T_μ`, `Q⁺_μ` and the
//! canonical section at desk scale.
//!
//! Vertices of `T_μ` are vertices of `P_μ` at which every coordinate is zero
//! or covered by a tight coupling edge. Such a vertex is pinned down by a
//! spanning forest of tight edges in which every tree contains a zero
//! coordinate, so vertices are generated by growing these forests node by
//! node from a zero root. Entries are scaled to integers first.
//!
//! Faces are identified by their tight sets (coupling edges plus zero
//! coordinates). A face of `P_μ` lies in `T_μ` exactly when its tight set
//! covers every node by an edge or a zero, which is also the condition for the
//! face to be bounded. Faces are built by joining known faces with vertices.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::hash::Hash;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exec;
use crate::geometry::{dinf, Component, EqualityGraph, ExtPoint};
use crate::linalg;
use crate::metric::DirectedDistance;
use crate::rational::{self, Rational};

pub const DEFAULT_CAP: usize = 5;
/// Tight sets are stored in a `u128`: `n²` edge bits plus `2n` zero bits.
const MASK_LIMIT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComplexKind {
    TightSpan,
    Qplus,
    Section,
}

impl ComplexKind {
    pub fn name(self) -> &'static str {
        match self {
            ComplexKind::TightSpan => "T",
            ComplexKind::Qplus => "Qplus",
            ComplexKind::Section => "Section",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub cap: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Indices into [`PolyComplex::vertices`].
    pub vertices: Vec<usize>,
    /// Coupling pairs `(s, t)` tight on the whole face.
    pub edges: Vec<(usize, usize)>,
    /// Flat node indices that are zero on the whole face.
    pub zeros: Vec<usize>,
    /// Components of the equality graph with no zero node; each spans one
    /// direction `(1_{A^c}, -1_{B^r})` of the face.
    pub directions: Vec<Component>,
    pub dim: usize,
    pub bounded: bool,
    pub maximal: bool,
    mask: u128,
}

impl Face {
    pub fn tight_mask(&self) -> u128 {
        self.mask
    }
}

#[derive(Clone, Debug)]
pub struct PolyComplex {
    pub kind: ComplexKind,
    pub n: usize,
    pub vertices: Vec<ExtPoint>,
    /// Sorted by dimension, then by vertex list.
    pub faces: Vec<Face>,
    /// Pairs `(g, f)` of face indices where `g` is a facet of `f`.
    pub incidence: Vec<(usize, usize)>,
}

impl PolyComplex {
    pub fn dim(&self) -> usize {
        self.faces.iter().map(|f| f.dim).max().unwrap_or(0)
    }

    pub fn faces_of_dim(&self, d: usize) -> impl Iterator<Item = (usize, &Face)> {
        self.faces.iter().enumerate().filter(move |(_, f)| f.dim == d)
    }

    pub fn maximal_faces(&self) -> impl Iterator<Item = (usize, &Face)> {
        self.faces.iter().enumerate().filter(|(_, f)| f.maximal)
    }

    /// Number of faces in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim() + 1];
        for face in &self.faces {
            f[face.dim] += 1;
        }
        f
    }

    /// Faces on which both `s^c` and `s^r` vanish (the local complex at `s`).
    pub fn local_faces(&self, s: usize) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&i| {
                let z = &self.faces[i].zeros;
                z.contains(&s) && z.contains(&(self.n + s))
            })
            .collect()
    }

    /// Average of the vertices of a face, a relative-interior point.
    pub fn barycenter(&self, face: usize) -> ExtPoint {
        let vs = &self.faces[face].vertices;
        let k = Rational::from_integer(BigInt::from(vs.len()));
        let mut acc = ExtPoint::zero(self.n);
        for &v in vs {
            acc = acc.add_scaled(&self.vertices[v], &(Rational::from_integer(1.into()) / &k));
        }
        acc
    }

    /// Affine dimension of the vertex set of a face.
    pub fn affine_dim(&self, face: usize) -> usize {
        let pts: Vec<Vec<Rational>> =
            self.faces[face].vertices.iter().map(|&v| self.vertices[v].to_vec()).collect();
        linalg::affine_dimension(&pts)
    }

    fn vertex_face_index(&self) -> BTreeMap<usize, usize> {
        self.faces_of_dim(0).map(|(i, f)| (f.vertices[0], i)).collect()
    }

    /// Directed 1-skeleton; requires a complex of dimension at most 1.
    pub fn skeleton(&self) -> Result<SkeletonGraph> {
        if self.dim() > 1 {
            return Err(Error::DimensionTooHigh(self.dim()));
        }
        let mut edges = Vec::new();
        for (_, f) in self.faces_of_dim(1) {
            let (a, b) = (f.vertices[0], f.vertices[1]);
            let (p, q) = (&self.vertices[a], &self.vertices[b]);
            let forward = dinf(p, q)?;
            let backward = dinf(q, p)?;
            let edge = match (forward.is_zero(), backward.is_zero()) {
                (false, true) => SkeletonEdge { tail: a, head: b, length: forward },
                (true, false) => SkeletonEdge { tail: b, head: a, length: backward },
                _ => {
                    return Err(Error::Internal(format!(
                        "1-face {a}-{b} has D∞ lengths {forward} and {backward}"
                    )))
                }
            };
            edges.push(edge);
        }
        edges.sort_by_key(|x| (x.tail, x.head));
        Ok(SkeletonGraph { vertices: self.vertices.clone(), edges })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonEdge {
    pub tail: usize,
    pub head: usize,
    pub length: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonGraph {
    pub vertices: Vec<ExtPoint>,
    pub edges: Vec<SkeletonEdge>,
}

pub fn skeleton_graph(complex: &PolyComplex) -> Result<SkeletonGraph> {
    complex.skeleton()
}

pub fn enumerate_tight_span(mu: &DirectedDistance) -> Result<PolyComplex> {
    enumerate_tight_span_with(mu, &EnumOptions::default())
}

pub fn enumerate_qplus(mu: &DirectedDistance) -> Result<PolyComplex> {
    enumerate_qplus_with(mu, &EnumOptions::default())
}

pub fn enumerate_section(mu: &DirectedDistance) -> Result<PolyComplex> {
    enumerate_section_with(mu, &EnumOptions::default())
}

pub fn enumerate_tight_span_with(mu: &DirectedDistance, opts: &EnumOptions) -> Result<PolyComplex> {
    check_size(mu, opts)?;
    let vertices = tight_span_vertices(mu);
    Ok(assemble(mu, ComplexKind::TightSpan, vertices, |_| true))
}

pub fn enumerate_qplus_with(mu: &DirectedDistance, opts: &EnumOptions) -> Result<PolyComplex> {
    let t = enumerate_tight_span_with(mu, opts)?;
    Ok(restrict(mu, &t, ComplexKind::Qplus))
}

pub fn enumerate_section_with(mu: &DirectedDistance, opts: &EnumOptions) -> Result<PolyComplex> {
    let t = enumerate_tight_span_with(mu, opts)?;
    Ok(restrict(mu, &t, ComplexKind::Section))
}

/// All three complexes from a single vertex enumeration.
pub fn enumerate_all(
    mu: &DirectedDistance,
    opts: &EnumOptions,
) -> Result<(PolyComplex, PolyComplex, PolyComplex)> {
    let t = enumerate_tight_span_with(mu, opts)?;
    let q = restrict(mu, &t, ComplexKind::Qplus);
    let r = restrict(mu, &t, ComplexKind::Section);
    Ok((t, q, r))
}

fn check_size(mu: &DirectedDistance, opts: &EnumOptions) -> Result<()> {
    let cap = opts.cap.min(MASK_LIMIT);
    if mu.n() > cap {
        return Err(Error::GroundSetTooLarge { size: mu.n(), cap });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// vertices

trait Scalar: Clone + Ord + Hash + Send + Sync + Zero + Add<Output = Self> + Sub<Output = Self> {}
impl<T> Scalar for T where
    T: Clone + Ord + Hash + Send + Sync + Zero + Add<Output = T> + Sub<Output = T>
{
}

/// Vertices of `T_μ`, sorted.
pub fn tight_span_vertices(mu: &DirectedDistance) -> Vec<ExtPoint> {
    let n = mu.n();
    let scale = rational::common_denominator((0..n).flat_map(|s| (0..n).map(move |t| (s, t))).map(|(s, t)| mu.get(s, t)));
    let scaled: Vec<BigInt> = (0..n * n)
        .map(|i| (mu.get(i / n, i % n) * Rational::from_integer(scale.clone())).to_integer())
        .collect();
    let small = scaled.iter().all(|v| v.bits() < 90);
    let raw: Vec<Vec<BigInt>> = if small {
        let w: Vec<i128> = scaled.iter().map(|v| v.to_i128().expect("fits")).collect();
        forest_vertices(n, &w).into_iter().map(|v| v.into_iter().map(BigInt::from).collect()).collect()
    } else {
        forest_vertices(n, &scaled)
    };
    let denom = Rational::from_integer(scale);
    let mut out: Vec<ExtPoint> = raw
        .into_iter()
        .map(|v| {
            let vals: Vec<Rational> = v.into_iter().map(|x| Rational::from_integer(x) / &denom).collect();
            ExtPoint { col: vals[..n].to_vec(), row: vals[n..].to_vec() }
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn forest_vertices<T: Scalar>(n: usize, w: &[T]) -> Vec<Vec<T>> {
    let per_root = exec::map_range(0..2 * n, |r| {
        let mut state: Vec<Option<T>> = vec![None; 2 * n];
        state[r] = Some(T::zero());
        let mut search = ForestSearch { n, w, root: r, seen: HashSet::new(), found: BTreeSet::new() };
        search.seen.insert(state.clone());
        search.grow(&mut state);
        search.found
    });
    let mut all = BTreeSet::new();
    for found in per_root {
        all.extend(found);
    }
    all.into_iter().collect()
}

struct ForestSearch<'a, T> {
    n: usize,
    w: &'a [T],
    /// Smallest zero node; nodes below it must stay positive.
    root: usize,
    seen: HashSet<Vec<Option<T>>>,
    found: BTreeSet<Vec<T>>,
}

impl<T: Scalar> ForestSearch<'_, T> {
    fn weight(&self, u: usize, v: usize) -> &T {
        let n = self.n;
        if u < n {
            &self.w[u * n + (v - n)]
        } else {
            &self.w[v * n + (u - n)]
        }
    }

    fn opposite(&self, u: usize) -> std::ops::Range<usize> {
        if u < self.n {
            self.n..2 * self.n
        } else {
            0..self.n
        }
    }

    fn grow(&mut self, state: &mut Vec<Option<T>>) {
        if state.iter().all(Option::is_some) {
            self.found.insert(state.iter().map(|v| v.clone().unwrap()).collect());
            return;
        }
        let zero = T::zero();
        for u in 0..2 * self.n {
            if state[u].is_some() {
                continue;
            }
            let mut candidates: Vec<T> = Vec::new();
            if u > self.root {
                candidates.push(zero.clone());
            }
            for v in self.opposite(u) {
                if let Some(pv) = &state[v] {
                    let c = self.weight(u, v).clone() - pv.clone();
                    if c > zero || (c == zero && u > self.root) {
                        candidates.push(c);
                    }
                }
            }
            candidates.sort();
            candidates.dedup();
            for c in candidates {
                let feasible = self.opposite(u).all(|v| match &state[v] {
                    Some(pv) => c.clone() + pv.clone() >= *self.weight(u, v),
                    None => true,
                });
                if !feasible {
                    continue;
                }
                state[u] = Some(c);
                if !self.seen.contains(state) {
                    self.seen.insert(state.clone());
                    self.grow(state);
                }
                state[u] = None;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// faces

struct Masks {
    n: usize,
}

impl Masks {
    fn edge_bit(&self, s: usize, t: usize) -> u128 {
        1u128 << (s * self.n + t)
    }

    fn zero_bit(&self, node: usize) -> u128 {
        1u128 << (self.n * self.n + node)
    }

    fn of_point(&self, mu: &DirectedDistance, p: &ExtPoint) -> u128 {
        let n = self.n;
        let mut m = 0u128;
        for s in 0..n {
            for t in 0..n {
                if &p.col[s] + &p.row[t] == *mu.get(s, t) {
                    m |= self.edge_bit(s, t);
                }
            }
        }
        for u in 0..2 * n {
            if p.coord(u).is_zero() {
                m |= self.zero_bit(u);
            }
        }
        m
    }

    fn edges(&self, mask: u128) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut e = Vec::new();
        for s in 0..n {
            for t in 0..n {
                if mask & self.edge_bit(s, t) != 0 {
                    e.push((s, t));
                }
            }
        }
        e
    }

    fn zeros(&self, mask: u128) -> Vec<usize> {
        (0..2 * self.n).filter(|&u| mask & self.zero_bit(u) != 0).collect()
    }

    /// Nodes covered by a tight edge.
    fn covered(&self, mask: u128) -> Vec<bool> {
        let n = self.n;
        let mut c = vec![false; 2 * n];
        for (s, t) in self.edges(mask) {
            c[s] = true;
            c[n + t] = true;
        }
        c
    }

    /// Every node zero or covered: the face lies in `T_μ` and is bounded.
    fn in_tight_span(&self, mask: u128) -> bool {
        let c = self.covered(mask);
        (0..2 * self.n).all(|u| c[u] || mask & self.zero_bit(u) != 0)
    }

    fn in_qplus(&self, mask: u128) -> bool {
        self.covered(mask).into_iter().all(|b| b)
    }

    fn in_section(&self, mask: u128) -> bool {
        self.in_qplus(mask) && (self.n..2 * self.n).any(|u| mask & self.zero_bit(u) != 0)
    }
}

fn assemble(
    mu: &DirectedDistance,
    kind: ComplexKind,
    vertices: Vec<ExtPoint>,
    keep: impl Fn(u128) -> bool,
) -> PolyComplex {
    let n = mu.n();
    let masks = Masks { n };
    let vmasks: Vec<u128> = vertices.iter().map(|p| masks.of_point(mu, p)).collect();
    let closure = |tau: u128| -> u128 {
        vmasks.iter().filter(|&&m| m & tau == tau).fold(!0u128, |acc, &m| acc & m)
    };

    let mut known: BTreeSet<u128> = vmasks.iter().copied().collect();
    let mut frontier: Vec<u128> = known.iter().copied().collect();
    while !frontier.is_empty() {
        let joins: Vec<Vec<u128>> = exec::map_slice(&frontier, |&tau| {
            vmasks
                .iter()
                .filter(|&&m| m & tau != tau)
                .map(|&m| tau & m)
                .filter(|&j| masks.in_tight_span(j))
                .map(closure)
                .collect()
        });
        let mut next = Vec::new();
        for j in joins.into_iter().flatten() {
            if known.insert(j) {
                next.push(j);
            }
        }
        frontier = next;
    }

    let mut faces: Vec<Face> = known
        .into_iter()
        .filter(|&m| keep(m))
        .map(|mask| {
            let verts: Vec<usize> =
                (0..vertices.len()).filter(|&i| vmasks[i] & mask == mask).collect();
            let edges = masks.edges(mask);
            let zeros = masks.zeros(mask);
            let graph = EqualityGraph::from_edges(n, edges.clone());
            let directions: Vec<Component> = graph
                .components()
                .into_iter()
                .filter(|c| {
                    c.cols.iter().all(|s| !zeros.contains(s))
                        && c.rows.iter().all(|t| !zeros.contains(&(n + t)))
                })
                .collect();
            Face {
                vertices: verts,
                dim: directions.len(),
                bounded: masks.in_tight_span(mask),
                directions,
                edges,
                zeros,
                maximal: false,
                mask,
            }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
    finish(kind, n, vertices, faces)
}

fn finish(kind: ComplexKind, n: usize, vertices: Vec<ExtPoint>, mut faces: Vec<Face>) -> PolyComplex {
    let contains = |big: &Face, small: &Face| big.mask & small.mask == big.mask && big.mask != small.mask;
    let mut incidence = Vec::new();
    for (i, small) in faces.iter().enumerate() {
        for (j, big) in faces.iter().enumerate() {
            if big.dim == small.dim + 1 && contains(big, small) {
                incidence.push((i, j));
            }
        }
    }
    let maximal: Vec<bool> =
        (0..faces.len()).map(|i| !faces.iter().any(|g| contains(g, &faces[i]))).collect();
    for (f, m) in faces.iter_mut().zip(maximal) {
        f.maximal = m;
    }
    PolyComplex { kind, n, vertices, faces, incidence }
}

/// Subcomplex of `T_μ` given by `Q⁺_μ` or the canonical section, with its own
/// vertex numbering.
fn restrict(mu: &DirectedDistance, t: &PolyComplex, kind: ComplexKind) -> PolyComplex {
    let masks = Masks { n: mu.n() };
    let keep = |m: u128| match kind {
        ComplexKind::TightSpan => true,
        ComplexKind::Qplus => masks.in_qplus(m),
        ComplexKind::Section => masks.in_section(m),
    };
    let vface = t.vertex_face_index();
    let kept_vertices: Vec<usize> = (0..t.vertices.len())
        .filter(|v| vface.get(v).is_some_and(|&f| keep(t.faces[f].mask)))
        .collect();
    let renumber: BTreeMap<usize, usize> =
        kept_vertices.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let mut faces: Vec<Face> = t
        .faces
        .iter()
        .filter(|f| keep(f.mask))
        .map(|f| {
            let mut g = f.clone();
            g.vertices = f.vertices.iter().map(|v| renumber[v]).collect();
            g
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
    let vertices = kept_vertices.iter().map(|&v| t.vertices[v].clone()).collect();
    finish(kind, t.n, vertices, faces)
}
