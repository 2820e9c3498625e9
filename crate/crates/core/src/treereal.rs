//! Oriented trees, directed tree distances, realizations of directed
//! distances by subtree families, and split decompositions.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rand::Rng;

use crate::complex::{enumerate_section_with, enumerate_tight_span_with, EnumOptions, PolyComplex};
use crate::error::{Error, Result};
use crate::metric::{check_directed_tree_metric, DirectedDistance, GroundSet};
use crate::random::{rng, SeededRng};
use crate::rank::{dim_tight_span, tropical_rank};
use crate::rational::{int, ratio, Rational};

/// Ground-set cap used by the realization constructors.
pub const REALIZE_CAP: usize = 6;

/// A directed graph whose underlying undirected graph is a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedTree {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl OrientedTree {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::NotATree("no vertices".into()));
        }
        if edges.len() + 1 != num_vertices {
            return Err(Error::NotATree(format!("{} vertices but {} edges", num_vertices, edges.len())));
        }
        for &(x, y) in &edges {
            if x >= num_vertices || y >= num_vertices {
                return Err(Error::UnknownVertex(x.max(y)));
            }
        }
        let tree = Self { num_vertices, edges };
        let all: Vec<usize> = (0..num_vertices).collect();
        if !tree.is_connected_subset(&all) {
            return Err(Error::NotATree("underlying graph is disconnected".into()));
        }
        Ok(tree)
    }

    pub fn single_vertex() -> Self {
        Self { num_vertices: 1, edges: Vec::new() }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `(neighbor, edge index, forward)` for each edge at `x`.
    fn incident(&self, x: usize) -> impl Iterator<Item = (usize, usize, bool)> + '_ {
        self.edges.iter().enumerate().filter_map(move |(i, &(a, b))| {
            if a == x {
                Some((b, i, true))
            } else if b == x {
                Some((a, i, false))
            } else {
                None
            }
        })
    }

    fn check_vertex(&self, x: usize) -> Result<()> {
        if x < self.num_vertices {
            Ok(())
        } else {
            Err(Error::UnknownVertex(x))
        }
    }

    /// Edges of the undirected path from `x` to `y`, each flagged with
    /// whether it points from `x` towards `y`.
    pub fn path(&self, x: usize, y: usize) -> Result<Vec<(usize, bool)>> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        let mut via: Vec<Option<(usize, usize, bool)>> = vec![None; self.num_vertices];
        let mut seen = vec![false; self.num_vertices];
        let mut stack = vec![x];
        seen[x] = true;
        while let Some(v) = stack.pop() {
            for (w, e, fwd) in self.incident(v) {
                if !seen[w] {
                    seen[w] = true;
                    via[w] = Some((v, e, fwd));
                    stack.push(w);
                }
            }
        }
        let mut out = Vec::new();
        let mut v = y;
        while v != x {
            let (prev, e, fwd) = via[v].expect("tree is connected");
            out.push((e, fwd));
            v = prev;
        }
        out.reverse();
        Ok(out)
    }

    /// Whether the vertex set induces a connected subgraph.
    pub fn is_connected_subset(&self, vertices: &[usize]) -> bool {
        let set: BTreeSet<usize> = vertices.iter().copied().collect();
        let Some(&start) = set.iter().next() else { return false };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for (w, _, _) in self.incident(v) {
                if set.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == set.len()
    }

    /// Whether the induced subgraph on `vertices` is a directed path: connected,
    /// with in- and out-degree at most one everywhere.
    pub fn is_directed_path_subset(&self, vertices: &[usize]) -> bool {
        if !self.is_connected_subset(vertices) {
            return false;
        }
        let set: BTreeSet<usize> = vertices.iter().copied().collect();
        let mut indeg = vec![0usize; self.num_vertices];
        let mut outdeg = vec![0usize; self.num_vertices];
        for &(a, b) in &self.edges {
            if set.contains(&a) && set.contains(&b) {
                outdeg[a] += 1;
                indeg[b] += 1;
            }
        }
        set.iter().all(|&v| indeg[v] <= 1 && outdeg[v] <= 1)
    }

    pub fn is_directed_path(&self) -> bool {
        let all: Vec<usize> = (0..self.num_vertices).collect();
        self.is_directed_path_subset(&all)
    }

    /// Vertices on the tail side of edge `e` once it is removed.
    pub fn tail_side(&self, e: usize) -> BTreeSet<usize> {
        let (tail, _) = self.edges[e];
        let mut seen = BTreeSet::from([tail]);
        let mut stack = vec![tail];
        while let Some(v) = stack.pop() {
            for (w, i, _) in self.incident(v) {
                if i != e && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// All-pairs `D_{Γ,α}`, computed by one traversal per source.
    pub fn distance_matrix(&self, lengths: &[Rational]) -> Vec<Vec<Rational>> {
        (0..self.num_vertices)
            .map(|x| {
                let mut dist: Vec<Option<Rational>> = vec![None; self.num_vertices];
                dist[x] = Some(Rational::zero());
                let mut stack = vec![x];
                while let Some(v) = stack.pop() {
                    let dv = dist[v].clone().unwrap();
                    for (w, e, fwd) in self.incident(v) {
                        if dist[w].is_none() {
                            dist[w] = Some(if fwd { &dv + &lengths[e] } else { dv.clone() });
                            stack.push(w);
                        }
                    }
                }
                dist.into_iter().map(Option::unwrap).collect()
            })
            .collect()
    }
}

fn check_lengths(tree: &OrientedTree, lengths: &[Rational], positive: bool) -> Result<()> {
    if lengths.len() != tree.edges.len() {
        return Err(Error::LengthMismatch(lengths.len(), tree.edges.len()));
    }
    for (i, l) in lengths.iter().enumerate() {
        if l.is_negative() || (positive && l.is_zero()) {
            return Err(Error::NonPositiveLength(i));
        }
    }
    Ok(())
}

/// `D_{Γ,α}(x, y)`: total length of the edges on the path from `x` to `y`
/// that point from `x` towards `y`.
pub fn tree_distance(tree: &OrientedTree, lengths: &[Rational], x: usize, y: usize) -> Result<Rational> {
    check_lengths(tree, lengths, false)?;
    Ok(tree.path(x, y)?.into_iter().filter(|&(_, fwd)| fwd).map(|(e, _)| lengths[e].clone()).sum())
}

/// An oriented tree with positive edge lengths and one subtree per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub tree: OrientedTree,
    pub lengths: Vec<Rational>,
    pub labels: GroundSet,
    pub subtrees: Vec<Vec<usize>>,
}

impl Realization {
    pub fn new(
        tree: OrientedTree,
        lengths: Vec<Rational>,
        labels: Vec<String>,
        subtrees: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let labels = GroundSet::new(labels)?;
        if subtrees.len() != labels.len() {
            return Err(Error::LengthMismatch(subtrees.len(), labels.len()));
        }
        check_lengths(&tree, &lengths, true)?;
        let subtrees: Vec<Vec<usize>> = subtrees
            .into_iter()
            .map(|f| f.into_iter().collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        for (s, f) in subtrees.iter().enumerate() {
            if f.is_empty() {
                return Err(Error::EmptySubtree(labels.label(s).to_string()));
            }
            for &v in f {
                tree.check_vertex(v)?;
            }
            if !tree.is_connected_subset(f) {
                return Err(Error::DisconnectedSubtree(labels.label(s).to_string()));
            }
        }
        Ok(Self { tree, lengths, labels, subtrees })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn has_singleton_subtrees(&self) -> bool {
        self.subtrees.iter().all(|f| f.len() == 1)
    }

    pub fn has_directed_path_subtrees(&self) -> bool {
        self.subtrees.iter().all(|f| self.tree.is_directed_path_subset(f))
    }
}

/// `μ(s, t) = min D_{Γ,α}(x, y)` over `x ∈ F_s`, `y ∈ F_t`.
pub fn evaluate_realization(r: &Realization) -> Result<DirectedDistance> {
    let d = r.tree.distance_matrix(&r.lengths);
    for (s, f) in r.subtrees.iter().enumerate() {
        if f.is_empty() {
            return Err(Error::EmptySubtree(r.labels.label(s).to_string()));
        }
    }
    DirectedDistance::from_fn(r.labels.clone(), |s, t| {
        r.subtrees[s]
            .iter()
            .flat_map(|&x| r.subtrees[t].iter().map(move |&y| (x, y)))
            .map(|(x, y)| d[x][y].clone())
            .min()
            .unwrap()
    })
}

/// Realization read off the 1-skeleton of a complex of dimension at most 1,
/// with `F_s` the part where both `s`-coordinates vanish.
fn realization_from_complex(mu: &DirectedDistance, c: &PolyComplex) -> Result<Realization> {
    let skel = c.skeleton()?;
    let edges: Vec<(usize, usize)> = skel.edges.iter().map(|e| (e.tail, e.head)).collect();
    let lengths: Vec<Rational> = skel.edges.iter().map(|e| e.length.clone()).collect();
    let tree = OrientedTree::new(skel.vertices.len(), edges)
        .map_err(|e| Error::Internal(format!("skeleton is not a tree: {e}")))?;
    let subtrees: Vec<Vec<usize>> = (0..mu.n())
        .map(|s| {
            c.local_faces(s)
                .into_iter()
                .filter(|&f| c.faces[f].dim == 0)
                .map(|f| c.faces[f].vertices[0])
                .collect()
        })
        .collect();
    Realization::new(tree, lengths, mu.labels().to_vec(), subtrees)
}

fn realize_opts() -> EnumOptions {
    EnumOptions { cap: REALIZE_CAP }
}

/// Realization on a directed path, from the 1-skeleton of `T_μ`.
pub fn realize_path(mu: &DirectedDistance) -> Result<Realization> {
    let dim = dim_tight_span(mu);
    if dim > 1 {
        return Err(Error::DimensionTooHigh(dim));
    }
    let t = enumerate_tight_span_with(mu, &realize_opts())?;
    let r = realization_from_complex(mu, &t)?;
    if !r.tree.is_directed_path() {
        return Err(Error::Internal("skeleton of a 1-dimensional tight span is not a directed path".into()));
    }
    Ok(r)
}

/// Realization with directed-path subtrees, from the 1-skeleton of the
/// canonical section.
pub fn realize_tree(mu: &DirectedDistance) -> Result<Realization> {
    let rank = tropical_rank(mu);
    if rank > 2 {
        return Err(Error::RankTooHigh(rank));
    }
    let sec = enumerate_section_with(mu, &realize_opts())?;
    let r = realization_from_complex(mu, &sec)?;
    if !r.has_directed_path_subtrees() {
        return Err(Error::Internal("section subtree is not a directed path".into()));
    }
    Ok(r)
}

/// Realization with single-vertex subtrees of a directed tree metric.
pub fn realize_directed_tree_metric(mu: &DirectedDistance) -> Result<Realization> {
    if !check_directed_tree_metric(mu)? {
        return Err(Error::NotDirectedTreeMetric);
    }
    let r = realize_tree(mu)?;
    if !r.has_singleton_subtrees() {
        return Err(Error::Internal("tree metric produced a non-singleton subtree".into()));
    }
    Ok(r)
}

/// `coeff · δ_{A,B}` with `δ_{A,B}(s, t) = 1` iff `s ∈ A` and `t ∈ B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTerm {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub coeff: Rational,
}

impl SplitTerm {
    pub fn delta(&self, s: usize, t: usize) -> bool {
        self.a.contains(&s) && self.b.contains(&t)
    }

    /// Whether the unordered splits `{A, B}` of two terms are compatible.
    pub fn compatible(&self, other: &SplitTerm) -> bool {
        let meets = |x: &[usize], y: &[usize]| x.iter().any(|v| y.contains(v));
        !meets(&self.a, &other.a) || !meets(&self.a, &other.b) || !meets(&self.b, &other.a) || !meets(&self.b, &other.b)
    }
}

/// One term per edge whose removal separates the elements; edges with all
/// elements on one side contribute nothing and are skipped.
pub fn split_decomposition(r: &Realization) -> Result<Vec<SplitTerm>> {
    if !r.has_singleton_subtrees() {
        return Err(Error::NonSingletonSubtrees);
    }
    let mut terms = Vec::new();
    for (e, len) in r.lengths.iter().enumerate() {
        let side = r.tree.tail_side(e);
        let (a, b): (Vec<usize>, Vec<usize>) = (0..r.n()).partition(|&s| side.contains(&r.subtrees[s][0]));
        if !a.is_empty() && !b.is_empty() {
            terms.push(SplitTerm { a, b, coeff: len.clone() });
        }
    }
    Ok(terms)
}

pub fn recombine_splits(terms: &[SplitTerm], ground: GroundSet) -> Result<DirectedDistance> {
    DirectedDistance::from_fn(ground, |s, t| {
        terms.iter().filter(|term| term.delta(s, t)).map(|term| term.coeff.clone()).sum()
    })
}

pub fn splits_pairwise_compatible(terms: &[SplitTerm]) -> bool {
    terms.iter().enumerate().all(|(i, x)| terms[i + 1..].iter().all(|y| x.compatible(y)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealizationKind {
    DirectedPath,
    PathSubtrees,
    Singleton,
}

impl RealizationKind {
    pub const ALL: [RealizationKind; 3] =
        [RealizationKind::DirectedPath, RealizationKind::PathSubtrees, RealizationKind::Singleton];

    pub fn name(self) -> &'static str {
        match self {
            RealizationKind::DirectedPath => "directed_path",
            RealizationKind::PathSubtrees => "path_subtrees",
            RealizationKind::Singleton => "singleton",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown realization kind {s:?}")))
    }
}

fn random_length(rng: &mut SeededRng) -> Rational {
    ratio(rng.gen_range(1..=6), rng.gen_range(1..=3))
}

fn random_tree(rng: &mut SeededRng, m: usize) -> OrientedTree {
    let edges = (1..m)
        .map(|i| {
            let j = rng.gen_range(0..i);
            if rng.gen_bool(0.5) {
                (j, i)
            } else {
                (i, j)
            }
        })
        .collect();
    OrientedTree::new(m, edges).expect("attachment tree")
}

pub fn random_realization(kind: RealizationKind, n: usize, seed: u64) -> Result<Realization> {
    random_realization_with(&mut rng(seed), kind, n)
}

pub fn random_realization_with(rng: &mut SeededRng, kind: RealizationKind, n: usize) -> Result<Realization> {
    if n == 0 {
        return Err(Error::EmptyGroundSet);
    }
    let m = rng.gen_range(1..=n + 1);
    let (tree, subtrees) = match kind {
        RealizationKind::DirectedPath => {
            let tree = OrientedTree::new(m, (1..m).map(|i| (i - 1, i)).collect()).expect("path");
            let subtrees = (0..n)
                .map(|_| {
                    let a = rng.gen_range(0..m);
                    let b = rng.gen_range(a..m.min(a + 2));
                    (a..=b).collect()
                })
                .collect();
            (tree, subtrees)
        }
        RealizationKind::PathSubtrees => {
            let tree = random_tree(rng, m);
            let subtrees = (0..n)
                .map(|_| {
                    let mut v = rng.gen_range(0..m);
                    let mut f = vec![v];
                    for _ in 0..rng.gen_range(0..3) {
                        let outs: Vec<usize> =
                            tree.edges.iter().filter(|&&(a, _)| a == v).map(|&(_, b)| b).collect();
                        if outs.is_empty() {
                            break;
                        }
                        v = outs[rng.gen_range(0..outs.len())];
                        f.push(v);
                    }
                    f
                })
                .collect();
            (tree, subtrees)
        }
        RealizationKind::Singleton => {
            let tree = random_tree(rng, m);
            let subtrees = (0..n).map(|_| vec![rng.gen_range(0..m)]).collect();
            (tree, subtrees)
        }
    };
    let lengths = (0..m - 1).map(|_| random_length(rng)).collect();
    Realization::new(tree, lengths, GroundSet::default_labels(n).labels().to_vec(), subtrees)
}

/// The tree metric `(μ + μᵗ)/2` a directed tree metric is congruent to.
pub fn symmetrized_half(mu: &DirectedDistance) -> DirectedDistance {
    mu.symmetrization().scale(&ratio(1, 2))
}

/// Unit-length helper for hand-built realizations.
pub fn unit_lengths(tree: &OrientedTree) -> Vec<Rational> {
    vec![int(1); tree.edges.len()]
}
