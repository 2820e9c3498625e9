//! Points of `R^{S^c ∪ S^r}`, the directed metric `D∞`, equality graphs and
//! membership in `Π_μ ⊇ P_μ ⊇ T_μ ⊇ Q⁺_μ` and `Q_μ`.
//!
//! Coordinates are addressed either through the `col`/`row` vectors or as a
//! flat node index: `0..n` are the column copies `s^c`, `n..2n` the row
//! copies `t^r`.

mod geodesic;
mod retract;
mod section;

pub use geodesic::{geodesic_polyline, Polyline};
pub use retract::{
    retract_ray, retract_to_qplus, retract_to_tight_span, subset_order, unit_vector,
};
pub use section::{
    canonical_section_membership, extend_to_balanced_section, is_balanced, retract_to_section,
    Fiber,
};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::metric::DirectedDistance;
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtPoint {
    pub col: Vec<Rational>,
    pub row: Vec<Rational>,
}

impl ExtPoint {
    pub fn new(col: Vec<Rational>, row: Vec<Rational>) -> Result<Self> {
        if col.len() != row.len() {
            return Err(Error::LengthMismatch(col.len(), row.len()));
        }
        Ok(Self { col, row })
    }

    pub fn zero(n: usize) -> Self {
        Self { col: vec![Rational::zero(); n], row: vec![Rational::zero(); n] }
    }

    /// Constant point `(c·1, r·1)`.
    pub fn constant(n: usize, c: Rational, r: Rational) -> Self {
        Self { col: vec![c; n], row: vec![r; n] }
    }

    pub fn n(&self) -> usize {
        self.col.len()
    }

    pub fn coord(&self, node: usize) -> &Rational {
        let n = self.n();
        if node < n {
            &self.col[node]
        } else {
            &self.row[node - n]
        }
    }

    pub fn coords(&self) -> impl Iterator<Item = &Rational> {
        self.col.iter().chain(self.row.iter())
    }

    pub fn to_vec(&self) -> Vec<Rational> {
        self.coords().cloned().collect()
    }

    /// `self + t·(1, -1)`, the translation along the linearity space of `Π_μ`.
    pub fn fiber_shift(&self, t: &Rational) -> Self {
        Self {
            col: self.col.iter().map(|c| c + t).collect(),
            row: self.row.iter().map(|r| r - t).collect(),
        }
    }

    pub fn add_scaled(&self, dir: &ExtPoint, eps: &Rational) -> Self {
        Self {
            col: self.col.iter().zip(&dir.col).map(|(a, b)| a + b * eps).collect(),
            row: self.row.iter().zip(&dir.row).map(|(a, b)| a + b * eps).collect(),
        }
    }

    pub fn sub(&self, other: &ExtPoint) -> Self {
        Self {
            col: self.col.iter().zip(&other.col).map(|(a, b)| a - b).collect(),
            row: self.row.iter().zip(&other.row).map(|(a, b)| a - b).collect(),
        }
    }

    /// `self + lambda (q - self)`.
    pub fn lerp(&self, q: &ExtPoint, lambda: &Rational) -> Self {
        self.add_scaled(&q.sub(self), lambda)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords().all(|v| !v.is_negative())
    }

    /// Coordinatewise `self <= other`.
    pub fn le(&self, other: &ExtPoint) -> bool {
        self.coords().zip(other.coords()).all(|(a, b)| a <= b)
    }

    fn check_same(&self, other: &ExtPoint) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::GroundSetMismatch);
        }
        Ok(())
    }

    fn check_ground(&self, mu: &DirectedDistance) -> Result<()> {
        if self.n() != mu.n() {
            return Err(Error::GroundSetMismatch);
        }
        Ok(())
    }
}

/// `D∞⁺(p, q) = max_x (q(x) - p(x))₊`.
pub fn dinf_plus(p: &[Rational], q: &[Rational]) -> Result<Rational> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    if p.is_empty() {
        return Err(Error::InvalidArgument("D∞⁺ needs at least one coordinate".into()));
    }
    Ok(dinf_plus_unchecked(p, q))
}

fn dinf_plus_unchecked(p: &[Rational], q: &[Rational]) -> Rational {
    p.iter()
        .zip(q)
        .map(|(a, b)| b - a)
        .fold(Rational::zero(), |m, d| if d > m { d } else { m })
}

/// `D∞(p, q) = max{D∞⁺(p^c, q^c), D∞⁺(q^r, p^r)}`.
pub fn dinf(p: &ExtPoint, q: &ExtPoint) -> Result<Rational> {
    p.check_same(q)?;
    Ok(dinf_unchecked(p, q))
}

pub(crate) fn dinf_unchecked(p: &ExtPoint, q: &ExtPoint) -> Rational {
    let a = dinf_plus_unchecked(&p.col, &q.col);
    let b = dinf_plus_unchecked(&q.row, &p.row);
    if a >= b {
        a
    } else {
        b
    }
}

/// `D∞` length of a cycle of points, including the closing step.
pub fn dinf_cycle(points: &[ExtPoint]) -> Rational {
    let m = points.len();
    (0..m).map(|i| dinf_unchecked(&points[i], &points[(i + 1) % m])).sum()
}

/// The norm whose distance is `D∞(p,q) + D∞(q,p)`:
/// `max{(p^c)₊, (-p^r)₊} + max{(-p^c)₊, (p^r)₊}` with maxima over coordinates.
pub fn symmetric_norm(p: &ExtPoint) -> Rational {
    let zero = Rational::zero();
    let first = p
        .col
        .iter()
        .cloned()
        .chain(p.row.iter().map(|r| -r))
        .fold(zero.clone(), |m, v| rational::max(&m, &v));
    let second = p
        .col
        .iter()
        .map(|c| -c)
        .chain(p.row.iter().cloned())
        .fold(zero, |m, v| rational::max(&m, &v));
    first + second
}

/// Bipartite graph on `S^c ∪ S^r` of the coupling constraints tight at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityGraph {
    n: usize,
    /// Pairs `(s, t)` meaning the edge `s^c t^r`.
    pub edges: Vec<(usize, usize)>,
}

/// One connected component of an equality graph, as column and row index sets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Component {
    pub cols: Vec<usize>,
    pub rows: Vec<usize>,
}

impl EqualityGraph {
    pub fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> Self {
        Self { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, s: usize, t: usize) -> bool {
        self.edges.contains(&(s, t))
    }

    /// Flat node degrees: columns first, then rows.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; 2 * self.n];
        for &(s, t) in &self.edges {
            deg[s] += 1;
            deg[self.n + t] += 1;
        }
        deg
    }

    pub fn isolated_nodes(&self) -> Vec<usize> {
        self.degrees()
            .into_iter()
            .enumerate()
            .filter(|(_, d)| *d == 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn components(&self) -> Vec<Component> {
        let n = self.n;
        let mut parent: Vec<usize> = (0..2 * n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(s, t) in &self.edges {
            let a = find(&mut parent, s);
            let b = find(&mut parent, n + t);
            if a != b {
                parent[a] = b;
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Component> = Default::default();
        for node in 0..2 * n {
            let root = find(&mut parent, node);
            let c = groups.entry(root).or_insert_with(|| Component { cols: vec![], rows: vec![] });
            if node < n {
                c.cols.push(node);
            } else {
                c.rows.push(node - n);
            }
        }
        let mut out: Vec<Component> = groups.into_values().collect();
        out.sort();
        out
    }
}

/// First violated coupling constraint, if any.
fn pi_violation(mu: &DirectedDistance, p: &ExtPoint) -> Option<(usize, usize)> {
    let n = mu.n();
    for s in 0..n {
        for t in 0..n {
            if &p.col[s] + &p.row[t] < *mu.get(s, t) {
                return Some((s, t));
            }
        }
    }
    None
}

pub fn in_pi(mu: &DirectedDistance, p: &ExtPoint) -> bool {
    p.n() == mu.n() && pi_violation(mu, p).is_none()
}

pub fn in_p(mu: &DirectedDistance, p: &ExtPoint) -> bool {
    in_pi(mu, p) && p.is_nonnegative()
}

/// `K(p)`. Requires `p ∈ Π_μ`.
pub fn equality_graph(mu: &DirectedDistance, p: &ExtPoint) -> Result<EqualityGraph> {
    p.check_ground(mu)?;
    if let Some((s, t)) = pi_violation(mu, p) {
        return Err(Error::NotInPolyhedron(s, t));
    }
    Ok(equality_graph_unchecked(mu, p))
}

pub(crate) fn equality_graph_unchecked(mu: &DirectedDistance, p: &ExtPoint) -> EqualityGraph {
    let n = mu.n();
    let mut edges = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if &p.col[s] + &p.row[t] == *mu.get(s, t) {
                edges.push((s, t));
            }
        }
    }
    EqualityGraph { n, edges }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    /// Not in `Π_μ`.
    Outside,
    /// In `Π_μ`, has a negative coordinate, not minimal.
    PiOnly,
    /// In `P_μ` but not minimal there.
    PNotT,
    /// In `T_μ` with an isolated vertex of `K(p)`.
    TNotQplus,
    /// In `Q⁺_μ` (hence also in `T_μ`).
    Qplus,
    /// In `Q_μ` with a negative coordinate.
    QNotNonneg,
}

impl Membership {
    pub fn in_tight_span(self) -> bool {
        matches!(self, Membership::TNotQplus | Membership::Qplus)
    }

    pub fn in_q(self) -> bool {
        matches!(self, Membership::Qplus | Membership::QNotNonneg)
    }

    pub fn name(self) -> &'static str {
        match self {
            Membership::Outside => "outside",
            Membership::PiOnly => "Pi_only",
            Membership::PNotT => "P_not_T",
            Membership::TNotQplus => "T_not_Qplus",
            Membership::Qplus => "Qplus",
            Membership::QNotNonneg => "Q_not_nonneg",
        }
    }
}

/// Classifies `p` using the isolated-vertex characterization of minimality:
/// `p ∈ T_μ` iff `p ∈ P_μ` and no isolated vertex of `K(p)` has a positive
/// coordinate; `p ∈ Q_μ` iff `p ∈ Π_μ` and `K(p)` has no isolated vertex.
pub fn classify_membership(mu: &DirectedDistance, p: &ExtPoint) -> Membership {
    if p.n() != mu.n() || pi_violation(mu, p).is_some() {
        return Membership::Outside;
    }
    let k = equality_graph_unchecked(mu, p);
    let isolated = k.isolated_nodes();
    let nonneg = p.is_nonnegative();
    match (nonneg, isolated.is_empty()) {
        (false, true) => Membership::QNotNonneg,
        (false, false) => Membership::PiOnly,
        (true, true) => Membership::Qplus,
        (true, false) => {
            if isolated.iter().all(|&u| p.coord(u).is_zero()) {
                Membership::TNotQplus
            } else {
                Membership::PNotT
            }
        }
    }
}

pub fn in_tight_span(mu: &DirectedDistance, p: &ExtPoint) -> bool {
    classify_membership(mu, p).in_tight_span()
}

pub fn in_q(mu: &DirectedDistance, p: &ExtPoint) -> bool {
    classify_membership(mu, p).in_q()
}

pub fn in_qplus(mu: &DirectedDistance, p: &ExtPoint) -> bool {
    classify_membership(mu, p) == Membership::Qplus
}

/// The points `μ_s`, `μ_s^in` and `μ_s^out`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPoints {
    pub center: ExtPoint,
    pub entrance: ExtPoint,
    pub exit: ExtPoint,
}

pub fn canonical_points(mu: &DirectedDistance, s: usize) -> Result<CanonicalPoints> {
    let n = mu.n();
    if s >= n {
        return Err(Error::UnknownElement(format!("index {s}")));
    }
    let center = mu_point(mu, s);
    // μ_s^in: (μ(t,s), max_u μ(u,t) - μ(u,s))
    let entrance = ExtPoint {
        col: (0..n).map(|t| mu.get(t, s).clone()).collect(),
        row: (0..n)
            .map(|t| (0..n).map(|u| mu.get(u, t) - mu.get(u, s)).max().unwrap())
            .collect(),
    };
    // μ_s^out: (max_u μ(t,u) - μ(s,u), μ(s,t))
    let exit = ExtPoint {
        col: (0..n)
            .map(|t| (0..n).map(|u| mu.get(t, u) - mu.get(s, u)).max().unwrap())
            .collect(),
        row: (0..n).map(|t| mu.get(s, t).clone()).collect(),
    };
    Ok(CanonicalPoints { center, entrance, exit })
}

/// `μ_s = (μ(·, s), μ(s, ·))`.
pub fn mu_point(mu: &DirectedDistance, s: usize) -> ExtPoint {
    let n = mu.n();
    ExtPoint {
        col: (0..n).map(|t| mu.get(t, s).clone()).collect(),
        row: (0..n).map(|t| mu.get(s, t).clone()).collect(),
    }
}

/// Dimension of the face `F(p)` of `T_μ` containing `p` in its relative
/// interior, with the component bipartitions `(A_i, B_i)` whose directions
/// `(1_{A_i^c}, -1_{B_i^r})` span it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDimension {
    pub dim: usize,
    pub directions: Vec<Component>,
}

pub fn face_dimension(mu: &DirectedDistance, p: &ExtPoint) -> Result<FaceDimension> {
    if !in_tight_span(mu, p) {
        return Err(Error::NotInTightSpan);
    }
    let k = equality_graph_unchecked(mu, p);
    let n = mu.n();
    let directions: Vec<Component> = k
        .components()
        .into_iter()
        .filter(|c| {
            c.cols.iter().all(|&s| !p.col[s].is_zero()) && c.rows.iter().all(|&t| !p.row[t].is_zero())
        })
        .collect();
    debug_assert!(directions.iter().all(|c| c.cols.len() + c.rows.len() <= 2 * n));
    Ok(FaceDimension { dim: directions.len(), directions })
}
