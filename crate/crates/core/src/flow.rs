//! Multiflows, the metric-extension dual LP, and the min-max relations over
//! tight spans and tropical polytopes.
//!
//! For an extension `d` of `μ` on `V ⊇ S`, `d_x ∈ R^{S^c ∪ S^r}` is the point
//! with `d_x(s^c) = d(s, x)` and `d_x(s^r) = d(x, s)`.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{
    classify_membership, dinf, in_q, is_balanced, mu_point, retract_to_section, retract_to_tight_span,
    ExtPoint, Fiber, Membership,
};
use crate::geometry::retract_to_qplus;
use crate::lp::{self, LinearProgram, Relation, Sense, Status};
use crate::metric::{congruence_witness, CyclicSequence, DirectedDistance, GroundSet};
use crate::rational::{int, ratio, Rational};

pub const DEFAULT_VERTEX_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub cap: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    vertices: GroundSet,
    edges: Vec<Edge>,
    terminals: Vec<usize>,
}

impl Network {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>, terminals: Vec<usize>) -> Result<Self> {
        let vertices = GroundSet::new(vertices)?;
        let nv = vertices.len();
        for (i, e) in edges.iter().enumerate() {
            if e.tail >= nv || e.head >= nv {
                return Err(Error::InvalidNetwork(format!("edge {i} has an endpoint outside V")));
            }
            if e.tail == e.head {
                return Err(Error::InvalidNetwork(format!("edge {i} is a loop")));
            }
        }
        if terminals.len() < 2 {
            return Err(Error::InvalidNetwork("at least two terminals are required".into()));
        }
        let distinct: BTreeSet<_> = terminals.iter().collect();
        if distinct.len() != terminals.len() || terminals.iter().any(|&t| t >= nv) {
            return Err(Error::InvalidNetwork("terminals must be distinct vertices".into()));
        }
        Ok(Self { vertices, edges, terminals })
    }

    pub fn vertices(&self) -> &GroundSet {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn terminal_labels(&self) -> Vec<String> {
        self.terminals.iter().map(|&t| self.vertices.label(t).to_string()).collect()
    }

    fn terminal_position(&self, v: usize) -> Option<usize> {
        self.terminals.iter().position(|&t| t == v)
    }

    /// `Σ c(xy) d(x, y)` over the edges.
    pub fn objective(&self, d: &DirectedDistance) -> Rational {
        self.edges.iter().map(|e| int(e.cap as i64) * d.get(e.tail, e.head)).sum()
    }

    /// Capacity-weighted in-degree equals out-degree everywhere.
    pub fn eulerian_violation(&self) -> Option<usize> {
        let mut balance = vec![0i128; self.num_vertices()];
        for e in &self.edges {
            balance[e.tail] += e.cap as i128;
            balance[e.head] -= e.cap as i128;
        }
        balance.iter().position(|&b| b != 0)
    }

    pub fn is_eulerian(&self) -> bool {
        self.eulerian_violation().is_none()
    }
}

/// A directed vertex-simple path between distinct terminals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SPath {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl SPath {
    pub fn source(&self) -> usize {
        self.vertices[0]
    }

    pub fn target(&self) -> usize {
        *self.vertices.last().unwrap()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiflow {
    pub paths: Vec<SPath>,
    pub values: Vec<Rational>,
}

impl Multiflow {
    /// `val(μ, f) = Σ μ(s_P, t_P) λ(P)`.
    pub fn value(&self, net: &Network, mu: &DirectedDistance) -> Rational {
        self.paths
            .iter()
            .zip(&self.values)
            .map(|(p, l)| {
                let s = net.terminal_position(p.source()).unwrap();
                let t = net.terminal_position(p.target()).unwrap();
                mu.get(s, t) * l
            })
            .sum()
    }

    pub fn respects_capacities(&self, net: &Network) -> bool {
        let mut load = vec![Rational::zero(); net.edges.len()];
        for (p, l) in self.paths.iter().zip(&self.values) {
            if l.is_negative() {
                return false;
            }
            for &e in &p.edges {
                load[e] += l;
            }
        }
        load.iter().zip(&net.edges).all(|(l, e)| *l <= int(e.cap as i64))
    }
}

pub fn enumerate_s_paths(net: &Network) -> Result<Vec<SPath>> {
    enumerate_s_paths_with_cap(net, DEFAULT_VERTEX_CAP)
}

pub fn enumerate_s_paths_with_cap(net: &Network, cap: usize) -> Result<Vec<SPath>> {
    let nv = net.num_vertices();
    if nv > cap {
        return Err(Error::NetworkTooLarge { size: nv, cap });
    }
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (i, e) in net.edges.iter().enumerate() {
        out_edges[e.tail].push(i);
    }
    let is_terminal: Vec<bool> = (0..nv).map(|v| net.terminal_position(v).is_some()).collect();
    let mut paths = Vec::new();
    fn walk(
        v: usize,
        net: &Network,
        out_edges: &[Vec<usize>],
        is_terminal: &[bool],
        on_path: &mut [bool],
        verts: &mut Vec<usize>,
        edges: &mut Vec<usize>,
        paths: &mut Vec<SPath>,
    ) {
        for &e in &out_edges[v] {
            let w = net.edges[e].head;
            if on_path[w] {
                continue;
            }
            on_path[w] = true;
            verts.push(w);
            edges.push(e);
            if is_terminal[w] {
                paths.push(SPath { vertices: verts.clone(), edges: edges.clone() });
            }
            walk(w, net, out_edges, is_terminal, on_path, verts, edges, paths);
            on_path[w] = false;
            verts.pop();
            edges.pop();
        }
    }
    for &s in &net.terminals {
        let mut on_path = vec![false; nv];
        on_path[s] = true;
        walk(s, net, &out_edges, &is_terminal, &mut on_path, &mut vec![s], &mut Vec::new(), &mut paths);
    }
    Ok(paths)
}

fn check_terminal_distance(net: &Network, mu: &DirectedDistance) -> Result<()> {
    if mu.labels() != net.terminal_labels().as_slice() {
        return Err(Error::GroundSetMismatch);
    }
    Ok(())
}

/// The multiflow LP over path variables, with its solution.
pub fn multiflow_lp(net: &Network, mu: &DirectedDistance) -> Result<(LinearProgram, Vec<SPath>)> {
    check_terminal_distance(net, mu)?;
    let paths: Vec<SPath> = enumerate_s_paths(net)?
        .into_iter()
        .filter(|p| p.edges.iter().all(|&e| net.edges[e].cap > 0))
        .collect();
    let weights: Vec<Rational> = paths
        .iter()
        .map(|p| {
            let s = net.terminal_position(p.source()).unwrap();
            let t = net.terminal_position(p.target()).unwrap();
            mu.get(s, t).clone()
        })
        .collect();
    let mut lp = LinearProgram::new(Sense::Max, weights);
    for (i, e) in net.edges.iter().enumerate() {
        let terms: Vec<(usize, Rational)> = paths
            .iter()
            .enumerate()
            .filter(|(_, p)| p.edges.contains(&i))
            .map(|(j, _)| (j, int(1)))
            .collect();
        if !terms.is_empty() {
            lp.add_sparse(&terms, Relation::Le, int(e.cap as i64));
        }
    }
    Ok((lp, paths))
}

pub fn max_multiflow(net: &Network, mu: &DirectedDistance) -> Result<(Rational, Multiflow)> {
    let (lp, paths) = multiflow_lp(net, mu)?;
    let sol = lp::solve(&lp)?;
    if sol.status != Status::Optimal {
        return Err(Error::Internal(format!("multiflow LP returned {:?}", sol.status)));
    }
    let mut flow = Multiflow { paths: vec![], values: vec![] };
    for (p, v) in paths.into_iter().zip(sol.primal) {
        if !v.is_zero() {
            flow.paths.push(p);
            flow.values.push(v);
        }
    }
    Ok((sol.objective, flow))
}

/// An extension of `μ` to the vertex set of a network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricExtension {
    pub d: DirectedDistance,
    pub terminals: Vec<usize>,
}

impl MetricExtension {
    pub fn new(mu: &DirectedDistance, d: DirectedDistance, terminals: Vec<usize>) -> Result<Self> {
        let ext = Self { d, terminals };
        ext.validate(mu)?;
        Ok(ext)
    }

    pub fn validate(&self, mu: &DirectedDistance) -> Result<()> {
        if self.terminals.len() != mu.n() || self.terminals.iter().any(|&t| t >= self.d.n()) {
            return Err(Error::NotAnExtension("terminal list does not match mu".into()));
        }
        if !self.d.is_metric() {
            return Err(Error::NotAnExtension("d violates a triangle inequality".into()));
        }
        for (i, &s) in self.terminals.iter().enumerate() {
            for (j, &t) in self.terminals.iter().enumerate() {
                if self.d.get(s, t) != mu.get(i, j) {
                    return Err(Error::NotAnExtension(format!(
                        "d({}, {}) differs from mu",
                        self.d.labels()[s],
                        self.d.labels()[t]
                    )));
                }
            }
        }
        Ok(())
    }

    /// `d_x` as a point of `R^{S^c ∪ S^r}`.
    pub fn point(&self, x: usize) -> ExtPoint {
        ExtPoint {
            col: self.terminals.iter().map(|&s| self.d.get(s, x).clone()).collect(),
            row: self.terminals.iter().map(|&s| self.d.get(x, s).clone()).collect(),
        }
    }

    pub fn points(&self) -> Vec<ExtPoint> {
        (0..self.d.n()).map(|x| self.point(x)).collect()
    }

    /// The extension `d(x, y) = D∞(ρ(x), ρ(y))` read off a map into `R^{S^{cr}}`.
    pub fn from_embedding(mu: &DirectedDistance, ground: GroundSet, terminals: Vec<usize>, rho: &[ExtPoint]) -> Result<Self> {
        let d = DirectedDistance::from_fn(ground, |x, y| dinf(&rho[x], &rho[y]).expect("same ground set"))?;
        Self::new(mu, d, terminals)
    }
}

/// The LP minimizing `Σ c(xy) d(x, y)` over directed metrics `d` on `V` with
/// `d = μ` on `S × S`.
pub fn dual_lp(net: &Network, mu: &DirectedDistance) -> Result<(LinearProgram, Vec<(usize, usize)>)> {
    check_terminal_distance(net, mu)?;
    mu.require_metric()?;
    let nv = net.num_vertices();
    if nv > DEFAULT_VERTEX_CAP {
        return Err(Error::NetworkTooLarge { size: nv, cap: DEFAULT_VERTEX_CAP });
    }
    let pairs: Vec<(usize, usize)> =
        (0..nv).flat_map(|x| (0..nv).filter(move |&y| y != x).map(move |y| (x, y))).collect();
    let var = |x: usize, y: usize| -> usize { x * (nv - 1) + if y > x { y - 1 } else { y } };
    let mut c = vec![Rational::zero(); pairs.len()];
    for e in &net.edges {
        c[var(e.tail, e.head)] += int(e.cap as i64);
    }
    let mut lp = LinearProgram::new(Sense::Min, c);
    for x in 0..nv {
        for y in 0..nv {
            for z in 0..nv {
                if x != y && y != z && x != z {
                    lp.add_sparse(
                        &[(var(x, z), int(1)), (var(x, y), int(-1)), (var(y, z), int(-1))],
                        Relation::Le,
                        int(0),
                    );
                }
            }
        }
    }
    for (i, &s) in net.terminals.iter().enumerate() {
        for (j, &t) in net.terminals.iter().enumerate() {
            if i != j {
                lp.add_sparse(&[(var(s, t), int(1))], Relation::Eq, mu.get(i, j).clone());
            }
        }
    }
    Ok((lp, pairs))
}

pub fn dual_metric_lp(net: &Network, mu: &DirectedDistance) -> Result<(Rational, MetricExtension)> {
    let (lp, pairs) = dual_lp(net, mu)?;
    let sol = lp::solve(&lp)?;
    if sol.status != Status::Optimal {
        return Err(Error::Internal(format!("metric LP returned {:?}", sol.status)));
    }
    let nv = net.num_vertices();
    let mut m = vec![vec![Rational::zero(); nv]; nv];
    for ((x, y), v) in pairs.into_iter().zip(sol.primal) {
        m[x][y] = v;
    }
    let d = DirectedDistance::new(net.vertices.labels().to_vec(), m)?;
    let ext = MetricExtension::new(mu, d, net.terminals.clone())?;
    Ok((sol.objective, ext))
}

/// Every `d_x` lies in `T_μ` and `x ↦ d_x` is an isometry into `(T_μ, D∞)`.
pub fn is_tight_extension(mu: &DirectedDistance, ext: &MetricExtension) -> Result<bool> {
    ext.validate(mu)?;
    let pts = ext.points();
    if !pts.iter().all(|p| classify_membership(mu, p).in_tight_span()) {
        return Ok(false);
    }
    Ok(isometric(&ext.d, &pts))
}

fn isometric(d: &DirectedDistance, pts: &[ExtPoint]) -> bool {
    (0..pts.len()).all(|x| (0..pts.len()).all(|y| dinf(&pts[x], &pts[y]).ok().as_ref() == Some(d.get(x, y))))
}

/// Pulls every `d_x` back into `T_μ` and reads distances off `D∞`, until
/// nothing changes. The result is a tight extension below `d`.
pub fn tighten_extension(mu: &DirectedDistance, ext: &MetricExtension) -> Result<MetricExtension> {
    ext.validate(mu)?;
    let mut cur = ext.clone();
    for _ in 0..=cur.d.n() + 1 {
        let rho: Vec<ExtPoint> =
            cur.points().iter().map(|p| retract_to_tight_span(mu, p)).collect::<Result<_>>()?;
        let next = MetricExtension::from_embedding(mu, cur.d.ground().clone(), cur.terminals.clone(), &rho)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::Internal("tightening did not reach a fixpoint".into()))
}

/// Tight, every `d_x ∈ Q⁺_μ`, and `{d_x}` balanced.
pub fn is_cyclically_tight_extension(mu: &DirectedDistance, ext: &MetricExtension) -> Result<bool> {
    if !is_tight_extension(mu, ext)? {
        return Ok(false);
    }
    let pts = ext.points();
    if !pts.iter().all(|p| classify_membership(mu, p) == Membership::Qplus) {
        return Ok(false);
    }
    is_balanced(&pts)
}

/// Moves a tight extension onto the canonical section of `Q⁺_μ`, which gives
/// a cyclically tight extension with no larger cycle lengths.
pub fn cyclically_tighten(mu: &DirectedDistance, ext: &MetricExtension) -> Result<MetricExtension> {
    let tight = tighten_extension(mu, ext)?;
    let rho: Vec<ExtPoint> = tight
        .points()
        .iter()
        .map(|p| retract_to_qplus(mu, p).and_then(|q| retract_to_section(mu, &q)))
        .collect::<Result<_>>()?;
    MetricExtension::from_embedding(mu, tight.d.ground().clone(), tight.terminals.clone(), &rho)
}

/// One cycle of an Eulerian decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCycle {
    pub vertices: CyclicSequence,
    pub edges: Vec<usize>,
}

/// Writes the capacity vector of an Eulerian network as a sum of
/// characteristic vectors of directed cycles, by greedy peeling.
pub fn eulerian_decompose(net: &Network) -> Result<Vec<EdgeCycle>> {
    if let Some(v) = net.eulerian_violation() {
        return Err(Error::NotEulerian(net.vertices.label(v).to_string()));
    }
    let mut rest: Vec<u64> = net.edges.iter().map(|e| e.cap).collect();
    let mut cycles = Vec::new();
    while let Some(start) = rest.iter().position(|&r| r > 0) {
        let mut seen_at: Vec<Option<usize>> = vec![None; net.num_vertices()];
        let mut walk_edges: Vec<usize> = Vec::new();
        let mut v = net.edges[start].tail;
        seen_at[v] = Some(0);
        let mut e = start;
        loop {
            walk_edges.push(e);
            v = net.edges[e].head;
            if let Some(pos) = seen_at[v] {
                let cyc: Vec<usize> = walk_edges[pos..].to_vec();
                let times = cyc.iter().map(|&i| rest[i]).min().unwrap();
                for &i in &cyc {
                    rest[i] -= times;
                }
                let verts: Vec<usize> = cyc.iter().map(|&i| net.edges[i].tail).collect();
                for _ in 0..times {
                    cycles.push(EdgeCycle { vertices: CyclicSequence::new(verts.clone())?, edges: cyc.clone() });
                }
                break;
            }
            seen_at[v] = Some(walk_edges.len());
            e = (0..net.edges.len())
                .find(|&i| rest[i] > 0 && net.edges[i].tail == v)
                .ok_or_else(|| Error::Internal("balanced vertex without residual out-edge".into()))?;
        }
    }
    Ok(cycles)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinMaxMode {
    /// Embeddings into `T_μ`.
    T,
    /// Embeddings into `Q_μ` for Eulerian networks.
    Q,
}

#[derive(Clone, Debug)]
pub struct MinMaxReport {
    pub mode: MinMaxMode,
    pub max: Rational,
    pub min: Rational,
    pub equal: bool,
    pub flow: Multiflow,
    pub extension: MetricExtension,
    /// Named checks, in evaluation order.
    pub checks: Vec<(&'static str, bool)>,
}

impl MinMaxReport {
    pub fn ok(&self) -> bool {
        self.equal && self.checks.iter().all(|(_, b)| *b)
    }
}

pub fn verify_minmax(net: &Network, mu: &DirectedDistance, mode: MinMaxMode) -> Result<MinMaxReport> {
    check_terminal_distance(net, mu)?;
    mu.require_metric()?;
    if mode == MinMaxMode::Q {
        if let Some(v) = net.eulerian_violation() {
            return Err(Error::NotEulerian(net.vertices.label(v).to_string()));
        }
    }
    let (max, flow) = max_multiflow(net, mu)?;
    let (min, ext) = dual_metric_lp(net, mu)?;
    let mut checks = vec![("flow_feasible", flow.respects_capacities(net) && flow.value(net, mu) == max)];

    let tight = tighten_extension(mu, &ext)?;
    checks.push(("tight_extension", is_tight_extension(mu, &tight)?));
    checks.push(("tightening_keeps_objective", net.objective(&tight.d) == min));
    let rho = tight.points();
    let boundary = net.terminals.iter().enumerate().all(|(i, &s)| rho[s] == mu_point(mu, i));
    checks.push(("embedding_boundary", boundary));
    let embedded: Rational = net
        .edges
        .iter()
        .map(|e| int(e.cap as i64) * dinf(&rho[e.tail], &rho[e.head]).expect("same ground set"))
        .sum();
    checks.push(("embedding_objective", embedded == min));

    if mode == MinMaxMode::Q {
        let cycles = eulerian_decompose(net)?;
        let cyc_sum: Rational = cycles
            .iter()
            .map(|c| c.vertices.steps().map(|(x, y)| ext.d.get(x, y).clone()).sum::<Rational>())
            .sum();
        checks.push(("cycle_identity", cyc_sum == min));

        let ct = cyclically_tighten(mu, &ext)?;
        checks.push(("cyclically_tight", is_cyclically_tight_extension(mu, &ct)?));
        checks.push(("cyclic_objective", net.objective(&ct.d) == min));

        // a metric congruent to the cyclically tight one, shifted by the
        // potential alpha(x) = d'(x, x0) / 2, embedded via d'_x + alpha(x)(1,-1)
        let x0 = net.terminals[0];
        let half = ratio(1, 2);
        let alpha: Vec<Rational> = (0..ct.d.n()).map(|x| ct.d.get(x, x0) * &half).collect();
        let shifted = DirectedDistance::from_fn(ct.d.ground().clone(), |x, y| ct.d.get(x, y) - &alpha[x] + &alpha[y])?;
        let witness = congruence_witness(&shifted, &ct.d)?
            .ok_or_else(|| Error::Internal("shifted metric lost congruence".into()))?;
        let rho_q: Vec<ExtPoint> =
            (0..ct.d.n()).map(|x| ct.point(x).fiber_shift(&witness.values[x])).collect();
        checks.push(("congruent_in_q", rho_q.iter().all(|p| in_q(mu, p))));
        checks.push(("congruent_isometric", isometric(&shifted, &rho_q)));
        checks.push(("congruent_balanced", is_balanced(&rho_q)?));
        let fibers_ok = net.terminals.iter().enumerate().all(|(i, &s)| {
            Fiber::new(rho_q[s].clone()) == Fiber::new(mu_point(mu, i))
        });
        checks.push(("fiber_boundary", fibers_ok));
        checks.push(("congruent_objective", net.objective(&shifted) == min));
    }

    Ok(MinMaxReport { mode, equal: max == min, max, min, flow, extension: ext, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn two_node() -> (Network, DirectedDistance) {
        let net = Network::new(labels(&["s", "t"]), vec![Edge { tail: 0, head: 1, cap: 3 }], vec![0, 1]).unwrap();
        let mu = DirectedDistance::new(labels(&["s", "t"]), vec![vec![int(0), int(1)], vec![int(0), int(0)]]).unwrap();
        (net, mu)
    }

    fn triangle(cap: u64) -> (Network, DirectedDistance) {
        let net = Network::new(
            labels(&["s", "t", "x"]),
            vec![
                Edge { tail: 0, head: 2, cap },
                Edge { tail: 2, head: 1, cap },
                Edge { tail: 1, head: 0, cap },
            ],
            vec![0, 1],
        )
        .unwrap();
        let mu = DirectedDistance::new(labels(&["s", "t"]), vec![vec![int(0), int(1)], vec![int(0), int(0)]]).unwrap();
        (net, mu)
    }

    #[test]
    fn s_paths() {
        let (net, _) = two_node();
        let p = enumerate_s_paths(&net).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].vertices, vec![0, 1]);
        let (tri, _) = triangle(1);
        let p = enumerate_s_paths(&tri).unwrap();
        let vs: Vec<Vec<usize>> = p.into_iter().map(|p| p.vertices).collect();
        assert_eq!(vs, vec![vec![0, 2, 1], vec![1, 0]]);
    }

    #[test]
    fn two_node_duality() {
        let (net, mu) = two_node();
        assert_eq!(max_multiflow(&net, &mu).unwrap().0, int(3));
        let (v, ext) = dual_metric_lp(&net, &mu).unwrap();
        assert_eq!(v, int(3));
        assert_eq!(ext.d.get(0, 1), &int(1));
        let r = verify_minmax(&net, &mu, MinMaxMode::T).unwrap();
        assert!(r.ok(), "{:?}", r.checks);
        assert!(matches!(verify_minmax(&net, &mu, MinMaxMode::Q), Err(Error::NotEulerian(_))));
    }

    #[test]
    fn triangle_duality() {
        let (net, mu) = triangle(1);
        assert_eq!(max_multiflow(&net, &mu).unwrap().0, int(1));
        assert_eq!(dual_metric_lp(&net, &mu).unwrap().0, int(1));
        let r = verify_minmax(&net, &mu, MinMaxMode::Q).unwrap();
        assert!(r.ok(), "{:?}", r.checks);
        assert_eq!(eulerian_decompose(&net).unwrap().len(), 1);
        let (double, _) = triangle(2);
        assert_eq!(eulerian_decompose(&double).unwrap().len(), 2);
    }

    #[test]
    fn zero_capacities() {
        let (mut net, mu) = two_node();
        net.edges[0].cap = 0;
        assert_eq!(max_multiflow(&net, &mu).unwrap().0, int(0));
        assert_eq!(dual_metric_lp(&net, &mu).unwrap().0, int(0));
        assert!(verify_minmax(&net, &mu, MinMaxMode::Q).unwrap().ok());
    }

    #[test]
    fn self_extension_is_cyclically_tight() {
        let mu = DirectedDistance::from_fn(GroundSet::default_labels(3), |_, _| int(1)).unwrap();
        let ext = MetricExtension::new(&mu, mu.clone(), vec![0, 1, 2]).unwrap();
        assert!(is_tight_extension(&mu, &ext).unwrap());
        assert!(is_cyclically_tight_extension(&mu, &ext).unwrap());
        assert_eq!(tighten_extension(&mu, &ext).unwrap(), ext);
    }

    #[test]
    fn inflated_extension_is_not_tight() {
        let mu = DirectedDistance::from_fn(GroundSet::default_labels(2), |_, _| int(1)).unwrap();
        // x far from both terminals
        let d = DirectedDistance::with_default_labels(vec![
            vec![int(0), int(1), int(5)],
            vec![int(1), int(0), int(5)],
            vec![int(5), int(5), int(0)],
        ])
        .unwrap();
        let ext = MetricExtension::new(&mu, d, vec![0, 1]).unwrap();
        assert!(!is_tight_extension(&mu, &ext).unwrap());
        let t = tighten_extension(&mu, &ext).unwrap();
        assert!(is_tight_extension(&mu, &t).unwrap());
        for x in 0..3 {
            for y in 0..3 {
                assert!(t.d.get(x, y) <= ext.d.get(x, y));
            }
        }
    }
}
