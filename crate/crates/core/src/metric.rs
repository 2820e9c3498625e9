//! Directed distances and the purely combinatorial checks on them.

use std::collections::HashSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exec;
use crate::rational::{self, Rational};

/// Ordered list of distinct element labels. The order is the index contract
/// for every matrix and point built over the set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self { labels })
    }

    /// Labels `e0, e1, ...` (or `a, b, c, ...` for small sets).
    pub fn default_labels(n: usize) -> Self {
        let labels = if n <= 26 {
            (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
        } else {
            (0..n).map(|i| format!("e{i}")).collect()
        };
        Self { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, size: self.len() })
        }
    }
}

/// Square nonnegative rational matrix with zero diagonal. Not necessarily
/// symmetric, and not necessarily a metric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedDistance {
    ground: GroundSet,
    entries: Vec<Rational>,
}

impl DirectedDistance {
    /// Validates a matrix against its labels. Nothing is symmetrized.
    pub fn new(labels: Vec<String>, matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let n = matrix.len();
        if labels.len() != n {
            return Err(Error::NonSquare(format!(
                "{} labels for {} rows",
                labels.len(),
                n
            )));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NonSquare(format!("row {i} has {} entries, expected {n}", row.len())));
            }
        }
        let ground = GroundSet::new(labels)?;
        for (i, row) in matrix.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.is_negative() {
                    return Err(Error::NegativeEntry { row: i, col: j });
                }
            }
            if !row[i].is_zero() {
                return Err(Error::NonzeroDiagonal(i));
            }
        }
        Ok(Self { ground, entries: matrix.into_iter().flatten().collect() })
    }

    pub fn with_default_labels(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let labels = GroundSet::default_labels(matrix.len()).labels;
        Self::new(labels, matrix)
    }

    /// Builds a distance from a function of index pairs. The diagonal is
    /// forced to zero; negative values are rejected.
    pub fn from_fn(ground: GroundSet, f: impl Fn(usize, usize) -> Rational) -> Result<Self> {
        let n = ground.len();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::zero() } else { f(i, j) }).collect())
            .collect();
        Self::new(ground.labels, matrix)
    }

    pub fn zero(n: usize) -> Self {
        Self {
            ground: GroundSet::default_labels(n),
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn labels(&self) -> &[String] {
        self.ground.labels()
    }

    #[inline]
    pub fn get(&self, s: usize, t: usize) -> &Rational {
        &self.entries[s * self.n() + t]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.n()).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n();
        Self {
            ground: self.ground.clone(),
            entries: (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect(),
        }
    }

    /// `mu + mu^t`.
    pub fn symmetrization(&self) -> Self {
        let n = self.n();
        Self {
            ground: self.ground.clone(),
            entries: (0..n * n)
                .map(|k| self.get(k / n, k % n) + self.get(k % n, k / n))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            ground: self.ground.clone(),
            entries: self.entries.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn max_entry(&self) -> Rational {
        self.entries.iter().max().cloned().unwrap_or_else(Rational::zero)
    }

    /// First violated triangle inequality `d(x,y) + d(y,z) >= d(x,z)` in
    /// lexicographic order of `(x, y, z)`.
    pub fn triangle_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.get(x, y) + self.get(y, z) < *self.get(x, z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_metric(&self) -> bool {
        self.triangle_violation().is_none()
    }

    pub fn require_metric(&self) -> Result<()> {
        match self.triangle_violation() {
            None => Ok(()),
            Some((x, y, z)) => Err(Error::NotAMetric(format!(
                "d({a},{b}) + d({b},{c}) < d({a},{c})",
                a = self.ground.label(x),
                b = self.ground.label(y),
                c = self.ground.label(z)
            ))),
        }
    }

    /// Shortest-path closure; the result is the largest metric below `self`.
    pub fn metric_closure(&self) -> Self {
        let n = self.n();
        let mut e = self.entries.clone();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = &e[i * n + k] + &e[k * n + j];
                    if via < e[i * n + j] {
                        e[i * n + j] = via;
                    }
                }
            }
        }
        Self { ground: self.ground.clone(), entries: e }
    }
}

/// Nonempty cyclic list of element indices; repeats allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSequence {
    points: Vec<usize>,
}

impl CyclicSequence {
    pub fn new(points: Vec<usize>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Parse("cyclic sequence must be nonempty".into()));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    /// Consecutive pairs including the wrap-around pair.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.points.len();
        (0..m).map(move |i| (self.points[i], self.points[(i + 1) % m]))
    }
}

/// `alpha: V -> Q`, defined up to an additive constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential {
    pub values: Vec<Rational>,
}

/// `d(C) = d(p1,p2) + ... + d(pm,p1)`.
pub fn cycle_length(d: &DirectedDistance, c: &CyclicSequence) -> Result<Rational> {
    for &p in c.points() {
        d.ground.check_index(p)?;
    }
    Ok(c.steps().map(|(a, b)| d.get(a, b)).sum())
}

/// Finds `alpha` with `d(x,y) = d2(x,y) - alpha(x) + alpha(y)`, normalized to
/// `alpha(first) = 0`, or `None` when the two distances are not congruent.
pub fn congruence_witness(d: &DirectedDistance, d2: &DirectedDistance) -> Result<Option<Potential>> {
    if d.ground != d2.ground {
        return Err(Error::GroundSetMismatch);
    }
    let n = d.n();
    let alpha: Vec<Rational> = (0..n).map(|x| d.get(0, x) - d2.get(0, x)).collect();
    for x in 0..n {
        for y in 0..n {
            if *d.get(x, y) != d2.get(x, y) - &alpha[x] + &alpha[y] {
                return Ok(None);
            }
        }
    }
    Ok(Some(Potential { values: alpha }))
}

/// Congruence tested on 3-element cycles only; equivalent to full congruence.
pub fn congruent_on_triples(d: &DirectedDistance, d2: &DirectedDistance) -> Result<bool> {
    if d.ground != d2.ground {
        return Err(Error::GroundSetMismatch);
    }
    let n = d.n();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let a = d.get(x, y) + d.get(y, z) + d.get(z, x);
                let b = d2.get(x, y) + d2.get(y, z) + d2.get(z, x);
                if a != b {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Outcome of a brute-force condition check. `witness` is the
/// lexicographically smallest violating tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionCheck<const K: usize> {
    pub holds: bool,
    pub witness: Option<[usize; K]>,
}

impl<const K: usize> ConditionCheck<K> {
    fn from_witness(witness: Option<[usize; K]>) -> Self {
        Self { holds: witness.is_none(), witness }
    }
}

/// `mu(s,u) + mu(t,v) <= max{mu(s,v)+mu(t,u), mu(s,u), mu(s,v), mu(t,u), mu(t,v)}`
/// over all quadruples, repeats included.
pub fn check_path_condition(mu: &DirectedDistance) -> ConditionCheck<4> {
    let n = mu.n();
    let found = exec::find_first(0..n, |s| {
        for t in 0..n {
            for u in 0..n {
                for v in 0..n {
                    let lhs = mu.get(s, u) + mu.get(t, v);
                    let cross = mu.get(s, v) + mu.get(t, u);
                    let rhs = [&cross, mu.get(s, u), mu.get(s, v), mu.get(t, u), mu.get(t, v)]
                        .into_iter()
                        .max()
                        .unwrap();
                    if lhs > *rhs {
                        return Some([s, t, u, v]);
                    }
                }
            }
        }
        None
    });
    ConditionCheck::from_witness(found.map(|(_, w)| w))
}

/// Sextuple condition: the identity permutation sum of the 3×3 submatrix
/// `(x,y,z) × (u,v,w)` never strictly beats the other five permutations.
/// Equivalent to tropical rank of `-mu` at most 2.
pub fn check_tree_condition(mu: &DirectedDistance) -> ConditionCheck<6> {
    let n = mu.n();
    let found = exec::find_first(0..n, |x| {
        for y in 0..n {
            for z in 0..n {
                for u in 0..n {
                    for v in 0..n {
                        for w in 0..n {
                            let m = |a: usize, b: usize| mu.get(a, b);
                            let id = m(x, u) + m(y, v) + m(z, w);
                            let others = [
                                m(x, v) + m(y, u) + m(z, w),
                                m(x, v) + m(y, w) + m(z, u),
                                m(x, w) + m(y, u) + m(z, v),
                                m(x, w) + m(y, v) + m(z, u),
                                m(x, u) + m(y, w) + m(z, v),
                            ];
                            if others.iter().all(|o| *o < id) {
                                return Some([x, y, z, u, v, w]);
                            }
                        }
                    }
                }
            }
        }
        None
    });
    ConditionCheck::from_witness(found.map(|(_, w)| w))
}

/// Four point condition `d(s,t) + d(u,v) <= max{d(s,u)+d(t,v), d(s,v)+d(t,u)}`
/// for a (symmetric) distance.
pub fn four_point_violation(d: &DirectedDistance) -> Option<[usize; 4]> {
    let n = d.n();
    exec::find_first(0..n, |s| {
        for t in 0..n {
            for u in 0..n {
                for v in 0..n {
                    let lhs = d.get(s, t) + d.get(u, v);
                    let a = d.get(s, u) + d.get(t, v);
                    let b = d.get(s, v) + d.get(t, u);
                    if lhs > rational::max(&a, &b) {
                        return Some([s, t, u, v]);
                    }
                }
            }
        }
        None
    })
    .map(|(_, w)| w)
}

/// Directed tree metric test: `mu + mu^t` satisfies the four point condition
/// and every 3-cycle has the same length in both directions.
pub fn check_directed_tree_metric(mu: &DirectedDistance) -> Result<bool> {
    mu.require_metric()?;
    let n = mu.n();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let fwd = mu.get(x, y) + mu.get(y, z) + mu.get(z, x);
                let bwd = mu.get(z, y) + mu.get(y, x) + mu.get(x, z);
                if fwd != bwd {
                    return Ok(false);
                }
            }
        }
    }
    Ok(four_point_violation(&mu.symmetrization()).is_none())
}
