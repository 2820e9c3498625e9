//! Matching criteria for `dim T_μ` and the tropical rank.
//!
//! For row and column subsets `A`, `B` of equal size, MT maximizes `μ(M)`
//! over all matchings of the complete bipartite graph on `(A^c, B^r)` and PMT
//! over perfect matchings only. `dim T_μ` is the largest `k` for which some
//! `k × k` instance has its MT optimum attained by a unique matching that is
//! perfect; the tropical rank is the largest `k` with a uniquely attained PMT
//! optimum.

use num_traits::Zero;

use crate::exec;
use crate::metric::DirectedDistance;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// All matchings, including the empty one.
    Mt,
    /// Perfect matchings only.
    Pmt,
}

/// Square weight matrix, rows indexed by `A^c` and columns by `B^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingInstance {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub weights: Vec<Vec<Rational>>,
}

impl MatchingInstance {
    pub fn from_distance(mu: &DirectedDistance, rows: &[usize], cols: &[usize]) -> Self {
        assert_eq!(rows.len(), cols.len(), "instance must be square");
        let weights = rows
            .iter()
            .map(|&a| cols.iter().map(|&b| mu.get(a, b).clone()).collect())
            .collect();
        Self { rows: rows.to_vec(), cols: cols.to_vec(), weights }
    }

    pub fn from_matrix(weights: Vec<Vec<Rational>>) -> Self {
        let k = weights.len();
        assert!(weights.iter().all(|r| r.len() == k), "instance must be square");
        Self { rows: (0..k).collect(), cols: (0..k).collect(), weights }
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingResult {
    pub value: Rational,
    /// Local `(row, col)` positions of the matched pairs.
    pub matching: Vec<(usize, usize)>,
}

/// Optimal perfect matching with optimal dual potentials, by the Hungarian
/// method on costs `max w - w`.
struct Assignment {
    /// `assign[i]` is the column matched to row `i`.
    assign: Vec<usize>,
    /// Reduced costs are `cost[i][j] - u[i] - v[j] >= 0`.
    tight: Vec<Vec<bool>>,
    value: Rational,
}

fn hungarian(w: &[Vec<Rational>]) -> Assignment {
    let n = w.len();
    if n == 0 {
        return Assignment { assign: vec![], tight: vec![], value: Rational::zero() };
    }
    let top = w.iter().flatten().max().cloned().unwrap();
    let cost: Vec<Vec<Rational>> =
        w.iter().map(|r| r.iter().map(|x| &top - x).collect()).collect();
    // 1-based arrays with a sentinel column 0
    let mut u = vec![Rational::zero(); n + 1];
    let mut v = vec![Rational::zero(); n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv: Vec<Option<Rational>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta: Option<Rational> = None;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = &cost[i0 - 1][j - 1] - &u[i0] - &v[j];
                if minv[j].as_ref().is_none_or(|m| cur < *m) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                let mj = minv[j].as_ref().unwrap();
                if delta.as_ref().is_none_or(|d| mj < d) {
                    delta = Some(mj.clone());
                    j1 = j;
                }
            }
            let delta = delta.expect("an unused column remains");
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += &delta;
                    v[j] -= &delta;
                } else if let Some(m) = minv[j].as_mut() {
                    *m -= &delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![0; n];
    for j in 1..=n {
        assign[p[j] - 1] = j - 1;
    }
    let tight = (0..n)
        .map(|i| (0..n).map(|j| (&cost[i][j] - &u[i + 1] - &v[j + 1]).is_zero()).collect())
        .collect();
    let value = (0..n).map(|i| w[i][assign[i]].clone()).sum();
    Assignment { assign, tight, value }
}

/// True if the equality subgraph contains a perfect matching other than the
/// current one, i.e. an alternating cycle exists.
fn has_alternating_cycle(a: &Assignment) -> bool {
    let n = a.assign.len();
    // row i -> row i' when (i, assign[i']) is tight
    let mut owner = vec![0; n];
    for (i, &j) in a.assign.iter().enumerate() {
        owner[j] = i;
    }
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != a.assign[i] && a.tight[i][j]).map(|j| owner[j]).collect())
        .collect();
    // colors: 0 new, 1 on stack, 2 done
    let mut color = vec![0u8; n];
    fn visit(x: usize, succ: &[Vec<usize>], color: &mut [u8]) -> bool {
        color[x] = 1;
        for &y in &succ[x] {
            if color[y] == 1 || (color[y] == 0 && visit(y, succ, color)) {
                return true;
            }
        }
        color[x] = 2;
        false
    }
    (0..n).any(|x| color[x] == 0 && visit(x, &succ, &mut color))
}

fn minor(w: &[Vec<Rational>], skip_row: usize, skip_col: usize) -> Vec<Vec<Rational>> {
    w.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_row)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != skip_col).map(|(_, x)| x.clone()).collect())
        .collect()
}

/// Optimum of MT or PMT. With nonnegative weights both optima coincide; the MT
/// witness drops zero-weight pairs from an optimal perfect matching.
pub fn max_matching(inst: &MatchingInstance, mode: Mode) -> MatchingResult {
    let a = hungarian(&inst.weights);
    let matching = a
        .assign
        .iter()
        .enumerate()
        .map(|(i, &j)| (i, j))
        .filter(|&(i, j)| mode == Mode::Pmt || !inst.weights[i][j].is_zero())
        .collect();
    MatchingResult { value: a.value, matching }
}

fn pmt_unique(w: &[Vec<Rational>]) -> bool {
    !has_alternating_cycle(&hungarian(w))
}

/// MT optimum attained only by one matching, which is perfect: the PMT
/// optimum is unique and every `(k-1) × (k-1)` minor has a strictly smaller
/// optimum (otherwise some non-perfect matching ties).
fn mt_unique_perfect(w: &[Vec<Rational>]) -> bool {
    let a = hungarian(w);
    if has_alternating_cycle(&a) {
        return false;
    }
    let k = w.len();
    (0..k).all(|i| (0..k).all(|j| hungarian(&minor(w, i, j)).value < a.value))
}

pub fn is_unique_optimum(inst: &MatchingInstance, mode: Mode) -> bool {
    match mode {
        Mode::Pmt => pmt_unique(&inst.weights),
        Mode::Mt => mt_unique_perfect(&inst.weights),
    }
}

/// A `k × k` instance certifying a rank value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub value: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// Global `(row, col)` pairs of the unique optimal perfect matching.
    pub matching: Vec<(usize, usize)>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn largest_certified(
    w: &[Vec<Rational>],
    test: impl Fn(&[Vec<Rational>]) -> bool + Sync + Send,
) -> Option<RankCertificate> {
    let m = w.len();
    let ncols = w.first().map_or(0, |r| r.len());
    for k in (1..=m.min(ncols)).rev() {
        let row_sets = subsets(m, k);
        let col_sets = subsets(ncols, k);
        let pairs = row_sets.len() * col_sets.len();
        let hit = exec::find_first(0..pairs, |idx| {
            let rows = &row_sets[idx / col_sets.len()];
            let cols = &col_sets[idx % col_sets.len()];
            let sub: Vec<Vec<Rational>> =
                rows.iter().map(|&a| cols.iter().map(|&b| w[a][b].clone()).collect()).collect();
            test(&sub).then_some(sub)
        });
        if let Some((idx, sub)) = hit {
            let rows = row_sets[idx / col_sets.len()].clone();
            let cols = col_sets[idx % col_sets.len()].clone();
            let a = hungarian(&sub);
            let matching = a.assign.iter().enumerate().map(|(i, &j)| (rows[i], cols[j])).collect();
            return Some(RankCertificate { value: k, rows, cols, matching });
        }
    }
    None
}

/// `dim T` for an arbitrary (possibly rectangular) nonnegative weight matrix.
pub fn dim_tight_span_matrix(w: &[Vec<Rational>]) -> Option<RankCertificate> {
    largest_certified(w, mt_unique_perfect)
}

/// Tropical rank of `-w` for an arbitrary nonnegative weight matrix.
pub fn tropical_rank_matrix(w: &[Vec<Rational>]) -> Option<RankCertificate> {
    largest_certified(w, pmt_unique)
}

pub fn dim_tight_span_certificate(mu: &DirectedDistance) -> Option<RankCertificate> {
    dim_tight_span_matrix(&mu.rows())
}

pub fn tropical_rank_certificate(mu: &DirectedDistance) -> RankCertificate {
    tropical_rank_matrix(&mu.rows()).expect("every 1x1 instance is uniquely attained")
}

pub fn dim_tight_span(mu: &DirectedDistance) -> usize {
    dim_tight_span_certificate(mu).map_or(0, |c| c.value)
}

pub fn tropical_rank(mu: &DirectedDistance) -> usize {
    tropical_rank_certificate(mu).value
}
