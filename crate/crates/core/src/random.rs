//! Seeded generators for distances, points and networks.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::flow::{Edge, Network};
use crate::geometry::{retract_to_qplus, retract_to_tight_span, ExtPoint};
use crate::metric::{DirectedDistance, GroundSet};
use crate::rational::{ratio, Rational};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of random rational entries: numerators in `0..=max_num`,
/// denominators in `1..=max_den`, and a share of exact zeros so that ties and
/// degenerate cases show up regularly.
#[derive(Clone, Copy, Debug)]
pub struct EntryShape {
    pub max_num: i64,
    pub max_den: i64,
    pub zero_prob: f64,
}

impl Default for EntryShape {
    fn default() -> Self {
        Self { max_num: 6, max_den: 3, zero_prob: 0.2 }
    }
}

pub fn random_rational<R: Rng>(rng: &mut R, shape: &EntryShape) -> Rational {
    if rng.gen_bool(shape.zero_prob) {
        return ratio(0, 1);
    }
    ratio(rng.gen_range(0..=shape.max_num), rng.gen_range(1..=shape.max_den))
}

pub fn random_distance<R: Rng>(rng: &mut R, n: usize, shape: &EntryShape) -> DirectedDistance {
    let entries: Vec<Rational> = (0..n * n).map(|_| random_rational(rng, shape)).collect();
    DirectedDistance::from_fn(GroundSet::default_labels(n), |s, t| entries[s * n + t].clone())
        .expect("generated entries are valid")
}

/// Metric closure of a random distance.
pub fn random_metric<R: Rng>(rng: &mut R, n: usize, shape: &EntryShape) -> DirectedDistance {
    random_distance(rng, n, shape).metric_closure()
}

/// A point of `P_μ`: random columns, rows lifted to feasibility plus a random
/// surplus.
pub fn random_point_in_p<R: Rng>(rng: &mut R, mu: &DirectedDistance, shape: &EntryShape) -> ExtPoint {
    let n = mu.n();
    let col: Vec<Rational> = (0..n).map(|_| random_rational(rng, shape)).collect();
    let row: Vec<Rational> = (0..n)
        .map(|t| {
            let need = (0..n)
                .map(|s| mu.get(s, t) - &col[s])
                .fold(ratio(0, 1), |m, v| if v > m { v } else { m });
            need + random_rational(rng, shape)
        })
        .collect();
    ExtPoint { col, row }
}

pub fn random_tight_point<R: Rng>(rng: &mut R, mu: &DirectedDistance, shape: &EntryShape) -> ExtPoint {
    let p = random_point_in_p(rng, mu, shape);
    retract_to_tight_span(mu, &p).expect("generated point lies in P")
}

pub fn random_qplus_point<R: Rng>(rng: &mut R, mu: &DirectedDistance, shape: &EntryShape) -> ExtPoint {
    let p = random_tight_point(rng, mu, shape);
    retract_to_qplus(mu, &p).expect("tight point")
}

/// A point of `Q_μ`: a point of `Q⁺_μ` moved along `(1,-1)` by a random amount.
pub fn random_q_point<R: Rng>(rng: &mut R, mu: &DirectedDistance, shape: &EntryShape) -> ExtPoint {
    let p = random_qplus_point(rng, mu, shape);
    let t = random_rational(rng, shape) - random_rational(rng, shape);
    p.fiber_shift(&t)
}

/// A network on `nv` vertices whose first `ns` vertices are the terminals,
/// with capacities in `0..=max_cap`. Eulerian networks are sums of random
/// simple cycles.
pub fn random_network<R: Rng>(rng: &mut R, nv: usize, ns: usize, max_cap: u64, eulerian: bool) -> Network {
    let mut cap = vec![vec![0u64; nv]; nv];
    if eulerian {
        for _ in 0..rng.gen_range(0..=2 * nv) {
            let len = rng.gen_range(2..=nv);
            let mut order: Vec<usize> = (0..nv).collect();
            order.shuffle(rng);
            order.truncate(len);
            let steps: Vec<(usize, usize)> = (0..len).map(|i| (order[i], order[(i + 1) % len])).collect();
            if steps.iter().all(|&(x, y)| cap[x][y] < max_cap) {
                for (x, y) in steps {
                    cap[x][y] += 1;
                }
            }
        }
    } else {
        for row in cap.iter_mut() {
            for c in row.iter_mut() {
                if rng.gen_bool(0.4) {
                    *c = rng.gen_range(0..=max_cap);
                }
            }
        }
    }
    let mut edges = Vec::new();
    for (x, row) in cap.iter().enumerate() {
        for (y, &c) in row.iter().enumerate() {
            if x != y && (c > 0 || (!eulerian && rng.gen_bool(0.05))) {
                edges.push(Edge { tail: x, head: y, cap: c });
            }
        }
    }
    Network::new(GroundSet::default_labels(nv).labels().to_vec(), edges, (0..ns).collect())
        .expect("generated network is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
use crate::geometry::{classify_membership, in_p, Membership};

    #[test]
    fn generators_are_seeded_and_valid() {
        let shape = EntryShape::default();
        let a = random_distance(&mut rng(3), 4, &shape);
        let b = random_distance(&mut rng(3), 4, &shape);
        assert_eq!(a, b);
        let mut r = rng(11);
        for _ in 0..20 {
            let mu = random_metric(&mut r, 3, &shape);
            assert!(mu.is_metric());
            assert!(in_p(&mu, &random_point_in_p(&mut r, &mu, &shape)));
            assert!(classify_membership(&mu, &random_tight_point(&mut r, &mu, &shape)).in_tight_span());
            assert_eq!(classify_membership(&mu, &random_qplus_point(&mut r, &mu, &shape)), Membership::Qplus);
            assert!(classify_membership(&mu, &random_q_point(&mut r, &mu, &shape)).in_q());
        }
        for _ in 0..20 {
            assert!(random_network(&mut r, 5, 3, 3, true).is_eulerian());
            let net = random_network(&mut r, 5, 2, 3, false);
            assert!(net.edges().iter().all(|e| e.cap <= 3));
        }
    }
}
