use num_traits::Zero;
use proptest::prelude::*;

use tightspan::geometry::{
    canonical_points, classify_membership, dinf, dinf_plus, extend_to_balanced_section, geodesic_polyline,
    in_p, is_balanced, mu_point, retract_to_qplus, retract_to_section, retract_to_tight_span, symmetric_norm,
    ExtPoint, Fiber, Membership,
};
use tightspan::lp::{self, LinearProgram, Relation, Sense, Status};
use tightspan::random::{
    random_metric, random_point_in_p, random_q_point, random_qplus_point, random_tight_point, rng, EntryShape,
    SeededRng,
};
use tightspan::rational::{int, Rational};
use tightspan::{DirectedDistance, GroundSet};

fn shape() -> EntryShape {
    EntryShape::default()
}

fn random_mu(r: &mut SeededRng, n: usize) -> DirectedDistance {
    tightspan::random::random_distance(r, n, &shape())
}

fn pos(x: &Rational) -> Rational {
    if x > &Rational::zero() {
        x.clone()
    } else {
        Rational::zero()
    }
}

/// `max_i (q_i - p_i)_+`, written out independently.
fn oracle_dplus(p: &[Rational], q: &[Rational]) -> Rational {
    p.iter().zip(q).map(|(a, b)| pos(&(b - a))).fold(Rational::zero(), |m, v| if v > m { v } else { m })
}

fn oracle_dinf(p: &ExtPoint, q: &ExtPoint) -> Rational {
    let a = oracle_dplus(&p.col, &q.col);
    let b = oracle_dplus(&q.row, &p.row);
    if a > b {
        a
    } else {
        b
    }
}

fn max_of(it: impl Iterator<Item = Rational>) -> Rational {
    it.fold(Rational::zero(), |m, v| if v > m { v } else { m })
}

/// `max{(v^c)_+, (-v^r)_+} + max{(-v^c)_+, (v^r)_+}`.
fn oracle_norm(v: &ExtPoint) -> Rational {
    let a = max_of(v.col.iter().map(pos).chain(v.row.iter().map(|x| pos(&-x))));
    let b = max_of(v.col.iter().map(|x| pos(&-x)).chain(v.row.iter().map(pos)));
    a + b
}

fn cycle_len(pts: &[ExtPoint], idx: &[usize]) -> Rational {
    (0..idx.len()).map(|i| oracle_dinf(&pts[idx[i]], &pts[idx[(i + 1) % idx.len()]])).sum()
}

/// Whether `p` is a minimal point of `P_μ`, by LP: the smallest coordinate
/// sum over points of `P_μ` below `p` equals the sum of `p`.
fn oracle_minimal(mu: &DirectedDistance, p: &ExtPoint) -> bool {
    let n = mu.n();
    let mut lp = LinearProgram::new(Sense::Min, vec![int(1); 2 * n]);
    for s in 0..n {
        for t in 0..n {
            lp.add_sparse(&[(s, int(1)), (n + t, int(1))], Relation::Ge, mu.get(s, t).clone());
        }
    }
    for (j, x) in p.coords().enumerate() {
        lp.set_bounds(j, int(0), Some(x.clone()));
    }
    let sol = lp::solve(&lp).unwrap();
    assert_eq!(sol.status, Status::Optimal);
    sol.objective == p.coords().sum::<Rational>()
}

/// All sequences over `0..m` of length `2..=max_len`.
fn sequences(m: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<Vec<usize>> = vec![vec![]];
    for len in 1..=max_len {
        cur = cur.into_iter().flat_map(|c| (0..m).map(move |i| [c.clone(), vec![i]].concat())).collect();
        if len >= 2 {
            out.extend(cur.iter().cloned());
        }
    }
    out
}

#[test]
fn dinf_examples() {
    assert_eq!(dinf_plus(&[int(0), int(0)], &[int(1), int(-5)]).unwrap(), int(1));
    assert_eq!(dinf_plus(&[int(3), int(1)], &[int(1), int(2)]).unwrap(), int(1));
    let mu = DirectedDistance::from_fn(GroundSet::default_labels(3), |s, t| int((s != t) as i64)).unwrap();
    assert_eq!(dinf(&mu_point(&mu, 0), &mu_point(&mu, 1)).unwrap(), int(1));
    let p = mu_point(&mu, 0);
    assert_eq!(dinf(&p, &p.fiber_shift(&int(2))).unwrap(), int(2));
    assert_eq!(classify_membership(&mu, &p.fiber_shift(&int(1))), Membership::QNotNonneg);
    assert_eq!(classify_membership(&mu, &ExtPoint::constant(3, int(2), int(2))), Membership::PNotT);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dinf_matches_oracle_and_norm(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let mu = random_mu(&mut r, n);
        for _ in 0..8 {
            let p = random_point_in_p(&mut r, &mu, &shape()).fiber_shift(&int(-1));
            let q = random_q_point(&mut r, &mu, &shape());
            prop_assert_eq!(dinf(&p, &q).unwrap(), oracle_dinf(&p, &q));
            let sum = oracle_dinf(&p, &q) + oracle_dinf(&q, &p);
            prop_assert_eq!(&oracle_norm(&p.sub(&q)), &sum);
            prop_assert_eq!(&symmetric_norm(&p.sub(&q)), &sum);
        }
    }

    #[test]
    fn membership_matches_lp_minimality(seed in any::<u64>(), n in 1usize..4) {
        let mut r = rng(seed);
        let mu = random_mu(&mut r, n);
        for _ in 0..4 {
            for p in [random_point_in_p(&mut r, &mu, &shape()), random_tight_point(&mut r, &mu, &shape())] {
                let m = classify_membership(&mu, &p);
                prop_assert!(in_p(&mu, &p));
                prop_assert_eq!(m.in_tight_span(), oracle_minimal(&mu, &p));
            }
        }
    }

    #[test]
    fn mutual_distances(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let mu = random_mu(&mut r, n);
        for _ in 0..10 {
            let p = random_tight_point(&mut r, &mu, &shape());
            let q = random_tight_point(&mut r, &mu, &shape());
            let d = oracle_dinf(&p, &q);
            prop_assert_eq!(&oracle_dplus(&p.col, &q.col), &d);
            prop_assert_eq!(&oracle_dplus(&q.row, &p.row), &d);
            let p = random_q_point(&mut r, &mu, &shape());
            let q = random_q_point(&mut r, &mu, &shape());
            let d = oracle_dinf(&p, &q);
            prop_assert_eq!(&oracle_dplus(&p.col, &q.col), &d);
            prop_assert_eq!(&oracle_dplus(&q.row, &p.row), &d);
            let col_less = p.col.iter().zip(&q.col).all(|(a, b)| a < b);
            let row_more = p.row.iter().zip(&q.row).all(|(a, b)| a > b);
            prop_assert_eq!(col_less, row_more);
        }
    }

    #[test]
    fn tight_span_retraction_is_nonexpansive(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let mu = random_mu(&mut r, n);
        for _ in 0..10 {
            let p = random_point_in_p(&mut r, &mu, &shape());
            let q = random_point_in_p(&mut r, &mu, &shape());
            let (fp, fq) = (retract_to_tight_span(&mu, &p).unwrap(), retract_to_tight_span(&mu, &q).unwrap());
            prop_assert!(fp.le(&p));
            prop_assert!(classify_membership(&mu, &fp).in_tight_span());
            prop_assert!(oracle_dinf(&fp, &fq) <= oracle_dinf(&p, &q));
            prop_assert_eq!(retract_to_tight_span(&mu, &fp).unwrap(), fp);
        }
    }

    #[test]
    fn qplus_retraction_is_cyclically_nonexpansive(seed in any::<u64>(), n in 1usize..5, len in 1usize..7) {
        let mut r = rng(seed);
        let mu = random_mu(&mut r, n);
        let pts: Vec<ExtPoint> = (0..len).map(|_| random_tight_point(&mut r, &mu, &shape())).collect();
        let img: Vec<ExtPoint> = pts.iter().map(|p| retract_to_qplus(&mu, p).unwrap()).collect();
        let idx: Vec<usize> = (0..len).collect();
        prop_assert!(cycle_len(&img, &idx) <= cycle_len(&pts, &idx));
        for q in &img {
            prop_assert_eq!(classify_membership(&mu, q), Membership::Qplus);
            prop_assert_eq!(&retract_to_qplus(&mu, q).unwrap(), q);
        }
    }

    #[test]
    fn section_retraction_and_balance(seed in any::<u64>(), n in 1usize..4, m in 1usize..5) {
        let mut r = rng(seed);
        let mu = random_mu(&mut r, n);
        let mut u: Vec<ExtPoint> = (0..m).map(|_| random_q_point(&mut r, &mu, &shape())).collect();
        if seed % 2 == 0 {
            u = u.iter().map(|p| retract_to_section(&mu, p).unwrap()).collect();
        }
        let img: Vec<ExtPoint> = u.iter().map(|p| retract_to_section(&mu, p).unwrap()).collect();
        let mut all_equal = true;
        for c in sequences(m, 4) {
            let (before, after) = (cycle_len(&u, &c), cycle_len(&img, &c));
            prop_assert!(after <= before);
            all_equal &= after == before;
        }
        prop_assert_eq!(all_equal, is_balanced(&u).unwrap());
    }

    #[test]
    fn embedding_identities(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let mu = random_mu(&mut r, n);
        let cps: Vec<_> = (0..n).map(|s| canonical_points(&mu, s).unwrap()).collect();
        for s in 0..n {
            prop_assert!(classify_membership(&mu, &cps[s].entrance).in_tight_span());
            prop_assert!(classify_membership(&mu, &cps[s].exit).in_tight_span());
            for t in 0..n {
                prop_assert_eq!(&oracle_dinf(&cps[s].exit, &cps[t].entrance), mu.get(s, t));
            }
        }
        for _ in 0..6 {
            let p = random_tight_point(&mut r, &mu, &shape());
            for s in 0..n {
                prop_assert_eq!(&p.col[s], &oracle_dinf(&cps[s].exit, &p));
                prop_assert_eq!(&p.row[s], &oracle_dinf(&p, &cps[s].entrance));
            }
        }
        let metric = random_metric(&mut r, n, &shape());
        for s in 0..n {
            let c = canonical_points(&metric, s).unwrap();
            prop_assert!(c.center == c.entrance && c.center == c.exit);
            for t in 0..n {
                prop_assert_eq!(&oracle_dinf(&mu_point(&metric, s), &mu_point(&metric, t)), metric.get(s, t));
            }
        }
    }

    #[test]
    fn geodesics_are_exact(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let mu = random_mu(&mut r, n);
        let p = random_tight_point(&mut r, &mu, &shape());
        let q = random_tight_point(&mut r, &mu, &shape());
        for k in [1usize, 2, 4, 8, 16] {
            let line = geodesic_polyline(&mu, &p, &q, k).unwrap();
            prop_assert_eq!(line.points.len(), k + 1);
            prop_assert_eq!(&line.points[0], &p);
            prop_assert_eq!(&line.points[k], &q);
            prop_assert!(line.points.iter().all(|x| classify_membership(&mu, x).in_tight_span()));
            prop_assert_eq!(&line.total, &oracle_dinf(&p, &q));
        }
    }

    #[test]
    fn helly_extension_stays_balanced(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let mu = random_metric(&mut r, n, &shape());
        let base: Vec<ExtPoint> = (0..n).map(|s| mu_point(&mu, s)).collect();
        let queries: Vec<Fiber> = (0..4).map(|_| Fiber::new(random_q_point(&mut r, &mu, &shape()))).collect();
        let ans = extend_to_balanced_section(&mu, &base, &queries).unwrap();
        for (a, f) in ans.iter().zip(&queries) {
            prop_assert_eq!(&Fiber::new(a.clone()), f);
            prop_assert_eq!(classify_membership(&mu, a), Membership::Qplus);
        }
        let all: Vec<ExtPoint> = base.iter().chain(&ans).cloned().collect();
        prop_assert!(is_balanced(&all).unwrap());
        let own = extend_to_balanced_section(&mu, &base, &[Fiber::new(base[0].clone())]).unwrap();
        prop_assert_eq!(&own[0], &base[0]);
    }

    #[test]
    fn qplus_points_on_random_q(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let mu = random_mu(&mut r, n);
        let p = random_qplus_point(&mut r, &mu, &shape());
        let s = retract_to_section(&mu, &p).unwrap();
        prop_assert!(s.row.iter().any(|x| x.is_zero()));
        prop_assert_eq!(Fiber::new(s), Fiber::new(p));
    }
}
