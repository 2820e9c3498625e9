use num_traits::{Signed, Zero};

use super::{in_p, in_tight_span, ExtPoint};
use crate::error::{Error, Result};
use crate::metric::DirectedDistance;
use crate::rational::Rational;

/// `φ[v, α](p)`: moves `p` along `v` as far as possible inside `P_μ`, for at
/// most time `alpha` (`None` means no time bound).
pub fn retract_ray(
    mu: &DirectedDistance,
    p: &ExtPoint,
    v: &ExtPoint,
    alpha: Option<&Rational>,
) -> Result<ExtPoint> {
    if p.n() != mu.n() || v.n() != mu.n() {
        return Err(Error::GroundSetMismatch);
    }
    if !in_p(mu, p) {
        return Err(Error::NotInP);
    }
    if alpha.is_some_and(|a| a.is_negative()) {
        return Err(Error::InvalidArgument("time bound must be nonnegative".into()));
    }
    match max_step(mu, p, v, alpha) {
        Some(eps) => Ok(p.add_scaled(v, &eps)),
        None => Err(Error::UnboundedDirection),
    }
}

/// Largest feasible `ε ∈ [0, alpha]`; `None` if unbounded.
fn max_step(
    mu: &DirectedDistance,
    p: &ExtPoint,
    v: &ExtPoint,
    alpha: Option<&Rational>,
) -> Option<Rational> {
    let n = mu.n();
    let mut best: Option<Rational> = alpha.cloned();
    let mut bound = |cand: Rational| {
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    };
    for u in 0..2 * n {
        let rate = v.coord(u);
        if rate.is_negative() {
            bound(p.coord(u) / -rate);
        }
    }
    for s in 0..n {
        for t in 0..n {
            let rate = &v.col[s] + &v.row[t];
            if rate.is_negative() {
                let slack = &p.col[s] + &p.row[t] - mu.get(s, t);
                bound(slack / -rate);
            }
        }
    }
    best
}

/// `value · 1_u` for a flat node index `u` (columns first, then rows).
pub fn unit_vector(n: usize, node: usize, value: Rational) -> ExtPoint {
    let mut v = ExtPoint::zero(n);
    if node < n {
        v.col[node] = value;
    } else {
        v.row[node - n] = value;
    }
    v
}

/// The retraction `φ: P_μ → T_μ`, `φ = φ_{s_1} ∘ … ∘ φ_{s_n}` with
/// `φ_s = φ[-1_{s^c}] ∘ φ[-1_{s^r}]`. Each step lowers one coordinate until it
/// reaches zero or gets covered by a tight edge, which has the closed form
/// `max(0, max_u μ(u,s) - p(u^c))` for `s^r` and symmetrically for `s^c`.
pub fn retract_to_tight_span(mu: &DirectedDistance, p: &ExtPoint) -> Result<ExtPoint> {
    if p.n() != mu.n() {
        return Err(Error::GroundSetMismatch);
    }
    if !in_p(mu, p) {
        return Err(Error::NotInP);
    }
    Ok(tight_span_unchecked(mu, p))
}

pub(crate) fn tight_span_unchecked(mu: &DirectedDistance, p: &ExtPoint) -> ExtPoint {
    let n = mu.n();
    let mut q = p.clone();
    for s in (0..n).rev() {
        let mut r = Rational::zero();
        for u in 0..n {
            let cand = mu.get(u, s) - &q.col[u];
            if cand > r {
                r = cand;
            }
        }
        q.row[s] = r;
        let mut c = Rational::zero();
        for u in 0..n {
            let cand = mu.get(s, u) - &q.row[u];
            if cand > c {
                c = cand;
            }
        }
        q.col[s] = c;
    }
    q
}

/// Nonempty proper subsets of `0..n` as bitmasks, by size and then by value.
/// Any ordering where `A ⊆ B` implies `A` comes first would do.
pub fn subset_order(n: usize) -> Vec<u64> {
    assert!(n < 64, "ground set too large for subset enumeration");
    if n == 0 {
        return Vec::new();
    }
    let full = (1u64 << n) - 1;
    let mut subsets: Vec<u64> = (1..full).collect();
    subsets.sort_by_key(|&m| (m.count_ones(), m));
    subsets
}

/// The retraction `T_μ → Q⁺_μ`, `φ^r ∘ φ^c` with
/// `φ^c_A = φ[(1_{A^c}, -1)]` and `φ^r_A = φ[(-1, 1_{A^r})]`.
pub fn retract_to_qplus(mu: &DirectedDistance, p: &ExtPoint) -> Result<ExtPoint> {
    if p.n() != mu.n() {
        return Err(Error::GroundSetMismatch);
    }
    if !in_tight_span(mu, p) {
        return Err(Error::NotInTightSpan);
    }
    let q = qplus_unchecked(mu, p);
    debug_assert!(super::in_qplus(mu, &q));
    Ok(q)
}

pub(crate) fn qplus_unchecked(mu: &DirectedDistance, p: &ExtPoint) -> ExtPoint {
    let n = mu.n();
    let order = subset_order(n);
    let mut q = p.clone();
    let one = Rational::from_integer(1.into());
    let indicator = |mask: u64| -> Vec<Rational> {
        (0..n)
            .map(|i| if mask >> i & 1 == 1 { one.clone() } else { Rational::zero() })
            .collect()
    };
    for &a in &order {
        let v = ExtPoint { col: indicator(a), row: vec![-one.clone(); n] };
        let eps = max_step(mu, &q, &v, None).expect("rows decrease so the step is bounded");
        if !eps.is_zero() {
            q = q.add_scaled(&v, &eps);
        }
    }
    for &a in &order {
        let v = ExtPoint { col: vec![-one.clone(); n], row: indicator(a) };
        let eps = max_step(mu, &q, &v, None).expect("columns decrease so the step is bounded");
        if !eps.is_zero() {
            q = q.add_scaled(&v, &eps);
        }
    }
    q
}
