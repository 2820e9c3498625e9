use super::retract::tight_span_unchecked;
use super::{dinf_unchecked, in_tight_span, ExtPoint};
use crate::error::{Error, Result};
use crate::metric::DirectedDistance;
use crate::rational::{ratio, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyline {
    pub points: Vec<ExtPoint>,
    /// `D∞` length of each consecutive step.
    pub steps: Vec<Rational>,
    pub total: Rational,
}

/// Retracts `k + 1` evenly spaced samples of the segment `[p, q]` into `T_μ`.
/// The result is a polyline in `T_μ` whose `D∞` length is exactly `D∞(p, q)`.
pub fn geodesic_polyline(
    mu: &DirectedDistance,
    p: &ExtPoint,
    q: &ExtPoint,
    k: usize,
) -> Result<Polyline> {
    if p.n() != mu.n() || q.n() != mu.n() {
        return Err(Error::GroundSetMismatch);
    }
    if k == 0 {
        return Err(Error::InvalidArgument("subdivision count must be at least 1".into()));
    }
    if !in_tight_span(mu, p) || !in_tight_span(mu, q) {
        return Err(Error::NotInTightSpan);
    }
    let k_i64 = i64::try_from(k).map_err(|_| Error::InvalidArgument("k too large".into()))?;
    let points: Vec<ExtPoint> = (0..=k_i64)
        .map(|i| tight_span_unchecked(mu, &p.lerp(q, &ratio(i, k_i64))))
        .collect();
    let steps: Vec<Rational> = points.windows(2).map(|w| dinf_unchecked(&w[0], &w[1])).collect();
    let total = steps.iter().sum();
    Ok(Polyline { points, steps, total })
}
