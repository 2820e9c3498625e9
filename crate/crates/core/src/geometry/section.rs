use std::hash::{Hash, Hasher};

use super::{classify_membership, in_q, in_qplus, ExtPoint, Membership};
use crate::error::{Error, Result};
use crate::metric::DirectedDistance;
use crate::rational::Rational;

/// A point of `Q̄_μ`: an [`ExtPoint`] modulo the line `(1,-1)R`.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub representative: ExtPoint,
}

impl Fiber {
    pub fn new(representative: ExtPoint) -> Self {
        Self { representative }
    }

    /// The representative whose row part has minimum exactly zero.
    pub fn normalized(&self) -> ExtPoint {
        let m = min_of(&self.representative.row);
        self.representative.fiber_shift(&m)
    }
}

impl PartialEq for Fiber {
    fn eq(&self, other: &Self) -> bool {
        self.representative.n() == other.representative.n() && self.normalized() == other.normalized()
    }
}

impl Eq for Fiber {}

impl Hash for Fiber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.normalized().hash(state);
    }
}

fn min_of(v: &[Rational]) -> Rational {
    v.iter().min().cloned().expect("nonempty ground set")
}

fn max_of(v: &[Rational]) -> Rational {
    v.iter().max().cloned().expect("nonempty ground set")
}

fn strictly_below(a: &[Rational], b: &[Rational]) -> bool {
    a.iter().zip(b).all(|(x, y)| x < y)
}

/// First pair `(i, j)` with `p_i^c < p_j^c` or `p_i^r < p_j^r` strictly in
/// every coordinate.
pub fn balance_violation(points: &[ExtPoint]) -> Result<Option<(usize, usize)>> {
    if let Some(first) = points.first() {
        if points.iter().any(|p| p.n() != first.n()) {
            return Err(Error::GroundSetMismatch);
        }
    }
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            if i != j && (strictly_below(&p.col, &q.col) || strictly_below(&p.row, &q.row)) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

pub fn is_balanced(points: &[ExtPoint]) -> Result<bool> {
    Ok(balance_violation(points)?.is_none())
}

/// Membership in the canonical balanced section
/// `R = {p ∈ Q⁺_μ : min_t p(t^r) = 0}`.
pub fn canonical_section_membership(mu: &DirectedDistance, p: &ExtPoint) -> bool {
    p.n() == mu.n() && in_qplus(mu, p) && min_of(&p.row) == Rational::from_integer(0.into())
}

/// Retraction `Q_μ → R` onto the canonical section: the unique point of `R`
/// in the fiber of `p`.
pub fn retract_to_section(mu: &DirectedDistance, p: &ExtPoint) -> Result<ExtPoint> {
    if p.n() != mu.n() {
        return Err(Error::GroundSetMismatch);
    }
    if !in_q(mu, p) {
        return Err(Error::NotInQ);
    }
    Ok(p.fiber_shift(&min_of(&p.row)))
}

/// Bounds on the fiber parameter `t` of `p0 + t(1,-1)`; `None` is infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceInterval {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl BalanceInterval {
    pub fn whole_line() -> Self {
        Self { lower: None, upper: None }
    }

    pub fn intersect(&mut self, lower: Rational, upper: Rational) {
        if self.lower.as_ref().is_none_or(|l| lower > *l) {
            self.lower = Some(lower);
        }
        if self.upper.as_ref().is_none_or(|u| upper < *u) {
            self.upper = Some(upper);
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!((&self.lower, &self.upper), (Some(l), Some(u)) if l > u)
    }
}

/// Interval `L_q = [min (q - p0)^c, max (q - p0)^c]` of parameters `t` for
/// which `p0 + t(1,-1)` and `q` do not dominate each other.
pub fn balance_interval(p0: &ExtPoint, q: &ExtPoint) -> (Rational, Rational) {
    let diff: Vec<Rational> = q.col.iter().zip(&p0.col).map(|(a, b)| a - b).collect();
    (min_of(&diff), max_of(&diff))
}

/// Picks a representative for each queried fiber so that `B` together with the
/// answers stays balanced. Queries are processed in order and every answer is
/// added to the constraint set for the next one. When all of `B` lies in
/// `Q⁺_μ`, answers are also kept in `Q⁺_μ`. The lower endpoint of the feasible
/// interval is returned; with no constraints at all this is the lower end of
/// the `Q⁺_μ` window `max(-p0^c)`.
pub fn extend_to_balanced_section(
    mu: &DirectedDistance,
    base: &[ExtPoint],
    queries: &[Fiber],
) -> Result<Vec<ExtPoint>> {
    let n = mu.n();
    for p in base.iter().chain(queries.iter().map(|f| &f.representative)) {
        if p.n() != n {
            return Err(Error::GroundSetMismatch);
        }
        if !in_q(mu, p) {
            return Err(Error::NotInQ);
        }
    }
    if let Some((i, j)) = balance_violation(base)? {
        return Err(Error::NotBalanced(i, j));
    }
    let keep_nonnegative = base.iter().all(|p| classify_membership(mu, p) == Membership::Qplus);
    let mut placed: Vec<ExtPoint> = base.to_vec();
    let mut answers = Vec::with_capacity(queries.len());
    for fiber in queries {
        let p0 = &fiber.representative;
        let mut interval = BalanceInterval::whole_line();
        for q in &placed {
            let (l, u) = balance_interval(p0, q);
            interval.intersect(l, u);
        }
        if keep_nonnegative {
            let lo = max_of(&p0.col.iter().map(|c| -c).collect::<Vec<_>>());
            interval.intersect(lo, min_of(&p0.row));
        }
        if interval.is_empty() {
            return Err(Error::EmptyIntersection);
        }
        let t = interval
            .lower
            .clone()
            .or_else(|| interval.upper.clone())
            .unwrap_or_else(|| Rational::from_integer(0.into()));
        let answer = p0.fiber_shift(&t);
        placed.push(answer.clone());
        answers.push(answer);
    }
    debug_assert!(is_balanced(&placed).unwrap_or(false));
    Ok(answers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::mu_point;
    use crate::metric::GroundSet;
    use crate::rational::int;

    fn all_one(n: usize) -> DirectedDistance {
        DirectedDistance::from_fn(GroundSet::default_labels(n), |_, _| int(1)).unwrap()
    }

    #[test]
    fn balance_examples() {
        let mu = all_one(3);
        let pts: Vec<ExtPoint> = (0..3).map(|s| mu_point(&mu, s)).collect();
        assert!(is_balanced(&pts).unwrap());
        let p = pts[0].clone();
        assert_eq!(balance_violation(&[p.clone(), p.fiber_shift(&int(1))]).unwrap(), Some((0, 1)));
        assert!(is_balanced(&[p]).unwrap());
        assert!(is_balanced(&[]).unwrap());
    }

    #[test]
    fn section_examples() {
        let mu = all_one(3);
        let a = mu_point(&mu, 0);
        assert!(canonical_section_membership(&mu, &a));
        assert!(!canonical_section_membership(&mu, &a.fiber_shift(&int(1))));
        assert_eq!(retract_to_section(&mu, &a.fiber_shift(&int(5))).unwrap(), a);
        assert_eq!(retract_to_section(&mu, &a.fiber_shift(&int(-2))).unwrap(), a);
        assert_eq!(retract_to_section(&mu, &a).unwrap(), a);
        let z = DirectedDistance::zero(2);
        assert!(canonical_section_membership(&z, &ExtPoint::zero(2)));
        let one = DirectedDistance::zero(1);
        let p = ExtPoint::new(vec![int(3)], vec![int(-3)]).unwrap();
        assert_eq!(retract_to_section(&one, &p).unwrap(), ExtPoint::zero(1));
        assert_eq!(
            retract_to_section(&mu, &ExtPoint::constant(3, int(2), int(2))).unwrap_err(),
            Error::NotInQ
        );
    }

    #[test]
    fn fiber_equality() {
        let mu = all_one(3);
        let a = mu_point(&mu, 0);
        assert_eq!(Fiber::new(a.clone()), Fiber::new(a.fiber_shift(&int(7))));
        assert_ne!(Fiber::new(a), Fiber::new(mu_point(&mu, 1)));
    }

    #[test]
    fn extension_examples() {
        let mu = all_one(3);
        let a = mu_point(&mu, 0);
        let b = mu_point(&mu, 1);
        let out = extend_to_balanced_section(&mu, std::slice::from_ref(&a), &[Fiber::new(b.fiber_shift(&int(4)))])
            .unwrap();
        assert!(is_balanced(&[a.clone(), out[0].clone()]).unwrap());
        let out = extend_to_balanced_section(&mu, std::slice::from_ref(&a), &[Fiber::new(a.fiber_shift(&int(-3)))])
            .unwrap();
        assert_eq!(out[0], a);
        // no constraints: lower end of the nonnegative window, max(-p0^c)
        let out = extend_to_balanced_section(&mu, &[], &[Fiber::new(a.fiber_shift(&int(2)))]).unwrap();
        assert_eq!(out[0], a.fiber_shift(&int(0)));
        assert_eq!(
            extend_to_balanced_section(&mu, &[a.clone(), a.fiber_shift(&int(1))], &[]).unwrap_err(),
            Error::NotBalanced(0, 1)
        );
    }
}
