//! Exact rational linear programming: a dense two-phase primal simplex with
//! Bland's rule, returning a dual certificate with every optimum.
//!
//! Variables carry finite lower bounds (default 0) and optional upper bounds.
//! Internally `x = l + y` with `y >= 0`, and upper bounds become `<=` rows.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Min,
    Max,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }

    fn flipped(self) -> Self {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Eq => Relation::Eq,
            Relation::Ge => Relation::Le,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub lower: Vec<Rational>,
    pub upper: Vec<Option<Rational>>,
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        Self {
            sense,
            objective,
            constraints: Vec::new(),
            lower: vec![Rational::zero(); n],
            upper: vec![None; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    /// Adds `Σ coeff·x_j (rel) rhs` from sparse `(j, coeff)` terms.
    pub fn add_sparse(&mut self, terms: &[(usize, Rational)], relation: Relation, rhs: Rational) {
        let mut coeffs = vec![Rational::zero(); self.num_vars()];
        for (j, c) in terms {
            coeffs[*j] += c;
        }
        self.add_constraint(coeffs, relation, rhs);
    }

    pub fn set_bounds(&mut self, j: usize, lower: Rational, upper: Option<Rational>) {
        self.lower[j] = lower;
        self.upper[j] = upper;
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.lower.len() != n || self.upper.len() != n {
            return Err(Error::MalformedLP("bound vectors do not match the variable count".into()));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(Error::MalformedLP(format!(
                    "constraint {i} has {} coefficients, expected {n}",
                    c.coeffs.len()
                )));
            }
        }
        for j in 0..n {
            if let Some(u) = &self.upper[j] {
                if *u < self.lower[j] {
                    return Err(Error::MalformedLP(format!("variable {j} has upper bound below lower bound")));
                }
            }
        }
        Ok(())
    }
}

/// Fixed human-readable dump, one line per row.
impl fmt::Display for LinearProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sense = match self.sense {
            Sense::Min => "minimize",
            Sense::Max => "maximize",
        };
        let terms = |coeffs: &[Rational]| -> String {
            let parts: Vec<String> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| format!("{} x{j}", rational::format(c)))
                .collect();
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            }
        };
        writeln!(f, "{sense} {}", terms(&self.objective))?;
        writeln!(f, "subject to")?;
        for (i, c) in self.constraints.iter().enumerate() {
            writeln!(f, "  c{i}: {} {} {}", terms(&c.coeffs), c.relation.symbol(), rational::format(&c.rhs))?;
        }
        writeln!(f, "bounds")?;
        for j in 0..self.num_vars() {
            match &self.upper[j] {
                Some(u) => writeln!(f, "  {} <= x{j} <= {}", rational::format(&self.lower[j]), rational::format(u))?,
                None => writeln!(f, "  x{j} >= {}", rational::format(&self.lower[j]))?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPSolution {
    pub status: Status,
    /// Primal values; empty unless optimal.
    pub primal: Vec<Rational>,
    /// One dual value per constraint; empty unless optimal.
    pub dual: Vec<Rational>,
    /// Dual values of the upper bounds (zero where there is none).
    pub upper_dual: Vec<Rational>,
    /// Reduced costs, the dual values of the lower bounds.
    pub reduced_cost: Vec<Rational>,
    pub objective: Rational,
}

impl LPSolution {
    fn without_optimum(status: Status) -> Self {
        Self {
            status,
            primal: vec![],
            dual: vec![],
            upper_dual: vec![],
            reduced_cost: vec![],
            objective: Rational::zero(),
        }
    }

    /// `b·y + u·z + l·r`.
    pub fn dual_objective(&self, lp: &LinearProgram) -> Rational {
        let mut v: Rational = lp.constraints.iter().zip(&self.dual).map(|(c, y)| &c.rhs * y).sum();
        for j in 0..lp.num_vars() {
            if let Some(u) = &lp.upper[j] {
                v += u * &self.upper_dual[j];
            }
            v += &lp.lower[j] * &self.reduced_cost[j];
        }
        v
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    /// Current reduced costs, last entry is minus the objective value.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        let support: Vec<usize> = (0..=self.width).filter(|&j| !self.rows[r][j].is_zero()).collect();
        for &j in &support {
            self.rows[r][j] = &self.rows[r][j] / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &support {
                row[j] -= &f * &pivot_row[j];
            }
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for &j in &support {
                self.cost[j] -= &f * &pivot_row[j];
            }
        }
        self.basis[r] = c;
    }

    /// Bland's rule on columns `< limit`. Returns false if unbounded.
    fn optimize(&mut self, limit: usize) -> bool {
        loop {
            let Some(enter) = (0..limit).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }

    fn set_cost(&mut self, c: &[Rational]) {
        let mut cost: Vec<Rational> = c.to_vec();
        cost.push(Rational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            if c[b].is_zero() {
                continue;
            }
            for j in 0..=self.width {
                if !self.rows[i][j].is_zero() {
                    cost[j] -= &c[b] * &self.rows[i][j];
                }
            }
        }
        self.cost = cost;
    }
}

pub fn solve(lp: &LinearProgram) -> Result<LPSolution> {
    lp.validate()?;
    let n = lp.num_vars();
    let sigma = match lp.sense {
        Sense::Min => Rational::from_integer(1.into()),
        Sense::Max => Rational::from_integer((-1).into()),
    };

    // internal rows over y = x - l: constraints, then upper bounds
    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = lp
        .constraints
        .iter()
        .map(|c| {
            let shift: Rational = c.coeffs.iter().zip(&lp.lower).map(|(a, l)| a * l).sum();
            (c.coeffs.clone(), c.relation, &c.rhs - shift)
        })
        .collect();
    let mut ub_row = vec![None; n];
    for j in 0..n {
        if let Some(u) = &lp.upper[j] {
            let mut a = vec![Rational::zero(); n];
            a[j] = Rational::from_integer(1.into());
            ub_row[j] = Some(rows.len());
            rows.push((a, Relation::Le, u - &lp.lower[j]));
        }
    }
    let m = rows.len();
    let mut flip = vec![false; m];
    for (i, row) in rows.iter_mut().enumerate() {
        if row.2.is_negative() {
            flip[i] = true;
            row.0.iter_mut().for_each(|a| *a = -a.clone());
            row.1 = row.1.flipped();
            row.2 = -row.2.clone();
        }
    }

    // columns: structural, one slack per inequality, one artificial per >= or = row
    let mut slack_col = vec![None; m];
    let mut art_col = vec![None; m];
    let mut width = n;
    for (i, row) in rows.iter().enumerate() {
        if row.1 != Relation::Eq {
            slack_col[i] = Some(width);
            width += 1;
        }
    }
    let first_art = width;
    for (i, row) in rows.iter().enumerate() {
        if row.1 != Relation::Le {
            art_col[i] = Some(width);
            width += 1;
        }
    }
    let mut t = Tableau { rows: Vec::with_capacity(m), cost: vec![], basis: vec![0; m], width };
    for (i, (a, rel, b)) in rows.iter().enumerate() {
        let mut r = vec![Rational::zero(); width + 1];
        r[..n].clone_from_slice(a);
        if let Some(s) = slack_col[i] {
            r[s] = Rational::from_integer(if *rel == Relation::Le { 1 } else { -1 }.into());
        }
        if let Some(a) = art_col[i] {
            r[a] = Rational::from_integer(1.into());
            t.basis[i] = a;
        } else {
            t.basis[i] = slack_col[i].unwrap();
        }
        r[width] = b.clone();
        t.rows.push(r);
    }
    // unit column of each row in the starting basis, for reading duals
    let unit_col: Vec<usize> = t.basis.clone();

    // phase 1
    let mut phase1 = vec![Rational::zero(); width];
    for j in first_art..width {
        phase1[j] = Rational::from_integer(1.into());
    }
    t.set_cost(&phase1);
    t.optimize(width);
    if !t.cost[width].is_zero() {
        return Ok(LPSolution::without_optimum(Status::Infeasible));
    }
    // drive zero-level artificials out where possible; rows where this fails
    // are redundant and keep their artificial basic at zero
    for i in 0..m {
        if t.basis[i] >= first_art {
            if let Some(j) = (0..first_art).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j);
            }
        }
    }

    // phase 2 on sigma * c, artificials may not enter
    let mut c2 = vec![Rational::zero(); width];
    for j in 0..n {
        c2[j] = &sigma * &lp.objective[j];
    }
    t.set_cost(&c2);
    if !t.optimize(first_art) {
        return Ok(LPSolution::without_optimum(Status::Unbounded));
    }

    let mut y = vec![Rational::zero(); width];
    for (i, &b) in t.basis.iter().enumerate() {
        y[b] = t.rhs(i).clone();
    }
    let primal: Vec<Rational> = (0..n).map(|j| &lp.lower[j] + &y[j]).collect();
    // w_i = c_unit - d_unit with c_unit = 0 in phase 2
    let w: Vec<Rational> = (0..m)
        .map(|i| {
            let d = &t.cost[unit_col[i]];
            let v = -d.clone();
            let v = if flip[i] { -v } else { v };
            &sigma * v
        })
        .collect();
    let dual: Vec<Rational> = w[..lp.constraints.len()].to_vec();
    let upper_dual: Vec<Rational> =
        (0..n).map(|j| ub_row[j].map_or_else(Rational::zero, |r| w[r].clone())).collect();
    let reduced_cost: Vec<Rational> = (0..n)
        .map(|j| {
            let ay: Rational = lp.constraints.iter().zip(&dual).map(|(c, yi)| &c.coeffs[j] * yi).sum();
            &lp.objective[j] - ay - &upper_dual[j]
        })
        .collect();
    let objective = lp.objective.iter().zip(&primal).map(|(c, x)| c * x).sum();
    Ok(LPSolution { status: Status::Optimal, primal, dual, upper_dual, reduced_cost, objective })
}

/// Outcome of checking an optimal solution by direct substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateCheck {
    pub primal_feasible: bool,
    pub dual_feasible: bool,
    pub primal_objective: Rational,
    pub dual_objective: Rational,
}

impl CertificateCheck {
    pub fn ok(&self) -> bool {
        self.primal_feasible && self.dual_feasible && self.primal_objective == self.dual_objective
    }
}

pub fn verify_certificate(lp: &LinearProgram, sol: &LPSolution) -> Result<CertificateCheck> {
    lp.validate()?;
    if sol.status != Status::Optimal {
        return Err(Error::InvalidArgument("only optimal solutions carry a certificate".into()));
    }
    let n = lp.num_vars();
    let x = &sol.primal;
    let mut primal_feasible = x.len() == n;
    for j in 0..n.min(x.len()) {
        primal_feasible &= x[j] >= lp.lower[j];
        if let Some(u) = &lp.upper[j] {
            primal_feasible &= x[j] <= *u;
        }
    }
    if primal_feasible {
        for c in &lp.constraints {
            let lhs: Rational = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            primal_feasible &= match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            };
        }
    }
    // sign conventions of the minimization dual, after multiplying by sigma
    let sigma = if lp.sense == Sense::Min { 1 } else { -1 };
    let s = |v: &Rational| v * Rational::from_integer(sigma.into());
    let mut dual_feasible = sol.dual.len() == lp.constraints.len()
        && sol.upper_dual.len() == n
        && sol.reduced_cost.len() == n;
    if dual_feasible {
        for (c, y) in lp.constraints.iter().zip(&sol.dual) {
            let y = s(y);
            dual_feasible &= match c.relation {
                Relation::Le => !y.is_positive(),
                Relation::Eq => true,
                Relation::Ge => !y.is_negative(),
            };
        }
        for j in 0..n {
            let z = s(&sol.upper_dual[j]);
            dual_feasible &= if lp.upper[j].is_some() { !z.is_positive() } else { z.is_zero() };
            dual_feasible &= !s(&sol.reduced_cost[j]).is_negative();
            let ay: Rational = lp.constraints.iter().zip(&sol.dual).map(|(c, y)| &c.coeffs[j] * y).sum();
            dual_feasible &= lp.objective[j] == ay + &sol.upper_dual[j] + &sol.reduced_cost[j];
        }
    }
    let primal_objective = lp.objective.iter().zip(x).map(|(c, v)| c * v).sum();
    let dual_objective = if dual_feasible { sol.dual_objective(lp) } else { Rational::zero() };
    Ok(CertificateCheck { primal_feasible, dual_feasible, primal_objective, dual_objective })
}
