//! Exact two-phase simplex over the rationals.
//!
//! Problems are reduced to standard form (nonnegative variables, equality rows
//! with nonnegative right-hand sides) and solved on a dense tableau. Pivoting
//! starts with the largest-coefficient rule and switches permanently to Bland's
//! rule as soon as a run of degenerate pivots is observed, so every input
//! terminates.

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Variable bounds; `None` on a side means unbounded on that side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl Bounds {
    pub fn non_negative() -> Self {
        Bounds { lower: Some(Rational::zero()), upper: None }
    }

    pub fn free() -> Self {
        Bounds { lower: None, upper: None }
    }

    pub fn between(lower: Rational, upper: Rational) -> Self {
        Bounds { lower: Some(lower), upper: Some(upper) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<Bounds>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpResult {
    pub fn is_optimal(&self) -> bool {
        matches!(self, LpResult::Optimal { .. })
    }
}

impl LpProblem {
    /// A problem over `objective.len()` nonnegative variables with no constraints.
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LpProblem {
            sense,
            objective,
            constraints: Vec::new(),
            bounds: vec![Bounds::non_negative(); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars(), "constraint dimension");
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self
    }

    pub fn set_bounds(&mut self, var: usize, bounds: Bounds) -> &mut Self {
        self.bounds[var] = bounds;
        self
    }

    pub fn is_well_formed(&self) -> bool {
        let n = self.num_vars();
        self.bounds.len() == n && self.constraints.iter().all(|c| c.coeffs.len() == n)
    }

    /// Whether `x` satisfies every constraint and bound exactly.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        let bounds_ok = self.bounds.iter().zip(x).all(|(b, v)| {
            b.lower.as_ref().is_none_or(|l| v >= l) && b.upper.as_ref().is_none_or(|u| v <= u)
        });
        bounds_ok
            && self.constraints.iter().all(|c| {
                let lhs = crate::linalg::dot(&c.coeffs, x);
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                }
            })
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        crate::linalg::dot(&self.objective, x)
    }
}

// x_i = offset + sum(coef * y_k) over standard-form variables y >= 0.
struct VarMap {
    offset: Rational,
    terms: Vec<(usize, Rational)>,
}

/// Solves `p` exactly. Panics if `p` is not well formed.
pub fn solve_lp(p: &LpProblem) -> LpResult {
    assert!(p.is_well_formed(), "malformed LP: dimensions disagree");

    // Standard-form variables.
    let mut maps = Vec::with_capacity(p.num_vars());
    let mut n_std = 0usize;
    let mut extra_rows: Vec<(usize, Rational)> = Vec::new(); // y_k <= ub
    for b in &p.bounds {
        let m = match (&b.lower, &b.upper) {
            (Some(l), Some(u)) => {
                let k = n_std;
                n_std += 1;
                extra_rows.push((k, u - l));
                VarMap { offset: l.clone(), terms: vec![(k, Rational::one())] }
            }
            (Some(l), None) => {
                let k = n_std;
                n_std += 1;
                VarMap { offset: l.clone(), terms: vec![(k, Rational::one())] }
            }
            (None, Some(u)) => {
                let k = n_std;
                n_std += 1;
                VarMap { offset: u.clone(), terms: vec![(k, -Rational::one())] }
            }
            (None, None) => {
                let k = n_std;
                n_std += 2;
                VarMap {
                    offset: Rational::zero(),
                    terms: vec![(k, Rational::one()), (k + 1, -Rational::one())],
                }
            }
        };
        maps.push(m);
    }

    // Rows over y.
    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
    for c in &p.constraints {
        let mut coeffs = vec![Rational::zero(); n_std];
        let mut rhs = c.rhs.clone();
        for (a, m) in c.coeffs.iter().zip(&maps) {
            if a.is_zero() {
                continue;
            }
            rhs -= a * &m.offset;
            for (k, f) in &m.terms {
                coeffs[*k] += a * f;
            }
        }
        rows.push((coeffs, c.relation, rhs));
    }
    for (k, ub) in extra_rows {
        let mut coeffs = vec![Rational::zero(); n_std];
        coeffs[k] = Rational::one();
        rows.push((coeffs, Relation::Le, ub));
    }

    let mut cost = vec![Rational::zero(); n_std];
    let mut cost_const = Rational::zero();
    for (c, m) in p.objective.iter().zip(&maps) {
        if c.is_zero() {
            continue;
        }
        cost_const += c * &m.offset;
        for (k, f) in &m.terms {
            cost[*k] += c * f;
        }
    }
    if p.sense == Sense::Minimize {
        cost.iter_mut().for_each(|c| *c = -&*c);
    }

    let y = match Tableau::solve(rows, n_std, &cost) {
        StdOutcome::Optimal(y) => y,
        StdOutcome::Infeasible => return LpResult::Infeasible,
        StdOutcome::Unbounded => return LpResult::Unbounded,
    };

    let point: Vec<Rational> = maps
        .iter()
        .map(|m| {
            let mut v = m.offset.clone();
            for (k, f) in &m.terms {
                v += f * &y[*k];
            }
            v
        })
        .collect();
    let value = p.objective_value(&point);
    debug_assert!(p.is_feasible(&point));
    let _ = cost_const;
    LpResult::Optimal { value, point }
}

enum StdOutcome {
    Optimal(Vec<Rational>),
    Infeasible,
    Unbounded,
}

struct Tableau {
    // rows x (cols + 1); last column is the right-hand side.
    a: Vec<Vec<Rational>>,
    // Reduced costs for a maximization; last entry is minus the objective value.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
    // Columns that may not enter the basis (artificials in phase two).
    blocked: Vec<bool>,
    bland: bool,
    degenerate_run: usize,
}

enum PivotStep {
    Optimal,
    Unbounded,
    Pivoted,
}

impl Tableau {
    fn solve(rows: Vec<(Vec<Rational>, Relation, Rational)>, n: usize, cost: &[Rational]) -> StdOutcome {
        let m = rows.len();
        let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();

        // Normalize right-hand sides to be nonnegative.
        let rows: Vec<(Vec<Rational>, Relation, Rational)> = rows
            .into_iter()
            .map(|(c, rel, b)| {
                if b.is_negative() {
                    let flipped = match rel {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.into_iter().map(|x| -x).collect(), flipped, -b)
                } else {
                    (c, rel, b)
                }
            })
            .collect();
        let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let cols = n + n_slack + n_art;

        let mut a = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut slack = n;
        let mut art = n + n_slack;
        for (coeffs, rel, b) in rows {
            let mut row = coeffs;
            row.resize(cols + 1, Rational::zero());
            row[cols] = b;
            match rel {
                Relation::Le => {
                    row[slack] = Rational::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                    row[art] = Rational::one();
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = Rational::one();
                    basis.push(art);
                    art += 1;
                }
            }
            a.push(row);
        }

        let is_art = |j: usize| j >= n + n_slack && j < cols;
        let mut t = Tableau {
            a,
            obj: vec![Rational::zero(); cols + 1],
            basis,
            cols,
            blocked: vec![false; cols],
            bland: false,
            degenerate_run: 0,
        };

        // Phase one: maximize -sum(artificials).
        if n_art > 0 {
            let mut c1 = vec![Rational::zero(); cols];
            for j in n + n_slack..cols {
                c1[j] = -Rational::one();
            }
            t.set_objective(&c1);
            loop {
                match t.step() {
                    PivotStep::Pivoted => {}
                    PivotStep::Optimal => break,
                    PivotStep::Unbounded => unreachable!("phase one is bounded"),
                }
            }
            if t.obj[cols].is_positive() {
                // -(objective) > 0 means sum of artificials > 0.
                return StdOutcome::Infeasible;
            }
            // Drive remaining artificials out of the basis.
            let mut r = 0;
            while r < t.a.len() {
                if is_art(t.basis[r]) {
                    if let Some(j) = (0..n + n_slack).find(|&j| !t.a[r][j].is_zero()) {
                        t.pivot(r, j);
                        r += 1;
                    } else {
                        t.a.remove(r);
                        t.basis.remove(r);
                    }
                } else {
                    r += 1;
                }
            }
            for j in n + n_slack..cols {
                t.blocked[j] = true;
            }
        }

        let mut c2 = vec![Rational::zero(); cols];
        c2[..n].clone_from_slice(cost);
        t.set_objective(&c2);
        t.bland = false;
        t.degenerate_run = 0;
        loop {
            match t.step() {
                PivotStep::Pivoted => {}
                PivotStep::Optimal => break,
                PivotStep::Unbounded => return StdOutcome::Unbounded,
            }
        }
        let mut y = vec![Rational::zero(); n];
        for (r, &b) in t.basis.iter().enumerate() {
            if b < n {
                y[b] = t.a[r][cols].clone();
            }
        }
        StdOutcome::Optimal(y)
    }

    fn set_objective(&mut self, c: &[Rational]) {
        // Reduced cost d_j = c_j - c_B B^-1 A_j; obj[cols] tracks -c_B x_B.
        let mut obj: Vec<Rational> = c.to_vec();
        obj.push(Rational::zero());
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &c[b];
            if cb.is_zero() {
                continue;
            }
            for (j, o) in obj.iter_mut().enumerate() {
                if !self.a[r][j].is_zero() {
                    *o -= cb * &self.a[r][j];
                }
            }
        }
        self.obj = obj;
    }

    fn step(&mut self) -> PivotStep {
        let entering = if self.bland {
            (0..self.cols).find(|&j| !self.blocked[j] && self.obj[j].is_positive())
        } else {
            let mut best: Option<usize> = None;
            for j in 0..self.cols {
                if self.blocked[j] || !self.obj[j].is_positive() {
                    continue;
                }
                if best.is_none_or(|b| self.obj[j] > self.obj[b]) {
                    best = Some(j);
                }
            }
            best
        };
        let Some(col) = entering else {
            return PivotStep::Optimal;
        };

        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..self.a.len() {
            let coef = &self.a[r][col];
            if !coef.is_positive() {
                continue;
            }
            let ratio = &self.a[r][self.cols] / coef;
            let better = match &leave {
                None => true,
                Some((lr, lratio)) => {
                    ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                }
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let Some((row, ratio)) = leave else {
            return PivotStep::Unbounded;
        };

        if ratio.is_zero() {
            self.degenerate_run += 1;
            if self.degenerate_run > self.a.len() + 1 {
                self.bland = true;
            }
        } else {
            self.degenerate_run = 0;
        }
        self.pivot(row, col);
        PivotStep::Pivoted
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.a[row][col].recip();
        for v in self.a[row].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = self.a[row].clone();
        for (r, line) in self.a.iter_mut().enumerate() {
            if r == row || line[col].is_zero() {
                continue;
            }
            let f = line[col].clone();
            for (v, p) in line.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        if !self.obj[col].is_zero() {
            let f = self.obj[col].clone();
            for (v, p) in self.obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[row] = col;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn qi(n: i64) -> Rational {
        Rational::integer(n)
    }

    #[test]
    fn box_maximum() {
        let mut p = LpProblem::new(Sense::Maximize, vec![qi(1)]);
        p.constrain(vec![qi(1)], Relation::Le, qi(1));
        p.constrain(vec![qi(1)], Relation::Ge, qi(0));
        assert_eq!(solve_lp(&p), LpResult::Optimal { value: qi(1), point: vec![qi(1)] });
    }

    #[test]
    fn contradictory_bounds() {
        let mut p = LpProblem::new(Sense::Maximize, vec![qi(1)]);
        p.constrain(vec![qi(1)], Relation::Le, qi(-1));
        p.constrain(vec![qi(1)], Relation::Ge, qi(0));
        assert_eq!(solve_lp(&p), LpResult::Infeasible);
    }

    #[test]
    fn unbounded_ray() {
        let mut p = LpProblem::new(Sense::Maximize, vec![qi(1), qi(1)]);
        p.constrain(vec![qi(1), qi(-1)], Relation::Le, qi(2));
        assert_eq!(solve_lp(&p), LpResult::Unbounded);
    }

    // 1D Chebyshev center of {-1, 1}: minimize l with |1-u| <= l, |-1-u| <= l.
    fn chebyshev_1d() -> LpProblem {
        // variables: u (free), l >= 0
        let mut p = LpProblem::new(Sense::Minimize, vec![qi(0), qi(1)]);
        p.set_bounds(0, Bounds::free());
        p.constrain(vec![qi(-1), qi(-1)], Relation::Le, qi(-1)); // 1 - u <= l
        p.constrain(vec![qi(1), qi(-1)], Relation::Le, qi(1)); // u - 1 <= l
        p.constrain(vec![qi(-1), qi(-1)], Relation::Le, qi(1)); // -1 - u <= l
        p.constrain(vec![qi(1), qi(-1)], Relation::Le, qi(-1)); // u + 1 <= l
        p
    }

    #[test]
    fn chebyshev_center_of_two_points() {
        let res = solve_lp(&chebyshev_1d());
        assert_eq!(res, LpResult::Optimal { value: qi(1), point: vec![qi(0), qi(1)] });
    }

    #[test]
    fn chebyshev_matches_grid_scan() {
        // Oracle: scan u over a rational grid, evaluate max(|1-u|, |-1-u|).
        let mut best = None::<Rational>;
        for k in -400..=400 {
            let u = q(k, 100);
            let v = std::cmp::max((qi(1) - &u).abs(), (qi(-1) - &u).abs());
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
        let LpResult::Optimal { value, .. } = solve_lp(&chebyshev_1d()) else {
            panic!("expected optimum");
        };
        assert_eq!(Some(value), best);
    }

    #[test]
    fn equality_and_bounds() {
        // maximize x + 2y s.t. x + y = 3, 0 <= x <= 2, 1/2 <= y <= 5/2
        let mut p = LpProblem::new(Sense::Maximize, vec![qi(1), qi(2)]);
        p.set_bounds(0, Bounds::between(qi(0), qi(2)));
        p.set_bounds(1, Bounds::between(q(1, 2), q(5, 2)));
        p.constrain(vec![qi(1), qi(1)], Relation::Eq, qi(3));
        assert_eq!(
            solve_lp(&p),
            LpResult::Optimal { value: q(11, 2), point: vec![q(1, 2), q(5, 2)] }
        );
    }

    #[test]
    fn upper_bound_only_variable() {
        // minimize x with x <= -2 and x >= -7  (upper-only bound, lower via row)
        let mut p = LpProblem::new(Sense::Minimize, vec![qi(1)]);
        p.set_bounds(0, Bounds { lower: None, upper: Some(qi(-2)) });
        p.constrain(vec![qi(1)], Relation::Ge, qi(-7));
        assert_eq!(solve_lp(&p), LpResult::Optimal { value: qi(-7), point: vec![qi(-7)] });
    }

    #[test]
    fn redundant_equalities() {
        let mut p = LpProblem::new(Sense::Maximize, vec![qi(1), qi(1)]);
        p.constrain(vec![qi(1), qi(1)], Relation::Eq, qi(1));
        p.constrain(vec![qi(2), qi(2)], Relation::Eq, qi(2));
        p.constrain(vec![qi(1), qi(0)], Relation::Le, q(1, 3));
        let LpResult::Optimal { value, point } = solve_lp(&p) else { panic!() };
        assert_eq!(value, qi(1));
        assert!(p.is_feasible(&point));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's classic cycling instance under the largest-coefficient rule.
        let mut p = LpProblem::new(Sense::Maximize, vec![q(3, 4), qi(-150), q(1, 50), qi(-6)]);
        p.constrain(vec![q(1, 4), qi(-60), q(-1, 25), qi(9)], Relation::Le, qi(0));
        p.constrain(vec![q(1, 2), qi(-90), q(-1, 50), qi(3)], Relation::Le, qi(0));
        p.constrain(vec![qi(0), qi(0), qi(1), qi(0)], Relation::Le, qi(1));
        let LpResult::Optimal { value, point } = solve_lp(&p) else { panic!() };
        assert_eq!(value, q(1, 20));
        assert!(p.is_feasible(&point));
    }

    #[test]
    fn deterministic() {
        let p = chebyshev_1d();
        assert_eq!(solve_lp(&p), solve_lp(&p));
    }
}
