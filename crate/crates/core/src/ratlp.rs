//! Exact two-phase primal simplex over arbitrary-precision rationals, with
//! Bland's rule for entering and leaving variables.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// `maximize objective . x` subject to the constraints; variables flagged in
/// `nonneg` are restricted to `x >= 0`, the others are free.
#[derive(Debug, Clone)]
pub struct RationalLp {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub nonneg: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, witness: Vec<Rational> },
    Unbounded,
    Infeasible,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

impl RationalLp {
    /// `vars` non-negative variables and a zero objective.
    pub fn new(vars: usize) -> Self {
        RationalLp { objective: vec![Rational::zero(); vars], constraints: Vec::new(), nonneg: vec![true; vars] }
    }

    pub fn vars(&self) -> usize {
        self.objective.len()
    }

    pub fn maximize(mut self, objective: Vec<Rational>) -> Self {
        assert_eq!(objective.len(), self.vars());
        self.objective = objective;
        self
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.vars());
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn set_free(&mut self, var: usize) {
        self.nonneg[var] = false;
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.vars()
            && x.iter().zip(&self.nonneg).all(|(v, &nn)| !nn || !v.is_negative())
            && self.constraints.iter().all(|c| c.satisfied_by(x))
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    /// Reduced costs; last entry is the current objective value.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let nz: Vec<usize> = (0..=self.cols).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nz {
                let v = &f * &pivot_row[j];
                row[j] -= v;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    /// Maximizes with Bland's rule, only letting columns in `allowed` enter.
    fn run(&mut self, allowed: &[bool]) -> Step {
        loop {
            let Some(enter) = (0..self.cols).find(|&j| allowed[j] && self.obj[j].is_negative()) else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return Step::Unbounded,
            }
        }
    }

    fn set_objective(&mut self, costs: &[Rational]) {
        let mut obj: Vec<Rational> = costs.iter().map(|c| -c).collect();
        obj.push(Rational::zero());
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (o, x) in obj.iter_mut().zip(&self.rows[r]) {
                if !x.is_zero() {
                    *o += cb * x;
                }
            }
        }
        self.obj = obj;
    }
}

pub fn solve_max(lp: &RationalLp) -> Result<LpOutcome> {
    let v = lp.vars();
    if v == 0 {
        return Err(Error::param("linear program has no variables"));
    }
    if lp.nonneg.len() != v || lp.constraints.iter().any(|c| c.coeffs.len() != v) {
        return Err(Error::param("linear program dimensions are inconsistent"));
    }

    // structural columns: free variables are split into a positive and a
    // negative part
    let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(v);
    let mut nstruct = 0;
    for &nn in &lp.nonneg {
        if nn {
            col_of.push((nstruct, None));
            nstruct += 1;
        } else {
            col_of.push((nstruct, Some(nstruct + 1)));
            nstruct += 2;
        }
    }

    struct Row {
        coeffs: Vec<Rational>,
        rel: Relation,
        rhs: Rational,
    }
    let rows: Vec<Row> = lp
        .constraints
        .iter()
        .map(|c| {
            let mut coeffs = vec![Rational::zero(); nstruct];
            for (i, a) in c.coeffs.iter().enumerate() {
                let (p, n) = col_of[i];
                coeffs[p] = a.clone();
                if let Some(n) = n {
                    coeffs[n] = -a;
                }
            }
            let flip = c.rhs.is_negative() || (c.rhs.is_zero() && c.relation == Relation::Ge);
            if flip {
                Row {
                    coeffs: coeffs.into_iter().map(|x| -x).collect(),
                    rel: match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    },
                    rhs: -&c.rhs,
                }
            } else {
                Row { coeffs, rel: c.relation, rhs: c.rhs.clone() }
            }
        })
        .collect();

    let n_slack = rows.iter().filter(|r| r.rel != Relation::Eq).count();
    let n_art = rows.iter().filter(|r| r.rel != Relation::Le).count();
    let cols = nstruct + n_slack + n_art;
    let art_start = nstruct + n_slack;

    let mut tab = Tableau { rows: Vec::with_capacity(rows.len()), obj: Vec::new(), basis: Vec::new(), cols };
    let (mut s, mut a) = (nstruct, art_start);
    for row in rows {
        let mut t = row.coeffs;
        t.resize(cols + 1, Rational::zero());
        t[cols] = row.rhs;
        match row.rel {
            Relation::Le => {
                t[s] = Rational::one();
                tab.basis.push(s);
                s += 1;
            }
            Relation::Ge => {
                t[s] = -Rational::one();
                s += 1;
                t[a] = Rational::one();
                tab.basis.push(a);
                a += 1;
            }
            Relation::Eq => {
                t[a] = Rational::one();
                tab.basis.push(a);
                a += 1;
            }
        }
        tab.rows.push(t);
    }

    // phase 1: maximize -(sum of artificials)
    if n_art > 0 {
        let costs: Vec<Rational> =
            (0..cols).map(|j| if j >= art_start { -Rational::one() } else { Rational::zero() }).collect();
        tab.set_objective(&costs);
        let all = vec![true; cols];
        if let Step::Unbounded = tab.run(&all) {
            return Err(Error::defect("phase-one problem reported unbounded"));
        }
        if tab.obj[cols].is_negative() {
            return Ok(LpOutcome::Infeasible);
        }
        // drive zero-valued artificials out of the basis; drop redundant rows
        let mut r = 0;
        while r < tab.rows.len() {
            if tab.basis[r] >= art_start {
                match (0..art_start).find(|&j| !tab.rows[r][j].is_zero()) {
                    Some(j) => {
                        tab.pivot(r, j);
                        r += 1;
                    }
                    None => {
                        tab.rows.remove(r);
                        tab.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
    }

    // phase 2
    let mut costs = vec![Rational::zero(); cols];
    for (i, c) in lp.objective.iter().enumerate() {
        let (p, n) = col_of[i];
        costs[p] = c.clone();
        if let Some(n) = n {
            costs[n] = -c;
        }
    }
    tab.set_objective(&costs);
    let allowed: Vec<bool> = (0..cols).map(|j| j < art_start).collect();
    if let Step::Unbounded = tab.run(&allowed) {
        return Ok(LpOutcome::Unbounded);
    }

    let mut values = vec![Rational::zero(); cols];
    for (r, &b) in tab.basis.iter().enumerate() {
        values[b] = tab.rows[r][cols].clone();
    }
    let witness: Vec<Rational> = col_of
        .iter()
        .map(|&(p, n)| match n {
            Some(n) => &values[p] - &values[n],
            None => values[p].clone(),
        })
        .collect();
    if !lp.is_feasible(&witness) {
        return Err(Error::defect("simplex witness violates a constraint"));
    }
    let value: Rational = lp.objective.iter().zip(&witness).map(|(c, x)| c * x).sum();
    if value != tab.obj[cols] {
        return Err(Error::defect("simplex objective disagrees with its witness"));
    }
    Ok(LpOutcome::Optimal { value, witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn single_bound() {
        let mut lp = RationalLp::new(1).maximize(ints(&[1]));
        lp.add(ints(&[1]), Relation::Le, rat(3));
        assert_eq!(solve_max(&lp).unwrap().value(), Some(&rat(3)));
    }

    #[test]
    fn two_variable_vertex() {
        let mut lp = RationalLp::new(2).maximize(ints(&[1, 1]));
        lp.add(ints(&[1, 2]), Relation::Le, rat(4));
        lp.add(ints(&[3, 1]), Relation::Le, rat(6));
        match solve_max(&lp).unwrap() {
            LpOutcome::Optimal { value, witness } => {
                assert_eq!(value, r(14, 5));
                assert_eq!(witness, vec![r(8, 5), r(6, 5)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = RationalLp::new(1).maximize(ints(&[1]));
        lp.add(ints(&[1]), Relation::Ge, rat(1));
        lp.add(ints(&[-1]), Relation::Ge, rat(0));
        assert_eq!(solve_max(&lp).unwrap(), LpOutcome::Infeasible);

        let mut lp = RationalLp::new(2).maximize(ints(&[1, 0]));
        lp.add(ints(&[1, -1]), Relation::Le, rat(1));
        assert_eq!(solve_max(&lp).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn equality_and_free_variables() {
        // maximize -x + y, x free, x + y = 2, y <= 5  =>  x = -3, y = 5
        let mut lp = RationalLp::new(2).maximize(ints(&[-1, 1]));
        lp.set_free(0);
        lp.add(ints(&[1, 1]), Relation::Eq, rat(2));
        lp.add(ints(&[0, 1]), Relation::Le, rat(5));
        match solve_max(&lp).unwrap() {
            LpOutcome::Optimal { value, witness } => {
                assert_eq!(value, rat(8));
                assert_eq!(witness, ints(&[-3, 5]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = RationalLp::new(2).maximize(ints(&[1, 2]));
        lp.add(ints(&[1, 1]), Relation::Eq, rat(1));
        lp.add(ints(&[2, 2]), Relation::Eq, rat(2));
        lp.add(ints(&[0, 1]), Relation::Eq, rat(0));
        assert_eq!(solve_max(&lp).unwrap().value(), Some(&rat(1)));
    }
}
