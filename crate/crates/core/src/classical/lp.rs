//! Dense two-phase simplex over exact rationals, and the correlated
//! equilibrium LP built on it.
//!
//! Pivots use the largest reduced cost and switch to Bland's rule after a run
//! of degenerate steps, so the method terminates without any tolerance.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{deviate, ClassicalError, LocalFn, PayoffTable};
use crate::game::{GameSpec, PayoffParams};
use crate::rational::{to_big, to_small, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    /// Sparse `(variable, coefficient)` pairs.
    pub coeffs: Vec<(usize, BigRational)>,
    pub relation: Relation,
    pub rhs: BigRational,
}

/// `maximize objective·x` subject to the constraints and `x >= 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<BigRational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: BigRational, x: Vec<BigRational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    cols: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.cols
    }

    /// Reduced-cost row for `costs`; the last entry is minus the objective.
    fn reduced_costs(&self, costs: &[BigRational]) -> Vec<BigRational> {
        let mut r: Vec<BigRational> = costs.iter().cloned().chain(std::iter::once(BigRational::zero())).collect();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (rj, tj) in r.iter_mut().zip(row) {
                if !tj.is_zero() {
                    *rj -= cb * tj;
                }
            }
        }
        r
    }

    fn pivot(&mut self, p: usize, q: usize, reduced: &mut [BigRational]) {
        let inv = self.rows[p][q].recip();
        for v in self.rows[p].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let nonzero: Vec<usize> = (0..=self.cols).filter(|&j| !self.rows[p][j].is_zero()).collect();
        let pivot_row: Vec<BigRational> = nonzero.iter().map(|&j| self.rows[p][j].clone()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == p || row[q].is_zero() {
                continue;
            }
            let f = row[q].clone();
            for (&j, a) in nonzero.iter().zip(&pivot_row) {
                row[j] -= &f * a;
            }
        }
        if !reduced[q].is_zero() {
            let f = reduced[q].clone();
            for (&j, a) in nonzero.iter().zip(&pivot_row) {
                reduced[j] -= &f * a;
            }
        }
        self.basis[p] = q;
    }

    fn run(&mut self, reduced: &mut [BigRational], allowed: &[bool]) -> Step {
        const DEGENERATE_LIMIT: usize = 50;
        let mut degenerate = 0usize;
        loop {
            let eligible = (0..self.cols).filter(|&j| allowed[j] && reduced[j].is_positive());
            let entering = if degenerate >= DEGENERATE_LIMIT {
                eligible.min()
            } else {
                eligible.max_by(|&a, &b| reduced[a].cmp(&reduced[b]).then(b.cmp(&a)))
            };
            let Some(q) = entering else {
                return Step::Optimal;
            };
            let rhs = self.rhs();
            let mut best: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[q].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[q];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((p, ratio)) = best else {
                return Step::Unbounded;
            };
            if ratio.is_zero() {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(p, q, reduced);
        }
    }
}

impl LinearProgram {
    pub fn solve(&self) -> LpOutcome {
        let n = self.num_vars;
        let m = self.constraints.len();
        let slack_count = self.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        let cols = n + slack_count + m;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut is_artificial = vec![false; cols];
        let mut slack_col = n;
        for (i, c) in self.constraints.iter().enumerate() {
            let mut row = vec![BigRational::zero(); cols + 1];
            for (v, a) in &c.coeffs {
                row[*v] += a;
            }
            row[cols] = c.rhs.clone();
            let mut relation = c.relation;
            // flip so that rhs >= 0, and so that `... >= 0` rows get a slack basis
            if c.rhs.is_negative() || (c.rhs.is_zero() && relation == Relation::Ge) {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
                relation = match relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            let art = n + slack_count + i;
            match relation {
                Relation::Le => {
                    row[slack_col] = BigRational::one();
                    basis.push(slack_col);
                    slack_col += 1;
                }
                Relation::Ge => {
                    row[slack_col] = -BigRational::one();
                    slack_col += 1;
                    row[art] = BigRational::one();
                    is_artificial[art] = true;
                    basis.push(art);
                }
                Relation::Eq => {
                    row[art] = BigRational::one();
                    is_artificial[art] = true;
                    basis.push(art);
                }
            }
            rows.push(row);
        }
        let mut t = Tableau { rows, basis, cols };

        // Phase 1: maximise minus the sum of artificials.
        let phase1: Vec<BigRational> =
            (0..cols).map(|j| if is_artificial[j] { -BigRational::one() } else { BigRational::zero() }).collect();
        let mut reduced = t.reduced_costs(&phase1);
        let all = vec![true; cols];
        t.run(&mut reduced, &all);
        if reduced[cols].is_positive() {
            // -(objective) > 0 means some artificial is still positive
            return LpOutcome::Infeasible;
        }
        // Drive remaining (zero-valued) artificials out of the basis.
        let mut i = 0;
        while i < t.rows.len() {
            if is_artificial[t.basis[i]] {
                match (0..cols).find(|&j| !is_artificial[j] && !t.rows[i][j].is_zero()) {
                    Some(q) => {
                        let mut dummy = vec![BigRational::zero(); cols + 1];
                        t.pivot(i, q, &mut dummy);
                    }
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }

        let mut costs = vec![BigRational::zero(); cols];
        costs[..n].clone_from_slice(&self.objective);
        let mut reduced = t.reduced_costs(&costs);
        let allowed: Vec<bool> = (0..cols).map(|j| !is_artificial[j]).collect();
        match t.run(&mut reduced, &allowed) {
            Step::Unbounded => LpOutcome::Unbounded,
            Step::Optimal => {
                let mut x = vec![BigRational::zero(); n];
                for (row, &b) in t.rows.iter().zip(&t.basis) {
                    if b < n {
                        x[b] = row[cols].clone();
                    }
                }
                LpOutcome::Optimal { value: -reduced[cols].clone(), x }
            }
        }
    }
}

/// Best social welfare over correlated equilibria of the local-function
/// game: distributions over profiles, drawn independently of the types,
/// under which no player gains by replacing a recommended local function.
pub fn best_correlated_sw(game: &GameSpec, params: &PayoffParams) -> Result<Rational, ClassicalError> {
    let n = game.players();
    if n > 6 {
        return Err(ClassicalError::TooManyPlayers { players: n, limit: 6 });
    }
    let u = PayoffTable::new(game)?.utilities(params);
    let profiles = u.profiles();
    let objective: Vec<BigRational> = (0..profiles).map(|i| to_big(&u.social_welfare(i))).collect();
    let mut constraints = Vec::new();
    for j in 0..n {
        let shift = 2 * (n - 1 - j);
        for f in LocalFn::ALL {
            for g in LocalFn::ALL.into_iter().filter(|&g| g != f) {
                let coeffs = (0..profiles)
                    .filter(|&i| (i >> shift) & 3 == f.code() as usize)
                    .filter_map(|i| {
                        let gain = u.get(i)[j] - u.get(deviate(i, n, j, g))[j];
                        (!num_traits::Zero::is_zero(&gain)).then(|| (i, to_big(&gain)))
                    })
                    .collect();
                constraints.push(Constraint { coeffs, relation: Relation::Ge, rhs: BigRational::zero() });
            }
        }
    }
    constraints.push(Constraint {
        coeffs: (0..profiles).map(|i| (i, BigRational::one())).collect(),
        relation: Relation::Eq,
        rhs: BigRational::one(),
    });
    let lp = LinearProgram { num_vars: profiles, objective, constraints };
    match lp.solve() {
        LpOutcome::Optimal { value, .. } => Ok(to_small(&value).expect("social welfare fits in 64 bits")),
        // point masses on pure Nash profiles are feasible and SW is bounded
        other => panic!("correlated equilibrium LP cannot be {other:?}"),
    }
}

#[allow(dead_code)]
fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
