//! Equilibrium sets as a function of `r = v0/v1`.
//!
//! With `v1 = 1` and the penalty fixed, every utility comparison between a
//! profile and one of its unilateral deviations is affine in `r`, so the
//! equilibrium set can only change at the roots of those differences.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::{ClassicalError, Criterion, EquilibriumReport, Enumerator, LocalFn, Regime, Ties};
use crate::game::{GameSpec, PayoffParams};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointAnalysis {
    pub r: Rational,
    pub report: EquilibriumReport,
    /// Whether the set at `r` is exactly the union of the neighbouring
    /// interval sets (endpoints compare against their single neighbour).
    pub union_of_neighbors: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioRegimes {
    /// Interior points of `(0, 1)` where the equilibrium set changes.
    pub breakpoints: Vec<Rational>,
    /// Maximal open intervals on which the set is constant, in order.
    pub intervals: Vec<EquilibriumReport>,
    /// The endpoints `0`, `1` and every breakpoint.
    pub points: Vec<PointAnalysis>,
}

impl RatioRegimes {
    /// Report of the open interval containing `r`, if `r` is not a breakpoint.
    pub fn interval_at(&self, r: Rational) -> Option<&EquilibriumReport> {
        self.intervals.iter().find(|rep| rep.regime.as_ref().is_some_and(|g| g.contains(r)))
    }

    pub fn point_at(&self, r: Rational) -> Option<&PointAnalysis> {
        self.points.iter().find(|p| p.r == r)
    }
}

fn params_at(r: Rational, ng: Rational) -> PayoffParams {
    PayoffParams { v0: r, v1: Rational::one(), ng }
}

/// Roots in `(0, 1)` of every deviation comparison the criterion looks at.
fn candidate_roots(en: &Enumerator<'_>, ng: Rational, criterion: Criterion) -> BTreeSet<Rational> {
    let table = en.table();
    let n = table.players();
    let mut roots = BTreeSet::new();
    for i in 0..table.len() {
        let base = &table.row(i).payoffs;
        for j in 0..n {
            let own = LocalFn::ALL[(i >> (2 * (n - 1 - j))) & 3];
            for g in LocalFn::ALL.into_iter().filter(|&g| g != own) {
                let dev = &table.row(super::deviate(i, n, j, g)).payoffs;
                let players: Vec<usize> = match criterion {
                    Criterion::Nash => vec![j],
                    Criterion::Pareto => (0..n).collect(),
                };
                for k in players {
                    let (a0, b0) = base[k].coefficients(ng);
                    let (a1, b1) = dev[k].coefficients(ng);
                    let (a, b) = (a1 - a0, b1 - b0);
                    if !a.is_zero() {
                        let root = -b / a;
                        if root > Rational::zero() && root < Rational::one() {
                            roots.insert(root);
                        }
                    }
                }
            }
        }
    }
    roots
}

/// Splits `[0, 1]` into regimes with constant equilibrium set.
pub fn ratio_regimes(game: &GameSpec, ng: Rational, criterion: Criterion) -> Result<RatioRegimes, ClassicalError> {
    let en = Enumerator::new(game)?;
    let candidates: Vec<Rational> = candidate_roots(&en, ng, criterion).into_iter().collect();
    let mut cuts = vec![Rational::zero()];
    cuts.extend(candidates.iter().copied());
    cuts.push(Rational::one());

    let set_at = |r: Rational| en.indices(&params_at(r, ng), criterion, Ties::Weak);
    let point_sets: Vec<Vec<usize>> = cuts.iter().map(|&c| set_at(c)).collect();
    let open_sets: Vec<Vec<usize>> =
        cuts.windows(2).map(|w| set_at((w[0] + w[1]) / Rational::from_integer(2))).collect();

    // An interior cut is a breakpoint unless both sides and the cut agree.
    let mut breakpoints = Vec::new();
    let mut segments: Vec<(Rational, Rational, usize)> = Vec::new();
    let mut start = 0usize;
    for c in 1..cuts.len() - 1 {
        let same = open_sets[c - 1] == open_sets[c] && point_sets[c] == open_sets[c];
        if !same {
            breakpoints.push(cuts[c]);
            segments.push((cuts[start], cuts[c], c - 1));
            start = c;
        }
    }
    segments.push((cuts[start], cuts[cuts.len() - 1], open_sets.len() - 1));

    let report_at = |r: Rational, regime: Regime| {
        let mut rep = en.report(&params_at(r, ng), criterion, Ties::Weak);
        rep.regime = Some(regime);
        rep
    };
    let intervals: Vec<EquilibriumReport> = segments
        .iter()
        .map(|&(lo, hi, _)| report_at((lo + hi) / Rational::from_integer(2), Regime::open(lo, hi)))
        .collect();

    let union = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().chain(b).copied().collect::<BTreeSet<_>>().into_iter().collect() };
    let mut points = Vec::new();
    let mut marks = vec![Rational::zero()];
    marks.extend(breakpoints.iter().copied());
    marks.push(Rational::one());
    for (m, &r) in marks.iter().enumerate() {
        let at = set_at(r);
        let left = m.checked_sub(1).map(|s| &open_sets[segments[s].2]);
        let right = segments.get(m).map(|s| &open_sets[s.2]);
        let expected = match (left, right) {
            (Some(l), Some(rr)) => union(l, rr),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => Vec::new(),
        };
        points.push(PointAnalysis { r, report: report_at(r, Regime::point(r)), union_of_neighbors: at == expected });
    }
    Ok(RatioRegimes { breakpoints, intervals, points })
}
