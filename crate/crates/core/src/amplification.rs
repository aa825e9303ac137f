//! Separation amplifiers: a penalty for losing, and k-fold repetition where
//! `k` groups play independent copies and are paid only if every group wins.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::classical::{
    enumerate_nash, equilibrium_indices, ClassicalError, Criterion, EquilibriumReport, LocalFn, PayoffTable, Ties,
};
use crate::game::{GameSpec, PayoffParams};
use crate::gf2::Bits;
use crate::quantum::{qsw, QuantumError};
use crate::rational::{lcm_of_denominators, to_big, Rational};
use crate::stabilizer::{bases_for_type, outcome_law, Graph};

/// Brute force over the product game stops at this many players.
pub const MAX_BRUTE_FORCE_PLAYERS: usize = 10;

/// Largest number of group multisets the decomposition search will visit.
pub const MAX_MULTISETS: u128 = 5_000_000;

#[derive(Debug, Error)]
pub enum AmplificationError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("{players} players exceed the brute-force limit of {limit}")]
    SizeLimit { players: usize, limit: usize },
    #[error("the product utility only factorizes without a penalty (ng = {0})")]
    PenaltyNotFactorizable(Rational),
    #[error("the group search would visit {0} multisets")]
    SearchTooLarge(u128),
    #[error("eps must lie in (0, 1], got {0}")]
    Eps(String),
    #[error("the base game has no positive classical social welfare")]
    ZeroBaseWelfare,
    #[error(transparent)]
    Classical(#[from] ClassicalError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PenaltyReport {
    pub report: EquilibriumReport,
    /// Unchanged by the penalty: the advice never loses.
    pub qsw: Rational,
}

impl PenaltyReport {
    pub fn csw(&self) -> Option<Rational> {
        self.report.best_social_welfare()
    }
}

/// Nash equilibria when a lost round pays `−ng·v_answer`.
pub fn penalty_report(game: &GameSpec, params: &PayoffParams) -> Result<PenaltyReport, AmplificationError> {
    Ok(PenaltyReport { report: enumerate_nash(game, params)?, qsw: qsw(params) })
}

/// One joint question of a product game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductQuestion {
    /// Base question IDs joined with `|`.
    pub id: String,
    pub types: Bits,
    /// Union of the shifted generator sets, when every part has one.
    pub generators: Option<Bits>,
    /// `(involved, parity)` per group, on the full player range.
    pub groups: Vec<(Bits, bool)>,
    pub weight: Rational,
}

/// `k` disjoint copies of a game; joint types are drawn from the product
/// distribution and the team wins only if every group wins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductGameSpec {
    pub base: GameSpec,
    pub k: usize,
    pub graph: Graph,
    pub questions: Vec<ProductQuestion>,
}

pub fn kfold(game: &GameSpec, k: usize) -> Result<ProductGameSpec, AmplificationError> {
    if k == 0 {
        return Err(AmplificationError::ZeroK);
    }
    let n = game.players();
    let total = n * k;
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k {
        tuples = tuples
            .into_iter()
            .flat_map(|t| (0..game.questions.len()).map(move |q| [t.clone(), vec![q]].concat()))
            .collect();
    }
    let questions = tuples
        .into_iter()
        .map(|tuple| {
            let parts: Vec<_> = tuple.iter().map(|&q| &game.questions[q]).collect();
            let mut types = Bits::zeros(total);
            let mut generators = Some(Bits::zeros(total));
            let mut groups = Vec::with_capacity(k);
            let mut weight = Rational::one();
            for (g, q) in parts.iter().enumerate() {
                types.xor_assign(&q.types.embed(total, g * n));
                generators = match (generators, &q.generators) {
                    (Some(acc), Some(kq)) => Some(acc.xor(&kq.embed(total, g * n))),
                    _ => None,
                };
                groups.push((q.involved.embed(total, g * n), q.parity));
                weight *= q.weight;
            }
            ProductQuestion {
                id: parts.iter().map(|q| q.id.as_str()).collect::<Vec<_>>().join("|"),
                types,
                generators,
                groups,
                weight,
            }
        })
        .collect();
    Ok(ProductGameSpec { base: game.clone(), k, graph: game.graph.repeated(k), questions })
}

impl ProductGameSpec {
    pub fn players(&self) -> usize {
        self.base.players() * self.k
    }

    pub fn group_of(&self, player: usize) -> usize {
        player / self.base.players()
    }

    /// Exact utilities of a product profile, straight from the definition.
    pub fn utilities(&self, profile: &[LocalFn], params: &PayoffParams) -> Vec<Rational> {
        assert_eq!(profile.len(), self.players());
        let mut u = vec![Rational::zero(); self.players()];
        for q in &self.questions {
            let answers: Vec<bool> = profile.iter().enumerate().map(|(j, f)| f.apply(q.types.get(j))).collect();
            let win = q.groups.iter().all(|(inv, b)| (inv.iter_ones().filter(|&j| answers[j]).count() % 2 == 1) == *b);
            for (j, uj) in u.iter_mut().enumerate() {
                let v = params.value(answers[j]);
                *uj += q.weight * if win { v } else { -params.ng * v };
            }
        }
        u
    }

    /// Probability that following the graph-state advice wins every group,
    /// per joint question.
    pub fn quantum_win_probabilities(&self) -> Result<Vec<Rational>, AmplificationError> {
        if let Some(q) = self.questions.iter().find(|q| q.generators.is_none()) {
            return Err(QuantumError::Unsupported(q.id.clone()).into());
        }
        Ok(self
            .questions
            .par_iter()
            .map(|q| outcome_law(&self.graph, &bases_for_type(&q.types)).prob_parities(&q.groups))
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRow {
    pub utilities: Vec<Rational>,
    pub p_win: Rational,
    pub nash: bool,
}

impl GroupRow {
    /// Sum of the group's utilities.
    pub fn total(&self) -> Rational {
        self.utilities.iter().sum()
    }
}

/// Base-game data the decomposition needs, one row per base profile.
#[derive(Clone, Debug)]
pub struct GroupTable {
    pub players: usize,
    pub rows: Vec<GroupRow>,
}

impl GroupTable {
    pub fn new(game: &GameSpec, params: &PayoffParams) -> Result<Self, AmplificationError> {
        let table = PayoffTable::new(game)?;
        let u = table.utilities(params);
        let nash: std::collections::HashSet<usize> =
            equilibrium_indices(&u, Criterion::Nash, Ties::Weak).into_iter().collect();
        let rows = (0..table.len())
            .map(|i| GroupRow { utilities: u.get(i).to_vec(), p_win: table.row(i).p_win, nash: nash.contains(&i) })
            .collect();
        Ok(GroupTable { players: game.players(), rows })
    }

    /// Product Nash test: each group is base-Nash unless the other groups'
    /// win probabilities multiply to zero.
    pub fn is_product_nash(&self, groups: &[usize]) -> bool {
        groups.iter().enumerate().all(|(g, &p)| {
            self.rows[p].nash || groups.iter().enumerate().any(|(h, &q)| h != g && self.rows[q].p_win.is_zero())
        })
    }

    pub fn product_sw(&self, groups: &[usize]) -> BigRational {
        let k = groups.len();
        let mut total = BigRational::zero();
        for (g, &p) in groups.iter().enumerate() {
            let mut term = to_big(&self.rows[p].total());
            for (h, &q) in groups.iter().enumerate() {
                if h != g {
                    term *= to_big(&self.rows[q].p_win);
                }
            }
            total += term;
        }
        total / BigRational::from_integer(BigInt::from(k * self.players))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KfoldCsw {
    pub k: usize,
    pub value: BigRational,
    /// Base profile index used by each group in one maximiser.
    pub groups: Vec<usize>,
    /// Whether some product equilibrium has a group with zero win
    /// probability (such equilibria have social welfare 0).
    pub zero_factor_equilibria: bool,
}

fn binomial(n: u128, r: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn require_no_penalty(params: &PayoffParams) -> Result<(), AmplificationError> {
    if params.ng.is_zero() {
        Ok(())
    } else {
        Err(AmplificationError::PenaltyNotFactorizable(params.ng))
    }
}

/// Best product-equilibrium social welfare via the factorization
/// `u_j(P) = u_j(p_g)·∏_{h≠g} p_win(p_h)`.
///
/// Configurations where every group wins with positive probability need
/// every group base-Nash; the others all have welfare 0. The search runs
/// over multisets of base-Nash rows on the `(group total, p_win)` Pareto
/// frontier, since the welfare is monotone in both.
pub fn kfold_best_csw(game: &GameSpec, k: usize, params: &PayoffParams) -> Result<KfoldCsw, AmplificationError> {
    if k == 0 {
        return Err(AmplificationError::ZeroK);
    }
    require_no_penalty(params)?;
    let table = GroupTable::new(game, params)?;
    let zero_rows = table.rows.iter().any(|r| r.p_win.is_zero());
    let zero_factor_equilibria = k >= 2 && zero_rows;

    let mut candidates: Vec<usize> =
        (0..table.rows.len()).filter(|&i| table.rows[i].nash && table.rows[i].p_win.is_positive()).collect();
    let key = |i: usize| (table.rows[i].total(), table.rows[i].p_win);
    candidates.sort_by(|&a, &b| key(b).cmp(&key(a)).then(a.cmp(&b)));
    let mut frontier: Vec<usize> = Vec::new();
    for &c in &candidates {
        let (s, p) = key(c);
        if !frontier.iter().any(|&f| {
            let (fs, fp) = key(f);
            fs >= s && fp >= p
        }) {
            frontier.push(c);
        }
    }

    let zero_option = || KfoldCsw {
        k,
        value: BigRational::zero(),
        groups: vec![table.rows.iter().position(|r| r.p_win.is_zero()).unwrap_or(0); k],
        zero_factor_equilibria,
    };
    if frontier.is_empty() {
        if k == 1 && candidates.is_empty() && !table.rows.iter().any(|r| r.nash) {
            return Err(ClassicalError::EmptyEquilibriumSet.into());
        }
        return Ok(zero_option());
    }

    let best = if frontier.len() == 1 {
        vec![frontier[0]; k]
    } else {
        let m = frontier.len() as u128;
        let count = binomial(m + k as u128 - 1, k as u128);
        if count > MAX_MULTISETS {
            return Err(AmplificationError::SearchTooLarge(count));
        }
        let mut multisets: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..k {
            multisets = multisets
                .into_iter()
                .flat_map(|ms| {
                    let start = ms.last().copied().unwrap_or(0);
                    (start..frontier.len()).map(move |f| [ms.clone(), vec![f]].concat())
                })
                .collect();
        }
        multisets
            .into_par_iter()
            .map(|ms| ms.into_iter().map(|f| frontier[f]).collect::<Vec<_>>())
            .map(|groups| (table.product_sw(&groups), groups))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .map(|(_, g)| g)
            .expect("frontier is non-empty")
    };
    let value = table.product_sw(&best);
    if value.is_negative() {
        return Ok(zero_option());
    }
    Ok(KfoldCsw { k, value, groups: best, zero_factor_equilibria })
}

/// Product Nash profiles predicted by the decomposition rule, as indices
/// into the product profile space (group 0 most significant).
pub fn kfold_nash_by_decomposition(
    game: &GameSpec,
    k: usize,
    params: &PayoffParams,
) -> Result<Vec<usize>, AmplificationError> {
    require_no_penalty(params)?;
    let players = game.players() * k;
    if players > MAX_BRUTE_FORCE_PLAYERS {
        return Err(AmplificationError::SizeLimit { players, limit: MAX_BRUTE_FORCE_PLAYERS });
    }
    let table = GroupTable::new(game, params)?;
    let base = table.rows.len();
    let total = base.pow(k as u32);
    Ok((0..total)
        .into_par_iter()
        .filter(|&idx| {
            let groups: Vec<usize> = (0..k).map(|g| (idx / base.pow((k - 1 - g) as u32)) % base).collect();
            table.is_product_nash(&groups)
        })
        .collect())
}

/// Integer-scaled product game for the brute-force loops.
struct PackedProduct {
    n: usize,
    questions: Vec<(u64, Vec<(u64, bool)>, i64)>,
    /// Payoff of answering 0/1 on a won and on a lost round, scaled.
    win: [i64; 2],
    lose: [i64; 2],
    scale: BigRational,
}

impl PackedProduct {
    fn new(spec: &ProductGameSpec, params: &PayoffParams) -> Self {
        let weights: Vec<Rational> = spec.questions.iter().map(|q| q.weight).collect();
        let l = lcm_of_denominators(&weights);
        let values = [params.v0, params.v1, params.ng * params.v0, params.ng * params.v1];
        let d = lcm_of_denominators(&values);
        let int = |r: Rational| {
            let s = r * Rational::from_integer(d);
            debug_assert!(s.is_integer());
            s.to_integer()
        };
        PackedProduct {
            n: spec.players(),
            questions: spec
                .questions
                .iter()
                .map(|q| {
                    let w = (q.weight * Rational::from_integer(l)).to_integer();
                    (q.types.as_u64(), q.groups.iter().map(|(i, b)| (i.as_u64(), *b)).collect(), w)
                })
                .collect(),
            win: [int(params.v0), int(params.v1)],
            lose: [-int(values[2]), -int(values[3])],
            scale: BigRational::new(BigInt::from(1), BigInt::from(l) * BigInt::from(d)),
        }
    }

    fn answers(&self, index: usize, types: u64) -> u64 {
        let mut a = 0u64;
        for j in 0..self.n {
            let f = (index >> (2 * (self.n - 1 - j))) & 3;
            let t = (types >> j) & 1;
            let bit = match f {
                0 => 0,
                1 => 1,
                2 => t,
                _ => t ^ 1,
            };
            a |= bit << j;
        }
        a
    }

    fn wins(groups: &[(u64, bool)], answers: u64) -> bool {
        groups.iter().all(|&(inv, b)| ((answers & inv).count_ones() & 1 == 1) == b)
    }

    /// Scaled utility of every player.
    fn utilities(&self, index: usize) -> Vec<i64> {
        let mut u = vec![0i64; self.n];
        for (types, groups, w) in &self.questions {
            let a = self.answers(index, *types);
            let pay = if Self::wins(groups, a) { &self.win } else { &self.lose };
            for (j, uj) in u.iter_mut().enumerate() {
                *uj += w * pay[((a >> j) & 1) as usize];
            }
        }
        u
    }

    fn utility(&self, index: usize, player: usize) -> i64 {
        let mut u = 0i64;
        for (types, groups, w) in &self.questions {
            let a = self.answers(index, *types);
            let pay = if Self::wins(groups, a) { &self.win } else { &self.lose };
            u += w * pay[((a >> player) & 1) as usize];
        }
        u
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceResult {
    pub nash: Vec<usize>,
    pub best: BigRational,
    pub argmax: usize,
}

/// Nash set and best social welfare of the expanded product game, with no
/// use of the factorization.
pub fn kfold_bruteforce(game: &GameSpec, k: usize, params: &PayoffParams) -> Result<BruteForceResult, AmplificationError> {
    let spec = kfold(game, k)?;
    let n = spec.players();
    if n > MAX_BRUTE_FORCE_PLAYERS {
        return Err(AmplificationError::SizeLimit { players: n, limit: MAX_BRUTE_FORCE_PLAYERS });
    }
    let packed = PackedProduct::new(&spec, params);
    let nash: Vec<(usize, i64)> = (0..1usize << (2 * n))
        .into_par_iter()
        .filter_map(|idx| {
            let u = packed.utilities(idx);
            for (j, &uj) in u.iter().enumerate() {
                let shift = 2 * (n - 1 - j);
                let own = (idx >> shift) & 3;
                for g in (0..4).filter(|&g| g != own) {
                    let dev = (idx & !(3 << shift)) | (g << shift);
                    if packed.utility(dev, j) > uj {
                        return None;
                    }
                }
            }
            Some((idx, u.iter().sum::<i64>()))
        })
        .collect();
    let &(argmax, best) = nash
        .iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .ok_or(ClassicalError::EmptyEquilibriumSet)?;
    let best = BigRational::from_integer(BigInt::from(best)) * &packed.scale / BigRational::from_integer(BigInt::from(n));
    Ok(BruteForceResult { nash: nash.into_iter().map(|(i, _)| i).collect(), best, argmax })
}

pub fn kfold_bruteforce_csw(game: &GameSpec, k: usize, params: &PayoffParams) -> Result<BigRational, AmplificationError> {
    Ok(kfold_bruteforce(game, k, params)?.best)
}

/// `csw(k+1) / csw(k)` from the decomposition.
pub fn decay_factor(game: &GameSpec, k: usize, params: &PayoffParams) -> Result<BigRational, AmplificationError> {
    let a = kfold_best_csw(game, k, params)?.value;
    let b = kfold_best_csw(game, k + 1, params)?.value;
    if a.is_zero() {
        return Err(AmplificationError::ZeroBaseWelfare);
    }
    Ok(b / a)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlayersNeeded {
    pub k: usize,
    pub players: usize,
    /// `csw(k) / qsw`.
    pub ratio: BigRational,
    pub base_ratio: BigRational,
    pub decay: BigRational,
    /// `1 / ln(1/decay)`: `k <= 1 + C·ln(base_ratio/eps)`.
    pub log_constant: f64,
}

/// Smallest `k` whose k-fold classical/quantum welfare ratio is at most `eps`.
pub fn players_needed(game: &GameSpec, params: &PayoffParams, eps: &BigRational) -> Result<PlayersNeeded, AmplificationError> {
    if !eps.is_positive() || *eps > BigRational::one() {
        return Err(AmplificationError::Eps(eps.to_string()));
    }
    let q = to_big(&qsw(params));
    let base = kfold_best_csw(game, 1, params)?.value;
    if !base.is_positive() {
        return Err(AmplificationError::ZeroBaseWelfare);
    }
    let decay = decay_factor(game, 1, params)?;
    // the geometric law is what the decomposition predicts; check it once more
    let third = kfold_best_csw(game, 3, params)?.value;
    debug_assert_eq!(third, &base * &decay * &decay);
    let base_ratio = &base / &q;
    if decay >= BigRational::one() && base_ratio > *eps {
        return Err(AmplificationError::Eps(format!("{eps} is unreachable: welfare does not decay")));
    }
    let mut k = 1usize;
    let mut ratio = base_ratio.clone();
    while ratio > *eps {
        ratio *= &decay;
        k += 1;
    }
    let log_constant = 1.0 / -(decay.to_f64().unwrap_or(0.0)).ln();
    Ok(PlayersNeeded { k, players: k * game.players(), ratio, base_ratio, decay, log_constant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::BuiltinGame;

    #[test]
    fn kfold_structure() {
        let g = BuiltinGame::Nc00C5.spec();
        let p = kfold(&g, 2).unwrap();
        assert_eq!(p.players(), 10);
        assert_eq!(p.questions.len(), 36);
        assert!(p.questions.iter().all(|q| q.weight == Rational::new(1, 36)));
        assert_eq!(p.questions.iter().map(|q| q.weight).sum::<Rational>(), Rational::one());
        assert_eq!(p.group_of(7), 1);
        assert!(matches!(kfold(&g, 0), Err(AmplificationError::ZeroK)));
    }

    #[test]
    fn one_fold_matches_base() {
        let g = BuiltinGame::Nc00C5.spec();
        let params = PayoffParams::default();
        let v = kfold_best_csw(&g, 1, &params).unwrap().value;
        assert_eq!(v, to_big(&Rational::new(23, 30)));
    }

    #[test]
    fn penalty_rejected_by_decomposition() {
        let g = BuiltinGame::Nc00C5.spec();
        let params = PayoffParams::default().with_penalty(Rational::from_integer(1)).unwrap();
        assert!(matches!(kfold_best_csw(&g, 2, &params), Err(AmplificationError::PenaltyNotFactorizable(_))));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(10, 0), 1);
    }
}
