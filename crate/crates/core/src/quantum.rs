//! The graph-state advice and its equilibrium analysis.
//!
//! Each player measures their qubit of `|G⟩` in X (type 1) or Z (type 0)
//! and is advised to answer the outcome. Deviations are local
//! post-processings `(type, advice) → answer`.

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::game::{GameError, GameSpec, PayoffParams};
use crate::gf2::Bits;
use crate::rational::Rational;
use crate::stabilizer::{bases_for_type, outcome_law, OutcomeLaw};

#[derive(Debug, Error)]
pub enum QuantumError {
    #[error("question {0} has no generator set; quantum analysis needs a stabilizer-backed game")]
    Unsupported(String),
    #[error("involvement of player {player} with type {bit} depends on the advice bit")]
    AdviceDependentInvolvement { player: usize, bit: u8 },
    #[error("the advice does not win every question (first failure: {0})")]
    NotPerfect(String),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Outcome law of the advice for one question.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuestionAdvice {
    pub id: String,
    pub law: OutcomeLaw,
}

/// Advice laws, one per question in game order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdviceCorrelation {
    pub questions: Vec<QuestionAdvice>,
}

impl AdviceCorrelation {
    pub fn get(&self, id: &str) -> Option<&OutcomeLaw> {
        self.questions.iter().find(|q| q.id == id).map(|q| &q.law)
    }

    pub fn laws(&self) -> impl Iterator<Item = &OutcomeLaw> {
        self.questions.iter().map(|q| &q.law)
    }
}

pub fn advice_correlation(game: &GameSpec) -> Result<AdviceCorrelation, QuantumError> {
    let questions = game
        .questions
        .par_iter()
        .map(|q| {
            if q.generators.is_none() {
                return Err(QuantumError::Unsupported(q.id.clone()));
            }
            Ok(QuestionAdvice { id: q.id.clone(), law: outcome_law(&game.graph, &bases_for_type(&q.types)) })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AdviceCorrelation { questions })
}

fn single(n: usize, j: usize) -> Bits {
    Bits::from_indices(n, [j])
}

/// `P(a_j = 1)` under a law.
fn p_one(law: &OutcomeLaw, j: usize) -> Rational {
    law.parity_distribution(&single(law.n(), j))[1]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuestionWin {
    pub id: String,
    pub rank: usize,
    pub win_probability: Rational,
    /// `P(a_j = 1)` per player.
    pub marginals: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectWinReport {
    pub questions: Vec<QuestionWin>,
}

impl PerfectWinReport {
    pub fn passed(&self) -> bool {
        self.questions.iter().all(|q| q.win_probability.is_one())
    }

    pub fn failures(&self) -> Vec<&str> {
        self.questions.iter().filter(|q| !q.win_probability.is_one()).map(|q| q.id.as_str()).collect()
    }
}

/// Win probability of the honest advice on every question.
pub fn verify_perfect_win(game: &GameSpec) -> Result<PerfectWinReport, QuantumError> {
    let advice = advice_correlation(game)?;
    Ok(perfect_win_with(game, &advice))
}

pub(crate) fn perfect_win_with(game: &GameSpec, advice: &AdviceCorrelation) -> PerfectWinReport {
    let questions = game
        .questions
        .iter()
        .zip(advice.laws())
        .map(|(q, law)| QuestionWin {
            id: q.id.clone(),
            rank: law.rank(),
            win_probability: law.parity_distribution(&q.involved)[q.parity as usize],
            marginals: (0..game.players()).map(|j| p_one(law, j)).collect(),
        })
        .collect();
    PerfectWinReport { questions }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonUniform {
    pub question: String,
    pub player: usize,
    pub p_one: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeliefViolation {
    pub player: usize,
    pub first: String,
    pub second: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BeliefReport {
    pub non_uniform: Vec<NonUniform>,
    pub violations: Vec<BeliefViolation>,
}

impl BeliefReport {
    pub fn uniform(&self) -> bool {
        self.non_uniform.is_empty()
    }

    pub fn belief_invariant(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.uniform() && self.belief_invariant()
    }
}

pub fn verify_uniform_and_belief_invariant(game: &GameSpec) -> Result<BeliefReport, QuantumError> {
    let advice = advice_correlation(game)?;
    let laws: Vec<OutcomeLaw> = advice.laws().cloned().collect();
    Ok(check_advice_marginals(game, &laws))
}

/// Uniformity and own-type invariance of single-player marginals, for any
/// family of advice laws indexed like the game's questions.
pub fn check_advice_marginals(game: &GameSpec, laws: &[OutcomeLaw]) -> BeliefReport {
    assert_eq!(laws.len(), game.questions.len());
    let n = game.players();
    let half = Rational::new(1, 2);
    let mut report = BeliefReport::default();
    let marg: Vec<Vec<Rational>> = laws.iter().map(|l| (0..n).map(|j| p_one(l, j)).collect()).collect();
    for (qi, q) in game.questions.iter().enumerate() {
        for j in 0..n {
            if marg[qi][j] != half {
                report.non_uniform.push(NonUniform { question: q.id.clone(), player: j, p_one: marg[qi][j] });
            }
        }
    }
    for j in 0..n {
        for (a, qa) in game.questions.iter().enumerate() {
            for (b, qb) in game.questions.iter().enumerate().skip(a + 1) {
                if qa.type_bit(j) == qb.type_bit(j) && marg[a][j] != marg[b][j] {
                    report.violations.push(BeliefViolation { player: j, first: qa.id.clone(), second: qb.id.clone() });
                }
            }
        }
    }
    report
}

/// `P(j involved | t_j = bit, a_j = advice)` under the advice.
pub fn p_involved_given_advice(
    game: &GameSpec,
    advice: &AdviceCorrelation,
    player: usize,
    bit: bool,
    advice_bit: bool,
) -> Result<Rational, GameError> {
    if player >= game.players() {
        return Err(GameError::PlayerOutOfRange { player });
    }
    let (mut num, mut den) = (Rational::zero(), Rational::zero());
    for (q, law) in game.questions.iter().zip(advice.laws()) {
        if q.type_bit(player) != bit {
            continue;
        }
        let p = law.parity_distribution(&single(game.players(), player))[advice_bit as usize];
        den += q.weight * p;
        if q.involved.get(player) {
            num += q.weight * p;
        }
    }
    if den.is_zero() {
        return Err(GameError::ConditioningOnImpossibleType { player, bit: bit as u8 });
    }
    Ok(num / den)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Threshold {
    /// Smallest involvement probability over players and occurring types.
    pub p: Rational,
    /// `1 − p`; the advice is an equilibrium iff `v0/v1 >= bound`.
    pub bound: Rational,
    pub argmin: (usize, bool),
    /// `p_involved(j, t)` per player, `None` for types that never occur.
    pub per_player: Vec<[Option<Rational>; 2]>,
}

impl Threshold {
    pub fn condition(&self) -> String {
        format!("v0/v1 >= {}", crate::rational::fmt_rational(&self.bound))
    }

    /// Threshold test; with a penalty the binding case generalises to
    /// `v0 >= (1 − p·(1 + ng))·v1`.
    pub fn holds_at(&self, params: &PayoffParams) -> bool {
        params.v0 >= (Rational::one() - self.p * (Rational::one() + params.ng)) * params.v1
    }
}

pub fn quantum_threshold(game: &GameSpec) -> Result<Threshold, QuantumError> {
    let advice = advice_correlation(game)?;
    threshold_with(game, &advice)
}

pub(crate) fn threshold_with(game: &GameSpec, advice: &AdviceCorrelation) -> Result<Threshold, QuantumError> {
    let mut per_player = Vec::with_capacity(game.players());
    let mut best: Option<(Rational, (usize, bool))> = None;
    for j in 0..game.players() {
        let mut row = [None, None];
        for bit in [false, true] {
            if game.type_marginal(j, bit).is_zero() {
                continue;
            }
            let plain = game.p_involved(j, bit)?;
            for a in [false, true] {
                if p_involved_given_advice(game, advice, j, bit, a)? != plain {
                    return Err(QuantumError::AdviceDependentInvolvement { player: j, bit: bit as u8 });
                }
            }
            if best.as_ref().map_or(true, |(p, _)| plain < *p) {
                best = Some((plain, (j, bit)));
            }
            row[bit as usize] = Some(plain);
        }
        per_player.push(row);
    }
    let (p, argmin) = best.expect("every player has some type");
    Ok(Threshold { p, bound: Rational::one() - p, argmin, per_player })
}

/// A map `(type bit, advice bit) → answer bit`, encoded in four bits with
/// bit `2·t + a` holding the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeviationPolicy(pub u8);

impl DeviationPolicy {
    /// Answer the advice unchanged.
    pub const HONEST: DeviationPolicy = DeviationPolicy(0b1010);

    pub fn all() -> impl Iterator<Item = DeviationPolicy> {
        (0u8..16).map(DeviationPolicy)
    }

    pub fn answer(self, bit: bool, advice: bool) -> bool {
        (self.0 >> (2 * bit as u8 + advice as u8)) & 1 == 1
    }
}

/// Parameter-free probability masses behind every deviation utility.
///
/// `mass[j][t][a][c]` holds `(P(win), P(lose))`, summed over questions with
/// weights, of the event `t_j = t, a_j = a` when player `j` answers `c`
/// while everyone else follows the advice.
#[derive(Clone, Debug)]
pub struct DeviationModel {
    mass: Vec<[[[(Rational, Rational); 2]; 2]; 2]>,
}

impl DeviationModel {
    pub fn new(game: &GameSpec, advice: &AdviceCorrelation) -> Self {
        let n = game.players();
        let mass = (0..n)
            .into_par_iter()
            .map(|j| {
                let zero = (Rational::zero(), Rational::zero());
                let mut m = [[[zero; 2]; 2]; 2];
                for (q, law) in game.questions.iter().zip(advice.laws()) {
                    let t = q.type_bit(j) as usize;
                    for a in [false, true] {
                        for c in [false, true] {
                            let flip = c != a && q.involved.get(j);
                            let own = (single(n, j), a);
                            let win = law.prob_parities(&[own.clone(), (q.involved.clone(), q.parity ^ flip)]);
                            let lose = law.prob_parities(&[own, (q.involved.clone(), !(q.parity ^ flip))]);
                            let cell = &mut m[t][a as usize][c as usize];
                            cell.0 += q.weight * win;
                            cell.1 += q.weight * lose;
                        }
                    }
                }
                m
            })
            .collect();
        DeviationModel { mass }
    }

    pub fn players(&self) -> usize {
        self.mass.len()
    }

    /// Exact expected utility of `player` using `policy` against honest others.
    pub fn utility(&self, player: usize, policy: DeviationPolicy, params: &PayoffParams) -> Rational {
        let mut u = Rational::zero();
        for t in [false, true] {
            for a in [false, true] {
                let c = policy.answer(t, a);
                let (win, lose) = self.mass[player][t as usize][a as usize][c as usize];
                u += params.value(c) * (win - params.ng * lose);
            }
        }
        u
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deviation {
    pub player: usize,
    pub policy: DeviationPolicy,
    pub gain: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NashDecision {
    pub threshold: Threshold,
    /// Method A: the threshold test.
    pub by_threshold: bool,
    /// Method B: no deviation policy gains.
    pub by_deviation: bool,
    /// Honest expected utility per player.
    pub honest_utilities: Vec<Rational>,
    /// Most profitable deviation, if any gains.
    pub witness: Option<Deviation>,
}

impl NashDecision {
    pub fn agree(&self) -> bool {
        self.by_threshold == self.by_deviation
    }

    pub fn is_nash(&self) -> bool {
        self.by_threshold && self.by_deviation
    }
}

/// Shared precomputation for repeated equilibrium queries on one game.
#[derive(Clone, Debug)]
pub struct QuantumAnalysis {
    pub advice: AdviceCorrelation,
    pub threshold: Threshold,
    pub model: DeviationModel,
}

impl QuantumAnalysis {
    pub fn new(game: &GameSpec) -> Result<Self, QuantumError> {
        let advice = advice_correlation(game)?;
        let report = perfect_win_with(game, &advice);
        if let Some(first) = report.failures().first() {
            return Err(QuantumError::NotPerfect(first.to_string()));
        }
        let threshold = threshold_with(game, &advice)?;
        let model = DeviationModel::new(game, &advice);
        Ok(QuantumAnalysis { advice, threshold, model })
    }

    pub fn decide(&self, params: &PayoffParams) -> NashDecision {
        let n = self.model.players();
        let honest: Vec<Rational> = (0..n).map(|j| self.model.utility(j, DeviationPolicy::HONEST, params)).collect();
        let witness = (0..n)
            .into_par_iter()
            .flat_map_iter(|j| DeviationPolicy::all().map(move |d| (j, d)))
            .map(|(j, d)| Deviation { player: j, policy: d, gain: self.model.utility(j, d, params) - honest[j] })
            .filter(|d| d.gain > Rational::zero())
            .max_by(|a, b| a.gain.cmp(&b.gain).then(b.player.cmp(&a.player)).then(b.policy.cmp(&a.policy)));
        NashDecision {
            threshold: self.threshold.clone(),
            by_threshold: self.threshold.holds_at(params),
            by_deviation: witness.is_none(),
            honest_utilities: honest,
            witness,
        }
    }
}

/// Decides whether following the advice is a Nash equilibrium, by both the
/// threshold test and an exhaustive deviation scan.
pub fn is_quantum_nash(game: &GameSpec, params: &PayoffParams) -> Result<NashDecision, QuantumError> {
    Ok(QuantumAnalysis::new(game)?.decide(params))
}

/// Social welfare of following the advice: every round is won and each
/// answer bit is uniform.
pub fn qsw(params: &PayoffParams) -> Rational {
    (params.v0 + params.v1) / Rational::from_integer(2)
}

/// Honest expected utility of every player computed directly from the
/// advice laws, without using the perfect-win property.
pub fn direct_quantum_utilities(game: &GameSpec, params: &PayoffParams) -> Result<Vec<Rational>, QuantumError> {
    let advice = advice_correlation(game)?;
    let n = game.players();
    Ok((0..n)
        .map(|j| {
            let mut u = Rational::zero();
            for (q, law) in game.questions.iter().zip(advice.laws()) {
                for a in [false, true] {
                    let own = (single(n, j), a);
                    let win = law.prob_parities(&[own.clone(), (q.involved.clone(), q.parity)]);
                    let lose = law.prob_parities(&[own, (q.involved.clone(), !q.parity)]);
                    u += q.weight * params.value(a) * (win - params.ng * lose);
                }
            }
            u
        })
        .collect())
}
