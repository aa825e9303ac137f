//! Deterministic classical strategies and their equilibria.
//!
//! A pure strategy for one player is one of four local functions from the
//! type bit to the answer bit. With at most a handful of players the whole
//! profile space `{0,1,2,3}^n` is enumerated; every expected utility is an
//! exact linear form in `(v0, v1)`.

mod lp;
mod regimes;
mod symmetry;

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::game::{GameSpec, PayoffParams};
use crate::rational::Rational;

pub use lp::{best_correlated_sw, Constraint, LinearProgram, LpOutcome, Relation};
pub use regimes::{ratio_regimes, PointAnalysis, RatioRegimes};
pub use symmetry::{game_automorphisms, graph_automorphisms, orbits, set_stabilizer, Permutation, SymmetryGroup};

/// Largest player count for which the profile space is enumerated.
pub const MAX_ENUM_PLAYERS: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassicalError {
    #[error("the equilibrium set is empty")]
    EmptyEquilibriumSet,
    #[error("{players} players exceed the enumeration limit of {limit}")]
    TooManyPlayers { players: usize, limit: usize },
    #[error("profile has {got} local functions, game has {expected} players")]
    ProfileLength { expected: usize, got: usize },
    #[error("malformed profile {0:?}")]
    MalformedProfile(String),
}

/// Local function from type bit to answer bit, with the codes 0..3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LocalFn {
    Zero = 0,
    One = 1,
    Identity = 2,
    Not = 3,
}

impl LocalFn {
    pub const ALL: [LocalFn; 4] = [LocalFn::Zero, LocalFn::One, LocalFn::Identity, LocalFn::Not];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        LocalFn::ALL.get(code as usize).copied()
    }

    pub fn apply(self, bit: bool) -> bool {
        match self {
            LocalFn::Zero => false,
            LocalFn::One => true,
            LocalFn::Identity => bit,
            LocalFn::Not => !bit,
        }
    }
}

/// One local function per player. The profile index reads the codes as a
/// base-4 number with player 0 most significant, so index order is
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile(pub Vec<LocalFn>);

impl Profile {
    pub fn from_index(index: usize, n: usize) -> Self {
        Profile((0..n).map(|j| LocalFn::ALL[(index >> (2 * (n - 1 - j))) & 3]).collect())
    }

    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, f| (acc << 2) | f.code() as usize)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn answers(&self, types: &crate::gf2::Bits) -> Vec<bool> {
        self.0.iter().enumerate().map(|(j, f)| f.apply(types.get(j))).collect()
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{}", g.code())?;
        }
        Ok(())
    }
}

impl FromStr for Profile {
    type Err = ClassicalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| c.to_digit(10).and_then(|d| LocalFn::from_code(d as u8)))
            .collect::<Option<Vec<_>>>()
            .map(Profile)
            .ok_or_else(|| ClassicalError::MalformedProfile(s.to_string()))
    }
}

/// Expected utility `win_v0·v0 + win_v1·v1 − ng·(lose_v0·v0 + lose_v1·v1)`.
///
/// The four coefficients are the question weights on which the player
/// answered 0 or 1 and the team won or lost.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct LinearPayoff {
    pub win_v0: Rational,
    pub win_v1: Rational,
    pub lose_v0: Rational,
    pub lose_v1: Rational,
}

impl LinearPayoff {
    pub fn value(&self, p: &PayoffParams) -> Rational {
        self.win_v0 * p.v0 + self.win_v1 * p.v1 - p.ng * (self.lose_v0 * p.v0 + self.lose_v1 * p.v1)
    }

    /// `(a, b)` with value `a·v0 + b·v1` at the given penalty.
    pub fn coefficients(&self, ng: Rational) -> (Rational, Rational) {
        (self.win_v0 - ng * self.lose_v0, self.win_v1 - ng * self.lose_v1)
    }

    pub fn total_weight(&self) -> Rational {
        self.win_v0 + self.win_v1 + self.lose_v0 + self.lose_v1
    }

    pub fn scaled(&self, k: Rational) -> Self {
        LinearPayoff {
            win_v0: self.win_v0 * k,
            win_v1: self.win_v1 * k,
            lose_v0: self.lose_v0 * k,
            lose_v1: self.lose_v1 * k,
        }
    }
}

impl Add for LinearPayoff {
    type Output = LinearPayoff;

    fn add(self, o: LinearPayoff) -> LinearPayoff {
        LinearPayoff {
            win_v0: self.win_v0 + o.win_v0,
            win_v1: self.win_v1 + o.win_v1,
            lose_v0: self.lose_v0 + o.lose_v0,
            lose_v1: self.lose_v1 + o.lose_v1,
        }
    }
}

impl AddAssign for LinearPayoff {
    fn add_assign(&mut self, o: LinearPayoff) {
        *self = *self + o;
    }
}

impl std::iter::Sum for LinearPayoff {
    fn sum<I: Iterator<Item = LinearPayoff>>(iter: I) -> Self {
        iter.fold(LinearPayoff::default(), Add::add)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub payoffs: Vec<LinearPayoff>,
    /// Win bit per question, in game order.
    pub wins: Vec<bool>,
    pub p_win: Rational,
}

impl Evaluation {
    /// Average over players as a linear form.
    pub fn social_welfare(&self) -> LinearPayoff {
        let n = self.payoffs.len() as i64;
        self.payoffs.iter().copied().sum::<LinearPayoff>().scaled(Rational::new(1, n))
    }
}

/// Questions packed into 64-bit masks for the enumeration loops.
#[derive(Clone, Debug)]
pub(crate) struct PackedGame {
    pub n: usize,
    pub questions: Vec<PackedQuestion>,
}

#[derive(Clone, Debug)]
pub(crate) struct PackedQuestion {
    pub types: u64,
    pub involved: u64,
    pub parity: bool,
    pub weight: Rational,
}

impl PackedGame {
    pub fn new(game: &GameSpec) -> Self {
        assert!(game.players() <= 64);
        PackedGame {
            n: game.players(),
            questions: game
                .questions
                .iter()
                .map(|q| PackedQuestion {
                    types: q.types.as_u64(),
                    involved: q.involved.as_u64(),
                    parity: q.parity,
                    weight: q.weight,
                })
                .collect(),
        }
    }
}

/// Player masks of the four local-function classes in a profile.
#[derive(Clone, Copy, Debug)]
pub(crate) struct FnMasks {
    pub one: u64,
    pub identity: u64,
    pub not: u64,
}

impl FnMasks {
    pub fn from_index(index: usize, n: usize) -> Self {
        let mut m = FnMasks { one: 0, identity: 0, not: 0 };
        for j in 0..n {
            match (index >> (2 * (n - 1 - j))) & 3 {
                1 => m.one |= 1 << j,
                2 => m.identity |= 1 << j,
                3 => m.not |= 1 << j,
                _ => {}
            }
        }
        m
    }

    pub fn answers(&self, types: u64) -> u64 {
        self.one | (self.identity & types) | (self.not & !types)
    }
}

fn evaluate_packed(game: &PackedGame, index: usize) -> Evaluation {
    let n = game.n;
    let masks = FnMasks::from_index(index, n);
    let mut payoffs = vec![LinearPayoff::default(); n];
    let mut wins = Vec::with_capacity(game.questions.len());
    let mut p_win = Rational::zero();
    for q in &game.questions {
        let answers = masks.answers(q.types);
        let win = ((answers & q.involved).count_ones() & 1 == 1) == q.parity;
        wins.push(win);
        if win {
            p_win += q.weight;
        }
        for (j, pay) in payoffs.iter_mut().enumerate() {
            let slot = match (win, answers >> j & 1 == 1) {
                (true, false) => &mut pay.win_v0,
                (true, true) => &mut pay.win_v1,
                (false, false) => &mut pay.lose_v0,
                (false, true) => &mut pay.lose_v1,
            };
            *slot += q.weight;
        }
    }
    Evaluation { payoffs, wins, p_win }
}

/// Per-player payoff forms, per-question win bits and win probability.
pub fn evaluate(game: &GameSpec, profile: &Profile) -> Result<Evaluation, ClassicalError> {
    if profile.len() != game.players() {
        return Err(ClassicalError::ProfileLength { expected: game.players(), got: profile.len() });
    }
    Ok(evaluate_packed(&PackedGame::new(game), profile.index()))
}

/// Payoff forms for every profile of a game.
#[derive(Clone, Debug)]
pub struct PayoffTable {
    n: usize,
    rows: Vec<Evaluation>,
}

impl PayoffTable {
    pub fn new(game: &GameSpec) -> Result<Self, ClassicalError> {
        let n = game.players();
        if n > MAX_ENUM_PLAYERS {
            return Err(ClassicalError::TooManyPlayers { players: n, limit: MAX_ENUM_PLAYERS });
        }
        let packed = PackedGame::new(game);
        let rows = (0..1usize << (2 * n)).into_par_iter().map(|i| evaluate_packed(&packed, i)).collect();
        Ok(PayoffTable { n, rows })
    }

    pub fn players(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, index: usize) -> &Evaluation {
        &self.rows[index]
    }

    pub fn utilities(&self, params: &PayoffParams) -> UtilityTable {
        let n = self.n;
        let values = self
            .rows
            .par_iter()
            .flat_map_iter(|r| r.payoffs.iter().map(|p| p.value(params)).collect::<Vec<_>>())
            .collect();
        UtilityTable { n, values }
    }
}

/// Expected utilities at fixed parameters, flat `[profile][player]`.
#[derive(Clone, Debug)]
pub struct UtilityTable {
    n: usize,
    values: Vec<Rational>,
}

impl UtilityTable {
    pub fn players(&self) -> usize {
        self.n
    }

    pub fn profiles(&self) -> usize {
        self.values.len() / self.n
    }

    pub fn get(&self, profile: usize) -> &[Rational] {
        &self.values[profile * self.n..(profile + 1) * self.n]
    }

    pub fn social_welfare(&self, profile: usize) -> Rational {
        self.get(profile).iter().sum::<Rational>() / Rational::from_integer(self.n as i64)
    }
}

/// Index of the profile where player `j` switches to local function `g`.
pub fn deviate(index: usize, n: usize, player: usize, g: LocalFn) -> usize {
    let shift = 2 * (n - 1 - player);
    (index & !(3 << shift)) | ((g.code() as usize) << shift)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    /// No unilateral deviation strictly improves the deviator.
    Nash,
    /// Every strictly improving unilateral deviation strictly hurts someone else.
    Pareto,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::Nash => "nash",
            Criterion::Pareto => "pareto",
        })
    }
}

/// How a deviation with exactly equal utility is treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Ties {
    /// Equal utility is not an improvement.
    #[default]
    Weak,
    /// Equal utility already counts as a profitable deviation.
    Strict,
}

pub fn is_equilibrium(table: &UtilityTable, index: usize, criterion: Criterion, ties: Ties) -> bool {
    let n = table.players();
    let u = table.get(index);
    for j in 0..n {
        let own = LocalFn::ALL[(index >> (2 * (n - 1 - j))) & 3];
        for g in LocalFn::ALL.into_iter().filter(|&g| g != own) {
            let d = table.get(deviate(index, n, j, g));
            let improves = match ties {
                Ties::Weak => d[j] > u[j],
                Ties::Strict => d[j] >= u[j],
            };
            if !improves {
                continue;
            }
            let blocked = match criterion {
                Criterion::Nash => false,
                Criterion::Pareto => (0..n).any(|k| k != j && d[k] < u[k]),
            };
            if !blocked {
                return false;
            }
        }
    }
    true
}

/// Sorted indices of all equilibrium profiles.
pub fn equilibrium_indices(table: &UtilityTable, criterion: Criterion, ties: Ties) -> Vec<usize> {
    (0..table.profiles())
        .into_par_iter()
        .filter(|&i| is_equilibrium(table, i, criterion, ties))
        .collect()
}

/// Interval of `r = v0/v1` a report applies to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regime {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Regime {
    pub fn point(r: Rational) -> Self {
        Regime { lo: r, hi: r, lo_closed: true, hi_closed: true }
    }

    pub fn open(lo: Rational, hi: Rational) -> Self {
        Regime { lo, hi, lo_closed: false, hi_closed: false }
    }

    pub fn contains(&self, r: Rational) -> bool {
        (r > self.lo || (self.lo_closed && r == self.lo)) && (r < self.hi || (self.hi_closed && r == self.hi))
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            return write!(f, "{{{}}}", self.lo);
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileRow {
    pub profile: Profile,
    pub payoffs: Vec<LinearPayoff>,
    pub utilities: Vec<Rational>,
    pub social_welfare: Rational,
    pub p_win: Rational,
    pub orbit: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub id: usize,
    /// Lexicographically smallest member.
    pub representative: Profile,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquilibriumReport {
    pub game: String,
    pub criterion: Criterion,
    pub ties: Ties,
    pub params: PayoffParams,
    pub regime: Option<Regime>,
    pub profiles: Vec<ProfileRow>,
    pub orbits: Vec<Orbit>,
    /// Order of the group the orbits were taken under (0 if not computed).
    pub symmetry_order: usize,
    /// Denominator lcm of the question weights, used for scaled display.
    pub weight_scale: i64,
}

impl EquilibriumReport {
    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.profiles.iter().map(|r| r.profile.index()).collect()
    }

    pub fn best_social_welfare(&self) -> Option<Rational> {
        self.profiles.iter().map(|r| r.social_welfare).max()
    }
}

/// Shared machinery behind the enumeration entry points.
pub struct Enumerator<'g> {
    game: &'g GameSpec,
    table: PayoffTable,
    graph_group: Option<SymmetryGroup>,
}

/// Orbits are only computed up to this many players.
pub const MAX_SYMMETRY_PLAYERS: usize = 8;

impl<'g> Enumerator<'g> {
    pub fn new(game: &'g GameSpec) -> Result<Self, ClassicalError> {
        let table = PayoffTable::new(game)?;
        let graph_group = (game.players() <= MAX_SYMMETRY_PLAYERS).then(|| graph_automorphisms(&game.graph));
        Ok(Enumerator { game, table, graph_group })
    }

    pub fn game(&self) -> &GameSpec {
        self.game
    }

    pub fn table(&self) -> &PayoffTable {
        &self.table
    }

    pub fn indices(&self, params: &PayoffParams, criterion: Criterion, ties: Ties) -> Vec<usize> {
        equilibrium_indices(&self.table.utilities(params), criterion, ties)
    }

    pub fn report(&self, params: &PayoffParams, criterion: Criterion, ties: Ties) -> EquilibriumReport {
        let utilities = self.table.utilities(params);
        let indices = equilibrium_indices(&utilities, criterion, ties);
        self.build_report(params, criterion, ties, &utilities, indices)
    }

    pub(crate) fn build_report(
        &self,
        params: &PayoffParams,
        criterion: Criterion,
        ties: Ties,
        utilities: &UtilityTable,
        indices: Vec<usize>,
    ) -> EquilibriumReport {
        let n = self.game.players();
        let (orbit_list, symmetry_order) = match &self.graph_group {
            Some(group) => {
                // Orbits under the graph symmetries that preserve this set.
                let stab = set_stabilizer(group, &indices);
                (orbits(&indices, &stab), stab.order())
            }
            None => (Vec::new(), 0),
        };
        let mut orbit_of = std::collections::HashMap::new();
        let orbit_meta: Vec<Orbit> = orbit_list
            .iter()
            .enumerate()
            .map(|(id, members)| {
                for &m in members {
                    orbit_of.insert(m, id);
                }
                Orbit { id, representative: Profile::from_index(members[0], n), size: members.len() }
            })
            .collect();
        let profiles = indices
            .iter()
            .map(|&i| {
                let row = self.table.row(i);
                ProfileRow {
                    profile: Profile::from_index(i, n),
                    payoffs: row.payoffs.clone(),
                    utilities: utilities.get(i).to_vec(),
                    social_welfare: utilities.social_welfare(i),
                    p_win: row.p_win,
                    orbit: orbit_of.get(&i).copied(),
                }
            })
            .collect();
        EquilibriumReport {
            game: self.game.name.clone(),
            criterion,
            ties,
            params: params.clone(),
            regime: None,
            profiles,
            orbits: orbit_meta,
            symmetry_order,
            weight_scale: self.game.weight_scale(),
        }
    }
}

pub fn enumerate(
    game: &GameSpec,
    params: &PayoffParams,
    criterion: Criterion,
    ties: Ties,
) -> Result<EquilibriumReport, ClassicalError> {
    Ok(Enumerator::new(game)?.report(params, criterion, ties))
}

pub fn enumerate_nash(game: &GameSpec, params: &PayoffParams) -> Result<EquilibriumReport, ClassicalError> {
    enumerate(game, params, Criterion::Nash, Ties::Weak)
}

pub fn enumerate_pareto(game: &GameSpec, params: &PayoffParams) -> Result<EquilibriumReport, ClassicalError> {
    enumerate(game, params, Criterion::Pareto, Ties::Weak)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BestSocialWelfare {
    pub value: Rational,
    pub argmax: Vec<Profile>,
}

/// Maximum social welfare over the criterion's equilibrium profiles.
pub fn best_csw(game: &GameSpec, params: &PayoffParams, criterion: Criterion) -> Result<BestSocialWelfare, ClassicalError> {
    let report = enumerate(game, params, criterion, Ties::Weak)?;
    let value = report.best_social_welfare().ok_or(ClassicalError::EmptyEquilibriumSet)?;
    let argmax = report.profiles.iter().filter(|r| r.social_welfare == value).map(|r| r.profile.clone()).collect();
    Ok(BestSocialWelfare { value, argmax })
}

/// Largest social welfare of any profile, equilibrium or not.
pub fn max_profile_sw(game: &GameSpec, params: &PayoffParams) -> Result<Rational, ClassicalError> {
    let u = PayoffTable::new(game)?.utilities(params);
    Ok((0..u.profiles()).map(|i| u.social_welfare(i)).max().expect("profile space is non-empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::BuiltinGame;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    fn six(p: &LinearPayoff) -> (Rational, Rational) {
        (p.win_v0 * 6, p.win_v1 * 6)
    }

    #[test]
    fn local_functions() {
        assert!(!LocalFn::Zero.apply(true));
        assert!(LocalFn::One.apply(false));
        assert!(LocalFn::Identity.apply(true) && !LocalFn::Identity.apply(false));
        assert!(LocalFn::Not.apply(false) && !LocalFn::Not.apply(true));
        assert_eq!(LocalFn::from_code(4), None);
    }

    #[test]
    fn profile_index_is_lexicographic() {
        let p: Profile = "21111".parse().unwrap();
        assert_eq!(Profile::from_index(p.index(), 5), p);
        assert!("00001".parse::<Profile>().unwrap().index() < "00010".parse::<Profile>().unwrap().index());
        assert!("0a".parse::<Profile>().is_err());
        assert_eq!(deviate(p.index(), 5, 0, LocalFn::Not), "31111".parse::<Profile>().unwrap().index());
    }

    #[test]
    fn evaluate_first_table_row() {
        let g = BuiltinGame::Nc00C5.spec();
        let e = evaluate(&g, &"21111".parse().unwrap()).unwrap();
        assert_eq!(six(&e.payoffs[0]), (r(2, 1), r(1, 1)));
        for j in 1..5 {
            assert_eq!(six(&e.payoffs[j]), (r(0, 1), r(3, 1)));
        }
    }

    #[test]
    fn evaluate_all_not_but_one() {
        let g = BuiltinGame::Nc00C5.spec();
        let e = evaluate(&g, &"33331".parse().unwrap()).unwrap();
        for j in 0..4 {
            assert_eq!(six(&e.payoffs[j]), (r(2, 1), r(3, 1)));
        }
        assert_eq!(six(&e.payoffs[4]), (r(0, 1), r(5, 1)));
    }

    #[test]
    fn all_zero_loses_only_the_all_ones_question() {
        let g = BuiltinGame::Nc00C5.spec();
        let e = evaluate(&g, &"00000".parse().unwrap()).unwrap();
        assert_eq!(e.wins, vec![false, true, true, true, true, true]);
        assert_eq!(e.p_win, r(5, 6));
        for p in &e.payoffs {
            assert_eq!(p.win_v0, r(5, 6));
            assert_eq!(p.lose_v0, r(1, 6));
            assert_eq!(p.total_weight(), r(1, 1));
        }
    }

    #[test]
    fn profile_length_checked() {
        let g = BuiltinGame::Nc00C5.spec();
        assert!(matches!(
            evaluate(&g, &"2111".parse().unwrap()),
            Err(ClassicalError::ProfileLength { expected: 5, got: 4 })
        ));
    }

    #[test]
    fn regime_membership() {
        let reg = Regime::open(r(1, 3), r(1, 2));
        assert!(reg.contains(r(2, 5)));
        assert!(!reg.contains(r(1, 2)));
        assert!(Regime::point(r(1, 2)).contains(r(1, 2)));
        assert_eq!(reg.to_string(), "(1/3, 1/2)");
    }
}
