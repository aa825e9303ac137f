//! Game descriptions: weighted questions over a graph plus payoff values.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::Bits;
use crate::rational::{fmt_rational, parse_rational, ParseRationalError, Rational};
use crate::stabilizer::{derive_question, Graph, GraphError};

#[derive(Debug, Error)]
pub enum GameError {
    #[error("unknown builtin game {0:?} (expected NC00_C5, NC01_C5, NC000_C5 or NC00010_C5)")]
    UnknownBuiltin(String),
    #[error("question weights sum to {0}, expected 1")]
    WeightSum(Rational),
    #[error("question {0}: weight must be positive")]
    NonPositiveWeight(String),
    #[error("question {question}: generator set {generators:?} has a vertex of odd degree in G[K]")]
    InvalidGenerator { question: String, generators: Vec<usize> },
    #[error("question {question}: {field} does not match the value derived from K")]
    GeneratorMismatch { question: String, field: &'static str },
    #[error("question {question}: type bit {bit} of player {player} is incompatible with its generator set")]
    IncompatibleType { question: String, player: usize, bit: u8 },
    #[error("question {question}: type vector has length {got}, expected {expected}")]
    TypeLength { question: String, expected: usize, got: usize },
    #[error("question {question}: malformed type vector {text:?}")]
    MalformedType { question: String, text: String },
    #[error("question {question}: vertex {vertex} out of range")]
    VertexOutOfRange { question: String, vertex: usize },
    #[error("question {question}: {field} is required when K is absent")]
    MissingField { question: String, field: &'static str },
    #[error("duplicate question id {0:?}")]
    DuplicateId(String),
    #[error("questions {0:?} and {1:?} have the same type vector and involved set")]
    DuplicateQuestion(String, String),
    #[error("game has no questions")]
    NoQuestions,
    #[error("invalid payoffs: {0}")]
    InvalidPayoffs(&'static str),
    #[error("bad rational in {field}: {source}")]
    Rational {
        field: String,
        #[source]
        source: ParseRationalError,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed game document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("player {player} never receives type {bit}")]
    ConditioningOnImpossibleType { player: usize, bit: u8 },
    #[error("player {player} out of range")]
    PlayerOutOfRange { player: usize },
}

/// `v0`, `v1` and the wrong-answer penalty `ng`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PayoffParams {
    pub v0: Rational,
    pub v1: Rational,
    pub ng: Rational,
}

impl PayoffParams {
    /// Requires `v1 > 0`, `v1 >= v0 >= 0` and `ng >= 0`.
    pub fn new(v0: Rational, v1: Rational, ng: Rational) -> Result<Self, GameError> {
        if v1 <= Rational::zero() {
            return Err(GameError::InvalidPayoffs("v1 must be positive"));
        }
        if v0 < Rational::zero() || v0 > v1 {
            return Err(GameError::InvalidPayoffs("need 0 <= v0 <= v1"));
        }
        if ng < Rational::zero() {
            return Err(GameError::InvalidPayoffs("ng must be non-negative"));
        }
        Ok(PayoffParams { v0, v1, ng })
    }

    pub fn base(v0: Rational, v1: Rational) -> Result<Self, GameError> {
        Self::new(v0, v1, Rational::zero())
    }

    /// `v0 = r`, `v1 = 1`.
    pub fn ratio(r: Rational) -> Result<Self, GameError> {
        Self::base(r, Rational::one())
    }

    pub fn with_penalty(&self, ng: Rational) -> Result<Self, GameError> {
        Self::new(self.v0, self.v1, ng)
    }

    /// Value paid for answering `bit` on a won round.
    pub fn value(&self, bit: bool) -> Rational {
        if bit {
            self.v1
        } else {
            self.v0
        }
    }
}

impl Default for PayoffParams {
    fn default() -> Self {
        PayoffParams { v0: Rational::new(2, 3), v1: Rational::one(), ng: Rational::zero() }
    }
}

/// One weighted question: type vector `t`, involved set `I`, parity `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuestionSpec {
    pub id: String,
    pub types: Bits,
    pub generators: Option<Bits>,
    pub involved: Bits,
    pub parity: bool,
    pub weight: Rational,
}

impl QuestionSpec {
    pub fn type_bit(&self, player: usize) -> bool {
        self.types.get(player)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSpec {
    pub name: String,
    pub graph: Graph,
    pub questions: Vec<QuestionSpec>,
    /// Payoffs stored with the game; engines take parameters explicitly.
    pub payoffs: PayoffParams,
}

impl GameSpec {
    /// Validates every invariant of a game and returns it.
    pub fn new(
        name: impl Into<String>,
        graph: Graph,
        questions: Vec<QuestionSpec>,
        payoffs: PayoffParams,
    ) -> Result<Self, GameError> {
        let game = GameSpec { name: name.into(), graph, questions, payoffs };
        game.validate()?;
        Ok(game)
    }

    pub fn players(&self) -> usize {
        self.graph.order()
    }

    pub fn question(&self, id: &str) -> Option<&QuestionSpec> {
        self.questions.iter().find(|q| q.id == id)
    }

    /// Whether every question carries a generator set.
    pub fn is_stabilizer_backed(&self) -> bool {
        self.questions.iter().all(|q| q.generators.is_some())
    }

    /// Least common multiple of the weight denominators.
    pub fn weight_scale(&self) -> i64 {
        crate::rational::lcm_of_denominators(self.questions.iter().map(|q| &q.weight))
    }

    fn validate(&self) -> Result<(), GameError> {
        let n = self.players();
        if self.questions.is_empty() {
            return Err(GameError::NoQuestions);
        }
        let mut ids = BTreeSet::new();
        let mut keys: Vec<(Bits, Bits, &str)> = Vec::new();
        let mut total = Rational::zero();
        for q in &self.questions {
            if !ids.insert(q.id.as_str()) {
                return Err(GameError::DuplicateId(q.id.clone()));
            }
            if q.types.len() != n {
                return Err(GameError::TypeLength { question: q.id.clone(), expected: n, got: q.types.len() });
            }
            if q.involved.len() != n {
                return Err(GameError::VertexOutOfRange { question: q.id.clone(), vertex: q.involved.len() });
            }
            if q.weight <= Rational::zero() {
                return Err(GameError::NonPositiveWeight(q.id.clone()));
            }
            total += q.weight;
            if let Some(k) = &q.generators {
                check_generators(&self.graph, q, k)?;
            }
            if let Some((_, _, other)) = keys.iter().find(|(t, i, _)| *t == q.types && *i == q.involved) {
                return Err(GameError::DuplicateQuestion(other.to_string(), q.id.clone()));
            }
            keys.push((q.types.clone(), q.involved.clone(), &q.id));
        }
        if total != Rational::one() {
            return Err(GameError::WeightSum(total));
        }
        Ok(())
    }

    /// Probability that `player` is involved given own type `bit`.
    pub fn p_involved(&self, player: usize, bit: bool) -> Result<Rational, GameError> {
        if player >= self.players() {
            return Err(GameError::PlayerOutOfRange { player });
        }
        let (mut num, mut den) = (Rational::zero(), Rational::zero());
        for q in self.questions.iter().filter(|q| q.type_bit(player) == bit) {
            den += q.weight;
            if q.involved.get(player) {
                num += q.weight;
            }
        }
        if den.is_zero() {
            return Err(GameError::ConditioningOnImpossibleType { player, bit: bit as u8 });
        }
        Ok(num / den)
    }

    /// Total weight of questions giving `player` type `bit`.
    pub fn type_marginal(&self, player: usize, bit: bool) -> Rational {
        self.questions.iter().filter(|q| q.type_bit(player) == bit).map(|q| q.weight).sum()
    }
}

fn check_generators(graph: &Graph, q: &QuestionSpec, k: &Bits) -> Result<(), GameError> {
    let derived = derive_question(graph, k).derived.ok_or_else(|| GameError::InvalidGenerator {
        question: q.id.clone(),
        generators: k.to_indices(),
    })?;
    if derived.involved != q.involved {
        return Err(GameError::GeneratorMismatch { question: q.id.clone(), field: "I" });
    }
    if derived.parity != q.parity {
        return Err(GameError::GeneratorMismatch { question: q.id.clone(), field: "b" });
    }
    for j in derived.involved.iter_ones() {
        let want = k.get(j);
        if q.types.get(j) != want {
            return Err(GameError::IncompatibleType { question: q.id.clone(), player: j, bit: q.types.get(j) as u8 });
        }
    }
    Ok(())
}

/// The four C5 games shipped with the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BuiltinGame {
    Nc00C5,
    Nc01C5,
    Nc000C5,
    Nc00010C5,
}

impl BuiltinGame {
    pub const ALL: [BuiltinGame; 4] =
        [BuiltinGame::Nc00C5, BuiltinGame::Nc01C5, BuiltinGame::Nc000C5, BuiltinGame::Nc00010C5];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinGame::Nc00C5 => "NC00_C5",
            BuiltinGame::Nc01C5 => "NC01_C5",
            BuiltinGame::Nc000C5 => "NC000_C5",
            BuiltinGame::Nc00010C5 => "NC00010_C5",
        }
    }

    pub fn spec(self) -> GameSpec {
        builtin(self)
    }
}

impl fmt::Display for BuiltinGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinGame {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BuiltinGame::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| GameError::UnknownBuiltin(s.to_string()))
    }
}

pub fn builtin_game(name: &str) -> Result<GameSpec, GameError> {
    Ok(name.parse::<BuiltinGame>()?.spec())
}

/// Builds a question from its generator set, deriving `I` and `b`.
fn stabilizer_question(graph: &Graph, id: String, ones: &[usize], generators: &[usize], weight: Rational) -> QuestionSpec {
    let n = graph.order();
    let k = Bits::from_indices(n, generators.iter().copied());
    let derived = derive_question(graph, &k).derived.expect("builtin generator sets are valid");
    QuestionSpec {
        id,
        types: Bits::from_indices(n, ones.iter().copied()),
        generators: Some(k),
        involved: derived.involved,
        parity: derived.parity,
        weight,
    }
}

fn builtin(which: BuiltinGame) -> GameSpec {
    let g = Graph::cycle(5);
    let all: Vec<usize> = (0..5).collect();
    let r = Rational::new;
    let (w_all, w_single, w_pair_a, w_pair_b) = match which {
        BuiltinGame::Nc00C5 | BuiltinGame::Nc01C5 => (r(1, 6), r(1, 6), r(0, 1), r(0, 1)),
        BuiltinGame::Nc000C5 => (r(3, 13), r(1, 13), r(0, 1), r(1, 13)),
        BuiltinGame::Nc00010C5 => (r(3, 13), r(1, 26), r(1, 26), r(1, 13)),
    };
    let mut qs = vec![stabilizer_question(&g, "Ta".into(), &all, &all, w_all)];
    let pair = |i: usize| [i, (i + 2) % 5];
    for i in 0..5 {
        let id = format!("T{i}");
        match which {
            // NC01 moves the lone 1 of each three-player question onto i+2.
            BuiltinGame::Nc01C5 => qs.push(stabilizer_question(&g, id, &pair(i), &[i], w_single)),
            _ => qs.push(stabilizer_question(&g, id, &[i], &[i], w_single)),
        }
    }
    if which == BuiltinGame::Nc00010C5 {
        for i in 0..5 {
            qs.push(stabilizer_question(&g, format!("T{i}a"), &pair(i), &[i], w_pair_a));
        }
    }
    if matches!(which, BuiltinGame::Nc000C5 | BuiltinGame::Nc00010C5) {
        for i in 0..5 {
            qs.push(stabilizer_question(&g, format!("T{i}b"), &pair(i), &pair(i), w_pair_b));
        }
    }
    GameSpec::new(which.name(), g, qs, PayoffParams::default()).expect("builtin games are valid")
}

// ---------------------------------------------------------------------------
// JSON documents

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GameDocument {
    pub name: String,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub payoffs: PayoffDocument,
    pub questions: Vec<QuestionDocument>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PayoffDocument {
    pub v0: String,
    pub v1: String,
    #[serde(default = "zero_string")]
    pub ng: String,
}

fn zero_string() -> String {
    "0".to_string()
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct QuestionDocument {
    pub id: String,
    pub t: String,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<usize>>,
    #[serde(rename = "I", default, skip_serializing_if = "Option::is_none")]
    pub i: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<u8>,
    pub w: String,
}

fn rational_field(field: impl Into<String>, text: &str) -> Result<Rational, GameError> {
    parse_rational(text).map_err(|source| GameError::Rational { field: field.into(), source })
}

fn vertex_set(n: usize, question: &str, vertices: &[usize]) -> Result<Bits, GameError> {
    if let Some(&v) = vertices.iter().find(|&&v| v >= n) {
        return Err(GameError::VertexOutOfRange { question: question.to_string(), vertex: v });
    }
    Ok(Bits::from_indices(n, vertices.iter().copied()))
}

impl GameDocument {
    pub fn into_game(self) -> Result<GameSpec, GameError> {
        let n = self.n;
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let graph = Graph::new(n, &edges)?;
        let payoffs = PayoffParams::new(
            rational_field("payoffs.v0", &self.payoffs.v0)?,
            rational_field("payoffs.v1", &self.payoffs.v1)?,
            rational_field("payoffs.ng", &self.payoffs.ng)?,
        )?;
        let mut questions = Vec::with_capacity(self.questions.len());
        for q in self.questions {
            let id = q.id.clone();
            if q.t.len() != n {
                return Err(GameError::TypeLength { question: id, expected: n, got: q.t.len() });
            }
            let types = Bits::from_bit_str(&q.t)
                .ok_or_else(|| GameError::MalformedType { question: id.clone(), text: q.t.clone() })?;
            let weight = rational_field(format!("questions[{id}].w"), &q.w)?;
            let generators = q.k.as_deref().map(|k| vertex_set(n, &id, k)).transpose()?;
            let (involved, parity) = match &generators {
                Some(k) => {
                    let derived = derive_question(&graph, k).derived.ok_or_else(|| GameError::InvalidGenerator {
                        question: id.clone(),
                        generators: k.to_indices(),
                    })?;
                    let involved = match &q.i {
                        Some(i) => vertex_set(n, &id, i)?,
                        None => derived.involved.clone(),
                    };
                    let parity = q.b.map(|b| b == 1).unwrap_or(derived.parity);
                    (involved, parity)
                }
                None => {
                    let i = q.i.as_deref().ok_or_else(|| GameError::MissingField { question: id.clone(), field: "I" })?;
                    let b = q.b.ok_or_else(|| GameError::MissingField { question: id.clone(), field: "b" })?;
                    (vertex_set(n, &id, i)?, b == 1)
                }
            };
            if let Some(b) = q.b {
                if b > 1 {
                    return Err(GameError::MissingField { question: id, field: "b (0 or 1)" });
                }
            }
            questions.push(QuestionSpec { id, types, generators, involved, parity, weight });
        }
        GameSpec::new(self.name, graph, questions, payoffs)
    }

    pub fn from_game(game: &GameSpec) -> Self {
        GameDocument {
            name: game.name.clone(),
            n: game.players(),
            edges: game.graph.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            payoffs: PayoffDocument {
                v0: fmt_rational(&game.payoffs.v0),
                v1: fmt_rational(&game.payoffs.v1),
                ng: fmt_rational(&game.payoffs.ng),
            },
            questions: game
                .questions
                .iter()
                .map(|q| QuestionDocument {
                    id: q.id.clone(),
                    t: q.types.to_bit_string(),
                    k: q.generators.as_ref().map(Bits::to_indices),
                    i: Some(q.involved.to_indices()),
                    b: Some(q.parity as u8),
                    w: fmt_rational(&q.weight),
                })
                .collect(),
        }
    }
}

pub fn load_game(json: &str) -> Result<GameSpec, GameError> {
    serde_json::from_str::<GameDocument>(json)?.into_game()
}

pub fn save_game(game: &GameSpec) -> String {
    serde_json::to_string_pretty(&GameDocument::from_game(game)).expect("game documents always serialise")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q<'a>(g: &'a GameSpec, id: &str) -> &'a QuestionSpec {
        g.question(id).unwrap()
    }

    #[test]
    fn nc00_contents() {
        let g = BuiltinGame::Nc00C5.spec();
        assert_eq!(g.questions.len(), 6);
        let t0 = q(&g, "T0");
        assert_eq!(t0.types.to_bit_string(), "10000");
        assert_eq!(t0.involved.to_indices(), vec![0, 1, 4]);
        assert!(!t0.parity);
        assert_eq!(t0.weight, Rational::new(1, 6));
        let ta = q(&g, "Ta");
        assert!(ta.parity);
        assert_eq!(ta.involved.count_ones(), 5);
    }

    #[test]
    fn nc01_contents() {
        let g = BuiltinGame::Nc01C5.spec();
        let t0 = q(&g, "T0");
        assert_eq!(t0.types.to_bit_string(), "10100");
        assert_eq!(t0.involved.to_indices(), vec![0, 1, 4]);
        assert_eq!(q(&g, "T3").types.to_bit_string(), "10010");
        assert_eq!(q(&g, "T4").types.to_bit_string(), "01001");
        for i in 0..5 {
            assert_eq!(g.type_marginal(i, true), Rational::new(1, 2));
            assert_eq!(g.type_marginal(i, false), Rational::new(1, 2));
        }
    }

    #[test]
    fn nc00010_doubled_rows() {
        let g = BuiltinGame::Nc00010C5.spec();
        assert_eq!(g.questions.len(), 16);
        for i in 0..5 {
            let a = q(&g, &format!("T{i}a"));
            let b = q(&g, &format!("T{i}b"));
            assert_eq!(a.types, b.types);
            let set = |v: [usize; 3]| Bits::from_indices(5, v);
            assert_eq!(a.involved, set([(i + 4) % 5, i, (i + 1) % 5]));
            assert_eq!(b.involved, Bits::from_indices(5, [(i + 4) % 5, i, (i + 2) % 5, (i + 3) % 5]));
            assert_eq!(a.weight, Rational::new(1, 26));
            assert_eq!(b.weight, Rational::new(1, 13));
        }
        assert_eq!(q(&g, "Ta").weight, Rational::new(3, 13));
    }

    #[test]
    fn p_involved_values() {
        let g00 = BuiltinGame::Nc00C5.spec();
        let g01 = BuiltinGame::Nc01C5.spec();
        let g10 = BuiltinGame::Nc00010C5.spec();
        for i in 0..5 {
            assert_eq!(g00.p_involved(i, false).unwrap(), Rational::new(1, 2));
            assert_eq!(g00.p_involved(i, true).unwrap(), Rational::one());
            assert_eq!(g01.p_involved(i, false).unwrap(), Rational::new(2, 3));
            assert_eq!(g01.p_involved(i, true).unwrap(), Rational::new(2, 3));
            assert_eq!(g10.p_involved(i, false).unwrap(), Rational::new(8, 13));
            assert!(g10.p_involved(i, true).unwrap() > Rational::new(8, 13));
        }
    }

    #[test]
    fn impossible_type_conditioning() {
        let graph = Graph::empty(2);
        let qs = vec![QuestionSpec {
            id: "only".into(),
            types: Bits::from_bit_str("00").unwrap(),
            generators: Some(Bits::zeros(2)),
            involved: Bits::zeros(2),
            parity: false,
            weight: Rational::one(),
        }];
        let g = GameSpec::new("tiny", graph, qs, PayoffParams::default()).unwrap();
        assert!(matches!(g.p_involved(0, true), Err(GameError::ConditioningOnImpossibleType { player: 0, bit: 1 })));
    }

    #[test]
    fn round_trip_builtins() {
        for b in BuiltinGame::ALL {
            let g = b.spec();
            assert_eq!(load_game(&save_game(&g)).unwrap(), g);
        }
    }

    fn doc() -> GameDocument {
        GameDocument::from_game(&BuiltinGame::Nc00C5.spec())
    }

    #[test]
    fn weight_sum_rejected() {
        let mut d = doc();
        // six questions: 5 * 2/13 + 2/13 = 12/13
        for qd in &mut d.questions {
            qd.w = "2/13".into();
        }
        match d.into_game() {
            Err(GameError::WeightSum(s)) => assert_eq!(s, Rational::new(12, 13)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invalid_generator_rejected() {
        let mut d = doc();
        d.questions[1].k = Some(vec![0, 1]);
        d.questions[1].i = None;
        d.questions[1].b = None;
        assert!(matches!(d.into_game(), Err(GameError::InvalidGenerator { .. })));
    }

    #[test]
    fn mismatch_and_malformed() {
        let mut d = doc();
        d.questions[1].b = Some(1);
        assert!(matches!(d.into_game(), Err(GameError::GeneratorMismatch { field: "b", .. })));
        let mut d = doc();
        d.questions[1].w = "one sixth".into();
        assert!(matches!(d.into_game(), Err(GameError::Rational { .. })));
        let mut d = doc();
        d.questions[1].t = "1000".into();
        assert!(matches!(d.into_game(), Err(GameError::TypeLength { .. })));
        let mut d = doc();
        d.questions[1].k = None;
        d.questions[1].i = None;
        assert!(matches!(d.into_game(), Err(GameError::MissingField { field: "I", .. })));
    }

    #[test]
    fn optional_fields_derived_from_k() {
        let mut d = doc();
        for qd in &mut d.questions {
            qd.i = None;
            qd.b = None;
        }
        assert_eq!(d.into_game().unwrap(), BuiltinGame::Nc00C5.spec());
    }

    #[test]
    fn unknown_builtin() {
        assert!(matches!(builtin_game("NC11_C5"), Err(GameError::UnknownBuiltin(_))));
        assert_eq!(builtin_game("nc01_c5").unwrap().name, "NC01_C5");
    }
}
