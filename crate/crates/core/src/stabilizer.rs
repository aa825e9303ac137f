//! Graph-state stabiliser algebra.
//!
//! The graph state `|G⟩` is stabilised by `S_i = X_i ∏_{j∈N(i)} Z_j`. Every
//! subset `K` of generators multiplies out to a signed Pauli word; the words
//! built only from X on X-measured qubits and Z on Z-measured qubits fix the
//! parity of the corresponding measurement outcomes. Collecting those
//! parities gives the exact joint law of the outcomes, which is uniform over
//! an affine subspace of GF(2)^n.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::gf2::{Bits, Echelon, Insert};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Bits>,
}

impl Graph {
    /// Builds a graph; duplicate and reversed edges collapse.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Bits::zeros(n); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].set(v, true);
            adjacency[v].set(u, true);
        }
        Ok(Graph { n, adjacency })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, adjacency: vec![Bits::zeros(n); n] }
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).expect("cycle edges are in range")
    }

    /// `copies` disjoint copies of `self`; copy `c` occupies `c*n..(c+1)*n`.
    pub fn repeated(&self, copies: usize) -> Self {
        let n = self.n * copies;
        let edges: Vec<_> = (0..copies)
            .flat_map(|c| self.edges().into_iter().map(move |(u, v)| (u + c * self.n, v + c * self.n)))
            .collect();
        Graph::new(n, &edges).expect("shifted edges are in range")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &Bits {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].get(v)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.adjacency[u].iter_ones().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    /// Number of edges with both endpoints in `set`.
    pub fn induced_edge_count(&self, set: &Bits) -> usize {
        set.iter_ones().map(|u| self.adjacency[u].and(set).count_ones()).sum::<usize>() / 2
    }

    /// Characteristic vector of `{j : |N(j) ∩ set| odd}`.
    pub fn odd_neighborhood(&self, set: &Bits) -> Bits {
        let mut out = Bits::zeros(self.n);
        for j in 0..self.n {
            if self.adjacency[j].dot(set) {
                out.set(j, true);
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        };
        write!(f, "{c}")
    }
}

/// Signed Pauli operator `(-1)^sign · ⊗_j X^{x_j} Z^{z_j}`.
///
/// The X factor is written to the left of the Z factor on every qubit, so a
/// qubit with both bits set is displayed as `Y` but carries the `XZ`
/// convention (no imaginary phase is tracked).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PauliWord {
    pub x: Bits,
    pub z: Bits,
    pub sign: bool,
}

impl PauliWord {
    pub fn identity(n: usize) -> Self {
        PauliWord { x: Bits::zeros(n), z: Bits::zeros(n), sign: false }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn letter(&self, j: usize) -> Pauli {
        match (self.x.get(j), self.z.get(j)) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    pub fn letters(&self) -> Vec<Pauli> {
        (0..self.len()).map(|j| self.letter(j)).collect()
    }

    pub fn support(&self) -> Bits {
        self.x.or(&self.z)
    }

    /// Operator product `self · other`, keeping the X-before-Z normal form.
    pub fn mul(&self, other: &PauliWord) -> PauliWord {
        // Z^{z1} X^{x2} = (-1)^{z1·x2} X^{x2} Z^{z1}
        let swap = self.z.dot(&other.x);
        PauliWord {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            sign: self.sign ^ other.sign ^ swap,
        }
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.sign { "-" } else { "+" })?;
        for p in self.letters() {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Product of the generators indexed by `generators`.
///
/// Letter on qubit `j` is `X^[j∈K] Z^{|N(j)∩K| mod 2}`; the sign is the parity
/// of the number of edges inside `K`.
pub fn stabilizer_word(graph: &Graph, generators: &Bits) -> PauliWord {
    assert_eq!(generators.len(), graph.order());
    PauliWord {
        x: generators.clone(),
        z: graph.odd_neighborhood(generators),
        sign: graph.induced_edge_count(generators) % 2 == 1,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    X,
    Z,
}

/// Measurement constraint a valid question places on one player.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisRequirement {
    MustMeasureX,
    MustMeasureZ,
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedQuestion {
    pub involved: Bits,
    pub parity: bool,
    pub required_basis: Vec<BasisRequirement>,
}

/// Result of [`derive_question`]: `derived` is `None` when `G[K]` has a
/// vertex of odd degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuestionDerivation {
    pub generators: Bits,
    pub derived: Option<DerivedQuestion>,
}

impl QuestionDerivation {
    pub fn is_valid(&self) -> bool {
        self.derived.is_some()
    }
}

pub fn derive_question(graph: &Graph, generators: &Bits) -> QuestionDerivation {
    let odd = graph.odd_neighborhood(generators);
    let valid = odd.and(generators).is_zero();
    let derived = valid.then(|| {
        let involved = generators.or(&odd);
        let required_basis = (0..graph.order())
            .map(|j| {
                if generators.get(j) {
                    BasisRequirement::MustMeasureX
                } else if odd.get(j) {
                    BasisRequirement::MustMeasureZ
                } else {
                    BasisRequirement::Free
                }
            })
            .collect();
        DerivedQuestion {
            involved,
            parity: graph.induced_edge_count(generators) % 2 == 1,
            required_basis,
        }
    });
    QuestionDerivation { generators: generators.clone(), derived }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawError {
    #[error("parity constraints are inconsistent")]
    Inconsistent,
    #[error("constraint has {got} columns, expected {expected}")]
    Width { expected: usize, got: usize },
    #[error("support of size 2^{0} is too large for exact 64-bit probabilities")]
    TooLarge(usize),
}

/// Uniform distribution over the solutions of `M·a = c` on `n` answer bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeLaw {
    system: Echelon,
}

impl OutcomeLaw {
    pub fn new(n: usize, constraints: impl IntoIterator<Item = (Bits, bool)>) -> Result<Self, LawError> {
        let mut system = Echelon::new(n);
        for (row, rhs) in constraints {
            if row.len() != n {
                return Err(LawError::Width { expected: n, got: row.len() });
            }
            if system.insert(row, rhs) == Insert::Contradiction {
                return Err(LawError::Inconsistent);
            }
        }
        if n - system.rank() >= 63 {
            return Err(LawError::TooLarge(n - system.rank()));
        }
        Ok(OutcomeLaw { system })
    }

    pub fn n(&self) -> usize {
        self.system.cols()
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    /// Reduced constraint rows `(row, rhs)`.
    pub fn constraints(&self) -> Vec<(Bits, bool)> {
        self.system.rows().map(|(r, c)| (r.clone(), c)).collect()
    }

    pub fn support_size(&self) -> u64 {
        1u64 << (self.n() - self.rank())
    }

    /// Probability of each support vector, `2^(rank − n)`.
    pub fn atom(&self) -> Rational {
        Rational::new(1, self.support_size() as i64)
    }

    pub fn contains(&self, answers: &Bits) -> bool {
        self.system.satisfied_by(answers)
    }

    pub fn probability(&self, answers: &Bits) -> Rational {
        if self.contains(answers) {
            self.atom()
        } else {
            Rational::from_integer(0)
        }
    }

    /// Probability that every listed parity condition `Σ_{j∈S} a_j = bit` holds.
    pub fn prob_parities(&self, conditions: &[(Bits, bool)]) -> Rational {
        let mut sys = self.system.clone();
        let mut extra = 0usize;
        for (row, rhs) in conditions {
            match sys.insert(row.clone(), *rhs) {
                Insert::Independent => extra += 1,
                Insert::Redundant => {}
                Insert::Contradiction => return Rational::from_integer(0),
            }
        }
        Rational::new(1, 1i64 << extra)
    }

    /// Distribution of `Σ_{j∈S} a_j mod 2` as `[P(0), P(1)]`.
    pub fn parity_distribution(&self, subset: &Bits) -> [Rational; 2] {
        match self.system.implied(subset) {
            Some(false) => [Rational::from_integer(1), Rational::from_integer(0)],
            Some(true) => [Rational::from_integer(0), Rational::from_integer(1)],
            None => [Rational::new(1, 2), Rational::new(1, 2)],
        }
    }

    /// Marginal law of the listed players, keyed by their answer bits in
    /// list order; only values with positive probability appear.
    pub fn marginal(&self, players: &[usize]) -> BTreeMap<Vec<bool>, Rational> {
        assert!(players.len() <= 20, "marginal over too many players");
        let n = self.n();
        let mut out = BTreeMap::new();
        for value in 0u64..(1u64 << players.len()) {
            let conditions: Vec<(Bits, bool)> = players
                .iter()
                .enumerate()
                .map(|(k, &j)| (Bits::from_indices(n, [j]), (value >> k) & 1 == 1))
                .collect();
            let p = self.prob_parities(&conditions);
            if p != Rational::from_integer(0) {
                let key = (0..players.len()).map(|k| (value >> k) & 1 == 1).collect();
                out.insert(key, p);
            }
        }
        out
    }

    /// All support vectors, in the order generated by the null-space basis.
    pub fn support(&self) -> impl Iterator<Item = Bits> + '_ {
        let base = self.system.particular_solution();
        let null = self.system.null_space();
        (0u64..self.support_size()).map(move |mask| {
            let mut v = base.clone();
            for (k, b) in null.iter().enumerate() {
                if (mask >> k) & 1 == 1 {
                    v.xor_assign(b);
                }
            }
            v
        })
    }
}

/// Indicator vectors of the generator subsets whose word is a product of
/// measured observables: no X on a Z-measured qubit and no Z on an
/// X-measured qubit. Returned as a basis of that GF(2) space.
pub fn admissible_generator_basis(graph: &Graph, bases: &[Basis]) -> Vec<Bits> {
    let n = graph.order();
    assert_eq!(bases.len(), n);
    let mut system = Echelon::new(n);
    for (j, b) in bases.iter().enumerate() {
        let row = match b {
            Basis::Z => Bits::from_indices(n, [j]),
            Basis::X => graph.neighbors(j).clone(),
        };
        system.insert(row, false);
    }
    system.null_space()
}

/// Exact joint law of measuring each qubit of `|G⟩` in the given basis.
pub fn outcome_law(graph: &Graph, bases: &[Basis]) -> OutcomeLaw {
    let constraints = admissible_generator_basis(graph, bases).into_iter().map(|k| {
        let word = stabilizer_word(graph, &k);
        (word.support(), word.sign)
    });
    OutcomeLaw::new(graph.order(), constraints).expect("stabiliser constraints are always consistent")
}

/// X for type bit 1, Z for type bit 0.
pub fn bases_for_type(types: &Bits) -> Vec<Basis> {
    (0..types.len()).map(|j| if types.get(j) { Basis::X } else { Basis::Z }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, v: &[usize]) -> Bits {
        Bits::from_indices(n, v.iter().copied())
    }

    fn word_string(w: &PauliWord) -> String {
        w.letters().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn graph_dedups_and_rejects() {
        let g = Graph::new(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(Graph::new(3, &[(0, 3)]), Err(GraphError::VertexOutOfRange(0, 3, 3)));
        assert_eq!(Graph::new(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn c5_single_generator() {
        let g = Graph::cycle(5);
        let w = stabilizer_word(&g, &set(5, &[0]));
        assert_eq!(word_string(&w), "XZIIZ");
        assert!(!w.sign);
    }

    #[test]
    fn c5_empty_and_full() {
        let g = Graph::cycle(5);
        let e = stabilizer_word(&g, &Bits::zeros(5));
        assert_eq!(e, PauliWord::identity(5));
        let full = stabilizer_word(&g, &Bits::ones(5));
        assert_eq!(word_string(&full), "XXXXX");
        assert!(full.sign);
    }

    #[test]
    fn adjacent_pair_gives_y() {
        let g = Graph::cycle(5);
        let w = stabilizer_word(&g, &set(5, &[0, 1]));
        assert_eq!(w.letter(0), Pauli::Y);
        assert_eq!(w.letter(1), Pauli::Y);
        assert_eq!(word_string(&w), "YYZIZ");
    }

    #[test]
    fn derive_c5_questions() {
        let g = Graph::cycle(5);
        let d = derive_question(&g, &set(5, &[1]));
        let q = d.derived.unwrap();
        assert_eq!(q.involved.to_indices(), vec![0, 1, 2]);
        assert!(!q.parity);
        assert_eq!(q.required_basis[1], BasisRequirement::MustMeasureX);
        assert_eq!(q.required_basis[0], BasisRequirement::MustMeasureZ);
        assert_eq!(q.required_basis[3], BasisRequirement::Free);

        let d = derive_question(&g, &set(5, &[0, 2])).derived.unwrap();
        assert_eq!(d.involved.to_indices(), vec![0, 2, 3, 4]);
        assert!(!d.parity);

        assert!(!derive_question(&g, &set(5, &[0, 1])).is_valid());
    }

    #[test]
    fn all_x_law_on_c5() {
        let g = Graph::cycle(5);
        let law = outcome_law(&g, &[Basis::X; 5]);
        assert_eq!(law.constraints(), vec![(Bits::ones(5), true)]);
        assert_eq!(law.support_size(), 16);
        let m = law.marginal(&[0]);
        assert_eq!(m.get(&vec![false]), Some(&Rational::new(1, 2)));
        assert_eq!(m.get(&vec![true]), Some(&Rational::new(1, 2)));
    }

    #[test]
    fn type_10000_law() {
        let g = Graph::cycle(5);
        let bases = bases_for_type(&Bits::from_bit_str("10000").unwrap());
        let law = outcome_law(&g, &bases);
        assert_eq!(law.constraints(), vec![(set(5, &[0, 1, 4]), false)]);
        assert_eq!(law.support_size(), 16);
        let p = law.parity_distribution(&set(5, &[0, 1, 4]));
        assert_eq!(p, [Rational::from_integer(1), Rational::from_integer(0)]);
        assert_eq!(law.probability(&Bits::from_bit_str("11111").unwrap()), Rational::from_integer(0));
        assert_eq!(law.probability(&Bits::from_bit_str("11000").unwrap()), Rational::new(1, 16));
    }

    #[test]
    fn edgeless_graph_is_product_of_plus_states() {
        let g = Graph::empty(2);
        let law = outcome_law(&g, &[Basis::X, Basis::X]);
        assert_eq!(law.rank(), 2);
        assert_eq!(law.support().collect::<Vec<_>>(), vec![Bits::zeros(2)]);
        let law = outcome_law(&g, &[Basis::Z, Basis::Z]);
        assert_eq!(law.rank(), 0);
        assert_eq!(law.support_size(), 4);
    }

    #[test]
    fn inconsistent_law_rejected() {
        let r = OutcomeLaw::new(2, [(set(2, &[0]), true), (set(2, &[0]), false)]);
        assert_eq!(r, Err(LawError::Inconsistent));
    }
}
