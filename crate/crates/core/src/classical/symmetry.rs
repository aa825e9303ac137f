//! Player permutations: game automorphisms, graph automorphisms and orbits.

use std::collections::BTreeSet;

use crate::game::GameSpec;
use crate::rational::Rational;
use crate::stabilizer::Graph;

/// `perm[i]` is the image of player `i`.
pub type Permutation = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    n: usize,
    perms: Vec<Permutation>,
}

impl SymmetryGroup {
    /// Builds a group from a list containing the identity; duplicates dropped.
    pub fn from_perms(n: usize, perms: impl IntoIterator<Item = Permutation>) -> Self {
        let set: BTreeSet<Permutation> = perms.into_iter().collect();
        let group = SymmetryGroup { n, perms: set.into_iter().collect() };
        debug_assert!(group.perms.contains(&identity(n)));
        group
    }

    pub fn trivial(n: usize) -> Self {
        SymmetryGroup { n, perms: vec![identity(n)] }
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn players(&self) -> usize {
        self.n
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.perms.binary_search(p).is_ok()
    }

    /// Closure under composition and inverse.
    pub fn is_group(&self) -> bool {
        self.contains(&identity(self.n))
            && self.perms.iter().all(|a| {
                self.contains(&inverse(a)) && self.perms.iter().all(|b| self.contains(&compose(a, b)))
            })
    }
}

pub fn identity(n: usize) -> Permutation {
    (0..n).collect()
}

/// `(a ∘ b)(i) = a(b(i))`.
pub fn compose(a: &Permutation, b: &Permutation) -> Permutation {
    b.iter().map(|&i| a[i]).collect()
}

pub fn inverse(a: &Permutation) -> Permutation {
    let mut inv = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Image of a profile index: player `perm[i]` gets player `i`'s function.
pub fn act_on_profile(perm: &Permutation, index: usize) -> usize {
    let n = perm.len();
    let mut out = 0usize;
    for (i, &target) in perm.iter().enumerate() {
        let code = (index >> (2 * (n - 1 - i))) & 3;
        out |= code << (2 * (n - 1 - target));
    }
    out
}

fn act_on_mask(perm: &Permutation, mask: u64) -> u64 {
    perm.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0, |acc, (_, &t)| acc | 1 << t)
}

fn for_each_permutation(n: usize, mut visit: impl FnMut(&Permutation)) {
    fn rec(k: usize, used: &mut Vec<bool>, cur: &mut Permutation, visit: &mut dyn FnMut(&Permutation)) {
        if k == used.len() {
            visit(cur);
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(k + 1, used, cur, visit);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(0, &mut vec![false; n], &mut Vec::with_capacity(n), &mut visit);
}

type QuestionKey = (u64, u64, bool, Rational);

fn question_keys(game: &GameSpec, perm: &Permutation) -> Vec<QuestionKey> {
    let mut keys: Vec<_> = game
        .questions
        .iter()
        .map(|q| (act_on_mask(perm, q.types.as_u64()), act_on_mask(perm, q.involved.as_u64()), q.parity, q.weight))
        .collect();
    keys.sort();
    keys
}

/// Player permutations mapping the weighted question multiset onto itself.
///
/// Brute force over `n!` permutations; intended for `n <= 8`.
pub fn game_automorphisms(game: &GameSpec) -> SymmetryGroup {
    let n = game.players();
    assert!(n <= 8, "automorphism search is factorial in the player count");
    let base = question_keys(game, &identity(n));
    let mut perms = Vec::new();
    for_each_permutation(n, |p| {
        if question_keys(game, p) == base {
            perms.push(p.clone());
        }
    });
    SymmetryGroup::from_perms(n, perms)
}

/// Vertex permutations preserving the edge set.
pub fn graph_automorphisms(graph: &Graph) -> SymmetryGroup {
    let n = graph.order();
    assert!(n <= 8, "automorphism search is factorial in the vertex count");
    let edges = graph.edges();
    let mut perms = Vec::new();
    for_each_permutation(n, |p| {
        if edges.iter().all(|&(u, v)| graph.has_edge(p[u], p[v])) {
            perms.push(p.clone());
        }
    });
    SymmetryGroup::from_perms(n, perms)
}

/// Elements of `group` mapping the sorted profile set onto itself.
pub fn set_stabilizer(group: &SymmetryGroup, sorted_indices: &[usize]) -> SymmetryGroup {
    let perms = group
        .perms
        .iter()
        .filter(|p| sorted_indices.iter().all(|&i| sorted_indices.binary_search(&act_on_profile(p, i)).is_ok()))
        .cloned();
    SymmetryGroup::from_perms(group.n, perms)
}

/// Orbits of a profile set closed under `group`, each sorted, ordered by
/// smallest member.
pub fn orbits(sorted_indices: &[usize], group: &SymmetryGroup) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &i in sorted_indices {
        if seen.contains(&i) {
            continue;
        }
        let orbit: BTreeSet<usize> = group.perms.iter().map(|p| act_on_profile(p, i)).collect();
        seen.extend(orbit.iter().copied());
        out.push(orbit.into_iter().collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{BuiltinGame, PayoffParams, QuestionSpec};
    use crate::gf2::Bits;

    #[test]
    fn nc00_has_dihedral_symmetry() {
        let g = game_automorphisms(&BuiltinGame::Nc00C5.spec());
        assert_eq!(g.order(), 10);
        assert!(g.is_group());
    }

    #[test]
    fn nc01_only_rotations() {
        let g = game_automorphisms(&BuiltinGame::Nc01C5.spec());
        assert_eq!(g.order(), 5);
        assert!(g.is_group());
    }

    #[test]
    fn c5_graph_group() {
        assert_eq!(graph_automorphisms(&Graph::cycle(5)).order(), 10);
        assert_eq!(graph_automorphisms(&Graph::empty(3)).order(), 6);
    }

    fn two_player(questions: Vec<(&str, &str, &[usize], bool, Rational)>) -> GameSpec {
        let qs = questions
            .into_iter()
            .map(|(id, t, i, b, w)| QuestionSpec {
                id: id.into(),
                types: Bits::from_bit_str(t).unwrap(),
                generators: None,
                involved: Bits::from_indices(2, i.iter().copied()),
                parity: b,
                weight: w,
            })
            .collect();
        GameSpec::new("two", Graph::empty(2), qs, PayoffParams::default()).unwrap()
    }

    #[test]
    fn symmetric_two_player_game() {
        let half = Rational::new(1, 2);
        let g = two_player(vec![("a", "10", &[0, 1], false, half), ("b", "01", &[0, 1], false, half)]);
        assert_eq!(game_automorphisms(&g).order(), 2);
    }

    #[test]
    fn distinct_weights_break_symmetry() {
        let g = two_player(vec![
            ("a", "10", &[0, 1], false, Rational::new(1, 3)),
            ("b", "01", &[0, 1], false, Rational::new(2, 3)),
        ]);
        assert_eq!(game_automorphisms(&g).order(), 1);
    }

    #[test]
    fn profile_action() {
        // rotation i -> i+1 moves player 0's function to player 1
        let rot: Permutation = vec![1, 2, 3, 4, 0];
        let p: crate::classical::Profile = "21111".parse().unwrap();
        let q = act_on_profile(&rot, p.index());
        assert_eq!(crate::classical::Profile::from_index(q, 5).to_string(), "12111");
    }
}
