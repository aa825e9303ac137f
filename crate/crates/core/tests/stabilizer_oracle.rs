//! Outcome laws checked against a dense state-vector simulation.

use grapheq::gf2::Bits;
use grapheq::rational::to_f64;
use grapheq::stabilizer::{outcome_law, stabilizer_word};
use grapheq::{Basis, Graph};
use proptest::prelude::*;

/// Born probabilities of every outcome, indexed by the outcome mask.
fn simulate(graph: &Graph, bases: &[Basis]) -> Vec<f64> {
    let n = graph.order();
    let dim = 1usize << n;
    let edges = graph.edges();
    let sign = |z: usize| {
        let inner = edges.iter().filter(|&&(u, v)| (z >> u) & 1 == 1 && (z >> v) & 1 == 1).count();
        if inner % 2 == 0 { 1.0 } else { -1.0 }
    };
    let norm = (dim as f64).sqrt().recip();
    let xs = bases.iter().filter(|b| **b == Basis::X).count();
    let h = (2f64.powi(xs as i32)).sqrt().recip();
    (0..dim)
        .map(|a| {
            let amp: f64 = (0..dim)
                .filter(|z| (0..n).all(|j| bases[j] == Basis::X || (z >> j) & 1 == (a >> j) & 1))
                .map(|z| {
                    let phase = (0..n).filter(|&j| bases[j] == Basis::X && (z >> j) & (a >> j) & 1 == 1).count();
                    let phase = if phase % 2 == 0 { 1.0 } else { -1.0 };
                    sign(z) * phase * norm * h
                })
                .sum();
            amp * amp
        })
        .collect()
}

fn assert_law_matches(graph: &Graph, bases: &[Basis]) {
    let n = graph.order();
    let law = outcome_law(graph, bases);
    let born = simulate(graph, bases);
    let mut total = 0.0;
    for (a, p) in born.iter().enumerate() {
        let exact = to_f64(&law.probability(&Bits::from_u64(n, a as u64)));
        assert!((exact - p).abs() < 1e-9, "{:?} {bases:?} outcome {a:0n$b}: law {exact}, simulation {p}", graph.edges());
        total += exact;
    }
    assert!((total - 1.0).abs() < 1e-12);
}

fn all_bases(n: usize) -> impl Iterator<Item = Vec<Basis>> {
    (0..1u32 << n).map(move |m| (0..n).map(|j| if (m >> j) & 1 == 1 { Basis::X } else { Basis::Z }).collect())
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(i, _)| (mask >> i) & 1 == 1).map(|(_, e)| *e).collect();
    Graph::new(n, &edges).unwrap()
}

#[test]
fn every_four_vertex_graph_in_every_basis() {
    for mask in 0..1u64 << 6 {
        let g = graph_from_mask(4, mask);
        for bases in all_bases(4) {
            assert_law_matches(&g, &bases);
        }
    }
}

#[test]
fn five_cycle_in_every_basis() {
    let g = Graph::cycle(5);
    for bases in all_bases(5) {
        assert_law_matches(&g, &bases);
    }
}

#[test]
fn stabilizer_words_fix_the_state() {
    // every Y-free stabiliser word is measured with its sign
    let g = Graph::cycle(5);
    let mut seen = 0;
    for mask in 1..32u64 {
        let word = stabilizer_word(&g, &Bits::from_u64(5, mask));
        if !word.x.and(&word.z).is_zero() {
            continue;
        }
        seen += 1;
        let bases: Vec<Basis> = (0..5).map(|j| if word.x.get(j) { Basis::X } else { Basis::Z }).collect();
        let law = outcome_law(&g, &bases);
        let support = word.support();
        for a in 0..32u64 {
            let a = Bits::from_u64(5, a);
            if law.contains(&a) {
                assert_eq!(a.dot(&support), word.sign, "generators {mask:05b}");
            }
        }
    }
    assert!(seen >= 6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_six_vertex_graphs(edge_mask in 0u64..(1 << 15), basis_mask in 0u32..64) {
        let g = graph_from_mask(6, edge_mask);
        let bases: Vec<Basis> = (0..6).map(|j| if (basis_mask >> j) & 1 == 1 { Basis::X } else { Basis::Z }).collect();
        assert_law_matches(&g, &bases);
    }
}
