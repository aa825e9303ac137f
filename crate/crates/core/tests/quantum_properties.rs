use grapheq::gf2::Bits;
use grapheq::quantum::{
    check_advice_marginals, is_quantum_nash, quantum_threshold, verify_perfect_win, verify_uniform_and_belief_invariant,
};
use grapheq::stabilizer::OutcomeLaw;
use grapheq::{BuiltinGame, PayoffParams, Rational};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

#[test]
fn builtins_win_with_certainty_and_hide_the_advice() {
    for b in BuiltinGame::ALL {
        let game = b.spec();
        let win = verify_perfect_win(&game).unwrap();
        assert!(win.passed(), "{}: {:?}", game.name, win.failures());
        let belief = verify_uniform_and_belief_invariant(&game).unwrap();
        assert!(belief.passed(), "{}: {belief:?}", game.name);
    }
}

#[test]
fn flipped_parity_is_never_won() {
    for b in BuiltinGame::ALL {
        let base = b.spec();
        for i in 0..base.questions.len() {
            let mut game = base.clone();
            game.questions[i].parity ^= true;
            let win = verify_perfect_win(&game).unwrap();
            assert_eq!(win.questions[i].win_probability, r(0, 1), "{} question {i}", base.name);
            assert!(!win.passed());
        }
    }
}

#[test]
fn point_mass_advice_is_not_uniform() {
    let game = BuiltinGame::Nc00C5.spec();
    let n = game.players();
    let zero = OutcomeLaw::new(n, (0..n).map(|j| (Bits::from_indices(n, [j]), false))).unwrap();
    let laws = vec![zero; game.questions.len()];
    let report = check_advice_marginals(&game, &laws);
    assert!(!report.uniform());
    assert_eq!(report.non_uniform.len(), n * game.questions.len());
}

#[test]
fn type_dependent_point_masses_break_invariance() {
    let game = BuiltinGame::Nc01C5.spec();
    let n = game.players();
    // each player is told their own type
    let laws: Vec<OutcomeLaw> = game
        .questions
        .iter()
        .map(|q| OutcomeLaw::new(n, (0..n).map(|j| (Bits::from_indices(n, [j]), q.types.get(j)))).unwrap())
        .collect();
    let report = check_advice_marginals(&game, &laws);
    assert!(!report.uniform());
    assert!(report.belief_invariant());

    // player 0 learns whether the question is the all-ones one
    let laws: Vec<OutcomeLaw> = game
        .questions
        .iter()
        .map(|q| OutcomeLaw::new(n, [(Bits::from_indices(n, [0]), q.types.count_ones() == n)]).unwrap())
        .collect();
    let report = check_advice_marginals(&game, &laws);
    assert!(!report.belief_invariant());
}

#[test]
fn thresholds_are_exact_and_weak() {
    let mut ps = vec![];
    for b in BuiltinGame::ALL {
        let game = b.spec();
        let t = quantum_threshold(&game).unwrap();
        assert_eq!(t.bound, r(1, 1) - t.p);
        ps.push(t.p);
        let one = r(1, 1);
        let at = PayoffParams::new(t.bound, one, r(0, 1)).unwrap();
        let decision = is_quantum_nash(&game, &at).unwrap();
        assert!(decision.is_nash() && decision.agree(), "{} at the bound", game.name);
        let below = PayoffParams::new(t.bound - r(1, 1000), one, r(0, 1)).unwrap();
        let decision = is_quantum_nash(&game, &below).unwrap();
        assert!(!decision.is_nash() && decision.agree(), "{} below the bound", game.name);
        assert!(decision.witness.is_some());
    }
    ps.sort();
    assert_eq!(ps, vec![r(1, 2), r(4, 7), r(8, 13), r(2, 3)]);
}
