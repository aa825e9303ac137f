use grapheq::amplification::{
    decay_factor, kfold, kfold_best_csw, kfold_bruteforce, kfold_nash_by_decomposition, penalty_report, players_needed,
    AmplificationError, GroupTable,
};
use grapheq::classical::{enumerate_nash, evaluate, LocalFn, Profile};
use grapheq::rational::{parse_big_rational, to_big};
use grapheq::{BuiltinGame, PayoffParams, Rational};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a, b)
}

fn big(a: i64, b: i64) -> BigRational {
    to_big(&r(a, b))
}

#[test]
fn two_fold_brute_force_matches_decomposition() {
    let game = BuiltinGame::Nc00C5.spec();
    let params = PayoffParams::default();
    let brute = kfold_bruteforce(&game, 2, &params).unwrap();
    let decomposed = kfold_best_csw(&game, 2, &params).unwrap();
    assert_eq!(brute.best, decomposed.value);
    assert_eq!(brute.best, big(23, 36));
    let predicted = kfold_nash_by_decomposition(&game, 2, &params).unwrap();
    assert_eq!(brute.nash, predicted);
}

#[test]
fn decay_factor_is_five_sixths() {
    let game = BuiltinGame::Nc00C5.spec();
    let params = PayoffParams::default();
    for k in 1..=3 {
        assert_eq!(decay_factor(&game, k, &params).unwrap(), big(5, 6), "k = {k}");
    }
    let base = kfold_best_csw(&game, 1, &params).unwrap().value;
    let four = kfold_best_csw(&game, 4, &params).unwrap().value;
    assert_eq!(four, base * big(125, 216));
}

#[test]
fn factorization_identity_on_random_profiles() {
    let game = BuiltinGame::Nc00C5.spec();
    let params = PayoffParams::default();
    let product = kfold(&game, 2).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let check = |p1: usize, p2: usize| {
        let a = Profile::from_index(p1, 5);
        let b = Profile::from_index(p2, 5);
        let joint: Vec<LocalFn> = a.0.iter().chain(&b.0).copied().collect();
        let u = product.utilities(&joint, &params);
        let ea = evaluate(&game, &a).unwrap();
        let eb = evaluate(&game, &b).unwrap();
        for j in 0..5 {
            assert_eq!(u[j], ea.payoffs[j].value(&params) * eb.p_win);
            assert_eq!(u[5 + j], eb.payoffs[j].value(&params) * ea.p_win);
        }
    };
    for _ in 0..1000 {
        check(rng.gen_range(0..1024), rng.gen_range(0..1024));
    }
    let fixed = "21111".parse::<Profile>().unwrap().index();
    for p2 in 0..1024 {
        check(fixed, p2);
    }
}

#[test]
fn quantum_wins_every_product_question() {
    for g in BuiltinGame::ALL {
        for k in 1..=4 {
            let product = kfold(&g.spec(), k).unwrap();
            let probs = product.quantum_win_probabilities().unwrap();
            assert!(probs.iter().all(|p| *p == Rational::from_integer(1)), "{} k = {k}", g.name());
        }
    }
}

#[test]
fn penalty_leaves_two_equilibria() {
    let game = BuiltinGame::Nc01C5.spec();
    let base = PayoffParams::default();
    let at = |ng: Rational| penalty_report(&game, &base.with_penalty(ng).unwrap()).unwrap();
    let four = at(r(4, 1));
    let names: Vec<String> = four.report.profiles.iter().map(|p| p.profile.to_string()).collect();
    assert_eq!(names, vec!["00000", "33333"]);
    let sw: Vec<Rational> = four.report.profiles.iter().map(|p| p.social_welfare).collect();
    assert_eq!(sw, vec![r(1, 9), r(5, 18)]);
    assert_eq!(four.qsw, r(5, 6));
    for ng in [r(301, 100), r(4, 1), r(10, 1), r(100, 1)] {
        assert_eq!(at(ng).report.len(), 2, "ng = {ng}");
    }
    assert_eq!(at(Rational::from_integer(0)).report.profiles, enumerate_nash(&game, &base).unwrap().profiles);
}

#[test]
fn penalty_welfare_falls_linearly() {
    let game = BuiltinGame::Nc01C5.spec();
    let base = PayoffParams::default();
    let mut last: Option<Rational> = None;
    for step in 0..=20 {
        let ng = r(step, 2);
        let report = penalty_report(&game, &base.with_penalty(ng).unwrap()).unwrap();
        let csw = report.csw().unwrap();
        if let Some(prev) = last {
            assert!(csw <= prev, "ng = {ng}");
        }
        last = Some(csw);
        if ng > r(3, 1) {
            for row in &report.report.profiles {
                let sw = grapheq::classical::Evaluation {
                    payoffs: row.payoffs.clone(),
                    wins: Vec::new(),
                    p_win: row.p_win,
                }
                .social_welfare();
                let (a, b) = sw.coefficients(ng);
                assert_eq!(a * base.v0 + b * base.v1, row.social_welfare);
                let slope = -(sw.lose_v0 * base.v0 + sw.lose_v1 * base.v1);
                let next = penalty_report(&game, &base.with_penalty(ng + 1).unwrap()).unwrap();
                let again = next.report.profiles.iter().find(|p| p.profile == row.profile).unwrap();
                assert_eq!(again.social_welfare - row.social_welfare, slope);
            }
        }
    }
}

#[test]
fn players_needed_table() {
    let game = BuiltinGame::Nc00C5.spec();
    let params = PayoffParams::default();
    let expect = [("0.1", 14), ("0.01", 26), ("0.001", 39), ("1e-4", 52), ("1e-5", 64), ("1e-6", 77)];
    for (eps, k) in expect {
        let got = players_needed(&game, &params, &parse_big_rational(eps).unwrap()).unwrap();
        assert_eq!(got.k, k, "eps = {eps}");
        assert_eq!(got.players, 5 * k);
    }
    let one = players_needed(&game, &params, &parse_big_rational("0.92").unwrap()).unwrap();
    assert_eq!(one.k, 1);
    assert_eq!(one.base_ratio, big(23, 25));
    assert_eq!(players_needed(&game, &params, &BigRational::from_integer(1.into())).unwrap().k, 1);
    assert!(matches!(players_needed(&game, &params, &big(0, 1)), Err(AmplificationError::Eps(_))));
}

#[test]
fn group_table_shape() {
    let t = GroupTable::new(&BuiltinGame::Nc00C5.spec(), &PayoffParams::default()).unwrap();
    assert_eq!(t.rows.len(), 1024);
    assert!(t.rows.iter().all(|row| row.p_win >= Rational::from_integer(0) && row.p_win <= Rational::from_integer(1)));
    assert_eq!(t.rows.iter().filter(|row| row.nash).count(), 40);
}

#[test]
fn brute_force_size_limit() {
    let game = BuiltinGame::Nc00C5.spec();
    assert!(matches!(
        kfold_bruteforce(&game, 3, &PayoffParams::default()),
        Err(AmplificationError::SizeLimit { players: 15, limit: 10 })
    ));
}
