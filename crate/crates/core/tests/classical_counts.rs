use grapheq::classical::{enumerate, ratio_regimes, Criterion, Ties};
use grapheq::{BuiltinGame, PayoffParams, Rational};

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a, b)
}

fn counts(game: BuiltinGame, ratio: Rational, criterion: Criterion) -> (usize, usize) {
    let rep = enumerate(&game.spec(), &PayoffParams::ratio(ratio).unwrap(), criterion, Ties::Weak).unwrap();
    (rep.len(), rep.orbits.len())
}

#[test]
fn nc00_nash_counts_by_ratio() {
    let cases = [(r(1, 4), 20, 4), (r(1, 3), 35, 6), (r(2, 5), 25, 4), (r(1, 2), 45, 7), (r(2, 3), 40, 6), (r(1, 1), 192, 28)];
    for (ratio, n, o) in cases {
        assert_eq!(counts(BuiltinGame::Nc00C5, ratio, Criterion::Nash), (n, o), "r = {ratio}");
    }
}

#[test]
fn nc00_pareto_counts_by_ratio() {
    for (ratio, n, o) in [(r(1, 4), 121, 18), (r(2, 5), 91, 14), (r(2, 3), 81, 12)] {
        assert_eq!(counts(BuiltinGame::Nc00C5, ratio, Criterion::Pareto), (n, o), "r = {ratio}");
    }
}

#[test]
fn nc01_counts() {
    assert_eq!(counts(BuiltinGame::Nc01C5, r(1, 4), Criterion::Nash).0, 5);
    assert_eq!(counts(BuiltinGame::Nc01C5, r(1, 3), Criterion::Nash).0, 45);
    for ratio in [r(2, 5), r(2, 3), r(9, 10)] {
        assert_eq!(counts(BuiltinGame::Nc01C5, ratio, Criterion::Nash), (40, 6), "r = {ratio}");
    }
    assert_eq!(counts(BuiltinGame::Nc01C5, r(1, 4), Criterion::Pareto).0, 91);
    assert_eq!(counts(BuiltinGame::Nc01C5, r(2, 5), Criterion::Pareto), (76, 16));
}

#[test]
fn nc00_regimes() {
    let reg = ratio_regimes(&BuiltinGame::Nc00C5.spec(), Rational::from_integer(0), Criterion::Nash).unwrap();
    assert_eq!(reg.breakpoints, vec![r(1, 3), r(1, 2)]);
    let sizes: Vec<usize> = reg.intervals.iter().map(|i| i.len()).collect();
    assert_eq!(sizes, vec![20, 25, 40]);
    assert!(reg.point_at(r(1, 3)).unwrap().union_of_neighbors);
    assert!(reg.point_at(r(1, 2)).unwrap().union_of_neighbors);
    let end = reg.point_at(r(1, 1)).unwrap();
    assert_eq!(end.report.len(), 192);
    assert!(!end.union_of_neighbors);
}

#[test]
fn nc01_regimes() {
    let reg = ratio_regimes(&BuiltinGame::Nc01C5.spec(), Rational::from_integer(0), Criterion::Nash).unwrap();
    assert_eq!(reg.breakpoints, vec![r(1, 3)]);
    let sizes: Vec<usize> = reg.intervals.iter().map(|i| i.len()).collect();
    assert_eq!(sizes, vec![5, 40]);
}
