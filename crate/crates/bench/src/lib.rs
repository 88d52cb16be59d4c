//! Inputs shared by the benchmarks in `benches/`.

use simplegames::catalog::{CatalogParams, Family, Mode};
use simplegames::{Coalition, SimpleGame};

/// Five vetoers plus any four of ten others.
pub fn security_council() -> SimpleGame {
    let permanent = Coalition::full(5);
    SimpleGame::from_predicate(15, |x| permanent.is_subset_of(x) && x.len() >= 9).expect("valid game")
}

/// Two disjoint pairs: the smallest non-weighted game.
pub fn two_pairs() -> SimpleGame {
    SimpleGame::new(
        4,
        vec![Coalition::from_players([0, 1]), Coalition::from_players([2, 3])],
    )
    .expect("valid game")
}

/// A three-level catalog game on ten players.
pub fn tripartite() -> SimpleGame {
    CatalogParams::new(Family::T1, vec![4, 3, 3], vec![3, 2, 4])
        .build(Mode::Indecomposable)
        .expect("valid game")
}
