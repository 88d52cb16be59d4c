//! Isomorphism of simple games.
//!
//! Equivalent players can be interchanged freely, so a search only has to
//! decide which desirability class goes where; members are then paired in
//! index order.

use std::collections::HashSet;

use crate::coalition::Coalition;
use crate::desirability::desirability;
use crate::game::SimpleGame;

struct Side {
    classes: Vec<Vec<usize>>,
    keys: Vec<(usize, Vec<usize>)>,
    min_winning: HashSet<Coalition>,
}

impl Side {
    fn new(game: &SimpleGame) -> Self {
        let classes = desirability(game).classes();
        let keys = classes.iter().map(|c| (c.len(), game.player_signature(c[0]))).collect();
        Side {
            classes,
            keys,
            min_winning: game.min_winning().iter().copied().collect(),
        }
    }
}

/// A bijection `σ` (player `i` of `g1` ↦ `σ[i]` in `g2`) with
/// `X ∈ W₁ ⟺ σ(X) ∈ W₂`, if one exists.
pub fn isomorphic(g1: &SimpleGame, g2: &SimpleGame) -> Option<Vec<usize>> {
    if g1.n() != g2.n() || g1.min_winning().len() != g2.min_winning().len() {
        return None;
    }
    let sizes = |g: &SimpleGame| {
        let mut s: Vec<usize> = g.min_winning().iter().map(|c| c.len()).collect();
        s.sort_unstable();
        s
    };
    if sizes(g1) != sizes(g2) {
        return None;
    }
    let a = Side::new(g1);
    let b = Side::new(g2);
    let mut ka = a.keys.clone();
    let mut kb = b.keys.clone();
    ka.sort();
    kb.sort();
    if ka != kb {
        return None;
    }

    let mut sigma = vec![usize::MAX; g1.n()];
    let mut used = vec![false; b.classes.len()];
    search(&a, &b, 0, &mut sigma, &mut used, Coalition::EMPTY).then_some(sigma)
}

fn search(a: &Side, b: &Side, class: usize, sigma: &mut [usize], used: &mut [bool], assigned: Coalition) -> bool {
    if class == a.classes.len() {
        return a
            .min_winning
            .iter()
            .all(|m| b.min_winning.contains(&m.map_players(sigma)));
    }
    for target in 0..b.classes.len() {
        if used[target] || a.keys[class] != b.keys[target] {
            continue;
        }
        for (&p, &q) in a.classes[class].iter().zip(&b.classes[target]) {
            sigma[p] = q;
        }
        let assigned_now = assigned | a.classes[class].iter().copied().collect();
        if consistent(a, b, sigma, assigned_now) {
            used[target] = true;
            if search(a, b, class + 1, sigma, used, assigned_now) {
                return true;
            }
            used[target] = false;
        }
    }
    false
}

/// Minimal winning coalitions inside the assigned players must map onto
/// minimal winning coalitions, and no extra ones may appear in the image.
fn consistent(a: &Side, b: &Side, sigma: &[usize], assigned: Coalition) -> bool {
    let image = assigned.map_players(sigma);
    let inside_a = a
        .min_winning
        .iter()
        .filter(|m| m.is_subset_of(assigned))
        .try_fold(0usize, |n, m| {
            b.min_winning.contains(&m.map_players(sigma)).then_some(n + 1)
        });
    match inside_a {
        Some(count) => count == b.min_winning.iter().filter(|m| m.is_subset_of(image)).count(),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::composition::{compose, CompositionSpec};

    #[test]
    fn permuted_games_are_isomorphic() {
        let g = SimpleGame::new(
            4,
            vec![Coalition::from_players([0, 1]), Coalition::from_players([1, 2, 3])],
        )
        .unwrap();
        let h = g.permuted(&[3, 0, 2, 1]).unwrap();
        let sigma = isomorphic(&g, &h).unwrap();
        assert_eq!(g.permuted(&sigma).unwrap(), h);
    }

    #[test]
    fn different_sizes_not_isomorphic() {
        let h32 = catalog::k_out_of_n(3, 2).unwrap();
        let h31 = catalog::k_out_of_n(3, 1).unwrap();
        assert!(isomorphic(&h32, &h31).is_none());
    }

    #[test]
    fn unanimity_composition() {
        let u2 = catalog::unanimity(2).unwrap();
        let c = compose(&CompositionSpec::new(u2.clone(), 1, u2).unwrap()).unwrap();
        assert!(isomorphic(&c, &catalog::unanimity(3).unwrap()).is_some());
    }
}
