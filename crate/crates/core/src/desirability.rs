//! Isbell's desirability relation and completeness.

use crate::coalition::Coalition;
use crate::game::SimpleGame;
use crate::trade::TradingTransform;

/// `geq[i][j]` holds when player `i` is at least as desirable as `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesirabilityRelation {
    geq: Vec<Vec<bool>>,
}

impl DesirabilityRelation {
    pub fn n(&self) -> usize {
        self.geq.len()
    }

    pub fn geq(&self, i: usize, j: usize) -> bool {
        self.geq[i][j]
    }

    pub fn strictly(&self, i: usize, j: usize) -> bool {
        self.geq[i][j] && !self.geq[j][i]
    }

    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.geq[i][j] && self.geq[j][i]
    }

    pub fn is_total(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| self.geq[i][j] || self.geq[j][i]))
    }

    /// Equivalence classes, each sorted, ordered by smallest member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut assigned = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if assigned[i] {
                continue;
            }
            let class: Vec<usize> = (i..n).filter(|&j| self.equivalent(i, j)).collect();
            for &j in &class {
                assigned[j] = true;
            }
            out.push(class);
        }
        out
    }

    /// Classes ordered from most to least desirable. Only meaningful for a
    /// total relation; returns `None` otherwise.
    pub fn levels(&self) -> Option<Vec<Vec<usize>>> {
        if !self.is_total() {
            return None;
        }
        let mut classes = self.classes();
        // a class dominates another iff its representative does
        classes.sort_by(|a, b| {
            let (x, y) = (a[0], b[0]);
            if self.strictly(x, y) {
                std::cmp::Ordering::Less
            } else if self.strictly(y, x) {
                std::cmp::Ordering::Greater
            } else {
                x.cmp(&y)
            }
        });
        Some(classes)
    }

    /// Players `j` with `i ⪰ j` for every `i`.
    pub fn least_desirable(&self) -> Vec<usize> {
        let n = self.n();
        (0..n).filter(|&j| (0..n).all(|i| self.geq[i][j])).collect()
    }
}

/// Computes `i ⪰ j` for all pairs.
///
/// Uses the reduction to minimal winning coalitions: `i ⪰ j` fails exactly
/// when some minimal winning `M` contains `j` but not `i` and `(M \ {j}) ∪ {i}`
/// loses.
pub fn desirability(game: &SimpleGame) -> DesirabilityRelation {
    let n = game.n();
    let mut geq = vec![vec![true; n]; n];
    for (i, row) in geq.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            if i != j {
                *cell = swap_witness(game, i, j).is_none();
            }
        }
    }
    DesirabilityRelation { geq }
}

/// A minimal winning coalition `M` with `j ∈ M`, `i ∉ M` and
/// `(M \ {j}) ∪ {i}` losing; its existence refutes `i ⪰ j`.
fn swap_witness(game: &SimpleGame, i: usize, j: usize) -> Option<Coalition> {
    game.min_winning()
        .iter()
        .copied()
        .find(|m| m.contains(j) && !m.contains(i) && !game.wins(m.without(j).with(i)))
}

/// When `i ≻ j`, a minimal winning coalition containing `i` but not `j`
/// that loses once `i` is replaced by `j`.
pub fn strictly_more_desirable(game: &SimpleGame, i: usize, j: usize) -> Option<Coalition> {
    if i == j || swap_witness(game, i, j).is_some() {
        return None;
    }
    swap_witness(game, j, i)
}

pub fn is_complete(game: &SimpleGame) -> bool {
    incompleteness_certificate(game).is_none()
}

/// A swap certificate `(M₁, M₂; M₁-i+j, M₂-j+i)` built from an incomparable
/// pair, or `None` when the relation is total.
pub fn incompleteness_certificate(game: &SimpleGame) -> Option<TradingTransform> {
    let n = game.n();
    for i in 0..n {
        for j in i + 1..n {
            let (Some(m_j), Some(m_i)) = (swap_witness(game, i, j), swap_witness(game, j, i)) else {
                continue;
            };
            // m_i contains i but not j, m_j contains j but not i
            return Some(TradingTransform::new(
                vec![m_i, m_j],
                vec![m_i.without(i).with(j), m_j.without(j).with(i)],
            ));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::trade;

    fn c(players: &[usize]) -> Coalition {
        Coalition::from_players(players.iter().copied())
    }

    /// Direct check of the defining implication over every coalition avoiding
    /// both players.
    fn geq_by_definition(game: &SimpleGame, i: usize, j: usize) -> bool {
        let rest = game.players().without(i).without(j);
        rest.subsets().all(|x| !game.wins(x.with(j)) || game.wins(x.with(i)))
    }

    #[test]
    fn small_example_orders_levels() {
        let g = SimpleGame::new(3, vec![c(&[0]), c(&[1, 2])]).unwrap();
        let d = desirability(&g);
        assert!(d.strictly(0, 1) && d.strictly(0, 2));
        assert!(d.equivalent(1, 2));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d.geq(i, j), geq_by_definition(&g, i, j));
            }
        }
        assert_eq!(strictly_more_desirable(&g, 0, 1), Some(c(&[0])));
        assert_eq!(d.levels().unwrap(), vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn symmetric_games_have_one_class() {
        let h = catalog::k_out_of_n(5, 3).unwrap();
        let d = desirability(&h);
        assert_eq!(d.classes(), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(strictly_more_desirable(&h, 0, 1), None);
        assert!(is_complete(&h));
    }

    #[test]
    fn incomplete_game_has_swap_certificate() {
        let g = SimpleGame::new(4, vec![c(&[0, 1]), c(&[2, 3])]).unwrap();
        assert!(!is_complete(&g));
        let t = incompleteness_certificate(&g).unwrap();
        assert!(trade::is_certificate_of_incompleteness(&g, &t).unwrap());
        assert!(desirability(&g).levels().is_none());
    }
}
