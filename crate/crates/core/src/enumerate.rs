//! Exhaustive enumeration of small games as nonempty antichains.

use itertools::Itertools;

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::SimpleGame;

/// Largest `n` allowed without opting in.
pub const DEFAULT_MAX_PLAYERS: usize = 4;
/// Hard cap.
pub const MAX_ENUMERATION_PLAYERS: usize = 5;

/// Every nonempty antichain of subsets of `{0..n-1}` exactly once, in
/// lexicographic order of the increasing mask sequences. Includes `{∅}`.
pub struct GameEnumerator {
    n: usize,
    limit: u64,
    stack: Vec<(Vec<Coalition>, u64)>,
}

impl Iterator for GameEnumerator {
    type Item = SimpleGame;

    fn next(&mut self) -> Option<SimpleGame> {
        loop {
            let (chosen, start) = self.stack.last_mut()?;
            let found = (*start..self.limit)
                .map(Coalition::from_bits)
                .find(|&m| chosen.iter().all(|&c| !c.is_subset_of(m)));
            let Some(m) = found else {
                self.stack.pop();
                continue;
            };
            *start = m.bits() + 1;
            let mut next = chosen.clone();
            next.push(m);
            self.stack.push((next.clone(), m.bits() + 1));
            return Some(SimpleGame::new(self.n, next).expect("antichain by construction"));
        }
    }
}

/// Games on `n` players; `n = 5` needs `allow_five`.
pub fn enumerate_games(n: usize, allow_five: bool) -> Result<GameEnumerator> {
    let cap = if allow_five {
        MAX_ENUMERATION_PLAYERS
    } else {
        DEFAULT_MAX_PLAYERS
    };
    if n == 0 || n > cap {
        return Err(Error::InvalidInput(format!(
            "enumeration supports 1 ≤ n ≤ {cap}{}",
            if allow_five {
                ""
            } else {
                " (n = 5 needs the opt-in flag)"
            }
        )));
    }
    Ok(GameEnumerator {
        n,
        limit: 1 << n,
        stack: vec![(Vec::new(), 0)],
    })
}

/// Lexicographically least sorted mask list over all relabelings.
pub fn canonical_labeling(game: &SimpleGame) -> Vec<u64> {
    (0..game.n())
        .permutations(game.n())
        .map(|perm| {
            let mut masks: Vec<u64> = game.min_winning().iter().map(|c| c.map_players(&perm).bits()).collect();
            masks.sort_unstable();
            masks
        })
        .min()
        .expect("n ≥ 1")
}

/// One representative per isomorphism class, in first-seen order.
pub fn enumerate_up_to_isomorphism(n: usize, allow_five: bool) -> Result<Vec<SimpleGame>> {
    let mut seen = std::collections::HashSet::new();
    Ok(enumerate_games(n, allow_five)?
        .filter(|g| seen.insert(canonical_labeling(g)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antichain_counts() {
        assert_eq!(enumerate_games(1, false).unwrap().count(), 2);
        assert_eq!(enumerate_games(2, false).unwrap().count(), 5);
        assert_eq!(enumerate_games(3, false).unwrap().count(), 19);
        assert_eq!(enumerate_games(4, false).unwrap().count(), 167);
    }

    #[test]
    fn five_needs_opt_in() {
        assert!(enumerate_games(5, false).is_err());
        assert!(enumerate_games(6, true).is_err());
        assert!(enumerate_games(0, true).is_err());
    }

    #[test]
    fn isomorphism_classes() {
        // antichains on 3 points up to permutation, minus the empty one
        assert_eq!(enumerate_up_to_isomorphism(3, false).unwrap().len(), 9);
    }
}
