//! Trading transforms and certificates of nonweightedness / incompleteness.

use crate::coalition::{Coalition, MAX_PLAYERS};
use crate::error::{Error, Result};
use crate::game::SimpleGame;

/// Two equal-length sequences of coalitions `(X₁..X_j; Y₁..Y_j)`. Repeated
/// coalitions are allowed on either side.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TradingTransform {
    pub x: Vec<Coalition>,
    pub y: Vec<Coalition>,
}

impl TradingTransform {
    pub fn new(x: Vec<Coalition>, y: Vec<Coalition>) -> Self {
        TradingTransform { x, y }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Both sides sorted, so that transforms differing only in the order of
    /// their coalitions compare equal.
    pub fn canonical(&self) -> TradingTransform {
        let mut x = self.x.clone();
        let mut y = self.y.clone();
        x.sort();
        y.sort();
        TradingTransform { x, y }
    }

    /// Relabels every coalition through `map` (player `i` becomes `map[i]`).
    pub fn map_players(&self, map: &[usize]) -> TradingTransform {
        TradingTransform {
            x: self.x.iter().map(|c| c.map_players(map)).collect(),
            y: self.y.iter().map(|c| c.map_players(map)).collect(),
        }
    }

    fn occurrences(side: &[Coalition]) -> [usize; MAX_PLAYERS] {
        let mut counts = [0usize; MAX_PLAYERS];
        for c in side {
            for p in c.members() {
                counts[p] += 1;
            }
        }
        counts
    }
}

/// True iff every player occurs equally often on both sides.
pub fn is_trading_transform(t: &TradingTransform) -> Result<bool> {
    if t.x.len() != t.y.len() {
        return Err(Error::InvalidInput(format!(
            "sides have lengths {} and {}",
            t.x.len(),
            t.y.len()
        )));
    }
    Ok(TradingTransform::occurrences(&t.x) == TradingTransform::occurrences(&t.y))
}

/// A balanced transform whose X side wins and whose Y side loses.
pub fn is_certificate_of_nonweightedness(game: &SimpleGame, t: &TradingTransform) -> Result<bool> {
    if !is_trading_transform(t)? {
        return Ok(false);
    }
    for c in t.x.iter().chain(&t.y) {
        game.check_coalition(*c)?;
    }
    Ok(!t.is_empty() && t.x.iter().all(|&c| game.wins(c)) && t.y.iter().all(|&c| !game.wins(c)))
}

/// The swap form `(X∪{x}, Y∪{y}; X∪{y}, Y∪{x})` of a certificate.
pub fn is_certificate_of_incompleteness(game: &SimpleGame, t: &TradingTransform) -> Result<bool> {
    if t.len() != 2 || t.y.len() != 2 {
        return Ok(false);
    }
    if !is_certificate_of_nonweightedness(game, t)? {
        return Ok(false);
    }
    Ok(is_swap_form(t.x[0], t.x[1], t.y[0], t.y[1]) || is_swap_form(t.x[0], t.x[1], t.y[1], t.y[0]))
}

/// `x1 = A∪{x}`, `x2 = B∪{y}`, `y1 = A∪{y}`, `y2 = B∪{x}` for single players
/// `x ≠ y` outside `A` and `B` respectively.
fn is_swap_form(x1: Coalition, x2: Coalition, y1: Coalition, y2: Coalition) -> bool {
    let out1 = x1 - y1;
    let in1 = y1 - x1;
    let out2 = x2 - y2;
    let in2 = y2 - x2;
    out1.len() == 1 && in1.len() == 1 && out2 == in1 && in2 == out1
}

/// Bounded search for a certificate of nonweightedness with at most
/// `max_len` coalitions per side.
///
/// The X side ranges over multisets of minimal winning coalitions; the Y side
/// is assembled by backtracking over losing coalitions that exactly absorb the
/// X side's player counts. Finding nothing does not prove weightedness.
pub fn search_certificate(game: &SimpleGame, max_len: usize) -> Result<Option<TradingTransform>> {
    if max_len < 2 {
        return Err(Error::InvalidInput("max_len must be at least 2".into()));
    }
    let min_w = game.min_winning();
    for len in 2..=max_len {
        let mut picks = Vec::with_capacity(len);
        if let Some(t) = pick_x_side(game, min_w, len, 0, &mut picks) {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

fn pick_x_side(
    game: &SimpleGame,
    min_w: &[Coalition],
    len: usize,
    start: usize,
    picks: &mut Vec<Coalition>,
) -> Option<TradingTransform> {
    if picks.len() == len {
        let mut counts = [0u8; MAX_PLAYERS];
        for c in picks.iter() {
            for p in c.members() {
                counts[p] += 1;
            }
        }
        let mut ys = Vec::with_capacity(len);
        return fill_y_side(game, &mut counts, len, u64::MAX, &mut ys)
            .then(|| TradingTransform::new(picks.clone(), ys));
    }
    for i in start..min_w.len() {
        picks.push(min_w[i]);
        if let Some(t) = pick_x_side(game, min_w, len, i, picks) {
            return Some(t);
        }
        picks.pop();
    }
    None
}

/// Chooses `remaining` losing coalitions, non-increasing by bitmask, whose
/// occurrence counts equal `counts`.
fn fill_y_side(
    game: &SimpleGame,
    counts: &mut [u8; MAX_PLAYERS],
    remaining: usize,
    bound: u64,
    ys: &mut Vec<Coalition>,
) -> bool {
    if remaining == 0 {
        return counts.iter().all(|&c| c == 0);
    }
    let mut available = Coalition::EMPTY;
    let mut forced = Coalition::EMPTY;
    for (p, &c) in counts.iter().enumerate() {
        if c as usize > remaining {
            return false;
        }
        if c > 0 {
            available = available.with(p);
        }
        if c as usize == remaining {
            forced = forced.with(p);
        }
    }
    let optional = available - forced;
    for extra in optional.subsets() {
        let y = forced | extra;
        if y.bits() > bound || game.wins(y) {
            continue;
        }
        for p in y.members() {
            counts[p] -= 1;
        }
        ys.push(y);
        if fill_y_side(game, counts, remaining - 1, y.bits(), ys) {
            return true;
        }
        ys.pop();
        for p in y.members() {
            counts[p] += 1;
        }
    }
    false
}

/// Exhaustive search for a swap certificate over all pairs of winning
/// coalitions. Exponential; meant as an independent check on small games.
pub fn brute_force_swap_certificate(game: &SimpleGame) -> Result<Option<TradingTransform>> {
    let table = game.table()?;
    let all = game.players();
    let winning: Vec<Coalition> = all.subsets().filter(|&c| table.wins(c)).collect();
    for &a in &winning {
        for &b in &winning {
            for x in (a - b).members() {
                for y in (b - a).members() {
                    let a2 = a.without(x).with(y);
                    let b2 = b.without(y).with(x);
                    if !table.wins(a2) && !table.wins(b2) {
                        return Ok(Some(TradingTransform::new(vec![a, b], vec![a2, b2])));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn c(players: &[usize]) -> Coalition {
        Coalition::from_players(players.iter().copied())
    }

    fn swap_example() -> TradingTransform {
        TradingTransform::new(vec![c(&[0, 1]), c(&[2, 3])], vec![c(&[0, 2]), c(&[1, 3])])
    }

    #[test]
    fn balance_check() {
        assert!(is_trading_transform(&swap_example()).unwrap());
        let unbalanced = TradingTransform::new(vec![c(&[0]), c(&[0])], vec![c(&[0]), c(&[1])]);
        assert!(!is_trading_transform(&unbalanced).unwrap());
        let ragged = TradingTransform::new(vec![c(&[0])], vec![]);
        assert!(is_trading_transform(&ragged).is_err());
    }

    #[test]
    fn certificates_on_two_pair_game() {
        let g = SimpleGame::new(4, vec![c(&[0, 1]), c(&[2, 3])]).unwrap();
        let t = swap_example();
        assert!(is_certificate_of_nonweightedness(&g, &t).unwrap());
        assert!(is_certificate_of_incompleteness(&g, &t).unwrap());

        let three = TradingTransform::new(
            vec![c(&[0, 1]), c(&[2, 3]), c(&[0, 1])],
            vec![c(&[0, 2]), c(&[1, 3]), c(&[0, 1])],
        );
        assert!(!is_certificate_of_incompleteness(&g, &three).unwrap());

        let with_winner = TradingTransform::new(vec![c(&[0, 1]), c(&[2, 3])], vec![c(&[0, 1]), c(&[2, 3])]);
        assert!(!is_certificate_of_nonweightedness(&g, &with_winner).unwrap());
    }

    #[test]
    fn search_finds_swap_and_not_for_weighted() {
        let g = SimpleGame::new(4, vec![c(&[0, 1]), c(&[2, 3])]).unwrap();
        let t = search_certificate(&g, 2).unwrap().unwrap();
        assert_eq!(t.len(), 2);
        assert!(is_certificate_of_nonweightedness(&g, &t).unwrap());

        let h32 = catalog::k_out_of_n(3, 2).unwrap();
        assert_eq!(search_certificate(&h32, 4).unwrap(), None);
        assert!(search_certificate(&h32, 1).is_err());
    }

    #[test]
    fn brute_force_swap_on_complete_game_is_none() {
        let h = catalog::k_out_of_n(4, 2).unwrap();
        assert!(brute_force_swap_certificate(&h).unwrap().is_none());
        let g = SimpleGame::new(4, vec![c(&[0, 1]), c(&[2, 3])]).unwrap();
        assert!(brute_force_swap_certificate(&g).unwrap().is_some());
    }
}
