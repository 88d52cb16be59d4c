//! Simple games stored by their minimal winning coalitions.

use std::collections::HashSet;

use crate::coalition::{Coalition, MAX_PLAYERS};
use crate::error::{Error, Result};

/// Largest player count for which a full winning table (2^n bits) is built.
pub const TABLE_LIMIT: usize = 26;

/// A monotone simple game: `n` players and the antichain of minimal winning
/// coalitions. Winning coalitions are the upward closure of the antichain.
///
/// The antichain is kept sorted by bitmask so that structurally equal games
/// compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGame {
    n: usize,
    min_winning: Vec<Coalition>,
}

/// A game obtained by deleting players, together with the original index of
/// each remaining player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restricted {
    pub game: SimpleGame,
    pub players: Vec<usize>,
}

impl SimpleGame {
    /// Builds a game from an antichain, rejecting inputs that are not one.
    pub fn new(n: usize, min_winning: Vec<Coalition>) -> Result<Self> {
        check_player_count(n)?;
        if min_winning.is_empty() {
            return Err(Error::NotAntichain("no winning coalitions".into()));
        }
        let full = Coalition::full(n);
        let mut sets = min_winning;
        for c in &sets {
            if !c.is_subset_of(full) {
                let player = (*c - full).first().unwrap_or(0);
                return Err(Error::PlayerOutOfRange { player, n });
            }
        }
        sets.sort();
        for (i, a) in sets.iter().enumerate() {
            for b in &sets[i + 1..] {
                if a.is_subset_of(*b) {
                    return Err(Error::NotAntichain(format!("{a} is contained in {b}")));
                }
            }
        }
        Ok(SimpleGame { n, min_winning: sets })
    }

    /// Builds a game from any family of winning coalitions by keeping only the
    /// inclusion-minimal ones.
    pub fn from_winning_sets(n: usize, sets: impl IntoIterator<Item = Coalition>) -> Result<Self> {
        check_player_count(n)?;
        let mut sets: Vec<Coalition> = sets.into_iter().collect();
        sets.sort_by_key(|c| (c.len(), c.bits()));
        sets.dedup();
        let mut kept: Vec<Coalition> = Vec::new();
        for c in sets {
            if !kept.iter().any(|k| k.is_subset_of(c)) {
                kept.push(c);
            }
        }
        if kept.is_empty() {
            return Err(Error::Degenerate("no winning coalitions".into()));
        }
        SimpleGame::new(n, kept)
    }

    /// Builds a game from a monotone winning predicate by evaluating it on
    /// every coalition.
    pub fn from_predicate(n: usize, mut wins: impl FnMut(Coalition) -> bool) -> Result<Self> {
        check_player_count(n)?;
        if n > TABLE_LIMIT {
            return Err(Error::TooLarge { n, limit: TABLE_LIMIT });
        }
        let mut table = BitTable::new(n);
        for m in 0..1u64 << n {
            if wins(Coalition::from_bits(m)) {
                table.set(m);
            }
        }
        let min: Vec<Coalition> = (0..1u64 << n)
            .filter(|&m| table.get(m) && Coalition::from_bits(m).members().all(|p| !table.get(m & !(1 << p))))
            .map(Coalition::from_bits)
            .collect();
        if min.is_empty() {
            return Err(Error::Degenerate("no winning coalitions".into()));
        }
        SimpleGame::new(n, min)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn players(&self) -> Coalition {
        Coalition::full(self.n)
    }

    pub fn min_winning(&self) -> &[Coalition] {
        &self.min_winning
    }

    /// Membership test with a range check on `x`.
    pub fn is_winning(&self, x: Coalition) -> Result<bool> {
        self.check_coalition(x)?;
        Ok(self.wins(x))
    }

    /// Unchecked membership test: true iff some minimal winning coalition is
    /// contained in `x`.
    pub fn wins(&self, x: Coalition) -> bool {
        self.min_winning.iter().any(|m| m.is_subset_of(x))
    }

    pub fn check_coalition(&self, x: Coalition) -> Result<()> {
        if x.is_subset_of(self.players()) {
            Ok(())
        } else {
            Err(Error::PlayerOutOfRange {
                player: (x - self.players()).first().unwrap_or(0),
                n: self.n,
            })
        }
    }

    pub fn check_player(&self, p: usize) -> Result<()> {
        if p < self.n {
            Ok(())
        } else {
            Err(Error::PlayerOutOfRange { player: p, n: self.n })
        }
    }

    /// True when the empty coalition wins, i.e. every coalition wins.
    pub fn is_trivially_full(&self) -> bool {
        self.min_winning[0].is_empty()
    }

    pub fn min_winning_size(&self) -> usize {
        self.min_winning.iter().map(|c| c.len()).min().unwrap_or(0)
    }

    /// Players in no minimal winning coalition.
    pub fn dummies(&self) -> Coalition {
        let used = self.min_winning.iter().fold(Coalition::EMPTY, |acc, &c| acc | c);
        self.players() - used
    }

    /// Players in every minimal winning coalition.
    pub fn vetoers(&self) -> Coalition {
        self.min_winning.iter().fold(self.players(), |acc, &c| acc & c)
    }

    /// Players whose singleton coalition wins.
    pub fn passers(&self) -> Coalition {
        self.min_winning
            .iter()
            .filter(|c| c.len() == 1)
            .fold(Coalition::EMPTY, |acc, &c| acc | c)
    }

    /// Losing coalitions that become winning when any outside player joins.
    ///
    /// Computed as complements of the minimal transversals of the minimal
    /// winning family, which avoids touching all 2^n coalitions.
    pub fn maximal_losing(&self) -> Vec<Coalition> {
        let mut transversals = vec![Coalition::EMPTY];
        for &edge in &self.min_winning {
            let mut next: Vec<Coalition> = Vec::new();
            for &t in &transversals {
                if t.intersects(edge) {
                    next.push(t);
                } else {
                    next.extend(edge.members().map(|p| t.with(p)));
                }
            }
            transversals = minimize(next);
        }
        let mut out: Vec<Coalition> = transversals.into_iter().map(|t| t.complement(self.n)).collect();
        out.sort();
        out
    }

    /// Game on `A^c` whose winning coalitions are the winning coalitions of
    /// `self` avoiding `a`.
    pub fn subgame(&self, a: Coalition) -> Result<Restricted> {
        self.check_coalition(a)?;
        let support = a.complement(self.n);
        let players: Vec<usize> = support.members().collect();
        if players.is_empty() {
            return Err(Error::Degenerate("subgame on no players".into()));
        }
        let sets: Vec<Coalition> = self
            .min_winning
            .iter()
            .filter(|m| !m.intersects(a))
            .map(|m| m.compress(support))
            .collect();
        if sets.is_empty() {
            return Err(Error::Degenerate(format!(
                "subgame avoiding {a} has no winning coalitions"
            )));
        }
        Ok(Restricted {
            game: SimpleGame::new(players.len(), sets)?,
            players,
        })
    }

    /// Game on `A^c` whose winning coalitions are those `X` with `X ∪ A`
    /// winning in `self`.
    pub fn reduced_game(&self, a: Coalition) -> Result<Restricted> {
        self.check_coalition(a)?;
        let support = a.complement(self.n);
        let players: Vec<usize> = support.members().collect();
        if players.is_empty() {
            return Err(Error::Degenerate("reduced game on no players".into()));
        }
        let sets = self.min_winning.iter().map(|m| (*m - a).compress(support));
        Ok(Restricted {
            game: SimpleGame::from_winning_sets(players.len(), sets)?,
            players,
        })
    }

    /// Relabels players: player `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<SimpleGame> {
        if perm.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "permutation of length {} for {} players",
                perm.len(),
                self.n
            )));
        }
        let seen: HashSet<usize> = perm.iter().copied().collect();
        if seen.len() != self.n || perm.iter().any(|&p| p >= self.n) {
            return Err(Error::InvalidInput("not a permutation".into()));
        }
        SimpleGame::new(self.n, self.min_winning.iter().map(|c| c.map_players(perm)).collect())
    }

    /// Precomputes the winning predicate for fast bulk queries.
    pub fn table(&self) -> Result<WinningTable> {
        WinningTable::new(self)
    }

    /// Number of minimal winning coalitions containing `p`, bucketed by
    /// coalition size. Invariant under isomorphism.
    pub(crate) fn player_signature(&self, p: usize) -> Vec<usize> {
        let mut sig = vec![0; self.n + 1];
        for c in &self.min_winning {
            if c.contains(p) {
                sig[c.len()] += 1;
            }
        }
        sig
    }
}

impl std::fmt::Debug for SimpleGame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SimpleGame(n={}, min_winning=[", self.n)?;
        for (i, c) in self.min_winning.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "])")
    }
}

fn check_player_count(n: usize) -> Result<()> {
    if (1..=MAX_PLAYERS).contains(&n) {
        Ok(())
    } else {
        Err(Error::PlayerCount(n))
    }
}

/// Keeps the inclusion-minimal members of a family.
pub(crate) fn minimize(mut sets: Vec<Coalition>) -> Vec<Coalition> {
    sets.sort_by_key(|c| (c.len(), c.bits()));
    sets.dedup();
    let mut kept: Vec<Coalition> = Vec::with_capacity(sets.len());
    for c in sets {
        if !kept.iter().any(|k| k.is_subset_of(c)) {
            kept.push(c);
        }
    }
    kept
}

/// Packed bitset over all 2^n coalitions.
#[derive(Clone)]
pub(crate) struct BitTable {
    words: Vec<u64>,
}

impl BitTable {
    pub(crate) fn new(n: usize) -> Self {
        let bits = 1usize << n;
        BitTable {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    #[inline]
    pub(crate) fn get(&self, m: u64) -> bool {
        self.words[(m >> 6) as usize] >> (m & 63) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, m: u64) {
        self.words[(m >> 6) as usize] |= 1 << (m & 63);
    }
}

/// The winning predicate of a game tabulated over all coalitions.
#[derive(Clone)]
pub struct WinningTable {
    n: usize,
    bits: BitTable,
}

impl WinningTable {
    pub fn new(game: &SimpleGame) -> Result<Self> {
        let n = game.n();
        if n > TABLE_LIMIT {
            return Err(Error::TooLarge { n, limit: TABLE_LIMIT });
        }
        let mut bits = BitTable::new(n);
        for c in game.min_winning() {
            bits.set(c.bits());
        }
        for p in 0..n {
            let bit = 1u64 << p;
            for m in 0..1u64 << n {
                if m & bit != 0 && !bits.get(m) && bits.get(m ^ bit) {
                    bits.set(m);
                }
            }
        }
        Ok(WinningTable { n, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn wins(&self, x: Coalition) -> bool {
        self.bits.get(x.bits())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn c(players: &[usize]) -> Coalition {
        Coalition::from_players(players.iter().copied())
    }

    #[test]
    fn rejects_non_antichain() {
        let err = SimpleGame::new(3, vec![c(&[0]), c(&[0, 1])]).unwrap_err();
        assert!(matches!(err, Error::NotAntichain(_)));
        assert!(SimpleGame::new(3, vec![]).is_err());
        assert!(matches!(
            SimpleGame::new(2, vec![c(&[2])]),
            Err(Error::PlayerOutOfRange { player: 2, n: 2 })
        ));
        assert!(matches!(
            SimpleGame::new(65, vec![c(&[0])]),
            Err(Error::PlayerCount(65))
        ));
    }

    #[test]
    fn winning_membership() {
        let h32 = catalog::k_out_of_n(3, 2).unwrap();
        assert!(h32.is_winning(c(&[0, 2])).unwrap());
        assert!(!h32.is_winning(c(&[1])).unwrap());
        assert!(h32.is_winning(h32.players()).unwrap());
        assert!(h32.is_winning(c(&[3])).is_err());
    }

    #[test]
    fn special_players() {
        let u3 = catalog::unanimity(3).unwrap();
        assert_eq!(u3.vetoers(), u3.players());
        assert!(u3.passers().is_empty());
        assert!(u3.dummies().is_empty());

        let a3 = catalog::anti_unanimity(3).unwrap();
        assert_eq!(a3.passers(), a3.players());
        assert!(a3.vetoers().is_empty());

        let oligarchy = SimpleGame::new(3, vec![c(&[0, 1])]).unwrap();
        assert_eq!(oligarchy.dummies(), c(&[2]));
        assert_eq!(oligarchy.vetoers(), c(&[0, 1]));
    }

    #[test]
    fn maximal_losing_small() {
        let h32 = catalog::k_out_of_n(3, 2).unwrap();
        assert_eq!(h32.maximal_losing(), vec![c(&[0]), c(&[1]), c(&[2])]);
        let u2 = catalog::unanimity(2).unwrap();
        assert_eq!(u2.maximal_losing(), vec![c(&[0]), c(&[1])]);
        let full = SimpleGame::new(2, vec![Coalition::EMPTY]).unwrap();
        assert!(full.maximal_losing().is_empty());
    }

    #[test]
    fn maximal_losing_matches_brute_force() {
        let g = SimpleGame::new(5, vec![c(&[0, 1]), c(&[1, 2, 3]), c(&[3, 4]), c(&[0, 4])]).unwrap();
        let mut brute: Vec<Coalition> = (0..32u64)
            .map(Coalition::from_bits)
            .filter(|&x| !g.wins(x) && (0..5).filter(|&p| !x.contains(p)).all(|p| g.wins(x.with(p))))
            .collect();
        brute.sort();
        assert_eq!(g.maximal_losing(), brute);
    }

    #[test]
    fn subgame_and_reduced() {
        let h32 = catalog::k_out_of_n(3, 2).unwrap();
        let sg = h32.subgame(Coalition::EMPTY).unwrap();
        assert_eq!(sg.game, h32);
        let rg = h32.reduced_game(Coalition::EMPTY).unwrap();
        assert_eq!(rg.game, h32);

        let u2 = catalog::unanimity(2).unwrap();
        assert!(matches!(u2.subgame(c(&[0])), Err(Error::Degenerate(_))));

        let rg = h32.reduced_game(c(&[1])).unwrap();
        assert_eq!(rg.players, vec![0, 2]);
        assert_eq!(rg.game, catalog::anti_unanimity(2).unwrap());
    }

    #[test]
    fn table_agrees_with_scan() {
        let g = SimpleGame::new(5, vec![c(&[0, 1]), c(&[1, 2, 3]), c(&[3, 4])]).unwrap();
        let t = g.table().unwrap();
        for m in 0..32u64 {
            let x = Coalition::from_bits(m);
            assert_eq!(t.wins(x), g.wins(x));
        }
    }
}
