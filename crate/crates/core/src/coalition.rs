//! Coalitions as fixed-width player bitmasks.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

/// Maximum number of players a coalition can address.
pub const MAX_PLAYERS: usize = 64;

/// A set of players, bit `i` set when player `i` is a member.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coalition(u64);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub const fn from_bits(bits: u64) -> Self {
        Coalition(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The coalition `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_PLAYERS);
        if n == MAX_PLAYERS {
            Coalition(u64::MAX)
        } else {
            Coalition((1u64 << n) - 1)
        }
    }

    pub fn singleton(player: usize) -> Self {
        assert!(player < MAX_PLAYERS);
        Coalition(1u64 << player)
    }

    pub fn from_players<I: IntoIterator<Item = usize>>(players: I) -> Self {
        players.into_iter().fold(Coalition::EMPTY, |c, p| c.with(p))
    }

    pub fn contains(self, player: usize) -> bool {
        player < MAX_PLAYERS && self.0 >> player & 1 == 1
    }

    #[must_use]
    pub fn with(self, player: usize) -> Self {
        Coalition(self.0 | 1u64 << player)
    }

    #[must_use]
    pub fn without(self, player: usize) -> Self {
        Coalition(self.0 & !(1u64 << player))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Coalition) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement within `{0, .., n-1}`.
    #[must_use]
    pub fn complement(self, n: usize) -> Self {
        Coalition(!self.0 & Coalition::full(n).0)
    }

    /// Highest member index plus one, zero for the empty coalition.
    pub fn span(self) -> usize {
        (64 - self.0.leading_zeros()) as usize
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn members(self) -> Members {
        Members(self.0)
    }

    /// Every subset of `self`, starting with the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }

    /// Maps each member `i` to `map[i]`.
    pub fn map_players(self, map: &[usize]) -> Coalition {
        self.members().fold(Coalition::EMPTY, |acc, p| acc.with(map[p]))
    }

    /// Packs the members of `self` that lie in `support` into consecutive
    /// indices, ordered as in `support`.
    pub fn compress(self, support: Coalition) -> Coalition {
        support
            .members()
            .enumerate()
            .filter(|&(_, p)| self.contains(p))
            .fold(Coalition::EMPTY, |acc, (i, _)| acc.with(i))
    }

    /// Inverse of [`Coalition::compress`]: spreads bit `i` onto the `i`-th
    /// member of `support`.
    pub fn expand(self, support: Coalition) -> Coalition {
        support
            .members()
            .enumerate()
            .filter(|&(i, _)| self.contains(i))
            .fold(Coalition::EMPTY, |acc, (_, p)| acc.with(p))
    }
}

impl BitOr for Coalition {
    type Output = Coalition;
    fn bitor(self, rhs: Coalition) -> Coalition {
        Coalition(self.0 | rhs.0)
    }
}

impl BitAnd for Coalition {
    type Output = Coalition;
    fn bitand(self, rhs: Coalition) -> Coalition {
        Coalition(self.0 & rhs.0)
    }
}

impl Sub for Coalition {
    type Output = Coalition;
    fn sub(self, rhs: Coalition) -> Coalition {
        Coalition(self.0 & !rhs.0)
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.members().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for Coalition {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Coalition::from_players(iter)
    }
}

pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

pub struct Subsets {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = Coalition;

    fn next(&mut self) -> Option<Coalition> {
        let cur = self.next?;
        let succ = cur.wrapping_sub(self.universe) & self.universe;
        self.next = (succ != 0).then_some(succ);
        Some(Coalition(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_powerset() {
        let c = Coalition::from_players([1, 3, 4]);
        let subs: Vec<_> = c.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset_of(c)));
        assert_eq!(Coalition::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn compress_expand_roundtrip() {
        let support = Coalition::from_players([2, 5, 7]);
        let x = Coalition::from_players([5, 7, 9]);
        let packed = x.compress(support);
        assert_eq!(packed, Coalition::from_players([1, 2]));
        assert_eq!(packed.expand(support), x & support);
    }

    #[test]
    fn full_and_complement() {
        assert_eq!(Coalition::full(64).len(), 64);
        let c = Coalition::from_players([0, 2]);
        assert_eq!(c.complement(4), Coalition::from_players([1, 3]));
        assert_eq!(c.to_string(), "{0,2}");
    }
}
