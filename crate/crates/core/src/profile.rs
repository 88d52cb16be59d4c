//! Multiset view of complete games: desirability levels and shift-minimal
//! winning profiles.

use itertools::Itertools;

use crate::coalition::Coalition;
use crate::desirability::{desirability, incompleteness_certificate};
use crate::error::{Error, Result};
use crate::game::SimpleGame;

/// Level sizes `n₁..n_m` (most desirable first) and the shift-minimal winning
/// profiles, each a count vector `(ℓ₁..ℓ_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompleteProfile {
    pub level_sizes: Vec<usize>,
    pub shift_min: Vec<Vec<usize>>,
}

/// A complete game's profile together with the players forming each level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leveled {
    pub profile: CompleteProfile,
    pub levels: Vec<Vec<usize>>,
}

impl Leveled {
    pub fn level_of(&self, player: usize) -> Option<usize> {
        self.levels.iter().position(|l| l.contains(&player))
    }

    /// Permutation sending the players of level 1, then level 2, ... onto
    /// consecutive indices, i.e. the layout used by [`from_profile`].
    pub fn layout_permutation(&self) -> Vec<usize> {
        let n: usize = self.levels.iter().map(Vec::len).sum();
        let mut perm = vec![0; n];
        for (new, &old) in self.levels.iter().flatten().enumerate() {
            perm[old] = new;
        }
        perm
    }
}

impl CompleteProfile {
    pub fn n_players(&self) -> usize {
        self.level_sizes.iter().sum()
    }

    pub fn n_levels(&self) -> usize {
        self.level_sizes.len()
    }

    fn validate(&self) -> Result<()> {
        if self.level_sizes.is_empty() || self.level_sizes.contains(&0) {
            return Err(Error::InvalidInput("level sizes must be positive".into()));
        }
        if self.shift_min.is_empty() {
            return Err(Error::InvalidInput("no shift-minimal profiles".into()));
        }
        for p in &self.shift_min {
            if p.len() != self.n_levels() {
                return Err(Error::InvalidInput(format!(
                    "profile {p:?} does not have {} entries",
                    self.n_levels()
                )));
            }
            if p.iter().zip(&self.level_sizes).any(|(l, n)| l > n) {
                return Err(Error::InvalidInput(format!("profile {p:?} exceeds level sizes")));
            }
        }
        for (i, a) in self.shift_min.iter().enumerate() {
            for b in &self.shift_min[i + 1..] {
                if dominates(a, b) || dominates(b, a) {
                    return Err(Error::InvalidInput(format!("profiles {a:?} and {b:?} are comparable")));
                }
            }
        }
        Ok(())
    }
}

/// `a` is obtainable from `b` by adding players and moving players to more
/// desirable levels: every prefix sum of `a` is at least that of `b`.
pub fn dominates(a: &[usize], b: &[usize]) -> bool {
    let (mut sa, mut sb) = (0, 0);
    a.iter().zip(b).all(|(x, y)| {
        sa += x;
        sb += y;
        sa >= sb
    })
}

/// Counts of `x`'s members per level.
pub fn profile_of(levels: &[Vec<usize>], x: Coalition) -> Vec<usize> {
    levels
        .iter()
        .map(|l| l.iter().filter(|&&p| x.contains(p)).count())
        .collect()
}

/// The first `counts[i]` players of each level.
fn representative(levels: &[Vec<usize>], counts: &[usize]) -> Coalition {
    levels
        .iter()
        .zip(counts)
        .flat_map(|(l, &c)| l[..c].iter().copied())
        .collect()
}

/// Levels and profile of a complete game.
pub fn leveled(game: &SimpleGame) -> Result<Leveled> {
    let Some(levels) = desirability(game).levels() else {
        let cert = incompleteness_certificate(game).expect("incomplete game has a certificate");
        return Err(Error::NotComplete(Box::new(cert)));
    };
    let sizes: Vec<usize> = levels.iter().map(Vec::len).collect();
    let mut candidates: Vec<Vec<usize>> = game.min_winning().iter().map(|&m| profile_of(&levels, m)).collect();
    candidates.sort();
    candidates.dedup();
    let shift_min: Vec<Vec<usize>> = candidates
        .into_iter()
        .filter(|p| !shifts(p, &sizes).any(|s| game.wins(representative(&levels, &s))))
        .collect();
    Ok(Leveled {
        profile: CompleteProfile {
            level_sizes: sizes,
            shift_min,
        },
        levels,
    })
}

pub fn to_profile(game: &SimpleGame) -> Result<CompleteProfile> {
    leveled(game).map(|l| l.profile)
}

/// Profiles reachable from `p` by one shift to a strictly less desirable level.
fn shifts<'a>(p: &'a [usize], sizes: &'a [usize]) -> impl Iterator<Item = Vec<usize>> + 'a {
    (0..p.len()).flat_map(move |i| {
        (i + 1..p.len())
            .filter(move |&j| p[i] > 0 && p[j] < sizes[j])
            .map(move |j| {
                let mut s = p.to_vec();
                s[i] -= 1;
                s[j] += 1;
                s
            })
    })
}

/// Every profile over the given level sizes.
fn all_profiles(sizes: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    sizes.iter().map(|&n| 0..=n).multi_cartesian_product()
}

/// The game on `Σ nᵢ` players (level 1 first) whose winning coalitions are
/// those whose profile satisfies `wins`. The predicate must be monotone in
/// each count.
pub fn game_from_counts(sizes: &[usize], wins: impl Fn(&[usize]) -> bool) -> Result<SimpleGame> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::InvalidInput("level sizes must be positive".into()));
    }
    let n: usize = sizes.iter().sum();
    if n > crate::coalition::MAX_PLAYERS {
        return Err(Error::PlayerCount(n));
    }
    let minimal: Vec<Vec<usize>> = all_profiles(sizes)
        .filter(|p| {
            wins(p)
                && (0..p.len()).all(|i| {
                    p[i] == 0 || {
                        let mut q = p.clone();
                        q[i] -= 1;
                        !wins(&q)
                    }
                })
        })
        .collect();
    if minimal.is_empty() {
        return Err(Error::Degenerate("no winning profile".into()));
    }
    let levels = consecutive_levels(sizes);
    let mut sets = Vec::new();
    for p in &minimal {
        expand_profile(&levels, p, &mut sets);
    }
    SimpleGame::new(n, sets)
}

/// Level player lists `[0..n₁), [n₁..n₁+n₂), ...`.
pub fn consecutive_levels(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let l = (start..start + s).collect();
            start += s;
            l
        })
        .collect()
}

fn expand_profile(levels: &[Vec<usize>], p: &[usize], out: &mut Vec<Coalition>) {
    let per_level: Vec<Vec<Coalition>> = levels
        .iter()
        .zip(p)
        .map(|(l, &c)| l.iter().copied().combinations(c).map(Coalition::from_players).collect())
        .collect();
    for parts in per_level.iter().multi_cartesian_product() {
        out.push(parts.into_iter().fold(Coalition::EMPTY, |a, &b| a | b));
    }
}

/// Expands a profile into a game: a coalition wins iff its profile dominates
/// some shift-minimal profile.
pub fn from_profile(profile: &CompleteProfile) -> Result<SimpleGame> {
    profile.validate()?;
    game_from_counts(&profile.level_sizes, |p| {
        profile.shift_min.iter().any(|s| dominates(p, s))
    })
}

/// Shift-minimal profiles of the game described by `profile`, recomputed from
/// its expansion.
pub fn shift_minimal(profile: &CompleteProfile) -> Result<Vec<Vec<usize>>> {
    let game = from_profile(profile)?;
    let levels = consecutive_levels(&profile.level_sizes);
    let mut candidates: Vec<Vec<usize>> = game.min_winning().iter().map(|&m| profile_of(&levels, m)).collect();
    candidates.sort();
    candidates.dedup();
    Ok(candidates
        .into_iter()
        .filter(|p| !shifts(p, &profile.level_sizes).any(|s| game.wins(representative(&levels, &s))))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn c(players: &[usize]) -> Coalition {
        Coalition::from_players(players.iter().copied())
    }

    #[test]
    fn dominance_is_prefix_order() {
        assert!(dominates(&[1, 1], &[0, 2]));
        assert!(!dominates(&[1, 0], &[0, 2]));
        assert!(dominates(&[2, 0], &[1, 1]));
    }

    #[test]
    fn small_game_profile() {
        let g = SimpleGame::new(3, vec![c(&[0]), c(&[1, 2])]).unwrap();
        let l = leveled(&g).unwrap();
        assert_eq!(l.levels, vec![vec![0], vec![1, 2]]);
        assert_eq!(l.profile.level_sizes, vec![1, 2]);
        assert_eq!(l.profile.shift_min, vec![vec![0, 2], vec![1, 0]]);
        assert_eq!(from_profile(&l.profile).unwrap(), g);
    }

    #[test]
    fn b2_profile_has_two_forms() {
        let g = catalog::hier_disjunctive(&[2, 3], &[2, 3]).unwrap();
        let p = to_profile(&g).unwrap();
        assert_eq!(p.level_sizes, vec![2, 3]);
        assert_eq!(p.shift_min, vec![vec![0, 3], vec![2, 0]]);
        assert_eq!(shift_minimal(&p).unwrap(), p.shift_min);
    }

    #[test]
    fn incomplete_game_is_rejected_with_certificate() {
        let g = SimpleGame::new(4, vec![c(&[0, 1]), c(&[2, 3])]).unwrap();
        match to_profile(&g) {
            Err(Error::NotComplete(t)) => {
                assert!(crate::trade::is_certificate_of_incompleteness(&g, &t).unwrap())
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn comparable_profiles_rejected() {
        let p = CompleteProfile {
            level_sizes: vec![2, 2],
            shift_min: vec![vec![1, 1], vec![0, 2]],
        };
        assert!(from_profile(&p).is_err());
    }
}
