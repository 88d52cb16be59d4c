//! Composition `G ∘_g H` and decomposition search.
//!
//! Composite players are indexed as the outer players other than the pivot,
//! in their original order, followed by the inner players.

use std::collections::HashSet;

use crate::coalition::{Coalition, MAX_PLAYERS};
use crate::error::{Error, Result};
use crate::game::{Restricted, SimpleGame, TABLE_LIMIT};

/// Substitution of `inner` for player `pivot` of `outer`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompositionSpec {
    pub outer: SimpleGame,
    pub pivot: usize,
    pub inner: SimpleGame,
}

impl CompositionSpec {
    pub fn new(outer: SimpleGame, pivot: usize, inner: SimpleGame) -> Result<Self> {
        outer.check_player(pivot)?;
        let n = outer.n() + inner.n() - 1;
        if n > MAX_PLAYERS {
            return Err(Error::PlayerCount(n));
        }
        Ok(CompositionSpec { outer, pivot, inner })
    }

    pub fn n(&self) -> usize {
        self.outer.n() + self.inner.n() - 1
    }

    /// Composite index of each outer player; the pivot maps to `None`.
    pub fn outer_map(&self) -> Vec<Option<usize>> {
        (0..self.outer.n())
            .map(|p| match p.cmp(&self.pivot) {
                std::cmp::Ordering::Less => Some(p),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(p - 1),
            })
            .collect()
    }

    /// Composite index of each inner player.
    pub fn inner_map(&self) -> Vec<usize> {
        (0..self.inner.n()).map(|p| self.outer.n() - 1 + p).collect()
    }

    /// Outer coalition (avoiding the pivot) in composite coordinates.
    pub fn embed_outer(&self, x: Coalition) -> Coalition {
        let map = self.outer_map();
        x.members().filter_map(|p| map[p]).collect()
    }

    pub fn embed_inner(&self, x: Coalition) -> Coalition {
        Coalition::from_bits(x.bits() << (self.outer.n() - 1))
    }

    /// Splits a composite coalition into its outer part (pivot excluded) and
    /// inner part.
    pub fn split(&self, x: Coalition) -> (Coalition, Coalition) {
        let k = self.outer.n() - 1;
        let low = x.bits() & Coalition::full(k).bits();
        let outer = (0..k)
            .filter(|&i| low >> i & 1 == 1)
            .map(|i| if i < self.pivot { i } else { i + 1 })
            .collect();
        (outer, Coalition::from_bits(x.bits() >> k))
    }

    /// Winning predicate straight from the definition:
    /// `X_G ∈ W_G`, or `X_G ∪ {g} ∈ W_G` and `X_H ∈ W_H`.
    pub fn is_winning(&self, x: Coalition) -> bool {
        let (xg, xh) = self.split(x);
        self.outer.wins(xg) || (self.outer.wins(xg.with(self.pivot)) && self.inner.wins(xh))
    }
}

/// The minimal winning coalitions of `G ∘_g H`: those of `G` avoiding `g`,
/// and `(X \ {g}) ∪ Y` for minimal winning `X ∋ g` of `G` and `Y` of `H`.
pub fn compose(spec: &CompositionSpec) -> Result<SimpleGame> {
    let mut sets = Vec::new();
    for &x in spec.outer.min_winning() {
        if x.contains(spec.pivot) {
            let base = spec.embed_outer(x.without(spec.pivot));
            sets.extend(spec.inner.min_winning().iter().map(|&y| base | spec.embed_inner(y)));
        } else {
            sets.push(spec.embed_outer(x));
        }
    }
    SimpleGame::from_winning_sets(spec.n(), sets)
}

/// Composite game evaluated coalition by coalition from the definition.
pub fn compose_by_definition(spec: &CompositionSpec) -> Result<SimpleGame> {
    SimpleGame::from_predicate(spec.n(), |x| spec.is_winning(x))
}

/// `X ∪ {g}` wins while `g ∉ X`.
pub fn g_winning(game: &SimpleGame, g: usize, x: Coalition) -> Result<bool> {
    game.check_player(g)?;
    game.check_coalition(x)?;
    if x.contains(g) {
        return Err(Error::InvalidInput(format!("pivot {g} belongs to {x}")));
    }
    Ok(game.wins(x.with(g)))
}

/// A decomposition of a game with inner support `support`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub support: Coalition,
    /// Outer game on `supportᶜ ∪ {g}` with `g` as its last player.
    pub spec: CompositionSpec,
    /// Original player of each composite index.
    pub players: Vec<usize>,
}

impl Decomposition {
    /// Pivot index in the outer game.
    pub fn pivot(&self) -> usize {
        self.spec.pivot
    }
}

/// Every decomposition `G ≅ G₁ ∘_g G₂` with `2 ≤ |G₂| ≤ n − 1` in which the
/// pivot is not a dummy, keyed by the inner support.
///
/// A support `B` works iff the minimal winning coalitions meeting `B` form
/// the product `{M \ B} × {M ∩ B}`; the candidate factors are then rebuilt and
/// checked by composing them again.
pub fn find_decompositions(game: &SimpleGame) -> Result<Vec<Decomposition>> {
    let n = game.n();
    if n > TABLE_LIMIT {
        return Err(Error::TooLarge { n, limit: TABLE_LIMIT });
    }
    let mut out = Vec::new();
    for bits in 0..1u64 << n {
        let b = Coalition::from_bits(bits);
        if b.len() < 2 || b.len() > n - 1 {
            continue;
        }
        if let Some(d) = try_support(game, b)? {
            out.push(d);
        }
    }
    Ok(out)
}

pub fn is_indecomposable(game: &SimpleGame) -> Result<bool> {
    Ok(find_decompositions(game)?.is_empty())
}

/// The decomposition with inner support `b`, if there is one.
pub fn try_support(game: &SimpleGame, b: Coalition) -> Result<Option<Decomposition>> {
    let n = game.n();
    let rest = b.complement(n);
    let mut outside = HashSet::new();
    let mut inside = HashSet::new();
    let mut meeting = 0usize;
    let mut avoiding = Vec::new();
    for &m in game.min_winning() {
        if m.intersects(b) {
            meeting += 1;
            outside.insert(m - b);
            inside.insert(m & b);
        } else {
            avoiding.push(m);
        }
    }
    if meeting == 0 || outside.len() * inside.len() != meeting {
        return Ok(None);
    }

    let k = rest.len();
    let g = k;
    let mut outer_sets: Vec<Coalition> = avoiding.iter().map(|m| m.compress(rest)).collect();
    outer_sets.extend(outside.iter().map(|t| t.compress(rest).with(g)));
    let inner_sets: Vec<Coalition> = inside.iter().map(|y| y.compress(b)).collect();
    let outer = SimpleGame::from_winning_sets(k + 1, outer_sets)?;
    let inner = SimpleGame::from_winning_sets(b.len(), inner_sets)?;
    let spec = CompositionSpec::new(outer, g, inner)?;
    let players: Vec<usize> = rest.members().chain(b.members()).collect();

    let mut inverse = vec![0; n];
    for (i, &p) in players.iter().enumerate() {
        inverse[p] = i;
    }
    let relabeled = game.permuted(&inverse)?;
    if compose(&spec)? != relabeled {
        return Ok(None);
    }
    Ok(Some(Decomposition {
        support: b,
        spec,
        players,
    }))
}

/// Result of peeling vetoers or passers: `count` players and what remains.
/// `residual` is `None` when every player was peeled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stripped {
    pub count: usize,
    pub residual: Option<Restricted>,
}

/// `G ≅ U_{m+1} ∘_u G'` with `G'` the reduced game over the `m` vetoers.
pub fn strip_vetoers(game: &SimpleGame) -> Result<Option<Stripped>> {
    let v = game.vetoers();
    if v.is_empty() || game.is_trivially_full() {
        return Ok(None);
    }
    let residual = if v == game.players() {
        None
    } else {
        Some(game.reduced_game(v)?)
    };
    Ok(Some(Stripped {
        count: v.len(),
        residual,
    }))
}

/// `G ≅ A_{m+1} ∘_a G'` with `G'` the subgame avoiding the `m` passers.
pub fn strip_passers(game: &SimpleGame) -> Result<Option<Stripped>> {
    let p = game.passers();
    if p.is_empty() {
        return Ok(None);
    }
    let residual = match game.subgame(p) {
        Ok(r) => Some(r),
        Err(Error::Degenerate(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(Some(Stripped {
        count: p.len(),
        residual,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::isomorphism::isomorphic;

    fn c(players: &[usize]) -> Coalition {
        Coalition::from_players(players.iter().copied())
    }

    #[test]
    fn unanimity_and_anti_unanimity_laws() {
        let u2 = catalog::unanimity(2).unwrap();
        let a2 = catalog::anti_unanimity(2).unwrap();
        let uu = compose(&CompositionSpec::new(u2.clone(), 0, u2).unwrap()).unwrap();
        assert_eq!(uu, catalog::unanimity(3).unwrap());
        let aa = compose(&CompositionSpec::new(a2.clone(), 1, a2).unwrap()).unwrap();
        assert_eq!(aa, catalog::anti_unanimity(3).unwrap());
    }

    #[test]
    fn singleton_factors_are_identities() {
        let g = SimpleGame::new(3, vec![c(&[0]), c(&[1, 2])]).unwrap();
        let one = catalog::unanimity(1).unwrap();
        let right = compose(&CompositionSpec::new(g.clone(), 1, one.clone()).unwrap()).unwrap();
        assert!(isomorphic(&right, &g).is_some());
        let left = compose(&CompositionSpec::new(one, 0, g.clone()).unwrap()).unwrap();
        assert_eq!(left, g);
    }

    #[test]
    fn formula_matches_definition() {
        let g = SimpleGame::new(3, vec![c(&[0, 1]), c(&[1, 2])]).unwrap();
        let h = SimpleGame::new(3, vec![c(&[0]), c(&[1, 2])]).unwrap();
        for pivot in 0..3 {
            let spec = CompositionSpec::new(g.clone(), pivot, h.clone()).unwrap();
            assert_eq!(compose(&spec).unwrap(), compose_by_definition(&spec).unwrap());
        }
    }

    #[test]
    fn g_winning_checks() {
        let u2 = catalog::unanimity(2).unwrap();
        assert!(!g_winning(&u2, 0, Coalition::EMPTY).unwrap());
        assert!(g_winning(&u2, 0, c(&[1])).unwrap());
        assert!(g_winning(&u2, 0, c(&[0])).is_err());
    }

    #[test]
    fn k_out_of_n_has_no_decompositions() {
        for (n, k) in [(3, 2), (4, 2), (4, 3), (5, 3)] {
            assert!(is_indecomposable(&catalog::k_out_of_n(n, k).unwrap()).unwrap());
        }
    }

    #[test]
    fn unanimity_decomposes_over_every_pair() {
        let u3 = catalog::unanimity(3).unwrap();
        let ds = find_decompositions(&u3).unwrap();
        assert_eq!(ds.len(), 3);
        for d in ds {
            assert_eq!(d.spec.inner, catalog::unanimity(2).unwrap());
            assert_eq!(d.spec.outer, catalog::unanimity(2).unwrap());
        }
    }

    #[test]
    fn strip_round_trips() {
        let a3 = catalog::anti_unanimity(3).unwrap();
        let s = strip_passers(&a3).unwrap().unwrap();
        assert_eq!(s.count, 3);
        assert!(s.residual.is_none());

        let h32 = catalog::k_out_of_n(3, 2).unwrap();
        assert!(strip_passers(&h32).unwrap().is_none());
        assert!(strip_vetoers(&h32).unwrap().is_none());

        let g = SimpleGame::new(4, vec![c(&[0, 1, 2]), c(&[0, 1, 3])]).unwrap();
        let s = strip_vetoers(&g).unwrap().unwrap();
        assert_eq!(s.count, 2);
        let r = s.residual.unwrap();
        assert_eq!(r.players, vec![2, 3]);
        let rebuilt = compose(&CompositionSpec::new(catalog::unanimity(3).unwrap(), 2, r.game).unwrap()).unwrap();
        assert!(isomorphic(&rebuilt, &g).is_some());
    }
}
