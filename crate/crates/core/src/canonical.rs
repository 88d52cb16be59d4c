//! Canonical decomposition `H₁ ∘ … ∘ H_s ∘ I ∘ Aₙ` of ideal weighted games.
//!
//! Heads are indecomposable one-level games (`A₂`, `U₂` or `H_{n,k}` with
//! `1 < k < n`); a unanimity or anti-unanimity head on `m` players appears as
//! `m − 1` copies of `U₂` or `A₂`. The optional core is a catalog game of type
//! `B₁, B₂, B₃, T₁` or `T₃`, and the optional tail `Aₙ` only follows a `B₂`
//! core. An `Aₙ` factor without a core is written as `A₂` heads.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::{self, classify, CatalogParams, CatalogTag, Family, Mode};
use crate::composition::{compose, find_decompositions, strip_passers, strip_vetoers, CompositionSpec};
use crate::desirability::is_complete;
use crate::error::{Error, Result};
use crate::game::SimpleGame;
use crate::isomorphism::isomorphic;
use crate::profile::leveled;
use crate::weights::is_weighted;

/// A one-level head `H_{n,k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Head {
    pub n: usize,
    pub k: usize,
}

impl Head {
    pub const A2: Head = Head { n: 2, k: 1 };
    pub const U2: Head = Head { n: 2, k: 2 };

    pub fn new(n: usize, k: usize) -> Result<Head> {
        let h = Head { n, k };
        h.validate()?;
        Ok(h)
    }

    fn validate(self) -> Result<()> {
        if self.n == 2 && (self.k == 1 || self.k == 2) || 1 < self.k && self.k < self.n {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "head H({},{}) is not A2, U2 or H(n,k) with 1 < k < n",
                self.n, self.k
            )))
        }
    }

    pub fn game(self) -> Result<SimpleGame> {
        catalog::k_out_of_n(self.n, self.k)
    }

    fn from_params(p: &CatalogParams) -> Option<Head> {
        (p.family == Family::H).then(|| Head { n: p.n[0], k: p.k[0] })
    }
}

impl fmt::Display for Head {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Head::A2 => f.write_str("A2"),
            Head::U2 => f.write_str("U2"),
            Head { n, k } => write!(f, "H({n},{k})"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub heads: Vec<Head>,
    pub core: Option<CatalogParams>,
    pub tail: Option<usize>,
}

impl CanonicalForm {
    pub fn validate(&self) -> Result<()> {
        for h in &self.heads {
            h.validate()?;
        }
        if let Some(core) = &self.core {
            if !matches!(
                core.family,
                Family::B1 | Family::B2 | Family::B3 | Family::T1 | Family::T3
            ) {
                return Err(Error::InvalidInput(format!(
                    "core {core} is not of type B1, B2, B3, T1 or T3"
                )));
            }
            core.validate(Mode::Indecomposable)?;
        }
        if let Some(t) = self.tail {
            if t < 2 {
                return Err(Error::InvalidInput("tail needs at least two players".into()));
            }
            if self.core.as_ref().map(|c| c.family) != Some(Family::B2) {
                return Err(Error::InvalidInput("a tail requires a B2 core".into()));
            }
        }
        Ok(())
    }

    pub fn n_players(&self) -> usize {
        let mut n = 1;
        let mut add = |m: usize| n = n + m - 1;
        for h in &self.heads {
            add(h.n);
        }
        if let Some(c) = &self.core {
            add(c.n_players());
        }
        if let Some(t) = self.tail {
            add(t);
        }
        n
    }

    /// Number of trailing `A₂` heads when there is no core: the size minus one
    /// of an anti-unanimity factor that stands where the core would be.
    pub fn coreless_anti_unanimity_run(&self) -> usize {
        if self.core.is_some() {
            return 0;
        }
        self.heads.iter().rev().take_while(|&&h| h == Head::A2).count()
    }

    fn prepend(mut self, heads: impl IntoIterator<Item = Head>) -> Self {
        let mut h: Vec<Head> = heads.into_iter().collect();
        h.append(&mut self.heads);
        self.heads = h;
        self
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.heads.iter().map(Head::to_string).collect();
        if let Some(c) = &self.core {
            parts.push(c.to_string());
        }
        if let Some(t) = self.tail {
            parts.push(format!("A{t}"));
        }
        if parts.is_empty() {
            f.write_str("(single player)")
        } else {
            f.write_str(&parts.join(" ∘ "))
        }
    }
}

/// Composes the factors left to right. Each step substitutes the next factor
/// for the highest-index player of the previous one, which is a least
/// desirable player of that factor.
pub fn build_from_canonical(form: &CanonicalForm) -> Result<SimpleGame> {
    form.validate()?;
    let mut factors = Vec::new();
    for h in &form.heads {
        factors.push(h.game()?);
    }
    if let Some(c) = &form.core {
        factors.push(c.build(Mode::Indecomposable)?);
    }
    if let Some(t) = form.tail {
        factors.push(catalog::anti_unanimity(t)?);
    }
    let mut iter = factors.into_iter();
    let Some(mut acc) = iter.next() else {
        return SimpleGame::new(1, vec![crate::coalition::Coalition::singleton(0)]);
    };
    for next in iter {
        let pivot = acc.n() - 1;
        acc = compose(&CompositionSpec::new(acc, pivot, next)?)?;
    }
    Ok(acc)
}

/// Why a game has no canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NotIdealReason {
    NotComplete,
    NotWeighted,
    TerminalNotInCatalog,
}

impl NotIdealReason {
    pub fn as_str(self) -> &'static str {
        match self {
            NotIdealReason::NotComplete => "not complete",
            NotIdealReason::NotWeighted => "not weighted",
            NotIdealReason::TerminalNotInCatalog => "terminal not in catalog",
        }
    }
}

impl fmt::Display for NotIdealReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicalOutcome {
    Form(CanonicalForm),
    NotIdealWeighted(NotIdealReason),
}

fn reject_dummies(game: &SimpleGame) -> Result<()> {
    let d = game.dummies();
    if d.is_empty() {
        Ok(())
    } else {
        Err(Error::DummiesPresent(d.members().collect()))
    }
}

/// The canonical form of `game`, or `None` when it is not ideal weighted.
pub fn canonical_decompose(game: &SimpleGame) -> Result<Option<CanonicalForm>> {
    reject_dummies(game)?;
    decompose_rec(game)
}

/// As [`canonical_decompose`], with a reason on failure.
pub fn canonical_analysis(game: &SimpleGame) -> Result<CanonicalOutcome> {
    Ok(match canonical_decompose(game)? {
        Some(f) => CanonicalOutcome::Form(f),
        None => CanonicalOutcome::NotIdealWeighted(if !is_complete(game) {
            NotIdealReason::NotComplete
        } else if !is_weighted(game) {
            NotIdealReason::NotWeighted
        } else {
            NotIdealReason::TerminalNotInCatalog
        }),
    })
}

pub fn recognize_ideal_weighted(game: &SimpleGame) -> Result<bool> {
    Ok(canonical_decompose(game)?.is_some())
}

fn catalog_form(game: &SimpleGame) -> Option<CanonicalForm> {
    let CatalogTag::Catalog(p) = classify(game) else {
        return None;
    };
    Some(match Head::from_params(&p) {
        Some(h) => CanonicalForm {
            heads: vec![h],
            ..Default::default()
        },
        None => CanonicalForm {
            core: Some(p),
            ..Default::default()
        },
    })
}

fn is_anti_unanimity(g: &SimpleGame) -> bool {
    g.n() >= 2 && g.min_winning().iter().all(|c| c.len() == 1) && g.min_winning().len() == g.n()
}

/// `B₂` core with the pivot on its second level and an anti-unanimity inner.
fn b2_tail(spec: &CompositionSpec) -> Option<CanonicalForm> {
    if !is_anti_unanimity(&spec.inner) {
        return None;
    }
    let CatalogTag::Catalog(p) = classify(&spec.outer) else {
        return None;
    };
    if p.family != Family::B2 {
        return None;
    }
    let l = leveled(&spec.outer).ok()?;
    (l.level_of(spec.pivot) == Some(1)).then(|| CanonicalForm {
        heads: Vec::new(),
        core: Some(p),
        tail: Some(spec.inner.n()),
    })
}

fn decompose_rec(game: &SimpleGame) -> Result<Option<CanonicalForm>> {
    let n = game.n();
    if n == 1 {
        return Ok(Some(CanonicalForm::default()));
    }
    if let Some(f) = catalog_form(game) {
        return Ok(Some(f));
    }
    if let Some(s) = strip_vetoers(game)? {
        return Ok(match s.residual {
            None => Some(CanonicalForm::default().prepend(vec![Head::U2; n - 1])),
            Some(r) => decompose_rec(&r.game)?.map(|f| f.prepend(vec![Head::U2; s.count])),
        });
    }
    if let Some(s) = strip_passers(game)? {
        return Ok(match s.residual {
            None => Some(CanonicalForm::default().prepend(vec![Head::A2; n - 1])),
            Some(r) => decompose_rec(&r.game)?.map(|f| f.prepend(vec![Head::A2; s.count])),
        });
    }
    let decompositions = find_decompositions(game)?;
    let mut heads: Vec<(Head, &CompositionSpec)> = decompositions
        .iter()
        .filter_map(|d| {
            let CatalogTag::Catalog(p) = classify(&d.spec.outer) else {
                return None;
            };
            Head::from_params(&p)
                .filter(|h| h.k > 1 && h.k < h.n)
                .map(|h| (h, &d.spec))
        })
        .collect();
    heads.sort_by_key(|(_, s)| !s.inner.passers().is_empty());
    for (h, spec) in heads {
        if let Some(f) = decompose_rec(&spec.inner)? {
            return Ok(Some(f.prepend([h])));
        }
    }
    Ok(decompositions.iter().find_map(|d| b2_tail(&d.spec)))
}

/// Every canonical form reachable by any sequence of head peels and
/// core/tail splits.
pub fn all_forms(game: &SimpleGame) -> Result<BTreeSet<CanonicalForm>> {
    reject_dummies(game)?;
    let mut memo = HashMap::new();
    forms_rec(game, &mut memo)
}

fn heads_of_one_level(game: &SimpleGame) -> Option<Vec<Head>> {
    let n = game.n();
    let k = game.min_winning_size();
    if n < 2 || game.min_winning().len() != num_combinations(n, k) || game.min_winning().iter().any(|c| c.len() != k) {
        return None;
    }
    Some(match k {
        1 => vec![Head::A2; n - 1],
        _ if k == n => vec![Head::U2; n - 1],
        _ => vec![Head { n, k }],
    })
}

fn num_combinations(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn forms_rec(
    game: &SimpleGame,
    memo: &mut HashMap<SimpleGame, BTreeSet<CanonicalForm>>,
) -> Result<BTreeSet<CanonicalForm>> {
    if let Some(f) = memo.get(game) {
        return Ok(f.clone());
    }
    let mut out = BTreeSet::new();
    if game.n() == 1 {
        out.insert(CanonicalForm::default());
    } else {
        if let Some(f) = catalog_form(game) {
            out.insert(f);
        }
        if let Some(h) = heads_of_one_level(game) {
            out.insert(CanonicalForm::default().prepend(h));
        }
        for d in find_decompositions(game)? {
            if let Some(f) = b2_tail(&d.spec) {
                out.insert(f);
            }
            if let Some(h) = heads_of_one_level(&d.spec.outer) {
                for f in forms_rec(&d.spec.inner, memo)? {
                    out.insert(f.prepend(h.iter().copied()));
                }
            }
        }
    }
    memo.insert(game.clone(), out.clone());
    Ok(out)
}

/// Every decomposition path leads to the same form, and it rebuilds to a game
/// isomorphic to `game`.
pub fn verify_uniqueness(game: &SimpleGame) -> Result<bool> {
    let Some(form) = canonical_decompose(game)? else {
        return Err(Error::Precondition("game is not recognized as ideal weighted".into()));
    };
    let forms = all_forms(game)?;
    let rebuilt = build_from_canonical(&form)?;
    Ok(forms.len() == 1 && forms.contains(&form) && isomorphic(&rebuilt, game).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{anti_unanimity, hier_disjunctive, k_out_of_n, unanimity};

    fn unsc() -> SimpleGame {
        let form = CanonicalForm {
            heads: [vec![Head::U2; 5], vec![Head { n: 10, k: 4 }]].concat(),
            ..Default::default()
        };
        build_from_canonical(&form).unwrap()
    }

    #[test]
    fn unanimity_is_a_u2_chain() {
        let f = canonical_decompose(&unanimity(3).unwrap()).unwrap().unwrap();
        assert_eq!(f.heads, vec![Head::U2, Head::U2]);
        assert!(verify_uniqueness(&unanimity(3).unwrap()).unwrap());
    }

    #[test]
    fn unsc_round_trip() {
        let g = unsc();
        assert_eq!(g.n(), 15);
        let w = crate::weights::WeightedRepresentation::from_integers(39, &[[7; 5].as_slice(), &[1; 10]].concat());
        assert_eq!(w.to_game().unwrap(), g);
        let f = canonical_decompose(&g).unwrap().unwrap();
        assert_eq!(f.heads.len(), 6);
        assert_eq!(f.heads[5], Head { n: 10, k: 4 });
    }

    #[test]
    fn b2_with_tail() {
        let b2 = hier_disjunctive(&[2, 3], &[2, 3]).unwrap();
        let g = compose(&CompositionSpec::new(b2, 4, anti_unanimity(3).unwrap()).unwrap()).unwrap();
        let f = canonical_decompose(&g).unwrap().unwrap();
        assert_eq!(f.tail, Some(3));
        assert_eq!(f.core.as_ref().unwrap().family, Family::B2);
        assert!(is_weighted(&build_from_canonical(&f).unwrap()));
    }

    #[test]
    fn b2_over_first_level_is_rejected() {
        let b2 = hier_disjunctive(&[2, 3], &[2, 3]).unwrap();
        let g = compose(&CompositionSpec::new(b2, 0, anti_unanimity(2).unwrap()).unwrap()).unwrap();
        assert_eq!(
            canonical_analysis(&g).unwrap(),
            CanonicalOutcome::NotIdealWeighted(NotIdealReason::NotComplete)
        );
    }

    #[test]
    fn dummies_are_an_error() {
        let g = SimpleGame::new(2, vec![crate::coalition::Coalition::singleton(0)]).unwrap();
        assert!(matches!(canonical_decompose(&g), Err(Error::DummiesPresent(_))));
    }

    #[test]
    fn h_heads_in_order() {
        let g =
            compose(&CompositionSpec::new(k_out_of_n(4, 2).unwrap(), 3, k_out_of_n(3, 2).unwrap()).unwrap()).unwrap();
        let f = canonical_decompose(&g).unwrap().unwrap();
        assert_eq!(f.heads, vec![Head { n: 4, k: 2 }, Head { n: 3, k: 2 }]);
        assert!(verify_uniqueness(&g).unwrap());
    }
}
