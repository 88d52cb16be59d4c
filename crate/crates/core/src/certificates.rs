//! Explicit certificates for compositions of catalog games.
//!
//! Each case describes its coalitions as level-count profiles of the outer
//! game (plus an extra level for a symmetric inner game). Profiles are laid
//! out cyclically over the available players of each level, starting from the
//! same player on both sides, so equal per-level totals give an exactly
//! balanced transform.

use std::fmt;
use std::str::FromStr;

use crate::catalog::{self, CatalogParams, Family, Mode};
use crate::coalition::Coalition;
use crate::composition::{compose, CompositionSpec};
use crate::desirability::{desirability, strictly_more_desirable};
use crate::error::{Error, Result};
use crate::game::SimpleGame;
use crate::profile::consecutive_levels;
use crate::trade::{self, TradingTransform};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    Nonweightedness,
    Incompleteness,
}

/// The inner game a case expects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerRequirement {
    /// Some minimal winning coalition with at least two players.
    NonTrivialCoalition,
    AntiUnanimity,
    Unanimity,
    /// At least two minimal winning coalitions, one of size at least two.
    NeitherOligarchyNorAntiOligarchy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    B1Level2,
    B2Level2,
    B3Level2,
    T1Level3,
    T3Level3,
    B1An,
    B3An,
    T1An,
    T3An,
    NotComplete,
    X1X2B1,
    X1X2B2,
    X1X2B3,
    X1X2T1,
    X1X2T3,
    X1X2T1Level2,
    X1X2T3Level2,
    UnB1,
    UnB2,
    UnB3,
    UnT1Level1,
    UnT1Level2,
    UnT3Level1,
    UnT3Level2,
}

use CaseId::*;

impl CaseId {
    pub const ALL: [CaseId; 24] = [
        B1Level2,
        B2Level2,
        B3Level2,
        T1Level3,
        T3Level3,
        B1An,
        B3An,
        T1An,
        T3An,
        NotComplete,
        X1X2B1,
        X1X2B2,
        X1X2B3,
        X1X2T1,
        X1X2T3,
        X1X2T1Level2,
        X1X2T3Level2,
        UnB1,
        UnB2,
        UnB3,
        UnT1Level1,
        UnT1Level2,
        UnT3Level1,
        UnT3Level2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            B1Level2 => "B1_level2",
            B2Level2 => "B2_level2",
            B3Level2 => "B3_level2",
            T1Level3 => "T1_level3",
            T3Level3 => "T3_level3",
            B1An => "B1_An",
            B3An => "B3_An",
            T1An => "T1_An",
            T3An => "T3_An",
            NotComplete => "NOT_COMPLETE",
            X1X2B1 => "X1X2_B1",
            X1X2B2 => "X1X2_B2",
            X1X2B3 => "X1X2_B3",
            X1X2T1 => "X1X2_T1",
            X1X2T3 => "X1X2_T3",
            X1X2T1Level2 => "X1X2_T1_level2",
            X1X2T3Level2 => "X1X2_T3_level2",
            UnB1 => "Un_B1",
            UnB2 => "Un_B2",
            UnB3 => "Un_B3",
            UnT1Level1 => "Un_T1_level1",
            UnT1Level2 => "Un_T1_level2",
            UnT3Level1 => "Un_T3_level1",
            UnT3Level2 => "Un_T3_level2",
        }
    }

    /// Outer family the case applies to; `None` for any catalog game.
    pub fn family(self) -> Option<Family> {
        Some(match self {
            B1Level2 | B1An | X1X2B1 | UnB1 => Family::B1,
            B2Level2 | X1X2B2 | UnB2 => Family::B2,
            B3Level2 | B3An | X1X2B3 | UnB3 => Family::B3,
            T1Level3 | T1An | X1X2T1 | X1X2T1Level2 | UnT1Level1 | UnT1Level2 => Family::T1,
            T3Level3 | T3An | X1X2T3 | X1X2T3Level2 | UnT3Level1 | UnT3Level2 => Family::T3,
            NotComplete => return None,
        })
    }

    /// Level (1-based, most desirable first) holding the pivot.
    pub fn pivot_level(self) -> usize {
        match self {
            B1Level2 | B2Level2 | B3Level2 | B1An | B3An => 2,
            T1Level3 | T3Level3 | T1An | T3An => 3,
            X1X2T1Level2 | X1X2T3Level2 | UnT1Level2 | UnT3Level2 => 2,
            _ => 1,
        }
    }

    pub fn inner_requirement(self) -> InnerRequirement {
        match self {
            B1Level2 | B2Level2 | B3Level2 | T1Level3 | T3Level3 => InnerRequirement::NonTrivialCoalition,
            B1An | B3An | T1An | T3An => InnerRequirement::AntiUnanimity,
            X1X2B1 | X1X2B2 | X1X2B3 | X1X2T1 | X1X2T3 | X1X2T1Level2 | X1X2T3Level2 => InnerRequirement::AntiUnanimity,
            UnB1 | UnB2 | UnB3 | UnT1Level1 | UnT1Level2 | UnT3Level1 | UnT3Level2 => InnerRequirement::Unanimity,
            NotComplete => InnerRequirement::NeitherOligarchyNorAntiOligarchy,
        }
    }

    pub fn kind(self) -> CertificateKind {
        match self {
            NotComplete | X1X2B1 | X1X2B2 | X1X2B3 | X1X2T1 | X1X2T3 | X1X2T1Level2 | X1X2T3Level2 => {
                CertificateKind::Incompleteness
            }
            _ => CertificateKind::Nonweightedness,
        }
    }

    /// Default inner game of `size` players for this case.
    pub fn default_inner(self, size: usize) -> Result<SimpleGame> {
        match self.inner_requirement() {
            InnerRequirement::AntiUnanimity => catalog::anti_unanimity(size),
            InnerRequirement::Unanimity | InnerRequirement::NonTrivialCoalition => catalog::unanimity(size),
            InnerRequirement::NeitherOligarchyNorAntiOligarchy => catalog::k_out_of_n(size, 2),
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown certificate case {s}")))
    }
}

/// A generated certificate together with the composition it indicts.
#[derive(Debug, Clone)]
pub struct CaseCertificate {
    pub case: CaseId,
    pub spec: CompositionSpec,
    pub composite: SimpleGame,
    pub transform: TradingTransform,
    pub kind: CertificateKind,
    pub variant: Variant,
}

impl CaseCertificate {
    /// Re-checks the transform against the composite game.
    pub fn validate(&self) -> Result<bool> {
        match self.kind {
            CertificateKind::Nonweightedness => {
                trade::is_certificate_of_nonweightedness(&self.composite, &self.transform)
            }
            CertificateKind::Incompleteness => {
                trade::is_certificate_of_incompleteness(&self.composite, &self.transform)
            }
        }
    }
}

fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

/// Lifts a two-coalition seed of the outer game to the composition.
///
/// `seed = (x1, x2; y1, y2)` is given in outer coordinates and must avoid the
/// pivot; `x1` wins, `x2` wins together with the pivot and `y1`, `y2` lose.
/// With `u = u₁ ∪ u₂` a minimal winning coalition of the inner game split
/// into its first player and the rest, the result is
/// `(x1, x2 ∪ u; y1 ∪ u₁, y2 ∪ u₂)`. When `x2` already wins, the seed itself
/// is returned.
pub fn keylemma_lift(spec: &CompositionSpec, seed: &TradingTransform, u: Coalition) -> Result<TradingTransform> {
    let (outer, g) = (&spec.outer, spec.pivot);
    if seed.len() != 2 || seed.y.len() != 2 {
        return Err(precondition("seed must have two coalitions per side"));
    }
    if !trade::is_trading_transform(seed)? {
        return Err(precondition("seed is not a trading transform"));
    }
    for c in seed.x.iter().chain(&seed.y) {
        outer.check_coalition(*c)?;
        if c.contains(g) {
            return Err(precondition(format!("seed coalition {c} contains the pivot")));
        }
    }
    let [x1, x2] = [seed.x[0], seed.x[1]];
    let [y1, y2] = [seed.y[0], seed.y[1]];
    if !outer.wins(x1) {
        return Err(precondition("x1 is not winning"));
    }
    if !outer.wins(x2.with(g)) {
        return Err(precondition("x2 is not pivot-winning"));
    }
    if outer.wins(y1) || outer.wins(y2) {
        return Err(precondition("y1 and y2 must be losing"));
    }
    let embed = |c: Coalition| spec.embed_outer(c);
    if outer.wins(x2) {
        return Ok(TradingTransform::new(
            vec![embed(x1), embed(x2)],
            vec![embed(y1), embed(y2)],
        ));
    }
    spec.inner.check_coalition(u)?;
    if !spec.inner.min_winning().contains(&u) {
        return Err(precondition("u is not a minimal winning coalition of the inner game"));
    }
    if u.len() < 2 {
        return Err(precondition("u must have at least two players"));
    }
    let first = u.first().expect("nonempty");
    let u1 = Coalition::singleton(first);
    let u2 = u.without(first);
    Ok(TradingTransform::new(
        vec![embed(x1), embed(x2) | spec.embed_inner(u)],
        vec![embed(y1) | spec.embed_inner(u1), embed(y2) | spec.embed_inner(u2)],
    ))
}

/// Which minimal winning coalition containing `g′` the incompleteness
/// construction uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotCompleteBranch {
    ContainsPivot,
    AvoidsPivot,
}

/// Swap certificate showing `G ∘_g H` incomplete when `g ≻ g′`, `g′` is not a
/// dummy and `H` is neither an oligarchy nor an anti-oligarchy. Returns the
/// transform (in composite coordinates) and the branch used; `branch = None`
/// picks the first available.
pub fn not_complete_certificate(
    spec: &CompositionSpec,
    g_prime: usize,
    branch: Option<NotCompleteBranch>,
) -> Result<(TradingTransform, NotCompleteBranch)> {
    let (outer, g, inner) = (&spec.outer, spec.pivot, &spec.inner);
    outer.check_player(g_prime)?;
    if outer.dummies().contains(g_prime) {
        return Err(precondition("g′ is a dummy"));
    }
    let m = strictly_more_desirable(outer, g, g_prime)
        .ok_or_else(|| precondition("pivot is not strictly more desirable than g′"))?;
    let x = m.without(g);
    let containing: Vec<Coalition> = outer
        .min_winning()
        .iter()
        .copied()
        .filter(|c| c.contains(g_prime))
        .collect();
    let pick = |b: NotCompleteBranch| {
        containing
            .iter()
            .copied()
            .find(|c| c.contains(g) == (b == NotCompleteBranch::ContainsPivot))
    };
    let (branch, y) = match branch {
        Some(b) => (
            b,
            pick(b).ok_or_else(|| precondition("requested branch has no coalition"))?,
        ),
        None => [NotCompleteBranch::ContainsPivot, NotCompleteBranch::AvoidsPivot]
            .into_iter()
            .find_map(|b| pick(b).map(|y| (b, y)))
            .expect("g′ is not a dummy"),
    };
    let e = |c: Coalition| spec.embed_outer(c);
    let h = |c: Coalition| spec.embed_inner(c);
    let t = match branch {
        NotCompleteBranch::ContainsPivot => {
            let zs = inner.min_winning();
            if zs.len() < 2 {
                return Err(precondition("inner game is an oligarchy"));
            }
            let (z1, z2) = (zs[0], zs[1]);
            let z = (z1 - z2).first().expect("distinct minimal coalitions");
            TradingTransform::new(
                vec![e(x) | h(z1), e(y.without(g)) | h(z2)],
                vec![
                    e(x.with(g_prime)) | h(z1.without(z)),
                    e(y.without(g).without(g_prime)) | h(z2.with(z)),
                ],
            )
        }
        NotCompleteBranch::AvoidsPivot => {
            let z1 = inner
                .min_winning()
                .iter()
                .copied()
                .find(|c| c.len() >= 2)
                .ok_or_else(|| precondition("inner game is an anti-oligarchy"))?;
            let z = z1.first().expect("nonempty");
            TradingTransform::new(
                vec![e(x) | h(z1), e(y)],
                vec![
                    e(x.with(g_prime)) | h(z1.without(z)),
                    e(y.without(g_prime)) | h(Coalition::singleton(z)),
                ],
            )
        }
    };
    Ok((t, branch))
}

/// `(X₁ ∪ {a}, X₂ ∪ {b}; X₁ ∪ {g′}, X₂ \ {g′} ∪ {a, b})` for `G ∘_g A_n`.
///
/// Requires `g ≻ g′`, `g′ ∉ X₁`, `X₁ ∪ {g}` winning, `X₁ ∪ {g′}` losing,
/// `g′ ∈ X₂`, `X₂ ∪ {g}` winning and `X₂ \ {g′} ∪ {g}` losing.
pub fn x1x2_certificate(
    spec: &CompositionSpec,
    g_prime: usize,
    x1: Coalition,
    x2: Coalition,
) -> Result<TradingTransform> {
    let (outer, g) = (&spec.outer, spec.pivot);
    if spec.inner.n() < 2 || spec.inner != catalog::anti_unanimity(spec.inner.n())? {
        return Err(precondition(
            "inner game must be an anti-unanimity game on at least two players",
        ));
    }
    let rel = desirability(outer);
    if !rel.strictly(g, g_prime) {
        return Err(precondition("g is not strictly more desirable than g′"));
    }
    let checks = [
        (!x1.contains(g_prime) && !x1.contains(g), "g, g′ ∉ X₁"),
        (outer.wins(x1.with(g)), "X₁ ∪ {g} winning"),
        (!outer.wins(x1.with(g_prime)), "X₁ ∪ {g′} losing"),
        (x2.contains(g_prime) && !x2.contains(g), "g′ ∈ X₂, g ∉ X₂"),
        (outer.wins(x2.with(g)), "X₂ ∪ {g} winning"),
        (!outer.wins(x2.without(g_prime).with(g)), "X₂ \\ {g′} ∪ {g} losing"),
    ];
    if let Some((_, what)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(precondition(format!("condition {what} fails")));
    }
    let e = |c: Coalition| spec.embed_outer(c);
    let a = spec.embed_inner(Coalition::singleton(0));
    let b = spec.embed_inner(Coalition::singleton(1));
    Ok(TradingTransform::new(
        vec![e(x1) | a, e(x2) | b],
        vec![e(x1.with(g_prime)), e(x2.without(g_prime)) | a | b],
    ))
}

type Profile = Vec<i64>;

struct Seed {
    x: [Profile; 2],
    y: [Profile; 2],
}

fn seed(x1: &[i64], x2: &[i64], y1: &[i64], y2: &[i64]) -> Seed {
    Seed {
        x: [x1.to_vec(), x2.to_vec()],
        y: [y1.to_vec(), y2.to_vec()],
    }
}

/// Lays out one side of a transform: coalition `j` takes `counts[j][l]`
/// consecutive players (cyclically) from `levels[l]`.
fn lay_out(levels: &[Vec<usize>], side: &[Profile]) -> Result<Vec<Coalition>> {
    let mut out = vec![Coalition::EMPTY; side.len()];
    for (l, players) in levels.iter().enumerate() {
        let mut cursor = 0usize;
        for (j, counts) in side.iter().enumerate() {
            let c = counts.get(l).copied().unwrap_or(0);
            if c < 0 {
                return Err(precondition(format!("negative count at level {}", l + 1)));
            }
            let c = c as usize;
            if c > players.len() {
                return Err(precondition(format!(
                    "level {} needs {c} players but only {} are available",
                    l + 1,
                    players.len()
                )));
            }
            for i in 0..c {
                out[j] = out[j].with(players[(cursor + i) % players.len()]);
            }
            cursor = (cursor + c) % players.len().max(1);
        }
    }
    Ok(out)
}

/// First `counts[l]` players of each level, skipping `avoid`, plus `include`
/// counted against its own level.
fn pick(levels: &[Vec<usize>], counts: &[i64], avoid: Coalition, include: Option<usize>) -> Result<Coalition> {
    let mut out = Coalition::EMPTY;
    for (l, players) in levels.iter().enumerate() {
        let mut want = counts.get(l).copied().unwrap_or(0);
        if want < 0 {
            return Err(precondition(format!("negative count at level {}", l + 1)));
        }
        if let Some(p) = include.filter(|p| players.contains(p)) {
            if want == 0 {
                return Err(precondition(format!("level {} cannot hold g′", l + 1)));
            }
            out = out.with(p);
            want -= 1;
        }
        let free: Vec<usize> = players
            .iter()
            .copied()
            .filter(|&p| !avoid.contains(p) && Some(p) != include)
            .collect();
        if want as usize > free.len() {
            return Err(precondition(format!(
                "level {} needs {want} players but only {} are available",
                l + 1,
                free.len()
            )));
        }
        out = out | free[..want as usize].iter().copied().collect();
    }
    Ok(out)
}

/// Whether a construction is the standard one or a corrected replacement used
/// when the standard profile does not fit the available players.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Standard,
    Corrected,
}

fn seeds(case: CaseId, p: &CatalogParams) -> Vec<(Variant, Seed)> {
    use Variant::*;
    let n: Vec<i64> = p.n.iter().map(|&x| x as i64).collect();
    let k: Vec<i64> = p.k.iter().map(|&x| x as i64).collect();
    let (k1, k2) = (k[0], k.get(1).copied().unwrap_or(0));
    let k3 = k.get(2).copied().unwrap_or(0);
    let n2 = n.get(1).copied().unwrap_or(0);
    let n3 = n.get(2).copied().unwrap_or(0);
    match case {
        B1Level2 => vec![(
            Standard,
            seed(
                &[k1, k2 - k1],
                &[k1, k2 - k1 - 1],
                &[k1 - 1, k2 - k1 + 1],
                &[k1 + 1, k2 - k1 - 2],
            ),
        )],
        B2Level2 => {
            let (lo, hi) = (k1 / 2, (k1 + 1) / 2);
            vec![(Standard, seed(&[k1, 0], &[0, k1], &[lo, hi], &[hi, lo]))]
        }
        B3Level2 => vec![(Standard, seed(&[k1, 0], &[k1 - 2, 2], &[k1 - 1, 1], &[k1 - 1, 1]))],
        T1Level3 => vec![(
            Standard,
            seed(
                &[k1, 0, 0],
                &[0, k2, k3 - k2 - 1],
                &[k1 - 1, 1, 0],
                &[1, k2 - 1, k3 - k2 - 1],
            ),
        )],
        T3Level3 => vec![(
            Standard,
            seed(
                &[k2 - n2, n2, 0],
                &[k1, n2 - 1, n3 - 1],
                &[k2 - n2, n2 - 1, 1],
                &[k1, n2, n3 - 2],
            ),
        )],
        // The standard losing coalition needs every level-2 player including
        // the pivot; the correction gives both X coalitions an inner player.
        B1An => vec![
            (
                Standard,
                seed(
                    &[k1, k2 - k1, 0],
                    &[k1, k2 - k1 - 1, 1],
                    &[k1 - 1, k2 - k1 + 1, 1],
                    &[k1 + 1, k2 - k1 - 2, 0],
                ),
            ),
            (
                Corrected,
                seed(
                    &[k1, k2 - k1 - 1, 1],
                    &[k1, k2 - k1 - 1, 1],
                    &[k1 - 1, k2 - k1, 2],
                    &[k1 + 1, k2 - k1 - 2, 0],
                ),
            ),
        ],
        B3An => vec![(
            Standard,
            seed(
                &[k2 - n2, n2 - 1, 1],
                &[k2 - n2, n2 - 1, 1],
                &[k2 - n2 + 1, n2 - 2, 0],
                &[k2 - n2 - 1, n2, 2],
            ),
        )],
        // Levels 2 and 3 form a B1 subgame; its corrected transform applies there.
        T1An => vec![(
            Corrected,
            seed(
                &[0, k2, k3 - k2 - 1, 1],
                &[0, k2, k3 - k2 - 1, 1],
                &[0, k2 - 1, k3 - k2, 2],
                &[0, k2 + 1, k3 - k2 - 2, 0],
            ),
        )],
        // The standard second losing coalition needs every level-3 player
        // including the pivot.
        T3An => vec![
            (
                Standard,
                seed(
                    &[k1, k3 - k1 - n3, n3 - 1, 1],
                    &[k1, k3 - k1 - n3, n3 - 1, 1],
                    &[k1 + 1, k3 - k1 - n3, n3 - 2, 0],
                    &[k1 - 1, k3 - k1 - n3, n3, 2],
                ),
            ),
            (
                Corrected,
                seed(
                    &[k1, n2, n3 - 2, 1],
                    &[k1, n2 - 1, n3 - 1, 1],
                    &[k1 - 1, n2, n3 - 1, 2],
                    &[k1 + 1, n2 - 1, n3 - 2, 0],
                ),
            ),
        ],
        UnB1 => vec![(
            Standard,
            seed(
                &[k1, k2 - k1],
                &[k1 - 1, k2 - k1],
                &[k1, k2 - k1 - 1],
                &[k1 - 1, k2 - k1 + 1],
            ),
        )],
        UnB2 => vec![(Standard, seed(&[0, k1 + 1], &[k1 - 1, 0], &[k1 - 1, 1], &[0, k1]))],
        UnB3 => vec![(
            Standard,
            seed(&[k2 - n2, n2], &[k1 - 1, 0], &[k2 - n2, n2 - 1], &[k1 - 1, 1]),
        )],
        UnT1Level1 => vec![(
            Standard,
            seed(
                &[k1 - 1, 0, 0],
                &[0, k2, k3 - k2],
                &[k1 - 1, 1, 0],
                &[0, k2 - 1, k3 - k2],
            ),
        )],
        // The standard transform needs k2 >= 2; the correction shifts one
        // player between levels 2 and 3.
        UnT1Level2 => vec![
            (
                Standard,
                seed(
                    &[k1, 0, 0],
                    &[0, k2 - 1, k3 - k2],
                    &[k1 - 1, 1, 0],
                    &[1, k2 - 2, k3 - k2],
                ),
            ),
            (
                Corrected,
                seed(
                    &[0, k2, k3 - k2],
                    &[0, k2 - 1, k3 - k2],
                    &[0, k2 - 1, k3 - k2 + 1],
                    &[0, k2, k3 - k2 - 1],
                ),
            ),
        ],
        // The standard transform needs n2 >= 2.
        UnT3Level1 => vec![
            (
                Standard,
                seed(
                    &[k1, k3 - k1 - n3, n3],
                    &[k1 - 1, k3 - k1 - n3, n3],
                    &[k1, k3 - k1 - n3 - 1, n3],
                    &[k1 - 1, k3 - k1 - n3 + 1, n3],
                ),
            ),
            (
                Corrected,
                seed(
                    &[k1, n2 - 1, n3],
                    &[k1 - 1, n2, n3 - 1],
                    &[k1 - 1, n2, n3],
                    &[k1, n2 - 1, n3 - 1],
                ),
            ),
        ],
        // The standard {1^k1, 3^(k3-k1)} exceeds level 3 once n2 >= 2; the
        // correction keeps the surplus on level 2.
        UnT3Level2 => vec![
            (
                Standard,
                seed(
                    &[k2 - n2, n2 - 1, 0],
                    &[k1, 0, k3 - k1],
                    &[k2 - n2, n2 - 1, 1],
                    &[k1, 0, k3 - k1 - 1],
                ),
            ),
            (
                Corrected,
                seed(
                    &[k1, n2 - 1, n3],
                    &[k2 - n2, n2 - 1, 0],
                    &[k2 - n2, n2 - 1, 1],
                    &[k1, n2 - 1, n3 - 1],
                ),
            ),
        ],
        _ => Vec::new(),
    }
}

/// `(X1, X2)` profiles and the level of `g'` for the incompleteness cases.
fn x1x2_profiles(case: CaseId, p: &CatalogParams) -> Vec<(Variant, Profile, Profile, usize)> {
    use Variant::*;
    let n: Vec<i64> = p.n.iter().map(|&x| x as i64).collect();
    let k: Vec<i64> = p.k.iter().map(|&x| x as i64).collect();
    let (k1, k2) = (k[0], k[1]);
    let k3 = k.get(2).copied().unwrap_or(0);
    let n2 = n[1];
    let n3 = n.get(2).copied().unwrap_or(0);
    match case {
        X1X2B1 => vec![(Standard, vec![k1 - 1, k2 - k1], vec![k1 - 1, k2 - k1], 2)],
        X1X2B2 => vec![(Standard, vec![k1 - 1, 0], vec![0, k1], 2)],
        X1X2B3 => vec![(Standard, vec![k1 - 1, 0], vec![k2 - n2, n2 - 1], 2)],
        X1X2T1 => vec![(Standard, vec![k1 - 1, 0, 0], vec![0, k2, k3 - k2 - 1], 3)],
        // X2 = {1^(k1-1), 3^(k3-k1)} exceeds level 3 once n2 >= 2.
        X1X2T3 => vec![
            (Standard, vec![k2 - n2 - 1, n2, 0], vec![k1 - 1, 0, k3 - k1], 3),
            (Corrected, vec![k2 - n2 - 1, n2, 0], vec![k1 - 1, n2 - 1, n3], 3),
        ],
        X1X2T1Level2 => vec![(Standard, vec![0, k2 - 1, k3 - k2], vec![0, k2 - 1, k3 - k2], 3)],
        X1X2T3Level2 => vec![(Standard, vec![k2 - n2, n2 - 1, 0], vec![k1, k3 - k1 - n3, n3 - 1], 3)],
        _ => Vec::new(),
    }
}

fn check_inner(case: CaseId, inner: &SimpleGame) -> Result<()> {
    let n = inner.n();
    let ok = match case.inner_requirement() {
        InnerRequirement::NonTrivialCoalition => inner.min_winning().iter().any(|c| c.len() >= 2),
        InnerRequirement::AntiUnanimity => n >= 2 && *inner == catalog::anti_unanimity(n)?,
        InnerRequirement::Unanimity => n >= 2 && *inner == catalog::unanimity(n)?,
        InnerRequirement::NeitherOligarchyNorAntiOligarchy => {
            inner.min_winning().len() >= 2 && inner.min_winning().iter().any(|c| c.len() >= 2)
        }
    };
    if ok {
        Ok(())
    } else {
        Err(precondition(format!(
            "inner game does not satisfy {:?}",
            case.inner_requirement()
        )))
    }
}

/// Generates and validates the certificate of `case` for the catalog game
/// `params` composed with `inner` over the last player of the case's pivot
/// level.
pub fn certificate_for(case: CaseId, params: &CatalogParams, inner: &SimpleGame) -> Result<CaseCertificate> {
    if let Some(f) = case.family() {
        if params.family != f {
            return Err(precondition(format!(
                "case {case} needs a {f} game, got {}",
                params.family
            )));
        }
    }
    let outer = params.build(Mode::Indecomposable)?;
    let levels = consecutive_levels(&params.n);
    let lvl = case.pivot_level();
    if lvl > levels.len() {
        return Err(precondition(format!("game has no level {lvl}")));
    }
    check_inner(case, inner)?;
    let pivot = *levels[lvl - 1].last().expect("levels are nonempty");
    let spec = CompositionSpec::new(outer, pivot, inner.clone())?;
    let composite = compose(&spec)?;

    let candidates: Vec<(Variant, Result<TradingTransform>)> = if case == NotComplete {
        if levels.len() < 2 {
            return Err(precondition("outer game has a single level"));
        }
        vec![(
            Variant::Standard,
            not_complete_certificate(&spec, levels[1][0], None).map(|r| r.0),
        )]
    } else if matches!(case.kind(), CertificateKind::Incompleteness) {
        x1x2_profiles(case, params)
            .into_iter()
            .map(|(v, x1, x2, gl)| {
                let g_prime = *levels[gl - 1].last().expect("levels are nonempty");
                let build = || {
                    let x1 = pick(&levels, &x1, Coalition::singleton(pivot).with(g_prime), None)?;
                    let x2 = pick(&levels, &x2, Coalition::singleton(pivot), Some(g_prime))?;
                    x1x2_certificate(&spec, g_prime, x1, x2)
                };
                (v, build())
            })
            .collect()
    } else {
        let available: Vec<Vec<usize>> = levels
            .iter()
            .map(|l| l.iter().copied().filter(|&p| p != pivot).collect())
            .collect();
        seeds(case, params)
            .into_iter()
            .map(|(v, s)| (v, seed_transform(case, &spec, &available, &s)))
            .collect()
    };

    let mut last_error = precondition(format!("no construction for {case}"));
    for (variant, t) in candidates {
        let transform = match t {
            Ok(t) => t,
            Err(e) => {
                last_error = e;
                continue;
            }
        };
        let cert = CaseCertificate {
            case,
            spec: spec.clone(),
            composite: composite.clone(),
            transform,
            kind: case.kind(),
            variant,
        };
        if cert.validate()? {
            return Ok(cert);
        }
        last_error = precondition(format!("generated {case} transform does not validate"));
    }
    Err(last_error)
}

fn seed_transform(
    case: CaseId,
    spec: &CompositionSpec,
    available: &[Vec<usize>],
    s: &Seed,
) -> Result<TradingTransform> {
    if case.inner_requirement() == InnerRequirement::AntiUnanimity {
        let outer_map = spec.outer_map();
        let mut composite_levels: Vec<Vec<usize>> = available
            .iter()
            .map(|l| l.iter().map(|&p| outer_map[p].expect("pivot excluded")).collect())
            .collect();
        composite_levels.push(spec.inner_map());
        return Ok(TradingTransform::new(
            lay_out(&composite_levels, &s.x)?,
            lay_out(&composite_levels, &s.y)?,
        ));
    }
    let x = lay_out(available, &s.x)?;
    let y = lay_out(available, &s.y)?;
    let x = if spec.outer.wins(x[0]) { x } else { vec![x[1], x[0]] };
    let u = spec
        .inner
        .min_winning()
        .iter()
        .copied()
        .find(|c| c.len() >= 2)
        .expect("checked by inner requirement");
    keylemma_lift(spec, &TradingTransform::new(x, y), u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(f: Family, n: &[usize], k: &[usize]) -> CatalogParams {
        CatalogParams::new(f, n.to_vec(), k.to_vec())
    }

    #[test]
    fn b2_level2_lift_with_unanimity() {
        let p = params(Family::B2, &[2, 3], &[2, 3]);
        let cert = certificate_for(B2Level2, &p, &catalog::unanimity(2).unwrap()).unwrap();
        assert!(cert.validate().unwrap());
        assert!(!crate::weights::is_weighted(&cert.composite));
    }

    #[test]
    fn b1_an_small_instance() {
        let p = params(Family::B1, &[2, 3], &[1, 3]);
        let cert = certificate_for(B1An, &p, &catalog::anti_unanimity(2).unwrap()).unwrap();
        // outer players 0,1 (level 1), 2,3 (level 2, pivot 4 removed), inner 4,5
        assert_eq!(cert.composite.n(), 6);
        assert!(cert.validate().unwrap());
    }

    #[test]
    fn keylemma_returns_winning_seed_unchanged() {
        let u2 = catalog::unanimity(2).unwrap();
        let g = catalog::k_out_of_n(4, 2).unwrap();
        let spec = CompositionSpec::new(g, 3, u2).unwrap();
        let seed = TradingTransform::new(
            vec![Coalition::from_players([0, 1]), Coalition::from_players([1, 2])],
            vec![Coalition::from_players([1]), Coalition::from_players([0, 1, 2])],
        );
        // y2 wins, so the seed is rejected
        assert!(keylemma_lift(&spec, &seed, Coalition::from_players([0, 1])).is_err());
    }

    #[test]
    fn keylemma_rejects_singleton_u() {
        let p = params(Family::B2, &[2, 3], &[2, 3]);
        let outer = p.build(Mode::Indecomposable).unwrap();
        let spec = CompositionSpec::new(outer, 4, catalog::k_out_of_n(2, 1).unwrap()).unwrap();
        let seed = TradingTransform::new(
            vec![Coalition::from_players([0, 1]), Coalition::from_players([2, 3])],
            vec![Coalition::from_players([0, 2]), Coalition::from_players([1, 3])],
        );
        assert!(matches!(
            keylemma_lift(&spec, &seed, Coalition::singleton(0)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn un_b2_standard() {
        let p = params(Family::B2, &[2, 3], &[2, 3]);
        let cert = certificate_for(UnB2, &p, &catalog::unanimity(2).unwrap()).unwrap();
        assert!(cert.validate().unwrap());
    }

    #[test]
    fn case_names_parse() {
        for c in CaseId::ALL {
            assert_eq!(c.name().parse::<CaseId>().unwrap(), c);
        }
    }
}
