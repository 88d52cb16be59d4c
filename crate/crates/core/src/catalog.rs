//! Named game families, their parameter constraints, and recognition of the
//! indecomposable ideal weighted types.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::SimpleGame;
use crate::profile::{self, game_from_counts};

pub fn k_out_of_n(n: usize, k: usize) -> Result<SimpleGame> {
    if k < 1 || k > n {
        return Err(Error::constraint("H", format!("1 ≤ k ≤ n fails for n={n}, k={k}")));
    }
    if n > crate::coalition::MAX_PLAYERS {
        return Err(Error::PlayerCount(n));
    }
    let sets = (0..n).combinations(k).map(Coalition::from_players).collect();
    SimpleGame::new(n, sets)
}

pub fn unanimity(n: usize) -> Result<SimpleGame> {
    k_out_of_n(n, n)
}

pub fn anti_unanimity(n: usize) -> Result<SimpleGame> {
    k_out_of_n(n, 1)
}

fn check(family: &'static str, ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::constraint(family, what))
    }
}

fn arity(family: &'static str, n: &[usize], k: &[usize], m: usize) -> Result<()> {
    check(
        family,
        n.len() == m && k.len() == m,
        &format!("expected {m} level sizes and {m} thresholds"),
    )?;
    check(family, n.iter().all(|&x| x > 0), "level sizes must be positive")
}

fn hier_disjunctive_guard(n: &[usize], k: &[usize]) -> Result<()> {
    const F: &str = "HierDisj";
    arity(F, n, k, 2)?;
    check(F, 1 <= k[0], "1 ≤ k₁")?;
    check(F, k[0] < k[1], "k₁ < k₂")?;
    check(F, k[0] <= n[0], "k₁ ≤ n₁")?;
    check(F, k[1] - k[0] < n[1], "k₂ − k₁ < n₂")
}

fn hier_conjunctive_guard(n: &[usize], k: &[usize]) -> Result<()> {
    const F: &str = "HierConj";
    arity(F, n, k, 2)?;
    check(F, 1 <= k[0], "1 ≤ k₁")?;
    check(F, k[0] <= k[1], "k₁ ≤ k₂")?;
    check(F, k[0] <= n[0], "k₁ ≤ n₁")?;
    check(F, k[1] - k[0] < n[1], "k₂ − k₁ < n₂")
}

fn delta1_guard(n: &[usize], k: &[usize]) -> Result<()> {
    const F: &str = "Delta1";
    arity(F, n, k, 3)?;
    let (n, k) = (signed(n), signed(k));
    check(F, k[0] < k[2], "k₁ < k₃")?;
    check(F, k[1] < k[2], "k₂ < k₃")?;
    check(F, n[0] >= k[0], "n₁ ≥ k₁")?;
    check(F, n[1] > k[1] - k[0], "n₂ > k₂ − k₁")?;
    check(F, n[2] > k[2] - k[1], "n₃ > k₃ − k₂")
}

fn delta2_guard(n: &[usize], k: &[usize]) -> Result<()> {
    const F: &str = "Delta2";
    arity(F, n, k, 3)?;
    let (n, k) = (signed(n), signed(k));
    check(F, k[0] < k[1] && k[1] < k[2], "k₁ < k₂ < k₃")?;
    check(F, n[0] + n[1] >= k[1], "n₁ + n₂ ≥ k₂")?;
    check(F, n[2] > k[2] - k[1], "n₃ > k₃ − k₂")?;
    check(F, n[1] + n[2] > k[2] - k[0], "n₂ + n₃ > k₃ − k₁")?;
    check(F, n[1] <= k[1] - k[0], "n₂ ≤ k₂ − k₁")
}

fn signed(v: &[usize]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

fn hier_disjunctive_raw(n: &[usize], k: &[usize]) -> Result<SimpleGame> {
    let (k1, k2) = (k[0], k[1]);
    game_from_counts(n, |l| l[0] >= k1 || l[0] + l[1] >= k2)
}

fn hier_conjunctive_raw(n: &[usize], k: &[usize]) -> Result<SimpleGame> {
    let (k1, k2) = (k[0], k[1]);
    game_from_counts(n, |l| l[0] >= k1 && l[0] + l[1] >= k2)
}

/// `Δ₁` expanded without checking its conditions.
pub fn delta1_raw(n: &[usize], k: &[usize]) -> Result<SimpleGame> {
    arity("Delta1", n, k, 3)?;
    let (k1, k2, k3) = (k[0], k[1], k[2]);
    game_from_counts(n, |l| l[0] >= k1 || (l[0] + l[1] >= k2 && l[0] + l[1] + l[2] >= k3))
}

/// `Δ₂` expanded without checking its conditions.
pub fn delta2_raw(n: &[usize], k: &[usize]) -> Result<SimpleGame> {
    arity("Delta2", n, k, 3)?;
    let (k1, k2, k3) = (k[0], k[1], k[2]);
    game_from_counts(n, |l| l[0] + l[1] >= k2 || (l[0] >= k1 && l[0] + l[1] + l[2] >= k3))
}

/// Hierarchical disjunctive game `ℓ₁ ≥ k₁ ∨ ℓ₁ + ℓ₂ ≥ k₂`.
pub fn hier_disjunctive(n: &[usize], k: &[usize]) -> Result<SimpleGame> {
    hier_disjunctive_guard(n, k)?;
    hier_disjunctive_raw(n, k)
}

/// Hierarchical conjunctive game `ℓ₁ ≥ k₁ ∧ ℓ₁ + ℓ₂ ≥ k₂`.
pub fn hier_conjunctive(n: &[usize], k: &[usize]) -> Result<SimpleGame> {
    hier_conjunctive_guard(n, k)?;
    hier_conjunctive_raw(n, k)
}

pub fn delta1(n: &[usize], k: &[usize]) -> Result<SimpleGame> {
    delta1_guard(n, k)?;
    delta1_raw(n, k)
}

pub fn delta2(n: &[usize], k: &[usize]) -> Result<SimpleGame> {
    delta2_guard(n, k)?;
    delta2_raw(n, k)
}

/// A raw expansion has exactly three desirability levels and no dummies.
fn tripartite_without_dummies(game: Result<SimpleGame>) -> bool {
    let Ok(game) = game else {
        return false;
    };
    game.dummies().is_empty() && profile::leveled(&game).is_ok_and(|l| l.levels.len() == 3)
}

/// `[Δ₁ conditions hold] ⟺ [raw Δ₁ expansion is tripartite without dummies]`.
pub fn delta1_conditions_iff_tripartite(n: &[usize], k: &[usize]) -> bool {
    delta1_guard(n, k).is_ok() == tripartite_without_dummies(delta1_raw(n, k))
}

/// As [`delta1_conditions_iff_tripartite`] for `Δ₂`; only meaningful in the
/// regime `n₂ ≤ k₂ − k₁` where `Δ₂` is defined.
pub fn delta2_conditions_iff_tripartite(n: &[usize], k: &[usize]) -> bool {
    delta2_guard(n, k).is_ok() == tripartite_without_dummies(delta2_raw(n, k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    H,
    U,
    A,
    HierDisj,
    HierConj,
    Delta1,
    Delta2,
    B1,
    B2,
    B3,
    T1,
    T2,
    T3,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::H,
        Family::U,
        Family::A,
        Family::HierDisj,
        Family::HierConj,
        Family::Delta1,
        Family::Delta2,
        Family::B1,
        Family::B2,
        Family::B3,
        Family::T1,
        Family::T2,
        Family::T3,
    ];

    /// Number of levels the family's parameters describe.
    pub fn levels(self) -> usize {
        match self {
            Family::H | Family::U | Family::A => 1,
            Family::HierDisj | Family::HierConj | Family::B1 | Family::B2 | Family::B3 => 2,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::H => "H",
            Family::U => "U",
            Family::A => "A",
            Family::HierDisj => "HierDisj",
            Family::HierConj => "HierConj",
            Family::Delta1 => "Delta1",
            Family::Delta2 => "Delta2",
            Family::B1 => "B1",
            Family::B2 => "B2",
            Family::B3 => "B3",
            Family::T1 => "T1",
            Family::T2 => "T2",
            Family::T3 => "T3",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown family {s}")))
    }
}

/// Which list of constraints applies to the indecomposable types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// The seven types as originally listed, including `T₂` and `B₁` with
    /// `n₂ = 2`.
    Listed,
    /// The refined list: `H` narrowed to `A₂`, `U₂`, `H_{n,k}` with
    /// `1 < k < n`, `B₁` with `k₂ − k₁ > 1`, and no `T₂`.
    Indecomposable,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CatalogParams {
    pub family: Family,
    pub n: Vec<usize>,
    pub k: Vec<usize>,
}

impl fmt::Display for CatalogParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).join(",");
        write!(f, "{}(n={}; k={})", self.family, join(&self.n), join(&self.k))
    }
}

impl CatalogParams {
    pub fn new(family: Family, n: Vec<usize>, k: Vec<usize>) -> Self {
        CatalogParams { family, n, k }
    }

    pub fn h(n: usize, k: usize) -> Self {
        CatalogParams::new(Family::H, vec![n], vec![k])
    }

    pub fn n_players(&self) -> usize {
        self.n.iter().sum()
    }

    /// Checks the family's constraints, naming the first violated one.
    pub fn validate(&self, mode: Mode) -> Result<()> {
        let (n, k) = (&self.n[..], &self.k[..]);
        match self.family {
            Family::H => {
                arity("H", n, k, 1)?;
                check("H", 1 <= k[0] && k[0] <= n[0], "1 ≤ k ≤ n")?;
                if mode == Mode::Indecomposable {
                    let (n, k) = (n[0], k[0]);
                    check("H", n == 2 || (1 < k && k < n), "A₂, U₂ or 1 < k < n")?;
                }
                Ok(())
            }
            Family::U | Family::A => {
                check(self.family.name(), n.len() == 1 && n[0] >= 1, "one positive size")?;
                let want = if self.family == Family::U { n[0] } else { 1 };
                check(
                    self.family.name(),
                    k.is_empty() || k == [want],
                    "threshold fixed by family",
                )
            }
            Family::HierDisj => hier_disjunctive_guard(n, k),
            Family::HierConj => hier_conjunctive_guard(n, k),
            Family::Delta1 => delta1_guard(n, k),
            Family::Delta2 => delta2_guard(n, k),
            Family::B1 => {
                const F: &str = "B1";
                hier_conjunctive_guard(n, k).map_err(|e| rename(e, F))?;
                check(F, k[0] < n[0], "k₁ < n₁")?;
                check(F, k[1] - k[0] == n[1] - 1, "k₂ − k₁ = n₂ − 1")?;
                let floor = if mode == Mode::Indecomposable { 1 } else { 0 };
                check(
                    F,
                    n[1] - 1 > floor,
                    if floor == 1 { "n₂ − 1 > 1" } else { "n₂ − 1 > 0" },
                )
            }
            Family::B2 => {
                const F: &str = "B2";
                hier_disjunctive_guard(n, k).map_err(|e| rename(e, F))?;
                check(F, 1 < k[0] && k[0] <= n[0], "1 < k₁ ≤ n₁")?;
                check(F, k[1] <= n[1], "k₂ ≤ n₂")?;
                check(F, k[1] == k[0] + 1, "k₂ = k₁ + 1")
            }
            Family::B3 => {
                const F: &str = "B3";
                hier_disjunctive_guard(n, k).map_err(|e| rename(e, F))?;
                check(F, k[0] <= n[0], "k₁ ≤ n₁")?;
                check(F, k[1] > n[1] && n[1] > 2, "k₂ > n₂ > 2")?;
                check(F, k[1] == k[0] + 1, "k₂ = k₁ + 1")
            }
            Family::T1 => {
                const F: &str = "T1";
                delta1_guard(n, k).map_err(|e| rename(e, F))?;
                check(F, k[0] > 1, "k₁ > 1")?;
                check(F, k[1] < n[1], "k₂ < n₂")?;
                check(F, k[2] == k[0] + 1, "k₃ = k₁ + 1")?;
                check(F, n[2] + k[1] == k[2] + 1 && n[2] > 2, "n₃ = k₃ − k₂ + 1 > 2")
            }
            Family::T2 => {
                const F: &str = "T2";
                check(F, mode == Mode::Listed, "not indecomposable")?;
                delta1_guard(n, k).map_err(|e| rename(e, F))?;
                check(F, n[2] + k[1] == k[2] + 1 && n[2] > 2, "n₃ = k₃ − k₂ + 1 > 2")?;
                check(F, k[2] == k[0] + 1, "k₃ = k₁ + 1")?;
                check(F, k[1] >= n[1], "k₂ ≥ n₂")
            }
            Family::T3 => {
                const F: &str = "T3";
                delta2_guard(n, k).map_err(|e| rename(e, F))?;
                check(F, k[2] + 1 == k[0] + n[1] + n[2], "k₃ − k₁ = n₂ + n₃ − 1")?;
                check(F, k[2] == k[1] + 1, "k₃ = k₂ + 1")?;
                check(F, k[1] > n[1] + k[0], "k₂ − n₂ > k₁")?;
                check(F, n[2] > 1, "n₃ > 1")
            }
        }
    }

    /// Validates and expands.
    pub fn build(&self, mode: Mode) -> Result<SimpleGame> {
        self.validate(mode)?;
        let (n, k) = (&self.n[..], &self.k[..]);
        match self.family {
            Family::H => k_out_of_n(n[0], k[0]),
            Family::U => unanimity(n[0]),
            Family::A => anti_unanimity(n[0]),
            Family::HierDisj | Family::B2 | Family::B3 => hier_disjunctive_raw(n, k),
            Family::HierConj | Family::B1 => hier_conjunctive_raw(n, k),
            Family::Delta1 | Family::T1 | Family::T2 => delta1_raw(n, k),
            Family::Delta2 | Family::T3 => delta2_raw(n, k),
        }
    }

    /// Level on which `H` heads of the refined list sit: `A₂`, `U₂` or a
    /// proper `H_{n,k}`.
    pub fn is_refined_h(&self) -> bool {
        self.family == Family::H && self.validate(Mode::Indecomposable).is_ok()
    }
}

fn rename(e: Error, family: &'static str) -> Error {
    match e {
        Error::Constraint { constraint, .. } => Error::Constraint { family, constraint },
        other => other,
    }
}

/// Shorthand for [`CatalogParams::build`].
pub fn make_type(family: Family, n: &[usize], k: &[usize], mode: Mode) -> Result<SimpleGame> {
    CatalogParams::new(family, n.to_vec(), k.to_vec()).build(mode)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CatalogTag {
    Catalog(CatalogParams),
    NotInCatalog,
}

impl CatalogTag {
    pub fn params(&self) -> Option<&CatalogParams> {
        match self {
            CatalogTag::Catalog(p) => Some(p),
            CatalogTag::NotInCatalog => None,
        }
    }
}

/// Membership in the refined list `H, B₁, B₂, B₃, T₁, T₃`.
///
/// Parameters are read off the shift-minimal profiles, then the game is
/// rebuilt from them and compared with the input laid out level by level.
pub fn classify(game: &SimpleGame) -> CatalogTag {
    if game.is_trivially_full() || !game.dummies().is_empty() {
        return CatalogTag::NotInCatalog;
    }
    let Ok(leveled) = profile::leveled(game) else {
        return CatalogTag::NotInCatalog;
    };
    let Ok(laid_out) = game.permuted(&leveled.layout_permutation()) else {
        return CatalogTag::NotInCatalog;
    };
    candidates(&leveled.profile)
        .into_iter()
        .find(|p| p.build(Mode::Indecomposable).is_ok_and(|g| g == laid_out))
        .map_or(CatalogTag::NotInCatalog, CatalogTag::Catalog)
}

fn candidates(p: &profile::CompleteProfile) -> Vec<CatalogParams> {
    let n = p.level_sizes.clone();
    let sm = &p.shift_min;
    let mut out = Vec::new();
    match (n.len(), sm.len()) {
        (1, 1) => out.push(CatalogParams::new(Family::H, n, vec![sm[0][0]])),
        (2, 1) => {
            let (a, b) = (sm[0][0], sm[0][1]);
            out.push(CatalogParams::new(Family::B1, n, vec![a, a + b]));
        }
        (2, 2) => {
            for (x, y) in [(&sm[0], &sm[1]), (&sm[1], &sm[0])] {
                if x[1] == 0 {
                    let k1 = x[0];
                    out.push(CatalogParams::new(Family::B2, n.clone(), vec![k1, y[0] + y[1]]));
                    out.push(CatalogParams::new(Family::B3, n.clone(), vec![k1, y[0] + y[1]]));
                }
            }
        }
        (3, 2) => {
            for (x, y) in [(&sm[0], &sm[1]), (&sm[1], &sm[0])] {
                if x[1] == 0 && x[2] == 0 {
                    out.push(CatalogParams::new(Family::T1, n.clone(), vec![x[0], y[1], y[1] + y[2]]));
                }
                if x[2] == 0 {
                    out.push(CatalogParams::new(
                        Family::T3,
                        n.clone(),
                        vec![y[0], x[0] + x[1], y[0] + y[1] + y[2]],
                    ));
                }
            }
        }
        _ => {}
    }
    out
}

/// Bounds for parameter grids.
#[derive(Debug, Clone, Copy)]
pub struct GridLimits {
    pub max_level_size: usize,
    pub max_threshold: usize,
    pub max_players: usize,
}

impl Default for GridLimits {
    fn default() -> Self {
        GridLimits {
            max_level_size: 4,
            max_threshold: 6,
            max_players: 10,
        }
    }
}

/// All valid parameter choices of `family` within `limits`, in lexicographic
/// order of `(n, k)`.
pub fn grid(family: Family, mode: Mode, limits: GridLimits) -> Vec<CatalogParams> {
    let m = family.levels();
    let mut out = Vec::new();
    let sizes: Vec<Vec<usize>> = (0..m)
        .map(|_| 1..=limits.max_level_size)
        .multi_cartesian_product()
        .filter(|n: &Vec<usize>| n.iter().sum::<usize>() <= limits.max_players)
        .collect();
    for n in sizes {
        let ks: Vec<Vec<usize>> = match family {
            Family::U => vec![vec![n[0]]],
            Family::A => vec![vec![1]],
            _ => (0..m)
                .map(|_| 1..=limits.max_threshold)
                .multi_cartesian_product()
                .collect(),
        };
        for k in ks {
            let p = CatalogParams::new(family, n.clone(), k);
            if p.validate(mode).is_ok() {
                out.push(p);
            }
        }
    }
    out
}

/// The refined list's grid: `H, B₁, B₂, B₃, T₁, T₃`.
pub fn indecomposable_grid(limits: GridLimits) -> Vec<CatalogParams> {
    [Family::H, Family::B1, Family::B2, Family::B3, Family::T1, Family::T3]
        .into_iter()
        .flat_map(|f| grid(f, Mode::Indecomposable, limits))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::to_profile;

    #[test]
    fn k_out_of_n_shapes() {
        assert_eq!(k_out_of_n(3, 2).unwrap().min_winning().len(), 3);
        assert_eq!(unanimity(1).unwrap().min_winning(), &[Coalition::singleton(0)]);
        assert_eq!(anti_unanimity(4).unwrap().min_winning().len(), 4);
        assert!(k_out_of_n(3, 4).is_err());
        assert!(k_out_of_n(3, 0).is_err());
    }

    #[test]
    fn hierarchical_constraints() {
        assert!(hier_disjunctive(&[2, 3], &[2, 5]).is_err());
        let unsc = hier_conjunctive(&[5, 10], &[5, 9]).unwrap();
        assert_eq!(unsc.min_winning().len(), 210);
    }

    #[test]
    fn delta_guards_name_conditions() {
        assert!(delta1(&[2, 2, 3], &[2, 3, 5]).is_ok());
        match delta1(&[2, 2, 2], &[2, 3, 5]) {
            Err(Error::Constraint { constraint, .. }) => assert_eq!(constraint, "n₃ > k₃ − k₂"),
            other => panic!("unexpected {other:?}"),
        }
        match delta2(&[3, 3, 3], &[1, 3, 5]) {
            Err(Error::Constraint { constraint, .. }) => assert_eq!(constraint, "n₂ ≤ k₂ − k₁"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn b3_shift_minimal_forms() {
        let g = make_type(Family::B3, &[3, 3], &[3, 4], Mode::Indecomposable).unwrap();
        assert_eq!(to_profile(&g).unwrap().shift_min, vec![vec![1, 3], vec![3, 0]]);
    }

    #[test]
    fn refined_mode_rejects_decomposable_instances() {
        assert!(make_type(Family::B1, &[2, 2], &[1, 2], Mode::Listed).is_ok());
        assert!(make_type(Family::B1, &[2, 2], &[1, 2], Mode::Indecomposable).is_err());
        assert!(make_type(Family::H, &[3], &[3], Mode::Indecomposable).is_err());
        assert!(make_type(Family::H, &[2], &[2], Mode::Indecomposable).is_ok());
    }

    #[test]
    fn classify_round_trips() {
        let h = k_out_of_n(7, 3).unwrap();
        assert_eq!(classify(&h), CatalogTag::Catalog(CatalogParams::h(7, 3)));
        let p = CatalogParams::new(Family::B2, vec![2, 3], vec![2, 3]);
        assert_eq!(
            classify(&p.build(Mode::Indecomposable).unwrap()),
            CatalogTag::Catalog(p)
        );
        let unsc = hier_conjunctive(&[5, 10], &[5, 9]).unwrap();
        assert_eq!(classify(&unsc), CatalogTag::NotInCatalog);
    }

    #[test]
    fn family_names_parse() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
    }
}
