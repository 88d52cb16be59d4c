//! Verification suites replaying the theory on exhaustive small populations
//! and parameter grids, plus the census of all small games.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::canonical::{self, build_from_canonical, canonical_decompose, CanonicalForm, Head};
use crate::catalog::{self, CatalogParams, CatalogTag, Family, GridLimits, Mode};
use crate::certificates::{self, CaseId, CertificateKind, Variant};
use crate::coalition::Coalition;
use crate::composition::{compose, compose_by_definition, find_decompositions, CompositionSpec};
use crate::desirability::{desirability, incompleteness_certificate, is_complete};
use crate::enumerate::enumerate_games;
use crate::error::{Error, Result};
use crate::game::SimpleGame;
use crate::io::game_id;
use crate::isomorphism::isomorphic;
use crate::profile::{consecutive_levels, game_from_counts};
use crate::trade;
use crate::weights::{self, is_weighted, WeightedRepresentation};

const MAX_LISTED_FAILURES: usize = 40;

#[derive(Debug, Clone, Copy)]
pub struct HarnessOptions {
    /// Player count of the exhaustive populations.
    pub n: usize,
    pub seed: u64,
    pub allow_five: bool,
    /// Random composition triples for the associativity check.
    pub triples: usize,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions {
            n: 4,
            seed: 2024,
            allow_five: false,
            triples: 200,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub what: String,
    /// Antichain id of the offending game, when there is one.
    pub game: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub failure_count: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {}: {} ({} checks, {} failures, {} ms)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.checked,
            self.failure_count,
            self.elapsed_ms
        )
    }
}

/// Accumulates checks for one criterion.
struct Tally {
    checked: usize,
    failures: Vec<Failure>,
    failure_count: usize,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failures: Vec::new(),
            failure_count: 0,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String, game: Option<&SimpleGame>) {
        self.checked += 1;
        if !ok {
            self.fail(what(), game);
        }
    }

    fn fail(&mut self, what: String, game: Option<&SimpleGame>) {
        self.failure_count += 1;
        if self.failures.len() < MAX_LISTED_FAILURES {
            self.failures.push(Failure {
                what,
                game: game.map(game_id),
            });
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failure_count += other.failure_count;
        let room = MAX_LISTED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        self.notes.extend(other.notes);
    }

    fn finish(self, id: u8, title: &'static str, start: Instant, limit: Option<Duration>) -> CriterionReport {
        let elapsed = start.elapsed();
        let mut t = self;
        if let Some(limit) = limit {
            if elapsed > limit {
                t.fail(format!("runtime {elapsed:?} exceeds {limit:?}"), None);
            }
        }
        CriterionReport {
            id,
            title,
            passed: t.failure_count == 0,
            checked: t.checked,
            failure_count: t.failure_count,
            failures: t.failures,
            notes: t.notes,
            elapsed_ms: elapsed.as_millis(),
        }
    }
}

/// Runs `f` over `items` in parallel and merges the tallies in input order.
fn par_tally<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) + Sync) -> Tally {
    let parts: Vec<Tally> = items
        .par_iter()
        .map(|item| {
            let mut t = Tally::new();
            f(item, &mut t);
            t
        })
        .collect();
    let mut out = Tally::new();
    for p in parts {
        out.merge(p);
    }
    out
}

fn err_text(e: &Error) -> String {
    e.to_string()
}

/// Nonempty antichains on exactly `n` players, `{∅}` excluded.
fn nontrivial_games(n: usize, allow_five: bool) -> Result<Vec<SimpleGame>> {
    Ok(enumerate_games(n, allow_five)?
        .filter(|g| !g.is_trivially_full())
        .collect())
}

fn games_up_to(n: usize) -> Vec<SimpleGame> {
    (1..=n)
        .flat_map(|m| nontrivial_games(m, false).expect("n ≤ 4"))
        .collect()
}

// ---------------------------------------------------------------------------
// 1. LP weightedness agrees with Farkas certificates.

pub fn criterion_1(opts: &HarnessOptions) -> Result<CriterionReport> {
    let start = Instant::now();
    let games: Vec<SimpleGame> = enumerate_games(opts.n, opts.allow_five)?.collect();
    let mut t = par_tally(&games, |g, t| match weights::synthesize_weights(g) {
        Some(rep) => {
            t.check(
                weights::verify_representation(g, &rep).unwrap_or(false),
                || "synthesized weights rejected".into(),
                Some(g),
            );
            t.check(
                weights::farkas_certificate(g).is_err(),
                || "weighted game produced a certificate".into(),
                Some(g),
            );
        }
        None => match weights::farkas_certificate(g) {
            Ok(cert) => t.check(
                trade::is_certificate_of_nonweightedness(g, &cert).unwrap_or(false),
                || "Farkas certificate does not validate".into(),
                Some(g),
            ),
            Err(e) => t.fail(
                format!("no certificate for a non-weighted game: {}", err_text(&e)),
                Some(g),
            ),
        },
    });
    t.notes.push(format!("{} games on {} players", games.len(), opts.n));
    Ok(t.finish(
        1,
        "exact LP weightedness agrees with certificates of nonweightedness",
        start,
        Some(Duration::from_secs(60)),
    ))
}

// ---------------------------------------------------------------------------
// 2. Completeness equals swap robustness.

pub fn criterion_2(opts: &HarnessOptions) -> Result<CriterionReport> {
    let start = Instant::now();
    let games: Vec<SimpleGame> = enumerate_games(opts.n, opts.allow_five)?.collect();
    let mut t = par_tally(&games, |g, t| {
        let complete = is_complete(g);
        let rel = desirability(g);
        t.check(
            complete == rel.is_total(),
            || "is_complete disagrees with totality".into(),
            Some(g),
        );
        match trade::brute_force_swap_certificate(g) {
            Ok(found) => t.check(
                complete == found.is_none(),
                || "total preorder check disagrees with swap search".into(),
                Some(g),
            ),
            Err(e) => t.fail(err_text(&e), Some(g)),
        }
        if let Some(c) = incompleteness_certificate(g) {
            t.check(
                trade::is_certificate_of_incompleteness(g, &c).unwrap_or(false),
                || "incompleteness certificate does not validate".into(),
                Some(g),
            );
        }
        let n = g.n();
        for i in 0..n {
            for j in 0..n {
                let strict = crate::desirability::strictly_more_desirable(g, i, j).is_some();
                t.check(
                    strict == (rel.geq(i, j) && !rel.geq(j, i)),
                    || format!("strictness of {i} over {j}"),
                    Some(g),
                );
                for k in 0..n {
                    if rel.geq(i, j) && rel.geq(j, k) && !rel.geq(i, k) {
                        t.fail(format!("desirability not transitive on {i},{j},{k}"), Some(g));
                    }
                }
            }
        }
    });
    t.notes.push(format!("{} games on {} players", games.len(), opts.n));
    Ok(t.finish(2, "completeness equals swap robustness", start, None))
}

// ---------------------------------------------------------------------------
// 3. The Security Council game.

/// Five permanent members with veto power plus at least four of ten others.
pub fn security_council() -> Result<SimpleGame> {
    let permanent = Coalition::full(5);
    SimpleGame::from_predicate(15, |x| permanent.is_subset_of(x) && x.len() >= 9)
}

pub fn criterion_3() -> Result<CriterionReport> {
    let start = Instant::now();
    let mut t = Tally::new();
    let g = security_council()?;
    let rep = WeightedRepresentation::from_integers(39, &[[7i64; 5].as_slice(), &[1; 10]].concat());
    t.check(
        weights::verify_representation(&g, &rep)?,
        || "[39; 7^5, 1^10] rejected".into(),
        Some(&g),
    );
    t.check(
        rep.to_game()? == g,
        || "[39; 7^5, 1^10] defines a different game".into(),
        Some(&g),
    );
    let permanent = Coalition::full(5);
    t.check(
        g.min_winning().len() == 210,
        || format!("{} minimal winning coalitions, expected 210", g.min_winning().len()),
        Some(&g),
    );
    t.check(
        g.min_winning()
            .iter()
            .all(|m| permanent.is_subset_of(*m) && m.len() == 9),
        || "a minimal winning coalition is not 5 permanent + 4 others".into(),
        Some(&g),
    );
    let levels = desirability(&g).levels();
    t.check(
        levels == Some(vec![(0..5).collect(), (5..15).collect()]),
        || format!("desirability levels {levels:?}"),
        Some(&g),
    );
    t.check(is_weighted(&g), || "LP says not weighted".into(), Some(&g));
    let form = canonical_decompose(&g)?;
    let expected = CanonicalForm {
        heads: [vec![Head::U2; 5], vec![Head { n: 10, k: 4 }]].concat(),
        ..Default::default()
    };
    t.check(
        form.as_ref() == Some(&expected),
        || format!("canonical form {form:?}"),
        Some(&g),
    );
    Ok(t.finish(3, "Security Council game reproduction", start, None))
}

// ---------------------------------------------------------------------------
// 4. Composition laws.

/// Expected dummies of a composition from those of its factors.
fn expected_dummies(spec: &CompositionSpec) -> Coalition {
    let outer_d = spec.outer.dummies();
    let inner_part = if outer_d.contains(spec.pivot) {
        Coalition::full(spec.inner.n())
    } else {
        spec.inner.dummies()
    };
    spec.embed_outer(outer_d.without(spec.pivot)) | spec.embed_inner(inner_part)
}

fn check_composition(spec: &CompositionSpec, t: &mut Tally) -> Option<SimpleGame> {
    let c = match compose(spec) {
        Ok(c) => c,
        Err(e) => {
            t.fail(err_text(&e), Some(&spec.outer));
            return None;
        }
    };
    match compose_by_definition(spec) {
        Ok(d) => t.check(
            c == d,
            || format!("formula differs from definition (pivot {})", spec.pivot),
            Some(&spec.outer),
        ),
        Err(e) => t.fail(err_text(&e), Some(&spec.outer)),
    }
    t.check(
        c.dummies() == expected_dummies(spec),
        || "dummy preservation fails".into(),
        Some(&c),
    );
    Some(c)
}

pub fn criterion_4(opts: &HarnessOptions) -> Result<CriterionReport> {
    let start = Instant::now();
    let population = games_up_to(4);
    let mut rng = StdRng::seed_from_u64(opts.seed);
    let triples: Vec<(usize, usize, usize, usize, usize)> = (0..opts.triples)
        .map(|_| {
            let a = rng.gen_range(0..population.len());
            let b = rng.gen_range(0..population.len());
            let c = rng.gen_range(0..population.len());
            let g = rng.gen_range(0..population[a].n());
            let h = rng.gen_range(0..population[b].n());
            (a, g, b, h, c)
        })
        .collect();
    let mut t = par_tally(&triples, |&(a, g, b, h, c), t| {
        let (g1, g2, g3) = (&population[a], &population[b], &population[c]);
        let run = |t: &mut Tally| -> Result<()> {
            let left_inner = CompositionSpec::new(g1.clone(), g, g2.clone())?;
            let Some(l1) = check_composition(&left_inner, t) else {
                return Ok(());
            };
            let left = CompositionSpec::new(l1, g1.n() - 1 + h, g3.clone())?;
            let Some(lhs) = check_composition(&left, t) else {
                return Ok(());
            };
            let right_inner = CompositionSpec::new(g2.clone(), h, g3.clone())?;
            let Some(r1) = check_composition(&right_inner, t) else {
                return Ok(());
            };
            let right = CompositionSpec::new(g1.clone(), g, r1)?;
            let Some(rhs) = check_composition(&right, t) else {
                return Ok(());
            };
            t.check(lhs == rhs, || "associativity fails as equality".into(), Some(&lhs));
            t.check(
                isomorphic(&lhs, &rhs).is_some(),
                || "associativity fails up to isomorphism".into(),
                Some(&lhs),
            );
            Ok(())
        };
        if let Err(e) = run(t) {
            t.fail(err_text(&e), Some(g1));
        }
    });

    let small = games_up_to(3);
    let pairs: Vec<(usize, usize)> = (0..small.len())
        .flat_map(|i| (0..small.len()).map(move |j| (i, j)))
        .collect();
    t.merge(par_tally(&pairs, |&(i, j), t| {
        for g in 0..small[i].n() {
            match CompositionSpec::new(small[i].clone(), g, small[j].clone()) {
                Ok(spec) => {
                    check_composition(&spec, t);
                }
                Err(e) => t.fail(err_text(&e), Some(&small[i])),
            }
        }
    }));
    t.notes.push(format!(
        "{} random triples (seed {}), {} exhaustive pairs",
        opts.triples,
        opts.seed,
        pairs.len()
    ));
    Ok(t.finish(
        4,
        "composition laws: associativity, minimal winning formula, dummies",
        start,
        None,
    ))
}

// ---------------------------------------------------------------------------
// 5. Decompositions of weighted games.

pub fn criterion_5() -> Result<CriterionReport> {
    let start = Instant::now();
    let population = games_up_to(4);
    let mut t = par_tally(&population, |g, t| {
        if !is_weighted(g) {
            return;
        }
        match find_decompositions(g) {
            Ok(ds) => {
                for d in ds {
                    t.check(
                        is_weighted(&d.spec.outer) && is_weighted(&d.spec.inner),
                        || format!("weighted game with a non-weighted factor (support {})", d.support),
                        Some(g),
                    );
                }
            }
            Err(e) => t.fail(err_text(&e), Some(g)),
        }
    });
    let weighted_small: Vec<SimpleGame> = games_up_to(3).into_iter().filter(is_weighted).collect();
    let heads: Vec<(usize, usize)> = (1..=4).flat_map(|n| (1..=n).map(move |k| (n, k))).collect();
    t.merge(par_tally(&heads, |&(n, k), t| {
        let h = catalog::k_out_of_n(n, k).expect("valid");
        for g in &weighted_small {
            match CompositionSpec::new(h.clone(), n - 1, g.clone()).and_then(|s| compose(&s)) {
                Ok(c) => t.check(is_weighted(&c), || format!("H({n},{k}) ∘ G not weighted"), Some(g)),
                Err(e) => t.fail(err_text(&e), Some(g)),
            }
        }
    }));
    Ok(t.finish(
        5,
        "components of weighted compositions are weighted; H∘G is weighted",
        start,
        None,
    ))
}

// ---------------------------------------------------------------------------
// 6. Compositions of complete games.

fn is_oligarchy_or_anti(h: &SimpleGame) -> bool {
    h.min_winning().len() < 2 || h.min_winning().iter().all(|c| c.len() == 1)
}

/// The incompleteness lemma for one composition: every admissible `g′`
/// yields a validating certificate in each available branch.
fn check_not_complete(outer: &SimpleGame, g: usize, inner: &SimpleGame, t: &mut Tally) {
    let rel = desirability(outer);
    let dummies = outer.dummies();
    let spec = match CompositionSpec::new(outer.clone(), g, inner.clone()) {
        Ok(s) => s,
        Err(e) => return t.fail(err_text(&e), Some(outer)),
    };
    let composite = match compose(&spec) {
        Ok(c) => c,
        Err(e) => return t.fail(err_text(&e), Some(outer)),
    };
    for gp in 0..outer.n() {
        if gp == g || dummies.contains(gp) || !rel.strictly(g, gp) {
            continue;
        }
        t.check(
            !is_complete(&composite),
            || format!("composition over {g} complete although {g} ≻ {gp}"),
            Some(&composite),
        );
        for branch in [
            certificates::NotCompleteBranch::ContainsPivot,
            certificates::NotCompleteBranch::AvoidsPivot,
        ] {
            match certificates::not_complete_certificate(&spec, gp, Some(branch)) {
                Ok((cert, _)) => t.check(
                    trade::is_certificate_of_incompleteness(&composite, &cert).unwrap_or(false),
                    || format!("{branch:?} certificate for g={g}, g′={gp} does not validate"),
                    Some(&composite),
                ),
                Err(Error::Precondition(_)) => {}
                Err(e) => t.fail(err_text(&e), Some(&composite)),
            }
        }
    }
}

/// Clauses (i)-(iii) of the composition-over-a-least-desirable-player theorem.
fn check_three_cases(outer: &SimpleGame, g: usize, inner: &SimpleGame, t: &mut Tally) {
    let spec = match CompositionSpec::new(outer.clone(), g, inner.clone()) {
        Ok(s) => s,
        Err(e) => return t.fail(err_text(&e), Some(outer)),
    };
    let c = match compose(&spec) {
        Ok(c) => c,
        Err(e) => return t.fail(err_text(&e), Some(outer)),
    };
    let (rg, rh, rc) = (desirability(outer), desirability(inner), desirability(&c));
    let omap = spec.outer_map();
    let imap = spec.inner_map();
    t.check(
        rc.is_total(),
        || format!("composition over least desirable {g} is not complete"),
        Some(&c),
    );
    let outer_players: Vec<usize> = (0..outer.n()).filter(|&p| p != g).collect();
    for &x in &outer_players {
        for &y in &outer_players {
            let (cx, cy) = (omap[x].unwrap(), omap[y].unwrap());
            t.check(
                rg.geq(x, y) == rc.geq(cx, cy) && rg.strictly(x, y) == rc.strictly(cx, cy),
                || format!("clause (i) fails for outer players {x}, {y}"),
                Some(&c),
            );
        }
    }
    for x in 0..inner.n() {
        for y in 0..inner.n() {
            t.check(
                rh.geq(x, y) == rc.geq(imap[x], imap[y]) && rh.strictly(x, y) == rc.strictly(imap[x], imap[y]),
                || format!("clause (ii) fails for inner players {x}, {y}"),
                Some(&c),
            );
        }
    }
    let (passers, vetoers) = (inner.passers(), inner.vetoers());
    for &x in &outer_players {
        for (y, &cy) in imap.iter().enumerate() {
            let cx = omap[x].unwrap();
            t.check(
                rc.geq(cx, cy),
                || format!("clause (iii): outer {x} not ⪰ inner {y}"),
                Some(&c),
            );
            if !passers.contains(y) && !vetoers.contains(y) {
                t.check(
                    rc.strictly(cx, cy),
                    || format!("clause (iii): outer {x} not ≻ inner {y}"),
                    Some(&c),
                );
            }
        }
    }
}

pub fn criterion_6() -> Result<CriterionReport> {
    let start = Instant::now();
    let small = games_up_to(3);
    let complete_small: Vec<&SimpleGame> = small.iter().filter(|g| is_complete(g)).collect();
    let inners_lemma: Vec<&SimpleGame> = small.iter().filter(|h| !is_oligarchy_or_anti(h)).collect();

    let mut t = par_tally(&small, |g, t| {
        for pivot in 0..g.n() {
            for h in &inners_lemma {
                check_not_complete(g, pivot, h, t);
            }
        }
    });

    t.merge(par_tally(&complete_small, |g, t| {
        let rel = desirability(g);
        let dummies = g.dummies();
        let least = rel.least_desirable();
        for &pivot in least.iter().filter(|&&p| !dummies.contains(p)) {
            for h in &complete_small {
                check_three_cases(g, pivot, h, t);
            }
        }
    }));

    let outers = catalog::indecomposable_grid(GridLimits {
        max_level_size: 3,
        max_threshold: 5,
        max_players: 7,
    });
    let catalog_inners = [
        catalog::k_out_of_n(3, 2)?,
        catalog::hier_disjunctive(&[1, 2], &[1, 2]).unwrap_or(catalog::k_out_of_n(4, 2)?),
    ];
    let simple_inners = [
        catalog::anti_unanimity(2)?,
        catalog::unanimity(2)?,
        catalog::k_out_of_n(3, 2)?,
    ];
    t.merge(par_tally(&outers, |p, t| {
        let Ok(g) = p.build(Mode::Indecomposable) else {
            return t.fail(format!("{p} does not build"), None);
        };
        let levels = consecutive_levels(&p.n);
        for level in &levels {
            let pivot = *level.last().unwrap();
            for h in &catalog_inners {
                check_not_complete(&g, pivot, h, t);
            }
        }
        let pivot = *levels.last().unwrap().last().unwrap();
        for h in &simple_inners {
            check_three_cases(&g, pivot, h, t);
        }
    }));
    Ok(t.finish(
        6,
        "compositions of complete games: incompleteness lemma and desirability transfer",
        start,
        None,
    ))
}

// ---------------------------------------------------------------------------
// 7. One-level games.

pub fn criterion_7() -> Result<CriterionReport> {
    let start = Instant::now();
    let mut t = Tally::new();
    for n in 3..=5 {
        for k in 2..n {
            let h = catalog::k_out_of_n(n, k)?;
            t.check(
                find_decompositions(&h)?.is_empty(),
                || format!("H({n},{k}) decomposes"),
                Some(&h),
            );
        }
    }
    // U_n and A_n for n > 2 do decompose
    for n in 3..=5 {
        for h in [catalog::unanimity(n)?, catalog::anti_unanimity(n)?] {
            t.check(
                !find_decompositions(&h)?.is_empty(),
                || format!("one-level game on {n} players does not decompose"),
                Some(&h),
            );
        }
    }

    let small: Vec<SimpleGame> = games_up_to(3).into_iter().filter(|g| g.dummies().is_empty()).collect();
    let no_passers: Vec<&SimpleGame> = small.iter().filter(|g| g.passers().is_empty()).collect();
    let no_vetoers: Vec<&SimpleGame> = small.iter().filter(|g| g.vetoers().is_empty()).collect();
    let heads: Vec<(usize, usize)> = (3..=4).flat_map(|n| (2..n).map(move |k| (n, k))).collect();
    t.merge(par_tally(&heads, |&(n, k), t| {
        let h = catalog::k_out_of_n(n, k).unwrap();
        for &g1 in &no_passers {
            let Ok(c) = compose(&CompositionSpec::new(h.clone(), n - 1, g1.clone()).unwrap()) else {
                continue;
            };
            let ds = match find_decompositions(&c) {
                Ok(ds) => ds,
                Err(e) => return t.fail(err_text(&e), Some(&c)),
            };
            for d in ds {
                let outer_tag = catalog::classify(&d.spec.outer);
                let is_h_head = matches!(&outer_tag, CatalogTag::Catalog(p) if p.family == Family::H && p.k[0] > 1 && p.k[0] < p.n[0]);
                if !is_h_head || !d.spec.inner.passers().is_empty() {
                    continue;
                }
                let p = outer_tag.params().unwrap();
                t.check(
                    p.n[0] == n && p.k[0] == k && isomorphic(&d.spec.inner, g1).is_some(),
                    || format!("H({n},{k}) ∘ G also equals {p} ∘ G′"),
                    Some(&c),
                );
            }
        }
    }));
    t.merge(par_tally(&[2usize, 3, 4], |&m, t| {
        let u = catalog::unanimity(m).unwrap();
        for &g1 in &no_vetoers {
            let c = compose(&CompositionSpec::new(u.clone(), m - 1, g1.clone()).unwrap()).unwrap();
            let v = c.vetoers();
            t.check(
                v.len() == m - 1,
                || format!("U{m} ∘ G has {} vetoers", v.len()),
                Some(&c),
            );
            if v.len() == m - 1 {
                let r = c.reduced_game(v).unwrap();
                t.check(
                    isomorphic(&r.game, g1).is_some(),
                    || format!("U{m} ∘ G: reduced game differs from G"),
                    Some(&c),
                );
            }
        }
    }));
    Ok(t.finish(
        7,
        "k-out-of-n games are indecomposable and heads are unique",
        start,
        None,
    ))
}

// ---------------------------------------------------------------------------
// 8. Catalog of indecomposable ideal weighted games.

pub fn criterion_8() -> Result<CriterionReport> {
    let start = Instant::now();
    let grid = catalog::indecomposable_grid(GridLimits::default());
    let mut t = par_tally(&grid, |p, t| {
        let g = match p.build(Mode::Indecomposable) {
            Ok(g) => g,
            Err(e) => return t.fail(format!("{p}: {}", err_text(&e)), None),
        };
        t.check(is_weighted(&g), || format!("{p} is not weighted"), Some(&g));
        t.check(is_complete(&g), || format!("{p} is not complete"), Some(&g));
        match find_decompositions(&g) {
            Ok(ds) => t.check(ds.is_empty(), || format!("{p} decomposes"), Some(&g)),
            Err(e) => t.fail(err_text(&e), Some(&g)),
        }
        t.check(g.dummies().is_empty(), || format!("{p} has dummies"), Some(&g));
        let tag = catalog::classify(&g);
        t.check(
            tag.params() == Some(p),
            || format!("{p} classified as {tag:?}"),
            Some(&g),
        );
    });
    t.notes.push(format!("{} catalog games", grid.len()));

    // B1 with n2 = 2 is H_{n1+1,k1+1} ∘ A2
    for p in catalog::grid(Family::B1, Mode::Listed, GridLimits::default())
        .into_iter()
        .filter(|p| p.n[1] == 2)
    {
        let g = p.build(Mode::Listed)?;
        let (n1, k1) = (p.n[0], p.k[0]);
        let f = compose(&CompositionSpec::new(
            catalog::k_out_of_n(n1 + 1, k1 + 1)?,
            n1,
            catalog::anti_unanimity(2)?,
        )?)?;
        t.check(
            isomorphic(&g, &f).is_some(),
            || format!("{p} is not H({},{}) ∘ A2", n1 + 1, k1 + 1),
            Some(&g),
        );
        t.check(
            !find_decompositions(&g)?.is_empty(),
            || format!("{p} does not decompose"),
            Some(&g),
        );
    }
    // U_n ∘ U_m and A_n ∘ A_m
    for n in 2..=4 {
        for m in 2..=4 {
            let uu = compose(&CompositionSpec::new(
                catalog::unanimity(n)?,
                0,
                catalog::unanimity(m)?,
            )?)?;
            t.check(
                uu == catalog::unanimity(n + m - 1)?,
                || format!("U{n} ∘ U{m} ≠ U{}", n + m - 1),
                Some(&uu),
            );
            let aa = compose(&CompositionSpec::new(
                catalog::anti_unanimity(n)?,
                0,
                catalog::anti_unanimity(m)?,
            )?)?;
            t.check(
                aa == catalog::anti_unanimity(n + m - 1)?,
                || format!("A{n} ∘ A{m} ≠ A{}", n + m - 1),
                Some(&aa),
            );
        }
    }
    for g in [catalog::unanimity(2)?, catalog::anti_unanimity(2)?] {
        t.check(
            find_decompositions(&g)?.is_empty(),
            || "two-player one-level game decomposes".into(),
            Some(&g),
        );
    }
    // T2 is a disjunctive game composed with a threshold game over level 2
    for p in catalog::grid(Family::T2, Mode::Listed, GridLimits::default()) {
        let g = p.build(Mode::Listed)?;
        let (n, k) = (&p.n, &p.k);
        let (k1, k2, k3) = (k[0], k[1], k[2]);
        let outer = game_from_counts(&[n[0], n[1] + 1], |l| l[0] >= k1 || l[0] + l[1] > k2)?;
        let inner = catalog::k_out_of_n(n[2], k3 - k2)?;
        let f = compose(&CompositionSpec::new(outer, n[0] + n[1], inner)?)?;
        t.check(
            isomorphic(&g, &f).is_some(),
            || format!("{p} is not the stated composition"),
            Some(&g),
        );
        t.check(
            !find_decompositions(&g)?.is_empty(),
            || format!("{p} does not decompose"),
            Some(&g),
        );
    }
    Ok(t.finish(
        8,
        "catalog games are weighted, complete and indecomposable; listed exceptions decompose",
        start,
        None,
    ))
}

// ---------------------------------------------------------------------------
// 9. Which compositions of indecomposable games are weighted.

fn theorem_inners() -> Result<Vec<(String, SimpleGame, bool)>> {
    let mut v = vec![
        ("A2".to_string(), catalog::anti_unanimity(2)?, true),
        ("A3".to_string(), catalog::anti_unanimity(3)?, true),
        ("U2".to_string(), catalog::unanimity(2)?, false),
        ("U3".to_string(), catalog::unanimity(3)?, false),
        ("H(3,2)".to_string(), catalog::k_out_of_n(3, 2)?, false),
    ];
    for p in [
        CatalogParams::new(Family::B2, vec![2, 3], vec![2, 3]),
        CatalogParams::new(Family::B1, vec![2, 3], vec![1, 3]),
    ] {
        v.push((p.to_string(), p.build(Mode::Indecomposable)?, false));
    }
    Ok(v)
}

/// Limits for the outer games in the composition sweep.
pub const THEOREM_GRID: GridLimits = GridLimits {
    max_level_size: 4,
    max_threshold: 6,
    max_players: 10,
};

/// One composition of the sweep and its verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct CompositionVerdict {
    pub outer: String,
    pub pivot_level: usize,
    pub inner: String,
    pub expected: bool,
    pub weighted: bool,
    pub recognized: bool,
}

/// Every composition in the sweep with the predicted and observed verdicts.
pub fn composition_sweep() -> Result<Vec<CompositionVerdict>> {
    let inners = theorem_inners()?;
    let outers = catalog::indecomposable_grid(THEOREM_GRID);
    let m = inners.len();
    let jobs: Vec<(&CatalogParams, usize, usize)> = outers
        .iter()
        .flat_map(|p| (0..p.n.len()).flat_map(move |l| (0..m).map(move |i| (p, l, i))))
        .filter(|&(p, _, i)| p.n_players() + inners[i].1.n() - 1 <= 12)
        .collect();
    jobs.par_iter()
        .map(|&(p, level, i)| {
            let (name, inner, anti) = &inners[i];
            let outer = p.build(Mode::Indecomposable)?;
            let pivot = *consecutive_levels(&p.n)[level].last().unwrap();
            let c = compose(&CompositionSpec::new(outer, pivot, inner.clone())?)?;
            let expected = p.family == Family::H || (p.family == Family::B2 && level == 1 && *anti);
            Ok(CompositionVerdict {
                outer: p.to_string(),
                pivot_level: level + 1,
                inner: name.clone(),
                expected,
                weighted: is_weighted(&c),
                recognized: canonical::recognize_ideal_weighted(&c)?,
            })
        })
        .collect()
}

fn certificate_grid(case: CaseId) -> Vec<CatalogParams> {
    let limits = GridLimits {
        max_level_size: 4,
        max_threshold: 7,
        max_players: 9,
    };
    match case.family() {
        Some(f) => catalog::grid(f, Mode::Indecomposable, limits),
        None => [Family::B1, Family::B2, Family::B3, Family::T1, Family::T3]
            .into_iter()
            .flat_map(|f| catalog::grid(f, Mode::Indecomposable, limits))
            .collect(),
    }
}

/// Replays `cases` over the certificate grid with inner sizes 2 and 3.
fn replay_cases(cases: &[CaseId], t: &mut Tally) {
    let jobs: Vec<(CaseId, CatalogParams, usize)> = cases
        .iter()
        .flat_map(|&c| {
            certificate_grid(c)
                .into_iter()
                .flat_map(move |p| [2usize, 3].map(|s| (c, p.clone(), s)))
        })
        .filter(|(c, _, s)| !(*c == CaseId::NotComplete && *s == 2))
        .collect();
    let results: Vec<(CaseId, Variant, Tally)> = jobs
        .par_iter()
        .map(|(case, p, s)| {
            let mut t = Tally::new();
            let mut variant = Variant::Standard;
            let inner = case.default_inner(*s).expect("sizes 2 and 3 are valid");
            match certificates::certificate_for(*case, p, &inner) {
                Ok(cert) => {
                    variant = cert.variant;
                    t.check(
                        cert.validate().unwrap_or(false),
                        || format!("{case} {p}: certificate does not validate"),
                        Some(&cert.composite),
                    );
                    match cert.kind {
                        CertificateKind::Nonweightedness => t.check(
                            !is_weighted(&cert.composite),
                            || format!("{case} {p}: LP finds weights"),
                            Some(&cert.composite),
                        ),
                        CertificateKind::Incompleteness => t.check(
                            !is_complete(&cert.composite),
                            || format!("{case} {p}: composite is complete"),
                            Some(&cert.composite),
                        ),
                    }
                }
                Err(e) => t.fail(format!("{case} {p} inner size {s}: {}", err_text(&e)), None),
            }
            (*case, variant, t)
        })
        .collect();
    let mut corrected: std::collections::BTreeMap<&'static str, usize> = Default::default();
    for (case, variant, part) in results {
        if variant == Variant::Corrected && part.failure_count == 0 {
            *corrected.entry(case.name()).or_default() += 1;
        }
        t.merge(part);
    }
    for (name, count) in corrected {
        t.notes
            .push(format!("{name}: {count} instances used the corrected construction"));
    }
}

pub const PRIMARY_CASES: [CaseId; 10] = [
    CaseId::B1Level2,
    CaseId::B2Level2,
    CaseId::B3Level2,
    CaseId::T1Level3,
    CaseId::T3Level3,
    CaseId::B1An,
    CaseId::B3An,
    CaseId::T1An,
    CaseId::T3An,
    CaseId::NotComplete,
];

pub const TRIPARTITE_CASES: [CaseId; 14] = [
    CaseId::X1X2B1,
    CaseId::X1X2B2,
    CaseId::X1X2B3,
    CaseId::X1X2T1,
    CaseId::X1X2T3,
    CaseId::X1X2T1Level2,
    CaseId::X1X2T3Level2,
    CaseId::UnB1,
    CaseId::UnB2,
    CaseId::UnB3,
    CaseId::UnT1Level1,
    CaseId::UnT1Level2,
    CaseId::UnT3Level1,
    CaseId::UnT3Level2,
];

pub fn criterion_9() -> Result<CriterionReport> {
    let start = Instant::now();
    let mut t = Tally::new();
    let verdicts = composition_sweep()?;
    for v in &verdicts {
        t.check(
            v.weighted == v.expected,
            || {
                format!(
                    "{} ∘ {} over level {}: weighted = {}, predicted {}",
                    v.outer, v.inner, v.pivot_level, v.weighted, v.expected
                )
            },
            None,
        );
        t.check(
            v.recognized == v.expected,
            || {
                format!(
                    "{} ∘ {} over level {}: recognized = {}, predicted {}",
                    v.outer, v.inner, v.pivot_level, v.recognized, v.expected
                )
            },
            None,
        );
    }
    t.notes.push(format!("{} compositions", verdicts.len()));
    replay_cases(&PRIMARY_CASES, &mut t);
    Ok(t.finish(
        9,
        "weighted compositions of indecomposable games and their certificates",
        start,
        Some(Duration::from_secs(300)),
    ))
}

// ---------------------------------------------------------------------------
// 10. Canonical decomposition.

pub fn canonical_grid() -> Result<Vec<CanonicalForm>> {
    let head_set = [
        Head::A2,
        Head::U2,
        Head { n: 3, k: 2 },
        Head { n: 4, k: 2 },
        Head { n: 4, k: 3 },
    ];
    let mut head_seqs: Vec<Vec<Head>> = vec![vec![]];
    for &a in &head_set {
        head_seqs.push(vec![a]);
        for &b in &head_set {
            head_seqs.push(vec![a, b]);
        }
    }
    let cores: Vec<CatalogParams> = [Family::B1, Family::B2, Family::B3, Family::T1, Family::T3]
        .into_iter()
        .flat_map(|f| {
            catalog::grid(
                f,
                Mode::Indecomposable,
                GridLimits {
                    max_level_size: 3,
                    max_threshold: 5,
                    max_players: 8,
                },
            )
        })
        .collect();
    let mut bodies: Vec<(Option<CatalogParams>, Option<usize>)> = vec![(None, None)];
    for c in cores {
        if c.family == Family::B2 {
            for tail in 2..=3 {
                bodies.push((Some(c.clone()), Some(tail)));
            }
        }
        bodies.push((Some(c), None));
    }
    let mut out = Vec::new();
    for heads in &head_seqs {
        for (core, tail) in &bodies {
            let f = CanonicalForm {
                heads: heads.clone(),
                core: core.clone(),
                tail: *tail,
            };
            if f.n_players() <= 12 {
                out.push(f);
            }
        }
    }
    Ok(out)
}

pub fn criterion_10() -> Result<CriterionReport> {
    let start = Instant::now();
    let forms = canonical_grid()?;
    let mut t = par_tally(&forms, |f, t| {
        let g = match build_from_canonical(f) {
            Ok(g) => g,
            Err(e) => return t.fail(format!("{f}: {}", err_text(&e)), None),
        };
        t.check(is_weighted(&g), || format!("{f} is not weighted"), Some(&g));
        t.check(is_complete(&g), || format!("{f} is not complete"), Some(&g));
        match canonical_decompose(&g) {
            Ok(back) => t.check(
                back.as_ref() == Some(f),
                || format!("{f} decomposes as {back:?}"),
                Some(&g),
            ),
            Err(e) => t.fail(format!("{f}: {}", err_text(&e)), Some(&g)),
        }
        if g.n() <= 10 {
            match canonical::verify_uniqueness(&g) {
                Ok(u) => t.check(u, || format!("{f}: decomposition paths disagree"), Some(&g)),
                Err(e) => t.fail(format!("{f}: {}", err_text(&e)), Some(&g)),
            }
        }
    });
    t.notes.push(format!(
        "{} canonical forms; path uniqueness checked up to 10 players",
        forms.len()
    ));

    // H ∘ G is never B2 ∘ A_n
    let b2s = catalog::grid(
        Family::B2,
        Mode::Indecomposable,
        GridLimits {
            max_level_size: 3,
            max_threshold: 4,
            max_players: 6,
        },
    );
    let mut tails = Vec::new();
    for p in &b2s {
        for n in 2..=3 {
            let f = CanonicalForm {
                heads: vec![],
                core: Some(p.clone()),
                tail: Some(n),
            };
            tails.push(build_from_canonical(&f)?);
        }
    }
    let h_forms: Vec<SimpleGame> = forms
        .iter()
        .filter(|f| !f.heads.is_empty() && f.n_players() <= 9)
        .map(build_from_canonical)
        .collect::<Result<_>>()?;
    t.merge(par_tally(&h_forms, |h, t| {
        for b in tails.iter().filter(|b| b.n() == h.n()) {
            t.check(
                isomorphic(h, b).is_none(),
                || "H ∘ G isomorphic to B2 ∘ A_n".into(),
                Some(h),
            );
        }
    }));
    Ok(t.finish(10, "canonical decomposition round trip and uniqueness", start, None))
}

// ---------------------------------------------------------------------------
// 11. Tripartite conditions and the remaining certificates.

pub fn criterion_11() -> Result<CriterionReport> {
    let start = Instant::now();
    let mut params: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for n in (0..3).map(|_| 1..=4usize).multi_cartesian_product() {
        for k in (0..3).map(|_| 1..=6usize).multi_cartesian_product() {
            params.push((n.clone(), k));
        }
    }
    let mut t = par_tally(&params, |(n, k), t| {
        t.check(
            catalog::delta1_conditions_iff_tripartite(n, k),
            || format!("Δ1 n={n:?} k={k:?}"),
            None,
        );
        if k[0] < k[1] && n[1] <= k[1] - k[0] {
            t.check(
                catalog::delta2_conditions_iff_tripartite(n, k),
                || format!("Δ2 n={n:?} k={k:?}"),
                None,
            );
        }
    });
    t.notes.push(format!("{} parameter vectors swept", params.len()));
    replay_cases(&TRIPARTITE_CASES, &mut t);
    Ok(t.finish(
        11,
        "tripartite conditions and the remaining composition certificates",
        start,
        None,
    ))
}

// ---------------------------------------------------------------------------
// Suites.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Elgot,
    Completeness,
    Composition,
    TheoremWhen,
    MainTheorem,
    Appendix,
    Census,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = [
        "elgot",
        "completeness",
        "composition",
        "theorem-when",
        "main-theorem",
        "appendix",
        "census",
        "all",
    ];

    /// Criteria run by the suite.
    pub fn criteria(self) -> Vec<u8> {
        match self {
            Suite::Elgot => vec![1, 3],
            Suite::Completeness => vec![2],
            Suite::Composition => vec![4, 5, 6, 7],
            Suite::TheoremWhen => vec![8, 9],
            Suite::MainTheorem => vec![10],
            Suite::Appendix => vec![11],
            Suite::Census => vec![],
            Suite::All => (1..=11).collect(),
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "elgot" => Suite::Elgot,
            "completeness" => Suite::Completeness,
            "composition" => Suite::Composition,
            "theorem-when" => Suite::TheoremWhen,
            "main-theorem" => Suite::MainTheorem,
            "appendix" => Suite::Appendix,
            "census" => Suite::Census,
            "all" => Suite::All,
            _ => {
                return Err(Error::InvalidInput(format!(
                    "unknown suite {s}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

pub fn run_criterion(id: u8, opts: &HarnessOptions) -> Result<CriterionReport> {
    match id {
        1 => criterion_1(opts),
        2 => criterion_2(opts),
        3 => criterion_3(),
        4 => criterion_4(opts),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        11 => criterion_11(),
        _ => Err(Error::InvalidInput(format!("no criterion {id}"))),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub criteria: Vec<CriterionReport>,
    /// Census consistency results (census suite only).
    pub census: Option<CensusSummary>,
}

pub fn run_suite(suite: Suite, opts: &HarnessOptions) -> Result<SuiteReport> {
    let criteria = suite
        .criteria()
        .into_iter()
        .map(|id| run_criterion(id, opts))
        .collect::<Result<Vec<_>>>()?;
    let census = if suite == Suite::Census {
        Some(summarize(&census(opts.n, opts.allow_five)?))
    } else {
        None
    };
    let passed = criteria.iter().all(|c| c.passed) && census.as_ref().is_none_or(|c| c.inconsistent.is_empty());
    Ok(SuiteReport {
        suite: format!("{suite:?}").to_lowercase(),
        passed,
        criteria,
        census,
    })
}

// ---------------------------------------------------------------------------
// Census.

#[derive(Debug, Clone, Serialize)]
pub struct CensusRecord {
    pub id: String,
    pub n: usize,
    pub trivial_full: bool,
    pub has_dummies: bool,
    pub complete: bool,
    pub weighted: bool,
    pub indecomposable: bool,
    pub catalog: String,
    /// `None` when the question does not apply (trivially full or dummies).
    pub recognized: Option<bool>,
    pub canonical: Option<String>,
}

impl CensusRecord {
    pub fn consistent(&self) -> bool {
        (!self.weighted || self.complete) && (self.recognized != Some(true) || self.weighted)
    }
}

pub fn census_record(g: &SimpleGame) -> Result<CensusRecord> {
    let trivial_full = g.is_trivially_full();
    let has_dummies = !g.dummies().is_empty();
    let (recognized, canonical) = if trivial_full || has_dummies {
        (None, None)
    } else {
        let f = canonical_decompose(g)?;
        (Some(f.is_some()), f.map(|f| f.to_string()))
    };
    Ok(CensusRecord {
        id: game_id(g),
        n: g.n(),
        trivial_full,
        has_dummies,
        complete: is_complete(g),
        weighted: is_weighted(g),
        indecomposable: find_decompositions(g)?.is_empty(),
        catalog: match catalog::classify(g) {
            CatalogTag::Catalog(p) => p.to_string(),
            CatalogTag::NotInCatalog => String::new(),
        },
        recognized,
        canonical,
    })
}

pub fn census(n: usize, allow_five: bool) -> Result<Vec<CensusRecord>> {
    let games: Vec<SimpleGame> = enumerate_games(n, allow_five)?.collect();
    games.par_iter().map(census_record).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusSummary {
    pub games: usize,
    pub complete: usize,
    pub weighted: usize,
    pub recognized: usize,
    /// Weighted games without dummies that are not recognized as ideal.
    pub weighted_not_ideal: Vec<String>,
    pub inconsistent: Vec<String>,
}

pub fn summarize(records: &[CensusRecord]) -> CensusSummary {
    CensusSummary {
        games: records.len(),
        complete: records.iter().filter(|r| r.complete).count(),
        weighted: records.iter().filter(|r| r.weighted).count(),
        recognized: records.iter().filter(|r| r.recognized == Some(true)).count(),
        weighted_not_ideal: records
            .iter()
            .filter(|r| r.weighted && r.recognized == Some(false))
            .map(|r| r.id.clone())
            .collect(),
        inconsistent: records
            .iter()
            .filter(|r| !r.consistent())
            .map(|r| r.id.clone())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn security_council_criterion() {
        assert!(criterion_3().unwrap().passed);
    }

    #[test]
    fn census_small() {
        let r = census(2, false).unwrap();
        assert_eq!(r.len(), 5);
        assert!(r.iter().all(CensusRecord::consistent));
        assert_eq!(r.iter().filter(|c| c.trivial_full).count(), 1);
    }

    #[test]
    fn suite_names_parse() {
        for name in Suite::NAMES {
            assert!(name.parse::<Suite>().is_ok());
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
