//! Exact weightedness decision, weight synthesis and Farkas certificates.
//!
//! A game is weighted iff the system
//!
//! ```text
//!   Σ_{i∈M} wᵢ − q ≥ 0     for every minimal winning M
//!   q − Σ_{i∈L} wᵢ ≥ 1     for every maximal losing L
//!   w ≥ 0, q ≥ 0
//! ```
//!
//! is feasible. We solve its Farkas alternative as an LP whose size is
//! `(n + 2) × (#constraints)`; the optimal duals give the weights, and an
//! optimal primal with positive value gives multipliers that turn into a
//! trading transform.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::SimpleGame;
use crate::lp::{self, LpOutcome, Rational};
use crate::trade::{self, TradingTransform};

/// `[q; w₁..w_n]` with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedRepresentation {
    pub quota: Rational,
    pub weights: Vec<Rational>,
    pub integer_form: Option<IntegerForm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerForm {
    pub quota: BigInt,
    pub weights: Vec<BigInt>,
}

impl WeightedRepresentation {
    /// Builds a representation and attaches its denominator-cleared form.
    pub fn new(quota: Rational, weights: Vec<Rational>) -> Self {
        let integer_form = Some(integer_form(&quota, &weights));
        WeightedRepresentation {
            quota,
            weights,
            integer_form,
        }
    }

    pub fn from_integers(quota: i64, weights: &[i64]) -> Self {
        let r = |v: i64| Rational::from_integer(v.into());
        WeightedRepresentation::new(r(quota), weights.iter().map(|&w| r(w)).collect())
    }

    pub fn weight_of(&self, x: Coalition) -> Rational {
        x.members().map(|p| self.weights[p].clone()).sum()
    }

    /// The game `X wins ⟺ w(X) ≥ q`.
    pub fn to_game(&self) -> Result<SimpleGame> {
        if self.weights.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidInput("negative weight".into()));
        }
        SimpleGame::from_predicate(self.weights.len(), |x| self.weight_of(x) >= self.quota)
    }
}

fn integer_form(quota: &Rational, weights: &[Rational]) -> IntegerForm {
    let lcm = weights
        .iter()
        .chain(std::iter::once(quota))
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scale = |v: &Rational| (v * Rational::from_integer(lcm.clone())).to_integer();
    IntegerForm {
        quota: scale(quota),
        weights: weights.iter().map(scale).collect(),
    }
}

enum Separation {
    Weighted(WeightedRepresentation),
    /// Multipliers on the minimal winning and maximal losing constraints.
    Infeasible {
        winning: Vec<(Coalition, Rational)>,
        losing: Vec<(Coalition, Rational)>,
    },
}

fn separate(game: &SimpleGame) -> Separation {
    let n = game.n();
    let winning = game.min_winning().to_vec();
    let losing = game.maximal_losing();
    let rows = winning.len() + losing.len();
    let zero = Rational::zero;
    let one = || Rational::from_integer(BigInt::one());

    // Columns are the primal constraints; rows are primal variables w₁..w_n, q
    // followed by the normalisation row.
    let mut a = vec![vec![zero(); rows]; n + 2];
    for (r, m) in winning.iter().enumerate() {
        for p in m.members() {
            a[p][r] = one();
        }
        a[n][r] = -one();
    }
    for (k, l) in losing.iter().enumerate() {
        let r = winning.len() + k;
        for p in l.members() {
            a[p][r] = -one();
        }
        a[n][r] = one();
        a[n + 1][r] = one();
    }
    let mut b = vec![zero(); n + 2];
    b[n + 1] = one();
    let c: Vec<Rational> = (0..rows)
        .map(|r| if r < winning.len() { zero() } else { one() })
        .collect();

    match lp::maximize(&a, &b, &c) {
        LpOutcome::Optimal { value, primal, dual } => {
            if value.is_zero() {
                let weights = dual[..n].to_vec();
                let quota = dual[n].clone();
                Separation::Weighted(WeightedRepresentation::new(quota, weights))
            } else {
                let (pw, pl) = primal.split_at(winning.len());
                Separation::Infeasible {
                    winning: winning.into_iter().zip(pw.iter().cloned()).collect(),
                    losing: losing.into_iter().zip(pl.iter().cloned()).collect(),
                }
            }
        }
        // the normalisation row bounds the objective
        LpOutcome::Unbounded => unreachable!("weightedness LP is bounded"),
    }
}

/// An exact weighted representation, or `None` when the game is not weighted.
pub fn synthesize_weights(game: &SimpleGame) -> Option<WeightedRepresentation> {
    match separate(game) {
        Separation::Weighted(rep) => Some(rep),
        Separation::Infeasible { .. } => None,
    }
}

pub fn is_weighted(game: &SimpleGame) -> bool {
    synthesize_weights(game).is_some()
}

/// Checks `X wins ⟺ w(X) ≥ q` on minimal winning and maximal losing
/// coalitions, which suffices for nonnegative weights.
pub fn verify_representation(game: &SimpleGame, rep: &WeightedRepresentation) -> Result<bool> {
    if rep.weights.len() != game.n() {
        return Err(Error::InvalidInput(format!(
            "{} weights for {} players",
            rep.weights.len(),
            game.n()
        )));
    }
    if rep.weights.iter().any(|w| w.is_negative()) {
        return Ok(false);
    }
    let winning_ok = game.min_winning().iter().all(|&m| rep.weight_of(m) >= rep.quota);
    let losing_ok = game.maximal_losing().into_iter().all(|l| rep.weight_of(l) < rep.quota);
    Ok(winning_ok && losing_ok)
}

/// Turns LP infeasibility multipliers into a certificate of nonweightedness.
///
/// After clearing denominators, the winning side takes `λ_M` copies of each
/// minimal winning `M` and the losing side `μ_L` copies of each maximal losing
/// `L`, padded with empty coalitions. The losing side then covers every player
/// at least as often as the winning side, and surplus occurrences are deleted.
pub fn farkas_certificate(game: &SimpleGame) -> Result<TradingTransform> {
    let Separation::Infeasible { winning, losing } = separate(game) else {
        return Err(Error::Precondition("game is weighted".into()));
    };
    let denom_lcm = winning
        .iter()
        .chain(&losing)
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let scale = Rational::from_integer(denom_lcm);
    let count = |v: &Rational| -> Result<usize> {
        (v * &scale)
            .to_integer()
            .to_usize()
            .ok_or_else(|| Error::Precondition("certificate multiplicity too large".into()))
    };

    let mut x = Vec::new();
    for (m, lambda) in &winning {
        x.extend(std::iter::repeat_n(*m, count(lambda)?));
    }
    let mut y = Vec::new();
    for (l, mu) in &losing {
        y.extend(std::iter::repeat_n(*l, count(mu)?));
    }
    if y.len() > x.len() {
        return Err(Error::Precondition("multipliers violate the quota column".into()));
    }
    y.resize(x.len(), Coalition::EMPTY);

    for p in 0..game.n() {
        let have_x = x.iter().filter(|c| c.contains(p)).count();
        let mut surplus = y.iter().filter(|c| c.contains(p)).count() as isize - have_x as isize;
        if surplus < 0 {
            return Err(Error::Precondition(format!("player {p} undercovered by multipliers")));
        }
        for c in y.iter_mut() {
            if surplus == 0 {
                break;
            }
            if c.contains(p) {
                *c = c.without(p);
                surplus -= 1;
            }
        }
    }

    let t = TradingTransform::new(x, y);
    if !trade::is_certificate_of_nonweightedness(game, &t)? {
        return Err(Error::Precondition("extracted transform failed validation".into()));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn c(players: &[usize]) -> Coalition {
        Coalition::from_players(players.iter().copied())
    }

    #[test]
    fn k_out_of_n_checks() {
        let h32 = catalog::k_out_of_n(3, 2).unwrap();
        assert!(verify_representation(&h32, &WeightedRepresentation::from_integers(2, &[1, 1, 1])).unwrap());
        assert!(!verify_representation(&h32, &WeightedRepresentation::from_integers(2, &[1, 1, 0])).unwrap());
        assert!(verify_representation(&h32, &WeightedRepresentation::from_integers(2, &[1, 1])).is_err());

        let rep = synthesize_weights(&h32).unwrap();
        assert!(verify_representation(&h32, &rep).unwrap());
        assert!(is_weighted(&catalog::unanimity(2).unwrap()));
    }

    #[test]
    fn two_pair_game_is_not_weighted() {
        let g = SimpleGame::new(4, vec![c(&[0, 1]), c(&[2, 3])]).unwrap();
        assert!(synthesize_weights(&g).is_none());
        let t = farkas_certificate(&g).unwrap();
        assert_eq!(t.len(), 2);
        assert!(trade::is_certificate_of_nonweightedness(&g, &t).unwrap());
        assert!(farkas_certificate(&catalog::k_out_of_n(3, 2).unwrap()).is_err());
    }

    #[test]
    fn trivially_full_game_has_zero_quota() {
        let g = SimpleGame::new(2, vec![Coalition::EMPTY]).unwrap();
        let rep = synthesize_weights(&g).unwrap();
        assert!(rep.quota.is_zero());
        assert!(verify_representation(&g, &rep).unwrap());
    }

    #[test]
    fn integer_form_clears_denominators() {
        let half = Rational::new(1.into(), 2.into());
        let rep = WeightedRepresentation::new(Rational::from_integer(1.into()), vec![half.clone(), half]);
        let int = rep.integer_form.unwrap();
        assert_eq!(int.quota, BigInt::from(2));
        assert_eq!(int.weights, vec![BigInt::from(1), BigInt::from(1)]);
    }
}
