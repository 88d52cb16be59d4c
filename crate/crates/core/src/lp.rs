//! Dense exact-rational simplex for `max cᵀy  s.t.  A y ≤ b, y ≥ 0` with
//! `b ≥ 0`, so the all-slack basis is feasible and no phase one is needed.
//! Bland's rule guarantees termination on degenerate problems.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Rational = BigRational;

#[derive(Debug, Clone)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        /// Optimal `y`.
        primal: Vec<Rational>,
        /// Optimal multipliers of the `≤` rows.
        dual: Vec<Rational>,
    },
    Unbounded,
}

/// Solves the LP described in the module docs. `a` is row-major with one row
/// per constraint.
pub fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let nvars = c.len();
    assert_eq!(b.len(), m);
    assert!(b.iter().all(|v| !v.is_negative()), "rhs must be nonnegative");
    let ncols = nvars + m;

    let mut tab: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(r, row)| {
            assert_eq!(row.len(), nvars);
            let mut full = row.clone();
            full.extend((0..m).map(|s| if s == r { one() } else { Rational::zero() }));
            full
        })
        .collect();
    let mut rhs: Vec<Rational> = b.to_vec();
    let mut basis: Vec<usize> = (nvars..ncols).collect();
    // reduced costs z_j - c_j
    let mut obj: Vec<Rational> = c
        .iter()
        .map(|v| -v.clone())
        .chain((0..m).map(|_| Rational::zero()))
        .collect();
    let mut value = Rational::zero();

    while let Some(enter) = (0..ncols).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<usize> = None;
        let mut best: Option<Rational> = None;
        for r in 0..m {
            if !tab[r][enter].is_positive() {
                continue;
            }
            let ratio = &rhs[r] / &tab[r][enter];
            let better = match &best {
                None => true,
                Some(bv) => ratio < *bv || (ratio == *bv && basis[r] < basis[leave.unwrap()]),
            };
            if better {
                best = Some(ratio);
                leave = Some(r);
            }
        }
        let Some(pr) = leave else {
            return LpOutcome::Unbounded;
        };

        let pivot = tab[pr][enter].clone();
        for v in tab[pr].iter_mut() {
            *v = &*v / &pivot;
        }
        rhs[pr] = &rhs[pr] / &pivot;
        let prow = tab[pr].clone();
        let prhs = rhs[pr].clone();
        for r in 0..m {
            if r == pr || tab[r][enter].is_zero() {
                continue;
            }
            let f = tab[r][enter].clone();
            for (v, p) in tab[r].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            rhs[r] -= &f * &prhs;
        }
        let f = obj[enter].clone();
        for (v, p) in obj.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
        value -= &f * &prhs;
        basis[pr] = enter;
    }

    let mut primal = vec![Rational::zero(); nvars];
    for (r, &var) in basis.iter().enumerate() {
        if var < nvars {
            primal[var] = rhs[r].clone();
        }
    }
    let dual = obj[nvars..].to_vec();
    LpOutcome::Optimal { value, primal, dual }
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 -> (2, 6), value 36
        let a = vec![vec![r(1), r(0)], vec![r(0), r(2)], vec![r(3), r(2)]];
        let b = vec![r(4), r(12), r(18)];
        let c = vec![r(3), r(5)];
        let LpOutcome::Optimal { value, primal, dual } = maximize(&a, &b, &c) else {
            panic!("expected optimum");
        };
        assert_eq!(value, r(36));
        assert_eq!(primal, vec![r(2), r(6)]);
        // strong duality
        let dual_value: Rational = dual.iter().zip(&b).map(|(u, bi)| u * bi).sum();
        assert_eq!(dual_value, r(36));
    }

    #[test]
    fn unbounded_detected() {
        let a = vec![vec![r(1), r(-1)]];
        let b = vec![r(1)];
        let c = vec![r(0), r(1)];
        assert!(matches!(maximize(&a, &b, &c), LpOutcome::Unbounded));
    }
}
