//! A small exact-arithmetic linear program solver.
//!
//! Solves `maximize c.x subject to A x <= b, x >= 0` with `b >= 0` over
//! arbitrary-precision rationals, by primal simplex with Bland's rule
//! (which cannot cycle, so termination is unconditional). The polar degree
//! bound needs nothing more: the instances are tiny but their optima feed
//! exact certificates, so floating-point solvers are out.

use crate::rat::Rat;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("objective is unbounded above")]
    Unbounded,
    #[error("bad input: {0}")]
    BadInput(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub objective: Rat,
    pub x: Vec<Rat>,
}

/// Maximizes `c.x` over `{x >= 0 : A x <= b}` with `b >= 0` (the origin is
/// feasible, so no phase-one is needed).
pub fn maximize(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> Result<LpSolution, LpError> {
    let n = c.len();
    let m = a.len();
    if b.len() != m {
        return Err(LpError::BadInput(format!(
            "{} constraint rows but {} bounds",
            m,
            b.len()
        )));
    }
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(LpError::BadInput(format!(
                "constraint row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
    }
    if b.iter().any(|v| v.is_negative()) {
        return Err(LpError::BadInput("negative bound".to_string()));
    }

    // tableau rows: m constraint rows over n structural + m slack columns,
    // plus the right-hand side; last row is the objective (reduced costs).
    let cols = n + m;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut row = Vec::with_capacity(cols + 1);
        row.extend(a[i].iter().cloned());
        for j in 0..m {
            row.push(if i == j { Rat::one() } else { Rat::zero() });
        }
        row.push(b[i].clone());
        t.push(row);
    }
    let mut obj: Vec<Rat> = Vec::with_capacity(cols + 1);
    obj.extend(c.iter().cloned());
    obj.extend(std::iter::repeat(Rat::zero()).take(m + 1));
    t.push(obj);

    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        // Bland: entering = lowest-index column with positive reduced cost
        let entering = match (0..cols).find(|&j| t[m][j].is_positive()) {
            Some(j) => j,
            None => break,
        };
        // ratio test, ties broken by lowest basis variable index
        let mut pivot_row: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if t[i][entering].is_positive() {
                let ratio = t[i][cols].clone() / t[i][entering].clone();
                let better = match &best {
                    None => true,
                    Some(r) => {
                        ratio < *r || (ratio == *r && basis[i] < basis[pivot_row.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    pivot_row = Some(i);
                }
            }
        }
        let pr = pivot_row.ok_or(LpError::Unbounded)?;
        pivot(&mut t, pr, entering, cols);
        basis[pr] = entering;
    }

    let mut x = vec![Rat::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][cols].clone();
        }
    }
    // the objective row holds c.x negated after pivoting from zero
    let objective = -t[m][cols].clone();
    Ok(LpSolution { objective, x })
}

fn pivot(t: &mut [Vec<Rat>], pr: usize, pc: usize, cols: usize) {
    let p = t[pr][pc].clone();
    for v in t[pr].iter_mut() {
        *v /= p.clone();
    }
    let pivot_row = t[pr].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == pr {
            continue;
        }
        let factor = row[pc].clone();
        if factor.is_zero() {
            continue;
        }
        for (rv, pv) in row.iter_mut().zip(pivot_row.iter()).take(cols + 1) {
            *rv -= factor.clone() * pv.clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn r(v: &[(i64, i64)]) -> Vec<Rat> {
        v.iter().map(|(n, d)| rat(*n, *d)).collect()
    }

    #[test]
    fn textbook_instance() {
        // max x + y st x + 2y <= 4, 3x + y <= 6 -> optimum at (8/5, 6/5)
        let sol = maximize(
            &r(&[(1, 1), (1, 1)]),
            &[r(&[(1, 1), (2, 1)]), r(&[(3, 1), (1, 1)])],
            &r(&[(4, 1), (6, 1)]),
        )
        .unwrap();
        assert_eq!(sol.objective, rat(14, 5));
        assert_eq!(sol.x, r(&[(8, 5), (6, 5)]));
    }

    #[test]
    fn polar_bound_instances() {
        // term (3,3) against u = (x^3, y^2): max c1+c2 st 3c1 <= 3, 2c2 <= 3
        let sol = maximize(
            &r(&[(1, 1), (1, 1)]),
            &[r(&[(3, 1), (0, 1)]), r(&[(0, 1), (2, 1)])],
            &r(&[(3, 1), (3, 1)]),
        )
        .unwrap();
        assert_eq!(sol.objective, rat(5, 2));

        // term (3,2) against u = (x^3, x*y): constraints 3c1 + c2 <= 3, c2 <= 2
        let sol = maximize(
            &r(&[(1, 1), (1, 1)]),
            &[r(&[(3, 1), (1, 1)]), r(&[(0, 1), (1, 1)])],
            &r(&[(3, 1), (2, 1)]),
        )
        .unwrap();
        assert_eq!(sol.objective, rat(7, 3));

        // term (3,2) against u = (x^3, y^3): alpha = 1 + 2/3 = 5/3
        let sol = maximize(
            &r(&[(1, 1), (1, 1)]),
            &[r(&[(3, 1), (0, 1)]), r(&[(0, 1), (3, 1)])],
            &r(&[(3, 1), (2, 1)]),
        )
        .unwrap();
        assert_eq!(sol.objective, rat(5, 3));
    }

    #[test]
    fn unbounded_detected() {
        // max x with no constraint on x beyond x >= 0
        let err = maximize(&r(&[(1, 1)]), &[r(&[(0, 1)])], &r(&[(1, 1)])).unwrap_err();
        assert_eq!(err, LpError::Unbounded);
    }

    #[test]
    fn degenerate_zero_bounds_terminate() {
        let sol = maximize(
            &r(&[(1, 1), (1, 1)]),
            &[
                r(&[(1, 1), (0, 1)]),
                r(&[(1, 1), (1, 1)]),
                r(&[(0, 1), (1, 1)]),
            ],
            &r(&[(0, 1), (1, 1), (1, 1)]),
        )
        .unwrap();
        assert_eq!(sol.objective, rat_int(1));
        assert_eq!(sol.x[0], rat_int(0));
    }

    #[test]
    fn rejects_negative_bounds() {
        assert!(matches!(
            maximize(&r(&[(1, 1)]), &[r(&[(1, 1)])], &r(&[(-1, 1)])),
            Err(LpError::BadInput(_))
        ));
    }
}
