//! Shared test machinery: deterministic random generators over the full
//! function set and an independent vertex-enumeration LP oracle.

#![allow(dead_code)]

use mvlim::expr::{evaluate, Evaluated, Expr, Func};
use mvlim::rat::{rat, rat_int, Rat};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    let num = loop {
        let n: i64 = rng.gen_range(-6..=6);
        if n != 0 {
            break n;
        }
    };
    rat(num, rng.gen_range(1..=3))
}

const FUNCS: [Func; 7] = [
    Func::Sin,
    Func::Cos,
    Func::Tan,
    Func::Sec,
    Func::Exp,
    Func::Sqrt,
    Func::Abs,
];

/// Random raw expression (possibly non-canonical: Neg nodes, nested sums)
/// over the given variables, depth-bounded, covering the full function set.
pub fn random_raw_expr(rng: &mut ChaCha8Rng, vars: &[&str], depth: usize) -> Expr {
    if depth == 0 {
        return match rng.gen_range(0..3) {
            0 => Expr::Const(small_rat(rng)),
            _ => Expr::Var(vars[rng.gen_range(0..vars.len())].to_string()),
        };
    }
    match rng.gen_range(0..6) {
        0 => Expr::Add(vec![
            random_raw_expr(rng, vars, depth - 1),
            random_raw_expr(rng, vars, depth - 1),
        ]),
        1 => Expr::Mul(vec![
            random_raw_expr(rng, vars, depth - 1),
            random_raw_expr(rng, vars, depth - 1),
        ]),
        2 => Expr::Neg(Box::new(random_raw_expr(rng, vars, depth - 1))),
        3 => Expr::Pow(
            Box::new(random_raw_expr(rng, vars, depth - 1)),
            rat_int(rng.gen_range(1..=3)),
        ),
        _ => {
            let f = FUNCS[rng.gen_range(0..FUNCS.len())];
            // keep arguments tame: sqrt gets something nonnegative-ish
            let arg = random_raw_expr(rng, vars, depth - 1);
            let arg = if f == Func::Sqrt {
                Expr::Add(vec![
                    Expr::Mul(vec![arg.clone(), arg]),
                    Expr::Const(rat(1, 4)),
                ])
            } else {
                arg
            };
            Expr::Func(f, Box::new(arg))
        }
    }
}

/// Random polynomial expression (for as_polynomial agreement tests).
pub fn random_poly_expr(rng: &mut ChaCha8Rng, vars: &[&str], depth: usize) -> Expr {
    if depth == 0 {
        return match rng.gen_range(0..3) {
            0 => Expr::Const(small_rat(rng)),
            _ => Expr::Var(vars[rng.gen_range(0..vars.len())].to_string()),
        };
    }
    match rng.gen_range(0..4) {
        0 => Expr::Add(vec![
            random_poly_expr(rng, vars, depth - 1),
            random_poly_expr(rng, vars, depth - 1),
        ]),
        1 => Expr::Mul(vec![
            random_poly_expr(rng, vars, depth - 1),
            random_poly_expr(rng, vars, depth - 1),
        ]),
        2 => Expr::Neg(Box::new(random_poly_expr(rng, vars, depth - 1))),
        _ => Expr::Pow(
            Box::new(random_poly_expr(rng, vars, depth - 1)),
            rat_int(rng.gen_range(1..=3)),
        ),
    }
}

pub fn random_point(rng: &mut ChaCha8Rng, vars: &[&str], scale: f64) -> BTreeMap<String, f64> {
    vars.iter()
        .map(|v| (v.to_string(), rng.gen_range(-scale..scale)))
        .collect()
}

pub fn eval_f64(e: &Expr, env: &BTreeMap<String, f64>) -> Option<f64> {
    match evaluate(e, env) {
        Ok(Evaluated::Value(v)) if v.is_finite() => Some(v),
        _ => None,
    }
}

/// True when every function argument in the expression stays away from
/// domain boundaries and poles at the point (tan/sec near pi/2, sqrt near
/// 0, abs kinks).
pub fn point_is_safe(e: &Expr, env: &BTreeMap<String, f64>) -> bool {
    fn walk(e: &Expr, env: &BTreeMap<String, f64>) -> bool {
        match e {
            Expr::Const(_) | Expr::Var(_) => true,
            Expr::Add(es) | Expr::Mul(es) => es.iter().all(|x| walk(x, env)),
            Expr::Neg(x) => walk(x, env),
            Expr::Pow(b, r) => {
                if !walk(b, env) {
                    return false;
                }
                let v = match eval_f64(b, env) {
                    Some(v) => v,
                    None => return false,
                };
                use num_traits::ToPrimitive;
                let denom_even = r.denom().to_i64().map(|d| d % 2 == 0).unwrap_or(true);
                let integer = r.denom().is_one();
                let negative_exp = r.is_negative();
                if negative_exp && v.abs() < 0.05 {
                    return false;
                }
                if !integer && (v.abs() < 0.05 || (denom_even && v < 0.0)) {
                    return false;
                }
                true
            }
            Expr::Func(f, a) => {
                if !walk(a, env) {
                    return false;
                }
                let v = match eval_f64(a, env) {
                    Some(v) => v,
                    None => return false,
                };
                match f {
                    Func::Tan | Func::Sec => v.cos().abs() > 0.3,
                    Func::Sqrt => v > 0.05,
                    Func::Abs => v.abs() > 0.05,
                    Func::Exp => v.abs() < 4.0,
                    Func::Sin | Func::Cos => v.abs() < 20.0,
                }
            }
        }
    }
    walk(e, env)
}

/// Brute-force LP oracle: enumerate candidate vertices (all n-subsets of
/// the m + n hyperplanes {a_i x = b_i} and {x_j = 0}), keep the feasible
/// ones, and take the best objective. Exact rational arithmetic.
pub fn lp_vertex_oracle(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> Option<Rat> {
    let n = c.len();
    let m = a.len();
    // rows: the m constraints then the n axes
    let mut rows: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for i in 0..m {
        rows.push((a[i].clone(), b[i].clone()));
    }
    for j in 0..n {
        let mut r = vec![Rat::zero(); n];
        r[j] = Rat::one();
        rows.push((r, Rat::zero()));
    }
    let total = rows.len();
    let mut best: Option<Rat> = None;
    let mut subset = vec![0usize; n];
    enumerate_subsets(total, n, 0, &mut subset, 0, &mut |chosen: &[usize]| {
        let mat: Vec<Vec<Rat>> = chosen.iter().map(|&i| rows[i].0.clone()).collect();
        let rhs: Vec<Rat> = chosen.iter().map(|&i| rows[i].1.clone()).collect();
        if let Some(x) = solve_linear(&mat, &rhs) {
            // feasibility: x >= 0 and Ax <= b
            if x.iter().any(|v| v.is_negative()) {
                return;
            }
            for i in 0..m {
                let lhs: Rat = a[i]
                    .iter()
                    .zip(x.iter())
                    .map(|(aa, xx)| aa.clone() * xx.clone())
                    .sum();
                if lhs > b[i] {
                    return;
                }
            }
            let obj: Rat = c
                .iter()
                .zip(x.iter())
                .map(|(cc, xx)| cc.clone() * xx.clone())
                .sum();
            if best.as_ref().map(|b| obj > *b).unwrap_or(true) {
                best = Some(obj);
            }
        }
    });
    best
}

fn enumerate_subsets(
    total: usize,
    size: usize,
    start: usize,
    acc: &mut Vec<usize>,
    filled: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if filled == size {
        visit(&acc[..size]);
        return;
    }
    for i in start..total {
        if total - i < size - filled {
            break;
        }
        acc[filled] = i;
        enumerate_subsets(total, size, i + 1, acc, filled + 1, visit);
    }
}

/// Gaussian elimination over exact rationals; None for singular systems.
pub fn solve_linear(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = b.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v /= p.clone();
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for cidx in 0..=n {
                    let sub = factor.clone() * m[col][cidx].clone();
                    m[r][cidx] -= sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}
