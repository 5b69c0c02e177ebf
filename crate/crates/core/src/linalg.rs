//! Exact rank of integer matrices over the rationals.
//!
//! Rows are eliminated fraction-free: `row ← (p/g)·row − (c/g)·pivot` with
//! `g = gcd(p, c)`, then divided by their content. Machine integers are used
//! with checked arithmetic; on overflow the computation restarts on bigints.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Rank over `Q` of the matrix given by `rows`.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    rank_i64(rows.to_vec()).unwrap_or_else(|| rank_bigint(rows))
}

/// Fraction-free elimination on `i64`; `None` if an intermediate overflows.
pub fn rank_i64(mut rows: Vec<Vec<i64>>) -> Option<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot_row) =
            (rank..rows.len()).filter(|&r| rows[r][col] != 0).min_by_key(|&r| rows[r][col].unsigned_abs())
        else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        let p = pivot[col];
        for row in tail.iter_mut() {
            let c = row[col];
            if c == 0 {
                continue;
            }
            let g = gcd_i64(p, c);
            let (mp, mc) = (p / g, c / g);
            for (x, &y) in row.iter_mut().zip(pivot.iter()) {
                *x = x.checked_mul(mp)?.checked_sub(y.checked_mul(mc)?)?;
            }
            let content = row.iter().fold(0, |acc, &x| gcd_i64(acc, x));
            if content > 1 {
                row.iter_mut().for_each(|x| *x /= content);
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// The same elimination on arbitrary-precision integers.
pub fn rank_bigint(rows: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot_row) = (rank..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()))
        else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        let p = pivot[col].clone();
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let c = row[col].clone();
            let g = num_integer_gcd(&p, &c);
            let (mp, mc) = (&p / &g, &c / &g);
            for (x, y) in row.iter_mut().zip(pivot.iter()) {
                *x = &*x * &mp - y * &mc;
            }
            let content = row.iter().fold(BigInt::zero(), |acc, x| num_integer_gcd(&acc, x));
            if content > BigInt::from(1) {
                row.iter_mut().for_each(|x| *x = &*x / &content);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

fn num_integer_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}
