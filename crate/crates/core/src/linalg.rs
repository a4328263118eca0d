//! Sparse column reduction (modular and fraction-free) and dense rational
//! row reduction.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::Rational;

/// `2^61 - 1`.
pub const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, PRIME - 2)
}

pub fn to_mod(v: i64) -> u64 {
    v.rem_euclid(PRIME as i64) as u64
}

/// A sparse column: `(row, value)` pairs sorted by row, values nonzero.
pub type ModColumn = Vec<(u32, u64)>;
pub type IntColumn = Vec<(u32, BigInt)>;

/// `a - c * b` over `Z/PRIME`.
fn axpy_mod(a: &ModColumn, c: u64, b: &ModColumn) -> ModColumn {
    let neg = PRIME - c;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ra = a.get(i).map_or(u32::MAX, |e| e.0);
        let rb = b.get(j).map_or(u32::MAX, |e| e.0);
        if ra < rb {
            out.push(a[i]);
            i += 1;
        } else if rb < ra {
            out.push((rb, mul_mod(neg, b[j].1)));
            j += 1;
        } else {
            let v = (a[i].1 + mul_mod(neg, b[j].1)) % PRIME;
            if v != 0 {
                out.push((ra, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Result of a column reduction: the rank and, for every surviving column,
/// its pivot row.
#[derive(Clone, Debug, Default)]
pub struct Reduction {
    pub rank: usize,
    pub pivot_rows: Vec<u32>,
}

/// Rank over `Z/PRIME` by reducing columns on their lowest row. Columns with
/// `skip[j]` set are known to reduce to zero and are not processed.
pub fn reduce_mod(cols: &[ModColumn], skip: &[bool]) -> Reduction {
    let mut pivots: HashMap<u32, ModColumn> = HashMap::new();
    let mut out = Reduction::default();
    for (j, col) in cols.iter().enumerate() {
        if skip.get(j).copied().unwrap_or(false) {
            continue;
        }
        let mut c = col.clone();
        while let Some(&(low, v)) = c.last() {
            match pivots.get(&low) {
                Some(p) => {
                    let f = mul_mod(v, inv_mod(p.last().unwrap().1));
                    c = axpy_mod(&c, f, p);
                }
                None => break,
            }
        }
        if let Some(&(low, _)) = c.last() {
            out.rank += 1;
            out.pivot_rows.push(low);
            pivots.insert(low, c);
        }
    }
    out
}

/// `a * x - b * y`, divided by the content of the result.
fn combine_int(a: &BigInt, x: &IntColumn, b: &BigInt, y: &IntColumn) -> IntColumn {
    let mut out: IntColumn = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let rx = x.get(i).map_or(u32::MAX, |e| e.0);
        let ry = y.get(j).map_or(u32::MAX, |e| e.0);
        if rx < ry {
            out.push((rx, a * &x[i].1));
            i += 1;
        } else if ry < rx {
            out.push((ry, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((rx, v));
            }
            i += 1;
            j += 1;
        }
    }
    let g = out.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in out.iter_mut() {
            *v /= &g;
        }
    }
    out
}

/// Exact rank over the rationals by fraction-free column reduction.
pub fn reduce_exact(cols: &[IntColumn], skip: &[bool]) -> Reduction {
    let mut pivots: HashMap<u32, IntColumn> = HashMap::new();
    let mut out = Reduction::default();
    for (j, col) in cols.iter().enumerate() {
        if skip.get(j).copied().unwrap_or(false) {
            continue;
        }
        let mut c = col.clone();
        while let Some((low, v)) = c.last().cloned() {
            match pivots.get(&low) {
                Some(p) => {
                    let pv = &p.last().unwrap().1;
                    let g = v.gcd(pv);
                    c = combine_int(&(pv / &g), &c, &(&v / &g), p);
                }
                None => break,
            }
        }
        if let Some((low, _)) = c.last() {
            out.rank += 1;
            out.pivot_rows.push(*low);
            pivots.insert(*low, c);
        }
    }
    out
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(sel) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, sel);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the null space of `m` (as columns acting on vectors), one vector
/// per free column. Returns `(free_columns, basis)`.
pub fn null_space(m: &[Vec<Rational>], cols: usize) -> (Vec<usize>, Vec<Vec<Rational>>) {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let pivots = rref(&mut a);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect();
    (free, basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_cols(m: &[&[i64]]) -> Vec<IntColumn> {
        let cols = m[0].len();
        (0..cols)
            .map(|c| {
                m.iter()
                    .enumerate()
                    .filter(|(_, r)| r[c] != 0)
                    .map(|(i, r)| (i as u32, BigInt::from(r[c])))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn ranks_agree() {
        let m: &[&[i64]] = &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0], &[1, 3, 4, 4]];
        let ic = int_cols(m);
        let mc: Vec<ModColumn> = ic
            .iter()
            .map(|c| c.iter().map(|(r, v)| (*r, to_mod(i64::try_from(v).unwrap()))).collect())
            .collect();
        assert_eq!(reduce_exact(&ic, &[]).rank, 2);
        assert_eq!(reduce_mod(&mc, &[]).rank, 2);
    }

    #[test]
    fn null_space_is_annihilated() {
        let r = |v: i64| Rational::from_integer(v.into());
        let m = vec![vec![r(1), r(1), r(0)], vec![r(0), r(1), r(1)]];
        let (free, basis) = null_space(&m, 3);
        assert_eq!(free, vec![2]);
        for row in &m {
            let dot: Rational = row.iter().zip(&basis[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }
}
