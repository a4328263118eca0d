//! Reduced rational homology of the order complex of a poset's proper part.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{null_space, reduce_exact, reduce_mod, to_mod, IntColumn, ModColumn};
use crate::poset::{linear_extension, FinitePoset};
use crate::Rational;

/// Reduced Betti numbers by degree. Degrees `0..=dim` are always present;
/// degree `-1` only for the empty complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub dims: BTreeMap<i64, u64>,
}

impl BettiVector {
    pub fn get(&self, i: i64) -> u64 {
        self.dims.get(&i).copied().unwrap_or(0)
    }

    pub fn reduced_euler(&self) -> BigInt {
        self.dims
            .iter()
            .map(|(&i, &d)| if i.rem_euclid(2) == 0 { BigInt::from(d) } else { -BigInt::from(d) })
            .sum()
    }

    /// Every degree other than `d` vanishes.
    pub fn is_concentrated_in(&self, d: i64) -> bool {
        self.dims.iter().all(|(&i, &v)| i == d || v == 0)
    }
}

/// Strict chains of the proper part grouped by number of elements; each
/// chain lists element indices from smallest to largest.
pub(crate) struct ChainComplex {
    pub chains: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
    position: Vec<usize>,
}

impl ChainComplex {
    pub fn new(p: &FinitePoset) -> Self {
        let down: Vec<_> = (0..p.len()).map(|i| p.down_set(i).clone()).collect();
        let order = linear_extension(&down);
        let mut position = vec![0; p.len()];
        for (k, &i) in order.iter().enumerate() {
            position[i] = k;
        }
        let proper = p.proper_part();
        let mut in_proper = vec![false; p.len()];
        for &i in &proper {
            in_proper[i] = true;
        }
        let mut chains: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new()]];
        let mut stack: Vec<Vec<u32>> = proper.iter().map(|&i| vec![i as u32]).collect();
        while let Some(c) = stack.pop() {
            let last = *c.last().unwrap() as usize;
            for j in p.up_set(last).ones() {
                if j != last && in_proper[j] {
                    let mut d = c.clone();
                    d.push(j as u32);
                    stack.push(d);
                }
            }
            if chains.len() <= c.len() {
                chains.resize(c.len() + 1, Vec::new());
            }
            chains[c.len()].push(c);
        }
        for level in chains.iter_mut() {
            level.sort();
        }
        let index = chains
            .iter()
            .map(|lvl| lvl.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
            .collect();
        ChainComplex {
            chains,
            index,
            position,
        }
    }

    /// Largest chain size present.
    pub fn top_size(&self) -> usize {
        self.chains.len() - 1
    }

    /// Columns of the boundary map from chains of `size` elements.
    pub fn boundary(&self, size: usize) -> Vec<Vec<(u32, i64)>> {
        self.chains[size]
            .iter()
            .map(|c| {
                let mut col: Vec<(u32, i64)> = (0..c.len())
                    .map(|i| {
                        let mut face = c.clone();
                        face.remove(i);
                        let row = self.index[size - 1][&face] as u32;
                        (row, if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect()
    }

    /// Index of the image of chain `c` (of `size` elements) under `map`.
    pub fn image(&self, size: usize, c: &[u32], map: &[usize]) -> usize {
        let mut img: Vec<u32> = c.iter().map(|&x| map[x as usize] as u32).collect();
        img.sort_by_key(|&x| self.position[x as usize]);
        self.index[size][&img]
    }
}

fn betti_from_ranks(cx: &ChainComplex, ranks: &[usize]) -> BettiVector {
    // ranks[s] = rank of the boundary leaving chains of s elements
    let top = cx.top_size();
    let rank = |s: usize| ranks.get(s).copied().unwrap_or(0);
    let mut dims = BTreeMap::new();
    for s in 0..=top {
        let b = cx.chains[s].len() - rank(s) - rank(s + 1);
        if s > 0 || top == 0 || b > 0 {
            dims.insert(s as i64 - 1, b as u64);
        }
    }
    BettiVector { dims }
}

fn ranks_with<F>(cx: &ChainComplex, mut reduce: F) -> Vec<usize>
where
    F: FnMut(usize, &[bool]) -> (usize, Vec<u32>),
{
    let top = cx.top_size();
    let mut ranks = vec![0; top + 1];
    let mut cleared: Vec<bool> = Vec::new();
    for s in (1..=top).rev() {
        let skip = std::mem::take(&mut cleared);
        let (r, pivots) = reduce(s, &skip);
        ranks[s] = r;
        cleared = vec![false; cx.chains[s - 1].len()];
        for p in pivots {
            cleared[p as usize] = true;
        }
    }
    ranks
}

fn modular_ranks(cx: &ChainComplex) -> Vec<usize> {
    ranks_with(cx, |s, skip| {
        let cols: Vec<ModColumn> = cx
            .boundary(s)
            .into_iter()
            .map(|c| c.into_iter().map(|(r, v)| (r, to_mod(v))).collect())
            .collect();
        let red = reduce_mod(&cols, skip);
        (red.rank, red.pivot_rows)
    })
}

fn exact_ranks(cx: &ChainComplex) -> Vec<usize> {
    ranks_with(cx, |s, skip| {
        let cols: Vec<IntColumn> = cx
            .boundary(s)
            .into_iter()
            .map(|c| c.into_iter().map(|(r, v)| (r, BigInt::from(v))).collect())
            .collect();
        let red = reduce_exact(&cols, skip);
        (red.rank, red.pivot_rows)
    })
}

/// Reduced rational homology of the proper part.
///
/// Ranks are first taken modulo a large prime. Modular Betti numbers bound
/// the rational ones from above, so when they are concentrated in a single
/// degree the Euler characteristic pins the rational values exactly.
/// Otherwise ranks are recomputed by exact fraction-free elimination.
pub fn homology_dims(p: &FinitePoset) -> BettiVector {
    let cx = ChainComplex::new(p);
    let modular = betti_from_ranks(&cx, &modular_ranks(&cx));
    if modular.dims.values().filter(|&&v| v > 0).count() <= 1 {
        return modular;
    }
    betti_from_ranks(&cx, &exact_ranks(&cx))
}

/// Reduced rational homology using exact elimination only.
pub fn homology_dims_exact(p: &FinitePoset) -> BettiVector {
    let cx = ChainComplex::new(p);
    betti_from_ranks(&cx, &exact_ranks(&cx))
}

/// Trace of the automorphism `g` on the top-degree reduced homology, i.e.
/// on the kernel of the top boundary map.
pub fn top_homology_trace(p: &FinitePoset, g: &[usize]) -> Result<Rational> {
    if !p.is_automorphism(g) {
        return Err(Error::NotAnAutomorphism(format!("{g:?}")));
    }
    let cx = ChainComplex::new(p);
    let top = cx.top_size();
    if top == 0 {
        return Ok(Rational::from_integer(1.into()));
    }
    let rows = cx.chains[top - 1].len();
    let cols = cx.chains[top].len();
    let mut m = vec![vec![Rational::zero(); cols]; rows];
    for (j, col) in cx.boundary(top).into_iter().enumerate() {
        for (r, v) in col {
            m[r as usize][j] = Rational::from_integer(v.into());
        }
    }
    let (free, basis) = null_space(&m, cols);
    let mut inv = vec![0; g.len()];
    for (i, &gi) in g.iter().enumerate() {
        inv[gi] = i;
    }
    let mut trace = Rational::zero();
    for (f, v) in free.iter().zip(&basis) {
        let pre = cx.image(top, &cx.chains[top][*f], &inv);
        trace += &v[pre];
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_complexes() {
        let two = FinitePoset::chain(2);
        assert_eq!(homology_dims(&two).dims, BTreeMap::from([(-1, 1)]));
        let single = FinitePoset::chain(1);
        assert_eq!(homology_dims(&single).dims, BTreeMap::from([(-1, 1)]));
        // three points: reduced H0 has rank 2
        let a = FinitePoset::antichain(3);
        assert_eq!(homology_dims(&a).dims, BTreeMap::from([(0, 2)]));
        // a 4-cycle crown is a circle
        let crown = FinitePoset::from_covers(
            (0..4).map(|i| i.to_string()).collect(),
            &[(0, 2), (0, 3), (1, 2), (1, 3)],
        )
        .unwrap();
        assert_eq!(homology_dims(&crown).dims, BTreeMap::from([(0, 0), (1, 1)]));
    }

    #[test]
    fn exact_fallback_handles_spread_homology() {
        // two disjoint crowns: reduced H0 = 1, H1 = 2
        let crown2 = FinitePoset::from_covers(
            (0..8).map(|i| i.to_string()).collect(),
            &[(0, 2), (0, 3), (1, 2), (1, 3), (4, 6), (4, 7), (5, 6), (5, 7)],
        )
        .unwrap();
        let expected = BTreeMap::from([(0, 1), (1, 2)]);
        assert_eq!(homology_dims(&crown2).dims, expected);
        assert_eq!(homology_dims_exact(&crown2).dims, expected);
    }

    #[test]
    fn trace_of_swap_on_three_points() {
        let a = FinitePoset::antichain(3);
        assert_eq!(top_homology_trace(&a, &[0, 1, 2]).unwrap(), Rational::from_integer(2.into()));
        assert_eq!(top_homology_trace(&a, &[0, 2, 1]).unwrap(), Rational::from_integer(0.into()));
        assert_eq!(top_homology_trace(&a, &[1, 2, 0]).unwrap(), Rational::from_integer((-1).into()));
    }
}
