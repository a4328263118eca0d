//! Möbius numbers, strict-chain counts and zeta polynomials of finite posets.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{homology_dims, BettiVector};
use crate::poly::Poly;
use crate::poset::{linear_extension, FinitePoset};
use crate::Rational;

/// Which extrema a poset has; selects the multichain/strict-chain relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremaCase {
    /// A single element.
    Trivial,
    /// Least and greatest element, at least two elements.
    Bounded,
    /// Exactly one of a least or a greatest element.
    OneExtremum,
    NoExtremum,
}

impl ExtremaCase {
    pub fn of(p: &FinitePoset) -> ExtremaCase {
        if p.len() == 1 {
            return ExtremaCase::Trivial;
        }
        match (p.bottom().is_some(), p.top().is_some()) {
            (true, true) => ExtremaCase::Bounded,
            (false, false) => ExtremaCase::NoExtremum,
            _ => ExtremaCase::OneExtremum,
        }
    }

    /// Point `k` at which the zeta polynomial yields the Euler characteristic.
    pub fn mobius_point(self) -> i64 {
        match self {
            ExtremaCase::Trivial | ExtremaCase::Bounded => -2,
            ExtremaCase::OneExtremum => -1,
            ExtremaCase::NoExtremum => 0,
        }
    }

    /// Reduced Euler characteristic of the proper part read off `Z` at
    /// [`Self::mobius_point`].
    pub fn euler_from_zeta(self, z: &Rational) -> Rational {
        match self {
            ExtremaCase::Trivial | ExtremaCase::Bounded => z.clone(),
            ExtremaCase::OneExtremum => -z,
            ExtremaCase::NoExtremum => z - Rational::one(),
        }
    }
}

/// Number of strict chains of the proper part, indexed by size minus one.
/// Index `-1` is the empty chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCounts {
    pub counts: BTreeMap<i64, u64>,
}

impl ChainCounts {
    pub fn get(&self, i: i64) -> u64 {
        self.counts.get(&i).copied().unwrap_or(0)
    }

    /// `sum (-1)^i counts[i]`.
    pub fn reduced_euler(&self) -> BigInt {
        self.counts
            .iter()
            .map(|(&i, &c)| if i.rem_euclid(2) == 0 { BigInt::from(c) } else { -BigInt::from(c) })
            .sum()
    }
}

/// `μ(x, z)` for every `z`; zero where `x ≰ z`.
pub fn mobius_from(p: &FinitePoset, x: usize) -> Vec<BigInt> {
    let mut mu = vec![BigInt::zero(); p.len()];
    let members: Vec<usize> = p.up_set(x).ones().collect();
    let mut order = members.clone();
    order.sort_by_key(|&z| p.down_set(z).count_ones(..));
    for &z in &order {
        if z == x {
            mu[z] = BigInt::one();
            continue;
        }
        let mut s = BigInt::zero();
        for w in p.down_set(z).ones() {
            if w != z && p.leq(x, w) {
                s += &mu[w];
            }
        }
        mu[z] = -s;
    }
    mu
}

/// `μ(z, y)` for every `z`; zero where `z ≰ y`.
pub fn mobius_to(p: &FinitePoset, y: usize) -> Vec<BigInt> {
    let mut mu = vec![BigInt::zero(); p.len()];
    let mut order: Vec<usize> = p.down_set(y).ones().collect();
    order.sort_by_key(|&z| p.up_set(z).count_ones(..));
    for &z in &order {
        if z == y {
            mu[z] = BigInt::one();
            continue;
        }
        let mut s = BigInt::zero();
        for w in p.up_set(z).ones() {
            if w != z && p.leq(w, y) {
                s += &mu[w];
            }
        }
        mu[z] = -s;
    }
    mu
}

pub fn mobius(p: &FinitePoset, x: usize, y: usize) -> Result<BigInt> {
    if !p.leq(x, y) {
        return Err(Error::NotComparable(p.label(x).into(), p.label(y).into()));
    }
    Ok(mobius_from(p, x).swap_remove(y))
}

fn proper_mask(p: &FinitePoset) -> FixedBitSet {
    let mut mask = FixedBitSet::with_capacity(p.len());
    for i in p.proper_part() {
        mask.insert(i);
    }
    mask
}

/// Counts strict chains of the proper part whose elements all lie in `allowed`.
pub fn strict_chain_counts_in(p: &FinitePoset, allowed: &FixedBitSet) -> ChainCounts {
    let mut mask = proper_mask(p);
    mask.intersect_with(allowed);
    let order = linear_extension(&(0..p.len()).map(|i| p.down_set(i).clone()).collect::<Vec<_>>());
    // ending[i][s] = chains with s + 1 elements whose largest element is i
    let mut ending: Vec<Vec<u64>> = vec![Vec::new(); p.len()];
    let mut counts = BTreeMap::from([(-1i64, 1u64)]);
    for &i in &order {
        if !mask.contains(i) {
            continue;
        }
        let mut row = vec![1u64];
        for j in p.down_set(i).ones() {
            if j == i || !mask.contains(j) {
                continue;
            }
            for (s, &c) in ending[j].iter().enumerate() {
                if row.len() <= s + 1 {
                    row.resize(s + 2, 0);
                }
                row[s + 1] += c;
            }
        }
        for (s, &c) in row.iter().enumerate() {
            *counts.entry(s as i64).or_insert(0) += c;
        }
        ending[i] = row;
    }
    ChainCounts { counts }
}

pub fn strict_chain_counts(p: &FinitePoset) -> ChainCounts {
    let mut all = FixedBitSet::with_capacity(p.len());
    all.insert_range(..);
    strict_chain_counts_in(p, &all)
}

/// A polynomial `Z` with `Z(k)` the number of `k`-multichains for `k >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaPolynomial {
    pub case: ExtremaCase,
    pub poly: Poly,
}

impl ZetaPolynomial {
    pub fn eval(&self, k: i64) -> Rational {
        self.poly.eval_int(k)
    }

    /// Reduced Euler characteristic of the proper part.
    pub fn euler(&self) -> Rational {
        self.case.euler_from_zeta(&self.eval(self.case.mobius_point()))
    }

    /// Value that equals the top homology (or its character) when homology
    /// is concentrated in degree `dim`.
    pub fn top_homology_value(&self, dim: i64) -> Rational {
        let e = self.euler();
        if dim.rem_euclid(2) == 0 {
            e
        } else {
            -e
        }
    }
}

/// Zeta polynomial in the binomial basis selected by the extrema case.
pub fn zeta_from_counts(case: ExtremaCase, counts: &ChainCounts) -> Poly {
    if case == ExtremaCase::Trivial {
        return Poly::one();
    }
    let mut acc = Poly::zero();
    for (&i, &c) in &counts.counts {
        let basis = match case {
            ExtremaCase::Bounded => Poly::binomial_in_shifted(1, (i + 2) as u32),
            ExtremaCase::OneExtremum => Poly::binomial_in_shifted(0, (i + 1) as u32),
            ExtremaCase::NoExtremum if i >= 0 => Poly::binomial_in_shifted(-1, i as u32),
            _ => continue,
        };
        acc = &acc + &basis.scale(&Rational::from_integer(BigInt::from(c)));
    }
    acc
}

pub fn zeta_polynomial(p: &FinitePoset) -> Result<ZetaPolynomial> {
    require_pure(p)?;
    let case = ExtremaCase::of(p);
    Ok(ZetaPolynomial {
        case,
        poly: zeta_from_counts(case, &strict_chain_counts(p)),
    })
}

/// Zeta polynomial counting multichains fixed elementwise by `g`.
pub fn fixed_multichain_polynomial(p: &FinitePoset, g: &[usize]) -> Result<ZetaPolynomial> {
    require_pure(p)?;
    if !p.is_automorphism(g) {
        return Err(Error::NotAnAutomorphism(format!("{g:?}")));
    }
    let mut fixed = FixedBitSet::with_capacity(p.len());
    for (i, &gi) in g.iter().enumerate() {
        if gi == i {
            fixed.insert(i);
        }
    }
    let case = ExtremaCase::of(p);
    Ok(ZetaPolynomial {
        case,
        poly: zeta_from_counts(case, &strict_chain_counts_in(p, &fixed)),
    })
}

fn require_pure(p: &FinitePoset) -> Result<()> {
    if p.is_empty() {
        return Err(Error::InvalidArgument("empty poset".into()));
    }
    if !p.is_pure() {
        return Err(Error::NotPure(format!("poset with {} elements", p.len())));
    }
    Ok(())
}

/// Number of `k`-multichains `a_1 <= ... <= a_k` with every `a_i` in `allowed`.
pub fn count_multichains_in(p: &FinitePoset, k: usize, allowed: &FixedBitSet) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    let mut f: Vec<BigInt> = (0..p.len())
        .map(|i| if allowed.contains(i) { BigInt::one() } else { BigInt::zero() })
        .collect();
    for _ in 1..k {
        f = (0..p.len())
            .map(|y| {
                if !allowed.contains(y) {
                    return BigInt::zero();
                }
                p.down_set(y).ones().map(|x| &f[x]).sum()
            })
            .collect();
    }
    f.into_iter().sum()
}

pub fn count_multichains(p: &FinitePoset, k: usize) -> BigInt {
    let mut all = FixedBitSet::with_capacity(p.len());
    all.insert_range(..);
    count_multichains_in(p, k, &all)
}

/// Adds a least and/or greatest element where missing.
pub fn bounded_completion(p: &FinitePoset) -> FinitePoset {
    let n = p.len();
    let add_bottom = p.bottom().is_none();
    let add_top = p.top().is_none();
    let off = usize::from(add_bottom);
    let mut labels = Vec::with_capacity(n + 2);
    if add_bottom {
        labels.push("bottom".to_string());
    }
    labels.extend(p.labels().iter().cloned());
    if add_top {
        labels.push("top".to_string());
    }
    let last = labels.len() - 1;
    FinitePoset::from_relation(labels, |i, j| {
        if (add_bottom && i == 0) || (add_top && j == last) {
            return true;
        }
        if (add_bottom && j == 0) || (add_top && i == last) {
            return false;
        }
        p.leq(i - off, j - off)
    })
    .expect("adding extrema preserves the order axioms")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainRelationReport {
    pub case: ExtremaCase,
    pub dim: i64,
    pub mu: String,
    pub zeta: Vec<String>,
    pub chain_counts: ChainCounts,
    pub betti: BettiVector,
    pub checks: Vec<Check>,
}

impl ChainRelationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks the multichain relation against direct counts, Euler–Poincaré,
/// the Möbius evaluation of the zeta polynomial and, when homology is
/// concentrated in top degree, the top-homology evaluation.
pub fn verify_chain_relations(p: &FinitePoset) -> Result<ChainRelationReport> {
    let z = zeta_polynomial(p)?;
    let counts = strict_chain_counts(p);
    let dim = p.dim() as i64;
    let betti = homology_dims(p);
    let mut checks = Vec::new();

    let mut bad = Vec::new();
    for k in 1..=(dim + 3).max(1) as usize {
        let direct = Rational::from_integer(count_multichains(p, k));
        if z.eval(k as i64) != direct {
            bad.push(format!("k={k}: zeta {} vs direct {}", z.eval(k as i64), direct));
        }
    }
    checks.push(Check::new("multichain-relation", bad.is_empty(), bad.join("; ")));

    let chain_euler = counts.reduced_euler();
    let homology_euler = betti.reduced_euler();
    checks.push(Check::new(
        "euler-poincare",
        chain_euler == homology_euler,
        format!("chains {chain_euler}, homology {homology_euler}"),
    ));

    let completion = bounded_completion(p);
    let mu = if z.case == ExtremaCase::Trivial {
        BigInt::one()
    } else {
        let c = &completion;
        mobius(c, c.bottom().unwrap(), c.top().unwrap())?
    };
    let from_zeta = z.euler();
    let mu_check = z.case == ExtremaCase::Trivial || from_zeta == Rational::from_integer(mu.clone());
    checks.push(Check::new(
        "mobius-evaluation",
        mu_check,
        format!("zeta gives {from_zeta}, recursion gives {mu}"),
    ));

    if z.case != ExtremaCase::Trivial && betti.is_concentrated_in(dim) {
        let top = Rational::from_integer(BigInt::from(betti.get(dim)));
        let val = z.top_homology_value(dim);
        checks.push(Check::new(
            "top-homology-evaluation",
            val == top,
            format!("zeta gives {val}, homology gives {top}"),
        ));
    }
    Ok(ChainRelationReport {
        case: z.case,
        dim,
        mu: mu.to_string(),
        zeta: z.poly.coeffs().iter().map(|c| c.to_string()).collect(),
        chain_counts: counts,
        betti,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> FinitePoset {
        FinitePoset::chain(2).direct_product(&FinitePoset::chain(2))
    }

    #[test]
    fn chain_counts_small() {
        let c = strict_chain_counts(&FinitePoset::chain(2));
        assert_eq!(c.counts, BTreeMap::from([(-1, 1)]));
        let d = strict_chain_counts(&diamond());
        assert_eq!(d.counts, BTreeMap::from([(-1, 1), (0, 2)]));
    }

    #[test]
    fn zeta_small() {
        let z = zeta_polynomial(&FinitePoset::chain(2)).unwrap();
        assert_eq!(z.poly, Poly::from_ints(&[1, 1]));
        assert_eq!(z.eval(-2), Rational::from_integer((-1).into()));
        let z = zeta_polynomial(&diamond()).unwrap();
        assert_eq!(z.poly, Poly::from_ints(&[1, 2, 1]));
        assert_eq!(zeta_polynomial(&FinitePoset::chain(1)).unwrap().poly, Poly::one());
    }

    #[test]
    fn mobius_chain_and_diamond() {
        let c = FinitePoset::chain(3);
        assert_eq!(mobius(&c, 0, 1).unwrap(), BigInt::from(-1));
        assert_eq!(mobius(&c, 0, 2).unwrap(), BigInt::zero());
        assert!(mobius(&c, 2, 0).is_err());
        let d = diamond();
        assert_eq!(mobius(&d, 0, 3).unwrap(), BigInt::one());
        assert_eq!(mobius_to(&d, 3)[0], BigInt::one());
    }

    #[test]
    fn one_extremum_and_antichain() {
        // bottom below two incomparable tops
        let v = FinitePoset::from_covers(vec!["0".into(), "a".into(), "b".into()], &[(0, 1), (0, 2)])
            .unwrap();
        let r = verify_chain_relations(&v).unwrap();
        assert_eq!(r.case, ExtremaCase::OneExtremum);
        assert!(r.pass(), "{:?}", r.checks);
        let a = FinitePoset::antichain(3);
        let r = verify_chain_relations(&a).unwrap();
        assert_eq!(r.case, ExtremaCase::NoExtremum);
        assert!(r.pass(), "{:?}", r.checks);
        assert_eq!(zeta_polynomial(&a).unwrap().eval(4), Rational::from_integer(3.into()));
    }
}
