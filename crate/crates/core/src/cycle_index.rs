//! Cycle index series in two families of power-sum variables `p_i`, `q_j`,
//! and cycle types of permutations of a bipartitioned label set.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::GroundSet;
use crate::poly::Poly;
use crate::series::{factorial, int};
use crate::Rational;

/// Exponents of `p_1, p_2, ...` and `q_1, q_2, ...`; trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub p: Vec<u32>,
    pub q: Vec<u32>,
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn add_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        *o = a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0);
    }
    out
}

impl Monomial {
    pub fn new(mut p: Vec<u32>, mut q: Vec<u32>) -> Self {
        trim(&mut p);
        trim(&mut q);
        Monomial { p, q }
    }

    pub fn weight(&self) -> usize {
        let w = |v: &[u32]| v.iter().enumerate().map(|(i, &e)| (i + 1) * e as usize).sum::<usize>();
        w(&self.p) + w(&self.q)
    }

    pub fn degree(&self) -> u32 {
        self.p.iter().sum::<u32>() + self.q.iter().sum::<u32>()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(add_exps(&self.p, &other.p), add_exps(&self.q, &other.q))
    }

    /// `prod i^{e_i} e_i!` over both families.
    pub fn z_factor(&self) -> BigInt {
        let z = |v: &[u32]| {
            v.iter().enumerate().fold(BigInt::one(), |acc, (i, &e)| {
                acc * num_traits::pow(BigInt::from(i + 1), e as usize) * factorial(e as usize)
            })
        };
        z(&self.p) * z(&self.q)
    }
}

/// `sum c_m m` over monomials of weight `<= weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleIndexSeries {
    weight: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl CycleIndexSeries {
    pub fn zero(weight: usize) -> Self {
        CycleIndexSeries {
            weight,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(weight: usize, c: Rational) -> Self {
        let mut s = Self::zero(weight);
        s.set(Monomial::default(), c);
        s
    }

    pub fn one(weight: usize) -> Self {
        Self::constant(weight, Rational::one())
    }

    pub fn p(weight: usize, k: usize) -> Self {
        let mut e = vec![0; k];
        e[k - 1] = 1;
        let mut s = Self::zero(weight);
        s.set(Monomial::new(e, Vec::new()), Rational::one());
        s
    }

    pub fn q(weight: usize, k: usize) -> Self {
        let mut e = vec![0; k];
        e[k - 1] = 1;
        let mut s = Self::zero(weight);
        s.set(Monomial::new(Vec::new(), e), Rational::one());
        s
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient times `z_m`: the number of structures fixed by a
    /// permutation of cycle type `m`, for series of species.
    pub fn fixed_point_count(&self, m: &Monomial) -> Rational {
        self.coeff(m) * Rational::from_integer(m.z_factor())
    }

    pub fn set(&mut self, m: Monomial, c: Rational) {
        if m.weight() > self.weight || c.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, c);
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::default())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = Self::zero(self.weight.min(other.weight));
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            let v = s.coeff(m) + c;
            s.set(m.clone(), v);
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut s = Self::zero(self.weight);
        for (m, c) in &self.terms {
            s.set(m.clone(), c * r);
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let weight = self.weight.min(other.weight);
        let mut out: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, a) in &self.terms {
            let w1 = m1.weight();
            for (m2, b) in &other.terms {
                if w1 + m2.weight() > weight {
                    continue;
                }
                *out.entry(m1.mul(m2)).or_insert_with(Rational::zero) += a * b;
            }
        }
        out.retain(|_, c| !c.is_zero());
        CycleIndexSeries { weight, terms: out }
    }

    fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.weight), |acc, _| acc.mul(self))
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut acc = Self::zero(self.weight);
        let mut power = Self::one(self.weight);
        for k in 0..=self.weight {
            acc = acc.add(&power.scale(&Rational::new(BigInt::one(), factorial(k))));
            power = power.mul(self);
        }
        Ok(acc)
    }

    /// Cycle index of sets on one sort: `exp(sum_k p_k / k)`.
    pub fn sets(weight: usize) -> Self {
        let mut f = Self::zero(weight);
        for k in 1..=weight {
            f = f.add(&Self::p(weight, k).scale(&Rational::new(BigInt::one(), BigInt::from(k))));
        }
        f.exp().expect("no constant term")
    }

    /// Sets on both sorts: `exp(sum_k (p_k + q_k) / k)`.
    pub fn sets2(weight: usize) -> Self {
        let mut f = Self::zero(weight);
        for k in 1..=weight {
            let r = Rational::new(BigInt::one(), BigInt::from(k));
            f = f.add(&Self::p(weight, k).add(&Self::q(weight, k)).scale(&r));
        }
        f.exp().expect("no constant term")
    }

    /// `g` with every `p_i` replaced by `p_{ik}` and `q_j` by `q_{jk}`.
    pub fn dilate(&self, k: usize) -> Self {
        let stretch = |v: &[u32]| {
            let mut out = vec![0; v.len() * k];
            for (i, &e) in v.iter().enumerate() {
                out[(i + 1) * k - 1] = e;
            }
            out
        };
        let mut s = Self::zero(self.weight);
        for (m, c) in &self.terms {
            s.set(Monomial::new(stretch(&m.p), stretch(&m.q)), c.clone());
        }
        s
    }
}

/// Plethystic substitution `f ∘ g`: `p_k ↦ g(p_k, p_2k, ..., q_k, q_2k, ...)`;
/// the `q_j` of `f` are left unchanged.
pub fn plethysm(f: &CycleIndexSeries, g: &CycleIndexSeries) -> Result<CycleIndexSeries> {
    if !g.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let weight = f.weight.min(g.weight);
    let max_k = f.terms.keys().map(|m| m.p.len()).max().unwrap_or(0);
    let dilated: Vec<CycleIndexSeries> = (1..=max_k).map(|k| g.dilate(k)).collect();
    let mut acc = CycleIndexSeries::zero(weight);
    for (m, c) in &f.terms {
        let mut term = CycleIndexSeries::zero(weight);
        term.set(Monomial::new(Vec::new(), m.q.clone()), c.clone());
        for (i, &e) in m.p.iter().enumerate() {
            if e > 0 {
                term = term.mul(&dilated[i].truncate(weight).pow(e));
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

impl CycleIndexSeries {
    fn truncate(&self, weight: usize) -> Self {
        let mut s = Self::zero(weight);
        for (m, c) in &self.terms {
            s.set(m.clone(), c.clone());
        }
        s
    }
}

/// `-f(-p_1, -p_2, ..., -q_1, -q_2, ...)`.
pub fn suspension(f: &CycleIndexSeries) -> CycleIndexSeries {
    let mut s = CycleIndexSeries::zero(f.weight);
    for (m, c) in &f.terms {
        let v = if m.degree() % 2 == 0 { -c } else { c.clone() };
        s.set(m.clone(), v);
    }
    s
}

/// Number-theoretic Möbius function.
pub fn number_mobius(n: usize) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `g_{m,t} = (1/m) sum_{k | m} möb(k) t^{m/k}`.
pub fn g_poly(m: usize) -> Poly {
    let mut coeffs = vec![Rational::zero(); m + 1];
    for k in (1..=m).filter(|k| m.is_multiple_of(*k)) {
        coeffs[m / k] += int(number_mobius(k));
    }
    Poly::from_coeffs(coeffs).scale(&Rational::new(BigInt::one(), BigInt::from(m)))
}

/// Cycle type of a permutation preserving the pointable/non-pointable split:
/// `lambda[i-1]` cycles of length `i` on pointable labels, `mu[j-1]` cycles of
/// length `j` on the others.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType {
    pub lambda: Vec<u32>,
    pub mu: Vec<u32>,
}

impl CycleType {
    pub fn new(mut lambda: Vec<u32>, mut mu: Vec<u32>) -> Self {
        trim(&mut lambda);
        trim(&mut mu);
        CycleType { lambda, mu }
    }

    /// Parses comma lists such as `"1,0,1"` (one fixed point, one 3-cycle).
    pub fn parse(lambda: &str, mu: &str) -> Result<Self> {
        let parse = |s: &str| -> Result<Vec<u32>> {
            s.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::InvalidArgument(format!("bad cycle count {t:?}")))
                })
                .collect()
        };
        Ok(Self::new(parse(lambda)?, parse(mu)?))
    }

    pub fn identity(gs: &GroundSet) -> Self {
        Self::new(vec![gs.p as u32], vec![gs.l as u32])
    }

    pub fn lambda_at(&self, i: usize) -> u32 {
        self.lambda.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn mu_at(&self, j: usize) -> u32 {
        self.mu.get(j.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn p(&self) -> usize {
        self.lambda.iter().enumerate().map(|(i, &c)| (i + 1) * c as usize).sum()
    }

    pub fn l(&self) -> usize {
        self.mu.iter().enumerate().map(|(i, &c)| (i + 1) * c as usize).sum()
    }

    pub fn n(&self) -> usize {
        self.p() + self.l()
    }

    pub fn ground_set(&self) -> Result<GroundSet> {
        GroundSet::new(self.p(), self.l())
    }

    /// `λ_m + μ_m`.
    pub fn cycles_of_length(&self, m: usize) -> u32 {
        self.lambda_at(m) + self.mu_at(m)
    }

    /// Lengths `m` with at least one cycle.
    pub fn lengths(&self) -> Vec<usize> {
        (1..=self.lambda.len().max(self.mu.len()))
            .filter(|&m| self.cycles_of_length(m) > 0)
            .collect()
    }

    /// `α_m = sum_{d | m} d (λ_d + μ_d)`.
    pub fn alpha(&self, m: usize) -> u64 {
        (1..=m)
            .filter(|d| m.is_multiple_of(*d))
            .map(|d| d as u64 * u64::from(self.cycles_of_length(d)))
            .sum()
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::new(self.lambda.clone(), self.mu.clone())
    }

    /// Canonical permutation of this type: cycles in increasing length on
    /// consecutive labels, each sending `a` to `a + 1`. `perm[label-1]` is
    /// the image.
    pub fn permutation(&self) -> Vec<u32> {
        let mut perm = Vec::with_capacity(self.n());
        let mut next = 1u32;
        for counts in [&self.lambda, &self.mu] {
            for (i, &c) in counts.iter().enumerate() {
                let len = i as u32 + 1;
                for _ in 0..c {
                    for a in 0..len {
                        perm.push(next + (a + 1) % len);
                    }
                    next += len;
                }
            }
        }
        perm
    }

    pub fn of_permutation(gs: &GroundSet, perm: &[u32]) -> Result<Self> {
        if perm.len() != gs.n() {
            return Err(Error::InvalidArgument("permutation has the wrong size".into()));
        }
        let mut seen = vec![false; perm.len()];
        let mut lambda = Vec::new();
        let mut mu = Vec::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                len += 1;
                cur = perm[cur] as usize - 1;
            }
            let target = if gs.is_pointable(start as u32 + 1) { &mut lambda } else { &mut mu };
            if target.len() < len {
                target.resize(len, 0);
            }
            target[len - 1] += 1;
        }
        Ok(Self::new(lambda, mu))
    }

    /// All cycle types with the given numbers of pointable and
    /// non-pointable labels.
    pub fn all_of_size(p: usize, l: usize) -> Vec<CycleType> {
        let mut out = Vec::new();
        for a in integer_partitions(p) {
            for b in integer_partitions(l) {
                out.push(CycleType::new(a.clone(), b));
            }
        }
        out
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "lambda=[{}] mu=[{}]", list(&self.lambda), list(&self.mu))
    }
}

/// Partitions of `n` as multiplicity vectors.
pub fn integer_partitions(n: usize) -> Vec<Vec<u32>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            let mut v = cur.clone();
            trim(&mut v);
            out.push(v);
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            cur[part - 1] += 1;
            go(rest - part, part, cur, out);
            cur[part - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut vec![0; n.max(1)], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_values() {
        let v: Vec<i64> = (1..=10).map(number_mobius).collect();
        assert_eq!(v, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn g_polynomials() {
        assert_eq!(g_poly(1), Poly::t());
        // (t^2 - t) / 2
        assert_eq!(g_poly(2), Poly::from_coeffs(vec![int(0), Rational::new((-1).into(), 2.into()), Rational::new(1.into(), 2.into())]));
    }

    #[test]
    fn plethysm_units_and_powers() {
        let w = 6;
        let f = CycleIndexSeries::sets(w);
        let p1 = CycleIndexSeries::p(w, 1);
        assert_eq!(plethysm(&f, &p1).unwrap(), f);
        let g = f.sub(&CycleIndexSeries::one(w));
        assert_eq!(plethysm(&p1, &g).unwrap(), g);
        assert_eq!(plethysm(&CycleIndexSeries::p(w, 2), &CycleIndexSeries::p(w, 3)).unwrap(), CycleIndexSeries::p(w, 6));
    }

    #[test]
    fn set_partitions_via_plethysm() {
        let w = 6;
        let e = CycleIndexSeries::sets(w);
        let e1 = e.sub(&CycleIndexSeries::one(w));
        let parts = plethysm(&e, &e1).unwrap();
        let bell = [1, 1, 2, 5, 15, 52, 203];
        for (n, &b) in bell.iter().enumerate() {
            let m = Monomial::new(vec![n as u32], Vec::new());
            assert_eq!(parts.fixed_point_count(&m), int(b));
        }
    }

    #[test]
    fn suspension_signs() {
        let w = 4;
        let p1 = CycleIndexSeries::p(w, 1);
        assert_eq!(suspension(&p1), p1);
        let sq = p1.mul(&p1).scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(suspension(&sq), sq.scale(&int(-1)));
        let e = CycleIndexSeries::sets2(w);
        assert_eq!(suspension(&suspension(&e)), e);
    }

    #[test]
    fn cycle_types_and_permutations() {
        let ct = CycleType::parse("1,0,1", "0,1").unwrap();
        assert_eq!((ct.p(), ct.l()), (4, 2));
        assert_eq!(ct.permutation(), vec![1, 3, 4, 2, 6, 5]);
        let gs = ct.ground_set().unwrap();
        assert_eq!(CycleType::of_permutation(&gs, &ct.permutation()).unwrap(), ct);
        assert_eq!(ct.alpha(2), 1 + 2);
        assert_eq!(integer_partitions(4).len(), 5);
        assert_eq!(CycleType::all_of_size(2, 2).len(), 4);
        assert_eq!(integer_partitions(0), vec![Vec::<u32>::new()]);
    }
}
