//! Truncated bivariate power series over a commutative coefficient ring.
//!
//! Coefficients are stored in the ordinary basis `x^p y^l`; the exponential
//! normalization `x^p y^l / (p! l!)` is applied only at the accessors.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::Rational;

/// Coefficient ring of a series: commutative, with a unit and a rational
/// scalar action.
pub trait Coeff: Clone + PartialEq + Debug {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, r: &Rational) -> Self;

    fn negated(&self) -> Self {
        self.scaled(&-<Rational as One>::one())
    }

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    fn from_rational(r: &Rational) -> Self {
        Self::one_elem().scaled(r)
    }
}

impl Coeff for Rational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, r: &Rational) -> Self {
        self * r
    }
    fn negated(&self) -> Self {
        -self
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
}

impl Coeff for Poly {
    fn zero_elem() -> Self {
        Poly::zero()
    }
    fn one_elem() -> Self {
        Poly::one()
    }
    fn is_zero_elem(&self) -> bool {
        Poly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, r: &Rational) -> Self {
        Poly::scale(self, r)
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `sum c[p,l] x^p y^l` truncated to total degree `<= order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series2<C> {
    order: usize,
    terms: BTreeMap<(usize, usize), C>,
}

pub type BivariateEgf = Series2<Rational>;

impl<C: Coeff> Series2<C> {
    pub fn zero(order: usize) -> Self {
        Series2 {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(order: usize, c: C) -> Self {
        let mut s = Self::zero(order);
        s.set(0, 0, c);
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, C::one_elem())
    }

    pub fn monomial(order: usize, p: usize, l: usize, c: C) -> Self {
        let mut s = Self::zero(order);
        s.set(p, l, c);
        s
    }

    pub fn x(order: usize) -> Self {
        Self::monomial(order, 1, 0, C::one_elem())
    }

    pub fn y(order: usize) -> Self {
        Self::monomial(order, 0, 1, C::one_elem())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &C)> {
        self.terms.iter()
    }

    /// Ordinary coefficient of `x^p y^l`.
    pub fn coeff(&self, p: usize, l: usize) -> C {
        self.terms.get(&(p, l)).cloned().unwrap_or_else(C::zero_elem)
    }

    /// Coefficient of `x^p y^l / (p! l!)`.
    pub fn egf_coeff(&self, p: usize, l: usize) -> C {
        let f = factorial(p) * factorial(l);
        self.coeff(p, l).scaled(&Rational::from_integer(f))
    }

    pub fn set(&mut self, p: usize, l: usize, c: C) {
        if p + l > self.order || c.is_zero_elem() {
            self.terms.remove(&(p, l));
        } else {
            self.terms.insert((p, l), c);
        }
    }

    pub fn set_egf(&mut self, p: usize, l: usize, c: C) {
        let f = factorial(p) * factorial(l);
        self.set(p, l, c.scaled(&Rational::new(BigInt::one(), f)));
    }

    pub fn from_egf<I: IntoIterator<Item = ((usize, usize), C)>>(order: usize, it: I) -> Self {
        let mut s = Self::zero(order);
        for ((p, l), c) in it {
            s.set_egf(p, l, c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> C {
        self.coeff(0, 0)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (&(p, l), c) in &self.terms {
            s.set(p, l, c.clone());
        }
        s
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order.min(other.order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = self.truncate(self.common_order(other));
        for (&(p, l), c) in &other.terms {
            let v = s.coeff(p, l).plus(c);
            s.set(p, l, v);
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negated())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.common_order(other);
        let mut out: BTreeMap<(usize, usize), C> = BTreeMap::new();
        for (&(p1, l1), a) in &self.terms {
            if p1 + l1 > order {
                continue;
            }
            for (&(p2, l2), b) in &other.terms {
                if p1 + l1 + p2 + l2 > order {
                    continue;
                }
                let e = out.entry((p1 + p2, l1 + l2)).or_insert_with(C::zero_elem);
                *e = e.plus(&a.times(b));
            }
        }
        out.retain(|_, c| !c.is_zero_elem());
        Series2 { order, terms: out }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scaled(r))
    }

    /// Multiplies every coefficient by the ring element `c`.
    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map(|a| a.times(c))
    }

    pub fn map<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> Series2<D> {
        let mut s = Series2::zero(self.order);
        for (&(p, l), c) in &self.terms {
            s.set(p, l, f(c));
        }
        s
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn require_zero_constant(&self) -> Result<()> {
        if self.constant_term().is_zero_elem() {
            Ok(())
        } else {
            Err(Error::NonzeroConstantTerm)
        }
    }

    /// `sum_k a_k f^k` for `f` without constant term.
    fn power_sum<F: Fn(usize) -> Rational>(&self, a: F) -> Self {
        let mut acc = Self::zero(self.order);
        let mut power = Self::one(self.order);
        for k in 0..=self.order {
            let ak = a(k);
            if !Zero::is_zero(&ak) {
                acc = acc.add(&power.scale(&ak));
            }
            power = power.mul(self);
            if power.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn exp(&self) -> Result<Self> {
        self.require_zero_constant()?;
        Ok(self.power_sum(|k| Rational::new(BigInt::one(), factorial(k))))
    }

    /// `log(1 + f)` for `f` without constant term.
    pub fn log1p(&self) -> Result<Self> {
        self.require_zero_constant()?;
        Ok(self.power_sum(|k| match k {
            0 => Rational::zero(),
            _ if k % 2 == 1 => Rational::new(BigInt::one(), BigInt::from(k)),
            _ => Rational::new(-BigInt::one(), BigInt::from(k)),
        }))
    }

    /// `1 / (1 + f)` for `f` without constant term.
    pub fn inv1p(&self) -> Result<Self> {
        self.require_zero_constant()?;
        Ok(self.power_sum(|k| if k % 2 == 0 { int(1) } else { int(-1) }))
    }

    /// Substitutes `x -> u`, `y -> v`; both must lack a constant term.
    pub fn compose(&self, u: &Self, v: &Self) -> Result<Self> {
        u.require_zero_constant()?;
        v.require_zero_constant()?;
        let order = self.order.min(u.order).min(v.order);
        let max_p = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let max_l = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let mut upow = vec![Self::one(order)];
        for _ in 0..max_p {
            upow.push(upow.last().unwrap().mul(u));
        }
        let mut vpow = vec![Self::one(order)];
        for _ in 0..max_l {
            vpow.push(vpow.last().unwrap().mul(v));
        }
        let mut acc = Self::zero(order);
        for (&(p, l), c) in &self.terms {
            acc = acc.add(&upow[p].mul(&vpow[l]).mul_coeff(c));
        }
        Ok(acc)
    }

    /// `x d/dx`.
    pub fn x_dx(&self) -> Self {
        let mut s = Self::zero(self.order);
        for (&(p, l), c) in &self.terms {
            s.set(p, l, c.scaled(&int(p as i64)));
        }
        s
    }

    /// `y d/dy`.
    pub fn y_dy(&self) -> Self {
        let mut s = Self::zero(self.order);
        for (&(p, l), c) in &self.terms {
            s.set(p, l, c.scaled(&int(l as i64)));
        }
        s
    }

    /// Swaps the roles of `x` and `y`.
    pub fn swap_xy(&self) -> Self {
        let mut s = Self::zero(self.order);
        for (&(p, l), c) in &self.terms {
            s.set(l, p, c.clone());
        }
        s
    }
}

impl Series2<Rational> {
    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Result<Self> {
        let c = self.constant_term();
        if Zero::is_zero(&c) {
            return Err(Error::NonInvertible);
        }
        let ci = c.recip();
        let rest = self.scale(&ci).sub(&Self::one(self.order));
        Ok(rest.inv1p()?.scale(&ci))
    }

    /// Natural logarithm; the constant term must be one.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::NonInvertible);
        }
        self.sub(&Self::one(self.order)).log1p()
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            order: self.order,
            coeffs: self
                .terms
                .keys()
                .map(|&(p, l)| {
                    let c = self.egf_coeff(p, l);
                    SeriesTerm {
                        p,
                        l,
                        num: c.numer().to_string(),
                        den: c.denom().to_string(),
                    }
                })
                .collect(),
        }
    }

    pub fn from_json(j: &SeriesJson) -> Result<Self> {
        let mut s = Self::zero(j.order);
        for t in &j.coeffs {
            let num: BigInt = t
                .num
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad numerator {:?}", t.num)))?;
            let den: BigInt = t
                .den
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad denominator {:?}", t.den)))?;
            if den.is_zero() {
                return Err(Error::InvalidArgument("zero denominator".into()));
            }
            s.set_egf(t.p, t.l, Rational::new(num, den));
        }
        Ok(s)
    }
}

impl Series2<Poly> {
    pub fn lift(s: &Series2<Rational>) -> Self {
        s.map(|c| Poly::constant(c.clone()))
    }

    pub fn eval_t(&self, t: &Rational) -> Series2<Rational> {
        self.map(|c| c.eval(t))
    }
}

/// Serialized series: exponential coefficients as exact fractions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<SeriesTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub p: usize,
    pub l: usize,
    pub num: String,
    pub den: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = BivariateEgf;

    #[test]
    fn exp_of_sum_of_variables() {
        let e = S::x(6).add(&S::y(6)).exp().unwrap();
        for p in 0..=6 {
            for l in 0..=6 - p {
                assert_eq!(e.egf_coeff(p, l), int(1));
            }
        }
        assert_eq!(S::zero(4).exp().unwrap(), S::one(4));
        assert!(S::one(4).exp().is_err());
    }

    #[test]
    fn log_inverts_exp() {
        let f = S::x(6).mul(&S::y(6)).add(&S::x(6).scale(&int(3)));
        assert_eq!(f.exp().unwrap().log().unwrap(), f);
        let g = S::one(6).add(&f);
        assert_eq!(g.mul(&g.inv().unwrap()), S::one(6));
    }

    #[test]
    fn compose_identity_and_swap() {
        let f = S::x(5).add(&S::y(5)).exp().unwrap().sub(&S::one(5));
        assert_eq!(f.compose(&S::x(5), &S::y(5)).unwrap(), f);
        assert_eq!(f.compose(&S::y(5), &S::x(5)).unwrap(), f.swap_xy());
    }

    #[test]
    fn json_round_trip() {
        let f = S::x(4).add(&S::y(4)).exp().unwrap().scale(&Rational::new(1.into(), 3.into()));
        let j = f.to_json();
        assert_eq!(j.coeffs[1].num, "1");
        assert_eq!(j.coeffs[1].den, "3");
        assert_eq!(S::from_json(&j).unwrap(), f);
    }
}
