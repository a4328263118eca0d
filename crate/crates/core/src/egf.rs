//! Multichain generating series of semi-pointed partition posets, their
//! continuation to negative `k`, and the closed dimension formulas.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::Check;
use crate::poly::Poly;
use crate::series::{factorial, int, BivariateEgf};
use crate::Rational;

/// Generating series of `k`-multichains: `pm` starts at a pointed one-block
/// partition, `um` at an unpointed one, `all` is unrestricted and
/// `with_mult` counts `(k-1)`-multichains together with a maximal interval
/// containing them.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainSeriesFamily {
    pub k: i64,
    pub pm: BivariateEgf,
    pub um: BivariateEgf,
    pub all: BivariateEgf,
    pub with_mult: BivariateEgf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    Pm,
    Um,
    All,
    WithMult,
}

impl ChainSeriesFamily {
    fn from_parts(k: i64, pm: BivariateEgf, um: BivariateEgf) -> Self {
        let with_mult = pm.add(&um);
        let all = with_mult.exp().expect("no constant term").sub(&BivariateEgf::one(pm.order()));
        ChainSeriesFamily {
            k,
            pm,
            um,
            all,
            with_mult,
        }
    }

    pub fn get(&self, which: SeriesKind) -> &BivariateEgf {
        match which {
            SeriesKind::Pm => &self.pm,
            SeriesKind::Um => &self.um,
            SeriesKind::All => &self.all,
            SeriesKind::WithMult => &self.with_mult,
        }
    }

    fn next(&self) -> Self {
        let o = self.pm.order();
        let pm = self.pm.mul(&self.with_mult.exp().unwrap());
        let um = self
            .pm
            .exp()
            .unwrap()
            .mul(&self.um.exp().unwrap().sub(&BivariateEgf::one(o)));
        Self::from_parts(self.k + 1, pm, um)
    }
}

/// Families for `k = 0..=kmax`, by the recursion starting at `(x, y)`.
pub fn chain_series_upto(kmax: usize, order: usize) -> Vec<ChainSeriesFamily> {
    let mut out = vec![ChainSeriesFamily::from_parts(0, BivariateEgf::x(order), BivariateEgf::y(order))];
    for _ in 0..kmax {
        let next = out.last().unwrap().next();
        out.push(next);
    }
    out
}

pub fn chain_series(k: usize, order: usize) -> ChainSeriesFamily {
    chain_series_upto(k, order).pop().unwrap()
}

/// `(pm, um, all)` at level `k` computed by splitting each multichain at its
/// finest element: level `k` is level `k - 1` composed with level one.
pub fn chain_series_top_split(k: usize, order: usize) -> (BivariateEgf, BivariateEgf, BivariateEgf) {
    let x = BivariateEgf::x(order);
    let y = BivariateEgf::y(order);
    let exy = x.add(&y).exp().unwrap();
    let one = BivariateEgf::one(order);
    let pm1 = x.mul(&exy);
    let um1 = exy.sub(&x.exp().unwrap());
    let (mut pm, mut um, mut all) = (x, y, exy.sub(&one));
    for _ in 0..k {
        pm = pm.compose(&pm1, &um1).unwrap();
        um = um.compose(&pm1, &um1).unwrap();
        all = all.compose(&pm1, &um1).unwrap();
    }
    (pm, um, all)
}

/// Checks the four relations between consecutive levels for `k = 1..=kmax`
/// on families produced by the top-split route.
pub fn verify_relations(kmax: usize, order: usize) -> Vec<Check> {
    let one = BivariateEgf::one(order);
    let levels: Vec<_> = (0..=kmax).map(|k| chain_series_top_split(k, order)).collect();
    let recursive = chain_series_upto(kmax, order);
    let mut checks = Vec::new();
    for k in 1..=kmax {
        let (pm0, um0, _) = &levels[k - 1];
        let (pm, um, all) = &levels[k];
        let sum0 = pm0.add(um0);
        let r1 = *pm == pm0.mul(&sum0.exp().unwrap());
        let r2 = *um == pm0.exp().unwrap().mul(&um0.exp().unwrap().sub(&one));
        let r3 = *all == pm.add(um).exp().unwrap().sub(&one);
        let r4 = recursive[k].with_mult == pm.add(um);
        let same = recursive[k].pm == *pm && recursive[k].um == *um && recursive[k].all == *all;
        for (name, ok) in [
            ("pointed-recursion", r1),
            ("unpointed-recursion", r2),
            ("all-from-one-block", r3),
            ("with-multiplicity", r4),
            ("routes-agree", same),
        ] {
            checks.push(Check::new(format!("{name} k={k}"), ok, format!("order {order}")));
        }
    }
    checks
}

/// Minimum interpolation depth for the coefficient at `(p, l)`.
pub fn required_depth(p: usize, l: usize) -> usize {
    p + l + 1
}

pub fn default_depth(p: usize, l: usize) -> usize {
    p + l + 3
}

fn interpolate_at(values: &[Rational], k_eval: i64) -> Rational {
    let pts: Vec<(Rational, Rational)> = values
        .iter()
        .enumerate()
        .map(|(i, v)| (int(i as i64 + 1), v.clone()))
        .collect();
    Poly::interpolate(&pts).eval_int(k_eval)
}

/// Value at `k_eval` of the polynomial in `k` through the exponential
/// coefficient at `(p, l)` for `k = 1..=depth`.
pub fn extrapolate_coefficient(
    which: SeriesKind,
    p: usize,
    l: usize,
    k_eval: i64,
    depth: usize,
) -> Result<Rational> {
    let required = required_depth(p, l);
    if depth < required {
        return Err(Error::InsufficientDepth { depth, required });
    }
    let fams = chain_series_upto(depth, p + l);
    let values: Vec<Rational> = fams[1..].iter().map(|f| f.get(which).egf_coeff(p, l)).collect();
    Ok(interpolate_at(&values, k_eval))
}

/// Every coefficient of the series continued to `k_eval`, each with the
/// default depth.
pub fn extrapolate_series(which: SeriesKind, k_eval: i64, order: usize) -> BivariateEgf {
    let depth = default_depth(order, 0);
    let fams = chain_series_upto(depth, order);
    let mut out = BivariateEgf::zero(order);
    for p in 0..=order {
        for l in 0..=order - p {
            let d = default_depth(p, l);
            let values: Vec<Rational> =
                fams[1..=d].iter().map(|f| f.get(which).egf_coeff(p, l)).collect();
            out.set_egf(p, l, interpolate_at(&values, k_eval));
        }
    }
    out
}

/// Solves `x = A (y + e^A)` by iteration and sets `B = log(y + e^A) - A`.
pub fn solve_fixed_point(order: usize) -> (BivariateEgf, BivariateEgf) {
    let x = BivariateEgf::x(order);
    let y = BivariateEgf::y(order);
    let mut a = x.clone();
    for _ in 0..=order {
        let denom = y.add(&a.exp().unwrap());
        a = x.mul(&denom.inv().unwrap());
    }
    let b = y.add(&a.exp().unwrap()).log().unwrap().sub(&a);
    (a, b)
}

/// Residuals of `x = A e^{A+B}` and `y = e^{A+B} - e^A`.
pub fn fixed_point_residuals(a: &BivariateEgf, b: &BivariateEgf) -> (BivariateEgf, BivariateEgf) {
    let o = a.order();
    let eab = a.add(b).exp().unwrap();
    let r1 = a.mul(&eab).sub(&BivariateEgf::x(o));
    let r2 = eab.sub(&a.exp().unwrap()).sub(&BivariateEgf::y(o));
    (r1, r2)
}

/// `x d/dx (A + B) - x d/dx A - y d/dy A`.
pub fn differential_residual(a: &BivariateEgf, b: &BivariateEgf) -> BivariateEgf {
    a.add(b).x_dx().sub(&a.x_dx()).sub(&a.y_dy())
}

/// Solution `W` of `W = x phi(W)`, where `phi` is given as a series whose
/// `x` slot stands for `W` (the `y` slot is a parameter).
pub fn lagrange_coefficients(phi: &BivariateEgf, order: usize) -> Result<BivariateEgf> {
    if phi.constant_term().is_zero() {
        return Err(Error::NonInvertible);
    }
    let phi = phi.truncate(order);
    let mut out = BivariateEgf::zero(order);
    let mut power = BivariateEgf::one(order);
    for n in 1..=order {
        power = power.mul(&phi);
        for m in 0..=(order - n) {
            let c = power.coeff(n - 1, m) / int(n as i64);
            out.set(n, m, c);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimensionKind {
    /// Sum over the maximal intervals with a pointed one-block end.
    Pointed,
    /// The poset with an added least element.
    Bounded,
    /// Sum over all maximal intervals.
    AllIntervals,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedDimension {
    pub value: BigInt,
    /// False when `p = 0` falls outside the range of the product formula.
    pub in_range: bool,
}

fn int_pow(b: usize, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(b), e)
}

/// Closed product formulas for top homology dimensions, as absolute values.
pub fn closed_form_dimension(p: usize, l: usize, kind: DimensionKind) -> Result<ClosedDimension> {
    let n = p + l;
    if n == 0 {
        return Err(Error::EmptyGroundSet);
    }
    if p == 0 {
        let value = match kind {
            DimensionKind::Pointed => BigInt::zero(),
            DimensionKind::Bounded | DimensionKind::AllIntervals => factorial(l - 1),
        };
        return Ok(ClosedDimension {
            value,
            in_range: kind == DimensionKind::AllIntervals,
        });
    }
    let base = factorial(n - 1);
    let value = match kind {
        DimensionKind::Pointed => base / factorial(p - 1) * int_pow(n, p - 1),
        DimensionKind::Bounded => base / factorial(p - 1) * int_pow(n - 1, p - 1),
        DimensionKind::AllIntervals => base * int_pow(n, p) / factorial(p),
    };
    Ok(ClosedDimension {
        value,
        in_range: true,
    })
}

/// Number of semi-pointed partitions for every `(p, l)` with `1 <= p+l <= max_n`,
/// read off the level-one series.
pub fn table1(max_n: usize) -> Vec<((usize, usize), BigInt)> {
    let all = chain_series(1, max_n).all;
    let mut out = Vec::new();
    for p in 0..=max_n {
        for l in 0..=max_n - p {
            if p + l == 0 {
                continue;
            }
            let c = all.egf_coeff(p, l);
            debug_assert!(c.is_integer());
            out.push(((p, l), c.to_integer()));
        }
    }
    out
}

/// Sign `(-1)^{n-1}`.
pub fn alternating_sign(n: usize) -> Rational {
    if n % 2 == 1 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_zero_and_one() {
        let f0 = chain_series(0, 8);
        assert_eq!(f0.pm, BivariateEgf::x(8));
        assert_eq!(f0.um, BivariateEgf::y(8));
        let o = 6;
        let f1 = chain_series(1, o);
        let exy = BivariateEgf::x(o).add(&BivariateEgf::y(o)).exp().unwrap();
        assert_eq!(f1.pm, BivariateEgf::x(o).mul(&exy));
    }

    #[test]
    fn table_corner_entries() {
        let t: std::collections::HashMap<_, _> = table1(9).into_iter().collect();
        assert_eq!(t[&(3, 2)], BigInt::from(173));
        assert_eq!(t[&(0, 5)], BigInt::from(52));
        assert_eq!(t[&(1, 0)], BigInt::from(1));
    }

    #[test]
    fn fixed_point_low_order() {
        let (a, b) = solve_fixed_point(6);
        assert_eq!(a.egf_coeff(1, 0), int(1));
        assert_eq!(b.egf_coeff(0, 1), int(1));
        assert_eq!(a.egf_coeff(1, 2), int(2));
        let (r1, r2) = fixed_point_residuals(&a, &b);
        assert!(r1.is_zero() && r2.is_zero());
    }

    #[test]
    fn lagrange_tree_equation() {
        let phi = BivariateEgf::x(7).exp().unwrap();
        let w = lagrange_coefficients(&phi, 7).unwrap();
        for n in 1..=7usize {
            assert_eq!(w.egf_coeff(n, 0), int((n as i64).pow(n as u32 - 1)));
        }
        assert_eq!(lagrange_coefficients(&BivariateEgf::one(5), 5).unwrap(), BivariateEgf::x(5));
        assert!(lagrange_coefficients(&BivariateEgf::x(5), 5).is_err());
    }

    #[test]
    fn depth_is_enforced() {
        assert!(matches!(
            extrapolate_coefficient(SeriesKind::Pm, 1, 2, -1, 3),
            Err(Error::InsufficientDepth { depth: 3, required: 4 })
        ));
        assert_eq!(extrapolate_coefficient(SeriesKind::Pm, 1, 0, -1, 4).unwrap(), int(1));
    }

    #[test]
    fn closed_forms() {
        let v = |p, l, k| closed_form_dimension(p, l, k).unwrap().value;
        assert_eq!(v(1, 2, DimensionKind::Pointed), BigInt::from(2));
        assert_eq!(v(1, 2, DimensionKind::Bounded), BigInt::from(2));
        assert_eq!(v(1, 1, DimensionKind::AllIntervals), BigInt::from(2));
        let z = closed_form_dimension(0, 4, DimensionKind::Bounded).unwrap();
        assert_eq!(z.value, BigInt::from(6));
        assert!(!z.in_range);
    }
}
