//! Characteristic polynomials in the dual orientation: the exponent of `t`
//! at a partition `x` is its number of parts minus one.

use num_traits::Zero;

use crate::egf::solve_fixed_point;
use crate::error::{Error, Result};
use crate::invariants::{mobius_from, mobius_to, Check};
use crate::partition::GroundSet;
use crate::poly::Poly;
use crate::poset::FinitePoset;
use crate::series::{Coeff, Series2};
use crate::spp_poset::{build_poset, PosetVariant};
use crate::Rational;

/// `Π_{i=a}^{b} (t - i)`.
fn falling(a: usize, b: usize) -> Poly {
    Poly::from_roots((a..=b).map(|i| i as i64))
}

/// `base * (t - root)^e` with `e` possibly negative; the division must be exact.
fn times_power(base: Poly, root: usize, e: i64) -> Result<Poly> {
    let lin = Poly::from_roots([root as i64]);
    if e >= 0 {
        return Ok(&base * &lin.pow(e as u32));
    }
    base.div_exact(&lin.pow((-e) as u32)).ok_or_else(|| {
        Error::InvalidArgument(format!("(t-{root})^{e} does not cancel"))
    })
}

/// Product formulas for the pointed interval, the unbounded poset and the
/// bounded poset. Unpointed intervals have none.
pub fn charpoly_closed(gs: &GroundSet, variant: PosetVariant) -> Result<Poly> {
    variant.check(gs)?;
    let (p, n) = (gs.p, gs.n());
    let tail = falling(p + 1, n);
    match variant {
        PosetVariant::PointedInterval => {
            times_power(&Poly::from_roots([1]) * &tail, n, p as i64 - 2)
        }
        PosetVariant::Unbounded => times_power(tail, n, p as i64 - 1),
        PosetVariant::Bounded => {
            let s = times_power(tail, n, p as i64 - 1)?;
            let at_one = s.eval_int(1);
            Ok(&(&Poly::t() * &s) - &Poly::constant(at_one))
        }
        PosetVariant::UnpointedInterval => Err(Error::InvalidVariant(
            "no product formula for unpointed intervals".into(),
        )),
    }
}

/// `Σ_x μ(0̂, x) t^{rk(1̂) - rk(x)}` on a bounded graded poset.
pub fn charpoly_of_bounded(p: &FinitePoset) -> Result<Poly> {
    let (Some(b), Some(top)) = (p.bottom(), p.top()) else {
        return Err(Error::InvalidArgument("poset is not bounded".into()));
    };
    let mu = mobius_from(p, b);
    let mut coeffs = vec![Rational::zero(); p.rank(top) + 1];
    for (x, m) in mu.iter().enumerate() {
        coeffs[p.rank(top) - p.rank(x)] += Rational::from_integer(m.clone());
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// Default cap on `p + l` for brute-force characteristic polynomials.
pub const CHARPOLY_CAP: usize = 6;

/// Characteristic polynomial from the Möbius function of the actual poset.
/// Bounded posets and intervals use the literal definition on the dual;
/// the unbounded poset uses `Σ_x μ(x, ŷ) t^{parts(x) - 1}`.
pub fn charpoly_brute(gs: &GroundSet, variant: PosetVariant, cap: usize) -> Result<Poly> {
    if gs.n() > cap {
        return Err(Error::CapExceeded { size: gs.n(), cap });
    }
    let sp = build_poset(*gs, variant)?;
    match variant {
        PosetVariant::Unbounded => {
            let top = sp.poset.top().expect("all singletons is the top");
            let mu = mobius_to(&sp.poset, top);
            let mut coeffs = vec![Rational::zero(); gs.n()];
            for (x, m) in mu.iter().enumerate() {
                let parts = sp.elements[x].as_ref().unwrap().num_parts();
                coeffs[parts - 1] += Rational::from_integer(m.clone());
            }
            Ok(Poly::from_coeffs(coeffs))
        }
        _ => charpoly_of_bounded(&sp.poset.dual()),
    }
}

/// Characteristic polynomials read from series in `(x, y)` with
/// coefficients in `Q[t]`, built from the fixed-point pair `(A, B)`.
pub struct CharSeries {
    /// `A e^{t(A+B)}`: `p` times the pointed interval polynomial.
    pub pointed: Series2<Poly>,
    /// `(e^{tB} - 1) e^{tA} / t`: the unpointed interval polynomial.
    pub unpointed: Series2<Poly>,
    /// `(e^{t(A+B)} - 1) / t`: the unbounded poset polynomial.
    pub unbounded: Series2<Poly>,
}

fn div_t(s: &Series2<Poly>) -> Series2<Poly> {
    s.map(|c| c.div_exact(&Poly::t()).expect("series has zero constant term in t"))
}

pub fn char_series(order: usize) -> Result<CharSeries> {
    let (a, b) = solve_fixed_point(order);
    let (a, b) = (Series2::<Poly>::lift(&a), Series2::<Poly>::lift(&b));
    let t = Poly::t();
    let ta = a.mul_coeff(&t);
    let tb = b.mul_coeff(&t);
    let e_ta = ta.exp()?;
    let e_tab = ta.add(&tb).exp()?;
    let one = Series2::<Poly>::one(order);
    Ok(CharSeries {
        pointed: a.mul(&e_tab),
        unpointed: div_t(&tb.exp()?.sub(&one).mul(&e_ta)),
        unbounded: div_t(&e_tab.sub(&one)),
    })
}

impl CharSeries {
    /// The polynomial of `variant` on `(p, l)`, or `None` for the bounded
    /// variant, which is not read from a series.
    pub fn extract(&self, p: usize, l: usize, variant: PosetVariant) -> Option<Poly> {
        match variant {
            PosetVariant::PointedInterval => {
                let c = self.pointed.egf_coeff(p, l);
                Some(c.scaled(&Rational::new(1.into(), p.into())))
            }
            PosetVariant::UnpointedInterval => Some(self.unpointed.egf_coeff(p, l)),
            PosetVariant::Unbounded => Some(self.unbounded.egf_coeff(p, l)),
            PosetVariant::Bounded => None,
        }
    }
}

/// Series extraction against brute force for every `(p, l)` with
/// `1 <= p + l <= max_n` and every variant that has a series.
pub fn charpoly_series_check(order: usize, max_n: usize) -> Result<Vec<Check>> {
    let s = char_series(order)?;
    let mut out = Vec::new();
    for n in 1..=max_n.min(order) {
        for p in 0..=n {
            let gs = GroundSet::new(p, n - p)?;
            for variant in [PosetVariant::PointedInterval, PosetVariant::UnpointedInterval, PosetVariant::Unbounded] {
                if variant.check(&gs).is_err() {
                    continue;
                }
                let series = s.extract(p, n - p, variant).unwrap();
                let brute = charpoly_brute(&gs, variant, max_n)?;
                out.push(Check::new(
                    format!("charpoly series ({p},{},{variant})", n - p),
                    series == brute,
                    format!("series {series}; brute {brute}"),
                ));
            }
        }
    }
    Ok(out)
}

/// Closed against brute force for every `(p, l)` with `1 <= p + l <= max_n`,
/// plus vanishing at `t = 1` for bounded posets with at least two elements.
pub fn charpoly_closed_check(max_n: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for p in 0..=n {
            let gs = GroundSet::new(p, n - p)?;
            for variant in [PosetVariant::PointedInterval, PosetVariant::Unbounded, PosetVariant::Bounded] {
                if variant.check(&gs).is_err() {
                    continue;
                }
                let closed = charpoly_closed(&gs, variant)?;
                let brute = charpoly_brute(&gs, variant, max_n)?;
                out.push(Check::new(
                    format!("charpoly closed ({p},{},{variant})", n - p),
                    closed == brute,
                    format!("closed {closed}; brute {brute}"),
                ));
                if variant == PosetVariant::Bounded {
                    out.push(Check::new(
                        format!("charpoly vanishes at 1 ({p},{},{variant})", n - p),
                        brute.eval_int(1).is_zero(),
                        "",
                    ));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gs(p: usize, l: usize) -> GroundSet {
        GroundSet::new(p, l).unwrap()
    }

    #[test]
    fn small_values() {
        let pointed = PosetVariant::PointedInterval;
        assert_eq!(charpoly_closed(&gs(1, 1), pointed).unwrap(), Poly::from_roots([1]));
        assert_eq!(charpoly_closed(&gs(2, 1), pointed).unwrap(), Poly::from_roots([1, 3]));
        assert_eq!(charpoly_closed(&gs(1, 0), pointed).unwrap(), Poly::one());
        assert_eq!(charpoly_brute(&gs(1, 2), pointed, 6).unwrap(), Poly::from_roots([1, 2]));
        assert_eq!(charpoly_closed(&gs(1, 1), PosetVariant::Bounded).unwrap(), Poly::from_roots([1, 1]));
        assert_eq!(charpoly_brute(&gs(1, 1), PosetVariant::Bounded, 6).unwrap(), Poly::from_roots([1, 1]));
        assert_eq!(charpoly_brute(&gs(1, 1), PosetVariant::Unbounded, 6).unwrap(), Poly::from_roots([2]));
    }

    #[test]
    fn classical_lattice() {
        let closed = charpoly_closed(&gs(0, 4), PosetVariant::Unbounded).unwrap();
        assert_eq!(closed, Poly::from_roots([1, 2, 3]));
    }
}
