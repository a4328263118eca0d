//! Characters of the symmetric groups on homology: product formulas in the
//! cycle type, and fixed-multichain oracles on the actual posets.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cycle_index::{g_poly, number_mobius, CycleType};
use crate::error::{Error, Result};
use crate::homology::top_homology_trace;
use crate::invariants::fixed_multichain_polynomial;
use crate::poly::Poly;
use crate::series::{factorial, int};
use crate::spp_poset::{build_poset, PosetVariant, SppPoset};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedVariant {
    /// Sum over the maximal intervals with a pointed one-block end.
    PointedSum,
    /// Polynomial in `t`: bounded poset at `t = 1`, all intervals at `t = 0`.
    TFamily,
    /// Sum over all maximal intervals.
    IntervalsSum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleVariant {
    Bounded,
    IntervalsSum,
    PointedSum,
}

/// Value of a closed formula: a number, or a polynomial in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharValue {
    Number(Rational),
    Polynomial(Poly),
}

impl CharValue {
    pub fn at(&self, t: i64) -> Rational {
        match self {
            CharValue::Number(r) => r.clone(),
            CharValue::Polynomial(p) => p.eval_int(t),
        }
    }
}

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn fact(n: u32) -> Rational {
    Rational::from_integer(factorial(n as usize))
}

fn pow_int(b: i64, e: u32) -> Rational {
    Rational::from_integer(num_traits::pow(BigInt::from(b), e as usize))
}

/// Which version of the product formulas to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaText {
    /// Agrees with the fixed-point oracle on every cycle type.
    Corrected,
    /// Uncorrected form; wrong on pointable cycles of length at least two.
    Original,
}

fn pointed_sum(ct: &CycleType, text: FormulaText) -> Rational {
    let (l1, m1) = (ct.lambda_at(1), ct.mu_at(1));
    if l1 == 0 {
        return Rational::zero();
    }
    let mut acc = sign(i64::from(l1 + m1) - 1) * fact(l1 + m1 - 1) / fact(l1 - 1)
        * pow_int(i64::from(l1 + m1), l1 - 1);
    for l in ct.lengths().into_iter().filter(|&l| l >= 2) {
        let (lam, mu) = (ct.lambda_at(l), ct.mu_at(l));
        if lam == 0 {
            return Rational::zero();
        }
        let alpha = ct.alpha(l) as i64;
        let exponent = match text {
            FormulaText::Corrected => mu,
            FormulaText::Original => lam,
        };
        let l = l as i64;
        acc *= sign(i64::from(lam + mu) - 1) * fact(lam + mu - 1) / fact(lam)
            * pow_int(l, exponent)
            * pow_int(alpha, lam - 1)
            * int(i64::from(lam) * (i64::from(lam + mu) * l - alpha));
    }
    acc
}

fn t_family(ct: &CycleType, text: FormulaText) -> Result<Poly> {
    let mut acc = Poly::one();
    for m in ct.lengths() {
        let (lam, mu) = (ct.lambda_at(m), ct.mu_at(m));
        let g = g_poly(m);
        let shift = match text {
            FormulaText::Corrected => Poly::t().pow(m as u32),
            FormulaText::Original => g.clone(),
        };
        let beta = &Poly::from_int(ct.alpha(m) as i64) - &shift;
        let s = &Poly::from_int(i64::from(lam + mu)) - &g;
        // beta^{lam-1} [m lam binom(s, mu) - beta binom(s - 1, mu)], kept polynomial at lam = 0
        let first = if lam == 0 {
            Poly::zero()
        } else {
            (&beta.pow(lam - 1) * &s.binomial(mu)).scale(&int(m as i64 * i64::from(lam)))
        };
        let second = &beta.pow(lam) * &(&s - &Poly::one()).binomial(mu);
        let prefactor = sign(i64::from(lam + mu) - 1) * pow_int(m as i64, mu) * fact(mu);
        acc = &acc * &(&first - &second).scale(&prefactor);
    }
    acc.div_exact(&Poly::t()).ok_or_else(|| Error::DegenerateFactor {
        factor: "1/t".into(),
        cycle_type: ct.to_string(),
    })
}

fn intervals_sum(ct: &CycleType, text: FormulaText) -> Result<Rational> {
    let lengths = ct.lengths();
    // the shortest cycle length always qualifies
    let n = lengths
        .iter()
        .copied()
        .find(|&m| ct.alpha(m) == m as u64 * u64::from(ct.cycles_of_length(m)))
        .ok_or_else(|| Error::DegenerateFactor {
            factor: "no length with alpha_m = m (lambda_m + mu_m)".into(),
            cycle_type: ct.to_string(),
        })?;
    let (lam, mu) = (ct.lambda_at(n), ct.mu_at(n));
    let alpha = ct.alpha(n) as i64;
    let bracket = match text {
        FormulaText::Corrected => n as i64 * i64::from(mu) + if n == 1 { i64::from(lam) } else { 0 },
        FormulaText::Original => i64::from(lam) * (1 - n as i64) + alpha,
    };
    let alpha_pow = match lam {
        0 => Rational::new(BigInt::one(), BigInt::from(alpha)),
        _ => pow_int(alpha, lam - 1),
    };
    let mut acc = sign(i64::from(lam + mu) - 1) * pow_int(n as i64, mu) * alpha_pow
        * int(number_mobius(n))
        * fact(lam + mu - 1)
        / (int(n as i64) * fact(lam))
        * int(bracket);
    for m in lengths.into_iter().filter(|&m| m > n) {
        let (lam, mu) = (ct.lambda_at(m), ct.mu_at(m));
        if lam == 0 {
            return Ok(Rational::zero());
        }
        let alpha = ct.alpha(m) as i64;
        acc *= sign(i64::from(lam + mu) - 1) * pow_int(m as i64, mu) * pow_int(alpha, lam - 1)
            * fact(lam + mu - 1)
            / fact(lam)
            * int(i64::from(lam) * (m as i64 * i64::from(lam + mu) - alpha));
    }
    Ok(acc)
}

/// Evaluates a closed character formula on a cycle type.
pub fn char_closed(ct: &CycleType, variant: ClosedVariant) -> Result<CharValue> {
    char_closed_text(ct, variant, FormulaText::Corrected)
}

pub fn char_closed_text(ct: &CycleType, variant: ClosedVariant, text: FormulaText) -> Result<CharValue> {
    if ct.n() == 0 {
        return Err(Error::EmptyGroundSet);
    }
    Ok(match variant {
        ClosedVariant::PointedSum => CharValue::Number(pointed_sum(ct, text)),
        ClosedVariant::TFamily => CharValue::Polynomial(t_family(ct, text)?),
        ClosedVariant::IntervalsSum => CharValue::Number(intervals_sum(ct, text)?),
    })
}

/// Default enumeration cap for oracles.
pub const ORACLE_CAP: usize = 6;

fn unbounded_with_perm(ct: &CycleType, cap: usize) -> Result<(SppPoset, Vec<usize>)> {
    let gs = ct.ground_set()?;
    if gs.n() > cap {
        return Err(Error::CapExceeded { size: gs.n(), cap });
    }
    let sp = build_poset(gs, PosetVariant::Unbounded)?;
    let g = sp.label_automorphism(&ct.permutation())?;
    Ok((sp, g))
}

/// One-block partitions fixed by `g`, optionally only the pointed ones.
fn fixed_one_blocks(sp: &SppPoset, g: &[usize], pointed_only: bool) -> Vec<usize> {
    (0..sp.elements.len())
        .filter(|&i| {
            let x = sp.elements[i].as_ref().unwrap();
            x.num_parts() == 1 && g[i] == i && (!pointed_only || x.num_pointed_parts() == 1)
        })
        .collect()
}

/// Restricts `g` to the interval `[a, top]`, given the interval's index map.
fn restrict(g: &[usize], members: &[usize]) -> Vec<usize> {
    let pos: std::collections::HashMap<usize, usize> =
        members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    members.iter().map(|m| pos[&g[*m]]).collect()
}

/// Character value read off fixed multichains, with the same signs as the
/// closed formulas: the bounded value is `Z^σ(-1)` of the unbounded poset,
/// the interval sums add `Z^σ(-2)` over fixed maximal intervals.
pub fn char_oracle_capped(ct: &CycleType, variant: OracleVariant, cap: usize) -> Result<Rational> {
    let (sp, g) = unbounded_with_perm(ct, cap)?;
    let p = &sp.poset;
    match variant {
        OracleVariant::Bounded => Ok(fixed_multichain_polynomial(p, &g)?.eval(-1)),
        OracleVariant::IntervalsSum | OracleVariant::PointedSum => {
            let top = p.top().expect("the all-singletons partition is the top");
            let mut acc = Rational::zero();
            for m in fixed_one_blocks(&sp, &g, variant == OracleVariant::PointedSum) {
                let (iv, members) = p.interval(m, top)?;
                acc += fixed_multichain_polynomial(&iv, &restrict(&g, &members))?.eval(-2);
            }
            Ok(acc)
        }
    }
}

pub fn char_oracle(ct: &CycleType, variant: OracleVariant) -> Result<Rational> {
    char_oracle_capped(ct, variant, ORACLE_CAP)
}

/// Trace on homology computed by linear algebra, for the same quantities as
/// [`char_oracle`] up to the global sign `(-1)^{n-1}`.
pub fn char_homology_trace(ct: &CycleType, variant: OracleVariant, cap: usize) -> Result<Rational> {
    let (sp, g) = unbounded_with_perm(ct, cap)?;
    match variant {
        OracleVariant::Bounded => {
            let b = build_poset(sp.ground, PosetVariant::Bounded)?;
            let gb = b.label_automorphism(&ct.permutation())?;
            top_homology_trace(&b.poset, &gb)
        }
        OracleVariant::IntervalsSum | OracleVariant::PointedSum => {
            let p = &sp.poset;
            let top = p.top().unwrap();
            let mut acc = Rational::zero();
            for m in fixed_one_blocks(&sp, &g, variant == OracleVariant::PointedSum) {
                let (iv, members) = p.interval(m, top)?;
                acc += top_homology_trace(&iv, &restrict(&g, &members))?;
            }
            Ok(acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_value_vanishes_at_one() {
        let ct = CycleType::new(vec![1], vec![0, 1]);
        let CharValue::Polynomial(p) = char_closed(&ct, ClosedVariant::TFamily).unwrap() else {
            panic!("expected a polynomial");
        };
        assert_eq!(p, Poly::from_ints(&[0, -1, 1]));
        assert_eq!(p.eval_int(1), int(0));
    }

    #[test]
    fn identity_values() {
        let ct = CycleType::new(vec![1], vec![2]);
        assert_eq!(char_closed(&ct, ClosedVariant::PointedSum).unwrap().at(0), int(2));
        let ct = CycleType::new(vec![1], vec![1]);
        assert_eq!(char_closed(&ct, ClosedVariant::IntervalsSum).unwrap().at(0), int(-2));
        assert_eq!(char_oracle(&ct, OracleVariant::IntervalsSum).unwrap(), int(-2));
    }
}
