//! Verification suites shared by the command-line driver and the tests.

use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::characters::{
    char_closed, char_homology_trace, char_oracle, ClosedVariant, OracleVariant,
};
use crate::charpoly::{charpoly_closed_check, charpoly_series_check};
use crate::cycle_index::CycleType;
use crate::egf::{
    alternating_sign, chain_series, closed_form_dimension, differential_residual, extrapolate_series,
    fixed_point_residuals, solve_fixed_point, table1, verify_relations, DimensionKind, SeriesKind,
};
use crate::error::{Error, Result};
use crate::homology::homology_dims;
use crate::hopf::{
    coassociativity_check, compose_pairs, coproduct_agreement, duality_check,
    resolve_mobius_convention, SeriesPair,
};
use crate::invariants::{verify_chain_relations, Check};
use crate::partition::{enumerate_spp, GroundSet};
use crate::series::{int, BivariateEgf};
use crate::spp_poset::{build_poset, PosetVariant};
use crate::Rational;

/// Enumeration caps on the ground-set size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub posets: usize,
    pub homology: usize,
    pub hopf: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { posets: 6, homology: 5, hopf: 5 }
    }
}

impl Caps {
    /// Every cap replaced by `SPP_MAX_N` when that variable holds a number.
    pub fn from_env() -> (Caps, Option<usize>) {
        match std::env::var("SPP_MAX_N").ok().and_then(|v| v.trim().parse().ok()) {
            Some(n) => (Caps { posets: n, homology: n, hopf: n }, Some(n)),
            None => (Caps::default(), None),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Core,
    Homology,
    Characters,
    Hopf,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "core" => Ok(Suite::Core),
            "homology" => Ok(Suite::Homology),
            "characters" => Ok(Suite::Characters),
            "hopf" => Ok(Suite::Hopf),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidArgument(format!("unknown suite {other:?}"))),
        }
    }
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Homology => "homology",
            Suite::Characters => "characters",
            Suite::Hopf => "hopf",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub parameters: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    /// Time of the computation that produced the record; records from one
    /// batch share it. Absent when timing is suppressed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub max_n: usize,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

struct Recorder {
    timed: bool,
    checks: Vec<CheckRecord>,
}

impl Recorder {
    fn push(&mut self, name: &str, params: String, expected: String, actual: String, ms: f64) {
        self.checks.push(CheckRecord {
            pass: expected == actual,
            name: name.to_string(),
            parameters: params,
            expected,
            actual,
            wall_ms: self.timed.then_some(ms),
        });
    }

    fn push_checks(&mut self, params: &str, checks: Vec<Check>, ms: f64) {
        for c in checks {
            self.checks.push(CheckRecord {
                name: c.name,
                parameters: params.to_string(),
                expected: "pass".into(),
                actual: if c.pass { "pass".into() } else { format!("fail: {}", c.detail) },
                pass: c.pass,
                wall_ms: self.timed.then_some(ms),
            });
        }
    }

    fn error(&mut self, name: &str, params: String, e: Error) {
        self.checks.push(CheckRecord {
            name: name.to_string(),
            parameters: params,
            expected: "no error".into(),
            actual: e.to_string(),
            pass: false,
            wall_ms: None,
        });
    }
}

fn elapsed_ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn ground_sets(max_n: usize) -> impl Iterator<Item = GroundSet> {
    (1..=max_n).flat_map(|n| (0..=n).map(move |p| GroundSet { p, l: n - p }))
}

fn valid_variants(gs: GroundSet) -> impl Iterator<Item = PosetVariant> {
    PosetVariant::ALL.into_iter().filter(move |v| v.check(&gs).is_ok())
}

fn params(gs: &GroundSet, v: PosetVariant) -> String {
    format!("p={},l={},variant={v}", gs.p, gs.l)
}

/// Absolute top homology dimension expected for one poset.
pub fn expected_top_dimension(gs: &GroundSet, v: PosetVariant) -> Result<BigInt> {
    let (p, l) = (gs.p, gs.l);
    let dim = |k| closed_form_dimension(p, l, k);
    Ok(match v {
        // over a single one-block the proper part is a cone, or empty when l = 1
        PosetVariant::Bounded => {
            let d = dim(DimensionKind::Bounded)?;
            if d.in_range || l == 1 { d.value } else { BigInt::from(0) }
        }
        // same proper part as the bounded poset, except that for p = 0 the
        // one-block partition is a least element
        PosetVariant::Unbounded => dim(DimensionKind::Bounded)?.value,
        PosetVariant::PointedInterval => dim(DimensionKind::Pointed)?.value / BigInt::from(p),
        PosetVariant::UnpointedInterval => {
            dim(DimensionKind::AllIntervals)?.value - dim(DimensionKind::Pointed)?.value
        }
    })
}

fn suite_core(max_n: usize, caps: &Caps, r: &mut Recorder) -> Result<()> {
    if max_n > caps.posets {
        return Err(Error::CapExceeded { size: max_n, cap: caps.posets });
    }
    let table = table1(max_n);
    for ((p, l), count) in &table {
        let gs = GroundSet { p: *p, l: *l };
        let t = Instant::now();
        let n = enumerate_spp(gs)?.len();
        r.push("table entry equals enumeration", format!("p={p},l={l}"), count.to_string(), n.to_string(), elapsed_ms(t));
    }
    for gs in ground_sets(max_n) {
        for v in valid_variants(gs) {
            let t = Instant::now();
            let sp = build_poset(gs, v)?;
            let pure = sp.poset.is_pure();
            let dual = sp.poset.dual();
            let tsm = match dual.semimodularity_witness() {
                None => "true".to_string(),
                Some((z, x, y, b)) => format!(
                    "false: {} and {} cover {} below {} with no common cover under it",
                    dual.label(x), dual.label(y), dual.label(z), dual.label(b)
                ),
            };
            let ms = elapsed_ms(t);
            r.push("pure", params(&gs, v), "true".into(), pure.to_string(), ms);
            r.push("dual totally semimodular", params(&gs, v), "true".into(), tsm, ms);
            let t = Instant::now();
            match verify_chain_relations(&sp.poset) {
                Ok(rep) => r.push_checks(&params(&gs, v), rep.checks, elapsed_ms(t)),
                Err(e) => r.error("chain relations", params(&gs, v), e),
            }
        }
    }
    let order = 8;
    let t = Instant::now();
    let c0 = chain_series(0, order);
    let ms = elapsed_ms(t);
    r.push("level zero pointed", format!("order={order}"), "x".into(), if c0.pm == BivariateEgf::x(order) { "x".into() } else { "other".into() }, ms);
    r.push("level zero unpointed", format!("order={order}"), "y".into(), if c0.um == BivariateEgf::y(order) { "y".into() } else { "other".into() }, ms);
    let t = Instant::now();
    let rel = verify_relations(5, order);
    r.push_checks(&format!("kmax=5,order={order}"), rel, elapsed_ms(t));
    let order = 10;
    let t = Instant::now();
    let (a, b) = solve_fixed_point(order);
    let (r1, r2) = fixed_point_residuals(&a, &b);
    let d = differential_residual(&a, &b);
    let ms = elapsed_ms(t);
    let zero = |s: &BivariateEgf| if s.is_zero() { "0".to_string() } else { "nonzero".to_string() };
    r.push("fixed point residual x", format!("order={order}"), "0".into(), zero(&r1), ms);
    r.push("fixed point residual y", format!("order={order}"), "0".into(), zero(&r2), ms);
    r.push("differential identity", format!("order={order}"), "0".into(), zero(&d), ms);
    let t = Instant::now();
    let ea = extrapolate_series(SeriesKind::Pm, -1, order);
    let eb = extrapolate_series(SeriesKind::Um, -1, order);
    let ms = elapsed_ms(t);
    r.push("extrapolated pointed equals fixed point", format!("order={order},k=-1"), "0".into(), zero(&ea.sub(&a)), ms);
    r.push("extrapolated unpointed equals fixed point", format!("order={order},k=-1"), "0".into(), zero(&eb.sub(&b)), ms);
    Ok(())
}

fn suite_homology(max_n: usize, caps: &Caps, r: &mut Recorder) -> Result<()> {
    if max_n > caps.homology {
        return Err(Error::CapExceeded { size: max_n, cap: caps.homology });
    }
    for gs in ground_sets(max_n) {
        let mut pointed_sum = BigInt::from(0);
        let mut all_sum = BigInt::from(0);
        for v in valid_variants(gs) {
            let t = Instant::now();
            let sp = build_poset(gs, v)?;
            let dim = sp.poset.dim() as i64;
            let betti = homology_dims(&sp.poset);
            let ms = elapsed_ms(t);
            let top = BigInt::from(betti.get(dim));
            r.push("concentrated in top degree", params(&gs, v), "true".into(), betti.is_concentrated_in(dim).to_string(), ms);
            let expected = expected_top_dimension(&gs, v)?;
            r.push("top dimension", params(&gs, v), expected.to_string(), top.to_string(), ms);
            match v {
                PosetVariant::PointedInterval => {
                    pointed_sum += &top * BigInt::from(gs.p);
                    all_sum += &top * BigInt::from(gs.p);
                }
                PosetVariant::UnpointedInterval => all_sum += &top,
                _ => {}
            }
        }
        let p = format!("p={},l={}", gs.p, gs.l);
        let pointed = closed_form_dimension(gs.p, gs.l, DimensionKind::Pointed)?.value;
        let all = closed_form_dimension(gs.p, gs.l, DimensionKind::AllIntervals)?.value;
        r.push("pointed intervals sum", p.clone(), pointed.to_string(), pointed_sum.to_string(), 0.0);
        r.push("all intervals sum", p, all.to_string(), all_sum.to_string(), 0.0);
        let egf = chain_series_value(gs);
        let bounded = expected_top_dimension(&gs, PosetVariant::Bounded)?;
        r.push(
            "series value at k = -1",
            format!("p={},l={}", gs.p, gs.l),
            (Rational::from_integer(bounded) * alternating_sign(gs.n())).to_string(),
            egf.to_string(),
            0.0,
        );
    }
    Ok(())
}

/// Coefficient of the all-partitions series continued to `k = -1`.
fn chain_series_value(gs: GroundSet) -> Rational {
    let order = gs.n();
    extrapolate_series(SeriesKind::All, -1, order).egf_coeff(gs.p, gs.l)
}

fn suite_characters(max_n: usize, caps: &Caps, r: &mut Recorder) -> Result<()> {
    if max_n > caps.posets {
        return Err(Error::CapExceeded { size: max_n, cap: caps.posets });
    }
    for n in 1..=max_n {
        for p in 0..=n {
            for ct in CycleType::all_of_size(p, n - p) {
                let params = ct.to_string();
                let t = Instant::now();
                let tf = char_closed(&ct, ClosedVariant::TFamily)?;
                let iv = char_closed(&ct, ClosedVariant::IntervalsSum)?.at(0);
                let ps = char_closed(&ct, ClosedVariant::PointedSum)?.at(0);
                let ob = char_oracle(&ct, OracleVariant::Bounded)?;
                let oi = char_oracle(&ct, OracleVariant::IntervalsSum)?;
                let op = char_oracle(&ct, OracleVariant::PointedSum)?;
                let ms = elapsed_ms(t);
                r.push("t-family at 1 vs bounded oracle", params.clone(), ob.to_string(), tf.at(1).to_string(), ms);
                r.push("t-family at 0 vs intervals oracle", params.clone(), oi.to_string(), tf.at(0).to_string(), ms);
                r.push("intervals formula vs oracle", params.clone(), oi.to_string(), iv.to_string(), ms);
                r.push("pointed formula vs oracle", params.clone(), op.to_string(), ps.to_string(), ms);
                if n <= caps.homology.min(4) {
                    let sign = alternating_sign(n);
                    for (v, o) in [
                        (OracleVariant::Bounded, &ob),
                        (OracleVariant::IntervalsSum, &oi),
                        (OracleVariant::PointedSum, &op),
                    ] {
                        let t = Instant::now();
                        let tr = char_homology_trace(&ct, v, caps.homology)?;
                        r.push(
                            "homology trace vs oracle",
                            format!("{params} {v:?}"),
                            (o * &sign).to_string(),
                            tr.to_string(),
                            elapsed_ms(t),
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

/// Small deterministic pair with integer coefficients in `[-2, 2]`.
pub fn sample_pair(order: usize, seed: i64) -> SeriesPair {
    let mut pair = SeriesPair::identity(order);
    for n in 2..=order {
        for k in 0..=n {
            let l = n - k;
            let v = |salt: i64| int(((seed * 31 + k as i64 * 7 + l as i64 * 3 + salt) % 5) - 2);
            pair.pointed.set_egf(k, l, v(1));
            pair.unpointed.set_egf(k, l, v(2));
        }
    }
    pair
}

fn suite_hopf(max_n: usize, caps: &Caps, r: &mut Recorder) -> Result<()> {
    if max_n > caps.hopf {
        return Err(Error::CapExceeded { size: max_n, cap: caps.hopf });
    }
    let t = Instant::now();
    let c = coproduct_agreement(max_n)?;
    r.push_checks(&format!("n<={max_n}"), c, elapsed_ms(t));
    let t = Instant::now();
    let c = coassociativity_check(max_n);
    r.push_checks(&format!("grade<={max_n}"), c, elapsed_ms(t));
    let t = Instant::now();
    let c = duality_check(max_n)?;
    r.push_checks(&format!("order={max_n}"), c, elapsed_ms(t));

    let order = 6;
    let t = Instant::now();
    let (f, g, h) = (sample_pair(order, 1), sample_pair(order, 2), sample_pair(order, 3));
    let left = compose_pairs(&compose_pairs(&f, &g)?, &h)?;
    let right = compose_pairs(&f, &compose_pairs(&g, &h)?)?;
    let id = SeriesPair::identity(order);
    let ms = elapsed_ms(t);
    r.push("composition associative", format!("order={order}"), "true".into(), (left == right).to_string(), ms);
    r.push(
        "identity pair is neutral",
        format!("order={order}"),
        "true".into(),
        (compose_pairs(&f, &id)? == f && compose_pairs(&id, &f)? == f).to_string(),
        ms,
    );

    let t = Instant::now();
    let rep = resolve_mobius_convention(max_n, 10)?;
    let ms = elapsed_ms(t);
    r.push(
        "mobius series convention",
        format!("n<={max_n},order=10"),
        "Some(SwappedVariables)".into(),
        format!("{:?}", rep.resolved),
        ms,
    );
    r.push_checks("order=10", rep.checks, ms);

    let t = Instant::now();
    let c = charpoly_closed_check(max_n)?;
    r.push_checks(&format!("n<={max_n}"), c, elapsed_ms(t));
    let t = Instant::now();
    let c = charpoly_series_check(max_n.max(4), max_n)?;
    r.push_checks(&format!("n<={max_n}"), c, elapsed_ms(t));
    Ok(())
}

/// Runs a suite. Exceeding a cap is an error, not a failed check.
pub fn run_suite(suite: Suite, max_n: usize, caps: &Caps, timed: bool) -> Result<VerifyReport> {
    if max_n == 0 {
        return Err(Error::InvalidArgument("max_n must be at least 1".into()));
    }
    let mut r = Recorder { timed, checks: Vec::new() };
    match suite {
        Suite::Core => suite_core(max_n, caps, &mut r)?,
        Suite::Homology => suite_homology(max_n, caps, &mut r)?,
        Suite::Characters => suite_characters(max_n, caps, &mut r)?,
        Suite::Hopf => suite_hopf(max_n, caps, &mut r)?,
        Suite::All => {
            suite_core(max_n, caps, &mut r)?;
            suite_homology(max_n, caps, &mut r)?;
            suite_characters(max_n, caps, &mut r)?;
            suite_hopf(max_n, caps, &mut r)?;
        }
    }
    let pass = r.checks.iter().all(|c| c.pass);
    Ok(VerifyReport { suite: suite.name().into(), max_n, checks: r.checks, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn small_suites_pass_and_round_trip() {
        let caps = Caps::default();
        for suite in [Suite::Core, Suite::Homology, Suite::Characters, Suite::Hopf] {
            let rep = run_suite(suite, 3, &caps, false).unwrap();
            let bad: Vec<_> = rep.failures().collect();
            assert!(bad.is_empty(), "{bad:?}");
            let json = serde_json::to_string(&rep).unwrap();
            assert_eq!(serde_json::from_str::<VerifyReport>(&json).unwrap(), rep);
        }
    }

    #[test]
    fn caps_are_enforced() {
        let caps = Caps::default();
        assert!(matches!(
            run_suite(Suite::Homology, 7, &caps, false),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn expected_dimensions() {
        let gs = |p, l| GroundSet { p, l };
        assert_eq!(expected_top_dimension(&gs(1, 2), PosetVariant::Bounded).unwrap(), BigInt::from(2));
        assert_eq!(expected_top_dimension(&gs(1, 2), PosetVariant::PointedInterval).unwrap(), BigInt::from(2));
        assert!(!expected_top_dimension(&gs(2, 2), PosetVariant::UnpointedInterval).unwrap().is_negative());
    }
}
