//! Acceptance gate: one line per criterion, nonzero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spp_core::characters::{char_closed, char_oracle, CharValue, ClosedVariant, OracleVariant};
use spp_core::charpoly::{charpoly_brute, charpoly_closed, charpoly_closed_check, charpoly_series_check};
use spp_core::cycle_index::CycleType;
use spp_core::egf::{
    chain_series, closed_form_dimension, differential_residual, extrapolate_series, fixed_point_residuals,
    solve_fixed_point, table1, verify_relations, DimensionKind, SeriesKind,
};
use spp_core::homology::homology_dims;
use spp_core::hopf::{coassociativity_check, compose_pairs, coproduct_agreement, resolve_mobius_convention, MobiusConvention};
use spp_core::invariants::{verify_chain_relations, Check};
use spp_core::series::BivariateEgf;
use spp_core::verify::{expected_top_dimension, sample_pair};
use spp_core::{build_poset, enumerate_spp, GroundSet, Poly, PosetVariant};

/// Reference counts: row `p`, entries for `l = 0, 1, ...`.
const TABLE: [&[u64]; 8] = [
    &[0, 1, 2, 5, 15, 52],
    &[1, 3, 8, 25, 89, 354],
    &[3, 10, 35, 133, 552, 2493],
    &[10, 41, 173, 768, 3637],
    &[41, 196, 953, 4815],
    &[196, 1057, 5785],
    &[1057, 6322],
    &[6322],
];

const BUDGET_TABLE: Duration = Duration::from_secs(30);
const BUDGET_HOMOLOGY: Duration = Duration::from_secs(300);
const BUDGET_SEMIMODULAR: Duration = Duration::from_secs(120);
const BUDGET_SERIES: Duration = Duration::from_secs(60);
const BUDGET_CHARACTERS: Duration = Duration::from_secs(300);
const BUDGET_HOPF: Duration = Duration::from_secs(120);
const BUDGET_CHARPOLY: Duration = Duration::from_secs(120);

/// Posets of the homology and semimodularity criteria: `1 <= p + l <= 5`.
const MAX_N: usize = 5;
/// Random posets for the chain relations.
const RANDOM_POSETS: usize = 50;
const SEED: u64 = 0x5eed;

type Criterion = fn() -> (Outcome, Duration);

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn checks(&mut self, context: &str, checks: &[Check]) {
        for c in checks.iter().filter(|c| !c.pass) {
            self.failures.push(format!("{context}: {} {}", c.name, c.detail));
        }
    }
}

fn ground_sets(max_n: usize) -> impl Iterator<Item = GroundSet> {
    (1..=max_n).flat_map(|n| (0..=n).map(move |p| GroundSet::new(p, n - p).unwrap()))
}

fn variants(gs: GroundSet) -> impl Iterator<Item = PosetVariant> {
    PosetVariant::ALL.into_iter().filter(move |v| v.check(&gs).is_ok())
}

fn criterion_table() -> (Outcome, Duration) {
    let mut o = Outcome::new();
    let all = chain_series(1, 7).all;
    o.expect(all.egf_coeff(0, 0).is_zero(), || "entry (0,0) is not 0".into());
    let series = table1(7);
    for (p, row) in TABLE.iter().enumerate() {
        for (l, &want) in row.iter().enumerate() {
            if p + l == 0 {
                continue;
            }
            let got = &series.iter().find(|e| e.0 == (p, l)).expect("entry in range").1;
            o.expect(*got == BigInt::from(want), || format!("({p},{l}) series {got}, expected {want}"));
        }
    }
    for ((p, l), count) in table1(6) {
        let n = enumerate_spp(GroundSet::new(p, l).unwrap()).unwrap().len();
        o.expect(count == n.into(), || format!("({p},{l}) series {count}, enumeration {n}"));
    }
    (o, BUDGET_TABLE)
}

fn criterion_homology() -> (Outcome, Duration) {
    let mut o = Outcome::new();
    for gs in ground_sets(MAX_N) {
        let mut pointed_sum = BigInt::from(0);
        let mut unpointed = BigInt::from(0);
        for v in variants(gs) {
            let sp = build_poset(gs, v).unwrap();
            let dim = sp.poset.dim() as i64;
            let betti = homology_dims(&sp.poset);
            o.expect(betti.is_concentrated_in(dim), || format!("{v} {gs}: homology {:?}", betti.dims));
            let top = BigInt::from(betti.get(dim));
            let want = expected_top_dimension(&gs, v).unwrap();
            o.expect(top == want, || format!("{v} {gs}: top {top}, formula {want}"));
            match v {
                PosetVariant::PointedInterval => pointed_sum = top * BigInt::from(gs.p),
                PosetVariant::UnpointedInterval => unpointed = top,
                _ => {}
            }
        }
        let pointed = closed_form_dimension(gs.p, gs.l, DimensionKind::Pointed).unwrap().value;
        let all = closed_form_dimension(gs.p, gs.l, DimensionKind::AllIntervals).unwrap().value;
        o.expect(pointed_sum == pointed, || format!("{gs}: pointed sum {pointed_sum}, formula {pointed}"));
        let all_sum = &pointed_sum + &unpointed;
        o.expect(all_sum == all, || format!("{gs}: all intervals {all_sum}, formula {all}"));
    }
    let dim = |p, l, k| closed_form_dimension(p, l, k).unwrap().value;
    o.expect(dim(1, 2, DimensionKind::Bounded) == 2.into(), || "bounded (1,2) is not 2".into());
    o.expect(dim(1, 2, DimensionKind::Pointed) == 2.into(), || "pointed (1,2) is not 2".into());
    o.expect(dim(1, 1, DimensionKind::AllIntervals) == 2.into(), || "all intervals (1,1) is not 2".into());
    (o, BUDGET_HOMOLOGY)
}

fn criterion_semimodular() -> (Outcome, Duration) {
    let mut o = Outcome::new();
    for gs in ground_sets(MAX_N) {
        for v in variants(gs) {
            let dual = build_poset(gs, v).unwrap().poset.dual();
            if let Some((z, x, y, b)) = dual.semimodularity_witness() {
                o.failures.push(format!(
                    "{v} {gs}: {} and {} cover {} under {} without a common cover there",
                    dual.label(x),
                    dual.label(y),
                    dual.label(z),
                    dual.label(b)
                ));
            }
        }
    }
    (o, BUDGET_SEMIMODULAR)
}

fn criterion_chain_relations() -> (Outcome, Duration) {
    let mut o = Outcome::new();
    for gs in ground_sets(MAX_N) {
        for v in variants(gs) {
            let rep = verify_chain_relations(&build_poset(gs, v).unwrap().poset).unwrap();
            o.checks(&format!("{v} {gs}"), &rep.checks);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..RANDOM_POSETS {
        let p = common::random_pure_poset(&mut rng);
        let rep = verify_chain_relations(&p).unwrap();
        o.checks(&format!("random poset {i}"), &rep.checks);
    }
    (o, Duration::MAX)
}

fn criterion_series() -> (Outcome, Duration) {
    let mut o = Outcome::new();
    let c0 = chain_series(0, 8);
    o.expect(c0.pm == BivariateEgf::x(8), || "level zero pointed is not x".into());
    o.expect(c0.um == BivariateEgf::y(8), || "level zero unpointed is not y".into());
    o.checks("relations k<=5 order 8", &verify_relations(5, 8));
    let (a, b) = solve_fixed_point(10);
    let (r1, r2) = fixed_point_residuals(&a, &b);
    o.expect(r1.is_zero() && r2.is_zero(), || "fixed point residuals do not vanish".into());
    o.expect(differential_residual(&a, &b).is_zero(), || "differential identity fails".into());
    o.expect(extrapolate_series(SeriesKind::Pm, -1, 10) == a, || "k=-1 pointed extrapolation differs".into());
    o.expect(extrapolate_series(SeriesKind::Um, -1, 10) == b, || "k=-1 unpointed extrapolation differs".into());
    (o, BUDGET_SERIES)
}

fn criterion_characters() -> (Outcome, Duration) {
    let mut o = Outcome::new();
    for n in 1..=MAX_N {
        for p in 0..=n {
            for ct in CycleType::all_of_size(p, n - p) {
                let tf = char_closed(&ct, ClosedVariant::TFamily).unwrap();
                let iv = char_closed(&ct, ClosedVariant::IntervalsSum).unwrap().at(0);
                let ps = char_closed(&ct, ClosedVariant::PointedSum).unwrap().at(0);
                let ob = char_oracle(&ct, OracleVariant::Bounded).unwrap();
                let oi = char_oracle(&ct, OracleVariant::IntervalsSum).unwrap();
                let op = char_oracle(&ct, OracleVariant::PointedSum).unwrap();
                o.expect(tf.at(1) == ob, || format!("{ct}: t=1 gives {}, oracle {ob}", tf.at(1)));
                o.expect(tf.at(0) == oi, || format!("{ct}: t=0 gives {}, oracle {oi}", tf.at(0)));
                o.expect(iv == oi, || format!("{ct}: intervals formula {iv}, oracle {oi}"));
                o.expect(ps == op, || format!("{ct}: pointed formula {ps}, oracle {op}"));
            }
        }
    }
    let worked = CycleType::new(vec![1], vec![0, 1]);
    let value = char_closed(&worked, ClosedVariant::TFamily).unwrap();
    o.expect(matches!(value, CharValue::Polynomial(_)) && value.at(1).is_zero(), || {
        format!("worked value at t=1 is {}", value.at(1))
    });
    (o, BUDGET_CHARACTERS)
}

fn criterion_hopf() -> (Outcome, Duration) {
    let mut o = Outcome::new();
    o.checks("coproduct n<=5", &coproduct_agreement(MAX_N).unwrap());
    o.checks("coassociativity grade<=5", &coassociativity_check(MAX_N));
    let order = 6;
    let (f, g, h) = (sample_pair(order, 1), sample_pair(order, 2), sample_pair(order, 3));
    let left = compose_pairs(&compose_pairs(&f, &g).unwrap(), &h).unwrap();
    let right = compose_pairs(&f, &compose_pairs(&g, &h).unwrap()).unwrap();
    o.expect(left == right, || "composition is not associative to order 6".into());
    let rep = resolve_mobius_convention(MAX_N, 10).unwrap();
    o.expect(rep.resolved == Some(MobiusConvention::SwappedVariables), || {
        format!("convention resolved to {:?}", rep.resolved)
    });
    o.checks("mobius series order 10", &rep.checks);
    (o, BUDGET_HOPF)
}

fn criterion_charpoly() -> (Outcome, Duration) {
    let mut o = Outcome::new();
    o.checks("closed", &charpoly_closed_check(MAX_N).unwrap());
    o.checks("series", &charpoly_series_check(MAX_N, MAX_N).unwrap());
    let gs = |p, l| GroundSet::new(p, l).unwrap();
    let pointed = charpoly_closed(&gs(2, 1), PosetVariant::PointedInterval).unwrap();
    o.expect(pointed == Poly::from_roots([1, 3]), || format!("(2,1,pointed) is {pointed}"));
    let bounded = charpoly_brute(&gs(1, 1), PosetVariant::Bounded, MAX_N).unwrap();
    o.expect(bounded == Poly::from_roots([1, 1]), || format!("bounded (1,1) is {bounded}"));
    (o, BUDGET_CHARPOLY)
}

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("1 table reproduction", criterion_table),
        ("2 homology concentration and dimensions", criterion_homology),
        ("3 dual total semimodularity", criterion_semimodular),
        ("4 chain relations", criterion_chain_relations),
        ("5 series engine", criterion_series),
        ("6 characters", criterion_characters),
        ("7 hopf algebra", criterion_hopf),
        ("8 characteristic polynomials", criterion_charpoly),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let (mut outcome, budget) = run();
        let elapsed = start.elapsed();
        outcome.expect(elapsed <= budget, || format!("took {elapsed:?}, budget {budget:?}"));
        let status = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {name}: {status} ({:.2} s)", elapsed.as_secs_f64());
        for f in outcome.failures.iter().take(8) {
            println!("    {f}");
        }
        if outcome.failures.len() > 8 {
            println!("    ... {} failures in total", outcome.failures.len());
        }
        failed += usize::from(!outcome.failures.is_empty());
    }
    println!("acceptance: {} of 8 criteria pass", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
