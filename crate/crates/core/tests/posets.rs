use spp_core::{build_poset, GroundSet, PosetVariant};

fn gs(p: usize, l: usize) -> GroundSet {
    GroundSet::new(p, l).unwrap()
}

#[test]
fn bounded_three_one_has_nine_elements_and_mobius_minus_two() {
    let p = build_poset(gs(1, 2), PosetVariant::Bounded).unwrap().poset;
    assert_eq!(p.len(), 9);
    let mu = spp_core::invariants::mobius(&p, p.bottom().unwrap(), p.top().unwrap()).unwrap();
    assert_eq!(mu, (-2).into());
}

/// Two merges with a pointed result cannot sit under an unpointed block.
#[test]
fn dual_semimodularity_counterexample() {
    let dual = build_poset(gs(2, 2), PosetVariant::Bounded).unwrap().poset.dual();
    let (z, x, y, b) = dual.semimodularity_witness().expect("a violation exists");
    let label = |i| dual.label(i).to_string();
    assert_eq!(label(z), "{1*}{2*}{3}{4}");
    assert_eq!([label(x), label(y)], ["{1*}{2*,3}{4}", "{1*,4}{2*}{3}"]);
    assert_eq!(label(b), "{1,2,3,4}");
}

/// Violations need two pointable and two non-pointable labels, and a third
/// pointable label inside a pointed interval.
#[test]
fn where_dual_semimodularity_holds() {
    for n in 1..=5 {
        for p in 0..=n {
            let l = n - p;
            for v in PosetVariant::ALL {
                if v.check(&gs(p, l)).is_err() {
                    continue;
                }
                let min_p = if v == PosetVariant::PointedInterval { 3 } else { 2 };
                let expected = p < min_p || l < 2;
                let dual = build_poset(gs(p, l), v).unwrap().poset.dual();
                assert_eq!(dual.is_totally_semimodular(), expected, "{v} (p={p}, l={l})");
            }
        }
    }
}

#[test]
fn homology_is_concentrated_despite_violations() {
    for (p, l) in [(2, 2), (3, 2), (2, 3)] {
        for v in PosetVariant::ALL {
            let poset = build_poset(gs(p, l), v).unwrap().poset;
            let dim = poset.dim() as i64;
            assert!(spp_core::homology::homology_dims(&poset).is_concentrated_in(dim), "{v} ({p},{l})");
        }
    }
}
