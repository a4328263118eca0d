use rand::Rng;
use spp_core::FinitePoset;

/// Random graded poset: levels of 1 to 3 elements, covers only between
/// consecutive levels, every element covering and covered where possible,
/// so all maximal chains have the same length.
pub fn random_pure_poset<R: Rng>(rng: &mut R) -> FinitePoset {
    let levels = rng.gen_range(1..=4);
    let sizes: Vec<usize> = (0..levels).map(|_| rng.gen_range(1..=3)).collect();
    let mut start = vec![0];
    for s in &sizes {
        start.push(start.last().unwrap() + s);
    }
    let mut covers = Vec::new();
    for lv in 1..levels {
        let below = start[lv - 1]..start[lv];
        let above = start[lv]..start[lv + 1];
        let mut has_up = vec![false; sizes[lv - 1]];
        for b in above {
            let mut any = false;
            for a in below.clone() {
                if rng.gen_bool(0.5) {
                    covers.push((a, b));
                    has_up[a - below.start] = true;
                    any = true;
                }
            }
            if !any {
                let a = rng.gen_range(below.clone());
                covers.push((a, b));
                has_up[a - below.start] = true;
            }
        }
        for (i, up) in has_up.iter().enumerate() {
            if !up {
                covers.push((below.start + i, rng.gen_range(start[lv]..start[lv + 1])));
            }
        }
    }
    let labels = (0..start[levels]).map(|i| format!("v{i}")).collect();
    FinitePoset::from_covers(labels, &covers).expect("level covers form a partial order")
}
