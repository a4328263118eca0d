//! Posets of semi-pointed partitions: the full poset, its bounded version and
//! the maximal intervals above a one-block partition.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{enumerate_spp, leq_indexed, GroundSet, LeqIndex, SemiPointedPartition};
use crate::poset::FinitePoset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PosetVariant {
    /// Every semi-pointed partition; the all-singletons partition is the top.
    Unbounded,
    /// `Unbounded` with an added least element `0̂`.
    Bounded,
    /// Partitions above the one-block partition pointed at label 1.
    #[serde(rename = "pointed")]
    PointedInterval,
    /// Partitions above the unpointed one-block partition.
    #[serde(rename = "unpointed")]
    UnpointedInterval,
}

impl PosetVariant {
    pub const ALL: [PosetVariant; 4] = [
        PosetVariant::Unbounded,
        PosetVariant::Bounded,
        PosetVariant::PointedInterval,
        PosetVariant::UnpointedInterval,
    ];

    pub fn check(self, gs: &GroundSet) -> Result<()> {
        match self {
            PosetVariant::PointedInterval if gs.p == 0 => Err(Error::InvalidVariant(
                "pointed interval requires at least one pointable label (p >= 1)".into(),
            )),
            PosetVariant::UnpointedInterval if gs.l == 0 => Err(Error::InvalidVariant(
                "unpointed interval requires at least one non-pointable label (l >= 1)".into(),
            )),
            _ => Ok(()),
        }
    }

    /// Pointing flag of the one-block end for interval variants.
    pub fn pointing_flag(self) -> Option<u8> {
        match self {
            PosetVariant::PointedInterval => Some(1),
            PosetVariant::UnpointedInterval => Some(0),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PosetVariant::Unbounded => "unbounded",
            PosetVariant::Bounded => "bounded",
            PosetVariant::PointedInterval => "pointed",
            PosetVariant::UnpointedInterval => "unpointed",
        }
    }
}

impl fmt::Display for PosetVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for PosetVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unbounded" => Ok(PosetVariant::Unbounded),
            "bounded" => Ok(PosetVariant::Bounded),
            "pointed" => Ok(PosetVariant::PointedInterval),
            "unpointed" => Ok(PosetVariant::UnpointedInterval),
            other => Err(Error::InvalidVariant(format!("unknown variant {other:?}"))),
        }
    }
}

/// Isomorphism class of a maximal interval: `n` labels of which `p` are
/// pointable, one-block end pointed (`o = 1`) or not (`o = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntervalClass {
    pub n: usize,
    pub p: usize,
    pub o: u8,
}

impl IntervalClass {
    pub fn new(n: usize, p: usize, o: u8) -> Result<Self> {
        let c = IntervalClass { n, p, o };
        if n == 0 || p > n || o > 1 || (o == 1 && p == 0) || (o == 0 && n == p) {
            return Err(Error::InvalidArgument(format!("invalid interval class {c}")));
        }
        Ok(c)
    }

    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    pub fn variant(&self) -> PosetVariant {
        if self.o == 1 {
            PosetVariant::PointedInterval
        } else {
            PosetVariant::UnpointedInterval
        }
    }

    pub fn ground_set(&self) -> GroundSet {
        GroundSet { p: self.p, l: self.n - self.p }
    }
}

impl fmt::Display for IntervalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, p={}, o={})", self.n, self.p, self.o)
    }
}

/// A poset of semi-pointed partitions. `elements[i]` is `None` for the added
/// least element of the bounded variant.
#[derive(Clone, Debug)]
pub struct SppPoset {
    pub ground: GroundSet,
    pub variant: PosetVariant,
    pub elements: Vec<Option<SemiPointedPartition>>,
    pub poset: FinitePoset,
    index: HashMap<Vec<u8>, usize>,
}

pub const BOTTOM_LABEL: &str = "0^";

impl SppPoset {
    pub fn index_of(&self, x: &SemiPointedPartition) -> Option<usize> {
        self.index.get(&x.canonical_key()).copied()
    }

    /// The one-block bottom of an interval variant.
    pub fn interval_bottom(&self) -> Option<SemiPointedPartition> {
        bottom_for(&self.ground, self.variant).ok().flatten()
    }

    /// Poset automorphism induced by a permutation of labels that preserves
    /// the pointable/non-pointable split. `perm[label - 1]` is the image.
    pub fn label_automorphism(&self, perm: &[u32]) -> Result<Vec<usize>> {
        let gs = self.ground;
        if perm.len() != gs.n() {
            return Err(Error::NotAnAutomorphism("permutation has the wrong size".into()));
        }
        let mut seen = vec![false; gs.n() + 1];
        for (i, &img) in perm.iter().enumerate() {
            let label = i as u32 + 1;
            if img == 0
                || img as usize > gs.n()
                || std::mem::replace(&mut seen[img as usize], true)
                || gs.is_pointable(label) != gs.is_pointable(img)
            {
                return Err(Error::NotAnAutomorphism(format!(
                    "{perm:?} is not a permutation of {gs} preserving pointability"
                )));
            }
        }
        let map: Vec<usize> = self
            .elements
            .iter()
            .map(|e| match e {
                None => self.elements.iter().position(Option::is_none),
                Some(x) => self.index_of(&x.permuted(perm)),
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| {
                Error::NotAnAutomorphism(format!("{perm:?} does not preserve the interval"))
            })?;
        if !self.poset.is_automorphism(&map) {
            return Err(Error::NotAnAutomorphism(format!("{perm:?}")));
        }
        Ok(map)
    }
}

fn bottom_for(gs: &GroundSet, variant: PosetVariant) -> Result<Option<SemiPointedPartition>> {
    Ok(match variant {
        PosetVariant::PointedInterval => Some(SemiPointedPartition::one_block(gs, Some(1))?),
        PosetVariant::UnpointedInterval => Some(SemiPointedPartition::one_block(gs, None)?),
        _ => None,
    })
}

/// Builds the poset of the given variant, in the order where coarser
/// partitions are smaller and the all-singletons partition is the top.
pub fn build_poset(gs: GroundSet, variant: PosetVariant) -> Result<SppPoset> {
    if gs.n() == 0 {
        return Err(Error::EmptyGroundSet);
    }
    variant.check(&gs)?;
    let all = enumerate_spp(gs)?;
    let mut parts: Vec<SemiPointedPartition> = match bottom_for(&gs, variant)? {
        Some(b) => {
            let bi = LeqIndex::new(&b);
            all.into_iter()
                .filter(|x| leq_indexed(&bi, &LeqIndex::new(x)))
                .collect()
        }
        None => all,
    };
    // coarse to fine keeps index order close to a linear extension
    parts.sort_by(|a, b| a.num_parts().cmp(&b.num_parts()).then_with(|| a.cmp(b)));
    let mut elements: Vec<Option<SemiPointedPartition>> = Vec::with_capacity(parts.len() + 1);
    if variant == PosetVariant::Bounded {
        elements.push(None);
    }
    elements.extend(parts.into_iter().map(Some));
    let idx: Vec<Option<LeqIndex>> = elements
        .iter()
        .map(|e| e.as_ref().map(LeqIndex::new))
        .collect();
    let labels = elements
        .iter()
        .map(|e| e.as_ref().map_or_else(|| BOTTOM_LABEL.to_string(), |x| x.to_string()))
        .collect();
    let poset = FinitePoset::from_relation(labels, |i, j| match (&idx[i], &idx[j]) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(a), Some(b)) => leq_indexed(a, b),
    })?;
    let index = elements
        .iter()
        .enumerate()
        .filter_map(|(i, e)| e.as_ref().map(|x| (x.canonical_key(), i)))
        .collect();
    Ok(SppPoset {
        ground: gs,
        variant,
        elements,
        poset,
        index,
    })
}

/// Interval classes describing `x` inside a maximal interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    /// Class of the interval between the one-block end and `x`.
    pub upper: IntervalClass,
    /// One class per part of `x`; their product is the interval between `x`
    /// and the all-singletons end. Sorted.
    pub lower: Vec<IntervalClass>,
}

/// Factorizes the position of `x` inside the maximal interval of `variant`
/// over `gs`.
pub fn interval_factorization(
    gs: &GroundSet,
    x: &SemiPointedPartition,
    variant: PosetVariant,
) -> Result<Factorization> {
    let o = variant.pointing_flag().ok_or_else(|| {
        Error::InvalidVariant(format!("{variant} is not a maximal interval variant"))
    })?;
    variant.check(gs)?;
    x.validate(gs)?;
    let bottom = bottom_for(gs, variant)?.expect("interval variants have a bottom");
    if !leq_indexed(&LeqIndex::new(&bottom), &LeqIndex::new(x)) {
        return Err(Error::NotInInterval(x.to_string()));
    }
    let upper = IntervalClass::new(x.num_parts(), x.num_pointed_parts(), o)?;
    let mut lower: Vec<IntervalClass> = x
        .blocks
        .iter()
        .map(|b| IntervalClass::new(b.len(), b.pointable_count(gs), u8::from(b.pointed.is_some())))
        .collect::<Result<_>>()?;
    lower.sort();
    Ok(Factorization { upper, lower })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gs(p: usize, l: usize) -> GroundSet {
        GroundSet::new(p, l).unwrap()
    }

    #[test]
    fn bounded_three_one_matches_figure() {
        let sp = build_poset(gs(1, 2), PosetVariant::Bounded).unwrap();
        let p = &sp.poset;
        assert_eq!(p.len(), 9);
        let id = |s: &str| p.index_of(s).unwrap();
        let mut expected = vec![
            ("0^", "{1*,2,3}"),
            ("0^", "{1,2,3}"),
            ("{1,2,3}", "{1*,2}{3}"),
            ("{1,2,3}", "{1,2}{3}"),
            ("{1,2,3}", "{1*,3}{2}"),
            ("{1,2,3}", "{1,3}{2}"),
            ("{1,2,3}", "{1*}{2,3}"),
            ("{1*,2,3}", "{1*,2}{3}"),
            ("{1*,2,3}", "{1*,3}{2}"),
            ("{1*,2,3}", "{1*}{2,3}"),
            ("{1*,2}{3}", "{1*}{2}{3}"),
            ("{1,2}{3}", "{1*}{2}{3}"),
            ("{1*,3}{2}", "{1*}{2}{3}"),
            ("{1,3}{2}", "{1*}{2}{3}"),
            ("{1*}{2,3}", "{1*}{2}{3}"),
        ]
        .into_iter()
        .map(|(a, b)| (id(a), id(b)))
        .collect::<Vec<_>>();
        expected.sort();
        assert_eq!(p.hasse_edges(), expected);
        assert_eq!(p.rank(id("0^")), 0);
        assert_eq!(p.rank(id("{1*}{2}{3}")), 3);
    }

    #[test]
    fn small_variants() {
        assert_eq!(build_poset(gs(1, 0), PosetVariant::PointedInterval).unwrap().poset.len(), 1);
        let u = build_poset(gs(2, 0), PosetVariant::Unbounded).unwrap();
        let labels: Vec<&str> = u.poset.labels().iter().map(String::as_str).collect();
        assert_eq!(labels, vec!["{1*,2}", "{1,2*}", "{1*}{2*}"]);
        assert!(build_poset(gs(0, 2), PosetVariant::PointedInterval).is_err());
        assert!(build_poset(gs(2, 0), PosetVariant::UnpointedInterval).is_err());
    }

    #[test]
    fn factorization_examples() {
        let g = gs(1, 2);
        let x: SemiPointedPartition = "{1*}{2,3}".parse().unwrap();
        let f = interval_factorization(&g, &x, PosetVariant::PointedInterval).unwrap();
        assert_eq!(f.upper, IntervalClass::new(2, 1, 1).unwrap());
        assert_eq!(
            f.lower,
            vec![IntervalClass::new(1, 1, 1).unwrap(), IntervalClass::new(2, 0, 0).unwrap()]
        );
        let top = SemiPointedPartition::singletons(&g);
        let f = interval_factorization(&g, &top, PosetVariant::PointedInterval).unwrap();
        assert_eq!(f.upper, IntervalClass::new(3, 1, 1).unwrap());
        assert!(f.lower.iter().all(IntervalClass::is_trivial));
        let bottom = SemiPointedPartition::one_block(&g, Some(1)).unwrap();
        let f = interval_factorization(&g, &bottom, PosetVariant::PointedInterval).unwrap();
        assert!(f.upper.is_trivial());
        assert_eq!(f.lower, vec![IntervalClass::new(3, 1, 1).unwrap()]);
        let outside: SemiPointedPartition = "{1,2}{3}".parse().unwrap();
        assert!(matches!(
            interval_factorization(&g, &outside, PosetVariant::PointedInterval),
            Err(Error::NotInInterval(_))
        ));
    }

    #[test]
    fn swap_is_an_automorphism() {
        let sp = build_poset(gs(1, 2), PosetVariant::Bounded).unwrap();
        let map = sp.label_automorphism(&[1, 3, 2]).unwrap();
        let fixed = (0..map.len()).filter(|&i| map[i] == i).count();
        assert_eq!(fixed, 5);
        assert!(sp.label_automorphism(&[2, 1, 3]).is_err());
    }
}
