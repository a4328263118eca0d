//! Semi-pointed partitions of a bipartitioned ground set and their order.
//!
//! Labels `1..=p` are pointable and `p+1..=p+l` are not. A block made only of
//! pointable labels carries a pointed element, a block made only of
//! non-pointable labels carries none, and a mixed block may go either way.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroundSet {
    /// Number of pointable labels.
    pub p: usize,
    /// Number of non-pointable labels.
    pub l: usize,
}

impl GroundSet {
    pub fn new(p: usize, l: usize) -> Result<Self> {
        if p + l == 0 {
            return Err(Error::EmptyGroundSet);
        }
        Ok(GroundSet { p, l })
    }

    pub fn n(&self) -> usize {
        self.p + self.l
    }

    pub fn is_pointable(&self, label: u32) -> bool {
        label >= 1 && (label as usize) <= self.p
    }

    pub fn labels(&self) -> impl Iterator<Item = u32> {
        1..=self.n() as u32
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, l={})", self.p, self.l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Block {
    pub elements: Vec<u32>,
    pub pointed: Option<u32>,
}

impl Block {
    pub fn new(mut elements: Vec<u32>, pointed: Option<u32>) -> Self {
        elements.sort_unstable();
        Block { elements, pointed }
    }

    pub fn min(&self) -> u32 {
        self.elements[0]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn pointable_count(&self, gs: &GroundSet) -> usize {
        self.elements.iter().filter(|&&e| gs.is_pointable(e)).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SemiPointedPartition {
    pub blocks: Vec<Block>,
}

impl SemiPointedPartition {
    /// Builds a partition from blocks and puts it in canonical form.
    pub fn new(blocks: Vec<Block>) -> Self {
        let mut blocks: Vec<Block> = blocks
            .into_iter()
            .map(|b| Block::new(b.elements, b.pointed))
            .collect();
        blocks.sort_by_key(Block::min);
        SemiPointedPartition { blocks }
    }

    /// Builds and validates against a ground set.
    pub fn try_new(gs: &GroundSet, blocks: Vec<Block>) -> Result<Self> {
        let spp = Self::new(blocks);
        spp.validate(gs)?;
        Ok(spp)
    }

    /// The partition with a single block over the whole ground set.
    pub fn one_block(gs: &GroundSet, pointed: Option<u32>) -> Result<Self> {
        Self::try_new(gs, vec![Block::new(gs.labels().collect(), pointed)])
    }

    /// The all-singletons partition, the greatest element of the order.
    pub fn singletons(gs: &GroundSet) -> Self {
        Self::new(
            gs.labels()
                .map(|e| Block::new(vec![e], gs.is_pointable(e).then_some(e)))
                .collect(),
        )
    }

    pub fn validate(&self, gs: &GroundSet) -> Result<()> {
        let n = gs.n();
        let mut seen = vec![false; n + 1];
        for b in &self.blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &e in &b.elements {
                if e == 0 || e as usize > n {
                    return Err(Error::InvalidPartition(format!("label {e} outside 1..={n}")));
                }
                if std::mem::replace(&mut seen[e as usize], true) {
                    return Err(Error::InvalidPartition(format!("label {e} repeated")));
                }
            }
            let pointable = b.pointable_count(gs);
            match b.pointed {
                Some(e) => {
                    if !b.elements.contains(&e) {
                        return Err(Error::InvalidPartition(format!(
                            "pointed label {e} not in its block"
                        )));
                    }
                    if !gs.is_pointable(e) {
                        return Err(Error::InvalidPartition(format!("label {e} is not pointable")));
                    }
                }
                None if pointable == b.len() => {
                    return Err(Error::InvalidPartition(format!(
                        "block {} has only pointable labels but is unpointed",
                        fmt_block(b)
                    )));
                }
                None => {}
            }
        }
        if seen.iter().skip(1).any(|s| !s) {
            return Err(Error::InvalidPartition("blocks do not cover the ground set".into()));
        }
        let canonical = Self::new(self.blocks.clone());
        if canonical.blocks != self.blocks {
            return Err(Error::InvalidPartition("not in canonical form".into()));
        }
        Ok(())
    }

    pub fn num_parts(&self) -> usize {
        self.blocks.len()
    }

    pub fn num_pointed_parts(&self) -> usize {
        self.blocks.iter().filter(|b| b.pointed.is_some()).count()
    }

    pub fn ground_size(&self) -> usize {
        self.blocks.iter().map(Block::len).sum()
    }

    /// Block index of every label, indexed by `label - 1`.
    pub fn block_index(&self) -> Vec<usize> {
        let mut idx = vec![usize::MAX; self.ground_size()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &e in &b.elements {
                idx[e as usize - 1] = i;
            }
        }
        idx
    }

    /// Relabels by `perm[label - 1]`; pointing follows the labels.
    pub fn permuted(&self, perm: &[u32]) -> Self {
        Self::new(
            self.blocks
                .iter()
                .map(|b| {
                    Block::new(
                        b.elements.iter().map(|&e| perm[e as usize - 1]).collect(),
                        b.pointed.map(|e| perm[e as usize - 1]),
                    )
                })
                .collect(),
        )
    }

    /// Byte key used for hashing and deduplication.
    pub fn canonical_key(&self) -> Vec<u8> {
        self.to_string().into_bytes()
    }
}

fn fmt_block(b: &Block) -> String {
    let items: Vec<String> = b
        .elements
        .iter()
        .map(|&e| {
            if b.pointed == Some(e) {
                format!("{e}*")
            } else {
                e.to_string()
            }
        })
        .collect();
    format!("{{{}}}", items.join(","))
}

/// Canonical string: blocks in order, pointed label marked with `*`,
/// e.g. `{1*,2}{3}`.
impl fmt::Display for SemiPointedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            write!(f, "{}", fmt_block(b))?;
        }
        Ok(())
    }
}

/// Parses the canonical string form, e.g. `{1*,2}{3,4}{5}`.
impl std::str::FromStr for SemiPointedPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPartition(format!("cannot parse {s:?}"));
        let mut blocks = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('{').ok_or_else(bad)?;
            let end = body.find('}').ok_or_else(bad)?;
            let mut elements = Vec::new();
            let mut pointed = None;
            for item in body[..end].split(',') {
                let item = item.trim();
                let (num, star) = match item.strip_suffix('*') {
                    Some(num) => (num, true),
                    None => (item, false),
                };
                let e: u32 = num.parse().map_err(|_| bad())?;
                if star {
                    if pointed.is_some() {
                        return Err(bad());
                    }
                    pointed = Some(e);
                }
                elements.push(e);
            }
            blocks.push(Block::new(elements, pointed));
            rest = body[end + 1..].trim_start();
        }
        Ok(Self::new(blocks))
    }
}

/// Every semi-pointed partition of the ground set, each once, in a fixed
/// order: set partitions by restricted growth string, then pointings with
/// "unpointed" before pointed labels in increasing order.
pub fn enumerate_spp(gs: GroundSet) -> Result<Vec<SemiPointedPartition>> {
    let n = gs.n();
    if n == 0 {
        return Err(Error::EmptyGroundSet);
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let parts = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); parts];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i as u32 + 1);
        }
        let options: Vec<Vec<Option<u32>>> = blocks
            .iter()
            .map(|b| {
                let pointable: Vec<u32> = b.iter().copied().filter(|&e| gs.is_pointable(e)).collect();
                let mut opts = Vec::new();
                if pointable.len() < b.len() {
                    opts.push(None);
                }
                opts.extend(pointable.into_iter().map(Some));
                opts
            })
            .collect();
        let mut choice = vec![0usize; parts];
        'pointings: loop {
            out.push(SemiPointedPartition::new(
                blocks
                    .iter()
                    .zip(&choice)
                    .zip(&options)
                    .map(|((b, &c), o)| Block::new(b.clone(), o[c]))
                    .collect(),
            ));
            let mut i = parts;
            loop {
                if i == 0 {
                    break 'pointings;
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < options[i].len() {
                    break;
                }
                choice[i] = 0;
            }
        }
        if !next_rgs(&mut rgs) {
            break;
        }
    }
    Ok(out)
}

fn next_rgs(rgs: &mut [usize]) -> bool {
    let n = rgs.len();
    for i in (1..n).rev() {
        let prefix_max = rgs[..i].iter().max().copied().unwrap_or(0);
        if rgs[i] <= prefix_max {
            rgs[i] += 1;
            for r in rgs.iter_mut().skip(i + 1) {
                *r = 0;
            }
            return true;
        }
    }
    false
}

/// Order test: `coarse <= fine` iff every part of `coarse` is a union of parts
/// of `fine` and the pointing of each part of `coarse` is inherited: a pointed
/// part keeps the pointed label of one of its sub-parts, an unpointed part
/// needs at least one unpointed sub-part.
pub fn leq(coarse: &SemiPointedPartition, fine: &SemiPointedPartition) -> Result<bool> {
    let (nc, nf) = (coarse.ground_size(), fine.ground_size());
    let labels = |s: &SemiPointedPartition| {
        let mut v: Vec<u32> = s.blocks.iter().flat_map(|b| b.elements.iter().copied()).collect();
        v.sort_unstable();
        v
    };
    if nc != nf || labels(coarse) != labels(fine) {
        return Err(Error::GroundSetMismatch(coarse.to_string(), fine.to_string()));
    }
    Ok(leq_indexed(
        &LeqIndex::new(coarse),
        &LeqIndex::new(fine),
    ))
}

/// Precomputed block lookup used by the fast order test.
#[derive(Clone, Debug)]
pub(crate) struct LeqIndex {
    block_of: Vec<usize>,
    pointed: Vec<Option<u32>>,
    first_label: Vec<u32>,
}

impl LeqIndex {
    pub(crate) fn new(s: &SemiPointedPartition) -> Self {
        LeqIndex {
            block_of: s.block_index(),
            pointed: s.blocks.iter().map(|b| b.pointed).collect(),
            first_label: s.blocks.iter().map(Block::min).collect(),
        }
    }
}

pub(crate) fn leq_indexed(coarse: &LeqIndex, fine: &LeqIndex) -> bool {
    let nb = coarse.pointed.len();
    if fine.pointed.len() < nb {
        return false;
    }
    // every fine block must sit inside one coarse block
    let mut has_unpointed = vec![false; nb];
    for (fb, &first) in fine.first_label.iter().enumerate() {
        let cb = coarse.block_of[first as usize - 1];
        for (label0, &b) in fine.block_of.iter().enumerate() {
            if b == fb && coarse.block_of[label0] != cb {
                return false;
            }
        }
        if fine.pointed[fb].is_none() {
            has_unpointed[cb] = true;
        }
    }
    for cb in 0..nb {
        match coarse.pointed[cb] {
            Some(e) => {
                let fb = fine.block_of[e as usize - 1];
                if fine.pointed[fb] != Some(e) {
                    return false;
                }
            }
            None => {
                if !has_unpointed[cb] {
                    return false;
                }
            }
        }
    }
    true
}
