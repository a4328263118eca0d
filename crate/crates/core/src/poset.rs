//! Finite posets stored as up-set/down-set bitsets with their Hasse diagram.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A finite poset on elements `0..len()`, each carrying a display label.
///
/// `up[i]` holds every `j` with `i <= j` (including `i`), `down[i]` every `j`
/// with `j <= i`. Covers form the transitive reduction. `rank[i]` is the
/// length of the longest chain from a minimal element up to `i`.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    labels: Vec<String>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    rank: Vec<usize>,
}

impl FinitePoset {
    /// Builds a poset from labels and an order predicate, checking the
    /// partial-order axioms.
    pub fn from_relation<F>(labels: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if leq(i, j) {
                    row.insert(j);
                }
            }
        }
        Self::from_up_sets(labels, up)
    }

    pub(crate) fn from_up_sets(labels: Vec<String>, up: Vec<FixedBitSet>) -> Result<Self> {
        let n = labels.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(Error::NotAPartialOrder(format!("{} is not <= itself", labels[i])));
            }
            for j in up[i].ones() {
                down[j].insert(i);
            }
        }
        for i in 0..n {
            for j in up[i].ones() {
                if j != i && up[j].contains(i) {
                    return Err(Error::NotAPartialOrder(format!(
                        "{} and {} are mutually below each other",
                        labels[i], labels[j]
                    )));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::NotAPartialOrder(format!(
                        "transitivity fails through {} <= {}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for i in 0..n {
            for j in up[i].ones() {
                if j == i {
                    continue;
                }
                // j covers i iff nothing lies strictly between
                let mut between = up[i].clone();
                between.intersect_with(&down[j]);
                if between.count_ones(..) == 2 {
                    upper_covers[i].push(j);
                    lower_covers[j].push(i);
                }
            }
        }
        let order = linear_extension(&down);
        let mut rank = vec![0usize; n];
        for &i in &order {
            rank[i] = lower_covers[i].iter().map(|&j| rank[j] + 1).max().unwrap_or(0);
        }
        Ok(FinitePoset {
            labels,
            up,
            down,
            upper_covers,
            lower_covers,
            rank,
        })
    }

    /// Builds a poset from a cover digraph by transitive closure.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in covers {
            succ[a].push(b);
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            let mut stack = vec![i];
            while let Some(v) = stack.pop() {
                if row.contains(v) {
                    continue;
                }
                row.insert(v);
                stack.extend(succ[v].iter().copied());
            }
        }
        Self::from_up_sets(labels, up)
    }

    /// A chain `0 < 1 < ... < len-1`.
    pub fn chain(len: usize) -> Self {
        Self::from_relation((0..len).map(|i| i.to_string()).collect(), |i, j| i <= j)
            .expect("a chain is a partial order")
    }

    pub fn antichain(len: usize) -> Self {
        Self::from_relation((0..len).map(|i| i.to_string()).collect(), |i, j| i == j)
            .expect("an antichain is a partial order")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.down[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    /// Cover pairs `(smaller, larger)`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|i| self.upper_covers[i].iter().map(move |&j| (i, j)))
            .collect();
        edges.sort_unstable();
        edges
    }

    pub fn rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.up[i].count_ones(..) == self.len())
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.down[i].count_ones(..) == self.len())
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.lower_covers[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper_covers[i].is_empty()).collect()
    }

    /// Elements that are neither the greatest nor the least element.
    pub fn proper_part(&self) -> Vec<usize> {
        let (b, t) = (self.bottom(), self.top());
        (0..self.len())
            .filter(|&i| Some(i) != b && Some(i) != t)
            .collect()
    }

    /// Whether all maximal chains have the same length.
    pub fn is_pure(&self) -> bool {
        self.chain_length_range().is_none_or(|(lo, hi)| lo == hi)
    }

    /// Shortest and longest maximal chain length (in cover steps).
    fn chain_length_range(&self) -> Option<(usize, usize)> {
        if self.is_empty() {
            return None;
        }
        let order = linear_extension(&self.down);
        let mut shortest = vec![usize::MAX; self.len()];
        let mut longest = vec![0usize; self.len()];
        for &i in &order {
            if self.lower_covers[i].is_empty() {
                shortest[i] = 0;
                longest[i] = 0;
            } else {
                shortest[i] = self.lower_covers[i].iter().map(|&j| shortest[j] + 1).min().unwrap();
                longest[i] = self.lower_covers[i].iter().map(|&j| longest[j] + 1).max().unwrap();
            }
        }
        let maxima = self.maximal_elements();
        let lo = maxima.iter().map(|&i| shortest[i]).min()?;
        let hi = maxima.iter().map(|&i| longest[i]).max()?;
        Some((lo, hi))
    }

    /// Length of the longest chain, in cover steps.
    pub fn length(&self) -> usize {
        self.chain_length_range().map_or(0, |(_, hi)| hi)
    }

    /// Number of elements in a longest strict chain of the proper part, minus one.
    pub fn dim(&self) -> isize {
        let proper = self.proper_part();
        if proper.is_empty() {
            return -1;
        }
        let mut in_proper = FixedBitSet::with_capacity(self.len());
        for &i in &proper {
            in_proper.insert(i);
        }
        let order = linear_extension(&self.down);
        let mut best = vec![0isize; self.len()];
        let mut overall = 0isize;
        for &i in &order {
            if !in_proper.contains(i) {
                continue;
            }
            let below = self.down[i]
                .ones()
                .filter(|&j| j != i && in_proper.contains(j))
                .map(|j| best[j])
                .max()
                .unwrap_or(0);
            best[i] = below + 1;
            overall = overall.max(best[i]);
        }
        overall - 1
    }

    pub fn dual(&self) -> FinitePoset {
        FinitePoset::from_up_sets(self.labels.clone(), self.down.clone())
            .expect("the dual of a partial order is a partial order")
    }

    /// The closed interval `[a, b]` as a poset of its own, with the map back
    /// to indices of `self`.
    pub fn interval(&self, a: usize, b: usize) -> Result<(FinitePoset, Vec<usize>)> {
        if !self.leq(a, b) {
            return Err(Error::NotComparable(self.labels[a].clone(), self.labels[b].clone()));
        }
        let mut members = self.up[a].clone();
        members.intersect_with(&self.down[b]);
        Ok(self.induced(&members.ones().collect::<Vec<_>>()))
    }

    /// Induced subposet on the given indices (kept in the given order).
    pub fn induced(&self, members: &[usize]) -> (FinitePoset, Vec<usize>) {
        let labels = members.iter().map(|&i| self.labels[i].clone()).collect();
        let sub = FinitePoset::from_relation(labels, |i, j| self.leq(members[i], members[j]))
            .expect("an induced subposet is a partial order");
        (sub, members.to_vec())
    }

    /// Cartesian product with the componentwise order. Element `(i, j)` sits at
    /// index `i * other.len() + j`.
    pub fn direct_product(&self, other: &FinitePoset) -> FinitePoset {
        let m = other.len();
        let labels = (0..self.len())
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| format!("({},{})", self.labels[i], other.labels[j]))
            .collect();
        FinitePoset::from_relation(labels, |x, y| {
            self.leq(x / m, y / m) && other.leq(x % m, y % m)
        })
        .expect("a product of partial orders is a partial order")
    }

    /// Whether `map` (a permutation of indices) preserves and reflects the order.
    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        if map.len() != self.len() {
            return false;
        }
        let mut seen = vec![false; self.len()];
        for &m in map {
            if m >= self.len() || std::mem::replace(&mut seen[m], true) {
                return false;
            }
        }
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.leq(i, j) == self.leq(map[i], map[j])))
    }

    /// Total semi-modularity: in every interval, two distinct elements
    /// covering a common element are both covered by some element of the
    /// interval.
    pub fn is_totally_semimodular(&self) -> bool {
        self.semimodularity_witness().is_none()
    }

    /// A violation `(z, x, y, b)`: `x` and `y` cover `z`, `b` lies above both,
    /// and no common cover of `x` and `y` lies below `b`.
    pub fn semimodularity_witness(&self) -> Option<(usize, usize, usize, usize)> {
        for z in 0..self.len() {
            let covers = &self.upper_covers[z];
            for (a, &x) in covers.iter().enumerate() {
                for &y in &covers[a + 1..] {
                    let mut common_up = self.up[x].clone();
                    common_up.intersect_with(&self.up[y]);
                    let mut reachable = FixedBitSet::with_capacity(self.len());
                    for &t in self.upper_covers[x].iter().filter(|t| self.upper_covers[y].contains(t)) {
                        reachable.union_with(&self.up[t]);
                    }
                    // every common upper bound must dominate some common cover
                    if let Some(b) = common_up.difference(&reachable).next() {
                        return Some((z, x, y, b));
                    }
                }
            }
        }
        None
    }

    /// Brute-force isomorphism test by backtracking over rank- and
    /// degree-compatible assignments.
    pub fn is_isomorphic(&self, other: &FinitePoset) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let sig = |p: &FinitePoset, i: usize| {
            (
                p.rank[i],
                p.upper_covers[i].len(),
                p.lower_covers[i].len(),
                p.up[i].count_ones(..),
                p.down[i].count_ones(..),
            )
        };
        let mut a: Vec<_> = (0..self.len()).map(|i| sig(self, i)).collect();
        let mut b: Vec<_> = (0..other.len()).map(|i| sig(other, i)).collect();
        let order = linear_extension(&self.down);
        let (sa, sb) = (a.clone(), b.clone());
        a.sort();
        b.sort();
        if a != b {
            return false;
        }
        let mut map = vec![usize::MAX; self.len()];
        let mut used = vec![false; other.len()];
        self.extend_iso(other, &order, 0, &sa, &sb, &mut map, &mut used)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_iso<S: PartialEq>(
        &self,
        other: &FinitePoset,
        order: &[usize],
        depth: usize,
        sa: &[S],
        sb: &[S],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&i) = order.get(depth) else {
            return true;
        };
        for j in 0..other.len() {
            if used[j] || sa[i] != sb[j] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&k| {
                self.leq(k, i) == other.leq(map[k], j) && self.leq(i, k) == other.leq(j, map[k])
            });
            if !consistent {
                continue;
            }
            map[i] = j;
            used[j] = true;
            if self.extend_iso(other, order, depth + 1, sa, sb, map, used) {
                return true;
            }
            used[j] = false;
            map[i] = usize::MAX;
        }
        false
    }

    /// Hasse diagram in Graphviz DOT, edges from smaller to larger.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{name}\" {{\n  rankdir=BT;\n");
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", l.replace('"', "\\\"")));
        }
        for (a, b) in self.hasse_edges() {
            out.push_str(&format!("  n{a} -> n{b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Indices sorted so that every element comes after everything below it.
pub(crate) fn linear_extension(down: &[FixedBitSet]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..down.len()).collect();
    order.sort_by_key(|&i| down[i].count_ones(..));
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn six_element_non_tsm() -> FinitePoset {
        // 0 < a, b; a < c; b < d; c, d < 1
        let labels = ["0", "a", "b", "c", "d", "1"].iter().map(|s| s.to_string()).collect();
        FinitePoset::from_covers(labels, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)]).unwrap()
    }

    #[test]
    fn rejects_non_orders() {
        let labels = vec!["a".to_string(), "b".to_string()];
        assert!(FinitePoset::from_relation(labels.clone(), |_, _| true).is_err());
        assert!(FinitePoset::from_relation(labels, |i, j| i != j).is_err());
    }

    #[test]
    fn covers_are_transitive_reduction() {
        let c = FinitePoset::chain(4);
        assert_eq!(c.hasse_edges(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(c.ranks(), &[0, 1, 2, 3]);
        assert_eq!(c.dim(), 1);
    }

    #[test]
    fn semimodularity_examples() {
        assert!(FinitePoset::chain(4).is_totally_semimodular());
        assert!(!six_element_non_tsm().is_totally_semimodular());
    }

    #[test]
    fn product_of_two_chains_is_a_diamond() {
        let d = FinitePoset::chain(2).direct_product(&FinitePoset::chain(2));
        assert_eq!(d.len(), 4);
        assert_eq!(d.bottom(), Some(0));
        assert_eq!(d.top(), Some(3));
        assert!(!d.leq(1, 2) && !d.leq(2, 1));
        assert_eq!(d.ranks(), &[0, 1, 1, 2]);
    }

    #[test]
    fn product_with_point_is_isomorphic() {
        let p = six_element_non_tsm();
        let q = p.direct_product(&FinitePoset::chain(1));
        assert!(p.is_isomorphic(&q));
        assert!(!p.is_isomorphic(&FinitePoset::chain(6)));
    }

    #[test]
    fn purity() {
        assert!(six_element_non_tsm().is_pure());
        let labels = ["0", "a", "b", "1"].iter().map(|s| s.to_string()).collect();
        let skew = FinitePoset::from_covers(labels, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(skew.is_pure()); // the edge 0->3 is not a cover
        let labels = ["0", "a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let bad = FinitePoset::from_covers(labels, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        assert!(!bad.is_pure());
    }

    #[test]
    fn interval_and_dual() {
        let p = six_element_non_tsm();
        let (iv, map) = p.interval(1, 5).unwrap();
        assert_eq!(map, vec![1, 3, 5]);
        assert!(iv.is_isomorphic(&FinitePoset::chain(3)));
        let d = p.dual();
        assert_eq!(d.bottom(), Some(5));
        assert!(p.interval(1, 2).is_err());
    }
}
