//! Lattice congruences.
//!
//! `|Con(L)|` is computed from the join-irreducible congruences, which for a
//! finite lattice are exactly the principal congruences generated by cover
//! pairs. `Con(L)` is distributive, so its size is the number of down-sets of
//! the poset those congruences form under refinement.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::error::{check_size, Error, Result};
use crate::lattice::Lattice;

/// Largest lattice for [`count_congruences`].
pub const CONGRUENCE_LIMIT: usize = 20;
/// Largest lattice for [`count_congruences_naive`] (Bell(10) partitions).
pub const NAIVE_CONGRUENCE_LIMIT: usize = 10;

/// A partition of the elements. Block labels are assigned in order of first
/// occurrence, so blocks are numbered by their least element and two equal
/// partitions always compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    block_of: Vec<u8>,
}

impl Congruence {
    fn from_labels(labels: &[usize]) -> Self {
        let mut rename: HashMap<usize, u8> = HashMap::new();
        let block_of = labels
            .iter()
            .map(|&b| {
                let next = rename.len() as u8;
                *rename.entry(b).or_insert(next)
            })
            .collect();
        Congruence { block_of }
    }

    pub fn identity(n: usize) -> Self {
        Congruence {
            block_of: (0..n as u8).collect(),
        }
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x] as usize
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    /// Blocks sorted by least element.
    pub fn blocks(&self) -> Vec<BitSet> {
        let k = self
            .block_of
            .iter()
            .map(|&b| b as usize + 1)
            .max()
            .unwrap_or(0);
        let mut blocks = vec![BitSet::EMPTY; k];
        for (x, &b) in self.block_of.iter().enumerate() {
            blocks[b as usize].insert(x);
        }
        blocks
    }

    /// Blocks with more than one element.
    pub fn nontrivial_blocks(&self) -> Vec<BitSet> {
        self.blocks().into_iter().filter(|b| b.len() > 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.block_of
            .iter()
            .enumerate()
            .all(|(x, &b)| b as usize == x)
    }

    /// Whether every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        let mut image: Vec<Option<u8>> = vec![None; self.block_of.len()];
        for (x, &b) in self.block_of.iter().enumerate() {
            match image[b as usize] {
                None => image[b as usize] = Some(other.block_of[x]),
                Some(o) if o != other.block_of[x] => return false,
                _ => {}
            }
        }
        true
    }

    /// Whether the partition is compatible with join and meet.
    pub fn is_compatible(&self, l: &Lattice) -> bool {
        let n = l.size();
        for a in 0..n {
            for b in a + 1..n {
                if !self.related(a, b) {
                    continue;
                }
                for c in 0..n {
                    if !self.related(l.join(a, c), l.join(b, c))
                        || !self.related(l.meet(a, c), l.meet(b, c))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// The least congruence identifying `a` and `b`.
pub fn principal_congruence(l: &Lattice, a: usize, b: usize) -> Result<Congruence> {
    l.check_index(a)?;
    l.check_index(b)?;
    if a == b {
        return Err(Error::EqualElements(a));
    }
    let n = l.size();
    let mut uf = UnionFind((0..n).collect());
    uf.union(a, b);
    // Compatibility only needs checking on the pairs (x, root(x)): every
    // related pair is linked to a common root through them.
    loop {
        let mut changed = false;
        for x in 0..n {
            let r = uf.find(x);
            if r == x {
                continue;
            }
            for z in 0..n {
                changed |= uf.union(l.join(x, z), l.join(r, z));
                changed |= uf.union(l.meet(x, z), l.meet(r, z));
            }
        }
        if !changed {
            break;
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    Ok(Congruence::from_labels(&labels))
}

/// The distinct principal congruences of cover pairs, sorted.
pub fn join_irreducible_congruences(l: &Lattice) -> Result<Vec<Congruence>> {
    let mut out = l
        .covers()
        .iter()
        .map(|&(a, b)| principal_congruence(l, a, b))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn count_congruences(l: &Lattice) -> Result<u64> {
    check_size(l.size(), CONGRUENCE_LIMIT)?;
    let ji = join_irreducible_congruences(l)?;
    let k = ji.len();
    let mut below = vec![BitSet::EMPTY; k];
    let mut above = vec![BitSet::EMPTY; k];
    for i in 0..k {
        for j in 0..k {
            if ji[i].refines(&ji[j]) {
                above[i].insert(j);
                below[j].insert(i);
            }
        }
    }
    let mut memo = HashMap::new();
    Ok(count_down_sets(BitSet::full(k), &below, &above, &mut memo))
}

/// Down-sets of the poset induced on `rest`: those avoiding some `x` live in
/// `rest ∖ ↑x`, those containing it are `↓x` plus a down-set of `rest ∖ ↓x`.
fn count_down_sets(
    rest: BitSet,
    below: &[BitSet],
    above: &[BitSet],
    memo: &mut HashMap<BitSet, u64>,
) -> u64 {
    let Some(x) = rest.first() else {
        return 1;
    };
    if let Some(&c) = memo.get(&rest) {
        return c;
    }
    let c = count_down_sets(rest.difference(above[x]), below, above, memo)
        + count_down_sets(rest.difference(below[x]), below, above, memo);
    memo.insert(rest, c);
    c
}

/// `|Con(L)|` by testing every partition of the elements.
pub fn count_congruences_naive(l: &Lattice) -> Result<u64> {
    let n = l.size();
    check_size(n, NAIVE_CONGRUENCE_LIMIT)?;
    // restricted growth strings: labels[i] <= 1 + max(labels[..i])
    fn walk(l: &Lattice, labels: &mut Vec<usize>, max: usize, count: &mut u64) {
        if labels.len() == l.size() {
            if Congruence::from_labels(labels).is_compatible(l) {
                *count += 1;
            }
            return;
        }
        let top = if labels.is_empty() { 0 } else { max + 1 };
        for b in 0..=top {
            labels.push(b);
            walk(l, labels, max.max(b), count);
            labels.pop();
        }
    }
    let mut count = 0;
    walk(l, &mut Vec::with_capacity(n), 0, &mut count);
    Ok(count)
}
