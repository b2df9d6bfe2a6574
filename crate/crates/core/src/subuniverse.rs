//! Subuniverses: subsets closed under join and meet, the empty set included.

use std::cmp::Reverse;
use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{check_size, Error, Result};
use crate::lattice::{Lattice, MAX_ELEMENTS};

/// Largest lattice for which full subset scans and enumerations are allowed.
pub const ENUMERATION_LIMIT: usize = 20;

/// A join- and meet-closed subset of some lattice.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Subuniverse(BitSet);

impl Subuniverse {
    /// Wraps `members` if it is closed in `lattice`.
    pub fn new(lattice: &Lattice, members: BitSet) -> Option<Self> {
        is_subuniverse(lattice, members).then_some(Subuniverse(members))
    }

    pub fn members(self) -> BitSet {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }
}

/// Exact number of subuniverses. Never zero: the empty set always counts.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct SubCount(pub u64);

impl SubCount {
    pub fn value(self) -> u64 {
        self.0
    }

    /// The count as a multiple of `2^(n-5)`, e.g. `21.25` for 85 at `n = 7`.
    pub fn per_scale(self, n: usize) -> f64 {
        self.0 as f64 / 2f64.powi(n as i32 - 5)
    }
}

impl fmt::Display for SubCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_subuniverse(l: &Lattice, x: BitSet) -> bool {
    debug_assert!(x.is_subset(l.elements()));
    for a in x {
        for b in x.difference(BitSet::full(a + 1)) {
            if !x.contains(l.join(a, b)) || !x.contains(l.meet(a, b)) {
                return false;
            }
        }
    }
    true
}

/// Smallest subuniverse containing `generators`.
pub fn generated_sublattice(l: &Lattice, generators: BitSet) -> Result<Subuniverse> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerator);
    }
    if let Some(bad) = generators.last().filter(|&i| i >= l.size()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            n: l.size(),
        });
    }
    let mut closed = BitSet::EMPTY;
    let mut pending: Vec<usize> = generators.to_vec();
    while let Some(a) = pending.pop() {
        if closed.contains(a) {
            continue;
        }
        closed.insert(a);
        for b in closed {
            for c in [l.join(a, b), l.meet(a, b)] {
                if !closed.contains(c) {
                    pending.push(c);
                }
            }
        }
    }
    Ok(Subuniverse(closed))
}

/// Depth-first search over the elements in index order. Each element is
/// either excluded or included; including `e` requires every meet with an
/// earlier chosen element to be chosen already (meets have smaller indices)
/// and marks every join with a chosen element as required later on (joins
/// have larger indices). A required element can no longer be excluded.
struct Search<'a> {
    l: &'a Lattice,
}

impl Search<'_> {
    /// Returns the widened required set when `e` can join `chosen`.
    #[inline]
    fn include(&self, e: usize, chosen: BitSet, required: BitSet) -> Option<BitSet> {
        let mut req = required;
        for c in chosen {
            if !chosen.contains(self.l.meet(e, c)) {
                return None;
            }
            req.insert(self.l.join(e, c));
        }
        Some(req.without(e))
    }

    fn count(&self, e: usize, chosen: BitSet, required: BitSet) -> u64 {
        if e == self.l.size() {
            return 1;
        }
        let mut total = 0;
        if !required.contains(e) {
            total += self.count(e + 1, chosen, required);
        }
        if let Some(req) = self.include(e, chosen, required) {
            total += self.count(e + 1, chosen.with(e), req);
        }
        total
    }

    fn visit(&self, e: usize, chosen: BitSet, required: BitSet, out: &mut Vec<BitSet>) {
        if e == self.l.size() {
            out.push(chosen);
            return;
        }
        if !required.contains(e) {
            self.visit(e + 1, chosen, required, out);
        }
        if let Some(req) = self.include(e, chosen, required) {
            self.visit(e + 1, chosen.with(e), req, out);
        }
    }
}

/// Exact `|Sub(L)|` by pruned depth-first search.
pub fn count_subuniverses(l: &Lattice) -> Result<SubCount> {
    check_size(l.size(), MAX_ELEMENTS)?;
    Ok(SubCount(Search { l }.count(
        0,
        BitSet::EMPTY,
        BitSet::EMPTY,
    )))
}

/// `|Sub(L)|` by testing all `2^n` subsets.
pub fn count_subuniverses_naive(l: &Lattice) -> Result<SubCount> {
    check_size(l.size(), ENUMERATION_LIMIT)?;
    let count = (0..1u64 << l.size())
        .filter(|&m| is_subuniverse(l, BitSet(m)))
        .count();
    Ok(SubCount(count as u64))
}

/// All subuniverses, ordered by size and then lexicographically by their
/// sorted member lists.
pub fn enumerate_subuniverses(l: &Lattice) -> Result<std::vec::IntoIter<Subuniverse>> {
    check_size(l.size(), ENUMERATION_LIMIT)?;
    let mut sets = Vec::new();
    Search { l }.visit(0, BitSet::EMPTY, BitSet::EMPTY, &mut sets);
    // For equal sizes, the smaller list is the one holding the least element
    // of the symmetric difference, i.e. the larger bit-reversed word.
    sets.sort_unstable_by_key(|s| (s.len(), Reverse(s.0.reverse_bits())));
    Ok(sets
        .into_iter()
        .map(Subuniverse)
        .collect::<Vec<_>>()
        .into_iter())
}

/// Number of distinct traces `H ∩ S` over all subuniverses `S`.
pub fn trace_count(l: &Lattice, h: BitSet) -> Result<u64> {
    let traces: HashSet<BitSet> = enumerate_subuniverses(l)?
        .map(|s| s.members().intersection(h))
        .collect();
    Ok(traces.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(s: &str) -> Lattice {
        Lattice::named(s).unwrap()
    }

    fn set(xs: &[usize]) -> BitSet {
        xs.iter().collect()
    }

    #[test]
    fn closure_checks() {
        let b4 = named("B4");
        assert!(!is_subuniverse(&b4, set(&[1, 2])));
        assert!(!is_subuniverse(&b4, set(&[0, 1, 2])));
        assert!(!is_subuniverse(&b4, set(&[1, 2, 3])));
        assert!(is_subuniverse(&b4, BitSet::EMPTY));
        assert!(is_subuniverse(&b4, b4.elements()));
        assert!(Subuniverse::new(&b4, set(&[1, 2])).is_none());
        assert_eq!(Subuniverse::new(&b4, set(&[0, 3])).unwrap().len(), 2);
    }

    #[test]
    fn generated() {
        let c5 = Lattice::chain(5).unwrap();
        assert_eq!(
            generated_sublattice(&c5, set(&[1, 3])).unwrap().members(),
            set(&[1, 3])
        );
        let b8 = named("B8");
        assert_eq!(
            generated_sublattice(&b8, set(&[1, 2, 3]))
                .unwrap()
                .members(),
            b8.elements()
        );
        let m3 = named("M3");
        assert_eq!(
            generated_sublattice(&m3, set(&[1, 3])).unwrap().members(),
            set(&[0, 1, 3, 4])
        );
        assert_eq!(
            generated_sublattice(&m3, BitSet::EMPTY),
            Err(Error::EmptyGenerator)
        );
    }

    #[test]
    fn small_counts() {
        assert_eq!(
            count_subuniverses(&Lattice::chain(1).unwrap()).unwrap(),
            SubCount(2)
        );
        assert_eq!(
            count_subuniverses(&Lattice::chain(3).unwrap()).unwrap(),
            SubCount(8)
        );
        assert_eq!(
            count_subuniverses_naive(&Lattice::chain(3).unwrap()).unwrap(),
            SubCount(8)
        );
        assert_eq!(count_subuniverses(&named("B4")).unwrap(), SubCount(13));
        assert_eq!(
            count_subuniverses_naive(&named("N5")).unwrap(),
            SubCount(23)
        );
        assert!(matches!(
            count_subuniverses_naive(&Lattice::chain(21).unwrap()),
            Err(Error::SizeLimit { n: 21, max: 20 })
        ));
    }

    #[test]
    fn enumeration_order() {
        let c2 = Lattice::chain(2).unwrap();
        let got: Vec<_> = enumerate_subuniverses(&c2)
            .unwrap()
            .map(|s| s.members())
            .collect();
        assert_eq!(got, vec![BitSet::EMPTY, set(&[0]), set(&[1]), set(&[0, 1])]);

        let c4 = Lattice::chain(4).unwrap();
        let pairs: Vec<_> = enumerate_subuniverses(&c4)
            .unwrap()
            .filter(|s| s.len() == 2)
            .map(|s| s.members().to_vec())
            .collect();
        assert_eq!(
            pairs,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn b4_misses_exactly_three_subsets() {
        let b4 = named("B4");
        let subs: HashSet<_> = enumerate_subuniverses(&b4)
            .unwrap()
            .map(|s| s.members())
            .collect();
        let missing: HashSet<_> = (0..16u64)
            .map(BitSet)
            .filter(|s| !subs.contains(s))
            .collect();
        assert_eq!(
            missing,
            [set(&[1, 2]), set(&[0, 1, 2]), set(&[1, 2, 3])]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn traces() {
        let b4 = named("B4");
        assert_eq!(trace_count(&b4, b4.elements()).unwrap(), 13);
        assert_eq!(trace_count(&b4, BitSet::EMPTY).unwrap(), 1);
        assert_eq!(trace_count(&b4, set(&[1, 2])).unwrap(), 4);
    }

    #[test]
    fn per_scale() {
        assert_eq!(SubCount(85).per_scale(7), 21.25);
        assert_eq!(SubCount(13).per_scale(4), 26.0);
    }
}
