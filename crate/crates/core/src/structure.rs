//! Structural predicates: chains, antichains, irreducibles, isolated elements
//! and edges, and the decomposition of a lattice into a glued sum of
//! indecomposable blocks.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::census::canon::is_isomorphic;
use crate::error::{check_size, Result};
use crate::lattice::Lattice;
use crate::subuniverse::{enumerate_subuniverses, is_subuniverse};

/// Largest lattice for [`isolated_characterization_holds`].
pub const CHARACTERIZATION_LIMIT: usize = 14;

pub fn is_chain(l: &Lattice) -> bool {
    (0..l.size()).all(|a| l.up_set(a).union(l.down_set(a)) == l.elements())
}

/// The lexicographically first `k`-element antichain, if any.
pub fn find_antichain(l: &Lattice, k: usize) -> Option<BitSet> {
    fn extend(l: &Lattice, k: usize, from: usize, chosen: BitSet) -> Option<BitSet> {
        if chosen.len() == k {
            return Some(chosen);
        }
        for x in from..l.size() {
            if chosen.iter().all(|c| !l.comparable(c, x)) {
                if let Some(found) = extend(l, k, x + 1, chosen.with(x)) {
                    return Some(found);
                }
            }
        }
        None
    }
    extend(l, k, 0, BitSet::EMPTY)
}

/// Elements with at most one lower cover; the bottom qualifies.
pub fn join_irreducibles(l: &Lattice) -> BitSet {
    (0..l.size())
        .filter(|&x| l.lower_covers(x).len() <= 1)
        .collect()
}

/// Elements with at most one upper cover; the top qualifies.
pub fn meet_irreducibles(l: &Lattice) -> BitSet {
    (0..l.size())
        .filter(|&x| l.upper_covers(x).len() <= 1)
        .collect()
}

pub fn doubly_irreducibles(l: &Lattice) -> BitSet {
    join_irreducibles(l).intersection(meet_irreducibles(l))
}

/// Elements `x` with `L = ↓x ∪ ↑x`.
pub fn cut_elements(l: &Lattice) -> BitSet {
    (0..l.size())
        .filter(|&x| l.down_set(x).union(l.up_set(x)) == l.elements())
        .collect()
}

/// Doubly irreducible elements comparable to everything.
pub fn isolated_elements(l: &Lattice) -> BitSet {
    doubly_irreducibles(l).intersection(cut_elements(l))
}

/// Cover pairs `u ≺ v` with `L = ↓u ∪ ↑v`.
pub fn isolated_edges(l: &Lattice) -> Vec<(usize, usize)> {
    l.covers()
        .iter()
        .copied()
        .filter(|&(u, v)| l.down_set(u).union(l.up_set(v)) == l.elements())
        .collect()
}

/// Whether adding `u` to, and removing `u` from, every subuniverse again
/// gives a subuniverse. This holds exactly for the isolated elements.
pub fn isolated_characterization_holds(l: &Lattice, u: usize) -> Result<bool> {
    check_size(l.size(), CHARACTERIZATION_LIMIT)?;
    l.check_index(u)?;
    Ok(enumerate_subuniverses(l)?.all(|s| {
        let x = s.members();
        is_subuniverse(l, x.with(u)) && is_subuniverse(l, x.without(u))
    }))
}

/// A lattice split at its cut elements. Adjacent blocks share their cut.
#[derive(Debug, Clone)]
pub struct GluedDecomposition {
    /// Cut elements in increasing order; always starts with the bottom and
    /// ends with the top.
    pub cuts: Vec<usize>,
    /// `blocks[i]` is the interval between `cuts[i]` and `cuts[i + 1]`. A
    /// one-element lattice decomposes into itself.
    pub blocks: Vec<Lattice>,
}

impl GluedDecomposition {
    /// Glues the blocks back together.
    pub fn reconstruct(&self) -> Result<Lattice> {
        let mut blocks = self.blocks.iter();
        let first = blocks.next().expect("at least one block").clone();
        blocks.try_fold(first, |acc, b| acc.glued_sum(b))
    }

    /// Blocks of size 3 or more; every other block is a single edge.
    pub fn non_chain_blocks(&self) -> impl Iterator<Item = (usize, &Lattice)> {
        self.blocks.iter().enumerate().filter(|(_, b)| b.size() > 2)
    }
}

pub fn decompose_glued_sum(l: &Lattice) -> GluedDecomposition {
    let cuts = cut_elements(l).to_vec();
    if l.size() == 1 {
        return GluedDecomposition {
            cuts,
            blocks: vec![l.clone()],
        };
    }
    let blocks = cuts
        .windows(2)
        .map(|w| {
            let interval = l.up_set(w[0]).intersection(l.down_set(w[1]));
            l.induced(interval).expect("intervals are sublattices")
        })
        .collect();
    GluedDecomposition { cuts, blocks }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Class {
    Chain,
    GluedB4,
    GluedN5,
    Other,
}

impl Class {
    pub fn as_str(self) -> &'static str {
        match self {
            Class::Chain => "Chain",
            Class::GluedB4 => "GluedB4",
            Class::GluedN5 => "GluedN5",
            Class::Other => "Other",
        }
    }
}

impl std::fmt::Display for Class {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `C0 ⊕ core ⊕ C1`, with the chains given by how many elements lie strictly
/// below and strictly above the core.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainWrapping {
    pub below: usize,
    pub core: &'static str,
    pub above: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: Class,
    pub wrapping: Option<ChainWrapping>,
    /// Subuniverse count implied by the class, for the three named classes.
    pub predicted: Option<u64>,
}

pub fn classify(l: &Lattice) -> Classification {
    let n = l.size();
    if is_chain(l) {
        return Classification {
            class: Class::Chain,
            wrapping: None,
            predicted: Some(1u64 << n),
        };
    }
    let other = Classification {
        class: Class::Other,
        wrapping: None,
        predicted: None,
    };
    let d = decompose_glued_sum(l);
    let mut cores = d.non_chain_blocks();
    let (Some((i, core)), None) = (cores.next(), cores.next()) else {
        return other;
    };
    let iso = |name: &str| {
        let k = Lattice::named(name).expect("registry");
        core.size() == k.size() && is_isomorphic(core, &k).unwrap_or(false)
    };
    let (class, name, predicted) = if iso("B4") {
        // 13 · 2^(n-4) = 26 · 2^(n-5)
        (Class::GluedB4, "B4", 13u64 << (n - 4))
    } else if iso("N5") {
        (Class::GluedN5, "N5", 23u64 << (n - 5))
    } else {
        return other;
    };
    let (lo, hi) = (d.cuts[i], d.cuts[i + 1]);
    Classification {
        class,
        wrapping: Some(ChainWrapping {
            below: l.down_set(lo).len() - 1,
            core: name,
            above: l.up_set(hi).len() - 1,
        }),
        predicted: Some(predicted),
    }
}
