#![allow(dead_code)]

use latcensus::census::{build_census, CensusOptions, CensusRecord};
use latcensus::{BitSet, Lattice, LatticeExpr};
use rand::seq::SliceRandom;
use rand::Rng;

const ATOMS: [&str; 8] = ["C1", "C2", "C3", "C4", "B4", "N5", "M3", "B8"];

fn random_tree<R: Rng>(rng: &mut R, depth: u32) -> LatticeExpr {
    if depth == 0 || rng.gen_bool(0.35) {
        return LatticeExpr::parse(ATOMS.choose(rng).unwrap()).unwrap();
    }
    let a = random_tree(rng, depth - 1);
    let b = random_tree(rng, depth - 1);
    if rng.gen_bool(0.7) {
        a.glued(b)
    } else {
        a.product(b)
    }
}

/// A random expression whose lattice has between `min` and `max` elements.
pub fn random_expr<R: Rng>(rng: &mut R, min: usize, max: usize) -> LatticeExpr {
    loop {
        let e = random_tree(rng, 3);
        if (min..=max).contains(&e.size()) {
            return e;
        }
    }
}

/// A uniformly random linear extension, as a relabelling `perm[old] = new`.
pub fn random_linear_extension<R: Rng>(rng: &mut R, l: &Lattice) -> Vec<usize> {
    let n = l.size();
    let mut placed = BitSet::EMPTY;
    let mut perm = vec![0; n];
    for pos in 0..n {
        let ready: Vec<usize> = (0..n)
            .filter(|&x| !placed.contains(x) && l.lower_covers(x).is_subset(placed))
            .collect();
        let x = *ready.choose(rng).unwrap();
        perm[x] = pos;
        placed.insert(x);
    }
    perm
}

pub fn census_up_to(max_n: usize, with_congruences: bool) -> Vec<CensusRecord> {
    (1..=max_n)
        .flat_map(|n| {
            build_census(
                n,
                CensusOptions {
                    jobs: 1,
                    with_congruences,
                },
            )
            .unwrap()
        })
        .collect()
}

pub fn lattices_up_to(max_n: usize) -> Vec<Lattice> {
    census_up_to(max_n, false)
        .iter()
        .map(|r| r.lattice().unwrap())
        .collect()
}

pub fn expr(s: &str) -> Lattice {
    LatticeExpr::parse(s).unwrap().eval().unwrap()
}

/// Closure under join and meet, checked pair by pair.
pub fn closed(l: &Lattice, x: BitSet) -> bool {
    x.iter().all(|a| {
        x.iter()
            .all(|b| x.contains(l.join(a, b)) && x.contains(l.meet(a, b)))
    })
}

/// Subuniverse count by scanning every subset.
pub fn brute_sub_count(l: &Lattice) -> u64 {
    (0..1u64 << l.size())
        .filter(|&m| closed(l, BitSet(m)))
        .count() as u64
}
