//! Isomorph-free generation of all lattices of a given size.
//!
//! Removing an atom from a lattice with at least three elements leaves a
//! lattice, so every `n`-element lattice is some `(n-1)`-element lattice with
//! a new atom inserted below a nonempty up-set `U` avoiding the bottom. A
//! candidate is kept only when its *canonical* atom (the atom with the least
//! canonical position) deletes back to the parent it was built from; the
//! remaining duplicates all share that parent and are dropped by a per-parent
//! set of canonical forms.

use std::collections::HashSet;

use rayon::prelude::*;

use super::canon::{canonical_form, canonical_labeling, CanonicalForm};
use crate::bitset::BitSet;
use crate::error::{check_size, Result};
use crate::lattice::Lattice;

/// Largest size [`enumerate_lattices`] accepts.
pub const GENERATION_LIMIT: usize = 9;

/// One representative per isomorphism class, in canonical labelling and
/// sorted by canonical form.
pub fn enumerate_lattices(n: usize) -> Result<Vec<Lattice>> {
    enumerate_lattices_with_jobs(n, 1)
}

/// As [`enumerate_lattices`], spreading parents over `jobs` worker threads.
/// The output does not depend on `jobs`.
pub fn enumerate_lattices_with_jobs(n: usize, jobs: usize) -> Result<Vec<Lattice>> {
    Ok(classes(n, jobs)?.into_iter().map(|(_, l)| l).collect())
}

pub(crate) fn classes(n: usize, jobs: usize) -> Result<Vec<(CanonicalForm, Lattice)>> {
    check_size(n, GENERATION_LIMIT)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        let mut level = vec![canonical_pair(Lattice::chain(1)?)?];
        if n >= 2 {
            level = vec![canonical_pair(Lattice::chain(2)?)?];
        }
        for _ in 3..=n {
            let children: Vec<Vec<(CanonicalForm, Lattice)>> = level
                .par_iter()
                .map(|(form, parent)| children_of(form, parent))
                .collect::<Result<_>>()?;
            level = children.into_iter().flatten().collect();
            level.sort_by(|a, b| a.0.cmp(&b.0));
        }
        Ok(level)
    })
}

fn canonical_pair(l: Lattice) -> Result<(CanonicalForm, Lattice)> {
    let lab = canonical_labeling(&l)?;
    Ok((lab.form, l.relabel(&lab.position)?))
}

/// Children of `parent` (size `m >= 2`) whose canonical parent is `parent`.
fn children_of(
    parent_form: &CanonicalForm,
    parent: &Lattice,
) -> Result<Vec<(CanonicalForm, Lattice)>> {
    let m = parent.size();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    // U ranges over the nonempty up-sets of `parent` not containing 0.
    for mask in 1u64..1 << (m - 1) {
        let upper = BitSet(mask << 1);
        if upper.iter().any(|u| !parent.up_set(u).is_subset(upper)) {
            continue;
        }
        let Ok(child) = insert_atom(parent, upper) else {
            continue;
        };
        let lab = canonical_labeling(&child)?;
        if seen.contains(&lab.form) {
            continue;
        }
        let atoms = child.upper_covers(0);
        let canonical_atom = atoms
            .iter()
            .min_by_key(|&a| lab.position[a])
            .expect("a lattice with three or more elements has an atom");
        let rest = child.restrict_order(child.elements().without(canonical_atom))?;
        if canonical_form(&rest)? != *parent_form {
            continue;
        }
        seen.insert(lab.form.clone());
        out.push((lab.form, child.relabel(&lab.position)?));
    }
    Ok(out)
}

/// `parent` with a new element at index 1 covering the bottom and lying
/// below exactly the members of `upper` (an up-set).
fn insert_atom(parent: &Lattice, upper: BitSet) -> Result<Lattice> {
    let shift = |x: usize| if x == 0 { 0 } else { x + 1 };
    let mut pairs: Vec<(usize, usize)> = parent
        .covers()
        .iter()
        .map(|&(a, b)| (shift(a), shift(b)))
        .collect();
    pairs.push((0, 1));
    pairs.extend(upper.iter().map(|u| (1, u + 1)));
    Lattice::from_covers(parent.size() + 1, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_class_counts() {
        let counts: Vec<usize> = (1..=7)
            .map(|n| enumerate_lattices(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn outputs_are_canonical_and_sorted() {
        let ls = enumerate_lattices(6).unwrap();
        let forms: Vec<_> = ls.iter().map(|l| canonical_form(l).unwrap()).collect();
        let mut sorted = forms.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(forms, sorted);
        for l in &ls {
            assert_eq!(canonical_form(l).unwrap().to_lattice().unwrap(), *l);
        }
    }

    #[test]
    fn jobs_do_not_change_output() {
        assert_eq!(
            enumerate_lattices_with_jobs(7, 1).unwrap(),
            enumerate_lattices_with_jobs(7, 3).unwrap()
        );
    }

    #[test]
    fn limits() {
        assert!(enumerate_lattices(10).is_err());
        assert!(enumerate_lattices(0).unwrap().is_empty());
    }
}
