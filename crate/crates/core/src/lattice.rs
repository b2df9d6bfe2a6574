//! Finite lattices over a linear-extension indexing.
//!
//! Every [`Lattice`] numbers its elements so that `a < b` in the order implies
//! `a < b` as indices. Element `0` is therefore the bottom and `n - 1` the top.
//! Up-sets and down-sets are kept as [`BitSet`] rows, which limits lattices to
//! [`MAX_ELEMENTS`] elements; subuniverse counts then always fit in a `u64`.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{check_size, Error, Result};

/// Largest supported lattice size.
pub const MAX_ELEMENTS: usize = 63;

#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    n: usize,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    join: Vec<u8>,
    meet: Vec<u8>,
    covers: Vec<(usize, usize)>,
    upper_covers: Vec<BitSet>,
    lower_covers: Vec<BitSet>,
}

/// On-disk lattice representation: `{"n": 4, "covers": [[0,1],[0,2],[1,3],[2,3]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
}

impl Lattice {
    /// Builds a lattice from a cover list whose pairs `(i, j)` all satisfy
    /// `i < j < n`. Redundant (non-cover) comparabilities are accepted and
    /// dropped from the stored cover relation.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotALattice(
                "a lattice has at least one element".into(),
            ));
        }
        check_size(n, MAX_ELEMENTS)?;
        let mut above: Vec<BitSet> = vec![BitSet::EMPTY; n];
        for &(i, j) in covers {
            if i >= n || j >= n {
                return Err(Error::IndexOutOfRange { index: i.max(j), n });
            }
            if i >= j {
                return Err(Error::BadIndexOrder(i, j));
            }
            above[i].insert(j);
        }
        let mut up = vec![BitSet::EMPTY; n];
        for i in (0..n).rev() {
            let mut u = BitSet::singleton(i);
            for j in above[i] {
                u = u.union(up[j]);
            }
            up[i] = u;
        }
        Self::from_up_sets(up)
    }

    /// Builds a lattice from an arbitrary order predicate on `0..n`, relabelling
    /// the elements into linear-extension order. Returns the lattice together
    /// with the map from input index to new index.
    pub fn from_order<F>(n: usize, leq: F) -> Result<(Self, Vec<usize>)>
    where
        F: Fn(usize, usize) -> bool,
    {
        if n == 0 {
            return Err(Error::NotALattice(
                "a lattice has at least one element".into(),
            ));
        }
        check_size(n, MAX_ELEMENTS)?;
        let mut up = vec![BitSet::EMPTY; n];
        for (a, row) in up.iter_mut().enumerate() {
            if !leq(a, a) {
                return Err(Error::NotAPoset(format!("{a} <= {a} fails")));
            }
            *row = (0..n).filter(|&b| leq(a, b)).collect();
        }
        for a in 0..n {
            for b in up[a] {
                if b != a && up[b].contains(a) {
                    return Err(Error::NotAPoset(format!(
                        "{a} and {b} violate antisymmetry"
                    )));
                }
                if !up[b].is_subset(up[a]) {
                    return Err(Error::NotAPoset(format!(
                        "transitivity fails above {a} <= {b}"
                    )));
                }
            }
        }
        // Strictly smaller elements have strictly smaller down-sets, so this
        // sort is a linear extension.
        let down_len: Vec<usize> = (0..n)
            .map(|a| (0..n).filter(|&b| up[b].contains(a)).count())
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| (down_len[a], a));
        let mut new_index = vec![0; n];
        for (pos, &a) in order.iter().enumerate() {
            new_index[a] = pos;
        }
        let mut new_up = vec![BitSet::EMPTY; n];
        for a in 0..n {
            new_up[new_index[a]] = up[a].iter().map(|b| new_index[b]).collect();
        }
        Ok((Self::from_up_sets(new_up)?, new_index))
    }

    /// Validates up-sets that are already closed and linear-extension indexed.
    fn from_up_sets(up: Vec<BitSet>) -> Result<Self> {
        let n = up.len();
        let mut down = vec![BitSet::EMPTY; n];
        for (a, &u) in up.iter().enumerate() {
            for b in u {
                down[b].insert(a);
            }
        }
        if up[0] != BitSet::full(n) {
            return Err(Error::NotALattice(
                "element 0 is not a least element".into(),
            ));
        }
        if down[n - 1] != BitSet::full(n) {
            return Err(Error::NotALattice(format!(
                "element {} is not a greatest element",
                n - 1
            )));
        }
        let mut join = vec![0u8; n * n];
        let mut meet = vec![0u8; n * n];
        for a in 0..n {
            for b in a..n {
                let ub = up[a].intersection(up[b]);
                let j = ub.first().expect("top bounds every pair");
                if up[j] != ub {
                    return Err(Error::NotALattice(format!(
                        "{a} and {b} have no least upper bound"
                    )));
                }
                let lb = down[a].intersection(down[b]);
                let m = lb.last().expect("bottom bounds every pair");
                if down[m] != lb {
                    return Err(Error::NotALattice(format!(
                        "{a} and {b} have no greatest lower bound"
                    )));
                }
                join[a * n + b] = j as u8;
                join[b * n + a] = j as u8;
                meet[a * n + b] = m as u8;
                meet[b * n + a] = m as u8;
            }
        }
        let mut upper_covers = vec![BitSet::EMPTY; n];
        let mut lower_covers = vec![BitSet::EMPTY; n];
        let mut covers = Vec::new();
        for a in 0..n {
            let strict = up[a].without(a);
            for b in strict {
                if strict.intersection(down[b]) == BitSet::singleton(b) {
                    upper_covers[a].insert(b);
                    lower_covers[b].insert(a);
                    covers.push((a, b));
                }
            }
        }
        Ok(Lattice {
            n,
            up,
            down,
            join,
            meet,
            covers,
            upper_covers,
            lower_covers,
        })
    }

    /// The `k`-element chain.
    pub fn chain(k: usize) -> Result<Self> {
        let covers: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Self::from_covers(k, &covers)
    }

    /// Looks up a lattice by registry name: `chain:k` (or `Ck`), `B4`, `B8`,
    /// `N5`, `M3`, `C2xC3`.
    ///
    /// Labels follow the usual diagrams: in `N5` the elements are
    /// `0, a, b, c, 1` with `a < c` and `b` incomparable to both; `M3` is
    /// `0, a, b, c, 1`; `B8` lists its atoms `1..=3` and its coatoms `4..=6`,
    /// where `4 = 1 ∨ 2`, `5 = 1 ∨ 3`, `6 = 2 ∨ 3`.
    pub fn named(name: &str) -> Result<Self> {
        let name = name.trim();
        let chain_len = name
            .strip_prefix("chain:")
            .or_else(|| name.strip_prefix('C'))
            .and_then(|k| k.parse::<usize>().ok());
        if let Some(k) = chain_len {
            if k == 0 {
                return Err(Error::UnknownName(name.into()));
            }
            return Self::chain(k);
        }
        match name {
            "B4" => Self::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]),
            "N5" => Self::from_covers(5, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)]),
            "M3" => Self::from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]),
            "B8" => Self::from_covers(
                8,
                &[
                    (0, 1),
                    (0, 2),
                    (0, 3),
                    (1, 4),
                    (2, 4),
                    (1, 5),
                    (3, 5),
                    (2, 6),
                    (3, 6),
                    (4, 7),
                    (5, 7),
                    (6, 7),
                ],
            ),
            "C2xC3" => Self::chain(2)?.direct_product(&Self::chain(3)?),
            _ => Err(Error::UnknownName(name.into())),
        }
    }

    /// Places `other` on top of `self`, identifying the top of `self` with the
    /// bottom of `other`.
    pub fn glued_sum(&self, other: &Lattice) -> Result<Self> {
        let shift = self.n - 1;
        let covers: Vec<_> = self
            .covers
            .iter()
            .copied()
            .chain(other.covers.iter().map(|&(a, b)| (a + shift, b + shift)))
            .collect();
        Self::from_covers(self.n + other.n - 1, &covers)
    }

    /// Componentwise order on pairs; `(i, j)` starts as index `i * other.n + j`
    /// and is then relabelled into linear-extension order.
    pub fn direct_product(&self, other: &Lattice) -> Result<Self> {
        let m = other.n;
        check_size(self.n * m, MAX_ELEMENTS)?;
        let (l, _) = Self::from_order(self.n * m, |x, y| {
            self.leq(x / m, y / m) && other.leq(x % m, y % m)
        })?;
        Ok(l)
    }

    /// The order dual.
    pub fn dual(&self) -> Self {
        Self::from_order(self.n, |a, b| self.leq(b, a))
            .expect("the dual of a lattice is a lattice")
            .0
    }

    /// Renames element `i` to `perm[i]`. The result must again be a linear
    /// extension, otherwise [`Error::BadIndexOrder`] is returned.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::NotAPoset(format!(
                "relabelling has {} entries for {} elements",
                perm.len(),
                self.n
            )));
        }
        let image: BitSet = perm.iter().collect();
        if image != BitSet::full(self.n) {
            return Err(Error::NotAPoset("relabelling is not a permutation".into()));
        }
        let covers: Vec<_> = self
            .covers
            .iter()
            .map(|&(a, b)| (perm[a], perm[b]))
            .collect();
        Self::from_covers(self.n, &covers)
    }

    /// The lattice formed by the order restricted to `members`, re-indexed
    /// from `0` with relative index order kept. Its operations need not agree
    /// with those of `self`; see [`Lattice::induced`] for sublattices.
    pub fn restrict_order(&self, members: BitSet) -> Result<Self> {
        let elems = members.to_vec();
        if elems.is_empty() {
            return Err(Error::EmptyGenerator);
        }
        if let Some(&bad) = elems.iter().find(|&&e| e >= self.n) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                n: self.n,
            });
        }
        let k = elems.len();
        let mut up = vec![BitSet::EMPTY; k];
        for (x, &a) in elems.iter().enumerate() {
            for (y, &b) in elems.iter().enumerate() {
                if self.leq(a, b) {
                    up[x].insert(y);
                }
            }
        }
        Self::from_up_sets(up)
    }

    /// The sublattice on `members`, re-indexed from `0`. Members keep their
    /// relative index order. Fails unless `members` is a nonempty subuniverse.
    pub fn induced(&self, members: BitSet) -> Result<Self> {
        let sub = self.restrict_order(members).map_err(|e| match e {
            Error::NotALattice(why) => {
                Error::NotALattice(format!("induced order is not a lattice ({why})"))
            }
            other => other,
        })?;
        let elems = members.to_vec();
        let k = elems.len();
        for x in 0..k {
            for y in 0..k {
                if elems[sub.join(x, y)] != self.join(elems[x], elems[y])
                    || elems[sub.meet(x, y)] != self.meet(elems[x], elems[y])
                {
                    return Err(Error::NotALattice(format!(
                        "{members:?} is not closed under the operations"
                    )));
                }
            }
        }
        Ok(sub)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.n - 1
    }

    pub fn elements(&self) -> BitSet {
        BitSet::full(self.n)
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b] as usize
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b] as usize
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn checked_join(&self, a: usize, b: usize) -> Result<usize> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.join(a, b))
    }

    pub fn checked_meet(&self, a: usize, b: usize) -> Result<usize> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.meet(a, b))
    }

    pub fn checked_leq(&self, a: usize, b: usize) -> Result<bool> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.leq(a, b))
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            })
        }
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Principal filter `↑a`.
    #[inline]
    pub fn up_set(&self, a: usize) -> BitSet {
        self.up[a]
    }

    /// Principal ideal `↓a`.
    #[inline]
    pub fn down_set(&self, a: usize) -> BitSet {
        self.down[a]
    }

    pub fn upper_covers(&self, a: usize) -> BitSet {
        self.upper_covers[a]
    }

    pub fn lower_covers(&self, a: usize) -> BitSet {
        self.lower_covers[a]
    }

    /// Cover pairs `(a, b)` with `a ≺ b`, sorted by `a` then `b`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Length of the longest chain from the bottom to each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.n];
        for b in 0..self.n {
            h[b] = self.lower_covers[b]
                .iter()
                .map(|a| h[a] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    pub fn to_file(&self) -> LatticeFile {
        LatticeFile {
            n: self.n,
            covers: self.covers.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: LatticeFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            input: text.chars().take(80).collect(),
            reason: e.to_string(),
        })?;
        Self::try_from(&file)
    }
}

impl TryFrom<&LatticeFile> for Lattice {
    type Error = Error;

    fn try_from(file: &LatticeFile) -> Result<Self> {
        let covers: Vec<_> = file.covers.iter().map(|&[a, b]| (a, b)).collect();
        Lattice::from_covers(file.n, &covers)
    }
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Lattice")
            .field("n", &self.n)
            .field("covers", &self.covers)
            .finish()
    }
}
