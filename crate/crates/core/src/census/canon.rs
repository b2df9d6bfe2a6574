//! Canonical forms of finite lattices.
//!
//! Elements are first coloured by an isomorphism-invariant refinement that
//! starts from `(height, #lower covers, #upper covers, |↓x|, |↑x|)` and then
//! folds in the colours of cover neighbours until stable. Colours are ranked
//! so that a smaller colour never sits above a larger one, so assigning
//! positions cell by cell in colour order always yields a linear extension.
//! A branch-and-bound search over the orderings inside each cell then picks
//! the lexicographically least sequence of cover columns.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::bitset::BitSet;
use crate::error::{check_size, Error, Result};
use crate::lattice::Lattice;

/// Largest lattice accepted by [`canonical_form`].
pub const CANON_LIMIT: usize = 12;

/// Byte string identifying an isomorphism class: the size followed by one
/// big-endian 16-bit word per position `p`, whose bit `q` is set when the
/// element at position `q` is covered by the element at position `p`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0[0] as usize
    }

    /// Rebuilds the lattice in its canonical labelling.
    pub fn to_lattice(&self) -> Result<Lattice> {
        let n = self.size();
        let mut covers = Vec::new();
        for p in 0..n {
            let word = u16::from_be_bytes([self.0[1 + 2 * p], self.0[2 + 2 * p]]);
            for q in BitSet(word as u64) {
                covers.push((q, p));
            }
        }
        covers.sort_unstable();
        Lattice::from_covers(n, &covers)
    }

    fn from_columns(columns: &[u16]) -> Self {
        let mut bytes = Vec::with_capacity(1 + 2 * columns.len());
        bytes.push(columns.len() as u8);
        for c in columns {
            bytes.extend_from_slice(&c.to_be_bytes());
        }
        CanonicalForm(bytes)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({self})")
    }
}

impl FromStr for CanonicalForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.into(),
            reason: reason.into(),
        };
        if !s.len().is_multiple_of(2) || !s.is_ascii() {
            return Err(bad("expected an even number of hex digits"));
        }
        let bytes = (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16))
            .collect::<std::result::Result<Vec<u8>, _>>()
            .map_err(|_| bad("invalid hex digit"))?;
        if bytes.is_empty() || bytes.len() != 1 + 2 * bytes[0] as usize {
            return Err(bad("length does not match the encoded size"));
        }
        Ok(CanonicalForm(bytes))
    }
}

/// A canonical form together with one labelling that attains it.
#[derive(Debug, Clone)]
pub struct CanonicalLabeling {
    pub form: CanonicalForm,
    /// `position[x]` is the canonical index of element `x`.
    pub position: Vec<usize>,
}

pub fn canonical_form(l: &Lattice) -> Result<CanonicalForm> {
    Ok(canonical_labeling(l)?.form)
}

pub fn is_isomorphic(k: &Lattice, l: &Lattice) -> Result<bool> {
    if k.size() != l.size() || k.covers().len() != l.covers().len() {
        check_size(k.size().max(l.size()), CANON_LIMIT)?;
        return Ok(false);
    }
    Ok(canonical_form(k)? == canonical_form(l)?)
}

/// The lattice relabelled into canonical order.
pub fn canonical_lattice(l: &Lattice) -> Result<Lattice> {
    let lab = canonical_labeling(l)?;
    l.relabel(&lab.position)
}

pub fn canonical_labeling(l: &Lattice) -> Result<CanonicalLabeling> {
    let n = l.size();
    check_size(n, CANON_LIMIT)?;
    let colour = refined_colours(l);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut cell_of_position = Vec::with_capacity(n);
    {
        let mut by_colour: Vec<usize> = (0..n).collect();
        by_colour.sort_by_key(|&x| (colour[x], x));
        for &x in &by_colour {
            if cells.len() <= colour[x] {
                cells.push(Vec::new());
            }
            cells[colour[x]].push(x);
            cell_of_position.push(colour[x]);
        }
    }
    let mut search = Search {
        l,
        cells,
        cell_of_position,
        placed: vec![usize::MAX; n],
        used: BitSet::EMPTY,
        columns: vec![0; n],
        best: None,
        best_columns: Vec::new(),
    };
    search.descend(0, Ordering::Equal);
    let order = search.best.expect("at least one labelling exists");
    let mut position = vec![0; n];
    for (p, &x) in order.iter().enumerate() {
        position[x] = p;
    }
    Ok(CanonicalLabeling {
        form: CanonicalForm::from_columns(&search.best_columns),
        position,
    })
}

/// Colour classes ranked so that `x < y` in the lattice implies
/// `colour[x] < colour[y]`.
fn refined_colours(l: &Lattice) -> Vec<usize> {
    let n = l.size();
    let heights = l.heights();
    let base: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            vec![
                heights[x],
                l.lower_covers(x).len(),
                l.upper_covers(x).len(),
                l.down_set(x).len(),
                l.up_set(x).len(),
            ]
        })
        .collect();
    let mut colour = rank(&base);
    loop {
        let sigs: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                let mut lower: Vec<usize> = l.lower_covers(x).iter().map(|y| colour[y]).collect();
                let mut upper: Vec<usize> = l.upper_covers(x).iter().map(|y| colour[y]).collect();
                lower.sort_unstable();
                upper.sort_unstable();
                let mut sig = vec![colour[x], lower.len()];
                sig.extend(lower);
                sig.extend(upper);
                sig
            })
            .collect();
        let next = rank(&sigs);
        let before = colour.iter().max().copied();
        let after = next.iter().max().copied();
        colour = next;
        if before == after {
            return colour;
        }
    }
}

fn rank(sigs: &[Vec<usize>]) -> Vec<usize> {
    let mut distinct: Vec<&Vec<usize>> = sigs.iter().collect();
    distinct.sort();
    distinct.dedup();
    sigs.iter()
        .map(|s| distinct.binary_search(&s).expect("present"))
        .collect()
}

struct Search<'a> {
    l: &'a Lattice,
    cells: Vec<Vec<usize>>,
    cell_of_position: Vec<usize>,
    placed: Vec<usize>,
    used: BitSet,
    columns: Vec<u16>,
    best: Option<Vec<usize>>,
    best_columns: Vec<u16>,
}

impl Search<'_> {
    /// `state` compares the current prefix with the same prefix of the best
    /// labelling (`Less` means already strictly better). Returns whether the
    /// best labelling was replaced somewhere below.
    fn descend(&mut self, p: usize, mut state: Ordering) -> bool {
        let n = self.l.size();
        if p == n {
            if self.best.is_none() || state == Ordering::Less {
                self.best = Some(self.placed.clone());
                self.best_columns = self.columns.clone();
                return true;
            }
            return false;
        }
        let mut replaced = false;
        let cell = self.cell_of_position[p];
        for i in 0..self.cells[cell].len() {
            let x = self.cells[cell][i];
            if self.used.contains(x) {
                continue;
            }
            let lower = self.l.lower_covers(x);
            let mut word = 0u16;
            for q in 0..p {
                if lower.contains(self.placed[q]) {
                    word |= 1 << q;
                }
            }
            let next = match (&self.best, state) {
                (None, _) => Ordering::Equal,
                (Some(_), Ordering::Less) => Ordering::Less,
                (Some(_), _) => match word.cmp(&self.best_columns[p]) {
                    Ordering::Greater => continue,
                    o => o,
                },
            };
            self.placed[p] = x;
            self.columns[p] = word;
            self.used.insert(x);
            if self.descend(p + 1, next) {
                // the new best shares the prefix placed so far
                state = Ordering::Equal;
                replaced = true;
            }
            self.used.remove(x);
        }
        replaced
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(s: &str) -> Lattice {
        Lattice::named(s).unwrap()
    }

    #[test]
    fn forms_separate_and_identify() {
        let b4 = named("B4");
        let c2 = Lattice::chain(2).unwrap();
        assert_eq!(
            canonical_form(&b4).unwrap(),
            canonical_form(&c2.direct_product(&c2).unwrap()).unwrap()
        );
        assert_ne!(
            canonical_form(&named("N5")).unwrap(),
            canonical_form(&named("M3")).unwrap()
        );
        assert!(is_isomorphic(&named("N5"), &named("N5").dual()).unwrap());
        assert!(!is_isomorphic(&Lattice::chain(5).unwrap(), &named("N5")).unwrap());
    }

    #[test]
    fn hex_round_trip_and_decode() {
        for name in ["B8", "N5", "M3", "C2xC3", "C1"] {
            let l = named(name);
            let form = canonical_form(&l).unwrap();
            let parsed: CanonicalForm = form.to_string().parse().unwrap();
            assert_eq!(parsed, form);
            let back = form.to_lattice().unwrap();
            assert!(is_isomorphic(&back, &l).unwrap());
            assert_eq!(canonical_form(&back).unwrap(), form);
        }
        assert!("0".parse::<CanonicalForm>().is_err());
        assert!("zz".parse::<CanonicalForm>().is_err());
        assert!("0300".parse::<CanonicalForm>().is_err());
    }

    #[test]
    fn canonical_lattice_is_fixed_point() {
        let l = named("B4")
            .glued_sum(&Lattice::chain(3).unwrap())
            .unwrap()
            .glued_sum(&named("N5"))
            .unwrap();
        let c = canonical_lattice(&l).unwrap();
        assert_eq!(canonical_lattice(&c).unwrap(), c);
    }

    #[test]
    fn size_limit() {
        assert!(canonical_form(&Lattice::chain(12).unwrap()).is_ok());
        assert!(matches!(
            canonical_form(&Lattice::chain(13).unwrap()),
            Err(Error::SizeLimit { n: 13, max: 12 })
        ));
    }
}
