//! Exhaustive census of small lattices.
//!
//! [`build_census`] produces one [`CensusRecord`] per isomorphism class of
//! `n`-element lattices, sorted by canonical form, and [`write_jsonl`] writes
//! them one JSON object per line. The reports in [`verify`] are computed from
//! these records.

pub mod canon;
pub mod generate;
pub mod verify;

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use canon::{
    canonical_form, canonical_labeling, canonical_lattice, is_isomorphic, CanonicalForm,
};
pub use generate::{enumerate_lattices, enumerate_lattices_with_jobs, GENERATION_LIMIT};
pub use verify::{
    con_spectrum, spectrum, verify_corollary, verify_lemma4, verify_remark1, verify_theorem, Check,
    Report, SpectrumEntry, SpectrumReport,
};

use crate::congruence::count_congruences;
use crate::error::Result;
use crate::lattice::Lattice;
use crate::structure::{classify, find_antichain, Class};
use crate::subuniverse::count_subuniverses;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub n: usize,
    /// Hex encoding of the [`CanonicalForm`].
    pub canon: String,
    /// Covers in the canonical labelling.
    pub covers: Vec<[usize; 2]>,
    pub sub_count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub con_count: Option<u64>,
    pub class: Class,
    pub antichain3: bool,
}

impl CensusRecord {
    pub fn from_lattice(l: &Lattice, with_congruences: bool) -> Result<Self> {
        let lab = canonical_labeling(l)?;
        let l = l.relabel(&lab.position)?;
        Ok(CensusRecord {
            n: l.size(),
            canon: lab.form.to_string(),
            covers: l.to_file().covers,
            sub_count: count_subuniverses(&l)?.value(),
            con_count: if with_congruences {
                Some(count_congruences(&l)?)
            } else {
                None
            },
            class: classify(&l).class,
            antichain3: find_antichain(&l, 3).is_some(),
        })
    }

    pub fn lattice(&self) -> Result<Lattice> {
        let covers: Vec<_> = self.covers.iter().map(|&[a, b]| (a, b)).collect();
        Lattice::from_covers(self.n, &covers)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    pub jobs: usize,
    pub with_congruences: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            jobs: 1,
            with_congruences: false,
        }
    }
}

pub fn build_census(n: usize, options: CensusOptions) -> Result<Vec<CensusRecord>> {
    let classes = generate::classes(n, options.jobs)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs.max(1))
        .build()
        .expect("thread pool");
    let mut records: Vec<CensusRecord> = pool.install(|| {
        classes
            .par_iter()
            .map(|(_, l)| CensusRecord::from_lattice(l, options.with_congruences))
            .collect::<Result<_>>()
    })?;
    records.sort_by(|a, b| a.canon.cmp(&b.canon));
    Ok(records)
}

pub fn write_jsonl<W: Write>(records: &[CensusRecord], mut out: W) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

pub fn read_jsonl(text: &str) -> serde_json::Result<Vec<CensusRecord>> {
    text.lines()
        .filter(|line| !line.trim().is_empty())
        .map(serde_json::from_str)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_element_census() {
        let records = build_census(
            5,
            CensusOptions {
                jobs: 1,
                with_congruences: true,
            },
        )
        .unwrap();
        assert_eq!(records.len(), 5);
        let mut counts: Vec<_> = records.iter().map(|r| r.sub_count).collect();
        counts.sort_unstable();
        assert_eq!(counts, vec![20, 23, 26, 26, 32]);
        let m3 = records.iter().find(|r| r.sub_count == 20).unwrap();
        assert!(m3.antichain3);
        assert_eq!(m3.con_count, Some(2));
        assert_eq!(m3.class, Class::Other);
    }

    #[test]
    fn jsonl_round_trip() {
        let records = build_census(4, CensusOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_jsonl(&records, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(!text.contains("con_count"));
        let first = text.lines().next().unwrap();
        assert!(first.starts_with(r#"{"n":4,"canon":""#), "{first}");
        assert_eq!(read_jsonl(&text).unwrap(), records);
        for r in &records {
            assert_eq!(
                canonical_form(&r.lattice().unwrap()).unwrap().to_string(),
                r.canon
            );
        }
    }
}
