//! Fixed lattices with independently derived counts.

mod common;

use latcensus::census::verify::{
    con_spectrum, spectrum, verify_corollary, verify_lemma4, verify_remark1, verify_theorem,
};
use latcensus::census::{canonical_form, is_isomorphic};
use latcensus::congruence::{count_congruences, count_congruences_naive};
use latcensus::structure::{classify, Class};
use latcensus::subuniverse::{
    count_subuniverses, enumerate_subuniverses, generated_sublattice, trace_count,
};
use latcensus::{BitSet, Lattice};

use common::{brute_sub_count, closed, expr};

fn sub(l: &Lattice) -> u64 {
    count_subuniverses(l).unwrap().value()
}

fn form(s: &str) -> String {
    canonical_form(&expr(s)).unwrap().to_string()
}

#[test]
fn named_counts_match_subset_scan() {
    for (e, want) in [
        ("B4", 13),
        ("N5", 23),
        ("C2xC3", 38),
        ("B4+B4", 85),
        ("B4+C2+B4", 169),
        ("M3", 20),
        ("B8", 74),
        ("N5+C3", 92),
        ("(C2xC3)+C2", 76),
        ("C2+C2", 8),
    ] {
        let l = expr(e);
        assert_eq!(brute_sub_count(&l), want, "{e}");
        assert_eq!(sub(&l), want, "{e}");
    }
}

#[test]
fn b8_subuniverses_by_size() {
    let b8 = expr("B8");
    let mut by_size = [0u64; 9];
    for m in 0..1u64 << 8 {
        if closed(&b8, BitSet(m)) {
            by_size[m.count_ones() as usize] += 1;
        }
    }
    assert_eq!(by_size, [1, 8, 19, 18, 15, 6, 6, 0, 1]);
    let mut from_lib = [0u64; 9];
    for s in enumerate_subuniverses(&b8).unwrap() {
        from_lib[s.len()] += 1;
    }
    assert_eq!(from_lib, by_size);
}

#[test]
fn b4_atom_traces() {
    let b4 = expr("B4");
    let atoms = BitSet::from_iter([1usize, 2]);
    assert_eq!(trace_count(&b4, atoms).unwrap(), 4);
    assert_eq!(trace_count(&b4, BitSet::EMPTY).unwrap(), 1);
    assert_eq!(trace_count(&b4, b4.elements()).unwrap(), 13);
}

#[test]
fn generated_sublattices() {
    let b8 = expr("B8");
    let atoms = BitSet::from_iter([1usize, 2, 3]);
    assert_eq!(
        generated_sublattice(&b8, atoms).unwrap().members(),
        b8.elements()
    );
    let m3 = expr("M3");
    let k = generated_sublattice(&m3, BitSet::from_iter([1usize, 3])).unwrap();
    assert_eq!(k.members(), BitSet::from_iter([0usize, 1, 3, 4]));
}

#[test]
fn isomorphisms() {
    assert!(is_isomorphic(&expr("C2xC2"), &expr("B4")).unwrap());
    assert!(is_isomorphic(&expr("N5").dual(), &expr("N5")).unwrap());
    assert!(!is_isomorphic(&expr("C5"), &expr("N5")).unwrap());
    assert_eq!(expr("C2+C2"), Lattice::chain(3).unwrap());
}

#[test]
fn chain_congruences() {
    for k in 1..=12 {
        assert_eq!(
            count_congruences(&Lattice::chain(k).unwrap()).unwrap(),
            1 << (k - 1),
            "chain:{k}"
        );
    }
    for (e, want) in [
        ("C5", 16),
        ("B4+C2", 8),
        ("N5", 5),
        ("M3", 2),
        ("C1", 1),
        ("(C2xC3)+C2", 16),
    ] {
        assert_eq!(count_congruences(&expr(e)).unwrap(), want, "{e}");
    }
    assert_eq!(count_congruences_naive(&expr("(C2xC3)+C2")).unwrap(), 16);
}

#[test]
fn five_element_reports() {
    let report = verify_theorem(5).unwrap();
    assert!(report.passed);
    let s = spectrum(5).unwrap();
    assert_eq!(s.distinct_values(), vec![32, 26, 23, 20]);
    assert_eq!(s.witnesses_of(26), [form("B4+C2"), form("C2+B4")].into());
    assert_eq!(s.witnesses_of(23), [form("N5")].into());
    assert!(verify_corollary(5).unwrap().passed);
    assert!(verify_lemma4(5).unwrap().passed);
    // only four distinct congruence counts occur among the five lattices
    assert_eq!(
        con_spectrum(5).unwrap().distinct_values(),
        vec![16, 8, 5, 2]
    );
}

#[test]
fn seven_element_reports() {
    let report = verify_theorem(7).unwrap();
    let third = report
        .checks
        .iter()
        .find(|c| c.name.starts_with("third largest value"))
        .unwrap();
    assert!(third.passed && third.detail.contains("92"));
    assert!(spectrum(7)
        .unwrap()
        .witnesses_of(92)
        .contains(&form("N5+C3")));
    let con = con_spectrum(7).unwrap();
    assert_eq!(con.distinct_values()[3], 16);
    assert!(con.witnesses_of(16).contains(&form("(C2xC3)+C2")));
    assert!(verify_remark1(6).unwrap().passed);
}

#[test]
fn report_sizes_are_bounded() {
    assert!(verify_theorem(4).is_err());
    assert!(verify_theorem(9).is_err());
}

#[test]
fn classification_matches_counts() {
    for (e, class, predicted) in [
        ("C6", Class::Chain, Some(64)),
        ("B4+C3", Class::GluedB4, Some(52)),
        ("C2+N5", Class::GluedN5, Some(46)),
        ("M3", Class::Other, None),
    ] {
        let l = expr(e);
        let c = classify(&l);
        assert_eq!((c.class, c.predicted), (class, predicted), "{e}");
        if let Some(p) = predicted {
            assert_eq!(brute_sub_count(&l), p, "{e}");
        }
    }
}
