use spf_core::ring::RingSpec;
use spf_core::schur::is_isomorphic;
use spf_core::verify::*;

const F2: RingSpec = RingSpec::PrimeField(2);

fn failures(r: &VerifyReport) -> Vec<String> {
    r.checks
        .iter()
        .filter(|c| matches!(c.outcome, Outcome::Fail | Outcome::Error))
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect()
}

#[test]
fn golden_table_over_f2() {
    let t = tensor_table(F2, 2).unwrap();
    assert!(t.golden);
    assert!(t.pass, "{}", t.to_markdown());
    assert_eq!(t.cells[1][1].computed, "[ω/α]");
    assert_eq!(t.cells[4][4].computed, "[ω/α/ω] ⊕ [ω/α/ω]");
    assert_eq!(t.cells[4][4].rank, 8);
    for (j, c) in t.cells[2].iter().enumerate() {
        assert_eq!(c.computed, TABLE_NAMES[j]);
    }
    let md = t.to_markdown();
    assert_eq!(md.lines().count(), 7);
}

#[test]
fn golden_table_has_the_expected_shape() {
    for i in 0..5 {
        for j in 0..5 {
            // the table is symmetric
            assert_eq!(GOLDEN[i][j], GOLDEN[j][i]);
        }
        // [α/ω] is the unit
        assert_eq!(GOLDEN[2][i], &[i]);
    }
}

#[test]
fn computed_tables_elsewhere() {
    let t = tensor_table(RingSpec::PrimeField(3), 2).unwrap();
    assert!(!t.golden);
    assert_eq!(t.names.len(), 4);
    // Γ^2 is the unit; labels resolve to the first isomorphic family member
    let (_, fam) = table_family(RingSpec::PrimeField(3), 2).unwrap();
    for (j, c) in t.cells[0].iter().enumerate() {
        let k = (0..fam.len()).find(|&k| is_isomorphic(&fam[k], &fam[j]).unwrap().is_iso()).unwrap();
        assert_eq!(c.computed, t.names[k]);
    }
    assert!(t.pass);
}

#[test]
fn suites_at_degree_two() {
    let r = verify(Suite::All, F2, 2);
    assert!(r.pass, "{:?}", failures(&r));
    assert!(r.checks.iter().all(|c| c.outcome != Outcome::Skipped));
    let z = verify(Suite::All, RingSpec::Integers, 2);
    assert!(z.pass, "{:?}", failures(&z));
    assert!(z.checks.iter().any(|c| c.suite == Suite::Serre && c.outcome == Outcome::Skipped));
}

#[test]
fn suite_names_parse() {
    for s in ["all", "categorical", "koszul", "ringel", "serre", "table"] {
        assert!(s.parse::<Suite>().is_ok());
    }
    assert!("tables".parse::<Suite>().is_err());
}
