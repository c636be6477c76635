//! The exhaustive oracles and their fixture values, checked against the
//! library.

mod oracle;

use oracle::*;
use tensorcodes::expansion::rho_exact;
use tensorcodes::testability::{rho_a_exact, rho_r_exact, FlatTest};
use tensorcodes::{CodeFamily, Field, LinearCode};

fn rep2_family(m: usize) -> CodeFamily {
    CodeFamily::uniform(&LinearCode::repetition(&Field::new(1).unwrap(), 2).unwrap(), m).unwrap()
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

#[test]
fn oracles_reproduce_fixtures() {
    assert_eq!(rep2_oracle(2).rho(), fx(RHO_REP2_M2));
    assert_eq!(rep2_oracle(3).rho(), fx(RHO_REP2_M3));
    assert_eq!(rep2_oracle(2).rho_r(1), fx(RHO_R_REP2_T21));
    assert_eq!(rep2_oracle(3).rho_r(1), fx(RHO_R_REP2_T31));
    assert_eq!(rep2_oracle(3).rho_r(2), fx(RHO_R_REP2_T32));
    assert_eq!(rep2_oracle(2).rho_a(), fx(RHO_A_REP2_M2));
    assert_eq!(rep2_oracle(3).rho_a(), fx(RHO_A_REP2_M3));
}

#[test]
fn expansion_matches_fixtures() {
    assert_eq!(rho_exact(&rep2_family(2)).unwrap().value, fx(RHO_REP2_M2));
    assert_eq!(rho_exact(&rep2_family(3)).unwrap().value, fx(RHO_REP2_M3));
}

#[test]
fn robustness_matches_fixtures() {
    for (m, k, v) in [(2, 1, RHO_R_REP2_T21), (3, 1, RHO_R_REP2_T31), (3, 2, RHO_R_REP2_T32)] {
        let t = FlatTest::new(&vec![2; m], k).unwrap();
        assert_eq!(rho_r_exact(&t, &rep2_family(m)).unwrap().value, fx(v), "m={m} k={k}");
    }
}

#[test]
fn agreement_matches_fixtures() {
    assert_eq!(rho_a_exact(&rep2_family(2)).unwrap().value, fx(RHO_A_REP2_M2));
    assert_eq!(rho_a_exact(&rep2_family(3)).unwrap().value, fx(RHO_A_REP2_M3));
}

#[test]
fn gf4_repetition_matches_oracle() {
    let rep: Vec<Vec<u8>> = (0..4).map(|a| vec![a; 3]).collect();
    let oracle = Oracle { shape: vec![3, 3], q: 4, codes: vec![rep.clone(), rep] };
    let fam = CodeFamily::reed_solomon(&Field::new(2).unwrap(), 1, 3, 2).unwrap();
    assert_eq!(rho_a_exact(&fam).unwrap().value, oracle.rho_a());
    let t = FlatTest::new(&[3, 3], 1).unwrap();
    assert_eq!(rho_r_exact(&t, &fam).unwrap().value, oracle.rho_r(1));
}

#[test]
fn diagonal_word_attains_one_half() {
    let r = rho_exact(&rep2_family(2)).unwrap();
    assert_eq!(r.value, q(1, 2));
    assert_eq!(r.witness.weight(), 2);
    assert_eq!(r.decomposition.cost(), Q::from_integer(1));
}
