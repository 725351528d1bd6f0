mod support;

use support::oracle::check_group;

#[test]
fn oracle_a2() {
    check_group("A2");
}

#[test]
fn oracle_b2() {
    check_group("B2");
}

#[test]
fn oracle_g2() {
    check_group("G2");
}

#[test]
fn oracle_dihedral() {
    for m in 3..=8 {
        check_group(&format!("I2({m})"));
    }
}

#[test]
fn oracle_a3() {
    check_group("A3");
}
