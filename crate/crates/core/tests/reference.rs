//! Constructed designs against the printed matrices in tests/fixtures/reference.

mod common;

use common::*;
use odesign::square::base;
use odesign::*;

fn rh(n: usize) -> DesignMatrix {
    build_rh(n, Family::R).unwrap().matrix
}

#[test]
fn square_rods_match_print() {
    assert!(diff(&build_square(16, Family::R).unwrap(), "r16").is_empty());
    assert!(diff(&build_square(32, Family::R).unwrap(), "r32").is_empty());
    assert!(diff(&build_square(32, Family::Gp).unwrap(), "gp32").is_empty());
}

#[test]
fn small_bases_match_print() {
    for (t, name) in [(2, "k2"), (4, "k4"), (8, "k8")] {
        assert!(diff(&base::k(t).unwrap(), name).is_empty(), "{name}");
    }
    let l4 = DesignMatrix::from_rows(Kind::Real, base::l4()).unwrap();
    let r4 = DesignMatrix::from_rows(Kind::Real, base::r4()).unwrap();
    assert!(diff(&l4, "l4").is_empty());
    assert!(diff(&r4, "r4").is_empty());
}

#[test]
fn w9_matches_print() {
    let w = build_rate1_for(9, Rate1Variant::W, Family::R).unwrap();
    assert!(diff(&w.matrix, "w9").is_empty());
}

#[test]
fn w9_hat_differs_by_three_negated_columns() {
    let w = build_rate1_for(9, Rate1Variant::WHat, Family::R).unwrap().matrix;
    let d = diff(&w, "w9_hat");
    assert_eq!(d.len(), 16 * W9_HAT_NEGATED_COLUMNS.len());
    for c in &d {
        assert!(W9_HAT_NEGATED_COLUMNS.contains(&c.col));
        assert_eq!(c.left.negate(), c.right);
    }
    // the printed matrix is itself a valid ROD
    let p = DesignMatrix::from_rows(Kind::Real, printed("w9_hat")).unwrap();
    assert!(verify(&p).ok);
}

#[test]
fn rh9_matches_print_up_to_one_typo() {
    assert_eq!(cells(&diff(&rh(9), "rh9")), owned(&RH9_TYPOS));
    // the printed cell repeats x7 in column 6
    assert!(DesignMatrix::from_rows(Kind::Complex, printed("rh9")).is_err());
}

#[test]
fn rh10_matches_print_up_to_five_typos() {
    assert_eq!(cells(&diff(&rh(10), "rh10")), owned(&RH10_TYPOS));
    assert!(DesignMatrix::from_rows(Kind::Complex, printed("rh10")).is_err());
}

#[test]
fn rh8_and_blocks_match_print() {
    assert!(diff(&rh(8), "cod8_example").is_empty());
    assert!(diff(&CodBlocks::a_design(), "cod_a").is_empty());
    let b = DesignMatrix::from_rows(Kind::Complex, CodBlocks::b(4)).unwrap();
    assert!(diff(&b, "cod_b").is_empty());
}

#[test]
fn zero_free_rh9_matches_print() {
    let z = post_multiply(&build_rh(9, Family::R).unwrap(), &PostMultiplier::q(9).unwrap()).unwrap();
    assert!(diff(&z.matrix, "rh9_q9").is_empty());
    assert_eq!(z.matrix.zero_count(), 0);
}

#[test]
fn tjc9_differs_in_row_zero_and_x0_diagonal() {
    let t = build_tjc(9, Family::R).unwrap().matrix;
    let d = diff(&t, "tjc9");
    assert_eq!(d.len(), 32);
    for c in &d {
        let r = c.row % 16;
        assert!((r == 0 && c.col >= 1) || (r == c.col && r >= 1), "({}, {})", c.row, c.col);
        assert_eq!(c.left.negate(), c.right);
    }
    // both forms are scaled CODs
    assert!(verify(&t).ok);
    let p = DesignMatrix::from_rows(Kind::Complex, printed("tjc9")).unwrap();
    assert!(verify(&p).ok);
}

#[test]
fn four_by_four_example_verifies() {
    let m = DesignMatrix::from_rows(Kind::Real, printed("m4")).unwrap();
    assert!(verify(&m).ok);
    assert!(check_rod_structure(&m).unwrap().ok());
}

#[test]
fn gp16_and_alp_o16_equal_r16() {
    let r16 = build_square(16, Family::R).unwrap();
    for f in [Family::Gp, Family::AlpO] {
        assert!(compare_designs(&r16, &build_square(16, f).unwrap()).unwrap().is_equal(), "{f}");
    }
    assert!(!compare_designs(&build_square(32, Family::R).unwrap(), &build_square(32, Family::Gp).unwrap())
        .unwrap()
        .is_equal());
}
