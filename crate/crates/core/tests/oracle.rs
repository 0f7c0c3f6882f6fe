//! The brute-force oracle on its own, and as an independent witness for
//! the golden structure constants.

mod common;

use common::*;
use tmotive::anderson::{presentation_from_tmodule, Side, TModuleData};
use tmotive::freemod::{ModElem, OrderSpec};
use tmotive::janet::{janet_algorithm, normal_form, DEFAULT_MAX_ROUNDS};
use tmotive::oracle::{truncated_submodule, verify_janet, DegreeBox};
use tmotive::skew::TwistPair;

#[test]
fn unit_sheet_spans_the_box() {
    let f = f3();
    let k1 = ModElem::basis(&f, TwistPair::TAU_T, 1, 0);
    let span = truncated_submodule(&[k1], DegreeBox::new(1, 1), &OrderSpec::identity(1)).unwrap();
    assert_eq!(span.dim(), 4);
}

#[test]
fn running_example_membership() {
    let f = f3();
    let g = running(&f);
    let span = truncated_submodule(&g, DegreeBox::new(3, 4), &OrderSpec::identity(2)).unwrap();
    assert!(span.contains(&g[1].shift_left(2, 0)));
}

#[test]
fn quotient_dimension_is_monotone_and_matches_the_staircase() {
    let f = f3();
    let cases = [
        (running(&f), OrderSpec::identity(2)),
        (presentation_from_tmodule(&TModuleData::carlitz_power(&f, 2).unwrap(), Side::Motive).0, OrderSpec::identity(2)),
        (presentation_from_tmodule(&special(&f), Side::Motive).0, OrderSpec::from_one_based(&[2, 1]).unwrap()),
    ];
    for (gens, ord) in cases {
        let j = janet_algorithm(&gens, &ord, DEFAULT_MAX_ROUNDS).unwrap();
        let mut last = 0;
        for k in 0..=3 {
            let v = verify_janet(&j, &gens, DegreeBox::new(k, 4)).unwrap();
            assert!(v.quotient_dim >= last, "quotient shrank at ({k}, 4)");
            assert!(v.disjoint && v.coverage && v.staircase, "{:?}", v.failures);
            assert_eq!(v.quotient_dim, v.staircase_count);
            last = v.quotient_dim;
        }
        for j_max in 4..=6 {
            let v = verify_janet(&j, &gens, DegreeBox::new(3, j_max)).unwrap();
            assert!(v.quotient_dim >= last);
            last = v.quotient_dim;
        }
    }
}

/// `x` lies in the truncated span, and `wrong` neither there nor in the
/// submodule.
fn confirm(gens: &[ModElem], ord: &OrderSpec, bx: DegreeBox, x: &ModElem, wrong: &ModElem) {
    let span = truncated_submodule(gens, bx, ord).unwrap();
    assert!(span.contains(x), "{x} is not in the span at ({}, {})", bx.k_max, bx.j_max);
    assert!(!span.contains(wrong));
    let j = janet_algorithm(gens, ord, DEFAULT_MAX_ROUNDS).unwrap();
    assert!(normal_form(x, &j).is_zero());
    assert!(!normal_form(wrong, &j).is_zero());
}

// tau^2 k1 = c k1 with c = (t^2 - T)^2, not (t^2 - T)(t^2 - T^3).
#[test]
fn running_example_action_constant() {
    let f = f3();
    let tw = TwistPair::TAU_T;
    let right = elem(&f, tw, &["tau^2 - (t^2 - T)^2", "0"]);
    let wrong = elem(&f, tw, &["tau^2 - (t^2 - T)*(t^2 - T^3)", "0"]);
    confirm(&running(&f), &OrderSpec::identity(2), DegreeBox::new(3, 6), &right, &wrong);
}

// tau e1 with e1 = tau k2, e2 = k2, e3 = k1: the e1 coefficient is -(t - T^3).
#[test]
fn special_motive_first_row() {
    let f = f3();
    let tw = TwistPair::TAU_T;
    let (gens, _) = presentation_from_tmodule(&special(&f), Side::Motive);
    let ord = OrderSpec::from_one_based(&[2, 1]).unwrap();
    let right = elem(&f, tw, &["-(t - T - 1)", "tau^2 - (-t + T^3)*tau - (t - T)"]);
    let wrong = elem(&f, tw, &["-(t - T - 1)", "tau^2 - (t - T^3)*tau - (t - T)"]);
    confirm(&gens, &ord, DegreeBox::new(4, 4), &right, &wrong);
}

// sigma e1 with e1 = sigma k1, e2 = k1, e3 = k2.
#[test]
fn special_comotive_first_row() {
    let f = f3();
    let tw = TwistPair::SIGMA_T;
    let (gens, _) = presentation_from_tmodule(&special(&f), Side::Comotive);
    let ord = OrderSpec::identity(2);
    let right = elem(&f, tw, &["sigma^2 - (-t + T^(1/3))*sigma - (t - T)", "-(t - T - 1)"]);
    let wrong = elem(&f, tw, &["sigma^2 - (t - T^(1/3))*sigma - (t - T)", "-(t - T - 1)"]);
    confirm(&gens, &ord, DegreeBox::new(4, 4), &right, &wrong);
}
