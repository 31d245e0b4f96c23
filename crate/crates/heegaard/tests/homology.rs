mod common;

use common::*;
use heegaard::matrix::smith_normal_form;
use heegaard::presentation::{abelianize, short_curve_report, ShortCase};
use heegaard::*;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

#[test]
fn fixture_presentations() {
    let p = u_beta_presentation(&fixture("s3.hd")).unwrap();
    assert_eq!(p.to_string(), "< u1 | u1 >");
    assert_eq!(p.length(), 0);
    let p = u_beta_presentation(&fixture("l31.hd")).unwrap();
    assert_eq!(p.to_string(), "< u1 | u1^3 >");
    assert_eq!(p.length(), 1);
    let p = u_beta_presentation(&fixture("s1s2.hd")).unwrap();
    assert_eq!(p.relators[0].len(), 0);
    assert_eq!(p.length(), 0);
    assert_eq!(u_beta_presentation(&fixture("p3.hd")).unwrap().length(), 0);
}

#[test]
fn fixture_homology() {
    let h = first_homology(&fixture("l31.hd")).unwrap();
    assert_eq!((h.invariant_factors.clone(), h.betti_one), (vec![BigInt::from(3)], 0));
    let h = first_homology(&fixture("s1s2.hd")).unwrap();
    assert_eq!((h.invariant_factors.len(), h.betti_one), (0, 1));
    let h = first_homology(&fixture("s3.hd")).unwrap();
    assert_eq!((h.invariant_factors.len(), h.betti_one), (0, 0));
    let h = first_homology(&fixture("l31-l31.hd")).unwrap();
    assert_eq!(h.to_string(), "Z/3 + Z/3");
}

#[test]
fn fixture_matrices() {
    let a = intersection_matrix(&fixture("l31.hd")).unwrap();
    assert_eq!(a[(0, 0)].abs(), BigInt::from(3));
    assert!(intersection_matrix(&fixture("s1s2.hd")).unwrap().is_zero());
}

#[test]
fn short_curves() {
    assert!(short_curve_report(&fixture("l31.hd")).unwrap().is_empty());
    let r = short_curve_report(&fixture("s1s2.hd")).unwrap();
    assert_eq!(r.len(), 2);
    assert!(r.iter().all(|c| c.intersections == 0 && c.case == ShortCase::Disjoint));
    let r = short_curve_report(&fixture("s3.hd")).unwrap();
    assert_eq!(r.len(), 2);
    assert!(r
        .iter()
        .all(|c| matches!(c.case, ShortCase::SingleCrossing { destabilization_candidate: true, .. })));
    let r = short_curve_report(&fixture("p3.hd")).unwrap();
    assert!(r.iter().all(|c| matches!(c.case, ShortCase::TwoOnOneCurve { .. })));
}

fn check_snf(a: &IntegerMatrix) {
    let s = smith_normal_form(a);
    assert_eq!(s.u.mul(a).mul(&s.v), s.d);
    assert!(s.u.det().abs().is_one() && s.v.det().abs().is_one());
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j {
                assert!(s.d[(i, j)].is_zero());
            }
        }
    }
    let diag = s.diagonal();
    for w in diag.windows(2) {
        if w[0].is_zero() {
            assert!(w[1].is_zero());
        } else {
            assert!((&w[1] % &w[0]).is_zero(), "{} does not divide {}", w[0], w[1]);
        }
    }
}

#[test]
fn snf_examples() {
    let d = smith_normal_form(&IntegerMatrix::from_rows(&[vec![3]])).diagonal();
    assert_eq!(d, vec![BigInt::from(3)]);
    let d = smith_normal_form(&IntegerMatrix::from_rows(&[vec![0]])).diagonal();
    assert_eq!(d, vec![BigInt::zero()]);
    let a = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
    let d: Vec<BigInt> = smith_normal_form(&a).diagonal().iter().map(|x| x.abs()).collect();
    assert_eq!(d, vec![BigInt::from(1), BigInt::from(6)]);
    check_snf(&a);
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_certificate(m in matrix_strategy()) {
        check_snf(&IntegerMatrix::from_rows(&m));
    }

    #[test]
    fn snf_product_of_factors_is_determinant(m in (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-5i64..=5, n), n))) {
        let s = smith_normal_form(&IntegerMatrix::from_rows(&m));
        let prod: BigInt = s.diagonal().iter().product();
        prop_assert_eq!(prod.abs(), BigInt::from(naive_det(&m).abs()));
    }

    #[test]
    fn presentation_length_formula(d in diagram_strategy(3, 1, 6)) {
        let p = u_beta_presentation(&d).unwrap();
        let k = d.intersection_counts();
        let ks: Vec<usize> = d.alphas().iter().map(|c| k[c.0]).collect();
        for (w, &kj) in p.relators.iter().zip(&ks) {
            prop_assert_eq!(w.len(), kj);
        }
        let expect: usize = ks.iter().map(|&x| x.saturating_sub(2)).sum();
        prop_assert_eq!(p.length(), expect);
        if ks.iter().all(|&x| x >= 2) {
            prop_assert_eq!(p.length(), d.vertices.len() - 2 * d.genus as usize);
        }
    }

    #[test]
    fn matrix_columns_abelianize_relators(d in diagram_strategy(3, 1, 6)) {
        let p = u_beta_presentation(&d).unwrap();
        let a = intersection_matrix(&d).unwrap();
        prop_assert!(a.abs_sum() <= BigInt::from(d.vertices.len()));
        for (j, w) in p.relators.iter().enumerate() {
            prop_assert_eq!(abelianize(w, a.rows()), a.col(j));
        }
    }

    #[test]
    fn betti_matches_lattice_rank(d in diagram_strategy(3, 1, 5)) {
        let h = first_homology(&d).unwrap();
        prop_assert_eq!(periodic_domain_lattice(&d).unwrap().len(), h.betti_one);
        prop_assert_eq!(h.betti_one, d.genus as usize - intersection_matrix(&d).unwrap().rank());
    }

    #[test]
    fn homology_survives_extra_points(d in diagram_strategy(3, 3, 4)) {
        let r = reduce_to_pointed(&d).unwrap();
        prop_assert_eq!(first_homology(&d).unwrap(), first_homology(&r).unwrap());
    }
}
