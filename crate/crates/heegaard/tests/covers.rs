mod common;

use common::*;
use heegaard::build::random_from;
use heegaard::covers::{pullback, pushforward, is_positive};
use heegaard::presentation::{homology_of_matrix, intersection_stats};
use heegaard::*;
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

fn wound_product() -> Diagram {
    wind(&fixture("s1s2.hd")).unwrap().0
}

#[test]
fn cohomology_examples() {
    let b = cohomology_basis(&fixture("s1s2.hd")).unwrap();
    assert_eq!(b.len(), 1);
    assert_eq!(b[0].0[0].abs(), BigInt::from(1));
    assert!(cohomology_basis(&fixture("l31.hd")).unwrap().is_empty());

    let d = random_from(&[Handle::Product, Handle::Lens(2)], 1, 3, 5);
    let b = cohomology_basis(&d).unwrap();
    assert_eq!(b.len(), 1);
    let a = intersection_matrix(&d).unwrap();
    assert!(a.transpose().mul_vec(&b[0].0).iter().all(|x| x.is_zero()));
}

#[test]
fn double_cover_of_wound_product() {
    let w = wound_product();
    let c = cyclic_cover(&w, &CocycleClass::from_i64(&[1]), 2).unwrap();
    assert_eq!(c.report.cover_genus, 1);
    assert_eq!(c.report.lifted_point_count, 2);
    assert!(c.report.lifted_curve_counts.iter().all(|l| l.lifts == 2));
    assert!(c.report.base_admissible && c.report.cover_admissible && c.report.admissibility_preserved);
    assert!(c.diagram.validate().is_valid());
    assert_eq!(brute_positive_periodic(&c.diagram, 3), None);

    let r = reduce_to_pointed(&c.diagram).unwrap();
    assert!(r.validate().is_valid());
    assert_eq!((r.genus, r.alphas().len(), r.betas().len(), r.points.len()), (1, 1, 1, 1));
}

#[test]
fn cover_errors() {
    let w = wound_product();
    assert!(matches!(
        cyclic_cover(&w, &CocycleClass::from_i64(&[0]), 2),
        Err(Error::DisconnectedCover { generator: 2, sheets: 2 })
    ));
    assert!(matches!(cyclic_cover(&w, &CocycleClass::from_i64(&[1]), 1), Err(Error::Sheets(1))));
    assert!(matches!(cyclic_cover(&w, &CocycleClass::from_i64(&[1, 0]), 2), Err(Error::ClassLength { .. })));
    let l = fixture("l31.hd");
    assert!(matches!(cyclic_cover(&l, &CocycleClass::from_i64(&[1]), 3), Err(Error::NotCocycle { relator: 1 })));
    let two = random_from(&[Handle::Product], 2, 0, 0);
    assert!(matches!(cyclic_cover(&two, &CocycleClass::from_i64(&[1, 0]), 2), Err(Error::Points { .. })));
}

#[test]
fn reduce_is_identity_on_pointed() {
    let d = fixture("l31-l31.hd");
    assert_eq!(serialize(&reduce_to_pointed(&d).unwrap()), serialize(&d));
}

/// Covers over the Betti corpus, wound and unwound, for 2 and 3 sheets.
fn cover_corpus() -> Vec<(Diagram, CocycleClass, u64, Cover)> {
    let mut out = Vec::new();
    for d in betti_corpus(30) {
        let w = wind(&d).unwrap().0;
        for base in [d, w] {
            for c in cohomology_basis(&base).unwrap() {
                for m in [2u64, 3] {
                    match cyclic_cover(&base, &c, m) {
                        Ok(cv) => out.push((base.clone(), c.clone(), m, cv)),
                        Err(Error::DisconnectedCover { generator, sheets }) => {
                            let g = c.0.iter().fold(BigInt::from(m), |acc, x| num_integer::Integer::gcd(&acc, x));
                            assert_eq!(BigInt::from(generator), g);
                            assert_eq!(sheets, m);
                        }
                        Err(e) => panic!("{}", e),
                    }
                }
            }
        }
    }
    assert!(out.len() > 60);
    out
}

#[test]
fn cover_properties() {
    let mut checked_length = 0;
    for (base, _c, m, cv) in cover_corpus() {
        let d = &cv.diagram;
        let g = base.genus as u64;
        assert!(d.validate().is_valid());
        assert_eq!(d.genus as u64, m * g - m + 1);
        assert_eq!(cv.report.cover_genus as u64, m * g - m + 1);
        assert_eq!(d.points.len() as u64, m * base.points.len() as u64);
        assert!(cv.report.lifted_curve_counts.iter().all(|l| l.lifts as u64 == m));
        assert_eq!(d.curves.len() as u64, m * base.curves.len() as u64);

        // admissibility agrees between base and cover, checked afresh upstairs
        let base_adm = check_weak_admissibility(&base).unwrap().admissible;
        let cover_adm = check_weak_admissibility(d).unwrap().admissible;
        assert_eq!(base_adm, cover_adm);
        assert!(cv.report.admissibility_preserved);
        if d.curves.len() <= 6 {
            assert_eq!(brute_positive_periodic(d, 3).is_none(), cover_adm);
        }

        // pushforward of pullback is m times the identity on the lattice
        for p in periodic_domain_lattice(&base).unwrap() {
            let up = pullback(&cv, &p);
            assert!(is_periodic(d, &up.0.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>()));
            assert_eq!(pushforward(&cv, base.regions.len(), &up), p.scale(&BigInt::from(m)));
        }
        if let Some(wit) = check_weak_admissibility(&base).unwrap().witness {
            assert!(is_positive(&pullback(&cv, &wit)));
        }

        // generators upstairs stay below the product bound
        let gens = enumerate_generators(d, None).unwrap();
        assert!(gens.count <= gens.product_bound);

        // reduction
        let r = reduce_to_pointed(d).unwrap();
        assert!(r.validate().is_valid());
        assert_eq!(r.points.len(), 1);
        assert_eq!(r.genus, d.genus);
        let full = homology_of_matrix(&intersection_matrix(d).unwrap());
        let reduced = first_homology(&r).unwrap();
        assert_eq!(full.invariant_factors, reduced.invariant_factors);
        assert_eq!(full.betti_one, reduced.betti_one + d.points.len() - 1);

        let st = intersection_stats(&base);
        if st.k_per_alpha.iter().all(|&k| k >= 3) {
            let l = u_beta_presentation(&r).unwrap().length() as i64;
            let k = st.k as i64;
            assert!(l - 1 <= m as i64 * (k - 2 * g as i64 - 1), "L = {}, k = {}, m = {}", l, k, m);
            checked_length += 1;
        }
    }
    assert!(checked_length > 0);
}

#[test]
fn generator_product_bound_upstairs() {
    let w = wound_product();
    let k: u64 = intersection_stats(&w).k_per_alpha.iter().map(|&x| x as u64).product();
    let c = cyclic_cover(&w, &CocycleClass::from_i64(&[1]), 2).unwrap();
    let g = enumerate_generators(&c.diagram, None).unwrap();
    assert!(g.count <= BigUint::from(k).pow(2));
    assert!(!g.count.is_zero());
}
