use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::coxeter::{CoxeterDatum, GroupElement};

fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().copied())
}

fn el(d: &CoxeterDatum, word: &[u8]) -> GroupElement {
    d.normalize(word).unwrap()
}

fn h(d: &Arc<CoxeterDatum>, word: &[u8]) -> HeckeElement {
    HeckeElement::basis_element(d.clone(), Basis::Standard, el(d, word))
}

#[test]
fn quadratic_relation_and_unit() {
    let d = CoxeterDatum::from_type("A1").unwrap();
    let hs = h(&d, &[0]);
    let sq = hs.multiply_standard(&hs).unwrap();
    let expected = HeckeElement::from_terms(
        d.clone(),
        Basis::Standard,
        [(GroupElement::identity(), lp(&[(0, 1)])), (el(&d, &[0]), lp(&[(-1, 1), (1, -1)]))],
    );
    assert_eq!(sq, expected);
    assert_eq!(hs.multiply_standard(&h(&d, &[])).unwrap(), hs);
}

#[test]
fn standard_product_associative_a2() {
    let d = CoxeterDatum::from_type("A2").unwrap();
    let (a, b) = (h(&d, &[0]), h(&d, &[1]));
    let left = a.multiply_standard(&b).unwrap().multiply_standard(&a).unwrap();
    let right = a.multiply_standard(&b.multiply_standard(&a).unwrap()).unwrap();
    assert_eq!(left, right);
    assert_eq!(left, h(&d, &[0, 1, 0]));
}

#[test]
fn rank_one_kl_element() {
    let d = CoxeterDatum::from_type("A1").unwrap();
    let t = KlTable::new(d.clone());
    let bs = kl_element(&t, &el(&d, &[0])).unwrap();
    assert_eq!(bs.coeff(&GroupElement::identity()), LaurentPoly::v());
    assert_eq!(bs.coeff(&el(&d, &[0])), LaurentPoly::one());
    assert_eq!(t.kl_polynomial(&GroupElement::identity(), &el(&d, &[0])).unwrap(), LaurentPoly::one());
    assert_eq!(t.mu(&GroupElement::identity(), &el(&d, &[0])).unwrap(), 1);
    let sc = structure_constants(&t, &el(&d, &[0]), &el(&d, &[0])).unwrap();
    assert_eq!(sc.len(), 1);
    assert_eq!(sc[&el(&d, &[0])], lp(&[(-1, 1), (1, 1)]));
}

#[test]
fn dihedral_kl_polynomials_are_trivial() {
    for ty in ["A1xA1", "A2", "B2", "G2"] {
        let d = CoxeterDatum::from_type(ty).unwrap();
        let t = KlTable::new(d.clone());
        for w in d.enumerate().unwrap() {
            for x in d.enumerate().unwrap() {
                let hx = t.h(&x, &w).unwrap();
                if d.bruhat_leq(&x, &w).unwrap() {
                    assert_eq!(hx, LaurentPoly::monomial(1, (w.length() - x.length()) as i32), "{ty} {x} {w}");
                } else {
                    assert!(hx.is_zero());
                }
            }
        }
    }
}

#[test]
fn first_nontrivial_polynomial_a3() {
    let d = CoxeterDatum::from_type("A3").unwrap();
    let t = KlTable::new(d.clone());
    let p = t.kl_polynomial(&el(&d, &[1]), &el(&d, &[1, 0, 2, 1])).unwrap();
    assert_eq!(p, lp(&[(0, 1), (1, 1)]));
    assert_eq!(p.render("q"), "1+q");
}

#[test]
fn kl_elements_are_bar_invariant() {
    for ty in ["A3", "B3", "G2"] {
        let d = CoxeterDatum::from_type(ty).unwrap();
        let t = KlTable::new(d.clone());
        for w in d.enumerate().unwrap() {
            let b = kl_element(&t, &w).unwrap();
            assert_eq!(b.bar().unwrap(), b, "{ty} {w}");
            assert!(b.terms().values().all(|p| p.has_nonnegative_coefficients()));
        }
    }
}

#[test]
fn a2_structure_constant_example() {
    let d = CoxeterDatum::from_type("A2").unwrap();
    let t = KlTable::new(d.clone());
    let sc = structure_constants(&t, &el(&d, &[0]), &el(&d, &[1, 0])).unwrap();
    let mut expected = std::collections::BTreeMap::new();
    expected.insert(el(&d, &[0, 1, 0]), LaurentPoly::one());
    expected.insert(el(&d, &[0]), LaurentPoly::one());
    assert_eq!(sc, expected);
    let e = GroupElement::identity();
    for y in d.enumerate().unwrap() {
        let sc = structure_constants(&t, &e, &y).unwrap();
        assert_eq!(sc.len(), 1);
        assert!(sc[&y].is_one());
    }
}

#[test]
fn indexed_structure_table_matches_standard_route() {
    for ty in ["A2", "B2", "A3"] {
        let d = CoxeterDatum::from_type(ty).unwrap();
        let t = KlTable::new(d.clone());
        let st = StructureTable::compute(t.full_group().unwrap()).unwrap();
        let u = st.universe().clone();
        for x in 0..u.len() {
            for y in 0..u.len() {
                let direct = structure_constants(&t, u.element(x), u.element(y)).unwrap();
                let indexed: std::collections::BTreeMap<GroupElement, LaurentPoly> = st
                    .product(x, y)
                    .iter()
                    .map(|(z, p)| (u.element(*z as usize).clone(), p.clone()))
                    .collect();
                assert_eq!(direct, indexed, "{ty} {} {}", u.element(x), u.element(y));
            }
        }
    }
}

#[test]
fn infinite_datum_uses_intervals() {
    // affine A2 shares KL data with its finite parabolic on [e, s1 s2 s1]
    let d = CoxeterDatum::from_matrix(vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]]).unwrap();
    assert!(!d.is_finite());
    let t = KlTable::new(d.clone());
    let w = el(&d, &[0, 1, 0]);
    assert_eq!(t.h(&GroupElement::identity(), &w).unwrap(), LaurentPoly::monomial(1, 3));
    let w = el(&d, &[0, 1, 2, 0]);
    let b = kl_element(&t, &w).unwrap();
    assert_eq!(b.bar().unwrap(), b);
}

#[test]
fn decompose_round_trip() {
    let d = CoxeterDatum::from_type("B2").unwrap();
    let t = KlTable::new(d.clone());
    let x = h(&d, &[0, 1]).add(&h(&d, &[1]).scale(&lp(&[(2, 3)]))).unwrap();
    let k = x.decompose_kl(&t).unwrap();
    assert_eq!(k.to_standard(&t).unwrap(), x);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn standard_product_associative_b3(a in proptest::collection::vec(0u8..3, 0..6),
                                       b in proptest::collection::vec(0u8..3, 0..6),
                                       c in proptest::collection::vec(0u8..3, 0..6)) {
        let d = CoxeterDatum::from_type("B3").unwrap();
        let (x, y, z) = (h(&d, &a), h(&d, &b), h(&d, &c));
        let l = x.multiply_standard(&y).unwrap().multiply_standard(&z).unwrap();
        let r = x.multiply_standard(&y.multiply_standard(&z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }
}

mod extended {
    use super::*;
    use crate::coxeter::DiagramAutomorphism;
    use crate::group::FiniteGroup;

    fn swap_datum() -> (Arc<ExtendedHeckeDatum>, KlTable) {
        let d = CoxeterDatum::from_type("A1xA1").unwrap();
        let ed = ExtendedHeckeDatum::parse(d.clone(), "Z2:2,1").unwrap();
        (ed, KlTable::new(d))
    }

    #[test]
    fn swap_square() {
        let (ed, t) = swap_datum();
        let d = ed.datum().clone();
        let sigma = 1;
        let a = ExtendedHeckeElement::basis_element(Basis::Kl, el(&d, &[0]), sigma);
        let p = extended_multiply(&ed, &t, &a, &a).unwrap();
        assert_eq!(p, ExtendedHeckeElement::basis_element(Basis::Kl, el(&d, &[0, 1]), 0));
    }

    #[test]
    fn associative_and_unital_on_swap_datum() {
        let (ed, t) = swap_datum();
        let d = ed.datum().clone();
        let mut basis = Vec::new();
        for w in d.enumerate().unwrap() {
            for x in 0..2 {
                basis.push(ExtendedHeckeElement::basis_element(Basis::Kl, w.clone(), x));
            }
        }
        let one = ExtendedHeckeElement::basis_element(Basis::Kl, GroupElement::identity(), 0);
        for a in &basis {
            assert_eq!(&extended_multiply(&ed, &t, &one, a).unwrap(), a);
            assert_eq!(&extended_multiply(&ed, &t, a, &one).unwrap(), a);
            for b in &basis {
                let ab = extended_multiply(&ed, &t, a, b).unwrap();
                for c in &basis {
                    let l = extended_multiply(&ed, &t, &ab, c).unwrap();
                    let r = extended_multiply(&ed, &t, a, &extended_multiply(&ed, &t, b, c).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn trivial_coxeter_part_is_group_algebra() {
        let d = CoxeterDatum::from_type("trivial").unwrap();
        let omega = FiniteGroup::symmetric(3);
        let images = vec![DiagramAutomorphism::identity(0); omega.generators().len()];
        let ed = ExtendedHeckeDatum::new(d.clone(), omega.clone(), images).unwrap();
        let t = KlTable::new(d);
        for x in 0..6 {
            for y in 0..6 {
                let a = ExtendedHeckeElement::basis_element(Basis::Standard, GroupElement::identity(), x);
                let b = ExtendedHeckeElement::basis_element(Basis::Standard, GroupElement::identity(), y);
                let p = extended_multiply(&ed, &t, &a, &b).unwrap();
                assert_eq!(
                    p,
                    ExtendedHeckeElement::basis_element(Basis::Standard, GroupElement::identity(), omega.mul(x, y))
                );
            }
        }
    }

    #[test]
    fn identity_omega_gives_plain_product() {
        let d = CoxeterDatum::from_type("A2").unwrap();
        let ed = ExtendedHeckeDatum::plain(d.clone());
        let t = KlTable::new(d.clone());
        let a = ExtendedHeckeElement::basis_element(Basis::Kl, el(&d, &[0]), 0);
        let b = ExtendedHeckeElement::basis_element(Basis::Kl, el(&d, &[1, 0]), 0);
        let p = extended_multiply(&ed, &t, &a, &b).unwrap();
        let sc = structure_constants(&t, &el(&d, &[0]), &el(&d, &[1, 0])).unwrap();
        assert_eq!(p.terms().len(), sc.len());
        for (z, c) in sc {
            assert_eq!(p.coeff(&z, 0), c);
        }
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let d = CoxeterDatum::from_type("A2").unwrap();
        // a swap cannot be the image of a generator of Z/3
        assert!(ExtendedHeckeDatum::parse(d, "Z3:2,1").is_err());
    }
}
