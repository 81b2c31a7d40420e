use std::sync::Arc;

use super::*;

fn s4() -> Arc<FiniteGroup> {
    FiniteGroup::from_cycles(4, &["(12)", "(1234)"]).unwrap()
}

fn s5() -> Arc<FiniteGroup> {
    FiniteGroup::from_cycles(5, &["(12)", "(12345)"]).unwrap()
}

fn klein() -> Arc<FiniteGroup> {
    FiniteGroup::from_cycles(4, &["(12)(34)", "(13)(24)"]).unwrap()
}

#[test]
fn enumeration() {
    assert_eq!(s4().order(), 24);
    assert_eq!(s5().order(), 120);
    let k = klein();
    assert_eq!(k.order(), 4);
    assert!((0..4).all(|a| (0..4).all(|b| k.commute(a, b))));
    assert!(k.element(0).is_identity());
    assert_eq!(s5().num_classes(), 7);
    assert_eq!(FiniteGroup::trivial().order(), 1);
}

#[test]
fn cycle_parsing() {
    let p = Perm::parse_cycles("(1,2,3)(4,5)", 5).unwrap();
    assert_eq!(p.to_string(), "(123)(45)");
    assert_eq!(p.apply(0), 1);
    assert!(Perm::parse_cycles("(1,1)", 3).is_err());
    assert!(Perm::parse_cycles("(14)", 3).is_err());
}

#[test]
fn subgroup_class_counts() {
    assert_eq!(subgroup_classes(&s4()).unwrap().len(), 11);
    assert_eq!(subgroup_classes(&s5()).unwrap().len(), 19);
    assert_eq!(subgroup_classes(&FiniteGroup::cyclic(6)).unwrap().len(), 4);
    let total: usize = subgroup_classes(&s4()).unwrap().iter().map(|c| c.class_size).sum();
    assert_eq!(total, 30);
}

#[test]
fn character_degrees() {
    let deg = |g: &FiniteGroup| {
        let mut d = character_table(g).unwrap().degrees();
        d.sort();
        d
    };
    assert_eq!(deg(&FiniteGroup::symmetric(3)), vec![1, 1, 2]);
    assert_eq!(deg(&s5()), vec![1, 1, 4, 4, 5, 5, 6]);
    let q8 = FiniteGroup::from_cycles(8, &["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"]).unwrap();
    assert_eq!(q8.order(), 8);
    assert_eq!(deg(&q8), vec![1, 1, 1, 1, 2]);
    let z5 = FiniteGroup::cyclic(5);
    let t = character_table(&z5).unwrap();
    assert_eq!(t.num_irreps(), 5);
    assert_eq!(deg(&FiniteGroup::trivial()), vec![1]);
}

#[test]
fn h2_small_groups() {
    for n in [2usize, 3, 4, 6] {
        assert_eq!(h2_classes(&FiniteGroup::cyclic(n), n as u32).unwrap().len(), 1);
    }
    assert_eq!(h2_classes(&klein(), 2).unwrap().len(), 2);
    let s3 = FiniteGroup::symmetric(3);
    for c in subgroup_classes(&s3).unwrap() {
        assert_eq!(h2_classes(&c.representative, 6).unwrap().len(), 1);
    }
    assert_eq!(h2_classes(&FiniteGroup::trivial(), 2).unwrap().len(), 1);
    // (Z/4)^2 needs modulus 4
    let z4z4 = FiniteGroup::from_cycles(8, &["(1,2,3,4)", "(5,6,7,8)"]).unwrap();
    assert!(matches!(h2_classes(&z4z4, 2), Err(crate::Error::ModulusTooSmall { .. })));
    assert_eq!(h2_classes(&z4z4, 4).unwrap().len(), 4);
    // Z/2 x Z/2 x Z/2 has multiplier (Z/2)^3
    let z2cubed = FiniteGroup::from_cycles(6, &["(12)", "(34)", "(56)"]).unwrap();
    assert_eq!(h2_classes(&z2cubed, 2).unwrap().len(), 8);
}

#[test]
fn projective_counts() {
    let k = klein();
    let h2 = h2_classes(&k, 2).unwrap();
    assert_eq!(projective_irrep_count_checked(&h2.classes()[0]).unwrap(), 4);
    assert_eq!(projective_irrep_count_checked(&h2.classes()[1]).unwrap(), 1);
    let s4 = s4();
    let h2 = h2_classes(&s4, 2).unwrap();
    assert_eq!(h2.len(), 2);
    assert_eq!(projective_irrep_count_checked(&h2.classes()[1]).unwrap(), 3);
    let ext = central_extension_from_cocycle(&h2.classes()[1]).unwrap();
    assert_eq!(ext.total().order(), 48);
    assert_eq!(irrep_count_with_central_character(&ext, 1).unwrap(), 3);
    assert_eq!(irrep_count_with_central_character(&ext, 0).unwrap(), 5);
}

#[test]
fn klein_extension() {
    let k = klein();
    let h2 = h2_classes(&k, 2).unwrap();
    let triv = central_extension_from_cocycle(&h2.classes()[0]).unwrap();
    assert_eq!(irrep_count_with_central_character(&triv, 0).unwrap(), 4);
    let ext = central_extension_from_cocycle(&h2.classes()[1]).unwrap();
    assert_eq!(ext.total().order(), 8);
    assert_eq!(irrep_count_with_central_character(&ext, 1).unwrap(), 1);
    let t = character_table(ext.total()).unwrap();
    assert_eq!(t.num_irreps(), 5);
}

#[test]
fn cocycle_calculus() {
    let g = s4();
    let k = klein();
    let h2 = h2_classes(&k, 2).unwrap();
    let psi = h2.classes()[1].clone();
    let sum = psi.baer_sum(&psi.invert()).unwrap();
    assert_eq!(h2.class_index(&sum).unwrap(), 0);
    assert!(TwoCocycle::trivial(k.clone(), 2).restrict(&FiniteGroup::from_cycles(4, &["(12)(34)"]).unwrap()).unwrap().is_trivial_cochain());
    // Klein is normal in S4; conjugation by any element keeps the class
    for x in 0..g.order() {
        let c = psi.conjugate(g.element(x)).unwrap();
        let c = c.transport(&k, |p| p.clone()).unwrap();
        assert_eq!(h2.class_index(&c).unwrap(), 1);
    }
    assert!(psi.baer_sum(&psi.rescale(4).unwrap()).is_err());
    let r = psi.rescale(4).unwrap();
    assert!(r.is_cocycle());
    assert!(h2.class_index(&r).is_err());
}

#[test]
fn s5_multiplier() {
    let g = s5();
    let h2 = h2_classes(&g, 2).unwrap();
    assert_eq!(h2.len(), 2);
    assert_eq!(projective_irrep_count(&h2.classes()[1]), 5);
    assert_eq!(projective_irrep_count(&h2.classes()[0]), 7);
}
