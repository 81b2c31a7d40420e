use std::sync::Arc;

use super::*;
use crate::based_ring::based_ring_iso;
use crate::group::{find_class, subgroup_classes, FiniteGroup};

fn sub(g: &Arc<FiniteGroup>, gens: &[&str]) -> Arc<FiniteGroup> {
    let idx: Vec<u32> = gens
        .iter()
        .map(|c| g.index_of(&crate::group::Perm::parse_cycles(c, g.degree()).unwrap()).unwrap() as u32)
        .collect();
    g.subgroup(&g.closure(&idx))
}

fn nontrivial(h: &Arc<FiniteGroup>) -> ModuleCategory {
    let classes = h2_auto(h).unwrap();
    assert_eq!(classes.len(), 2);
    ModuleCategory::new(h.clone(), classes.classes()[1].reduced()).unwrap()
}

#[test]
fn rep_rings() {
    let s3 = FiniteGroup::symmetric(3);
    let r = rep_ring(&s3).unwrap();
    assert_eq!(r.rank(), 3);
    let dims = r.fpdim();
    assert!((dims.total() - 6.0).abs() < 1e-9);
    let two = (0..3).find(|&i| (dims.dims[i] - 2.0).abs() < 1e-9).unwrap();
    assert_eq!(r.product(two, two).iter().map(|(_, c)| c).sum::<u64>(), 3);
    assert_eq!(r.product(two, two).len(), 3);
    let s4 = FiniteGroup::symmetric(4);
    let subs = rep_ring(&s4).unwrap().based_subrings().unwrap();
    let proper: Vec<f64> = subs.iter().filter(|(s, _)| s.len() > 1 && s.len() < 5).map(|(_, d)| *d).collect();
    assert_eq!(proper.len(), 2);
    assert!((proper[0] - 2.0).abs() < 1e-9 && (proper[1] - 6.0).abs() < 1e-9);
}

#[test]
fn convolution_examples() {
    let s3 = FiniteGroup::symmetric(3);
    let free = GSet::new(s3.clone(), vec![FiniteGroup::trivial_on(3)]).unwrap();
    let r = convolution_ring(&free).unwrap();
    assert_eq!(r.rank(), 6);
    assert!(r.fpdim().dims.iter().all(|d| (d - 1.0).abs() < 1e-9));
    let y = GSet::new(s3.clone(), vec![sub(&s3, &["(1,2)"])]).unwrap();
    let r = convolution_ring(&y).unwrap();
    assert_eq!(r.rank(), 3);
    assert_eq!(r.unit_components().len(), 1);
    let mut d = r.fpdim().dims;
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert!((d[0] - 1.0).abs() < 1e-9 && (d[1] - 1.0).abs() < 1e-9 && (d[2] - 2.0).abs() < 1e-9);
    let two = GSet::new(s3.clone(), vec![sub(&s3, &["(1,2)"]), s3.clone()]).unwrap();
    assert_eq!(convolution_ring(&two).unwrap().unit_components().len(), 2);
}

#[test]
fn fun_counts_small() {
    let s4 = FiniteGroup::symmetric(4);
    let s3 = ModuleCategory::untwisted(sub(&s4, &["(1,2)", "(1,2,3)"]));
    assert_eq!(fun_count(&s4, &s3, &s3).unwrap(), 5);
    let e = ModuleCategory::untwisted(FiniteGroup::trivial_on(4));
    assert_eq!(fun_count(&s4, &e, &e).unwrap(), 24);
    assert_eq!(fun_count_fixed_points(&s4, &e, &e).unwrap(), 24);
    let kl = nontrivial(&sub(&s4, &["(1,2)(3,4)", "(1,3)(2,4)"]));
    assert_eq!(kl.num_simples(), 1);
    assert_eq!(fun_count(&s4, &kl, &kl).unwrap(), 24);
    assert_eq!(fun_count_fixed_points(&s4, &kl, &kl).unwrap(), 24);
    // Fun(M1, M2) is symmetric
    assert_eq!(fun_count(&s4, &s3, &kl).unwrap(), fun_count(&s4, &kl, &s3).unwrap());
}

#[test]
fn fun_rings_against_convolution() {
    let s4 = FiniteGroup::symmetric(4);
    let h = sub(&s4, &["(1,2)", "(1,2,3)"]);
    let by_bimodules = fun_ring(&s4, &ModuleCategory::untwisted(h.clone())).unwrap();
    let by_groupoid = convolution_ring(&GSet::new(s4.clone(), vec![h]).unwrap()).unwrap();
    assert!(based_ring_iso(&by_bimodules, &by_groupoid).unwrap().is_some());
    assert!(based_ring_iso(&by_groupoid, &rep_ring(&s4).unwrap()).unwrap().is_some());
    let kl = nontrivial(&sub(&s4, &["(1,2)(3,4)", "(1,3)(2,4)"]));
    let r = fun_ring(&s4, &kl).unwrap();
    assert_eq!(r.rank(), 24);
    assert!((r.fpdim().total() - 24.0).abs() < 1e-8);
    let d8 = nontrivial(&sub(&s4, &["(1,2,3,4)", "(1,3)"]));
    let r = fun_ring(&s4, &d8).unwrap();
    assert_eq!(r.rank(), 9);
    assert!((r.fpdim().total() - 24.0).abs() < 1e-8);
}

#[test]
fn count_simples_examples() {
    let s4 = FiniteGroup::symmetric(4);
    let x = CExtGSet { group: s4.clone(), orbits: vec![ModuleCategory::untwisted(s4.clone())] };
    assert_eq!(count_simples(&x).unwrap().0, 5);
    let x = CExtGSet { group: s4.clone(), orbits: vec![ModuleCategory::untwisted(FiniteGroup::trivial_on(4))] };
    assert_eq!(count_simples(&x).unwrap().0, 1);
}

#[test]
fn drinfeld_doubles() {
    let z2 = FiniteGroup::cyclic(2);
    let f = drinfeld_double(&z2).unwrap();
    assert_eq!(f.len(), 4);
    for row in &f.entries {
        for c in row {
            assert!((c.norm() - 0.5).abs() < 1e-12);
        }
    }
    assert_eq!(drinfeld_double(&FiniteGroup::symmetric(3)).unwrap().len(), 8);
    let f = drinfeld_double(&FiniteGroup::symmetric(4)).unwrap();
    assert_eq!(f.len(), 21);
    assert!(f.row_scaling.iter().all(|s| (s - 1.0).abs() < 1e-9));
}

#[test]
fn z2_table() {
    let rows = module_category_table(&FiniteGroup::cyclic(2)).unwrap();
    let got: Vec<(usize, usize, usize)> = rows.iter().map(|r| (r.order, r.num_m, r.num_fun)).collect();
    assert_eq!(got, vec![(1, 1, 2), (2, 2, 2)]);
}

#[test]
fn s4_table() {
    let s4 = FiniteGroup::symmetric(4);
    let rows = module_category_table(&s4).unwrap();
    assert_eq!(rows.len(), 16);
    let classes = subgroup_classes(&s4).unwrap();
    let d8 = sub(&s4, &["(1,2,3,4)", "(1,3)"]);
    let ci = find_class(&s4, &classes, &s4.embed(&d8).unwrap()).unwrap();
    let got: Vec<(usize, usize)> =
        rows.iter().filter(|r| r.subgroup_class == ci).map(|r| (r.num_m, r.num_fun)).collect();
    assert_eq!(got, vec![(5, 9), (2, 9)]);
    for r in &rows {
        assert_eq!(fun_count_fixed_points(&s4, &r.module, &r.module).unwrap(), r.num_fun);
    }
}
