//! Structural invariants checked on randomly chosen inputs.

mod common;

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use cellkit::based_ring::BasedRing;
use cellkit::cells::{compute_plain_cells, j_ring, CellPartition};
use cellkit::coxeter::CoxeterDatum;
use cellkit::fusion::{fun_count, fun_count_fixed_points, module_category_table, rep_ring, TableRow};
use cellkit::group::{subgroup_classes, FiniteGroup};
use proptest::prelude::*;

const TYPES: [&str; 6] = ["A2", "A3", "A4", "B2", "B3", "G2"];

fn partitions() -> &'static Vec<CellPartition> {
    static P: OnceLock<Vec<CellPartition>> = OnceLock::new();
    P.get_or_init(|| TYPES.iter().map(|t| compute_plain_cells(&CoxeterDatum::from_type(t).unwrap()).unwrap()).collect())
}

fn s4_table() -> &'static (Arc<FiniteGroup>, Vec<TableRow>) {
    static T: OnceLock<(Arc<FiniteGroup>, Vec<TableRow>)> = OnceLock::new();
    T.get_or_init(|| {
        let g = FiniteGroup::symmetric(4);
        let rows = module_category_table(&g).unwrap();
        (g, rows)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cells_refine_and_swap_under_inverse(t in 0..TYPES.len(), seed in any::<usize>()) {
        let p = &partitions()[t];
        let x = seed % p.len();
        let xi = p.inverse(x);
        // ids are numbered per partition, so compare the cells as sets
        let left: BTreeSet<usize> = (0..p.len()).filter(|&e| p.left_cell_id(e) == p.left_cell_id(x)).collect();
        let right: BTreeSet<usize> = (0..p.len()).filter(|&e| p.right_cell_id(e) == p.right_cell_id(xi)).collect();
        prop_assert_eq!(left.iter().map(|&e| p.inverse(e)).collect::<BTreeSet<_>>(), right);
        prop_assert_eq!(p.two_sided_cell_id(x), p.two_sided_cell_id(xi));
        for l in p.left_cells() {
            let ids: BTreeSet<usize> = l.iter().map(|&e| p.two_sided_cell_id(e)).collect();
            prop_assert_eq!(ids.len(), 1);
        }
        prop_assert_eq!(p.a_function(x), p.a_value(p.two_sided_cell_id(x)));
    }

    #[test]
    fn a_is_bounded_by_length(t in 0..TYPES.len(), seed in any::<usize>()) {
        let p = &partitions()[t];
        let x = seed % p.len();
        prop_assert!(p.a_function(x) as usize <= p.table().universe().length(x));
    }

    #[test]
    fn gamma_symmetry(t in 0..TYPES.len(), c in any::<usize>(), i in any::<usize>(), j in any::<usize>(), k in any::<usize>()) {
        let p = &partitions()[t];
        let cells = p.two_sided_cells();
        let cell = &cells[c % cells.len()];
        let ring = j_ring(p, cell).unwrap();
        let (x, y, z) = (i % cell.len(), j % cell.len(), k % cell.len());
        let pos = |e: usize| cell.iter().position(|&f| f == e).unwrap();
        let inv = |e: usize| pos(p.inverse(cell[e]));
        prop_assert_eq!(ring.gamma(x, y, z), ring.gamma(inv(y), inv(x), inv(z)));
        prop_assert!(ring.check_axioms().is_ok());
    }

    #[test]
    fn fun_count_symmetric_and_matches_oracle(i in 0usize..16, j in 0usize..16) {
        let (g, rows) = s4_table();
        let (a, b) = (&rows[i].module, &rows[j].module);
        let ab = fun_count(g, a, b).unwrap();
        prop_assert_eq!(ab, fun_count(g, b, a).unwrap());
        prop_assert_eq!(ab, fun_count_fixed_points(g, a, b).unwrap());
    }

    #[test]
    fn closures_are_subrings(seed in proptest::collection::vec(0usize..11, 0..4)) {
        let r: BasedRing = rep_ring(&FiniteGroup::symmetric(5)).unwrap();
        let c = r.closure(&seed.iter().map(|&i| i % r.rank()).collect::<Vec<_>>());
        for &x in &c {
            for &y in &c {
                prop_assert!(r.product(x, y).iter().all(|&(k, _)| c.contains(&(k as usize))));
            }
        }
        let sub = r.restrict(&c).unwrap();
        prop_assert!(sub.check_axioms().is_ok());
    }
}

/// Subgroups of S4 by brute force: every subgroup of S4 is generated by two
/// elements; classes are orbits of the conjugation action on member sets.
#[test]
fn s4_subgroup_classes_brute_force() {
    let perms: Vec<Vec<usize>> = {
        let mut all = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = vec![a, b, c, d];
                        if p.iter().collect::<BTreeSet<_>>().len() == 4 {
                            all.push(p);
                        }
                    }
                }
            }
        }
        all
    };
    let compose = |p: &Vec<usize>, q: &Vec<usize>| -> Vec<usize> { (0..4).map(|i| q[p[i]]).collect() };
    let inverse = |p: &Vec<usize>| -> Vec<usize> {
        let mut r = vec![0; 4];
        for i in 0..4 {
            r[p[i]] = i;
        }
        r
    };
    let mut subgroups: BTreeSet<BTreeSet<Vec<usize>>> = BTreeSet::new();
    for a in &perms {
        for b in &perms {
            let mut set: BTreeSet<Vec<usize>> = [vec![0, 1, 2, 3], a.clone(), b.clone()].into_iter().collect();
            loop {
                let next: BTreeSet<Vec<usize>> =
                    set.iter().flat_map(|x| set.iter().map(move |y| compose(x, y))).collect();
                if next.len() == set.len() {
                    break;
                }
                set = next;
            }
            subgroups.insert(set);
        }
    }
    let mut classes: Vec<BTreeSet<BTreeSet<Vec<usize>>>> = Vec::new();
    for h in &subgroups {
        if classes.iter().any(|c| c.contains(h)) {
            continue;
        }
        let orbit = perms
            .iter()
            .map(|g| h.iter().map(|x| compose(&compose(&inverse(g), x), g)).collect())
            .collect();
        classes.push(orbit);
    }
    assert_eq!(subgroups.len(), 30);
    let mut brute: Vec<(usize, usize)> = classes.iter().map(|c| (c.iter().next().unwrap().len(), c.len())).collect();
    brute.sort_unstable();
    let mut ours: Vec<(usize, usize)> = subgroup_classes(&FiniteGroup::symmetric(4))
        .unwrap()
        .iter()
        .map(|c| (c.order(), c.class_size))
        .collect();
    ours.sort_unstable();
    assert_eq!(ours, brute);
}
