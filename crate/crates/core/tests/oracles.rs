//! Sanity checks of the test-tree oracles themselves.

mod common;

use cellkit::coxeter::CoxeterDatum;
use common::{brute_force_kl, one_line, rsk, Poly};

#[test]
fn rsk_small_cases() {
    let (p, q) = rsk(&[2, 1, 3]);
    assert_eq!(p, vec![vec![1, 3], vec![2]]);
    assert_eq!(q, vec![vec![1, 3], vec![2]]);
    let (p, q) = rsk(&[3, 1, 2]);
    assert_eq!(p, vec![vec![1, 2], vec![3]]);
    assert_eq!(q, vec![vec![1, 3], vec![2]]);
    // w0 of S4 is a single column
    assert_eq!(rsk(&[4, 3, 2, 1]).0.len(), 4);
}

#[test]
fn one_line_composes_right_to_left() {
    // s1 s2 = (1 2)(2 3): 1 -> 2, 2 -> 3, 3 -> 1
    assert_eq!(one_line(&[0, 1], 3), vec![2, 3, 1]);
    assert_eq!(one_line(&[], 3), vec![1, 2, 3]);
}

#[test]
fn bar_solver_on_a2() {
    let datum = CoxeterDatum::from_type("A2").unwrap();
    let w = datum.table(100).unwrap();
    let h = brute_force_kl(&w);
    let w0 = (0..w.len()).max_by_key(|&i| w.length(i)).unwrap();
    // in A2 every P_{x,w0} is 1, so h_{x,w0} = v^{3 - l(x)}
    for x in 0..w.len() {
        let want: Poly = [(3 - w.length(x) as i32, 1)].into_iter().collect();
        assert_eq!(h[x][w0], want);
    }
}
