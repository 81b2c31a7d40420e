//! Independent oracles shared by the integration tests. Nothing here calls the
//! crate's Hecke, cell or KL code; only group multiplication tables are borrowed.
#![allow(dead_code)]

use std::collections::BTreeMap;

use cellkit::coxeter::IndexedCoxeter;

/// Laurent polynomial in v as exponent -> coefficient.
pub type Poly = BTreeMap<i32, i64>;

fn add_into(acc: &mut Poly, p: &Poly, scale: i64, shift: i32) {
    for (&e, &c) in p {
        let slot = acc.entry(e + shift).or_insert(0);
        *slot += scale * c;
        if *slot == 0 {
            acc.remove(&(e + shift));
        }
    }
}

fn mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&e, &c) in q {
        add_into(&mut out, p, c, e);
    }
    out
}

fn bar(p: &Poly) -> Poly {
    p.iter().map(|(&e, &c)| (-e, c)).collect()
}

/// Element of the Hecke algebra in the standard basis.
type Std = BTreeMap<usize, Poly>;

fn add_std(acc: &mut Std, i: usize, p: &Poly, scale: i64, shift: i32) {
    let slot = acc.entry(i).or_default();
    add_into(slot, p, scale, shift);
    if slot.is_empty() {
        acc.remove(&i);
    }
}

/// Right multiplication by H_s with H_s² = 1 + (v⁻¹ − v)H_s.
fn times_hs(w: &IndexedCoxeter, x: &Std, s: usize) -> Std {
    let mut out = Std::new();
    for (&y, c) in x {
        let ys = w.rmul(y, s).expect("full group");
        add_std(&mut out, ys, c, 1, 0);
        if w.length(ys) < w.length(y) {
            add_std(&mut out, y, c, 1, -1);
            add_std(&mut out, y, c, -1, 1);
        }
    }
    out
}

/// KL polynomials h_{x,w} for every pair, obtained by solving bar-invariance
/// directly: bar(H_w) is expanded in the standard basis (via bar(H_s) = H_s + v − v⁻¹)
/// and h_{y,w} − bar(h_{y,w}) = Σ_{y<x≤w} bar(h_{x,w}) r_{y,x} is solved top-down.
pub fn brute_force_kl(w: &IndexedCoxeter) -> Vec<Vec<Poly>> {
    let n = w.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| w.length(i));
    // r[x] = bar(H_x) in the standard basis
    let mut r: Vec<Std> = vec![Std::new(); n];
    for &x in &order {
        if w.length(x) == 0 {
            r[x].insert(x, Poly::from([(0, 1)]));
            continue;
        }
        let s = (0..w.rank()).find(|&s| w.length(w.rmul(x, s).unwrap()) < w.length(x)).unwrap();
        let prev = &r[w.rmul(x, s).unwrap()];
        let mut out = times_hs(w, prev, s);
        for (&y, c) in prev {
            add_std(&mut out, y, c, 1, 1);
            add_std(&mut out, y, c, -1, -1);
        }
        r[x] = out;
    }
    let mut h = vec![vec![Poly::new(); n]; n];
    for top in 0..n {
        h[top][top] = Poly::from([(0, 1)]);
        let mut below: Vec<usize> = (0..n).filter(|&y| y != top && w.length(y) < w.length(top)).collect();
        below.sort_by_key(|&y| std::cmp::Reverse(w.length(y)));
        for y in below {
            let mut rhs = Poly::new();
            for x in 0..n {
                if x == y || h[x][top].is_empty() {
                    continue;
                }
                if let Some(ryx) = r[x].get(&y) {
                    add_into(&mut rhs, &mul(&bar(&h[x][top]), ryx), 1, 0);
                }
            }
            // rhs = h − bar(h) with h ∈ vZ[v]: h is the positive part
            let pos: Poly = rhs.iter().filter(|(&e, _)| e > 0).map(|(&e, &c)| (e, c)).collect();
            let neg_ok = rhs.iter().all(|(&e, &c)| e != 0 && (e > 0 || rhs.get(&-e) == Some(&-c)));
            assert!(neg_ok, "right-hand side is not antisymmetric under bar");
            h[y][top] = pos;
        }
    }
    h
}

/// Row-insertion RSK; returns (P, Q).
pub fn rsk(perm: &[usize]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (step, &value) in perm.iter().enumerate() {
        let mut x = value;
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![x]);
                q.push(vec![step + 1]);
                break;
            }
            match p[row].iter().position(|&y| y > x) {
                Some(i) => {
                    std::mem::swap(&mut p[row][i], &mut x);
                    row += 1;
                }
                None => {
                    p[row].push(x);
                    q[row].push(step + 1);
                    break;
                }
            }
        }
    }
    (p, q)
}

/// One-line notation of s_{i1} ∘ … ∘ s_{ik} in S_n, s_i = (i, i+1), generators 0-based.
pub fn one_line(word: &[u8], n: usize) -> Vec<usize> {
    (1..=n)
        .map(|j| {
            word.iter().rev().fold(j, |x, &s| {
                let s = s as usize + 1;
                if x == s {
                    s + 1
                } else if x == s + 1 {
                    s
                } else {
                    x
                }
            })
        })
        .collect()
}

/// Partition of 0..n into fibers of `key`, as sorted blocks sorted by first element.
pub fn fibers<K: Ord>(n: usize, key: impl Fn(usize) -> K) -> Vec<Vec<usize>> {
    let mut m: BTreeMap<K, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        m.entry(key(i)).or_default().push(i);
    }
    normalize_partition(m.into_values().collect())
}

pub fn normalize_partition(mut blocks: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    blocks
}
