//! Exact character tables by the Dixon–Schneider method: simultaneous
//! eigenvectors of the class-multiplication matrices over `F_p` with
//! `p ≡ 1 (mod exponent)`, lifted to cyclotomic integers through
//! eigenvalue multiplicities.

use num_complex::Complex64;
use serde::Serialize;

use super::cyclotomic::Cyclotomic;
use super::finite::FiniteGroup;
use super::modp::{inv_mod, is_prime, nullspace, pow_mod, primitive_root, rref};
use crate::error::{check_guard, Error, Result};

pub const DEFAULT_CHARACTER_GUARD: usize = 10_000;

#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    pub order: usize,
    pub exponent: u32,
    /// Element index of each class representative (classes in group order).
    pub class_reps: Vec<u32>,
    pub class_sizes: Vec<usize>,
    /// `values[i][k]`: irreducible `i` on class `k`; the trivial character first.
    pub values: Vec<Vec<Cyclotomic>>,
}

impl CharacterTable {
    pub fn num_irreps(&self) -> usize {
        self.values.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.values.iter().map(|row| row[0].as_integer().unwrap_or(0) as usize).collect()
    }

    pub fn value_complex(&self, i: usize, class: usize) -> Complex64 {
        self.values[i][class].to_complex()
    }

    pub fn complex_rows(&self) -> Vec<Vec<Complex64>> {
        self.values.iter().map(|r| r.iter().map(|c| c.to_complex()).collect()).collect()
    }
}

pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable> {
    check_guard("group order", g.order(), DEFAULT_CHARACTER_GUARD)?;
    let n = g.order();
    let classes = g.classes();
    let r = classes.len();
    let e = g.exponent();
    let p = choose_prime(e as u64, n as u64);
    let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    let reps: Vec<usize> = classes.iter().map(|c| c[0] as usize).collect();
    let inv_class: Vec<usize> = reps.iter().map(|&x| g.class_of(g.inv(x))).collect();

    // M_j[i][k] = #{(x,y) ∈ C_j × C_i : xy = g_k}
    let class_matrix = |j: usize| -> Vec<Vec<u64>> {
        let mut m = vec![vec![0u64; r]; r];
        for (k, &gk) in reps.iter().enumerate() {
            for &x in &classes[j] {
                let y = g.mul(g.inv(x as usize), gk);
                m[g.class_of(y)][k] += 1;
            }
        }
        for row in m.iter_mut() {
            for v in row.iter_mut() {
                *v %= p;
            }
        }
        m
    };

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| unit(r, i)).collect()];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(j);
        let mut next = Vec::new();
        for s in spaces {
            if s.len() == 1 {
                next.push(s);
            } else {
                next.extend(split(&m, s, r, p)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::integrity("class matrices did not split into one-dimensional spaces"));
    }

    let z = pow_mod(primitive_root(p), (p - 1) / e as u64, p);
    // power maps: class of g_k^t
    let powers: Vec<Vec<usize>> = reps
        .iter()
        .map(|&x| {
            let mut out = Vec::with_capacity(e);
            let mut acc = 0usize;
            for _ in 0..e {
                out.push(g.class_of(acc));
                acc = g.mul(acc, x);
            }
            out
        })
        .collect();
    let mut values = Vec::with_capacity(r);
    for s in spaces {
        let mut w = s.into_iter().next().expect("one vector");
        if w[0] == 0 {
            return Err(Error::integrity("eigenvector vanishes on the identity class"));
        }
        let inv0 = inv_mod(w[0], p);
        for x in w.iter_mut() {
            *x = *x * inv0 % p;
        }
        let mut sum = 0u64;
        for k in 0..r {
            sum = (sum + w[k] * w[inv_class[k]] % p * inv_mod(sizes[k] as u64 % p, p)) % p;
        }
        let d2 = (n as u64 % p) * inv_mod(sum, p) % p;
        let d = (1..=(p / 2)).find(|d| d * d % p == d2).ok_or_else(|| Error::integrity("degree lift failed"))?;
        let chi_mod: Vec<u64> =
            (0..r).map(|k| w[k] * d % p * inv_mod(sizes[k] as u64 % p, p) % p).collect();
        let inv_e = inv_mod(e as u64 % p, p);
        let mut row = Vec::with_capacity(r);
        for pk in powers.iter() {
            let mut coords = vec![0i64; e];
            let mut total = 0;
            for (t, slot) in coords.iter_mut().enumerate() {
                let mut m = 0u64;
                for (j, &cls) in pk.iter().enumerate() {
                    let zt = pow_mod(z, ((e - (j * t) % e) % e) as u64, p);
                    m = (m + chi_mod[cls] * zt) % p;
                }
                let m = m * inv_e % p;
                if m > d {
                    return Err(Error::integrity("eigenvalue multiplicity out of range"));
                }
                *slot = m as i64;
                total += m;
            }
            if total != d {
                return Err(Error::integrity("eigenvalue multiplicities do not sum to the degree"));
            }
            row.push(Cyclotomic { order: e as u32, coords });
        }
        values.push(row);
    }
    sort_rows(&mut values);
    let table = CharacterTable {
        order: n,
        exponent: e as u32,
        class_reps: reps.iter().map(|&x| x as u32).collect(),
        class_sizes: sizes,
        values,
    };
    verify(&table)?;
    Ok(table)
}

fn unit(r: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0u64; r];
    v[i] = 1;
    v
}

fn choose_prime(e: u64, n: u64) -> u64 {
    let bound = 2.0 * (n as f64).sqrt();
    let mut p = e + 1;
    while !(is_prime(p) && p as f64 > bound) {
        p += e;
    }
    p
}

/// Splits an invariant subspace (rows in reduced echelon form) into
/// eigenspaces of `m` acting on column vectors.
fn split(m: &[Vec<u64>], basis: Vec<Vec<u64>>, r: usize, p: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let (basis, pivots) = rref(basis, r, p);
    let k = basis.len();
    // A[c][a] = coordinate c of M b_a
    let mut a = vec![vec![0u64; k]; k];
    for (ai, b) in basis.iter().enumerate() {
        let mb: Vec<u64> = (0..r).map(|i| (0..r).map(|j| m[i][j] * b[j] % p).sum::<u64>() % p).collect();
        for (c, &pc) in pivots.iter().enumerate() {
            a[c][ai] = mb[pc];
        }
    }
    let mut out = Vec::new();
    let mut found = 0;
    for lambda in 0..p {
        let shifted: Vec<Vec<u64>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { (a[i][j] + p - lambda) % p } else { a[i][j] }).collect())
            .collect();
        let ns = nullspace(&shifted, k, p);
        if ns.is_empty() {
            continue;
        }
        found += ns.len();
        let vecs: Vec<Vec<u64>> = ns
            .iter()
            .map(|y| (0..r).map(|i| (0..k).map(|c| y[c] * basis[c][i] % p).sum::<u64>() % p).collect())
            .collect();
        out.push(rref(vecs, r, p).0);
        if found == k {
            break;
        }
    }
    if found != k {
        return Err(Error::integrity("class matrix not diagonalizable over the chosen prime"));
    }
    Ok(out)
}

fn sort_rows(values: &mut [Vec<Cyclotomic>]) {
    let key = |row: &Vec<Cyclotomic>| {
        let deg = row[0].as_integer().unwrap_or(0);
        let trivial = row.iter().all(|c| c.as_integer() == Some(1));
        let coords: Vec<Vec<i64>> = row.iter().map(|c| c.reduced()).collect();
        (deg, !trivial, coords)
    };
    values.sort_by_cached_key(key);
}

fn verify(t: &CharacterTable) -> Result<()> {
    let n = t.order as i64;
    let r = t.values.len();
    let degs = t.degrees();
    if degs.iter().map(|d| d * d).sum::<usize>() != t.order || degs.iter().any(|&d| d == 0 || !t.order.is_multiple_of(d)) {
        return Err(Error::integrity("character degrees inconsistent with the group order"));
    }
    for i in 0..r {
        for j in 0..r {
            let mut s = Cyclotomic::zero(t.exponent);
            for k in 0..r {
                s = s.add(&t.values[i][k].mul(&t.values[j][k].conj()).scale(t.class_sizes[k] as i64));
            }
            if s.as_integer() != Some(if i == j { n } else { 0 }) {
                return Err(Error::integrity("row orthogonality failed"));
            }
        }
    }
    for k in 0..r {
        for l in 0..r {
            let mut s = Cyclotomic::zero(t.exponent);
            for i in 0..r {
                s = s.add(&t.values[i][k].mul(&t.values[i][l].conj()));
            }
            let expect = if k == l { n / t.class_sizes[k] as i64 } else { 0 };
            if s.as_integer() != Some(expect) {
                return Err(Error::integrity("column orthogonality failed"));
            }
        }
    }
    Ok(())
}
