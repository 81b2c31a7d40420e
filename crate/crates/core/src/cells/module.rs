use super::CellPartition;
use crate::error::{Error, Result};

/// `[Γ]`: the representation of `W` on the span of the left cell `Γ` in the
/// `≤_L`-subquotient, specialized at `v = 1` and twisted by the sign
/// character, so that `{e}` carries the trivial and `{w0}` the sign
/// representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellModule {
    pub left_cell: Vec<usize>,
    /// `character[w]` for every element index `w` of `W`.
    pub character: Vec<i64>,
}

impl CellModule {
    pub fn dimension(&self) -> i64 {
        self.character[0]
    }
}

type Matrix = Vec<Vec<i64>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let k = a.len();
    let mut c = vec![vec![0i64; k]; k];
    for i in 0..k {
        for (l, &ail) in a[i].iter().enumerate() {
            if ail != 0 {
                for j in 0..k {
                    c[i][j] += ail * b[l][j];
                }
            }
        }
    }
    c
}

pub fn cell_module_character(p: &CellPartition, left_cell: &[usize]) -> Result<CellModule> {
    if !p.is_plain() {
        return Err(Error::invalid("cell modules are implemented for plain Coxeter groups only"));
    }
    let u = p.table().universe().clone();
    let k = left_cell.len();
    let id = p.left_cell_id(left_cell[0]);
    if left_cell.iter().any(|&e| p.left_cell_id(e) != id) || p.left_cells()[id].len() != k {
        return Err(Error::invalid("not a full left cell"));
    }
    let identity: Matrix = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    // H_s = b_s - v acts at v = 1 by h_{s,w,z}(1) - δ_{zw}; negated for the sign twist
    let gens: Vec<Matrix> = (0..u.rank())
        .map(|s| {
            let s_idx = u.rmul(0, s).expect("generator");
            let mut m = vec![vec![0i64; k]; k];
            for (c, &w) in left_cell.iter().enumerate() {
                for (r, &z) in left_cell.iter().enumerate() {
                    m[r][c] = i64::from(r == c) - p.h(s_idx, w, z).eval_at_one();
                }
            }
            m
        })
        .collect();
    for g in &gens {
        if mat_mul(g, g) != identity {
            return Err(Error::integrity("cell module generator does not square to 1"));
        }
    }
    let mut rho: Vec<Option<Matrix>> = vec![None; u.len()];
    rho[0] = Some(identity);
    let mut order: Vec<usize> = (0..u.len()).collect();
    order.sort_by_key(|&w| u.length(w));
    for &w in order.iter().skip(1) {
        let s = (0..u.rank()).find(|&s| u.is_right_descent(w, s)).expect("nonidentity has a descent");
        let ws = u.rmul(w, s).expect("finite group");
        let m = mat_mul(rho[ws].as_ref().expect("shorter element done"), &gens[s]);
        rho[w] = Some(m);
    }
    let character = rho
        .iter()
        .map(|m| {
            let m = m.as_ref().expect("all elements reached");
            (0..k).map(|i| m[i][i]).sum()
        })
        .collect();
    Ok(CellModule { left_cell: left_cell.to_vec(), character })
}

/// `(1/|W|) Σ_w χ1(w) χ2(w⁻¹)`.
pub fn hom_dim(p: &CellPartition, m1: &CellModule, m2: &CellModule) -> Result<u64> {
    let u = p.table().universe();
    let n = u.len();
    let total: i128 = (0..n)
        .map(|w| i128::from(m1.character[w]) * i128::from(m2.character[u.inverse(w).expect("finite")]))
        .sum();
    if total % n as i128 != 0 || total < 0 {
        return Err(Error::integrity(format!("character inner product {total}/{n} is not a nonnegative integer")));
    }
    Ok((total / n as i128) as u64)
}
