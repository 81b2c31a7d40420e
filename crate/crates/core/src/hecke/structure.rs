//! All KL structure constants of a finite Coxeter group, computed in the KL
//! basis directly by left multiplication with `b_s`.

use std::sync::Arc;

use rayon::prelude::*;

use super::kl::KlIndexed;
use super::laurent::LaurentPoly;
use super::sparse::Accumulator;
use crate::coxeter::IndexedCoxeter;
use crate::error::{Error, Result};

/// `rows[x * n + y]` holds the nonzero `(z, h_{x,y,z})`, sorted by `z`.
#[derive(Debug)]
pub struct StructureTable {
    kl: Arc<KlIndexed>,
    rows: Vec<Vec<(u32, LaurentPoly)>>,
}

impl StructureTable {
    /// Requires KL data for a full finite group.
    pub fn compute(kl: Arc<KlIndexed>) -> Result<Self> {
        let u = kl.universe().clone();
        let n = u.len();
        if (0..n).any(|i| (0..u.rank()).any(|s| u.lmul(i, s).is_none())) {
            return Err(Error::invalid("structure table needs a full finite group"));
        }
        // column y of the table: b_x b_y for every x, in length order of x
        let by_y: Vec<Vec<Vec<(u32, LaurentPoly)>>> =
            (0..n).into_par_iter().map(|y| products_with(&u, &kl, y)).collect();
        let mut rows = vec![Vec::new(); n * n];
        for (y, col) in by_y.into_iter().enumerate() {
            for (x, prod) in col.into_iter().enumerate() {
                rows[x * n + y] = prod;
            }
        }
        Ok(StructureTable { kl, rows })
    }

    pub fn kl(&self) -> &Arc<KlIndexed> {
        &self.kl
    }

    pub fn universe(&self) -> &Arc<IndexedCoxeter> {
        self.kl.universe()
    }

    pub fn len(&self) -> usize {
        self.kl.universe().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Nonzero `(z, h_{x,y,z})`.
    pub fn product(&self, x: usize, y: usize) -> &[(u32, LaurentPoly)] {
        &self.rows[x * self.len() + y]
    }

    pub fn h(&self, x: usize, y: usize, z: usize) -> LaurentPoly {
        let row = self.product(x, y);
        match row.binary_search_by_key(&(z as u32), |(i, _)| *i) {
            Ok(k) => row[k].1.clone(),
            Err(_) => LaurentPoly::zero(),
        }
    }
}

/// `b_s · Σ c_z b_z`, with `b_s b_z = (v+v^-1) b_z` if `sz < z`, else
/// `b_{sz} + Σ_{u<z, su<u} μ(u,z) b_u`.
fn left_mult(
    u: &IndexedCoxeter,
    kl: &KlIndexed,
    s: usize,
    elt: &[(u32, LaurentPoly)],
    acc: &mut Accumulator,
) {
    let vv = &LaurentPoly::v() + &LaurentPoly::v_inv();
    for (z, c) in elt {
        let z = *z as usize;
        if u.is_left_descent(z, s) {
            acc.add(z, &(c * &vv));
        } else {
            acc.add(u.lmul(z, s).expect("full group"), c);
            for &(w, m) in kl.mu_below(z) {
                if u.is_left_descent(w as usize, s) {
                    acc.add(w as usize, &c.scale(m));
                }
            }
        }
    }
}

fn products_with(u: &IndexedCoxeter, kl: &KlIndexed, y: usize) -> Vec<Vec<(u32, LaurentPoly)>> {
    let n = u.len();
    let mut acc = Accumulator::new(n);
    let mut out: Vec<Vec<(u32, LaurentPoly)>> = Vec::with_capacity(n);
    out.push(vec![(y as u32, LaurentPoly::one())]);
    for x in 1..n {
        // b_x = b_s b_{sx} - Σ_{w<sx, sw<w} μ(w,sx) b_w
        let s = u.element(x).word()[0] as usize;
        let sx = u.lmul(x, s).expect("full group");
        left_mult(u, kl, s, &out[sx], &mut acc);
        for &(w, m) in kl.mu_below(sx) {
            if u.is_left_descent(w as usize, s) {
                for (z, c) in &out[w as usize] {
                    acc.add(*z as usize, &c.scale(-m));
                }
            }
        }
        out.push(acc.take_sparse());
    }
    out
}
