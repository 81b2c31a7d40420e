//! Kazhdan–Lusztig basis data: `b_w = Σ_x h_{x,w} H_x` in the balanced
//! normalization (`h_{w,w} = 1`, `h_{x,w} ∈ vZ[v]` for `x < w`).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;

use super::laurent::LaurentPoly;
use super::sparse::Accumulator;
use crate::coxeter::{CoxeterDatum, GroupElement, IndexedCoxeter, DEFAULT_ENUMERATION_GUARD};
use crate::error::{Error, Result};

/// One column `x ↦ h_{x,w}` of the KL table (nonzero entries only).
pub type KlColumn = BTreeMap<GroupElement, LaurentPoly>;

/// KL columns for every element of a Bruhat-downward-closed indexed set.
#[derive(Debug)]
pub struct KlIndexed {
    universe: Arc<IndexedCoxeter>,
    cols: Vec<Vec<(u32, LaurentPoly)>>,
    mu_below: Vec<Vec<(u32, i64)>>,
}

impl KlIndexed {
    /// Runs the recursion `b_w = b_{ws} b_s - Σ_{z<ws, zs<z} μ(z,ws) b_z`
    /// over all elements, one length layer at a time.
    pub fn compute(universe: Arc<IndexedCoxeter>) -> Result<Self> {
        let n = universe.len();
        let mut cols: Vec<Vec<(u32, LaurentPoly)>> = Vec::with_capacity(n);
        let mut mu_below: Vec<Vec<(u32, i64)>> = Vec::with_capacity(n);
        let mut start = 0;
        while start < n {
            let len = universe.length(start);
            let end = (start..n).find(|&i| universe.length(i) != len).unwrap_or(n);
            let layer: Vec<Vec<(u32, LaurentPoly)>> = (start..end)
                .into_par_iter()
                .map(|w| column_of(&universe, &cols, &mu_below, w))
                .collect::<Result<_>>()?;
            for (off, col) in layer.into_iter().enumerate() {
                let w = (start + off) as u32;
                mu_below.push(
                    col.iter()
                        .filter(|(x, h)| *x != w && h.coeff(1) != 0)
                        .map(|(x, h)| (*x, h.coeff(1)))
                        .collect(),
                );
                cols.push(col);
            }
            start = end;
        }
        Ok(KlIndexed { universe, cols, mu_below })
    }

    pub fn universe(&self) -> &Arc<IndexedCoxeter> {
        &self.universe
    }

    /// `(x, h_{x,w})` pairs sorted by `x`, including `(w, 1)`.
    pub fn column(&self, w: usize) -> &[(u32, LaurentPoly)] {
        &self.cols[w]
    }

    pub fn h(&self, x: usize, w: usize) -> LaurentPoly {
        let col = &self.cols[w];
        match col.binary_search_by_key(&(x as u32), |(i, _)| *i) {
            Ok(k) => col[k].1.clone(),
            Err(_) => LaurentPoly::zero(),
        }
    }

    /// `(u, μ(u,w))` for `u < w` with nonzero `μ`.
    pub fn mu_below(&self, w: usize) -> &[(u32, i64)] {
        &self.mu_below[w]
    }

    pub fn mu(&self, x: usize, w: usize) -> i64 {
        self.mu_below[w].iter().find(|(u, _)| *u as usize == x).map_or(0, |(_, m)| *m)
    }
}

fn column_of(
    u: &IndexedCoxeter,
    cols: &[Vec<(u32, LaurentPoly)>],
    mu_below: &[Vec<(u32, i64)>],
    w: usize,
) -> Result<Vec<(u32, LaurentPoly)>> {
    if w == 0 {
        return Ok(vec![(0, LaurentPoly::one())]);
    }
    let s = *u.element(w).word().last().expect("nonidentity") as usize;
    let ws = u.rmul(w, s).ok_or_else(|| Error::integrity("interval not closed under descents"))?;
    let mut acc = Accumulator::new(u.len());
    let v = LaurentPoly::v();
    let v_inv = LaurentPoly::v_inv();
    for (x, h) in &cols[ws] {
        let x = *x as usize;
        let xs = u.rmul(x, s).ok_or_else(|| Error::integrity("interval not closed under descents"))?;
        acc.add(xs, h);
        let shift = if u.length(xs) > u.length(x) { &v } else { &v_inv };
        acc.add(x, &(h * shift));
    }
    for &(z, m) in &mu_below[ws] {
        if u.is_right_descent(z as usize, s) {
            for (x, h) in &cols[z as usize] {
                acc.add(*x as usize, &h.scale(-m));
            }
        }
    }
    let col = acc.into_sparse();
    for (x, h) in &col {
        let ok = if *x as usize == w {
            h.is_one()
        } else {
            h.valuation().is_some_and(|e| e >= 1) && u.length(*x as usize) < u.length(w)
        };
        if !ok {
            return Err(Error::integrity(format!(
                "KL recursion produced h = {h} at x = {}, w = {}",
                u.element(*x as usize),
                u.element(w)
            )));
        }
    }
    Ok(col)
}

/// Concurrent cache of KL columns keyed by ShortLex normal forms. Columns
/// are inserted only once complete.
#[derive(Debug)]
pub struct KlTable {
    datum: Arc<CoxeterDatum>,
    guard: usize,
    full: OnceLock<Arc<KlIndexed>>,
    columns: RwLock<HashMap<GroupElement, Arc<KlColumn>>>,
}

impl KlTable {
    pub fn new(datum: Arc<CoxeterDatum>) -> Self {
        Self::with_guard(datum, DEFAULT_ENUMERATION_GUARD)
    }

    /// `guard` bounds the size of the enumerated group or interval.
    pub fn with_guard(datum: Arc<CoxeterDatum>, guard: usize) -> Self {
        KlTable { datum, guard, full: OnceLock::new(), columns: RwLock::new(HashMap::new()) }
    }

    pub fn datum(&self) -> &Arc<CoxeterDatum> {
        &self.datum
    }

    /// KL data for the whole (finite) group.
    pub fn full_group(&self) -> Result<Arc<KlIndexed>> {
        if let Some(k) = self.full.get() {
            return Ok(k.clone());
        }
        let universe = self.datum.table(self.guard)?;
        let k = Arc::new(KlIndexed::compute(universe)?);
        Ok(self.full.get_or_init(|| k).clone())
    }

    fn fits_full_group(&self) -> bool {
        self.full.get().is_some()
            || (self.datum.is_finite()
                && self.datum.order_hint().is_none_or(|o| o <= self.guard as u128))
    }

    pub fn column(&self, w: &GroupElement) -> Result<Arc<KlColumn>> {
        if let Some(c) = self.columns.read().expect("KL cache poisoned").get(w) {
            return Ok(c.clone());
        }
        if self.fits_full_group() {
            let k = self.full_group()?;
            let u = k.universe();
            let wi = u.index_of(w).ok_or_else(|| Error::invalid(format!("{w} is not reduced")))?;
            let col: KlColumn =
                k.column(wi).iter().map(|(x, h)| (u.element(*x as usize).clone(), h.clone())).collect();
            return Ok(self.insert_column(w.clone(), col));
        }
        let interval = self.datum.bruhat_interval(w, self.guard)?;
        let u = Arc::new(IndexedCoxeter::from_elements(&self.datum, interval)?);
        let k = KlIndexed::compute(u.clone())?;
        for i in 0..u.len() {
            let col: KlColumn =
                k.column(i).iter().map(|(x, h)| (u.element(*x as usize).clone(), h.clone())).collect();
            self.insert_column(u.element(i).clone(), col);
        }
        self.columns
            .read()
            .expect("KL cache poisoned")
            .get(w)
            .cloned()
            .ok_or_else(|| Error::integrity(format!("{w} missing from its own interval")))
    }

    /// Insert-if-absent; returns the stored column.
    pub fn insert_column(&self, w: GroupElement, col: KlColumn) -> Arc<KlColumn> {
        let mut map = self.columns.write().expect("KL cache poisoned");
        map.entry(w).or_insert_with(|| Arc::new(col)).clone()
    }

    /// Snapshot of all cached columns, sorted by `w`.
    pub fn cached_columns(&self) -> Vec<(GroupElement, Arc<KlColumn>)> {
        let map = self.columns.read().expect("KL cache poisoned");
        let mut out: Vec<_> = map.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// `h_{x,w}`; zero unless `x ≤ w`.
    pub fn h(&self, x: &GroupElement, w: &GroupElement) -> Result<LaurentPoly> {
        Ok(self.column(w)?.get(x).cloned().unwrap_or_default())
    }

    /// Coefficient of `v` in `h_{x,w}`.
    pub fn mu(&self, x: &GroupElement, w: &GroupElement) -> Result<i64> {
        Ok(self.h(x, w)?.coeff(1))
    }

    /// Classical `P_{x,w}(q)`, from `h_{x,w}(v) = v^{l(w)-l(x)} P_{x,w}(v^-2)`.
    pub fn kl_polynomial(&self, x: &GroupElement, w: &GroupElement) -> Result<LaurentPoly> {
        let h = self.h(x, w)?;
        Ok(classical_from_balanced(&h, w.length() as i32 - x.length() as i32))
    }
}

/// Converts `h(v) = v^d P(v^-2)` into `P(q)`, returned with variable `q`.
pub fn classical_from_balanced(h: &LaurentPoly, d: i32) -> LaurentPoly {
    LaurentPoly::from_terms(h.terms().map(|(e, c)| {
        debug_assert_eq!((d - e) % 2, 0);
        ((d - e) / 2, c)
    }))
}
