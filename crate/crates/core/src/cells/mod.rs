//! Left, right and two-sided cells of finite (extended) Hecke algebras, the
//! a-function, J-rings and cell modules.

mod jring;
mod module;

use std::sync::Arc;

use crate::coxeter::CoxeterDatum;
use crate::error::{check_guard, Error, Result};
use crate::group::FiniteGroup;
use crate::hecke::{ExtendedHeckeDatum, KlIndexed, LaurentPoly, StructureTable};

pub use jring::{distinguished_involutions, j_ring};
pub use module::{cell_module_character, hom_dim, CellModule};

pub const DEFAULT_CELL_GUARD: usize = 5_000;

/// Cells on the basis `b_w ⊗ x` of `H ⊗ Z[Ω]`; element `(w, x)` has index
/// `w * |Ω| + x`, so for trivial `Ω` indices agree with the Coxeter table.
#[derive(Debug)]
pub struct CellPartition {
    table: Arc<StructureTable>,
    omega: Arc<FiniteGroup>,
    /// `act[x][w]` = index of `Υ(x)(w)`.
    act: Vec<Vec<u32>>,
    left: Vec<usize>,
    right: Vec<usize>,
    two_sided: Vec<usize>,
    a_values: Vec<u32>,
}

pub fn structure_table(datum: &Arc<CoxeterDatum>, guard: usize) -> Result<Arc<StructureTable>> {
    if !datum.is_finite() {
        return Err(Error::invalid(format!("{} is infinite; cells need a finite Coxeter part", datum.label())));
    }
    if let Some(order) = datum.order_hint() {
        check_guard("group order", order.min(u128::from(u64::MAX)) as usize, guard)?;
    }
    let universe = datum.table(guard)?;
    let kl = Arc::new(KlIndexed::compute(universe)?);
    Ok(Arc::new(StructureTable::compute(kl)?))
}

pub fn compute_cells(ed: &Arc<ExtendedHeckeDatum>) -> Result<CellPartition> {
    compute_cells_with_guard(ed, DEFAULT_CELL_GUARD)
}

pub fn compute_cells_with_guard(ed: &Arc<ExtendedHeckeDatum>, guard: usize) -> Result<CellPartition> {
    let m = ed.omega().order();
    let table = structure_table(ed.datum(), guard / m.max(1))?;
    check_guard("|W x Ω|", table.len() * m, guard)?;
    CellPartition::from_table(ed, table)
}

/// Cells of a plain finite Coxeter group.
pub fn compute_plain_cells(datum: &Arc<CoxeterDatum>) -> Result<CellPartition> {
    compute_cells(&ExtendedHeckeDatum::plain(datum.clone()))
}

impl CellPartition {
    pub fn from_table(ed: &Arc<ExtendedHeckeDatum>, table: Arc<StructureTable>) -> Result<CellPartition> {
        if ed.datum().rank() != table.universe().rank() {
            return Err(Error::invalid("structure table belongs to a different Coxeter datum"));
        }
        let u = table.universe().clone();
        let omega = ed.omega().clone();
        let act = (0..omega.order())
            .map(|x| {
                (0..u.len())
                    .map(|w| {
                        let img = ed.apply(x, u.element(w))?;
                        u.index_of(&img).map(|i| i as u32).ok_or_else(|| Error::integrity("Ω image outside W"))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut p = CellPartition {
            table,
            omega,
            act,
            left: Vec::new(),
            right: Vec::new(),
            two_sided: Vec::new(),
            a_values: Vec::new(),
        };
        let n = p.len();
        // z ≤_L y and z ≤_R x whenever b_z occurs in b_x b_y
        let mut left_adj = vec![Vec::new(); n];
        let mut right_adj = vec![Vec::new(); n];
        let mut a_elem = vec![0u32; n];
        for x in 0..n {
            for y in 0..n {
                for (z, h) in p.product(x, y) {
                    left_adj[y].push(z as u32);
                    right_adj[x].push(z as u32);
                    let deg = -h.valuation().unwrap_or(0);
                    a_elem[z] = a_elem[z].max(deg.max(0) as u32);
                }
            }
        }
        for adj in left_adj.iter_mut().chain(right_adj.iter_mut()) {
            adj.sort_unstable();
            adj.dedup();
        }
        let both: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut v = left_adj[i].clone();
                v.extend_from_slice(&right_adj[i]);
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        p.left = scc(&left_adj);
        p.right = scc(&right_adj);
        p.two_sided = scc(&both);
        let cells = p.two_sided_cells();
        p.a_values = cells
            .iter()
            .map(|c| {
                let a = a_elem[c[0]];
                if c.iter().any(|&e| a_elem[e] != a) {
                    Err(Error::integrity(format!("a-function not constant on the cell of {}", p.label(c[0]))))
                } else {
                    Ok(a)
                }
            })
            .collect::<Result<_>>()?;
        p.check_invariants()?;
        Ok(p)
    }

    fn check_invariants(&self) -> Result<()> {
        for e in 0..self.len() {
            for f in 0..self.len() {
                if (self.left[e] == self.left[f] || self.right[e] == self.right[f]) && self.two_sided[e] != self.two_sided[f] {
                    return Err(Error::integrity("one-sided cells do not refine two-sided cells"));
                }
                let (ei, fi) = (self.inverse(e), self.inverse(f));
                if (self.left[e] == self.left[f]) != (self.right[ei] == self.right[fi]) {
                    return Err(Error::integrity("inversion does not swap left and right cells"));
                }
            }
        }
        Ok(())
    }

    pub fn table(&self) -> &Arc<StructureTable> {
        &self.table
    }

    pub fn omega(&self) -> &Arc<FiniteGroup> {
        &self.omega
    }

    pub fn is_plain(&self) -> bool {
        self.omega.order() == 1
    }

    pub fn len(&self) -> usize {
        self.table.len() * self.omega.order()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(w, x)` for element index `e`.
    pub fn split(&self, e: usize) -> (usize, usize) {
        (e / self.omega.order(), e % self.omega.order())
    }

    pub fn join(&self, w: usize, x: usize) -> usize {
        w * self.omega.order() + x
    }

    pub fn act(&self, x: usize, w: usize) -> usize {
        self.act[x][w] as usize
    }

    pub fn label(&self, e: usize) -> String {
        let (w, x) = self.split(e);
        let base = self.table.universe().element(w).to_string();
        if self.is_plain() {
            base
        } else {
            format!("{base}·ω{x}")
        }
    }

    /// Index of the element matching `label` (as printed by [`Self::label`]).
    pub fn find(&self, label: &str) -> Option<usize> {
        (0..self.len()).find(|&e| self.label(e) == label)
    }

    /// The anti-involution `b_w ⊗ x ↦ b_{Υ(x⁻¹)(w⁻¹)} ⊗ x⁻¹`.
    pub fn inverse(&self, e: usize) -> usize {
        let (w, x) = self.split(e);
        let u = self.table.universe();
        let wi = u.inverse(w).expect("finite group");
        let xi = self.omega.inv(x);
        self.join(self.act(xi, wi), xi)
    }

    /// Nonzero `(z, h_{e,f,z})`.
    pub fn product(&self, e: usize, f: usize) -> Vec<(usize, LaurentPoly)> {
        let (w1, x1) = self.split(e);
        let (w2, x2) = self.split(f);
        let x = self.omega.mul(x1, x2);
        self.table
            .product(w1, self.act(x1, w2))
            .iter()
            .map(|(z, h)| (self.join(*z as usize, x), h.clone()))
            .collect()
    }

    pub fn h(&self, e: usize, f: usize, g: usize) -> LaurentPoly {
        let (w1, x1) = self.split(e);
        let (w2, x2) = self.split(f);
        let (w3, x3) = self.split(g);
        if self.omega.mul(x1, x2) != x3 {
            return LaurentPoly::zero();
        }
        self.table.h(w1, self.act(x1, w2), w3)
    }

    pub fn left_cell_id(&self, e: usize) -> usize {
        self.left[e]
    }

    pub fn right_cell_id(&self, e: usize) -> usize {
        self.right[e]
    }

    pub fn two_sided_cell_id(&self, e: usize) -> usize {
        self.two_sided[e]
    }

    pub fn left_cells(&self) -> Vec<Vec<usize>> {
        group_by_id(&self.left)
    }

    pub fn right_cells(&self) -> Vec<Vec<usize>> {
        group_by_id(&self.right)
    }

    pub fn two_sided_cells(&self) -> Vec<Vec<usize>> {
        group_by_id(&self.two_sided)
    }

    /// Left cells contained in the two-sided cell `c`.
    pub fn left_cells_in(&self, c: usize) -> Vec<Vec<usize>> {
        self.left_cells().into_iter().filter(|l| self.two_sided[l[0]] == c).collect()
    }

    pub fn a_value(&self, cell: usize) -> u32 {
        self.a_values[cell]
    }

    pub fn a_function(&self, e: usize) -> u32 {
        self.a_values[self.two_sided[e]]
    }
}

/// Ids are numbered by the smallest member of each class.
fn group_by_id(ids: &[usize]) -> Vec<Vec<usize>> {
    let k = ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut out = vec![Vec::new(); k];
    for (e, &c) in ids.iter().enumerate() {
        out[c].push(e);
    }
    out
}

/// Strongly connected components, numbered by smallest member.
fn scc(adj: &[Vec<u32>]) -> Vec<usize> {
    let n = adj.len();
    // iterative Tarjan
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    let mut ncomp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i] as usize;
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    // renumber by smallest member
    let mut relabel = vec![usize::MAX; ncomp];
    let mut k = 0;
    for e in 0..n {
        if relabel[comp[e]] == usize::MAX {
            relabel[comp[e]] = k;
            k += 1;
        }
    }
    comp.iter().map(|&c| relabel[c]).collect()
}

/// For each extended two-sided cell, the set of base two-sided cells met by
/// its `W`-components; verified to be exactly the `Ω`-orbits on base cells.
pub fn extended_cell_orbits(base: &CellPartition, ext: &CellPartition) -> Result<Vec<Vec<usize>>> {
    if !base.is_plain() || base.table.len() != ext.table.len() {
        return Err(Error::invalid("base partition must be the plain partition of the same Coxeter group"));
    }
    let nbase = base.two_sided_cells().len();
    let mut out = Vec::new();
    let mut seen = vec![false; nbase];
    for cell in ext.two_sided_cells() {
        let mut bases: Vec<usize> = cell.iter().map(|&e| base.two_sided[ext.split(e).0]).collect();
        bases.sort_unstable();
        bases.dedup();
        // Ω-orbit of the first base cell
        let rep = base.two_sided_cells()[bases[0]][0];
        let mut orbit: Vec<usize> = (0..ext.omega.order()).map(|x| base.two_sided[ext.act(x, rep)]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        if orbit != bases {
            return Err(Error::integrity("extended two-sided cell is not an Ω-orbit of base cells"));
        }
        for &b in &bases {
            if std::mem::replace(&mut seen[b], true) {
                return Err(Error::integrity("base cell met by two extended cells"));
            }
        }
        out.push(bases);
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::integrity("base cell not covered by extended cells"));
    }
    Ok(out)
}
