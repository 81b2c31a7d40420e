use std::sync::Arc;

use serde::Serialize;

use super::{fun_count, ModuleCategory};
use crate::error::{check_guard, Error, Result};
use crate::group::{h2_classes, projective_irrep_count_checked, subgroup_classes, FiniteGroup, H2Classes};

pub const MODULE_TABLE_GUARD: usize = 150;

/// One indecomposable module category `(H, [ψ])` of `Rep(G)`.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub order: usize,
    /// Generators of the representative subgroup, in cycle notation.
    pub generators: Vec<String>,
    pub class_size: usize,
    /// Position of the subgroup class in the canonical subgroup ordering.
    pub subgroup_class: usize,
    pub cocycle_class: usize,
    pub trivial_cocycle: bool,
    pub num_m: usize,
    pub num_fun: usize,
    #[serde(skip)]
    pub module: ModuleCategory,
}

/// `H²(H, C*)`, with the modulus grown until its certificate holds.
pub fn h2_auto(h: &Arc<FiniteGroup>) -> Result<H2Classes> {
    let mut primes = Vec::new();
    let mut n = h.order();
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            primes.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    let rad: usize = primes.iter().product::<usize>().max(1);
    let mut modulus = rad;
    loop {
        match h2_classes(h, modulus as u32) {
            Err(Error::ModulusTooSmall { .. }) if modulus < h.order() => modulus *= rad,
            other => return other,
        }
    }
}

/// Rows ordered by `|H|`, then subgroup representative, then cocycle class
/// (trivial first).
pub fn module_category_table(g: &Arc<FiniteGroup>) -> Result<Vec<TableRow>> {
    check_guard("|G| for module category tables", g.order(), MODULE_TABLE_GUARD)?;
    let mut rows = Vec::new();
    for (ci, class) in subgroup_classes(g)?.iter().enumerate() {
        let h = class.representative.clone();
        let h2 = h2_auto(&h)?;
        let generators: Vec<String> = g
            .small_generating_set(&class.members)
            .iter()
            .map(|&x| g.element(x as usize).to_string())
            .collect();
        for (k, psi) in h2.classes().iter().enumerate() {
            let psi = psi.reduced();
            let module = ModuleCategory::new(h.clone(), psi.clone())?;
            let num_m = projective_irrep_count_checked(&psi)?;
            let num_fun = fun_count(g, &module, &module)?;
            rows.push(TableRow {
                order: h.order(),
                generators: generators.clone(),
                class_size: class.class_size,
                subgroup_class: ci,
                cocycle_class: k,
                trivial_cocycle: k == 0,
                num_m,
                num_fun,
                module,
            });
        }
    }
    Ok(rows)
}
