use std::collections::BTreeMap;

use super::CellPartition;
use crate::based_ring::BasedRing;
use crate::error::{Error, Result};

/// `γ_{x,y,z}`: the coefficient of `v^{-a}` in `h_{x,y,z}`.
fn gamma(p: &CellPartition, x: usize, y: usize, z: usize, a: u32) -> i64 {
    p.h(x, y, z).coeff(-(a as i32))
}

/// One distinguished involution per left cell of the two-sided cell `cell`:
/// the unique `d ∈ Γ` with `d = d⁻¹` and `γ_{x⁻¹,x,d} = 1` for all `x ∈ Γ`.
pub fn distinguished_involutions(p: &CellPartition, cell: usize) -> Result<Vec<usize>> {
    let a = p.a_value(cell);
    let mut out = Vec::new();
    for gamma_cell in p.left_cells_in(cell) {
        let found: Vec<usize> = gamma_cell
            .iter()
            .copied()
            .filter(|&d| p.inverse(d) == d)
            .filter(|&d| gamma_cell.iter().all(|&x| gamma(p, p.inverse(x), x, d, a) == 1))
            .collect();
        match found.as_slice() {
            [d] => out.push(*d),
            _ => {
                return Err(Error::integrity(format!(
                    "left cell of {} has {} distinguished involution candidates",
                    p.label(gamma_cell[0]),
                    found.len()
                )))
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// The J-ring on `subset` (a two-sided cell, or `Γ ∩ Γ⁻¹`), with basis in
/// the given order.
pub fn j_ring(p: &CellPartition, subset: &[usize]) -> Result<BasedRing> {
    if subset.is_empty() {
        return Err(Error::invalid("empty J-ring subset"));
    }
    let cell = p.two_sided_cell_id(subset[0]);
    if subset.iter().any(|&e| p.two_sided_cell_id(e) != cell) {
        return Err(Error::invalid("J-ring subset must lie in one two-sided cell"));
    }
    let a = p.a_value(cell);
    let pos: BTreeMap<usize, usize> = subset.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut constants = BTreeMap::new();
    for (i, &x) in subset.iter().enumerate() {
        for (j, &y) in subset.iter().enumerate() {
            for (z, h) in p.product(x, y) {
                let c = h.coeff(-(a as i32));
                // lower cells can reach degree a(c) too; they are not part of J
                if c == 0 || p.two_sided_cell_id(z) != cell {
                    continue;
                }
                let k = *pos
                    .get(&z)
                    .ok_or_else(|| Error::integrity(format!("γ leaves the subset at {}", p.label(z))))?;
                if c < 0 {
                    return Err(Error::integrity("negative γ"));
                }
                constants.insert((i, j, k), c as u64);
            }
        }
    }
    let dist = distinguished_involutions(p, cell)?;
    let unit = dist.iter().filter_map(|d| pos.get(d).copied()).collect();
    let involution = subset
        .iter()
        .map(|&e| pos.get(&p.inverse(e)).copied().ok_or_else(|| Error::invalid("J-ring subset not closed under inversion")))
        .collect::<Result<Vec<_>>>()?;
    let labels = subset.iter().map(|&e| p.label(e)).collect();
    BasedRing::new(labels, constants, unit, involution)
}
