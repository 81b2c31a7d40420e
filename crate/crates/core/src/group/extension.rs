use std::sync::Arc;

use super::character::character_table;
use super::cohomology::TwoCocycle;
use super::cyclotomic::Cyclotomic;
use super::finite::FiniteGroup;
use super::perm::Perm;
use crate::error::{Error, Result};

/// The group of pairs `(z, h)`, `z ∈ Z/m`, with
/// `(z1,h1)(z2,h2) = (z1+z2+ψ(h1,h2), h1 h2)`, realized by its right regular
/// action on `m·|H|` points.
#[derive(Debug)]
pub struct CentralExtension {
    base: Arc<FiniteGroup>,
    modulus: u32,
    total: Arc<FiniteGroup>,
    pair_index: Vec<u32>,
    projection: Vec<u32>,
    z_of: Vec<u32>,
}

impl CentralExtension {
    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn total(&self) -> &Arc<FiniteGroup> {
        &self.total
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Total-group index of `(z, h)`.
    pub fn pair(&self, z: u32, h: usize) -> usize {
        self.pair_index[(z % self.modulus) as usize * self.base.order() + h] as usize
    }

    /// The generator `(1, e)` of the designated center.
    pub fn center_generator(&self) -> usize {
        self.pair(1, 0)
    }

    pub fn section(&self, h: usize) -> usize {
        self.pair(0, h)
    }

    pub fn project(&self, t: usize) -> usize {
        self.projection[t] as usize
    }

    pub fn central_coordinate(&self, t: usize) -> u32 {
        self.z_of[t]
    }
}

pub fn central_extension_from_cocycle(psi: &TwoCocycle) -> Result<CentralExtension> {
    if !psi.is_cocycle() {
        return Err(Error::invalid("not a cocycle"));
    }
    let h = psi.group().clone();
    let m = psi.modulus();
    let n = h.order();
    let points = m as usize * n;
    let act = |z: u32, g: usize| -> Perm {
        let images: Vec<u32> = (0..points)
            .map(|x| {
                let (z1, h1) = ((x / n) as u32, x % n);
                let z2 = (z1 + z + psi.value(h1, g)) % m;
                z2 * n as u32 + h.mul(h1, g) as u32
            })
            .collect();
        Perm::from_images(images).expect("regular action")
    };
    let mut gens = vec![act(1 % m, 0)];
    gens.extend(h.generator_indices().iter().map(|&g| act(0, g as usize)));
    let total = FiniteGroup::from_permutations(points, gens)?;
    if total.order() != points {
        return Err(Error::integrity("extension has the wrong order"));
    }
    let mut pair_index = vec![0u32; points];
    let mut projection = vec![0u32; points];
    let mut z_of = vec![0u32; points];
    for z in 0..m {
        for g in 0..n {
            let t = total.index_of(&act(z, g)).ok_or_else(|| Error::integrity("pair missing from extension"))?;
            pair_index[z as usize * n + g] = t as u32;
            projection[t] = g as u32;
            z_of[t] = z;
        }
    }
    Ok(CentralExtension { base: h, modulus: m, total, pair_index, projection, z_of })
}

/// Number of irreducibles of the total group on which `(1, e)` acts by `ζ_m^j`.
pub fn irrep_count_with_central_character(ext: &CentralExtension, j: u32) -> Result<usize> {
    let table = character_table(ext.total())?;
    let c = ext.total().class_of(ext.center_generator());
    let e = table.exponent;
    let m = ext.modulus();
    let step = (e / m) as i64;
    Ok(table
        .values
        .iter()
        .filter(|row| {
            let d = row[0].as_integer().unwrap_or(0);
            row[c].exact_eq(&Cyclotomic::root(e, step * j as i64).scale(d))
        })
        .count())
}
