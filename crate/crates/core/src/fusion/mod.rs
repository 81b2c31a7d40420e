//! Counting and based-ring computations for categories built from a finite
//! group: twisted equivariant sheaves, `Fun(M1, M2)` between module
//! categories of `Rep(G)`, convolution rings `K_G(X × X)` and the Drinfeld
//! double.

mod bimodule;
mod convolution;
mod double;
mod table;

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{projective_irrep_count, FiniteGroup, TwoCocycle};

pub use bimodule::fun_ring;
pub use convolution::{convolution_ring, rep_ring, GSet};
pub use double::{drinfeld_double, FourierMatrix};
pub use table::{h2_auto, module_category_table, TableRow, MODULE_TABLE_GUARD};

/// The module category `Rep^ψ(H)` over `Rep(G)`: a subgroup `H` (on the
/// same domain as `G`) with a 2-cocycle on it.
#[derive(Clone, Debug)]
pub struct ModuleCategory {
    pub subgroup: Arc<FiniteGroup>,
    pub cocycle: TwoCocycle,
}

impl ModuleCategory {
    pub fn new(subgroup: Arc<FiniteGroup>, cocycle: TwoCocycle) -> Result<Self> {
        if cocycle.group().elements() != subgroup.elements() {
            return Err(Error::invalid("cocycle is not defined on the subgroup"));
        }
        Ok(ModuleCategory { subgroup, cocycle })
    }

    pub fn untwisted(subgroup: Arc<FiniteGroup>) -> Self {
        let cocycle = TwoCocycle::trivial(subgroup.clone(), 1);
        ModuleCategory { subgroup, cocycle }
    }

    /// Number of simple objects: `ψ`-projective irreducibles of `H`.
    pub fn num_simples(&self) -> usize {
        projective_irrep_count(&self.cocycle)
    }
}

/// A centrally extended `G`-set: orbits `G/H_i` whose stabilizers carry
/// 2-cocycles.
#[derive(Clone, Debug)]
pub struct CExtGSet {
    pub group: Arc<FiniteGroup>,
    pub orbits: Vec<ModuleCategory>,
}

/// Simple twisted equivariant sheaves, in total and per orbit.
pub fn count_simples(x: &CExtGSet) -> Result<(usize, Vec<usize>)> {
    let mut per = Vec::new();
    for o in &x.orbits {
        x.group.embed(&o.subgroup)?;
        per.push(o.num_simples());
    }
    Ok((per.iter().sum(), per))
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Brings two cocycles to a common modulus.
fn common_modulus(a: &TwoCocycle, b: &TwoCocycle) -> Result<(TwoCocycle, TwoCocycle)> {
    let n = lcm(a.modulus(), b.modulus());
    Ok((a.rescale(n)?, b.rescale(n)?))
}

/// `Σ_{H1 g H2} #ψ-projective irreps of K = H1 ∩ g H2 g⁻¹` with
/// `ψ = -ψ1|K + ψ2^g|K` and `ψ2^g(k, k') = ψ2(g⁻¹ k g, g⁻¹ k' g)`
/// (products read left to right).
pub fn fun_count(g: &Arc<FiniteGroup>, m1: &ModuleCategory, m2: &ModuleCategory) -> Result<usize> {
    let (psi1, psi2) = common_modulus(&m1.cocycle, &m2.cocycle)?;
    let h1 = g.embed(&m1.subgroup)?;
    let h2 = g.embed(&m2.subgroup)?;
    let mut total = 0;
    for (rep, _) in g.double_cosets(&h1, &h2) {
        let mut k: Vec<u32> =
            h2.iter().map(|&h| g.conj(rep, h as usize) as u32).filter(|x| h1.binary_search(x).is_ok()).collect();
        k.sort_unstable();
        let kg = g.subgroup(&k);
        let left = psi1.restrict(&kg)?.invert();
        let right = psi2.conjugate(g.element(g.inv(rep)))?.restrict(&kg)?;
        total += projective_irrep_count(&left.baer_sum(&right)?);
    }
    Ok(total)
}

/// The same count from the fixed-point formula for twisted equivariant
/// sheaves on `G` under `H1 × H2`, `(h1, h2)·g = h1 g h2⁻¹`:
/// `(1/|H1||H2|) Σ_g Σ_{a,b ∈ Stab(g), ab = ba} α(a,b)/α(b,a)`.
pub fn fun_count_fixed_points(g: &Arc<FiniteGroup>, m1: &ModuleCategory, m2: &ModuleCategory) -> Result<usize> {
    let (psi1, psi2) = common_modulus(&m1.cocycle, &m2.cocycle)?;
    let n = psi1.modulus() as i64;
    let local = |h: &FiniteGroup| -> Vec<Option<usize>> {
        g.elements().iter().map(|p| h.index_of(p)).collect()
    };
    let (in1, in2) = (local(&m1.subgroup), local(&m2.subgroup));
    let h1: Vec<usize> = (0..g.order()).filter(|&x| in1[x].is_some()).collect();
    let mut sum = Complex64::new(0.0, 0.0);
    for x in 0..g.order() {
        // Stab(x) = {(k, x⁻¹ k x) : k ∈ H1, x⁻¹ k x ∈ H2}
        let xi = g.inv(x);
        let stab: Vec<(usize, usize)> = h1
            .iter()
            .filter_map(|&k| {
                let kk = g.mul(g.mul(xi, k), x);
                in2[kk].map(|j| (in1[k].expect("in H1"), j))
            })
            .collect();
        let alpha = |a: (usize, usize), b: (usize, usize)| -> i64 {
            i64::from(psi2.value(a.1, b.1)) - i64::from(psi1.value(a.0, b.0))
        };
        let h1g = &m1.subgroup;
        for &a in &stab {
            for &b in &stab {
                if h1g.commute(a.0, b.0) && m2.subgroup.commute(a.1, b.1) {
                    let e = (alpha(a, b) - alpha(b, a)).rem_euclid(n);
                    sum += Complex64::from_polar(1.0, std::f64::consts::TAU * e as f64 / n as f64);
                }
            }
        }
    }
    let val = sum / (m1.subgroup.order() * m2.subgroup.order()) as f64;
    let r = val.re.round();
    if (val - Complex64::new(r, 0.0)).norm() > 1e-6 || r < 0.0 {
        return Err(Error::integrity(format!("fixed-point count {val} is not a nonnegative integer")));
    }
    Ok(r as usize)
}

#[cfg(test)]
mod tests;

fn round_multiplicity(m: Complex64) -> Result<u64> {
    let r = m.re.round();
    if (m - Complex64::new(r, 0.0)).norm() > 1e-6 || r < 0.0 {
        return Err(Error::integrity(format!("multiplicity {m} is not a nonnegative integer")));
    }
    Ok(r as u64)
}

/// Builds a based ring from structure constants alone: unit components are
/// the idempotent basis elements and `i*` is the unique `j` with the unit
/// occurring in `t_i t_j`.
fn assemble(labels: Vec<String>, constants: std::collections::BTreeMap<(usize, usize, usize), u64>) -> Result<crate::based_ring::BasedRing> {
    let n = labels.len();
    let get = |i: usize, j: usize, k: usize| constants.get(&(i, j, k)).copied().unwrap_or(0);
    let unit: Vec<usize> = (0..n)
        .filter(|&i| (0..n).all(|k| get(i, i, k) == u64::from(k == i)))
        .collect();
    let involution = (0..n)
        .map(|i| {
            let js: Vec<usize> = (0..n).filter(|&j| unit.iter().any(|&u| get(i, j, u) > 0)).collect();
            match js.as_slice() {
                [j] => Ok(*j),
                _ => Err(Error::integrity(format!("no unique dual for basis element {}", labels[i]))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    crate::based_ring::BasedRing::new(labels, constants, unit, involution)
}
