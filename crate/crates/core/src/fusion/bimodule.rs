use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use num_complex::Complex64;

use super::{assemble, round_multiplicity, ModuleCategory};
use crate::based_ring::BasedRing;
use crate::error::{Error, Result};
use crate::group::{central_extension_from_cocycle, character_table, FiniteGroup, Perm};

/// Stabilizer of `g` in `A × A` acting by `(a, b)·g = π(a) g π(b)⁻¹`,
/// with its admissible irreducible characters.
struct Stabilizer {
    pairs: HashMap<(u32, u32), u32>,
    order: usize,
    irreps: Vec<Vec<Complex64>>,
}

/// The Grothendieck ring of `Fun_{Rep G}(M, M)` for `M = Rep^ψ(H)`, as
/// `Ã`-bimodules in `Vec_G`, where `Ã → H` is the central extension
/// defined by `ψ` and the central generator acts by `ζ` on the left and by
/// `ζ⁻¹` through the right action. Bimodule tensor products are evaluated
/// on characters: for `(a, b)` fixing `g`,
/// `χ_{F1 ⊗_Ã F2}((a,b), g) = (1/|Ã|) Σ_{g1} Σ_{c} χ1((a,c), g1) χ2((c,b), g1⁻¹g)`.
pub fn fun_ring(g: &Arc<FiniteGroup>, m: &ModuleCategory) -> Result<BasedRing> {
    let ext = central_extension_from_cocycle(&m.cocycle)?;
    let a_grp = ext.total().clone();
    let na = a_grp.order();
    let modulus = ext.modulus();
    let zeta = Complex64::from_polar(1.0, std::f64::consts::TAU / modulus as f64);
    let h = &m.subgroup;
    let proj: Vec<usize> = (0..na)
        .map(|a| g.index_of(h.element(ext.project(a))).ok_or_else(|| Error::invalid("subgroup not in G")))
        .collect::<Result<_>>()?;
    let mut lifts = vec![Vec::new(); g.order()];
    for (a, &p) in proj.iter().enumerate() {
        lifts[p].push(a);
    }
    let hm = g.embed(h)?;
    let cosets = g.double_cosets(&hm, &hm);
    let mut orbit_of = vec![usize::MAX; g.order()];
    let mut transporter = vec![(0usize, 0usize); g.order()];
    for (o, (rep, _)) in cosets.iter().enumerate() {
        for a in 0..na {
            let left = g.mul(proj[a], *rep);
            for &hh in &hm {
                let t2 = ext.section(h.index_of(g.element(hh as usize)).expect("in H"));
                let x = g.mul(left, g.inv(proj[t2]));
                if orbit_of[x] == usize::MAX {
                    orbit_of[x] = o;
                    transporter[x] = (a, t2);
                }
            }
        }
    }
    let d = a_grp.degree();
    let zl = (ext.center_generator() as u32, 0u32);
    let zr = (0u32, ext.center_generator() as u32);
    let stabs: Vec<Stabilizer> = cosets
        .iter()
        .map(|(rep, _)| {
            let mut pairs = Vec::new();
            for a in 0..na {
                let y = g.mul(g.mul(g.inv(*rep), proj[a]), *rep);
                for &b in &lifts[y] {
                    pairs.push((a as u32, b as u32));
                }
            }
            let to_perm = |(a, b): (u32, u32)| -> Perm {
                let mut images: Vec<u32> = a_grp.element(a as usize).extend_to(d).images().to_vec();
                images.extend(a_grp.element(b as usize).extend_to(d).images().iter().map(|x| x + d as u32));
                Perm::from_images(images).expect("disjoint union of permutations")
            };
            // greedy generators, closure tracked on pairs
            let mul = |x: (u32, u32), y: (u32, u32)| {
                (a_grp.mul(x.0 as usize, y.0 as usize) as u32, a_grp.mul(x.1 as usize, y.1 as usize) as u32)
            };
            let mut inside: HashSet<(u32, u32)> = [(0, 0)].into_iter().collect();
            let mut gens = Vec::new();
            for &p in &pairs {
                if inside.contains(&p) {
                    continue;
                }
                gens.push(p);
                let mut queue: Vec<(u32, u32)> = inside.iter().copied().collect();
                while let Some(x) = queue.pop() {
                    for &s in &gens {
                        let y = mul(x, s);
                        if inside.insert(y) {
                            queue.push(y);
                        }
                    }
                }
            }
            if inside.len() != pairs.len() {
                return Err(Error::integrity("bimodule stabilizer is not closed"));
            }
            let grp = FiniteGroup::from_closed(
                2 * d,
                gens.iter().map(|&p| to_perm(p)).collect(),
                pairs.iter().map(|&p| to_perm(p)).collect(),
            );
            let index: HashMap<(u32, u32), u32> = pairs
                .iter()
                .map(|&p| (p, grp.index_of(&to_perm(p)).expect("element of the stabilizer") as u32))
                .collect();
            let table = character_table(&grp)?;
            let (kl, kr) = (index[&zl] as usize, index[&zr] as usize);
            let irreps = (0..table.num_irreps())
                .filter(|&r| {
                    let dim = table.value_complex(r, 0);
                    (table.value_complex(r, grp.class_of(kl)) - zeta * dim).norm() < 1e-9
                        && (table.value_complex(r, grp.class_of(kr)) - zeta.conj() * dim).norm() < 1e-9
                })
                .map(|r| (0..grp.order()).map(|k| table.value_complex(r, grp.class_of(k))).collect())
                .collect();
            Ok(Stabilizer { pairs: index, order: grp.order(), irreps })
        })
        .collect::<Result<_>>()?;

    let simples: Vec<(usize, usize)> =
        stabs.iter().enumerate().flat_map(|(o, s)| (0..s.irreps.len()).map(move |r| (o, r))).collect();
    let index: BTreeMap<(usize, usize), usize> = simples.iter().enumerate().map(|(i, &s)| (s, i)).collect();

    // χ_F(s, x) for s ∈ Stab(x), through the transporter of x
    let chi = |f: (usize, usize), s: (usize, usize), x: usize| -> Complex64 {
        if orbit_of[x] != f.0 {
            return Complex64::new(0.0, 0.0);
        }
        let (t1, t2) = transporter[x];
        let c1 = a_grp.mul(a_grp.mul(a_grp.inv(t1), s.0), t1);
        let c2 = a_grp.mul(a_grp.mul(a_grp.inv(t2), s.1), t2);
        let st = &stabs[f.0];
        st.irreps[f.1][st.pairs[&(c1 as u32, c2 as u32)] as usize]
    };

    let mut constants = BTreeMap::new();
    for (i, &f1) in simples.iter().enumerate() {
        let support1: Vec<usize> = (0..g.order()).filter(|&x| orbit_of[x] == f1.0).collect();
        for (j, &f2) in simples.iter().enumerate() {
            for (o3, st3) in stabs.iter().enumerate() {
                let g3 = cosets[o3].0;
                let mut vals = vec![Complex64::new(0.0, 0.0); st3.order];
                for (&(a, b), &k) in &st3.pairs {
                    let (a, b) = (a as usize, b as usize);
                    let mut acc = Complex64::new(0.0, 0.0);
                    for &g1 in &support1 {
                        let g2 = g.mul(g.inv(g1), g3);
                        if orbit_of[g2] != f2.0 {
                            continue;
                        }
                        let y = g.mul(g.mul(g.inv(g1), proj[a]), g1);
                        for &c in &lifts[y] {
                            acc += chi(f1, (a, c), g1) * chi(f2, (c, b), g2);
                        }
                    }
                    vals[k as usize] = acc / na as f64;
                }
                for (r3, irr) in st3.irreps.iter().enumerate() {
                    let mult: Complex64 =
                        vals.iter().zip(irr).map(|(v, c)| v * c.conj()).sum::<Complex64>() / st3.order as f64;
                    let c = round_multiplicity(mult)?;
                    if c > 0 {
                        constants.insert((i, j, index[&(o3, r3)]), c);
                    }
                }
            }
        }
    }
    let labels = simples.iter().map(|&(o, r)| format!("{}:{}", g.element(cosets[o].0), r)).collect();
    let ring = assemble(labels, constants)?;
    if ring.unit_components().len() != 1 {
        return Err(Error::integrity("Fun(M, M) must have a simple unit"));
    }
    Ok(ring)
}
