use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use super::assemble;
use crate::based_ring::BasedRing;
use crate::error::{check_guard, Error, Result};
use crate::group::{character_table, FiniteGroup};

/// A plain finite `G`-set `⊔ G/H_i`, each `H_i` a subgroup on `G`'s domain.
#[derive(Clone, Debug)]
pub struct GSet {
    pub group: Arc<FiniteGroup>,
    pub stabilizers: Vec<Arc<FiniteGroup>>,
}

impl GSet {
    pub fn new(group: Arc<FiniteGroup>, stabilizers: Vec<Arc<FiniteGroup>>) -> Result<Self> {
        for h in &stabilizers {
            group.embed(h)?;
        }
        Ok(GSet { group, stabilizers })
    }

    pub fn point(group: Arc<FiniteGroup>) -> Self {
        let g = group.clone();
        GSet { group, stabilizers: vec![g] }
    }

    pub fn len(&self) -> usize {
        self.stabilizers.iter().map(|h| self.group.order() / h.order()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.stabilizers.is_empty()
    }

    /// `act[g][p]` for the points `(orbit, coset)` numbered orbit by orbit.
    fn action(&self) -> Result<(Vec<Vec<u32>>, Vec<usize>)> {
        let g = &self.group;
        let mut coset_of: Vec<Vec<u32>> = Vec::new();
        let mut orbit_of_point = Vec::new();
        let mut offset = 0u32;
        for (i, h) in self.stabilizers.iter().enumerate() {
            let hm = g.embed(h)?;
            let mut ids: BTreeMap<usize, u32> = BTreeMap::new();
            let mut map = vec![0u32; g.order()];
            for x in 0..g.order() {
                let key = hm.iter().map(|&k| g.mul(x, k as usize)).min().expect("nonempty subgroup");
                let next = offset + ids.len() as u32;
                let id = *ids.entry(key).or_insert(next);
                map[x] = id;
            }
            offset += ids.len() as u32;
            orbit_of_point.extend(std::iter::repeat_n(i, ids.len()));
            coset_of.push(map);
        }
        let npts = offset as usize;
        // a representative element for each point
        let mut rep = vec![usize::MAX; npts];
        for map in &coset_of {
            for (x, &p) in map.iter().enumerate() {
                if rep[p as usize] == usize::MAX {
                    rep[p as usize] = x;
                }
            }
        }
        let act = (0..g.order())
            .map(|a| {
                (0..npts)
                    .map(|p| coset_of[orbit_of_point[p]][g.mul(a, rep[p])])
                    .collect()
            })
            .collect();
        Ok((act, orbit_of_point))
    }
}

/// Per-orbit data of a groupoid `G ⋉ P`.
struct OrbitData {
    stab: Arc<FiniteGroup>,
    /// `G`-index → stabilizer index.
    local: Vec<Option<u32>>,
    /// `irreps[r][k]`: value on stabilizer element `k`.
    irreps: Vec<Vec<Complex64>>,
}

fn orbit_data(g: &FiniteGroup, members: Vec<u32>) -> Result<OrbitData> {
    let stab = g.subgroup(&members);
    let table = character_table(&stab)?;
    let irreps = (0..table.num_irreps())
        .map(|r| (0..stab.order()).map(|k| table.value_complex(r, stab.class_of(k))).collect())
        .collect();
    let local = g.elements().iter().map(|p| stab.index_of(p).map(|i| i as u32)).collect();
    Ok(OrbitData { stab, local, irreps })
}

/// `K_G(X × X)`: simple `G`-equivariant sheaves on `X × X` (an orbit and an
/// irreducible of a stabilizer) under convolution, computed with groupoid
/// characters.
pub fn convolution_ring(x: &GSet) -> Result<BasedRing> {
    let g = &x.group;
    check_guard("|G| for convolution rings", g.order(), 300)?;
    check_guard("|X| for convolution rings", x.len(), 120)?;
    let (act, _) = x.action()?;
    let npts = x.len();
    let gens = g.generator_indices();
    // orbits of G on X × X with transporters: t·rep = (p, q)
    let mut orbit_of = vec![usize::MAX; npts * npts];
    let mut transporter = vec![0usize; npts * npts];
    let mut reps = Vec::new();
    for start in 0..npts * npts {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let o = reps.len();
        reps.push(start);
        orbit_of[start] = o;
        transporter[start] = 0;
        let mut queue = vec![start];
        while let Some(pq) = queue.pop() {
            let (p, q) = (pq / npts, pq % npts);
            for &s in &gens {
                let s = s as usize;
                let img = act[s][p] as usize * npts + act[s][q] as usize;
                if orbit_of[img] == usize::MAX {
                    orbit_of[img] = o;
                    transporter[img] = g.mul(s, transporter[pq]);
                    queue.push(img);
                }
            }
        }
    }
    let data: Vec<OrbitData> = reps
        .iter()
        .map(|&pq| {
            let (p, q) = (pq / npts, pq % npts);
            let members = (0..g.order())
                .filter(|&a| act[a][p] as usize == p && act[a][q] as usize == q)
                .map(|a| a as u32)
                .collect();
            orbit_data(g, members)
        })
        .collect::<Result<_>>()?;
    let simples: Vec<(usize, usize)> =
        data.iter().enumerate().flat_map(|(o, d)| (0..d.irreps.len()).map(move |r| (o, r))).collect();
    let index: BTreeMap<(usize, usize), usize> = simples.iter().enumerate().map(|(i, &s)| (s, i)).collect();

    // χ_F(a, (p, q)) for `a` fixing (p, q)
    let chi = |f: (usize, usize), a: usize, pq: usize| -> Complex64 {
        if orbit_of[pq] != f.0 {
            return Complex64::new(0.0, 0.0);
        }
        let t = transporter[pq];
        let s = g.mul(g.mul(g.inv(t), a), t);
        let d = &data[f.0];
        d.irreps[f.1][d.local[s].expect("conjugate lands in the stabilizer") as usize]
    };

    let mut constants = BTreeMap::new();
    for (i, &f1) in simples.iter().enumerate() {
        for (j, &f2) in simples.iter().enumerate() {
            for (o3, d3) in data.iter().enumerate() {
                let (px, pz) = (reps[o3] / npts, reps[o3] % npts);
                // product character on the stabilizer of the orbit representative
                let vals: Vec<Complex64> = d3
                    .stab
                    .elements()
                    .iter()
                    .map(|e| {
                        let a = g.index_of(e).expect("subgroup element");
                        (0..npts)
                            .filter(|&y| act[a][y] as usize == y)
                            .map(|y| chi(f1, a, px * npts + y) * chi(f2, a, y * npts + pz))
                            .sum()
                    })
                    .collect();
                for (r3, irr) in d3.irreps.iter().enumerate() {
                    let m: Complex64 =
                        vals.iter().zip(irr).map(|(v, c)| v * c.conj()).sum::<Complex64>() / d3.stab.order() as f64;
                    let c = super::round_multiplicity(m)?;
                    if c > 0 {
                        constants.insert((i, j, index[&(o3, r3)]), c);
                    }
                }
            }
        }
    }
    let labels = simples
        .iter()
        .map(|&(o, r)| format!("({},{}):{}", reps[o] / npts, reps[o] % npts, r))
        .collect();
    let ring = assemble(labels, constants)?;
    // units must be the trivial sheaves on diagonal orbits
    let expected: Vec<usize> = simples
        .iter()
        .enumerate()
        .filter(|(_, &(o, r))| r == 0 && reps[o] / npts == reps[o] % npts)
        .map(|(i, _)| i)
        .collect();
    if ring.unit_components() != expected.as_slice() {
        return Err(Error::integrity("convolution unit is not the sum of diagonal trivial sheaves"));
    }
    Ok(ring)
}

/// The Grothendieck ring of `Rep(G)`, as `K_G(pt × pt)`.
pub fn rep_ring(g: &Arc<FiniteGroup>) -> Result<BasedRing> {
    convolution_ring(&GSet::point(g.clone()))
}
