//! Based rings: a free `Z`-module with basis `t_i`, nonnegative structure
//! constants `t_i t_j = Σ_k γ_ijk t_k`, a unit `Σ_{u ∈ U} t_u` and a basis
//! involution `i ↦ i*`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{check_guard, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct BasedRing {
    labels: Vec<String>,
    /// `products[i * n + j]`: nonzero `(k, γ_ijk)` sorted by `k`.
    products: Vec<Vec<(u32, u64)>>,
    unit: Vec<usize>,
    involution: Vec<usize>,
}

/// JSON shape: sparse structure constants as `[i, j, k, γ]` quadruples.
#[derive(Serialize, Deserialize)]
struct BasedRingJson {
    labels: Vec<String>,
    unit_components: Vec<usize>,
    involution: Vec<usize>,
    structure: Vec<[u64; 4]>,
}

impl Serialize for BasedRing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.rank();
        let mut structure = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for &(k, c) in self.product(i, j) {
                    structure.push([i as u64, j as u64, k as u64, c]);
                }
            }
        }
        BasedRingJson {
            labels: self.labels.clone(),
            unit_components: self.unit.clone(),
            involution: self.involution.clone(),
            structure,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BasedRing {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = BasedRingJson::deserialize(d)?;
        let n = j.labels.len();
        let mut constants = BTreeMap::new();
        for [i, jj, k, c] in j.structure {
            if i as usize >= n || jj as usize >= n || k as usize >= n {
                return Err(serde::de::Error::custom("structure constant index out of range"));
            }
            *constants.entry((i as usize, jj as usize, k as usize)).or_insert(0) += c;
        }
        BasedRing::new(j.labels, constants, j.unit_components, j.involution).map_err(serde::de::Error::custom)
    }
}

impl BasedRing {
    /// Builds and validates a based ring; axiom failures are integrity errors.
    pub fn new(
        labels: Vec<String>,
        constants: BTreeMap<(usize, usize, usize), u64>,
        unit: Vec<usize>,
        involution: Vec<usize>,
    ) -> Result<BasedRing> {
        let n = labels.len();
        let mut products = vec![Vec::new(); n * n];
        for ((i, j, k), c) in constants {
            if c != 0 {
                products[i * n + j].push((k as u32, c));
            }
        }
        let mut unit = unit;
        unit.sort_unstable();
        unit.dedup();
        let r = BasedRing { labels, products, unit, involution };
        r.check_axioms()?;
        Ok(r)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn product(&self, i: usize, j: usize) -> &[(u32, u64)] {
        &self.products[i * self.rank() + j]
    }

    pub fn gamma(&self, i: usize, j: usize, k: usize) -> u64 {
        self.product(i, j).iter().find(|(kk, _)| *kk as usize == k).map_or(0, |(_, c)| *c)
    }

    /// Basis elements summing to the unit.
    pub fn unit_components(&self) -> &[usize] {
        &self.unit
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    pub fn check_axioms(&self) -> Result<()> {
        let n = self.rank();
        let fail = |what: &str| Err(Error::integrity(format!("based ring axiom failed: {what}")));
        if self.involution.len() != n
            || self.involution.iter().any(|&i| i >= n)
            || (0..n).any(|i| self.involution[self.involution[i]] != i)
        {
            return fail("involution is not an involutive permutation");
        }
        if self.unit.is_empty() || self.unit.iter().any(|&u| u >= n) {
            return fail("no unit components");
        }
        for &u in &self.unit {
            if !self.unit.contains(&self.involution[u]) {
                return fail("involution moves the unit");
            }
        }
        // unit
        for i in 0..n {
            let mut left = BTreeMap::new();
            let mut right = BTreeMap::new();
            for &u in &self.unit {
                for &(k, c) in self.product(u, i) {
                    *left.entry(k as usize).or_insert(0) += c;
                }
                for &(k, c) in self.product(i, u) {
                    *right.entry(k as usize).or_insert(0) += c;
                }
            }
            let expect: BTreeMap<usize, u64> = [(i, 1)].into_iter().collect();
            if left != expect || right != expect {
                return fail(&format!("unit does not act trivially on {}", self.labels[i]));
            }
        }
        // anti-automorphism and the trace rule τ(t_i t_j) = δ_{i, j*}
        let inv = &self.involution;
        for i in 0..n {
            for j in 0..n {
                for &(k, c) in self.product(i, j) {
                    if self.gamma(inv[j], inv[i], inv[k as usize]) != c {
                        return fail("involution is not an anti-automorphism");
                    }
                }
                let tau: u64 = self.unit.iter().map(|&u| self.gamma(i, j, u)).sum();
                if tau != u64::from(inv[i] == j) {
                    return fail("unit coefficient of t_i t_j is not δ_{i,j*}");
                }
            }
        }
        // associativity
        for i in 0..n {
            for j in 0..n {
                let ij = self.product(i, j);
                for k in 0..n {
                    let mut left: BTreeMap<u32, u64> = BTreeMap::new();
                    for &(m, c) in ij {
                        for &(l, d) in self.product(m as usize, k) {
                            *left.entry(l).or_insert(0) += c * d;
                        }
                    }
                    let mut right: BTreeMap<u32, u64> = BTreeMap::new();
                    for &(m, c) in self.product(j, k) {
                        for &(l, d) in self.product(i, m as usize) {
                            *right.entry(l).or_insert(0) += c * d;
                        }
                    }
                    if left != right {
                        return fail("associativity");
                    }
                }
            }
        }
        Ok(())
    }

    /// Connected blocks of the basis (under "appears in a product with").
    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for i in 0..n {
            for j in 0..n {
                for &(k, _) in self.product(i, j) {
                    for a in [i, j] {
                        let (ra, rk) = (find(&mut parent, a), find(&mut parent, k as usize));
                        parent[ra] = rk;
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Frobenius–Perron dimensions, computed per indecomposable block as the
    /// Perron vector of `A_jk = Σ_i γ_ijk` (power iteration on `A + I`),
    /// scaled so a unit component of the block has dimension 1. Also returns
    /// the total `Σ d_i^2` of each block.
    pub fn fpdim(&self) -> FpDims {
        let n = self.rank();
        let mut dims = vec![0.0f64; n];
        let mut totals = Vec::new();
        for comp in self.components() {
            let pos: BTreeMap<usize, usize> = comp.iter().enumerate().map(|(a, &i)| (i, a)).collect();
            let m = comp.len();
            let mut a = vec![vec![0.0f64; m]; m];
            for &i in &comp {
                for &j in &comp {
                    for &(k, c) in self.product(i, j) {
                        if let Some(&kk) = pos.get(&(k as usize)) {
                            a[pos[&j]][kk] += c as f64;
                        }
                    }
                }
            }
            for (r, row) in a.iter_mut().enumerate() {
                row[r] += 1.0;
            }
            let mut v = vec![1.0f64; m];
            let mut lambda = 0.0;
            for _ in 0..100_000 {
                let w: Vec<f64> = (0..m).map(|r| (0..m).map(|c| a[r][c] * v[c]).sum()).collect();
                let norm = w.iter().cloned().fold(0.0, f64::max);
                let next: Vec<f64> = w.iter().map(|x| x / norm).collect();
                let delta = next.iter().zip(&v).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                v = next;
                // Rayleigh quotient for the eigenvalue
                let av: Vec<f64> = (0..m).map(|r| (0..m).map(|c| a[r][c] * v[c]).sum()).collect();
                lambda = av.iter().zip(&v).map(|(x, y)| x * y).sum::<f64>() / v.iter().map(|x| x * x).sum::<f64>();
                if delta < 1e-14 {
                    break;
                }
            }
            let _ = lambda;
            let unit_here = comp.iter().find(|i| self.unit.contains(i)).copied().unwrap_or(comp[0]);
            let scale = v[pos[&unit_here]];
            for (a_idx, &i) in comp.iter().enumerate() {
                dims[i] = v[a_idx] / scale;
            }
            totals.push(comp.iter().map(|&i| dims[i] * dims[i]).sum());
        }
        FpDims { dims, totals }
    }

    /// Smallest set of basis elements containing `seed` and the unit,
    /// closed under products and the involution.
    pub fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = seed.iter().copied().chain(self.unit.iter().copied()).collect();
        loop {
            let mut grown = set.clone();
            for &i in &set {
                grown.insert(self.involution[i]);
                for &j in &set {
                    grown.extend(self.product(i, j).iter().map(|(k, _)| *k as usize));
                }
            }
            if grown.len() == set.len() {
                return set.into_iter().collect();
            }
            set = grown;
        }
    }

    /// All based subrings (as sorted basis subsets), smallest first, with
    /// their FP-dimension totals.
    pub fn based_subrings(&self) -> Result<Vec<(Vec<usize>, f64)>> {
        if self.rank() > 20 {
            return Err(Error::Guard { name: "based ring rank", limit: 20, value: self.rank() });
        }
        let dims = self.fpdim().dims;
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let start = self.closure(&[]);
        let mut frontier = vec![start.clone()];
        found.insert(start);
        while let Some(s) = frontier.pop() {
            for i in 0..self.rank() {
                if s.binary_search(&i).is_ok() {
                    continue;
                }
                let mut seed = s.clone();
                seed.push(i);
                let c = self.closure(&seed);
                if found.insert(c.clone()) {
                    frontier.push(c);
                }
            }
        }
        let mut out: Vec<(Vec<usize>, f64)> =
            found.into_iter().map(|s| {
                let d = s.iter().map(|&i| dims[i] * dims[i]).sum();
                (s, d)
            }).collect();
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        Ok(out)
    }

    /// Subring restricted to a closed basis subset.
    pub fn restrict(&self, subset: &[usize]) -> Result<BasedRing> {
        let pos: BTreeMap<usize, usize> = subset.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        let mut constants = BTreeMap::new();
        for &i in subset {
            for &j in subset {
                for &(k, c) in self.product(i, j) {
                    let kk = pos
                        .get(&(k as usize))
                        .ok_or_else(|| Error::invalid("subset is not closed under multiplication"))?;
                    constants.insert((pos[&i], pos[&j], *kk), c);
                }
            }
        }
        let labels = subset.iter().map(|&i| self.labels[i].clone()).collect();
        let unit = self.unit.iter().filter_map(|u| pos.get(u).copied()).collect();
        let involution = subset
            .iter()
            .map(|&i| pos.get(&self.involution[i]).copied().ok_or_else(|| Error::invalid("subset not closed under the involution")))
            .collect::<Result<_>>()?;
        BasedRing::new(labels, constants, unit, involution)
    }
}

#[derive(Clone, Debug)]
pub struct FpDims {
    pub dims: Vec<f64>,
    /// `Σ d_i^2` per indecomposable block.
    pub totals: Vec<f64>,
}

impl FpDims {
    pub fn total(&self) -> f64 {
        self.totals.iter().sum()
    }
}

pub fn unit_decomposition(r: &BasedRing) -> Vec<usize> {
    r.unit_components().to_vec()
}

/// An isomorphism of based rings `σ: basis(a) -> basis(b)` preserving the
/// unit, the involution and all structure constants, or `None` after an
/// exhaustive search.
pub fn based_ring_iso(a: &BasedRing, b: &BasedRing) -> Result<Option<Vec<usize>>> {
    let n = a.rank();
    if n != b.rank() || a.unit.len() != b.unit.len() {
        return Ok(None);
    }
    check_guard("based ring rank", n, 40)?;
    let (ia, ib) = (invariants(a), invariants(b));
    let mut cands: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| ia[i] == ib[j]).collect()).collect();
    if cands.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    // most constrained first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (cands[i].len(), i));
    for c in cands.iter_mut() {
        c.sort_unstable();
    }
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(a, b, &order, &cands, 0, &mut sigma, &mut used) {
        Ok(Some(sigma))
    } else {
        Ok(None)
    }
}

type Invariant = (bool, i64, bool, u64, u64, usize, Vec<u64>);

fn invariants(r: &BasedRing) -> Vec<Invariant> {
    let dims = r.fpdim().dims;
    (0..r.rank())
        .map(|i| {
            let sq: u64 = r.product(i, i).iter().map(|(_, c)| c).sum();
            let mut row: Vec<u64> = (0..r.rank()).map(|j| r.product(i, j).iter().map(|(_, c)| c).sum()).collect();
            row.sort_unstable();
            (
                r.unit.contains(&i),
                (dims[i] * 1e6).round() as i64,
                r.involution[i] == i,
                r.gamma(i, i, i),
                sq,
                r.product(i, r.involution[i]).len(),
                row,
            )
        })
        .collect()
}

fn consistent(a: &BasedRing, b: &BasedRing, sigma: &[usize], i: usize) -> bool {
    let inv_a = &a.involution;
    let inv_b = &b.involution;
    let si = sigma[i];
    if sigma[inv_a[i]] != usize::MAX && sigma[inv_a[i]] != inv_b[si] {
        return false;
    }
    // compare all products among assigned elements that involve i
    for j in 0..a.rank() {
        let sj = sigma[j];
        if sj == usize::MAX {
            continue;
        }
        for (x, y) in [(i, j), (j, i)] {
            let (sx, sy) = (sigma[x], sigma[y]);
            let pa = a.product(x, y);
            let pb = b.product(sx, sy);
            if pa.len() != pb.len() {
                return false;
            }
            let sa: u64 = pa.iter().map(|(_, c)| c).sum();
            let sb: u64 = pb.iter().map(|(_, c)| c).sum();
            if sa != sb {
                return false;
            }
            for &(k, c) in pa {
                let sk = sigma[k as usize];
                if sk != usize::MAX && b.gamma(sx, sy, sk) != c {
                    return false;
                }
            }
        }
    }
    true
}

fn search(
    a: &BasedRing,
    b: &BasedRing,
    order: &[usize],
    cands: &[Vec<usize>],
    depth: usize,
    sigma: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return full_check(a, b, sigma);
    }
    let i = order[depth];
    for &j in &cands[i] {
        if used[j] {
            continue;
        }
        sigma[i] = j;
        used[j] = true;
        if consistent(a, b, sigma, i) && search(a, b, order, cands, depth + 1, sigma, used) {
            return true;
        }
        used[j] = false;
        sigma[i] = usize::MAX;
    }
    false
}

fn full_check(a: &BasedRing, b: &BasedRing, sigma: &[usize]) -> bool {
    let n = a.rank();
    (0..n).all(|i| sigma[a.involution[i]] == b.involution[sigma[i]])
        && a.unit.iter().all(|&u| b.unit.contains(&sigma[u]))
        && (0..n).all(|i| {
            (0..n).all(|j| {
                let mut pa: Vec<(usize, u64)> = a.product(i, j).iter().map(|&(k, c)| (sigma[k as usize], c)).collect();
                pa.sort_unstable();
                let pb: Vec<(usize, u64)> = b.product(sigma[i], sigma[j]).iter().map(|&(k, c)| (k as usize, c)).collect();
                pa == pb
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `Z[Z/n]` with basis `0..n`.
    fn cyclic_ring(n: usize) -> BasedRing {
        let mut c = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                c.insert((i, j, (i + j) % n), 1);
            }
        }
        BasedRing::new(
            (0..n).map(|i| format!("g{i}")).collect(),
            c,
            vec![0],
            (0..n).map(|i| (n - i) % n).collect(),
        )
        .unwrap()
    }

    fn klein_ring() -> BasedRing {
        let mut c = BTreeMap::new();
        for i in 0..4 {
            for j in 0..4 {
                c.insert((i, j, i ^ j), 1);
            }
        }
        BasedRing::new((0..4).map(|i| format!("k{i}")).collect(), c, vec![0], (0..4).collect()).unwrap()
    }

    /// Rep(S3): 1, sgn, V with V⊗V = 1 + sgn + V.
    fn rep_s3() -> BasedRing {
        let mut c = BTreeMap::new();
        c.insert((0, 0, 0), 1);
        c.insert((0, 1, 1), 1);
        c.insert((1, 0, 1), 1);
        c.insert((0, 2, 2), 1);
        c.insert((2, 0, 2), 1);
        c.insert((1, 1, 0), 1);
        c.insert((1, 2, 2), 1);
        c.insert((2, 1, 2), 1);
        c.insert((2, 2, 0), 1);
        c.insert((2, 2, 1), 1);
        c.insert((2, 2, 2), 1);
        BasedRing::new(vec!["1".into(), "sgn".into(), "V".into()], c, vec![0], vec![0, 1, 2]).unwrap()
    }

    #[test]
    fn fp_dims() {
        let d = cyclic_ring(5).fpdim();
        assert!(d.dims.iter().all(|x| (x - 1.0).abs() < 1e-10));
        assert!((d.total() - 5.0).abs() < 1e-10);
        let d = rep_s3().fpdim();
        assert!((d.dims[2] - 2.0).abs() < 1e-10);
        assert!((d.total() - 6.0).abs() < 1e-10);
    }

    #[test]
    fn subrings() {
        let s = cyclic_ring(2).based_subrings().unwrap();
        assert_eq!(s.len(), 2);
        let s = rep_s3().based_subrings().unwrap();
        assert_eq!(s.iter().map(|(x, _)| x.len()).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(cyclic_ring(6).based_subrings().unwrap().len(), 4);
    }

    #[test]
    fn isomorphisms() {
        let r = rep_s3();
        assert_eq!(based_ring_iso(&r, &r).unwrap(), Some(vec![0, 1, 2]));
        assert_eq!(based_ring_iso(&cyclic_ring(4), &klein_ring()).unwrap(), None);
        assert!(based_ring_iso(&cyclic_ring(4), &cyclic_ring(4)).unwrap().is_some());
    }

    #[test]
    fn axioms_reject_bad_rings() {
        let mut c = BTreeMap::new();
        c.insert((0, 0, 0), 1);
        c.insert((0, 1, 1), 1);
        c.insert((1, 0, 1), 1);
        c.insert((1, 1, 1), 1);
        assert!(BasedRing::new(vec!["a".into(), "b".into()], c, vec![0], vec![0, 1]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = rep_s3();
        let s = serde_json::to_string(&r).unwrap();
        let back: BasedRing = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
