use std::collections::HashMap;

use super::{CoxeterDatum, GroupElement, RootSystem};
use crate::error::{check_guard, Result};

const NONE: u32 = u32::MAX;

/// A finite set of Coxeter group elements (a whole finite group, or a
/// lower Bruhat interval) with index-based multiplication tables by the
/// generators. Elements are sorted by (length, ShortLex); index 0 is `e`.
#[derive(Debug)]
pub struct IndexedCoxeter {
    rank: usize,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, u32>,
    rmul: Vec<u32>,
    lmul: Vec<u32>,
    inverse: Vec<u32>,
}

impl IndexedCoxeter {
    pub(crate) fn full_group(rank: usize, rs: &RootSystem, guard: usize) -> Result<Self> {
        let mut perms: Vec<Vec<u32>> = vec![rs.identity_perm()];
        let mut seen: HashMap<Vec<u32>, u32> = HashMap::new();
        seen.insert(perms[0].clone(), 0);
        let mut head = 0;
        while head < perms.len() {
            for s in 0..rank {
                let p = &perms[head];
                if rs.is_negative(p[s]) {
                    continue;
                }
                let q: Vec<u32> = rs.gen_perm[s].iter().map(|&r| p[r as usize]).collect();
                if !seen.contains_key(&q) {
                    seen.insert(q.clone(), perms.len() as u32);
                    perms.push(q);
                    check_guard("group order", perms.len(), guard)?;
                }
            }
            head += 1;
        }
        let mut order: Vec<(GroupElement, usize)> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (GroupElement::from_normal_word(rs.shortlex_word(p)), i))
            .collect();
        order.sort();
        let mut new_of_old = vec![0u32; perms.len()];
        for (new, (_, old)) in order.iter().enumerate() {
            new_of_old[*old] = new as u32;
        }
        let n = perms.len();
        let mut rmul = vec![NONE; n * rank];
        let mut lmul = vec![NONE; n * rank];
        let mut inverse = vec![NONE; n];
        for (new, (_, old)) in order.iter().enumerate() {
            let p = &perms[*old];
            for s in 0..rank {
                let right: Vec<u32> = rs.gen_perm[s].iter().map(|&r| p[r as usize]).collect();
                let left: Vec<u32> = p.iter().map(|&r| rs.gen_perm[s][r as usize]).collect();
                rmul[new * rank + s] = new_of_old[seen[&right] as usize];
                lmul[new * rank + s] = new_of_old[seen[&left] as usize];
            }
            let mut inv = vec![0u32; p.len()];
            for (i, &r) in p.iter().enumerate() {
                inv[r as usize] = i as u32;
            }
            inverse[new] = new_of_old[seen[&inv] as usize];
        }
        let elements: Vec<GroupElement> = order.into_iter().map(|(g, _)| g).collect();
        let index = elements.iter().enumerate().map(|(i, g)| (g.clone(), i as u32)).collect();
        Ok(IndexedCoxeter { rank, elements, index, rmul, lmul, inverse })
    }

    /// Index tables for an arbitrary finite element set; products leaving the
    /// set are recorded as absent.
    pub fn from_elements(datum: &CoxeterDatum, mut elements: Vec<GroupElement>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let rank = datum.rank();
        let index: HashMap<GroupElement, u32> =
            elements.iter().enumerate().map(|(i, g)| (g.clone(), i as u32)).collect();
        let n = elements.len();
        let mut rmul = vec![NONE; n * rank];
        let mut lmul = vec![NONE; n * rank];
        let mut inverse = vec![NONE; n];
        for (i, g) in elements.iter().enumerate() {
            for s in 0..rank {
                let r = datum.multiply_generator(g, s)?;
                rmul[i * rank + s] = index.get(&r).copied().unwrap_or(NONE);
                let l = datum.multiply(&datum.generator(s), g)?;
                lmul[i * rank + s] = index.get(&l).copied().unwrap_or(NONE);
            }
            inverse[i] = index.get(&datum.inverse(g)?).copied().unwrap_or(NONE);
        }
        Ok(IndexedCoxeter { rank, elements, index, rmul, lmul, inverse })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn length(&self, i: usize) -> usize {
        self.elements[i].length()
    }

    pub fn rmul(&self, i: usize, s: usize) -> Option<usize> {
        let v = self.rmul[i * self.rank + s];
        (v != NONE).then_some(v as usize)
    }

    pub fn lmul(&self, i: usize, s: usize) -> Option<usize> {
        let v = self.lmul[i * self.rank + s];
        (v != NONE).then_some(v as usize)
    }

    pub fn inverse(&self, i: usize) -> Option<usize> {
        let v = self.inverse[i];
        (v != NONE).then_some(v as usize)
    }

    pub fn is_right_descent(&self, i: usize, s: usize) -> bool {
        self.rmul(i, s).is_some_and(|j| self.length(j) < self.length(i))
    }

    pub fn is_left_descent(&self, i: usize, s: usize) -> bool {
        self.lmul(i, s).is_some_and(|j| self.length(j) < self.length(i))
    }

    /// Product of two elements of a full group (panics on an interval when the
    /// product leaves the set).
    pub fn multiply(&self, i: usize, j: usize) -> usize {
        self.elements[j]
            .word()
            .iter()
            .fold(i, |acc, &s| self.rmul(acc, s as usize).expect("product leaves the indexed set"))
    }

    /// `leq[w]` holds the bitset of all `x <= w` in Bruhat order.
    pub fn bruhat_table(&self) -> Vec<Vec<u64>> {
        let n = self.len();
        let words = n.div_ceil(64);
        let mut table: Vec<Vec<u64>> = Vec::with_capacity(n);
        for w in 0..n {
            let mut row = vec![0u64; words];
            if w == 0 {
                row[0] = 1;
                table.push(row);
                continue;
            }
            let s = *self.elements[w].word().last().expect("nonidentity") as usize;
            let ws = self.rmul(w, s).expect("descent stays in set");
            for x in 0..n {
                if self.length(x) > self.length(w) {
                    break;
                }
                let m = match self.rmul(x, s) {
                    Some(xs) if self.length(xs) < self.length(x) => xs,
                    _ => x,
                };
                if table[ws][m / 64] >> (m % 64) & 1 == 1 {
                    row[x / 64] |= 1 << (x % 64);
                }
            }
            table.push(row);
        }
        table
    }
}
