use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use super::perm::Perm;
use crate::error::{check_guard, Error, Result};

/// Default bound on `|G|` for enumeration.
pub const DEFAULT_GROUP_GUARD: usize = 100_000;
const CAYLEY_LIMIT: usize = 2048;

#[derive(Debug)]
struct Classes {
    classes: Vec<Vec<u32>>,
    class_of: Vec<u32>,
}

/// A finite permutation group with all elements enumerated. Elements are
/// sorted lexicographically by image list, so the identity has index 0.
#[derive(Debug)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    table: Option<Vec<u32>>,
    inverse: Vec<u32>,
    classes: OnceLock<Classes>,
}

impl FiniteGroup {
    pub fn from_permutations(degree: usize, gens: Vec<Perm>) -> Result<Arc<FiniteGroup>> {
        Self::from_permutations_with_guard(degree, gens, DEFAULT_GROUP_GUARD)
    }

    pub fn from_permutations_with_guard(
        degree: usize,
        gens: Vec<Perm>,
        guard: usize,
    ) -> Result<Arc<FiniteGroup>> {
        let gens: Vec<Perm> = gens.into_iter().map(|g| g.extend_to(degree)).collect();
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(Error::invalid("generator moves points outside the domain"));
        }
        let id = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut elements = vec![id];
        let mut head = 0;
        while head < elements.len() {
            for g in &gens {
                let x = elements[head].then(g);
                if !seen.contains_key(&x) {
                    seen.insert(x.clone(), ());
                    elements.push(x);
                    check_guard("group order", elements.len(), guard)?;
                }
            }
            head += 1;
        }
        let gens = gens.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(Arc::new(Self::from_elements(degree, gens, elements)))
    }

    /// A group from a closed element list and generators of it.
    pub(crate) fn from_closed(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>) -> Arc<FiniteGroup> {
        Arc::new(Self::from_elements(degree, generators, elements))
    }

    /// Builds from a complete element list (assumed closed).
    fn from_elements(degree: usize, generators: Vec<Perm>, mut elements: Vec<Perm>) -> FiniteGroup {
        elements.sort();
        let index: HashMap<Perm, u32> =
            elements.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let n = elements.len();
        let inverse = elements.iter().map(|p| index[&p.inverse()]).collect();
        let table = (n <= CAYLEY_LIMIT).then(|| {
            let mut t = vec![0u32; n * n];
            for (i, a) in elements.iter().enumerate() {
                for (j, b) in elements.iter().enumerate() {
                    t[i * n + j] = index[&a.then(b)];
                }
            }
            t
        });
        FiniteGroup { degree, generators, elements, index, table, inverse, classes: OnceLock::new() }
    }

    /// Parses generators in 1-based cycle notation.
    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<Arc<FiniteGroup>> {
        let perms = gens.iter().map(|g| Perm::parse_cycles(g, degree)).collect::<Result<Vec<_>>>()?;
        Self::from_permutations(degree, perms)
    }

    pub fn symmetric(n: usize) -> Arc<FiniteGroup> {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<u32> = (0..n as u32).collect();
            t.swap(0, 1);
            gens.push(Perm::from_images(t).expect("transposition"));
            let c: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
            gens.push(Perm::from_images(c).expect("cycle"));
        }
        Self::from_permutations_with_guard(n.max(1), gens, usize::MAX).expect("no guard")
    }

    pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
        let c: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        Self::from_permutations_with_guard(n.max(1), vec![Perm::from_images(c).expect("cycle")], usize::MAX)
            .expect("no guard")
    }

    pub fn trivial() -> Arc<FiniteGroup> {
        Self::trivial_on(1)
    }

    /// The trivial subgroup of `S_degree`.
    pub fn trivial_on(degree: usize) -> Arc<FiniteGroup> {
        Self::from_permutations(degree.max(1), Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Indices of the generators.
    pub fn generator_indices(&self) -> Vec<u32> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        if p.degree() == self.degree {
            return self.index.get(p).map(|&i| i as usize);
        }
        if p.degree() < self.degree {
            return self.index.get(&p.extend_to(self.degree)).map(|&i| i as usize);
        }
        // a larger domain is fine if the extra points are fixed
        if p.images()[self.degree..].iter().enumerate().any(|(k, &x)| x as usize != self.degree + k) {
            return None;
        }
        let q = Perm::from_images(p.images()[..self.degree].to_vec()).ok()?;
        self.index.get(&q).map(|&i| i as usize)
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index_of(p).is_some()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].then(&self.elements[b])] as usize,
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g x g^-1`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.element_order(a) as i64;
        let k = k.rem_euclid(o);
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let gi = self.generator_indices();
        gi.iter().all(|&a| gi.iter().all(|&b| self.commute(a as usize, b as usize)))
    }

    fn class_data(&self) -> &Classes {
        self.classes.get_or_init(|| {
            let n = self.order();
            let gens = self.generator_indices();
            let mut class_of = vec![u32::MAX; n];
            let mut classes: Vec<Vec<u32>> = Vec::new();
            for start in 0..n {
                if class_of[start] != u32::MAX {
                    continue;
                }
                let id = classes.len() as u32;
                let mut members = vec![start as u32];
                class_of[start] = id;
                let mut head = 0;
                while head < members.len() {
                    let x = members[head] as usize;
                    for &g in &gens {
                        let y = self.conj(g as usize, x);
                        if class_of[y] == u32::MAX {
                            class_of[y] = id;
                            members.push(y as u32);
                        }
                    }
                    head += 1;
                }
                members.sort_unstable();
                classes.push(members);
            }
            Classes { classes, class_of }
        })
    }

    /// Conjugacy classes ordered by least element (the identity class first).
    pub fn classes(&self) -> &[Vec<u32>] {
        &self.class_data().classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_data().class_of[a] as usize
    }

    pub fn num_classes(&self) -> usize {
        self.classes().len()
    }

    pub fn centralizer(&self, a: usize) -> Vec<u32> {
        (0..self.order()).filter(|&g| self.commute(a, g)).map(|g| g as u32).collect()
    }

    /// Sorted indices of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        self.closure_from(&[0], gens)
    }

    /// Subgroup generated by an existing subgroup (sorted, closed) and more elements.
    pub fn closure_from(&self, base: &[u32], extra: &[u32]) -> Vec<u32> {
        let n = self.order();
        let mut inside = vec![false; n];
        let mut members: Vec<u32> = base.to_vec();
        for &b in base {
            inside[b as usize] = true;
        }
        let mut gens: Vec<u32> = extra.iter().copied().filter(|&g| !inside[g as usize]).collect();
        if gens.is_empty() {
            let mut m = members;
            m.sort_unstable();
            return m;
        }
        // generators of the base are needed too; use all base elements lazily
        gens.extend(base.iter().copied().filter(|&b| b != 0));
        let mut queue: VecDeque<u32> = members.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x as usize, g as usize);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y as u32);
                    queue.push_back(y as u32);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// A small generating set chosen greedily (largest closure first).
    pub fn small_generating_set(&self, members: &[u32]) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut current = vec![0u32];
        while current.len() < members.len() {
            let mut best: Option<(usize, u32, Vec<u32>)> = None;
            for &x in members {
                if current.binary_search(&x).is_ok() {
                    continue;
                }
                let c = self.closure_from(&current, &[x]);
                if best.as_ref().is_none_or(|(sz, _, _)| c.len() > *sz) {
                    let full = c.len() == members.len();
                    best = Some((c.len(), x, c));
                    if full {
                        break;
                    }
                }
            }
            let (_, x, c) = best.expect("members not closed");
            gens.push(x);
            current = c;
        }
        gens
    }

    /// The subgroup on the given (closed, sorted) index set as its own group.
    pub fn subgroup(&self, members: &[u32]) -> Arc<FiniteGroup> {
        let gens = self.small_generating_set(members);
        let gen_perms = gens.iter().map(|&g| self.elements[g as usize].clone()).collect();
        let elems = members.iter().map(|&m| self.elements[m as usize].clone()).collect();
        Arc::new(Self::from_elements(self.degree, gen_perms, elems))
    }

    /// Indices (in `self`) of the elements of another group on the same domain.
    pub fn embed(&self, sub: &FiniteGroup) -> Result<Vec<u32>> {
        let mut out = sub
            .elements()
            .iter()
            .map(|p| {
                self.index_of(p)
                    .map(|i| i as u32)
                    .ok_or_else(|| Error::invalid(format!("{p} is not in the ambient group")))
            })
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        Ok(out)
    }

    /// `map[i]` = index in `self` of element `i` of `sub`.
    pub fn embed_ordered(&self, sub: &FiniteGroup) -> Result<Vec<u32>> {
        sub.elements()
            .iter()
            .map(|p| {
                self.index_of(p)
                    .map(|i| i as u32)
                    .ok_or_else(|| Error::invalid(format!("{p} is not in the ambient group")))
            })
            .collect()
    }

    /// `g H g^-1` as a sorted index set.
    pub fn conjugate_set(&self, g: usize, members: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = members.iter().map(|&h| self.conj(g, h as usize) as u32).collect();
        out.sort_unstable();
        out
    }

    pub fn normalizer(&self, members: &[u32]) -> Vec<u32> {
        (0..self.order())
            .filter(|&g| self.conjugate_set(g, members) == members)
            .map(|g| g as u32)
            .collect()
    }

    /// Left cosets `gH` as sorted index sets, ordered by least element.
    pub fn left_cosets(&self, members: &[u32]) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let mut c: Vec<u32> = members.iter().map(|&h| self.mul(g, h as usize) as u32).collect();
            c.sort_unstable();
            for &x in &c {
                seen[x as usize] = true;
            }
            out.push(c);
        }
        out
    }

    /// Double cosets `H1 g H2` with representative `g` (least element).
    pub fn double_cosets(&self, h1: &[u32], h2: &[u32]) -> Vec<(usize, Vec<u32>)> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let mut c = Vec::new();
            for &a in h1 {
                let ag = self.mul(a as usize, g);
                for &b in h2 {
                    let x = self.mul(ag, b as usize);
                    if !seen[x] {
                        seen[x] = true;
                        c.push(x as u32);
                    }
                }
            }
            c.sort_unstable();
            out.push((g, c));
        }
        out
    }

    /// Elements of `p`-power order for a prime `p`: a Sylow `p`-subgroup.
    pub fn sylow(&self, p: usize) -> Vec<u32> {
        let mut target = 1;
        let mut n = self.order();
        while n.is_multiple_of(p) {
            n /= p;
            target *= p;
        }
        let mut current = vec![0u32];
        while current.len() < target {
            let next = (0..self.order()).find_map(|g| {
                if current.binary_search(&(g as u32)).is_ok() || !is_power_of(self.element_order(g), p) {
                    return None;
                }
                let c = self.closure_from(&current, &[g as u32]);
                is_power_of(c.len(), p).then_some(c)
            });
            current = next.expect("Sylow subgroups exist");
        }
        current
    }
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Prime factorization as `(p, k)` pairs.
pub(crate) fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
