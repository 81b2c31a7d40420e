//! Normalized 2-cocycles with values in `Z/n` (read multiplicatively as
//! `exp(2πi·ψ/n)`) and the classes of `H^2(H, C^*)` they represent.
//!
//! Cocycles are gauge-fixed along a BFS spanning tree of the Cayley graph:
//! every value `ψ(g,h)` is a linear form in the values `ψ(g,s)` on generators
//! `s`, and the cocycle identity only has to be imposed on triples `(g,h,s)`.
//! Two `μ_n`-valued cocycles are cohomologous over `C^*` exactly when they
//! differ by an ordinary coboundary plus a "carry" cocycle
//! `(φ̃(g)+φ̃(h)-φ̃(gh))/p^a` of a character `φ: H -> Z/p^a`.

use std::sync::Arc;

use num_complex::Complex64;

use super::finite::{factorize, gcd, FiniteGroup};
use super::local::{Echelon, Kernel, Quotient, Ring};
use super::perm::Perm;
use crate::error::{check_guard, Error, Result};

/// `|H|` bound when every prime-power factor of the modulus is prime.
pub const PRIME_MODULUS_GUARD: usize = 120;
/// `|H|` bound for moduli with a higher prime-power factor.
pub const GENERAL_MODULUS_GUARD: usize = 48;

#[derive(Clone, Debug)]
pub struct TwoCocycle {
    group: Arc<FiniteGroup>,
    modulus: u32,
    values: Vec<u32>,
}

impl TwoCocycle {
    pub fn new(group: Arc<FiniteGroup>, modulus: u32, values: Vec<u32>) -> Result<Self> {
        let n = group.order();
        if modulus == 0 || values.len() != n * n {
            return Err(Error::invalid("cocycle table has the wrong shape"));
        }
        let c = TwoCocycle { group, modulus, values: values.into_iter().map(|v| v % modulus).collect() };
        if !c.is_normalized() || !c.is_cocycle() {
            return Err(Error::invalid("values violate the normalized cocycle identity"));
        }
        Ok(c)
    }

    pub fn trivial(group: Arc<FiniteGroup>, modulus: u32) -> Self {
        let n = group.order();
        TwoCocycle { group, modulus, values: vec![0; n * n] }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn value(&self, g: usize, h: usize) -> u32 {
        self.values[g * self.group.order() + h]
    }

    pub fn phase(&self, g: usize, h: usize) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::TAU * self.value(g, h) as f64 / self.modulus as f64)
    }

    pub fn is_trivial_cochain(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn is_normalized(&self) -> bool {
        let n = self.group.order();
        (0..n).all(|g| self.value(0, g) == 0 && self.value(g, 0) == 0)
    }

    /// `ψ(g,h) + ψ(gh,k) = ψ(h,k) + ψ(g,hk)` for all triples.
    pub fn is_cocycle(&self) -> bool {
        let g = &self.group;
        let n = g.order();
        let m = self.modulus;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = g.mul(a, b);
                (0..n).all(|c| {
                    (self.value(a, b) + self.value(ab, c)) % m
                        == (self.value(b, c) + self.value(a, g.mul(b, c))) % m
                })
            })
        })
    }

    /// Restriction to a subgroup given as a group on the same domain.
    pub fn restrict(&self, sub: &Arc<FiniteGroup>) -> Result<TwoCocycle> {
        let map = self.group.embed_ordered(sub)?;
        let k = sub.order();
        let mut values = vec![0u32; k * k];
        for a in 0..k {
            for b in 0..k {
                values[a * k + b] = self.value(map[a] as usize, map[b] as usize);
            }
        }
        Ok(TwoCocycle { group: sub.clone(), modulus: self.modulus, values })
    }

    /// With products read left to right (`FiniteGroup::mul`): the cocycle
    /// `ψ^g(a,b) = ψ(g a g^-1, g b g^-1)` on `g^-1 H g`.
    pub fn conjugate(&self, g: &Perm) -> Result<TwoCocycle> {
        let g = g.extend_to(self.group.degree());
        let gi = g.inverse();
        let gens = self.group.generators().iter().map(|h| gi.then(h).then(&g)).collect();
        let target = FiniteGroup::from_permutations(self.group.degree(), gens)?;
        self.transport(&target, |a| g.then(a).then(&gi))
    }

    /// Pulls the cocycle back along `target -> self.group`, `x ↦ f(x)`.
    pub fn transport(&self, target: &Arc<FiniteGroup>, f: impl Fn(&Perm) -> Perm) -> Result<TwoCocycle> {
        let map: Vec<usize> = target
            .elements()
            .iter()
            .map(|x| {
                self.group
                    .index_of(&f(x))
                    .ok_or_else(|| Error::invalid("transport map leaves the group"))
            })
            .collect::<Result<_>>()?;
        let k = target.order();
        let mut values = vec![0u32; k * k];
        for a in 0..k {
            for b in 0..k {
                values[a * k + b] = self.value(map[a], map[b]);
            }
        }
        Ok(TwoCocycle { group: target.clone(), modulus: self.modulus, values })
    }

    pub fn invert(&self) -> TwoCocycle {
        let m = self.modulus;
        TwoCocycle {
            group: self.group.clone(),
            modulus: m,
            values: self.values.iter().map(|&v| (m - v) % m).collect(),
        }
    }

    pub fn baer_sum(&self, other: &TwoCocycle) -> Result<TwoCocycle> {
        if self.modulus != other.modulus {
            return Err(Error::invalid(format!(
                "cocycle moduli differ ({} vs {}); rescale first",
                self.modulus, other.modulus
            )));
        }
        if !same_group(&self.group, &other.group) {
            return Err(Error::invalid("cocycles live on different groups"));
        }
        let m = self.modulus;
        Ok(TwoCocycle {
            group: self.group.clone(),
            modulus: m,
            values: self.values.iter().zip(&other.values).map(|(a, b)| (a + b) % m).collect(),
        })
    }

    /// The same cochain over the smallest modulus that carries its values.
    pub fn reduced(&self) -> TwoCocycle {
        let g = self.values.iter().fold(self.modulus as usize, |acc, &v| gcd(acc, v as usize)) as u32;
        TwoCocycle {
            group: self.group.clone(),
            modulus: self.modulus / g,
            values: self.values.iter().map(|&v| v / g).collect(),
        }
    }

    /// Same class read through `μ_n ⊂ μ_{n'}`; `n'` must be a multiple of `n`.
    pub fn rescale(&self, new_modulus: u32) -> Result<TwoCocycle> {
        if new_modulus == 0 || !new_modulus.is_multiple_of(self.modulus) {
            return Err(Error::invalid("new modulus must be a multiple of the old one"));
        }
        let f = new_modulus / self.modulus;
        Ok(TwoCocycle {
            group: self.group.clone(),
            modulus: new_modulus,
            values: self.values.iter().map(|&v| v * f).collect(),
        })
    }
}

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || (a.degree() == b.degree() && a.elements() == b.elements())
}

/// Cayley-graph spanning tree and the linear forms `ψ(g,h) = E(g,h)·x` in
/// the generator values `x_{g,s}`.
struct Gauge {
    n: usize,
    gens: Vec<usize>,
    parent: Vec<(usize, usize)>,
    bfs: Vec<usize>,
}

impl Gauge {
    fn new(h: &FiniteGroup) -> Self {
        let n = h.order();
        let mut gens: Vec<usize> = h.generator_indices().into_iter().map(|g| g as usize).filter(|&g| g != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut parent = vec![(usize::MAX, usize::MAX); n];
        let mut bfs = vec![0];
        parent[0] = (0, 0);
        let mut head = 0;
        while head < bfs.len() {
            let x = bfs[head];
            for (si, &s) in gens.iter().enumerate() {
                let y = h.mul(x, s);
                if parent[y].0 == usize::MAX {
                    parent[y] = (x, si);
                    bfs.push(y);
                }
            }
            head += 1;
        }
        Gauge { n, gens, parent, bfs }
    }

    fn nvars(&self) -> usize {
        (self.n - 1) * self.gens.len()
    }

    fn var(&self, g: usize, si: usize) -> usize {
        (g - 1) * self.gens.len() + si
    }

    /// Dense forms `E(g,h)`, flattened `[(g*n+h)*nvars ..]`.
    fn forms(&self, h: &FiniteGroup, r: Ring) -> Vec<u64> {
        let n = self.n;
        let nv = self.nvars();
        let mut e = vec![0u64; n * n * nv];
        let gen_index = |x: usize| self.gens.iter().position(|&s| s == x);
        for &y in self.bfs.iter().skip(1) {
            let (p, si) = self.parent[y];
            for g in 1..n {
                let base = (g * n + y) * nv;
                if p == 0 {
                    e[base + self.var(g, gen_index(y).expect("tree root children are generators"))] = 1;
                    continue;
                }
                // ψ(g, p s) = ψ(g,p) + ψ(gp, s) - ψ(p, s)
                let gp = h.mul(g, p);
                for v in 0..nv {
                    e[base + v] = e[(g * n + p) * nv + v];
                }
                if gp != 0 {
                    let v = self.var(gp, si);
                    e[base + v] = r.add(e[base + v], 1);
                }
                let v = self.var(p, si);
                e[base + v] = r.sub(e[base + v], 1);
            }
        }
        e
    }
}

/// One `p`-primary component of `H^2(H, C^*)[p^k]`.
struct PrimePart {
    ring: Ring,
    kernel: Kernel,
    quotient: Quotient,
}

fn prime_part(h: &FiniteGroup, gauge: &Gauge, forms: &[u64], ring: Ring) -> PrimePart {
    let n = gauge.n;
    let nv = gauge.nvars();
    let form = |g: usize, x: usize| -> &[u64] { &forms[(g * n + x) * nv..(g * n + x + 1) * nv] };
    let mut ech = Echelon::new(ring, nv);
    for g in 1..n {
        for x in 1..n {
            let gx = h.mul(g, x);
            for &s in &gauge.gens {
                // δψ(g,x,s) = ψ(x,s) - ψ(gx,s) + ψ(g,xs) - ψ(g,x)
                let xs = h.mul(x, s);
                let mut row = form(x, s).to_vec();
                if gx != 0 {
                    for (r, &c) in row.iter_mut().zip(form(gx, s)) {
                        *r = ring.sub(*r, c);
                    }
                }
                if xs != 0 {
                    for (r, &c) in row.iter_mut().zip(form(g, xs)) {
                        *r = ring.add(*r, c);
                    }
                }
                for (r, &c) in row.iter_mut().zip(form(g, x)) {
                    *r = ring.sub(*r, c);
                }
                if row.iter().any(|&c| c != 0) {
                    ech.insert(row);
                }
            }
        }
    }
    let kernel = Kernel::of_rows(ring, ech.rows(), nv);

    // relations: coboundaries of point masses, and carries of characters
    let mut relations = Vec::new();
    let at_gens = |f: &dyn Fn(usize, usize) -> u64| -> Vec<u64> {
        let mut x = vec![0u64; nv];
        for g in 1..n {
            for (si, &s) in gauge.gens.iter().enumerate() {
                x[gauge.var(g, si)] = f(g, s) % ring.m;
            }
        }
        x
    };
    for t in 1..n {
        let x = at_gens(&|g, s| {
            let mut v = 0u64;
            if g == t {
                v += 1;
            }
            if s == t {
                v += 1;
            }
            if h.mul(g, s) == t {
                v = ring.sub(v, 1);
            }
            v
        });
        relations.push(kernel.coords(&x));
    }
    let pa = p_part(h.exponent(), ring.p as usize);
    if pa > 1 && !gauge.gens.is_empty() {
        for phi in characters_mod(h, gauge, pa as u64) {
            let x = at_gens(&|g, s| (phi[g] + phi[s] - phi[h.mul(g, s)]) / pa as u64);
            relations.push(kernel.coords(&x));
        }
    }
    let quotient = Quotient::new(ring, kernel.orders(), relations);
    PrimePart { ring, kernel, quotient }
}

fn p_part(mut n: usize, p: usize) -> usize {
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

/// Generators of `Hom(H, Z/q)` (`q` a prime power) as value tables.
fn characters_mod(h: &FiniteGroup, gauge: &Gauge, q: u64) -> Vec<Vec<u64>> {
    let fq = factorize(q as usize);
    let ring = Ring::new(fq[0].0 as u64, fq[0].1);
    let ns = gauge.gens.len();
    let n = gauge.n;
    // Φ(y) in terms of φ(s)
    let mut phi = vec![vec![0u64; ns]; n];
    for &y in gauge.bfs.iter().skip(1) {
        let (p, si) = gauge.parent[y];
        let mut v = phi[p].clone();
        v[si] = ring.add(v[si], 1);
        phi[y] = v;
    }
    let mut ech = Echelon::new(ring, ns);
    for g in 0..n {
        for (si, &s) in gauge.gens.iter().enumerate() {
            let gs = h.mul(g, s);
            let row: Vec<u64> =
                (0..ns).map(|j| ring.sub(ring.add(phi[g][j], u64::from(j == si)), phi[gs][j])).collect();
            if row.iter().any(|&c| c != 0) {
                ech.insert(row);
            }
        }
    }
    let ker = Kernel::of_rows(ring, ech.rows(), ns);
    (0..ker.len())
        .map(|i| {
            let vals = ker.generator(i);
            (0..n).map(|y| phi[y].iter().zip(&vals).fold(0, |a, (c, v)| ring.add(a, ring.mul(*c, *v)))).collect()
        })
        .collect()
}

/// Representatives of `H^2(H, C^*)[n]` as `μ_n`-valued cocycles, one per
/// class, the trivial class first.
#[derive(Debug)]
pub struct H2Classes {
    group: Arc<FiniteGroup>,
    modulus: u32,
    parts: Vec<(u64, PrimePartInfo)>,
    classes: Vec<TwoCocycle>,
}

struct PrimePartInfo {
    part: PrimePart,
    forms: Arc<Vec<u64>>,
    gauge: Arc<Gauge>,
}

impl std::fmt::Debug for PrimePartInfo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PrimePart(p^k = {}, size {})", self.part.ring.m, self.part.quotient.size())
    }
}

impl H2Classes {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn classes(&self) -> &[TwoCocycle] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class of `ψ` in [`H2Classes::classes`].
    pub fn class_index(&self, psi: &TwoCocycle) -> Result<usize> {
        if !same_group(&self.group, &psi.group) {
            return Err(Error::invalid("cocycle lives on a different group"));
        }
        let psi = if psi.modulus == self.modulus {
            psi.clone()
        } else if self.modulus.is_multiple_of(psi.modulus) {
            psi.rescale(self.modulus)?
        } else {
            return Err(Error::invalid("cocycle modulus does not divide the class modulus"));
        };
        let n = self.group.order();
        let mut index = 0usize;
        for (pk, info) in &self.parts {
            let part = &info.part;
            let r = part.ring;
            let mp = self.modulus as u64 / pk;
            let mp_inv = r.unit_inv(mp % r.m);
            let gauge = &info.gauge;
            let mut x = vec![0u64; gauge.nvars()];
            for g in 1..n {
                for (si, &s) in gauge.gens.iter().enumerate() {
                    x[gauge.var(g, si)] = r.mul(psi.value(g, s) as u64 % r.m, mp_inv);
                }
            }
            let q = part.quotient.classify(&part.kernel.coords(&x));
            let orders = part.quotient.factor_orders();
            let local = q.iter().zip(&orders).fold(0u64, |acc, (&qi, &o)| acc * o + qi);
            index = index * part.quotient.size() as usize + local as usize;
        }
        Ok(index)
    }

    pub fn same_class(&self, a: &TwoCocycle, b: &TwoCocycle) -> Result<bool> {
        Ok(self.class_index(a)? == self.class_index(b)?)
    }
}

/// `H^2(H, C^*)[n]`; errors if `n` provably misses part of the multiplier.
pub fn h2_classes(h: &Arc<FiniteGroup>, n: u32) -> Result<H2Classes> {
    let out = h2_classes_unchecked(h, n)?;
    check_modulus_covers(h, n, &out)?;
    Ok(out)
}

fn h2_classes_unchecked(h: &Arc<FiniteGroup>, n: u32) -> Result<H2Classes> {
    if n == 0 {
        return Err(Error::invalid("modulus must be positive"));
    }
    let fac = factorize(n as usize);
    let guard = if fac.iter().all(|&(_, k)| k == 1) { PRIME_MODULUS_GUARD } else { GENERAL_MODULUS_GUARD };
    check_guard("subgroup order for H^2", h.order(), guard)?;
    let gauge = Arc::new(Gauge::new(h));
    let mut parts = Vec::new();
    for (p, k) in fac {
        if !h.order().is_multiple_of(p) {
            continue;
        }
        let ring = Ring::new(p as u64, k);
        let forms = Arc::new(gauge.forms(h, ring));
        let part = prime_part(h, &gauge, &forms, ring);
        parts.push((ring.m, PrimePartInfo { part, forms, gauge: gauge.clone() }));
    }
    let classes = enumerate_classes(h, n, &parts)?;
    Ok(H2Classes { group: h.clone(), modulus: n, parts, classes })
}

fn enumerate_classes(h: &Arc<FiniteGroup>, n: u32, parts: &[(u64, PrimePartInfo)]) -> Result<Vec<TwoCocycle>> {
    let order = h.order();
    let mut classes = vec![TwoCocycle::trivial(h.clone(), n)];
    for (pk, info) in parts {
        let part = &info.part;
        let r = part.ring;
        let nv = info.gauge.nvars();
        let orders = part.quotient.factor_orders();
        let total: u64 = orders.iter().product();
        let mp = n as u64 / pk;
        let mut next = Vec::new();
        for prev in &classes {
            for idx in 0..total {
                // mixed-radix digits, most significant first
                let mut q = vec![0u64; orders.len()];
                let mut rest = idx;
                for (slot, &o) in q.iter_mut().zip(&orders).rev() {
                    *slot = rest % o;
                    rest /= o;
                }
                let c = part.quotient.lift(&q);
                let mut x = vec![0u64; nv];
                for (i, &ci) in c.iter().enumerate() {
                    if ci != 0 {
                        for (xv, gv) in x.iter_mut().zip(part.kernel.generator(i)) {
                            *xv = r.add(*xv, r.mul(ci, gv));
                        }
                    }
                }
                let mut values = prev.values.clone();
                for g in 1..order {
                    for y in 1..order {
                        let f = &info.forms[(g * order + y) * nv..(g * order + y + 1) * nv];
                        let v = f.iter().zip(&x).fold(0u64, |a, (fa, xa)| r.add(a, r.mul(*fa, *xa)));
                        let slot = &mut values[g * order + y];
                        *slot = ((*slot as u64 + mp * v) % n as u64) as u32;
                    }
                }
                next.push(TwoCocycle { group: h.clone(), modulus: n, values });
            }
        }
        classes = next;
    }
    for c in &classes {
        if !c.is_cocycle() {
            return Err(Error::integrity("H^2 representative fails the cocycle identity"));
        }
    }
    Ok(classes)
}

/// Certifies that `μ_n` sees every class of `H^2(H, C^*)`: for each prime
/// `p | |H|` either a Sylow `p`-subgroup is cyclic (so the `p`-part
/// vanishes), or `H^2[p^k] = H^2[p^{k+1}]` on a Sylow subgroup or on `H`.
fn check_modulus_covers(h: &Arc<FiniteGroup>, n: u32, computed: &H2Classes) -> Result<()> {
    for (p, _) in factorize(h.order()) {
        let syl = h.sylow(p);
        if syl.iter().any(|&x| h.element_order(x as usize) == syl.len()) {
            continue;
        }
        let too_small = || Error::ModulusTooSmall { modulus: n as u64, order: h.order() };
        if !(n as usize).is_multiple_of(p) {
            return Err(too_small());
        }
        let pk = p_part(n as usize, p) as u32;
        let sub = h.subgroup(&syl);
        if part_size(&sub, pk)? == part_size(&sub, pk * p as u32)? {
            continue;
        }
        let here = computed
            .parts
            .iter()
            .find(|(m, _)| *m == pk as u64)
            .map_or(1, |(_, info)| info.part.quotient.size());
        if here != part_size(h, pk * p as u32)? {
            return Err(too_small());
        }
    }
    Ok(())
}

fn part_size(h: &Arc<FiniteGroup>, pk: u32) -> Result<u64> {
    Ok(h2_classes_unchecked(h, pk)?.len() as u64)
}
