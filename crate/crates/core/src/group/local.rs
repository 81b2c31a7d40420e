//! Linear algebra over the local ring `Z/p^k`: streaming echelon insertion,
//! Smith normal form with column transforms, kernels and finite quotients.

#[derive(Clone, Copy, Debug)]
pub(crate) struct Ring {
    pub p: u64,
    pub k: u32,
    pub m: u64,
}

impl Ring {
    pub fn new(p: u64, k: u32) -> Self {
        Ring { p, k, m: p.pow(k) }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.m
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.m - b % self.m) % self.m
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.m as u128) as u64
    }

    /// `p`-adic valuation, `k` for zero.
    pub fn val(&self, a: u64) -> u32 {
        let mut a = a % self.m;
        if a == 0 {
            return self.k;
        }
        let mut v = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }

    pub fn unit_inv(&self, a: u64) -> u64 {
        // a^(φ(m) - 1)
        let phi = self.m / self.p * (self.p - 1);
        let mut r = 1u64;
        let mut b = a % self.m;
        let mut e = phi - 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// `a / b` for `val(a) >= val(b)`.
    pub fn div(&self, a: u64, b: u64) -> u64 {
        let vb = self.val(b);
        let pv = self.p.pow(vb);
        let ub = (b / pv) % self.m;
        let a_red = (a % self.m) / pv;
        // a = p^vb * a_red (mod p^k); quotient determined mod p^(k - vb)
        self.mul(a_red, self.unit_inv(ub))
    }
}

/// Echelon rows over `Z/p^k`, at most one row per pivot column.
pub(crate) struct Echelon {
    ring: Ring,
    cols: usize,
    pivot_row: Vec<Option<Vec<u64>>>,
}

impl Echelon {
    pub fn new(ring: Ring, cols: usize) -> Self {
        Echelon { ring, cols, pivot_row: vec![None; cols] }
    }

    /// Adds a row; the row module is preserved exactly.
    pub fn insert(&mut self, mut row: Vec<u64>) {
        let r = self.ring;
        let mut c = 0;
        loop {
            while c < self.cols && row[c] == 0 {
                c += 1;
            }
            if c == self.cols {
                return;
            }
            match &mut self.pivot_row[c] {
                None => {
                    self.pivot_row[c] = Some(row);
                    return;
                }
                Some(piv) => {
                    if r.val(row[c]) < r.val(piv[c]) {
                        std::mem::swap(piv, &mut row);
                    }
                    let f = r.div(row[c], piv[c]);
                    for j in c..self.cols {
                        if piv[j] != 0 {
                            row[j] = r.sub(row[j], r.mul(f, piv[j]));
                        }
                    }
                    debug_assert_eq!(row[c], 0);
                }
            }
        }
    }

    pub fn rows(self) -> Vec<Vec<u64>> {
        self.pivot_row.into_iter().flatten().collect()
    }
}

/// `U A V = diag(d)`; only `V` and `V^-1` are kept.
pub(crate) struct Smith {
    /// Valuations of the diagonal entries, one per column (`k` = zero).
    pub vals: Vec<u32>,
    pub v: Vec<Vec<u64>>,
    pub v_inv: Vec<Vec<u64>>,
}

pub(crate) fn smith(ring: Ring, mut a: Vec<Vec<u64>>, cols: usize) -> Smith {
    let r = ring;
    let mut v: Vec<Vec<u64>> = (0..cols).map(|i| (0..cols).map(|j| u64::from(i == j)).collect()).collect();
    let mut v_inv = v.clone();
    let rows = a.len();
    let mut vals = vec![r.k; cols];
    for t in 0..cols.min(rows) {
        // least-valuation pivot in the remaining block
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let vx = r.val(x);
                    if best.is_none_or(|(bv, _, _)| vx < bv) {
                        best = Some((vx, i, j));
                    }
                }
            }
        }
        let Some((bv, bi, bj)) = best else {
            break;
        };
        a.swap(t, bi);
        if bj != t {
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            for row in v.iter_mut() {
                row.swap(t, bj);
            }
            v_inv.swap(t, bj);
        }
        let piv = a[t][t];
        for i in t + 1..rows {
            if a[i][t] != 0 {
                let f = r.div(a[i][t], piv);
                for j in t..cols {
                    if a[t][j] != 0 {
                        a[i][j] = r.sub(a[i][j], r.mul(f, a[t][j]));
                    }
                }
            }
        }
        for j in t + 1..cols {
            if a[t][j] != 0 {
                // col_j -= f col_t ; inverse: row_t of v_inv += f row_j
                let f = r.div(a[t][j], piv);
                for row in a.iter_mut() {
                    row[j] = r.sub(row[j], r.mul(f, row[t]));
                }
                for row in v.iter_mut() {
                    row[j] = r.sub(row[j], r.mul(f, row[t]));
                }
                let (lo, hi) = v_inv.split_at_mut(j);
                let rt = &mut lo[t];
                for (x, y) in rt.iter_mut().zip(hi[0].iter()) {
                    *x = r.add(*x, r.mul(f, *y));
                }
            }
        }
        vals[t] = bv;
    }
    Smith { vals, v, v_inv }
}

/// Kernel of `x ↦ A x` on `(Z/p^k)^cols`: generators `g_i` of order
/// `p^{o_i}` with a coordinate map.
pub(crate) struct Kernel {
    ring: Ring,
    /// `(column index in V, order exponent)`
    gens: Vec<(usize, u32)>,
    smith: Smith,
    cols: usize,
}

impl Kernel {
    pub fn of_rows(ring: Ring, rows: Vec<Vec<u64>>, cols: usize) -> Kernel {
        let smith = smith(ring, rows, cols);
        let gens = smith.vals.iter().enumerate().filter(|(_, &v)| v > 0).map(|(i, &v)| (i, v)).collect();
        Kernel { ring, gens, smith, cols }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn orders(&self) -> Vec<u32> {
        self.gens.iter().map(|&(_, o)| o).collect()
    }

    /// The `i`-th generator as a vector.
    pub fn generator(&self, i: usize) -> Vec<u64> {
        let (c, o) = self.gens[i];
        let scale = self.ring.p.pow(self.ring.k - o);
        (0..self.cols).map(|row| self.ring.mul(self.smith.v[row][c], scale)).collect()
    }

    /// Coordinates (mod `p^{o_i}`) of a kernel element.
    pub fn coords(&self, x: &[u64]) -> Vec<u64> {
        let r = self.ring;
        self.gens
            .iter()
            .map(|&(c, o)| {
                let y = self.smith.v_inv[c].iter().zip(x).fold(0, |acc, (a, b)| r.add(acc, r.mul(*a, *b)));
                let scale = r.p.pow(r.k - o);
                debug_assert_eq!(y % scale, 0);
                (y / scale) % r.p.pow(o)
            })
            .collect()
    }
}

/// A finite abelian `p`-group `⊕ Z/p^{o_i}` modulo relation vectors, in
/// Smith form.
pub(crate) struct Quotient {
    ring: Ring,
    /// Invariant-factor exponents of the nontrivial cyclic factors, with
    /// their column in the transform.
    factors: Vec<(usize, u32)>,
    v: Vec<Vec<u64>>,
    v_inv: Vec<Vec<u64>>,
    orders: Vec<u32>,
}

impl Quotient {
    pub fn new(ring: Ring, orders: Vec<u32>, relations: Vec<Vec<u64>>) -> Quotient {
        let n = orders.len();
        let mut rel = relations;
        for (i, &o) in orders.iter().enumerate() {
            let mut row = vec![0u64; n];
            row[i] = ring.p.pow(o) % ring.m;
            rel.push(row);
        }
        let s = smith(ring, rel, n);
        let factors = s.vals.iter().enumerate().filter(|(_, &v)| v > 0).map(|(i, &v)| (i, v)).collect();
        Quotient { ring, factors, v: s.v, v_inv: s.v_inv, orders }
    }

    pub fn size(&self) -> u64 {
        self.factors.iter().map(|&(_, v)| self.ring.p.pow(v)).product()
    }

    pub fn factor_orders(&self) -> Vec<u64> {
        self.factors.iter().map(|&(_, v)| self.ring.p.pow(v)).collect()
    }

    /// Invariant coordinates of an element given in generator coordinates.
    pub fn classify(&self, c: &[u64]) -> Vec<u64> {
        let r = self.ring;
        self.factors
            .iter()
            .map(|&(j, v)| {
                let y = c.iter().enumerate().fold(0, |acc, (i, &ci)| r.add(acc, r.mul(ci, self.v[i][j])));
                y % r.p.pow(v)
            })
            .collect()
    }

    /// Generator coordinates of the element with the given invariant coordinates.
    pub fn lift(&self, q: &[u64]) -> Vec<u64> {
        let r = self.ring;
        let n = self.orders.len();
        let mut c = vec![0u64; n];
        for (&(j, _), &qj) in self.factors.iter().zip(q) {
            for (i, ci) in c.iter_mut().enumerate() {
                *ci = r.add(*ci, r.mul(qj, self.v_inv[j][i]));
            }
        }
        c.iter().zip(&self.orders).map(|(&x, &o)| x % r.p.pow(o)).collect()
    }
}
