//! Small prime-field helpers.

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub(crate) fn primitive_root(p: u64) -> u64 {
    let factors: Vec<u64> = super::finite::factorize((p - 1) as usize).iter().map(|&(q, _)| q as u64).collect();
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).unwrap_or(1)
}

/// Null space basis (as rows) of a `rows × cols` matrix over `F_p`.
pub(crate) fn nullspace(mat: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = mat.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(r) = (row..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(row, r);
        let inv = inv_mod(m[row][c], p);
        for x in m[row].iter_mut() {
            *x = *x * inv % p;
        }
        for r2 in 0..m.len() {
            if r2 != row && m[r2][c] != 0 {
                let f = m[r2][c];
                for k in 0..cols {
                    m[r2][k] = (m[r2][k] + p - f * m[row][k] % p) % p;
                }
            }
        }
        pivots.push(c);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - m[r][free]) % p;
        }
        basis.push(v);
    }
    basis
}

/// Row-reduces a list of row vectors into reduced echelon form, returning
/// the nonzero rows and their pivot columns.
pub(crate) fn rref(rows: Vec<Vec<u64>>, cols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut m = rows;
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(r) = (row..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(row, r);
        let inv = inv_mod(m[row][c], p);
        for x in m[row].iter_mut() {
            *x = *x * inv % p;
        }
        for r2 in 0..m.len() {
            if r2 != row && m[r2][c] != 0 {
                let f = m[r2][c];
                for k in 0..cols {
                    m[r2][k] = (m[r2][k] + p - f * m[row][k] % p) % p;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    m.truncate(row);
    (m, pivots)
}
