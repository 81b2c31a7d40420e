//! Exact elements of `Z[ζ_e]` as integer coordinate vectors in the
//! (redundant) spanning set `1, ζ, .., ζ^{e-1}`; equality is decided modulo
//! the cyclotomic polynomial `Φ_e`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Cyclotomic {
    pub order: u32,
    pub coords: Vec<i64>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        Cyclotomic { order, coords: vec![0; order as usize] }
    }

    pub fn integer(order: u32, n: i64) -> Self {
        let mut c = Self::zero(order);
        c.coords[0] = n;
        c
    }

    /// `ζ^k`.
    pub fn root(order: u32, k: i64) -> Self {
        let mut c = Self::zero(order);
        c.coords[k.rem_euclid(order as i64) as usize] = 1;
        c
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        debug_assert_eq!(self.order, other.order);
        Cyclotomic {
            order: self.order,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Cyclotomic {
        Cyclotomic { order: self.order, coords: self.coords.iter().map(|a| a * k).collect() }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let e = self.order as usize;
        let mut out = vec![0i64; e];
        for (i, &a) in self.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coords.iter().enumerate() {
                if b != 0 {
                    out[(i + j) % e] += a * b;
                }
            }
        }
        Cyclotomic { order: self.order, coords: out }
    }

    /// Complex conjugation `ζ ↦ ζ^-1`.
    pub fn conj(&self) -> Cyclotomic {
        let e = self.order as usize;
        let mut out = vec![0i64; e];
        for (i, &a) in self.coords.iter().enumerate() {
            out[(e - i) % e] = a;
        }
        Cyclotomic { order: self.order, coords: out }
    }

    /// Galois-style substitution `ζ ↦ ζ^k`.
    pub fn power_map(&self, k: i64) -> Cyclotomic {
        let e = self.order as i64;
        let mut out = vec![0i64; e as usize];
        for (i, &a) in self.coords.iter().enumerate() {
            out[(i as i64 * k).rem_euclid(e) as usize] += a;
        }
        Cyclotomic { order: self.order, coords: out }
    }

    /// Canonical remainder modulo `Φ_e` (degree < φ(e)).
    pub fn reduced(&self) -> Vec<i64> {
        let phi = cyclotomic_polynomial(self.order as usize);
        let mut r = self.coords.clone();
        let d = phi.len() - 1;
        for top in (d..r.len()).rev() {
            let c = r[top];
            if c == 0 {
                continue;
            }
            // phi is monic
            for (k, &pk) in phi.iter().enumerate() {
                r[top - d + k] -= c * pk;
            }
        }
        r.truncate(d);
        r
    }

    pub fn exact_eq(&self, other: &Cyclotomic) -> bool {
        self.add(&other.scale(-1)).reduced().iter().all(|&c| c == 0)
    }

    /// Integer value if the number is rational.
    pub fn as_integer(&self) -> Option<i64> {
        let r = self.reduced();
        r.iter().skip(1).all(|&c| c == 0).then(|| r.first().copied().unwrap_or(0))
    }

    pub fn to_complex(&self) -> Complex64 {
        let e = self.order as f64;
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(k, &a)| Complex64::from_polar(a as f64, TAU * k as f64 / e))
            .sum()
    }
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    thread_local! {
        static MEMO: RefCell<HashMap<usize, Vec<i64>>> = RefCell::new(HashMap::new());
    }
    if let Some(p) = MEMO.with(|m| m.borrow().get(&n).cloned()) {
        return p;
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_divide(&num, &cyclotomic_polynomial(d));
        }
    }
    MEMO.with(|m| m.borrow_mut().insert(n, num.clone()));
    num
}

fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for top in (dd..r.len()).rev() {
        let c = r[top];
        q[top - dd] = c;
        for (k, &dk) in den.iter().enumerate() {
            r[top - dd + k] -= c * dk;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}
