use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}` stored as its image list. Products are
/// left to right: `(a * b)(x) = b(a(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i as usize >= images.len() || std::mem::replace(&mut seen[i as usize], true) {
                return Err(Error::invalid(format!("not a permutation: {images:?}")));
            }
        }
        Ok(Perm(images))
    }

    /// Parses 1-based cycle notation such as `(1,2)(3,4)` or `(12)(34)` on
    /// `degree` points; `()` or `e` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let bad = || Error::invalid(format!("bad cycle notation `{text}`"));
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut images: Vec<u32> = (0..degree as u32).collect();
        if t.is_empty() || t == "e" || t == "()" {
            return Ok(Perm(images));
        }
        let mut rest = t.as_str();
        let mut seen = vec![false; degree];
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body.find(')').ok_or_else(bad)?;
            let inner = &body[..close];
            rest = &body[close + 1..];
            let points: Vec<usize> = if inner.contains(',') {
                inner.split(',').map(|p| p.parse::<usize>().map_err(|_| bad())).collect::<Result<_>>()?
            } else {
                inner.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
            };
            for &p in &points {
                if p == 0 || p > degree || std::mem::replace(&mut seen[p - 1], true) {
                    return Err(bad());
                }
            }
            for (k, &p) in points.iter().enumerate() {
                images[p - 1] = (points[(k + 1) % points.len()] - 1) as u32;
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Same permutation on a larger domain.
    pub fn extend_to(&self, n: usize) -> Perm {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u32..n as u32);
        Perm(v)
    }

    /// Disjoint cycles of length > 1, 0-based.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x as u32);
                x = self.0[x] as usize;
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        let sep = if self.0.len() > 9 { "," } else { "" };
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(sep))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
