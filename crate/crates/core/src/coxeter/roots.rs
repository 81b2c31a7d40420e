//! Root systems of finite Coxeter data and the permutation action of the
//! simple reflections on them.

use std::collections::{HashMap, VecDeque};

/// Roots in simple-root coordinates. Indices `0..n_pos` are the positive
/// roots (simple roots first, in generator order); index `i + n_pos` is the
/// negative of root `i`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub roots: Vec<Vec<i64>>,
    pub n_pos: usize,
    /// `gen_perm[s][r]` is the index of `s(root r)`.
    pub gen_perm: Vec<Vec<u32>>,
}

pub(crate) fn reflect(cartan: &[Vec<i64>], s: usize, root: &[i64]) -> Vec<i64> {
    let pairing: i64 = cartan[s].iter().zip(root).map(|(a, c)| a * c).sum();
    let mut out = root.to_vec();
    out[s] -= pairing;
    out
}

impl RootSystem {
    /// Generates the positive roots by reflecting simple roots. Returns `None`
    /// when more than `cap` positive roots appear (the group is then treated
    /// as infinite).
    pub fn generate(cartan: &[Vec<i64>], cap: usize) -> Option<RootSystem> {
        let n = cartan.len();
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut pos: Vec<Vec<i64>> = Vec::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            seen.insert(e.clone(), ());
            queue.push_back(e);
        }
        while let Some(r) = queue.pop_front() {
            pos.push(r.clone());
            if pos.len() > cap {
                return None;
            }
            for s in 0..n {
                let t = reflect(cartan, s, &r);
                if t.iter().all(|&c| c >= 0) && !seen.contains_key(&t) {
                    seen.insert(t.clone(), ());
                    queue.push_back(t);
                }
            }
        }
        let height = |r: &Vec<i64>| r.iter().sum::<i64>();
        pos.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
        let n_pos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
        let index: HashMap<&Vec<i64>, u32> =
            roots.iter().enumerate().map(|(i, r)| (r, i as u32)).collect();
        let gen_perm = (0..n)
            .map(|s| roots.iter().map(|r| index[&reflect(cartan, s, r)]).collect())
            .collect();
        Some(RootSystem { roots, n_pos, gen_perm })
    }

    pub fn n_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn identity_perm(&self) -> Vec<u32> {
        (0..self.n_roots() as u32).collect()
    }

    /// Permutation of `s_{i1} ... s_{ik}` (acting on the left).
    pub fn perm_of_word(&self, word: &[u8]) -> Vec<u32> {
        let mut p = self.identity_perm();
        // p_w = p_{s_i1} ∘ ... ∘ p_{s_ik}; build by right-composition
        for &s in word {
            let g = &self.gen_perm[s as usize];
            p = g.iter().map(|&r| p[r as usize]).collect();
        }
        p
    }

    pub fn is_negative(&self, r: u32) -> bool {
        r as usize >= self.n_pos
    }

    pub fn length_of_perm(&self, p: &[u32]) -> usize {
        p[..self.n_pos].iter().filter(|&&r| self.is_negative(r)).count()
    }

    /// ShortLex-least reduced word of the element with permutation `p`.
    pub fn shortlex_word(&self, p: &[u32]) -> Vec<u8> {
        let n = self.gen_perm.len();
        let mut inv = vec![0u32; p.len()];
        for (i, &r) in p.iter().enumerate() {
            inv[r as usize] = i as u32;
        }
        let mut word = Vec::new();
        loop {
            // left descent s: w^{-1}(alpha_s) < 0
            let Some(s) = (0..n).find(|&s| self.is_negative(inv[s])) else {
                break;
            };
            word.push(s as u8);
            let g = &self.gen_perm[s];
            inv = g.iter().map(|&r| inv[r as usize]).collect();
        }
        word
    }
}
