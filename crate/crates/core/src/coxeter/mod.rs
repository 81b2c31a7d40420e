//! Coxeter groups: construction from Cartan types or Coxeter matrices,
//! ShortLex normal forms, multiplication, descents, Bruhat order and
//! enumeration of finite groups.
//!
//! Generators are 0-based internally; [`GroupElement`]'s `Display` and the
//! JSON/CLI surfaces use the 1-based Bourbaki numbering.

mod indexed;
mod roots;
mod types;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{check_guard, Error, Result};

pub use indexed::IndexedCoxeter;
pub use roots::RootSystem;
pub use types::INFINITE_BOND;

/// Default guard on `|W|` for enumeration-dependent calls.
pub const DEFAULT_ENUMERATION_GUARD: usize = 2_000_000;
/// Default guard on word length for infinite Coxeter data.
pub const DEFAULT_LENGTH_GUARD: usize = 64;
const ROOT_CAP: usize = 20_000;

/// An element of a Coxeter group, stored as its ShortLex-least reduced word.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    word: Vec<u8>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement { word: Vec::new() }
    }

    pub(crate) fn from_normal_word(word: Vec<u8>) -> Self {
        GroupElement { word }
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Word rendered with 1-based generator labels.
    pub fn one_based(&self) -> Vec<usize> {
        self.word.iter().map(|&s| s as usize + 1).collect()
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.one_based().iter().map(|s| s.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A permutation of generator indices preserving the Coxeter matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagramAutomorphism {
    pub perm: Vec<u8>,
}

impl DiagramAutomorphism {
    pub fn identity(rank: usize) -> Self {
        DiagramAutomorphism { perm: (0..rank as u8).collect() }
    }

    pub fn new(datum: &CoxeterDatum, perm: Vec<u8>) -> Result<Self> {
        let n = datum.rank();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::invalid("diagram automorphism has wrong size"));
        }
        for &p in &perm {
            if p as usize >= n || std::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::invalid("diagram automorphism is not a permutation"));
            }
        }
        let m = datum.coxeter_matrix();
        for i in 0..n {
            for j in 0..n {
                if m[i][j] != m[perm[i] as usize][perm[j] as usize] {
                    return Err(Error::invalid("permutation does not preserve the Coxeter matrix"));
                }
            }
        }
        Ok(DiagramAutomorphism { perm })
    }

    pub fn compose(&self, other: &DiagramAutomorphism) -> DiagramAutomorphism {
        DiagramAutomorphism {
            perm: other.perm.iter().map(|&j| self.perm[j as usize]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// Image of an element: relabel its word, then renormalize.
    pub fn apply(&self, datum: &CoxeterDatum, x: &GroupElement) -> Result<GroupElement> {
        let word: Vec<u8> = x.word.iter().map(|&s| self.perm[s as usize]).collect();
        datum.normalize(&word)
    }
}

/// A Coxeter system with its integral realization.
#[derive(Debug)]
pub struct CoxeterDatum {
    label: Option<String>,
    matrix: Vec<Vec<u32>>,
    cartan: Vec<Vec<i64>>,
    roots: Option<RootSystem>,
    order: Option<u128>,
    length_guard: usize,
    table: OnceLock<Arc<IndexedCoxeter>>,
}

impl CoxeterDatum {
    /// Builds a datum from a Cartan-type label (`A3`, `B2xG2`, `trivial`,
    /// `M[[1,3],[3,1]]`).
    pub fn from_type(label: &str) -> Result<Arc<CoxeterDatum>> {
        let (matrix, order) = match types::parse_label(label)? {
            types::ParsedLabel::Components(comps) => {
                let order = comps.iter().map(|c| c.order()).product::<Option<u128>>();
                (types::matrix_of_components(&comps), order)
            }
            types::ParsedLabel::Matrix(m) => (m, None),
        };
        let mut datum = Self::build(matrix, order)?;
        datum.label = Some(label.trim().to_string());
        Ok(Arc::new(datum))
    }

    /// Builds a datum from an explicit Coxeter matrix (`0` = infinity).
    pub fn from_matrix(matrix: Vec<Vec<u32>>) -> Result<Arc<CoxeterDatum>> {
        Ok(Arc::new(Self::build(matrix, None)?))
    }

    fn build(matrix: Vec<Vec<u32>>, order: Option<u128>) -> Result<CoxeterDatum> {
        types::validate_matrix(&matrix)?;
        let cartan = types::cartan_of(&matrix);
        let roots = RootSystem::generate(&cartan, ROOT_CAP);
        Ok(CoxeterDatum {
            label: None,
            matrix,
            cartan,
            roots,
            order,
            length_guard: DEFAULT_LENGTH_GUARD,
            table: OnceLock::new(),
        })
    }

    /// Like [`CoxeterDatum::from_matrix`] with a custom word-length guard.
    pub fn from_matrix_with_guard(matrix: Vec<Vec<u32>>, guard: usize) -> Result<Arc<CoxeterDatum>> {
        let mut d = Self::build(matrix, None)?;
        d.length_guard = guard;
        Ok(Arc::new(d))
    }

    pub fn label(&self) -> &str {
        self.label.as_deref().unwrap_or("custom")
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn is_finite(&self) -> bool {
        self.roots.is_some()
    }

    pub fn root_system(&self) -> Option<&RootSystem> {
        self.roots.as_ref()
    }

    /// Group order when finite and known without enumeration.
    pub fn order_hint(&self) -> Option<u128> {
        if !self.is_finite() {
            return None;
        }
        self.order
    }

    pub fn generator(&self, s: usize) -> GroupElement {
        GroupElement { word: vec![s as u8] }
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).map(|s| self.generator(s)).collect()
    }

    fn check_indices(&self, word: &[u8]) -> Result<()> {
        if let Some(&bad) = word.iter().find(|&&s| s as usize >= self.rank()) {
            return Err(Error::invalid(format!(
                "generator index {} out of range for rank {}",
                bad as usize + 1,
                self.rank()
            )));
        }
        Ok(())
    }

    /// Parses a 1-based word such as `[2,1,2]` or `2,1,2` or `212`.
    pub fn parse_word(&self, text: &str) -> Result<Vec<u8>> {
        let t = text.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if t.is_empty() || t == "e" {
            return Ok(Vec::new());
        }
        let items: Vec<&str> = if t.contains(',') || t.contains(' ') {
            t.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty()).collect()
        } else {
            t.split("").filter(|p| !p.is_empty()).collect()
        };
        let word = items
            .into_iter()
            .map(|p| match p.parse::<usize>() {
                Ok(v) if v >= 1 && v <= self.rank() => Ok((v - 1) as u8),
                _ => Err(Error::invalid(format!("bad generator `{p}` in word `{text}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(word)
    }

    /// ShortLex-minimal reduced word of the element represented by `word`.
    pub fn normalize(&self, word: &[u8]) -> Result<GroupElement> {
        self.check_indices(word)?;
        match &self.roots {
            Some(rs) => Ok(GroupElement { word: rs.shortlex_word(&rs.perm_of_word(word)) }),
            None => self.normalize_general(word),
        }
    }

    /// Word arithmetic through the integral reflection representation; used
    /// for infinite data.
    fn normalize_general(&self, word: &[u8]) -> Result<GroupElement> {
        check_guard("length", word.len(), self.length_guard)?;
        let n = self.rank();
        // matrix of w^{-1} acting on simple-root coordinates, as columns
        let mut inv: Vec<Vec<i128>> = (0..n)
            .map(|j| (0..n).map(|i| i128::from(i == j)).collect())
            .collect();
        // w^{-1} = s_ik ... s_i1, columns of (w^{-1} s) are w^{-1} applied to s(e_j)
        let apply_right = |inv: &mut Vec<Vec<i128>>, s: usize| -> Result<()> {
            // new column j = inv(s(e_j)) = inv(e_j) - A[s][j] * inv(e_s)
            let col_s = inv[s].clone();
            for j in 0..n {
                let a = self.cartan[s][j] as i128;
                if a == 0 {
                    continue;
                }
                for i in 0..n {
                    inv[j][i] = inv[j][i]
                        .checked_sub(a.checked_mul(col_s[i]).ok_or_else(overflow)?)
                        .ok_or_else(overflow)?;
                }
            }
            Ok(())
        };
        for &s in word {
            // (u s)^{-1} = s u^{-1}: left-multiply, i.e. apply s to each column
            for col in inv.iter_mut() {
                let pairing: i128 = (0..n).map(|k| self.cartan[s as usize][k] as i128 * col[k]).sum();
                col[s as usize] = col[s as usize].checked_sub(pairing).ok_or_else(overflow)?;
            }
        }
        let mut out = Vec::new();
        loop {
            let Some(s) = (0..n).find(|&s| inv[s].iter().any(|&c| c < 0)) else {
                break;
            };
            out.push(s as u8);
            apply_right(&mut inv, s)?;
            if out.len() > word.len() {
                return Err(Error::integrity("normal form longer than input word"));
            }
        }
        Ok(GroupElement { word: out })
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        let mut w = x.word.clone();
        w.extend_from_slice(&y.word);
        self.normalize(&w)
    }

    pub fn multiply_generator(&self, x: &GroupElement, s: usize) -> Result<GroupElement> {
        let mut w = x.word.clone();
        w.push(s as u8);
        self.normalize(&w)
    }

    pub fn inverse(&self, x: &GroupElement) -> Result<GroupElement> {
        let w: Vec<u8> = x.word.iter().rev().copied().collect();
        self.normalize(&w)
    }

    pub fn length(&self, x: &GroupElement) -> usize {
        x.length()
    }

    /// Generators `s` with `l(xs) < l(x)`.
    pub fn right_descents(&self, x: &GroupElement) -> Result<Vec<usize>> {
        match &self.roots {
            Some(rs) => {
                let p = rs.perm_of_word(&x.word);
                Ok((0..self.rank()).filter(|&s| rs.is_negative(p[s])).collect())
            }
            None => {
                let mut out = Vec::new();
                for s in 0..self.rank() {
                    if self.multiply_generator(x, s)?.length() < x.length() {
                        out.push(s);
                    }
                }
                Ok(out)
            }
        }
    }

    /// Generators `s` with `l(sx) < l(x)`.
    pub fn left_descents(&self, x: &GroupElement) -> Result<Vec<usize>> {
        self.right_descents(&self.inverse(x)?)
    }

    /// All elements sorted by (length, ShortLex).
    pub fn enumerate(&self) -> Result<Vec<GroupElement>> {
        Ok(self.table(DEFAULT_ENUMERATION_GUARD)?.elements().to_vec())
    }

    /// Index tables for the whole (finite) group, built once per datum.
    pub fn table(&self, guard: usize) -> Result<Arc<IndexedCoxeter>> {
        if let Some(t) = self.table.get() {
            check_guard("group order", t.len(), guard)?;
            return Ok(t.clone());
        }
        let rs = self
            .roots
            .as_ref()
            .ok_or_else(|| Error::invalid(format!("Coxeter datum {} is infinite", self.label())))?;
        if let Some(order) = self.order {
            check_guard("group order", usize::try_from(order).unwrap_or(usize::MAX), guard)?;
        }
        let t = Arc::new(IndexedCoxeter::full_group(self.rank(), rs, guard)?);
        Ok(self.table.get_or_init(|| t).clone())
    }

    /// Subword-property Bruhat order.
    pub fn bruhat_leq(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        let mut memo = HashMap::new();
        self.bruhat_rec(x, y, &mut memo)
    }

    fn bruhat_rec(
        &self,
        x: &GroupElement,
        y: &GroupElement,
        memo: &mut HashMap<(GroupElement, GroupElement), bool>,
    ) -> Result<bool> {
        if x.length() > y.length() {
            return Ok(false);
        }
        if x.is_identity() {
            return Ok(true);
        }
        if x.length() == y.length() {
            return Ok(x == y);
        }
        if let Some(&b) = memo.get(&(x.clone(), y.clone())) {
            return Ok(b);
        }
        // last letter of the normal form is a right descent of y
        let s = *y.word.last().expect("nonidentity") as usize;
        let ys = GroupElement { word: y.word[..y.word.len() - 1].to_vec() };
        let xs = self.multiply_generator(x, s)?;
        let m = if xs.length() < x.length() { xs } else { x.clone() };
        let r = self.bruhat_rec(&m, &ys, memo)?;
        memo.insert((x.clone(), y.clone()), r);
        Ok(r)
    }

    /// Elements of the Bruhat interval `[e, w]`.
    pub fn bruhat_interval(&self, w: &GroupElement, guard: usize) -> Result<Vec<GroupElement>> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(GroupElement::identity());
        for &s in &w.word {
            let extra = set
                .iter()
                .map(|x| self.multiply_generator(x, s as usize))
                .collect::<Result<Vec<_>>>()?;
            set.extend(extra);
            check_guard("interval size", set.len(), guard)?;
        }
        Ok(set.into_iter().collect())
    }
}

fn overflow() -> Error {
    Error::invalid("root coefficients overflowed; word too long for this Coxeter datum")
}
