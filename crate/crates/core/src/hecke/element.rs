//! Elements of the Hecke algebra over `Z[v,v^-1]`, in the standard basis
//! `H_w` or the KL basis `b_w`.
//!
//! Quadratic relation: `H_s^2 = 1 + (v^-1 - v) H_s`, so `H_s^-1 = H_s + v - v^-1`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::kl::KlTable;
use super::laurent::LaurentPoly;
use crate::coxeter::{CoxeterDatum, GroupElement};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Standard,
    Kl,
}

#[derive(Clone)]
pub struct HeckeElement {
    datum: Arc<CoxeterDatum>,
    basis: Basis,
    terms: BTreeMap<GroupElement, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero(datum: Arc<CoxeterDatum>, basis: Basis) -> Self {
        HeckeElement { datum, basis, terms: BTreeMap::new() }
    }

    pub fn one(datum: Arc<CoxeterDatum>, basis: Basis) -> Self {
        Self::basis_element(datum, basis, GroupElement::identity())
    }

    /// `H_w` or `b_w`.
    pub fn basis_element(datum: Arc<CoxeterDatum>, basis: Basis, w: GroupElement) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, LaurentPoly::one());
        HeckeElement { datum, basis, terms }
    }

    /// Sums repeated keys and drops zero coefficients. Keys must be normal forms.
    pub fn from_terms(
        datum: Arc<CoxeterDatum>,
        basis: Basis,
        terms: impl IntoIterator<Item = (GroupElement, LaurentPoly)>,
    ) -> Self {
        let mut out = Self::zero(datum, basis);
        for (w, c) in terms {
            out.add_term(w, &c);
        }
        out
    }

    pub fn datum(&self) -> &Arc<CoxeterDatum> {
        &self.datum
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, w: &GroupElement) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, w: GroupElement, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
        }
    }

    fn check_compatible(&self, other: &HeckeElement) -> Result<()> {
        if !Arc::ptr_eq(&self.datum, &other.datum) {
            return Err(Error::invalid("Hecke elements over different Coxeter data"));
        }
        if self.basis != other.basis {
            return Err(Error::invalid("Hecke elements in different bases"));
        }
        Ok(())
    }

    pub fn add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElement {
        let terms = self
            .terms
            .iter()
            .map(|(w, p)| (w.clone(), p * c))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        HeckeElement { datum: self.datum.clone(), basis: self.basis, terms }
    }

    /// `self · H_s` in the standard basis.
    fn times_generator(&self, s: usize) -> Result<HeckeElement> {
        let q = &LaurentPoly::v_inv() - &LaurentPoly::v();
        let mut out = Self::zero(self.datum.clone(), Basis::Standard);
        for (x, c) in &self.terms {
            let xs = self.datum.multiply_generator(x, s)?;
            if xs.length() < x.length() {
                out.add_term(x.clone(), &(c * &q));
            }
            out.add_term(xs, c);
        }
        Ok(out)
    }

    /// Product of two standard-basis elements.
    pub fn multiply_standard(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.check_compatible(other)?;
        if self.basis != Basis::Standard {
            return Err(Error::invalid("multiply_standard expects standard-basis elements"));
        }
        let mut out = Self::zero(self.datum.clone(), Basis::Standard);
        for (y, c) in &other.terms {
            let mut part = self.clone();
            for &s in y.word() {
                part = part.times_generator(s as usize)?;
            }
            for (w, p) in &part.terms {
                out.add_term(w.clone(), &(p * c));
            }
        }
        Ok(out)
    }

    /// The bar involution: `v ↦ v^-1`, `H_w ↦ H_{w^-1}^-1`, `b_w ↦ b_w`.
    pub fn bar(&self) -> Result<HeckeElement> {
        match self.basis {
            Basis::Kl => Ok(HeckeElement {
                datum: self.datum.clone(),
                basis: Basis::Kl,
                terms: self.terms.iter().map(|(w, c)| (w.clone(), c.bar())).collect(),
            }),
            Basis::Standard => {
                let mut memo = HashMap::new();
                let mut out = Self::zero(self.datum.clone(), Basis::Standard);
                for (w, c) in &self.terms {
                    let bw = self.bar_standard(w, &mut memo)?;
                    for (x, p) in &bw.terms {
                        out.add_term(x.clone(), &(p * &c.bar()));
                    }
                }
                Ok(out)
            }
        }
    }

    fn bar_standard(
        &self,
        w: &GroupElement,
        memo: &mut HashMap<GroupElement, HeckeElement>,
    ) -> Result<HeckeElement> {
        if let Some(e) = memo.get(w) {
            return Ok(e.clone());
        }
        let out = if w.is_identity() {
            Self::one(self.datum.clone(), Basis::Standard)
        } else {
            // bar(H_w) = bar(H_{ws}) (H_s + v - v^-1) for the last letter s
            let s = *w.word().last().expect("nonidentity") as usize;
            let ws = GroupElement::from_normal_word(w.word()[..w.length() - 1].to_vec());
            let prefix = self.bar_standard(&ws, memo)?;
            let shift = &LaurentPoly::v() - &LaurentPoly::v_inv();
            prefix.times_generator(s)?.add(&prefix.scale(&shift))?
        };
        memo.insert(w.clone(), out.clone());
        Ok(out)
    }

    /// Re-expresses a KL-basis element in the standard basis.
    pub fn to_standard(&self, table: &KlTable) -> Result<HeckeElement> {
        if self.basis == Basis::Standard {
            return Ok(self.clone());
        }
        self.check_table(table)?;
        let mut out = Self::zero(self.datum.clone(), Basis::Standard);
        for (w, c) in &self.terms {
            for (x, h) in table.column(w)?.iter() {
                out.add_term(x.clone(), &(h * c));
            }
        }
        Ok(out)
    }

    /// Exact change of basis into the KL basis by peeling off the longest
    /// remaining term (the transition matrix is unitriangular).
    pub fn decompose_kl(&self, table: &KlTable) -> Result<HeckeElement> {
        if self.basis == Basis::Kl {
            return Ok(self.clone());
        }
        self.check_table(table)?;
        let mut rest = self.terms.clone();
        let mut out = Self::zero(self.datum.clone(), Basis::Kl);
        while let Some((z, c)) = rest.pop_last() {
            let col = table.column(&z)?;
            for (x, h) in col.iter() {
                if x == &z {
                    continue;
                }
                let slot = rest.entry(x.clone()).or_default();
                *slot -= &(h * &c);
                if slot.is_zero() {
                    rest.remove(x);
                }
            }
            out.add_term(z, &c);
        }
        Ok(out)
    }

    fn check_table(&self, table: &KlTable) -> Result<()> {
        if !Arc::ptr_eq(&self.datum, table.datum()) {
            return Err(Error::invalid("KL table belongs to a different Coxeter datum"));
        }
        Ok(())
    }

    /// Applies a relabeling of generators to every key (renormalizing words).
    pub fn map_elements(
        &self,
        f: impl Fn(&GroupElement) -> Result<GroupElement>,
    ) -> Result<HeckeElement> {
        let mut out = Self::zero(self.datum.clone(), self.basis);
        for (w, c) in &self.terms {
            out.add_term(f(w)?, c);
        }
        Ok(out)
    }
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.datum, &other.datum) && self.basis == other.basis && self.terms == other.terms
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let sym = match self.basis {
            Basis::Standard => "H",
            Basis::Kl => "b",
        };
        let parts: Vec<String> =
            self.terms.iter().map(|(w, c)| format!("({c}){sym}{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `b_w` expanded in the standard basis.
pub fn kl_element(table: &KlTable, w: &GroupElement) -> Result<HeckeElement> {
    HeckeElement::basis_element(table.datum().clone(), Basis::Kl, w.clone()).to_standard(table)
}

/// `h_{x,y,z}` with `b_x b_y = Σ_z h_{x,y,z} b_z`, by expanding both factors
/// in the standard basis and decomposing the product.
pub fn structure_constants(
    table: &KlTable,
    x: &GroupElement,
    y: &GroupElement,
) -> Result<BTreeMap<GroupElement, LaurentPoly>> {
    let prod = kl_element(table, x)?.multiply_standard(&kl_element(table, y)?)?;
    Ok(prod.decompose_kl(table)?.terms.clone())
}
