//! The extended algebra `H ⊗ Z[Ω]` with
//! `(h1 ⊗ x1)(h2 ⊗ x2) = h1 · Υ(x1)(h2) ⊗ x1 x2`, where `Υ: Ω -> Aut(diagram)`.

use std::collections::BTreeMap;
use std::collections::btree_map::Entry;
use std::fmt;
use std::sync::Arc;

use super::element::{Basis, HeckeElement};
use super::kl::KlTable;
use super::laurent::LaurentPoly;
use crate::coxeter::{CoxeterDatum, DiagramAutomorphism, GroupElement};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Perm};

#[derive(Debug)]
pub struct ExtendedHeckeDatum {
    datum: Arc<CoxeterDatum>,
    omega: Arc<FiniteGroup>,
    action: Vec<DiagramAutomorphism>,
}

impl ExtendedHeckeDatum {
    /// `images[i]` is the automorphism attached to `omega.generators()[i]`.
    pub fn new(
        datum: Arc<CoxeterDatum>,
        omega: Arc<FiniteGroup>,
        images: Vec<DiagramAutomorphism>,
    ) -> Result<Arc<Self>> {
        let gens = omega.generator_indices();
        if gens.len() != images.len() {
            return Err(Error::invalid("one diagram automorphism per generator of Ω is required"));
        }
        for a in &images {
            DiagramAutomorphism::new(&datum, a.perm.clone())?;
        }
        let rank = datum.rank();
        let mut action: Vec<Option<DiagramAutomorphism>> = vec![None; omega.order()];
        action[0] = Some(DiagramAutomorphism::identity(rank));
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            let ax = action[x].clone().expect("assigned");
            for (g, img) in gens.iter().zip(&images) {
                let y = omega.mul(x, *g as usize);
                let ay = ax.compose(img);
                match &action[y] {
                    None => {
                        action[y] = Some(ay);
                        queue.push(y);
                    }
                    Some(existing) if *existing != ay => {
                        return Err(Error::invalid("Ω action is not a group homomorphism"));
                    }
                    Some(_) => {}
                }
            }
        }
        let action = action.into_iter().map(|a| a.expect("Ω generated by its generators")).collect();
        Ok(Arc::new(ExtendedHeckeDatum { datum, omega, action }))
    }

    /// Trivial `Ω`.
    pub fn plain(datum: Arc<CoxeterDatum>) -> Arc<Self> {
        let rank = datum.rank();
        Arc::new(ExtendedHeckeDatum {
            datum,
            omega: FiniteGroup::trivial(),
            action: vec![DiagramAutomorphism::identity(rank)],
        })
    }

    /// Parses `Z<m>` or `Z<m>:<p1,..,pr>`: a cyclic `Ω` whose generator
    /// permutes the (1-based) Coxeter generators as listed.
    pub fn parse(datum: Arc<CoxeterDatum>, spec: &str) -> Result<Arc<Self>> {
        let spec = spec.trim();
        if spec.is_empty() || spec == "1" || spec == "trivial" {
            return Ok(Self::plain(datum));
        }
        let bad = || Error::invalid(format!("bad Ω spec `{spec}` (expected Z<m>[:<perm>])"));
        let body = spec.strip_prefix('Z').or_else(|| spec.strip_prefix('z')).ok_or_else(bad)?;
        let (m, perm) = match body.split_once(':') {
            Some((m, p)) => (m, Some(p)),
            None => (body, None),
        };
        let m: usize = m.trim().parse().map_err(|_| bad())?;
        if m == 0 {
            return Err(bad());
        }
        let rank = datum.rank();
        let auto = match perm {
            None => DiagramAutomorphism::identity(rank),
            Some(p) => {
                let images = p
                    .trim()
                    .trim_start_matches('[')
                    .trim_end_matches(']')
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| match t.trim().parse::<usize>() {
                        Ok(v) if v >= 1 && v <= rank => Ok((v - 1) as u8),
                        _ => Err(bad()),
                    })
                    .collect::<Result<Vec<u8>>>()?;
                DiagramAutomorphism::new(&datum, images)?
            }
        };
        let omega = FiniteGroup::cyclic(m);
        let omega = if m == 1 { FiniteGroup::trivial() } else { omega };
        let images = if m == 1 { Vec::new() } else { vec![auto] };
        Self::new(datum, omega, images)
    }

    pub fn datum(&self) -> &Arc<CoxeterDatum> {
        &self.datum
    }

    pub fn omega(&self) -> &Arc<FiniteGroup> {
        &self.omega
    }

    pub fn action(&self, x: usize) -> &DiagramAutomorphism {
        &self.action[x]
    }

    pub fn omega_element(&self, x: usize) -> &Perm {
        self.omega.element(x)
    }

    pub fn apply(&self, x: usize, w: &GroupElement) -> Result<GroupElement> {
        self.action[x].apply(&self.datum, w)
    }
}

#[derive(Clone, PartialEq)]
pub struct ExtendedHeckeElement {
    basis: Basis,
    terms: BTreeMap<(GroupElement, u32), LaurentPoly>,
}

impl ExtendedHeckeElement {
    pub fn zero(basis: Basis) -> Self {
        ExtendedHeckeElement { basis, terms: BTreeMap::new() }
    }

    /// `H_w ⊗ x` or `b_w ⊗ x`.
    pub fn basis_element(basis: Basis, w: GroupElement, x: usize) -> Self {
        let mut e = Self::zero(basis);
        e.add_term(w, x as u32, &LaurentPoly::one());
        e
    }

    pub fn from_hecke(h: &HeckeElement, x: usize) -> Self {
        let mut e = Self::zero(h.basis());
        for (w, c) in h.terms() {
            e.add_term(w.clone(), x as u32, c);
        }
        e
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<(GroupElement, u32), LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, w: &GroupElement, x: usize) -> LaurentPoly {
        self.terms.get(&(w.clone(), x as u32)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: GroupElement, x: u32, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((w, x)) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn add(&self, other: &ExtendedHeckeElement) -> Result<ExtendedHeckeElement> {
        if self.basis != other.basis {
            return Err(Error::invalid("extended elements in different bases"));
        }
        let mut out = self.clone();
        for ((w, x), c) in &other.terms {
            out.add_term(w.clone(), *x, c);
        }
        Ok(out)
    }
}

impl fmt::Display for ExtendedHeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let sym = match self.basis {
            Basis::Standard => "H",
            Basis::Kl => "b",
        };
        let parts: Vec<String> = self.terms.iter().map(|((w, x), c)| format!("({c}){sym}{w}⊗ω{x}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for ExtendedHeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Bilinear extension of `(h1 ⊗ x1)(h2 ⊗ x2) = h1 Υ(x1)(h2) ⊗ x1 x2`.
/// KL-basis inputs are multiplied through the standard basis and
/// re-decomposed with `table`.
pub fn extended_multiply(
    ed: &ExtendedHeckeDatum,
    table: &KlTable,
    a: &ExtendedHeckeElement,
    b: &ExtendedHeckeElement,
) -> Result<ExtendedHeckeElement> {
    if a.basis != b.basis {
        return Err(Error::invalid("extended elements in different bases"));
    }
    if !Arc::ptr_eq(table.datum(), &ed.datum) {
        return Err(Error::invalid("KL table belongs to a different Coxeter datum"));
    }
    let datum = &ed.datum;
    let mut out = ExtendedHeckeElement::zero(a.basis);
    for ((y1, x1), c1) in &a.terms {
        let left = HeckeElement::basis_element(datum.clone(), a.basis, y1.clone()).to_standard(table)?;
        for ((y2, x2), c2) in &b.terms {
            let y2t = ed.apply(*x1 as usize, y2)?;
            let right = HeckeElement::basis_element(datum.clone(), a.basis, y2t).to_standard(table)?;
            let mut prod = left.multiply_standard(&right)?;
            if a.basis == Basis::Kl {
                prod = prod.decompose_kl(table)?;
            }
            let x = ed.omega.mul(*x1 as usize, *x2 as usize) as u32;
            let c = c1 * c2;
            for (z, p) in prod.terms() {
                out.add_term(z.clone(), x, &(p * &c));
            }
        }
    }
    Ok(out)
}
