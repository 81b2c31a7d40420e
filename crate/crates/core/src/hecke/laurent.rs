//! Exact Laurent polynomials in one variable over the integers.
//!
//! Coefficients are `i64` with checked arithmetic; an overflow panics rather
//! than wrapping.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// `Σ coeffs[i] · v^(low + i)`, with no leading or trailing zeros. The zero
/// polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The variable `v`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    pub fn v_inv() -> Self {
        Self::monomial(1, -1)
    }

    pub fn monomial(c: i64, exp: i32) -> Self {
        if c == 0 {
            return Self::zero();
        }
        LaurentPoly { low: exp, coeffs: vec![c] }
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p += &Self::monomial(c, e);
        }
        p
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            return Self::zero();
        }
        self.coeffs.drain(..lead);
        self.low += lead as i32;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs == [1]
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        let i = exp - self.low;
        if i < 0 {
            return 0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.low + i as i32, c))
    }

    /// The ring involution `v ↦ v^-1`.
    pub fn bar(&self) -> Self {
        match self.degree() {
            None => Self::zero(),
            Some(d) => LaurentPoly {
                low: -d,
                coeffs: self.coeffs.iter().rev().copied().collect(),
            },
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|&x| checked(x.checked_mul(c))).collect(),
        }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().fold(0i64, |a, &c| checked(a.checked_add(c)))
    }

    /// Terms with strictly positive exponent.
    pub fn positive_part(&self) -> Self {
        Self::from_terms(self.terms().filter(|&(e, _)| e > 0))
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Renders with the given variable name, e.g. `1+q` or `v^-1+v`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms() {
            let mag = c.unsigned_abs();
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push(if c < 0 { '-' } else { '+' });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag == 1 {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}{mono}"));
            }
        }
        out
    }
}

fn checked(v: Option<i64>) -> i64 {
    v.expect("Laurent polynomial coefficient overflow")
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("v"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("v"))
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        let low = self.low.min(rhs.low);
        let high = self.degree().unwrap().max(rhs.degree().unwrap());
        let mut coeffs = vec![0i64; (high - low + 1) as usize];
        for (e, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + e] = *c;
        }
        for (e, c) in rhs.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(rhs.low - low) as usize + e];
            *slot = checked(slot.checked_add(*c));
        }
        *self = LaurentPoly { low, coeffs }.normalized();
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self += &(-rhs);
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let slot = &mut coeffs[i + j];
                *slot = checked(slot.checked_add(checked(a.checked_mul(b))));
            }
        }
        LaurentPoly { low: self.low + rhs.low, coeffs }.normalized()
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// Serialized as a list of `[exponent, coefficient]` pairs.
impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms().map(|(e, c)| [e as i64, c]))
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i32, i64)> = Vec::deserialize(d)?;
        Ok(LaurentPoly::from_terms(pairs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn bar_and_products() {
        assert_eq!(p(&[(1, 1), (2, 3)]).bar(), p(&[(-1, 1), (-2, 3)]));
        let a = p(&[(1, 1), (-1, 1)]);
        let b = p(&[(1, 1), (-1, -1)]);
        assert_eq!(&a * &b, p(&[(2, 1), (-2, -1)]));
        assert!((&a - &a).is_zero());
        assert_eq!(p(&[(0, 1), (1, 1)]).render("q"), "1+q");
        assert_eq!(p(&[(-1, 1), (1, -2)]).render("v"), "v^-1-2v");
        assert_eq!(LaurentPoly::zero().valuation(), None);
        assert_eq!(a.valuation(), Some(-1));
        assert_eq!(a.degree(), Some(1));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i32..6, -20i64..20), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn serde_round_trip(a in arb_poly()) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), a);
        }
    }
}
