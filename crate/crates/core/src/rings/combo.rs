//! Finite formal linear combinations of group elements.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::poly::TruncPoly;
use super::yrat::YRational;
use crate::error::{Error, Result};
use crate::weyl::{GroupType, SignedPermutation};

pub trait Coefficient: Clone + PartialEq + fmt::Display {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
}

impl Coefficient for TruncPoly {
    fn zero() -> Self {
        TruncPoly::zero()
    }
    fn is_zero(&self) -> bool {
        TruncPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Coefficient for YRational {
    fn zero() -> Self {
        YRational::zero()
    }
    fn is_zero(&self) -> bool {
        YRational::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn negated(&self) -> Self {
        -self
    }
}

/// `Σ c_w · [w]` over elements of one group type, without zero terms.
#[derive(Clone, PartialEq)]
pub struct FCombo<C> {
    ty: GroupType,
    terms: BTreeMap<SignedPermutation, C>,
}

impl<C: Coefficient> FCombo<C> {
    pub fn new(ty: GroupType) -> Self {
        FCombo { ty, terms: BTreeMap::new() }
    }

    pub fn basis(ty: GroupType, w: SignedPermutation, c: C) -> Result<Self> {
        let mut out = FCombo::new(ty);
        out.add(w, c)?;
        Ok(out)
    }

    pub fn group_type(&self) -> GroupType {
        self.ty
    }

    pub fn add(&mut self, w: SignedPermutation, c: C) -> Result<()> {
        w.check_in(self.ty)?;
        self.add_unchecked(w, c);
        Ok(())
    }

    pub(crate) fn add_unchecked(&mut self, w: SignedPermutation, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(slot) => {
                let sum = slot.plus(&c);
                if sum.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_combo(&mut self, other: &FCombo<C>) -> Result<()> {
        if other.ty != self.ty {
            return Err(Error::TypeMismatch { expected: self.ty, found: other.ty });
        }
        for (w, c) in &other.terms {
            self.add_unchecked(w.clone(), c.clone());
        }
        Ok(())
    }

    pub fn sub_combo(&mut self, other: &FCombo<C>) -> Result<()> {
        if other.ty != self.ty {
            return Err(Error::TypeMismatch { expected: self.ty, found: other.ty });
        }
        for (w, c) in &other.terms {
            self.add_unchecked(w.clone(), c.negated());
        }
        Ok(())
    }

    pub fn get(&self, w: &SignedPermutation) -> Option<&C> {
        self.terms.get(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SignedPermutation, &C)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &SignedPermutation> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map_coeffs(&self, f: impl Fn(&SignedPermutation, &C) -> C) -> FCombo<C> {
        let mut out = FCombo::new(self.ty);
        for (w, c) in &self.terms {
            out.add_unchecked(w.clone(), f(w, c));
        }
        out
    }

    pub fn try_map_coeffs(&self, f: impl Fn(&SignedPermutation, &C) -> Result<C>) -> Result<FCombo<C>> {
        let mut out = FCombo::new(self.ty);
        for (w, c) in &self.terms {
            out.add_unchecked(w.clone(), f(w, c)?);
        }
        Ok(out)
    }

    /// Largest support among the keys.
    pub fn max_support(&self) -> usize {
        self.terms.keys().map(SignedPermutation::support).max().unwrap_or(0)
    }

    pub fn into_terms(self) -> BTreeMap<SignedPermutation, C> {
        self.terms
    }
}

impl FCombo<YRational> {
    pub fn scale(&self, c: &YRational) -> FCombo<YRational> {
        self.map_coeffs(|_, a| a * c)
    }
}

impl FCombo<TruncPoly> {
    pub fn scale(&self, c: &TruncPoly) -> FCombo<TruncPoly> {
        self.map_coeffs(|_, a| a * c)
    }

    /// Lifts `Z[β]` coefficients into the localized ring.
    pub fn to_yrational(&self) -> FCombo<YRational> {
        let mut out = FCombo::new(self.ty);
        for (w, c) in &self.terms {
            out.add_unchecked(w.clone(), YRational::from(c.clone()));
        }
        out
    }

    pub fn scale_int(&self, c: &BigInt) -> FCombo<TruncPoly> {
        self.map_coeffs(|_, a| a.scale(c))
    }
}

impl<C: Coefficient> fmt::Display for FCombo<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})*G[{w}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<C: Coefficient> fmt::Debug for FCombo<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{self}", self.ty)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let w: SignedPermutation = "2,1".parse().unwrap();
        let mut c = FCombo::basis(GroupType::A, w.clone(), TruncPoly::beta()).unwrap();
        c.add(w, -TruncPoly::beta()).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn rejects_foreign_keys() {
        let mut c: FCombo<TruncPoly> = FCombo::new(GroupType::D);
        assert!(c.add("-1".parse().unwrap(), TruncPoly::one()).is_err());
        let other: FCombo<TruncPoly> = FCombo::new(GroupType::B);
        assert!(c.add_combo(&other).is_err());
    }
}
