//! The localized coefficient ring: polynomials divided by products of
//! `(1 + β y_i)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::poly::{Family, Monomial, TruncPoly, Var};
use crate::weyl::SignedPermutation;

/// `numerator / ∏ (1 + β y_i)^{e_i}`, kept normalized so that no
/// denominator factor divides the numerator.
#[derive(Clone, Default)]
pub struct YRational {
    num: TruncPoly,
    den: BTreeMap<u32, u32>,
}

impl YRational {
    pub fn zero() -> Self {
        YRational::default()
    }

    pub fn one() -> Self {
        YRational::from(TruncPoly::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        YRational::from(TruncPoly::constant(c))
    }

    pub fn y(i: u32) -> Self {
        YRational::from(TruncPoly::y(i))
    }

    /// `(1 + β y_i)^{-e}`.
    pub fn inv_one_plus_beta(i: u32, e: u32) -> Self {
        let mut den = BTreeMap::new();
        if e > 0 {
            den.insert(i, e);
        }
        YRational { num: TruncPoly::one(), den }
    }

    /// The value of `y_k` for any nonzero integer `k`, with
    /// `y_{-i} = ⊖y_i = -y_i / (1 + β y_i)`.
    pub fn y_signed(k: i32) -> Self {
        let i = k.unsigned_abs();
        if k > 0 {
            YRational::y(i)
        } else {
            YRational::new(-TruncPoly::y(i), [(i, 1)].into())
        }
    }

    /// `(1 + β y_k)^{-1}` for any nonzero integer `k`.
    pub fn inv_one_plus_beta_signed(k: i32) -> Self {
        let i = k.unsigned_abs();
        if k > 0 {
            YRational::inv_one_plus_beta(i, 1)
        } else {
            YRational::from(TruncPoly::one_plus_beta(Var::y(i)))
        }
    }

    pub fn new(num: TruncPoly, den: BTreeMap<u32, u32>) -> Self {
        let mut r = YRational { num: num.unbounded(), den };
        r.den.retain(|_, e| *e > 0);
        r.normalize();
        r
    }

    pub fn numerator(&self) -> &TruncPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BTreeMap<u32, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let keys: Vec<u32> = self.den.keys().copied().collect();
        for i in keys {
            let v = Var::y(i);
            while self.den[&i] > 0 {
                match self.num.div_one_plus_beta(v) {
                    Some(q) => {
                        self.num = q;
                        *self.den.get_mut(&i).unwrap() -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, e| *e > 0);
    }

    fn denominator_poly(den: &BTreeMap<u32, u32>) -> TruncPoly {
        let mut out = TruncPoly::one();
        for (&i, &e) in den {
            out = out * TruncPoly::one_plus_beta(Var::y(i)).pow(e);
        }
        out
    }

    /// Rewrites over the denominator `den`, which must dominate `self.den`.
    fn lift_numerator(&self, den: &BTreeMap<u32, u32>) -> TruncPoly {
        let mut extra = BTreeMap::new();
        for (&i, &e) in den {
            let have = self.den.get(&i).copied().unwrap_or(0);
            if e > have {
                extra.insert(i, e - have);
            }
        }
        &self.num * &YRational::denominator_poly(&extra)
    }

    fn common_den(a: &BTreeMap<u32, u32>, b: &BTreeMap<u32, u32>) -> BTreeMap<u32, u32> {
        let mut out = a.clone();
        for (&i, &e) in b {
            let slot = out.entry(i).or_insert(0);
            *slot = (*slot).max(e);
        }
        out
    }

    /// Degree under `deg β = -1`, `deg y_i = 1`, when homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        self.num.homogeneous_degree()
    }

    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        self.num.is_homogeneous_of(d)
    }

    pub fn mul_poly(&self, p: &TruncPoly) -> YRational {
        YRational::new(&self.num * p, self.den.clone())
    }

    pub fn mul_beta(&self, k: u32) -> YRational {
        YRational { num: self.num.mul_beta(k), den: self.den.clone() }
    }

    pub fn div_beta(&self, k: u32) -> crate::error::Result<YRational> {
        Ok(YRational { num: self.num.div_beta(k)?, den: self.den.clone() })
    }

    pub fn scale(&self, c: &BigInt) -> YRational {
        YRational::new(self.num.scale(c), self.den.clone())
    }

    /// Sets every `y_i` to zero.
    pub fn at_y_zero(&self) -> YRational {
        YRational::from(self.num.zero_vars(|v| v.family == Family::Y))
    }

    /// Power series expansion up to total degree `d`.
    pub fn to_series(&self, d: u32) -> TruncPoly {
        let mut out = self.num.clone().bounded(d);
        for (&i, &e) in &self.den {
            out = out * TruncPoly::inverse_one_plus_beta(Var::y(i), e, d);
        }
        out
    }

    /// `w ⋆ f`: substitutes `y_i ↦ y_{w(i)}` using `y_{-j} = ⊖y_j`.
    pub fn star(&self, w: &SignedPermutation) -> YRational {
        if w.is_identity() || self.is_zero() {
            return self.clone();
        }
        let mut out = YRational::zero();
        for (m, c) in self.num.terms() {
            let mut pos = Vec::new();
            let mut den = BTreeMap::new();
            let mut negate = false;
            let mut rest = Vec::new();
            for &(v, e) in m.vars() {
                if v.family != Family::Y {
                    rest.push((v, e));
                    continue;
                }
                let img = w.apply(v.index as i32);
                if img > 0 {
                    pos.push((Var::y(img as u32), e));
                } else {
                    let j = img.unsigned_abs();
                    pos.push((Var::y(j), e));
                    *den.entry(j).or_insert(0) += e;
                    negate ^= e % 2 == 1;
                }
            }
            let mono = Monomial::new(m.beta(), pos.into_iter().chain(rest));
            let coeff = if negate { -c.clone() } else { c.clone() };
            out = out + YRational::new(TruncPoly::term(mono, coeff), den);
        }
        let mut den_new = BTreeMap::new();
        let mut factor = TruncPoly::one();
        for (&i, &e) in &self.den {
            let img = w.apply(i as i32);
            if img > 0 {
                *den_new.entry(img as u32).or_insert(0) += e;
            } else {
                factor = factor * TruncPoly::one_plus_beta(Var::y(img.unsigned_abs())).pow(e);
            }
        }
        out * YRational::new(factor, den_new)
    }

    fn add_ref(&self, other: &YRational) -> YRational {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let den = YRational::common_den(&self.den, &other.den);
        let num = self.lift_numerator(&den) + other.lift_numerator(&den);
        YRational::new(num, den)
    }

    fn mul_ref(&self, other: &YRational) -> YRational {
        let mut den = self.den.clone();
        for (&i, &e) in &other.den {
            *den.entry(i).or_insert(0) += e;
        }
        YRational::new(&self.num * &other.num, den)
    }
}

impl From<TruncPoly> for YRational {
    fn from(p: TruncPoly) -> Self {
        YRational { num: p.unbounded(), den: BTreeMap::new() }
    }
}

impl PartialEq for YRational {
    /// Decided by cross-multiplication.
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let den = YRational::common_den(&self.den, &other.den);
        self.lift_numerator(&den) == other.lift_numerator(&den)
    }
}

impl Eq for YRational {}

impl Add<&YRational> for &YRational {
    type Output = YRational;
    fn add(self, rhs: &YRational) -> YRational {
        self.add_ref(rhs)
    }
}

impl Add for YRational {
    type Output = YRational;
    fn add(self, rhs: YRational) -> YRational {
        self.add_ref(&rhs)
    }
}

impl Sub<&YRational> for &YRational {
    type Output = YRational;
    fn sub(self, rhs: &YRational) -> YRational {
        self.add_ref(&-rhs)
    }
}

impl Sub for YRational {
    type Output = YRational;
    fn sub(self, rhs: YRational) -> YRational {
        &self - &rhs
    }
}

impl Mul<&YRational> for &YRational {
    type Output = YRational;
    fn mul(self, rhs: &YRational) -> YRational {
        self.mul_ref(rhs)
    }
}

impl Mul for YRational {
    type Output = YRational;
    fn mul(self, rhs: YRational) -> YRational {
        self.mul_ref(&rhs)
    }
}

impl Neg for &YRational {
    type Output = YRational;
    fn neg(self) -> YRational {
        YRational { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for YRational {
    type Output = YRational;
    fn neg(self) -> YRational {
        -&self
    }
}

fn render_den(den: &BTreeMap<u32, u32>) -> String {
    let parts: Vec<String> = den
        .iter()
        .map(|(&i, &e)| if e == 1 { format!("(1+b*y{i})") } else { format!("(1+b*y{i})^{e}") })
        .collect();
    if parts.len() == 1 {
        parts[0].clone()
    } else {
        format!("({})", parts.join("*"))
    }
}

impl fmt::Display for YRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() == 1 {
            write!(f, "{}/{}", self.num, render_den(&self.den))
        } else {
            write!(f, "({})/{}", self.num, render_den(&self.den))
        }
    }
}

impl fmt::Debug for YRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
