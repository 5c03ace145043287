//! Sparse polynomials over `Z[β]` in the variable families `x`, `y`, `z`,
//! optionally truncated at a total degree bound.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    X,
    Y,
    Z,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::X => 'x',
            Family::Y => 'y',
            Family::Z => 'z',
        }
    }
}

/// A variable `x_i`, `y_i` or `z_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub family: Family,
    pub index: u32,
}

impl Var {
    pub const fn x(i: u32) -> Var {
        Var { family: Family::X, index: i }
    }
    pub const fn y(i: u32) -> Var {
        Var { family: Family::Y, index: i }
    }
    pub const fn z(i: u32) -> Var {
        Var { family: Family::Z, index: i }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.index)
    }
}

/// `β^e · ∏ v^{a_v}` with variables sorted and exponents positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    beta: u32,
    vars: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn beta_pow(e: u32) -> Self {
        Monomial { beta: e, vars: Vec::new() }
    }

    pub fn var(v: Var) -> Self {
        Monomial { beta: 0, vars: vec![(v, 1)] }
    }

    /// Builds a monomial from arbitrary factors, merging repeats.
    pub fn new(beta: u32, factors: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in factors {
            if e > 0 {
                *map.entry(v).or_default() += e;
            }
        }
        Monomial { beta, vars: map.into_iter().collect() }
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    pub fn vars(&self) -> &[(Var, u32)] {
        &self.vars
    }

    /// Total degree in `x`, `y`, `z` (β excluded).
    pub fn degree(&self) -> u32 {
        self.vars.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.vars.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e)
    }

    pub fn is_constant(&self) -> bool {
        self.beta == 0 && self.vars.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut vars = Vec::with_capacity(self.vars.len() + other.vars.len());
        let (mut i, mut j) = (0, 0);
        while i < self.vars.len() && j < other.vars.len() {
            let (a, b) = (self.vars[i], other.vars[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    vars.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    vars.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    vars.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        vars.extend_from_slice(&self.vars[i..]);
        vars.extend_from_slice(&other.vars[j..]);
        Monomial { beta: self.beta + other.beta, vars }
    }

    /// Splits off the power of `v`.
    pub fn split(&self, v: Var) -> (u32, Monomial) {
        let mut rest = self.clone();
        let mut e = 0;
        if let Some(pos) = rest.vars.iter().position(|(w, _)| *w == v) {
            e = rest.vars.remove(pos).1;
        }
        (e, rest)
    }

    pub fn with_beta(&self, beta: u32) -> Monomial {
        Monomial { beta, vars: self.vars.clone() }
    }

    fn family_key(&self, fam: Family) -> (u32, Vec<(u32, u32)>) {
        let items: Vec<(u32, u32)> =
            self.vars.iter().filter(|(v, _)| v.family == fam).map(|(v, e)| (v.index, *e)).collect();
        (items.iter().map(|&(_, e)| e).sum(), items)
    }

    /// Order used for rendering: β exponent, then the `x`, `y`, `z` blocks,
    /// each by degree and then by index.
    pub fn canonical_cmp(&self, other: &Monomial) -> Ordering {
        self.beta.cmp(&other.beta).then_with(|| {
            for fam in [Family::X, Family::Y, Family::Z] {
                let (da, la) = self.family_key(fam);
                let (db, lb) = other.family_key(fam);
                let c = da.cmp(&db).then_with(|| la.cmp(&lb));
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.beta {
            0 => {}
            1 => parts.push("b".to_string()),
            e => parts.push(format!("b^{e}")),
        }
        for (v, e) in &self.vars {
            if *e == 1 {
                parts.push(v.to_string());
            } else {
                parts.push(format!("{v}^{e}"));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Exact polynomial in `β, x, y, z` with integer coefficients. When `bound`
/// is set, monomials of degree above it are discarded on every operation.
#[derive(Clone, Default)]
pub struct TruncPoly {
    terms: BTreeMap<Monomial, BigInt>,
    bound: Option<u32>,
}

impl PartialEq for TruncPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for TruncPoly {}

impl TruncPoly {
    pub fn zero() -> Self {
        TruncPoly::default()
    }

    pub fn one() -> Self {
        TruncPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        TruncPoly::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        TruncPoly { terms, bound: None }
    }

    pub fn var(v: Var) -> Self {
        TruncPoly::term(Monomial::var(v), 1)
    }

    pub fn x(i: u32) -> Self {
        TruncPoly::var(Var::x(i))
    }

    pub fn y(i: u32) -> Self {
        TruncPoly::var(Var::y(i))
    }

    pub fn z(i: u32) -> Self {
        TruncPoly::var(Var::z(i))
    }

    pub fn beta() -> Self {
        TruncPoly::beta_pow(1)
    }

    pub fn beta_pow(e: u32) -> Self {
        TruncPoly::term(Monomial::beta_pow(e), 1)
    }

    /// `1 + β v`.
    pub fn one_plus_beta(v: Var) -> Self {
        TruncPoly::one() + TruncPoly::term(Monomial::new(1, [(v, 1)]), 1)
    }

    /// `a ⊕ b = a + b + β a b`.
    pub fn oplus(a: &TruncPoly, b: &TruncPoly) -> Self {
        a + b + &(&TruncPoly::beta() * &(a * b))
    }

    pub fn bound(&self) -> Option<u32> {
        self.bound
    }

    /// Sets a new truncation bound (combined with the current one) and
    /// drops overflowing terms.
    pub fn truncated(mut self, bound: Option<u32>) -> Self {
        self.bound = min_bound(self.bound, bound);
        if let Some(d) = self.bound {
            self.terms.retain(|m, _| m.degree() <= d);
        }
        self
    }

    pub fn bounded(self, d: u32) -> Self {
        self.truncated(Some(d))
    }

    /// Forgets the truncation bound without changing any terms.
    pub fn unbounded(mut self) -> Self {
        self.bound = None;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Terms in rendering order.
    pub fn canonical_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.canonical_cmp(b.0));
        v
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&Monomial::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() || self.bound.is_some_and(|d| m.degree() > d) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> TruncPoly {
        if c.is_zero() {
            return TruncPoly { terms: BTreeMap::new(), bound: self.bound };
        }
        TruncPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(), bound: self.bound }
    }

    pub fn mul_beta(&self, k: u32) -> TruncPoly {
        TruncPoly {
            terms: self.terms.iter().map(|(m, a)| (m.with_beta(m.beta + k), a.clone())).collect(),
            bound: self.bound,
        }
    }

    /// Exact division by `β^k`.
    pub fn div_beta(&self, k: u32) -> Result<TruncPoly> {
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            if m.beta < k {
                return Err(Error::InexactDivision(format!("term {m} is not divisible by b^{k}")));
            }
            terms.insert(m.with_beta(m.beta - k), a.clone());
        }
        Ok(TruncPoly { terms, bound: self.bound })
    }

    pub fn pow(&self, k: u32) -> TruncPoly {
        let mut out = TruncPoly::one().truncated(self.bound);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn max_beta(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::beta).max()
    }

    /// Degree under `deg β = -1`, when every term has the same one.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| m.degree() as i64 - m.beta as i64);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        self.terms.keys().all(|m| m.degree() as i64 - m.beta as i64 == d)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// True if only `β` occurs.
    pub fn is_beta_only(&self) -> bool {
        self.terms.keys().all(|m| m.vars.is_empty())
    }

    pub fn mentions(&self, pred: impl Fn(Var) -> bool) -> bool {
        self.terms.keys().any(|m| m.vars.iter().any(|&(v, _)| pred(v)))
    }

    /// Largest index occurring in `fam`.
    pub fn max_index(&self, fam: Family) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.vars.iter())
            .filter(|(v, _)| v.family == fam)
            .map(|(v, _)| v.index)
            .max()
            .unwrap_or(0)
    }

    /// Renames variables; the map must be injective on the variables present.
    pub fn map_vars(&self, f: impl Fn(Var) -> Var) -> TruncPoly {
        let mut out = TruncPoly { terms: BTreeMap::new(), bound: self.bound };
        for (m, c) in &self.terms {
            let nm = Monomial::new(m.beta, m.vars.iter().map(|&(v, e)| (f(v), e)));
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Exchanges the variables `a` and `b`.
    pub fn swap_vars(&self, a: Var, b: Var) -> TruncPoly {
        self.map_vars(|v| {
            if v == a {
                b
            } else if v == b {
                a
            } else {
                v
            }
        })
    }

    /// Sets every variable matching `pred` to zero.
    pub fn zero_vars(&self, pred: impl Fn(Var) -> bool) -> TruncPoly {
        TruncPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.vars.iter().any(|&(v, _)| pred(v)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            bound: self.bound,
        }
    }

    /// Sets `β = 0`.
    pub fn beta_zero(&self) -> TruncPoly {
        TruncPoly {
            terms: self.terms.iter().filter(|(m, _)| m.beta == 0).map(|(m, c)| (m.clone(), c.clone())).collect(),
            bound: self.bound,
        }
    }

    /// Groups terms by the exponent of `v`.
    pub fn collect_by(&self, v: Var) -> BTreeMap<u32, TruncPoly> {
        let mut out: BTreeMap<u32, TruncPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            out.entry(e).or_insert_with(|| TruncPoly { terms: BTreeMap::new(), bound: None }).add_term(rest, c.clone());
        }
        out
    }

    /// Substitutes `v ↦ value`.
    pub fn substitute(&self, v: Var, value: &TruncPoly) -> TruncPoly {
        let bound = min_bound(self.bound, value.bound);
        let groups = self.collect_by(v);
        let mut out = TruncPoly::zero().truncated(bound);
        let mut power = TruncPoly::one().truncated(bound);
        let mut k = 0;
        for (e, coeff) in groups {
            while k < e {
                power = &power * value;
                k += 1;
            }
            out += &(&coeff.clone().truncated(bound) * &power);
        }
        out
    }

    /// Exact division by `a - b` for two distinct variables.
    pub fn div_difference(&self, a: Var, b: Var) -> Result<TruncPoly> {
        let groups = self.collect_by(a);
        let top = match groups.keys().next_back() {
            None => return Ok(TruncPoly::zero().truncated(self.bound)),
            Some(&k) => k,
        };
        let vb = TruncPoly::var(b);
        let mut q: Vec<TruncPoly> = vec![TruncPoly::zero(); top as usize];
        let mut carry = TruncPoly::zero();
        for k in (1..=top).rev() {
            let gk = groups.get(&k).cloned().unwrap_or_default();
            carry = &gk + &(&vb * &carry);
            q[k as usize - 1] = carry.clone();
        }
        let g0 = groups.get(&0).cloned().unwrap_or_default();
        let rem = &g0 + &(&vb * &carry);
        if !rem.is_zero() {
            return Err(Error::InexactDivision(format!("not divisible by {a} - {b}")));
        }
        let mut out = TruncPoly::zero();
        for (k, qk) in q.into_iter().enumerate() {
            out += &(&qk * &TruncPoly::var(a).pow(k as u32));
        }
        Ok(out.truncated(self.bound))
    }

    /// Exact division by `1 + β v`, if possible.
    pub fn div_one_plus_beta(&self, v: Var) -> Option<TruncPoly> {
        let groups = self.collect_by(v);
        let top = *groups.keys().next_back()?;
        if top == 0 {
            return None;
        }
        let mut out = TruncPoly::zero();
        let mut prev = TruncPoly::zero();
        for k in 0..top {
            let ck = groups.get(&k).cloned().unwrap_or_default();
            let qk = &ck - &prev.mul_beta(1);
            out += &(&qk * &TruncPoly::var(v).pow(k));
            prev = qk;
        }
        let ctop = groups.get(&top).cloned().unwrap_or_default();
        if ctop != prev.mul_beta(1) {
            return None;
        }
        Some(out.truncated(self.bound))
    }

    /// `(1 + β v)^{-e}` as a series up to degree `d`.
    pub fn inverse_one_plus_beta(v: Var, e: u32, d: u32) -> TruncPoly {
        let mut geo = TruncPoly::zero();
        for k in 0..=d {
            let sign: BigInt = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            geo.add_term(Monomial::new(k, [(v, k)]), sign);
        }
        geo.bounded(d).pow(e)
    }

    fn add_ref(&self, other: &TruncPoly) -> TruncPoly {
        let mut out = self.clone().truncated(other.bound);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn sub_ref(&self, other: &TruncPoly) -> TruncPoly {
        let mut out = self.clone().truncated(other.bound);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    fn mul_ref(&self, other: &TruncPoly) -> TruncPoly {
        let bound = min_bound(self.bound, other.bound);
        let mut out = TruncPoly { terms: BTreeMap::new(), bound };
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if bound.is_some_and(|d| da > d) {
                continue;
            }
            for (mb, cb) in &other.terms {
                if bound.is_some_and(|d| da + mb.degree() > d) {
                    continue;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

fn min_bound(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl From<i64> for TruncPoly {
    fn from(c: i64) -> Self {
        TruncPoly::constant(c)
    }
}

impl From<BigInt> for TruncPoly {
    fn from(c: BigInt) -> Self {
        TruncPoly::constant(c)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&TruncPoly> for &TruncPoly {
            type Output = TruncPoly;
            fn $method(self, rhs: &TruncPoly) -> TruncPoly {
                self.$imp(rhs)
            }
        }
        impl $tr<TruncPoly> for TruncPoly {
            type Output = TruncPoly;
            fn $method(self, rhs: TruncPoly) -> TruncPoly {
                (&self).$imp(&rhs)
            }
        }
        impl $tr<&TruncPoly> for TruncPoly {
            type Output = TruncPoly;
            fn $method(self, rhs: &TruncPoly) -> TruncPoly {
                (&self).$imp(rhs)
            }
        }
        impl $tr<TruncPoly> for &TruncPoly {
            type Output = TruncPoly;
            fn $method(self, rhs: TruncPoly) -> TruncPoly {
                self.$imp(&rhs)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl AddAssign<&TruncPoly> for TruncPoly {
    fn add_assign(&mut self, rhs: &TruncPoly) {
        self.bound = min_bound(self.bound, rhs.bound);
        if let Some(d) = rhs.bound {
            self.terms.retain(|m, _| m.degree() <= d);
        }
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign<TruncPoly> for TruncPoly {
    fn add_assign(&mut self, rhs: TruncPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&TruncPoly> for TruncPoly {
    fn sub_assign(&mut self, rhs: &TruncPoly) {
        *self += &(-rhs);
    }
}

impl MulAssign<&TruncPoly> for TruncPoly {
    fn mul_assign(&mut self, rhs: &TruncPoly) {
        *self = &*self * rhs;
    }
}

impl Neg for &TruncPoly {
    type Output = TruncPoly;
    fn neg(self) -> TruncPoly {
        TruncPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(), bound: self.bound }
    }
}

impl Neg for TruncPoly {
    type Output = TruncPoly;
    fn neg(self) -> TruncPoly {
        -&self
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.canonical_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_constant() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")?;
        if let Some(d) = self.bound {
            write!(f, " [deg<={d}]")?;
        }
        Ok(())
    }
}

/// `π_i f = ((1+βx_{i+1}) f − (1+βx_i) s_i f) / (x_i − x_{i+1})`.
pub fn pi_operator(i: u32, f: &TruncPoly) -> Result<TruncPoly> {
    if i == 0 {
        return Err(Error::InvalidArgument("pi operator index must be positive".into()));
    }
    let (a, b) = (Var::x(i), Var::x(i + 1));
    let swapped = f.swap_vars(a, b);
    let num = &(&TruncPoly::one_plus_beta(b) * f) - &(&TruncPoly::one_plus_beta(a) * &swapped);
    num.div_difference(a, b)
}

/// `⊖a = −a + βa² − β²a³ + …` up to degree `d`.
pub fn ominus_series(a: &TruncPoly, d: u32) -> TruncPoly {
    let a = a.clone().bounded(d);
    let mut out = TruncPoly::zero().bounded(d);
    let mut power = a.clone();
    for k in 1..=d.max(1) {
        if power.is_zero() {
            break;
        }
        let sign: BigInt = if k % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        out += &power.mul_beta(k - 1).scale(&sign);
        power = &power * &a;
    }
    out
}

/// Compares `f(t, ⊖t, z_3, …)` with `f(0, 0, z_3, …)` up to degree `d`.
pub fn supersym_check(f: &TruncPoly, n: u32, d: u32) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidArgument("supersymmetry needs at least two variables".into()));
    }
    let f = f.clone().bounded(d);
    // a fresh z index far past the N variables plays the role of t
    let t = Var::z(n.max(f.max_index(Family::Z)) + 1);
    let tv = TruncPoly::var(t);
    let lhs = f.substitute(Var::z(1), &tv).substitute(Var::z(2), &ominus_series(&tv, d));
    let rhs = f.zero_vars(|v| v == Var::z(1) || v == Var::z(2));
    Ok(lhs == rhs)
}
