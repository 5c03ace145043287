//! Expansion of K-Stanley functions into Grassmannian terms by iterating the
//! transition recurrence `F_w = β^{-1}(R_a − 1) F_{w t_{ab}}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cache;
use crate::error::{Error, Result};
use crate::partition::{ShiftedSkewShape, StrictPartition};
use crate::rings::{FCombo, TruncPoly};
use crate::tableaux::{gp, gq, w_shape};
use crate::weyl::{ld_less, raises_by_one, transition_pair, GroupType, SignedPermutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    GP,
    GQ,
}

impl Basis {
    pub fn of(ty: GroupType) -> Basis {
        if ty == GroupType::C {
            Basis::GQ
        } else {
            Basis::GP
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::GP => "GP",
            Basis::GQ => "GQ",
        })
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "GP" | "P" => Ok(Basis::GP),
            "GQ" | "Q" => Ok(Basis::GQ),
            _ => Err(Error::Parse { what: "basis", reason: format!("expected GP or GQ, got {s:?}") }),
        }
    }
}

/// Coefficient `β^e` with `e = ℓ(u) − ℓ(w)` that homogeneity forces on `F_u`
/// inside an expansion of `F_w`; returns the integer in front of it.
fn homogeneous_coefficient(ty: GroupType, w: &SignedPermutation, u: &SignedPermutation, c: &TruncPoly) -> Result<BigInt> {
    let (lu, lw) = (u.length_unchecked(ty), w.length_unchecked(ty));
    let bad = || Error::Invariant(format!("coefficient {c} of F_{u} in F_{w} is not a multiple of β^(ℓ(u)-ℓ(w))"));
    if lu < lw || !c.is_beta_only() {
        return Err(bad());
    }
    let e = (lu - lw) as u32;
    let mut terms = c.terms();
    match (terms.next(), terms.next()) {
        (Some((m, a)), None) if m.beta() == e => Ok(a.clone()),
        _ => Err(bad()),
    }
}

fn reflection_allowed(ty: GroupType, j: i32, k: i32) -> bool {
    j != -k && !(ty == GroupType::D && j == 0)
}

/// `(1 + β T_{jk})` on a `Z[β]`-combination of K-Stanley symbols.
fn plus_big_t(c: &FCombo<TruncPoly>, j: i32, k: i32) -> FCombo<TruncPoly> {
    let ty = c.group_type();
    let mut out = c.clone();
    for (w, f) in c.iter() {
        if raises_by_one(ty, w, j, k) {
            out.add_unchecked(w.times_reflection(j, k), f.mul_beta(1));
        }
    }
    out
}

/// The symbolic operator `R^X_k`.
pub fn apply_r_symbolic(ty: GroupType, k: usize, c: &FCombo<TruncPoly>) -> Result<FCombo<TruncPoly>> {
    if c.group_type() != ty {
        return Err(Error::TypeMismatch { expected: ty, found: c.group_type() });
    }
    let k = k as i32;
    let mut cur = if ty == GroupType::B { plus_big_t(c, 0, k) } else { c.clone() };
    let bottom = -(cur.max_support().max(k as usize) as i32 + 1);
    for j in bottom..k {
        if reflection_allowed(ty, j, k) {
            cur = plus_big_t(&cur, j, k);
        }
    }
    Ok(cur)
}

/// `F^X_w = β^{-1}(R^X_a − 1) F^X_v` for `w` with a descent.
///
/// Every coefficient is checked to be a nonnegative multiple of the power of
/// `β` forced by homogeneity.
pub fn transition_step(ty: GroupType, w: &SignedPermutation) -> Result<FCombo<TruncPoly>> {
    if !ty.is_classical() {
        return Err(Error::InvalidArgument(format!("type {ty} is not one of B, C, D")));
    }
    w.check_in(ty)?;
    let (a, b) = transition_pair(w)?;
    let v = w.times_reflection(a as i32, b as i32);
    let mut out = apply_r_symbolic(ty, a, &FCombo::basis(ty, v.clone(), TruncPoly::one())?)?;
    out.add_unchecked(v, -TruncPoly::one());
    let out = out.try_map_coeffs(|_, c| c.div_beta(1))?;
    for (u, c) in out.iter() {
        let a = homogeneous_coefficient(ty, w, u, c)?;
        if a.is_negative() {
            return Err(Error::Invariant(format!("negative coefficient {c} of F_{u} in the transition of {w}")));
        }
    }
    Ok(out)
}

/// `F^X_w = Σ a_λ β^{|λ| − ℓ(w)} GP_λ` (or `GQ_λ` in type C).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionResult {
    pub ty: GroupType,
    pub w: SignedPermutation,
    pub length: usize,
    pub basis: Basis,
    /// Grassmannian elements with their integer coefficients.
    pub elements: BTreeMap<SignedPermutation, BigInt>,
    pub terms: BTreeMap<StrictPartition, BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub lambda: StrictPartition,
    pub coeff: u64,
    pub beta_power: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonExpansion {
    #[serde(rename = "type")]
    pub ty: GroupType,
    pub w: SignedPermutation,
    pub length: usize,
    pub basis: Basis,
    pub terms: Vec<JsonTerm>,
}

impl ExpansionResult {
    fn from_elements(ty: GroupType, w: &SignedPermutation, elements: BTreeMap<SignedPermutation, BigInt>) -> Result<Self> {
        let mut terms: BTreeMap<StrictPartition, BigInt> = BTreeMap::new();
        for (u, a) in &elements {
            *terms.entry(u.shape(ty)?).or_default() += a;
        }
        Ok(ExpansionResult {
            ty,
            w: w.clone(),
            length: w.length_unchecked(ty),
            basis: Basis::of(ty),
            elements,
            terms,
        })
    }

    pub fn beta_power(&self, lambda: &StrictPartition) -> i64 {
        lambda.size() as i64 - self.length as i64
    }

    /// Terms ordered by `β`-power, then by partition.
    pub fn ordered_terms(&self) -> Vec<(&StrictPartition, &BigInt, i64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(l, a)| (l, a, self.beta_power(l))).collect();
        v.sort_by(|x, y| (x.2, x.0).cmp(&(y.2, y.0)));
        v
    }

    pub fn to_json(&self) -> JsonExpansion {
        JsonExpansion {
            ty: self.ty,
            w: self.w.clone(),
            length: self.length,
            basis: self.basis,
            terms: self
                .ordered_terms()
                .into_iter()
                .map(|(l, a, e)| JsonTerm { lambda: l.clone(), coeff: a.to_u64().unwrap_or(u64::MAX), beta_power: e })
                .collect(),
        }
    }

    /// `Σ a_λ β^{|λ|−ℓ(w)} GP_λ` (or `GQ_λ`) in `z_1..z_n` up to degree `d`.
    pub fn evaluate(&self, n: u32, d: u32) -> TruncPoly {
        let mut out = TruncPoly::zero().bounded(d);
        for (lambda, a, e) in self.ordered_terms() {
            let shape = ShiftedSkewShape::straight(lambda.clone());
            let f = match self.basis {
                Basis::GP => gp(&shape, n, d),
                Basis::GQ => gq(&shape, n, d),
            };
            // |λ| ≥ ℓ(w) in every expansion produced here
            out += &f.mul_beta(e.max(0) as u32).scale(a);
        }
        out
    }
}

impl fmt::Display for ExpansionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ordered_terms()
            .into_iter()
            .map(|(l, a, e)| {
                let beta = match e {
                    0 => String::new(),
                    1 => "b*".to_string(),
                    e => format!("b^{e}*"),
                };
                let coeff = if a.is_one() { String::new() } else { format!("{a}*") };
                format!("{coeff}{beta}{}{l}", self.basis)
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// One expansion step: the key that was expanded and what replaced it.
#[derive(Debug, Clone)]
pub struct Step {
    pub key: SignedPermutation,
    pub coeff: BigInt,
    pub produced: FCombo<TruncPoly>,
}

#[derive(Debug, Clone, Default)]
pub struct Trace {
    pub steps: Vec<Step>,
    /// Largest support of any key that ever entered the worklist.
    pub max_support: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct ExpandOptions {
    pub use_memo: bool,
    pub trace: bool,
}

impl Default for ExpandOptions {
    fn default() -> Self {
        ExpandOptions { use_memo: true, trace: false }
    }
}

fn ld_key(u: &SignedPermutation) -> (usize, i32) {
    let k = u.least_descent();
    (k, if k == 0 { 0 } else { u.apply(k as i32) })
}

/// Expands `F^X_w` into Grassmannian terms, always expanding a
/// `≺_LD`-maximal key (ties broken by the smallest window).
pub fn expand_grassmannian(ty: GroupType, w: &SignedPermutation) -> Result<ExpansionResult> {
    Ok(expand_with(ty, w, ExpandOptions::default())?.0)
}

pub fn expand_with(ty: GroupType, w: &SignedPermutation, opts: ExpandOptions) -> Result<(ExpansionResult, Trace)> {
    if !ty.is_classical() {
        return Err(Error::InvalidArgument(format!("type {ty} is not one of B, C, D")));
    }
    w.check_in(ty)?;
    let mut trace = Trace { max_support: w.support(), ..Trace::default() };
    if opts.use_memo {
        if let Some(terms) = cache::expansion(ty, w) {
            let elements = terms.into_iter().map(|(u, a, _)| (u, BigInt::from(a))).collect();
            return Ok((ExpansionResult::from_elements(ty, w, elements)?, trace));
        }
    }
    let bound = w.support() + w.least_descent();
    let mut pending: BTreeMap<SignedPermutation, BigInt> = BTreeMap::from([(w.clone(), BigInt::one())]);
    let mut done: BTreeMap<SignedPermutation, BigInt> = BTreeMap::new();
    let lw = w.length_unchecked(ty);

    loop {
        let mut grassmannian = Vec::new();
        for u in pending.keys() {
            if u.is_grassmannian() {
                grassmannian.push(u.clone());
            }
        }
        for u in grassmannian {
            let a = pending.remove(&u).unwrap();
            *done.entry(u).or_default() += a;
        }
        let Some(key) = pending.keys().max_by(|x, y| ld_key(x).cmp(&ld_key(y)).then_with(|| y.cmp(x))).cloned() else {
            break;
        };
        let coeff = pending.remove(&key).unwrap();

        let memo = if opts.use_memo { cache::expansion(ty, &key) } else { None };
        let produced: Vec<(SignedPermutation, BigInt)> = match memo {
            Some(terms) => terms.into_iter().map(|(u, a, _)| (u, BigInt::from(a))).collect(),
            None => {
                let step = transition_step(ty, &key)?;
                let mut out = Vec::new();
                for (u, c) in step.iter() {
                    if !(ld_less(u, &key) || u.least_descent() < key.least_descent()) {
                        return Err(Error::Invariant(format!("{u} is not below {key} in the LD order")));
                    }
                    out.push((u.clone(), homogeneous_coefficient(ty, &key, u, c)?));
                }
                if opts.trace {
                    trace.steps.push(Step { key: key.clone(), coeff: coeff.clone(), produced: step });
                }
                out
            }
        };
        for (u, a) in produced {
            if a.is_negative() {
                return Err(Error::Invariant(format!("negative coefficient for {u}")));
            }
            trace.max_support = trace.max_support.max(u.support());
            if u.support() > bound {
                return Err(Error::Invariant(format!("{u} leaves W_{bound} while expanding {w}")));
            }
            let slot = pending.entry(u).or_default();
            *slot += &a * &coeff;
            debug_assert!(!slot.is_zero());
        }
    }

    let result = ExpansionResult::from_elements(ty, w, done)?;
    for u in result.elements.keys() {
        debug_assert!(u.length_unchecked(ty) >= lw);
    }
    if opts.use_memo {
        let terms = result
            .elements
            .iter()
            .map(|(u, a)| (u.clone(), a.to_u64().unwrap_or(u64::MAX), (u.length_unchecked(ty) - lw) as u32))
            .collect();
        cache::store_expansion(ty, w, terms);
    }
    Ok((result, trace))
}

/// Expansion of `GP_{λ/μ}` (via type B) or `GQ_{λ/μ}` (via type C).
pub fn skew_expansion(basis: Basis, shape: &ShiftedSkewShape) -> Result<ExpansionResult> {
    let ty = match basis {
        Basis::GP => GroupType::B,
        Basis::GQ => GroupType::C,
    };
    skew_expansion_via(ty, shape)
}

/// Expansion of the skew function attached to `w_X(λ/μ)`.
pub fn skew_expansion_via(ty: GroupType, shape: &ShiftedSkewShape) -> Result<ExpansionResult> {
    shape.check()?;
    expand_grassmannian(ty, &w_shape(ty, shape)?)
}

/// Outcome of comparing an expansion with the K-Stanley oracle.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub expansion: ExpansionResult,
    pub stanley: TruncPoly,
    pub difference: TruncPoly,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.difference.is_zero()
    }
}

pub fn verify_expansion(ty: GroupType, w: &SignedPermutation, n: u32, d: u32) -> Result<VerifyReport> {
    let expansion = expand_grassmannian(ty, w)?;
    let stanley = cache::stanley(ty, w, n, d)?;
    let difference = &expansion.evaluate(n, d) - &stanley;
    Ok(VerifyReport { expansion, stanley, difference })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::parse_poly;
    use crate::weyl::elements;

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    fn part(p: &[u32]) -> StrictPartition {
        StrictPartition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn worked_transition_step() {
        let w = sp("-3,4,-1,5,2");
        for ty in [GroupType::B, GroupType::C] {
            let out = transition_step(ty, &w).unwrap();
            let expect =
                [("-3,4,2,-1", "1"), ("-3,4,-2,1", "1"), ("-3,4,-2,-1", "b"), ("-3,4,1,-2", "b"), ("-3,4,-1,-2", "b^2")];
            assert_eq!(out.len(), 5);
            for (u, c) in expect {
                assert_eq!(out.get(&sp(u)), Some(&parse_poly(c).unwrap()), "{ty} {u}");
            }
        }
        let out = transition_step(GroupType::B, &sp("2,1")).unwrap();
        assert!(out.iter().all(|(_, c)| c.is_nonnegative()));
        assert!(transition_step(GroupType::B, &sp("-2,1")).is_err());
    }

    #[test]
    fn worked_expansions() {
        let w = sp("-3,4,-1,5,2");
        let keys = ["-4,-2,-1,3", "-4,-3,1,2", "-5,-2,1,3,4", "-4,-3,-1,2", "-5,-2,-1,3,4", "-5,-3,1,2,4", "-5,-3,-1,2,4"];
        for (ty, coeffs) in [(GroupType::B, [4, 2, 2, 5, 5, 3, 6]), (GroupType::C, [2, 2, 2, 3, 3, 3, 4])] {
            let r = expand_with(ty, &w, ExpandOptions { use_memo: false, trace: false }).unwrap().0;
            assert_eq!(r.elements.len(), 7);
            for (k, a) in keys.iter().zip(coeffs) {
                assert_eq!(r.elements.get(&sp(k)), Some(&BigInt::from(a)), "{ty} {k}");
            }
            assert_eq!(r.length, 7);
        }
        let r = expand_grassmannian(GroupType::B, &w).unwrap();
        assert_eq!(r.to_string(), "4*GP[4,2,1] + 2*GP[4,3] + 2*GP[5,2] + 5*b*GP[4,3,1] + 5*b*GP[5,2,1] + 3*b*GP[5,3] + 6*b^2*GP[5,3,1]");
        let json = serde_json::to_value(r.to_json()).unwrap();
        assert_eq!(json["type"], "B");
        assert_eq!(json["w"], serde_json::json!([-3, 4, -1, 5, 2]));
        assert_eq!(json["basis"], "GP");
        assert_eq!(json["terms"][0], serde_json::json!({"lambda": [4, 2, 1], "coeff": 4, "beta_power": 0}));
    }

    #[test]
    fn grassmannian_input_is_fixed() {
        for ty in GroupType::CLASSICAL {
            for u in elements(ty, 3).into_iter().filter(SignedPermutation::is_grassmannian) {
                let r = expand_grassmannian(ty, &u).unwrap();
                assert_eq!(r.terms.len(), 1);
                assert_eq!(r.terms.get(&u.shape(ty).unwrap()), Some(&BigInt::one()));
            }
        }
    }

    #[test]
    fn oracle_agreement_small() {
        for ty in GroupType::CLASSICAL {
            for w in elements(ty, 2) {
                let rep = verify_expansion(ty, &w, 3, 5).unwrap();
                assert!(rep.ok(), "{ty} {w}: {}", rep.difference);
            }
        }
        assert!(verify_expansion(GroupType::C, &sp("-1"), 2, 3).unwrap().ok());
    }

    #[test]
    fn skew_examples() {
        let shape = ShiftedSkewShape::new(part(&[5, 3, 1]), part(&[2]));
        let b = skew_expansion(Basis::GP, &shape).unwrap();
        let d = skew_expansion_via(GroupType::D, &shape).unwrap();
        assert_eq!(b.terms, d.terms);
        assert_eq!(b.terms.get(&part(&[4, 2, 1])), Some(&BigInt::from(4)));
        for n in 1..=4 {
            let r = skew_expansion(Basis::GQ, &ShiftedSkewShape::straight(part(&[n]))).unwrap();
            assert_eq!(r.terms.len(), 1);
            assert_eq!(r.terms.get(&part(&[n])), Some(&BigInt::one()));
        }
        let gs = skew_expansion(Basis::GP, &ShiftedSkewShape::new(part(&[2]), part(&[1]))).unwrap();
        assert!(gs.terms.values().all(|a| a.is_positive()));
        let direct = gp(&ShiftedSkewShape::new(part(&[2]), part(&[1])), 3, 5);
        assert_eq!(gs.evaluate(3, 5), direct);
    }

    #[test]
    fn transition_matches_kn_specialization() {
        for ty in GroupType::CLASSICAL {
            for w in elements(ty, 3) {
                if w.is_grassmannian() {
                    continue;
                }
                let t = crate::kn::transition_bcd(ty, &w).unwrap();
                assert_eq!(crate::kn::specialize_zero(&t.combo), transition_step(ty, &w).unwrap(), "{ty} {w}");
            }
        }
    }
}
