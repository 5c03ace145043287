//! Kirillov–Naruse double Grothendieck polynomials of types B, C, D and the
//! operators `t`, `u`, `v`, `o`, `n`, `M^X_k`, `R^X_k` acting on them.

use std::collections::HashMap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::cache;
use crate::calculus::{minus_o, minus_u, plus_n, plus_t, t_tail, v_op};
use crate::error::{Error, Result};
use crate::groth_a::{assemble_transition, groth_poly, Transition};
use crate::rings::{FCombo, Family, TruncPoly, Var, YRational};
use crate::weyl::{demazure_step, lower_interval, reduced_word, transition_pair, GroupType, SignedPermutation};

fn check_classical(ty: GroupType) -> Result<()> {
    if ty.is_classical() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("type {ty} is not one of B, C, D")))
    }
}

/// `𝔊_σ(x)`, or `𝔊_σ(y)` when `in_y`, with the other alphabet set to zero.
fn single_groth(sigma: &SignedPermutation, in_y: bool) -> TruncPoly {
    let g = groth_poly(sigma).expect("type A element").zero_vars(|v| v.family == Family::Y);
    if in_y {
        g.map_vars(|v| Var::y(v.index))
    } else {
        g
    }
}

/// `𝔊^X_w(x; y; z_1..z_n)` up to total degree `d`, as the sum over triples
/// `σ^{-1} ∘ u ∘ τ = w` of `β^{ℓ(σ)+ℓ(u)+ℓ(τ)-ℓ(w)} 𝔊_σ(y) F^X_u(z) 𝔊_τ(x)`.
///
/// Every factor of a Demazure product lies below it in Bruhat order, so the
/// three indices range over the lower interval of `w`.
pub fn kn_eval(ty: GroupType, w: &SignedPermutation, n: u32, d: u32) -> Result<TruncPoly> {
    check_classical(ty)?;
    w.check_in(ty)?;
    let lw = w.length_unchecked(ty);
    let interval: Vec<SignedPermutation> = {
        let mut v: Vec<_> = lower_interval(ty, w)?.into_iter().collect();
        v.sort();
        v
    };
    let words: HashMap<&SignedPermutation, Vec<i32>> =
        interval.iter().map(|u| (u, reduced_word(ty, u).expect("member of the group"))).collect();
    let type_a: Vec<&SignedPermutation> = interval.iter().filter(|u| u.is_in(GroupType::A)).collect();
    let stanley: HashMap<&SignedPermutation, TruncPoly> = interval
        .iter()
        .filter(|u| u.length_unchecked(ty) <= d as usize)
        .map(|u| Ok((u, cache::stanley(ty, u, n, d)?)))
        .collect::<Result<_>>()?;
    let fold = |start: &SignedPermutation, word: &[i32]| {
        word.iter().fold(start.clone(), |acc, &a| demazure_step(&acc, a))
    };

    let per_sigma = |sigma_inv: &&SignedPermutation| -> TruncPoly {
        let mut acc = TruncPoly::zero().bounded(d);
        let ls = sigma_inv.length_unchecked(ty);
        let gy = single_groth(&sigma_inv.inverse(), true);
        for u in &interval {
            let lu = u.length_unchecked(ty);
            if ls + lu > d as usize {
                continue;
            }
            let left = fold(sigma_inv, &words[u]);
            for tau in &type_a {
                let lt = tau.length_unchecked(ty);
                if ls + lu + lt > d as usize || fold(&left, &words[tau]) != *w {
                    continue;
                }
                let e = (ls + lu + lt - lw) as u32;
                let term = &(&gy * &stanley[u]) * &single_groth(tau, false);
                acc += &term.mul_beta(e);
            }
        }
        acc
    };

    #[cfg(feature = "parallel")]
    let parts: Vec<TruncPoly> = type_a.par_iter().map(per_sigma).collect();
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<TruncPoly> = type_a.iter().map(per_sigma).collect();

    let mut out = TruncPoly::zero().bounded(d);
    for p in parts {
        out += &p;
    }
    Ok(out)
}

fn check_combo(ty: GroupType, c: &FCombo<YRational>) -> Result<()> {
    check_classical(ty)?;
    if c.group_type() != ty {
        return Err(Error::TypeMismatch { expected: ty, found: c.group_type() });
    }
    Ok(())
}

fn reflection_allowed(ty: GroupType, j: i32, k: i32) -> bool {
    j != -k && !(ty == GroupType::D && j == 0)
}

/// `∏_{k>j>-∞}^{[>]} (1 + β t_{jk})`: the factor with the most negative `j`
/// acts first.
fn t_head(c: &FCombo<YRational>, k: i32) -> FCombo<YRational> {
    let ty = c.group_type();
    let bottom = -(c.max_support().max(k as usize) as i32 + 1);
    let mut cur = c.clone();
    for j in bottom..k {
        if reflection_allowed(ty, j, k) {
            cur = plus_t(&cur, j, k, None);
        }
    }
    cur
}

/// `R^X_k = ∏_{k>j>-∞}^{[>]} (1 + β t_{jk}) · (1 + β n_k)`, with `n_k = 0`
/// outside type B.
pub fn apply_r_bcd(ty: GroupType, k: usize, c: &FCombo<YRational>) -> Result<FCombo<YRational>> {
    check_combo(ty, c)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let k = k as i32;
    let start = if ty == GroupType::B { plus_n(c, k) } else { c.clone() };
    Ok(t_head(&start, k))
}

/// `∏_{-∞<j<k}^{[<]} (1 − β u_{jk})`: `j = k-1` acts first, and the sweep
/// continues downward until no term can move any more.
fn u_sweep(c: &FCombo<YRational>, k: i32, max_len: Option<usize>) -> FCombo<YRational> {
    let ty = c.group_type();
    let mut cur = c.clone();
    let mut j = k - 1;
    while j >= -(cur.max_support().max(k as usize) as i32 + 1) {
        if reflection_allowed(ty, j, k) {
            cur = minus_u(&cur, j, k, max_len);
        }
        j -= 1;
    }
    cur
}

/// `M^X_k = ∏_{l>k} (1 + β t_{kl}) · (1 − β o_k) · ∏_{j<k} (1 − β u_{jk}) · v_k`,
/// keeping only terms `𝔊_w` with `ℓ(w) ≤ d`.
///
/// Each factor raises length, and a term of length `> d` has no monomial of
/// degree `≤ d`, so the dropped tail is invisible at this truncation.
pub fn apply_m_bcd(ty: GroupType, k: usize, c: &FCombo<YRational>, d: u32) -> Result<FCombo<YRational>> {
    check_combo(ty, c)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let k = k as i32;
    let max_len = Some(d as usize);
    let mut cur = v_op(c, k);
    cur = u_sweep(&cur, k, max_len);
    if ty == GroupType::B {
        cur = minus_o(&cur, k, max_len);
    }
    Ok(t_tail(&cur, k, max_len))
}

/// The identity `𝔊^X_w = β^{-1}((1 + βy_c)(1 + βx_a) R^X_a 𝔊^X_v − 𝔊^X_v)`.
pub fn transition_bcd(ty: GroupType, w: &SignedPermutation) -> Result<Transition> {
    check_classical(ty)?;
    w.check_in(ty)?;
    let (a, b) = transition_pair(w)?;
    let v = w.times_reflection(a as i32, b as i32);
    let rv = apply_r_bcd(ty, a, &FCombo::basis(ty, v, YRational::one())?)?;
    assemble_transition(ty, w, a, b, rv)
}

/// `Σ c_u(x, y) 𝔊^X_u` expanded as a power series up to degree `d`.
pub fn eval_combo(combo: &FCombo<YRational>, n: u32, d: u32) -> Result<TruncPoly> {
    let ty = combo.group_type();
    let mut out = TruncPoly::zero().bounded(d);
    for (u, f) in combo.iter() {
        if u.length_unchecked(ty) > d as usize {
            continue;
        }
        out += &(&f.to_series(d) * &kn_eval(ty, u, n, d)?);
    }
    Ok(out)
}

/// `Σ c_u 𝔊^X_u − 𝔊^X_w` at truncation; zero when the identity holds.
pub fn transition_residual(t: &Transition, n: u32, d: u32) -> Result<TruncPoly> {
    Ok(&eval_combo(&t.combo, n, d)? - &kn_eval(t.ty, &t.w, n, d)?)
}

/// Sets `x = y = 0` in every coefficient.
pub fn specialize_zero(combo: &FCombo<YRational>) -> FCombo<TruncPoly> {
    let mut out = FCombo::new(combo.group_type());
    for (u, f) in combo.iter() {
        let p = f.at_y_zero().numerator().zero_vars(|v| v.family == Family::X);
        out.add_unchecked(u.clone(), p);
    }
    out
}
