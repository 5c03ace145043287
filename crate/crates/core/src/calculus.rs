//! Elementary operators on combinations `Σ f_w(y) 𝔊_w` shared by every type.

use crate::rings::{FCombo, YRational};
use crate::weyl::{raises_by_one, GroupType, SignedPermutation};

fn keep(ty: GroupType, w: &SignedPermutation, max_len: Option<usize>) -> bool {
    max_len.is_none_or(|d| w.length_unchecked(ty) <= d)
}

/// `(1 + β t_{ij})`.
pub(crate) fn plus_t(c: &FCombo<YRational>, i: i32, j: i32, max_len: Option<usize>) -> FCombo<YRational> {
    let ty = c.group_type();
    let mut out = c.clone();
    for (w, f) in c.iter() {
        if raises_by_one(ty, w, i, j) {
            let wt = w.times_reflection(i, j);
            if keep(ty, &wt, max_len) {
                out.add_unchecked(wt, f.mul_beta(1));
            }
        }
    }
    out
}

/// `(1 − β u_{ij})`, twisting the coefficient by `w t_{ij} w^{-1}`.
pub(crate) fn minus_u(c: &FCombo<YRational>, i: i32, j: i32, max_len: Option<usize>) -> FCombo<YRational> {
    let ty = c.group_type();
    let mut out = c.clone();
    for (w, f) in c.iter() {
        if raises_by_one(ty, w, i, j) {
            let wt = w.times_reflection(i, j);
            if keep(ty, &wt, max_len) {
                let sigma = wt.compose(&w.inverse());
                out.add_unchecked(wt, -f.star(&sigma).mul_beta(1));
            }
        }
    }
    out
}

/// `v_k`: scales `𝔊_w` by `(1 + β y_{w(k)})^{-1}`.
pub(crate) fn v_op(c: &FCombo<YRational>, k: i32) -> FCombo<YRational> {
    c.map_coeffs(|w, f| f * &YRational::inv_one_plus_beta_signed(w.apply(k)))
}

/// `(1 − β o_k)`: `f 𝔊_w ↦ f(0) 𝔊_{w t_{0k}}` on length-raising sign changes.
pub(crate) fn minus_o(c: &FCombo<YRational>, k: i32, max_len: Option<usize>) -> FCombo<YRational> {
    let ty = c.group_type();
    let mut out = c.clone();
    for (w, f) in c.iter() {
        if raises_by_one(ty, w, 0, k) {
            let wt = w.times_reflection(0, k);
            if keep(ty, &wt, max_len) {
                out.add_unchecked(wt, -f.at_y_zero().mul_beta(1));
            }
        }
    }
    out
}

/// `(1 + β n_k)` with `n_k = t_{0k} v_k`.
pub(crate) fn plus_n(c: &FCombo<YRational>, k: i32) -> FCombo<YRational> {
    let ty = c.group_type();
    let mut out = c.clone();
    for (w, f) in c.iter() {
        if raises_by_one(ty, w, 0, k) {
            let g = f * &YRational::inv_one_plus_beta_signed(w.apply(k));
            out.add_unchecked(w.times_reflection(0, k), g.mul_beta(1));
        }
    }
    out
}

/// `∏_{l>k}^{[<]} (1 + β t_{kl})`, rightmost factor first.
pub(crate) fn t_tail(c: &FCombo<YRational>, k: i32, max_len: Option<usize>) -> FCombo<YRational> {
    let top = k.max(c.max_support() as i32) + 1;
    let mut cur = c.clone();
    for l in (k + 1..=top).rev() {
        cur = plus_t(&cur, k, l, max_len);
    }
    cur
}
