//! Double Grothendieck polynomials of type A and the operator calculus
//! `t`, `u`, `v`, `M_k`, `R_k` acting on combinations of them.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::rings::{pi_operator, FCombo, TruncPoly, Var, YRational};
use crate::calculus::{minus_u, plus_t, t_tail, v_op};
use crate::weyl::{transition_pair, GroupType, SignedPermutation};

/// Which ascent to climb when walking up to the longest element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathStrategy {
    FirstAscent,
    LastAscent,
}

type GrothMemo = Mutex<HashMap<(usize, PathStrategy, SignedPermutation), TruncPoly>>;

fn memo() -> &'static GrothMemo {
    static MEMO: OnceLock<GrothMemo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `∏_{i+j ≤ n} (x_i ⊕ y_j)`, the polynomial of the longest element of `S_n`.
pub fn staircase(n: usize) -> TruncPoly {
    let mut out = TruncPoly::one();
    for i in 1..n {
        for j in 1..=n - i {
            out = &out * &TruncPoly::oplus(&TruncPoly::x(i as u32), &TruncPoly::y(j as u32));
        }
    }
    out
}

/// `𝔊_w(x; y)`, computed inside the smallest symmetric group containing `w`.
pub fn groth_poly(w: &SignedPermutation) -> Result<TruncPoly> {
    w.check_in(GroupType::A)?;
    Ok(groth_in(w, w.support(), PathStrategy::FirstAscent))
}

/// `𝔊_w(x; y)` computed inside `S_n` along a chosen path.
pub fn groth_poly_in(w: &SignedPermutation, n: usize, strategy: PathStrategy) -> Result<TruncPoly> {
    w.check_in(GroupType::A)?;
    if w.support() > n {
        return Err(Error::InvalidArgument(format!("{w} is not in S_{n}")));
    }
    Ok(groth_in(w, n, strategy))
}

fn groth_in(w: &SignedPermutation, n: usize, strategy: PathStrategy) -> TruncPoly {
    let key = (n, strategy, w.clone());
    if let Some(p) = memo().lock().unwrap().get(&key) {
        return p.clone();
    }
    let mut ascents = (1..n).filter(|&i| w.apply(i as i32) < w.apply(i as i32 + 1));
    let pick = match strategy {
        PathStrategy::FirstAscent => ascents.next(),
        PathStrategy::LastAscent => ascents.next_back(),
    };
    let out = match pick {
        None => staircase(n),
        Some(i) => {
            let up = w.times_generator(i as i32);
            pi_operator(i as u32, &groth_in(&up, n, strategy)).expect("pi of a Grothendieck polynomial is exact")
        }
    };
    memo().lock().unwrap().insert(key, out.clone());
    out
}

fn check_a(c: &FCombo<YRational>) -> Result<()> {
    if c.group_type() != GroupType::A {
        return Err(Error::TypeMismatch { expected: GroupType::A, found: c.group_type() });
    }
    Ok(())
}

/// `𝔐_k = ∏_{l>k} (1 + β𝔱_{kl}) · ∏_{j<k} (1 − β𝔲_{jk}) · 𝔳_k`.
pub fn apply_m_a(k: usize, c: &FCombo<YRational>) -> Result<FCombo<YRational>> {
    check_a(c)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let k = k as i32;
    let mut cur = v_op(c, k);
    for j in (1..k).rev() {
        cur = minus_u(&cur, j, k, None);
    }
    Ok(t_tail(&cur, k, None))
}

/// `ℜ_k = (1 + β𝔱_{k-1,k}) ⋯ (1 + β𝔱_{1,k})`.
pub fn apply_r_a(k: usize, c: &FCombo<YRational>) -> Result<FCombo<YRational>> {
    check_a(c)?;
    let k = k as i32;
    let mut cur = c.clone();
    for j in 1..k {
        cur = plus_t(&cur, j, k, None);
    }
    Ok(cur)
}

/// A transition identity `𝔊_w = Σ c_u 𝔊_u` produced from `v = w t_{ab}`.
#[derive(Debug, Clone)]
pub struct Transition {
    pub ty: GroupType,
    pub w: SignedPermutation,
    pub v: SignedPermutation,
    pub a: usize,
    pub b: usize,
    pub c: i32,
    pub combo: FCombo<YRational>,
}

/// `β^{-1}((1 + βy_c)(1 + βx_a) R 𝔊_v − 𝔊_v)`, given `R 𝔊_v`.
pub(crate) fn assemble_transition(
    ty: GroupType,
    w: &SignedPermutation,
    a: usize,
    b: usize,
    rv: FCombo<YRational>,
) -> Result<Transition> {
    let v = w.times_reflection(a as i32, b as i32);
    let c = v.apply(a as i32);
    let factor = &(&YRational::one() + &YRational::y_signed(c).mul_beta(1))
        * &YRational::from(TruncPoly::one_plus_beta(Var::x(a as u32)));
    let mut bracket = rv.scale(&factor);
    bracket.add_unchecked(v.clone(), -YRational::one());
    let combo = bracket.try_map_coeffs(|_, f| f.div_beta(1))?;
    Ok(Transition { ty, w: w.clone(), v, a, b, c, combo })
}

/// The type-A transition identity for `w ≠ 1`.
pub fn transition_a(w: &SignedPermutation) -> Result<Transition> {
    w.check_in(GroupType::A)?;
    let (a, b) = transition_pair(w)?;
    let v = w.times_reflection(a as i32, b as i32);
    let rv = apply_r_a(a, &FCombo::basis(GroupType::A, v, YRational::one())?)?;
    assemble_transition(GroupType::A, w, a, b, rv)
}

/// Multiplies `lhs` and every coefficient by a common denominator and returns
/// `(lhs · den, Σ num_u · eval(u))`.
pub fn clear_denominators(
    lhs: &TruncPoly,
    combo: &FCombo<YRational>,
    mut eval: impl FnMut(&SignedPermutation) -> Result<TruncPoly>,
) -> Result<(TruncPoly, TruncPoly)> {
    let mut den = std::collections::BTreeMap::<u32, u32>::new();
    for (_, f) in combo.iter() {
        for (&i, &e) in f.denominator() {
            let slot = den.entry(i).or_insert(0);
            *slot = (*slot).max(e);
        }
    }
    let mut den_poly = TruncPoly::one();
    for (&i, &e) in &den {
        den_poly = den_poly * TruncPoly::one_plus_beta(Var::y(i)).pow(e);
    }
    let mut rhs = TruncPoly::zero();
    for (u, f) in combo.iter() {
        let cleared = f.mul_poly(&den_poly);
        debug_assert!(cleared.is_polynomial());
        rhs += &(cleared.numerator() * &eval(u)?);
    }
    Ok((lhs * &den_poly, rhs))
}
