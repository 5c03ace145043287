//! Hecke words, compatible sequences, unimodal factorizations and the
//! generating functions built from them: K-Stanley symmetric functions,
//! stable Grothendieck functions and the quasisymmetric `L` and `K` families.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rings::{Monomial, TruncPoly, Var};
use crate::weyl::{demazure_step, lower_interval, reduced_word, GroupType, SignedPermutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Method {
    Compat,
    #[default]
    Unimodal,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "compat" => Ok(Method::Compat),
            "unimodal" => Ok(Method::Unimodal),
            other => Err(Error::Parse { what: "method", reason: format!("expected compat or unimodal, got {other:?}") }),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Compat => "compat",
            Method::Unimodal => "unimodal",
        })
    }
}

/// The letters and Bruhat interval that every Hecke word of `w` lives in.
///
/// A Demazure product uses exactly the generators occurring in its word, so
/// letters come from the support of a reduced word of `w`, and every prefix
/// product lies below `w`.
pub struct HeckeSpace {
    pub ty: GroupType,
    pub target: SignedPermutation,
    pub length: usize,
    pub letters: Vec<i32>,
    interval: HashSet<SignedPermutation>,
    lengths: HashMap<SignedPermutation, usize>,
}

impl HeckeSpace {
    pub fn new(ty: GroupType, w: &SignedPermutation) -> Result<Self> {
        let word = reduced_word(ty, w)?;
        let letters: BTreeSet<i32> = word.iter().copied().collect();
        let interval = lower_interval(ty, w)?;
        let lengths = interval.iter().map(|u| (u.clone(), u.length_unchecked(ty))).collect();
        Ok(HeckeSpace { ty, target: w.clone(), length: word.len(), letters: letters.into_iter().collect(), interval, lengths })
    }

    /// `u ∘ t_a` if it stays below the target.
    pub fn step(&self, u: &SignedPermutation, a: i32) -> Option<SignedPermutation> {
        let v = demazure_step(u, a);
        self.interval.contains(&v).then_some(v)
    }

    pub fn len_of(&self, u: &SignedPermutation) -> usize {
        self.lengths[u]
    }

    pub fn interval(&self) -> &HashSet<SignedPermutation> {
        &self.interval
    }
}

/// All Hecke words of `w` of length at most `max_len`, in lexicographic order.
pub fn hecke_words(ty: GroupType, w: &SignedPermutation, max_len: usize) -> Result<Vec<Vec<i32>>> {
    let space = HeckeSpace::new(ty, w)?;
    let mut out = Vec::new();
    let mut word = Vec::new();
    fn rec(space: &HeckeSpace, u: &SignedPermutation, max_len: usize, word: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if *u == space.target {
            out.push(word.clone());
        }
        if word.len() == max_len {
            return;
        }
        let remaining = max_len - word.len();
        for &a in &space.letters {
            if let Some(v) = space.step(u, a) {
                if space.length - space.len_of(&v) > remaining - 1 {
                    continue;
                }
                word.push(a);
                rec(space, &v, max_len, word, out);
                word.pop();
            }
        }
    }
    if space.length <= max_len {
        rec(&space, &SignedPermutation::identity(), max_len, &mut word, &mut out);
    }
    out.sort();
    Ok(out)
}

/// `o^X(a)`.
pub fn o_statistic(ty: GroupType, a: &[i32]) -> usize {
    match ty {
        GroupType::B => a.iter().filter(|&&x| x == 0).count(),
        GroupType::D => a.iter().filter(|&&x| x.abs() == 1).count(),
        _ => 0,
    }
}

/// A compatible sequence together with its statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatSeq {
    pub b: Vec<u32>,
    /// Number of distinct values.
    pub distinct: usize,
    pub gamma: usize,
    pub o: usize,
}

impl CompatSeq {
    /// The exponent `|b| − γ − o` of the weight `2^{|b| − γ − o}`. It can be
    /// negative in type D; the fractions cancel in the full sum.
    pub fn weight_exponent(&self) -> i64 {
        self.distinct as i64 - self.gamma as i64 - self.o as i64
    }
}

fn weak_sequences(k: usize, n: u32, ok: &dyn Fn(&[u32]) -> bool) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(k: usize, n: u32, cur: &mut Vec<u32>, ok: &dyn Fn(&[u32]) -> bool, out: &mut Vec<Vec<u32>>) {
        if !ok(cur) {
            return;
        }
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(1);
        for v in lo..=n {
            cur.push(v);
            rec(k, n, cur, ok, out);
            cur.pop();
        }
    }
    rec(k, n, &mut cur, ok, &mut out);
    out
}

/// `𝒞^X(a)` with letters at most `n`. Types A and C use the same
/// conditions here; see [`stable_compatible_seqs`] for the type A notion.
pub fn compatible_seqs(ty: GroupType, a: &[i32], n: u32) -> Vec<CompatSeq> {
    // each check only inspects the newest position of the prefix
    let ok = |b: &[u32]| -> bool {
        let i = b.len();
        if i >= 2 {
            let (p, q) = (i - 2, i - 1);
            let strict = match ty {
                GroupType::B => a[p] == 0 && a[q] == 0,
                GroupType::D => a[p] == a[q] && a[p].abs() == 1,
                _ => false,
            };
            if strict && b[p] >= b[q] {
                return false;
            }
        }
        if i >= 3 {
            let m = i - 2;
            if a[m - 1].abs() <= a[m].abs() && a[m].abs() >= a[m + 1].abs() && b[m - 1] >= b[m + 1] {
                return false;
            }
        }
        true
    };
    let o = o_statistic(ty, a);
    weak_sequences(a.len(), n, &ok)
        .into_iter()
        .map(|b| {
            let distinct = b.iter().collect::<BTreeSet<_>>().len();
            let gamma = (1..b.len()).filter(|&i| a[i - 1] == a[i] && b[i - 1] == b[i]).count();
            CompatSeq { b, distinct, gamma, o }
        })
        .collect()
}

/// `𝒞(a)` for type A: weakly increasing, strict where `a_j ≤ a_{j+1}`.
pub fn stable_compatible_seqs(a: &[i32], n: u32) -> Vec<Vec<u32>> {
    let ok = |b: &[u32]| -> bool {
        let i = b.len();
        !(i >= 2 && a[i - 2] <= a[i - 1] && b[i - 2] >= b[i - 1])
    };
    weak_sequences(a.len(), n, &ok)
}

/// Position of a nonzero integer in `0 ≺ -1 ≺ 1 ≺ -2 ≺ 2 ≺ …`.
pub fn unimodal_rank(b: i32) -> u32 {
    let m = b.unsigned_abs();
    if b < 0 {
        2 * m - 1
    } else {
        2 * m
    }
}

fn unrank(r: u32) -> i32 {
    if r % 2 == 1 {
        -(r.div_ceil(2) as i32)
    } else {
        (r / 2) as i32
    }
}

/// Magnitude used to compare neighbouring letters inside a factor. Type D
/// splits the tie between `-1` and `1`, which commute, so that exactly one
/// of the two orders may share a positive factor.
#[inline]
fn letter_key(ty: GroupType, a: i32) -> u32 {
    if ty == GroupType::D && a == -1 {
        1
    } else {
        2 * a.unsigned_abs()
    }
}

#[inline]
fn unimodal_pair_ok(ty: GroupType, a_prev: i32, a_cur: i32, b_prev: i32, b_cur: i32) -> bool {
    let (rp, rc) = (unimodal_rank(b_prev), unimodal_rank(b_cur));
    if rc < rp {
        return false;
    }
    if rc == rp {
        let (kp, kc) = (letter_key(ty, a_prev), letter_key(ty, a_cur));
        if b_cur < 0 {
            return kp > kc;
        }
        return kp < kc;
    }
    true
}

#[inline]
fn unimodal_letter_ok(ty: GroupType, a: i32, b: i32) -> bool {
    match ty {
        GroupType::B => a != 0 || b > 0,
        GroupType::D => a.abs() != 1 || b > 0,
        _ => true,
    }
}

/// `𝒰^X(a)` with `|b_i| ≤ n`.
pub fn unimodal_factorizations(ty: GroupType, a: &[i32], n: u32) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let mut cur: Vec<i32> = Vec::new();
    fn rec(ty: GroupType, a: &[i32], n: u32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        let i = cur.len();
        if i == a.len() {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().map_or(1, |&b| unimodal_rank(b));
        for r in lo..=2 * n {
            let b = unrank(r);
            if !unimodal_letter_ok(ty, a[i], b) {
                continue;
            }
            if i > 0 && !unimodal_pair_ok(ty, a[i - 1], a[i], cur[i - 1], b) {
                continue;
            }
            cur.push(b);
            rec(ty, a, n, cur, out);
            cur.pop();
        }
    }
    rec(ty, a, n, &mut cur, &mut out);
    out
}

fn z_monomial(beta: u32, indices: impl IntoIterator<Item = u32>) -> Monomial {
    Monomial::new(beta, indices.into_iter().map(|i| (Var::z(i), 1)))
}

/// `F^X_w(z_1, …, z_n)` up to degree `d`.
pub fn fstanley(ty: GroupType, w: &SignedPermutation, n: u32, d: u32, method: Method) -> Result<TruncPoly> {
    if !ty.is_classical() {
        return Err(Error::InvalidArgument("K-Stanley functions are defined for types B, C, D".into()));
    }
    match method {
        Method::Compat => fstanley_compat(ty, w, n, d),
        Method::Unimodal => fstanley_unimodal(ty, w, n, d),
    }
}

fn fstanley_compat(ty: GroupType, w: &SignedPermutation, n: u32, d: u32) -> Result<TruncPoly> {
    let len = w.length_unchecked(ty) as u32;
    // weights are accumulated times 2^d so that every term is an integer
    let mut out = TruncPoly::zero().bounded(d);
    for a in hecke_words(ty, w, d as usize)? {
        for cs in compatible_seqs(ty, &a, n) {
            let m = z_monomial(a.len() as u32 - len, cs.b.iter().copied());
            let e = cs.weight_exponent() + d as i64;
            out.add_term(m, BigInt::from(1) << e as usize);
        }
    }
    let scale = BigInt::from(1) << d as usize;
    let mut exact = TruncPoly::zero().bounded(d);
    for (m, c) in out.terms() {
        if (c % &scale) != BigInt::from(0) {
            return Err(Error::InexactDivision(format!("fractional coefficient of {m} for {w}")));
        }
        exact.add_term(m.clone(), c / &scale);
    }
    Ok(exact)
}

/// Sums over Hecke words and unimodal factorizations by dynamic
/// programming over `(prefix product, last letter, last factor)`.
fn fstanley_unimodal(ty: GroupType, w: &SignedPermutation, n: u32, d: u32) -> Result<TruncPoly> {
    let space = HeckeSpace::new(ty, w)?;
    let mut out = TruncPoly::zero().bounded(d);
    if space.length > d as usize {
        return Ok(out);
    }
    if w.is_identity() {
        return Ok(TruncPoly::one().bounded(d));
    }
    type State = (SignedPermutation, i32, i32);
    let mut layer: HashMap<State, TruncPoly> = HashMap::new();
    let id = SignedPermutation::identity();
    for &a in &space.letters {
        let Some(u) = space.step(&id, a) else { continue };
        for r in 1..=2 * n {
            let b = unrank(r);
            if unimodal_letter_ok(ty, a, b) {
                let p = TruncPoly::term(z_monomial(1, [b.unsigned_abs()]), 1);
                *layer.entry((u.clone(), a, b)).or_default() += &p;
            }
        }
    }
    for k in 1..=d as usize {
        let mut next: HashMap<State, TruncPoly> = HashMap::new();
        for ((u, a_prev, b_prev), poly) in &layer {
            if *u == space.target {
                out += poly;
            }
            if k == d as usize || space.length - space.len_of(u) > d as usize - k {
                continue;
            }
            for &a in &space.letters {
                let Some(v) = space.step(u, a) else { continue };
                if space.length - space.len_of(&v) > d as usize - k - 1 {
                    continue;
                }
                for r in unimodal_rank(*b_prev)..=2 * n {
                    let b = unrank(r);
                    if !unimodal_letter_ok(ty, a, b) || !unimodal_pair_ok(ty, *a_prev, a, *b_prev, b) {
                        continue;
                    }
                    let step = TruncPoly::term(z_monomial(1, [b.unsigned_abs()]), 1);
                    *next.entry((v.clone(), a, b)).or_default() += &(poly * &step);
                }
            }
        }
        layer = next;
    }
    Ok(out.div_beta(space.length as u32)?.bounded(d))
}

/// Naive unimodal sum, kept as an oracle for the dynamic programme.
pub fn fstanley_unimodal_naive(ty: GroupType, w: &SignedPermutation, n: u32, d: u32) -> Result<TruncPoly> {
    let len = w.length_unchecked(ty) as u32;
    let mut out = TruncPoly::zero().bounded(d);
    for a in hecke_words(ty, w, d as usize)? {
        for b in unimodal_factorizations(ty, &a, n) {
            out.add_term(z_monomial(a.len() as u32 - len, b.iter().map(|x| x.unsigned_abs())), BigInt::from(1));
        }
    }
    Ok(out)
}

/// Stable Grothendieck function `G_w(z_1, …, z_n)` of a permutation.
pub fn stable_g(w: &SignedPermutation, n: u32, d: u32) -> Result<TruncPoly> {
    w.check_in(GroupType::A)?;
    let len = w.length_unchecked(GroupType::A) as u32;
    let mut out = TruncPoly::zero().bounded(d);
    for a in hecke_words(GroupType::A, w, d as usize)? {
        for b in stable_compatible_seqs(&a, n) {
            out.add_term(z_monomial(a.len() as u32 - len, b), BigInt::from(1));
        }
    }
    Ok(out)
}

/// Collapses runs of equal adjacent letters.
pub fn mperm(a: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(a.len());
    for &x in a {
        if out.last() != Some(&x) {
            out.push(x);
        }
    }
    out
}

pub fn is_multi_permutation(a: &[i32]) -> bool {
    a.windows(2).all(|p| p[0] != p[1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuasiKind {
    /// Multi-fundamental functions, summed over compatible sequences.
    L,
    /// Multi-peak functions, summed over unimodal factorizations.
    K,
}

/// `L^{(β)}_π` or `K^{(β)}_π` in `z_1, …, z_n` up to degree `d`.
pub fn quasi(pi: &[i32], kind: QuasiKind, n: u32, d: u32) -> Result<TruncPoly> {
    if !is_multi_permutation(pi) {
        return Err(Error::InvalidArgument(format!("{pi:?} has equal adjacent letters")));
    }
    let mut out = TruncPoly::zero().bounded(d);
    let k = pi.len();
    if k > d as usize {
        return Ok(out);
    }
    // distribute the extra letters over the runs
    let mut runs = vec![1usize; k];
    fn rec(pi: &[i32], runs: &mut Vec<usize>, pos: usize, spare: usize, kind: QuasiKind, n: u32, out: &mut TruncPoly) {
        if pos == runs.len() {
            let a: Vec<i32> = pi.iter().zip(runs.iter()).flat_map(|(&x, &r)| std::iter::repeat_n(x, r)).collect();
            let extra = (a.len() - pi.len()) as u32;
            match kind {
                QuasiKind::L => {
                    for b in stable_compatible_seqs(&a, n) {
                        out.add_term(z_monomial(extra, b), BigInt::from(1));
                    }
                }
                QuasiKind::K => {
                    for b in unimodal_factorizations(GroupType::C, &a, n) {
                        out.add_term(z_monomial(extra, b.iter().map(|x| x.unsigned_abs())), BigInt::from(1));
                    }
                }
            }
            return;
        }
        for add in 0..=spare {
            runs[pos] = 1 + add;
            rec(pi, runs, pos + 1, spare - add, kind, n, out);
        }
        runs[pos] = 1;
    }
    if k == 0 {
        out.add_term(Monomial::one(), BigInt::from(1));
        return Ok(out);
    }
    rec(pi, &mut runs, 0, d as usize - k, kind, n, &mut out);
    Ok(out)
}
