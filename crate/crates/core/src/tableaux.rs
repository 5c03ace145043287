//! Semistandard set-valued shifted tableaux, their generating functions
//! `GP` and `GQ`, and the fully commutative elements attached to shifted
//! skew shapes.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::Result;
use crate::partition::ShiftedSkewShape;
use crate::rings::{Monomial, TruncPoly, Var};
use crate::weyl::{word_product, GroupType, SignedPermutation};

/// A letter of `1' < 1 < 2' < 2 < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedLetter(u32);

impl MarkedLetter {
    pub fn new(value: u32, primed: bool) -> Self {
        assert!(value > 0, "letters start at 1");
        MarkedLetter(if primed { 2 * value - 1 } else { 2 * value })
    }

    pub fn value(self) -> u32 {
        self.0.div_ceil(2)
    }

    pub fn is_primed(self) -> bool {
        self.0 % 2 == 1
    }
}

impl fmt::Display for MarkedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_primed() {
            write!(f, "{}'", self.value())
        } else {
            write!(f, "{}", self.value())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// No primed letters on the main diagonal.
    P,
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedSetTableau {
    pub flavor: Flavor,
    /// Cells in row-major order with their sorted entries.
    pub entries: Vec<((u32, u32), Vec<MarkedLetter>)>,
}

impl MarkedSetTableau {
    /// Total number of letters `|T|`.
    pub fn size(&self) -> usize {
        self.entries.iter().map(|(_, s)| s.len()).sum()
    }

    pub fn weight(&self) -> Vec<(u32, u32)> {
        let mut counts: HashMap<u32, u32> = HashMap::new();
        for (_, s) in &self.entries {
            for l in s {
                *counts.entry(l.value()).or_default() += 1;
            }
        }
        let mut out: Vec<_> = counts.into_iter().collect();
        out.sort();
        out
    }
}

impl fmt::Display for MarkedSetTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .entries
            .iter()
            .map(|((i, j), s)| {
                let letters: Vec<String> = s.iter().map(|l| l.to_string()).collect();
                format!("({i},{j}):{{{}}}", letters.join(","))
            })
            .collect();
        f.write_str(&cells.join(" "))
    }
}

/// Backtracking state over the cells of a skew shape. Entries are bit sets
/// of letter codes (bit `c` for code `c`, where `2v-1` is `v'` and `2v` is `v`).
struct Filler<'a> {
    cells: &'a [(u32, u32)],
    index: HashMap<(u32, u32), usize>,
    flavor: Flavor,
    max_code: u32,
    budget: usize,
    sets: Vec<u64>,
}

impl<'a> Filler<'a> {
    fn new(cells: &'a [(u32, u32)], flavor: Flavor, n: u32, budget: usize) -> Self {
        let index = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        Filler { cells, index, flavor, max_code: 2 * n, budget, sets: vec![0; cells.len()] }
    }

    fn lower_bound(&self, k: usize) -> u32 {
        let (i, j) = self.cells[k];
        let mut lo = 1;
        if j > 1 {
            if let Some(&l) = self.index.get(&(i, j - 1)) {
                let m = 63 - self.sets[l].leading_zeros();
                // equal neighbours in a row must share an unprimed letter
                lo = lo.max(if m % 2 == 1 { m + 1 } else { m });
            }
        }
        if i > 1 {
            if let Some(&u) = self.index.get(&(i - 1, j)) {
                let m = 63 - self.sets[u].leading_zeros();
                // equal neighbours in a column must share a primed letter
                lo = lo.max(if m.is_multiple_of(2) { m + 1 } else { m });
            }
        }
        lo
    }

    fn run(&mut self, k: usize, used: usize, visit: &mut dyn FnMut(&[u64], usize)) {
        if k == self.cells.len() {
            visit(&self.sets, used);
            return;
        }
        let remaining_cells = self.cells.len() - k - 1;
        let room = self.budget - used - remaining_cells;
        let lo = self.lower_bound(k);
        let diag_p = self.flavor == Flavor::P && self.cells[k].0 == self.cells[k].1;
        let allowed: Vec<u32> = (lo..=self.max_code).filter(|c| !(diag_p && c % 2 == 1)).collect();
        for (a, &first) in allowed.iter().enumerate() {
            let rest = &allowed[a + 1..];
            let extra = rest.len().min(room - 1);
            // every subset of `rest` with at most `extra` elements
            let mut chosen = Vec::new();
            self.subsets(k, used, first, rest, extra, 0, &mut chosen, visit);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn subsets(
        &mut self,
        k: usize,
        used: usize,
        first: u32,
        rest: &[u32],
        extra: usize,
        from: usize,
        chosen: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u64], usize),
    ) {
        let mut mask = 1u64 << first;
        for &c in chosen.iter() {
            mask |= 1u64 << c;
        }
        self.sets[k] = mask;
        self.run(k + 1, used + 1 + chosen.len(), visit);
        if chosen.len() == extra {
            return;
        }
        for t in from..rest.len() {
            chosen.push(rest[t]);
            self.subsets(k, used, first, rest, extra, t + 1, chosen, visit);
            chosen.pop();
        }
    }
}

type Visitor<'a> = dyn FnMut(&[(u32, u32)], &[u64], usize) + 'a;

fn walk(shape: &ShiftedSkewShape, flavor: Flavor, n: u32, d: u32, visit: &mut Visitor<'_>) {
    if !shape.is_valid() || n == 0 {
        if shape.is_valid() && shape.size() == 0 {
            visit(&[], &[], 0);
        }
        return;
    }
    let cells = shape.cells();
    if cells.len() > d as usize {
        return;
    }
    let mut filler = Filler::new(&cells, flavor, n, d as usize);
    filler.run(0, 0, &mut |sets, used| visit(&cells, sets, used));
}

/// All semistandard set-valued shifted tableaux of the given shape with
/// letters at most `n` and at most `d` letters in total.
pub fn enumerate_tableaux(shape: &ShiftedSkewShape, flavor: Flavor, n: u32, d: u32) -> Vec<MarkedSetTableau> {
    let mut out = Vec::new();
    walk(shape, flavor, n, d, &mut |cells, sets, _| {
        let entries = cells
            .iter()
            .zip(sets)
            .map(|(&c, &mask)| {
                let letters = (1..64).filter(|b| mask >> b & 1 == 1).map(MarkedLetter).collect();
                (c, letters)
            })
            .collect();
        out.push(MarkedSetTableau { flavor, entries });
    });
    out
}

fn generating_function(shape: &ShiftedSkewShape, flavor: Flavor, n: u32, d: u32) -> TruncPoly {
    let base = shape.size() as usize;
    let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
    walk(shape, flavor, n, d, &mut |_, sets, _| {
        let mut exps = vec![0u32; n as usize];
        for &mask in sets {
            let mut m = mask;
            while m != 0 {
                let c = m.trailing_zeros();
                exps[(c.div_ceil(2) - 1) as usize] += 1;
                m &= m - 1;
            }
        }
        *counts.entry(exps).or_default() += 1;
    });
    let mut out = TruncPoly::zero().bounded(d);
    for (exps, c) in counts {
        let total: u32 = exps.iter().sum();
        let mono = Monomial::new(
            total - base as u32,
            exps.iter().enumerate().map(|(k, &e)| (Var::z(k as u32 + 1), e)),
        );
        out.add_term(mono, BigInt::from(c));
    }
    out
}

/// `GP_{λ/μ}(z_1, …, z_n)` up to degree `d`.
pub fn gp(shape: &ShiftedSkewShape, n: u32, d: u32) -> TruncPoly {
    generating_function(shape, Flavor::P, n, d)
}

/// `GQ_{λ/μ}(z_1, …, z_n)` up to degree `d`.
pub fn gq(shape: &ShiftedSkewShape, n: u32, d: u32) -> TruncPoly {
    generating_function(shape, Flavor::Q, n, d)
}

/// The reading word of the filling `T^B` (types B, C) or `T^D` (type D).
pub fn shape_word(ty: GroupType, shape: &ShiftedSkewShape) -> Result<Vec<i32>> {
    shape.check()?;
    let word = shape
        .cells()
        .into_iter()
        .map(|(i, j)| {
            let (i, j) = (i as i32, j as i32);
            match ty {
                GroupType::D if i == j => {
                    if i % 2 == 1 {
                        1
                    } else {
                        -1
                    }
                }
                GroupType::D => j - i + 1,
                _ => j - i,
            }
        })
        .collect();
    Ok(word)
}

/// The fully commutative element `w_X(λ/μ)`.
pub fn w_shape(ty: GroupType, shape: &ShiftedSkewShape) -> Result<SignedPermutation> {
    Ok(word_product(&shape_word(ty, shape)?))
}
