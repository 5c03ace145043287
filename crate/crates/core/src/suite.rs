//! Batch verification of the identities the engine relies on.

use crate::error::Result;
use crate::expand::{skew_expansion_via, transition_step, verify_expansion};
use crate::hecke::{fstanley, Method};
use crate::kn::{transition_bcd, transition_residual};
use crate::partition::{ShiftedSkewShape, StrictPartition};
use crate::rings::supersym_check;
use crate::weyl::{elements, GroupType};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: &'static str,
    pub cases: usize,
    /// First failing case, if any.
    pub counterexample: Option<String>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub n: u32,
    pub d: u32,
    /// Rank of the groups that are swept exhaustively.
    pub rank: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { n: 3, d: 6, rank: 3 }
    }
}

struct Check {
    name: &'static str,
    cases: usize,
    counterexample: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check { name, cases: 0, counterexample: None }
    }

    /// Records one case; returns false once a counterexample is known.
    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) -> bool {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(what());
        }
        self.counterexample.is_none()
    }

    fn done(self) -> CheckReport {
        CheckReport { name: self.name, cases: self.cases, counterexample: self.counterexample }
    }
}

fn oracle_agreement(cfg: SuiteConfig) -> Result<CheckReport> {
    let mut c = Check::new("expansion agrees with the K-Stanley oracle");
    'outer: for ty in GroupType::CLASSICAL {
        for w in elements(ty, cfg.rank) {
            if w.length_unchecked(ty) > (cfg.d as usize).min(4) {
                continue;
            }
            let rep = verify_expansion(ty, &w, cfg.n, cfg.d)?;
            if !c.case(rep.ok(), || format!("{ty} {w}: difference {}", rep.difference)) {
                break 'outer;
            }
        }
    }
    Ok(c.done())
}

fn positivity(cfg: SuiteConfig) -> Result<CheckReport> {
    let mut c = Check::new("transition steps are positive");
    'outer: for ty in GroupType::CLASSICAL {
        for w in elements(ty, cfg.rank) {
            if w.is_grassmannian() {
                continue;
            }
            let ok = match transition_step(ty, &w) {
                Ok(out) => out.iter().all(|(_, a)| a.is_nonnegative()),
                Err(_) => false,
            };
            if !c.case(ok, || format!("{ty} {w}")) {
                break 'outer;
            }
        }
    }
    Ok(c.done())
}

fn kn_transitions(cfg: SuiteConfig) -> Result<CheckReport> {
    let mut c = Check::new("classical transition identity at truncation");
    let (n, d) = (cfg.n.min(2), cfg.d.min(4));
    'outer: for ty in GroupType::CLASSICAL {
        for w in elements(ty, cfg.rank.min(2)) {
            if w.is_grassmannian() {
                continue;
            }
            let res = transition_residual(&transition_bcd(ty, &w)?, n, d)?;
            if !c.case(res.is_zero(), || format!("{ty} {w}: residual {res}")) {
                break 'outer;
            }
        }
    }
    Ok(c.done())
}

fn d_redundancy() -> Result<CheckReport> {
    let mut c = Check::new("type B and type D give the same skew expansion");
    let top = StrictPartition::new(vec![4, 3, 2, 1])?;
    'outer: for lambda in top.subpartitions() {
        for mu in lambda.subpartitions() {
            let shape = ShiftedSkewShape::new(lambda.clone(), mu);
            let b = skew_expansion_via(GroupType::B, &shape)?;
            let d = skew_expansion_via(GroupType::D, &shape)?;
            if !c.case(b.terms == d.terms, || format!("{shape}: B gives {b}, D gives {d}")) {
                break 'outer;
            }
        }
    }
    Ok(c.done())
}

fn definitions(cfg: SuiteConfig) -> Result<CheckReport> {
    let mut c = Check::new("compatible and unimodal definitions agree and are supersymmetric");
    let d = cfg.d.min(5);
    'outer: for ty in GroupType::CLASSICAL {
        for w in elements(ty, cfg.rank) {
            if w.length_unchecked(ty) > 3 {
                continue;
            }
            let a = fstanley(ty, &w, cfg.n, d, Method::Compat)?;
            let b = fstanley(ty, &w, cfg.n, d, Method::Unimodal)?;
            let ok = a == b && supersym_check(&b, cfg.n, d)?;
            if !c.case(ok, || format!("{ty} {w}")) {
                break 'outer;
            }
        }
    }
    Ok(c.done())
}

/// Runs every check; each stops at its first counterexample.
pub fn run_suite(cfg: SuiteConfig) -> Result<Vec<CheckReport>> {
    Ok(vec![positivity(cfg)?, oracle_agreement(cfg)?, kn_transitions(cfg)?, d_redundancy()?, definitions(cfg)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let reports = run_suite(SuiteConfig { n: 2, d: 4, rank: 2 }).unwrap();
        for r in &reports {
            assert!(r.ok(), "{}: {:?}", r.name, r.counterexample);
            assert!(r.cases > 0, "{}", r.name);
        }
    }
}
