use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use ktrans::expand::{expand_with, skew_expansion, skew_expansion_via, transition_step, Basis, ExpandOptions};
use ktrans::groth_a::{apply_m_a, clear_denominators, groth_poly, transition_a};
use ktrans::hecke::{fstanley, hecke_words, is_multi_permutation, quasi, Method, QuasiKind};
use ktrans::kn::{apply_m_bcd, eval_combo, kn_eval, transition_bcd, transition_residual};
use ktrans::partition::{ShiftedSkewShape, StrictPartition};
use ktrans::rings::{parse_poly, supersym_check, FCombo, TruncPoly, Var, YRational};
use ktrans::tableaux::{gp, gq};
use ktrans::weyl::{elements, length, length_increment_ok, GroupType, SignedPermutation};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn sp(s: &str) -> SignedPermutation {
    s.parse().expect("valid window")
}

fn part(p: &[u32]) -> StrictPartition {
    StrictPartition::new(p.to_vec()).expect("strict partition")
}

fn straight(p: &[u32]) -> ShiftedSkewShape {
    ShiftedSkewShape::straight(part(p))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

const WORKED_W: &str = "-3,4,-1,5,2";
const WORKED_KEYS: [&str; 7] =
    ["-4,-2,-1,3", "-4,-3,1,2", "-5,-2,1,3,4", "-4,-3,-1,2", "-5,-2,-1,3,4", "-5,-3,1,2,4", "-5,-3,-1,2,4"];

fn worked_expansion(ty: GroupType, coeffs: [u32; 7], powers: [u32; 7]) -> Outcome {
    let w = sp(WORKED_W);
    let (r, _) = expand_with(ty, &w, ExpandOptions { use_memo: false, trace: false }).map_err(err)?;
    ensure(r.elements.len() == 7, || format!("expected 7 terms, got {}", r.elements.len()))?;
    for ((key, a), e) in WORKED_KEYS.iter().zip(coeffs).zip(powers) {
        let u = sp(key);
        let got = r.elements.get(&u).cloned().unwrap_or_default();
        ensure(got == BigInt::from(a), || format!("coefficient of {u}: got {got}, want {a}"))?;
        let beta = u.length_unchecked(ty) - r.length;
        ensure(beta == e as usize, || format!("β-power of {u}: got {beta}, want {e}"))?;
    }
    Ok(())
}

fn c1() -> Outcome {
    worked_expansion(GroupType::B, [4, 2, 2, 5, 5, 3, 6], [0, 0, 0, 1, 1, 1, 2])
}

fn c2() -> Outcome {
    worked_expansion(GroupType::C, [2, 2, 2, 3, 3, 3, 4], [0, 0, 0, 1, 1, 1, 2])
}

fn c3() -> Outcome {
    let w = sp(WORKED_W);
    let expect = [("-3,4,2,-1", "1"), ("-3,4,-2,1", "1"), ("-3,4,-2,-1", "b"), ("-3,4,1,-2", "b"), ("-3,4,-1,-2", "b^2")];
    let mut outs = Vec::new();
    for ty in [GroupType::B, GroupType::C] {
        let out = transition_step(ty, &w).map_err(err)?;
        ensure(out.len() == expect.len(), || format!("{ty}: {out}"))?;
        for (u, c) in expect {
            let want = parse_poly(c).map_err(err)?;
            ensure(out.get(&sp(u)) == Some(&want), || format!("{ty}: coefficient of {u} in {out}"))?;
        }
        outs.push(out.into_terms());
    }
    ensure(outs[0] == outs[1], || "B and C transition steps differ".into())
}

fn c4() -> Outcome {
    let shape = ShiftedSkewShape::new(part(&[5, 3, 1]), part(&[2]));
    let b = skew_expansion(Basis::GP, &shape).map_err(err)?;
    let d = skew_expansion_via(GroupType::D, &shape).map_err(err)?;
    ensure(b.terms == d.terms, || format!("via B: {b}; via D: {d}"))?;
    let lhs = b.evaluate(3, 8);
    let rhs = gp(&shape, 3, 8);
    ensure(lhs == rhs, || format!("difference {}", &lhs - &rhs))
}

fn c5() -> Outcome {
    let (n, d) = (3, 6);
    for k in 1..=3 {
        let lhs = gq(&straight(&[k]), n, d);
        let rhs = &gp(&straight(&[k]), n, d).scale(&BigInt::from(2)) + &gp(&straight(&[k + 1]), n, d).mul_beta(1);
        ensure(lhs == rhs.bounded(d), || format!("GQ_{k}"))?;
    }
    let g1 = gp(&straight(&[1]), n, d);
    ensure(gp(&straight(&[2]), n, d) == (&g1 * &g1).bounded(d), || "GP_2 vs GP_1^2".into())
}

fn c6() -> Outcome {
    for ty in GroupType::CLASSICAL {
        for w in elements(ty, 3) {
            if w.length_unchecked(ty) > 3 {
                continue;
            }
            let a = fstanley(ty, &w, 3, 5, Method::Compat).map_err(err)?;
            let b = fstanley(ty, &w, 3, 5, Method::Unimodal).map_err(err)?;
            ensure(a == b, || format!("{ty} {w}: {}", &a - &b))?;
        }
    }
    Ok(())
}

fn c7() -> Outcome {
    for ty in GroupType::CLASSICAL {
        for w in elements(ty, 3).into_iter().filter(SignedPermutation::is_grassmannian) {
            let shape = ShiftedSkewShape::straight(w.shape(ty).map_err(err)?);
            let f = fstanley(ty, &w, 3, 6, Method::Unimodal).map_err(err)?;
            let g = match Basis::of(ty) {
                Basis::GP => gp(&shape, 3, 6),
                Basis::GQ => gq(&shape, 3, 6),
            };
            ensure(f == g, || format!("{ty} {w}: {}", &f - &g))?;
        }
    }
    Ok(())
}

fn c8() -> Outcome {
    for w in elements(GroupType::A, 4) {
        if w.is_identity() {
            continue;
        }
        let t = transition_a(&w).map_err(err)?;
        let (l, r) = clear_denominators(&groth_poly(&w).map_err(err)?, &t.combo, groth_poly).map_err(err)?;
        ensure(l == r, || format!("transition at {w}"))?;
    }
    for u in elements(GroupType::A, 3) {
        for k in 1..=3 {
            let lhs = &TruncPoly::one_plus_beta(Var::x(k as u32)) * &groth_poly(&u).map_err(err)?;
            let basis = FCombo::basis(GroupType::A, u.clone(), YRational::one()).map_err(err)?;
            let rhs = apply_m_a(k, &basis).map_err(err)?;
            let (l, r) = clear_denominators(&lhs, &rhs, groth_poly).map_err(err)?;
            ensure(l == r, || format!("Monk rule at u={u}, k={k}"))?;
        }
    }
    Ok(())
}

fn c9() -> Outcome {
    let w = sp("-2,1");
    for (ty, f) in [(GroupType::B, gp as fn(&ShiftedSkewShape, u32, u32) -> TruncPoly), (GroupType::C, gq)] {
        let one_plus = TruncPoly::one_plus_beta(Var::y(1));
        let want = (&(&TruncPoly::y(1) * &f(&straight(&[1]), 2, 4)) + &(&one_plus * &f(&straight(&[2]), 2, 4))).bounded(4);
        let got = kn_eval(ty, &w, 2, 4).map_err(err)?;
        ensure(got == want, || format!("{ty}: difference {}", &got - &want))?;
    }
    Ok(())
}

fn c10() -> Outcome {
    let (n, d) = (2, 4);
    for ty in GroupType::CLASSICAL {
        for w in elements(ty, 2) {
            if !w.is_grassmannian() {
                let t = transition_bcd(ty, &w).map_err(err)?;
                let res = transition_residual(&t, n, d).map_err(err)?;
                ensure(res.is_zero(), || format!("transition {ty} {w}: residual {res}"))?;
            }
            for k in 1..=2 {
                let lhs = (&TruncPoly::one_plus_beta(Var::x(k as u32)) * &kn_eval(ty, &w, n, d).map_err(err)?).bounded(d);
                let basis = FCombo::basis(ty, w.clone(), YRational::one()).map_err(err)?;
                let rhs = eval_combo(&apply_m_bcd(ty, k, &basis, d).map_err(err)?, n, d).map_err(err)?;
                ensure(lhs == rhs, || format!("Monk rule {ty} u={w} k={k}"))?;
            }
        }
    }
    Ok(())
}

fn c11() -> Outcome {
    for ty in GroupType::CLASSICAL {
        for w in elements(ty, 3) {
            let lw = length(ty, &w).map_err(err)?;
            for j in 1..=4i32 {
                for i in -4..j {
                    if i == -j || (ty == GroupType::D && i == 0) {
                        continue;
                    }
                    let fast = length_increment_ok(ty, &w, i, j).map_err(err)?;
                    let wt = w.times_reflection(i, j);
                    let direct = length(ty, &wt).map_err(err)? == lw + 1;
                    ensure(fast == direct, || format!("{ty} w={w} t({i},{j})"))?;
                }
            }
        }
    }
    Ok(())
}

fn c12() -> Outcome {
    let (n, d) = (3, 6);
    for ty in GroupType::CLASSICAL {
        for w in elements(ty, 2) {
            let f = fstanley(ty, &w, n, d, Method::Unimodal).map_err(err)?;
            ensure(supersym_check(&f, n, d).map_err(err)?, || format!("F^{ty}_{w}"))?;
        }
    }
    for size in 0..=4 {
        for lambda in StrictPartition::of_size(size) {
            let shape = ShiftedSkewShape::straight(lambda.clone());
            ensure(supersym_check(&gp(&shape, n, d), n, d).map_err(err)?, || format!("GP{lambda}"))?;
            ensure(supersym_check(&gq(&shape, n, d), n, d).map_err(err)?, || format!("GQ{lambda}"))?;
        }
    }
    Ok(())
}

fn c13() -> Outcome {
    let (n, d) = (3, 5);
    for w in elements(GroupType::C, 2) {
        let len = w.length_unchecked(GroupType::C);
        let mut sum = TruncPoly::zero().bounded(d);
        for pi in hecke_words(GroupType::C, &w, d as usize).map_err(err)? {
            if is_multi_permutation(&pi) {
                sum += &quasi(&pi, QuasiKind::K, n, d).map_err(err)?.mul_beta((pi.len() - len) as u32);
            }
        }
        let f = fstanley(GroupType::C, &w, n, d, Method::Unimodal).map_err(err)?;
        ensure(sum == f, || format!("{w}: difference {}", &sum - &f))?;
    }
    Ok(())
}

fn c14() -> Outcome {
    let ty = GroupType::B;
    for w in elements(ty, 3) {
        let (r, trace) = expand_with(ty, &w, ExpandOptions { use_memo: false, trace: true }).map_err(err)?;
        let bound = 3 + w.least_descent();
        ensure(trace.max_support <= bound, || format!("{w}: support {} exceeds {bound}", trace.max_support))?;
        for step in &trace.steps {
            for (u, c) in step.produced.iter() {
                ensure(c.is_beta_only() && c.is_nonnegative() && !c.is_zero(), || {
                    format!("{w}: expanding {} gave {c} on {u}", step.key)
                })?;
                ensure(u.support() <= bound, || format!("{w}: intermediate {u} outside W_{bound}"))?;
            }
        }
        ensure(r.terms.values().all(|a| *a > BigInt::zero()), || format!("{w}: {r}"))?;
        if w.is_identity() {
            ensure(r.terms.values().all(One::is_one), || "identity".into())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("worked expansion, type B", c1),
        ("worked expansion, type C", c2),
        ("worked transition step, B and C", c3),
        ("skew consistency via B and D", c4),
        ("GQ/GP relations", c5),
        ("compatible vs unimodal definitions", c6),
        ("Grassmannian law", c7),
        ("type A transitions and Monk rule", c8),
        ("Kirillov-Naruse example", c9),
        ("classical transitions and Monk rule at truncation", c10),
        ("length lemma equivalence", c11),
        ("K-supersymmetry", c12),
        ("quasisymmetric identity, type C", c13),
        ("positivity sweep over W^B_3", c14),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {msg}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
