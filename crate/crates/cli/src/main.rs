use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde_json::json;

use ktrans::cache;
use ktrans::error::Error;
use ktrans::expand::{expand_grassmannian, skew_expansion, skew_expansion_via, transition_step, verify_expansion, Basis};
use ktrans::groth_a::{clear_denominators, groth_poly, transition_a, Transition};
use ktrans::hecke::{fstanley, Method};
use ktrans::kn::{kn_eval, transition_bcd, transition_residual};
use ktrans::partition::{ShiftedSkewShape, StrictPartition};
use ktrans::suite::{run_suite, CheckReport, SuiteConfig};
use ktrans::tableaux::{gp, gq};
use ktrans::weyl::{length, GroupType, SignedPermutation};

#[derive(Parser)]
#[command(name = "ktrans", version, about = "Transition calculus for K-theoretic Schubert calculus in classical types")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args, Clone)]
struct Trunc {
    /// Number of variables
    #[arg(long = "N", default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    /// Degree bound
    #[arg(long = "D", default_value_t = 6)]
    d: u32,
}

#[derive(Args, Clone)]
struct Element {
    #[arg(long = "type", value_parser = parse_type)]
    ty: GroupType,
    /// One-line window, e.g. "-3,4,-1,5,2"
    #[arg(long, allow_hyphen_values = true, value_parser = parse_perm)]
    w: SignedPermutation,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Compat,
    Unimodal,
}

#[derive(Subcommand)]
enum Command {
    /// Coxeter length of w
    Length(Element),
    /// K-Stanley symmetric function F_w(z_1..z_N) up to degree D
    Fstanley {
        #[command(flatten)]
        el: Element,
        #[command(flatten)]
        trunc: Trunc,
        #[arg(long, value_enum, default_value = "unimodal")]
        method: MethodArg,
    },
    /// K-theoretic Schur P-function of a (skew) shifted shape
    Gp(ShapeArgs),
    /// K-theoretic Schur Q-function of a (skew) shifted shape
    Gq(ShapeArgs),
    /// Grassmannian expansion of F_w
    Expand {
        #[command(flatten)]
        el: Element,
        /// Also compare against the K-Stanley oracle at N, D
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        trunc: Trunc,
    },
    /// GP/GQ expansion of a skew shifted function
    Skew {
        #[arg(long, value_parser = parse_partition)]
        outer: StrictPartition,
        #[arg(long, value_parser = parse_partition, default_value = "[]")]
        inner: StrictPartition,
        #[arg(long, value_parser = parse_basis, default_value = "GP")]
        basis: Basis,
        /// Compute GP through type D instead of type B
        #[arg(long = "via-d")]
        via_d: bool,
    },
    /// Type A double Grothendieck polynomial
    GrothA {
        #[arg(long, value_parser = parse_perm)]
        w: SignedPermutation,
    },
    /// Kirillov-Naruse polynomial of w up to degree D
    KnEval {
        #[command(flatten)]
        el: Element,
        #[command(flatten)]
        trunc: Trunc,
    },
    /// Transition identity at the last descent of w, checked at truncation
    KnTransition {
        #[command(flatten)]
        el: Element,
        #[command(flatten)]
        trunc: Trunc,
    },
    /// Exhaustive and randomized verification run
    VerifySuite {
        #[command(flatten)]
        trunc: Trunc,
        /// Rank of the exhaustive sweep
        #[arg(long, default_value_t = 3)]
        rank: usize,
        /// Seed for the randomized sample
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Size of the randomized sample
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Args, Clone)]
struct ShapeArgs {
    /// "[5,3,1]" or "outer=[5,3,1] inner=[2]"
    #[arg(long, value_parser = parse_shape)]
    shape: ShiftedSkewShape,
    #[command(flatten)]
    trunc: Trunc,
}

fn parse_type(s: &str) -> Result<GroupType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_perm(s: &str) -> Result<SignedPermutation, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_partition(s: &str) -> Result<StrictPartition, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_shape(s: &str) -> Result<ShiftedSkewShape, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_basis(s: &str) -> Result<Basis, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn classical(ty: GroupType) -> Result<(), Failure> {
    if ty.is_classical() {
        Ok(())
    } else {
        Err(Failure::Usage(format!("type {ty} is not supported here; use B, C or D")))
    }
}

fn emit(json: bool, value: serde_json::Value, text: impl std::fmt::Display) {
    if json {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        println!("{text}");
    }
}

fn transition_of(ty: GroupType, w: &SignedPermutation) -> Result<Transition, Failure> {
    Ok(if ty == GroupType::A { transition_a(w)? } else { transition_bcd(ty, w)? })
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Length(Element { ty, w }) => {
            let l = length(ty, &w)?;
            emit(json, json!({"type": ty, "w": w, "length": l}), l);
        }
        Command::Fstanley { el, trunc, method } => {
            classical(el.ty)?;
            let method = match method {
                MethodArg::Compat => Method::Compat,
                MethodArg::Unimodal => Method::Unimodal,
            };
            let p = fstanley(el.ty, &el.w, trunc.n, trunc.d, method)?;
            emit(json, json!({"type": el.ty, "w": el.w, "N": trunc.n, "D": trunc.d, "poly": p.to_string()}), p);
        }
        Command::Gp(args) | Command::Gq(args) if !args.shape.is_valid() => {
            return Err(Failure::Usage(format!("{} is not a valid skew shape", args.shape)));
        }
        Command::Gp(ShapeArgs { shape, trunc }) => {
            let p = gp(&shape, trunc.n, trunc.d);
            emit(json, json!({"shape": shape.to_string(), "N": trunc.n, "D": trunc.d, "poly": p.to_string()}), p);
        }
        Command::Gq(ShapeArgs { shape, trunc }) => {
            let p = gq(&shape, trunc.n, trunc.d);
            emit(json, json!({"shape": shape.to_string(), "N": trunc.n, "D": trunc.d, "poly": p.to_string()}), p);
        }
        Command::Expand { el, verify, trunc } => {
            classical(el.ty)?;
            if verify {
                let rep = verify_expansion(el.ty, &el.w, trunc.n, trunc.d)?;
                let mut value = serde_json::to_value(rep.expansion.to_json()).expect("serializable");
                value["verified"] = json!(rep.ok());
                emit(json, value, &rep.expansion);
                if !rep.ok() {
                    return Err(Failure::Verification(format!("oracle difference {}", rep.difference)));
                }
            } else {
                let r = expand_grassmannian(el.ty, &el.w)?;
                emit(json, serde_json::to_value(r.to_json()).expect("serializable"), &r);
            }
        }
        Command::Skew { outer, inner, basis, via_d } => {
            let shape = ShiftedSkewShape::new(outer, inner);
            let r = match (basis, via_d) {
                (Basis::GP, true) => skew_expansion_via(GroupType::D, &shape)?,
                (Basis::GQ, true) => return Err(Failure::Usage("--via-d only applies to GP".into())),
                _ => skew_expansion(basis, &shape)?,
            };
            let mut value = serde_json::to_value(r.to_json()).expect("serializable");
            value["shape"] = json!(shape.to_string());
            // skew β-powers are measured against |λ/μ|, which equals ℓ(w)
            emit(json, value, &r);
        }
        Command::GrothA { w } => {
            let p = groth_poly(&w)?;
            emit(json, json!({"w": w, "poly": p.to_string()}), p);
        }
        Command::KnEval { el, trunc } => {
            classical(el.ty)?;
            let p = kn_eval(el.ty, &el.w, trunc.n, trunc.d)?;
            emit(json, json!({"type": el.ty, "w": el.w, "N": trunc.n, "D": trunc.d, "poly": p.to_string()}), p);
        }
        Command::KnTransition { el, trunc } => {
            let t = transition_of(el.ty, &el.w)?;
            let residual = if el.ty == GroupType::A {
                let (l, r) = clear_denominators(&groth_poly(&el.w)?, &t.combo, groth_poly)?;
                &l - &r
            } else {
                transition_residual(&t, trunc.n, trunc.d)?
            };
            let value = json!({
                "type": t.ty, "w": t.w, "v": t.v, "a": t.a, "b": t.b, "c": t.c,
                "combo": t.combo.to_string(), "residual": residual.to_string(),
            });
            let text = format!("a={} b={} c={} v={}\n{}\nresidual: {residual}", t.a, t.b, t.c, t.v, t.combo);
            emit(json, value, text);
            if !residual.is_zero() {
                return Err(Failure::Verification(format!("transition identity fails for {}", t.w)));
            }
        }
        Command::VerifySuite { trunc, rank, seed, samples } => {
            let cfg = SuiteConfig { n: trunc.n, d: trunc.d, rank };
            let mut reports = run_suite(cfg)?;
            reports.push(random_sample(seed, samples, trunc)?);
            let summary: Vec<_> = reports
                .iter()
                .map(|r| json!({"check": r.name, "cases": r.cases, "ok": r.ok(), "counterexample": r.counterexample}))
                .collect();
            let text: Vec<String> = reports
                .iter()
                .map(|r| match &r.counterexample {
                    None => format!("ok   {} ({} cases)", r.name, r.cases),
                    Some(c) => format!("FAIL {} ({} cases): {c}", r.name, r.cases),
                })
                .collect();
            emit(json, json!({"seed": seed, "checks": summary}), text.join("\n"));
            if let Some(bad) = reports.iter().find(|r| !r.ok()) {
                let c = bad.counterexample.clone().unwrap_or_default();
                return Err(Failure::Verification(format!("{}: {c}", bad.name)));
            }
        }
    }
    Ok(())
}

/// Expands random elements of rank 4 and checks them against the oracle.
fn random_sample(seed: u64, samples: usize, trunc: Trunc) -> Result<CheckReport, Failure> {
    let mut rng = StdRng::seed_from_u64(seed);
    let (n, d) = (trunc.n.min(3), trunc.d.min(6));
    let mut cases = 0;
    while cases < samples {
        let ty = *GroupType::CLASSICAL.choose(&mut rng).expect("nonempty");
        let mut window: Vec<i32> = (1..=4).collect();
        window.shuffle(&mut rng);
        for v in &mut window {
            if rng.gen_bool(0.5) {
                *v = -*v;
            }
        }
        let w = SignedPermutation::from_window(window)?;
        if !w.is_in(ty) || w.length_unchecked(ty) > d as usize {
            continue;
        }
        cases += 1;
        let failure = if !w.is_grassmannian() && transition_step(ty, &w).is_err() {
            Some(format!("{ty} {w}: transition step not positive"))
        } else {
            let rep = verify_expansion(ty, &w, n, d)?;
            (!rep.ok()).then(|| format!("{ty} {w}: oracle difference {}", rep.difference))
        };
        if failure.is_some() {
            return Ok(CheckReport { name: "random rank-4 sample", cases, counterexample: failure });
        }
    }
    Ok(CheckReport { name: "random rank-4 sample", cases, counterexample: None })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    let cache_dir = cache::env_dir();
    if let Some(dir) = &cache_dir {
        if let Err(e) = cache::load(dir) {
            eprintln!("warning: ignoring cache in {}: {e}", dir.display());
        }
    }
    let outcome = run(cli);
    if let Some(dir) = &cache_dir {
        if let Err(e) = cache::save(dir) {
            eprintln!("warning: could not save cache to {}: {e}", dir.display());
        }
    }
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `ktrans --help` for usage");
            ExitCode::from(2)
        }
    }
}
