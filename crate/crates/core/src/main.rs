use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ainfty::category::AInfCategory;
use ainfty::chain::random_complex;
use ainfty::compare::compare;
use ainfty::dold_kan::{
    chain_map_dimension, cross_to_chain_map, dk, normalized_chains, roundtrip_complex, roundtrip_module, solve_cross,
    verify_cross, z_delta,
};
use ainfty::error::Error;
use ainfty::field::Field;
use ainfty::io::{self, Loaded, Report};
use ainfty::nerve::{compare_ho, nerve};
use ainfty::simplicial::{is_quasicategory, validate};

#[derive(Parser)]
#[command(name = "ainfty", version, about = "Checks finitely presented A-infinity categories, their nerves and Dold-Kan data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Override the field of the input: Q, F2, Fp:5, ...
    #[arg(long)]
    field: Option<String>,
    /// Print the canonical JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Compare the JSON report with this file, or write it there if it does not exist.
    #[arg(long)]
    golden: Option<PathBuf>,
    /// Refuse enumerations estimated larger than this.
    #[arg(long, default_value_t = 1_000_000)]
    cap: u128,
}

#[derive(Subcommand)]
enum Command {
    /// A-infinity relations, unit laws and declared functors.
    Check {
        path: PathBuf,
        #[arg(long, default_value_t = 4)]
        arity: usize,
        /// Category file holding the targets of the declared functors.
        #[arg(long)]
        target: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerates the nerve, validates the simplicial identities and fills inner horns.
    Nerve {
        path: PathBuf,
        #[arg(long, default_value_t = 3)]
        level: usize,
        /// Also list the simplices of each level.
        #[arg(long)]
        dump: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Dold-Kan: normalized chains of a standard simplex, round trips, cross systems.
    Dk {
        /// Category file, needed for --cross.
        path: Option<PathBuf>,
        /// Print the generators of normalized chains on the n-simplex.
        #[arg(long, value_name = "N")]
        zdelta: Option<usize>,
        /// Round trip random complexes through DK and N.
        #[arg(long)]
        roundtrip: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        /// Solve the cross condition for maps out of N(Z Delta^N) into Hom(--from, --to).
        #[arg(long, value_name = "N")]
        cross: Option<usize>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        #[arg(long, default_value_t = 3)]
        level: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Quasi-equivalence of a declared functor against the weak-equivalence test of its nerve map.
    Compare {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        functor: String,
        #[arg(long, default_value_t = 3)]
        arity: usize,
        #[arg(long, default_value_t = 2)]
        level: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// Exit code 2 for bad input, 3 for refused enumerations.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::CapExceeded { .. } | Error::InfiniteField => Failure(3, e.to_string()),
            _ => Failure(2, e.to_string()),
        }
    }
}

type Out = std::result::Result<Report, Failure>;

fn field_of(common: &Common) -> Result<Option<Field>, Failure> {
    common.field.as_deref().map(|f| f.parse::<Field>()).transpose().map_err(|e| Failure(2, e.to_string()))
}

fn load(path: &Path, common: &Common) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(2, format!("{}: {e}", path.display())))?;
    let file = io::parse(&text).map_err(|e| Failure(2, format!("{}: {e}", path.display())))?;
    io::load(&file, field_of(common)?).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn value(v: impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn check(path: &Path, arity: usize, target: Option<&Path>, common: &Common) -> Out {
    let loaded = load(path, common)?;
    let a = &loaded.category;
    let mut r = Report::new("check");
    r.config("arity", arity);
    r.config("field", a.field().to_string());
    r.config("input", path.display().to_string());
    let rel = a.check_relations(arity);
    let w = rel.residuals.first().map(value);
    r.check(
        "relations",
        rel.passed(),
        json!({"arity_checked": rel.arity_checked, "tuples_checked": rel.tuples_checked, "complete_above": rel.complete_above}),
        w,
    );
    if a.units().is_some() {
        let u = a.check_units()?;
        r.check("units", u.passed(), json!({"failures": u.failures.len()}), u.failures.first().map(value));
    }
    if !loaded.functors.is_empty() {
        let Some(tp) = target else {
            return Err(Failure(2, "functors are declared; pass --target with their target category".into()));
        };
        let b = load(tp, common)?.category;
        for spec in &loaded.functors {
            let f = io::functor(spec, a, &b)?;
            let fr = f.check(arity)?;
            let w = fr.residuals.first().map(value).or_else(|| fr.unit_failures.first().map(value));
            r.check(
                &format!("functor {}", spec.name),
                fr.passed(),
                json!({"arity_checked": fr.arity_checked, "residuals": fr.residuals.len(), "unit_failures": fr.unit_failures.len()}),
                w,
            );
        }
    }
    Ok(r)
}

fn nerve_cmd(path: &Path, level: usize, dump: bool, common: &Common) -> Out {
    let a: AInfCategory = load(path, common)?.category;
    let mut r = Report::new("nerve");
    r.config("level", level);
    r.config("cap", common.cap.to_string());
    r.config("field", a.field().to_string());
    r.config("input", path.display().to_string());
    let nv = nerve(&a, level, common.cap)?;
    let sizes: Vec<usize> = nv.simplices.iter().map(Vec::len).collect();
    r.lines.push(format!("simplices per level: {sizes:?}"));
    if dump {
        for (n, l) in nv.simplices.iter().enumerate() {
            for s in l {
                r.lines.push(format!("{n}: {}", s.describe(&a)));
            }
        }
    }
    let v = validate(&nv.set);
    r.check("simplicial identities", v.passed(), json!({"sizes": sizes, "pairs": v.checked_pairs}), v.violations.first().map(value));
    let q = is_quasicategory(&nv.set, level)?;
    r.check("inner horns", q.passed(), json!({"counts": q.counts}), q.unfilled.first().map(value));
    if level >= 2 && a.units().is_some() {
        let ho = compare_ho(&a, common.cap)?;
        r.check("Ho of the nerve is H0", ho.isomorphism, json!({"morphisms": ho.algebra_side.morphisms.len()}), None);
    }
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
fn dk_cmd(
    path: Option<&Path>,
    zdelta: Option<usize>,
    roundtrip: bool,
    seed: u64,
    samples: usize,
    cross: Option<(usize, Option<String>, Option<String>)>,
    level: usize,
    common: &Common,
) -> Out {
    let field = field_of(common)?.unwrap_or(Field::Prime(2));
    let mut r = Report::new("dk");
    r.config("field", field.to_string());
    if zdelta.is_none() && !roundtrip && cross.is_none() {
        return Err(Failure(2, "nothing to do: pass --zdelta, --roundtrip or --cross".into()));
    }
    if let Some(n) = zdelta {
        r.config("zdelta", n);
        let nz = normalized_chains(&z_delta(n, n + 1, field)?)?;
        let mut gens = Vec::new();
        for j in 0..=n + 1 {
            let g = nz.generators(j);
            r.lines.push(format!("degree {j}: {}", if g.is_empty() { "0".to_string() } else { g.join(", ") }));
            gens.push(g);
        }
        // N(ZΔⁿ) has one generator per face of Δⁿ
        let ok = (0..=n + 1).all(|j| gens[j].len() == binomial(n + 1, j + 1));
        r.check("normalized chains of the simplex", ok, json!({"generators": gens}), None);
    }
    if roundtrip {
        r.config("seed", seed);
        r.config("samples", samples);
        r.config("level", level);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failures = Vec::new();
        let mut dims = Vec::new();
        for i in 0..samples {
            let lo = -(level.min(3) as i32);
            let c = random_complex(field, &mut rng, lo, 2, &format!("c{i}_"));
            let rc = roundtrip_complex(&c, level)?;
            let rm = roundtrip_module(&dk(&c, level)?)?;
            dims.push((lo..=0).rev().map(|d| c.dim(d)).collect::<Vec<_>>());
            if !rc.passed() || !rm.passed() {
                failures.push(json!({"sample": i, "complex": value(&rc), "module": value(&rm)}));
            }
        }
        let w = failures.first().cloned();
        r.check("N DK and DK N round trips", failures.is_empty(), json!({"homological_dims": dims}), w);
    }
    if let Some((n, from, to)) = cross {
        let Some(p) = path else {
            return Err(Failure(2, "--cross needs a category file".into()));
        };
        let a = load(p, common)?.category;
        let obj = |name: &Option<String>, default: usize| match name {
            None => Ok(default.min(a.objects().len().saturating_sub(1))),
            Some(s) => a.object_id(s).ok_or_else(|| Failure(2, format!("unknown object `{s}`"))),
        };
        let (x, y) = (obj(&from, 0)?, obj(&to, 1)?);
        r.config("cross", n);
        r.config("hom", format!("{}->{}", a.objects()[x], a.objects()[y]));
        let (m, _) = a.hom_complex(x, y)?;
        let systems = solve_cross(n, &m, common.cap)?;
        let mut bad = Vec::new();
        for s in &systems {
            let v = verify_cross(&m, s);
            if !v.is_empty() || cross_to_chain_map(&m, s).is_err() {
                bad.push(v);
            }
        }
        let dim = chain_map_dimension(n, &m)?;
        let expected = a.field().order().map(|q| (q as u128).pow(dim as u32));
        let ok = bad.is_empty() && expected == Some(systems.len() as u128);
        r.lines.push(format!("solutions: {} (chain maps N(Z Delta^{n}) -> Hom: dimension {dim})", systems.len()));
        r.check(
            "cross systems are the chain maps",
            ok,
            json!({"solutions": systems.len(), "chain_map_dimension": dim}),
            bad.first().map(value),
        );
    }
    Ok(r)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn compare_cmd(source: &Path, target: &Path, name: &str, arity: usize, level: usize, common: &Common) -> Out {
    let loaded = load(source, common)?;
    let b = load(target, common)?.category;
    let f = io::functor_named(&loaded, name, &b)?;
    let mut r = Report::new("compare");
    r.config("functor", name);
    r.config("arity", arity);
    r.config("level", level);
    r.config("field", f.source.field().to_string());
    let c = compare(&f, arity, level, common.cap)?;
    r.check("functor equations", c.functor.passed(), json!({"residuals": c.functor.residuals.len()}), c.functor.residuals.first().map(value));
    let missing = c.quasi.essential_image.iter().find(|(_, w)| w.is_none()).map(|(y, _)| json!({"not_in_essential_image": y}));
    r.check("we1", c.quasi.we1(), json!({"fully_faithful": c.quasi.fully_faithful}), missing);
    r.check("we2", c.quasi.we2(), value(&c.quasi.we2), c.quasi.we2_witness().map(value));
    r.check(
        "nerve weak equivalence",
        c.nerve.passed(),
        value(&c.nerve),
        c.nerve.map_violations.first().map(value).or_else(|| {
            c.nerve.mapping_spaces.iter().find(|(_, ds)| ds.iter().any(|&(_, s, t, k)| s != t || s != k)).map(value)
        }),
    );
    for i in &c.implications {
        r.lines.push(format!("{:<9} {}  =>  {}", i.status(), i.premise, i.conclusion));
    }
    let violated: Vec<_> = c.implications.iter().filter(|i| i.violated()).collect();
    r.check("implication table", violated.is_empty(), value(&c.implications), violated.first().map(value));
    Ok(r)
}

fn print_text(r: &Report) {
    for l in &r.lines {
        println!("{l}");
    }
    for c in &r.checks {
        println!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
        if let Some(w) = &c.witness {
            println!("  witness: {w}");
        }
    }
}

fn run(cli: Cli) -> Result<(Report, Common), Failure> {
    Ok(match cli.command {
        Command::Check { path, arity, target, common } => (check(&path, arity, target.as_deref(), &common)?, common),
        Command::Nerve { path, level, dump, common } => (nerve_cmd(&path, level, dump, &common)?, common),
        Command::Dk { path, zdelta, roundtrip, seed, samples, cross, from, to, level, common } => {
            let cross = cross.map(|n| (n, from, to));
            (dk_cmd(path.as_deref(), zdelta, roundtrip, seed, samples, cross, level, &common)?, common)
        }
        Command::Compare { source, target, functor, arity, level, common } => {
            (compare_cmd(&source, &target, &functor, arity, level, &common)?, common)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (report, common) = match run(cli) {
        Ok(x) => x,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(code);
        }
    };
    // timing stays out of the report so reports are reproducible
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    let text = report.canonical();
    if common.json {
        print!("{text}");
    } else {
        print_text(&report);
    }
    if let Some(g) = &common.golden {
        if g.exists() {
            let expected = std::fs::read_to_string(g).unwrap_or_default();
            if expected != text {
                let line = expected.lines().zip(text.lines()).position(|(a, b)| a != b).unwrap_or(0) + 1;
                eprintln!("golden mismatch against {} at line {line}", g.display());
                return ExitCode::from(1);
            }
        } else if let Err(e) = std::fs::write(g, &text) {
            eprintln!("error: {}: {e}", g.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(if report.passed() { 0 } else { 1 })
}
