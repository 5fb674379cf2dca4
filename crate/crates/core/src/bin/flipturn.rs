use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use flipturn::engine::{default_max_steps, run_sequence, FlipturnState, NaiveState, Trace, TreeState};
use flipturn::error::{Error, Result};
use flipturn::generators::{self, provenance};
use flipturn::polygon::{Polygon, PolygonFile, Regime};
use flipturn::strategies::{search_short_sequence, ArbitraryPolicy, DiagonalFirst, GoodBad, Policy};
use flipturn::{potentials, predictor, svg};

#[derive(Parser)]
#[command(name = "flipturn", version, about = "Convexify polygons by flipturns")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Arbitrary,
    DiagonalFirst,
    GoodBad,
    SearchShort,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Naive,
    Tree,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Replay,
    Potentials,
    Strips,
    Position,
    Brackets,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Comb,
    Fivesixths,
    Delta,
    Diff,
    Random,
    Reduction,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run flipturns until the polygon is convex and write the trace.
    Convexify {
        input: PathBuf,
        #[arg(long, default_value = "standard")]
        regime: Regime,
        #[arg(long, value_enum, default_value = "diagonal-first")]
        policy: PolicyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "naive")]
        engine: EngineArg,
        #[arg(long)]
        max_steps: Option<usize>,
        /// Randomized restarts for the search-short policy.
        #[arg(long, default_value_t = 32)]
        restarts: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for per-step SVG frames.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check a trace (or a polygon, convexified diagonal-first) step by step.
    Verify {
        input: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
        checks: Vec<Check>,
    },
    /// Print the final convex polygon without simulating.
    Predict { input: PathBuf },
    /// Emit a polygon from one of the built-in families.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        notch: bool,
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random orthogonal polygon with no axis-parallel lids.
        #[arg(long)]
        generic: bool,
        /// Random star-shaped polygon of this radius instead of an orthogonal one.
        #[arg(long)]
        radius: Option<i64>,
        #[arg(long, value_delimiter = ',')]
        set: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        target: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time naive and tree engines on random orthogonal polygons; CSV to stdout.
    Bench {
        #[arg(long, value_enum, default_value = "both")]
        engine: EngineArg,
        #[arg(long, value_delimiter = ',', default_value = "64,256,1024,4096")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        seeds: u64,
        #[arg(long, default_value = "modified")]
        regime: Regime,
    },
    /// Build the Subset-Sum polygon and, if small enough, search it exhaustively.
    Reduce {
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<u64>,
        #[arg(long)]
        target: u64,
        #[arg(long, default_value_t = 2_000_000)]
        node_limit: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, v: &impl serde::Serialize) -> Result<()> {
    let s = serde_json::to_string_pretty(v)?;
    match out {
        Some(p) => std::fs::write(p, s + "\n")?,
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{s}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                r => r?,
            }
        }
    }
    Ok(())
}

fn read_json(path: &Path) -> Result<Value> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

fn make_policy(policy: PolicyArg, seed: u64) -> Box<dyn Policy> {
    match policy {
        PolicyArg::Arbitrary => Box::new(ArbitraryPolicy::new(seed)),
        PolicyArg::DiagonalFirst | PolicyArg::SearchShort => Box::new(DiagonalFirst),
        PolicyArg::GoodBad => Box::new(GoodBad::new()),
    }
}

fn new_state(p: &Polygon, engine: EngineArg) -> Box<dyn FlipturnState> {
    match engine {
        EngineArg::Tree => Box::new(TreeState::new(p)),
        _ => Box::new(NaiveState::new(p.clone())),
    }
}

#[allow(clippy::too_many_arguments)]
fn convexify(
    input: &Path,
    regime: Regime,
    policy: PolicyArg,
    seed: u64,
    engine: EngineArg,
    max_steps: Option<usize>,
    restarts: u64,
    out: Option<&Path>,
    svg_dir: Option<&Path>,
) -> Result<bool> {
    let p = Polygon::load(input)?;
    let max_steps = max_steps.unwrap_or_else(|| default_max_steps(&p));
    let trace = match policy {
        PolicyArg::SearchShort => search_short_sequence(&p, regime, restarts, seed)?,
        _ => run_sequence(new_state(&p, engine).as_mut(), make_policy(policy, seed).as_mut(), regime, max_steps)?,
    };
    emit(out, &trace)?;
    if let Some(dir) = svg_dir {
        let k = svg::write_frames(&trace, dir)?;
        eprintln!("wrote {k} frames to {}", dir.display());
    }
    Ok(trace.convex)
}

fn result(check: &str, step: Option<usize>, detail: std::result::Result<(), String>) -> Value {
    let mut v = json!({ "check": check, "ok": detail.is_ok() });
    if let Some(i) = step {
        v["step"] = json!(i);
    }
    if let Err(d) = detail {
        v["detail"] = json!(d);
    }
    v
}

fn verify(input: &Path, checks: &[Check]) -> Result<bool> {
    let v = read_json(input)?;
    let trace: Trace = if v.get("steps").is_some() {
        serde_json::from_value(v)?
    } else {
        let p = serde_json::from_value::<PolygonFile>(v)?.polygon()?;
        run_sequence(&mut NaiveState::new(p.clone()), &mut DiagonalFirst, Regime::Standard, default_max_steps(&p))?
    };
    let on = |c: Check| checks.contains(&Check::All) || checks.contains(&c);
    let mut results = Vec::new();
    let mut cur = trace.initial.clone();
    for s in &trace.steps {
        let i = s.index;
        let (next, rec) = match flipturn::engine::apply_flipturn(&cur, &s.record.pocket) {
            Ok(x) => x,
            Err(e) => {
                results.push(result("replay", Some(i), Err(e.to_string())));
                break;
            }
        };
        if on(Check::Replay) {
            let d = if rec == s.record { Ok(()) } else { Err("recorded step differs from its replay".into()) };
            results.push(result("replay", Some(i), d));
        }
        if on(Check::Potentials) {
            let d = potentials::delta_report(&cur, &next, &s.record).violations;
            results.push(result("potentials", Some(i), if d.is_empty() { Ok(()) } else { Err(d.join("; ")) }));
        }
        if on(Check::Brackets) {
            let ok = s.record.brackets_after == potentials::brackets(&next)
                && s.record.brackets_before == potentials::brackets(&cur);
            results.push(result("brackets", Some(i), if ok { Ok(()) } else { Err("bracket counts do not match".into()) }));
        }
        if on(Check::Strips) {
            let ok = predictor::strip_invariant_check(&cur, &s.record.pocket, &next);
            results.push(result("strips", Some(i), if ok { Ok(()) } else { Err("u_i + x_i changed".into()) }));
        }
        cur = next;
    }
    if on(Check::Replay) && cur != trace.final_polygon {
        results.push(result("replay", None, Err("final polygon differs from the replay".into())));
    }
    if on(Check::Position) && trace.convex {
        let want = predictor::final_position(&trace.initial)?;
        let d = if want == cur { Ok(()) } else { Err(format!("predicted {want:?}, reached {cur:?}")) };
        results.push(result("position", None, d));
    }
    let ok = results.iter().all(|r| r["ok"] == json!(true));
    emit(None, &json!({ "ok": ok, "steps": trace.steps.len(), "results": results }))?;
    Ok(ok)
}

fn predict(input: &Path) -> Result<()> {
    let p = Polygon::load(input)?;
    let q = predictor::final_position(&p)?;
    let meta = json!({ "up_region_height": predictor::up_region_height(&p)?.to_string() });
    emit(None, &PolygonFile::with_meta(&q, meta))
}

#[allow(clippy::too_many_arguments)]
fn generate(
    family: Family,
    k: usize,
    notch: bool,
    n: usize,
    seed: u64,
    generic: bool,
    radius: Option<i64>,
    set: &[u64],
    target: u64,
    out: Option<&Path>,
) -> Result<()> {
    let (p, meta) = match family {
        Family::Comb => (generators::comb(k, notch)?, provenance("comb", json!({ "k": k, "notch": notch }))),
        Family::Fivesixths => (generators::family_5sixths(n)?, provenance("fivesixths", json!({ "n": n }))),
        Family::Delta => (generators::family_delta(k)?, provenance("delta", json!({ "k": k }))),
        Family::Diff => (generators::order_matters()?, provenance("diff", json!({}))),
        Family::Random => match radius {
            Some(r) => (generators::random_general(n, seed, r)?, provenance("random_general", json!({ "n": n, "seed": seed, "radius": r }))),
            None => (
                generators::random_orthogonal(n, seed, generic)?,
                provenance("random_orthogonal", json!({ "n": n, "seed": seed, "generic": generic })),
            ),
        },
        Family::Reduction => (
            generators::subset_sum_reduction(set, target)?,
            provenance("reduction", json!({ "set": set, "target": target })),
        ),
    };
    emit(out, &PolygonFile::with_meta(&p, meta))
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.total_cmp(b));
    v[v.len() / 2]
}

fn bench(engine: EngineArg, sizes: &[usize], seeds: u64, regime: Regime) -> Result<()> {
    println!("engine,n,seeds,median_ms,mean_steps,structural_per_flip");
    let engines: Vec<EngineArg> = match engine {
        EngineArg::Both => vec![EngineArg::Naive, EngineArg::Tree],
        e => vec![e],
    };
    for &n in sizes {
        let polys: Vec<Polygon> = (0..seeds).map(|s| generators::random_orthogonal(n, s, false)).collect::<Result<_>>()?;
        for &e in &engines {
            let mut times = Vec::new();
            let (mut steps, mut ops) = (0usize, 0u64);
            for p in &polys {
                let t0 = Instant::now();
                let (len, structural) = match e {
                    EngineArg::Tree => {
                        let mut st = TreeState::new(p);
                        let t = run_sequence(&mut st, &mut DiagonalFirst, regime, default_max_steps(p))?;
                        (t.len(), st.stats().structural())
                    }
                    _ => (run_sequence(&mut NaiveState::new(p.clone()), &mut DiagonalFirst, regime, default_max_steps(p))?.len(), 0),
                };
                times.push(t0.elapsed().as_secs_f64() * 1e3);
                steps += len;
                ops += structural;
            }
            let name = if e == EngineArg::Tree { "tree" } else { "naive" };
            let per_flip = if steps == 0 { 0.0 } else { ops as f64 / steps as f64 };
            println!("{name},{n},{seeds},{:.3},{:.1},{:.1}", median(times), steps as f64 / seeds as f64, per_flip);
        }
    }
    Ok(())
}

fn reduce(set: &[u64], target: u64, node_limit: usize, out: Option<&Path>) -> Result<()> {
    let p = generators::subset_sum_reduction(set, target)?;
    let mut report = json!({
        "set": set,
        "target": target,
        "n": p.n(),
        "subset_sum": generators::subset_sum(set, target),
        "polygon": p,
    });
    match flipturn::engine::enumerate_sequences(&p, Regime::Standard, default_max_steps(&p), node_limit) {
        Ok(e) => {
            report["orthogonal_reachable"] = json!(e.orthogonal_reachable);
            report["max_len"] = json!(e.max_len);
            report["min_len"] = json!(e.min_len);
            report["states"] = json!(e.states);
        }
        Err(Error::SearchBudget(b)) => report["search"] = json!(format!("gave up after {b} states")),
        Err(e) => return Err(e),
    }
    emit(out, &report)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Convexify { input, regime, policy, seed, engine, max_steps, restarts, out, svg } => {
            convexify(&input, regime, policy, seed, engine, max_steps, restarts, out.as_deref(), svg.as_deref())
        }
        Cmd::Verify { input, checks } => verify(&input, &checks),
        Cmd::Predict { input } => predict(&input).map(|_| true),
        Cmd::Generate { family, k, notch, n, seed, generic, radius, set, target, out } => {
            generate(family, k, notch, n, seed, generic, radius, &set, target, out.as_deref()).map(|_| true)
        }
        Cmd::Bench { engine, sizes, seeds, regime } => bench(engine, &sizes, seeds, regime).map(|_| true),
        Cmd::Reduce { set, target, node_limit, out } => reduce(&set, target, node_limit, out.as_deref()).map(|_| true),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 3 })
        }
    }
}
