use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use rdlab::estimator::{
    best_attack, minrank_attacks, minrank_preset, scheme_preset, Attack, AttackParams, Conventions, CostEstimate, SCHEME_PRESETS,
};
use rdlab::galois::Elem;
use rdlab::hybrid::{hybrid_driver_minrank, hybrid_driver_rd, hybrid_probabilistic_minrank, hybrid_probabilistic_rd, HybridReport};
use rdlab::instances::{gen_minrank, gen_rd, gen_rd_unique, MinRankInstance, RdInstance};
use rdlab::labkit::format::{Instance, InstanceFile};
use rdlab::labkit::{verify, LabParams, Property};
use rdlab::solver::{decode_rd, solve_minrank_exhaustive, solve_minrank_sm, DecodeConfig, Modeling, Transcript};

#[derive(Parser)]
#[command(name = "rdlab", version, about = "Algebraic attacks on Rank Decoding and MinRank instances")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value_t = Report::Text)]
    report: Report,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Report {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random planted instance.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Code dimension (rd).
        #[arg(long, required_if_eq("kind", "rd"))]
        k: Option<usize>,
        /// Number of matrices besides M_0 (minrank).
        #[arg(long = "K", required_if_eq("kind", "minrank"))]
        big_k: Option<usize>,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Resample until the planted error is the only decoding (rd, small sizes only).
        #[arg(long)]
        unique: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Solve an instance file.
    Attack {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModelingArg::Auto)]
        modeling: ModelingArg,
        /// Guessed positions for the hybrid drivers; 0 solves directly.
        #[arg(long, default_value_t = 0)]
        a: usize,
        #[arg(long, default_value_t = 4)]
        b_max: usize,
        /// Random guesses instead of enumerating them.
        #[arg(long)]
        probabilistic: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Bit-complexity estimates.
    Estimate(EstimateArgs),
    /// Run a labkit property check.
    Verify {
        /// Property name, or `all` for the default suite.
        #[arg(long)]
        property: String,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        seed: u64,
        /// q,m,n,k,r (k is K for hybrid-minrank).
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<usize>>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        unique: Option<bool>,
        #[arg(long)]
        modeling: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Rd,
    Minrank,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelingArg {
    Auto,
    Mm,
    Smplus,
}

#[derive(Args)]
struct EstimateArgs {
    /// Scheme or MinRank parameter set; `list` prints the names.
    #[arg(long, conflicts_with_all = ["q", "m", "n", "k", "r"])]
    preset: Option<String>,
    #[arg(long, requires_all = ["m", "n", "k", "r"])]
    q: Option<u64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Code dimension, or K with --minrank.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Treat --q … --r as a MinRank instance.
    #[arg(long)]
    minrank: bool,
    #[arg(long, default_value_t = 2.0)]
    omega: f64,
    /// Comma-separated subset of mm, smplus, comb (RD only).
    #[arg(long, value_delimiter = ',')]
    attacks: Option<Vec<String>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match cli.command {
        Command::Gen { kind, q, m, n, k, big_k, r, seed, unique, output } => gen(kind, q, m, n, k.or(big_k).unwrap_or(0), r, seed, unique, &output),
        Command::Attack { file, modeling, a, b_max, probabilistic, seed } => attack(&file, modeling, a, b_max, probabilistic, seed),
        Command::Estimate(args) => estimate(&args),
        Command::Verify { property, trials, seed, params, b, a, unique, modeling } => run_verify(&property, trials, seed, params, b, a, unique, modeling),
    };
    let elapsed = start.elapsed().as_secs_f64();
    match outcome {
        Ok(out) => {
            match cli.report {
                Report::Text => {
                    print!("{}", out.text);
                    println!("elapsed: {elapsed:.3} s");
                }
                Report::Machine => {
                    let doc = json!({ "ok": out.ok, "elapsed_seconds": elapsed, "result": out.data });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            match cli.report {
                Report::Text => eprintln!("error: {msg}"),
                Report::Machine => println!("{}", json!({ "ok": false, "elapsed_seconds": elapsed, "error": msg })),
            }
            ExitCode::from(2)
        }
    }
}

/// What a subcommand produced, in both report styles.
struct Output {
    ok: bool,
    text: String,
    data: Value,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report data serializes")
}

fn codes(v: &[Elem]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

#[allow(clippy::too_many_arguments)]
fn gen(kind: Kind, q: u64, m: usize, n: usize, k: usize, r: usize, seed: u64, unique: bool, out: &PathBuf) -> Result<Output, String> {
    let inst = match kind {
        Kind::Rd if unique => Instance::Rd(gen_rd_unique(q, m, n, k, r, seed).map_err(|e| e.to_string())?),
        Kind::Rd => Instance::Rd(gen_rd(q, m, n, k, r, seed).map_err(|e| e.to_string())?),
        Kind::Minrank => Instance::MinRank(gen_minrank(q, m, n, k, r, seed).map_err(|e| e.to_string())?),
    };
    let file = InstanceFile::from_instance(&inst);
    fs::write(out, file.to_json() + "\n").map_err(|e| format!("{}: {e}", out.display()))?;
    Ok(Output {
        ok: true,
        text: format!("wrote {}\n", out.display()),
        data: json!({ "path": out.display().to_string(), "kind": file.kind, "q": q, "m": m, "n": n, "k_or_K": k, "r": r, "seed": seed }),
    })
}

#[derive(Serialize)]
struct AttackResult {
    kind: &'static str,
    solution: Vec<Elem>,
    codeword: Option<Vec<Elem>>,
    message: Option<Vec<Elem>>,
    support: Option<Vec<Vec<Elem>>>,
    verified: bool,
    matches_witness: Option<bool>,
    transcript: Option<Transcript>,
    guesses: Option<usize>,
    rerandomizations: Option<usize>,
}

fn attack(path: &PathBuf, modeling: ModelingArg, a: usize, b_max: usize, probabilistic: bool, seed: u64) -> Result<Output, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let inst = InstanceFile::parse(&text).and_then(|f| f.into_instance()).map_err(|e| e.to_string())?;
    let cfg = DecodeConfig {
        modeling: match modeling {
            ModelingArg::Auto => Modeling::Auto,
            ModelingArg::Mm => Modeling::Mm,
            ModelingArg::Smplus => Modeling::Smplus,
        },
        b_max,
        ..DecodeConfig::default()
    };
    let res = match &inst {
        Instance::Rd(rd) => attack_rd(rd, &cfg, a, probabilistic, seed)?,
        Instance::MinRank(mr) => attack_minrank(mr, a, probabilistic, seed)?,
    };
    let mut out = String::new();
    out += &format!("{} instance {}: {}\n", res.kind, path.display(), if res.verified { "solved" } else { "FAILED VERIFICATION" });
    out += &format!("solution: {}\n", codes(&res.solution));
    if let Some(x) = &res.message {
        out += &format!("x: {}\n", codes(x));
    }
    if let Some(rows) = &res.support {
        out += "support basis:\n";
        for row in rows {
            out += &format!("  {}\n", codes(row));
        }
    }
    if let Some(t) = &res.transcript {
        out += &format!("modeling: {}  weight: {}  b: {}  attempts: {}\n", t.modeling, t.weight, t.b.map_or("-".into(), |b| b.to_string()), t.attempts);
        for note in &t.notes {
            out += &format!("  {note}\n");
        }
    }
    if let Some(g) = res.guesses {
        out += &format!("guesses: {g}  rerandomizations: {}\n", res.rerandomizations.unwrap_or(0));
    }
    if let Some(m) = res.matches_witness {
        out += &format!("matches planted witness: {m}\n");
    }
    Ok(Output { ok: res.verified, text: out, data: to_value(&res) })
}

fn attack_rd(rd: &RdInstance, cfg: &DecodeConfig, a: usize, probabilistic: bool, seed: u64) -> Result<AttackResult, String> {
    let planted = rd.witness.as_ref().map(|w| w.e.clone());
    let (e, transcript, hybrid) = if a == 0 {
        let sol = decode_rd(rd, cfg).map_err(|e| e.to_string())?;
        (sol.e, Some(sol.transcript), None)
    } else {
        let inner = |small: &RdInstance| decode_rd(small, cfg).ok().map(|s| s.e);
        let rep = run_hybrid(rd.ext.q() as u64, a, rd.r, |cap| {
            if probabilistic {
                hybrid_probabilistic_rd(rd, a, cap, seed, inner)
            } else {
                hybrid_driver_rd(rd, a, 8, seed, inner)
            }
        })?;
        (rep.solution.clone(), None, Some(rep))
    };
    let f = rd.ext.field();
    let codeword: Vec<Elem> = rd.y.iter().zip(&e).map(|(&y, &v)| f.sub(y, v)).collect();
    let message = rd.g.solve_left(&codeword);
    let support = rdlab::matlin::mat_of(&rd.ext, &e).echelonize();
    let rows = (0..support.rank).map(|i| support.rref.row(i).to_vec()).collect();
    Ok(AttackResult {
        kind: "rd",
        verified: rd.is_solution(&e, rd.r),
        matches_witness: planted.map(|p| p == e),
        solution: e,
        codeword: Some(codeword),
        message,
        support: Some(rows),
        transcript,
        guesses: hybrid.as_ref().map(|h| h.guesses),
        rerandomizations: hybrid.as_ref().map(|h| h.rerandomizations),
    })
}

fn minrank_inner(inst: &MinRankInstance) -> Option<Vec<Elem>> {
    solve_minrank_sm(inst, rdlab::modelings::DEFAULT_ENTRY_BUDGET).or_else(|| solve_minrank_exhaustive(inst))
}

fn attack_minrank(inst: &MinRankInstance, a: usize, probabilistic: bool, seed: u64) -> Result<AttackResult, String> {
    let (x, hybrid) = if a == 0 {
        (minrank_inner(inst).ok_or("no solution found")?, None)
    } else {
        let rep = run_hybrid(inst.field.order() as u64, a, inst.r, |cap| {
            if probabilistic {
                hybrid_probabilistic_minrank(inst, a, cap, seed, minrank_inner)
            } else {
                hybrid_driver_minrank(inst, a, 8, seed, minrank_inner)
            }
        })?;
        (rep.solution.clone(), Some(rep))
    };
    Ok(AttackResult {
        kind: "minrank",
        verified: inst.is_solution(&x),
        matches_witness: inst.witness.as_ref().map(|w| *w == x),
        solution: x,
        codeword: None,
        message: None,
        support: None,
        transcript: None,
        guesses: hybrid.as_ref().map(|h| h.guesses),
        rerandomizations: hybrid.as_ref().map(|h| h.rerandomizations),
    })
}

/// Calls `drive` with a trial cap of 64·q^{ar} and flattens the error.
fn run_hybrid<F>(q: u64, a: usize, r: usize, drive: F) -> Result<HybridReport, String>
where
    F: FnOnce(usize) -> Result<HybridReport, rdlab::hybrid::HybridError>,
{
    let space = q.checked_pow((a * r) as u32).ok_or("guess space too large")? as usize;
    drive(rdlab::labkit::checks::probabilistic_cap(space)).map_err(|e| e.to_string())
}

fn estimate(args: &EstimateArgs) -> Result<Output, String> {
    let conv = Conventions { omega: args.omega, ..Conventions::default() };
    let attacks = match &args.attacks {
        None => Attack::ALL.to_vec(),
        Some(list) => list
            .iter()
            .map(|s| match s.as_str() {
                "mm" => Ok(Attack::Mm),
                "smplus" => Ok(Attack::Smplus),
                "comb" => Ok(Attack::Comb),
                other => Err(format!("unknown attack {other:?} (mm, smplus, comb)")),
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    if args.preset.as_deref() == Some("list") {
        let mut names: Vec<&str> = SCHEME_PRESETS.iter().map(|p| p.name).collect();
        names.extend(rdlab::estimator::MINRANK_PRESETS.iter().map(|(n, _)| *n));
        return Ok(Output { ok: true, text: names.join("\n") + "\n", data: json!(names) });
    }
    let mut rows: Vec<(CostEstimate, AttackParams, Option<bool>)> = Vec::new();
    let title = if let Some(name) = &args.preset {
        if let Some(p) = scheme_preset(name) {
            rows.extend(best_attack(&p, &attacks, &conv).into_iter().map(|row| (row.estimate, row.params, Some(row.key_attack))));
        } else if let Some(p) = minrank_preset(name) {
            rows.extend(minrank_attacks(&p, &conv).into_iter().map(|e| (e, p, None)));
        } else {
            return Err(format!("unknown preset {name:?}; try --preset list"));
        }
        name.clone()
    } else {
        let (Some(q), Some(m), Some(n), Some(k), Some(r)) = (args.q, args.m, args.n, args.k, args.r) else {
            return Err("give --preset or all of --q --m --n --k --r".into());
        };
        if args.minrank {
            let p = AttackParams::minrank(q, m, n, k, r);
            rows.extend(minrank_attacks(&p, &conv).into_iter().map(|e| (e, p, None)));
        } else {
            let p = AttackParams::rd(q, m, n, k, r);
            rows.extend(attacks.iter().map(|att| (att.estimate(&p, &conv), p, None)));
        }
        format!("(q,m,n,k,r) = ({q},{m},{n},{k},{r})")
    };
    let mut text = format!("{title}  omega={}\n", conv.omega);
    text += &format!("{:<14} {:>6} {:>9} {:>4} {:>4} {:>4}  instance\n", "attack", "bits", "exact", "a", "b", "p");
    let mut data = Vec::new();
    for (e, p, key) in &rows {
        let bits = e.reported().map_or("-".into(), |b| b.to_string());
        let instance = format!("({},{},{},{},{})", p.q, p.m, p.n, p.k, p.r) + if *key == Some(true) { " key" } else { "" };
        text += &format!(
            "{:<14} {:>6} {:>9.2} {:>4} {:>4} {:>4}  {instance}\n",
            e.attack,
            bits,
            e.bits,
            e.a,
            e.b.map_or("-".into(), |b| b.to_string()),
            e.p
        );
        data.push(json!({ "estimate": e, "reported_bits": e.reported(), "params": p, "key_attack": key }));
    }
    Ok(Output { ok: true, text, data: json!({ "title": title, "conventions": conv, "rows": data }) })
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    property: &str,
    trials: Option<usize>,
    seed: u64,
    params: Option<Vec<usize>>,
    b: Option<usize>,
    a: Option<usize>,
    unique: Option<bool>,
    modeling: Option<String>,
) -> Result<Output, String> {
    let props: Vec<Property> = if property == "all" {
        Property::ALL.to_vec()
    } else {
        vec![property.parse().map_err(|e: rdlab::labkit::LabError| e.to_string())?]
    };
    let (mut ok, mut text, mut data) = (true, String::new(), Vec::new());
    for prop in props {
        let (mut p, default_trials) = prop.defaults();
        if let Some(v) = &params {
            if v.len() != 5 {
                return Err("--params takes five values q,m,n,k,r".into());
            }
            p = LabParams { q: v[0] as u64, m: v[1], n: v[2], k: v[3], r: v[4], ..p };
        }
        p.b = b.unwrap_or(p.b);
        p.a = a.unwrap_or(p.a);
        p.unique = unique.unwrap_or(p.unique);
        if let Some(name) = &modeling {
            p.modeling = name.clone();
        }
        let rep = verify(prop, &p, trials.unwrap_or(default_trials), seed).map_err(|e| e.to_string())?;
        ok &= rep.verdict;
        text += &rep.to_string();
        data.push(to_value(&rep));
    }
    Ok(Output { ok, text, data: Value::Array(data) })
}
