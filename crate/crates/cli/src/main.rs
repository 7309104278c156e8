use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use gmatrix_core::config::{
    cocyclic, cyclic, make_cocyclic_rank, make_cyclic_rank, make_random, CyclicParams,
};
use gmatrix_core::crossings::{crossing_count, hill_x, hill_y, type_tallies};
use gmatrix_core::format::{
    parse_configuration, parse_document, write_configuration, write_cylinder, Document,
};
use gmatrix_core::gmatrix::{g_between, Profile, References};
use gmatrix_core::karcs::{
    karc_rows, lift, random_cylinder, transition_scan, Arrangement, TransitionSide,
};
use gmatrix_core::motion::g_via_motion;
use gmatrix_core::poly::binomial;
use gmatrix_core::verify::{run_suite, verify_configuration, Overrides, Report, Suite};
use gmatrix_core::{Configuration, Error, Rational};

#[derive(Parser)]
#[command(
    name = "gmatrix",
    version,
    about = "Face counts, g-matrices and crossing numbers of vector configurations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// write the output here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// include wall time in the report
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cyclic,
    Cocyclic,
    Random,
    Cylinder,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    F,
    Fstar,
    G,
    Gstar,
    Crossings,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Bounds,
    Motion,
    Karcs,
    Appendix,
    Wendel,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Bounds => Suite::Bounds,
            SuiteArg::Motion => Suite::Motion,
            SuiteArg::Karcs => Suite::Karcs,
            SuiteArg::Appendix => Suite::ClosedForm,
            SuiteArg::Wendel => Suite::Wendel,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a configuration or cylinder document.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// coordinates of random configurations lie in [-bound, bound]
        #[arg(long, default_value_t = 6)]
        bound: i64,
    },
    /// Face counts, g-matrices and crossings of a configuration file.
    Analyze {
        input: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = vec![Target::F, Target::Fstar, Target::G, Target::Gstar, Target::Crossings])]
        targets: Vec<Target>,
    },
    /// Run verification suites, or check one configuration file.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        input: Option<PathBuf>,
        /// a single value or a range `a..b`
        #[arg(long, value_parser = parse_range)]
        n: Option<(usize, usize)>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Crossings of the spherical arc drawing of a configuration, or a table over n.
    Crossings {
        input: Option<PathBuf>,
        #[arg(long)]
        table: bool,
        #[arg(long, value_parser = parse_range, default_value = "4..12")]
        n: (usize, usize),
    },
    /// Mutation events along the straight path between two configurations.
    Motion {
        from: PathBuf,
        to: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// k-arcs of a lifted cylinder input and the transitions along its axis.
    Karcs {
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok((lo, hi))
}

/// Outcome of a command in every output format.
struct Output {
    command: String,
    digest: String,
    passed: bool,
    text: String,
    data: Value,
    csv: Option<String>,
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_configuration(path: &Path) -> anyhow::Result<(Configuration, Vec<u8>)> {
    let text = read(path)?;
    let v = parse_configuration(&text)?;
    Ok((v, text.into_bytes()))
}

fn gen(kind: Kind, n: usize, rank: usize, seed: u64, bound: i64) -> anyhow::Result<Output> {
    let document = match kind {
        Kind::Cyclic | Kind::Cocyclic if rank != 3 => bail!("cyclic and cocyclic files are rank 3"),
        Kind::Cyclic => write_configuration(&cyclic::<Rational>(n)?),
        Kind::Cocyclic => write_configuration(&cocyclic::<Rational>(n)?),
        Kind::Random => write_configuration(&make_random::<Rational>(n, rank, bound, seed)?),
        Kind::Cylinder => write_cylinder(&random_cylinder(n, seed)?),
    };
    let command = format!("gen n={n} rank={rank} seed={seed} bound={bound}");
    Ok(Output {
        digest: digest(command.as_bytes()),
        command,
        passed: true,
        data: json!({ "document": document }),
        csv: None,
        text: document,
    })
}

fn grid_json(rows: impl Iterator<Item = Vec<i64>>) -> Value {
    Value::from(rows.map(Value::from).collect::<Vec<_>>())
}

fn analyze(path: &Path, targets: &[Target]) -> anyhow::Result<Output> {
    let (v, bytes) = load_configuration(path)?;
    v.require_general_position()?;
    let (rank, n) = (v.rank(), v.n());
    let mut text = format!("rank {rank}\nn {n}\n");
    let mut data = json!({ "rank": rank, "n": n });
    let mut csv = String::from("quantity,s,t,value\n");
    let wants = |t: Target| targets.contains(&t);
    let profile =
        if wants(Target::G) || wants(Target::Gstar) || wants(Target::F) || wants(Target::Fstar) {
            Some(Profile::of(&v)?)
        } else {
            None
        };
    if let Some(p) = &profile {
        if wants(Target::F) {
            text.push('\n');
            text.push_str(&p.f.to_text());
            data["f"] = grid_json(p.f.values.iter().cloned());
            for (s, row) in p.f.values.iter().enumerate() {
                for (t, x) in row.iter().enumerate() {
                    let _ = writeln!(csv, "f,{s},{t},{x}");
                }
            }
        }
        if wants(Target::Fstar) {
            text.push('\n');
            text.push_str(&p.fstar.to_text());
            data["fstar"] = grid_json(p.fstar.values.iter().cloned());
            for (s, row) in p.fstar.values.iter().enumerate() {
                for (t, x) in row.iter().enumerate() {
                    let _ = writeln!(csv, "fstar,{s},{t},{x}");
                }
            }
        }
        if (wants(Target::G) || wants(Target::Gstar)) && n > rank {
            let refs = References::new();
            let (g, gstar) = if rank == 3 {
                refs.g_and_gstar(p)?
            } else {
                let params = CyclicParams::<Rational>::canonical(n);
                let co = Profile::of(&make_cocyclic_rank(&params, rank)?)?;
                let cy = Profile::of(&make_cyclic_rank(&params, rank)?)?;
                (g_between(&co, p)?, g_between(p, &cy)?)
            };
            for (name, m, on) in [
                ("g", &g, wants(Target::G)),
                ("gstar", &gstar, wants(Target::Gstar)),
            ] {
                if !on {
                    continue;
                }
                let _ = write!(text, "\n{name}\n{}{}", m.to_text(), m.small_text());
                data[name] = grid_json(m.values.iter().cloned());
                data[format!("{name}_small")] = grid_json(m.small().into_iter());
                for (j, row) in m.values.iter().enumerate() {
                    for (k, x) in row.iter().enumerate() {
                        let _ = writeln!(csv, "{name},{j},{k},{x}");
                    }
                }
            }
        }
    }
    if wants(Target::Crossings) && rank == 3 {
        let count = crossing_count(&v)?;
        let x = hill_x(n as u64);
        let _ = write!(text, "\ncrossings {count}\nX(n) {x}\n");
        data["crossings"] = json!(count);
        data["hill_x"] = json!(x);
        let _ = writeln!(csv, "crossings,,,{count}");
    }
    Ok(Output {
        command: format!("analyze {}", path.display()),
        digest: digest(&bytes),
        passed: true,
        text,
        data,
        csv: Some(csv),
    })
}

fn report_output(command: String, digest: String, report: &Report, timing: bool) -> Output {
    let mut report = report.clone();
    if !timing {
        for c in &mut report.checks {
            c.seconds = None;
        }
    }
    let mut text = String::new();
    let mut csv = String::from("check,status,instances,detail\n");
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let _ = write!(text, "{status} {} [{}]: {}", c.name, c.statement, c.detail);
        if let Some(s) = c.seconds {
            let _ = write!(text, " ({s:.2}s)");
        }
        text.push('\n');
        if let Some(w) = &c.witness {
            let _ = writeln!(text, "  witness: {} indices {:?}", w.note, w.indices);
            if let Some(doc) = &w.document {
                for line in doc.lines() {
                    let _ = writeln!(text, "    {line}");
                }
            }
        }
        let _ = writeln!(
            csv,
            "{},{status},{},\"{}\"",
            c.name,
            c.instances,
            c.detail.replace('"', "'")
        );
    }
    let passed = report.passed();
    let _ = writeln!(
        text,
        "{}",
        if passed {
            "all checks passed"
        } else {
            "some checks failed"
        }
    );
    Output {
        command,
        digest,
        passed,
        text,
        data: serde_json::to_value(&report).unwrap_or(Value::Null),
        csv: Some(csv),
    }
}

fn verify(
    suite: Suite,
    input: Option<&Path>,
    overrides: Overrides,
    timing: bool,
) -> anyhow::Result<Output> {
    let refs = References::new();
    match input {
        Some(path) => {
            let (v, bytes) = load_configuration(path)?;
            let report = verify_configuration(&v, &refs)?;
            Ok(report_output(
                format!("verify {suite} --input {}", path.display()),
                digest(&bytes),
                &report,
                timing,
            ))
        }
        None => {
            let report = run_suite(suite, &overrides, &refs)?;
            let command = format!(
                "verify {suite} n={:?} trials={:?} seed={:?}",
                overrides.n_range, overrides.trials, overrides.seed
            );
            Ok(report_output(
                command.clone(),
                digest(command.as_bytes()),
                &report,
                timing,
            ))
        }
    }
}

fn crossings(input: Option<&Path>, table: bool, range: (usize, usize)) -> anyhow::Result<Output> {
    if table {
        let mut csv = String::from("n,hill_x,hill_y,binomial,cocyclic,cyclic\n");
        let mut rows = Vec::new();
        let mut passed = true;
        for n in range.0.max(4)..=range.1 {
            let co = crossing_count(&cocyclic::<Rational>(n)?)?;
            let cy = crossing_count(&cyclic::<Rational>(n)?)?;
            let (x, y, b) = (hill_x(n as u64), hill_y(n as u64), binomial(n as i64, 4));
            passed &= co == x && y == b - x as i64;
            let _ = writeln!(csv, "{n},{x},{y},{b},{co},{cy}");
            rows.push(json!({ "n": n, "hill_x": x, "hill_y": y, "binomial": b, "cocyclic": co, "cyclic": cy }));
        }
        let command = format!("crossings --table n={}..{}", range.0, range.1);
        return Ok(Output {
            digest: digest(command.as_bytes()),
            command,
            passed,
            text: csv.clone(),
            data: json!({ "rows": rows }),
            csv: Some(csv),
        });
    }
    let path = input.ok_or_else(|| anyhow!("a configuration file or --table is required"))?;
    let (v, bytes) = load_configuration(path)?;
    v.require_general_position()?;
    let n = v.n();
    let tallies = type_tallies(&v)?;
    let count = crossing_count(&v)?;
    let x = hill_x(n as u64);
    let gap = count as i64 - x as i64;
    let text = format!(
        "n {n}\ntype 0 {}\ntype 1 {}\ntype 2 {}\ncrossings {count}\nX(n) {x}\ngap {gap}\n",
        tallies[0], tallies[1], tallies[2]
    );
    Ok(Output {
        command: format!("crossings {}", path.display()),
        digest: digest(&bytes),
        passed: gap >= 0,
        text,
        data: json!({ "n": n, "type_tallies": tallies, "crossings": count, "hill_x": x, "gap": gap }),
        csv: Some(format!(
            "n,type0,type1,type2,crossings,hill_x,gap\n{n},{},{},{},{count},{x},{gap}\n",
            tallies[0], tallies[1], tallies[2]
        )),
    })
}

fn motion(from: &Path, to: &Path, seed: u64) -> anyhow::Result<Output> {
    let (v, mut bytes) = load_configuration(from)?;
    let (w, more) = load_configuration(to)?;
    bytes.extend(more);
    let outcome = g_via_motion(&v, &w, seed)?;
    let n = v.n();
    let expected = g_between(&Profile::of(&v)?, &Profile::of(&w)?)?;
    let mut running = gmatrix_core::gmatrix::GMatrix::zero(3, n);
    let mut text = String::new();
    let mut csv = String::from("event,lo,hi,triple,j,k,running_small\n");
    let mut records = Vec::new();
    if outcome.correction.is_some() {
        text.push_str("end point perturbed to obtain a generic path\n");
    }
    for (i, e) in outcome.events.iter().enumerate() {
        let kind = e.kind.ok_or_else(|| anyhow!("unclassified event"))?;
        running = running.try_add(&kind.g_contribution(n))?;
        let small = running.small();
        let triple: Vec<usize> = e.triple.iter().map(|x| x + 1).collect();
        let _ = writeln!(
            text,
            "event {} t in [{}, {}] R = {:?} type ({}, {}) small g {:?}",
            i + 1,
            e.interval.lo,
            e.interval.hi,
            triple,
            kind.j,
            kind.k,
            small
        );
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},\"{:?}\"",
            i + 1,
            e.interval.lo,
            e.interval.hi,
            triple
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            kind.j,
            kind.k,
            small
        );
        records.push(json!({
            "interval": [e.interval.lo.to_string(), e.interval.hi.to_string()],
            "triple": triple,
            "type": [kind.j, kind.k],
            "running_small": small,
        }));
    }
    let passed = outcome.g == expected;
    let _ = write!(text, "\ng along the path\n{}", outcome.g.to_text());
    let _ = writeln!(
        text,
        "{}",
        if passed {
            "matches g from face counts"
        } else {
            "DIFFERS from g from face counts"
        }
    );
    Ok(Output {
        command: format!("motion {} {} seed={seed}", from.display(), to.display()),
        digest: digest(&bytes),
        passed,
        text,
        data: json!({ "events": records, "g": outcome.g.values, "matches_face_counts": passed }),
        csv: Some(csv),
    })
}

fn karcs(path: &Path, k: Option<usize>) -> anyhow::Result<Output> {
    let text_in = read(path)?;
    let input = match parse_document(&text_in)? {
        Document::Cylinder(c) => c,
        Document::Configuration(_) => bail!("expected a cylinder document"),
    };
    let pair = lift(&input)?;
    let refs = References::new();
    let arrangement = Arrangement::new(&pair.u)?;
    let keep = |row_k: usize| k.is_none_or(|k| k == row_k);
    let rows: Vec<_> = karc_rows(&arrangement, &pair, &refs)?
        .into_iter()
        .filter(|r| keep(r.k))
        .collect();
    let scan = transition_scan(&pair, &refs)?;
    let mut text = String::from("k  Lambda_k  lambda_k  g_1k  g*_1k\n");
    let mut csv = String::from("k,arcs,lambda,g1,gstar1\n");
    for r in &rows {
        let _ = writeln!(
            text,
            "{:<2} {:>8}  {:>8}  {:>4}  {:>5}",
            r.k, r.arcs, r.lambda, r.g1, r.gstar1
        );
        let _ = writeln!(csv, "{},{},{},{},{}", r.k, r.arcs, r.lambda, r.g1, r.gstar1);
    }
    let mut ledger = Vec::new();
    text.push_str("\ntransitions\n");
    for t in &scan.transitions {
        let kind = t.kind.map(|(j, side)| {
            format!(
                "({j},{}){}",
                t.level,
                if side == TransitionSide::Plus {
                    "+"
                } else {
                    "-"
                }
            )
        });
        let triple: Vec<usize> = t.triple.iter().map(|x| x + 1).collect();
        let _ = writeln!(
            text,
            "a = {} vertex {:?} level {} {} delta lambda {:?} {}",
            t.at,
            triple,
            t.level,
            kind.as_deref().unwrap_or("high"),
            t.delta_lambda,
            if t.ok { "ok" } else { "FAIL" }
        );
        ledger.push(json!({
            "axis": t.at.to_string(),
            "triple": triple,
            "level": t.level,
            "type": kind,
            "delta_lambda": t.delta_lambda,
            "delta_g0": t.delta_g0,
            "delta_g1": t.delta_g1,
            "ok": t.ok,
        }));
    }
    let _ = writeln!(
        text,
        "\nlambda_k at +infinity {:?}, at -infinity {:?}",
        scan.lambda_plus_inf, scan.lambda_minus_inf
    );
    let passed = scan.passed() && rows.iter().all(|r| r.prop_ok && r.arcs == r.expected_arcs);
    Ok(Output {
        command: format!("karcs {}", path.display()),
        digest: digest(text_in.as_bytes()),
        passed,
        text,
        data: json!({
            "rows": rows,
            "transitions": ledger,
            "lambda_plus_infinity": scan.lambda_plus_inf,
            "lambda_minus_infinity": scan.lambda_minus_inf,
        }),
        csv: Some(csv),
    })
}

fn render(out: &Output, format: Format, seconds: Option<f64>) -> String {
    match format {
        Format::Text => {
            let mut s = format!("command: {}\ninput-digest: {}\n", out.command, out.digest);
            if let Some(t) = seconds {
                let _ = writeln!(s, "wall-time: {t:.3}s");
            }
            s.push('\n');
            s.push_str(&out.text);
            s
        }
        Format::Structured => {
            let mut doc = json!({
                "command": out.command,
                "input_digest": out.digest,
                "passed": out.passed,
                "result": out.data,
            });
            if let Some(t) = seconds {
                doc["wall_time_seconds"] = json!(t);
            }
            serde_json::to_string_pretty(&doc).unwrap_or_default() + "\n"
        }
        Format::Csv => out.csv.clone().unwrap_or_else(|| out.text.clone()),
    }
}

/// `gen` writes the bare document so that the output can be read back.
fn run(cli: &Cli) -> anyhow::Result<(String, bool)> {
    let start = Instant::now();
    let output = match &cli.command {
        Command::Gen {
            kind,
            n,
            rank,
            seed,
            bound,
        } => {
            let out = gen(*kind, *n, *rank, *seed, *bound)?;
            let body = if cli.format == Format::Structured {
                render(&out, cli.format, None)
            } else {
                out.text
            };
            return Ok((body, true));
        }
        Command::Analyze { input, targets } => analyze(input, targets)?,
        Command::Verify {
            suite,
            input,
            n,
            trials,
            seed,
        } => verify(
            (*suite).into(),
            input.as_deref(),
            Overrides {
                n_range: *n,
                trials: *trials,
                seed: *seed,
            },
            cli.timing,
        )?,
        Command::Crossings { input, table, n } => crossings(input.as_deref(), *table, *n)?,
        Command::Motion { from, to, seed } => motion(from, to, *seed)?,
        Command::Karcs { input, k } => karcs(input, *k)?,
    };
    let seconds = cli.timing.then(|| start.elapsed().as_secs_f64());
    Ok((render(&output, cli.format, seconds), output.passed))
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::PathDegenerate(_)
            | Error::GenerationFailure { .. }
            | Error::NotGeneralPosition { .. },
        ) => 3,
        Some(Error::Parse { .. } | Error::InvalidParameter(_) | Error::DimensionMismatch(_)) => 2,
        Some(_) => 1,
        None => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((body, passed)) => {
            let written = match &cli.out {
                Some(path) => {
                    fs::write(path, &body).with_context(|| format!("writing {}", path.display()))
                }
                None => {
                    print!("{body}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
