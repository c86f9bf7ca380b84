//! `annuli`: certify embeddings of the punctured plane and verify the catalog.
//!
//! Exit codes: 0 embedding (or all checks pass), 3 non-embedding (or a
//! failed check), 2 excluded or invalid parameters, 1 error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use annuli::file::{emit_curve_file, parse_curve_file};
use annuli::report::{analyze, verify_entry, AnalysisReport, VerifyRecord};
use annuli_core::catalog::{self, param_names, SeriesId};
use annuli_core::certify::delta_at_point;
use annuli_core::curve::ParametricCurve;
use annuli_core::local::TruncPolicy;
use annuli_core::{KPoly, Scalar};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "annuli", version, about = "Exact certifier for embedded annuli")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze a curve file.
    Analyze {
        /// Curve file.
        file: PathBuf,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long)]
        json: Option<String>,
    },
    /// Catalog operations.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Debugging oracles.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List families and their constraints.
    List,
    /// Write the curve file of one entry.
    Gen {
        /// Family letter.
        #[arg(long)]
        series: char,
        #[command(flatten)]
        params: Params,
        /// Output path (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify entries of the grid.
    Verify {
        /// Restrict to one family.
        #[arg(long)]
        series: Option<char>,
        #[command(flatten)]
        params: Params,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Print JSON records.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Semigroup delta at the roots of a factor.
    Delta {
        /// Curve file.
        file: PathBuf,
        /// A rational `a` (the factor `t - a`) or monic coefficients
        /// ascending, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Series truncation.
        #[arg(long, default_value_t = 60)]
        bound: usize,
    },
}

/// Parameter values or inclusive ranges `a..b`.
#[derive(Args)]
struct Params {
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
}

/// Failure with its exit code.
struct Fail(u8, String);

impl Params {
    fn get(&self, name: &str) -> Option<&str> {
        match name {
            "m" => self.m.as_deref(),
            "n" => self.n.as_deref(),
            "k" => self.k.as_deref(),
            "l" => self.l.as_deref(),
            "p" => self.p.as_deref(),
            _ => None,
        }
    }

    fn given(&self) -> Vec<&'static str> {
        ["m", "n", "k", "l", "p"].into_iter().filter(|n| self.get(n).is_some()).collect()
    }

    fn range(&self, name: &str) -> Result<Option<(i64, i64)>, Fail> {
        let Some(s) = self.get(name) else { return Ok(None) };
        let bad = || Fail(2, format!("invalid value {:?} for --{}", s, name));
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (a.trim(), b.trim_start_matches('=').trim()),
            None => (s.trim(), s.trim()),
        };
        let a: i64 = a.parse().map_err(|_| bad())?;
        let b: i64 = b.parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        Ok(Some((a, b)))
    }
}

fn trunc_multiplier() -> Result<i64, Fail> {
    match std::env::var("ANNULI_TRUNC_CAP") {
        Ok(v) => match v.trim().parse::<i64>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Fail(1, format!("ANNULI_TRUNC_CAP must be a positive integer, got {:?}", v))),
        },
        Err(_) => Ok(TruncPolicy::DEFAULT_MULTIPLIER),
    }
}

fn read_curve(path: &Path) -> Result<ParametricCurve, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| Fail(1, format!("{}: {}", path.display(), e)))?;
    parse_curve_file(&text).map_err(|e| Fail(1, format!("{}: {}", path.display(), e)))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn write_out(target: &str, body: &str) -> Result<(), Fail> {
    if target == "-" {
        print!("{}", body);
        Ok(())
    } else {
        std::fs::write(target, body).map_err(|e| Fail(1, format!("{}: {}", target, e)))
    }
}

fn summary(r: &AnalysisReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("curve: x = {}, y = {} (d = {})\n", r.curve.x, r.curve.y, r.curve.d));
    if let Some(p) = &r.profile {
        out.push_str(&format!("profile: p={} q={} r={} s={}\n", p.p, p.q, p.r, p.s));
    }
    if let Some(c) = &r.classification {
        out.push_str(&format!(
            "type: {} admissible [{}] handsome={} moves={}\n",
            c.tag,
            c.admissible.join(","),
            c.handsome,
            c.moves.len()
        ));
    } else if let Some(e) = &r.classification_error {
        out.push_str(&format!("type: none ({})\n", e));
    }
    if let Some(s) = r.sigma {
        out.push_str(&format!("sigma: {}\n", s));
    }
    for p in &r.singular_locus {
        out.push_str(&format!(
            "singular: {} at roots of {} (x{}) mu={} pairs={:?}\n",
            p.label, p.factor, p.orbit_degree, p.mu, p.pairs
        ));
    }
    if let Some(l) = &r.ledger {
        out.push_str(&format!(
            "ledger: {} ({}) euler={}\n",
            l.summary,
            if l.balanced { "balanced" } else { "unbalanced" },
            l.euler_sum
        ));
    }
    if let Some(g) = &r.regularity {
        out.push_str(&format!("regularity: {} <= {} margin {}\n", g.lhs, g.sigma, g.margin));
    }
    let failed: Vec<&str> = r.audits.iter().filter(|a| a.status != "pass").map(|a| a.name.as_str()).collect();
    if !r.audits.is_empty() {
        out.push_str(&format!("audits: {} checked, failing [{}]\n", r.audits.len(), failed.join(", ")));
    }
    let v = &r.verdict;
    match (v.reason, v.cover_degree) {
        (None, _) => out.push_str("verdict: Embedding\n"),
        (Some(reason), Some(d)) => out.push_str(&format!("verdict: NotEmbedding({} {})\n", reason, d)),
        (Some(reason), None) => out.push_str(&format!("verdict: NotEmbedding({})\n", reason)),
    }
    if let Some(w) = &v.witness {
        out.push_str(&format!("witness: {}\n", w.description));
        if let Some(ok) = w.verified {
            out.push_str(&format!("witness verified: {}\n", ok));
        }
    }
    out.push_str(&format!("consistent: {}\n", r.consistent));
    out
}

fn run_analyze(file: &Path, json: Option<&str>) -> Result<u8, Fail> {
    let c = read_curve(file)?;
    let policy = TruncPolicy::for_curve(&c, trunc_multiplier()?);
    let r = analyze(&c, policy).map_err(|e| Fail(1, e.to_string()))?;
    match json {
        Some("-") => write_out("-", &to_json(&r))?,
        Some(path) => {
            write_out(path, &to_json(&r))?;
            print!("{}", summary(&r));
        }
        None => print!("{}", summary(&r)),
    }
    Ok(if r.is_embedding() { 0 } else { 3 })
}

fn series_id(series: char, params: &Params) -> Result<SeriesId, Fail> {
    let names = param_names(series).map_err(|e| Fail(2, e.to_string()))?;
    if let Some(extra) = params.given().into_iter().find(|g| !names.contains(g)) {
        return Err(Fail(2, format!("({}) has no parameter {}", series, extra)));
    }
    let mut values = Vec::new();
    for name in names {
        match params.range(name)? {
            Some((a, b)) if a == b => values.push(a),
            Some(_) => return Err(Fail(2, format!("--{} must be a single value", name))),
            None => return Err(Fail(2, format!("({}) needs --{}", series, name))),
        }
    }
    SeriesId::new(series, &values).map_err(|e| Fail(2, e.to_string()))
}

fn run_gen(series: char, params: &Params, out: Option<&Path>) -> Result<u8, Fail> {
    let id = series_id(series, params)?;
    let c = catalog::gen_series(&id).map_err(|e| Fail(2, e.to_string()))?;
    let body = emit_curve_file(&c) + "\n";
    match out {
        Some(p) => std::fs::write(p, body).map_err(|e| Fail(1, format!("{}: {}", p.display(), e)))?,
        None => print!("{}", body),
    }
    Ok(0)
}

fn product(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &(a, b) in ranges {
        out = out
            .into_iter()
            .flat_map(|v| {
                (a..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn selection(series: Option<char>, params: &Params) -> Result<Vec<SeriesId>, Fail> {
    let Some(letter) = series else {
        if !params.given().is_empty() {
            return Err(Fail(2, "parameter ranges need --series".into()));
        }
        return Ok(catalog::grid());
    };
    let names = param_names(letter).map_err(|e| Fail(2, e.to_string()))?;
    if let Some(extra) = params.given().into_iter().find(|g| !names.contains(g)) {
        return Err(Fail(2, format!("({}) has no parameter {}", letter, extra)));
    }
    let ranges: Vec<Option<(i64, i64)>> = names.iter().map(|n| params.range(n)).collect::<Result<_, _>>()?;
    if ranges.iter().all(Option::is_some) {
        let full: Vec<(i64, i64)> = ranges.into_iter().flatten().collect();
        return product(&full)
            .into_iter()
            .map(|v| SeriesId::new(letter, &v).map_err(|e| Fail(2, e.to_string())))
            .collect();
    }
    let inside = |id: &SeriesId| {
        id.params.iter().zip(&ranges).all(|((_, v), r)| r.is_none_or(|(a, b)| a <= *v && *v <= b))
    };
    Ok(catalog::grid().into_iter().filter(|id| id.letter == letter && inside(id)).collect())
}

fn run_verify(series: Option<char>, params: &Params, jobs: usize, json: bool) -> Result<u8, Fail> {
    let ids = selection(series, params)?;
    let mult = trunc_multiplier()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Fail(1, e.to_string()))?;
    let records: Vec<VerifyRecord> = pool.install(|| ids.par_iter().map(|id| verify_entry(id, mult)).collect());
    let count = |s: &str| records.iter().filter(|r| r.status == s).count();
    if json {
        print!("{}", to_json(&records));
    } else {
        for r in &records {
            let mut line = format!("{:<28} {:<7}", r.id, r.status);
            if let Some(l) = &r.ledger {
                line.push_str(&format!(" {}", l));
            }
            if !r.singularities.is_empty() {
                line.push_str(&format!(" [{}]", r.singularities.join(", ")));
            }
            if !r.notes.is_empty() {
                line.push_str(&format!(" {}", r.notes.join("; ")));
            }
            println!("{}", line.trim_end());
        }
        println!(
            "total {}: {} pass, {} fail, {} error, {} skipped",
            records.len(),
            count("pass"),
            count("fail"),
            count("error"),
            count("skipped")
        );
    }
    Ok(if count("error") > 0 {
        1
    } else if count("fail") > 0 {
        3
    } else {
        0
    })
}

fn parse_point(s: &str, d: i64) -> Result<KPoly, Fail> {
    let bad = |e: String| Fail(2, format!("invalid point {:?}: {}", s, e));
    let coeffs: Vec<Scalar> = s
        .split(',')
        .map(|c| Scalar::parse(c.trim(), "0", d).map_err(|e| bad(e.to_string())))
        .collect::<Result<_, _>>()?;
    let f = if coeffs.len() == 1 { KPoly::linear_root(&coeffs[0]) } else { KPoly::new(coeffs) };
    if f.degree() < 1 || f.lc() != Scalar::one() {
        return Err(bad("factor must be monic of positive degree".into()));
    }
    Ok(f)
}

fn run_oracle(file: &Path, point: &str, bound: usize) -> Result<u8, Fail> {
    let c = read_curve(file)?;
    let f = parse_point(point, c.d)?;
    for (piece, res) in delta_at_point(&c, &f, bound) {
        match res {
            Ok(delta) => println!("{}: delta = {}", piece.render("t"), delta),
            Err(e) => println!("{}: {}", piece.render("t"), e),
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Fail> {
    match cli.cmd {
        Cmd::Analyze { file, json } => run_analyze(&file, json.as_deref()),
        Cmd::Catalog(CatalogCmd::List) => {
            for (l, constraint) in catalog::list() {
                let names = param_names(l).map_err(|e| Fail(1, e.to_string()))?;
                println!("({}) params [{}] {}", l, names.join(","), constraint);
            }
            Ok(0)
        }
        Cmd::Catalog(CatalogCmd::Gen { series, params, out }) => run_gen(series, &params, out.as_deref()),
        Cmd::Catalog(CatalogCmd::Verify { series, params, jobs, json }) => run_verify(series, &params, jobs, json),
        Cmd::Oracle(OracleCmd::Delta { file, point, bound }) => run_oracle(&file, &point, bound),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(code)
        }
    }
}
