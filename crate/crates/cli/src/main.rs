//! `twochild`: exact answers, seeded simulation, partition diagnostics, and
//! SVG sample-space diagrams for the scenario catalog.
//!
//! Any flag may instead come from a `--config` file of `key = value` lines;
//! explicit flags win. Results go to standard output (or `--out`),
//! diagnostics to the error stream. Exit codes: 0 success, 2 usage or
//! config problem, 3 conditioning on a probability-zero observation,
//! 4 simulation whose observation never fired.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::process::exit;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use twochild::{
    darts_demo, run, simulate, DartsVariant, Error, McConfig, Rational, ScenarioId,
    ScenarioParams,
};
use twochild_cli::config::{parse_config, parse_names, CONFIG_KEYS};
use twochild_cli::figure::{render, FigureId};

#[derive(Parser)]
#[command(name = "twochild", version, about = "Two-child puzzles, exactly and by simulation")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a scenario's exact answer next to its published closed form
    Solve(RawArgs),
    /// Estimate a scenario's answer by seeded Monte Carlo and compare
    Simulate(RawArgs),
    /// Show the partition diagnostics behind a darts demonstration
    CheckPartition(RawArgs),
    /// Emit a sample-space diagram as deterministic SVG
    Figure(RawArgs),
}

/// Every flag is captured as raw text so config-file values and flag values
/// flow through one parser with one set of error messages.
#[derive(Args, Clone, Default)]
struct RawArgs {
    /// Scenario id, e.g. two_child, adam, walk, darts_disjoint
    #[arg(long)]
    scenario: Option<String>,
    /// Boy-naming probability as num/den, 0 < p <= 1
    #[arg(long)]
    p: Option<String>,
    /// Alphabet size for adam_without_replacement (n >= 2)
    #[arg(long)]
    n: Option<String>,
    /// Path to a label<TAB>num/den weights file for adam_weighted
    #[arg(long)]
    names: Option<String>,
    /// Which label from --names is the asked-about one (default: first line)
    #[arg(long)]
    target: Option<String>,
    /// Chance a girl joins the walk, as num/den in [0, 1]
    #[arg(long = "girl-weight")]
    girl_weight: Option<String>,
    /// Monte Carlo trial count (default 1000000)
    #[arg(long)]
    trials: Option<String>,
    /// Monte Carlo seed (default 0)
    #[arg(long)]
    seed: Option<String>,
    /// Monte Carlo worker threads (default 1; counters do not depend on it)
    #[arg(long)]
    workers: Option<String>,
    /// Figure id: boxes, adam-stripes, walk-halves, disjoint-names,
    /// overlapping-names
    #[arg(long)]
    figure: Option<String>,
    /// Write the result here instead of standard output
    #[arg(long)]
    out: Option<String>,
    /// Read `key = value` defaults from this file (flags override it)
    #[arg(long)]
    config: Option<String>,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn from_core(err: Error) -> Failure {
    let code = if matches!(err, Error::ZeroProbabilityCondition(_)) { 3 } else { 2 };
    Failure { code, message: err.to_string() }
}

/// Flag values merged with the config file, flags winning.
struct Settings {
    values: Vec<(&'static str, String)>,
}

impl Settings {
    fn get(&self, key: &str) -> Option<&str> {
        self.values.iter().find(|(k, _)| *k == key).map(|(_, v)| v.as_str())
    }

    fn require(&self, key: &'static str) -> Result<&str, Failure> {
        self.get(key).ok_or_else(|| usage(format!("missing required flag --{key}")))
    }

    fn rational(&self, key: &'static str) -> Result<Option<Rational>, Failure> {
        self.get(key)
            .map(|v| {
                v.parse::<Rational>()
                    .map_err(|e| usage(format!("invalid --{key} {v:?}: {e}")))
            })
            .transpose()
    }

    fn integer<T: FromStr>(&self, key: &'static str) -> Result<Option<T>, Failure>
    where
        T::Err: std::fmt::Display,
    {
        self.get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|e| usage(format!("invalid --{key} {v:?}: {e}")))
            })
            .transpose()
    }
}

fn settings_from(raw: &RawArgs) -> Result<Settings, Failure> {
    let flags: [(&'static str, &Option<String>); 11] = [
        ("scenario", &raw.scenario),
        ("p", &raw.p),
        ("n", &raw.n),
        ("names", &raw.names),
        ("target", &raw.target),
        ("girl-weight", &raw.girl_weight),
        ("trials", &raw.trials),
        ("seed", &raw.seed),
        ("workers", &raw.workers),
        ("figure", &raw.figure),
        ("out", &raw.out),
    ];
    let mut values: Vec<(&'static str, String)> = flags
        .iter()
        .filter_map(|(k, v)| v.as_ref().map(|v| (*k, v.clone())))
        .collect();
    if let Some(path) = &raw.config {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {path}: {e}")))?;
        for (key, value) in parse_config(&text).map_err(|e| usage(format!("{path}: {e}")))? {
            // parse_config admits only CONFIG_KEYS entries, so the intern
            // lookup cannot miss.
            let key = CONFIG_KEYS
                .iter()
                .find(|k| **k == key)
                .expect("config keys are validated");
            if !values.iter().any(|(k, _)| k == key) {
                values.push((key, value));
            }
        }
    }
    Ok(Settings { values })
}

fn deliver(out: Option<&str>, text: &str) -> Result<(), Failure> {
    match out {
        None => {
            let mut stdout = std::io::stdout();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| usage(format!("cannot write to standard output: {e}")))
        }
        Some(path) => {
            fs::write(path, text).map_err(|e| usage(format!("cannot write {path}: {e}")))
        }
    }
}

fn reject_keys(s: &Settings, keys: &[&str], ctx: &str) -> Result<(), Failure> {
    for key in keys {
        if s.get(key).is_some() {
            return Err(usage(format!("--{key} does not apply to {ctx}")));
        }
    }
    Ok(())
}

fn parse_scenario(s: &Settings) -> Result<ScenarioId, Failure> {
    s.require("scenario")?.parse::<ScenarioId>().map_err(from_core)
}

fn check_p(p: &Rational) -> Result<(), Failure> {
    if p.is_zero() || p.is_negative() {
        return Err(usage("invalid --p: p > 0 required"));
    }
    if *p > Rational::one() {
        return Err(usage("invalid --p: p must not exceed 1"));
    }
    Ok(())
}

/// Builds the scenario's parameters from the settings, rejecting flags the
/// scenario has no use for so a silently ignored value cannot masquerade as
/// a different experiment.
fn scenario_params(s: &Settings, scenario: ScenarioId) -> Result<ScenarioParams, Failure> {
    use ScenarioId::*;
    let allowed: &[&str] = match scenario {
        TwoChild | Adam | SchoolMeeting | Draft | FirstbornNamed => &["p"],
        Walk | WalkBiased | WalkNamed => &["p", "girl-weight"],
        AdamWithoutReplacement => &["n"],
        AdamWeighted => &["names", "target"],
        DartsOverlapping | DartsDisjoint => &[],
    };
    for key in ["p", "n", "names", "target", "girl-weight"] {
        if s.get(key).is_some() && !allowed.contains(&key) {
            return Err(usage(format!("--{key} does not apply to scenario {scenario}")));
        }
    }
    let mut params = ScenarioParams::default();
    if let Some(p) = s.rational("p")? {
        check_p(&p)?;
        params.p = p;
    }
    if let Some(n) = s.integer::<usize>("n")? {
        params.n = n;
    }
    if let Some(gw) = s.rational("girl-weight")? {
        if gw.is_negative() || gw > Rational::one() {
            return Err(usage("invalid --girl-weight: must lie in [0, 1]"));
        }
        params.girl_weight = Some(gw);
    }
    if s.get("target").is_some() && s.get("names").is_none() {
        return Err(usage("--target requires --names"));
    }
    if let Some(path) = s.get("names") {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read names file {path}: {e}")))?;
        let names = parse_names(&text).map_err(|e| usage(format!("{path}: {e}")))?;
        let (_, target) = names.alphabet(s.get("target")).map_err(usage)?;
        params.weights = names.weights;
        params.target = target;
    }
    Ok(params)
}

fn cmd_solve(s: &Settings) -> Result<(), Failure> {
    reject_keys(s, &["trials", "seed", "workers", "figure"], "solve")?;
    let scenario = parse_scenario(s)?;
    let params = scenario_params(s, scenario)?;
    let report = run(scenario, &params).map_err(from_core)?;
    let closed = match &report.closed_form {
        Some(c) => c.to_string(),
        None => "none".to_string(),
    };
    let text = format!(
        "exact = {}\ndecimal = {}\nclosed_form = {}\nmatch = {}\n",
        report.exact, report.decimal, closed, report.matches
    );
    deliver(s.get("out"), &text)
}

fn cmd_simulate(s: &Settings) -> Result<(), Failure> {
    reject_keys(s, &["figure"], "simulate")?;
    let scenario = parse_scenario(s)?;
    let params = scenario_params(s, scenario)?;
    let cfg = McConfig {
        trials: s.integer("trials")?.unwrap_or(1_000_000),
        seed: s.integer("seed")?.unwrap_or(0),
        workers: s.integer("workers")?.unwrap_or(1),
    };
    let est = simulate(scenario, &params, &cfg).map_err(from_core)?;
    let exact = run(scenario, &params).map_err(from_core)?.exact;
    let (ratio, stderr, sigma) = match (est.ratio(), est.stderr()) {
        (Some(ratio), Some(se)) => {
            let diff = &ratio - &exact;
            let diff = if diff.is_negative() { -diff } else { diff };
            let diff = diff.to_f64();
            let sigma = if diff == 0.0 { 0.0 } else { diff / se };
            (ratio.decimal(10), format!("{se:.6e}"), format!("{sigma:.3}"))
        }
        _ => ("undefined".into(), "undefined".into(), "undefined".into()),
    };
    let text = format!(
        "a = {}\nb = {}\nratio = {}\nstderr = {}\nexact = {}\nsigma_distance = {}\n",
        est.a, est.b, ratio, stderr, exact, sigma
    );
    deliver(s.get("out"), &text)?;
    if est.b == 0 {
        return Err(Failure {
            code: 4,
            message: "no trial produced the conditioning observation (b = 0)".into(),
        });
    }
    Ok(())
}

fn cmd_check_partition(s: &Settings) -> Result<(), Failure> {
    reject_keys(
        s,
        &["p", "n", "names", "target", "girl-weight", "trials", "seed", "workers", "figure"],
        "check-partition",
    )?;
    let scenario = parse_scenario(s)?;
    let variant = match scenario {
        ScenarioId::DartsOverlapping => DartsVariant::Overlapping,
        ScenarioId::DartsDisjoint => DartsVariant::Disjoint,
        other => {
            return Err(usage(format!(
                "check-partition requires a darts scenario, got {other}"
            )));
        }
    };
    let rep = darts_demo(variant);
    let mut text = String::new();
    let _ = writeln!(text, "disjoint = {}", rep.disjoint);
    let _ = writeln!(text, "covering = {}", rep.covering);
    for (label, prob) in &rep.part_probs {
        let _ = writeln!(text, "P({label}) = {prob}");
    }
    for (label, cond) in &rep.conditionals {
        match cond {
            Some(c) => {
                let _ = writeln!(text, "P(E|{label}) = {c}");
            }
            None => {
                let _ = writeln!(text, "P(E|{label}) = undefined");
            }
        }
    }
    match &rep.constant_conditional {
        Some(c) => {
            let _ = writeln!(text, "constant_conditional = {c}");
        }
        None => {
            let _ = writeln!(text, "constant_conditional = none");
        }
    }
    let _ = writeln!(text, "total_prob_sum = {}", rep.total_prob_sum);
    let _ = writeln!(text, "P(E) = {}", rep.event_prob);
    deliver(s.get("out"), &text)
}

fn cmd_figure(s: &Settings) -> Result<(), Failure> {
    reject_keys(
        s,
        &["scenario", "n", "names", "target", "girl-weight", "trials", "seed", "workers"],
        "figure",
    )?;
    let id: FigureId = s.require("figure")?.parse().map_err(usage)?;
    let p = s.rational("p")?;
    if let Some(p) = &p {
        check_p(p)?;
        if !id.needs_p() {
            return Err(usage(format!("--p does not apply to figure {}", id.as_str())));
        }
    }
    let svg = render(id, p.as_ref()).map_err(usage)?;
    deliver(s.get("out"), &svg)
}

type CmdFn = fn(&Settings) -> Result<(), Failure>;

fn dispatch(cmd: &Cmd) -> Result<(), Failure> {
    let (raw, go): (&RawArgs, CmdFn) = match cmd {
        Cmd::Solve(raw) => (raw, cmd_solve),
        Cmd::Simulate(raw) => (raw, cmd_simulate),
        Cmd::CheckPartition(raw) => (raw, cmd_check_partition),
        Cmd::Figure(raw) => (raw, cmd_figure),
    };
    let settings = settings_from(raw)?;
    go(&settings)
}

fn main() {
    let cli = Cli::parse();
    if let Err(f) = dispatch(&cli.cmd) {
        eprintln!("error: {}", f.message);
        exit(f.code);
    }
}
