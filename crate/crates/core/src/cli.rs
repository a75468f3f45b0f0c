//! Command-line front end.
//!
//! Exit codes: 0 for success or a positive verdict, 1 for a negative
//! verdict, 2 for usage or input errors.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::bits::BinaryVector;
use crate::error::Error;
use crate::oracle::{oracle_check, oracle_prime_period, OracleConfig};
use crate::periodicity::{
    check_periodic_point, check_theorem76, derive_t0_t1, prime_period, valid_tprime_interval,
    PeriodicityVerdict, TPrimeRange,
};
use crate::rat::Rat;
use crate::sigfmt;
use crate::signal::UpSignal;
use crate::upset::UpSet;

const MAX_RENDER_COLUMNS: i128 = 100_000;

#[derive(Parser, Debug)]
#[command(
    name = "sigperiod",
    version,
    about = "Exact periodicity analysis of binary signals"
)]
struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Signal file (document or χ-expression); stdin when absent or `-`.
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    mu: String,
    #[arg(long = "T", allow_hyphen_values = true)]
    period: String,
    #[arg(long, allow_hyphen_values = true)]
    tprime: String,
    #[command(flatten)]
    input: Input,
}

#[derive(Args, Debug)]
struct MuArgs {
    #[arg(long)]
    mu: String,
    #[command(flatten)]
    input: Input,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Value x(t).
    Eval {
        #[arg(short = 't', allow_hyphen_values = true)]
        t: String,
        #[command(flatten)]
        input: Input,
    },
    /// Left limit x(t-0).
    Leftlimit {
        #[arg(short = 't', allow_hyphen_values = true)]
        t: String,
        #[command(flatten)]
        input: Input,
    },
    /// Values taken by the signal.
    Orbit {
        #[command(flatten)]
        input: Input,
    },
    /// The set {t | x(t) = mu}.
    Fiber(MuArgs),
    /// Whether (T, t') witnesses that mu is a periodic point.
    Check(CheckArgs),
    /// Admissible t' for a given T.
    TprimeRange {
        #[arg(long)]
        mu: String,
        #[arg(long = "T", allow_hyphen_values = true)]
        period: String,
        #[command(flatten)]
        input: Input,
    },
    /// Prime period of mu.
    Prime(MuArgs),
    /// t0 and t1 for a period T.
    Derive {
        #[arg(long = "T", allow_hyphen_values = true)]
        period: String,
        #[command(flatten)]
        input: Input,
    },
    /// Check the bound t1-T <= t' < t0 < t1 and the periodic inclusion.
    Verify76 {
        #[arg(long = "T", allow_hyphen_values = true)]
        period: String,
        #[arg(long, allow_hyphen_values = true)]
        tprime: String,
        #[command(flatten)]
        input: Input,
    },
    /// Brute-force reference evaluation.
    Oracle {
        /// Tail periods sampled past the transient.
        #[arg(long, default_value_t = 3, global = true)]
        horizon: u32,
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// ASCII waveform, one row per bit.
    Render {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, allow_hyphen_values = true)]
        step: String,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    Check(CheckArgs),
    Prime(MuArgs),
}

/// What a command printed and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

struct Report {
    command: &'static str,
    inputs: Map<String, Value>,
    verdict: Value,
    details: Map<String, Value>,
    extra: Map<String, Value>,
    text: String,
    code: i32,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report {
            command,
            inputs: Map::new(),
            verdict: Value::Null,
            details: Map::new(),
            extra: Map::new(),
            text: String::new(),
            code: 0,
        }
    }

    fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs
            .insert(key.into(), Value::String(value.to_string()));
        self
    }

    fn detail(mut self, key: &str, value: Value) -> Self {
        self.details.insert(key.into(), value);
        self
    }

    fn to_json(&self) -> String {
        let mut obj = Map::new();
        obj.insert("command".into(), Value::String(self.command.into()));
        obj.insert("inputs".into(), Value::Object(self.inputs.clone()));
        obj.insert("verdict".into(), self.verdict.clone());
        obj.insert("details".into(), Value::Object(self.details.clone()));
        obj.extend(self.extra.clone());
        Value::Object(obj).to_string()
    }
}

fn rat_arg(flag: &str, text: &str) -> Result<Rat, Usage> {
    sigfmt::parse_rat(text, 1, 1).map_err(|_| {
        Usage(format!(
            "invalid value `{text}` for {flag}: expected p or p/q"
        ))
    })
}

fn period_arg(text: &str) -> Result<Rat, Usage> {
    let period = rat_arg("--T", text)?;
    if !period.is_positive() {
        return Err(Usage("T must be positive".into()));
    }
    Ok(period)
}

fn mu_arg(text: &str, x: &UpSignal) -> Result<BinaryVector, Usage> {
    let mu: BinaryVector = text.parse().map_err(|_| {
        Usage(format!(
            "invalid value `{text}` for --mu: expected a bit string"
        ))
    })?;
    if mu.width() != x.width() {
        return Err(Usage(format!(
            "--mu has width {}, the signal has width {}",
            mu.width(),
            x.width()
        )));
    }
    Ok(mu)
}

fn orbit_mu_arg(text: &str, x: &UpSignal) -> Result<BinaryVector, Usage> {
    let mu = mu_arg(text, x)?;
    if !x.in_orbit(&mu) {
        return Err(Usage(format!(
            "--mu {mu} is not in the orbit of the signal"
        )));
    }
    Ok(mu)
}

fn load(input: &Input, stdin: &mut dyn Read) -> Result<UpSignal, Usage> {
    let (name, text) = match &input.input {
        Some(path) if path.as_os_str() != "-" => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Usage(format!("{}: {e}", path.display())))?;
            (path.display().to_string(), text)
        }
        _ => {
            let mut text = String::new();
            stdin
                .read_to_string(&mut text)
                .map_err(|e| Usage(format!("<stdin>: {e}")))?;
            ("<stdin>".to_string(), text)
        }
    };
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    let parsed = if first.starts_with("chi") {
        sigfmt::parse_chi_expr(&text)
    } else {
        sigfmt::parse(&text)
    };
    parsed.map_err(|e| Usage(format!("{name}: {e}")))
}

fn bool_report(mut r: Report, verdict: bool) -> Report {
    r.verdict = Value::Bool(verdict);
    r.text = verdict.to_string();
    r.code = if verdict { 0 } else { 1 };
    r
}

fn check_report(
    name: &'static str,
    args: &CheckArgs,
    x: &UpSignal,
    oracle: Option<OracleConfig>,
) -> Result<Report, Usage> {
    let mu = orbit_mu_arg(&args.mu, x)?;
    let period = period_arg(&args.period)?;
    let tprime = rat_arg("--tprime", &args.tprime)?;
    let verdict = match oracle {
        None => check_periodic_point(x, &mu, period, tprime)?,
        Some(cfg) => oracle_check(x, &mu, period, tprime, cfg)?,
    };
    let r = Report::new(name)
        .input("mu", &mu)
        .input("T", period)
        .input("tprime", tprime);
    Ok(bool_report(r, verdict))
}

fn prime_report(mu: &BinaryVector, x: &UpSignal) -> Report {
    let verdict = prime_period(x, mu);
    let mut r = Report::new("prime").input("mu", mu);
    let (name, text, period, lo, hi) = match &verdict {
        PeriodicityVerdict::Prime {
            period,
            admissible_tprime,
        } => (
            "prime",
            format!("prime T={period} t' in {admissible_tprime}"),
            json!(period.to_string()),
            json!(admissible_tprime.lo.to_string()),
            json!(admissible_tprime.hi.to_string()),
        ),
        PeriodicityVerdict::NoPrime => (
            "no_prime",
            "no prime period: every T > 0 is a period".to_string(),
            Value::Null,
            Value::Null,
            Value::Null,
        ),
        PeriodicityVerdict::NotPeriodic => (
            "not_periodic",
            "not periodic".to_string(),
            Value::Null,
            Value::Null,
            Value::Null,
        ),
        PeriodicityVerdict::NotInOrbit => (
            "not_in_orbit",
            "not in orbit".to_string(),
            Value::Null,
            Value::Null,
            Value::Null,
        ),
    };
    r.verdict = json!(name);
    r.code = if matches!(verdict, PeriodicityVerdict::Prime { .. }) {
        0
    } else {
        1
    };
    r.text = text;
    for (k, v) in [("T", period), ("tprime_lo", lo), ("tprime_hi", hi)] {
        r.details.insert(k.into(), v.clone());
        r.extra.insert(k.into(), v);
    }
    r
}

fn fiber_json(set: &UpSet) -> Value {
    let ivs = |v: &[crate::upset::Interval]| -> Value {
        v.iter()
            .map(|iv| json!([iv.lo.to_string(), iv.hi.to_string()]))
            .collect()
    };
    json!({
        "set": set.to_string(),
        "initial_ray": set.initial_ray().map(|r| r.to_string()),
        "transient": ivs(&set.transient_intervals()),
        "tail": set.tail().map(|t| json!({
            "start": t.start.to_string(),
            "period": t.period.to_string(),
            "pattern": ivs(&t.pattern),
        })),
        "sup": set.sup_bound().to_string(),
        "full": set.is_full(),
    })
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Report, Usage> {
    Ok(match &cli.command {
        Command::Eval { t, input } | Command::Leftlimit { t, input } => {
            let x = load(input, stdin)?;
            let t = rat_arg("-t", t)?;
            let (name, v) = match &cli.command {
                Command::Eval { .. } => ("eval", x.eval(t)),
                _ => ("leftlimit", x.left_limit(t)),
            };
            let mut r = Report::new(name)
                .input("t", t)
                .detail("value", json!(v.to_string()));
            r.verdict = json!(v.to_string());
            r.text = v.to_string();
            r
        }
        Command::Orbit { input } => {
            let x = load(input, stdin)?;
            let values: Vec<String> = x.orbit().iter().map(|v| v.to_string()).collect();
            let mut r = Report::new("orbit").detail("values", json!(values));
            r.verdict = json!(values.len());
            r.text = values.join("\n");
            r
        }
        Command::Fiber(args) => {
            let x = load(&args.input, stdin)?;
            let mu = mu_arg(&args.mu, &x)?;
            let set = UpSet::fiber(&x, &mu)?;
            let mut r = Report::new("fiber").input("mu", &mu);
            r.details = match fiber_json(&set) {
                Value::Object(m) => m,
                _ => unreachable!(),
            };
            r.verdict = json!(if set.is_empty() { "empty" } else { "nonempty" });
            r.text = set.to_string();
            r
        }
        Command::Check(args) => {
            let x = load(&args.input, stdin)?;
            check_report("check", args, &x, None)?
        }
        Command::TprimeRange { mu, period, input } => {
            let x = load(input, stdin)?;
            let mu = orbit_mu_arg(mu, &x)?;
            let period = period_arg(period)?;
            let range = valid_tprime_interval(&x, &mu, period)?;
            let mut r = Report::new("tprime-range")
                .input("mu", &mu)
                .input("T", period);
            let (verdict, text, lo, hi) = match range {
                None => ("none", "none".to_string(), Value::Null, Value::Null),
                Some(TPrimeRange::Everywhere) => {
                    ("everywhere", "all t'".to_string(), Value::Null, Value::Null)
                }
                Some(TPrimeRange::Window(iv)) => (
                    "window",
                    iv.to_string(),
                    json!(iv.lo.to_string()),
                    json!(iv.hi.to_string()),
                ),
            };
            r.verdict = json!(verdict);
            r.code = if range.is_some() { 0 } else { 1 };
            r.text = text;
            r.detail("lo", lo).detail("hi", hi)
        }
        Command::Prime(args) => {
            let x = load(&args.input, stdin)?;
            let mu = mu_arg(&args.mu, &x)?;
            prime_report(&mu, &x)
        }
        Command::Derive { period, input } => {
            let x = load(input, stdin)?;
            let period = period_arg(period)?;
            let (t0, t1) = derive_t0_t1(&x, period)?;
            let mut r = Report::new("derive")
                .input("T", period)
                .detail("t0", json!(t0.to_string()))
                .detail("t1", json!(t1.to_string()));
            r.verdict = json!("ok");
            r.text = format!("t0={t0} t1={t1}");
            r
        }
        Command::Verify76 {
            period,
            tprime,
            input,
        } => {
            let x = load(input, stdin)?;
            let period = period_arg(period)?;
            let tprime = rat_arg("--tprime", tprime)?;
            let rep = check_theorem76(&x, period, tprime)?;
            let r = Report::new("verify76")
                .input("T", period)
                .input("tprime", tprime)
                .detail("t0", json!(rep.t0.to_string()))
                .detail("t1", json!(rep.t1.to_string()))
                .detail("bound_ok", json!(rep.bound_ok))
                .detail("inclusion_ok", json!(rep.inclusion_ok));
            let mut r = bool_report(r, rep.bound_ok && rep.inclusion_ok);
            r.text = format!(
                "t0={} t1={} bound_ok={} inclusion_ok={}",
                rep.t0, rep.t1, rep.bound_ok, rep.inclusion_ok
            );
            r
        }
        Command::Oracle { horizon, command } => {
            if *horizon == 0 {
                return Err(Usage("--horizon must be positive".into()));
            }
            let cfg = OracleConfig::with_horizon(*horizon);
            match command {
                OracleCommand::Check(args) => {
                    let x = load(&args.input, stdin)?;
                    check_report("oracle check", args, &x, Some(cfg))?
                }
                OracleCommand::Prime(args) => {
                    let x = load(&args.input, stdin)?;
                    let mu = mu_arg(&args.mu, &x)?;
                    let found = oracle_prime_period(&x, &mu, cfg);
                    let note = if !x.in_orbit(&mu) {
                        "not in orbit"
                    } else if x.is_constant() {
                        "degenerate: every T > 0 is a period"
                    } else {
                        ""
                    };
                    let mut r = Report::new("oracle prime")
                        .input("mu", &mu)
                        .detail("T", json!(found.map(|t| t.to_string())))
                        .detail("note", json!(note));
                    r.verdict = json!(if found.is_some() { "prime" } else { "none" });
                    r.code = if found.is_some() { 0 } else { 1 };
                    r.text = match found {
                        Some(t) => format!("prime T={t}"),
                        None if note.is_empty() => "none".to_string(),
                        None => format!("none ({note})"),
                    };
                    r.extra
                        .insert("T".into(), json!(found.map(|t| t.to_string())));
                    r
                }
            }
        }
        Command::Render {
            from,
            to,
            step,
            input,
        } => {
            let x = load(input, stdin)?;
            let from = rat_arg("--from", from)?;
            let to = rat_arg("--to", to)?;
            let step = rat_arg("--step", step)?;
            if !step.is_positive() {
                return Err(Usage("--step must be positive".into()));
            }
            if to <= from {
                return Err(Usage("--to must be greater than --from".into()));
            }
            let columns = ((to - from) / step).ceil();
            if columns > MAX_RENDER_COLUMNS {
                return Err(Usage(format!(
                    "too many samples ({columns}); increase --step"
                )));
            }
            let samples: Vec<&BinaryVector> = (0..columns)
                .map(|k| x.eval(from + step * Rat::int(k)))
                .collect();
            let rows: Vec<String> = (0..x.width())
                .map(|bit| {
                    let wave: String = samples
                        .iter()
                        .map(|v| if v.get(bit) { '#' } else { '_' })
                        .collect();
                    format!("x{bit} |{wave}|")
                })
                .collect();
            let mut r = Report::new("render")
                .input("from", from)
                .input("to", to)
                .input("step", step)
                .detail("rows", json!(rows));
            r.verdict = json!("ok");
            r.text = rows.join("\n");
            r
        }
    })
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli, stdin) {
        Ok(report) => {
            let stdout = if cli.json {
                report.to_json()
            } else {
                report.text.clone()
            };
            Outcome {
                code: report.code,
                stdout: stdout + "\n",
                stderr: String::new(),
            }
        }
        Err(Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}
