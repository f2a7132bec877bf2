use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use permpoly::classifier::{
    check_table, classify_in, verify_dickson_restrictions, verify_proof_identities, verify_quintic_lemma,
    ClassifyOptions, Mode, TABLE_CASES,
};
use permpoly::digitcomb::multinomial_mod_p;
use permpoly::gf2t::parse_modulus_hex;
use permpoly::symbolic::hermite_symbolic;
use permpoly::{hermite_dickson_test, is_pp_exhaustive, Error, FieldCtx, FieldPoly, PermVerdict, Var};

const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(name = "permpoly", version, about = "Permutation polynomials over GF(2^t)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the field parameters and generator.
    Field {
        #[arg(long)]
        t: u32,
        /// Irreducible modulus as hex, e.g. 0xb.
        #[arg(long = "mod")]
        modulus: Option<String>,
    },
    /// Decide whether a polynomial permutes the field.
    Pptest {
        #[arg(long)]
        t: u32,
        #[arg(long = "mod")]
        modulus: Option<String>,
        #[arg(long)]
        poly: String,
        #[arg(long, value_enum, default_value_t = Method::Exhaustive)]
        method: Method,
        #[arg(long)]
        json: bool,
    },
    /// Print the symbolic coefficient of x^(q-1) in f^(m+u).
    HermiteSym {
        #[arg(long)]
        deg: u32,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        u: u64,
        /// Fix a coefficient variable, e.g. a=1. Repeatable.
        #[arg(long = "pin", value_parser = parse_pin)]
        pins: Vec<(Var, bool)>,
    },
    /// Search for all normalized permutation polynomials and group them.
    Classify {
        #[arg(long)]
        deg: u32,
        #[arg(long)]
        t: u32,
        #[arg(long = "mod")]
        modulus: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Verify)]
        mode: ModeArg,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Multinomial coefficient n!/(k1!...kr!) modulo a prime.
    Lucas {
        #[arg(long)]
        n: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<u64>,
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Method {
    Exhaustive,
    Hermite,
}

#[derive(Copy, Clone, ValueEnum)]
enum ModeArg {
    Verify,
    Fast,
}

#[derive(Copy, Clone, ValueEnum)]
enum Suite {
    Dickson,
    Quintic,
    Identities,
    Tables,
}

fn parse_pin(s: &str) -> Result<(Var, bool), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("`{s}`: expected VAR=0 or VAR=1"))?;
    let var = match name.chars().collect::<Vec<_>>()[..] {
        [c] => Var::from_letter(c),
        _ => None,
    }
    .ok_or_else(|| format!("`{name}`: not a coefficient variable"))?;
    match value {
        "0" => Ok((var, false)),
        "1" => Ok((var, true)),
        _ => Err(format!("`{value}`: pin value must be 0 or 1")),
    }
}

/// Errors from the library become usage errors; `Ok(false)` is a failed check.
type Outcome = Result<bool, Error>;

fn field_ctx(t: u32, modulus: Option<&str>) -> Result<FieldCtx, Error> {
    let m = modulus.map(parse_modulus_hex).transpose()?;
    FieldCtx::new(t, m)
}

fn print_json(value: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("report types serialize"));
}

fn print_verdict(field: &FieldCtx, v: &PermVerdict) {
    println!("is_pp: {}", v.is_pp);
    if let Some(f) = v.failure {
        println!("failure: {f:?}");
    }
    if let Some((x1, x2)) = v.witness {
        println!("collision: f({}) = f({})", field.display(x1), field.display(x2));
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Field { t, modulus } => {
            let field = field_ctx(t, modulus.as_deref())?;
            println!("t: {}", field.t());
            println!("q: {}", field.q());
            println!("modulus: {}", field.modulus_hex());
            println!("generator: a = {:#x}", field.generator().0);
            println!("mu: {} = {:#x}", field.display(field.mu()), field.mu().0);
            Ok(true)
        }
        Command::Pptest { t, modulus, poly, method, json } => {
            let field = field_ctx(t, modulus.as_deref())?;
            let f = FieldPoly::parse(&field, &poly)?;
            let verdict = match method {
                Method::Exhaustive => is_pp_exhaustive(&f),
                Method::Hermite => hermite_dickson_test(&f)?,
            };
            if json {
                print_json(&verdict);
            } else {
                print_verdict(&field, &verdict);
            }
            Ok(true)
        }
        Command::HermiteSym { deg, r, t, u, pins } => {
            let q = 1u64.checked_shl(t).filter(|_| t < 63).ok_or(Error::UnsupportedDegree(t))?;
            if deg == 0 || r >= q || (q - r) % deg as u64 != 0 {
                return Err(Error::InvalidArgument(format!("r = {r} does not satisfy 2^{t} = {deg}*m + r")));
            }
            let m = (q - r) / deg as u64;
            println!("{}", hermite_symbolic(deg, r, m, u, &pins)?);
            Ok(true)
        }
        Command::Classify { deg, t, modulus, mode, json, workers } => {
            let field = field_ctx(t, modulus.as_deref())?;
            let mode = match mode {
                ModeArg::Verify => Mode::Verify,
                ModeArg::Fast => Mode::Fast,
            };
            let opts = ClassifyOptions { mode, workers, x3_values: None };
            let report = classify_in(&field, deg, &opts)?;
            if json {
                println!("{}", report.to_json());
            } else {
                println!("degree {} over GF(2^{}), modulus {}", report.degree, report.t, report.modulus_hex);
                println!("candidates tested: {}", report.candidates_tested);
                println!("permutations found: {}", report.pps_found);
                for c in &report.classes {
                    println!("  {}  (witness {}, {} members)", c.canonical, c.witness, c.members);
                }
                for m in &report.table_diff.missing {
                    println!("  listed but not found: {m}");
                }
                for e in &report.table_diff.extra {
                    println!("  found but not listed: {e}");
                }
            }
            Ok(true)
        }
        Command::Verify { suite, t, seed, json } => verify(suite, t, seed, json),
        Command::Lucas { n, parts, p } => {
            println!("{}", multinomial_mod_p(n, &parts, p)?);
            Ok(true)
        }
    }
}

fn require_t(t: Option<u32>) -> Result<u32, Error> {
    t.ok_or_else(|| Error::InvalidArgument("this suite needs --t".into()))
}

fn verify(suite: Suite, t: Option<u32>, seed: u64, json: bool) -> Outcome {
    match suite {
        Suite::Dickson => {
            let r = verify_dickson_restrictions(require_t(t)?, seed)?;
            if json {
                print_json(&r);
            } else {
                println!("t={} checked {} excluded {}: {}", r.t, r.checked, r.excluded, verdict(r.pass));
                for c in &r.counterexamples {
                    println!("  counterexample: {c}");
                }
            }
            Ok(r.pass)
        }
        Suite::Quintic => {
            let t = require_t(t)?;
            let r = verify_quintic_lemma(t)?;
            if json {
                print_json(&r);
            } else {
                println!("t={} checked {}: {}", r.t, r.checked, verdict(r.pass));
                let field = FieldCtx::new(t, None)?;
                for (c, roots) in &r.failures {
                    println!("  c = {}: {roots} roots", field.display(*c));
                }
            }
            Ok(r.pass)
        }
        Suite::Identities => {
            let checks = verify_proof_identities(seed)?;
            if json {
                print_json(&checks);
            } else {
                for c in &checks {
                    println!("{}  {}: {}", verdict(c.pass), c.name, c.detail);
                }
            }
            Ok(checks.iter().all(|c| c.pass))
        }
        Suite::Tables => {
            let cases: Vec<_> = TABLE_CASES.iter().filter(|(_, ct)| t.is_none_or(|t| t == *ct)).collect();
            if cases.is_empty() {
                return Err(Error::InvalidArgument(format!("no expected table for t = {}", t.unwrap_or(0))));
            }
            let mut checks = Vec::new();
            for &&(deg, ct) in &cases {
                checks.push(check_table(deg, ct, &ClassifyOptions::default())?);
            }
            if json {
                print_json(&checks);
            } else {
                for c in &checks {
                    println!("{}  degree {} t={}: {} classes", verdict(c.pass), c.degree, c.t, c.found_classes);
                    for m in &c.missing {
                        println!("  missing: {m}");
                    }
                    for e in &c.extra {
                        println!("  extra: {e}");
                    }
                    for r in &c.resolution {
                        println!("  resolved: {r}");
                    }
                }
            }
            Ok(checks.iter().all(|c| c.pass))
        }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
