//! Command-line front end: argument model, dispatch and output rendering.
//!
//! `run` never prints; it returns the exit code and the rendered document so
//! the binary and the tests share one path.

pub mod checks;
mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cyclocover::arith::{self, Family, DEFAULT_ENUMERATION_CAP};
use cyclocover::burau::cover_rep;
use cyclocover::covering::{self, CoverSpec};
use cyclocover::formsolve::invariant_form;
use cyclocover::matgroup::{verify_image, DEFAULT_BFS_CAP};

pub const SCHEMA: &str = "cyclocover/1";
pub const BFS_CAP_ENV: &str = "CYCLOCOVER_BFS_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_COVERED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Md,
}

#[derive(Debug, Parser)]
#[command(name = "cyclocover", version, about = "PSL/PSU realizability verdicts and mod-p monodromy checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Lpn {
    #[arg(long)]
    pub l: u64,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Args)]
pub struct Lpr {
    #[arg(long)]
    pub l: u64,
    #[arg(long)]
    pub p: u64,
    /// Number of finite branch points (braid strands).
    #[arg(long)]
    pub r: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verdict for PSL/PSU((l-1)n-2, q).
    Realize(Lpn),
    /// Bracket verdict over the index-mu subfield of Q(zeta_l), degree n.
    MainVerdict {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        mu: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
    },
    /// Table of covered (family, degree, q), smallest witness each.
    Enumerate {
        #[arg(long)]
        p_max: u64,
        #[arg(long)]
        l_max: u64,
        #[arg(long)]
        n_max: u64,
        /// Maximum number of (l, p, n) tuples.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Genus of a degree-l cyclic cover totally ramified at R points.
    Genus {
        #[arg(long)]
        l: u64,
        /// Total branch count R.
        #[arg(long = "branch-count")]
        branch_count: u64,
    },
    /// Invariants of y^l = prod (x - a_i)^{k_i}; give exponents or orbits.
    Cover {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        p: u64,
        /// Comma-separated finite branch exponents.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["mu", "seeds"])]
        exponents: Option<Vec<u64>>,
        /// Orbit size (index of the base field in Q(zeta_l)).
        #[arg(long, requires = "seeds")]
        mu: Option<u64>,
        /// One unit per orbit, comma-separated.
        #[arg(long, value_delimiter = ',', requires = "mu")]
        seeds: Option<Vec<u64>>,
    },
    /// Burau matrices at t = zeta_l over F_{p^e}, with the invariant form.
    Monodromy(Lpr),
    /// Order of the pure braid image against SlU/SlL.
    VerifyImage {
        #[command(flatten)]
        params: Lpr,
        /// BFS element bound; overrides CYCLOCOVER_BFS_CAP.
        #[arg(long)]
        bfs_cap: Option<u64>,
    },
    /// v2(p^(e/2) + 1) = v2(p + 1).
    V2Lemma {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u64,
    },
    /// Run the acceptance checks at their smallest scale.
    Selftest {
        /// Deliberately corrupt a component (negative control).
        #[arg(long, value_enum, hide = true)]
        mutate: Option<checks::Mutation>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, msg: impl Into<String>) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

/// Parse and run; usage errors map to exit 64, help/version to 0.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = err.render().to_string();
            if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::error(code, text)
            }
        }
    }
}

fn bfs_cap(flag: Option<u64>) -> Result<u64, String> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(BFS_CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{BFS_CAP_ENV}={v:?} is not an integer")),
        Err(_) => Ok(DEFAULT_BFS_CAP),
    }
}

/// Validation that clap cannot express; failures are usage errors.
fn validate(cmd: &Command) -> Result<(), String> {
    let odd_prime = |name: &str, v: u64| {
        if v != 2 && arith::is_prime(v) {
            Ok(())
        } else {
            Err(format!("--{name} must be an odd prime, got {v}"))
        }
    };
    let prime = |name: &str, v: u64| {
        if arith::is_prime(v) {
            Ok(())
        } else {
            Err(format!("--{name} must be prime, got {v}"))
        }
    };
    let distinct = |l: u64, p: u64| {
        if l == p {
            Err(format!("--p must differ from --l (both {l})"))
        } else {
            Ok(())
        }
    };
    match cmd {
        Command::Realize(a) => {
            odd_prime("l", a.l)?;
            prime("p", a.p)?;
            distinct(a.l, a.p)?;
            if a.n == 0 {
                return Err("--n must be at least 1".into());
            }
        }
        Command::MainVerdict { l, mu, p, n } => {
            odd_prime("l", *l)?;
            odd_prime("p", *p)?;
            distinct(*l, *p)?;
            if *mu == 0 || (l - 1) % mu != 0 {
                return Err(format!("--mu must divide l - 1 = {}", l - 1));
            }
            if *n == 0 {
                return Err("--n must be at least 1".into());
            }
        }
        Command::Enumerate { p_max, l_max, n_max, .. } => {
            if *p_max < 2 || *l_max < 3 || *n_max < 1 {
                return Err("bounds must satisfy p-max >= 2, l-max >= 3, n-max >= 1".into());
            }
        }
        Command::Genus { l, branch_count } => {
            odd_prime("l", *l)?;
            if *branch_count < 2 {
                return Err("--branch-count must be at least 2".into());
            }
        }
        Command::Cover { l, p, exponents, mu, .. } => {
            odd_prime("l", *l)?;
            prime("p", *p)?;
            distinct(*l, *p)?;
            if exponents.is_none() && mu.is_none() {
                return Err("give --exponents or --mu with --seeds".into());
            }
        }
        Command::Monodromy(a) | Command::VerifyImage { params: a, .. } => {
            odd_prime("l", a.l)?;
            prime("p", a.p)?;
            distinct(a.l, a.p)?;
            if a.r < 3 {
                return Err("--r must be at least 3".into());
            }
        }
        Command::V2Lemma { p, e } => {
            odd_prime("p", *p)?;
            if e % 2 != 0 || (e / 2) % 2 == 0 {
                return Err(format!("--e must be even with e/2 odd, got {e}"));
            }
        }
        Command::Selftest { .. } => {}
    }
    Ok(())
}

fn document(command: &str, body: Value) -> Value {
    let mut doc = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    doc
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

pub fn run(cli: &Cli) -> Outcome {
    if let Err(msg) = validate(&cli.command) {
        return Outcome::error(EXIT_USAGE, format!("error: {msg}\n"));
    }
    let fmt = cli.format;
    let result: Result<(i32, Value, Option<render::Table>), String> = (|| {
        Ok(match &cli.command {
            Command::Realize(a) => {
                let v = arith::realization_verdict(a.l, a.p, a.n).map_err(|e| e.to_string())?;
                let code = if v.family == Family::NotCovered { EXIT_NOT_COVERED } else { EXIT_OK };
                let mut body = to_value(&v);
                body["label"] = json!(v.label());
                (code, document("realize", body), None)
            }
            Command::MainVerdict { l, mu, p, n } => {
                let v = arith::theorem_main_verdict(*l, *mu, *p, *n).map_err(|e| e.to_string())?;
                let code = if v.family == Family::NotCovered { EXIT_NOT_COVERED } else { EXIT_OK };
                let mut body = to_value(&v);
                body["label"] = json!(v.label());
                (code, document("main-verdict", body), None)
            }
            Command::Enumerate { p_max, l_max, n_max, cap } => {
                let rows = arith::corollary_enumerate(*p_max, *l_max, *n_max, *cap).map_err(|e| e.to_string())?;
                let table = render::enumeration_table(&rows);
                let body = json!({ "rows": to_value(&rows) });
                (EXIT_OK, document("enumerate", body), Some(table))
            }
            Command::Genus { l, branch_count } => {
                let g = covering::genus(*l, *branch_count).map_err(|e| e.to_string())?;
                let body = json!({ "l": l, "branch_count": branch_count, "genus": g });
                (EXIT_OK, document("genus", body), None)
            }
            Command::Cover { l, p, exponents, mu, seeds } => {
                let (spec, orbits) = match (exponents, mu, seeds) {
                    (Some(ex), _, _) => (CoverSpec::new(*l, ex.clone(), *p), None),
                    (None, Some(mu), Some(seeds)) => {
                        let c = covering::orbit_character(*l, *mu, seeds).map_err(|e| e.to_string())?;
                        (c.cover_spec(*p), Some(c))
                    }
                    _ => unreachable!("validated"),
                };
                let report = covering::validate_cover(&spec).map_err(|e| e.to_string())?;
                let mut body = to_value(&report);
                if let Some(c) = orbits {
                    body["orbits"] = to_value(&c);
                }
                (EXIT_OK, document("cover", body), None)
            }
            Command::Monodromy(a) => {
                let rep = cover_rep(a.l, a.p, a.r).map_err(|e| e.to_string())?;
                let form = invariant_form(&rep).map_err(|e| e.to_string())?;
                let dets: Vec<Value> = rep
                    .pure_gen_images
                    .iter()
                    .map(|(&(i, j), m)| json!({ "i": i, "j": j, "det": to_value(&m.det()) }))
                    .collect();
                let pure: Vec<Value> = rep
                    .pure_gen_images
                    .iter()
                    .map(|(&(i, j), m)| json!({ "i": i, "j": j, "matrix": to_value(m) }))
                    .collect();
                let body = json!({
                    "l": rep.l, "p": rep.p, "r": rep.r, "e": rep.e,
                    "dimension": rep.dim(),
                    "quotient": rep.quotient,
                    "t": to_value(&rep.t),
                    "gen_images": to_value(&rep.gen_images),
                    "pure_gen_images": pure,
                    "pure_determinants": dets,
                    "form": to_value(&form),
                });
                (EXIT_OK, document("monodromy", body), None)
            }
            Command::VerifyImage { params, bfs_cap: flag } => {
                let cap = bfs_cap(*flag)?;
                let report = verify_image(params.l, params.p, params.r, cap).map_err(|e| e.to_string())?;
                (EXIT_OK, document("verify-image", to_value(&report)), None)
            }
            Command::V2Lemma { p, e } => {
                let r = arith::check_v2_lemma(*p, *e).map_err(|e| e.to_string())?;
                let code = if r.holds { EXIT_OK } else { EXIT_ERROR };
                (code, document("v2-lemma", to_value(&r)), None)
            }
            Command::Selftest { mutate } => {
                let outcomes = checks::selftest(mutate.unwrap_or_default());
                let ok = outcomes.iter().all(|o| o.status != checks::Status::Fail);
                let table = render::selftest_table(&outcomes);
                let body = json!({ "passed": ok, "checks": to_value(&outcomes) });
                (if ok { EXIT_OK } else { EXIT_ERROR }, document("selftest", body), Some(table))
            }
        })
    })();
    match result {
        Ok((code, doc, table)) => Outcome {
            code,
            stdout: render::render(fmt, &doc, table.as_ref()),
            stderr: String::new(),
        },
        Err(msg) => Outcome::error(EXIT_ERROR, format!("error: {msg}\n")),
    }
}
