//! Command-line front end: parses arguments, reads the JSON input files, runs
//! the engines and renders a canonical payload with an exit code.

pub mod ops;
pub mod text;

use std::ffi::OsString;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use twuality::multimatroid::{self, lift_with_cap, orbit_via_lift_with_cap, LIFT_CAP, MULTIMATROID_CHECK_CAP};
use twuality::orbit::{
    self, orbit_with_cap, stabilizer_search_with_cap, FULL_ORBIT_CAP, IOTA_ORBIT_CAP,
};
use twuality::ribbon::{
    split_components, transition_matroid_with_cap, verify_transition_lift_with_cap,
    TRANSITION_MATROID_CAP, VERIFY_CAP,
};
use twuality::set_system::DEFAULT_VF_SAFE_CAP;
use twuality::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "twuality", version, about = "Twist, loop complement and dual-twist calculus on set systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Override the ground-set budget of whichever engine the command runs.
    #[arg(long, global = true, value_name = "N")]
    max_n: Option<usize>,
    /// Worker threads for the parallel engines (output does not depend on it).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Proper, normal, delta-matroid and vf-safe report with witnesses.
    Check { file: PathBuf },
    /// Apply flips and relabellings, left to right.
    Apply {
        file: PathBuf,
        /// e.g. "*{1,2} +3 (1 2) [2,1,3]"
        #[arg(long, allow_hyphen_values = true)]
        ops: String,
    },
    /// Orbit under the full group, or under flips only with --iota.
    Orbit {
        file: PathBuf,
        #[arg(long)]
        iota: bool,
    },
    /// Non-trivial stabilizer elements.
    Selftwual {
        file: PathBuf,
        /// Only uniform flip vectors with the identity permutation.
        #[arg(long)]
        uniform_only: bool,
    },
    /// Conjugate a stabilizer (gvec, mu) into the uniform (g...g, mu).
    Uniformize {
        file: PathBuf,
        #[arg(long)]
        gvec: String,
        #[arg(long)]
        mu: String,
        #[arg(long = "g")]
        g: String,
    },
    /// Lift a vf-safe delta-matroid to a tight 3-matroid.
    Lift {
        file: PathBuf,
        #[arg(long)]
        tau: Option<String>,
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Read a set system back out of a 3-matroid.
    Extract {
        file: PathBuf,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        sigma: String,
    },
    /// Multimatroid axioms and tightness.
    MmCheck { file: PathBuf },
    /// The orbit computed through extractions of the lift.
    OrbitViaLift {
        file: PathBuf,
        #[arg(long)]
        iota: bool,
        #[arg(long)]
        tau: Option<String>,
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Ribbon-graph commands.
    #[command(subcommand)]
    Ribbon(RibbonCommand),
}

#[derive(Subcommand, Debug)]
enum RibbonCommand {
    /// The delta-matroid of spanning quasi-trees.
    Dm { file: PathBuf },
    /// The medial graph with its component counts and transition matroid.
    Medial { file: PathBuf },
    /// Compare the transition matroid of the medial graph with the lift.
    #[command(name = "verify-t63")]
    VerifyT63 { file: PathBuf },
}

/// Exit code with the text destined for standard output and standard error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Invalid(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget { .. } => Failure::Budget(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(Value, bool), Failure>;

pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult { code: EXIT_INVALID, stdout: String::new(), stderr: text }
            } else {
                CommandResult { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let outcome = match cli.threads {
        Some(0) => Err(Failure::Invalid("--threads must be positive".into())),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Failure::Invalid(format!("thread pool: {e}"))),
        },
        None => execute(&cli),
    };
    match outcome {
        Ok((payload, verified)) => {
            let stdout = match cli.format {
                Format::Json => format!("{payload}\n"),
                Format::Text => text::render(&payload),
            };
            if verified {
                CommandResult { code: EXIT_OK, stdout, stderr: String::new() }
            } else {
                CommandResult {
                    code: EXIT_COUNTEREXAMPLE,
                    stdout,
                    stderr: "counterexample found\n".into(),
                }
            }
        }
        Err(Failure::Invalid(msg)) => CommandResult {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Budget(msg)) => CommandResult {
            code: EXIT_BUDGET,
            stdout: String::new(),
            stderr: format!("error: {msg} (raise it with --max-n)\n"),
        },
    }
}

fn execute(cli: &Cli) -> Outcome {
    let cap = |default: usize| cli.max_n.unwrap_or(default);
    let value = match &cli.command {
        Command::Check { file } => check(&read(file)?, cap(DEFAULT_VF_SAFE_CAP))?,
        Command::Apply { file, ops } => {
            let d: SetSystem = read(file)?;
            let ops = ops::parse_ops(ops, d.n()).map_err(Failure::Invalid)?;
            json!(ops::compose(&ops, d.n()).act(&d)?)
        }
        Command::Orbit { file, iota } => {
            let mode = orbit_mode(*iota);
            let default = if *iota { IOTA_ORBIT_CAP } else { FULL_ORBIT_CAP };
            json!(orbit_with_cap(&read(file)?, mode, cap(default))?)
        }
        Command::Selftwual { file, uniform_only } => {
            let d: SetSystem = read(file)?;
            let (mode, default, name) = if *uniform_only {
                (StabilizerMode::Uniform, orbit::STABILIZER_UNIFORM_CAP, "uniform")
            } else {
                (StabilizerMode::All, orbit::STABILIZER_ALL_CAP, "all")
            };
            let hits = stabilizer_search_with_cap(&d, mode, cap(default))?;
            json!({ "system": d, "mode": name, "count": hits.len(), "stabilizers": hits })
        }
        Command::Uniformize { file, gvec, mu, g } => {
            let d: SetSystem = read(file)?;
            let gvec = FlipVector::parse(gvec)?;
            let mu = parse_perm(mu, d.n())?;
            let g: Flip = g.parse()?;
            json!(uniformize(&d, &gvec, &mu, g)?)
        }
        Command::Lift { file, tau, sigma } => {
            let d: SetSystem = read(file)?;
            let (tau, sigma) = lift_frame(tau.as_deref(), sigma.as_deref(), d.n())?;
            json!(lift_with_cap(&d, &tau, &sigma, cap(LIFT_CAP))?)
        }
        Command::Extract { file, tau, sigma } => {
            let z: Multimatroid = read(file)?;
            let (tau, sigma) = lift_frame(Some(tau), Some(sigma), z.n())?;
            json!(extract(&z, &tau, &sigma)?)
        }
        Command::MmCheck { file } => {
            let z: Multimatroid = read(file)?;
            let limit = cap(MULTIMATROID_CHECK_CAP);
            let axioms = z.is_multimatroid_with_cap(limit)?;
            let tight = if z.bases().iter().all(|b| b.is_total(z.n())) {
                Some(z.is_tight_with_cap(limit)?)
            } else {
                None
            };
            json!({ "n": z.n(), "bases": z.bases().len(), "multimatroid": axioms, "tight": tight })
        }
        Command::OrbitViaLift { file, iota, tau, sigma } => {
            let d: SetSystem = read(file)?;
            let (tau, sigma) = lift_frame(tau.as_deref(), sigma.as_deref(), d.n())?;
            let mode = orbit_mode(*iota);
            let default = if *iota {
                multimatroid::ORBIT_VIA_LIFT_IOTA_CAP
            } else {
                multimatroid::ORBIT_VIA_LIFT_FULL_CAP
            };
            let elements = orbit_via_lift_with_cap(&d, &tau, &sigma, mode, cap(default))?;
            json!({ "mode": mode, "size": elements.len(), "elements": elements })
        }
        Command::Ribbon(RibbonCommand::Dm { file }) => json!(delta_matroid_of(&read(file)?)?),
        Command::Ribbon(RibbonCommand::Medial { file }) => {
            let g: RibbonGraph = read(file)?;
            medial_report(&g, cap(TRANSITION_MATROID_CAP))?
        }
        Command::Ribbon(RibbonCommand::VerifyT63 { file }) => {
            let check = verify_transition_lift_with_cap(&read(file)?, cap(VERIFY_CAP))?;
            let equal = check.equal;
            return Ok((json!(check), equal));
        }
    };
    Ok((value, true))
}

fn check(d: &SetSystem, vf_cap: usize) -> Result<Value> {
    let dm = d.is_delta_matroid();
    let vf = d.vf_safe_report(vf_cap)?;
    let counterexample = vf.counterexample.map(|(path, system, witness)| {
        let flips: Vec<String> = path.iter().map(|(g, i)| format!("{g}{i}")).collect();
        json!({ "flips": flips, "system": system, "witness": witness })
    });
    let loops = if dm.is_valid() {
        let classes = (1..=d.n())
            .map(|i| Ok(json!({ "element": i, "class": d.classify_element(i)? })))
            .collect::<Result<Vec<_>>>()?;
        Some(classes)
    } else {
        None
    };
    Ok(json!({
        "n": d.n(),
        "sets": d.len(),
        "proper": d.is_proper(),
        "normal": d.is_normal(),
        "delta_matroid": dm,
        "vf_safe": { "safe": vf.safe, "visited": vf.visited, "counterexample": counterexample },
        "ribbon_loops": loops,
    }))
}

fn medial_report(g: &RibbonGraph, cap: usize) -> Result<Value> {
    let fm = medial(g);
    let m = fm.vertex_count();
    let all_black = split_components(&fm, SubTransversal::from_choice(&vec![1; m])?)?;
    let all_white = split_components(&fm, SubTransversal::from_choice(&vec![2; m])?)?;
    Ok(json!({
        "medial": fm,
        "components": fm.components(),
        "all_black": all_black,
        "all_white": all_white,
        "vertices": g.vertex_count(),
        "boundary_components": g.boundary_components(),
        "transition_matroid": transition_matroid_with_cap(&fm, cap)?,
    }))
}

fn orbit_mode(iota: bool) -> OrbitMode {
    if iota {
        OrbitMode::Iota
    } else {
        OrbitMode::Full
    }
}

fn read<T: DeserializeOwned>(path: &Path) -> std::result::Result<T, Failure> {
    let mut text = String::new();
    let io = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(drop)
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    io.map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn parse_perm(text: &str, n: usize) -> Result<Perm> {
    match text.trim() {
        "id" | "iota" | "ι" => Ok(Perm::identity(n)),
        t if t.starts_with('[') || t.starts_with('(') => Perm::parse(t, Some(n)),
        t => Perm::parse(&format!("[{t}]"), Some(n)),
    }
}

/// Triple and projection, defaulting to the reference triple and the identity.
/// A triple is `reference`, inline JSON (`{"roles": ...}` or the bare roles
/// array) or a path to a JSON file.
fn lift_frame(tau: Option<&str>, sigma: Option<&str>, n: usize) -> Result<(TransversalTriple, Projection)> {
    let tau = match tau.map(str::trim) {
        None | Some("reference") => TransversalTriple::reference(n),
        Some(t) => {
            let text = if t.starts_with('{') || t.starts_with('[') {
                t.to_string()
            } else {
                std::fs::read_to_string(t).map_err(|e| Error::Validation(format!("{t}: {e}")))?
            };
            let text = if text.trim_start().starts_with('[') {
                format!("{{\"roles\": {text}}}")
            } else {
                text
            };
            serde_json::from_str(&text).map_err(|e| Error::Validation(format!("triple: {e}")))?
        }
    };
    if tau.n() != n {
        return Err(Error::Validation(format!("triple has {} classes, expected {n}", tau.n())));
    }
    let sigma = match sigma {
        None => Projection::identity(n),
        Some(s) => Projection::new(parse_perm(s, n)?),
    };
    Ok((tau, sigma))
}
