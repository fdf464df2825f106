use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use germkit_core::io::{monoid_to_json, parse_coarse_space, parse_monoid};
use germkit_core::suite::{run_suite, Suite};
use germkit_core::{
    build_germ_groupoid, partial_translations, symmetric_inverse_monoid, Caps, PointSet,
};
use sha2::{Digest, Sha256};

const EXIT_FAIL: u8 = 1;
const EXIT_CAP: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "germkit",
    version,
    about = "Germ groupoids of finite Boolean inverse monoids"
)]
struct Cli {
    /// Largest monoid to materialize (default 2000, or $GERMKIT_CAP_ELEMENTS)
    #[arg(long, global = true)]
    cap_elements: Option<usize>,
    /// Largest unit space for bisection enumeration
    #[arg(long, global = true)]
    cap_units: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a monoid file
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run verification suites on a monoid file
    Verify {
        monoid: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Also write the report as JSON
        #[arg(long)]
        json_report: Option<PathBuf>,
        /// Append per-phase wall-clock timings (not deterministic)
        #[arg(long)]
        timings: bool,
    },
    /// Build G(S) and export it
    Export {
        monoid: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// I(X) on N points
    Symmetric { n: usize, out: PathBuf },
    /// Partial translations of a coarse-space file
    Coarse { space: PathBuf, out: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Axioms,
    Lemmas,
    Roundtrip,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Axioms => Suite::Axioms,
            SuiteArg::Lemmas => Suite::Lemmas,
            SuiteArg::Roundtrip => Suite::Roundtrip,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
    /// Atoms and character count of E(S)
    Atoms,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("germkit: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<germkit_core::Error>() {
        Some(germkit_core::Error::Size { .. }) => EXIT_CAP,
        Some(germkit_core::Error::Structure(_)) | Some(germkit_core::Error::NotComposable(_)) => {
            EXIT_FAIL
        }
        _ => EXIT_INPUT,
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let mut caps = Caps::from_env();
    if let Some(n) = cli.cap_elements {
        caps.elements = n;
    }
    if let Some(n) = cli.cap_units {
        caps.units = n;
    }
    match cli.command {
        Command::Gen { kind } => {
            let (monoid, out) = match kind {
                GenKind::Symmetric { n, out } => {
                    let m = symmetric_inverse_monoid(PointSet::new(n)?, &caps)?.into_monoid();
                    (m, out)
                }
                GenKind::Coarse { space, out } => {
                    let c = parse_coarse_space(&read(&space)?)?;
                    (partial_translations(&c, &caps)?.into_monoid(), out)
                }
            };
            write(&out, &monoid_to_json(&monoid))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            monoid,
            suite,
            json_report,
            timings,
        } => verify(
            &monoid,
            suite.into(),
            json_report.as_deref(),
            timings,
            &caps,
        ),
        Command::Export {
            monoid,
            format,
            out,
        } => {
            let m = parse_monoid(&read(&monoid)?, &caps)?;
            let gg = build_germ_groupoid(&m, &caps)?;
            let text = match format {
                Format::Dot => gg.groupoid().to_dot(),
                Format::Json => pretty(&gg.groupoid().export())?,
                Format::Atoms => pretty(&gg.algebra().export())?,
            };
            write(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn verify(
    path: &Path,
    suite: Suite,
    json_report: Option<&Path>,
    timings: bool,
    caps: &Caps,
) -> anyhow::Result<ExitCode> {
    let input = read(path)?;
    let digest = hex::encode(Sha256::digest(input.as_bytes()));
    let command: Vec<String> = std::env::args().skip(1).collect();
    let tool = format!("germkit {}", env!("CARGO_PKG_VERSION"));

    let mut phases = Vec::new();
    let start = Instant::now();
    let parsed = parse_monoid(&input, caps);
    phases.push(("parse", start.elapsed()));
    let (elements, reports) = match parsed {
        Ok(m) => {
            let start = Instant::now();
            let reports = run_suite(&m, suite, caps)?;
            phases.push(("verify", start.elapsed()));
            (Some(m.len()), reports)
        }
        // a well-formed table that violates the inverse-monoid laws is a verification failure
        Err(germkit_core::Error::Structure(msg)) => {
            let mut r = germkit_core::Report::new("Input monoid");
            r.push(germkit_core::Check::fail(
                "finite inverse monoid with 0 ≠ 1",
                "checked on load",
                msg,
            ));
            (None, vec![r])
        }
        Err(e) => return Err(e.into()),
    };
    let passed = reports.iter().all(|r| r.passed());
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();

    let mut text = format!(
        "{tool}\ncommand: {}\ninput sha256: {digest}\n",
        command.join(" ")
    );
    if let Some(n) = elements {
        text.push_str(&format!("elements: {n}\n"));
    }
    for r in &reports {
        text.push('\n');
        text.push_str(&r.render_text());
    }
    let failed = reports.iter().flat_map(|r| r.failures()).count();
    text.push_str(&format!(
        "\nresult: {} ({} checks, {failed} failed)\n",
        if passed { "PASS" } else { "FAIL" },
        checks
    ));
    if timings {
        text.push_str("\n-- timings --\n");
        for (phase, d) in &phases {
            text.push_str(&format!("{phase}: {:.3} ms\n", d.as_secs_f64() * 1e3));
        }
    }
    print!("{text}");

    if let Some(out) = json_report {
        let mut doc = serde_json::json!({
            "tool": tool,
            "command": command,
            "input_sha256": digest,
            "elements": elements,
            "passed": passed,
            "reports": reports,
        });
        if timings {
            doc["timings_ms"] = phases
                .iter()
                .map(|(p, d)| (p.to_string(), serde_json::json!(d.as_secs_f64() * 1e3)))
                .collect::<serde_json::Map<_, _>>()
                .into();
        }
        write(out, &pretty(&doc)?)?;
    }
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    })
}

fn pretty<T: serde::Serialize>(v: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
