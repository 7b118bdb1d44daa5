use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qrdesign::code::{
    extended_quadratic_residue_code, parse_labels, quadratic_residue_code, DEFAULT_BUDGET,
};
use qrdesign::designs::{CodeKind, DesignReport, Status, TVerdict, Witness};
use qrdesign::enumerators::{jacobi, HarmonicWeightEnumerator, JacobiPolynomial};
use qrdesign::format::{generator_text, parse_generator_text, CodeJson};
use qrdesign::reproduce::reproduce_study;
use qrdesign::study::{delta_s_profile, QrStudy};
use qrdesign::{EnumOptions, Error, LinearCode};

/// println! that stops quietly when stdout is closed (e.g. piped into head).
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

const EXIT_BUDGET: u8 = 2;
const EXIT_CHECK: u8 = 3;
const EXIT_INPUT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "qrdesign",
    version,
    about = "Extended quadratic residue codes, Jacobi polynomials and 3-designs"
)]
struct Cli {
    /// Largest code dimension k for which all 2^k codewords are enumerated.
    #[arg(long, global = true, env = "QRDESIGN_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Worker threads for enumeration (0 = available parallelism).
    #[arg(long, global = true, env = "QRDESIGN_THREADS", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    PaperStyle,
}

#[derive(Args)]
struct PrimeArg {
    /// Prime p; the code has length p (or p + 1 when extended).
    #[arg(long)]
    p: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Build a QR code and write its generator matrix.
    Build {
        #[command(flatten)]
        prime: PrimeArg,
        /// Append the overall parity coordinate (label inf).
        #[arg(long)]
        extended: bool,
        /// Output file; the matrix goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Jacobi polynomial of the extended code at a coordinate set T.
    Jacobi {
        #[command(flatten)]
        prime: PrimeArg,
        /// Comma-separated labels, e.g. 0,1,inf.
        #[arg(long = "T", value_name = "LABELS")]
        set: String,
        /// Use the dual code.
        #[arg(long)]
        dual: bool,
        #[arg(long, value_enum, default_value_t = Format::PaperStyle)]
        format: Format,
    },
    /// Harmonic weight enumerator for the invariant degree-3 harmonic function.
    Harmonic {
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long)]
        dual: bool,
        #[arg(long, value_enum, default_value_t = Format::PaperStyle)]
        format: Format,
    },
    /// t-design verdicts for shells of the extended code.
    Design {
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long, default_value_t = 3)]
        t: usize,
        /// Shell weight to check.
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        shell: Option<usize>,
        /// Check every nonempty shell.
        #[arg(long)]
        all: bool,
        /// Use the union of the shells of the code and its dual.
        #[arg(long, conflicts_with = "dual")]
        union: bool,
        #[arg(long)]
        dual: bool,
        /// Decide the strength-t verdict by scanning every t-subset.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run every named check for the extended code; exits 3 if any fails.
    Reproduce {
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The two PSL(2, p) orbits on 3-subsets of the projective line.
    Orbits {
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// (delta, s): strengths over all nontrivial shells.
    Profile {
        /// Prime p = 1 mod 8 (extended QR code).
        #[arg(long, required_unless_present = "code", conflicts_with = "code")]
        p: Option<u64>,
        /// Generator matrix file in the text format, instead of --p.
        #[arg(long)]
        code: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        t_max: usize,
        #[arg(long)]
        union: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } | Error::ScanTooLarge { .. } => EXIT_BUDGET,
        Error::Inconsistent(_) => EXIT_CHECK,
        _ => EXIT_INPUT,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = EnumOptions {
        budget: cli.budget,
        threads: if cli.threads == 0 {
            EnumOptions::default().threads
        } else {
            cli.threads
        },
    };
    match run(cli.command, opts) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_CHECK)
        }
    }
}

fn run(command: Command, opts: EnumOptions) -> Result<(), Failure> {
    match command {
        Command::Build {
            prime,
            extended,
            out,
            format,
        } => build(prime.p, extended, out, format, opts),
        Command::Jacobi {
            prime,
            set,
            dual,
            format,
        } => {
            let mut code = extended_quadratic_residue_code(prime.p)?;
            if dual {
                code = code.dual();
            }
            let set = parse_labels(&set)?;
            print_jacobi(&jacobi(&code, &set, opts)?, format)
        }
        Command::Harmonic {
            prime,
            dual,
            format,
        } => {
            let s = QrStudy::new(prime.p, opts)?;
            let h = if dual {
                s.dual_harmonic_enumerator()?
            } else {
                s.harmonic_enumerator()?
            };
            print_harmonic(&s, &h, format)
        }
        Command::Design {
            prime,
            t,
            shell,
            all,
            union,
            dual,
            exhaustive,
            format,
        } => {
            let s = QrStudy::new(prime.p, opts)?;
            let kind = match (union, dual) {
                (true, _) => CodeKind::Union,
                (_, true) => CodeKind::Dual,
                _ => CodeKind::Code,
            };
            let mut reports = match shell {
                Some(l) => vec![s.shell_report(kind, l, t)?],
                None if all => s.nonempty_reports(kind, t)?,
                None => unreachable!("clap requires --shell or --all"),
            };
            if exhaustive {
                for r in reports.iter_mut().filter(|r| !r.is_empty() && t <= r.shell) {
                    let status = s.exhaustive(kind, r.shell, t)?;
                    if let Some(v) = r.verdicts.iter_mut().find(|v| v.t == t) {
                        *v = TVerdict { t, status };
                    }
                }
            }
            print_reports(&reports, t, format)
        }
        Command::Reproduce { prime, format } => {
            let s = QrStudy::new(prime.p, opts)?;
            let checks = reproduce_study(&s)?;
            if format == Format::Json {
                out!("{}", serde_json::to_string_pretty(&checks)?);
            } else {
                for c in &checks {
                    out!("{}", c.line());
                }
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                return Err(Failure::Check(format!(
                    "{failed} of {} checks failed",
                    checks.len()
                )));
            }
            out!("all {} checks passed", checks.len());
            Ok(())
        }
        Command::Orbits { prime, format } => {
            let orbits = qrdesign::projective::OrbitPartition::new(prime.p)?;
            if format == Format::Json {
                out!("{}", serde_json::to_string(&orbits)?);
            } else {
                for (i, (rep, size)) in orbits.representatives.iter().zip(orbits.sizes).enumerate()
                {
                    let rep: Vec<String> = rep.iter().map(ToString::to_string).collect();
                    out!(
                        "orbit {}: representative {{{}}}, {} triples",
                        i + 1,
                        rep.join(","),
                        size
                    );
                }
            }
            Ok(())
        }
        Command::Profile {
            p,
            code,
            t_max,
            union,
            format,
        } => {
            let profile = match (p, code) {
                (Some(p), _) => {
                    let kind = if union {
                        CodeKind::Union
                    } else {
                        CodeKind::Code
                    };
                    QrStudy::new(p, opts)?.profile(kind, t_max)?
                }
                (None, Some(path)) => {
                    if union {
                        return Err(Failure::Io("--union needs --p".into()));
                    }
                    let code = parse_generator_text(&fs::read_to_string(path)?)?;
                    delta_s_profile(&code, t_max, opts)?
                }
                (None, None) => unreachable!("clap requires --p or --code"),
            };
            if format == Format::Json {
                out!("{}", serde_json::to_string_pretty(&profile)?);
            } else {
                for r in &profile.shells {
                    out!("{}", r.summary_line());
                }
                let show = |v: Option<usize>| v.map_or("-".to_string(), |t| t.to_string());
                out!(
                    "delta = {}, s = {} (t checked up to {})",
                    show(profile.delta),
                    show(profile.s),
                    t_max
                );
            }
            Ok(())
        }
    }
}

fn build(
    p: u64,
    extended: bool,
    out: Option<PathBuf>,
    format: Format,
    opts: EnumOptions,
) -> Result<(), Failure> {
    let code: LinearCode = if extended {
        extended_quadratic_residue_code(p)?
    } else {
        quadratic_residue_code(p)?
    };
    let matrix = match format {
        Format::Json => serde_json::to_string_pretty(&CodeJson::from_code(&code))? + "\n",
        _ => generator_text(&code),
    };
    let mut summary = vec![format!("n={}, k={}", code.length(), code.dimension())];
    let weights = code.weight_distribution(opts);
    if let Ok(w) = &weights {
        let parts: Vec<String> = w
            .support()
            .iter()
            .map(|&l| format!("{l}:{}", w.count(l)))
            .collect();
        summary.push(format!("weights {}", parts.join(" ")));
    }
    match out {
        Some(path) => {
            fs::write(&path, matrix)?;
            summary.iter().for_each(|l| out!("{l}"));
            out!("wrote {}", path.display());
        }
        None => {
            out!("{}", matrix.trim_end());
            summary.iter().for_each(|l| eprintln!("{l}"));
        }
    }
    weights.map(|_| ()).map_err(Failure::Lib)
}

fn print_jacobi(j: &JacobiPolynomial, format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => out!("{}", serde_json::to_string(&j.to_json())?),
        Format::PaperStyle => out!("{}", j.to_poly().to_monomial_string()),
        Format::Text => {
            out!("# m0 m1 n0 n1 coeff  (w^m0 z^m1 x^n0 y^n1)");
            for t in j.terms() {
                out!("{} {} {} {} {}", t.m0, t.m1, t.n0, t.n1, t.coeff);
            }
        }
    }
    Ok(())
}

fn print_harmonic(
    s: &QrStudy,
    h: &HarmonicWeightEnumerator,
    format: Format,
) -> Result<(), Failure> {
    match format {
        Format::Json => {
            #[derive(serde::Serialize)]
            struct Out<'a> {
                f: &'a qrdesign::enumerators::HarmonicFunction3,
                enumerator: &'a HarmonicWeightEnumerator,
            }
            out!(
                "{}",
                serde_json::to_string(&Out {
                    f: &s.harmonic,
                    enumerator: h
                })?
            );
        }
        Format::PaperStyle => {
            let (poly, den) = h.to_poly();
            if den == 1 {
                out!("{}", poly.to_monomial_string());
            } else {
                out!("({}) / {den}", poly.to_monomial_string());
            }
        }
        Format::Text => {
            out!(
                "# f = {} on orbit 1, {} on orbit 2",
                s.harmonic.values[0],
                s.harmonic.values[1]
            );
            for (l, c) in h.coeff.iter().enumerate().filter(|(_, c)| **c != 0.into()) {
                out!("{l} {c}");
            }
        }
    }
    Ok(())
}

fn witness_text(w: &Witness, t: usize) -> String {
    match w {
        Witness::Orbits { covering, avoiding } => format!(
            "covering counts differ between the two triple orbits: {} vs {} (avoiding: {} vs {})",
            covering[0], covering[1], avoiding[0], avoiding[1]
        ),
        Witness::Subsets {
            first,
            first_count,
            second,
            second_count,
        } => {
            let show = |v: &[qrdesign::Label]| {
                v.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            };
            format!(
                "{{{}}} lies in {first_count} blocks, {{{}}} in {second_count}",
                show(first),
                show(second)
            )
        }
        Witness::NonIntegralLambda { numer, denom } => {
            format!("lambda_{t} would be {numer}/{denom}, not an integer")
        }
        Witness::Implied { t } => format!("not a {t}-design"),
    }
}

fn print_reports(reports: &[DesignReport], t: usize, format: Format) -> Result<(), Failure> {
    if format == Format::Json {
        let json = match reports {
            [one] => serde_json::to_string_pretty(one)?,
            many => serde_json::to_string_pretty(many)?,
        };
        out!("{json}");
        return Ok(());
    }
    for r in reports {
        let line = match r.verdict(t) {
            Some(Status::Design { lambda }) => {
                format!("{}-({},{},{}) design", t, r.n, r.shell, lambda)
            }
            Some(Status::NotDesign(w)) => {
                format!("not a {t}-design; witness: {}", witness_text(w, t))
            }
            Some(Status::EmptyShell) => "empty shell".to_string(),
            None => format!("no verdict for t = {t}"),
        };
        out!("l={}: blocks={}: {line}", r.shell, r.blocks);
    }
    Ok(())
}
