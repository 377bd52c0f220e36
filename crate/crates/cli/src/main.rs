//! `vkc`: command-line front end for virtual knot diagrams and cobordism
//! certificates.
//!
//! Exit codes: 0 success, 1 search exhausted or claim not established,
//! 2 invalid certificate, 3 parse or usage error.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vkc::{
    canonical_form, carter_report, kishino, parse_gauss, reduce, render_gauss, search_equivalent,
    search_slice, transport_closure_to_long, transport_long_to_closure, validate_certificate_with,
    Certificate, Claim, GaussDiagram, MirrorMode, MoveRules, R3Mode, SearchBudget, SearchOutcome,
    SearchStatus,
};

const OK: u8 = 0;
const NOT_ESTABLISHED: u8 = 1;
const INVALID: u8 = 2;
const USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "vkc",
    version,
    about = "Virtual knot diagrams, Carter genus and concordance certificates"
)]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Output::Human, global = true)]
    output: Output,
    /// Only admit R3 moves of one fixed orientation pattern.
    #[arg(long, global = true)]
    strict_r3: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Human,
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClaimArg {
    Concordance,
    SliceDisk,
}

impl From<ClaimArg> for Claim {
    fn from(c: ClaimArg) -> Self {
        match c {
            ClaimArg::Concordance => Claim::Concordance,
            ClaimArg::SliceDisk => Claim::SliceDisk,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Switch,
    Reflect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransportArg {
    /// Long certificate to a certificate on the closures.
    ToClosure,
    /// Certificate on a closure to one on the long knot given by `--long`.
    ToLong,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DemoName {
    Kishino,
}

#[derive(Args, Debug)]
struct DiagramArg {
    /// A code inline (`O1+U1+`, `()`, `L:O1-U1-`), a file holding one, or `-`
    /// for standard input.
    diagram: String,
}

#[derive(Args, Debug, Clone)]
struct BudgetArgs {
    #[arg(long)]
    max_crossings: Option<usize>,
    #[arg(long)]
    max_components: Option<usize>,
    #[arg(long)]
    max_depth: Option<usize>,
    #[arg(long)]
    max_saddles: Option<usize>,
    #[arg(long)]
    max_births: Option<usize>,
    #[arg(long)]
    max_deaths: Option<usize>,
    #[arg(long)]
    max_nodes: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
    /// Write the certificate here instead of standard output.
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a code and print it in normal form.
    Parse(DiagramArg),
    /// Crossing statistics and Carter surface data.
    Info(DiagramArg),
    /// Canonical key (hex).
    Canon(DiagramArg),
    /// Replay a certificate and print every diagram it passes through.
    Apply { certificate: PathBuf },
    /// Replay a certificate and check it against a claim.
    Validate {
        certificate: PathBuf,
        #[arg(long, value_enum, default_value_t = ClaimArg::Concordance)]
        claim: ClaimArg,
    },
    /// Connected sum of two long diagrams (left then right).
    Sum { left: String, right: String },
    /// Round closure of a long diagram.
    Closure(DiagramArg),
    /// Open a round component at an arc into the long strand.
    Cut {
        diagram: String,
        #[arg(long)]
        arc: usize,
        #[arg(long, default_value_t = 0)]
        component: usize,
    },
    /// Mirror image followed by reversal.
    Inverse(DiagramArg),
    /// Switch every crossing, or reflect a long diagram.
    Mirror {
        diagram: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Switch)]
        mode: ModeArg,
    },
    /// Reverse the orientation of every component.
    Reverse(DiagramArg),
    /// Move a certificate between a long knot and its closure.
    Transport {
        certificate: PathBuf,
        #[arg(long, value_enum)]
        direction: TransportArg,
        /// The long knot whose closure starts the certificate (for `to-long`).
        #[arg(long)]
        long: Option<String>,
    },
    /// Search for a concordance from a round knot to the unknot.
    SearchSlice {
        diagram: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Search for an R-move sequence between two diagrams.
    SearchEquiv {
        from: String,
        to: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// R-move reduction: fewest crossings, least Carter genus.
    Reduce {
        diagram: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Replay a bundled example.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
        #[arg(long, value_enum, default_value_t = ClaimArg::Concordance)]
        claim: ClaimArg,
    },
}

struct Failed {
    code: u8,
    message: String,
}

fn usage(message: impl std::fmt::Display) -> Failed {
    Failed {
        code: USAGE,
        message: message.to_string(),
    }
}

type Outcome = Result<u8, Failed>;

struct Ctx {
    output: Output,
    rules: MoveRules,
}

impl Ctx {
    fn records(&self) -> bool {
        self.output == Output::Records
    }
}

fn main() -> ExitCode {
    // exit quietly when the reader of stdout goes away
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    let ctx = Ctx {
        output: cli.output,
        rules: MoveRules {
            r3: if cli.strict_r3 {
                R3Mode::Strict
            } else {
                R3Mode::Oriented
            },
        },
    };
    match run(&ctx, cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("vkc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_source(arg: &str) -> Result<String, Failed> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    if Path::new(arg).is_file() {
        return fs::read_to_string(arg).map_err(|e| usage(format!("{arg}: {e}")));
    }
    Ok(arg.to_string())
}

fn diagram(arg: &str) -> Result<GaussDiagram, Failed> {
    let text = read_source(arg)?;
    // files may carry comment lines; an inline code is a single line
    let code = if text.contains('\n') {
        text.lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .unwrap_or("")
    } else {
        text.trim()
    };
    parse_gauss(code).map_err(|e| usage(format!("`{code}`: {e}")))
}

fn certificate(path: &Path) -> Result<Certificate, Failed> {
    let text = if path == Path::new("-") {
        read_source("-")?
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?
    };
    text.parse()
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn budget(ctx: &Ctx, b: &BudgetArgs) -> SearchBudget {
    let d = SearchBudget::default();
    SearchBudget {
        max_crossings: b.max_crossings.unwrap_or(d.max_crossings),
        max_components: b.max_components.unwrap_or(d.max_components),
        max_saddles: b.max_saddles.unwrap_or(d.max_saddles),
        max_births: b.max_births.unwrap_or(d.max_births),
        max_deaths: b.max_deaths.unwrap_or(d.max_deaths),
        max_nodes: b.max_nodes.unwrap_or(d.max_nodes),
        max_depth: b.max_depth.unwrap_or(d.max_depth),
        workers: b.workers.unwrap_or(d.workers).max(1),
        rules: ctx.rules,
    }
}

fn print_diagram(ctx: &Ctx, label: &str, d: &GaussDiagram) {
    if ctx.records() {
        println!("{label}={}", render_gauss(d));
    } else {
        println!("{}", render_gauss(d));
    }
}

fn run(ctx: &Ctx, command: Command) -> Outcome {
    match command {
        Command::Parse(a) => {
            print_diagram(ctx, "code", &diagram(&a.diagram)?);
            Ok(OK)
        }
        Command::Info(a) => info(&diagram(&a.diagram)?),
        Command::Canon(a) => {
            let key = canonical_form(&diagram(&a.diagram)?);
            if ctx.records() {
                println!("key={key}");
            } else {
                println!("{key}");
            }
            Ok(OK)
        }
        Command::Apply { certificate: path } => {
            let c = certificate(&path)?;
            let trail = match c.replay(&ctx.rules) {
                Ok(t) => t,
                Err((i, e)) => {
                    return Err(Failed {
                        code: INVALID,
                        message: format!("step {} ({}): {e}", i + 1, c.steps[i]),
                    })
                }
            };
            for (i, d) in trail.iter().enumerate() {
                if ctx.records() {
                    println!("step={i} code={}", render_gauss(d));
                } else if i == 0 {
                    println!("start      {}", render_gauss(d));
                } else {
                    println!("{:<10} {}", c.steps[i - 1].to_string(), render_gauss(d));
                }
            }
            Ok(OK)
        }
        Command::Validate {
            certificate: path,
            claim,
        } => validate(ctx, &certificate(&path)?, claim.into()),
        Command::Sum { left, right } => {
            let s = diagram(&left)?
                .connected_sum(&diagram(&right)?)
                .map_err(usage)?;
            print_diagram(ctx, "code", &s);
            Ok(OK)
        }
        Command::Closure(a) => {
            print_diagram(ctx, "code", &diagram(&a.diagram)?.closure().map_err(usage)?);
            Ok(OK)
        }
        Command::Cut {
            diagram: d,
            arc,
            component,
        } => {
            print_diagram(
                ctx,
                "code",
                &diagram(&d)?.cut(component, arc).map_err(usage)?,
            );
            Ok(OK)
        }
        Command::Inverse(a) => {
            print_diagram(ctx, "code", &diagram(&a.diagram)?.inverse().map_err(usage)?);
            Ok(OK)
        }
        Command::Mirror { diagram: d, mode } => {
            let mode = match mode {
                ModeArg::Switch => MirrorMode::Switch,
                ModeArg::Reflect => MirrorMode::Reflect,
            };
            print_diagram(ctx, "code", &diagram(&d)?.mirror(mode).map_err(usage)?);
            Ok(OK)
        }
        Command::Reverse(a) => {
            print_diagram(ctx, "code", &diagram(&a.diagram)?.reverse());
            Ok(OK)
        }
        Command::Transport {
            certificate: path,
            direction,
            long,
        } => {
            let c = certificate(&path)?;
            let moved = match direction {
                TransportArg::ToClosure => transport_long_to_closure(&c),
                TransportArg::ToLong => {
                    let long = long.ok_or_else(|| usage("`to-long` needs --long <diagram>"))?;
                    transport_closure_to_long(&c, &diagram(&long)?)
                }
            };
            let moved = moved.map_err(|e| Failed {
                code: INVALID,
                message: e.to_string(),
            })?;
            print!("{moved}");
            if ctx.records() {
                println!("counters {}", moved.counters());
            }
            Ok(OK)
        }
        Command::SearchSlice {
            diagram: d,
            budget: b,
        } => {
            let d = diagram(&d)?;
            if d.is_long() || d.component_count() != 1 {
                return Err(usage("search-slice needs a round knot"));
            }
            let outcome = search_slice(&d, &budget(ctx, &b));
            report_search(&outcome, b.out.as_deref())
        }
        Command::SearchEquiv {
            from,
            to,
            budget: b,
        } => {
            let outcome = search_equivalent(&diagram(&from)?, &diagram(&to)?, &budget(ctx, &b));
            report_search(&outcome, b.out.as_deref())
        }
        Command::Reduce {
            diagram: d,
            budget: b,
        } => {
            let d = diagram(&d)?;
            let r = reduce(&d, &budget(ctx, &b));
            if let Some(path) = &b.out {
                fs::write(path, r.certificate.to_string())
                    .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            }
            if ctx.records() {
                println!(
                    "best={} crossings={} genus_bound={}",
                    render_gauss(&r.best),
                    r.best.crossing_count(),
                    r.genus_bound
                );
            } else {
                if b.out.is_none() {
                    print!("{}", r.certificate);
                }
                println!(
                    "best {} ({} crossings), genus bound {}",
                    render_gauss(&r.best),
                    r.best.crossing_count(),
                    r.genus_bound
                );
            }
            println!("status={} {}", r.status, r.stats);
            Ok(OK)
        }
        Command::Demo {
            name: DemoName::Kishino,
            claim,
        } => demo_kishino(ctx, claim.into()),
    }
}

fn info(d: &GaussDiagram) -> Outcome {
    let round = if d.is_long() {
        d.closure().map_err(usage)?
    } else {
        d.clone()
    };
    let report = carter_report(&round).map_err(usage)?;
    println!(
        "crossings={} components={} writhe={} genus={}",
        d.crossing_count(),
        d.component_count(),
        d.writhe(),
        report.genus
    );
    println!("{report}");
    Ok(OK)
}

fn validate(ctx: &Ctx, c: &Certificate, claim: Claim) -> Outcome {
    let r = validate_certificate_with(c, claim, &ctx.rules);
    match &r.failure {
        None => {
            if ctx.records() {
                println!("verdict={} {}", r.verdict, r.counters);
            } else {
                println!("valid {} ({})", r.verdict, r.counters);
            }
            Ok(OK)
        }
        Some(f) => {
            if ctx.records() {
                println!("verdict={} {}", r.verdict, r.counters);
            }
            eprintln!("vkc: {claim} not established: {f}");
            Ok(if f.is_claim_shape() {
                NOT_ESTABLISHED
            } else {
                INVALID
            })
        }
    }
}

fn report_search(outcome: &SearchOutcome, out: Option<&Path>) -> Outcome {
    if let Some(c) = &outcome.certificate {
        match out {
            Some(path) => fs::write(path, c.to_string())
                .map_err(|e| usage(format!("{}: {e}", path.display())))?,
            None => print!("{c}"),
        }
    }
    println!("{}", outcome.record());
    Ok(if outcome.status == SearchStatus::Found {
        OK
    } else {
        NOT_ESTABLISHED
    })
}

fn demo_kishino(ctx: &Ctx, claim: Claim) -> Outcome {
    let c = match claim {
        Claim::Concordance => kishino::certificate(),
        Claim::SliceDisk => kishino::disk_certificate(),
    };
    let trail = c.replay(&ctx.rules).map_err(|(i, e)| Failed {
        code: INVALID,
        message: format!("bundled step {}: {e}", i + 1),
    })?;
    if ctx.records() {
        println!("code={}", kishino::code());
        for (i, d) in trail.iter().enumerate() {
            println!("step={i} code={}", render_gauss(d));
        }
    } else {
        println!("Kishino knot: {}", kishino::code());
        for (i, d) in trail.iter().enumerate() {
            let label = if i == 0 {
                "start".to_string()
            } else {
                c.steps[i - 1].to_string()
            };
            println!("  {label:<24} {}", render_gauss(d));
        }
    }
    validate(ctx, &c, claim)
}
