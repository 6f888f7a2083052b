use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use rekonfig::bounds::shortest_length_bound;
use rekonfig::exact::solve_exact;
use rekonfig::graph::verify_sequence;
use rekonfig::io;
use rekonfig::oracles::{ncl_reachable, pmr_reachable, sat_decide, SatMode};
use rekonfig::reductions::{
    e3sat_to_inte3sat, grid_draw, inte3sat_to_isr, ncl_to_isr, planarize, pmr_to_isr,
};
use rekonfig::xp::xp_vcr_solve;
use rekonfig::{Budget, Kind, RuleKind, Verdict};

#[derive(Parser)]
#[command(name = "rekonfig", version, about = "Independent set and vertex cover reconfiguration toolkit")]
struct Cli {
    /// Cap on explored states per solver call.
    #[arg(long, global = true, env = "REKONFIG_BUDGET_STATES", default_value_t = 5_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_states: u64,
    /// Wall-clock cap per solver call, in seconds.
    #[arg(long, global = true, env = "REKONFIG_BUDGET_SECS", default_value_t = 60, value_parser = clap::value_parser!(u64).range(1..))]
    max_secs: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide reachability by breadth-first search over feasible sets.
    Solve {
        instance: PathBuf,
        /// Compute a shortest sequence and report its length.
        #[arg(long)]
        shortest: bool,
        /// Write a shortest sequence here when one exists.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Decide vertex cover reconfiguration with the clique-compressed search.
    XpVcr {
        instance: PathBuf,
        /// |S| - k; taken from the instance when omitted.
        #[arg(long)]
        mu: Option<usize>,
    },
    /// Check a certificate against an instance.
    Verify {
        instance: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Compile a source problem into another format.
    Reduce {
        #[command(subcommand)]
        which: Reduce,
    },
    /// Decide a source problem directly.
    Oracle {
        #[command(subcommand)]
        which: Oracle,
    },
    /// Upper bound on shortest sequence length.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        mu: usize,
    },
}

#[derive(Subcommand)]
enum Reduce {
    /// E3-CNF to a sandwiched formula whose mixed models track satisfiability.
    Sat2int {
        cnf: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sandwiched E3-CNF to an independent set instance.
    Int2isr {
        cnf: PathBuf,
        #[arg(long, default_value_t = 1)]
        mu: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sandwiched E3-CNF to a planar independent set instance.
    Planarize {
        cnf: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// NCL machine with `config s` and `config t` to an independent set instance.
    Ncl2isr {
        ncl: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum, default_value_t = RuleArg::Ktj)]
        rule: RuleArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Perfect matching pair to an instance on the line graph.
    Pmr2isr {
        pmr: PathBuf,
        #[arg(long, value_enum, default_value_t = RuleArg::Ktj)]
        rule: RuleArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Oracle {
    /// Satisfiability by enumeration.
    Sat {
        cnf: PathBuf,
        /// Require a model with both true and false variables.
        #[arg(long)]
        mixed: bool,
    },
    /// Reachability between the two configurations of an NCL file.
    Ncl { ncl: PathBuf },
    /// Reachability between the two matchings of a PMR file.
    Pmr { pmr: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Ktj,
    Kts,
}

impl From<RuleArg> for RuleKind {
    fn from(r: RuleArg) -> RuleKind {
        match r {
            RuleArg::Ktj => RuleKind::TokenJumping,
            RuleArg::Kts => RuleKind::TokenSliding,
        }
    }
}

const YES: u8 = 0;
const NO: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verdict(yes: bool) -> u8 {
    println!("{}", if yes { "yes" } else { "no" });
    if yes {
        YES
    } else {
        NO
    }
}

fn parsed<T>(path: &Path, r: Result<T, io::ParseError>) -> anyhow::Result<T> {
    r.with_context(|| format!("{}", path.display()))
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let budget = Budget::new(cli.max_states as usize, Duration::from_secs(cli.max_secs));
    match cli.command {
        Command::Solve { instance, shortest, certificate } => {
            let inst = parsed(&instance, io::parse_instance(&read(&instance)?))?;
            let r = solve_exact(&inst, shortest || certificate.is_some(), &budget)?;
            eprintln!("explored {} states", r.explored_states);
            if let Some(seq) = &r.shortest {
                eprintln!("shortest length {}", seq.len());
                if let Some(p) = &certificate {
                    write_out(Some(p), &io::serialize_certificate(seq))?;
                }
            }
            Ok(verdict(r.reachable))
        }
        Command::XpVcr { instance, mu } => {
            let inst = parsed(&instance, io::parse_instance(&read(&instance)?))?;
            if inst.kind() != Kind::VertexCover || inst.rule().kind() != RuleKind::TokenJumping {
                bail!("xp-vcr needs a `vc ktj` instance");
            }
            let size = inst.start().len();
            let implied = size.checked_sub(inst.rule().k()).filter(|&m| m >= 1);
            let mu = match (mu, implied) {
                (Some(m), Some(i)) if m != i => bail!("--mu {m} disagrees with the instance, which implies {i}"),
                (_, None) => bail!("instance k = {} leaves no guaranteed value below size {size}", inst.rule().k()),
                (_, Some(i)) => i,
            };
            Ok(verdict(xp_vcr_solve(inst.graph(), inst.start(), inst.target(), mu, &budget)?))
        }
        Command::Verify { instance, certificate } => {
            let inst = parsed(&instance, io::parse_instance(&read(&instance)?))?;
            let seq = parsed(&certificate, io::parse_certificate(&read(&certificate)?, inst.graph().vertex_count()))?;
            let v = verify_sequence(&inst, &seq);
            if let Verdict::Reject { index, reason } = &v {
                eprintln!("step {} rejected: {reason:?}", index + 1);
            }
            Ok(verdict(v == Verdict::Accept))
        }
        Command::Reduce { which } => {
            match which {
                Reduce::Sat2int { cnf, output } => {
                    let phi = parsed(&cnf, io::parse_cnf(&read(&cnf)?))?;
                    write_out(output.as_deref(), &io::serialize_cnf(&e3sat_to_inte3sat(&phi)?))?;
                }
                Reduce::Int2isr { cnf, mu, output } => {
                    let phi = parsed(&cnf, io::parse_cnf(&read(&cnf)?))?;
                    let (inst, _) = inte3sat_to_isr(&phi, mu)?;
                    write_out(output.as_deref(), &io::serialize_instance(&inst))?;
                }
                Reduce::Planarize { cnf, output } => {
                    let phi = parsed(&cnf, io::parse_cnf(&read(&cnf)?))?;
                    let (inst, ann) = inte3sat_to_isr(&phi, 1)?;
                    let p = planarize(&inst, &grid_draw(&inst, &ann)?)?;
                    eprintln!("replaced {} crossings", p.crossing_count);
                    write_out(output.as_deref(), &io::serialize_instance(&p.instance))?;
                }
                Reduce::Ncl2isr { ncl, k, rule, output } => {
                    let f = parsed(&ncl, io::parse_ncl(&read(&ncl)?))?;
                    let (Some(cs), Some(ct)) = (&f.start, &f.target) else {
                        bail!("{} needs both `config s` and `config t`", ncl.display());
                    };
                    let (inst, _) = ncl_to_isr(&f.machine, cs, ct, k, rule.into())?;
                    write_out(output.as_deref(), &io::serialize_instance(&inst))?;
                }
                Reduce::Pmr2isr { pmr, rule, output } => {
                    let f = parsed(&pmr, io::parse_pmr(&read(&pmr)?))?;
                    let inst = pmr_to_isr(&f.graph, &f.start, &f.target, rule.into())?;
                    write_out(output.as_deref(), &io::serialize_instance(&inst))?;
                }
            }
            Ok(YES)
        }
        Command::Oracle { which } => match which {
            Oracle::Sat { cnf, mixed } => {
                let phi = parsed(&cnf, io::parse_cnf(&read(&cnf)?))?;
                let mode = if mixed { SatMode::Mixed } else { SatMode::Any };
                Ok(verdict(sat_decide(&phi, mode)?.is_some()))
            }
            Oracle::Ncl { ncl } => {
                let f = parsed(&ncl, io::parse_ncl(&read(&ncl)?))?;
                let (Some(cs), Some(ct)) = (&f.start, &f.target) else {
                    bail!("{} needs both `config s` and `config t`", ncl.display());
                };
                Ok(verdict(ncl_reachable(&f.machine, cs, ct, &budget)?))
            }
            Oracle::Pmr { pmr } => {
                let f = parsed(&pmr, io::parse_pmr(&read(&pmr)?))?;
                Ok(verdict(pmr_reachable(&f.graph, &f.start, &f.target, &budget)?))
            }
        },
        Command::Bound { n, size, mu } => {
            let b = shortest_length_bound(n, size, mu)?;
            println!("max_length {}", b.max_length);
            eprintln!("binomial ratio {}", b.binomial_bound);
            Ok(YES)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = e.chain().any(|c| c.downcast_ref::<rekonfig::Error>().is_some_and(|r| r.is_budget()));
            ExitCode::from(if budget { BUDGET } else { USAGE })
        }
    }
}
