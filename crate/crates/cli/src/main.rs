//! `bkw`: load models, evaluate formulas, scan for holes and run campaigns.
//!
//! Exit status: 0 when the command ran, 1 when a fixture claim failed,
//! 2 on bad input (unreadable file, malformed model or formula, bad bounds).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use bkw_core::fixtures::verify_fixtures;
use bkw_core::harness::{run_campaign, Campaign, CampaignFlags, Target};
use bkw_core::lawvere::{search_wps, FixedPointReport};
use bkw_core::set::render_set;
use bkw_core::{parse, AnyModel, HeartScope, NwfHeartScope, RelationalSemantics};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bkw", version, about = "Interactive belief model workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a model file and print it back in normal form.
    Parse { file: PathBuf },
    /// Print the states of a model that satisfy a formula.
    Check {
        model: PathBuf,
        formula: String,
        #[command(flatten)]
        sem: Semantics,
    },
    /// Scan the seven hole slots (or, for topological models, the diagonal sentence).
    Holes {
        model: PathBuf,
        #[command(flatten)]
        sem: Semantics,
    },
    /// Check every bundled reference model against its claims.
    Fixtures,
    /// Run a claim over every small model and print the report.
    Campaign {
        /// lemma1, theorem12, theorem22, theorem23, validity_lists,
        /// adjunction, boundary_law or lawvere_scan
        target: String,
        #[arg(long = "max-states")]
        max_states: usize,
        /// Only edges between the two types.
        #[arg(long)]
        strict: bool,
        /// Only frames where every state sees the other type.
        #[arg(long)]
        serial: bool,
        #[command(flatten)]
        sem: Semantics,
        /// Fail records printed in full.
        #[arg(long, default_value_t = 20)]
        records: usize,
    },
    /// Search every g: A -> Y^A for weakly point-surjective maps.
    Lawvere {
        #[arg(long = "sizeA")]
        size_a: usize,
        #[arg(long = "sizeY")]
        size_y: usize,
    },
}

#[derive(Args)]
struct Semantics {
    /// Kripke assumption ranges over every state (default).
    #[arg(long, conflicts_with = "heart_local")]
    heart_frame: bool,
    /// Kripke assumption ranges over the other player's states.
    #[arg(long)]
    heart_local: bool,
    /// Range of the assumption operator on membership graphs.
    #[arg(long, value_enum, default_value_t = NwfHeart::SelfAndMembers)]
    nwf_heart: NwfHeart,
}

#[derive(Clone, Copy, ValueEnum)]
enum NwfHeart {
    SelfAndMembers,
    Members,
    Global,
}

impl Semantics {
    fn heart(&self) -> HeartScope {
        if self.heart_local {
            HeartScope::Local
        } else {
            HeartScope::Frame
        }
    }

    fn nwf(&self) -> NwfHeartScope {
        match self.nwf_heart {
            NwfHeart::SelfAndMembers => NwfHeartScope::SelfAndMembers,
            NwfHeart::Members => NwfHeartScope::Members,
            NwfHeart::Global => NwfHeartScope::Global,
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &PathBuf) -> Result<AnyModel, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    AnyModel::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Parse { file } => {
            let text = match load(&file)? {
                AnyModel::Kripke(m) => m.to_text(),
                AnyModel::Nwf(m) => m.to_text(),
                AnyModel::ParaTopo(m) => m.to_text(),
            };
            print!("{text}");
        }
        Command::Check {
            model,
            formula,
            sem,
        } => {
            let f = parse(&formula).map_err(|e| e.to_string())?;
            let (set, names) = match load(&model)? {
                AnyModel::Kripke(m) => (
                    m.eval(sem.heart())
                        .extension(&f)
                        .map_err(|e| e.to_string())?,
                    m.names().to_vec(),
                ),
                AnyModel::Nwf(m) => (
                    m.eval(sem.nwf()).extension(&f).map_err(|e| e.to_string())?,
                    m.names().to_vec(),
                ),
                AnyModel::ParaTopo(m) => (m.evaluate(&f).map_err(|e| e.to_string())?, m.names()),
            };
            println!("{}", render_set(set, &names));
        }
        Command::Holes { model, sem } => match load(&model)? {
            AnyModel::Kripke(m) => print!("{}", m.find_holes(sem.heart()).render(m.names())),
            AnyModel::Nwf(m) => print!("{}", m.nwf_find_holes(sem.nwf()).render(m.names())),
            AnyModel::ParaTopo(m) => {
                let names = m.names();
                let a_names = &names[..m.size_a()];
                println!("diagonal: {}", render_set(m.diagonal(), a_names));
                println!("witnesses: {}", render_set(m.bk_witnesses(), a_names));
                let d = m.discrete_counterpart();
                println!("discrete diagonal: {}", render_set(d.diagonal(), a_names));
                println!(
                    "discrete witnesses: {}",
                    render_set(d.bk_witnesses(), a_names)
                );
            }
        },
        Command::Fixtures => {
            return Ok(match verify_fixtures() {
                Ok(report) => {
                    print!("{report}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    println!("{e}");
                    ExitCode::from(1)
                }
            })
        }
        Command::Campaign {
            target,
            max_states,
            strict,
            serial,
            sem,
            records,
        } => {
            let target: Target = target
                .parse()
                .map_err(|e: bkw_core::harness::HarnessError| e.to_string())?;
            let mut c = Campaign::new(target, max_states).with_flags(CampaignFlags {
                strict,
                heart: sem.heart(),
                serial,
                nwf_heart: sem.nwf(),
            });
            c.record_limit = records;
            let report = run_campaign(&c).map_err(|e| e.to_string())?;
            print!("{}", report.render());
        }
        Command::Lawvere { size_a, size_y } => {
            let r = search_wps(size_a, size_y).map_err(|e| e.to_string())?;
            println!("sizeA={size_a} sizeY={size_y} maps={}", r.candidates);
            match r.first() {
                None => println!("exhausted: no weakly point-surjective map"),
                Some(s) => {
                    println!("point-surjective maps: {}", r.instances.len());
                    let rows: Vec<String> = (0..s.size_a())
                        .map(|x| {
                            format!(
                                "{:?}",
                                (0..s.size_a()).map(|a| s.apply(x, a)).collect::<Vec<_>>()
                            )
                        })
                        .collect();
                    println!("first witness g = {}", rows.join(" "));
                    if let FixedPointReport::Checked(records) = s.check_fixed_point_property() {
                        for rec in records {
                            println!(
                                "f={:?}: representative {} gives point {} ({})",
                                rec.f,
                                rec.representative,
                                rec.point,
                                if rec.fixed { "fixed" } else { "NOT fixed" }
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
