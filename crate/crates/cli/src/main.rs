use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use mclag::coinvariants::{coinvariants, wedge2_s2l_module};
use mclag::homology::chain_boundaries;
use mclag::johnson::torelli_action_module;
use mclag::report::{verify, verify_all, JobId, VerificationReport, VerifyOptions, DEFAULT_GENUS_CAP};
use mclag::symplectic::{s2l_representation, ActingSet};
use mclag::{FgAbelianGroup, GroupPresentation, IntRepresentation};

#[derive(Parser)]
#[command(name = "mclag", version, about = "Exact homology computations for Lagrangian mapping class groups")]
struct Cli {
    /// Largest genus accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_GENUS_CAP)]
    genus_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification job (or `all`) and compare with the expected values.
    Verify {
        #[arg(long)]
        job: String,
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        /// JSON array of expected-value overrides.
        #[arg(long)]
        expect_file: Option<PathBuf>,
    },
    /// Homology of SL(g,Z) in degree 0 or 1.
    Homology {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum)]
        coeff: Coeff,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        degree: u8,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Coinvariants of a module under a set of acting elements.
    Coinv {
        #[arg(long, value_enum)]
        module: ModuleArg,
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        acting: String,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Write the boundary matrices d1 and d2 of the S2L complex as text.
    DumpComplex {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Sl,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeff {
    Trivial,
    S2l,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuleArg {
    #[value(name = "wedge2-s2l")]
    Wedge2S2l,
    #[value(name = "torelli-h1")]
    TorelliH1,
}

fn check_genus(g: usize, cap: usize) -> anyhow::Result<()> {
    if g < 3 || g > cap {
        bail!(mclag::Error::UnsupportedGenus { genus: g, min: 3, max: cap });
    }
    Ok(())
}

fn print_group(g: &FgAbelianGroup, format: Format) {
    match format {
        Format::Md => println!("{g}"),
        Format::Json => println!(
            "{}",
            serde_json::json!({ "group": serde_json::from_str::<serde_json::Value>(&g.to_json()).unwrap(), "display": g.to_string() })
        ),
    }
}

fn print_reports(reports: &[VerificationReport], format: Format) {
    match format {
        Format::Md => {
            let parts: Vec<String> = reports.iter().map(VerificationReport::to_markdown).collect();
            print!("{}", parts.join("\n"));
        }
        Format::Json => {
            let v = if reports.len() == 1 {
                reports[0].to_json()
            } else {
                serde_json::Value::Array(reports.iter().map(VerificationReport::to_json).collect())
            };
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let cap = cli.genus_cap;
    match cli.command {
        Command::Verify { job, genus, format, expect_file } => {
            let mut opts = VerifyOptions::with_genus_cap(cap);
            if let Some(path) = expect_file {
                let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                opts.expected.apply_overrides(&text)?;
            }
            let reports = if job == "all" {
                verify_all(genus, &opts)?
            } else {
                vec![verify(job.parse::<JobId>()?, genus, &opts)?]
            };
            print_reports(&reports, format);
            Ok(reports.iter().all(|r| r.pass))
        }
        Command::Homology { group: GroupArg::Sl, genus, coeff, degree, format } => {
            check_genus(genus, cap)?;
            let rep = match coeff {
                Coeff::Trivial => IntRepresentation::trivial(GroupPresentation::sl(genus)?, 1),
                Coeff::S2l => s2l_representation(genus)?,
            };
            let cx = chain_boundaries(rep.presentation(), &rep)?;
            let h = if degree == 0 { cx.h0() } else { cx.h1()? };
            print_group(&h, format);
            Ok(true)
        }
        Command::Coinv { module, genus, acting, format } => {
            check_genus(genus, cap)?;
            let acting = ActingSet::parse(&acting).with_context(|| {
                let names: Vec<&str> = ActingSet::ALL.iter().map(|a| a.name()).collect();
                format!("unknown acting set `{acting}`; expected one of {}", names.join(", "))
            })?;
            let m = match module {
                ModuleArg::Wedge2S2l => wedge2_s2l_module(genus, acting)?,
                ModuleArg::TorelliH1 => torelli_action_module(genus, &acting.elements(genus))?,
            };
            print_group(&coinvariants(&m)?, format);
            Ok(true)
        }
        Command::DumpComplex { genus, out_dir } => {
            check_genus(genus, cap)?;
            let rep = s2l_representation(genus)?;
            let cx = chain_boundaries(rep.presentation(), &rep)?;
            fs::create_dir_all(&out_dir)?;
            for (name, m) in [("d1", &cx.d1), ("d2", &cx.d2)] {
                let path = out_dir.join(format!("{name}_g{genus}.txt"));
                fs::write(&path, m.to_text()).with_context(|| format!("writing {}", path.display()))?;
                println!("{}", path.display());
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
