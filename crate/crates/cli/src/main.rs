mod commands;
mod demo;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lrprod::free_construction::DEFAULT_MAX_LEN;
use lrprod::semigroup::{DivisionCaps, DEFAULT_ISO_CAP, DEFAULT_TABLE_CAP};
use serde_json::json;

use commands::{Caps, Report};

/// λρ-systems over finite semigroups and their λρ-products.
///
/// Semigroup operands are JSON files or names: trivial, cyclic(n),
/// left_zero(n), semilattice2, flip_flop_left, full_transformations(n).
#[derive(Parser)]
#[command(name = "lrprod", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the result JSON here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest product order built.
    #[arg(long, global = true, default_value_t = DEFAULT_TABLE_CAP)]
    product_cap: usize,
    /// Largest order for isomorphism search.
    #[arg(long, global = true, default_value_t = DEFAULT_ISO_CAP)]
    iso_cap: usize,
    /// Largest host order for division search.
    #[arg(long, global = true, default_value_t = DivisionCaps::default().max_source)]
    sub_cap: usize,
    /// Longest word in the free construction.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_LEN)]
    length: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a system file.
    Verify {
        system: PathBuf,
        /// Also require the system to be unital.
        #[arg(long)]
        unital: bool,
        /// Also check δ1–δ4 over all solutions of the extracted pre-system.
        #[arg(long)]
        natural_solutions: bool,
    },
    /// Build H^[S] for a system and a semigroup H.
    Product { system: PathBuf, h: String },
    /// Quotient of a semigroup by a partition.
    Quotient { semigroup: String, partition: PathBuf },
    /// Search for an isomorphism.
    Iso { a: String, b: String },
    /// Whether T divides S.
    Divides { t: String, s: String },
    /// The free system of S¹.
    Free {
        system: PathBuf,
        /// Check that H over the free system maps onto H over S¹.
        #[arg(long, value_name = "H")]
        check_divide: Option<String>,
        /// Drop the chain constraints on word index sets.
        #[arg(long)]
        even_freer: bool,
    },
    /// Rebuild a worked example and compare it with the expected table.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoName {
    Lzero,
    Flipflop,
    Wreath,
    Free,
}

fn run(cli: &Cli) -> commands::Result<Report> {
    let caps = Caps {
        product: cli.product_cap,
        iso: cli.iso_cap,
        sub: cli.sub_cap,
        length: cli.length,
    };
    match &cli.command {
        Command::Verify {
            system,
            unital,
            natural_solutions,
        } => commands::verify(system, *unital, *natural_solutions),
        Command::Product { system, h } => commands::product(system, h, caps),
        Command::Quotient { semigroup, partition } => commands::quotient(semigroup, partition),
        Command::Iso { a, b } => commands::iso(a, b, caps),
        Command::Divides { t, s } => commands::divides_cmd(t, s, caps),
        Command::Free {
            system,
            check_divide,
            even_freer,
        } => commands::free(system, check_divide.as_deref(), *even_freer, caps),
        Command::Demo { name } => match name {
            DemoName::Lzero => demo::lzero(),
            DemoName::Flipflop => demo::flipflop(),
            DemoName::Wreath => demo::wreath(),
            DemoName::Free => demo::free(),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|report| {
        if let Some(path) = &cli.out {
            let value = report.artifact.as_ref().unwrap_or(&report.json);
            lrprod::io::write_json(path, value).map_err(lrprod::Error::from)?;
        }
        Ok(report)
    });
    match result {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).unwrap_or_default()),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => println!("{}", json!({ "error": { "kind": e.kind(), "message": e.to_string() } })),
            }
            ExitCode::from(2)
        }
    }
}
