//! `deepcom`: commuting-type graphs, Schur and Bogomolov multipliers, and
//! central extensions of small finite groups, from the command line.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 cap exceeded,
//! 3 verification or cross-check failure. Identical invocations produce
//! byte-identical output; `--threads` only changes how fast it appears.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use deepcom_cli::io::{load_extension, load_group};
use deepcom_cli::report::{
    analysis_report, census_row, multiplier_report, render_census_table, verify_group, CensusRow,
};
use deepcom_core::census::{census_group, CENSUS};
use deepcom_core::cohomology::deep_commuting_graph;
use deepcom_core::extensions::relative_commuting_graph;
use deepcom_core::graphs::{
    commuting_graph, emit_dot, emit_edgelist, emit_json, enhanced_power_graph,
};
use deepcom_core::group::Group;
use deepcom_core::speclang::{parse_spec, realize};
use deepcom_core::{Error, Result, DEFAULT_COHOMOLOGY_CAP, DEFAULT_REALIZE_CAP};
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const SPEC_HELP: &str = "\
Group specs:
  spec   := atom (\"x\" atom)*
  atom   := family | \"table:\" path | \"sg64_182\"
  family := (\"C\" | \"D\" | \"Q\" | \"SD\" | \"S\" | \"A\") number

C/D/Q/SD take the group order, S/A the permutation degree; `table:` loads a
Cayley table from a JSON file. Examples: C12, D8, SD16, A5, C2xC4,
C2 x table:klein.json, sg64_182.";

#[derive(Parser)]
#[command(
    name = "deepcom",
    version,
    about = "Commuting, enhanced power and deep commuting graphs, multipliers and \
             central extensions of small finite groups",
    after_help = SPEC_HELP
)]
struct Cli {
    /// Largest group order `realize` will build.
    #[arg(long, global = true, default_value_t = DEFAULT_REALIZE_CAP)]
    max_order: usize,

    /// Largest group order the cocycle solver will accept.
    #[arg(long, global = true, default_value_t = DEFAULT_COHOMOLOGY_CAP)]
    cohomology_cap: usize,

    /// Worker threads for census sweeps; 0 uses the machine default.
    /// Output bytes never depend on this.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Print reports as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full analysis: invariants, multipliers, graph sizes, classification.
    Analyze {
        /// Group spec (see below).
        spec: String,
    },
    /// Emit one graph of a group, or the relative commuting graph of an
    /// extension loaded from a descriptor file.
    Graph {
        /// Group spec; for --kind relcom, the path of an extension
        /// descriptor file instead.
        spec: String,
        #[arg(long, value_enum)]
        kind: GraphKindArg,
        #[arg(long, value_enum)]
        format: FormatArg,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Schur multiplier, Bogomolov multiplier, and their quotient's order.
    Multiplier { spec: String },
    /// One summary row per group: the built-in census when no specs are
    /// given, otherwise the listed specs.
    Census {
        specs: Vec<String>,
        /// Emit comma-separated rows with a header line.
        #[arg(long)]
        csv: bool,
    },
    /// Recompute everything that can be cross-checked and report a verdict;
    /// exits 3 on any mismatch.
    Verify { spec: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKindArg {
    Com,
    Epow,
    Dcom,
    Relcom,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Json,
    Edgelist,
}

fn main() -> ExitCode {
    ExitCode::from(run())
}

fn run() -> u8 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 2 on usage errors by default; this tool reserves 2
            // for cap overruns, so usage problems map to 1
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    if cli.threads > 0 {
        // build_global fails only if a pool already exists; the pool size
        // never affects results, so that is fine to ignore
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => 2,
        Error::TheoremViolation(_) | Error::InternalVerificationFailure(_) => 3,
        _ => 1,
    }
}

fn resolve_group(spec_text: &str, max_order: usize) -> Result<Group> {
    let spec = parse_spec(spec_text)?;
    realize(&spec, max_order, &mut |path| load_group(Path::new(path)))
}

fn print_report<T: serde::Serialize>(report: &T, text: String, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(report).expect("reports serialize"));
    } else {
        print!("{text}");
    }
}

fn dispatch(cli: &Cli) -> Result<()> {
    match &cli.command {
        Cmd::Analyze { spec } => {
            let g = resolve_group(spec, cli.max_order)?;
            let rep = analysis_report(&g, cli.cohomology_cap)?;
            print_report(&rep, rep.render_text(), cli.json);
            Ok(())
        }
        Cmd::Graph { spec, kind, format, out } => {
            let (graph, name) = match kind {
                GraphKindArg::Relcom => {
                    let ext = load_extension(Path::new(spec))?;
                    let name = ext.base().name().to_string();
                    (relative_commuting_graph(&ext), name)
                }
                _ => {
                    let g = resolve_group(spec, cli.max_order)?;
                    let graph = match kind {
                        GraphKindArg::Com => commuting_graph(&g),
                        GraphKindArg::Epow => enhanced_power_graph(&g),
                        GraphKindArg::Dcom => deep_commuting_graph(&g, cli.cohomology_cap)?,
                        GraphKindArg::Relcom => unreachable!(),
                    };
                    let name = g.name().to_string();
                    (graph, name)
                }
            };
            let text = match format {
                FormatArg::Dot => emit_dot(&graph, &name),
                FormatArg::Json => emit_json(&graph, &name),
                FormatArg::Edgelist => emit_edgelist(&graph),
            };
            match out {
                Some(path) => std::fs::write(path, text)
                    .map_err(|e| Error::File(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Cmd::Multiplier { spec } => {
            let g = resolve_group(spec, cli.max_order)?;
            let rep = multiplier_report(&g, cli.cohomology_cap)?;
            print_report(&rep, rep.render_text(), cli.json);
            Ok(())
        }
        Cmd::Census { specs, csv } => {
            let groups: Vec<(String, Group)> = if specs.is_empty() {
                CENSUS
                    .iter()
                    .map(|e| census_group(e).map(|g| (e.name.to_string(), g)))
                    .collect::<Result<_>>()?
            } else {
                specs
                    .iter()
                    .map(|s| resolve_group(s, cli.max_order).map(|g| (s.clone(), g)))
                    .collect::<Result<_>>()?
            };
            let rows = groups
                .par_iter()
                .map(|(name, g)| census_row(name, g, cli.cohomology_cap))
                .collect::<Result<Vec<_>>>()?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&rows).expect("reports serialize"));
            } else if *csv {
                println!("{}", CensusRow::CSV_HEADER);
                for row in &rows {
                    println!("{}", row.csv_line());
                }
            } else {
                print!("{}", render_census_table(&rows));
            }
            Ok(())
        }
        Cmd::Verify { spec } => {
            let g = resolve_group(spec, cli.max_order)?;
            let rep = verify_group(&g, cli.cohomology_cap)?;
            print_report(&rep, rep.render_text(), cli.json);
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_onto_the_documented_exit_codes() {
        assert_eq!(exit_code(&Error::BadParameter("x".into())), 1);
        assert_eq!(
            exit_code(&Error::Parse { offset: 0, message: "x".into(), expected: vec![] }),
            1
        );
        assert_eq!(exit_code(&Error::File("x".into())), 1);
        assert_eq!(exit_code(&Error::NotAGroup("x".into())), 1);
        assert_eq!(
            exit_code(&Error::CapExceeded { what: "group order", limit: 1, requested: 2 }),
            2
        );
        assert_eq!(exit_code(&Error::TheoremViolation("x".into())), 3);
        assert_eq!(exit_code(&Error::InternalVerificationFailure("x".into())), 3);
    }

    #[test]
    fn spec_resolution_respects_the_order_cap() {
        assert_eq!(resolve_group("D8", 100).unwrap().order(), 8);
        assert!(matches!(
            resolve_group("C100", 50),
            Err(Error::CapExceeded { .. })
        ));
        assert!(resolve_group("table:/no/such/file.json", 100).is_err());
    }

    #[test]
    fn cli_definition_is_well_formed() {
        use clap::CommandFactory as _;
        Cli::command().debug_assert();
    }
}
