use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use topocheck::doc::{parse_space, render_space, SpaceDoc};
use topocheck::enumerate::{oracle_count, search_expr, search_quest, topology_count, Quest};
use topocheck::query::parse_query;
use topocheck::report::Check;
use topocheck::setclasses;
use topocheck::tailspace;
use topocheck::verify;
use topocheck::{Error, FiniteSpace, PointSet, Result};

#[derive(Parser)]
#[command(
    name = "topocheck",
    version,
    about = "Finite topological space calculator, verification harness, and counterexample search engine"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a subset of a space against every set class.
    Classify {
        file: PathBuf,
        /// Comma-separated point labels; empty string for the empty set.
        #[arg(long, default_value = "")]
        set: String,
    },
    /// Evaluate a property query against a space.
    Check {
        file: PathBuf,
        #[arg(long)]
        query: String,
        /// Exit with code 1 when the query evaluates to false.
        #[arg(long)]
        assert: bool,
    },
    /// Product of the given spaces; emits a space document.
    Product {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Topological sum of the given spaces; emits a space document.
    Sum {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Search enumerated spaces for witnesses of a query or a named quest.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        query: Option<String>,
        #[arg(long)]
        quest: Option<String>,
        /// Stop after this many witnesses.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Run verification suites and print one CHECK line per named check.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Count labeled topologies on n points.
    Count {
        #[arg(long)]
        n: usize,
        /// Use the naive family-closure oracle instead of the enumerator.
        #[arg(long)]
        oracle: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NotATopology { .. } => 3,
        Error::SizeLimitExceeded { .. } => 4,
        _ => 2,
    }
}

fn load_doc(path: &Path) -> Result<SpaceDoc> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 1,
        col: 1,
        msg: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_space(&text)
}

fn parse_set(doc: &SpaceDoc, set: &str) -> Result<PointSet> {
    let mut s = PointSet::empty(doc.points.len());
    for label in set.split(',') {
        let label = label.trim();
        if label.is_empty() {
            continue;
        }
        let idx = doc
            .points
            .iter()
            .position(|p| p == label)
            .ok_or(Error::UnknownLabel {
                label: label.to_string(),
                line: None,
            })?;
        s = s.with(idx);
    }
    Ok(s)
}

fn load_spaces(files: &[PathBuf]) -> Result<Vec<(String, FiniteSpace)>> {
    files
        .iter()
        .map(|f| {
            let doc = load_doc(f)?;
            let sp = doc.to_space()?;
            Ok((doc.name, sp))
        })
        .collect()
}

fn print_checks(checks: &[Check]) -> ExitCode {
    let mut ok = true;
    for c in checks {
        println!("{c}");
        ok &= c.pass;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Classify { file, set } => {
            let doc = load_doc(&file)?;
            let sp = doc.to_space()?;
            let a = parse_set(&doc, &set)?;
            let report = setclasses::classify(&sp, &a)?;
            for (name, value) in report.flags() {
                println!("CLASS {name} = {value}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Check {
            file,
            query,
            assert,
        } => {
            let sp = load_doc(&file)?.to_space()?;
            let expr = parse_query(&query)?;
            let value = expr.eval(&sp)?;
            println!("PROP {expr} = {value}");
            if assert && !value {
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Cmd::Product { files } => {
            let named = load_spaces(&files)?;
            let refs: Vec<&FiniteSpace> = named.iter().map(|(_, sp)| sp).collect();
            let (prod, _) = FiniteSpace::product(&refs)?;
            let name = named
                .iter()
                .map(|(n, _)| n.as_str())
                .collect::<Vec<_>>()
                .join("x");
            print!("{}", render_space(&SpaceDoc::from_space(name, &prod)));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sum { files } => {
            let named = load_spaces(&files)?;
            let refs: Vec<&FiniteSpace> = named.iter().map(|(_, sp)| sp).collect();
            let (sum, _) = FiniteSpace::sum(&refs)?;
            let name = named
                .iter()
                .map(|(n, _)| n.as_str())
                .collect::<Vec<_>>()
                .join("+");
            print!("{}", render_space(&SpaceDoc::from_space(name, &sum)));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Search {
            n,
            query,
            quest,
            limit,
        } => {
            let witnesses = match (query, quest) {
                (Some(q), None) => search_expr(n, &parse_query(&q)?, limit)?,
                (None, Some(name)) => {
                    let quest = Quest::parse(&name)
                        .ok_or_else(|| Error::UnknownIdentifier(name.clone()))?;
                    search_quest(n, quest, limit)?
                }
                _ => {
                    return Err(Error::Parse {
                        line: 1,
                        col: 1,
                        msg: "give exactly one of --query or --quest".into(),
                    })
                }
            };
            for w in &witnesses {
                println!("{}", w.render());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { suite } => {
            let checks: Vec<Check> = match suite.as_str() {
                "all" => {
                    let mut checks = verify::verify_suite();
                    checks.extend(tailspace::verify_e1());
                    checks.push(tailspace::verify_truncation(12));
                    checks.extend(tailspace::verify_r1_growth());
                    checks
                }
                "lemmas" => verify::lemma_suite(),
                "products" => verify::product_suite(),
                "maps" => verify::map_suite(),
                "e1" => {
                    let mut checks = tailspace::verify_e1();
                    checks.push(tailspace::verify_truncation(12));
                    checks
                }
                "r1" => tailspace::verify_r1_growth(),
                other => return Err(Error::UnknownIdentifier(other.to_string())),
            };
            Ok(print_checks(&checks))
        }
        Cmd::Count { n, oracle } => {
            let count = if oracle {
                oracle_count(n)?
            } else {
                topology_count(n)?
            };
            println!("COUNT {count}");
            Ok(ExitCode::SUCCESS)
        }
    }
}
