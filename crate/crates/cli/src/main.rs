use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use zdposet::check::{check, info};
use zdposet::complex::{export_edge_ideal, Dialect};
use zdposet::poset::{generate, Catalog};
use zdposet::product::{parse_sizes, sweep, sweep_tsv};
use zdposet::{parse_poset, Caps, Error, Poset, ZdGraph};

/// Zero-divisor graphs of finite bounded posets.
#[derive(Parser, Debug)]
#[command(name = "zdposet", version)]
struct Cli {
    /// Largest vertex count for facet enumeration.
    #[arg(long, global = true, default_value_t = Caps::default().max_vertices, value_parser = positive_usize)]
    max_vertices: usize,
    /// Largest vertex count for the homology oracle.
    #[arg(long, global = true, default_value_t = Caps::default().max_homology_vertices, value_parser = positive_usize)]
    max_homology_vertices: usize,
    /// Node budget for the certificate search.
    #[arg(long, global = true, default_value_t = Caps::default().max_search_nodes, value_parser = clap::value_parser!(u64).range(1..))]
    max_search_nodes: u64,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = positive_usize)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order-theoretic summary of a poset file.
    Info { input: PathBuf },
    /// Edges of the zero-divisor graph.
    Zdg {
        input: PathBuf,
        /// Emit Graphviz DOT instead of an edge list.
        #[arg(long)]
        dot: bool,
    },
    /// Well-coveredness and Cohen–Macaulay verdicts, cross-checked.
    Check {
        input: PathBuf,
        /// Also print facets and the certificate.
        #[arg(short, long)]
        verbose: bool,
    },
    /// Edge ideal as a computer algebra script.
    Export {
        input: PathBuf,
        #[arg(long, value_enum)]
        dialect: DialectArg,
        /// Write here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// TSV over products of chains, one size vector per input line.
    Sweep { input: PathBuf },
    /// Emit a poset file for a catalog entry.
    Gen {
        /// boolean_lattice, chain, atom_coatom, m_atoms or product.
        catalog: String,
        params: Vec<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DialectArg {
    M2,
    Singular,
}

impl From<DialectArg> for Dialect {
    fn from(d: DialectArg) -> Dialect {
        match d {
            DialectArg::M2 => Dialect::Macaulay2,
            DialectArg::Singular => Dialect::Singular,
        }
    }
}

enum Failure {
    Input(String),
    Contract(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Contract(e.to_string())
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_poset(path: &Path) -> Result<Poset, Failure> {
    let text = read_input(path)?;
    parse_poset(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(cli: Cli, out: &mut String) -> Result<bool, Failure> {
    let caps = Caps {
        max_vertices: cli.max_vertices,
        max_homology_vertices: cli.max_homology_vertices,
        max_search_nodes: cli.max_search_nodes,
    };
    match cli.command {
        Command::Info { input } => {
            let p = load_poset(&input)?;
            out.push_str(&info(&p)?.to_string());
        }
        Command::Zdg { input, dot } => {
            let g = ZdGraph::build(&load_poset(&input)?)?;
            if dot {
                out.push_str(&g.to_dot());
            } else {
                for (u, v) in g.edges() {
                    out.push_str(&format!("{} -- {}\n", g.label(u), g.label(v)));
                }
            }
        }
        Command::Check { input, verbose } => {
            let report = check(&load_poset(&input)?, &caps)?;
            out.push_str(&report.render(verbose));
            return Ok(report.consistent());
        }
        Command::Export { input, dialect, output } => {
            let g = ZdGraph::build(&load_poset(&input)?)?;
            let script = export_edge_ideal(&g, dialect.into())?.render();
            match output {
                Some(path) => {
                    fs::write(&path, script).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
                }
                None => out.push_str(&script),
            }
        }
        Command::Sweep { input } => {
            let text = read_input(&input)?;
            let vectors = parse_sizes(&text).map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?;
            out.push_str(&sweep_tsv(&sweep(&vectors, &caps)?));
        }
        Command::Gen { catalog, params } => {
            let entry = Catalog::from_name(&catalog, &params)?;
            out.push_str(&generate(&entry)?.to_file_text());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    };
    let mut out = String::new();
    let result = pool.install(|| run(cli, &mut out));
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: verdicts contradict each other");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Contract(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
