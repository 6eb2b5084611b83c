use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use slcs::image::maze;
use slcs::script::{parse_script, run_script, ScriptConfig};
use slcs::{check_with, load_model, parse, save_result, Adjacency, CheckOptions, Error, ResultSet, UnknownAtoms};

mod imageio;

const UNKNOWN_ATOM_VAR: &str = "SLCS_UNKNOWN_ATOM";

#[derive(Parser)]
#[command(name = "slcs", version, about = "Spatial model checking over graphs and images")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one formula against a JSON model and print the satisfying points.
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
        /// Write the result JSON here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Report work counters and timing on stderr.
        #[arg(long)]
        stats: bool,
    },
    /// Run a paint script over an image (PPM, or PNG by extension).
    Run {
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        script: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value = "4", value_parser = ["4", "8"])]
        adjacency: String,
        #[arg(long)]
        stats: bool,
    },
    /// Generate a maze picture and optionally the script that paints it.
    Maze {
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value_t = 41)]
        width: usize,
        #[arg(long, default_value_t = 31)]
        height: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        script_out: Option<PathBuf>,
    },
}

/// Exit codes: 1 usage or output failure, 2 parse error, 3 load error,
/// 4 semantic error.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn load(path: &Path, e: Error) -> Self {
        let code = if matches!(e, Error::Syntax { .. }) { 2 } else { 3 };
        Failure {
            code,
            message: format!("{}: {e}", path.display()),
        }
    }

    fn output(path: &Path, e: Error) -> Self {
        Failure {
            code: 1,
            message: format!("cannot write {}: {e}", path.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. } => 2,
            Error::Io(_) | Error::Json(_) | Error::UnknownNode(_) | Error::DuplicateNode(_) | Error::Image(_) => 3,
            _ => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn unknown_atoms() -> Result<UnknownAtoms, Failure> {
    match std::env::var(UNKNOWN_ATOM_VAR) {
        Ok(v) => v
            .parse()
            .map_err(|e| Failure::usage(format!("{UNKNOWN_ATOM_VAR}: {e}"))),
        Err(_) => Ok(UnknownAtoms::default()),
    }
}

fn run_check(model: &Path, formula: &str, output: Option<&Path>, stats: bool) -> Result<(), Failure> {
    let opts = CheckOptions {
        unknown_atoms: unknown_atoms()?,
    };
    let bytes = std::fs::read(model).map_err(|e| Failure::load(model, e.into()))?;
    let model_data = load_model(&bytes).map_err(|e| Failure::load(model, e))?;
    let f = parse(formula)?;
    let out = check_with(&model_data, &f, opts)?;
    if stats {
        let k = f.desugar().size()?;
        let edges = model_data.space().edge_count();
        eprintln!(
            "{} of {} points; {} nodes visited, {} edges traversed (k={k}, k*|R|={}); {:.3?}",
            out.satisfying.len(),
            model_data.len(),
            out.stats.nodes_visited,
            out.stats.edges_traversed,
            k * edges,
            out.stats.wall_time,
        );
    }
    let result = ResultSet {
        formula: f.to_string(),
        members: out.satisfying,
    };
    let mut json = save_result(&result, &model_data)?;
    json.push(b'\n');
    match output {
        Some(path) => std::fs::write(path, json).map_err(|e| Failure::output(path, e.into())),
        None => {
            print!("{}", String::from_utf8_lossy(&json));
            Ok(())
        }
    }
}

fn run_paint(image: &Path, script: &Path, output: &Path, adjacency: &str, stats: bool) -> Result<(), Failure> {
    let adjacency: Adjacency = adjacency.parse().map_err(Failure::usage)?;
    let config = ScriptConfig {
        adjacency,
        unknown_atoms: unknown_atoms()?,
    };
    let src = std::fs::read_to_string(script).map_err(|e| Failure::load(script, e.into()))?;
    let parsed = parse_script(&src).map_err(|e| Failure::load(script, e))?;
    let img = imageio::load(image).map_err(|e| Failure::load(image, e))?;
    let run = run_script(&img, &parsed, config, |path, working| {
        imageio::save(Path::new(path), working)
            .map_err(|e| Error::Io(std::io::Error::other(format!("cannot write {path}: {e}"))))
    })
    .map_err(|e| match e {
        // only `save` statements do I/O here
        Error::Io(io) => Failure::usage(io.to_string()),
        other => other.into(),
    })?;
    if stats {
        for r in &run.reports {
            eprintln!(
                "#{} {}: {} points; {} nodes visited, {} edges traversed; {:.3?}",
                r.statement, r.formula, r.points, r.stats.nodes_visited, r.stats.edges_traversed, r.stats.wall_time
            );
        }
    }
    imageio::save(output, &run.image).map_err(|e| Failure::output(output, e))
}

fn run_maze(output: &Path, width: usize, height: usize, seed: u64, script_out: Option<&Path>) -> Result<(), Failure> {
    if width < 3 || height < 3 {
        return Err(Failure::usage("maze needs at least 3x3 pixels"));
    }
    let img = maze::generate(width, height, seed);
    imageio::save(output, &img).map_err(|e| Failure::output(output, e))?;
    if let Some(path) = script_out {
        std::fs::write(path, maze::SCRIPT).map_err(|e| Failure::output(path, e.into()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // keep exit code 2 for formula syntax errors
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Check {
            model,
            formula,
            output,
            stats,
        } => run_check(model, formula, output.as_deref(), *stats),
        Command::Run {
            image,
            script,
            output,
            adjacency,
            stats,
        } => run_paint(image, script, output, adjacency, *stats),
        Command::Maze {
            output,
            width,
            height,
            seed,
            script_out,
        } => run_maze(output, *width, *height, *seed, script_out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
