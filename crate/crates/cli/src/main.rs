use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use sigdim::sig::SigCheck;
use sigdim::generate::{gen_caterpillar, gen_h_graph, gen_path, gen_random_tree, gen_star};
use sigdim::{
    audit, dimension_bounds, embed, is_sig_representation, leaf_stats, parse_edge_list, sig_graph,
    PointSet, RepresentationFile, Tree,
};

const DEFAULT_SEED: u64 = 20_240_501;

#[derive(Parser)]
#[command(name = "sigdim", version, about = "Sphere-of-influence graph dimension of trees under the max norm")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Leaf-degree parameters and dimension bounds of a tree.
    Analyze {
        /// Edge-list file, or "-" for standard input.
        tree: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build a representation of a tree and check it.
    Embed {
        tree: PathBuf,
        #[arg(short, long, default_value = "-")]
        output: PathBuf,
        #[arg(long)]
        compact: bool,
    },
    /// Check that a representation realises a tree.
    Verify { tree: PathBuf, representation: PathBuf },
    /// Edge list of the SIG of a point set.
    Sig { points: PathBuf },
    /// Embed a tree and audit the construction.
    Audit {
        tree: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Generate a tree.
    Gen {
        kind: GenKind,
        /// star: leaf count; h: beta; random, path: vertex count;
        /// caterpillar: leaves per spine vertex.
        #[arg(required = true, num_args = 1..)]
        params: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(short, long, default_value = "-")]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Star,
    H,
    Random,
    Path,
    Caterpillar,
}

/// A failed command: exit code 1 for semantic failures, 2 for bad input.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Failure {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }

    fn semantic(message: impl ToString) -> Failure {
        Failure {
            code: 1,
            message: message.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn is_std(path: &Path) -> bool {
    path.as_os_str() == "-"
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if is_std(path) {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::input(format!("reading standard input: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
    }
}

fn write_output(path: &Path, text: &str) -> CmdResult {
    let res = if is_std(path) {
        io::stdout().lock().write_all(text.as_bytes())
    } else {
        fs::write(path, text)
    };
    res.map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_tree(path: &Path) -> Result<Tree, Failure> {
    let text = read_input(path)?;
    parse_edge_list(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn labels(t: &Tree, vs: &[usize]) -> Vec<u64> {
    vs.iter().map(|&v| t.label(v)).collect()
}

fn cmd_analyze(path: &Path, as_json: bool) -> CmdResult {
    let t = read_tree(path)?;
    let stats = leaf_stats(&t);
    let bounds = dimension_bounds(&t);
    let argmax = labels(&t, &stats.argmax);
    let note = bounds.ambiguous.then(|| {
        format!(
            "beta + 1 is a power of two: a star with this beta needs {} dimensions, an H graph needs {}",
            bounds.lower, bounds.upper
        )
    });
    let out = if as_json {
        let value = json!({
            "n": t.len(),
            "alpha": stats.alpha,
            "argmax": argmax,
            "beta": bounds.beta,
            "lower": bounds.lower,
            "upper": bounds.upper,
            "exact": bounds.exact,
            "ambiguous": bounds.ambiguous,
            "note": note,
        });
        format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable"))
    } else {
        let argmax: Vec<String> = argmax.iter().map(u64::to_string).collect();
        let mut s = format!(
            "n: {}\nalpha: {}\nargmax: {}\nbeta: {}\nlower: {}\nupper: {}\n",
            t.len(),
            stats.alpha,
            argmax.join(" "),
            bounds.beta,
            bounds.lower,
            bounds.upper
        );
        match bounds.exact {
            Some(d) => s.push_str(&format!("exact: {d}\n")),
            None => s.push_str("exact: undecided\n"),
        }
        s.push_str(&format!("ambiguous: {}\n", bounds.ambiguous));
        if let Some(note) = note {
            s.push_str(&format!("note: {note}\n"));
        }
        s
    };
    write_output(Path::new("-"), &out)
}

fn describe(check: &SigCheck) -> String {
    let mut s = String::new();
    for p in &check.problems {
        s.push_str(&format!("problem: {p}\n"));
    }
    for (a, b) in &check.missing_edges {
        s.push_str(&format!("missing edge: {a} {b}\n"));
    }
    for (a, b) in &check.extra_edges {
        s.push_str(&format!("extra edge: {a} {b}\n"));
    }
    for m in &check.radius_mismatches {
        s.push_str(&format!(
            "radius mismatch at {}: stored {}, nearest neighbour {}\n",
            m.id, m.stored, m.nearest_neighbor
        ));
    }
    s
}

fn cmd_embed(path: &Path, output: &Path, compact: bool) -> CmdResult {
    let t = read_tree(path)?;
    let rep = embed(&t).map_err(Failure::semantic)?;
    let file = rep.to_file();
    let check = is_sig_representation(&t, &file);
    let mut text = file.to_json(!compact);
    text.push('\n');
    write_output(output, &text)?;
    if check.ok {
        Ok(())
    } else {
        Err(Failure::semantic(format!("self-check failed\n{}", describe(&check).trim_end())))
    }
}

fn cmd_verify(tree: &Path, representation: &Path) -> CmdResult {
    let t = read_tree(tree)?;
    let text = read_input(representation)?;
    let file = RepresentationFile::from_json(&text)
        .map_err(|e| Failure::input(format!("{}: {e}", representation.display())))?;
    let check = is_sig_representation(&t, &file);
    if check.ok {
        write_output(Path::new("-"), &format!("ok: {} vertices in {} dimensions\n", t.len(), file.dimension))
    } else {
        Err(Failure::semantic(format!("not a representation of the tree\n{}", describe(&check).trim_end())))
    }
}

fn cmd_sig(points: &Path) -> CmdResult {
    let text = read_input(points)?;
    let ps = PointSet::from_json(&text).map_err(|e| Failure::input(format!("{}: {e}", points.display())))?;
    let g = sig_graph(&ps).map_err(Failure::input)?;
    write_output(Path::new("-"), &g.to_edge_list())
}

fn cmd_audit(path: &Path, as_json: bool) -> CmdResult {
    let t = read_tree(path)?;
    let rep = embed(&t).map_err(Failure::semantic)?;
    let report = audit(&rep);
    let out = if as_json {
        format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable"))
    } else {
        report.to_table()
    };
    write_output(Path::new("-"), &out)?;
    if report.all_pass {
        Ok(())
    } else {
        Err(Failure::semantic("audit failed"))
    }
}

fn single(kind: &str, params: &[usize]) -> Result<usize, Failure> {
    match params {
        [x] => Ok(*x),
        _ => Err(Failure::input(format!("{kind} takes exactly one parameter"))),
    }
}

fn cmd_gen(kind: GenKind, params: &[usize], seed: u64, output: &Path) -> CmdResult {
    let tree = match kind {
        GenKind::Star => gen_star(single("star", params)?),
        GenKind::H => gen_h_graph(single("h", params)?),
        GenKind::Random => gen_random_tree(single("random", params)?, seed),
        GenKind::Path => gen_path(single("path", params)?),
        GenKind::Caterpillar => gen_caterpillar(params),
    }
    .map_err(Failure::input)?;
    write_output(output, &tree.to_edge_list())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { tree, json } => cmd_analyze(tree, *json),
        Command::Embed { tree, output, compact } => cmd_embed(tree, output, *compact),
        Command::Verify { tree, representation } => cmd_verify(tree, representation),
        Command::Sig { points } => cmd_sig(points),
        Command::Audit { tree, json } => cmd_audit(tree, *json),
        Command::Gen {
            kind,
            params,
            seed,
            output,
        } => cmd_gen(*kind, params, *seed, output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("sigdim: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
