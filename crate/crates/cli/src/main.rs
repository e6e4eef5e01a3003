use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fatgraph::io::{self, IoError};
use fatgraph::model::Twist;
use fatgraph::oracle::{self, OracleError};
use fatgraph::planner::{self, PlanError};
use fatgraph::{Fatgraph, ModelError, Reversal};

#[derive(Parser)]
#[command(name = "fatg", version, about = "Reversal distance of unicellular fatgraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a .fatg file and list its ribbons.
    Validate { file: PathBuf },
    /// Genus, orientability, blocks and distance.
    Info {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Component tree.
    Components {
        file: PathBuf,
        #[arg(long, value_name = "OUT")]
        dot: Option<PathBuf>,
    },
    /// Block tree with exposed (E) and super (S) blocks.
    Blocks {
        file: PathBuf,
        #[arg(long, value_name = "OUT")]
        dot: Option<PathBuf>,
    },
    /// Reversal distance from the formula.
    Distance { file: PathBuf },
    /// Optimal reversal script.
    Plan {
        file: PathBuf,
        #[arg(short, value_name = "SCRIPT")]
        o: Option<PathBuf>,
    },
    /// Apply a script and emit the result.
    Apply {
        file: PathBuf,
        script: PathBuf,
        #[arg(short, value_name = "OUT")]
        o: Option<PathBuf>,
    },
    /// Exhaustive search distance, compared with the formula.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = oracle::DEFAULT_STATE_BOUND)]
        max_states: usize,
    },
    /// Random fatgraph: a random plane tree plus random gluings.
    Gen {
        #[arg(long)]
        ribbons: usize,
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, value_name = "OUT")]
        o: Option<PathBuf>,
    },
    /// Cross-check formula, planner, search and reversal contracts on random inputs.
    Fuzz {
        #[arg(long)]
        ribbons: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
    },
}

enum Failure {
    Domain(String),
    Internal(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

impl From<PlanError> for Failure {
    fn from(e: PlanError) -> Self {
        IoError::from(e).into()
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        IoError::from(e).into()
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Fatgraph, Failure> {
    io::parse_fatg(&read(path)?).map_err(|e| match e {
        IoError::Model(ModelError::Invalid(report)) => {
            Failure::Domain(format!("{}: invalid fatgraph\n{report}", path.display()))
        }
        e => Failure::Domain(format!("{}: {e}", path.display())),
    })
}

fn load_unicellular(path: &Path) -> Result<Fatgraph, Failure> {
    let f = load(path)?;
    f.require_unicellular()?;
    Ok(f)
}

fn validate(file: &Path) -> Outcome {
    let f = load(file)?;
    println!("valid: n={} vertices={} boundary components={}", f.n(), f.vertex_count(), f.boundary_count());
    for r in f.ribbons() {
        let twist = match r.twist {
            Twist::Untwisted => "untwisted",
            Twist::Twisted => "twisted",
            Twist::Ambiguous => "ambiguous",
        };
        let dir = if r.is_mono() { "mono-directional" } else { "bi-directional" };
        println!(
            "ribbon {}: ({},{}) ({},{}) {twist} {dir}",
            r.id.0 + 1,
            r.wedge_a.0,
            r.wedge_a.1,
            r.wedge_b.0,
            r.wedge_b.1
        );
    }
    Ok(())
}

fn info(file: &Path, json: bool) -> Outcome {
    let f = load_unicellular(file)?;
    if json {
        println!("{}", io::info_json(&f)?);
        return Ok(());
    }
    let i = io::info(&f)?;
    println!("ribbons {}", i.e);
    println!("vertices {}", i.v);
    println!("genus {}", i.genus);
    println!("orientable {}", i.orientable);
    println!("components {} ({} trivial)", i.components, i.trivial_components);
    println!("blocks {} ({} orientable)", i.blocks, i.orientable_blocks);
    println!("exposed {} (super {})", i.e_blocks, i.s_blocks);
    println!("distance {}", i.distance);
    Ok(())
}

fn intervals(v: &[fatgraph::Interval]) -> String {
    if v.is_empty() {
        return "-".into();
    }
    v.iter().map(|iv| iv.to_string()).collect::<Vec<_>>().join(" ")
}

fn components(file: &Path, dot: Option<&Path>) -> Outcome {
    let f = load_unicellular(file)?;
    let d = f.decompose().map_err(PlanError::from)?;
    for c in &d.components {
        let kind = if c.trivial {
            "trivial"
        } else if c.orientable {
            "orientable"
        } else {
            "non-orientable"
        };
        let ribbons: Vec<String> = c.ribbons.iter().map(|r| (r.0 + 1).to_string()).collect();
        println!(
            "C{} ribbons {} trace {} gaps {} {kind} genus {}",
            c.id.0 + 1,
            ribbons.join(","),
            intervals(&c.trace),
            intervals(&c.gaps),
            c.genus
        );
    }
    match dot {
        Some(out) => write(out, &io::component_tree_dot(&d)),
        None => Ok(()),
    }
}

fn blocks(file: &Path, dot: Option<&Path>) -> Outcome {
    let f = load_unicellular(file)?;
    let d = f.decompose().map_err(PlanError::from)?;
    for b in &d.blocks {
        let comps: Vec<String> = b.components.iter().map(|c| format!("C{}", c.0 + 1)).collect();
        let mut tags = vec![if b.orientable { "orientable" } else { "non-orientable" }];
        if d.e_blocks.contains(&b.id) {
            tags.push("exposed");
        }
        if d.s_blocks.contains(&b.id) {
            tags.push("super");
        }
        println!("B{} components {} trace {} {}", b.id.0 + 1, comps.join(","), intervals(&b.trace), tags.join(" "));
    }
    match dot {
        Some(out) => write(out, &io::block_tree_dot(&d)),
        None => Ok(()),
    }
}

fn plan(file: &Path, out: Option<&Path>) -> Outcome {
    let f = load_unicellular(file)?;
    let p = planner::plan(&f)?;
    let script = io::emit_script(&p.reversals());
    match out {
        Some(path) => {
            write(path, &script)?;
            eprintln!("{} steps written to {}", p.len(), path.display());
        }
        None => print!("{script}"),
    }
    Ok(())
}

fn apply(file: &Path, script: &Path, out: Option<&Path>) -> Outcome {
    let f = load_unicellular(file)?;
    let steps: Vec<Reversal> =
        io::parse_script(&read(script)?).map_err(|e| Failure::Domain(format!("{}: {e}", script.display())))?;
    let ex = planner::execute(&f, &steps)?;
    let last = ex.trace.last().expect("start state");
    eprintln!("{} steps, genus {}", steps.len(), last.genus);
    let text = io::emit_fatg(&ex.result);
    match out {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_oracle(file: &Path, max_states: usize) -> Outcome {
    let f = load_unicellular(file)?;
    let report = oracle::bfs_distance(&f, max_states)?;
    let formula = planner::r_distance(&f)?;
    println!("{}", report.distance);
    eprintln!("explored {} states, layers {:?}", report.explored, report.layers);
    for r in &report.path {
        eprintln!("  {r}");
    }
    if report.distance != formula {
        return Err(Failure::Internal(format!("search distance {} differs from formula {formula}", report.distance)));
    }
    Ok(())
}

fn gen(ribbons: usize, genus: usize, seed: u64, out: Option<&Path>) -> Outcome {
    let f = oracle::random_fatgraph(ribbons, genus, seed)?;
    let text = io::emit_fatg(&f);
    match out {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Largest ribbon count at which fuzz also runs the exhaustive search.
const FUZZ_SEARCH_LIMIT: usize = 5;

fn fuzz(ribbons: usize, count: usize, seed: u64) -> Outcome {
    if ribbons == 0 {
        return Err(Failure::Domain("--ribbons must be at least 1".into()));
    }
    let mut problems = Vec::new();
    let mut checked = 0;
    for k in 0..count {
        let s = seed.wrapping_add(k as u64);
        let genus = (s % (ribbons as u64 + 1)) as usize;
        let f = match oracle::random_fatgraph(ribbons, genus, s) {
            Ok(f) => f,
            Err(e) if !e.is_internal() => continue,
            Err(e) => return Err(e.into()),
        };
        checked += 1;
        let formula = planner::r_distance(&f)?;
        match planner::plan(&f).and_then(|p| planner::execute_plan(&f, &p).map(|ex| (p, ex))) {
            Ok((p, ex)) if p.len() == formula && ex.result.euler_genus() == 0 => {}
            Ok((p, _)) => problems.push(format!("seed {s}: plan of {} steps, formula {formula}", p.len())),
            Err(e) => problems.push(format!("seed {s}: {e}")),
        }
        if ribbons <= FUZZ_SEARCH_LIMIT {
            let b = oracle::bfs_distance(&f, oracle::DEFAULT_STATE_BOUND)?;
            if b.distance != formula {
                problems.push(format!("seed {s}: search distance {}, formula {formula}", b.distance));
            }
        }
        for r in fatgraph::reversal::legal_reversals(&f) {
            let rep = oracle::check_properties(&f, r)?;
            for fail in rep.failures() {
                problems.push(format!("seed {s}: {r}: {:?} {}", fail.contract, fail.detail.as_deref().unwrap_or("")));
            }
        }
    }
    println!("{checked} samples, {} problems", problems.len());
    if problems.is_empty() {
        return Ok(());
    }
    for p in &problems {
        eprintln!("{p}");
    }
    Err(Failure::Internal(format!("{} inconsistencies", problems.len())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Info { file, json } => info(file, *json),
        Command::Components { file, dot } => components(file, dot.as_deref()),
        Command::Blocks { file, dot } => blocks(file, dot.as_deref()),
        Command::Distance { file } => {
            load_unicellular(file).and_then(|f| Ok(planner::r_distance(&f)?)).map(|d| println!("{d}"))
        }
        Command::Plan { file, o } => plan(file, o.as_deref()),
        Command::Apply { file, script, o } => apply(file, script, o.as_deref()),
        Command::Oracle { file, max_states } => run_oracle(file, *max_states),
        Command::Gen { ribbons, genus, seed, o } => gen(*ribbons, *genus, *seed, o.as_deref()),
        Command::Fuzz { ribbons, count, seed } => fuzz(*ribbons, *count, *seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal inconsistency: {msg}");
            ExitCode::from(2)
        }
    }
}
