use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use flagtwg::export::{hasse_dot, hasse_json, to_sorted_json, weight_graph_dot};
use flagtwg::flags::io::{FlagFile, FormFile};
use flagtwg::flags::{relative_position_full, relative_position_partial, relative_position_symplectic, ExactFlag};
use flagtwg::sl2reps::{
    admits_symplectic_form, anosov_type, anosov_type_symplectic, invariant_symplectic_form, partition_weights,
    so2_weight_basis, Partition,
};
use flagtwg::twg::{check_almost_complex_obstruction, classify_fiber, CircleGroup, FlagKind, WeightGraph};
use flagtwg::weyl::{Family, PositionPoset, RootSubset, RootSystem, WeylElement};
use serde_json::json;

mod artifacts;

const OUT_DIR_VAR: &str = "FLAGTWG_OUT_DIR";

#[derive(Parser)]
#[command(name = "flagtwg", version, about = "Bruhat orders, balanced ideals, relative positions and weight graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    A,
    C,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::A => Family::A,
            FamilyArg::C => Family::C,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Stage {
    Ambient,
    Fiber,
}

#[derive(Subcommand)]
enum Command {
    /// Hasse diagram of the Bruhat order on W_theta\W/W_eta
    Hasse {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        rank: usize,
        /// comma-separated simple roots, default all
        #[arg(long, value_parser = parse_roots)]
        theta: Option<RootSubset>,
        #[arg(long, value_parser = parse_roots)]
        eta: Option<RootSubset>,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Balanced ideals of W/W_eta with their minimal Anosov types
    Ideals {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_parser = parse_roots)]
        theta: Option<RootSubset>,
        #[arg(long, value_parser = parse_roots)]
        eta: Option<RootSubset>,
    },
    /// Relative position of two flags given as JSON files
    Position {
        f: PathBuf,
        h: PathBuf,
        /// symplectic form file; both flags must be isotropic
        #[arg(long)]
        symplectic: Option<PathBuf>,
    },
    /// Weights, Anosov type and symplectic data of an SL(2) representation
    Reps {
        #[arg(long)]
        partition: Partition,
    },
    /// Weight graph of the circle action for one partition and flag variety
    Twg {
        #[arg(long)]
        partition: Partition,
        #[arg(long)]
        flag: FlagKind,
        #[arg(long)]
        group: CircleGroup,
        #[arg(long, value_enum, default_value = "fiber")]
        stage: Stage,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Match a weight graph JSON file against the Hirzebruch catalogue
    Classify { graph: PathBuf },
    /// Three-dimensional flag varieties and the representation table
    Census {
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
    },
    /// Regenerate every artifact and compare with the goldens
    Reproduce {
        #[arg(long, default_value = "goldens")]
        golden_dir: PathBuf,
        /// overwrite the goldens instead of comparing
        #[arg(long)]
        bless: bool,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
    Golden(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Compute(_) => 2,
            Failure::Golden(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Compute(m) | Failure::Golden(m) => m,
        }
    }
}

fn compute<E: ToString>(e: E) -> Failure {
    Failure::Compute(e.to_string())
}

fn parse_roots(s: &str) -> Result<RootSubset, String> {
    if s.trim().is_empty() {
        return Ok(BTreeSet::new());
    }
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"))).collect()
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn position_text(w: &WeylElement) -> String {
    if w.is_identity() {
        "identity".to_string()
    } else {
        w.to_string()
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Hasse { family, rank, theta, eta, format } => {
            let p = artifacts::poset(family.into(), rank, theta, eta).map_err(Failure::Compute)?;
            Ok(match format {
                Format::Dot => hasse_dot(&p, None),
                Format::Json => to_sorted_json(&hasse_json(&p)),
            })
        }
        Command::Ideals { family, rank, theta, eta } => {
            let p = artifacts::poset(family.into(), rank, theta, eta).map_err(Failure::Compute)?;
            Ok(to_sorted_json(&artifacts::ideals_json(&p).map_err(Failure::Compute)?))
        }
        Command::Position { f, h, symplectic } => {
            let f: ExactFlag = read_json::<FlagFile>(&f)?.to_flag().map_err(|e| Failure::Usage(e.to_string()))?;
            let h: ExactFlag = read_json::<FlagFile>(&h)?.to_flag().map_err(|e| Failure::Usage(e.to_string()))?;
            if let Some(w) = symplectic {
                let omega = read_json::<FormFile>(&w)?.to_form().map_err(|e| Failure::Usage(e.to_string()))?;
                let pos = relative_position_symplectic(&f, &h, &omega).map_err(compute)?;
                return Ok(format!("{}\n", position_text(&pos)));
            }
            if f.signature().is_full() && h.signature().is_full() {
                let pos = relative_position_full(&f, &h).map_err(compute)?;
                return Ok(format!("{}\n", position_text(&pos)));
            }
            let sys = RootSystem::new(Family::A, f.ambient().saturating_sub(1)).map_err(compute)?;
            let poset = PositionPoset::new(sys, &f.signature().as_roots(), &h.signature().as_roots()).map_err(compute)?;
            let pos = relative_position_partial(&f, &h, &poset).map_err(compute)?;
            Ok(format!("{}\n", position_text(&pos.min_rep)))
        }
        Command::Reps { partition } => {
            let symplectic = admits_symplectic_form(&partition).map_err(compute)?;
            let basis = so2_weight_basis(&partition);
            let mut doc = json!({
                "partition": partition.to_string(),
                "weights": partition_weights(&partition),
                "anosov_type": anosov_type(&partition),
                "admits_symplectic_form": symplectic,
                "basis": basis.labels().iter().zip(basis.weights()).map(|(l, w)| json!({"label": l, "weight": w})).collect::<Vec<_>>(),
            });
            if symplectic {
                doc["anosov_type_symplectic"] = json!(anosov_type_symplectic(&partition).map_err(compute)?);
                let form = invariant_symplectic_form(&partition).map_err(compute)?;
                doc["symplectic_form"] = json!(FormFile::from_form(&form).gram);
            }
            Ok(to_sorted_json(&doc))
        }
        Command::Twg { partition, flag, group, stage, format } => {
            let c = flagtwg::twg::run_case(&partition, flag, group).map_err(compute)?;
            let g = match stage {
                Stage::Ambient => &c.ambient,
                Stage::Fiber => &c.fiber,
            };
            Ok(match format {
                Format::Json => to_sorted_json(g),
                Format::Dot => weight_graph_dot(g, &format!("twg_{}", partition.to_string().trim_matches(['(', ')']))),
            })
        }
        Command::Classify { graph } => {
            let g: WeightGraph = read_json(&graph)?;
            let c = classify_fiber(&g).map_err(compute)?;
            let almost_complex = check_almost_complex_obstruction(c.signature, c.euler);
            Ok(format!(
                "{}\t{}\tsignature={} euler={} almost_complex_possible={}\n",
                c.model, c.diffeotype, c.signature, c.euler, almost_complex
            ))
        }
        Command::Census { max_rank } => Ok(to_sorted_json(&artifacts::census_json(max_rank).map_err(Failure::Compute)?)),
        Command::Reproduce { golden_dir, bless } => reproduce(&golden_dir, bless),
    }
}

fn reproduce(golden_dir: &Path, bless: bool) -> Result<String, Failure> {
    let files = artifacts::all().map_err(Failure::Compute)?;
    let out_dir = PathBuf::from(std::env::var_os(OUT_DIR_VAR).unwrap_or_else(|| "flagtwg-out".into()));
    let write_all = |dir: &Path| -> Result<(), Failure> {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Compute(format!("{}: {e}", dir.display())))?;
        for (name, text) in &files {
            let path = dir.join(name);
            std::fs::write(&path, text).map_err(|e| Failure::Compute(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    };
    write_all(&out_dir)?;
    if bless {
        write_all(golden_dir)?;
        return Ok(format!("blessed {} files into {}\n", files.len(), golden_dir.display()));
    }
    for (name, text) in &files {
        let path = golden_dir.join(name);
        let expected = std::fs::read_to_string(&path)
            .map_err(|e| Failure::Golden(format!("{}: missing golden ({e})", path.display())))?;
        if expected != *text {
            let (line, want, got) = artifacts::first_difference(&expected, text)
                .unwrap_or((0, "<trailing whitespace>".into(), "<trailing whitespace>".into()));
            return Err(Failure::Golden(format!("{name}:{line}: expected {want:?}, got {got:?}")));
        }
    }
    Ok(format!("all {} goldens match\n", files.len()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                // --help and --version
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("usage error");
            eprintln!("flagtwg: {}", first.trim_start_matches("error: "));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("flagtwg: {}", f.message().lines().next().unwrap_or(""));
            ExitCode::from(f.code())
        }
    }
}
