use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;

use kirwan::cohomology::GradedCohomology;
use kirwan::reduction::{KirwanMap, ReductionError};
use kirwan::report::{self, args, catalog, expr, load_space, PlotSpec, SpaceDocument};
use kirwan::space::{gkm_warnings, validate, GkmSpace};

#[derive(Parser)]
#[command(
    name = "kirwan",
    version,
    about = "Equivariant cohomology and Kirwan kernels of Hamiltonian torus spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SpaceArg {
    /// `builtin:<name>` or a path to a JSON space document
    #[arg(long)]
    space: String,
}

#[derive(clap::Args)]
struct LevelArgs {
    /// Regular value, comma-separated rationals (e.g. 5/4,5/4)
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    /// `full`, or inclusion columns separated by `;` (e.g. 1,2)
    #[arg(long, default_value = "full")]
    subtorus: String,
    /// Highest cohomological degree computed (default: real dimension)
    #[arg(long)]
    degree_bound: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the data invariants of a space
    Validate(SpaceArg),
    /// Dimensions of equivariant cohomology by degree
    Betti {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        degree_bound: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Betti numbers of a symplectic reduction
    Reduce {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        level: LevelArgs,
        /// `walls` or `walls+samples:N`
        #[arg(long, default_value = "walls")]
        directions: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also compute the multiplication table of the reduced ring
        #[arg(long)]
        structure: bool,
        /// Print the JSON report instead of the table
        #[arg(long)]
        json: bool,
        /// Also write the JSON report to this file
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Basis of one degree of the kernel, or membership of a named class
    Kernel {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long)]
        degree: Option<u32>,
        /// List the wall normals that kill each generator on their own
        #[arg(long)]
        witness: bool,
        /// Test this class expression (e.g. "x⊗x") instead
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Render a rank-2 moment polytope as SVG
    Plot {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        /// Label fixed points with the restrictions of this class
        #[arg(long)]
        class: Option<String>,
        /// Normal of a hyperplane through mu; repeatable
        #[arg(long = "hyperplane", allow_hyphen_values = true)]
        hyperplanes: Vec<String>,
        #[arg(long)]
        no_walls: bool,
    },
    /// List built-in spaces, or print one as a JSON document
    Catalog {
        #[arg(long)]
        name: Option<String>,
    },
}

enum Failure {
    /// Bad input: exit code 2.
    Usage(String),
    /// Well-formed input the mathematics rejects: exit code 1.
    Domain(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn domain(e: impl ToString) -> Failure {
    Failure::Domain(e.to_string())
}

fn reduction_failure(e: ReductionError) -> Failure {
    match e {
        ReductionError::DirectionLength { .. } | ReductionError::ZeroDirection => usage(e),
        _ => domain(e),
    }
}

fn load(arg: &SpaceArg) -> Result<Arc<GkmSpace>, Failure> {
    let space = load_space(&arg.space).map_err(usage)?;
    let violations = validate(&space);
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Failure::Domain(lines.join("\n")));
    }
    Ok(Arc::new(space))
}

fn kirwan_map(space: &Arc<GkmSpace>, level: &LevelArgs) -> Result<KirwanMap, Failure> {
    let mu = args::parse_rationals(&level.mu).map_err(usage)?;
    let subtorus = args::parse_subtorus(&level.subtorus, space.rank()).map_err(usage)?;
    if mu.len() != subtorus.rank() {
        return Err(usage(format!(
            "mu has {} entries, subtorus has rank {}",
            mu.len(),
            subtorus.rank()
        )));
    }
    KirwanMap::new(space.clone(), subtorus, mu, level.degree_bound).map_err(reduction_failure)
}

fn emit<T: Serialize>(value: &T) {
    print!("{}", report::to_json(value));
}

fn cmd_validate(arg: &SpaceArg) -> Outcome {
    let space = load_space(&arg.space).map_err(usage)?;
    let violations = validate(&space);
    for v in &violations {
        println!("{v}");
    }
    if !violations.is_empty() {
        return Err(Failure::Domain(format!("{} violation(s)", violations.len())));
    }
    for w in gkm_warnings(&space) {
        println!("warning: {w}");
    }
    println!("ok: {} fixed points, {} edges", space.points.len(), space.edges.len());
    Ok(())
}

#[derive(Serialize)]
struct BettiTable {
    degrees: Vec<u32>,
    dims: Vec<usize>,
}

fn cmd_betti(arg: &SpaceArg, degree_bound: Option<u32>, json: bool) -> Outcome {
    let space = load(arg)?;
    let bound = degree_bound.unwrap_or((space.real_dim() as u32).max(8));
    let h = GradedCohomology::new(space, bound).map_err(domain)?;
    let table = BettiTable {
        degrees: h.bases().iter().map(|b| b.degree()).collect(),
        dims: h.dims(),
    };
    if json {
        emit(&table);
    } else {
        println!("{:>6} {:>8}", "degree", "dim H");
        for (d, n) in table.degrees.iter().zip(&table.dims) {
            println!("{d:>6} {n:>8}");
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_reduce(
    arg: &SpaceArg,
    level: &LevelArgs,
    directions: &str,
    seed: u64,
    structure: bool,
    json: bool,
    output: Option<&PathBuf>,
) -> Outcome {
    let space = load(arg)?;
    let set = args::parse_directions(directions, seed).map_err(usage)?;
    let map = kirwan_map(&space, level)?;
    let r = map.reduce(&set, structure).map_err(reduction_failure)?;
    let text = report::to_json(&r);
    if let Some(path) = output {
        std::fs::write(path, &text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if json {
        print!("{text}");
    } else {
        print!("{r}");
    }
    Ok(())
}

#[derive(Serialize)]
struct KernelGenerator {
    restrictions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witnesses: Option<Vec<Vec<i64>>>,
}

#[derive(Serialize)]
struct KernelListing {
    degree: u32,
    dim_h: usize,
    dim_kernel: usize,
    generators: Vec<KernelGenerator>,
}

#[derive(Serialize)]
struct ClassVerdict {
    class: String,
    degree: u32,
    in_kernel: bool,
    witnesses: Vec<Vec<i64>>,
}

fn cmd_kernel(
    arg: &SpaceArg,
    level: &LevelArgs,
    degree: Option<u32>,
    witness: bool,
    class: Option<&str>,
    json: bool,
) -> Outcome {
    let space = load(arg)?;
    let map = kirwan_map(&space, level)?;
    if let Some(src) = class {
        let c = expr::class(src, &space).map_err(usage)?;
        let v = map.verify_class_in_kernel(&c).map_err(reduction_failure)?;
        let out = ClassVerdict {
            class: src.to_string(),
            degree: c.degree(),
            in_kernel: v.in_kernel,
            witnesses: v.witnesses,
        };
        if json {
            emit(&out);
        } else {
            println!(
                "{} (degree {}): {}",
                out.class,
                out.degree,
                if out.in_kernel { "in kernel" } else { "not in kernel" }
            );
            for w in &out.witnesses {
                println!("  witnessed by {w:?}");
            }
        }
        return Ok(());
    }
    let degree = degree.ok_or_else(|| usage("kernel needs --degree or --class"))?;
    if !degree.is_multiple_of(2) {
        return Err(usage(format!("degree must be even, got {degree}")));
    }
    let directions = map.default_directions().map_err(reduction_failure)?;
    let slice = map.kernel_ideal(&directions, degree).map_err(reduction_failure)?;
    let basis = map.cohomology().basis(degree).expect("degree checked by kernel_ideal");
    let mut generators = Vec::new();
    for coords in slice.subspace.basis_vectors() {
        let c = basis.class_from_coordinates(&coords).map_err(domain)?;
        let witnesses = if witness {
            let mut found = Vec::new();
            for xi in &directions {
                let s = map.half_space_kernel(xi, degree).map_err(reduction_failure)?;
                if s.subspace.contains(&coords).map_err(domain)? {
                    found.push(xi.clone());
                }
            }
            Some(found)
        } else {
            None
        };
        generators.push(KernelGenerator {
            restrictions: c.restrictions().iter().map(|f| f.to_string()).collect(),
            witnesses,
        });
    }
    let listing = KernelListing {
        degree,
        dim_h: basis.dim(),
        dim_kernel: slice.dim(),
        generators,
    };
    if json {
        emit(&listing);
    } else {
        println!(
            "degree {}: kernel dimension {} of {}",
            degree, listing.dim_kernel, listing.dim_h
        );
        let names: Vec<&str> = space.points.iter().map(|p| p.name.as_str()).collect();
        for (i, g) in listing.generators.iter().enumerate() {
            let parts: Vec<String> = names
                .iter()
                .zip(&g.restrictions)
                .map(|(n, r)| format!("{n}: {r}"))
                .collect();
            println!("k{i} = [{}]", parts.join(", "));
            if let Some(w) = &g.witnesses {
                println!("  witnesses: {w:?}");
            }
        }
    }
    Ok(())
}

fn cmd_plot(
    arg: &SpaceArg,
    output: &PathBuf,
    mu: Option<&str>,
    class: Option<&str>,
    hyperplanes: &[String],
    no_walls: bool,
) -> Outcome {
    let space = load(arg)?;
    let mu = mu.map(args::parse_rationals).transpose().map_err(usage)?;
    if mu.as_ref().is_some_and(|m| m.len() != space.rank()) {
        return Err(usage("mu must have one entry per torus coordinate"));
    }
    let hyperplanes = hyperplanes
        .iter()
        .map(|h| args::parse_direction(h))
        .collect::<Result<Vec<_>, _>>()
        .map_err(usage)?;
    let class = class.map(|c| expr::class(c, &space)).transpose().map_err(usage)?;
    let spec = PlotSpec {
        mu,
        hyperplanes,
        draw_walls: !no_walls,
        class,
    };
    let svg = report::plot(&space, &spec).map_err(domain)?;
    std::fs::write(output, svg).map_err(|e| usage(format!("cannot write {}: {e}", output.display())))?;
    println!("wrote {}", output.display());
    Ok(())
}

fn cmd_catalog(name: Option<&str>) -> Outcome {
    match name {
        None => {
            for n in catalog::NAMES {
                match *n {
                    "cpN" => println!("cpN (N = 1..8)"),
                    "cp2xcp2-k3" => println!("cp2xcp2-k3 (any dilation cp2xcp2-kN, N >= 1)"),
                    _ => println!("{n}"),
                }
            }
            Ok(())
        }
        Some(n) => {
            let space = catalog::builtin(n).ok_or_else(|| usage(format!("unknown builtin space {n:?}")))?;
            println!("{}", SpaceDocument::from_space(&space).to_json());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate(arg) => cmd_validate(arg),
        Command::Betti {
            space,
            degree_bound,
            json,
        } => cmd_betti(space, *degree_bound, *json),
        Command::Reduce {
            space,
            level,
            directions,
            seed,
            structure,
            json,
            output,
        } => cmd_reduce(space, level, directions, *seed, *structure, *json, output.as_ref()),
        Command::Kernel {
            space,
            level,
            degree,
            witness,
            class,
            json,
        } => cmd_kernel(space, level, *degree, *witness, class.as_deref(), *json),
        Command::Plot {
            space,
            output,
            mu,
            class,
            hyperplanes,
            no_walls,
        } => cmd_plot(space, output, mu.as_deref(), class.as_deref(), hyperplanes, *no_walls),
        Command::Catalog { name } => cmd_catalog(name.as_deref()),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
