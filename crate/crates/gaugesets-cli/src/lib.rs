//! Command-line front end for `gaugesets`.
//!
//! Exit codes: 0 success, 1 I/O or numerical failure, 2 bad command line or
//! gauge spec, 3 input violating its schema or the operation's
//! preconditions, 4 `--plot` on a model that is not planar, 5 a result with
//! no finite representation (for instance a spatial cone known only by its
//! rays).

pub mod error;
pub mod files;
#[doc(hidden)]
pub mod fuzz_support;
pub mod points;
pub mod spec;
pub mod svg;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use gaugesets::engine::{
    cone_gauge_g9, cone_gauge_quantile, conditional_core, conditional_hull, conditional_regions, selection_expectation,
    vorobev_quantile, AtomBodies, GridSpec,
};
use gaugesets::geometry::Region;
use gaugesets::model::{Partition, RandomSetModel};
use gaugesets::scalar::eval_gauge;
use gaugesets::ExtReal;

pub use error::{exit, CliError};
pub use files::{parse_region_file, parse_scenario_file, RegionFile, ScenarioFile, SCHEMA};
pub use points::{read_points_csv, PointTable};
pub use spec::{format_gauge_spec, parse_gauge_spec, SpecError};
pub use svg::render_svg;

#[derive(Debug, Parser)]
#[command(name = "gaugesets", version, about = "Set-valued gauges of random convex sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gauge of every coordinate column of a point CSV, per atom.
    Scalar {
        #[arg(long)]
        gauge: String,
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        atoms: AtomArgs,
    },
    /// Grid approximation of the set-valued gauge, per atom.
    Region(RegionArgs),
    /// Gauge of a random cone, or its Vorob'ev quantile.
    Cone {
        #[arg(long)]
        scenarios: PathBuf,
        /// `g9`, `quantile:ALPHA` or `vorobev:ALPHA`
        #[arg(long)]
        mode: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Selection expectation per atom.
    Expectation(BodyArgs),
    /// Conditional core per atom.
    Core(BodyArgs),
    /// Conditional convex hull per atom.
    Hull(BodyArgs),
    /// Seeded Gaussian sample written as CSV.
    SampleGaussian {
        /// mean, comma separated
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// covariance, row-major and comma separated
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
        #[arg(long)]
        n: usize,
        /// `GAUGESETS_SEED` is read when the flag is absent
        #[arg(long, env = "GAUGESETS_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct AtomArgs {
    /// CSV column holding the atom of each point
    #[arg(long)]
    pub atom_column: Option<String>,
    /// cut a numeric atom column into this many equal-frequency bins
    #[arg(long, requires = "atom_column")]
    pub bins: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// region file to write; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// SVG file to write (planar models only)
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// overlay the direction grid on the plot
    #[arg(long, requires = "plot")]
    pub show_grid: bool,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[arg(long)]
    pub gauge: String,
    #[arg(long, conflicts_with = "points", required_unless_present = "points")]
    pub scenarios: Option<PathBuf>,
    #[arg(long)]
    pub points: Option<PathBuf>,
    /// number of grid directions (default 720 in the plane, 2048 above)
    #[arg(long)]
    pub grid: Option<usize>,
    /// seeds the random grid in dimension four and up; `GAUGESETS_SEED` is
    /// read when the flag is absent
    #[arg(long, env = "GAUGESETS_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub atoms: AtomArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BodyArgs {
    #[arg(long)]
    pub scenarios: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::runtime(format!("{}: {e}", p.display()))),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn fmt_ext(t: ExtReal) -> String {
    match t {
        ExtReal::Finite(x) => format!("{x}"),
        ExtReal::PosInf => "inf".into(),
        ExtReal::NegInf => "-inf".into(),
    }
}

fn gauge_arg(s: &str) -> Result<gaugesets::scalar::GaugeSpec, CliError> {
    parse_gauge_spec(s).map_err(|e| CliError::usage(e.to_string()))
}

fn load_scenarios(path: &Path) -> Result<(RandomSetModel, Partition), CliError> {
    let model = parse_scenario_file(&read(path)?)?.to_model()?;
    let partition = model.partition();
    Ok((model, partition))
}

fn load_points(path: &Path, atoms: &AtomArgs) -> Result<(PointTable, RandomSetModel, Partition), CliError> {
    let table = read_points_csv(&read(path)?, atoms.atom_column.as_deref(), atoms.bins)?;
    let (model, partition) = table.to_model()?;
    Ok((table, model, partition))
}

fn region_file(command: &str, gauge: Option<String>, grid: Option<usize>, seed: Option<u64>, atoms: &[(String, Region)]) -> RegionFile {
    RegionFile {
        schema: SCHEMA.into(),
        atoms: atoms.iter().map(|(l, r)| files::AtomEntry::from_region(l, r)).collect(),
        meta: files::RegionFileMeta { command: command.into(), gauge, grid, seed },
    }
}

fn write_outputs(
    file: &RegionFile,
    atoms: &[(String, Region)],
    output: &OutputArgs,
    grid: Option<&[Vec<f64>]>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    if let Some(plot) = &output.plot {
        let g = if output.show_grid { grid } else { None };
        emit(Some(plot), &render_svg(atoms, g), stdout)?;
    }
    emit(output.out.as_deref(), &files::to_json(file), stdout)
}

fn check_plot(output: &OutputArgs, dim: usize) -> Result<(), CliError> {
    if output.plot.is_some() && dim != 2 {
        return Err(CliError::new(exit::PLOT_DIM, format!("--plot needs a planar model, this one has dimension {dim}")));
    }
    Ok(())
}

fn bodies_to_regions(bodies: AtomBodies) -> Result<Vec<(String, Region)>, CliError> {
    bodies.into_iter().map(|(l, b)| Ok((l, Region::from_body(&b)?))).collect()
}

fn parse_list(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| match t.trim().parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => Err(CliError::usage(format!("--{what}: '{}' is not a finite number", t.trim()))),
        })
        .collect()
}

enum ConeMode {
    G9,
    Quantile(f64),
    Vorobev(f64),
}

fn parse_mode(s: &str) -> Result<ConeMode, CliError> {
    let level = |t: &str| match t.parse::<f64>() {
        Ok(a) if a > 0.0 && a <= 1.0 => Ok(a),
        _ => Err(CliError::usage(format!("--mode: level '{t}' outside (0, 1]"))),
    };
    match s.split_once(':') {
        None if s == "g9" => Ok(ConeMode::G9),
        Some(("quantile", a)) => Ok(ConeMode::Quantile(level(a)?)),
        Some(("vorobev", a)) => Ok(ConeMode::Vorobev(level(a)?)),
        _ => Err(CliError::usage(format!("--mode: unknown mode '{s}'"))),
    }
}

/// Runs one command, writing to `stdout` whatever has no `--out` file.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Scalar { gauge, input, atoms } => {
            let g = gauge_arg(&gauge)?;
            let (table, model, partition) = load_points(&input, &atoms)?;
            let mut text = format!("atom\t{}\n", table.columns.join("\t"));
            for cell in partition.cells() {
                text.push_str(&cell.label);
                for k in 0..model.dim() {
                    let mut e = vec![0.0; model.dim()];
                    e[k] = 1.0;
                    let t = eval_gauge(&g, &model.conditional_scalarize(&partition, &cell.label, &e)?)?;
                    text.push('\t');
                    text.push_str(&fmt_ext(t));
                }
                text.push('\n');
            }
            emit(None, &text, stdout)
        }
        Command::Region(args) => {
            let g = gauge_arg(&args.gauge)?;
            let (model, partition) = match (&args.scenarios, &args.points) {
                (Some(s), _) => load_scenarios(s)?,
                (None, Some(p)) => {
                    let (_, m, part) = load_points(p, &args.atoms)?;
                    (m, part)
                }
                (None, None) => return Err(CliError::usage("one of --scenarios or --points is required")),
            };
            check_plot(&args.output, model.dim())?;
            let mut spec = GridSpec::default_for(model.dim(), args.seed);
            if let Some(n) = args.grid {
                spec.n = n;
            }
            let grid = spec.directions(model.dim())?;
            let res = conditional_regions(&model, &partition, &g, &grid)?;
            let atoms: Vec<(String, Region)> = res.atoms.into_iter().map(|a| (a.label, a.region)).collect();
            let file = region_file("region", Some(format_gauge_spec(&g)), Some(grid.len()), Some(args.seed), &atoms);
            write_outputs(&file, &atoms, &args.output, Some(&grid), stdout)
        }
        Command::Cone { scenarios, mode, output } => {
            let m = parse_mode(&mode)?;
            let (model, partition) = load_scenarios(&scenarios)?;
            if !model.is_cone_model() {
                return Err(CliError::input("every scenario body must be a cone with apex at the origin"));
            }
            check_plot(&output, model.dim())?;
            let mut bodies = Vec::new();
            for cell in partition.cells() {
                let sub = model.atom_submodel(&partition, &cell.label)?;
                let body = match m {
                    ConeMode::G9 => cone_gauge_g9(&sub)?,
                    ConeMode::Quantile(a) => cone_gauge_quantile(&sub, a)?,
                    ConeMode::Vorobev(a) => vorobev_quantile(&sub, a)?.hull,
                };
                bodies.push((cell.label.clone(), body));
            }
            let atoms = bodies_to_regions(bodies)?;
            let file = region_file("cone", Some(mode), None, None, &atoms);
            write_outputs(&file, &atoms, &output, None, stdout)
        }
        Command::Expectation(args) => bodies_command("expectation", &args, selection_expectation, stdout),
        Command::Core(args) => bodies_command("core", &args, conditional_core, stdout),
        Command::Hull(args) => bodies_command("hull", &args, conditional_hull, stdout),
        Command::SampleGaussian { mu, sigma, n, seed, out } => {
            let mu = parse_list(&mu, "mu")?;
            let flat = parse_list(&sigma, "sigma")?;
            let d = mu.len();
            if flat.len() != d * d {
                return Err(CliError::usage(format!("--sigma needs {} entries for dimension {d}", d * d)));
            }
            let sigma: Vec<Vec<f64>> = flat.chunks(d).map(<[f64]>::to_vec).collect();
            let pts = gaugesets_testkit::mc_gaussian(&mu, &sigma, n, seed)?;
            let header: Vec<String> = (1..=d).map(|k| format!("x{k}")).collect();
            let mut text = header.join(",");
            text.push('\n');
            for p in pts {
                let row: Vec<String> = p.iter().map(|x| format!("{x}")).collect();
                text.push_str(&row.join(","));
                text.push('\n');
            }
            emit(out.as_deref(), &text, stdout)
        }
    }
}

fn bodies_command(
    name: &str,
    args: &BodyArgs,
    op: fn(&RandomSetModel, &Partition) -> gaugesets::Result<AtomBodies>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let (model, partition) = load_scenarios(&args.scenarios)?;
    let atoms = bodies_to_regions(op(&model, &partition)?)?;
    let file = region_file(name, None, None, None, &atoms);
    emit(args.out.as_deref(), &files::to_json(&file), stdout)
}
