//! Command-line front end: builds systems from flags or a JSON config file,
//! runs spectrum tables and the operator-identity suite, and emits
//! deterministic JSON or TSV reports.
//!
//! Exit codes: 0 success (a numerically confirmed corrected identity counts
//! as success), 2 invalid usage or configuration, 3 solver failure, 4 an
//! identity failed both symbolic and numeric confirmation.

mod emit;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use emit::{fmt_e, json_doc, tsv_table, tsv_text};
use kg_symm::model::{QuantumNumbers, SpectrumLine, SystemClass, SystemSpec};
use kg_symm::numlab::{self_consistent_spectrum, NumlabError};
use kg_symm::par::{map_collect, threads_from_env, with_pool, ExecMode};
use kg_symm::spectra::{catalog, level_energy, uniform_map, SpectraError};
use kg_symm::suite::run_suite;

const SPECTRUM_SCHEMA: &str = "kg-symm/spectrum/v1";
const ALGEBRA_SCHEMA: &str = "kg-symm/algebra-report/v1";
const LIMITS_SCHEMA: &str = "kg-symm/limit-sweep/v1";

#[derive(Parser)]
#[command(
    name = "kg-symm",
    version,
    about = "Symmetry algebra and spectra of the 2D Klein-Gordon equation \
             with equal scalar and vector potentials"
)]
struct Cli {
    /// JSON config file mirroring the flags; explicit flags win.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Report format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Relativistic levels from the closed-form and implicit equations.
    Spectrum(SpectrumArgs),
    /// Run the operator-identity suite for one system class.
    VerifyAlgebra(VerifyArgs),
    /// Self-consistent numeric levels with analytic comparison columns.
    Radial(RadialArgs),
    /// Flat-limit and nonrelativistic-limit sweeps.
    Limits(LimitsArgs),
    /// Levels through the uniform map over nonrelativistic spectra.
    Map(MapArgs),
}

#[derive(Args)]
struct SystemArgs {
    /// `plane` or `sphere`.
    #[arg(long)]
    geometry: Option<String>,
    /// `coulomb` or `oscillator`.
    #[arg(long)]
    potential: Option<String>,
    /// Particle mass, positive.
    #[arg(long)]
    m: Option<f64>,
    /// Coulomb strength, positive.
    #[arg(long)]
    k: Option<f64>,
    /// Oscillator frequency; 0 is the free limit (spectrum only).
    #[arg(long)]
    omega: Option<f64>,
    /// Sphere curvature; 0 reduces to the plane.
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Highest principal quantum number to include.
    #[arg(long)]
    n_max: Option<u32>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Class token: plane-coulomb, plane-oscillator, sphere-coulomb or
    /// sphere-oscillator.
    #[arg(long)]
    system: Option<String>,
    /// Also cross-check every identity on wave packets.
    #[arg(long)]
    numeric: bool,
}

#[derive(Args)]
struct RadialArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Angular quantum number of the `exp(i l theta)` factor.
    #[arg(long, allow_negative_numbers = true)]
    l: Option<i32>,
    /// How many radial excitations to solve, starting at the nodeless one.
    #[arg(long)]
    levels: Option<usize>,
}

#[derive(Args)]
struct LimitsArgs {
    /// `coulomb` or `oscillator`.
    #[arg(long)]
    potential: Option<String>,
    /// Particle mass for the curvature sweep; the mass sweep overrides it.
    #[arg(long)]
    m: Option<f64>,
    /// Coulomb strength.
    #[arg(long)]
    k: Option<f64>,
    /// Oscillator frequency.
    #[arg(long)]
    omega: Option<f64>,
    /// Highest principal quantum number in the sweeps.
    #[arg(long)]
    n_max: Option<u32>,
}

#[derive(Args)]
struct MapArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Highest principal quantum number to include.
    #[arg(long)]
    n_max: Option<u32>,
}

/// Config file contents; every key mirrors a flag.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    geometry: Option<String>,
    potential: Option<String>,
    system: Option<String>,
    m: Option<f64>,
    k: Option<f64>,
    omega: Option<f64>,
    lambda: Option<f64>,
    n_max: Option<u32>,
    l: Option<i32>,
    levels: Option<usize>,
    numeric: Option<bool>,
    format: Option<String>,
    output: Option<String>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Solver(String),
    Verify(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Solver(_) => 3,
            Failure::Verify(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Solver(m) | Failure::Verify(m) => m,
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl From<SpectraError> for Failure {
    fn from(e: SpectraError) -> Failure {
        match e {
            SpectraError::WrongFamily { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Solver(e.to_string()),
        }
    }
}

impl From<NumlabError> for Failure {
    fn from(e: NumlabError) -> Failure {
        match e {
            NumlabError::FlatOnly => Failure::Usage(e.to_string()),
            _ => Failure::Solver(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("kg-symm: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let threads = threads_from_env().map_err(|e| usage(e.to_string()))?;
    let file = load_config(cli.config.as_deref())?;
    let format = match (cli.format, file.format.as_deref()) {
        (Some(f), _) => f,
        (None, Some("json")) => Format::Json,
        (None, Some("tsv")) => Format::Tsv,
        (None, Some(other)) => return Err(usage(format!("unknown format `{other}`"))),
        (None, None) => Format::Json,
    };
    let output = cli
        .output
        .clone()
        .or_else(|| file.output.clone().map(PathBuf::from));
    let report = with_pool(threads, || dispatch(&cli.cmd, &file))?;
    let text = match format {
        Format::Json => json_doc(&report.json),
        Format::Tsv => report.tsv.clone(),
    };
    match &output {
        Some(path) => fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    match report.post {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

fn load_config(path: Option<&Path>) -> Result<FileConfig, Failure> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("config {}: {e}", path.display())))
}

fn pick<T: Clone>(flag: &Option<T>, file: &Option<T>) -> Option<T> {
    flag.clone().or_else(|| file.clone())
}

fn need<T: Clone>(flag: &Option<T>, file: &Option<T>, name: &str) -> Result<T, Failure> {
    pick(flag, file).ok_or_else(|| usage(format!("missing required value `{name}`")))
}

struct Report {
    json: Value,
    tsv: String,
    /// Failure to signal after the report has been written.
    post: Option<Failure>,
}

fn dispatch(cmd: &Cmd, file: &FileConfig) -> Result<Report, Failure> {
    match cmd {
        Cmd::Spectrum(a) => cmd_spectrum(a, file),
        Cmd::VerifyAlgebra(a) => cmd_verify_algebra(a, file),
        Cmd::Radial(a) => cmd_radial(a, file),
        Cmd::Limits(a) => cmd_limits(a, file),
        Cmd::Map(a) => cmd_map(a, file),
    }
}

/// System parameters after flag/config merging and the `lambda = 0` plane
/// reduction.
#[derive(Clone, Copy)]
struct Resolved {
    coulomb: bool,
    mass: f64,
    /// `k` for Coulomb, `omega` for the oscillator.
    coupling: f64,
    /// 0 on the plane.
    curvature: f64,
}

impl Resolved {
    fn from(args: &SystemArgs, file: &FileConfig) -> Result<Resolved, Failure> {
        let geometry = need(&args.geometry, &file.geometry, "--geometry")?;
        let potential = need(&args.potential, &file.potential, "--potential")?;
        let mass = need(&args.m, &file.m, "--m")?;
        let coulomb = match potential.as_str() {
            "coulomb" => true,
            "oscillator" => false,
            other => return Err(usage(format!("unknown potential `{other}`"))),
        };
        let curvature = match geometry.as_str() {
            "plane" => {
                if let Some(lam) = pick(&args.lambda, &file.lambda) {
                    if lam != 0.0 {
                        return Err(usage(
                            "plane geometry takes no curvature; use --geometry sphere",
                        ));
                    }
                }
                0.0
            }
            "sphere" => need(&args.lambda, &file.lambda, "--lambda")?,
            other => return Err(usage(format!("unknown geometry `{other}`"))),
        };
        if mass <= 0.0 || !mass.is_finite() {
            return Err(usage(format!("mass must be positive, got {mass}")));
        }
        if curvature < 0.0 || !curvature.is_finite() {
            return Err(usage(format!(
                "curvature must be nonnegative, got {curvature}"
            )));
        }
        let coupling = if coulomb {
            let k = need(&args.k, &file.k, "--k")?;
            if k <= 0.0 || !k.is_finite() {
                return Err(usage(
                    "Coulomb strength must be positive; the k -> 0 limit binds nothing",
                ));
            }
            k
        } else {
            let w = need(&args.omega, &file.omega, "--omega")?;
            if w < 0.0 || !w.is_finite() {
                return Err(usage(format!("frequency must be nonnegative, got {w}")));
            }
            w
        };
        Ok(Resolved {
            coulomb,
            mass,
            coupling,
            curvature,
        })
    }

    fn spec(&self) -> Result<SystemSpec, Failure> {
        let built = match (self.coulomb, self.curvature > 0.0) {
            (true, false) => SystemSpec::flat_coulomb(self.coupling, self.mass),
            (true, true) => SystemSpec::sphere_coulomb(self.curvature, self.coupling, self.mass),
            (false, false) => SystemSpec::flat_oscillator(self.coupling, self.mass),
            (false, true) => {
                SystemSpec::sphere_oscillator(self.curvature, self.coupling, self.mass)
            }
        };
        built.map_err(|e| usage(e.to_string()))
    }

    fn system_value(&self) -> Value {
        let mut m = Map::new();
        let geometry = if self.curvature > 0.0 {
            "sphere"
        } else {
            "plane"
        };
        let potential = if self.coulomb {
            "coulomb"
        } else {
            "oscillator"
        };
        m.insert("geometry".into(), json!(geometry));
        m.insert("potential".into(), json!(potential));
        m.insert("mass".into(), json!(self.mass));
        let coupling_key = if self.coulomb {
            "strength"
        } else {
            "frequency"
        };
        m.insert(coupling_key.into(), json!(self.coupling));
        if self.curvature > 0.0 {
            m.insert("curvature".into(), json!(self.curvature));
        }
        Value::Object(m)
    }

    /// Nonrelativistic level function for the uniform map. Oscillator
    /// entries take the substitution invariant `c = m w^2`.
    fn nonrel_catalog(&self) -> Box<dyn Fn(f64, QuantumNumbers) -> f64 + Send + Sync> {
        let c = self.mass * self.coupling * self.coupling;
        match (self.coulomb, self.curvature > 0.0) {
            (true, false) => Box::new(catalog::plane_coulomb(self.coupling)),
            (true, true) => Box::new(catalog::sphere_coulomb(self.coupling, self.curvature)),
            (false, false) => Box::new(catalog::plane_oscillator(c)),
            (false, true) => Box::new(catalog::sphere_oscillator(c, self.curvature)),
        }
    }

    fn quantum_numbers(&self, n_max: u32) -> Result<Vec<QuantumNumbers>, Failure> {
        if self.coulomb {
            if n_max == 0 {
                return Err(usage("--n-max must be at least 1 for Coulomb (n = 2j + 1)"));
            }
            Ok((0..=(n_max - 1) / 2)
                .map(|j| QuantumNumbers::CoulombJ { j })
                .collect())
        } else {
            Ok((0..=n_max)
                .map(|t| QuantumNumbers::OscillatorS { twice_s: t })
                .collect())
        }
    }
}

const SPECTRUM_HEADER: &[&str] = &[
    "n",
    "label",
    "degeneracy",
    "epsilon",
    "e_eff",
    "residual",
    "suspect",
];

fn spectrum_row(line: &SpectrumLine) -> Value {
    json!({
        "n": line.qn.n(),
        "label": line.qn.label(),
        "degeneracy": line.degeneracy,
        "epsilon": line.epsilon,
        "e_eff": line.e_eff,
        "residual": line.residual,
        "suspect": line.suspect,
    })
}

fn spectrum_cells(line: &SpectrumLine) -> Vec<String> {
    vec![
        line.qn.n().to_string(),
        tsv_text(&line.qn.label()),
        line.degeneracy.to_string(),
        fmt_e(line.epsilon),
        fmt_e(line.e_eff),
        fmt_e(line.residual),
        line.suspect.to_string(),
    ]
}

fn cmd_spectrum(args: &SpectrumArgs, file: &FileConfig) -> Result<Report, Failure> {
    let sys = Resolved::from(&args.system, file)?;
    let n_max = need(&args.n_max, &file.n_max, "--n-max")?;
    let qns = sys.quantum_numbers(n_max)?;
    let lines: Vec<SpectrumLine> = if !sys.coulomb && sys.coupling == 0.0 && sys.curvature == 0.0 {
        // Free limit: the cubic degenerates and the physical branch is the
        // rest energy for every level.
        qns.iter()
            .map(|&qn| SpectrumLine {
                qn,
                degeneracy: qn.degeneracy(),
                epsilon: sys.mass,
                e_eff: 0.0,
                residual: 0.0,
                suspect: false,
            })
            .collect()
    } else {
        let spec = sys.spec()?;
        map_collect(ExecMode::Parallel, qns, move |qn| level_energy(&spec, qn))
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?
    };
    let json = json!({
        "schema": SPECTRUM_SCHEMA,
        "system": sys.system_value(),
        "rows": lines.iter().map(spectrum_row).collect::<Vec<_>>(),
    });
    let cells: Vec<Vec<String>> = lines.iter().map(spectrum_cells).collect();
    Ok(Report {
        json,
        tsv: tsv_table(SPECTRUM_HEADER, &cells),
        post: None,
    })
}

fn cmd_verify_algebra(args: &VerifyArgs, file: &FileConfig) -> Result<Report, Failure> {
    let token = need(&args.system, &file.system, "--system")?;
    let class = SystemClass::from_token(&token).ok_or_else(|| {
        usage(format!(
            "unknown system `{token}`; expected plane-coulomb, plane-oscillator, \
             sphere-coulomb or sphere-oscillator"
        ))
    })?;
    let numeric = args.numeric || file.numeric.unwrap_or(false);
    let report = run_suite(class, numeric, ExecMode::Parallel)?;

    let mut doc = Map::new();
    doc.insert("schema".into(), json!(ALGEBRA_SCHEMA));
    let Value::Object(fields) = serde_json::to_value(&report).expect("report serializes") else {
        unreachable!("AlgebraReport is a struct");
    };
    doc.extend(fields);

    let header = &[
        "name",
        "symbolic_zero",
        "residual_terms",
        "corrected_rhs",
        "numeric_residual",
        "claimed_numeric_residual",
        "pass",
    ];
    let cells: Vec<Vec<String>> = report
        .outcomes
        .iter()
        .map(|o| {
            vec![
                o.name.to_string(),
                o.symbolic_zero.to_string(),
                o.residual_terms.to_string(),
                o.corrected_rhs.as_deref().map(tsv_text).unwrap_or_default(),
                o.numeric_residual.map(fmt_e).unwrap_or_default(),
                o.claimed_numeric_residual.map(fmt_e).unwrap_or_default(),
                o.pass.to_string(),
            ]
        })
        .collect();

    let post = if report.all_pass {
        None
    } else {
        let failed: Vec<&str> = report
            .outcomes
            .iter()
            .filter(|o| !o.pass)
            .map(|o| o.name)
            .collect();
        Some(Failure::Verify(format!(
            "identities failed both symbolic and numeric confirmation: {}",
            failed.join(", ")
        )))
    };
    Ok(Report {
        json: Value::Object(doc),
        tsv: tsv_table(header, &cells),
        post,
    })
}

fn cmd_radial(args: &RadialArgs, file: &FileConfig) -> Result<Report, Failure> {
    let sys = Resolved::from(&args.system, file)?;
    if sys.curvature > 0.0 {
        return Err(usage(
            "radial treats flat geometry only; sphere spectra are checked symbolically",
        ));
    }
    if !sys.coulomb && sys.coupling == 0.0 {
        return Err(usage("the free oscillator has no bound radial problem"));
    }
    let l = need(&args.l, &file.l, "--l")?;
    let levels = need(&args.levels, &file.levels, "--levels")?;
    if levels == 0 {
        return Err(usage("--levels must be at least 1"));
    }
    let spec = sys.spec()?;
    let rows = map_collect(ExecMode::Parallel, (0..levels).collect(), move |ri| {
        let scf = self_consistent_spectrum(&spec, l, ri)?;
        let reference = level_energy(&spec, scf.qn)?;
        Ok::<_, Failure>((ri, scf, reference))
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;

    let json_rows: Vec<Value> = rows
        .iter()
        .map(|(ri, scf, reference)| {
            let rel_dev =
                (scf.epsilon - reference.epsilon).abs() / reference.epsilon.abs().max(f64::EPSILON);
            let mut row = Map::new();
            row.insert("l".into(), json!(l));
            row.insert("n_r".into(), json!(*ri));
            let Value::Object(base) = spectrum_row(scf) else {
                unreachable!()
            };
            row.extend(base);
            row.insert("epsilon_analytic".into(), json!(reference.epsilon));
            row.insert("rel_dev".into(), json!(rel_dev));
            Value::Object(row)
        })
        .collect();
    let header = &[
        "l",
        "n_r",
        "n",
        "label",
        "degeneracy",
        "epsilon",
        "e_eff",
        "residual",
        "suspect",
        "epsilon_analytic",
        "rel_dev",
    ];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|(ri, scf, reference)| {
            let rel_dev =
                (scf.epsilon - reference.epsilon).abs() / reference.epsilon.abs().max(f64::EPSILON);
            let mut cells = vec![l.to_string(), ri.to_string()];
            cells.extend(spectrum_cells(scf));
            cells.push(fmt_e(reference.epsilon));
            cells.push(fmt_e(rel_dev));
            cells
        })
        .collect();
    let json = json!({
        "schema": SPECTRUM_SCHEMA,
        "system": sys.system_value(),
        "rows": json_rows,
    });
    Ok(Report {
        json,
        tsv: tsv_table(header, &cells),
        post: None,
    })
}

const CURVATURE_SWEEP: [f64; 4] = [1e-2, 1e-4, 1e-6, 1e-8];
const MASS_SWEEP: [f64; 3] = [1e2, 1e4, 1e6];

fn cmd_limits(args: &LimitsArgs, file: &FileConfig) -> Result<Report, Failure> {
    let potential = need(&args.potential, &file.potential, "--potential")?;
    let coulomb = match potential.as_str() {
        "coulomb" => true,
        "oscillator" => false,
        other => return Err(usage(format!("unknown potential `{other}`"))),
    };
    let mass = need(&args.m, &file.m, "--m")?;
    let coupling = if coulomb {
        need(&args.k, &file.k, "--k")?
    } else {
        need(&args.omega, &file.omega, "--omega")?
    };
    if !mass.is_finite() || mass <= 0.0 || !coupling.is_finite() || coupling <= 0.0 {
        return Err(usage("mass and coupling must be positive"));
    }
    let n_max = pick(&args.n_max, &file.n_max).unwrap_or(7);
    let base = Resolved {
        coulomb,
        mass,
        coupling,
        curvature: 0.0,
    };
    let qns = base.quantum_numbers(n_max)?;

    // Curvature sweep: sphere levels against the plane at the same numbers.
    let mut jobs: Vec<(bool, f64, QuantumNumbers)> = Vec::new();
    for lambda in CURVATURE_SWEEP {
        for &qn in &qns {
            jobs.push((true, lambda, qn));
        }
    }
    // Mass sweep: relativistic effective energy against the Schrödinger
    // level at the same bare mass.
    for big_mass in MASS_SWEEP {
        for &qn in &qns {
            jobs.push((false, big_mass, qn));
        }
    }

    let rows = map_collect(
        ExecMode::Parallel,
        jobs,
        move |(flat_check, parameter, qn)| {
            if flat_check {
                let lambda = parameter;
                let sphere = Resolved {
                    coulomb,
                    mass,
                    coupling,
                    curvature: lambda,
                };
                let eps_sphere = level_energy(&sphere.spec()?, qn)?.epsilon;
                let eps_plane = level_energy(&base.spec()?, qn)?.epsilon;
                let rel_dev = (eps_sphere - eps_plane).abs() / eps_plane.abs().max(f64::EPSILON);
                Ok::<_, Failure>((
                    "sphere-to-plane",
                    parameter,
                    qn,
                    eps_sphere,
                    eps_plane,
                    rel_dev,
                ))
            } else {
                let big = Resolved {
                    coulomb,
                    mass: parameter,
                    coupling,
                    curvature: 0.0,
                };
                let e_rel = level_energy(&big.spec()?, qn)?.e_eff;
                let e_nr = big.nonrel_catalog()(parameter, qn);
                let rel_dev = (e_rel - e_nr).abs() / e_nr.abs().max(f64::EPSILON);
                Ok::<_, Failure>(("nonrelativistic", parameter, qn, e_rel, e_nr, rel_dev))
            }
        },
    )
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;

    let json_rows: Vec<Value> = rows
        .iter()
        .map(|(check, parameter, qn, value, reference, rel_dev)| {
            json!({
                "check": check,
                "parameter": parameter,
                "label": qn.label(),
                "value": value,
                "reference": reference,
                "rel_dev": rel_dev,
            })
        })
        .collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|(check, parameter, qn, value, reference, rel_dev)| {
            vec![
                check.to_string(),
                fmt_e(*parameter),
                tsv_text(&qn.label()),
                fmt_e(*value),
                fmt_e(*reference),
                fmt_e(*rel_dev),
            ]
        })
        .collect();

    let mut sys = Map::new();
    sys.insert(
        "potential".into(),
        json!(if coulomb { "coulomb" } else { "oscillator" }),
    );
    sys.insert("mass".into(), json!(mass));
    sys.insert(
        if coulomb { "strength" } else { "frequency" }.into(),
        json!(coupling),
    );
    let json = json!({
        "schema": LIMITS_SCHEMA,
        "system": Value::Object(sys),
        "rows": json_rows,
    });
    let header = &[
        "check",
        "parameter",
        "label",
        "value",
        "reference",
        "rel_dev",
    ];
    Ok(Report {
        json,
        tsv: tsv_table(header, &cells),
        post: None,
    })
}

fn cmd_map(args: &MapArgs, file: &FileConfig) -> Result<Report, Failure> {
    let sys = Resolved::from(&args.system, file)?;
    if !sys.coulomb && sys.coupling == 0.0 {
        return Err(usage("the free oscillator has nothing to map"));
    }
    let n_max = need(&args.n_max, &file.n_max, "--n-max")?;
    let qns = sys.quantum_numbers(n_max)?;
    let spec = sys.spec()?;
    let nonrel = sys.nonrel_catalog();
    let mass = sys.mass;
    let rows = map_collect(ExecMode::Parallel, qns, move |qn| {
        let mapped = uniform_map(&nonrel, mass, qn)?;
        let direct = level_energy(&spec, qn)?;
        Ok::<_, Failure>((qn, mapped, direct))
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;

    let json_rows: Vec<Value> = rows
        .iter()
        .map(|(qn, mapped, direct)| {
            let rel_dev =
                (mapped.epsilon - direct.epsilon).abs() / direct.epsilon.abs().max(f64::EPSILON);
            json!({
                "n": qn.n(),
                "label": qn.label(),
                "degeneracy": qn.degeneracy(),
                "epsilon": mapped.epsilon,
                "e_eff": mapped.e_eff,
                "residual": mapped.residual,
                "suspect": direct.suspect,
                "epsilon_direct": direct.epsilon,
                "rel_dev": rel_dev,
            })
        })
        .collect();
    let header = &[
        "n",
        "label",
        "degeneracy",
        "epsilon",
        "e_eff",
        "residual",
        "suspect",
        "epsilon_direct",
        "rel_dev",
    ];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|(qn, mapped, direct)| {
            let rel_dev =
                (mapped.epsilon - direct.epsilon).abs() / direct.epsilon.abs().max(f64::EPSILON);
            vec![
                qn.n().to_string(),
                tsv_text(&qn.label()),
                qn.degeneracy().to_string(),
                fmt_e(mapped.epsilon),
                fmt_e(mapped.e_eff),
                fmt_e(mapped.residual),
                direct.suspect.to_string(),
                fmt_e(direct.epsilon),
                fmt_e(rel_dev),
            ]
        })
        .collect();
    let json = json!({
        "schema": SPECTRUM_SCHEMA,
        "system": sys.system_value(),
        "rows": json_rows,
    });
    Ok(Report {
        json,
        tsv: tsv_table(header, &cells),
        post: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_codes_follow_the_ladder() {
        assert_eq!(usage("x").code(), 2);
        assert_eq!(Failure::Solver("x".into()).code(), 3);
        assert_eq!(Failure::Verify("x".into()).code(), 4);
    }

    #[test]
    fn library_errors_split_usage_from_solver() {
        let wrong = SpectraError::WrongFamily {
            qn: QuantumNumbers::CoulombJ { j: 0 },
            class: SystemClass::PlaneOscillator,
        };
        assert_eq!(Failure::from(wrong).code(), 2);
        let stuck = SpectraError::NoBracket { lo: -1.0, hi: 2.0 };
        assert_eq!(Failure::from(stuck).code(), 3);
        assert_eq!(Failure::from(NumlabError::FlatOnly).code(), 2);
        let eig = NumlabError::EigenFailure("drift".into());
        assert_eq!(Failure::from(eig).code(), 3);
    }

    #[test]
    fn lambda_zero_reduces_to_plane() {
        let args = SystemArgs {
            geometry: Some("sphere".into()),
            potential: Some("coulomb".into()),
            m: Some(1.0),
            k: Some(0.5),
            omega: None,
            lambda: Some(0.0),
        };
        let sys = Resolved::from(&args, &FileConfig::default()).unwrap();
        assert_eq!(sys.curvature, 0.0);
        let v = sys.system_value();
        assert_eq!(v["geometry"], "plane");
        assert!(v.get("curvature").is_none());
    }

    #[test]
    fn coulomb_level_listing_is_odd_n() {
        let sys = Resolved {
            coulomb: true,
            mass: 1.0,
            coupling: 0.5,
            curvature: 0.0,
        };
        let qns = sys.quantum_numbers(5).unwrap();
        let ns: Vec<u32> = qns.iter().map(|q| q.n()).collect();
        assert_eq!(ns, vec![1, 3, 5]);
        assert!(sys.quantum_numbers(0).is_err());
        let osc = Resolved {
            coulomb: false,
            mass: 1.0,
            coupling: 1.0,
            curvature: 0.0,
        };
        assert_eq!(osc.quantum_numbers(0).unwrap().len(), 1);
    }
}
