use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::config::{ModelSpec, RunConfig};
use super::{Cli, CliError, Command, GlobalArgs, MatrixArgs, TableFormat};
use crate::ec::{build_subspace, project_target, resonance_candidate, solve_training_set, ECSubspace, TrainingPoint};
use crate::fixture::Fixture;
use crate::ihhl::{
    build_c_operator, dilate, full_spectrum, IhhlError, IhhlOptions, IhhlResult, IterationTrace, SolverKind, Spectrum,
};
use crate::linalg::{dense_eigen, ComplexMatrix, ComplexVector, MatrixRecord};
use crate::physics::check_angle;
use crate::qsim::{hhl_circuit, resolve_settings, CircuitSettings, GateRecord, SpectralForm};
use crate::verify::run_suite;

const SYMMETRY_TOLERANCE: f64 = 1e-10;

/// Where `solve` and `spectrum` take their matrix from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixSource {
    Fixture,
    File(PathBuf),
}

impl MatrixArgs {
    fn source(&self) -> Option<MatrixSource> {
        match (&self.matrix, self.fixture) {
            (Some(p), _) => Some(MatrixSource::File(p.clone())),
            (None, true) => Some(MatrixSource::Fixture),
            (None, false) => None,
        }
    }
}

/// Output of `train`, input of `project`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainingFile {
    pub model: ModelSpec,
    pub points: Vec<TrainingPoint>,
    pub subspace: ECSubspace,
}

#[derive(Debug, Serialize)]
struct TrainingRow {
    lambda: f64,
    energy: f64,
}

#[derive(Debug, Serialize)]
struct ProjectionFile {
    target_lambda: f64,
    theta_degrees: f64,
    h_ec: MatrixRecord,
    n_ec: MatrixRecord,
    eigenvalues: Vec<Complex64>,
    resonance: Complex64,
    angle_exposes_resonance: bool,
}

#[derive(Debug, Serialize)]
struct PairReport {
    index: usize,
    eigenvalue: Complex64,
    dense_nearest: Complex64,
    abs_difference: f64,
    iterations: usize,
    residual_norm: f64,
    eigenvector: MatrixRecord,
}

#[derive(Debug, Serialize)]
struct SolveReport {
    solver: SolverKind,
    update: String,
    epsilon: f64,
    random_seed: u64,
    complete: bool,
    pairs: Vec<PairReport>,
    dense_spectrum: Vec<Complex64>,
}

#[derive(Debug, Serialize)]
struct SpectrumRow {
    index: usize,
    re: f64,
    im: f64,
    dense_re: f64,
    dense_im: f64,
    abs_difference: f64,
    iterations: usize,
}

#[derive(Debug, Serialize)]
struct DenseRow {
    index: usize,
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize)]
struct CircuitFile {
    num_qubits: usize,
    settings: CircuitSettings,
    gates: Vec<GateRecord>,
}

pub fn run_command(cli: &Cli) -> Result<(), CliError> {
    let g = &cli.global;
    let config = match &g.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    match &cli.command {
        Command::Train => train(g, &config),
        Command::Project { training } => project(g, &config, training.as_deref()),
        Command::Solve { matrix, seeds, solver, update } => {
            let mut options = config.ihhl_options();
            if let Some(s) = solver {
                options.solver = (*s).into();
            }
            if let Some(u) = update {
                options.update = Some((*u).into());
            }
            let source = matrix.source().ok_or_else(|| CliError::Usage("solve needs --fixture or --matrix PATH".into()))?;
            solve(g, &options, g.seed.unwrap_or(config.ihhl.seed), &source, seeds.as_deref())
        }
        Command::Spectrum { matrix } => spectrum(g, &config, matrix.source()),
        Command::Verify => verify(g),
    }
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn write_table<T: Serialize>(dir: &Path, stem: &str, rows: &[T], format: TableFormat) -> Result<(), CliError> {
    let text = match format {
        TableFormat::Json => to_json(&rows),
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.serialize(row).map_err(|e| CliError::Io(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.to_string()))?).expect("csv is utf-8")
        }
    };
    write(dir, &format!("{stem}.{}", format.extension()), &text)
}

fn write_trace(dir: &Path, stem: &str, trace: &IterationTrace, format: TableFormat) -> Result<(), CliError> {
    let text = match format {
        TableFormat::Csv => trace.to_csv(),
        TableFormat::Json => trace.to_json() + "\n",
    };
    write(&dir.join("traces"), &format!("{stem}.{}", format.extension()), &text)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_slice(&bytes).map_err(|e| CliError::Io(format!("cannot parse {}: {e}", path.display())))
}

fn load_fixture(g: &GlobalArgs) -> Result<Fixture, CliError> {
    Ok(match &g.fixture_dir {
        Some(dir) => Fixture::from_dir(dir)?,
        None => Fixture::embedded()?,
    })
}

fn load_matrix(g: &GlobalArgs, source: &MatrixSource) -> Result<(ComplexMatrix, Vec<ComplexVector>), CliError> {
    match source {
        MatrixSource::Fixture => {
            let f = load_fixture(g)?;
            Ok((f.hamiltonian, vec![f.reference.seed_first, f.reference.seed_second]))
        }
        MatrixSource::File(path) => {
            let record: MatrixRecord = read_json(path)?;
            let m = ComplexMatrix::try_from(record)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            if !m.is_square() || m.rows() == 0 {
                return Err(CliError::Precondition(format!("{}: matrix must be square and non-empty", path.display())));
            }
            if !m.is_finite() {
                return Err(CliError::Precondition(format!("{}: matrix has non-finite entries", path.display())));
            }
            Ok((m, Vec::new()))
        }
    }
}

fn train(g: &GlobalArgs, config: &RunConfig) -> Result<(), CliError> {
    let model = config.model()?;
    let points = solve_training_set(&config.training_lambdas(), &model)?;
    let subspace = build_subspace(&points)?;
    for w in &subspace.warnings {
        eprintln!("warning: {w}");
    }
    let rows: Vec<TrainingRow> = points.iter().map(|p| TrainingRow { lambda: p.lambda, energy: p.energy }).collect();
    println!("{:>10}  {:>14}", "lambda", "energy [MeV]");
    for r in &rows {
        println!("{:>10.6}  {:>14.6}", r.lambda, r.energy);
    }
    println!("subspace dimension {}", subspace.dimension());
    let file = TrainingFile { model: config.model_spec(), points, subspace };
    write(&g.out, "training.json", &to_json(&file))?;
    write_table(&g.out, "training_table", &rows, g.format)
}

fn project(g: &GlobalArgs, config: &RunConfig, training: Option<&Path>) -> Result<(), CliError> {
    let path = training.map(Path::to_path_buf).unwrap_or_else(|| g.out.join("training.json"));
    let file: TrainingFile = read_json(&path)?;
    if file.model != config.model_spec() {
        return Err(CliError::Precondition(format!(
            "{} was trained with a different potential, channel or basis; rerun `resonance train`",
            path.display()
        )));
    }
    let model = config.model()?;
    let theta = config.theta()?;
    let ec = project_target(&file.subspace, &model, config.target.lambda, theta)?;
    let defect = ec.h_ec.symmetry_defect();
    if defect > SYMMETRY_TOLERANCE * ec.h_ec.max_abs().max(1.0) {
        return Err(CliError::Precondition(format!("projected Hamiltonian is not complex symmetric (defect {defect:.3e})")));
    }
    let spectrum = ec.spectrum()?;
    let resonance = resonance_candidate(&spectrum, config.reference());
    let exposed = angle_warnings(config, resonance)?;
    println!("EC dimension {}, resonance candidate {:.6} {:+.6}i MeV", file.subspace.dimension(), resonance.re, resonance.im);
    let out = ProjectionFile {
        target_lambda: ec.target_lambda,
        theta_degrees: config.target.theta_degrees,
        h_ec: (&ec.h_ec).into(),
        n_ec: (&ec.n_ec).into(),
        eigenvalues: spectrum.eigenvalues.clone(),
        resonance,
        angle_exposes_resonance: exposed,
    };
    write(&g.out, "ec_projection.json", &to_json(&out))?;
    write(&g.out, "h_ec.json", &to_json(&MatrixRecord::from(&ec.h_ec)))
}

/// Warn when the rotation angle leaves the reference resonance or the
/// candidate on the unrotated side. True when both are exposed.
fn angle_warnings(config: &RunConfig, candidate: Complex64) -> Result<bool, CliError> {
    let theta = config.theta()?;
    let mut exposed = true;
    for (label, z) in [("reference resonance", config.reference()), ("candidate", candidate)] {
        if !check_angle(theta, z).unwrap_or(false) {
            eprintln!(
                "warning: θ = {}° does not rotate the continuum past the {label} {z:.4}; increase target.theta_degrees",
                config.target.theta_degrees
            );
            exposed = false;
        }
    }
    Ok(exposed)
}

fn pair_report(index: usize, pair: &IhhlResult, dense: &[Complex64]) -> PairReport {
    let nearest = dense.iter().copied().min_by(|a, b| (a - pair.eigenvalue).norm().total_cmp(&(b - pair.eigenvalue).norm()));
    let dense_nearest = nearest.unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    PairReport {
        index,
        eigenvalue: pair.eigenvalue,
        dense_nearest,
        abs_difference: (pair.eigenvalue - dense_nearest).norm(),
        iterations: pair.trace.iterations_used,
        residual_norm: pair.residual_norm,
        eigenvector: (&pair.eigenvector).into(),
    }
}

fn first_step_circuit(h: &ComplexMatrix, pair: &IhhlResult, options: &IhhlOptions) -> Result<CircuitFile, CliError> {
    let c = build_c_operator(h, pair.trace.energies[0], options.beta)?;
    let system = dilate(&c, &pair.trace.vectors[0])?;
    let spectral = SpectralForm::new(&system.padded_matrix())?;
    let settings = resolve_settings(&options.hhl, spectral.spectral_radius())?;
    let circuit = hhl_circuit(&spectral, &settings)?;
    Ok(CircuitFile { num_qubits: circuit.num_qubits, settings, gates: circuit.records() })
}

fn solve(
    g: &GlobalArgs,
    options: &IhhlOptions,
    random_seed: u64,
    source: &MatrixSource,
    seeds_path: Option<&Path>,
) -> Result<(), CliError> {
    let (h, default_seeds) = load_matrix(g, source)?;
    let seeds = match seeds_path {
        Some(p) => {
            let records: Vec<MatrixRecord> = read_json(p)?;
            records
                .into_iter()
                .map(|r| ComplexMatrix::try_from(r).map(|m| m.column(0)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?
        }
        None => default_seeds,
    };
    let dense = dense_eigen(&h)?.eigenvalues;
    let (pairs, failure) = match full_spectrum(&h, &seeds, options, random_seed) {
        Ok(Spectrum { pairs, .. }) => (pairs, None),
        Err(IhhlError::Incomplete { index, status, partial, trace }) => {
            write_trace(&g.out, &format!("failed_{index}"), &trace, g.format)?;
            let message = format!(
                "eigenpair {index} did not converge ({status:?}) after {} iterations; {} converged pairs written",
                trace.iterations_used,
                partial.len()
            );
            (partial, Some(CliError::NonConvergence(message)))
        }
        Err(e) => return Err(e.into()),
    };

    let reports: Vec<PairReport> = pairs.iter().enumerate().map(|(k, p)| pair_report(k, p, &dense)).collect();
    println!("{:>3}  {:>24}  {:>24}  {:>10}  {:>5}", "k", "iterative [MeV]", "dense [MeV]", "|diff|", "iter");
    for r in &reports {
        println!(
            "{:>3}  {:>11.6} {:>+11.6}i  {:>11.6} {:>+11.6}i  {:>10.3e}  {:>5}",
            r.index, r.eigenvalue.re, r.eigenvalue.im, r.dense_nearest.re, r.dense_nearest.im, r.abs_difference, r.iterations
        );
    }
    for (k, p) in pairs.iter().enumerate() {
        write_trace(&g.out, &format!("pair_{k}"), &p.trace, g.format)?;
    }
    let rows: Vec<SpectrumRow> = reports
        .iter()
        .map(|r| SpectrumRow {
            index: r.index,
            re: r.eigenvalue.re,
            im: r.eigenvalue.im,
            dense_re: r.dense_nearest.re,
            dense_im: r.dense_nearest.im,
            abs_difference: r.abs_difference,
            iterations: r.iterations,
        })
        .collect();
    write_table(&g.out, "spectrum_table", &rows, g.format)?;
    if options.solver == SolverKind::HhlCircuit {
        if let Some(first) = pairs.first() {
            write(&g.out, "circuit.json", &to_json(&first_step_circuit(&h, first, options)?))?;
        }
    }
    let report = SolveReport {
        solver: options.solver,
        update: options.energy_update().to_string(),
        epsilon: options.epsilon,
        random_seed,
        complete: failure.is_none(),
        pairs: reports,
        dense_spectrum: dense,
    };
    write(&g.out, "spectrum.json", &to_json(&report))?;
    failure.map_or(Ok(()), Err)
}

fn spectrum(g: &GlobalArgs, config: &RunConfig, source: Option<MatrixSource>) -> Result<(), CliError> {
    let (h, physics) = match source {
        Some(s) => (load_matrix(g, &s)?.0, false),
        None => {
            let model = config.model()?;
            (model.hamiltonian_checked(config.target.lambda, config.theta()?)?.matrix, true)
        }
    };
    let eig = dense_eigen(&h)?;
    let rows: Vec<DenseRow> =
        eig.eigenvalues.iter().enumerate().map(|(index, z)| DenseRow { index, re: z.re, im: z.im }).collect();
    for r in &rows {
        println!("{:>3}  {:>14.6} {:>+14.6}i", r.index, r.re, r.im);
    }
    if physics {
        let resonance = resonance_candidate(&eig, config.reference());
        println!("resonance candidate {:.6} {:+.6}i MeV", resonance.re, resonance.im);
        angle_warnings(config, resonance)?;
    }
    write_table(&g.out, "dense_spectrum", &rows, g.format)
}

fn verify(g: &GlobalArgs) -> Result<(), CliError> {
    let loaded = match &g.fixture_dir {
        Some(dir) => Fixture::from_dir_unverified(dir)?,
        None => Fixture::embedded_unverified()?,
    };
    let report = run_suite(&loaded.fixture, &loaded.integrity);
    println!("{}", report.to_json());
    for c in report.failures() {
        eprintln!("FAIL {}: {}", c.id, c.details.iter().filter(|d| d.starts_with("FAIL")).cloned().collect::<Vec<_>>().join("; "));
    }
    if report.passed {
        Ok(())
    } else {
        Err(CliError::VerificationFailed { failed: report.failures().count() })
    }
}
