//! Command-line front end: parameter parsing, solver orchestration, JSON/CSV
//! emission, and element-cache management.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use leff_core::bounds::{admissible_window, build_ledger, TheoremWindow};
use leff_core::cache::{CachedValue, ElementCache, MemCache, NoCache};
use leff_core::fermion::{decompose_u_m, fermionic_delta_spectrum};
use leff_core::landau::{enumerate_sigma, orbit_decompose, ProblemParams};
use leff_core::potentials::{
    assemble_v_c, assemble_v_delta, constant_ce_cached, constant_cn,
};
use leff_core::solvers::{
    default_grid_n1, default_grid_n2, delta_exact_n1, delta_solve_n2, eff_solve_n1,
    grid_solve_1d, resolvent_distance, GridSpec, ModelKind, SpectrumResult,
};
use leff_core::specialfn::alpha_of_b;
use leff_core::Error as CoreError;

const SCHEMA: u32 = 1;

fn version_string() -> String {
    format!("leff-{}", env!("CARGO_PKG_VERSION"))
}

#[derive(Parser, Debug)]
#[command(name = "leff", version, about = "effective 1D models of strong-field atoms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Element-cache directory (overrides LEFF_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Field strength (explicit scientific notation, e.g. 1e8).
    #[arg(long = "B", default_value = "1.0")]
    b: f64,
    /// Nuclear charge.
    #[arg(long = "Z", default_value = "1.0")]
    z: f64,
    /// Electron count.
    #[arg(long = "N", default_value = "1")]
    n: usize,
    /// Total angular momentum.
    #[arg(long = "M", default_value = "0")]
    m: usize,
}

impl ParamArgs {
    fn params(&self) -> anyhow::Result<ProblemParams> {
        ProblemParams::new(self.b, self.z, self.n, self.m).map_err(into_anyhow)
    }
}

#[derive(Args, Debug, Clone)]
struct GridArgs {
    #[arg(long)]
    half_width: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    pf_cutoff: Option<f64>,
    /// Also write eigenvectors to this binary file.
    #[arg(long)]
    vectors: Option<PathBuf>,
    /// Number of eigenpairs for 1D solves.
    #[arg(long, default_value = "4")]
    n_eigs: usize,
}

impl GridArgs {
    fn resolve(&self, default: GridSpec) -> anyhow::Result<GridSpec> {
        let l = self.half_width.unwrap_or(default.half_width);
        let p = self.points.unwrap_or(default.points);
        let h = 2.0 * l / (p as f64 - 1.0);
        let eps = self.pf_cutoff.unwrap_or(default.pf_cutoff / default.spacing * h);
        GridSpec::new(l, p, eps).map_err(into_anyhow)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Field-dependent coupling α(B).
    Alpha {
        #[arg(long = "B")]
        b: f64,
    },
    /// Lowest-Landau basis tuples and their orbit decomposition.
    Basis {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Constant matrices and singular-potential assemblies on F_M.
    Potentials {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Explicit-constant ledger.
    Constants {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Admissible spectral-parameter window of one comparison theorem.
    Window {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum)]
        theorem: TheoremArg,
    },
    /// δ-model spectrum (N = 1 exact, N = 2 grid).
    SolveDelta {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Coulomb-model 1D grid spectrum (N = 1).
    SolveCoulomb {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Effective-model 1D grid spectrum (N = 1).
    SolveEff {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Resolvent-difference comparison of two models over a B list.
    Compare {
        #[arg(long, value_enum)]
        model_a: ModelArg,
        #[arg(long, value_enum)]
        model_b: ModelArg,
        #[arg(long = "Z", default_value = "1.0")]
        z: f64,
        #[arg(long = "M", default_value = "0")]
        m: usize,
        /// Comma-separated B values.
        #[arg(long = "B", value_delimiter = ',')]
        b_values: Vec<f64>,
    },
    /// Fermionic block decomposition and per-block δ spectra.
    Fermion {
        #[command(flatten)]
        params: ParamArgs,
        /// Solve per-block spectra (N ≤ 2) in addition to the decomposition.
        #[arg(long)]
        spectra: bool,
    },
    /// Sweep a named quantity over a B list.
    Sweep {
        #[arg(long = "Z", default_value = "1.0")]
        z: f64,
        #[arg(long = "N", default_value = "1")]
        n: usize,
        #[arg(long = "M", default_value = "0")]
        m: usize,
        #[arg(long = "B", value_delimiter = ',')]
        b_values: Vec<f64>,
        /// One of: alpha, e0-delta, e0-eff, e0-coulomb.
        #[arg(long)]
        quantity: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    T1,
    T2,
    T3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Eff,
    Delta,
    Coulomb,
}

fn into_anyhow(e: CoreError) -> anyhow::Error {
    anyhow!("{e}")
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    let msg = format!("{err}");
    if msg.contains("accuracy error:") || msg.starts_with("accuracy:") {
        3
    } else {
        2
    }
}

// --- cache ------------------------------------------------------------------

fn cache_path(dir: &Path) -> PathBuf {
    dir.join("cache.json")
}

fn load_cache(dir: Option<&Path>) -> anyhow::Result<Option<(PathBuf, MemCache)>> {
    let Some(dir) = dir else { return Ok(None) };
    fs::create_dir_all(dir).with_context(|| format!("creating cache dir {}", dir.display()))?;
    let path = cache_path(dir);
    let cache = if path.exists() {
        let text = fs::read_to_string(&path)?;
        let map: std::collections::BTreeMap<String, CachedValue> = serde_json::from_str(&text)
            .with_context(|| format!("parsing cache file {}", path.display()))?;
        MemCache::from_map(map)
    } else {
        MemCache::new()
    };
    Ok(Some((path, cache)))
}

fn save_cache(path: &Path, cache: &MemCache) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(&cache.snapshot())?;
    atomic_write(path, text.as_bytes())
}

// --- output -----------------------------------------------------------------

fn atomic_write(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    if !dir.as_os_str().is_empty() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp-write");
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn reject_non_finite(v: &Value) -> anyhow::Result<()> {
    match v {
        Value::Null => Err(anyhow!("accuracy: non-finite value in output")),
        Value::Array(a) => a.iter().try_for_each(reject_non_finite),
        Value::Object(o) => o.values().try_for_each(reject_non_finite),
        _ => Ok(()),
    }
}

fn stamp(mut v: Value, params: Option<&ProblemParams>) -> Value {
    if let Value::Object(o) = &mut v {
        o.insert("leff-schema".into(), json!(SCHEMA));
        o.insert("version".into(), json!(version_string()));
        if let Some(p) = params {
            o.insert("params".into(), serde_json::to_value(p).unwrap());
        }
    }
    v
}

fn emit_json(out: Option<&Path>, v: &Value) -> anyhow::Result<()> {
    reject_non_finite(v)?;
    let text = serde_json::to_string_pretty(v)?;
    match out {
        Some(p) => atomic_write(p, text.as_bytes()),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit_csv(out: Option<&Path>, header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner()?;
    match out {
        Some(p) => atomic_write(p, &bytes),
        None => {
            print!("{}", String::from_utf8(bytes)?);
            Ok(())
        }
    }
}

/// "LEFF-VEC v1 <points> <count>" header line, then row-major little-endian
/// 64-bit floats.
fn write_vectors(path: &Path, points: usize, vecs: &[Vec<f64>]) -> anyhow::Result<()> {
    let mut bytes = format!("LEFF-VEC v1 {points} {}\n", vecs.len()).into_bytes();
    for v in vecs {
        for x in v {
            bytes.extend_from_slice(&x.to_le_bytes());
        }
    }
    atomic_write(path, &bytes)
}

fn spectrum_json(r: &SpectrumResult) -> Value {
    json!({
        "model": r.model,
        "grid": r.grid,
        "eigenvalues": r.eigenvalues,
        "extrapolated_eigenvalues": r.extrapolated_eigenvalues(),
        "residuals": r.residual_norms,
        "meta": { "extrapolation": r.extrapolation },
    })
}

fn matrix_json(m: &leff_core::linalg::HermitianMatrix) -> Value {
    let re: Vec<Vec<f64>> = (0..m.dim)
        .map(|i| (0..m.dim).map(|j| m.get(i, j).re).collect())
        .collect();
    let im: Vec<Vec<f64>> = (0..m.dim)
        .map(|i| (0..m.dim).map(|j| m.get(i, j).im).collect())
        .collect();
    json!({ "dim": m.dim, "re": re, "im": im })
}

// --- command execution ------------------------------------------------------

fn solve_model(
    model: ModelArg,
    params: &ProblemParams,
    n_eigs: usize,
) -> anyhow::Result<SpectrumResult> {
    match model {
        ModelArg::Delta => delta_exact_n1(params).map_err(into_anyhow),
        ModelArg::Eff => {
            let grid = default_grid_n1(params).map_err(into_anyhow)?;
            eff_solve_n1(params, &grid, n_eigs).map_err(into_anyhow)
        }
        ModelArg::Coulomb => {
            let grid = default_grid_n1(params).map_err(into_anyhow)?;
            let dist = assemble_v_c(params).map_err(into_anyhow)?;
            grid_solve_1d(None, &dist, &grid, n_eigs, ModelKind::Coulomb, params)
                .map_err(into_anyhow)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let cache_dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("LEFF_CACHE_DIR").map(PathBuf::from));
    let cache_state = load_cache(cache_dir.as_deref())?;
    let out = cli.output.as_deref();

    match &cli.command {
        Command::Alpha { b } => {
            let a = alpha_of_b(*b).map_err(into_anyhow)?;
            let v = stamp(
                json!({"B": b, "alpha": a.value, "residual": a.residual().abs()}),
                None,
            );
            match cli.format {
                Format::Json => emit_json(out, &v)?,
                Format::Csv => emit_csv(
                    out,
                    &["B", "alpha", "residual"],
                    &[vec![
                        format!("{b:e}"),
                        format!("{}", a.value),
                        format!("{:e}", a.residual().abs()),
                    ]],
                )?,
            }
        }
        Command::Basis { params } => {
            let p = params.params()?;
            let tuples = enumerate_sigma(p.n, p.m).map_err(into_anyhow)?;
            let orbits = orbit_decompose(&tuples);
            let v = stamp(
                json!({
                    "tuples": tuples,
                    "orbits": orbits,
                }),
                Some(&p),
            );
            emit_json(out, &v)?;
        }
        Command::Potentials { params } => {
            let p = params.params()?;
            let cache: &dyn ElementCache = match &cache_state {
                Some((_, c)) => c,
                None => &NoCache,
            };
            let cn: Vec<Value> = (0..p.n)
                .map(|j| Ok(matrix_json(&constant_cn(&p, j).map_err(into_anyhow)?)))
                .collect::<anyhow::Result<_>>()?;
            let mut ce = Vec::new();
            for j in 0..p.n {
                for k in (j + 1)..p.n {
                    ce.push(json!({
                        "pair": [j, k],
                        "matrix": matrix_json(&constant_ce_cached(&p, j, k, cache).map_err(into_anyhow)?),
                    }));
                }
            }
            let vc = assemble_v_c(&p).map_err(into_anyhow)?;
            let vd = assemble_v_delta(&p).map_err(into_anyhow)?;
            let dist_json = |d: &leff_core::potentials::DistributionPotential1D| {
                json!({
                    "hyperplanes": d.hyperplanes,
                    "pf_coeff": d.pf_coeff.iter().map(matrix_json).collect::<Vec<_>>(),
                    "delta_coeff": d.delta_coeff.iter().map(matrix_json).collect::<Vec<_>>(),
                })
            };
            let v = stamp(
                json!({
                    "Cn": cn,
                    "Ce": ce,
                    "v_C": dist_json(&vc),
                    "v_delta": dist_json(&vd),
                }),
                Some(&p),
            );
            emit_json(out, &v)?;
        }
        Command::Constants { params } => {
            let p = params.params()?;
            let ledger = build_ledger(&p).map_err(into_anyhow)?;
            match cli.format {
                Format::Json => {
                    let mut obj = json!({ "entries": ledger.entries() });
                    for e in ledger.entries() {
                        obj["entries_by_name"][&e.name] = json!(e.value);
                    }
                    emit_json(out, &stamp(obj, Some(&p)))?;
                }
                Format::Csv => {
                    let rows: Vec<Vec<String>> = ledger
                        .entries()
                        .iter()
                        .map(|e| {
                            vec![
                                e.name.clone(),
                                format!("{}", e.value),
                                format!("{:?}", e.provenance),
                                e.anchor.clone(),
                            ]
                        })
                        .collect();
                    emit_csv(out, &["name", "value", "provenance", "anchor"], &rows)?;
                }
            }
        }
        Command::Window { params, theorem } => {
            let p = params.params()?;
            let t = match theorem {
                TheoremArg::T1 => TheoremWindow::T1Eff,
                TheoremArg::T2 => TheoremWindow::T2Coulomb,
                TheoremArg::T3 => TheoremWindow::T3Delta,
            };
            let w = admissible_window(&p, t).map_err(into_anyhow)?;
            emit_json(out, &stamp(serde_json::to_value(&w)?, Some(&p)))?;
        }
        Command::SolveDelta { params, grid } => {
            let p = params.params()?;
            let r = match p.n {
                1 => delta_exact_n1(&p).map_err(into_anyhow)?,
                2 => {
                    let g = grid.resolve(default_grid_n2(p.z).map_err(into_anyhow)?)?;
                    let alpha = alpha_of_b(p.b_field).map_err(into_anyhow)?.value;
                    let mut r = delta_solve_n2(p.z, &g).map_err(into_anyhow)?;
                    for ev in r.eigenvalues.iter_mut() {
                        *ev *= alpha * alpha;
                    }
                    r.params = p;
                    r
                }
                _ => return Err(anyhow!("solve-delta supports N <= 2")),
            };
            if let Some(vp) = &grid.vectors {
                write_vectors(vp, r.grid.points, &r.eigenvectors)?;
            }
            emit_json(out, &stamp(spectrum_json(&r), Some(&p)))?;
        }
        Command::SolveCoulomb { params, grid } => {
            let p = params.params()?;
            let g = grid.resolve(default_grid_n1(&p).map_err(into_anyhow)?)?;
            let dist = assemble_v_c(&p).map_err(into_anyhow)?;
            let r = grid_solve_1d(None, &dist, &g, grid.n_eigs, ModelKind::Coulomb, &p)
                .map_err(into_anyhow)?;
            if let Some(vp) = &grid.vectors {
                write_vectors(vp, g.points, &r.eigenvectors)?;
            }
            emit_json(out, &stamp(spectrum_json(&r), Some(&p)))?;
        }
        Command::SolveEff { params, grid } => {
            let p = params.params()?;
            let g = grid.resolve(default_grid_n1(&p).map_err(into_anyhow)?)?;
            let r = eff_solve_n1(&p, &g, grid.n_eigs).map_err(into_anyhow)?;
            if let Some(vp) = &grid.vectors {
                write_vectors(vp, g.points, &r.eigenvectors)?;
            }
            emit_json(out, &stamp(spectrum_json(&r), Some(&p)))?;
        }
        Command::Compare {
            model_a,
            model_b,
            z,
            m,
            b_values,
        } => {
            if b_values.is_empty() {
                return Err(anyhow!("--B list must be nonempty"));
            }
            let mut rows = Vec::new();
            for &b in b_values {
                let p = ProblemParams::new(b, *z, 1, *m).map_err(into_anyhow)?;
                let alpha = alpha_of_b(b).map_err(into_anyhow)?.value;
                let ra = solve_model(*model_a, &p, 12)?;
                let rb = solve_model(*model_b, &p, 12)?;
                let d_target = alpha * alpha / 8.0;
                let e_min = ra.eigenvalues[0].min(rb.eigenvalues[0]);
                let xi = e_min - d_target;
                let d_xi = ra
                    .eigenvalues
                    .iter()
                    .chain(&rb.eigenvalues)
                    .map(|e| (e - xi).abs())
                    .fold(f64::INFINITY, f64::min);
                let dist = resolvent_distance(&ra, &rb, xi).map_err(into_anyhow)?;
                let ledger = build_ledger(&p).map_err(into_anyhow)?;
                let bound = ledger
                    .c_delta
                    .map(|c| c * alpha / (d_xi * d_xi))
                    .unwrap_or(f64::MAX);
                rows.push(vec![
                    format!("{b:e}"),
                    format!("{alpha}"),
                    format!("{d_xi}"),
                    format!("{dist}"),
                    format!("{bound}"),
                ]);
            }
            emit_csv(
                out,
                &["B", "alpha", "d_xi", "resolvent_distance", "bound_T3"],
                &rows,
            )?;
        }
        Command::Fermion { params, spectra } => {
            let p = params.params()?;
            let d = decompose_u_m(&p).map_err(into_anyhow)?;
            let mut v = json!({
                "decomposition": d,
                "delta_mixing": d.delta_mixing(),
            });
            if *spectra {
                let g = default_grid_n2(p.z.max(0.1)).map_err(into_anyhow)?;
                let (_, specs) = fermionic_delta_spectrum(&p, &g).map_err(into_anyhow)?;
                v["block_spectra"] = Value::Array(specs.iter().map(spectrum_json).collect());
            }
            emit_json(out, &stamp(v, Some(&p)))?;
        }
        Command::Sweep {
            z,
            n,
            m,
            b_values,
            quantity,
        } => {
            if b_values.is_empty() {
                return Err(anyhow!("--B list must be nonempty"));
            }
            let mut rows = Vec::new();
            for &b in b_values {
                let p = ProblemParams::new(b, *z, *n, *m).map_err(into_anyhow)?;
                let value = match quantity.as_str() {
                    "alpha" => alpha_of_b(b).map_err(into_anyhow)?.value,
                    "e0-delta" => delta_exact_n1(&p).map_err(into_anyhow)?.eigenvalues[0],
                    "e0-eff" => {
                        let g = default_grid_n1(&p).map_err(into_anyhow)?;
                        eff_solve_n1(&p, &g, 1).map_err(into_anyhow)?.eigenvalues[0]
                    }
                    "e0-coulomb" => {
                        let g = default_grid_n1(&p).map_err(into_anyhow)?;
                        let dist = assemble_v_c(&p).map_err(into_anyhow)?;
                        grid_solve_1d(None, &dist, &g, 1, ModelKind::Coulomb, &p)
                            .map_err(into_anyhow)?
                            .extrapolated_eigenvalues()[0]
                    }
                    other => return Err(anyhow!("unknown sweep quantity '{other}'")),
                };
                rows.push(vec![format!("{b:e}"), format!("{value}")]);
            }
            match cli.format {
                Format::Csv => emit_csv(out, &["B", quantity], &rows)?,
                Format::Json => {
                    let items: Vec<Value> = rows
                        .iter()
                        .map(|r| json!({"B": r[0], "value": r[1].parse::<f64>().unwrap()}))
                        .collect();
                    emit_json(out, &stamp(json!({"quantity": quantity, "rows": items}), None))?;
                }
            }
        }
    }

    if let Some((path, cache)) = &cache_state {
        save_cache(path, cache)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap prints its own help/usage; map parse failures to the
            // validation exit code, but keep 0 for --help/--version
            use clap::error::ErrorKind::*;
            let code = match e.kind() {
                DisplayHelp | DisplayVersion => 0u8,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
