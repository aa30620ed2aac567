mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use neutron_cp::materials::Material;
use neutron_cp::sweep::reference_materials;
use neutron_cp::{run_sweep, run_table1, EnergyUnit, FieldConfig, OutputColumn, Scale, SweepRequest};

use config::ConfigFile;

/// Casimir–Polder potential of a neutron above a planar surface.
#[derive(Parser, Debug)]
#[command(name = "neutron-cp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate potentials on a distance grid.
    Sweep(SweepArgs),
    /// Compare numeric ground-state potentials with the leading small-field forms.
    Table1(Table1Args),
}

#[derive(Args, Debug, Default)]
struct MaterialArgs {
    /// pc, plasma, drude or drude-lorentz
    #[arg(long)]
    model: Option<String>,
    /// Plasma frequency, rad/s
    #[arg(long)]
    omega_p: Option<f64>,
    /// Drude damping, rad/s
    #[arg(long)]
    gamma: Option<f64>,
    /// Drude–Lorentz transverse resonance, rad/s
    #[arg(long)]
    omega_t: Option<f64>,
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// External field, T
    #[arg(long)]
    b_ext: Option<f64>,
    /// Field tilt from the surface normal, rad, or `avg`
    #[arg(long)]
    theta: Option<String>,
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Output file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
    /// J, eV or neV
    #[arg(long)]
    energy_unit: Option<String>,
    /// key = value recipe; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    material: MaterialArgs,
    #[command(flatten)]
    common: CommonArgs,
    /// m
    #[arg(long)]
    z_min: Option<f64>,
    /// m
    #[arg(long)]
    z_max: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// log or linear
    #[arg(long)]
    scale: Option<String>,
    /// Comma-separated columns
    #[arg(long)]
    outputs: Option<String>,
    /// Worker threads
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Debug)]
struct Table1Args {
    /// Restrict to one model (default: the four reference materials)
    #[command(flatten)]
    material: MaterialArgs,
    #[command(flatten)]
    common: CommonArgs,
    /// Distance, m
    #[arg(long)]
    z: Option<f64>,
}

const MATERIAL_KEYS: [&str; 4] = ["model", "omega-p", "gamma", "omega-t"];
const COMMON_KEYS: [&str; 6] = ["b-ext", "theta", "rel-tol", "out", "format", "energy-unit"];
const SWEEP_KEYS: [&str; 6] = ["z-min", "z-max", "points", "scale", "outputs", "jobs"];

/// Invalid arguments (exit 2) versus failures while running (exit 1).
enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<neutron_cp::Error> for Failure {
    fn from(e: neutron_cp::Error) -> Self {
        Failure::Usage(e.into())
    }
}

/// Flag value if given, else the config entry parsed as `T`.
fn pick<T>(flag: Option<T>, file: &ConfigFile, key: &str) -> anyhow::Result<Option<T>>
where
    T: FromStr,
    T::Err: std::fmt::Display,
{
    if flag.is_some() {
        return Ok(flag);
    }
    file.get(key)
        .map(|v| v.parse::<T>().map_err(|e| anyhow!("config key {key}: {e}")))
        .transpose()
}

fn resolve_material(args: &MaterialArgs, file: &ConfigFile, default_model: &str) -> anyhow::Result<Material<f64>> {
    let model = pick(args.model.clone(), file, "model")?.unwrap_or_else(|| default_model.to_string());
    let omega_p = pick(args.omega_p, file, "omega-p")?;
    let gamma = pick(args.gamma, file, "gamma")?;
    let omega_t = pick(args.omega_t, file, "omega-t")?;
    let unused = |name: &str, given: bool| {
        if given {
            Err(anyhow!("--{name} does not apply to model {model}"))
        } else {
            Ok(())
        }
    };
    let m = match model.as_str() {
        "pc" => {
            unused("omega-p", omega_p.is_some())?;
            unused("gamma", gamma.is_some())?;
            unused("omega-t", omega_t.is_some())?;
            Material::PerfectConductor
        }
        "plasma" => {
            unused("gamma", gamma.is_some())?;
            unused("omega-t", omega_t.is_some())?;
            let Material::Plasma { omega_p: wp } = Material::gold_plasma() else {
                unreachable!()
            };
            Material::plasma(omega_p.unwrap_or(wp))?
        }
        "drude" => {
            unused("omega-t", omega_t.is_some())?;
            let Material::Drude { omega_p: wp, gamma: g } = Material::gold_drude() else {
                unreachable!()
            };
            Material::drude(omega_p.unwrap_or(wp), gamma.unwrap_or(g))?
        }
        "drude-lorentz" => {
            unused("gamma", gamma.is_some())?;
            let Material::DrudeLorentz {
                omega_p: wp,
                omega_t: wt,
            } = Material::silicon_drude_lorentz()
            else {
                unreachable!()
            };
            Material::drude_lorentz(omega_p.unwrap_or(wp), omega_t.unwrap_or(wt))?
        }
        other => bail!("unknown model {other:?} (expected pc, plasma, drude or drude-lorentz)"),
    };
    Ok(m)
}

fn resolve_field(args: &CommonArgs, file: &ConfigFile, default_b: f64) -> anyhow::Result<FieldConfig> {
    let b = pick(args.b_ext, file, "b-ext")?.unwrap_or(default_b);
    let theta = pick(args.theta.clone(), file, "theta")?.unwrap_or_else(|| "avg".to_string());
    let field = if theta == "avg" {
        FieldConfig::averaged(b)?
    } else {
        let t: f64 = theta
            .parse()
            .map_err(|_| anyhow!("--theta expects radians or avg, got {theta:?}"))?;
        FieldConfig::new(b, t)?
    };
    Ok(field)
}

struct Output {
    path: Option<PathBuf>,
    json: bool,
    unit: EnergyUnit,
}

fn resolve_output(args: &CommonArgs, file: &ConfigFile) -> anyhow::Result<Output> {
    let format = pick(args.format.clone(), file, "format")?.unwrap_or_else(|| "csv".to_string());
    let json = match format.as_str() {
        "csv" => false,
        "json" => true,
        other => bail!("--format expects csv or json, got {other:?}"),
    };
    Ok(Output {
        path: pick(args.out.clone(), file, "out")?,
        json,
        unit: pick(args.energy_unit.clone(), file, "energy-unit")?
            .map(|s| s.parse::<EnergyUnit>())
            .transpose()?
            .unwrap_or(EnergyUnit::J),
    })
}

fn load_config(path: &Option<PathBuf>, allowed: &[&str]) -> anyhow::Result<ConfigFile> {
    match path {
        None => Ok(ConfigFile::default()),
        Some(p) => {
            let c = ConfigFile::load(p)?;
            c.check_keys(allowed)?;
            Ok(c)
        }
    }
}

fn emit(out: &Output, text: &str) -> Result<(), Failure> {
    match &out.path {
        Some(p) => std::fs::write(p, text)
            .with_context(|| format!("writing {}", p.display()))
            .map_err(Failure::Runtime),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .context("writing standard output")
            .map_err(Failure::Runtime),
    }
}

fn sweep(args: SweepArgs) -> Result<bool, Failure> {
    let allowed: Vec<&str> = MATERIAL_KEYS
        .iter()
        .chain(&COMMON_KEYS)
        .chain(&SWEEP_KEYS)
        .copied()
        .collect();
    let file = load_config(&args.common.config, &allowed)?;
    let material = resolve_material(&args.material, &file, "pc")?;
    let field = resolve_field(&args.common, &file, 2.0)?;
    let output = resolve_output(&args.common, &file)?;

    let mut req = SweepRequest::new(
        material,
        field,
        pick(args.z_min, &file, "z-min")?.unwrap_or(1e-9),
        pick(args.z_max, &file, "z-max")?.unwrap_or(1e-6),
        pick(args.points, &file, "points")?.unwrap_or(50),
    );
    if let Some(s) = pick(args.scale, &file, "scale")? {
        req.scale = s.parse::<Scale>()?;
    }
    req.outputs = OutputColumn::parse_list(
        &pick(args.outputs, &file, "outputs")?.unwrap_or_else(|| "u_dd,u_du,u_ground".to_string()),
    )?;
    if let Some(t) = pick(args.common.rel_tol, &file, "rel-tol")? {
        req.rel_tol = t;
    }
    req.jobs =
        pick(args.jobs, &file, "jobs")?.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));

    let table = run_sweep(&req)?;
    let text = if output.json {
        table.to_json(output.unit)
    } else {
        table.to_csv(output.unit)
    };
    emit(&output, &text)?;
    let failures = table.failures();
    if failures > 0 {
        eprintln!("neutron-cp: {failures} of {} points failed", table.rows.len());
    }
    Ok(failures == 0)
}

fn table1(args: Table1Args) -> Result<bool, Failure> {
    let mut allowed: Vec<&str> = MATERIAL_KEYS.iter().chain(&COMMON_KEYS).copied().collect();
    allowed.push("z");
    let file = load_config(&args.common.config, &allowed)?;
    let single = args.material.model.is_some() || file.get("model").is_some();
    let materials = if single {
        vec![resolve_material(&args.material, &file, "pc")?]
    } else {
        let m = &args.material;
        if m.omega_p.is_some()
            || m.gamma.is_some()
            || m.omega_t.is_some()
            || MATERIAL_KEYS.iter().any(|k| file.get(k).is_some())
        {
            return Err(Failure::Usage(anyhow!("material parameters need --model")));
        }
        reference_materials().to_vec()
    };
    let field = resolve_field(&args.common, &file, 0.01)?;
    let output = resolve_output(&args.common, &file)?;
    let z = pick(args.z, &file, "z")?.unwrap_or(1e-9);
    let rel_tol = pick(args.common.rel_tol, &file, "rel-tol")?.unwrap_or(1e-9);

    let table = run_table1(&field, z, rel_tol, &materials)?;
    let text = if output.json {
        table.to_json()
    } else {
        table.to_csv(output.unit)
    };
    emit(&output, &text)?;
    Ok(table.failures() == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(a) => sweep(a),
        Command::Table1(a) => table1(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("neutron-cp: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("neutron-cp: {e:#}");
            ExitCode::from(1)
        }
    }
}
