//! Distance sweeps and the small-field comparison table, with CSV/JSON rendering.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::constants::{NeutronSpec, PhysicalConstants, CONSTANT_SET};
use crate::error::{invalid, Error, Result};
use crate::gravity::{earth_potential_with, sphere_potential_with, SphereSpec};
use crate::materials::Material;
use crate::potential::{local_power_law, perfect_conductor, FieldConfig, Orientation, PotentialSolver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Log,
    Linear,
}

impl FromStr for Scale {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log" => Ok(Scale::Log),
            "linear" | "lin" => Ok(Scale::Linear),
            _ => Err(invalid("scale", format!("expected log or linear, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputColumn {
    UDd,
    UDu,
    UResonant,
    UGround,
    UExcited,
    NonretAsymptote,
    RetAsymptote,
    Table1,
    GravityEarth,
    GravitySphere,
    Exponent,
}

impl OutputColumn {
    pub const ALL: [OutputColumn; 11] = [
        OutputColumn::UDd,
        OutputColumn::UDu,
        OutputColumn::UResonant,
        OutputColumn::UGround,
        OutputColumn::UExcited,
        OutputColumn::NonretAsymptote,
        OutputColumn::RetAsymptote,
        OutputColumn::Table1,
        OutputColumn::GravityEarth,
        OutputColumn::GravitySphere,
        OutputColumn::Exponent,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            OutputColumn::UDd => "u_dd",
            OutputColumn::UDu => "u_du",
            OutputColumn::UResonant => "u_resonant",
            OutputColumn::UGround => "u_ground",
            OutputColumn::UExcited => "u_excited",
            OutputColumn::NonretAsymptote => "nonret_asymptote",
            OutputColumn::RetAsymptote => "ret_asymptote",
            OutputColumn::Table1 => "table1",
            OutputColumn::GravityEarth => "gravity_earth",
            OutputColumn::GravitySphere => "gravity_sphere",
            OutputColumn::Exponent => "exponent",
        }
    }

    /// Whether the column carries an energy (and follows the energy unit).
    pub fn is_energy(&self) -> bool {
        !matches!(self, OutputColumn::Exponent)
    }

    /// Parses a comma-separated list such as `u_dd,u_ground`.
    pub fn parse_list(s: &str) -> Result<Vec<OutputColumn>> {
        let cols = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(OutputColumn::from_str)
            .collect::<Result<Vec<_>>>()?;
        if cols.is_empty() {
            return Err(invalid("outputs", "at least one column is required"));
        }
        Ok(cols)
    }
}

impl FromStr for OutputColumn {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OutputColumn::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| invalid("outputs", format!("unknown column {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EnergyUnit {
    J,
    #[serde(rename = "eV")]
    EV,
    #[serde(rename = "neV")]
    NeV,
}

impl EnergyUnit {
    pub fn name(&self) -> &'static str {
        match self {
            EnergyUnit::J => "J",
            EnergyUnit::EV => "eV",
            EnergyUnit::NeV => "neV",
        }
    }

    pub fn from_joules(&self, value: f64, constants: &PhysicalConstants) -> f64 {
        match self {
            EnergyUnit::J => value,
            EnergyUnit::EV => value / constants.e,
            EnergyUnit::NeV => value / constants.e * 1e9,
        }
    }
}

impl FromStr for EnergyUnit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "J" => Ok(EnergyUnit::J),
            "eV" => Ok(EnergyUnit::EV),
            "neV" => Ok(EnergyUnit::NeV),
            _ => Err(invalid("energy_unit", format!("expected J, eV or neV, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRequest {
    pub material: Material<f64>,
    pub field: FieldConfig,
    pub z_min: f64,
    pub z_max: f64,
    pub points: usize,
    pub scale: Scale,
    pub outputs: Vec<OutputColumn>,
    pub rel_tol: f64,
    /// Worker threads; 1 evaluates serially.
    #[serde(skip)]
    pub jobs: usize,
    pub neutron: NeutronSpec,
    pub sphere: SphereSpec,
}

impl SweepRequest {
    pub fn new(material: Material<f64>, field: FieldConfig, z_min: f64, z_max: f64, points: usize) -> Self {
        Self {
            material,
            field,
            z_min,
            z_max,
            points,
            scale: Scale::Log,
            outputs: vec![OutputColumn::UGround],
            rel_tol: 1e-9,
            jobs: 1,
            neutron: NeutronSpec::default(),
            sphere: SphereSpec::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.material.validate()?;
        self.field.validate()?;
        self.neutron.validate()?;
        self.sphere.validate()?;
        if !(self.z_min > 0.0 && self.z_min < self.z_max && self.z_max.is_finite()) {
            return Err(invalid("z_min/z_max", "need 0 < z_min < z_max < ∞"));
        }
        if self.points < 2 {
            return Err(invalid("points", "need at least 2"));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(invalid("rel_tol", "must lie in (0, 1)"));
        }
        if self.jobs == 0 {
            return Err(invalid("jobs", "must be at least 1"));
        }
        if self.outputs.is_empty() {
            return Err(invalid("outputs", "at least one column is required"));
        }
        let asymptotes = self
            .outputs
            .iter()
            .any(|c| matches!(c, OutputColumn::NonretAsymptote | OutputColumn::RetAsymptote));
        if asymptotes && !self.material.is_perfect_conductor() {
            return Err(invalid("outputs", "asymptote columns exist only for model pc"));
        }
        Ok(())
    }

    /// Distances in increasing order, endpoints exact.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.z_min;
                }
                if i == n - 1 {
                    return self.z_max;
                }
                let t = i as f64 / (n - 1) as f64;
                match self.scale {
                    Scale::Linear => self.z_min + t * (self.z_max - self.z_min),
                    Scale::Log => (self.z_min.ln() + t * (self.z_max.ln() - self.z_min.ln())).exp(),
                }
            })
            .collect()
    }

    fn solver(&self) -> PotentialSolver {
        PotentialSolver::new(self.material)
            .with_neutron(self.neutron)
            .with_rel_tol(self.rel_tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub z: f64,
    /// SI values in the order of `SweepTable::columns`; `None` where evaluation failed.
    pub values: Vec<Option<f64>>,
    /// `None` when every column evaluated.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub request: SweepRequest,
    pub rows: Vec<SweepRow>,
}

fn evaluate_point(req: &SweepRequest, solver: &PotentialSolver, z: f64) -> SweepRow {
    let f = &req.field;
    let mut error: Option<String> = None;
    let mut cache_dd = None;
    let mut cache_du = None;
    let mut cache_res = None;

    let mut values = Vec::with_capacity(req.outputs.len());
    for col in &req.outputs {
        let v: Result<f64> = match col {
            OutputColumn::UDd => cache_dd.get_or_insert_with(|| solver.u_dd(z, f)).clone(),
            OutputColumn::UDu => cache_du.get_or_insert_with(|| solver.u_du(z, f)).clone(),
            OutputColumn::UResonant => cache_res.get_or_insert_with(|| solver.u_resonant(z, f)).clone(),
            OutputColumn::UGround => {
                let dd = cache_dd.get_or_insert_with(|| solver.u_dd(z, f)).clone();
                let du = cache_du.get_or_insert_with(|| solver.u_du(z, f)).clone();
                dd.and_then(|a| du.map(|b| a + b))
            }
            OutputColumn::UExcited => {
                let dd = cache_dd.get_or_insert_with(|| solver.u_dd(z, f)).clone();
                let du = cache_du.get_or_insert_with(|| solver.u_du(z, f)).clone();
                let res = cache_res.get_or_insert_with(|| solver.u_resonant(z, f)).clone();
                dd.and_then(|a| du.and_then(|b| res.map(|r| a - b + r)))
            }
            OutputColumn::NonretAsymptote => perfect_conductor::u_du_nonretarded(solver, z, f),
            OutputColumn::RetAsymptote => perfect_conductor::u_du_retarded(solver, z, f),
            OutputColumn::Table1 => solver.nonretarded_leading(z, f),
            OutputColumn::GravityEarth => earth_potential_with(z, &req.neutron, &solver.constants),
            OutputColumn::GravitySphere => sphere_potential_with(z, &req.sphere, &req.neutron, &solver.constants),
            OutputColumn::Exponent => local_power_law(z, |x| solver.u_ground(x, f)),
        };
        match v {
            Ok(x) => values.push(Some(x)),
            Err(e) => {
                if error.is_none() {
                    error = Some(format!("{}: {e}", col.name()));
                }
                values.push(None);
            }
        }
    }
    SweepRow { z, values, error }
}

/// Evaluates every requested column on the distance grid.
///
/// Only an invalid request is an error; per-point failures are recorded in
/// the row and leave the remaining points untouched.
pub fn run_sweep(req: &SweepRequest) -> Result<SweepTable> {
    req.validate()?;
    let solver = req.solver();
    let grid = req.grid();
    let rows = if req.jobs == 1 {
        grid.iter().map(|&z| evaluate_point(req, &solver, z)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(req.jobs)
            .build()
            .map_err(|e| invalid("jobs", e.to_string()))?;
        pool.install(|| grid.par_iter().map(|&z| evaluate_point(req, &solver, z)).collect())
    };
    Ok(SweepTable {
        request: req.clone(),
        rows,
    })
}

fn fmt_num(x: Option<f64>) -> String {
    match x {
        Some(v) => format!("{v:.11e}"),
        None => "nan".to_string(),
    }
}

fn theta_label(o: &Orientation) -> String {
    match o {
        Orientation::Angle(t) => format!("{t:.11e}"),
        Orientation::Average => "avg".to_string(),
    }
}

fn material_label(m: &Material<f64>) -> String {
    match *m {
        Material::PerfectConductor => "model=pc".to_string(),
        Material::Plasma { omega_p } => format!("model=plasma omega_p={omega_p:.11e}"),
        Material::Drude { omega_p, gamma } => format!("model=drude omega_p={omega_p:.11e} gamma={gamma:.11e}"),
        Material::DrudeLorentz { omega_p, omega_t } => {
            format!("model=drude-lorentz omega_p={omega_p:.11e} omega_t={omega_t:.11e}")
        }
    }
}

const CONVENTIONS: [&str; 5] = [
    "ground state = spin-down; u_ground = u_dd + u_du",
    "u_excited = u_dd - u_du + u_resonant (secondary physics)",
    "gravity_earth = m_n g z, zero at contact",
    "gravity_sphere = |G M m_n / (r + z)|, zero at infinity",
    "exponent = d ln|u_ground| / d ln z (dimensionless)",
];

impl SweepTable {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }

    pub fn columns(&self) -> &[OutputColumn] {
        &self.request.outputs
    }

    fn converted(&self, unit: EnergyUnit) -> Vec<Vec<Option<f64>>> {
        let k = PhysicalConstants::codata2018();
        self.rows
            .iter()
            .map(|r| {
                r.values
                    .iter()
                    .zip(self.columns())
                    .map(|(v, c)| v.map(|x| if c.is_energy() { unit.from_joules(x, &k) } else { x }))
                    .collect()
            })
            .collect()
    }

    /// CSV with a `#` header block; numbers in scientific notation with 12 significant digits.
    pub fn to_csv(&self, unit: EnergyUnit) -> String {
        let r = &self.request;
        let mut out = String::new();
        let _ = writeln!(out, "# neutron-cp sweep");
        let _ = writeln!(out, "# {}", material_label(&r.material));
        let _ = writeln!(
            out,
            "# b_ext={:.11e} theta={}",
            r.field.b_ext,
            theta_label(&r.field.orientation)
        );
        let _ = writeln!(
            out,
            "# z_min={:.11e} z_max={:.11e} points={} scale={}",
            r.z_min,
            r.z_max,
            r.points,
            match r.scale {
                Scale::Log => "log",
                Scale::Linear => "linear",
            }
        );
        let _ = writeln!(
            out,
            "# g_factor={:.11e} neutron_mass={:.11e}",
            r.neutron.g_factor, r.neutron.mass
        );
        let _ = writeln!(
            out,
            "# sphere_density={:.11e} sphere_radius={:.11e}",
            r.sphere.density, r.sphere.radius
        );
        let _ = writeln!(out, "# constants={CONSTANT_SET} rel_tol={:.3e}", r.rel_tol);
        let _ = writeln!(out, "# units: z in m, energies in {}", unit.name());
        for c in CONVENTIONS {
            let _ = writeln!(out, "# {c}");
        }
        out.push('z');
        for c in self.columns() {
            out.push(',');
            out.push_str(c.name());
        }
        out.push_str(",status\n");
        for (row, values) in self.rows.iter().zip(self.converted(unit)) {
            out.push_str(&fmt_num(Some(row.z)));
            for v in values {
                out.push(',');
                out.push_str(&fmt_num(v));
            }
            out.push(',');
            match &row.error {
                None => out.push_str("ok"),
                Some(e) => {
                    out.push('"');
                    out.push_str(&e.replace('"', "'"));
                    out.push('"');
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, unit: EnergyUnit) -> String {
        #[derive(Serialize)]
        struct Row<'a> {
            z: f64,
            values: serde_json::Map<String, serde_json::Value>,
            status: &'a str,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            request: &'a SweepRequest,
            constants: &'a str,
            energy_unit: &'a str,
            conventions: &'a [&'a str],
            columns: Vec<&'a str>,
            rows: Vec<Row<'a>>,
        }
        let rows = self
            .rows
            .iter()
            .zip(self.converted(unit))
            .map(|(r, values)| Row {
                z: r.z,
                values: self
                    .columns()
                    .iter()
                    .zip(values)
                    .map(|(c, v)| {
                        (
                            c.name().to_string(),
                            v.map_or(serde_json::Value::Null, serde_json::Value::from),
                        )
                    })
                    .collect(),
                status: r.error.as_deref().unwrap_or("ok"),
            })
            .collect();
        let doc = Doc {
            request: &self.request,
            constants: CONSTANT_SET,
            energy_unit: unit.name(),
            conventions: &CONVENTIONS,
            columns: self.columns().iter().map(|c| c.name()).collect(),
            rows,
        };
        serde_json::to_string_pretty(&doc).expect("sweep table serialises")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Row {
    pub model: &'static str,
    pub material: Material<f64>,
    /// Numeric ground-state potential, J.
    pub numeric: Option<f64>,
    /// Leading-order closed form, J.
    pub closed_form: Option<f64>,
    /// (numeric − closed_form)/closed_form
    pub deviation: Option<f64>,
    /// ω↑↓z/c < 0.01, ω_mat z/c < 0.01 and, for Drude, |γₙ|B/γ < 0.1.
    pub in_window: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1 {
    pub field: FieldConfig,
    pub z: f64,
    pub rel_tol: f64,
    pub rows: Vec<Table1Row>,
}

/// The four reference models: perfect conductor, gold (plasma and Drude), silicon (Drude–Lorentz).
pub fn reference_materials() -> [Material<f64>; 4] {
    [
        Material::PerfectConductor,
        Material::gold_plasma(),
        Material::gold_drude(),
        Material::silicon_drude_lorentz(),
    ]
}

/// Compares numeric ground-state potentials with their leading small-field forms.
pub fn run_table1(field: &FieldConfig, z: f64, rel_tol: f64, materials: &[Material<f64>]) -> Result<Table1> {
    field.validate()?;
    if !(z > 0.0) || !z.is_finite() {
        return Err(invalid("z", "must be positive and finite"));
    }
    let rows = materials
        .iter()
        .map(|m| {
            let solver = PotentialSolver::new(*m).with_rel_tol(rel_tol);
            let numeric = solver.u_ground(z, field);
            let closed = solver.nonretarded_leading(z, field);
            let error = match (&numeric, &closed) {
                (Err(e), _) => Some(format!("numeric: {e}")),
                (_, Err(e)) => Some(format!("closed form: {e}")),
                _ => None,
            };
            let numeric = numeric.ok();
            let closed_form = closed.ok();
            let deviation = match (numeric, closed_form) {
                (Some(n), Some(c)) if c != 0.0 => Some((n - c) / c),
                _ => None,
            };
            let c = solver.constants.c;
            let omega = solver.transition_frequency(field).unwrap_or(f64::INFINITY);
            let (material_scale, expansion) = match *m {
                Material::PerfectConductor => (0.0, 0.0),
                Material::Plasma { omega_p } => (omega_p, 0.0),
                Material::Drude { omega_p, gamma } => (omega_p, omega / gamma),
                Material::DrudeLorentz { omega_t, .. } => (omega_t, 0.0),
            };
            let in_window = omega * z / c < 1e-2 && material_scale * z / c < 1e-2 && expansion < 0.1;
            Table1Row {
                model: m.name(),
                material: *m,
                numeric,
                closed_form,
                deviation,
                in_window,
                error,
            }
        })
        .collect();
    Ok(Table1 {
        field: *field,
        z,
        rel_tol,
        rows,
    })
}

impl Table1 {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }

    pub fn to_csv(&self, unit: EnergyUnit) -> String {
        let k = PhysicalConstants::codata2018();
        let mut out = String::new();
        let _ = writeln!(out, "# neutron-cp table1");
        let _ = writeln!(
            out,
            "# b_ext={:.11e} theta={} z={:.11e}",
            self.field.b_ext,
            theta_label(&self.field.orientation),
            self.z
        );
        let _ = writeln!(out, "# constants={CONSTANT_SET} rel_tol={:.3e}", self.rel_tol);
        let _ = writeln!(
            out,
            "# units: energies in {}; deviation = (numeric - closed_form)/closed_form",
            unit.name()
        );
        out.push_str("model,numeric,closed_form,deviation,in_window,status\n");
        for r in &self.rows {
            let conv = |v: Option<f64>| fmt_num(v.map(|x| unit.from_joules(x, &k)));
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.model,
                conv(r.numeric),
                conv(r.closed_form),
                fmt_num(r.deviation),
                r.in_window,
                r.error
                    .as_deref()
                    .map_or("ok".to_string(), |e| format!("\"{}\"", e.replace('"', "'")))
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn request(outputs: Vec<OutputColumn>) -> SweepRequest {
        let mut r = SweepRequest::new(
            Material::PerfectConductor,
            FieldConfig::averaged(2.0).unwrap(),
            1e-9,
            1e-6,
            7,
        );
        r.outputs = outputs;
        r
    }

    #[test]
    fn grid_endpoints_and_order() {
        let mut r = request(vec![OutputColumn::UGround]);
        let g = r.grid();
        assert_eq!(g.len(), 7);
        assert_eq!(g[0], 1e-9);
        assert_eq!(g[6], 1e-6);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!((g[2] / 1e-8 - 1.0).abs() < 1e-12);
        r.scale = Scale::Linear;
        let g = r.grid();
        assert!((g[1] - g[0] - (g[2] - g[1])).abs() < 1e-20);
    }

    #[test]
    fn column_parsing() {
        let cols = OutputColumn::parse_list("u_dd, u_ground,exponent").unwrap();
        assert_eq!(
            cols,
            vec![OutputColumn::UDd, OutputColumn::UGround, OutputColumn::Exponent]
        );
        assert!(OutputColumn::parse_list("u_dd,bogus").is_err());
        assert!(OutputColumn::parse_list("").is_err());
        for c in OutputColumn::ALL {
            assert_eq!(c.name().parse::<OutputColumn>().unwrap(), c);
        }
    }

    #[test]
    fn invalid_requests() {
        let mut r = request(vec![OutputColumn::UGround]);
        r.z_min = 2e-6;
        assert!(run_sweep(&r).is_err());
        let mut r = request(vec![OutputColumn::UGround]);
        r.points = 1;
        assert!(run_sweep(&r).is_err());
        let mut r = request(vec![OutputColumn::RetAsymptote]);
        r.material = Material::gold_plasma();
        assert!(run_sweep(&r).is_err());
    }

    #[test]
    fn earth_column_is_exact() {
        let r = request(vec![OutputColumn::GravityEarth]);
        let t = run_sweep(&r).unwrap();
        let k = PhysicalConstants::codata2018();
        for row in &t.rows {
            assert_eq!(row.values[0], Some(r.neutron.mass * k.g_earth * row.z));
        }
    }

    #[test]
    fn failed_cells_are_flagged() {
        let mut r = request(vec![OutputColumn::UGround, OutputColumn::Table1]);
        r.material = Material::gold_drude();
        r.field = FieldConfig::averaged(1e5).unwrap();
        r.points = 2;
        let t = run_sweep(&r).unwrap();
        assert_eq!(t.failures(), 2);
        assert!(t
            .rows
            .iter()
            .all(|row| row.values[0].is_some() && row.values[1].is_none()));
        let csv = t.to_csv(EnergyUnit::J);
        assert!(csv.lines().last().unwrap().contains(",nan,\"table1:"));
    }

    #[test]
    fn unit_conversion() {
        let r = request(vec![OutputColumn::GravityEarth, OutputColumn::Exponent]);
        let t = run_sweep(&r).unwrap();
        let j = t.converted(EnergyUnit::J);
        let nev = t.converted(EnergyUnit::NeV);
        let e = PhysicalConstants::codata2018().e;
        let a = j[3][0].unwrap();
        assert!((nev[3][0].unwrap() - a / e * 1e9).abs() <= 1e-15 * nev[3][0].unwrap());
        assert_eq!(j[3][1], nev[3][1]);
    }

    #[test]
    fn csv_shape() {
        let r = request(vec![OutputColumn::UDd, OutputColumn::UGround]);
        let csv = run_sweep(&r).unwrap().to_csv(EnergyUnit::J);
        let header = csv.lines().find(|l| !l.starts_with('#')).unwrap();
        assert_eq!(header, "z,u_dd,u_ground,status");
        let first = csv.lines().filter(|l| !l.starts_with('#')).nth(1).unwrap();
        assert!(first.starts_with("1.00000000000e-9,"));
        assert!(first.ends_with(",ok"));
        let json: serde_json::Value = serde_json::from_str(&run_sweep(&r).unwrap().to_json(EnergyUnit::J)).unwrap();
        assert_eq!(json["rows"].as_array().unwrap().len(), 7);
    }

    #[test]
    fn table1_rows() {
        let t = run_table1(
            &FieldConfig::averaged(1e-3).unwrap(),
            1e-6,
            1e-9,
            &reference_materials(),
        )
        .unwrap();
        assert_eq!(t.rows.len(), 4);
        assert_eq!(t.failures(), 0);
        assert!(t.rows[0].deviation.unwrap().abs() < 1e-4);
        assert!(t.rows[0].in_window);
        assert!(!t.rows[1].in_window);
        assert!(t.rows[2].closed_form.unwrap() > 0.0);

        let other = run_table1(
            &FieldConfig::averaged(1.0).unwrap(),
            1e-6,
            1e-9,
            &reference_materials()[1..2],
        )
        .unwrap();
        assert!((other.rows[0].deviation.unwrap() - t.rows[1].deviation.unwrap()).abs() < 1e-6);
    }
}
