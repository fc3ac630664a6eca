//! Acceptance suite: one check per release criterion, each printed as a
//! single pass/fail line with its runtime. Run with
//! `cargo test -p lifshitz --test acceptance -- --nocapture` to see the
//! report even when everything passes.
//!
//! Criterion 5 (and the graphite anchors of criterion 6) needs third-party
//! optical tables; point `LIFSHITZ_GRAPHITE_DATA` at a material descriptor
//! JSON to enable it, otherwise those checks are skipped with a notice.

use lifshitz::cli::{self, C3Config, C3Scan, GeometryRef, MaterialRef, OutputSpec, ParticleRef};
use lifshitz::cylinder;
use lifshitz::optics::MaterialDescriptor;
use lifshitz::pairwise::{self, ExteriorRoute};
use lifshitz::permittivity::{kk_closed_segments, kk_numeric, Material};
use lifshitz::planar::{self, EngineSettings};
use lifshitz::polarizability::OscillatorModel;
use lifshitz::quantities;
use lifshitz::reflection::WallGeometry;
use lifshitz::validation;
use std::time::Instant;

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

struct Report {
    failures: Vec<String>,
}

impl Report {
    fn run(
        &mut self,
        id: usize,
        name: &str,
        budget_s: f64,
        check: impl FnOnce() -> Outcome,
    ) {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed().as_secs_f64();
        let (tag, detail) = match &outcome {
            Outcome::Pass(d) => ("PASS", d.clone()),
            Outcome::Fail(d) => ("FAIL", d.clone()),
            Outcome::Skip(d) => ("SKIP", d.clone()),
        };
        println!("ACCEPTANCE {id} {tag} ({elapsed:.2}s, budget {budget_s}s): {name} - {detail}");
        if matches!(outcome, Outcome::Fail(_)) {
            self.failures.push(format!("criterion {id}: {detail}"));
        }
        if elapsed > budget_s && !matches!(outcome, Outcome::Skip(_)) {
            self.failures
                .push(format!("criterion {id}: runtime {elapsed:.2}s over budget {budget_s}s"));
        }
    }
}

fn graphite_material() -> Option<(Material, String)> {
    let path = std::env::var_os("LIFSHITZ_GRAPHITE_DATA")?;
    let path = std::path::PathBuf::from(path);
    let desc = MaterialDescriptor::load(&path).expect("LIFSHITZ_GRAPHITE_DATA must be a valid descriptor");
    let material = Material::from_descriptor(&desc).expect("descriptor tables must ingest");
    Some((material, path.display().to_string()))
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn acceptance() {
    let mut report = Report { failures: Vec::new() };
    let h1 = OscillatorModel::hydrogen_1osc();
    let h10 = OscillatorModel::hydrogen_10osc();
    let h2 = OscillatorModel::hydrogen_molecule();

    // 1. Limit chain: plate(d->inf) -> semispace, shell(d->R) -> solid,
    //    solid(R->inf) -> semispace, shell(R->inf) -> plate.
    report.run(1, "limit-chain suite", 10.0, || {
        let m = Material::drude_test();
        let s = EngineSettings {
            quad_rel_tol: 1e-11,
            term_rel_tol: 1e-10,
            consecutive_small: 3,
            min_terms: 10,
            max_terms: 2_000_000,
            y_window: 60.0,
        };
        let (a, t) = (1e-9, 300.0);
        let mut worst: (f64, &str, f64) = (0.0, "", 0.0);
        for (ratio, tol) in [(1e4, 1e-3), (1e8, 1e-8)] {
            let r = ratio * a;
            let semi = match planar::c3_planar_with(&h1, &WallGeometry::semispace(m.clone()), a, t, &s) {
                Ok(v) => v.c3_au,
                Err(e) => return Outcome::Fail(format!("semispace run failed: {e}")),
            };
            let run = |wall: WallGeometry| -> Result<f64, String> {
                match wall.kind {
                    lifshitz::reflection::WallKind::Plate { .. } => {
                        planar::c3_planar_with(&h1, &wall, a, t, &s)
                            .map(|v| v.c3_au)
                            .map_err(|e| e.to_string())
                    }
                    _ => cylinder::c3_cylinder_with(&h1, &wall, a, t, &s)
                        .map(|v| v.c3_au())
                        .map_err(|e| e.to_string()),
                }
            };
            let plate_thick = match run(WallGeometry::plate(m.clone(), r).unwrap()) {
                Ok(v) => v,
                Err(e) => return Outcome::Fail(e),
            };
            let solid = match run(WallGeometry::solid_cylinder(m.clone(), r).unwrap()) {
                Ok(v) => v,
                Err(e) => return Outcome::Fail(e),
            };
            let shell_near_solid =
                match run(WallGeometry::shell(m.clone(), r, r * (1.0 - 1e-3)).unwrap()) {
                    Ok(v) => v,
                    Err(e) => return Outcome::Fail(e),
                };
            let d_fixed = 5.0 * a;
            let plate_ref = match run(WallGeometry::plate(m.clone(), d_fixed).unwrap()) {
                Ok(v) => v,
                Err(e) => return Outcome::Fail(e),
            };
            let shell_wide = match run(WallGeometry::shell(m.clone(), r, d_fixed).unwrap()) {
                Ok(v) => v,
                Err(e) => return Outcome::Fail(e),
            };
            for (name, got, target) in [
                ("plate->semispace", plate_thick, semi),
                ("shell->solid", shell_near_solid, solid),
                ("solid->semispace", solid, semi),
                ("shell->plate", shell_wide, plate_ref),
            ] {
                let dev = rel(got, target);
                if dev > worst.0 {
                    worst = (dev, name, ratio);
                }
                if dev > tol {
                    return Outcome::Fail(format!(
                        "{name} deviates {dev:.3e} > {tol:.0e} at ratio {ratio:.0e}"
                    ));
                }
            }
        }
        Outcome::Pass(format!(
            "worst deviation {:.2e} ({} at ratio {:.0e})",
            worst.0, worst.1, worst.2
        ))
    });

    // 2. Nonretarded perfect-mirror oracle.
    report.run(2, "ideal-metal oracle", 1.0, || {
        let wall = WallGeometry::semispace(Material::ideal_metal());
        let got = match planar::c3_planar(&h1, &wall, 0.5e-9, 300.0) {
            Ok(v) => v.c3_au,
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        let oracle = validation::oracle_ideal_metal_c3(&h1);
        let dev = rel(got, oracle);
        if dev <= 0.03 {
            Outcome::Pass(format!("C3 = {got:.4} a.u. vs oracle {oracle:.4} (dev {dev:.2e})"))
        } else {
            Outcome::Fail(format!("C3 = {got:.4} vs oracle {oracle:.4}, dev {dev:.2e} > 3%"))
        }
    });

    // 3. Kramers-Kronig oracle on the synthetic Drude spectrum.
    report.run(3, "kramers-kronig oracle", 5.0, || {
        let (wp, g) = (1.226, 0.04);
        let (table, extrap) = validation::synthetic_drude_table(wp, g, 0.02, 40.0, 1500);
        let mut worst_analytic = 0.0f64;
        let mut worst_routes = 0.0f64;
        for k in 0..50 {
            let xi = 1e13 * 10f64.powf(5.0 * k as f64 / 49.0);
            let xi_ev = quantities::rad_s_to_ev(xi);
            let expected = 1.0 + wp * wp / (xi_ev * (xi_ev + g));
            let numeric = match kk_numeric(&table, &extrap, xi) {
                Ok(v) => v,
                Err(e) => return Outcome::Fail(e.to_string()),
            };
            let closed = match kk_closed_segments(&table, &extrap, xi) {
                Ok(v) => v,
                Err(e) => return Outcome::Fail(e.to_string()),
            };
            worst_analytic = worst_analytic.max(rel(numeric, expected)).max(rel(closed, expected));
            worst_routes = worst_routes.max(rel(numeric, closed));
        }
        if worst_analytic <= 1e-4 && worst_routes <= 1e-4 {
            Outcome::Pass(format!(
                "worst vs analytic {worst_analytic:.2e}, numeric vs closed {worst_routes:.2e}"
            ))
        } else {
            Outcome::Fail(format!(
                "vs analytic {worst_analytic:.2e}, routes {worst_routes:.2e} (tolerance 1e-4)"
            ))
        }
    });

    // 4. Polarizability fixtures and atom-model equivalence downstream.
    report.run(4, "polarizability fixtures", 30.0, || {
        let static_dev = rel(h10.alpha0_au(), 4.50);
        if static_dev > 0.005 {
            return Outcome::Fail(format!(
                "10-oscillator static value {:.4} a.u. off by {static_dev:.2e}",
                h10.alpha0_au()
            ));
        }
        let wall = WallGeometry::semispace(Material::drude_test());
        let mut worst = 0.0f64;
        for k in 0..=14 {
            let a = 3e-9 * (150.0f64 / 3.0).powf(k as f64 / 14.0);
            let c10 = match planar::c3_planar(&h10, &wall, a, 300.0) {
                Ok(v) => v.c3_au,
                Err(e) => return Outcome::Fail(e.to_string()),
            };
            let c1 = match planar::c3_planar(&h1, &wall, a, 300.0) {
                Ok(v) => v.c3_au,
                Err(e) => return Outcome::Fail(e.to_string()),
            };
            worst = worst.max(rel(c1, c10));
        }
        if worst <= 0.002 {
            Outcome::Pass(format!(
                "alpha(0) = {:.4} a.u.; 10-osc vs 1-osc C3 within {:.3}% over 3-150 nm",
                h10.alpha0_au(),
                100.0 * worst
            ))
        } else {
            Outcome::Fail(format!("C3 model deviation {:.3}% > 0.2%", 100.0 * worst))
        }
    });

    // 5. Reference-table reproduction (needs third-party optical data).
    report.run(5, "reference C3 table reproduction", 120.0, || {
        let Some((material, path)) = graphite_material() else {
            return Outcome::Skip(
                "no dataset supplied; set LIFSHITZ_GRAPHITE_DATA=/path/to/descriptor.json".into(),
            );
        };
        let mut worst_c3 = 0.0f64;
        let mut worst_delta_pp = 0.0f64;
        for (particle, rows) in [(&h10, &validation::TABLE_H), (&h2, &validation::TABLE_H2)] {
            for &(a_nm, c3s_ref, c3c_ref, delta_ref) in rows.iter() {
                let a = a_nm * 1e-9;
                let wall = match WallGeometry::solid_cylinder(material.clone(), 50e-9) {
                    Ok(w) => w,
                    Err(e) => return Outcome::Fail(e.to_string()),
                };
                let c = match cylinder::c3_cylinder(particle, &wall, a, 300.0) {
                    Ok(v) => v,
                    Err(e) => return Outcome::Fail(e.to_string()),
                };
                let c3c = c.c3_au();
                let c3s = c3c / (1.0 - c.delta_vs_semispace);
                worst_c3 = worst_c3.max(rel(c3s, c3s_ref)).max(rel(c3c, c3c_ref));
                worst_delta_pp =
                    worst_delta_pp.max((100.0 * c.delta_vs_semispace - delta_ref).abs());
                if rel(c3s, c3s_ref) > 0.05 || rel(c3c, c3c_ref) > 0.05 {
                    return Outcome::Fail(format!(
                        "a = {a_nm} nm: C3s {c3s:.5} vs {c3s_ref}, C3c {c3c:.5} vs {c3c_ref} (5% tolerance)"
                    ));
                }
                if (100.0 * c.delta_vs_semispace - delta_ref).abs() > 1.5 {
                    return Outcome::Fail(format!(
                        "a = {a_nm} nm: delta {:.1}% vs {delta_ref}% (1.5 pp tolerance)",
                        100.0 * c.delta_vs_semispace
                    ));
                }
            }
        }
        Outcome::Pass(format!(
            "{path}: worst C3 deviation {:.2}%, worst delta deviation {worst_delta_pp:.2} pp",
            100.0 * worst_c3
        ))
    });

    // 6. Exterior pairwise vs Lifshitz-cylinder trend.
    report.run(6, "pairwise-vs-lifshitz trend", 60.0, || {
        let r = 50e-9;
        let t = 300.0;
        let m = Material::drude_test();
        let grid = [3.0, 5.0, 8.0, 10.0, 15.0, 20.0, 30.0, 40.0, 50.0];
        let mut last = -1.0f64;
        for &a_nm in &grid {
            let a = a_nm * 1e-9;
            let f_pw = match pairwise::pairwise_exterior(&h1, &m, r, a, t) {
                Ok(v) => v,
                Err(e) => return Outcome::Fail(e.to_string()),
            };
            let wall = WallGeometry::solid_cylinder(m.clone(), r).unwrap();
            let f_lif = match cylinder::c3_cylinder(&h1, &wall, a, t) {
                Ok(v) => v.free_energy_j(),
                Err(e) => return Outcome::Fail(e.to_string()),
            };
            let disc = (f_pw / f_lif - 1.0).abs();
            if disc <= last {
                return Outcome::Fail(format!(
                    "discrepancy not increasing at a = {a_nm} nm ({disc:.3e} after {last:.3e})"
                ));
            }
            last = disc;
        }
        let mut detail = format!("drude-test discrepancy grows to {:.1}% at 50 nm", 100.0 * last);
        if let Some((material, _)) = graphite_material() {
            for (a_nm, expect, tol_pp) in [(8.0, None, 0.0), (10.0, Some(1.35), 0.5), (50.0, Some(16.0), 3.0)] {
                let a = a_nm * 1e-9;
                let f_pw = match pairwise::pairwise_exterior(&h10, &material, r, a, t) {
                    Ok(v) => v,
                    Err(e) => return Outcome::Fail(e.to_string()),
                };
                let wall = WallGeometry::solid_cylinder(material.clone(), r).unwrap();
                let f_lif = match cylinder::c3_cylinder(&h10, &wall, a, t) {
                    Ok(v) => v.free_energy_j(),
                    Err(e) => return Outcome::Fail(e.to_string()),
                };
                let disc_pct = 100.0 * (f_pw / f_lif - 1.0).abs();
                match expect {
                    None => {
                        if disc_pct > 1.0 {
                            return Outcome::Fail(format!(
                                "graphite anchor: {disc_pct:.2}% > 1% at a = {a_nm} nm"
                            ));
                        }
                    }
                    Some(target) => {
                        if (disc_pct - target).abs() > tol_pp {
                            return Outcome::Fail(format!(
                                "graphite anchor at a = {a_nm} nm: {disc_pct:.2}% vs {target}% (+-{tol_pp})"
                            ));
                        }
                    }
                }
            }
            detail.push_str("; graphite anchors reproduced");
        } else {
            detail.push_str("; graphite anchors skipped (no dataset)");
        }
        Outcome::Pass(detail)
    });

    // 7. Interior physics: transect symmetry/maximum and in-out preference.
    report.run(7, "interior physics", 60.0, || {
        let m = Material::drude_test();
        let (r0, d) = (10e-9, 40e-9);
        let positions: Vec<f64> = (6..=34).map(|k| k as f64 * 0.5e-9).collect();
        let scan = match pairwise::interior_transect(&h1, &m, r0, d, &positions, 300.0) {
            Ok(v) => v,
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        let n = scan.len();
        let f_axis = scan[n / 2].1;
        for k in 0..n {
            let (_, f) = scan[k];
            let (_, f_mirror) = scan[n - 1 - k];
            if rel(f, f_mirror) > 1e-6 {
                return Outcome::Fail(format!(
                    "transect asymmetry {:.2e} at index {k}",
                    rel(f, f_mirror)
                ));
            }
            if f > f_axis + f_axis.abs() * 1e-9 {
                return Outcome::Fail("maximum not on the axis".into());
            }
        }
        for material in [Material::drude_test(), Material::dielectric_test(), Material::ideal_metal()] {
            for d_nm in (3..=40).step_by(1) {
                let diff = match pairwise::inside_outside_difference(
                    &h1,
                    &material,
                    10e-9,
                    d_nm as f64 * 1e-9,
                    3e-9,
                    300.0,
                    ExteriorRoute::LifshitzCylinder,
                ) {
                    Ok(v) => v,
                    Err(e) => return Outcome::Fail(e.to_string()),
                };
                if !(diff > 0.0) {
                    return Outcome::Fail(format!(
                        "exterior-minus-interior not positive for {} at d = {d_nm} nm",
                        material.label
                    ));
                }
            }
        }
        Outcome::Pass("transect symmetric with axis maximum; interior preferred for all bundled materials".into())
    });

    // 8. Determinism and tail diagnostics.
    report.run(8, "determinism & diagnostics", 30.0, || {
        let cfg = C3Config {
            particle: ParticleRef::Builtin("h1".into()),
            material: MaterialRef::Builtin {
                builtin: "drude-test".into(),
            },
            geometry: GeometryRef::SolidCylinder { radius_nm: 50.0 },
            temperature_k: 300.0,
            scan: C3Scan::A {
                grid_nm: vec![3.0, 10.0, 50.0],
                compare_semispace: true,
            },
            output: OutputSpec {
                path: "acceptance.csv".into(),
                svg: false,
            },
        };
        let first = match cli::cmd_c3(&cfg) {
            Ok(v) => v,
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        let second = match cli::cmd_c3(&cfg) {
            Ok(v) => v,
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        if first.csv != second.csv || first.sidecar_json != second.sidecar_json {
            return Outcome::Fail("repeated runs are not byte-identical".into());
        }
        let tol = EngineSettings::default().term_rel_tol;
        for &a_nm in &[3.0, 10.0, 50.0, 150.0] {
            let wall = WallGeometry::semispace(Material::drude_test());
            let r = match planar::c3_planar(&h1, &wall, a_nm * 1e-9, 300.0) {
                Ok(v) => v,
                Err(e) => return Outcome::Fail(e.to_string()),
            };
            if r.tail_estimate > tol {
                return Outcome::Fail(format!(
                    "tail estimate {:.2e} above tolerance {tol:.0e} at a = {a_nm} nm",
                    r.tail_estimate
                ));
            }
            let cwall = WallGeometry::solid_cylinder(Material::drude_test(), 50e-9).unwrap();
            let c = match cylinder::c3_cylinder(&h1, &cwall, a_nm * 1e-9, 300.0) {
                Ok(v) => v,
                Err(e) => return Outcome::Fail(e.to_string()),
            };
            if c.result.tail_estimate > tol {
                return Outcome::Fail(format!(
                    "cylinder tail estimate {:.2e} above tolerance at a = {a_nm} nm",
                    c.result.tail_estimate
                ));
            }
        }
        Outcome::Pass("byte-identical reruns; all tail estimates below 1e-7".into())
    });

    assert!(
        report.failures.is_empty(),
        "acceptance failures:\n{}",
        report.failures.join("\n")
    );
}
