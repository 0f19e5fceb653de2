use std::f64::consts::SQRT_2;
use std::path::Path;

use nilgeo::io::{export_csv, profile_rows, ray_rows, MeshFile, MeshFormat};
use nilgeo::mse::{asymptotic_solve, exterior_solve, parse_list, SolverConfig};
use nilgeo::radial::{
    barrier_f, catenoid_flux_check, catenoid_profile, subsolution_check, BarrierParams, CatenoidParams,
};
use nilgeo::verify::{
    catenoid_surface, curvature_oracles, cylinder_surface, graph_embed, mean_curvature_residual, plane_surface,
    render_table, report_json, theorem1_report, HeightReading, ReportTolerances, SurfaceSample, Verdict,
};
use nilgeo::{
    curvature_closed_forms, distance_to_identity, geodesic_closed_form, integrate_geodesic, BoundaryData, ChartPoint,
    NilError, Result, SurfacePoint, TangentVector,
};
use serde::Serialize;

use crate::{
    AsymptoticArgs, BarrierArgs, CatenoidArgs, Cli, Command, CurvatureArgs, ExportArgs, ExteriorArgs, GeodesicArgs,
    SurfaceKind, VerifyArgs,
};

/// Runs one subcommand. `Ok(false)` means the command completed but some
/// check it performs did not hold.
pub fn run(cli: Cli) -> Result<bool> {
    let cfg = solver_config(&cli)?;
    match cli.command {
        Command::Geodesic(a) => geodesic(&a),
        Command::Curvature(a) => curvature(&a),
        Command::Catenoid(a) => catenoid(&a),
        Command::Barrier(a) => barrier(&a),
        Command::Exterior(a) => exterior(&a, cfg),
        Command::Asymptotic(a) => asymptotic(&a, cfg),
        Command::Verify(a) => verify(&a),
        Command::Export(a) => export(&a),
    }
}

fn solver_config(cli: &Cli) -> Result<SolverConfig> {
    let mut cfg = match &cli.config {
        Some(path) => {
            log::debug!("reading solver configuration from {}", path.display());
            SolverConfig::from_file(path)?
        }
        None => SolverConfig::default(),
    };
    for kv in &cli.overrides {
        let (k, v) = kv.split_once('=').ok_or_else(|| NilError::Config(format!("expected KEY=VALUE, got {kv:?}")))?;
        cfg.set(k, v)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn echo(name: &str, args: &impl Serialize, cfg: Option<&SolverConfig>) {
    println!("# nilgeo {name} {}", serde_json::to_string(args).unwrap_or_default());
    if let Some(cfg) = cfg {
        for line in cfg.to_kv_string().lines() {
            println!("# {line}");
        }
    }
}

fn write_mesh(mesh: &MeshFile, path: &Path) -> Result<()> {
    mesh.write(path, MeshFormat::from_path(path)?)?;
    println!("wrote {} ({} vertices, {} faces)", path.display(), mesh.vertices.len(), mesh.faces.len());
    Ok(())
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    export_csv(path, header, rows)?;
    println!("wrote {} ({} rows)", path.display(), rows.len());
    Ok(())
}

fn geodesic(a: &GeodesicArgs) -> Result<bool> {
    echo("geodesic", a, None);
    if !(a.t > 0.0) || a.steps == 0 {
        return Err(NilError::InvalidParameter("need t > 0 and steps > 0".into()));
    }
    let (s, c) = a.theta.sin_cos();
    let v0 = TangentVector::new(ChartPoint::ORIGIN, 0.5 * (c - s), 0.5 * (s + c), 0.0);
    let path = integrate_geodesic(&ChartPoint::ORIGIN, &v0, a.t, a.steps)?;
    let end = path.last().expect("nonempty path").0;
    let (exact, _) = geodesic_closed_form(a.theta, a.t);
    let err = (end.x - exact.x).abs().max((end.y - exact.y).abs()).max(end.zeta.abs());
    println!("closed form  x = {:.15}  y = {:.15}  zeta = 0", exact.x, exact.y);
    println!("integrated   x = {:.15}  y = {:.15}  zeta = {:.3e}", end.x, end.y, end.zeta);
    println!("max difference {err:.3e}");
    println!("distance to identity {:.15} (t = {})", distance_to_identity(&exact), a.t);
    if let Some(csv) = &a.csv {
        let rows: Vec<Vec<f64>> = path
            .iter()
            .enumerate()
            .map(|(k, (p, _))| vec![a.t * k as f64 / a.steps as f64, p.x, p.y, p.zeta])
            .collect();
        write_csv(csv, &["t", "x", "y", "zeta"], &rows)?;
    }
    Ok(true)
}

fn curvature(a: &CurvatureArgs) -> Result<bool> {
    echo("curvature", a, None);
    println!("{:>8} {:>20} {:>20} {:>20}", "r", "K (Riemann)", "K (-g''/g)", "K (printed)");
    for &r in &a.r {
        let (riemann, warp) = curvature_oracles(r, 0.0, a.h)?;
        let (printed, _) = curvature_closed_forms(&SurfacePoint::new(r / SQRT_2, 0.0));
        println!("{r:>8} {riemann:>20.12e} {warp:>20.12e} {printed:>20.12e}");
    }
    Ok(true)
}

fn catenoid_mesh(surf: &SurfaceSample, residual: bool) -> Result<MeshFile> {
    let mesh = MeshFile::from_surface(surf);
    if !residual {
        return Ok(mesh);
    }
    let floor = 1e-3 * surf.u_range.1;
    let mesh = mesh
        .with_scalar(surf, "abs_h", |u, v| mean_curvature_residual(surf, u.max(floor), v).map_or(f64::NAN, f64::abs));
    if let Some((_, values)) = &mesh.scalar {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(NilError::DegenerateImmersion(0.0));
        }
    }
    Ok(mesh)
}

fn catenoid(a: &CatenoidArgs) -> Result<bool> {
    echo("catenoid", a, None);
    let params = match a.t0 {
        Some(t0) => CatenoidParams::new(a.c, t0)?,
        None => CatenoidParams::minimal(a.c)?,
    };
    if !(a.tmax > params.t0) || a.n < 2 || a.n_theta < 3 {
        return Err(NilError::InvalidParameter("need tmax > t0, n >= 2 and n_theta >= 3".into()));
    }
    let nodes: Vec<f64> = (0..a.n).map(|k| params.t0 + (a.tmax - params.t0) * k as f64 / (a.n - 1) as f64).collect();
    let profile = catenoid_profile(&params, &nodes, 1e-12)?;
    let surf = catenoid_surface(params, a.tmax, HeightReading::ChartOffset, a.n, a.n_theta);
    let mut max_h: f64 = 0.0;
    for &tau in &surf.u_nodes()[1..] {
        max_h = max_h.max(mean_curvature_residual(&surf, tau, 0.37)?.abs());
    }
    println!("neck t0 = {:.15}, flux = {:.15}", params.t0, params.flux());
    println!("flux from profile at t = tmax: {:.15}", catenoid_flux_check(&params, a.tmax)?);
    println!("height at tmax: zeta = {:.15}", profile.values[a.n - 1] / SQRT_2);
    println!("max |H| along the profile: {max_h:.3e}");
    if let Some(csv) = &a.csv {
        let rows: Vec<Vec<f64>> = profile_rows(&profile).into_iter().map(|r| vec![r[0], r[1] / SQRT_2, r[2]]).collect();
        write_csv(csv, &["t", "h", "du"], &rows)?;
    }
    for path in [&a.export_obj, &a.export_ply].into_iter().flatten() {
        write_mesh(&catenoid_mesh(&surf, a.residual)?, path)?;
    }
    Ok(true)
}

fn barrier(a: &BarrierArgs) -> Result<bool> {
    echo("barrier", a, None);
    if !(a.step > 0.0) || !(a.rmax >= 0.0) {
        return Err(NilError::InvalidParameter("need step > 0 and rmax >= 0".into()));
    }
    let p = BarrierParams::normalized(a.s, a.alpha)?;
    let n = (a.rmax / a.step).round() as usize;
    let radii: Vec<f64> = (0..=n).map(|k| a.step * k as f64).collect();
    let rows =
        radii.iter().map(|&r| barrier_f(&p, r, 1e-12).map(|(f, df)| vec![r, f, df])).collect::<Result<Vec<_>>>()?;
    let sub = subsolution_check(&p, a.alpha, &radii)?;
    let last = rows.last().expect("at least one row");
    println!("scale c = {:.15}", p.c_barrier);
    println!("f({}) = {:.15}, sup bound {:.15}", last[0], last[1], p.sup_bound());
    println!("min M[f] = {:.6e}, min curvature margin = {:.6e}", sub.min_operator, sub.min_margin);
    if let Some(csv) = &a.csv {
        write_csv(csv, &["r", "f", "df"], &rows)?;
    }
    Ok(sub.min_operator >= -1e-10)
}

fn exterior(a: &ExteriorArgs, mut cfg: SolverConfig) -> Result<bool> {
    if let Some(s) = &a.schedule {
        cfg.schedule = parse_list(s)?;
        cfg.validate()?;
    }
    echo("exterior", a, Some(&cfg));
    let sol = exterior_solve(a.s, a.r0, &cfg)?;
    println!("{:>8} {:>18} {:>18} {:>18} {:>7}", "m", "t_m", "barrier cap", "gradient", "trials");
    for st in &sol.steps {
        println!("{:>8} {:>18.12} {:>18.12} {:>18.12} {:>7}", st.m, st.t, st.barrier_cap, st.gradient, st.trials);
    }
    let cauchy: Vec<String> = sol.cauchy.iter().map(|d| format!("{d:.3e}")).collect();
    println!("cauchy sup differences on r <= {}: [{}]", cfg.compact_radius, cauchy.join(", "));
    let (grid, u) = sol.u_s();
    if let Some(csv) = &a.csv {
        write_csv(csv, &["r", "u"], &ray_rows(grid, u, 0))?;
    }
    if let Some(json) = &a.json {
        std::fs::write(json, serde_json::to_string_pretty(&sol).map_err(|e| NilError::Io(e.to_string()))?)?;
        println!("wrote {}", json.display());
    }
    if let Some(obj) = &a.export_obj {
        write_mesh(&MeshFile::from_surface(&graph_embed(u, grid)), obj)?;
    }
    Ok(sol.steps.iter().all(|st| st.t <= st.barrier_cap + 1e-6))
}

fn asymptotic(a: &AsymptoticArgs, mut cfg: SolverConfig) -> Result<bool> {
    if let Some(s) = &a.schedule {
        cfg.schedule = parse_list(s)?;
        cfg.validate()?;
    }
    echo("asymptotic", a, Some(&cfg));
    let phi = BoundaryData::parse(&a.phi)?;
    let sol = asymptotic_solve(&phi, &cfg)?;
    for ((r, st), u) in sol.radii.iter().zip(&sol.stats).zip(&sol.fields) {
        println!(
            "R = {r:>6}: {} Newton steps, residual {:.3e}, range [{:.6}, {:.6}]",
            st.steps,
            st.residual,
            u.min(),
            u.max()
        );
    }
    let diffs: Vec<String> = sol.consecutive_differences.iter().map(|d| format!("{d:.6e}")).collect();
    println!("sup differences on r <= {}: [{}]", cfg.compact_radius, diffs.join(", "));
    println!("decreasing: {}", sol.differences_decreasing());
    if let Some(csv) = &a.csv {
        let (grid, u) = (sol.grids.last().expect("nonempty"), sol.fields.last().expect("nonempty"));
        write_csv(csv, &["r", "u"], &ray_rows(grid, u, 0))?;
    }
    if let Some(json) = &a.json {
        std::fs::write(json, serde_json::to_string_pretty(&sol).map_err(|e| NilError::Io(e.to_string()))?)?;
        println!("wrote {}", json.display());
    }
    Ok(true)
}

fn verify(a: &VerifyArgs) -> Result<bool> {
    echo("verify", a, None);
    let tols = match a.tol {
        Some(t) if t > 0.0 => ReportTolerances::uniform(t),
        Some(t) => return Err(NilError::InvalidParameter(format!("tolerance must be positive, got {t}"))),
        None => ReportTolerances::default(),
    };
    let reports = theorem1_report(&tols)?;
    print!("{}", render_table(&reports));
    if let Some(json) = &a.json {
        std::fs::write(json, report_json(&reports))?;
        println!("wrote {}", json.display());
    }
    Ok(reports.iter().all(|r| r.verdict != Verdict::Fail))
}

fn export(a: &ExportArgs) -> Result<bool> {
    echo("export", a, None);
    if a.n < 2 {
        return Err(NilError::InvalidParameter("need at least 2 samples per direction".into()));
    }
    let surf = match a.surface {
        SurfaceKind::Plane => plane_surface(a.size, a.n),
        SurfaceKind::Cylinder => cylinder_surface(a.size, a.extent, a.n, a.n),
        SurfaceKind::Catenoid => {
            catenoid_surface(CatenoidParams::minimal(a.size)?, a.extent, HeightReading::ChartOffset, a.n, a.n)
        }
    };
    write_mesh(&MeshFile::from_surface(&surf), &a.out)?;
    Ok(true)
}
