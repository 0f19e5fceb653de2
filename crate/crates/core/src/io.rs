//! ASCII exports: triangle meshes (OBJ, PLY) and CSV tables.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{NilError, Result};
use crate::mse::{AnnulusGrid, ScalarField};
use crate::radial::RadialProfile;
use crate::verify::SurfaceSample;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Ply,
}

impl MeshFormat {
    /// Format from a file extension (`obj` or `ply`).
    pub fn from_path(path: &Path) -> Result<Self> {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("obj") => Ok(MeshFormat::Obj),
            Some("ply") => Ok(MeshFormat::Ply),
            _ => Err(NilError::InvalidParameter(format!("cannot infer mesh format from {}", path.display()))),
        }
    }
}

/// Triangulated sample of a surface, vertices in matrix coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshFile {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
    /// Optional named per-vertex scalar.
    pub scalar: Option<(String, Vec<f64>)>,
}

impl MeshFile {
    /// Samples `surf` on its `(u, v)` grid and splits every grid cell into two
    /// triangles; a periodic `v` direction closes the strip.
    pub fn from_surface(surf: &SurfaceSample) -> Self {
        let us = surf.u_nodes();
        let vs = surf.v_nodes();
        let (nu, nv) = (us.len(), vs.len());
        let mut vertices = Vec::with_capacity(nu * nv);
        for &u in &us {
            for &v in &vs {
                let g = surf.point(u, v).to_group();
                vertices.push([g.x, g.y, g.z_mat]);
            }
        }
        let columns = if surf.periodic_v { nv } else { nv - 1 };
        let mut faces = Vec::with_capacity(2 * (nu - 1) * columns);
        for i in 0..nu - 1 {
            for j in 0..columns {
                let j1 = (j + 1) % nv;
                let (a, b, c, d) = (i * nv + j, (i + 1) * nv + j, (i + 1) * nv + j1, i * nv + j1);
                faces.push([a, b, c]);
                faces.push([a, c, d]);
            }
        }
        Self { vertices, faces, scalar: None }
    }

    /// Attaches `f(u, v)` evaluated at every vertex.
    pub fn with_scalar(mut self, surf: &SurfaceSample, name: &str, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(self.vertices.len());
        for &u in &surf.u_nodes() {
            for &v in &surf.v_nodes() {
                values.push(f(u, v));
            }
        }
        self.scalar = Some((name.to_string(), values));
        self
    }

    /// Checks index bounds, degenerate faces and that every edge is shared
    /// by at most two faces traversing it in opposite directions.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for (k, f) in self.faces.iter().enumerate() {
            if f.iter().any(|&i| i >= n) {
                return Err(NilError::InvalidParameter(format!("face {k} indexes past {n} vertices")));
            }
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(NilError::InvalidParameter(format!("face {k} is degenerate")));
            }
            for e in 0..3 {
                *directed.entry((f[e], f[(e + 1) % 3])).or_insert(0) += 1;
            }
        }
        if let Some(((a, b), _)) = directed.iter().find(|(_, &c)| c > 1) {
            return Err(NilError::InvalidParameter(format!("edge {a}-{b} traversed twice in the same direction")));
        }
        if let Some((_, values)) = &self.scalar {
            if values.len() != n {
                return Err(NilError::InvalidParameter("scalar channel length differs from vertex count".into()));
            }
        }
        Ok(())
    }

    pub fn to_obj_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# vertices are matrix coordinates (x, y, z) of Nil3");
        if let Some((name, _)) = &self.scalar {
            let _ = writeln!(out, "# texture u coordinate carries per-vertex {name}");
        }
        for v in &self.vertices {
            let _ = writeln!(out, "v {:.16e} {:.16e} {:.16e}", v[0], v[1], v[2]);
        }
        if let Some((_, values)) = &self.scalar {
            for s in values {
                let _ = writeln!(out, "vt {s:.16e} 0");
            }
        }
        for f in &self.faces {
            if self.scalar.is_some() {
                let _ = writeln!(out, "f {0}/{0} {1}/{1} {2}/{2}", f[0] + 1, f[1] + 1, f[2] + 1);
            } else {
                let _ = writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
            }
        }
        out
    }

    pub fn to_ply_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ply\nformat ascii 1.0");
        let _ = writeln!(out, "comment vertices are matrix coordinates (x, y, z) of Nil3");
        let _ = writeln!(out, "element vertex {}", self.vertices.len());
        let _ = writeln!(out, "property double x\nproperty double y\nproperty double z");
        if let Some((name, _)) = &self.scalar {
            let _ = writeln!(out, "property double {name}");
        }
        let _ = writeln!(out, "element face {}", self.faces.len());
        let _ = writeln!(out, "property list uchar int vertex_indices\nend_header");
        for (k, v) in self.vertices.iter().enumerate() {
            let _ = write!(out, "{:.16e} {:.16e} {:.16e}", v[0], v[1], v[2]);
            if let Some((_, values)) = &self.scalar {
                let _ = write!(out, " {:.16e}", values[k]);
            }
            out.push('\n');
        }
        for f in &self.faces {
            let _ = writeln!(out, "3 {} {} {}", f[0], f[1], f[2]);
        }
        out
    }

    pub fn write(&self, path: impl AsRef<Path>, format: MeshFormat) -> Result<()> {
        self.validate()?;
        let text = match format {
            MeshFormat::Obj => self.to_obj_string(),
            MeshFormat::Ply => self.to_ply_string(),
        };
        std::fs::write(path, text)?;
        Ok(())
    }
}

/// Samples `surf` and writes it as an ASCII mesh.
pub fn export_mesh(surf: &SurfaceSample, path: impl AsRef<Path>, format: MeshFormat) -> Result<MeshFile> {
    let mesh = MeshFile::from_surface(surf);
    mesh.write(path, format)?;
    Ok(mesh)
}

fn csv_error(e: csv::Error) -> NilError {
    NilError::Io(e.to_string())
}

/// Writes a header row and one record per row, every number with 17
/// significant digits.
pub fn export_csv(path: impl AsRef<Path>, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    if let Some(bad) = rows.iter().find(|r| r.len() != header.len()) {
        return Err(NilError::InvalidParameter(format!("row of {} values under {} columns", bad.len(), header.len())));
    }
    let mut w = csv::Writer::from_path(path).map_err(csv_error)?;
    w.write_record(header).map_err(csv_error)?;
    for row in rows {
        w.write_record(row.iter().map(|v| format!("{v:.16e}"))).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// Rows `(r, value, derivative)` of a radial profile.
pub fn profile_rows(profile: &RadialProfile) -> Vec<Vec<f64>> {
    (0..profile.len()).map(|i| vec![profile.nodes[i], profile.values[i], profile.derivs[i]]).collect()
}

/// Rows `(r, u)` along the ray with angle index `j`.
pub fn ray_rows(grid: &AnnulusGrid, u: &ScalarField, j: usize) -> Vec<Vec<f64>> {
    (0..grid.n_r()).map(|i| vec![grid.r(i), u.get(i, j)]).collect()
}

/// Reads a CSV written by [`export_csv`].
pub fn read_csv(path: impl AsRef<Path>) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut r = csv::Reader::from_path(path).map_err(csv_error)?;
    let header = r.headers().map_err(csv_error)?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record.map_err(csv_error)?;
        let row = record
            .iter()
            .map(|c| c.parse::<f64>().map_err(|_| NilError::Io(format!("bad number {c:?}"))))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok((header, rows))
}
