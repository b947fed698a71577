//! File writers: JSON reports, CSV meshes and OBJ meshes.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use mixed_surfaces::minkowski::MinkVector3;
use serde_json::Value;

use crate::error::CliError;

/// One sampled vertex: parameters, position and `λ = EG - F²`.
#[derive(Debug, Clone, Copy)]
pub struct MeshVertex {
    pub u: f64,
    pub v: f64,
    pub x: MinkVector3<f64>,
    pub lambda: f64,
}

/// Vertices on an `nu × nv` lattice, row-major in `u`.
pub struct Mesh {
    pub nu: usize,
    pub nv: usize,
    pub vertices: Vec<MeshVertex>,
}

impl Mesh {
    pub fn sample(
        u: (f64, f64),
        v: (f64, f64),
        (nu, nv): (usize, usize),
        mut f: impl FnMut(f64, f64) -> Result<(MinkVector3<f64>, f64), CliError>,
    ) -> Result<Self, CliError> {
        let mut vertices = Vec::with_capacity(nu * nv);
        for i in 0..nu {
            let a = u.0 + (u.1 - u.0) * i as f64 / (nu - 1) as f64;
            for j in 0..nv {
                let b = v.0 + (v.1 - v.0) * j as f64 / (nv - 1) as f64;
                let (x, lambda) = f(a, b)?;
                vertices.push(MeshVertex { u: a, v: b, x, lambda });
            }
        }
        Ok(Self { nu, nv, vertices })
    }

    pub fn csv(&self) -> String {
        let mut s = String::from("u,v,x1,x2,x3,lambda\n");
        for p in &self.vertices {
            let _ = writeln!(s, "{:e},{:e},{:e},{:e},{:e},{:e}", p.u, p.v, p.x.x1, p.x.x2, p.x.x3, p.lambda);
        }
        s
    }

    pub fn obj(&self) -> String {
        let mut s = String::new();
        for p in &self.vertices {
            let _ = writeln!(s, "v {:e} {:e} {:e}", p.x.x1, p.x.x2, p.x.x3);
        }
        let idx = |i: usize, j: usize| i * self.nv + j + 1;
        for i in 0..self.nu - 1 {
            for j in 0..self.nv - 1 {
                let _ = writeln!(s, "f {} {} {}", idx(i, j), idx(i + 1, j), idx(i + 1, j + 1));
                let _ = writeln!(s, "f {} {} {}", idx(i, j), idx(i + 1, j + 1), idx(i, j + 1));
            }
        }
        s
    }
}

pub struct OutDir {
    pub dir: PathBuf,
    pub obj: bool,
}

impl OutDir {
    pub fn new(dir: &Path, obj: bool) -> Result<Self, CliError> {
        std::fs::create_dir_all(dir)?;
        Ok(Self { dir: dir.to_path_buf(), obj })
    }

    pub fn json(&self, name: &str, v: &Value) -> Result<PathBuf, CliError> {
        let p = self.dir.join(name);
        let text = serde_json::to_string_pretty(v).map_err(|e| CliError::Config(e.to_string()))?;
        std::fs::write(&p, text + "\n")?;
        Ok(p)
    }

    pub fn text(&self, name: &str, s: &str) -> Result<PathBuf, CliError> {
        let p = self.dir.join(name);
        std::fs::write(&p, s)?;
        Ok(p)
    }

    /// Writes `stem.csv` and, if requested, `stem.obj`; returns the file names.
    pub fn mesh(&self, stem: &str, m: &Mesh) -> Result<Vec<String>, CliError> {
        let mut files = vec![format!("{stem}.csv")];
        self.text(&files[0], &m.csv())?;
        if self.obj {
            files.push(format!("{stem}.obj"));
            self.text(&files[1], &m.obj())?;
        }
        Ok(files)
    }
}
