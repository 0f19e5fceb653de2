use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::{NilError, Result};

/// Tolerances, grid sizes and schedules shared by the 2-D solvers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Newton stops once the sup-norm of the intrinsic residual is below this.
    pub newton_tol: f64,
    pub max_newton: usize,
    /// Initial step length of each Newton update, in `(0, 1]`.
    pub damping: f64,
    /// Radial intervals per grid.
    pub n_radial: usize,
    /// Angular nodes per grid.
    pub n_angular: usize,
    /// Exponential clustering of annulus radii toward the inner circle.
    pub grading: f64,
    /// `sinh` grading of disk radii.
    pub disk_grading: f64,
    /// Outer radii `m₁ < … < m_K` (exterior) or disk radii (asymptotic).
    pub schedule: Vec<f64>,
    /// Width of the final bracket on the outer value `t`.
    pub bisection_tol: f64,
    /// Accepted mismatch between the boundary gradient and its target.
    pub gradient_tol: f64,
    /// Outer radius of the fixed region on which consecutive solutions are compared.
    pub compact_radius: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            newton_tol: 1e-10,
            max_newton: 30,
            damping: 1.0,
            n_radial: 256,
            n_angular: 64,
            grading: 5.0,
            disk_grading: 3.0,
            schedule: vec![4.0, 8.0, 16.0, 32.0],
            bisection_tol: 1e-9,
            gradient_tol: 1e-8,
            compact_radius: 4.0,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| NilError::Config(format!("invalid value for {key}: {value:?}")))
}

/// Parses a comma separated list of reals.
pub fn parse_list(value: &str) -> Result<Vec<f64>> {
    value.split(',').filter(|v| !v.trim().is_empty()).map(|v| parse_num("list", v)).collect()
}

impl SolverConfig {
    /// Sets one field from its textual form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.trim() {
            "newton_tol" => self.newton_tol = parse_num(key, value)?,
            "max_newton" => self.max_newton = parse_num(key, value)?,
            "damping" => self.damping = parse_num(key, value)?,
            "n_radial" => self.n_radial = parse_num(key, value)?,
            "n_angular" => self.n_angular = parse_num(key, value)?,
            "grading" => self.grading = parse_num(key, value)?,
            "disk_grading" => self.disk_grading = parse_num(key, value)?,
            "schedule" => self.schedule = parse_list(value)?,
            "bisection_tol" => self.bisection_tol = parse_num(key, value)?,
            "gradient_tol" => self.gradient_tol = parse_num(key, value)?,
            "compact_radius" => self.compact_radius = parse_num(key, value)?,
            other => return Err(NilError::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Reads `key = value` lines over the defaults; `#` starts a comment.
    pub fn from_kv_str(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_kv_str(text)?;
        Ok(cfg)
    }

    pub fn apply_kv_str(&mut self, text: &str) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| NilError::Config(format!("line {}: expected key = value", n + 1)))?;
            self.set(key, value)?;
        }
        self.validate()
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_kv_str(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("newton_tol", self.newton_tol),
            ("bisection_tol", self.bisection_tol),
            ("gradient_tol", self.gradient_tol),
            ("compact_radius", self.compact_radius),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(NilError::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(NilError::Config(format!("damping must lie in (0, 1], got {}", self.damping)));
        }
        if self.max_newton == 0 {
            return Err(NilError::Config("max_newton must be at least 1".into()));
        }
        if self.n_radial < 4 || self.n_angular < 8 {
            return Err(NilError::Config(format!(
                "grid too small: n_radial = {} (min 4), n_angular = {} (min 8)",
                self.n_radial, self.n_angular
            )));
        }
        if self.schedule.is_empty() || self.schedule.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(NilError::Config("schedule must be nonempty and strictly increasing".into()));
        }
        Ok(())
    }

    /// The configuration in the same `key = value` form accepted by
    /// [`SolverConfig::from_kv_str`].
    pub fn to_kv_string(&self) -> String {
        let mut out = String::new();
        let schedule: Vec<String> = self.schedule.iter().map(|m| m.to_string()).collect();
        let _ = writeln!(out, "newton_tol = {:e}", self.newton_tol);
        let _ = writeln!(out, "max_newton = {}", self.max_newton);
        let _ = writeln!(out, "damping = {}", self.damping);
        let _ = writeln!(out, "n_radial = {}", self.n_radial);
        let _ = writeln!(out, "n_angular = {}", self.n_angular);
        let _ = writeln!(out, "grading = {}", self.grading);
        let _ = writeln!(out, "disk_grading = {}", self.disk_grading);
        let _ = writeln!(out, "schedule = {}", schedule.join(","));
        let _ = writeln!(out, "bisection_tol = {:e}", self.bisection_tol);
        let _ = writeln!(out, "gradient_tol = {:e}", self.gradient_tol);
        let _ = writeln!(out, "compact_radius = {}", self.compact_radius);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_text() {
        let mut cfg = SolverConfig::default();
        cfg.schedule = vec![2.0, 3.5];
        cfg.newton_tol = 3e-11;
        let back = SolverConfig::from_kv_str(&cfg.to_kv_string()).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn comments_and_blank_lines() {
        let cfg = SolverConfig::from_kv_str("# solver\n\nmax_newton = 12 # fewer\nschedule=4, 8\n").unwrap();
        assert_eq!(cfg.max_newton, 12);
        assert_eq!(cfg.schedule, vec![4.0, 8.0]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SolverConfig::from_kv_str("speed = 3").is_err());
        assert!(SolverConfig::from_kv_str("damping = 0").is_err());
        assert!(SolverConfig::from_kv_str("schedule = 8,4").is_err());
        assert!(SolverConfig::from_kv_str("newton_tol").is_err());
        assert!(SolverConfig::from_kv_str("n_radial = many").is_err());
    }
}
