/// Cubic spline through `(x_i, y_i)` with zero second derivative at both ends.
#[derive(Debug, Clone)]
pub struct NaturalSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

/// Solves a tridiagonal system in place (Thomas algorithm); `a` below, `b` on,
/// `c` above the diagonal.
fn tridiagonal(a: &[f64], b: &[f64], c: &[f64], d: &mut [f64]) {
    let n = d.len();
    let mut cp = vec![0.0; n];
    let mut denom = b[0];
    cp[0] = c[0] / denom;
    d[0] /= denom;
    for i in 1..n {
        denom = b[i] - a[i] * cp[i - 1];
        cp[i] = c[i] / denom;
        d[i] = (d[i] - a[i] * d[i - 1]) / denom;
    }
    for i in (0..n - 1).rev() {
        d[i] -= cp[i] * d[i + 1];
    }
}

fn eval_piece(x0: f64, x1: f64, y0: f64, y1: f64, m0: f64, m1: f64, x: f64) -> f64 {
    let h = x1 - x0;
    let a = (x1 - x) / h;
    let b = (x - x0) / h;
    a * y0 + b * y1 + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0
}

impl NaturalSpline {
    /// `x` strictly increasing with at least three nodes.
    pub fn new(x: &[f64], y: &[f64]) -> Self {
        let n = x.len();
        assert!(n >= 3 && y.len() == n, "spline needs at least three matching nodes");
        let k = n - 2;
        let (mut a, mut b, mut c, mut d) = (vec![0.0; k], vec![0.0; k], vec![0.0; k], vec![0.0; k]);
        for r in 0..k {
            let i = r + 1;
            let (h0, h1) = (x[i] - x[i - 1], x[i + 1] - x[i]);
            a[r] = h0 / 6.0;
            b[r] = (h0 + h1) / 3.0;
            c[r] = h1 / 6.0;
            d[r] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
        }
        tridiagonal(&a, &b, &c, &mut d);
        let mut m = vec![0.0; n];
        m[1..n - 1].copy_from_slice(&d);
        Self { x: x.to_vec(), y: y.to_vec(), m }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.x.len();
        let k = self.x.partition_point(|&v| v <= x).clamp(1, n - 1) - 1;
        eval_piece(self.x[k], self.x[k + 1], self.y[k], self.y[k + 1], self.m[k], self.m[k + 1], x)
    }
}

/// Periodic cubic spline through equally spaced samples `y_j = f(2πj/n)`.
#[derive(Debug, Clone)]
pub struct PeriodicSpline {
    y: Vec<f64>,
    m: Vec<f64>,
    h: f64,
}

impl PeriodicSpline {
    pub fn new(y: &[f64]) -> Self {
        let n = y.len();
        assert!(n >= 3, "periodic spline needs at least three samples");
        let h = 2.0 * std::f64::consts::PI / n as f64;
        // Cyclic system (h/6)(m_{j−1} + 4m_j + m_{j+1}) = (y_{j+1} − 2y_j + y_{j−1})/h,
        // solved by Sherman–Morrison on top of the tridiagonal solver.
        let rhs: Vec<f64> = (0..n).map(|j| (y[(j + 1) % n] - 2.0 * y[j] + y[(j + n - 1) % n]) / h).collect();
        let (alpha, beta) = (h / 6.0, h / 6.0);
        let gamma = -4.0 * h / 6.0;
        let a = vec![h / 6.0; n];
        let c = vec![h / 6.0; n];
        let mut b = vec![4.0 * h / 6.0; n];
        b[0] -= gamma;
        b[n - 1] -= alpha * beta / gamma;
        let mut x = rhs;
        tridiagonal(&a, &b, &c, &mut x);
        let mut z = vec![0.0; n];
        z[0] = gamma;
        z[n - 1] = alpha;
        tridiagonal(&a, &b, &c, &mut z);
        let fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
        let m = x.iter().zip(&z).map(|(xi, zi)| xi - fact * zi).collect();
        Self { y: y.to_vec(), m, h }
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let n = self.y.len();
        let t = theta.rem_euclid(2.0 * std::f64::consts::PI) / self.h;
        let k = (t.floor() as usize).min(n - 1);
        let k1 = (k + 1) % n;
        let x0 = k as f64 * self.h;
        eval_piece(x0, x0 + self.h, self.y[k], self.y[k1], self.m[k], self.m[k1], t * self.h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn natural_spline_interpolates_and_converges() {
        let x: Vec<f64> = (0..=40).map(|i| 1.0 + 0.1 * i as f64 + 0.002 * (i * i) as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| v.sin()).collect();
        let s = NaturalSpline::new(&x, &y);
        for (xi, yi) in x.iter().zip(&y) {
            assert!((s.eval(*xi) - yi).abs() < 1e-14);
        }
        assert!((s.eval(3.3) - 3.3f64.sin()).abs() < 1e-5);
        let line = NaturalSpline::new(&x, &x.iter().map(|v| 2.0 * v - 1.0).collect::<Vec<_>>());
        assert!((line.eval(2.71) - 4.42).abs() < 1e-13);
    }

    #[test]
    fn periodic_spline_reproduces_trig() {
        let n = 64;
        let y: Vec<f64> = (0..n).map(|j| (2.0 * PI * j as f64 / n as f64).cos()).collect();
        let s = PeriodicSpline::new(&y);
        for theta in [0.0, 0.3, 2.0, 6.2, -0.4, 7.0] {
            assert!((s.eval(theta) - f64::cos(theta)).abs() < 1e-6, "{theta}");
        }
        let flat = PeriodicSpline::new(&[2.0; 8]);
        assert!((flat.eval(1.234) - 2.0).abs() < 1e-14);
    }
}
