use super::banded::BandedMatrix;
use super::field::ScalarField;
use super::grid::AnnulusGrid;
use crate::surface::WarpFunction;

/// Position of angle index `j` in the interleaved ordering
/// `0, 1, M−1, 2, M−2, …`, which keeps periodic neighbours within distance 2.
fn angular_pos(j: usize, m: usize) -> usize {
    if j == 0 {
        0
    } else if 2 * j <= m {
        2 * j - 1
    } else {
        2 * (m - j)
    }
}

/// Numbering of the unknowns of a Dirichlet problem on a grid: all rows
/// strictly inside the grid, plus the polar origin of a disk as one unknown.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    n_r: usize,
    m: usize,
    disk: bool,
    pos: Vec<usize>,
}

impl Layout {
    pub(crate) fn new(grid: &AnnulusGrid) -> Self {
        let m = grid.n_theta();
        Self { n_r: grid.n_r(), m, disk: grid.has_origin(), pos: (0..m).map(|j| angular_pos(j, m)).collect() }
    }

    pub(crate) fn len(&self) -> usize {
        (self.n_r - 2) * self.m + usize::from(self.disk)
    }

    pub(crate) fn bandwidth(&self) -> usize {
        self.m + 2
    }

    #[inline]
    pub(crate) fn index(&self, i: usize, j: usize) -> Option<usize> {
        if i + 1 >= self.n_r {
            None
        } else if i == 0 {
            self.disk.then_some(0)
        } else {
            Some(usize::from(self.disk) + (i - 1) * self.m + self.pos[j])
        }
    }
}

/// Metric data of the conservative five-point-plus-corners discretization.
#[derive(Debug, Clone)]
pub(crate) struct Stencil {
    d_theta: f64,
    r: Vec<f64>,
    g: Vec<f64>,
    g_half: Vec<f64>,
    dr: Vec<f64>,
    h: Vec<f64>,
    scale: Vec<f64>,
    center_scale: f64,
}

impl Stencil {
    pub(crate) fn new(grid: &AnnulusGrid) -> Self {
        let w = WarpFunction;
        let r = grid.radii().to_vec();
        let n = r.len();
        let d_theta = grid.d_theta();
        let g: Vec<f64> = r.iter().map(|&x| w.g(x)).collect();
        let g_half = r.windows(2).map(|p| w.g(0.5 * (p[0] + p[1]))).collect();
        let dr = r.windows(2).map(|p| p[1] - p[0]).collect();
        let mut h = vec![0.0; n];
        for i in 1..n - 1 {
            h[i] = 0.5 * (r[i + 1] - r[i - 1]);
        }
        let scale = (0..n).map(|i| if i > 0 && i + 1 < n { 1.0 / (g[i] * h[i] * d_theta) } else { 0.0 }).collect();
        // Area of the geodesic disk of radius a = r₁/2 around the origin.
        let a = 0.5 * r[1];
        let area = 2.0 * std::f64::consts::PI * (8.0 / 3.0) * ((1.0 + a * a / 8.0).powf(1.5) - 1.0);
        Self { d_theta, r, g, g_half, dr, h, scale, center_scale: 1.0 / area }
    }

    #[inline]
    fn cell_scale(&self, i: usize) -> f64 {
        if i == 0 {
            self.center_scale
        } else {
            self.scale[i]
        }
    }
}

/// `q = p/√(1+p²+s²)` and its partial derivatives.
#[inline]
fn flux(p: f64, s: f64) -> (f64, f64, f64) {
    let w2 = 1.0 + p * p + s * s;
    let w = w2.sqrt();
    let w3 = w2 * w;
    (p / w, (1.0 + s * s) / w3, -p * s / w3)
}

/// Intrinsic residual at every unknown, and optionally its Jacobian.
pub(crate) fn assemble(st: &Stencil, layout: &Layout, u: &ScalarField, mut jac: Option<&mut BandedMatrix>) -> Vec<f64> {
    let n_r = u.n_r();
    let m = u.n_theta();
    let mut res = vec![0.0; layout.len()];
    if let Some(j) = jac.as_deref_mut() {
        j.clear();
    }
    let mut push = |cell: (usize, usize),
                    sign: f64,
                    value: f64,
                    nodes: &[(usize, usize, f64)],
                    jac: &mut Option<&mut BandedMatrix>| {
        let Some(row) = layout.index(cell.0, cell.1) else { return };
        let k = sign * st.cell_scale(cell.0);
        res[row] += k * value;
        if let Some(mat) = jac.as_deref_mut() {
            for &(i, j, d) in nodes {
                if let Some(col) = layout.index(i, j) {
                    mat.add(row, col, k * d);
                }
            }
        }
    };

    for i in 0..n_r - 1 {
        let big_g = st.g_half[i];
        let weight = st.d_theta * big_g;
        let inv_dr = 1.0 / st.dr[i];
        let cs = 1.0 / (4.0 * st.d_theta * big_g);
        for j in 0..m {
            let jp = (j + 1) % m;
            let jm = (j + m - 1) % m;
            let p = (u.get(i + 1, j) - u.get(i, j)) * inv_dr;
            let s = cs * (u.get(i, jp) - u.get(i, jm) + u.get(i + 1, jp) - u.get(i + 1, jm));
            let (q, qp, qs) = flux(p, s);
            let (dp, ds) = (weight * qp * inv_dr, weight * qs * cs);
            let nodes = [(i + 1, j, dp), (i, j, -dp), (i, jp, ds), (i, jm, -ds), (i + 1, jp, ds), (i + 1, jm, -ds)];
            push((i, j), 1.0, weight * q, &nodes, &mut jac);
            push((i + 1, j), -1.0, weight * q, &nodes, &mut jac);
        }
    }

    for i in 1..n_r - 1 {
        let weight = st.h[i];
        let inv_a = 1.0 / (st.g[i] * st.d_theta);
        let cr = 1.0 / (2.0 * (st.r[i + 1] - st.r[i - 1]));
        for j in 0..m {
            let jp = (j + 1) % m;
            let p = (u.get(i, jp) - u.get(i, j)) * inv_a;
            let s = cr * (u.get(i + 1, j) - u.get(i - 1, j) + u.get(i + 1, jp) - u.get(i - 1, jp));
            let (q, qp, qs) = flux(p, s);
            let (dp, ds) = (weight * qp * inv_a, weight * qs * cr);
            let nodes = [(i, jp, dp), (i, j, -dp), (i + 1, j, ds), (i - 1, j, -ds), (i + 1, jp, ds), (i - 1, jp, -ds)];
            push((i, j), 1.0, weight * q, &nodes, &mut jac);
            push((i, jp), -1.0, weight * q, &nodes, &mut jac);
        }
    }
    res
}

/// Spreads a vector over the unknowns back onto the grid; Dirichlet rows are 0.
pub(crate) fn scatter(layout: &Layout, values: &[f64], n_r: usize, n_theta: usize) -> Vec<f64> {
    let mut out = vec![0.0; n_r * n_theta];
    for i in 0..n_r {
        for j in 0..n_theta {
            if let Some(k) = layout.index(i, j) {
                out[i * n_theta + j] = values[k];
            }
        }
    }
    out
}

/// Discrete minimal-surface operator
/// `(1/g)[∂_r(g u_r/W) + ∂_θ(u_θ/(g W))]`, `W = √(1 + u_r² + u_θ²/g²)`,
/// in flux-balance form. Boundary rows carry no equation and are set to 0;
/// on a disk the origin row holds the residual of the central cell.
pub fn mse_operator(u: &ScalarField, grid: &AnnulusGrid) -> ScalarField {
    assert!(u.matches(grid), "field does not match grid");
    let layout = Layout::new(grid);
    let st = Stencil::new(grid);
    let res = assemble(&st, &layout, u, None);
    let values = scatter(&layout, &res, grid.n_r(), grid.n_theta());
    ScalarField::from_values(grid, values).expect("sizes agree")
}
