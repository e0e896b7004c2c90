//! Coordinate boxes and evaluation grids.

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChartError {
    #[error("axis {axis}: lower bound {lo} is not below upper bound {hi}")]
    BadBounds { axis: usize, lo: f64, hi: f64 },
    #[error("grid must have at least 3 points per axis, got {0}")]
    GridTooCoarse(usize),
    #[error("fd step {h} too large for axis extent {extent} (must be < extent/10)")]
    StepTooLarge { h: f64, extent: f64 },
    #[error("coords/bounds length mismatch")]
    Lengths,
}

pub const DEFAULT_GRID: usize = 9;
pub const DEFAULT_FD_STEP: f64 = 1e-4;
pub const DEFAULT_TOL: f64 = 1e-6;

/// A coordinate box with grid and finite-difference parameters.
///
/// The evaluation grid keeps a margin of `2 * fd_step` from the boundary so
/// central differences at grid points stay inside the box.
#[derive(Debug, Clone)]
pub struct ChartBox {
    coords: Vec<String>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    grid: usize,
    fd_step: f64,
    tol: f64,
}

impl ChartBox {
    pub fn new(
        coords: Vec<String>,
        lo: Vec<f64>,
        hi: Vec<f64>,
        grid: usize,
        fd_step: f64,
        tol: f64,
    ) -> Result<Self, ChartError> {
        if coords.len() != lo.len() || lo.len() != hi.len() {
            return Err(ChartError::Lengths);
        }
        for axis in 0..lo.len() {
            if !(lo[axis] < hi[axis]) {
                return Err(ChartError::BadBounds { axis, lo: lo[axis], hi: hi[axis] });
            }
        }
        if grid < 3 {
            return Err(ChartError::GridTooCoarse(grid));
        }
        let min_extent = lo
            .iter()
            .zip(&hi)
            .map(|(a, b)| b - a)
            .fold(f64::INFINITY, f64::min);
        if fd_step >= min_extent / 10.0 {
            return Err(ChartError::StepTooLarge { h: fd_step, extent: min_extent });
        }
        Ok(ChartBox { coords, lo, hi, grid, fd_step, tol })
    }

    /// Cube `[-1, 1]^n` with default grid parameters.
    pub fn unit(coords: Vec<String>) -> Self {
        let n = coords.len();
        ChartBox::new(coords, vec![-1.0; n], vec![1.0; n], DEFAULT_GRID, DEFAULT_FD_STEP, DEFAULT_TOL)
            .expect("unit box is valid")
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn fd_step(&self) -> f64 {
        self.fd_step
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn with_grid(mut self, grid: usize) -> Self {
        self.grid = grid.max(3);
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// True when `p` is at least `margin` from every face.
    pub fn interior(&self, p: &[f64], margin: f64) -> bool {
        p.len() == self.n()
            && p.iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(x, (a, b))| *x >= a + margin && *x <= b - margin)
    }

    /// Deterministic row-major grid over the margin-shrunk box.
    pub fn grid_points(&self) -> Vec<Vec<f64>> {
        let margin = 2.0 * self.fd_step;
        let axes: Vec<Vec<f64>> = (0..self.n())
            .map(|i| {
                let (a, b) = (self.lo[i] + margin, self.hi[i] - margin);
                (0..self.grid)
                    .map(|k| a + (b - a) * k as f64 / (self.grid - 1) as f64)
                    .collect()
            })
            .collect();
        let total = self.grid.pow(self.n() as u32);
        let mut out = Vec::with_capacity(total);
        for mut idx in 0..total {
            let mut p = vec![0.0; self.n()];
            for axis in (0..self.n()).rev() {
                p[axis] = axes[axis][idx % self.grid];
                idx /= self.grid;
            }
            out.push(p);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn validation() {
        assert!(matches!(
            ChartBox::new(names(1), vec![1.0], vec![0.0], 9, 1e-4, 1e-6),
            Err(ChartError::BadBounds { .. })
        ));
        assert!(matches!(
            ChartBox::new(names(1), vec![0.0], vec![1.0], 2, 1e-4, 1e-6),
            Err(ChartError::GridTooCoarse(2))
        ));
        assert!(matches!(
            ChartBox::new(names(1), vec![0.0], vec![1.0], 9, 0.2, 1e-6),
            Err(ChartError::StepTooLarge { .. })
        ));
    }

    #[test]
    fn grid_respects_margin_and_count() {
        let b = ChartBox::unit(names(2));
        let pts = b.grid_points();
        assert_eq!(pts.len(), 81);
        for p in &pts {
            assert!(b.interior(p, b.fd_step()));
            assert!(b.interior(p, 2.0 * b.fd_step() - 1e-12));
        }
        // deterministic ordering
        assert_eq!(b.grid_points(), pts);
    }
}
