//! Vector-valued 1-forms and frame fields on a chart, the finite-difference
//! exterior derivative, and the wedge conventions
//! `(a ∧ b)(v, w) = a(v) b(w) - a(w) b(v)` (action) and
//! `(a ∧ a)(v, w) = [a(v), a(w)]` (bracket, i.e. half of `[a, a]`).

use crate::algebra::AlmostLieAlgebra;
use crate::chart::ChartBox;
use crate::expr::{Expr, EvalError};
use crate::extension::{RepExtension, SplittingPair};
use crate::linalg::{rational_to_f64, RatMat, Rational};
use crate::rep::LinearRep;
use nalgebra::DMatrix;
use num::{One, Zero};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoframeError {
    #[error("point too close to the boundary for finite differences")]
    BoundaryProximity,
    #[error("coframe is singular at {point:?}")]
    SingularCoframe { point: Vec<f64> },
    #[error("frame is degenerate at {point:?} (|det| <= 1e-8)")]
    DegenerateFrame { point: Vec<f64> },
    #[error("dimension mismatch: {0}")]
    Dimensions(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A `target_dim`-vector-valued 1-form: row `i` holds the coefficients of
/// `dx^j` for target coordinate `i`.
#[derive(Debug, Clone)]
pub struct VForm1 {
    target_dim: usize,
    chart_dim: usize,
    comps: Vec<Expr>,
}

impl VForm1 {
    pub fn new(target_dim: usize, chart_dim: usize, comps: Vec<Expr>) -> Self {
        assert_eq!(comps.len(), target_dim * chart_dim, "component grid shape");
        VForm1 { target_dim, chart_dim, comps }
    }

    pub fn zero(target_dim: usize, chart_dim: usize) -> Self {
        VForm1 {
            target_dim,
            chart_dim,
            comps: (0..target_dim * chart_dim).map(|_| Expr::zero()).collect(),
        }
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn chart_dim(&self) -> usize {
        self.chart_dim
    }

    pub fn comp(&self, i: usize, j: usize) -> &Expr {
        &self.comps[i * self.chart_dim + j]
    }

    /// Stack rows of `self` on top of rows of `other` (same chart).
    pub fn stack(&self, other: &VForm1) -> VForm1 {
        assert_eq!(self.chart_dim, other.chart_dim);
        let mut comps = self.comps.clone();
        comps.extend(other.comps.iter().cloned());
        VForm1::new(self.target_dim + other.target_dim, self.chart_dim, comps)
    }

    /// Evaluate all components: column `j` is the value on `∂_j`.
    pub fn eval_at(&self, p: &[f64]) -> Result<DMatrix<f64>, EvalError> {
        let mut m = DMatrix::zeros(self.target_dim, self.chart_dim);
        for i in 0..self.target_dim {
            for j in 0..self.chart_dim {
                m[(i, j)] = self.comp(i, j).eval(p)?;
            }
        }
        Ok(m)
    }

    /// Finite-difference exterior derivative at `p`:
    /// `(dη)_ij = ∂_i η_j - ∂_j η_i` by central differences, error `O(h^2)`.
    pub fn fd_d(&self, boxx: &ChartBox, p: &[f64], h: f64) -> Result<TwoForm, CoframeError> {
        if !boxx.interior(p, h) {
            return Err(CoframeError::BoundaryProximity);
        }
        let n = self.chart_dim;
        if n != boxx.n() {
            return Err(CoframeError::Dimensions(format!(
                "form on {n} coordinates, chart has {}",
                boxx.n()
            )));
        }
        // partials[i] = d/dx_i of the full component matrix
        let mut partials = Vec::with_capacity(n);
        for i in 0..n {
            let mut plus = p.to_vec();
            plus[i] += h;
            let mut minus = p.to_vec();
            minus[i] -= h;
            let mp = self.eval_at(&plus)?;
            let mm = self.eval_at(&minus)?;
            partials.push((mp - mm) / (2.0 * h));
        }
        let mut out = TwoForm::zero(self.target_dim, n);
        for i in 0..n {
            for j in (i + 1)..n {
                for c in 0..self.target_dim {
                    out.set(i, j, c, partials[i][(c, j)] - partials[j][(c, i)]);
                }
            }
        }
        Ok(out)
    }
}

/// Pointwise values of an antisymmetric 2-form with values in `R^m`,
/// stored on coordinate pairs `i < j`.
#[derive(Debug, Clone)]
pub struct TwoForm {
    m: usize,
    n: usize,
    vals: Vec<f64>,
}

impl TwoForm {
    pub fn zero(m: usize, n: usize) -> Self {
        TwoForm { m, n, vals: vec![0.0; m * n * (n - 1) / 2] }
    }

    fn pair(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        // index of (i, j) in the lexicographic list of pairs
        i * self.n - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn set(&mut self, i: usize, j: usize, c: usize, v: f64) {
        let idx = self.pair(i, j) * self.m + c;
        self.vals[idx] = v;
    }

    /// Component `c` of the value on `(∂_i, ∂_j)`; antisymmetric in `(i, j)`.
    pub fn get(&self, i: usize, j: usize, c: usize) -> f64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.vals[self.pair(i, j) * self.m + c],
            std::cmp::Ordering::Equal => 0.0,
            std::cmp::Ordering::Greater => -self.vals[self.pair(j, i) * self.m + c],
        }
    }

    pub fn target_dim(&self) -> usize {
        self.m
    }

    pub fn chart_dim(&self) -> usize {
        self.n
    }

    pub fn add(&self, other: &TwoForm) -> TwoForm {
        assert_eq!((self.m, self.n), (other.m, other.n));
        TwoForm {
            m: self.m,
            n: self.n,
            vals: self.vals.iter().zip(&other.vals).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &TwoForm) -> TwoForm {
        assert_eq!((self.m, self.n), (other.m, other.n));
        TwoForm {
            m: self.m,
            n: self.n,
            vals: self.vals.iter().zip(&other.vals).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.vals.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// Max abs over components in `range` only.
    pub fn max_abs_components(&self, range: std::ops::Range<usize>) -> f64 {
        let mut acc: f64 = 0.0;
        for pair in 0..self.vals.len() / self.m {
            for c in range.clone() {
                acc = acc.max(self.vals[pair * self.m + c].abs());
            }
        }
        acc
    }

    /// Argmax `(i, j, c, value)`.
    pub fn worst(&self) -> (usize, usize, usize, f64) {
        let mut best = (0, 1.min(self.n - 1), 0, 0.0f64);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                for c in 0..self.m {
                    let v = self.get(i, j, c);
                    if v.abs() > best.3.abs() {
                        best = (i, j, c, v);
                    }
                }
            }
        }
        best
    }

    /// Evaluate on a pair of chart vectors.
    pub fn apply(&self, va: &[f64], vb: &[f64]) -> Vec<f64> {
        assert_eq!(va.len(), self.n);
        assert_eq!(vb.len(), self.n);
        let mut out = vec![0.0; self.m];
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let w = va[i] * vb[j] - va[j] * vb[i];
                if w == 0.0 {
                    continue;
                }
                for (c, o) in out.iter_mut().enumerate() {
                    *o += w * self.vals[self.pair(i, j) * self.m + c];
                }
            }
        }
        out
    }
}

/// Structure constants lowered to f64 for pointwise work.
#[derive(Debug, Clone)]
pub struct Sc64 {
    dim: usize,
    c: Vec<f64>,
}

impl Sc64 {
    pub fn new(alg: &AlmostLieAlgebra) -> Self {
        let dim = alg.dim();
        let mut c = vec![0.0; dim * dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    c[i * dim * dim + j * dim + k] = rational_to_f64(alg.d(i, j, k));
                }
            }
        }
        Sc64 { dim, c }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn d(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[i * self.dim * self.dim + j * self.dim + k]
    }

    pub fn bracket(&self, u: &[f64], v: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut out = vec![0.0; d];
        for j in 0..d {
            if u[j] == 0.0 {
                continue;
            }
            for k in 0..d {
                if v[k] == 0.0 {
                    continue;
                }
                let uv = u[j] * v[k];
                for (i, o) in out.iter_mut().enumerate() {
                    *o += self.c[i * d * d + j * d + k] * uv;
                }
            }
        }
        out
    }
}

/// Representation matrices lowered to f64.
#[derive(Debug, Clone)]
pub struct Rep64 {
    mats: Vec<DMatrix<f64>>,
    space_dim: usize,
}

impl Rep64 {
    pub fn new(rep: &LinearRep) -> Self {
        Rep64 {
            mats: rep.matrices().iter().map(RatMat::to_f64).collect(),
            space_dim: rep.space_dim(),
        }
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    /// Matrix of the action of the element with the given coefficients.
    pub fn apply(&self, coeffs: &[f64]) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.space_dim, self.space_dim);
        for (a, c) in coeffs.iter().enumerate() {
            if *c != 0.0 {
                m += &self.mats[a] * *c;
            }
        }
        m
    }
}

/// `(η ∧ η)(∂_i, ∂_j) = [η(∂_i), η(∂_j)]` pointwise: half of `[η, η]`.
pub fn wedge_bracket(vals: &DMatrix<f64>, sc: &Sc64) -> TwoForm {
    let (m, n) = (vals.nrows(), vals.ncols());
    assert_eq!(m, sc.dim(), "form target and algebra dimension");
    let cols: Vec<Vec<f64>> = (0..n).map(|j| vals.column(j).iter().copied().collect()).collect();
    let mut out = TwoForm::zero(m, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let b = sc.bracket(&cols[i], &cols[j]);
            for (c, v) in b.into_iter().enumerate() {
                out.set(i, j, c, v);
            }
        }
    }
    out
}

/// `(τ ∧ θ)(∂_i, ∂_j) = ρ(τ(∂_i)) θ(∂_j) - ρ(τ(∂_j)) θ(∂_i)` pointwise.
pub fn wedge_action(tau_vals: &DMatrix<f64>, theta_vals: &DMatrix<f64>, rep: &Rep64) -> TwoForm {
    let n = tau_vals.ncols();
    assert_eq!(theta_vals.ncols(), n);
    let m = theta_vals.nrows();
    assert_eq!(rep.space_dim(), m, "action target dimension");
    let acts: Vec<DMatrix<f64>> = (0..n)
        .map(|j| rep.apply(&tau_vals.column(j).iter().copied().collect::<Vec<_>>()))
        .collect();
    let mut out = TwoForm::zero(m, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = &acts[i] * theta_vals.column(j) - &acts[j] * theta_vals.column(i);
            for c in 0..m {
                out.set(i, j, c, v[c]);
            }
        }
    }
    out
}

/// Component-wise expression assembly of the lift `η = i∘τ + r∘θ`.
pub fn assemble_lift(
    tau: &VForm1,
    theta: &VForm1,
    ext: &RepExtension,
    sp: &SplittingPair,
) -> Result<VForm1, CoframeError> {
    if tau.target_dim() != ext.h_dim() || theta.target_dim() != ext.v_dim() {
        return Err(CoframeError::Dimensions(
            "lift assembly needs tau valued in h and theta valued in V".into(),
        ));
    }
    if tau.chart_dim() != theta.chart_dim() {
        return Err(CoframeError::Dimensions("tau and theta live on different charts".into()));
    }
    let n = tau.chart_dim();
    let z = ext.z_dim();
    let mut comps = Vec::with_capacity(z * n);
    for row in 0..z {
        for j in 0..n {
            let mut terms: Vec<Expr> = Vec::new();
            for a in 0..ext.h_dim() {
                if let Some(t) = scale_expr(ext.i().at(row, a), tau.comp(a, j)) {
                    terms.push(t);
                }
            }
            for b in 0..ext.v_dim() {
                if let Some(t) = scale_expr(sp.r.at(row, b), theta.comp(b, j)) {
                    terms.push(t);
                }
            }
            comps.push(sum_exprs(terms));
        }
    }
    Ok(VForm1::new(z, n, comps))
}

fn scale_expr(c: &Rational, e: &Expr) -> Option<Expr> {
    if c.is_zero() {
        return None;
    }
    if c.is_one() {
        return Some(e.clone());
    }
    if *c == -Rational::one() {
        return Some(Expr::Neg(Box::new(e.clone())));
    }
    let coeff = if c.denom().is_one() {
        Expr::num(rational_to_f64(c))
    } else {
        Expr::Div(
            Box::new(Expr::num(rational_to_f64(&Rational::from_integer(c.numer().clone())))),
            Box::new(Expr::num(rational_to_f64(&Rational::from_integer(c.denom().clone())))),
        )
    };
    Some(Expr::Mul(Box::new(coeff), Box::new(e.clone())))
}

fn sum_exprs(terms: Vec<Expr>) -> Expr {
    let mut it = terms.into_iter();
    match it.next() {
        None => Expr::zero(),
        Some(first) => it.fold(first, |acc, t| Expr::Add(Box::new(acc), Box::new(t))),
    }
}

/// `n` vector fields on an `n`-dimensional chart.
#[derive(Debug, Clone)]
pub struct FrameField {
    n: usize,
    /// field `a`, component `i`: `fields[a * n + i]`
    fields: Vec<Expr>,
}

impl FrameField {
    pub fn new(n: usize, fields: Vec<Expr>) -> Self {
        assert_eq!(fields.len(), n * n, "a frame is n fields with n components");
        FrameField { n, fields }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn comp(&self, field: usize, i: usize) -> &Expr {
        &self.fields[field * self.n + i]
    }

    /// Value of field `a` at `p`.
    pub fn eval_field(&self, a: usize, p: &[f64]) -> Result<Vec<f64>, EvalError> {
        (0..self.n).map(|i| self.comp(a, i).eval(p)).collect()
    }

    /// Matrix whose column `a` is field `a` at `p`.
    pub fn eval_matrix(&self, p: &[f64]) -> Result<DMatrix<f64>, EvalError> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for a in 0..self.n {
            for i in 0..self.n {
                m[(i, a)] = self.comp(a, i).eval(p)?;
            }
        }
        Ok(m)
    }

    /// Check pointwise independence on the grid (`|det| > 1e-8`).
    pub fn check_nondegenerate(&self, boxx: &ChartBox) -> Result<(), CoframeError> {
        for p in boxx.grid_points() {
            let m = self.eval_matrix(&p)?;
            if m.determinant().abs() <= 1e-8 {
                return Err(CoframeError::DegenerateFrame { point: p });
            }
        }
        Ok(())
    }

    /// `[V_a, V_b](p) ≈ DV_b(p) V_a(p) - DV_a(p) V_b(p)` by central
    /// differences; the full table over `a < b`.
    pub fn lie_brackets(
        &self,
        boxx: &ChartBox,
        p: &[f64],
        h: f64,
    ) -> Result<Vec<Vec<f64>>, CoframeError> {
        if !boxx.interior(p, h) {
            return Err(CoframeError::BoundaryProximity);
        }
        // Jacobians DV_a
        let mut jac = Vec::with_capacity(self.n);
        for a in 0..self.n {
            let mut m = DMatrix::zeros(self.n, self.n);
            for j in 0..self.n {
                let mut plus = p.to_vec();
                plus[j] += h;
                let mut minus = p.to_vec();
                minus[j] -= h;
                let vp = self.eval_field(a, &plus)?;
                let vm = self.eval_field(a, &minus)?;
                for i in 0..self.n {
                    m[(i, j)] = (vp[i] - vm[i]) / (2.0 * h);
                }
            }
            jac.push(m);
        }
        let vals: Vec<DMatrix<f64>> = (0..self.n)
            .map(|a| {
                let v = self.eval_field(a, p).unwrap();
                DMatrix::from_column_slice(self.n, 1, &v)
            })
            .collect();
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                let br = &jac[b] * &vals[a] - &jac[a] * &vals[b];
                out.push(br.column(0).iter().copied().collect());
            }
        }
        Ok(out)
    }
}

/// Index of the pair `(a, b)`, `a < b`, in the frame bracket table.
pub fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}
