//! Pfaffian group data `(g, V, rho, l)`: a Lie algebra with a representation
//! and an equivariant coefficient map, its symbol ideal `h = ker(l)`, the
//! subspace `W = im(l)` and the infinitesimal reduction tower.

use crate::algebra::AlmostLieAlgebra;
use crate::linalg::{RatMat, Rational, Subspace};
use crate::rep::LinearRep;
use num::Zero;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PfaffianError {
    #[error("the underlying algebra must be Lie (jacobiator nonzero at basis triple {0:?})")]
    NotLie((usize, usize, usize)),
    #[error("coefficient map is not equivariant at basis pair (alpha={alpha}, beta={beta})")]
    EquivarianceViolated { alpha: usize, beta: usize },
    #[error("dimension mismatch in Pfaffian data: {0}")]
    Dimensions(String),
    #[error("symbol is not an ideal")]
    SymbolNotIdeal,
}

/// Infinitesimal Pfaffian group: `l: g -> V` equivariant, `g` Lie.
#[derive(Debug, Clone)]
pub struct PfaffianGroupData {
    g: AlmostLieAlgebra,
    v_dim: usize,
    rho: LinearRep,
    l: RatMat,
}

impl PfaffianGroupData {
    /// Validates: `g` Lie, shapes, equivariance `l ∘ ad_a = rho(a) ∘ l` for
    /// all basis `a`, and that `ker(l)` is an ideal of `g`.
    pub fn new(
        g: AlmostLieAlgebra,
        v_dim: usize,
        rho: LinearRep,
        l: RatMat,
    ) -> Result<Self, PfaffianError> {
        if let Some(w) = g.jacobi_witness() {
            return Err(PfaffianError::NotLie(w));
        }
        if rho.space_dim() != v_dim || rho.algebra().dim() != g.dim() {
            return Err(PfaffianError::Dimensions(format!(
                "rho acts on dim {} (want {}), algebra dim {} (want {})",
                rho.space_dim(),
                v_dim,
                rho.algebra().dim(),
                g.dim()
            )));
        }
        if l.rows() != v_dim || l.cols() != g.dim() {
            return Err(PfaffianError::Dimensions(format!(
                "l is {}x{}, want {}x{}",
                l.rows(),
                l.cols(),
                v_dim,
                g.dim()
            )));
        }
        let ad = g.adjoint_rep();
        for alpha in 0..g.dim() {
            let lhs = l.mul(ad.matrix(alpha));
            let rhs = rho.matrix(alpha).mul(&l);
            if lhs != rhs {
                // find the offending second index for the report
                let beta = (0..g.dim())
                    .find(|&b| lhs.col(b) != rhs.col(b))
                    .unwrap_or(0);
                return Err(PfaffianError::EquivarianceViolated { alpha, beta });
            }
        }
        let data = PfaffianGroupData { g, v_dim, rho, l };
        if !data.g.is_ideal(&data.symbol_ideal()).unwrap_or(false) {
            return Err(PfaffianError::SymbolNotIdeal);
        }
        Ok(data)
    }

    pub fn algebra(&self) -> &AlmostLieAlgebra {
        &self.g
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn rho(&self) -> &LinearRep {
        &self.rho
    }

    pub fn l(&self) -> &RatMat {
        &self.l
    }

    /// Symbol `h = ker(l)`; an ideal of `g` by construction-time validation.
    pub fn symbol_ideal(&self) -> Subspace {
        Subspace::from_span(self.g.dim(), &self.l.kernel_basis())
    }

    /// `W = im(l)` together with the induced isomorphism `g/h -> W`.
    ///
    /// The isomorphism is returned as the `v_dim x (dim g - dim h)` matrix of
    /// `l` restricted to the standard complement of `h`; its columns are a
    /// basis of `W`.
    pub fn image_w(&self) -> (Subspace, RatMat) {
        let w = Subspace::from_span(self.v_dim, &self.l.image_basis());
        let h = self.symbol_ideal();
        let comp = h.complement();
        assert_eq!(w.dim(), self.g.dim() - h.dim(), "rank-nullity");
        let cols: Vec<Vec<Rational>> =
            comp.iter().map(|c| self.l.mul_vec(c).expect("shape checked")).collect();
        let iso = if cols.is_empty() { RatMat::zeros(self.v_dim, 0) } else { RatMat::from_cols(&cols) };
        assert_eq!(iso.rank(), w.dim(), "induced map g/h -> W must be an isomorphism");
        (w, iso)
    }

    /// Infinitesimal reduction tower.
    pub fn reduction_tower(&self) -> Tower {
        let mut stages = Vec::new();
        let (w0, _) = self.image_w();
        let mut g = self.g.clone();
        let mut rho = self.rho.clone();
        let mut v_dim = self.v_dim;
        let mut w = w0;
        loop {
            let k = rep_kernel_mod_w(&g, &rho, &w);
            let k_dim = k.dim();
            stages.push(TowerStage {
                g: g.clone(),
                v_dim,
                rho: rho.clone(),
                w_dim: w.dim(),
                kernel_dim: k_dim,
            });
            if k_dim == 0 {
                break;
            }
            assert!(g.is_ideal(&k).unwrap(), "representation kernel must be an ideal");
            // next stage: g/k acting on V/W; the image of W in V/W is zero
            let g_comp = k.complement();
            let next_g = g.quotient(&k).expect("kernel is an ideal");
            let v_comp = w.complement();
            let next_v = v_comp.len();
            // matrix of the projection V -> V/W in the complement basis
            let mut cols = v_comp.clone();
            cols.extend(w.basis().iter().cloned());
            let basis_mat = RatMat::from_cols(&cols);
            let proj = |vec: &[Rational]| -> Vec<Rational> {
                let coords = basis_mat.solve(vec).expect("basis of V");
                coords[..next_v].to_vec()
            };
            let mats: Vec<RatMat> = g_comp
                .iter()
                .map(|rep_alpha| {
                    let m = rho.apply(rep_alpha);
                    let cols: Vec<Vec<Rational>> = v_comp
                        .iter()
                        .map(|vc| proj(&m.mul_vec(vc).expect("shape")))
                        .collect();
                    if cols.is_empty() {
                        RatMat::zeros(next_v, next_v)
                    } else {
                        RatMat::from_cols(&cols)
                    }
                })
                .collect();
            rho = LinearRep::new(next_g.clone(), next_v, mats).expect("quotient rep shapes");
            g = next_g;
            v_dim = next_v;
            w = Subspace::zero(next_v);
        }
        let order = stages.len();
        Tower { stages, order }
    }
}

/// Kernel of `g -> gl(V/W)`: elements whose action maps all of `V` into `W`.
fn rep_kernel_mod_w(g: &AlmostLieAlgebra, rho: &LinearRep, w: &Subspace) -> Subspace {
    let v_dim = rho.space_dim();
    let w_dim = w.dim();
    // coordinates of rho(e_a) e_b modulo W: stack the V/W components
    let v_comp = w.complement();
    let mut cols = v_comp.clone();
    cols.extend(w.basis().iter().cloned());
    let basis_mat = if cols.is_empty() { RatMat::zeros(v_dim, 0) } else { RatMat::from_cols(&cols) };
    let quot_dim = v_dim - w_dim;
    let mut rows: Vec<Vec<Rational>> = vec![Vec::with_capacity(g.dim()); quot_dim * v_dim];
    for a in 0..g.dim() {
        let m = rho.matrix(a);
        for b in 0..v_dim {
            let col = m.col(b);
            let coords = if v_dim == 0 {
                Vec::new()
            } else {
                basis_mat.solve(&col).expect("full basis of V")
            };
            for i in 0..quot_dim {
                rows[b * quot_dim + i].push(coords[i].clone());
            }
        }
    }
    let mat = if rows.is_empty() {
        RatMat::zeros(0, g.dim())
    } else {
        RatMat::from_rows(&rows)
    };
    Subspace::from_span(g.dim(), &mat.kernel_basis())
}

#[derive(Debug, Clone)]
pub struct TowerStage {
    pub g: AlmostLieAlgebra,
    pub v_dim: usize,
    pub rho: LinearRep,
    pub w_dim: usize,
    pub kernel_dim: usize,
}

/// Result of `reduction_tower`: the stages and the order of the Cartan
/// bundle the data models (number of reduction steps plus one).
#[derive(Debug, Clone)]
pub struct Tower {
    pub stages: Vec<TowerStage>,
    pub order: usize,
}

/// Check `l = 0` shortcut used by G-structure data.
pub fn is_zero_map(l: &RatMat) -> bool {
    (0..l.rows()).all(|i| (0..l.cols()).all(|j| l.at(i, j).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, gl, gl_matrices, so, so_matrices, standard_rep};

    #[test]
    fn g_structure_data_symbol_is_everything_and_order_one() {
        // l = 0, rho faithful: h = g, order 1
        let g = so(3);
        let rho = standard_rep(&g, so_matrices(3));
        let pf = PfaffianGroupData::new(g.clone(), 3, rho, RatMat::zeros(3, 3)).unwrap();
        assert_eq!(pf.symbol_ideal().dim(), 3);
        let (w, _) = pf.image_w();
        assert_eq!(w.dim(), 0);
        let tower = pf.reduction_tower();
        assert_eq!(tower.order, 1);
        assert_eq!(tower.stages.len(), 1);
    }

    #[test]
    fn euclidean_model_cartan_geometry_data() {
        // g = so(3), V = so(3) + R^3, l = inclusion into the first block,
        // rho = adjoint on the block, standard on R^3. W = so(3)-block and the
        // quotient rep on V/W is the (faithful) standard one: order 1.
        let g = so(3);
        let ad = g.adjoint_rep();
        let std_mats = so_matrices(3);
        let mats: Vec<RatMat> = (0..3)
            .map(|a| {
                RatMat::from_fn(6, 6, |i, j| match (i < 3, j < 3) {
                    (true, true) => ad.matrix(a).at(i, j).clone(),
                    (false, false) => std_mats[a].at(i - 3, j - 3).clone(),
                    _ => Rational::zero(),
                })
            })
            .collect();
        let rho = LinearRep::new(g.clone(), 6, mats).unwrap();
        let l = RatMat::from_fn(6, 3, |i, j| {
            if i == j { num::One::one() } else { Rational::zero() }
        });
        let pf = PfaffianGroupData::new(g, 6, rho, l).unwrap();
        assert_eq!(pf.symbol_ideal().dim(), 0);
        let (w, iso) = pf.image_w();
        assert_eq!(w.dim(), 3);
        assert_eq!(iso.rank(), 3);
        let tower = pf.reduction_tower();
        assert_eq!(tower.order, 1);
    }

    #[test]
    fn equivariance_violation_is_reported() {
        // l = identity on gl(2) with the standard rep on R^2 has shape
        // mismatch; use so(2) (abelian, dim 1) with a wrong-size check instead:
        // a nonequivariant l on gl(2): l: gl(2) -> R^4 identity but rho trivial.
        let g = gl(2);
        let rho = LinearRep::zero(g.clone(), 4);
        let err = PfaffianGroupData::new(g, 4, rho, RatMat::identity(4)).unwrap_err();
        assert!(matches!(err, PfaffianError::EquivarianceViolated { .. }));
    }

    #[test]
    fn almost_lie_g_is_rejected() {
        use crate::algebra::{heisenberg, semidirect, sp_k1, sp_k1_matrices};
        let s = sp_k1(1);
        let z = semidirect(&s, &standard_rep(&s, sp_k1_matrices(1)), &heisenberg(1)).unwrap();
        let rho = LinearRep::zero(z.clone(), 2);
        assert!(matches!(
            PfaffianGroupData::new(z, 2, rho, RatMat::zeros(2, 9)),
            Err(PfaffianError::NotLie(_))
        ));
    }

    #[test]
    fn faithful_quotient_rep_gives_order_one() {
        let g = gl(2);
        let rho = standard_rep(&g, gl_matrices(2));
        let pf = PfaffianGroupData::new(g, 2, rho, RatMat::zeros(2, 4)).unwrap();
        assert_eq!(pf.reduction_tower().order, 1);
    }

    #[test]
    fn zero_rep_kernel_is_everything() {
        let g = abelian(2);
        let rho = LinearRep::zero(g.clone(), 2);
        let pf = PfaffianGroupData::new(g, 2, rho, RatMat::zeros(2, 2)).unwrap();
        // kernel of the trivial rep is all of g; next stage has g = 0
        let tower = pf.reduction_tower();
        assert_eq!(tower.order, 2);
        assert_eq!(tower.stages.last().unwrap().g.dim(), 0);
    }
}
