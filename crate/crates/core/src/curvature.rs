//! Curvature, torsion, flatness and integrability verdicts on a chart.
//!
//! Conventions (fixed project-wide): structure equations
//! `dθ = T(θ∧θ) - τ∧θ`, `dτ = R(θ∧θ) - τ∧τ`; curvature
//! `Ω^η = dη + ½[η,η]`; the flatness test for a model `h ⋉ k` is `R = 0`
//! and `T^i_ab = -d^i_ab` against the structure constants of `k`. Verdict
//! norms are max over grid points of the max-abs component in the declared
//! basis.

use crate::algebra::{semidirect, AlmostLieAlgebra};
use crate::chart::ChartBox;
use crate::form::{
    pair_index, wedge_action, wedge_bracket, CoframeError, FrameField, Rep64, Sc64, TwoForm, VForm1,
};
use crate::jet::SecondOrderModel;
use crate::rep::LinearRep;
use nalgebra::DMatrix;

/// Curvature sweep summary for `Ω = dη + ½[η,η]`.
#[derive(Debug, Clone)]
pub struct CurvatureReport {
    pub max_norm: f64,
    pub worst_point: Vec<f64>,
    /// coordinate pair and target component at the worst value
    pub worst_entry: (usize, usize, usize),
    /// max norms of the `h`- and `k`-components when the target splits
    pub split_max: Option<(f64, f64)>,
    pub flat: bool,
    pub tol: f64,
    pub points: usize,
}

/// `Ω = fd_d(η) + ½[η,η]_alg` on every grid point; flat iff the max norm
/// stays within the chart tolerance. `split_at` separates the target into an
/// `h`-block (first `split_at` components) and a `k`-block for reporting.
pub fn curvature(
    eta: &VForm1,
    alg: &AlmostLieAlgebra,
    boxx: &ChartBox,
    split_at: Option<usize>,
) -> Result<CurvatureReport, CoframeError> {
    if eta.target_dim() != alg.dim() {
        return Err(CoframeError::Dimensions(format!(
            "form valued in dim {}, algebra dim {}",
            eta.target_dim(),
            alg.dim()
        )));
    }
    let sc = Sc64::new(alg);
    let h = boxx.fd_step();
    let mut report = CurvatureReport {
        max_norm: 0.0,
        worst_point: Vec::new(),
        worst_entry: (0, 0, 0),
        split_max: split_at.map(|_| (0.0, 0.0)),
        flat: true,
        tol: boxx.tol(),
        points: 0,
    };
    for p in boxx.grid_points() {
        let d = eta.fd_d(boxx, &p, h)?;
        let vals = eta.eval_at(&p)?;
        let omega = d.add(&wedge_bracket(&vals, &sc));
        let (i, j, c, v) = omega.worst();
        if v.abs() > report.max_norm {
            report.max_norm = v.abs();
            report.worst_point = p.clone();
            report.worst_entry = (i, j, c);
        }
        if let (Some(split), Some((mh, mk))) = (split_at, report.split_max.as_mut()) {
            *mh = mh.max(omega.max_abs_components(0..split));
            *mk = mk.max(omega.max_abs_components(split..omega.target_dim()));
        }
        report.points += 1;
    }
    report.flat = report.max_norm <= report.tol;
    Ok(report)
}

/// Torsion and curvature functions at a point, solved on the frame dual to
/// the coframe `θ`: `T(e_a, e_b) = (dθ + τ∧θ)(V_a, V_b)`,
/// `R(e_a, e_b) = (dτ + τ∧τ)(V_a, V_b)`.
///
/// Returned tables are indexed by `pair_index(n, a, b)`.
pub struct TorsionCurvature {
    pub n: usize,
    pub torsion: Vec<Vec<f64>>,
    pub curvature: Vec<Vec<f64>>,
}

pub fn torsion_curvature(
    theta: &VForm1,
    tau: &VForm1,
    rep: &Rep64,
    h_sc: &Sc64,
    boxx: &ChartBox,
    p: &[f64],
) -> Result<TorsionCurvature, CoframeError> {
    let n = boxx.n();
    if n < 2 {
        return Err(CoframeError::Dimensions(
            "structure equations need a chart of dimension at least 2 (no 2-forms otherwise)"
                .into(),
        ));
    }
    if theta.target_dim() != n {
        return Err(CoframeError::Dimensions(format!(
            "coframe must be square: target {} vs chart {}",
            theta.target_dim(),
            n
        )));
    }
    let h = boxx.fd_step();
    let theta_vals = theta.eval_at(p)?;
    let lu = theta_vals.clone().lu();
    let inv = lu.try_inverse().ok_or(CoframeError::SingularCoframe { point: p.to_vec() })?;
    if theta_vals.determinant().abs() <= 1e-12 {
        return Err(CoframeError::SingularCoframe { point: p.to_vec() });
    }
    let tau_vals = tau.eval_at(p)?;
    let d_theta = theta.fd_d(boxx, p, h)?;
    let d_tau = tau.fd_d(boxx, p, h)?;
    let t_integrand = d_theta.add(&wedge_action(&tau_vals, &theta_vals, rep));
    let r_integrand = d_tau.add(&wedge_bracket(&tau_vals, h_sc));
    let frame: Vec<Vec<f64>> =
        (0..n).map(|a| inv.column(a).iter().copied().collect()).collect();
    let mut torsion = Vec::with_capacity(n * (n - 1) / 2);
    let mut curv = Vec::with_capacity(n * (n - 1) / 2);
    for a in 0..n {
        for b in (a + 1)..n {
            torsion.push(t_integrand.apply(&frame[a], &frame[b]));
            curv.push(r_integrand.apply(&frame[a], &frame[b]));
        }
    }
    Ok(TorsionCurvature { n, torsion, curvature: curv })
}

/// Everything a flatness verdict needs: chart, coframe, connection, and the
/// reductive model `h ⋉ k`.
#[derive(Debug, Clone)]
pub struct FlatnessScenario {
    pub boxx: ChartBox,
    pub theta: VForm1,
    pub tau: VForm1,
    pub h_alg: AlmostLieAlgebra,
    pub k_alg: AlmostLieAlgebra,
    /// action of `h` on `k`
    pub rep: LinearRep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlatVerdict {
    Flat,
    NotFlat,
}

#[derive(Debug, Clone)]
pub struct FlatnessReport {
    pub verdict: FlatVerdict,
    pub max_r: f64,
    /// max over the grid of `|T^i_ab + d^i_ab|`
    pub max_t_defect: f64,
    pub tol: f64,
    pub worst_point: Vec<f64>,
    /// `(i, a, b)` of the worst torsion defect and the raw `T^i_ab` there
    pub worst_torsion: (usize, usize, usize),
    pub worst_torsion_value: f64,
    pub points: usize,
}

/// Verdict FLAT iff `max |R| <= tol` and `max |T + d| <= tol` over the grid,
/// with `d` the structure constants of `k`.
pub fn flatness_check(s: &FlatnessScenario) -> Result<FlatnessReport, CoframeError> {
    let n = s.boxx.n();
    if s.k_alg.dim() != n {
        return Err(CoframeError::Dimensions(format!(
            "k has dim {}, chart has dim {}",
            s.k_alg.dim(),
            n
        )));
    }
    let rep = Rep64::new(&s.rep);
    let h_sc = Sc64::new(&s.h_alg);
    let k_sc = Sc64::new(&s.k_alg);
    let mut report = FlatnessReport {
        verdict: FlatVerdict::Flat,
        max_r: 0.0,
        max_t_defect: 0.0,
        tol: s.boxx.tol(),
        worst_point: Vec::new(),
        worst_torsion: (0, 0, 0),
        worst_torsion_value: 0.0,
        points: 0,
    };
    for p in s.boxx.grid_points() {
        let tc = torsion_curvature(&s.theta, &s.tau, &rep, &h_sc, &s.boxx, &p)?;
        for a in 0..n {
            for b in (a + 1)..n {
                let idx = pair_index(n, a, b);
                for alpha in 0..s.h_alg.dim() {
                    report.max_r = report.max_r.max(tc.curvature[idx][alpha].abs());
                }
                for i in 0..n {
                    let t = tc.torsion[idx][i];
                    let defect = (t + k_sc.d(i, a, b)).abs();
                    if defect > report.max_t_defect {
                        report.max_t_defect = defect;
                        report.worst_point = p.clone();
                        report.worst_torsion = (i, a, b);
                        report.worst_torsion_value = t;
                    }
                }
            }
        }
        report.points += 1;
    }
    if report.max_r > report.tol || report.max_t_defect > report.tol {
        report.verdict = FlatVerdict::NotFlat;
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct SplitReport {
    pub max_discrepancy: f64,
    pub worst_point: Vec<f64>,
    pub points: usize,
}

/// Two independent evaluations of the curvature split
/// `Ω^η_h = Ω^τ` and `Ω^η_k = Ω^θ + τ∧θ` for the reductive model `h ⋉ k`:
/// the left sides via the semidirect structure constants on the assembled
/// lift, the right sides directly from `τ`, `θ` and the action.
pub fn curvature_split_check(
    tau: &VForm1,
    theta: &VForm1,
    h_alg: &AlmostLieAlgebra,
    k_alg: &AlmostLieAlgebra,
    rep: &LinearRep,
    boxx: &ChartBox,
) -> Result<SplitReport, CoframeError> {
    let z = semidirect(h_alg, rep, k_alg)
        .map_err(|e| CoframeError::Dimensions(e.to_string()))?;
    let (dh, dk) = (h_alg.dim(), k_alg.dim());
    let eta = tau.stack(theta);
    let z_sc = Sc64::new(&z);
    let h_sc = Sc64::new(h_alg);
    let k_sc = Sc64::new(k_alg);
    let rep64 = Rep64::new(rep);
    let h = boxx.fd_step();
    let mut report = SplitReport { max_discrepancy: 0.0, worst_point: Vec::new(), points: 0 };
    for p in boxx.grid_points() {
        let eta_vals = eta.eval_at(&p)?;
        let omega = eta.fd_d(boxx, &p, h)?.add(&wedge_bracket(&eta_vals, &z_sc));

        let tau_vals = tau.eval_at(&p)?;
        let theta_vals = theta.eval_at(&p)?;
        let omega_tau = tau.fd_d(boxx, &p, h)?.add(&wedge_bracket(&tau_vals, &h_sc));
        let omega_theta = theta
            .fd_d(boxx, &p, h)?
            .add(&wedge_bracket(&theta_vals, &k_sc))
            .add(&wedge_action(&tau_vals, &theta_vals, &rep64));

        let n = boxx.n();
        let mut local: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                for c in 0..dh {
                    local = local.max((omega.get(i, j, c) - omega_tau.get(i, j, c)).abs());
                }
                for c in 0..dk {
                    local = local.max((omega.get(i, j, dh + c) - omega_theta.get(i, j, c)).abs());
                }
            }
        }
        if local > report.max_discrepancy {
            report.max_discrepancy = local;
            report.worst_point = p.clone();
        }
        report.points += 1;
    }
    Ok(report)
}

/// Second-order curvature decomposition: with `θ² = (τ¹, θ¹)` a pointwise
/// coframe of the chart and `η² = (τ², τ¹, θ¹)`, checks
/// `Ω^{η²} = (R²(θ²∧θ²), Ω^{η¹} + τ²∧η¹)` on the grid, where `R²` is solved
/// from `dτ²` on the frame dual to `θ²` and `τ²` acts through the insertion
/// representation of the model.
pub fn second_order_split_check(
    tau2: &VForm1,
    tau1: &VForm1,
    theta1: &VForm1,
    model: &SecondOrderModel,
    boxx: &ChartBox,
) -> Result<SplitReport, CoframeError> {
    let (hd, g1, n) = (model.h_dim, model.g1_dim, model.n);
    let nc = boxx.n();
    if nc != g1 + n {
        return Err(CoframeError::Dimensions(format!(
            "second-order chart must have dim g1 + n = {}, got {nc}",
            g1 + n
        )));
    }
    if tau2.target_dim() != hd || tau1.target_dim() != g1 || theta1.target_dim() != n {
        return Err(CoframeError::Dimensions("form targets must match the model".into()));
    }
    let z2_sc = Sc64::new(&model.z2);
    let z1_sc = Sc64::new(&model.z1);
    let insertion = Rep64::new(model.cte.h_rep_on_v());
    let eta1 = tau1.stack(theta1);
    let eta2 = tau2.stack(&eta1);
    let h = boxx.fd_step();
    let mut report = SplitReport { max_discrepancy: 0.0, worst_point: Vec::new(), points: 0 };
    for p in boxx.grid_points() {
        // full z2 curvature
        let eta2_vals = eta2.eval_at(&p)?;
        let omega2 = eta2.fd_d(boxx, &p, h)?.add(&wedge_bracket(&eta2_vals, &z2_sc));

        // R² solved on the frame dual to θ² = (τ¹, θ¹), then recombined
        let theta2_vals = eta1.eval_at(&p)?; // square nc x nc
        if theta2_vals.determinant().abs() <= 1e-12 {
            return Err(CoframeError::SingularCoframe { point: p.to_vec() });
        }
        let inv = theta2_vals
            .clone()
            .lu()
            .try_inverse()
            .ok_or(CoframeError::SingularCoframe { point: p.to_vec() })?;
        let d_tau2 = tau2.fd_d(boxx, &p, h)?;
        let frame: Vec<Vec<f64>> =
            (0..nc).map(|a| inv.column(a).iter().copied().collect()).collect();
        let mut r2 = vec![vec![0.0; hd]; nc * (nc - 1) / 2];
        for a in 0..nc {
            for b in (a + 1)..nc {
                r2[pair_index(nc, a, b)] = d_tau2.apply(&frame[a], &frame[b]);
            }
        }
        // recombine: R²(θ²(∂_i), θ²(∂_j))
        let mut rhs_h = TwoForm::zero(hd, nc);
        for i in 0..nc {
            for j in (i + 1)..nc {
                let ci: Vec<f64> = theta2_vals.column(i).iter().copied().collect();
                let cj: Vec<f64> = theta2_vals.column(j).iter().copied().collect();
                let mut val = vec![0.0; hd];
                for a in 0..nc {
                    for b in (a + 1)..nc {
                        let w = ci[a] * cj[b] - ci[b] * cj[a];
                        if w == 0.0 {
                            continue;
                        }
                        let r = &r2[pair_index(nc, a, b)];
                        for c in 0..hd {
                            val[c] += w * r[c];
                        }
                    }
                }
                for c in 0..hd {
                    rhs_h.set(i, j, c, val[c]);
                }
            }
        }

        // Ω^{η¹} + τ² ∧ η¹ (insertion action)
        let eta1_vals = theta2_vals.clone();
        let tau2_vals = tau2.eval_at(&p)?;
        let omega1 = eta1
            .fd_d(boxx, &p, h)?
            .add(&wedge_bracket(&eta1_vals, &z1_sc))
            .add(&wedge_action(&tau2_vals, &eta1_vals, &insertion));

        let mut local: f64 = 0.0;
        for i in 0..nc {
            for j in (i + 1)..nc {
                for c in 0..hd {
                    local = local.max((omega2.get(i, j, c) - rhs_h.get(i, j, c)).abs());
                }
                for c in 0..(g1 + n) {
                    local = local.max((omega2.get(i, j, hd + c) - omega1.get(i, j, c)).abs());
                }
            }
        }
        if local > report.max_discrepancy {
            report.max_discrepancy = local;
            report.worst_point = p.clone();
        }
        report.points += 1;
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrabilityVerdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone)]
pub struct IntegrabilityReport {
    pub verdict: IntegrabilityVerdict,
    pub max_defect: f64,
    pub tol: f64,
    /// frame pair `(a, b)` of the worst defect
    pub worst_pair: (usize, usize),
    pub worst_point: Vec<f64>,
    pub points: usize,
}

/// PASS iff `|[V_a, V_b](p) - sum_i d^i_ab V_i(p)| <= tol` for all grid
/// points and all `a < b`: the frame realizes the structure constants of `k`.
pub fn k_integrability_witness(
    frame: &FrameField,
    k: &AlmostLieAlgebra,
    boxx: &ChartBox,
) -> Result<IntegrabilityReport, CoframeError> {
    let n = boxx.n();
    if frame.n() != n || k.dim() != n {
        return Err(CoframeError::Dimensions(format!(
            "frame ({}), algebra ({}) and chart ({}) dimensions must agree",
            frame.n(),
            k.dim(),
            n
        )));
    }
    frame.check_nondegenerate(boxx)?;
    let k_sc = Sc64::new(k);
    let h = boxx.fd_step();
    let mut report = IntegrabilityReport {
        verdict: IntegrabilityVerdict::Pass,
        max_defect: 0.0,
        tol: boxx.tol(),
        worst_pair: (0, 1.min(n - 1)),
        worst_point: Vec::new(),
        points: 0,
    };
    for p in boxx.grid_points() {
        let table = frame.lie_brackets(boxx, &p, h)?;
        let vals = frame.eval_matrix(&p)?;
        for a in 0..n {
            for b in (a + 1)..n {
                let got = &table[pair_index(n, a, b)];
                // expected = sum_i d^i_ab V_i(p)
                let mut expected = vec![0.0; n];
                for i in 0..n {
                    let c = k_sc.d(i, a, b);
                    if c != 0.0 {
                        for r in 0..n {
                            expected[r] += c * vals[(r, i)];
                        }
                    }
                }
                for r in 0..n {
                    let defect = (got[r] - expected[r]).abs();
                    if defect > report.max_defect {
                        report.max_defect = defect;
                        report.worst_pair = (a, b);
                        report.worst_point = p.clone();
                    }
                }
            }
        }
        report.points += 1;
    }
    if report.max_defect > report.tol {
        report.verdict = IntegrabilityVerdict::Fail;
    }
    Ok(report)
}

/// Max-abs entry of a matrix (report helper).
pub fn mat_max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc: f64, v| acc.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, heisenberg, sp_k1, sp_k1_matrices, standard_rep};
    use crate::expr::parse;

    fn contact_box() -> ChartBox {
        ChartBox::unit(vec!["x".into(), "y".into(), "z".into()])
    }

    fn form(rows: &[&[&str]], boxx: &ChartBox) -> VForm1 {
        let comps: Vec<_> = rows
            .iter()
            .flat_map(|r| r.iter().map(|s| parse(s, boxx.coords()).unwrap()))
            .collect();
        VForm1::new(rows.len(), boxx.n(), comps)
    }

    fn contact_coframe(boxx: &ChartBox) -> VForm1 {
        // theta1 = dy, theta2 = dx, theta3 = dz - y dx
        form(&[&["0", "1", "0"], &["1", "0", "0"], &["-y", "0", "1"]], boxx)
    }

    #[test]
    fn constant_closed_form_with_abelian_algebra_is_flat() {
        let b = contact_box();
        let eta = form(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]], &b);
        let rep = curvature(&eta, &abelian(3), &b, None).unwrap();
        assert!(rep.flat);
        assert!(rep.max_norm <= 1e-10);
    }

    #[test]
    fn contact_lift_flat_for_hei_not_for_abelian() {
        let b = contact_box();
        let s = sp_k1(1);
        let srep = standard_rep(&s, sp_k1_matrices(1));
        let theta = contact_coframe(&b);
        let tau = VForm1::zero(6, 3);
        let eta = tau.stack(&theta);

        let z_hei = semidirect(&s, &srep, &heisenberg(1)).unwrap();
        let rep = curvature(&eta, &z_hei, &b, Some(6)).unwrap();
        assert!(rep.flat, "max norm {}", rep.max_norm);
        assert!(rep.max_norm <= 1e-6);

        let z_ab = semidirect(&s, &srep, &abelian(3)).unwrap();
        let rep2 = curvature(&eta, &z_ab, &b, Some(6)).unwrap();
        assert!(!rep2.flat);
        assert!((rep2.max_norm - 1.0).abs() <= 1e-6, "residual ≈ 1 everywhere");
        let (h_max, k_max) = rep2.split_max.unwrap();
        assert!(h_max <= 1e-9 && (k_max - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn identity_coframe_has_no_torsion_or_curvature() {
        let b = contact_box();
        let theta = form(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]], &b);
        let tau = VForm1::zero(6, 3);
        let s = sp_k1(1);
        let rep = Rep64::new(&standard_rep(&s, sp_k1_matrices(1)));
        let h_sc = Sc64::new(&s);
        let tc = torsion_curvature(&theta, &tau, &rep, &h_sc, &b, &[0.2, 0.1, -0.3]).unwrap();
        for v in tc.torsion.iter().chain(&tc.curvature) {
            assert!(v.iter().all(|x| x.abs() <= 1e-9));
        }
    }

    #[test]
    fn contact_coframe_torsion_is_minus_one() {
        let b = contact_box();
        let theta = contact_coframe(&b);
        let tau = VForm1::zero(6, 3);
        let s = sp_k1(1);
        let rep = Rep64::new(&standard_rep(&s, sp_k1_matrices(1)));
        let h_sc = Sc64::new(&s);
        let tc = torsion_curvature(&theta, &tau, &rep, &h_sc, &b, &[0.3, -0.2, 0.4]).unwrap();
        // T^3_12 = -1; every other torsion component vanishes; R = 0
        for a in 0..3 {
            for bb in (a + 1)..3 {
                let idx = pair_index(3, a, bb);
                for i in 0..3 {
                    let want = if (i, a, bb) == (2, 0, 1) { -1.0 } else { 0.0 };
                    assert!(
                        (tc.torsion[idx][i] - want).abs() <= 1e-8,
                        "T^{i}_{a}{bb} = {}",
                        tc.torsion[idx][i]
                    );
                }
                assert!(tc.curvature[idx].iter().all(|x| x.abs() <= 1e-9));
            }
        }
    }

    #[test]
    fn scaled_coframe_torsion_analytic() {
        // theta1 = e^x dx, theta2 = dy: dtheta1 = 0 so T = 0 (hand computation);
        // theta1 = e^y dx, theta2 = dy gives constant T^1_12 = -1.
        let b = ChartBox::unit(vec!["x".into(), "y".into()]);
        let tau = VForm1::zero(0, 2);
        let trivial_rep = Rep64::new(&LinearRep::zero(crate::algebra::trivial(), 2));
        let h_sc = Sc64::new(&crate::algebra::trivial());

        let theta_a = form(&[&["exp(x)", "0"], &["0", "1"]], &b);
        let tc = torsion_curvature(&theta_a, &tau, &trivial_rep, &h_sc, &b, &[0.1, 0.2]).unwrap();
        assert!(tc.torsion[0].iter().all(|x| x.abs() <= 1e-8));

        let theta_b = form(&[&["exp(y)", "0"], &["0", "1"]], &b);
        let tc =
            torsion_curvature(&theta_b, &tau, &trivial_rep, &h_sc, &b, &[-0.3, 0.5]).unwrap();
        assert!((tc.torsion[0][0] + 1.0).abs() <= 1e-8);
        assert!(tc.torsion[0][1].abs() <= 1e-9);
    }

    #[test]
    fn singular_coframe_is_reported() {
        let b = ChartBox::unit(vec!["x".into(), "y".into()]);
        let theta = form(&[&["1", "0"], &["1", "0"]], &b);
        let tau = VForm1::zero(0, 2);
        let rep = Rep64::new(&LinearRep::zero(crate::algebra::trivial(), 2));
        let h_sc = Sc64::new(&crate::algebra::trivial());
        assert!(matches!(
            torsion_curvature(&theta, &tau, &rep, &h_sc, &b, &[0.0, 0.0]),
            Err(CoframeError::SingularCoframe { .. })
        ));
    }

    fn contact_scenario(k: AlmostLieAlgebra) -> FlatnessScenario {
        let b = contact_box();
        let s = sp_k1(1);
        FlatnessScenario {
            theta: contact_coframe(&b),
            tau: VForm1::zero(6, 3),
            boxx: b,
            rep: standard_rep(&s, sp_k1_matrices(1)),
            h_alg: s,
        k_alg: k,
        }
    }

    #[test]
    fn euclidean_scenario_flat() {
        let b = contact_box();
        let s = sp_k1(1);
        let sc = FlatnessScenario {
            theta: form(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]], &b),
            tau: VForm1::zero(6, 3),
            boxx: b,
            rep: standard_rep(&s, sp_k1_matrices(1)),
            h_alg: s,
            k_alg: abelian(3),
        };
        let r = flatness_check(&sc).unwrap();
        assert_eq!(r.verdict, FlatVerdict::Flat);
    }

    #[test]
    fn contact_flatness_darboux() {
        let r = flatness_check(&contact_scenario(heisenberg(1))).unwrap();
        assert_eq!(r.verdict, FlatVerdict::Flat, "defect {}", r.max_t_defect);
        assert!(r.max_t_defect <= 1e-6 && r.max_r <= 1e-6);

        let r2 = flatness_check(&contact_scenario(abelian(3))).unwrap();
        assert_eq!(r2.verdict, FlatVerdict::NotFlat);
        assert_eq!(r2.worst_torsion, (2, 0, 1));
        assert!((r2.worst_torsion_value + 1.0).abs() <= 1e-6, "T^3_12 = -1 witness");
    }

    #[test]
    fn contact_frame_integrability() {
        let b = contact_box();
        let frame = FrameField::new(
            3,
            ["0", "1", "0", "1", "0", "y", "0", "0", "1"]
                .iter()
                .map(|s| parse(s, b.coords()).unwrap())
                .collect(),
        );
        let pass = k_integrability_witness(&frame, &heisenberg(1), &b).unwrap();
        assert_eq!(pass.verdict, IntegrabilityVerdict::Pass, "defect {}", pass.max_defect);

        let fail = k_integrability_witness(&frame, &abelian(3), &b).unwrap();
        assert_eq!(fail.verdict, IntegrabilityVerdict::Fail);
        assert_eq!(fail.worst_pair, (0, 1));

        // coordinate frame realizes the abelian algebra
        let id = FrameField::new(
            3,
            ["1", "0", "0", "0", "1", "0", "0", "0", "1"]
                .iter()
                .map(|s| parse(s, b.coords()).unwrap())
                .collect(),
        );
        let ok = k_integrability_witness(&id, &abelian(3), &b).unwrap();
        assert_eq!(ok.verdict, IntegrabilityVerdict::Pass);
    }

    #[test]
    fn split_check_trivial_cases() {
        let b = contact_box();
        let s = sp_k1(1);
        let rep = standard_rep(&s, sp_k1_matrices(1));
        // tau = 0: omega_k reduces to omega_theta; discrepancy at rounding level
        let r = curvature_split_check(
            &VForm1::zero(6, 3),
            &contact_coframe(&b),
            &s,
            &heisenberg(1),
            &rep,
            &b,
        )
        .unwrap();
        assert!(r.max_discrepancy <= 1e-12, "{}", r.max_discrepancy);
    }
}
