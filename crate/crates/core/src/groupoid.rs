//! Concrete free and transitive actions (translations on `R^n`, Heisenberg on
//! `R^{2k+1}`), the action groupoid `(K ⋉ X) × G` with its explicit Pfaffian
//! form, holonomic-bisection and multiplicativity residuals, and the induced
//! reductive extension.
//!
//! Group elements and points of `X` are coordinate vectors; the base point is
//! the origin. Differentials are closed form for translations and central
//! differences (step `1e-5`) for the Heisenberg model; the group laws are
//! quadratic, so the FD error is rounding-level.

use crate::algebra::{algebra_from_matrix_basis, AlmostLieAlgebra};
use crate::extension::{
    check_reductive, semidirect_extension, CartanTypeExtension, ExtensionError, SplittingPair,
};
use crate::linalg::{snap_to_rational, RatMat, Rational};
use crate::rep::LinearRep;
use nalgebra::DMatrix;
use rand::Rng;

pub const FD_STEP: f64 = 1e-5;
pub const SNAP_TOL: f64 = 1e-6;
pub const SNAP_MAX_DEN: u32 = 16;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GroupoidError {
    #[error("arrows are not composable (target/source mismatch {0:.3e})")]
    NonComposable(f64),
    #[error("differential is singular")]
    SingularDifferential,
    #[error("numeric value {value} does not snap to a rational with denominator <= {max_den}; extension is numeric only")]
    NumericOnly { value: f64, max_den: u32 },
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

/// The two catalog families of free and transitive actions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KGroup {
    /// `(R^n, +)` acting on `R^n` by translations.
    Translations { n: usize },
    /// Heisenberg group on `R^{2k+1}`:
    /// `(a,b,c)·(x,y,z) = (a+x, b+y, c+z+<a,y>)`, acting by left translation.
    Heisenberg { k: usize },
}

impl KGroup {
    pub fn dim(&self) -> usize {
        match self {
            KGroup::Translations { n } => *n,
            KGroup::Heisenberg { k } => 2 * k + 1,
        }
    }

    pub fn identity(&self) -> Vec<f64> {
        vec![0.0; self.dim()]
    }

    pub fn base_point(&self) -> Vec<f64> {
        vec![0.0; self.dim()]
    }

    pub fn mul(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        match self {
            KGroup::Translations { .. } => a.iter().zip(b).map(|(x, y)| x + y).collect(),
            KGroup::Heisenberg { k } => {
                let k = *k;
                let mut out: Vec<f64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let cross: f64 = (0..k).map(|i| a[i] * b[k + i]).sum();
                out[2 * k] += cross;
                out
            }
        }
    }

    pub fn inv(&self, a: &[f64]) -> Vec<f64> {
        match self {
            KGroup::Translations { .. } => a.iter().map(|x| -x).collect(),
            KGroup::Heisenberg { k } => {
                let k = *k;
                let mut out: Vec<f64> = a.iter().map(|x| -x).collect();
                let cross: f64 = (0..k).map(|i| a[i] * a[k + i]).sum();
                out[2 * k] += cross;
                out
            }
        }
    }

    /// Left action `m^K(k, x)`.
    pub fn act(&self, k: &[f64], x: &[f64]) -> Vec<f64> {
        match self {
            KGroup::Translations { .. } => self.mul(k, x),
            KGroup::Heisenberg { .. } => self.mul(k, x),
        }
    }

    /// Divisor `Φ(y, x)`: the unique `k` with `k · x = y`.
    pub fn divisor(&self, y: &[f64], x: &[f64]) -> Vec<f64> {
        match self {
            KGroup::Translations { .. } => y.iter().zip(x).map(|(a, b)| a - b).collect(),
            KGroup::Heisenberg { .. } => self.mul(y, &self.inv(x)),
        }
    }

    /// `d m^K` at `(k, x)` applied to `(v1, v2)`.
    pub fn d_act(&self, k: &[f64], x: &[f64], v1: &[f64], v2: &[f64]) -> Vec<f64> {
        match self {
            KGroup::Translations { .. } => v1.iter().zip(v2).map(|(a, b)| a + b).collect(),
            KGroup::Heisenberg { .. } => {
                let joint = |t: f64| {
                    let kk: Vec<f64> = k.iter().zip(v1).map(|(a, d)| a + t * d).collect();
                    let xx: Vec<f64> = x.iter().zip(v2).map(|(a, d)| a + t * d).collect();
                    self.act(&kk, &xx)
                };
                central(joint, FD_STEP)
            }
        }
    }

    /// `d Φ` at `(y, x)` in the first slot only.
    pub fn d_divisor_first(&self, y: &[f64], x: &[f64], w: &[f64]) -> Vec<f64> {
        match self {
            KGroup::Translations { .. } => w.to_vec(),
            KGroup::Heisenberg { .. } => {
                let f = |t: f64| {
                    let yy: Vec<f64> = y.iter().zip(w).map(|(a, d)| a + t * d).collect();
                    self.divisor(&yy, x)
                };
                central(f, FD_STEP)
            }
        }
    }

    /// `d T_k` at `x` applied to `v` (translation `T_k = act(k, ·)`).
    pub fn d_translation(&self, k: &[f64], x: &[f64], v: &[f64]) -> Vec<f64> {
        match self {
            KGroup::Translations { .. } => v.to_vec(),
            KGroup::Heisenberg { .. } => {
                let f = |t: f64| {
                    let xx: Vec<f64> = x.iter().zip(v).map(|(a, d)| a + t * d).collect();
                    self.act(k, &xx)
                };
                central(f, FD_STEP)
            }
        }
    }

    /// `d Φ_p` at `k` applied to `v`, for the orbit map `Φ_p = act(·, p)`.
    pub fn d_orbit(&self, p: &[f64], k: &[f64], v: &[f64]) -> Vec<f64> {
        match self {
            KGroup::Translations { .. } => v.to_vec(),
            KGroup::Heisenberg { .. } => {
                let f = |t: f64| {
                    let kk: Vec<f64> = k.iter().zip(v).map(|(a, d)| a + t * d).collect();
                    self.act(&kk, p)
                };
                central(f, FD_STEP)
            }
        }
    }
}

fn central(f: impl Fn(f64) -> Vec<f64>, h: f64) -> Vec<f64> {
    let plus = f(h);
    let minus = f(-h);
    plus.iter().zip(&minus).map(|(a, b)| (a - b) / (2.0 * h)).collect()
}

/// Arrow of `(K ⋉ X) × G`: source `x`, target `k · x`, isotropy datum `a`.
#[derive(Debug, Clone)]
pub struct GroupoidArrow {
    pub k: Vec<f64>,
    pub x: Vec<f64>,
    pub a: DMatrix<f64>,
}

impl GroupoidArrow {
    pub fn unit(group: &KGroup, x: Vec<f64>) -> Self {
        let n = group.dim();
        GroupoidArrow { k: group.identity(), x, a: DMatrix::identity(n, n) }
    }

    pub fn source(&self) -> &[f64] {
        &self.x
    }

    pub fn target(&self, group: &KGroup) -> Vec<f64> {
        group.act(&self.k, &self.x)
    }

    pub fn inverse(&self, group: &KGroup) -> Result<GroupoidArrow, GroupoidError> {
        let a_inv = self
            .a
            .clone()
            .try_inverse()
            .ok_or(GroupoidError::SingularDifferential)?;
        Ok(GroupoidArrow { k: group.inv(&self.k), x: self.target(group), a: a_inv })
    }
}

/// `(k2, k1·x, g2) · (k1, x, g1) = (k2 k1, x, g2 g1)`.
pub fn compose(
    group: &KGroup,
    a2: &GroupoidArrow,
    a1: &GroupoidArrow,
) -> Result<GroupoidArrow, GroupoidError> {
    let t1 = a1.target(group);
    let gap = max_abs_diff(&t1, &a2.x);
    if gap > 1e-9 {
        return Err(GroupoidError::NonComposable(gap));
    }
    Ok(GroupoidArrow {
        k: group.mul(&a2.k, &a1.k),
        x: a1.x.clone(),
        a: &a2.a * &a1.a,
    })
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// The conjugated matrix `Ã` of the Pfaffian form:
/// `Ã = d_{x0} T_{Φ(k·x, x0)} ∘ A ∘ d_x T^{-1}_{Φ(x, x0)} : T_x X -> T_{k·x} X`.
fn a_tilde(group: &KGroup, arrow: &GroupoidArrow, v2: &[f64]) -> Vec<f64> {
    let x0 = group.base_point();
    let kx = arrow.target(group);
    // u1 = d_x T_{h^{-1}}(v2), h = Φ(x, x0); T_h^{-1} = T_{h^{-1}}
    let h_inv = group.inv(&group.divisor(&arrow.x, &x0));
    let u1 = group.d_translation(&h_inv, &arrow.x, v2);
    // u2 = A u1 on T_{x0} X
    let u1v = DMatrix::from_column_slice(u1.len(), 1, &u1);
    let u2: Vec<f64> = (&arrow.a * u1v).column(0).iter().copied().collect();
    // u3 = d_{x0} T_{Φ(k·x, x0)}(u2)
    let h2 = group.divisor(&kx, &x0);
    group.d_translation(&h2, &x0, &u2)
}

/// The explicit Pfaffian form:
/// `ω_{(k,x,A)}(v1, v2, v3) = dΦ(dm^K(v1, v2) - Ã(v2), 0_x)` at `(k·x, x)`.
/// The `G`-slot `v3` does not enter.
pub fn pfaffian_omega(
    group: &KGroup,
    arrow: &GroupoidArrow,
    v1: &[f64],
    v2: &[f64],
    _v3_unused: &[f64],
) -> Vec<f64> {
    let kx = arrow.target(group);
    let dm = group.d_act(&arrow.k, &arrow.x, v1, v2);
    let at = a_tilde(group, arrow, v2);
    let w: Vec<f64> = dm.iter().zip(&at).map(|(a, b)| a - b).collect();
    group.d_divisor_first(&kx, &arrow.x, &w)
}

/// The same form valued in the coefficient bundle `(Φ^{-1}_{x0})^* TK`: the
/// final divisor differential is taken at `(k·x, x0)`, landing in
/// `T_{Φ(k·x, x0)} K`, the fiber over the target. This is the version that
/// satisfies the multiplicativity equation on the nose; `pfaffian_omega`
/// differs from it by an invertible pointwise identification.
pub fn pfaffian_omega_rep_valued(
    group: &KGroup,
    arrow: &GroupoidArrow,
    v1: &[f64],
    v2: &[f64],
) -> Vec<f64> {
    let x0 = group.base_point();
    let kx = arrow.target(group);
    let dm = group.d_act(&arrow.k, &arrow.x, v1, v2);
    let at = a_tilde(group, arrow, v2);
    let w: Vec<f64> = dm.iter().zip(&at).map(|(a, b)| a - b).collect();
    group.d_divisor_first(&kx, &x0, &w)
}

/// Arrow action `(k, x, A) · v = Ā(v)` on the coefficient bundle, carrying
/// the fiber over the source to the fiber over the target: the conjugated
/// matrix `Ã` read through the bundle identifications
/// `T_{Φ(x, x0)}K ≅ T_x X` given by the orbit and divisor maps.
pub fn arrow_action(group: &KGroup, arrow: &GroupoidArrow, v: &[f64]) -> Vec<f64> {
    let x0 = group.base_point();
    let kx = arrow.target(group);
    // fiber over the source to T_x X: orbit map through x0 at Φ(x, x0)
    let at_elem = group.divisor(&arrow.x, &x0);
    let u0 = group.d_orbit(&x0, &at_elem, v);
    // Ã : T_x X -> T_{k·x} X
    let u3 = a_tilde(group, arrow, &u0);
    // back into the fiber over the target
    group.d_divisor_first(&kx, &x0, &u3)
}

/// Max residual of `σ_k^* ω` over the grid and coordinate directions, for the
/// bisection `σ_k : x -> (k, x, e_G)`.
pub fn holonomic_bisection_residual(group: &KGroup, k: &[f64], grid: &[Vec<f64>]) -> f64 {
    let n = group.dim();
    let zero = vec![0.0; n];
    let mut worst: f64 = 0.0;
    for x in grid {
        let arrow =
            GroupoidArrow { k: k.to_vec(), x: x.clone(), a: DMatrix::identity(n, n) };
        for dir in 0..n {
            let mut v = vec![0.0; n];
            v[dir] = 1.0;
            let val = pfaffian_omega(group, &arrow, &zero, &v, &zero);
            worst = worst.max(val.iter().fold(0.0f64, |a, b| a.max(b.abs())));
        }
    }
    worst
}

/// Max multiplicativity defect `|m^*ω - pr_1^*ω - g·pr_2^*ω|` over sampled
/// composable pairs with matched base directions.
pub fn multiplicativity_residual(
    group: &KGroup,
    rng: &mut impl Rng,
    samples: usize,
) -> Result<f64, GroupoidError> {
    let n = group.dim();
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let x = rand_vec(rng, n);
        let k1 = rand_vec(rng, n);
        let k2 = rand_vec(rng, n);
        let g1 = near_identity(rng, n);
        let g2 = near_identity(rng, n);
        let y = group.act(&k1, &x);
        let a1 = GroupoidArrow { k: k1.clone(), x: x.clone(), a: g1.clone() };
        let a2 = GroupoidArrow { k: k2.clone(), x: y.clone(), a: g2.clone() };
        let composed = compose(group, &a2, &a1)?;

        let dk1 = rand_vec(rng, n);
        let dk2 = rand_vec(rng, n);
        let dx = rand_vec(rng, n);
        // composability constraint: the base direction at the target of a1
        // is the pushforward of (dk1, dx)
        let dy = group.d_act(&k1, &x, &dk1, &dx);
        // differential of the K-multiplication on (dk2, dk1)
        let dk2k1 = {
            let f = |t: f64| {
                let kk2: Vec<f64> = k2.iter().zip(&dk2).map(|(a, d)| a + t * d).collect();
                let kk1: Vec<f64> = k1.iter().zip(&dk1).map(|(a, d)| a + t * d).collect();
                group.mul(&kk2, &kk1)
            };
            central(f, FD_STEP)
        };

        let lhs = pfaffian_omega_rep_valued(group, &composed, &dk2k1, &dx);
        let first = pfaffian_omega_rep_valued(group, &a2, &dk2, &dy);
        let second = pfaffian_omega_rep_valued(group, &a1, &dk1, &dx);
        let acted = arrow_action(group, &a2, &second);
        for i in 0..n {
            worst = worst.max((lhs[i] - first[i] - acted[i]).abs());
        }
    }
    Ok(worst)
}

fn rand_vec(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

fn near_identity(rng: &mut impl Rng, n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |i, j| {
        let base = if i == j { 1.0 } else { 0.0 };
        base + 0.3 * rng.random_range(-1.0..1.0)
    })
}

/// Action of a first-jet `dφ` (a matrix at the base point) on `K`:
/// `g · k = Φ_{x0}^{-1}(dφ(Φ_{x0}(k)))`.
pub fn isotropy_action(
    group: &KGroup,
    dphi: &DMatrix<f64>,
    k: &[f64],
) -> Result<Vec<f64>, GroupoidError> {
    if dphi.determinant().abs() <= 1e-12 {
        return Err(GroupoidError::SingularDifferential);
    }
    let x0 = group.base_point();
    let pt = group.act(k, &x0);
    let moved = dphi * DMatrix::from_column_slice(pt.len(), 1, &pt);
    let moved: Vec<f64> = moved.column(0).iter().copied().collect();
    Ok(group.divisor(&moved, &x0))
}

/// Differentiate the isotropy action at `(e_G, e_K)`: one matrix of the
/// `g`-action on `Lie(K)` per basis matrix, by nested central differences.
pub fn infinitesimal_rep(group: &KGroup, g_basis: &[DMatrix<f64>]) -> Vec<DMatrix<f64>> {
    let n = group.dim();
    let e = group.identity();
    let s = FD_STEP;
    g_basis
        .iter()
        .map(|alpha| {
            DMatrix::from_fn(n, n, |i, j| {
                let eval = |sg: f64, tg: f64| -> f64 {
                    let dphi = DMatrix::identity(n, n) + alpha * sg;
                    let mut kk = e.clone();
                    kk[j] += tg;
                    isotropy_action(group, &dphi, &kk).expect("near-identity jet")[i]
                };
                (eval(s, s) - eval(s, -s) - eval(-s, s) + eval(-s, -s)) / (4.0 * s * s)
            })
        })
        .collect()
}

/// Structure constants of `Lie(K)` by differentiating conjugation, then
/// snapping to exact rationals.
pub fn lie_algebra_of_k(group: &KGroup) -> Result<AlmostLieAlgebra, GroupoidError> {
    let n = group.dim();
    let e = group.identity();
    let s = FD_STEP;
    let mut sc = vec![Rational::from_integer(0.into()); n * n * n];
    for j in 0..n {
        for k in (j + 1)..n {
            let mut br = vec![0.0; n];
            for (i, b) in br.iter_mut().enumerate() {
                let eval = |sg: f64, tg: f64| -> f64 {
                    let mut a = e.clone();
                    a[j] += sg;
                    let mut bb = e.clone();
                    bb[k] += tg;
                    group.mul(&group.mul(&a, &bb), &group.inv(&a))[i]
                };
                *b = (eval(s, s) - eval(s, -s) - eval(-s, s) + eval(-s, -s)) / (4.0 * s * s);
            }
            for (i, v) in br.iter().enumerate() {
                let r = snap_to_rational(*v, SNAP_MAX_DEN, SNAP_TOL)
                    .ok_or(GroupoidError::NumericOnly { value: *v, max_den: SNAP_MAX_DEN })?;
                sc[i * n * n + j * n + k] = r.clone();
                sc[i * n * n + k * n + j] = -r;
            }
        }
    }
    let names = (0..n).map(|i| format!("e{}", i + 1)).collect();
    AlmostLieAlgebra::from_structure_constants(names, sc)
        .map_err(|e| GroupoidError::Extension(ExtensionError::Shape(e.to_string())))
}

/// Everything `build_reductive_extension` produces.
#[derive(Debug, Clone)]
pub struct InducedExtension {
    pub g: AlmostLieAlgebra,
    pub k: AlmostLieAlgebra,
    pub rep: LinearRep,
    pub cte: CartanTypeExtension,
    pub splitting: SplittingPair,
}

/// From a free transitive action and `g` given by exact matrices at the base
/// point: differentiate the isotropy action (FD), snap to rationals, build
/// `z = g ⋉ k` with canonical splittings, and verify reductivity exactly.
pub fn build_reductive_extension(
    group: &KGroup,
    g_mats: &[RatMat],
) -> Result<InducedExtension, GroupoidError> {
    let n = group.dim();
    let k_alg = lie_algebra_of_k(group)?;
    let g_alg = if g_mats.is_empty() {
        crate::algebra::trivial()
    } else {
        let names = (0..g_mats.len()).map(|i| format!("g{}", i + 1)).collect();
        algebra_from_matrix_basis(names, g_mats)
            .map_err(|e| GroupoidError::Extension(ExtensionError::Shape(e.to_string())))?
    };
    let g64: Vec<DMatrix<f64>> = g_mats.iter().map(RatMat::to_f64).collect();
    let rep_numeric = infinitesimal_rep(group, &g64);
    let mut rep_mats = Vec::with_capacity(rep_numeric.len());
    for m in &rep_numeric {
        let snapped = RatMat::from_fn(n, n, |i, j| {
            snap_to_rational(m[(i, j)], SNAP_MAX_DEN, SNAP_TOL).unwrap_or_else(|| {
                // caught below by the re-verification; keep a marker value
                Rational::from_integer(i64::MAX.into())
            })
        });
        for i in 0..n {
            for j in 0..n {
                if snap_to_rational(m[(i, j)], SNAP_MAX_DEN, SNAP_TOL).is_none() {
                    return Err(GroupoidError::NumericOnly {
                        value: m[(i, j)],
                        max_den: SNAP_MAX_DEN,
                    });
                }
            }
        }
        rep_mats.push(snapped);
    }
    let rep = LinearRep::new(g_alg.clone(), n, rep_mats)
        .map_err(|e| GroupoidError::Extension(ExtensionError::Shape(e.to_string())))?;
    let (cte, splitting) = semidirect_extension(&g_alg, &rep, &k_alg)?;
    let report = check_reductive(&cte, &splitting);
    debug_assert!(report.reductive, "semidirect extensions are reductive");
    Ok(InducedExtension { g: g_alg, k: k_alg, rep, cte, splitting })
}

/// Max residual of the divisor identities on random triples:
/// `act(Φ(y,x), x) = y`, `Φ(y,x)^{-1} = Φ(x,y)`, `Φ(z,y)Φ(y,x) = Φ(z,x)`.
pub fn divisor_identity_residual(group: &KGroup, rng: &mut impl Rng, triples: usize) -> f64 {
    let n = group.dim();
    let mut worst: f64 = 0.0;
    for _ in 0..triples {
        let x = rand_vec(rng, n);
        let y = rand_vec(rng, n);
        let z = rand_vec(rng, n);
        let back = group.act(&group.divisor(&y, &x), &x);
        worst = worst.max(max_abs_diff(&back, &y));
        let inv = group.inv(&group.divisor(&y, &x));
        worst = worst.max(max_abs_diff(&inv, &group.divisor(&x, &y)));
        let prod = group.mul(&group.divisor(&z, &y), &group.divisor(&y, &x));
        worst = worst.max(max_abs_diff(&prod, &group.divisor(&z, &x)));
    }
    worst
}

/// Max defect of the groupoid axioms (associativity, units, inverses,
/// source/target bookkeeping) on random composable samples.
pub fn groupoid_axiom_residual(
    group: &KGroup,
    rng: &mut impl Rng,
    samples: usize,
) -> Result<f64, GroupoidError> {
    let n = group.dim();
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let a1 = GroupoidArrow {
            k: rand_vec(rng, n),
            x: rand_vec(rng, n),
            a: near_identity(rng, n),
        };
        let a2 = GroupoidArrow {
            k: rand_vec(rng, n),
            x: a1.target(group),
            a: near_identity(rng, n),
        };
        let a3 = GroupoidArrow {
            k: rand_vec(rng, n),
            x: a2.target(group),
            a: near_identity(rng, n),
        };
        let left = compose(group, &a3, &compose(group, &a2, &a1)?)?;
        let right = compose(group, &compose(group, &a3, &a2)?, &a1)?;
        worst = worst.max(max_abs_diff(&left.k, &right.k));
        worst = worst.max(max_abs_diff(&left.x, &right.x));
        worst = worst.max((&left.a - &right.a).iter().fold(0.0f64, |m, v| m.max(v.abs())));
        // units at source and target
        let u_src = GroupoidArrow::unit(group, a1.x.clone());
        let u_tgt = GroupoidArrow::unit(group, a1.target(group));
        let r1 = compose(group, &a1, &u_src)?;
        let r2 = compose(group, &u_tgt, &a1)?;
        worst = worst.max(max_abs_diff(&r1.k, &a1.k)).max(max_abs_diff(&r2.k, &a1.k));
        // inverse composes to the unit
        let inv = a1.inverse(group)?;
        let idc = compose(group, &inv, &a1)?;
        worst = worst.max(max_abs_diff(&idc.k, &group.identity()));
        worst = worst.max(max_abs_diff(&idc.x, &a1.x));
        // target of the composition is the target of the outer arrow
        worst = worst.max(max_abs_diff(&left.target(group), &a3.target(group)));
    }
    Ok(worst)
}

/// Max defect of the action law `(g1 g2) · k = g1 · (g2 · k)` on random
/// samples of the isotropy action.
pub fn isotropy_action_residual(
    group: &KGroup,
    rng: &mut impl Rng,
    samples: usize,
) -> Result<f64, GroupoidError> {
    let n = group.dim();
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let m1 = near_identity(rng, n);
        let m2 = near_identity(rng, n);
        let k = rand_vec(rng, n);
        let lhs = isotropy_action(group, &(&m1 * &m2), &k)?;
        let rhs = isotropy_action(group, &m1, &isotropy_action(group, &m2, &k)?)?;
        worst = worst.max(max_abs_diff(&lhs, &rhs));
    }
    Ok(worst)
}

/// Max holonomic residual over `count` seeded random bisections.
pub fn holonomic_residual_sweep(
    group: &KGroup,
    rng: &mut impl Rng,
    count: usize,
    grid: &[Vec<f64>],
) -> f64 {
    let n = group.dim();
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let k = rand_vec(rng, n);
        worst = worst.max(holonomic_bisection_residual(group, &k, grid));
    }
    worst
}

/// Uniform grid on `[-1, 1]^n` with `per_axis` points per axis.
pub fn cube_grid(n: usize, per_axis: usize) -> Vec<Vec<f64>> {
    let axis: Vec<f64> = (0..per_axis)
        .map(|k| -1.0 + 2.0 * k as f64 / (per_axis - 1) as f64)
        .collect();
    let total = per_axis.pow(n as u32);
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut p = vec![0.0; n];
        for ax in (0..n).rev() {
            p[ax] = axis[idx % per_axis];
            idx /= per_axis;
        }
        out.push(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gl_matrices, heisenberg, sp_k1_matrices};
    use rand::SeedableRng;

    fn rng() -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(0)
    }

    #[test]
    fn divisor_identities_both_models() {
        for group in [KGroup::Translations { n: 2 }, KGroup::Heisenberg { k: 1 }] {
            let n = group.dim();
            let mut r = rng();
            for _ in 0..1000 {
                let x = rand_vec(&mut r, n);
                let y = rand_vec(&mut r, n);
                let z = rand_vec(&mut r, n);
                // act(Φ(y,x), x) = y
                let back = group.act(&group.divisor(&y, &x), &x);
                assert!(max_abs_diff(&back, &y) <= 1e-12);
                // Φ(y,x)^{-1} = Φ(x,y)
                let lhs = group.inv(&group.divisor(&y, &x));
                assert!(max_abs_diff(&lhs, &group.divisor(&x, &y)) <= 1e-12);
                // Φ(z,y) Φ(y,x) = Φ(z,x)
                let prod = group.mul(&group.divisor(&z, &y), &group.divisor(&y, &x));
                assert!(max_abs_diff(&prod, &group.divisor(&z, &x)) <= 1e-12);
            }
            // Φ(x, x) = e
            let x = rand_vec(&mut r, n);
            assert!(max_abs_diff(&group.divisor(&x, &x), &group.identity()) <= 1e-15);
        }
    }

    #[test]
    fn heisenberg_divisor_matches_matrix_oracle() {
        // (a,b,c) as the unipotent matrix [[1,a,c],[0,1,b],[0,0,1]]:
        // the divisor y x^{-1} must match the matrix product.
        let g = KGroup::Heisenberg { k: 1 };
        let to_mat = |v: &[f64]| {
            DMatrix::from_row_slice(3, 3, &[1.0, v[0], v[2], 0.0, 1.0, v[1], 0.0, 0.0, 1.0])
        };
        let mut r = rng();
        for _ in 0..100 {
            let x = rand_vec(&mut r, 3);
            let y = rand_vec(&mut r, 3);
            let phi = g.divisor(&y, &x);
            let oracle = to_mat(&y) * to_mat(&x).try_inverse().unwrap();
            assert!((oracle[(0, 1)] - phi[0]).abs() <= 1e-12);
            assert!((oracle[(1, 2)] - phi[1]).abs() <= 1e-12);
            assert!((oracle[(0, 2)] - phi[2]).abs() <= 1e-12);
        }
    }

    #[test]
    fn groupoid_axioms_random_samples() {
        for group in [KGroup::Translations { n: 2 }, KGroup::Heisenberg { k: 1 }] {
            let n = group.dim();
            let mut r = rng();
            for _ in 0..200 {
                let x = rand_vec(&mut r, n);
                let a1 = GroupoidArrow {
                    k: rand_vec(&mut r, n),
                    x: x.clone(),
                    a: near_identity(&mut r, n),
                };
                let a2 = GroupoidArrow {
                    k: rand_vec(&mut r, n),
                    x: a1.target(&group),
                    a: near_identity(&mut r, n),
                };
                let a3 = GroupoidArrow {
                    k: rand_vec(&mut r, n),
                    x: a2.target(&group),
                    a: near_identity(&mut r, n),
                };
                // associativity
                let left = compose(&group, &a3, &compose(&group, &a2, &a1).unwrap()).unwrap();
                let right = compose(&group, &compose(&group, &a3, &a2).unwrap(), &a1).unwrap();
                assert!(max_abs_diff(&left.k, &right.k) <= 1e-12);
                assert!(crate::curvature::mat_max_abs(&(left.a.clone() - right.a.clone())) <= 1e-12);
                // units
                let u_src = GroupoidArrow::unit(&group, a1.x.clone());
                let ua = compose(&group, &a1, &u_src).unwrap();
                assert!(max_abs_diff(&ua.k, &a1.k) <= 1e-12);
                // inverses compose to the unit at the source
                let inv = a1.inverse(&group).unwrap();
                let id = compose(&group, &inv, &a1).unwrap();
                assert!(max_abs_diff(&id.k, &group.identity()) <= 1e-12);
            }
        }
    }

    #[test]
    fn omega_translations_identity_matrix_extracts_v1() {
        let group = KGroup::Translations { n: 2 };
        let mut r = rng();
        for _ in 0..50 {
            let arrow = GroupoidArrow {
                k: rand_vec(&mut r, 2),
                x: rand_vec(&mut r, 2),
                a: DMatrix::identity(2, 2),
            };
            let v1 = rand_vec(&mut r, 2);
            let v2 = rand_vec(&mut r, 2);
            let w = pfaffian_omega(&group, &arrow, &v1, &v2, &[0.0, 0.0]);
            assert!(max_abs_diff(&w, &v1) <= 1e-12);
        }
    }

    #[test]
    fn omega_vanishes_on_zero_tangents_and_heisenberg_unit_case() {
        let group = KGroup::Heisenberg { k: 1 };
        let zero = vec![0.0; 3];
        let arrow = GroupoidArrow {
            k: vec![0.4, -0.2, 0.7],
            x: vec![0.0; 3],
            a: DMatrix::identity(3, 3),
        };
        let w = pfaffian_omega(&group, &arrow, &zero, &zero, &zero);
        assert!(w.iter().all(|v| v.abs() <= 1e-12));
        // A = I at x = 0: the bisection direction (0, v2, 0) is annihilated
        let v2 = vec![0.3, 0.5, -0.1];
        let w2 = pfaffian_omega(&group, &arrow, &zero, &v2, &zero);
        assert!(w2.iter().all(|v| v.abs() <= 1e-6), "{w2:?}");
    }

    #[test]
    fn holonomic_bisections_both_models() {
        let grid2 = cube_grid(2, 4);
        let g = KGroup::Translations { n: 2 };
        let mut r = rng();
        for _ in 0..20 {
            let k = rand_vec(&mut r, 2);
            assert!(holonomic_bisection_residual(&g, &k, &grid2) <= 1e-12);
        }
        let h = KGroup::Heisenberg { k: 1 };
        let grid3 = cube_grid(3, 3);
        for _ in 0..20 {
            let k = rand_vec(&mut r, 3);
            assert!(holonomic_bisection_residual(&h, &k, &grid3) <= 1e-6);
        }
        // unit bisection
        assert!(holonomic_bisection_residual(&h, &h.identity(), &grid3) <= 1e-9);
    }

    #[test]
    fn multiplicativity_residuals() {
        let mut r = rng();
        let g = KGroup::Translations { n: 2 };
        assert!(multiplicativity_residual(&g, &mut r, 100).unwrap() <= 1e-10);
        let h = KGroup::Heisenberg { k: 1 };
        assert!(multiplicativity_residual(&h, &mut r, 100).unwrap() <= 1e-5);
    }

    #[test]
    fn isotropy_action_examples() {
        // translations: the action is the matrix action
        let g = KGroup::Translations { n: 2 };
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 0.0, 1.0]);
        let out = isotropy_action(&g, &m, &[1.0, 1.0]).unwrap();
        assert!(max_abs_diff(&out, &[3.0, 1.0]) <= 1e-12);
        // dphi = I acts as the identity on K
        let h = KGroup::Heisenberg { k: 1 };
        let id = DMatrix::identity(3, 3);
        let k = vec![0.3, -0.8, 0.2];
        assert!(max_abs_diff(&isotropy_action(&h, &id, &k).unwrap(), &k) <= 1e-12);
        // Φ_{x0}(k) = (a, b, c) in coordinates
        let pt = h.act(&k, &h.base_point());
        assert!(max_abs_diff(&pt, &k) <= 1e-15);
        // group action law on random samples
        let mut r = rng();
        for _ in 0..100 {
            let m1 = near_identity(&mut r, 3);
            let m2 = near_identity(&mut r, 3);
            let k = rand_vec(&mut r, 3);
            let lhs = isotropy_action(&h, &(&m1 * &m2), &k).unwrap();
            let rhs = isotropy_action(&h, &m1, &isotropy_action(&h, &m2, &k).unwrap()).unwrap();
            assert!(max_abs_diff(&lhs, &rhs) <= 1e-8);
        }
        assert!(matches!(
            isotropy_action(&h, &DMatrix::zeros(3, 3), &k),
            Err(GroupoidError::SingularDifferential)
        ));
    }

    #[test]
    fn lie_algebra_of_models() {
        let t = lie_algebra_of_k(&KGroup::Translations { n: 3 }).unwrap();
        assert!(t.structure_constants().iter().all(num::Zero::is_zero));
        let h = lie_algebra_of_k(&KGroup::Heisenberg { k: 1 }).unwrap();
        assert_eq!(h.structure_constants(), heisenberg(1).structure_constants());
    }

    #[test]
    fn reductive_extension_translations_gl() {
        let ext = build_reductive_extension(&KGroup::Translations { n: 2 }, &gl_matrices(2))
            .unwrap();
        // gl(n) ⋉ ab is Lie and the rep is the standard one
        assert!(ext.cte.z_bracket().is_lie());
        for (a, m) in gl_matrices(2).iter().enumerate() {
            assert_eq!(ext.rep.matrix(a), m);
        }
    }

    #[test]
    fn reductive_extension_heisenberg_sp11() {
        let ext =
            build_reductive_extension(&KGroup::Heisenberg { k: 1 }, &sp_k1_matrices(1)).unwrap();
        assert_eq!(ext.k.structure_constants(), heisenberg(1).structure_constants());
        // the snapped rep is the standard matrix action
        for (a, m) in sp_k1_matrices(1).iter().enumerate() {
            assert_eq!(ext.rep.matrix(a), m);
        }
        assert!(!ext.cte.z_bracket().is_lie());
        assert!(check_reductive(&ext.cte, &ext.splitting).reductive);
    }

    #[test]
    fn reductive_extension_trivial_g() {
        let ext = build_reductive_extension(&KGroup::Heisenberg { k: 1 }, &[]).unwrap();
        assert_eq!(ext.cte.z_bracket().structure_constants(), heisenberg(1).structure_constants());
    }
}
