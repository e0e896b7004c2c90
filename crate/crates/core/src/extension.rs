//! Short exact sequences of representations `0 -> h -> Z -> V -> 0`,
//! splittings, Cartan-type extensions and the reductivity checks.

use crate::algebra::{semidirect, AlmostLieAlgebra};
use crate::linalg::{RatMat, Rational, Subspace};
use crate::rep::LinearRep;
use num::Zero;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExtensionError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("the given map is not a one-sided splitting")]
    NotASplitting,
    #[error("extension is not reductive for the given splitting (witness {0:?})")]
    NotReductive(ReductiveWitness),
}

/// Representations of a common acting algebra on the three spaces of an
/// extension. Optional: file-loaded extensions usually come without one.
#[derive(Debug, Clone)]
pub struct ActingReps {
    pub algebra: AlmostLieAlgebra,
    pub on_h: LinearRep,
    pub on_z: LinearRep,
    pub on_v: LinearRep,
}

/// `0 -> h -i-> Z -p-> V -> 0` with exact rational maps.
#[derive(Debug, Clone)]
pub struct RepExtension {
    h_dim: usize,
    z_dim: usize,
    v_dim: usize,
    i: RatMat,
    p: RatMat,
    acting: Option<ActingReps>,
}

/// Outcome of `check_exact`; failures are carried, not thrown.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactReport {
    pub i_injective: bool,
    pub p_surjective: bool,
    pub exact_at_z: bool,
    /// `None` when no acting representations were supplied.
    pub i_equivariant: Option<bool>,
    pub p_equivariant: Option<bool>,
    /// basis index of the acting algebra witnessing an equivariance failure
    pub equivariance_witness: Option<usize>,
}

impl ExactReport {
    pub fn passed(&self) -> bool {
        self.i_injective
            && self.p_surjective
            && self.exact_at_z
            && self.i_equivariant.unwrap_or(true)
            && self.p_equivariant.unwrap_or(true)
    }
}

impl RepExtension {
    pub fn new(i: RatMat, p: RatMat, acting: Option<ActingReps>) -> Result<Self, ExtensionError> {
        let h_dim = i.cols();
        let z_dim = i.rows();
        let v_dim = p.rows();
        if p.cols() != z_dim {
            return Err(ExtensionError::Shape(format!(
                "p is {}x{}, want {}x{}",
                p.rows(),
                p.cols(),
                v_dim,
                z_dim
            )));
        }
        if let Some(a) = &acting {
            if a.on_h.space_dim() != h_dim
                || a.on_z.space_dim() != z_dim
                || a.on_v.space_dim() != v_dim
            {
                return Err(ExtensionError::Shape("acting representation dimensions".into()));
            }
        }
        Ok(RepExtension { h_dim, z_dim, v_dim, i, p, acting })
    }

    pub fn h_dim(&self) -> usize {
        self.h_dim
    }

    pub fn z_dim(&self) -> usize {
        self.z_dim
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn i(&self) -> &RatMat {
        &self.i
    }

    pub fn p(&self) -> &RatMat {
        &self.p
    }

    pub fn acting(&self) -> Option<&ActingReps> {
        self.acting.as_ref()
    }

    /// Verify injectivity, surjectivity, `im(i) = ker(p)` and (when acting
    /// representations are present) equivariance of `i` and `p`.
    pub fn check_exact(&self) -> ExactReport {
        let i_injective = self.i.rank() == self.h_dim;
        let p_surjective = self.p.rank() == self.v_dim;
        let im_i = Subspace::from_span(self.z_dim, &self.i.image_basis());
        let ker_p = Subspace::from_span(self.z_dim, &self.p.kernel_basis());
        let exact_at_z = im_i.dim() == ker_p.dim()
            && ker_p.basis().iter().all(|v| im_i.contains(v));
        let (mut i_eq, mut p_eq, mut witness) = (None, None, None);
        if let Some(a) = &self.acting {
            let mut i_ok = true;
            let mut p_ok = true;
            for idx in 0..a.algebra.dim() {
                if self.i.mul(a.on_h.matrix(idx)) != a.on_z.matrix(idx).mul(&self.i) {
                    i_ok = false;
                    witness.get_or_insert(idx);
                }
                if self.p.mul(a.on_z.matrix(idx)) != a.on_v.matrix(idx).mul(&self.p) {
                    p_ok = false;
                    witness.get_or_insert(idx);
                }
            }
            i_eq = Some(i_ok);
            p_eq = Some(p_ok);
        }
        ExactReport {
            i_injective,
            p_surjective,
            exact_at_z,
            i_equivariant: i_eq,
            p_equivariant: p_eq,
            equivariance_witness: witness,
        }
    }
}

/// A left/right splitting pair with `l∘i = id_h`, `p∘r = id_V`,
/// `i∘l + r∘p = id_Z`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplittingPair {
    pub l: RatMat,
    pub r: RatMat,
}

impl SplittingPair {
    pub fn validate(&self, ext: &RepExtension) -> Result<(), ExtensionError> {
        let ok = self.l.mul(ext.i()) == RatMat::identity(ext.h_dim())
            && ext.p().mul(&self.r) == RatMat::identity(ext.v_dim())
            && ext.i().mul(&self.l).add(&self.r.mul(ext.p())) == RatMat::identity(ext.z_dim());
        if ok {
            Ok(())
        } else {
            Err(ExtensionError::NotASplitting)
        }
    }
}

/// One side of a splitting, as handed to `complete_splitting`.
#[derive(Debug, Clone)]
pub enum OneSided {
    Left(RatMat),
    Right(RatMat),
}

/// Complete a one-sided splitting to the unique pair with
/// `i∘l + r∘p = id_Z`. Also reports whether the computed partner is
/// equivariant (exactly when the given side is, by the splitting identities).
pub fn complete_splitting(
    ext: &RepExtension,
    given: OneSided,
) -> Result<(SplittingPair, Option<bool>), ExtensionError> {
    let id_z = RatMat::identity(ext.z_dim());
    let pair = match given {
        OneSided::Left(l) => {
            if l.rows() != ext.h_dim() || l.cols() != ext.z_dim() {
                return Err(ExtensionError::Shape("left splitting shape".into()));
            }
            if l.mul(ext.i()) != RatMat::identity(ext.h_dim()) {
                return Err(ExtensionError::NotASplitting);
            }
            // r = (id - i l) s for any right inverse s of p; independent of s
            let s = right_inverse(ext.p()).ok_or(ExtensionError::NotASplitting)?;
            let r = id_z.sub(&ext.i().mul(&l)).mul(&s);
            SplittingPair { l, r }
        }
        OneSided::Right(r) => {
            if r.rows() != ext.z_dim() || r.cols() != ext.v_dim() {
                return Err(ExtensionError::Shape("right splitting shape".into()));
            }
            if ext.p().mul(&r) != RatMat::identity(ext.v_dim()) {
                return Err(ExtensionError::NotASplitting);
            }
            // l = j (id - r p) with j the inverse of i onto its image
            let j = left_inverse(ext.i()).ok_or(ExtensionError::NotASplitting)?;
            let l = j.mul(&id_z.sub(&r.mul(ext.p())));
            SplittingPair { l, r }
        }
    };
    pair.validate(ext)?;
    let eq = ext.acting().map(|a| {
        (0..a.algebra.dim()).all(|idx| {
            pair.l.mul(a.on_z.matrix(idx)) == a.on_h.matrix(idx).mul(&pair.l)
                && pair.r.mul(a.on_v.matrix(idx)) == a.on_z.matrix(idx).mul(&pair.r)
        })
    });
    Ok((pair, eq))
}

/// Any `s` with `p s = id` (free variables at zero), if `p` is surjective.
fn right_inverse(p: &RatMat) -> Option<RatMat> {
    let cols: Option<Vec<Vec<Rational>>> = (0..p.rows())
        .map(|j| {
            let mut e = vec![Rational::zero(); p.rows()];
            e[j] = num::One::one();
            p.solve(&e)
        })
        .collect();
    Some(RatMat::from_cols(&cols?))
}

/// Any `j` with `j i = id` for injective `i`.
fn left_inverse(i: &RatMat) -> Option<RatMat> {
    right_inverse(&i.transpose()).map(|m| m.transpose())
}

/// Cartan-type extension: the sequence plus an almost bracket on `Z` making
/// `i` a bracket morphism from `(h, h_bracket)`.
#[derive(Debug, Clone)]
pub struct CartanTypeExtension {
    ext: RepExtension,
    z_bracket: AlmostLieAlgebra,
    h_bracket: AlmostLieAlgebra,
    /// Action of `h` on `V`; the datum `check_reductive` recovers from the
    /// `z`-bracket.
    h_rep_on_v: LinearRep,
}

impl CartanTypeExtension {
    pub fn new(
        ext: RepExtension,
        z_bracket: AlmostLieAlgebra,
        h_bracket: AlmostLieAlgebra,
        h_rep_on_v: LinearRep,
    ) -> Result<Self, ExtensionError> {
        if z_bracket.dim() != ext.z_dim() || h_bracket.dim() != ext.h_dim() {
            return Err(ExtensionError::Shape("bracket dimensions".into()));
        }
        if h_rep_on_v.space_dim() != ext.v_dim() || h_rep_on_v.algebra().dim() != ext.h_dim() {
            return Err(ExtensionError::Shape("h action on V".into()));
        }
        // i must be an almost Lie morphism on all basis pairs
        for a in 0..ext.h_dim() {
            for b in (a + 1)..ext.h_dim() {
                let lhs = ext.i().mul_vec(&h_bracket.bracket_basis(a, b)).expect("shape");
                let rhs = z_bracket
                    .bracket(&ext.i().col(a), &ext.i().col(b))
                    .expect("shape");
                if lhs != rhs {
                    return Err(ExtensionError::Shape(format!(
                        "i is not a bracket morphism at basis pair ({a}, {b})"
                    )));
                }
            }
        }
        Ok(CartanTypeExtension { ext, z_bracket, h_bracket, h_rep_on_v })
    }

    pub fn ext(&self) -> &RepExtension {
        &self.ext
    }

    pub fn z_bracket(&self) -> &AlmostLieAlgebra {
        &self.z_bracket
    }

    pub fn h_bracket(&self) -> &AlmostLieAlgebra {
        &self.h_bracket
    }

    pub fn h_rep_on_v(&self) -> &LinearRep {
        &self.h_rep_on_v
    }
}

/// Basis pair (and which condition) witnessing a reductivity failure.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductiveWitness {
    /// "bracket" (condition a) or "action" (condition b)
    pub condition: &'static str,
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductiveReport {
    pub reductive: bool,
    pub witness: Option<ReductiveWitness>,
}

/// Reductivity of a Cartan-type extension with respect to a splitting:
/// (a) `l` is an almost Lie morphism on all basis pairs of `Z`;
/// (b) the `h`-action on `V` is recovered by `p([i(a), r(v)]_z)`.
pub fn check_reductive(cte: &CartanTypeExtension, sp: &SplittingPair) -> ReductiveReport {
    let ext = cte.ext();
    debug_assert!(sp.validate(ext).is_ok());
    for a in 0..ext.z_dim() {
        for b in (a + 1)..ext.z_dim() {
            let za = crate::algebra::basis_vec(ext.z_dim(), a);
            let zb = crate::algebra::basis_vec(ext.z_dim(), b);
            let lhs = sp.l.mul_vec(&cte.z_bracket.bracket(&za, &zb).expect("shape")).expect("shape");
            let rhs = cte
                .h_bracket
                .bracket(&sp.l.col(a), &sp.l.col(b))
                .expect("shape");
            if lhs != rhs {
                return ReductiveReport {
                    reductive: false,
                    witness: Some(ReductiveWitness { condition: "bracket", a, b }),
                };
            }
        }
    }
    for a in 0..ext.h_dim() {
        for v in 0..ext.v_dim() {
            let ia = ext.i().col(a);
            let rv = sp.r.col(v);
            let br = cte.z_bracket.bracket(&ia, &rv).expect("shape");
            let lhs = ext.p().mul_vec(&br).expect("shape");
            let rhs = cte.h_rep_on_v.matrix(a).col(v);
            if lhs != rhs {
                return ReductiveReport {
                    reductive: false,
                    witness: Some(ReductiveWitness { condition: "action", a, b: v }),
                };
            }
        }
    }
    ReductiveReport { reductive: true, witness: None }
}

/// The unique almost Lie bracket on `V` with `[v,w] = p([r(v), r(w)]_z)`.
///
/// Requires reductivity; also asserts that `r` becomes a bracket morphism
/// onto its image.
pub fn induced_quotient_bracket(
    cte: &CartanTypeExtension,
    sp: &SplittingPair,
) -> Result<AlmostLieAlgebra, ExtensionError> {
    let report = check_reductive(cte, sp);
    if !report.reductive {
        return Err(ExtensionError::NotReductive(report.witness.unwrap()));
    }
    let ext = cte.ext();
    let v_dim = ext.v_dim();
    let names = (0..v_dim).map(|i| format!("k{}", i + 1)).collect();
    let mut sc = vec![Rational::zero(); v_dim * v_dim * v_dim];
    for a in 0..v_dim {
        for b in (a + 1)..v_dim {
            let br = cte.z_bracket.bracket(&sp.r.col(a), &sp.r.col(b)).expect("shape");
            let pv = ext.p().mul_vec(&br).expect("shape");
            // r is a bracket morphism onto its image: r([a,b]_k) = [r a, r b]_z
            let rv = sp.r.mul_vec(&pv).expect("shape");
            assert_eq!(rv, br, "r must carry the induced bracket to the z-bracket");
            for i in 0..v_dim {
                sc[i * v_dim * v_dim + a * v_dim + b] = pv[i].clone();
                sc[i * v_dim * v_dim + b * v_dim + a] = -pv[i].clone();
            }
        }
    }
    AlmostLieAlgebra::from_structure_constants(names, sc)
        .map_err(|e| ExtensionError::Shape(e.to_string()))
}

/// Verify that `z -> h ⋉ k`, `z -> (l(z), p(z))` preserves brackets on all
/// basis pairs, with `k` the induced quotient bracket.
pub fn semidirect_iso_check(
    cte: &CartanTypeExtension,
    sp: &SplittingPair,
) -> Result<bool, ExtensionError> {
    let k = induced_quotient_bracket(cte, sp)?;
    let hk = semidirect(cte.h_bracket(), cte.h_rep_on_v(), &k)
        .map_err(|e| ExtensionError::Shape(e.to_string()))?;
    let ext = cte.ext();
    let phi = |z: &[Rational]| -> Vec<Rational> {
        let mut out = sp.l.mul_vec(z).expect("shape");
        out.extend(ext.p().mul_vec(z).expect("shape"));
        out
    };
    for a in 0..ext.z_dim() {
        for b in (a + 1)..ext.z_dim() {
            let za = crate::algebra::basis_vec(ext.z_dim(), a);
            let zb = crate::algebra::basis_vec(ext.z_dim(), b);
            let lhs = phi(&cte.z_bracket.bracket(&za, &zb).expect("shape"));
            let rhs = hk.bracket(&phi(&za), &phi(&zb)).expect("shape");
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Canonical reductive Cartan-type extension `z = h ⋉ k` with projection and
/// inclusion splittings. Returns the extension and its canonical pair.
pub fn semidirect_extension(
    h: &AlmostLieAlgebra,
    rep_on_k: &LinearRep,
    k: &AlmostLieAlgebra,
) -> Result<(CartanTypeExtension, SplittingPair), ExtensionError> {
    let z = semidirect(h, rep_on_k, k).map_err(|e| ExtensionError::Shape(e.to_string()))?;
    let (dh, dk) = (h.dim(), k.dim());
    let i = RatMat::from_fn(dh + dk, dh, |r, c| {
        if r == c { num::One::one() } else { Rational::zero() }
    });
    let p = RatMat::from_fn(dk, dh + dk, |r, c| {
        if c == dh + r { num::One::one() } else { Rational::zero() }
    });
    let ext = RepExtension::new(i, p, None)?;
    let l = RatMat::from_fn(dh, dh + dk, |r, c| {
        if r == c { num::One::one() } else { Rational::zero() }
    });
    let r = RatMat::from_fn(dh + dk, dk, |rr, c| {
        if rr == dh + c { num::One::one() } else { Rational::zero() }
    });
    let sp = SplittingPair { l, r };
    sp.validate(&ext)?;
    let cte = CartanTypeExtension::new(ext, z, h.clone(), rep_on_k.clone())?;
    Ok((cte, sp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, heisenberg, sp_k1, sp_k1_matrices, standard_rep, trivial};
    use crate::linalg::rat;

    fn product_cte() -> (CartanTypeExtension, SplittingPair) {
        // h = R (abelian), k = hei3, trivial action: z = h x k
        let h = abelian(1);
        let k = heisenberg(1);
        let rep = LinearRep::zero(h.clone(), 3);
        semidirect_extension(&h, &rep, &k).unwrap()
    }

    #[test]
    fn canonical_maps_pass_exactness() {
        let (cte, _) = product_cte();
        let rep = cte.ext().check_exact();
        assert!(rep.passed());
        assert!(rep.i_injective && rep.p_surjective && rep.exact_at_z);
    }

    #[test]
    fn non_surjective_p_fails_with_report() {
        let i = RatMat::identity(2);
        let p = RatMat::zeros(1, 2);
        let ext = RepExtension::new(i, p, None).unwrap();
        let rep = ext.check_exact();
        assert!(!rep.p_surjective);
        assert!(!rep.passed());
    }

    #[test]
    fn complete_splitting_from_projection() {
        let (cte, canonical) = product_cte();
        let (pair, _) = complete_splitting(cte.ext(), OneSided::Left(canonical.l.clone())).unwrap();
        assert_eq!(pair, canonical);
        let (pair2, _) =
            complete_splitting(cte.ext(), OneSided::Right(canonical.r.clone())).unwrap();
        assert_eq!(pair2, canonical);
    }

    #[test]
    fn complete_splitting_shifted_embedding() {
        // Z = h + V with r(v) = (A v, v): partner must be l(a, v) = a - A v.
        let h = abelian(1);
        let k = abelian(2);
        let rep = LinearRep::zero(h.clone(), 2);
        let (cte, _) = semidirect_extension(&h, &rep, &k).unwrap();
        let a = RatMat::from_rows(&[vec![rat(2), rat(-3)]]);
        let mut r = RatMat::zeros(3, 2);
        for c in 0..2 {
            r.set(0, c, a.at(0, c).clone());
            r.set(1 + c, c, rat(1));
        }
        let (pair, _) = complete_splitting(cte.ext(), OneSided::Right(r)).unwrap();
        // l(alpha, v) = alpha - A v
        assert_eq!(pair.l.at(0, 0), &rat(1));
        assert_eq!(pair.l.at(0, 1), &rat(-2));
        assert_eq!(pair.l.at(0, 2), &rat(3));
    }

    #[test]
    fn non_splitting_is_rejected() {
        let (cte, _) = product_cte();
        let bad = RatMat::zeros(1, 4);
        assert!(matches!(
            complete_splitting(cte.ext(), OneSided::Left(bad)),
            Err(ExtensionError::NotASplitting)
        ));
    }

    #[test]
    fn semidirect_extension_is_reductive_and_round_trips() {
        let s = sp_k1(1);
        let k = heisenberg(1);
        let rep = standard_rep(&s, sp_k1_matrices(1));
        let (cte, sp) = semidirect_extension(&s, &rep, &k).unwrap();
        assert!(check_reductive(&cte, &sp).reductive);
        let extracted = induced_quotient_bracket(&cte, &sp).unwrap();
        assert_eq!(extracted.structure_constants(), k.structure_constants());
        assert!(semidirect_iso_check(&cte, &sp).unwrap());
    }

    #[test]
    fn trivial_h_is_vacuously_reductive() {
        let h = trivial();
        let k = heisenberg(1);
        let rep = LinearRep::new(h.clone(), 3, vec![]).unwrap();
        let (cte, sp) = semidirect_extension(&h, &rep, &k).unwrap();
        assert!(check_reductive(&cte, &sp).reductive);
    }

    #[test]
    fn perturbed_splitting_breaks_reductivity() {
        // Same z, second valid splitting l' = l + A p: condition (a) picks up
        // A([p z1, p z2]_k), nonzero on the pair mapping to [e1, e2] = e3.
        let (cte, canonical) = product_cte();
        let a = RatMat::from_rows(&[vec![rat(0), rat(0), rat(1)]]); // A: V -> h, e3 -> 1
        let l2 = canonical.l.add(&a.mul(cte.ext().p()));
        let (pair, _) = complete_splitting(cte.ext(), OneSided::Left(l2)).unwrap();
        let report = check_reductive(&cte, &pair);
        assert!(!report.reductive);
        let w = report.witness.unwrap();
        assert_eq!(w.condition, "bracket");
        // canonical splitting still passes: reductivity is splitting-sensitive
        assert!(check_reductive(&cte, &canonical).reductive);
        assert!(matches!(
            induced_quotient_bracket(&cte, &pair),
            Err(ExtensionError::NotReductive(_))
        ));
    }
}
