//! Finite-dimensional almost Lie algebras over exact rationals.
//!
//! Bracket coefficient convention, used everywhere in this crate:
//! `[e_j, e_k] = sum_i d^i_jk e_i`, with `d^i_jk` antisymmetric in `(j, k)`.

use crate::linalg::{rat, LinAlgError, RatMat, Rational, Subspace};
use crate::rep::LinearRep;
use num::{One, Zero};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("structure constants violate antisymmetry at (i={i}, j={j}, k={k})")]
    NotAntisymmetric { i: usize, j: usize, k: usize },
    #[error("vector has length {got}, algebra dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("matrix set is not closed under commutators (pair {a}, {b})")]
    NotClosed { a: usize, b: usize },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// A vector space with a bilinear antisymmetric bracket; Jacobi not required.
#[derive(Debug, Clone, PartialEq)]
pub struct AlmostLieAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    /// `sc[i][j][k] = d^i_jk`, flattened row-major.
    sc: Vec<Rational>,
}

impl AlmostLieAlgebra {
    /// Build from structure constants, checking `d^i_jk = -d^i_kj` exactly.
    pub fn from_structure_constants(
        basis_names: Vec<String>,
        sc: Vec<Rational>,
    ) -> Result<Self, AlgebraError> {
        let dim = basis_names.len();
        assert_eq!(sc.len(), dim * dim * dim, "structure constant array has wrong size");
        let alg = AlmostLieAlgebra { dim, basis_names, sc };
        for i in 0..dim {
            for j in 0..dim {
                for k in j..dim {
                    if *alg.d(i, j, k) != -alg.d(i, k, j).clone() {
                        return Err(AlgebraError::NotAntisymmetric { i, j, k });
                    }
                }
            }
        }
        Ok(alg)
    }

    /// Build from a closure giving `d^i_jk` for `j < k`; antisymmetry is filled in.
    pub fn from_upper(
        basis_names: Vec<String>,
        mut d: impl FnMut(usize, usize, usize) -> Rational,
    ) -> Self {
        let dim = basis_names.len();
        let mut sc = vec![Rational::zero(); dim * dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                for k in (j + 1)..dim {
                    let v = d(i, j, k);
                    sc[i * dim * dim + j * dim + k] = v.clone();
                    sc[i * dim * dim + k * dim + j] = -v;
                }
            }
        }
        AlmostLieAlgebra { dim, basis_names, sc }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// Structure constant `d^i_jk`.
    pub fn d(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.sc[i * self.dim * self.dim + j * self.dim + k]
    }

    fn check_len(&self, v: &[Rational]) -> Result<(), AlgebraError> {
        if v.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        Ok(())
    }

    /// `[u, v]^i = sum_jk d^i_jk u^j v^k`, exact.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
        self.check_len(u)?;
        self.check_len(v)?;
        let mut out = vec![Rational::zero(); self.dim];
        for j in 0..self.dim {
            if u[j].is_zero() {
                continue;
            }
            for k in 0..self.dim {
                if v[k].is_zero() {
                    continue;
                }
                let uv = &u[j] * &v[k];
                for (i, o) in out.iter_mut().enumerate() {
                    let c = self.d(i, j, k);
                    if !c.is_zero() {
                        *o += c * &uv;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Bracket of basis elements `e_j`, `e_k`.
    pub fn bracket_basis(&self, j: usize, k: usize) -> Vec<Rational> {
        (0..self.dim).map(|i| self.d(i, j, k).clone()).collect()
    }

    /// `[[u,v],w] + [[v,w],u] + [[w,u],v]`, exact.
    pub fn jacobiator(
        &self,
        u: &[Rational],
        v: &[Rational],
        w: &[Rational],
    ) -> Result<Vec<Rational>, AlgebraError> {
        let a = self.bracket(&self.bracket(u, v)?, w)?;
        let b = self.bracket(&self.bracket(v, w)?, u)?;
        let c = self.bracket(&self.bracket(w, u)?, v)?;
        Ok((0..self.dim).map(|i| &a[i] + &b[i] + &c[i]).collect())
    }

    /// First basis triple `(j, k, l)` with a nonvanishing jacobiator, if any.
    ///
    /// The jacobiator of an antisymmetric bracket is alternating, so ordered
    /// triples `j < k < l` suffice.
    pub fn jacobi_witness(&self) -> Option<(usize, usize, usize)> {
        let basis: Vec<Vec<Rational>> = (0..self.dim)
            .map(|j| {
                let mut v = vec![Rational::zero(); self.dim];
                v[j] = Rational::one();
                v
            })
            .collect();
        for j in 0..self.dim {
            for k in (j + 1)..self.dim {
                for l in (k + 1)..self.dim {
                    let jac = self.jacobiator(&basis[j], &basis[k], &basis[l]).unwrap();
                    if !jac.iter().all(Zero::is_zero) {
                        return Some((j, k, l));
                    }
                }
            }
        }
        None
    }

    /// True iff the Jacobi identity holds on all basis triples, exactly.
    pub fn is_lie(&self) -> bool {
        self.jacobi_witness().is_none()
    }

    /// True iff `[alg, s] ⊆ s`, decided by exact membership.
    pub fn is_ideal(&self, s: &Subspace) -> Result<bool, AlgebraError> {
        if s.ambient_dim() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: s.ambient_dim(),
            });
        }
        for j in 0..self.dim {
            let mut ej = vec![Rational::zero(); self.dim];
            ej[j] = Rational::one();
            for b in s.basis() {
                if !s.contains(&self.bracket(&ej, b)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Adjoint representation: `ad(e_j)` has entries `(ad e_j)^i_k = d^i_jk`.
    pub fn adjoint_rep(&self) -> LinearRep {
        let mats = (0..self.dim)
            .map(|j| RatMat::from_fn(self.dim, self.dim, |i, k| self.d(i, j, k).clone()))
            .collect();
        LinearRep::new(self.clone(), self.dim, mats).expect("adjoint matrices are square")
    }

    /// Quotient by an ideal, in the basis of standard-vector coset
    /// representatives. Recomputed with a second complement (representatives
    /// shifted by ideal elements) and asserted equal.
    pub fn quotient(&self, ideal: &Subspace) -> Result<AlmostLieAlgebra, AlgebraError> {
        if !self.is_ideal(ideal)? {
            return Err(AlgebraError::NotAnIdeal);
        }
        let comp = ideal.complement();
        let first = self.quotient_with_complement(ideal, &comp)?;
        // Same cosets, different representatives: shift by the ideal basis sum.
        let shifted: Vec<Vec<Rational>> = comp
            .iter()
            .map(|c| {
                let mut v = c.clone();
                for b in ideal.basis() {
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi += bi;
                    }
                }
                v
            })
            .collect();
        let second = self.quotient_with_complement(ideal, &shifted)?;
        assert_eq!(
            first.sc, second.sc,
            "quotient bracket depends on the complement choice; not an ideal?"
        );
        Ok(first)
    }

    fn quotient_with_complement(
        &self,
        ideal: &Subspace,
        comp: &[Vec<Rational>],
    ) -> Result<AlmostLieAlgebra, AlgebraError> {
        let q = comp.len();
        let names = (0..q).map(|a| format!("q{}", a + 1)).collect();
        // Columns: complement representatives then ideal basis; the first q
        // coordinates of [c_a, c_b] in this column set are the quotient bracket.
        let mut cols = comp.to_vec();
        cols.extend(ideal.basis().iter().cloned());
        let mat = RatMat::from_cols(&cols);
        let mut sc = vec![Rational::zero(); q * q * q];
        for a in 0..q {
            for b in (a + 1)..q {
                let br = self.bracket(&comp[a], &comp[b])?;
                let coords = mat.solve(&br).ok_or(AlgebraError::NotAnIdeal)?;
                for i in 0..q {
                    sc[i * q * q + a * q + b] = coords[i].clone();
                    sc[i * q * q + b * q + a] = -coords[i].clone();
                }
            }
        }
        Ok(AlmostLieAlgebra { dim: q, basis_names: names, sc })
    }

    /// Structure constants flattened `(i, j, k)` row-major (mostly for tests).
    pub fn structure_constants(&self) -> &[Rational] {
        &self.sc
    }

    pub fn rename(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim);
        self.basis_names = names;
        self
    }
}

/// True iff `rho(alpha)` acts on `k` by derivations on all basis triples:
/// `rho(a)[v,w] = [rho(a)v, w] + [v, rho(a)w]`, exact.
pub fn is_derivation_action(rep: &LinearRep, k: &AlmostLieAlgebra) -> Result<bool, AlgebraError> {
    if rep.space_dim() != k.dim() {
        return Err(AlgebraError::DimensionMismatch { expected: k.dim(), got: rep.space_dim() });
    }
    Ok(derivation_witness(rep, k)?.is_none())
}

/// First `(a, b, c)` basis triple violating the Leibniz rule, if any.
pub fn derivation_witness(
    rep: &LinearRep,
    k: &AlmostLieAlgebra,
) -> Result<Option<(usize, usize, usize)>, AlgebraError> {
    let n = k.dim();
    for a in 0..rep.algebra().dim() {
        let m = rep.matrix(a);
        for b in 0..n {
            for c in (b + 1)..n {
                let lhs = m.mul_vec(&k.bracket_basis(b, c))?;
                let mb = m.col(b);
                let mc = m.col(c);
                let mut eb = vec![Rational::zero(); n];
                eb[b] = Rational::one();
                let mut ec = vec![Rational::zero(); n];
                ec[c] = Rational::one();
                let r1 = k.bracket(&mb, &ec)?;
                let r2 = k.bracket(&eb, &mc)?;
                if (0..n).any(|i| lhs[i] != &r1[i] + &r2[i]) {
                    return Ok(Some((a, b, c)));
                }
            }
        }
    }
    Ok(None)
}

/// Semidirect product `g ⋉ k` with bracket
/// `[(a,v),(b,w)] = ([a,b]_g, [v,w]_k + a(w) - b(v))`.
///
/// `g` acts through `rep`; no derivation property is required, so the result
/// is in general only almost Lie.
pub fn semidirect(
    g: &AlmostLieAlgebra,
    rep: &LinearRep,
    k: &AlmostLieAlgebra,
) -> Result<AlmostLieAlgebra, AlgebraError> {
    if rep.space_dim() != k.dim() {
        return Err(AlgebraError::DimensionMismatch { expected: k.dim(), got: rep.space_dim() });
    }
    if rep.algebra().dim() != g.dim() {
        return Err(AlgebraError::DimensionMismatch {
            expected: g.dim(),
            got: rep.algebra().dim(),
        });
    }
    let (dg, dk) = (g.dim(), k.dim());
    let mut names: Vec<String> = g.basis_names().to_vec();
    names.extend(k.basis_names().iter().cloned());
    let alg = AlmostLieAlgebra::from_upper(names, |i, j, kk| {
        match (j < dg, kk < dg) {
            // [g, g]: g-components only
            (true, true) => {
                if i < dg {
                    g.d(i, j, kk).clone()
                } else {
                    Rational::zero()
                }
            }
            // [e_j^g, e_k^k] = rho(e_j) e_k, in the k block
            (true, false) => {
                if i >= dg {
                    rep.matrix(j).at(i - dg, kk - dg).clone()
                } else {
                    Rational::zero()
                }
            }
            (false, true) => unreachable!("from_upper only asks j < k"),
            // [k, k]: k-components only
            (false, false) => {
                if i >= dg {
                    k.d(i - dg, j - dg, kk - dg).clone()
                } else {
                    Rational::zero()
                }
            }
        }
    });
    Ok(alg)
}

/// Compute structure constants of a matrix Lie algebra from a basis.
///
/// Fails when the span is not closed under commutators.
pub fn algebra_from_matrix_basis(
    basis_names: Vec<String>,
    mats: &[RatMat],
) -> Result<AlmostLieAlgebra, AlgebraError> {
    let dim = mats.len();
    assert_eq!(basis_names.len(), dim);
    let flat: Vec<Vec<Rational>> = mats
        .iter()
        .map(|m| (0..m.rows()).flat_map(|i| m.row(i)).collect())
        .collect();
    let span = RatMat::from_cols(&flat);
    let mut sc = vec![Rational::zero(); dim * dim * dim];
    for a in 0..dim {
        for b in (a + 1)..dim {
            let comm = mats[a].commutator(&mats[b]);
            let target: Vec<Rational> = (0..comm.rows()).flat_map(|i| comm.row(i)).collect();
            let coords = span.solve(&target).ok_or(AlgebraError::NotClosed { a, b })?;
            for i in 0..dim {
                sc[i * dim * dim + a * dim + b] = coords[i].clone();
                sc[i * dim * dim + b * dim + a] = -coords[i].clone();
            }
        }
    }
    AlmostLieAlgebra::from_structure_constants(basis_names, sc)
}

// ---------------------------------------------------------------------------
// Catalog constructors
// ---------------------------------------------------------------------------

/// Abelian algebra of dimension `n`.
pub fn abelian(n: usize) -> AlmostLieAlgebra {
    let names = (0..n).map(|i| format!("e{}", i + 1)).collect();
    AlmostLieAlgebra::from_upper(names, |_, _, _| Rational::zero())
}

/// Heisenberg algebra of dimension `2k+1`: `[x_i, y_i] = z`.
pub fn heisenberg(k: usize) -> AlmostLieAlgebra {
    let n = 2 * k + 1;
    let mut names: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
    names.extend((1..=k).map(|i| format!("y{i}")));
    names.push("z".into());
    AlmostLieAlgebra::from_upper(names, |i, j, kk| {
        if i == n - 1 && kk == j + k && j < k {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// Basis matrices `E_pq` of `gl(n)`, row-major order.
pub fn gl_matrices(n: usize) -> Vec<RatMat> {
    let mut mats = Vec::new();
    for p in 0..n {
        for q in 0..n {
            let mut m = RatMat::zeros(n, n);
            m.set(p, q, Rational::one());
            mats.push(m);
        }
    }
    mats
}

/// `gl(n)` with basis `E_pq`.
pub fn gl(n: usize) -> AlmostLieAlgebra {
    let names = (0..n)
        .flat_map(|p| (0..n).map(move |q| format!("E{}{}", p + 1, q + 1)))
        .collect();
    algebra_from_matrix_basis(names, &gl_matrices(n)).expect("gl(n) is closed")
}

/// Basis matrices `E_pq - E_qp`, `p < q`, of `so(n)`.
pub fn so_matrices(n: usize) -> Vec<RatMat> {
    let mut mats = Vec::new();
    for p in 0..n {
        for q in (p + 1)..n {
            let mut m = RatMat::zeros(n, n);
            m.set(p, q, Rational::one());
            m.set(q, p, -Rational::one());
            mats.push(m);
        }
    }
    mats
}

pub fn so(n: usize) -> AlmostLieAlgebra {
    let names = (0..n)
        .flat_map(|p| ((p + 1)..n).map(move |q| format!("A{}{}", p + 1, q + 1)))
        .collect();
    algebra_from_matrix_basis(names, &so_matrices(n)).expect("so(n) is closed")
}

/// Basis matrices of `sp(k)` (2k x 2k, `A^T J + J A = 0` with
/// `J = [[0, I], [-I, 0]]`): blocks `[[P, Q], [R, -P^T]]`, `Q`, `R` symmetric.
pub fn sp_matrices(k: usize) -> Vec<RatMat> {
    let n = 2 * k;
    let mut mats = Vec::new();
    for p in 0..k {
        for q in 0..k {
            let mut m = RatMat::zeros(n, n);
            m.set(p, q, Rational::one());
            m.set(k + q, k + p, -Rational::one());
            mats.push(m);
        }
    }
    for p in 0..k {
        for q in p..k {
            let mut m = RatMat::zeros(n, n);
            m.set(p, k + q, Rational::one());
            m.set(q, k + p, Rational::one());
            mats.push(m);
        }
    }
    for p in 0..k {
        for q in p..k {
            let mut m = RatMat::zeros(n, n);
            m.set(k + p, q, Rational::one());
            m.set(k + q, p, Rational::one());
            mats.push(m);
        }
    }
    mats
}

/// Basis matrices of `sp(k, 1)` inside `gl(2k+1)`: block matrices
/// `[[A, b], [0, c]]` with `A` in `sp(k)` (the 2k x 2k diagonal block),
/// `b` a column in `R^{2k}` and `c` a scalar.
pub fn sp_k1_matrices(k: usize) -> Vec<RatMat> {
    let n = 2 * k + 1;
    let mut mats: Vec<RatMat> = sp_matrices(k)
        .into_iter()
        .map(|a| {
            RatMat::from_fn(n, n, |i, j| {
                if i < 2 * k && j < 2 * k {
                    a.at(i, j).clone()
                } else {
                    Rational::zero()
                }
            })
        })
        .collect();
    for p in 0..2 * k {
        let mut m = RatMat::zeros(n, n);
        m.set(p, n - 1, Rational::one());
        mats.push(m);
    }
    let mut c = RatMat::zeros(n, n);
    c.set(n - 1, n - 1, Rational::one());
    mats.push(c);
    mats
}

/// `sp(k, 1)` as an abstract algebra; see `sp_k1_matrices` for the block
/// convention.
pub fn sp_k1(k: usize) -> AlmostLieAlgebra {
    let mats = sp_k1_matrices(k);
    let names = (0..mats.len()).map(|i| format!("s{}", i + 1)).collect();
    algebra_from_matrix_basis(names, &mats).expect("sp(k,1) is closed")
}

/// The standard representation of a matrix algebra on column vectors.
pub fn standard_rep(alg: &AlmostLieAlgebra, mats: Vec<RatMat>) -> LinearRep {
    let n = mats[0].rows();
    LinearRep::new(alg.clone(), n, mats).expect("standard rep dims")
}

/// Standard basis vector `e_j` of length `n`.
pub fn basis_vec(n: usize, j: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[j] = Rational::one();
    v
}

/// Zero-dimensional algebra (useful as a trivial `g`).
pub fn trivial() -> AlmostLieAlgebra {
    AlmostLieAlgebra::from_upper(Vec::new(), |_, _, _| Rational::zero())
}

/// Convenience: `i64` vector to rationals.
pub fn vec_i64(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn e(n: usize, j: usize) -> Vec<Rational> {
        basis_vec(n, j)
    }

    #[test]
    fn abelian_bracket_vanishes() {
        let a = abelian(3);
        assert_eq!(a.bracket(&e(3, 0), &e(3, 1)).unwrap(), vec_i64(&[0, 0, 0]));
        assert!(a.is_lie());
    }

    #[test]
    fn heisenberg_bracket_matches_group_law_expansion() {
        // Oracle: second-order expansion of the group law
        // (x,y,z)*(x',y',z') = (x+x', y+y', z+z'+<x,y'>); the bracket is the
        // antisymmetrised quadratic term B(u,v) - B(v,u).
        let h = heisenberg(1);
        let oracle = |u: &[Rational], v: &[Rational]| -> Vec<Rational> {
            vec![rat(0), rat(0), &u[0] * &v[1] - &v[0] * &u[1]]
        };
        let pairs = [
            (vec_i64(&[1, 0, 0]), vec_i64(&[0, 1, 0])),
            (vec_i64(&[2, 3, 5]), vec_i64(&[-1, 4, 7])),
            (vec![ratq(1, 2), rat(0), rat(1)], vec![rat(3), ratq(-2, 3), rat(0)]),
        ];
        for (u, v) in &pairs {
            assert_eq!(h.bracket(u, v).unwrap(), oracle(u, v));
        }
        assert_eq!(h.bracket(&e(3, 0), &e(3, 1)).unwrap(), e(3, 2));
        assert!(h.is_lie());
    }

    use crate::linalg::ratq;

    #[test]
    fn gl2_bracket_matches_matrix_commutator() {
        let g = gl(2);
        let mats = gl_matrices(2);
        // [E11, E12] = E12: basis order E11,E12,E21,E22
        assert_eq!(g.bracket(&e(4, 0), &e(4, 1)).unwrap(), e(4, 1));
        // independent oracle: contract sc vs multiply matrices, random rationals
        let u = vec![rat(1), ratq(1, 2), rat(-3), rat(2)];
        let v = vec![rat(0), rat(5), ratq(2, 3), rat(-1)];
        let lift = |c: &[Rational]| {
            let mut m = RatMat::zeros(2, 2);
            for (idx, mat) in mats.iter().enumerate() {
                m = m.add(&mat.scale(&c[idx]));
            }
            m
        };
        let comm = lift(&u).commutator(&lift(&v));
        let got = lift(&g.bracket(&u, &v).unwrap());
        assert_eq!(comm, got);
        assert!(g.is_lie());
    }

    #[test]
    fn sp11_is_six_dimensional_lie() {
        let s = sp_k1(1);
        assert_eq!(s.dim(), 6);
        assert!(s.is_lie());
        assert!(so(3).is_lie());
        assert!(gl(3).is_lie());
    }

    #[test]
    fn sp11_standard_action_on_hei3_is_not_by_derivations() {
        let s = sp_k1(1);
        let rep = standard_rep(&s, sp_k1_matrices(1));
        let h = heisenberg(1);
        let w = derivation_witness(&rep, &h).unwrap();
        assert!(w.is_some());
        // gl(n) acts on abelian R^n by derivations (both sides vanish)
        let g = gl(2);
        let rep2 = standard_rep(&g, gl_matrices(2));
        assert!(is_derivation_action(&rep2, &abelian(2)).unwrap());
    }

    #[test]
    fn semidirect_catalog() {
        // 0 ⋉ k = k
        let h = heisenberg(1);
        let z = semidirect(&trivial(), &LinearRep::new(trivial(), 3, vec![]).unwrap(), &h).unwrap();
        assert_eq!(z.structure_constants(), h.structure_constants());

        // gl(n) ⋉ ab is Lie
        let g = gl(2);
        let z = semidirect(&g, &standard_rep(&g, gl_matrices(2)), &abelian(2)).unwrap();
        assert!(z.is_lie());

        // sp(1,1) ⋉ hei3 is almost Lie but not Lie
        let s = sp_k1(1);
        let z = semidirect(&s, &standard_rep(&s, sp_k1_matrices(1)), &heisenberg(1)).unwrap();
        assert!(!z.is_lie());
        assert!(z.jacobi_witness().is_some());
    }

    #[test]
    fn ideals_in_heisenberg() {
        let h = heisenberg(1);
        let center = Subspace::from_span(3, &[vec_i64(&[0, 0, 1])]);
        assert!(h.is_ideal(&center).unwrap());
        let span_e1 = Subspace::from_span(3, &[vec_i64(&[1, 0, 0])]);
        assert!(!h.is_ideal(&span_e1).unwrap());
        assert!(h.is_ideal(&Subspace::full(3)).unwrap());
    }

    #[test]
    fn adjoint_examples() {
        let a = abelian(3).adjoint_rep();
        assert!((0..3).all(|j| a.matrix(j).is_zero()));

        let h = heisenberg(1).adjoint_rep();
        assert_eq!(h.matrix(0).mul_vec(&e(3, 1)).unwrap(), e(3, 2));
        assert!(h.matrix(0).mul_vec(&e(3, 2)).unwrap().iter().all(num::Zero::is_zero));

        // adjoint of a Lie algebra is a representation
        assert!(gl(2).adjoint_rep().is_representation());
        assert!(heisenberg(2).adjoint_rep().is_representation());
    }

    #[test]
    fn quotients() {
        let h = heisenberg(1);
        let center = Subspace::from_span(3, &[vec_i64(&[0, 0, 1])]);
        let q = h.quotient(&center).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.structure_constants().iter().all(num::Zero::is_zero));

        let full = h.quotient(&Subspace::full(3)).unwrap();
        assert_eq!(full.dim(), 0);

        // gl(2)/sl(2) is abelian of dim 1 (sl(2) spanned by E12, E21, E11-E22)
        let g = gl(2);
        let sl2 = Subspace::from_span(
            4,
            &[vec_i64(&[0, 1, 0, 0]), vec_i64(&[0, 0, 1, 0]), vec_i64(&[1, 0, 0, -1])],
        );
        assert!(g.is_ideal(&sl2).unwrap());
        let q = g.quotient(&sl2).unwrap();
        assert_eq!(q.dim(), 1);
        assert!(q.structure_constants().iter().all(num::Zero::is_zero));

        assert_eq!(g.quotient(&Subspace::from_span(4, &[vec_i64(&[0, 1, 0, 0])])), Err(AlgebraError::NotAnIdeal));
    }

    #[test]
    fn antisymmetry_rejected_at_construction() {
        let mut sc = vec![Rational::zero(); 8];
        sc[0 * 4 + 0 * 2 + 1] = rat(1); // d^1_12 = 1 but d^1_21 left at 0
        assert!(matches!(
            AlmostLieAlgebra::from_structure_constants(vec!["a".into(), "b".into()], sc),
            Err(AlgebraError::NotAntisymmetric { .. })
        ));
    }
}
