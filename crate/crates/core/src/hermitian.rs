//! ε-Hermitian modules `(V, B)` over D, adjoints and the Lie algebra of the
//! isometry group.
//!
//! Vectors are columns and `B(v, w) = v† G w`, so `B` is conjugate-linear in
//! the first slot and `B(v, w) = ε·conj(B(w, v))` is the condition `G† = εG`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::dlinalg::{DMatrix, QMatrix};
use crate::error::{Error, Result};
use crate::scalars::{AlgebraSpec, Coords, Rational, Sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianModule {
    epsilon: Sign,
    gram: DMatrix,
    gram_inv: DMatrix,
}

impl HermitianModule {
    /// Validates squareness, the ε-Hermitian symmetry and nondegeneracy.
    pub fn new(epsilon: Sign, gram: DMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        if gram.conj_transpose() != gram.scale(&epsilon.rational()) {
            return Err(Error::NotHermitian(epsilon.value()));
        }
        let gram_inv = if gram.rows() == 0 {
            gram.clone()
        } else {
            gram.inverse().map_err(|_| Error::Degenerate)?
        };
        Ok(HermitianModule { epsilon, gram, gram_inv })
    }

    /// Orthogonal sum of diagonal one-dimensional forms `⟨d_1, …, d_n⟩`.
    pub fn diagonal(algebra: &AlgebraSpec, epsilon: Sign, entries: &[Coords]) -> Result<Self> {
        let g = DMatrix::from_fn(algebra, entries.len(), entries.len(), |r, c| {
            if r == c {
                entries[r].clone()
            } else {
                Coords::zero()
            }
        });
        Self::new(epsilon, g)
    }

    /// `m` copies of the hyperbolic plane with Gram `[[0, 1], [ε, 0]]`.
    pub fn hyperbolic(algebra: &AlgebraSpec, epsilon: Sign, m: usize) -> Self {
        let planes: Vec<DMatrix> = (0..m)
            .map(|_| {
                let mut p = DMatrix::zeros(algebra, 2, 2);
                p.set(0, 1, Coords::one());
                p.set(1, 0, Coords::scalar(epsilon.rational()));
                p
            })
            .collect();
        Self::new(epsilon, DMatrix::block_diag(algebra, &planes)).expect("hyperbolic form is valid")
    }

    pub fn direct_sum(algebra: &AlgebraSpec, epsilon: Sign, parts: &[HermitianModule]) -> Result<Self> {
        if parts.iter().any(|p| p.epsilon != epsilon || p.algebra() != algebra) {
            return Err(Error::SpecMismatch);
        }
        let grams: Vec<DMatrix> = parts.iter().map(|p| p.gram.clone()).collect();
        Self::new(epsilon, DMatrix::block_diag(algebra, &grams))
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn epsilon(&self) -> Sign {
        self.epsilon
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        self.gram.algebra()
    }

    pub fn gram(&self) -> &DMatrix {
        &self.gram
    }

    pub fn gram_inv(&self) -> &DMatrix {
        &self.gram_inv
    }

    /// `B(v, w) = v† G w` for single columns.
    pub fn form(&self, v: &DMatrix, w: &DMatrix) -> Result<Coords> {
        let p = v.conj_transpose().matmul(&self.gram)?.matmul(w)?;
        Ok(p.get(0, 0).clone())
    }

    /// Gram matrix `P† G P` of the form restricted to the columns of `p`.
    pub fn restrict(&self, p: &DMatrix) -> Result<DMatrix> {
        p.conj_transpose().matmul(&self.gram)?.matmul(p)
    }

    pub fn is_isometry(&self, g: &DMatrix) -> bool {
        g.is_square() && g.rows() == self.dim() && self.restrict(g).ok().as_ref() == Some(&self.gram)
    }

    pub fn is_lie_algebra_element(&self, t: &DMatrix) -> bool {
        is_lie_algebra_element(t, self)
    }

    /// `κ(T, S) = Tr_k(T* S) / 2`.
    pub fn kappa(&self, t: &DMatrix, s: &DMatrix) -> Result<Rational> {
        let ts = adjoint(t, self, self)?;
        Ok(ts.trace_k_of_product(s)? * Rational::new(1, 2))
    }

    /// `κ` for arguments already known to lie in 𝔤, where `T* = −T`.
    pub fn kappa_lie(&self, t: &DMatrix, s: &DMatrix) -> Result<Rational> {
        Ok(t.trace_k_of_product(s)? * Rational::new(-1, 2))
    }

    fn diagonal_units(&self) -> Vec<usize> {
        // S_aa must satisfy conj(x) = −ε x
        match self.epsilon {
            Sign::Minus => vec![0],
            Sign::Plus => (1..self.algebra().dim()).collect(),
        }
    }

    /// Parameters of the elementary (−ε)-Hermitian matrices `S` with support
    /// `{(r, c), (c, r)}` accepted by `keep`; `G⁻¹S` runs over a k-basis of 𝔤.
    pub fn skew_params(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Vec<SkewParam> {
        let n = self.dim();
        let d = self.algebra().dim();
        let diag_units = self.diagonal_units();
        let mut out = Vec::new();
        for r in 0..n {
            for c in r..n {
                if !keep(r, c) {
                    continue;
                }
                if r == c {
                    out.extend(diag_units.iter().map(|&unit| SkewParam { row: r, col: c, unit }));
                } else {
                    out.extend((0..d).map(|unit| SkewParam { row: r, col: c, unit }));
                }
            }
        }
        out
    }

    /// The Lie algebra element `G⁻¹ S` attached to a parameter.
    pub fn lie_element(&self, p: &SkewParam) -> DMatrix {
        let alg = self.algebra();
        let n = self.dim();
        let e = &alg.basis()[p.unit];
        let mut z = DMatrix::zeros(alg, n, n);
        for i in 0..n {
            let g = self.gram_inv.get(i, p.row);
            if !g.is_zero() {
                z.set(i, p.col, alg.mul(g, e));
            }
        }
        if p.row != p.col {
            let partner = alg.conj(e).scale(&(-self.epsilon.rational()));
            for i in 0..n {
                let g = self.gram_inv.get(i, p.col);
                if !g.is_zero() {
                    z.set(i, p.row, alg.mul(g, &partner));
                }
            }
        }
        z
    }

    pub fn lie_basis(&self, keep: impl FnMut(usize, usize) -> bool) -> LieBasis {
        let params = self.skew_params(keep);
        let elements = params.iter().map(|p| self.lie_element(p)).collect();
        let support = params.iter().map(|p| (p.row, p.col)).collect();
        LieBasis { params, elements, support }
    }

    /// A k-basis of 𝔤 = {T : T* = −T}.
    pub fn lie_algebra_basis(&self) -> Vec<DMatrix> {
        self.lie_basis(|_, _| true).elements
    }

    pub fn lie_algebra_dim(&self) -> usize {
        self.skew_params(|_, _| true).len()
    }

    /// k-basis of 𝔤 from the nullspace of `T ↦ T* + T` on the realization.
    ///
    /// Cubic in `(n·dim_k D)²`; meant for small modules and cross-checks.
    pub fn lie_algebra_basis_by_solve(&self) -> Vec<DMatrix> {
        let alg = self.algebra();
        let n = self.dim();
        let d = alg.dim();
        let unknowns = n * n * d;
        let mut cols = Vec::with_capacity(unknowns);
        for idx in 0..unknowns {
            let mut v = vec![Rational::zero(); unknowns];
            v[idx] = Rational::one();
            let e = DMatrix::unflatten_k(alg, n, n, &v);
            let image = adjoint(&e, self, self).expect("square").add(&e).expect("same shape");
            cols.push(image.flatten_k());
        }
        QMatrix::from_columns(unknowns, &cols)
            .nullspace()
            .into_iter()
            .map(|v| DMatrix::unflatten_k(alg, n, n, &v))
            .collect()
    }
}

/// One parameter of the (−ε)-Hermitian matrices: the entry `(row, col)`
/// carries the D-basis element `unit`, mirrored onto `(col, row)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewParam {
    pub row: usize,
    pub col: usize,
    pub unit: usize,
}

/// A parametrized k-basis of a subspace of 𝔤 cut out by a support pattern.
#[derive(Clone, Debug)]
pub struct LieBasis {
    params: Vec<SkewParam>,
    elements: Vec<DMatrix>,
    support: HashSet<(usize, usize)>,
}

impl LieBasis {
    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn params(&self) -> &[SkewParam] {
        &self.params
    }

    pub fn elements(&self) -> &[DMatrix] {
        &self.elements
    }

    /// `Σ c_k b_k`.
    pub fn combine(&self, module: &HermitianModule, coeffs: &[Rational]) -> DMatrix {
        assert_eq!(coeffs.len(), self.len());
        let n = module.dim();
        let mut z = DMatrix::zeros(module.algebra(), n, n);
        for (c, b) in coeffs.iter().zip(&self.elements) {
            if !c.is_zero() {
                z = z.add(&b.scale(c)).expect("same shape");
            }
        }
        z
    }

    /// Coordinates of `z` in this basis, or `None` if `z` lies outside the span.
    pub fn coordinates(&self, module: &HermitianModule, z: &DMatrix) -> Option<Vec<Rational>> {
        let s = module.gram().matmul(z).ok()?;
        if s.conj_transpose() != s.scale(&(-module.epsilon().rational())) {
            return None;
        }
        let n = module.dim();
        for r in 0..n {
            for c in r..n {
                if !s.get(r, c).is_zero() && !self.support.contains(&(r, c)) {
                    return None;
                }
            }
        }
        Some(self.params.iter().map(|p| s.get(p.row, p.col).0[p.unit].clone()).collect())
    }
}

/// `T* = G_src⁻¹ · T† · G_tgt`, characterized by `B_tgt(Tv, w) = B_src(v, T*w)`.
pub fn adjoint(t: &DMatrix, source: &HermitianModule, target: &HermitianModule) -> Result<DMatrix> {
    if t.cols() != source.dim() || t.rows() != target.dim() {
        return Err(Error::Shape(format!(
            "map is {}x{} but modules have dims {} -> {}",
            t.rows(),
            t.cols(),
            source.dim(),
            target.dim()
        )));
    }
    source.gram_inv().matmul(&t.conj_transpose())?.matmul(target.gram())
}

pub fn is_lie_algebra_element(t: &DMatrix, v: &HermitianModule) -> bool {
    match adjoint(t, v, v) {
        Ok(a) => a == t.neg(),
        Err(_) => false,
    }
}

/// A matrix checked to lie in 𝔤.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    matrix: DMatrix,
}

impl LieElement {
    pub fn new(module: &HermitianModule, matrix: DMatrix) -> Result<Self> {
        if !module.is_lie_algebra_element(&matrix) {
            return Err(Error::NotInSubspace("matrix is not skew-adjoint".into()));
        }
        Ok(LieElement { matrix })
    }

    pub fn matrix(&self) -> &DMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix {
        self.matrix
    }
}

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    dim: usize,
    epsilon: Sign,
    #[serde(default = "field")]
    algebra: AlgebraSpec,
    gram: serde_json::Value,
}

fn field() -> AlgebraSpec {
    AlgebraSpec::Field
}

impl HermitianModule {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim(),
            "epsilon": self.epsilon,
            "algebra": self.algebra(),
            "gram": self.gram,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: ModuleJson = serde_json::from_value(v.clone())?;
        let gram = DMatrix::from_json_value(&j.algebra, &j.gram)?;
        if gram.rows() != j.dim {
            return Err(Error::Shape(format!("dim {} but gram has {} rows", j.dim, gram.rows())));
        }
        Self::new(j.epsilon, gram)
    }
}
