//! sl₂-triples and the gradings they induce on `V` and 𝔤.
//!
//! A [`Grading`] works in a basis of `H`-eigenvectors, so `V_i` is spanned by
//! coordinate vectors and 𝔤_i is the span of the parametrized basis
//! elements `G⁻¹S` whose support `(r, c)` has `w_r + w_c = −i`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::Serialize;

use crate::dlinalg::{DMatrix, QMatrix};
use crate::error::{Error, Result};
use crate::hermitian::{HermitianModule, LieBasis};
use crate::scalars::{Rational, Sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    module: HermitianModule,
    x: DMatrix,
    h: DMatrix,
    y: DMatrix,
}

/// Which of the defining relations of a triple hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TripleRelations {
    pub hx: bool,
    pub hy: bool,
    pub xy: bool,
    pub in_lie_algebra: bool,
}

impl TripleRelations {
    pub fn all(&self) -> bool {
        self.hx && self.hy && self.xy && self.in_lie_algebra
    }
}

impl Sl2Triple {
    /// Checks `[H,X] = 2X`, `[H,Y] = −2Y`, `[X,Y] = H` and `X, H, Y ∈ 𝔤`.
    pub fn new(module: HermitianModule, x: DMatrix, h: DMatrix, y: DMatrix) -> Result<Self> {
        let n = module.dim();
        for (name, m) in [("X", &x), ("H", &h), ("Y", &y)] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::InvalidTriple(format!("{name} is not {n}x{n}")));
            }
            if m.algebra() != module.algebra() {
                return Err(Error::SpecMismatch);
            }
        }
        let t = Sl2Triple { module, x, h, y };
        let rel = t.relations();
        if !rel.all() {
            return Err(Error::InvalidTriple(format!("relations failed: {rel:?}")));
        }
        Ok(t)
    }

    pub fn zero(module: HermitianModule) -> Self {
        let z = DMatrix::zeros(module.algebra(), module.dim(), module.dim());
        Sl2Triple { module, x: z.clone(), h: z.clone(), y: z }
    }

    pub fn relations(&self) -> TripleRelations {
        let two = Rational::from_int(2);
        let br = |a: &DMatrix, b: &DMatrix| a.commutator(b).expect("square, same algebra");
        TripleRelations {
            hx: br(&self.h, &self.x) == self.x.scale(&two),
            hy: br(&self.h, &self.y) == self.y.scale(&-two.clone()),
            xy: br(&self.x, &self.y) == self.h,
            in_lie_algebra: [&self.x, &self.h, &self.y].iter().all(|m| self.module.is_lie_algebra_element(m)),
        }
    }

    pub fn module(&self) -> &HermitianModule {
        &self.module
    }

    pub fn x(&self) -> &DMatrix {
        &self.x
    }

    pub fn h(&self) -> &DMatrix {
        &self.h
    }

    pub fn y(&self) -> &DMatrix {
        &self.y
    }

    /// Diagonalizes `H` (if it is not already diagonal) and returns the grading.
    pub fn grade(&self) -> Result<Grading> {
        if let Some(weights) = diagonal_weights(&self.h) {
            return Ok(Grading::new(self.clone(), None, weights));
        }
        let alg = self.module.algebra();
        let n = self.module.dim();
        let mut cols = Vec::new();
        let mut weights = Vec::new();
        let top = n as i64 - 1;
        for lambda in (-top..=top).rev() {
            let shifted = self.h.sub(&DMatrix::scalar(alg, n, &Rational::from_int(lambda)))?;
            let k = shifted.kernel_basis();
            for c in 0..k.cols() {
                cols.push(k.column(c));
                weights.push(lambda);
            }
        }
        if weights.len() != n {
            return Err(Error::InvalidTriple("H is not diagonalizable with integer eigenvalues".into()));
        }
        let p = DMatrix::hstack(alg, n, &cols)?;
        let p_inv = p.inverse()?;
        let conj = |m: &DMatrix| -> Result<DMatrix> { p_inv.matmul(m)?.matmul(&p) };
        let module = HermitianModule::new(self.module.epsilon(), self.module.restrict(&p)?)?;
        let triple = Sl2Triple { module, x: conj(&self.x)?, h: conj(&self.h)?, y: conj(&self.y)? };
        Ok(Grading::new(triple, Some((p, p_inv)), weights))
    }
}

fn diagonal_weights(h: &DMatrix) -> Option<Vec<i64>> {
    let n = h.rows();
    let mut w = Vec::with_capacity(n);
    for r in 0..n {
        for c in 0..n {
            if r != c && !h.get(r, c).is_zero() {
                return None;
            }
        }
        let d = h.get(r, r).as_scalar()?;
        w.push(d.to_i64().filter(|_| d.is_integer())?);
    }
    Some(w)
}

/// The isotypic component of `V` made of irreducibles of dimension `t`,
/// recorded by its primitive (highest-weight) vectors.
#[derive(Clone, Debug)]
pub struct IsotypicPiece {
    pub t: usize,
    pub highest: DMatrix,
}

impl IsotypicPiece {
    pub fn mult(&self) -> usize {
        self.highest.cols()
    }

    /// Basis of the weight-`i` part: `Y^p` applied to the primitive vectors.
    pub fn vectors_at(&self, y: &DMatrix, i: i64) -> Result<DMatrix> {
        let top = self.t as i64 - 1;
        if i > top || i < -top || (top - i) % 2 != 0 {
            return Err(Error::NotInSubspace(format!("weight {i} does not occur for t = {}", self.t)));
        }
        y.pow(((top - i) / 2) as usize)?.matmul(&self.highest)
    }
}

/// Outcome of `B_{i+2}(Xv, Xw) = −B_i(v, w)` on one weight of one piece.
#[derive(Clone, Debug, Serialize)]
pub struct SignIdentity {
    pub t: usize,
    pub weight: i64,
    pub holds: bool,
}

/// `dim 𝔪_X` by a linear solve against the dimensions of the isometry Lie
/// algebras of the forms induced on the primitive vectors.
#[derive(Clone, Debug, Serialize)]
pub struct MxReport {
    pub centralizer_dim: usize,
    pub row_dims: Vec<(usize, usize)>,
    pub product_dim: usize,
}

impl MxReport {
    pub fn holds(&self) -> bool {
        self.centralizer_dim == self.product_dim
    }
}

#[derive(Debug)]
pub struct Grading {
    triple: Sl2Triple,
    change: Option<(DMatrix, DMatrix)>,
    weights: Vec<i64>,
    g_minus1: OnceLock<LieBasis>,
}

impl Clone for Grading {
    fn clone(&self) -> Self {
        Grading::new(self.triple.clone(), self.change.clone(), self.weights.clone())
    }
}

impl Grading {
    fn new(triple: Sl2Triple, change: Option<(DMatrix, DMatrix)>, weights: Vec<i64>) -> Self {
        Grading { triple, change, weights, g_minus1: OnceLock::new() }
    }

    /// The triple in weight coordinates.
    pub fn triple(&self) -> &Sl2Triple {
        &self.triple
    }

    pub fn module(&self) -> &HermitianModule {
        &self.triple.module
    }

    pub fn x(&self) -> &DMatrix {
        &self.triple.x
    }

    pub fn y(&self) -> &DMatrix {
        &self.triple.y
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Columns are the weight vectors in the original coordinates; `None`
    /// when the original basis already diagonalizes `H`.
    pub fn basis_change(&self) -> Option<&DMatrix> {
        self.change.as_ref().map(|(p, _)| p)
    }

    pub fn to_weight(&self, m: &DMatrix) -> Result<DMatrix> {
        match &self.change {
            None => Ok(m.clone()),
            Some((p, p_inv)) => p_inv.matmul(m)?.matmul(p),
        }
    }

    pub fn from_weight(&self, m: &DMatrix) -> Result<DMatrix> {
        match &self.change {
            None => Ok(m.clone()),
            Some((p, p_inv)) => p.matmul(m)?.matmul(p_inv),
        }
    }

    pub fn v_indices(&self, i: i64) -> Vec<usize> {
        (0..self.weights.len()).filter(|&a| self.weights[a] == i).collect()
    }

    pub fn v_dims(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for &w in &self.weights {
            *m.entry(w).or_insert(0) += 1;
        }
        m
    }

    /// Coordinate vectors spanning `V_i`.
    pub fn weight_vectors(&self, i: i64) -> DMatrix {
        let idx = self.v_indices(i);
        DMatrix::identity(self.module().algebra(), self.weights.len()).columns(&idx)
    }

    /// Degree of the matrix entry `(r, c)` under `ad H`.
    pub fn degree(&self, r: usize, c: usize) -> i64 {
        self.weights[r] - self.weights[c]
    }

    pub fn g_basis_where(&self, keep: impl Fn(i64) -> bool) -> LieBasis {
        let w = &self.weights;
        self.module().lie_basis(|r, c| keep(-(w[r] + w[c])))
    }

    /// Basis of 𝔤_i.
    pub fn g_basis(&self, i: i64) -> LieBasis {
        self.g_basis_where(|d| d == i)
    }

    /// Cached basis of 𝔤₋₁.
    pub fn g_minus1(&self) -> &LieBasis {
        self.g_minus1.get_or_init(|| self.g_basis(-1))
    }

    pub fn g_dims(&self) -> BTreeMap<i64, usize> {
        let w = &self.weights;
        let mut m = BTreeMap::new();
        for p in self.module().skew_params(|_, _| true) {
            *m.entry(-(w[p.row] + w[p.col])).or_insert(0) += 1;
        }
        m
    }

    /// Degree-`i` part of a matrix.
    pub fn component(&self, z: &DMatrix, i: i64) -> DMatrix {
        DMatrix::from_fn(z.algebra(), z.rows(), z.cols(), |r, c| {
            if self.degree(r, c) == i {
                z.get(r, c).clone()
            } else {
                crate::scalars::Coords::zero()
            }
        })
    }

    /// Degrees carrying nonzero entries.
    pub fn degrees_of(&self, z: &DMatrix) -> BTreeSet<i64> {
        let mut s = BTreeSet::new();
        for r in 0..z.rows() {
            for c in 0..z.cols() {
                if !z.get(r, c).is_zero() {
                    s.insert(self.degree(r, c));
                }
            }
        }
        s
    }

    /// `z ∈ 𝔤` with every degree accepted by `keep`.
    pub fn in_graded(&self, z: &DMatrix, keep: impl Fn(i64) -> bool) -> bool {
        self.degrees_of(z).into_iter().all(keep) && self.module().is_lie_algebra_element(z)
    }

    /// `n = ⊕_{i≤−1} 𝔤_i`.
    pub fn in_n(&self, z: &DMatrix) -> bool {
        self.in_graded(z, |d| d <= -1)
    }

    /// `u = ⊕_{i≤−2} 𝔤_i`.
    pub fn in_u(&self, z: &DMatrix) -> bool {
        self.in_graded(z, |d| d <= -2)
    }

    /// Gram matrix of `B_i(v, w) = B(X^{−i} v, w)` between the columns of `a`
    /// and `b`, all taken in `V_i`. For `i > 0`, `X^{−i}` inverts `X^i: V_{−i} → V_i`.
    pub fn b_gram(&self, i: i64, a: &DMatrix, b: &DMatrix) -> Result<DMatrix> {
        let x = self.x();
        let m = i.unsigned_abs() as usize;
        let u = if i >= 0 {
            let from = self.weight_vectors(-i);
            let restricted = x.pow(m)?.matmul(&from)?;
            let coeffs = restricted
                .solve_left(a)
                .map_err(|_| Error::InvalidTriple(format!("X^{m} is not invertible onto V_{i}")))?;
            from.matmul(&coeffs)?
        } else {
            x.pow(m)?.matmul(a)?
        };
        u.conj_transpose().matmul(self.module().gram())?.matmul(b)
    }

    /// `B_i` on the coordinate basis of each `V_i`.
    pub fn weight_forms(&self) -> Result<BTreeMap<i64, DMatrix>> {
        let mut out = BTreeMap::new();
        for &i in self.v_dims().keys() {
            let e = self.weight_vectors(i);
            out.insert(i, self.b_gram(i, &e, &e)?);
        }
        Ok(out)
    }

    /// Isotypic decomposition via `ker X ∩ V_λ` for `λ ≥ 0`, largest `t` first.
    pub fn isotypic_pieces(&self) -> Result<Vec<IsotypicPiece>> {
        let mut pieces = Vec::new();
        for (&lambda, _) in self.v_dims().iter().rev() {
            if lambda < 0 {
                continue;
            }
            let e = self.weight_vectors(lambda);
            let k = self.x().matmul(&e)?.kernel_basis();
            if k.cols() > 0 {
                pieces.push(IsotypicPiece { t: lambda as usize + 1, highest: e.matmul(&k)? });
            }
        }
        Ok(pieces)
    }

    /// `B_{i+2}(Xv, Xw) = −B_i(v, w)` on every weight of every isotypic piece.
    pub fn sign_identity(&self) -> Result<Vec<SignIdentity>> {
        let mut out = Vec::new();
        for piece in self.isotypic_pieces()? {
            let top = piece.t as i64 - 1;
            let mut i = -top;
            while i + 2 <= top {
                let v = piece.vectors_at(self.y(), i)?;
                let xv = self.x().matmul(&v)?;
                let lhs = self.b_gram(i + 2, &xv, &xv)?;
                let rhs = self.b_gram(i, &v, &v)?;
                out.push(SignIdentity { t: piece.t, weight: i, holds: lhs == rhs.neg() });
                i += 2;
            }
        }
        Ok(out)
    }

    /// Additive phase of the character `χ_γ(exp Z)`: `Z ↦ κ(X, Z)`.
    pub fn chi(&self, z: &DMatrix) -> Result<Rational> {
        self.module().kappa_lie(self.x(), z)
    }

    /// `κ₋₁(S, T) = κ(X, [S, T])`, with both arguments checked to lie in 𝔤₋₁.
    pub fn kappa_minus1(&self, s: &DMatrix, t: &DMatrix) -> Result<Rational> {
        let b = self.g_minus1();
        if b.coordinates(self.module(), s).is_none() || b.coordinates(self.module(), t).is_none() {
            return Err(Error::NotInSubspace("argument of κ₋₁ outside 𝔤₋₁".into()));
        }
        self.module().kappa_lie(self.x(), &s.commutator(t)?)
    }

    /// The other defining expression, `κ(ad(X)S, T)`.
    pub fn kappa_minus1_via_ad(&self, s: &DMatrix, t: &DMatrix) -> Result<Rational> {
        self.module().kappa_lie(&self.x().commutator(s)?, t)
    }

    /// Gram matrix of `κ₋₁` on a basis of 𝔤₋₁.
    pub fn kappa_minus1_gram(&self, basis: &[DMatrix]) -> Result<QMatrix> {
        let m = basis.len();
        let ad: Vec<DMatrix> = basis.iter().map(|s| self.x().commutator(s)).collect::<Result<_>>()?;
        let mut g = QMatrix::zeros(m, m);
        for a in 0..m {
            for b in (a + 1)..m {
                let v = self.module().kappa_lie(&ad[a], &basis[b])?;
                g.set(b, a, -&v);
                g.set(a, b, v);
            }
        }
        Ok(g)
    }

    /// `H_γ` on the cached 𝔤₋₁ basis, with form `sign·κ₋₁`.
    pub fn heisenberg_group(&self, sign: Sign) -> Result<HeisenbergGroup> {
        let g = self.kappa_minus1_gram(self.g_minus1().elements())?;
        HeisenbergGroup::new(g.scale(&sign.rational()))
    }

    /// The unique `(T, Z) ∈ 𝔤₋₁ × u` with `n = exp(T)·exp(Z)`.
    pub fn heisenberg_coordinates(&self, n: &DMatrix) -> Result<(DMatrix, DMatrix)> {
        let log = n
            .nilpotent_log()
            .map_err(|_| Error::NotInSubspace("element is not unipotent".into()))?;
        if !self.in_n(&log) {
            return Err(Error::NotInSubspace("log of the element is not in n".into()));
        }
        let t = self.component(&log, -1);
        let z = t.neg().nilpotent_exp()?.matmul(n)?.nilpotent_log()?;
        if !self.in_u(&z) {
            return Err(Error::NotInSubspace("residual factor is not in U".into()));
        }
        Ok((t, z))
    }

    /// `α_γ(exp T exp Z) = (T, sign·κ(X, Z))`.
    pub fn alpha_gamma(&self, n: &DMatrix, sign: Sign) -> Result<HeisenbergElement> {
        let (t, z) = self.heisenberg_coordinates(n)?;
        let vector = self
            .g_minus1()
            .coordinates(self.module(), &t)
            .ok_or_else(|| Error::NotInSubspace("degree −1 part outside 𝔤₋₁".into()))?;
        Ok(HeisenbergElement { vector, center: self.chi(&z)? * sign.rational() })
    }

    /// Basis of `𝔪_X = {Z ∈ 𝔤₀ : [Z, X] = 0}` by a linear solve.
    pub fn centralizer_basis(&self) -> Result<Vec<DMatrix>> {
        let g0 = self.g_basis(0);
        if g0.is_empty() {
            return Ok(Vec::new());
        }
        let cols: Vec<Vec<Rational>> = g0
            .elements()
            .iter()
            .map(|b| b.commutator(self.x()).map(|c| c.flatten_k()))
            .collect::<Result<_>>()?;
        let len = cols[0].len();
        Ok(QMatrix::from_columns(len, &cols)
            .nullspace()
            .into_iter()
            .map(|v| g0.combine(self.module(), &v))
            .collect())
    }

    pub fn mx_dimension_report(&self) -> Result<MxReport> {
        let centralizer_dim = self.centralizer_basis()?.len();
        let eps = self.module().epsilon();
        let mut row_dims = Vec::new();
        for piece in self.isotypic_pieces()? {
            let top = piece.t as i64 - 1;
            let gram = self.b_gram(top, &piece.highest, &piece.highest)?;
            let form = HermitianModule::new(eps * Sign::parity(piece.t - 1), gram)?;
            row_dims.push((piece.t, form.lie_algebra_dim()));
        }
        let product_dim = row_dims.iter().map(|&(_, d)| d).sum();
        Ok(MxReport { centralizer_dim, row_dims, product_dim })
    }
}

/// Elements `(v, s)` of a Heisenberg group, `v` in coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeisenbergElement {
    pub vector: Vec<Rational>,
    pub center: Rational,
}

/// `k^m × k` with `(v, s)(w, t) = (v + w, s + t + ω(v, w)/2)`.
#[derive(Clone, Debug)]
pub struct HeisenbergGroup {
    omega: QMatrix,
}

impl HeisenbergGroup {
    pub fn new(omega: QMatrix) -> Result<Self> {
        if !omega.is_antisymmetric() {
            return Err(Error::InvalidPair("Heisenberg form must be antisymmetric".into()));
        }
        Ok(HeisenbergGroup { omega })
    }

    pub fn dim(&self) -> usize {
        self.omega.rows()
    }

    pub fn omega(&self) -> &QMatrix {
        &self.omega
    }

    pub fn form(&self, v: &[Rational], w: &[Rational]) -> Rational {
        let ow = self.omega.mul_vec(w);
        v.iter().zip(&ow).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum()
    }

    pub fn identity(&self) -> HeisenbergElement {
        HeisenbergElement { vector: vec![Rational::zero(); self.dim()], center: Rational::zero() }
    }

    pub fn mul(&self, a: &HeisenbergElement, b: &HeisenbergElement) -> HeisenbergElement {
        let vector = a.vector.iter().zip(&b.vector).map(|(x, y)| x + y).collect();
        let twist = self.form(&a.vector, &b.vector) * Rational::new(1, 2);
        HeisenbergElement { vector, center: &a.center + &b.center + twist }
    }

    pub fn inverse(&self, a: &HeisenbergElement) -> HeisenbergElement {
        HeisenbergElement { vector: a.vector.iter().map(|x| -x).collect(), center: -&a.center }
    }
}

/// Symplectic Gram–Schmidt with greedy pivoting in basis order.
///
/// Returns coordinate vectors `e_1..e_m`, `f_1..f_m` spanning complementary
/// Lagrangians with `ω(e_i, f_j) = δ_ij`. Requires `ω` nondegenerate.
pub fn lagrangian_split(omega: &QMatrix) -> Result<(Vec<Vec<Rational>>, Vec<Vec<Rational>>)> {
    let n = omega.rows();
    let form = |v: &[Rational], w: &[Rational]| -> Rational {
        let ow = omega.mul_vec(w);
        v.iter().zip(&ow).map(|(a, b)| a * b).sum()
    };
    let mut pool: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            v
        })
        .collect();
    let (mut es, mut fs) = (Vec::new(), Vec::new());
    while let Some(e) = pool.first().cloned() {
        pool.remove(0);
        if e.iter().all(Rational::is_zero) {
            continue;
        }
        let Some(pos) = pool.iter().position(|f| !form(&e, f).is_zero()) else {
            return Err(Error::Degenerate);
        };
        let f_raw = pool.remove(pos);
        let scale = form(&e, &f_raw).recip().expect("nonzero pairing");
        let f: Vec<Rational> = f_raw.iter().map(|x| x * &scale).collect();
        for v in pool.iter_mut() {
            let a = form(v, &f);
            let b = form(v, &e);
            for k in 0..n {
                v[k] = &v[k] - &(&a * &e[k]) + &b * &f[k];
            }
        }
        es.push(e);
        fs.push(f);
    }
    Ok((es, fs))
}
