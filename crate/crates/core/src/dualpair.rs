//! Dual pairs `(V, Ṽ)`, moment maps and the maximal-rank lift of an orbit.
//!
//! A map `T: V → Ṽ` is a `dim Ṽ × dim V` matrix. Its moment images are
//! `T*T ∈ 𝔤` and `TT* ∈ 𝔤̃`, where `T* = G⁻¹ T† G̃`.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::json;

use crate::dlinalg::{DMatrix, QMatrix};
use crate::error::{Error, Result};
use crate::hermitian::{adjoint, HermitianModule};
use crate::scalars::{Coords, Rational, Sign};
use crate::sl2::{Grading, HeisenbergElement, HeisenbergGroup};
use crate::tableaux::{build_module, jordan_type, theta_lift_tableau, BuiltModule, YoungTableau};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPair {
    v: HermitianModule,
    vtilde: HermitianModule,
}

impl DualPair {
    pub fn new(v: HermitianModule, vtilde: HermitianModule) -> Result<Self> {
        if v.algebra() != vtilde.algebra() {
            return Err(Error::SpecMismatch);
        }
        if v.epsilon() * vtilde.epsilon() != Sign::Minus {
            return Err(Error::InvalidPair("signs must satisfy ε·ε̃ = −1".into()));
        }
        if v.dim() > vtilde.dim() {
            return Err(Error::InvalidPair(format!("dim V = {} exceeds dim Ṽ = {}", v.dim(), vtilde.dim())));
        }
        Ok(DualPair { v, vtilde })
    }

    pub fn v(&self) -> &HermitianModule {
        &self.v
    }

    pub fn vtilde(&self) -> &HermitianModule {
        &self.vtilde
    }

    /// `T*: Ṽ → V`.
    pub fn adjoint(&self, t: &DMatrix) -> Result<DMatrix> {
        adjoint(t, &self.v, &self.vtilde)
    }

    /// `(T*T, TT*)`.
    pub fn moment(&self, t: &DMatrix) -> Result<(DMatrix, DMatrix)> {
        let ts = self.adjoint(t)?;
        Ok((ts.matmul(t)?, t.matmul(&ts)?))
    }
}

/// Rational roots of `a + b c + q c²`.
fn rational_roots(a: &Rational, b: &Rational, q: &Rational) -> Vec<Rational> {
    if q.is_zero() {
        return if b.is_zero() { Vec::new() } else { vec![-(a / b)] };
    }
    let disc = b * b - Rational::from_int(4) * q * a;
    match disc.sqrt() {
        Some(r) => {
            let two_q = q * &Rational::from_int(2);
            vec![(-b + &r) / &two_q, (-b - r) / two_q]
        }
        None => Vec::new(),
    }
}

/// A nonzero isotropic vector in the span of `pool`, looking at single
/// vectors and then at `u + v·c` for rational `c`.
fn find_isotropic(module: &HermitianModule, pool: &[DMatrix]) -> Result<Option<DMatrix>> {
    for u in pool {
        if module.form(u, u)?.is_zero() {
            return Ok(Some(u.clone()));
        }
    }
    for (i, u) in pool.iter().enumerate() {
        for v in &pool[i + 1..] {
            // B(u + vc, u + vc) = α + c (γ + ε conj γ) + c² β, coordinatewise in k
            let alpha = module.form(u, u)?;
            let beta = module.form(v, v)?;
            let gamma = module.form(u, v)?;
            let mixed = &gamma + &module.form(v, u)?;
            let lead = (0..4).find(|&k| !(alpha.0[k].is_zero() && mixed.0[k].is_zero() && beta.0[k].is_zero()));
            let Some(k) = lead else { continue };
            for c in rational_roots(&alpha.0[k], &mixed.0[k], &beta.0[k]) {
                let cand = u.add(&v.scale(&c))?;
                if module.form(&cand, &cand)?.is_zero() && !cand.is_zero() {
                    return Ok(Some(cand));
                }
            }
        }
    }
    Ok(None)
}

/// Complementary totally isotropic `E, F` of dimension `m` with `E†G̃F = I`.
///
/// Splits off hyperbolic planes one at a time; each isotropic vector comes
/// from [`find_isotropic`] inside the orthogonal complement of the planes
/// found so far.
pub fn hyperbolic_split(module: &HermitianModule, m: usize) -> Result<(DMatrix, DMatrix)> {
    let alg = module.algebra();
    let n = module.dim();
    let eps = module.epsilon();
    let id = DMatrix::identity(alg, n);
    let mut pool: Vec<DMatrix> = (0..n).map(|i| id.column(i)).collect();
    let (mut es, mut fs) = (Vec::new(), Vec::new());
    while es.len() < m {
        let Some(e) = find_isotropic(module, &pool)? else {
            return Err(Error::NotStableRange(format!("found only {} of {m} hyperbolic planes", es.len())));
        };
        let f0 = pool
            .iter()
            .find(|f| !module.form(&e, f).map(|x| x.is_zero()).unwrap_or(true))
            .cloned()
            .ok_or(Error::Degenerate)?;
        let pairing = module.form(&e, &f0)?;
        let f1 = f0.right_scale(&alg.inv(&pairing)?);
        // f = f1 + e·a with εa + conj(a) = −B(f1, f1)
        let beta = module.form(&f1, &f1)?;
        let a = match eps {
            Sign::Plus => beta.scale(&Rational::new(-1, 2)),
            Sign::Minus => beta.scale(&Rational::new(1, 2)),
        };
        let f = f1.add(&e.right_scale(&a))?;
        let mut projected = Vec::with_capacity(pool.len());
        for v in &pool {
            let x = module.form(&f, v)?.scale(&eps.rational());
            let y = module.form(&e, v)?;
            projected.push(v.sub(&e.right_scale(&x))?.sub(&f.right_scale(&y))?);
        }
        pool.clear();
        for v in projected {
            let mut trial = pool.clone();
            trial.push(v.clone());
            if DMatrix::hstack(alg, n, &trial)?.rank() == trial.len() {
                pool.push(v);
            }
        }
        es.push(e);
        fs.push(f);
    }
    Ok((DMatrix::hstack(alg, n, &es)?, DMatrix::hstack(alg, n, &fs)?))
}

/// An injective `T` with `T*T = X` for any `X ∈ 𝔤`, when `Ṽ` holds a
/// hyperbolic split of dimension `dim V`: `T = E + F·(G X / 2)`.
pub fn stable_range_lift(pair: &DualPair, x: &DMatrix) -> Result<DMatrix> {
    if !pair.v().is_lie_algebra_element(x) {
        return Err(Error::NotInSubspace("X is not in the Lie algebra of V".into()));
    }
    let (e, f) = hyperbolic_split(pair.vtilde(), pair.v().dim())?;
    let m = pair.v().gram().matmul(x)?.scale(&Rational::new(1, 2));
    e.add(&f.matmul(&m)?)
}

/// Results of the structural checks on a lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MomentLiftChecks {
    pub source_moment: bool,
    pub target_moment: bool,
    pub grading_shift: bool,
    pub full_rank: bool,
    pub rank_pattern: bool,
    pub jordan_type: bool,
}

impl MomentLiftChecks {
    pub fn all(&self) -> bool {
        self.source_moment
            && self.target_moment
            && self.grading_shift
            && self.full_rank
            && self.rank_pattern
            && self.jordan_type
    }
}

/// The canonical `T ∈ O^Max` over `(γ, γ̃)` built from a tableau and its lift.
#[derive(Clone, Debug)]
pub struct MomentLift {
    tableau: YoungTableau,
    lifted: YoungTableau,
    source: BuiltModule,
    target: BuiltModule,
    pair: DualPair,
    t: DMatrix,
    grading: Grading,
    grading_tilde: Grading,
}

/// Builds `V`, `Ṽ = V(Θ(Γ))` and `T`, sending `w_a ⊗ f_p` to `(t − p)·w_a ⊗ g_p`.
///
/// `dim_vtilde = None` takes the smallest target, with no new rows of length one.
pub fn build_moment_lift(
    tableau: &YoungTableau,
    epsilon: Sign,
    dim_vtilde: Option<usize>,
    new_row_form: Option<HermitianModule>,
) -> Result<MomentLift> {
    let dim = dim_vtilde.unwrap_or(tableau.size() + tableau.block_count());
    let lifted = theta_lift_tableau(tableau, epsilon, dim, new_row_form)?;
    let source = build_module(tableau, epsilon)?;
    let target = build_module(&lifted, -epsilon)?;
    let alg = tableau.algebra();
    let mut t = DMatrix::zeros(alg, target.module.dim(), source.module.dim());
    for (b, bt) in source.blocks.iter().zip(&target.blocks) {
        for a in 0..b.mult {
            for p in 0..b.t {
                t.set(bt.index(a, p), b.index(a, p), Coords::scalar(Rational::from_int((b.t - p) as i64)));
            }
        }
    }
    let pair = DualPair::new(source.module.clone(), target.module.clone())?;
    let grading = source.triple.grade()?;
    let grading_tilde = target.triple.grade()?;
    Ok(MomentLift { tableau: tableau.clone(), lifted, source, target, pair, t, grading, grading_tilde })
}

impl MomentLift {
    pub fn tableau(&self) -> &YoungTableau {
        &self.tableau
    }

    pub fn lifted(&self) -> &YoungTableau {
        &self.lifted
    }

    pub fn source(&self) -> &BuiltModule {
        &self.source
    }

    pub fn target(&self) -> &BuiltModule {
        &self.target
    }

    pub fn pair(&self) -> &DualPair {
        &self.pair
    }

    pub fn t(&self) -> &DMatrix {
        &self.t
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn grading_tilde(&self) -> &Grading {
        &self.grading_tilde
    }

    /// `T_k: V_k → Ṽ_{k+1}` for every weight `k` of `V`.
    pub fn components(&self) -> Vec<(i64, DMatrix)> {
        self.grading
            .v_dims()
            .keys()
            .map(|&k| {
                let rows = self.grading_tilde.v_indices(k + 1);
                let cols = self.grading.v_indices(k);
                (k, self.t.submatrix(&rows, &cols))
            })
            .collect()
    }

    pub fn checks(&self) -> Result<MomentLiftChecks> {
        let (phi, phi_tilde) = self.pair.moment(&self.t)?;
        let w = self.grading.weights();
        let wt = self.grading_tilde.weights();
        let mut grading_shift = true;
        for r in 0..self.t.rows() {
            for c in 0..self.t.cols() {
                if !self.t.get(r, c).is_zero() && wt[r] != w[c] + 1 {
                    grading_shift = false;
                }
            }
        }
        let rank_pattern = self.components().iter().all(|(k, m)| {
            let r = m.rank();
            if *k < 0 {
                r == m.cols()
            } else {
                r == m.rows()
            }
        });
        Ok(MomentLiftChecks {
            source_moment: &phi == self.source.triple.x(),
            target_moment: &phi_tilde == self.target.triple.x(),
            grading_shift,
            full_rank: self.t.rank() == self.t.cols(),
            rank_pattern,
            jordan_type: jordan_type(&phi_tilde)? == self.lifted.partition(),
        })
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        Ok(json!({
            "T": self.t,
            "X": self.source.triple.x(),
            "Xtilde": self.target.triple.x(),
            "checks": self.checks()?,
        }))
    }

    fn in_centralizer(module: &HermitianModule, g: &Grading, m: &DMatrix) -> bool {
        let t = g.triple();
        let commutes = |a: &DMatrix| m.matmul(a).ok() == a.matmul(m).ok();
        module.is_isometry(m) && commutes(t.x()) && commutes(t.h())
    }

    /// `m ∈ M_X`: an isometry of `V` commuting with `X` and `H`.
    pub fn in_mx(&self, m: &DMatrix) -> bool {
        Self::in_centralizer(&self.source.module, &self.grading, m)
    }

    /// `m̃ ∈ M̃_X̃`.
    pub fn in_mx_tilde(&self, m: &DMatrix) -> bool {
        Self::in_centralizer(&self.target.module, &self.grading_tilde, m)
    }

    /// The unique `φ_T(m̃) ∈ M_X` with `m̃ T = T φ_T(m̃)`.
    pub fn phi_t(&self, m: &DMatrix) -> Result<DMatrix> {
        if !self.in_mx_tilde(m) {
            return Err(Error::NotInCentralizer("m̃ is not in the centralizer of the target triple".into()));
        }
        let q = self
            .t
            .solve_left(&m.matmul(&self.t)?)
            .map_err(|_| Error::NotInCentralizer("m̃ does not preserve the image of T".into()))?;
        if !self.in_mx(&q) {
            return Err(Error::NotInCentralizer("induced map is not in the centralizer of X".into()));
        }
        Ok(q)
    }

    /// `J_T(R, R̃) = TR + R̃T` for `R ∈ 𝔤₋₁`, `R̃ ∈ 𝔤̃₋₁`.
    pub fn j_t(&self, r: &DMatrix, rt: &DMatrix) -> Result<DMatrix> {
        let g = &self.grading;
        let gt = &self.grading_tilde;
        if g.g_minus1().coordinates(g.module(), r).is_none() {
            return Err(Error::NotInSubspace("R is not in 𝔤₋₁".into()));
        }
        if gt.g_minus1().coordinates(gt.module(), rt).is_none() {
            return Err(Error::NotInSubspace("R̃ is not in 𝔤̃₋₁".into()));
        }
        self.t.matmul(r)?.add(&rt.matmul(&self.t)?)
    }

    /// Matrix of `J_T` from the bases of `𝔤₋₁ ⊕ 𝔤̃₋₁` to the basis of `W`.
    pub fn j_matrix(&self, w: &WSpace) -> Result<QMatrix> {
        let mut cols = Vec::new();
        for r in self.grading.g_minus1().elements() {
            cols.push(self.t.matmul(r)?);
        }
        for rt in self.grading_tilde.g_minus1().elements() {
            cols.push(rt.matmul(&self.t)?);
        }
        let coords: Vec<Vec<Rational>> = cols
            .iter()
            .map(|c| w.coordinates(c).ok_or_else(|| Error::NotInSubspace("J_T image outside W".into())))
            .collect::<Result<_>>()?;
        Ok(QMatrix::from_columns(w.dim(), &coords))
    }

    /// `blockdiag(−Gram κ₋₁, Gram κ̃₋₁)`.
    pub fn expected_pairing_gram(&self) -> Result<QMatrix> {
        let a = self.grading.kappa_minus1_gram(self.grading.g_minus1().elements())?;
        let b = self.grading_tilde.kappa_minus1_gram(self.grading_tilde.g_minus1().elements())?;
        let (m, n) = (a.rows(), b.rows());
        let mut g = QMatrix::zeros(m + n, m + n);
        for i in 0..m {
            for j in 0..m {
                g.set(i, j, -a.get(i, j));
            }
        }
        for i in 0..n {
            for j in 0..n {
                g.set(m + i, m + j, b.get(i, j).clone());
            }
        }
        Ok(g)
    }

    /// `α_T(n, ñ) = J_T(α′_γ(n), α_γ̃(ñ))`, with `α′_γ` built from `−κ`.
    pub fn alpha_t(&self, w: &WSpace, n: &DMatrix, nt: &DMatrix) -> Result<HeisenbergElement> {
        let g = &self.grading;
        let gt = &self.grading_tilde;
        let a = g.alpha_gamma(n, Sign::Minus)?;
        let at = gt.alpha_gamma(nt, Sign::Plus)?;
        let r = g.g_minus1().combine(g.module(), &a.vector);
        let rt = gt.g_minus1().combine(gt.module(), &at.vector);
        let image = self.t.matmul(&r)?.add(&rt.matmul(&self.t)?)?;
        let vector = w.coordinates(&image).ok_or_else(|| Error::NotInSubspace("J_T image outside W".into()))?;
        Ok(HeisenbergElement { vector, center: a.center + at.center })
    }
}

/// `W = ⊕_k Hom(V_k, Ṽ_k)` with `⟨A, B⟩ = Tr_k(A* B)`.
///
/// The k-basis has one element per position `(ã, b)` with equal weights and
/// per D-basis unit.
#[derive(Clone, Debug)]
pub struct WSpace {
    positions: Vec<(usize, usize, usize)>,
    index: HashMap<(usize, usize, usize), usize>,
    rows: usize,
    cols: usize,
    pair: DualPair,
    gram: QMatrix,
}

impl WSpace {
    pub fn new(lift: &MomentLift) -> Self {
        let w = lift.grading.weights();
        let wt = lift.grading_tilde.weights();
        let pair = lift.pair.clone();
        let alg = pair.v().algebra().clone();
        let d = alg.dim();
        let mut positions = Vec::new();
        for (r, wr) in wt.iter().enumerate() {
            for (c, wc) in w.iter().enumerate() {
                if wr == wc {
                    positions.extend((0..d).map(|u| (r, c, u)));
                }
            }
        }
        let index = positions.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let basis = alg.basis();
        let g_inv = pair.v().gram_inv();
        let gt = pair.vtilde().gram();
        let m = positions.len();
        let mut gram = QMatrix::zeros(m, m);
        for (i, &(ra, cb, u)) in positions.iter().enumerate() {
            let cu = alg.conj(&basis[u]);
            for (j, &(rc, ce, u2)) in positions.iter().enumerate() {
                let ginv = g_inv.get(ce, cb);
                let gmid = gt.get(ra, rc);
                if ginv.is_zero() || gmid.is_zero() {
                    continue;
                }
                let prod = alg.mul(&alg.mul(&alg.mul(ginv, &cu), gmid), &basis[u2]);
                gram.set(i, j, alg.trace_k(&prod));
            }
        }
        WSpace { positions, index, rows: wt.len(), cols: w.len(), pair, gram }
    }

    pub fn dim(&self) -> usize {
        self.positions.len()
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn heisenberg_group(&self) -> Result<HeisenbergGroup> {
        HeisenbergGroup::new(self.gram.clone())
    }

    /// Coordinates of a map `V → Ṽ`, or `None` if it does not preserve weights.
    pub fn coordinates(&self, a: &DMatrix) -> Option<Vec<Rational>> {
        if a.rows() != self.rows || a.cols() != self.cols {
            return None;
        }
        let d = a.algebra().dim();
        let mut out = vec![Rational::zero(); self.dim()];
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                let x = a.get(r, c);
                if x.is_zero() {
                    continue;
                }
                for u in 0..d {
                    if x.0[u].is_zero() {
                        continue;
                    }
                    let i = *self.index.get(&(r, c, u))?;
                    out[i] = x.0[u].clone();
                }
            }
        }
        Some(out)
    }

    pub fn element(&self, coords: &[Rational]) -> DMatrix {
        let alg = self.pair.v().algebra();
        let mut a = DMatrix::zeros(alg, self.rows, self.cols);
        for (&(r, c, u), x) in self.positions.iter().zip(coords) {
            if !x.is_zero() {
                let mut e = a.get(r, c).clone();
                e.0[u] = x.clone();
                a.set(r, c, e);
            }
        }
        a
    }

    /// `⟨A, B⟩ = Tr_k(A* B)` computed from the matrices directly.
    pub fn pairing(&self, a: &DMatrix, b: &DMatrix) -> Result<Rational> {
        self.pair.adjoint(a)?.trace_k_of_product(b)
    }
}

/// `(I + A)(I − A)⁻¹`, an isometry whenever `A ∈ 𝔤` and `I − A` is invertible.
pub fn cayley(a: &DMatrix) -> Result<DMatrix> {
    let id = DMatrix::identity(a.algebra(), a.rows());
    id.add(a)?.matmul(&id.sub(a)?.inverse()?)
}
