//! Sesquilinear Young tableaux and the modules they build.
//!
//! A row `(t, i, ε_t, F)` stands for `i` Jordan blocks of size `t`; the
//! multiplicity space carries the `ε_t`-Hermitian form `F` and the block
//! itself is `W ⊗ k^t` with the standard irreducible sl₂ action on `k^t`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::dlinalg::{DMatrix, QMatrix};
use crate::error::{Error, Result};
use crate::hermitian::HermitianModule;
use crate::scalars::{AlgebraSpec, Coords, Rational, Sign};
use crate::sl2::Sl2Triple;

/// The standard irreducible representation of sl₂ on `k^m`.
///
/// Basis `f_p = Y^p f_0`: `Y f_p = f_{p+1}`, `X f_p = p(m−p) f_{p−1}` and
/// `H f_p = (m − 1 − 2p) f_p`.
#[derive(Clone, Debug)]
pub struct Sl2Irrep {
    pub x: QMatrix,
    pub h: QMatrix,
    pub y: QMatrix,
}

pub fn sl2_irrep(m: usize) -> Sl2Irrep {
    let mut x = QMatrix::zeros(m, m);
    let mut h = QMatrix::zeros(m, m);
    let mut y = QMatrix::zeros(m, m);
    for p in 0..m {
        h.set(p, p, Rational::from_int(m as i64 - 1 - 2 * p as i64));
        if p + 1 < m {
            y.set(p + 1, p, Rational::one());
        }
        if p > 0 {
            x.set(p - 1, p, Rational::from_int((p * (m - p)) as i64));
        }
    }
    Sl2Irrep { x, h, y }
}

/// The sl₂-invariant bilinear form on `k^m`, normalized by `(f_0, f_{m−1}) = 1`.
///
/// Found as the one-dimensional solution space of `eᵗC + Ce = 0` for
/// `e ∈ {X, H, Y}`; results are cached per `m`.
pub fn invariant_form(m: usize) -> QMatrix {
    assert!(m >= 1, "invariant_form needs m >= 1");
    static CACHE: OnceLock<Mutex<HashMap<usize, QMatrix>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().expect("cache lock").get(&m) {
        return c.clone();
    }
    let c = solve_invariant_form(m);
    cache.lock().expect("cache lock").insert(m, c.clone());
    c
}

fn solve_invariant_form(m: usize) -> QMatrix {
    let rep = sl2_irrep(m);
    let var = |i: usize, j: usize| i * m + j;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for e in [&rep.x, &rep.h, &rep.y] {
        // entry (i, j) of eᵗC + Ce
        for i in 0..m {
            for j in 0..m {
                let mut row = vec![Rational::zero(); m * m];
                for k in 0..m {
                    if !e.get(k, i).is_zero() {
                        row[var(k, j)] += e.get(k, i);
                    }
                    if !e.get(k, j).is_zero() {
                        row[var(i, k)] += e.get(k, j);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        rows.push(vec![Rational::zero(); m * m]);
    }
    let ns = QMatrix::from_rows(rows).nullspace();
    assert_eq!(ns.len(), 1, "invariant form is unique up to scalar");
    let v = &ns[0];
    let norm = v[var(0, m - 1)].recip().expect("(f_0, f_{m-1}) is nonzero");
    let mut c = QMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            c.set(i, j, &v[var(i, j)] * &norm);
        }
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauRow {
    pub t: usize,
    pub mult: usize,
    pub eps: Sign,
    pub form: HermitianModule,
}

impl TableauRow {
    pub fn new(t: usize, form: HermitianModule) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidTableau("part lengths must be positive".into()));
        }
        if form.dim() == 0 {
            return Err(Error::InvalidTableau(format!("row of length {t} has multiplicity 0")));
        }
        Ok(TableauRow { t, mult: form.dim(), eps: form.epsilon(), form })
    }

    /// Sign of the form this row induces on `V`: `(−1)^{t−1} ε_t`.
    pub fn induced_sign(&self) -> Sign {
        Sign::parity(self.t - 1) * self.eps
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungTableau {
    algebra: AlgebraSpec,
    rows: Vec<TableauRow>,
}

impl YoungTableau {
    /// Rows must have strictly decreasing lengths and share one algebra.
    pub fn new(algebra: AlgebraSpec, rows: Vec<TableauRow>) -> Result<Self> {
        for w in rows.windows(2) {
            if w[0].t <= w[1].t {
                return Err(Error::InvalidTableau(format!(
                    "part lengths must strictly decrease, got {} then {}",
                    w[0].t, w[1].t
                )));
            }
        }
        for r in &rows {
            if r.form.algebra() != &algebra {
                return Err(Error::SpecMismatch);
            }
            if r.form.dim() != r.mult || r.form.epsilon() != r.eps {
                return Err(Error::InvalidTableau(format!(
                    "row {}: attached form does not match (mult, eps)",
                    r.t
                )));
            }
        }
        Ok(YoungTableau { algebra, rows })
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }

    pub fn rows(&self) -> &[TableauRow] {
        &self.rows
    }

    /// `Σ t_j i_j`, the D-dimension of the module.
    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.t * r.mult).sum()
    }

    /// Number of Jordan blocks `Σ i_j`.
    pub fn block_count(&self) -> usize {
        self.rows.iter().map(|r| r.mult).sum()
    }

    /// Parts listed with multiplicity, largest first.
    pub fn partition(&self) -> Vec<usize> {
        self.rows.iter().flat_map(|r| std::iter::repeat_n(r.t, r.mult)).collect()
    }

    /// `(−1)^{t_j−1} ε_j = ε` on every row.
    pub fn is_admissible(&self, epsilon: Sign) -> bool {
        self.rows.iter().all(|r| r.induced_sign() == epsilon)
    }

    /// The unique ε for which the tableau is admissible, if the rows agree.
    pub fn admissible_sign(&self) -> Option<Sign> {
        let first = self.rows.first()?.induced_sign();
        self.is_admissible(first).then_some(first)
    }

    /// Compact label such as `[3^2,2^3,1^2]`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self
            .rows
            .iter()
            .map(|r| if r.mult == 1 { r.t.to_string() } else { format!("{}^{}", r.t, r.mult) })
            .collect();
        format!("[{}]", parts.join(","))
    }
}

/// Placement of one tableau row inside the built module: the basis vector
/// `w_a ⊗ f_p` sits at index `offset + a·t + p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RowBlock {
    pub t: usize,
    pub mult: usize,
    pub offset: usize,
}

impl RowBlock {
    pub fn index(&self, a: usize, p: usize) -> usize {
        self.offset + a * self.t + p
    }
}

#[derive(Clone, Debug)]
pub struct BuiltModule {
    pub module: HermitianModule,
    pub triple: Sl2Triple,
    pub blocks: Vec<RowBlock>,
}

/// `V = ⊕ W_j ⊗ k^{t_j}` with Gram `F_j ⊗ (·,·)_{t_j}` and triple `I ⊗ {x, h, y}`.
pub fn build_module(tableau: &YoungTableau, epsilon: Sign) -> Result<BuiltModule> {
    if !tableau.is_admissible(epsilon) {
        return Err(Error::Inadmissible(epsilon.value()));
    }
    let alg = tableau.algebra();
    let n = tableau.size();
    let mut gram = DMatrix::zeros(alg, n, n);
    let mut x = DMatrix::zeros(alg, n, n);
    let mut h = DMatrix::zeros(alg, n, n);
    let mut y = DMatrix::zeros(alg, n, n);
    let mut blocks = Vec::new();
    let mut offset = 0;
    for row in tableau.rows() {
        let t = row.t;
        let block = RowBlock { t, mult: row.mult, offset };
        let c = invariant_form(t);
        let rep = sl2_irrep(t);
        let f = row.form.gram();
        for a in 0..row.mult {
            for b in 0..row.mult {
                let fab = f.get(a, b);
                if fab.is_zero() {
                    continue;
                }
                for p in 0..t {
                    for q in 0..t {
                        let cpq = c.get(p, q);
                        if !cpq.is_zero() {
                            gram.set(block.index(a, p), block.index(b, q), fab.scale(cpq));
                        }
                    }
                }
            }
            for p in 0..t {
                for q in 0..t {
                    for (target, src) in [(&mut x, &rep.x), (&mut h, &rep.h), (&mut y, &rep.y)] {
                        let v = src.get(p, q);
                        if !v.is_zero() {
                            target.set(block.index(a, p), block.index(a, q), Coords::scalar(v.clone()));
                        }
                    }
                }
            }
        }
        blocks.push(block);
        offset += t * row.mult;
    }
    let module = HermitianModule::new(epsilon, gram)?;
    let triple = Sl2Triple::new(module.clone(), x, h, y)?;
    Ok(BuiltModule { module, triple, blocks })
}

/// Jordan type of a nilpotent matrix from its rank sequence: the number of
/// parts `≥ m` is `rank X^{m−1} − rank X^m`.
pub fn jordan_type(x: &DMatrix) -> Result<Vec<usize>> {
    if !x.is_square() {
        return Err(Error::NotSquare { rows: x.rows(), cols: x.cols() });
    }
    let n = x.rows();
    let mut ranks = vec![n];
    let mut p = DMatrix::identity(x.algebra(), n);
    while *ranks.last().expect("nonempty") > 0 {
        if ranks.len() > n + 1 {
            return Err(Error::NotNilpotent);
        }
        p = p.matmul(x)?;
        let r = p.rank();
        if r == *ranks.last().expect("nonempty") {
            return Err(Error::NotNilpotent);
        }
        ranks.push(r);
    }
    Ok(partition_from_ranks(&ranks))
}

/// Parts from `ranks[m] = rank X^m`.
pub fn partition_from_ranks(ranks: &[usize]) -> Vec<usize> {
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for m in (1..=at_least.len()).rev() {
        let exactly = at_least[m - 1] - at_least.get(m).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(m, exactly));
    }
    parts
}

/// Whether partition `a` is dominated by `b` (same total, partial sums of `a` ≤ those of `b`).
pub fn dominated_by(a: &[usize], b: &[usize]) -> bool {
    if a.iter().sum::<usize>() != b.iter().sum::<usize>() {
        return false;
    }
    let (mut sa, mut sb) = (0, 0);
    for k in 0..a.len().max(b.len()) {
        sa += a.get(k).copied().unwrap_or(0);
        sb += b.get(k).copied().unwrap_or(0);
        if sa > sb {
            return false;
        }
    }
    true
}

/// Default form on the `s` new length-one rows of a lift.
///
/// Identity for `ε̃ = +1`. For `ε̃ = −1` over `k` the anti-diagonal
/// hyperbolic form (needs `s` even); over a larger D, `u·I` with `u` the
/// first imaginary unit.
pub fn default_new_row_form(algebra: &AlgebraSpec, eps_tilde: Sign, s: usize) -> Result<HermitianModule> {
    match (eps_tilde, algebra.imaginary_unit()) {
        (Sign::Plus, _) => HermitianModule::new(Sign::Plus, DMatrix::identity(algebra, s)),
        (Sign::Minus, Some(u)) => HermitianModule::diagonal(algebra, Sign::Minus, &vec![u; s]),
        (Sign::Minus, None) => {
            if s % 2 == 1 {
                return Err(Error::InvalidTableau(format!(
                    "no nondegenerate alternating form of odd dimension {s} over k"
                )));
            }
            let g = DMatrix::from_fn(algebra, s, s, |r, c| {
                if r + c + 1 != s {
                    Coords::zero()
                } else if r < s / 2 {
                    Coords::one()
                } else {
                    Coords::scalar(Rational::from_int(-1))
                }
            });
            HermitianModule::new(Sign::Minus, g)
        }
    }
}

/// Θ(Γ): every row grows by one box and keeps its form; `s = dim Ṽ − dim V − Σ i_j`
/// new rows of length one carry `new_row_form` (or the default).
///
/// Lifted lengths stay strictly decreasing and are all `≥ 2`, so no two
/// rows of the result ever share a length.
pub fn theta_lift_tableau(
    tableau: &YoungTableau,
    epsilon: Sign,
    dim_vtilde: usize,
    new_row_form: Option<HermitianModule>,
) -> Result<YoungTableau> {
    if !tableau.is_admissible(epsilon) {
        return Err(Error::Inadmissible(epsilon.value()));
    }
    let s = dim_vtilde as i64 - tableau.size() as i64 - tableau.block_count() as i64;
    if s < 0 {
        return Err(Error::SizeViolation(s));
    }
    let s = s as usize;
    let eps_tilde = -epsilon;
    let mut rows: Vec<TableauRow> = tableau
        .rows()
        .iter()
        .map(|r| TableauRow { t: r.t + 1, ..r.clone() })
        .collect();
    if s > 0 {
        let form = match new_row_form {
            Some(f) => {
                if f.dim() != s || f.epsilon() != eps_tilde || f.algebra() != tableau.algebra() {
                    return Err(Error::InvalidTableau(format!(
                        "new-row form must be a {}-Hermitian module of dim {s}",
                        eps_tilde.value()
                    )));
                }
                f
            }
            None => default_new_row_form(tableau.algebra(), eps_tilde, s)?,
        };
        rows.push(TableauRow::new(1, form)?);
    }
    YoungTableau::new(tableau.algebra().clone(), rows)
}

/// Equivalence certified by one change of basis per row: `P_j† F¹_j P_j = F²_j`.
pub fn tableau_equivalent(a: &YoungTableau, b: &YoungTableau, certificates: &[DMatrix]) -> bool {
    if a.algebra() != b.algebra() || a.rows().len() != b.rows().len() || certificates.len() != a.rows().len() {
        return false;
    }
    a.rows().iter().zip(b.rows()).zip(certificates).all(|((ra, rb), p)| {
        ra.t == rb.t
            && ra.mult == rb.mult
            && ra.eps == rb.eps
            && p.rows() == ra.mult
            && p.cols() == rb.mult
            && p.algebra() == a.algebra()
            && ra.form.restrict(p).ok().as_ref() == Some(rb.form.gram())
    })
}

#[derive(Serialize, Deserialize)]
struct RowJson {
    t: usize,
    mult: usize,
    eps: Sign,
    gram: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    epsilon: Sign,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    algebra: Option<AlgebraSpec>,
    rows: Vec<RowJson>,
}

/// A tableau together with the sign of the module it describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauSpec {
    pub epsilon: Sign,
    pub tableau: YoungTableau,
}

impl TableauSpec {
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: TableauJson = serde_json::from_value(v.clone())?;
        let algebra = j.algebra.unwrap_or(AlgebraSpec::Field);
        let mut rows = Vec::new();
        for r in j.rows {
            let gram = DMatrix::from_json_value(&algebra, &r.gram)?;
            if gram.rows() != r.mult {
                return Err(Error::InvalidTableau(format!(
                    "row {}: mult {} but gram has {} rows",
                    r.t,
                    r.mult,
                    gram.rows()
                )));
            }
            rows.push(TableauRow::new(r.t, HermitianModule::new(r.eps, gram)?)?);
        }
        Ok(TableauSpec { epsilon: j.epsilon, tableau: YoungTableau::new(algebra, rows)? })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let alg = self.tableau.algebra();
        let rows: Vec<RowJson> = self
            .tableau
            .rows()
            .iter()
            .map(|r| RowJson {
                t: r.t,
                mult: r.mult,
                eps: r.eps,
                gram: serde_json::to_value(r.form.gram()).expect("serializable"),
            })
            .collect();
        let j = TableauJson {
            epsilon: self.epsilon,
            algebra: (!alg.is_field()).then(|| alg.clone()),
            rows,
        };
        serde_json::to_value(j).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn diag(eps: Sign, entries: &[i64]) -> HermitianModule {
        let e: Vec<Coords> = entries.iter().map(|&x| Coords::scalar(r(x))).collect();
        HermitianModule::diagonal(&AlgebraSpec::Field, eps, &e).unwrap()
    }

    fn hyp(m: usize) -> HermitianModule {
        HermitianModule::hyperbolic(&AlgebraSpec::Field, Sign::Minus, m)
    }

    pub(crate) fn example14() -> YoungTableau {
        YoungTableau::new(
            AlgebraSpec::Field,
            vec![
                TableauRow::new(3, hyp(1)).unwrap(),
                TableauRow::new(2, diag(Sign::Plus, &[1, -1, 2])).unwrap(),
                TableauRow::new(1, hyp(1)).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn invariant_form_small_cases() {
        assert_eq!(invariant_form(1), QMatrix::from_ints(&[&[1]]));
        let c2 = invariant_form(2);
        assert_eq!(c2, QMatrix::from_ints(&[&[0, 1], &[-1, 0]]));
        assert!(c2.is_antisymmetric());
        let c3 = invariant_form(3);
        assert_eq!(c3, c3.transpose());
        let rep = sl2_irrep(3);
        for e in [&rep.x, &rep.h, &rep.y] {
            assert!(e.transpose().mul(&c3).add(&c3.mul(e)).is_zero());
        }
    }

    #[test]
    fn invariant_form_matches_alternating_antidiagonal() {
        // oracle: (f_p, f_{m-1-p}) = (-1)^p, all other pairings vanish
        for m in 1..=12 {
            let c = invariant_form(m);
            for p in 0..m {
                for q in 0..m {
                    let expect = if p + q + 1 == m { Sign::parity(p).rational() } else { Rational::zero() };
                    assert_eq!(c.get(p, q), &expect, "m={m} ({p},{q})");
                }
            }
        }
    }

    #[test]
    fn admissibility_examples() {
        let two = YoungTableau::new(AlgebraSpec::Field, vec![TableauRow::new(2, diag(Sign::Plus, &[1])).unwrap()])
            .unwrap();
        assert!(two.is_admissible(Sign::Minus));
        assert!(!two.is_admissible(Sign::Plus));
        let ones =
            YoungTableau::new(AlgebraSpec::Field, vec![TableauRow::new(1, diag(Sign::Plus, &[1, 1, 1])).unwrap()])
                .unwrap();
        assert!(ones.is_admissible(Sign::Plus));
        let ex = example14();
        assert_eq!(ex.size(), 14);
        assert_eq!(ex.admissible_sign(), Some(Sign::Minus));
        let signs: Vec<Sign> = ex.rows().iter().map(|r| r.eps).collect();
        assert_eq!(signs, vec![Sign::Minus, Sign::Plus, Sign::Minus]);
    }

    #[test]
    fn build_zero_orbit() {
        let ones =
            YoungTableau::new(AlgebraSpec::Field, vec![TableauRow::new(1, diag(Sign::Plus, &[1, -2])).unwrap()])
                .unwrap();
        let b = build_module(&ones, Sign::Plus).unwrap();
        assert_eq!(b.module.dim(), 2);
        assert!(b.triple.x().is_zero() && b.triple.h().is_zero() && b.triple.y().is_zero());
    }

    #[test]
    fn build_single_block_of_two() {
        let f = AlgebraSpec::Field;
        let two = YoungTableau::new(f.clone(), vec![TableauRow::new(2, diag(Sign::Plus, &[1])).unwrap()]).unwrap();
        let b = build_module(&two, Sign::Minus).unwrap();
        assert_eq!(b.module.gram(), &DMatrix::from_ints(&f, &[&[0, 1], &[-1, 0]]));
        let (x, h, y) = (b.triple.x(), b.triple.h(), b.triple.y());
        assert_eq!(h.commutator(x).unwrap(), x.scale(&r(2)));
        assert_eq!(x.commutator(y).unwrap(), *h);
        assert_eq!(jordan_type(x).unwrap(), vec![2]);
        assert!(matches!(build_module(&two, Sign::Plus), Err(Error::Inadmissible(1))));
    }

    #[test]
    fn build_example14_round_trip() {
        let b = build_module(&example14(), Sign::Minus).unwrap();
        assert_eq!(b.module.dim(), 14);
        assert_eq!(jordan_type(b.triple.x()).unwrap(), vec![3, 3, 2, 2, 2, 1, 1]);
    }

    #[test]
    fn jordan_type_examples() {
        let f = AlgebraSpec::Field;
        assert_eq!(jordan_type(&DMatrix::zeros(&f, 3, 3)).unwrap(), vec![1, 1, 1]);
        let j = DMatrix::from_ints(&f, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(jordan_type(&j).unwrap(), vec![3]);
        assert!(matches!(jordan_type(&DMatrix::identity(&f, 2)), Err(Error::NotNilpotent)));
    }

    #[test]
    fn theta_lift_examples() {
        let f = AlgebraSpec::Field;
        let two = YoungTableau::new(f.clone(), vec![TableauRow::new(2, diag(Sign::Plus, &[1])).unwrap()]).unwrap();
        let l = theta_lift_tableau(&two, Sign::Minus, 3, None).unwrap();
        assert_eq!(l.partition(), vec![3]);
        assert_eq!(l.rows()[0].form, diag(Sign::Plus, &[1]));
        assert!(l.is_admissible(Sign::Plus));

        let ones = YoungTableau::new(f.clone(), vec![TableauRow::new(1, diag(Sign::Plus, &[1, 1])).unwrap()]).unwrap();
        let l = theta_lift_tableau(&ones, Sign::Plus, 6, None).unwrap();
        assert_eq!(l.partition(), vec![2, 2, 1, 1]);
        assert_eq!(l.rows()[1].mult, 6 - 2 - 2);
        assert!(l.is_admissible(Sign::Minus));

        let l = theta_lift_tableau(&example14(), Sign::Minus, 21, None).unwrap();
        assert_eq!(l.partition(), vec![4, 4, 3, 3, 3, 2, 2]);
        assert_eq!(l.size(), 21);

        assert!(matches!(theta_lift_tableau(&example14(), Sign::Minus, 20, None), Err(Error::SizeViolation(-1))));
        assert!(theta_lift_tableau(&ones, Sign::Plus, 5, None).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let f = AlgebraSpec::Field;
        let one = |x| YoungTableau::new(f.clone(), vec![TableauRow::new(1, diag(Sign::Plus, &[x])).unwrap()]).unwrap();
        let ex = example14();
        let ids: Vec<DMatrix> = ex.rows().iter().map(|r| DMatrix::identity(&f, r.mult)).collect();
        assert!(tableau_equivalent(&ex, &ex, &ids));
        let half = DMatrix::from_rational(&f, &QMatrix::from_rows(vec![vec![Rational::new(1, 2)]]));
        assert!(tableau_equivalent(&one(4), &one(1), &[half]));
        for p in [1, 2, -3] {
            assert!(!tableau_equivalent(&one(1), &one(-1), &[DMatrix::from_ints(&f, &[&[p]])]));
        }
    }

    #[test]
    fn dominance() {
        assert!(dominated_by(&[2, 1, 1], &[3, 1]));
        assert!(!dominated_by(&[3, 1], &[2, 2]));
        assert!(dominated_by(&[2, 2], &[3, 1]));
        assert!(!dominated_by(&[2], &[3]));
    }

    #[test]
    fn json_round_trip() {
        let spec = TableauSpec { epsilon: Sign::Minus, tableau: example14() };
        let back = TableauSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(back, spec);
        let raw = serde_json::json!({"epsilon": -1, "rows": [{"t": 2, "mult": 1, "eps": 1, "gram": [["1"]]}]});
        assert_eq!(TableauSpec::from_json(&raw).unwrap().tableau.size(), 2);
    }
}
