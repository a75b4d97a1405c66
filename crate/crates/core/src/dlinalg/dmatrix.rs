//! Matrices of right-D-module maps `D^cols → D^rows`.
//!
//! Column vectors carry scalars on the right, so a matrix acts by ordinary
//! left multiplication and the entries of `A·B` are `Σ A[i][k]·B[k][j]` in that
//! order. Rank, kernels and inverses go through the k-linear realization,
//! which replaces every entry by its left-multiplication matrix.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::qmatrix::QMatrix;
use crate::error::{Error, Result};
use crate::scalars::{AlgebraSpec, Coords, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct DMatrix {
    rows: usize,
    cols: usize,
    algebra: AlgebraSpec,
    data: Vec<Coords>,
}

impl DMatrix {
    pub fn zeros(algebra: &AlgebraSpec, rows: usize, cols: usize) -> Self {
        DMatrix { rows, cols, algebra: algebra.clone(), data: vec![Coords::zero(); rows * cols] }
    }

    pub fn identity(algebra: &AlgebraSpec, n: usize) -> Self {
        Self::scalar(algebra, n, &Rational::one())
    }

    pub fn scalar(algebra: &AlgebraSpec, n: usize, s: &Rational) -> Self {
        let mut m = Self::zeros(algebra, n, n);
        for i in 0..n {
            m.set(i, i, Coords::scalar(s.clone()));
        }
        m
    }

    pub fn from_fn(
        algebra: &AlgebraSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Coords,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        DMatrix { rows, cols, algebra: algebra.clone(), data }
    }

    /// A matrix with entries in `k·1`.
    pub fn from_rational(algebra: &AlgebraSpec, m: &QMatrix) -> Self {
        Self::from_fn(algebra, m.rows(), m.cols(), |r, c| Coords::scalar(m.get(r, c).clone()))
    }

    pub fn from_ints(algebra: &AlgebraSpec, rows: &[&[i64]]) -> Self {
        Self::from_rational(algebra, &QMatrix::from_ints(rows))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Coords {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Coords) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Coords::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = self.get(r, c);
                    if r == c {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.algebra != o.algebra {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    fn check_shape(&self, o: &Self) -> Result<()> {
        self.check_same(o)?;
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_shape(o)?;
        Ok(DMatrix {
            rows: self.rows,
            cols: self.cols,
            algebra: self.algebra.clone(),
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_shape(o)?;
        Ok(DMatrix {
            rows: self.rows,
            cols: self.cols,
            algebra: self.algebra.clone(),
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        DMatrix {
            rows: self.rows,
            cols: self.cols,
            algebra: self.algebra.clone(),
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        DMatrix {
            rows: self.rows,
            cols: self.cols,
            algebra: self.algebra.clone(),
            data: self.data.iter().map(|a| a.scale(s)).collect(),
        }
    }

    /// Multiply every entry on the right by `x` (the module action on columns).
    pub fn right_scale(&self, x: &Coords) -> Self {
        DMatrix {
            rows: self.rows,
            cols: self.cols,
            algebra: self.algebra.clone(),
            data: self.data.iter().map(|a| self.algebra.mul(a, x)).collect(),
        }
    }

    pub fn matmul(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        if self.cols != o.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(&self.algebra, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let p = self.algebra.mul(a, b);
                    out.data[i * o.cols + j].add_assign(&p);
                }
            }
        }
        Ok(out)
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.matmul(o)?.sub(&o.matmul(self)?)
    }

    pub fn pow(&self, e: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut acc = Self::identity(&self.algebra, self.rows);
        for _ in 0..e {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    /// Conjugate transpose `A†`, with `(AB)† = B†A†`.
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(&self.algebra, self.cols, self.rows, |r, c| self.algebra.conj(self.get(c, r)))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.algebra, rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    pub fn columns(&self, cols: &[usize]) -> Self {
        let all: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all, cols)
    }

    pub fn column(&self, c: usize) -> Self {
        self.columns(&[c])
    }

    /// Concatenate column blocks with equal row counts.
    pub fn hstack(algebra: &AlgebraSpec, rows: usize, blocks: &[DMatrix]) -> Result<Self> {
        let cols = blocks.iter().map(DMatrix::cols).sum();
        let mut out = Self::zeros(algebra, rows, cols);
        let mut off = 0;
        for b in blocks {
            if b.rows != rows || &b.algebra != algebra {
                return Err(Error::Shape("hstack blocks disagree".into()));
            }
            for r in 0..rows {
                for c in 0..b.cols {
                    out.set(r, off + c, b.get(r, c).clone());
                }
            }
            off += b.cols;
        }
        Ok(out)
    }

    /// Block-diagonal sum.
    pub fn block_diag(algebra: &AlgebraSpec, blocks: &[DMatrix]) -> Self {
        let rows = blocks.iter().map(DMatrix::rows).sum();
        let cols = blocks.iter().map(DMatrix::cols).sum();
        let mut out = Self::zeros(algebra, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Block matrix whose `(r, c)` block is the left-multiplication matrix of `A[r][c]`.
    pub fn realize_k(&self) -> QMatrix {
        let d = self.algebra.dim();
        let mut m = QMatrix::zeros(self.rows * d, self.cols * d);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = self.get(r, c);
                if e.is_zero() {
                    continue;
                }
                let block = self.algebra.left_mul_matrix(e);
                for (i, line) in block.iter().enumerate() {
                    for (j, v) in line.iter().enumerate() {
                        if !v.is_zero() {
                            m.set(r * d + i, c * d + j, v.clone());
                        }
                    }
                }
            }
        }
        m
    }

    /// Inverse of [`realize_k`](Self::realize_k) for matrices of D-linear maps.
    ///
    /// Reads each entry off the first column of its block (`L(x)·1 = x`).
    pub fn from_realization(algebra: &AlgebraSpec, m: &QMatrix) -> Result<Self> {
        let d = algebra.dim();
        if !m.rows().is_multiple_of(d) || !m.cols().is_multiple_of(d) {
            return Err(Error::Shape("realization size not divisible by dim_k D".into()));
        }
        let out = Self::from_fn(algebra, m.rows() / d, m.cols() / d, |r, c| {
            let mut x = Coords::zero();
            for i in 0..d {
                x.0[i] = m.get(r * d + i, c * d).clone();
            }
            x
        });
        Ok(out)
    }

    /// The k-coordinates of a single column, flattened.
    pub fn column_k(&self, c: usize) -> Vec<Rational> {
        let d = self.algebra.dim();
        let mut v = Vec::with_capacity(self.rows * d);
        for r in 0..self.rows {
            v.extend(self.get(r, c).0[..d].iter().cloned());
        }
        v
    }

    /// All entries' k-coordinates, row-major.
    pub fn flatten_k(&self) -> Vec<Rational> {
        let d = self.algebra.dim();
        self.data.iter().flat_map(|x| x.0[..d].iter().cloned()).collect()
    }

    pub fn unflatten_k(algebra: &AlgebraSpec, rows: usize, cols: usize, v: &[Rational]) -> Self {
        let d = algebra.dim();
        assert_eq!(v.len(), rows * cols * d);
        Self::from_fn(algebra, rows, cols, |r, c| {
            let mut x = Coords::zero();
            let base = (r * cols + c) * d;
            x.0[..d].clone_from_slice(&v[base..base + d]);
            x
        })
    }

    /// Rank as a right D-module map: `rank_k(realize_k(A)) / dim_k D`.
    pub fn rank(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        self.realize_k().rank() / self.algebra.dim()
    }

    /// Columns spanning the right-D-module kernel, D-linearly independent.
    pub fn kernel_basis(&self) -> DMatrix {
        let d = self.algebra.dim();
        let null = self.realize_k().nullspace();
        let basis = self.algebra.basis();
        let mut chosen: Vec<Vec<Rational>> = Vec::new();
        let mut span: Vec<Vec<Rational>> = Vec::new();
        for v in null {
            let mut trial = span.clone();
            trial.push(v.clone());
            if QMatrix::from_columns(self.cols * d, &trial).rank() == span.len() {
                continue;
            }
            // right multiples v·e_b span the D-line through v
            let vm = Self::unflatten_k(&self.algebra, self.cols, 1, &v);
            for e in &basis {
                span.push(vm.right_scale(e).column_k(0));
            }
            chosen.push(v);
        }
        let mut out = Self::zeros(&self.algebra, self.cols, chosen.len());
        for (c, v) in chosen.iter().enumerate() {
            let col = Self::unflatten_k(&self.algebra, self.cols, 1, v);
            for r in 0..self.cols {
                out.set(r, c, col.get(r, 0).clone());
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let inv = self.realize_k().inverse().ok_or(Error::Singular)?;
        Self::from_realization(&self.algebra, &inv)
    }

    /// The unique `Q` with `self·Q = rhs`, for injective `self`.
    pub fn solve_left(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        if self.rows != rhs.rows {
            return Err(Error::Shape("solve_left row mismatch".into()));
        }
        let a = self.realize_k();
        if a.rank() != a.cols() {
            return Err(Error::Singular);
        }
        let x = a
            .solve(&rhs.realize_k())
            .ok_or_else(|| Error::NotInSubspace("right-hand side outside the image".into()))?;
        Self::from_realization(&self.algebra, &x)
    }

    /// Smallest `m` with `A^m = 0`, if `m ≤ rows`.
    pub fn nilpotency_index(&self) -> Option<usize> {
        if !self.is_square() {
            return None;
        }
        let mut p = Self::identity(&self.algebra, self.rows);
        for m in 0..=self.rows {
            if p.is_zero() {
                return Some(m);
            }
            p = p.matmul(self).ok()?;
        }
        None
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index().is_some()
    }

    /// `exp A = Σ A^j / j!`, a finite sum for nilpotent `A`.
    pub fn nilpotent_exp(&self) -> Result<Self> {
        let idx = self.nilpotency_index().ok_or(Error::NotNilpotent)?;
        let mut acc = Self::identity(&self.algebra, self.rows);
        let mut term = acc.clone();
        for j in 1..idx {
            term = term.matmul(self)?.scale(&Rational::new(1, j as i64));
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// `log U = Σ_{j≥1} (−1)^{j+1} (U − I)^j / j` for unipotent `U`.
    pub fn nilpotent_log(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.sub(&Self::identity(&self.algebra, self.rows))?;
        let idx = n.nilpotency_index().ok_or(Error::NotNilpotent)?;
        let mut acc = Self::zeros(&self.algebra, self.rows, self.cols);
        let mut power = Self::identity(&self.algebra, self.rows);
        for j in 1..idx {
            power = power.matmul(&n)?;
            let c = Rational::new(if j % 2 == 1 { 1 } else { -1 }, j as i64);
            acc = acc.add(&power.scale(&c))?;
        }
        Ok(acc)
    }

    /// `Σ_i trace_k(A[i][i])`, the trace of the k-realization.
    pub fn trace_k_map(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok((0..self.rows).map(|i| self.algebra.trace_k(self.get(i, i))).sum())
    }

    /// `trace_k(A·B)` without forming the product.
    pub fn trace_k_of_product(&self, o: &Self) -> Result<Rational> {
        self.check_same(o)?;
        if self.cols != o.rows || self.rows != o.cols {
            return Err(Error::Shape("trace of product needs A: m×n, B: n×m".into()));
        }
        let mut acc = Rational::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = o.get(k, i);
                if b.is_zero() {
                    continue;
                }
                acc += self.algebra.trace_k(&self.algebra.mul(a, b));
            }
        }
        Ok(acc)
    }
}

impl fmt::Debug for DMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.algebra.dim();
        writeln!(f, "DMatrix {}x{} over {:?} [", self.rows, self.cols, self.algebra)?;
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|c| {
                    let e = self.get(r, c);
                    if d == 1 {
                        e.0[0].to_string()
                    } else {
                        let parts: Vec<String> = e.0[..d].iter().map(ToString::to_string).collect();
                        format!("({})", parts.join(","))
                    }
                })
                .collect();
            writeln!(f, "  [{}]", line.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Row-major arrays of coordinate tuples. Algebra is carried by the container.
impl Serialize for DMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_rows().serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum EntryJson {
    Tuple(Vec<Rational>),
    Scalar(Rational),
}

impl DMatrix {
    pub fn to_json_rows(&self) -> Vec<Vec<Vec<Rational>>> {
        let d = self.algebra.dim();
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).0[..d].to_vec()).collect())
            .collect()
    }

    /// Parse rows of coordinate tuples (or bare scalars) over `algebra`.
    pub fn from_json_value(algebra: &AlgebraSpec, v: &serde_json::Value) -> Result<Self> {
        let rows: Vec<Vec<EntryJson>> = serde_json::from_value(v.clone())?;
        Self::from_entries(algebra, rows)
    }

    pub(crate) fn from_entries(algebra: &AlgebraSpec, rows: Vec<Vec<EntryJson>>) -> Result<Self> {
        let d = algebra.dim();
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut out = Self::zeros(algebra, nrows, ncols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::Parse("ragged matrix rows".into()));
            }
            for (c, e) in row.into_iter().enumerate() {
                let x = match e {
                    EntryJson::Scalar(s) => Coords::scalar(s),
                    EntryJson::Tuple(t) => {
                        if t.len() != d {
                            return Err(Error::Parse(format!(
                                "entry ({r},{c}) has {} coordinates, algebra needs {d}",
                                t.len()
                            )));
                        }
                        let mut x = Coords::zero();
                        x.0[..d].clone_from_slice(&t);
                        x
                    }
                };
                out.set(r, c, x);
            }
        }
        Ok(out)
    }
}

/// Matrices over `D = k` deserialize without extra context.
impl<'de> Deserialize<'de> for DMatrix {
    fn deserialize<De: Deserializer<'de>>(d: De) -> std::result::Result<Self, De::Error> {
        let rows = Vec::<Vec<EntryJson>>::deserialize(d)?;
        DMatrix::from_entries(&AlgebraSpec::Field, rows).map_err(De::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quat(v: [i64; 4]) -> Coords {
        Coords(v.map(Rational::from_int))
    }

    #[test]
    fn identity_is_neutral() {
        let f = AlgebraSpec::Field;
        let b = DMatrix::from_ints(&f, &[&[1, 2], &[3, 4]]);
        assert_eq!(DMatrix::identity(&f, 2).matmul(&b).unwrap(), b);
    }

    #[test]
    fn quaternion_entries_do_not_commute() {
        let h = AlgebraSpec::hamilton();
        let i = DMatrix::from_fn(&h, 1, 1, |_, _| quat([0, 1, 0, 0]));
        let j = DMatrix::from_fn(&h, 1, 1, |_, _| quat([0, 0, 1, 0]));
        let ij = i.matmul(&j).unwrap();
        let ji = j.matmul(&i).unwrap();
        assert_eq!(ij.get(0, 0), &quat([0, 0, 0, 1]));
        assert_eq!(ji.get(0, 0), &quat([0, 0, 0, -1]));
    }

    #[test]
    fn realize_identity_and_i() {
        let q = AlgebraSpec::quadratic(Rational::from_int(3)).unwrap();
        assert_eq!(DMatrix::identity(&q, 3).realize_k(), QMatrix::identity(6));
        let h = AlgebraSpec::hamilton();
        let i = DMatrix::from_fn(&h, 1, 1, |_, _| quat([0, 1, 0, 0]));
        let expect = QMatrix::from_ints(&[
            &[0, -1, 0, 0],
            &[1, 0, 0, 0],
            &[0, 0, 0, -1],
            &[0, 0, 1, 0],
        ]);
        assert_eq!(i.realize_k(), expect);
        assert_eq!(DMatrix::from_realization(&h, &expect).unwrap(), i);
    }

    #[test]
    fn rank_and_kernel_trivial_cases() {
        let f = AlgebraSpec::Field;
        let z = DMatrix::zeros(&f, 2, 3);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel_basis().cols(), 3);
        let id = DMatrix::identity(&f, 4);
        assert_eq!(id.rank(), 4);
        assert_eq!(id.kernel_basis().cols(), 0);
    }

    #[test]
    fn quaternion_proportional_columns_have_rank_one() {
        // second column = first column · (1 + j); the 8×8 realization has k-rank 4
        let h = AlgebraSpec::hamilton();
        let a = quat([1, 2, 0, 0]);
        let b = quat([0, 1, 1, 0]);
        let s = quat([1, 0, 1, 0]);
        let m = DMatrix::from_fn(&h, 2, 2, |r, c| {
            let base = if r == 0 { a.clone() } else { b.clone() };
            if c == 0 {
                base
            } else {
                h.mul(&base, &s)
            }
        });
        assert_eq!(m.realize_k().rank(), 4);
        assert_eq!(m.rank(), 1);
        let ker = m.kernel_basis();
        assert_eq!(ker.cols(), 1);
        assert!(m.matmul(&ker).unwrap().is_zero());
    }

    #[test]
    fn exp_and_log_small_cases() {
        let f = AlgebraSpec::Field;
        assert!(DMatrix::zeros(&f, 3, 3).nilpotent_exp().unwrap().is_identity());
        let n = DMatrix::from_ints(&f, &[&[0, 1], &[0, 0]]);
        assert_eq!(n.nilpotent_exp().unwrap(), DMatrix::from_ints(&f, &[&[1, 1], &[0, 1]]));
        assert!(matches!(
            DMatrix::identity(&f, 2).nilpotent_exp(),
            Err(Error::NotNilpotent)
        ));
        assert!(matches!(
            DMatrix::scalar(&f, 2, &Rational::from_int(2)).nilpotent_log(),
            Err(Error::NotNilpotent)
        ));
    }

    #[test]
    fn trace_examples() {
        let f = AlgebraSpec::Field;
        assert_eq!(DMatrix::identity(&f, 3).trace_k_map().unwrap(), Rational::from_int(3));
        let h = AlgebraSpec::hamilton();
        assert_eq!(DMatrix::identity(&h, 2).trace_k_map().unwrap(), Rational::from_int(8));
        assert!(DMatrix::zeros(&f, 2, 3).trace_k_map().is_err());
    }

    #[test]
    fn solve_left_recovers_factor() {
        let f = AlgebraSpec::Field;
        let t = DMatrix::from_ints(&f, &[&[1, 0], &[0, 1], &[1, 1]]);
        let q = DMatrix::from_ints(&f, &[&[2, 3], &[-1, 4]]);
        let rhs = t.matmul(&q).unwrap();
        assert_eq!(t.solve_left(&rhs).unwrap(), q);
        let bad = DMatrix::from_ints(&f, &[&[1, 0], &[0, 0], &[0, 0]]);
        assert!(t.solve_left(&bad).is_err());
    }

    #[test]
    fn json_shape() {
        let f = AlgebraSpec::Field;
        let m = DMatrix::from_ints(&f, &[&[1, -2]]);
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"[[["1"],["-2"]]]"#);
        let back: DMatrix = serde_json::from_str(r#"[[["1"],"-2"]]"#).unwrap();
        assert_eq!(back, m);
    }
}
