//! Dense matrices over `k = ℚ` with exact Gauss–Jordan elimination.

use std::fmt;

use crate::scalars::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form plus pivot columns.
pub struct Rref {
    pub matrix: QMatrix,
    pub pivots: Vec<usize>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect(),
        )
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Self {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Rational::from_int(-1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "QMatrix product shape mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == &-self.get(j, i)))
    }

    pub fn rref(&self) -> Rref {
        let mut m: Vec<Vec<Rational>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let Some(sel) = (pr..self.rows).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(pr, sel);
            let inv = m[pr][c].recip().expect("nonzero pivot");
            if !inv.is_one() {
                for x in m[pr][c..].iter_mut() {
                    if !x.is_zero() {
                        *x *= &inv;
                    }
                }
            }
            let pivot_row = m[pr].clone();
            let support: Vec<usize> = (c..self.cols).filter(|&j| !pivot_row[j].is_zero()).collect();
            for (r, row) in m.iter_mut().enumerate() {
                if r == pr || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for &j in &support {
                    row[j] -= &(&f * &pivot_row[j]);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        Rref { matrix: QMatrix::from_rows_sized(self.rows, self.cols, m), pivots }
    }

    fn from_rows_sized(rows: usize, cols: usize, m: Vec<Vec<Rational>>) -> Self {
        QMatrix { rows, cols, data: m.into_iter().flatten().collect() }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : self·x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(i, f);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Rational::one());
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, matrix.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    /// Some `X` with `self·X = rhs`, taking free variables as zero; `None`
    /// when the system is inconsistent.
    pub fn solve(&self, rhs: &QMatrix) -> Option<QMatrix> {
        assert_eq!(self.rows, rhs.rows);
        let (n, m) = (self.cols, rhs.cols);
        let mut aug = QMatrix::zeros(self.rows, n + m);
        for r in 0..self.rows {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            for c in 0..m {
                aug.set(r, n + c, rhs.get(r, c).clone());
            }
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = QMatrix::zeros(n, m);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..m {
                x.set(p, c, matrix.get(i, n + c).clone());
            }
        }
        Some(x)
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", line.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Coordinates of vectors in the span of a fixed linearly independent family.
///
/// Precomputes a set of rows on which the family is invertible; lookups are
/// then one small product plus a full membership check.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    basis: QMatrix,
    rows: Vec<usize>,
    restricted_inv: QMatrix,
}

impl SpanSolver {
    /// `columns` must be linearly independent; returns `None` otherwise.
    pub fn new(len: usize, columns: &[Vec<Rational>]) -> Option<Self> {
        let basis = QMatrix::from_columns(len, columns);
        let m = columns.len();
        let rows = basis.transpose().rref().pivots;
        if rows.len() != m {
            return None;
        }
        let mut restricted = QMatrix::zeros(m, m);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..m {
                restricted.set(i, c, basis.get(r, c).clone());
            }
        }
        let restricted_inv = restricted.inverse()?;
        Some(SpanSolver { basis, rows, restricted_inv })
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let picked: Vec<Rational> = self.rows.iter().map(|&r| v[r].clone()).collect();
        let coords = self.restricted_inv.mul_vec(&picked);
        (self.basis.mul_vec(&coords) == v).then_some(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace() {
        let m = QMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(Rational::is_zero));
    }

    #[test]
    fn inverse_round_trip() {
        let m = QMatrix::from_ints(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(2));
        assert!(QMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = QMatrix::from_ints(&[&[1, 0], &[0, 2], &[1, 1]]);
        let b = QMatrix::from_ints(&[&[1], &[4], &[3]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let bad = QMatrix::from_ints(&[&[1], &[4], &[0]]);
        assert!(a.solve(&bad).is_none());
    }

    #[test]
    fn span_solver() {
        let cols = vec![
            vec![Rational::one(), Rational::zero(), Rational::one()],
            vec![Rational::zero(), Rational::one(), Rational::one()],
        ];
        let s = SpanSolver::new(3, &cols).unwrap();
        let v = vec![Rational::from_int(2), Rational::from_int(3), Rational::from_int(5)];
        assert_eq!(s.coordinates(&v).unwrap(), vec![Rational::from_int(2), Rational::from_int(3)]);
        let w = vec![Rational::from_int(2), Rational::from_int(3), Rational::from_int(4)];
        assert!(s.coordinates(&w).is_none());
    }
}
