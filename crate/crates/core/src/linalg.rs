//! Exact linear algebra over [`Scalar`].

use std::collections::BTreeMap;
use std::fmt;

use crate::exterior::Scalar;

/// Sparse row: column → nonzero coefficient.
pub type SparseRow = BTreeMap<usize, Scalar>;

/// Incremental row echelon form for `A x = b` with sparse rows.
///
/// Rows are reduced against existing pivots as they arrive, so memory stays
/// proportional to the rank rather than the number of equations.
#[derive(Clone, Debug)]
pub struct SparseSystem {
    cols: usize,
    pivots: BTreeMap<usize, (SparseRow, Scalar)>,
    inconsistent: bool,
}

impl SparseSystem {
    pub fn new(cols: usize) -> Self {
        SparseSystem {
            cols,
            pivots: BTreeMap::new(),
            inconsistent: false,
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// Adds `Σ row[c]·x_c = rhs`. Returns `false` once the system is known
    /// to be inconsistent.
    pub fn add_equation(&mut self, mut row: SparseRow, mut rhs: Scalar) -> bool {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                if !rhs.is_zero() {
                    self.inconsistent = true;
                }
                return !self.inconsistent;
            };
            match self.pivots.get(&lead) {
                Some((prow, prhs)) => {
                    let factor = row[&lead].clone();
                    for (c, v) in prow {
                        let e = row.entry(*c).or_default();
                        *e -= &(&factor * v);
                        if e.is_zero() {
                            row.remove(c);
                        }
                    }
                    rhs -= &(&factor * prhs);
                }
                None => {
                    let inv = row[&lead].inv().expect("leading entry is nonzero");
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    rhs *= &inv;
                    self.pivots.insert(lead, (row, rhs));
                    return !self.inconsistent;
                }
            }
        }
    }

    fn back_substitute(&self, free: &BTreeMap<usize, Scalar>, homogeneous: bool) -> Vec<Scalar> {
        let mut x = vec![Scalar::zero(); self.cols];
        for (c, v) in free {
            x[*c] = v.clone();
        }
        for (&lead, (row, rhs)) in self.pivots.iter().rev() {
            let mut acc = if homogeneous { Scalar::zero() } else { rhs.clone() };
            for (c, v) in row.range(lead + 1..) {
                acc -= &(v * &x[*c]);
            }
            x[lead] = acc;
        }
        x
    }

    /// A particular solution with all free variables zero.
    pub fn solve(&self) -> Option<Vec<Scalar>> {
        if self.inconsistent {
            return None;
        }
        Some(self.back_substitute(&BTreeMap::new(), false))
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|c| !self.pivots.contains_key(c)).collect()
    }

    /// Basis of the homogeneous solution space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut free = BTreeMap::new();
                free.insert(f, Scalar::one());
                self.back_substitute(&free, true)
            })
            .collect()
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: &[Vec<Scalar>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] += &(a * b);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    fn system(&self) -> SparseSystem {
        let mut s = SparseSystem::new(self.cols);
        for i in 0..self.rows {
            let row: SparseRow = self
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect();
            s.add_equation(row, Scalar::zero());
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.system().rank()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        self.system().nullspace()
    }

    /// One solution of `A x = b`, if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut s = SparseSystem::new(self.cols);
        for (i, rhs) in b.iter().enumerate() {
            let row: SparseRow = self
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect();
            if !s.add_equation(row, rhs.clone()) {
                return None;
            }
        }
        s.solve()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Scalar::zero(); n];
            e[j] = Scalar::one();
            cols.push(self.solve(&e)?);
        }
        let inv = Matrix::from_columns(&cols);
        (self.mul(&inv) == Matrix::identity(n)).then_some(inv)
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                for j in 0..n {
                    let t = a.get(p, j).clone();
                    a.set(p, j, a.get(c, j).clone());
                    a.set(c, j, t);
                }
                det = -det;
            }
            let pivot = a.get(c, c).clone();
            det *= &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in c + 1..n {
                let f = a.get(r, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = a.get(r, j) - &(&f * a.get(c, j));
                    a.set(r, j, v);
                }
            }
        }
        det
    }

    /// Leading principal minor of order `k`.
    pub fn leading_minor(&self, k: usize) -> Scalar {
        let mut m = Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        m.determinant()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `true` if the column spans of the two vector lists coincide.
pub fn same_span(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    let ra = span_rank(a);
    let rb = span_rank(b);
    let both: Vec<Vec<Scalar>> = a.iter().chain(b).cloned().collect();
    ra == rb && span_rank(&both) == ra
}

/// Dimension of the span of a list of vectors.
pub fn span_rank(vs: &[Vec<Scalar>]) -> usize {
    let Some(first) = vs.first() else {
        return 0;
    };
    let mut s = SparseSystem::new(first.len());
    for v in vs {
        let row: SparseRow = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect();
        s.add_equation(row, Scalar::zero());
    }
    s.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.apply(&ns[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let x = a.solve(&[Scalar::int(3), Scalar::int(2)]).unwrap();
        assert_eq!(x, vec![Scalar::int(1), Scalar::int(1)]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert!(m(&[&[1, 2], &[2, 4]])
            .solve(&[Scalar::int(1), Scalar::int(1)])
            .is_none());
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let a = m(&[&[0, 2, 1], &[3, -1, 2], &[1, 1, 1]]);
        // 0·(−1−2) − 2·(3−2) + 1·(3+1) = 2
        assert_eq!(a.determinant(), Scalar::int(2));
        assert_eq!(a.leading_minor(2), Scalar::int(-6));
    }

    #[test]
    fn span_comparison() {
        let v = |x: &[i64]| x.iter().map(|&k| Scalar::int(k)).collect::<Vec<_>>();
        assert!(same_span(&[v(&[1, 0]), v(&[0, 1])], &[v(&[1, 1]), v(&[1, -1])]));
        assert!(!same_span(&[v(&[1, 0])], &[v(&[0, 1])]));
    }
}
