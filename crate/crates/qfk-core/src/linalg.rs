//! Dense exact linear algebra over a [`ScalarField`]: matrices, reduced row
//! echelon spans with deterministic pivoting (first nonzero position, basis
//! order), nullspaces and inverses. Everything here is plumbing for the
//! module-theoretic computations; no approximation anywhere.

use crate::scalar::{Scalar, ScalarField};

#[derive(Clone, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
    field: ScalarField,
}

impl Matrix {
    pub fn zeros(field: &ScalarField, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &ScalarField, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &ScalarField, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
            field: field.clone(),
        }
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let t = f.add(out.get(i, j), &f.mul(a, b));
                    out.set(i, j, t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = f.zero();
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !f.is_zero(a) && !f.is_zero(&v[j]) {
                    acc = f.add(&acc, &f.mul(a, &v[j]));
                }
            }
            out[i] = acc;
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let mut out = self.clone();
        for i in 0..self.rows * self.cols {
            out.data[i] = f.add(&self.data[i], &other.data[i]);
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let mut out = self.clone();
        for i in 0..self.rows * self.cols {
            out.data[i] = f.sub(&self.data[i], &other.data[i]);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let f = &self.field;
        let mut out = self.clone();
        for v in &mut out.data {
            *v = f.mul(v, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..self.rows {
            acc = f.add(&acc, self.get(i, i));
        }
        acc
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut span = EchelonSpan::new(&self.field, self.cols);
        for i in 0..self.rows {
            span.insert(self.row(i).to_vec());
        }
        span.dim()
    }

    /// Inverse by Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = self.field.clone();
        let mut a = self.clone();
        let mut inv = Matrix::identity(&f, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !f.is_zero(a.get(r, col)))?;
            if pivot != col {
                for j in 0..n {
                    let (x, y) = (a.get(pivot, j).clone(), a.get(col, j).clone());
                    a.set(pivot, j, y);
                    a.set(col, j, x);
                    let (x, y) = (inv.get(pivot, j).clone(), inv.get(col, j).clone());
                    inv.set(pivot, j, y);
                    inv.set(col, j, x);
                }
            }
            let d = f.inv(a.get(col, col));
            for j in 0..n {
                a.set(col, j, f.mul(a.get(col, j), &d));
                inv.set(col, j, f.mul(inv.get(col, j), &d));
            }
            for r in 0..n {
                if r == col || f.is_zero(a.get(r, col)) {
                    continue;
                }
                let c = a.get(r, col).clone();
                for j in 0..n {
                    let t = f.sub(a.get(r, j), &f.mul(&c, a.get(col, j)));
                    a.set(r, j, t);
                    let t = f.sub(inv.get(r, j), &f.mul(&c, inv.get(col, j)));
                    inv.set(r, j, t);
                }
            }
        }
        Some(inv)
    }

    /// Basis of the right nullspace `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let f = &self.field;
        let mut span = EchelonSpan::new(f, self.cols);
        for i in 0..self.rows {
            span.insert(self.row(i).to_vec());
        }
        // with RREF rows, each free column yields one basis vector
        let pivots = span.pivot_cols();
        let mut out = vec![];
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row_idx, &pc) in span.pivot_cols().iter().enumerate() {
                let coeff = span.rows()[row_idx][free].clone();
                v[pc] = f.neg(&coeff);
            }
            out.push(v);
        }
        out
    }
}

/// A growing row space kept in reduced row echelon form. Pivots are the
/// first nonzero position of each row in ambient coordinate order, so the
/// result of every computation is reproducible.
#[derive(Clone, Debug)]
pub struct EchelonSpan {
    field: ScalarField,
    width: usize,
    rows: Vec<Vec<Scalar>>,
    /// pivot column of each row, strictly increasing is NOT guaranteed,
    /// but the col -> row map is unique
    pivot_of_row: Vec<usize>,
    row_of_col: Vec<Option<usize>>,
}

impl EchelonSpan {
    pub fn new(field: &ScalarField, width: usize) -> EchelonSpan {
        EchelonSpan {
            field: field.clone(),
            width,
            rows: vec![],
            pivot_of_row: vec![],
            row_of_col: vec![None; width],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Pivot columns in row insertion order.
    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_of_row
    }

    /// Reduces `v` against the span; the result has zeros in all pivot
    /// columns.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        let f = &self.field;
        for j in 0..self.width {
            if f.is_zero(&v[j]) {
                continue;
            }
            if let Some(r) = self.row_of_col[j] {
                let c = v[j].clone();
                let row = &self.rows[r];
                for k in j..self.width {
                    if !f.is_zero(&row[k]) {
                        v[k] = f.sub(&v[k], &f.mul(&c, &row[k]));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let f = &self.field;
        self.reduce(v.to_vec()).iter().all(|c| f.is_zero(c))
    }

    /// Inserts `v`; returns the new row's pivot column if the rank grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> Option<usize> {
        let f = self.field.clone();
        let v = self.reduce(v);
        let pivot = (0..self.width).find(|&j| !f.is_zero(&v[j]))?;
        let inv = f.inv(&v[pivot]);
        let mut row: Vec<Scalar> = v.iter().map(|c| f.mul(c, &inv)).collect();
        for k in 0..pivot {
            row[k] = f.zero();
        }
        // back-substitute into existing rows to keep the span fully reduced
        for r in 0..self.rows.len() {
            let c = self.rows[r][pivot].clone();
            if f.is_zero(&c) {
                continue;
            }
            for k in pivot..self.width {
                if !f.is_zero(&row[k]) {
                    let t = f.sub(&self.rows[r][k], &f.mul(&c, &row[k]));
                    self.rows[r][k] = t;
                }
            }
        }
        let idx = self.rows.len();
        self.rows.push(row);
        self.pivot_of_row.push(pivot);
        self.row_of_col[pivot] = Some(idx);
        Some(pivot)
    }

    /// Ambient coordinates that are not pivots, in increasing order; these
    /// index a basis of the quotient by the span.
    pub fn complement_cols(&self) -> Vec<usize> {
        (0..self.width)
            .filter(|j| self.row_of_col[*j].is_none())
            .collect()
    }
}
