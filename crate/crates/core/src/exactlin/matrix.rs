//! Dense matrices over a runtime-selected field.
//!
//! Storage is specialised per field: residues as `u64`, rationals as big
//! fractions. All elimination routines are generic over [`Arith`] and are
//! monomorphised for both representations.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::field::{inv_mod, reduce_i64, Fe, Field};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Data {
    P(Vec<u64>),
    Q(Vec<BigRational>),
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Data,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

trait Arith {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    /// `acc - f * b`, the elimination kernel.
    fn axpy_neg(&self, acc: &Self::E, f: &Self::E, b: &Self::E) -> Self::E {
        self.sub(acc, &self.mul(f, b))
    }
}

struct PArith(u64);
struct QArith;

impl Arith for PArith {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.0)
    }
    fn axpy_neg(&self, acc: &u64, f: &u64, b: &u64) -> u64 {
        (acc + self.0 - f * b % self.0) % self.0
    }
}

impl Arith for QArith {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

/// In-place reduction to RREF; returns pivot columns.
fn rref_in_place<A: Arith>(ar: &A, m: &mut [A::E], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !ar.is_zero(&m[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = ar.inv(&m[r * cols + c]);
        for j in c..cols {
            m[r * cols + j] = ar.mul(&m[r * cols + j], &inv);
        }
        let pivot_row: Vec<A::E> = m[r * cols + c..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m[i * cols + c].clone();
            if ar.is_zero(&f) {
                continue;
            }
            for (off, pv) in pivot_row.iter().enumerate() {
                if ar.is_zero(pv) {
                    continue;
                }
                let j = c + off;
                m[i * cols + j] = ar.axpy_neg(&m[i * cols + j], &f, pv);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn matmul<A: Arith>(ar: &A, a: &[A::E], b: &[A::E], n: usize, k: usize, m: usize) -> Vec<A::E> {
    let mut out = vec![ar.zero(); n * m];
    for i in 0..n {
        for l in 0..k {
            let x = &a[i * k + l];
            if ar.is_zero(x) {
                continue;
            }
            for j in 0..m {
                let y = &b[l * m + j];
                if ar.is_zero(y) {
                    continue;
                }
                let idx = i * m + j;
                out[idx] = ar.add(&out[idx], &ar.mul(x, y));
            }
        }
    }
    out
}

fn matmul_p(p: u64, a: &[u64], b: &[u64], n: usize, k: usize, m: usize) -> Vec<u64> {
    // Accumulate in u128 rows and reduce once per entry.
    let mut out = vec![0u64; n * m];
    let mut acc = vec![0u128; m];
    for i in 0..n {
        acc.iter_mut().for_each(|x| *x = 0);
        for l in 0..k {
            let x = a[i * k + l];
            if x == 0 {
                continue;
            }
            let row = &b[l * m..(l + 1) * m];
            for (slot, &y) in acc.iter_mut().zip(row) {
                if y != 0 {
                    *slot += (x * y) as u128;
                }
            }
        }
        for j in 0..m {
            out[i * m + j] = (acc[j] % p as u128) as u64;
        }
    }
    out
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        let data = match field.characteristic() {
            0 => Data::Q(vec![BigRational::zero(); rows * cols]),
            _ => Data::P(vec![0; rows * cols]),
        };
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set_int(i, i, 1);
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> i64) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                if v != 0 {
                    m.set_int(i, j, v);
                }
            }
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix::from_fn(field, r, c, |i, j| rows[i][j])
    }

    /// Column matrix from field elements.
    pub fn column(field: Field, v: &[Fe]) -> Matrix {
        let mut m = Matrix::zeros(field, v.len(), 1);
        for (i, x) in v.iter().enumerate() {
            m.set(i, 0, x.clone());
        }
        m
    }

    /// Matrix whose columns are the given column matrices.
    pub fn from_columns(field: Field, rows: usize, cols: &[Matrix]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.rows, rows);
            assert_eq!(c.cols, 1);
            for i in 0..rows {
                if !c.is_zero_at(i, 0) {
                    m.set(i, j, c.get(i, 0));
                }
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let k = i * self.cols + j;
        match &self.data {
            Data::P(v) => Fe::Fp(v[k]),
            Data::Q(v) => Fe::Q(v[k].clone()),
        }
    }

    pub fn is_zero_at(&self, i: usize, j: usize) -> bool {
        let k = i * self.cols + j;
        match &self.data {
            Data::P(v) => v[k] == 0,
            Data::Q(v) => v[k].is_zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, x: Fe) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let k = i * self.cols + j;
        match (&mut self.data, x) {
            (Data::P(v), Fe::Fp(x)) => v[k] = x,
            (Data::Q(v), Fe::Q(x)) => v[k] = x,
            _ => panic!("field element does not match matrix field"),
        }
    }

    pub fn set_int(&mut self, i: usize, j: usize, x: i64) {
        let k = i * self.cols + j;
        match &mut self.data {
            Data::P(v) => v[k] = reduce_i64(x, self.field.characteristic()),
            Data::Q(v) => v[k] = BigRational::from_integer(x.into()),
        }
    }

    /// `self[i][j] += x`.
    pub fn add_at(&mut self, i: usize, j: usize, x: &Fe) {
        let k = i * self.cols + j;
        match (&mut self.data, x) {
            (Data::P(v), Fe::Fp(x)) => v[k] = (v[k] + x) % self.field.characteristic(),
            (Data::Q(v), Fe::Q(x)) => v[k] += x,
            _ => panic!("field element does not match matrix field"),
        }
    }

    pub fn add_int_at(&mut self, i: usize, j: usize, x: i64) {
        let fx = self.field.from_i64(x);
        self.add_at(i, j, &fx);
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Data::P(v) => v.iter().all(|&x| x == 0),
            Data::Q(v) => v.iter().all(|x| x.is_zero()),
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.field, self.rows)
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        match &self.data {
            Data::P(v) => v.iter().filter(|&&x| x != 0).count(),
            Data::Q(v) => v.iter().filter(|x| !x.is_zero()).count(),
        }
    }

    /// First entry where two equally shaped matrices differ.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) != other.get(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.is_zero_at(i, j) {
                    t.set(j, i, self.get(i, j));
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let data = match (&self.data, &other.data) {
            (Data::P(a), Data::P(b)) => Data::P(matmul_p(self.field.characteristic(), a, b, n, k, m)),
            (Data::Q(a), Data::Q(b)) => Data::Q(matmul(&QArith, a, b, n, k, m)),
            _ => unreachable!(),
        };
        Matrix { field: self.field, rows: n, cols: m, data }
    }

    fn zip_with(&self, other: &Matrix, sub: bool) -> Matrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = match (&self.data, &other.data) {
            (Data::P(a), Data::P(b)) => {
                let p = self.field.characteristic();
                Data::P(
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| if sub { (x + p - y) % p } else { (x + y) % p })
                        .collect(),
                )
            }
            (Data::Q(a), Data::Q(b)) => {
                Data::Q(a.iter().zip(b).map(|(x, y)| if sub { x - y } else { x + y }).collect())
            }
            _ => unreachable!(),
        };
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, false)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, true)
    }

    pub fn neg(&self) -> Matrix {
        Matrix::zeros(self.field, self.rows, self.cols).sub(self)
    }

    pub fn scale(&self, s: &Fe) -> Matrix {
        let mut out = self.clone();
        match (&mut out.data, s) {
            (Data::P(v), Fe::Fp(s)) => {
                let p = self.field.characteristic();
                v.iter_mut().for_each(|x| *x = *x * s % p);
            }
            (Data::Q(v), Fe::Q(s)) => v.iter_mut().for_each(|x| *x = &*x * s),
            _ => panic!("field element does not match matrix field"),
        }
        out
    }

    pub fn scale_int(&self, s: i64) -> Matrix {
        self.scale(&self.field.from_i64(s))
    }

    /// Kronecker product; row and column indices are ordered left factor major.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "field mismatch");
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(self.field, r, c);
        let f = self.field;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.is_zero_at(i, j) {
                    continue;
                }
                let a = self.get(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        if other.is_zero_at(k, l) {
                            continue;
                        }
                        let v = f.mul(&a, &other.get(k, l));
                        out.set(i * other.rows + k, j * other.cols + l, v);
                    }
                }
            }
        }
        out
    }

    pub fn hstack(field: Field, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.set_block(0, off, m);
            off += m.cols;
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            out.set_block(off, 0, m);
            off += m.rows;
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(field: Field, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for m in parts {
            out.set_block(r, c, m);
            r += m.rows;
            c += m.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Matrix) {
        assert!(r0 + m.rows <= self.rows && c0 + m.cols <= self.cols, "block out of range");
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.set(r0 + i, c0 + j, m.get(i, j));
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if !self.is_zero_at(r0 + i, c0 + j) {
                    out.set(i, j, self.get(r0 + i, c0 + j));
                }
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, idx.len(), self.cols);
        for (ni, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                if !self.is_zero_at(i, j) {
                    out.set(ni, j, self.get(i, j));
                }
            }
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (nj, &j) in idx.iter().enumerate() {
                if !self.is_zero_at(i, j) {
                    out.set(i, nj, self.get(i, j));
                }
            }
        }
        out
    }

    pub fn col(&self, j: usize) -> Matrix {
        self.select_cols(&[j])
    }

    pub fn col_vec(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = match &mut m.data {
            Data::P(v) => rref_in_place(&PArith(self.field.characteristic()), v, self.rows, self.cols),
            Data::Q(v) => rref_in_place(&QArith, v, self.rows, self.cols),
        };
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().pivots.len()
    }

    /// Basis of the right null space, as columns. Free variables are set to
    /// unit vectors in increasing column order.
    pub fn nullspace(&self) -> Matrix {
        let Rref { matrix: r, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.field, self.cols, free.len());
        let f = self.field;
        for (k, &fc) in free.iter().enumerate() {
            out.set_int(fc, k, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                if !r.is_zero_at(row, fc) {
                    out.set(pc, k, f.neg(&r.get(row, fc)));
                }
            }
        }
        out
    }

    /// Basis of the left null space, as rows: `y * self = 0`.
    pub fn left_nullspace(&self) -> Matrix {
        self.transpose().nullspace().transpose()
    }

    /// Columns of `self` forming a basis of its column space.
    pub fn column_basis(&self) -> Matrix {
        let piv = self.rref().pivots;
        self.select_cols(&piv)
    }

    /// Solves `self * x = b` column by column. Free variables are zero.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "right-hand side has wrong height");
        let aug = Matrix::hstack(self.field, self.rows, &[self, b]);
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                if !r.is_zero_at(row, self.cols + j) {
                    x.set(pc, j, r.get(row, self.cols + j));
                }
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let inv = self.solve(&Matrix::identity(self.field, self.rows))?;
        if self.mul(&inv).is_identity() {
            Some(inv)
        } else {
            None
        }
    }

    /// A left inverse of a matrix with independent columns, supported on a
    /// set of rows where the matrix is invertible.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let rows = self.transpose().rref().pivots;
        if rows.len() != self.cols {
            return None;
        }
        let square = self.select_rows(&rows).inverse()?;
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for (k, &r) in rows.iter().enumerate() {
            for i in 0..self.cols {
                if !square.is_zero_at(i, k) {
                    out.set(i, r, square.get(i, k));
                }
            }
        }
        Some(out)
    }

    /// A right inverse of a matrix with independent rows.
    pub fn right_inverse(&self) -> Option<Matrix> {
        self.transpose().left_inverse().map(|m| m.transpose())
    }

    /// Extends the independent columns of `self` to a basis of the ambient
    /// space by appending standard basis vectors; returns only the additions.
    pub fn complement_basis(&self) -> Matrix {
        let n = self.rows;
        let base = self.column_basis();
        let aug = Matrix::hstack(self.field, n, &[&base, &Matrix::identity(self.field, n)]);
        let piv = aug.rref().pivots;
        let extra: Vec<usize> = piv.iter().filter(|&&c| c >= base.cols).map(|c| c - base.cols).collect();
        Matrix::identity(self.field, n).select_cols(&extra)
    }

    pub fn pow(&self, e: u64) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Column span containment: every column of `other` lies in the span of `self`.
    pub fn spans(&self, other: &Matrix) -> bool {
        let r = self.rank();
        let both = Matrix::hstack(self.field, self.rows, &[self, other]);
        both.rank() == r
    }

    pub fn same_span(&self, other: &Matrix) -> bool {
        self.spans(other) && other.spans(self)
    }

    /// Entries as integers when every entry is integral (always true over `F_p`).
    pub fn to_int_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_i64()).collect())
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}
