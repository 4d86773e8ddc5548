//! Dense matrices over the quotient rings of [`crate::ptower`].
//!
//! Elimination pivots only on units. Over a local ring that is enough: a
//! column without a unit below the current row lies entirely in the maximal
//! ideal. Over a product ring (an unramified etale algebra) a unit
//! determinant does not guarantee a unit pivot, so determinants and inverses
//! fall back to the division-free Berkowitz characteristic polynomial.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::ptower::{Elem, QuotientRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Arc<QuotientRing>,
    rows: usize,
    cols: usize,
    // row-major, `degree` coefficients per entry
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(ring: Arc<QuotientRing>, rows: usize, cols: usize) -> Self {
        let d = ring.degree();
        Self {
            ring,
            rows,
            cols,
            data: vec![0; rows * cols * d],
        }
    }

    pub fn identity(ring: Arc<QuotientRing>, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        let d = m.ring.degree();
        for i in 0..n {
            m.data[(i * n + i) * d] = 1;
        }
        m
    }

    pub fn scalar(ring: Arc<QuotientRing>, n: usize, c: &Elem) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_fn(ring: Arc<QuotientRing>, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Self {
        let mut m = Self::zeros(ring, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                m.set(i, j, &e);
            }
        }
        m
    }

    /// Integer entries, reduced into the ring.
    pub fn from_ints(ring: Arc<QuotientRing>, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged or empty integer matrix".into()));
        }
        Ok(Self::from_fn(ring.clone(), r, c, |i, j| ring.from_i64(rows[i][j])))
    }

    /// Polynomial entries (ascending integer coefficients), reduced into the ring.
    pub fn from_polys(ring: Arc<QuotientRing>, rows: &[Vec<Vec<i64>>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged or empty matrix".into()));
        }
        Ok(Self::from_fn(ring.clone(), r, c, |i, j| ring.from_coeffs(&rows[i][j])))
    }

    /// Rows given as element vectors.
    pub fn from_rows(ring: Arc<QuotientRing>, rows: &[Vec<Elem>]) -> Self {
        let c = rows.first().map_or(0, Vec::len);
        Self::from_fn(ring, rows.len(), c, |i, j| rows[i][j].clone())
    }

    pub fn column_vector(ring: Arc<QuotientRing>, v: &[Elem]) -> Self {
        Self::from_fn(ring, v.len(), 1, |i, _| v[i].clone())
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Raw canonical coefficients, row-major.
    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u64> {
        self.data
    }

    pub(crate) fn from_data(ring: Arc<QuotientRing>, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols * ring.degree());
        Self { ring, rows, cols, data }
    }

    #[inline]
    fn offset(&self, i: usize, j: usize) -> usize {
        (i * self.cols + j) * self.ring.degree()
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &[u64] {
        let o = self.offset(i, j);
        &self.data[o..o + self.ring.degree()]
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        Elem(self.entry(i, j).to_vec())
    }

    pub fn set(&mut self, i: usize, j: usize, v: &Elem) {
        let o = self.offset(i, j);
        let d = self.ring.degree();
        self.data[o..o + d].copy_from_slice(&v.0);
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> Vec<Elem> {
        self.data.chunks(self.ring.degree()).map(|c| Elem(c.to_vec())).collect()
    }

    pub fn map(&self, f: impl Fn(&Elem) -> Elem) -> Matrix {
        self.map_into(self.ring.clone(), f)
    }

    pub fn map_into(&self, ring: Arc<QuotientRing>, f: impl Fn(&Elem) -> Elem) -> Matrix {
        Matrix::from_fn(ring, self.rows, self.cols, |i, j| f(&self.get(i, j)))
    }

    fn check_ring(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        self.check_ring(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let m = self.ring.modulus();
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| m.add(a, b)).collect();
        Ok(Matrix::from_data(self.ring.clone(), self.rows, self.cols, data))
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let m = self.ring.modulus();
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| m.sub(a, b)).collect();
        Ok(Matrix::from_data(self.ring.clone(), self.rows, self.cols, data))
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let d = self.ring.degree();
        let q = self.ring.modulus().q();
        let mut out = Matrix::zeros(self.ring.clone(), self.rows, other.cols);
        if d == 1 {
            for i in 0..self.rows {
                let a = &self.data[i * self.cols..(i + 1) * self.cols];
                for j in 0..other.cols {
                    let mut acc = 0u64;
                    for (k, &x) in a.iter().enumerate() {
                        acc += x * other.data[k * other.cols + j];
                    }
                    out.data[i * other.cols + j] = acc % q;
                }
            }
            return Ok(out);
        }
        let mut wide = vec![0u64; self.ring.wide_len()];
        let mut cell = vec![0u64; d];
        for i in 0..self.rows {
            for j in 0..other.cols {
                wide.iter_mut().for_each(|w| *w = 0);
                for k in 0..self.cols {
                    self.ring.accumulate(self.entry(i, k), other.entry(k, j), &mut wide);
                }
                self.ring.reduce_wide(&mut wide, &mut cell);
                let o = out.offset(i, j);
                out.data[o..o + d].copy_from_slice(&cell);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        self.map(|a| self.ring.mul(a, c))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut acc = Matrix::identity(self.ring.clone(), self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r2, c2) = (other.rows, other.cols);
        Matrix::from_fn(self.ring.clone(), self.rows * r2, self.cols * c2, |i, j| {
            self.ring.mul(&self.get(i / r2, j / c2), &other.get(i % r2, j % c2))
        })
    }

    pub fn block_diag(ring: Arc<QuotientRing>, blocks: &[Matrix]) -> Matrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.ring.clone(), rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                let v = b.get(i, j);
                self.set(r0 + i, c0 + j, &v);
            }
        }
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.ring.clone(), self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.ring.clone(), self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.ring.clone(), self.rows)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// `m^T = -m` with zero diagonal.
    pub fn is_alternating(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| self.ring.is_zero(&self.get(i, i))) && self.transpose() == -self
    }

    pub fn trace(&self) -> Elem {
        (0..self.rows.min(self.cols)).fold(self.ring.zero(), |acc, i| self.ring.add(&acc, &self.get(i, i)))
    }

    /// Entrywise image in a lower-precision ring with the same defining polynomial.
    pub fn reduce_to(&self, target: &Arc<QuotientRing>) -> Matrix {
        let q = target.modulus().q();
        let data = self.data.iter().map(|&c| c % q).collect();
        Matrix::from_data(target.clone(), self.rows, self.cols, data)
    }

    /// Canonical entrywise lift from a lower-precision ring.
    pub fn lift_to(&self, target: &Arc<QuotientRing>) -> Matrix {
        debug_assert_eq!(target.degree(), self.ring.degree());
        Matrix::from_data(target.clone(), self.rows, self.cols, self.data.clone())
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    /// Determinant by unit-pivot elimination; Berkowitz when no unit pivot
    /// exists. Multiplicative: `det(AB) = det(A) det(B)`.
    pub fn det(&self) -> Result<Elem> {
        self.require_square()?;
        let r = &self.ring;
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = r.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| r.is_unit(&a[i][c])) else {
                return Ok(self.det_berkowitz());
            };
            if p != c {
                a.swap(p, c);
                det = r.neg(&det);
            }
            let piv = a[c][c].clone();
            let inv = r.inverse(&piv).unwrap();
            det = r.mul(&det, &piv);
            for i in c + 1..n {
                if r.is_zero(&a[i][c]) {
                    continue;
                }
                let factor = r.mul(&a[i][c], &inv);
                for j in c..n {
                    let t = r.mul(&factor, &a[c][j]);
                    a[i][j] = r.sub(&a[i][j], &t);
                }
            }
        }
        Ok(det)
    }

    /// Coefficients `[1, c_1, ..., c_n]` of `det(tI - A)`, highest degree
    /// first, without any division.
    pub fn charpoly(&self) -> Result<Vec<Elem>> {
        self.require_square()?;
        let r = &self.ring;
        let n = self.rows;
        let mut p = vec![r.one()];
        for k in (0..n).rev() {
            let m = n - k;
            // Toeplitz column: 1, -a, -R C, -R A1 C, ..., -R A1^(m-2) C
            let mut t = vec![r.one(), r.neg(&self.get(k, k))];
            let mut v: Vec<Elem> = (k + 1..n).map(|i| self.get(i, k)).collect();
            for _ in 0..m.saturating_sub(1) {
                let rc = (k + 1..n).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&self.get(k, j), &v[j - k - 1])));
                t.push(r.neg(&rc));
                v = (k + 1..n)
                    .map(|i| (k + 1..n).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&self.get(i, j), &v[j - k - 1]))))
                    .collect();
            }
            let next: Vec<Elem> = (0..=m)
                .map(|i| (0..m.min(i + 1)).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&t[i - j], &p[j]))))
                .collect();
            p = next;
        }
        Ok(p)
    }

    fn det_berkowitz(&self) -> Elem {
        let p = self.charpoly().expect("square");
        let c = p[self.rows].clone();
        if self.rows % 2 == 1 {
            self.ring.neg(&c)
        } else {
            c
        }
    }

    /// Exact inverse of a matrix with unit determinant.
    pub fn inverse(&self) -> Result<Matrix> {
        self.require_square()?;
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.ring.clone(), n));
        let ech = Echelon::reduce(&aug, n);
        if ech.pivots.len() == n {
            return Ok(Matrix::from_fn(self.ring.clone(), n, n, |i, j| {
                ech.rows[i][n + j].clone()
            }));
        }
        let det = self.det()?;
        if self.ring.is_local() || !self.ring.is_unit(&det) {
            return Err(Error::NotInvertible {
                det: self.ring.format(&det),
            });
        }
        self.inverse_cayley_hamilton()
    }

    fn inverse_cayley_hamilton(&self) -> Result<Matrix> {
        let r = &self.ring;
        let n = self.rows;
        let p = self.charpoly()?;
        let cn_inv = r
            .inverse(&p[n])
            .ok_or_else(|| Error::NotInvertible { det: r.format(&p[n]) })?;
        // A^{-1} = -c_n^{-1} (A^{n-1} + c_1 A^{n-2} + ... + c_{n-1} I)
        let mut acc = Matrix::zeros(r.clone(), n, n);
        for c in p.iter().take(n) {
            acc = &(&acc * self) + &Matrix::scalar(r.clone(), n, c);
        }
        Ok(acc.scale(&r.neg(&cn_inv)))
    }

    /// Solve `self * x = b`.
    ///
    /// Unique solutions are returned whenever every column of `self` admits
    /// a unit pivot. Over a field an underdetermined consistent system
    /// returns the particular solution with free variables set to zero.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix> {
        self.check_ring(b)?;
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} rows, right-hand side has {}",
                self.rows, b.rows
            )));
        }
        let n = self.cols;
        let aug = self.hstack(b);
        let ech = Echelon::reduce(&aug, n);
        let consistent = ech.rows[ech.pivots.len()..]
            .iter()
            .all(|row| row[n..].iter().all(|e| self.ring.is_zero(e)));
        if ech.pivots.len() < n && !self.ring.is_field() {
            if self.is_square() && !self.ring.is_local() {
                if let Ok(inv) = self.inverse() {
                    return Ok(&inv * b);
                }
            }
            return Err(Error::Singular);
        }
        if !consistent {
            return Err(Error::Inconsistent);
        }
        let mut x = Matrix::zeros(self.ring.clone(), n, b.cols);
        for (row, &col) in ech.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(col, j, &ech.rows[row][n + j]);
            }
        }
        Ok(x)
    }

    /// Basis of the right kernel; the ring must be a field.
    pub fn kernel(&self) -> Result<Vec<Vec<Elem>>> {
        if !self.ring.is_field() {
            return Err(Error::NotAField(self.ring.to_string()));
        }
        let ech = Echelon::reduce(self, self.cols);
        let pivot_cols: Vec<usize> = ech.pivots.clone();
        let r = &self.ring;
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![r.zero(); self.cols];
            v[free] = r.one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = r.neg(&ech.rows[row][free]);
            }
            basis.push(v);
        }
        Ok(basis)
    }

    /// Rank over a field.
    pub fn rank(&self) -> Result<usize> {
        if !self.ring.is_field() {
            return Err(Error::NotAField(self.ring.to_string()));
        }
        Ok(Echelon::reduce(self, self.cols).pivots.len())
    }

    /// Indices of columns that are independent modulo the maximal ideal of a
    /// local ring (the pivot columns of the residue matrix).
    pub fn pivot_columns(&self) -> Vec<usize> {
        Echelon::reduce(self, self.cols).pivots
    }

    /// True when `det` is a unit.
    pub fn is_invertible(&self) -> bool {
        self.det().map(|d| self.ring.is_unit(&d)).unwrap_or(false)
    }
}

/// Reduced row echelon form obtained by pivoting only on units.
struct Echelon {
    rows: Vec<Vec<Elem>>,
    /// pivot column of each of the leading rows
    pivots: Vec<usize>,
}

impl Echelon {
    fn reduce(m: &Matrix, pivot_cols: usize) -> Self {
        let r = m.ring();
        let mut rows = m.to_rows();
        let mut pivots = Vec::new();
        let width = m.cols();
        for c in 0..pivot_cols {
            let top = pivots.len();
            if top == rows.len() {
                break;
            }
            let Some(p) = (top..rows.len()).find(|&i| r.is_unit(&rows[i][c])) else {
                continue;
            };
            rows.swap(top, p);
            let inv = r.inverse(&rows[top][c]).unwrap();
            for j in c..width {
                rows[top][j] = r.mul(&rows[top][j], &inv);
            }
            for i in 0..rows.len() {
                if i == top || r.is_zero(&rows[i][c]) {
                    continue;
                }
                let factor = rows[i][c].clone();
                for j in c..width {
                    let t = r.mul(&factor, &rows[top][j]);
                    rows[i][j] = r.sub(&rows[i][j], &t);
                }
            }
            pivots.push(c);
        }
        Self { rows, pivots }
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix addition")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).expect("matrix subtraction")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix multiplication")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        let m = self.ring.modulus();
        let data = self.data.iter().map(|&a| m.neg(a)).collect();
        Matrix::from_data(self.ring.clone(), self.rows, self.cols, data)
    }
}

impl fmt::Display for Matrix {
    /// Canonical nested-list form, e.g. `[[0,1],[2,0]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.ring.format(&self.get(i, j)))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

struct EntrySer<'a>(&'a [u64]);

impl Serialize for EntrySer<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.len() == 1 {
            s.serialize_u64(self.0[0])
        } else {
            self.0.serialize(s)
        }
    }
}

struct RowSer<'a>(&'a Matrix, usize);

impl Serialize for RowSer<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.cols))?;
        for j in 0..self.0.cols {
            seq.serialize_element(&EntrySer(self.0.entry(self.1, j)))?;
        }
        seq.end()
    }
}

/// Nested lists: integers over `Z/l^N`, coefficient lists otherwise.
impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&RowSer(self, i))?;
        }
        seq.end()
    }
}
