//! Dense matrices over a field, Gauss-Jordan elimination, and vector helpers.

use std::fmt;

use serde::{Serialize, Serializer};

use super::field::{FieldSpec, Scalar};
use crate::error::{LieError, Result};

/// Coordinate vector.
pub type Vector = Vec<Scalar>;

pub fn zero_vec(field: FieldSpec, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vec(field: FieldSpec, n: usize, i: usize) -> Vector {
    let mut v = zero_vec(field, n);
    v[i] = field.one();
    v
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = a.first().map(|s| s.field().zero()).expect("nonempty dot");
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Rational vector from integers.
pub fn qvec(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| FieldSpec::Rationals.from_i64(x)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
}

/// Output of [`Mat::row_reduce`].
#[derive(Clone, Debug)]
pub struct RowReduction {
    /// Unique reduced row-echelon form (zero rows dropped).
    pub echelon: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// Rows span the right null space.
    pub kernel_basis: Mat,
}

impl Mat {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; `cols` is used only when `rows` is empty.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(cols, Vec::len);
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        Mat {
            rows: r,
            cols: c,
            field,
            data,
        }
    }

    pub fn from_cols(field: FieldSpec, rows: usize, cols: Vec<Vector>) -> Self {
        Self::from_rows(field, cols.len(), cols).transpose_with_rows(rows)
    }

    fn transpose_with_rows(&self, rows: usize) -> Self {
        if self.rows == 0 {
            return Self::zeros(self.field, rows, 0);
        }
        self.transpose()
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn diag(field: FieldSpec, entries: &[Scalar]) -> Self {
        let mut m = Self::zeros(field, entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(LieError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.data)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| {
                if self.cols == 0 {
                    self.field.zero()
                } else {
                    dot(self.row(r), v)
                }
            })
            .collect()
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            data: vec_add(&self.data, &o.data),
            ..self.clone()
        }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            data: vec_sub(&self.data, &o.data),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat {
            data: vec_scale(c, &self.data),
            ..self.clone()
        }
    }

    /// Commutator `self*o - o*self`.
    pub fn commutator(&self, o: &Mat) -> Mat {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> Scalar {
        let mut t = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            t = &t + self.get(i, i);
        }
        t
    }

    pub fn pow(&self, mut e: u32) -> Mat {
        let mut acc = Mat::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Gauss-Jordan elimination to the unique reduced row-echelon form.
    pub fn row_reduce(&self) -> RowReduction {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pv = m.get(r, j);
                    if !pv.is_zero() {
                        let v = m.get(i, j) - &(&f * pv);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = r;
        let echelon = Mat::from_rows(
            self.field,
            self.cols,
            (0..rank).map(|i| m.row(i).to_vec()).collect(),
        );
        let mut kernel = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = zero_vec(self.field, self.cols);
            v[free] = self.field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -echelon.get(i, free);
            }
            kernel.push(v);
        }
        RowReduction {
            echelon,
            rank,
            pivots,
            kernel_basis: Mat::from_rows(self.field, self.cols, kernel),
        }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().rank
    }

    /// Basis (as rows) of `{v : self * v = 0}`.
    pub fn kernel(&self) -> Mat {
        self.row_reduce().kernel_basis
    }

    /// Determinant by elimination.
    pub fn det(&self) -> Result<Scalar> {
        let n = self.require_square()?;
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Solves `self * x = b`, returning one solution if any exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        let aug = Mat::from_rows(
            self.field,
            self.cols + 1,
            (0..self.rows)
                .map(|r| {
                    let mut row = self.row(r).to_vec();
                    row.push(b[r].clone());
                    row
                })
                .collect(),
        );
        let red = aug.row_reduce();
        if red.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vec(self.field, self.cols);
        for (i, &pc) in red.pivots.iter().enumerate() {
            x[pc] = red.echelon.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Reduces every entry into another field (used for mod-p reduction).
    pub fn map_field(&self, field: FieldSpec) -> Result<Mat> {
        let data = self
            .data
            .iter()
            .map(|s| match s {
                Scalar::Rat(q) => field.from_rational(q),
                Scalar::Mod { .. } if s.field() == field => Ok(s.clone()),
                Scalar::Mod { .. } => Err(LieError::FieldMismatch),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            field,
            data,
        })
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::q;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn identity_has_full_rank_and_empty_kernel() {
        let red = Mat::identity(Q, 3).row_reduce();
        assert_eq!(red.rank, 3);
        assert_eq!(red.kernel_basis.rows(), 0);
    }

    #[test]
    fn proportional_rows_over_q() {
        let red = Mat::from_i64(Q, &[&[1, 2], &[2, 4]]).row_reduce();
        assert_eq!(red.rank, 1);
        assert_eq!(red.kernel_basis.row_vectors(), vec![qvec(&[-2, 1])]);
    }

    #[test]
    fn equal_rows_over_f2() {
        let f2 = FieldSpec::PrimeField(2);
        let red = Mat::from_i64(f2, &[&[1, 1], &[1, 1]]).row_reduce();
        assert_eq!(red.rank, 1);
        assert_eq!(
            red.kernel_basis.row_vectors(),
            vec![vec![f2.one(), f2.one()]]
        );
    }

    #[test]
    fn determinant_and_solve() {
        let m = Mat::from_i64(Q, &[&[2, 1], &[1, 3]]);
        assert_eq!(m.det().unwrap(), q(5));
        let x = m.solve(&qvec(&[3, 4])).unwrap();
        assert_eq!(m.mul_vec(&x), qvec(&[3, 4]));
        let singular = Mat::from_i64(Q, &[&[1, 1], &[1, 1]]);
        assert!(singular.solve(&qvec(&[0, 1])).is_none());
    }
}
