use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith::{unit_vec, vec_is_zero, vec_scale, vec_sub, FieldSpec, Mat, Scalar, Vector};

/// A subspace of `K^n` held by its reduced row-echelon basis, so equal subspaces have
/// identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    field: FieldSpec,
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: FieldSpec, ambient: usize, vectors: &[Vector]) -> Self {
        let m = Mat::from_rows(field, ambient, vectors.to_vec());
        let rr = m.row_reduce();
        let rows: Vec<Vector> = (0..rr.rank).map(|r| rr.echelon.row(r).to_vec()).collect();
        Subspace {
            ambient,
            field,
            basis: Mat::from_rows(field, ambient, rows),
            pivots: rr.pivots,
        }
    }

    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Self::span(field, ambient, &[])
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            ambient,
            field,
            basis: Mat::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_basis_mat(m: &Mat) -> Self {
        Self::span(m.field(), m.cols(), &m.row_vectors())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Removes from `v` its components along the pivot columns; zero iff `v` lies in
    /// the subspace. The result is the canonical representative modulo the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            if !out[c].is_zero() {
                out = vec_sub(&out, &vec_scale(&out[c].clone(), self.basis.row(r)));
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        o.basis_vectors().iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&c| v[c].clone()).collect())
    }

    /// The vector with the given coordinates in the echelon basis.
    pub fn combine(&self, coords: &[Scalar]) -> Vector {
        let mut out = crate::arith::zero_vec(self.field, self.ambient);
        for (r, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                out = crate::arith::vec_add(&out, &vec_scale(c, self.basis.row(r)));
            }
        }
        out
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut vs = self.basis_vectors();
        vs.extend(o.basis_vectors());
        Self::span(self.field, self.ambient, &vs)
    }

    pub fn with(&self, extra: &[Vector]) -> Subspace {
        let mut vs = self.basis_vectors();
        vs.extend(extra.iter().cloned());
        Self::span(self.field, self.ambient, &vs)
    }

    pub fn intersection(&self, o: &Subspace) -> Subspace {
        // Solve a*A = b*B through the kernel of [A; -B].
        let a = self.basis_vectors();
        let b = o.basis_vectors();
        if a.is_empty() || b.is_empty() {
            return Self::zero(self.field, self.ambient);
        }
        let mut rows = a.clone();
        rows.extend(b.iter().map(|v| vec_scale(&self.field.from_i64(-1), v)));
        let m = Mat::from_rows(self.field, self.ambient, rows).transpose();
        let ker = m.kernel();
        let vs: Vec<Vector> = ker
            .row_vectors()
            .iter()
            .map(|k| self.combine(&k[..a.len()]))
            .collect();
        Self::span(self.field, self.ambient, &vs)
    }

    /// Standard basis vectors at the non-pivot columns: a complement of the subspace.
    pub fn complement_basis(&self) -> Vec<Vector> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .map(|c| unit_vec(self.field, self.ambient, c))
            .collect()
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{}", self.basis)
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(s)
    }
}
