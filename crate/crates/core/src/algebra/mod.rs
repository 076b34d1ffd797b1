//! Lie algebras given by structure constants.

mod compose;
mod levi;
mod simplicity;
mod structure;
mod subspace;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

pub use compose::{compose, direct_sum, quotient, semidirect_sum, Compose};
pub use simplicity::{
    centroid, reductive_decomposition, simplicity_status, ReductiveDecomposition, SimplicityCertificate,
    SimplicityStatus, SimplicityWitness,
};
pub use structure::{
    bracket_span, center, centralizer, closure, is_ideal, is_subalgebra, killing, killing_gram,
    normalizer, series, ClosureMode, KillingReport, SeriesReport,
};
pub use levi::levi_subalgebra;
pub use subspace::Subspace;

use crate::arith::{vec_add, vec_is_zero, vec_scale, zero_vec, FieldSpec, Mat, Scalar, Vector};
use crate::error::{LieError, Result};

/// A basis triple on which the Jacobi identity fails, with the offending vector
/// `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiResidual {
    pub triple: (usize, usize, usize),
    pub residual: Vector,
}

/// One stored bracket `[e_i, e_j] = sum_k v[k] e_k` with `i < j`, sparse in `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub v: Vec<(usize, Scalar)>,
}

impl BracketEntry {
    pub fn new(i: usize, j: usize, v: Vec<(usize, Scalar)>) -> Self {
        BracketEntry { i, j, v }
    }
}

/// Structure constants over `Q` or `F_p`. Only `[e_i, e_j]` with `i < j` is supplied;
/// the full antisymmetric table is materialized once at construction.
pub struct LieAlgebra {
    dim: usize,
    field: FieldSpec,
    table: Vec<Vector>,
    labels: Option<Vec<String>>,
    ad_cache: OnceLock<Vec<Mat>>,
    pub(crate) rank_cache: OnceLock<crate::spectral::RankCertificate>,
}

impl Clone for LieAlgebra {
    fn clone(&self) -> Self {
        LieAlgebra {
            dim: self.dim,
            field: self.field,
            table: self.table.clone(),
            labels: self.labels.clone(),
            ad_cache: self.ad_cache.clone(),
            rank_cache: self.rank_cache.clone(),
        }
    }
}

impl PartialEq for LieAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.field == o.field && self.table == o.table && self.labels == o.labels
    }
}

impl Eq for LieAlgebra {}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra")
            .field("dim", &self.dim)
            .field("field", &self.field)
            .field("brackets", &self.upper_entries().collect::<Vec<_>>())
            .field("labels", &self.labels)
            .finish()
    }
}

impl LieAlgebra {
    /// Builds and validates an algebra from its upper-triangular bracket entries.
    /// Unlisted pairs bracket to zero; repeated pairs are summed.
    pub fn validate(field: FieldSpec, dim: usize, entries: &[BracketEntry]) -> Result<Self> {
        let mut upper: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for e in entries {
            if e.i >= e.j || e.j >= dim {
                return Err(LieError::IndexOutOfRange {
                    i: e.i,
                    j: e.j,
                    k: None,
                    dim,
                });
            }
            let slot = upper.entry((e.i, e.j)).or_insert_with(|| zero_vec(field, dim));
            for (k, c) in &e.v {
                if *k >= dim {
                    return Err(LieError::IndexOutOfRange {
                        i: e.i,
                        j: e.j,
                        k: Some(*k),
                        dim,
                    });
                }
                if !field.contains(c) {
                    return Err(LieError::BadScalar(format!("{c} does not lie in {field}")));
                }
                slot[*k] = &slot[*k] + c;
            }
        }
        Self::from_upper(field, dim, upper)
    }

    /// Same as [`LieAlgebra::validate`] with dense vectors for each listed pair.
    pub fn from_upper(field: FieldSpec, dim: usize, upper: BTreeMap<(usize, usize), Vector>) -> Result<Self> {
        let alg = Self::unchecked(field, dim, upper)?;
        let residuals = alg.jacobi_residuals();
        if residuals.is_empty() {
            Ok(alg)
        } else {
            Err(LieError::JacobiViolation(residuals))
        }
    }

    /// Builds the table without checking the Jacobi identity.
    pub fn unchecked(field: FieldSpec, dim: usize, upper: BTreeMap<(usize, usize), Vector>) -> Result<Self> {
        let mut table = vec![zero_vec(field, dim); dim * dim];
        for ((i, j), v) in upper {
            if i >= j || j >= dim {
                return Err(LieError::IndexOutOfRange { i, j, k: None, dim });
            }
            if v.len() != dim {
                return Err(LieError::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
            table[j * dim + i] = vec_scale(&field.from_i64(-1), &v);
            table[i * dim + j] = v;
        }
        Ok(LieAlgebra {
            dim,
            field,
            table,
            labels: None,
            ad_cache: OnceLock::new(),
            rank_cache: OnceLock::new(),
        })
    }

    /// Builds an algebra from integer structure constants `(i, j, [(k, c)])`.
    pub fn from_i64(field: FieldSpec, dim: usize, brackets: &[(usize, usize, &[(usize, i64)])]) -> Result<Self> {
        let entries: Vec<BracketEntry> = brackets
            .iter()
            .map(|(i, j, v)| BracketEntry::new(*i, *j, v.iter().map(|(k, c)| (*k, field.from_i64(*c))).collect()))
            .collect();
        Self::validate(field, dim, &entries)
    }

    pub fn abelian(field: FieldSpec, dim: usize) -> Self {
        Self::unchecked(field, dim, BTreeMap::new()).expect("empty table")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(LieError::DimensionMismatch {
                expected: self.dim,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Name of basis vector `i`: its label, or `e{i}`.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("e{i}"),
        }
    }

    /// `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim + j]
    }

    /// Nonzero entries `[e_i, e_j]` with `i < j`, in lexicographic order.
    pub fn upper_entries(&self) -> impl Iterator<Item = (usize, usize, &Vector)> + '_ {
        let n = self.dim;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .map(move |(i, j)| (i, j, self.basis_bracket(i, j)))
            .filter(|(_, _, v)| !vec_is_zero(v))
    }

    pub fn check_vector(&self, x: &[Scalar]) -> Result<()> {
        if x.len() != self.dim {
            return Err(LieError::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        if x.iter().any(|c| !self.field.contains(c)) {
            return Err(LieError::FieldMismatch);
        }
        Ok(())
    }

    /// `[x, y]` in coordinates.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.field, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let c = xi * yj;
                let v = self.basis_bracket(i, j);
                for (k, vk) in v.iter().enumerate() {
                    if !vk.is_zero() {
                        out[k] = &out[k] + &(&c * vk);
                    }
                }
            }
        }
        out
    }

    /// `ad e_i` for every basis vector, computed once.
    pub fn ad_basis(&self) -> &[Mat] {
        self.ad_cache.get_or_init(|| {
            (0..self.dim)
                .map(|i| {
                    let cols: Vec<Vector> = (0..self.dim).map(|j| self.basis_bracket(i, j).clone()).collect();
                    Mat::from_cols(self.field, self.dim, cols)
                })
                .collect()
        })
    }

    /// Matrix of `y -> [x, y]`; column `j` holds `[x, e_j]`.
    pub fn ad(&self, x: &[Scalar]) -> Result<Mat> {
        self.check_vector(x)?;
        let mut m = Mat::zeros(self.field, self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = m.add(&self.ad_basis()[i].scale(xi));
            }
        }
        Ok(m)
    }

    /// Every basis triple `i < j < k` with a nonzero Jacobiator.
    pub fn jacobi_residuals(&self) -> Vec<JacobiResidual> {
        let n = self.dim;
        let mut out = Vec::new();
        let e = |i: usize| crate::arith::unit_vec(self.field, n, i);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket(&e(i), self.basis_bracket(j, k));
                    let b = self.bracket(&e(j), self.basis_bracket(k, i));
                    let c = self.bracket(&e(k), self.basis_bracket(i, j));
                    let r = vec_add(&vec_add(&a, &b), &c);
                    if !vec_is_zero(&r) {
                        out.push(JacobiResidual {
                            triple: (i, j, k),
                            residual: r,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|v| vec_is_zero(v))
    }

    /// Reduces or embeds the structure constants in another field and re-validates.
    pub fn map_field(&self, field: FieldSpec) -> Result<Self> {
        let mut upper = BTreeMap::new();
        for (i, j, v) in self.upper_entries() {
            let mapped = v
                .iter()
                .map(|c| match c {
                    Scalar::Rat(r) => field.from_rational(r),
                    Scalar::Mod { .. } if c.field() == field => Ok(c.clone()),
                    Scalar::Mod { .. } => Err(LieError::FieldMismatch),
                })
                .collect::<Result<Vector>>()?;
            upper.insert((i, j), mapped);
        }
        let mut out = Self::from_upper(field, self.dim, upper)?;
        out.labels = self.labels.clone();
        Ok(out)
    }

    /// The whole algebra as a subspace.
    pub fn full(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn zero_subspace(&self) -> Subspace {
        Subspace::zero(self.field, self.dim)
    }

    /// The subalgebra `s` as an algebra in its own echelon basis.
    pub fn restrict(&self, s: &Subspace) -> Result<Self> {
        let basis = s.basis_vectors();
        let k = basis.len();
        let mut upper = BTreeMap::new();
        for a in 0..k {
            for b in a + 1..k {
                let v = self.bracket(&basis[a], &basis[b]);
                if vec_is_zero(&v) {
                    continue;
                }
                let coords = s.coords(&v).ok_or_else(|| {
                    LieError::PreconditionNotCertified("subspace is not closed under the bracket".into())
                })?;
                upper.insert((a, b), coords);
            }
        }
        Self::unchecked(self.field, k, upper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qvec};
    use crate::families::{heisenberg, sl2};

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn sl2_and_heisenberg_validate() {
        assert_eq!(sl2(Q).dim(), 3);
        assert_eq!(heisenberg(Q).dim(), 3);
    }

    #[test]
    fn mutated_sl2_reports_the_triple() {
        // [e,f] = h + e instead of h
        let err = LieAlgebra::from_i64(
            Q,
            3,
            &[(0, 1, &[(0, -2)]), (0, 2, &[(1, 1), (0, 1)]), (1, 2, &[(2, -2)])],
        )
        .unwrap_err();
        match err {
            LieError::JacobiViolation(r) => assert_eq!(r[0].triple, (0, 1, 2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ad_h_is_diagonal() {
        let l = sl2(Q);
        let ad = l.ad(&qvec(&[0, 1, 0])).unwrap();
        assert_eq!(ad, Mat::diag(Q, &[q(2), q(0), q(-2)]));
        assert!(l.ad(&qvec(&[0, 0, 0])).unwrap().is_zero());
        assert!(l.ad(&qvec(&[1, 0])).is_err());
    }

    #[test]
    fn heisenberg_ad_has_rank_at_most_one_into_z() {
        let l = heisenberg(Q);
        let ad = l.ad(&qvec(&[2, -3, 5])).unwrap();
        assert!(ad.rank() <= 1);
        for j in 0..3 {
            assert!(ad.get(0, j).is_zero() && ad.get(1, j).is_zero());
        }
    }

    #[test]
    fn index_errors() {
        let bad = LieAlgebra::from_i64(Q, 2, &[(1, 0, &[(0, 1)])]);
        assert!(matches!(bad, Err(LieError::IndexOutOfRange { .. })));
        let bad = LieAlgebra::from_i64(Q, 2, &[(0, 1, &[(2, 1)])]);
        assert!(matches!(bad, Err(LieError::IndexOutOfRange { k: Some(2), .. })));
    }
}
