use std::collections::BTreeMap;

use super::{is_ideal, LieAlgebra, Subspace};
use crate::arith::{unit_vec, vec_is_zero, zero_vec, Mat, Vector};
use crate::error::{LieError, Result};

/// The three ways of building new algebras from old ones.
#[derive(Clone, Debug)]
pub enum Compose<'a> {
    DirectSum(&'a LieAlgebra, &'a LieAlgebra),
    /// `S ⋉ V` with `V = K^m` abelian and `rho[i]` the action of the `i`-th basis vector.
    SemidirectSum(&'a LieAlgebra, &'a [Mat]),
    Quotient(&'a LieAlgebra, &'a Subspace),
}

pub fn compose(kind: Compose<'_>) -> Result<LieAlgebra> {
    match kind {
        Compose::DirectSum(a, b) => direct_sum(a, b),
        Compose::SemidirectSum(s, rho) => semidirect_sum(s, rho),
        Compose::Quotient(l, i) => quotient(l, i),
    }
}

fn labels_or_default(l: &LieAlgebra) -> Vec<String> {
    (0..l.dim()).map(|i| l.label(i)).collect()
}

/// `A ⊕ B`, basis of `A` first.
pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> Result<LieAlgebra> {
    if a.field() != b.field() {
        return Err(LieError::FieldMismatch);
    }
    let field = a.field();
    let (n, m) = (a.dim(), b.dim());
    let mut upper = BTreeMap::new();
    for (i, j, v) in a.upper_entries() {
        let mut w = v.clone();
        w.extend(zero_vec(field, m));
        upper.insert((i, j), w);
    }
    for (i, j, v) in b.upper_entries() {
        let mut w = zero_vec(field, n);
        w.extend(v.iter().cloned());
        upper.insert((n + i, n + j), w);
    }
    let out = LieAlgebra::from_upper(field, n + m, upper)?;
    if a.labels().is_some() || b.labels().is_some() {
        let mut labels = labels_or_default(a);
        labels.extend((0..m).map(|i| match b.labels() {
            Some(l) => l[i].clone(),
            None => format!("e{}", n + i),
        }));
        return out.with_labels(labels);
    }
    Ok(out)
}

/// `S ⋉ K^m`: basis of `S` first, then the standard basis of `V`.
pub fn semidirect_sum(s: &LieAlgebra, rho: &[Mat]) -> Result<LieAlgebra> {
    let k = s.dim();
    let field = s.field();
    if rho.len() != k {
        return Err(LieError::DimensionMismatch {
            expected: k,
            got: rho.len(),
        });
    }
    let m = rho.first().map_or(0, Mat::rows);
    for r in rho {
        if r.rows() != m || r.cols() != m {
            return Err(LieError::NotSquare {
                rows: r.rows(),
                cols: r.cols(),
            });
        }
        if r.field() != field {
            return Err(LieError::FieldMismatch);
        }
    }
    // rho([s_i, s_j]) = [rho(s_i), rho(s_j)]
    let mut bad = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let br = s.basis_bracket(i, j);
            let mut lhs = Mat::zeros(field, m, m);
            for (c, r) in br.iter().zip(rho) {
                if !c.is_zero() {
                    lhs = lhs.add(&r.scale(c));
                }
            }
            if lhs != rho[i].commutator(&rho[j]) {
                bad.push((i, j));
            }
        }
    }
    if !bad.is_empty() {
        return Err(LieError::NotARepresentation(bad));
    }
    let mut upper = BTreeMap::new();
    for (i, j, v) in s.upper_entries() {
        let mut w = v.clone();
        w.extend(zero_vec(field, m));
        upper.insert((i, j), w);
    }
    for (i, r) in rho.iter().enumerate() {
        for a in 0..m {
            let col = r.col(a);
            if vec_is_zero(&col) {
                continue;
            }
            let mut w = zero_vec(field, k);
            w.extend(col);
            upper.insert((i, k + a), w);
        }
    }
    LieAlgebra::from_upper(field, k + m, upper)
}

/// `L / I` on the standard basis vectors at the non-pivot columns of `I`.
pub fn quotient(l: &LieAlgebra, ideal: &Subspace) -> Result<LieAlgebra> {
    if ideal.ambient_dim() != l.dim() || !is_ideal(l, ideal) {
        return Err(LieError::NotAnIdeal);
    }
    let field = l.field();
    let n = l.dim();
    let keep: Vec<usize> = (0..n).filter(|c| !ideal.pivots().contains(c)).collect();
    let mut upper = BTreeMap::new();
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate().skip(a + 1) {
            let v = ideal.reduce(l.bracket(&unit_vec(field, n, i), &unit_vec(field, n, j)).as_slice());
            let w: Vector = keep.iter().map(|&c| v[c].clone()).collect();
            if !vec_is_zero(&w) {
                upper.insert((a, b), w);
            }
        }
    }
    let out = LieAlgebra::from_upper(field, keep.len(), upper)?;
    if l.labels().is_some() {
        return out.with_labels(keep.iter().map(|&c| l.label(c)).collect());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{center, killing};
    use crate::arith::{FieldSpec, qvec};
    use crate::families::{heisenberg, sl2};

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn sl2_plus_line_is_reductive() {
        let l = direct_sum(&sl2(Q), &LieAlgebra::abelian(Q, 1)).unwrap();
        assert_eq!(l.dim(), 4);
        let k = killing(&l).unwrap();
        assert!(k.reductive);
        assert_eq!(center(&l).dim(), 1);
    }

    #[test]
    fn oscillator_semidirect_sum() {
        let rho = [Mat::from_i64(Q, &[&[0, -1], &[1, 0]])];
        let l = semidirect_sum(&LieAlgebra::abelian(Q, 1), &rho).unwrap();
        assert_eq!(l.basis_bracket(0, 1), &qvec(&[0, 0, 1]));
        assert_eq!(l.basis_bracket(0, 2), &qvec(&[0, -1, 0]));
        assert!(crate::algebra::series(&l).solvable);
    }

    #[test]
    fn heisenberg_mod_center_is_abelian() {
        let h = heisenberg(Q);
        let z = Subspace::span(Q, 3, &[qvec(&[0, 0, 1])]);
        let q = quotient(&h, &z).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.is_abelian());
        let x = Subspace::span(Q, 3, &[qvec(&[1, 0, 0])]);
        assert!(matches!(quotient(&h, &x), Err(LieError::NotAnIdeal)));
    }

    #[test]
    fn non_representation_rejected() {
        let aff = crate::families::aff1(Q);
        let rho = [Mat::from_i64(Q, &[&[0, -1], &[1, 0]]), Mat::from_i64(Q, &[&[1, 1], &[-2, -1]])];
        assert!(matches!(semidirect_sum(&aff, &rho), Err(LieError::NotARepresentation(_))));
    }
}
