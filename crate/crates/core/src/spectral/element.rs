use serde::Serialize;

use super::rank::rank;
use crate::algebra::{is_subalgebra, series, LieAlgebra, Subspace};
use crate::arith::{charpoly, minpoly, Mat, Scalar, UPoly, Vector};
use crate::error::{LieError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementReport {
    pub charpoly: UPoly,
    pub minpoly: UPoly,
    pub semisimple: bool,
    pub nilpotent: bool,
    pub regular: bool,
    pub fitting0_dim: usize,
}

/// `dim ker (ad x)^n`.
pub fn fitting0_dim(l: &LieAlgebra, x: &[Scalar]) -> Result<usize> {
    let ad = l.ad(x)?;
    let n = l.dim() as u32;
    Ok(l.dim() - ad.pow(n).rank())
}

pub fn element_report(l: &LieAlgebra, x: &[Scalar]) -> Result<ElementReport> {
    let ad = l.ad(x)?;
    let cp = charpoly(&ad)?;
    let mp = minpoly(&ad)?;
    let n = l.dim();
    let fitting0_dim = n - ad.pow(n as u32).rank();
    let r = rank(l)?.rank;
    Ok(ElementReport {
        nilpotent: cp == UPoly::monomial(l.field().one(), n),
        semisimple: mp.squarefree,
        regular: fitting0_dim == r,
        fitting0_dim,
        charpoly: cp,
        minpoly: mp.poly,
    })
}

fn column_space(m: &Mat) -> Subspace {
    Subspace::span(m.field(), m.rows(), &m.transpose().row_vectors())
}

fn kernel_space(m: &Mat) -> Subspace {
    Subspace::span(m.field(), m.cols(), &m.kernel().row_vectors())
}

/// Fitting null and one components for the family `ad g`, `g` in `generators`.
///
/// One generator: `ker (ad x)^n` and `im (ad x)^n`. Several: the null component is the
/// largest subspace invariant under every `ad g` on which each acts nilpotently, found
/// by alternately intersecting generalized kernels and shrinking to the invariant part;
/// the one component is the sum of the single-element one components.
pub fn fitting(l: &LieAlgebra, generators: &[Vector]) -> Result<(Subspace, Subspace)> {
    let n = l.dim();
    let field = l.field();
    let mut ads = Vec::new();
    for g in generators {
        ads.push(l.ad(g)?);
    }
    let powers: Vec<Mat> = ads.iter().map(|a| a.pow(n as u32)).collect();
    let mut null = l.full();
    for p in &powers {
        null = null.intersection(&kernel_space(p));
    }
    loop {
        // {v in null : ad g v in null for all g}
        let basis = null.basis_vectors();
        if basis.is_empty() {
            break;
        }
        let mut rows: Vec<Vector> = Vec::new();
        for a in &ads {
            for v in &basis {
                rows.push(null.reduce(&a.mul_vec(v)));
            }
        }
        // Coefficients c with sum c_i reduce(ad g b_i) = 0 for every g.
        let k = basis.len();
        let mut eqs: Vec<Vector> = Vec::new();
        for (gi, _) in ads.iter().enumerate() {
            let block = Mat::from_cols(field, n, rows[gi * k..(gi + 1) * k].to_vec());
            eqs.extend(block.row_vectors());
        }
        let ker = Mat::from_rows(field, k, eqs).kernel();
        let next = Subspace::span(
            field,
            n,
            &ker.row_vectors().iter().map(|c| null.combine(c)).collect::<Vec<_>>(),
        );
        if next.dim() == null.dim() {
            break;
        }
        null = next;
    }
    let mut one = l.zero_subspace();
    for p in &powers {
        one = one.sum(&column_space(p));
    }
    if generators.is_empty() {
        one = l.zero_subspace();
    }
    Ok((null, one))
}

/// The Cartan subalgebra `L^0(x)` of a regular element, after checking it is a
/// nilpotent subalgebra equal to its own Fitting null component.
pub fn cartan_from_regular(l: &LieAlgebra, x: &[Scalar]) -> Result<Subspace> {
    let rep = element_report(l, x)?;
    if !rep.regular {
        return Err(LieError::NotRegular {
            fitting0_dim: rep.fitting0_dim,
            rank: rank(l)?.rank,
        });
    }
    let (h, _) = fitting(l, &[x.to_vec()])?;
    if !is_subalgebra(l, &h) {
        return Err(LieError::PreconditionNotCertified("Fitting null component is not closed".into()));
    }
    if !series(&l.restrict(&h)?).nilpotent {
        return Err(LieError::PreconditionNotCertified("Fitting null component is not nilpotent".into()));
    }
    let (h2, _) = fitting(l, &h.basis_vectors())?;
    if h2 != h {
        return Err(LieError::PreconditionNotCertified("subalgebra is not self-normalizing in the Fitting sense".into()));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{qvec, FieldSpec};
    use crate::families::{heisenberg, sl2};

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn sl2_elements() {
        let l = sl2(Q);
        let h = element_report(&l, &qvec(&[0, 1, 0])).unwrap();
        assert!(h.semisimple && h.regular && !h.nilpotent);
        assert_eq!(h.fitting0_dim, 1);
        let e = element_report(&l, &qvec(&[1, 0, 0])).unwrap();
        assert!(e.nilpotent && !e.semisimple && !e.regular);
        assert_eq!(e.fitting0_dim, 3);
    }

    #[test]
    fn heisenberg_element_is_regular() {
        let r = element_report(&heisenberg(Q), &qvec(&[1, 0, 0])).unwrap();
        assert!(r.regular);
        assert_eq!(r.fitting0_dim, 3);
    }

    #[test]
    fn fitting_examples() {
        let l = sl2(Q);
        let (null, one) = fitting(&l, &[qvec(&[0, 1, 0])]).unwrap();
        assert_eq!(null, Subspace::span(Q, 3, &[qvec(&[0, 1, 0])]));
        assert_eq!(one, Subspace::span(Q, 3, &[qvec(&[1, 0, 0]), qvec(&[0, 0, 1])]));
        let (null, one) = fitting(&l, &[qvec(&[1, 0, 0])]).unwrap();
        assert!(null.is_full() && one.is_zero());
        let (null, _) = fitting(&heisenberg(Q), &[qvec(&[1, 0, 0])]).unwrap();
        assert!(null.is_full());
    }

    #[test]
    fn cartan_examples() {
        let l = sl2(Q);
        assert_eq!(
            cartan_from_regular(&l, &qvec(&[0, 1, 0])).unwrap(),
            Subspace::span(Q, 3, &[qvec(&[0, 1, 0])])
        );
        assert!(cartan_from_regular(&heisenberg(Q), &qvec(&[0, 1, 0])).unwrap().is_full());
        assert!(matches!(
            cartan_from_regular(&l, &qvec(&[1, 0, 0])),
            Err(LieError::NotRegular { fitting0_dim: 3, rank: 1 })
        ));
    }
}
