use serde::Serialize;

use super::{killing, LieAlgebra, Subspace};
use crate::arith::{irreducibility, minpoly, Inconclusive, Mat, TriState, UPoly, Vector};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum SimplicityCertificate {
    /// The centroid consists of the scalars only.
    CentralSimple,
    /// The centroid is the field generated by one element with this irreducible
    /// minimal polynomial of degree equal to the centroid dimension.
    CentroidField { centroid_dim: usize, minpoly: UPoly },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum SimplicityWitness {
    /// The zero algebra is not simple.
    ZeroAlgebra,
    NotSemisimple { radical: Subspace },
    ProperIdeal { ideal: Subspace },
}

pub type SimplicityStatus = TriState<SimplicityCertificate, SimplicityWitness>;

/// Basis of the centroid `{φ : φ[x, y] = [φx, y]}` as `n x n` matrices.
pub fn centroid(l: &LieAlgebra) -> Vec<Mat> {
    let n = l.dim();
    let field = l.field();
    // Unknown φ_{k,l} sits at column k*n + l.
    let mut rows: Vec<Vector> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let cab = l.basis_bracket(a, b);
            for k in 0..n {
                let mut row = vec![field.zero(); n * n];
                for (m, c) in cab.iter().enumerate() {
                    if !c.is_zero() {
                        row[k * n + m] = &row[k * n + m] + c;
                    }
                }
                for m in 0..n {
                    let c = &l.basis_bracket(m, b)[k];
                    if !c.is_zero() {
                        row[m * n + a] = &row[m * n + a] - c;
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let ker = if rows.is_empty() {
        Mat::identity(field, n * n)
    } else {
        Mat::from_rows(field, n * n, rows).kernel()
    };
    ker.row_vectors()
        .into_iter()
        .map(|v| Mat::from_rows(field, n, v.chunks(n).map(<[_]>::to_vec).collect()))
        .collect()
}

fn kernel_subspace(m: &Mat) -> Subspace {
    Subspace::span(m.field(), m.cols(), &m.kernel().row_vectors())
}

/// Decides simplicity of a characteristic-zero algebra through its centroid.
///
/// For semisimple `L` the centroid is a product of fields, one per simple ideal, and
/// `ker g(φ)` is an ideal for every centroid element `φ` and polynomial `g`.
pub fn simplicity_status(l: &LieAlgebra) -> Result<SimplicityStatus> {
    l.field().require_char_zero()?;
    if l.dim() == 0 {
        return Ok(TriState::False(SimplicityWitness::ZeroAlgebra));
    }
    let k = killing(l)?;
    if !k.semisimple {
        return Ok(TriState::False(SimplicityWitness::NotSemisimple { radical: k.radical }));
    }
    let basis = centroid(l);
    let cdim = basis.len();
    if cdim == 1 {
        return Ok(TriState::True(SimplicityCertificate::CentralSimple));
    }
    // Basis elements first, then a few fixed integer combinations for a primitive element.
    let mut candidates: Vec<Mat> = basis.clone();
    for shift in 1..=4i64 {
        let mut acc = Mat::zeros(l.field(), l.dim(), l.dim());
        for (i, b) in basis.iter().enumerate() {
            acc = acc.add(&b.scale(&l.field().from_i64(shift.pow(i as u32))));
        }
        candidates.push(acc);
    }
    let mut tried = 0u64;
    for phi in &candidates {
        tried += 1;
        let mp = minpoly(phi)?.poly;
        if mp.deg() <= 1 {
            continue;
        }
        match irreducibility(&mp)? {
            TriState::False(g) => {
                let h = mp.exact_div(&g).expect("factor divides");
                let a = kernel_subspace(&g.eval_mat(phi));
                let b = kernel_subspace(&h.eval_mat(phi));
                let ideal = if a.pivots() <= b.pivots() { a } else { b };
                return Ok(TriState::False(SimplicityWitness::ProperIdeal { ideal }));
            }
            TriState::True(_) if mp.deg() == cdim => {
                return Ok(TriState::True(SimplicityCertificate::CentroidField {
                    centroid_dim: cdim,
                    minpoly: mp,
                }));
            }
            _ => {}
        }
    }
    Ok(TriState::Unknown(Inconclusive::new(
        tried,
        4,
        "no centroid element split the algebra or generated the centroid",
    )))
}

/// A reductive algebra as its center plus simple ideals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductiveDecomposition {
    pub center: Subspace,
    /// Simple ideals, ordered by their echelon pivots.
    pub simple: Vec<Subspace>,
}

/// Splits a reductive characteristic-zero algebra along its centroid. `None` when it is
/// not reductive or some simplicity call is inconclusive.
pub fn reductive_decomposition(l: &LieAlgebra) -> Result<Option<ReductiveDecomposition>> {
    let k = killing(l)?;
    if !k.reductive {
        return Ok(None);
    }
    let full = l.full();
    let derived = super::bracket_span(l, &full, &full);
    let mut simple = Vec::new();
    let mut stack = if derived.is_zero() { vec![] } else { vec![derived] };
    while let Some(s) = stack.pop() {
        let sub = l.restrict(&s)?;
        match simplicity_status(&sub)? {
            TriState::True(_) => simple.push(s),
            TriState::False(SimplicityWitness::ProperIdeal { ideal }) => {
                let comp = super::centralizer(&sub, &ideal);
                for part in [ideal, comp] {
                    let vs: Vec<Vector> = part.basis_vectors().iter().map(|c| s.combine(c)).collect();
                    stack.push(Subspace::span(l.field(), l.dim(), &vs));
                }
            }
            TriState::False(_) | TriState::Unknown(_) => return Ok(None),
        }
    }
    simple.sort_by(|a, b| a.pivots().cmp(b.pivots()));
    Ok(Some(ReductiveDecomposition { center: k.center, simple }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_sum, is_ideal};
    use crate::arith::FieldSpec;
    use crate::families::{heisenberg, sl2};

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn sl2_is_central_simple() {
        assert_eq!(centroid(&sl2(Q)).len(), 1);
        assert_eq!(
            simplicity_status(&sl2(Q)).unwrap(),
            TriState::True(SimplicityCertificate::CentralSimple)
        );
    }

    #[test]
    fn sl2_squared_splits_at_first_summand() {
        let l = direct_sum(&sl2(Q), &sl2(Q)).unwrap();
        assert_eq!(centroid(&l).len(), 2);
        let st = simplicity_status(&l).unwrap();
        let Some(SimplicityWitness::ProperIdeal { ideal }) = st.witness() else {
            panic!("expected an ideal, got {st:?}")
        };
        assert!(is_ideal(&l, ideal));
        assert_eq!(ideal.pivots(), &[0, 1, 2]);
    }

    #[test]
    fn decomposition_of_sl2_squared_plus_line() {
        let l = direct_sum(&direct_sum(&sl2(Q), &sl2(Q)).unwrap(), &LieAlgebra::abelian(Q, 1)).unwrap();
        let d = reductive_decomposition(&l).unwrap().unwrap();
        assert_eq!(d.center.dim(), 1);
        assert_eq!(d.simple.len(), 2);
        assert_eq!(d.simple[0].pivots(), &[0, 1, 2]);
    }

    #[test]
    fn heisenberg_is_not_semisimple() {
        let st = simplicity_status(&heisenberg(Q)).unwrap();
        assert!(matches!(st.witness(), Some(SimplicityWitness::NotSemisimple { radical }) if radical.is_full()));
    }
}
