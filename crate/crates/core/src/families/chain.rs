use serde::Serialize;

use crate::arith::{charpoly, factorization, CertifiedFactor, Mat, Never, TriState};
use crate::error::Result;

/// Longest chain `0 = V_0 < V_1 < ... < V_m = V` of invariant subspaces, with the
/// factorization it was read from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainBound {
    pub length: usize,
    pub factors: Vec<CertifiedFactor>,
}

/// Composition length of `K^n` as a `K[A]`-module: the number of irreducible factors of
/// the characteristic polynomial counted with multiplicity.
pub fn invariant_chain_bound(a: &Mat) -> Result<TriState<ChainBound, Never>> {
    let n = a.require_square()?;
    if n == 0 {
        return Ok(TriState::True(ChainBound {
            length: 0,
            factors: vec![],
        }));
    }
    Ok(match factorization(&charpoly(a)?)? {
        TriState::True(factors) => TriState::True(ChainBound {
            length: factors.iter().map(|f| f.multiplicity).sum(),
            factors,
        }),
        TriState::False(never) => match never {},
        TriState::Unknown(u) => TriState::Unknown(u),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{FieldSpec, UPoly};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn len(m: &Mat) -> usize {
        invariant_chain_bound(m).unwrap().certificate().unwrap().length
    }

    #[test]
    fn chain_examples() {
        assert_eq!(len(&UPoly::from_i64(Q, &[1, 0, 1]).companion()), 1);
        assert_eq!(len(&Mat::from_i64(Q, &[&[1, 0], &[0, 2]])), 2);
        assert_eq!(len(&Mat::from_i64(Q, &[&[0, 1], &[0, 0]])), 2);
        let p = UPoly::from_i64(Q, &[1, 0, 1]).mul(&UPoly::from_i64(Q, &[-2, 0, 1]));
        assert_eq!(len(&p.companion()), 2);
        assert_eq!(len(&Mat::from_i64(Q, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]])), 3);
    }

    #[test]
    fn non_square_rejected() {
        let m = Mat::zeros(Q, 2, 3);
        assert!(invariant_chain_bound(&m).is_err());
    }
}
