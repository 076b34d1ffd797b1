use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::arith::{charpoly_generic, MPoly, Scalar, Vector};
use crate::error::{LieError, Result};
use crate::search::height_ordered;

pub const DEFAULT_RANK_DIM_BOUND: usize = 8;

/// `c_r(t)` is the first coefficient of `det(λ - Σ t_i ad e_i)` that is not the zero
/// polynomial; `vanished_below` records that `c_0 .. c_{r-1}` have empty term maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub coefficient: MPoly,
    pub witness_point: Vector,
    pub witness_value: Scalar,
    pub vanished_below: bool,
}

impl RankCertificate {
    /// Re-evaluates the coefficient at the witness point.
    pub fn recheck(&self) -> bool {
        let v = self.coefficient.eval(&self.witness_point);
        !v.is_zero() && v == self.witness_value
    }
}

/// Coefficients of the generic characteristic polynomial, lowest power first.
pub fn generic_charpoly(l: &LieAlgebra) -> Vec<MPoly> {
    let n = l.dim();
    let field = l.field();
    let entries: Vec<Vec<MPoly>> = (0..n)
        .map(|k| {
            (0..n)
                .map(|j| {
                    let coeffs: Vec<Scalar> = (0..n).map(|i| l.basis_bracket(i, j)[k].clone()).collect();
                    MPoly::linear(field, &coeffs)
                })
                .collect()
        })
        .collect();
    charpoly_generic(&entries, field, n)
}

pub fn rank(l: &LieAlgebra) -> Result<RankCertificate> {
    rank_with_bound(l, DEFAULT_RANK_DIM_BOUND)
}

pub fn rank_with_bound(l: &LieAlgebra, bound: usize) -> Result<RankCertificate> {
    if let Some(c) = l.rank_cache.get() {
        return Ok(c.clone());
    }
    let n = l.dim();
    if n > bound {
        return Err(LieError::DimensionBudgetExceeded { dim: n, bound });
    }
    let field = l.field();
    let coeffs = generic_charpoly(l);
    let r = coeffs.iter().position(|c| !c.is_zero()).expect("leading coefficient is one");
    let coefficient = coeffs[r].clone();
    // Over F_p a nonzero polynomial can vanish at every point; the certificate then
    // carries a zero value and `recheck` fails.
    let (witness_point, witness_value) = height_ordered(field, n, 4)
        .map(|(_, v)| v)
        .take(100_000)
        .chain(std::iter::once(vec![field.zero(); n]))
        .map(|v| {
            let val = coefficient.eval(&v);
            (v, val)
        })
        .find(|(_, val)| !val.is_zero())
        .unwrap_or_else(|| (vec![field.zero(); n], field.zero()));
    let cert = RankCertificate {
        rank: r,
        coefficient,
        witness_point,
        witness_value,
        vanished_below: coeffs[..r].iter().all(MPoly::is_zero),
    };
    let _ = l.rank_cache.set(cert.clone());
    Ok(cert)
}
