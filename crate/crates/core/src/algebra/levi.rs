use super::{is_subalgebra, killing, quotient, series, LieAlgebra, Subspace};
use crate::arith::{vec_add, vec_scale, zero_vec, Mat, Scalar, Vector};
use crate::error::Result;

/// A Levi subalgebra (semisimple complement of the radical), characteristic zero.
///
/// Peels off the last derived term `N` of the radical (an abelian ideal), finds a Levi
/// subalgebra of `L/N` recursively and corrects its lift by a linear map into `N`.
/// `None` only if the linear system has no solution, which Whitehead's lemma rules out.
pub fn levi_subalgebra(l: &LieAlgebra) -> Result<Option<Subspace>> {
    let k = killing(l)?;
    if k.radical.is_zero() {
        return Ok(Some(l.full()));
    }
    if k.radical.is_full() {
        return Ok(Some(l.zero_subspace()));
    }
    let field = l.field();
    let n = l.dim();
    let rad = l.restrict(&k.radical)?;
    let last = series(&rad).last_nonzero_derived;
    let ideal_vecs: Vec<Vector> = last.basis_vectors().iter().map(|c| k.radical.combine(c)).collect();
    let ideal = Subspace::span(field, n, &ideal_vecs);
    let q = quotient(l, &ideal)?;
    let Some(gq) = levi_subalgebra(&q)? else {
        return Ok(None);
    };
    let keep: Vec<usize> = (0..n).filter(|c| !ideal.pivots().contains(c)).collect();
    let lift = |u: &[Scalar]| {
        let mut v = zero_vec(field, n);
        for (a, c) in u.iter().enumerate() {
            v[keep[a]] = c.clone();
        }
        v
    };
    let cs: Vec<Vector> = gq.basis_vectors().iter().map(|u| lift(u)).collect();
    let ns = ideal.basis_vectors();
    let (m, d) = (cs.len(), ns.len());
    if m == 0 {
        return Ok(Some(l.zero_subspace()));
    }

    // Columns c_1..c_m, n_1..n_d for splitting brackets.
    let mut split_cols = cs.clone();
    split_cols.extend(ns.iter().cloned());
    let split = Mat::from_cols(field, n, split_cols);

    // Unknown u_{i,a} at column i*d + a, with phi(c_i) = sum_a u_{i,a} n_a.
    let cn: Vec<Vec<Vector>> = cs
        .iter()
        .map(|c| ns.iter().map(|nv| l.bracket(c, nv)).collect())
        .collect();
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vector = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let w = l.bracket(&cs[i], &cs[j]);
            let Some(coef) = split.solve(&w) else {
                return Ok(None);
            };
            let gamma = &coef[..m];
            let r = ns
                .iter()
                .zip(&coef[m..])
                .fold(zero_vec(field, n), |acc, (nv, c)| vec_add(&acc, &vec_scale(c, nv)));
            // r + [c_i, phi_j] - [c_j, phi_i] - sum_k gamma_k phi_k = 0
            for coord in 0..n {
                let mut row = zero_vec(field, m * d);
                for a in 0..d {
                    row[j * d + a] = &row[j * d + a] + &cn[i][a][coord];
                    row[i * d + a] = &row[i * d + a] - &cn[j][a][coord];
                    for (kk, g) in gamma.iter().enumerate() {
                        if !g.is_zero() {
                            row[kk * d + a] = &row[kk * d + a] - &(g * &ns[a][coord]);
                        }
                    }
                }
                rows.push(row);
                rhs.push(-r[coord].clone());
            }
        }
    }
    let u = if rows.is_empty() {
        zero_vec(field, m * d)
    } else {
        match Mat::from_rows(field, m * d, rows).solve(&rhs) {
            Some(u) => u,
            None => return Ok(None),
        }
    };
    let corrected: Vec<Vector> = (0..m)
        .map(|i| {
            (0..d).fold(cs[i].clone(), |acc, a| vec_add(&acc, &vec_scale(&u[i * d + a], &ns[a])))
        })
        .collect();
    let g = Subspace::span(field, n, &corrected);
    if g.dim() != m || !is_subalgebra(l, &g) {
        return Ok(None);
    }
    Ok(Some(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_sum, semidirect_sum};
    use crate::arith::FieldSpec;
    use crate::families::{heisenberg, sl2};

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn levi_of_sl2_plus_line_and_solvable() {
        let l = direct_sum(&sl2(Q), &LieAlgebra::abelian(Q, 1)).unwrap();
        let g = levi_subalgebra(&l).unwrap().unwrap();
        assert_eq!(g.dim(), 3);
        assert!(levi_subalgebra(&heisenberg(Q)).unwrap().unwrap().is_zero());
    }

    #[test]
    fn levi_of_sl2_on_its_standard_module() {
        // e, h, f acting on K^2.
        let rho = [
            Mat::from_i64(Q, &[&[0, 1], &[0, 0]]),
            Mat::from_i64(Q, &[&[1, 0], &[0, -1]]),
            Mat::from_i64(Q, &[&[0, 0], &[1, 0]]),
        ];
        let l = semidirect_sum(&sl2(Q), &rho).unwrap();
        let g = levi_subalgebra(&l).unwrap().unwrap();
        assert_eq!(g.dim(), 3);
        assert!(is_subalgebra(&l, &g));
    }
}
