//! Division-free characteristic polynomials (Berkowitz) and minimal polynomials.
//!
//! Berkowitz's recurrence multiplies a Toeplitz matrix built from `R A^k C` into the
//! characteristic vector of the leading block, so it never divides. The same code runs
//! over `F_p` of any characteristic and over matrices with polynomial entries.

use super::field::{FieldSpec, Scalar};
use super::mat::{vec_is_zero, Mat};
use super::mpoly::MPoly;
use super::upoly::UPoly;
use crate::error::Result;

/// The commutative-ring operations Berkowitz needs.
pub trait CommRing: Clone {
    fn ring_add(&self, o: &Self) -> Self;
    fn ring_mul(&self, o: &Self) -> Self;
    fn ring_neg(&self) -> Self;
}

impl CommRing for Scalar {
    fn ring_add(&self, o: &Self) -> Self {
        self + o
    }
    fn ring_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn ring_neg(&self) -> Self {
        -self
    }
}

impl CommRing for MPoly {
    fn ring_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn ring_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
}

/// Coefficients of `det(x*I - A)`, lowest degree first (length `n + 1`, last entry one).
pub fn berkowitz<R: CommRing>(a: &[Vec<R>], zero: &R, one: &R) -> Vec<R> {
    let n = a.len();
    if n == 0 {
        return vec![one.clone()];
    }
    // Highest degree first while iterating.
    let mut chi = vec![one.clone(), a[0][0].ring_neg()];
    for r in 1..n {
        let mut t = Vec::with_capacity(r + 2);
        t.push(one.clone());
        t.push(a[r][r].ring_neg());
        let mut v: Vec<R> = a[r][..r].to_vec();
        for _ in 0..r {
            let mut s = zero.clone();
            for i in 0..r {
                s = s.ring_add(&v[i].ring_mul(&a[i][r]));
            }
            t.push(s.ring_neg());
            v = (0..r)
                .map(|j| {
                    (0..r).fold(zero.clone(), |acc, i| acc.ring_add(&v[i].ring_mul(&a[i][j])))
                })
                .collect();
        }
        chi = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(zero.clone(), |acc, j| acc.ring_add(&t[i - j].ring_mul(&chi[j])))
            })
            .collect();
    }
    chi.reverse();
    chi
}

/// `det(x*I - m)` for a square scalar matrix.
pub fn charpoly(m: &Mat) -> Result<UPoly> {
    let n = m.require_square()?;
    let field = m.field();
    let rows: Vec<Vec<Scalar>> = m.row_vectors();
    let _ = n;
    Ok(UPoly::new(field, berkowitz(&rows, &field.zero(), &field.one())))
}

/// Characteristic polynomial of a matrix with multivariate-polynomial entries, returned
/// as the list of its `x`-coefficients (lowest first).
pub fn charpoly_generic(entries: &[Vec<MPoly>], field: FieldSpec, nvars: usize) -> Vec<MPoly> {
    let zero = MPoly::zero(field, nvars);
    let one = MPoly::constant(field, nvars, field.one());
    berkowitz(entries, &zero, &one)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinPoly {
    pub poly: UPoly,
    pub squarefree: bool,
}

/// Monic minimal polynomial: the first linear dependency among `I, m, m^2, ...`.
pub fn minpoly(m: &Mat) -> Result<MinPoly> {
    let n = m.require_square()?;
    let field = m.field();
    let mut powers: Vec<Vec<Scalar>> = vec![Mat::identity(field, n).entries().to_vec()];
    let mut current = Mat::identity(field, n);
    for _ in 1..=n {
        current = current.mul(m);
        powers.push(current.entries().to_vec());
        // Columns are vec(m^0) .. vec(m^k).
        let sys = Mat::from_rows(field, powers.len(), powers.clone()).transpose();
        let kernel = sys.kernel();
        if kernel.rows() > 0 {
            let v = kernel.row(0);
            debug_assert!(!vec_is_zero(v));
            let poly = UPoly::new(field, v.to_vec()).monic();
            let squarefree = poly.is_squarefree();
            return Ok(MinPoly { poly, squarefree });
        }
    }
    // n == 0: the empty operator.
    Ok(MinPoly {
        poly: UPoly::one(field),
        squarefree: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::q;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn diagonal_charpoly() {
        let m = Mat::diag(Q, &[q(2), q(0), q(-2)]);
        assert_eq!(charpoly(&m).unwrap(), UPoly::from_i64(Q, &[0, -4, 0, 1]));
    }

    #[test]
    fn zero_matrix_charpoly_is_power_of_x() {
        let m = Mat::zeros(Q, 4, 4);
        assert_eq!(charpoly(&m).unwrap(), UPoly::monomial(q(1), 4));
    }

    #[test]
    fn two_by_two_charpoly() {
        let m = Mat::from_i64(Q, &[&[0, 2], &[1, 0]]);
        assert_eq!(charpoly(&m).unwrap(), UPoly::from_i64(Q, &[-2, 0, 1]));
    }

    #[test]
    fn non_square_rejected() {
        assert!(charpoly(&Mat::zeros(Q, 2, 3)).is_err());
        assert!(minpoly(&Mat::zeros(Q, 2, 3)).is_err());
    }

    #[test]
    fn charpoly_matches_determinant_expansion_over_f2() {
        // det(xI - A) at x = 0 is det(-A) = det(A) in characteristic 2.
        let f2 = FieldSpec::PrimeField(2);
        let m = Mat::from_i64(f2, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let cp = charpoly(&m).unwrap();
        assert_eq!(cp.coeff(0), m.det().unwrap());
        assert!(cp.eval_mat(&m).is_zero());
    }

    #[test]
    fn minpoly_examples() {
        let d = minpoly(&Mat::diag(Q, &[q(2), q(0), q(-2)])).unwrap();
        assert_eq!(d.poly, UPoly::from_i64(Q, &[0, -4, 0, 1]));
        assert!(d.squarefree);

        // ad e of sl(2) in basis (e, h, f)
        let ad_e = Mat::from_i64(Q, &[&[0, -2, 0], &[0, 0, 1], &[0, 0, 0]]);
        let e = minpoly(&ad_e).unwrap();
        assert_eq!(e.poly, UPoly::monomial(q(1), 3));
        assert!(!e.squarefree);

        let i = minpoly(&Mat::identity(Q, 3)).unwrap();
        assert_eq!(i.poly, UPoly::from_i64(Q, &[-1, 1]));
        assert!(i.squarefree);
    }
}
