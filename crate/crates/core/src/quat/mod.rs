//! Quaternion algebras `(a, b)` over `Q`: Hilbert symbols, the division test and the
//! three-dimensional Lie algebra of pure quaternions.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::{LieAlgebra, Subspace};
use crate::arith::numtheory::{factor_u64, is_prime_u64, legendre, valuation};
use crate::arith::{FieldSpec, Mat, Scalar, Vector};
use crate::error::{LieError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Same square class as `q`, as an integer: `num * den`.
fn square_class_int(q: &BigRational) -> BigInt {
    q.numer() * q.denom()
}

fn mod8(n: &BigInt) -> u64 {
    let r = n % BigInt::from(8);
    let r = if r.is_negative() { r + 8 } else { r };
    r.to_u64().expect("small")
}

/// The local Hilbert symbol `(a, b)_v`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(LieError::ZeroParameter);
    }
    let (a, b) = (square_class_int(a), square_class_int(b));
    match place {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(p) if !is_prime_u64(p) => Err(LieError::BadPlace(p)),
        Place::Prime(2) => {
            let (alpha, u) = valuation(&a, 2);
            let (beta, v) = valuation(&b, 2);
            let (u8_, v8) = (mod8(&u), mod8(&v));
            let eps = |x: u64| ((x + 8 - 1) / 2) % 2;
            let omega = |x: u64| ((x * x - 1) / 8) % 2;
            let e = eps(u8_) * eps(v8) + alpha as u64 * omega(v8) + beta as u64 * omega(u8_);
            Ok(if e.is_multiple_of(2) { 1 } else { -1 })
        }
        Place::Prime(p) => {
            let (alpha, u) = valuation(&a, p);
            let (beta, v) = valuation(&b, p);
            let mut s = 1i32;
            if (alpha as u64 * beta as u64 * ((p - 1) / 2)) % 2 == 1 {
                s = -s;
            }
            if beta % 2 == 1 {
                s *= legendre(&u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(&v, p);
            }
            Ok(s)
        }
    }
}

fn prime_divisors(n: &BigInt) -> Result<Vec<u64>> {
    let m = n
        .abs()
        .to_u64()
        .ok_or_else(|| LieError::TooLarge(n.to_string()))?;
    Ok(factor_u64(m).into_iter().map(|(p, _)| p).collect())
}

/// The places where some local symbol could be `-1`: infinity, 2, and the primes of
/// the numerators and denominators.
pub fn relevant_places(a: &BigRational, b: &BigRational) -> Result<Vec<Place>> {
    let mut primes = vec![2u64];
    for x in [a.numer(), a.denom(), b.numer(), b.denom()] {
        primes.extend(prime_divisors(x)?);
    }
    primes.sort_unstable();
    primes.dedup();
    let mut out: Vec<Place> = primes.into_iter().map(Place::Prime).collect();
    out.push(Place::Infinity);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertCertificate {
    pub a: Scalar,
    pub b: Scalar,
    pub ramified: Vec<Place>,
    pub division: bool,
}

/// `(a, b)` is a division algebra iff it ramifies somewhere.
pub fn is_division(a: &BigRational, b: &BigRational) -> Result<HilbertCertificate> {
    let mut ramified = Vec::new();
    for v in relevant_places(a, b)? {
        if hilbert_symbol(a, b, v)? == -1 {
            ramified.push(v);
        }
    }
    Ok(HilbertCertificate {
        a: Scalar::Rat(a.clone()),
        b: Scalar::Rat(b.clone()),
        division: !ramified.is_empty(),
        ramified,
    })
}

/// A ternary form `<d1, d2, d3>` with nonzero entries is isotropic iff the quaternion
/// algebra `(-d2/d1, -d3/d1)` splits.
pub fn ternary_isotropic(d: &[BigRational; 3]) -> Result<(bool, HilbertCertificate)> {
    let a = -(&d[1] / &d[0]);
    let b = -(&d[2] / &d[0]);
    let cert = is_division(&a, &b)?;
    Ok((!cert.division, cert))
}

/// Orthogonal basis for a symmetric bilinear form over a field: returns the diagonal
/// values and the basis vectors as rows.
pub fn diagonalize_form(gram: &Mat) -> (Vec<Scalar>, Vec<Vector>) {
    let n = gram.rows();
    let field = gram.field();
    let form = |x: &[Scalar], y: &[Scalar]| crate::arith::dot(x, &gram.mul_vec(y));
    // Current complement, spanned by `space`.
    let mut space: Vec<Vector> = (0..n).map(|i| crate::arith::unit_vec(field, n, i)).collect();
    let mut diag = Vec::new();
    let mut basis = Vec::new();
    while !space.is_empty() {
        let mut pick = space.iter().position(|v| !form(v, v).is_zero()).map(|i| space[i].clone());
        if pick.is_none() {
            'outer: for i in 0..space.len() {
                for j in i + 1..space.len() {
                    if !form(&space[i], &space[j]).is_zero() {
                        pick = Some(crate::arith::vec_add(&space[i], &space[j]));
                        break 'outer;
                    }
                }
            }
        }
        let Some(v) = pick else {
            // The form vanishes on what is left.
            for w in space {
                diag.push(field.zero());
                basis.push(w);
            }
            break;
        };
        let bvv = form(&v, &v);
        let inv = bvv.inv().expect("anisotropic pick");
        // Project the rest onto the orthogonal complement of v and drop dependencies.
        let projected: Vec<Vector> = space
            .iter()
            .map(|w| crate::arith::vec_sub(w, &crate::arith::vec_scale(&(&form(&v, w) * &inv), &v)))
            .collect();
        let sub = Subspace::span(field, n, &projected);
        diag.push(bvv);
        basis.push(v);
        space = sub.basis_vectors();
    }
    (diag, basis)
}

/// Pure quaternions of `(a, b)` on `(i, j, k)`: `[i,j] = 2k`, `[j,k] = -2b i`, `[k,i] = -2a j`.
pub fn pure_lie_algebra(a: &BigRational, b: &BigRational) -> Result<LieAlgebra> {
    if a.is_zero() || b.is_zero() {
        return Err(LieError::ZeroParameter);
    }
    let f = FieldSpec::Rationals;
    let two = BigRational::from_integer(2.into());
    let entries = vec![
        crate::algebra::BracketEntry::new(0, 1, vec![(2, f.from_i64(2))]),
        crate::algebra::BracketEntry::new(0, 2, vec![(1, Scalar::Rat(&two * a))]),
        crate::algebra::BracketEntry::new(1, 2, vec![(0, Scalar::Rat(-(&two * b)))]),
    ];
    LieAlgebra::validate(f, 3, &entries)?.with_labels(vec!["i".into(), "j".into(), "k".into()])
}

/// Product in `(a, b)` on coordinates `(1, i, j, k)`.
pub fn quat_mul(a: &BigRational, b: &BigRational, x: &[BigRational], y: &[BigRational]) -> [BigRational; 4] {
    let ab = a * b;
    let (x0, x1, x2, x3) = (&x[0], &x[1], &x[2], &x[3]);
    let (y0, y1, y2, y3) = (&y[0], &y[1], &y[2], &y[3]);
    [
        x0 * y0 + a * x1 * y1 + b * x2 * y2 - &ab * x3 * y3,
        x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
        x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
        x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
    ]
}

fn rats(v: &[Scalar]) -> Vec<BigRational> {
    v.iter()
        .map(|s| s.as_rational().cloned().expect("rational"))
        .collect()
}

/// Associative centralizer of a noncentral quaternion `x` in `(a, b)`.
pub fn quat_centralizer(a: &BigRational, b: &BigRational, x: &[Scalar]) -> Result<Subspace> {
    if x.len() != 4 {
        return Err(LieError::DimensionMismatch { expected: 4, got: x.len() });
    }
    if x[1..].iter().all(Scalar::is_zero) {
        return Err(LieError::CentralInput);
    }
    let f = FieldSpec::Rationals;
    let xr = rats(x);
    let cols: Vec<Vector> = (0..4)
        .map(|c| {
            let e: Vec<BigRational> = (0..4)
                .map(|i| if i == c { BigRational::one() } else { BigRational::zero() })
                .collect();
            let l = quat_mul(a, b, &xr, &e);
            let r = quat_mul(a, b, &e, &xr);
            (0..4).map(|i| Scalar::Rat(&l[i] - &r[i])).collect()
        })
        .collect();
    let m = Mat::from_cols(f, 4, cols);
    Ok(Subspace::span(f, 4, &m.kernel().row_vectors()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuatReport {
    pub certificate: HilbertCertificate,
    pub division: bool,
    pub isomorphic_to_sl2: bool,
    pub anisotropic: bool,
    pub regular: bool,
    pub minimal_nonabelian: bool,
    pub depth: u32,
}

/// Properties of the pure-quaternion Lie algebra, all read off the Hilbert symbols.
pub fn certified_report(a: &BigRational, b: &BigRational) -> Result<QuatReport> {
    let certificate = is_division(a, b)?;
    let d = certificate.division;
    Ok(QuatReport {
        division: d,
        isomorphic_to_sl2: !d,
        anisotropic: d,
        regular: d,
        minimal_nonabelian: d,
        depth: if d { 1 } else { 2 },
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::killing_gram;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn symbol_examples() {
        assert_eq!(hilbert_symbol(&r(-1), &r(-1), Place::Prime(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&r(2), &r(3), Place::Prime(3)).unwrap(), -1);
        for v in [Place::Infinity, Place::Prime(2), Place::Prime(3), Place::Prime(5)] {
            assert_eq!(hilbert_symbol(&r(1), &r(7), v).unwrap(), 1);
        }
        assert!(matches!(
            hilbert_symbol(&r(1), &r(1), Place::Prime(4)),
            Err(LieError::BadPlace(4))
        ));
    }

    #[test]
    fn division_examples() {
        let c = is_division(&r(-1), &r(-1)).unwrap();
        assert!(c.division);
        assert_eq!(c.ramified, vec![Place::Prime(2), Place::Infinity]);
        assert!(!is_division(&r(1), &r(5)).unwrap().division);
        let c = is_division(&r(2), &r(3)).unwrap();
        assert_eq!(c.ramified, vec![Place::Prime(2), Place::Prime(3)]);
    }

    #[test]
    fn pure_algebra_table_and_gram() {
        let l = pure_lie_algebra(&r(-1), &r(-1)).unwrap();
        let f = FieldSpec::Rationals;
        assert_eq!(l.basis_bracket(1, 2), &crate::arith::qvec(&[2, 0, 0]));
        assert_eq!(l.basis_bracket(2, 0), &crate::arith::qvec(&[0, 2, 0]));
        let (a, b) = (r(3), BigRational::new(5.into(), 2.into()));
        let g = killing_gram(&pure_lie_algebra(&a, &b).unwrap());
        let expect = Mat::diag(
            f,
            &[Scalar::Rat(r(8) * &a), Scalar::Rat(r(8) * &b), Scalar::Rat(r(-8) * &a * &b)],
        );
        assert_eq!(g, expect);
    }

    #[test]
    fn centralizer_of_i() {
        let x: Vector = crate::arith::qvec(&[0, 1, 0, 0]);
        let c = quat_centralizer(&r(-1), &r(-1), &x).unwrap();
        assert_eq!(c, Subspace::span(FieldSpec::Rationals, 4, &[crate::arith::qvec(&[1, 0, 0, 0]), x.clone()]));
        assert_eq!(quat_centralizer(&r(1), &r(1), &x).unwrap().dim(), 2);
        assert!(matches!(
            quat_centralizer(&r(-1), &r(-1), &crate::arith::qvec(&[1, 0, 0, 0])),
            Err(LieError::CentralInput)
        ));
    }

    #[test]
    fn diagonalize_hyperbolic_plane() {
        let g = Mat::from_i64(FieldSpec::Rationals, &[&[0, 1], &[1, 0]]);
        let (d, basis) = diagonalize_form(&g);
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|x| !x.is_zero()));
        assert_eq!(basis.len(), 2);
    }
}
