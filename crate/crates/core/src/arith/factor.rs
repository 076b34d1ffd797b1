//! Irreducibility and factorization of univariate polynomials.
//!
//! Over `F_p` everything is exact: squarefree decomposition, distinct-degree and
//! Cantor-Zassenhaus equal-degree splitting. Over `Q` irreducibility is certified by a
//! good prime (or by intersecting degree patterns of several primes); reducibility by an
//! explicit factor. Factor search covers rational roots and quadratic factors inside the
//! Mignotte bound, which makes it complete up to degree 5.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::field::{FieldSpec, Scalar};
use super::numtheory::{divisors_bigint, first_primes};
use super::tristate::{Inconclusive, TriState};
use super::upoly::UPoly;
use crate::error::{LieError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum IrreducibleCertificate {
    /// Degree one.
    Linear,
    /// Exact factorization over the prime field itself.
    FiniteField { p: u64 },
    /// Irreducible modulo a prime not dividing the leading coefficient and keeping
    /// the reduction squarefree.
    GoodPrime { p: u64 },
    /// Factor degrees modulo these primes admit no common proper subset sum.
    DegreePatterns { patterns: Vec<(u64, Vec<usize>)> },
    /// Degree at most three and no rational root.
    NoRationalRoot { degree: usize },
    /// Degree four or five with no factor of degree one or two within the Mignotte bound.
    NoSmallFactor { degree: usize },
}

#[derive(Clone, Debug)]
pub struct IrreducibilityConfig {
    /// How many primes to try, in increasing order.
    pub primes: usize,
    /// Cap on quadratic candidates tried over `Q`.
    pub quadratic_budget: u64,
}

impl Default for IrreducibilityConfig {
    fn default() -> Self {
        IrreducibilityConfig {
            primes: 40,
            quadratic_budget: 200_000,
        }
    }
}

pub type IrreducibilityStatus = TriState<IrreducibleCertificate, UPoly>;

pub fn irreducibility(f: &UPoly) -> Result<IrreducibilityStatus> {
    irreducibility_with(f, &IrreducibilityConfig::default())
}

/// Witnesses for `False` are monic proper factors.
pub fn irreducibility_with(f: &UPoly, cfg: &IrreducibilityConfig) -> Result<IrreducibilityStatus> {
    let n = match f.degree() {
        None | Some(0) => return Err(LieError::ConstantPolynomial),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(TriState::True(IrreducibleCertificate::Linear));
    }
    match f.field() {
        FieldSpec::PrimeField(p) => Ok(irreducibility_fp(f, p)),
        FieldSpec::Rationals => Ok(irreducibility_q(f, cfg)),
    }
}

fn irreducibility_fp(f: &UPoly, p: u64) -> IrreducibilityStatus {
    if p <= 10_000 {
        let field = f.field();
        if let Some(r) = (0..p).map(|r| field.from_i64(r as i64)).find(|r| f.eval(r).is_zero()) {
            return TriState::False(UPoly::linear_root(&r));
        }
    }
    let factors = factor_fp(f);
    if factors.len() == 1 && factors[0].1 == 1 {
        TriState::True(IrreducibleCertificate::FiniteField { p })
    } else {
        TriState::False(factors[0].0.clone())
    }
}

// ---------------------------------------------------------------- integer helpers

/// Scales a rational polynomial to a primitive integer polynomial with positive
/// leading coefficient.
pub fn primitive_integer(f: &UPoly) -> Vec<BigInt> {
    let rats: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| c.as_rational().expect("rational polynomial").clone())
        .collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = rats.iter().map(|c| (c * &lcm).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() {
        for c in &mut ints {
            *c /= &content;
        }
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        for c in &mut ints {
            *c = -&*c;
        }
    }
    ints
}

fn int_poly(field: FieldSpec, coeffs: &[BigInt]) -> UPoly {
    UPoly::new(field, coeffs.iter().map(|c| field.from_bigint(c)).collect())
}

fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn norm2_ceil(coeffs: &[BigInt]) -> BigInt {
    let sq: BigInt = coeffs.iter().map(|c| c * c).sum();
    let r = sq.sqrt();
    if &r * &r == sq {
        r
    } else {
        r + 1
    }
}

/// Possible degrees of factors of a polynomial whose factors modulo a prime have the
/// given degrees (all subset sums).
fn subset_sums(degrees: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0usize]);
    for &d in degrees {
        let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(next);
    }
    sums
}

fn irreducibility_q(f: &UPoly, cfg: &IrreducibilityConfig) -> IrreducibilityStatus {
    let field = FieldSpec::Rationals;
    let n = f.deg();
    if !f.is_squarefree() {
        return TriState::False(f.gcd(&f.derivative()));
    }
    let ints = primitive_integer(f);
    let lc = ints[n].clone();

    // Degree patterns modulo good primes; the first irreducible reduction certifies.
    let mut possible: BTreeSet<usize> = (0..=n).collect();
    let mut patterns = Vec::new();
    for p in first_primes(cfg.primes) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = FieldSpec::PrimeField(p);
        let reduced = int_poly(fp, &ints);
        if !reduced.is_squarefree() {
            continue;
        }
        let factors = factor_fp(&reduced);
        if factors.len() == 1 {
            return TriState::True(IrreducibleCertificate::GoodPrime { p });
        }
        let degs: Vec<usize> = factors.iter().map(|(g, _)| g.deg()).collect();
        let sums = subset_sums(&degs);
        possible = possible.intersection(&sums).copied().collect();
        patterns.push((p, degs));
        if possible.len() == 2 {
            return TriState::True(IrreducibleCertificate::DegreePatterns { patterns });
        }
    }

    // Rational roots p/q, q | lc and p | constant term.
    if possible.contains(&1) {
        if ints[0].is_zero() {
            return TriState::False(UPoly::x(field));
        }
        match (divisors_bigint(&lc), divisors_bigint(&ints[0])) {
            (Some(qs), Some(ps)) => {
                for qd in &qs {
                    for pd in &ps {
                        if !pd.gcd(qd).is_one() {
                            continue;
                        }
                        for num in [pd.clone(), -pd] {
                            let r = Scalar::Rat(BigRational::new(num, qd.clone()));
                            if f.eval(&r).is_zero() {
                                return TriState::False(UPoly::linear_root(&r));
                            }
                        }
                    }
                }
            }
            _ => {
                return TriState::Unknown(Inconclusive::new(
                    0,
                    0,
                    "coefficients too large for rational-root search",
                ))
            }
        }
    }
    if n <= 3 {
        return TriState::True(IrreducibleCertificate::NoRationalRoot { degree: n });
    }

    // Quadratic factors c2*x^2 + c1*x + c0 with |c0|, c2 <= |f|_2 and |c1| <= 2|f|_2.
    if possible.contains(&2) {
        match quadratic_factor(&ints, cfg.quadratic_budget) {
            QuadSearch::Found(g) => return TriState::False(int_poly(field, &g).monic()),
            QuadSearch::Exhausted(tried) => {
                if n > 5 && (3..=n - 3).any(|d| possible.contains(&d)) {
                    return TriState::Unknown(Inconclusive::new(
                        tried,
                        0,
                        "no factor of degree <= 2; higher-degree factors not searched",
                    ));
                }
            }
            QuadSearch::OverBudget(tried) => {
                return TriState::Unknown(Inconclusive::new(
                    tried,
                    0,
                    "quadratic factor search exceeded its budget",
                ))
            }
        }
    } else if n > 5 && (3..=n - 3).any(|d| possible.contains(&d)) {
        return TriState::Unknown(Inconclusive::new(
            0,
            0,
            "factor degrees compatible with every prime tried",
        ));
    }
    TriState::True(IrreducibleCertificate::NoSmallFactor { degree: n })
}

enum QuadSearch {
    Found(Vec<BigInt>),
    Exhausted(u64),
    OverBudget(u64),
}

fn quadratic_factor(f: &[BigInt], budget: u64) -> QuadSearch {
    let n = f.len() - 1;
    let bound = norm2_ceil(f);
    let (Some(c2s), Some(c0s)) = (divisors_bigint(&f[n]), divisors_bigint(&f[0])) else {
        return QuadSearch::OverBudget(0);
    };
    let probes: Vec<(BigInt, BigInt)> = [1i64, -1, 2, -2, 3]
        .iter()
        .map(|&x| {
            let x = BigInt::from(x);
            let v = eval_int(f, &x);
            (x, v)
        })
        .collect();
    let two_b: BigInt = &bound * BigInt::from(2);
    let span = (&two_b * BigInt::from(2) + BigInt::one()).to_u64().unwrap_or(u64::MAX);
    let mut tried = 0u64;
    for c2 in c2s.iter().filter(|c| **c <= bound) {
        for c0a in c0s.iter().filter(|c| **c <= bound) {
            for c0 in [c0a.clone(), -c0a] {
                tried = tried.saturating_add(span);
                if tried > budget {
                    return QuadSearch::OverBudget(tried);
                }
                let mut c1 = -two_b.clone();
                while c1 <= two_b {
                    let g = vec![c0.clone(), c1.clone(), c2.clone()];
                    let plausible = probes.iter().all(|(x, fx)| {
                        let gx = eval_int(&g, x);
                        if gx.is_zero() {
                            fx.is_zero()
                        } else {
                            (fx % &gx).is_zero()
                        }
                    });
                    if plausible {
                        let fq = int_poly(FieldSpec::Rationals, f);
                        let gq = int_poly(FieldSpec::Rationals, &g);
                        if gq.divides(&fq) {
                            return QuadSearch::Found(g);
                        }
                    }
                    c1 += 1;
                }
            }
        }
    }
    QuadSearch::Exhausted(tried)
}

// ---------------------------------------------------------------- factorization over F_p

/// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
pub fn factor_fp(f: &UPoly) -> Vec<(UPoly, usize)> {
    let p = f.field().characteristic();
    assert!(p > 0, "factor_fp needs a prime field");
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for (g, m) in squarefree_fp(&f.monic()) {
        for (d, h) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|(a, ma), (b, mb)| a.deg().cmp(&b.deg()).then_with(|| a.cmp(b)).then(ma.cmp(mb)));
    out
}

/// `f = prod g_i^{m_i}` with squarefree, pairwise coprime `g_i`; handles `f' = 0`.
fn squarefree_fp(f: &UPoly) -> Vec<(UPoly, usize)> {
    let field = f.field();
    let p = field.characteristic() as usize;
    if f.is_constant() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let d = f.derivative();
    if d.is_zero() {
        // f(x) = g(x^p) = g(x)^p over F_p.
        let root = UPoly::new(field, (0..=f.deg() / p).map(|k| f.coeff(k * p)).collect());
        for (g, m) in squarefree_fp(&root) {
            out.push((g, m * p));
        }
        return out;
    }
    let c = f.gcd(&d);
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut c = c;
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).expect("gcd divides");
        if !z.is_constant() {
            out.push((z, i));
        }
        w = y;
        c = c.exact_div(&w).expect("gcd divides");
        i += 1;
    }
    if !c.is_constant() {
        for (g, m) in squarefree_fp(&c) {
            out.push((g, m));
        }
    }
    // Merge equal factors produced by the two branches.
    out.sort();
    let mut merged: Vec<(UPoly, usize)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += m,
            _ => merged.push((g, m)),
        }
    }
    merged
}

/// Splits a monic squarefree `f` into products of irreducibles of equal degree.
fn distinct_degree(f: &UPoly) -> Vec<(usize, UPoly)> {
    let field = f.field();
    let p = BigUint::from(field.characteristic());
    let x = UPoly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&p, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_constant() {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((d, g));
        }
    }
    if !rest.is_constant() {
        out.push((rest.deg(), rest));
    }
    out
}

fn random_poly(field: FieldSpec, deg: usize, rng: &mut ChaCha8Rng) -> UPoly {
    let p = field.characteristic();
    UPoly::new(
        field,
        (0..deg).map(|_| field.from_i64(rng.gen_range(0..p) as i64)).collect(),
    )
}

/// Cantor-Zassenhaus splitting of a product of irreducibles of degree `d`.
fn equal_degree(f: &UPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<UPoly> {
    if f.deg() == d {
        return vec![f.monic()];
    }
    let field = f.field();
    let p = field.characteristic();
    loop {
        let a = random_poly(field, f.deg(), rng);
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(d-1)).
            let mut acc = a.rem(f);
            let mut t = acc.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            a.pow_mod(&e, f).sub(&UPoly::one(field))
        };
        let g = f.gcd(&b);
        if !g.is_constant() && g.deg() < f.deg() {
            let h = f.exact_div(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

// ---------------------------------------------------------------- full factorization

/// A factor together with the reason it is irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifiedFactor {
    pub factor: UPoly,
    pub multiplicity: usize,
    pub certificate: IrreducibleCertificate,
}

/// Complete factorization into monic irreducibles; over `Q` this is `Unknown` when some
/// squarefree piece can be neither certified irreducible nor split.
pub fn factorization(f: &UPoly) -> Result<TriState<Vec<CertifiedFactor>, crate::arith::Never>> {
    if f.is_constant() {
        return Err(LieError::ConstantPolynomial);
    }
    let field = f.field();
    if let FieldSpec::PrimeField(p) = field {
        let out = factor_fp(f)
            .into_iter()
            .map(|(g, m)| CertifiedFactor {
                certificate: if g.deg() == 1 {
                    IrreducibleCertificate::Linear
                } else {
                    IrreducibleCertificate::FiniteField { p }
                },
                factor: g,
                multiplicity: m,
            })
            .collect();
        return Ok(TriState::True(out));
    }
    let mut out: Vec<CertifiedFactor> = Vec::new();
    for (g, m) in squarefree_q(&f.monic()) {
        let mut stack = vec![g];
        while let Some(h) = stack.pop() {
            match irreducibility(&h)? {
                TriState::True(cert) => out.push(CertifiedFactor {
                    factor: h,
                    multiplicity: m,
                    certificate: cert,
                }),
                TriState::False(w) => {
                    let rest = h.exact_div(&w).expect("witness divides").monic();
                    stack.push(w);
                    stack.push(rest);
                }
                TriState::Unknown(u) => return Ok(TriState::Unknown(u)),
            }
        }
    }
    out.sort_by(|a, b| {
        a.factor
            .deg()
            .cmp(&b.factor.deg())
            .then_with(|| a.factor.cmp(&b.factor))
    });
    Ok(TriState::True(out))
}

/// Yun's squarefree decomposition in characteristic zero.
fn squarefree_q(f: &UPoly) -> Vec<(UPoly, usize)> {
    let mut out = Vec::new();
    let d = f.derivative();
    let mut a = f.gcd(&d);
    let mut b = f.exact_div(&a).expect("gcd divides");
    let mut c = d.exact_div(&a).expect("gcd divides");
    let mut dd = c.sub(&b.derivative());
    let mut i = 1;
    while !b.is_constant() {
        a = b.gcd(&dd);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        c = dd.exact_div(&a).expect("gcd divides");
        dd = c.sub(&b.derivative());
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::PrimeField(p)
    }

    #[test]
    fn x2_plus_1_over_q_certified_by_3() {
        let f = UPoly::from_i64(Q, &[1, 0, 1]);
        assert_eq!(
            irreducibility(&f).unwrap(),
            TriState::True(IrreducibleCertificate::GoodPrime { p: 3 })
        );
    }

    #[test]
    fn x2_minus_1_over_q_has_root_one() {
        let f = UPoly::from_i64(Q, &[-1, 0, 1]);
        assert_eq!(irreducibility(&f).unwrap(), TriState::False(UPoly::from_i64(Q, &[-1, 1])));
    }

    #[test]
    fn x2_plus_1_over_f5_has_root_two() {
        let f = UPoly::from_i64(fp(5), &[1, 0, 1]);
        assert_eq!(
            irreducibility(&f).unwrap(),
            TriState::False(UPoly::from_i64(fp(5), &[-2, 1]))
        );
    }

    #[test]
    fn constant_is_an_error() {
        assert!(irreducibility(&UPoly::from_i64(Q, &[3])).is_err());
    }

    #[test]
    fn product_of_quadratics_is_split() {
        // (x^2+1)(x^2-2) has no rational root but is reducible.
        let f = UPoly::from_i64(Q, &[1, 0, 1]).mul(&UPoly::from_i64(Q, &[-2, 0, 1]));
        let w = irreducibility(&f).unwrap();
        let g = w.witness().expect("reducible");
        assert_eq!(g.deg(), 2);
        assert!(g.divides(&f));
    }

    #[test]
    fn x4_plus_1_is_irreducible_over_q() {
        // Reducible modulo every prime, so only the bounded quadratic search decides.
        let f = UPoly::from_i64(Q, &[1, 0, 0, 0, 1]);
        assert!(irreducibility(&f).unwrap().is_true());
    }

    #[test]
    fn rational_root_with_denominator() {
        let f = UPoly::from_i64(Q, &[-1, 0, 0, 2]).mul(&UPoly::from_i64(Q, &[1, 0, 1]));
        let f = f.mul(&UPoly::from_i64(Q, &[-1, 3]));
        let w = irreducibility(&f).unwrap();
        assert_eq!(w.witness().unwrap(), &UPoly::new(Q, vec![crate::arith::qf(-1, 3), crate::arith::q(1)]));
    }

    #[test]
    fn fp_factorization_recombines() {
        for p in [2u64, 3, 5, 7] {
            let f = UPoly::from_i64(fp(p), &[1, 1, 0, 1, 1, 0, 1]).mul(&UPoly::from_i64(fp(p), &[1, 1]).pow(3));
            let factors = factor_fp(&f);
            let prod = factors
                .iter()
                .fold(UPoly::one(fp(p)), |acc, (g, m)| acc.mul(&g.pow(*m)));
            assert_eq!(prod, f.monic(), "p = {p}");
            for (g, _) in &factors {
                assert!(irreducibility(g).unwrap().is_true());
            }
        }
    }

    #[test]
    fn pth_power_factorization() {
        let f3 = fp(3);
        let f = UPoly::from_i64(f3, &[1, 0, 0, 1]); // x^3 + 1 = (x + 1)^3
        assert_eq!(factor_fp(&f), vec![(UPoly::from_i64(f3, &[1, 1]), 3)]);
    }

    #[test]
    fn rational_factorization_counts_multiplicity() {
        let f = UPoly::from_i64(Q, &[1, 0, 1]).pow(2).mul(&UPoly::from_i64(Q, &[-2, 0, 1]));
        let TriState::True(fs) = factorization(&f).unwrap() else {
            panic!("inconclusive")
        };
        let total: usize = fs.iter().map(|c| c.multiplicity).sum();
        assert_eq!(total, 2 + 1);
    }
}
