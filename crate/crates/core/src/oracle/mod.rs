//! Exhaustive ground truth over small prime fields.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use crate::algebra::{bracket_span, LieAlgebra, Subspace};
use crate::arith::{minpoly, FieldSpec, Mat, Scalar, Vector};
use crate::error::{LieError, Result};
use crate::spectral::{fitting0_dim, rank};

pub const DEFAULT_SUBSPACE_GUARD: u128 = 100_000;
pub const DEFAULT_ELEMENT_GUARD: u128 = 1_000_000;

/// Reduction of a rational algebra modulo `p`, re-validated over `F_p`.
pub fn reduce_mod_p(l: &LieAlgebra, p: u64) -> Result<LieAlgebra> {
    l.field().require_char_zero()?;
    l.map_field(FieldSpec::prime(p)?)
}

fn prime_of(field: FieldSpec) -> Result<u64> {
    match field {
        FieldSpec::PrimeField(p) => Ok(p),
        FieldSpec::Rationals => Err(LieError::PreconditionNotCertified(
            "exhaustive enumeration needs a finite field".into(),
        )),
    }
}

/// Gaussian binomial `[n choose k]_p`.
pub fn gaussian_binomial(n: usize, k: usize, p: u64) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num = num.saturating_mul(p.saturating_pow((n - i) as u32) - 1);
        den = den.saturating_mul(p.saturating_pow((i + 1) as u32) - 1);
    }
    num / den
}

/// Number of subspaces of `F_p^n`.
pub fn subspace_count(n: usize, p: u64) -> u128 {
    (0..=n).map(|k| gaussian_binomial(n, k, p)).fold(0u128, u128::saturating_add)
}

/// Every subspace of `F_p^n` once, by reduced echelon pivot pattern, filtered by `keep`.
pub fn enumerate_subspaces(
    field: FieldSpec,
    n: usize,
    guard: u128,
    mut keep: impl FnMut(&Subspace) -> bool,
) -> Result<Vec<Subspace>> {
    let p = prime_of(field)?;
    let estimate = subspace_count(n, p);
    if estimate > guard {
        return Err(LieError::BudgetGuardExceeded { estimate, guard });
    }
    let residues: Vec<Scalar> = (0..p).map(|r| field.from_i64(r as i64)).collect();
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in (0..n).combinations(k) {
            // Free positions: right of the row's pivot and not a pivot column.
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| {
                    let pv = &pivots;
                    ((pv[r] + 1)..n).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
                })
                .collect();
            let total = (p as u128).pow(free.len() as u32);
            for code in 0..total {
                let mut rows: Vec<Vector> = (0..k)
                    .map(|r| {
                        let mut v = vec![field.zero(); n];
                        v[pivots[r]] = field.one();
                        v
                    })
                    .collect();
                let mut c = code;
                for &(r, col) in &free {
                    rows[r][col] = residues[(c % p as u128) as usize].clone();
                    c /= p as u128;
                }
                let s = Subspace::span(field, n, &rows);
                if keep(&s) {
                    out.push(s);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SubalgebraEnumeration {
    #[serde(skip)]
    pub algebra: LieAlgebra,
    pub subalgebras: Vec<Subspace>,
    pub counts_by_dim: Vec<usize>,
}

fn closed(l: &LieAlgebra, s: &Subspace) -> bool {
    s.contains_subspace(&bracket_span(l, s, s))
}

pub fn enumerate_subalgebras(l: &LieAlgebra) -> Result<SubalgebraEnumeration> {
    enumerate_subalgebras_with(l, DEFAULT_SUBSPACE_GUARD)
}

/// All subalgebras, sorted by dimension and then echelon basis.
pub fn enumerate_subalgebras_with(l: &LieAlgebra, guard: u128) -> Result<SubalgebraEnumeration> {
    let mut subalgebras = enumerate_subspaces(l.field(), l.dim(), guard, |s| closed(l, s))?;
    subalgebras.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
    let mut counts_by_dim = vec![0; l.dim() + 1];
    for s in &subalgebras {
        counts_by_dim[s.dim()] += 1;
    }
    Ok(SubalgebraEnumeration {
        algebra: l.clone(),
        subalgebras,
        counts_by_dim,
    })
}

fn is_abelian_sub(l: &LieAlgebra, s: &Subspace) -> bool {
    bracket_span(l, s, s).is_zero()
}

/// Depth of every member of a subalgebra lattice, keyed by subspace; any input order.
pub fn lattice_depths(l: &LieAlgebra, subalgebras: &[Subspace]) -> BTreeMap<Subspace, u32> {
    let mut order: Vec<&Subspace> = subalgebras.iter().collect();
    order.sort_by_key(|s| s.dim());
    let mut memo: BTreeMap<Subspace, u32> = BTreeMap::new();
    let mut done: Vec<(&Subspace, u32)> = Vec::new();
    for s in order {
        let d = if is_abelian_sub(l, s) {
            0
        } else {
            1 + done
                .iter()
                .filter(|(t, _)| t.dim() < s.dim() && s.contains_subspace(t))
                .map(|(_, d)| *d)
                .max()
                .unwrap_or(0)
        };
        memo.insert(s.clone(), d);
        done.push((s, d));
    }
    memo
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub depth: u32,
    pub counts_by_dim: Vec<usize>,
    /// Number of subalgebras of each depth.
    pub depth_histogram: Vec<usize>,
}

/// Depth by recursion over the full subalgebra lattice.
pub fn depth_bruteforce(l: &LieAlgebra) -> Result<DepthReport> {
    let en = enumerate_subalgebras(l)?;
    let memo = lattice_depths(l, &en.subalgebras);
    let depth = memo[&l.full()];
    let mut depth_histogram = vec![0; depth as usize + 1];
    for d in memo.values() {
        depth_histogram[*d as usize] += 1;
    }
    Ok(DepthReport {
        depth,
        counts_by_dim: en.counts_by_dim,
        depth_histogram,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Property {
    Regular,
    Anisotropic,
    Mna,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum BruteWitness {
    Element { x: Vector },
    Subalgebra { subalgebra: Subspace },
    Abelian,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyVerdict {
    pub property: Property,
    pub holds: bool,
    pub witness: Option<BruteWitness>,
    /// Regularity and anisotropy over `F_p` are analogues of the characteristic-zero
    /// notions and are not claimed to transfer.
    pub characteristic_p_analogue: bool,
}

/// Nonzero vectors of `F_p^n`, coordinate 0 least significant.
pub fn elements(field: FieldSpec, n: usize) -> Result<impl Iterator<Item = Vector>> {
    let p = prime_of(field)?;
    let total = (p as u128).saturating_pow(n as u32);
    let residues: Vec<Scalar> = (0..p).map(|r| field.from_i64(r as i64)).collect();
    Ok((1..total).map(move |mut code| {
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push(residues[(code % p as u128) as usize].clone());
            code /= p as u128;
        }
        v
    }))
}

pub fn property_bruteforce(l: &LieAlgebra, which: Property) -> Result<PropertyVerdict> {
    property_bruteforce_with(l, which, DEFAULT_ELEMENT_GUARD)
}

pub fn property_bruteforce_with(l: &LieAlgebra, which: Property, guard: u128) -> Result<PropertyVerdict> {
    let p = prime_of(l.field())?;
    let n = l.dim();
    let verdict = |holds: bool, witness| PropertyVerdict {
        property: which,
        holds,
        witness,
        characteristic_p_analogue: which != Property::Mna,
    };
    if which == Property::Mna {
        if l.is_abelian() {
            return Ok(verdict(false, Some(BruteWitness::Abelian)));
        }
        let en = enumerate_subalgebras(l)?;
        let bad = en
            .subalgebras
            .iter()
            .find(|s| !s.is_full() && !is_abelian_sub(l, s))
            .cloned();
        return Ok(match bad {
            Some(s) => verdict(false, Some(BruteWitness::Subalgebra { subalgebra: s })),
            None => verdict(true, None),
        });
    }
    let estimate = (p as u128).saturating_pow(n as u32);
    if estimate > guard {
        return Err(LieError::BudgetGuardExceeded { estimate, guard });
    }
    let r = if which == Property::Regular { rank(l)?.rank } else { 0 };
    for x in elements(l.field(), n)? {
        let bad = match which {
            Property::Regular => fitting0_dim(l, &x)? != r,
            Property::Anisotropic => !minpoly(&l.ad(&x)?)?.squarefree,
            Property::Mna => unreachable!(),
        };
        if bad {
            return Ok(verdict(false, Some(BruteWitness::Element { x })));
        }
    }
    Ok(verdict(true, None))
}

/// Longest chain `0 < V_1 < ... < V = F_p^n` of `A`-invariant subspaces, by enumeration.
pub fn chain_length_bruteforce(a: &Mat) -> Result<usize> {
    let n = a.require_square()?;
    let invariant = |s: &Subspace| s.basis_vectors().iter().all(|v| s.contains(&a.mul_vec(v)));
    let subs = enumerate_subspaces(a.field(), n, DEFAULT_SUBSPACE_GUARD, invariant)?;
    let mut order: Vec<&Subspace> = subs.iter().collect();
    order.sort_by_key(|s| s.dim());
    let mut best: Vec<(&Subspace, usize)> = Vec::new();
    for s in order {
        let len = best
            .iter()
            .filter(|(t, _)| t.dim() < s.dim() && s.contains_subspace(t))
            .map(|(_, k)| k + 1)
            .max()
            .unwrap_or(0);
        best.push((s, len));
    }
    Ok(best.iter().find(|(s, _)| s.is_full()).map_or(0, |(_, k)| *k))
}
