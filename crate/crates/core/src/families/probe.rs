//! Shared search helpers for the structural deciders.

use std::collections::HashSet;

use crate::algebra::{bracket_span, closure, is_subalgebra, ClosureMode, LieAlgebra, Subspace};
use crate::arith::{charpoly, factorization, vec_is_zero, Inconclusive, Mat, TriState, Vector};
use crate::error::Result;
use crate::search::{height_ordered_in, SearchBudget};

/// Matrix of `m` on an `m`-invariant subspace, in the echelon basis of `s`.
pub(crate) fn restrict_operator(m: &Mat, s: &Subspace) -> Option<Mat> {
    let cols: Option<Vec<Vector>> = s.basis_vectors().iter().map(|v| s.coords(&m.mul_vec(v))).collect();
    Some(Mat::from_cols(m.field(), s.dim(), cols?))
}

/// Basis vectors first, then height-ordered combinations, at most `count` in total.
pub(crate) fn sample_elements(l: &LieAlgebra, basis: &[Vector], count: usize, max_height: u64) -> Vec<Vector> {
    let mut seen: HashSet<Vector> = HashSet::new();
    let mut out = Vec::new();
    for v in basis
        .iter()
        .cloned()
        .chain(height_ordered_in(l.field(), basis.to_vec(), max_height).map(|(_, v)| v))
    {
        if out.len() >= count {
            break;
        }
        if seen.insert(v.clone()) {
            out.push(v);
        }
    }
    out
}

/// Generalized kernels `ker f(A)^m`, one per irreducible factor `f^m` of the
/// characteristic polynomial. `None` when the factorization is inconclusive.
pub(crate) fn primary_components(a: &Mat) -> Result<Option<Vec<Subspace>>> {
    let n = a.rows();
    if n == 0 {
        return Ok(Some(vec![]));
    }
    let TriState::True(factors) = factorization(&charpoly(a)?)? else {
        return Ok(None);
    };
    Ok(Some(
        factors
            .iter()
            .map(|f| {
                let k = f.factor.pow(f.multiplicity).eval_mat(a).kernel();
                Subspace::span(a.field(), n, &k.row_vectors())
            })
            .collect(),
    ))
}

pub(crate) fn is_nonabelian(l: &LieAlgebra, s: &Subspace) -> bool {
    !bracket_span(l, s, s).is_zero()
}

pub(crate) fn is_proper_nonzero(s: &Subspace) -> bool {
    !s.is_zero() && !s.is_full()
}

/// Candidate subalgebras in a fixed order: terms of the derived and lower central
/// series, hyperplanes through `[L,L]`, spans of `x` with sums of primary components of
/// `ad x`, and closures of pairs of sampled elements.
pub(crate) fn candidate_subalgebras(l: &LieAlgebra, budget: &SearchBudget) -> Result<Vec<Subspace>> {
    let n = l.dim();
    let mut out: Vec<Subspace> = Vec::new();
    let mut seen: HashSet<Subspace> = HashSet::new();
    let mut push = |s: Subspace, out: &mut Vec<Subspace>| {
        if is_proper_nonzero(&s) && seen.insert(s.clone()) {
            out.push(s);
        }
    };
    let ser = crate::algebra::series(l);
    for s in ser.derived.iter().chain(ser.lower_central.iter()) {
        push(s.clone(), &mut out);
    }
    let full = l.full();
    let d = bracket_span(l, &full, &full);
    let comp = d.complement_basis();
    for skip in 0..comp.len() {
        let rest: Vec<Vector> = comp.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, v)| v.clone()).collect();
        push(d.with(&rest), &mut out);
        push(d.with(&[comp[skip].clone()]), &mut out);
    }
    let cap = budget.max_candidates as usize;
    let basis = full.basis_vectors();
    let samples = sample_elements(l, &basis, 24.min(cap.max(n)), budget.max_height.min(3));
    for x in &samples {
        if out.len() >= cap {
            break;
        }
        let Some(parts) = primary_components(&l.ad(x)?)? else {
            continue;
        };
        for (i, u) in parts.iter().enumerate() {
            let mut g = u.basis_vectors();
            g.push(x.clone());
            push(closure(l, &g, ClosureMode::Subalgebra), &mut out);
            for w in &parts[i + 1..] {
                let mut g2 = g.clone();
                g2.extend(w.basis_vectors());
                push(closure(l, &g2, ClosureMode::Subalgebra), &mut out);
            }
        }
    }
    // Pair closures; the number of elements is kept so the pair count fits the budget.
    let mut m = 2usize;
    while m * (m - 1) / 2 < cap && m < 400 {
        m += 1;
    }
    let elems = sample_elements(l, &basis, m, budget.max_height);
    'pairs: for (i, j) in crate::search::pair_indices(elems.len()) {
        if out.len() >= cap {
            break 'pairs;
        }
        if vec_is_zero(&l.bracket(&elems[i], &elems[j])) {
            continue;
        }
        push(closure(l, &[elems[i].clone(), elems[j].clone()], ClosureMode::Subalgebra), &mut out);
    }
    Ok(out)
}

/// First candidate satisfying `accept`, or the inconclusive record.
pub(crate) fn first_subalgebra(
    l: &LieAlgebra,
    budget: &SearchBudget,
    mut accept: impl FnMut(&Subspace) -> Result<bool>,
) -> Result<std::result::Result<Subspace, Inconclusive>> {
    let cands = candidate_subalgebras(l, budget)?;
    let mut tried = 0u64;
    for s in cands {
        tried += 1;
        debug_assert!(is_subalgebra(l, &s));
        if accept(&s)? {
            return Ok(Ok(s));
        }
    }
    Ok(Err(Inconclusive::new(tried, budget.max_height, "no candidate subalgebra qualified")))
}
