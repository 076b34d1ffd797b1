//! Re-checks of False witnesses through the library, plus the 2-dimensional
//! nonabelian subalgebra built from an anisotropy witness.

use liealg::algebra::{bracket_span, is_subalgebra, normalizer};
use liealg::arith::{minpoly, unit_vec, vec_is_zero, Vector};
use liealg::families::{is_deep_subalgebra, mna_status, Depth2Witness, MnaWitness};
use liealg::spectral::{fitting0_dim, rank, AnisotropyWitness, RegularityWitness};
use liealg::{LieAlgebra, Mat, Result, SearchBudget, Subspace, UPoly};

fn proper_nonabelian(l: &LieAlgebra, s: &Subspace) -> bool {
    !s.is_zero() && !s.is_full() && is_subalgebra(l, s) && !bracket_span(l, s, s).is_zero()
}

pub fn anisotropy(l: &LieAlgebra, w: &AnisotropyWitness) -> Result<bool> {
    Ok(match w {
        AnisotropyWitness::NonSemisimple { x, .. } => !minpoly(&l.ad(x)?)?.squarefree,
        AnisotropyWitness::SplitQuaternion { form } => form.isotropic,
    })
}

pub fn regularity(l: &LieAlgebra, w: &RegularityWitness) -> Result<bool> {
    Ok(match w {
        RegularityWitness::NonRegular { x, .. } => !vec_is_zero(x) && fitting0_dim(l, x)? > rank(l)?.rank,
        RegularityWitness::SplitQuaternion { form } => form.isotropic,
    })
}

pub fn mna(l: &LieAlgebra, w: &MnaWitness) -> bool {
    match w {
        MnaWitness::Abelian => l.is_abelian(),
        MnaWitness::ProperNonabelian { subalgebra } => proper_nonabelian(l, subalgebra),
    }
}

pub fn depth2(l: &LieAlgebra, w: &Depth2Witness, budget: &SearchBudget) -> Result<bool> {
    Ok(match w {
        Depth2Witness::Abelian => l.is_abelian(),
        Depth2Witness::MinimalNonabelian { .. } => mna_status(l, budget)?.is_true(),
        Depth2Witness::DeepSubalgebra { subalgebra } => is_deep_subalgebra(l, subalgebra, budget)?,
    })
}

fn inverse(m: &Mat) -> Option<Mat> {
    let n = m.rows();
    let cols: Option<Vec<Vector>> =
        (0..n).map(|k| m.solve(&unit_vec(m.field(), n, k))).collect();
    Some(Mat::from_cols(m.field(), n, cols?))
}

/// Semisimple part of `a` by Newton iteration on the squarefree part of its
/// minimal polynomial.
fn semisimple_part(a: &Mat) -> Result<Mat> {
    let mp = minpoly(a)?.poly;
    let f = mp.exact_div(&mp.gcd(&mp.derivative())).expect("gcd divides").monic();
    let df: UPoly = f.derivative();
    let mut s = a.clone();
    loop {
        let fs = f.eval_mat(&s);
        if fs.is_zero() {
            return Ok(s);
        }
        let inv = inverse(&df.eval_mat(&s)).expect("f' is invertible at a root of a squarefree f");
        s = s.sub(&fs.mul(&inv));
    }
}

/// Element `n` with `ad n` equal to `target`, if one exists.
fn ad_preimage(l: &LieAlgebra, target: &Mat) -> Option<Vector> {
    let n = l.dim();
    let cols: Vec<Vector> = l.ad_basis().iter().map(|m| m.entries().to_vec()).collect();
    Mat::from_cols(l.field(), n * n, cols).solve(target.entries())
}

/// From a non-semisimple `x`, the nilpotent part `n` of `x` together with an element
/// of the normalizer of `Kn` acting on it by a nonzero scalar.
pub fn plane_from_witness(l: &LieAlgebra, w: &AnisotropyWitness) -> Result<Option<Subspace>> {
    let AnisotropyWitness::NonSemisimple { x, .. } = w else {
        return Ok(None);
    };
    let a = l.ad(x)?;
    let nil = a.sub(&semisimple_part(&a)?);
    if nil.is_zero() {
        return Ok(None);
    }
    let Some(n) = ad_preimage(l, &nil) else {
        return Ok(None);
    };
    let line = Subspace::span(l.field(), l.dim(), std::slice::from_ref(&n));
    for b in normalizer(l, &line).basis_vectors() {
        if !vec_is_zero(&l.bracket(&b, &n)) {
            let plane = Subspace::span(l.field(), l.dim(), &[b, n.clone()]);
            if plane.dim() == 2 && proper_nonabelian(l, &plane) {
                return Ok(Some(plane));
            }
        }
    }
    Ok(None)
}

/// Pairs among the first elements of height at most `max_height` spanning a
/// nonabelian plane. Returns the first such plane, or `None` with the number of pairs
/// examined.
pub fn nonabelian_plane_search(l: &LieAlgebra, max_height: u64, max_pairs: usize) -> (Option<Subspace>, usize) {
    let mut m = 2usize;
    while m * (m - 1) / 2 < max_pairs {
        m += 1;
    }
    let elems: Vec<Vector> =
        liealg::search::height_ordered(l.field(), l.dim(), max_height).map(|(_, v)| v).take(m).collect();
    let mut tried = 0;
    for (i, j) in liealg::search::pair_indices(elems.len()) {
        if tried >= max_pairs {
            break;
        }
        tried += 1;
        let z = l.bracket(&elems[i], &elems[j]);
        if vec_is_zero(&z) {
            continue;
        }
        let plane = Subspace::span(l.field(), l.dim(), &[elems[i].clone(), elems[j].clone()]);
        if plane.dim() == 2 && plane.contains(&z) {
            return (Some(plane), tried);
        }
    }
    (None, tried)
}
