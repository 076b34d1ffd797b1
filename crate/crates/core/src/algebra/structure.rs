use serde::Serialize;

use super::{LieAlgebra, Subspace};
use crate::arith::{vec_is_zero, FieldSpec, Mat, Vector};
use crate::error::{LieError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClosureMode {
    Subalgebra,
    Ideal,
}

/// `span{[a, b] : a in A, b in B}`.
pub fn bracket_span(l: &LieAlgebra, a: &Subspace, b: &Subspace) -> Subspace {
    let av = a.basis_vectors();
    let bv = b.basis_vectors();
    let mut out = Vec::new();
    for x in &av {
        for y in &bv {
            let v = l.bracket(x, y);
            if !vec_is_zero(&v) {
                out.push(v);
            }
        }
    }
    Subspace::span(l.field(), l.dim(), &out)
}

/// Smallest subalgebra (or ideal) containing the generators.
pub fn closure(l: &LieAlgebra, generators: &[Vector], mode: ClosureMode) -> Subspace {
    let n = l.dim();
    let mut s = Subspace::span(l.field(), n, generators);
    let full = l.full();
    loop {
        let other = match mode {
            ClosureMode::Subalgebra => &s,
            ClosureMode::Ideal => &full,
        };
        let next = s.sum(&bracket_span(l, &s, other));
        if next.dim() == s.dim() {
            return s;
        }
        s = next;
    }
}

pub fn is_subalgebra(l: &LieAlgebra, s: &Subspace) -> bool {
    s.contains_subspace(&bracket_span(l, s, s))
}

pub fn is_ideal(l: &LieAlgebra, s: &Subspace) -> bool {
    s.contains_subspace(&bracket_span(l, s, &l.full()))
}

/// `{v : [v, s] = 0 for all s in S}`.
pub fn centralizer(l: &LieAlgebra, s: &Subspace) -> Subspace {
    let n = l.dim();
    let field = l.field();
    // Row block for each basis vector s: the matrix v -> [v, s] = -ad(s) v.
    let mut rows: Vec<Vector> = Vec::new();
    for b in s.basis_vectors() {
        let ad = l.ad(&b).expect("ambient vector");
        rows.extend(ad.row_vectors());
    }
    if rows.is_empty() {
        return l.full();
    }
    let ker = Mat::from_rows(field, n, rows).kernel();
    Subspace::span(field, n, &ker.row_vectors())
}

pub fn center(l: &LieAlgebra) -> Subspace {
    centralizer(l, &l.full())
}

/// `{v : [v, S] ⊆ S}`.
pub fn normalizer(l: &LieAlgebra, s: &Subspace) -> Subspace {
    let n = l.dim();
    let field = l.field();
    if s.is_zero() || s.is_full() {
        return l.full();
    }
    // v ↦ [v, b] reduced modulo S must vanish for each basis vector b of S.
    let mut rows: Vec<Vector> = Vec::new();
    for b in s.basis_vectors() {
        let images: Vec<Vector> = (0..n)
            .map(|i| s.reduce(&l.bracket(&crate::arith::unit_vec(field, n, i), &b)))
            .collect();
        let m = Mat::from_cols(field, n, images);
        rows.extend(m.row_vectors());
    }
    let ker = Mat::from_rows(field, n, rows).kernel();
    Subspace::span(field, n, &ker.row_vectors())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub derived_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub solvable: bool,
    pub nilpotent: bool,
    /// The last nonzero term of the derived series (its stable term when not solvable).
    pub last_nonzero_derived: Subspace,
    #[serde(skip)]
    pub derived: Vec<Subspace>,
    #[serde(skip)]
    pub lower_central: Vec<Subspace>,
}

fn iterate(l: &LieAlgebra, step: impl Fn(&Subspace) -> Subspace) -> Vec<Subspace> {
    let mut terms = vec![l.full()];
    loop {
        let last = terms.last().expect("nonempty");
        if last.is_zero() {
            return terms;
        }
        let next = step(last);
        let stable = next.dim() == last.dim();
        terms.push(next);
        if stable {
            return terms;
        }
    }
}

pub fn series(l: &LieAlgebra) -> SeriesReport {
    let derived = iterate(l, |s| bracket_span(l, s, s));
    let full = l.full();
    let lower_central = iterate(l, |s| bracket_span(l, &full, s));
    let solvable = derived.last().is_some_and(Subspace::is_zero);
    let nilpotent = lower_central.last().is_some_and(Subspace::is_zero);
    let last_nonzero_derived = derived
        .iter()
        .rev()
        .find(|s| !s.is_zero())
        .cloned()
        .unwrap_or_else(|| l.zero_subspace());
    SeriesReport {
        derived_dims: derived.iter().map(Subspace::dim).collect(),
        lower_central_dims: lower_central.iter().map(Subspace::dim).collect(),
        solvable,
        nilpotent,
        last_nonzero_derived,
        derived,
        lower_central,
    }
}

/// `B(e_i, e_j) = tr(ad e_i ad e_j)`.
pub fn killing_gram(l: &LieAlgebra) -> Mat {
    let n = l.dim();
    let ads = l.ad_basis();
    let mut g = Mat::zeros(l.field(), n, n);
    for i in 0..n {
        for j in i..n {
            let t = ads[i].mul(&ads[j]).trace();
            g.set(j, i, t.clone());
            g.set(i, j, t);
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KillingReport {
    pub gram: Mat,
    pub rank: usize,
    pub radical: Subspace,
    pub center: Subspace,
    pub semisimple: bool,
    pub reductive: bool,
}

/// Killing form, radical (orthogonal complement of `[L, L]`) and the derived flags.
/// Characteristic zero only; in characteristic `p` the gram matrix comes back inside
/// the error.
pub fn killing(l: &LieAlgebra) -> Result<KillingReport> {
    let gram = killing_gram(l);
    if let FieldSpec::PrimeField(p) = l.field() {
        return Err(LieError::RadicalUnavailableInPositiveCharacteristic { p, gram });
    }
    let n = l.dim();
    let full = l.full();
    let derived = bracket_span(l, &full, &full);
    let radical = if derived.is_zero() {
        full
    } else {
        let rows = derived.basis().mul(&gram);
        Subspace::span(l.field(), n, &rows.kernel().row_vectors())
    };
    let center = center(l);
    let rank = gram.rank();
    Ok(KillingReport {
        rank,
        semisimple: rank == n,
        reductive: radical == center,
        radical,
        center,
        gram,
    })
}
