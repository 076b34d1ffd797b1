use serde::Serialize;

use super::probe::{first_subalgebra, is_nonabelian, is_proper_nonzero, restrict_operator};
use crate::algebra::{
    center, centralizer, killing, levi_subalgebra, normalizer, series, simplicity_status,
    LieAlgebra, SimplicityWitness, Subspace,
};
use crate::arith::{charpoly, irreducibility, IrreducibleCertificate, TriState, UPoly, Vector};
use crate::error::{LieError, Result};
use crate::quat::HilbertCertificate;
use crate::search::SearchBudget;
use crate::spectral::{anisotropy_status, quaternion_form, AnisotropyWitness};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum MnaCertificate {
    /// Three-dimensional, nilpotent, `[L,L]` equal to the one-dimensional center.
    Heisenberg,
    /// `L = Kx ⋉ V` with `V` an abelian ideal and `ad x` irreducible on `V`.
    IrreducibleAction {
        ideal: Subspace,
        x: Vector,
        action_charpoly: UPoly,
        certificate: IrreducibleCertificate,
    },
    /// Pure quaternions of a division algebra.
    DivisionQuaternion { hilbert: HilbertCertificate },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum MnaWitness {
    Abelian,
    ProperNonabelian { subalgebra: Subspace },
}

pub type MnaStatus = TriState<MnaCertificate, MnaWitness>;

fn witness(s: Subspace) -> MnaStatus {
    TriState::False(MnaWitness::ProperNonabelian { subalgebra: s })
}

/// Greedily enlarges an abelian ideal `d ⊇ [L,L]` by vectors centralizing it.
pub(crate) fn extend_abelian_ideal(l: &LieAlgebra, d: &Subspace) -> Subspace {
    let mut v = d.clone();
    loop {
        let c = centralizer(l, &v);
        let Some(w) = c.basis_vectors().into_iter().find(|w| !v.contains(w)) else {
            return v;
        };
        v = v.with(&[w]);
    }
}

fn search(l: &LieAlgebra, budget: &SearchBudget) -> Result<MnaStatus> {
    Ok(
        match first_subalgebra(l, budget, |s| Ok(is_proper_nonzero(s) && is_nonabelian(l, s)))? {
            Ok(s) => witness(s),
            Err(u) => TriState::Unknown(u),
        },
    )
}

/// Minimal nonabelian test for solvable algebras, over any field.
pub fn solvable_mna_status(l: &LieAlgebra, budget: &SearchBudget) -> Result<MnaStatus> {
    let ser = series(l);
    if !ser.solvable {
        return Err(LieError::NotSolvable);
    }
    if l.is_abelian() {
        return Ok(TriState::False(MnaWitness::Abelian));
    }
    let n = l.dim();
    let d = ser.derived[1].clone();
    if n == 3 && ser.nilpotent && d.dim() == 1 && center(l) == d {
        return Ok(TriState::True(MnaCertificate::Heisenberg));
    }
    if is_nonabelian(l, &d) {
        return Ok(witness(d));
    }
    let v = extend_abelian_ideal(l, &d);
    if v.dim() + 1 == n && !ser.nilpotent {
        let x = v.complement_basis().remove(0);
        let a = restrict_operator(&l.ad(&x)?, &v).expect("ideal is ad-invariant");
        let cp = charpoly(&a)?;
        match irreducibility(&cp)? {
            TriState::True(certificate) => {
                return Ok(TriState::True(MnaCertificate::IrreducibleAction {
                    ideal: v,
                    x,
                    action_charpoly: cp,
                    certificate,
                }))
            }
            TriState::Unknown(u) => return Ok(TriState::Unknown(u)),
            TriState::False(g) => {
                // A non-nilpotent action with a proper invariant subspace U on which it
                // is nonzero gives the proper nonabelian subalgebra Kx + U.
                let k = v.dim() as u32;
                let ak = a.pow(k);
                let img = Subspace::span(a.field(), v.dim(), &ak.transpose().row_vectors());
                let u = if img.dim() < v.dim() {
                    img
                } else {
                    let ker = g.eval_mat(&a).kernel();
                    let s = Subspace::span(a.field(), v.dim(), &ker.row_vectors());
                    if s.is_full() {
                        let first = s.basis_vectors().remove(0);
                        let mut gens = vec![first];
                        for _ in 1..v.dim() {
                            let next = a.mul_vec(gens.last().expect("nonempty"));
                            gens.push(next);
                        }
                        Subspace::span(a.field(), v.dim(), &gens)
                    } else {
                        s
                    }
                };
                let mut gens: Vec<Vector> = u.basis_vectors().iter().map(|c| v.combine(c)).collect();
                gens.push(x);
                let w = Subspace::span(l.field(), n, &gens);
                if is_proper_nonzero(&w) && is_nonabelian(l, &w) && crate::algebra::is_subalgebra(l, &w) {
                    return Ok(witness(w));
                }
            }
        }
    }
    search(l, budget)
}

/// Minimal nonabelian (depth one) test over `Q`.
pub fn mna_status(l: &LieAlgebra, budget: &SearchBudget) -> Result<MnaStatus> {
    l.field().require_char_zero()?;
    if l.is_abelian() {
        return Ok(TriState::False(MnaWitness::Abelian));
    }
    if series(l).solvable {
        return solvable_mna_status(l, budget);
    }
    let k = killing(l)?;
    if !k.radical.is_zero() {
        if let Some(g) = levi_subalgebra(l)? {
            return Ok(witness(g));
        }
        return search(l, budget);
    }
    if let Some(form) = quaternion_form(l)? {
        if !form.isotropic {
            return Ok(TriState::True(MnaCertificate::DivisionQuaternion { hilbert: form.hilbert }));
        }
        if let TriState::False(AnisotropyWitness::NonSemisimple { x, .. }) = anisotropy_status(l, budget)? {
            let b = normalizer(l, &Subspace::span(l.field(), 3, &[x]));
            if b.dim() == 2 && is_nonabelian(l, &b) {
                return Ok(witness(b));
            }
        }
        return search(l, budget);
    }
    if let TriState::False(SimplicityWitness::ProperIdeal { ideal }) = simplicity_status(l)? {
        return Ok(witness(ideal));
    }
    search(l, budget)
}
