use serde::Serialize;

use super::chain::{invariant_chain_bound, ChainBound};
use super::instance::{case_i_ii, FamilyTag, ValidationCertificate};
use super::mna::{extend_abelian_ideal, mna_status, MnaCertificate};
use super::probe::{first_subalgebra, is_nonabelian, is_proper_nonzero, restrict_operator, sample_elements};
use crate::algebra::{
    bracket_span, center, centralizer, is_subalgebra, killing, levi_subalgebra, series, simplicity_status,
    LieAlgebra, SimplicityWitness, Subspace,
};
use crate::arith::{charpoly, irreducibility, vec_is_zero, vec_scale, Inconclusive, Mat, TriState, Vector};
use crate::error::Result;
use crate::search::SearchBudget;
use crate::spectral::QuaternionForm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Depth2Certificate {
    /// Split three-dimensional simple algebra.
    Sl2 { form: QuaternionForm },
    /// Cases (i)/(ii): `basis` is `(x, y, z, t)` in which the table takes the normal form
    /// with matrix `m`, after shifting `t` by an element of the Heisenberg ideal.
    HeisenbergExtension {
        tag: FamilyTag,
        basis: Vec<Vector>,
        m: Mat,
        validation: ValidationCertificate,
    },
    /// Case (iii).
    SimplePlusLine {
        simple: Subspace,
        center: Subspace,
        mna: MnaCertificate,
    },
    /// Case (v) with one-dimensional `S = Kt` acting on the abelian ideal.
    CyclicAction { t: Vector, ideal: Subspace, bound: ChainBound },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Depth2Witness {
    Abelian,
    MinimalNonabelian { certificate: MnaCertificate },
    /// A proper subalgebra that is neither abelian nor minimal nonabelian.
    DeepSubalgebra { subalgebra: Subspace },
}

pub type Depth2Status = TriState<Depth2Certificate, Depth2Witness>;

/// Proper, nonabelian and certified not minimal nonabelian.
pub fn is_deep_subalgebra(l: &LieAlgebra, s: &Subspace, budget: &SearchBudget) -> Result<bool> {
    if !is_proper_nonzero(s) || !is_subalgebra(l, s) || !is_nonabelian(l, s) {
        return Ok(false);
    }
    Ok(mna_status(&l.restrict(s)?, budget)?.is_false())
}

fn deep(s: Subspace) -> Depth2Status {
    TriState::False(Depth2Witness::DeepSubalgebra { subalgebra: s })
}

fn search(l: &LieAlgebra, budget: &SearchBudget, pending: Option<Inconclusive>) -> Result<Depth2Status> {
    let nested = budget.nested(200);
    Ok(match first_subalgebra(l, budget, |s| is_deep_subalgebra(l, s, &nested))? {
        Ok(s) => deep(s),
        Err(u) => TriState::Unknown(pending.unwrap_or(u)),
    })
}

fn try_deep(l: &LieAlgebra, s: Subspace, budget: &SearchBudget) -> Result<Option<Depth2Status>> {
    Ok(is_deep_subalgebra(l, &s, budget)?.then(|| deep(s)))
}

/// Depth-two recognition over `Q` by matching the classification.
pub fn depth2_status(l: &LieAlgebra, budget: &SearchBudget) -> Result<Depth2Status> {
    l.field().require_char_zero()?;
    if l.is_abelian() {
        return Ok(TriState::False(Depth2Witness::Abelian));
    }
    if let TriState::True(certificate) = mna_status(l, budget)? {
        return Ok(TriState::False(Depth2Witness::MinimalNonabelian { certificate }));
    }
    let nested = budget.nested(200);
    let ser = series(l);
    if ser.solvable {
        return solvable_case(l, budget);
    }
    let k = killing(l)?;
    if k.semisimple {
        if let Some(form) = crate::spectral::quaternion_form(l)? {
            if form.isotropic {
                return Ok(TriState::True(Depth2Certificate::Sl2 { form }));
            }
            return search(l, budget, None);
        }
        if let TriState::False(SimplicityWitness::ProperIdeal { ideal }) = simplicity_status(l)? {
            let other = centralizer(l, &ideal);
            if let Some(j) = other.basis_vectors().into_iter().next() {
                if let Some(st) = try_deep(l, ideal.with(&[j]), &nested)? {
                    return Ok(st);
                }
            }
        }
        return search(l, budget, None);
    }
    let Some(g) = levi_subalgebra(l)? else {
        return search(l, budget, None);
    };
    let rad = k.radical;
    if let Some(st) = try_deep(l, g.clone(), &nested)? {
        return Ok(st);
    }
    let gs = l.restrict(&g)?;
    let TriState::True(mna) = mna_status(&gs, &nested)? else {
        return search(l, budget, None);
    };
    let rr = bracket_span(l, &rad, &rad);
    if !rr.is_zero() {
        if let Some(st) = try_deep(l, g.sum(&rr), &nested)? {
            return Ok(st);
        }
        return search(l, budget, None);
    }
    if bracket_span(l, &g, &rad).is_zero() {
        if rad.dim() == 1 {
            return Ok(TriState::True(Depth2Certificate::SimplePlusLine {
                simple: g,
                center: rad,
                mna,
            }));
        }
        let r0 = rad.basis_vectors().remove(0);
        if let Some(st) = try_deep(l, g.with(&[r0]), &nested)? {
            return Ok(st);
        }
        return search(l, budget, None);
    }
    // Case (iv): every nonzero s in g must act irreducibly on the radical.
    let gbasis = g.basis_vectors();
    let elems = sample_elements(l, &gbasis, 64, budget.max_height);
    let mut pending = None;
    for s in &elems {
        let a = restrict_operator(&l.ad(s)?, &rad).expect("radical is an ideal");
        match irreducibility(&charpoly(&a)?)? {
            TriState::True(_) => {}
            TriState::False(_) => {
                if let Some(st) = try_deep(l, rad.with(std::slice::from_ref(s)), &nested)? {
                    return Ok(st);
                }
            }
            TriState::Unknown(u) => pending = Some(u),
        }
    }
    let pending = pending.unwrap_or_else(|| {
        Inconclusive::new(
            elems.len() as u64,
            budget.max_height,
            "sampled elements of the Levi factor act irreducibly; not a proof",
        )
    });
    search(l, budget, Some(pending))
}

fn heisenberg_ideal(l: &LieAlgebra, d: &Subspace) -> Result<Option<(Vector, Vector, Vector)>> {
    let dd = bracket_span(l, d, d);
    if dd.dim() != 1 {
        return Ok(None);
    }
    let sub = l.restrict(d)?;
    let sser = series(&sub);
    if !sser.nilpotent || center(&sub).dim() != 1 {
        return Ok(None);
    }
    let mut picked: Vec<Vector> = Vec::new();
    let mut span = dd.clone();
    for v in d.basis_vectors() {
        if !span.contains(&v) {
            span = span.with(std::slice::from_ref(&v));
            picked.push(v);
        }
    }
    let (x, y) = (picked[0].clone(), picked[1].clone());
    let z = l.bracket(&x, &y);
    if vec_is_zero(&z) {
        return Ok(None);
    }
    Ok(Some((x, y, z)))
}

fn solvable_case(l: &LieAlgebra, budget: &SearchBudget) -> Result<Depth2Status> {
    let n = l.dim();
    let field = l.field();
    let ser = series(l);
    let d = ser.derived[1].clone();
    let mut pending = None;
    if n == 4 && ser.nilpotent && d.dim() == 1 && center(l).dim() == 2 {
        // Heisenberg plus a line: t central.
        let basis = l.full().basis_vectors();
        let mut pair = None;
        'outer: for i in 0..n {
            for j in i + 1..n {
                if !vec_is_zero(&l.bracket(&basis[i], &basis[j])) {
                    pair = Some((basis[i].clone(), basis[j].clone()));
                    break 'outer;
                }
            }
        }
        let (x, y) = pair.expect("nonabelian");
        let z = l.bracket(&x, &y);
        let zc = center(l);
        let t = zc
            .basis_vectors()
            .into_iter()
            .find(|v| !d.contains(v))
            .expect("center is two-dimensional");
        return Ok(TriState::True(Depth2Certificate::HeisenbergExtension {
            tag: FamilyTag::CaseI,
            basis: vec![x, y, z, t],
            m: Mat::zeros(field, 2, 2),
            validation: ValidationCertificate::CentralT,
        }));
    }
    if n == 4 && d.dim() == 3 {
        if let Some((x, y, z)) = heisenberg_ideal(l, &d)? {
            let mut t = d.complement_basis().remove(0);
            let frame = Mat::from_cols(field, n, vec![x.clone(), y.clone(), z.clone()]);
            let cx = frame.solve(&l.bracket(&t, &x)).expect("ideal");
            let cy = frame.solve(&l.bracket(&t, &y)).expect("ideal");
            let mut m = Mat::from_cols(field, 2, vec![cx[..2].to_vec(), cy[..2].to_vec()]);
            let tr = m.trace();
            if !tr.is_zero() {
                let inv = tr.inv().expect("nonzero");
                m = m.scale(&inv);
                t = vec_scale(&inv, &t);
            }
            let inst = case_i_ii(&m)?;
            match inst.validation {
                TriState::True(validation) => {
                    return Ok(TriState::True(Depth2Certificate::HeisenbergExtension {
                        tag: inst.tag,
                        basis: vec![x, y, z, t],
                        m,
                        validation,
                    }))
                }
                TriState::Unknown(u) => pending = Some(u),
                TriState::False(_) => {}
            }
        }
    }
    let v = extend_abelian_ideal(l, &d);
    if v.dim() + 1 == n && !is_nonabelian(l, &v) {
        let t = v.complement_basis().remove(0);
        let a = restrict_operator(&l.ad(&t)?, &v).expect("ideal");
        match invariant_chain_bound(&a)? {
            TriState::True(bound) if bound.length == 2 => {
                return Ok(TriState::True(Depth2Certificate::CyclicAction { t, ideal: v, bound }));
            }
            TriState::True(_) => {}
            TriState::False(never) => match never {},
            TriState::Unknown(u) => pending = Some(u),
        }
    }
    search(l, budget, pending)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::direct_sum;
    use crate::arith::FieldSpec;
    use crate::families::{case_v, heisenberg, sl2};
    use crate::quat::pure_lie_algebra;
    use num_rational::BigRational;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn classification_examples() {
        let b = SearchBudget::default();
        let ci = case_i_ii(&Mat::from_i64(Q, &[&[0, 2], &[1, 0]])).unwrap();
        assert!(matches!(
            depth2_status(&ci.algebra, &b).unwrap(),
            TriState::True(Depth2Certificate::HeisenbergExtension { tag: FamilyTag::CaseI, .. })
        ));
        assert!(matches!(
            depth2_status(&heisenberg(Q), &b).unwrap(),
            TriState::False(Depth2Witness::MinimalNonabelian { .. })
        ));
        assert!(matches!(depth2_status(&sl2(Q), &b).unwrap(), TriState::True(Depth2Certificate::Sl2 { .. })));
        let diag = case_v(&[Mat::from_i64(Q, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]])], 8, &b).unwrap();
        let st = depth2_status(&diag.algebra, &b).unwrap();
        let Some(Depth2Witness::DeepSubalgebra { subalgebra }) = st.witness() else {
            panic!("{st:?}")
        };
        assert_eq!(subalgebra.dim(), 3);
        assert!(is_deep_subalgebra(&diag.algebra, subalgebra, &b).unwrap());
    }

    #[test]
    fn reductive_examples() {
        let b = SearchBudget::default();
        let h = pure_lie_algebra(&r(-1), &r(-1)).unwrap();
        let l = direct_sum(&h, &LieAlgebra::abelian(Q, 1)).unwrap();
        assert!(matches!(
            depth2_status(&l, &b).unwrap(),
            TriState::True(Depth2Certificate::SimplePlusLine { .. })
        ));
        let l = direct_sum(&sl2(Q), &LieAlgebra::abelian(Q, 1)).unwrap();
        assert!(depth2_status(&l, &b).unwrap().is_false());
        let l = direct_sum(&sl2(Q), &sl2(Q)).unwrap();
        assert!(depth2_status(&l, &b).unwrap().is_false());
        let bad = case_i_ii(&Mat::from_i64(Q, &[&[1, 0], &[0, -1]])).unwrap();
        assert!(depth2_status(&bad.algebra, &b).unwrap().is_false());
        let central = case_i_ii(&Mat::zeros(Q, 2, 2)).unwrap();
        assert!(depth2_status(&central.algebra, &b).unwrap().is_true());
    }
}
