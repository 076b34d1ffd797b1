use serde::Serialize;

use super::chain::{invariant_chain_bound, ChainBound};
use super::mna::{mna_status, solvable_mna_status, MnaCertificate};
use super::probe::sample_elements;
use super::prototypes::{aff1, heisenberg, sl2};
use crate::algebra::{direct_sum, semidirect_sum, series, simplicity_status, LieAlgebra, SimplicityCertificate};
use crate::arith::{
    charpoly, irreducibility, unit_vec, FieldSpec, Inconclusive, IrreducibleCertificate, Mat, Scalar, TriState,
    UPoly, Vector,
};
use crate::error::{LieError, Result};
use crate::search::SearchBudget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyTag {
    Sl2,
    Heisenberg,
    Aff1,
    CaseI,
    CaseII,
    CaseIII,
    CaseIV,
    CaseV,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum FamilyParams {
    Field { field: FieldSpec },
    Matrix { m: Mat },
    Base { dim: usize },
    Action { s_dim: usize, rho: Vec<Mat> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ValidationCertificate {
    Prototype,
    /// `M` has no eigenvectors: its characteristic polynomial is irreducible.
    IrreducibleAction { charpoly: UPoly, certificate: IrreducibleCertificate },
    /// `M = 0`: `t` is central and the algebra is Heisenberg plus a line.
    CentralT,
    Inherited { mna: MnaCertificate, simple: SimplicityCertificate },
    /// One-dimensional `S`: the chain bound of its generator is two.
    ChainBound { bound: ChainBound },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ValidationWitness {
    Eigenvector { eigenvalue: Scalar, vector: Vector, factor: UPoly },
    /// `rho(s)` has an invariant subspace: its characteristic polynomial has this factor.
    ReducibleAction { element: Vector, factor: UPoly },
    ChainLength { element: Vector, length: usize },
    /// The semidirect sum is abelian or minimal nonabelian, so not of depth two.
    Degenerate { reason: String },
}

pub type Validation = TriState<ValidationCertificate, ValidationWitness>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyInstance {
    pub tag: FamilyTag,
    pub params: FamilyParams,
    #[serde(skip)]
    pub algebra: LieAlgebra,
    pub validation: Validation,
}

/// Elements checked by the sampled validators of cases (iv) and (v).
pub const DEFAULT_SAMPLES: usize = 64;

pub fn prototype_instance(tag: FamilyTag, field: FieldSpec) -> Option<FamilyInstance> {
    let algebra = match tag {
        FamilyTag::Sl2 => sl2(field),
        FamilyTag::Heisenberg => heisenberg(field),
        FamilyTag::Aff1 => aff1(field),
        _ => return None,
    };
    Some(FamilyInstance {
        tag,
        params: FamilyParams::Field { field },
        algebra,
        validation: TriState::True(ValidationCertificate::Prototype),
    })
}

/// Cases (i) and (ii) on `(x, y, z, t)`: `[x,y] = z`, `ad t` is `M` on `span(x,y)` and
/// `tr(M)` on `z`.
pub fn case_i_ii(m: &Mat) -> Result<FamilyInstance> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(LieError::DimensionMismatch { expected: 2, got: m.rows().max(m.cols()) });
    }
    let f = m.field();
    let tr = m.trace();
    let tag = if tr.is_zero() {
        FamilyTag::CaseI
    } else if tr.is_one() {
        FamilyTag::CaseII
    } else {
        return Err(LieError::BadTrace(tr.to_string()));
    };
    let neg = |c: &Scalar| -c;
    let mut upper = std::collections::BTreeMap::new();
    upper.insert((0, 1), unit_vec(f, 4, 2));
    upper.insert((0, 3), vec![neg(m.get(0, 0)), neg(m.get(1, 0)), f.zero(), f.zero()]);
    upper.insert((1, 3), vec![neg(m.get(0, 1)), neg(m.get(1, 1)), f.zero(), f.zero()]);
    upper.insert((2, 3), vec![f.zero(), f.zero(), neg(&tr), f.zero()]);
    let algebra = LieAlgebra::from_upper(f, 4, upper)?
        .with_labels(["x", "y", "z", "t"].iter().map(|s| s.to_string()).collect())?;
    let validation = if m.is_zero() {
        TriState::True(ValidationCertificate::CentralT)
    } else {
        action_validation(m)?
    };
    Ok(FamilyInstance {
        tag,
        params: FamilyParams::Matrix { m: m.clone() },
        algebra,
        validation,
    })
}

fn action_validation(m: &Mat) -> Result<Validation> {
    let cp = charpoly(m)?;
    Ok(match irreducibility(&cp)? {
        TriState::True(certificate) => TriState::True(ValidationCertificate::IrreducibleAction {
            charpoly: cp,
            certificate,
        }),
        TriState::False(g) if g.deg() == 1 => {
            let g = g.monic();
            let eigenvalue = -&g.coeff(0);
            let shifted = m.sub(&Mat::identity(m.field(), 2).scale(&eigenvalue));
            let vector = shifted.kernel().row_vectors().remove(0);
            TriState::False(ValidationWitness::Eigenvector { eigenvalue, vector, factor: g })
        }
        TriState::False(g) => TriState::False(ValidationWitness::ReducibleAction {
            element: vec![],
            factor: g,
        }),
        TriState::Unknown(u) => TriState::Unknown(u),
    })
}

/// Case (iii): `g ⊕ K` for a certified simple minimal nonabelian `g`.
pub fn case_iii(g: &LieAlgebra, budget: &SearchBudget) -> Result<FamilyInstance> {
    let TriState::True(simple) = simplicity_status(g)? else {
        return Err(LieError::PreconditionNotCertified("algebra is not certified simple".into()));
    };
    let TriState::True(mna) = mna_status(g, budget)? else {
        return Err(LieError::PreconditionNotCertified("algebra is not certified minimal nonabelian".into()));
    };
    let algebra = direct_sum(g, &LieAlgebra::abelian(g.field(), 1))?;
    Ok(FamilyInstance {
        tag: FamilyTag::CaseIII,
        params: FamilyParams::Base { dim: g.dim() },
        algebra,
        validation: TriState::True(ValidationCertificate::Inherited { mna, simple }),
    })
}

fn action_of(rho: &[Mat], s: &[Scalar]) -> Mat {
    let m = rho[0].rows();
    let mut acc = Mat::zeros(rho[0].field(), m, m);
    for (c, r) in s.iter().zip(rho) {
        if !c.is_zero() {
            acc = acc.add(&r.scale(c));
        }
    }
    acc
}

fn sampled_unknown(checked: usize) -> Validation {
    TriState::Unknown(Inconclusive::new(
        checked as u64,
        0,
        format!("sampled: {checked} elements pass, the condition quantifies over all of S"),
    ))
}

/// Case (iv): `S ⋉ V` with `S` two-dimensional nonabelian or a certified
/// three-dimensional simple minimal nonabelian algebra.
pub fn case_iv(s: &LieAlgebra, rho: &[Mat], samples: usize, budget: &SearchBudget) -> Result<FamilyInstance> {
    match s.dim() {
        2 if !s.is_abelian() => {}
        3 => {
            if !simplicity_status(s)?.is_true() || !mna_status(s, budget)?.is_true() {
                return Err(LieError::PreconditionNotCertified(
                    "S is not certified simple minimal nonabelian".into(),
                ));
            }
        }
        _ => {
            return Err(LieError::PreconditionNotCertified(
                "S must be the nonabelian plane or a three-dimensional simple algebra".into(),
            ))
        }
    }
    let algebra = semidirect_sum(s, rho)?;
    let basis = s.full().basis_vectors();
    let mut validation = None;
    let elems = sample_elements(s, &basis, samples.max(basis.len()), budget.max_height);
    for e in &elems {
        match irreducibility(&charpoly(&action_of(rho, e))?)? {
            TriState::True(_) => {}
            TriState::False(g) => {
                validation = Some(TriState::False(ValidationWitness::ReducibleAction {
                    element: e.clone(),
                    factor: g,
                }));
                break;
            }
            TriState::Unknown(u) => {
                validation = Some(TriState::Unknown(u));
                break;
            }
        }
    }
    Ok(FamilyInstance {
        tag: FamilyTag::CaseIV,
        params: FamilyParams::Action { s_dim: s.dim(), rho: rho.to_vec() },
        algebra,
        validation: validation.unwrap_or_else(|| sampled_unknown(elems.len())),
    })
}

/// Case (v): abelian `S` of dimension one or two acting by commuting matrices.
pub fn case_v(rho: &[Mat], samples: usize, budget: &SearchBudget) -> Result<FamilyInstance> {
    let s_dim = rho.len();
    if !(1..=2).contains(&s_dim) {
        return Err(LieError::DimensionMismatch { expected: 2, got: s_dim });
    }
    for i in 0..s_dim {
        for j in i + 1..s_dim {
            if !rho[i].commutator(&rho[j]).is_zero() {
                return Err(LieError::NonCommutingAction(i, j));
            }
        }
    }
    let field = rho[0].field();
    let s = LieAlgebra::abelian(field, s_dim);
    let algebra = semidirect_sum(&s, rho)?;
    let basis = s.full().basis_vectors();
    let elems = if s_dim == 1 {
        basis.clone()
    } else {
        sample_elements(&s, &basis, samples.max(basis.len()), budget.max_height)
    };
    let mut validation = None;
    let mut bound1 = None;
    for e in &elems {
        match invariant_chain_bound(&action_of(rho, e))? {
            TriState::True(b) if b.length == 2 => {
                bound1.get_or_insert(b);
            }
            TriState::True(b) => {
                validation = Some(TriState::False(ValidationWitness::ChainLength {
                    element: e.clone(),
                    length: b.length,
                }));
                break;
            }
            TriState::False(never) => match never {},
            TriState::Unknown(u) => {
                validation = Some(TriState::Unknown(u));
                break;
            }
        }
    }
    let validation = match validation {
        Some(v) => v,
        None if algebra.is_abelian() => TriState::False(ValidationWitness::Degenerate {
            reason: "S acts trivially".into(),
        }),
        None => match solvable_mna_status(&algebra, budget)? {
            TriState::True(_) => TriState::False(ValidationWitness::Degenerate {
                reason: "the semidirect sum is minimal nonabelian".into(),
            }),
            TriState::Unknown(u) => TriState::Unknown(u),
            TriState::False(_) if s_dim == 1 => TriState::True(ValidationCertificate::ChainBound {
                bound: bound1.expect("one element checked"),
            }),
            TriState::False(_) => sampled_unknown(elems.len()),
        },
    };
    debug_assert!(series(&algebra).solvable);
    Ok(FamilyInstance {
        tag: FamilyTag::CaseV,
        params: FamilyParams::Action { s_dim, rho: rho.to_vec() },
        algebra,
        validation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qvec};
    use crate::quat::pure_lie_algebra;
    use num_rational::BigRational;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn case_i_examples() {
        let inst = case_i_ii(&Mat::from_i64(Q, &[&[0, 2], &[1, 0]])).unwrap();
        assert_eq!(inst.tag, FamilyTag::CaseI);
        assert!(inst.algebra.jacobi_residuals().is_empty());
        assert!(matches!(
            inst.validation,
            TriState::True(ValidationCertificate::IrreducibleAction {
                certificate: IrreducibleCertificate::GoodPrime { p: 3 },
                ..
            })
        ));
        let bad = case_i_ii(&Mat::from_i64(Q, &[&[1, 0], &[0, -1]])).unwrap();
        match bad.validation {
            TriState::False(ValidationWitness::Eigenvector { eigenvalue, vector, .. }) => {
                assert_eq!(eigenvalue, q(1));
                assert_eq!(vector, qvec(&[1, 0]));
            }
            other => panic!("{other:?}"),
        }
        let two = case_i_ii(&Mat::from_i64(Q, &[&[1, -1], &[1, 0]])).unwrap();
        assert_eq!(two.tag, FamilyTag::CaseII);
        assert!(two.validation.is_true());
        assert!(matches!(
            case_i_ii(&Mat::from_i64(Q, &[&[1, 0], &[0, 1]])),
            Err(LieError::BadTrace(_))
        ));
        let central = case_i_ii(&Mat::zeros(Q, 2, 2)).unwrap();
        assert_eq!(central.validation, TriState::True(ValidationCertificate::CentralT));
    }

    #[test]
    fn case_iii_examples() {
        let b = SearchBudget::default();
        let inst = case_iii(&pure_lie_algebra(&r(-1), &r(-1)).unwrap(), &b).unwrap();
        assert_eq!(inst.algebra.dim(), 4);
        assert!(matches!(case_iii(&sl2(Q), &b), Err(LieError::PreconditionNotCertified(_))));
        assert!(matches!(case_iii(&heisenberg(Q), &b), Err(LieError::PreconditionNotCertified(_))));
    }

    #[test]
    fn case_iv_examples() {
        let b = SearchBudget::default();
        // [t,x] = x forces rho(x) = [rho(t), rho(x)].
        let bad = case_iv(
            &aff1(Q),
            &[Mat::from_i64(Q, &[&[0, -1], &[1, 0]]), Mat::from_i64(Q, &[&[1, 1], &[-2, -1]])],
            8,
            &b,
        );
        assert!(matches!(bad, Err(LieError::NotARepresentation(_))));
        let split = case_iv(&aff1(Q), &[Mat::from_i64(Q, &[&[1, 0], &[0, 2]]), Mat::zeros(Q, 2, 2)], 8, &b).unwrap();
        assert!(matches!(
            split.validation,
            TriState::False(ValidationWitness::ReducibleAction { ref element, .. }) if *element == qvec(&[1, 0])
        ));
        let line = case_iv(&aff1(Q), &[Mat::from_i64(Q, &[&[3]]), Mat::zeros(Q, 1, 1)], 8, &b).unwrap();
        assert!(line.validation.is_unknown());
    }

    #[test]
    fn case_v_examples() {
        let b = SearchBudget::default();
        let p = UPoly::from_i64(Q, &[1, 0, 1]).mul(&UPoly::from_i64(Q, &[-2, 0, 1]));
        let inst = case_v(&[p.companion()], 8, &b).unwrap();
        assert!(matches!(
            inst.validation,
            TriState::True(ValidationCertificate::ChainBound { ref bound }) if bound.length == 2
        ));
        let irr = case_v(&[UPoly::from_i64(Q, &[1, 0, 1]).companion()], 8, &b).unwrap();
        assert!(matches!(irr.validation, TriState::False(ValidationWitness::ChainLength { length: 1, .. })));
        let diag = case_v(&[Mat::from_i64(Q, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]])], 8, &b).unwrap();
        assert!(matches!(diag.validation, TriState::False(ValidationWitness::ChainLength { length: 3, .. })));
        let nil = case_v(&[Mat::from_i64(Q, &[&[0, 1], &[0, 0]])], 8, &b).unwrap();
        assert!(matches!(nil.validation, TriState::False(ValidationWitness::Degenerate { .. })));
        assert!(matches!(
            case_v(&[Mat::from_i64(Q, &[&[0, 1], &[0, 0]]), Mat::from_i64(Q, &[&[1, 0], &[0, 0]])], 8, &b),
            Err(LieError::NonCommutingAction(0, 1))
        ));
    }
}
