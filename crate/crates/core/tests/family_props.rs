use liealg::algebra::direct_sum;
use liealg::families::{
    aff1, case_i_ii, case_v, depth2_status, heisenberg, invariant_chain_bound, sl2, solvable_mna_status,
    DEFAULT_SAMPLES,
};
use liealg::oracle::{chain_length_bruteforce, depth_bruteforce, property_bruteforce, reduce_mod_p, Property};
use liealg::quat::{is_division, pure_lie_algebra};
use liealg::spectral::{anisotropy_status, cartan_from_regular, fitting0_dim, rank};
use liealg::{FieldSpec, LieAlgebra, Mat, SearchBudget, TriState};
use num_rational::BigRational;
use proptest::prelude::*;

const Q: FieldSpec = FieldSpec::Rationals;

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(3u64), Just(5)]
}

fn mat(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(lo..=hi, n), n)
}

fn to_mat(f: FieldSpec, rows: &[Vec<i64>]) -> Mat {
    Mat::from_rows(f, rows.len(), rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect())
}

/// 2x2 matrix of trace 0 or 1.
fn case_matrix() -> impl Strategy<Value = Mat> {
    (mat(2, -3, 3), 0i64..=1).prop_map(|(mut m, tr)| {
        m[1][1] = tr - m[0][0];
        to_mat(Q, &m)
    })
}

/// Rational solvable algebras of dimension at most 4 built by the family constructors.
fn solvable() -> impl Strategy<Value = LieAlgebra> {
    prop_oneof![
        case_matrix().prop_map(|m| case_i_ii(&m).unwrap().algebra),
        mat(2, -3, 3).prop_map(|m| case_v(&[to_mat(Q, &m)], DEFAULT_SAMPLES, &SearchBudget::default()).unwrap().algebra),
        mat(3, -2, 2).prop_map(|m| case_v(&[to_mat(Q, &m)], DEFAULT_SAMPLES, &SearchBudget::default()).unwrap().algebra),
        Just(heisenberg(Q)),
        Just(aff1(Q)),
        Just(LieAlgebra::abelian(Q, 2)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructions_and_reductions_satisfy_jacobi(l in solvable(), p in prime()) {
        prop_assert!(l.jacobi_residuals().is_empty());
        let lp = reduce_mod_p(&l, p).unwrap();
        prop_assert!(lp.jacobi_residuals().is_empty());
    }

    #[test]
    fn chain_bound_matches_enumeration(n in 2usize..=4, p in prime(), seed in mat(4, 0, 4)) {
        let f = FieldSpec::PrimeField(p);
        let rows: Vec<Vec<i64>> = seed.iter().take(n).map(|r| r[..n].to_vec()).collect();
        let a = to_mat(f, &rows);
        let TriState::True(b) = invariant_chain_bound(&a).unwrap() else {
            return Err(TestCaseError::fail("chain bound is exact over F_p"));
        };
        prop_assert_eq!(b.length, chain_length_bruteforce(&a).unwrap());
    }

    #[test]
    fn certified_cases_mod_p_have_depth_two(m in case_matrix(), p in prime()) {
        let inst = case_i_ii(&m.map_field(FieldSpec::PrimeField(p)).unwrap()).unwrap();
        if inst.validation.is_true() {
            prop_assert_eq!(depth_bruteforce(&inst.algebra).unwrap().depth, 2);
        }
    }

    #[test]
    fn solvable_classifier_matches_enumeration(l in solvable(), p in prime()) {
        let lp = reduce_mod_p(&l, p).unwrap();
        let brute = property_bruteforce(&lp, Property::Mna).unwrap().holds;
        if let Some(c) = solvable_mna_status(&lp, &SearchBudget::default()).unwrap().as_bool() {
            prop_assert_eq!(c, brute);
        }
    }

    #[test]
    fn depth_one_is_minimal_nonabelian(l in solvable(), p in prime()) {
        let lp = reduce_mod_p(&l, p).unwrap();
        let d = depth_bruteforce(&lp).unwrap().depth;
        prop_assert_eq!(property_bruteforce(&lp, Property::Mna).unwrap().holds, d == 1);
        prop_assert_eq!(lp.is_abelian(), d == 0);
        let plus = direct_sum(&lp, &LieAlgebra::abelian(lp.field(), 1)).unwrap();
        prop_assert!(depth_bruteforce(&plus).unwrap().depth >= d);
    }

    #[test]
    fn depth2_true_only_at_depth_two(m in case_matrix(), p in prime()) {
        let inst = case_i_ii(&m).unwrap();
        let survives = case_i_ii(&m.map_field(FieldSpec::PrimeField(p)).unwrap()).unwrap().validation.is_true();
        if survives && depth2_status(&inst.algebra, &SearchBudget::default()).unwrap().is_true() {
            prop_assert_eq!(depth_bruteforce(&reduce_mod_p(&inst.algebra, p).unwrap()).unwrap().depth, 2);
        }
    }

    #[test]
    fn sampled_fitting_never_beats_rank(l in solvable(), xs in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 4), 1..20)) {
        let r = rank(&l).unwrap().rank;
        for x in &xs {
            let v: Vec<_> = x[..l.dim()].iter().map(|&c| Q.from_i64(c)).collect();
            prop_assert!(fitting0_dim(&l, &v).unwrap() >= r);
        }
    }

    #[test]
    fn anisotropic_cartans_are_abelian(a in -9i64..=-1, b in -9i64..=9, x in [-3i64..=3, -3i64..=3, -3i64..=3]) {
        prop_assume!(b != 0);
        let (ar, br) = (BigRational::from_integer(a.into()), BigRational::from_integer(b.into()));
        prop_assume!(is_division(&ar, &br).unwrap().division);
        prop_assume!(x.iter().any(|&c| c != 0));
        let l = direct_sum(&pure_lie_algebra(&ar, &br).unwrap(), &LieAlgebra::abelian(Q, 1)).unwrap();
        prop_assert!(anisotropy_status(&l, &SearchBudget::default()).unwrap().is_true());
        let v: Vec<_> = x.iter().chain(&[1]).map(|&c| Q.from_i64(c)).collect();
        let h = cartan_from_regular(&l, &v).unwrap();
        for y in h.basis_vectors() {
            for z in h.basis_vectors() {
                prop_assert!(liealg::arith::vec_is_zero(&l.bracket(&y, &z)));
            }
        }
    }
}

#[test]
fn depth2_on_sl2_matches_oracle() {
    let l = sl2(Q);
    assert!(depth2_status(&l, &SearchBudget::default()).unwrap().is_true());
    for p in [3, 5, 7] {
        assert_eq!(depth_bruteforce(&reduce_mod_p(&l, p).unwrap()).unwrap().depth, 2);
    }
}
