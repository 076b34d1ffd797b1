use crate::algebra::LieAlgebra;
use crate::arith::FieldSpec;

fn labelled(l: LieAlgebra, names: &[&str]) -> LieAlgebra {
    l.with_labels(names.iter().map(|s| s.to_string()).collect())
        .expect("label count matches")
}

/// `sl(2)` on `(e, h, f)`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2(field: FieldSpec) -> LieAlgebra {
    let l = LieAlgebra::from_i64(field, 3, &[(0, 1, &[(0, -2)]), (0, 2, &[(1, 1)]), (1, 2, &[(2, -2)])])
        .expect("sl(2) satisfies Jacobi");
    labelled(l, &["e", "h", "f"])
}

/// The Heisenberg algebra on `(x, y, z)` with `[x,y] = z`.
pub fn heisenberg(field: FieldSpec) -> LieAlgebra {
    let l = LieAlgebra::from_i64(field, 3, &[(0, 1, &[(2, 1)])]).expect("Heisenberg satisfies Jacobi");
    labelled(l, &["x", "y", "z"])
}

/// The nonabelian 2-dimensional algebra on `(t, x)` with `[t,x] = x`.
pub fn aff1(field: FieldSpec) -> LieAlgebra {
    let l = LieAlgebra::from_i64(field, 2, &[(0, 1, &[(1, 1)])]).expect("two-dimensional");
    labelled(l, &["t", "x"])
}

pub struct Prototypes {
    pub sl2: LieAlgebra,
    pub heisenberg: LieAlgebra,
    pub aff1: LieAlgebra,
}

pub fn prototypes(field: FieldSpec) -> Prototypes {
    Prototypes {
        sl2: sl2(field),
        heisenberg: heisenberg(field),
        aff1: aff1(field),
    }
}
