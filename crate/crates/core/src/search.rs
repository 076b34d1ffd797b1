//! Deterministic enumeration of rational vectors by increasing height.
//!
//! Height of a vector is the largest `max(|num|, den)` over its coordinates. Within one
//! height, vectors are ordered by support size, then support (lexicographic), then the
//! coordinate values in the order of [`values_up_to`]. Every search in the crate walks
//! this order, so the reported witness is always the first hit.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use crate::arith::{FieldSpec, Scalar, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub max_height: u64,
    pub max_candidates: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_height: 10,
            max_candidates: 10_000,
        }
    }
}

impl SearchBudget {
    pub fn new(max_height: u64, max_candidates: u64) -> Self {
        SearchBudget {
            max_height,
            max_candidates,
        }
    }

    /// A smaller budget for nested searches.
    pub fn nested(&self, max_candidates: u64) -> Self {
        SearchBudget {
            max_height: self.max_height.min(3),
            max_candidates: self.max_candidates.min(max_candidates),
        }
    }
}

/// Nonzero rationals of height at most `h` with their heights, sorted by
/// `(height, denominator, |numerator|, positive first)`.
pub fn values_up_to(h: u64) -> Vec<(u64, BigRational)> {
    let mut out = Vec::new();
    for num in 1..=h {
        for den in 1..=h {
            if num.gcd(&den) != 1 {
                continue;
            }
            let height = num.max(den);
            for sign in [1i64, -1] {
                out.push((height, den, num, sign));
            }
        }
    }
    out.sort_by_key(|&(height, den, num, sign)| (height, den, num, -sign));
    out.into_iter()
        .map(|(height, den, num, sign)| {
            (
                height,
                BigRational::new(BigInt::from(num as i64 * sign), BigInt::from(den)),
            )
        })
        .collect()
}

/// All nonzero vectors of height `1..=max_height` in the canonical order, with heights.
/// Over `F_p` every vector appears once, at the height of its first preimage.
pub fn height_ordered(field: FieldSpec, dim: usize, max_height: u64) -> impl Iterator<Item = (u64, Vector)> {
    (1..=max_height).flat_map(move |h| {
        // Over F_p each residue keeps only its first (lowest-height) preimage.
        let mut seen = std::collections::HashSet::new();
        let vals: Vec<(u64, Scalar)> = values_up_to(h)
            .into_iter()
            .filter_map(|(ht, q)| field.from_rational(&q).ok().map(|s| (ht, s)))
            .filter(|(_, s)| !s.is_zero() && seen.insert(s.clone()))
            .collect();
        (1..=dim).flat_map(move |s| {
            let vals = vals.clone();
            (0..dim).combinations(s).flat_map(move |support| {
                let vals = vals.clone();
                std::iter::repeat_n(vals, support.len())
                    .multi_cartesian_product()
                    .filter(move |choice| choice.iter().any(|(ht, _)| *ht == h))
                    .map(move |choice| {
                        let mut v = vec![field.zero(); dim];
                        for (&i, (_, c)) in support.iter().zip(choice) {
                            v[i] = c;
                        }
                        (h, v)
                    })
            })
        })
    })
}

/// Vectors inside a subspace: height-ordered coordinate vectors pushed through `basis`.
pub fn height_ordered_in(
    field: FieldSpec,
    basis: Vec<Vector>,
    max_height: u64,
) -> impl Iterator<Item = (u64, Vector)> {
    let k = basis.len();
    let n = basis.first().map_or(0, Vec::len);
    height_ordered(field, k, max_height).map(move |(h, c)| {
        let mut v = vec![field.zero(); n];
        for (ci, b) in c.iter().zip(&basis) {
            if !ci.is_zero() {
                for (vj, bj) in v.iter_mut().zip(b) {
                    *vj = &*vj + &(ci * bj);
                }
            }
        }
        (h, v)
    })
}

/// Index pairs `(i, j)`, `i < j`, ordered by `j` then `i`, so early vectors pair first.
pub fn pair_indices(count: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..count).flat_map(|j| (0..j).map(move |i| (i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{qf, qvec};

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn prime_field_vectors_once() {
        let f3 = FieldSpec::prime(3).unwrap();
        let vs: Vec<Vector> = height_ordered(f3, 3, 10).map(|(_, v)| v).collect();
        assert_eq!(vs.len(), 26);
        assert_eq!(vs.iter().collect::<std::collections::HashSet<_>>().len(), 26);
    }

    #[test]
    fn value_order() {
        let v: Vec<String> = values_up_to(2).iter().map(|(_, q)| q.to_string()).collect();
        assert_eq!(v, ["1", "-1", "2", "-2", "1/2", "-1/2"]);
    }

    #[test]
    fn first_vectors() {
        let first: Vec<Vector> = height_ordered(Q, 3, 2).take(7).map(|(_, v)| v).collect();
        assert_eq!(first[0], qvec(&[1, 0, 0]));
        assert_eq!(first[1], qvec(&[-1, 0, 0]));
        assert_eq!(first[2], qvec(&[0, 1, 0]));
        assert_eq!(first[6], qvec(&[1, 1, 0]));
    }

    #[test]
    fn exact_height_partition() {
        let all: Vec<(u64, Vector)> = height_ordered(Q, 2, 2).collect();
        // height 1: 2*2 + 4 = 8, height 2: values of height <= 2 are 6, so 4*2 + (36 - 4)
        assert_eq!(all.iter().filter(|(h, _)| *h == 1).count(), 8);
        assert_eq!(all.iter().filter(|(h, _)| *h == 2).count(), 8 + 32);
        assert!(all.iter().any(|(_, v)| v == &vec![qf(1, 2), qf(-1, 1)]));
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }
}
