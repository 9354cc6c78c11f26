//! The long-root cone: the closure of the scalar multiples of the highest
//! root vector under every exponentiated root generator.
//!
//! Over a small prime field this is a finite, exactly enumerable set.  It
//! is conical, stable under every `adexp`, consists of square-zero points
//! of the p-power map, and away from small characteristic coincides with
//! the set of nonzero x with rank (ad x)² = 1 (plus zero).  Enumeration is
//! a plain breadth-first closure with canonical deduplication, so the
//! resulting set is independent of traversal order.

use crate::algebra::{Algebra, GVec};
use crate::error::LieError;
use crate::fp::RankAccumulator;
use crate::grading::Grading;
use crate::Result;
use std::collections::HashSet;

/// Hard ceiling on enumerated points before reporting a resource error.
pub const DEFAULT_CONE_BUDGET: usize = 10_000_000;

/// The enumerated cone: deduplicated points (zero included) plus the
/// generator set used for the closure.
pub struct ConePoints {
    p: u64,
    dim: usize,
    points: Vec<GVec>,
    index: HashSet<Vec<u64>>,
    generators: Vec<(usize, u64)>,
}

impl ConePoints {
    /// Number of points, zero included.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points in canonical (lexicographic coefficient) order.
    pub fn points(&self) -> &[GVec] {
        &self.points
    }

    pub fn contains(&self, x: &GVec) -> bool {
        x.modulus() == self.p
            && x.dim() == self.dim
            && self.index.contains(x.coeffs())
    }

    /// The (root, t) pairs the closure ran over.
    pub fn generators(&self) -> &[(usize, u64)] {
        &self.generators
    }
}

/// Enumerate the cone with the default point budget.
pub fn enumerate_cone(a: &Algebra) -> Result<ConePoints> {
    enumerate_cone_with_budget(a, DEFAULT_CONE_BUDGET)
}

/// Breadth-first closure of `{s·e_θ : s ≠ 0} ∪ {0}` under all
/// `adexp(root, t)`.  Errors with a resource report if more than `budget`
/// points appear.
pub fn enumerate_cone_with_budget(a: &Algebra, budget: usize) -> Result<ConePoints> {
    let p = a.p().get();
    let top = a.rs().highest_root();
    let generators: Vec<(usize, u64)> = (0..a.num_roots())
        .flat_map(|r| (1..p).map(move |t| (r, t)))
        .collect();
    let mut index: HashSet<Vec<u64>> = HashSet::new();
    let mut frontier: Vec<GVec> = Vec::new();
    index.insert(a.zero().coeffs().to_vec());
    for s in 1..p {
        let v = a.e(top).scale(s);
        index.insert(v.coeffs().to_vec());
        frontier.push(v);
    }
    while let Some(x) = frontier.pop() {
        for &(r, t) in &generators {
            let y = a.adexp(r, t, &x);
            if index.insert(y.coeffs().to_vec()) {
                if index.len() > budget {
                    return Err(LieError::BudgetExceeded {
                        context: "cone enumeration".into(),
                        budget: budget as u64,
                    });
                }
                frontier.push(y);
            }
        }
    }
    let mut coeffs: Vec<Vec<u64>> = index.iter().cloned().collect();
    coeffs.sort_unstable();
    let points = coeffs
        .into_iter()
        .map(|c| GVec::new(a.p(), c))
        .collect();
    Ok(ConePoints { p, dim: a.dim(), points, index, generators })
}

/// Exact membership of `x` in the enumerated cone.
pub fn is_long_root_element(a: &Algebra, x: &GVec, cone: &ConePoints) -> bool {
    debug_assert_eq!(x.modulus(), a.p().get());
    cone.contains(x)
}

/// The square-of-ad rank criterion: rank (ad x)² = 1.  Away from small
/// characteristic this characterises the nonzero cone points; here it is
/// kept as an independent cross-check only.
pub fn rank_square_criterion(a: &Algebra, x: &GVec) -> bool {
    let ad = a.ad(x);
    ad.mul(&ad).expect("square dimensions agree").rank() == 1
}

/// Rank of the matrix whose rows are all enumerated points.
pub fn spanning_rank(a: &Algebra, cone: &ConePoints) -> usize {
    let mut acc = RankAccumulator::new(a.p(), a.dim());
    for x in cone.points() {
        acc.insert(x.coeffs());
    }
    acc.rank()
}

/// The slice of the cone lying entirely in degree `i` of a grading.
/// Zero lies in every slice.
pub fn cone_in_degree(cone: &ConePoints, grading: &Grading, i: i64) -> Vec<GVec> {
    cone.points()
        .iter()
        .filter(|x| x.support().iter().all(|&k| grading.degree_of_basis(k) == i))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::fp::Prime;
    use crate::grading::{cochar_grading, Cocharacter};
    use crate::roots::RootKind;

    fn alg(kind: RootKind, rank: usize, p: u64) -> Algebra {
        build_algebra(kind, rank, Prime::new(p).unwrap()).unwrap()
    }

    /// Iterate all coefficient vectors of the given length mod p.
    fn all_vectors(p: u64, dim: usize) -> impl Iterator<Item = Vec<u64>> {
        let total = (p as u128).pow(dim as u32);
        (0..total).map(move |mut n| {
            let mut v = vec![0u64; dim];
            for slot in v.iter_mut() {
                *slot = (n % p as u128) as u64;
                n /= p as u128;
            }
            v
        })
    }

    #[test]
    fn sl2_f3_cone_matches_rank_one_nilpotents() {
        let a = alg(RootKind::A, 1, 3);
        let cone = enumerate_cone(&a).unwrap();
        // Oracle first: scan all 27 vectors for p-power zero and a rank-1
        // defining matrix.
        let mut oracle: Vec<Vec<u64>> = Vec::new();
        for c in all_vectors(3, a.dim()) {
            let x = GVec::new(a.p(), c.clone());
            if x.is_zero() {
                continue;
            }
            let m = a.defining_matrix(&x).unwrap();
            if m.rank() == 1 && a.p_power(&x).unwrap().is_zero() {
                oracle.push(c);
            }
        }
        assert_eq!(oracle.len(), 8);
        assert_eq!(cone.len(), 9); // 8 nonzero points plus zero
        for c in oracle {
            assert!(cone.contains(&GVec::new(a.p(), c)));
        }
    }

    #[test]
    fn c2_f3_cone_matches_full_scan_oracle() {
        let a = alg(RootKind::C, 2, 3);
        let cone = enumerate_cone(&a).unwrap();
        // Oracle: full scan of all 3^10 elements for rank (ad x)² = 1.
        let mut count = 0usize;
        for c in all_vectors(3, a.dim()) {
            let x = GVec::new(a.p(), c);
            if x.is_zero() {
                continue;
            }
            if rank_square_criterion(&a, &x) {
                count += 1;
                assert!(cone.contains(&x));
            }
        }
        assert_eq!(cone.len(), count + 1);
    }

    #[test]
    fn cone_contains_zero_and_lowest_root_vector() {
        let a = alg(RootKind::C, 2, 3);
        let cone = enumerate_cone(&a).unwrap();
        let rs = a.rs();
        assert!(cone.contains(&a.zero()));
        assert!(cone.contains(&a.e(rs.highest_root())));
        assert!(cone.contains(&a.e(rs.neg(rs.highest_root()))));
    }

    #[test]
    fn cone_is_stable_and_conical_and_nil() {
        let a = alg(RootKind::C, 2, 3);
        let p = a.p().get();
        let cone = enumerate_cone(&a).unwrap();
        for x in cone.points() {
            for s in 1..p {
                assert!(cone.contains(&x.scale(s)));
            }
            for r in 0..a.num_roots() {
                for t in 1..p {
                    assert!(cone.contains(&a.adexp(r, t, x)));
                }
            }
            if !x.is_zero() {
                assert!(a.p_power(x).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn rank_criterion_holds_on_every_point_at_p5() {
        for (kind, rank) in [(RootKind::C, 2), (RootKind::A, 2), (RootKind::G, 2)] {
            let a = alg(kind, rank, 5);
            let cone = enumerate_cone(&a).unwrap();
            for x in cone.points() {
                if !x.is_zero() {
                    assert!(rank_square_criterion(&a, x), "{kind:?}{rank}");
                }
            }
        }
    }

    #[test]
    fn a2_f5_converse_of_rank_criterion_by_full_scan() {
        // Full scan of sl3 over F5: every rank-criterion element already
        // lies in the enumerated cone, so the criterion is exactly
        // membership there.
        let a = alg(RootKind::A, 2, 5);
        let cone = enumerate_cone(&a).unwrap();
        let mut count = 0usize;
        for c in all_vectors(5, a.dim()) {
            let x = GVec::new(a.p(), c);
            if !x.is_zero() && rank_square_criterion(&a, &x) {
                assert!(cone.contains(&x));
                count += 1;
            }
        }
        assert_eq!(cone.len(), count + 1);
    }

    #[test]
    fn non_members_rejected() {
        let a = alg(RootKind::C, 2, 5);
        let rs = a.rs();
        let cone = enumerate_cone(&a).unwrap();
        // A short root vector is nilpotent but not a long-root element.
        let short = (0..rs.len()).find(|&r| !rs.is_long(r)).unwrap();
        assert!(!is_long_root_element(&a, &a.e(short), &cone));
        assert!(!rank_square_criterion(&a, &a.e(short)));
        // A toral element is not one either.
        assert!(!is_long_root_element(&a, &a.h(0), &cone));
        assert!(!rank_square_criterion(&a, &a.h(0)));
        // Long root vectors are.
        assert!(is_long_root_element(&a, &a.e(rs.highest_root()), &cone));
    }

    #[test]
    fn expected_sizes_and_spanning_ranks() {
        let a = alg(RootKind::C, 2, 3);
        let cone = enumerate_cone(&a).unwrap();
        assert_eq!(spanning_rank(&a, &cone), 10);

        let a = alg(RootKind::C, 2, 2);
        let cone = enumerate_cone(&a).unwrap();
        assert_eq!(spanning_rank(&a, &cone), 10);

        let a = alg(RootKind::A, 2, 5);
        let cone = enumerate_cone(&a).unwrap();
        assert_eq!(spanning_rank(&a, &cone), 8);
    }

    #[test]
    fn budget_exhaustion_reports_resource_error() {
        let a = alg(RootKind::A, 1, 3);
        let err = enumerate_cone_with_budget(&a, 3);
        assert!(matches!(err, Err(LieError::BudgetExceeded { .. })));
    }

    #[test]
    fn degree_slices() {
        let a = alg(RootKind::C, 2, 3);
        let rs = a.rs();
        let cone = enumerate_cone(&a).unwrap();
        let c = Cocharacter::from_root(rs, rs.highest_root());
        let g = cochar_grading(&a, &c);
        // Bottom degree: exactly the scalar multiples of the lowest root
        // vector, plus zero.
        let bottom = cone_in_degree(&cone, &g, -2);
        assert_eq!(bottom.len(), 3);
        let low = a.e(rs.neg(rs.highest_root()));
        assert!(bottom.iter().any(|x| x.is_zero()));
        for s in 1..3 {
            assert!(bottom.contains(&low.scale(s)));
        }
        // Degree 0 contains the scalar multiples of both weight-0 long
        // root vectors.
        let zero_slice = cone_in_degree(&cone, &g, 0);
        let r02 = rs.index_of(&[0, 2]).unwrap();
        for s in 1..3 {
            assert!(zero_slice.contains(&a.e(r02).scale(s)));
            assert!(zero_slice.contains(&a.e(rs.neg(r02)).scale(s)));
        }
        for x in &zero_slice {
            assert!(x.support().iter().all(|&k| g.degree_of_basis(k) == 0));
        }
        // Trivial grading: everything sits in degree 0, other slices are
        // just {0}.
        let triv = cochar_grading(&a, &Cocharacter::new(rs, vec![0, 0]).unwrap());
        assert_eq!(cone_in_degree(&cone, &triv, 0).len(), cone.len());
        let off = cone_in_degree(&cone, &triv, 1);
        assert_eq!(off.len(), 1);
        assert!(off[0].is_zero());
    }
}
