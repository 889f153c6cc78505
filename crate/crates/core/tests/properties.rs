use pgcover_core::combinatorics::{binomial, colex_rank, colex_unrank};
use pgcover_core::covers::{self, PartialCover};
use pgcover_core::projective::{theta, Subspace};
use pgcover_core::{FieldSpec, Geometry, ProjPoint};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn geometry(n: usize, q: u32) -> Geometry {
    Geometry::with_order(n, q).unwrap()
}

fn spaces() -> impl Strategy<Value = (usize, u32)> {
    prop_oneof![
        Just((2, 2)),
        Just((2, 3)),
        Just((2, 4)),
        Just((2, 5)),
        Just((2, 7)),
        Just((2, 8)),
        Just((3, 2)),
        Just((3, 3)),
        Just((4, 2)),
    ]
}

/// A geometry and a random hyperplane subset.
fn cover_case() -> impl Strategy<Value = (usize, u32, Vec<usize>)> {
    spaces().prop_flat_map(|(n, q)| {
        let t = theta(n as u32, q as u64) as usize;
        (Just(n), Just(q), subsequence((0..t).collect::<Vec<_>>(), 0..=t.min(16)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_inverse_and_pow(q in prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49]), r in 1u32..1000) {
        let f = FieldSpec::with_order(q).unwrap();
        let a = f.element(r % (q - 1) + 1).unwrap();
        let inv = f.inv(a).unwrap();
        prop_assert_eq!(f.mul(a, inv), pgcover_core::FieldElement::ONE);
        prop_assert_eq!(f.pow(a, -1).unwrap(), inv);
        prop_assert_eq!(f.pow(a, q as i64).unwrap(), a);
    }

    #[test]
    fn double_counting((n, q, idx) in cover_case()) {
        let g = geometry(n, q);
        let s = PartialCover::new(&g, idx).unwrap();
        let total: u64 = covers::multiplicities(&g, &s).iter().map(|&m| m as u64).sum();
        prop_assert_eq!(total, s.len() as u64 * theta(n as u32 - 1, q as u64));
    }

    #[test]
    fn dualize_is_an_involution((n, q, idx) in cover_case()) {
        let g = geometry(n, q);
        let s = PartialCover::new(&g, idx).unwrap();
        let b = covers::dualize_cover(&s);
        prop_assert_eq!(covers::dualize_points(&b), s.clone());
        prop_assert_eq!(covers::is_cover(&g, &s).unwrap(), covers::is_blocking_set(&g, &b).unwrap());
    }

    #[test]
    fn holes_shrink_as_hyperplanes_are_added((n, q, idx) in cover_case(), extra in any::<prop::sample::Index>()) {
        let g = geometry(n, q);
        let s = PartialCover::new(&g, idx).unwrap();
        let h = extra.index(g.theta());
        prop_assume!(!s.contains(h));
        let before = covers::holes(&g, &s).unwrap();
        let after = covers::holes(&g, &s.with(h).unwrap()).unwrap();
        prop_assert!(after.is_subset_of(&before));
        let on_h = before.iter().filter(|&p| g.incident(p, h)).count();
        prop_assert_eq!(after.len() + on_h, before.len());
    }

    #[test]
    fn reduction_is_minimal_subcover((n, q, idx) in cover_case()) {
        let g = geometry(n, q);
        let s = PartialCover::new(&g, idx).unwrap();
        prop_assume!(covers::is_cover(&g, &s).unwrap());
        let r = covers::minimal_reduce(&g, &s).unwrap();
        prop_assert!(r.cover.is_subset_of(&s));
        prop_assert!(covers::is_minimal_cover(&g, &r.cover).unwrap());
        prop_assert_eq!(r.cover.len() + r.removed.len(), s.len());
    }

    #[test]
    fn line_through_two_points_is_symmetric((n, q) in spaces(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let g = geometry(n, q);
        let (i, j) = (a.index(g.theta()), b.index(g.theta()));
        prop_assume!(i != j);
        let l1 = g.line_indices(i, j).unwrap();
        let l2 = g.line_indices(j, i).unwrap();
        prop_assert_eq!(&l1, &l2);
        prop_assert_eq!(l1.len(), q as usize + 1);
        prop_assert!(l1.contains(&i) && l1.contains(&j));
    }

    #[test]
    fn annihilator_is_an_involution((n, q) in spaces(), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..4)) {
        let g = geometry(n, q);
        let pts: Vec<ProjPoint> = picks.iter().map(|p| g.point(p.index(g.theta()))).collect();
        let s = if pts.is_empty() { Subspace::empty(n) } else { Subspace::span_points(g.field(), &pts).unwrap() };
        let ann = s.annihilator(g.field());
        prop_assert_eq!(ann.dim() + s.dim(), n as isize - 1);
        prop_assert_eq!(ann.annihilator(g.field()), s);
    }

    #[test]
    fn colex_rank_round_trips(n in 1usize..40, k in 0usize..8, r in any::<u64>()) {
        prop_assume!(k <= n);
        let total = binomial(n as u64, k as u64);
        let rank = r as u128 % total;
        let mut c = vec![0; k];
        colex_unrank(rank, &mut c);
        prop_assert!(c.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(c.iter().all(|&x| x < n));
        prop_assert_eq!(colex_rank(&c), rank);
    }
}
