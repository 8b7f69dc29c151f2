use latpoly::constructions::{
    basic_simplex, exceptional_2d2, lawrence_heights, lawrence_prism, pyramid, pyramid_k,
    random_polytope,
};
use latpoly::ehrhart::{degree, degree_via_interior, h_star, h_star_in_affine_hull};
use latpoly::equivalence::{equivalent, fingerprint, random_unimodular};
use latpoly::lattice_count::{
    count_boundary_points_in_dilate, count_interior_points_in_dilate, count_points_in_dilate,
    ehrhart_vector_with_interior,
};
use latpoly::polytope::binomial;
use latpoly::{LatticePoint, LatticePolytope};
use num_bigint::BigInt;
use proptest::prelude::*;

fn polytope() -> impl Strategy<Value = LatticePolytope> {
    (2usize..=3, 1u64..=3, 0u64..u64::MAX).prop_flat_map(|(n, b, seed)| {
        (n + 1..=8)
            .prop_map(move |m| random_polytope(n, b, m, seed).expect("full-dimensional sample"))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hull_is_idempotent(p in polytope()) {
        let again = LatticePolytope::hull(p.vertices()).unwrap();
        prop_assert_eq!(again.vertices(), p.vertices());
    }

    #[test]
    fn input_points_satisfy_every_facet(
        n in 2usize..=3,
        raw in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 4..12),
    ) {
        let pts: Vec<LatticePoint> = raw.iter().map(|c| LatticePoint::from_i64s(&c[..n])).collect();
        let p = LatticePolytope::hull(&pts).unwrap();
        prop_assume!(p.is_full_dimensional());
        for f in p.facets().unwrap() {
            for x in &pts {
                prop_assert!(f.slack(x) <= BigInt::from(0));
            }
        }
        prop_assert!(p.vertices().iter().all(|v| pts.contains(v)));
    }

    #[test]
    fn unimodular_images_share_all_invariants(p in polytope(), seed in any::<u64>()) {
        let u = random_unimodular(p.ambient_dim(), seed);
        let q = u.apply_polytope(&p);
        prop_assert_eq!(q.normalized_volume().unwrap(), p.normalized_volume().unwrap());
        prop_assert_eq!(h_star(&q).unwrap(), h_star(&p).unwrap());
        let n = p.ambient_dim() as u64;
        prop_assert_eq!(
            count_interior_points_in_dilate(&q, n - 1).unwrap(),
            count_interior_points_in_dilate(&p, n - 1).unwrap()
        );
        prop_assert_eq!(fingerprint(&q).unwrap(), fingerprint(&p).unwrap());

        let w = equivalent(&p, &q).unwrap();
        prop_assert!(w.is_some());
        let image = w.unwrap().apply_polytope(&p);
        prop_assert_eq!(image.vertices(), q.vertices());
        let back = equivalent(&q, &p).unwrap();
        prop_assert!(back.is_some());
        let image = back.unwrap().apply_polytope(&q);
        prop_assert_eq!(image.vertices(), p.vertices());
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric(p in polytope(), q in polytope()) {
        prop_assert!(equivalent(&p, &p).unwrap().is_some());
        if p.ambient_dim() == q.ambient_dim() {
            let pq = equivalent(&p, &q).unwrap();
            let qp = equivalent(&q, &p).unwrap();
            prop_assert_eq!(pq.is_some(), qp.is_some());
            if let Some(w) = pq {
                let image = w.apply_polytope(&p);
                prop_assert_eq!(image.vertices(), q.vertices());
                prop_assert_eq!(fingerprint(&p).unwrap(), fingerprint(&q).unwrap());
            }
        }
    }

    #[test]
    fn h_star_sums_to_the_triangulated_volume(p in polytope()) {
        prop_assert_eq!(h_star(&p).unwrap().volume(), p.normalized_volume().unwrap());
    }

    #[test]
    fn degree_agrees_with_first_interior_dilate(p in polytope()) {
        prop_assert_eq!(degree(&p).unwrap(), degree_via_interior(&p).unwrap());
    }

    #[test]
    fn reciprocity_and_boundary_counts(p in polytope()) {
        let ev = ehrhart_vector_with_interior(&p).unwrap();
        prop_assert_eq!(ev.reciprocity_holds(), Some(true));
        for k in 1..=p.ambient_dim() as u64 {
            prop_assert_eq!(
                count_boundary_points_in_dilate(&p, k).unwrap() + count_interior_points_in_dilate(&p, k).unwrap(),
                count_points_in_dilate(&p, k).unwrap()
            );
        }
    }

    #[test]
    fn pyramid_preserves_h_star(p in polytope()) {
        let h = h_star(&p).unwrap();
        let hp = h_star(&pyramid(&p).unwrap()).unwrap();
        prop_assert_eq!(hp.trimmed(), h.trimmed());
        prop_assert_eq!(hp.coeffs().len(), h.coeffs().len() + 1);
    }

    #[test]
    fn facets_never_exceed_the_degree(p in polytope()) {
        let d = degree(&p).unwrap();
        let n = p.ambient_dim();
        for f in p.faces().unwrap().iter().filter(|f| f.dim + 1 == n) {
            let facet = LatticePolytope::hull(&p.face_vertices(f)).unwrap();
            prop_assert!(h_star_in_affine_hull(&facet).unwrap().degree() <= d);
        }
    }

    #[test]
    fn lawrence_prisms_have_small_degree(heights in prop::collection::vec(0u64..=3, 2..=4)) {
        prop_assume!(heights.iter().any(|&h| h > 0));
        let p = lawrence_prism(&heights).unwrap();
        prop_assert_eq!(p.normalized_volume().unwrap(), BigInt::from(heights.iter().sum::<u64>()));
        prop_assert!(degree(&p).unwrap() <= 1);
        let mut rev = heights.clone();
        rev.reverse();
        prop_assert!(equivalent(&p, &lawrence_prism(&rev).unwrap()).unwrap().is_some());
    }
}

#[test]
fn simplex_f_vectors_are_binomial() {
    for n in 1..=5u64 {
        let f = basic_simplex(n as usize).unwrap().f_vector().unwrap();
        let expected: Vec<usize> = (1..=n)
            .map(|k| binomial(n + 1, k).try_into().unwrap())
            .collect();
        assert_eq!(f, expected, "n = {n}");
    }
}

/// Degree at most one in dimension 2 or 3 means a pyramid over 2Δ₂ or a
/// Lawrence prism whose heights sum to the volume.
#[test]
fn degree_at_most_one_classification() {
    let mut seen = 0;
    for seed in 0..400u64 {
        let n = 2 + (seed % 2) as usize;
        let p = random_polytope(n, 2, n + 1 + (seed % 4) as usize, seed).unwrap();
        if degree(&p).unwrap() > 1 {
            continue;
        }
        seen += 1;
        let vol: u64 = p.normalized_volume().unwrap().try_into().unwrap();
        let exceptional = equivalent(&p, &pyramid_k(&exceptional_2d2(), n - 2).unwrap())
            .unwrap()
            .is_some();
        let lawrence = lawrence_heights(n, vol).iter().any(|h| {
            equivalent(&p, &lawrence_prism(h).unwrap())
                .unwrap()
                .is_some()
        });
        assert!(exceptional || lawrence, "unclassified: {:?}", p.vertices());
    }
    assert!(seen > 20);
}
