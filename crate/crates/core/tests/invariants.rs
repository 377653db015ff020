use proptest::prelude::*;

use gspin_strata::arith::fpoly::FpPoly;
use gspin_strata::arith::rat;
use gspin_strata::clifford::{self, cmul, CliffordAlgebra};
use gspin_strata::lattice::Lattice;
use gspin_strata::linalg::Mat;
use gspin_strata::polyparse::parse_poly;
use gspin_strata::qspace::{self, QuadSpace};
use gspin_strata::report::{canonical, report, verify};

fn unit_triangular(n: usize, below: &[i64]) -> Mat {
    let mut m = Mat::identity(n);
    let mut it = below.iter().cycle();
    for i in 0..n {
        for j in 0..i {
            m[(i, j)] = rat(*it.next().unwrap());
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariants_survive_basis_change(p in prop::sample::select(vec![3u64, 5]),
                                       d in prop::collection::vec(1i64..30, 2..6),
                                       low in prop::collection::vec(-4i64..5, 15),
                                       up in prop::collection::vec(-4i64..5, 15)) {
        let q = QuadSpace::diag_i64(p, &d).unwrap();
        let n = d.len();
        let u = unit_triangular(n, &low).mul(&unit_triangular(n, &up).transpose());
        let r = q.rebase(&u).unwrap();
        prop_assert_eq!(qspace::discriminant(&r).unwrap(), qspace::discriminant(&q).unwrap());
        prop_assert_eq!(qspace::hasse_invariant(&r).unwrap(), qspace::hasse_invariant(&q).unwrap());
        prop_assert!(qspace::isometric(&q, &r).unwrap());
    }

    #[test]
    fn poly_display_parses_back(p in prop::sample::select(vec![3u64, 5, 7]), c in prop::collection::vec(0i64..7, 1..8)) {
        let f = FpPoly::from_i64(p, &c);
        prop_assume!(!f.is_zero());
        prop_assert_eq!(parse_poly(&f.to_display(), p).unwrap(), f);
    }

    #[test]
    fn double_dual_is_identity(p in prop::sample::select(vec![3u64, 5]), d in prop::collection::vec(1i64..40, 2..5)) {
        let q = std::sync::Arc::new(QuadSpace::diag_i64(p, &d).unwrap());
        let l = Lattice::standard(q);
        prop_assert_eq!(l.dual().dual(), l.clone());
        prop_assert!(l.dual().contains(&l) == l.gram_valuations().iter().all(|&v| v >= 0));
    }

    #[test]
    fn two_vector_products_are_gspin(a in prop::collection::vec(-3i64..4, 4), b in prop::collection::vec(-3i64..4, 4)) {
        let alg = CliffordAlgebra::new(QuadSpace::diag_i64(3, &[3, 2, 1, 1]).unwrap()).unwrap();
        let v: Vec<_> = a.iter().map(|&x| rat(x)).collect();
        let w: Vec<_> = b.iter().map(|&x| rat(x)).collect();
        let (qv, qw) = (alg.space.q(&v), alg.space.q(&w));
        prop_assume!(qv != rat(0) && qw != rat(0));
        let g = cmul(&alg.vector(&v), &alg.vector(&w)).unwrap();
        let verdict = clifford::is_gspin(&g).unwrap();
        prop_assert!(verdict.member);
        prop_assert_eq!(verdict.similitude.unwrap(), qv * qw);
        let m = clifford::so_image(&g).unwrap();
        prop_assert_eq!(m.transpose().mul(&alg.space.gram).mul(&m), alg.space.gram.clone());
    }

    #[test]
    fn reports_are_canonical(x in -1000i64..1000, s in "[a-z]{0,8}") {
        let r = report("probe", serde_json::json!({"x": x, "s": s}), serde_json::json!([x, s]));
        prop_assert!(verify(&r));
        let back: serde_json::Value = serde_json::from_str(&canonical(&r)).unwrap();
        prop_assert_eq!(back, r);
    }
}
