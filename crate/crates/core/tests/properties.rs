use interlace_majorize::harness::{generate_trial_pair, GenSpec};
use interlace_majorize::homotopy::{default_tol, ConvexPath, StepClass};
use interlace_majorize::rational::{int, pow2, rat};
use interlace_majorize::{
    decompose, majorizes, necessary_condition, strong_majorization_certificate, strong_majorization_empirical, track,
    CertificateKind, Direction, PolyPair, Rational,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn generated(max_degree: usize, equalize: bool) -> impl Strategy<Value = PolyPair> {
    (2..=max_degree, any::<u64>(), 0u64..1000).prop_map(move |(n, seed, trial)| {
        generate_trial_pair(&GenSpec::new(n, seed).with_equalize_sums(equalize), trial).unwrap()
    })
}

fn unit_t() -> impl Strategy<Value = Rational> {
    (0i64..=4096).prop_map(|a| rat(a, 4096))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn roots_stay_in_their_intervals(pair in generated(10, false), ts in prop::collection::vec(unit_t(), 5)) {
        let path = ConvexPath::new(&pair).unwrap();
        let brackets = pair.pair_intervals();
        for t in ts {
            let roots = path.roots(&t, &default_tol()).unwrap();
            for (r, b) in roots.iter().zip(&brackets) {
                prop_assert!(b.contains_interval(r));
                prop_assert!(r.width() <= default_tol());
            }
        }
    }

    #[test]
    fn endpoints_are_the_input_roots(pair in generated(10, true)) {
        let path = ConvexPath::new(&pair).unwrap();
        let at0 = path.roots(&int(0), &default_tol()).unwrap();
        let at1 = path.roots(&int(1), &default_tol()).unwrap();
        for i in 0..pair.degree() {
            prop_assert!(at0[i].is_point() && at0[i].lo() == &pair.mu()[i]);
            prop_assert!(at1[i].is_point() && at1[i].lo() == &pair.lam()[i]);
        }
    }

    #[test]
    fn real_rooted_along_the_path(pair in generated(10, false), ts in prop::collection::vec(unit_t(), 100)) {
        // n sign changes over n disjoint intervals give n real roots
        let brackets = pair.pair_intervals();
        let path = ConvexPath::new(&pair).unwrap();
        for t in ts {
            let pt = path.poly_at(&t);
            for b in &brackets {
                let a = pt.evaluate(b.lo());
                let c = pt.evaluate(b.hi());
                prop_assert!(a.is_zero() || c.is_zero() || a.signum() != c.signum());
            }
        }
    }

    #[test]
    fn residue_sign_law(pair in generated(10, false)) {
        let rep = decompose(&pair, Direction::POverQ).unwrap();
        for (i, d) in rep.residues.iter().enumerate() {
            prop_assert_eq!(d.signum(), (&pair.mu()[i] - &pair.lam()[i]).signum());
        }
    }

    #[test]
    fn majorization_passes_necessary_condition(pair in generated(10, true)) {
        for p in [pair.clone(), pair.swapped()] {
            if majorizes(p.lam(), p.mu()).unwrap().holds {
                prop_assert_eq!(necessary_condition(&p).unwrap().kind, CertificateKind::NecessaryConditionPassed);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn nonnegative_tracked_sums_give_nonnegative_residues(pair in generated(6, true)) {
        let v = strong_majorization_empirical(&pair, 256, &default_tol()).unwrap();
        let cert = strong_majorization_certificate(&pair).unwrap();
        prop_assert_eq!(v.holds, cert.kind == CertificateKind::StrongMajorization);
        if v.holds {
            let qp = decompose(&pair, Direction::QOverP).unwrap();
            prop_assert!(qp.partial_sums.iter().all(|s| !s.is_negative()));
        }
    }

    #[test]
    fn strong_pairs_have_monotone_sub_paths(pair in generated(6, true), a in 0usize..128, b in 0usize..128) {
        prop_assume!(strong_majorization_certificate(&pair).unwrap().kind == CertificateKind::StrongMajorization);
        let bundle = track(&pair, 128, &default_tol()).unwrap();
        let (v, u) = (a.min(b), a.max(b));
        for step in &bundle.step_classes()[v..u] {
            prop_assert!(step.iter().all(|c| *c == StepClass::Increase));
        }
    }
}

#[test]
fn velocity_matches_finite_differences_at_high_degree() {
    let tol = pow2(-100);
    for (n, trial) in [(9, 0), (9, 1), (10, 0), (10, 1)] {
        let pair = generate_trial_pair(&GenSpec::new(n, 77), trial).unwrap();
        let path = ConvexPath::new(&pair).unwrap();
        let t = rat(3, 7);
        for i in [0, n / 2, n - 1] {
            let v = interlace_majorize::root_velocity(&pair, &t, i, &tol).unwrap();
            let h = pow2(-20);
            let up = path.root(&(&t + &h), i, &tol).unwrap();
            let down = path.root(&(&t - &h), i, &tol).unwrap();
            let diff = (up.midpoint() - down.midpoint()) / (int(2) * &h);
            // C·h² with a generous C, plus the enclosure contribution 2·tol/h
            let bound = int(1000) * &h * &h + int(2) * &tol / &h + &v.error;
            assert!((diff - &v.value).abs() <= bound, "degree {n}, root {i}");
        }
    }
}
