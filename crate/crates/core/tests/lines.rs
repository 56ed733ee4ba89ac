use std::time::Instant;

use drackn::algebra::{ratio, rat, CycNum, Matrix, QuadraticSurd, RootOrder};
use drackn::constructions::thas_somma;
use drackn::covers::{drackn_verify, small_params, verify_graph, ArcMatrix};
use drackn::groups::AbelianGroup;
use drackn::lines::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn nine_three_three() -> ArcMatrix {
    thas_somma(3, 2, 1, None).unwrap()
}

fn tight_iff_bound(lines: &LineSet) {
    let on_bound = *lines.alpha_sq() == relative_bound(lines.n(), lines.d()).unwrap();
    assert_eq!(tight_frame_check(lines), on_bound);
}

#[test]
fn symplectic_cover_gives_maximal_complex_lines() {
    let f = nine_three_three();
    for chi in 1..3 {
        let (s, tau_set, theta_set) = cover_to_lines(&f, chi).unwrap();
        assert_eq!(s.n(), 9);
        assert_eq!((theta_set.d(), tau_set.d()), (3, 6));
        assert_eq!(theta_set.alpha_sq(), &ratio(1, 4));
        assert_eq!(tau_set.alpha_sq(), &ratio(1, 16));
        assert!(tight_frame_check(&theta_set) && tight_frame_check(&tau_set));
        assert_eq!(BigInt::from(9), absolute_bound(theta_set.d(), LineField::Complex));
        tight_iff_bound(&theta_set);
        tight_iff_bound(&tau_set);
        match theta_set.gram() {
            Gram::Cyclotomic(g) => {
                let three = CycNum::from_rational(RootOrder::new(3).unwrap(), rat(3));
                assert_eq!(g.mul(g).unwrap(), g.scale(&three));
            }
            Gram::Extended(_) => panic!("expected entries in Q(ζ_3)"),
        }
    }
    assert_eq!(cover_to_lines(&f, 0).unwrap_err(), LinesError::TrivialCharacter);
    assert_eq!(cover_to_lines(&f, 3).unwrap_err(), LinesError::CharacterOutOfRange(3));
}

#[test]
fn round_trip_through_lines() {
    let f = nine_three_three();
    let original = drackn_verify(&f).unwrap();
    let (s, _, _) = cover_to_lines(&f, 1).unwrap();
    let back = lines_to_cover(&s, 3).unwrap();
    assert_eq!(back.c, rat(3));
    assert_eq!(back.d, 6);
    assert_eq!(small_params(&back.certificate), (9, 3, 3));
    assert_eq!(back.certificate.spectrum(), original.spectrum());
    assert_eq!(lines_to_cover(&s, 4).unwrap_err(), LinesError::NotPrime(4));
    assert!(matches!(lines_to_cover(&s, 2), Err(LinesError::EntryNotRoot { .. })));
}

#[test]
fn golden_ratio_field_stays_cyclotomic() {
    // (25,5,5) has θ = 4, τ = -6; every character is rational-eigenvalued,
    // so both Gram matrices live in Q(ζ_5).
    let f = thas_somma(5, 2, 1, None).unwrap();
    let (_, tau_set, theta_set) = cover_to_lines(&f, 1).unwrap();
    assert_eq!((theta_set.d(), tau_set.d()), (10, 15));
    assert!(tight_frame_check(&theta_set));
    assert!(matches!(theta_set.gram(), Gram::Cyclotomic(_)));
}

#[test]
fn conference_matrix_doubles_to_icosahedron() {
    let start = Instant::now();
    let s = conference_search(6, 0).unwrap();
    assert!(start.elapsed().as_secs_f64() < 5.0);
    let sq = s.matrix().mul(s.matrix()).unwrap();
    let five = CycNum::from_rational(RootOrder::new(2).unwrap(), rat(5));
    assert_eq!(sq, Matrix::identity(6, &five).scale(&five));

    let spectrum = seidel_spectrum(&s).unwrap();
    let root5 = QuadraticSurd::sqrt(BigInt::from(5));
    assert_eq!((spectrum.theta.clone(), spectrum.tau.clone()), (root5.clone(), -root5.clone()));
    let (a, b) = seidel_to_linesets(&s).unwrap();
    for lines in [&a, &b] {
        assert_eq!((lines.n(), lines.d()), (6, 3));
        assert_eq!(lines.alpha_sq(), &relative_bound(6, 3).unwrap());
        assert!(tight_frame_check(lines));
    }

    let cover = double_real(&s).unwrap();
    assert_eq!(cover.graph().vertex_count(), 12);
    let cert = verify_graph(&cover).unwrap();
    assert_eq!(small_params(&cert), (6, 2, 2));
    assert_eq!(cert.params().theta(), &root5);
    assert_eq!(cert.params().delta(), &BigInt::from(0));

    let back = lines_to_cover(&s, 2).unwrap();
    assert_eq!(back.c, rat(2));
    let (_, tau_set, theta_set) = cover_to_lines(&back.cover, 1).unwrap();
    assert_eq!((tau_set.d(), theta_set.d()), (3, 3));
}

#[test]
fn seeds_are_reproducible() {
    assert_eq!(conference_search(6, 7).unwrap(), conference_search(6, 7).unwrap());
    assert!(matches!(conference_search(4, 0), Err(LinesError::SearchExhausted(4))));
    assert!(matches!(conference_search(10, 0), Err(LinesError::SearchTooLarge(10))));
}

#[test]
fn non_tight_lines() {
    // Three lines at angle arccos(1/3) in R³: rank 3, α² = 1/9 > 0 = bound.
    let order = RootOrder::new(2).unwrap();
    let g = Matrix::from_fn(3, 3, |u, v| CycNum::from_rational(order, if u == v { rat(1) } else { ratio(1, 3) }));
    let lines = LineSet::new(Gram::Cyclotomic(g)).unwrap();
    assert_eq!(lines.d(), 3);
    assert!(!tight_frame_check(&lines));
    tight_iff_bound(&lines);
}

#[test]
fn three_eigenvalue_seidel_is_rejected() {
    let order = RootOrder::new(3).unwrap();
    let z = |k: i64| CycNum::root_power(order, k);
    let zero = CycNum::zero(order);
    let rows = vec![
        vec![zero.clone(), z(1), z(0), z(0)],
        vec![z(2), zero.clone(), z(0), z(0)],
        vec![z(0), z(0), zero.clone(), z(0)],
        vec![z(0), z(0), z(0), zero],
    ];
    let s = SeidelMatrix::new(SeidelKind::Roots(order), Matrix::from_rows(rows).unwrap()).unwrap();
    assert_eq!(seidel_spectrum(&s).unwrap_err(), LinesError::MoreThanTwoEigenvalues);
    assert_eq!(lines_to_cover(&s, 3).unwrap_err(), LinesError::MoreThanTwoEigenvalues);
}

fn random_gauge(f: &ArcMatrix, shifts: &[u32]) -> ArcMatrix {
    let g = f.group().clone();
    let shift = |w: usize| vec![shifts[w] % 3];
    ArcMatrix::from_fn(f.n(), &g, |u, v| g.add(&g.sub(f.entry(u, v), &shift(v)), &shift(u)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn character_seidel_identities(shifts in prop::collection::vec(0u32..3, 9), chi in 1usize..3) {
        let f = random_gauge(&nine_three_three(), &shifts);
        let (s, a, b) = cover_to_lines(&f, chi).unwrap();
        let m = s.matrix();
        prop_assert!(m.is_hermitian());
        prop_assert!(m.trace().unwrap().is_zero());
        prop_assert_eq!(a.d() + b.d(), 9);
        let back = lines_to_cover(&s, 3).unwrap();
        prop_assert_eq!(small_params(&back.certificate), (9, 3, 3));
    }
}

#[test]
fn trivial_group_cover_has_no_lines() {
    let f = ArcMatrix::from_fn(3, &AbelianGroup::trivial(), |_, _| Vec::new());
    assert!(cover_to_lines(&f, 1).is_err());
}
