use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tiltchow::*;

fn random_rational(rng: &mut ChaCha8Rng, bound: i64, max_den: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=max_den))
}

fn random_lambda(rng: &mut ChaCha8Rng) -> LambdaVector {
    loop {
        let v = LambdaVector::from_triple(
            int(rng.gen_range(-6..=6)),
            int(rng.gen_range(-6..=6)),
            rat(rng.gen_range(-12..=12), 2),
        );
        if !v.is_lattice_zero() {
            return v;
        }
    }
}

fn contraction() -> Scenario {
    contraction_scenario(int(1), int(1), 2).unwrap()
}

fn random_ch(rng: &mut ChaCha8Rng, ring: &IntersectionRing) -> ChernCharacter {
    let ch1 = (0..ring.divisor_rank()).map(|_| random_rational(rng, 6, 3)).collect();
    let ch2 = (0..ring.curve_rank()).map(|_| random_rational(rng, 6, 3)).collect();
    ChernCharacter::new(
        random_rational(rng, 4, 2),
        DivisorClass::new(ch1),
        CurveClass::new(ch2),
        random_rational(rng, 6, 6),
    )
}

#[test]
fn semicircular_walls_of_one_class_are_nested() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    let mut meeting = 0;
    while checked < 400 {
        let v = random_lambda(&mut rng);
        if !v.discriminant().is_positive() {
            continue;
        }
        let (w, u) = (random_lambda(&mut rng), random_lambda(&mut rng));
        let (Ok(a @ Wall::Semicircle { .. }), Ok(b @ Wall::Semicircle { .. })) = (wall(&v, &w), wall(&v, &u)) else {
            continue;
        };
        checked += 1;
        if a.semicircles_meet(&b).unwrap() {
            meeting += 1;
            assert_eq!(a, b, "v = {v:?}, w = {w:?}, u = {u:?}");
        }
    }
    assert!(meeting > 0);
}

#[test]
fn walls_of_negative_discriminant_class_can_cross() {
    // the nesting statement needs Δ(v) >= 0: here both walls pass through the
    // point β = 0, α² = 1 where Z(v) vanishes
    let v = LambdaVector::from_triple(int(2), int(0), int(1));
    assert!(v.discriminant().is_negative());
    let a = wall(&v, &LambdaVector::from_triple(int(0), int(1), int(0))).unwrap();
    let b = wall(&v, &LambdaVector::from_triple(int(0), int(1), int(1))).unwrap();
    assert!(a.contains(&int(1), &int(0)) && b.contains(&int(1), &int(0)));
    assert_ne!(a, b);
}

#[test]
fn top_point_of_every_wall_has_zero_slope() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 200 {
        let (v, w) = (random_lambda(&mut rng), random_lambda(&mut rng));
        let Wall::Semicircle { center, radius_sq } = wall(&v, &w).unwrap() else {
            continue;
        };
        checked += 1;
        let (num, den) = v.nu_parts(&radius_sq, &center);
        if den.is_zero() {
            continue;
        }
        assert!(num.is_zero());
        assert_eq!(nu_zero_alpha_sq(&v, &center).unwrap(), if v.v0.is_zero() {
            NuZero::EveryAlpha
        } else {
            NuZero::AlphaSq(radius_sq)
        });
    }
}

#[test]
fn slopes_agree_along_walls_at_several_points() {
    let v = LambdaVector::from_triple(int(0), int(1), rat(1, 2));
    let w = LambdaVector::from_triple(int(7), int(1), int(0));
    let Wall::Semicircle { center, radius_sq } = wall(&v, &w).unwrap() else {
        panic!("expected a semicircle");
    };
    assert_eq!(center, rat(1, 2));
    assert_eq!(radius_sq, rat(3, 28));
    // rational points on (β − 1/2)² + α² = 3/28
    for delta in [rat(1, 10), rat(-1, 5), rat(1, 4)] {
        let beta = &center + &delta;
        let alpha_sq = &radius_sq - &delta * &delta;
        assert!(alpha_sq.is_positive());
        assert_eq!(v.nu(&alpha_sq, &beta).unwrap(), w.nu(&alpha_sq, &beta).unwrap());
    }
}

#[test]
fn discriminant_is_invariant_under_twists_by_h() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for ring_case in 0..2 {
        let s = if ring_case == 0 {
            contraction()
        } else {
            weierstrass_scenario(int(6), rat(2, 5)).unwrap()
        };
        let b0 = DivisorClass::new(vec![rat(1, 3), rat(-1, 2)]);
        for _ in 0..100 {
            let ch = random_ch(&mut rng, &s.ring);
            let beta = random_rational(&mut rng, 10, 7);
            let twisted = twist(&s.ring, &ch, &s.h.scale(&beta)).unwrap();
            assert_eq!(
                discriminant(&s.ring, &s.h, &b0, &ch).unwrap(),
                discriminant(&s.ring, &s.h, &b0, &twisted).unwrap()
            );
        }
    }
}

#[test]
fn tilt_slope_factors_through_lambda() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s = weierstrass_scenario(int(9), int(1)).unwrap();
    let b0 = DivisorClass::new(vec![rat(1, 2), int(-1)]);
    for _ in 0..100 {
        let ch = random_ch(&mut rng, &s.ring);
        if ch.is_zero() {
            continue;
        }
        let alpha_sq = rat(rng.gen_range(1..40), rng.gen_range(1..9));
        let beta = random_rational(&mut rng, 8, 5);
        let params = StabilityParams::new(
            s.h.clone(),
            b0.clone(),
            alpha_sq.clone(),
            beta.clone(),
            int(1),
            s.ring.zero_curve(),
        )
        .unwrap();
        let lambda = to_lambda(&s.ring, &s.h, &b0, &ch).unwrap();
        assert_eq!(slope_nu(&s.ring, &params, &ch).unwrap(), lambda.nu(&alpha_sq, &beta).unwrap());
    }
}

#[test]
fn exceptional_divisor_walls_respect_the_radius_bound() {
    let s = contraction();
    let od = ch_structure_sheaf_divisor(&s.ring, &s.d).unwrap();
    let v = to_lambda(&s.ring, &s.h, &s.ring.zero_divisor(), &od).unwrap();
    let h3 = s.ring.cube(&s.h).unwrap();
    let bound = radius_bound_higher_rank(&v, &h3, 1).unwrap();
    assert_eq!(bound, rat(1, 196));
    let region = Region {
        beta_min: int(-2),
        beta_max: int(3),
        alpha_sq_max: int(4),
    };
    let caps = Caps {
        max_rank: 5,
        max_ch1: 15,
    };
    let walls = enumerate_candidate_walls(&v, &h3, &region, &caps).unwrap();
    for w in &walls {
        assert!(w.radius_sq <= bound);
        assert_eq!(w.center, rat(1, 2));
        let rank = (&w.w[0] / &h3).to_integer();
        let rank: u32 = rank.try_into().unwrap();
        if rank > 0 {
            assert!(w.radius_sq <= radius_bound_higher_rank(&v, &h3, rank).unwrap());
        }
    }
    for (i, a) in walls.iter().enumerate() {
        for b in &walls[i + 1..] {
            assert!(a.center != b.center || a.radius_sq != b.radius_sq);
        }
    }
}

#[test]
fn enumeration_is_deterministic_and_sorted() {
    let v = LambdaVector::from_triple(int(2), int(-1), rat(-3, 2));
    let region = Region {
        beta_min: int(-6),
        beta_max: int(2),
        alpha_sq_max: int(30),
    };
    let caps = Caps {
        max_rank: 4,
        max_ch1: 6,
    };
    let a = enumerate_candidate_walls(&v, &int(1), &region, &caps).unwrap();
    let b = enumerate_candidate_walls(&v, &int(1), &region, &caps).unwrap();
    assert_eq!(a, b);
    assert!(!a.is_empty());
    for pair in a.windows(2) {
        assert!(
            pair[0].radius_sq > pair[1].radius_sq
                || (pair[0].radius_sq == pair[1].radius_sq && pair[0].center < pair[1].center)
        );
    }
    // walls on one side of the vertical wall β = v1/v0 are nested
    let vertical = vertical_wall(&v).unwrap().unwrap();
    for w in &a {
        let d = &w.center - &vertical;
        assert!(&d * &d >= w.radius_sq);
    }
}
