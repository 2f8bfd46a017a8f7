//! Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic throughout.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tiltchow::*;
use tiltchow_cli::report::Report;

fn tiltchow(args: &[&str]) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_tiltchow"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(o.status.code().is_some(), "terminated by signal");
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap())
}

fn report(args: &[&str]) -> (i32, Report) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, text) = tiltchow(&all);
    (code, serde_json::from_str(&text).expect("json report"))
}

fn q(text: &str) -> Rational {
    parse_rational(text).unwrap()
}

fn random_rational(rng: &mut ChaCha8Rng, bound: i64, max_den: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=max_den))
}

fn random_params(rng: &mut ChaCha8Rng) -> (Rational, Rational, Rational) {
    let alpha_sq = rat(rng.gen_range(1..60), rng.gen_range(1..9));
    let beta = random_rational(rng, 9, 7);
    let s = rat(1, 6) + rat(rng.gen_range(1..40), rng.gen_range(1..11));
    (alpha_sq, beta, s)
}

fn bases() -> Vec<(IntersectionRing, DivisorClass)> {
    let p3 = IntersectionRing::polarized(int(1)).unwrap();
    let h = p3.divisor("H").unwrap();
    let c = contraction_scenario(int(1), int(1), 2).unwrap();
    let w = weierstrass_scenario(int(5), rat(3, 4)).unwrap();
    vec![(p3, h), (c.ring, c.h), (w.ring, w.h)]
}

fn random_blowup(rng: &mut ChaCha8Rng, base: &IntersectionRing, h: &DivisorClass) -> BlowupGeometry {
    let b0 = DivisorClass::new((0..base.divisor_rank()).map(|_| random_rational(rng, 6, 5)).collect());
    let gamma = CurveClass::new((0..base.curve_rank()).map(|_| random_rational(rng, 6, 5)).collect());
    make_blowup_geometry(base, h.clone(), b0, gamma).unwrap()
}

fn random_ch(rng: &mut ChaCha8Rng, ring: &IntersectionRing) -> ChernCharacter {
    ChernCharacter::new(
        random_rational(rng, 5, 3),
        DivisorClass::new((0..ring.divisor_rank()).map(|_| random_rational(rng, 6, 3)).collect()),
        CurveClass::new((0..ring.curve_rank()).map(|_| random_rational(rng, 6, 4)).collect()),
        random_rational(rng, 8, 6),
    )
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

fn contraction_counterexample() {
    let (code, r) = report(&["check", "--builtin", "contraction:1,1,2", "--divisor", "D"]);
    assert_eq!(code, 0);
    let out = &r.outputs;
    assert_eq!(out["satisfied"], "true");
    assert_eq!(q(&out["beta0"]), rat(1, 2));
    assert_eq!(q(&out["alpha_sq_lower"]), rat(1, 196));
    assert_eq!(q(&out["alpha_sq_upper"]), rat(1, 4));
    assert_eq!(q(&out["margin"]), rat(12, 49));
    assert_eq!(q(&out["margin"]), rat(1, 4) - rat(1, 196));

    // recompute the defect at the reported witness independently of the report
    let s = contraction_scenario(int(1), int(1), 2).unwrap();
    let witness = q(&out["witness_alpha_sq"]);
    assert!(witness > rat(1, 196) && witness < rat(1, 4));
    let params = StabilityParams::new(
        s.h.clone(),
        s.ring.zero_divisor(),
        witness,
        rat(1, 2),
        int(1),
        s.ring.zero_curve(),
    )
    .unwrap();
    let defect = bmt_defect(&s.ring, &params, &ch_structure_sheaf_divisor(&s.ring, &s.d).unwrap()).unwrap();
    assert!(defect.is_positive());
    assert_eq!(defect, q(&out["witness_defect"]));
}

fn weierstrass_threshold() {
    for ks2 in [int(1), int(9)] {
        for t in ["1/10", "1/4", "26/100", "27/100", "1/2", "1", "2"].map(q) {
            let margin = weierstrass_margin(&ks2, &t).unwrap();
            let one_plus_t = &t + int(1);
            let reference = &one_plus_t * &one_plus_t * &one_plus_t - int(2);
            assert_eq!(margin.signum(), reference.signum(), "KS2 = {ks2}, t = {t}");
            let s = weierstrass_scenario(ks2.clone(), t.clone()).unwrap();
            let r = check_divisor_counterexample(&s.ring, &s.d, &s.h, &s.ring.zero_curve()).unwrap();
            assert_eq!(r.margin, margin);
            assert_eq!(r.satisfied, margin.is_positive());
        }
    }
    assert_eq!(weierstrass_margin(&int(9), &int(1)).unwrap(), rat(108, 49));
    let (_, r) = report(&["check", "--builtin", "weierstrass:9,1"]);
    assert_eq!(q(&r.outputs["margin"]), rat(108, 49));
}

fn exceptional_and_skyscraper_charges() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut tuples = 0;
    for (base, h) in bases() {
        for _ in 0..10 {
            let g = random_blowup(&mut rng, &base, &h);
            let (alpha_sq, beta, s) = random_params(&mut rng);
            let oe2 = ch_exceptional_twist(&g.blowup, 2).unwrap();
            let point = ch_skyscraper(g.ring());
            assert_eq!(
                g.lifted_charge(&alpha_sq, &beta, &s, &oe2).unwrap(),
                ComplexRational::new(rat(-1, 3), int(0))
            );
            assert_eq!(
                g.lifted_charge(&alpha_sq, &beta, &s, &point).unwrap(),
                ComplexRational::new(int(-1), int(0))
            );
            tuples += 1;
        }
    }
    assert!(tuples >= 20);
    let (_, r) = report(&["charge", "--builtin", "blowup:1", "--class", "exceptional:2", "--beta", "-3/4"]);
    assert_eq!((r.outputs["re"].as_str(), r.outputs["im"].as_str()), ("-1/3", "0"));
}

fn factor_three_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut random_checked = 0;
    for (base, h) in bases() {
        let g = random_blowup(&mut rng, &base, &h);
        let ring = g.ring();
        let e = g.blowup.exceptional();
        let pulled = g.blowup.pull_divisor(&h).unwrap();
        let spanning = [
            ch_structure_sheaf(ring),
            ch_skyscraper(ring),
            ch_exceptional_twist(&g.blowup, 2).unwrap(),
            exp_divisor(ring, &(&pulled - &e)).unwrap(),
        ];
        let (alpha_sq, beta, s) = random_params(&mut rng);
        for ch in &spanning {
            assert!(g.verify_factor_three(&alpha_sq, &beta, &s, ch).unwrap().matches);
        }
        for _ in 0..40 {
            let ch = random_ch(&mut rng, ring);
            let (alpha_sq, beta, s) = random_params(&mut rng);
            let check = g.verify_factor_three(&alpha_sq, &beta, &s, &ch).unwrap();
            // second evaluation path: the base charge of the transported class
            let base_params = g.base_params(alpha_sq.clone(), beta.clone(), s.clone()).unwrap();
            let direct = central_charge(g.base(), &base_params, &g.transport(&ch).unwrap()).unwrap();
            assert_eq!(check.base, direct);
            assert_eq!(check.lifted_times_three, direct);
            random_checked += 1;
        }
    }
    assert!(random_checked >= 100);
}

fn transport_golden_values() {
    let bl = make_blowup_ring(int(1)).unwrap();
    let expect = |ch: ChernCharacter, v: [i64; 4]| {
        assert_eq!(ch.ch0, int(v[0]));
        assert!(ch.ch1.is_zero() && ch.ch2.is_zero());
        assert_eq!(ch.ch3, int(v[3]));
    };
    expect(transport_through_blowup(&bl, &ch_structure_sheaf(bl.ring())).unwrap(), [3, 0, 0, -5]);
    expect(ch_pushforward_minus_two_exceptional(&bl).unwrap(), [1, 0, 0, -4]);
    expect(ch_algebra_b(&bl).unwrap(), [9, 0, 0, -6]);
    // 𝒪 ⊕ 𝓘_P ⊕ f_*𝒪(−2E) on the base
    let base = bl.base();
    let sum = &(&ch_structure_sheaf(base) + &ch_ideal_point(base)) + &ch_pushforward_minus_two_exceptional(&bl).unwrap();
    expect(sum, [3, 0, 0, -5]);
}

fn wall_geometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);

    let mut top_points = 0;
    while top_points < 100 {
        let (v, w) = (random_lambda(&mut rng), random_lambda(&mut rng));
        let Ok(Wall::Semicircle { center, radius_sq }) = wall(&v, &w) else {
            continue;
        };
        let (num, den) = v.nu_parts(&radius_sq, &center);
        if den.is_zero() {
            continue;
        }
        assert!(num.is_zero());
        top_points += 1;
    }

    let mut nested = 0;
    while nested < 60 {
        let v = random_lambda(&mut rng);
        if v.discriminant().is_negative() {
            continue;
        }
        let (w, u) = (random_lambda(&mut rng), random_lambda(&mut rng));
        let (Ok(a @ Wall::Semicircle { .. }), Ok(b @ Wall::Semicircle { .. })) = (wall(&v, &w), wall(&v, &u)) else {
            continue;
        };
        if a.semicircles_meet(&b).unwrap() {
            assert_eq!(a, b);
        }
        nested += 1;
    }

    let s = contraction_scenario(int(1), int(1), 2).unwrap();
    let b0 = DivisorClass::new(vec![rat(2, 3), rat(-1, 4)]);
    for _ in 0..120 {
        let ch = random_ch(&mut rng, &s.ring);
        let beta = random_rational(&mut rng, 12, 7);
        let twisted = twist(&s.ring, &ch, &s.h.scale(&beta)).unwrap();
        assert_eq!(
            discriminant(&s.ring, &s.h, &b0, &ch).unwrap(),
            discriminant(&s.ring, &s.h, &b0, &twisted).unwrap()
        );
    }

    let (code, r) = report(&["walls", "--builtin", "contraction:1,1,2", "--class", "O_D"]);
    assert_eq!(code, 0);
    let table = r.table.unwrap();
    assert_eq!(table.columns, ["center", "radius_sq", "w0", "w1", "w2"]);
    for row in &table.rows {
        assert!(q(&row[1]) <= rat(1, 196));
        assert_eq!(q(&row[0]), rat(1, 2));
    }
    let v = to_lambda(&s.ring, &s.h, &s.ring.zero_divisor(), &ch_structure_sheaf_divisor(&s.ring, &s.d).unwrap()).unwrap();
    assert_eq!(radius_bound_higher_rank(&v, &int(7), 1).unwrap(), rat(1, 196));
}

fn theta_minus_fiber_cube() {
    for ks2 in 1..=9 {
        let ring = make_weierstrass_ring(int(ks2)).unwrap();
        let d = &ring.divisor("Theta").unwrap() - &ring.divisor("F").unwrap();
        assert_eq!(ring.cube(&d).unwrap(), int(ks2));
    }
}

fn determinism() {
    let strip_timing = |text: String| -> String {
        let mut r: Report = serde_json::from_str(&text).unwrap();
        r.timing_ms = None;
        serde_json::to_string(&r).unwrap()
    };
    let runs: [&[&str]; 5] = [
        &["walls", "--builtin", "contraction:1,1,2", "--format", "csv"],
        &["walls", "--builtin", "blowup:1", "--class", "2; -f*H; -3/2*f*H^2; 0", "--beta-min", "-6", "--alpha-sq-max", "30"],
        &["sweep", "contraction:1,1", "--grid", "1..8", "--format", "csv"],
        &["sweep", "weierstrass:9", "--grid", "1/10,1/4,26/100,27/100,1/2,1,2"],
        &["walls", "--builtin", "blowup:1", "--class", "O", "--format", "json"],
    ];
    for args in runs {
        let (a, b) = (tiltchow(args), tiltchow(args));
        assert_eq!(a.0, b.0);
        if args.contains(&"json") {
            assert_eq!(strip_timing(a.1), strip_timing(b.1));
        } else {
            assert_eq!(a.1, b.1);
        }
    }
}

fn main() {
    let criteria: [(&str, fn()); 8] = [
        ("contraction counterexample on the blow-up of P^3", contraction_counterexample),
        ("Weierstrass threshold signs and margin(9, 1)", weierstrass_threshold),
        ("exceptional and skyscraper charges are constant", exceptional_and_skyscraper_charges),
        ("factor-three identity for transported charges", factor_three_identity),
        ("transport golden values", transport_golden_values),
        ("wall geometry suite", wall_geometry),
        ("(Theta - F)^3 = KS2 for KS2 = 1..9", theta_minus_fiber_cube),
        ("walls and sweep output is deterministic", determinism),
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let ok = catch_unwind(AssertUnwindSafe(check)).is_ok();
        println!("[{}] {}. {name}", if ok { "PASS" } else { "FAIL" }, i + 1);
        if !ok {
            failed += 1;
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
