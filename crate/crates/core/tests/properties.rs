//! Cross-module invariant suites: reciprocity laws, variety size bounds,
//! lift/project round trips, and the crude solution-count inequalities.

use esl_core::count::{count_f1_box, count_f2_box};
use esl_core::numkit::{factorize, factorize_wide, jacobi, omega_res, primes_up_to};
use esl_core::oracle::{enumerate_all, g2};
use esl_core::rat::Rat;
use esl_core::sextuple::{
    check_sigma1, check_sigma2, lift1, lift2, project1, project2, satisfies_unit_equation,
    SolutionTag,
};
use proptest::prelude::*;

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[test]
fn jacobi_reciprocity_random_pairs() {
    let mut state = 0x1234_5678_9abc_def0u64;
    let mut done = 0;
    while done < 10_000 {
        let m = (splitmix(&mut state) % 100_000) | 1;
        let n = (splitmix(&mut state) % 100_000) | 1;
        if m < 3 || n < 3 || gcd(m, n) != 1 {
            continue;
        }
        done += 1;
        let lhs = jacobi(m as i64, n).unwrap() * jacobi(n as i64, m).unwrap();
        let sign = if (m % 4 == 3) && (n % 4 == 3) { -1 } else { 1 };
        assert_eq!(lhs, sign, "m={m} n={n}");
    }
}

#[test]
fn jacobi_companion_laws() {
    for n in (1u64..=9999).step_by(2) {
        let minus_one = jacobi(-1, n).unwrap();
        assert_eq!(minus_one, if n % 4 == 1 { 1 } else { -1 }, "(-1/{n})");
        let two = jacobi(2, n).unwrap();
        assert_eq!(
            two,
            if n % 8 == 1 || n % 8 == 7 { 1 } else { -1 },
            "(2/{n})"
        );
    }
}

#[test]
fn counting_inequality_and_prime_identity() {
    // f(n) >= 3 f_I(n) + 3 f_II(n) with equality at odd primes
    for n in 2u64..=500 {
        let s = enumerate_all(4, n).unwrap();
        assert!(s.f >= 3 * (s.f_i + s.f_ii), "n={n}");
        if n % 2 == 1 && esl_core::numkit::is_prime(n) {
            assert_eq!(s.f, 3 * (s.f_i + s.f_ii), "n={n}");
        }
    }
}

#[test]
fn size_bounds_on_lifted_points() {
    for n in 2u64..=300 {
        let s = enumerate_all(4, n).unwrap();
        for t in &s.triples {
            if t.y > t.z {
                continue;
            }
            match t.tag {
                SolutionTag::TypeI => {
                    let p = lift1(n, t.x, t.y, t.z).unwrap();
                    let acd = p.a * p.c * p.d;
                    assert!(p.a <= p.b, "n={n}");
                    assert!(4 * acd > n as u128 && 4 * acd <= 3 * n as u128, "n={n}");
                    let bf = p.b * p.f;
                    let an = p.a * n as u128;
                    assert!(an <= bf && 3 * bf <= 5 * an, "n={n} an={an} bf={bf}");
                    let ce = p.c * p.e;
                    assert!(p.b < ce && ce <= 2 * p.b, "n={n}");
                }
                SolutionTag::TypeII => {
                    let p = lift2(n, t.x, t.y, t.z).unwrap();
                    let acde = p.a * p.c * p.d * p.e;
                    assert!(p.a <= p.b, "n={n}");
                    assert!(4 * acde > n as u128 && acde <= n as u128, "n={n}");
                    let acd = p.a * p.c * p.d;
                    assert!(3 * acd <= p.f && p.f < 4 * acd, "n={n}");
                }
                SolutionTag::Other => {}
            }
        }
    }
}

#[test]
fn flower_bound_g2_vs_omega() {
    // f(n) >= g2(4,n) >= 3^w4(n) / C1 for n with at least one prime factor
    // congruent to 3 mod 4 (with w4 = 0 the chain is vacuous: g2(4,5) = 0).
    // The constant is calibrated by this scan: the minimum of g2 / 3^w4 over
    // n <= 2000 with w4 >= 1 is 4/9 (first at n = 21), so C1 = 3 has margin.
    let mut min_ratio = f64::INFINITY;
    for n in 2u64..=2000 {
        let g = g2(4, n);
        let w = omega_res(n, 4).unwrap();
        if w == 0 {
            continue;
        }
        let ratio = g as f64 / 3f64.powi(w as i32);
        min_ratio = min_ratio.min(ratio);
        assert!(ratio >= 1.0 / 3.0, "n={n} g2={g} w4={w}");
    }
    assert!(
        (min_ratio - 4.0 / 9.0).abs() < 1e-9,
        "calibration drifted: {min_ratio}"
    );
}

#[test]
fn near_prime_two_term_identity() {
    // 4/p = 4/(p+1) + 1/(t(4t-1)) for p = 4t - 1, expanded via 4/(p+1) = 1/2t + 1/2t
    for p in primes_up_to(1000) {
        if p % 4 != 3 {
            continue;
        }
        let t = (p + 1) / 4;
        let (x, y, z) = (2 * t as u128, 2 * t as u128, (t * (4 * t - 1)) as u128);
        assert!(satisfies_unit_equation(p, x, y, z), "p={p}");
    }
}

#[test]
fn counters_vanish_on_odd_squares() {
    for k in (1u64..=31).step_by(2) {
        assert_eq!(count_f1_box(k * k), 0, "k={k}");
        assert_eq!(count_f2_box(k * k), 0, "k={k}");
    }
}

#[test]
fn covered_classes_contain_nonsquares() {
    let rep = esl_core::congruence::mod840_report(12);
    let is_square = |v: u64| {
        let r = (v as f64).sqrt() as u64;
        (r.saturating_sub(1)..=r + 1).any(|s| s * s == v)
    };
    for (r, _) in &rep.covered {
        assert!(
            (0..5).any(|k| !is_square(r + 840 * k)),
            "class {r} mod 840 is all squares?"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn factorization_reconstructs_and_counts(n in 1u64..=1_000_000_000_000) {
        let f = factorize(n, None);
        prop_assert_eq!(f.value(), n as u128);
        prop_assert_eq!(f.divisors().len() as u64, f.tau());
    }

    #[test]
    fn wide_factorization_of_quadratic_values(x in 1u64..=3_000_000) {
        // the shape the fast counters feed the factorizer
        let v = 4u128 * (x as u128) * (x as u128) + 1;
        let f = factorize_wide(v);
        prop_assert_eq!(f.value(), v);
    }

    #[test]
    fn rational_sum_is_order_independent(a in 1u128..=10_000, b in 1u128..=10_000, c in 1u128..=10_000) {
        let s1 = Rat::unit(a).checked_add(Rat::unit(b)).unwrap().checked_add(Rat::unit(c)).unwrap();
        let s2 = Rat::unit(c).checked_add(Rat::unit(a)).unwrap().checked_add(Rat::unit(b)).unwrap();
        prop_assert_eq!(s1, s2);
    }

    #[test]
    fn lift_project_round_trip_random(n in 2u64..=400, pick in 0usize..1000) {
        let s = enumerate_all(4, n).unwrap();
        if s.triples.is_empty() {
            return Ok(());
        }
        let t = &s.triples[pick % s.triples.len()];
        match t.tag {
            SolutionTag::TypeI => {
                let p = lift1(n, t.x, t.y, t.z).unwrap();
                prop_assert!(check_sigma1(n, &p).is_empty());
                let back = project1(n, &p).unwrap();
                prop_assert_eq!((back.x, back.y, back.z), (t.x, t.y, t.z));
            }
            SolutionTag::TypeII => {
                let p = lift2(n, t.x, t.y, t.z).unwrap();
                prop_assert!(check_sigma2(n, &p).is_empty());
                let back = project2(n, &p).unwrap();
                prop_assert_eq!((back.x, back.y, back.z), (t.x, t.y, t.z));
            }
            SolutionTag::Other => {}
        }
    }

    #[test]
    fn unit_equation_residue_route_agrees(x in 1u128..=1_000_000, y in 1u128..=1_000_000, z in 1u128..=1_000_000, n in 1u64..=10_000) {
        // direct u128 evaluation is exact at this size; the residue route
        // must agree everywhere, solutions and non-solutions alike
        let direct = 4 * x * y * z == n as u128 * (y * z + x * z + x * y);
        // force the residue path by scaling all denominators by 2^20 and n by nothing:
        // scaling denominators by l turns a solution of 4/n into one of 4/(n l)
        let l = 1u128 << 20;
        if n as u128 * l <= u64::MAX as u128 {
            let scaled = satisfies_unit_equation((n as u128 * l) as u64, x * l, y * l, z * l);
            prop_assert_eq!(direct, scaled);
        }
    }
}
