use duplab::finring::{
    duplication, idealization, parse_ideal, parse_ring, verify_idealization_coincidence, verify_spectrum, zmod,
    FinError, FiniteRing,
};
use proptest::prelude::*;

const LIMIT: usize = 4096;

fn prime_divisors(n: i64) -> Vec<i64> {
    (2..=n).filter(|&p| n % p == 0 && (2..p).all(|q| p % q != 0)).collect()
}

fn squarefree(n: i64) -> bool {
    prime_divisors(n).iter().all(|&p| n % (p * p) != 0)
}

/// `(d)` for a proper nonzero divisor `d` of `n`.
fn proper_divisors(n: i64) -> Vec<i64> {
    (2..n).filter(|&d| n % d == 0).collect()
}

/// Tables for `k[x]/(x²)` with `k = F_p`, elements `a + bx` indexed `a + p·b`.
fn dual_numbers(p: usize) -> FiniteRing {
    let n = p * p;
    let split = |e: usize| (e % p, e / p);
    let join = |a: usize, b: usize| a % p + p * (b % p);
    let add = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| {
                    let ((a, b), (c, d)) = (split(u), split(v));
                    join(a + c, b + d)
                })
                .collect()
        })
        .collect();
    let mul = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| {
                    let ((a, b), (c, d)) = (split(u), split(v));
                    join(a * c, a * d + b * c)
                })
                .collect()
        })
        .collect();
    let labels = (0..n)
        .map(|e| {
            let (a, b) = split(e);
            format!("{a}+{b}x")
        })
        .collect();
    FiniteRing::from_tables(format!("F{p}[x]/(x^2)"), labels, add, mul, 0, 1).unwrap()
}

/// `F_2 × F_2`, elements indexed by two bits.
fn boolean_square() -> FiniteRing {
    let add = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    let mul = (0..4).map(|a| (0..4).map(|b| a & b).collect()).collect();
    let labels = ["(0,0)", "(1,0)", "(0,1)", "(1,1)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteRing::from_tables("F2xF2", labels, add, mul, 0, 3).unwrap()
}

#[test]
fn every_ideal_of_small_zmod() {
    for n in 2..=12i64 {
        let r = zmod(n).unwrap();
        let spec_r = r.spectrum(LIMIT).unwrap();
        assert_eq!(spec_r.primes.len(), prime_divisors(n).len(), "Spec Z/{n}");
        for d in proper_divisors(n) {
            let i = r.principal_ideal(d as usize);
            let report = verify_spectrum(&r, &i, LIMIT).unwrap();
            assert!(report.passed(), "{}", report.to_text());

            let dup = duplication(&r, &i).unwrap();
            let spec_d = dup.ring().spectrum(LIMIT).unwrap();
            // one prime over each p | d, two over the other p | n
            let expected: usize = prime_divisors(n).iter().map(|&p| if d % p == 0 { 1 } else { 2 }).sum();
            assert_eq!(spec_d.primes.len(), expected, "Z/{n}, ({d})");
            assert_eq!(spec_d.is_reduced(), squarefree(n), "Z/{n}, ({d})");
            assert_eq!(spec_d.is_local(), prime_divisors(n).len() == 1, "Z/{n}, ({d})");
            assert_eq!(dup.ring().size(), (n * (n / d)) as usize);
        }
    }
}

#[test]
fn enumerated_ideals_match_divisors() {
    for n in 2..=16i64 {
        let r = zmod(n).unwrap();
        let ideals = r.enumerate_ideals(LIMIT).unwrap();
        let divisors = (1..=n).filter(|&d| n % d == 0).count();
        assert_eq!(ideals.len(), divisors, "Z/{n}");
    }
}

#[test]
fn square_zero_ideals_give_idealization() {
    for (n, d) in [(4, 2), (9, 3), (8, 4), (12, 6), (16, 4), (18, 6)] {
        let r = zmod(n).unwrap();
        let i = r.principal_ideal(d);
        assert_eq!(r.product(&i, &i).count(), 1);
        let report = verify_idealization_coincidence(&r, &i).unwrap();
        assert!(report.passed(), "{}", report.to_text());
    }
    let r = dual_numbers(3);
    let x = r.element("0+1x").unwrap();
    let report = verify_idealization_coincidence(&r, &r.principal_ideal(x)).unwrap();
    assert!(report.passed(), "{}", report.to_text());
}

#[test]
fn idealization_refused_when_square_nonzero() {
    let r = zmod(6).unwrap();
    let i = r.principal_ideal(2);
    assert!(matches!(
        verify_idealization_coincidence(&r, &i),
        Err(FinError::HypothesisNotMet(_))
    ));
    // the two constructions genuinely differ here: (0,2)² = (0,4) in R⋈I, (0,2)² = 0 in R⋉I
    let nag = idealization(&r, &i).unwrap();
    let dup = duplication(&r, &i).unwrap();
    let nilpotents = |s: &FiniteRing| s.elements().filter(|&a| s.is_nilpotent(a)).count();
    assert_ne!(nilpotents(&nag), nilpotents(dup.ring()));
}

#[test]
fn non_cyclic_rings() {
    let b = boolean_square();
    let i = b.principal_ideal(1);
    let report = verify_spectrum(&b, &i, LIMIT).unwrap();
    assert!(report.passed(), "{}", report.to_text());
    assert_eq!(
        duplication(&b, &i)
            .unwrap()
            .ring()
            .spectrum(LIMIT)
            .unwrap()
            .primes
            .len(),
        3
    );

    for p in [2, 3] {
        let r = dual_numbers(p);
        let x = r.element("0+1x").unwrap();
        let report = verify_spectrum(&r, &r.principal_ideal(x), LIMIT).unwrap();
        assert!(report.passed(), "{}", report.to_text());
    }
}

#[test]
fn trivial_and_malformed_inputs() {
    let r = zmod(6).unwrap();
    assert!(matches!(duplication(&r, &r.zero_ideal()), Err(FinError::TrivialIdeal)));
    assert!(matches!(duplication(&r, &r.unit_ideal()), Err(FinError::TrivialIdeal)));
    assert!(zmod(1).is_err());
    assert!(parse_ring("Zmod(x)").is_err());
    assert!(parse_ideal(&r, "(y)").is_err());
    // a table that is not distributive
    let add: Vec<Vec<usize>> = (0..2).map(|a| (0..2).map(|b| (a + b) % 2).collect()).collect();
    let mul = vec![vec![0, 0], vec![0, 0]];
    assert!(FiniteRing::from_tables("bad", vec!["0".into(), "1".into()], add, mul, 0, 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn parsed_ideals_agree_with_generated((n, a, b) in (4i64..25).prop_flat_map(|n| (Just(n), 0..n, 0..n))) {
        let r = parse_ring(&format!("Zmod({n})")).unwrap();
        let i = parse_ideal(&r, &format!("({a}, {b})")).unwrap();
        let g = gcd(gcd(a, b), n);
        prop_assert_eq!(&i, &r.principal_ideal(g as usize % n as usize));
        prop_assert_eq!(i.count() as i64, n / g);
    }

    #[test]
    fn spectrum_of_random_duplications(n in 4i64..25, k in 0usize..8) {
        let divisors = proper_divisors(n);
        prop_assume!(!divisors.is_empty());
        let d = divisors[k % divisors.len()];
        let r = zmod(n).unwrap();
        let report = verify_spectrum(&r, &r.principal_ideal(d as usize), LIMIT).unwrap();
        prop_assert!(report.passed(), "{}", report.to_text());
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
