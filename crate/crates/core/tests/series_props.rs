use std::sync::Arc;

use duplab::canon::shifted_canonical;
use duplab::field::Fp;
use duplab::numsgp::{IdealFamily, NumericalSemigroup, RelativeIdeal, DEFAULT_GAP_LIMIT};
use duplab::serring::{
    adjointness_dimension_check, divisorial_check_dup, pair_mul, pi_basis_check, random_ideal_generators,
    sigma_linearity_check, sigma_matrix, DupModel, Laurent, ModuleWindow, PairElement, SerError, Window,
};
use duplab::BigRational;
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type F = Fp<101>;

fn semigroup_strategy() -> impl Strategy<Value = Arc<NumericalSemigroup>> {
    prop::collection::vec(2i64..8, 1..3).prop_filter_map("numerical", |mut g| {
        g.push(g[0] + 1);
        let s = NumericalSemigroup::new(&g).ok()?;
        (s.gaps().len() <= 6).then(|| Arc::new(s))
    })
}

fn ideals_strategy(count: usize) -> impl Strategy<Value = (Arc<NumericalSemigroup>, Vec<RelativeIdeal>)> {
    semigroup_strategy().prop_flat_map(move |s| {
        let family = IdealFamily::enumerate(&s, DEFAULT_GAP_LIMIT).unwrap();
        let n = family.len();
        (Just(s), Just(family), prop::collection::vec((0..n, -4i64..5), count)).prop_map(|(s, family, picks)| {
            let ideals = picks.into_iter().map(|(k, t)| family.members[k].translate(t)).collect();
            (s, ideals)
        })
    })
}

/// An integral ideal `I ⊊ S`, `I ≠ 0`: a family member shifted into `S`.
fn integral_ideal_strategy() -> impl Strategy<Value = (Arc<NumericalSemigroup>, RelativeIdeal)> {
    ideals_strategy(1).prop_filter_map("proper", |(s, mut v)| {
        let e = v.pop().unwrap();
        let mut shift = e.integral_shift();
        if e.translate(shift).contains(0) {
            shift += s.multiplicity();
        }
        (!s.is_full()).then(|| (Arc::clone(&s), e.translate(shift)))
    })
}

fn wide(e: &RelativeIdeal, f: &RelativeIdeal) -> Window {
    Window::new(e.min() - f.full_from() - 40, e.full_from() - f.min() + 40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn monomial_colons_agree_across_engines((_s, ideals) in ideals_strategy(2)) {
        let (e, f) = (&ideals[0], &ideals[1]);
        let expected = e.colon(f).unwrap();
        let me = ModuleWindow::<F>::monomial_ideal(e);
        let mf = ModuleWindow::<F>::monomial_ideal(f);
        let got = me.colon(&mf, wide(e, f)).unwrap();
        prop_assert_eq!(&got, &ModuleWindow::monomial_ideal(&expected));
        for z in got.lo() - 3..got.hi() + 3 {
            prop_assert_eq!(got.contains(&[Laurent::monomial(F::one(), z)]), expected.contains(z));
        }
        // the same colon under a doubled cap
        let again = me.colon(&mf, wide(e, f).doubled()).unwrap();
        prop_assert_eq!(got, again);
    }

    #[test]
    fn colon_is_closed_under_the_ring((s, ideals) in ideals_strategy(2)) {
        let (e, f) = (&ideals[0], &ideals[1]);
        let me = ModuleWindow::<F>::monomial_ideal(e);
        let colon = me.colon(&ModuleWindow::monomial_ideal(f), wide(e, f)).unwrap();
        let ring = ModuleWindow::<F>::monomial_ideal(&RelativeIdeal::unit(&s));
        // generators: the stored basis plus enough tail monomials to generate t^hi k[[t]]
        let mut gens = colon.basis_elements();
        gens.extend(colon.tail_monomials(colon.hi(), colon.hi() + s.conductor().max(1)));
        let respanned = ModuleWindow::span(&ring, &gens, wide(e, f).doubled()).unwrap();
        prop_assert_eq!(respanned, colon);
    }

    #[test]
    fn sigma_injective_and_onto_iff_endomorphisms_trivial((s, i) in integral_ideal_strategy()) {
        let m = DupModel::<F>::build(&s, &i, None).unwrap();
        let sm = sigma_matrix(&m).unwrap();
        prop_assert!(sm.well_defined);
        prop_assert!(sm.injective);
        let trivial_end = i.colon(&i).unwrap() == RelativeIdeal::unit(&s);
        prop_assert_eq!(sm.surjective, trivial_end);
        let pi = pi_basis_check(&m).unwrap();
        prop_assert!(pi.passed(), "{}", pi.to_text());
        // verdicts do not move under a doubled cap
        let bigger = m.with_cap(m.cap().doubled()).unwrap();
        let sm2 = sigma_matrix(&bigger).unwrap();
        prop_assert_eq!((sm2.injective, sm2.surjective, sm2.deficit()), (sm.injective, sm.surjective, sm.deficit()));
    }

    #[test]
    fn sigma_linearity_on_random_models((s, i) in integral_ideal_strategy(), seed in any::<u64>()) {
        let m = DupModel::<F>::build(&s, &i, None).unwrap();
        let r = sigma_linearity_check(&m, 6, seed);
        prop_assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn distinguished_ideals((s, i) in integral_ideal_strategy()) {
        let m = DupModel::<F>::build(&s, &i, None).unwrap();
        let cap = m.cap();
        let o1 = ModuleWindow::span(m.d_window(), &m.o1_generators().iter().map(|g| g.to_element()).collect::<Vec<_>>(), cap).unwrap();
        let o2 = ModuleWindow::span(m.d_window(), &m.o2_generators().iter().map(|g| g.to_element()).collect::<Vec<_>>(), cap).unwrap();
        prop_assert_eq!(o1.support(), &[false, true]);
        prop_assert_eq!(o2.support(), &[true, false]);
        for a in o1.basis_elements() {
            for b in o2.basis_elements() {
                let p = pair_mul(&PairElement::from_element(&a), &PairElement::from_element(&b)).unwrap();
                prop_assert!(p.is_zero());
            }
        }
        prop_assert!(o1.is_submodule_of(m.d_window()) && o2.is_submodule_of(m.d_window()));
    }

    #[test]
    fn adjointness_on_named_and_random_ideals((s, i) in integral_ideal_strategy(), seed in any::<u64>()) {
        let m = DupModel::<F>::build(&s, &i, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let integral: Vec<PairElement<F>> = (0..2).map(|_| m.random_element(&mut rng)).collect();
        for gens in [m.unit_generators(), m.o1_generators(), m.o2_generators(), m.maximal_ideal_generators(), integral] {
            match adjointness_dimension_check(&m, &gens) {
                Ok(r) => prop_assert!(r.passed(), "{}", r.to_text()),
                Err(SerError::ZeroModule) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}

#[test]
fn canonical_duplications_have_only_divisorial_samples() {
    for g in [&[3i64, 4, 5][..], &[3, 5, 7], &[4, 6, 9]] {
        let s = Arc::new(NumericalSemigroup::new(g).unwrap());
        let (_, i) = shifted_canonical(&s).unwrap();
        let m = DupModel::<F>::build(&s, &i, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..15 {
            let gens = random_ideal_generators(&m, &mut rng);
            let r = divisorial_check_dup(&m, &gens).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
    }
}

#[test]
fn non_canonical_duplications_have_non_divisorial_ideals() {
    // D is Gorenstein only when I is canonical; otherwise sampling finds
    // ideals that are not divisorial
    for g in [&[2i64, 3][..], &[3, 4, 5], &[3, 5, 7]] {
        let s = Arc::new(NumericalSemigroup::new(g).unwrap());
        let m = DupModel::<F>::build(&s, &RelativeIdeal::maximal(&s), None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let failures = (0..30)
            .filter(|_| {
                let gens = random_ideal_generators(&m, &mut rng);
                divisorial_check_dup(&m, &gens).unwrap().failed()
            })
            .count();
        assert!(failures > 0, "{}", s);
    }
}

#[test]
fn rational_and_prime_field_models_agree() {
    for g in [&[2i64, 3][..], &[3, 4, 5], &[3, 5, 7], &[4, 6, 9]] {
        let s = Arc::new(NumericalSemigroup::new(g).unwrap());
        for i in [shifted_canonical(&s).unwrap().1, RelativeIdeal::maximal(&s)] {
            let mp = DupModel::<F>::build(&s, &i, None).unwrap();
            let mq = DupModel::<BigRational>::build(&s, &i, None).unwrap();
            let (a, b) = (sigma_matrix(&mp).unwrap(), sigma_matrix(&mq).unwrap());
            assert_eq!((a.rank, a.surjective, a.deficit()), (b.rank, b.surjective, b.deficit()));
            assert_eq!(mp.hom().coords.window(), mq.hom().coords.window());
            let gp = mp.maximal_ideal_generators();
            let gq = mq.maximal_ideal_generators();
            assert_eq!(
                divisorial_check_dup(&mp, &gp).unwrap().passed(),
                divisorial_check_dup(&mq, &gq).unwrap().passed()
            );
        }
    }
}

#[test]
fn truncated_products_track_precision() {
    let a = PairElement::<F>::new(Laurent::one(), Laurent::monomial(F::one(), 2)).truncated(5);
    let b = PairElement::<F>::new(Laurent::monomial(F::one(), 7), Laurent::one()).truncated(4);
    let p = pair_mul(&a, &b).unwrap();
    assert_eq!(p.precision, Some(4));
}
