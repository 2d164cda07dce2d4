//! Acceptance run: one PASS/FAIL line per criterion, with its time limit.
//! Every criterion is exact; the only tolerances are the wall-clock limits.

use std::sync::Arc;
use std::time::{Duration, Instant};

use duplab::canon::{
    find_canonical, gorenstein_endpoint, shifted_canonical, suite, verify_duplication_pipeline, IdealChoice,
    PipelineConfig, DEFAULT_SEED,
};
use duplab::finring::{duplication, verify_idealization_coincidence, verify_spectrum, zmod};
use duplab::numsgp::{IdealFamily, NumericalSemigroup, RelativeIdeal, DEFAULT_GAP_LIMIT};
use duplab::serring::{
    divisorial_check_dup, random_ideal_generators, sigma_linearity_check, sigma_matrix, DupModel, Laurent,
    ModuleWindow, Window,
};
use duplab::{Fp, Verdict};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type F = Fp<101>;

const LIMIT: usize = 4096;

fn sg(g: &[i64]) -> Arc<NumericalSemigroup> {
    Arc::new(NumericalSemigroup::new(g).unwrap())
}

fn family(s: &Arc<NumericalSemigroup>) -> Vec<RelativeIdeal> {
    IdealFamily::enumerate(s, DEFAULT_GAP_LIMIT).unwrap().members
}

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn duality() -> Check {
    let mut count = 0;
    for s in suite() {
        let k = RelativeIdeal::canonical(&s);
        for j in family(&s) {
            let back = k
                .colon(&k.colon(&j).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            ensure(back == j, || {
                format!("{s}: J = {}, K − (K − J) = {}", j.set_notation(), back.set_notation())
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} ideals over 5 semigroups"))
}

fn canonical_certification() -> Check {
    for s in suite() {
        let found = find_canonical(&s).map_err(|e| e.to_string())?;
        let k = RelativeIdeal::canonical(&s);
        ensure(found == vec![k.clone()], || {
            format!(
                "{s}: found {:?}",
                found.iter().map(|e| e.set_notation()).collect::<Vec<_>>()
            )
        })?;
        if s.is_symmetric() {
            ensure(k == RelativeIdeal::unit(&s), || {
                format!("{s} symmetric but K = {}", k.set_notation())
            })?;
        }
    }
    Ok("one normalized m-canonical ideal each, = K(S)".into())
}

/// `∩ {z + W : E ⊆ z + W}`, scanned over shifts and membership in a wide range.
fn brute_closure_members(e: &RelativeIdeal, w: &RelativeIdeal, lo: i64, hi: i64) -> Vec<i64> {
    let span = hi - lo + 30;
    let shifts: Vec<i64> = (-span..=span)
        .filter(|&z| (e.min()..e.full_from() + span).all(|x| !e.contains(x) || w.contains(x - z)))
        .collect();
    (lo..=hi)
        .filter(|&x| shifts.iter().all(|&z| w.contains(x - z)))
        .collect()
}

fn closure_formula() -> Check {
    let mut pairs = 0;
    for s in [sg(&[2, 3]), sg(&[3, 4, 5])] {
        let fam = family(&s);
        for e in &fam {
            for w in &fam {
                let via = e.divisorial_closure_via_intersection(w).map_err(|x| x.to_string())?;
                let colon = e.divisorial_closure(w).map_err(|x| x.to_string())?;
                ensure(via == colon, || {
                    format!("{s}: E = {}, W = {}", e.set_notation(), w.set_notation())
                })?;
                let (lo, hi) = (colon.min() - 5, colon.full_from() + 5);
                let brute = brute_closure_members(e, w, lo, hi);
                let ours: Vec<i64> = (lo..=hi).filter(|&x| colon.contains(x)).collect();
                ensure(brute == ours, || {
                    format!("{s}: brute intersection disagrees for E = {}", e.set_notation())
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs, brute intersection oracle agrees"))
}

fn spectrum_counts() -> Check {
    let r = zmod(6).unwrap();
    let i = r.principal_ideal(2);
    let report = verify_spectrum(&r, &i, LIMIT).map_err(|e| e.to_string())?;
    ensure(report.passed(), || report.to_text())?;
    let over = |id: &str| report.get(id).and_then(|c| c.detail.clone()).unwrap_or_default();
    ensure(over("(2).unique-prime").starts_with("1 prime"), || {
        over("(2).unique-prime")
    })?;
    ensure(over("(3).two-primes").starts_with("2 prime"), || over("(3).two-primes"))?;
    let spec6 = duplication(&r, &i)
        .unwrap()
        .ring()
        .spectrum(LIMIT)
        .map_err(|e| e.to_string())?;
    ensure(spec6.primes.len() == 3, || format!("|Spec| = {}", spec6.primes.len()))?;

    let r = zmod(4).unwrap();
    let i = r.principal_ideal(2);
    let report = verify_spectrum(&r, &i, LIMIT).map_err(|e| e.to_string())?;
    ensure(report.passed(), || report.to_text())?;
    let spec4 = duplication(&r, &i)
        .unwrap()
        .ring()
        .spectrum(LIMIT)
        .map_err(|e| e.to_string())?;
    ensure(
        spec4.primes.len() == 1 && !spec4.is_reduced() && spec4.is_local(),
        || {
            format!(
                "|Spec| = {}, reduced {}, local {}",
                spec4.primes.len(),
                spec4.is_reduced(),
                spec4.is_local()
            )
        },
    )?;
    Ok("Zmod(6)/(2): 3 primes (1 + 2); Zmod(4)/(2): 1 prime, non-reduced, local; extension and radical exact".into())
}

fn idealization() -> Check {
    for (n, d) in [(4, 2), (9, 3)] {
        let r = zmod(n).unwrap();
        let report = verify_idealization_coincidence(&r, &r.principal_ideal(d)).map_err(|e| e.to_string())?;
        ensure(report.passed(), || report.to_text())?;
    }
    Ok("Zmod(4)/(2), Zmod(9)/(3): full tables".into())
}

fn sigma_bijection() -> Check {
    let s = sg(&[3, 4, 5]);
    let (_, i) = shifted_canonical(&s).map_err(|e| e.to_string())?;
    let m = DupModel::<F>::build(&s, &i, None).map_err(|e| e.to_string())?;
    let sm = sigma_matrix(&m).map_err(|e| e.to_string())?;
    ensure(sm.well_defined && sm.bijective(), || {
        format!("injective {}, surjective {}", sm.injective, sm.surjective)
    })?;
    let lin = sigma_linearity_check(&m, 64, DEFAULT_SEED);
    ensure(lin.passed(), || lin.to_text())?;
    ensure(
        lin.get("pi-factorization").map(|c| c.verdict) == Some(Verdict::Pass),
        || "no factorization claim".into(),
    )?;

    let control = verify_duplication_pipeline::<F>(&sg(&[2, 3]), &IdealChoice::Maximal, &PipelineConfig::default())
        .map_err(|e| e.to_string())?;
    let stage = control.get("sigma-bijective").ok_or("no sigma stage")?;
    let witness = stage.witness.clone().unwrap_or_default();
    ensure(
        stage.verdict == Verdict::Fail && witness.contains("surjective false") && witness.contains("E − E = ℕ ≠ S"),
        || format!("control: {:?} {witness}", stage.verdict),
    )?;
    Ok(format!(
        "rank {}, 64 linear samples; control ⟨2,3⟩/M fails: E − E = ℕ ≠ S",
        sm.rank
    ))
}

fn divisorial_sampling() -> Check {
    let s = sg(&[3, 4, 5]);
    let (_, i) = shifted_canonical(&s).map_err(|e| e.to_string())?;
    let m = DupModel::<F>::build(&s, &i, None).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for k in 0..100 {
        let gens = random_ideal_generators(&m, &mut rng);
        let r = divisorial_check_dup(&m, &gens).map_err(|e| format!("sample {k}: {e}"))?;
        let stable = r.get("window-stable").map(|c| c.verdict) == Some(Verdict::Pass);
        ensure(r.passed() && stable, || format!("sample {k}: {}", r.to_text()))?;
    }
    Ok("100/100 divisorial, each stable at the doubled window".into())
}

fn gorenstein() -> Check {
    let mut verdicts = Vec::new();
    for s in suite() {
        let r = gorenstein_endpoint(&s).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_text())?;
        verdicts.push(format!("{s}: {}", s.is_symmetric()));
    }
    Ok(verdicts.join(", "))
}

fn cross_engine() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let semigroups = suite();
    let families: Vec<Vec<RelativeIdeal>> = semigroups.iter().map(family).collect();
    for k in 0..50 {
        let which = rng.gen_range(0..semigroups.len());
        let fam = &families[which];
        let e = fam[rng.gen_range(0..fam.len())].translate(rng.gen_range(-4..5));
        let f = fam[rng.gen_range(0..fam.len())].translate(rng.gen_range(-4..5));
        let expected = e.colon(&f).map_err(|x| x.to_string())?;
        let cap = Window::new(e.min() - f.full_from() - 20, e.full_from() - f.min() + 20);
        let got = ModuleWindow::<F>::monomial_ideal(&e)
            .colon(&ModuleWindow::monomial_ideal(&f), cap)
            .map_err(|x| format!("input {k}: {x}"))?;
        for z in got.lo()..got.hi() {
            let ours = got.contains(&[Laurent::monomial(F::one(), z)]);
            ensure(ours == expected.contains(z), || {
                format!(
                    "input {k}: {} − {} at t^{z}: serring {ours}",
                    e.set_notation(),
                    f.set_notation()
                )
            })?;
        }
    }
    Ok("50 inputs".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("duality on the 5 suite semigroups", Duration::from_secs(10), duality),
        (
            "m-canonical certification",
            Duration::from_secs(10),
            canonical_certification,
        ),
        (
            "closure formula over <2,3> and <3,4,5>",
            Duration::from_secs(5),
            closure_formula,
        ),
        (
            "spectrum of Zmod(6)/(2) and Zmod(4)/(2)",
            Duration::from_secs(5),
            spectrum_counts,
        ),
        ("idealization coincidence", Duration::from_secs(5), idealization),
        (
            "sigma bijective and linear, with control",
            Duration::from_secs(30),
            sigma_bijection,
        ),
        (
            "100 sampled ideals divisorial",
            Duration::from_secs(300),
            divisorial_sampling,
        ),
        ("Gorenstein endpoint agreement", Duration::from_secs(10), gorenstein),
        ("cross-engine monomial colons", Duration::from_secs(30), cross_engine),
    ];
    let mut failures = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let status = match (&result, took <= *limit) {
            (Ok(_), true) => "PASS",
            _ => "FAIL",
        };
        if status == "FAIL" {
            failures += 1;
        }
        let info = match &result {
            Ok(s) => s.clone(),
            Err(e) => format!("error: {e}"),
        };
        println!(
            "{status} [{}] {name} ({:.2} s, limit {} s, exact): {info}",
            k + 1,
            took.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
