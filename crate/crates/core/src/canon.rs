//! Verification pipelines over numerical semigroups and duplication models:
//! canonical ideals, divisoriality, and the end-to-end duplication check.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::Scalar;
use crate::numsgp::{
    canonical_of_oversemigroup, is_mcanonical, mcanonical_witness, IdealFamily, NumericalSemigroup, RelativeIdeal,
    SemigroupError, DEFAULT_GAP_LIMIT,
};
use crate::report::{Outcome, Report};
use crate::serring::{
    divisorial_check_dup, endomorphism_witness, pi_basis_check, random_ideal_generators, sigma_linearity_check,
    sigma_matrix, DupModel, SerError, Window,
};

/// Base semigroups used by the suites, symmetric and non-symmetric.
pub const SUITE: [&[i64]; 5] = [&[2, 3], &[3, 4, 5], &[3, 5, 7], &[4, 6, 9], &[5, 6, 7, 8, 9]];

pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_LINEARITY_SAMPLES: usize = 64;
pub const DEFAULT_SEED: u64 = 20_240_101;

/// Attached to every duplication pipeline report.
pub const HYPOTHESIS_NOTE: &str = "hypothesis certified at rank 1; conclusion sampled";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Series(#[from] SerError),
    #[error("rejected: {0}")]
    Trivial(String),
}

pub type Result<T> = std::result::Result<T, CanonError>;

pub fn suite() -> Vec<Arc<NumericalSemigroup>> {
    SUITE
        .iter()
        .map(|g| Arc::new(NumericalSemigroup::new(g).expect("suite semigroups are valid")))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum CanonVerdict {
    MCanonical,
    Fails { witness: RelativeIdeal },
}

#[derive(Debug, Clone)]
pub struct CanonCertificate {
    pub semigroup: Arc<NumericalSemigroup>,
    pub ideal: RelativeIdeal,
    pub checked_family_size: usize,
    pub verdict: CanonVerdict,
}

impl CanonCertificate {
    pub fn is_mcanonical(&self) -> bool {
        self.verdict == CanonVerdict::MCanonical
    }
}

/// Tests `E − (E − J) = J` for every normalized relative ideal `J`.
pub fn certify(e: &RelativeIdeal) -> Result<CanonCertificate> {
    let family = IdealFamily::enumerate(e.semigroup(), DEFAULT_GAP_LIMIT)?;
    let verdict = match mcanonical_witness(e, DEFAULT_GAP_LIMIT)? {
        None => CanonVerdict::MCanonical,
        Some(witness) => CanonVerdict::Fails { witness },
    };
    Ok(CanonCertificate {
        semigroup: Arc::clone(e.semigroup()),
        ideal: e.clone(),
        checked_family_size: family.len(),
        verdict,
    })
}

/// All normalized relative ideals that are m-canonical.
pub fn find_canonical(sg: &Arc<NumericalSemigroup>) -> Result<Vec<RelativeIdeal>> {
    let family = IdealFamily::enumerate(sg, DEFAULT_GAP_LIMIT)?;
    let mut out = Vec::new();
    for e in family.members {
        if is_mcanonical(&e)? {
            out.push(e);
        }
    }
    Ok(out)
}

/// Smallest `s₀ ∈ S` with `s₀ + E ⊆ S`, and `s₀ + E`.
pub fn integralize(e: &RelativeIdeal) -> Result<(i64, RelativeIdeal)> {
    let s0 = e.integral_shift();
    let shifted = e.translate(s0);
    if is_mcanonical(e)? != is_mcanonical(&shifted)? {
        return Err(SerError::PrecisionUnsound(format!("m-canonicity changed under translation by {s0}")).into());
    }
    Ok((s0, shifted))
}

/// `K − (K − J) = J` over the whole family.
pub fn duality_report(sg: &Arc<NumericalSemigroup>) -> Result<Report> {
    let family = IdealFamily::enumerate(sg, DEFAULT_GAP_LIMIT)?;
    let k = RelativeIdeal::canonical(sg);
    let mut report = Report::new("duality", sg.to_string());
    let mut bad = None;
    for j in &family.members {
        let closure = j.divisorial_closure(&k)?;
        if closure != *j {
            bad = Some(format!(
                "J = {}, K − (K − J) = {}",
                j.set_notation(),
                closure.set_notation()
            ));
            break;
        }
    }
    report.record(
        "duality",
        "K − (K − J) = J for every relative ideal J",
        Outcome::check(bad.is_none(), format!("{} ideals", family.len()), || {
            bad.clone().unwrap()
        }),
    );
    Ok(report)
}

/// Exactly one normalized m-canonical ideal, equal to `K(S)`; it is `S` when
/// `S` is symmetric and satisfies `K − K = S`.
pub fn canonical_report(sg: &Arc<NumericalSemigroup>) -> Result<Report> {
    let found = find_canonical(sg)?;
    let k = RelativeIdeal::canonical(sg);
    let mut report = Report::new("canonical", sg.to_string());
    let listing: Vec<String> = found.iter().map(|e| e.set_notation()).collect();
    report.record(
        "unique",
        "exactly one normalized m-canonical ideal, equal to K(S)",
        Outcome::check(
            found.len() == 1 && found[0] == k,
            format!("found {}", listing.join("; ")),
            || format!("K(S) = {}", k.set_notation()),
        ),
    );
    let unit = RelativeIdeal::unit(sg);
    report.record(
        "symmetric-endpoint",
        "K(S) = S exactly when S is symmetric",
        Outcome::check(
            (k == unit) == sg.is_symmetric(),
            format!("symmetric = {}", sg.is_symmetric()),
            || format!("K(S) = {}", k.set_notation()),
        ),
    );
    let endo = k.colon(&k)?;
    report.record(
        "endomorphisms",
        "K − K = S",
        Outcome::check(endo == unit, "", || format!("K − K = {}", endo.set_notation())),
    );
    Ok(report)
}

/// Translates of a relative ideal used where the claims quantify over all
/// fractional ideals rather than over normalized ones.
fn shifts(sg: &NumericalSemigroup) -> std::ops::RangeInclusive<i64> {
    let c = sg.conductor().max(1);
    -c..=c
}

/// The closure formula, closure of divisorial ideals under intersection,
/// divisoriality of `W − (W − E)` for divisorial `W`, and
/// `W − (E ∪ F) = (W − E) ∩ (W − F)`, over the enumerated family.
pub fn run_claim_suite(sg: &Arc<NumericalSemigroup>) -> Result<Report> {
    let family = IdealFamily::enumerate(sg, DEFAULT_GAP_LIMIT)?;
    let members = &family.members;
    let unit = RelativeIdeal::unit(sg);
    let mut report = Report::new("claims", sg.to_string());

    let mut bad = None;
    let mut count = 0;
    'outer: for w in members {
        for e in members {
            count += 1;
            let lhs = e.divisorial_closure_via_intersection(w)?;
            let rhs = e.divisorial_closure(w)?;
            if lhs != rhs {
                bad = Some(format!(
                    "E = {}, W = {}: intersection {} vs W − (W − E) = {}",
                    e.set_notation(),
                    w.set_notation(),
                    lhs.set_notation(),
                    rhs.set_notation()
                ));
                break 'outer;
            }
        }
    }
    report.record(
        "closure-formula",
        "W − (W − E) is the intersection of the translates of W containing E",
        Outcome::check(bad.is_none(), format!("{count} pairs"), || bad.clone().unwrap()),
    );

    let divisorial: Vec<&RelativeIdeal> = members
        .iter()
        .filter(|e| e.is_divisorial(&unit).unwrap_or(false))
        .collect();
    let mut bad = None;
    let mut count = 0;
    'outer: for a in &divisorial {
        for b in &divisorial {
            for t in shifts(sg) {
                count += 1;
                let meet = a.intersect(&b.translate(t))?;
                if !meet.is_divisorial(&unit)? {
                    bad = Some(format!(
                        "{} ∩ ({t} + {}) = {}",
                        a.set_notation(),
                        b.set_notation(),
                        meet.set_notation()
                    ));
                    break 'outer;
                }
            }
        }
    }
    report.record(
        "intersection",
        "an intersection of divisorial ideals is divisorial",
        Outcome::check(
            bad.is_none(),
            format!("{count} intersections of {} divisorial ideals", divisorial.len()),
            || bad.clone().unwrap(),
        ),
    );

    let mut bad = None;
    let mut count = 0;
    'outer: for w in &divisorial {
        for e in members {
            count += 1;
            let closure = e.divisorial_closure(w)?;
            if !closure.is_divisorial(&unit)? {
                bad = Some(format!(
                    "W = {}, E = {}: W − (W − E) = {}",
                    w.set_notation(),
                    e.set_notation(),
                    closure.set_notation()
                ));
                break 'outer;
            }
        }
    }
    report.record(
        "closure-divisorial",
        "W − (W − E) is divisorial when W is",
        Outcome::check(bad.is_none(), format!("{count} pairs"), || bad.clone().unwrap()),
    );

    let mut bad = None;
    let mut count = 0;
    'outer: for w in members {
        for e in members {
            for f in members {
                for t in shifts(sg) {
                    count += 1;
                    let f = f.translate(t);
                    let lhs = w.colon(&e.sum(&f)?)?;
                    let rhs = w.colon(e)?.intersect(&w.colon(&f)?)?;
                    if lhs != rhs {
                        bad = Some(format!(
                            "W = {}, E = {}, F = {}",
                            w.set_notation(),
                            e.set_notation(),
                            f.set_notation()
                        ));
                        break 'outer;
                    }
                }
            }
        }
    }
    report.record(
        "colon-of-sum",
        "W − (E ∪ F) = (W − E) ∩ (W − F)",
        Outcome::check(bad.is_none(), format!("{count} triples"), || bad.clone().unwrap()),
    );
    Ok(report)
}

/// Symmetric, principal m-canonical ideal, and every relative ideal
/// divisorial: the three verdicts must agree.
pub fn gorenstein_endpoint(sg: &Arc<NumericalSemigroup>) -> Result<Report> {
    let family = IdealFamily::enumerate(sg, DEFAULT_GAP_LIMIT)?;
    let unit = RelativeIdeal::unit(sg);
    let symmetric = sg.is_symmetric();
    let principal = mcanonical_witness(&unit, DEFAULT_GAP_LIMIT)?;
    let mut non_divisorial = None;
    for e in &family.members {
        if !e.is_divisorial(&unit)? {
            non_divisorial = Some(e.clone());
            break;
        }
    }
    let mut report = Report::new("gorenstein", sg.to_string());
    let show = |v: bool, w: &Option<RelativeIdeal>| match w {
        Some(e) => format!("{v} (witness {})", e.set_notation()),
        None => v.to_string(),
    };
    let gaps = sg.gaps();
    let sym_witness = gaps
        .iter()
        .find(|&&z| !sg.contains(sg.frobenius() - z))
        .map(|&z| format!("{v} (gap {z} with F − {z} also a gap)", v = symmetric));
    report.record(
        "symmetric",
        "S is symmetric",
        Outcome::pass(sym_witness.unwrap_or_else(|| symmetric.to_string())),
    );
    report.record(
        "principal-canonical",
        "S has a principal m-canonical ideal",
        Outcome::pass(show(principal.is_none(), &principal)),
    );
    report.record(
        "all-divisorial",
        "every relative ideal is divisorial",
        Outcome::pass(show(non_divisorial.is_none(), &non_divisorial)),
    );
    let agree = symmetric == principal.is_none() && symmetric == non_divisorial.is_none();
    report.record(
        "agree",
        "the three conditions are equivalent",
        Outcome::check(agree, format!("all {symmetric}"), || {
            format!(
                "symmetric {symmetric}, principal {}, all divisorial {}",
                principal.is_none(),
                non_divisorial.is_none()
            )
        }),
    );
    Ok(report)
}

/// Which monomial ideal `I` the duplication is built from.
#[derive(Debug, Clone)]
pub enum IdealChoice {
    /// `s₀ + K(S)`, shifted further by the multiplicity if that gives `S`.
    ShiftedCanonical,
    Maximal,
    Explicit(RelativeIdeal),
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub window: Option<Window>,
    pub samples: usize,
    pub linearity_samples: usize,
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            window: None,
            samples: DEFAULT_SAMPLES,
            linearity_samples: DEFAULT_LINEARITY_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

/// The ideal used when `I` is the shifted canonical ideal.
pub fn shifted_canonical(sg: &Arc<NumericalSemigroup>) -> Result<(i64, RelativeIdeal)> {
    let k = RelativeIdeal::canonical(sg);
    let (mut s0, mut e) = integralize(&k)?;
    if e == RelativeIdeal::unit(sg) {
        s0 += sg.multiplicity();
        e = k.translate(s0);
    }
    Ok((s0, e))
}

/// The end-to-end duplication pipeline over the field `F`:
/// (1) `K` is m-canonical, (2) integral shift, (3) model, (4) `σ` bijective
/// and linear, (5) `π` is a basis, (6) sampled regular ideals of `D` are
/// divisorial. A precision failure is returned as an error.
pub fn verify_duplication_pipeline<F: Scalar>(
    sg: &Arc<NumericalSemigroup>,
    choice: &IdealChoice,
    config: &PipelineConfig,
) -> Result<Report> {
    if sg.is_full() {
        return Err(CanonError::Trivial(format!("{sg} has no proper nonzero ideal")));
    }
    let mut report = Report::new("pipeline", format!("{sg} I = {choice:?}"))
        .with_seed(config.seed)
        .with_note(HYPOTHESIS_NOTE);

    let k = RelativeIdeal::canonical(sg);
    let cert = certify(&k)?;
    report.stage("canonical", "K(S) is an m-canonical ideal", || {
        let detail = format!("K = {}, {} ideals checked", k.set_notation(), cert.checked_family_size);
        match &cert.verdict {
            CanonVerdict::MCanonical => Outcome::pass(detail),
            CanonVerdict::Fails { witness } => Outcome::fail(format!("J = {}", witness.set_notation())),
        }
    });

    let mut ideal = None;
    let mut integral_error = None;
    report.stage("integral-ideal", "a translate of the ideal lies in S", || {
        let picked = match choice {
            IdealChoice::ShiftedCanonical => shifted_canonical(sg).map(|(s0, e)| (format!("s0 = {s0}"), e)),
            IdealChoice::Maximal => Ok(("I = M".to_string(), RelativeIdeal::maximal(sg))),
            IdealChoice::Explicit(e) => Ok(("I given".to_string(), e.clone())),
        };
        match picked {
            Ok((how, e)) => {
                let canonical = is_mcanonical(&e).unwrap_or(false);
                let detail = format!("{how}, I = {}, m-canonical = {canonical}", e.set_notation());
                ideal = Some(e);
                Outcome::pass(detail)
            }
            Err(err) => {
                let msg = err.to_string();
                integral_error = Some(err);
                Outcome::fail(msg)
            }
        }
    });
    if let Some(err) = integral_error {
        if matches!(err, CanonError::Series(SerError::PrecisionUnsound(_))) {
            return Err(err);
        }
    }

    let mut model: Option<DupModel<F>> = None;
    report.stage("model", "series model of R, I and R⋈I", || {
        let e = ideal.as_ref().expect("stage 2 passed");
        match DupModel::<F>::build(sg, e, config.window) {
            Ok(m) => {
                let detail = m.descriptor();
                model = Some(m);
                Outcome::pass(detail)
            }
            Err(err) => Outcome::fail(err.to_string()),
        }
    });
    if let Some(m) = &model {
        report.window = Some(m.cap());
        report.instance = m.descriptor();
    }

    report.stage(
        "sigma-bijective",
        "sigma : R⋈I → Hom_R(R⋈I, I) is a bijective linear map",
        || {
            let m = model.as_ref().expect("stage 3 passed");
            let sm = match sigma_matrix(m) {
                Ok(sm) => sm,
                Err(err) => return Outcome::fail(err.to_string()),
            };
            if !sm.bijective() {
                let mut witness = format!(
                    "well-defined {}, injective {}, surjective {} (codimension {}); ",
                    sm.well_defined,
                    sm.injective,
                    sm.surjective,
                    sm.deficit()
                );
                witness.push_str(&endomorphism_witness(m.ideal()));
                return Outcome::fail(witness);
            }
            let lin = sigma_linearity_check(m, config.linearity_samples, config.seed);
            if lin.failed() {
                let first = lin
                    .stages
                    .iter()
                    .find(|c| c.verdict == crate::report::Verdict::Fail)
                    .unwrap();
                return Outcome::fail(format!("{}: {}", first.id, first.witness.clone().unwrap_or_default()));
            }
            Outcome::pass(format!(
                "rank {} = dim D = dim Hom below t^{}; linear on {} samples",
                sm.rank, sm.window.hi, config.linearity_samples
            ))
        },
    );

    report.stage("pi-basis", "pi is a free generator of Hom_R(R⋈I, I)", || {
        let m = model.as_ref().expect("stage 3 passed");
        match pi_basis_check(m) {
            Ok(r) if r.passed() => Outcome::pass("D·pi = Hom, annihilator 0"),
            Ok(r) => Outcome::fail(r.to_text()),
            Err(err) => Outcome::fail(err.to_string()),
        }
    });

    let mut unsound = None;
    report.stage(
        "divisorial-sample",
        "sampled regular fractional ideals of R⋈I are divisorial",
        || {
            let m = model.as_ref().expect("stage 3 passed");
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            for k in 0..config.samples {
                let gens = random_ideal_generators(m, &mut rng);
                match divisorial_check_dup(m, &gens) {
                    Ok(r) if r.passed() => {}
                    Ok(r) => return Outcome::fail(format!("sample {k}: {}", r.to_text())),
                    Err(err @ SerError::PrecisionUnsound(_)) => {
                        unsound = Some(err);
                        return Outcome::fail(format!("sample {k}: precision unsound"));
                    }
                    Err(err) => return Outcome::fail(format!("sample {k}: {err}")),
                }
            }
            Outcome::pass(format!(
                "{n}/{n} divisorial, stable under window enlargement",
                n = config.samples
            ))
        },
    );
    if let Some(err) = unsound {
        return Err(err.into());
    }
    Ok(report)
}

/// For every oversemigroup `S'`, `K(S) − S'` is m-canonical over `S'`.
pub fn verify_oversemigroup_canonical(sg: &Arc<NumericalSemigroup>) -> Result<Report> {
    let mut report = Report::new("oversemigroup", sg.to_string());
    for over in sg.oversemigroups() {
        let over = Arc::new(over);
        let c = canonical_of_oversemigroup(sg, &over)?;
        let witness = mcanonical_witness(&c, DEFAULT_GAP_LIMIT)?;
        let normalized = c.normalized().1;
        let k_over = RelativeIdeal::canonical(&over);
        report.record(
            &over.to_string(),
            "K − S' is an m-canonical ideal of S'",
            Outcome::check(
                witness.is_none(),
                format!(
                    "K − S' = {}, translate of K(S') = {}",
                    c.set_notation(),
                    normalized == k_over
                ),
                || format!("J = {}", witness.as_ref().unwrap().set_notation()),
            ),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    fn sg(g: &[i64]) -> Arc<NumericalSemigroup> {
        Arc::new(NumericalSemigroup::new(g).unwrap())
    }

    #[test]
    fn canonical_ideals_found() {
        let s = sg(&[2, 3]);
        assert_eq!(find_canonical(&s).unwrap(), vec![RelativeIdeal::unit(&s)]);
        let s = sg(&[3, 4, 5]);
        let found = find_canonical(&s).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].set_notation(), "{0,1} ∪ [3,∞)");
        let s = sg(&[1]);
        assert_eq!(find_canonical(&s).unwrap(), vec![RelativeIdeal::unit(&s)]);
    }

    #[test]
    fn integral_shifts() {
        let s = sg(&[3, 4, 5]);
        let (s0, e) = integralize(&RelativeIdeal::canonical(&s)).unwrap();
        assert_eq!(s0, 3);
        assert_eq!(e.set_notation(), "{3,4} ∪ [6,∞)");
        assert_eq!(integralize(&RelativeIdeal::unit(&s)).unwrap().0, 0);
        let s = sg(&[2, 3]);
        assert_eq!(integralize(&RelativeIdeal::canonical(&s)).unwrap().0, 0);
        assert_eq!(shifted_canonical(&s).unwrap().0, 2);
    }

    #[test]
    fn suites_pass() {
        for s in suite() {
            for r in [
                duality_report(&s).unwrap(),
                canonical_report(&s).unwrap(),
                gorenstein_endpoint(&s).unwrap(),
                verify_oversemigroup_canonical(&s).unwrap(),
            ] {
                assert!(r.passed(), "{}", r.to_text());
            }
        }
        for g in [&[2, 3][..], &[3, 4, 5]] {
            let r = run_claim_suite(&sg(g)).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn endpoint_witness_for_345() {
        let r = gorenstein_endpoint(&sg(&[3, 4, 5])).unwrap();
        assert!(r
            .get("all-divisorial")
            .unwrap()
            .detail
            .as_deref()
            .unwrap()
            .starts_with("false"));
        assert!(r
            .get("symmetric")
            .unwrap()
            .detail
            .as_deref()
            .unwrap()
            .starts_with("false"));
    }

    #[test]
    fn pipeline_and_control() {
        let config = PipelineConfig {
            samples: 6,
            linearity_samples: 6,
            ..Default::default()
        };
        let r =
            verify_duplication_pipeline::<Fp<101>>(&sg(&[3, 4, 5]), &IdealChoice::ShiftedCanonical, &config).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.stages.len(), 6);
        assert_eq!(r.note.as_deref(), Some(HYPOTHESIS_NOTE));

        let r = verify_duplication_pipeline::<Fp<101>>(&sg(&[2, 3]), &IdealChoice::Maximal, &config).unwrap();
        let stage4 = &r.stages[3];
        assert_eq!(stage4.verdict, crate::report::Verdict::Fail, "{}", r.to_text());
        assert!(stage4.witness.as_deref().unwrap().contains("E − E = ℕ ≠ S"));
        assert!(r.stages[4..]
            .iter()
            .all(|c| c.verdict == crate::report::Verdict::Skipped));

        assert!(matches!(
            verify_duplication_pipeline::<Fp<101>>(&sg(&[1]), &IdealChoice::ShiftedCanonical, &config),
            Err(CanonError::Trivial(_))
        ));
    }
}
