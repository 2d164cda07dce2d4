use std::sync::Arc;
use std::time::Instant;

use serde_json::json;

use duplab::canon::{self, CanonError, IdealChoice, PipelineConfig};
use duplab::finring::{self, FinError, FiniteRing, DEFAULT_SIZE_LIMIT};
use duplab::numsgp::{self, IdealFamily, NumericalSemigroup, RelativeIdeal, SemigroupError};
use duplab::report::Report;
use duplab::serring::{self, DupModel, PairElement, SerError};
use duplab::{BigRational, Fp, Scalar};

use crate::args::{
    ClaimId, Command, DupAction, DupArgs, FinringAction, Flags, IdealAction, NamedIdeal, SgpAction, VerifyArgs,
};
use crate::output::{CliError, Run, Timed};

pub const PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 101, 1009, 32003, 65521];

type CliResult<T> = Result<T, CliError>;

impl From<SemigroupError> for CliError {
    fn from(e: SemigroupError) -> Self {
        match e {
            SemigroupError::GapLimit { .. } | SemigroupError::MismatchedSemigroups => CliError::Engine(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<FinError> for CliError {
    fn from(e: FinError) -> Self {
        match e {
            FinError::SizeLimit { .. } | FinError::Inconsistent(_) | FinError::Axioms(_) => {
                CliError::Engine(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SerError> for CliError {
    fn from(e: SerError) -> Self {
        match e {
            SerError::PrecisionUnsound(_) => CliError::Unsound(e.to_string()),
            SerError::NotIntegral { .. } | SerError::TrivialIdeal => CliError::Usage(e.to_string()),
            SerError::Semigroup(s) => s.into(),
            _ => CliError::Engine(e.to_string()),
        }
    }
}

impl From<CanonError> for CliError {
    fn from(e: CanonError) -> Self {
        match e {
            CanonError::Semigroup(s) => s.into(),
            CanonError::Series(s) => s.into(),
            CanonError::Trivial(_) => CliError::Usage(e.to_string()),
        }
    }
}

fn timed(f: impl FnOnce() -> CliResult<Report>) -> CliResult<Timed> {
    let start = Instant::now();
    let report = f()?;
    Ok(Timed {
        report,
        ms: start.elapsed().as_millis() as u64,
    })
}

fn semigroup(text: &str) -> CliResult<Arc<NumericalSemigroup>> {
    Ok(Arc::new(numsgp::parse_semigroup(text)?))
}

fn relative_ideal(sg: &Arc<NumericalSemigroup>, text: &str) -> CliResult<RelativeIdeal> {
    Ok(numsgp::parse_relative_ideal(sg, text)?)
}

fn ideal_choice(sg: &Arc<NumericalSemigroup>, text: Option<&str>) -> CliResult<IdealChoice> {
    Ok(match text.map(str::trim) {
        None | Some("K") => IdealChoice::ShiftedCanonical,
        Some("M") => IdealChoice::Maximal,
        Some(t) => IdealChoice::Explicit(relative_ideal(sg, t)?),
    })
}

fn resolve(sg: &Arc<NumericalSemigroup>, choice: &IdealChoice) -> CliResult<RelativeIdeal> {
    Ok(match choice {
        IdealChoice::ShiftedCanonical => canon::shifted_canonical(sg)?.1,
        IdealChoice::Maximal => RelativeIdeal::maximal(sg),
        IdealChoice::Explicit(e) => e.clone(),
    })
}

fn semigroups_or_suite(text: Option<&str>) -> CliResult<Vec<Arc<NumericalSemigroup>>> {
    match text {
        Some(t) => Ok(vec![semigroup(t)?]),
        None => Ok(canon::suite()),
    }
}

/// Runs `$f::<F>(args)` with `F` the field selected by `--prime`.
macro_rules! with_field {
    ($prime:expr, $f:ident ( $($arg:expr),* )) => {
        match $prime {
            0 => $f::<BigRational>($($arg),*),
            2 => $f::<Fp<2>>($($arg),*),
            3 => $f::<Fp<3>>($($arg),*),
            5 => $f::<Fp<5>>($($arg),*),
            7 => $f::<Fp<7>>($($arg),*),
            11 => $f::<Fp<11>>($($arg),*),
            13 => $f::<Fp<13>>($($arg),*),
            101 => $f::<Fp<101>>($($arg),*),
            1009 => $f::<Fp<1009>>($($arg),*),
            32003 => $f::<Fp<32003>>($($arg),*),
            65521 => $f::<Fp<65521>>($($arg),*),
            p => Err(CliError::Usage(format!(
                "unsupported prime {p}; use 0 (rationals) or one of {:?}",
                PRIMES
            ))),
        }
    };
}

pub fn execute(command: &Command, flags: &Flags) -> CliResult<Run> {
    match command {
        Command::Sgp { action } => sgp(action),
        Command::Ideal { action } => ideal(action),
        Command::Finring { action } => finring_cmd(action),
        Command::Dup { action } => dup(action, flags),
        Command::Verify(args) => verify(args, flags),
        Command::Batch { .. } => Err(CliError::Usage("batch manifests cannot nest".into())),
    }
}

fn sgp(action: &SgpAction) -> CliResult<Run> {
    match action {
        SgpAction::Info { sgp } => {
            let s = semigroup(sgp)?;
            let k = RelativeIdeal::canonical(&s);
            let overs = s.oversemigroups();
            let data = json!({
                "semigroup": s.to_string(),
                "generators": s.generators(),
                "multiplicity": s.multiplicity(),
                "frobenius": s.frobenius(),
                "conductor": s.conductor(),
                "gaps": s.gaps(),
                "genus": s.gaps().len(),
                "symmetric": s.is_symmetric(),
                "canonical": k.to_string(),
                "canonical_set": k.set_notation(),
                "oversemigroups": overs.len(),
            });
            let text = format!(
                "{s}\n  multiplicity {}\n  frobenius {}\n  conductor {}\n  gaps {:?}\n  symmetric {}\n  canonical {} = {}\n  oversemigroups {}\n",
                s.multiplicity(),
                s.frobenius(),
                s.conductor(),
                s.gaps(),
                s.is_symmetric(),
                k,
                k.set_notation(),
                overs.len()
            );
            Ok(Run {
                data: Some(data),
                text: Some(text),
                ..Default::default()
            })
        }
        SgpAction::Ideals { sgp } => {
            let s = semigroup(sgp)?;
            let family = IdealFamily::enumerate(&s, numsgp::DEFAULT_GAP_LIMIT)?;
            let unit = RelativeIdeal::unit(&s);
            let mut rows = Vec::new();
            let mut text = format!("{s}: {} relative ideals with minimum 0\n", family.len());
            for e in &family.members {
                let div = e.is_divisorial(&unit)?;
                text.push_str(&format!("  {}  {}  divisorial {div}\n", e, e.set_notation()));
                rows.push(json!({"ideal": e.to_string(), "set": e.set_notation(), "divisorial": div}));
            }
            Ok(Run {
                data: Some(json!({"semigroup": s.to_string(), "ideals": rows})),
                text: Some(text),
                ..Default::default()
            })
        }
        SgpAction::Oversemigroups { sgp } => {
            let s = semigroup(sgp)?;
            let list: Vec<String> = s.oversemigroups().iter().map(|o| o.to_string()).collect();
            let text = list.iter().map(|l| format!("  {l}\n")).collect::<String>();
            Ok(Run {
                data: Some(json!({"semigroup": s.to_string(), "oversemigroups": list})),
                text: Some(format!("{s}: {} oversemigroups\n{text}", list.len())),
                ..Default::default()
            })
        }
    }
}

fn ideal(action: &IdealAction) -> CliResult<Run> {
    let show = |label: &str, e: &RelativeIdeal| {
        let text = format!("{label} {} = {}\n", e, e.set_notation());
        let data = json!({label: e.to_string(), "set": e.set_notation(), "min": e.min(), "full_from": e.full_from()});
        Ok(Run {
            data: Some(data),
            text: Some(text),
            ..Default::default()
        })
    };
    match action {
        IdealAction::Show { sgp, ideal } => {
            let s = semigroup(sgp)?;
            show("ideal", &relative_ideal(&s, ideal)?)
        }
        IdealAction::Colon { sgp, e, f } => {
            let s = semigroup(sgp)?;
            let (e, f) = (relative_ideal(&s, e)?, relative_ideal(&s, f)?);
            show("colon", &e.colon(&f)?)
        }
        IdealAction::Closure { sgp, over, ideal } => {
            let s = semigroup(sgp)?;
            let e = relative_ideal(&s, ideal)?;
            let w = match over {
                Some(w) => relative_ideal(&s, w)?,
                None => RelativeIdeal::unit(&s),
            };
            show("closure", &e.divisorial_closure(&w)?)
        }
        IdealAction::Mcanonical { sgp, ideal } => {
            let s = semigroup(sgp)?;
            let e = relative_ideal(&s, ideal)?;
            let cert = canon::certify(&e)?;
            let (verdict, witness) = match &cert.verdict {
                canon::CanonVerdict::MCanonical => (true, None),
                canon::CanonVerdict::Fails { witness } => (false, Some(witness.set_notation())),
            };
            let text = format!(
                "{} m-canonical {verdict} ({} ideals checked){}\n",
                e,
                cert.checked_family_size,
                witness
                    .as_ref()
                    .map(|w| format!(", witness J = {w}"))
                    .unwrap_or_default()
            );
            let data = json!({"ideal": e.to_string(), "mcanonical": verdict, "checked": cert.checked_family_size, "witness": witness});
            Ok(Run {
                data: Some(data),
                text: Some(text),
                ..Default::default()
            })
        }
    }
}

fn ring_and_ideal(ring: &str, ideal: &str) -> CliResult<(FiniteRing, finring::FiniteIdeal)> {
    let r = finring::parse_ring(ring)?;
    let i = finring::parse_ideal(&r, ideal)?;
    Ok((r, i))
}

fn finring_cmd(action: &FinringAction) -> CliResult<Run> {
    match action {
        FinringAction::Spec { ring } => {
            let r = finring::parse_ring(ring)?;
            let spec = r.spectrum(DEFAULT_SIZE_LIMIT)?;
            let primes: Vec<String> = spec.primes.iter().map(|p| r.describe_ideal(p)).collect();
            let minimal: Vec<String> = spec.minimal_primes.iter().map(|p| r.describe_ideal(p)).collect();
            let text = format!(
                "{r}\n  primes {}\n  minimal primes {}\n  nilradical {}\n  reduced {}\n  local {}\n",
                primes.join(" "),
                minimal.join(" "),
                r.describe_ideal(&spec.nilradical),
                spec.is_reduced(),
                spec.is_local()
            );
            let data = json!({
                "ring": r.to_string(),
                "primes": primes,
                "minimal_primes": minimal,
                "nilradical": r.describe_ideal(&spec.nilradical),
                "reduced": spec.is_reduced(),
                "local": spec.is_local(),
            });
            Ok(Run {
                data: Some(data),
                text: Some(text),
                ..Default::default()
            })
        }
        FinringAction::Ideals { ring } => {
            let r = finring::parse_ring(ring)?;
            let ideals: Vec<String> = r
                .enumerate_ideals(DEFAULT_SIZE_LIMIT)?
                .iter()
                .map(|j| r.describe_ideal(j))
                .collect();
            Ok(Run {
                text: Some(format!("{r}: {}\n", ideals.join(" "))),
                data: Some(json!({"ring": r.to_string(), "ideals": ideals})),
                ..Default::default()
            })
        }
        FinringAction::Dup { ring, ideal } => {
            let (r, i) = ring_and_ideal(ring, ideal)?;
            let dup = finring::duplication(&r, &i)?;
            let d = dup.ring();
            let spec = d.spectrum(DEFAULT_SIZE_LIMIT.max(d.size()))?;
            let primes: Vec<String> = spec.primes.iter().map(|p| p.display(d)).collect();
            let text = format!(
                "{}\n  size {}\n  primes {}\n  reduced {}\n  local {}\n",
                d,
                d.size(),
                primes.join(" "),
                spec.is_reduced(),
                spec.is_local()
            );
            let data = json!({"ring": d.to_string(), "size": d.size(), "primes": primes, "reduced": spec.is_reduced(), "local": spec.is_local()});
            Ok(Run {
                data: Some(data),
                text: Some(text),
                ..Default::default()
            })
        }
    }
}

fn build_model<F: Scalar>(args: &DupArgs, flags: &Flags) -> CliResult<DupModel<F>> {
    let s = semigroup(&args.sgp)?;
    let choice = ideal_choice(&s, Some(&args.ideal))?;
    let e = resolve(&s, &choice)?;
    Ok(DupModel::build(&s, &e, flags.window)?)
}

fn dup_info<F: Scalar>(args: &DupArgs, flags: &Flags) -> CliResult<Run> {
    let m = build_model::<F>(args, flags)?;
    let sm = serring::sigma_matrix(&m)?;
    let h = sm.window.hi;
    let e = m.ideal();
    let endo = e.colon(e)?;
    let data = json!({
        "model": m.descriptor(),
        "ideal": e.set_notation(),
        "windows": {
            "R": m.r_window().window().to_string(),
            "I": m.i_window().window().to_string(),
            "D": m.d_window().window().to_string(),
            "Hom": m.hom().coords.window().to_string(),
        },
        "dims_below": h,
        "dim_D": m.d_window().dim_below(h),
        "dim_Hom": m.hom().coords.dim_below(h),
        "end_I": endo.set_notation(),
        "sigma": {"well_defined": sm.well_defined, "injective": sm.injective, "surjective": sm.surjective, "codimension": sm.deficit()},
    });
    let text = format!(
        "{}\n  I = {}\n  I − I = {}\n  below t^{h}: dim D = {}, dim Hom = {}\n  sigma: well-defined {}, injective {}, surjective {}, codimension {}\n",
        m.descriptor(),
        e.set_notation(),
        endo.set_notation(),
        m.d_window().dim_below(h),
        m.hom().coords.dim_below(h),
        sm.well_defined,
        sm.injective,
        sm.surjective,
        sm.deficit()
    );
    Ok(Run {
        data: Some(data),
        text: Some(text),
        ..Default::default()
    })
}

fn dup_sigma<F: Scalar>(args: &DupArgs, flags: &Flags) -> CliResult<Run> {
    let m = build_model::<F>(args, flags)?;
    let bij = timed(|| Ok(serring::sigma_bijectivity_check(&m)?))?;
    let lin = timed(|| {
        Ok(serring::sigma_linearity_check(
            &m,
            canon::DEFAULT_LINEARITY_SAMPLES,
            flags.seed,
        ))
    })?;
    let pi = timed(|| Ok(serring::pi_basis_check(&m)?))?;
    Ok(Run {
        reports: vec![bij, lin, pi],
        ..Default::default()
    })
}

fn named_generators<F: Scalar>(m: &DupModel<F>, which: NamedIdeal) -> Vec<PairElement<F>> {
    match which {
        NamedIdeal::Unit => m.unit_generators(),
        NamedIdeal::O1 => m.o1_generators(),
        NamedIdeal::O2 => m.o2_generators(),
        NamedIdeal::Maximal => m.maximal_ideal_generators(),
    }
}

fn dup_adjoint<F: Scalar>(args: &DupArgs, which: NamedIdeal, flags: &Flags) -> CliResult<Run> {
    let m = build_model::<F>(args, flags)?;
    let gens = named_generators(&m, which);
    let r = timed(|| Ok(serring::adjointness_dimension_check(&m, &gens)?))?;
    Ok(Run {
        reports: vec![r],
        ..Default::default()
    })
}

fn dup(action: &DupAction, flags: &Flags) -> CliResult<Run> {
    match action {
        DupAction::Info(args) => with_field!(flags.prime, dup_info(args, flags)),
        DupAction::Sigma(args) => with_field!(flags.prime, dup_sigma(args, flags)),
        DupAction::Adjoint { dup, module } => with_field!(flags.prime, dup_adjoint(dup, *module, flags)),
    }
}

fn run_pipeline<F: Scalar>(args: &VerifyArgs, flags: &Flags) -> CliResult<Run> {
    let text = args
        .sgp
        .as_deref()
        .ok_or_else(|| CliError::Usage("pipeline needs --sgp".into()))?;
    let s = semigroup(text)?;
    let choice = ideal_choice(&s, args.ideal.as_deref())?;
    let config = PipelineConfig {
        window: flags.window,
        samples: flags.samples,
        seed: flags.seed,
        ..Default::default()
    };
    let r = timed(|| Ok(canon::verify_duplication_pipeline::<F>(&s, &choice, &config)?))?;
    Ok(Run {
        reports: vec![r],
        ..Default::default()
    })
}

fn series_args(args: &VerifyArgs) -> CliResult<DupArgs> {
    Ok(DupArgs {
        sgp: args
            .sgp
            .clone()
            .ok_or_else(|| CliError::Usage("this claim needs --sgp".into()))?,
        ideal: args.ideal.clone().unwrap_or_else(|| "K".into()),
    })
}

fn run_pi_basis<F: Scalar>(args: &DupArgs, flags: &Flags) -> CliResult<Run> {
    let m = build_model::<F>(args, flags)?;
    let r = timed(|| Ok(serring::pi_basis_check(&m)?))?;
    Ok(Run {
        reports: vec![r],
        ..Default::default()
    })
}

fn per_semigroup(
    text: Option<&str>,
    f: impl Fn(&Arc<NumericalSemigroup>) -> Result<Report, CanonError>,
) -> CliResult<Run> {
    let mut reports = Vec::new();
    for s in semigroups_or_suite(text)? {
        reports.push(timed(|| Ok(f(&s)?))?);
    }
    Ok(Run {
        reports,
        ..Default::default()
    })
}

fn verify(args: &VerifyArgs, flags: &Flags) -> CliResult<Run> {
    let sgp = args.sgp.as_deref();
    match args.claim {
        ClaimId::Spectrum | ClaimId::Idealization => {
            let ring = args
                .ring
                .as_deref()
                .ok_or_else(|| CliError::Usage("this claim needs --ring".into()))?;
            let ideal = args
                .ideal
                .as_deref()
                .ok_or_else(|| CliError::Usage("this claim needs --ideal".into()))?;
            let (r, i) = ring_and_ideal(ring, ideal)?;
            let report = if args.claim == ClaimId::Spectrum {
                timed(|| Ok(finring::verify_spectrum(&r, &i, DEFAULT_SIZE_LIMIT)?))?
            } else {
                timed(|| Ok(finring::verify_idealization_coincidence(&r, &i)?))?
            };
            Ok(Run {
                reports: vec![report],
                ..Default::default()
            })
        }
        ClaimId::Duality => per_semigroup(sgp, canon::duality_report),
        ClaimId::Canonical => per_semigroup(sgp, canon::canonical_report),
        ClaimId::Claims => per_semigroup(sgp, canon::run_claim_suite),
        ClaimId::Gorenstein => per_semigroup(sgp, canon::gorenstein_endpoint),
        ClaimId::Oversemigroup => per_semigroup(sgp, canon::verify_oversemigroup_canonical),
        ClaimId::Pipeline => with_field!(flags.prime, run_pipeline(args, flags)),
        ClaimId::Sigma => {
            let d = series_args(args)?;
            with_field!(flags.prime, dup_sigma(&d, flags))
        }
        ClaimId::PiBasis => {
            let d = series_args(args)?;
            with_field!(flags.prime, run_pi_basis(&d, flags))
        }
        ClaimId::Adjointness => {
            let d = series_args(args)?;
            with_field!(flags.prime, dup_adjoint(&d, args.module, flags))
        }
    }
}
