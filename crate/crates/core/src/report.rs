//! Structured outcome of a verification run.
//!
//! A [`Report`] is an ordered list of [`Claim`]s. Once a claim fails, every
//! later stage pushed through [`Report::stage`] is recorded as skipped, so a
//! report never shows a stage as passed after a failure it depends on.

use serde::{Deserialize, Serialize};

use crate::serring::Window;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    /// Which statement the claim exercises, in words.
    pub locus: String,
    pub verdict: Verdict,
    /// Present whenever `verdict` is `fail`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Computed values worth printing (counts, dimensions).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// What a stage closure returns: success flag, detail and failure witness.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub ok: bool,
    pub detail: Option<String>,
    pub witness: Option<String>,
}

impl Outcome {
    pub fn pass(detail: impl Into<String>) -> Self {
        Outcome {
            ok: true,
            detail: non_empty(detail.into()),
            witness: None,
        }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        Outcome {
            ok: false,
            detail: None,
            witness: Some(witness.into()),
        }
    }

    pub fn check(ok: bool, detail: impl Into<String>, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(detail)
        } else {
            let mut o = Self::fail(witness());
            o.detail = non_empty(detail.into());
            o
        }
    }
}

fn non_empty(s: String) -> Option<String> {
    (!s.is_empty()).then_some(s)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<Window>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub verdict: Verdict,
    pub stages: Vec<Claim>,
}

impl Report {
    pub fn new(claim: impl Into<String>, instance: impl Into<String>) -> Self {
        Report {
            claim: claim.into(),
            instance: instance.into(),
            window: None,
            seed: None,
            note: None,
            verdict: Verdict::Pass,
            stages: Vec::new(),
        }
    }

    pub fn with_window(mut self, w: Window) -> Self {
        self.window = Some(w);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn failed(&self) -> bool {
        self.stages.iter().any(|c| c.verdict == Verdict::Fail)
    }

    /// `true` iff no stage failed.
    pub fn passed(&self) -> bool {
        !self.failed()
    }

    /// Records an independent claim; it runs regardless of earlier failures.
    pub fn record(&mut self, id: &str, locus: &str, outcome: Outcome) -> bool {
        let verdict = Verdict::from_bool(outcome.ok);
        let witness = match (&outcome.witness, outcome.ok) {
            (None, false) => Some("no witness recorded".to_string()),
            (w, _) => w.clone(),
        };
        self.stages.push(Claim {
            id: id.to_string(),
            locus: locus.to_string(),
            verdict,
            witness,
            detail: outcome.detail,
        });
        if !outcome.ok {
            self.verdict = Verdict::Fail;
        }
        outcome.ok
    }

    /// Records a dependent stage: skipped (and `run` not called) if an
    /// earlier stage failed.
    pub fn stage(&mut self, id: &str, locus: &str, run: impl FnOnce() -> Outcome) -> bool {
        if self.failed() {
            self.stages.push(Claim {
                id: id.to_string(),
                locus: locus.to_string(),
                verdict: Verdict::Skipped,
                witness: None,
                detail: None,
            });
            return false;
        }
        self.record(id, locus, run())
    }

    /// Appends the stages of `other`, prefixing their ids.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.stages {
            c.id = format!("{prefix}.{}", c.id);
            if c.verdict == Verdict::Fail {
                self.verdict = Verdict::Fail;
            }
            self.stages.push(c);
        }
    }

    pub fn get(&self, id: &str) -> Option<&Claim> {
        self.stages.iter().find(|c| c.id == id)
    }

    /// One line per stage.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} [{}]\n", self.claim, self.instance);
        if let Some(w) = self.window {
            out.push_str(&format!("  window {w}\n"));
        }
        if let Some(s) = self.seed {
            out.push_str(&format!("  seed {s}\n"));
        }
        if let Some(n) = &self.note {
            out.push_str(&format!("  note: {n}\n"));
        }
        for c in &self.stages {
            let tag = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Skipped => "SKIP",
            };
            out.push_str(&format!("  {tag} {:<28} {}", c.id, c.locus));
            if let Some(d) = &c.detail {
                out.push_str(&format!(" | {d}"));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!(" | witness: {w}"));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_skips_dependent_stages() {
        let mut r = Report::new("demo", "x");
        assert!(r.stage("a", "first", || Outcome::pass("ok")));
        assert!(!r.stage("b", "second", || Outcome::fail("boom")));
        let mut ran = false;
        assert!(!r.stage("c", "third", || {
            ran = true;
            Outcome::pass("")
        }));
        assert!(!ran);
        assert_eq!(r.get("c").unwrap().verdict, Verdict::Skipped);
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.to_text().contains("SKIP c"));
    }

    #[test]
    fn failures_always_carry_witness() {
        let mut r = Report::new("demo", "x");
        r.record(
            "a",
            "l",
            Outcome {
                ok: false,
                detail: None,
                witness: None,
            },
        );
        assert!(r.stages[0].witness.is_some());
    }
}
