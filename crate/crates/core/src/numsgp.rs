//! Numerical semigroups and their relative ideals.
//!
//! A numerical semigroup `S` is the value model of a one-dimensional
//! monomial domain `k[[t^S]]`; a relative ideal `E` (a bounded-below subset
//! of the integers with `E + S ⊆ E`) is the value model of a regular monomial
//! fractional ideal. Every fractional-ideal operation used by the duality
//! checks (sum, product, intersection, colon, divisorial closure) becomes
//! exact set combinatorics on a finite window, because every relative ideal
//! is full beyond some integer.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Default bound on the number of gaps accepted by the enumerations.
pub const DEFAULT_GAP_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("empty generator list")]
    Empty,
    #[error("generator {0} is not a positive integer")]
    NonPositive(i64),
    #[error("not a numerical semigroup: gcd of generators is {0}")]
    NotNumerical(i64),
    #[error("relative ideal needs at least one generator")]
    EmptyIdeal,
    #[error("operands live over different semigroups")]
    MismatchedSemigroups,
    #[error("{gaps} gaps exceed the limit {limit} (up to 2^{gaps} = {estimate} candidates)")]
    GapLimit { gaps: usize, limit: usize, estimate: u128 },
    #[error("{small} is not contained in {big}")]
    NotOversemigroup { small: String, big: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, SemigroupError>;

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// A cofinite additive submonoid of the non-negative integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<i64>,
    frobenius: i64,
    conductor: i64,
    gaps: Vec<i64>,
    /// Membership on `[0, conductor)`.
    window: Vec<bool>,
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `generators` by additive closure.
    pub fn new(generators: &[i64]) -> Result<Self> {
        if generators.is_empty() {
            return Err(SemigroupError::Empty);
        }
        if let Some(&g) = generators.iter().find(|&&g| g <= 0) {
            return Err(SemigroupError::NonPositive(g));
        }
        let d = generators.iter().fold(0, |acc, &g| gcd(acc, g));
        if d != 1 {
            return Err(SemigroupError::NotNumerical(d));
        }
        let mut sorted = generators.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let smallest = sorted[0];
        let largest = sorted[sorted.len() - 1];
        let second = if sorted.len() > 1 { sorted[sorted.len() - 2] } else { 1 };
        // Frobenius < (smallest - 1)(largest - 1) <= second * largest.
        let bound = (second * largest).max(1) + smallest;
        let len = bound as usize;
        let mut member = vec![false; len];
        member[0] = true;
        for z in 1..len {
            member[z] = sorted.iter().any(|&g| (g as usize) <= z && member[z - g as usize]);
        }
        let tail = &member[len - smallest as usize..];
        assert!(tail.iter().all(|&b| b), "closure bound too small");
        let conductor = member.iter().rposition(|&b| !b).map_or(0, |p| p + 1) as i64;
        Ok(Self::from_window(member[..conductor as usize].to_vec()))
    }

    /// Builds a semigroup from its membership table on `[0, conductor)`.
    /// The table must describe an additively closed set with `0` in it and
    /// with the last entry a gap (or be empty).
    fn from_window(window: Vec<bool>) -> Self {
        let conductor = window.len() as i64;
        let gaps: Vec<i64> = (0..conductor).filter(|&z| !window[z as usize]).collect();
        let mut s = NumericalSemigroup {
            generators: Vec::new(),
            frobenius: conductor - 1,
            conductor,
            gaps,
            window,
        };
        s.generators = s.minimal_generators();
        s
    }

    fn minimal_generators(&self) -> Vec<i64> {
        let m = self.multiplicity();
        let upper = self.conductor + m + 1;
        (1..upper)
            .filter(|&x| self.contains(x))
            .filter(|&x| !(1..x).any(|a| self.contains(a) && self.contains(x - a)))
            .collect()
    }

    /// Minimal generators, increasing.
    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    /// Largest integer not in `S` (−1 for `S = ℕ`).
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    pub fn gaps(&self) -> &[i64] {
        &self.gaps
    }

    /// Smallest nonzero element.
    pub fn multiplicity(&self) -> i64 {
        (1..=self.conductor.max(1)).find(|&z| self.contains(z)).unwrap_or(1)
    }

    pub fn contains(&self, z: i64) -> bool {
        if z < 0 {
            false
        } else if z >= self.conductor {
            true
        } else {
            self.window[z as usize]
        }
    }

    pub fn is_full(&self) -> bool {
        self.conductor == 0
    }

    /// `z ∉ S ⇔ F − z ∈ S` for every integer `z`.
    pub fn is_symmetric(&self) -> bool {
        (0..=self.frobenius).all(|z| self.contains(z) != self.contains(self.frobenius - z))
    }

    /// `true` iff every element of `self` lies in `other`.
    pub fn is_subsemigroup_of(&self, other: &NumericalSemigroup) -> bool {
        self.generators.iter().all(|&g| other.contains(g))
    }

    /// All oversemigroups `S ⊆ S' ⊆ ℕ`, `S` first and `ℕ` last.
    pub fn oversemigroups(&self) -> Vec<NumericalSemigroup> {
        let c = self.conductor as usize;
        let mut found = Vec::new();
        let mut window = self.window.clone();
        // decide gaps from the largest down; `g + x` for every already
        // decided member x >= g and every x in S has then been decided
        fn rec(
            sg: &NumericalSemigroup,
            idx: usize,
            window: &mut Vec<bool>,
            c: usize,
            out: &mut Vec<NumericalSemigroup>,
        ) {
            if idx == 0 {
                let cond = window.iter().rposition(|&b| !b).map_or(0, |p| p + 1);
                out.push(NumericalSemigroup::from_window(window[..cond].to_vec()));
                return;
            }
            let g = sg.gaps[idx - 1] as usize;
            rec(sg, idx - 1, window, c, out);
            let member = |w: &Vec<bool>, z: usize| z >= c || w[z];
            let closed = (1..c)
                .filter(|&x| x >= g || sg.window[x])
                .filter(|&x| member(window, x) || x == g)
                .all(|x| member(window, g + x));
            if closed {
                window[g] = true;
                rec(sg, idx - 1, window, c, out);
                window[g] = false;
            }
        }
        rec(self, self.gaps.len(), &mut window, c, &mut found);
        found.sort_by_key(|s| std::cmp::Reverse(s.gaps.len()));
        found
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "S := <{}>", gens.join(","))
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Bounded-below, eventually full `E ⊆ ℤ` with `E + S ⊆ E`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RelativeIdeal {
    semigroup: Arc<NumericalSemigroup>,
    /// Members strictly below `full_from`, increasing.
    below: Vec<i64>,
    /// Minimal integer with `[full_from, ∞) ⊆ E`.
    full_from: i64,
}

impl RelativeIdeal {
    /// Builds the ideal whose members in `[lo, hi)` are given by `pred`,
    /// with nothing below `lo` and everything from `hi` on.
    fn from_window(semigroup: &Arc<NumericalSemigroup>, lo: i64, hi: i64, pred: impl Fn(i64) -> bool) -> Self {
        let members: Vec<bool> = (lo..hi).map(&pred).collect();
        let full_from = lo + members.iter().rposition(|&b| !b).map_or(0, |p| p as i64 + 1);
        let below = (lo..full_from).filter(|&z| members[(z - lo) as usize]).collect();
        let ideal = RelativeIdeal {
            semigroup: Arc::clone(semigroup),
            below,
            full_from,
        };
        debug_assert!(ideal.is_closed_under(&ideal.semigroup));
        ideal
    }

    /// `gens + S`.
    pub fn generated(semigroup: &Arc<NumericalSemigroup>, gens: &[i64]) -> Result<Self> {
        let lo = *gens.iter().min().ok_or(SemigroupError::EmptyIdeal)?;
        let hi = gens.iter().max().unwrap() + semigroup.conductor();
        Ok(Self::from_window(semigroup, lo, hi, |z| {
            gens.iter().any(|&g| semigroup.contains(z - g))
        }))
    }

    /// `S` itself, as the unit ideal.
    pub fn unit(semigroup: &Arc<NumericalSemigroup>) -> Self {
        Self::from_window(semigroup, 0, semigroup.conductor(), |z| semigroup.contains(z))
    }

    /// The maximal ideal `S \ {0}`.
    pub fn maximal(semigroup: &Arc<NumericalSemigroup>) -> Self {
        Self::from_window(semigroup, 1, semigroup.conductor().max(1), |z| semigroup.contains(z))
    }

    /// `K(S) = {z : F − z ∉ S}`.
    pub fn canonical(semigroup: &Arc<NumericalSemigroup>) -> Self {
        let f = semigroup.frobenius();
        Self::from_window(semigroup, 0, f + 1, |z| !semigroup.contains(f - z))
    }

    /// The members of an oversemigroup `S' ⊇ S`, viewed as an ideal over `S`.
    pub fn from_oversemigroup(semigroup: &Arc<NumericalSemigroup>, over: &NumericalSemigroup) -> Result<Self> {
        if !semigroup.is_subsemigroup_of(over) {
            return Err(SemigroupError::NotOversemigroup {
                small: semigroup.to_string(),
                big: over.to_string(),
            });
        }
        Ok(Self::from_window(semigroup, 0, over.conductor(), |z| over.contains(z)))
    }

    pub fn semigroup(&self) -> &Arc<NumericalSemigroup> {
        &self.semigroup
    }

    pub fn min(&self) -> i64 {
        self.below.first().copied().unwrap_or(self.full_from)
    }

    pub fn full_from(&self) -> i64 {
        self.full_from
    }

    /// Members strictly below [`Self::full_from`].
    pub fn elements_below_bound(&self) -> &[i64] {
        &self.below
    }

    pub fn contains(&self, z: i64) -> bool {
        z >= self.full_from || self.below.binary_search(&z).is_ok()
    }

    /// Minimal generators: members not in `E + (S \ {0})`.
    pub fn generators(&self) -> Vec<i64> {
        let m = self.semigroup.multiplicity();
        (self.min()..self.full_from + m)
            .filter(|&e| self.contains(e))
            .filter(|&e| !self.semigroup.generators().iter().any(|&a| self.contains(e - a)))
            .collect()
    }

    /// Minimal `s ∈ S` with `s + E ⊆ S`.
    pub fn integral_shift(&self) -> i64 {
        let sg = &self.semigroup;
        let upper = sg.conductor() - self.min().min(0) + 1;
        (0..=upper)
            .filter(|&s| sg.contains(s))
            .find(|&s| {
                (self.min()..self.full_from).all(|e| !self.contains(e) || sg.contains(e + s))
                    && self.full_from + s >= 0
                    && (self.full_from + s..sg.conductor()).all(|z| sg.contains(z))
            })
            .expect("a shift beyond the conductor always works")
    }

    /// Largest minimal generator.
    pub fn max_generator(&self) -> i64 {
        *self.generators().last().expect("relative ideals are nonempty")
    }

    fn is_closed_under(&self, sg: &NumericalSemigroup) -> bool {
        (self.min()..self.full_from)
            .filter(|&z| self.contains(z))
            .all(|z| sg.generators().iter().all(|&g| self.contains(z + g)))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.semigroup == other.semigroup {
            Ok(())
        } else {
            Err(SemigroupError::MismatchedSemigroups)
        }
    }

    /// `z + E`.
    pub fn translate(&self, z: i64) -> Self {
        RelativeIdeal {
            semigroup: Arc::clone(&self.semigroup),
            below: self.below.iter().map(|e| e + z).collect(),
            full_from: self.full_from + z,
        }
    }

    /// The translate with minimum `0`, together with the shift applied.
    pub fn normalized(&self) -> (i64, Self) {
        let shift = -self.min();
        (shift, self.translate(shift))
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.min() >= other.min()
            && (self.min()..self.full_from.max(other.full_from)).all(|z| !self.contains(z) || other.contains(z))
    }

    /// `E ∪ F`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let lo = self.min().min(other.min());
        let hi = self.full_from.max(other.full_from);
        Ok(Self::from_window(&self.semigroup, lo, hi, |z| {
            self.contains(z) || other.contains(z)
        }))
    }

    /// `E + F = {e + f}`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let (lo_e, lo_f) = (self.min(), other.min());
        let lo = lo_e + lo_f;
        let hi = (self.full_from + lo_f).min(other.full_from + lo_e);
        Ok(Self::from_window(&self.semigroup, lo, hi, |z| {
            (lo_e..=z - lo_f).any(|e| self.contains(e) && other.contains(z - e))
        }))
    }

    /// `E ∩ F`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let lo = self.min().max(other.min());
        let hi = self.full_from.max(other.full_from).max(lo);
        Ok(Self::from_window(&self.semigroup, lo, hi, |z| {
            self.contains(z) && other.contains(z)
        }))
    }

    /// `E − F = {z ∈ ℤ : z + F ⊆ E}`.
    pub fn colon(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let lo_f = other.min();
        // below min E − min F nothing qualifies, from full E − min F on everything does
        let lo = self.min() - lo_f;
        let hi = self.full_from - lo_f;
        Ok(Self::from_window(&self.semigroup, lo, hi, |z| {
            let upper = other.full_from.max(self.full_from - z);
            (lo_f..upper).all(|f| !other.contains(f) || self.contains(z + f))
        }))
    }

    /// `W − (W − E)`.
    pub fn divisorial_closure(&self, w: &Self) -> Result<Self> {
        w.colon(&w.colon(self)?)
    }

    /// `W − (W − E) = E`.
    pub fn is_divisorial(&self, w: &Self) -> Result<bool> {
        Ok(self.divisorial_closure(w)? == *self)
    }

    /// `⋂ {z + W : E ⊆ z + W}`; `z = −y` with `y` ranging over `W − E`.
    /// Translates by larger elements of `W − E` only enlarge the
    /// intersected sets, so `y` below `full_from(W − E) + multiplicity`
    /// suffices.
    pub fn divisorial_closure_via_intersection(&self, w: &Self) -> Result<Self> {
        let dual = w.colon(self)?;
        let upper = dual.full_from + self.semigroup.multiplicity();
        let mut acc: Option<Self> = None;
        for y in (dual.min()..upper).filter(|&y| dual.contains(y)) {
            let shifted = w.translate(-y);
            acc = Some(match acc {
                None => shifted,
                Some(a) => a.intersect(&shifted)?,
            });
        }
        Ok(acc.expect("W − E is nonempty"))
    }

    /// Re-homes `self` as an ideal over the oversemigroup `over`, provided
    /// `self + over ⊆ self`.
    pub fn rehome(&self, over: &Arc<NumericalSemigroup>) -> Result<Self> {
        let candidate = RelativeIdeal {
            semigroup: Arc::clone(over),
            below: self.below.clone(),
            full_from: self.full_from,
        };
        if candidate.is_closed_under(over) {
            Ok(candidate)
        } else {
            Err(SemigroupError::NotOversemigroup {
                small: over.to_string(),
                big: format!("the multiplier ring of {}", self.set_notation()),
            })
        }
    }

    /// `{e1,...} ∪ [f,∞)` rendering.
    pub fn set_notation(&self) -> String {
        let below: Vec<String> = self.below.iter().map(|e| e.to_string()).collect();
        if below.is_empty() {
            format!("[{},∞)", self.full_from)
        } else {
            format!("{{{}}} ∪ [{},∞)", below.join(","), self.full_from)
        }
    }
}

impl fmt::Display for RelativeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(|g| g.to_string()).collect();
        write!(f, "E := {{{}}} + S", gens.join(","))
    }
}

impl fmt::Debug for RelativeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.set_notation())
    }
}

/// All relative ideals of a semigroup with minimum `0`.
#[derive(Debug, Clone)]
pub struct IdealFamily {
    pub semigroup: Arc<NumericalSemigroup>,
    pub members: Vec<RelativeIdeal>,
}

impl IdealFamily {
    /// Enumerates the S-closed sets `S ∪ G`, `G ⊆ gaps`. Every relative
    /// ideal is a translate of exactly one member.
    pub fn enumerate(semigroup: &Arc<NumericalSemigroup>, gap_limit: usize) -> Result<Self> {
        let gaps = semigroup.gaps();
        if gaps.len() > gap_limit {
            return Err(SemigroupError::GapLimit {
                gaps: gaps.len(),
                limit: gap_limit,
                estimate: 1u128 << gaps.len().min(127),
            });
        }
        let c = semigroup.conductor();
        let mut chosen = vec![false; c as usize];
        let mut members = Vec::new();
        // gaps decided from largest down, so g + a has always been decided
        fn rec(sg: &Arc<NumericalSemigroup>, idx: usize, chosen: &mut Vec<bool>, out: &mut Vec<RelativeIdeal>) {
            let c = sg.conductor();
            if idx == 0 {
                out.push(RelativeIdeal::from_window(sg, 0, c, |z| {
                    sg.contains(z) || chosen[z as usize]
                }));
                return;
            }
            let g = sg.gaps()[idx - 1];
            rec(sg, idx - 1, chosen, out);
            let ok = sg.generators().iter().all(|&a| {
                let z = g + a;
                z >= c || sg.contains(z) || chosen[z as usize]
            });
            if ok {
                chosen[g as usize] = true;
                rec(sg, idx - 1, chosen, out);
                chosen[g as usize] = false;
            }
        }
        rec(semigroup, gaps.len(), &mut chosen, &mut members);
        let key = |e: &RelativeIdeal| -> Vec<i64> { (0..c).filter(|&z| e.contains(z)).collect() };
        members.sort_by_key(|e| {
            let k = key(e);
            (k.len(), k)
        });
        Ok(IdealFamily {
            semigroup: Arc::clone(semigroup),
            members,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// First `J` in the enumeration with `E − (E − J) ≠ J`, if any.
pub fn mcanonical_witness(e: &RelativeIdeal, gap_limit: usize) -> Result<Option<RelativeIdeal>> {
    let family = IdealFamily::enumerate(e.semigroup(), gap_limit)?;
    for j in &family.members {
        if !j.is_divisorial(e)? {
            return Ok(Some(j.clone()));
        }
    }
    Ok(None)
}

/// Every regular fractional ideal is `E`-reflexive; translates suffice.
pub fn is_mcanonical(e: &RelativeIdeal) -> Result<bool> {
    Ok(mcanonical_witness(e, DEFAULT_GAP_LIMIT)?.is_none())
}

/// `K(S) − S'`, re-homed as an ideal over the oversemigroup `S'`.
pub fn canonical_of_oversemigroup(
    semigroup: &Arc<NumericalSemigroup>,
    over: &Arc<NumericalSemigroup>,
) -> Result<RelativeIdeal> {
    let over_as_ideal = RelativeIdeal::from_oversemigroup(semigroup, over)?;
    let k = RelativeIdeal::canonical(semigroup);
    k.colon(&over_as_ideal)?.rehome(over)
}

fn parse_list(body: &str) -> Result<Vec<i64>> {
    body.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| SemigroupError::Parse(format!("bad integer {s:?}")))
        })
        .collect()
}

/// Accepts `S := <3,4,5>`, `<3,4,5>` and `3,4,5`.
pub fn parse_semigroup(text: &str) -> Result<NumericalSemigroup> {
    let body = text.trim();
    let body = body
        .strip_prefix("S")
        .map(|rest| rest.trim_start())
        .and_then(|rest| rest.strip_prefix(":="))
        .unwrap_or(body)
        .trim();
    let body = match (body.strip_prefix('<'), body.ends_with('>')) {
        (Some(inner), true) => &inner[..inner.len() - 1],
        (None, false) => body,
        _ => return Err(SemigroupError::Parse(format!("unbalanced brackets in {text:?}"))),
    };
    NumericalSemigroup::new(&parse_list(body)?)
}

/// Accepts `E := {0,2} + S`, `{0,2} + S`, `{0,2}` and `0,2`.
pub fn parse_relative_ideal(semigroup: &Arc<NumericalSemigroup>, text: &str) -> Result<RelativeIdeal> {
    let body = text.trim();
    let body = body
        .strip_prefix("E")
        .map(|rest| rest.trim_start())
        .and_then(|rest| rest.strip_prefix(":="))
        .unwrap_or(body)
        .trim();
    let body = body
        .strip_suffix('S')
        .map(|rest| rest.trim_end())
        .and_then(|rest| rest.strip_suffix('+'))
        .unwrap_or(body)
        .trim();
    let body = match (body.strip_prefix('{'), body.ends_with('}')) {
        (Some(inner), true) => &inner[..inner.len() - 1],
        (None, false) => body,
        _ => return Err(SemigroupError::Parse(format!("unbalanced braces in {text:?}"))),
    };
    RelativeIdeal::generated(semigroup, &parse_list(body)?)
}
