//! Finite commutative rings given by explicit tables, their ideals and
//! spectra, and the duplication and idealization built on top of them.
//!
//! Elements are indices `0..size`. Every ring is checked against the ring
//! axioms when constructed, so later code can trust the tables.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::report::{Outcome, Report};

pub const DEFAULT_SIZE_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinError {
    #[error("Zmod(n) needs n >= 2, got {0}")]
    Modulus(i64),
    #[error("tables violate the ring axioms: {0}")]
    Axioms(String),
    #[error("ideal is trivial (zero or the whole ring)")]
    TrivialIdeal,
    #[error("ring has {size} elements, above the enumeration limit {limit}")]
    SizeLimit { size: usize, limit: usize },
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("inconsistent computation: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, FinError>;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteRing {
    name: String,
    size: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, {} elements)", self.name, self.size)
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FiniteRing {
    /// Builds a ring from tables, checking every axiom by full quantification.
    pub fn from_tables(
        name: impl Into<String>,
        labels: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = labels.len();
        let bad = |msg: String| Err(FinError::Axioms(msg));
        if n == 0 {
            return bad("empty carrier".into());
        }
        for t in [&add, &mul] {
            if t.len() != n || t.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
                return bad("table shape".into());
            }
        }
        if zero >= n || one >= n || (n > 1 && zero == one) {
            return bad("zero and one".into());
        }
        let mut neg = vec![usize::MAX; n];
        for a in 0..n {
            if add[zero][a] != a || mul[one][a] != a {
                return bad(format!("identity fails at {}", labels[a]));
            }
            match (0..n).find(|&b| add[a][b] == zero) {
                Some(b) => neg[a] = b,
                None => return bad(format!("{} has no additive inverse", labels[a])),
            }
            for b in 0..n {
                if add[a][b] != add[b][a] || mul[a][b] != mul[b][a] {
                    return bad(format!("not commutative at ({}, {})", labels[a], labels[b]));
                }
                for c in 0..n {
                    if add[add[a][b]][c] != add[a][add[b][c]]
                        || mul[mul[a][b]][c] != mul[a][mul[b][c]]
                        || mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]
                    {
                        return bad(format!(
                            "associativity or distributivity fails at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        ));
                    }
                }
            }
        }
        Ok(FiniteRing {
            name: name.into(),
            size: n,
            add,
            mul,
            neg,
            zero,
            one,
            labels,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add[a][self.neg[b]]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn is_nilpotent(&self, a: usize) -> bool {
        let mut x = a;
        for _ in 0..=self.size {
            if x == self.zero {
                return true;
            }
            x = self.mul(x, a);
        }
        false
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.elements().any(|b| self.mul(a, b) == self.one)
    }

    fn ideal_from(&self, members: impl IntoIterator<Item = usize>) -> FiniteIdeal {
        let mut mask = vec![false; self.size];
        for a in members {
            mask[a] = true;
        }
        FiniteIdeal { mask }
    }

    pub fn zero_ideal(&self) -> FiniteIdeal {
        self.ideal_from([self.zero])
    }

    pub fn unit_ideal(&self) -> FiniteIdeal {
        self.ideal_from(self.elements())
    }

    /// Smallest ideal containing `gens`.
    pub fn ideal_generated(&self, gens: &[usize]) -> FiniteIdeal {
        let multiples: BTreeSet<usize> = gens
            .iter()
            .flat_map(|&g| self.elements().map(move |r| (r, g)))
            .map(|(r, g)| self.mul(r, g))
            .collect();
        let mut members: BTreeSet<usize> = [self.zero].into();
        let mut frontier: Vec<usize> = vec![self.zero];
        while let Some(x) = frontier.pop() {
            for &m in &multiples {
                let y = self.add(x, m);
                if members.insert(y) {
                    frontier.push(y);
                }
            }
        }
        self.ideal_from(members)
    }

    pub fn principal_ideal(&self, a: usize) -> FiniteIdeal {
        self.ideal_generated(&[a])
    }

    /// The ideal generated by all products `ab`, `a ∈ i`, `b ∈ j`.
    pub fn product(&self, i: &FiniteIdeal, j: &FiniteIdeal) -> FiniteIdeal {
        let gens: Vec<usize> = i
            .members()
            .flat_map(|a| j.members().map(move |b| (a, b)))
            .map(|(a, b)| self.mul(a, b))
            .collect();
        self.ideal_generated(&gens)
    }

    /// `{a : aᵏ ∈ j for some k}`.
    pub fn radical(&self, j: &FiniteIdeal) -> FiniteIdeal {
        self.ideal_from(self.elements().filter(|&a| {
            let mut x = a;
            for _ in 0..=self.size {
                if j.contains(x) {
                    return true;
                }
                x = self.mul(x, a);
            }
            false
        }))
    }

    pub fn is_ideal(&self, j: &FiniteIdeal) -> bool {
        j.mask.len() == self.size
            && j.contains(self.zero)
            && j.members().all(|a| {
                j.members().all(|b| j.contains(self.add(a, b))) && self.elements().all(|r| j.contains(self.mul(r, a)))
            })
    }

    /// Proper, and `ab ∈ P ⇒ a ∈ P or b ∈ P` over the whole table.
    pub fn is_prime(&self, p: &FiniteIdeal) -> bool {
        !p.contains(self.one)
            && self
                .elements()
                .all(|a| p.contains(a) || self.elements().all(|b| p.contains(b) || !p.contains(self.mul(a, b))))
    }

    /// `j + k` as a set of sums; both must already be ideals.
    fn ideal_sum(&self, j: &FiniteIdeal, k: &FiniteIdeal) -> FiniteIdeal {
        let mut mask = vec![false; self.size];
        let ks: Vec<usize> = k.members().collect();
        for a in j.members() {
            for &b in &ks {
                mask[self.add(a, b)] = true;
            }
        }
        FiniteIdeal { mask }
    }

    /// All ideals, smallest first. Every ideal is a finite sum of principal
    /// ideals `Ra = {ra}`, so a breadth-first closure of the distinct
    /// principal ideals under sums reaches them all.
    pub fn enumerate_ideals(&self, limit: usize) -> Result<Vec<FiniteIdeal>> {
        if self.size > limit {
            return Err(FinError::SizeLimit { size: self.size, limit });
        }
        let mut principals: Vec<FiniteIdeal> = Vec::new();
        let mut seen_principal: BTreeSet<Vec<bool>> = BTreeSet::new();
        for a in self.elements() {
            let ra = self.ideal_from(self.elements().map(|r| self.mul(r, a)));
            if seen_principal.insert(ra.mask.clone()) {
                principals.push(ra);
            }
        }
        let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
        let mut out = Vec::new();
        let mut queue = std::collections::VecDeque::from([self.zero_ideal()]);
        seen.insert(self.zero_ideal().mask);
        while let Some(j) = queue.pop_front() {
            for p in principals.iter().filter(|p| !p.is_subset_of(&j)) {
                let bigger = self.ideal_sum(&j, p);
                if seen.insert(bigger.mask.clone()) {
                    queue.push_back(bigger);
                }
            }
            out.push(j);
        }
        out.sort_by_key(|j| (j.count(), j.mask.iter().map(|&b| !b).collect::<Vec<_>>()));
        Ok(out)
    }

    pub fn spectrum(&self, limit: usize) -> Result<SpecInfo> {
        let ideals = self.enumerate_ideals(limit)?;
        let primes: Vec<FiniteIdeal> = ideals.into_iter().filter(|p| self.is_prime(p)).collect();
        let mut nilradical = self.unit_ideal();
        for p in &primes {
            nilradical = nilradical.intersect(p);
        }
        let nilpotents = self.ideal_from(self.elements().filter(|&a| self.is_nilpotent(a)));
        if nilradical != nilpotents {
            return Err(FinError::Inconsistent(format!(
                "intersection of primes {} differs from nilpotents {}",
                nilradical.display(self),
                nilpotents.display(self)
            )));
        }
        let minimal_primes = primes
            .iter()
            .filter(|p| !primes.iter().any(|q| q != *p && q.is_subset_of(p)))
            .cloned()
            .collect();
        let maximal_ideals = primes
            .iter()
            .filter(|p| !primes.iter().any(|q| q != *p && p.is_subset_of(q)))
            .cloned()
            .collect();
        Ok(SpecInfo {
            primes,
            nilradical,
            minimal_primes,
            maximal_ideals,
        })
    }

    /// The ideal as a text descriptor `(a, b)`, using a small generating set.
    pub fn describe_ideal(&self, j: &FiniteIdeal) -> String {
        let mut gens: Vec<usize> = Vec::new();
        let mut current = self.zero_ideal();
        for a in j.members() {
            if !current.contains(a) {
                gens.push(a);
                current = self.ideal_generated(&gens);
            }
        }
        if gens.is_empty() {
            return format!("({})", self.label(self.zero));
        }
        let parts: Vec<&str> = gens.iter().map(|&g| self.label(g)).collect();
        format!("({})", parts.join(", "))
    }

    /// Looks up an element by its label.
    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Ideal of a [`FiniteRing`], as a membership mask over its elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteIdeal {
    mask: Vec<bool>,
}

impl FiniteIdeal {
    pub fn contains(&self, a: usize) -> bool {
        self.mask[a]
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter().enumerate().filter(|(_, &m)| m).map(|(a, _)| a)
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn is_subset_of(&self, other: &FiniteIdeal) -> bool {
        self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    pub fn intersect(&self, other: &FiniteIdeal) -> FiniteIdeal {
        FiniteIdeal {
            mask: self.mask.iter().zip(&other.mask).map(|(&a, &b)| a && b).collect(),
        }
    }

    /// Set notation `{0, 2}` with the ring's labels.
    pub fn display(&self, ring: &FiniteRing) -> String {
        let parts: Vec<&str> = self.members().map(|a| ring.label(a)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone)]
pub struct SpecInfo {
    pub primes: Vec<FiniteIdeal>,
    pub nilradical: FiniteIdeal,
    pub minimal_primes: Vec<FiniteIdeal>,
    pub maximal_ideals: Vec<FiniteIdeal>,
}

impl SpecInfo {
    pub fn is_reduced(&self) -> bool {
        self.nilradical.count() == 1
    }

    pub fn is_local(&self) -> bool {
        self.maximal_ideals.len() == 1
    }

    /// Every prime is maximal, i.e. Krull dimension 0.
    pub fn is_zero_dimensional(&self) -> bool {
        self.primes.len() == self.maximal_ideals.len()
    }
}

pub fn zmod(n: i64) -> Result<FiniteRing> {
    if n < 2 {
        return Err(FinError::Modulus(n));
    }
    let m = n as usize;
    let add = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
    let mul = (0..m).map(|a| (0..m).map(|b| (a * b) % m).collect()).collect();
    let labels = (0..m).map(|a| a.to_string()).collect();
    FiniteRing::from_tables(format!("Zmod({n})"), labels, add, mul, 0, 1 % m)
}

/// `R⋈I = {(r, r + i)} ⊆ R × R` with componentwise operations.
#[derive(Debug, Clone)]
pub struct PairRing {
    base: FiniteRing,
    ideal: FiniteIdeal,
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    ring: FiniteRing,
}

impl PairRing {
    pub fn base(&self) -> &FiniteRing {
        &self.base
    }

    pub fn ideal(&self) -> &FiniteIdeal {
        &self.ideal
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn pair(&self, a: usize) -> (usize, usize) {
        self.pairs[a]
    }

    pub fn index_of(&self, pair: (usize, usize)) -> Option<usize> {
        self.index.get(&pair).copied()
    }

    /// Mask over the duplication's elements for an arbitrary pair predicate.
    pub fn subset(&self, pred: impl Fn(usize, usize) -> bool) -> FiniteIdeal {
        FiniteIdeal {
            mask: self.pairs.iter().map(|&(a, b)| pred(a, b)).collect(),
        }
    }

    pub fn first_projection(&self, a: usize) -> usize {
        self.pairs[a].0
    }

    pub fn second_projection(&self, a: usize) -> usize {
        self.pairs[a].1
    }

    /// `𝔒₁ = 0 × I`.
    pub fn o1(&self) -> FiniteIdeal {
        let z = self.base.zero();
        self.subset(|a, _| a == z)
    }

    /// `𝔒₂ = I × 0`.
    pub fn o2(&self) -> FiniteIdeal {
        let z = self.base.zero();
        self.subset(|_, b| b == z)
    }
}

pub fn duplication(r: &FiniteRing, i: &FiniteIdeal) -> Result<PairRing> {
    if !r.is_ideal(i) {
        return Err(FinError::Axioms("not an ideal".into()));
    }
    if i.count() == 1 || i.count() == r.size() {
        return Err(FinError::TrivialIdeal);
    }
    let mut pairs = Vec::with_capacity(r.size() * i.count());
    for x in r.elements() {
        for e in i.members() {
            pairs.push((x, r.add(x, e)));
        }
    }
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    if index.len() != pairs.len() {
        return Err(FinError::Inconsistent("duplicate pairs".into()));
    }
    let lookup = |p: (usize, usize)| {
        index
            .get(&p)
            .copied()
            .ok_or_else(|| FinError::Inconsistent(format!("({}, {}) not closed", r.label(p.0), r.label(p.1))))
    };
    let n = pairs.len();
    let mut add = vec![vec![0; n]; n];
    let mut mul = vec![vec![0; n]; n];
    for (a, &(x, xe)) in pairs.iter().enumerate() {
        for (b, &(y, yf)) in pairs.iter().enumerate() {
            add[a][b] = lookup((r.add(x, y), r.add(xe, yf)))?;
            let prod = (r.mul(x, y), r.mul(xe, yf));
            // (x, e)(y, f) = (xy, xf + ye + ef) under (x, e) ↔ (x, x + e)
            let (e, f) = (r.sub(xe, x), r.sub(yf, y));
            let twisted = r.add(r.add(r.mul(x, f), r.mul(y, e)), r.mul(e, f));
            if prod != (r.mul(x, y), r.add(r.mul(x, y), twisted)) {
                return Err(FinError::Inconsistent(format!(
                    "componentwise product of ({}, {}) and ({}, {}) disagrees with the twisted formula",
                    r.label(x),
                    r.label(e),
                    r.label(y),
                    r.label(f)
                )));
            }
            mul[a][b] = lookup(prod)?;
        }
    }
    let labels = pairs
        .iter()
        .map(|&(x, y)| format!("({},{})", r.label(x), r.label(y)))
        .collect();
    let name = format!("{}⋈{}", r.name(), r.describe_ideal(i));
    let ring = FiniteRing::from_tables(
        name,
        labels,
        add,
        mul,
        lookup((r.zero(), r.zero()))?,
        lookup((r.one(), r.one()))?,
    )?;
    Ok(PairRing {
        base: r.clone(),
        ideal: i.clone(),
        pairs,
        index,
        ring,
    })
}

/// `R ⋉ I` on `R × I` with `(r, e)(s, f) = (rs, rf + se)`. Elements are
/// ordered `r`-major, matching [`duplication`].
pub fn idealization(r: &FiniteRing, i: &FiniteIdeal) -> Result<FiniteRing> {
    if !r.is_ideal(i) {
        return Err(FinError::Axioms("not an ideal".into()));
    }
    let pairs: Vec<(usize, usize)> = r.elements().flat_map(|x| i.members().map(move |e| (x, e))).collect();
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let n = pairs.len();
    let mut add = vec![vec![0; n]; n];
    let mut mul = vec![vec![0; n]; n];
    for (a, &(x, e)) in pairs.iter().enumerate() {
        for (b, &(y, f)) in pairs.iter().enumerate() {
            add[a][b] = index[&(r.add(x, y), r.add(e, f))];
            mul[a][b] = index[&(r.mul(x, y), r.add(r.mul(x, f), r.mul(y, e)))];
        }
    }
    let labels = pairs
        .iter()
        .map(|&(x, e)| format!("({},{})", r.label(x), r.label(e)))
        .collect();
    let name = format!("{}⋉{}", r.name(), r.describe_ideal(i));
    FiniteRing::from_tables(
        name,
        labels,
        add,
        mul,
        index[&(r.zero(), r.zero())],
        index[&(r.one(), r.zero())],
    )
}

/// Parses `Zmod(n)`.
pub fn parse_ring(text: &str) -> Result<FiniteRing> {
    let t = text.trim();
    let inner = t
        .strip_prefix("Zmod(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| FinError::Parse(text.into()))?;
    let n: i64 = inner.trim().parse().map_err(|_| FinError::Parse(text.into()))?;
    zmod(n)
}

/// Parses `(a)` or `(a, b, ...)` against the ring's labels.
pub fn parse_ideal(ring: &FiniteRing, text: &str) -> Result<FiniteIdeal> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| FinError::Parse(text.into()))?;
    let gens = inner
        .split(',')
        .map(|g| {
            let g = g.trim();
            ring.element(g)
                .or_else(|| {
                    // integers are read modulo the size for Zmod rings
                    let v: i64 = g.parse().ok()?;
                    ring.element(&v.rem_euclid(ring.size() as i64).to_string())
                })
                .ok_or_else(|| FinError::Parse(text.into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ring.ideal_generated(&gens))
}

fn first_missing(ring: &FiniteRing, a: &FiniteIdeal, b: &FiniteIdeal) -> String {
    ring.elements()
        .find(|&x| a.contains(x) != b.contains(x))
        .map(|x| {
            let side = if a.contains(x) { "left" } else { "right" };
            format!("{} only in the {side} set", ring.label(x))
        })
        .unwrap_or_else(|| "sets agree".into())
}

/// `proj : D → R` followed by `R → R/P` is a surjective ring map whose
/// kernel is `q`, i.e. `R/P ≅ D/q` through the projection.
fn projection_iso_check(dup: &PairRing, proj: impl Fn(usize) -> usize, p: &FiniteIdeal, q: &FiniteIdeal) -> Outcome {
    let (d, r) = (dup.ring(), dup.base());
    for a in d.elements() {
        for b in d.elements() {
            if proj(d.add(a, b)) != r.add(proj(a), proj(b)) || proj(d.mul(a, b)) != r.mul(proj(a), proj(b)) {
                return Outcome::fail(format!("not a ring map at {}, {}", d.label(a), d.label(b)));
            }
        }
    }
    if proj(d.one()) != r.one() {
        return Outcome::fail("1 not preserved");
    }
    let image: BTreeSet<usize> = d.elements().map(&proj).collect();
    if image.len() != r.size() {
        return Outcome::fail(format!("image has {} of {} elements", image.len(), r.size()));
    }
    let kernel = dup.subset(|x, y| p.contains(proj(dup.index_of((x, y)).unwrap())));
    Outcome::check(kernel == *q, format!("|R/P| = {}", r.size() / p.count()), || {
        first_missing(d, &kernel, q)
    })
}

/// Brute-force check of the prime spectrum of `R⋈I` against the explicit
/// description over each prime of `R`, together with the reducedness and
/// locality transfers and the two distinguished ideals `𝔒₁`, `𝔒₂`.
pub fn verify_spectrum(r: &FiniteRing, i: &FiniteIdeal, limit: usize) -> Result<Report> {
    let dup = duplication(r, i)?;
    let d = dup.ring();
    let spec_r = r.spectrum(limit)?;
    let spec_d = d.spectrum(limit.max(d.size()))?;
    let instance = format!("{} {}", r, r.describe_ideal(i));
    let mut report = Report::new("spectrum", instance);

    let lying_over = |p: &FiniteIdeal| -> Vec<&FiniteIdeal> {
        spec_d
            .primes
            .iter()
            .filter(|q| {
                r.elements()
                    .all(|x| q.contains(dup.index_of((x, x)).unwrap()) == p.contains(x))
            })
            .collect()
    };
    let mut expected_count = 0;
    for p in &spec_r.primes {
        let tag = r.describe_ideal(p);
        let ip = r.product(i, p);
        let cal_p = dup.subset(|x, y| p.contains(x) && i.contains(r.sub(y, x)) && p.contains(r.sub(y, x)));
        let cal_p1 = dup.subset(|x, y| p.contains(x) && i.contains(r.sub(y, x)));
        let cal_p2 = dup.subset(|x, y| p.contains(y) && i.contains(r.sub(x, y)));
        let over = lying_over(p);
        if i.is_subset_of(p) {
            expected_count += 1;
            let ok = cal_p == cal_p1 && cal_p == cal_p2 && d.is_prime(&cal_p) && over == vec![&cal_p];
            report.record(
                &format!("{tag}.unique-prime"),
                "I ⊆ P: the prime over P is unique and equals P1 = P2",
                Outcome::check(ok, format!("{} prime(s) over {tag}", over.len()), || {
                    if cal_p != cal_p1 || cal_p != cal_p2 {
                        format!("P, P1, P2 differ: {}", first_missing(d, &cal_p1, &cal_p2))
                    } else {
                        format!(
                            "primes over {tag}: {:?}",
                            over.iter().map(|q| q.display(d)).collect::<Vec<_>>()
                        )
                    }
                }),
            );
            report.record(
                &format!("{tag}.quotient"),
                "R/P ≅ (R⋈I)/P via the first projection",
                projection_iso_check(&dup, |a| dup.first_projection(a), p, &cal_p),
            );
        } else {
            expected_count += 2;
            let mut over_sorted: Vec<&FiniteIdeal> = over.clone();
            over_sorted.sort();
            let mut want = vec![&cal_p1, &cal_p2];
            want.sort();
            let ok = cal_p1 != cal_p2
                && cal_p1.intersect(&cal_p2) == cal_p
                && d.is_prime(&cal_p1)
                && d.is_prime(&cal_p2)
                && over_sorted == want;
            report.record(
                &format!("{tag}.two-primes"),
                "I ⊄ P: P1 ≠ P2, P1 ∩ P2 = P, and they are the only primes over P",
                Outcome::check(ok, format!("{} prime(s) over {tag}", over.len()), || {
                    if cal_p1.intersect(&cal_p2) != cal_p {
                        format!("P1 ∩ P2 vs P: {}", first_missing(d, &cal_p1.intersect(&cal_p2), &cal_p))
                    } else {
                        format!(
                            "primes over {tag}: {:?}",
                            over.iter().map(|q| q.display(d)).collect::<Vec<_>>()
                        )
                    }
                }),
            );
            report.record(
                &format!("{tag}.quotient-1"),
                "R/P ≅ (R⋈I)/P1 via the first projection",
                projection_iso_check(&dup, |a| dup.first_projection(a), p, &cal_p1),
            );
            report.record(
                &format!("{tag}.quotient-2"),
                "R/P ≅ (R⋈I)/P2 via the second projection",
                projection_iso_check(&dup, |a| dup.second_projection(a), p, &cal_p2),
            );
        }
        let diag: Vec<usize> = p.members().map(|x| dup.index_of((x, x)).unwrap()).collect();
        let extension = d.ideal_generated(&diag);
        let formula = dup.subset(|x, y| p.contains(x) && ip.contains(r.sub(y, x)));
        report.record(
            &format!("{tag}.extension"),
            "P(R⋈I) = {(p, p+i) : p ∈ P, i ∈ IP}",
            Outcome::check(extension == formula, format!("{} elements", extension.count()), || {
                first_missing(d, &extension, &formula)
            }),
        );
        let rad = d.radical(&extension);
        report.record(
            &format!("{tag}.radical"),
            "the radical of P(R⋈I) is {(p, p+i) : p ∈ P, i ∈ I ∩ P}",
            Outcome::check(rad == cal_p, format!("{} elements", rad.count()), || {
                first_missing(d, &rad, &cal_p)
            }),
        );
    }

    report.record(
        "spec-count",
        "|Spec(R⋈I)| counts one prime over P ⊇ I and two over the others",
        Outcome::check(
            spec_d.primes.len() == expected_count,
            format!(
                "|Spec(R⋈I)| = {}, |Spec(R)| = {}",
                spec_d.primes.len(),
                spec_r.primes.len()
            ),
            || format!("expected {expected_count}, found {}", spec_d.primes.len()),
        ),
    );
    report.record(
        "reduced-iff",
        "R is reduced iff R⋈I is reduced",
        Outcome::check(
            spec_r.is_reduced() == spec_d.is_reduced(),
            format!("reduced = {}", spec_d.is_reduced()),
            || format!("nilradical of R⋈I {}", spec_d.nilradical.display(d)),
        ),
    );
    report.record(
        "local-iff",
        "R is local iff R⋈I is local",
        Outcome::check(
            spec_r.is_local() == spec_d.is_local(),
            format!("local = {}", spec_d.is_local()),
            || {
                format!(
                    "{} vs {} maximal ideals",
                    spec_r.maximal_ideals.len(),
                    spec_d.maximal_ideals.len()
                )
            },
        ),
    );
    report.record(
        "dimension",
        "dim(R⋈I) = dim(R), here both 0",
        Outcome::check(
            spec_r.is_zero_dimensional() && spec_d.is_zero_dimensional(),
            "dim 0 = dim 0",
            || "a non-maximal prime exists".into(),
        ),
    );
    let (o1, o2) = (dup.o1(), dup.o2());
    let o_prod = d.product(&o1, &o2);
    let zero = d.zero_ideal();
    let kernel_first = dup.subset(|x, _| x == r.zero());
    let kernel_second = dup.subset(|_, y| y == r.zero());
    report.record(
        "o-ideals",
        "O1 = 0×I and O2 = I×0 are ideals with O1·O2 = 0 and (R⋈I)/Oi ≅ R",
        Outcome::check(
            d.is_ideal(&o1)
                && d.is_ideal(&o2)
                && o_prod == zero
                && o1 == kernel_first
                && o2 == kernel_second
                && projection_iso_check(&dup, |a| dup.first_projection(a), &r.zero_ideal(), &o1).ok
                && projection_iso_check(&dup, |a| dup.second_projection(a), &r.zero_ideal(), &o2).ok,
            format!("|O1| = |O2| = {}", o1.count()),
            || format!("O1·O2 = {}", o_prod.display(d)),
        ),
    );
    Ok(report)
}

/// `(r, i) ↦ (r, r + i)` is a ring isomorphism `R ⋉ I → R⋈I` when `I² = 0`.
pub fn verify_idealization_coincidence(r: &FiniteRing, i: &FiniteIdeal) -> Result<Report> {
    let sq = r.product(i, i);
    if sq.count() != 1 {
        return Err(FinError::HypothesisNotMet(format!(
            "I² = {} is not zero",
            r.describe_ideal(&sq)
        )));
    }
    let nag = idealization(r, i)?;
    let dup = duplication(r, i)?;
    let d = dup.ring();
    let pairs: Vec<(usize, usize)> = r.elements().flat_map(|x| i.members().map(move |e| (x, e))).collect();
    let phi: Vec<usize> = pairs
        .iter()
        .map(|&(x, e)| dup.index_of((x, r.add(x, e))).expect("(r, r+i) lies in R⋈I"))
        .collect();
    let mut report = Report::new("idealization", format!("{} {}", r, r.describe_ideal(i)));
    let image: BTreeSet<usize> = phi.iter().copied().collect();
    report.record(
        "bijective",
        "(r, i) ↦ (r, r+i) is a bijection",
        Outcome::check(
            image.len() == d.size() && phi.len() == d.size(),
            format!("{} elements", d.size()),
            || format!("image has {} of {}", image.len(), d.size()),
        ),
    );
    let mut add_fail = None;
    let mut mul_fail = None;
    for a in nag.elements() {
        for b in nag.elements() {
            if add_fail.is_none() && phi[nag.add(a, b)] != d.add(phi[a], phi[b]) {
                add_fail = Some(format!("{} + {}", nag.label(a), nag.label(b)));
            }
            if mul_fail.is_none() && phi[nag.mul(a, b)] != d.mul(phi[a], phi[b]) {
                mul_fail = Some(format!("{} · {}", nag.label(a), nag.label(b)));
            }
        }
    }
    report.record(
        "additive",
        "the map preserves sums",
        Outcome::check(add_fail.is_none(), "full table", || add_fail.clone().unwrap()),
    );
    report.record(
        "multiplicative",
        "the map preserves products and 1",
        Outcome::check(mul_fail.is_none() && phi[nag.one()] == d.one(), "full table", || {
            mul_fail.clone().unwrap_or_else(|| "1 not preserved".into())
        }),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(r: &FiniteRing, a: usize) -> FiniteIdeal {
        r.principal_ideal(a)
    }

    #[test]
    fn zmod_and_principal_ideals() {
        assert_eq!(zmod(4).unwrap().size(), 4);
        assert_eq!(zmod(1).err(), Some(FinError::Modulus(1)));
        let z4 = zmod(4).unwrap();
        assert_eq!(ideal(&z4, 2).display(&z4), "{0, 2}");
        let z6 = zmod(6).unwrap();
        assert_eq!(ideal(&z6, 2).display(&z6), "{0, 2, 4}");
        assert_eq!(ideal(&z6, 0).count(), 1);
        assert_eq!(z6.describe_ideal(&ideal(&z6, 4)), "(2)");
    }

    #[test]
    fn axioms_are_enforced() {
        // a + b = max(a, b) has no inverses
        let add = vec![vec![0, 1], vec![1, 1]];
        let mul = vec![vec![0, 0], vec![0, 1]];
        let err = FiniteRing::from_tables("bad", vec!["0".into(), "1".into()], add, mul, 0, 1);
        assert!(matches!(err, Err(FinError::Axioms(_))));
    }

    #[test]
    fn ideal_lists() {
        let z4 = zmod(4).unwrap();
        let names: Vec<String> = z4
            .enumerate_ideals(64)
            .unwrap()
            .iter()
            .map(|j| z4.describe_ideal(j))
            .collect();
        assert_eq!(names, ["(0)", "(2)", "(1)"]);
        let z6 = zmod(6).unwrap();
        let names: Vec<String> = z6
            .enumerate_ideals(64)
            .unwrap()
            .iter()
            .map(|j| z6.describe_ideal(j))
            .collect();
        assert_eq!(names, ["(0)", "(3)", "(2)", "(1)"]);
        assert_eq!(zmod(7).unwrap().enumerate_ideals(64).unwrap().len(), 2);
        assert!(matches!(
            zmod(65).unwrap().enumerate_ideals(64),
            Err(FinError::SizeLimit { .. })
        ));
    }

    #[test]
    fn spectra() {
        let z6 = zmod(6).unwrap();
        let s = z6.spectrum(64).unwrap();
        assert_eq!(s.primes.len(), 2);
        assert!(s.is_reduced() && !s.is_local());
        let z4 = zmod(4).unwrap();
        let s = z4.spectrum(64).unwrap();
        assert_eq!(s.primes, vec![ideal(&z4, 2)]);
        assert!(!s.is_reduced() && s.is_local());
        let f5 = zmod(5).unwrap();
        assert_eq!(f5.spectrum(64).unwrap().primes, vec![f5.zero_ideal()]);
    }

    #[test]
    fn duplication_sizes() {
        let z4 = zmod(4).unwrap();
        assert_eq!(duplication(&z4, &ideal(&z4, 2)).unwrap().ring().size(), 8);
        let z6 = zmod(6).unwrap();
        assert_eq!(duplication(&z6, &ideal(&z6, 2)).unwrap().ring().size(), 18);
        assert_eq!(duplication(&z6, &ideal(&z6, 3)).unwrap().ring().size(), 12);
        assert_eq!(duplication(&z6, &z6.zero_ideal()).err(), Some(FinError::TrivialIdeal));
        assert_eq!(duplication(&z6, &z6.unit_ideal()).err(), Some(FinError::TrivialIdeal));
    }

    #[test]
    fn spectrum_instances() {
        for (n, a, primes) in [(4, 2, 1), (6, 2, 3), (6, 3, 3), (8, 2, 1), (12, 2, 3), (10, 5, 3)] {
            let r = zmod(n).unwrap();
            let rep = verify_spectrum(&r, &ideal(&r, a), 64).unwrap();
            assert!(rep.passed(), "{}", rep.to_text());
            let detail = rep.get("spec-count").unwrap().detail.clone().unwrap();
            assert!(detail.starts_with(&format!("|Spec(R⋈I)| = {primes},")), "{detail}");
        }
    }

    #[test]
    fn idealization_coincides_only_when_square_zero() {
        for (n, a) in [(4, 2), (9, 3), (8, 4)] {
            let r = zmod(n).unwrap();
            let rep = verify_idealization_coincidence(&r, &ideal(&r, a)).unwrap();
            assert!(rep.passed(), "{}", rep.to_text());
        }
        let z6 = zmod(6).unwrap();
        assert!(matches!(
            verify_idealization_coincidence(&z6, &ideal(&z6, 2)),
            Err(FinError::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn parsing() {
        let r = parse_ring("Zmod(6)").unwrap();
        assert_eq!(r.size(), 6);
        assert_eq!(parse_ideal(&r, "(2)").unwrap().count(), 3);
        assert_eq!(parse_ideal(&r, "(2, 3)").unwrap().count(), 6);
        assert!(parse_ring("Z6").is_err());
        assert!(parse_ideal(&r, "2").is_err());
    }
}
