use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::laurent::Laurent;
use super::module::{Element, ModuleWindow, Window};
use super::{Result, SerError};
use crate::field::Scalar;
use crate::numsgp::{NumericalSemigroup, RelativeIdeal};

/// An element `(left, right)` of `k((t))²`; elements of `D` have the form
/// `(r, r + i)`. `precision = Some(h)` means both coordinates are only
/// known modulo `t^h`.
#[derive(Clone, PartialEq)]
pub struct PairElement<F> {
    pub left: Laurent<F>,
    pub right: Laurent<F>,
    pub precision: Option<i64>,
}

impl<F: Scalar> PairElement<F> {
    pub fn new(left: Laurent<F>, right: Laurent<F>) -> Self {
        PairElement {
            left,
            right,
            precision: None,
        }
    }

    /// `(x, x)`.
    pub fn diagonal(x: Laurent<F>) -> Self {
        Self::new(x.clone(), x)
    }

    /// `(r, r + i)`.
    pub fn from_parts(r: &Laurent<F>, i: &Laurent<F>) -> Self {
        Self::new(r.clone(), r + i)
    }

    pub fn one() -> Self {
        Self::diagonal(Laurent::one())
    }

    pub fn from_element(v: &[Laurent<F>]) -> Self {
        Self::new(v[0].clone(), v[1].clone())
    }

    pub fn to_element(&self) -> Element<F> {
        vec![self.left.clone(), self.right.clone()]
    }

    /// The `i` of `(r, r + i)`.
    pub fn difference(&self) -> Laurent<F> {
        &self.right - &self.left
    }

    pub fn is_zero(&self) -> bool {
        self.left.is_zero() && self.right.is_zero()
    }

    pub fn truncated(&self, hi: i64) -> Self {
        PairElement {
            left: self.left.truncate(hi),
            right: self.right.truncate(hi),
            precision: Some(self.precision.map_or(hi, |p| p.min(hi))),
        }
    }

    /// Smallest order that a coordinate can have: the true order when known,
    /// the precision when the coordinate is zero modulo it.
    fn effective_order(&self, coord: &Laurent<F>) -> Option<i64> {
        coord.order().or(self.precision)
    }
}

impl<F: Scalar> fmt::Debug for PairElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)?;
        if let Some(p) = self.precision {
            write!(f, " mod t^{p}")?;
        }
        Ok(())
    }
}

/// Componentwise product in `k((t))²`, cross-checked against the
/// `(r,e)(s,f) = (rs, rf + se + ef)` form of the duplication.
pub fn pair_mul<F: Scalar>(a: &PairElement<F>, b: &PairElement<F>) -> Result<PairElement<F>> {
    let mut precision: Option<i64> = None;
    let mut floor: Option<i64> = None;
    for (x, y) in [(&a.left, &b.left), (&a.right, &b.right)] {
        let (ox, oy) = (a.effective_order(x), b.effective_order(y));
        let mut bounds = Vec::new();
        if let (Some(p), Some(o)) = (a.precision, oy) {
            bounds.push(p + o);
        }
        if let (Some(p), Some(o)) = (b.precision, ox) {
            bounds.push(p + o);
        }
        if let Some(p) = bounds.into_iter().min() {
            precision = Some(precision.map_or(p, |q: i64| q.min(p)));
        }
        if let (Some(ox), Some(oy)) = (ox, oy) {
            floor = Some(floor.map_or(ox + oy, |f: i64| f.min(ox + oy)));
        }
    }
    if let (Some(p), Some(f)) = (precision, floor) {
        if p <= f {
            return Err(SerError::PrecisionUnderflow);
        }
    }
    let mut product = PairElement::new(&a.left * &b.left, &a.right * &b.right);
    let (r, e) = (&a.left, a.difference());
    let (s, f) = (&b.left, b.difference());
    let rs = r * s;
    let twisted = &(&(r * &f) + &(s * &e)) + &(&e * &f);
    let mut formula = PairElement::new(rs.clone(), &rs + &twisted);
    if let Some(p) = precision {
        product = product.truncated(p);
        formula = formula.truncated(p);
    }
    assert_eq!(product, formula, "componentwise and twisted products disagree");
    Ok(product)
}

/// Regular (non-zerodivisor) in `k((t))²` iff both coordinates are nonzero.
/// For elements known only modulo `t^h`, a coordinate vanishing modulo
/// `t^h` leaves the question open.
pub fn regular_test<F: Scalar>(d: &PairElement<F>) -> Result<bool> {
    let left = !d.left.is_zero();
    let right = !d.right.is_zero();
    match d.precision {
        Some(p) if !(left && right) => Err(SerError::Indeterminate { precision: p }),
        _ => Ok(left && right),
    }
}

/// `Hom_R(D, I)` through its splitting `I ⊕ (I:I)`: the pair `(ι, y)`
/// stands for `(z, z + j) ↦ ι z + y j`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomDecomposition<F: Scalar> {
    pub i_part: ModuleWindow<F>,
    pub end_part: ModuleWindow<F>,
    /// `i_part ⊕ end_part` as a rank-2 window in `(ι, y)` coordinates.
    pub coords: ModuleWindow<F>,
}

impl<F: Scalar> HomDecomposition<F> {
    /// Value of the functional `(ι, y)` at `w = (z, z + j)`.
    pub fn evaluate(iota: &Laurent<F>, y: &Laurent<F>, w: &PairElement<F>) -> Laurent<F> {
        &(iota * &w.left) + &(y * &w.difference())
    }

    /// `d · (ι, y)` for `d = (l, r)` under `(d·f)(w) = f(d w)`:
    /// `(l ι + (r − l) y, r y)`.
    pub fn act(d: &PairElement<F>, iota: &Laurent<F>, y: &Laurent<F>) -> (Laurent<F>, Laurent<F>) {
        let diff = d.difference();
        (&(&d.left * iota) + &(&diff * y), &d.right * y)
    }
}

/// The truncated model of `R`, `I` and `D = R⋈I` for a semigroup and an
/// integral monomial ideal.
#[derive(Clone)]
pub struct DupModel<F: Scalar> {
    semigroup: Arc<NumericalSemigroup>,
    ideal: RelativeIdeal,
    cap: Window,
    r: ModuleWindow<F>,
    i: ModuleWindow<F>,
    d: ModuleWindow<F>,
    hom: HomDecomposition<F>,
}

impl<F: Scalar> DupModel<F> {
    /// Window `[−2c, 4c + g_max)`; nested colons each consume at most
    /// `c + g_max` of it.
    pub fn default_window(semigroup: &NumericalSemigroup, ideal: &RelativeIdeal) -> Window {
        let c = semigroup.conductor();
        Window::new(-2 * c, 4 * c + ideal.max_generator())
    }

    pub fn build(semigroup: &Arc<NumericalSemigroup>, ideal: &RelativeIdeal, window: Option<Window>) -> Result<Self> {
        if ideal.semigroup() != semigroup {
            return Err(crate::numsgp::SemigroupError::MismatchedSemigroups.into());
        }
        let unit = RelativeIdeal::unit(semigroup);
        if !ideal.is_subset_of(&unit) {
            return Err(SerError::NotIntegral {
                shift: ideal.integral_shift(),
            });
        }
        if ideal.contains(0) {
            return Err(SerError::TrivialIdeal);
        }
        let cap = window.unwrap_or_else(|| Self::default_window(semigroup, ideal));
        let c = semigroup.conductor();
        let n = c.max(ideal.full_from());
        if !cap.contains_window(&Window::new(0, n)) {
            return Err(SerError::WindowTooSmall {
                needed: Window::new(0, n),
                cap,
            });
        }
        let mono = |e: i64| Laurent::monomial(F::one(), e);
        let r_vecs: Vec<Element<F>> = (0..c)
            .filter(|&s| semigroup.contains(s))
            .map(|s| vec![mono(s)])
            .collect();
        let r = ModuleWindow::from_parts(1, vec![true], 0, c, &r_vecs);
        let i = ModuleWindow::monomial_ideal(ideal);
        let mut d_vecs: Vec<Element<F>> = (0..n)
            .filter(|&s| semigroup.contains(s))
            .map(|s| vec![mono(s), mono(s)])
            .collect();
        d_vecs.extend(
            (0..n)
                .filter(|&e| ideal.contains(e))
                .map(|e| vec![Laurent::zero(), mono(e)]),
        );
        let d = ModuleWindow::from_parts(2, vec![true, true], 0, n, &d_vecs);
        let end_part = i.colon(&i, cap)?;
        let coords = ModuleWindow::direct_sum(&[&i, &end_part]);
        Ok(DupModel {
            semigroup: Arc::clone(semigroup),
            ideal: ideal.clone(),
            cap,
            r,
            i: i.clone(),
            d,
            hom: HomDecomposition {
                i_part: i,
                end_part,
                coords,
            },
        })
    }

    /// The same model under a different cap.
    pub fn with_cap(&self, cap: Window) -> Result<Self> {
        Self::build(&self.semigroup, &self.ideal, Some(cap))
    }

    pub fn semigroup(&self) -> &Arc<NumericalSemigroup> {
        &self.semigroup
    }

    pub fn ideal(&self) -> &RelativeIdeal {
        &self.ideal
    }

    pub fn cap(&self) -> Window {
        self.cap
    }

    pub fn r_window(&self) -> &ModuleWindow<F> {
        &self.r
    }

    pub fn i_window(&self) -> &ModuleWindow<F> {
        &self.i
    }

    pub fn d_window(&self) -> &ModuleWindow<F> {
        &self.d
    }

    pub fn hom(&self) -> &HomDecomposition<F> {
        &self.hom
    }

    pub fn descriptor(&self) -> String {
        let gens: Vec<String> = self.semigroup.generators().iter().map(|g| g.to_string()).collect();
        let p = match F::characteristic() {
            0 => "Q".to_string(),
            p => p.to_string(),
        };
        format!(
            "model S=<{}> I={} p={} window={}",
            gens.join(","),
            self.ideal.to_string().trim_start_matches("E := "),
            p,
            self.cap
        )
    }

    pub fn contains(&self, d: &PairElement<F>) -> bool {
        self.d.contains(&d.to_element())
    }

    /// Generators of `D` as a ring module over itself.
    pub fn unit_generators(&self) -> Vec<PairElement<F>> {
        vec![PairElement::one()]
    }

    /// `𝔒₁ = (0) × I`.
    pub fn o1_generators(&self) -> Vec<PairElement<F>> {
        self.ideal
            .generators()
            .iter()
            .map(|&e| PairElement::new(Laurent::zero(), Laurent::monomial(F::one(), e)))
            .collect()
    }

    /// `𝔒₂ = I × (0)`.
    pub fn o2_generators(&self) -> Vec<PairElement<F>> {
        self.ideal
            .generators()
            .iter()
            .map(|&e| PairElement::new(Laurent::monomial(F::one(), e), Laurent::zero()))
            .collect()
    }

    /// The maximal ideal `{(r, r + i) : r ∈ 𝔪}` of the local ring `D`.
    pub fn maximal_ideal_generators(&self) -> Vec<PairElement<F>> {
        let mut gens: Vec<PairElement<F>> = self
            .semigroup
            .generators()
            .iter()
            .map(|&s| PairElement::diagonal(Laurent::monomial(F::one(), s)))
            .collect();
        gens.extend(self.o1_generators());
        gens
    }

    /// A random element of `D`: random combination of the monomials
    /// `(t^s, t^s)` and `(0, t^e)` of degree below `hi(D) + c`.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> PairElement<F> {
        let top = self.d.hi() + self.semigroup.conductor().max(1);
        let mut left = Vec::new();
        let mut diff = Vec::new();
        for e in 0..top {
            if self.semigroup.contains(e) && rng.gen_bool(0.5) {
                left.push((e, F::random(rng)));
            }
            if self.ideal.contains(e) && rng.gen_bool(0.5) {
                diff.push((e, F::random(rng)));
            }
        }
        PairElement::from_parts(&Laurent::from_terms(left), &Laurent::from_terms(diff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use num_traits::One;

    type F = Fp<101>;

    fn mono(e: i64) -> Laurent<F> {
        Laurent::monomial(F::one(), e)
    }

    fn sg(gens: &[i64]) -> Arc<NumericalSemigroup> {
        Arc::new(NumericalSemigroup::new(gens).unwrap())
    }

    #[test]
    fn build_examples() {
        let s = sg(&[2, 3]);
        let m = RelativeIdeal::maximal(&s);
        let model = DupModel::<F>::build(&s, &m, Some(Window::new(0, 24))).unwrap();
        assert_eq!(model.r_window().dim_below(24), 23);

        let s = sg(&[3, 4, 5]);
        let k3 = RelativeIdeal::canonical(&s).translate(3);
        let model = DupModel::<F>::build(&s, &k3, Some(Window::new(0, 30))).unwrap();
        assert_eq!(model.i_window().dim_below(30), 26);

        let n = sg(&[1]);
        let model = DupModel::<F>::build(&n, &RelativeIdeal::maximal(&n), None).unwrap();
        assert_eq!((model.r_window().lo(), model.r_window().hi()), (0, 0));
    }

    #[test]
    fn build_rejections() {
        let s = sg(&[3, 4, 5]);
        let k = RelativeIdeal::canonical(&s);
        assert_eq!(
            DupModel::<F>::build(&s, &k, None).err(),
            Some(SerError::NotIntegral { shift: 3 })
        );
        assert_eq!(
            DupModel::<F>::build(&s, &RelativeIdeal::unit(&s), None).err(),
            Some(SerError::TrivialIdeal)
        );
        let k3 = k.translate(3);
        assert!(matches!(
            DupModel::<F>::build(&s, &k3, Some(Window::new(0, 4))),
            Err(SerError::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn pair_products() {
        let x = PairElement::new(mono(2), &mono(2) + &mono(5));
        assert_eq!(pair_mul(&PairElement::one(), &x).unwrap(), x);
        let a = PairElement::diagonal(mono(2));
        let b = PairElement::new(Laurent::zero(), mono(2));
        assert_eq!(pair_mul(&a, &b).unwrap(), PairElement::new(Laurent::zero(), mono(4)));
        let e = PairElement::new(Laurent::zero(), mono(3));
        let f = PairElement::new(Laurent::zero(), mono(4));
        assert_eq!(pair_mul(&e, &f).unwrap(), PairElement::new(Laurent::zero(), mono(7)));
    }

    #[test]
    fn truncated_products_track_precision() {
        let a = PairElement::diagonal(mono(1)).truncated(4);
        let b = PairElement::diagonal(mono(2));
        let p = pair_mul(&a, &b).unwrap();
        assert_eq!(p.precision, Some(6));
        let zero_ish = PairElement::<F>::new(Laurent::zero(), Laurent::zero()).truncated(1);
        let c = PairElement::diagonal(mono(-3)).truncated(-2);
        assert_eq!(pair_mul(&zero_ish, &c).err(), Some(SerError::PrecisionUnderflow));
    }

    #[test]
    fn regularity() {
        assert_eq!(regular_test(&PairElement::<F>::one()), Ok(true));
        assert_eq!(regular_test(&PairElement::new(Laurent::zero(), mono(3))), Ok(false));
        assert_eq!(regular_test(&PairElement::diagonal(mono(4))), Ok(true));
        let unknown = PairElement::new(mono(1), mono(9)).truncated(5);
        assert_eq!(regular_test(&unknown), Err(SerError::Indeterminate { precision: 5 }));
    }

    #[test]
    fn hom_action_matches_definition() {
        // (d·f)(w) = f(d w) for the coordinate action
        let d = PairElement::new(&mono(3) + &mono(4), mono(3));
        let (iota, y) = (mono(4), &mono(0) + &mono(2));
        let w = PairElement::new(mono(5), &mono(5) + &mono(6));
        let (ai, ay) = HomDecomposition::act(&d, &iota, &y);
        let lhs = HomDecomposition::evaluate(&ai, &ay, &w);
        let dw = pair_mul(&d, &w).unwrap();
        let rhs = HomDecomposition::evaluate(&iota, &y, &dw);
        assert_eq!(lhs, rhs);
    }
}
