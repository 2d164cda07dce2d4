use std::collections::BTreeMap;
use std::fmt;

use super::laurent::Laurent;
use super::{Result, SerError};
use crate::field::Scalar;
use crate::linalg::{nullspace, Echelon};
use crate::numsgp::RelativeIdeal;

/// Exponent window `[lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        Window { lo, hi }
    }

    /// Grows the window by `by` on both ends.
    pub fn enlarged(self, by: i64) -> Self {
        Window::new(self.lo - by, self.hi + by)
    }

    /// Same centre, twice the width (rounded up to keep integer ends).
    pub fn doubled(self) -> Self {
        self.enlarged((self.hi - self.lo + 1) / 2)
    }

    pub fn contains_window(&self, other: &Window) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

/// A vector of `rank` Laurent series components.
pub type Element<F> = Vec<Laurent<F>>;

/// A `k`-subspace `M ⊆ T^rank` (`T = k((t))`) that is pinched between two
/// lattices on the components it is supported on:
///
/// `⊕ t^hi k[[t]] e_c  ⊆  M  ⊆  ⊕ t^lo k[[t]] e_c`   (c in the support),
///
/// and vanishes on the other components. `M` is stored exactly as the
/// finite-dimensional quotient by the lower lattice, i.e. by coefficient
/// vectors on `[lo, hi)`. Storage is canonical (`hi` minimal, `lo` the true
/// minimum order, reduced echelon basis), so module equality is equality of
/// values.
#[derive(Clone, PartialEq)]
pub struct ModuleWindow<F> {
    rank: usize,
    support: Vec<bool>,
    lo: i64,
    hi: i64,
    space: Echelon<F>,
}

fn column(rank: usize, lo: i64, comp: usize, exp: i64) -> usize {
    (exp - lo) as usize * rank + comp
}

impl<F: Scalar> ModuleWindow<F> {
    /// Builds the module `span(vectors) + ⊕_{support} t^hi k[[t]] e_c`.
    /// Every vector must vanish off the support and have order `>= lo`.
    pub fn from_parts(rank: usize, support: Vec<bool>, lo: i64, hi: i64, vectors: &[Element<F>]) -> Self {
        assert_eq!(support.len(), rank);
        let hi = hi.max(lo);
        let ncols = rank * (hi - lo) as usize;
        let rows: Vec<Vec<F>> = vectors
            .iter()
            .map(|v| {
                assert_eq!(v.len(), rank);
                let mut row = vec![F::zero(); ncols];
                for (c, comp) in v.iter().enumerate() {
                    for (e, x) in comp.truncate(hi).terms() {
                        assert!(support[c], "vector outside the support");
                        assert!(e >= lo, "vector below the window");
                        row[column(rank, lo, c, e)] = x.clone();
                    }
                }
                row
            })
            .collect();
        Self::from_rows(rank, support, lo, hi, rows)
    }

    /// The rank-1 monomial module `span{t^e : e ∈ E}`.
    pub fn monomial_ideal(e: &RelativeIdeal) -> Self {
        let vecs: Vec<Element<F>> = e
            .elements_below_bound()
            .iter()
            .map(|&x| vec![Laurent::monomial(F::one(), x)])
            .collect();
        Self::from_parts(1, vec![true], e.min(), e.full_from(), &vecs)
    }

    fn from_rows(rank: usize, support: Vec<bool>, lo: i64, hi: i64, rows: Vec<Vec<F>>) -> Self {
        let ncols = rank * (hi - lo) as usize;
        let mut m = ModuleWindow {
            rank,
            support,
            lo,
            hi,
            space: Echelon::new(rows, ncols),
        };
        m.canonicalize();
        m
    }

    fn canonicalize(&mut self) {
        // lower hi while every supported monomial at hi - 1 is in the space
        while self.hi > self.lo {
            let e = self.hi - 1;
            let all_in = (0..self.rank).filter(|&c| self.support[c]).all(|c| {
                let mut unit = vec![F::zero(); self.space.ncols()];
                unit[column(self.rank, self.lo, c, e)] = F::one();
                self.space.contains(&unit)
            });
            if !all_in {
                break;
            }
            let keep = self.rank * (self.hi - 1 - self.lo) as usize;
            let rows = self.space.rows().iter().map(|r| r[..keep].to_vec()).collect();
            self.hi -= 1;
            self.space = Echelon::new(rows, keep);
        }
        // raise lo to the true minimum order
        let first_nonzero = self
            .space
            .rows()
            .iter()
            .filter_map(|r| r.iter().position(|x| !x.is_zero()))
            .min();
        let new_lo = match first_nonzero {
            Some(col) => self.lo + (col / self.rank) as i64,
            None => self.hi,
        };
        if new_lo > self.lo {
            let drop = self.rank * (new_lo - self.lo) as usize;
            let rows = self.space.rows().iter().map(|r| r[drop..].to_vec()).collect();
            self.space = Echelon::new(rows, self.space.ncols() - drop);
            self.lo = new_lo;
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn support(&self) -> &[bool] {
        &self.support
    }

    /// Supported on every component (contains a regular element).
    pub fn is_regular(&self) -> bool {
        self.support.iter().all(|&b| b)
    }

    /// Minimum order over all elements.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Minimal `h` with `⊕ t^h k[[t]] e_c ⊆ M`.
    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn window(&self) -> Window {
        Window::new(self.lo, self.hi)
    }

    /// Dimension of `M / ⊕ t^hi k[[t]] e_c`.
    pub fn quotient_dim(&self) -> usize {
        self.space.rank()
    }

    /// Dimension of `M / ⊕ t^h k[[t]] e_c` for `h >= hi`.
    pub fn dim_below(&self, h: i64) -> usize {
        assert!(h >= self.hi, "dimension is only defined above the full bound");
        let supported = self.support.iter().filter(|&&b| b).count();
        self.space.rank() + supported * (h - self.hi) as usize
    }

    /// Minimum order on component `c`; `None` off the support.
    pub fn min_order(&self, c: usize) -> Option<i64> {
        if !self.support[c] {
            return None;
        }
        let found = self
            .space
            .rows()
            .iter()
            .filter_map(|r| {
                (0..(self.hi - self.lo)).find(|&k| !r[column(self.rank, self.lo, c, self.lo + k)].is_zero())
            })
            .min();
        Some(found.map_or(self.hi, |k| self.lo + k))
    }

    fn row_to_element(&self, row: &[F]) -> Element<F> {
        (0..self.rank)
            .map(|c| {
                Laurent::from_terms((self.lo..self.hi).map(|e| (e, row[column(self.rank, self.lo, c, e)].clone())))
            })
            .collect()
    }

    /// Polynomial representatives of the stored basis; together with the
    /// tail lattice they span `M`.
    pub fn basis_elements(&self) -> Vec<Element<F>> {
        self.space.rows().iter().map(|r| self.row_to_element(r)).collect()
    }

    /// Monomials `t^e e_c` for supported `c` and `e` in `[from, to)`; all of
    /// them lie in `M` when `from >= hi`.
    pub fn tail_monomials(&self, from: i64, to: i64) -> Vec<Element<F>> {
        let mut out = Vec::new();
        for e in from..to {
            for c in (0..self.rank).filter(|&c| self.support[c]) {
                out.push(unit_element(self.rank, c, e));
            }
        }
        out
    }

    /// Membership of an exact element.
    pub fn contains(&self, v: &[Laurent<F>]) -> bool {
        assert_eq!(v.len(), self.rank);
        let mut row = vec![F::zero(); self.space.ncols()];
        for (c, comp) in v.iter().enumerate() {
            for (e, x) in comp.terms() {
                if !self.support[c] || e < self.lo {
                    return false;
                }
                if e < self.hi {
                    row[column(self.rank, self.lo, c, e)] = x.clone();
                }
            }
        }
        self.space.contains(&row)
    }

    /// `self ⊆ other`.
    pub fn is_submodule_of(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.support.iter().zip(&other.support).all(|(&a, &b)| !a || b)
            && self.basis_elements().iter().all(|v| other.contains(v))
            && self
                .tail_monomials(self.hi, other.hi.max(self.hi))
                .iter()
                .all(|v| other.contains(v))
    }

    /// Applies a componentwise-linear map given on generators. `image`
    /// must send `t^hi k[[t]]^support` onto `t^hi k[[t]]^support'` for the
    /// caller's chosen bound; used for coordinate changes such as σ.
    pub fn map_with(&self, support: Vec<bool>, lo: i64, hi: i64, image: impl Fn(&Element<F>) -> Element<F>) -> Self {
        let vectors: Vec<Element<F>> = self.basis_elements().iter().map(&image).collect();
        ModuleWindow::from_parts(self.rank, support, lo, hi, &vectors)
    }

    /// Direct sum of rank-1 modules, component by component.
    pub fn direct_sum(parts: &[&ModuleWindow<F>]) -> Self {
        assert!(parts.iter().all(|p| p.rank == 1));
        let rank = parts.len();
        let lo = parts.iter().map(|p| p.lo).min().unwrap();
        let hi = parts.iter().map(|p| p.hi).max().unwrap();
        let mut vectors = Vec::new();
        for (c, p) in parts.iter().enumerate() {
            let lift = |v: &Laurent<F>| -> Element<F> {
                (0..rank)
                    .map(|k| if k == c { v.clone() } else { Laurent::zero() })
                    .collect()
            };
            for b in p.basis_elements() {
                vectors.push(lift(&b[0]));
            }
            for e in p.hi..hi {
                vectors.push(lift(&Laurent::monomial(F::one(), e)));
            }
        }
        ModuleWindow::from_parts(rank, vec![true; rank], lo, hi, &vectors)
    }

    /// The submodule of `self` generated over the componentwise ring `ring`
    /// by `gens`, i.e. `Σ g·ring`. Needs `ring` regular.
    pub fn span(ring: &ModuleWindow<F>, gens: &[Element<F>], cap: Window) -> Result<Self> {
        assert!(ring.is_regular(), "span needs a regular ring of definition");
        let rank = ring.rank;
        let gens: Vec<&Element<F>> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).collect();
        let support: Vec<bool> = (0..rank).map(|c| gens.iter().any(|g| !g[c].is_zero())).collect();
        if support.iter().all(|&b| !b) {
            return Err(SerError::ZeroModule);
        }
        // g · t^ring.hi k[[t]] e_c = t^(ring.hi + ord g_c) k[[t]] e_c lies in the span
        let hi = (0..rank)
            .filter(|&c| support[c])
            .map(|c| {
                gens.iter()
                    .filter_map(|g| g[c].order())
                    .map(|o| ring.hi + o)
                    .min()
                    .unwrap()
            })
            .max()
            .unwrap();
        let lo = ring.lo
            + gens
                .iter()
                .flat_map(|g| g.iter().filter_map(|x| x.order()))
                .min()
                .unwrap();
        let needed = Window::new(lo, hi);
        if !cap.contains_window(&needed) {
            return Err(SerError::WindowTooSmall { needed, cap });
        }
        let ring_basis = ring.basis_elements();
        let mut vectors = Vec::new();
        for g in gens {
            for b in &ring_basis {
                vectors.push(mul_componentwise(g, b));
            }
            let min_ord = g.iter().filter_map(|x| x.order()).min().unwrap();
            for m in ring.tail_monomials(ring.hi, hi - min_ord) {
                vectors.push(mul_componentwise(g, &m));
            }
        }
        Ok(ModuleWindow::from_parts(rank, support, lo, hi, &vectors))
    }

    /// `(self : m) = {z : z·m ⊆ self}` for componentwise multiplication,
    /// with `z` restricted to the support of `m` (the components on which a
    /// homomorphism out of `m` is determined). Needs `self` regular.
    pub fn colon(&self, m: &ModuleWindow<F>, cap: Window) -> Result<Self> {
        assert_eq!(self.rank, m.rank);
        let rank = self.rank;
        let mu_max = (0..rank).filter_map(|c| m.min_order(c)).max().unwrap();
        let lo = self.lo - mu_max;
        let hi = self.hi - m.lo;
        let maps: Vec<Vec<Vec<Laurent<F>>>> = generators_up_to(m, hi_for_tail(self.hi, lo))
            .into_iter()
            .map(|g| {
                (0..rank)
                    .map(|k| {
                        (0..rank)
                            .map(|c| if c == k { g[c].clone() } else { Laurent::zero() })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        solve_constraints(self, m.support.clone(), Window::new(lo, hi), &maps, cap)
    }

    /// `{z : Σ_c z_c m_c ∈ self for all m}`, the homomorphisms `m → self`
    /// for a rank-1 target, with `z` on the support of `m`.
    pub fn pairing_colon(&self, m: &ModuleWindow<F>, cap: Window) -> Result<Self> {
        assert_eq!(self.rank, 1);
        let lo = self.lo - m.hi;
        let hi = self.hi - m.lo;
        let maps: Vec<Vec<Vec<Laurent<F>>>> = generators_up_to(m, hi_for_tail(self.hi, lo))
            .into_iter()
            .map(|g| vec![g])
            .collect();
        solve_constraints(self, m.support.clone(), Window::new(lo, hi), &maps, cap)
    }
}

fn hi_for_tail(target_hi: i64, z_lo: i64) -> i64 {
    target_hi - z_lo
}

/// `k`-linear generators of `m` sufficient for testing `z·m ⊆ A` when `z`
/// has order `>= z_lo`: the basis plus tail monomials up to the exponent
/// where `z·t^e` lands in `A`'s full lattice anyway.
fn generators_up_to<F: Scalar>(m: &ModuleWindow<F>, upper: i64) -> Vec<Element<F>> {
    let mut gens = m.basis_elements();
    gens.extend(m.tail_monomials(m.hi, upper.max(m.hi)));
    gens
}

pub fn unit_element<F: Scalar>(rank: usize, comp: usize, e: i64) -> Element<F> {
    (0..rank)
        .map(|k| {
            if k == comp {
                Laurent::monomial(F::one(), e)
            } else {
                Laurent::zero()
            }
        })
        .collect()
}

pub fn mul_componentwise<F: Scalar>(a: &[Laurent<F>], b: &[Laurent<F>]) -> Element<F> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

/// Solves `{z ∈ window : Φ_g(z) ∈ target for every g}` where
/// `Φ_g(z)_k = Σ_c z_c · maps[g][k][c]`. The caller guarantees that the
/// solution set lies in `t^lo` and contains the `t^hi` lattice on `support`.
fn solve_constraints<F: Scalar>(
    target: &ModuleWindow<F>,
    support: Vec<bool>,
    window: Window,
    maps: &[Vec<Vec<Laurent<F>>>],
    cap: Window,
) -> Result<ModuleWindow<F>> {
    assert!(target.is_regular(), "colon target must be regular");
    if !cap.contains_window(&window) {
        return Err(SerError::WindowTooSmall { needed: window, cap });
    }
    let z_rank = support.len();
    let (lo, hi) = (window.lo, window.hi.max(window.lo));
    let free = target.space.free_columns();
    let t_rank = target.rank;
    // each unknown z_{c,n} contributes one column; constraint rows are keyed
    // by (generator, "below" exponent or residual column)
    let mut row_index: BTreeMap<(usize, u8, i64, usize), usize> = BTreeMap::new();
    let mut columns: Vec<Vec<(usize, F)>> = Vec::new();
    let mut unknowns = Vec::new();
    for n in lo..hi {
        for c in (0..z_rank).filter(|&c| support[c]) {
            unknowns.push((c, n));
        }
    }
    for &(c, n) in &unknowns {
        let mut entries: Vec<(usize, F)> = Vec::new();
        for (g, map) in maps.iter().enumerate() {
            let mut out = vec![F::zero(); target.space.ncols()];
            for (k, row) in map.iter().enumerate() {
                for (e, x) in row[c].terms() {
                    let exp = e + n;
                    if exp < target.lo {
                        let key = (g, 0u8, exp, k);
                        let next = row_index.len();
                        let r = *row_index.entry(key).or_insert(next);
                        entries.push((r, x.clone()));
                    } else if exp < target.hi {
                        let col = column(t_rank, target.lo, k, exp);
                        out[col] = out[col].clone() + x.clone();
                    }
                }
            }
            let residual = target.space.residual(&out);
            for &q in &free {
                if !residual[q].is_zero() {
                    let key = (g, 1u8, q as i64, 0);
                    let next = row_index.len();
                    let r = *row_index.entry(key).or_insert(next);
                    entries.push((r, residual[q].clone()));
                }
            }
        }
        columns.push(entries);
    }
    let nrows = row_index.len();
    let mut matrix = vec![vec![F::zero(); unknowns.len()]; nrows];
    for (j, entries) in columns.into_iter().enumerate() {
        for (r, x) in entries {
            matrix[r][j] = matrix[r][j].clone() + x;
        }
    }
    let solutions = nullspace(&matrix, unknowns.len());
    let vectors: Vec<Element<F>> = solutions
        .iter()
        .map(|sol| {
            (0..z_rank)
                .map(|c| {
                    Laurent::from_terms(
                        unknowns
                            .iter()
                            .zip(sol)
                            .filter(|((cc, _), _)| *cc == c)
                            .map(|((_, n), x)| (*n, x.clone())),
                    )
                })
                .collect()
        })
        .collect();
    Ok(ModuleWindow::from_parts(z_rank, support, lo, hi, &vectors))
}

impl<F: Scalar> fmt::Debug for ModuleWindow<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ModuleWindow(rank {}, window [{}, {}), support {:?}, basis [",
            self.rank, self.lo, self.hi, self.support
        )?;
        for (k, b) in self.basis_elements().iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(", "))?;
        }
        write!(f, "])")
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

    /// k[[t^2, t^3]] as a rank-1 window.
    fn cusp() -> ModuleWindow<F> {
        ModuleWindow::from_parts(1, vec![true], 0, 2, &[vec![mono(0)]])
    }

    #[test]
    fn canonical_storage() {
        let r = cusp();
        assert_eq!((r.lo(), r.hi()), (0, 2));
        assert_eq!(r.quotient_dim(), 1);
        // same module presented in a wider window
        let wide = ModuleWindow::from_parts(1, vec![true], -3, 9, &[0, 2, 3, 4, 5, 6, 7, 8].map(|e| vec![mono(e)]));
        assert_eq!(wide, r);
        assert_eq!(r.dim_below(24), 23);
        assert!(r.contains(&[mono(5)]));
        assert!(!r.contains(&[mono(1)]));
        assert!(!r.contains(&[mono(-1)]));
    }

    #[test]
    fn colon_of_maximal_ideal() {
        let r = cusp();
        let cap = Window::new(-10, 20);
        let m = ModuleWindow::span(&r, &[vec![mono(2)], vec![mono(3)]], cap).unwrap();
        assert_eq!((m.lo(), m.hi()), (2, 2));
        let mm = m.colon(&m, cap).unwrap();
        // k[[t]]
        assert_eq!((mm.lo(), mm.hi()), (0, 0));
        assert_eq!(r.colon(&r, cap).unwrap(), r);
        let rm = r.colon(&m, cap).unwrap();
        assert_eq!(rm, mm);
    }

    #[test]
    fn window_cap_is_enforced() {
        let r = cusp();
        let cap = Window::new(0, 3);
        let err = ModuleWindow::span(&r, &[vec![mono(4)]], cap).unwrap_err();
        assert!(matches!(err, SerError::WindowTooSmall { .. }));
    }

    #[test]
    fn partial_support_span() {
        let d = ModuleWindow::<F>::from_parts(2, vec![true, true], 0, 0, &[]);
        let axis = ModuleWindow::span(&d, &[vec![Laurent::zero(), mono(1)]], Window::new(-5, 5)).unwrap();
        assert_eq!(axis.support(), &[false, true]);
        assert_eq!((axis.lo(), axis.hi()), (1, 1));
        assert!(axis.is_submodule_of(&d));
        assert!(!d.is_submodule_of(&axis));
    }
}
