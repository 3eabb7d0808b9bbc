//! Submodules of the injective hull `E` of the residue field.
//!
//! For `k[[x,y]]`, `E` is the module of inverse polynomials
//! `x^{-r} y^{-s}` (`r, s >= 1`) under contraction; finite submodules spanned
//! by inverse monomials are [`InverseMonomialModule`]s. For the truncated
//! semigroup rings and monomial boxes, `E` is modelled by the linear dual of
//! the algebra (see [`crate::algebra::MonomialAlgebra::dual`]); the
//! basic-emptiness tests below work on any [`FiniteModule`].

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::FiniteModule;
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::monomial2::MonomialIdeal;
use crate::semigroup_ring::TruncatedSemigroupAlgebra;

/// `x^n y^m · x^{-r} y^{-s}`; the product vanishes once an exponent would
/// reach zero.
pub fn contraction_action(mono: (u32, u32), z: (u32, u32)) -> Option<(u32, u32)> {
    let (n, m) = mono;
    let (r, s) = z;
    (r > n && s > m).then(|| (r - n, s - m))
}

/// A finite set of inverse monomials `(r, s)` standing for `x^{-r} y^{-s}`,
/// closed under contraction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InverseMonomialModule {
    monos: BTreeSet<(u32, u32)>,
}

impl InverseMonomialModule {
    /// Requires the set to be closed under contraction already.
    pub fn new<I: IntoIterator<Item = (u32, u32)>>(monos: I) -> Result<Self> {
        let (module, added) = Self::closure_of(monos)?;
        if !added.is_empty() {
            return Err(Error::NotSubmodule(format!(
                "missing contractions such as x^-{}*y^-{}",
                added[0].0, added[0].1
            )));
        }
        Ok(module)
    }

    /// The smallest submodule containing `monos`, with the monomials that had
    /// to be added.
    pub fn closure_of<I: IntoIterator<Item = (u32, u32)>>(
        monos: I,
    ) -> Result<(Self, Vec<(u32, u32)>)> {
        let given: BTreeSet<(u32, u32)> = monos.into_iter().collect();
        if let Some(&(r, s)) = given.iter().find(|&&(r, s)| r == 0 || s == 0) {
            return Err(Error::InvalidParam(format!(
                "inverse monomial exponents must be at least 1, got ({r},{s})"
            )));
        }
        let mut all = BTreeSet::new();
        for &(r, s) in &given {
            for a in 1..=r {
                for b in 1..=s {
                    all.insert((a, b));
                }
            }
        }
        let added = all.difference(&given).copied().collect();
        Ok((InverseMonomialModule { monos: all }, added))
    }

    fn from_set(monos: BTreeSet<(u32, u32)>) -> Self {
        InverseMonomialModule { monos }
    }

    pub fn zero() -> Self {
        Self::from_set(BTreeSet::new())
    }

    /// `(0 :_E m^k)`: inverse monomials of total degree at most `k + 1`.
    pub fn socle_power(k: u32) -> Self {
        let mut s = BTreeSet::new();
        for r in 1..=k {
            for t in 1..=k + 1 - r {
                s.insert((r, t));
            }
        }
        Self::from_set(s)
    }

    pub fn monomials(&self) -> &BTreeSet<(u32, u32)> {
        &self.monos
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn contains(&self, r: u32, s: u32) -> bool {
        self.monos.contains(&(r, s))
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.monos.is_subset(&other.monos)
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self::from_set(self.monos.union(&other.monos).copied().collect())
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Self::from_set(self.monos.intersection(&other.monos).copied().collect())
    }

    /// `(0 :_E I) = {x^{-r} y^{-s} : x^{r-1} y^{s-1} ∉ I}`.
    pub fn ann_e(i: &MonomialIdeal) -> Result<Self> {
        if !i.is_m_primary() {
            return Err(Error::InfiniteAnnihilator(format!("(0 :_E {i})")));
        }
        let a = i.generators().last().map_or(0, |g| g.0);
        let b = i.generators().first().map_or(0, |g| g.1);
        let mut s = BTreeSet::new();
        for r in 1..=a {
            for t in 1..=b {
                if !i.contains(r - 1, t - 1) {
                    s.insert((r, t));
                }
            }
        }
        Ok(Self::from_set(s))
    }

    /// `ann_R(L)`, the monomial ideal of everything killing `L`.
    pub fn ann_r(&self) -> MonomialIdeal {
        let r_max = self.monos.iter().map(|m| m.0).max().unwrap_or(0);
        let s_max = self.monos.iter().map(|m| m.1).max().unwrap_or(0);
        let mut gens = vec![(r_max, 0), (0, s_max)];
        for a in 0..r_max {
            for b in 0..s_max {
                if !self.contains(a + 1, b + 1) {
                    gens.push((a, b));
                }
            }
        }
        MonomialIdeal::new(gens)
    }

    /// `J L`, the span of every generator of `J` applied to every monomial.
    pub fn scale(&self, j: &MonomialIdeal) -> Self {
        let mut s = BTreeSet::new();
        for &g in j.generators() {
            for &z in &self.monos {
                if let Some(w) = contraction_action(g, z) {
                    s.insert(w);
                }
            }
        }
        Self::from_set(s)
    }

    pub fn m_times(&self) -> Self {
        self.scale(&MonomialIdeal::maximal())
    }

    /// `(L :_W J)` for a finite window `W`.
    pub fn colon_within(&self, j: &MonomialIdeal, window: &Self) -> Self {
        let kept = window.monos.iter().filter(|&&z| {
            j.generators()
                .iter()
                .all(|&g| contraction_action(g, z).is_none_or(|w| self.contains(w.0, w.1)))
        });
        Self::from_set(kept.copied().collect())
    }

    /// `(L :_E J)`; finite because `J` must be m-primary.
    pub fn module_colon(&self, j: &MonomialIdeal) -> Result<Self> {
        if !j.is_m_primary() {
            return Err(Error::InfiniteAnnihilator(format!("(L :_E {j})")));
        }
        let a = j.generators().last().map_or(0, |g| g.0);
        let b = j.generators().first().map_or(0, |g| g.1);
        let r_max = self.monos.iter().map(|m| m.0).max().unwrap_or(0);
        let s_max = self.monos.iter().map(|m| m.1).max().unwrap_or(0);
        let mut window = BTreeSet::new();
        for r in 1..=a + r_max {
            for s in 1..=b + s_max {
                window.insert((r, s));
            }
        }
        Ok(self.colon_within(j, &Self::from_set(window)))
    }

    /// `(0 :_L m)`: only `x^{-1} y^{-1}` is killed by both variables.
    pub fn socle(&self) -> Self {
        self.intersect(&Self::from_set([(1, 1)].into_iter().collect()))
    }

    /// Minimal number of generators: the maximal monomials.
    pub fn mu(&self) -> usize {
        self.len() - self.m_times().len()
    }

    /// Minimal number of cogenerators: the socle length.
    pub fn eta(&self) -> usize {
        self.socle().len()
    }

    /// `η(B/A) = len((A :_B m)/A)`.
    pub fn eta_quotient(a: &Self, b: &Self) -> usize {
        a.colon_within(&MonomialIdeal::maximal(), b).len() - a.len()
    }

    /// Monomial submodules `C ⊂ A` with `A/C` simple: drop one maximal monomial.
    pub fn monomial_covers_below(&self) -> Vec<Self> {
        let m = self.m_times();
        self.monos
            .difference(&m.monos)
            .map(|z| {
                let mut s = self.monos.clone();
                s.remove(z);
                Self::from_set(s)
            })
            .collect()
    }

    /// `A = m (A :_B m)`.
    pub fn be_fixed_point(&self, b: &Self) -> bool {
        self.colon_within(&MonomialIdeal::maximal(), b).m_times() == *self
    }

    /// `η(B/C) <= η(B/A)` over the monomial covers `C` of `A`. Non-monomial
    /// covers are not examined.
    pub fn be_monomial_covers(&self, b: &Self) -> bool {
        let base = Self::eta_quotient(self, b);
        self.monomial_covers_below()
            .iter()
            .all(|c| Self::eta_quotient(c, b) <= base)
    }
}

impl fmt::Display for InverseMonomialModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .monos
            .iter()
            .map(|&(r, s)| format!("x^-{r}*y^-{s}"))
            .collect();
        write!(f, "[{}]", terms.join(", "))
    }
}

/// `(0 :_{E_N} I)` in the dual of a truncated semigroup algebra.
pub fn sg_ann_e(i: &Subspace) -> Subspace {
    i.orthogonal()
}

/// `ann_R(L)` for a dual submodule `L`.
pub fn sg_ann_r(alg: &TruncatedSemigroupAlgebra, l: &Subspace) -> Subspace {
    alg.algebra().annihilator_of_dual(l)
}

/// `(L :_{E_N} J)`.
pub fn sg_module_colon(alg: &TruncatedSemigroupAlgebra, l: &Subspace, j: &Subspace) -> Subspace {
    alg.dual().colon(l, &alg.algebra().dual_multipliers(j))
}

/// `J L` inside `E_N`.
pub fn sg_scale(alg: &TruncatedSemigroupAlgebra, j: &Subspace, l: &Subspace) -> Subspace {
    alg.dual().act(&alg.algebra().dual_multipliers(j), l)
}

fn meet(a: &Subspace, b: &Subspace) -> Subspace {
    a.intersect(b).expect("same ambient")
}

fn join(a: &Subspace, b: &Subspace) -> Subspace {
    a.sum(b).expect("same ambient")
}

/// `A/W` is basically empty in `B/W` by the fixed-point criterion
/// `A = m (A :_B m)`, read modulo `W`.
pub fn be_fixed_point(x: &FiniteModule, a: &Subspace, b: &Subspace, w: &Subspace) -> bool {
    let colon = meet(&x.colon_m(a), b);
    join(&x.m_times(&colon), w) == *a
}

/// The cover criterion: `η(B/C) <= η(B/A)` for every `C ⊇ W` covered by `A`.
pub fn be_eta_covers(x: &FiniteModule, a: &Subspace, b: &Subspace, w: &Subspace) -> Result<bool> {
    let base = x.eta(a, b);
    for c in x.covers_below(a)? {
        if w.is_subspace_of(&c) && x.eta(&c, b) > base {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basic emptiness straight from the definition. Minimal cogenerating sets of
/// `B/A` are minimal generating sets of `ann(A)/ann(B)` in the dual; for every
/// proper `W ⊆ C ⊂ A` we try to extend one to a minimal generating set of
/// `ann(C)/ann(B)`.
pub fn be_by_definition(x: &FiniteModule, a: &Subspace, b: &Subspace, w: &Subspace) -> Result<bool> {
    let y = x.dual_module();
    let ann_b = b.orthogonal();
    let l = a.orthogonal();
    let cogens = l.complement_rows(&join(&y.m_times(&l), &ann_b));
    for c in x.submodules_below(a)? {
        if c == *a || !w.is_subspace_of(&c) {
            continue;
        }
        let k = c.orthogonal();
        let base = join(&y.m_times(&k), &ann_b);
        // independent modulo m ann(C) + ann(B) means the set extends
        if base.add_vectors(cogens.iter().cloned()).rank() - base.rank() == cogens.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `L/U` is basically full in `M/U` by `L = M ∩ ((mL + U) :_X m)`.
pub fn bf_fixed_point(x: &FiniteModule, l: &Subspace, m: &Subspace, u: &Subspace) -> bool {
    meet(m, &x.colon_m(&join(&x.m_times(l), u))) == *l
}

/// The cover criterion: `μ(N/U) <= μ(L/U)` for every cover `N` of `L` in `M`.
pub fn bf_mu_covers(x: &FiniteModule, l: &Subspace, m: &Subspace, u: &Subspace) -> Result<bool> {
    let base = x.mu(l, u);
    Ok(x.covers_above(l, m)?.iter().all(|n| x.mu(n, u) <= base))
}

/// Outcome of the principal-ring comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalProbe {
    /// An m-primary ideal that is not basically full, largest first.
    pub ring_witness: Option<Subspace>,
    /// A finite submodule of `E` that is not basically empty.
    pub dual_witness: Option<Subspace>,
    /// Ideals examined.
    pub checked: usize,
    /// Whether each ideal is basically full exactly when its annihilator is
    /// basically empty.
    pub agree: bool,
}

/// Searches the ideals of `A_N` whose basic fullness is not affected by the
/// truncation, i.e. those with `mI ⊇ (t^e : e >= N)`.
pub fn principal_ring_probe(alg: &TruncatedSemigroupAlgebra) -> Result<PrincipalProbe> {
    let primal = alg.primal();
    let dual = alg.dual();
    let step = alg.semigroup().conductor().max(1);
    let mut probe = PrincipalProbe { ring_witness: None, dual_witness: None, checked: 0, agree: true };
    for i in alg.enumerate_ideals()?.iter().rev() {
        if i.is_zero() || alg.ideal_order(i) + step > alg.truncation() {
            continue;
        }
        probe.checked += 1;
        let bf = bf_fixed_point(&primal, i, &primal.full(), &primal.zero());
        let a = sg_ann_e(i);
        let be = be_fixed_point(&dual, &a, &dual.full(), &dual.zero());
        probe.agree &= bf == be;
        if !bf && probe.ring_witness.is_none() {
            probe.ring_witness = Some(i.clone());
        }
        if !be && probe.dual_witness.is_none() {
            probe.dual_witness = Some(a);
        }
    }
    Ok(probe)
}
