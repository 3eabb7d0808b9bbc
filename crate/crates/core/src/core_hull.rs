//! Reductions, expansions, cores and hulls.
//!
//! A reduction of `N` in `M` (over a base `U`) is a submodule `U ⊆ L ⊆ N`
//! with `cl(L, M, U) = cl(N, M, U)`; the core is the intersection of all of
//! them. Dually an expansion of `A` in `B` (over `W`) is `A ⊆ C ⊆ B` with
//! `int(C, B, W) = int(A, B, W)`, and the hull is their sum.
//!
//! Candidates come from a [`FiniteContext`] lattice, from the full submodule
//! lattice of a [`Ring`], or, in a monomial box, from monomial submodules
//! only (labelled `monomial-core` / `monomial-hull`).

use std::collections::BTreeSet;

use crate::algebra::FiniteModule;
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::pair_ops::{FiniteContext, Model, PairOperation, Ring, Side, Table};
use crate::semigroup_ring::{dual_stability_check, stability_check, Outcome, TruncatedSemigroupAlgebra};

/// Every reduction of a target pair, with both views of minimality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionSet {
    /// `core` or `monomial-core`.
    pub label: String,
    pub operation: String,
    pub side: Side,
    pub target: Subspace,
    pub ambient: Subspace,
    pub base: Subspace,
    /// `cl(N, M, U)`.
    pub value: Subspace,
    pub reductions: Vec<Subspace>,
    /// Reductions containing no smaller reduction.
    pub minimal: Vec<Subspace>,
    /// Where cover-by-cover descent from the target gets stuck.
    pub minimal_by_descent: Vec<Subspace>,
    pub core: Subspace,
    /// Intersection of the minimal reductions only.
    pub core_of_minimal: Subspace,
}

impl ReductionSet {
    pub fn is_consistent(&self) -> bool {
        self.core == self.core_of_minimal
    }

    pub fn descent_agrees(&self) -> bool {
        self.minimal == self.minimal_by_descent
    }
}

/// Every expansion of a target pair, with both views of maximality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionSet {
    /// `hull` or `monomial-hull`.
    pub label: String,
    pub operation: String,
    pub side: Side,
    pub target: Subspace,
    pub ambient: Subspace,
    pub base: Subspace,
    /// `int(A, B, W)`.
    pub value: Subspace,
    pub expansions: Vec<Subspace>,
    pub maximal: Vec<Subspace>,
    pub maximal_by_ascent: Vec<Subspace>,
    pub hull: Subspace,
    pub hull_of_maximal: Subspace,
}

impl ExpansionSet {
    pub fn is_consistent(&self) -> bool {
        self.hull == self.hull_of_maximal
    }

    pub fn ascent_agrees(&self) -> bool {
        self.maximal == self.maximal_by_ascent
    }
}

struct Found {
    value: Subspace,
    all: Vec<Subspace>,
    extreme: Vec<Subspace>,
    by_walk: Vec<Subspace>,
}

/// Shared search: `below = true` looks for reductions (walking down),
/// otherwise expansions (walking up).
fn search<V, C>(target: &Subspace, candidates: Vec<Subspace>, below: bool, value: V, covers: C) -> Result<Found>
where
    V: Fn(&Subspace) -> Result<Option<Subspace>>,
    C: Fn(&Subspace) -> Result<Vec<Subspace>>,
{
    let v = value(target)?
        .ok_or_else(|| Error::InvalidParam("operation is not defined on the target pair".into()))?;
    let mut all = BTreeSet::new();
    for c in candidates {
        if value(&c)?.as_ref() == Some(&v) {
            all.insert(c);
        }
    }
    let inside = |a: &Subspace, b: &Subspace| if below { a.is_subspace_of(b) } else { b.is_subspace_of(a) };
    let extreme: Vec<Subspace> = all
        .iter()
        .filter(|x| !all.iter().any(|y| y != *x && inside(y, x)))
        .cloned()
        .collect();
    let mut seen = BTreeSet::new();
    let mut stuck = BTreeSet::new();
    let mut stack = vec![target.clone()];
    seen.insert(target.clone());
    while let Some(x) = stack.pop() {
        let next: Vec<Subspace> = covers(&x)?.into_iter().filter(|c| all.contains(c)).collect();
        if next.is_empty() {
            stuck.insert(x);
        }
        for c in next {
            if seen.insert(c.clone()) {
                stack.push(c);
            }
        }
    }
    Ok(Found { value: v, all: all.into_iter().collect(), extreme, by_walk: stuck.into_iter().collect() })
}

fn meet_all(start: &Subspace, xs: &[Subspace]) -> Result<Subspace> {
    xs.iter().try_fold(start.clone(), |acc, x| acc.intersect(x))
}

fn join_all(start: &Subspace, xs: &[Subspace]) -> Result<Subspace> {
    xs.iter().try_fold(start.clone(), |acc, x| acc.sum(x))
}

fn reduction_set(label: &str, op: &PairOperation, side: Side, n: &Subspace, m: &Subspace, u: &Subspace, f: Found) -> Result<ReductionSet> {
    let core = meet_all(n, &f.all)?;
    let core_of_minimal = meet_all(n, &f.extreme)?;
    Ok(ReductionSet {
        label: label.into(),
        operation: op.name().into(),
        side,
        target: n.clone(),
        ambient: m.clone(),
        base: u.clone(),
        value: f.value,
        reductions: f.all,
        minimal: f.extreme,
        minimal_by_descent: f.by_walk,
        core,
        core_of_minimal,
    })
}

fn expansion_set(label: &str, op: &PairOperation, side: Side, a: &Subspace, b: &Subspace, w: &Subspace, f: Found) -> Result<ExpansionSet> {
    let hull = join_all(a, &f.all)?;
    let hull_of_maximal = join_all(a, &f.extreme)?;
    Ok(ExpansionSet {
        label: label.into(),
        operation: op.name().into(),
        side,
        target: a.clone(),
        ambient: b.clone(),
        base: w.clone(),
        value: f.value,
        expansions: f.all,
        maximal: f.extreme,
        maximal_by_ascent: f.by_walk,
        hull,
        hull_of_maximal,
    })
}

fn labels(ctx: &FiniteContext) -> (&'static str, &'static str) {
    match ctx.model() {
        Model::MonomialBox { .. } => ("monomial-core", "monomial-hull"),
        Model::Semigroup(_) => ("core", "hull"),
    }
}

/// Reductions of `(N, M, U)` among the lattice elements of `ctx`. Covers are
/// lattice covers (rank drops by one).
pub fn reductions(
    ctx: &FiniteContext,
    side: Side,
    n: &Subspace,
    m: &Subspace,
    u: &Subspace,
    cl: &PairOperation,
) -> Result<ReductionSet> {
    let (ni, mi, ui) = (ctx.lookup(side, n)?, ctx.lookup(side, m)?, ctx.lookup(side, u)?);
    let lat = ctx.lattice(side);
    let table = Table::new(ctx, cl);
    let candidates: Vec<usize> = ctx.downs(side, ni).iter().copied().filter(|&l| ctx.le(side, ui, l)).collect();
    let value = |x: &Subspace| -> Result<Option<Subspace>> {
        Ok(table.get(side, ctx.lookup(side, x)?, mi, ui)?.map(|v| lat[v].clone()))
    };
    let covers = |x: &Subspace| -> Result<Vec<Subspace>> {
        let xi = ctx.lookup(side, x)?;
        Ok(ctx
            .downs(side, xi)
            .iter()
            .filter(|&&c| lat[c].rank() + 1 == x.rank())
            .map(|&c| lat[c].clone())
            .collect())
    };
    let f = search(n, candidates.iter().map(|&i| lat[i].clone()).collect(), true, value, covers)?;
    reduction_set(labels(ctx).0, cl, side, n, m, u, f)
}

/// Expansions of `(A, B, W)` among the lattice elements of `ctx`.
pub fn expansions(
    ctx: &FiniteContext,
    side: Side,
    a: &Subspace,
    b: &Subspace,
    w: &Subspace,
    int: &PairOperation,
) -> Result<ExpansionSet> {
    let (ai, bi, wi) = (ctx.lookup(side, a)?, ctx.lookup(side, b)?, ctx.lookup(side, w)?);
    let lat = ctx.lattice(side);
    let table = Table::new(ctx, int);
    let candidates: Vec<usize> = ctx.ups(side, ai).iter().copied().filter(|&c| ctx.le(side, c, bi)).collect();
    let value = |x: &Subspace| -> Result<Option<Subspace>> {
        Ok(table.get(side, ctx.lookup(side, x)?, bi, wi)?.map(|v| lat[v].clone()))
    };
    let covers = |x: &Subspace| -> Result<Vec<Subspace>> {
        let xi = ctx.lookup(side, x)?;
        Ok(ctx
            .ups(side, xi)
            .iter()
            .filter(|&&c| lat[c].rank() == x.rank() + 1)
            .map(|&c| lat[c].clone())
            .collect())
    };
    let f = search(a, candidates.iter().map(|&i| lat[i].clone()).collect(), false, value, covers)?;
    expansion_set(labels(ctx).1, int, side, a, b, w, f)
}

/// Reductions over every submodule of the ring model, not just a lattice.
pub fn ring_reductions(
    ring: &Ring,
    side: Side,
    n: &Subspace,
    m: &Subspace,
    u: &Subspace,
    cl: &PairOperation,
) -> Result<ReductionSet> {
    let module = ring.module(side);
    let candidates = module.submodules_below(n)?.into_iter().filter(|l| u.is_subspace_of(l)).collect();
    let value = |x: &Subspace| cl.evaluate(ring, side, x, m, u);
    let covers = |x: &Subspace| module.covers_below(x);
    let f = search(n, candidates, true, value, covers)?;
    reduction_set("core", cl, side, n, m, u, f)
}

/// Expansions over every submodule of the ring model. Candidates between
/// `A` and `B` are annihilators of submodules of `ann A` containing `ann B`.
pub fn ring_expansions(
    ring: &Ring,
    side: Side,
    a: &Subspace,
    b: &Subspace,
    w: &Subspace,
    int: &PairOperation,
) -> Result<ExpansionSet> {
    let module = ring.module(side);
    let ann_b = b.orthogonal();
    let candidates = ring
        .module(side.other())
        .submodules_below(&a.orthogonal())?
        .into_iter()
        .filter(|d| ann_b.is_subspace_of(d))
        .map(|d| d.orthogonal())
        .collect();
    let value = |x: &Subspace| int.evaluate(ring, side, x, b, w);
    let covers = |x: &Subspace| module.covers_above(x, b);
    let f = search(a, candidates, false, value, covers)?;
    expansion_set("hull", int, side, a, b, w, f)
}

/// Largest number of monomial submodules a box search will visit.
pub const BOX_SEARCH_CAP: usize = 50_000;

fn monomial_vectors(ring: &Ring, x: &Subspace) -> Vec<Vec<u32>> {
    let alg = ring.algebra();
    alg.exponents().iter().map(|e| alg.monomial(e)).filter(|v| x.contains(v)).collect()
}

/// Monomial submodules of `x` with one monomial fewer.
fn monomial_covers_below(ring: &Ring, side: Side, x: &Subspace) -> Vec<Subspace> {
    let module = ring.module(side);
    let monos = monomial_vectors(ring, x);
    let mut out: Vec<Subspace> = (0..monos.len())
        .map(|k| Subspace::span(x.field(), x.ambient_dim(), monos.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, v)| v.clone())))
        .filter(|c| module.is_submodule(c))
        .collect();
    out.sort();
    out
}

/// Monomial submodules of `top` with one monomial more than `x`.
fn monomial_covers_above(ring: &Ring, side: Side, x: &Subspace, top: &Subspace) -> Vec<Subspace> {
    let module = ring.module(side);
    let mut out: Vec<Subspace> = monomial_vectors(ring, top)
        .into_iter()
        .filter(|v| !x.contains(v))
        .map(|v| x.add_vectors([v]))
        .filter(|c| module.is_submodule(c))
        .collect();
    out.sort();
    out
}

fn walk<F: Fn(&Subspace) -> Result<Vec<Subspace>>>(start: &Subspace, step: F) -> Result<Vec<Subspace>> {
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = vec![start.clone()];
    while let Some(x) = queue.pop() {
        for c in step(&x)? {
            if seen.insert(c.clone()) {
                if seen.len() > BOX_SEARCH_CAP {
                    return Err(Error::CapExceeded(format!("more than {BOX_SEARCH_CAP} monomial submodules")));
                }
                queue.push(c);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Covers that keep the operation's value; with an order-preserving
/// operation every reduction (expansion) is reached through such covers.
fn same_value<V>(covers: Vec<Subspace>, value: &V, target: &Option<Subspace>) -> Result<Vec<Subspace>>
where
    V: Fn(&Subspace) -> Result<Option<Subspace>>,
{
    let mut out = Vec::new();
    for c in covers {
        if value(&c)? == *target {
            out.push(c);
        }
    }
    Ok(out)
}

/// Reductions among monomial submodules of a monomial box ring, found by
/// walking monomial covers down from `N` through reductions only, which is
/// exhaustive for order-preserving `cl`. Labelled `monomial-core`.
pub fn box_reductions(
    ring: &Ring,
    side: Side,
    n: &Subspace,
    m: &Subspace,
    u: &Subspace,
    cl: &PairOperation,
) -> Result<ReductionSet> {
    let covers = |x: &Subspace| -> Vec<Subspace> {
        monomial_covers_below(ring, side, x).into_iter().filter(|c| u.is_subspace_of(c)).collect()
    };
    let value = |x: &Subspace| cl.evaluate(ring, side, x, m, u);
    let v = value(n)?;
    let candidates = walk(n, |x| same_value(covers(x), &value, &v))?;
    let f = search(n, candidates, true, value, |x| Ok(covers(x)))?;
    reduction_set("monomial-core", cl, side, n, m, u, f)
}

/// Expansions among monomial submodules of a monomial box ring, walking up
/// through expansions only. Labelled `monomial-hull`.
pub fn box_expansions(
    ring: &Ring,
    side: Side,
    a: &Subspace,
    b: &Subspace,
    w: &Subspace,
    int: &PairOperation,
) -> Result<ExpansionSet> {
    let covers = |x: &Subspace| monomial_covers_above(ring, side, x, b);
    let value = |x: &Subspace| int.evaluate(ring, side, x, b, w);
    let v = value(a)?;
    let candidates = walk(a, |x| same_value(covers(x), &value, &v))?;
    let f = search(a, candidates, false, value, |x| Ok(covers(x)))?;
    expansion_set("monomial-hull", int, side, a, b, w, f)
}

/// Core of `(N, M, U)` against the hull of the dual pair `(ann N, ann U, ann M)`
/// under the dual operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreHullDuality {
    pub reductions: ReductionSet,
    pub expansions: ExpansionSet,
    /// `ann(hull) = core`.
    pub hull_matches_core: bool,
    /// `{ann L : L a reduction}` is exactly the set of expansions.
    pub bijection: bool,
    /// Minimal reductions go to maximal expansions.
    pub extremes_correspond: bool,
}

impl CoreHullDuality {
    pub fn holds(&self) -> bool {
        self.hull_matches_core
            && self.bijection
            && self.extremes_correspond
            && self.reductions.reductions.len() == self.expansions.expansions.len()
    }
}

pub fn core_hull_duality_check(
    ctx: &FiniteContext,
    side: Side,
    n: &Subspace,
    m: &Subspace,
    u: &Subspace,
    cl: &PairOperation,
) -> Result<CoreHullDuality> {
    let red = reductions(ctx, side, n, m, u, cl)?;
    let exp = expansions(ctx, side.other(), &n.orthogonal(), &u.orthogonal(), &m.orthogonal(), &cl.dualize())?;
    let anns = |xs: &[Subspace]| xs.iter().map(Subspace::orthogonal).collect::<BTreeSet<_>>();
    let as_set = |xs: &[Subspace]| xs.iter().cloned().collect::<BTreeSet<_>>();
    Ok(CoreHullDuality {
        hull_matches_core: exp.hull.orthogonal() == red.core,
        bijection: anns(&red.reductions) == as_set(&exp.expansions),
        extremes_correspond: anns(&red.minimal) == as_set(&exp.maximal),
        reductions: red,
        expansions: exp,
    })
}

/// Whether every minimal generating set of `K / base` extends to one of
/// `L / base`: a chosen minimal generating set of `K` stays independent in
/// `L / (mL + base)`.
pub fn generators_extend(module: &FiniteModule, k: &Subspace, l: &Subspace, base: &Subspace) -> Result<bool> {
    let gens = k.complement_rows(&module.m_times(k).sum(base)?);
    let floor = module.m_times(l).sum(base)?;
    Ok(floor.add_vectors(gens.iter().cloned()).rank() == floor.rank() + gens.len())
}

/// Whether every minimal cogenerating set of `B / D` extends to one of
/// `B / C`, for `C ⊆ D ⊆ B`. Cogenerators of `B / X` are generators of
/// `ann X / ann B` on the other side.
pub fn cogenerators_extend(ring: &Ring, side: Side, c: &Subspace, d: &Subspace, b: &Subspace) -> Result<bool> {
    generators_extend(ring.module(side.other()), &d.orthogonal(), &c.orthogonal(), &b.orthogonal())
}

/// Runs a core computation at `N`, `N + 2`, `N + 4`; `ideal` and `cl` are
/// rebuilt at each precision.
pub fn stable_core<I, C>(alg: &TruncatedSemigroupAlgebra, ideal: I, cl: C) -> Result<Outcome>
where
    I: Fn(&TruncatedSemigroupAlgebra) -> Result<Subspace>,
    C: Fn(&TruncatedSemigroupAlgebra) -> Result<PairOperation>,
{
    stability_check(alg, |a| {
        let ring = Ring::semigroup(a.clone());
        let i = ideal(a)?;
        Ok(ring_reductions(&ring, Side::Primal, &i, &a.unit_ideal(), &a.zero_ideal(), &cl(a)?)?.core)
    })
}

/// Hull of the ideal pair `(I, R, 0)`, stabilized like [`stable_core`].
pub fn stable_hull<I, C>(alg: &TruncatedSemigroupAlgebra, ideal: I, int: C) -> Result<Outcome>
where
    I: Fn(&TruncatedSemigroupAlgebra) -> Result<Subspace>,
    C: Fn(&TruncatedSemigroupAlgebra) -> Result<PairOperation>,
{
    stability_check(alg, |a| {
        let ring = Ring::semigroup(a.clone());
        let i = ideal(a)?;
        Ok(ring_expansions(&ring, Side::Primal, &i, &a.unit_ideal(), &a.zero_ideal(), &int(a)?)?.hull)
    })
}

/// The ideal at `N` behind an outcome; a vanishing limit is the zero ideal.
pub fn outcome_ideal(alg: &TruncatedSemigroupAlgebra, outcome: &Outcome) -> Subspace {
    match outcome {
        Outcome::Stable(i) => i.clone(),
        Outcome::Vanishing => alg.zero_ideal(),
    }
}

/// `(J^{n+1} :_R I^n)`.
pub fn core_formula(alg: &TruncatedSemigroupAlgebra, i: &Subspace, j: &Subspace, n: u32) -> Result<Outcome> {
    stability_check(alg, |a| {
        let (i, j) = (alg.lift(i, a), alg.lift(j, a));
        Ok(a.colon(&a.power(&j, n + 1)?, &a.power(&i, n)?))
    })
}

/// `I (J^n :_R I^n)`.
pub fn core_formula_be(alg: &TruncatedSemigroupAlgebra, i: &Subspace, j: &Subspace, n: u32) -> Result<Outcome> {
    stability_check(alg, |a| {
        let (i, j) = (alg.lift(i, a), alg.lift(j, a));
        a.product(&i, &a.colon(&a.power(&j, n)?, &a.power(&i, n)?))
    })
}

/// `I ((J^n :_R I^{n-1}) :_R I)`, the interior reading of [`core_formula_be`].
pub fn core_formula_be_nested(alg: &TruncatedSemigroupAlgebra, i: &Subspace, j: &Subspace, n: u32) -> Result<Outcome> {
    if n == 0 {
        return Err(Error::InvalidParam("n must be at least 1".into()));
    }
    stability_check(alg, |a| {
        let (i, j) = (alg.lift(i, a), alg.lift(j, a));
        let inner = a.colon(&a.power(&j, n)?, &a.power(&i, n - 1)?);
        a.product(&i, &a.colon(&inner, &i))
    })
}

/// `I^n (0 :_E J^{n+1})`.
pub fn hull_formula(alg: &TruncatedSemigroupAlgebra, i: &Subspace, j: &Subspace, n: u32) -> Result<Subspace> {
    dual_stability_check(alg, |a| {
        let (i, j) = (alg.lift(i, a), alg.lift(j, a));
        let ring = Ring::semigroup(a.clone());
        Ok(ring.scale(Side::Dual, &a.power(&i, n)?, &a.power(&j, n + 1)?.orthogonal()))
    })
}

/// `(I (0 :_E (J^n :_R I^{n-1})) :_E I)`.
pub fn hull_formula_bf(alg: &TruncatedSemigroupAlgebra, i: &Subspace, j: &Subspace, n: u32) -> Result<Subspace> {
    if n == 0 {
        return Err(Error::InvalidParam("n must be at least 1".into()));
    }
    dual_stability_check(alg, |a| {
        let (i, j) = (alg.lift(i, a), alg.lift(j, a));
        let ring = Ring::semigroup(a.clone());
        let k = a.colon(&a.power(&j, n)?, &a.power(&i, n - 1)?);
        let inner = ring.scale(Side::Dual, &i, &k.orthogonal());
        Ok(ring.colon(Side::Dual, &inner, &i))
    })
}

/// Intersection of all integral reductions of `I`, over every ideal.
pub fn integral_core(alg: &TruncatedSemigroupAlgebra, i: &Subspace) -> Result<Outcome> {
    stable_core(alg, |a| Ok(alg.lift(i, a)), |_| Ok(PairOperation::integral_closure()))
}

/// Sum of all expansions of `(0 :_E I)` in `E` under the integral interior.
pub fn integral_hull_of_dual(alg: &TruncatedSemigroupAlgebra, i: &Subspace) -> Result<Subspace> {
    dual_stability_check(alg, |a| {
        let ring = Ring::semigroup(a.clone());
        let l = alg.lift(i, a).orthogonal();
        let e = ring.full(Side::Dual);
        let z = ring.zero(Side::Dual);
        Ok(ring_expansions(&ring, Side::Dual, &l, &e, &z, &PairOperation::integral_interior())?.hull)
    })
}

/// One displayed formula next to its brute-force counterpart. The formulas
/// come with infinite-field hypotheses, so `equal` is informational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaComparison {
    pub name: &'static str,
    pub side: Side,
    pub formula: Subspace,
    pub brute_force: Subspace,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaReport {
    pub n: u32,
    pub comparisons: Vec<FormulaComparison>,
    /// `ann_R I^n(0:_E J^{n+1}) = (J^{n+1} :_R I^n)`; must hold.
    pub hull_dualizes_to_core: bool,
    /// `ann_R` of the colon hull formula equals the nested core formula.
    pub bf_hull_dualizes_to_be_core: bool,
}

impl FormulaReport {
    /// One aligned line per comparison, then the two pairing identities.
    pub fn render(&self, alg: &TruncatedSemigroupAlgebra) -> String {
        let show = |side: Side, s: &Subspace| match side {
            Side::Primal => alg.render_ideal(s),
            Side::Dual => format!("(0:_E {})", alg.render_ideal(&s.orthogonal())),
        };
        let rows: Vec<[String; 4]> = self
            .comparisons
            .iter()
            .map(|c| {
                let verdict = if c.equal { "equal" } else { "differs" };
                [c.name.to_string(), show(c.side, &c.formula), show(c.side, &c.brute_force), verdict.to_string()]
            })
            .collect();
        let width = |k: usize| rows.iter().map(|r| r[k].len()).max().unwrap_or(0);
        let (w0, w1, w2) = (width(0), width(1), width(2));
        let mut out = format!("formulas at n = {}: formula, brute force\n", self.n);
        for r in &rows {
            out.push_str(&format!("{:<w0$}  {:<w1$}  {:<w2$}  {}\n", r[0], r[1], r[2], r[3]));
        }
        out.push_str(&format!("ann(hull_formula) = core_formula: {}\n", self.hull_dualizes_to_core));
        out.push_str(&format!(
            "ann(hull_formula_bf) = core_formula_be_nested: {}\n",
            self.bf_hull_dualizes_to_be_core
        ));
        out
    }
}

/// Evaluates every core/hull formula for `(I, J, n)` and compares each with
/// the brute-force integral core of `I` or integral hull of `(0 :_E I)`.
pub fn formula_report(alg: &TruncatedSemigroupAlgebra, i: &Subspace, j: &Subspace, n: u32) -> Result<FormulaReport> {
    let core = outcome_ideal(alg, &integral_core(alg, i)?);
    let hull = integral_hull_of_dual(alg, i)?;
    let cf = outcome_ideal(alg, &core_formula(alg, i, j, n)?);
    let cbe = outcome_ideal(alg, &core_formula_be(alg, i, j, n)?);
    let cnest = outcome_ideal(alg, &core_formula_be_nested(alg, i, j, n)?);
    let hf = hull_formula(alg, i, j, n)?;
    let hbf = hull_formula_bf(alg, i, j, n)?;
    let ann_r = |l: &Subspace| l.orthogonal();
    let cmp = |name, side, formula: Subspace, brute: &Subspace| FormulaComparison {
        name,
        side,
        equal: &formula == brute,
        formula,
        brute_force: brute.clone(),
    };
    Ok(FormulaReport {
        n,
        hull_dualizes_to_core: ann_r(&hf) == cf,
        bf_hull_dualizes_to_be_core: ann_r(&hbf) == cnest,
        comparisons: vec![
            cmp("core_formula", Side::Primal, cf, &core),
            cmp("core_formula_be", Side::Primal, cbe, &core),
            cmp("core_formula_be_nested", Side::Primal, cnest, &core),
            cmp("hull_formula", Side::Dual, hf, &hull),
            cmp("hull_formula_bf", Side::Dual, hbf, &hull),
        ],
    })
}

/// Integral openness of a finite submodule `L` of `E` against
/// `J`-basic emptiness over a finite range of `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrallyOpenReport {
    /// `L` equals its integral interior in `E`.
    pub integrally_open: bool,
    /// `J (L :_E J) = L` for every `J` checked.
    pub basically_empty_for_all: bool,
    /// First `J` (as an ideal of the lifted ring) with `J (L :_E J) ≠ L`.
    pub witness: Option<Subspace>,
    pub checked: usize,
    /// Precision used for the `J` sweep.
    pub lifted_truncation: u32,
}

impl IntegrallyOpenReport {
    pub fn agree(&self) -> bool {
        self.integrally_open == self.basically_empty_for_all
    }
}

fn lifted(alg: &TruncatedSemigroupAlgebra) -> TruncatedSemigroupAlgebra {
    let n = alg.truncation();
    alg.with_truncation(2 * n + alg.semigroup().conductor() + 2)
}

/// Compares integral openness of `L ⊆ E_N` with `J`-basic emptiness for
/// every nonzero ideal `J` of order at most `N' - N`, at precision
/// `N' = 2N + c + 2` where `c` is the conductor. The order bound keeps
/// `J ann(L)` above the truncation so the colon is exact.
pub fn integrally_open_probe(alg: &TruncatedSemigroupAlgebra, l: &Subspace) -> Result<IntegrallyOpenReport> {
    let ring = Ring::semigroup(alg.clone());
    let e = ring.full(Side::Dual);
    let z = ring.zero(Side::Dual);
    let interior = PairOperation::integral_interior()
        .evaluate(&ring, Side::Dual, l, &e, &z)?
        .ok_or_else(|| Error::InvalidParam("integral interior undefined".into()))?;
    let big = lifted(alg);
    let bound = big.truncation() - alg.truncation();
    let big_ring = Ring::semigroup(big.clone());
    let lb = alg.embed_dual(l, &big);
    let mut checked = 0;
    let mut witness = None;
    for j in big.enumerate_ideals()? {
        if j.is_zero() || big.ideal_order(&j) > bound {
            continue;
        }
        checked += 1;
        let inner = big_ring.colon(Side::Dual, &lb, &j);
        if big_ring.scale(Side::Dual, &j, &inner) != lb {
            witness = Some(j);
            break;
        }
    }
    Ok(IntegrallyOpenReport {
        integrally_open: &interior == l,
        basically_empty_for_all: witness.is_none(),
        witness,
        checked,
        lifted_truncation: big.truncation(),
    })
}

/// Whether every `J` in the probe range acts on `L ⊆ E_N` exactly as
/// `J + (t^e : e >= N)` does. The colon `(L :_E J)` is not invariant in the
/// same way, so `J (L :_E J)` can still change.
pub fn high_generators_act_trivially(alg: &TruncatedSemigroupAlgebra, l: &Subspace) -> Result<bool> {
    let big = lifted(alg);
    let bound = big.truncation() - alg.truncation();
    let ring = Ring::semigroup(big.clone());
    let lb = alg.embed_dual(l, &big);
    let tail: Vec<u32> = big.exponents().iter().copied().filter(|&e| e >= alg.truncation()).collect();
    let tail = big.monomial_ideal(&tail);
    for j in big.enumerate_ideals()? {
        if j.is_zero() || big.ideal_order(&j) > bound {
            continue;
        }
        if ring.scale(Side::Dual, &j, &lb) != ring.scale(Side::Dual, &j.sum(&tail)?, &lb) {
            return Ok(false);
        }
    }
    Ok(true)
}
