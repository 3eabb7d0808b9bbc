//! Pair operations `p(L, M)` over finite submodule lattices, the duality
//! `p ↦ p⌣`, and exhaustive property checkers.
//!
//! A pair `(L/U, M/U)` is stored as the triple `(L, M, U)` of submodules of
//! one side of a [`FiniteContext`] (the ring model or its dual), and every
//! value `p(L/U, M/U)` is stored as its preimage in `M`. The dual side of the
//! pair is `(ann L, ann U, ann M)`, so
//! `p⌣(L, M, U) = ann p(ann L, ann U, ann M)`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{FiniteModule, MonomialAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, PrimeField, Subspace};
use crate::monomial2::{box_algebra, enumerate_in_box, MonomialIdeal, RR_MAX};
use crate::semigroup_ring::TruncatedSemigroupAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Primal,
    Dual,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Primal => Side::Dual,
            Side::Dual => Side::Primal,
        }
    }

    fn idx(self) -> usize {
        match self {
            Side::Primal => 0,
            Side::Dual => 1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Primal => "primal",
            Side::Dual => "dual",
        })
    }
}

/// The ring behind a context.
#[derive(Clone, Debug)]
pub enum Model {
    Semigroup(TruncatedSemigroupAlgebra),
    /// `k[x,y]/(x^b, y^b)` with only its monomial ideals in the lattice.
    MonomialBox { bound: u32, algebra: MonomialAlgebra },
}

/// A ring model together with its primal and dual modules; enough to
/// evaluate pair operations without enumerating any lattice.
#[derive(Clone, Debug)]
pub struct Ring {
    model: Model,
    modules: [FiniteModule; 2],
}

impl Ring {
    pub fn semigroup(alg: TruncatedSemigroupAlgebra) -> Self {
        let modules = [alg.primal(), alg.dual()];
        Ring { model: Model::Semigroup(alg), modules }
    }

    pub fn monomial_box(field: PrimeField, bound: u32) -> Self {
        let algebra = box_algebra(field, bound);
        let modules = [algebra.primal(), algebra.dual()];
        Ring { model: Model::MonomialBox { bound, algebra }, modules }
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn algebra(&self) -> &MonomialAlgebra {
        match &self.model {
            Model::Semigroup(a) => a.algebra(),
            Model::MonomialBox { algebra, .. } => algebra,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.algebra().field()
    }

    pub fn module(&self, side: Side) -> &FiniteModule {
        &self.modules[side.idx()]
    }

    pub fn full(&self, side: Side) -> Subspace {
        self.module(side).full()
    }

    pub fn zero(&self, side: Side) -> Subspace {
        self.module(side).zero()
    }

    /// The annihilator on the other side under the standard pairing.
    pub fn ann(&self, s: &Subspace) -> Subspace {
        s.orthogonal()
    }

    pub fn maximal_ideal(&self) -> Subspace {
        self.algebra().maximal_ideal()
    }

    /// How the ring ideal `j` acts on `side`.
    pub fn action(&self, side: Side, j: &Subspace) -> Vec<Matrix> {
        match side {
            Side::Primal => self.algebra().multipliers(j),
            Side::Dual => self.algebra().dual_multipliers(j),
        }
    }

    /// `J X`.
    pub fn scale(&self, side: Side, j: &Subspace, x: &Subspace) -> Subspace {
        self.module(side).act(&self.action(side, j), x)
    }

    /// `(X :_side J)`.
    pub fn colon(&self, side: Side, x: &Subspace, j: &Subspace) -> Subspace {
        self.module(side).colon(x, &self.action(side, j))
    }

    /// Primal elements print as ideals, dual ones as `(0:_E I)`.
    pub fn render(&self, side: Side, s: &Subspace) -> String {
        match side {
            Side::Primal => self.render_ideal(s),
            Side::Dual => format!("(0:_E {})", self.render_ideal(&s.orthogonal())),
        }
    }

    fn render_ideal(&self, s: &Subspace) -> String {
        match &self.model {
            Model::Semigroup(a) => a.render_ideal(s),
            Model::MonomialBox { bound, algebra } => {
                if MonomialIdeal::is_monomial_subspace(s, algebra) {
                    MonomialIdeal::from_box(s, algebra, *bound).to_string()
                } else {
                    format!("{:?}", s.basis())
                }
            }
        }
    }
}

/// A [`Ring`] with a lattice of submodules on each side that is closed under
/// sums, intersections, `m·`, `(− :_X m)` and annihilators. Those
/// operations are tabulated on lattice indices.
#[derive(Clone, Debug)]
pub struct FiniteContext {
    ring: Ring,
    lattices: [Vec<Subspace>; 2],
    index: [HashMap<Subspace, usize>; 2],
    le: [Vec<Vec<bool>>; 2],
    ups: [Vec<Vec<usize>>; 2],
    downs: [Vec<Vec<usize>>; 2],
    join: [Vec<Vec<usize>>; 2],
    meet: [Vec<Vec<usize>>; 2],
    ann: [Vec<usize>; 2],
    m_times: [Vec<usize>; 2],
    colon_m: [Vec<usize>; 2],
}

impl FiniteContext {
    /// Every ideal of `A_N` and every submodule of its dual.
    pub fn semigroup(alg: TruncatedSemigroupAlgebra) -> Result<Self> {
        let primal = alg.enumerate_ideals()?;
        Self::build(Ring::semigroup(alg), primal)
    }

    /// Monomial ideals of `k[x,y]/(x^b, y^b)` and their annihilators.
    pub fn monomial_box(field: PrimeField, bound: u32) -> Result<Self> {
        let ring = Ring::monomial_box(field, bound);
        let primal = enumerate_in_box(bound)?.iter().map(|i| i.to_box(ring.algebra())).collect();
        Self::build(ring, primal)
    }

    fn build(ring: Ring, mut primal: Vec<Subspace>) -> Result<Self> {
        let modules = &ring.modules;
        primal.sort();
        primal.dedup();
        let mut dual: Vec<Subspace> = primal.iter().map(Subspace::orthogonal).collect();
        dual.sort();
        let lattices = [primal, dual];
        let index = lattices.clone().map(|lat| {
            lat.into_iter().enumerate().map(|(i, s)| (s, i)).collect::<HashMap<_, _>>()
        });
        let find = |s: usize, v: &Subspace| {
            index[s].get(v).copied().ok_or_else(|| {
                Error::LatticeNotClosed(format!("a submodule of rank {} is missing", v.rank()))
            })
        };
        let n = lattices[0].len();
        let mut le: [Vec<Vec<bool>>; 2] = [vec![], vec![]];
        let mut join = [vec![], vec![]];
        let mut meet = [vec![], vec![]];
        let mut ann = [vec![], vec![]];
        let mut m_times = [vec![], vec![]];
        let mut colon_m = [vec![], vec![]];
        for s in 0..2 {
            let lat = &lattices[s];
            le[s] = lat.iter().map(|a| lat.iter().map(|b| a.is_subspace_of(b)).collect()).collect();
            join[s] = vec![vec![0; n]; n];
            meet[s] = vec![vec![0; n]; n];
            for i in 0..n {
                for j in i..n {
                    let (a, b) = (&lat[i], &lat[j]);
                    let (jn, mt) = if le[s][i][j] {
                        (j, i)
                    } else if le[s][j][i] {
                        (i, j)
                    } else {
                        (find(s, &a.sum(b)?)?, find(s, &a.intersect(b)?)?)
                    };
                    join[s][i][j] = jn;
                    join[s][j][i] = jn;
                    meet[s][i][j] = mt;
                    meet[s][j][i] = mt;
                }
            }
            ann[s] = lat.iter().map(|a| find(1 - s, &a.orthogonal())).collect::<Result<_>>()?;
            m_times[s] = lat.iter().map(|a| find(s, &modules[s].m_times(a))).collect::<Result<_>>()?;
            colon_m[s] = lat.iter().map(|a| find(s, &modules[s].colon_m(a))).collect::<Result<_>>()?;
        }
        let ups = [0, 1].map(|s| (0..n).map(|i| (0..n).filter(|&j| le[s][i][j]).collect()).collect());
        let downs = [0, 1].map(|s| (0..n).map(|i| (0..n).filter(|&j| le[s][j][i]).collect()).collect());
        Ok(FiniteContext { ring, lattices, index, le, ups, downs, join, meet, ann, m_times, colon_m })
    }

    /// Indices of the elements containing element `i`, ascending.
    pub fn ups(&self, side: Side, i: usize) -> &[usize] {
        &self.ups[side.idx()][i]
    }

    /// Indices of the elements contained in element `i`, ascending.
    pub fn downs(&self, side: Side, i: usize) -> &[usize] {
        &self.downs[side.idx()][i]
    }

    pub fn join(&self, side: Side, i: usize, j: usize) -> usize {
        self.join[side.idx()][i][j]
    }

    pub fn meet(&self, side: Side, i: usize, j: usize) -> usize {
        self.meet[side.idx()][i][j]
    }

    /// Index of the annihilator, on the other side.
    pub fn ann_index(&self, side: Side, i: usize) -> usize {
        self.ann[side.idx()][i]
    }

    pub fn m_times_index(&self, side: Side, i: usize) -> usize {
        self.m_times[side.idx()][i]
    }

    pub fn colon_m_index(&self, side: Side, i: usize) -> usize {
        self.colon_m[side.idx()][i]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.lattices[0].len() - 1
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn lattice(&self, side: Side) -> &[Subspace] {
        &self.lattices[side.idx()]
    }

    pub fn index_of(&self, side: Side, s: &Subspace) -> Option<usize> {
        self.index[side.idx()].get(s).copied()
    }

    pub fn lookup(&self, side: Side, s: &Subspace) -> Result<usize> {
        self.index_of(side, s).ok_or_else(|| {
            Error::LatticeNotClosed(format!("{} is not in the {side} lattice", self.render(side, s)))
        })
    }

    pub fn le(&self, side: Side, i: usize, j: usize) -> bool {
        self.le[side.idx()][i][j]
    }
}

impl std::ops::Deref for FiniteContext {
    type Target = Ring;

    fn deref(&self) -> &Ring {
        &self.ring
    }
}

type CustomFn =
    dyn Fn(&Ring, Side, &Subspace, &Subspace, &Subspace) -> Option<Subspace> + Send + Sync;

#[derive(Clone)]
enum Kind {
    Identity,
    Jbf(Subspace),
    Jbe(Subspace),
    IntegralClosure,
    RrCap,
    Dual(Box<PairOperation>),
    Custom(Arc<CustomFn>),
}

/// A named evaluator `(L, M, U) ↦ p(L/U, M/U)` with an applicability
/// predicate (`None` from [`PairOperation::evaluate`]).
#[derive(Clone)]
pub struct PairOperation {
    name: String,
    kind: Kind,
}

impl fmt::Debug for PairOperation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairOperation({})", self.name)
    }
}

impl PairOperation {
    pub fn identity() -> Self {
        PairOperation { name: "identity".into(), kind: Kind::Identity }
    }

    /// `(JL :_M J)`, the `J`-basically full closure.
    pub fn jbf(label: &str, j: Subspace) -> Self {
        PairOperation { name: format!("jbf({label})"), kind: Kind::Jbf(j) }
    }

    /// `J(L :_M J)`, the `J`-basically empty interior.
    pub fn jbe(label: &str, j: Subspace) -> Self {
        PairOperation { name: format!("jbe({label})"), kind: Kind::Jbe(j) }
    }

    /// Integral closure of ideals, defined on pairs `(I, R)` only.
    pub fn integral_closure() -> Self {
        PairOperation { name: "integral".into(), kind: Kind::IntegralClosure }
    }

    /// The dual of integral closure, defined on pairs `(A, E)`.
    pub fn integral_interior() -> Self {
        let mut p = Self::integral_closure().dualize();
        p.name = "integral_interior".into();
        p
    }

    /// `RR(I) ∩ J` on ideal pairs of a monomial box.
    pub fn rr_cap() -> Self {
        PairOperation { name: "rr_cap".into(), kind: Kind::RrCap }
    }

    pub fn custom<F>(name: &str, f: F) -> Self
    where
        F: Fn(&Ring, Side, &Subspace, &Subspace, &Subspace) -> Option<Subspace>
            + Send
            + Sync
            + 'static,
    {
        PairOperation { name: name.into(), kind: Kind::Custom(Arc::new(f)) }
    }

    /// `p⌣`, always evaluated through the pairing (so `p⌣⌣` is not
    /// simplified away).
    pub fn dualize(&self) -> Self {
        PairOperation { name: format!("dual({})", self.name), kind: Kind::Dual(Box::new(self.clone())) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn evaluate(
        &self,
        ctx: &Ring,
        side: Side,
        l: &Subspace,
        m: &Subspace,
        u: &Subspace,
    ) -> Result<Option<Subspace>> {
        let meet = |a: &Subspace, b: &Subspace| a.intersect(b);
        Ok(match &self.kind {
            Kind::Identity => Some(l.clone()),
            Kind::Jbf(j) => {
                let jl = ctx.scale(side, j, l).sum(u)?;
                Some(meet(m, &ctx.colon(side, &jl, j))?)
            }
            Kind::Jbe(j) => {
                let inner = meet(m, &ctx.colon(side, l, j))?;
                Some(ctx.scale(side, j, &inner).sum(u)?)
            }
            Kind::IntegralClosure => {
                if side != Side::Primal || !m.is_full() || !u.is_zero() {
                    return Ok(None);
                }
                Some(match &ctx.model {
                    Model::Semigroup(a) => a.integral_closure(l),
                    Model::MonomialBox { bound, algebra } => {
                        MonomialIdeal::from_box(l, algebra, *bound).integral_closure().to_box(algebra)
                    }
                })
            }
            Kind::RrCap => {
                let Model::MonomialBox { bound, algebra } = &ctx.model else {
                    return Ok(None);
                };
                if side != Side::Primal || !u.is_zero() {
                    return Ok(None);
                }
                let i = MonomialIdeal::from_box(l, algebra, *bound);
                let j = MonomialIdeal::from_box(m, algebra, *bound);
                Some(i.ratliff_rush(RR_MAX)?.intersect(&j).to_box(algebra))
            }
            Kind::Dual(inner) => inner
                .evaluate(ctx, side.other(), &ctx.ann(l), &ctx.ann(u), &ctx.ann(m))?
                .map(|v| ctx.ann(&v)),
            Kind::Custom(f) => f(ctx, side, l, m, u),
        })
    }
}

/// Memoized values of one operation on lattice triples, as lattice indices.
/// Dual operations are read off the inner table through the annihilator map.
pub struct Table<'a> {
    ctx: &'a FiniteContext,
    op: &'a PairOperation,
    inner: Option<Box<Table<'a>>>,
    cache: RefCell<HashMap<(Side, usize, usize, usize), Option<usize>>>,
}

impl<'a> Table<'a> {
    pub fn new(ctx: &'a FiniteContext, op: &'a PairOperation) -> Self {
        let inner = match &op.kind {
            Kind::Dual(q) => Some(Box::new(Table::new(ctx, q))),
            _ => None,
        };
        Table { ctx, op, inner, cache: RefCell::new(HashMap::new()) }
    }

    pub fn context(&self) -> &FiniteContext {
        self.ctx
    }

    /// `p(L, M, U)` by lattice indices; `None` off the domain.
    pub fn get(&self, side: Side, l: usize, m: usize, u: usize) -> Result<Option<usize>> {
        if let Some(v) = self.cache.borrow().get(&(side, l, m, u)) {
            return Ok(*v);
        }
        let ctx = self.ctx;
        let v = match &self.inner {
            Some(t) => {
                let a = |i| ctx.ann_index(side, i);
                t.get(side.other(), a(l), a(u), a(m))?.map(|w| ctx.ann_index(side.other(), w))
            }
            None => {
                let lat = ctx.lattice(side);
                match self.op.evaluate(ctx, side, &lat[l], &lat[m], &lat[u])? {
                    Some(w) => Some(ctx.lookup(side, &w)?),
                    None => None,
                }
            }
        };
        self.cache.borrow_mut().insert((side, l, m, u), v);
        Ok(v)
    }

    pub fn value(&self, side: Side, l: usize, m: usize, u: usize) -> Result<Option<Subspace>> {
        Ok(self.get(side, l, m, u)?.map(|i| self.ctx.lattice(side)[i].clone()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Extensive,
    Intensive,
    Idempotent,
    OrderPreservingSubmodules,
    OrderPreservingAmbient,
    SurjectionFunctorial,
    Functorial,
    Restrictable,
    Residual,
    Absolute,
}

impl Property {
    pub const ALL: [Property; 10] = [
        Property::Extensive,
        Property::Intensive,
        Property::Idempotent,
        Property::OrderPreservingSubmodules,
        Property::OrderPreservingAmbient,
        Property::SurjectionFunctorial,
        Property::Functorial,
        Property::Restrictable,
        Property::Residual,
        Property::Absolute,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Extensive => "extensive",
            Property::Intensive => "intensive",
            Property::Idempotent => "idempotent",
            Property::OrderPreservingSubmodules => "order_preserving_on_submodules",
            Property::OrderPreservingAmbient => "order_preserving_on_ambient",
            Property::SurjectionFunctorial => "surjection_functorial",
            Property::Functorial => "functorial",
            Property::Restrictable => "restrictable",
            Property::Residual => "residual",
            Property::Absolute => "absolute",
        }
    }

    /// Names of the quantified submodules, in witness order.
    pub fn roles(self) -> &'static [&'static str] {
        match self {
            Property::Extensive | Property::Intensive | Property::Idempotent => &["L", "M", "U"],
            Property::SurjectionFunctorial | Property::Functorial => &["L", "M", "U", "V"],
            _ => &["L", "N", "M", "U"],
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failing instance: lattice indices in the order of [`Property::roles`].
/// For [`Property::Functorial`] the witness belongs to `component`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub property: Property,
    pub component: Property,
    pub side: Side,
    pub indices: Vec<usize>,
}

impl Witness {
    /// Re-evaluates the axiom at the witness; `Some(false)` means it fails again.
    pub fn replay(&self, table: &Table) -> Result<Option<bool>> {
        holds_at(self.component, table, self.side, &self.indices)
    }

    pub fn render(&self, ctx: &FiniteContext) -> Vec<(String, String)> {
        self.component
            .roles()
            .iter()
            .zip(&self.indices)
            .map(|(r, &i)| (r.to_string(), ctx.render(self.side, &ctx.lattice(self.side)[i])))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Holds on every applicable instance (`checked` of them).
    Holds { checked: usize },
    Fails(Witness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fails(w) => Some(w),
            Verdict::Holds { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub operation: String,
    pub side: Side,
    pub verdicts: Vec<(Property, Verdict)>,
}

impl PropertyReport {
    pub fn verdict(&self, p: Property) -> &Verdict {
        &self.verdicts.iter().find(|(q, _)| *q == p).expect("every property is checked").1
    }

    pub fn holds(&self, p: Property) -> bool {
        self.verdict(p).holds()
    }

    pub fn is_closure(&self) -> bool {
        self.holds(Property::Extensive)
            && self.holds(Property::OrderPreservingSubmodules)
            && self.holds(Property::Idempotent)
    }

    pub fn is_interior(&self) -> bool {
        self.holds(Property::Intensive)
            && self.holds(Property::OrderPreservingSubmodules)
            && self.holds(Property::Idempotent)
    }
}

/// The axiom at one tuple: `None` when the tuple is outside the quantifier
/// or a needed pair is outside the operation's domain.
pub fn holds_at(prop: Property, t: &Table, side: Side, idx: &[usize]) -> Result<Option<bool>> {
    let ctx = t.ctx;
    let le = |a: usize, b: usize| ctx.le(side, a, b);
    let subset = |a: Option<usize>, b: Option<usize>| Some(le(a?, b?));
    let equal = |a: Option<usize>, b: Option<usize>| Some(a? == b?);
    Ok(match prop {
        Property::Extensive | Property::Intensive | Property::Idempotent => {
            let [l, m, u] = idx[..] else { return Ok(None) };
            if !(le(u, l) && le(l, m)) {
                return Ok(None);
            }
            let Some(v) = t.get(side, l, m, u)? else { return Ok(None) };
            match prop {
                Property::Extensive => Some(le(l, v)),
                Property::Intensive => Some(le(v, l)),
                _ => {
                    if !(le(u, v) && le(v, m)) {
                        return Ok(None);
                    }
                    t.get(side, v, m, u)?.map(|w| w == v)
                }
            }
        }
        Property::OrderPreservingSubmodules
        | Property::OrderPreservingAmbient
        | Property::Residual
        | Property::Absolute => {
            let [l, n, m, u] = idx[..] else { return Ok(None) };
            if !(le(u, l) && le(l, n) && le(n, m)) {
                return Ok(None);
            }
            match prop {
                Property::OrderPreservingSubmodules => subset(t.get(side, l, m, u)?, t.get(side, n, m, u)?),
                Property::OrderPreservingAmbient => subset(t.get(side, l, n, u)?, t.get(side, l, m, u)?),
                Property::Residual => equal(t.get(side, n, m, u)?, t.get(side, n, m, l)?),
                _ => equal(t.get(side, l, m, u)?, t.get(side, l, n, u)?),
            }
        }
        Property::SurjectionFunctorial | Property::Functorial => {
            let [l, m, u, v] = idx[..] else { return Ok(None) };
            if !(le(u, l) && le(l, m) && le(u, v) && le(v, m)) {
                return Ok(None);
            }
            let Some(p) = t.get(side, l, m, u)? else { return Ok(None) };
            let lv = ctx.join(side, l, v);
            t.get(side, lv, m, v)?.map(|q| le(ctx.join(side, p, v), q))
        }
        Property::Restrictable => {
            let [l, n, m, u] = idx[..] else { return Ok(None) };
            if !(le(l, m) && le(n, m) && le(u, l) && le(u, n)) {
                return Ok(None);
            }
            subset(t.get(side, ctx.meet(side, l, n), n, u)?, t.get(side, l, m, u)?)
        }
    })
}

/// Checks one property over all tuples in lexicographic index order and
/// returns the first failure.
pub fn check_property(prop: Property, t: &Table, side: Side) -> Result<Verdict> {
    if prop == Property::Functorial {
        let mut checked = 0;
        for part in [Property::OrderPreservingAmbient, Property::SurjectionFunctorial] {
            match check_property(part, t, side)? {
                Verdict::Fails(mut w) => {
                    w.property = Property::Functorial;
                    return Ok(Verdict::Fails(w));
                }
                Verdict::Holds { checked: c } => checked += c,
            }
        }
        return Ok(Verdict::Holds { checked });
    }
    let n = t.ctx.lattice(side).len();
    let le = |a: usize, b: usize| t.ctx.le(side, a, b);
    let mut checked = 0;
    let mut test = |idx: Vec<usize>| -> Result<Option<Verdict>> {
        match holds_at(prop, t, side, &idx)? {
            Some(true) => checked += 1,
            Some(false) => {
                return Ok(Some(Verdict::Fails(Witness { property: prop, component: prop, side, indices: idx })))
            }
            None => {}
        }
        Ok(None)
    };
    let ctx = t.ctx;
    let (ups, downs) = (|i| ctx.ups(side, i), |i| ctx.downs(side, i));
    match prop {
        Property::Extensive | Property::Intensive | Property::Idempotent => {
            for l in 0..n {
                for &m in ups(l) {
                    for &u in downs(l) {
                        if let Some(v) = test(vec![l, m, u])? {
                            return Ok(v);
                        }
                    }
                }
            }
        }
        Property::SurjectionFunctorial => {
            for l in 0..n {
                for &m in ups(l) {
                    for &u in downs(l) {
                        for &v in ups(u).iter().filter(|&&v| le(v, m)) {
                            if let Some(r) = test(vec![l, m, u, v])? {
                                return Ok(r);
                            }
                        }
                    }
                }
            }
        }
        Property::Restrictable => {
            for l in 0..n {
                for nn in 0..n {
                    for &m in ups(ctx.join(side, l, nn)) {
                        for &u in downs(ctx.meet(side, l, nn)) {
                            if let Some(r) = test(vec![l, nn, m, u])? {
                                return Ok(r);
                            }
                        }
                    }
                }
            }
        }
        _ => {
            for l in 0..n {
                for &nn in ups(l) {
                    for &m in ups(nn) {
                        for &u in downs(l) {
                            if let Some(r) = test(vec![l, nn, m, u])? {
                                return Ok(r);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds { checked })
}

pub fn check_properties(op: &PairOperation, ctx: &FiniteContext, side: Side) -> Result<PropertyReport> {
    let t = Table::new(ctx, op);
    let verdicts = Property::ALL
        .iter()
        .map(|&p| Ok((p, check_property(p, &t, side)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PropertyReport { operation: op.name.clone(), side, verdicts })
}

/// First triple (as indices `L, M, U`) where the two operations differ.
pub fn first_difference(
    ctx: &FiniteContext,
    side: Side,
    p: &PairOperation,
    q: &PairOperation,
) -> Result<Option<[usize; 3]>> {
    let (tp, tq) = (Table::new(ctx, p), Table::new(ctx, q));
    let n = ctx.lattice(side).len();
    for l in 0..n {
        for m in (0..n).filter(|&m| ctx.le(side, l, m)) {
            for u in (0..n).filter(|&u| ctx.le(side, u, l)) {
                if tp.get(side, l, m, u)? != tq.get(side, l, m, u)? {
                    return Ok(Some([l, m, u]));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Implies,
    Iff,
    /// `a ⇒ (b ⇔ c)`, stored as `lhs = a`, `rhs = (b, c)`.
    Given,
}

/// One item of the transfer proposition with the computed truth values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferItem {
    pub item: u32,
    pub statement: &'static str,
    pub relation: Relation,
    pub lhs: bool,
    pub rhs: bool,
    pub extra: Option<bool>,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub operation: PropertyReport,
    pub dual: PropertyReport,
    pub items: Vec<TransferItem>,
}

impl TransferReport {
    pub fn consistent(&self) -> bool {
        self.items.iter().all(|i| i.consistent)
    }
}

/// Evaluates `p` on `side` and `p⌣` on the other side, then compares the
/// property pairs the transfer statements relate.
pub fn check_duality_transfer(op: &PairOperation, ctx: &FiniteContext, side: Side) -> Result<TransferReport> {
    let p = check_properties(op, ctx, side)?;
    let q = check_properties(&op.dualize(), ctx, side.other())?;
    use Property as P;
    let imp = |item, statement, a: bool, b: bool| TransferItem {
        item,
        statement,
        relation: Relation::Implies,
        lhs: a,
        rhs: b,
        extra: None,
        consistent: !a || b,
    };
    let iff = |item, statement, a: bool, b: bool| TransferItem {
        item,
        statement,
        relation: Relation::Iff,
        lhs: a,
        rhs: b,
        extra: None,
        consistent: a == b,
    };
    let op_sub = p.holds(P::OrderPreservingSubmodules);
    let (f, g) = (p.holds(P::Functorial), q.holds(P::Functorial));
    let items = vec![
        imp(2, "extensive => dual intensive", p.holds(P::Extensive), q.holds(P::Intensive)),
        imp(3, "intensive => dual extensive", p.holds(P::Intensive), q.holds(P::Extensive)),
        iff(4, "order-preserving on submodules <=> dual too", op_sub, q.holds(P::OrderPreservingSubmodules)),
        iff(5, "idempotent <=> dual idempotent", p.holds(P::Idempotent), q.holds(P::Idempotent)),
        imp(6, "closure => dual interior", p.is_closure(), q.is_interior()),
        imp(7, "interior => dual closure", p.is_interior(), q.is_closure()),
        iff(8, "restrictable <=> dual surjection-functorial", p.holds(P::Restrictable), q.holds(P::SurjectionFunctorial)),
        TransferItem {
            item: 9,
            statement: "order-preserving on submodules => (functorial <=> dual functorial)",
            relation: Relation::Given,
            lhs: f,
            rhs: g,
            extra: Some(op_sub),
            consistent: !op_sub || f == g,
        },
    ];
    Ok(TransferReport { operation: p, dual: q, items })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NakayamaKind {
    Closure,
    Interior,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NakayamaReport {
    pub kind: NakayamaKind,
    pub side: Side,
    pub checked: usize,
    /// `[L, N, M, U]` for closures, `[A, C, B, W]` for interiors.
    pub witness: Option<[usize; 4]>,
}

impl NakayamaReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Closure: `N ⊆ cl(L + mN)` forces `cl(L) = cl(N)`.
/// Interior: `int(A :_C m) ⊆ A` forces `int(C) ⊆ A`.
pub fn check_nakayama(
    op: &PairOperation,
    ctx: &FiniteContext,
    side: Side,
    kind: NakayamaKind,
) -> Result<NakayamaReport> {
    let t = Table::new(ctx, op);
    let n = ctx.lattice(side).len();
    let le = |a: usize, b: usize| ctx.le(side, a, b);
    let mut checked = 0;
    for a in 0..n {
        for &c in ctx.ups(side, a) {
            for &b in ctx.ups(side, c) {
                for &w in ctx.downs(side, a) {
                    let fails = match kind {
                        NakayamaKind::Closure => {
                            let k = ctx.join(side, a, ctx.m_times_index(side, c));
                            let (Some(ck), Some(cl), Some(cn)) =
                                (t.get(side, k, b, w)?, t.get(side, a, b, w)?, t.get(side, c, b, w)?)
                            else {
                                continue;
                            };
                            checked += 1;
                            le(c, ck) && cl != cn
                        }
                        NakayamaKind::Interior => {
                            let k = ctx.meet(side, c, ctx.colon_m_index(side, a));
                            let (Some(ik), Some(ic)) = (t.get(side, k, b, w)?, t.get(side, c, b, w)?)
                            else {
                                continue;
                            };
                            checked += 1;
                            le(ik, a) && !le(ic, a)
                        }
                    };
                    if fails {
                        return Ok(NakayamaReport { kind, side, checked, witness: Some([a, c, b, w]) });
                    }
                }
            }
        }
    }
    Ok(NakayamaReport { kind, side, checked, witness: None })
}

/// Both identities relating `(JL :_M I)` and `I(A :_B J)` under the pairing,
/// over every triple on `side`. Returns the first failing `[L, M, U]`.
pub fn check_coldual(ctx: &FiniteContext, side: Side, i: &Subspace, j: &Subspace) -> Result<Option<[usize; 3]>> {
    let lat = ctx.lattice(side);
    let n = lat.len();
    let other = side.other();
    for l in 0..n {
        for m in (0..n).filter(|&m| ctx.le(side, l, m)) {
            for u in (0..n).filter(|&u| ctx.le(side, u, l)) {
                let (lv, mv, uv) = (&lat[l], &lat[m], &lat[u]);
                let colon = mv.intersect(&ctx.colon(side, &ctx.scale(side, j, lv).sum(uv)?, i))?;
                // A = ann L inside B = ann U, both modulo ann M
                let (a, b, base) = (ctx.ann(lv), ctx.ann(uv), ctx.ann(mv));
                let inner = b.intersect(&ctx.colon(other, &a, j))?;
                let interior = ctx.scale(other, i, &inner).sum(&base)?;
                if ctx.ann(&colon) != interior || ctx.ann(&interior) != colon {
                    return Ok(Some([l, m, u]));
                }
            }
        }
    }
    Ok(None)
}

/// `I` under `cl⌣` against `ann_R(cl(ann_E I, E))` on the semigroup model,
/// with the second side computed through the module annihilator.
pub fn ann_chain_item1(
    ctx: &FiniteContext,
    i: &Subspace,
    cl: &PairOperation,
) -> Result<(Subspace, Subspace)> {
    let Model::Semigroup(alg) = ctx.model() else {
        return Err(Error::InvalidParam("the annihilator chain needs a semigroup context".into()));
    };
    let (full, zero) = (ctx.full(Side::Primal), ctx.zero(Side::Primal));
    let dual_value = cl
        .dualize()
        .evaluate(ctx, Side::Primal, i, &full, &zero)?
        .ok_or_else(|| Error::InvalidParam(format!("{} is not defined on (I, R)", cl.name())))?;
    let e = ctx.full(Side::Dual);
    let ann_e = crate::inverse_system::sg_ann_e(i);
    let closed = cl
        .evaluate(ctx, Side::Dual, &ann_e, &e, &ctx.zero(Side::Dual))?
        .ok_or_else(|| Error::InvalidParam(format!("{} is not defined on (ann_E I, E)", cl.name())))?;
    Ok((dual_value, crate::inverse_system::sg_ann_r(alg, &closed)))
}
