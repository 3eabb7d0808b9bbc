//! Recomputed tables of worked examples next to their expected values.
//!
//! Semigroup rows are computed in `A_N` for `k[[t^2,t^3]]` through
//! [`stability_check`] and compared as [`IdealClass`] tags; monomial rows are
//! exact computations in `k[[x,y]]`.

use std::fmt;

use crate::core_hull::{ring_expansions, ring_reductions};
use crate::error::Result;
use crate::inverse_system::InverseMonomialModule;
use crate::linalg::PrimeField;
use crate::monomial2::{MonomialIdeal, RR_MAX};
use crate::pair_ops::{check_property, holds_at, FiniteContext, PairOperation, Property, Ring, Side, Table, Verdict};
use crate::semigroup_ring::{
    classify_outcome, stability_check, IdealClass, NumericalSemigroup, TruncatedSemigroupAlgebra,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    /// No expected value is on record for this row.
    Unstated,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "ok",
            Status::Mismatch => "MISMATCH",
            Status::Unstated => "computed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub item: String,
    pub expected: Option<String>,
    pub computed: String,
}

impl Row {
    pub fn status(&self) -> Status {
        match &self.expected {
            None => Status::Unstated,
            Some(e) if *e == self.computed => Status::Match,
            Some(_) => Status::Mismatch,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reproduction {
    pub name: String,
    pub config: String,
    pub rows: Vec<Row>,
}

impl Reproduction {
    pub fn mismatches(&self) -> Vec<&Row> {
        self.rows.iter().filter(|r| r.status() == Status::Mismatch).collect()
    }

    pub fn all_match(&self) -> bool {
        self.mismatches().is_empty()
    }
}

pub const TABLES: [&str; 6] = ["ex72", "ex73", "lemma71", "ex25", "ex38", "ex310"];

fn sg23(p: u32, n: u32) -> Result<TruncatedSemigroupAlgebra> {
    TruncatedSemigroupAlgebra::new(NumericalSemigroup::new(vec![2, 3])?, PrimeField::new(p)?, n)
}

/// Every class of level at most `n_max`, from the top of the lattice down.
fn classes(p: u32, n_max: u32) -> Vec<IdealClass> {
    let mut v = vec![IdealClass::Full];
    for n in 2..=n_max {
        v.push(IdealClass::TwoGen(n));
        v.extend((0..p).map(|a| IdealClass::Principal(n, a)));
    }
    v.push(IdealClass::Zero);
    v
}

#[derive(Clone, Copy)]
enum Column {
    Interior,
    Hull,
    Closure,
    Core,
}

/// One operation column applied to `(I, R, 0)`, stabilized in `N`.
fn column(alg: &TruncatedSemigroupAlgebra, class: IdealClass, j: IdealClass, col: Column) -> Result<IdealClass> {
    let out = stability_check(alg, |a| {
        let ring = Ring::semigroup(a.clone());
        let (i, r, z) = (a.generate(&class)?, a.unit_ideal(), a.zero_ideal());
        let jj = a.generate(&j)?;
        Ok(match col {
            Column::Interior => PairOperation::jbe("J", jj).evaluate(&ring, Side::Primal, &i, &r, &z)?.unwrap_or(i),
            Column::Closure => PairOperation::jbf("J", jj).evaluate(&ring, Side::Primal, &i, &r, &z)?.unwrap_or(i),
            Column::Hull => ring_expansions(&ring, Side::Primal, &i, &r, &z, &PairOperation::jbe("J", jj))?.hull,
            Column::Core => ring_reductions(&ring, Side::Primal, &i, &r, &z, &PairOperation::jbf("J", jj))?.core,
        })
    })?;
    classify_outcome(alg, &out)
}

fn precision(class: IdealClass, extra: u32) -> u32 {
    class.level().unwrap_or(2) + extra + 6
}

type Expect = fn(IdealClass, u32) -> Option<IdealClass>;

fn sg_table(name: &str, p: u32, n_max: u32, r: u32, j_label: &str, cols: [(Column, &str, Expect); 4]) -> Result<Reproduction> {
    let j = IdealClass::TwoGen(r);
    let mut rows = Vec::new();
    for class in classes(p, n_max) {
        let alg = sg23(p, precision(class, r))?;
        for (col, what, expect) in cols {
            rows.push(Row {
                item: format!("{what} {j_label} of {class}"),
                expected: expect(class, r).map(|c| c.to_string()),
                computed: column(&alg, class, j, col)?.to_string(),
            });
        }
    }
    Ok(Reproduction { name: name.into(), config: format!("p = {p}, n <= {n_max}"), rows })
}

fn ex72_interior(c: IdealClass, _: u32) -> Option<IdealClass> {
    Some(match c {
        IdealClass::Full => IdealClass::TwoGen(2),
        IdealClass::Zero => IdealClass::Zero,
        IdealClass::Principal(n, _) => IdealClass::TwoGen(n + 2),
        IdealClass::TwoGen(3) => IdealClass::TwoGen(4),
        IdealClass::TwoGen(n) => IdealClass::TwoGen(n),
    })
}

fn ex72_hull(c: IdealClass, _: u32) -> Option<IdealClass> {
    Some(match c {
        IdealClass::Full | IdealClass::TwoGen(2) => IdealClass::Full,
        IdealClass::TwoGen(3) => IdealClass::TwoGen(3),
        IdealClass::TwoGen(4) => IdealClass::TwoGen(2),
        IdealClass::TwoGen(n) => IdealClass::TwoGen(n - 2),
        other => other,
    })
}

fn closure_expect(c: IdealClass, _: u32) -> Option<IdealClass> {
    Some(match c {
        IdealClass::TwoGen(n) | IdealClass::Principal(n, _) => IdealClass::TwoGen(n),
        other => other,
    })
}

fn core_expect(c: IdealClass, _: u32) -> Option<IdealClass> {
    Some(match c {
        IdealClass::TwoGen(n) => IdealClass::TwoGen(n + 2),
        other => other,
    })
}

/// `m`-basically empty interiors and hulls, `m`-basically full closures and
/// cores of every ideal of `k[[t^2,t^3]]` up to level `n_max`.
pub fn ex72(p: u32, n_max: u32) -> Result<Reproduction> {
    sg_table(
        "ex72",
        p,
        n_max,
        2,
        "m",
        [
            (Column::Interior, "interior jbe", ex72_interior),
            (Column::Hull, "hull jbe", ex72_hull),
            (Column::Closure, "closure jbf", closure_expect),
            (Column::Core, "core jbf", core_expect),
        ],
    )
}

fn ex73_interior(c: IdealClass, r: u32) -> Option<IdealClass> {
    Some(match c {
        IdealClass::Full => IdealClass::TwoGen(r),
        IdealClass::Zero => IdealClass::Zero,
        IdealClass::Principal(n, _) if r >= n + 2 => IdealClass::TwoGen(r),
        IdealClass::Principal(n, _) if r == n + 1 => IdealClass::TwoGen(r + 2),
        IdealClass::Principal(n, _) => IdealClass::TwoGen(n + 2),
        IdealClass::TwoGen(n) if r >= n => IdealClass::TwoGen(r),
        IdealClass::TwoGen(n) if r + 1 == n => IdealClass::TwoGen(r + 2),
        IdealClass::TwoGen(n) => IdealClass::TwoGen(n),
    })
}

fn ex73_hull(c: IdealClass, r: u32) -> Option<IdealClass> {
    match c {
        IdealClass::Full | IdealClass::Zero => Some(c),
        IdealClass::TwoGen(n) if n <= r => Some(IdealClass::Full),
        IdealClass::TwoGen(n) if n <= r + 2 => Some(IdealClass::TwoGen(r - 1)),
        IdealClass::TwoGen(n) => Some(IdealClass::TwoGen(n - 2)),
        IdealClass::Principal(n, _) if n + 2 <= r => Some(IdealClass::Full),
        IdealClass::Principal(n, _) if n + 1 == r || n == r || n > r + 2 => Some(c),
        IdealClass::Principal(..) => None,
    }
}

/// The same four columns for `J = (t^r, t^{r+1})`.
pub fn ex73(p: u32, r: u32, n_max: u32) -> Result<Reproduction> {
    let label = format!("(t^{},t^{})", r, r + 1);
    let mut rep = sg_table(
        "ex73",
        p,
        n_max,
        r,
        &label,
        [
            (Column::Interior, "interior jbe", ex73_interior),
            (Column::Hull, "hull jbe", ex73_hull),
            (Column::Closure, "closure jbf", closure_expect),
            (Column::Core, "core jbf", core_expect),
        ],
    )?;
    rep.config = format!("p = {p}, r = {r}, n <= {n_max}");
    Ok(rep)
}

fn colon_two_gen(n: u32, r: u32) -> IdealClass {
    if r >= n {
        IdealClass::Full
    } else if r + 1 == n {
        IdealClass::TwoGen(2)
    } else {
        IdealClass::TwoGen(n - r)
    }
}

fn colon_principal(n: u32, r: u32) -> IdealClass {
    if r >= n + 2 {
        IdealClass::Full
    } else if r == n + 1 {
        IdealClass::TwoGen(2)
    } else {
        IdealClass::TwoGen(n - r + 2)
    }
}

/// Colons `(I :_R (t^r, t^{r+1}))` for every ideal `I` against the four
/// closed forms.
pub fn lemma71(p: u32, r_max: u32, n_max: u32) -> Result<Reproduction> {
    let mut rows = Vec::new();
    for r in 2..=r_max {
        let j = IdealClass::TwoGen(r);
        let mut push = |i: IdealClass, expected: IdealClass, n: u32| -> Result<()> {
            let alg = sg23(p, n + r + 8)?;
            let out = stability_check(&alg, |a| Ok(a.colon(&a.generate(&i)?, &a.generate(&j)?)))?;
            rows.push(Row {
                item: format!("({i} : {j})"),
                expected: Some(expected.to_string()),
                computed: classify_outcome(&alg, &out)?.to_string(),
            });
            Ok(())
        };
        push(IdealClass::Full, IdealClass::Full, 2)?;
        push(IdealClass::Zero, IdealClass::Zero, 2)?;
        for n in 2..=n_max {
            push(IdealClass::TwoGen(n), colon_two_gen(n, r), n)?;
            for a in 0..p {
                push(IdealClass::Principal(n, a), colon_principal(n, r), n)?;
            }
        }
    }
    Ok(Reproduction { name: "lemma71".into(), config: format!("p = {p}, r <= {r_max}, n <= {n_max}"), rows })
}

fn mono(pts: &[(u32, u32)]) -> MonomialIdeal {
    MonomialIdeal::new(pts.iter().copied())
}

fn row(item: &str, expected: impl ToString, computed: impl ToString) -> Row {
    Row { item: item.into(), expected: Some(expected.to_string()), computed: computed.to_string() }
}

fn verdict(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "holds",
        Some(false) => "fails",
        None => "undefined",
    }
}

/// The Ratliff-Rush pair operation `RR(I) ∩ J` and its two failures.
pub fn ex25() -> Result<Reproduction> {
    let i = mono(&[(3, 0), (0, 3)]);
    let j = mono(&[(4, 0), (1, 1), (0, 4)]);
    let ij = i.intersect(&j);
    let rr_ij = ij.ratliff_rush(RR_MAX)?;
    let rr_i = i.ratliff_rush(RR_MAX)?;
    let mut rows = vec![
        row("I ∩ J", mono(&[(4, 0), (3, 1), (1, 3), (0, 4)]), &ij),
        row("RR(I ∩ J)", mono(&[(4, 0), (3, 1), (2, 2), (1, 3), (0, 4)]), &rr_ij),
        row("RR(I ∩ J) ∩ J", mono(&[(4, 0), (3, 1), (2, 2), (1, 3), (0, 4)]), rr_ij.intersect(&j)),
        row("RR(I)", &i, &rr_i),
        row("RR(I ∩ J) ⊆ I", false, rr_ij.is_subset_of(&i)),
    ];
    let ctx = FiniteContext::monomial_box(PrimeField::new(2)?, 4)?;
    let op = PairOperation::rr_cap();
    let t = Table::new(&ctx, &op);
    let idx = |x: &MonomialIdeal| ctx.lookup(Side::Primal, &x.to_box(ctx.algebra()));
    let (ii, ji, iji) = (idx(&i)?, idx(&j)?, idx(&ij)?);
    let (r, z) = (idx(&MonomialIdeal::unit())?, idx(&MonomialIdeal::zero())?);
    let p = Side::Primal;
    rows.push(row(
        "order-preserving on submodules at (I ∩ J, I) in R",
        "fails",
        verdict(holds_at(Property::OrderPreservingSubmodules, &t, p, &[iji, ii, r, z])?),
    ));
    rows.push(row(
        "restrictable at (I, J) in R",
        "fails",
        verdict(holds_at(Property::Restrictable, &t, p, &[ii, ji, r, z])?),
    ));
    rows.push(row(
        "order-preserving on ambient modules, box 4",
        "holds",
        match check_property(Property::OrderPreservingAmbient, &t, p)? {
            Verdict::Holds { .. } => "holds",
            Verdict::Fails(_) => "fails",
        },
    ));
    Ok(Reproduction { name: "ex25".into(), config: "k[[x,y]], witnesses checked in box 4".into(), rows })
}

/// `J`-basically empty interiors of `(x^3, y^3)`.
pub fn ex38() -> Result<Reproduction> {
    let i = mono(&[(3, 0), (0, 3)]);
    let m = MonomialIdeal::maximal();
    let m2 = MonomialIdeal::m_power(2);
    let rows = vec![
        row("(I : m)", mono(&[(3, 0), (2, 2), (0, 3)]), i.colon(&m)),
        row("jbe(m) interior of I", mono(&[(4, 0), (3, 1), (1, 3), (0, 4)]), m.product(&i.colon(&m))),
        row("(I : m^2)", MonomialIdeal::m_power(3), i.colon(&m2)),
        row("jbe(m^2) interior of I", MonomialIdeal::m_power(4), m2.product(&i.colon(&m2))),
    ];
    Ok(Reproduction { name: "ex38".into(), config: "k[[x,y]], I = (x^3,y^3)".into(), rows })
}

/// Basically full closures in `R` and in `E`.
pub fn ex310() -> Result<Reproduction> {
    let m = MonomialIdeal::maximal();
    let m2 = MonomialIdeal::m_power(2);
    let i = mono(&[(3, 0), (2, 2), (0, 3)]);
    let jbf = |j: &MonomialIdeal, x: &MonomialIdeal| j.product(x).colon(j);
    let k = mono(&[(3, 0), (1, 1), (0, 3)]);
    let n = InverseMonomialModule::ann_e(&k)?;
    let mn = n.m_times();
    let closed = mn.module_colon(&m)?;
    let expected_closed = InverseMonomialModule::new(n.monomials().iter().copied().chain([(2, 2)]))?;
    let jbe_k = m.product(&k.colon(&m));
    let rows = vec![
        row("jbf(m) closure of (x^3,x^2y^2,y^3) in R", &i, jbf(&m, &i)),
        row("m^2 (x^3,x^2y^2,y^3)", MonomialIdeal::m_power(5), m2.product(&i)),
        row("jbf(m^2) closure of (x^3,x^2y^2,y^3) in R", MonomialIdeal::m_power(3), jbf(&m2, &i)),
        row("jbf(m^2) closure of (x^3,x^2y^2,y^3) in itself", &i, jbf(&m2, &i).intersect(&i)),
        row("N = (0:_E (x^3,xy,y^3))", "[x^-1*y^-1, x^-1*y^-2, x^-1*y^-3, x^-2*y^-1, x^-3*y^-1]", &n),
        row("m N", InverseMonomialModule::ann_e(&m2)?, &mn),
        row("jbf(m) closure of N in E", &expected_closed, &closed),
        row("ann_R of the closure", MonomialIdeal::m_power(3), closed.ann_r()),
        row("jbe(m) interior of (x^3,xy,y^3)", MonomialIdeal::m_power(3), &jbe_k),
        row("(x^3,xy,y^3) is m-basically full", true, jbf(&m, &k) == k),
        row("(x^3,xy,y^3) is m-basically empty", false, jbe_k == k),
    ];
    Ok(Reproduction { name: "ex310".into(), config: "k[[x,y]]".into(), rows })
}
