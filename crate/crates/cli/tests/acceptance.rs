//! Acceptance criteria 1 to 10, one test each. Every test writes a single
//! `PASS` or `FAIL` line to stderr (bypassing the test harness capture).

use std::io::Write;
use std::process::Command;
use std::time::Instant;

use pairdual::core_hull::{core_hull_duality_check, formula_report, integral_core, integrally_open_probe, outcome_ideal};
use pairdual::inverse_system::{
    be_by_definition, be_eta_covers, be_fixed_point, bf_mu_covers, principal_ring_probe, InverseMonomialModule,
};
use pairdual::linalg::{PrimeField, Subspace};
use pairdual::monomial2::{MonomialIdeal, RR_MAX};
use pairdual::pair_ops::{
    check_coldual, check_duality_transfer, check_nakayama, check_properties, first_difference, holds_at,
    FiniteContext, NakayamaKind, PairOperation, Property, Side, Table,
};
use pairdual::reproduce::{self, Reproduction, Status};
use pairdual::semigroup_ring::{IdealClass, NumericalSemigroup, TruncatedSemigroupAlgebra};

struct Checks {
    criterion: u32,
    title: &'static str,
    budget_secs: f64,
    started: Instant,
    items: Vec<(String, bool)>,
}

impl Checks {
    fn new(criterion: u32, title: &'static str, budget_secs: f64) -> Self {
        Checks { criterion, title, budget_secs, started: Instant::now(), items: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.items.push((name.into(), ok));
    }

    fn finish(mut self) {
        let secs = self.started.elapsed().as_secs_f64();
        self.check(format!("runtime under {} s", self.budget_secs), secs < self.budget_secs);
        let failed: Vec<&str> = self.items.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect();
        let mark = if failed.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{mark} criterion {}: {} ({} checks, {:.1} s)",
            self.criterion,
            self.title,
            self.items.len(),
            secs
        );
        if !failed.is_empty() {
            line.push_str(&format!("; failed: {}", failed.join("; ")));
        }
        let _ = writeln!(std::io::stderr(), "{line}");
        assert!(failed.is_empty(), "{line}");
    }
}

fn sg23(p: u32, n: u32) -> TruncatedSemigroupAlgebra {
    TruncatedSemigroupAlgebra::new(NumericalSemigroup::new(vec![2, 3]).unwrap(), PrimeField::new(p).unwrap(), n)
        .unwrap()
}

fn no_mismatch(rep: &Reproduction) -> bool {
    rep.rows.iter().all(|r| r.status() != Status::Mismatch)
}

fn mono(gens: &[(u32, u32)]) -> MonomialIdeal {
    MonomialIdeal::new(gens.iter().copied())
}

#[test]
fn criterion_01_colon_closed_forms() {
    let mut c = Checks::new(1, "colon closed forms for 2 <= r, n <= 10 over F2 and F3", 5.0);
    for p in [2, 3] {
        let rep = reproduce::lemma71(p, 10, 10).unwrap();
        c.check(format!("F{p}: {} colons all match", rep.rows.len()), rep.all_match() && rep.rows.len() >= 250);
        c.check(format!("F{p}: every row has an expected value"), rep.rows.iter().all(|r| r.status() == Status::Match));
    }
    c.finish();
}

#[test]
fn criterion_02_m_table() {
    let mut c = Checks::new(2, "closure, interior, hull and core table for J = m over F2 and F3, n <= 12", 30.0);
    for p in [2, 3] {
        let rep = reproduce::ex72(p, 12).unwrap();
        c.check(format!("F{p}: {} rows match", rep.rows.len()), rep.rows.iter().all(|r| r.status() == Status::Match));
        let find = |item: &str| rep.rows.iter().find(|r| r.item == item).map(|r| r.computed.clone());
        c.check(format!("F{p}: hull of (t^9,t^10) is (t^7,t^8)"), find("hull jbe m of (t^9,t^10)").as_deref() == Some("(t^7,t^8)"));
        c.check(format!("F{p}: core of (t^9,t^10) is (t^11,t^12)"), find("core jbf m of (t^9,t^10)").as_deref() == Some("(t^11,t^12)"));
    }
    c.finish();
}

#[test]
fn criterion_03_j_table() {
    let mut c = Checks::new(3, "closure, interior, hull and core table for J = (t^r,t^(r+1)), r = 3,4,5 over F2", 60.0);
    for r in [3, 4, 5] {
        let rep = reproduce::ex73(2, r, 10).unwrap();
        c.check(format!("r = {r}: no mismatch in {} rows", rep.rows.len()), no_mismatch(&rep));
        let unstated: Vec<_> = rep.rows.iter().filter(|x| x.status() == Status::Unstated).collect();
        c.check(
            format!("r = {r}: the {} rows without a stated value are fixed points", unstated.len()),
            unstated.iter().all(|x| x.item.ends_with(&x.computed)),
        );
    }
    c.finish();
}

#[test]
fn criterion_04_monomial_goldens() {
    let mut c = Checks::new(4, "monomial goldens: Ratliff-Rush, interiors, basically full closures, E-side", 10.0);
    let i = mono(&[(3, 0), (0, 3)]);
    let j = mono(&[(4, 0), (1, 1), (0, 4)]);
    let rr = i.intersect(&j).ratliff_rush(RR_MAX).unwrap();
    c.check("RR((x^3,y^3) ∩ (x^4,xy,y^4)) = (x^4,x^3y,x^2y^2,xy^3,y^4)", rr == MonomialIdeal::m_power(4));
    c.check("RR((x^3,y^3)) = (x^3,y^3)", i.ratliff_rush(RR_MAX).unwrap() == i);
    let m = MonomialIdeal::maximal();
    let m2 = MonomialIdeal::m_power(2);
    c.check("jbe(m) interior of (x^3,y^3) = (x^4,x^3y,xy^3,y^4)", m.product(&i.colon(&m)) == mono(&[(4, 0), (3, 1), (1, 3), (0, 4)]));
    let jbe_m2 = m2.product(&i.colon(&m2));
    c.check(format!("jbe(m^2) interior of (x^3,y^3) = m^4 (computed {jbe_m2})"), jbe_m2 == MonomialIdeal::m_power(4));
    let k = mono(&[(3, 0), (2, 2), (0, 3)]);
    c.check("m^2-closure of (x^3,x^2y^2,y^3) = m^3", m2.product(&k).colon(&m2) == MonomialIdeal::m_power(3));
    c.check("m-closure of (x^3,x^2y^2,y^3) is itself", m.product(&k).colon(&m) == k);
    let n = InverseMonomialModule::ann_e(&mono(&[(3, 0), (1, 1), (0, 3)])).unwrap();
    let closed = n.m_times().module_colon(&m).unwrap();
    let expected = InverseMonomialModule::new(n.monomials().iter().copied().chain([(2, 2)])).unwrap();
    c.check("jbf(m) closure of N in E = N + span{x^-2 y^-2}", closed == expected && !n.contains(2, 2));
    c.check("ann_R of that closure = m^3", closed.ann_r() == MonomialIdeal::m_power(3));
    c.check("ex25 table matches", reproduce::ex25().unwrap().all_match());
    c.check("ex310 table matches", reproduce::ex310().unwrap().all_match());
    c.finish();
}

#[test]
fn criterion_05_duality_suite() {
    let mut c = Checks::new(5, "duality of pair operations on the N = 8, F2 context", 120.0);
    let alg = sg23(2, 8);
    let ctx = FiniteContext::semigroup(alg.clone()).unwrap();
    let m = ctx.maximal_ideal();
    let m2 = alg.algebra().product(&m, &m);
    let t34 = alg.generate(&IdealClass::TwoGen(3)).unwrap();
    let js = [("m", m.clone()), ("m^2", m2), ("(t^3,t^4)", t34)];
    let mut ops = vec![PairOperation::identity(), PairOperation::integral_closure()];
    for (name, j) in &js {
        ops.push(PairOperation::jbf(name, j.clone()));
        ops.push(PairOperation::jbe(name, j.clone()));
    }
    for op in &ops {
        for side in [Side::Primal, Side::Dual] {
            let same = first_difference(&ctx, side, &op.dualize().dualize(), op).unwrap().is_none();
            c.check(format!("double dual of {} on {side:?}", op.name()), same);
        }
    }
    for (name, j) in &js {
        for side in [Side::Primal, Side::Dual] {
            let jbf = PairOperation::jbf(name, j.clone());
            let same = first_difference(&ctx, side, &jbf.dualize(), &PairOperation::jbe(name, j.clone())).unwrap();
            c.check(format!("dual of jbf({name}) is jbe({name}) on {side:?}"), same.is_none());
        }
    }
    for (a, i) in &js {
        for (b, j) in &js {
            for side in [Side::Primal, Side::Dual] {
                let bad = check_coldual(&ctx, side, i, j).unwrap();
                c.check(format!("colon/interior duality I = {a}, J = {b} on {side:?}"), bad.is_none());
            }
        }
    }
    for op in ops.iter().filter(|o| o.name() != "integral") {
        for side in [Side::Primal, Side::Dual] {
            let rep = check_duality_transfer(op, &ctx, side).unwrap();
            let bad: Vec<u32> = rep.items.iter().filter(|x| !x.consistent).map(|x| x.item).collect();
            c.check(format!("transfer items 2-9 for {} on {side:?} (failing: {bad:?})", op.name()), bad.is_empty());
        }
    }
    for op in &ops[2..] {
        let (closure, interior) = if op.name().starts_with("jbf") {
            (check_nakayama(op, &ctx, Side::Primal, NakayamaKind::Closure).unwrap(), check_nakayama(&op.dualize(), &ctx, Side::Dual, NakayamaKind::Interior).unwrap())
        } else {
            (check_nakayama(&op.dualize(), &ctx, Side::Dual, NakayamaKind::Closure).unwrap(), check_nakayama(op, &ctx, Side::Primal, NakayamaKind::Interior).unwrap())
        };
        c.check(
            format!("Nakayama closure matches Nakayama interior for {} ({} / {})", op.name(), closure.holds(), interior.holds()),
            closure.holds() == interior.holds() && closure.checked > 0 && interior.checked > 0,
        );
    }
    let jbf = PairOperation::jbf("m", m.clone());
    let report = check_properties(&jbf, &ctx, Side::Primal).unwrap();
    c.check("jbf(m) is a closure", report.is_closure());
    let t = Table::new(&ctx, &jbf);
    let witness = report.verdict(Property::Residual).witness().cloned();
    c.check("jbf(m) is not residual", witness.is_some());
    c.check("residual witness replays", witness.map(|w| w.replay(&t).unwrap() == Some(false)).unwrap_or(false));
    let idx = |s: &Subspace| ctx.index_of(Side::Primal, s).unwrap();
    let (mi, ri, zi) = (idx(&m), idx(&ctx.full(Side::Primal)), idx(&ctx.zero(Side::Primal)));
    c.check(
        "residuality fails at L = m, M = R, quotient by m",
        holds_at(Property::Residual, &t, Side::Primal, &[mi, mi, ri, zi]).unwrap() == Some(false),
    );
    c.finish();
}

#[test]
fn criterion_06_core_hull_duality() {
    let mut c = Checks::new(6, "core of every pair equals the dual of the hull of the dual pair, N = 8, F2", 120.0);
    let alg = sg23(2, 8);
    let ctx = FiniteContext::semigroup(alg.clone()).unwrap();
    let t34 = alg.generate(&IdealClass::TwoGen(3)).unwrap();
    let ops = [
        PairOperation::jbf("m", ctx.maximal_ideal()),
        PairOperation::jbf("(t^3,t^4)", t34),
        PairOperation::identity(),
    ];
    let lat = ctx.lattice(Side::Primal).to_vec();
    for op in &ops {
        let (mut pairs, mut bad) = (0, Vec::new());
        for m in &lat {
            for n in lat.iter().filter(|n| n.is_subspace_of(m)) {
                for u in lat.iter().filter(|u| u.is_subspace_of(n)) {
                    let d = core_hull_duality_check(&ctx, Side::Primal, n, m, u, op).unwrap();
                    pairs += 1;
                    let counts = d.reductions.reductions.len() == d.expansions.expansions.len();
                    if !(d.holds() && counts && d.hull_matches_core && d.bijection) {
                        bad.push((n.rank(), m.rank(), u.rank()));
                    }
                }
            }
        }
        c.check(format!("{}: {pairs} pairs, failures {bad:?}", op.name()), bad.is_empty() && pairs > 100);
    }
    c.finish();
}

#[test]
fn criterion_07_basic_emptiness() {
    let mut c = Checks::new(7, "basic emptiness criteria on the N = 8, F2 dual lattice and the principal-ring probe", 60.0);
    let alg = sg23(2, 8);
    let (primal, dual) = (alg.primal(), alg.dual());
    let subs = dual.enumerate_submodules().unwrap();
    let zero = dual.zero();
    let (mut pairs, mut dual_bf, mut fixed, mut eta, mut powers) = (0, 0, 0, 0, 0);
    for b in &subs {
        for a in subs.iter().filter(|a| a.is_subspace_of(b)) {
            pairs += 1;
            let truth = be_by_definition(&dual, a, b, &zero).unwrap();
            dual_bf += usize::from(truth == bf_mu_covers(&primal, &a.orthogonal(), &primal.full(), &b.orthogonal()).unwrap());
            fixed += usize::from(truth == be_fixed_point(&dual, a, b, &zero));
            eta += usize::from(truth == be_eta_covers(&dual, a, b, &zero).unwrap());
            for n in 1..=3 {
                let ops = dual.m_power_ops(n);
                let colon = dual.colon(a, &ops).intersect(b).unwrap();
                let a_n = dual.act(&ops, &colon);
                powers += usize::from(be_by_definition(&dual, &a_n, b, &zero).unwrap());
            }
        }
    }
    c.check(format!("basically empty iff dual basically full by mu covers ({dual_bf}/{pairs})"), dual_bf == pairs);
    c.check(format!("fixed point A = m(A :_B m) ({fixed}/{pairs})"), fixed == pairs);
    c.check(format!("eta cover criterion ({eta}/{pairs})"), eta == pairs);
    c.check(format!("m^n(A :_B m^n) basically empty for n = 1,2,3 ({powers}/{})", 3 * pairs), powers == 3 * pairs);
    let probe = principal_ring_probe(&alg).unwrap();
    c.check("k[[t^2,t^3]] has an ideal that is not basically full", probe.ring_witness.is_some());
    c.check("k[[t^2,t^3]] has a dual submodule that is not basically empty", probe.dual_witness.is_some());
    c.check("basic fullness and basic emptiness agree through ann", probe.agree);
    let line = TruncatedSemigroupAlgebra::new(NumericalSemigroup::new(vec![1]).unwrap(), PrimeField::new(2).unwrap(), 8).unwrap();
    let probe = principal_ring_probe(&line).unwrap();
    c.check("k[[t]] has no witness", probe.ring_witness.is_none() && probe.dual_witness.is_none() && probe.checked > 0);
    c.finish();
}

#[test]
fn criterion_08_integral_suite() {
    let mut c = Checks::new(8, "integral openness probe, integral cores, formula report", 120.0);
    let alg = sg23(2, 8);
    let subs = alg.dual().enumerate_submodules().unwrap();
    let agree = subs.iter().filter(|l| integrally_open_probe(&alg, l).unwrap().agree()).count();
    c.check(format!("integrally open iff basically empty for all J ({agree}/{})", subs.len()), agree == subs.len());
    let big = sg23(2, 16);
    for n in 2..=6 {
        let i = big.generate(&IdealClass::TwoGen(n)).unwrap();
        let core = outcome_ideal(&big, &integral_core(&big, &i).unwrap());
        c.check(format!("integral core of (t^{n},t^{}) is (t^{},t^{})", n + 1, n + 2, n + 3), big.classify(&core).ok() == Some(IdealClass::TwoGen(n + 2)));
    }
    let i = big.generate(&IdealClass::TwoGen(3)).unwrap();
    let j = big.generate(&IdealClass::Principal(3, 1)).unwrap();
    for n in 1..=2 {
        let rep = formula_report(&big, &i, &j, n).unwrap();
        let text = rep.render(&big);
        let _ = writeln!(std::io::stderr(), "{text}");
        c.check(format!("n = {n}: five comparisons reported"), rep.comparisons.len() == 5 && text.lines().count() == 8);
        c.check(format!("n = {n}: ann of the hull formula is the core formula"), rep.hull_dualizes_to_core);
        c.check(format!("n = {n}: ann of the colon hull formula is the nested core formula"), rep.bf_hull_dualizes_to_be_core);
    }
    c.finish();
}

#[test]
fn criterion_09_negative_controls() {
    let mut c = Checks::new(9, "Ratliff-Rush pair operation failures and jbf(m^2) versus jbf(m)", 30.0);
    let ctx = FiniteContext::monomial_box(PrimeField::new(2).unwrap(), 4).unwrap();
    let op = PairOperation::rr_cap();
    let t = Table::new(&ctx, &op);
    let idx = |x: &MonomialIdeal| ctx.index_of(Side::Primal, &x.to_box(ctx.algebra())).unwrap();
    let i = mono(&[(3, 0), (0, 3)]);
    let j = mono(&[(4, 0), (1, 1), (0, 4)]);
    let (ii, ji, iji) = (idx(&i), idx(&j), idx(&i.intersect(&j)));
    let (r, z) = (idx(&MonomialIdeal::unit()), idx(&MonomialIdeal::zero()));
    let p = Side::Primal;
    c.check(
        "order-preserving on submodules fails at I ∩ J ⊆ I",
        holds_at(Property::OrderPreservingSubmodules, &t, p, &[iji, ii, r, z]).unwrap() == Some(false),
    );
    c.check("restrictable fails at I ⊆ J", holds_at(Property::Restrictable, &t, p, &[ii, ji, r, z]).unwrap() == Some(false));
    let report = check_properties(&op, &ctx, p).unwrap();
    c.check("exhaustive check finds the order-preservation failure", !report.holds(Property::OrderPreservingSubmodules));
    c.check("exhaustive check finds the restrictability failure", !report.holds(Property::Restrictable));
    c.check("order-preserving on ambient modules holds", report.holds(Property::OrderPreservingAmbient));
    let k = mono(&[(3, 0), (2, 2), (0, 3)]);
    let m = MonomialIdeal::maximal();
    let m2 = MonomialIdeal::m_power(2);
    c.check("jbf(m^2) of (x^3,x^2y^2,y^3) is m^3", m2.product(&k).colon(&m2) == MonomialIdeal::m_power(3));
    c.check("jbf(m) of (x^3,x^2y^2,y^3) is itself", m.product(&k).colon(&m) == k);
    c.finish();
}

const SUITE: &[&[&str]] = &[
    &["closure", "--ring", "sg:2,3", "-p", "2", "-N", "20", "--op", "jbf", "--J", "m", "--ideal", "(t^3+t^4)"],
    &["interior", "--ring", "mon2", "--op", "jbe", "--J", "m", "--ideal", "(x^3,y^3)"],
    &["interior", "--ring", "mon2", "--op", "jbe", "--J", "m^2", "--ideal", "(x^3,y^3)", "--format", "json"],
    &["core", "--ring", "sg:2,3", "-p", "2", "--cl", "jbf:m", "--ideal", "(t^4,t^5)"],
    &["core", "--ring", "sg:2,3", "-p", "3", "--cl", "jbf:m", "--ideal", "(t^4,t^5)", "--format", "json"],
    &["hull", "--ring", "sg:2,3", "-p", "2", "--int", "jbe:m", "--dual-of", "(t^4,t^5)"],
    &["hull", "--side", "dual", "--int", "jbe:m", "--ideal", "(t^4,t^5)", "--format", "json"],
    &["core", "--cl", "identity", "--ideal", "(t^4)"],
    &["core", "--ring", "mon2", "--box", "5", "--cl", "jbf:m", "--ideal", "(x^2,y^2)"],
    &["check", "--op", "rr_cap", "--ring", "mon2"],
    &["check", "--op", "jbf:m", "--format", "json"],
    &["reproduce", "ex72", "-p", "2", "--n-max", "8"],
    &["reproduce", "lemma71", "--r-max", "6", "--n-max", "6", "--format", "json"],
    &["reproduce", "ex73", "--r", "3", "--n-max", "7"],
    &["reproduce", "ex25"],
    &["reproduce", "ex38"],
    &["reproduce", "ex310", "--format", "json"],
    &["closure", "--ideal", "(t^3+q^4)", "--op", "jbf", "--J", "m"],
];

fn run_suite() -> Vec<(String, Vec<u8>, Vec<u8>, Option<i32>)> {
    SUITE
        .iter()
        .map(|args| {
            let out = Command::new(env!("CARGO_BIN_EXE_pairdual")).args(*args).output().unwrap();
            (args.join(" "), out.stdout, out.stderr, out.status.code())
        })
        .collect()
}

#[test]
fn criterion_10_deterministic_output() {
    let mut c = Checks::new(10, "byte-identical CLI output across two runs", 120.0);
    let first = run_suite();
    let second = run_suite();
    for (a, b) in first.iter().zip(&second) {
        c.check(format!("`{}` identical (exit {:?})", a.0, a.3), a == b && !(a.1.is_empty() && a.2.is_empty()));
    }
    c.finish();
}
