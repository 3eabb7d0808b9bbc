use proptest::prelude::*;

use pairdual::core_hull::{expansions, reductions};
use pairdual::inverse_system::{sg_ann_e, sg_ann_r};
use pairdual::linalg::{PrimeField, Subspace};
use pairdual::monomial2::{MonomialIdeal, RR_MAX};
use pairdual::pair_ops::{check_property, FiniteContext, PairOperation, Property, Side, Table, Verdict};
use pairdual::parse::parse_ideal;
use pairdual::semigroup_ring::{IdealClass, NumericalSemigroup, TruncatedSemigroupAlgebra};

fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn sg23(p: u32, n: u32) -> TruncatedSemigroupAlgebra {
    TruncatedSemigroupAlgebra::new(NumericalSemigroup::new(vec![2, 3]).unwrap(), field(p), n).unwrap()
}

/// A prime, an ambient dimension and some vectors in `F_p^dim`.
fn vectors() -> impl Strategy<Value = (u32, usize, Vec<Vec<u32>>)> {
    (prop::sample::select(vec![2u32, 3, 5]), 1usize..7).prop_flat_map(|(p, dim)| {
        (Just(p), Just(dim), prop::collection::vec(prop::collection::vec(0..p, dim), 0..6))
    })
}

fn two_spaces() -> impl Strategy<Value = (u32, usize, Vec<Vec<u32>>, Vec<Vec<u32>>)> {
    (prop::sample::select(vec![2u32, 3]), 1usize..6).prop_flat_map(|(p, dim)| {
        let vs = prop::collection::vec(prop::collection::vec(0..p, dim), 0..5);
        (Just(p), Just(dim), vs.clone(), vs)
    })
}

fn ideal_class(p: u32, max_level: u32) -> impl Strategy<Value = IdealClass> {
    prop_oneof![
        Just(IdealClass::Zero),
        Just(IdealClass::Full),
        (2..=max_level).prop_map(IdealClass::TwoGen),
        (2..=max_level, 0..p).prop_map(|(n, a)| IdealClass::Principal(n, a)),
    ]
}

/// Staircase generators inside a `b × b` box.
fn staircase(b: u32) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec((0..b, 0..b), 1..6).prop_map(MonomialIdeal::new)
}

fn m_primary(b: u32) -> impl Strategy<Value = MonomialIdeal> {
    (1..=b, 1..=b, prop::collection::vec((0..b, 0..b), 0..4))
        .prop_map(|(x, y, more)| MonomialIdeal::new(more.into_iter().chain([(x, 0), (0, y)])))
}

proptest! {
    #[test]
    fn basis_does_not_depend_on_the_generating_set((p, dim, vs) in vectors(), coeffs in prop::collection::vec(0u32..5, 36), seed in any::<u64>()) {
        let f = field(p);
        let u = Subspace::span(f, dim, vs.clone());
        // the same span from shuffled generators plus combinations of them
        let mut other = vs.clone();
        let n = other.len();
        if n > 0 {
            other.rotate_left((seed % n as u64) as usize);
        }
        for k in 0..3 {
            let mut v = vec![0; dim];
            for (i, g) in vs.iter().enumerate() {
                let c = coeffs[(6 * k + i) % coeffs.len()] % p;
                for (x, y) in v.iter_mut().zip(g) {
                    *x = f.add(*x, f.mul(c, *y));
                }
            }
            other.push(v);
        }
        other.reverse();
        let v = Subspace::span(f, dim, other);
        prop_assert_eq!(u.basis(), v.basis());
    }

    #[test]
    fn dimension_of_sum_and_intersection((p, dim, a, b) in two_spaces()) {
        let f = field(p);
        let (u, v) = (Subspace::span(f, dim, a), Subspace::span(f, dim, b));
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        prop_assert_eq!(s.rank() + i.rank(), u.rank() + v.rank());
        prop_assert!(i.is_subspace_of(&u) && u.is_subspace_of(&s));
    }

    #[test]
    fn annihilator_reverses_inclusion((p, dim, a, b) in two_spaces()) {
        let f = field(p);
        let u = Subspace::span(f, dim, a);
        let v = u.sum(&Subspace::span(f, dim, b)).unwrap();
        prop_assert_eq!(u.orthogonal().orthogonal(), u.clone());
        prop_assert_eq!(u.rank() + u.orthogonal().rank(), dim);
        prop_assert!(v.orthogonal().is_subspace_of(&u.orthogonal()));
    }

    #[test]
    fn classification_round_trips(p in prop::sample::select(vec![2u32, 3]), n in 8u32..16, level in 2u32..12) {
        let alg = sg23(p, n);
        let max = level.min(n - 4);
        let tags: Vec<IdealClass> = [IdealClass::TwoGen(max), IdealClass::Principal(max, p - 1), IdealClass::Zero, IdealClass::Full].into();
        for tag in tags {
            prop_assert_eq!(alg.classify(&alg.generate(&tag).unwrap()).unwrap(), tag);
        }
    }

    #[test]
    fn every_random_ideal_classifies(p in prop::sample::select(vec![2u32, 3]), coeffs in prop::collection::vec(0i64..3, 1..8)) {
        let alg = sg23(p, 14);
        let terms: Vec<(i64, u32)> = coeffs.iter().enumerate().map(|(k, &c)| (c, 2 + k as u32)).collect();
        let i = alg.ideal(vec![alg.element_from_terms(&terms).unwrap()]);
        prop_assert!(alg.classify(&i).is_ok());
        prop_assert_eq!(alg.colon(&i, &i), alg.unit_ideal());
    }

    #[test]
    fn self_colon_is_the_ring(p in prop::sample::select(vec![2u32, 3]), tag in ideal_class(3, 8)) {
        let alg = sg23(p, 14);
        let tag = match tag {
            IdealClass::Principal(n, a) => IdealClass::Principal(n, a % p),
            other => other,
        };
        let i = alg.generate(&tag).unwrap();
        if !i.is_zero() {
            prop_assert_eq!(alg.colon(&i, &i), alg.unit_ideal());
        }
    }

    #[test]
    fn rendered_ideals_parse_back(p in prop::sample::select(vec![2u32, 3, 5]), tag in ideal_class(5, 9)) {
        let alg = sg23(p, 16);
        let tag = match tag {
            IdealClass::Principal(n, a) => IdealClass::Principal(n, a % p),
            other => other,
        };
        let i = alg.generate(&tag).unwrap();
        let text = alg.render_ideal(&i);
        prop_assert_eq!(parse_ideal(&text).unwrap().in_semigroup(&alg).unwrap(), i);
    }

    #[test]
    fn annihilators_in_e_are_perfect(p in prop::sample::select(vec![2u32, 3]), n in 4u32..11, coeffs in prop::collection::vec(0i64..3, 1..6)) {
        let alg = sg23(p, n);
        let terms: Vec<(i64, u32)> = coeffs.iter().enumerate().map(|(k, &c)| (c, 2 + k as u32)).collect();
        let i = alg.ideal(vec![alg.element_from_terms(&terms).unwrap()]);
        let l = sg_ann_e(&i);
        prop_assert_eq!(sg_ann_r(&alg, &l), i.clone());
        prop_assert_eq!(i.rank() + l.rank(), alg.dim());
        prop_assert!(alg.dual().is_submodule(&l));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn integral_closure_is_idempotent_and_extensive(i in staircase(8)) {
        let c = i.integral_closure();
        prop_assert!(i.is_subset_of(&c));
        prop_assert_eq!(c.integral_closure(), c);
    }

    #[test]
    fn ratliff_rush_lies_between_the_ideal_and_its_integral_closure(i in m_primary(5)) {
        let rr = i.ratliff_rush(RR_MAX).unwrap();
        prop_assert!(i.is_subset_of(&rr));
        prop_assert!(rr.is_subset_of(&i.integral_closure()));
    }
}

/// `M ∩ ((m^a L + U + X) : m^b)`, order-preserving in `L`.
fn monotone_op(ctx: &FiniteContext, a: u32, b: u32, x: usize) -> PairOperation {
    let alg = ctx.algebra();
    let (ma, mb) = (alg.power(&ctx.maximal_ideal(), a), alg.power(&ctx.maximal_ideal(), b));
    let xs = [ctx.lattice(Side::Primal)[x].clone(), ctx.lattice(Side::Dual)[x].clone()];
    PairOperation::custom(&format!("monotone({a},{b},{x})"), move |ring, side, l, m, u| {
        let extra = &xs[if side == Side::Primal { 0 } else { 1 }];
        let inner = ring.scale(side, &ma, l).sum(u).ok()?.sum(&extra.intersect(m).ok()?).ok()?;
        m.intersect(&ring.colon(side, &inner, &mb)).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn restrictable_operations_preserve_ambient_order(a in 0u32..3, b in 0u32..3, x in 0usize..64, dual in any::<bool>()) {
        let ctx = FiniteContext::semigroup(sg23(2, 6)).unwrap();
        let x = x % ctx.lattice(Side::Primal).len();
        let op = monotone_op(&ctx, a, b, x);
        let t = Table::new(&ctx, &op);
        let side = if dual { Side::Dual } else { Side::Primal };
        let restrictable = check_property(Property::Restrictable, &t, side).unwrap();
        let ambient = check_property(Property::OrderPreservingAmbient, &t, side).unwrap();
        if restrictable.holds() {
            prop_assert!(ambient.holds());
        }
        for v in [&restrictable, &ambient] {
            if let Verdict::Fails(w) = v {
                prop_assert_eq!(w.replay(&t).unwrap(), Some(false));
            }
        }
    }

    #[test]
    fn cores_and_hulls_agree_with_their_extremes(j in 1usize..64, n in 0usize..64, m in 0usize..64, u in 0usize..64, dual in any::<bool>()) {
        let ctx = FiniteContext::semigroup(sg23(2, 8)).unwrap();
        let side = if dual { Side::Dual } else { Side::Primal };
        let prim = ctx.lattice(Side::Primal);
        let jj = prim[j % prim.len()].clone();
        prop_assume!(!jj.is_zero());
        let lat = ctx.lattice(side);
        let (a, b, c) = (lat[n % lat.len()].clone(), lat[m % lat.len()].clone(), lat[u % lat.len()].clone());
        let mid = a.sum(&c).unwrap();
        let top = mid.sum(&b).unwrap();
        let cl = PairOperation::jbf("J", jj.clone());
        let red = reductions(&ctx, side, &mid, &top, &c, &cl).unwrap();
        prop_assert!(red.is_consistent());
        prop_assert!(red.descent_agrees());
        prop_assert!(red.reductions.contains(&mid));
        let int = PairOperation::jbe("J", jj);
        let exp = expansions(&ctx, side, &mid, &top, &c, &int).unwrap();
        prop_assert!(exp.is_consistent());
        prop_assert!(exp.ascent_agrees());
        prop_assert!(exp.expansions.contains(&mid));
    }
}
