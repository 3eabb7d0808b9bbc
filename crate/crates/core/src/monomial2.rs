//! Monomial ideals of `k[[x,y]]` as staircases in N^2.

use std::fmt;

use crate::algebra::MonomialAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{PrimeField, Subspace};

/// Largest box accepted by [`enumerate_in_box`].
pub const MAX_BOX: u32 = 8;

/// Default iteration bound for [`MonomialIdeal::ratliff_rush`].
pub const RR_MAX: usize = 12;

/// A monomial ideal given by its minimal generators `x^a y^b`, stored as
/// `(a, b)` pairs in increasing lexicographic order. No generators means the
/// zero ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIdeal {
    gens: Vec<(u32, u32)>,
}

impl MonomialIdeal {
    pub fn new<I: IntoIterator<Item = (u32, u32)>>(gens: I) -> Self {
        let mut all: Vec<(u32, u32)> = gens.into_iter().collect();
        all.sort();
        all.dedup();
        let mut min: Vec<(u32, u32)> = Vec::new();
        // sorted by a; a generator survives iff its b is below every earlier b
        for g in all {
            if min.last().is_none_or(|&(_, b)| g.1 < b) {
                min.push(g);
            }
        }
        MonomialIdeal { gens: min }
    }

    pub fn zero() -> Self {
        MonomialIdeal { gens: Vec::new() }
    }

    pub fn unit() -> Self {
        MonomialIdeal { gens: vec![(0, 0)] }
    }

    pub fn maximal() -> Self {
        Self::m_power(1)
    }

    pub fn m_power(k: u32) -> Self {
        MonomialIdeal::new((0..=k).map(|i| (i, k - i)))
    }

    pub fn generators(&self) -> &[(u32, u32)] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens == [(0, 0)]
    }

    pub fn contains(&self, a: u32, b: u32) -> bool {
        self.gens.iter().any(|&(i, j)| i <= a && j <= b)
    }

    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|&(a, b)| other.contains(a, b))
    }

    /// Finite colength: both a pure power of `x` and of `y` are present.
    pub fn is_m_primary(&self) -> bool {
        self.gens.first().is_some_and(|g| g.0 == 0) && self.gens.last().is_some_and(|g| g.1 == 0)
    }

    /// Largest `k` with `self ⊆ m^k`, the smallest total degree of a generator.
    pub fn order(&self) -> Option<u32> {
        self.gens.iter().map(|&(a, b)| a + b).min()
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(self.gens.iter().chain(&other.gens).copied())
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(
            self.gens
                .iter()
                .flat_map(|&(a, b)| other.gens.iter().map(move |&(c, d)| (a + c, b + d))),
        )
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(
            self.gens
                .iter()
                .flat_map(|&(a, b)| other.gens.iter().map(move |&(c, d)| (a.max(c), b.max(d)))),
        )
    }

    /// `(self : x^c y^d)`.
    pub fn colon_monomial(&self, c: u32, d: u32) -> MonomialIdeal {
        MonomialIdeal::new(
            self.gens
                .iter()
                .map(|&(a, b)| (a.saturating_sub(c), b.saturating_sub(d))),
        )
    }

    /// `(self : J)`, the intersection of the colons by the generators of `J`.
    pub fn colon(&self, j: &MonomialIdeal) -> MonomialIdeal {
        j.gens.iter().fold(MonomialIdeal::unit(), |acc, &(c, d)| {
            acc.intersect(&self.colon_monomial(c, d))
        })
    }

    pub fn power(&self, n: u32) -> MonomialIdeal {
        (0..n).fold(MonomialIdeal::unit(), |acc, _| acc.product(self))
    }

    /// Newton-polyhedron closure: monomials in `conv(exponents) + R^2_{>=0}`.
    pub fn integral_closure(&self) -> MonomialIdeal {
        if self.gens.len() <= 1 {
            return self.clone();
        }
        let hull = lower_hull(&self.gens);
        let (a_max, b_max) = (self.gens[self.gens.len() - 1].0, self.gens[0].1);
        let inside = |a: u32, b: u32| -> bool {
            if a < hull[0].0 || b < hull[hull.len() - 1].1 {
                return false;
            }
            hull.windows(2).all(|w| {
                let (u, v) = (w[0], w[1]);
                let (dx, dy) = (v.0 as i64 - u.0 as i64, v.1 as i64 - u.1 as i64);
                let (wx, wy) = (a as i64 - u.0 as i64, b as i64 - u.1 as i64);
                dx * wy - dy * wx >= 0
            })
        };
        let mut pts = Vec::new();
        for a in 0..=a_max {
            for b in 0..=b_max {
                if inside(a, b) {
                    pts.push((a, b));
                }
            }
        }
        MonomialIdeal::new(pts)
    }

    /// `⋃_n (I^{n+1} : I^n)`, stopping at the first `n` whose term equals the
    /// next one.
    pub fn ratliff_rush(&self, n_max: usize) -> Result<MonomialIdeal> {
        if !self.is_m_primary() {
            return Err(Error::InvalidParam(format!("{self} is not m-primary")));
        }
        if n_max < 2 {
            return Err(Error::InvalidParam("n_max must be at least 2".into()));
        }
        let mut pow = self.clone();
        let mut next = self.product(self);
        let mut term = next.colon(&pow);
        for _ in 1..n_max {
            pow = next;
            next = pow.product(self);
            let following = next.colon(&pow);
            if following == term {
                return Ok(term);
            }
            term = following;
        }
        Err(Error::NotStabilized(n_max))
    }

    /// Image in `k[x,y]/(x^b, y^b)` as a subspace of the box algebra.
    pub fn to_box(&self, alg: &MonomialAlgebra) -> Subspace {
        let vecs = alg
            .exponents()
            .iter()
            .filter(|e| self.contains(e[0], e[1]))
            .map(|e| alg.monomial(e));
        Subspace::span(alg.field(), alg.dim(), vecs)
    }

    /// Reads a monomial subspace of the box algebra back as the ideal
    /// containing `(x^b, y^b)`. Non-monomial subspaces lose information.
    pub fn from_box(space: &Subspace, alg: &MonomialAlgebra, b: u32) -> MonomialIdeal {
        let inside = alg
            .exponents()
            .iter()
            .filter(|e| space.contains(&alg.monomial(e)))
            .map(|e| (e[0], e[1]));
        MonomialIdeal::new(inside.chain([(b, 0), (0, b)]))
    }

    /// True when the subspace is spanned by monomials.
    pub fn is_monomial_subspace(space: &Subspace, alg: &MonomialAlgebra) -> bool {
        let mono = alg.exponents().iter().filter(|e| space.contains(&alg.monomial(e))).count();
        mono == space.rank()
    }

    /// `Some(k)` when the ideal is `m^k`.
    pub fn as_m_power(&self) -> Option<u32> {
        let k = self.order()?;
        (*self == MonomialIdeal::m_power(k)).then_some(k)
    }
}

/// `x^a*y^b` in the syntax the parser reads back.
pub fn render_monomial(a: u32, b: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{e}")),
    };
    let parts: Vec<String> = [part("x", a), part("y", b)].into_iter().flatten().collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.is_unit() {
            return write!(f, "R");
        }
        match self.as_m_power() {
            Some(1) => write!(f, "m"),
            Some(k) => write!(f, "m^{k}"),
            None => {
                let g: Vec<String> =
                    self.gens.iter().rev().map(|&(a, b)| render_monomial(a, b)).collect();
                write!(f, "({})", g.join(","))
            }
        }
    }
}

/// Vertices of the lower convex hull of points sorted by `a` (so `b` is
/// decreasing), from the smallest `a` to the smallest `b`.
fn lower_hull(pts: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let cross = |o: (u32, u32), p: (u32, u32), q: (u32, u32)| -> i64 {
        (p.0 as i64 - o.0 as i64) * (q.1 as i64 - o.1 as i64)
            - (p.1 as i64 - o.1 as i64) * (q.0 as i64 - o.0 as i64)
    };
    let mut hull: Vec<(u32, u32)> = Vec::new();
    for &p in pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

/// `k[x,y]/(x^b, y^b)`, basis ordered by degree and then by decreasing `x`.
pub fn box_algebra(field: PrimeField, b: u32) -> MonomialAlgebra {
    let mut basis = Vec::new();
    for d in 0..2 * b.max(1) - 1 {
        for a in (0..b).rev() {
            if d >= a && d - a < b {
                basis.push(vec![a, d - a]);
            }
        }
    }
    MonomialAlgebra::new(field, basis, vec![vec![1, 0], vec![0, 1]])
}

/// Every monomial ideal containing `(x^b, y^b)`, sorted.
pub fn enumerate_in_box(b: u32) -> Result<Vec<MonomialIdeal>> {
    if b > MAX_BOX {
        return Err(Error::CapExceeded(format!("box {b} exceeds {MAX_BOX}")));
    }
    // heights h(0) >= h(1) >= ... >= h(b-1) with h(0) <= b
    let mut out = Vec::new();
    let mut h = vec![b; b as usize];
    loop {
        let gens = h
            .iter()
            .enumerate()
            .map(|(a, &j)| (a as u32, j))
            .chain([(b, 0)]);
        out.push(MonomialIdeal::new(gens));
        // next non-increasing sequence, in decreasing lexicographic order
        let Some(i) = (0..b as usize).rev().find(|&i| h[i] > 0) else {
            break;
        };
        h[i] -= 1;
        for k in i + 1..b as usize {
            h[k] = h[i];
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(g: &[(u32, u32)]) -> MonomialIdeal {
        MonomialIdeal::new(g.iter().copied())
    }

    /// Brute force: monomials `m` of the box with `m * g ∈ I` for all `g`.
    fn colon_oracle(i: &MonomialIdeal, j: &MonomialIdeal, bound: u32) -> MonomialIdeal {
        let mut pts = Vec::new();
        for a in 0..=bound {
            for b in 0..=bound {
                if j.generators().iter().all(|&(c, d)| i.contains(a + c, b + d)) {
                    pts.push((a, b));
                }
            }
        }
        MonomialIdeal::new(pts)
    }

    #[test]
    fn minimalization_and_rendering() {
        let i = ideal(&[(0, 3), (3, 0), (1, 3), (3, 3)]);
        assert_eq!(i.generators(), &[(0, 3), (3, 0)]);
        assert_eq!(i.to_string(), "(x^3,y^3)");
        assert_eq!(ideal(&[(3, 1), (0, 4), (1, 3), (4, 0)]).to_string(), "(x^4,x^3*y,x*y^3,y^4)");
        assert_eq!(MonomialIdeal::m_power(4).to_string(), "m^4");
        assert_eq!(MonomialIdeal::maximal().to_string(), "m");
        assert_eq!(MonomialIdeal::unit().to_string(), "R");
        assert_eq!(MonomialIdeal::zero().to_string(), "0");
    }

    #[test]
    fn arithmetic() {
        let i = ideal(&[(2, 1), (1, 3)]);
        let c = i.colon(&MonomialIdeal::maximal());
        assert_eq!(c, colon_oracle(&i, &MonomialIdeal::maximal(), 6));
        assert_eq!(c, i.colon_monomial(1, 0).intersect(&i.colon_monomial(0, 1)));
        assert_eq!(i.product(&MonomialIdeal::unit()), i);
        assert_eq!(
            MonomialIdeal::m_power(2).product(&MonomialIdeal::maximal()),
            MonomialIdeal::m_power(3)
        );
        assert_eq!(MonomialIdeal::maximal().power(5), MonomialIdeal::m_power(5));
        assert!(i.colon(&MonomialIdeal::zero()).is_unit());
    }

    fn random_staircases(count: usize, bound: u32) -> Vec<MonomialIdeal> {
        // deterministic linear congruential sampling
        let mut state: u64 = 0x2545_f491;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as u32
        };
        (0..count)
            .map(|_| {
                let k = 1 + next() % 4;
                let gens = (0..k).map(|_| (next() % bound, next() % bound));
                MonomialIdeal::new(gens.chain([(bound, 0), (0, bound)]))
            })
            .collect()
    }

    #[test]
    fn colon_matches_oracle() {
        let ideals = random_staircases(40, 6);
        for i in &ideals {
            for j in ideals.iter().take(10) {
                assert_eq!(i.colon(j), colon_oracle(i, j, 8), "{i} : {j}");
            }
        }
    }

    /// `x^a y^b` is integral over `I` iff `(na, nb) ∈ I^n` for some `n`.
    fn closure_oracle(i: &MonomialIdeal, bound: u32, n_max: u32) -> MonomialIdeal {
        let powers: Vec<MonomialIdeal> = (1..=n_max).map(|n| i.power(n)).collect();
        let mut pts = Vec::new();
        for a in 0..=bound {
            for b in 0..=bound {
                if powers.iter().enumerate().any(|(k, p)| p.contains((k as u32 + 1) * a, (k as u32 + 1) * b)) {
                    pts.push((a, b));
                }
            }
        }
        MonomialIdeal::new(pts)
    }

    #[test]
    fn integral_closure_examples() {
        let i = ideal(&[(3, 0), (0, 3)]);
        assert_eq!(i.integral_closure(), MonomialIdeal::m_power(3));
        assert_eq!(closure_oracle(&i, 8, 6), MonomialIdeal::m_power(3));
        for k in 1..6 {
            assert_eq!(MonomialIdeal::m_power(k).integral_closure(), MonomialIdeal::m_power(k));
        }
        let j = ideal(&[(4, 0), (1, 1), (0, 4)]);
        assert_eq!(j.integral_closure(), closure_oracle(&j, 8, 12));
        assert_eq!(ideal(&[(1, 0)]).integral_closure(), ideal(&[(1, 0)]));
    }

    #[test]
    fn integral_closure_matches_power_oracle() {
        for i in random_staircases(40, 5) {
            assert_eq!(i.integral_closure(), closure_oracle(&i, 6, 20), "{i}");
        }
    }

    #[test]
    fn ratliff_rush_examples() {
        let i = ideal(&[(3, 0), (0, 3)]);
        assert_eq!(i.ratliff_rush(RR_MAX).unwrap(), i);
        let k = ideal(&[(4, 0), (3, 1), (1, 3), (0, 4)]);
        assert_eq!(k.ratliff_rush(RR_MAX).unwrap(), MonomialIdeal::m_power(4));
        for d in 1..5 {
            let m = MonomialIdeal::m_power(d);
            assert_eq!(m.ratliff_rush(RR_MAX).unwrap(), m);
        }
        assert!(ideal(&[(1, 0)]).ratliff_rush(RR_MAX).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let one = enumerate_in_box(1).unwrap();
        let mut expected = vec![MonomialIdeal::unit(), MonomialIdeal::maximal()];
        expected.sort();
        assert_eq!(one, expected);
        // monotone lattice paths through a b x b grid
        let binom = |n: u64, k: u64| (1..=k).fold(1u64, |acc, i| acc * (n - k + i) / i);
        for b in 1..=6 {
            let all = enumerate_in_box(b).unwrap();
            assert_eq!(all.len() as u64, binom(2 * b as u64, b as u64));
            assert!(all.iter().all(|i| i.contains(b, 0) && i.contains(0, b)));
        }
        assert!(enumerate_in_box(9).is_err());
    }

    #[test]
    fn box_round_trip() {
        let f = PrimeField::new(2).unwrap();
        let alg = box_algebra(f, 3);
        let ideals = enumerate_in_box(3).unwrap();
        let subspaces = alg.primal().enumerate_submodules().unwrap();
        let monomial: Vec<&Subspace> =
            subspaces.iter().filter(|s| MonomialIdeal::is_monomial_subspace(s, &alg)).collect();
        assert_eq!(monomial.len(), ideals.len());
        for i in &ideals {
            let s = i.to_box(&alg);
            assert!(alg.primal().is_submodule(&s));
            assert_eq!(&MonomialIdeal::from_box(&s, &alg, 3), i);
        }
    }
}
