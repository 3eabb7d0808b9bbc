//! Finite-dimensional monomial algebras and modules over them.
//!
//! A [`MonomialAlgebra`] has a basis of monomials `t^e` (exponent tuples) with
//! `t^a t^b = t^{a+b}` when that exponent is still a basis element and `0`
//! otherwise. Truncated semigroup rings and monomial boxes are both of this
//! shape. A [`FiniteModule`] is a vector space with the actions of the ring
//! generators; submodules are the subspaces stable under them.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::{
    identity, mat_mul, mat_vec, stable_closure, transpose, Matrix, PrimeField, Subspace,
};

/// Upper bound on the number of covers generated from a single submodule.
pub const COVER_CAP: u64 = 10_000;

#[derive(Clone, Debug)]
pub struct MonomialAlgebra {
    field: PrimeField,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    generators: Vec<Vec<u32>>,
}

impl MonomialAlgebra {
    /// `basis[0]` must be the zero exponent. The complement of the basis among
    /// all exponents has to be closed under addition for the product to be
    /// associative; callers guarantee this.
    pub fn new(field: PrimeField, basis: Vec<Vec<u32>>, generators: Vec<Vec<u32>>) -> Self {
        let index = basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        MonomialAlgebra { field, basis, index, generators }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// The basis vector of `t^e`, or zero when `t^e` vanishes in the algebra.
    pub fn monomial(&self, e: &[u32]) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        if let Some(i) = self.index_of(e) {
            v[i] = 1;
        }
        v
    }

    pub fn one(&self) -> Vec<u32> {
        self.monomial(&self.basis[0])
    }

    fn shifted(&self, i: usize, j: usize) -> Option<usize> {
        let e: Vec<u32> = self.basis[i].iter().zip(&self.basis[j]).map(|(a, b)| a + b).collect();
        self.index_of(&e)
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.dim()];
        for (i, &x) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in b.iter().enumerate().filter(|(_, &y)| y != 0) {
                if let Some(k) = self.shifted(i, j) {
                    out[k] = f.add(out[k], f.mul(x, y));
                }
            }
        }
        out
    }

    /// Matrix of `v -> r v` in the column convention.
    pub fn mult_matrix(&self, r: &[u32]) -> Matrix {
        let n = self.dim();
        let mut m = vec![vec![0; n]; n];
        for (i, &x) in r.iter().enumerate().filter(|(_, &x)| x != 0) {
            for j in 0..n {
                if let Some(k) = self.shifted(i, j) {
                    m[k][j] = self.field.add(m[k][j], x);
                }
            }
        }
        m
    }

    pub fn generator_matrices(&self) -> Vec<Matrix> {
        self.generators.iter().map(|g| self.mult_matrix(&self.monomial(g))).collect()
    }

    /// The algebra as a module over itself.
    pub fn primal(&self) -> FiniteModule {
        FiniteModule::new(self.field, self.dim(), self.generator_matrices())
    }

    /// The linear dual, with the transpose action. Paired with the primal
    /// module by the standard dot product in the monomial basis.
    pub fn dual(&self) -> FiniteModule {
        FiniteModule::new(
            self.field,
            self.dim(),
            self.generator_matrices().iter().map(transpose).collect(),
        )
    }

    pub fn zero_ideal(&self) -> Subspace {
        Subspace::zero(self.field, self.dim())
    }

    pub fn unit_ideal(&self) -> Subspace {
        Subspace::full(self.field, self.dim())
    }

    pub fn maximal_ideal(&self) -> Subspace {
        Subspace::span(
            self.field,
            self.dim(),
            (1..self.dim()).map(|i| Subspace::unit(self.dim(), i)),
        )
    }

    pub fn ideal(&self, gens: Vec<Vec<u32>>) -> Subspace {
        stable_closure(self.field, &self.generator_matrices(), self.dim(), gens)
    }

    pub fn product(&self, i: &Subspace, j: &Subspace) -> Subspace {
        let mut prods = Vec::new();
        for a in i.basis() {
            for b in j.basis() {
                prods.push(self.mul(a, b));
            }
        }
        Subspace::span(self.field, self.dim(), prods)
    }

    pub fn power(&self, i: &Subspace, n: u32) -> Subspace {
        (0..n).fold(self.unit_ideal(), |acc, _| self.product(&acc, i))
    }

    /// Multiplication matrices for a spanning set of the ideal `j`.
    pub fn multipliers(&self, j: &Subspace) -> Vec<Matrix> {
        j.basis().iter().map(|r| self.mult_matrix(r)).collect()
    }

    /// Transposed multiplication matrices: the action of `j` on the dual.
    pub fn dual_multipliers(&self, j: &Subspace) -> Vec<Matrix> {
        self.multipliers(j).iter().map(transpose).collect()
    }

    /// `(i :_A j)` inside the algebra.
    pub fn colon(&self, i: &Subspace, j: &Subspace) -> Subspace {
        self.primal().colon(i, &self.multipliers(j))
    }

    /// `{r : r x = 0 for every x in l}` for a dual submodule `l`.
    pub fn annihilator_of_dual(&self, l: &Subspace) -> Subspace {
        let mut rows = Vec::new();
        for x in l.basis() {
            for y in 0..self.dim() {
                // (r . x)(t^y) = x(r t^y), linear in r
                let mut row = vec![0; self.dim()];
                for (i, r) in row.iter_mut().enumerate() {
                    if let Some(k) = self.shifted(i, y) {
                        *r = x[k];
                    }
                }
                rows.push(row);
            }
        }
        Subspace::kernel(self.field, self.dim(), rows)
    }
}

#[derive(Clone, Debug)]
pub struct FiniteModule {
    field: PrimeField,
    dim: usize,
    ops: Vec<Matrix>,
}

impl FiniteModule {
    pub fn new(field: PrimeField, dim: usize, ops: Vec<Matrix>) -> Self {
        FiniteModule { field, dim, ops }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ops(&self) -> &[Matrix] {
        &self.ops
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn zero(&self) -> Subspace {
        Subspace::zero(self.field, self.dim)
    }

    pub fn closure(&self, vectors: Vec<Vec<u32>>) -> Subspace {
        stable_closure(self.field, &self.ops, self.dim, vectors)
    }

    pub fn is_submodule(&self, l: &Subspace) -> bool {
        l.ambient_dim() == self.dim
            && self
                .ops
                .iter()
                .all(|op| l.basis().iter().all(|v| l.contains(&mat_vec(self.field, op, v))))
    }

    pub fn check_submodule(&self, l: &Subspace) -> Result<()> {
        if l.ambient_dim() != self.dim {
            return Err(Error::AmbientMismatch(l.ambient_dim(), self.dim));
        }
        if !self.is_submodule(l) {
            return Err(Error::NotSubmodule(format!("rank {} subspace", l.rank())));
        }
        Ok(())
    }

    /// `J L` where `j_ops` act as the generators of `J`.
    pub fn act(&self, j_ops: &[Matrix], l: &Subspace) -> Subspace {
        let mut out = Vec::new();
        for op in j_ops {
            for v in l.basis() {
                out.push(mat_vec(self.field, op, v));
            }
        }
        Subspace::span(self.field, self.dim, out)
    }

    pub fn m_times(&self, l: &Subspace) -> Subspace {
        self.act(&self.ops, l)
    }

    /// `(L :_X J) = {z : j z in L for every j}`.
    pub fn colon(&self, l: &Subspace, j_ops: &[Matrix]) -> Subspace {
        j_ops
            .iter()
            .fold(self.full(), |acc, op| acc.intersect(&l.preimage(op)).expect("same ambient"))
    }

    pub fn colon_m(&self, l: &Subspace) -> Subspace {
        self.colon(l, &self.ops)
    }

    pub fn socle(&self, l: &Subspace) -> Subspace {
        self.colon_m(&self.zero()).intersect(l).expect("same ambient")
    }

    /// Minimal number of generators of `L / U`.
    pub fn mu(&self, l: &Subspace, u: &Subspace) -> usize {
        let below = self.m_times(l).sum(u).expect("same ambient");
        l.rank() - below.intersect(l).expect("same ambient").rank()
    }

    /// Minimal number of cogenerators of `B / A`: the socle length.
    pub fn eta(&self, a: &Subspace, b: &Subspace) -> usize {
        self.colon_m(a).intersect(b).expect("same ambient").rank() - a.rank()
    }

    /// All submodules `C` of `L` with `L / C` simple.
    pub fn covers_below(&self, l: &Subspace) -> Result<Vec<Subspace>> {
        let ml = self.m_times(l);
        let gens = l.complement_rows(&ml);
        let hyperplanes = projective_points(self.field, gens.len())?;
        let mut out: Vec<Subspace> = hyperplanes
            .into_iter()
            .map(|phi| {
                let kernel = Subspace::kernel(self.field, gens.len(), vec![phi]);
                ml.add_vectors(kernel.basis().iter().map(|c| combine(self.field, c, &gens, self.dim)))
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// All submodules `C` with `L ⊂ C ⊆ M` and `C / L` simple.
    pub fn covers_above(&self, l: &Subspace, m: &Subspace) -> Result<Vec<Subspace>> {
        let s = self.colon_m(l).intersect(m)?;
        let gens = s.complement_rows(l);
        let lines = projective_points(self.field, gens.len())?;
        let mut out: Vec<Subspace> = lines
            .into_iter()
            .map(|c| l.add_vectors([combine(self.field, &c, &gens, self.dim)]))
            .collect();
        out.sort();
        Ok(out)
    }

    /// The linear dual with the transposed action.
    pub fn dual_module(&self) -> FiniteModule {
        FiniteModule::new(self.field, self.dim, self.ops.iter().map(transpose).collect())
    }

    /// Operators spanning the action of `m^n`: all products of `n` generators.
    pub fn m_power_ops(&self, n: u32) -> Vec<Matrix> {
        let mut words: Vec<(usize, Matrix)> = vec![(0, identity(self.dim))];
        for _ in 0..n {
            let mut next = Vec::new();
            for (last, w) in &words {
                for (i, op) in self.ops.iter().enumerate().skip(*last) {
                    next.push((i, mat_mul(self.field, op, w)));
                }
            }
            words = next;
        }
        words.into_iter().map(|(_, w)| w).collect()
    }

    /// Every submodule, canonically sorted, found by descending through covers.
    pub fn enumerate_submodules(&self) -> Result<Vec<Subspace>> {
        self.submodules_below(&self.full())
    }

    /// Every submodule of `top`, sorted.
    pub fn submodules_below(&self, top: &Subspace) -> Result<Vec<Subspace>> {
        let mut seen: BTreeSet<Subspace> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(top.clone());
        queue.push_back(top.clone());
        while let Some(l) = queue.pop_front() {
            for c in self.covers_below(&l)? {
                if seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

fn combine(field: PrimeField, coeffs: &[u32], gens: &[Vec<u32>], dim: usize) -> Vec<u32> {
    let mut v = vec![0; dim];
    for (&c, g) in coeffs.iter().zip(gens) {
        for (x, &y) in v.iter_mut().zip(g) {
            *x = field.add(*x, field.mul(c, y));
        }
    }
    v
}

/// Representatives of the points of P^{k-1}(F_p): nonzero vectors whose first
/// nonzero entry is 1.
fn projective_points(field: PrimeField, k: usize) -> Result<Vec<Vec<u32>>> {
    let p = field.p() as u64;
    let count = (0..k as u32).try_fold(0u64, |acc, i| acc.checked_add(p.checked_pow(i)?));
    match count {
        Some(c) if c <= COVER_CAP => {}
        _ => {
            return Err(Error::CapExceeded(format!(
                "more than {COVER_CAP} covers for a {k}-generated quotient over F_{p}"
            )))
        }
    }
    let mut out = Vec::new();
    for lead in 0..k {
        let tail = k - lead - 1;
        let mut digits = vec![0u32; tail];
        loop {
            let mut v = vec![0u32; k];
            v[lead] = 1;
            v[lead + 1..].copy_from_slice(&digits);
            out.push(v);
            let mut i = 0;
            while i < tail {
                digits[i] += 1;
                if digits[i] == field.p() {
                    digits[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
            if i == tail {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{enumerate_subspaces_closed_under, DEFAULT_SEED_CAP};

    fn semigroup23(p: u32, n: u32) -> MonomialAlgebra {
        let basis: Vec<Vec<u32>> = (0..n).filter(|&e| e != 1).map(|e| vec![e]).collect();
        MonomialAlgebra::new(PrimeField::new(p).unwrap(), basis, vec![vec![2], vec![3]])
    }

    fn box_algebra(p: u32, b: u32) -> MonomialAlgebra {
        let mut basis = Vec::new();
        for d in 0..2 * b {
            for a in (0..b).rev() {
                if d >= a && d - a < b {
                    basis.push(vec![a, d - a]);
                }
            }
        }
        MonomialAlgebra::new(PrimeField::new(p).unwrap(), basis, vec![vec![1, 0], vec![0, 1]])
    }

    #[test]
    fn projective_point_counts() {
        for p in [2, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            for k in 0..4 {
                let pts = projective_points(f, k).unwrap();
                assert_eq!(pts.len() as u32, (p.pow(k as u32) - 1) / (p - 1));
            }
        }
        assert!(projective_points(PrimeField::new(2).unwrap(), 14).is_err());
    }

    #[test]
    fn cover_descent_matches_generic_enumeration() {
        for (alg, label) in [
            (semigroup23(2, 7), "sg F2"),
            (semigroup23(3, 6), "sg F3"),
            (box_algebra(2, 2), "box2 F2"),
            (box_algebra(3, 2), "box2 F3"),
        ] {
            let fast = alg.primal().enumerate_submodules().unwrap();
            let slow = enumerate_subspaces_closed_under(
                alg.field(),
                &alg.generator_matrices(),
                alg.dim(),
                DEFAULT_SEED_CAP,
            )
            .unwrap();
            assert_eq!(fast, slow, "{label}");
            let dual_fast = alg.dual().enumerate_submodules().unwrap();
            assert_eq!(dual_fast.len(), fast.len(), "{label}");
        }
    }

    #[test]
    fn multiplication_is_commutative_and_associative() {
        let alg = semigroup23(3, 9);
        let n = alg.dim();
        let vecs: Vec<Vec<u32>> = (0..5)
            .map(|s| (0..n).map(|i| ((i * 7 + s * 5 + 1) % 3) as u32).collect())
            .collect();
        for a in &vecs {
            for b in &vecs {
                assert_eq!(alg.mul(a, b), alg.mul(b, a));
                for c in &vecs {
                    assert_eq!(alg.mul(&alg.mul(a, b), c), alg.mul(a, &alg.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn dual_annihilators_are_submodules() {
        let alg = semigroup23(2, 8);
        let primal = alg.primal();
        let dual = alg.dual();
        for l in primal.enumerate_submodules().unwrap() {
            let a = l.orthogonal();
            assert!(dual.is_submodule(&a));
            assert_eq!(a.orthogonal(), l);
            assert_eq!(alg.annihilator_of_dual(&a), alg.colon(&l, &alg.unit_ideal()));
        }
    }

    #[test]
    fn socle_and_invariants() {
        let alg = semigroup23(2, 8);
        let primal = alg.primal();
        // t^6 and t^7 are both killed by t^2 and t^3 once t^8 = 0
        assert_eq!(
            primal.socle(&primal.full()),
            Subspace::span(alg.field(), 7, [alg.monomial(&[6]), alg.monomial(&[7])])
        );
        assert_eq!(primal.mu(&alg.maximal_ideal(), &primal.zero()), 2);
        assert_eq!(primal.eta(&primal.zero(), &primal.full()), 2);
        // covers of m: the hyperplanes of m/m^2, three over F_2
        assert_eq!(primal.covers_below(&alg.maximal_ideal()).unwrap().len(), 3);
        let above = primal.covers_above(&alg.maximal_ideal(), &primal.full()).unwrap();
        assert_eq!(above, vec![primal.full()]);
    }
}
