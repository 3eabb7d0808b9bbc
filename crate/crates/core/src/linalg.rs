//! Exact linear algebra over small prime fields.
//!
//! Every ideal and submodule in the crate is ultimately a [`Subspace`]: a
//! reduced row-echelon basis, so equal spaces have identical representations.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Largest modulus accepted by [`PrimeField::new`].
pub const MAX_PRIME: u32 = 65521;

/// Default seed budget for [`enumerate_subspaces_closed_under`]: dimension 16
/// over F_2, i.e. at most 2^16 vectors.
pub const DEFAULT_SEED_CAP: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::ModulusTooLarge(p));
        }
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }

    /// Reduces an arbitrary integer into `0..p`.
    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

pub type Matrix = Vec<Vec<u32>>;

/// `m * v` with `v` a column vector.
pub fn mat_vec(field: PrimeField, m: &Matrix, v: &[u32]) -> Vec<u32> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % field.p as u64)
                as u32
        })
        .collect()
}

pub fn mat_mul(field: PrimeField, a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter().enumerate().fold(0u64, |acc, (k, &x)| {
                        (acc + x as u64 * b[k][j] as u64) % field.p as u64
                    }) as u32
                })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect()
}

fn rref(field: PrimeField, mut rows: Vec<Vec<u32>>, ncols: usize) -> Vec<Vec<u32>> {
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = field.sub(*x, field.mul(f, y));
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// A subspace of F_p^n in canonical reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: PrimeField,
    dim: usize,
    rows: Vec<Vec<u32>>,
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.dim, self.field, self.rows.len(), &self.rows).cmp(&(
            other.dim,
            other.field,
            other.rows.len(),
            &other.rows,
        ))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subspace {
    pub fn zero(field: PrimeField, dim: usize) -> Self {
        Subspace { field, dim, rows: Vec::new() }
    }

    pub fn full(field: PrimeField, dim: usize) -> Self {
        Subspace { field, dim, rows: identity(dim) }
    }

    /// Span of the given vectors. Entries are reduced mod p.
    pub fn span<I>(field: PrimeField, dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let rows: Vec<Vec<u32>> = vectors
            .into_iter()
            .map(|v| {
                assert_eq!(v.len(), dim, "vector length must match ambient dimension");
                v.into_iter().map(|x| x % field.p).collect()
            })
            .collect();
        Subspace { field, dim, rows: rref(field, rows, dim) }
    }

    pub fn unit(dim: usize, i: usize) -> Vec<u32> {
        let mut v = vec![0; dim];
        v[i] = 1;
        v
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("no zero rows"))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Residue of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut w: Vec<u32> = v.iter().map(|x| x % self.field.p).collect();
        for (row, c) in self.rows.iter().zip(self.pivots()) {
            let f = w[c];
            if f != 0 {
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = self.field.sub(*x, self.field.mul(f, y));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.dim == other.dim && self.rows.iter().all(|r| other.contains(r))
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::AmbientMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(self.add_vectors(other.rows.iter().cloned()))
    }

    pub fn add_vectors<I: IntoIterator<Item = Vec<u32>>>(&self, vectors: I) -> Subspace {
        Subspace::span(
            self.field,
            self.dim,
            self.rows.iter().cloned().chain(vectors),
        )
    }

    /// Intersection, computed as the kernel of the stacked orthogonal systems.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let stacked: Vec<Vec<u32>> = self
            .orthogonal()
            .rows
            .into_iter()
            .chain(other.orthogonal().rows)
            .collect();
        Ok(Subspace::kernel(self.field, self.dim, stacked))
    }

    /// `{x : r . x = 0 for every row r}`.
    pub fn kernel(field: PrimeField, dim: usize, rows: Vec<Vec<u32>>) -> Subspace {
        let red = rref(field, rows, dim);
        let pivots: Vec<usize> = red
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).unwrap())
            .collect();
        let mut basis = Vec::new();
        for j in (0..dim).filter(|j| !pivots.contains(j)) {
            let mut v = vec![0; dim];
            v[j] = 1;
            for (row, &c) in red.iter().zip(&pivots) {
                v[c] = field.neg(row[j]);
            }
            basis.push(v);
        }
        Subspace::span(field, dim, basis)
    }

    /// Annihilator under the standard dot product.
    pub fn orthogonal(&self) -> Subspace {
        Subspace::kernel(self.field, self.dim, self.rows.clone())
    }

    /// Image under `m`, where `m` has `self.ambient_dim()` columns.
    pub fn image(&self, m: &Matrix) -> Subspace {
        let out = m.len();
        Subspace::span(
            self.field,
            out,
            self.rows.iter().map(|r| mat_vec(self.field, m, r)),
        )
    }

    /// `{z : m z in self}`, where `m` has `self.ambient_dim()` rows.
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        let src = m.first().map_or(0, |r| r.len());
        let mt = transpose(m);
        let rows: Vec<Vec<u32>> = self
            .orthogonal()
            .rows
            .iter()
            .map(|f| mat_vec(self.field, &mt, f))
            .collect();
        Subspace::kernel(self.field, src, rows)
    }

    /// Embeds into a larger ambient space by appending zero coordinates.
    pub fn pad(&self, new_dim: usize) -> Subspace {
        assert!(new_dim >= self.dim);
        Subspace {
            field: self.field,
            dim: new_dim,
            rows: self
                .rows
                .iter()
                .map(|r| {
                    let mut v = r.clone();
                    v.resize(new_dim, 0);
                    v
                })
                .collect(),
        }
    }

    /// Image under the projection onto the first `new_dim` coordinates.
    pub fn project(&self, new_dim: usize) -> Subspace {
        assert!(new_dim <= self.dim);
        Subspace::span(
            self.field,
            new_dim,
            self.rows.iter().map(|r| r[..new_dim].to_vec()),
        )
    }

    /// Lifts of a basis of `self / sub`, taken from the echelon rows of `self`.
    pub fn complement_rows(&self, sub: &Subspace) -> Vec<Vec<u32>> {
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for r in &self.rows {
            if !acc.contains(r) {
                acc = acc.add_vectors([r.clone()]);
                out.push(r.clone());
            }
        }
        out
    }
}

/// A nondegenerate bilinear form `<f, u> = f^T G u` between a dual space and a
/// primal space of the same dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectPairing {
    field: PrimeField,
    gram: Matrix,
    standard: bool,
}

impl PerfectPairing {
    pub fn new(field: PrimeField, gram: Matrix) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::DegeneratePairing);
        }
        if Subspace::span(field, n, gram.iter().cloned()).rank() != n {
            return Err(Error::DegeneratePairing);
        }
        let standard = gram == identity(n);
        Ok(PerfectPairing { field, gram, standard })
    }

    pub fn standard(field: PrimeField, n: usize) -> Self {
        PerfectPairing { field, gram: identity(n), standard: true }
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn pair(&self, f: &[u32], u: &[u32]) -> u32 {
        let gu = mat_vec(self.field, &self.gram, u);
        f.iter()
            .zip(&gu)
            .fold(0, |acc, (&a, &b)| self.field.add(acc, self.field.mul(a, b)))
    }

    /// `{f : <f, u> = 0 for all u in U}` for a primal subspace `U`.
    pub fn annihilator(&self, u: &Subspace) -> Result<Subspace> {
        if u.ambient_dim() != self.dim() {
            return Err(Error::AmbientMismatch(u.ambient_dim(), self.dim()));
        }
        if self.standard {
            return Ok(u.orthogonal());
        }
        let rows = u
            .basis()
            .iter()
            .map(|v| mat_vec(self.field, &self.gram, v))
            .collect();
        Ok(Subspace::kernel(self.field, self.dim(), rows))
    }

    /// `{u : <f, u> = 0 for all f in F}` for a dual subspace `F`.
    pub fn annihilator_of_dual(&self, f: &Subspace) -> Result<Subspace> {
        if f.ambient_dim() != self.dim() {
            return Err(Error::AmbientMismatch(f.ambient_dim(), self.dim()));
        }
        if self.standard {
            return Ok(f.orthogonal());
        }
        let gt = transpose(&self.gram);
        let rows = f
            .basis()
            .iter()
            .map(|v| mat_vec(self.field, &gt, v))
            .collect();
        Ok(Subspace::kernel(self.field, self.dim(), rows))
    }
}

/// Smallest subspace containing `vectors` and stable under every operator.
pub fn stable_closure(
    field: PrimeField,
    ops: &[Matrix],
    dim: usize,
    vectors: Vec<Vec<u32>>,
) -> Subspace {
    let mut space = Subspace::span(field, dim, vectors);
    let mut frontier: Vec<Vec<u32>> = space.basis().to_vec();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for op in ops {
                let w = mat_vec(field, op, v);
                if !space.contains(&w) {
                    space = space.add_vectors([w.clone()]);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    space
}

/// All subspaces of F_p^dim stable under every operator.
///
/// Each nonzero vector seeds its stable closure; the seeds are then closed
/// under pairwise sums. Refuses to run when `p^dim` exceeds `seed_cap`.
pub fn enumerate_subspaces_closed_under(
    field: PrimeField,
    ops: &[Matrix],
    dim: usize,
    seed_cap: u64,
) -> Result<Vec<Subspace>> {
    let total = (field.p as u64).checked_pow(dim as u32).filter(|&t| t <= seed_cap);
    let Some(total) = total else {
        return Err(Error::CapExceeded(format!(
            "{}^{} vectors exceed the seed cap {}",
            field.p, dim, seed_cap
        )));
    };
    let mut found: BTreeSet<Subspace> = BTreeSet::new();
    found.insert(Subspace::zero(field, dim));
    let mut v = vec![0u32; dim];
    for _ in 1..total {
        for x in v.iter_mut() {
            *x += 1;
            if *x == field.p {
                *x = 0;
            } else {
                break;
            }
        }
        found.insert(stable_closure(field, ops, dim, vec![v.clone()]));
    }
    let mut all: Vec<Subspace> = found.iter().cloned().collect();
    let mut fresh = all.clone();
    while !fresh.is_empty() {
        let mut next = Vec::new();
        for a in &fresh {
            for b in &all {
                let s = a.sum(b)?;
                if found.insert(s.clone()) {
                    next.push(s);
                }
            }
        }
        all.extend(next.iter().cloned());
        fresh = next;
    }
    Ok(found.into_iter().collect())
}
