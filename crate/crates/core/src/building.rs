//! The GL(2) Bruhat–Tits tree over `Q_p`, products of trees with a twisted
//! Frobenius, relative positions, and bounded enumeration of `X_p`.
//!
//! Matrix entries are rationals; lattices are `Z_p`-spans of columns, so any
//! denominator prime to `p` counts as a unit. A point of the GL(2) building
//! is a tree vertex (lattice modulo `p`-power scalars) together with an
//! integer offset on the `Z`-factor, which for an honest lattice is the
//! valuation of its determinant.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub type Q = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildingError {
    #[error("singular matrix")]
    Singular,
    #[error("arity mismatch: operator has {expected} factors, point has {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("lambda must have p-adic valuation 1")]
    BadLambda,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn p_pow(p: u64, e: i64) -> Q {
    let base = Q::from_integer(BigInt::from(p));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

fn val_int(n: &BigInt, p: u64) -> i64 {
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &pb).is_zero() {
        n /= &pb;
        v += 1;
    }
    v
}

/// `v_p(x)` for nonzero `x`.
pub fn valuation(x: &Q, p: u64) -> i64 {
    assert!(!x.is_zero(), "valuation of zero");
    val_int(x.numer(), p) - val_int(x.denom(), p)
}

/// The digits of `x` below `p^a`: the unique `n / p^T` with `0 ≤ n < p^{a+T}`
/// congruent to `x` modulo `p^a Z_p`.
fn reduce_mod(x: &Q, a: i64, p: u64) -> Q {
    if x.is_zero() {
        return Q::zero();
    }
    let v = valuation(x, p);
    if v >= a {
        return Q::zero();
    }
    let t = (-v).max(0);
    let scaled = x * p_pow(p, t);
    let modulus = BigInt::from(p).pow((a + t) as u32);
    let den_inv = scaled.denom().extended_gcd(&modulus).x;
    let n = (scaled.numer() * den_inv).mod_floor(&modulus);
    Q::new(n, BigInt::from(p).pow(t as u32))
}

/// 2×2 rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct M2(pub [[Q; 2]; 2]);

impl M2 {
    pub fn new(a: Q, b: Q, c: Q, d: Q) -> M2 {
        M2([[a, b], [c, d]])
    }

    pub fn from_i64(m: [[i64; 2]; 2]) -> M2 {
        M2::new(q(m[0][0]), q(m[0][1]), q(m[1][0]), q(m[1][1]))
    }

    pub fn identity() -> M2 {
        M2::from_i64([[1, 0], [0, 1]])
    }

    pub fn diag(a: Q, d: Q) -> M2 {
        M2::new(a, Q::zero(), Q::zero(), d)
    }

    pub fn scalar(s: Q) -> M2 {
        M2::diag(s.clone(), s)
    }

    pub fn mul(&self, o: &M2) -> M2 {
        let (a, b) = (&self.0, &o.0);
        M2::new(
            &a[0][0] * &b[0][0] + &a[0][1] * &b[1][0],
            &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1],
            &a[1][0] * &b[0][0] + &a[1][1] * &b[1][0],
            &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1],
        )
    }

    pub fn det(&self) -> Q {
        &self.0[0][0] * &self.0[1][1] - &self.0[0][1] * &self.0[1][0]
    }

    pub fn inverse(&self) -> Option<M2> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let m = &self.0;
        Some(M2::new(&m[1][1] / &d, -&m[0][1] / &d, -&m[1][0] / &d, &m[0][0] / &d))
    }

    pub fn is_diagonal(&self) -> bool {
        self.0[0][1].is_zero() && self.0[1][0].is_zero()
    }

    fn entries(&self) -> impl Iterator<Item = &Q> {
        self.0.iter().flatten()
    }

    /// Elementary-divisor exponents `(a, b)`, `a ≥ b`.
    pub fn elementary_divisors(&self, p: u64) -> (i64, i64) {
        let b = self.entries().filter(|x| !x.is_zero()).map(|x| valuation(x, p)).min().expect("nonzero matrix");
        (valuation(&self.det(), p) - b, b)
    }

    /// Rows as decimal strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.0.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }
}

/// A tree vertex: the lattice spanned by the columns of `[[p^a, c], [0, p^b]]`
/// up to `p`-power scalars, with `min(a, b) = 0` and `c` reduced modulo `p^a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeClass {
    a: i64,
    b: i64,
    c: Q,
}

/// Column Hermite form `(a, b, c)` of the lattice spanned by `m`, not scaled.
fn hermite(m: &M2, p: u64) -> Result<(i64, i64, Q), BuildingError> {
    if m.det().is_zero() {
        return Err(BuildingError::Singular);
    }
    let [[mut x1, mut x2], [mut y1, mut y2]] = m.0.clone();
    // the column whose lower entry has the smaller valuation becomes the pivot
    let swap = y2.is_zero() || (!y1.is_zero() && valuation(&y1, p) < valuation(&y2, p));
    if swap {
        std::mem::swap(&mut x1, &mut x2);
        std::mem::swap(&mut y1, &mut y2);
    }
    let t = &y1 / &y2;
    x1 -= &t * &x2;
    let a = valuation(&x1, p);
    let b = valuation(&y2, p);
    let x2 = x2 * p_pow(p, b) / &y2;
    Ok((a, b, reduce_mod(&x2, a, p)))
}

impl LatticeClass {
    /// The class of the column span of `m` and the valuation of `det m`.
    pub fn from_matrix(m: &M2, p: u64) -> Result<(LatticeClass, i64), BuildingError> {
        let (a, b, c) = hermite(m, p)?;
        let s = a.min(b);
        let c = reduce_mod(&(c * p_pow(p, -s)), a - s, p);
        Ok((LatticeClass { a: a - s, b: b - s, c }, a + b))
    }

    pub fn standard() -> LatticeClass {
        LatticeClass { a: 0, b: 0, c: Q::zero() }
    }

    pub fn matrix(&self, p: u64) -> M2 {
        M2::new(p_pow(p, self.a), self.c.clone(), Q::zero(), p_pow(p, self.b))
    }

    pub fn exponents(&self) -> (i64, i64) {
        (self.a, self.b)
    }

    pub fn offdiagonal(&self) -> &Q {
        &self.c
    }

    pub fn translate(&self, g: &M2, p: u64) -> LatticeClass {
        LatticeClass::from_matrix(&g.mul(&self.matrix(p)), p).expect("invertible").0
    }

    pub fn distance(&self, other: &LatticeClass, p: u64) -> i64 {
        let m = self.matrix(p).inverse().expect("invertible").mul(&other.matrix(p));
        let (a, b) = m.elementary_divisors(p);
        a - b
    }

    /// The `p + 1` neighbours, as index-`p` sublattices.
    pub fn neighbours(&self, p: u64) -> Vec<LatticeClass> {
        let base = self.matrix(p);
        let mut out: Vec<LatticeClass> = (0..p as i64)
            .map(|k| M2::from_i64([[p as i64, k], [0, 1]]))
            .chain(std::iter::once(M2::from_i64([[1, 0], [0, p as i64]])))
            .map(|s| LatticeClass::from_matrix(&base.mul(&s), p).expect("invertible").0)
            .collect();
        out.sort();
        out
    }
}

/// A point of the GL(2) building: tree vertex plus `Z`-offset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BuildingPoint {
    pub vertex: LatticeClass,
    pub offset: i64,
}

impl BuildingPoint {
    pub fn from_matrix(m: &M2, p: u64) -> Result<BuildingPoint, BuildingError> {
        let (vertex, offset) = LatticeClass::from_matrix(m, p)?;
        Ok(BuildingPoint { vertex, offset })
    }

    pub fn standard() -> BuildingPoint {
        BuildingPoint { vertex: LatticeClass::standard(), offset: 0 }
    }

    pub fn act(&self, g: &M2, p: u64) -> BuildingPoint {
        BuildingPoint { vertex: self.vertex.translate(g, p), offset: self.offset + valuation(&g.det(), p) }
    }
}

/// Relative position, stored doubled so that twisted points (whose offset
/// parity need not match the tree distance) still have one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DominancePair {
    pub a2: i64,
    pub b2: i64,
}

impl DominancePair {
    pub fn new(a: i64, b: i64) -> DominancePair {
        assert!(a >= b, "dominance pair needs a ≥ b");
        DominancePair { a2: 2 * a, b2: 2 * b }
    }

    pub fn integral(&self) -> Option<(i64, i64)> {
        (self.a2 % 2 == 0 && self.b2 % 2 == 0).then_some((self.a2 / 2, self.b2 / 2))
    }

    /// `inv(y, x)` from `inv(x, y)`.
    pub fn reversed(&self) -> DominancePair {
        DominancePair { a2: -self.b2, b2: -self.a2 }
    }
}

impl fmt::Display for DominancePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.integral() {
            Some((a, b)) => write!(f, "({a},{b})"),
            None => write!(f, "({}/2,{}/2)", self.a2, self.b2),
        }
    }
}

/// `inv(x, y)`: `a − b` is the tree distance and `a + b` the offset change.
pub fn inv(x: &BuildingPoint, y: &BuildingPoint, p: u64) -> DominancePair {
    let d = x.vertex.distance(&y.vertex, p);
    let dt = y.offset - x.offset;
    DominancePair { a2: dt + d, b2: dt - d }
}

/// A point of the product of `n` buildings.
pub type TwistedProductPoint = Vec<BuildingPoint>;

/// `F = g × σ^k` on the product of `n` buildings, with
/// `σ(x⁰, …, x^{n−1}) = (x¹, …, x^{n−1}, j·x⁰)` on trees and the plain cyclic
/// shift on offsets; `j = [[0, 1], [λ, 0]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobOperator {
    pub p: u64,
    pub lambda: Q,
    pub g: Vec<M2>,
    pub sigma_power: usize,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl FrobOperator {
    pub fn new(p: u64, lambda: Q, g: Vec<M2>, sigma_power: usize) -> Result<FrobOperator, BuildingError> {
        if !is_prime(p) {
            return Err(BuildingError::NotPrime(p));
        }
        if lambda.is_zero() || valuation(&lambda, p) != 1 {
            return Err(BuildingError::BadLambda);
        }
        if g.is_empty() {
            return Err(BuildingError::InvalidParameters("at least one factor".into()));
        }
        if g.iter().any(|m| m.det().is_zero()) {
            return Err(BuildingError::Singular);
        }
        Ok(FrobOperator { p, lambda, g, sigma_power })
    }

    /// `(diag(p,1)^{×a}, diag(1,p)^{×b}, j) × σ` with `v₁ = 2a + 1`, `v₂ = 2b + 1`, `n = a + b + 1`.
    pub fn quaternionic(v1: i64, v2: i64, p: u64, lambda: Option<Q>) -> Result<FrobOperator, BuildingError> {
        if v1 <= 0 || v2 <= 0 || v1 % 2 == 0 || v2 % 2 == 0 {
            return Err(BuildingError::InvalidParameters("v1 and v2 must be positive and odd".into()));
        }
        let (a, b) = ((v1 - 1) / 2, (v2 - 1) / 2);
        let lambda = lambda.unwrap_or_else(|| -q(p as i64));
        let pq = q(p as i64);
        let mut g: Vec<M2> = (0..a).map(|_| M2::diag(pq.clone(), Q::one())).collect();
        g.extend((0..b).map(|_| M2::diag(Q::one(), pq.clone())));
        g.push(M2::new(Q::zero(), Q::one(), lambda.clone(), Q::zero()));
        FrobOperator::new(p, lambda, g, 1)
    }

    pub fn n(&self) -> usize {
        self.g.len()
    }

    pub fn j(&self) -> M2 {
        M2::new(Q::zero(), Q::one(), self.lambda.clone(), Q::zero())
    }

    /// Twisted `σ` on group elements: `(h¹, …, h^{n−1}, j h⁰ j⁻¹)`.
    pub fn sigma_matrices(&self, h: &[M2]) -> Vec<M2> {
        let j = self.j();
        let jinv = j.inverse().expect("j invertible");
        let mut out: Vec<M2> = h[1..].to_vec();
        out.push(j.mul(&h[0]).mul(&jinv));
        out
    }

    pub fn sigma_point(&self, x: &[BuildingPoint]) -> TwistedProductPoint {
        let mut out: Vec<BuildingPoint> = x[1..].to_vec();
        out.push(BuildingPoint { vertex: x[0].vertex.translate(&self.j(), self.p), offset: x[0].offset });
        out
    }

    pub fn sigma_point_pow(&self, x: &[BuildingPoint], k: usize) -> TwistedProductPoint {
        (0..k).fold(x.to_vec(), |acc, _| self.sigma_point(&acc))
    }

    fn sigma_matrices_pow(&self, h: &[M2], k: usize) -> Vec<M2> {
        (0..k).fold(h.to_vec(), |acc, _| self.sigma_matrices(&acc))
    }

    /// `F ∘ G`.
    pub fn compose(&self, other: &FrobOperator) -> FrobOperator {
        let twisted = self.sigma_matrices_pow(&other.g, self.sigma_power);
        let g = self.g.iter().zip(&twisted).map(|(a, b)| a.mul(b)).collect();
        FrobOperator { g, sigma_power: self.sigma_power + other.sigma_power, ..self.clone() }
    }

    pub fn identity_like(&self) -> FrobOperator {
        FrobOperator { g: vec![M2::identity(); self.n()], sigma_power: 0, ..self.clone() }
    }
}

pub fn apply_frob(f: &FrobOperator, x: &[BuildingPoint]) -> Result<TwistedProductPoint, BuildingError> {
    if x.len() != f.n() {
        return Err(BuildingError::ArityMismatch { expected: f.n(), found: x.len() });
    }
    let s = f.sigma_point_pow(x, f.sigma_power);
    Ok(s.iter().zip(&f.g).map(|(pt, g)| pt.act(g, f.p)).collect())
}

/// Shape of a power of `F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerReport {
    pub power: usize,
    /// the twist `σ^k` acts trivially on group elements
    pub twist_trivial: bool,
    /// all components equal and diagonal
    pub diagonal_central: bool,
    /// `(v(d₁₁), v(d₂₂))` of the common component
    pub valuations: Option<(i64, i64)>,
    /// sign `s` with `F^k = s·diag(p^{v₁}, p^{v₂})` when that holds
    pub sign: Option<i64>,
}

pub fn frob_power(f: &FrobOperator, k: usize) -> (FrobOperator, PowerReport) {
    let mut acc = f.identity_like();
    for _ in 0..k {
        acc = acc.compose(f);
    }
    let p = f.p;
    let first = &acc.g[0];
    let diagonal_central = acc.g.iter().all(|m| m.is_diagonal() && m == first);
    let valuations = (diagonal_central && !first.0[0][0].is_zero() && !first.0[1][1].is_zero())
        .then(|| (valuation(&first.0[0][0], p), valuation(&first.0[1][1], p)));
    let sign = valuations.and_then(|(v1, v2)| {
        let target = M2::diag(p_pow(p, v1), p_pow(p, v2));
        if *first == target {
            Some(1)
        } else if *first == M2::scalar(q(-1)).mul(&target) {
            Some(-1)
        } else {
            None
        }
    });
    // a generic (non-diagonal) probe detects any nontrivial twist
    let probe = vec![M2::from_i64([[1, 2], [3, 7]]); f.n()];
    let twist_trivial = f.sigma_matrices_pow(&probe, acc.sigma_power) == probe;
    let report = PowerReport { power: k, twist_trivial, diagonal_central, valuations, sign };
    (acc, report)
}

/// `x₀` = standard lattices, `x_i = σ^i x₀` for `i < m`.
pub fn base_tuple(f: &FrobOperator, m: usize) -> Vec<TwistedProductPoint> {
    let x0 = vec![BuildingPoint::standard(); f.n()];
    (0..m).map(|i| f.sigma_point_pow(&x0, i)).collect()
}

/// `inv(x_{σ(i)}, F x_i)` at every index and factor.
pub fn inv_profile(f: &FrobOperator, tuple: &[TwistedProductPoint], sigma_perm: &[usize]) -> Vec<Vec<DominancePair>> {
    tuple
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let fx = apply_frob(f, x).expect("arity checked by caller");
            tuple[sigma_perm[i]].iter().zip(&fx).map(|(a, b)| inv(a, b, f.p)).collect()
        })
        .collect()
}

fn satisfies(f: &FrobOperator, tuple: &[TwistedProductPoint], mu: DominancePair, sigma_perm: &[usize]) -> bool {
    tuple.iter().enumerate().all(|(i, x)| {
        let fx = apply_frob(f, x).expect("arity");
        tuple[sigma_perm[i]].iter().zip(&fx).all(|(a, b)| inv(a, b, f.p) == mu)
    })
}

/// Summing offset changes around the tuple: each index contributes
/// `v(det g)` through `F` and `a + b` of `μ` through the condition, per factor.
pub fn valuation_obstruction(f: &FrobOperator, mu: DominancePair, m: usize) -> bool {
    let total_g: i64 = f.g.iter().map(|g| valuation(&g.det(), f.p)).sum();
    2 * total_g * m as i64 != (mu.a2 + mu.b2) * (m * f.n()) as i64
}

/// All tuples within `ℓ¹` distance `depth` of the base tuple (moving one
/// tree edge or one offset unit per step) that satisfy the `inv` condition,
/// in sorted order.
pub fn enumerate_xp(
    f: &FrobOperator,
    mu: DominancePair,
    sigma_perm: &[usize],
    depth: usize,
) -> Result<Vec<Vec<TwistedProductPoint>>, BuildingError> {
    let m = sigma_perm.len();
    let mut sorted = sigma_perm.to_vec();
    sorted.sort_unstable();
    if sorted != (0..m).collect::<Vec<_>>() {
        return Err(BuildingError::InvalidParameters("sigma_perm is not a permutation".into()));
    }
    if valuation_obstruction(f, mu, m) {
        return Ok(Vec::new());
    }
    let base = base_tuple(f, m);
    let n = f.n();
    let mut seen: BTreeSet<Vec<TwistedProductPoint>> = BTreeSet::from([base.clone()]);
    let mut shell = vec![base];
    for _ in 0..depth {
        let next: BTreeSet<Vec<TwistedProductPoint>> = shell
            .par_iter()
            .flat_map_iter(|t| {
                let mut out = Vec::new();
                for i in 0..m {
                    for c in 0..n {
                        let pt = &t[i][c];
                        let mut moves: Vec<BuildingPoint> = pt
                            .vertex
                            .neighbours(f.p)
                            .into_iter()
                            .map(|v| BuildingPoint { vertex: v, offset: pt.offset })
                            .collect();
                        moves.push(BuildingPoint { vertex: pt.vertex.clone(), offset: pt.offset + 1 });
                        moves.push(BuildingPoint { vertex: pt.vertex.clone(), offset: pt.offset - 1 });
                        for mv in moves {
                            let mut u = t.clone();
                            u[i][c] = mv;
                            out.push(u);
                        }
                    }
                }
                out
            })
            .collect();
        shell = next.into_iter().filter(|t| seen.insert(t.clone())).collect();
    }
    let all: Vec<Vec<TwistedProductPoint>> = seen.into_iter().collect();
    let hits: Vec<bool> = all.par_iter().map(|t| satisfies(f, t, mu, sigma_perm)).collect();
    Ok(all.into_iter().zip(hits).filter_map(|(t, h)| h.then_some(t)).collect())
}

/// `i ↦ i + 1 mod m`.
pub fn cyclic_perm(m: usize) -> Vec<usize> {
    (0..m).map(|i| (i + 1) % m).collect()
}

/// The torus model: `X_* = Z^d` with `σ` the cyclic shift, `X_p` the
/// `σ`-invariants, and `Φ` translation by `−ν₂ = Σ_{j<r} σ^j μ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusXpModel {
    /// basis of the invariant lattice (empty for the trivial torus)
    pub invariant_basis: Vec<Vec<i64>>,
    pub translation: Vec<i64>,
    /// `Φ` in invariant-lattice coordinates
    pub translation_coords: Vec<i64>,
    pub fixed_point_free: bool,
}

pub fn torus_xp_model(r: usize, mu: &[i64]) -> Result<TorusXpModel, BuildingError> {
    let d = mu.len();
    if d == 0 {
        return Ok(TorusXpModel {
            invariant_basis: vec![],
            translation: vec![],
            translation_coords: vec![],
            fixed_point_free: false,
        });
    }
    if r == 0 || r % d != 0 {
        return Err(BuildingError::InvalidParameters("r must be a positive multiple of the rank".into()));
    }
    let translation: Vec<i64> = (0..d).map(|i| (0..r).map(|j| mu[(i + d - j % d) % d]).sum()).collect();
    let coord = translation[0];
    if translation.iter().any(|&t| t != coord) {
        return Err(BuildingError::InvalidParameters("translation is not invariant".into()));
    }
    Ok(TorusXpModel {
        invariant_basis: vec![vec![1; d]],
        translation,
        translation_coords: vec![coord],
        fixed_point_free: coord != 0,
    })
}

/// Canonical form as rows of decimal strings, for reports.
pub fn point_to_strings(x: &BuildingPoint, p: u64) -> (Vec<Vec<String>>, i64) {
    (x.vertex.matrix(p).to_strings(), x.offset)
}

/// Integer value of a small rational (for reports).
pub fn q_to_i64(x: &Q) -> Option<i64> {
    x.is_integer().then(|| x.to_integer().to_i64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 5;

    fn pt(m: [[i64; 2]; 2]) -> BuildingPoint {
        BuildingPoint::from_matrix(&M2::from_i64(m), P).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let l = pt([[1, 0], [0, 1]]);
        assert_eq!(l, BuildingPoint::standard());
        // any unimodular change of basis
        assert_eq!(pt([[2, 3], [1, 2]]), l);
        // p-scaling moves only the offset
        let s = pt([[5, 0], [0, 5]]);
        assert_eq!((s.vertex.clone(), s.offset), (LatticeClass::standard(), 2));
        // units prime to p are units
        let m = M2::new(q(1), Q::new(BigInt::from(1), BigInt::from(3)), q(0), q(5));
        let x = BuildingPoint::from_matrix(&m, P).unwrap();
        assert_eq!(x.vertex.exponents(), (0, 1));
        assert!(x.vertex.offdiagonal().is_zero());
        assert!(BuildingPoint::from_matrix(&M2::from_i64([[1, 2], [2, 4]]), P).is_err());
    }

    #[test]
    fn inv_examples() {
        let l = BuildingPoint::standard();
        assert_eq!(inv(&l, &l, P), DominancePair::new(0, 0));
        let y = pt([[1, 0], [0, 5]]);
        assert_eq!(inv(&l, &y, P), DominancePair::new(1, 0));
        assert_eq!(inv(&y, &l, P), DominancePair::new(0, -1));
        assert_eq!(inv(&y, &l, P), inv(&l, &y, P).reversed());
        assert_eq!(inv(&l, &pt([[5, 0], [0, 5]]), P), DominancePair::new(1, 1));
        assert_eq!(inv(&l, &pt([[25, 1], [0, 1]]), P), DominancePair::new(2, 0));
    }

    #[test]
    fn neighbours_are_at_distance_one() {
        let l = LatticeClass::standard();
        let nb = l.neighbours(P);
        assert_eq!(nb.len(), 6);
        assert_eq!(nb.iter().collect::<BTreeSet<_>>().len(), 6);
        assert!(nb.iter().all(|v| l.distance(v, P) == 1));
        let second: BTreeSet<LatticeClass> = nb.iter().flat_map(|v| v.neighbours(P)).collect();
        assert_eq!(second.len(), 1 + 6 * 5);
    }

    #[test]
    fn frobenius_examples() {
        let f = FrobOperator::new(P, q(5), vec![M2::identity()], 1).unwrap();
        let x = vec![BuildingPoint::standard()];
        let fx = apply_frob(&f, &x).unwrap();
        assert_eq!(fx[0].vertex, LatticeClass::standard().translate(&f.j(), P));
        assert_eq!(fx[0].offset, 0);
        assert!(matches!(apply_frob(&f, &[]), Err(BuildingError::ArityMismatch { .. })));

        let f = FrobOperator::quaternionic(1, 3, P, None).unwrap();
        let base = base_tuple(&f, 4);
        for i in 0..3 {
            assert_eq!(f.sigma_point(&base[i]), base[i + 1]);
        }
        assert_eq!(f.sigma_point(&base[3]), base[0]);

        let g = FrobOperator::new(P, q(5), vec![M2::diag(q(25), q(1))], 0).unwrap();
        let y = apply_frob(&g, &[BuildingPoint::standard()]).unwrap();
        assert_eq!(y[0].vertex.exponents(), (2, 0));
        assert_eq!(y[0].offset, 2);
    }

    #[test]
    fn powers() {
        let f = FrobOperator::quaternionic(1, 1, P, None).unwrap();
        let (f2, r) = frob_power(&f, 2);
        assert_eq!(f2.g[0], M2::scalar(q(-5)));
        assert_eq!((r.valuations, r.sign, r.twist_trivial), (Some((1, 1)), Some(-1), true));
        for (n, v1, v2) in [(2, 1, 3), (3, 1, 5), (2, 3, 1), (4, 5, 3)] {
            let f = FrobOperator::quaternionic(v1, v2, P, None).unwrap();
            assert_eq!(f.n(), n);
            let (_, r) = frob_power(&f, 2 * n);
            assert!(r.diagonal_central && r.twist_trivial, "{r:?}");
            assert_eq!(r.valuations, Some((v1, v2)));
        }
        let f = FrobOperator::quaternionic(1, 3, P, None).unwrap();
        let (a, _) = frob_power(&f, 3);
        let (b, _) = frob_power(&f, 2);
        assert_eq!(a, b.compose(&f));
        assert_eq!(a, f.compose(&b));
    }

    #[test]
    fn base_tuple_lies_in_xp() {
        for (v1, v2) in [(1, 1), (1, 3), (3, 1)] {
            let f = FrobOperator::quaternionic(v1, v2, P, None).unwrap();
            let m = 2 * f.n();
            let base = base_tuple(&f, m);
            let prof = inv_profile(&f, &base, &cyclic_perm(m));
            assert!(prof.iter().flatten().all(|d| *d == DominancePair::new(1, 0)));
        }
        let f = FrobOperator::quaternionic(1, 1, 3, None).unwrap();
        let found = enumerate_xp(&f, DominancePair::new(1, 0), &cyclic_perm(2), 2).unwrap();
        assert!(found.contains(&base_tuple(&f, 2)));
        let again = enumerate_xp(&f, DominancePair::new(1, 0), &cyclic_perm(2), 2).unwrap();
        assert_eq!(found, again);
        let none = enumerate_xp(&f, DominancePair::new(0, 0), &cyclic_perm(2), 3).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn torus_models() {
        assert_eq!(torus_xp_model(1, &[]).unwrap().invariant_basis.len(), 0);
        let gm = torus_xp_model(1, &[1]).unwrap();
        assert_eq!((gm.translation_coords.clone(), gm.fixed_point_free), (vec![1], true));
        let quad = torus_xp_model(2, &[1, 0]).unwrap();
        assert_eq!(quad.translation, vec![1, 1]);
    }

    #[test]
    fn reduction_is_canonical() {
        let x = Q::new(BigInt::from(7), BigInt::from(25));
        let r = reduce_mod(&x, 1, P);
        assert_eq!(r, x);
        let y = Q::new(BigInt::from(57), BigInt::from(5));
        let ry = reduce_mod(&y, 1, P);
        assert!(valuation(&(&y - &ry), P) >= 1);
        assert_eq!(ry, Q::new(BigInt::from(7), BigInt::from(5)));
        assert_eq!(reduce_mod(&(x.clone() + q(5)), 1, P), r);
        assert_eq!(reduce_mod(&q(3), 0, P), Q::zero());
    }
}
