//! Torus Shimura sets with Frobenius: the `G_m` point set and its double
//! coset model, fixed-point counts, the conditions `*(δ)`/`*(ε)`, and the
//! toral Kottwitz invariant.

use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::gmodule::{GModule, GModuleMap, ModuleError};
use crate::groups::{FiniteGroup, Subgroup};
use crate::linalg::{vec_sub, Int, Matrix, Subquotient};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShimuraError {
    #[error("level {n} is not prime to p = {p}")]
    BadLevel { n: u64, p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("condition *(δ) fails")]
    StarDeltaFailed,
    #[error("b − μ has a nonzero free image in the coinvariants")]
    FreePartNonzero,
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// A finite set with a self-map (the Frobenius or `Φ`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobSet {
    pub labels: Vec<String>,
    pub map: Vec<usize>,
}

impl FrobSet {
    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iterate(&self, x: usize, m: usize) -> usize {
        (0..m).fold(x, |y, _| self.map[y])
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.len()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    /// Cycle lengths, ascending (only meaningful for permutations).
    pub fn orbit_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for x in 0..self.len() {
            if seen[x] {
                continue;
            }
            let mut len = 0;
            let mut y = x;
            while !seen[y] {
                seen[y] = true;
                y = self.map[y];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }
}

/// `|{x : Φ^m x = x}|`.
pub fn count_fixed(s: &FrobSet, m: usize) -> usize {
    (0..s.len()).filter(|&x| s.iterate(x, m) == x).count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GmScenario {
    pub n: u64,
    pub p: u64,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl GmScenario {
    pub fn new(n: u64, p: u64) -> Result<GmScenario, ShimuraError> {
        if !is_prime(p) {
            return Err(ShimuraError::NotPrime(p));
        }
        if n == 0 || n.gcd(&p) != 1 {
            return Err(ShimuraError::BadLevel { n, p });
        }
        Ok(GmScenario { n, p })
    }

    /// Residues prime to `N`, ascending; `{0}` for `N = 1`.
    pub fn units(&self) -> Vec<u64> {
        (0..self.n).filter(|u| u.gcd(&self.n) == 1 || self.n == 1).collect()
    }
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn inv_mod(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let e = (a as i128).extended_gcd(&(n as i128));
    e.x.rem_euclid(n as i128) as u64
}

/// Multiplicative order of `p` modulo `N` (1 for `N = 1`).
pub fn multiplicative_order(p: u64, n: u64) -> usize {
    if n == 1 {
        return 1;
    }
    let mut x = p % n;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, p, n);
        k += 1;
    }
    k
}

/// `Q^× \ I_f / K^p K_p ≅ (Z/N)^×` with Frobenius `a ↦ p·a`.
pub fn gm_point_set(s: &GmScenario) -> FrobSet {
    let units = s.units();
    let index = |u: u64| units.binary_search(&u).expect("unit");
    FrobSet {
        labels: units.iter().map(|u| u.to_string()).collect(),
        map: units.iter().map(|&u| index(mul_mod(u, s.p, s.n))).collect(),
    }
}

/// A state `(sign, k, u)`: archimedean sign, `p`-adic valuation, and the
/// prime-to-`p` unit part modulo `K^p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GmState {
    pub sign: i8,
    pub k: i64,
    pub u: u64,
}

/// `I_φ \ X_p × X^p / K^p` with `Φ` translating `X_p ≅ Z` by `+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GmDoubleCosetModel {
    /// canonical representative per class (sign `+`, `k = 0`)
    pub representatives: Vec<GmState>,
    pub phi: FrobSet,
    /// class index → point index in [`gm_point_set`]
    pub witness: Vec<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            y = std::mem::replace(&mut self.0[y], r);
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Builds the quotient by `Q^×` on the window `0 ≤ k ≤ ord_N(p)`: after
/// clearing the exponents at primes `ℓ ≠ p`, what remains of `Q^×` is
/// generated by `−1` (flips the sign and `u`) and `p` (raises `k`, multiplies `u`).
pub fn gm_double_coset_model(s: &GmScenario) -> GmDoubleCosetModel {
    let units = s.units();
    let nu = units.len();
    let window = multiplicative_order(s.p, s.n) as i64;
    let states: Vec<GmState> = [1i8, -1]
        .into_iter()
        .flat_map(|sign| (0..=window).flat_map(move |k| (0..nu).map(move |i| (sign, k, i))))
        .map(|(sign, k, i)| GmState { sign, k, u: units[i] })
        .collect();
    let idx = |st: &GmState| {
        let si = if st.sign == 1 { 0 } else { 1 };
        (si * (window as usize + 1) + st.k as usize) * nu + units.binary_search(&st.u).expect("unit")
    };
    let mut uf = UnionFind((0..states.len()).collect());
    let neg = |u: u64| (s.n - u % s.n) % s.n;
    for st in &states {
        let flipped = GmState { sign: -st.sign, k: st.k, u: neg(st.u) };
        uf.union(idx(st), idx(&flipped));
        if st.k < window {
            let raised = GmState { k: st.k + 1, u: mul_mod(st.u, s.p, s.n), ..*st };
            uf.union(idx(st), idx(&raised));
        }
    }
    let roots: Vec<usize> = (0..states.len()).map(|i| uf.find(i)).collect();
    let mut classes: Vec<usize> = roots.clone();
    classes.sort_unstable();
    classes.dedup();
    let class_of = |r: usize| classes.binary_search(&r).expect("root");
    let representatives: Vec<GmState> = classes.iter().map(|&r| states[r]).collect();
    let phi_map = classes
        .iter()
        .map(|&r| {
            let st = states[r];
            debug_assert!(st.k < window, "roots sit at the smallest index");
            let shifted = GmState { k: st.k + 1, ..st };
            class_of(roots[idx(&shifted)])
        })
        .collect();
    // canonical unit s·p^{−k}·u, inverted to match a ↦ p·a
    let pinv = inv_mod(s.p % s.n, s.n);
    let witness = representatives
        .iter()
        .map(|st| {
            let mut v = if st.sign == 1 { st.u } else { neg(st.u) };
            for _ in 0..st.k {
                v = mul_mod(v, pinv, s.n);
            }
            let w = inv_mod(v, s.n);
            units.binary_search(&w).expect("unit")
        })
        .collect();
    GmDoubleCosetModel {
        representatives: representatives.clone(),
        phi: FrobSet {
            labels: representatives.iter().map(|st| format!("({},{},{})", st.sign, st.k, st.u)).collect(),
            map: phi_map,
        },
        witness,
    }
}

/// The witness is a bijection with `witness ∘ Φ = Frob ∘ witness`.
pub fn verify_gm_identification(points: &FrobSet, model: &GmDoubleCosetModel) -> bool {
    let w = &model.witness;
    if w.len() != points.len() || model.phi.len() != points.len() {
        return false;
    }
    let mut seen = vec![false; points.len()];
    let bijective = w.iter().all(|&y| y < seen.len() && !std::mem::replace(&mut seen[y], true));
    bijective && (0..w.len()).all(|c| w[model.phi.map[c]] == points.map[w[c]])
}

/// Elliptic torus datum for the Kottwitz invariant.
#[derive(Clone, Debug)]
pub struct ToralKottwitzDatum {
    /// cocharacters modulo the central part, torsion-free
    pub x: GModule,
    pub iota: usize,
    pub gp: Subgroup,
    pub mu: Vec<Int>,
    /// a representative in `X` of the class in `X_{G_p}`
    pub b_class: Vec<Int>,
    pub ab_quotient: GModuleMap,
}

impl ToralKottwitzDatum {
    pub fn new(
        x: GModule,
        iota: usize,
        gp: Subgroup,
        mu: Vec<Int>,
        b_class: Vec<Int>,
        ab_quotient: GModuleMap,
    ) -> Result<ToralKottwitzDatum, ShimuraError> {
        let g = x.group();
        if !x.is_free() {
            return Err(ShimuraError::InvalidDatum("X must be torsion-free".into()));
        }
        if iota >= g.order() || g.element_order(iota) != 2 || !crate::groups::is_central(g, iota) {
            return Err(ShimuraError::InvalidDatum("ι must be a central involution".into()));
        }
        if **gp.parent() != **g {
            return Err(ShimuraError::InvalidDatum("G_p is not a subgroup of G".into()));
        }
        if mu.len() != x.dim() || b_class.len() != x.dim() {
            return Err(ShimuraError::InvalidDatum("μ and b must lie in X".into()));
        }
        if *ab_quotient.source() != x {
            return Err(ShimuraError::InvalidDatum("ab_quotient must start at X".into()));
        }
        Ok(ToralKottwitzDatum { x, iota, gp, mu, b_class, ab_quotient })
    }

    pub fn with_b_class(&self, b_class: Vec<Int>) -> ToralKottwitzDatum {
        ToralKottwitzDatum { b_class, ..self.clone() }
    }

    pub fn with_mu(&self, mu: Vec<Int>) -> ToralKottwitzDatum {
        ToralKottwitzDatum { mu, ..self.clone() }
    }
}

/// `M_H = M / ⟨(h − 1)M⟩` as a subquotient of the ambient coordinates.
pub fn coinvariants_over(m: &GModule, h: &Subgroup) -> Subquotient {
    let n = m.dim();
    let rel = m.relation_matrix();
    let mut cols = Vec::new();
    for &g in h.elements() {
        let d = m.action(g).sub(&Matrix::identity(n));
        cols.extend(d.columns());
    }
    let b = Matrix::from_columns(n, &cols).hstack(&rel);
    Subquotient::new(n, &Matrix::identity(n).hstack(&rel), &b).expect("augmentation image")
}

fn vanishes_in(sq: &Subquotient, v: &[Int]) -> bool {
    sq.coords(v).expect("ambient element").iter().zip(sq.factors()).all(|(c, d)| {
        if d.is_zero() {
            c.is_zero()
        } else {
            (c % &d).is_zero()
        }
    })
}

/// `*(δ)`: `b` and `μ` agree in the `G_p`-coinvariants of the abelianized lattice.
pub fn star_delta_check(d: &ToralKottwitzDatum) -> bool {
    let y = d.ab_quotient.target();
    let diff = vec_sub(&d.ab_quotient.apply(&d.b_class), &d.ab_quotient.apply(&d.mu));
    vanishes_in(&coinvariants_over(y, &d.gp), &y.reduce(&diff))
}

/// `Σ_{j<n} Frob^j μ` in `X ⊗ Q`.
pub fn frobenius_norm(x: &GModule, frob: usize, mu: &[Int], n: usize) -> Vec<BigRational> {
    let mut acc = vec![Int::zero(); x.dim()];
    let mut term = mu.to_vec();
    for _ in 0..n {
        acc = crate::linalg::vec_add(&acc, &term);
        term = x.act(frob, &term);
    }
    acc.into_iter().map(BigRational::from_integer).collect()
}

/// `*(ε)`: the valuation of `ε` equals the Frobenius norm of `μ` of length `n`.
pub fn star_epsilon_check(x: &GModule, frob: usize, eps_valuation: &[BigRational], mu: &[Int], n: usize) -> bool {
    eps_valuation.len() == x.dim() && frobenius_norm(x, frob, mu, n) == eps_valuation
}

/// `κ` as coordinates in the torsion of `X_G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KappaValue {
    /// invariant factors of `X_G` (0 marks a free summand)
    pub factors: Vec<Int>,
    pub coords: Vec<Int>,
}

impl KappaValue {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &KappaValue) -> KappaValue {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(&self.factors)
            .map(|((a, b), d)| crate::linalg::reduce(&(a + b), d))
            .collect();
        KappaValue { factors: self.factors.clone(), coords }
    }
}

/// Image of `b − μ` under `X_{G_p} → X_G`; the archimedean term is the
/// restriction of `−μ` and `β(ℓ)` is trivial for tori, so only this survives.
pub fn kappa_toral(d: &ToralKottwitzDatum) -> Result<KappaValue, ShimuraError> {
    if !star_delta_check(d) {
        return Err(ShimuraError::StarDeltaFailed);
    }
    let g = d.x.group();
    let sq = coinvariants_over(&d.x, &g.whole());
    let diff = vec_sub(&d.b_class, &d.mu);
    let raw = sq.coords(&diff).expect("ambient element");
    let factors = sq.factors();
    let coords: Vec<Int> = raw.iter().zip(&factors).map(|(c, f)| crate::linalg::reduce(c, f)).collect();
    if coords.iter().zip(&factors).any(|(c, f)| f.is_zero() && !c.is_zero()) {
        return Err(ShimuraError::FreePartNonzero);
    }
    Ok(KappaValue { factors, coords })
}

/// Matching holds iff `κ = 0`.
pub fn matching_criterion(d: &ToralKottwitzDatum) -> Result<bool, ShimuraError> {
    Ok(kappa_toral(d)?.is_zero())
}

/// `Z` with `ι` acting by `−1` over `Z/2 = ⟨ι⟩`, `G_p = G`, and the zero
/// abelianization; `X_{G_p} = X_G = Z/2`. Returns the datum with `b = μ + t`.
pub fn sign_torus_datum(mu: i64, t: i64) -> ToralKottwitzDatum {
    let g = FiniteGroup::cyclic(2);
    let x = GModule::sign(Arc::clone(&g), &[1, -1]).expect("sign character");
    let zero = GModule::zero(Arc::clone(&g));
    let ab = GModuleMap::new(x.clone(), zero, Matrix::zeros(0, 1)).expect("zero map");
    let gp = g.whole();
    ToralKottwitzDatum::new(x, 1, gp, vec![Int::from(mu)], vec![Int::from(mu + t)], ab).expect("valid datum")
}

/// Small random vector with entries in `−3..=3`.
pub fn random_element(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Int> {
    (0..dim).map(|_| Int::from(rng.gen_range(-3i64..=3))).collect()
}

/// A random elliptic datum with `b = μ`: `X` is a sum of nontrivial sign
/// characters and augmentation ideals, so `X_G` is finite, and the
/// abelianization is zero.
pub fn random_toral_datum(rng: &mut ChaCha8Rng) -> ToralKottwitzDatum {
    let g = match rng.gen_range(0..4) {
        0 => FiniteGroup::cyclic(2),
        1 => FiniteGroup::cyclic(4),
        2 => FiniteGroup::elementary_abelian_2(2),
        _ => FiniteGroup::elementary_abelian_2(3),
    };
    let involutions: Vec<usize> = g.elements().filter(|&x| g.element_order(x) == 2).collect();
    let iota = involutions[rng.gen_range(0..involutions.len())];
    let gp = g.generated(&[rng.gen_range(0..g.order())]);
    let mut x = GModule::zero(Arc::clone(&g));
    for _ in 0..rng.gen_range(1..=3) {
        let piece = if rng.gen_bool(0.5) {
            let signs = nontrivial_character(&g, rng);
            GModule::sign(Arc::clone(&g), &signs).expect("character")
        } else {
            augmentation_ideal(&g)
        };
        x = x.direct_sum(&piece).expect("same group");
    }
    let mu = random_element(rng, x.dim());
    let zero = GModuleMap::new(x.clone(), GModule::zero(Arc::clone(&g)), Matrix::zeros(0, x.dim())).expect("zero map");
    ToralKottwitzDatum::new(x, iota, gp, mu.clone(), mu, zero).expect("random datum is valid")
}

/// A random nontrivial `±1`-character: trivial exactly on an index-2 subgroup.
fn nontrivial_character(g: &Arc<FiniteGroup>, rng: &mut ChaCha8Rng) -> Vec<i64> {
    let halves: Vec<Subgroup> = g.all_subgroups().into_iter().filter(|h| h.index() == 2).collect();
    let h = &halves[rng.gen_range(0..halves.len())];
    g.elements().map(|x| if h.contains(x) { 1 } else { -1 }).collect()
}

/// `ker(Z[G] → Z)`.
pub fn augmentation_ideal(g: &Arc<FiniteGroup>) -> GModule {
    let reg = GModule::regular(Arc::clone(g));
    let ones = Matrix::from_rows(&[vec![Int::from(1); g.order()]]);
    let aug = GModuleMap::new(reg, GModule::trivial_z(Arc::clone(g)), ones).expect("augmentation");
    aug.kernel().0
}
