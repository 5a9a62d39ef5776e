//! Tate cohomology `Ĥⁿ(G, M)` for `n ∈ {−1, 0, 1, 2}` via the normalized bar complex.

use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::gmodule::{GModule, GModuleMap, ShortExactSequence};
use crate::groups::{FiniteGroup, Subgroup};
use crate::linalg::{smith, vec_add, zero_vec, Int, LatticeSolver, Matrix, Subquotient};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TateError {
    #[error("unsupported degree {0} (only -1..=2)")]
    UnsupportedDegree(i32),
    #[error("cochain is not a cocycle (first failure at {0:?})")]
    NotACocycle(Vec<usize>),
    #[error("cochain is not normalized: nonzero value at {0:?}")]
    NotNormalized(Vec<usize>),
    #[error("cochain of degree {0} cannot be handled here")]
    BadDegree(usize),
    #[error("element is not killed by the local norm")]
    NotInKernelOfLocalNorm,
    #[error("element of the quotient is not invariant under {0}")]
    NotInvariant(usize),
    #[error("cochain lives over a different module")]
    ModuleMismatch,
}

/// A normalized inhomogeneous cochain `Gⁿ → M`, stored densely.
#[derive(Clone, Debug)]
pub struct CochainTable {
    degree: usize,
    module: GModule,
    values: Vec<Vec<Int>>,
}

impl PartialEq for CochainTable {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.module == other.module && self.values == other.values
    }
}

fn tuple_index(order: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &g| acc * order + g)
}

fn index_tuple(order: usize, n: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for k in (0..n).rev() {
        t[k] = idx % order;
        idx /= order;
    }
    t
}

impl CochainTable {
    pub fn zero(module: &GModule, degree: usize) -> CochainTable {
        let n = module.group().order().pow(degree as u32);
        CochainTable { degree, module: module.clone(), values: vec![module.zero_element(); n] }
    }

    /// Build from a function on tuples; values on tuples containing the identity must vanish.
    pub fn from_fn<F>(module: &GModule, degree: usize, mut f: F) -> Result<CochainTable, TateError>
    where
        F: FnMut(&[usize]) -> Vec<Int>,
    {
        let g = module.group();
        let n = g.order().pow(degree as u32);
        let e = g.identity();
        let mut values = Vec::with_capacity(n);
        for idx in 0..n {
            let t = index_tuple(g.order(), degree, idx);
            let v = module.reduce(&f(&t));
            if t.contains(&e) && !module.is_zero(&v) {
                return Err(TateError::NotNormalized(t));
            }
            values.push(v);
        }
        Ok(CochainTable { degree, module: module.clone(), values })
    }

    /// Build from a function, forcing the value to zero on tuples containing the identity.
    pub fn normalized_from_fn<F>(module: &GModule, degree: usize, mut f: F) -> CochainTable
    where
        F: FnMut(&[usize]) -> Vec<Int>,
    {
        let e = module.group().identity();
        Self::from_fn(module, degree, |t| if t.contains(&e) { module.zero_element() } else { f(t) })
            .expect("normalized by construction")
    }

    /// A degree-0 cochain is just an element.
    pub fn constant(module: &GModule, m: &[Int]) -> CochainTable {
        CochainTable { degree: 0, module: module.clone(), values: vec![module.reduce(m)] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.module.group()
    }

    pub fn get(&self, args: &[usize]) -> &[Int] {
        assert_eq!(args.len(), self.degree);
        &self.values[tuple_index(self.group().order(), args)]
    }

    pub fn values(&self) -> &[Vec<Int>] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| self.module.is_zero(v))
    }

    fn zip_with(&self, other: &CochainTable, f: impl Fn(&[Int], &[Int]) -> Vec<Int>) -> CochainTable {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        assert_eq!(self.module.dim(), other.module.dim(), "module mismatch");
        let values = self.values.iter().zip(&other.values).map(|(a, b)| self.module.reduce(&f(a, b))).collect();
        CochainTable { degree: self.degree, module: self.module.clone(), values }
    }

    pub fn add(&self, other: &CochainTable) -> CochainTable {
        self.zip_with(other, crate::linalg::vec_add)
    }

    pub fn sub(&self, other: &CochainTable) -> CochainTable {
        self.zip_with(other, crate::linalg::vec_sub)
    }

    pub fn neg(&self) -> CochainTable {
        let values = self.values.iter().map(|v| self.module.neg(v)).collect();
        CochainTable { degree: self.degree, module: self.module.clone(), values }
    }

    pub fn scale(&self, s: &Int) -> CochainTable {
        let values = self.values.iter().map(|v| self.module.scale(v, s)).collect();
        CochainTable { degree: self.degree, module: self.module.clone(), values }
    }

    /// Inhomogeneous bar differential.
    pub fn differential(&self) -> CochainTable {
        let n = self.degree;
        let g = Arc::clone(self.group());
        let m = &self.module;
        CochainTable::normalized_from_fn(m, n + 1, |t| {
            let mut acc = m.act(t[0], self.get(&t[1..]));
            for i in 0..n {
                let mut s: Vec<usize> = Vec::with_capacity(n);
                s.extend_from_slice(&t[..i]);
                s.push(g.mul(t[i], t[i + 1]));
                s.extend_from_slice(&t[i + 2..]);
                let v = self.get(&s);
                if i % 2 == 0 {
                    acc = m.sub(&acc, v);
                } else {
                    acc = m.add(&acc, v);
                }
            }
            let last = self.get(&t[..n]);
            if n % 2 == 0 {
                m.sub(&acc, last)
            } else {
                m.add(&acc, last)
            }
        })
    }

    pub fn is_cocycle(&self) -> bool {
        self.first_cocycle_failure().is_none()
    }

    pub fn first_cocycle_failure(&self) -> Option<Vec<usize>> {
        let d = self.differential();
        let order = self.group().order();
        d.values.iter().position(|v| !self.module.is_zero(v)).map(|i| index_tuple(order, self.degree + 1, i))
    }

    /// Restriction to a subgroup; the result lives over the subgroup as a group.
    pub fn restrict(&self, sub: &Subgroup) -> CochainTable {
        let module = self.module.restrict(sub);
        let emb = sub.elements().to_vec();
        CochainTable::from_fn(&module, self.degree, |t| {
            let args: Vec<usize> = t.iter().map(|&i| emb[i]).collect();
            self.get(&args).to_vec()
        })
        .expect("restriction of a normalized cochain is normalized")
    }

    /// Push values forward along a module map.
    pub fn push(&self, f: &GModuleMap) -> CochainTable {
        let values = self.values.iter().map(|v| f.apply(v)).collect();
        CochainTable { degree: self.degree, module: f.target().clone(), values }
    }

    /// Same values viewed in another module with identical coordinates.
    pub fn with_module(&self, module: &GModule) -> CochainTable {
        assert_eq!(module.dim(), self.module.dim());
        let values = self.values.iter().map(|v| module.reduce(v)).collect();
        CochainTable { degree: self.degree, module: module.clone(), values }
    }

    /// Coordinates on the normalized basis (non-identity tuples in index order).
    pub fn to_vector(&self) -> Vec<Int> {
        let g = self.group();
        let q = nonidentity(g);
        let mut out = Vec::with_capacity(q.len().pow(self.degree as u32) * self.module.dim());
        for t in tuples(&q, self.degree) {
            out.extend(self.get(&t).iter().cloned());
        }
        out
    }

    pub fn from_vector(module: &GModule, degree: usize, v: &[Int]) -> CochainTable {
        let g = module.group();
        let q = nonidentity(g);
        let r = module.dim();
        let mut c = CochainTable::zero(module, degree);
        for (k, t) in tuples(&q, degree).into_iter().enumerate() {
            let idx = tuple_index(g.order(), &t);
            c.values[idx] = module.reduce(&v[k * r..(k + 1) * r]);
        }
        c
    }
}

fn nonidentity(g: &FiniteGroup) -> Vec<usize> {
    g.elements().filter(|&x| x != g.identity()).collect()
}

fn tuples(q: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * q.len());
        for t in &out {
            for &x in q {
                let mut s = t.clone();
                s.push(x);
                next.push(s);
            }
        }
        out = next;
    }
    out
}

/// Matrix of the bar differential `Cⁿ → Cⁿ⁺¹` on normalized coordinates.
pub fn coboundary_matrix(m: &GModule, n: usize) -> Matrix {
    let g = m.group();
    let q = nonidentity(g);
    let r = m.dim();
    let qn = q.len();
    let pos: Vec<Option<usize>> = g.elements().map(|x| q.iter().position(|&y| y == x)).collect();
    let in_index = |t: &[usize]| -> Option<usize> {
        let mut idx = 0;
        for &x in t {
            idx = idx * qn + pos[x]?;
        }
        Some(idx)
    };
    let rows = qn.pow(n as u32 + 1) * r;
    let cols = qn.pow(n as u32) * r;
    let mut d = Matrix::zeros(rows, cols);
    for (oi, t) in tuples(&q, n + 1).into_iter().enumerate() {
        let add_block = |d: &mut Matrix, src: &[usize], blk: Option<&Matrix>, sign: i64| {
            if let Some(ii) = in_index(src) {
                for a in 0..r {
                    for b in 0..r {
                        let v = match blk {
                            Some(bm) => bm[(a, b)].clone(),
                            None => {
                                if a == b {
                                    Int::one()
                                } else {
                                    Int::zero()
                                }
                            }
                        };
                        if !v.is_zero() {
                            d[(oi * r + a, ii * r + b)] += v * Int::from(sign);
                        }
                    }
                }
            }
        };
        add_block(&mut d, &t[1..], Some(m.action(t[0])), 1);
        for i in 0..n {
            let mut s: Vec<usize> = Vec::with_capacity(n);
            s.extend_from_slice(&t[..i]);
            s.push(g.mul(t[i], t[i + 1]));
            s.extend_from_slice(&t[i + 2..]);
            let sign = if i % 2 == 0 { -1 } else { 1 };
            add_block(&mut d, &s, None, sign);
        }
        let sign = if n % 2 == 0 { -1 } else { 1 };
        add_block(&mut d, &t[..n], None, sign);
    }
    d
}

/// Relation lattice of the cochain module in degree `n`.
fn cochain_relations(m: &GModule, n: usize) -> Matrix {
    let q = m.group().order() - 1;
    let rel = m.relation_matrix();
    let blocks: Vec<&Matrix> = std::iter::repeat(&rel).take(q.pow(n as u32)).collect();
    if blocks.is_empty() {
        return Matrix::zeros(0, 0);
    }
    Matrix::block_diag(&blocks)
}

/// `Ĥⁿ(G, M)` with generator representatives and a class-membership solver.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: i32,
    module: GModule,
    sq: Subquotient,
    reps: Vec<CochainTable>,
}

impl CohomologyGroup {
    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    /// Invariant factors (trivial ones dropped).
    pub fn invariant_factors(&self) -> Vec<Int> {
        self.sq.factors()
    }

    pub fn order(&self) -> Option<Int> {
        self.sq.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.sq.factors().is_empty()
    }

    /// Representative cocycles of the generators (degree-0 tables for n ≤ 0).
    pub fn representatives(&self) -> &[CochainTable] {
        &self.reps
    }

    fn vector_of(&self, c: &CochainTable) -> Result<Vec<Int>, TateError> {
        let want = if self.degree <= 0 { 0 } else { self.degree as usize };
        if c.degree() != want {
            return Err(TateError::BadDegree(c.degree()));
        }
        if c.module().dim() != self.module.dim() {
            return Err(TateError::ModuleMismatch);
        }
        Ok(c.to_vector())
    }

    /// Coordinates of the class of a cocycle (or of an element, for n ≤ 0).
    pub fn class_of(&self, c: &CochainTable) -> Result<Vec<Int>, TateError> {
        let v = self.vector_of(c)?;
        match self.sq.coords(&v) {
            Some(x) => Ok(x),
            None => {
                if self.degree >= 1 {
                    Err(TateError::NotACocycle(c.first_cocycle_failure().unwrap_or_default()))
                } else if self.degree == -1 {
                    Err(TateError::NotInKernelOfLocalNorm)
                } else {
                    Err(TateError::NotInvariant(
                        self.module
                            .group()
                            .elements()
                            .find(|&g| !self.module.eq_elements(&self.module.act(g, &v), &v))
                            .unwrap_or(0),
                    ))
                }
            }
        }
    }

    pub fn class_of_element(&self, m: &[Int]) -> Result<Vec<Int>, TateError> {
        self.class_of(&CochainTable::constant(&self.module, m))
    }

    pub fn is_zero_class(&self, coords: &[Int]) -> bool {
        coords.iter().all(Zero::is_zero)
    }

    /// A representative of the class with the given coordinates.
    pub fn representative_of(&self, coords: &[Int]) -> CochainTable {
        let v = self.sq.lift(coords);
        let deg = if self.degree <= 0 { 0 } else { self.degree as usize };
        CochainTable::from_vector(&self.module, deg, &v)
    }

    /// Order of a class.
    pub fn class_order(&self, coords: &[Int]) -> Option<Int> {
        use num_integer::Integer;
        let mut o = Int::one();
        for (c, d) in coords.iter().zip(self.sq.factors()) {
            if d.is_zero() {
                if !c.is_zero() {
                    return None;
                }
                continue;
            }
            let oc = &d / c.gcd(&d);
            o = o.lcm(&oc);
        }
        Some(o)
    }

    /// `#{x : k·x = 0}`, the isomorphism-type fingerprint used by the oracle tests.
    pub fn count_killed_by(&self, k: &Int) -> Option<Int> {
        use num_integer::Integer;
        let mut c = Int::one();
        for d in self.sq.factors() {
            if d.is_zero() {
                return None;
            }
            c *= k.gcd(&d);
        }
        Some(c)
    }
}

/// `Ĥⁿ(G, M)` for `n ∈ {−1, 0, 1, 2}`.
pub fn tate_h(m: &GModule, n: i32) -> Result<CohomologyGroup, TateError> {
    let g = Arc::clone(m.group());
    let r = m.dim();
    let rel = m.relation_matrix();
    let (k_gens, b_gens, ambient) = match n {
        -1 => {
            let norm = m.norm_matrix(&g.whole());
            let k = LatticeSolver::new(&norm.hstack(&rel)).kernel().select_rows(0..r);
            let mut b = rel.clone();
            for x in g.elements() {
                b = b.hstack(&m.action(x).sub(&Matrix::identity(r)));
            }
            (k.hstack(&rel), b, r)
        }
        0 => {
            let mut stacked = Matrix::zeros(0, r);
            let mut rels = Matrix::zeros(0, 0);
            for x in g.elements() {
                stacked = stacked.vstack(&m.action(x).sub(&Matrix::identity(r)));
                rels = Matrix::block_diag(&[&rels, &rel]);
            }
            let k = LatticeSolver::new(&stacked.hstack(&rels)).kernel().select_rows(0..r);
            let b = m.norm_matrix(&g.whole()).hstack(&rel);
            (k.hstack(&rel), b, r)
        }
        1 | 2 => {
            let nn = n as usize;
            let dn = coboundary_matrix(m, nn);
            let rn = cochain_relations(m, nn);
            let rn1 = cochain_relations(m, nn + 1);
            let amb = dn.cols();
            let k = if dn.rows() == 0 {
                Matrix::identity(amb)
            } else {
                LatticeSolver::new(&dn.hstack(&rn1)).kernel().select_rows(0..amb)
            };
            let dprev = coboundary_matrix(m, nn - 1);
            let b = dprev.hstack(&rn);
            let k = if rn.cols() > 0 { k.hstack(&rn) } else { k };
            (k, b, amb)
        }
        _ => return Err(TateError::UnsupportedDegree(n)),
    };
    let k_gens = if k_gens.rows() == 0 { Matrix::zeros(ambient, 0) } else { k_gens };
    let b_gens = if b_gens.rows() == 0 { Matrix::zeros(ambient, 0) } else { b_gens };
    let sq = Subquotient::new(ambient, &k_gens, &b_gens).expect("coboundaries are cocycles");
    let deg = if n <= 0 { 0 } else { n as usize };
    let reps = sq.representatives().iter().map(|v| CochainTable::from_vector(m, deg, v)).collect();
    Ok(CohomologyGroup { degree: n, module: m.clone(), sq, reps })
}

/// A witness `b` with `d b = c`, or `None` when `c` is not a coboundary.
pub fn is_coboundary(c: &CochainTable) -> Result<Option<CochainTable>, TateError> {
    let n = c.degree();
    if n == 0 || n > 3 {
        return Err(TateError::BadDegree(n));
    }
    if let Some(t) = c.first_cocycle_failure() {
        if n < 3 {
            return Err(TateError::NotACocycle(t));
        }
    }
    let m = c.module();
    let d = coboundary_matrix(m, n - 1);
    let rel = cochain_relations(m, n);
    let a = if rel.cols() > 0 { d.hstack(&rel) } else { d.clone() };
    let v = c.to_vector();
    if a.rows() == 0 {
        return Ok(Some(CochainTable::zero(m, n - 1)));
    }
    match LatticeSolver::new(&a).solve(&v) {
        Some(x) => {
            let b = CochainTable::from_vector(m, n - 1, &x[..d.cols()]);
            debug_assert!(b.differential().sub(c).is_zero());
            Ok(Some(b))
        }
        None => Ok(None),
    }
}

/// A restricted class: the cocycle over the subgroup and its coordinates.
#[derive(Clone, Debug)]
pub struct RestrictedClass {
    pub cohomology: CohomologyGroup,
    pub representative: CochainTable,
    pub coords: Vec<Int>,
}

/// Restrict a cocycle (or, in degree 0, an invariant element) to `H`.
pub fn restriction(c: &CochainTable, h: &Subgroup) -> Result<RestrictedClass, TateError> {
    let n = c.degree();
    if n > 2 {
        return Err(TateError::BadDegree(n));
    }
    let rep = c.restrict(h);
    let cohomology = tate_h(rep.module(), n as i32)?;
    let coords = cohomology.class_of(&rep)?;
    Ok(RestrictedClass { cohomology, representative: rep, coords })
}

/// Class in `Ĥ⁻¹(G, M)` of an element killed by the norm of `G_v`.
pub fn local_to_global_hminus1(m: &GModule, gv: &Subgroup, lambda: &[Int]) -> Result<Vec<Int>, TateError> {
    if !m.is_zero(&m.norm_over(gv, lambda)) {
        return Err(TateError::NotInKernelOfLocalNorm);
    }
    let global = tate_h(m, -1)?;
    global.class_of_element(lambda)
}

#[derive(Clone, Debug)]
pub struct HasseCheck {
    pub surjective: bool,
    /// coordinates in `Ĥ⁻¹(G, M)` of a class not hit, when surjectivity fails
    pub unhit: Option<Vec<Int>>,
    pub global_factors: Vec<Int>,
}

/// Is `⊕_v Ĥ⁻¹(G_v, M) → Ĥ⁻¹(G, M)` surjective?
pub fn hasse_surjectivity_check(m: &GModule, locals: &[Subgroup]) -> Result<HasseCheck, TateError> {
    let global = tate_h(m, -1)?;
    let factors = global.invariant_factors();
    let k = factors.len();
    let mut cols: Vec<Vec<Int>> = Vec::new();
    for gv in locals {
        let local = tate_h(&m.restrict(gv), -1)?;
        for rep in local.representatives() {
            let lambda = rep.get(&[]).to_vec();
            cols.push(local_to_global_hminus1(m, gv, &lambda)?);
        }
    }
    for (i, d) in factors.iter().enumerate() {
        let mut c = zero_vec(k);
        c[i] = d.clone();
        cols.push(c);
    }
    let span = Matrix::from_columns(k, &cols);
    let solver = LatticeSolver::new(&span);
    let unhit = (0..k).map(|i| crate::linalg::unit_vec(k, i)).find(|e| solver.solve(e).is_none());
    Ok(HasseCheck { surjective: unhit.is_none(), unhit, global_factors: factors })
}

/// `δ(x)`: the class of `g ↦ g·x̃ − x̃` in `H¹(G, M')` for an invariant `x ∈ M''`.
pub fn connecting_h0_h1(seq: &ShortExactSequence, x: &[Int]) -> Result<CochainTable, TateError> {
    let q = seq.quotient();
    let g = Arc::clone(q.group());
    for s in g.elements() {
        if !q.eq_elements(&q.act(s, x), x) {
            return Err(TateError::NotInvariant(s));
        }
    }
    let lift = seq.p.preimage(x).expect("quotient map is surjective");
    let mid = seq.middle();
    let sub = seq.sub();
    Ok(CochainTable::normalized_from_fn(sub, 1, |t| {
        let diff = mid.sub(&mid.act(t[0], &lift), &lift);
        seq.i.preimage(&diff).expect("difference lies in the kernel")
    }))
}

/// Subgroup of a cohomology group, given by generator coordinates.
#[derive(Clone, Debug)]
pub struct ClassSubgroup {
    pub ambient: CohomologyGroup,
    pub factors: Vec<Int>,
    pub generators: Vec<Vec<Int>>,
}

impl ClassSubgroup {
    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn representatives(&self) -> Vec<CochainTable> {
        self.generators.iter().map(|c| self.ambient.representative_of(c)).collect()
    }

    pub fn contains(&self, coords: &[Int]) -> bool {
        let k = coords.len();
        let mut cols = self.generators.clone();
        for (i, d) in self.ambient.invariant_factors().iter().enumerate() {
            let mut c = zero_vec(k);
            c[i] = d.clone();
            cols.push(c);
        }
        LatticeSolver::new(&Matrix::from_columns(k, &cols)).solve(coords).is_some()
    }
}

/// `ker(H¹(G, M) → ∏_v H¹(G_v, M))`.
pub fn h1_localization_kernel(m: &GModule, locals: &[Subgroup]) -> Result<ClassSubgroup, TateError> {
    let global = tate_h(m, 1)?;
    let gf = global.invariant_factors();
    let k = gf.len();
    // Rows: concatenated local coordinates; relation columns for local factors.
    let mut images: Vec<Vec<Int>> = vec![Vec::new(); k];
    let mut local_rel: Vec<Int> = Vec::new();
    for gv in locals {
        let lh = tate_h(&m.restrict(gv), 1)?;
        local_rel.extend(lh.invariant_factors());
        for (i, rep) in global.representatives().iter().enumerate() {
            images[i].extend(lh.class_of(&rep.restrict(gv))?);
        }
    }
    let l = local_rel.len();
    let phi = Matrix::from_columns(l, &images);
    let rel_cols: Vec<Vec<Int>> = local_rel
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let mut c = zero_vec(l);
            c[i] = d.clone();
            c
        })
        .collect();
    let big = phi.hstack(&Matrix::from_columns(l, &rel_cols));
    let kernel = if l == 0 {
        Matrix::identity(k)
    } else {
        LatticeSolver::new(&big).kernel().select_rows(0..k)
    };
    let ambient_rel: Vec<Vec<Int>> = gf
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let mut c = zero_vec(k);
            c[i] = d.clone();
            c
        })
        .collect();
    let rel_m = Matrix::from_columns(k, &ambient_rel);
    let sq = Subquotient::new(k, &kernel.hstack(&rel_m), &rel_m).expect("relations lie in the kernel");
    let generators = sq.representatives().iter().map(|v| global_reduce(&gf, v)).collect();
    Ok(ClassSubgroup { ambient: global, factors: sq.factors(), generators })
}

fn global_reduce(factors: &[Int], v: &[Int]) -> Vec<Int> {
    v.iter().zip(factors).map(|(x, d)| crate::linalg::reduce(x, d)).collect()
}

/// Smallest positive multiple of a cocycle class that is a coboundary (the class order).
pub fn cocycle_class_order(c: &CochainTable) -> Result<Option<Int>, TateError> {
    let h = tate_h(c.module(), c.degree() as i32)?;
    let coords = h.class_of(c)?;
    Ok(h.class_order(&coords))
}

/// Rank of the bar differential, exposed for diagnostics.
pub fn differential_rank(m: &GModule, n: usize) -> usize {
    smith(&coboundary_matrix(m, n)).rank
}

/// Sum of two class coordinate vectors, reduced.
pub fn add_classes(h: &CohomologyGroup, a: &[Int], b: &[Int]) -> Vec<Int> {
    global_reduce(&h.invariant_factors(), &vec_add(a, b))
}

/// The CM Grunwald–Wang module over `(Z/2)³ = ⟨ι⟩ × V₄`: `M` is `Z/4`-valued
/// functions on `V₄` with `ι` acting as `−1`, and `V ⊂ M` is generated by the
/// even-sign vectors and `(1, 3, 3, 3)`. Group elements are bitmasks with
/// bit 0 for `ι`; `V₄` elements are the remaining two bits.
#[derive(Clone, Debug)]
pub struct GrunwaldWang {
    pub group: Arc<FiniteGroup>,
    pub seq: ShortExactSequence,
    /// the class `y` of `(0, 2, 2, 2)` in `M/V`
    pub y: Vec<Int>,
    pub global_class: CochainTable,
    /// per nontrivial `σ`, a `σ`-invariant lift of `y` to `M`
    pub local_lifts: Vec<(usize, Vec<Int>)>,
}

fn gw_lift(sigma: usize) -> [i64; 4] {
    let rho = sigma >> 1;
    match (sigma & 1, rho) {
        (1, 0) => [0, 2, 2, 2],
        (0, _) => [1, 1, 1, 1],
        _ => {
            let tau = (1..4).find(|&t| t != rho).expect("V4 has three nontrivial elements");
            let mut z = [3; 4];
            z[0] = 1;
            z[tau] = 1;
            z
        }
    }
}

pub fn grunwald_wang() -> GrunwaldWang {
    let group = FiniteGroup::elementary_abelian_2(3);
    let four = Int::from(4);
    let action = group
        .elements()
        .map(|s| {
            let sign = if s & 1 == 1 { -1 } else { 1 };
            let rho = s >> 1;
            let mut a = Matrix::zeros(4, 4);
            // (σf)(x) = ±f(x + ρ)
            for x in 0..4 {
                a[(x, x ^ rho)] = Int::from(sign);
            }
            a
        })
        .collect();
    let m = GModule::new(Arc::clone(&group), vec![four; 4], action).expect("induced module");
    let vgens = Matrix::from_columns(
        4,
        &[crate::linalg::ints(&[2, 2, 0, 0]), crate::linalg::ints(&[2, 0, 2, 0]), crate::linalg::ints(&[1, 3, 3, 3])],
    );
    let (v, incl) = m.subquotient(&vgens, &Matrix::zeros(4, 0));
    let (quot, _) = m.subquotient(&Matrix::identity(4), &vgens);
    let rel = m.relation_matrix();
    let sq = Subquotient::new(4, &Matrix::identity(4).hstack(&rel), &vgens.hstack(&rel)).expect("V inside M");
    let proj_cols: Vec<Vec<Int>> =
        (0..4).map(|i| sq.coords(&crate::linalg::unit_vec(4, i)).expect("M surjects")).collect();
    let i = GModuleMap::new(v, m.clone(), incl).expect("inclusion is equivariant");
    let p = GModuleMap::new(m.clone(), quot, Matrix::from_columns(proj_cols[0].len(), &proj_cols))
        .expect("projection is equivariant");
    let seq = ShortExactSequence::new(i, p).expect("0 → V → M → M/V → 0");
    let y = seq.p.apply(&m.element(&[0, 2, 2, 2]));
    let global_class = connecting_h0_h1(&seq, &y).expect("y is invariant");
    let local_lifts = (1..8).map(|s| (s, m.element(&gw_lift(s)))).collect();
    GrunwaldWang { group, seq, y, global_class, local_lifts }
}

/// Outcome of the Grunwald–Wang checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrunwaldWangReport {
    pub global_class_nonzero: bool,
    pub global_class_order: Option<Int>,
    /// restriction to `⟨σ⟩` vanishes, for the seven `σ ≠ 1`
    pub local_zero: Vec<(usize, bool)>,
    /// each listed lift is `σ`-invariant and maps to `y`
    pub lifts_valid: bool,
    pub kernel_factors: Vec<Int>,
    pub class_in_kernel: bool,
}

impl GrunwaldWangReport {
    pub fn all_pass(&self) -> bool {
        self.global_class_nonzero
            && self.local_zero.iter().all(|(_, z)| *z)
            && self.lifts_valid
            && !self.kernel_factors.is_empty()
            && self.class_in_kernel
    }
}

pub fn grunwald_wang_report(gw: &GrunwaldWang) -> Result<GrunwaldWangReport, TateError> {
    let v = gw.seq.sub();
    let mid = gw.seq.middle();
    let quot = gw.seq.quotient();
    let h1 = tate_h(v, 1)?;
    let coords = h1.class_of(&gw.global_class)?;
    let locals: Vec<Subgroup> = (1..8).map(|s| gw.group.generated(&[s])).collect();
    let local_zero = locals
        .iter()
        .zip(1..8)
        .map(|(h, s)| {
            let r = restriction(&gw.global_class, h)?;
            Ok((s, r.cohomology.is_zero_class(&r.coords)))
        })
        .collect::<Result<Vec<_>, TateError>>()?;
    let lifts_valid = gw.local_lifts.iter().all(|(s, z)| {
        mid.eq_elements(&mid.act(*s, z), z) && quot.eq_elements(&gw.seq.p.apply(z), &gw.y)
    });
    let kernel = h1_localization_kernel(v, &locals)?;
    Ok(GrunwaldWangReport {
        global_class_nonzero: !h1.is_zero_class(&coords),
        global_class_order: h1.class_order(&coords),
        local_zero,
        lifts_valid,
        class_in_kernel: kernel.contains(&coords),
        kernel_factors: kernel.factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, ints};

    fn fundamental(n: usize) -> CochainTable {
        let g = FiniteGroup::cyclic(n);
        let z = GModule::trivial_z(g);
        CochainTable::normalized_from_fn(&z, 2, |t| if t[0] + t[1] >= n { ints(&[-1]) } else { ints(&[0]) })
    }

    #[test]
    fn differential_examples() {
        let g = FiniteGroup::cyclic(2);
        let z = GModule::trivial_z(Arc::clone(&g));
        assert!(CochainTable::zero(&z, 1).differential().is_zero());
        let sign = GModule::sign(Arc::clone(&g), &[1, -1]).unwrap();
        let b = CochainTable::normalized_from_fn(&sign, 1, |_| ints(&[5]));
        let db = b.differential();
        // g·b(h) − b(gh) + b(g) at (ι,ι): −5 − 0 + 5
        assert_eq!(db.get(&[1, 1]), &ints(&[0])[..]);
        for n in 1..6 {
            assert!(fundamental(n).is_cocycle());
        }
    }

    #[test]
    fn small_cohomology_groups() {
        let g = FiniteGroup::cyclic(2);
        let z = GModule::trivial_z(Arc::clone(&g));
        assert_eq!(tate_h(&z, 0).unwrap().invariant_factors(), ints(&[2]));
        let sign = GModule::sign(Arc::clone(&g), &[1, -1]).unwrap();
        assert_eq!(tate_h(&sign, -1).unwrap().invariant_factors(), ints(&[2]));
        for n in 1..=5 {
            let c = fundamental(n);
            let h = tate_h(c.module(), 2).unwrap();
            if n == 1 {
                assert!(h.is_trivial());
            } else {
                assert_eq!(h.invariant_factors(), vec![int(n as i64)]);
            }
            assert_eq!(cocycle_class_order(&c).unwrap(), Some(int(n as i64)));
        }
        assert_eq!(tate_h(&z, 3).unwrap_err(), TateError::UnsupportedDegree(3));
    }

    #[test]
    fn coboundary_solver() {
        let g = FiniteGroup::cyclic(4);
        let m = GModule::regular(Arc::clone(&g));
        let b = CochainTable::normalized_from_fn(&m, 1, |t| ints(&[t[0] as i64, -1, 2, 0]));
        let db = b.differential();
        let w = is_coboundary(&db).unwrap().expect("coboundary");
        assert_eq!(w.differential(), db);
        assert!(is_coboundary(&fundamental(2)).unwrap().is_none());
        let z = GModule::trivial_z(FiniteGroup::cyclic(2));
        assert!(is_coboundary(&CochainTable::zero(&z, 2)).unwrap().unwrap().is_zero());
        let z3 = GModule::trivial_z(FiniteGroup::cyclic(3));
        let bad = CochainTable::normalized_from_fn(&z3, 2, |t| ints(&[(t[0] * t[1]) as i64]));
        assert!(matches!(is_coboundary(&bad), Err(TateError::NotACocycle(_))));
    }

    #[test]
    fn restriction_examples() {
        let g = FiniteGroup::cyclic(4);
        let z = GModule::trivial_z(Arc::clone(&g));
        let h2 = tate_h(&z, 2).unwrap();
        let gen = &h2.representatives()[0];
        let sub = g.generated(&[2]);
        let r = restriction(gen, &sub).unwrap();
        assert_eq!(r.cohomology.invariant_factors(), ints(&[2]));
        assert_eq!(r.coords, ints(&[1]));
        let h1 = tate_h(&GModule::regular(Arc::clone(&g)), 1).unwrap();
        assert!(h1.is_trivial());
        let r = restriction(&fundamental(4), &g.trivial_subgroup()).unwrap();
        assert!(r.cohomology.is_trivial());
    }

    #[test]
    fn hminus1_local_to_global() {
        let g = FiniteGroup::cyclic(2);
        let sign = GModule::sign(Arc::clone(&g), &[1, -1]).unwrap();
        let c = local_to_global_hminus1(&sign, &g.whole(), &ints(&[1])).unwrap();
        assert_eq!(c, ints(&[1]));
        assert_eq!(local_to_global_hminus1(&sign, &g.whole(), &ints(&[0])).unwrap(), ints(&[0]));
        let z = GModule::trivial_z(Arc::clone(&g));
        assert_eq!(
            local_to_global_hminus1(&z, &g.whole(), &ints(&[1])).unwrap_err(),
            TateError::NotInKernelOfLocalNorm
        );
        let h = hasse_surjectivity_check(&sign, &[g.trivial_subgroup()]).unwrap();
        assert!(!h.surjective);
        assert_eq!(h.unhit, Some(ints(&[1])));
        assert!(hasse_surjectivity_check(&sign, &[g.whole()]).unwrap().surjective);
    }

    #[test]
    fn localization_kernel_trivial_cases() {
        let g = FiniteGroup::elementary_abelian_2(2);
        let m = GModule::trivial(Arc::clone(&g), ints(&[2, 4]));
        assert!(h1_localization_kernel(&m, &[g.whole()]).unwrap().is_trivial());
        assert!(h1_localization_kernel(&m, &g.cyclic_subgroups()).unwrap().is_trivial());
        let all = h1_localization_kernel(&m, &[]).unwrap();
        assert_eq!(all.factors, all.ambient.invariant_factors());
    }

    #[test]
    fn grunwald_wang_class() {
        let gw = grunwald_wang();
        assert_eq!(gw.seq.sub().size(), Some(int(16)));
        let r = grunwald_wang_report(&gw).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.global_class_order, Some(int(2)));
    }
}
