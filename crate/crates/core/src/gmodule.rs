//! Finitely generated abelian groups with a finite-group action.
//!
//! A module is `⊕ Z/dᵢ` (a factor 0 is a free summand) together with one
//! integer matrix per group element acting on coordinates.  Elements are
//! coordinate vectors kept reduced modulo the factors.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::groups::{left_coset_reps, CosetReps, FiniteGroup, GroupError, Subgroup};
use crate::linalg::{image_basis, int, reduce, smith, zero_vec, Int, LatticeSolver, Matrix, Subquotient};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("action matrix for element {0} has the wrong shape")]
    BadShape(usize),
    #[error("action of the identity is not the identity")]
    IdentityActsNontrivially,
    #[error("action is not multiplicative at ({0}, {1})")]
    NotMultiplicative(usize, usize),
    #[error("matrix for element {0} does not preserve the relation lattice")]
    RelationsNotPreserved(usize),
    #[error("action not well defined: relation {relation} is not mapped into the relations by element {element}")]
    ActionNotWellDefined { relation: usize, element: usize },
    #[error("map does not send relations to relations (source coordinate {0})")]
    MapNotWellDefined(usize),
    #[error("map is not equivariant at group element {0}")]
    NotEquivariant(usize),
    #[error("modules live over different groups")]
    GroupMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A finitely generated abelian group with an action of `group`.
#[derive(Clone, Debug)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    factors: Vec<Int>,
    action: Vec<Matrix>,
}

impl PartialEq for GModule {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group && self.factors == other.factors && self.action == other.action
    }
}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GModule {
    /// Validate and build. Action matrices are reduced modulo the factors.
    pub fn new(group: Arc<FiniteGroup>, factors: Vec<Int>, action: Vec<Matrix>) -> Result<GModule, ModuleError> {
        let n = factors.len();
        if action.len() != group.order() {
            return Err(ModuleError::Dimension(format!(
                "{} action matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        for (g, a) in action.iter().enumerate() {
            if a.rows() != n || a.cols() != n {
                return Err(ModuleError::BadShape(g));
            }
        }
        let mut m = GModule { group, factors, action };
        for g in 0..m.action.len() {
            let a = m.reduce_matrix(&m.action[g]);
            m.action[g] = a;
        }
        // well-defined on the torsion: column j times d_j must vanish.
        for g in m.group.elements() {
            for j in 0..n {
                let d = &m.factors[j];
                if d.is_zero() {
                    continue;
                }
                let col: Vec<Int> = m.action[g].column(j).into_iter().map(|x| x * d).collect();
                if !m.is_zero(&col) {
                    return Err(ModuleError::RelationsNotPreserved(g));
                }
            }
        }
        let e = m.group.identity();
        if m.action[e] != m.reduce_matrix(&Matrix::identity(n)) {
            return Err(ModuleError::IdentityActsNontrivially);
        }
        for g in m.group.elements() {
            for h in m.group.elements() {
                let lhs = m.reduce_matrix(&m.action[g].mul(&m.action[h]));
                if lhs != m.action[m.group.mul(g, h)] {
                    return Err(ModuleError::NotMultiplicative(g, h));
                }
            }
        }
        Ok(m)
    }

    /// `Z^rank` with the given action matrices.
    pub fn free(group: Arc<FiniteGroup>, rank: usize, action: Vec<Matrix>) -> Result<GModule, ModuleError> {
        GModule::new(group, vec![Int::zero(); rank], action)
    }

    /// Trivial action on `⊕ Z/dᵢ`.
    pub fn trivial(group: Arc<FiniteGroup>, factors: Vec<Int>) -> GModule {
        let n = factors.len();
        let action = vec![Matrix::identity(n); group.order()];
        GModule::new(group, factors, action).expect("trivial action is valid")
    }

    pub fn trivial_z(group: Arc<FiniteGroup>) -> GModule {
        Self::trivial(group, vec![Int::zero()])
    }

    pub fn zero(group: Arc<FiniteGroup>) -> GModule {
        Self::trivial(group, vec![])
    }

    /// Z with a character `G → {±1}` given by its values.
    pub fn sign(group: Arc<FiniteGroup>, signs: &[i64]) -> Result<GModule, ModuleError> {
        let action = signs.iter().map(|&s| Matrix::from_i64(&[&[s]])).collect();
        GModule::free(group, 1, action)
    }

    /// Z[G] with left translation.
    pub fn regular(group: Arc<FiniteGroup>) -> GModule {
        let n = group.order();
        let action = group
            .elements()
            .map(|g| {
                let mut a = Matrix::zeros(n, n);
                for x in group.elements() {
                    a[(group.mul(g, x), x)] = Int::one();
                }
                a
            })
            .collect();
        GModule::free(group, n, action).expect("regular representation")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn factors(&self) -> &[Int] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn action(&self, g: usize) -> &Matrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn is_free(&self) -> bool {
        self.factors.iter().all(Zero::is_zero)
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|d| !d.is_zero())
    }

    /// Number of elements, `None` if infinite.
    pub fn size(&self) -> Option<Int> {
        if !self.is_finite() {
            return None;
        }
        Some(self.factors.iter().fold(Int::one(), |a, d| a * d))
    }

    pub fn zero_element(&self) -> Vec<Int> {
        zero_vec(self.dim())
    }

    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.dim(), "element has wrong length");
        v.iter().zip(&self.factors).map(|(x, d)| reduce(x, d)).collect()
    }

    pub fn reduce_matrix(&self, a: &Matrix) -> Matrix {
        let mut out = a.clone();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                out[(i, j)] = reduce(&a[(i, j)], &self.factors[i]);
            }
        }
        out
    }

    pub fn is_zero(&self, v: &[Int]) -> bool {
        v.iter().zip(&self.factors).all(|(x, d)| reduce(x, d).is_zero())
    }

    pub fn eq_elements(&self, a: &[Int], b: &[Int]) -> bool {
        self.reduce(a) == self.reduce(b)
    }

    pub fn act(&self, g: usize, v: &[Int]) -> Vec<Int> {
        self.reduce(&self.action[g].mul_vec(v))
    }

    pub fn add(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        self.reduce(&crate::linalg::vec_add(a, b))
    }

    pub fn sub(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        self.reduce(&crate::linalg::vec_sub(a, b))
    }

    pub fn neg(&self, a: &[Int]) -> Vec<Int> {
        self.reduce(&crate::linalg::vec_neg(a))
    }

    pub fn scale(&self, a: &[Int], s: &Int) -> Vec<Int> {
        self.reduce(&crate::linalg::vec_scale(a, s))
    }

    /// `Σ_{h ∈ S} h·v` over the elements of a subgroup.
    pub fn norm_over(&self, sub: &Subgroup, v: &[Int]) -> Vec<Int> {
        let mut acc = self.zero_element();
        for &h in sub.elements() {
            acc = crate::linalg::vec_add(&acc, &self.action[h].mul_vec(v));
        }
        self.reduce(&acc)
    }

    /// `Σ_{μ} μ·v` over a list of elements.
    pub fn sum_translates(&self, elems: &[usize], v: &[Int]) -> Vec<Int> {
        let mut acc = self.zero_element();
        for &h in elems {
            acc = crate::linalg::vec_add(&acc, &self.action[h].mul_vec(v));
        }
        self.reduce(&acc)
    }

    /// Matrix of the norm element of a subgroup.
    pub fn norm_matrix(&self, sub: &Subgroup) -> Matrix {
        let mut acc = Matrix::zeros(self.dim(), self.dim());
        for &h in sub.elements() {
            acc = acc.add(&self.action[h]);
        }
        acc
    }

    /// Columns `dᵢ eᵢ` for the torsion coordinates.
    pub fn relation_matrix(&self) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Int>> = self
            .factors
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut c = zero_vec(n);
                c[i] = d.clone();
                c
            })
            .collect();
        Matrix::from_columns(n, &cols)
    }

    /// All elements of a finite module (lexicographic order), `None` if
    /// infinite or larger than `limit`.
    pub fn elements(&self, limit: usize) -> Option<Vec<Vec<Int>>> {
        let size = self.size()?.to_usize()?;
        if size > limit {
            return None;
        }
        let dims: Vec<usize> = self.factors.iter().map(|d| d.to_usize().unwrap()).collect();
        let mut out = Vec::with_capacity(size);
        let mut cur = vec![0usize; dims.len()];
        for _ in 0..size {
            out.push(cur.iter().map(|&x| int(x as i64)).collect());
            for k in (0..dims.len()).rev() {
                cur[k] += 1;
                if cur[k] < dims[k] {
                    break;
                }
                cur[k] = 0;
            }
        }
        Some(out)
    }

    /// The same module viewed over a subgroup (as a group in its own right).
    pub fn restrict(&self, sub: &Subgroup) -> GModule {
        let (h, emb) = sub.to_group();
        let action = emb.iter().map(|&g| self.action[g].clone()).collect();
        GModule { group: h, factors: self.factors.clone(), action }
    }

    /// Pull back along a homomorphism `pi: G' → G` given as an element map.
    pub fn inflate(&self, gprime: &Arc<FiniteGroup>, pi: &[usize]) -> GModule {
        let action = gprime.elements().map(|g| self.action[pi[g]].clone()).collect();
        GModule { group: Arc::clone(gprime), factors: self.factors.clone(), action }
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule, ModuleError> {
        if !same_group(&self.group, &other.group) {
            return Err(ModuleError::GroupMismatch);
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        let action = self
            .group
            .elements()
            .map(|g| Matrix::block_diag(&[&self.action[g], &other.action[g]]))
            .collect();
        Ok(GModule { group: Arc::clone(&self.group), factors, action })
    }

    /// `self ⊗ X` for a free module `X`, diagonal action; coordinates `i·rank(X) + k`.
    pub fn tensor_free(&self, x: &GModule) -> Result<GModule, ModuleError> {
        if !same_group(&self.group, &x.group) {
            return Err(ModuleError::GroupMismatch);
        }
        if !x.is_free() {
            return Err(ModuleError::Dimension("second tensor factor must be free".into()));
        }
        let r = x.dim();
        let mut factors = Vec::with_capacity(self.dim() * r);
        for d in &self.factors {
            for _ in 0..r {
                factors.push(d.clone());
            }
        }
        let action = self.group.elements().map(|g| self.action[g].kron(&x.action[g])).collect();
        GModule::new(Arc::clone(&self.group), factors, action)
    }

    /// Invariant-factor normal form (via the presentation with these relations).
    pub fn normalize(&self) -> Presented {
        presented_module(&self.group, self.dim(), &self.relation_matrix(), &self.action)
            .expect("a valid module presents itself")
    }

    /// `K / B` for G-stable lattices `R ⊆ B ⊆ K ⊆ Z^dim` (given by generators,
    /// the relation lattice is added to both); returns the module and the
    /// matrix of representatives (columns, in these coordinates).
    pub fn subquotient(&self, k_gens: &Matrix, b_gens: &Matrix) -> (GModule, Matrix) {
        let n = self.dim();
        let rel = self.relation_matrix();
        let k = k_gens.hstack(&rel);
        let b = b_gens.hstack(&rel);
        let sq = Subquotient::new(n, &k, &b).expect("B inside K");
        let reps = sq.representatives().to_vec();
        let m = reps.len();
        let action = self
            .group
            .elements()
            .map(|g| {
                let cols: Vec<Vec<Int>> = reps
                    .iter()
                    .map(|r| sq.coords(&self.action[g].mul_vec(r)).expect("K is G-stable"))
                    .collect();
                Matrix::from_columns(m, &cols)
            })
            .collect();
        let module = GModule::new(Arc::clone(&self.group), sq.factors(), action).expect("subquotient action");
        (module, Matrix::from_columns(n, &reps))
    }

    /// Vector with the given coordinates in the torsion-free model used for lattices.
    pub fn element(&self, v: &[i64]) -> Vec<Int> {
        self.reduce(&crate::linalg::ints(v))
    }
}

/// An equivariant homomorphism of modules over the same group.
#[derive(Clone, Debug)]
pub struct GModuleMap {
    source: GModule,
    target: GModule,
    matrix: Matrix,
}

impl GModuleMap {
    pub fn new(source: GModule, target: GModule, matrix: Matrix) -> Result<GModuleMap, ModuleError> {
        if !same_group(&source.group, &target.group) {
            return Err(ModuleError::GroupMismatch);
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(ModuleError::Dimension(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let matrix = target.reduce_matrix(&matrix);
        for (j, d) in source.factors.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let col: Vec<Int> = matrix.column(j).into_iter().map(|x| x * d).collect();
            if !target.is_zero(&col) {
                return Err(ModuleError::MapNotWellDefined(j));
            }
        }
        for g in source.group.elements() {
            let lhs = target.reduce_matrix(&matrix.mul(&source.action[g]));
            let rhs = target.reduce_matrix(&target.action[g].mul(&matrix));
            if lhs != rhs {
                return Err(ModuleError::NotEquivariant(g));
            }
        }
        Ok(GModuleMap { source, target, matrix })
    }

    pub fn identity(m: &GModule) -> GModuleMap {
        GModuleMap { source: m.clone(), target: m.clone(), matrix: Matrix::identity(m.dim()) }
    }

    pub fn source(&self) -> &GModule {
        &self.source
    }

    pub fn target(&self) -> &GModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        self.target.reduce(&self.matrix.mul_vec(v))
    }

    pub fn compose(&self, after: &GModuleMap) -> Result<GModuleMap, ModuleError> {
        GModuleMap::new(self.source.clone(), after.target.clone(), after.matrix.mul(&self.matrix))
    }

    /// Lattice `{x : f(x) = 0}` in source coordinates (contains the source relations).
    pub fn kernel_lattice(&self) -> Matrix {
        let s = self.source.dim();
        let big = self.matrix.hstack(&self.target.relation_matrix());
        let k = LatticeSolver::new(&big).kernel();
        k.select_rows(0..s).hstack(&self.source.relation_matrix())
    }

    /// Lattice spanned by the image plus the target relations.
    pub fn image_lattice(&self) -> Matrix {
        self.matrix.hstack(&self.target.relation_matrix())
    }

    pub fn is_injective(&self) -> bool {
        let k = self.kernel_lattice();
        k.columns().iter().all(|c| self.source.is_zero(c))
    }

    pub fn is_surjective(&self) -> bool {
        let s = smith(&self.image_lattice());
        s.rank == self.target.dim() && s.diag[..s.rank].iter().all(One::is_one)
    }

    /// The kernel as a module, with its inclusion.
    pub fn kernel(&self) -> (GModule, Matrix) {
        self.source.subquotient(&self.kernel_lattice(), &Matrix::zeros(self.source.dim(), 0))
    }

    /// Some `x` with `f(x) = y`, if one exists.
    pub fn preimage(&self, y: &[Int]) -> Option<Vec<Int>> {
        let s = self.source.dim();
        let sol = LatticeSolver::new(&self.image_lattice()).solve(y)?;
        Some(self.source.reduce(&sol[..s]))
    }
}

/// A module presented by generators and relations, with the maps to and
/// from the free module on the generators.
#[derive(Clone, Debug)]
pub struct Presented {
    pub module: GModule,
    /// generators → module coordinates (`dim × n_generators`)
    pub projection: Matrix,
    /// module coordinates → a lift in generator coordinates (`n_generators × dim`)
    pub lift: Matrix,
}

impl Presented {
    pub fn project(&self, x: &[Int]) -> Vec<Int> {
        self.module.reduce(&self.projection.mul_vec(x))
    }

    pub fn lift_element(&self, y: &[Int]) -> Vec<Int> {
        self.lift.mul_vec(y)
    }
}

/// `Z^n / (relation columns)` with the action induced from the generators.
pub fn presented_module(
    group: &Arc<FiniteGroup>,
    generators: usize,
    relations: &Matrix,
    action_on_generators: &[Matrix],
) -> Result<Presented, ModuleError> {
    let n = generators;
    if relations.rows() != n {
        return Err(ModuleError::Dimension("relation columns must have one entry per generator".into()));
    }
    if action_on_generators.len() != group.order() {
        return Err(ModuleError::Dimension("one action matrix per group element required".into()));
    }
    let rel_solver = LatticeSolver::new(relations);
    for (g, a) in action_on_generators.iter().enumerate() {
        if a.rows() != n || a.cols() != n {
            return Err(ModuleError::BadShape(g));
        }
        for j in 0..relations.cols() {
            let img = a.mul_vec(&relations.column(j));
            if rel_solver.solve(&img).is_none() {
                return Err(ModuleError::ActionNotWellDefined { relation: j, element: g });
            }
        }
    }
    let s = rel_solver.smith();
    let mut all = vec![Int::zero(); n];
    for i in 0..s.rank {
        all[i] = s.diag[i].clone();
    }
    let kept: Vec<usize> = (0..n).filter(|&i| !all[i].is_one()).collect();
    let factors: Vec<Int> = kept.iter().map(|&i| all[i].clone()).collect();
    let mut proj = Matrix::zeros(kept.len(), n);
    let mut lift = Matrix::zeros(n, kept.len());
    for (r, &i) in kept.iter().enumerate() {
        for j in 0..n {
            proj[(r, j)] = s.u[(i, j)].clone();
            lift[(j, r)] = s.u_inv[(j, i)].clone();
        }
    }
    let action = action_on_generators.iter().map(|a| proj.mul(a).mul(&lift)).collect();
    let module = GModule::new(Arc::clone(group), factors, action)?;
    let projection = module.reduce_matrix(&proj);
    Ok(Presented { module, projection, lift })
}

/// `M^G` with its inclusion (columns are the generators in `M`-coordinates).
pub fn invariants_submodule(m: &GModule) -> (GModule, Matrix) {
    let n = m.dim();
    let mut stacked = Matrix::zeros(0, n);
    let mut rels = Matrix::zeros(0, 0);
    for g in m.group.elements() {
        stacked = stacked.vstack(&m.action[g].sub(&Matrix::identity(n)));
        rels = Matrix::block_diag(&[&rels, &m.relation_matrix()]);
    }
    let big = stacked.hstack(&rels);
    let k = LatticeSolver::new(&big).kernel().select_rows(0..n);
    m.subquotient(&k, &Matrix::zeros(n, 0))
}

/// `M_G = M / ⟨(g−1)m⟩` with its projection.
pub fn coinvariants(m: &GModule) -> Presented {
    let n = m.dim();
    let mut rels = m.relation_matrix();
    for g in m.group.elements() {
        rels = rels.hstack(&m.action[g].sub(&Matrix::identity(n)));
    }
    presented_module(&m.group, n, &rels, &m.action).expect("coinvariants presentation")
}

/// The torsion submodule with its inclusion.
///
/// In `⊕ Z/dᵢ` coordinates the torsion is spanned by the coordinates with
/// `dᵢ ≠ 0`; it is automatically stable under the action.
pub fn torsion_part(m: &GModule) -> (GModule, Matrix) {
    let n = m.dim();
    let gens: Vec<Vec<Int>> =
        (0..n).filter(|&i| !m.factors[i].is_zero()).map(|i| crate::linalg::unit_vec(n, i)).collect();
    m.subquotient(&Matrix::from_columns(n, &gens), &Matrix::zeros(n, 0))
}

/// `Ind_H^G M_H` with the given coset representatives; block `i` corresponds to `reps[i]`.
pub fn induced_module_with(reps: &CosetReps, m_h: &GModule) -> Result<GModule, ModuleError> {
    let sub = reps.subgroup();
    let g = Arc::clone(sub.parent());
    let (hg, _) = sub.to_group();
    if *hg != **m_h.group() {
        return Err(ModuleError::GroupMismatch);
    }
    let r = m_h.dim();
    let k = reps.len();
    let mut factors = Vec::with_capacity(r * k);
    for _ in 0..k {
        factors.extend(m_h.factors.iter().cloned());
    }
    let action = g
        .elements()
        .map(|x| {
            let mut a = Matrix::zeros(r * k, r * k);
            for (i, &rep) in reps.reps().iter().enumerate() {
                let (j, h) = reps.factor(g.mul(x, rep));
                let hl = sub.position(h).expect("factor lies in subgroup");
                let blk = m_h.action(hl);
                for p in 0..r {
                    for q in 0..r {
                        a[(j * r + p, i * r + q)] = blk[(p, q)].clone();
                    }
                }
            }
            a
        })
        .collect();
    GModule::new(g, factors, action)
}

pub fn induced_module(g: &Arc<FiniteGroup>, h: &Subgroup, m_h: &GModule) -> Result<GModule, ModuleError> {
    let reps = left_coset_reps(g, h)?;
    induced_module_with(&reps, m_h)
}

/// `0 → M' → M → M'' → 0`, exactness certified at construction.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub i: GModuleMap,
    pub p: GModuleMap,
}

impl ShortExactSequence {
    pub fn new(i: GModuleMap, p: GModuleMap) -> Result<Self, ModuleError> {
        if i.target().dim() != p.source().dim() || i.target().factors() != p.source().factors() {
            return Err(ModuleError::NotExact("middle modules differ".into()));
        }
        if !i.is_injective() {
            return Err(ModuleError::NotExact("first map is not injective".into()));
        }
        if !p.is_surjective() {
            return Err(ModuleError::NotExact("second map is not surjective".into()));
        }
        let mid = i.target();
        let ker = p.kernel_lattice();
        let img = i.image_lattice();
        let img_solver = LatticeSolver::new(&img);
        let ker_solver = LatticeSolver::new(&ker);
        for c in ker.columns() {
            if img_solver.solve(&c).is_none() {
                return Err(ModuleError::NotExact("kernel not contained in image".into()));
            }
        }
        for c in img.columns() {
            if ker_solver.solve(&c).is_none() {
                return Err(ModuleError::NotExact("image not contained in kernel".into()));
            }
        }
        let _ = mid;
        Ok(ShortExactSequence { i, p })
    }

    pub fn sub(&self) -> &GModule {
        self.i.source()
    }

    pub fn middle(&self) -> &GModule {
        self.i.target()
    }

    pub fn quotient(&self) -> &GModule {
        self.p.target()
    }

    /// Element-level exactness check for finite modules (all three of size ≤ `limit`).
    pub fn brute_force_exact(&self, limit: usize) -> Option<bool> {
        let a = self.sub().elements(limit)?;
        let b = self.middle().elements(limit)?;
        let c = self.quotient().elements(limit)?;
        let mut imgs: Vec<Vec<Int>> = a.iter().map(|x| self.i.apply(x)).collect();
        imgs.sort();
        let injective = imgs.windows(2).all(|w| w[0] != w[1]);
        let mut kernel: Vec<Vec<Int>> = b.iter().filter(|y| self.quotient().is_zero(&self.p.apply(y))).cloned().collect();
        kernel.sort();
        let mut pimgs: Vec<Vec<Int>> = b.iter().map(|y| self.p.apply(y)).collect();
        pimgs.sort();
        pimgs.dedup();
        Some(injective && kernel == imgs && pimgs.len() == c.len())
    }
}

/// Smallest positive integer killing every torsion factor (1 for free modules).
pub fn exponent(m: &GModule) -> Int {
    m.factors.iter().filter(|d| !d.is_zero()).fold(Int::one(), |a, d| a.lcm(d))
}

/// Lattice-basis saturation test: is the span of `cols` saturated in `Z^n`?
pub fn is_saturated(cols: &Matrix) -> bool {
    let s = smith(cols);
    s.diag[..s.rank].iter().all(|d| d.abs().is_one())
}

pub fn lattice_basis(cols: &Matrix) -> Matrix {
    image_basis(cols)
}
