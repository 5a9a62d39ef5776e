//! Cocharacter modules of Weil numbers for CM Galois data, the Serre lattice,
//! the maps `ψ_μ`, and transition maps along field towers.
//!
//! The stable lattice is built directly from its basis and relations; no
//! number field is ever touched.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::gmodule::{induced_module, presented_module, GModule, GModuleMap, ModuleError, ShortExactSequence};
use crate::groups::{is_central, left_coset_reps, CosetReps, FiniteGroup, GroupError, Subgroup};
use crate::linalg::{int, smith, unit_vec, vec_add, vec_scale, zero_vec, Int, LatticeSolver, Matrix};
use crate::tate::{tate_h, TateError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeilError {
    #[error("invalid CM datum: {0}")]
    InvalidDatum(String),
    #[error("invalid complex conjugation: {0}")]
    InvalidIota(String),
    #[error("dual of psi_mu is not surjective (cokernel factors {0:?})")]
    SurjectivityFailure(Vec<Int>),
    #[error("Serre condition fails for sigma = {0}")]
    SerreConditionViolated(usize),
    #[error("incompatible data: {0}")]
    IncompatibleData(String),
    #[error("only defined when iota is not in H")]
    CaseAOnly,
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Tate(#[from] TateError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `(G, ι, H)`: a Galois group, complex conjugation and the decomposition group at `p`.
#[derive(Clone, Debug)]
pub struct CMGaloisDatum {
    group: Arc<FiniteGroup>,
    iota: usize,
    h: Subgroup,
}

fn check_iota(g: &FiniteGroup, iota: usize) -> Result<(), String> {
    if iota >= g.order() {
        return Err(format!("element {iota} out of range"));
    }
    if iota == g.identity() || g.mul(iota, iota) != g.identity() {
        return Err(format!("element {iota} is not an involution"));
    }
    if !is_central(g, iota) {
        return Err(format!("element {iota} is not central"));
    }
    Ok(())
}

impl CMGaloisDatum {
    pub fn new(group: Arc<FiniteGroup>, iota: usize, h: Subgroup) -> Result<CMGaloisDatum, WeilError> {
        check_iota(&group, iota).map_err(WeilError::InvalidDatum)?;
        if **h.parent() != *group {
            return Err(WeilError::InvalidDatum("H is not a subgroup of G".into()));
        }
        Ok(CMGaloisDatum { group, iota, h })
    }

    /// Every datum on `g`: all central involutions and all subgroups.
    pub fn all_on(g: &Arc<FiniteGroup>) -> Vec<CMGaloisDatum> {
        let subs = g.all_subgroups();
        g.elements()
            .filter(|&x| check_iota(g, x).is_ok())
            .flat_map(|iota| subs.iter().map(move |h| CMGaloisDatum { group: Arc::clone(g), iota, h: h.clone() }))
            .collect()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn iota(&self) -> usize {
        self.iota
    }

    pub fn h(&self) -> &Subgroup {
        &self.h
    }

    pub fn archimedean(&self) -> Subgroup {
        self.group.generated(&[self.iota])
    }

    /// `⟨ι⟩` followed by the distinct conjugates of `H`.
    pub fn default_locals(&self) -> Vec<Subgroup> {
        let mut out = vec![self.archimedean()];
        out.extend(self.h.conjugates());
        out
    }

    /// `k = 2|H| / [L : L₀] = |H|`.
    pub fn k(&self) -> usize {
        self.h.order()
    }

    pub fn is_case_a(&self) -> bool {
        self.h.contains(self.iota)
    }
}

/// Groups of order at most `max_order` with a central involution, used for
/// exhaustive sweeps.
pub fn cm_test_groups(max_order: usize) -> Vec<Arc<FiniteGroup>> {
    let z = FiniteGroup::cyclic;
    let mut all: Vec<Arc<FiniteGroup>> = (2..=16).step_by(2).map(z).collect();
    all.push(FiniteGroup::elementary_abelian_2(2));
    all.push(FiniteGroup::product(&z(4), &z(2)));
    all.push(FiniteGroup::elementary_abelian_2(3));
    all.push(FiniteGroup::dihedral(4));
    all.push(FiniteGroup::quaternion());
    all.push(FiniteGroup::product(&z(6), &z(2)));
    all.push(FiniteGroup::dihedral(6));
    all.push(FiniteGroup::product(&z(4), &z(4)));
    all.push(FiniteGroup::product(&z(8), &z(2)));
    all.push(FiniteGroup::product(&FiniteGroup::product(&z(4), &z(2)), &z(2)));
    all.push(FiniteGroup::elementary_abelian_2(4));
    all.push(FiniteGroup::product(&FiniteGroup::dihedral(4), &z(2)));
    all.push(FiniteGroup::product(&FiniteGroup::quaternion(), &z(2)));
    all.push(FiniteGroup::dihedral(8));
    all.retain(|g| g.order() <= max_order);
    all
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeilCase {
    /// `ι ∈ H`: rank 1
    A,
    /// `ι ∉ H`: rank `1 + r`
    B,
}

/// The stable lattice `X_*(L, m)`. Basis: `ν_∞`, then `ν_ρ` for one coset
/// `ρH` from each `⟨ι⟩`-orbit on `G/H` (case B only).
#[derive(Clone, Debug)]
pub struct WeilModule {
    pub datum: CMGaloisDatum,
    pub module: GModule,
    pub case: WeilCase,
    pub k: usize,
    pub cosets: CosetReps,
    pub nu_inf: Vec<Int>,
    /// `ν_ρ` indexed like `cosets.reps()`
    pub nu_rho: Vec<Vec<Int>>,
    pub nu1: Vec<Int>,
    pub nu2: Vec<Int>,
    /// coset indices whose `ν` is a basis vector
    pub basis_cosets: Vec<usize>,
}

impl WeilModule {
    /// `ν_{gH}`.
    pub fn nu_of(&self, g: usize) -> &[Int] {
        &self.nu_rho[self.cosets.rep_index_of(g)]
    }

    pub fn rank(&self) -> usize {
        self.module.dim()
    }
}

pub fn weil_module(d: &CMGaloisDatum) -> Result<WeilModule, WeilError> {
    let g = Arc::clone(&d.group);
    let cosets = left_coset_reps(&g, &d.h)?;
    let nc = cosets.len();
    let k = d.k();
    let partner: Vec<usize> = cosets.reps().iter().map(|&r| cosets.rep_index_of(g.mul(d.iota, r))).collect();
    let (module, case, nu_rho, basis_cosets) = if d.is_case_a() {
        let m = GModule::trivial_z(Arc::clone(&g));
        let half = int((k / 2) as i64);
        (m, WeilCase::A, vec![vec![half]; nc], vec![])
    } else {
        let basis: Vec<usize> = (0..nc).filter(|&j| j < partner[j]).collect();
        let n = 1 + basis.len();
        let mut nu = vec![Vec::new(); nc];
        for (b, &j) in basis.iter().enumerate() {
            nu[j] = unit_vec(n, 1 + b);
            let mut v = vec_scale(&unit_vec(n, 0), &int(k as i64));
            v[1 + b] = int(-1);
            nu[partner[j]] = v;
        }
        let action = g
            .elements()
            .map(|s| {
                let mut cols = vec![unit_vec(n, 0)];
                for &j in &basis {
                    cols.push(nu[cosets.rep_index_of(g.mul(s, cosets.reps()[j]))].clone());
                }
                Matrix::from_columns(n, &cols)
            })
            .collect();
        (GModule::free(Arc::clone(&g), n, action)?, WeilCase::B, nu, basis)
    };
    certify_presentation(d, &cosets, &partner, &module)?;
    let nu_inf = unit_vec(module.dim(), 0);
    let nu2 = module.neg(&nu_rho[0]);
    Ok(WeilModule {
        datum: d.clone(),
        nu1: nu_inf.clone(),
        nu_inf,
        nu2,
        module,
        case,
        k,
        cosets,
        nu_rho,
        basis_cosets,
    })
}

/// The presentation by `ν_∞, ν_ρ` and the relations is torsion-free of the
/// same rank as the chosen basis.
fn certify_presentation(
    d: &CMGaloisDatum,
    cosets: &CosetReps,
    partner: &[usize],
    module: &GModule,
) -> Result<(), WeilError> {
    let g = &d.group;
    let nc = cosets.len();
    let n = 1 + nc;
    let k = int(d.k() as i64);
    let mut rels = Vec::new();
    for j in 0..nc {
        let mut c = zero_vec(n);
        if d.is_case_a() {
            c[1 + j] = Int::one();
            c[0] = -(&k / int(2));
        } else if j < partner[j] {
            c[1 + j] = Int::one();
            c[1 + partner[j]] = Int::one();
            c[0] = -k.clone();
        } else {
            continue;
        }
        rels.push(c);
    }
    let action: Vec<Matrix> = g
        .elements()
        .map(|s| {
            let mut a = Matrix::zeros(n, n);
            a[(0, 0)] = Int::one();
            for (j, &r) in cosets.reps().iter().enumerate() {
                a[(1 + cosets.rep_index_of(g.mul(s, r)), 1 + j)] = Int::one();
            }
            a
        })
        .collect();
    let p = presented_module(g, n, &Matrix::from_columns(n, &rels), &action)?;
    if !p.module.is_free() || p.module.dim() != module.dim() {
        return Err(WeilError::InvalidDatum(format!(
            "presented lattice has factors {:?}, expected rank {}",
            p.module.factors(),
            module.dim()
        )));
    }
    Ok(())
}

/// Invariance of `ν_i` under `G_i` and `Σ_{G/G₁} σν₁ + Σ_{G/G₂} σν₂ = 0`.
pub fn nu_pair_holds(x: &GModule, locals: [&Subgroup; 2], nu: [&[Int]; 2]) -> bool {
    let g = x.group();
    let mut total = x.zero_element();
    for i in 0..2 {
        if locals[i].elements().iter().any(|&s| !x.eq_elements(&x.act(s, nu[i]), nu[i])) {
            return false;
        }
        let Ok(reps) = left_coset_reps(g, locals[i]) else { return false };
        total = x.add(&total, &x.sum_translates(reps.reps(), nu[i]));
    }
    x.is_zero(&total)
}

pub fn check_nu_conditions(w: &WeilModule) -> bool {
    let arch = w.datum.archimedean();
    nu_pair_holds(&w.module, [&arch, &w.datum.h], [&w.nu1, &w.nu2])
}

/// `ν_ρ + ν_{ιρ} = k·ν_∞` for every coset.
pub fn check_weil_relation(w: &WeilModule) -> bool {
    let g = w.datum.group();
    let target = vec_scale(&w.nu_inf, &int(w.k as i64));
    w.cosets
        .reps()
        .iter()
        .all(|&r| w.module.eq_elements(&vec_add(w.nu_of(r), w.nu_of(g.mul(w.datum.iota, r))), &target))
}

/// `Hom(M, Z)` of a lattice, with `σ` acting by the transpose of `σ⁻¹`.
pub fn dual_lattice(m: &GModule) -> Result<GModule, WeilError> {
    if !m.is_free() {
        return Err(ModuleError::Dimension("dual of a lattice with torsion".into()).into());
    }
    let g = Arc::clone(m.group());
    let action = g.elements().map(|s| m.action(g.inv(s)).transpose()).collect();
    Ok(GModule::free(g, m.dim(), action)?)
}

/// Characters of the Serre group: `(n_ρ) ∈ Z[G]` with `n_ρ + n_{ιρ}` constant.
/// Basis `[ρ_j] − [ιρ_j]` over `⟨ι⟩`-orbit representatives `ρ_j` (with
/// `ρ_1 = 1`), then `Σ_j [ιρ_j]`.
#[derive(Clone, Debug)]
pub struct SerreLattice {
    pub iota: usize,
    pub module: GModule,
    /// basis in `Z[G]` coordinates, one column per basis vector
    pub inclusion: Matrix,
    pub cocharacters: GModule,
    /// `λ ↦ n_1`
    pub mu_s: Vec<Int>,
}

impl SerreLattice {
    /// The cocharacter `λ ↦ n_ρ`, i.e. `ρ·μ_S`.
    pub fn evaluation(&self, rho: usize) -> Vec<Int> {
        self.inclusion.row(rho).to_vec()
    }

    /// Coordinates of a parity-constant vector of `Z[G]`.
    pub fn coords(&self, n: &[Int]) -> Option<Vec<Int>> {
        LatticeSolver::new(&self.inclusion).solve(n)
    }
}

pub fn serre_lattice(g: &Arc<FiniteGroup>, iota: usize) -> Result<SerreLattice, WeilError> {
    check_iota(g, iota).map_err(WeilError::InvalidIota)?;
    let n = g.order();
    let mut seen = vec![false; n];
    let mut orbit_reps = Vec::new();
    for x in g.elements() {
        if !seen[x] {
            seen[x] = true;
            seen[g.mul(iota, x)] = true;
            orbit_reps.push(x);
        }
    }
    let mut cols: Vec<Vec<Int>> = orbit_reps
        .iter()
        .map(|&r| {
            let mut v = unit_vec(n, r);
            v[g.mul(iota, r)] = int(-1);
            v
        })
        .collect();
    cols.push(orbit_reps.iter().fold(zero_vec(n), |acc, &r| vec_add(&acc, &unit_vec(n, g.mul(iota, r)))));
    let inclusion = Matrix::from_columns(n, &cols);
    let solver = LatticeSolver::new(&inclusion);
    let regular = GModule::regular(Arc::clone(g));
    let rank = cols.len();
    let action = g
        .elements()
        .map(|s| {
            let c: Vec<Vec<Int>> =
                cols.iter().map(|v| solver.solve(&regular.act(s, v)).expect("parity lattice is stable")).collect();
            Matrix::from_columns(rank, &c)
        })
        .collect();
    let module = GModule::free(Arc::clone(g), rank, action)?;
    let cocharacters = dual_lattice(&module)?;
    let mu_s = inclusion.row(g.identity()).to_vec();
    Ok(SerreLattice { iota, module, inclusion, cocharacters, mu_s })
}

/// `ψ_μ: X_*(L, m) → X_*(S)` with `ν_∞ ↦ μ + ιμ` and `ν_ρ ↦ Σ_{σ∈H} ρσμ`.
#[derive(Clone, Debug)]
pub struct PsiMu {
    pub map: GModuleMap,
    pub serre: SerreLattice,
    /// elementary divisors of the matrix
    pub elementary_divisors: Vec<Int>,
}

pub fn psi_mu(w: &WeilModule) -> Result<PsiMu, WeilError> {
    let d = &w.datum;
    let g = d.group();
    let serre = serre_lattice(g, d.iota)?;
    let n = serre.cocharacters.dim();
    let mut cols = vec![vec_add(&serre.evaluation(g.identity()), &serre.evaluation(d.iota))];
    for &j in &w.basis_cosets {
        let rho = w.cosets.reps()[j];
        let v = d.h.elements().iter().fold(zero_vec(n), |acc, &s| vec_add(&acc, &serre.evaluation(g.mul(rho, s))));
        cols.push(v);
    }
    let m = Matrix::from_columns(n, &cols);
    let map = GModuleMap::new(w.module.clone(), serre.cocharacters.clone(), m.clone())?;
    let s = smith(&m);
    let divisors: Vec<Int> = s.diag[..s.rank].to_vec();
    // the dual is onto iff the map is a split injection
    if s.rank < m.cols() || divisors.iter().any(|x| !x.is_one()) {
        let mut cok: Vec<Int> = divisors.into_iter().filter(|x| !x.is_one()).collect();
        cok.extend((s.rank..m.cols()).map(|_| Int::zero()));
        return Err(WeilError::SurjectivityFailure(cok));
    }
    Ok(PsiMu { map, serre, elementary_divisors: divisors })
}

/// The character-side map `λ ↦ Σ_ρ ⟨λ, ρμ⟩[ρ]` from `X^*(T)` into the Serre lattice.
pub fn serre_morphism_from_mu(t: &GModule, mu: &[Int], serre: &SerreLattice) -> Result<GModuleMap, WeilError> {
    let g = Arc::clone(t.group());
    if *g != **serre.module.group() {
        return Err(ModuleError::GroupMismatch.into());
    }
    let iota_plus = |v: &[Int]| t.add(v, &t.act(serre.iota, v));
    let plus_mu = iota_plus(mu);
    for s in g.elements() {
        let a = t.sub(&t.act(s, &plus_mu), &plus_mu);
        let b = iota_plus(&t.sub(&t.act(s, mu), mu));
        if !t.is_zero(&a) || !t.is_zero(&b) {
            return Err(WeilError::SerreConditionViolated(s));
        }
    }
    let chars = dual_lattice(t)?;
    let translates: Vec<Vec<Int>> = g.elements().map(|r| t.act(r, mu)).collect();
    let cols = (0..chars.dim())
        .map(|i| {
            let n: Vec<Int> = translates.iter().map(|v| v[i].clone()).collect();
            serre.coords(&n).ok_or(WeilError::SerreConditionViolated(g.identity()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GModuleMap::new(chars, serre.module.clone(), Matrix::from_columns(serre.module.dim(), &cols))?)
}

/// `φ_{L,L'}`: `ν'_∞ ↦ ν_∞`, `ν'_{ρ'} ↦ r·ν_{π(ρ')}`, into the inflation of the base lattice.
#[derive(Clone, Debug)]
pub struct Transition {
    pub map: GModuleMap,
    pub r: usize,
    pub source: WeilModule,
    pub base: WeilModule,
    pub pi: Vec<usize>,
}

fn check_surjective_hom(gp: &FiniteGroup, g: &FiniteGroup, pi: &[usize]) -> Result<(), WeilError> {
    if pi.len() != gp.order() || pi.iter().any(|&x| x >= g.order()) {
        return Err(WeilError::IncompatibleData("pi has the wrong shape".into()));
    }
    for a in gp.elements() {
        for b in gp.elements() {
            if pi[gp.mul(a, b)] != g.mul(pi[a], pi[b]) {
                return Err(WeilError::IncompatibleData(format!("pi is not multiplicative at ({a}, {b})")));
            }
        }
    }
    let mut hit = vec![false; g.order()];
    pi.iter().for_each(|&x| hit[x] = true);
    if hit.contains(&false) {
        return Err(WeilError::IncompatibleData("pi is not surjective".into()));
    }
    Ok(())
}

pub fn transition_map(dp: &CMGaloisDatum, d: &CMGaloisDatum, pi: &[usize]) -> Result<Transition, WeilError> {
    let (gp, g) = (dp.group(), d.group());
    check_surjective_hom(gp, g, pi)?;
    if pi[dp.iota] != d.iota {
        return Err(WeilError::IncompatibleData("pi does not carry iota' to iota".into()));
    }
    let mut image: Vec<usize> = dp.h.elements().iter().map(|&x| pi[x]).collect();
    image.sort_unstable();
    image.dedup();
    if image != d.h.elements() {
        return Err(WeilError::IncompatibleData("pi(H') differs from H".into()));
    }
    let r = dp.h.order() / d.h.order();
    if dp.k() != r * d.k() {
        return Err(WeilError::IncompatibleData("k' is not r·k".into()));
    }
    let src = weil_module(dp)?;
    let base = weil_module(d)?;
    let n = base.rank();
    let mut cols = vec![base.nu_inf.clone()];
    for &j in &src.basis_cosets {
        cols.push(vec_scale(base.nu_of(pi[src.cosets.reps()[j]]), &int(r as i64)));
    }
    let target = base.module.inflate(gp, pi);
    let map = GModuleMap::new(src.module.clone(), target, Matrix::from_columns(n, &cols))?;
    Ok(Transition { map, r, source: src, base, pi: pi.to_vec() })
}

/// Per local subgroup `G'_v` of the source family: does `Ĥ⁻¹(G'_v, X') → Ĥ⁻¹(π G'_v, X)` vanish?
pub fn transition_vanishing_report(t: &Transition) -> Result<Vec<bool>, WeilError> {
    let g = t.base.datum.group();
    let mut out = Vec::new();
    for gv in t.source.datum.default_locals() {
        let img: Vec<usize> = gv.elements().iter().map(|&x| t.pi[x]).collect();
        let base_local = Subgroup::new(g, &img)?;
        let local = tate_h(&t.source.module.restrict(&gv), -1)?;
        let target = tate_h(&t.base.module.restrict(&base_local), -1)?;
        let mut zero = true;
        for rep in local.representatives() {
            let coords = target.class_of_element(&t.map.apply(rep.get(&[])))?;
            zero &= target.is_zero_class(&coords);
        }
        out.push(zero);
    }
    Ok(out)
}

pub fn verify_transition_vanishing(dp: &CMGaloisDatum, d: &CMGaloisDatum, pi: &[usize]) -> Result<bool, WeilError> {
    let t = transition_map(dp, d, pi)?;
    Ok(transition_vanishing_report(&t)?.into_iter().all(|z| z))
}

/// `G' = G × Z/s` over `G` with `ι' = (ι, 0)` and `H' = H × Z/s`; `r = s`.
pub fn product_tower(d: &CMGaloisDatum, s: usize) -> Result<(CMGaloisDatum, Vec<usize>), WeilError> {
    let g = d.group();
    let gp = FiniteGroup::product(g, &FiniteGroup::cyclic(s));
    let pi: Vec<usize> = gp.elements().map(|x| x / s).collect();
    let hp: Vec<usize> = d.h.elements().iter().flat_map(|&h| (0..s).map(move |c| h * s + c)).collect();
    let hp = Subgroup::new(&gp, &hp)?;
    Ok((CMGaloisDatum::new(gp, d.iota * s, hp)?, pi))
}

/// `0 → Zν_∞ → X_*(L) → X_*(N) → 0` and `0 → Ind_{H₀} Z → Ind_H Z → X_*(N) → 0`, `H₀ = H ∪ ιH`.
pub fn decompose_weil_module(w: &WeilModule) -> Result<(ShortExactSequence, ShortExactSequence), WeilError> {
    if w.case == WeilCase::A {
        return Err(WeilError::CaseAOnly);
    }
    let d = &w.datum;
    let g = Arc::clone(d.group());
    let n = w.rank();
    let r = n - 1;
    let z = GModule::trivial_z(Arc::clone(&g));
    let incl = GModuleMap::new(z, w.module.clone(), Matrix::from_columns(n, &[w.nu_inf.clone()]))?;
    let quotient_action = g.elements().map(|s| w.module.action(s).select_rows(1..n).select_cols(1..n)).collect();
    let xn = GModule::free(Arc::clone(&g), r, quotient_action)?;
    let proj = Matrix::zeros(r, 1).hstack(&Matrix::identity(r));
    let p = GModuleMap::new(w.module.clone(), xn.clone(), proj.clone())?;
    let first = ShortExactSequence::new(incl, p)?;

    let h0 = g.generated(&[d.h.elements(), &[d.iota]].concat());
    let triv = |s: &Subgroup| GModule::trivial_z(s.to_group().0);
    let ind_h0 = induced_module(&g, &h0, &triv(&h0))?;
    let ind_h = induced_module(&g, &d.h, &triv(&d.h))?;
    let reps0 = left_coset_reps(&g, &h0)?;
    let nc = w.cosets.len();
    let cols: Vec<Vec<Int>> = reps0
        .reps()
        .iter()
        .map(|&rho| {
            vec_add(
                &unit_vec(nc, w.cosets.rep_index_of(rho)),
                &unit_vec(nc, w.cosets.rep_index_of(g.mul(rho, d.iota))),
            )
        })
        .collect();
    let i2 = GModuleMap::new(ind_h0, ind_h.clone(), Matrix::from_columns(nc, &cols))?;
    let pcols: Vec<Vec<Int>> = w.nu_rho.iter().map(|v| proj.mul_vec(v)).collect();
    let p2 = GModuleMap::new(ind_h, xn, Matrix::from_columns(r, &pcols))?;
    let second = ShortExactSequence::new(i2, p2)?;
    Ok((first, second))
}

/// Verification summary of one datum, as reported by the CLI.
#[derive(Clone, Debug, Serialize)]
pub struct WeilChecks {
    pub case: WeilCase,
    pub rank: usize,
    pub k: usize,
    pub torsion_free: bool,
    pub expected_rank: bool,
    pub relation: bool,
    pub nu_conditions: bool,
    pub hasse_surjective: bool,
    pub psi_dual_surjective: bool,
}

impl WeilChecks {
    pub fn all_pass(&self) -> bool {
        self.torsion_free
            && self.expected_rank
            && self.relation
            && self.nu_conditions
            && self.hasse_surjective
            && self.psi_dual_surjective
    }
}

pub fn check_datum(d: &CMGaloisDatum) -> Result<WeilChecks, WeilError> {
    let w = weil_module(d)?;
    let g = d.group();
    let expected = match w.case {
        WeilCase::A => 1,
        WeilCase::B => {
            // r = |{1, ι}\G/H|
            let reps = crate::groups::double_coset_reps(g, &d.archimedean(), &d.h)?;
            1 + reps.len()
        }
    };
    let hasse = crate::tate::hasse_surjectivity_check(&w.module, &d.default_locals())?;
    let psi = match psi_mu(&w) {
        Ok(_) => true,
        Err(WeilError::SurjectivityFailure(_)) => false,
        Err(e) => return Err(e),
    };
    Ok(WeilChecks {
        case: w.case,
        rank: w.rank(),
        k: w.k,
        torsion_free: w.module.is_free(),
        expected_rank: w.rank() == expected,
        relation: check_weil_relation(&w),
        nu_conditions: check_nu_conditions(&w),
        hasse_surjective: hasse.surjective,
        psi_dual_surjective: psi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ints;

    fn datum(g: &Arc<FiniteGroup>, iota: usize, h: &[usize]) -> CMGaloisDatum {
        CMGaloisDatum::new(Arc::clone(g), iota, g.generated(h)).unwrap()
    }

    #[test]
    fn weil_module_examples() {
        let z2 = FiniteGroup::cyclic(2);
        let inert = weil_module(&datum(&z2, 1, &[1])).unwrap();
        assert_eq!((inert.case, inert.rank(), inert.k), (WeilCase::A, 1, 2));
        assert!(inert.nu_rho.iter().all(|v| v == &inert.nu_inf));

        let split = weil_module(&datum(&z2, 1, &[])).unwrap();
        assert_eq!((split.case, split.rank(), split.k), (WeilCase::B, 2, 1));
        assert_eq!(split.nu_of(1), &ints(&[1, -1])[..]);
        assert_eq!(split.nu_of(0), &ints(&[0, 1])[..]);

        let v4 = FiniteGroup::elementary_abelian_2(2);
        let w = weil_module(&datum(&v4, 3, &[1])).unwrap();
        assert_eq!((w.rank(), w.k), (2, 2));
        for r in v4.elements() {
            let sum = vec_add(w.nu_of(r), w.nu_of(v4.mul(3, r)));
            assert_eq!(sum, ints(&[2, 0]));
        }
        for w in [&inert, &split, &w] {
            assert!(check_nu_conditions(w));
            assert!(check_weil_relation(w));
        }
    }

    #[test]
    fn invalid_data() {
        let s3 = FiniteGroup::symmetric3();
        assert!(matches!(CMGaloisDatum::new(Arc::clone(&s3), 1, s3.whole()), Err(WeilError::InvalidDatum(_))));
        let z4 = FiniteGroup::cyclic(4);
        assert!(CMGaloisDatum::new(Arc::clone(&z4), 1, z4.whole()).is_err());
        assert!(CMGaloisDatum::new(Arc::clone(&z4), 0, z4.whole()).is_err());
        assert!(matches!(serre_lattice(&z4, 1), Err(WeilError::InvalidIota(_))));
    }

    #[test]
    fn nu_conditions_negative_and_case_a() {
        let z2 = FiniteGroup::cyclic(2);
        let mut w = weil_module(&datum(&z2, 1, &[])).unwrap();
        w.nu2 = w.module.scale(&w.nu2, &int(2));
        assert!(!check_nu_conditions(&w));

        let z4 = FiniteGroup::cyclic(4);
        let a = weil_module(&datum(&z4, 2, &[1])).unwrap();
        assert_eq!(a.case, WeilCase::A);
        assert!(check_nu_conditions(&a));
        let arch = a.datum.archimedean();
        let s1 = a.module.sum_translates(left_coset_reps(&z4, &arch).unwrap().reps(), &a.nu1);
        assert_eq!(s1, ints(&[2]));
    }

    #[test]
    fn serre_lattice_ranks() {
        assert_eq!(serre_lattice(&FiniteGroup::cyclic(2), 1).unwrap().module.dim(), 2);
        assert_eq!(serre_lattice(&FiniteGroup::elementary_abelian_2(2), 3).unwrap().module.dim(), 3);
        let e8 = FiniteGroup::elementary_abelian_2(3);
        let s = serre_lattice(&e8, 7).unwrap();
        assert_eq!(s.module.dim(), 5);
        // every basis vector is parity-constant
        for c in s.inclusion.columns() {
            let sums: Vec<Int> = e8.elements().map(|r| &c[r] + &c[e8.mul(7, r)]).collect();
            assert!(sums.iter().all(|x| x == &sums[0]));
        }
        assert_eq!(s.evaluation(0), s.mu_s);
    }

    #[test]
    fn psi_mu_examples() {
        let z2 = FiniteGroup::cyclic(2);
        let split = weil_module(&datum(&z2, 1, &[])).unwrap();
        let p = psi_mu(&split).unwrap();
        assert_eq!(p.map.matrix(), &Matrix::from_i64(&[&[0, 1], &[1, 0]]));
        let inert = weil_module(&datum(&z2, 1, &[1])).unwrap();
        let p = psi_mu(&inert).unwrap();
        assert_eq!(p.map.matrix().cols(), 1);
        let v4 = FiniteGroup::elementary_abelian_2(2);
        let p = psi_mu(&weil_module(&datum(&v4, 3, &[1])).unwrap()).unwrap();
        assert_eq!((p.map.matrix().rows(), p.map.matrix().cols()), (3, 2));
        assert_eq!(p.elementary_divisors, ints(&[1, 1]));
    }

    #[test]
    fn serre_morphisms() {
        let z2 = FiniteGroup::cyclic(2);
        let serre = serre_lattice(&z2, 1).unwrap();
        let sign = GModule::sign(Arc::clone(&z2), &[1, -1]).unwrap();
        let f = serre_morphism_from_mu(&sign, &ints(&[1]), &serre).unwrap();
        // λ ↦ [1] − [ι]
        assert_eq!(serre.inclusion.mul_vec(&f.apply(&ints(&[1]))), ints(&[1, -1]));
        let zero = serre_morphism_from_mu(&sign, &ints(&[0]), &serre).unwrap();
        assert!(zero.matrix().is_zero());
        let split = weil_module(&datum(&z2, 1, &[])).unwrap();
        let f = serre_morphism_from_mu(&split.module, &split.nu_inf, &serre).unwrap();
        // ⟨e₀*, ρν_∞⟩ = 1 for both ρ
        assert_eq!(serre.inclusion.mul_vec(&f.apply(&ints(&[1, 0]))), ints(&[1, 1]));
        // a μ on Z[Z/4] with ι = σ² that breaks the Serre condition
        let z4 = FiniteGroup::cyclic(4);
        let s4 = serre_lattice(&z4, 2).unwrap();
        let reg = GModule::regular(Arc::clone(&z4));
        assert!(matches!(
            serre_morphism_from_mu(&reg, &ints(&[1, 0, 0, 0]), &s4),
            Err(WeilError::SerreConditionViolated(_))
        ));
    }

    #[test]
    fn transitions() {
        let z2 = FiniteGroup::cyclic(2);
        let split = datum(&z2, 1, &[]);
        let id = transition_map(&split, &split, &[0, 1]).unwrap();
        assert_eq!(id.r, 1);
        assert_eq!(id.map.matrix(), &Matrix::identity(2));

        let (up, pi) = product_tower(&split, 2).unwrap();
        let t = transition_map(&up, &split, &pi).unwrap();
        assert_eq!(t.r, 2);
        assert_eq!(t.map.apply(&t.source.nu2), vec_scale(&t.base.nu2, &int(2)));
        let (up2, pi2) = product_tower(&up, 2).unwrap();
        let t2 = transition_map(&up2, &up, &pi2).unwrap();
        let composed = transition_map(&up2, &split, &pi2.iter().map(|&x| pi[x]).collect::<Vec<_>>()).unwrap();
        assert_eq!(composed.r, t.r * t2.r);
        assert_eq!(t.map.matrix().mul(t2.map.matrix()), *composed.map.matrix());
        assert!(transition_map(&split, &split, &[1, 0]).is_err());
    }

    #[test]
    fn transition_vanishing() {
        let z2 = FiniteGroup::cyclic(2);
        let split = datum(&z2, 1, &[]);
        let (up, pi) = product_tower(&split, 2).unwrap();
        assert!(verify_transition_vanishing(&up, &split, &pi).unwrap());
        let inert = datum(&z2, 1, &[1]);
        assert!(verify_transition_vanishing(&inert, &inert, &[0, 1]).unwrap());
        // identity on a base whose local Ĥ⁻¹ is nonzero
        let z4 = FiniteGroup::cyclic(4);
        let d = datum(&z4, 2, &[]);
        let w = weil_module(&d).unwrap();
        let nonzero = d.default_locals().iter().any(|s| !tate_h(&w.module.restrict(s), -1).unwrap().is_trivial());
        assert!(nonzero);
        assert!(!verify_transition_vanishing(&d, &d, &[0, 1, 2, 3]).unwrap());
    }

    #[test]
    fn decompositions() {
        let z2 = FiniteGroup::cyclic(2);
        let w = weil_module(&datum(&z2, 1, &[])).unwrap();
        let (f, s) = decompose_weil_module(&w).unwrap();
        assert_eq!(f.quotient().action(1), &Matrix::from_i64(&[&[-1]]));
        assert_eq!(s.quotient().dim(), 1);
        let v4 = FiniteGroup::elementary_abelian_2(2);
        let (f, _) = decompose_weil_module(&weil_module(&datum(&v4, 3, &[1])).unwrap()).unwrap();
        assert_eq!(f.quotient().dim(), 1);
        let inert = weil_module(&datum(&z2, 1, &[1])).unwrap();
        assert!(matches!(decompose_weil_module(&inert), Err(WeilError::CaseAOnly)));
    }

    #[test]
    fn every_datum_up_to_eight() {
        for g in cm_test_groups(8) {
            for d in CMGaloisDatum::all_on(&g) {
                let c = check_datum(&d).unwrap();
                assert!(c.all_pass(), "{:?} iota={} H={:?}: {c:?}", g.label(), d.iota(), d.h().elements());
            }
        }
    }
}
