//! Finite groups given by multiplication tables, with subgroups and cosets.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not square or has out-of-range entries")]
    BadTable,
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("elements {0:?} do not form a subgroup")]
    NotASubgroup(Vec<usize>),
    #[error("unknown group name {0:?}")]
    UnknownName(String),
}

/// A finite group on the element indices `0..order`.
#[derive(Clone, Debug, Serialize)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<Vec<usize>>,
    identity: usize,
    inv: Vec<usize>,
    #[serde(skip)]
    label: Option<String>,
}

// Equality is by table; the display label is ignored.
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.mult == other.mult
    }
}

impl Eq for FiniteGroup {}

/// Validate a multiplication table and build the group.
pub fn make_group(mult_table: Vec<Vec<usize>>) -> Result<FiniteGroup, GroupError> {
    let n = mult_table.len();
    if n == 0 || mult_table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err(GroupError::BadTable);
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|g| mult_table[e][g] == g && mult_table[g][e] == g))
        .ok_or(GroupError::NoIdentity)?;
    let mut inv = vec![0; n];
    for g in 0..n {
        inv[g] = (0..n)
            .find(|&h| mult_table[g][h] == identity && mult_table[h][g] == identity)
            .ok_or(GroupError::NoInverse(g))?;
    }
    for a in 0..n {
        for b in 0..n {
            let ab = mult_table[a][b];
            for c in 0..n {
                if mult_table[ab][c] != mult_table[a][mult_table[b][c]] {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
            }
        }
    }
    Ok(FiniteGroup { order: n, mult: mult_table, identity, inv, label: None })
}

impl FiniteGroup {
    /// Z/n with element k standing for σ^k.
    pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
        assert!(n >= 1);
        let t = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mut g = make_group(t).expect("cyclic table");
        g.label = Some(format!("Z/{n}"));
        Arc::new(g)
    }

    /// (Z/2)^k with elements as bitmasks, group law XOR.
    pub fn elementary_abelian_2(k: usize) -> Arc<FiniteGroup> {
        let n = 1usize << k;
        let t = (0..n).map(|a| (0..n).map(|b| a ^ b).collect()).collect();
        let mut g = make_group(t).expect("elementary abelian table");
        g.label = Some(format!("(Z/2)^{k}"));
        Arc::new(g)
    }

    /// Direct product with elements `a * |H| + b`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Arc<FiniteGroup> {
        let (m, n) = (g.order, h.order);
        let t = (0..m * n)
            .map(|x| (0..m * n).map(|y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n)).collect())
            .collect();
        Arc::new(make_group(t).expect("product table"))
    }

    /// S3 acting on {0,1,2}; elements listed as permutations in lexicographic order.
    pub fn symmetric3() -> Arc<FiniteGroup> {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let t = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| idx([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        let mut g = make_group(t).expect("S3 table");
        g.label = Some("S3".into());
        Arc::new(g)
    }

    /// Dihedral group of order `2n`; `r^a s^b` has index `a + n·b`.
    pub fn dihedral(n: usize) -> Arc<FiniteGroup> {
        assert!(n >= 1);
        let t = (0..2 * n)
            .map(|x| {
                let (a, b) = (x % n, x / n);
                (0..2 * n)
                    .map(|y| {
                        let (c, d) = (y % n, y / n);
                        let c = if b == 1 { (n - c) % n } else { c };
                        (a + c) % n + n * ((b + d) % 2)
                    })
                    .collect()
            })
            .collect();
        let mut g = make_group(t).expect("dihedral table");
        g.label = Some(format!("D{n}"));
        Arc::new(g)
    }

    /// Quaternion group; index `4·s + u` stands for `(−1)^s·u` with `u ∈ {1, i, j, k}`.
    pub fn quaternion() -> Arc<FiniteGroup> {
        // unit products: (sign, unit)
        const UNITS: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let t = (0..8)
            .map(|x: usize| {
                (0..8)
                    .map(|y: usize| {
                        let (s, u) = UNITS[x % 4][y % 4];
                        4 * ((s + x / 4 + y / 4) % 2) + u
                    })
                    .collect()
            })
            .collect();
        let mut g = make_group(t).expect("quaternion table");
        g.label = Some("Q8".into());
        Arc::new(g)
    }

    /// Parse "Z/n", "(Z/2)^k", "S3", "Dn" or "Q8".
    pub fn named(name: &str) -> Result<Arc<FiniteGroup>, GroupError> {
        let s: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "S3" {
            return Ok(Self::symmetric3());
        }
        if s == "Q8" {
            return Ok(Self::quaternion());
        }
        if let Some(n) = s.strip_prefix('D').and_then(|r| r.parse::<usize>().ok()) {
            if (1..=32).contains(&n) {
                return Ok(Self::dihedral(n));
            }
        }
        if let Some(rest) = s.strip_prefix("(Z/2)^") {
            if let Ok(k) = rest.parse::<usize>() {
                if k <= 6 {
                    return Ok(Self::elementary_abelian_2(k));
                }
            }
        }
        if let Some(rest) = s.strip_prefix("Z/") {
            if let Ok(n) = rest.parse::<usize>() {
                if (1..=64).contains(&n) {
                    return Ok(Self::cyclic(n));
                }
            }
        }
        Err(GroupError::UnknownName(name.to_string()))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| is_central(self, a))
    }

    /// Subgroup generated by the given elements.
    pub fn generated(self: &Arc<Self>, gens: &[usize]) -> Subgroup {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier: Vec<usize> = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup { parent: Arc::clone(self), elements: set.into_iter().collect() }
    }

    pub fn whole(self: &Arc<Self>) -> Subgroup {
        Subgroup { parent: Arc::clone(self), elements: self.elements().collect() }
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> Subgroup {
        Subgroup { parent: Arc::clone(self), elements: vec![self.identity] }
    }

    /// Every subgroup, by closure of all generating subsets of size ≤ 3
    /// (enough for the groups in scope, which have rank ≤ 3).
    pub fn all_subgroups(self: &Arc<Self>) -> Vec<Subgroup> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let n = self.order;
        let mut out = Vec::new();
        let mut push = |s: Subgroup, seen: &mut BTreeSet<Vec<usize>>| {
            if seen.insert(s.elements.clone()) {
                out.push(s);
            }
        };
        push(self.trivial_subgroup(), &mut seen);
        for a in 0..n {
            push(self.generated(&[a]), &mut seen);
            for b in a + 1..n {
                push(self.generated(&[a, b]), &mut seen);
                for c in b + 1..n {
                    push(self.generated(&[a, b, c]), &mut seen);
                }
            }
        }
        out.sort_by(|x, y| (x.order(), &x.elements).cmp(&(y.order(), &y.elements)));
        out
    }

    /// All cyclic subgroups, sorted by order then elements.
    pub fn cyclic_subgroups(self: &Arc<Self>) -> Vec<Subgroup> {
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        for a in self.elements() {
            set.insert(self.generated(&[a]).elements);
        }
        let mut out: Vec<Subgroup> =
            set.into_iter().map(|e| Subgroup { parent: Arc::clone(self), elements: e }).collect();
        out.sort_by(|x, y| (x.order(), &x.elements).cmp(&(y.order(), &y.elements)));
        out
    }
}

pub fn is_central(g: &FiniteGroup, x: usize) -> bool {
    g.elements().all(|y| g.mul(x, y) == g.mul(y, x))
}

/// A subgroup, stored as the sorted list of its elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subgroup {
    #[serde(skip)]
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn new(parent: &Arc<FiniteGroup>, elements: &[usize]) -> Result<Subgroup, GroupError> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        let bad = || GroupError::NotASubgroup(elements.to_vec());
        if set.iter().any(|&x| x >= parent.order()) || !set.contains(&parent.identity()) {
            return Err(bad());
        }
        for &a in &set {
            if !set.contains(&parent.inv(a)) {
                return Err(bad());
            }
            for &b in &set {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(bad());
                }
            }
        }
        Ok(Subgroup { parent: Arc::clone(parent), elements: set.into_iter().collect() })
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn conjugate(&self, g: usize) -> Subgroup {
        let p = &self.parent;
        let mut e: Vec<usize> =
            self.elements.iter().map(|&h| p.mul(p.mul(g, h), p.inv(g))).collect();
        e.sort_unstable();
        Subgroup { parent: Arc::clone(p), elements: e }
    }

    /// Distinct conjugates, sorted.
    pub fn conjugates(&self) -> Vec<Subgroup> {
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in self.parent.elements() {
            set.insert(self.conjugate(g).elements);
        }
        set.into_iter().map(|e| Subgroup { parent: Arc::clone(&self.parent), elements: e }).collect()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// The subgroup as a group in its own right, with the embedding into the parent.
    pub fn to_group(&self) -> (Arc<FiniteGroup>, Vec<usize>) {
        let pos = |x: usize| self.elements.binary_search(&x).unwrap();
        let t = self
            .elements
            .iter()
            .map(|&a| self.elements.iter().map(|&b| pos(self.parent.mul(a, b))).collect())
            .collect();
        (Arc::new(make_group(t).expect("subgroup table")), self.elements.clone())
    }

    /// Local index of `g` inside the subgroup, if it belongs.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }
}

/// Left coset representatives with the factorization `g = rep · h`.
#[derive(Clone, Debug)]
pub struct CosetReps {
    subgroup: Subgroup,
    reps: Vec<usize>,
    /// g ↦ (index into reps, element of the subgroup)
    factor: Vec<(usize, usize)>,
}

impl CosetReps {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// `g = reps[i] · h`; returns `(i, h)`.
    pub fn factor(&self, g: usize) -> (usize, usize) {
        self.factor[g]
    }

    pub fn rep_index_of(&self, g: usize) -> usize {
        self.factor[g].0
    }

    /// Build from an explicit representative list (identity first).
    pub fn from_reps(sub: &Subgroup, reps: Vec<usize>) -> Result<CosetReps, GroupError> {
        let g = sub.parent();
        let bad = || GroupError::NotASubgroup(reps.clone());
        if reps.first() != Some(&g.identity()) || reps.len() * sub.order() != g.order() {
            return Err(bad());
        }
        let mut factor = vec![None; g.order()];
        for (i, &r) in reps.iter().enumerate() {
            for &h in sub.elements() {
                let x = g.mul(r, h);
                if factor[x].is_some() {
                    return Err(bad());
                }
                factor[x] = Some((i, h));
            }
        }
        let factor = factor.into_iter().map(|f| f.expect("cosets cover")).collect();
        Ok(CosetReps { subgroup: sub.clone(), reps, factor })
    }
}

/// Left coset representatives: the smallest element of each coset, identity first.
pub fn left_coset_reps(g: &Arc<FiniteGroup>, h: &Subgroup) -> Result<CosetReps, GroupError> {
    if !Arc::ptr_eq(g, h.parent()) && **g != **h.parent() {
        return Err(GroupError::NotASubgroup(h.elements().to_vec()));
    }
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in std::iter::once(g.identity()).chain(g.elements()) {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &s in h.elements() {
            covered[g.mul(x, s)] = true;
        }
    }
    CosetReps::from_reps(h, reps)
}

/// One representative (the smallest element) per double coset `A \ G / B`.
pub fn double_coset_reps(g: &Arc<FiniteGroup>, a: &Subgroup, b: &Subgroup) -> Result<Vec<usize>, GroupError> {
    for s in [a, b] {
        if **s.parent() != **g {
            return Err(GroupError::NotASubgroup(s.elements().to_vec()));
        }
    }
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &s in a.elements() {
            for &t in b.elements() {
                covered[g.mul(g.mul(s, x), t)] = true;
            }
        }
    }
    Ok(reps)
}

/// Size of the double coset `A x B`.
pub fn double_coset_size(g: &FiniteGroup, a: &Subgroup, b: &Subgroup, x: usize) -> usize {
    let mut set = BTreeSet::new();
    for &s in a.elements() {
        for &t in b.elements() {
            set.insert(g.mul(g.mul(s, x), t));
        }
    }
    set.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_small_groups() {
        let g = make_group(vec![vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        let z2 = FiniteGroup::cyclic(2);
        assert!(z2.elements().all(|x| z2.inv(x) == x));
        let e8 = FiniteGroup::elementary_abelian_2(3);
        assert_eq!(e8.order(), 8);
        assert!(e8.elements().all(|x| e8.element_order(x) <= 2));
        assert!(e8.elements().all(|x| is_central(&e8, x)));
    }

    #[test]
    fn dihedral_and_quaternion() {
        let d4 = FiniteGroup::dihedral(4);
        let q8 = FiniteGroup::quaternion();
        let involutions = |g: &FiniteGroup| g.elements().filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions(&d4), 5);
        assert_eq!(involutions(&q8), 1);
        assert_eq!(d4.elements().filter(|&x| is_central(&d4, x)).count(), 2);
        assert!(!q8.is_abelian());
        assert!(is_central(&q8, 4));
        assert!(!is_central(&FiniteGroup::symmetric3(), 1));
        assert_eq!(FiniteGroup::named("D3").unwrap().order(), 6);
    }

    #[test]
    fn table_errors_name_the_culprit() {
        assert_eq!(make_group(vec![vec![0, 0], vec![0, 0]]), Err(GroupError::NoIdentity));
        // identity 0, but 1*1 = 1 leaves 1 without an inverse
        assert_eq!(make_group(vec![vec![0, 1], vec![1, 1]]), Err(GroupError::NoInverse(1)));
        // a quasigroup with identity that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(make_group(t), Err(GroupError::NotAssociative(..))));
    }

    #[test]
    fn cosets_and_double_cosets() {
        let z4 = FiniteGroup::cyclic(4);
        let h = z4.generated(&[2]);
        let c = left_coset_reps(&z4, &h).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(left_coset_reps(&z4, &z4.whole()).unwrap().reps(), &[0]);

        let v4 = FiniteGroup::elementary_abelian_2(2);
        let h = v4.generated(&[1]);
        let c = left_coset_reps(&v4, &h).unwrap();
        assert_eq!(c.reps()[0], 0);
        assert_eq!(c.len() * h.order(), 4);
        for g in v4.elements() {
            let (i, s) = c.factor(g);
            assert_eq!(v4.mul(c.reps()[i], s), g);
        }

        let z2 = FiniteGroup::cyclic(2);
        let a = z2.generated(&[1]);
        assert_eq!(double_coset_reps(&z2, &a, &z2.trivial_subgroup()).unwrap().len(), 1);
        // (Z/2)^2, iota = 3, H = <1>
        let a = v4.generated(&[3]);
        let b = v4.generated(&[1]);
        let reps = double_coset_reps(&v4, &a, &b).unwrap();
        assert_eq!(reps.len(), 1);
        let total: usize = reps.iter().map(|&x| double_coset_size(&v4, &a, &b, x)).sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn s3_transposition_is_not_central() {
        let s3 = FiniteGroup::symmetric3();
        assert!(is_central(&s3, s3.identity()));
        assert!(!is_central(&s3, 1));
        assert!(!s3.is_abelian());
        assert_eq!(s3.all_subgroups().len(), 6);
    }

    #[test]
    fn named_groups() {
        assert_eq!(FiniteGroup::named("Z/6").unwrap().order(), 6);
        assert_eq!(FiniteGroup::named("(Z/2)^3").unwrap().order(), 8);
        assert_eq!(FiniteGroup::named("Q8").unwrap().order(), 8);
        assert!(FiniteGroup::named("A5").is_err());
    }
}
