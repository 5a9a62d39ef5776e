#![allow(dead_code)]
//! Brute-force helpers shared by the integration tests.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use lrdesk::linalg::{ints, Int, Matrix};
use lrdesk::{FiniteGroup, GModule};
use num_traits::ToPrimitive;

/// Finite module with elements indexed `0..size` and precomputed tables.
pub struct Tables {
    pub size: usize,
    pub zero: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
    act: Vec<Vec<usize>>,
}

impl Tables {
    pub fn new(m: &GModule) -> Tables {
        let elems = m.elements(1 << 12).expect("finite module");
        let key = |v: &[Int]| v.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<i64>>();
        let index: HashMap<Vec<i64>, usize> = elems.iter().enumerate().map(|(i, v)| (key(v), i)).collect();
        let look = |v: Vec<Int>| index[&key(&m.reduce(&v))];
        let n = elems.len();
        let mut add = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                add[i * n + j] = look(m.add(&elems[i], &elems[j]));
            }
        }
        let neg = elems.iter().map(|v| look(m.neg(v))).collect();
        let act = m.group().elements().map(|g| elems.iter().map(|v| look(m.act(g, v))).collect()).collect();
        Tables { size: n, zero: look(m.zero_element()), add, neg, act }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b])
    }

    pub fn act(&self, g: usize, a: usize) -> usize {
        self.act[g][a]
    }

    pub fn times(&self, k: usize, a: usize) -> usize {
        (0..k).fold(self.zero, |acc, _| self.add(acc, a))
    }

    fn span(&self, gens: &[usize]) -> HashSet<usize> {
        let mut set: HashSet<usize> = HashSet::from([self.zero]);
        let mut frontier = vec![self.zero];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.add(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }
}

/// `k ↦ #{x ∈ K : kx ∈ B} / |B|` for `k = 1..=|G|`.
pub type Fingerprint = Vec<usize>;

fn fingerprint_sets<T: Eq + std::hash::Hash + Clone>(
    k_set: &[T],
    b_set: &HashSet<T>,
    order: usize,
    times: impl Fn(usize, &T) -> T,
) -> Fingerprint {
    (1..=order)
        .map(|k| {
            let hits = k_set.iter().filter(|x| b_set.contains(&times(k, x))).count();
            assert_eq!(hits % b_set.len(), 0);
            hits / b_set.len()
        })
        .collect()
}

/// Exhaustive computation of the fingerprint of `Ĥⁿ(G, M)`.
pub fn oracle(m: &GModule, n: i32) -> Fingerprint {
    let t = Tables::new(m);
    let g = m.group();
    let order = g.order();
    match n {
        -1 | 0 => {
            let norm = |x: usize| g.elements().fold(t.zero, |acc, s| t.add(acc, t.act(s, x)));
            let all: Vec<usize> = (0..t.size).collect();
            let (k, b): (Vec<usize>, HashSet<usize>) = if n == -1 {
                let k = all.iter().copied().filter(|&x| norm(x) == t.zero).collect();
                let gens: Vec<usize> =
                    g.elements().flat_map(|s| all.iter().map(move |&x| (s, x))).map(|(s, x)| t.sub(t.act(s, x), x)).collect();
                (k, t.span(&gens))
            } else {
                let k = all.iter().copied().filter(|&x| g.elements().all(|s| t.act(s, x) == x)).collect();
                (k, all.iter().map(|&x| norm(x)).collect())
            };
            fingerprint_sets(&k, &b, order, |k, &x| t.times(k, x))
        }
        1 | 2 => {
            let nn = n as usize;
            let cocycles = enumerate_cocycles(&t, g, nn);
            let cob: HashSet<Vec<usize>> =
                enumerate_cochains(&t, g, nn - 1).iter().map(|c| differential(&t, g, nn - 1, c)).collect();
            fingerprint_sets(&cocycles, &cob, order, |k, c| c.iter().map(|&x| t.times(k, x)).collect())
        }
        _ => panic!("unsupported degree"),
    }
}

fn nonid(g: &FiniteGroup) -> Vec<usize> {
    g.elements().filter(|&x| x != g.identity()).collect()
}

/// Variable index of a tuple of group elements, `None` when some entry is the identity.
fn var_index(g: &FiniteGroup, q: &[usize], t: &[usize]) -> Option<usize> {
    let mut idx = 0;
    for &x in t {
        if x == g.identity() {
            return None;
        }
        idx = idx * q.len() + q.iter().position(|&y| y == x).unwrap();
    }
    Some(idx)
}

fn tuples(q: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                q.iter().map(move |&x| {
                    let mut s = t.clone();
                    s.push(x);
                    s
                })
            })
            .collect();
    }
    out
}

/// One term `sign · act(g, c(var))` of the bar differential.
struct Term {
    var: usize,
    g: Option<usize>,
    positive: bool,
}

fn constraint_terms(g: &FiniteGroup, q: &[usize], n: usize, t: &[usize]) -> Vec<Term> {
    let mut terms = Vec::new();
    if let Some(v) = var_index(g, q, &t[1..]) {
        terms.push(Term { var: v, g: Some(t[0]), positive: true });
    }
    for i in 0..n {
        let mut s = t[..i].to_vec();
        s.push(g.mul(t[i], t[i + 1]));
        s.extend_from_slice(&t[i + 2..]);
        if let Some(v) = var_index(g, q, &s) {
            terms.push(Term { var: v, g: None, positive: i % 2 == 1 });
        }
    }
    if let Some(v) = var_index(g, q, &t[..n]) {
        terms.push(Term { var: v, g: None, positive: n % 2 == 1 });
    }
    terms
}

fn eval(t: &Tables, terms: &[Term], vals: &[usize]) -> usize {
    terms.iter().fold(t.zero, |acc, term| {
        let x = match term.g {
            Some(s) => t.act(s, vals[term.var]),
            None => vals[term.var],
        };
        if term.positive {
            t.add(acc, x)
        } else {
            t.sub(acc, x)
        }
    })
}

/// All normalized `n`-cochains, as value vectors over the non-identity tuples.
fn enumerate_cochains(t: &Tables, g: &FiniteGroup, n: usize) -> Vec<Vec<usize>> {
    let vars = (g.order() - 1).pow(n as u32);
    let mut out = vec![vec![]];
    for _ in 0..vars {
        out = out
            .into_iter()
            .flat_map(|c: Vec<usize>| {
                (0..t.size).map(move |x| {
                    let mut d = c.clone();
                    d.push(x);
                    d
                })
            })
            .collect();
    }
    out
}

fn differential(t: &Tables, g: &FiniteGroup, n: usize, c: &[usize]) -> Vec<usize> {
    let q = nonid(g);
    tuples(&q, n + 1).iter().map(|tu| eval(t, &constraint_terms(g, &q, n, tu), c)).collect()
}

/// Backtracking enumeration of normalized `n`-cocycles; each cocycle
/// condition is checked as soon as its last variable is assigned.
fn enumerate_cocycles(t: &Tables, g: &FiniteGroup, n: usize) -> Vec<Vec<usize>> {
    let q = nonid(g);
    let vars = q.len().pow(n as u32);
    let mut by_last: Vec<Vec<Vec<Term>>> = (0..vars).map(|_| Vec::new()).collect();
    for tu in tuples(&q, n + 1) {
        let terms = constraint_terms(g, &q, n, &tu);
        match terms.iter().map(|x| x.var).max() {
            Some(last) => by_last[last].push(terms),
            None => {}
        }
    }
    let mut out = Vec::new();
    let mut vals = vec![t.zero; vars];
    fn go(
        i: usize,
        vals: &mut Vec<usize>,
        t: &Tables,
        by_last: &[Vec<Vec<Term>>],
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == vals.len() {
            out.push(vals.clone());
            return;
        }
        for x in 0..t.size {
            vals[i] = x;
            if by_last[i].iter().all(|terms| eval(t, terms, vals) == t.zero) {
                go(i + 1, vals, t, by_last, out);
            }
        }
    }
    go(0, &mut vals, t, &by_last, &mut out);
    if vars == 0 {
        return vec![vec![]];
    }
    out
}

/// Module with explicit torsion factors and action matrices.
pub fn module(g: &Arc<FiniteGroup>, factors: &[i64], action: Vec<Matrix>) -> GModule {
    GModule::new(Arc::clone(g), ints(factors), action).expect("valid test module")
}

/// `(Z/d)[G]` with left translation.
pub fn regular_mod(g: &Arc<FiniteGroup>, d: i64) -> GModule {
    let r = GModule::regular(Arc::clone(g));
    module(g, &vec![d; g.order()], r.actions().to_vec())
}

/// `Z/d` on which each generator image is multiplication by the listed unit.
pub fn cyclic_scalar(g: &Arc<FiniteGroup>, d: i64, per_element: &[i64]) -> GModule {
    let action = per_element.iter().map(|&u| Matrix::from_i64(&[&[u]])).collect();
    module(g, &[d], action)
}

fn powers(g: &Arc<FiniteGroup>, gen_mat: &Matrix) -> Vec<Matrix> {
    // cyclic groups list their elements as 0, σ, σ², …
    let mut out = vec![Matrix::identity(gen_mat.rows())];
    for _ in 1..g.order() {
        let next = out.last().unwrap().mul(gen_mat);
        out.push(next);
    }
    out
}

/// The fixed test set: groups of order ≤ 4 with finite modules of size ≤ 256.
pub fn oracle_test_set() -> Vec<(String, GModule)> {
    let mut out: Vec<(String, GModule)> = Vec::new();
    let mut push = |name: &str, m: GModule| out.push((name.to_string(), m));
    for gname in ["Z/1", "Z/2", "Z/3", "Z/4", "(Z/2)^2"] {
        let g = FiniteGroup::named(gname).unwrap();
        for d in [2i64, 3, 4, 8] {
            push(&format!("{gname} trivial Z/{d}"), GModule::trivial(Arc::clone(&g), ints(&[d])));
        }
        push(&format!("{gname} trivial Z/2+Z/4"), GModule::trivial(Arc::clone(&g), ints(&[2, 4])));
        push(&format!("{gname} (Z/2)[G]"), regular_mod(&g, 2));
        if g.order() <= 2 {
            push(&format!("{gname} (Z/16)[G]"), regular_mod(&g, 16));
        } else {
            push(&format!("{gname} (Z/4)[G]"), regular_mod(&g, 4));
        }
    }
    let z2 = FiniteGroup::cyclic(2);
    for d in [3i64, 4, 8, 16] {
        push(&format!("Z/2 sign Z/{d}"), cyclic_scalar(&z2, d, &[1, -1]));
    }
    let swap = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
    push("Z/2 swap (Z/4)^2", module(&z2, &[4, 4], vec![Matrix::identity(2), swap.clone()]));
    let z3 = FiniteGroup::cyclic(3);
    push("Z/3 Z/7 by 2", cyclic_scalar(&z3, 7, &[1, 2, 4]));
    push("Z/3 Z/9 by 4", cyclic_scalar(&z3, 9, &[1, 4, 7]));
    let rot = Matrix::from_i64(&[&[0, 1], &[1, 1]]);
    push("Z/3 F4", module(&z3, &[2, 2], powers(&z3, &rot)));
    let z4 = FiniteGroup::cyclic(4);
    push("Z/4 Z/5 by 2", cyclic_scalar(&z4, 5, &[1, 2, 4, 3]));
    push("Z/4 sign Z/4", cyclic_scalar(&z4, 4, &[1, -1, 1, -1]));
    push("Z/4 sign Z/3", cyclic_scalar(&z4, 3, &[1, -1, 1, -1]));
    push("Z/4 Z/8 by 3", cyclic_scalar(&z4, 8, &[1, 3, 1, 3]));
    let v4 = FiniteGroup::elementary_abelian_2(2);
    push("V4 Z/3 first sign", cyclic_scalar(&v4, 3, &[1, -1, 1, -1]));
    push("V4 Z/4 both signs", cyclic_scalar(&v4, 4, &[1, -1, -1, 1]));
    push("V4 Z/5 sign", cyclic_scalar(&v4, 5, &[1, -1, -1, 1]));
    push(
        "V4 (Z/2)^2 swap",
        module(&v4, &[2, 2], vec![Matrix::identity(2), swap.clone(), Matrix::identity(2), swap]),
    );
    out
}

/// Degrees checked for a module: degree 2 over groups of order 4 needs `|M| ≤ 16`.
pub fn oracle_degrees(m: &GModule) -> Vec<i32> {
    let size = m.size().unwrap();
    if m.group().order() == 4 && size > Int::from(16) {
        vec![-1, 0, 1]
    } else {
        vec![-1, 0, 1, 2]
    }
}

pub fn engine_fingerprint(m: &GModule, n: i32) -> Fingerprint {
    let h = lrdesk::tate::tate_h(m, n).unwrap();
    (1..=m.group().order())
        .map(|k| h.count_killed_by(&Int::from(k)).unwrap().to_usize().unwrap())
        .collect()
}
