//! Dense integer matrices, Smith normal form and the lattice solvers built on it.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Arbitrary-precision integer used for every exact computation.
pub type Int = BigInt;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

/// Row-major dense integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Int;
    fn index(&self, (r, c): (usize, usize)) -> &Int {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Int {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Int>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        Self::from_rows(&rows)
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<Int>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[Int]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, v) in entries.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = Int::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Int) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_rows(&self, range: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(range.len(), self.cols);
        for (k, i) in range.enumerate() {
            for j in 0..self.cols {
                out[(k, j)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_cols(&self, range: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.rows, range.len());
        for i in 0..self.rows {
            for (k, j) in range.clone().enumerate() {
                out[(i, k)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * &other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Rows as `i64`, if every entry fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_i64()).collect()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j];
            if !v.is_zero() {
                let t = v * c;
                self.data[dst * self.cols + j] += t;
            }
        }
    }

    /// col[dst] += c * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src];
            if !v.is_zero() {
                let t = v * c;
                self.data[i * self.cols + dst] += t;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = std::mem::take(&mut self.data[r * self.cols + j]);
            self.data[r * self.cols + j] = -v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = std::mem::take(&mut self.data[i * self.cols + c]);
            self.data[i * self.cols + c] = -v;
        }
    }
}

/// Smith normal form `U · A · V = D` with unimodular `U`, `V`.
///
/// `diag` has length `min(rows, cols)`; entries are nonnegative, each divides
/// the next, and the nonzero ones come first.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<Int>,
    pub rank: usize,
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
}

/// Smith normal form with minimal-absolute-value pivoting (lowest index wins ties).
pub fn smith(a: &Matrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = Matrix::identity(m);
    let mut u_inv = Matrix::identity(m);
    let mut v = Matrix::identity(n);
    let mut v_inv = Matrix::identity(n);

    // Elementary operations applied to D and mirrored on the transforms.
    macro_rules! row_swap {
        ($i:expr, $j:expr) => {{
            d.swap_rows($i, $j);
            u.swap_rows($i, $j);
            u_inv.swap_cols($i, $j);
        }};
    }
    macro_rules! col_swap {
        ($i:expr, $j:expr) => {{
            d.swap_cols($i, $j);
            v.swap_cols($i, $j);
            v_inv.swap_rows($i, $j);
        }};
    }
    macro_rules! row_add {
        ($dst:expr, $src:expr, $c:expr) => {{
            let c: &Int = $c;
            d.add_row_multiple($dst, $src, c);
            u.add_row_multiple($dst, $src, c);
            u_inv.add_col_multiple($src, $dst, &(-c));
        }};
    }
    macro_rules! col_add {
        ($dst:expr, $src:expr, $c:expr) => {{
            let c: &Int = $c;
            d.add_col_multiple($dst, $src, c);
            v.add_col_multiple($dst, $src, c);
            v_inv.add_row_multiple($src, $dst, &(-c));
        }};
    }

    let steps = m.min(n);
    let mut rank = 0;
    for t in 0..steps {
        loop {
            // Pivot: minimal nonzero |entry| in the active block, scan order breaks ties.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &d[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if x.abs() < d[(bi, bj)].abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(d, u, u_inv, v, v_inv, rank);
            };
            row_swap!(t, pi);
            col_swap!(t, pj);

            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                row_add!(i, t, &(-q));
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                col_add!(j, t, &(-q));
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility of the remaining block by the pivot.
            let p = d[(t, t)].clone();
            let mut offender = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !d[(i, j)].is_multiple_of(&p) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    row_add!(t, i, &Int::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        rank += 1;
    }
    finish(d, u, u_inv, v, v_inv, rank)
}

fn finish(d: Matrix, u: Matrix, u_inv: Matrix, v: Matrix, v_inv: Matrix, rank: usize) -> Smith {
    let steps = d.rows.min(d.cols);
    let diag = (0..steps).map(|i| d[(i, i)].clone()).collect();
    Smith { diag, rank, u, u_inv, v, v_inv }
}

/// Precomputed Smith data for repeatedly solving `A x = b` over the integers.
#[derive(Clone, Debug)]
pub struct LatticeSolver {
    a: Matrix,
    snf: Smith,
}

impl LatticeSolver {
    pub fn new(a: &Matrix) -> Self {
        LatticeSolver { a: a.clone(), snf: smith(a) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn smith(&self) -> &Smith {
        &self.snf
    }

    /// Some integral `x` with `A x = b`, or `None` if there is none.
    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.a.rows);
        let y = self.snf.u.mul_vec(b);
        let mut z = vec![Int::zero(); self.a.cols];
        for (i, yi) in y.iter().enumerate() {
            if i < self.snf.rank {
                let di = &self.snf.diag[i];
                if !yi.is_multiple_of(di) {
                    return None;
                }
                z[i] = yi / di;
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&z))
    }

    /// Basis of the integer kernel, as columns.
    pub fn kernel(&self) -> Matrix {
        self.snf.v.select_cols(self.snf.rank..self.a.cols)
    }
}

pub fn solve(a: &Matrix, b: &[Int]) -> Option<Vec<Int>> {
    LatticeSolver::new(a).solve(b)
}

pub fn kernel(a: &Matrix) -> Matrix {
    LatticeSolver::new(a).kernel()
}

/// Basis (as columns) of the lattice spanned by the columns of `gens`.
pub fn image_basis(gens: &Matrix) -> Matrix {
    let s = smith(gens);
    let mut cols = Vec::with_capacity(s.rank);
    for i in 0..s.rank {
        let c: Vec<Int> = s.u_inv.column(i).into_iter().map(|x| x * &s.diag[i]).collect();
        cols.push(c);
    }
    Matrix::from_columns(gens.rows, &cols)
}

/// Rank of an integer matrix.
pub fn rank(a: &Matrix) -> usize {
    smith(a).rank
}

/// A subquotient `K / B` of `Z^n` with `B ⊆ K`, presented in invariant-factor form.
///
/// Coordinates of a class are integers reduced modulo the factors (free
/// factors, recorded as 0, are left unreduced).
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    k_basis: Matrix,
    k_solver: LatticeSolver,
    /// change of basis on K-coordinates (row transform from the Smith form)
    u: Matrix,
    /// all factors, including the trivial ones equal to 1
    all_factors: Vec<Int>,
    /// indices into `all_factors` that are not 1
    kept: Vec<usize>,
    reps: Vec<Vec<Int>>,
}

impl Subquotient {
    /// `k_gens` and `b_gens` are generator columns in `Z^ambient`; `B ⊆ K` is checked.
    pub fn new(ambient: usize, k_gens: &Matrix, b_gens: &Matrix) -> Result<Self, String> {
        assert_eq!(k_gens.rows, ambient);
        assert_eq!(b_gens.rows, ambient);
        let k_basis = image_basis(k_gens);
        let k = k_basis.cols;
        let k_solver = LatticeSolver::new(&k_basis);
        let mut coords = Vec::with_capacity(b_gens.cols);
        for j in 0..b_gens.cols {
            let col = b_gens.column(j);
            match k_solver.solve(&col) {
                Some(x) => coords.push(x),
                None => return Err(format!("generator {j} of the sublattice is not in the ambient lattice")),
            }
        }
        let x = Matrix::from_columns(k, &coords);
        let s = smith(&x);
        let mut all_factors = vec![Int::zero(); k];
        for i in 0..s.rank {
            all_factors[i] = s.diag[i].clone();
        }
        let kept: Vec<usize> = (0..k).filter(|&i| !all_factors[i].is_one()).collect();
        let reps_mat = k_basis.mul(&s.u_inv);
        let reps = kept.iter().map(|&i| reps_mat.column(i)).collect();
        Ok(Subquotient { ambient, k_basis, k_solver, u: s.u, all_factors, kept, reps })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Invariant factors of the quotient, trivial ones dropped (0 = free).
    pub fn factors(&self) -> Vec<Int> {
        self.kept.iter().map(|&i| self.all_factors[i].clone()).collect()
    }

    /// Representative vectors in `Z^ambient` for the generators.
    pub fn representatives(&self) -> &[Vec<Int>] {
        &self.reps
    }

    pub fn basis_of_k(&self) -> &Matrix {
        &self.k_basis
    }

    pub fn contains(&self, z: &[Int]) -> bool {
        self.k_solver.solve(z).is_some()
    }

    /// Class coordinates of `z ∈ K`, or `None` if `z ∉ K`.
    pub fn coords(&self, z: &[Int]) -> Option<Vec<Int>> {
        let x = self.k_solver.solve(z)?;
        let y = self.u.mul_vec(&x);
        Some(
            self.kept
                .iter()
                .map(|&i| {
                    let d = &self.all_factors[i];
                    if d.is_zero() {
                        y[i].clone()
                    } else {
                        y[i].mod_floor(d)
                    }
                })
                .collect(),
        )
    }

    /// Vector in `Z^ambient` representing the class with the given coordinates.
    pub fn lift(&self, coords: &[Int]) -> Vec<Int> {
        assert_eq!(coords.len(), self.reps.len());
        let mut out = vec![Int::zero(); self.ambient];
        for (c, r) in coords.iter().zip(&self.reps) {
            for (o, x) in out.iter_mut().zip(r) {
                *o += c * x;
            }
        }
        out
    }

    /// Order of the quotient, `None` if infinite.
    pub fn order(&self) -> Option<Int> {
        let mut o = Int::one();
        for f in self.factors() {
            if f.is_zero() {
                return None;
            }
            o *= f;
        }
        Some(o)
    }
}

/// Reduce `x` modulo `d` into `[0, d)`; `d = 0` leaves `x` unchanged.
pub fn reduce(x: &Int, d: &Int) -> Int {
    if d.is_zero() {
        x.clone()
    } else {
        x.mod_floor(d)
    }
}

pub fn vec_add(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Int], s: &Int) -> Vec<Int> {
    a.iter().map(|x| x * s).collect()
}

pub fn vec_neg(a: &[Int]) -> Vec<Int> {
    a.iter().map(|x| -x).collect()
}

pub fn zero_vec(n: usize) -> Vec<Int> {
    vec![Int::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Int> {
    let mut v = zero_vec(n);
    v[i] = Int::one();
    v
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| int(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(a: &Matrix) {
        let s = smith(a);
        let d = s.u.mul(a).mul(&s.v);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j {
                    assert!(d[(i, j)].is_zero(), "off-diagonal entry in {d:?}");
                } else {
                    assert_eq!(d[(i, i)], s.diag[i]);
                }
            }
        }
        assert_eq!(s.u.mul(&s.u_inv), Matrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv), Matrix::identity(a.cols()));
        for w in s.diag.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            } else if w[0].is_zero() {
                assert!(w[1].is_zero());
            }
        }
    }

    #[test]
    fn smith_small_examples() {
        let a = Matrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&a);
        assert_eq!(s.diag, ints(&[2, 6, 12]));
        check_smith(&a);
        check_smith(&Matrix::from_i64(&[&[0, 0], &[0, 0]]));
        check_smith(&Matrix::from_i64(&[&[4, 6]]));
        check_smith(&Matrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(smith(&Matrix::from_i64(&[&[2, 0], &[0, 3]])).diag, ints(&[1, 6]));
    }

    #[test]
    fn solve_and_kernel() {
        let a = Matrix::from_i64(&[&[1, 1, 0], &[0, 2, 2]]);
        let x = solve(&a, &ints(&[3, 4])).unwrap();
        assert_eq!(a.mul_vec(&x), ints(&[3, 4]));
        assert!(solve(&a, &ints(&[0, 1])).is_none());
        let k = kernel(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn subquotient_cyclic() {
        // K = Z^2, B = span{(2,0),(0,3)} -> Z/6
        let k = Matrix::identity(2);
        let b = Matrix::from_i64(&[&[2, 0], &[0, 3]]);
        let sq = Subquotient::new(2, &k, &b).unwrap();
        assert_eq!(sq.factors(), ints(&[6]));
        let c = sq.coords(&ints(&[1, 1])).unwrap();
        assert_ne!(c[0], int(0));
        assert_eq!(sq.coords(&ints(&[2, 3])).unwrap(), ints(&[0]));
        let back = sq.lift(&c);
        assert_eq!(sq.coords(&back).unwrap(), c);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = Matrix> {
            (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-9i64..10, r * c).prop_map(move |v| {
                    let rows: Vec<Vec<Int>> = v.chunks(c).map(|ch| ints(ch)).collect();
                    Matrix::from_rows(&rows)
                })
            })
        }

        proptest! {
            #[test]
            fn smith_is_a_normal_form(a in small_matrix()) {
                check_smith(&a);
            }

            #[test]
            fn smith_is_idempotent(a in small_matrix()) {
                let s = smith(&a);
                let d = s.u.mul(&a).mul(&s.v);
                let s2 = smith(&d);
                prop_assert_eq!(s2.diag, s.diag);
            }

            #[test]
            fn solver_round_trip(a in small_matrix(), seed in proptest::collection::vec(-5i64..6, 5)) {
                let x: Vec<Int> = ints(&seed[..a.cols()]);
                let b = a.mul_vec(&x);
                let y = solve(&a, &b).expect("consistent system");
                prop_assert_eq!(a.mul_vec(&y), b);
            }
        }
    }
}
