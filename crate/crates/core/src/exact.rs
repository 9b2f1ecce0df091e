//! Arbitrary-precision integer and rational linear algebra.
//!
//! Column-style Hermite normal form is the one primitive behind kernels,
//! complements and lattice bases. Pivoting is deterministic: the entry of
//! smallest nonzero absolute value wins, ties go to the lowest column index.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_from_int(v: &Int) -> Rat {
    BigRational::from_integer(v.clone())
}

/// Parses `p/q` or `p`. Decimal points and exponents are rejected.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(p, q))
}

pub fn parse_int(s: &str) -> Result<Int> {
    s.trim().parse().map_err(|_| Error::Parse(format!("invalid integer literal {s:?}")))
}

pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_integral(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Rational vector in lowest terms (guaranteed by `BigRational`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RatVector(pub Vec<Rat>);

impl RatVector {
    pub fn new(v: Vec<Rat>) -> Self {
        RatVector(v)
    }

    pub fn zeros(n: usize) -> Self {
        RatVector(vec![Rat::zero(); n])
    }

    pub fn from_ints(v: &[Int]) -> Self {
        RatVector(v.iter().map(rat_from_int).collect())
    }

    /// Comma-separated rational literals, e.g. `"-11/6,-5/3"`.
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(RatVector(Vec::new()));
        }
        s.split(',').map(parse_rat).collect::<Result<Vec<_>>>().map(RatVector)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(rat_to_string).join(","))
    }
}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Int>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    /// Builds from small literal rows. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix literal");
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flat_map(|r| r.iter().map(|&v| int(v))).collect(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<Int>>, cols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(IntMatrix { rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[Vec<Int>], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!("column {j} has length {}", c.len())));
            }
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Int> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn mul_rat_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Rat::zero(), |acc, j| acc + rat_from_int(self.get(i, j)) * &v[j])
            })
            .collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        let mut m = Self::zeros(self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut m = Self::zeros(idx.len(), self.cols);
        for (ii, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m.set(ii, j, self.get(i, j).clone());
            }
        }
        m
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        IntMatrix::from_columns(&cols, self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn zero_column(&self) -> Option<usize> {
        (0..self.cols).find(|&j| (0..self.rows).all(|i| self.get(i, j).is_zero()))
    }

    pub fn to_rat_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| rat_from_int(self.get(i, j))).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        rref(self.to_rat_rows(), self.cols).1.len()
    }

    /// Determinant of a square matrix (Bareiss fraction-free elimination).
    pub fn det(&self) -> Result<Int> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut a: Vec<Vec<Int>> = self.row_vecs();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * a[n - 1][n - 1].clone())
    }

    fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// column[target] -= factor * column[source]
    fn axpy_column(&mut self, target: usize, factor: &Int, source: usize) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, target) - factor * self.get(i, source);
            self.set(i, target, v);
        }
    }

    fn negate_column(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = (0..self.rows).map(|i| format!("[{}]", self.row(i).iter().join(",")));
        write!(f, "[{}]", rows.format(","))
    }
}

/// Reduced row echelon form over the rationals. Returns the reduced rows and
/// the pivot columns.
pub fn rref(mut rows: Vec<Vec<Rat>>, ncols: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..rows[i].len() {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

/// `A * U = H` with `U` unimodular and `H` in column Hermite form: the first
/// `rank` columns carry strictly increasing pivot rows with positive pivots
/// and entries left of each pivot reduced into `[0, pivot)`; the remaining
/// columns are zero.
#[derive(Clone, Debug)]
pub struct ColumnHermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
}

pub fn column_hermite(a: &IntMatrix) -> ColumnHermite {
    let (d, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut k = 0;
    let mut pivot_rows = Vec::new();
    for i in 0..d {
        if k == n {
            break;
        }
        loop {
            let piv = (k..n)
                .filter(|&c| !h.get(i, c).is_zero())
                .min_by(|&x, &y| h.get(i, x).abs().cmp(&h.get(i, y).abs()).then(x.cmp(&y)));
            let Some(piv) = piv else { break };
            h.swap_columns(piv, k);
            u.swap_columns(piv, k);
            let mut clean = true;
            for c in k + 1..n {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c).div_floor(h.get(i, k));
                h.axpy_column(c, &q, k);
                u.axpy_column(c, &q, k);
                if !h.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(i, k).is_zero() {
            continue;
        }
        if h.get(i, k).is_negative() {
            h.negate_column(k);
            u.negate_column(k);
        }
        for c in 0..k {
            let q = h.get(i, c).div_floor(h.get(i, k));
            h.axpy_column(c, &q, k);
            u.axpy_column(c, &q, k);
        }
        pivot_rows.push(i);
        k += 1;
    }
    ColumnHermite { h, u, rank: k, pivot_rows }
}

/// Canonical basis (column Hermite form) of the lattice spanned by the
/// columns of `gens`. Dependent generators are absorbed.
pub fn lattice_basis(gens: &IntMatrix) -> IntMatrix {
    let ch = column_hermite(gens);
    ch.h.select_columns(&(0..ch.rank).collect::<Vec<_>>())
}

/// Integer kernel of any integer matrix, as canonical basis columns.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let ch = column_hermite(a);
    let raw = ch.u.select_columns(&(ch.rank..a.cols()).collect::<Vec<_>>());
    if raw.cols() == 0 {
        return raw;
    }
    lattice_basis(&raw)
}

/// Z-basis of `ker_Z(A)` for a full-row-rank `A`, as columns.
pub fn kernel_basis(a: &IntMatrix) -> Result<IntMatrix> {
    let r = a.rank();
    if r < a.rows() {
        return Err(Error::NotFullRank(format!("rank {r} < {} rows", a.rows())));
    }
    Ok(integer_kernel(a))
}

/// A `(n-m) x n` matrix of full rank whose rows are a Z-basis of the
/// saturated lattice `{a : a B = 0}`.
pub fn complement_matrix(b: &IntMatrix) -> Result<IntMatrix> {
    let r = b.rank();
    if r < b.cols() {
        return Err(Error::NotFullRank(format!("rank {r} < {} columns", b.cols())));
    }
    if b.rows() == b.cols() {
        return Err(Error::TrivialComplement);
    }
    Ok(integer_kernel(&b.transpose()).transpose())
}

/// Unique rational solution of `basis * x = target` when the columns of
/// `basis` are independent and the system is consistent.
pub fn solve_in_span(basis: &IntMatrix, target: &[Rat]) -> Option<Vec<Rat>> {
    let (n, k) = (basis.rows(), basis.cols());
    assert_eq!(target.len(), n, "target length");
    let mut rows = basis.to_rat_rows();
    for (row, t) in rows.iter_mut().zip(target) {
        row.push(t.clone());
    }
    let (red, pivots) = rref(rows, k + 1);
    if pivots.contains(&k) || pivots.len() < k {
        return None;
    }
    Some((0..k).map(|j| red[j][k].clone()).collect())
}

/// Integer coordinates of `v` in the lattice spanned by the independent
/// columns of `basis`, if `v` lies in it.
pub fn lattice_coordinates(basis: &IntMatrix, v: &[Int]) -> Option<Vec<Int>> {
    let target: Vec<Rat> = v.iter().map(rat_from_int).collect();
    let x = solve_in_span(basis, &target)?;
    x.iter().all(is_integral).then(|| x.iter().map(|r| r.numer().clone()).collect())
}

/// True iff every column of `a` is an integer combination of the columns of
/// `b`. `b` may have dependent columns.
pub fn lattice_contains_all(b: &IntMatrix, a: &IntMatrix) -> bool {
    let basis = lattice_basis(b);
    a.columns().iter().all(|c| lattice_coordinates(&basis, c).is_some())
}

pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.rows() == b.rows() && lattice_contains_all(a, b) && lattice_contains_all(b, a)
}

/// Index of the lattice spanned by the (independent) columns of `b` inside
/// its saturation `QB ∩ Z^n`.
pub fn saturation_index(b: &IntMatrix) -> Int {
    let basis = lattice_basis(b);
    if basis.cols() == 0 {
        return Int::one();
    }
    // gcd of maximal minors / gcd of maximal minors of the saturation, the
    // latter being 1; the gcd of maximal minors is the product of the
    // invariant factors.
    let k = basis.cols();
    let mut g = Int::zero();
    for rows in (0..basis.rows()).combinations(k) {
        let det = basis.select_rows(&rows).det().expect("square");
        g = g.gcd(&det);
    }
    g
}

/// One rational `v` with `A v = beta`.
pub fn solve_rational(a: &IntMatrix, beta: &RatVector) -> Result<RatVector> {
    if beta.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "beta has length {}, A has {} rows",
            beta.len(),
            a.rows()
        )));
    }
    let mut rows = a.to_rat_rows();
    for (row, b) in rows.iter_mut().zip(&beta.0) {
        row.push(b.clone());
    }
    let (red, pivots) = rref(rows, a.cols() + 1);
    if pivots.contains(&a.cols()) || pivots.len() < a.rows() {
        return Err(Error::NotFullRank(format!("rank {} < {} rows", pivots.len(), a.rows())));
    }
    let mut v = vec![Rat::zero(); a.cols()];
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = red[r][a.cols()].clone();
    }
    Ok(RatVector(v))
}

/// Clears denominators and divides by the content.
pub fn primitive_integer(v: &[Rat]) -> Vec<Int> {
    let l = v.iter().fold(Int::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<Int> = v.iter().map(|r| (r * rat_from_int(&l)).to_integer()).collect();
    let g = ints.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// A functional `c` with `c . a_j > 0` for every column, if one exists.
///
/// `{c : cA >= 1}` is pointed when `A` has full row rank, so it is nonempty
/// iff it has a vertex; vertices are cut out by `d` tight columns.
pub fn positive_functional(a: &IntMatrix) -> Option<Vec<Int>> {
    let (d, n) = (a.rows(), a.cols());
    if d == 0 || a.rank() < d {
        return None;
    }
    for subset in (0..n).combinations(d) {
        let sub = a.select_columns(&subset).transpose();
        let ones = vec![Rat::one(); d];
        let Some(c) = solve_in_span(&sub, &ones) else { continue };
        let ok = (0..n).all(|j| {
            let val = (0..d).fold(Rat::zero(), |acc, i| acc + &c[i] * rat_from_int(a.get(i, j)));
            val >= Rat::one()
        });
        if ok {
            return Some(primitive_integer(&c));
        }
    }
    None
}

/// Outcome of [`span_mixedness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mixedness {
    /// `functional . complement > 0` componentwise, so the column span of B
    /// meets the closed orthant only in 0.
    Mixed { complement: IntMatrix, functional: Vec<Int> },
    /// `vector = B * combination` is nonzero and has no negative entry (or no
    /// positive one).
    NotMixed { vector: Vec<Int>, combination: Vec<Int> },
}

impl Mixedness {
    pub fn is_mixed(&self) -> bool {
        matches!(self, Mixedness::Mixed { .. })
    }

    /// Re-checks the witness against `b` exactly.
    pub fn verify(&self, b: &IntMatrix) -> bool {
        match self {
            Mixedness::Mixed { complement, functional } => {
                let Ok(zero) = complement.mul(b) else { return false };
                if !zero.is_zero() || functional.len() != complement.rows() {
                    return false;
                }
                (0..complement.cols()).all(|j| {
                    let s: Int = (0..complement.rows()).map(|i| &functional[i] * complement.get(i, j)).sum();
                    s.is_positive()
                })
            }
            Mixedness::NotMixed { vector, combination } => {
                combination.len() == b.cols()
                    && b.mul_vec(combination) == *vector
                    && vector.iter().any(|x| !x.is_zero())
                    && (vector.iter().all(|x| !x.is_negative()) || vector.iter().all(|x| !x.is_positive()))
            }
        }
    }
}

/// Decides whether every nonzero vector of the column span of `b` has both a
/// positive and a negative entry.
pub fn span_mixedness(b: &IntMatrix) -> Mixedness {
    let complement = integer_kernel(&b.transpose()).transpose();
    if let Some(functional) = positive_functional(&complement) {
        return Mixedness::Mixed { complement, functional };
    }
    // Gordan: some nonzero lambda >= 0 lies in ker(complement) = QB. Extreme
    // rays of that cone have support of size at most rank + 1.
    let n = b.rows();
    let r = complement.rank();
    for size in 1..=(r + 1).min(n) {
        for support in (0..n).combinations(size) {
            let sub = complement.select_columns(&support);
            let ker = integer_kernel(&sub);
            if ker.cols() != 1 {
                continue;
            }
            let k = ker.column(0);
            let all_pos = k.iter().all(|x| x.is_positive());
            let all_neg = k.iter().all(|x| x.is_negative());
            if !(all_pos || all_neg) {
                continue;
            }
            let mut lambda = vec![Rat::zero(); n];
            for (&j, x) in support.iter().zip(&k) {
                lambda[j] = rat_from_int(&x.abs());
            }
            let basis_idx = independent_columns(b);
            let basis = b.select_columns(&basis_idx);
            let y = solve_in_span(&basis, &lambda).expect("lambda lies in the span of B");
            let yi = primitive_integer(&y);
            let mut combination = vec![Int::zero(); b.cols()];
            for (&j, v) in basis_idx.iter().zip(yi) {
                combination[j] = v;
            }
            let vector = b.mul_vec(&combination);
            return Mixedness::NotMixed { vector, combination };
        }
    }
    unreachable!("Gordan alternative: a nonnegative kernel ray must exist")
}

/// Indices of a maximal set of linearly independent columns (greedy, in order).
pub fn independent_columns(b: &IntMatrix) -> Vec<usize> {
    let (_, pivots) = rref(b.to_rat_rows(), b.cols());
    pivots
}

/// A facet of `R_{>=0} A` with its primitive support function.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConeFacet {
    /// Zero-based column indices on the facet.
    pub sigma: Vec<usize>,
    /// Linear form on Q^d with `nu(ZA) = Z`.
    pub nu: RatVector,
}

impl ConeFacet {
    pub fn eval(&self, p: &[Rat]) -> Rat {
        self.nu.0.iter().zip(p).fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn eval_int(&self, p: &[Int]) -> Rat {
        self.nu.0.iter().zip(p).fold(Rat::zero(), |acc, (a, b)| acc + a * rat_from_int(b))
    }
}

/// All facets of the cone spanned by the columns of `a`.
pub fn facets(a: &IntMatrix) -> Result<Vec<ConeFacet>> {
    if let Some(j) = a.zero_column() {
        return Err(Error::ZeroColumn(j + 1));
    }
    let (d, n) = (a.rows(), a.cols());
    if a.rank() < d {
        return Err(Error::NotFullRank(format!("rank {} < {d} rows", a.rank())));
    }
    if positive_functional(a).is_none() {
        return Err(Error::NotPointed);
    }
    let columns = a.columns();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for subset in (0..n).combinations(d - 1) {
        let sub = a.select_columns(&subset);
        if sub.rank() != d - 1 {
            continue;
        }
        let normal = integer_kernel(&sub.transpose());
        debug_assert_eq!(normal.cols(), 1);
        let mut nu = normal.column(0);
        let vals: Vec<Int> = columns
            .iter()
            .map(|c| nu.iter().zip(c).map(|(x, y)| x * y).sum())
            .collect();
        let (pos, neg) = (vals.iter().any(|v| v.is_positive()), vals.iter().any(|v| v.is_negative()));
        if pos && neg {
            continue;
        }
        let vals: Vec<Int> = if neg {
            nu = nu.into_iter().map(|x| -x).collect();
            vals.into_iter().map(|x| -x).collect()
        } else {
            vals
        };
        let sigma: Vec<usize> = (0..n).filter(|&j| vals[j].is_zero()).collect();
        if !seen.insert(sigma.clone()) {
            continue;
        }
        let g = vals.iter().fold(Int::zero(), |acc, v| acc.gcd(v));
        let nu = RatVector(nu.iter().map(|x| Rat::new(x.clone(), g.clone())).collect());
        out.push(ConeFacet { sigma, nu });
    }
    out.sort();
    Ok(out)
}

/// Facet values of `beta` and the first facet where the value is an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resonance {
    pub facets: Vec<ConeFacet>,
    pub values: Vec<Rat>,
    pub violating: Option<usize>,
}

impl Resonance {
    pub fn is_nonresonant(&self) -> bool {
        self.violating.is_none()
    }

    pub fn violating_facet(&self) -> Option<&ConeFacet> {
        self.violating.map(|i| &self.facets[i])
    }
}

/// Checks `nu_sigma(beta)` against the integers for every facet. Genericity
/// beyond these hyperplanes is not checkable and is not attempted.
pub fn is_nonresonant(a: &IntMatrix, beta: &RatVector) -> Result<Resonance> {
    if beta.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "beta has length {}, A has {} rows",
            beta.len(),
            a.rows()
        )));
    }
    let facets = facets(a)?;
    let values: Vec<Rat> = facets.iter().map(|f| f.eval(&beta.0)).collect();
    let violating = values.iter().position(is_integral);
    Ok(Resonance { facets, values, violating })
}

/// `beta + A gamma`.
pub fn shift_parameter(a: &IntMatrix, beta: &RatVector, gamma: &[Int]) -> RatVector {
    let s = a.mul_vec(gamma);
    RatVector(beta.0.iter().zip(s).map(|(b, x)| b + rat_from_int(&x)).collect())
}
