//! Exact graded linear algebra: dense matrices, reduced-echelon subspaces,
//! per-degree subspaces and degree-preserving maps.
//!
//! A graded vector is stored flat: the coordinates of degree 0 first, then
//! degree 1, and so on, as laid out by a [`Grading`].

use std::fmt;

use serde::Serialize;

use crate::field::Field;
use crate::SgkError;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Display> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(|x| x.to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<F>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix column");
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    t.set(j, i, x.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a.clone() * b.clone());
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![F::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o = o.clone() + a.clone() * x.clone();
                }
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inverse().expect("pivot is nonzero");
            for j in c..m.cols {
                let x = m.get(r, j).clone();
                if !x.is_zero() {
                    m.set(r, j, x * inv.clone());
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let b = m.get(r, j).clone();
                    if b.is_zero() {
                        continue;
                    }
                    let cur = m.get(i, j).clone();
                    m.set(i, j, cur - f.clone() * b);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the null space `{v : A v = 0}`: one vector per
    /// free column, with a 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                let x = r.get(row, free);
                if !x.is_zero() {
                    v[p] = -x.clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Null-space basis of a linear system `A v = 0`.
pub fn solve<F: Field>(a: &Matrix<F>) -> Vec<Vec<F>> {
    a.nullspace()
}

/// A particular solution of `A v = b` with all free variables set to zero,
/// or `None` when the system is inconsistent.
pub fn solve_particular<F: Field>(a: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    assert_eq!(a.rows(), b.len());
    let mut aug = Matrix::zeros(a.rows(), a.cols() + 1);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j);
            if !x.is_zero() {
                aug.set(i, j, x.clone());
            }
        }
        aug.set(i, a.cols(), b[i].clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&a.cols()) {
        return None;
    }
    let mut v = vec![F::zero(); a.cols()];
    for (row, &p) in pivots.iter().enumerate() {
        v[p] = r.get(row, a.cols()).clone();
    }
    Some(v)
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn add_scaled<F: Field>(acc: &mut [F], c: &F, v: &[F]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = a.clone() + c.clone() * x.clone();
        }
    }
}

/// A subspace of `F^n` kept in reduced row echelon form, so equal
/// subspaces have identical representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let mut s = Self::zero(ambient);
        for i in 0..ambient {
            let mut v = vec![F::zero(); ambient];
            v[i] = F::one();
            s.rows.push(v);
            s.pivots.push(i);
        }
        s
    }

    pub fn span<I: IntoIterator<Item = Vec<F>>>(ambient: usize, vectors: I) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(&v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after elimination against the echelon basis.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient, "vector outside ambient space");
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let c = w[p].clone();
            for j in p..self.ambient {
                if !row[j].is_zero() {
                    w[j] = w[j].clone() - c.clone() * row[j].clone();
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[F]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inverse().expect("nonzero");
        for x in w.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for j in p..self.ambient {
                if !w[j].is_zero() {
                    row[j] = row[j].clone() - c.clone() * w[j].clone();
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, w);
        self.pivots.insert(at, p);
        true
    }

    /// Coefficients of `v` in the echelon basis, when `v` lies in the span.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>, SgkError> {
        self.check_same(other)?;
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        Ok(s)
    }

    /// Intersection via the Zassenhaus construction.
    pub fn intersect(&self, other: &Subspace<F>) -> Result<Subspace<F>, SgkError> {
        self.check_same(other)?;
        let n = self.ambient;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(n));
        }
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for r in &self.rows {
            let mut v = r.clone();
            v.extend(r.iter().cloned());
            rows.push(v);
        }
        for r in &other.rows {
            let mut v = r.clone();
            v.extend(std::iter::repeat_n(F::zero(), n));
            rows.push(v);
        }
        let (red, pivots) = Matrix::from_rows(rows, 2 * n).rref();
        let mut out = Self::zero(n);
        for (i, &p) in pivots.iter().enumerate() {
            if p >= n {
                out.insert(&red.row(i)[n..]);
            }
        }
        Ok(out)
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }

    /// Columns that carry no pivot; the unit vectors there span a
    /// complement, which is how quotients are coordinatised.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of the class `v + self` in the quotient.
    pub fn quotient_coords(&self, v: &[F]) -> Vec<F> {
        let w = self.reduce(v);
        self.non_pivots().into_iter().map(|c| w[c].clone()).collect()
    }

    /// The canonical representative of a quotient class.
    pub fn quotient_lift(&self, coords: &[F]) -> Vec<F> {
        let np = self.non_pivots();
        assert_eq!(np.len(), coords.len());
        let mut v = vec![F::zero(); self.ambient];
        for (c, x) in np.into_iter().zip(coords) {
            v[c] = x.clone();
        }
        v
    }

    /// Image under a linear map given as a matrix (target x ambient).
    pub fn image(&self, map: &Matrix<F>) -> Subspace<F> {
        Subspace::span(map.rows(), self.rows.iter().map(|r| map.apply(r)))
    }

    fn check_same(&self, other: &Subspace<F>) -> Result<(), SgkError> {
        if self.ambient != other.ambient {
            return Err(SgkError::WindowMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }
}

/// Echelon span of a growing list of generators that remembers how each
/// echelon row is built from the independent generators, so membership
/// queries also return coefficients.
#[derive(Clone, Debug)]
pub struct SpanTracker<F> {
    ambient: usize,
    rows: Vec<(usize, Vec<F>, Vec<F>)>,
    independent: Vec<usize>,
    offered: usize,
}

impl<F: Field> SpanTracker<F> {
    pub fn new(ambient: usize) -> Self {
        SpanTracker {
            ambient,
            rows: Vec::new(),
            independent: Vec::new(),
            offered: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Indices (in offer order) of the generators kept as independent.
    pub fn independent(&self) -> &[usize] {
        &self.independent
    }

    fn reduce(&self, v: &[F]) -> (Vec<F>, Vec<F>) {
        let mut w = v.to_vec();
        let mut combo = vec![F::zero(); self.independent.len()];
        for (p, row, c) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let f = w[*p].clone();
            add_scaled(&mut w, &-f.clone(), row);
            for (x, y) in combo.iter_mut().zip(c) {
                if !y.is_zero() {
                    *x = x.clone() + f.clone() * y.clone();
                }
            }
        }
        (w, combo)
    }

    /// Offers a generator; returns whether it enlarged the span.
    pub fn offer(&mut self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector outside ambient space");
        let index = self.offered;
        self.offered += 1;
        let (w, combo) = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inverse().expect("nonzero");
        let k = self.independent.len();
        self.independent.push(index);
        for (_, _, c) in self.rows.iter_mut() {
            c.push(F::zero());
        }
        // v - Σ combo·gens = w, so w/w_p = (e_k - combo)/w_p
        let mut c: Vec<F> = combo.iter().map(|x| -x.clone() * inv.clone()).collect();
        c.push(inv.clone());
        debug_assert_eq!(c.len(), k + 1);
        let row: Vec<F> = w.iter().map(|x| x.clone() * inv.clone()).collect();
        self.rows.push((p, row, c));
        true
    }

    /// Coefficients over [`Self::independent`] expressing `v`, if it lies in
    /// the span.
    pub fn express(&self, v: &[F]) -> Option<Vec<F>> {
        let (w, combo) = self.reduce(v);
        if is_zero_vec(&w) {
            Some(combo)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[F]) -> bool {
        is_zero_vec(&self.reduce(v).0)
    }
}

/// Layout of a truncated graded space: `dims[d]` coordinates in degree `d`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Grading {
    dims: Vec<usize>,
    offsets: Vec<usize>,
}

impl Grading {
    pub fn new(dims: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(dims.len() + 1);
        let mut acc = 0;
        for &d in &dims {
            offsets.push(acc);
            acc += d;
        }
        offsets.push(acc);
        Grading { dims, offsets }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Largest degree present (the window bound).
    pub fn top(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn degrees(&self) -> usize {
        self.dims.len()
    }

    pub fn total(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn dim(&self, d: usize) -> usize {
        self.dims.get(d).copied().unwrap_or(0)
    }

    pub fn range(&self, d: usize) -> std::ops::Range<usize> {
        self.offsets[d]..self.offsets[d + 1]
    }

    pub fn degree_of(&self, flat: usize) -> usize {
        self.offsets.partition_point(|&o| o <= flat) - 1
    }

    /// The degree-`d` component of a flat vector, still flat.
    pub fn component<F: Field>(&self, v: &[F], d: usize) -> Vec<F> {
        let mut w = vec![F::zero(); self.total()];
        for i in self.range(d) {
            w[i] = v[i].clone();
        }
        w
    }

    /// Degree-`d` coordinates only.
    pub fn block<F: Field>(&self, v: &[F], d: usize) -> Vec<F> {
        v[self.range(d)].to_vec()
    }

    pub fn embed<F: Field>(&self, block: &[F], d: usize) -> Vec<F> {
        let mut w = vec![F::zero(); self.total()];
        for (i, x) in self.range(d).zip(block) {
            w[i] = x.clone();
        }
        w
    }

    /// Degrees in which `v` has a nonzero component.
    pub fn support<F: Field>(&self, v: &[F]) -> Vec<usize> {
        (0..self.degrees())
            .filter(|&d| v[self.range(d)].iter().any(|x| !x.is_zero()))
            .collect()
    }

    /// Highest degree with nonzero component, `None` for the zero vector.
    pub fn max_degree<F: Field>(&self, v: &[F]) -> Option<usize> {
        self.support(v).last().copied()
    }

    /// Restriction of the layout to degrees `0..=top`.
    pub fn truncate(&self, top: usize) -> Grading {
        Grading::new(self.dims[..=top.min(self.top())].to_vec())
    }
}

/// Per-degree subspaces: a carrier for SG submodules of a window.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedSubspace<F> {
    grading: Grading,
    slices: Vec<Subspace<F>>,
}

impl<F: Field> GradedSubspace<F> {
    pub fn zero(grading: &Grading) -> Self {
        GradedSubspace {
            slices: grading.dims().iter().map(|&d| Subspace::zero(d)).collect(),
            grading: grading.clone(),
        }
    }

    pub fn full(grading: &Grading) -> Self {
        GradedSubspace {
            slices: grading.dims().iter().map(|&d| Subspace::full(d)).collect(),
            grading: grading.clone(),
        }
    }

    pub fn from_slices(grading: &Grading, slices: Vec<Subspace<F>>) -> Self {
        assert_eq!(slices.len(), grading.degrees());
        for (d, s) in slices.iter().enumerate() {
            assert_eq!(s.ambient(), grading.dim(d));
        }
        GradedSubspace {
            grading: grading.clone(),
            slices,
        }
    }

    /// Span of the homogeneous components of the given flat vectors.
    pub fn from_components<'a, I: IntoIterator<Item = &'a Vec<F>>>(grading: &Grading, vectors: I) -> Self {
        let mut g = Self::zero(grading);
        for v in vectors {
            for d in grading.support(v) {
                g.slices[d].insert(&grading.block(v, d));
            }
        }
        g
    }

    /// `N ∩ M_d` for every degree `d` of a flat subspace `N`.
    pub fn degreewise_part(grading: &Grading, flat: &Subspace<F>) -> Self {
        let n = grading.total();
        let mut slices = Vec::with_capacity(grading.degrees());
        for d in 0..grading.degrees() {
            let block = Subspace::span(n, (0..grading.dim(d)).map(|i| {
                let mut e = vec![F::zero(); n];
                e[grading.range(d).start + i] = F::one();
                e
            }));
            let inter = flat.intersect(&block).expect("same ambient");
            slices.push(Subspace::span(
                grading.dim(d),
                inter.basis().iter().map(|v| grading.block(v, d)),
            ));
        }
        GradedSubspace {
            grading: grading.clone(),
            slices,
        }
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn slice(&self, d: usize) -> &Subspace<F> {
        &self.slices[d]
    }

    pub fn slice_mut(&mut self, d: usize) -> &mut Subspace<F> {
        &mut self.slices[d]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.slices.iter().map(|s| s.dim()).collect()
    }

    pub fn dim(&self) -> usize {
        self.slices.iter().map(|s| s.dim()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(|s| s.is_zero())
    }

    /// Homogeneous basis as flat vectors, degree by degree.
    pub fn flat_basis(&self) -> Vec<Vec<F>> {
        let mut out = Vec::new();
        for (d, s) in self.slices.iter().enumerate() {
            for r in s.basis() {
                out.push(self.grading.embed(r, d));
            }
        }
        out
    }

    /// Homogeneous basis with the degree of each vector.
    pub fn graded_basis(&self) -> Vec<(usize, Vec<F>)> {
        let mut out = Vec::new();
        for (d, s) in self.slices.iter().enumerate() {
            for r in s.basis() {
                out.push((d, self.grading.embed(r, d)));
            }
        }
        out
    }

    pub fn to_flat(&self) -> Subspace<F> {
        Subspace::span(self.grading.total(), self.flat_basis())
    }

    /// Membership of a flat vector: every component must reduce to zero.
    pub fn contains(&self, v: &[F]) -> Result<bool, SgkError> {
        if v.len() != self.grading.total() {
            return Err(SgkError::WindowOverflow(format!(
                "vector of length {} does not fit a window of dimension {}",
                v.len(),
                self.grading.total()
            )));
        }
        Ok(self
            .grading
            .support(v)
            .into_iter()
            .all(|d| self.slices[d].contains(&self.grading.block(v, d))))
    }

    /// Inserts one homogeneous block; returns whether the slice grew.
    pub fn insert_block(&mut self, d: usize, block: &[F]) -> bool {
        self.slices[d].insert(block)
    }

    pub fn sum(&self, other: &Self) -> Result<Self, SgkError> {
        self.check_same(other)?;
        let slices = self
            .slices
            .iter()
            .zip(&other.slices)
            .map(|(a, b)| a.sum(b))
            .collect::<Result<_, _>>()?;
        Ok(GradedSubspace {
            grading: self.grading.clone(),
            slices,
        })
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, SgkError> {
        self.check_same(other)?;
        let slices = self
            .slices
            .iter()
            .zip(&other.slices)
            .map(|(a, b)| a.intersect(b))
            .collect::<Result<_, _>>()?;
        Ok(GradedSubspace {
            grading: self.grading.clone(),
            slices,
        })
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.grading == other.grading
            && self
                .slices
                .iter()
                .zip(&other.slices)
                .all(|(a, b)| a.is_subspace_of(b))
    }

    /// Dimensions of the per-degree quotients.
    pub fn quotient_grading(&self) -> Grading {
        Grading::new(
            self.slices
                .iter()
                .enumerate()
                .map(|(d, s)| self.grading.dim(d) - s.dim())
                .collect(),
        )
    }

    /// Flat quotient coordinates of `v` modulo this subspace.
    pub fn quotient_coords(&self, v: &[F]) -> Vec<F> {
        let mut out = Vec::new();
        for d in 0..self.grading.degrees() {
            out.extend(self.slices[d].quotient_coords(&self.grading.block(v, d)));
        }
        out
    }

    /// Canonical lift of flat quotient coordinates.
    pub fn quotient_lift(&self, coords: &[F]) -> Vec<F> {
        let q = self.quotient_grading();
        let mut v = Vec::with_capacity(self.grading.total());
        for d in 0..self.grading.degrees() {
            v.extend(self.slices[d].quotient_lift(&coords[q.range(d)]));
        }
        v
    }

    fn check_same(&self, other: &Self) -> Result<(), SgkError> {
        if self.grading != other.grading {
            return Err(SgkError::WindowMismatch(format!(
                "windows {:?} and {:?}",
                self.grading.dims(),
                other.grading.dims()
            )));
        }
        Ok(())
    }
}

/// A degree-preserving linear map between two windows, one block per degree.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMap<F> {
    source: Grading,
    target: Grading,
    blocks: Vec<Matrix<F>>,
}

impl<F: fmt::Display> fmt::Debug for GradedMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedMap")
            .field("source", &self.source.dims())
            .field("target", &self.target.dims())
            .field("blocks", &self.blocks)
            .finish()
    }
}

impl<F: Field> GradedMap<F> {
    pub fn new(source: &Grading, target: &Grading, blocks: Vec<Matrix<F>>) -> Result<Self, SgkError> {
        if source.degrees() != target.degrees() || blocks.len() != source.degrees() {
            return Err(SgkError::WindowMismatch(format!(
                "graded map between windows of {} and {} degrees with {} blocks",
                source.degrees(),
                target.degrees(),
                blocks.len()
            )));
        }
        for (d, b) in blocks.iter().enumerate() {
            if b.rows() != target.dim(d) || b.cols() != source.dim(d) {
                return Err(SgkError::WindowMismatch(format!(
                    "block {d} has shape {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    target.dim(d),
                    source.dim(d)
                )));
            }
        }
        Ok(GradedMap {
            source: source.clone(),
            target: target.clone(),
            blocks,
        })
    }

    pub fn zero(source: &Grading, target: &Grading) -> Self {
        let blocks = (0..source.degrees())
            .map(|d| Matrix::zeros(target.dim(d), source.dim(d)))
            .collect();
        GradedMap {
            source: source.clone(),
            target: target.clone(),
            blocks,
        }
    }

    pub fn identity(grading: &Grading) -> Self {
        let blocks = grading.dims().iter().map(|&d| Matrix::identity(d)).collect();
        GradedMap {
            source: grading.clone(),
            target: grading.clone(),
            blocks,
        }
    }

    /// Splits a flat block-diagonal matrix into degree blocks; fails if the
    /// matrix moves anything across degrees.
    pub fn from_flat(source: &Grading, target: &Grading, m: &Matrix<F>) -> Result<Self, SgkError> {
        if m.rows() != target.total() || m.cols() != source.total() {
            return Err(SgkError::WindowMismatch("flat map shape".into()));
        }
        let mut blocks = Vec::new();
        for d in 0..source.degrees() {
            let mut b = Matrix::zeros(target.dim(d), source.dim(d));
            for (bi, i) in target.range(d).enumerate() {
                for (bj, j) in source.range(d).enumerate() {
                    b.set(bi, bj, m.get(i, j).clone());
                }
            }
            blocks.push(b);
        }
        let out = GradedMap::new(source, target, blocks)?;
        if out.to_flat() != *m {
            return Err(SgkError::NotHomogeneous(
                "flat map mixes degrees".to_string(),
            ));
        }
        Ok(out)
    }

    pub fn source(&self) -> &Grading {
        &self.source
    }

    pub fn target(&self) -> &Grading {
        &self.target
    }

    pub fn block(&self, d: usize) -> &Matrix<F> {
        &self.blocks[d]
    }

    pub fn blocks(&self) -> &[Matrix<F>] {
        &self.blocks
    }

    pub fn to_flat(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.target.total(), self.source.total());
        for (d, b) in self.blocks.iter().enumerate() {
            let r0 = self.target.range(d).start;
            let c0 = self.source.range(d).start;
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    let x = b.get(i, j);
                    if !x.is_zero() {
                        m.set(r0 + i, c0 + j, x.clone());
                    }
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        let mut out = Vec::with_capacity(self.target.total());
        for (d, b) in self.blocks.iter().enumerate() {
            out.extend(b.apply(&v[self.source.range(d)]));
        }
        out
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GradedMap<F>) -> Result<GradedMap<F>, SgkError> {
        if first.target != self.source {
            return Err(SgkError::WindowMismatch("composition of incompatible maps".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&first.blocks)
            .map(|(a, b)| a.mul(b))
            .collect();
        GradedMap::new(&first.source, &self.target, blocks)
    }

    pub fn add(&self, other: &GradedMap<F>) -> GradedMap<F> {
        assert!(self.source == other.source && self.target == other.target);
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> GradedMap<F> {
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn kernel(&self) -> GradedSubspace<F> {
        let slices = self
            .blocks
            .iter()
            .enumerate()
            .map(|(d, b)| Subspace::span(self.source.dim(d), b.nullspace()))
            .collect();
        GradedSubspace::from_slices(&self.source, slices)
    }

    pub fn image(&self) -> GradedSubspace<F> {
        let slices = self
            .blocks
            .iter()
            .enumerate()
            .map(|(d, b)| {
                Subspace::span(self.target.dim(d), (0..b.cols()).map(|j| b.column(j)))
            })
            .collect();
        GradedSubspace::from_slices(&self.target, slices)
    }

    /// Flattened entries, used as coordinates in hom-space computations.
    pub fn entries(&self) -> Vec<F> {
        self.blocks
            .iter()
            .flat_map(|b| (0..b.rows()).flat_map(move |i| b.row(i).to_vec()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn membership_examples() {
        let s = Subspace::span(3, vec![v(&[1, 2, 3])]);
        assert!(s.contains(&v(&[1, 2, 3])));
        assert!(!Subspace::<Q>::zero(3).contains(&v(&[0, 1, 0])));
        // x^2 in span{x^2 + xy, xy} with coordinates (x^2, xy, y^2)
        let t = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[0, 1, 0])]);
        assert!(t.contains(&v(&[1, 0, 0])));
        assert!(!t.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn intersect_and_sum_examples() {
        let s = Subspace::span(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let t = Subspace::span(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(s.intersect(&t).unwrap(), Subspace::span(3, vec![v(&[0, 1, 0])]));
        assert_eq!(s.sum(&Subspace::zero(3)).unwrap(), s);
        assert!(s.intersect(&Subspace::zero(4)).is_err());
    }

    #[test]
    fn solve_examples() {
        assert!(solve(&Matrix::<Q>::identity(4)).is_empty());
        assert_eq!(solve(&Matrix::<Q>::zeros(2, 3)).len(), 3);
        let a = Matrix::from_rows(vec![v(&[1, 2, 0, 1, 3]), v(&[0, 1, 1, 1, 1]), v(&[1, 3, 1, 2, 4])], 5);
        let ns = solve(&a);
        assert_eq!(a.rank() + ns.len(), 5);
        for x in &ns {
            assert!(is_zero_vec(&a.apply(x)));
        }
    }

    #[test]
    fn particular_solution() {
        let a = Matrix::from_rows(vec![v(&[1, 1]), v(&[1, -1])], 2);
        let x = solve_particular(&a, &v(&[3, 1])).unwrap();
        assert_eq!(x, v(&[2, 1]));
        let b = Matrix::from_rows(vec![v(&[1, 1]), v(&[2, 2])], 2);
        assert!(solve_particular(&b, &v(&[1, 3])).is_none());
    }

    #[test]
    fn quotient_coordinates_round_trip() {
        let s = Subspace::span(3, vec![v(&[1, 1, 0])]);
        let c = s.quotient_coords(&v(&[2, 5, 7]));
        assert_eq!(c.len(), 2);
        let lifted = s.quotient_lift(&c);
        assert!(s.contains(&lifted.iter().zip(v(&[2, 5, 7])).map(|(a, b)| a.clone() - b).collect::<Vec<_>>()));
    }

    #[test]
    fn degreewise_part_of_mixed_subspace() {
        let g = Grading::new(vec![1, 2]);
        // span{e0 + e1, e2}: only e2 is homogeneous
        let flat = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[0, 0, 1])]);
        let part = GradedSubspace::degreewise_part(&g, &flat);
        assert_eq!(part.dims(), vec![0, 1]);
    }

    #[test]
    fn graded_map_kernel_and_compose() {
        let g = Grading::new(vec![1, 2]);
        let m = GradedMap::new(
            &g,
            &g,
            vec![Matrix::identity(1), Matrix::from_rows(vec![v(&[1, 1]), v(&[0, 0])], 2)],
        )
        .unwrap();
        assert_eq!(m.kernel().dims(), vec![0, 1]);
        let id = GradedMap::identity(&g);
        assert_eq!(m.compose(&id).unwrap(), m);
        assert_eq!(GradedMap::from_flat(&g, &g, &m.to_flat()).unwrap(), m);
    }
}
