//! Dense exact linear algebra: matrices, reduced echelon forms, subspaces,
//! span membership and quotient spaces.
//!
//! All pivots are chosen leftmost-first and echelon forms are kept fully
//! reduced, so every basis produced here is the unique RREF of its span.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `acc += c * x`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    debug_assert_eq!(acc.len(), x.len());
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a = &*a + &(c * b);
        }
    }
}

pub fn add_vectors(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub_vectors(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale_vector(c: &Scalar, x: &[Scalar]) -> Vector {
    x.iter().map(|a| c * a).collect()
}

/// Kronecker product, index `i * y.len() + j`.
pub fn kron(x: &[Scalar], y: &[Scalar]) -> Vector {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        if a.is_zero() {
            out.extend(std::iter::repeat_n(a.clone(), y.len()));
        } else {
            out.extend(y.iter().map(|b| a * b));
        }
    }
    out
}

/// Nonzero entries of a vector with their indices.
pub fn support(v: &[Scalar]) -> impl Iterator<Item = (usize, &Scalar)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero())
}

fn check_len(v: &[Scalar], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    Ok(())
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_flat(field: Field, rows: usize, cols: usize, data: Vector) -> Result<Matrix> {
        check_len(&data, rows * cols)?;
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vector]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_len(r, cols)?;
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            check_len(c, rows)?;
            for (i, v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Row-major entries; the coordinate vector of the matrix in `End_k`.
    pub fn flat(&self) -> &[Scalar] {
        &self.data
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let (orow, brow) = (i * out.cols, other.row(k));
                for (j, b) in brow.iter().enumerate() {
                    if !b.is_zero() {
                        out.data[orow + j] = &out.data[orow + j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = zero_vector(self.field, self.rows);
        for (k, c) in support(v) {
            for i in 0..self.rows {
                let a = self.get(i, k);
                if !a.is_zero() {
                    out[i] = &out[i] + &(a * c);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: add_vectors(&self.data, &other.data) }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: sub_vectors(&self.data, &other.data) }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: scale_vector(c, &self.data) }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.field, self.rows)
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.field, self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i));
        }
        e.rank()
    }

    /// Exact inverse by Gauss–Jordan on `[M | I]`.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut e = Echelon::new(self.field, 2 * n);
        for i in 0..n {
            let mut row = self.row(i).to_vec();
            row.extend(unit_vector(self.field, n, i));
            e.insert(&row);
        }
        let sub = e.to_subspace();
        if sub.pivots() != (0..n).collect::<Vec<_>>().as_slice() {
            return None;
        }
        let rows: Vec<Vector> = sub.basis().iter().map(|r| r[n..].to_vec()).collect();
        Matrix::from_rows(self.field, n, &rows).ok()
    }

    /// Linear combination `Σ c_i M_i` of equally shaped matrices.
    pub fn combination(field: Field, rows: usize, cols: usize, coeffs: &[Scalar], mats: &[Matrix]) -> Matrix {
        let mut out = Matrix::zeros(field, rows, cols);
        for (c, m) in coeffs.iter().zip(mats) {
            if !c.is_zero() {
                axpy(&mut out.data, c, &m.data);
            }
        }
        out
    }
}

type SparseRow = Vec<(usize, Scalar)>;

fn sub_scaled(a: &SparseRow, c: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, -&(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(c * &b[j].1);
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally maintained reduced row echelon form.
///
/// Rows are sparse, each row's first entry is its pivot (value one), and every
/// pivot column is zero in all other rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: Field, dim: usize) -> Echelon {
        Echelon { field, dim, rows: Vec::new(), pivot_row: vec![None; dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Subtracts the echelon rows from `v`, leaving it zero on every pivot.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for j in 0..self.dim {
            if let Some(r) = self.pivot_row[j] {
                if !v[j].is_zero() {
                    let c = v[j].clone();
                    for (col, val) in &self.rows[r] {
                        v[*col] = &v[*col] - &(&c * val);
                    }
                }
            }
        }
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim, "echelon insert dimension mismatch");
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero pivot");
        let new: SparseRow = support(&w).map(|(c, x)| (c, x * &inv)).collect();
        for row in self.rows.iter_mut() {
            if let Ok(k) = row.binary_search_by_key(&p, |e| e.0) {
                let c = row[k].1.clone();
                *row = sub_scaled(row, &c, &new);
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(new);
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero_vector(&w)
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Pivot columns in ascending order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|&c| self.pivot_row[c].is_none()).collect()
    }

    fn dense_row(&self, r: usize) -> Vector {
        let mut v = zero_vector(self.field, self.dim);
        for (c, x) in &self.rows[r] {
            v[*c] = x.clone();
        }
        v
    }

    pub fn to_subspace(&self) -> Subspace {
        let pivots = self.pivots();
        let basis = pivots.iter().map(|&p| self.dense_row(self.pivot_row[p].unwrap())).collect();
        Subspace { field: self.field, ambient_dim: self.dim, basis, pivots }
    }

    /// Basis of `{x : row·x = 0 for every row}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vector> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut x = unit_vector(self.field, self.dim, f);
                for row in &self.rows {
                    if let Ok(k) = row.binary_search_by_key(&f, |e| e.0) {
                        x[row[0].0] = -&row[k].1;
                    }
                }
                x
            })
            .collect()
    }
}

/// A subspace of `k^n`, stored as the unique RREF basis of its span.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace { field, ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            field,
            ambient_dim,
            basis: (0..ambient_dim).map(|i| unit_vector(field, ambient_dim, i)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn span<'a>(field: Field, ambient_dim: usize, generators: impl IntoIterator<Item = &'a Vector>) -> Result<Subspace> {
        let mut e = Echelon::new(field, ambient_dim);
        for g in generators {
            check_len(g, ambient_dim)?;
            e.insert(g);
        }
        Ok(e.to_subspace())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn embedding(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient_dim, &self.basis).expect("basis length")
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is not in the
    /// subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let coords: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = zero_vector(self.field, self.ambient_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            axpy(&mut rebuilt, c, b);
        }
        (rebuilt.as_slice() == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.field, self.ambient_dim, self.basis.iter().chain(&other.basis)).expect("same ambient")
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        // Σ a_i u_i = Σ b_j w_j, solved as a kernel over the stacked columns.
        let (m, n) = (self.dim(), other.dim());
        let mut eqs = Echelon::new(self.field, m + n);
        for coord in 0..self.ambient_dim {
            let row: Vector = self
                .basis
                .iter()
                .map(|u| u[coord].clone())
                .chain(other.basis.iter().map(|w| -&w[coord]))
                .collect();
            eqs.insert(&row);
        }
        let vecs: Vec<Vector> = eqs
            .kernel()
            .into_iter()
            .map(|k| {
                let mut v = zero_vector(self.field, self.ambient_dim);
                for (a, u) in k[..m].iter().zip(&self.basis) {
                    axpy(&mut v, a, u);
                }
                v
            })
            .collect();
        Subspace::span(self.field, self.ambient_dim, vecs.iter()).expect("same ambient")
    }
}

/// Basis of the solution space of the homogeneous system with the given
/// equation rows.
pub fn nullspace(field: Field, nvars: usize, equations: impl IntoIterator<Item = Vector>) -> Vec<Vector> {
    let mut e = Echelon::new(field, nvars);
    for eq in equations {
        e.insert(&eq);
    }
    e.kernel()
}

/// Coefficients `c` with `Σ c_i generators_i = target`, or `None` when the
/// target is outside the span. Free variables are set to zero.
pub fn solve_in_span(target: &[Scalar], generators: &[Vector]) -> Result<Option<Vector>> {
    let n = target.len();
    for g in generators {
        check_len(g, n)?;
    }
    let field = match target.first().or_else(|| generators.iter().flatten().next()) {
        Some(s) => s.field(),
        None => return Ok(Some(Vec::new())),
    };
    let m = generators.len();
    let mut e = Echelon::new(field, m + 1);
    for i in 0..n {
        let row: Vector = generators.iter().map(|g| g[i].clone()).chain(std::iter::once(target[i].clone())).collect();
        e.insert(&row);
    }
    if e.is_pivot(m) {
        return Ok(None);
    }
    let mut coeffs = zero_vector(field, m);
    for row in &e.rows {
        let p = row[0].0;
        if let Some((_, v)) = row.iter().find(|(c, _)| *c == m) {
            coeffs[p] = v.clone();
        }
    }
    Ok(Some(coeffs))
}

/// `k^n / relations`, coordinatized by the non-pivot columns of the
/// relations' RREF in ascending order.
#[derive(Clone, Debug)]
pub struct Quotient {
    relations: Echelon,
    nonpivots: Vec<usize>,
    index_of: Vec<Option<usize>>,
}

impl Quotient {
    pub fn new(relations: Echelon) -> Quotient {
        let nonpivots = relations.free_columns();
        let mut index_of = vec![None; relations.dim()];
        for (q, &c) in nonpivots.iter().enumerate() {
            index_of[c] = Some(q);
        }
        Quotient { relations, nonpivots, index_of }
    }

    pub fn field(&self) -> Field {
        self.relations.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.relations.dim()
    }

    pub fn dim(&self) -> usize {
        self.nonpivots.len()
    }

    pub fn relations(&self) -> &Echelon {
        &self.relations
    }

    /// Ambient index whose class is quotient basis vector `q`.
    pub fn section_index(&self, q: usize) -> usize {
        self.nonpivots[q]
    }

    pub fn project(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        self.relations.reduce(&mut w);
        self.nonpivots.iter().map(|&c| w[c].clone()).collect()
    }

    /// Class of the ambient basis vector `e_c`, as sparse quotient entries.
    pub fn class_of_basis(&self, c: usize) -> Vec<(usize, Scalar)> {
        if let Some(q) = self.index_of[c] {
            return vec![(q, self.field().one())];
        }
        let r = self.relations.pivot_row[c].expect("pivot column");
        self.relations.rows[r][1..]
            .iter()
            .map(|(col, v)| (self.index_of[*col].expect("non-pivot entry"), -v))
            .collect()
    }

    pub fn projection_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim(), self.ambient_dim());
        for c in 0..self.ambient_dim() {
            for (q, v) in self.class_of_basis(c) {
                m.set(q, c, v);
            }
        }
        m
    }

    pub fn section_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.ambient_dim(), self.dim());
        for (q, &c) in self.nonpivots.iter().enumerate() {
            m.set(c, q, self.field().one());
        }
        m
    }
}

/// Realizes `k^n / relations` with projection and section matrices.
pub fn quotient_structure(ambient_dim: usize, relations: &Subspace) -> Result<Quotient> {
    if relations.ambient_dim() != ambient_dim {
        return Err(Error::DimensionMismatch { expected: ambient_dim, found: relations.ambient_dim() });
    }
    let mut e = Echelon::new(relations.field(), ambient_dim);
    for b in relations.basis() {
        e.insert(b);
    }
    Ok(Quotient::new(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rationals;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Q.from_i64(x)).collect()
    }

    fn half() -> Scalar {
        Q.parse_scalar("1/2").unwrap()
    }

    #[test]
    fn solve_zero_target() {
        assert_eq!(solve_in_span(&v(&[0, 0]), &[v(&[3, 1])]).unwrap(), Some(v(&[0])));
    }

    #[test]
    fn solve_identity_case() {
        assert_eq!(solve_in_span(&v(&[3, 1]), &[v(&[3, 1])]).unwrap(), Some(v(&[1])));
    }

    #[test]
    fn solve_diagonal() {
        let c = solve_in_span(&v(&[1, 1]), &[v(&[1, 0]), v(&[0, 2])]).unwrap().unwrap();
        assert_eq!(c, vec![Q.one(), half()]);
    }

    #[test]
    fn solve_outside_span_and_mismatch() {
        assert_eq!(solve_in_span(&v(&[0, 1]), &[v(&[1, 0])]).unwrap(), None);
        assert!(solve_in_span(&v(&[0, 1]), &[v(&[1, 0, 0])]).is_err());
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        let c = solve_in_span(&v(&[2, 0]), &[v(&[1, 0]), v(&[1, 0])]).unwrap().unwrap();
        assert_eq!(c, v(&[2, 0]));
    }

    #[test]
    fn quotient_by_zero_is_identity() {
        let q = quotient_structure(3, &Subspace::zero(Q, 3)).unwrap();
        assert_eq!(q.dim(), 3);
        assert!(q.projection_matrix().is_identity());
        assert!(q.section_matrix().is_identity());
    }

    #[test]
    fn quotient_by_everything() {
        let q = quotient_structure(3, &Subspace::full(Q, 3)).unwrap();
        assert_eq!(q.dim(), 0);
    }

    #[test]
    fn quotient_by_one_relation() {
        let rel = Subspace::span(Q, 2, [&v(&[1, -1])]).unwrap();
        let q = quotient_structure(2, &rel).unwrap();
        assert_eq!(q.dim(), 1);
        let p = q.projection_matrix();
        assert_eq!(p.column(0), p.column(1));
        assert!(quotient_structure(3, &rel).is_err());
    }

    #[test]
    fn inverse_and_rank() {
        let m = Matrix::from_rows(Q, 2, &[v(&[1, 2]), v(&[3, 4])]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let singular = Matrix::from_rows(Q, 2, &[v(&[1, 2]), v(&[2, 4])]).unwrap();
        assert_eq!(singular.rank(), 1);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(Q, 3, [&v(&[1, 0, 0]), &v(&[0, 1, 0])]).unwrap();
        let b = Subspace::span(Q, 3, [&v(&[0, 1, 0]), &v(&[0, 0, 1])]).unwrap();
        let i = a.intersection(&b);
        assert_eq!(i, Subspace::span(Q, 3, [&v(&[0, 1, 0])]).unwrap());
        assert_eq!(a.sum(&b), Subspace::full(Q, 3));
    }

    #[test]
    fn kernel_is_annihilated() {
        let eqs = vec![v(&[1, 2, 3, 4]), v(&[2, 4, 7, 9])];
        let ker = nullspace(Q, 4, eqs.clone());
        assert_eq!(ker.len(), 2);
        for k in &ker {
            for e in &eqs {
                let dot = e.iter().zip(k).fold(Q.zero(), |acc, (a, b)| &acc + &(a * b));
                assert!(dot.is_zero());
            }
        }
    }

    fn small_vectors(n: usize, count: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, n), 0..=count)
    }

    proptest! {
        #[test]
        fn solvable_iff_rank_unchanged(gens in small_vectors(4, 5), target in prop::collection::vec(-3i64..=3, 4)) {
            let gens: Vec<Vector> = gens.iter().map(|g| v(g)).collect();
            let t = v(&target);
            let rank = |vs: &[Vector]| Subspace::span(Q, 4, vs.iter()).unwrap().dim();
            let mut with_t = gens.clone();
            with_t.push(t.clone());
            let sol = solve_in_span(&t, &gens).unwrap();
            prop_assert_eq!(sol.is_some(), rank(&gens) == rank(&with_t));
            if let Some(c) = sol {
                let mut acc = zero_vector(Q, 4);
                for (ci, g) in c.iter().zip(&gens) {
                    axpy(&mut acc, ci, g);
                }
                prop_assert_eq!(acc, t);
            }
        }

        #[test]
        fn quotient_projection_section(rels in small_vectors(5, 4)) {
            let rels: Vec<Vector> = rels.iter().map(|g| v(g)).collect();
            let sub = Subspace::span(Q, 5, rels.iter()).unwrap();
            let q = quotient_structure(5, &sub).unwrap();
            let p = q.projection_matrix();
            prop_assert!(p.mul(&q.section_matrix()).is_identity());
            for r in &rels {
                prop_assert!(is_zero_vector(&p.mul_vec(r)));
            }
            prop_assert_eq!(q.dim() + sub.dim(), 5);
        }

        #[test]
        fn coordinates_rebuild_members(gens in small_vectors(4, 3), coeffs in prop::collection::vec(-2i64..=2, 3)) {
            let gens: Vec<Vector> = gens.iter().map(|g| v(g)).collect();
            let sub = Subspace::span(Q, 4, gens.iter()).unwrap();
            let mut x = zero_vector(Q, 4);
            for (c, g) in coeffs.iter().zip(&gens) {
                axpy(&mut x, &Q.from_i64(*c), g);
            }
            prop_assert!(sub.contains(&x));
        }
    }
}
