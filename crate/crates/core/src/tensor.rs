//! Balanced tensor products `X ⊗_R Y` realized as quotients of `X ⊗_k Y`,
//! and the tensor powers `A ⊗_B ⋯ ⊗_B A` of an extension.

use crate::algebra::Extension;
use crate::error::{Error, Result};
use crate::linalg::{axpy, kron, nullspace, support, unit_vector, zero_vector, Echelon, Matrix, Quotient, Subspace, Vector};
use crate::scalar::{Field, Scalar};

/// `X ⊗_R Y` for a right `R`-module `X` and a left `R`-module `Y`.
///
/// Ambient index of `e_i ⊗ e_j` is `i * dim_y + j`. Quotient basis vector
/// `q` is the class of the elementary tensor `section(q)`.
#[derive(Clone, Debug)]
pub struct BalancedTensor {
    field: Field,
    dim_x: usize,
    dim_y: usize,
    quotient: Quotient,
    classes: Vec<Vec<(usize, Scalar)>>,
    sections: Vec<(usize, usize)>,
}

impl BalancedTensor {
    /// `right_x[r]` is `x ↦ x·r_j` on `X`, `left_y[r]` is `y ↦ r_j·y` on `Y`,
    /// for a basis `r_j` of `R`.
    pub fn new(field: Field, dim_x: usize, dim_y: usize, right_x: &[Matrix], left_y: &[Matrix]) -> Result<BalancedTensor> {
        if right_x.len() != left_y.len() {
            return Err(Error::DimensionMismatch { expected: right_x.len(), found: left_y.len() });
        }
        let mut rel = Echelon::new(field, dim_x * dim_y);
        for (rx, ly) in right_x.iter().zip(left_y) {
            for i in 0..dim_x {
                let xr = rx.column(i);
                let ei = unit_vector(field, dim_x, i);
                for j in 0..dim_y {
                    let mut v = kron(&xr, &unit_vector(field, dim_y, j));
                    let w = kron(&ei, &ly.column(j));
                    axpy(&mut v, &-field.one(), &w);
                    rel.insert(&v);
                }
            }
        }
        let quotient = Quotient::new(rel);
        let classes = (0..dim_x * dim_y).map(|c| quotient.class_of_basis(c)).collect();
        let sections = (0..quotient.dim())
            .map(|q| {
                let c = quotient.section_index(q);
                (c / dim_y, c % dim_y)
            })
            .collect();
        Ok(BalancedTensor { field, dim_x, dim_y, quotient, classes, sections })
    }

    /// `X ⊗_k Y` with no relations.
    pub fn plain(field: Field, dim_x: usize, dim_y: usize) -> BalancedTensor {
        BalancedTensor::new(field, dim_x, dim_y, &[], &[]).expect("no relations")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn dim_x(&self) -> usize {
        self.dim_x
    }

    pub fn dim_y(&self) -> usize {
        self.dim_y
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim_x * self.dim_y
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    /// Basis indices `(i, j)` with `e_i ⊗ e_j` representing basis vector `q`.
    pub fn section(&self, q: usize) -> (usize, usize) {
        self.sections[q]
    }

    pub fn class_of(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.classes[i * self.dim_y + j]
    }

    /// Class of `x ⊗ y`.
    pub fn pure(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field, self.dim());
        for (i, a) in support(x) {
            for (j, b) in support(y) {
                let c = a * b;
                for (q, v) in self.class_of(i, j) {
                    out[*q] = &out[*q] + &(&c * v);
                }
            }
        }
        out
    }

    pub fn project(&self, ambient: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field, self.dim());
        for (c, a) in support(ambient) {
            for (q, v) in &self.classes[c] {
                out[*q] = &out[*q] + &(a * v);
            }
        }
        out
    }

    /// Representative `Σ c_q e_i ⊗ e_j` of a quotient vector.
    pub fn lift(&self, v: &[Scalar]) -> Vec<(usize, usize, Scalar)> {
        support(v).map(|(q, c)| (self.sections[q].0, self.sections[q].1, c.clone())).collect()
    }

    /// Matrix of the map induced by a linear map on `X ⊗_k Y`, given by its
    /// values on every ambient basis vector. Fails unless those values kill
    /// the balancing relations.
    pub fn descend(&self, target_dim: usize, images: &[Vector]) -> Result<Matrix> {
        if images.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), found: images.len() });
        }
        let cols: Vec<Vector> = self.sections.iter().map(|&(i, j)| images[i * self.dim_y + j].clone()).collect();
        let m = Matrix::from_columns(self.field, target_dim, &cols)?;
        for (c, img) in images.iter().enumerate() {
            let mut through = zero_vector(self.field, target_dim);
            for (q, v) in &self.classes[c] {
                axpy(&mut through, v, &cols[*q]);
            }
            if &through != img {
                return Err(Error::Construction(format!(
                    "map does not descend to the balanced tensor product (ambient index {c})"
                )));
            }
        }
        Ok(m)
    }

    /// `f ⊗ g` into another balanced tensor product, evaluated on section
    /// representatives; callers guarantee it is well defined.
    pub fn induced(&self, target: &BalancedTensor, f: &Matrix, g: &Matrix) -> Matrix {
        let cols: Vec<Vector> = self.sections.iter().map(|&(i, j)| target.pure(&f.column(i), &g.column(j))).collect();
        Matrix::from_columns(self.field, target.dim(), &cols).expect("dims")
    }

    /// `m ⊗ id` on this space.
    pub fn act_left(&self, m: &Matrix) -> Matrix {
        self.induced(self, m, &Matrix::identity(self.field, self.dim_y))
    }

    /// `id ⊗ m` on this space.
    pub fn act_right(&self, m: &Matrix) -> Matrix {
        self.induced(self, &Matrix::identity(self.field, self.dim_x), m)
    }
}

/// One level `Q_k` of the tensor powers, with its outer `A`-actions.
#[derive(Clone, Debug)]
pub struct TensorLevel {
    pub dim: usize,
    /// `None` at level one, where `Q_1 = A`.
    pub tensor: Option<BalancedTensor>,
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
}

/// `Q_1 = A` and `Q_k = A ⊗_B Q_{k-1}`.
#[derive(Clone, Debug)]
pub struct TensorPowers {
    ext: Extension,
    levels: Vec<TensorLevel>,
    mu: Matrix,
}

impl TensorPowers {
    pub fn new(ext: &Extension, max_level: usize) -> Result<TensorPowers> {
        let a = ext.a();
        let field = a.field();
        let n = a.dim();
        let max_level = max_level.max(2);
        let b_right: Vec<Matrix> = ext.b_images().iter().map(|b| a.right_mult_by(b)).collect();
        let mut levels = vec![TensorLevel {
            dim: n,
            tensor: None,
            left: (0..n).map(|i| a.left_mult(i).clone()).collect(),
            right: (0..n).map(|i| a.right_mult(i).clone()).collect(),
        }];
        for _ in 2..=max_level {
            let prev = levels.last().unwrap();
            let b_left: Vec<Matrix> = ext
                .b_images()
                .iter()
                .map(|b| Matrix::combination(field, prev.dim, prev.dim, b, &prev.left))
                .collect();
            let t = BalancedTensor::new(field, n, prev.dim, &b_right, &b_left)?;
            let left = (0..n).map(|i| t.act_left(a.left_mult(i))).collect();
            let right = prev.right.iter().map(|m| t.act_right(m)).collect();
            levels.push(TensorLevel { dim: t.dim(), tensor: Some(t), left, right });
        }
        let q2 = levels[1].tensor.as_ref().unwrap();
        let images: Vec<Vector> = (0..n * n).map(|c| a.basis_product(c / n, c % n).to_vec()).collect();
        let mu = q2.descend(n, &images)?;
        Ok(TensorPowers { ext: ext.clone(), levels, mu })
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    pub fn field(&self) -> Field {
        self.ext.field()
    }

    pub fn max_level(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, k: usize) -> &TensorLevel {
        &self.levels[k - 1]
    }

    pub fn dim(&self, k: usize) -> usize {
        self.level(k).dim
    }

    /// `Q_k` as `A ⊗_B Q_{k-1}`, for `k ≥ 2`.
    pub fn tensor(&self, k: usize) -> &BalancedTensor {
        self.level(k).tensor.as_ref().expect("level at least two")
    }

    /// Multiplication `μ: A ⊗_B A → A`.
    pub fn mu(&self) -> &Matrix {
        &self.mu
    }

    /// Matrix of `v ↦ a·v` on `Q_k`.
    pub fn left_by(&self, k: usize, a: &[Scalar]) -> Matrix {
        let d = self.dim(k);
        Matrix::combination(self.field(), d, d, a, &self.level(k).left)
    }

    /// Matrix of `v ↦ v·a` on `Q_k`.
    pub fn right_by(&self, k: usize, a: &[Scalar]) -> Matrix {
        let d = self.dim(k);
        Matrix::combination(self.field(), d, d, a, &self.level(k).right)
    }

    /// Class of `x_1 ⊗ ⋯ ⊗ x_k` in `Q_k`.
    pub fn elementary(&self, xs: &[Vector]) -> Vector {
        match xs {
            [] => panic!("empty tensor"),
            [x] => x.clone(),
            [x, rest @ ..] => {
                let tail = self.elementary(rest);
                self.tensor(xs.len()).pure(x, &tail)
            }
        }
    }

    /// Class of `e_{i_1} ⊗ ⋯ ⊗ e_{i_k}`.
    pub fn elementary_basis(&self, idx: &[usize]) -> Vector {
        let n = self.ext.a().dim();
        let xs: Vec<Vector> = idx.iter().map(|&i| unit_vector(self.field(), n, i)).collect();
        self.elementary(&xs)
    }

    /// `A`-basis indices of the elementary tensor representing basis vector
    /// `q` of `Q_k`.
    pub fn section_tuple(&self, k: usize, q: usize) -> Vec<usize> {
        if k == 1 {
            return vec![q];
        }
        let (i, j) = self.tensor(k).section(q);
        let mut out = vec![i];
        out.extend(self.section_tuple(k - 1, j));
        out
    }

    /// `(Q_k)^B = {v : ι(b)v = vι(b)}`.
    pub fn b_centralized(&self, k: usize) -> Subspace {
        let d = self.dim(k);
        let mut eqs = Vec::new();
        for b in self.ext.b_images() {
            let m = self.left_by(k, b).sub(&self.right_by(k, b));
            eqs.extend((0..d).map(|r| m.row(r).to_vec()));
        }
        let ker = nullspace(self.field(), d, eqs);
        Subspace::span(self.field(), d, ker.iter()).expect("dims")
    }
}

/// `A ⊗_B A` with its four bimodule structures and `μ`.
pub fn tensor_square(ext: &Extension) -> Result<TensorPowers> {
    TensorPowers::new(ext, 2)
}
