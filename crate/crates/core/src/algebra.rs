//! Finite-dimensional unital associative algebras given by structure
//! constants, algebra morphisms, extensions and the subalgebra/ideal tools
//! built on top of them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{axpy, nullspace, support, unit_vector, zero_vector, Echelon, Matrix, Subspace, Vector};
use crate::scalar::{Field, Scalar};

/// `e_i e_j = Σ_k c[i][j][k] e_k`, with left and right multiplication
/// operators cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    field: Field,
    dim: usize,
    constants: Vec<Scalar>,
    unit: Vector,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl FiniteAlgebra {
    /// Validates associativity and the unit law; the error names the first
    /// offending basis indices.
    pub fn new(field: Field, dim: usize, constants: Vec<Scalar>, unit: Vector) -> Result<FiniteAlgebra> {
        if dim == 0 {
            return Err(Error::Construction("an algebra needs dimension at least 1".into()));
        }
        if constants.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, found: constants.len() });
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: unit.len() });
        }
        if let Some(bad) = constants.iter().chain(&unit).find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(format!("scalar over {} in an algebra over {field}", bad.field())));
        }
        let mut left = Vec::with_capacity(dim);
        let mut right = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut l = Matrix::zeros(field, dim, dim);
            let mut r = Matrix::zeros(field, dim, dim);
            for j in 0..dim {
                for k in 0..dim {
                    l.set(k, j, constants[(i * dim + j) * dim + k].clone());
                    r.set(k, j, constants[(j * dim + i) * dim + k].clone());
                }
            }
            left.push(l);
            right.push(r);
        }
        let alg = FiniteAlgebra { field, dim, constants, unit, left, right };
        alg.check_axioms()?;
        Ok(alg)
    }

    /// Nested `structure[i][j][k]` form.
    pub fn from_cube(field: Field, structure: Vec<Vec<Vec<Scalar>>>, unit: Vector) -> Result<FiniteAlgebra> {
        let dim = structure.len();
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for row in structure {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            for entry in row {
                if entry.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: entry.len() });
                }
                flat.extend(entry);
            }
        }
        FiniteAlgebra::new(field, dim, flat, unit)
    }

    /// Builds the constants from a product rule on basis elements.
    pub fn from_products(
        field: Field,
        dim: usize,
        unit: Vector,
        mut product: impl FnMut(usize, usize) -> Vector,
    ) -> Result<FiniteAlgebra> {
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let p = product(i, j);
                if p.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
                }
                flat.extend(p);
            }
        }
        FiniteAlgebra::new(field, dim, flat, unit)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> FiniteAlgebra {
        FiniteAlgebra::new(field, 1, vec![field.one()], vec![field.one()]).expect("ground field")
    }

    /// `M_n(k)` in the matrix-unit basis `e_{ij}` at index `i*n + j`.
    pub fn matrix_units(field: Field, n: usize) -> FiniteAlgebra {
        let dim = n * n;
        let mut unit = zero_vector(field, dim);
        for i in 0..n {
            unit[i * n + i] = field.one();
        }
        FiniteAlgebra::from_products(field, dim, unit, |a, b| {
            let (i, j, k, l) = (a / n, a % n, b / n, b % n);
            if j == k {
                unit_vector(field, dim, i * n + l)
            } else {
                zero_vector(field, dim)
            }
        })
        .expect("matrix units")
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            let e = unit_vector(self.field, n, i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::UnitLaw(i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    let lhs = self.right[k].mul_vec(ij);
                    let rhs = self.left[i].mul_vec(self.basis_product(j, k));
                    if lhs != rhs {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &self.constants[start..start + self.dim]
    }

    pub fn basis(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim, i)
    }

    pub fn zero(&self) -> Vector {
        zero_vector(self.field, self.dim)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = self.zero();
        for (i, a) in support(x) {
            for (j, b) in support(y) {
                axpy(&mut out, &(a * b), self.basis_product(i, j));
            }
        }
        out
    }

    /// Matrix of `x ↦ e_i x`.
    pub fn left_mult(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    /// Matrix of `x ↦ x e_i`.
    pub fn right_mult(&self, i: usize) -> &Matrix {
        &self.right[i]
    }

    /// Matrix of `y ↦ a y`.
    pub fn left_mult_by(&self, a: &[Scalar]) -> Matrix {
        Matrix::combination(self.field, self.dim, self.dim, a, &self.left)
    }

    /// Matrix of `y ↦ y a`.
    pub fn right_mult_by(&self, a: &[Scalar]) -> Matrix {
        Matrix::combination(self.field, self.dim, self.dim, a, &self.right)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// The opposite algebra, same basis.
    pub fn opposite(&self) -> FiniteAlgebra {
        FiniteAlgebra::from_products(self.field, self.dim, self.unit.clone(), |i, j| self.basis_product(j, i).to_vec())
            .expect("opposite of a valid algebra")
    }

    /// Nested `structure[i][j][k]` form, the inverse of `from_cube`.
    pub fn structure_cube(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.basis_product(i, j).to_vec()).collect())
            .collect()
    }
}

/// A unital algebra map, stored as a `dim(target) × dim(source)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn new(source: FiniteAlgebra, target: FiniteAlgebra, matrix: Matrix) -> Result<AlgebraMorphism> {
        if source.field() != target.field() || matrix.field() != source.field() {
            return Err(Error::FieldMismatch("morphism between algebras over different fields".into()));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch { expected: target.dim() * source.dim(), found: matrix.rows() * matrix.cols() });
        }
        if matrix.mul_vec(source.unit()) != target.unit() {
            return Err(Error::NotAMorphism("the unit is not preserved".into()));
        }
        let images = matrix.columns();
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                let lhs = matrix.mul_vec(source.basis_product(i, j));
                if lhs != target.mul(&images[i], &images[j]) {
                    return Err(Error::NotAMorphism(format!("not multiplicative on basis pair ({i}, {j})")));
                }
            }
        }
        Ok(AlgebraMorphism { source, target, matrix })
    }

    pub fn identity(a: FiniteAlgebra) -> AlgebraMorphism {
        let matrix = Matrix::identity(a.field(), a.dim());
        AlgebraMorphism { source: a.clone(), target: a, matrix }
    }

    pub fn source(&self) -> &FiniteAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteAlgebra {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Scalar]) -> Vector {
        self.matrix.mul_vec(x)
    }
}

/// The algebra extension `A | B`, i.e. a unital morphism `ι: B → A` that need
/// not be injective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    iota: AlgebraMorphism,
    b_images: Vec<Vector>,
}

impl Extension {
    pub fn new(iota: AlgebraMorphism) -> Extension {
        let b_images = iota.matrix().columns();
        Extension { iota, b_images }
    }

    pub fn from_parts(b: FiniteAlgebra, a: FiniteAlgebra, iota: Matrix) -> Result<Extension> {
        Ok(Extension::new(AlgebraMorphism::new(b, a, iota)?))
    }

    /// `A | A` via the identity.
    pub fn trivial(a: FiniteAlgebra) -> Extension {
        Extension::new(AlgebraMorphism::identity(a))
    }

    /// `A | k` via the unit map.
    pub fn over_ground(a: FiniteAlgebra) -> Extension {
        let k = FiniteAlgebra::ground(a.field());
        let m = Matrix::from_columns(a.field(), a.dim(), &[a.unit().to_vec()]).expect("unit column");
        Extension::from_parts(k, a, m).expect("unit map is a morphism")
    }

    pub fn a(&self) -> &FiniteAlgebra {
        self.iota.target()
    }

    pub fn b(&self) -> &FiniteAlgebra {
        self.iota.source()
    }

    pub fn field(&self) -> Field {
        self.a().field()
    }

    pub fn iota(&self) -> &AlgebraMorphism {
        &self.iota
    }

    /// `ι(b_j)` for each basis element `b_j` of `B`.
    pub fn b_images(&self) -> &[Vector] {
        &self.b_images
    }

    /// `ι(B)` as a subspace of `A`.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.field(), self.a().dim(), self.b_images.iter()).expect("image dims")
    }
}

/// Composite `A | C` of `inner: B | C` and `outer: A | B`.
pub fn compose_extensions(inner: &Extension, outer: &Extension) -> Result<Extension> {
    if inner.a() != outer.b() {
        return Err(Error::AlgebraMismatch("inner target algebra differs from outer source algebra".into()));
    }
    let m = outer.iota().matrix().mul(inner.iota().matrix());
    Extension::from_parts(inner.b().clone(), outer.a().clone(), m)
}

/// A unital subalgebra, stored as a subspace of its ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubalgebraData {
    ambient: FiniteAlgebra,
    basis: Subspace,
}

impl SubalgebraData {
    pub fn new(ambient: FiniteAlgebra, basis: Subspace) -> Result<SubalgebraData> {
        if basis.ambient_dim() != ambient.dim() {
            return Err(Error::DimensionMismatch { expected: ambient.dim(), found: basis.ambient_dim() });
        }
        if !basis.contains(ambient.unit()) {
            return Err(Error::Construction("subalgebra does not contain the unit".into()));
        }
        for x in basis.basis() {
            for y in basis.basis() {
                if !basis.contains(&ambient.mul(x, y)) {
                    return Err(Error::Construction("subspace not closed under multiplication".into()));
                }
            }
        }
        Ok(SubalgebraData { ambient, basis })
    }

    pub fn ambient(&self) -> &FiniteAlgebra {
        &self.ambient
    }

    pub fn subspace(&self) -> &Subspace {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// The subalgebra in its own RREF basis, with the inclusion matrix.
    pub fn to_algebra(&self) -> (FiniteAlgebra, Matrix) {
        let b = &self.basis;
        let unit = b.coordinates(self.ambient.unit()).expect("unit in subalgebra");
        let alg = FiniteAlgebra::from_products(self.ambient.field(), b.dim(), unit, |i, j| {
            b.coordinates(&self.ambient.mul(&b.basis()[i], &b.basis()[j])).expect("closed")
        })
        .expect("subalgebra of a valid algebra");
        (alg, b.embedding())
    }

    /// The subalgebra as an extension of itself into the ambient algebra.
    pub fn embedding(&self) -> Extension {
        let (alg, m) = self.to_algebra();
        Extension::from_parts(alg, self.ambient.clone(), m).expect("inclusion is a morphism")
    }
}

/// `R = C_A(B)`: elements of `A` commuting with every `ι(b)`.
pub fn centralizer(ext: &Extension) -> SubalgebraData {
    let a = ext.a();
    let mut eqs = Vec::new();
    for b in ext.b_images() {
        let comm = a.right_mult_by(b).sub(&a.left_mult_by(b));
        eqs.extend((0..a.dim()).map(|r| comm.row(r).to_vec()));
    }
    let ker = nullspace(a.field(), a.dim(), eqs);
    let sub = Subspace::span(a.field(), a.dim(), ker.iter()).expect("dims");
    SubalgebraData::new(a.clone(), sub).expect("a centralizer is a unital subalgebra")
}

/// Smallest two-sided ideal containing the generators.
pub fn ideal_closure(a: &FiniteAlgebra, generators: &[Vector]) -> Result<Subspace> {
    let mut e = Echelon::new(a.field(), a.dim());
    let mut queue = Vec::new();
    for g in generators {
        if g.len() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: g.len() });
        }
        if e.insert(g) {
            queue.push(g.clone());
        }
    }
    while let Some(x) = queue.pop() {
        for i in 0..a.dim() {
            for y in [a.left_mult(i).mul_vec(&x), a.right_mult(i).mul_vec(&x)] {
                if e.insert(&y) {
                    queue.push(y);
                }
            }
        }
    }
    Ok(e.to_subspace())
}

pub fn is_two_sided_ideal(a: &FiniteAlgebra, ideal: &Subspace) -> bool {
    ideal.ambient_dim() == a.dim()
        && ideal.basis().iter().all(|x| {
            (0..a.dim()).all(|i| ideal.contains(&a.left_mult(i).mul_vec(x)) && ideal.contains(&a.right_mult(i).mul_vec(x)))
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    pub ideal_dim: usize,
    pub contraction_dim: usize,
    pub left_span_dim: usize,
    pub right_span_dim: usize,
    /// `(I ∩ R)A ⊆ A(I ∩ R)`, the inclusion right D2 forces.
    pub right_in_left: bool,
    pub left_in_right: bool,
}

impl NormalityReport {
    pub fn equal(&self) -> bool {
        self.right_in_left && self.left_in_right
    }
}

/// Compares `A(I∩R)` with `(I∩R)A` for a two-sided ideal `I`.
pub fn normality_audit(ext: &Extension, ideal: &Subspace) -> Result<NormalityReport> {
    let a = ext.a();
    if !is_two_sided_ideal(a, ideal) {
        return Err(Error::NotAnIdeal);
    }
    let r = centralizer(ext);
    let contraction = ideal.intersection(r.subspace());
    let mut left = Vec::new();
    let mut right = Vec::new();
    for x in contraction.basis() {
        for i in 0..a.dim() {
            left.push(a.left_mult(i).mul_vec(x));
            right.push(a.right_mult(i).mul_vec(x));
        }
    }
    let left = Subspace::span(a.field(), a.dim(), left.iter())?;
    let right = Subspace::span(a.field(), a.dim(), right.iter())?;
    Ok(NormalityReport {
        ideal_dim: ideal.dim(),
        contraction_dim: contraction.dim(),
        left_span_dim: left.dim(),
        right_span_dim: right.dim(),
        right_in_left: right.is_subspace_of(&left),
        left_in_right: left.is_subspace_of(&right),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn dual_numbers() -> FiniteAlgebra {
        // k[x]/(x²), basis {1, x}
        FiniteAlgebra::from_products(Q, 2, vec![Q.one(), Q.zero()], |i, j| {
            if i + j >= 2 {
                vec![Q.zero(), Q.zero()]
            } else {
                unit_vector(Q, 2, i + j)
            }
        })
        .unwrap()
    }

    #[test]
    fn ground_field_is_valid() {
        let k = FiniteAlgebra::ground(Q);
        assert_eq!(k.dim(), 1);
        assert!(k.is_commutative());
    }

    #[test]
    fn matrix_units_are_valid() {
        let m = FiniteAlgebra::matrix_units(Q, 2);
        assert_eq!(m.dim(), 4);
        assert!(!m.is_commutative());
    }

    #[test]
    fn bad_unit_is_rejected() {
        let err = FiniteAlgebra::new(Q, 1, vec![Q.one()], vec![Q.zero()]).unwrap_err();
        assert_eq!(err, Error::UnitLaw(0));
    }

    #[test]
    fn non_associative_is_rejected() {
        // e0 is the unit; (e1e1)e1 = e2e1 = e1 but e1(e1e1) = e1e2 = e0
        let mut c = vec![Q.zero(); 27];
        let set = |c: &mut Vec<Scalar>, i: usize, j: usize, k: usize, v: i64| c[(i * 3 + j) * 3 + k] = Q.from_i64(v);
        for j in 0..3 {
            set(&mut c, 0, j, j, 1);
            set(&mut c, j, 0, j, 1);
        }
        set(&mut c, 1, 1, 2, 1);
        set(&mut c, 1, 2, 0, 1);
        set(&mut c, 2, 1, 1, 1);
        let err = FiniteAlgebra::new(Q, 3, c, unit_vector(Q, 3, 0)).unwrap_err();
        assert!(matches!(err, Error::NotAssociative(..)));
    }

    #[test]
    fn centralizer_of_trivial_matrix_extension_is_scalars() {
        let r = centralizer(&Extension::trivial(FiniteAlgebra::matrix_units(Q, 2)));
        assert_eq!(r.dim(), 1);
    }

    #[test]
    fn centralizer_over_ground_is_everything() {
        let a = FiniteAlgebra::matrix_units(Q, 2);
        assert_eq!(centralizer(&Extension::over_ground(a)).dim(), 4);
    }

    #[test]
    fn ideal_closure_extremes() {
        let a = FiniteAlgebra::matrix_units(Q, 2);
        assert_eq!(ideal_closure(&a, &[a.zero()]).unwrap().dim(), 0);
        assert_eq!(ideal_closure(&a, &[a.unit().to_vec()]).unwrap().dim(), 4);
        // a single matrix unit generates the whole simple algebra
        assert_eq!(ideal_closure(&a, &[a.basis(1)]).unwrap().dim(), 4);
    }

    #[test]
    fn ideal_closure_of_nilpotent() {
        let d = dual_numbers();
        let i = ideal_closure(&d, &[d.basis(1)]).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(is_two_sided_ideal(&d, &i));
    }

    #[test]
    fn normality_for_trivial_extension() {
        let a = FiniteAlgebra::matrix_units(Q, 2);
        let ext = Extension::trivial(a.clone());
        for ideal in [Subspace::zero(Q, 4), Subspace::full(Q, 4)] {
            assert!(normality_audit(&ext, &ideal).unwrap().equal());
        }
        let not_ideal = Subspace::span(Q, 4, [&a.basis(0)]).unwrap();
        assert_eq!(normality_audit(&ext, &not_ideal).unwrap_err(), Error::NotAnIdeal);
    }

    #[test]
    fn subalgebra_round_trip() {
        let a = FiniteAlgebra::matrix_units(Q, 2);
        // diagonal matrices
        let diag = Subspace::span(Q, 4, [&a.basis(0), &a.basis(3)]).unwrap();
        let sub = SubalgebraData::new(a, diag).unwrap();
        let (alg, emb) = sub.to_algebra();
        assert_eq!(alg.dim(), 2);
        assert!(alg.is_commutative());
        assert_eq!(emb.rows(), 4);
        let ext = sub.embedding();
        assert_eq!(centralizer(&ext).dim(), 2);
    }

    #[test]
    fn compose_with_identities() {
        let a = FiniteAlgebra::matrix_units(Q, 2);
        let e = Extension::over_ground(a.clone());
        let id_a = Extension::trivial(a);
        let id_k = Extension::trivial(FiniteAlgebra::ground(Q));
        assert_eq!(compose_extensions(&id_k, &e).unwrap(), e);
        assert_eq!(compose_extensions(&e, &id_a).unwrap(), e);
        assert!(compose_extensions(&id_a, &e).is_err());
    }

    #[test]
    fn morphism_must_preserve_unit() {
        let a = FiniteAlgebra::matrix_units(Q, 2);
        let k = FiniteAlgebra::ground(Q);
        let m = Matrix::from_columns(Q, 4, &[a.basis(0)]).unwrap();
        assert!(matches!(AlgebraMorphism::new(k, a, m), Err(Error::NotAMorphism(_))));
    }
}
