//! Bimodules given by action matrices, intertwiner spaces, and the
//! direct-summand test `M ⊕ * ≅ P^(I)`.

use crate::algebra::{Extension, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{solve_in_span, zero_vector, Echelon, Matrix, Vector};
use crate::scalar::{Field, Scalar};
use crate::tensor::TensorPowers;

/// Which algebra acts on one side of a natural bimodule of an extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Acting {
    A,
    B,
    Ground,
}

/// A `P`-`Q`-bimodule: `left[i]` is `m ↦ p_i·m`, `right[j]` is `m ↦ m·q_j`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    left_algebra: FiniteAlgebra,
    right_algebra: FiniteAlgebra,
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(
        left_algebra: FiniteAlgebra,
        right_algebra: FiniteAlgebra,
        dim: usize,
        left: Vec<Matrix>,
        right: Vec<Matrix>,
    ) -> Result<Bimodule> {
        let m = Bimodule { left_algebra, right_algebra, dim, left, right };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let (p, q) = (&self.left_algebra, &self.right_algebra);
        if self.left.len() != p.dim() || self.right.len() != q.dim() {
            return Err(Error::InvalidBimodule("one action matrix per basis element is required".into()));
        }
        if self.left.iter().chain(&self.right).any(|m| m.rows() != self.dim || m.cols() != self.dim) {
            return Err(Error::InvalidBimodule(format!("action matrices must be {0}x{0}", self.dim)));
        }
        let id = Matrix::identity(p.field(), self.dim);
        if self.left_by(p.unit()) != id {
            return Err(Error::InvalidBimodule("left unit does not act as the identity".into()));
        }
        if self.right_by(q.unit()) != id {
            return Err(Error::InvalidBimodule("right unit does not act as the identity".into()));
        }
        for i in 0..p.dim() {
            for j in 0..p.dim() {
                if self.left[i].mul(&self.left[j]) != self.left_by(p.basis_product(i, j)) {
                    return Err(Error::InvalidBimodule(format!("left action not multiplicative at ({i}, {j})")));
                }
            }
        }
        for i in 0..q.dim() {
            for j in 0..q.dim() {
                if self.right[j].mul(&self.right[i]) != self.right_by(q.basis_product(i, j)) {
                    return Err(Error::InvalidBimodule(format!("right action not multiplicative at ({i}, {j})")));
                }
            }
        }
        for (i, l) in self.left.iter().enumerate() {
            for (j, r) in self.right.iter().enumerate() {
                if l.mul(r) != r.mul(l) {
                    return Err(Error::InvalidBimodule(format!("actions do not commute at ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    /// `A` as a `P`-`Q`-bimodule, each side acting through `ext` as chosen.
    pub fn of_algebra(ext: &Extension, left: Acting, right: Acting) -> Bimodule {
        let a = ext.a();
        let ls: Vec<Matrix> = (0..a.dim()).map(|i| a.left_mult(i).clone()).collect();
        let rs: Vec<Matrix> = (0..a.dim()).map(|i| a.right_mult(i).clone()).collect();
        Bimodule::restricted(ext, a.dim(), &ls, &rs, left, right)
    }

    /// `Q_k = A ⊗_B ⋯ ⊗_B A` with outer actions restricted as chosen.
    pub fn of_tensor_power(powers: &TensorPowers, k: usize, left: Acting, right: Acting) -> Bimodule {
        let lvl = powers.level(k);
        Bimodule::restricted(powers.extension(), lvl.dim, &lvl.left, &lvl.right, left, right)
    }

    fn restricted(ext: &Extension, dim: usize, ls: &[Matrix], rs: &[Matrix], left: Acting, right: Acting) -> Bimodule {
        let field = ext.field();
        let side = |acting: Acting, mats: &[Matrix]| -> (FiniteAlgebra, Vec<Matrix>) {
            match acting {
                Acting::A => (ext.a().clone(), mats.to_vec()),
                Acting::B => (
                    ext.b().clone(),
                    ext.b_images().iter().map(|b| Matrix::combination(field, dim, dim, b, mats)).collect(),
                ),
                Acting::Ground => (FiniteAlgebra::ground(field), vec![Matrix::identity(field, dim)]),
            }
        };
        let (lp, lm) = side(left, ls);
        let (rq, rm) = side(right, rs);
        Bimodule { left_algebra: lp, right_algebra: rq, dim, left: lm, right: rm }
    }

    /// `M ⊕ N` over the same algebra pair.
    pub fn direct_sum(&self, other: &Bimodule) -> Result<Bimodule> {
        self.check_same_algebras(other)?;
        let field = self.left_algebra.field();
        let d = self.dim + other.dim;
        let block = |x: &Matrix, y: &Matrix| {
            let mut m = Matrix::zeros(field, d, d);
            for i in 0..self.dim {
                for j in 0..self.dim {
                    m.set(i, j, x.get(i, j).clone());
                }
            }
            for i in 0..other.dim {
                for j in 0..other.dim {
                    m.set(self.dim + i, self.dim + j, y.get(i, j).clone());
                }
            }
            m
        };
        let left = self.left.iter().zip(&other.left).map(|(x, y)| block(x, y)).collect();
        let right = self.right.iter().zip(&other.right).map(|(x, y)| block(x, y)).collect();
        Ok(Bimodule { left_algebra: self.left_algebra.clone(), right_algebra: self.right_algebra.clone(), dim: d, left, right })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_algebra(&self) -> &FiniteAlgebra {
        &self.left_algebra
    }

    pub fn right_algebra(&self) -> &FiniteAlgebra {
        &self.right_algebra
    }

    pub fn left_action(&self) -> &[Matrix] {
        &self.left
    }

    pub fn right_action(&self) -> &[Matrix] {
        &self.right
    }

    pub fn left_by(&self, p: &[Scalar]) -> Matrix {
        Matrix::combination(self.left_algebra.field(), self.dim, self.dim, p, &self.left)
    }

    pub fn right_by(&self, q: &[Scalar]) -> Matrix {
        Matrix::combination(self.right_algebra.field(), self.dim, self.dim, q, &self.right)
    }

    fn check_same_algebras(&self, other: &Bimodule) -> Result<()> {
        if self.left_algebra != other.left_algebra || self.right_algebra != other.right_algebra {
            return Err(Error::AlgebraMismatch("bimodules over different algebra pairs".into()));
        }
        Ok(())
    }
}

/// Adds the rows of `X·S − T·X = 0` (unknown `X` is `n × m`, row-major) to
/// the echelon form.
fn add_intertwining(eqs: &mut Echelon, s: &Matrix, t: &Matrix, n: usize, m: usize) {
    let field = s.field();
    for a in 0..n {
        for b in 0..m {
            let mut row = zero_vector(field, n * m);
            for c in 0..m {
                let v = s.get(c, b);
                if !v.is_zero() {
                    row[a * m + c] = &row[a * m + c] + v;
                }
            }
            for c in 0..n {
                let v = t.get(a, c);
                if !v.is_zero() {
                    row[c * m + b] = &row[c * m + b] - v;
                }
            }
            eqs.insert(&row);
        }
    }
}

/// Basis of the bimodule maps `M → N`, as `dim N × dim M` matrices.
pub fn hom_space(m: &Bimodule, n: &Bimodule) -> Result<Vec<Matrix>> {
    m.check_same_algebras(n)?;
    let field = m.left_algebra.field();
    let (dm, dn) = (m.dim, n.dim);
    let mut eqs = Echelon::new(field, dm * dn);
    for (s, t) in m.left.iter().zip(&n.left).chain(m.right.iter().zip(&n.right)) {
        add_intertwining(&mut eqs, s, t, dn, dm);
    }
    Ok(eqs
        .kernel()
        .into_iter()
        .map(|x| Matrix::from_flat(field, dn, dm, x).expect("kernel vector size"))
        .collect())
}

/// Basis of the linear maps on a `dim`-dimensional space that commute with
/// every given matrix.
pub fn commutant(field: Field, dim: usize, mats: &[Matrix]) -> Vec<Matrix> {
    let mut eqs = Echelon::new(field, dim * dim);
    for m in mats {
        add_intertwining(&mut eqs, m, m, dim, dim);
    }
    eqs.kernel()
        .into_iter()
        .map(|x| Matrix::from_flat(field, dim, dim, x).expect("kernel vector size"))
        .collect()
}

/// `Σ f_i ∘ g_i = id_M` with `f_i: P → M` and `g_i: M → P`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub pairs: Vec<(Matrix, Matrix)>,
    pub hom_into_dim: usize,
    pub hom_out_dim: usize,
}

impl Factorization {
    pub fn reconstructs_identity(&self, dim: usize, field: Field) -> bool {
        let mut acc = Matrix::zeros(field, dim, dim);
        for (f, g) in &self.pairs {
            acc = acc.add(&f.mul(g));
        }
        acc.is_identity()
    }
}

/// Decides whether `M` is a direct summand of some `P^n` by testing
/// `id_M ∈ span{f ∘ g}`; the factorization groups terms by the `g` basis.
pub fn coproduct_summand_test(m: &Bimodule, p: &Bimodule) -> Result<Option<Factorization>> {
    let field = m.left_algebra.field();
    let fs = hom_space(p, m)?;
    let gs = hom_space(m, p)?;
    let mut products: Vec<Vector> = Vec::with_capacity(fs.len() * gs.len());
    for g in &gs {
        for f in &fs {
            products.push(f.mul(g).flat().to_vec());
        }
    }
    let id = Matrix::identity(field, m.dim);
    let Some(coeffs) = solve_in_span(id.flat(), &products)? else {
        return Ok(None);
    };
    let mut pairs = Vec::new();
    for (b, g) in gs.iter().enumerate() {
        let cs = &coeffs[b * fs.len()..(b + 1) * fs.len()];
        let f = Matrix::combination(field, m.dim, p.dim, cs, &fs);
        if !f.is_zero() {
            pairs.push((f, g.clone()));
        }
    }
    let fac = Factorization { pairs, hom_into_dim: fs.len(), hom_out_dim: gs.len() };
    debug_assert!(fac.reconstructs_identity(m.dim, field));
    Ok(Some(fac))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{subgroup_extension, GroupTable};
    use crate::tensor::tensor_square;

    const Q: Field = Field::Rationals;

    fn regular(a: FiniteAlgebra) -> Bimodule {
        Bimodule::of_algebra(&Extension::trivial(a), Acting::A, Acting::A)
    }

    #[test]
    fn identity_is_an_endomorphism() {
        let m = regular(FiniteAlgebra::matrix_units(Q, 2));
        let homs = hom_space(&m, &m).unwrap();
        // End of M_2 as a bimodule over itself is the center
        assert_eq!(homs.len(), 1);
        assert!(homs[0].is_identity() || homs[0].scale(&homs[0].get(0, 0).inv().unwrap()).is_identity());
    }

    #[test]
    fn summand_of_itself() {
        let m = regular(FiniteAlgebra::matrix_units(Q, 2));
        let f = coproduct_summand_test(&m, &m).unwrap().unwrap();
        assert_eq!(f.pairs.len(), 1);
        assert!(f.reconstructs_identity(4, Q));
    }

    #[test]
    fn doubled_module_needs_two_pairs() {
        let p = regular(FiniteAlgebra::matrix_units(Q, 2));
        let m = p.direct_sum(&p).unwrap();
        let f = coproduct_summand_test(&m, &p).unwrap().unwrap();
        assert_eq!(f.pairs.len(), 2);
        assert!(f.reconstructs_identity(8, Q));
    }

    #[test]
    fn transposition_square_is_not_a_summand() {
        let ge = subgroup_extension(Q, &GroupTable::symmetric3(), &[0, 2]).unwrap();
        let powers = tensor_square(&ge.extension).unwrap();
        let m = Bimodule::of_tensor_power(&powers, 2, Acting::A, Acting::B);
        let p = Bimodule::of_algebra(&ge.extension, Acting::A, Acting::B);
        assert!(coproduct_summand_test(&m, &p).unwrap().is_none());
    }

    #[test]
    fn validation_catches_noncommuting_actions() {
        let a = FiniteAlgebra::matrix_units(Q, 2);
        let ls: Vec<Matrix> = (0..4).map(|i| a.left_mult(i).clone()).collect();
        // left multiplication on both sides does not commute and is not an anti-representation
        let err = Bimodule::new(a.clone(), a.clone(), 4, ls.clone(), ls).unwrap_err();
        assert!(matches!(err, Error::InvalidBimodule(_)));
    }

    #[test]
    fn algebra_mismatch_is_reported() {
        let m = regular(FiniteAlgebra::matrix_units(Q, 2));
        let n = regular(FiniteAlgebra::ground(Q));
        assert!(matches!(hom_space(&m, &n), Err(Error::AlgebraMismatch(_))));
    }
}
